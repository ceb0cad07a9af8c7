//! Connected components of either crystal as explicit labeled digraphs.

use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt::Write as _;

use crate::abacus::ChargedMultipartition;
use crate::error::{CrystalError, Result};
use crate::partition::{Charge, Partition};
use crate::sle::{sle_incoming, sle_outgoing};
use crate::slinf::{incoming_edges, outgoing_edges, theta_position};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CrystalKind {
    Sle,
    Slinf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeLabel {
    Residue(i64),
    Row { k: usize, content: i64 },
}

impl std::fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EdgeLabel::Residue(i) => write!(f, "i={i}"),
            EdgeLabel::Row { k, content } => write!(f, "k={k},c={content}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub label: EdgeLabel,
}

/// Vertices are sorted by rank, then by components; edges index into `vertices`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrystalGraph {
    pub kind: CrystalKind,
    pub e: i64,
    pub charge: Charge,
    pub cap: usize,
    pub vertices: Vec<ChargedMultipartition>,
    pub edges: Vec<Edge>,
}

fn vertex_key(v: &ChargedMultipartition) -> (usize, Vec<Partition>) {
    (v.rank(), v.components().to_vec())
}

/// BFS closure of `start` under arrows in both directions, keeping ranks `<= cap`.
pub fn build_component(
    start: &ChargedMultipartition,
    kind: CrystalKind,
    cap: usize,
) -> Result<CrystalGraph> {
    if cap < start.rank() {
        return Err(CrystalError::CapBelowRank {
            cap,
            rank: start.rank(),
        });
    }
    // discovery order ids; renumbered into sorted order at the end
    let mut ids: HashMap<ChargedMultipartition, usize> = HashMap::new();
    let mut found: Vec<(ChargedMultipartition, Option<Partition>)> = Vec::new();
    let mut raw_edges: Vec<(usize, usize, EdgeLabel)> = Vec::new();
    let start_theta = (kind == CrystalKind::Slinf).then(|| theta_position(start).theta);
    ids.insert(start.clone(), 0);
    found.push((start.clone(), start_theta));
    let mut visit =
        |w: ChargedMultipartition,
         th: Option<Partition>,
         found: &mut Vec<(ChargedMultipartition, Option<Partition>)>| {
            let next = found.len();
            *ids.entry(w.clone()).or_insert_with(|| {
                found.push((w, th));
                next
            })
        };
    let mut head = 0;
    while head < found.len() {
        let v = found[head].0.clone();
        let theta = found[head].1.clone();
        let (down, up): (Vec<_>, Vec<_>) = match kind {
            CrystalKind::Sle => (
                sle_outgoing(&v)
                    .into_iter()
                    .map(|(i, w)| (EdgeLabel::Residue(i), w, None))
                    .collect(),
                sle_incoming(&v)
                    .into_iter()
                    .map(|(i, w)| (EdgeLabel::Residue(i), w, None))
                    .collect(),
            ),
            CrystalKind::Slinf => {
                let th = theta.expect("slinf vertices carry theta");
                let down = outgoing_edges(&v)
                    .into_iter()
                    .map(|(k, w)| {
                        let content = th.part(k) as i64 + 1 - k as i64;
                        let next = th.add_box(k).expect("arrow adds an addable box");
                        (EdgeLabel::Row { k, content }, w, Some(next))
                    })
                    .collect();
                let up = incoming_edges(&v)
                    .into_iter()
                    .map(|(k, w)| {
                        let prev = th.remove_box(k).expect("arrow removes a removable box");
                        let content = prev.part(k) as i64 + 1 - k as i64;
                        (EdgeLabel::Row { k, content }, w, Some(prev))
                    })
                    .collect();
                (down, up)
            }
        };
        for (label, w, th) in down {
            if w.rank() > cap {
                continue;
            }
            let to = visit(w, th, &mut found);
            raw_edges.push((head, to, label));
        }
        for (_, w, th) in up {
            visit(w, th, &mut found);
        }
        head += 1;
    }
    let mut order: Vec<usize> = (0..found.len()).collect();
    order.sort_by_cached_key(|&i| vertex_key(&found[i].0));
    let mut rank_of = vec![0; found.len()];
    for (pos, &i) in order.iter().enumerate() {
        rank_of[i] = pos;
    }
    let mut edges: Vec<Edge> = raw_edges
        .into_iter()
        .map(|(a, b, label)| Edge {
            from: rank_of[a],
            to: rank_of[b],
            label,
        })
        .collect();
    edges.sort();
    edges.dedup();
    let mut slots: Vec<Option<ChargedMultipartition>> =
        found.into_iter().map(|(v, _)| Some(v)).collect();
    let vertices: Vec<ChargedMultipartition> = order
        .iter()
        .map(|&i| slots[i].take().expect("each vertex placed once"))
        .collect();
    Ok(CrystalGraph {
        kind,
        e: start.e(),
        charge: start.charge().clone(),
        cap,
        vertices,
        edges,
    })
}

impl CrystalGraph {
    /// Number of vertices in each rank, from the smallest rank upward.
    pub fn layer_sizes(&self) -> Vec<usize> {
        let Some(min) = self.vertices.iter().map(|v| v.rank()).min() else {
            return Vec::new();
        };
        let step = match self.kind {
            CrystalKind::Sle => 1,
            CrystalKind::Slinf => self.e as usize,
        };
        let mut out: Vec<usize> = Vec::new();
        for v in &self.vertices {
            let d = (v.rank() - min) / step;
            if out.len() <= d {
                out.resize(d + 1, 0);
            }
            out[d] += 1;
        }
        out
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.from == v).count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.to == v).count()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph crystal {\n");
        for v in &self.vertices {
            let _ = writeln!(out, "  \"{v}\";");
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{}\"];",
                self.vertices[e.from], self.vertices[e.to], e.label
            );
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> String {
        let doc = GraphJson {
            kind: self.kind,
            e: self.e,
            charge: self.charge.values().to_vec(),
            cap: self.cap,
            vertices: self
                .vertices
                .iter()
                .map(|v| {
                    v.components()
                        .iter()
                        .map(|p| p.parts().iter().map(|&x| x as i64).collect())
                        .collect()
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| match e.label {
                    EdgeLabel::Residue(i) => EdgeJson {
                        from: e.from,
                        to: e.to,
                        i: Some(i),
                        k: None,
                        content: None,
                    },
                    EdgeLabel::Row { k, content } => EdgeJson {
                        from: e.from,
                        to: e.to,
                        i: None,
                        k: Some(k),
                        content: Some(content),
                    },
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("graph serializes")
    }

    pub fn from_json(text: &str) -> Result<CrystalGraph> {
        let doc: GraphJson =
            serde_json::from_str(text).map_err(|err| CrystalError::Parse(err.to_string()))?;
        let vertices = doc
            .vertices
            .into_iter()
            .map(|comps| ChargedMultipartition::from_vecs(comps, doc.charge.clone(), doc.e))
            .collect::<Result<Vec<_>>>()?;
        let edges = doc
            .edges
            .into_iter()
            .map(|e| {
                let label = match (doc.kind, e.i, e.k, e.content) {
                    (CrystalKind::Sle, Some(i), None, None) => EdgeLabel::Residue(i),
                    (CrystalKind::Slinf, None, Some(k), Some(content)) => {
                        EdgeLabel::Row { k, content }
                    }
                    _ => return Err(CrystalError::Parse("edge label does not match kind".into())),
                };
                if e.from >= vertices.len() || e.to >= vertices.len() {
                    return Err(CrystalError::Parse("edge endpoint out of range".into()));
                }
                Ok(Edge {
                    from: e.from,
                    to: e.to,
                    label,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CrystalGraph {
            kind: doc.kind,
            e: doc.e,
            charge: Charge::new(doc.charge)?,
            cap: doc.cap,
            vertices,
            edges,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    kind: CrystalKind,
    e: i64,
    charge: Vec<i64>,
    cap: usize,
    vertices: Vec<Vec<Vec<i64>>>,
    edges: Vec<EdgeJson>,
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    from: usize,
    to: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    i: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    content: Option<i64>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn empty01() -> ChargedMultipartition {
        ChargedMultipartition::from_vecs(vec![vec![], vec![]], vec![0, 1], 3).unwrap()
    }

    #[test]
    fn young_graph_layers() {
        let g = build_component(&empty01(), CrystalKind::Slinf, 12).unwrap();
        assert_eq!(g.layer_sizes(), vec![1, 1, 2, 3, 5]);
        assert_eq!(g.edges.len(), 14);
    }

    #[test]
    fn depth_two_dot() {
        let g = build_component(&empty01(), CrystalKind::Slinf, 6).unwrap();
        let dot = g.to_dot();
        assert_eq!(dot.matches(" -> ").count(), 3);
        assert_eq!(dot.lines().filter(|l| l.ends_with("\";")).count(), 4);
        assert!(dot.contains("\"(∅,∅)\" -> \"((1,1),(1))\" [label=\"k=1,c=0\"];"));
    }

    #[test]
    fn single_vertex() {
        let g = build_component(&empty01(), CrystalKind::Slinf, 0).unwrap();
        assert_eq!(g.vertices.len(), 1);
        assert!(g.edges.is_empty());
        assert_eq!(g.to_dot().lines().filter(|l| l.ends_with("\";")).count(), 1);
        assert!(build_component(
            &g.vertices[0]
                .with_components(vec![Partition::new(vec![1]).unwrap(), Partition::empty()])
                .unwrap(),
            CrystalKind::Sle,
            0
        )
        .is_err());
    }

    #[test]
    fn json_round_trip() {
        for kind in [CrystalKind::Sle, CrystalKind::Slinf] {
            let g = build_component(&empty01(), kind, 6).unwrap();
            assert_eq!(CrystalGraph::from_json(&g.to_json()).unwrap(), g);
        }
        assert!(CrystalGraph::from_json("{").is_err());
    }
}
