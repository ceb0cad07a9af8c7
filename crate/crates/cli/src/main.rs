mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::bail;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fock_crystal::cherednik::{
    firstcomp_is_hw, firstcomp_theta, fock_to_cherednik, rectangle_q, triv_bidepth, triv_is_fd,
    type_b_obstruction, FockParams, TypeBFailure,
};
use fock_crystal::closedform::{
    b_sigma_closed, tabloid_of, tabloid_swap, zpartition_closed, Tabloid,
};
use fock_crystal::graph::{build_component, CrystalGraph, CrystalKind};
use fock_crystal::notation::{parse_components, parse_partition};
use fock_crystal::render::render_abacus;
use fock_crystal::sle::{e_tilde, f_tilde, p_depth, sle_incoming};
use fock_crystal::slinf::{
    incoming_edges, outgoing_edges, theta_position, upsilon_minus, upsilon_plus,
};
use fock_crystal::{Charge, ChargedMultipartition, CrystalError, Partition};

use report::{Format, Report};

#[derive(Parser)]
#[command(
    name = "crystal",
    version,
    about = "Crystals on level-l Fock spaces via abaci"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "text")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

/// A charged multipartition, from a JSON file or from flags.
#[derive(Args)]
struct Input {
    /// JSON file {"e": .., "charge": [..], "components": [[..], ..]}.
    #[arg(long, conflicts_with_all = ["e", "charge", "lambda"])]
    input: Option<PathBuf>,
    #[arg(long)]
    e: Option<i64>,
    /// Comma-separated charges, row 1 first.
    #[arg(long, allow_hyphen_values = true)]
    charge: Option<String>,
    /// Multipartition such as "(2,1),∅" or "((1^3),(2))".
    #[arg(long)]
    lambda: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Draw the abacus.
    Render(Input),
    /// The affine sl_e crystal.
    Sle {
        #[command(subcommand)]
        op: SleOp,
    },
    /// The sl_infinity crystal.
    Slinf {
        #[command(subcommand)]
        op: SlinfOp,
    },
    /// The connected component of a vertex, truncated by rank.
    Component {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        crystal: Kind,
        /// Largest rank kept.
        #[arg(long)]
        cap: usize,
    },
    /// b_sigma applied to the empty multipartition with charge e*z.
    ClosedForm {
        #[arg(long)]
        sigma: String,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long)]
        e: i64,
        /// Use the block formula (z weakly decreasing, ending in 0).
        #[arg(long)]
        block: bool,
    },
    /// The tabloid of the empty multipartition with charge e*z.
    Tabloid {
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long)]
        e: i64,
        /// Minimum number of entries per row.
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Swap two rows, given as "j,j2".
        #[arg(long)]
        swap: Option<String>,
    },
    /// Finite-dimensionality and depth classifiers.
    Classify {
        #[command(subcommand)]
        op: ClassifyOp,
    },
    /// Cherednik parameters for (e, s).
    Params {
        #[arg(long)]
        e: i64,
        #[arg(long, allow_hyphen_values = true)]
        charge: String,
    },
}

#[derive(Subcommand)]
enum SleOp {
    /// Apply f_i.
    F {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        i: i64,
    },
    /// Apply e_i.
    E {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        i: i64,
    },
    /// Depth p and the highest weight vertex above.
    Depth(Input),
    /// Whether no e_i applies.
    Hw(Input),
}

#[derive(Subcommand)]
enum SlinfOp {
    /// Shift the k-th aft period left.
    Up {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        k: usize,
    },
    /// Shift the k-th fore period right.
    Down {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        k: usize,
    },
    /// Position theta, depth q and source.
    Theta(Input),
    /// All arrows in and out.
    Edges(Input),
}

#[derive(Subcommand)]
enum ClassifyOp {
    /// ((1^n), ∅, ..., ∅).
    Triv {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        e: i64,
        #[arg(long, allow_hyphen_values = true)]
        charge: String,
    },
    /// (m^n) in component a, the rest empty.
    Rectangle {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        e: i64,
        #[arg(long, allow_hyphen_values = true)]
        charge: String,
    },
    /// (λ, ∅, ..., ∅).
    Firstcomp {
        /// A single partition such as "(3,1^2)".
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        e: i64,
        #[arg(long, allow_hyphen_values = true)]
        charge: String,
    },
    /// Bipartitions in type B.
    #[command(name = "typeB")]
    TypeB {
        #[command(flatten)]
        input: Input,
        /// Expected rank, checked against the input.
        #[arg(long)]
        n: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Sle,
    Slinf,
}

/// Bad flag values; reported with exit code 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(flag: &str, detail: impl std::fmt::Display) -> anyhow::Error {
    Usage(format!("invalid value for {flag}: {detail}")).into()
}

fn parse_ints(flag: &str, text: &str) -> anyhow::Result<Vec<i64>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| usage(flag, format!("{t:?} is not an integer")))
        })
        .collect()
}

fn parse_charge(flag: &str, text: &str) -> anyhow::Result<Charge> {
    Charge::new(parse_ints(flag, text)?).map_err(|err| usage(flag, err))
}

fn check_e(e: i64) -> anyhow::Result<i64> {
    if e < 2 {
        return Err(usage("--e", format!("must be at least 2, got {e}")));
    }
    Ok(e)
}

fn load(input: &Input) -> anyhow::Result<ChargedMultipartition> {
    if let Some(path) = &input.input {
        let text = std::fs::read_to_string(path)
            .map_err(|err| usage("--input", format!("cannot read {}: {err}", path.display())))?;
        return serde_json::from_str(&text).map_err(|err| usage("--input", err));
    }
    let (Some(e), Some(charge), Some(lambda)) = (input.e, &input.charge, &input.lambda) else {
        let missing = [
            ("--e", input.e.is_none()),
            ("--charge", input.charge.is_none()),
            ("--lambda", input.lambda.is_none()),
        ]
        .iter()
        .filter(|(_, m)| *m)
        .map(|(f, _)| *f)
        .collect::<Vec<_>>()
        .join(", ");
        return Err(Usage(format!(
            "either --input or all of --e, --charge, --lambda is required (missing {missing})"
        ))
        .into());
    };
    let e = check_e(e)?;
    let charge = parse_charge("--charge", charge)?;
    let comps = parse_components(lambda).map_err(|err| usage("--lambda", err))?;
    if comps.len() != charge.level() {
        return Err(usage(
            "--lambda",
            format!(
                "{} components for a charge of length {}",
                comps.len(),
                charge.level()
            ),
        ));
    }
    Ok(ChargedMultipartition::new(comps, charge, e)?)
}

fn cm_json(cm: &ChargedMultipartition) -> Value {
    serde_json::to_value(cm).expect("multipartitions serialize")
}

fn opt_json(cm: &Option<ChargedMultipartition>) -> Value {
    cm.as_ref().map_or(Value::Null, cm_json)
}

fn opt_text(cm: &Option<ChargedMultipartition>) -> String {
    cm.as_ref()
        .map_or_else(|| "none".to_string(), |c| c.to_string())
}

fn partition_json(p: &Partition) -> Value {
    json!(p.parts())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn arrow(
    label: String,
    start: &ChargedMultipartition,
    result: Option<ChargedMultipartition>,
) -> Report {
    let text = format!("{label}{start} = {}", opt_text(&result));
    Report::new(
        text,
        json!({ "input": cm_json(start), "result": opt_json(&result) }),
    )
}

fn graph_report(g: &CrystalGraph) -> Report {
    let mut text = format!("{} vertices, {} edges\n", g.vertices.len(), g.edges.len());
    for (idx, v) in g.vertices.iter().enumerate() {
        text.push_str(&format!("{idx:>4}  rank {:<3} {v}\n", v.rank()));
    }
    for e in &g.edges {
        text.push_str(&format!("{:>4} -> {:<4} {}\n", e.from, e.to, e.label));
    }
    Report {
        text,
        json: serde_json::from_str(&g.to_json()).expect("graph JSON parses"),
        dot: Some(g.to_dot()),
    }
}

fn tabloid_report(t: &Tabloid) -> Report {
    let text = t
        .rows
        .iter()
        .enumerate()
        .map(|(j, row)| {
            let cells: Vec<String> = row.iter().map(u64::to_string).collect();
            format!("T_{} (z={}): {}", j + 1, t.z[j], cells.join(" "))
        })
        .collect::<Vec<_>>()
        .join("\n");
    Report::new(text, json!({ "z": t.z, "floor": t.floor, "rows": t.rows }))
}

fn ratio(r: &num_rational::Ratio<i64>) -> String {
    r.to_string()
}

fn run(cli: Cli) -> anyhow::Result<Report> {
    Ok(match cli.command {
        Command::Render(input) => {
            let cm = load(&input)?;
            let text = format!(
                "{cm}  s={}  e={}\n{}",
                cm.charge(),
                cm.e(),
                render_abacus(&cm)
            );
            Report::new(text, cm_json(&cm))
        }
        Command::Sle { op } => match op {
            SleOp::F { input, i } => {
                let cm = load(&input)?;
                arrow(format!("f_{i} "), &cm, f_tilde(&cm, i)?)
            }
            SleOp::E { input, i } => {
                let cm = load(&input)?;
                arrow(format!("e_{i} "), &cm, e_tilde(&cm, i)?)
            }
            SleOp::Depth(input) => {
                let cm = load(&input)?;
                let d = p_depth(&cm);
                Report::new(
                    format!("p = {}\nsource = {}", d.p, d.source),
                    json!({ "p": d.p, "source": cm_json(&d.source) }),
                )
            }
            SleOp::Hw(input) => {
                let cm = load(&input)?;
                let incoming: Vec<i64> = sle_incoming(&cm).into_iter().map(|(i, _)| i).collect();
                Report::new(
                    format!("highest weight: {}", yes_no(incoming.is_empty())),
                    json!({ "highest_weight": incoming.is_empty(), "incoming_residues": incoming }),
                )
            }
        },
        Command::Slinf { op } => {
            match op {
                SlinfOp::Up { input, k } => {
                    let cm = load(&input)?;
                    arrow(format!("Υ_{k}^- "), &cm, upsilon_minus(&cm, k))
                }
                SlinfOp::Down { input, k } => {
                    let cm = load(&input)?;
                    arrow(format!("Υ_{k}^+ "), &cm, upsilon_plus(&cm, k))
                }
                SlinfOp::Theta(input) => {
                    let cm = load(&input)?;
                    let pos = theta_position(&cm);
                    Report::new(
                        format!("θ = {}\nq = {}\nsource = {}", pos.theta, pos.q, pos.source),
                        json!({
                            "theta": partition_json(&pos.theta),
                            "q": pos.q,
                            "source": cm_json(&pos.source),
                        }),
                    )
                }
                SlinfOp::Edges(input) => {
                    let cm = load(&input)?;
                    let out = outgoing_edges(&cm);
                    let inc = incoming_edges(&cm);
                    let mut text = String::from("outgoing:\n");
                    for (k, w) in &out {
                        text.push_str(&format!("  k={k} -> {w}\n"));
                    }
                    text.push_str("incoming:\n");
                    for (k, w) in &inc {
                        text.push_str(&format!("  k={k} <- {w}\n"));
                    }
                    let list = |m: &std::collections::BTreeMap<usize, ChargedMultipartition>| -> Vec<Value> {
                    m.iter().map(|(k, w)| json!({ "k": k, "vertex": cm_json(w) })).collect()
                };
                    Report::new(
                        text,
                        json!({ "outgoing": list(&out), "incoming": list(&inc) }),
                    )
                }
            }
        }
        Command::Component {
            input,
            crystal,
            cap,
        } => {
            let cm = load(&input)?;
            let kind = match crystal {
                Kind::Sle => CrystalKind::Sle,
                Kind::Slinf => CrystalKind::Slinf,
            };
            graph_report(&build_component(&cm, kind, cap)?)
        }
        Command::ClosedForm { sigma, z, e, block } => {
            let sigma = parse_partition(&sigma).map_err(|err| usage("--sigma", err))?;
            let z = parse_ints("--z", &z)?;
            let e = check_e(e)?;
            let cm = if block {
                zpartition_closed(&sigma, &z, e)?
            } else {
                b_sigma_closed(&sigma, &z, e)?
            };
            Report::new(format!("{cm}  s={}", cm.charge()), cm_json(&cm))
        }
        Command::Tabloid { z, e, depth, swap } => {
            let z = parse_ints("--z", &z)?;
            let e = check_e(e)?;
            let t = tabloid_of(&z, e, depth)?;
            match swap {
                None => tabloid_report(&t),
                Some(pair) => {
                    let rows = parse_ints("--swap", &pair)?;
                    let [j, j2] = rows[..] else {
                        return Err(usage("--swap", "expected two rows \"j,j2\""));
                    };
                    if j < 1 || j2 < 1 {
                        return Err(usage("--swap", "rows are numbered from 1"));
                    }
                    tabloid_report(&tabloid_swap(&t, j as usize, j2 as usize)?)
                }
            }
        }
        Command::Classify { op } => classify(op)?,
        Command::Params { e, charge } => {
            let s = parse_charge("--charge", &charge)?;
            let e = check_e(e)?;
            let p = fock_to_cherednik(&FockParams { e, s, n: 0 })?;
            let h_p: Vec<String> = p.h_p.iter().map(ratio).collect();
            let mut text = format!(
                "h = {}\nh_p = {}\nκ = {}",
                ratio(&p.h),
                h_p.join(", "),
                ratio(&p.kappa)
            );
            if let Some((c1, c2)) = &p.type_b_c {
                text.push_str(&format!("\nc = ({}, {})", ratio(c1), ratio(c2)));
            }
            Report::new(
                text,
                json!({
                    "h": ratio(&p.h),
                    "h_p": h_p,
                    "kappa": ratio(&p.kappa),
                    "type_b_c": p.type_b_c.as_ref().map(|(a, b)| [ratio(a), ratio(b)]),
                }),
            )
        }
    })
}

fn dimension(fd: bool) -> &'static str {
    if fd {
        "finite-dimensional"
    } else {
        "infinite-dimensional"
    }
}

fn classify(op: ClassifyOp) -> anyhow::Result<Report> {
    Ok(match op {
        ClassifyOp::Triv { n, e, charge } => {
            let s = parse_charge("--charge", &charge)?;
            let e = check_e(e)?;
            let (q, p) = triv_bidepth(n, e, &s)?;
            let fd = triv_is_fd(n, e, &s)?;
            Report::new(
                format!("(q, p) = ({q}, {p})\n{}", dimension(fd)),
                json!({ "q": q, "p": p, "finite_dimensional": fd }),
            )
        }
        ClassifyOp::Rectangle { m, n, a, e, charge } => {
            let s = parse_charge("--charge", &charge)?;
            let e = check_e(e)?;
            if a == 0 || a > s.level() {
                return Err(usage(
                    "--a",
                    format!("component {a} out of range 1..={}", s.level()),
                ));
            }
            let q = rectangle_q(m, n, a, e, &s)?;
            Report::new(format!("q = {q}"), json!({ "q": q }))
        }
        ClassifyOp::Firstcomp { lambda, e, charge } => {
            let lambda = parse_partition(&lambda).map_err(|err| usage("--lambda", err))?;
            let s = parse_charge("--charge", &charge)?;
            let e = check_e(e)?;
            let theta = firstcomp_theta(&lambda, e, &s)?;
            let hw = firstcomp_is_hw(&lambda, e, &s)?;
            Report::new(
                format!(
                    "θ = {theta}\nq = {}\nhighest weight in both crystals: {}",
                    theta.size(),
                    yes_no(hw)
                ),
                json!({ "theta": partition_json(&theta), "q": theta.size(), "highest_weight": hw }),
            )
        }
        ClassifyOp::TypeB { input, n } => {
            let cm = load(&input)?;
            if let Some(n) = n {
                if n != cm.rank() {
                    return Err(usage(
                        "--n",
                        format!("{n} differs from the rank {} of the input", cm.rank()),
                    ));
                }
            }
            let obstruction = type_b_obstruction(&cm)?;
            let text = match &obstruction {
                None => dimension(true).to_string(),
                Some(TypeBFailure::Pattern(hit)) => format!(
                    "{}: pattern ({}) at β={}, spaces at {} and {}",
                    dimension(false),
                    hit.k + 1,
                    hit.beta,
                    hit.upper_space,
                    hit.lower_space
                ),
                Some(TypeBFailure::NotLastOfPeriod(b)) => format!(
                    "{}: bead {b} right of a space lies outside every period",
                    dimension(false)
                ),
            };
            Report::new(
                text,
                json!({
                    "finite_dimensional": obstruction.is_none(),
                    "obstruction": serde_json::to_value(&obstruction).expect("obstructions serialize"),
                }),
            )
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    let result = run(cli).and_then(|report| match report.render(format) {
        Some(out) => Ok(out),
        None => bail!(Usage(
            "invalid value for --format: dot output is only available for component".into()
        )),
    });
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            let root = err.root_cause();
            eprintln!("error: {root}");
            if root.downcast_ref::<Usage>().is_some() {
                ExitCode::from(2)
            } else if root.downcast_ref::<CrystalError>().is_some() {
                ExitCode::from(3)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
