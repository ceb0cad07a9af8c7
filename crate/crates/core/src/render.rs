//! Plain-text abacus drawings: row l on top, one character cell per column.

use std::fmt::Write as _;

use crate::abacus::{materialize, ChargedMultipartition};

const BEAD: char = '●';
const SPACE: char = '·';

/// Draws the active window of `cm` with a column ruler underneath.
pub fn render_abacus(cm: &ChargedMultipartition) -> String {
    let w = materialize(cm);
    let cols: Vec<i64> = (w.lo()..=w.hi()).collect();
    let width = cols
        .iter()
        .map(|c| c.to_string().chars().count())
        .max()
        .unwrap_or(1)
        + 1;
    let label_width = format!("{}", cm.level()).len() + 2;
    let mut out = String::new();
    for row in (1..=cm.level()).rev() {
        let _ = write!(out, "{:>label_width$}", format!("{row} |"));
        for &c in &cols {
            let mark = if w.contains(c, row) { BEAD } else { SPACE };
            let _ = write!(out, "{mark:>width$}");
        }
        out.push('\n');
    }
    let _ = write!(out, "{:>label_width$}", "β |");
    for &c in &cols {
        let _ = write!(out, "{c:>width$}");
    }
    out.push('\n');
    out
}
