//! Compact text notation for multipartitions, e.g. `((2,2,1),(2,1,1))` or `(∅,(1))`.
//!
//! Parsing also accepts the unwrapped form `(2,2,1),(2,1,1)`, `()` or `-` for an empty
//! component, and exponents such as `(1^5)`.

use crate::error::{CrystalError, Result};
use crate::partition::Partition;

pub fn format_components(components: &[Partition]) -> String {
    let inner: Vec<String> = components.iter().map(|p| p.to_string()).collect();
    format!("({})", inner.join(","))
}

fn split_top_level(s: &str) -> Result<Vec<&str>> {
    let mut depth = 0i32;
    let mut start = 0;
    let mut out = Vec::new();
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(CrystalError::Parse(format!(
                        "unbalanced parentheses in {s:?}"
                    )));
                }
            }
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(CrystalError::Parse(format!(
            "unbalanced parentheses in {s:?}"
        )));
    }
    out.push(&s[start..]);
    Ok(out)
}

fn is_empty_token(t: &str) -> bool {
    matches!(t, "∅" | "()" | "-" | "")
}

pub fn parse_partition(token: &str) -> Result<Partition> {
    let t: String = token.chars().filter(|c| !c.is_whitespace()).collect();
    if is_empty_token(&t) {
        return Ok(Partition::empty());
    }
    let inner = t
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .unwrap_or(&t);
    if is_empty_token(inner) {
        return Ok(Partition::empty());
    }
    let mut parts = Vec::new();
    for item in inner.split(',') {
        let (base, exp) = match item.split_once('^') {
            Some((b, e)) => (b, e),
            None => (item, "1"),
        };
        let base: i64 = base
            .parse()
            .map_err(|_| CrystalError::Parse(format!("bad part {item:?}")))?;
        let exp: usize = exp
            .parse()
            .map_err(|_| CrystalError::Parse(format!("bad exponent in {item:?}")))?;
        parts.extend(std::iter::repeat_n(base, exp));
    }
    Partition::new(parts)
}

/// Parses a multipartition in either the wrapped or unwrapped form.
pub fn parse_components(s: &str) -> Result<Vec<Partition>> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut items = split_top_level(&t)?;
    if items.len() == 1 {
        let only = items[0];
        if let Some(inner) = only.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let nested = split_top_level(inner)?;
            let looks_nested = nested
                .iter()
                .all(|x| x.starts_with('(') || is_empty_token(x))
                && nested.len() >= 2;
            if looks_nested {
                items = nested;
            }
        }
    }
    items.into_iter().map(parse_partition).collect()
}
