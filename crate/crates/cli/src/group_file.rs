//! Line-oriented labelings of finite abelian groups.
//!
//! ```text
//! # Ising fusion rules from Z4
//! group 4
//! 0 -> 1,1
//! 1 -> 1,2
//! 2 -> 1,3
//! 3 -> 1,2
//! ```
//!
//! The header lists the invariant factors (none for the trivial group).
//! Each element line gives the element's coordinates, comma separated, and
//! the Kac label of its sector; either representative of a sector may be
//! used. `#` starts a comment.

use minfusion::{canonicalize, AbelianGroupSpec, KacLabel, LabeledGroup, ModelParams};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct GroupFileError {
    /// 1-based; 0 for problems with the file as a whole.
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> GroupFileError {
    GroupFileError {
        line,
        message: message.into(),
    }
}

fn parse_u64(line: usize, field: &str, token: &str) -> Result<u64, GroupFileError> {
    token.trim().parse().map_err(|_| {
        err(
            line,
            format!(
                "{field}: expected a non-negative integer, found {:?}",
                token.trim()
            ),
        )
    })
}

fn parse_i64(line: usize, field: &str, token: &str) -> Result<i64, GroupFileError> {
    token.trim().parse().map_err(|_| {
        err(
            line,
            format!("{field}: expected an integer, found {:?}", token.trim()),
        )
    })
}

pub fn parse_group_file(text: &str, params: ModelParams) -> Result<LabeledGroup, GroupFileError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, raw)| (i + 1, raw.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| err(0, "empty file: expected a `group k1 ... kt` header"))?;
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some("group") {
        return Err(err(header_line, "header: expected `group k1 ... kt`"));
    }
    let factors = tokens
        .map(|t| parse_u64(header_line, "header", t))
        .collect::<Result<Vec<_>, _>>()?;
    let spec =
        AbelianGroupSpec::new(factors).map_err(|e| err(header_line, format!("header: {e}")))?;

    let mut labels: Vec<Option<usize>> = vec![None; spec.order() as usize];
    for (line, text) in lines {
        let (lhs, rhs) = text
            .split_once("->")
            .ok_or_else(|| err(line, "expected `e1,...,et -> m,n`"))?;
        let lhs = lhs.trim();
        let coords = if lhs.is_empty() {
            Vec::new()
        } else {
            lhs.split(',')
                .map(|t| parse_u64(line, "element", t))
                .collect::<Result<Vec<_>, _>>()?
        };
        let index = spec
            .index_of(&coords)
            .map_err(|e| err(line, format!("element: {e}")))?;
        let (m, n) = rhs.split_once(',').ok_or_else(|| {
            err(
                line,
                format!("label: expected `m,n`, found {:?}", rhs.trim()),
            )
        })?;
        let (m, n) = (
            parse_i64(line, "label m", m)?,
            parse_i64(line, "label n", n)?,
        );
        let sector = canonicalize(&params, m, n).map_err(|e| err(line, format!("label: {e}")))?;
        let slot = &mut labels[index as usize];
        if slot.is_some() {
            return Err(err(
                line,
                format!("element ({}) is labeled twice", join(&coords)),
            ));
        }
        *slot = Some(sector.index);
    }

    let missing: Vec<u64> = (0..spec.order())
        .filter(|&g| labels[g as usize].is_none())
        .collect();
    if let Some(&first) = missing.first() {
        return Err(err(
            0,
            format!(
                "labeling is partial: {} of {} elements have no label, first ({})",
                missing.len(),
                spec.order(),
                join(&spec.coords(first))
            ),
        ));
    }
    let labels = labels
        .into_iter()
        .map(|l| l.expect("checked above"))
        .collect();
    LabeledGroup::new(spec, params, labels).map_err(|e| err(0, e.to_string()))
}

/// Writes `lg` in group-file form, elements in index order, canonical labels.
pub fn write_group_file(lg: &LabeledGroup) -> String {
    let spec = lg.spec();
    let sectors = minfusion::sectors(lg.params());
    let mut out = String::from("group");
    for k in spec.factors() {
        out.push_str(&format!(" {k}"));
    }
    out.push('\n');
    for (g, &s) in lg.labels().iter().enumerate() {
        let KacLabel { m, n } = sectors[s].label;
        out.push_str(&format!("{} -> {m},{n}\n", join(&spec.coords(g as u64))));
    }
    out
}

fn join(coords: &[u64]) -> String {
    coords
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(",")
}
