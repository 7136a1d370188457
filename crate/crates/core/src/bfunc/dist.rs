use num_traits::{Signed, Zero};
use thiserror::Error;

use super::{BFuncError, BFunction};
use crate::logic::{Valuation, MAX_ATOMS};
use crate::{parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DistError {
    #[error("line {line}: expected `<bitstring> <p/q>`")]
    Malformed { line: usize },
    #[error("line {line}: bad mass `{text}`")]
    BadMass { line: usize, text: String },
    #[error("line {line}: bitstring has width {found}, expected {expected}")]
    BadWidth { line: usize, expected: usize, found: usize },
    #[error("line {line}: minterm {bits} listed twice")]
    DuplicateMinterm { line: usize, bits: String },
    #[error("line {line}: negative mass")]
    NegativeMass { line: usize },
    #[error("masses sum to {0}, not 1")]
    SumNotOne(Rational),
    #[error("distribution lists no minterms")]
    Empty,
    #[error("{0} atoms exceed the limit of {MAX_ATOMS}")]
    TooManyAtoms(usize),
}

/// Parses `<bitstring> <p/q>` lines. Omitted minterms get mass 0; blank lines
/// and `#` comments are skipped. `width` forces the basic-set size, otherwise
/// it is taken from the first bitstring.
pub fn parse_distribution(text: &str, width: Option<usize>) -> Result<BFunction, DistError> {
    let mut n = width;
    let mut mass: Vec<Option<Rational>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let raw = raw.trim();
        if raw.is_empty() || raw.starts_with('#') {
            continue;
        }
        let mut parts = raw.split_whitespace();
        let (Some(bits), Some(m), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(DistError::Malformed { line });
        };
        let v = Valuation::parse(bits).map_err(|_| DistError::Malformed { line })?;
        let expected = *n.get_or_insert(v.len());
        if expected > MAX_ATOMS {
            return Err(DistError::TooManyAtoms(expected));
        }
        if v.len() != expected {
            return Err(DistError::BadWidth { line, expected, found: v.len() });
        }
        if mass.is_empty() {
            mass = vec![None; 1 << expected];
        }
        let value =
            parse_rational(m).ok_or_else(|| DistError::BadMass { line, text: m.to_string() })?;
        if value.is_negative() {
            return Err(DistError::NegativeMass { line });
        }
        let slot = &mut mass[v.minterm()];
        if slot.is_some() {
            return Err(DistError::DuplicateMinterm { line, bits: bits.to_string() });
        }
        *slot = Some(value);
    }
    let n = n.ok_or(DistError::Empty)?;
    if mass.is_empty() {
        return Err(DistError::Empty);
    }
    let mass = mass.into_iter().map(|m| m.unwrap_or_else(Rational::zero)).collect();
    BFunction::new(n, mass).map_err(|e| match e {
        BFuncError::SumNotOne(total) => DistError::SumNotOne(total),
        other => unreachable!("validated above: {other}"),
    })
}

/// One line per minterm with positive mass, ascending.
pub fn format_distribution(bf: &BFunction) -> String {
    let mut out = String::new();
    for w in bf.support() {
        let v = Valuation::from_minterm(bf.atoms(), w);
        let m = bf.mass(w);
        out.push_str(&format!("{} {}/{}\n", v, m.numer(), m.denom()));
    }
    out
}
