use std::fmt;

use super::sentence::{AtomId, Sentence};
use super::LogicError;

/// Largest basic set the enumeration-based operations accept.
pub const MAX_ATOMS: usize = 20;

/// A total assignment of truth values to atoms `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Valuation {
    bits: Vec<bool>,
}

impl Valuation {
    pub fn new(bits: Vec<bool>) -> Self {
        Valuation { bits }
    }

    /// Parses a bitstring such as `"101"`; character `i` is atom `i`.
    pub fn parse(bits: &str) -> Result<Self, LogicError> {
        bits.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(LogicError::BadBitstring(other)),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Valuation::new)
    }

    /// Decodes a minterm index; atom 0 is the most significant bit.
    pub fn from_minterm(n: usize, index: usize) -> Self {
        Valuation {
            bits: (0..n).map(|i| (index >> (n - 1 - i)) & 1 == 1).collect(),
        }
    }

    pub fn minterm(&self) -> usize {
        self.bits.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, atom: AtomId) -> Option<bool> {
        self.bits.get(atom.index()).copied()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// The conjunction fixing every atom to its value here, left-nested.
    pub fn minterm_sentence(&self) -> Option<Sentence> {
        Sentence::conjoin(self.bits.iter().enumerate().map(|(i, &b)| {
            let a = Sentence::atom(i);
            if b {
                a
            } else {
                Sentence::not(a)
            }
        }))
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Two-valued evaluation: `g(¬A) = 1 − g(A)`, `g(A∧B) = g(A)·g(B)`.
pub fn eval(s: &Sentence, v: &Valuation) -> Result<bool, LogicError> {
    match s {
        Sentence::Atom(a) => v.get(*a).ok_or(LogicError::AtomOutOfRange {
            atom: a.0,
            n: v.len(),
        }),
        Sentence::Not(x) => eval(x, v).map(|b| !b),
        Sentence::And(x, y) => Ok(eval(x, v)? && eval(y, v)?),
    }
}

/// Bit-parallel truth table. Entry `w` is the value under the valuation whose
/// minterm index is `w`, with `vars[0]` as the most significant bit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthTable {
    vars: usize,
    words: Vec<u64>,
}

const PATTERNS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

impl TruthTable {
    /// Table of `s` over the basic set `0..n`.
    pub fn build(s: &Sentence, n: usize) -> Result<Self, LogicError> {
        if n > MAX_ATOMS {
            return Err(LogicError::TooManyAtoms { found: n, limit: MAX_ATOMS });
        }
        let order: Vec<AtomId> = (0..n).map(AtomId::from).collect();
        Self::build_over(s, &order)
    }

    /// Table of `s` over an explicit variable order.
    pub fn build_over(s: &Sentence, vars: &[AtomId]) -> Result<Self, LogicError> {
        let m = vars.len();
        if m > MAX_ATOMS {
            return Err(LogicError::TooManyAtoms { found: m, limit: MAX_ATOMS });
        }
        let nwords = ((1usize << m) + 63) / 64;
        let last_mask = if m >= 6 { u64::MAX } else { (1u64 << (1 << m)) - 1 };
        let table = Builder { vars, m, nwords, last_mask };
        let words = table.run(s)?;
        Ok(TruthTable { vars: m, words })
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn rows(&self) -> usize {
        1 << self.vars
    }

    pub fn get(&self, index: usize) -> bool {
        (self.words[index / 64] >> (index % 64)) & 1 == 1
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn all_true(&self) -> bool {
        self.count_ones() == self.rows()
    }

    pub fn all_false(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Minterm indices where the table is true, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let tz = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(wi * 64 + tz)
            })
        })
    }

    pub fn first_zero(&self) -> Option<usize> {
        (0..self.rows()).find(|&i| !self.get(i))
    }
}

struct Builder<'a> {
    vars: &'a [AtomId],
    m: usize,
    nwords: usize,
    last_mask: u64,
}

impl Builder<'_> {
    fn run(&self, s: &Sentence) -> Result<Vec<u64>, LogicError> {
        match s {
            Sentence::Atom(a) => {
                let pos = self.vars.iter().position(|v| v == a).ok_or(
                    LogicError::AtomOutOfRange { atom: a.0, n: self.vars.len() },
                )?;
                Ok(self.column(pos))
            }
            Sentence::Not(x) => {
                let mut w = self.run(x)?;
                for word in &mut w {
                    *word = !*word;
                }
                self.mask(&mut w);
                Ok(w)
            }
            Sentence::And(x, y) => {
                let mut w = self.run(x)?;
                let v = self.run(y)?;
                for (a, b) in w.iter_mut().zip(v) {
                    *a &= b;
                }
                Ok(w)
            }
        }
    }

    fn column(&self, pos: usize) -> Vec<u64> {
        let shift = self.m - 1 - pos;
        let mut w: Vec<u64> = if shift < 6 {
            vec![PATTERNS[shift]; self.nwords]
        } else {
            (0..self.nwords)
                .map(|i| if (i >> (shift - 6)) & 1 == 1 { u64::MAX } else { 0 })
                .collect()
        };
        self.mask(&mut w);
        w
    }

    fn mask(&self, w: &mut [u64]) {
        if let Some(last) = w.last_mut() {
            *last &= self.last_mask;
        }
    }
}

fn table_over_occurring(sentences: &[&Sentence]) -> (Vec<AtomId>, Vec<TruthTable>) {
    let mut vars = std::collections::BTreeSet::new();
    for s in sentences {
        vars.extend(s.atoms());
    }
    let vars: Vec<AtomId> = vars.into_iter().collect();
    assert!(
        vars.len() <= MAX_ATOMS,
        "{} distinct atoms exceeds the enumeration limit of {}",
        vars.len(),
        MAX_ATOMS
    );
    let tables = sentences
        .iter()
        .map(|s| TruthTable::build_over(s, &vars).expect("variables cover the sentence"))
        .collect();
    (vars, tables)
}

/// True iff `s` holds under every valuation of the atoms occurring in it.
///
/// # Panics
///
/// If more than [`MAX_ATOMS`] distinct atoms occur in `s`.
pub fn is_tautology(s: &Sentence) -> bool {
    let (_, t) = table_over_occurring(&[s]);
    t[0].all_true()
}

/// True iff some valuation makes `s` true. Same atom limit as [`is_tautology`].
pub fn is_satisfiable(s: &Sentence) -> bool {
    let (_, t) = table_over_occurring(&[s]);
    !t[0].all_false()
}

/// Agreement of `a` and `b` under every valuation of their joint atoms.
/// Same atom limit as [`is_tautology`].
pub fn semantic_equal(a: &Sentence, b: &Sentence) -> bool {
    let (_, t) = table_over_occurring(&[a, b]);
    t[0] == t[1]
}

/// A valuation over `0..s.atom_bound()` under which `s` is false, if any.
/// Atoms not occurring in `s` are set to 0.
pub fn falsifying_valuation(s: &Sentence) -> Option<Valuation> {
    let (vars, t) = table_over_occurring(&[s]);
    let row = t[0].first_zero()?;
    let local = Valuation::from_minterm(vars.len(), row);
    let mut bits = vec![false; s.atom_bound()];
    for (i, a) in vars.iter().enumerate() {
        bits[a.index()] = local.bits()[i];
    }
    Some(Valuation::new(bits))
}
