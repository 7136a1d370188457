//! Concrete formula syntax and the line-based proof text format.
//!
//! Formulas: atoms `[A-Za-z_][A-Za-z0-9_]*`, `!` (tightest), `&`, `|`, and
//! `->` (loosest, right-associative), with parentheses. `&` and `|` associate
//! to the left. `|` and `->` desugar into `¬`/`∧` at parse time.
//!
//! Proofs: one line per step, `<n>. <formula> ; axiom A1|A2|A3`,
//! `; hyp <k>` or `; mp <major> <minor>`, numbered from 1. Blank lines and
//! lines starting with `#` are ignored. The last line is the goal.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::logic::{AtomId, Deduction, Justification, Line, Schema, Sentence, MAX_ATOMS};

/// Name ↔ id map for a basic set. Ids are assigned densely in order of first
/// appearance.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AtomTable {
    names: Vec<String>,
    ids: HashMap<String, AtomId>,
}

impl AtomTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// A table with the given names as atoms `0..`.
    pub fn with_names<I, S>(names: I) -> Result<Self, ParseError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut t = AtomTable::new();
        for (i, name) in names.into_iter().enumerate() {
            let name = name.as_ref();
            if !is_identifier(name) {
                return Err(ParseError::new(i + 1, format!("`{name}` is not an atom name")));
            }
            if t.lookup(name).is_some() {
                return Err(ParseError::new(i + 1, format!("atom `{name}` listed twice")));
            }
            t.intern(name, i + 1)?;
        }
        Ok(t)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn lookup(&self, name: &str) -> Option<AtomId> {
        self.ids.get(name).copied()
    }

    pub fn name(&self, id: AtomId) -> Option<&str> {
        self.names.get(id.index()).map(String::as_str)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    fn intern(&mut self, name: &str, column: usize) -> Result<AtomId, ParseError> {
        if let Some(id) = self.lookup(name) {
            return Ok(id);
        }
        if self.names.len() == MAX_ATOMS {
            return Err(ParseError::new(
                column,
                format!("more than {MAX_ATOMS} distinct atoms"),
            ));
        }
        let id = AtomId::from(self.names.len());
        self.names.push(name.to_string());
        self.ids.insert(name.to_string(), id);
        Ok(id)
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at column {column}: {message}")]
pub struct ParseError {
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn new(column: usize, message: impl Into<String>) -> Self {
        ParseError { column, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Not,
    And,
    Or,
    Imp,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "atom `{s}`"),
            Tok::Not => f.write_str("`!`"),
            Tok::And => f.write_str("`&`"),
            Tok::Or => f.write_str("`|`"),
            Tok::Imp => f.write_str("`->`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let col = i + 1;
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '!' => {
                out.push((Tok::Not, col));
                i += 1;
            }
            '&' => {
                out.push((Tok::And, col));
                i += 1;
            }
            '|' => {
                out.push((Tok::Or, col));
                i += 1;
            }
            '(' => {
                out.push((Tok::LParen, col));
                i += 1;
            }
            ')' => {
                out.push((Tok::RParen, col));
                i += 1;
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                out.push((Tok::Imp, col));
                i += 2;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((Tok::Ident(chars[start..i].iter().collect()), col));
            }
            other => {
                return Err(ParseError::new(col, format!("unexpected character `{other}`")))
            }
        }
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    table: &'a mut AtomTable,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn column(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn implication(&mut self) -> Result<Sentence, ParseError> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Imp {
            self.bump();
            let rhs = self.implication()?;
            return Ok(Sentence::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Sentence, ParseError> {
        let mut lhs = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.bump();
            lhs = Sentence::or(lhs, self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Sentence, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            lhs = Sentence::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Sentence, ParseError> {
        let col = self.column();
        match self.bump() {
            Tok::Not => Ok(Sentence::not(self.unary()?)),
            Tok::Ident(name) => Ok(Sentence::Atom(self.table.intern(&name, col)?)),
            Tok::LParen => {
                let inner = self.implication()?;
                let col = self.column();
                match self.bump() {
                    Tok::RParen => Ok(inner),
                    t => Err(ParseError::new(col, format!("expected `)`, found {t}"))),
                }
            }
            t => Err(ParseError::new(col, format!("expected a formula, found {t}"))),
        }
    }
}

/// A parsed formula with its source text and atom table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedFormula {
    pub source: String,
    pub ast: Sentence,
    pub atoms: AtomTable,
}

/// Parses with a fresh atom table.
pub fn parse_formula(text: &str) -> Result<ParsedFormula, ParseError> {
    let mut atoms = AtomTable::new();
    let ast = parse_with(text, &mut atoms)?;
    Ok(ParsedFormula { source: text.to_string(), ast, atoms })
}

/// Parses against a shared table, interning new atoms into it.
pub fn parse_with(text: &str, table: &mut AtomTable) -> Result<Sentence, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, pos: 0, table };
    let s = p.implication()?;
    match p.peek() {
        Tok::End => Ok(s),
        t => Err(ParseError::new(p.column(), format!("unexpected {t}"))),
    }
}

const IMP: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const UNARY: u8 = 4;

/// Renders `s` with names from `table` (`p<id>` for unnamed atoms), re-sugaring
/// `¬(¬x∧¬y)` as `x | y` and `¬(x∧¬y)` as `x -> y`.
pub fn format_sentence(s: &Sentence, table: &AtomTable) -> String {
    let mut out = String::new();
    write_sentence(&mut out, s, table, IMP);
    out
}

/// `¬(l∧r)` whose left conjunct `l` is itself an implication prints better
/// as `l -> …` than as a disjunction.
fn left_reads_as_implication(s: &Sentence) -> bool {
    match s {
        Sentence::Not(inner) => match inner.as_ref() {
            Sentence::And(l, _) => l.as_implication().is_some(),
            _ => false,
        },
        _ => false,
    }
}

fn write_sentence(out: &mut String, s: &Sentence, table: &AtomTable, ctx: u8) {
    let (level, parts): (u8, Vec<(&Sentence, u8, &str)>) =
        if let Some((x, y)) = s.as_disjunction().filter(|_| !left_reads_as_implication(s)) {
            (OR, vec![(x, OR, " | "), (y, AND, "")])
        } else if let Some((x, y)) = s.as_implication() {
            (IMP, vec![(x, OR, " -> "), (y, IMP, "")])
        } else {
            match s {
                Sentence::Atom(a) => {
                    match table.name(*a) {
                        Some(n) => out.push_str(n),
                        None => out.push_str(&format!("p{}", a.0)),
                    }
                    return;
                }
                Sentence::Not(x) => (UNARY, vec![(x, UNARY, "")]),
                Sentence::And(x, y) => (AND, vec![(x, AND, " & "), (y, UNARY, "")]),
            }
        };
    let paren = level < ctx;
    if paren {
        out.push('(');
    }
    if level == UNARY {
        out.push('!');
    }
    for (child, child_ctx, sep) in parts {
        write_sentence(out, child, table, child_ctx);
        out.push_str(sep);
    }
    if paren {
        out.push(')');
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofTextError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: {source}")]
    Formula {
        line: usize,
        #[source]
        source: ParseError,
    },
    #[error("proof text has no steps")]
    Empty,
    #[error("hypothesis {0} is never stated")]
    MissingHypothesis(usize),
}

/// Parses proof text. Hypotheses are taken from the `hyp` lines; two lines
/// citing the same index with different sentences are reported by the
/// checker as a hypothesis mismatch.
pub fn parse_proof(text: &str, table: &mut AtomTable) -> Result<Deduction, ProofTextError> {
    let mut lines = Vec::new();
    let mut hyps: Vec<Option<Sentence>> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let raw = raw.trim();
        if raw.is_empty() || raw.starts_with('#') {
            continue;
        }
        let bad = |message: String| ProofTextError::Malformed { line: lineno, message };
        let (num, rest) = raw
            .split_once('.')
            .ok_or_else(|| bad("expected `<n>. <formula> ; <justification>`".into()))?;
        let num: usize = num
            .trim()
            .parse()
            .map_err(|_| bad(format!("bad step number `{}`", num.trim())))?;
        if num != lines.len() + 1 {
            return Err(bad(format!("expected step {}, found {num}", lines.len() + 1)));
        }
        let (formula, just) = rest
            .rsplit_once(';')
            .ok_or_else(|| bad("missing `; <justification>`".into()))?;
        let sentence = parse_with(formula, table)
            .map_err(|source| ProofTextError::Formula { line: lineno, source })?;
        let words: Vec<&str> = just.split_whitespace().collect();
        let num_arg = |w: &str| {
            w.parse::<usize>().map_err(|_| bad(format!("bad number `{w}` in justification")))
        };
        let justification = match words.as_slice() {
            ["axiom", schema] => Justification::Axiom(schema.parse::<Schema>().map_err(bad)?),
            ["hyp", k] => {
                let k = num_arg(k)?;
                if hyps.len() <= k {
                    hyps.resize(k + 1, None);
                }
                hyps[k].get_or_insert_with(|| sentence.clone());
                Justification::Hypothesis(k)
            }
            ["mp", i, j] => Justification::ModusPonens { major: num_arg(i)?, minor: num_arg(j)? },
            _ => return Err(bad(format!("unknown justification `{}`", just.trim()))),
        };
        lines.push(Line { sentence, justification });
    }
    let goal = lines.last().ok_or(ProofTextError::Empty)?.sentence.clone();
    let hypotheses = hyps
        .into_iter()
        .enumerate()
        .map(|(k, h)| h.ok_or(ProofTextError::MissingHypothesis(k)))
        .collect::<Result<_, _>>()?;
    Ok(Deduction { hypotheses, lines, goal })
}

/// Renders a deduction in proof text format, one step per line.
pub fn format_proof(d: &Deduction, table: &AtomTable) -> String {
    let mut out = String::new();
    for (i, l) in d.lines.iter().enumerate() {
        out.push_str(&format!(
            "{}. {} ; {}\n",
            i + 1,
            format_sentence(&l.sentence, table),
            l.justification
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::check_deduction;

    fn p(text: &str) -> Sentence {
        parse_formula(text).unwrap().ast
    }

    #[test]
    fn precedence() {
        let f = parse_formula("A & !B -> C").unwrap();
        let (a, b, c) = (Sentence::atom(0usize), Sentence::atom(1usize), Sentence::atom(2usize));
        assert_eq!(f.ast, Sentence::implies(Sentence::and(a, Sentence::not(b)), c));
        assert_eq!(f.atoms.names(), ["A", "B", "C"]);
    }

    #[test]
    fn implication_is_right_associative() {
        let (a, b, c) = (Sentence::atom(0usize), Sentence::atom(1usize), Sentence::atom(2usize));
        assert_eq!(p("A -> B -> C"), Sentence::implies(a, Sentence::implies(b, c)));
    }

    #[test]
    fn and_or_left_associative() {
        let (a, b, c) = (Sentence::atom(0usize), Sentence::atom(1usize), Sentence::atom(2usize));
        assert_eq!(
            p("A & B & C"),
            Sentence::and(Sentence::and(a.clone(), b.clone()), c.clone())
        );
        assert_eq!(p("A | B | C"), Sentence::or(Sentence::or(a, b), c));
        assert_eq!(p("A | B & C"), p("A | (B & C)"));
    }

    #[test]
    fn syntax_errors_report_columns() {
        let e = parse_formula("A & & B").unwrap_err();
        assert_eq!(e.column, 5);
        assert_eq!(parse_formula("A $ B").unwrap_err().column, 3);
        assert_eq!(parse_formula("(A").unwrap_err().column, 3);
        assert_eq!(parse_formula("A B").unwrap_err().column, 3);
        assert_eq!(parse_formula("").unwrap_err().column, 1);
        assert_eq!(parse_formula("A - B").unwrap_err().column, 3);
    }

    #[test]
    fn formatting_resugars() {
        let t = AtomTable::with_names(["A", "B", "C"]).unwrap();
        for src in ["A -> B -> C", "(A -> B) -> C", "A | B", "!(A & B)", "A & !B -> C", "!!A"] {
            let s = parse_with(src, &mut t.clone()).unwrap();
            assert_eq!(format_sentence(&s, &t), src);
        }
        assert_eq!(format_sentence(&Sentence::atom(7usize), &t), "p7");
    }

    #[test]
    fn too_many_atoms() {
        let src: Vec<String> = (0..=MAX_ATOMS).map(|i| format!("X{i}")).collect();
        assert!(parse_formula(&src.join(" & ")).is_err());
    }

    #[test]
    fn proof_text_roundtrip() {
        let text = "1. A ; hyp 0\n2. A -> B -> A ; axiom A1\n3. B -> A ; mp 2 1\n";
        let mut t = AtomTable::new();
        let d = parse_proof(text, &mut t).unwrap();
        assert_eq!(d.hypotheses.len(), 1);
        assert_eq!(check_deduction(&d), Ok(()));
        assert_eq!(format_proof(&d, &t), text);
    }

    #[test]
    fn proof_text_errors() {
        let mut t = AtomTable::new();
        assert!(matches!(
            parse_proof("2. A ; hyp 0", &mut t),
            Err(ProofTextError::Malformed { line: 1, .. })
        ));
        assert!(matches!(
            parse_proof("1. A ; lemma", &mut t),
            Err(ProofTextError::Malformed { .. })
        ));
        assert!(matches!(
            parse_proof("# nothing\n", &mut t),
            Err(ProofTextError::Empty)
        ));
        assert!(matches!(
            parse_proof("1. A ; hyp 1", &mut t),
            Err(ProofTextError::MissingHypothesis(0))
        ));
        assert!(matches!(
            parse_proof("1. A & ; axiom A1", &mut t),
            Err(ProofTextError::Formula { line: 1, .. })
        ));
    }
}
