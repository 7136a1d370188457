//! Text descriptors for index sets and Q-numbers on the command line.
//!
//! Index sets:
//!   `all`, `empty`, `from <k>`, `finite 1,2,3`, `cofinite 1,2`,
//!   `multiples <k>`, `periodic [<preamble>:]<period>` (bits for n = 1, 2, …).
//!
//! Q-numbers are expressions over
//!   `const <p/q>`, `recip-n` (⟨1/n⟩), `lin` (⟨n⟩), `cycle a,b,…` (periodic
//!   constants), with `+`, `-`, `*`, unary `-`, `recip(…)`, `abs(…)` and
//!   parentheses.

use anyhow::{anyhow, bail, Context, Result};
use logiprob::parse_rational;
use logiprob::qnum::{IndexSet, QNumber, RatFunc};

fn parse_bits(text: &str) -> Result<Vec<bool>> {
    text.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(anyhow!("bad bit `{other}`")),
        })
        .collect()
}

fn parse_indices(text: &str) -> Result<Vec<u64>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<u64>().with_context(|| format!("bad index `{s}`")))
        .collect()
}

pub fn parse_index_set(text: &str) -> Result<IndexSet> {
    let text = text.trim();
    let (head, rest) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
    let rest = rest.trim();
    let set = match head {
        "all" => IndexSet::all(),
        "empty" => IndexSet::empty(),
        "from" => IndexSet::from_index(rest.parse().with_context(|| format!("bad index `{rest}`"))?),
        "multiples" => {
            IndexSet::multiples(rest.parse().with_context(|| format!("bad modulus `{rest}`"))?)
        }
        "finite" => IndexSet::finite(parse_indices(rest)?)?,
        "cofinite" => IndexSet::cofinite(parse_indices(rest)?)?,
        "periodic" => {
            let (pre, period) = rest.split_once(':').unwrap_or(("", rest));
            IndexSet::periodic(parse_bits(pre)?, parse_bits(period)?)?
        }
        other => bail!("unknown index set `{other}`"),
    };
    Ok(set)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if "+-*(),".contains(c) {
            // a `-` inside a word such as `recip-n` is handled below
            out.push(Tok::Sym(c));
            chars.next();
        } else {
            let mut word = String::new();
            while let Some(&c) = chars.peek() {
                let joins_word = c == '-' && word == "recip" && !matches!(chars.clone().nth(1), Some('('));
                if c.is_alphanumeric() || c == '/' || c == '_' || joins_word {
                    word.push(c);
                    chars.next();
                } else {
                    break;
                }
            }
            if word.is_empty() {
                bail!("unexpected character `{c}`");
            }
            out.push(Tok::Word(word));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.next() {
            Some(Tok::Sym(s)) if s == c => Ok(()),
            other => bail!("expected `{c}`, found {other:?}"),
        }
    }

    fn expr(&mut self) -> Result<QNumber> {
        let mut acc = self.term()?;
        while let Some(Tok::Sym(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { acc.add(&rhs) } else { acc.sub(&rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<QNumber> {
        let mut acc = self.factor()?;
        while let Some(Tok::Sym('*')) = self.peek() {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn rational(&mut self) -> Result<logiprob::Rational> {
        match self.next() {
            Some(Tok::Word(w)) => parse_rational(&w).ok_or_else(|| anyhow!("bad rational `{w}`")),
            Some(Tok::Sym('-')) => Ok(-self.rational()?),
            other => bail!("expected a rational, found {other:?}"),
        }
    }

    fn factor(&mut self) -> Result<QNumber> {
        match self.next() {
            Some(Tok::Sym('-')) => Ok(self.factor()?.neg()),
            Some(Tok::Sym('(')) => {
                let x = self.expr()?;
                self.expect(')')?;
                Ok(x)
            }
            Some(Tok::Word(w)) => match w.as_str() {
                "const" => Ok(QNumber::standard(self.rational()?)),
                "recip-n" => Ok(QNumber::reciprocal_n()),
                "lin" => Ok(QNumber::linear()),
                "cycle" => {
                    let mut terms = vec![RatFunc::constant(self.rational()?)];
                    while let Some(Tok::Sym(',')) = self.peek() {
                        self.pos += 1;
                        terms.push(RatFunc::constant(self.rational()?));
                    }
                    Ok(QNumber::periodic(terms)?)
                }
                "recip" | "abs" => {
                    self.expect('(')?;
                    let x = self.expr()?;
                    self.expect(')')?;
                    if w == "abs" {
                        Ok(x.abs())
                    } else {
                        Ok(x.recip()?)
                    }
                }
                other => bail!("unknown sequence `{other}`"),
            },
            other => bail!("unexpected {other:?}"),
        }
    }
}

pub fn parse_qnumber(text: &str) -> Result<QNumber> {
    let mut p = Parser { toks: tokenize(text)?, pos: 0 };
    let x = p.expr()?;
    if let Some(t) = p.peek() {
        bail!("unexpected trailing {t:?}");
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use logiprob::qnum::{q_equal, SetKind};
    use logiprob::ratio;

    #[test]
    fn index_sets() {
        let s = parse_index_set("periodic 01").unwrap();
        assert!(s.contains(2) && !s.contains(3));
        let s = parse_index_set("periodic 111:0").unwrap();
        assert!(s.contains(3) && !s.contains(4));
        assert!(matches!(parse_index_set("finite 3,1").unwrap().kind(), SetKind::Finite(v) if v == &vec![1, 3]));
        assert!(parse_index_set("from 7").unwrap().contains(7));
        assert!(parse_index_set("periodic 012").is_err());
        assert!(parse_index_set("bogus").is_err());
    }

    #[test]
    fn qnumbers() {
        let x = parse_qnumber("const 5 + recip-n").unwrap();
        assert_eq!(x.value(2), ratio(11, 2));
        let y = parse_qnumber("-(lin * recip-n) + const 1").unwrap();
        assert!(q_equal(&y, &QNumber::standard(ratio(0, 1)), 10).is_yes());
        let z = parse_qnumber("recip(const 2) * const -4").unwrap();
        assert_eq!(z.standard_value(), Some(ratio(-2, 1)));
        let c = parse_qnumber("cycle 1, 0").unwrap();
        assert_eq!(c.value(3), ratio(1, 1));
        assert!(parse_qnumber("recip(const 0)").is_err());
        assert!(parse_qnumber("lin lin").is_err());
        assert!(parse_qnumber("const x").is_err());
    }
}
