use std::fmt;
use std::str::FromStr;

use super::sentence::Sentence;

/// The three propositional axiom schemata.
///
/// * A1: `α → (β → α)`
/// * A2: `(α → (β → γ)) → ((α → β) → (α → γ))`
/// * A3: `(¬β → ¬α) → ((¬β → α) → β)`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Schema {
    A1,
    A2,
    A3,
}

impl Schema {
    pub const ALL: [Schema; 3] = [Schema::A1, Schema::A2, Schema::A3];

    /// Builds the instance for the given metavariable values. `gamma` is only
    /// read by A2.
    pub fn instantiate(self, alpha: &Sentence, beta: &Sentence, gamma: &Sentence) -> Sentence {
        let imp = |a: &Sentence, b: &Sentence| Sentence::implies(a.clone(), b.clone());
        match self {
            Schema::A1 => imp(alpha, &imp(beta, alpha)),
            Schema::A2 => imp(
                &imp(alpha, &imp(beta, gamma)),
                &imp(&imp(alpha, beta), &imp(alpha, gamma)),
            ),
            Schema::A3 => {
                let nb = Sentence::not(beta.clone());
                let na = Sentence::not(alpha.clone());
                imp(&imp(&nb, &na), &imp(&imp(&nb, alpha), beta))
            }
        }
    }

    fn pattern(self) -> Pattern {
        use Pattern::*;
        let imp = |a: Pattern, b: Pattern| Imp(Box::new(a), Box::new(b));
        let neg = |a: Pattern| Neg(Box::new(a));
        match self {
            Schema::A1 => imp(Var(0), imp(Var(1), Var(0))),
            Schema::A2 => imp(
                imp(Var(0), imp(Var(1), Var(2))),
                imp(imp(Var(0), Var(1)), imp(Var(0), Var(2))),
            ),
            Schema::A3 => imp(
                imp(neg(Var(1)), neg(Var(0))),
                imp(imp(neg(Var(1)), Var(0)), Var(1)),
            ),
        }
    }
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Schema::A1 => "A1",
            Schema::A2 => "A2",
            Schema::A3 => "A3",
        })
    }
}

impl FromStr for Schema {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A1" => Ok(Schema::A1),
            "A2" => Ok(Schema::A2),
            "A3" => Ok(Schema::A3),
            other => Err(format!("unknown axiom schema `{other}`")),
        }
    }
}

/// Metavariable substitution witnessing a schema match.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Bindings {
    pub alpha: Option<Sentence>,
    pub beta: Option<Sentence>,
    pub gamma: Option<Sentence>,
}

impl Bindings {
    fn slot(&mut self, var: u8) -> &mut Option<Sentence> {
        match var {
            0 => &mut self.alpha,
            1 => &mut self.beta,
            _ => &mut self.gamma,
        }
    }
}

enum Pattern {
    Var(u8),
    Neg(Box<Pattern>),
    Imp(Box<Pattern>, Box<Pattern>),
}

fn unify(p: &Pattern, s: &Sentence, b: &mut Bindings) -> bool {
    match p {
        Pattern::Var(v) => {
            let slot = b.slot(*v);
            match slot {
                Some(bound) => bound == s,
                None => {
                    *slot = Some(s.clone());
                    true
                }
            }
        }
        Pattern::Neg(inner) => match s.as_negation() {
            Some(x) => unify(inner, x, b),
            None => false,
        },
        Pattern::Imp(l, r) => match s.as_implication() {
            Some((x, y)) => unify(l, x, b) && unify(r, y, b),
            None => false,
        },
    }
}

/// Matches `s` against one schema.
pub fn match_schema(schema: Schema, s: &Sentence) -> Option<Bindings> {
    let mut b = Bindings::default();
    unify(&schema.pattern(), s, &mut b).then_some(b)
}

/// First schema, in order A1, A2, A3, of which `s` is an instance.
pub fn is_axiom_instance(s: &Sentence) -> Option<(Schema, Bindings)> {
    Schema::ALL
        .into_iter()
        .find_map(|schema| match_schema(schema, s).map(|b| (schema, b)))
}
