//! Q-numbers represented by one sequence, with lifted field operations,
//! Q-equality, Q-order and size classification.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::index_set::{filter_membership_with, part_frequency, IndexSet};
use super::poly::{Poly, RatFunc};
use super::{Limit, QError, Verdict, DEFAULT_HORIZON};
use crate::Rational;

type Seq = Arc<dyn Fn(u64) -> Rational + Send + Sync>;

/// A representative rational sequence `⟨x_1, x_2, …⟩`.
///
/// `form`, when present, is a list of rational functions `f_0..f_{m-1}` with
/// `x_n = f_{(n-1) mod m}(n)` for all but finitely many `n`; verdicts on such
/// numbers are exact. `declared` is a limit asserted by the caller for a
/// sequence without a form.
#[derive(Clone)]
pub struct QNumber {
    seq: Seq,
    form: Option<Vec<RatFunc>>,
    declared: Option<Limit>,
}

impl fmt::Debug for QNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.form, &self.declared) {
            (Some(form), _) => {
                let parts: Vec<String> = form.iter().map(|r| r.to_string()).collect();
                write!(f, "QNumber[{}]", parts.join("; "))
            }
            (None, Some(l)) => write!(f, "QNumber(opaque, limit {l})"),
            (None, None) => write!(f, "QNumber(opaque)"),
        }
    }
}

fn primitive(mut form: Vec<RatFunc>) -> Vec<RatFunc> {
    let len = form.len();
    if let Some(d) = (1..=len).find(|d| len % d == 0 && (0..len).all(|i| form[i] == form[i % d])) {
        form.truncate(d);
    }
    form
}

fn aligned<'a>(a: &'a [RatFunc], b: &'a [RatFunc]) -> impl Iterator<Item = (&'a RatFunc, &'a RatFunc)> {
    let len = a.len().lcm(&b.len());
    (0..len).map(move |i| (&a[i % a.len()], &b[i % b.len()]))
}

fn common_limit(form: &[RatFunc]) -> Option<Limit> {
    let first = form[0].limit();
    form[1..].iter().all(|f| f.limit() == first).then_some(first)
}

impl QNumber {
    fn structured(form: Vec<RatFunc>) -> QNumber {
        let terms = form.clone();
        let seq: Seq = Arc::new(move |n| {
            let i = (n.max(1) - 1) as usize % terms.len();
            terms[i].eval(n).unwrap_or_else(Rational::zero)
        });
        QNumber { seq, form: Some(primitive(form)), declared: None }
    }

    /// The standard Q-number of `a`: the constant sequence.
    pub fn standard(a: Rational) -> QNumber {
        QNumber::structured(vec![RatFunc::constant(a)])
    }

    /// `⟨f(1), f(2), …⟩`, with 0 at the poles of `f`.
    pub fn from_fn(f: RatFunc) -> QNumber {
        QNumber::structured(vec![f])
    }

    /// Residue class `i` of `n-1` modulo `terms.len()` follows `terms[i]`.
    pub fn periodic(terms: Vec<RatFunc>) -> Result<QNumber, QError> {
        if terms.is_empty() {
            return Err(QError::EmptyPeriod);
        }
        Ok(QNumber::structured(terms))
    }

    /// `⟨1/n⟩`.
    pub fn reciprocal_n() -> QNumber {
        QNumber::from_fn(RatFunc::polynomial(Poly::identity()).recip().expect("n is nonzero"))
    }

    /// `⟨n⟩`.
    pub fn linear() -> QNumber {
        QNumber::from_fn(RatFunc::polynomial(Poly::identity()))
    }

    pub fn opaque(f: impl Fn(u64) -> Rational + Send + Sync + 'static) -> QNumber {
        QNumber { seq: Arc::new(f), form: None, declared: None }
    }

    /// An opaque sequence whose limit the caller vouches for.
    pub fn opaque_with_limit(
        f: impl Fn(u64) -> Rational + Send + Sync + 'static,
        limit: Limit,
    ) -> QNumber {
        QNumber { seq: Arc::new(f), form: None, declared: Some(limit) }
    }

    /// Replaces finitely many terms; the Q-number is unchanged.
    pub fn with_overrides(&self, overrides: BTreeMap<u64, Rational>) -> QNumber {
        let base = self.seq.clone();
        QNumber {
            seq: Arc::new(move |n| overrides.get(&n).cloned().unwrap_or_else(|| base(n))),
            form: self.form.clone(),
            declared: self.declared.clone(),
        }
    }

    /// Term `x_n`, indices starting at 1.
    pub fn value(&self, n: u64) -> Rational {
        (self.seq)(n)
    }

    pub fn form(&self) -> Option<&[RatFunc]> {
        self.form.as_deref()
    }

    pub fn is_structured(&self) -> bool {
        self.form.is_some()
    }

    /// `Some(a)` when the sequence agrees with the constant `a` on a
    /// density-one set, as far as structure shows.
    pub fn standard_value(&self) -> Option<Rational> {
        let form = self.form.as_ref()?;
        let a = form[0].as_constant()?;
        form.iter().all(|f| f.as_constant().as_ref() == Some(&a)).then_some(a)
    }

    /// Limit of the sequence when structure or a declaration fixes it.
    pub fn limit(&self) -> Option<Limit> {
        match &self.form {
            Some(form) => common_limit(form),
            None => self.declared.clone(),
        }
    }

    fn binary(
        &self,
        other: &QNumber,
        point: impl Fn(&Rational, &Rational) -> Rational + Send + Sync + 'static,
        term: impl Fn(&RatFunc, &RatFunc) -> RatFunc,
        limit: impl Fn(&Limit, &Limit) -> Option<Limit>,
    ) -> QNumber {
        let (a, b) = (self.seq.clone(), other.seq.clone());
        let seq: Seq = Arc::new(move |n| point(&a(n), &b(n)));
        match (&self.form, &other.form) {
            (Some(fa), Some(fb)) => {
                let form = aligned(fa, fb).map(|(x, y)| term(x, y)).collect();
                QNumber { seq, form: Some(primitive(form)), declared: None }
            }
            _ => {
                let declared = match (self.limit(), other.limit()) {
                    (Some(x), Some(y)) => limit(&x, &y),
                    _ => None,
                };
                QNumber { seq, form: None, declared }
            }
        }
    }

    fn unary(
        &self,
        point: impl Fn(&Rational) -> Rational + Send + Sync + 'static,
        term: impl Fn(&RatFunc) -> RatFunc,
        limit: impl Fn(&Limit) -> Option<Limit>,
    ) -> QNumber {
        let a = self.seq.clone();
        let seq: Seq = Arc::new(move |n| point(&a(n)));
        match &self.form {
            Some(form) => QNumber {
                seq,
                form: Some(primitive(form.iter().map(term).collect())),
                declared: None,
            },
            None => QNumber { seq, form: None, declared: self.declared.as_ref().and_then(limit) },
        }
    }

    pub fn add(&self, other: &QNumber) -> QNumber {
        self.binary(other, |x, y| x + y, |f, g| f + g, Limit::add)
    }

    pub fn mul(&self, other: &QNumber) -> QNumber {
        self.binary(other, |x, y| x * y, |f, g| f * g, Limit::mul)
    }

    pub fn neg(&self) -> QNumber {
        self.unary(|x| -x, |f| -f, |l| Some(l.neg()))
    }

    pub fn sub(&self, other: &QNumber) -> QNumber {
        self.add(&other.neg())
    }

    pub fn abs(&self) -> QNumber {
        self.unary(|x| x.abs(), RatFunc::eventual_abs, |l| Some(l.abs()))
    }

    /// Whether `0 < |x|` holds on a density-one set.
    pub fn is_apart_from_zero(&self, horizon: u64) -> Verdict {
        q_less(&QNumber::standard(Rational::zero()), &self.abs(), horizon)
    }

    /// Pointwise `1/x_n`, with 0 where `x_n = 0`. Requires `0 < |x|`.
    pub fn recip(&self) -> Result<QNumber, QError> {
        let verdict = self.is_apart_from_zero(DEFAULT_HORIZON);
        if !verdict.is_yes() {
            return Err(QError::ReciprocalUndefined(verdict));
        }
        Ok(self.unary(
            |x| if x.is_zero() { Rational::zero() } else { x.recip() },
            |f| f.recip().unwrap_or_else(|| RatFunc::constant(Rational::zero())),
            |l| match l {
                Limit::Finite(a) if a.is_zero() => None,
                Limit::Finite(a) => Some(Limit::Finite(a.recip())),
                _ => Some(Limit::Finite(Rational::zero())),
            },
        ))
    }
}

/// Named field operations for [`q_lift`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiftOp {
    Add,
    Mul,
    Neg,
    Recip,
}

/// Pointwise extension of a field operation to Q-numbers.
pub fn q_lift(op: LiftOp, args: &[QNumber]) -> Result<QNumber, QError> {
    let expected = match op {
        LiftOp::Add | LiftOp::Mul => 2,
        LiftOp::Neg | LiftOp::Recip => 1,
    };
    if args.len() != expected {
        return Err(QError::Arity { op, expected, found: args.len() });
    }
    match op {
        LiftOp::Add => Ok(args[0].add(&args[1])),
        LiftOp::Mul => Ok(args[0].mul(&args[1])),
        LiftOp::Neg => Ok(args[0].neg()),
        LiftOp::Recip => args[0].recip(),
    }
}

/// `{n : x_n = y_n}`.
pub fn agreement_set(x: &QNumber, y: &QNumber) -> IndexSet {
    let (a, b) = (x.seq.clone(), y.seq.clone());
    IndexSet::opaque(move |n| a(n) == b(n))
}

/// `{n : x_n < y_n}`.
pub fn dominance_set(x: &QNumber, y: &QNumber) -> IndexSet {
    let (a, b) = (x.seq.clone(), y.seq.clone());
    IndexSet::opaque(move |n| a(n) < b(n))
}

fn evidence(set: &IndexSet, horizon: u64) -> Verdict {
    filter_membership_with(set, horizon)
}

/// Q-equivalence: `{n : x_n = y_n}` has density one.
///
/// On structured numbers each residue class either agrees identically or
/// only finitely often, so the answer is exact. Distinct known limits
/// force `No`.
pub fn q_equal(x: &QNumber, y: &QNumber, horizon: u64) -> Verdict {
    if let (Some(fx), Some(fy)) = (&x.form, &y.form) {
        return Verdict::from(aligned(fx, fy).all(|(f, g)| f == g));
    }
    if let (Some(lx), Some(ly)) = (x.limit(), y.limit()) {
        if lx != ly {
            return Verdict::No;
        }
    }
    evidence(&agreement_set(x, y), horizon)
}

/// Q-order: `{n : x_n < y_n}` has density one.
pub fn q_less(x: &QNumber, y: &QNumber, horizon: u64) -> Verdict {
    if let (Some(fx), Some(fy)) = (&x.form, &y.form) {
        return Verdict::from(aligned(fx, fy).all(|(f, g)| (g - f).eventual_sign() == Ordering::Greater));
    }
    if let (Some(lx), Some(ly)) = (x.limit(), y.limit()) {
        match lx.partial_cmp(&ly) {
            Some(Ordering::Less) => return Verdict::Yes,
            Some(Ordering::Greater) => return Verdict::No,
            _ => {}
        }
    }
    evidence(&dominance_set(x, y), horizon)
}

/// Size class of a Q-number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QClass {
    /// `|x_n| < ε` on a density-one set for every `ε > 0` (zero included).
    Infinitesimal,
    /// `x_n > m` on a density-one set for every natural `m`.
    Infinite,
    /// `x_n < -m` on a density-one set for every natural `m`.
    NegativeInfinite,
    /// Bounded on a density-one set but not infinitesimal.
    Appreciable,
    /// Residue classes of different kinds, e.g. some tending to 0 and some
    /// to infinity: none of the above.
    Mixed,
    /// No structure to decide from; `last` is `x_horizon`.
    Unknown { horizon: u64, last: Rational },
}

impl fmt::Display for QClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QClass::Infinitesimal => write!(f, "infinitesimal"),
            QClass::Infinite => write!(f, "infinite"),
            QClass::NegativeInfinite => write!(f, "negative-infinite"),
            QClass::Appreciable => write!(f, "appreciable"),
            QClass::Mixed => write!(f, "mixed"),
            QClass::Unknown { horizon, last } => write!(f, "unknown({last}@horizon={horizon})"),
        }
    }
}

fn classify_limits(limits: &[Limit]) -> QClass {
    if limits.iter().all(|l| matches!(l, Limit::Finite(a) if a.is_zero())) {
        QClass::Infinitesimal
    } else if limits.iter().all(|l| *l == Limit::PosInfinity) {
        QClass::Infinite
    } else if limits.iter().all(|l| *l == Limit::NegInfinity) {
        QClass::NegativeInfinite
    } else if limits.iter().all(|l| matches!(l, Limit::Finite(_))) {
        QClass::Appreciable
    } else {
        QClass::Mixed
    }
}

pub fn q_classify(x: &QNumber, horizon: u64) -> QClass {
    if let Some(form) = &x.form {
        let limits: Vec<Limit> = form.iter().map(RatFunc::limit).collect();
        return classify_limits(&limits);
    }
    if let Some(l) = &x.declared {
        return classify_limits(std::slice::from_ref(l));
    }
    let horizon = horizon.max(1);
    QClass::Unknown { horizon, last: x.value(horizon) }
}

/// `x ≈ y`: `|x - y|` is zero or infinitesimal.
pub fn infinitely_close(x: &QNumber, y: &QNumber, horizon: u64) -> Verdict {
    let equal = q_equal(x, y, horizon);
    if equal.is_yes() {
        return Verdict::Yes;
    }
    match q_classify(&x.sub(y).abs(), horizon) {
        QClass::Infinitesimal => Verdict::Yes,
        QClass::Unknown { .. } => equal,
        _ => Verdict::No,
    }
}

/// `ϖ_horizon` of the agreement set, for reporting.
pub fn agreement_frequency(x: &QNumber, y: &QNumber, horizon: u64) -> Rational {
    part_frequency(&agreement_set(x, y), horizon.max(1)).expect("positive horizon")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    fn std_q(n: i64, d: i64) -> QNumber {
        QNumber::standard(ratio(n, d))
    }

    const H: u64 = 500;

    #[test]
    fn standard_arithmetic() {
        let five = std_q(2, 1).add(&std_q(3, 1));
        assert_eq!(five.standard_value(), Some(ratio(5, 1)));
        assert!(q_equal(&five, &std_q(5, 1), H).is_yes());
        let one = std_q(2, 1).mul(&std_q(2, 1).recip().unwrap());
        assert_eq!(one.standard_value(), Some(ratio(1, 1)));
        let x = QNumber::linear().add(&QNumber::reciprocal_n());
        assert!(q_equal(&x.add(&x.neg()), &std_q(0, 1), H).is_yes());
        assert_eq!(std_q(7, 3).value(12), ratio(7, 3));
    }

    #[test]
    fn equality_examples() {
        let base = QNumber::reciprocal_n();
        let tweaked = base.with_overrides(BTreeMap::from([(3, ratio(9, 1)), (10, ratio(0, 1))]));
        assert_eq!(tweaked.value(3), ratio(9, 1));
        assert!(q_equal(&base, &tweaked, H).is_yes());
        assert!(q_equal(&std_q(0, 1), &std_q(1, 1), H).is_no());
        let alternating =
            QNumber::periodic(vec![RatFunc::constant(ratio(1, 1)), RatFunc::constant(ratio(0, 1))])
                .unwrap();
        // agrees with 0 exactly on the even indices
        assert_eq!(agreement_frequency(&alternating, &std_q(0, 1), 100), ratio(1, 2));
        assert!(q_equal(&alternating, &std_q(0, 1), H).is_no());
    }

    #[test]
    fn order_examples() {
        assert!(q_less(&std_q(1, 1), &std_q(2, 1), H).is_yes());
        let x = QNumber::linear();
        assert!(q_less(&x, &x, H).is_no());
        assert!(q_less(&std_q(0, 1), &QNumber::reciprocal_n(), H).is_yes());
        assert!(q_less(&QNumber::reciprocal_n(), &std_q(1, 1000), H).is_yes());
        assert!(q_less(&std_q(1000, 1), &QNumber::linear(), H).is_yes());
    }

    #[test]
    fn classification_examples() {
        assert_eq!(q_classify(&QNumber::reciprocal_n(), 10_000), QClass::Infinitesimal);
        assert_eq!(q_classify(&QNumber::linear(), 10_000), QClass::Infinite);
        assert_eq!(q_classify(&QNumber::linear().neg(), 10), QClass::NegativeInfinite);
        assert_eq!(q_classify(&std_q(5, 1), 10), QClass::Appreciable);
        assert_eq!(q_classify(&std_q(0, 1), 10), QClass::Infinitesimal);
        let mixed = QNumber::periodic(vec![
            RatFunc::polynomial(Poly::identity()),
            RatFunc::constant(ratio(0, 1)),
        ])
        .unwrap();
        assert_eq!(q_classify(&mixed, 10), QClass::Mixed);
        let five = std_q(5, 1);
        let near = five.add(&QNumber::reciprocal_n());
        assert!(infinitely_close(&five, &near, H).is_yes());
        assert!(infinitely_close(&five, &std_q(6, 1), H).is_no());
    }

    #[test]
    fn opaque_numbers() {
        let harmonic_ish = QNumber::opaque(|n| ratio(1, 1) / Rational::from_integer((n * n).into()));
        assert!(matches!(q_classify(&harmonic_ish, 100), QClass::Unknown { horizon: 100, .. }));
        match q_equal(&harmonic_ish, &QNumber::reciprocal_n(), 100) {
            Verdict::Unknown(e) => assert_eq!(e.frequency, ratio(1, 100)),
            v => panic!("expected unknown, got {v}"),
        }
        let declared = QNumber::opaque_with_limit(
            |n| ratio(1, 1) / Rational::from_integer((n * n).into()),
            Limit::Finite(ratio(0, 1)),
        );
        assert_eq!(q_classify(&declared, 100), QClass::Infinitesimal);
        assert!(q_less(&declared, &std_q(1, 2), 100).is_yes());
        assert!(q_equal(&declared, &std_q(1, 2), 100).is_no());
        assert_eq!(q_classify(&declared.add(&std_q(3, 1)), 100), QClass::Appreciable);
    }

    #[test]
    fn reciprocal_precondition() {
        assert!(matches!(std_q(0, 1).recip(), Err(QError::ReciprocalUndefined(Verdict::No))));
        let alternating =
            QNumber::periodic(vec![RatFunc::constant(ratio(1, 1)), RatFunc::constant(ratio(0, 1))])
                .unwrap();
        assert!(alternating.recip().is_err());
        let opaque = QNumber::opaque(|n| Rational::from_integer(n.into()));
        assert!(matches!(opaque.recip(), Err(QError::ReciprocalUndefined(Verdict::Unknown(_)))));
        // a zero term at a single index maps to 0
        let x = std_q(2, 1).with_overrides(BTreeMap::from([(4, ratio(0, 1))]));
        let r = x.recip().unwrap();
        assert_eq!(r.value(4), ratio(0, 1));
        assert_eq!(r.value(5), ratio(1, 2));
    }

    #[test]
    fn lift_by_name() {
        let s = q_lift(LiftOp::Add, &[std_q(2, 1), std_q(3, 1)]).unwrap();
        assert_eq!(s.standard_value(), Some(ratio(5, 1)));
        assert!(matches!(
            q_lift(LiftOp::Neg, &[]),
            Err(QError::Arity { expected: 1, found: 0, .. })
        ));
    }

    #[test]
    fn pointwise_values_follow_operations() {
        let x = QNumber::linear();
        let y = QNumber::reciprocal_n();
        let p = x.mul(&y.add(&std_q(1, 1)));
        for n in 1..20u64 {
            let nr = Rational::from_integer(n.into());
            assert_eq!(p.value(n), &nr * (nr.recip() + ratio(1, 1)));
        }
    }
}
