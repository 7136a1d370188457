//! Subsets of the positive naturals, their part-set frequencies and
//! membership in the density-one filter.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;

use super::{Evidence, QError, Verdict, DEFAULT_HORIZON};
use crate::Rational;

/// Characteristic predicate of an index set without declared structure.
#[derive(Clone)]
pub struct Predicate(Arc<dyn Fn(u64) -> bool + Send + Sync>);

impl Predicate {
    pub fn new(f: impl Fn(u64) -> bool + Send + Sync + 'static) -> Self {
        Predicate(Arc::new(f))
    }

    pub fn test(&self, n: u64) -> bool {
        (self.0)(n)
    }
}

impl fmt::Debug for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Predicate(..)")
    }
}

#[derive(Clone, Debug)]
pub enum SetKind {
    /// Sorted, duplicate-free members.
    Finite(Vec<u64>),
    /// Sorted, duplicate-free non-members.
    Cofinite(Vec<u64>),
    /// Membership of `1..=preamble.len()` listed explicitly, then `period`
    /// repeating forever.
    EventuallyPeriodic { preamble: Vec<bool>, period: Vec<bool> },
    Opaque(Predicate),
}

/// A subset of `{1, 2, 3, …}`.
#[derive(Clone, Debug)]
pub struct IndexSet {
    kind: SetKind,
}

fn normalize(items: impl IntoIterator<Item = u64>) -> Result<Vec<u64>, QError> {
    let mut v: Vec<u64> = items.into_iter().collect();
    if v.contains(&0) {
        return Err(QError::ZeroIndex);
    }
    v.sort_unstable();
    v.dedup();
    Ok(v)
}

fn count_upto(sorted: &[u64], n: u64) -> usize {
    sorted.partition_point(|&x| x <= n)
}

impl IndexSet {
    pub fn finite(members: impl IntoIterator<Item = u64>) -> Result<Self, QError> {
        Ok(IndexSet { kind: SetKind::Finite(normalize(members)?) })
    }

    pub fn cofinite(excluded: impl IntoIterator<Item = u64>) -> Result<Self, QError> {
        Ok(IndexSet { kind: SetKind::Cofinite(normalize(excluded)?) })
    }

    pub fn periodic(preamble: Vec<bool>, period: Vec<bool>) -> Result<Self, QError> {
        if period.is_empty() {
            return Err(QError::EmptyPeriod);
        }
        Ok(IndexSet { kind: SetKind::EventuallyPeriodic { preamble, period } })
    }

    pub fn opaque(f: impl Fn(u64) -> bool + Send + Sync + 'static) -> Self {
        IndexSet { kind: SetKind::Opaque(Predicate::new(f)) }
    }

    /// All of `N`.
    pub fn all() -> Self {
        IndexSet { kind: SetKind::Cofinite(Vec::new()) }
    }

    pub fn empty() -> Self {
        IndexSet { kind: SetKind::Finite(Vec::new()) }
    }

    /// `{n : n ≥ start}`.
    pub fn from_index(start: u64) -> Self {
        IndexSet { kind: SetKind::Cofinite((1..start).collect()) }
    }

    /// Multiples of `k`; `k = 0` yields the empty set.
    pub fn multiples(k: u64) -> Self {
        if k == 0 {
            return IndexSet::empty();
        }
        let period = (1..=k).map(|i| i == k).collect();
        IndexSet { kind: SetKind::EventuallyPeriodic { preamble: Vec::new(), period } }
    }

    pub fn kind(&self) -> &SetKind {
        &self.kind
    }

    pub fn is_decidable(&self) -> bool {
        !matches!(self.kind, SetKind::Opaque(_))
    }

    pub fn contains(&self, n: u64) -> bool {
        match &self.kind {
            SetKind::Finite(v) => v.binary_search(&n).is_ok(),
            SetKind::Cofinite(v) => n >= 1 && v.binary_search(&n).is_err(),
            SetKind::EventuallyPeriodic { preamble, period } => {
                if n == 0 {
                    return false;
                }
                let i = (n - 1) as usize;
                match preamble.get(i) {
                    Some(&b) => b,
                    None => period[(i - preamble.len()) % period.len()],
                }
            }
            SetKind::Opaque(p) => n >= 1 && p.test(n),
        }
    }

    /// `|A ∩ {1..n}|`.
    pub fn count_upto(&self, n: u64) -> u64 {
        match &self.kind {
            SetKind::Finite(v) => count_upto(v, n) as u64,
            SetKind::Cofinite(v) => n - count_upto(v, n) as u64,
            SetKind::EventuallyPeriodic { preamble, period } => {
                let head = (n as usize).min(preamble.len());
                let mut count = preamble[..head].iter().filter(|&&b| b).count() as u64;
                let tail = n - head as u64;
                let len = period.len() as u64;
                let (cycles, rest) = tail.div_rem(&len);
                let per_cycle = period.iter().filter(|&&b| b).count() as u64;
                count += cycles * per_cycle;
                count += period[..rest as usize].iter().filter(|&&b| b).count() as u64;
                count
            }
            SetKind::Opaque(p) => (1..=n).filter(|&i| p.test(i)).count() as u64,
        }
    }

    /// Explicit eventually periodic form of a decidable set.
    fn as_periodic(&self) -> Option<(Vec<bool>, Vec<bool>)> {
        match &self.kind {
            SetKind::Finite(v) => {
                let top = v.last().copied().unwrap_or(0) as usize;
                let pre = (1..=top as u64).map(|i| v.binary_search(&i).is_ok()).collect();
                Some((pre, vec![false]))
            }
            SetKind::Cofinite(v) => {
                let top = v.last().copied().unwrap_or(0) as usize;
                let pre = (1..=top as u64).map(|i| v.binary_search(&i).is_err()).collect();
                Some((pre, vec![true]))
            }
            SetKind::EventuallyPeriodic { preamble, period } => {
                Some((preamble.clone(), period.clone()))
            }
            SetKind::Opaque(_) => None,
        }
    }

    fn combine(&self, other: &IndexSet, op: impl Fn(bool, bool) -> bool + Send + Sync + 'static) -> IndexSet {
        match (self.as_periodic(), other.as_periodic()) {
            (Some((pa, qa)), Some((pb, qb))) => {
                let pre = pa.len().max(pb.len());
                let per = qa.len().lcm(&qb.len());
                let at = |n: u64| op(self.contains(n), other.contains(n));
                let preamble = (1..=pre as u64).map(at).collect();
                let period = (pre as u64 + 1..=(pre + per) as u64).map(at).collect();
                simplify(preamble, period)
            }
            _ => {
                let (a, b) = (self.clone(), other.clone());
                IndexSet::opaque(move |n| op(a.contains(n), b.contains(n)))
            }
        }
    }

    pub fn complement(&self) -> IndexSet {
        match &self.kind {
            SetKind::Finite(v) => IndexSet { kind: SetKind::Cofinite(v.clone()) },
            SetKind::Cofinite(v) => IndexSet { kind: SetKind::Finite(v.clone()) },
            SetKind::EventuallyPeriodic { preamble, period } => IndexSet {
                kind: SetKind::EventuallyPeriodic {
                    preamble: preamble.iter().map(|b| !b).collect(),
                    period: period.iter().map(|b| !b).collect(),
                },
            },
            SetKind::Opaque(p) => {
                let p = p.clone();
                IndexSet::opaque(move |n| !p.test(n))
            }
        }
    }

    pub fn intersect(&self, other: &IndexSet) -> IndexSet {
        self.combine(other, |a, b| a && b)
    }

    pub fn union(&self, other: &IndexSet) -> IndexSet {
        self.combine(other, |a, b| a || b)
    }
}

/// Shortest equivalent representation of an eventually periodic set.
fn simplify(mut preamble: Vec<bool>, mut period: Vec<bool>) -> IndexSet {
    // shrink the period to its primitive root
    let len = period.len();
    if let Some(d) = (1..=len).find(|d| len % d == 0 && (0..len).all(|i| period[i] == period[i % d])) {
        period.truncate(d);
    }
    // fold trailing preamble entries into the period
    while let Some(&last) = preamble.last() {
        if last != *period.last().expect("nonempty") {
            break;
        }
        preamble.pop();
        period.rotate_right(1);
    }
    if period.iter().all(|&b| !b) {
        let members = preamble.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i as u64 + 1);
        return IndexSet { kind: SetKind::Finite(members.collect()) };
    }
    if period.iter().all(|&b| b) {
        let holes = preamble.iter().enumerate().filter(|(_, &b)| !b).map(|(i, _)| i as u64 + 1);
        return IndexSet { kind: SetKind::Cofinite(holes.collect()) };
    }
    IndexSet { kind: SetKind::EventuallyPeriodic { preamble, period } }
}

/// `ϖ_n(A) = |A ∩ {1..n}| / n`, for `n ≥ 1`.
pub fn part_frequency(a: &IndexSet, n: u64) -> Result<Rational, QError> {
    if n == 0 {
        return Err(QError::ZeroIndex);
    }
    Ok(Rational::new(a.count_upto(n).into(), n.into()))
}

/// Whether `ϖ_n(A) → 1`, at the default evidence horizon.
pub fn filter_membership(a: &IndexSet) -> Verdict {
    filter_membership_with(a, DEFAULT_HORIZON)
}

/// Exact for finite, cofinite and eventually periodic sets; prefix evidence
/// at `horizon` otherwise.
pub fn filter_membership_with(a: &IndexSet, horizon: u64) -> Verdict {
    match &a.kind {
        SetKind::Finite(_) => Verdict::No,
        SetKind::Cofinite(_) => Verdict::Yes,
        SetKind::EventuallyPeriodic { period, .. } => Verdict::from(period.iter().all(|&b| b)),
        SetKind::Opaque(_) => {
            let horizon = horizon.max(1);
            Verdict::Unknown(Evidence {
                horizon,
                frequency: Rational::new(a.count_upto(horizon).into(), horizon.into()),
            })
        }
    }
}
