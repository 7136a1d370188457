//! Exact univariate polynomials and reduced rational functions over the
//! rationals, used as closed forms for sequence terms `n ↦ f(n)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::Limit;
use crate::Rational;

/// Coefficients low to high, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Rational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// The polynomial `n`.
    pub fn identity() -> Self {
        Poly::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, k: &Rational) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| c * k).collect())
    }

    fn monic(&self) -> Poly {
        match self.leading() {
            Some(lc) => self.scale(&lc.recip()),
            None => Poly::zero(),
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lc = d.leading().expect("nonzero").clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let factor = &rem[top] / &lc;
            let shift = top - dd;
            if !factor.is_zero() {
                for (i, c) in d.coeffs.iter().enumerate() {
                    rem[shift + i] -= &factor * c;
                }
            }
            quot[shift] = factor;
            rem.pop();
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Monic greatest common divisor; zero only when both inputs are zero.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Rational::zero();
        Poly::from_coeffs(
            (0..len)
                .map(|i| {
                    self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero)
                })
                .collect(),
        )
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => {}
                (_, false) => write!(f, "{mag}·")?,
            }
            match i {
                0 => {}
                1 => write!(f, "n")?,
                _ => write!(f, "n^{i}")?,
            }
        }
        Ok(())
    }
}

/// `num(n) / den(n)` in lowest terms with a monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// `None` when `den` is the zero polynomial.
    pub fn new(num: Poly, den: Poly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(RatFunc::constant(Rational::zero()));
        }
        let g = Poly::gcd(&num, &den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lc = den.leading().expect("nonzero").recip();
        Some(RatFunc { num: num.scale(&lc), den: den.scale(&lc) })
    }

    pub fn constant(c: Rational) -> Self {
        RatFunc { num: Poly::constant(c), den: Poly::constant(Rational::one()) }
    }

    pub fn polynomial(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::constant(Rational::one()) }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match (self.num.degree(), self.den.degree()) {
            (None, _) => Some(Rational::zero()),
            (Some(0), Some(0)) => Some(self.num.coeffs[0].clone()),
            _ => None,
        }
    }

    /// Value at `n`, or `None` at a pole.
    pub fn eval(&self, n: u64) -> Option<Rational> {
        let x = Rational::from_integer(n.into());
        let d = self.den.eval(&x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(&x) / d)
    }

    pub fn recip(&self) -> Option<RatFunc> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    /// Sign of `f(n)` for all sufficiently large `n`.
    pub fn eventual_sign(&self) -> Ordering {
        match self.num.leading() {
            None => Ordering::Equal,
            Some(lc) if lc.is_positive() => Ordering::Greater,
            Some(_) => Ordering::Less,
        }
    }

    /// `-f` or `f`, whichever is eventually nonnegative.
    pub fn eventual_abs(&self) -> RatFunc {
        if self.eventual_sign() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    pub fn limit(&self) -> Limit {
        let dn = self.num.degree();
        let dd = self.den.degree().expect("nonzero");
        match dn {
            None => Limit::Finite(Rational::zero()),
            Some(d) if d < dd => Limit::Finite(Rational::zero()),
            Some(d) if d == dd => Limit::Finite(self.num.leading().expect("nonzero").clone()),
            Some(_) if self.eventual_sign() == Ordering::Greater => Limit::PosInfinity,
            Some(_) => Limit::NegInfinity,
        }
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFunc::new(num, &self.den * &rhs.den).expect("product of nonzero denominators")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("product of nonzero denominators")
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    fn poly(cs: &[i64]) -> Poly {
        Poly::from_coeffs(cs.iter().map(|&c| ratio(c, 1)).collect())
    }

    #[test]
    fn arithmetic() {
        let a = poly(&[1, 1]); // n + 1
        let b = poly(&[-1, 1]); // n - 1
        assert_eq!(&a * &b, poly(&[-1, 0, 1]));
        assert_eq!(&a - &a, Poly::zero());
        assert_eq!((&a + &b).degree(), Some(1));
        assert_eq!(a.eval(&ratio(3, 1)), ratio(4, 1));
        assert_eq!(poly(&[0, 0, 0]).degree(), None);
    }

    #[test]
    fn division_and_gcd() {
        let p = poly(&[-1, 0, 1]);
        let (q, r) = p.div_rem(&poly(&[-1, 1]));
        assert_eq!(q, poly(&[1, 1]));
        assert!(r.is_zero());
        let (q, r) = poly(&[1, 0, 1]).div_rem(&poly(&[0, 2]));
        assert_eq!(q, Poly::from_coeffs(vec![ratio(0, 1), ratio(1, 2)]));
        assert_eq!(r, poly(&[1]));
        assert_eq!(Poly::gcd(&poly(&[-2, 0, 2]), &poly(&[3, 3])), poly(&[1, 1]));
        assert_eq!(Poly::gcd(&poly(&[1, 1]), &poly(&[2])), poly(&[1]));
    }

    #[test]
    fn rational_functions_reduce() {
        let f = RatFunc::new(poly(&[-1, 0, 1]), poly(&[2, 2])).unwrap();
        assert_eq!(f, RatFunc::new(poly(&[-1, 1]), poly(&[2])).unwrap());
        assert_eq!(f.denominator(), &poly(&[1]));
        let n = RatFunc::polynomial(Poly::identity());
        let inv = n.recip().unwrap();
        assert_eq!((&n * &inv).as_constant(), Some(ratio(1, 1)));
        assert_eq!((&inv - &inv).as_constant(), Some(ratio(0, 1)));
        assert!(RatFunc::new(poly(&[1]), Poly::zero()).is_none());
        assert!(RatFunc::constant(ratio(0, 1)).recip().is_none());
    }

    #[test]
    fn evaluation_and_poles() {
        let f = RatFunc::new(poly(&[1]), poly(&[-3, 1])).unwrap();
        assert_eq!(f.eval(3), None);
        assert_eq!(f.eval(5), Some(ratio(1, 2)));
    }

    #[test]
    fn eventual_behavior() {
        let n = RatFunc::polynomial(Poly::identity());
        assert_eq!(n.limit(), Limit::PosInfinity);
        assert_eq!((-&n).limit(), Limit::NegInfinity);
        assert_eq!(n.recip().unwrap().limit(), Limit::Finite(ratio(0, 1)));
        let f = RatFunc::new(poly(&[1, 3]), poly(&[5, 2])).unwrap();
        assert_eq!(f.limit(), Limit::Finite(ratio(3, 2)));
        let g = RatFunc::new(poly(&[100, -1]), poly(&[1])).unwrap();
        assert_eq!(g.eventual_sign(), Ordering::Less);
        assert_eq!(g.eventual_abs().eventual_sign(), Ordering::Greater);
    }

    #[test]
    fn display() {
        assert_eq!(poly(&[1, 0, -2]).to_string(), "-2·n^2 + 1");
        assert_eq!(poly(&[0, 1]).to_string(), "n");
        let f = RatFunc::new(poly(&[1]), poly(&[0, 1])).unwrap();
        assert_eq!(f.to_string(), "(1) / (n)");
    }
}
