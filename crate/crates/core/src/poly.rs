//! Dense univariate polynomials in `q` over arbitrary-precision rationals.
//!
//! `coeffs[i]` holds the coefficient of `q^i`. The representation is kept
//! canonical: no trailing zero coefficients, and the zero polynomial is the
//! empty vector. Equality of canonical forms is therefore polynomial equality.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `"num/den"`, or `"num"` when the denominator is 1.
pub fn rational_to_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// Binomial coefficient `C(n, k)`; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> Rational {
    Rational::from_integer(binomial_int(n, k))
}

pub(crate) fn binomial_int(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Poly {
            coeffs: vec![Rational::zero(), Rational::one()],
        }
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    pub fn from_int(c: i64) -> Self {
        Poly::constant(rat(c))
    }

    pub fn monomial(c: Rational, power: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); power + 1];
        coeffs[power] = c;
        Poly { coeffs }
    }

    /// Builds from ascending coefficients, trimming trailing zeros.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn coeff(&self, power: usize) -> Rational {
        self.coeffs.get(power).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` is the degree of the zero polynomial (negative infinity).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// `self >=_q 0`: every coefficient is nonnegative.
    pub fn is_q_nonneg(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// `self >=_q other`.
    pub fn ge_q(&self, other: &Poly) -> bool {
        (self - other).is_q_nonneg()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, mut exp: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    /// `self(inner)`.
    pub fn compose(&self, inner: &Poly) -> Poly {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| &(&acc * inner) + &Poly::constant(c.clone()))
    }

    /// Euclidean division over the rationals. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let d_deg = divisor.degree().expect("division by the zero polynomial");
        let d_lead = &divisor.coeffs[d_deg];
        let mut rem = self.coeffs.clone();
        if rem.len() <= d_deg {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - d_deg];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + d_deg] / d_lead;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quot[i] = c;
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Quotient when `divisor` divides `self` exactly.
    pub fn exact_div(&self, divisor: &Poly) -> Option<Poly> {
        if divisor.is_zero() {
            return None;
        }
        let (quot, rem) = self.div_rem(divisor);
        rem.is_zero().then_some(quot)
    }

    /// Clears denominators: returns the coefficients as integers when all are
    /// integral.
    pub fn to_int_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// Convenience for tests and small values.
    pub fn to_i64_coeffs(&self) -> Option<Vec<i64>> {
        self.to_int_coeffs()?.iter().map(ToPrimitive::to_i64).collect()
    }

    /// Coefficient strings in the JSON form, ascending powers.
    pub fn to_json_coeffs(&self) -> Vec<String> {
        self.coeffs.iter().map(rational_to_string).collect()
    }

    /// Least common multiple of coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }
}

/// `(1-x)^{n+1} p((1+x)/(1-x))`, expanded as `sum_j p_j (1+x)^j (1-x)^{n+1-j}`.
pub fn compose_linear_fraction(p: &Poly, n_plus_1: usize) -> Result<Poly> {
    if let Some(d) = p.degree() {
        if d > n_plus_1 {
            return Err(Error::DegreeTooHigh {
                degree: d,
                bound: n_plus_1,
            });
        }
    }
    let one_plus = Poly::from_ints(&[1, 1]);
    let one_minus = Poly::from_ints(&[1, -1]);
    let mut acc = Poly::zero();
    for (j, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = &one_plus.pow(j as u32) * &one_minus.pow((n_plus_1 - j) as u32);
        acc += term.scale(c);
    }
    Ok(acc)
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (a, b) in coeffs.iter_mut().zip(&short.coeffs) {
            *a += b;
        }
        Poly::new(coeffs)
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() < rhs.coeffs.len() {
            coeffs.resize(rhs.coeffs.len(), Rational::zero());
        }
        for (a, b) in coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        Poly::new(coeffs)
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let len = self.coeffs.len() + rhs.coeffs.len() - 1;
        if self.is_integral() && rhs.is_integral() {
            // skip per-term gcd normalisation
            let mut acc = vec![BigInt::zero(); len];
            for (i, a) in self.coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in rhs.coeffs.iter().enumerate() {
                    acc[i + j] += a.numer() * b.numer();
                }
            }
            return Poly::new(acc.into_iter().map(Rational::from_integer).collect());
        }
        let mut coeffs = vec![Rational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::new(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl AddAssign<Poly> for Poly {
    fn add_assign(&mut self, rhs: Poly) {
        *self = &*self + &rhs;
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        *self = &*self - rhs;
    }
}

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::zero(), |acc, p| acc + p)
    }
}

impl From<i64> for Poly {
    fn from(c: i64) -> Self {
        Poly::from_int(c)
    }
}

impl From<Rational> for Poly {
    fn from(c: Rational) -> Self {
        Poly::constant(c)
    }
}

/// Canonical text form, ascending powers: `1 + 4*q + q^2`, `3/2 - q`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mono = match i {
                0 => None,
                1 => Some("q".to_string()),
                _ => Some(format!("q^{i}")),
            };
            match mono {
                None => f.write_str(&rational_to_string(&abs))?,
                Some(m) if abs.is_one() => f.write_str(&m)?,
                Some(m) => write!(f, "{}*{}", rational_to_string(&abs), m)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// Parses the canonical text form (any expression in `q` is accepted).
impl FromStr for Poly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let expr = crate::expr::parse_expr(s)?;
        Ok(expr.to_poly()?)
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&rational_to_string(c))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Coeff {
            Text(String),
            Int(i64),
        }
        let raw = Vec::<Coeff>::deserialize(deserializer)?;
        let coeffs = raw
            .into_iter()
            .map(|c| match c {
                Coeff::Text(s) => parse_rational(&s)
                    .ok_or_else(|| de::Error::custom(format!("bad rational coefficient {s:?}"))),
                Coeff::Int(i) => Ok(rat(i)),
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Poly::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn add_examples() {
        assert_eq!(p(&[1, 1]) + p(&[0, 1, 1]), p(&[1, 2, 1]));
        assert_eq!(p(&[3, 0, 2]) + Poly::zero(), p(&[3, 0, 2]));
        let z = p(&[1, 1]) + p(&[-1, -1]);
        assert!(z.is_zero());
        assert!(z.coeffs().is_empty());
        assert_eq!(z.degree(), None);
    }

    #[test]
    fn mul_examples() {
        assert_eq!(p(&[1, 1]) * p(&[1, 1]), p(&[1, 2, 1]));
        let prod = p(&[1, 1]) * p(&[0, 1, 1]);
        assert_eq!(prod, p(&[0, 1, 2, 1]));
        assert_eq!(prod.eval(&rat(2)), rat(18));
        assert_eq!(p(&[4, 0, 7]) * Poly::one(), p(&[4, 0, 7]));
    }

    #[test]
    fn nonneg_examples() {
        assert!(p(&[0, 2, 2]).is_q_nonneg());
        assert!(!p(&[-1, 0, 1]).is_q_nonneg());
        assert!(Poly::zero().is_q_nonneg());
    }

    #[test]
    fn eval_examples() {
        assert_eq!(p(&[1, 2]).eval(&rat(0)), rat(1));
        assert_eq!(p(&[0, 1, 3, 1]).eval(&rat(1)), rat(5));
        assert_eq!(p(&[1, 4, 1]).eval(&rat(1)), rat(6));
    }

    #[test]
    fn derivative_binomial_compose() {
        assert_eq!(p(&[0, 0, 0, 1]).derivative(), p(&[0, 0, 3]));
        assert_eq!(binomial(4, 2), rat(6));
        assert_eq!(binomial(3, 5), rat(0));
        let got = compose_linear_fraction(&p(&[1, 0, 1]), 2).unwrap();
        assert_eq!(got, p(&[2, 0, 2]));
        assert!(matches!(
            compose_linear_fraction(&p(&[0, 0, 0, 1]), 2),
            Err(Error::DegreeTooHigh { degree: 3, bound: 2 })
        ));
    }

    #[test]
    fn division() {
        let a = p(&[1, 0, 0, 1]);
        let (quot, rem) = a.div_rem(&p(&[1, 1]));
        assert_eq!(quot, p(&[1, -1, 1]));
        assert!(rem.is_zero());
        assert_eq!(p(&[1, 0, 1]).exact_div(&p(&[1, 1])), None);
    }

    #[test]
    fn text_form() {
        assert_eq!(p(&[1, 4, 1]).to_string(), "1 + 4*q + q^2");
        assert_eq!(p(&[-324, 1296]).to_string(), "-324 + 1296*q");
        assert_eq!(p(&[0, -1, 0, 2]).to_string(), "-q + 2*q^3");
        let half = Poly::new(vec![rat_frac(3, 2), rat(1)]);
        assert_eq!(half.to_string(), "3/2 + q");
        for s in ["1 + 4*q + q^2", "3/2 + q", "-324 + 1296*q - q^5", "0"] {
            let parsed: Poly = s.parse().unwrap();
            assert_eq!(parsed.to_string(), s);
        }
    }

    #[test]
    fn json_form() {
        let half = Poly::new(vec![rat_frac(3, 2), rat(0), rat(-1)]);
        let text = serde_json::to_string(&half).unwrap();
        assert_eq!(text, r#"["3/2","0","-1"]"#);
        let back: Poly = serde_json::from_str(&text).unwrap();
        assert_eq!(back, half);
        let ints: Poly = serde_json::from_str("[1, 2, 0]").unwrap();
        assert_eq!(ints, p(&[1, 2]));
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(-5i64..=5, 0..5).prop_map(|c| Poly::from_ints(&c))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn degree_adds(a in small_poly(), b in small_poly()) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            prop_assert_eq!((&a * &b).degree(), Some(a.degree().unwrap() + b.degree().unwrap()));
        }

        #[test]
        fn eval_is_morphism(a in small_poly(), b in small_poly(), x in -6i64..=6) {
            let x = rat(x);
            prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
            prop_assert_eq!((&a + &b).eval(&x), a.eval(&x) + b.eval(&x));
        }

        #[test]
        fn nonneg_closed(a in prop::collection::vec(0i64..=5, 0..5), b in prop::collection::vec(0i64..=5, 0..5)) {
            let (a, b) = (Poly::from_ints(&a), Poly::from_ints(&b));
            prop_assert!((&a + &b).is_q_nonneg());
            prop_assert!((&a * &b).is_q_nonneg());
        }

        #[test]
        fn text_round_trip(a in small_poly()) {
            let back: Poly = a.to_string().parse().unwrap();
            prop_assert_eq!(back, a);
        }
    }
}
