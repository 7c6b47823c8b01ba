//! Truncated power series in `x` with polynomial-in-`q` coefficients.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{rat, Poly, Rational};

/// `sum_{n < order} coeffs[n] x^n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Series {
    order: usize,
    coeffs: Vec<Poly>,
}

impl Series {
    /// Pads or truncates `coeffs` to `order` terms.
    pub fn new(mut coeffs: Vec<Poly>, order: usize) -> Self {
        coeffs.resize(order, Poly::zero());
        Series { order, coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Series::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Series::constant(Poly::one(), order)
    }

    pub fn constant(c: Poly, order: usize) -> Self {
        Series::new(vec![c], order)
    }

    /// `c x^power`.
    pub fn monomial(c: Poly, power: usize, order: usize) -> Self {
        let mut coeffs = vec![Poly::zero(); order];
        if power < order {
            coeffs[power] = c;
        }
        Series { order, coeffs }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Poly> {
        self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &Poly {
        &self.coeffs[n]
    }

    fn check_orders(&self, other: &Series) -> Result<()> {
        if self.order != other.order {
            return Err(Error::OrderMismatch(self.order, other.order));
        }
        Ok(())
    }

    pub fn s_add(&self, other: &Series) -> Result<Series> {
        self.check_orders(other)?;
        Ok(Series {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn s_sub(&self, other: &Series) -> Result<Series> {
        self.check_orders(other)?;
        Ok(Series {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    /// Truncated Cauchy product.
    pub fn s_mul(&self, other: &Series) -> Result<Series> {
        self.check_orders(other)?;
        let coeffs = (0..self.order)
            .map(|n| {
                (0..=n)
                    .filter(|&i| !self.coeffs[i].is_zero() && !other.coeffs[n - i].is_zero())
                    .map(|i| &self.coeffs[i] * &other.coeffs[n - i])
                    .sum()
            })
            .collect();
        Ok(Series {
            order: self.order,
            coeffs,
        })
    }

    /// `c` with `c * other = self` to the truncation order. The constant term
    /// of `other` must be a nonzero constant.
    pub fn s_div(&self, other: &Series) -> Result<Series> {
        self.check_orders(other)?;
        let lead = other
            .coeffs
            .first()
            .and_then(Poly::as_constant)
            .filter(|c| !c.is_zero())
            .ok_or_else(|| {
                Error::NonUnitConstant(other.coeffs.first().map_or("0".into(), Poly::to_string))
            })?;
        let inv = Rational::one() / lead;
        self.div_by(other, |num| Some(num.scale(&inv)))
    }

    /// Long division where each step divides by `other[0]` exactly, which
    /// may be a nonconstant polynomial.
    fn div_exact_poly(&self, other: &Series) -> Result<Series> {
        self.check_orders(other)?;
        let lead = other.coeffs.first().cloned().unwrap_or_default();
        if lead.is_zero() {
            return Err(Error::NonUnitConstant("0".into()));
        }
        self.div_by(other, |num| num.exact_div(&lead)).map_err(|_| {
            Error::NonUnitConstant(format!("{lead} (quotient is not polynomial)"))
        })
    }

    fn div_by<F>(&self, other: &Series, divide_lead: F) -> Result<Series>
    where
        F: Fn(&Poly) -> Option<Poly>,
    {
        let mut out: Vec<Poly> = Vec::with_capacity(self.order);
        for n in 0..self.order {
            let mut num = self.coeffs[n].clone();
            for i in 1..=n {
                if !other.coeffs[i].is_zero() {
                    num -= &(&other.coeffs[i] * &out[n - i]);
                }
            }
            let c = divide_lead(&num).ok_or(Error::NonUnitConstant(String::new()))?;
            out.push(c);
        }
        Ok(Series {
            order: self.order,
            coeffs: out,
        })
    }

    /// Square root with constant term 1, by the direct recursion
    /// `c_n = (a_n - sum_{0<i<n} c_i c_{n-i}) / 2`.
    pub fn s_sqrt(&self) -> Result<Series> {
        if self.order > 0 && !self.coeffs[0].is_one() {
            return Err(Error::SqrtConstantTerm(self.coeffs[0].to_string()));
        }
        let half = Rational::new(1.into(), 2.into());
        let mut out: Vec<Poly> = Vec::with_capacity(self.order);
        for n in 0..self.order {
            if n == 0 {
                out.push(Poly::one());
                continue;
            }
            let mut num = self.coeffs[n].clone();
            for i in 1..n {
                num -= &(&out[i] * &out[n - i]);
            }
            out.push(num.scale(&half));
        }
        Ok(Series {
            order: self.order,
            coeffs: out,
        })
    }

    /// Drops the `x^0` term and shifts down by one, keeping the order.
    fn shift_down(&self) -> Series {
        let mut coeffs: Vec<Poly> = self.coeffs.iter().skip(1).cloned().collect();
        coeffs.push(Poly::zero());
        Series {
            order: self.order,
            coeffs,
        }
    }

    pub fn truncate(&self, order: usize) -> Series {
        Series::new(self.coeffs.iter().take(order).cloned().collect(), order)
    }
}

/// Expands
/// `(1 - (2a - s)x - sqrt(1 - 2sx + (s^2 - 4t)x^2)) / (2(s - a)x + 2(a^2 - as + t)x^2)`
/// to `order` terms.
///
/// Numerator and denominator both vanish at `x = 0`; common powers of `x`
/// are cancelled before dividing. When the remaining constant term of the
/// denominator is a nonconstant polynomial, each division step must be exact.
pub fn gf_closed_form(a: &Poly, s: &Poly, t: &Poly, order: usize) -> Result<Series> {
    let work = order + 2;
    let two = rat(2);
    let radicand = Series::new(
        vec![Poly::one(), s.scale(&rat(-2)), &(s * s) - &t.scale(&rat(4))],
        work,
    );
    let root = radicand.s_sqrt()?;
    let lin = Series::new(vec![Poly::one(), s - &a.scale(&two)], work);
    let mut num = lin.s_sub(&root)?;
    let mut den = Series::new(
        vec![
            Poly::zero(),
            (s - a).scale(&two),
            (&(&(a * a) - &(a * s)) + t).scale(&two),
        ],
        work,
    );
    for _ in 0..2 {
        if !den.coeffs[0].is_zero() {
            break;
        }
        if !num.coeffs[0].is_zero() {
            return Err(Error::ZeroDenominator);
        }
        num = num.shift_down();
        den = den.shift_down();
    }
    if den.coeffs[0].is_zero() {
        return Err(Error::ZeroDenominator);
    }
    let quotient = match den.coeffs[0].as_constant() {
        Some(_) => num.s_div(&den)?,
        None => num.div_exact_poly(&den)?,
    };
    Ok(quotient.truncate(order))
}
