//! Jacobi and Stieltjes continued-fraction expansions.
//!
//! The J-fraction `1/(1 - g_0 x - h_1 x^2/(1 - g_1 x - h_2 x^2/...))` expands
//! to the first column of the tridiagonal triangle, so expansion goes through
//! [`triangle::generate`](crate::triangle::generate). S-fractions are first
//! contracted to J-fractions.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::expr::Expr;
use crate::poly::Poly;
use crate::seqspec::{CoeffSeqSpec, JacobiSpec, StieltjesSpec};
use crate::triangle::{generate, generate_jacobi};

/// `T_0..=T_{n_max}` of a Jacobi spec.
pub fn expand_jacobi(spec: &CoeffSeqSpec, n_max: usize) -> Result<Vec<Poly>> {
    Ok(generate(spec, n_max)?.first_column())
}

/// Contraction of an S-fraction:
/// `g_0 = t_1`, `g_i = t_{2i} + t_{2i+1}`, `h_i = t_{2i-1} t_{2i}`.
pub fn contract(spec: &CoeffSeqSpec) -> Result<CoeffSeqSpec> {
    Ok(contract_stieltjes(spec.as_stieltjes()?).into())
}

pub fn contract_stieltjes(s: &StieltjesSpec) -> JacobiSpec {
    let next_odd = s.t_odd.shift_k(1);
    let g = Expr::Add(Box::new(s.t_even.clone()), Box::new(next_odd));
    let h = Expr::Mul(Box::new(s.t_odd.clone()), Box::new(s.t_even.clone()));

    let mut g_exceptions = BTreeMap::new();
    let mut h_exceptions = BTreeMap::new();
    g_exceptions.insert(0, s.t(1));
    for &n in s.t_exceptions.keys() {
        let gi = n / 2;
        if gi > 0 {
            g_exceptions.insert(gi, &s.t(2 * gi) + &s.t(2 * gi + 1));
        }
        let hi = n.div_ceil(2);
        h_exceptions.insert(hi, &s.t(2 * hi - 1) * &s.t(2 * hi));
    }
    JacobiSpec {
        g,
        h,
        g_exceptions,
        h_exceptions,
    }
}

/// `S_0..=S_{n_max}` of a Stieltjes spec, via contraction.
pub fn expand_stieltjes(spec: &CoeffSeqSpec, n_max: usize) -> Result<Vec<Poly>> {
    let s = spec.as_stieltjes()?;
    Ok(generate_jacobi(&contract_stieltjes(s), n_max).first_column())
}

/// Expands either kind of spec.
pub fn expand(spec: &CoeffSeqSpec, n_max: usize) -> Result<Vec<Poly>> {
    match spec {
        CoeffSeqSpec::Jacobi(_) => expand_jacobi(spec, n_max),
        CoeffSeqSpec::Stieltjes(_) => expand_stieltjes(spec, n_max),
    }
}
