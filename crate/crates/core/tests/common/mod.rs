//! Independent oracles shared by the integration tests. Nothing here goes
//! through the triangle recurrence or the contraction.

#![allow(dead_code)]

use qlogcvx::poly::Poly;
use qlogcvx::series::Series;
use rand::Rng;

/// Bottom-up evaluation of the truncated S-fraction
/// `1/(1 - t_1 x/(1 - t_2 x/(1 - ...)))` with `t[0] = t_1`. Depth
/// `t.len() >= order` fixes the first `order` coefficients.
pub fn sfrac_series(t: &[Poly], order: usize) -> Vec<Poly> {
    let one = Series::one(order);
    let mut f = one.clone();
    for ti in t.iter().rev() {
        let tx = Series::monomial(ti.clone(), 1, order);
        let den = one.s_sub(&tx.s_mul(&f).unwrap()).unwrap();
        f = one.s_div(&den).unwrap();
    }
    f.into_coeffs()
}

/// Truncated J-fraction `1/(1 - g_0 x - h_1 x^2/(1 - g_1 x - ...))` with
/// `g[i] = g_i` and `h[i] = h_{i+1}`.
pub fn jfrac_series(g: &[Poly], h: &[Poly], order: usize) -> Vec<Poly> {
    let one = Series::one(order);
    let mut f = one.clone();
    for i in (0..g.len()).rev() {
        let gx = Series::monomial(g[i].clone(), 1, order);
        let hx2 = Series::monomial(h[i].clone(), 2, order);
        let den = one.s_sub(&gx).unwrap().s_sub(&hx2.s_mul(&f).unwrap()).unwrap();
        f = one.s_div(&den).unwrap();
    }
    f.into_coeffs()
}

/// Laplace expansion along the first row.
pub fn cofactor_det(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    let mut acc = Poly::zero();
    for j in 0..n {
        let sub: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, e)| e.clone()).collect())
            .collect();
        let term = &m[0][j] * &cofactor_det(&sub);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= &term;
        }
    }
    acc
}

pub fn hankel_rows(seq: &[Poly], size: usize, offset: usize) -> Vec<Vec<Poly>> {
    (0..size).map(|i| (0..size).map(|j| seq[offset + i + j].clone()).collect()).collect()
}

/// Integer polynomial with degree below `max_len` and coefficients in `lo..=hi`.
pub fn random_int_poly<R: Rng>(rng: &mut R, max_len: usize, lo: i64, hi: i64) -> Poly {
    let len = rng.random_range(0..=max_len);
    let c: Vec<i64> = (0..len).map(|_| rng.random_range(lo..=hi)).collect();
    Poly::from_ints(&c)
}

pub fn p(text: &str) -> Poly {
    text.parse().unwrap()
}

pub fn ints(v: &[i64]) -> Vec<Poly> {
    v.iter().map(|&c| Poly::from_int(c)).collect()
}
