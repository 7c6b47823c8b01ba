//! Seeded random specs with `>=_q 0` coefficient sequences.
//!
//! Each generic formula has the shape `a(q) + b(q)*k` where `a` and `b` have
//! degree at most 2 and integer coefficients in `[0, 4]`. Exceptional values
//! at the first two indices are drawn with probability 1/2 each.

use rand::Rng;

use super::{JacobiSpec, StieltjesSpec};
use crate::expr::{Expr, KPoly};
use crate::poly::Poly;

pub fn random_poly<R: Rng + ?Sized>(rng: &mut R) -> Poly {
    let deg = rng.random_range(0..=2usize);
    let coeffs: Vec<i64> = (0..=deg).map(|_| rng.random_range(0..=4)).collect();
    Poly::from_ints(&coeffs)
}

fn random_formula<R: Rng + ?Sized>(rng: &mut R) -> Expr {
    let kp = KPoly::new(vec![random_poly(rng), random_poly(rng)]);
    kpoly_to_expr(&kp)
}

fn kpoly_to_expr(kp: &KPoly) -> Expr {
    let text = match (kp.coeff(0), kp.coeff(1)) {
        (a, b) if b.is_zero() => a.to_string(),
        (a, b) if a.is_zero() => format!("({b})*k"),
        (a, b) => format!("{a} + ({b})*k"),
    };
    crate::expr::parse_expr(&text).expect("generated formula parses")
}

pub fn random_jacobi<R: Rng + ?Sized>(rng: &mut R) -> JacobiSpec {
    let mut spec = JacobiSpec {
        g: random_formula(rng),
        h: random_formula(rng),
        g_exceptions: Default::default(),
        h_exceptions: Default::default(),
    };
    if rng.random_bool(0.5) {
        spec.g_exceptions.insert(0, random_poly(rng));
    }
    if rng.random_bool(0.5) {
        spec.h_exceptions.insert(1, random_poly(rng));
    }
    spec
}

pub fn random_stieltjes<R: Rng + ?Sized>(rng: &mut R) -> StieltjesSpec {
    let mut spec = StieltjesSpec {
        t_odd: random_formula(rng),
        t_even: random_formula(rng),
        t_exceptions: Default::default(),
    };
    if rng.random_bool(0.5) {
        spec.t_exceptions.insert(1, random_poly(rng));
    }
    if rng.random_bool(0.5) {
        spec.t_exceptions.insert(2, random_poly(rng));
    }
    spec
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_specs_are_nonneg_and_reproducible() {
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let ja = random_jacobi(&mut a);
            assert_eq!(ja, random_jacobi(&mut b));
            ja.check_nonneg(20).unwrap();
            let sa = random_stieltjes(&mut a);
            assert_eq!(sa, random_stieltjes(&mut b));
            sa.check_nonneg(20).unwrap();
        }
    }
}
