//! Ground-truth sequences computed without the recurrence or continued
//! fraction machinery: closed-form sums, classical recurrences, and
//! exhaustive permutation enumeration.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::FamilyId;
use crate::error::{Error, Result};
use crate::poly::{binomial, rat, rat_frac, Poly, Rational};

/// Largest `n` accepted by the permutation-enumeration oracles.
pub const ENUMERATION_MAX_N: usize = 10;

pub fn oracle_max_n(id: FamilyId) -> Option<usize> {
    match id {
        FamilyId::EulerianA | FamilyId::AltEulerian | FamilyId::EulerNumbers => {
            Some(ENUMERATION_MAX_N)
        }
        _ => None,
    }
}

/// The family's defining polynomial at index `n`.
///
/// Conventions at `n = 0`: the empty permutation contributes `1` to the
/// enumeration families and the Narayana polynomial `N_0` is taken as `1`.
pub fn oracle(id: FamilyId, n: usize) -> Result<Poly> {
    if let Some(max) = oracle_max_n(id) {
        if n > max {
            return Err(Error::OracleRange { family: id, n, max });
        }
    }
    Ok(match id {
        FamilyId::Bell => bell_poly(n),
        FamilyId::EulerianA => eulerian_descent_poly(n),
        FamilyId::QSchroeder => q_schroeder(n),
        FamilyId::QDelannoy => q_delannoy(n),
        FamilyId::NarayanaA => narayana_a(n),
        FamilyId::NarayanaB => narayana_b(n),
        FamilyId::AltEulerian => alternating_eulerian(n),
        FamilyId::EulerNumbers => Poly::constant(Rational::from_integer(euler_number(n))),
        FamilyId::TanDerivative => hoffman_poly(n),
        other => return Err(Error::NoOracle(other)),
    })
}

/// The oracle value expected at position `n` of the family's expansion.
pub fn aligned_oracle(id: FamilyId, n: usize) -> Result<Poly> {
    let raw = oracle(id, n + id.oracle_offset())?;
    if id == FamilyId::TanDerivative {
        let one_plus_q2 = Poly::from_ints(&[1, 0, 1]);
        return Ok(raw
            .exact_div(&one_plus_q2)
            .expect("Hoffman polynomials P_{n+1} are divisible by 1 + q^2"));
    }
    Ok(raw)
}

/// `sum_k S(n, k) q^k` from the Stirling recurrence
/// `S(n, k) = k S(n-1, k) + S(n-1, k-1)`.
fn bell_poly(n: usize) -> Poly {
    let mut row: Vec<BigInt> = vec![BigInt::one()];
    for m in 1..=n {
        let mut next = vec![BigInt::zero(); m + 1];
        for k in 1..=m {
            let stay = if k < row.len() { &row[k] * k } else { BigInt::zero() };
            next[k] = stay + &row[k - 1];
        }
        row = next;
    }
    Poly::new(row.into_iter().map(Rational::from_integer).collect())
}

fn q_schroeder(n: usize) -> Poly {
    let (n, terms) = (n as u64, n + 1);
    Poly::new(
        (0..terms as u64)
            .map(|k| binomial(n + k, n - k) * binomial(2 * k, k) * rat_frac(1, k as i64 + 1))
            .collect(),
    )
}

fn q_delannoy(n: usize) -> Poly {
    let n = n as u64;
    Poly::new((0..=n).map(|k| binomial(n + k, n - k) * binomial(2 * k, k)).collect())
}

fn narayana_a(n: usize) -> Poly {
    if n == 0 {
        return Poly::one();
    }
    let n = n as u64;
    let mut coeffs = vec![rat(0)];
    coeffs.extend((1..=n).map(|k| binomial(n, k) * binomial(n, k - 1) * rat_frac(1, n as i64)));
    Poly::new(coeffs)
}

fn narayana_b(n: usize) -> Poly {
    let n = n as u64;
    Poly::new((0..=n).map(|k| binomial(n, k) * binomial(n, k)).collect())
}

/// Hoffman's derivative polynomials: `P_0 = q`, `P_{n+1} = (1 + q^2) P_n'`.
pub fn hoffman_poly(n: usize) -> Poly {
    let one_plus_q2 = Poly::from_ints(&[1, 0, 1]);
    (0..n).fold(Poly::q(), |p, _| &one_plus_q2 * &p.derivative())
}

/// `P_n(q) = sum_{j,k} C(2n+1, 2j) C(n-j, k) C(2k+2j, k+j) (q+1)^j (q-1)^k / 2^{3(k+j)}`.
pub fn boros_moll_poly(n: usize) -> Poly {
    let n = n as u64;
    let q_plus = Poly::from_ints(&[1, 1]);
    let q_minus = Poly::from_ints(&[-1, 1]);
    let mut acc = Poly::zero();
    for j in 0..=n {
        for k in 0..=(n - j) {
            let weight = binomial(2 * n + 1, 2 * j)
                * binomial(n - j, k)
                * binomial(2 * k + 2 * j, k + j)
                / Rational::from_integer(BigInt::from(2).pow(3 * (k + j) as u32));
            let term = &q_plus.pow(j as u32) * &q_minus.pow(k as u32);
            acc += term.scale(&weight);
        }
    }
    acc
}

/// Histogram of a permutation statistic over all permutations of `0..n`.
fn permutation_histogram<F>(n: usize, stat: F) -> Vec<u64>
where
    F: Fn(&[u8]) -> usize + Sync,
{
    if n == 0 {
        let mut h = vec![0u64; stat(&[]) + 1];
        *h.last_mut().unwrap() += 1;
        return h;
    }
    let partials: Vec<Vec<u64>> = (0..n as u8)
        .into_par_iter()
        .map(|first| {
            let mut hist = vec![0u64; n + 2];
            let mut rest: Vec<u8> = (0..n as u8).filter(|&x| x != first).collect();
            let mut perm = vec![0u8; n];
            perm[0] = first;
            let mut visit = |rest: &[u8]| {
                perm[1..].copy_from_slice(rest);
                hist[stat(&perm)] += 1;
            };
            // Heap's algorithm, iterative form.
            let m = rest.len();
            let mut c = vec![0usize; m];
            visit(&rest);
            let mut i = 0;
            while i < m {
                if c[i] < i {
                    if i % 2 == 0 {
                        rest.swap(0, i);
                    } else {
                        rest.swap(c[i], i);
                    }
                    visit(&rest);
                    c[i] += 1;
                    i = 0;
                } else {
                    c[i] = 0;
                    i += 1;
                }
            }
            hist
        })
        .collect();
    let mut total = vec![0u64; n + 2];
    for part in partials {
        for (t, v) in total.iter_mut().zip(part) {
            *t += v;
        }
    }
    total
}

fn histogram_poly(hist: &[u64], shift: usize) -> Poly {
    let mut coeffs = vec![rat(0); shift];
    coeffs.extend(hist.iter().map(|&c| Rational::from_integer(BigInt::from(c))));
    Poly::new(coeffs)
}

fn descents(perm: &[u8]) -> usize {
    perm.windows(2).filter(|w| w[0] > w[1]).count()
}

/// `A_n(q) = sum_k A(n,k) q^k` where `A(n,k)` counts permutations of `[n]`
/// with `k - 1` descents, i.e. `sum_pi q^{des(pi) + 1}` for `n >= 1`.
pub fn eulerian_descent_poly(n: usize) -> Poly {
    if n == 0 {
        return Poly::one();
    }
    histogram_poly(&permutation_histogram(n, descents), 1)
}

/// Alternating descents: 1-based positions `j` with `j` even and
/// `pi(j) < pi(j+1)`, or `j` odd and `pi(j) > pi(j+1)`.
fn alternating_descents(perm: &[u8]) -> usize {
    perm.windows(2)
        .enumerate()
        .filter(|(i, w)| {
            let j = i + 1;
            if j % 2 == 0 {
                w[0] < w[1]
            } else {
                w[0] > w[1]
            }
        })
        .count()
}

/// `A*_n(q) = sum_pi q^{altdes(pi)}`.
pub fn alternating_eulerian(n: usize) -> Poly {
    histogram_poly(&permutation_histogram(n, alternating_descents), 0)
}

/// Number of permutations with `pi(1) > pi(2) < pi(3) > ...`, by enumeration.
/// Panics above [`ENUMERATION_MAX_N`].
pub fn euler_number(n: usize) -> BigInt {
    assert!(n <= ENUMERATION_MAX_N, "enumeration oracle capped at n = {ENUMERATION_MAX_N}");
    let is_alternating = |perm: &[u8]| {
        perm.windows(2)
            .enumerate()
            .all(|(i, w)| if i % 2 == 0 { w[0] > w[1] } else { w[0] < w[1] }) as usize
    };
    let hist = permutation_histogram(n, is_alternating);
    BigInt::from(hist.get(1).copied().unwrap_or(0))
}
