//! Lower-triangular arrays generated by the tridiagonal recurrence
//!
//! ```text
//! A_{0,0} = 1
//! A_{n,k} = A_{n-1,k-1} + g_k A_{n-1,k} + h_{k+1} A_{n-1,k+1}
//! ```
//!
//! with `A_{n,k} = 0` unless `n >= k >= 0`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::poly::{Poly, Rational};
use crate::seqspec::{CoeffSeqSpec, JacobiSpec};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triangle {
    rows: Vec<Vec<Poly>>,
}

impl Triangle {
    pub fn rows(&self) -> &[Vec<Poly>] {
        &self.rows
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// `A_{n,k}`, zero outside the triangle.
    pub fn get(&self, n: usize, k: usize) -> Poly {
        self.rows
            .get(n)
            .and_then(|r| r.get(k))
            .cloned()
            .unwrap_or_default()
    }

    pub fn first_column(&self) -> Vec<Poly> {
        self.rows.iter().map(|r| r[0].clone()).collect()
    }

    /// `sum_k A_{n,k} q^k` for each row, treating entries as numbers.
    /// Only meaningful when every entry is constant.
    pub fn row_polys(&self) -> Vec<Poly> {
        self.rows
            .iter()
            .map(|r| Poly::new(r.iter().map(|e| e.as_constant().unwrap_or_default()).collect()))
            .collect()
    }

    pub fn eval(&self, x: &Rational) -> NumericTriangle {
        NumericTriangle {
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|e| e.eval(x)).collect())
                .collect(),
        }
    }

    /// One row per line, entries as canonical polynomial text. Entries are
    /// quoted since the text form contains spaces.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(|e| format!("\"{e}\"")).collect();
            writeln!(out, "{}", line.join(",")).unwrap();
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericTriangle {
    pub rows: Vec<Vec<Rational>>,
}

impl NumericTriangle {
    pub fn first_column(&self) -> Vec<Rational> {
        self.rows.iter().map(|r| r[0].clone()).collect()
    }
}

/// Rows `0..=n_max` of the recurrence for a Jacobi spec.
pub fn generate(spec: &CoeffSeqSpec, n_max: usize) -> Result<Triangle> {
    Ok(generate_jacobi(spec.as_jacobi()?, n_max))
}

pub fn generate_jacobi(spec: &JacobiSpec, n_max: usize) -> Triangle {
    let g: Vec<Poly> = (0..=n_max).map(|k| spec.g(k)).collect();
    let h: Vec<Poly> = (0..=n_max + 1).map(|k| spec.h(k)).collect();
    let mut rows: Vec<Vec<Poly>> = Vec::with_capacity(n_max + 1);
    rows.push(vec![Poly::one()]);
    for n in 1..=n_max {
        let prev = &rows[n - 1];
        let at = |k: usize| prev.get(k);
        let row: Vec<Poly> = (0..=n)
            .map(|k| {
                let mut v = Poly::zero();
                if k >= 1 {
                    if let Some(a) = at(k - 1) {
                        v += a;
                    }
                }
                if let Some(a) = at(k) {
                    if !a.is_zero() && !g[k].is_zero() {
                        v += &g[k] * a;
                    }
                }
                if let Some(a) = at(k + 1) {
                    if !a.is_zero() && !h[k + 1].is_zero() {
                        v += &h[k + 1] * a;
                    }
                }
                v
            })
            .collect();
        rows.push(row);
    }
    Triangle { rows }
}

/// The spec whose first column is the row generating functions
/// `sum_k A_{n,k} q^k` of the numeric triangle with `g_0 = e`, `g_k = g`,
/// `h_k = h`: `g_0' = e + q`, `h_1' = (g - e)q + h`, otherwise `g`, `h`.
pub fn row_genfun_spec(e: &Poly, g: &Poly, h: &Poly) -> Result<JacobiSpec> {
    let diff = g - e;
    if !diff.is_q_nonneg() {
        return Err(Error::NegativeCoefficient {
            what: "g - e".into(),
            value: diff.to_string(),
        });
    }
    let mut spec = JacobiSpec {
        g: Expr::from_poly(g),
        h: Expr::from_poly(h),
        g_exceptions: Default::default(),
        h_exceptions: Default::default(),
    };
    spec.g_exceptions.insert(0, e + &Poly::q());
    spec.h_exceptions.insert(1, &(&diff * &Poly::q()) + h);
    Ok(spec)
}

pub fn row_genfun_transform(e: &Poly, g: &Poly, h: &Poly, n_max: usize) -> Result<Triangle> {
    Ok(generate_jacobi(&row_genfun_spec(e, g, h)?, n_max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;
    use crate::seqspec::{family_spec, oracle, FamilyId};

    fn ints(t: &Triangle) -> Vec<Vec<i64>> {
        t.rows()
            .iter()
            .map(|r| {
                r.iter()
                    .map(|e| e.as_constant().unwrap().to_integer().try_into().unwrap())
                    .collect()
            })
            .collect()
    }

    fn p(text: &str) -> Poly {
        text.parse().unwrap()
    }

    #[test]
    fn catalan_triangles() {
        let aigner = generate(&family_spec(FamilyId::Aigner).unwrap(), 3).unwrap();
        assert_eq!(ints(&aigner), vec![vec![1], vec![1, 1], vec![2, 3, 1], vec![5, 9, 5, 1]]);
        let shapiro = generate(&family_spec(FamilyId::Shapiro).unwrap(), 3).unwrap();
        assert_eq!(ints(&shapiro), vec![vec![1], vec![2, 1], vec![5, 4, 1], vec![14, 14, 6, 1]]);
    }

    #[test]
    fn schroeder_recurrence_rows() {
        // g_0 = 1, g_k = 2, h_k = 2 as in s_{n+1,0} = s_{n,0} + 2 s_{n,1}
        let s = generate(&family_spec(FamilyId::SchroederTriangle).unwrap(), 3).unwrap();
        assert_eq!(ints(&s), vec![vec![1], vec![1, 1], vec![3, 3, 1], vec![9, 11, 5, 1]]);
    }

    #[test]
    fn first_columns() {
        let bell = generate(&family_spec(FamilyId::Bell).unwrap(), 3).unwrap();
        assert_eq!(
            bell.first_column(),
            vec![p("1"), p("q"), p("q + q^2"), p("q + 3*q^2 + q^3")]
        );
        let nar = generate(&family_spec(FamilyId::NarayanaA).unwrap(), 3).unwrap();
        assert_eq!(nar.first_column()[3], oracle(FamilyId::NarayanaA, 3).unwrap());
        let aigner = generate(&family_spec(FamilyId::Aigner).unwrap(), 5).unwrap();
        let col: Vec<Poly> = [1, 1, 2, 5, 14, 42].iter().map(|&c| Poly::from_int(c)).collect();
        assert_eq!(aigner.first_column(), col);
    }

    #[test]
    fn row_transform() {
        let c = |n: i64| Poly::from_int(n);
        let aigner = row_genfun_transform(&c(1), &c(2), &c(1), 2).unwrap();
        assert_eq!(aigner.first_column()[2], p("2 + 3*q + q^2"));
        let shapiro = row_genfun_transform(&c(2), &c(2), &c(1), 3).unwrap();
        assert_eq!(shapiro.first_column()[3], p("14 + 14*q + 6*q^2 + q^3"));
        let schroeder = row_genfun_transform(&c(1), &c(2), &c(2), 1).unwrap();
        assert_eq!(schroeder.first_column()[1], p("1 + q"));
        assert!(matches!(
            row_genfun_transform(&c(3), &c(2), &c(1), 2),
            Err(Error::NegativeCoefficient { .. })
        ));
    }

    #[test]
    fn row_transform_matches_row_sums() {
        for (e, g, h) in [(1, 2, 1), (2, 2, 1), (1, 2, 2), (0, 3, 2)] {
            let numeric = generate_jacobi(
                &JacobiSpec::new(&g.to_string(), &h.to_string())
                    .unwrap()
                    .with_g(0, Poly::from_int(e)),
                8,
            );
            let t = row_genfun_transform(&Poly::from_int(e), &Poly::from_int(g), &Poly::from_int(h), 8)
                .unwrap();
            assert_eq!(t.first_column(), numeric.row_polys());
            for (n, row) in numeric.rows().iter().enumerate() {
                let sum: Rational = row.iter().map(|e| e.as_constant().unwrap()).sum();
                assert_eq!(t.first_column()[n].eval(&rat(1)), sum);
            }
        }
    }

    #[test]
    fn eval_numeric() {
        let bell = generate(&family_spec(FamilyId::Bell).unwrap(), 4).unwrap();
        let col: Vec<Rational> = bell.eval(&rat(1)).first_column();
        assert_eq!(col, [1, 1, 2, 5, 15].map(rat).to_vec());
        let at_zero = bell.eval(&rat(0));
        for (n, row) in at_zero.rows.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                assert_eq!(*v, bell.get(n, k).coeff(0));
            }
        }
        let euler = generate(&family_spec(FamilyId::EulerNumbers).unwrap(), 5).unwrap();
        let numeric = euler.eval(&rat(7));
        for (n, row) in numeric.rows.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                assert_eq!(Poly::constant(v.clone()), euler.get(n, k));
            }
        }
    }

    #[test]
    fn diagonal_is_one_and_entries_nonneg() {
        for id in FamilyId::ALL {
            let Ok(spec) = family_spec(id) else { continue };
            let Ok(t) = generate(&spec, 10) else { continue };
            for n in 0..=10 {
                assert!(t.get(n, n).is_one());
                assert!(t.rows()[n].iter().all(Poly::is_q_nonneg));
            }
        }
    }

    #[test]
    fn stieltjes_rejected() {
        let spec = family_spec(FamilyId::EllipticCn).unwrap();
        assert!(matches!(generate(&spec, 3), Err(Error::WrongKind { .. })));
    }

    #[test]
    fn csv_export() {
        let t = generate(&family_spec(FamilyId::Bell).unwrap(), 2).unwrap();
        assert_eq!(t.to_csv(), "\"1\"\n\"q\",\"1\"\n\"q + q^2\",\"1 + 2*q\",\"1\"\n");
    }
}
