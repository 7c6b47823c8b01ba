//! Polynomial matrices, exact determinants and q-TP_r window checks.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cfrac::contract_stieltjes;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::seqspec::{CoeffSeqSpec, JacobiSpec};
use crate::triangle::generate_jacobi;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            data: vec![Poly::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = PolyMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Poly::one());
        }
        m
    }

    pub fn from_fn<F: FnMut(usize, usize) -> Poly>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        PolyMatrix { rows, cols, data }
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Self {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == m), "ragged rows");
        PolyMatrix {
            rows: n,
            cols: m,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        PolyMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&c| Poly::from_int(c)).collect())
                .collect(),
        )
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Poly) {
        self.data[i * self.cols + j] = value;
    }

    pub fn to_rows(&self) -> Vec<Vec<Poly>> {
        self.data.chunks(self.cols.max(1)).map(<[Poly]>::to_vec).take(self.rows).collect()
    }

    pub fn transpose(&self) -> PolyMatrix {
        PolyMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::BadIndices(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(PolyMatrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols)
                .filter(|&l| !self.get(i, l).is_zero() && !other.get(l, j).is_zero())
                .map(|l| self.get(i, l) * other.get(l, j))
                .sum()
        }))
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<PolyMatrix> {
        if let Some(&bad) = rows.iter().find(|&&i| i >= self.rows) {
            return Err(Error::BadIndices(format!("row {bad} out of range")));
        }
        if let Some(&bad) = cols.iter().find(|&&j| j >= self.cols) {
            return Err(Error::BadIndices(format!("column {bad} out of range")));
        }
        Ok(PolyMatrix::from_fn(rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j]).clone()
        }))
    }

    pub fn det(&self) -> Result<Poly> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(bareiss(self.to_rows()))
    }

    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<Poly> {
        if rows.len() != cols.len() {
            return Err(Error::BadIndices(format!(
                "{} rows but {} columns",
                rows.len(),
                cols.len()
            )));
        }
        self.submatrix(rows, cols)?.det()
    }

    /// Minor without bounds checks, used by the enumerator.
    fn minor_unchecked(&self, rows: &[usize], cols: &[usize]) -> Poly {
        let at = |i: usize, j: usize| self.get(rows[i], cols[j]);
        match rows.len() {
            0 => Poly::one(),
            1 => at(0, 0).clone(),
            2 => &(at(0, 0) * at(1, 1)) - &(at(0, 1) * at(1, 0)),
            n => bareiss(
                (0..n)
                    .map(|i| (0..n).map(|j| at(i, j).clone()).collect())
                    .collect(),
            ),
        }
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_rows() {
            let cells: Vec<String> = row.iter().map(Poly::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Fraction-free elimination. Every division is exact by the Bareiss
/// identity, so a failed division is an arithmetic bug and panics.
fn bareiss(mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    let mut negate = false;
    let mut prev = Poly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return Poly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = if prev.is_one() {
                    num
                } else {
                    num.exact_div(&prev)
                        .unwrap_or_else(|| panic!("Bareiss division by {prev} was not exact"))
                };
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// `M[i][j] = seq[offset + i + j]`.
pub fn hankel(seq: &[Poly], size: usize, offset: usize) -> Result<PolyMatrix> {
    let needed = if size == 0 { offset } else { offset + 2 * size - 1 };
    if needed > seq.len() {
        return Err(Error::InsufficientLength {
            needed,
            len: seq.len(),
        });
    }
    Ok(PolyMatrix::from_fn(size, size, |i, j| seq[offset + i + j].clone()))
}

/// `J_n`: `g_i` on the diagonal, 1 above, `h_{i+1}` below at `(i+1, i)`.
/// Stieltjes specs are contracted first.
pub fn tridiagonal(spec: &CoeffSeqSpec, size: usize) -> PolyMatrix {
    tridiagonal_jacobi(&jacobi_of(spec), size)
}

pub fn tridiagonal_jacobi(spec: &JacobiSpec, size: usize) -> PolyMatrix {
    PolyMatrix::from_fn(size, size, |i, j| {
        if i == j {
            spec.g(i)
        } else if j == i + 1 {
            Poly::one()
        } else if i == j + 1 {
            spec.h(i)
        } else {
            Poly::zero()
        }
    })
}

fn jacobi_of(spec: &CoeffSeqSpec) -> JacobiSpec {
    match spec {
        CoeffSeqSpec::Jacobi(j) => j.clone(),
        CoeffSeqSpec::Stieltjes(s) => contract_stieltjes(s),
    }
}

/// Result of the two factorizations at size `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FactorizationReport {
    pub n: usize,
    /// `Q_n = A_n J_n` with `Q_n = [A_{i+1,j}]`.
    pub production: bool,
    /// `H_n = A_n T_n A_n^T` with `T_k = T_{k-1} h_k`.
    pub hankel: bool,
}

impl FactorizationReport {
    pub fn holds(&self) -> bool {
        self.production && self.hankel
    }
}

pub fn factorization_check(spec: &CoeffSeqSpec, n: usize) -> FactorizationReport {
    let j = jacobi_of(spec);
    let tri = generate_jacobi(&j, (2 * n).max(1));
    let a = PolyMatrix::from_fn(n, n, |i, k| tri.get(i, k));
    let q = PolyMatrix::from_fn(n, n, |i, k| tri.get(i + 1, k));
    let production = a.mul(&tridiagonal_jacobi(&j, n)).map(|p| p == q).unwrap_or(false);

    let mut t = PolyMatrix::zeros(n, n);
    let mut tk = Poly::one();
    for k in 0..n {
        if k > 0 {
            tk = &tk * &j.h(k);
        }
        t.set(k, k, tk.clone());
    }
    let h = PolyMatrix::from_fn(n, n, |i, k| tri.get(i + k, 0));
    let hankel = a
        .mul(&t)
        .and_then(|at| at.mul(&a.transpose()))
        .map(|p| p == h)
        .unwrap_or(false);
    FactorizationReport {
        n,
        production,
        hankel,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TpMode {
    /// Every row and column subset.
    All,
    /// Consecutive row and column windows only. Cheap, not conclusive.
    Contiguous,
}

impl std::str::FromStr for TpMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(TpMode::All),
            "contiguous" => Ok(TpMode::Contiguous),
            other => Err(Error::BadIndices(format!("unknown mode `{other}`"))),
        }
    }
}

impl fmt::Display for TpMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TpMode::All => "all",
            TpMode::Contiguous => "contiguous",
        })
    }
}

/// Bounds on `mode = all` enumeration. The worst case checks
/// `sum_{r <= order} C(window, r)^2` minors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TpLimits {
    pub max_window: usize,
    pub max_order: usize,
}

impl Default for TpLimits {
    fn default() -> Self {
        TpLimits {
            max_window: 14,
            max_order: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TpWitness {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub minor: Poly,
}

/// Verdict on a finite window only: `true` means every checked minor of
/// order `<= order` is `>=_q 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TpReport {
    pub order: usize,
    pub mode: TpMode,
    pub verdict: bool,
    pub witness: Option<TpWitness>,
    /// Minors examined in enumeration order up to and including the witness.
    pub minors_checked: u64,
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if r > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..r).rev().find(|&i| idx[i] < n - r + i) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn windows(n: usize, r: usize) -> Vec<Vec<usize>> {
    if r > n {
        return Vec::new();
    }
    (0..=n - r).map(|s| (s..s + r).collect()).collect()
}

pub fn is_q_tp(m: &PolyMatrix, order: usize, mode: TpMode) -> Result<TpReport> {
    is_q_tp_with(m, order, mode, TpLimits::default())
}

/// Enumerates minors by size, then rows, then columns, each in lexicographic
/// order, and reports the first one that is not `>=_q 0`.
pub fn is_q_tp_with(m: &PolyMatrix, order: usize, mode: TpMode, limits: TpLimits) -> Result<TpReport> {
    if order == 0 {
        return Err(Error::BadIndices("order must be at least 1".into()));
    }
    if mode == TpMode::All {
        let window = m.n_rows().max(m.n_cols());
        if window > limits.max_window || order > limits.max_order {
            return Err(Error::LimitExceeded(format!(
                "window {window} order {order} (limits {} and {})",
                limits.max_window, limits.max_order
            )));
        }
    }
    let subsets = |n: usize, r: usize| match mode {
        TpMode::All => combinations(n, r),
        TpMode::Contiguous => windows(n, r),
    };
    let mut checked = 0u64;
    for r in 1..=order.min(m.n_rows()).min(m.n_cols()) {
        let row_sets = subsets(m.n_rows(), r);
        let col_sets = subsets(m.n_cols(), r);
        let hit = row_sets.par_iter().enumerate().find_map_first(|(ri, rows)| {
            col_sets.iter().enumerate().find_map(|(ci, cols)| {
                let minor = m.minor_unchecked(rows, cols);
                (!minor.is_q_nonneg()).then(|| (ri, ci, minor))
            })
        });
        match hit {
            Some((ri, ci, minor)) => {
                checked += (ri * col_sets.len() + ci + 1) as u64;
                return Ok(TpReport {
                    order,
                    mode,
                    verdict: false,
                    witness: Some(TpWitness {
                        rows: row_sets[ri].clone(),
                        cols: col_sets[ci].clone(),
                        minor,
                    }),
                    minors_checked: checked,
                });
            }
            None => checked += (row_sets.len() * col_sets.len()) as u64,
        }
    }
    Ok(TpReport {
        order,
        mode,
        verdict: true,
        witness: None,
        minors_checked: checked,
    })
}
