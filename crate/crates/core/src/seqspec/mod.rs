//! Coefficient-sequence specifications and the family catalog.
//!
//! A Jacobi spec describes the diagonal sequence `g_k(q)` (from `k = 0`) and
//! the off-diagonal sequence `h_k(q)` (from `k = 1`) of a tridiagonal
//! production rule. A Stieltjes spec describes `t_n(q)` for `n >= 1` with
//! separate formulas for odd and even `n`, both written in the half-index
//! `k`: `t_{2k-1} = t_odd(k)` and `t_{2k} = t_even(k)`.

mod oracle;
pub mod random;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::{parse_expr, Expr};
use crate::poly::Poly;

pub use crate::expr::parse_expr as parse;
pub use oracle::{
    aligned_oracle, alternating_eulerian, boros_moll_poly, euler_number, eulerian_descent_poly,
    hoffman_poly, oracle, oracle_max_n, ENUMERATION_MAX_N,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiSpec {
    pub g: Expr,
    pub h: Expr,
    pub g_exceptions: BTreeMap<usize, Poly>,
    pub h_exceptions: BTreeMap<usize, Poly>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StieltjesSpec {
    pub t_odd: Expr,
    pub t_even: Expr,
    pub t_exceptions: BTreeMap<usize, Poly>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoeffSeqSpec {
    Jacobi(JacobiSpec),
    Stieltjes(StieltjesSpec),
}

impl JacobiSpec {
    pub fn new(g: &str, h: &str) -> Result<Self> {
        Ok(JacobiSpec {
            g: parse_expr(g)?,
            h: parse_expr(h)?,
            g_exceptions: BTreeMap::new(),
            h_exceptions: BTreeMap::new(),
        })
    }

    pub fn with_g(mut self, k: usize, value: Poly) -> Self {
        self.g_exceptions.insert(k, value);
        self
    }

    pub fn with_h(mut self, k: usize, value: Poly) -> Self {
        self.h_exceptions.insert(k, value);
        self
    }

    pub fn g(&self, k: usize) -> Poly {
        self.g_exceptions
            .get(&k)
            .cloned()
            .unwrap_or_else(|| self.g.eval_at(k as u64))
    }

    /// `h_k` for `k >= 1`; `h_0` is never consumed and reads as zero.
    pub fn h(&self, k: usize) -> Poly {
        if k == 0 {
            return Poly::zero();
        }
        self.h_exceptions
            .get(&k)
            .cloned()
            .unwrap_or_else(|| self.h.eval_at(k as u64))
    }

    /// Smallest `k` from which `g_k, g_{k+1}, ...` and `h_{k+1}, ...` all
    /// come from the generic formulas.
    pub fn generic_from(&self) -> usize {
        let g = self.g_exceptions.keys().next_back().map_or(0, |&i| i + 1);
        let h = self.h_exceptions.keys().next_back().copied().unwrap_or(0);
        g.max(h)
    }

    /// First `k <= k_max` with a `g_k` or `h_k` that is not `>=_q 0`.
    pub fn check_nonneg(&self, k_max: usize) -> Result<()> {
        for k in 0..=k_max {
            let g = self.g(k);
            if !g.is_q_nonneg() {
                return Err(Error::NegativeCoefficient {
                    what: format!("g_{k}"),
                    value: g.to_string(),
                });
            }
            let h = self.h(k);
            if !h.is_q_nonneg() {
                return Err(Error::NegativeCoefficient {
                    what: format!("h_{k}"),
                    value: h.to_string(),
                });
            }
        }
        Ok(())
    }
}

impl StieltjesSpec {
    pub fn new(t_odd: &str, t_even: &str) -> Result<Self> {
        Ok(StieltjesSpec {
            t_odd: parse_expr(t_odd)?,
            t_even: parse_expr(t_even)?,
            t_exceptions: BTreeMap::new(),
        })
    }

    pub fn with_t(mut self, n: usize, value: Poly) -> Self {
        self.t_exceptions.insert(n, value);
        self
    }

    /// `t_n` for `n >= 1`; `t_0` reads as zero.
    pub fn t(&self, n: usize) -> Poly {
        if n == 0 {
            return Poly::zero();
        }
        if let Some(v) = self.t_exceptions.get(&n) {
            return v.clone();
        }
        if n % 2 == 1 {
            self.t_odd.eval_at(n.div_ceil(2) as u64)
        } else {
            self.t_even.eval_at((n / 2) as u64)
        }
    }

    pub fn check_nonneg(&self, n_max: usize) -> Result<()> {
        for n in 1..=n_max {
            let t = self.t(n);
            if !t.is_q_nonneg() {
                return Err(Error::NegativeCoefficient {
                    what: format!("t_{n}"),
                    value: t.to_string(),
                });
            }
        }
        Ok(())
    }
}

impl CoeffSeqSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            CoeffSeqSpec::Jacobi(_) => "jacobi",
            CoeffSeqSpec::Stieltjes(_) => "stieltjes",
        }
    }

    pub fn as_jacobi(&self) -> Result<&JacobiSpec> {
        match self {
            CoeffSeqSpec::Jacobi(j) => Ok(j),
            other => Err(Error::WrongKind {
                expected: "jacobi",
                found: other.kind(),
            }),
        }
    }

    pub fn as_stieltjes(&self) -> Result<&StieltjesSpec> {
        match self {
            CoeffSeqSpec::Stieltjes(s) => Ok(s),
            other => Err(Error::WrongKind {
                expected: "stieltjes",
                found: other.kind(),
            }),
        }
    }

    pub fn check_nonneg(&self, range: usize) -> Result<()> {
        match self {
            CoeffSeqSpec::Jacobi(j) => j.check_nonneg(range),
            CoeffSeqSpec::Stieltjes(s) => s.check_nonneg(range),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: SpecFile = serde_json::from_str(text)?;
        raw.try_into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&SpecFile::from(self)).expect("spec serialization is infallible")
    }
}

impl From<JacobiSpec> for CoeffSeqSpec {
    fn from(s: JacobiSpec) -> Self {
        CoeffSeqSpec::Jacobi(s)
    }
}

impl From<StieltjesSpec> for CoeffSeqSpec {
    fn from(s: StieltjesSpec) -> Self {
        CoeffSeqSpec::Stieltjes(s)
    }
}

/// On-disk JSON layout. Expressions and exception values are strings in the
/// expression grammar; `g0` and `h1` are shorthands for the most common
/// exceptions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g0: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h1: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub g_exceptions: BTreeMap<usize, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub h_exceptions: BTreeMap<usize, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_odd: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_even: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub t_exceptions: BTreeMap<usize, String>,
}

fn exceptions_to_text(map: &BTreeMap<usize, Poly>) -> BTreeMap<usize, String> {
    map.iter().map(|(k, v)| (*k, v.to_string())).collect()
}

fn exceptions_from_text(map: &BTreeMap<usize, String>) -> Result<BTreeMap<usize, Poly>> {
    map.iter().map(|(k, v)| Ok((*k, v.parse::<Poly>()?))).collect()
}

impl From<&CoeffSeqSpec> for SpecFile {
    fn from(spec: &CoeffSeqSpec) -> Self {
        let mut file = SpecFile {
            kind: spec.kind().to_string(),
            g: None,
            h: None,
            g0: None,
            h1: None,
            g_exceptions: BTreeMap::new(),
            h_exceptions: BTreeMap::new(),
            t_odd: None,
            t_even: None,
            t_exceptions: BTreeMap::new(),
        };
        match spec {
            CoeffSeqSpec::Jacobi(j) => {
                file.g = Some(j.g.to_string());
                file.h = Some(j.h.to_string());
                file.g_exceptions = exceptions_to_text(&j.g_exceptions);
                file.h_exceptions = exceptions_to_text(&j.h_exceptions);
            }
            CoeffSeqSpec::Stieltjes(s) => {
                file.t_odd = Some(s.t_odd.to_string());
                file.t_even = Some(s.t_even.to_string());
                file.t_exceptions = exceptions_to_text(&s.t_exceptions);
            }
        }
        file
    }
}

impl TryFrom<SpecFile> for CoeffSeqSpec {
    type Error = Error;

    fn try_from(file: SpecFile) -> Result<Self> {
        let need = |field: &Option<String>, name: &str| -> Result<Expr> {
            let text = field
                .as_deref()
                .ok_or_else(|| Error::InvalidSpec(format!("missing field `{name}`")))?;
            Ok(parse_expr(text)?)
        };
        match file.kind.as_str() {
            "jacobi" => {
                let mut spec = JacobiSpec {
                    g: need(&file.g, "g")?,
                    h: need(&file.h, "h")?,
                    g_exceptions: exceptions_from_text(&file.g_exceptions)?,
                    h_exceptions: exceptions_from_text(&file.h_exceptions)?,
                };
                if let Some(g0) = &file.g0 {
                    spec.g_exceptions.insert(0, g0.parse()?);
                }
                if let Some(h1) = &file.h1 {
                    spec.h_exceptions.insert(1, h1.parse()?);
                }
                if spec.h_exceptions.contains_key(&0) {
                    return Err(Error::InvalidSpec("h is indexed from 1".into()));
                }
                Ok(CoeffSeqSpec::Jacobi(spec))
            }
            "stieltjes" => {
                let spec = StieltjesSpec {
                    t_odd: need(&file.t_odd, "t_odd")?,
                    t_even: need(&file.t_even, "t_even")?,
                    t_exceptions: exceptions_from_text(&file.t_exceptions)?,
                };
                if spec.t_exceptions.contains_key(&0) {
                    return Err(Error::InvalidSpec("t is indexed from 1".into()));
                }
                Ok(CoeffSeqSpec::Stieltjes(spec))
            }
            other => Err(Error::InvalidSpec(format!("unknown kind `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyId {
    Bell,
    EulerianA,
    QSchroeder,
    QDelannoy,
    NarayanaA,
    NarayanaB,
    Aigner,
    Shapiro,
    SchroederTriangle,
    AltEulerian,
    EulerNumbers,
    TanDerivative,
    EllipticCn,
    BorosMoll,
}

impl FamilyId {
    pub const ALL: [FamilyId; 14] = [
        FamilyId::Bell,
        FamilyId::EulerianA,
        FamilyId::QSchroeder,
        FamilyId::QDelannoy,
        FamilyId::NarayanaA,
        FamilyId::NarayanaB,
        FamilyId::Aigner,
        FamilyId::Shapiro,
        FamilyId::SchroederTriangle,
        FamilyId::AltEulerian,
        FamilyId::EulerNumbers,
        FamilyId::TanDerivative,
        FamilyId::EllipticCn,
        FamilyId::BorosMoll,
    ];

    /// The six tridiagonal families whose first columns are the classical
    /// Bell, Eulerian, q-Schröder, q-Delannoy and Narayana polynomials.
    pub const BASIC_SIX: [FamilyId; 6] = [
        FamilyId::Bell,
        FamilyId::EulerianA,
        FamilyId::QSchroeder,
        FamilyId::QDelannoy,
        FamilyId::NarayanaA,
        FamilyId::NarayanaB,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::Bell => "bell",
            FamilyId::EulerianA => "eulerianA",
            FamilyId::QSchroeder => "qschroeder",
            FamilyId::QDelannoy => "qdelannoy",
            FamilyId::NarayanaA => "narayanaA",
            FamilyId::NarayanaB => "narayanaB",
            FamilyId::Aigner => "aigner",
            FamilyId::Shapiro => "shapiro",
            FamilyId::SchroederTriangle => "schroeder_triangle",
            FamilyId::AltEulerian => "alt_eulerian",
            FamilyId::EulerNumbers => "euler_numbers",
            FamilyId::TanDerivative => "tan_derivative",
            FamilyId::EllipticCn => "elliptic_cn",
            FamilyId::BorosMoll => "boros_moll",
        }
    }

    /// Index offset between the expansion and the oracle: expansion term
    /// `T_n` corresponds to `oracle(n + offset)`.
    pub fn oracle_offset(self) -> usize {
        match self {
            FamilyId::AltEulerian | FamilyId::EulerNumbers | FamilyId::TanDerivative => 1,
            _ => 0,
        }
    }

    pub fn has_oracle(self) -> bool {
        matches!(
            self,
            FamilyId::Bell
                | FamilyId::EulerianA
                | FamilyId::QSchroeder
                | FamilyId::QDelannoy
                | FamilyId::NarayanaA
                | FamilyId::NarayanaB
                | FamilyId::AltEulerian
                | FamilyId::EulerNumbers
                | FamilyId::TanDerivative
        )
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        FamilyId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

impl Serialize for FamilyId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

fn p(text: &str) -> Poly {
    text.parse().expect("catalog literals are well-formed")
}

fn jacobi(g: &str, h: &str) -> JacobiSpec {
    JacobiSpec::new(g, h).expect("catalog formulas are well-formed")
}

/// The catalogued coefficient sequences.
pub fn family_spec(id: FamilyId) -> Result<CoeffSeqSpec> {
    let spec: CoeffSeqSpec = match id {
        FamilyId::Bell => jacobi("k + q", "k*q").into(),
        FamilyId::EulerianA => jacobi("(k + 1)*q + k", "k^2*q").into(),
        FamilyId::QSchroeder => jacobi("2*q + 1", "q*(q + 1)").with_g(0, p("q + 1")).into(),
        FamilyId::QDelannoy => jacobi("1 + 2*q", "q*(1 + q)").with_h(1, p("2*q + 2*q^2")).into(),
        FamilyId::NarayanaA => jacobi("1 + q", "q").with_g(0, p("q")).into(),
        FamilyId::NarayanaB => jacobi("1 + q", "q").with_h(1, p("2*q")).into(),
        FamilyId::Aigner => jacobi("2", "1").with_g(0, p("1")).into(),
        FamilyId::Shapiro => jacobi("2", "1").into(),
        FamilyId::SchroederTriangle => jacobi("2", "2").with_g(0, p("1")).into(),
        FamilyId::AltEulerian => jacobi("(k + 1)*(q + 1)", "1/2*(q^2 + 1)*k*(k + 1)").into(),
        FamilyId::EulerNumbers => jacobi("k + 1", "1/2*k*(k + 1)").into(),
        FamilyId::TanDerivative => jacobi("2*(k + 1)*q", "(1 + q^2)*k*(k + 1)").into(),
        FamilyId::EllipticCn => StieltjesSpec::new("(2*k - 1)^2", "(2*k)^2*q")
            .expect("catalog formulas are well-formed")
            .into(),
        FamilyId::BorosMoll => return Err(Error::NoSpec(id)),
    };
    Ok(spec)
}

/// The Riordan parameters `(e, g, h)` of the three constant-coefficient
/// Catalan-type triangles.
pub fn riordan_params(id: FamilyId) -> Option<(i64, i64, i64)> {
    match id {
        FamilyId::Aigner => Some((1, 2, 1)),
        FamilyId::Shapiro => Some((2, 2, 1)),
        FamilyId::SchroederTriangle => Some((1, 2, 2)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_values() {
        let bell = family_spec(FamilyId::Bell).unwrap();
        assert_eq!(bell.as_jacobi().unwrap().g(3), p("3 + q"));

        let delannoy = family_spec(FamilyId::QDelannoy).unwrap();
        assert_eq!(delannoy.as_jacobi().unwrap().h(1), p("2*q + 2*q^2"));
        assert_eq!(delannoy.as_jacobi().unwrap().h(2), p("q + q^2"));

        let cn = family_spec(FamilyId::EllipticCn).unwrap();
        let cn = cn.as_stieltjes().unwrap();
        assert_eq!(cn.t(4), p("16*q"));
        assert_eq!(cn.t(1), p("1"));
        assert_eq!(cn.t(3), p("9"));

        assert!(matches!(family_spec(FamilyId::BorosMoll), Err(Error::NoSpec(FamilyId::BorosMoll))));
    }

    #[test]
    fn catalog_is_nonneg_and_integral() {
        for id in FamilyId::ALL {
            let Ok(spec) = family_spec(id) else { continue };
            spec.check_nonneg(40).unwrap();
            if let CoeffSeqSpec::Jacobi(j) = &spec {
                for k in 0..40 {
                    assert!(j.g(k).is_integral(), "{id} g_{k}");
                    assert!(j.h(k).is_integral(), "{id} h_{k}");
                }
            }
        }
    }

    #[test]
    fn family_names_round_trip() {
        for id in FamilyId::ALL {
            assert_eq!(id.name().parse::<FamilyId>().unwrap(), id);
        }
        assert!(matches!("catalan".parse::<FamilyId>(), Err(Error::UnknownFamily(_))));
    }

    #[test]
    fn generic_from() {
        let j = family_spec(FamilyId::NarayanaB).unwrap();
        assert_eq!(j.as_jacobi().unwrap().generic_from(), 1);
        let j = family_spec(FamilyId::QSchroeder).unwrap();
        assert_eq!(j.as_jacobi().unwrap().generic_from(), 1);
        let j = family_spec(FamilyId::Bell).unwrap();
        assert_eq!(j.as_jacobi().unwrap().generic_from(), 0);
    }

    #[test]
    fn json_round_trip() {
        for id in FamilyId::ALL {
            let Ok(spec) = family_spec(id) else { continue };
            let back = CoeffSeqSpec::from_json(&spec.to_json()).unwrap();
            assert_eq!(back, spec, "{id}");
        }
        let short = r#"{"kind": "jacobi", "g": "1 + q", "h": "q", "h1": "2*q"}"#;
        assert_eq!(CoeffSeqSpec::from_json(short).unwrap(), family_spec(FamilyId::NarayanaB).unwrap());
        let bad = r#"{"kind": "jacobi", "g": "1 + ", "h": "q"}"#;
        assert!(matches!(CoeffSeqSpec::from_json(bad), Err(Error::Parse(_))));
        let bad = r#"{"kind": "stieltjes", "t_odd": "1"}"#;
        assert!(matches!(CoeffSeqSpec::from_json(bad), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn parse_print_identity_on_catalog() {
        for id in FamilyId::ALL {
            let Ok(spec) = family_spec(id) else { continue };
            let exprs = match &spec {
                CoeffSeqSpec::Jacobi(j) => vec![j.g.clone(), j.h.clone()],
                CoeffSeqSpec::Stieltjes(s) => vec![s.t_odd.clone(), s.t_even.clone()],
            };
            for e in exprs {
                assert_eq!(parse_expr(&e.to_string()).unwrap(), e);
            }
        }
    }
}
