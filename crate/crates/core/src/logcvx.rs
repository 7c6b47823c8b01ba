//! The L-operator, m-q-log-convexity, sufficient-condition criteria on the
//! coefficient sequences, and a random explorer for Hankel L-images.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cfrac::contract_stieltjes;
use crate::error::{Error, Result};
use crate::expr::KPoly;
use crate::poly::Poly;
use crate::posmat::{hankel, is_q_tp, PolyMatrix, TpMode, TpWitness};
use crate::seqspec::random::random_stieltjes;
use crate::seqspec::{CoeffSeqSpec, JacobiSpec, SpecFile, StieltjesSpec};
use crate::triangle::generate_jacobi;

/// `f_{i-1} f_{i+1} - f_i^2` for `i = 1..len-1`.
pub fn l_operator(seq: &[Poly]) -> Result<Vec<Poly>> {
    if seq.len() < 3 {
        return Err(Error::InsufficientLength {
            needed: 3,
            len: seq.len(),
        });
    }
    Ok(seq
        .windows(3)
        .map(|w| &(&w[0] * &w[2]) - &(&w[1] * &w[1]))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LogConvexFailure {
    /// `1` for `L`, `2` for `L^2`, ...
    pub level: usize,
    /// Index of the centre term in the input sequence.
    pub index: usize,
    pub value: Poly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LogConvexReport {
    pub m_requested: usize,
    /// Levels actually examined; each level consumes two terms.
    pub depth_checked: usize,
    pub verdict: bool,
    pub failure: Option<LogConvexFailure>,
}

impl LogConvexReport {
    /// Verdict true and every requested level examined.
    pub fn is_complete(&self) -> bool {
        self.verdict && self.depth_checked == self.m_requested
    }
}

/// Applies `L` up to `m` times and checks `>=_q 0` at each level. Stops early
/// when the sequence runs out; `depth_checked` records how far it got.
pub fn is_m_q_log_convex(seq: &[Poly], m: usize) -> LogConvexReport {
    let mut current = seq.to_vec();
    let mut depth = 0;
    for level in 1..=m {
        let Ok(next) = l_operator(&current) else { break };
        depth = level;
        if let Some(i) = next.iter().position(|p| !p.is_q_nonneg()) {
            return LogConvexReport {
                m_requested: m,
                depth_checked: depth,
                verdict: false,
                failure: Some(LogConvexFailure {
                    level,
                    index: i + level,
                    value: next[i].clone(),
                }),
            };
        }
        current = next;
    }
    LogConvexReport {
        m_requested: m,
        depth_checked: depth,
        verdict: true,
        failure: None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Order {
    Order2,
    Order3,
}

impl Order {
    pub fn from_level(r: usize) -> Result<Order> {
        match r {
            2 => Ok(Order::Order2),
            3 => Ok(Order::Order3),
            other => Err(Error::BadIndices(format!("order must be 2 or 3, got {other}"))),
        }
    }

    pub fn level(self) -> usize {
        match self {
            Order::Order2 => 2,
            Order::Order3 => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Index at which the condition fails, when the criterion is indexed.
    pub k: Option<usize>,
    pub condition: String,
    pub residual: Poly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymbolicResidual {
    pub condition: String,
    /// Valid for every `k >= valid_from`.
    pub valid_from: usize,
    pub residual: String,
    /// All coefficients in `k` are `>=_q 0`, so the condition holds for
    /// every `k >= valid_from`.
    pub nonneg_in_k: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriterionVerdict {
    pub criterion: String,
    pub verdict: bool,
    pub k_range_checked: usize,
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub symbolic: Vec<SymbolicResidual>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CriterionVerdict {
    fn new(criterion: &str, k_range_checked: usize, witness: Option<Witness>) -> Self {
        CriterionVerdict {
            criterion: criterion.to_string(),
            verdict: witness.is_none(),
            k_range_checked,
            witness,
            symbolic: Vec::new(),
            note: None,
        }
    }
}

pub const TWO_TERM: &str = "g_k g_{k+1} - h_{k+1}";
pub const THREE_TERM: &str = "g_k g_{k+1} g_{k+2} - h_{k+1} g_{k+2} - g_k h_{k+2}";
pub const FIVE_TERM: &str = "g_k g_{k+1} g_{k+2} g_{k+3} - g_{k+2} g_{k+3} h_{k+1} - g_k g_{k+3} h_{k+2} - g_k g_{k+1} h_{k+3} + h_{k+1} h_{k+3}";

/// Residuals as a function of the sequences at `k, k+1, ...`. Written once
/// over a ring so the per-`k` and symbolic paths share the formula.
trait Ring: Clone {
    fn mul(&self, o: &Self) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
}

impl Ring for Poly {
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
}

impl Ring for KPoly {
    fn mul(&self, o: &Self) -> Self {
        KPoly::mul(self, o)
    }
    fn add(&self, o: &Self) -> Self {
        KPoly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        KPoly::sub(self, o)
    }
}

/// `g[i]` is `g_{k+i}`, `h[i]` is `h_{k+i}`.
fn two_term<R: Ring>(g: &[R], h: &[R]) -> R {
    g[0].mul(&g[1]).sub(&h[1])
}

fn three_term<R: Ring>(g: &[R], h: &[R]) -> R {
    g[0].mul(&g[1]).mul(&g[2]).sub(&h[1].mul(&g[2])).sub(&g[0].mul(&h[2]))
}

fn five_term<R: Ring>(g: &[R], h: &[R]) -> R {
    g[0].mul(&g[1])
        .mul(&g[2])
        .mul(&g[3])
        .sub(&g[2].mul(&g[3]).mul(&h[1]))
        .sub(&g[0].mul(&g[3]).mul(&h[2]))
        .sub(&g[0].mul(&g[1]).mul(&h[3]))
        .add(&h[1].mul(&h[3]))
}

type Residual<R> = fn(&[R], &[R]) -> R;

fn conditions<R: Ring>(which: Order) -> Vec<(&'static str, Residual<R>)> {
    match which {
        Order::Order2 => vec![
            (TWO_TERM, two_term::<R> as Residual<R>),
            (THREE_TERM, three_term::<R> as Residual<R>),
        ],
        Order::Order3 => vec![
            (TWO_TERM, two_term::<R> as Residual<R>),
            (FIVE_TERM, five_term::<R> as Residual<R>),
        ],
    }
}

/// Residuals of the condition(s) at `k` for an explicit spec.
pub fn thm_main_residuals(spec: &JacobiSpec, which: Order, k: usize) -> Vec<(&'static str, Poly)> {
    let g: Vec<Poly> = (0..4).map(|i| spec.g(k + i)).collect();
    let h: Vec<Poly> = (0..4).map(|i| spec.h(k + i)).collect();
    conditions::<Poly>(which)
        .into_iter()
        .map(|(name, f)| (name, f(&g, &h)))
        .collect()
}

/// The residuals as polynomials in `k`, valid from `spec.generic_from()`.
pub fn symbolic_residuals(spec: &JacobiSpec, which: Order) -> Vec<SymbolicResidual> {
    let g: Vec<KPoly> = (0..4).map(|i| spec.g.shift_k(i).to_kpoly()).collect();
    let h: Vec<KPoly> = (0..4).map(|i| spec.h.shift_k(i).to_kpoly()).collect();
    conditions::<KPoly>(which)
        .into_iter()
        .map(|(name, f)| {
            let r = f(&g, &h);
            SymbolicResidual {
                condition: name.to_string(),
                valid_from: spec.generic_from(),
                residual: r.to_string(),
                nonneg_in_k: r.is_nonneg_coefficientwise(),
            }
        })
        .collect()
}

/// Checks the main criterion for `k = 0..=k_max`: the two-term condition
/// together with the three-term condition for order 2, or with the
/// five-term condition for order 3. The two-term condition cannot be dropped
/// at order 2: `g = 0`, `h = 1` has zero three-term residual but expands to
/// `1, 0, 1, 0, ...`.
pub fn check_thm_main(spec: &CoeffSeqSpec, which: Order, k_max: usize) -> Result<CriterionVerdict> {
    let j = spec.as_jacobi()?;
    let witness = (0..=k_max).find_map(|k| {
        thm_main_residuals(j, which, k)
            .into_iter()
            .find(|(_, r)| !r.is_q_nonneg())
            .map(|(name, residual)| Witness {
                k: Some(k),
                condition: name.to_string(),
                residual,
            })
    });
    let mut v = CriterionVerdict::new(
        match which {
            Order::Order2 => "thm-main/order2",
            Order::Order3 => "thm-main/order3",
        },
        k_max + 1,
        witness,
    );
    v.symbolic = symbolic_residuals(j, which);
    Ok(v)
}

fn constant_of(p: &Poly, name: &str) -> Result<Poly> {
    if p.is_constant() {
        Ok(p.clone())
    } else {
        Err(Error::NotConstant(format!("{name} = {p}")))
    }
}

/// Numeric triangle `(e, g, h)`: requires `g >= e >= 0`, `h >= 0` and
/// `ge >= r h` for r-q-log-convexity of the row generating functions.
pub fn check_riordan(e: &Poly, g: &Poly, h: &Poly, r: usize) -> Result<CriterionVerdict> {
    let (e, g, h) = (constant_of(e, "e")?, constant_of(g, "g")?, constant_of(h, "h")?);
    if !(2..=3).contains(&r) {
        return Err(Error::BadIndices(format!("r must be 2 or 3, got {r}")));
    }
    let rh = h.scale(&crate::poly::rat(r as i64));
    let checks = [
        ("g - e", &g - &e),
        ("e", e.clone()),
        ("h", h.clone()),
        ("ge - rh", &(&g * &e) - &rh),
    ];
    let witness = checks
        .into_iter()
        .find(|(_, v)| !v.is_q_nonneg())
        .map(|(name, residual)| Witness {
            k: None,
            condition: name.to_string(),
            residual,
        });
    Ok(CriterionVerdict::new(&format!("riordan/r{r}"), 1, witness))
}

/// Closed-form parameters `(a, s, t)`. Order 2 needs `as >=_q 2t`; order 3
/// needs `as >=_q t` and `as^3 - 2ast - s^2 t + t^2 >=_q 0`. The hypothesis
/// `s >=_q a >=_q 0`, `t >=_q 0` is checked first and a violation is
/// reported as a false verdict with a note.
pub fn check_gf_criterion(a: &Poly, s: &Poly, t: &Poly, which: Order) -> CriterionVerdict {
    let name = match which {
        Order::Order2 => "gf/order2",
        Order::Order3 => "gf/order3",
    };
    let pre = [("s - a", s - a), ("a", a.clone()), ("t", t.clone())];
    if let Some((cond, residual)) = pre.into_iter().find(|(_, v)| !v.is_q_nonneg()) {
        let mut v = CriterionVerdict::new(
            name,
            1,
            Some(Witness {
                k: None,
                condition: cond.to_string(),
                residual,
            }),
        );
        v.note = Some("precondition failed".into());
        return v;
    }
    let as_ = a * s;
    let checks: Vec<(&str, Poly)> = match which {
        Order::Order2 => vec![("as - 2t", &as_ - &t.scale(&crate::poly::rat(2)))],
        Order::Order3 => {
            let s2 = s * s;
            let quartic = &(&(&(&as_ * &s2) - &(&as_ * t).scale(&crate::poly::rat(2))) - &(&s2 * t)) + &(t * t);
            vec![("as - t", &as_ - t), ("as^3 - 2ast - s^2 t + t^2", quartic)]
        }
    };
    let witness = checks
        .into_iter()
        .find(|(_, v)| !v.is_q_nonneg())
        .map(|(cond, residual)| Witness {
            k: None,
            condition: cond.to_string(),
            residual,
        });
    CriterionVerdict::new(name, 1, witness)
}

/// `t_n >=_q 0` for `n = 1..=k_max`, sufficient for 3-q-log-convexity of the
/// S-fraction expansion.
pub fn check_stieltjes(spec: &CoeffSeqSpec, k_max: usize) -> Result<CriterionVerdict> {
    let s = spec.as_stieltjes()?;
    Ok(check_stieltjes_spec(s, k_max))
}

pub fn check_stieltjes_spec(s: &StieltjesSpec, k_max: usize) -> CriterionVerdict {
    let witness = (1..=k_max).find_map(|n| {
        let t = s.t(n);
        (!t.is_q_nonneg()).then(|| Witness {
            k: Some(n),
            condition: "t_n".into(),
            residual: t,
        })
    });
    CriterionVerdict::new("stieltjes", k_max, witness)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub k: usize,
    /// `L^2(a_k) = a_k det[a_{k-2+i+j}]_{3x3}`; needs `2 <= k`, `k + 2 < len`.
    pub l2: Option<bool>,
    /// `L^3(a_k) = L(a_k) (a_k^2 det[a_{k-3+i+j}]_{4x4}
    ///   + det[a_{k-3+i+j}]_{3x3} det[a_{k-1+i+j}]_{3x3})`;
    /// needs `3 <= k`, `k + 3 < len`.
    pub l3: Option<bool>,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.l2 != Some(false) && self.l3 != Some(false)
    }
}

fn hankel_det(seq: &[Poly], size: usize, offset: usize) -> Poly {
    hankel(seq, size, offset)
        .and_then(|m| m.det())
        .expect("window checked by caller")
}

/// Evaluates both determinant identities at index `k` where they fit.
pub fn l2_l3_identity_check(seq: &[Poly], k: usize) -> Result<IdentityCheck> {
    if k < 2 || k + 2 >= seq.len() {
        return Err(Error::InsufficientLength {
            needed: k.max(2) + 3,
            len: seq.len(),
        });
    }
    // L^j(a) at index k lives at position k - j of the j-th image
    let l1 = l_operator(seq)?;
    let l2 = l_operator(&l1)?;
    let l2_lhs = &l2[k - 2];
    let l2_rhs = &seq[k] * &hankel_det(seq, 3, k - 2);
    let l3 = if k >= 3 && k + 3 < seq.len() {
        let l3_lhs = &l_operator(&l2)?[k - 3];
        let a2 = &seq[k] * &seq[k];
        let inner = &(&a2 * &hankel_det(seq, 4, k - 3))
            + &(&hankel_det(seq, 3, k - 3) * &hankel_det(seq, 3, k - 1));
        Some(*l3_lhs == &l1[k - 1] * &inner)
    } else {
        None
    };
    Ok(IdentityCheck {
        k,
        l2: Some(*l2_lhs == l2_rhs),
        l3,
    })
}

/// `[x_{i+j+2} x_{i+j} - x_{i+j+1}^2]`, the Hankel matrix of `L(x)`.
pub fn l_image_hankel(seq: &[Poly], size: usize) -> Result<PolyMatrix> {
    hankel(&l_operator(seq)?, size, 0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Candidate {
    pub trial: u64,
    pub spec: SpecFile,
    pub witness: TpWitness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExplorationReport {
    pub trials: u64,
    pub seed: u64,
    pub window: usize,
    pub order: usize,
    /// Trials whose own Hankel window was not q-TP_{order+1}. Expected empty
    /// for S-fractions with `>=_q 0` coefficients.
    pub hypothesis_failures: Vec<u64>,
    /// Window-level failures only; the statement concerns infinite matrices.
    pub candidates: Vec<Candidate>,
}

enum TrialOutcome {
    Fine,
    HypothesisFailed,
    Candidate(Candidate),
}

/// The random spec used by trial `trial` of a run seeded with `seed`.
pub fn trial_spec(seed: u64, trial: u64) -> StieltjesSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    random_stieltjes(&mut rng)
}

/// For random `>=_q 0` S-fractions `x`, checks that the `window x window`
/// Hankel of `x` is q-TP_{order+1} and then whether the Hankel of `L(x)` is
/// q-TP_order on the same window size.
pub fn explore_conjecture(trials: u64, seed: u64, window: usize, order: usize) -> Result<ExplorationReport> {
    if order == 0 || order > 3 {
        return Err(Error::BadIndices(format!("order must be in 1..=3, got {order}")));
    }
    if window == 0 {
        return Err(Error::BadIndices("window must be positive".into()));
    }
    let outcomes: Vec<(u64, TrialOutcome)> = (0..trials)
        .into_par_iter()
        .map(|trial| -> Result<(u64, TrialOutcome)> {
            let spec = trial_spec(seed, trial);
            let x = generate_jacobi(&contract_stieltjes(&spec), 2 * window).first_column();
            let h = hankel(&x, window, 0)?;
            if !is_q_tp(&h, order + 1, TpMode::All)?.verdict {
                return Ok((trial, TrialOutcome::HypothesisFailed));
            }
            let report = is_q_tp(&l_image_hankel(&x, window)?, order, TpMode::All)?;
            Ok((
                trial,
                match report.witness {
                    None => TrialOutcome::Fine,
                    Some(witness) => TrialOutcome::Candidate(Candidate {
                        trial,
                        spec: SpecFile::from(&CoeffSeqSpec::Stieltjes(spec)),
                        witness,
                    }),
                },
            ))
        })
        .collect::<Result<_>>()?;
    let mut report = ExplorationReport {
        trials,
        seed,
        window,
        order,
        hypothesis_failures: Vec::new(),
        candidates: Vec::new(),
    };
    for (trial, outcome) in outcomes {
        match outcome {
            TrialOutcome::Fine => {}
            TrialOutcome::HypothesisFailed => report.hypothesis_failures.push(trial),
            TrialOutcome::Candidate(c) => report.candidates.push(c),
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cfrac::expand;
    use crate::poly::rat;
    use crate::seqspec::random::random_jacobi;
    use crate::seqspec::{family_spec, FamilyId};
    use proptest::prelude::*;

    fn p(text: &str) -> Poly {
        text.parse().unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Poly> {
        v.iter().map(|&c| Poly::from_int(c)).collect()
    }

    #[test]
    fn l_operator_examples() {
        assert_eq!(l_operator(&ints(&[1, 2, 5, 16, 61])).unwrap(), ints(&[1, 7, 49]));
        assert_eq!(l_operator(&ints(&[1, 1, 1, 1])).unwrap(), ints(&[0, 0]));
        let geo: Vec<Poly> = (0..4).map(|i| Poly::q().pow(i)).collect();
        assert_eq!(l_operator(&geo).unwrap(), ints(&[0, 0]));
        assert!(l_operator(&ints(&[1, 2])).is_err());
    }

    #[test]
    fn log_convex_examples() {
        let bell = expand(&family_spec(FamilyId::Bell).unwrap(), 10).unwrap();
        assert!(is_m_q_log_convex(&bell, 3).is_complete());
        let euler = ints(&[1, 1, 2, 5, 16, 61, 272, 1385, 7936, 50521, 353792]);
        assert!(is_m_q_log_convex(&euler, 2).is_complete());
        let r = is_m_q_log_convex(&ints(&[1, 1, 1]), 1);
        assert!(r.is_complete());
        let r = is_m_q_log_convex(&ints(&[1, 1, 1]), 3);
        assert!(r.verdict && r.depth_checked == 1 && !r.is_complete());
        let r = is_m_q_log_convex(&ints(&[1, 2, 3, 4]), 2);
        let f = r.failure.unwrap();
        assert_eq!((f.level, f.index, f.value), (1, 1, Poly::from_int(-1)));
    }

    #[test]
    fn bell_five_term_quartic() {
        let spec = family_spec(FamilyId::Bell).unwrap();
        let v = check_thm_main(&spec, Order::Order3, 20).unwrap();
        assert!(v.verdict);
        let five = v.symbolic.iter().find(|s| s.condition == FIVE_TERM).unwrap();
        assert_eq!(five.residual, "k^4 + (6 + q)*k^3 + (11 + 3*q + q^2)*k^2 + (6 + 2*q + q^2 + q^3)*k + q^4");
        assert!(five.nonneg_in_k);
        assert_eq!(five.valid_from, 0);
    }

    #[test]
    fn euler_residuals() {
        let spec = family_spec(FamilyId::EulerNumbers).unwrap();
        let j = spec.as_jacobi().unwrap();
        for k in 0..=50 {
            assert!(thm_main_residuals(j, Order::Order2, k)[1].1.is_zero());
        }
        let v = check_thm_main(&spec, Order::Order2, 50).unwrap();
        assert!(v.verdict);
        assert_eq!(v.symbolic[1].residual, "0");
        let v = check_thm_main(&spec, Order::Order3, 10).unwrap();
        let w = v.witness.unwrap();
        assert_eq!((w.k, w.condition.as_str(), w.residual), (Some(0), FIVE_TERM, Poly::from_int(-6)));
    }

    #[test]
    fn symbolic_matches_instances() {
        for id in FamilyId::ALL {
            let Ok(CoeffSeqSpec::Jacobi(j)) = family_spec(id) else { continue };
            for which in [Order::Order2, Order::Order3] {
                let g: Vec<KPoly> = (0..4).map(|i| j.g.shift_k(i).to_kpoly()).collect();
                let h: Vec<KPoly> = (0..4).map(|i| j.h.shift_k(i).to_kpoly()).collect();
                for (ci, (_, f)) in conditions::<KPoly>(which).into_iter().enumerate() {
                    let sym = f(&g, &h);
                    for k in j.generic_from()..j.generic_from() + 6 {
                        assert_eq!(sym.eval_k(k as u64), thm_main_residuals(&j, which, k)[ci].1, "{id} {k}");
                    }
                }
            }
        }
    }

    #[test]
    fn riordan_examples() {
        let c = Poly::from_int;
        assert!(check_riordan(&c(2), &c(2), &c(1), 3).unwrap().verdict);
        let v = check_riordan(&c(1), &c(2), &c(1), 3).unwrap();
        assert_eq!(v.witness.unwrap().residual, c(-1));
        let v = check_riordan(&c(1), &c(2), &c(2), 2).unwrap();
        assert_eq!(v.witness.unwrap().residual, c(-2));
        assert!(matches!(check_riordan(&Poly::q(), &c(2), &c(1), 2), Err(Error::NotConstant(_))));
    }

    #[test]
    fn riordan_transform_residual() {
        // k = 0 residual of the transformed spec is (ge - h)q + eg^2 - gh - eh
        for (e, g, h) in [(1, 2, 1), (2, 2, 1), (1, 2, 2), (0, 3, 5)] {
            let spec = crate::triangle::row_genfun_spec(&Poly::from_int(e), &Poly::from_int(g), &Poly::from_int(h)).unwrap();
            let r = &thm_main_residuals(&spec, Order::Order2, 0)[1].1;
            assert_eq!(*r, Poly::from_ints(&[e * g * g - g * h - e * h, g * e - h]));
        }
    }

    #[test]
    fn gf_examples() {
        let one = Poly::one();
        assert!(check_gf_criterion(&one, &Poly::from_int(2), &one, Order::Order2).verdict);
        let v = check_gf_criterion(&one, &one, &one, Order::Order2);
        assert_eq!(v.witness.unwrap().residual, Poly::from_int(-1));
        let v = check_gf_criterion(&p("q"), &p("1 + q"), &p("q"), Order::Order3);
        assert!(v.verdict);
        let v = check_gf_criterion(&Poly::from_int(3), &one, &one, Order::Order2);
        assert_eq!(v.note.as_deref(), Some("precondition failed"));
        assert!(!v.verdict);
    }

    #[test]
    fn stieltjes_examples() {
        assert!(check_stieltjes(&family_spec(FamilyId::EllipticCn).unwrap(), 30).unwrap().verdict);
        let bad: CoeffSeqSpec = StieltjesSpec::new("q - 1", "q - 1").unwrap().into();
        assert_eq!(check_stieltjes(&bad, 5).unwrap().witness.unwrap().k, Some(1));
        let ones: CoeffSeqSpec = StieltjesSpec::new("1", "1").unwrap().into();
        assert!(check_stieltjes(&ones, 30).unwrap().verdict);
        assert!(check_stieltjes(&family_spec(FamilyId::Bell).unwrap(), 3).is_err());
    }

    #[test]
    fn identity_examples() {
        let cat = ints(&[1, 1, 2, 5, 14, 42, 132, 429]);
        let c = l2_l3_identity_check(&cat, 3).unwrap();
        assert_eq!((c.l2, c.l3), (Some(true), Some(true)));
        let bell = expand(&family_spec(FamilyId::Bell).unwrap(), 6).unwrap();
        let c = l2_l3_identity_check(&bell, 2).unwrap();
        assert_eq!((c.l2, c.l3), (Some(true), None));
        assert!(l2_l3_identity_check(&cat, 1).is_err());
        assert!(l2_l3_identity_check(&cat, 6).is_err());
    }

    #[test]
    fn explorer_examples() {
        let empty = explore_conjecture(0, 1, 5, 1).unwrap();
        assert!(empty.candidates.is_empty() && empty.hypothesis_failures.is_empty());
        let cat = expand(&StieltjesSpec::new("1", "1").unwrap().into(), 4).unwrap();
        let li = l_image_hankel(&cat, 2).unwrap();
        assert_eq!(*li.get(0, 0), Poly::one());
        let a = explore_conjecture(20, 42, 4, 1).unwrap();
        assert_eq!(a, explore_conjecture(20, 42, 4, 1).unwrap());
        assert!(a.candidates.is_empty());
        assert!(explore_conjecture(1, 1, 4, 4).is_err());
    }

    #[test]
    fn main_criterion_implies_log_convexity() {
        use rand::SeedableRng;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut passed = [0, 0];
        for _ in 0..60 {
            let spec: CoeffSeqSpec = random_jacobi(&mut rng).into();
            let seq = expand(&spec, 12).unwrap();
            for (i, which) in [Order::Order2, Order::Order3].into_iter().enumerate() {
                if check_thm_main(&spec, which, 12).unwrap().verdict {
                    passed[i] += 1;
                    assert!(is_m_q_log_convex(&seq, which.level()).verdict, "{}", spec.to_json());
                }
            }
        }
        assert!(passed[0] > 0 && passed[1] > 0, "{passed:?}");
    }

    #[test]
    fn three_term_alone_is_not_enough() {
        let spec: CoeffSeqSpec = JacobiSpec::new("0", "1").unwrap().into();
        let j = spec.as_jacobi().unwrap();
        assert!((0..10).all(|k| thm_main_residuals(j, Order::Order2, k)[1].1.is_zero()));
        assert!(!check_thm_main(&spec, Order::Order2, 10).unwrap().verdict);
        assert!(!is_m_q_log_convex(&expand(&spec, 6).unwrap(), 1).verdict);
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(-4i64..=4, 0..3).prop_map(|c| Poly::from_ints(&c))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn identities_hold_for_any_sequence(seq in prop::collection::vec(small_poly(), 7..9), k in 3usize..4) {
            let c = l2_l3_identity_check(&seq, k).unwrap();
            prop_assert_eq!(c.l2, Some(true));
            prop_assert_eq!(c.l3, Some(true));
        }

        #[test]
        fn l_of_scaled_sequence(seq in prop::collection::vec(small_poly(), 3..6), c in 1i64..4) {
            let scaled: Vec<Poly> = seq.iter().map(|p| p.scale(&rat(c))).collect();
            let lhs = l_operator(&scaled).unwrap();
            let rhs: Vec<Poly> = l_operator(&seq).unwrap().iter().map(|p| p.scale(&rat(c * c))).collect();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
