mod common;

use common::{jfrac_series, sfrac_series};
use qlogcvx::cfrac::{contract_stieltjes, expand};
use qlogcvx::logcvx::{check_stieltjes, check_thm_main, Order};
use qlogcvx::posmat::{hankel, is_q_tp, TpMode};
use qlogcvx::seqspec::random::{random_jacobi, random_stieltjes};
use qlogcvx::{family_spec, is_m_q_log_convex, CoeffSeqSpec, FamilyId, Poly};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TERMS: usize = 14;

fn jacobi_columns(spec: &qlogcvx::JacobiSpec, order: usize) -> (Vec<Poly>, Vec<Poly>) {
    let g = (0..order).map(|i| spec.g(i)).collect();
    let h = (1..=order).map(|i| spec.h(i)).collect();
    (g, h)
}

#[test]
fn expansion_matches_truncated_fraction() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..40 {
        let spec = random_jacobi(&mut rng);
        let (g, h) = jacobi_columns(&spec, 10);
        assert_eq!(expand(&spec.clone().into(), 9).unwrap(), jfrac_series(&g, &h, 10));
    }
    for id in FamilyId::ALL {
        if let Ok(CoeffSeqSpec::Jacobi(spec)) = family_spec(id) {
            let (g, h) = jacobi_columns(&spec, 9);
            assert_eq!(expand(&spec.into(), 8).unwrap(), jfrac_series(&g, &h, 9), "{id}");
        }
    }
}

#[test]
fn contraction_preserves_the_series() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..40 {
        let s = random_stieltjes(&mut rng);
        let t: Vec<Poly> = (1..=12).map(|n| s.t(n)).collect();
        let (g, h) = jacobi_columns(&contract_stieltjes(&s), 11);
        assert_eq!(sfrac_series(&t, 11), jfrac_series(&g, &h, 11));
    }
}

#[test]
fn order2_criterion_implies_2_log_convexity() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut passed = 0;
    for i in 0..220 {
        let spec: CoeffSeqSpec = random_jacobi(&mut rng).into();
        if check_thm_main(&spec, Order::Order2, TERMS).unwrap().verdict {
            passed += 1;
            let terms = expand(&spec, TERMS).unwrap();
            let r = is_m_q_log_convex(&terms, 2);
            assert!(r.is_complete(), "spec {i}: {} {r:?}", spec.to_json());
        }
    }
    assert!(passed >= 50, "only {passed} specs met the criterion");
}

#[test]
fn order3_criterion_implies_3_log_convexity() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut passed = 0;
    for i in 0..220 {
        let spec: CoeffSeqSpec = random_jacobi(&mut rng).into();
        if check_thm_main(&spec, Order::Order3, TERMS).unwrap().verdict {
            passed += 1;
            let terms = expand(&spec, TERMS).unwrap();
            let r = is_m_q_log_convex(&terms, 3);
            assert!(r.is_complete(), "spec {i}: {} {r:?}", spec.to_json());
        }
    }
    assert!(passed >= 50, "only {passed} specs met the criterion");
}

#[test]
fn nonnegative_stieltjes_coefficients_give_3_log_convexity() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in 0..200 {
        let spec: CoeffSeqSpec = random_stieltjes(&mut rng).into();
        assert!(check_stieltjes(&spec, TERMS).unwrap().verdict);
        let terms = expand(&spec, 12).unwrap();
        let r = is_m_q_log_convex(&terms, 3);
        assert!(r.is_complete(), "spec {i}: {} {r:?}", spec.to_json());
    }
}

#[test]
fn order2_criterion_gives_q_tp3_hankel_window() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..60 {
        let spec: CoeffSeqSpec = random_jacobi(&mut rng).into();
        if !check_thm_main(&spec, Order::Order2, 12).unwrap().verdict {
            continue;
        }
        let terms = expand(&spec, 10).unwrap();
        assert!(is_q_tp(&hankel(&terms, 4, 0).unwrap(), 3, TpMode::All).unwrap().verdict);
    }
}
