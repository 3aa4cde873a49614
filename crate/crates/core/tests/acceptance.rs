//! Acceptance gate: one test per headline criterion, each printing a single
//! PASS/FAIL line. Run with `cargo test --test acceptance`.

use holonomy_lab_core::curvature::{
    ricci_components, riemann, Frame, RICCI_Q_SIGN,
};
use holonomy_lab_core::exterior::scalar::rat;
use holonomy_lab_core::exterior::{ExactRat, FormExpr, Jet, Poly};
use holonomy_lab_core::holonomy::{build_omega, check_closed, holonomy_dimension};
use holonomy_lab_core::liealg::{build_algebra, Basis};
use holonomy_lab_core::metrics::{
    boundary_slope, check_alpha0_matches_page_pope, check_alpha1_matches_hyperkahler,
    check_n1_matches_star, check_residual_vanishes_exactly, integrate_ode, MetricAnsatz,
    RadialProfile,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

struct Gate(&'static str, bool);

impl Drop for Gate {
    fn drop(&mut self) {
        println!(
            "ACCEPTANCE {}: {}",
            self.0,
            if self.1 { "PASS" } else { "FAIL" }
        );
    }
}

#[test]
fn criterion_1_ricci_flatness() {
    let mut gate = Gate("1 ricci-flatness", false);
    for n in [1usize, 2, 3] {
        let alg = build_algebra(n).unwrap();
        for alpha in [0.0, 0.3, 0.7, 1.0] {
            let metric = MetricAnsatz::family(n, alpha).unwrap();
            for r in [1.05, 1.5, 2.0, 3.0, 5.0] {
                let frame = Frame::from_metric(&metric, &alg, r).unwrap();
                let curv = riemann(&frame, &alg).unwrap();
                let resid = curv.max_ric() / (1.0 + curv.max_riem);
                assert!(
                    resid <= 1e-9,
                    "max|Ric| = {:.3e} at n={} alpha={} r={}",
                    resid,
                    n,
                    alpha,
                    r
                );
            }
        }
    }
    gate.1 = true;
}

#[test]
fn criterion_2_ricci_component_structure() {
    let mut gate = Gate("2 ricci-component-structure", false);
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_817);
    let mut tried = 0usize;
    while tried < 20 {
        let n = rng.gen_range(1..=3usize);
        let alpha: f64 = rng.gen_range(0.05..0.95);
        let r: f64 = rng.gen_range(1.3..4.0);
        // random positive non-solution profile u = c0 + c1/r + c2/r²
        let (c0, c1, c2) = (
            rng.gen_range(0.4..1.4),
            rng.gen_range(-0.3..0.3),
            rng.gen_range(-0.3..0.3),
        );
        let profile = RadialProfile::custom(
            n,
            alpha,
            Arc::new(move |x: Jet| {
                Jet::constant(c0) + Jet::constant(c1) / x + Jet::constant(c2) / (x * x)
            }),
        )
        .unwrap();
        if profile.u(r).unwrap().v <= 0.05 {
            continue;
        }
        // skip draws that accidentally nearly solve the equation
        let q = profile.ode_residual(r).unwrap();
        if q.abs() < 1e-3 {
            continue;
        }
        tried += 1;
        let metric = MetricAnsatz::from_profile(profile);
        let alg = build_algebra(n).unwrap();
        let (comps, _) = ricci_components(&metric, &alg, r, 1e-7).unwrap();
        let p = comps.proportionality_products(alpha, r);
        let scale = p.iter().fold(f64::MIN, |m, x| m.max(x.abs()));
        assert!(
            (p[0] - p[1]).abs() / scale < 1e-9 && (p[0] - p[2]).abs() / scale < 1e-9,
            "products disagree: {:?} at n={} alpha={} r={}",
            p,
            n,
            alpha,
            r
        );
        let expect = RICCI_Q_SIGN * 2.0 * q;
        assert!(
            (p[0] - expect).abs() / scale < 1e-9,
            "common value {:.6e} vs sign·2Q̃ = {:.6e}",
            p[0],
            expect
        );
    }
    gate.1 = true;
}

#[test]
fn criterion_3_second_order_components_vanish() {
    let mut gate = Gate("3 R0-Rf-vanish-on-solution", false);
    for (n, alpha, r) in [(1, 0.5, 2.0), (2, 0.3, 1.7), (3, 0.8, 1.4), (2, 0.0, 3.0)] {
        let alg = build_algebra(n).unwrap();
        let metric = MetricAnsatz::family(n, alpha).unwrap();
        let (comps, curv) = ricci_components(&metric, &alg, r, 1e-9).unwrap();
        let scale = 1.0 + curv.max_riem;
        assert!(comps.r0.abs() / scale <= 1e-9, "R_0 = {:.3e}", comps.r0);
        assert!(comps.rf.abs() / scale <= 1e-9, "R_f = {:.3e}", comps.rf);
    }
    gate.1 = true;
}

#[test]
fn criterion_4_exact_identities() {
    let mut gate = Gate("4 exact-identities", false);
    let alphas = [rat(0, 1), rat(1, 3), rat(1, 2), rat(9, 10), rat(1, 1)];
    for n in 1..=4usize {
        let alg = build_algebra(n).unwrap();
        for a in &alphas {
            let omega = build_omega(n, a).unwrap();
            assert!(check_closed(&omega, &alg).0, "dΩ ≠ 0 at n={} α={}", n, a);
            assert!(
                check_residual_vanishes_exactly(n, a),
                "residual ≠ 0 at n={} α={}",
                n,
                a
            );
        }
        assert!(check_alpha1_matches_hyperkahler(n).unwrap());
        assert!(check_alpha0_matches_page_pope(n).unwrap());
    }
    for a in &alphas[..4] {
        assert!(check_n1_matches_star(a).unwrap());
    }
    gate.1 = true;
}

#[test]
fn criterion_5_ode_matches_closed_form() {
    let mut gate = Gate("5 ode-vs-closed-form", false);
    let combos: Vec<(usize, f64)> = vec![
        (1, 0.0),
        (1, 0.3),
        (1, 0.6),
        (1, 0.9),
        (2, 0.0),
        (2, 0.4),
        (2, 0.8),
        (3, 0.0),
        (3, 0.5),
        (3, 0.9),
        (4, 0.2),
        (4, 0.7),
    ];
    assert_eq!(combos.len(), 12);
    for (n, alpha) in combos {
        let start = std::time::Instant::now();
        let p = RadialProfile::closed_form(n, alpha).unwrap();
        let r0 = 1.001;
        let u0 = p.u(r0).unwrap().v;
        let samples = integrate_ode(n, alpha, r0, u0, 4.0, 1e-10).unwrap();
        let last = samples.last().unwrap();
        let truth = p.u(last.r).unwrap().v;
        let err = ((last.u - truth) / (1.0 + truth.abs())).abs();
        assert!(err <= 1e-8, "n={} alpha={} err={:.3e}", n, alpha, err);
        assert!(
            start.elapsed().as_secs_f64() < 1.0,
            "n={} alpha={} took {:?}",
            n,
            alpha,
            start.elapsed()
        );
    }
    gate.1 = true;
}

#[test]
fn criterion_6_holonomy_dimensions() {
    let mut gate = Gate("6 holonomy-dimensions", false);
    let cases: Vec<(usize, f64, usize)> = vec![
        (1, 0.0, 15),
        (1, 0.3, 15),
        (1, 0.5, 15),
        (1, 0.7, 15),
        (1, 1.0, 10),
        (2, 0.0, 35),
        (2, 0.4, 35),
        (2, 0.8, 35),
        (2, 1.0, 21),
    ];
    for (n, alpha, want) in cases {
        let alg = build_algebra(n).unwrap();
        let metric = MetricAnsatz::family(n, alpha).unwrap();
        let est = holonomy_dimension(&metric, &alg, &[1.4, 2.2], 1e-8).unwrap();
        assert!(est.stabilized, "closure did not stabilize at n={} α={}", n, alpha);
        assert!(
            est.spectral_gap >= 1e3,
            "gap {:.3e} too small at n={} α={}",
            est.spectral_gap,
            n,
            alpha
        );
        assert_eq!(est.dim, want, "dim at n={} α={}: {:?}", n, alpha, est);
    }
    gate.1 = true;
}

#[test]
fn criterion_7_boundary_slope() {
    let mut gate = Gate("7 boundary-slope", false);
    for n in [1usize, 2, 3] {
        for alpha in [0.0, 0.5, 0.9] {
            let s = boundary_slope(n, alpha).unwrap();
            let expect = 2.0 * (n as f64 + 1.0);
            assert!(
                (s.slope - expect).abs() <= 1e-6,
                "slope {} vs {} at n={} α={}",
                s.slope,
                expect,
                n,
                alpha
            );
            assert!(!s.hyperkahler_bolt);
        }
    }
    gate.1 = true;
}

#[test]
fn criterion_8_structural_self_tests() {
    let mut gate = Gate("8 structural-self-tests", false);
    use num::Zero;
    // Jacobi identity, exact
    for n in 1..=3usize {
        let alg = build_algebra(n).unwrap();
        assert!(alg.jacobi_residual().is_zero());
    }
    // d² = 0 on every generator and on a mixed radial-coefficient form
    let alg = build_algebra(2).unwrap();
    let basis = Basis::new(2);
    for g in 0..basis.dim() {
        let e: FormExpr<ExactRat> = FormExpr::generator(g);
        assert!(e.d(&alg).d(&alg).is_zero(), "d² ≠ 0 on {}", basis.name(g));
    }
    let mut w: FormExpr<ExactRat> = FormExpr::zero(1);
    w.add_term(vec![1], ExactRat::from_poly(Poly::monomial(rat(3, 1), 2)));
    w.add_term(
        vec![4],
        ExactRat::from_poly(&Poly::constant(rat(2, 1)) + &Poly::monomial(rat(-1, 1), 1)),
    );
    assert!(w.d(&alg).d(&alg).is_zero());
    // Leibniz rule on 1-forms
    let a: FormExpr<ExactRat> = FormExpr::generator(2);
    let b: FormExpr<ExactRat> = FormExpr::generator(5);
    let lhs = a.wedge(&b).d(&alg);
    let rhs = a.d(&alg).wedge(&b).add(&a.wedge(&b.d(&alg)).neg());
    assert!(lhs.add(&rhs.neg()).is_zero());
    // Riemann symmetries, first Bianchi, horizontality at a sample point
    let metric = MetricAnsatz::family(2, 0.6).unwrap();
    let frame = Frame::from_metric(&metric, &alg, 1.9).unwrap();
    let curv = riemann(&frame, &alg).unwrap();
    assert!(curv.symmetry_residual() <= 1e-10);
    assert!(curv.bianchi_residual() <= 1e-10);
    assert!(curv.horizontality_residual <= 1e-10);
    gate.1 = true;
}
