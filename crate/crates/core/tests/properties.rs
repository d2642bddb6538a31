use core::f64::consts::FRAC_PI_2;

use proptest::prelude::*;
use wishcond_core::analysis::{integrate_adaptive, CondCdf};
use wishcond_core::densities::{rho_t_theta, RatioDensity};
use wishcond_core::sampling::{
    eig_sym2, form_product, ratio_t, sample_triangular, RngState, SymmetricProduct,
};
use wishcond_core::specfun::gauss_2f1;
use wishcond_core::ModelParams;

fn rel(got: f64, want: f64) -> f64 {
    ((got - want) / want).abs()
}

/// Valid model parameters with `x1 > 0 > x2`, or the mirror when `flip`.
fn model() -> impl Strategy<Value = ModelParams> {
    (
        2u32..=6,
        0.3f64..6.0,
        0.05f64..5.0,
        0.05f64..5.0,
        any::<bool>(),
    )
        .prop_map(|(l, beta, p, q, flip)| {
            let (x1, x2) = if flip { (-p, q) } else { (p, -q) };
            ModelParams::new(l, beta, x1, x2).unwrap()
        })
}

/// Maclaurin series of ₂F₁ with its worst term, for a conditioning check.
fn direct_series(a: f64, b: f64, c: f64, z: f64) -> (f64, f64) {
    let (mut sum, mut term, mut worst) = (1.0, 1.0_f64, 1.0_f64);
    for n in 0..2000 {
        let k = n as f64;
        term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
        sum += term;
        worst = worst.max(term.abs());
        if term.abs() < 1e-18 * sum.abs() {
            break;
        }
    }
    (sum, worst)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn hyp2f1_symmetric_in_upper_parameters(
        a in 0.05f64..40.0, b in 0.05f64..40.0, c in 0.05f64..60.0, z in -1e6f64..0.0,
    ) {
        let ab = gauss_2f1(a, b, c, z).unwrap().value;
        let ba = gauss_2f1(b, a, c, z).unwrap().value;
        prop_assert!(rel(ab, ba) <= 1e-12 || ab == ba, "{ab} {ba}");
    }

    #[test]
    fn hyp2f1_matches_direct_series(
        a in 0.05f64..10.0, b in 0.05f64..10.0, c in 0.5f64..15.0, z in -0.5f64..0.0,
    ) {
        let (direct, worst) = direct_series(a, b, c, z);
        prop_assume!(direct > 0.0 && worst < 1e3 * direct);
        let got = gauss_2f1(a, b, c, z).unwrap().value;
        prop_assert!(rel(got, direct) <= 1e-10, "{got} {direct}");
    }

    #[test]
    fn hyp2f1_in_unit_interval_for_model_parameters(
        l in 2u32..=12, beta in 0.1f64..64.0, z in -1e8f64..0.0,
    ) {
        let bl = beta * f64::from(l);
        let v = gauss_2f1(bl, 0.5 * beta, bl - 0.5 * beta + 1.0, z).unwrap().value;
        prop_assert!((0.0..=1.0).contains(&v), "{v}");
        // strictly positive unless the value is below the smallest double
        let ln = wishcond_core::specfun::ln_gauss_2f1(bl, 0.5 * beta, bl - 0.5 * beta + 1.0, z)
            .unwrap()
            .value;
        prop_assert!(ln.is_finite() && ln <= 0.0);
    }

    #[test]
    fn hyp2f1_decreasing_in_magnitude(
        l in 2u32..=8, beta in 0.2f64..8.0, z in -1e4f64..-1e-3, shrink in 0.01f64..0.99,
    ) {
        let bl = beta * f64::from(l);
        let (a, b, c) = (bl, 0.5 * beta, bl - 0.5 * beta + 1.0);
        let far = gauss_2f1(a, b, c, z).unwrap().value;
        let near = gauss_2f1(a, b, c, z * shrink).unwrap().value;
        prop_assert!(near >= far * (1.0 - 1e-13));
    }

    #[test]
    fn fold_identity(p in model(), s in prop::sample::select(vec![1.0, 2.0, 10.0, 100.0])) {
        let d = RatioDensity::new(&p);
        let direct = d.cond_density(s).unwrap();
        let fold = d.cond_density_fold(s).unwrap();
        prop_assert!(rel(fold, direct) <= 1e-10, "{fold} {direct}");
    }

    #[test]
    fn scale_invariance(p in model(), s in 1.0f64..500.0,
                        k in prop::sample::select(vec![1e-3, 1.0, 1e3])) {
        let scaled = p.with_sigma(k * p.x1(), k * p.x2()).unwrap();
        let a = RatioDensity::new(&p).cond_density(s).unwrap();
        let b = RatioDensity::new(&scaled).cond_density(s).unwrap();
        prop_assert!(rel(b, a) <= 1e-11, "{a} {b}");
    }

    #[test]
    fn sign_flip_invariance(p in model(), s in 1.0f64..500.0) {
        let flipped = p.with_sigma(-p.x1(), -p.x2()).unwrap();
        let a = RatioDensity::new(&p).cond_density(s).unwrap();
        let b = RatioDensity::new(&flipped).cond_density(s).unwrap();
        prop_assert!(rel(b, a) <= 1e-12, "{a} {b}");
    }

    #[test]
    fn symmetric_equidistribution(l in 2u32..=6, beta in 0.3f64..6.0, x in 0.1f64..10.0,
                                  t in 0.01f64..100.0) {
        let p = ModelParams::new(l, beta, x, -x).unwrap();
        let d = RatioDensity::new(&p);
        let at_t = d.rho_t(t).unwrap();
        let mirrored = d.rho_t(1.0 / t).unwrap() / (t * t);
        prop_assert!(rel(mirrored, at_t) <= 1e-10, "{at_t} {mirrored}");
    }

    #[test]
    fn eig_round_trip(d in -1e3f64..1e3, e in -1e3f64..1e3, f in -1e3f64..1e3) {
        let m = SymmetricProduct { d, e, f };
        let r = eig_sym2(&m).unwrap().reconstruct();
        let scale = d.abs().max(e.abs()).max(f.abs()).max(1.0);
        prop_assert!((r.d - d).abs() <= 1e-12 * scale);
        prop_assert!((r.e - e).abs() <= 1e-12 * scale);
        prop_assert!((r.f - f).abs() <= 1e-12 * scale);
    }

    #[test]
    fn sampled_draws_respect_signs_and_constraint(p in model(), seed in any::<u64>()) {
        let mut rng = RngState::new(seed);
        for _ in 0..200 {
            let m = form_product(&sample_triangular(&p, &mut rng), &p);
            let sgn = p.x2().signum();
            prop_assert_eq!(m.e.signum(), sgn);
            prop_assert!(m.f == 0.0 || m.f.signum() == sgn);
            let eig = eig_sym2(&m).unwrap();
            prop_assert!((0.0..=FRAC_PI_2).contains(&eig.theta));
            if p.x2() < 0.0 {
                prop_assert!(eig.lambda1 < 0.0 && eig.lambda2 > 0.0);
            } else {
                prop_assert!(eig.lambda2 < 0.0 && eig.lambda1 > 0.0);
            }
            let t = ratio_t(&eig).unwrap();
            let tan2 = eig.theta.tan().powi(2);
            prop_assert!(tan2 > t * (1.0 - 1e-12) - 1e-12, "tan²θ={tan2} t={t}");
        }
    }

    #[test]
    fn cdf_monotone(p in model(), mut grid in prop::collection::vec(1.0f64..1e3, 2..8)) {
        grid.sort_by(f64::total_cmp);
        let cdf = CondCdf::new(&p);
        let values = cdf.cdf_grid(&grid).unwrap();
        for w in values.windows(2) {
            prop_assert!(w[1] >= w[0], "{values:?}");
        }
        prop_assert!(values.iter().all(|v| (0.0..=1.0).contains(v)));
        for (s, v) in grid.iter().zip(&values) {
            let pointwise = cdf.cdf(*s).unwrap();
            prop_assert!((pointwise - v).abs() <= 1e-9, "{pointwise} {v}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn theta_reduction(p in model(), t in prop::sample::select(vec![0.1_f64, 0.5, 1.0, 3.0, 10.0])) {
        // the joint density vanishes unless tan²θ > t
        let lo = t.sqrt().atan();
        let marginal = integrate_adaptive(
            |th| rho_t_theta(t, th.min(FRAC_PI_2), &p).unwrap(),
            lo,
            FRAC_PI_2,
            1e-10,
        )
        .unwrap();
        let want = RatioDensity::new(&p).rho_t(t).unwrap();
        prop_assert!(rel(marginal, want) <= 1e-6, "{marginal} {want}");
    }

    #[test]
    fn normalization(p in model()) {
        let mass = CondCdf::new(&p).mass(1.0, f64::INFINITY).unwrap();
        prop_assert!((mass - 1.0).abs() <= 1e-6, "{mass}");
    }
}
