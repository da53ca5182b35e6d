use std::f64::consts::PI;

use nalgebra::Matrix3;
use num_complex::Complex64;
use proptest::prelude::*;

use qdot_feedback::{
    asymptotic_poles, closed_form_poles, closed_loop_kernel, cubic_coefficients, markovian_pole,
    open_loop_kernel, solve_poles, CubicCoefficients, FeedbackParams, GreensAnalytic,
    PhysicalParams,
};

const I: Complex64 = Complex64::new(0.0, 1.0);

fn dot() -> PhysicalParams {
    PhysicalParams::default()
}

/// Eigenvalues of the companion matrix of s³ + β₁s² + β₂s + β₃.
fn companion_roots(c: &CubicCoefficients) -> Vec<Complex64> {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let m = Matrix3::new(
        -c.beta1, -c.beta2, -c.beta3, //
        one, zero, zero, //
        zero, one, zero,
    );
    m.schur().eigenvalues().expect("triangular Schur form").iter().copied().collect()
}

/// Largest distance from a root of `a` to its nearest partner in `b`, both ways.
fn set_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let one_way = |x: &[Complex64], y: &[Complex64]| {
        x.iter()
            .map(|p| y.iter().map(|q| (p - q).norm()).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    one_way(a, b).max(one_way(b, a))
}

fn residual(c: &CubicCoefficients, p: Complex64) -> f64 {
    (p * p * p + c.beta1 * p * p + c.beta2 * p + c.beta3).norm()
}

#[test]
fn poles_match_companion_eigenvalues() {
    let p = dot();
    for (eta, r, theta) in [(0.4, 0.0, 0.0), (0.4, 2.0, 0.0), (1.6, 0.0, 0.0), (0.8, 3.0, 1.1), (2.0, 50.0, -0.4)] {
        let c = cubic_coefficients(&p.with_eta(eta), &FeedbackParams::new(r, theta).unwrap());
        let poles = solve_poles(&c).unwrap();
        let oracle = companion_roots(&c);
        assert!(set_distance(&poles, &oracle) < 1e-9, "η={eta} r={r}");
        for &z in &poles {
            assert!(residual(&c, z) < 1e-10 * c.beta3.norm().max(1.0));
        }
    }
}

#[test]
fn coefficients_expand_the_factored_form() {
    // (s + iω_S)(s² + α₁s + α₂) + ηh (s + z₀ − iγ cos θ sin α)
    let p = dot();
    let fb = FeedbackParams::new(1.0, 0.0).unwrap();
    let c = cubic_coefficients(&p, &fb);
    let z0 = Complex64::new(p.h, p.omega_s - p.delta);
    let gamma = p.delta.hypot(fb.r);
    let sin_a = (fb.r / p.delta).atan().sin();
    let eh = p.eta * p.h;
    for s in [Complex64::new(0.3, -1.0), Complex64::new(-2.0, 4.0), Complex64::new(0.0, -10.0)] {
        let direct = (s + I * p.omega_s) * (s * s + 2.0 * z0 * s + z0 * z0 + gamma * gamma)
            + eh * (s + z0 - I * gamma * sin_a);
        let cubic = s * s * s + c.beta1 * s * s + c.beta2 * s + c.beta3;
        assert!((direct - cubic).norm() < 1e-12 * direct.norm().max(1.0));
    }
    assert!((c.alpha1 - 2.0 * z0).norm() < 1e-14);
    assert!((c.beta1 - c.alpha1 - I * p.omega_s).norm() < 1e-14);
    assert!((c.beta2 - c.alpha2 - I * p.omega_s * c.alpha1 - eh).norm() < 1e-12);
}

#[test]
fn zero_feedback_matches_open_loop() {
    for eta in [0.4, 0.8, 1.2, 1.6] {
        let p = dot().with_eta(eta);
        let open = GreensAnalytic::new(&p, &FeedbackParams::open_loop()).unwrap();
        // Poles of 1/(s + iω_S + M₀(s)) found directly from the open-loop kernel.
        let k = open_loop_kernel(&p);
        let (a, b) = (-k.terms[0].rate, -k.terms[1].rate);
        let eh2 = 0.5 * p.eta * p.h;
        let w = I * p.omega_s;
        // (s + w)(s + a)(s + b) + ½ηh(2s + a + b)
        let c = CubicCoefficients {
            alpha1: a + b,
            alpha2: a * b,
            beta1: a + b + w,
            beta2: a * b + w * (a + b) + 2.0 * eh2,
            beta3: w * a * b + eh2 * (a + b),
            omega_s: p.omega_s,
            coupling: p.eta * p.h,
        };
        let oracle = companion_roots(&c);
        assert!(set_distance(&open.poles(), &oracle) < 1e-10, "η={eta}");
        for theta in [0.0, 1.0, -2.0] {
            let g = GreensAnalytic::new(&p, &FeedbackParams::new(0.0, theta).unwrap()).unwrap();
            assert!(set_distance(&g.poles(), &open.poles()) < 1e-10);
        }
    }
}

#[test]
fn residues_match_limit_of_greens_function() {
    let p = dot();
    let fb = FeedbackParams::new(2.0, 0.0).unwrap();
    let kernel = closed_loop_kernel(&p, &fb);
    let g = GreensAnalytic::new(&p, &fb).unwrap();
    // G(s) assembled from the kernel's Laplace transform, independent of the cubic.
    let greens = |s: Complex64| 1.0 / (s + I * p.omega_s + kernel.laplace(s).unwrap());
    for m in &g.modes {
        let mut errors = Vec::new();
        for eps in [1e-3, 1e-4, 1e-5] {
            let dir = Complex64::from_polar(1.0, 0.3);
            let s = m.pole + eps * dir;
            errors.push(((s - m.pole) * greens(s) - m.residue).norm());
        }
        assert!(errors[2] < 1e-5, "{errors:?}");
        assert!(errors[0] > errors[1] && errors[1] > errors[2] || errors[2] < 1e-10);
    }
}

#[test]
fn closed_form_reproduces_the_root_set() {
    let p = dot();
    for (eta, r, theta) in [(0.4, 0.0, 0.0), (0.4, 1.0, 0.0), (0.4, 3.0, 0.0), (1.6, 0.0, 0.0), (0.8, 2.0, 0.7)] {
        let c = cubic_coefficients(&p.with_eta(eta), &FeedbackParams::new(r, theta).unwrap());
        let numeric = solve_poles(&c).unwrap();
        let mut on_slow_label = 0;
        for branch in 0..3 {
            let formula = closed_form_poles(&c, branch);
            // Every cube-root branch permutes the same three roots.
            assert!(set_distance(&formula, &numeric) < 1e-6, "η={eta} r={r} branch {branch}");
            if (formula[0] - numeric[0]).norm() < 1e-6 {
                on_slow_label += 1;
            }
        }
        // Exactly one branch puts the formula's first label on the slow pole.
        assert_eq!(on_slow_label, 1, "η={eta} r={r}");
    }
}

#[test]
fn large_feedback_limits() {
    let p = dot();
    let limits = asymptotic_poles(&p);
    assert_eq!(limits[0], Complex64::new(0.0, -p.omega_s));
    assert_eq!(limits[1].re, -p.h);
    assert_eq!(limits[2].re, -p.h);
    let mut previous = f64::INFINITY;
    let mut previous_gap = f64::INFINITY;
    for mult in [10.0, 30.0, 100.0] {
        let poles = solve_poles(&cubic_coefficients(&p, &FeedbackParams::new(mult * p.omega_s, 0.0).unwrap())).unwrap();
        let rate = poles[0].re.abs();
        let gap = (poles[0] - limits[0]).norm();
        assert!(rate < previous && gap < previous_gap, "r={mult}ω_S");
        previous = rate;
        previous_gap = gap;
        if mult == 100.0 {
            assert!(gap < 1e-3 * p.omega_s);
            assert!((poles[1].re - limits[1].re).abs() < 1e-3);
            assert!((poles[2].re - limits[2].re).abs() < 1e-3);
        }
    }
}

#[test]
fn decoupled_dot_keeps_full_coherence() {
    let p = dot().with_eta(0.0);
    let g = GreensAnalytic::new(&p, &FeedbackParams::new(1.5, 0.2).unwrap()).unwrap();
    assert_eq!(g.modes[0].pole, Complex64::new(0.0, -p.omega_s));
    assert!((g.modes[0].residue - 1.0).norm() < 1e-12);
    for m in &g.modes[1..] {
        assert!(m.residue.norm() < 1e-12);
    }
    for i in 0..=600 {
        let t = 0.1 * i as f64;
        assert!((g.evaluate(t).norm() - 1.0).abs() < 1e-12);
        assert!((g.evaluate(t) - (-I * p.omega_s * t).exp()).norm() < 1e-11);
    }
}

#[test]
fn markovian_amplitude_decays_exponentially() {
    assert_eq!(markovian_pole(0.0, 10.0).unwrap(), Complex64::new(0.0, -10.0));
    assert_eq!(markovian_pole(0.6, 10.0).unwrap(), Complex64::new(-0.3, -10.0));
    assert!(markovian_pole(-1.0, 10.0).is_err());
    let gamma = 0.25;
    let g = GreensAnalytic::markovian(gamma, 10.0).unwrap();
    for i in 0..=100 {
        let t = 0.6 * i as f64;
        assert!((g.evaluate(t).norm() - (-0.5 * gamma * t).exp()).abs() < 1e-12);
    }
}

#[test]
fn reference_amplitude_stays_contractive() {
    for eta in [0.4, 0.8, 1.2, 1.6] {
        for frac in [0.0, 0.1, 0.2, 0.3] {
            let p = dot().with_eta(eta);
            let g = GreensAnalytic::new(&p, &FeedbackParams::new(frac * p.omega_s, 0.0).unwrap()).unwrap();
            assert_eq!(g.evaluate(0.0), g.residue_sum());
            assert!((g.evaluate(0.0) - 1.0).norm() < 1e-12);
            for i in 0..=6000 {
                assert!(g.evaluate(0.01 * i as f64).norm() <= 1.0 + 1e-6);
            }
            assert!(g.slow_rate() <= 1e-9);
        }
    }
}

fn physical() -> impl Strategy<Value = PhysicalParams> {
    (1.0..20.0f64, 0.0..1.0f64, 0.05..1.0f64, 0.0..2.0f64)
        .prop_map(|(w, d, h, e)| PhysicalParams::new(w, d, h, e).unwrap())
}

fn feedback() -> impl Strategy<Value = FeedbackParams> {
    (0.0..10.0f64, -PI..PI).prop_map(|(r, t)| FeedbackParams::new(r, t).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn residues_normalize_and_poles_solve_the_cubic(p in physical(), fb in feedback()) {
        let c = cubic_coefficients(&p, &fb);
        let g = match GreensAnalytic::from_coefficients(&c) {
            Ok(g) => g,
            Err(e) if e.is_degeneracy() => return Ok(()),
            Err(e) => panic!("{e}"),
        };
        prop_assert!((g.residue_sum() - 1.0).norm() < 1e-9);
        let poles = g.poles();
        for &z in &poles {
            prop_assert!(residual(&c, z) < 1e-9 * c.beta3.norm().max(1.0));
            prop_assert!(z.re <= 1e-9);
        }
        for w in poles.windows(2) {
            prop_assert!(w[0].re >= w[1].re - 1e-12);
        }
        let rel = |x: Complex64, y: Complex64| (x - y).norm() / y.norm().max(1.0);
        prop_assert!(rel(poles[0] + poles[1] + poles[2], -c.beta1) < 1e-8);
        prop_assert!(rel(poles[0] * poles[1] + poles[0] * poles[2] + poles[1] * poles[2], c.beta2) < 1e-8);
        prop_assert!(rel(poles[0] * poles[1] * poles[2], -c.beta3) < 1e-8);
    }
}
