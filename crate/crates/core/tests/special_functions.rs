//! Hypergeometric and Laplace-exponent values against independent
//! evaluations built here from elementary integrals and series.

use secrecy_geom::connectivity::{radial_laplace_exponent, tail_laplace_exponent};
use secrecy_geom::numerics::{gamma_fn, hyp2f1};

/// Composite Simpson rule with `n` (even) panels.
fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let inner: f64 = (1..n)
        .map(|i| f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 })
        .sum();
    (f(a) + f(b) + inner) * h / 3.0
}

/// 2F1(1, b; b + 1; x) = ∫_0^1 dv / (1 − x v^{1/b}) for 0 < b.
fn hyp2f1_unit_integral(b: f64, x: f64) -> f64 {
    simpson(|v| 1.0 / (1.0 - x * v.powf(1.0 / b)), 0.0, 1.0, 200_000)
}

fn hyp2f1_series(a: f64, b: f64, c: f64, x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 0..10_000 {
        let n = n as f64;
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * x;
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

#[test]
fn hyp2f1_matches_euler_integral_on_the_laplace_family() {
    for eta in [2.5, 3.0, 4.0, 5.0, 6.0] {
        let b = (eta - 2.0) / eta;
        for x in [-1e-3, -0.3, -1.0, -5.0, -100.0, -1e4] {
            let got = hyp2f1(1.0, b, b + 1.0, x).unwrap();
            let want = hyp2f1_unit_integral(b, x);
            assert!(
                (got - want).abs() <= 1e-8 * want.abs().max(1e-3),
                "eta {eta}, x {x}: {got} vs {want}"
            );
        }
    }
}

#[test]
fn hyp2f1_matches_power_series_inside_unit_disk() {
    for (a, b, c) in [
        (1.0, 0.5, 1.5),
        (0.5, 0.25, 2.0),
        (2.0, 1.0, 3.5),
        (1.0, 2.0 / 3.0, 5.0 / 3.0),
    ] {
        for x in [-0.9, -0.5, -0.1, 0.1, 0.5, 0.8] {
            let got = hyp2f1(a, b, c, x).unwrap();
            let want = hyp2f1_series(a, b, c, x);
            assert!(
                (got - want).abs() <= 1e-12 * want.abs(),
                "({a},{b},{c},{x}): {got} vs {want}"
            );
        }
    }
}

#[test]
fn tail_exponent_matches_radial_integral() {
    for eta in [2.5, 3.0, 4.0, 6.0] {
        for s in [0.01, 1.0, 30.0] {
            for a in [1.0f64, 2.0] {
                // r = a / w^{1/(eta-2)} maps [a, inf) to (0, 1].
                let k = 1.0 / (eta - 2.0);
                let f = |w: f64| {
                    if w == 0.0 {
                        return s * k * a.powf(2.0 - eta);
                    }
                    let r = a * w.powf(-k);
                    let dr = a * k * w.powf(-k - 1.0);
                    let g = r.powf(-eta);
                    s * g / (1.0 + s * g) * r * dr
                };
                let want = simpson(f, 0.0, 1.0, 400_000);
                let got = tail_laplace_exponent(eta, s, a).unwrap();
                assert!(
                    (got - want).abs() <= 1e-7 * want,
                    "eta {eta}, s {s}, a {a}: {got} vs {want}"
                );
            }
        }
    }
}

#[test]
fn radial_exponent_at_eta_four_has_arctan_form() {
    // For eta = 4 the tail is (sqrt(s)/2) arctan(sqrt(s)).
    for s in [0.1f64, 1.0, 7.0, 250.0] {
        let want = s / (2.0 * (1.0 + s)) + 0.5 * s.sqrt() * s.sqrt().atan();
        let got = radial_laplace_exponent(4.0, s).unwrap();
        assert!((got - want).abs() <= 1e-13 * want, "s {s}: {got} vs {want}");
    }
}

#[test]
fn gamma_agrees_with_statrs() {
    for x in [0.1, 0.5, 1.0, 1.5, 2.0 / 3.0, 3.7, 10.0] {
        let want = statrs::function::gamma::gamma(x);
        assert!((gamma_fn(x).unwrap() - want).abs() <= 1e-13 * want);
    }
}
