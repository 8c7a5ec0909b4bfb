use dnls_numerics::{c, gamma_complex, parabolic_cylinder_d, parabolic_cylinder_d_diag, rgamma, C64};
use proptest::prelude::*;

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm()
}

#[test]
fn gamma_examples() {
    assert!(rel(gamma_complex(c(1.0, 0.0)).unwrap(), c(1.0, 0.0)) < 1e-14);
    assert!((gamma_complex(c(0.5, 0.0)).unwrap().re - 1.7724538509055159).abs() < 1e-13);
    let g = gamma_complex(c(0.0, 1.0)).unwrap();
    let oracle = std::f64::consts::PI / std::f64::consts::PI.sinh();
    assert!((g.norm_sqr() - oracle).abs() < 1e-13);
    assert!((g.norm_sqr() - 0.272029054982133).abs() < 1e-12);
}

#[test]
fn gamma_large_argument_against_stirling() {
    // ln Γ(z) ≈ (z−½)ln z − z + ½ln 2π + 1/(12z) − 1/(360z³) + 1/(1260z⁵)
    for &z in &[c(30.0, 10.0), c(20.0, -35.0), c(45.0, 0.5)] {
        let stirling = (z - 0.5) * z.ln() - z + 0.5 * (2.0 * std::f64::consts::PI).ln() + 1.0 / (12.0 * z)
            - 1.0 / (360.0 * z * z * z)
            + 1.0 / (1260.0 * z.powi(5));
        let g = gamma_complex(z).unwrap();
        assert!(rel(g, stirling.exp()) < 1e-12, "z={z}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn gamma_recurrence(r in 0.0f64..19.0, th in -3.14f64..3.14) {
        let z = C64::from_polar(r, th);
        prop_assume!(z.re > -10.0);
        prop_assume!((z - z.re.round()).norm() > 1e-3 || z.re > 0.5);
        let lhs = gamma_complex(z + 1.0).unwrap();
        let rhs = z * gamma_complex(z).unwrap();
        prop_assert!(rel(lhs, rhs) < 1e-10);
    }

    #[test]
    fn gamma_reflection(x in -6.0f64..6.0, y in -6.0f64..6.0) {
        let z = c(x, y);
        prop_assume!((z - z.re.round()).norm() > 1e-3);
        let lhs = gamma_complex(z).unwrap() * gamma_complex(1.0 - z).unwrap();
        let rhs = std::f64::consts::PI / (z * std::f64::consts::PI).sin();
        prop_assert!(rel(lhs, rhs) < 1e-10);
    }

    #[test]
    fn pcf_recurrence(r in 0.0f64..40.0, th in -3.1416f64..3.1416, nr in -5.0f64..4.0, ni in -2.0f64..2.0) {
        let z = C64::from_polar(r, th);
        let nu = c(nr, ni);
        let a = parabolic_cylinder_d(nu + 1.0, z);
        let b = z * parabolic_cylinder_d(nu, z);
        let d = nu * parabolic_cylinder_d(nu - 1.0, z);
        let scale = a.norm().max(b.norm()).max(d.norm());
        prop_assert!((a - b + d).norm() <= 1e-8 * scale, "residual {:e}", (a - b + d).norm() / scale);
    }
}

#[test]
fn pcf_examples() {
    let z = c(1.3, 0.2);
    assert!(rel(parabolic_cylinder_d(c(0.0, 0.0), z), (-z * z / 4.0).exp()) < 1e-12);
    let z = c(2.0, 0.0);
    assert!(rel(parabolic_cylinder_d(c(1.0, 0.0), z), z * (-z * z / 4.0).exp()) < 1e-12);
    let (nu, z) = (c(0.0, 0.7), c(3.0, 1.0));
    let res = parabolic_cylinder_d(nu + 1.0, z) - z * parabolic_cylinder_d(nu, z) + nu * parabolic_cylinder_d(nu - 1.0, z);
    assert!(res.norm() < 1e-8);
}

/// D_ν(z) = e^{−z²/4}/Γ(−ν) ∫₀^∞ t^{−ν−1} e^{−zt−t²/2} dt  (Re ν < 0), with t = u² e^{iφ}.
/// The ray is turned toward the saddle t = −z (|φ| < π/4 keeps the tail decaying).
fn pcf_by_quadrature(nu: C64, z: C64) -> C64 {
    let phi = (-z).arg().clamp(-0.7, 0.7);
    let rot = C64::from_polar(1.0, phi);
    let t_max = 2.0 * z.norm() + 16.0;
    let u_max = t_max.sqrt();
    let n = 40_000;
    let h = u_max / n as f64;
    let g = |u: f64| -> C64 {
        if u == 0.0 {
            return c(0.0, 0.0);
        }
        let t = rot * u * u;
        C64::new(u, 0.0).powc(-2.0 * nu - 1.0) * 2.0 * (-nu * C64::new(0.0, phi)).exp() * (-z * t - t * t / 2.0).exp()
    };
    let mut s = g(0.0) + g(u_max);
    for k in 1..n {
        s += g(k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0 * (-z * z / 4.0).exp() * rgamma(-nu)
}

#[test]
fn pcf_against_integral_representation_in_every_sector() {
    for &nu in &[c(-1.6, 0.4), c(-2.5, -0.7), c(-3.2, 1.5)] {
        for &r in &[2.5, 5.0, 7.5, 11.0] {
            for k in 0..12 {
                let z = C64::from_polar(r, -3.0 + 0.5 * k as f64);
                let want = pcf_by_quadrature(nu, z);
                let got = parabolic_cylinder_d(nu, z);
                assert!(rel(got, want) < 1e-8, "nu={nu} z={z} got={got} want={want}");
            }
        }
    }
}

#[test]
fn band_evaluations_reconcile() {
    for k in 0..16 {
        let z = C64::from_polar(7.0, -3.1 + 0.4 * k as f64);
        let e = parabolic_cylinder_d_diag(c(0.3, -0.6), z);
        assert!(!e.accuracy_warning(), "z={z} discrepancy {:e}", e.discrepancy);
    }
}

#[test]
fn hermite_orders_are_exact_far_out() {
    // D_3 = (z³ − 3z) e^{−z²/4}, including the direction where it is recessive in neither form.
    for &z in &[c(-30.0, 0.5), c(25.0, 25.0), c(-8.0, -1.0)] {
        let want = (z * z * z - 3.0 * z) * (-z * z / 4.0).exp();
        assert!(rel(parabolic_cylinder_d(c(3.0, 0.0), z), want) < 1e-12);
    }
}

#[test]
fn tanh_sinh_endpoint_singularities() {
    let h = 1.0 / 64.0;
    assert!((dnls_numerics::tanh_sinh(|x: f64| x.ln(), 0.0, 1.0, h) + 1.0).abs() < 1e-13);
    assert!((dnls_numerics::tanh_sinh(|x: f64| 1.0 / x.sqrt(), 0.0, 4.0, h) - 4.0).abs() < 1e-10);
    assert!((dnls_numerics::tanh_sinh(|x: f64| x.exp(), -1.0, 2.0, h) - (2f64.exp() - (-1f64).exp())).abs() < 1e-13);
    assert_eq!(dnls_numerics::tanh_sinh(|x: f64| x, 1.0, 1.0, h), 0.0);
}
