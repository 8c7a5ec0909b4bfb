use dnls_numerics::{c, cauchy_integral, cauchy_integral_deriv, cauchy_projector, CauchyPlan, ComplexGrid1D, Grid1D, Side, C64, I};
use proptest::prelude::*;
use std::f64::consts::PI;

fn spec_grid() -> Grid1D {
    Grid1D::new(-40.0, 40.0, 4096).unwrap()
}

/// (1/2πi) ∫_a^b ds / ((s − p)(s − z)) in closed form.
fn truncated_pole_transform(p: C64, z: C64, a: f64, b: f64) -> C64 {
    let l = |w: C64| (C64::new(b, 0.0) - w).ln() - (C64::new(a, 0.0) - w).ln();
    (l(p) - l(z)) / (p - z) / (2.0 * PI * I)
}

#[test]
fn zero_in_zero_out() {
    let f = ComplexGrid1D::zeros(spec_grid());
    assert_eq!(cauchy_projector(&f, Side::Plus).sup_norm(), 0.0);
    assert_eq!(cauchy_projector(&f, Side::Minus).sup_norm(), 0.0);
    assert_eq!(cauchy_integral(&f, c(0.0, 1.0)).unwrap(), c(0.0, 0.0));
}

#[test]
fn jump_relation_is_exact() {
    let f = spec_grid().sample(|s| 1.0 / (s - I));
    let p = cauchy_projector(&f, Side::Plus);
    let m = cauchy_projector(&f, Side::Minus);
    for k in 0..f.n() {
        assert!((p.values[k] - m.values[k] - f.values[k]).norm() < 1e-13);
    }
}

#[test]
fn pole_above_the_line() {
    // f = 1/(s − i) is analytic below the line: C⁺f = 0 and C⁻f = −f on the whole line.
    // Truncating to [−40, 40] drops ~1/(π·40) of tail, so compare against the
    // truncated-interval closed form tightly and against the full-line values loosely.
    let g = spec_grid();
    let f = g.sample(|s| 1.0 / (s - I));
    let p = cauchy_projector(&f, Side::Plus);
    let m = cauchy_projector(&f, Side::Minus);
    for k in (0..g.n).filter(|&k| g.node(k).abs() <= 20.0).step_by(7) {
        let x = g.node(k);
        let exact_p = truncated_pole_transform(I, c(x, 1e-300), g.min, g.max);
        let exact_m = truncated_pole_transform(I, c(x, -1e-300), g.min, g.max);
        assert!((p.values[k] - exact_p).norm() < 1e-4, "x={x}");
        assert!((m.values[k] - exact_m).norm() < 1e-4, "x={x}");
        assert!(p.values[k].norm() < 1e-2);
        assert!((m.values[k] + f.values[k]).norm() < 1e-2);
    }
}

#[test]
fn decaying_analytic_data_projects_exactly() {
    // 1/(s + i)² is analytic above the line and decays fast enough for 1e−4.
    let g = spec_grid();
    let f = g.sample(|s| 1.0 / ((s + I) * (s + I)));
    let p = cauchy_projector(&f, Side::Plus);
    let m = cauchy_projector(&f, Side::Minus);
    for k in (0..g.n).filter(|&k| g.node(k).abs() <= 30.0) {
        assert!((p.values[k] - f.values[k]).norm() < 1e-4);
        assert!(m.values[k].norm() < 1e-4);
    }
}

#[test]
fn projector_matches_dense_principal_value() {
    let g = Grid1D::new(-20.0, 20.0, 2048).unwrap();
    let fx = |s: f64| c((-s * s / 2.0).exp() * (1.0 + s), (-(s - 1.0).powi(2)).exp());
    let f = g.sample(fx);
    let p = cauchy_projector(&f, Side::Plus);
    // Independent oracle: subtracted PV quadrature on a much finer grid.
    let fine = 200_001;
    let (a, b) = (-20.0, 20.0);
    let h = (b - a) / (fine - 1) as f64;
    for &x in &[-3.1, -0.77, 0.0, 0.4, 2.25] {
        let f0 = fx(x);
        let mut acc = c(0.0, 0.0);
        for j in 0..fine {
            let s = a + j as f64 * h;
            let w = if j == 0 || j == fine - 1 { 0.5 } else { 1.0 };
            let d = s - x;
            let term = if d.abs() < 1e-12 {
                // limit is f'(x); use a centred difference
                (fx(x + 1e-6) - fx(x - 1e-6)) / 2e-6
            } else {
                (fx(s) - f0) / d
            };
            acc += term * w;
        }
        let pv = acc * h + f0 * ((b - x) / (x - a)).ln();
        let want = f0 * 0.5 + pv / (2.0 * PI * I);
        let k = g.nearest(x);
        let got = if (g.node(k) - x).abs() < 1e-12 { p.values[k] } else { p.interp(x) };
        assert!((got - want).norm() < 1e-6, "x={x} got={got} want={want}");
    }
}

#[test]
fn integral_examples_with_corrected_residues() {
    let g = spec_grid();
    let f = g.sample(|s| 1.0 / (s - I));
    // z = 2i: the residues at s = i and s = z cancel → 0. z = −2i: only s = i → 1/(i − z) = −i/3.
    let up = cauchy_integral(&f, c(0.0, 2.0)).unwrap();
    let down = cauchy_integral(&f, c(0.0, -2.0)).unwrap();
    assert!((up - truncated_pole_transform(I, c(0.0, 2.0), g.min, g.max)).norm() < 1e-4);
    assert!((down - truncated_pole_transform(I, c(0.0, -2.0), g.min, g.max)).norm() < 1e-4);
    assert!(up.norm() < 1e-2);
    assert!((down - c(0.0, -1.0 / 3.0)).norm() < 1e-2);
}

#[test]
fn integral_close_to_the_line() {
    let g = spec_grid();
    let f = g.sample(|s| 1.0 / ((s + I) * (s + I)));
    let h = g.h();
    for &y in &[0.11 * h, 0.5 * h, 2.0 * h, 30.0 * h] {
        let z = c(0.37, y);
        let got = cauchy_integral(&f, z).unwrap();
        let want = 1.0 / ((z + I) * (z + I));
        assert!((got - want).norm() < 1e-4, "y={y}: {got} vs {want}");
        let zb = c(0.37, -y);
        assert!(cauchy_integral(&f, zb).unwrap().norm() < 1e-4);
    }
}

#[test]
fn derivative_matches_difference_quotient() {
    let g = Grid1D::new(-30.0, 30.0, 3001).unwrap();
    let f = g.sample(|s| c((-s * s).exp(), 0.3 * s * (-s * s).exp()));
    let z = c(0.2, 0.6);
    let d = 1e-5;
    let fd = (cauchy_integral(&f, z + d).unwrap() - cauchy_integral(&f, z - d).unwrap()) / (2.0 * d);
    assert!((cauchy_integral_deriv(&f, z).unwrap() - fd).norm() < 1e-8);
}

fn arb_samples(n: usize) -> impl Strategy<Value = Vec<C64>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0).prop_map(|(a, b)| c(a, b)), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn projector_linear(u in arb_samples(128), v in arb_samples(128), ar in -2.0f64..2.0, ai in -2.0f64..2.0) {
        let plan = CauchyPlan::new(128);
        let a = c(ar, ai);
        let combo: Vec<C64> = u.iter().zip(&v).map(|(x, y)| a * x + y).collect();
        for side in [Side::Plus, Side::Minus] {
            let lhs = plan.project_values(&combo, side);
            let pu = plan.project_values(&u, side);
            let pv = plan.project_values(&v, side);
            for k in 0..128 {
                prop_assert!((lhs[k] - (a * pu[k] + pv[k])).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn projector_jump(u in arb_samples(200)) {
        let f = ComplexGrid1D::new(-3.0, 5.0, u.clone()).unwrap();
        let (p, m) = CauchyPlan::new(200).project_both(&f);
        for k in 0..200 {
            prop_assert!((p.values[k] - m.values[k] - u[k]).norm() < 1e-14);
        }
    }
}
