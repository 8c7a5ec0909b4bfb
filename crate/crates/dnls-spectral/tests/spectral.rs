use dnls_numerics::{c, ComplexGrid1D, Grid1D, C64, I};
use dnls_spectral::*;
use proptest::prelude::*;
use std::f64::consts::PI;

fn one_pair(lam: C64, cc: C64) -> DiscreteSpectrum {
    DiscreteSpectrum::from_pairs(&[(lam, cc)]).unwrap()
}

/// ρ whose log-defect is L(λ) = −εaλ/(λ²+1)², so every Cauchy transform of L is a residue.
fn rational_defect_rho(eps: Epsilon, a: f64, g: Grid1D) -> ReflectionCoefficient {
    let e = eps.sign();
    let grid = g.sample(|lam| {
        let l = -e * a * lam / (lam * lam + 1.0).powi(2);
        let mag2 = if lam == 0.0 { a } else { (1.0 - l.exp()) / (e * lam) };
        C64::new(mag2.sqrt(), 0.0) * C64::new(0.0, 0.3 * lam).exp()
    });
    ReflectionCoefficient::new(grid, eps).unwrap()
}

/// C(L)(z) for the rational L above, Im z < 0.
fn cl_lower(eps: Epsilon, a: f64, z: C64) -> C64 {
    -eps.sign() * a * I / (4.0 * (I - z) * (I - z))
}

fn wide_grid() -> Grid1D {
    Grid1D::new(-200.0, 200.0, 16001).unwrap()
}

#[test]
fn flow_examples() {
    let g = Grid1D::new(-5.0, 5.0, 101).unwrap();
    let rho = ReflectionCoefficient::new(g.sample(|l| c((-l * l).exp() * 0.3, 0.1 * l * (-l * l).exp())), Epsilon::Plus).unwrap();
    let s = ScatteringData::new(rho, one_pair(I, c(1.0, 0.0)), Epsilon::Plus).unwrap();
    assert_eq!(flow(&s, 0.0), s);

    let a = flow(&flow(&s, 0.7), -1.9);
    let b = flow(&s, -1.2);
    for (x, y) in a.rho.grid.values.iter().zip(&b.rho.grid.values) {
        assert!((x - y).norm() < 1e-12);
    }
    assert!((a.discrete.pairs()[0].c - b.discrete.pairs()[0].c).norm() < 1e-12);

    // λ = i, C = 1, t = 1: C(t) = e^{4iλ²t} = e^{−4i}.
    let c1 = flow(&s, 1.0).discrete.pairs()[0].c;
    assert!((c1 - C64::new(0.0, -4.0).exp()).norm() < 1e-14);
}

#[test]
fn gauge_examples() {
    let g = Grid1D::new(-20.0, 20.0, 2001).unwrap();
    let zero = Potential::new(ComplexGrid1D::zeros(g), Epsilon::Plus);
    assert_eq!(gauge_forward(&zero).grid.sup_norm(), 0.0);
    assert_eq!(gauge_inverse(&zero).grid.sup_norm(), 0.0);

    let u = Potential::new(g.sample(|x| c(0.8, 0.2 * x).exp() * (-(x * x) / 4.0).exp() * 1.3), Epsilon::Minus);
    let q = gauge_forward(&u);
    assert!((q.l2_norm_sq().sqrt() - u.l2_norm_sq().sqrt()).abs() < 1e-12);
    let back = gauge_inverse(&q);
    assert!(back.grid.with_values(back.grid.values.iter().zip(&u.grid.values).map(|(a, b)| a - b).collect()).sup_norm() < 1e-10);
    for (a, b) in q.grid.values.iter().zip(&u.grid.values) {
        assert!((a.norm() - b.norm()).abs() < 1e-14);
    }
    let again = gauge_forward(&gauge_inverse(&u));
    for (a, b) in again.grid.values.iter().zip(&u.grid.values) {
        assert!((a - b).norm() < 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn gauge_isometry_and_inverse(amp in 0.1f64..2.0, k in -3.0f64..3.0, x0 in -3.0f64..3.0, plus in any::<bool>()) {
        let eps = if plus { Epsilon::Plus } else { Epsilon::Minus };
        let g = Grid1D::new(-25.0, 25.0, 1501).unwrap();
        let u = Potential::new(g.sample(|x| C64::new(0.0, k * x).exp() * amp / ((x - x0).cosh())), eps);
        let q = gauge_forward(&u);
        prop_assert!((q.l2_norm_sq() - u.l2_norm_sq()).abs() < 1e-12 * u.l2_norm_sq().max(1.0));
        let back = gauge_inverse(&q);
        for (a, b) in back.grid.values.iter().zip(&u.grid.values) {
            prop_assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn flow_keeps_modulus_and_constraint(t in -10.0f64..10.0, amp in 0.0f64..0.5) {
        let g = Grid1D::new(-4.0, 4.0, 201).unwrap();
        let rho = ReflectionCoefficient::new(g.sample(|l| c(amp * (-l * l).exp(), 0.0)), Epsilon::Plus).unwrap();
        let s = ScatteringData::new(rho, DiscreteSpectrum::empty(), Epsilon::Plus).unwrap();
        let f = flow(&s, t);
        for (a, b) in f.rho.grid.values.iter().zip(&s.rho.grid.values) {
            prop_assert!((a.norm() - b.norm()).abs() < 1e-14);
        }
        prop_assert!(ReflectionCoefficient::new(f.rho.grid.clone(), Epsilon::Plus).is_ok());
    }
}

#[test]
fn trace_examples() {
    let g = Grid1D::new(-40.0, 40.0, 4096).unwrap();
    let empty = ScatteringData::reflectionless(DiscreteSpectrum::empty(), Epsilon::Plus, g);
    assert_eq!(trace_alpha(&empty, c(0.3, -1.0)).unwrap(), c(1.0, 0.0));
    let one = ScatteringData::reflectionless(one_pair(I, c(2.0, 0.0)), Epsilon::Plus, g);
    assert!((trace_alpha(&one, c(0.0, -2.0)).unwrap() - c(1.0 / 3.0, 0.0)).norm() < 1e-15);
}

#[test]
fn trace_against_residue_oracle() {
    for eps in [Epsilon::Plus, Epsilon::Minus] {
        let a = 0.6;
        let rho = rational_defect_rho(eps, a, wide_grid());
        let disc = DiscreteSpectrum::from_pairs(&[(c(0.4, 0.9), c(1.0, 0.5))]).unwrap();
        let s = ScatteringData::new(rho, disc, eps).unwrap();
        let lk = c(0.4, 0.9);
        for &z in &[c(0.0, -0.5), c(1.7, -0.2), c(-3.0, -2.0)] {
            let want = (z - lk.conj()) / (z - lk) * cl_lower(eps, a, z).exp();
            let got = trace_alpha(&s, z).unwrap();
            assert!((got - want).norm() < 1e-7, "eps={eps} z={z}: {got} vs {want}");
            // ᾰ(z̄) = conj α(z)
            let br = trace_alpha_breve(&s, z.conj()).unwrap();
            assert!((br - got.conj()).norm() < 1e-12);
        }
        let radiation_only = ScatteringData::new(s.rho.clone(), DiscreteSpectrum::empty(), eps).unwrap();
        assert!((trace_alpha(&radiation_only, c(0.0, -100.0)).unwrap() - 1.0).norm() < 1e-2);
    }
}

#[test]
fn breve_derivative_at_eigenvalue() {
    let rho = rational_defect_rho(Epsilon::Plus, 0.4, wide_grid());
    let disc = DiscreteSpectrum::from_pairs(&[(c(0.4, 0.9), c(1.0, 0.0)), (c(-1.0, 0.5), c(0.0, 2.0))]).unwrap();
    let s = ScatteringData::new(rho, disc, Epsilon::Plus).unwrap();
    for k in 0..2 {
        let lk = s.discrete.pairs()[k].lambda;
        let d = 1e-5;
        let fd = (trace_alpha_breve(&s, lk + d).unwrap() - trace_alpha_breve(&s, lk - d).unwrap()) / (2.0 * d);
        assert!((trace_alpha_breve_deriv_at(&s, k).unwrap() - fd).norm() < 1e-7);
    }
}

#[test]
fn line_ratio_against_residue_oracle() {
    let eps = Epsilon::Minus;
    let a = 0.5;
    let rho = rational_defect_rho(eps, a, wide_grid());
    let lk = c(-0.3, 0.7);
    let s = ScatteringData::new(rho, one_pair(lk, c(1.0, 0.0)), eps).unwrap();
    let r = alpha_over_breve_on_line(&s);
    let g = r.grid();
    for j in (0..g.n).filter(|&j| g.node(j).abs() < 10.0).step_by(37) {
        let lam = g.node(j);
        let l = -eps.sign() * a * lam / (lam * lam + 1.0).powi(2);
        let b = (lam - lk.conj()) / (lam - lk);
        let want = b * b * (l - eps.sign() * a * I / (2.0 * (I - lam) * (I - lam))).exp();
        assert!((r.values[j] - want).norm() < 1e-6, "λ={lam}");
    }
}

#[test]
fn plancherel_examples() {
    let g = Grid1D::new(-40.0, 40.0, 4097).unwrap();
    let zero_q = Potential::new(ComplexGrid1D::zeros(Grid1D::new(-10.0, 10.0, 101).unwrap()), Epsilon::Plus);
    let zero_s = ScatteringData::reflectionless(DiscreteSpectrum::empty(), Epsilon::Plus, g);
    let (l, r) = plancherel_sides(&zero_q, &zero_s);
    assert_eq!((l, r), (c(1.0, 0.0), c(1.0, 0.0)));

    // Soliton: |q|² = 8v²/(|λ|cosh(4vy) − εu) integrates to 4(π − arg λ) for ε = +1 and 4 arg λ for ε = −1.
    for eps in [Epsilon::Plus, Epsilon::Minus] {
        for &lam in &[c(0.0, 1.0), c(0.3, 0.8), c(-0.5, 0.7)] {
            let (u, v) = (lam.re, lam.im);
            let xg = Grid1D::new(-30.0, 30.0, 12001).unwrap();
            let q = Potential::new(
                xg.sample(|y| C64::new((8.0 * v * v / (lam.norm() * (4.0 * v * y).cosh() - eps.sign() * u)).sqrt(), 0.0) * C64::new(0.0, y).exp()),
                eps,
            );
            let s = ScatteringData::reflectionless(one_pair(lam, c(1.0, 0.0)), eps, g);
            let (lhs, rhs) = plancherel_sides(&q, &s);
            assert!((lhs.norm() - 1.0).abs() < 1e-12 && (rhs.norm() - 1.0).abs() < 1e-12);
            assert!((lhs - rhs).norm() < 1e-8, "eps={eps} λ={lam}: {lhs} vs {rhs}");
            let phi = lam.arg();
            if eps == Epsilon::Plus {
                assert!((lhs - (I * 4.0 * (PI - phi)).exp()).norm() < 1e-8);
                assert!((rhs - (-I * 4.0 * phi).exp()).norm() < 1e-14);
            }
        }
    }
}

#[test]
fn plancherel_continuous_part_against_closed_form() {
    // −(i/π)∫ L/λ with L = −εaλ/(λ²+1)² equals iεa/2.
    for eps in [Epsilon::Plus, Epsilon::Minus] {
        let a = 0.7;
        let s = ScatteringData::new(rational_defect_rho(eps, a, wide_grid()), DiscreteSpectrum::empty(), eps).unwrap();
        let q = Potential::new(ComplexGrid1D::zeros(Grid1D::new(-1.0, 1.0, 3).unwrap()), eps);
        let (_, rhs) = plancherel_sides(&q, &s);
        // the dropped tail beyond |λ| = 200 is 2a/(3π·200³) ≈ 2e−8
        assert!((rhs - (I * eps.sign() * a / 2.0).exp()).norm() < 1e-7);
    }
}

#[test]
fn validation_errors() {
    assert!(DiscreteSpectrum::from_pairs(&[(c(0.0, -1.0), c(1.0, 0.0))]).is_err());
    assert!(DiscreteSpectrum::from_pairs(&[(c(0.0, 1.0), c(0.0, 0.0))]).is_err());
    assert!(DiscreteSpectrum::from_pairs(&[(c(0.0, 1.0), c(1.0, 0.0)), (c(0.0, 1.0), c(2.0, 0.0))]).is_err());
    // 1 − λ|ρ|² ≤ 0 at λ = 4 when |ρ| = 1
    let g = Grid1D::new(-5.0, 5.0, 11).unwrap();
    assert!(matches!(
        ReflectionCoefficient::new(g.sample(|_| c(1.0, 0.0)), Epsilon::Plus),
        Err(SpectralError::Constraint { .. })
    ));
    assert!(ReflectionCoefficient::new(g.sample(|_| c(1.0, 0.0)), Epsilon::Minus).is_err());
    let rho = ReflectionCoefficient::zero(g, Epsilon::Plus);
    assert!(ScatteringData::new(rho, DiscreteSpectrum::empty(), Epsilon::Minus).is_err());
}

#[test]
fn json_roundtrip_and_format() {
    let g = Grid1D::new(-3.0, 3.0, 7).unwrap();
    let rho = ReflectionCoefficient::new(g.sample(|l| c(0.1 * l, -0.05)), Epsilon::Minus).unwrap();
    let s = ScatteringData::new(rho, DiscreteSpectrum::from_pairs(&[(c(0.3, 0.8), c(1.5, -0.25))]).unwrap(), Epsilon::Minus).unwrap();
    let txt = s.to_json().unwrap();
    let v: serde_json::Value = serde_json::from_str(&txt).unwrap();
    assert_eq!(v["epsilon"], -1);
    assert_eq!(v["rho"]["n"], 7);
    assert_eq!(v["discrete"][0]["C"][1], -0.25);
    assert_eq!(ScatteringData::from_json(&txt).unwrap(), s);
    assert!(ScatteringData::from_json(&txt.replace("\"epsilon\": -1", "\"epsilon\": 2")).is_err());
}

#[test]
fn csv_roundtrip() {
    let g = Grid1D::new(-2.0, 2.0, 9).unwrap();
    let p = Potential::new(g.sample(|x| c(x.sin() / 3.0, 1.0 / 7.0)), Epsilon::Plus);
    let mut buf = Vec::new();
    potential_to_csv(&p, &mut buf).unwrap();
    let text = String::from_utf8(buf.clone()).unwrap();
    assert!(text.starts_with("x,re_q,im_q\n"));
    let back = potential_from_csv(&buf[..], Epsilon::Plus).unwrap();
    assert_eq!(back.grid.values, p.grid.values);
    assert!(potential_from_csv("a,b,c\n1,2,3\n2,3,4\n".as_bytes(), Epsilon::Plus).is_err());
    assert!(potential_from_csv("x,re_q,im_q\n0,1,0\n1,1,0\n3,1,0\n".as_bytes(), Epsilon::Plus).is_err());
}
