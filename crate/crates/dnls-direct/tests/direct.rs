use dnls_direct::*;
use dnls_numerics::{c, ComplexGrid1D, Grid1D, SearchRegion, C64, I};
use dnls_spectral::{Epsilon, Potential};
use proptest::prelude::*;

/// Closed-form one-soliton at t = 0 (independent of the soliton engine).
fn soliton(lam: C64, cc: C64, eps: Epsilon, x: f64) -> C64 {
    let e = eps.sign();
    let (u, v) = (lam.re, lam.im);
    let a = lam.norm();
    let x0 = (a * cc.norm_sqr() / (4.0 * v * v)).ln() / (4.0 * v);
    let y = x - x0;
    let phi = (8.0 * v * v / (a * (4.0 * v * y).cosh() - e * u)).sqrt();
    let k = ((a + e * u) / (a - e * u)).sqrt();
    let mass = 4.0 * ((k * (2.0 * v * y).tanh()).atan() + k.atan());
    let a0 = lam.arg() + cc.arg() + std::f64::consts::FRAC_PI_2;
    phi * C64::new(0.0, -2.0 * u * x - e / 4.0 * mass - a0).exp()
}

fn soliton_potential(lam: C64, cc: C64, eps: Epsilon) -> Potential {
    Potential::new(default_x_grid().sample(|x| soliton(lam, cc, eps, x)), eps)
}

fn packet(amp: f64, k: f64, x0: f64, eps: Epsilon) -> Potential {
    let g = Grid1D::new(-20.0, 20.0, 2001).unwrap();
    Potential::new(g.sample(|x| C64::new(0.0, k * x).exp() * amp * (-(x - x0).powi(2)).exp()), eps)
}

#[test]
fn zero_potential() {
    let q = Potential::new(ComplexGrid1D::zeros(Grid1D::new(-10.0, 10.0, 201).unwrap()), Epsilon::Plus);
    let j = jost(&q, c(0.4, 0.0), Which::Plus).unwrap();
    for i in 0..j.grid.n {
        assert!((j.matrix(i).unwrap() - M2::IDENTITY).max_abs() < 1e-14);
    }
    let lg = Grid1D::new(-5.0, 5.0, 11).unwrap();
    let (a, b) = transition(&q, lg).unwrap();
    assert!(a.values.iter().all(|v| (v - 1.0).norm() < 1e-12));
    assert!(b.sup_norm() < 1e-12);
    assert!((alpha_lower(&q, c(0.3, -1.0)).unwrap() - 1.0).norm() < 1e-14);
    let s = scatter(&q, lg, &Direct::default_region(&q)).unwrap();
    assert!(s.rho.grid.sup_norm() < 1e-14 && s.discrete.is_empty());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn unimodular_jost(amp in 0.1f64..1.5, k in -2.0f64..2.0, x0 in -3.0f64..3.0, plus in any::<bool>()) {
        let eps = if plus { Epsilon::Plus } else { Epsilon::Minus };
        let q = packet(amp, k, x0, eps);
        for which in [Which::Plus, Which::Minus] {
            let j = jost(&q, c(0.7, 0.0), which).unwrap();
            for i in (0..j.grid.n).step_by(50) {
                prop_assert!((j.matrix(i).unwrap().det() - 1.0).norm() < 1e-6);
            }
        }
    }

    #[test]
    fn unitarity_on_the_line(amp in 0.1f64..1.2, k in -2.0f64..2.0, plus in any::<bool>()) {
        let eps = if plus { Epsilon::Plus } else { Epsilon::Minus };
        let q = packet(amp, k, 0.5, eps);
        let lg = Grid1D::new(-4.0, 4.0, 41).unwrap(); // contains λ = 0
        let (a, b) = transition(&q, lg).unwrap();
        for (lam, (al, be)) in lg.nodes().into_iter().zip(a.values.iter().zip(&b.values)) {
            prop_assert!((al.norm_sqr() - eps.sign() * lam * be.norm_sqr() - 1.0).abs() < 1e-6);
        }
    }
}

#[test]
fn first_column_bound_in_lower_half_plane() {
    let eps = Epsilon::Minus;
    let q = packet(0.8, 0.7, 0.0, eps);
    let e = eps.sign();
    let dq = q.grid.derivative();
    let sharp = q.grid.map(|_, _| c(0.0, 0.0)).with_values(
        q.grid.values.iter().zip(&dq.values).map(|(v, d)| d.conj() - I * 0.5 * e * v.norm_sqr() * v.conj()).collect(),
    );
    let l1 = |g: &ComplexGrid1D| g.map(|_, v| c(v.norm(), 0.0)).trapezoid().re;
    let (nq, ns) = (l1(&q.grid), l1(&sharp));
    let bound11 = (0.5 * nq * ns).exp();
    let bound21 = bound11 * (nq + ns);
    for &lam in &[c(0.0, 0.0), c(1.5, -0.3), c(-0.7, -2.0), c(3.0, 0.0)] {
        let j = Direct::default().jost(&q, lam, Which::Plus, Columns::First).unwrap();
        for col in j.first.unwrap() {
            assert!(col[0].norm() <= bound11 && col[1].norm() <= bound21);
        }
    }
}

#[test]
fn breve_symmetry() {
    let q = packet(1.0, 0.5, -0.4, Epsilon::Plus);
    let d = Direct::default();
    // on the line: ᾰ = T₂₂ = conj T₁₁
    for &lam in &[-2.0, -0.3, 0.0, 0.8, 3.1] {
        let t = d.transition_at(&q, lam).unwrap();
        assert!((t.0[1][1] - t.0[0][0].conj()).norm() < 1e-8);
        assert!((d.alpha_lower(&q, c(lam, 0.0)).unwrap() - t.0[0][0]).norm() < 1e-8);
    }
    // off the line: N⁻₁₁ at the right edge is ᾰ(λ)
    for &lam in &[c(0.5, 0.7), c(-1.0, 0.2)] {
        let j = d.jost(&q, lam, Which::Minus, Columns::First).unwrap();
        let breve = j.first.unwrap().last().unwrap()[0];
        assert!((breve - d.alpha_lower(&q, lam.conj()).unwrap().conj()).norm() < 1e-8);
    }
    assert!((d.alpha_lower(&q, c(0.0, -50.0)).unwrap() - 1.0).norm() < 1e-2);
}

#[test]
fn one_soliton_roundtrip() {
    for eps in [Epsilon::Plus, Epsilon::Minus] {
        let lam = c(0.3, 0.8);
        let q = soliton_potential(lam, c(1.0, -0.5), eps);
        let rho = reflection(&q, Grid1D::new(-10.0, 10.0, 101).unwrap()).unwrap();
        assert!(rho.grid.sup_norm() < 1e-5);
        let ev = eigenvalues(&q, &Direct::default_region(&q)).unwrap();
        assert_eq!(ev.len(), 1);
        assert!((ev[0] - lam).norm() < 1e-6, "{eps}: {}", ev[0]);
    }
    // λ = i, C = 2
    let q = soliton_potential(I, c(2.0, 0.0), Epsilon::Plus);
    let d = Direct::default();
    let ev = d.eigenvalues(&q, &Direct::default_region(&q)).unwrap();
    let det = d.norming_detail(&q, &ev).unwrap();
    assert!((det[0].c - 2.0).norm() < 1e-4);
    assert!(det[0].residual < 1e-6);
    let s = d.scatter(&q, Grid1D::new(-8.0, 8.0, 81).unwrap(), &Direct::default_region(&q)).unwrap();
    assert!(s.rho.grid.sup_norm() < 1e-5);
    assert!((s.discrete.pairs()[0].c - 2.0).norm() < 1e-4);
}

#[test]
fn eigenvalues_move_continuously_with_amplitude() {
    let base = soliton_potential(c(0.2, 0.6), c(1.0, 0.0), Epsilon::Minus);
    let d = Direct::default();
    let scaled = |s: f64| Potential::new(base.grid.map(|_, v| v * s), Epsilon::Minus);
    let path = [1.0, 0.98, 0.96, 0.94];
    let evs: Vec<C64> = path
        .iter()
        .map(|&s| {
            let q = scaled(s);
            let e = d.eigenvalues(&q, &Direct::default_region(&q)).unwrap();
            assert_eq!(e.len(), 1);
            e[0]
        })
        .collect();
    let slopes: Vec<f64> = evs.windows(2).map(|w| (w[1] - w[0]).norm() / 0.02).collect();
    let k = slopes.iter().cloned().fold(0.0, f64::max);
    assert!(k.is_finite() && k < 20.0, "empirical Lipschitz constant {k}");
}

#[test]
fn integrators_agree_and_registry_resolves() {
    let reg = integrator_registry();
    assert_eq!(reg.default_name(), Some("magnus4"));
    assert!(reg.get("euler").is_err());
    let q = packet(0.9, -0.4, 0.3, Epsilon::Plus);
    let a = Direct::with_integrator(reg.get("magnus4").unwrap()).transition_at(&q, 1.3).unwrap();
    let b = Direct::with_integrator(reg.get("rk4").unwrap()).transition_at(&q, 1.3).unwrap();
    assert!((a - b).max_abs() < 1e-6);
}

#[test]
fn error_paths() {
    let q = soliton_potential(I, c(2.0, 0.0), Epsilon::Plus);
    let d = Direct::default();
    assert!(matches!(d.jost(&q, c(0.0, -3.0), Which::Plus, Columns::Both), Err(DirectError::Overflow { .. })));
    let strict = Direct { alpha_floor: 2.0, ..Direct::default() };
    assert!(matches!(strict.reflection(&q, Grid1D::new(-1.0, 1.0, 3).unwrap()), Err(DirectError::SpectralSingularity { .. })));
    let region = SearchRegion::new(-1.0, 1.0, -1.0, 0.0).unwrap();
    assert!(matches!(d.eigenvalues(&q, &region), Err(DirectError::RegionMargin { .. })));
}
