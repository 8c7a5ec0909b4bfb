use dnls_numerics::{c, Grid1D, C64, I};
use dnls_solitons::*;
use dnls_spectral::{plancherel_sides, DiscreteSpectrum, Epsilon, Potential, ReflectionCoefficient, ScatteringData};
use proptest::prelude::*;
use std::f64::consts::PI;

fn spectrum(p: &[(C64, C64)]) -> DiscreteSpectrum {
    DiscreteSpectrum::from_pairs(p).unwrap()
}

/// Trapezoid of |f|² on a fine uniform grid.
fn mass(f: impl Fn(f64) -> C64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / (n - 1) as f64;
    (0..n).map(|i| f(a + i as f64 * h).norm_sqr() * if i == 0 || i == n - 1 { 0.5 } else { 1.0 }).sum::<f64>() * h
}

/// Location of max |f| near `guess` (dense scan, then parabolic refinement).
fn peak(f: impl Fn(f64) -> f64, guess: f64, half: f64) -> f64 {
    let n = 801;
    let h = 2.0 * half / (n - 1) as f64;
    let xs: Vec<f64> = (0..n).map(|i| guess - half + i as f64 * h).collect();
    let vs: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let i = (1..n - 1).max_by(|&a, &b| vs[a].partial_cmp(&vs[b]).unwrap()).unwrap();
    let (a, b, cc) = (vs[i - 1], vs[i], vs[i + 1]);
    xs[i] + 0.5 * h * (a - cc) / (a - 2.0 * b + cc)
}

#[test]
fn one_soliton_examples() {
    let q = one_soliton(I, c(2.0, 0.0), Epsilon::Plus, 0.0, 0.0);
    assert!((q.norm() - 8f64.sqrt()).abs() < 1e-14);
    assert!(OneSoliton::from_data(I, c(2.0, 0.0)).x0.abs() < 1e-15);

    let m = mass(|x| one_soliton(I, c(2.0, 0.0), Epsilon::Plus, x, 0.0), -30.0, 30.0, 60001);
    assert!((m - 2.0 * PI).abs() < 1e-6, "{m}");

    let lam = c(0.3, 0.7);
    for eps in [Epsilon::Plus, Epsilon::Minus] {
        for &x in &[-1.5, 0.0, 0.4, 2.2] {
            let a = one_soliton(lam, c(1.0, 1.0), eps, x, 0.5).norm();
            // travelling at speed −4 Re λ
            let b = one_soliton(lam, c(1.0, 1.0), eps, x - 4.0 * 0.3 * 2.0, 2.5).norm();
            assert!((a - b).abs() < 1e-8);
        }
    }
}

#[test]
fn l2_law() {
    for eps in [Epsilon::Plus, Epsilon::Minus] {
        for &phi in &[PI / 6.0, PI / 2.0, 3.0 * PI / 4.0] {
            let lam = C64::from_polar(1.3, phi);
            let m = mass(|x| one_soliton(lam, c(0.5, -1.0), eps, x, 0.0), -40.0, 40.0, 80001);
            let expect = if eps == Epsilon::Plus { 4.0 * (PI - phi) } else { 4.0 * phi };
            assert!((m - expect).abs() < 1e-6, "{eps} {phi}: {m} vs {expect}");
            assert!((OneSoliton::from_data(lam, c(1.0, 0.0)).mass(eps) - expect).abs() < 1e-12);
        }
    }
}

#[test]
fn partition_examples() {
    let d = spectrum(&[(c(-1.0, 1.0), c(1.0, 0.0)), (c(2.0, 1.0), c(1.0, 0.0))]);
    assert!(partition(&d, -5.0, Direction::Future).minus.is_empty());
    let p = partition(&d, 0.0, Direction::Future);
    assert_eq!((p.minus, p.plus), (vec![0], vec![1]));
    let p = partition(&d, 0.0, Direction::Past);
    assert_eq!((p.minus, p.plus), (vec![1], vec![0]));
    // on the line Re λ = ξ the index stays in Δ⁺ for both signs of t
    let p = partition(&d, 2.0, Direction::Past);
    assert_eq!(p.plus, vec![0, 1]);
}

#[test]
fn blaschke_examples() {
    let d = spectrum(&[(c(-1.0, 1.0), c(1.0, 0.0)), (c(0.5, 0.3), c(1.0, 0.0))]);
    assert_eq!(blaschke(c(0.3, 0.2), &d, &[]).unwrap(), c(1.0, 0.0));
    assert!(matches!(blaschke(c(0.5, 0.3), &d, &[1]), Err(SolitonError::Pole { .. })));
    for &s in &[-3.0, 0.0, 0.7, 10.0] {
        assert!((blaschke(c(s, 0.0), &d, &[0, 1]).unwrap().norm() - 1.0).abs() < 1e-14);
    }
    for &z in &[c(0.2, 0.9), c(-2.0, -0.4), c(1.0, 3.0)] {
        let v = blaschke(z.conj(), &d, &[0, 1]).unwrap().conj() * blaschke(z, &d, &[0, 1]).unwrap();
        assert!((v - 1.0).norm() < 1e-12);
    }
}

#[test]
fn empty_spectrum() {
    let d = DiscreteSpectrum::empty();
    let s = solve_system(&d, Epsilon::Plus, 0.0, Direction::Future, 1.0, 0.5).unwrap();
    assert!(s.is_empty() && s.residual == 0.0);
    assert_eq!(s.q(), c(0.0, 0.0));
    assert_eq!(q_nsoliton(&d, Epsilon::Minus, 3.0, 1.0).unwrap(), c(0.0, 0.0));
    let m = s.matrix(c(0.4, 1.0)).unwrap();
    assert_eq!(m, [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]]);
}

#[test]
fn single_soliton_matches_closed_form() {
    for eps in [Epsilon::Plus, Epsilon::Minus] {
        for &(lam, cc) in &[(I, c(2.0, 0.0)), (c(0.3, 0.8), c(1.0, -2.0)), (c(-0.6, 0.4), c(-0.2, 0.3))] {
            let d = spectrum(&[(lam, cc)]);
            for &t in &[-1.0, 0.0, 0.7] {
                for &x in &[-6.0, -1.3, 0.0, 0.4, 2.5, 7.0] {
                    let exact = one_soliton(lam, cc, eps, x, t);
                    let q = q_nsoliton(&d, eps, x, t).unwrap();
                    assert!((q - exact).norm() < 1e-8, "{eps} {lam} ({x},{t}): {q} vs {exact}");
                    for xi in [lam.re - 1.0, lam.re + 1.0] {
                        let q = q_nsoliton_with(&d, eps, xi, Direction::Future, x, t).unwrap();
                        assert!((q - exact).norm() < 1e-8);
                    }
                }
            }
        }
    }
}

fn three() -> DiscreteSpectrum {
    spectrum(&[(c(-0.5, 0.7), c(1.0, 0.5)), (c(0.6, 0.9), c(-0.3, 1.0)), (c(0.1, 0.4), c(2.0, 0.0))])
}

#[test]
fn nsol_matrix_is_unimodular_and_symmetric() {
    let d = three();
    let mut rng = 0x2545F4914F6CDD1Du64;
    let mut next = || {
        rng ^= rng << 13;
        rng ^= rng >> 7;
        rng ^= rng << 17;
        (rng >> 11) as f64 / (1u64 << 53) as f64
    };
    for eps in [Epsilon::Plus, Epsilon::Minus] {
        let s = solve_system(&d, eps, 0.2, Direction::Future, 0.3, 0.4).unwrap();
        for _ in 0..20 {
            let lam = c(6.0 * next() - 3.0, 6.0 * next() - 3.0);
            let m = s.matrix(lam).unwrap();
            let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
            assert!((det - 1.0).norm() < 1e-8, "{det}");
            let mb = s.matrix(lam.conj()).unwrap();
            assert!((m[1][1] - mb[0][0].conj()).norm() < 1e-10);
        }
        assert!(matches!(s.matrix(d.lambdas()[1]), Err(SolitonError::Pole { .. })));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn residual_small_for_random_three(
        re in proptest::collection::vec(-1.5f64..1.5, 3),
        im in proptest::collection::vec(0.2f64..1.5, 3),
        cr in proptest::collection::vec(-2.0f64..2.0, 3),
        ci in proptest::collection::vec(-2.0f64..2.0, 3),
        x in -5.0f64..5.0, t in -1.0f64..1.0, plus in any::<bool>(),
    ) {
        let eps = if plus { Epsilon::Plus } else { Epsilon::Minus };
        let pairs: Vec<_> = (0..3).map(|k| (c(re[k], im[k]), c(cr[k], ci[k]) + 0.1)).collect();
        let Ok(d) = DiscreteSpectrum::from_pairs(&pairs) else { return Ok(()) };
        prop_assume!(pairs.iter().enumerate().all(|(i, a)| pairs[i + 1..].iter().all(|b| (a.0 - b.0).norm() > 0.05)));
        let s = solve_partitioned(&d, eps, &balanced_partition(&d, x, t), x, t).unwrap();
        prop_assert!(s.residual < 1e-9);
        // partition is a change of unknowns only
        let lo = q_nsoliton_with(&d, eps, -10.0, Direction::Future, x, t).unwrap();
        let hi = q_nsoliton_with(&d, eps, 10.0, Direction::Future, x, t).unwrap();
        prop_assert!((lo - hi).norm() < 1e-8 * (1.0 + lo.norm()));
        prop_assert!((s.q() - lo).norm() < 1e-8 * (1.0 + lo.norm()));
    }

    #[test]
    fn global_phase_rotation_keeps_modulus(psi in 0.0f64..6.28) {
        let d = three();
        let r = d.map_constants(|p| p.c * C64::from_polar(1.0, psi));
        for &x in &[-2.0, -0.5, 0.0, 1.0, 3.0] {
            let a = q_nsoliton(&d, Epsilon::Plus, x, 0.3).unwrap().norm();
            let b = q_nsoliton(&r, Epsilon::Plus, x, 0.3).unwrap().norm();
            prop_assert!((a - b).abs() < 1e-8);
        }
    }
}

#[test]
fn coefficients_bounded_on_cone_partition() {
    let d = three();
    for i in 0..20 {
        for j in 0..20 {
            let t = 0.5 + 2.0 * j as f64;
            let x = -40.0 + 4.0 * i as f64;
            let s = solve_system(&d, Epsilon::Plus, -x / (4.0 * t), Direction::Future, x, t).unwrap();
            let m = s.a.iter().chain(&s.b).map(|v| v.norm()).fold(0.0, f64::max);
            assert!(m.is_finite() && m < 1e3, "({x},{t}): {m}");
        }
    }
}

#[test]
fn two_soliton_plancherel() {
    let d = spectrum(&[(c(-0.5, 0.7), c(1.0, 0.0)), (c(0.6, 0.9), c(0.5, 1.0))]);
    let g = Grid1D::new(-40.0, 40.0, 8001).unwrap();
    for eps in [Epsilon::Plus, Epsilon::Minus] {
        let vals = q_nsoliton_on(&d, eps, &g.nodes(), 0.0).unwrap();
        let q = Potential::new(dnls_numerics::ComplexGrid1D::new(g.min, g.max, vals).unwrap(), eps);
        let data = ScatteringData::reflectionless(d.clone(), eps, Grid1D::new(-10.0, 10.0, 101).unwrap());
        let (lhs, rhs) = plancherel_sides(&q, &data);
        assert!((lhs - rhs).norm() < 1e-6, "{eps}: {lhs} vs {rhs}");
        // direct closed form of the right side for ε = +1
        if eps == Epsilon::Plus {
            let s: f64 = d.lambdas().iter().map(|l| 4.0 * (PI - l.arg())).sum();
            assert!((q.l2_norm_sq() - s).abs() < 1e-6);
        }
    }
}

#[test]
fn reduce_window_examples() {
    let d = spectrum(&[(c(-0.5, 0.7), c(1.0, 0.0)), (c(0.6, 0.9), c(0.5, 1.0))]);
    let rho = ReflectionCoefficient::zero(Grid1D::new(-5.0, 5.0, 11).unwrap(), Epsilon::Plus);
    assert_eq!(reduce_window(&d, &rho, (-1.0, 1.0), 0.0, Direction::Future).unwrap(), d);
    // window with λ₂ only, cone with λ₁ on the growing side
    let r = reduce_window(&d, &rho, (0.5, 0.7), 0.6, Direction::Future).unwrap();
    assert_eq!(r.len(), 1);
    let (l1, l2) = (d.lambdas()[0], d.lambdas()[1]);
    let expect = ((l2 - l1) / (l2 - l1.conj())).norm().powi(2);
    assert!(((r.pairs()[0].c / d.pairs()[1].c).norm() - expect).abs() < 1e-14);
    // the other time direction sees no growing soliton
    let r = reduce_window(&d, &rho, (0.5, 0.7), 0.6, Direction::Past).unwrap();
    assert_eq!(r.pairs()[0].c, d.pairs()[1].c);
}

#[test]
fn reduced_window_is_close_on_the_cone() {
    let d = spectrum(&[(c(-0.5, 0.7), c(1.0, 0.0)), (c(0.6, 0.9), c(0.5, 1.0))]);
    let rho = ReflectionCoefficient::zero(Grid1D::new(-5.0, 5.0, 11).unwrap(), Epsilon::Plus);
    let t = 30.0;
    for (k, eta) in [(0usize, Direction::Future), (1, Direction::Future), (0, Direction::Past), (1, Direction::Past)] {
        let lk = d.lambdas()[k];
        let t = eta.sign() * t;
        let xi = lk.re;
        let r = reduce_window(&d, &rho, (xi - 0.1, xi + 0.1), xi, eta).unwrap();
        let mut err: f64 = 0.0;
        for i in 0..81 {
            let x = -4.0 * xi * t + (i as f64 - 40.0) * 0.1;
            let full = q_nsoliton(&d, Epsilon::Plus, x, t).unwrap();
            let red = q_nsoliton(&r, Epsilon::Plus, x, t).unwrap();
            err = err.max((full - red).norm());
        }
        assert!(err < 1e-3, "soliton {k}, t = {t}: {err}");
    }
}

#[test]
fn phase_shift_examples() {
    let rho = ReflectionCoefficient::zero(Grid1D::new(-5.0, 5.0, 11).unwrap(), Epsilon::Plus);
    let lam = c(0.3, 0.8);
    let cc = c(1.0, -2.0);
    let d = spectrum(&[(lam, cc)]);
    let ps = phase_shifts(&d, &rho, 0).unwrap();
    let x0 = (lam * cc * cc / (4.0 * 0.64)).norm().ln() / 3.2;
    assert!((ps.x_plus - x0).abs() < 1e-14 && ps.total_shift().abs() < 1e-14);
    assert!((ps.alpha_plus - wrap_phase((I * lam * cc).arg())).abs() < 1e-14);

    let d = spectrum(&[(c(-0.5, 0.7), c(1.0, 0.0)), (c(0.6, 0.9), c(0.5, 1.0))]);
    let (l1, l2) = (d.lambdas()[0], d.lambdas()[1]);
    let ps = phase_shifts(&d, &rho, 1).unwrap();
    let expect = (1.0 / 0.9) * ((l2 - l1) / (l2 - l1.conj())).norm().ln();
    assert!((ps.total_shift() - expect).abs() < 1e-12);

    let breather = spectrum(&[(c(0.2, 0.7), c(1.0, 0.0)), (c(0.2, 0.3), c(1.0, 0.0))]);
    assert!(matches!(phase_shifts(&breather, &rho, 0), Err(SolitonError::Degenerate { .. })));
    assert!(matches!(phase_shifts(&breather, &rho, 5), Err(SolitonError::Index { .. })));
}

#[test]
fn tracked_peaks_match_phase_shifts() {
    let d = spectrum(&[(c(-0.5, 0.7), c(1.0, 0.0)), (c(0.6, 0.9), c(0.5, 1.0))]);
    let rho = ReflectionCoefficient::zero(Grid1D::new(-5.0, 5.0, 11).unwrap(), Epsilon::Plus);
    for eps in [Epsilon::Plus, Epsilon::Minus] {
        for k in 0..2 {
            let ps = phase_shifts(&d, &rho, k).unwrap();
            let u = d.lambdas()[k].re;
            for (t, xk) in [(40.0, ps.x_plus), (-40.0, ps.x_minus)] {
                let guess = xk - 4.0 * u * t;
                let p = peak(|x| q_nsoliton(&d, eps, x, t).unwrap().norm(), guess, 1.0);
                assert!((p - guess).abs() < 0.05, "{eps} k={k} t={t}: peak {p}, predicted {guess}");
            }
        }
    }
}
