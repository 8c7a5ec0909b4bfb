use dnls_numerics::{c, find_zeros, NumericsError, SearchRegion, C64};
use proptest::prelude::*;
use std::f64::consts::PI;

#[test]
fn explicit_examples() {
    let reg = SearchRegion::new(-2.0, 2.0, -2.0, 0.0).unwrap();
    let z = find_zeros(&|z: C64| z * z + 1.0, &reg).unwrap();
    assert_eq!(z.len(), 1);
    assert!((z[0] - c(0.0, -1.0)).norm() < 1e-10);

    let z = find_zeros(&|_z: C64| c(1.0, 0.0), &reg).unwrap();
    assert!(z.is_empty());
}

#[test]
fn invalid_region() {
    assert!(matches!(SearchRegion::new(1.0, 0.0, 0.0, 1.0), Err(NumericsError::InvalidRegion(_))));
}

#[test]
fn transcendental_zeros() {
    // sin(z) − 0.5 has zeros at π/6 + 2πk and 5π/6 + 2πk.
    let reg = SearchRegion::new(-1.0, 8.0, -0.5, 0.7).unwrap();
    let z = find_zeros(&|z: C64| z.sin() - 0.5, &reg).unwrap();
    let want = [PI / 6.0, 5.0 * PI / 6.0, PI / 6.0 + 2.0 * PI];
    assert_eq!(z.len(), 3);
    for (a, b) in z.iter().zip(want) {
        assert!((a - c(b, 0.0)).norm() < 1e-10);
    }
}

fn winding_on_boundary(f: &dyn Fn(C64) -> C64, r: &SearchRegion) -> f64 {
    // dense, independent count
    let corners = [c(r.re_min, r.im_min), c(r.re_max, r.im_min), c(r.re_max, r.im_max), c(r.re_min, r.im_max)];
    let mut total = 0.0;
    for e in 0..4 {
        let (a, b) = (corners[e], corners[(e + 1) % 4]);
        let n = 20_000;
        for k in 0..n {
            let z0 = a + (b - a) * (k as f64 / n as f64);
            let z1 = a + (b - a) * ((k + 1) as f64 / n as f64);
            total += (f(z1) / f(z0)).arg();
        }
    }
    total / (2.0 * PI)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn count_equals_winding(roots in prop::collection::vec((-1.9f64..1.9, -1.9f64..1.9), 1..6)) {
        let rs: Vec<C64> = roots.iter().map(|&(a, b)| c(a, b)).collect();
        // keep planted roots separated so the polynomial is well conditioned
        for i in 0..rs.len() { for j in 0..i { prop_assume!((rs[i] - rs[j]).norm() > 0.05); } }
        let f = move |z: C64| rs.iter().fold(c(1.0, 0.0), |acc, r| acc * (z - r));
        let reg = SearchRegion::new(-1.0, 1.3, -1.2, 0.9).unwrap();
        // boundary zeros are legitimately rejected
        prop_assume!(roots.iter().all(|&(a, b)| (a + 1.0).abs() > 1e-3 && (a - 1.3).abs() > 1e-3 && (b + 1.2).abs() > 1e-3 && (b - 0.9).abs() > 1e-3));
        let found = find_zeros(&f, &reg).unwrap();
        let w = winding_on_boundary(&f, &reg);
        prop_assert_eq!(found.len() as i64, w.round() as i64);
        for z in &found { prop_assert!(f(*z).norm() < 1e-10); }
    }
}
