use crate::types::Potential;
use dnls_numerics::C64;

fn rotate_by_mass(p: &Potential, sign: f64) -> Potential {
    let g = &p.grid;
    let dens = g.map(|_, v| C64::new(v.norm_sqr(), 0.0));
    let cum = dens.cumulative_trapezoid();
    let e = p.epsilon.sign();
    let values = g.values.iter().zip(cum).map(|(&v, m)| v * C64::new(0.0, sign * e * m.re).exp()).collect();
    Potential { grid: g.with_values(values), epsilon: p.epsilon }
}

/// q(x) = exp(−iε∫_{−∞}^x |u|²) u(x); the left tail beyond the grid is taken as zero.
pub fn gauge_forward(u: &Potential) -> Potential {
    rotate_by_mass(u, -1.0)
}

/// u(x) = exp(+iε∫_{−∞}^x |q|²) q(x).
pub fn gauge_inverse(q: &Potential) -> Potential {
    rotate_by_mass(q, 1.0)
}
