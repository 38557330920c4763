use crate::tableaux::ImexPair;

/// Which discrete system the speeds are computed for.
#[derive(Debug, Clone, Copy)]
pub enum SpeedKind<'a> {
    /// The implicit-explicit Euler scheme.
    FirstOrder,
    GeneralPair(&'a ImexPair),
}

/// `(bᵀζBe, bᵀBÃe)` with `B = (ζI + A)⁻¹`. Zero pivots (ζ = 0 with
/// `aᵢᵢ = 0`) contribute nothing, which is the ζ → 0 limit for the pair
/// types in use.
pub fn pair_factors(pair: &ImexPair, zeta: f64) -> (f64, f64) {
    let (ex, im) = (pair.explicit(), pair.implicit());
    let s = pair.stages();
    let ones = vec![1.0; s];
    let ate = ex.mul_vec(&ones);
    let solve = |rhs: &[f64]| {
        let mut y = vec![0.0; s];
        for i in 0..s {
            let d = zeta + im.a(i, i);
            if d == 0.0 {
                continue;
            }
            let r: f64 = rhs[i] - (0..i).map(|j| im.a(i, j) * y[j]).sum::<f64>();
            y[i] = r / d;
        }
        y
    };
    let z = solve(&ones);
    let y = solve(&ate);
    let b = im.b();
    let dot = |x: &[f64]| b.iter().zip(x).map(|(p, q)| p * q).sum::<f64>();
    (zeta * dot(&z), dot(&y))
}

/// Characteristic speeds `(λ₊, λ₋)` of the hyperbolic part of the
/// time-discrete system, with `p′ = 1`.
pub fn characteristic_speeds(kind: SpeedKind, dt: f64, eps: f64, alpha: f64, c: f64) -> (f64, f64) {
    characteristic_speeds_with(kind, dt, eps, alpha, c, 1.0)
}

/// As [`characteristic_speeds`] for a general `p′(u) > 0`.
pub fn characteristic_speeds_with(
    kind: SpeedKind,
    dt: f64,
    eps: f64,
    alpha: f64,
    c: f64,
    p_prime: f64,
) -> (f64, f64) {
    let e1 = eps.powf(1.0 + alpha);
    if dt == 0.0 {
        let l = eps.powf(-alpha) * p_prime.sqrt();
        return (l, -l);
    }
    match kind {
        SpeedKind::FirstOrder => {
            let xi = dt / (e1 + dt);
            let r = (c * c + 4.0 * eps * eps * p_prime / (dt * dt)).sqrt();
            (0.5 * xi * (c + r), 0.5 * xi * (c - r))
        }
        SpeedKind::GeneralPair(pair) => {
            let s = pair.stages();
            let (s1, s2) = pair_factors(pair, e1 / dt);
            let ass = pair.implicit().a(s - 1, s - 1);
            let k = s1 * eps.powf(1.0 - alpha) * p_prime / (e1 + ass * dt);
            let a = c * s2;
            let r = (a * a + 4.0 * k).sqrt();
            (0.5 * (a + r), 0.5 * (a - r))
        }
    }
}

/// Largest `|λ±|` over the given state ranges.
pub(crate) fn speed_bound(kind: SpeedKind, dt: f64, eps: f64, alpha: f64, c_abs: f64, p_prime: f64) -> f64 {
    let (lp, lm) = characteristic_speeds_with(kind, dt, eps, alpha, c_abs, p_prime);
    lp.abs().max(lm.abs())
}
