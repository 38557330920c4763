use super::HarnessError;
use std::f64::consts::PI;

const SERIES_CUTOFF: f64 = 2.5;

/// Error function, accurate to about 1e-13 absolute on the real line.
///
/// Below [`SERIES_CUTOFF`] the positive-term series
/// `erf x = 2/√π e^(−x²) Σ 2ⁿx^(2n+1)/(2n+1)!!` is summed; above it `erfc`
/// comes from its continued fraction, evaluated with the modified Lentz
/// algorithm.
pub fn erf(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    let a = x.abs();
    let r = if a < SERIES_CUTOFF { erf_series(a) } else { 1.0 - erfc_cf(a) };
    r.copysign(x)
}

pub fn erfc(x: f64) -> f64 {
    if x >= SERIES_CUTOFF {
        erfc_cf(x)
    } else {
        1.0 - erf(x)
    }
}

fn erf_series(x: f64) -> f64 {
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    let mut k = 0.0;
    loop {
        k += 1.0;
        term *= 2.0 * x2 / (2.0 * k + 1.0);
        sum += term;
        if term <= sum * 1e-17 {
            break;
        }
    }
    2.0 / PI.sqrt() * (-x2).exp() * sum
}

// erfc x = e^(−x²)/√π · 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + …))))
fn erfc_cf(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0;
    for k in 1..500 {
        let a = k as f64 / 2.0;
        d = x + a * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = x + a / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (-x * x).exp() / (PI.sqrt() * f)
}

/// Exact solution of the linear model with drift 1 started from
/// `ρ = sin x, j = sin x − cos x`.
pub fn exact_linear_advdiff(x: f64, t: f64, a_drift: f64) -> Result<(f64, f64), HarnessError> {
    if a_drift != 1.0 {
        return Err(HarnessError::Unsupported(format!(
            "the closed-form solution is known only for drift 1, got {a_drift}"
        )));
    }
    let decay = (-t).exp();
    let (s, c) = (x - t).sin_cos();
    Ok((decay * s, decay * (s - c)))
}

/// Density of the diffusive-limit Riemann solution with unit drift.
pub fn exact_riemann_erf(x: f64, t: f64, rho_l: f64, rho_r: f64) -> Result<f64, HarnessError> {
    if !(t > 0.0) {
        return Err(HarnessError::Domain(format!("need t > 0, got {t}")));
    }
    Ok(0.5 * (rho_l + rho_r) + 0.5 * (rho_l - rho_r) * erf((t - x) / (2.0 * t.sqrt())))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum NormKind {
    LinfRelative,
    L1,
}

impl NormKind {
    pub fn label(&self) -> &'static str {
        match self {
            NormKind::LinfRelative => "linf_relative",
            NormKind::L1 => "l1",
        }
    }
}

pub fn error_norms(numeric: &[f64], reference: &[f64], dx: f64, kind: NormKind) -> Result<f64, HarnessError> {
    if numeric.len() != reference.len() {
        return Err(HarnessError::Validation(format!(
            "length mismatch: {} values against {} reference values",
            numeric.len(),
            reference.len()
        )));
    }
    let diff = numeric.iter().zip(reference).map(|(a, b)| (a - b).abs());
    match kind {
        NormKind::L1 => Ok(dx * diff.sum::<f64>()),
        NormKind::LinfRelative => {
            let scale = reference.iter().fold(0.0f64, |m, r| m.max(r.abs()));
            if scale == 0.0 {
                return Err(HarnessError::DegenerateNorm);
            }
            Ok(diff.fold(0.0, f64::max) / scale)
        }
    }
}
