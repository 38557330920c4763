//! Relaxation systems
//!
//! ```text
//! u_t + v_x = 0
//! v_t + ε^(-2α) p(u)_x = ε^(-(1+α)) (G(u) + H(v))
//! ```
//!
//! with the source split into a part explicit in `u` and a part implicit in
//! `v`. `H(v) = -v + Hn(v)` where `Hn` is either zero or `-q v²`.

mod expr;

pub use expr::Expr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("stiff source solve failed: negative discriminant (u = {u:?}, r = {r}, kappa = {kappa})")]
    StiffSolve { u: Option<f64>, r: f64, kappa: f64 },
    #[error("expression error: {0}")]
    Expr(String),
    #[error("invalid scaling: {0}")]
    Scaling(String),
}

/// ε and the per-cell α(x).
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingParams {
    pub epsilon: f64,
    pub alpha: Vec<f64>,
}

impl ScalingParams {
    pub fn new(epsilon: f64, alpha: Vec<f64>) -> Result<Self, ModelError> {
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(ModelError::Scaling(format!("epsilon must be positive, got {epsilon}")));
        }
        if let Some(a) = alpha.iter().find(|a| !(0.0..=1.0).contains(*a)) {
            return Err(ModelError::Scaling(format!("alpha = {a} outside [0, 1]")));
        }
        Ok(Self { epsilon, alpha })
    }

    pub fn uniform(epsilon: f64, alpha: f64, n: usize) -> Result<Self, ModelError> {
        Self::new(epsilon, vec![alpha; n])
    }

    /// Whether α takes a single value on the whole grid.
    pub fn is_uniform(&self) -> bool {
        self.alpha.windows(2).all(|w| w[0] == w[1])
    }
}

/// How the implicit source part depends on `v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SourceKind {
    LinearInV,
    /// `H(v) = -v - q v²`.
    QuadraticInV { q: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum ModelKind {
    LinearGt { a_drift: f64 },
    RuijgrokWu,
    Custom { f: Expr, p: Expr },
}

/// One relaxation system: pressure `p`, equilibrium flux `f` and the source
/// split `G(u) + H(v)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RelaxationModel {
    pub kind: ModelKind,
}

/// Linear model with `p(u) = u`, `G(u) = f(u) = A u`, `H(v) = -v`.
pub fn make_linear_gt(a_drift: f64) -> RelaxationModel {
    RelaxationModel { kind: ModelKind::LinearGt { a_drift } }
}

/// Nonlinear model with `p(ρ) = ρ`, `G(ρ) = ρ²/2`, `H(j) = -j - ε² j²/2`.
pub fn make_ruijgrok_wu() -> RelaxationModel {
    RelaxationModel { kind: ModelKind::RuijgrokWu }
}

/// Model with user expressions for `f` and `p`, `G = f` and `H(v) = -v`.
pub fn make_custom(f: &str, p: &str) -> Result<RelaxationModel, ModelError> {
    Ok(RelaxationModel {
        kind: ModelKind::Custom { f: Expr::parse(f)?, p: Expr::parse(p)? },
    })
}

impl RelaxationModel {
    pub fn name(&self) -> &'static str {
        match self.kind {
            ModelKind::LinearGt { .. } => "linear_gt",
            ModelKind::RuijgrokWu => "ruijgrok_wu",
            ModelKind::Custom { .. } => "custom",
        }
    }

    pub fn p(&self, u: f64) -> f64 {
        match &self.kind {
            ModelKind::LinearGt { .. } | ModelKind::RuijgrokWu => u,
            ModelKind::Custom { p, .. } => p.eval(u),
        }
    }

    pub fn p_prime(&self, u: f64) -> f64 {
        match &self.kind {
            ModelKind::LinearGt { .. } | ModelKind::RuijgrokWu => 1.0,
            ModelKind::Custom { p, .. } => p.derivative(u),
        }
    }

    pub fn f(&self, u: f64) -> f64 {
        match &self.kind {
            ModelKind::LinearGt { a_drift } => a_drift * u,
            ModelKind::RuijgrokWu => 0.5 * u * u,
            ModelKind::Custom { f, .. } => f.eval(u),
        }
    }

    pub fn f_prime(&self, u: f64) -> f64 {
        match &self.kind {
            ModelKind::LinearGt { a_drift } => *a_drift,
            ModelKind::RuijgrokWu => u,
            ModelKind::Custom { f, .. } => f.derivative(u),
        }
    }

    /// Explicit source part.
    pub fn g(&self, u: f64) -> f64 {
        self.f(u)
    }

    pub fn h_kind(&self, eps: f64) -> SourceKind {
        match self.kind {
            ModelKind::RuijgrokWu => SourceKind::QuadraticInV { q: 0.5 * eps * eps },
            _ => SourceKind::LinearInV,
        }
    }

    /// Implicit source part.
    pub fn h(&self, v: f64, eps: f64) -> f64 {
        -v + self.hn(v, eps)
    }

    /// Nonlinear remainder `H(v) + v`.
    pub fn hn(&self, v: f64, eps: f64) -> f64 {
        match self.h_kind(eps) {
            SourceKind::LinearInV => 0.0,
            SourceKind::QuadraticInV { q } => -q * v * v,
        }
    }

    pub fn source(&self, u: f64, v: f64, eps: f64) -> f64 {
        self.g(u) + self.h(v, eps)
    }

    pub fn p_is_linear(&self) -> bool {
        match &self.kind {
            ModelKind::LinearGt { .. } | ModelKind::RuijgrokWu => true,
            ModelKind::Custom { p, .. } => p.is_affine(),
        }
    }

    /// Drift of the limit equation `u_t + A u_x = u_xx`, for the linear model.
    pub fn limit_drift(&self) -> Option<f64> {
        match self.kind {
            ModelKind::LinearGt { a_drift } => Some(a_drift),
            _ => None,
        }
    }

    /// Solve `v = x + w·Hn(v)` for `w ≥ 0`; the scaled form of every
    /// pointwise stage solve.
    pub fn relax_solve(&self, x: f64, w: f64, eps: f64) -> Result<f64, ModelError> {
        match self.h_kind(eps) {
            SourceKind::LinearInV => Ok(x),
            SourceKind::QuadraticInV { q } => {
                let qw = q * w;
                if qw == 0.0 {
                    return Ok(x);
                }
                let disc = 1.0 + 4.0 * qw * x;
                if !(disc >= 0.0) {
                    return Err(ModelError::StiffSolve { u: None, r: x, kappa: w });
                }
                Ok(2.0 * x / (1.0 + disc.sqrt()))
            }
        }
    }
}

/// The root `v` of `G(u) + H(v) = 0` that tends to `f(u)` as ε → 0.
pub fn equilibrium(model: &RelaxationModel, u: f64, eps: f64) -> Result<f64, ModelError> {
    let g = model.g(u);
    match model.h_kind(eps) {
        SourceKind::LinearInV => Ok(g),
        SourceKind::QuadraticInV { q } => {
            let disc = 1.0 + 4.0 * q * g;
            if !(disc >= 0.0) {
                return Err(ModelError::Domain(format!(
                    "no equilibrium for u = {u}, eps = {eps}: discriminant {disc}"
                )));
            }
            Ok(2.0 * g / (1.0 + disc.sqrt()))
        }
    }
}

/// Solve `v = r + kappa·H(v)` with `kappa ≥ 0`.
pub fn implicit_source_solve(
    model: &RelaxationModel,
    r: f64,
    kappa: f64,
    eps: f64,
) -> Result<f64, ModelError> {
    if !(kappa >= 0.0) {
        return Err(ModelError::Domain(format!("kappa must be nonnegative, got {kappa}")));
    }
    if kappa.is_infinite() {
        return Err(ModelError::Domain("kappa must be finite".into()));
    }
    let d = 1.0 + kappa;
    model
        .relax_solve(r / d, kappa / d, eps)
        .map_err(|_| ModelError::StiffSolve { u: None, r, kappa })
}

/// Interaction constants and dimensionless numbers of the two-velocity
/// kinetic model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RwKineticParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub mach: f64,
    pub knudsen: f64,
    pub reynolds: f64,
}

impl RwKineticParams {
    pub fn new(eps: f64, alpha: f64, a: f64, b: f64, c: f64) -> Result<Self, ModelError> {
        if !(eps > 0.0) {
            return Err(ModelError::Scaling(format!("epsilon must be positive, got {eps}")));
        }
        if !(a > 0.0 && b > 0.0 && c >= 0.0) {
            return Err(ModelError::Domain(format!(
                "need a, b > 0 and c >= 0, got ({a}, {b}, {c})"
            )));
        }
        Ok(Self {
            a,
            b,
            c,
            mach: eps.powf(alpha),
            knudsen: eps,
            reynolds: eps.powf(alpha - 1.0),
        })
    }

    /// Constants behind the linear model with drift `a_drift`.
    pub fn linear(eps: f64, alpha: f64, a_drift: f64) -> Result<Self, ModelError> {
        Self::new(eps, alpha, 1.0 + a_drift * eps, 1.0 - a_drift * eps, 0.0)
    }

    /// Constants behind the nonlinear model.
    pub fn nonlinear(eps: f64, alpha: f64) -> Result<Self, ModelError> {
        Self::new(eps, alpha, 1.0, 1.0, 2.0 * eps)
    }
}

pub fn kinetic_to_macro(f_plus: f64, f_minus: f64, mach: f64) -> (f64, f64) {
    (f_plus + f_minus, (f_plus - f_minus) / mach)
}

pub fn macro_to_kinetic(rho: f64, j: f64, mach: f64) -> (f64, f64) {
    let mj = mach * j;
    (0.5 * (rho + mj), 0.5 * (rho - mj))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn linear_model() {
        let m = make_linear_gt(1.0);
        assert_eq!(equilibrium(&m, 2.0, 0.1).unwrap(), 2.0);
        assert_eq!(equilibrium(&m, 3.0, 0.1).unwrap(), 3.0);
        assert_eq!(m.limit_drift(), Some(1.0));
        assert_eq!(m.p_prime(-4.2), 1.0);
        assert!(m.p_is_linear());
    }

    #[test]
    fn rw_equilibria() {
        let m = make_ruijgrok_wu();
        assert_eq!(equilibrium(&m, 0.0, 1.0).unwrap(), 0.0);
        let j = equilibrium(&m, 1.0, 1.0).unwrap();
        assert!((j - (2f64.sqrt() - 1.0)).abs() < 1e-15);
        assert!((j - 0.414214).abs() < 1e-6);
        assert!((equilibrium(&m, 2.0, 1e-8).unwrap() - 2.0).abs() < 1e-14);
        assert_eq!(equilibrium(&m, 1.0, 0.0).unwrap(), 0.5);
        // closed form of the Maxwellian
        let (rho, eps) = (2.0f64, 0.4f64);
        let closed = ((1.0 + rho * rho * eps * eps).sqrt() - 1.0) / (eps * eps);
        assert!((equilibrium(&m, rho, eps).unwrap() - closed).abs() < 1e-14);
    }

    #[test]
    fn source_solve_examples() {
        let lin = make_linear_gt(1.0);
        assert_eq!(implicit_source_solve(&lin, 1.0, 1.0, 0.1).unwrap(), 0.5);
        let rw = make_ruijgrok_wu();
        assert_eq!(implicit_source_solve(&rw, 0.7, 0.0, 1.0).unwrap(), 0.7);
        assert_eq!(implicit_source_solve(&lin, 0.7, 0.0, 1.0).unwrap(), 0.7);
        let v = implicit_source_solve(&rw, 1.0, 1.0, 1.0).unwrap();
        assert!((v - (6f64.sqrt() - 2.0)).abs() < 1e-15);
        assert!(matches!(
            implicit_source_solve(&rw, -10.0, 1.0, 1.0),
            Err(ModelError::StiffSolve { .. })
        ));
    }

    #[test]
    fn large_kappa_limit() {
        // v = r + κH(v) ⇒ r/κ + H(v) = 0 as κ → ∞, i.e. the equilibrium of G = r/κ.
        let rw = make_ruijgrok_wu();
        let (r, kappa, eps) = (3.0e12, 1e12, 0.5);
        let v = implicit_source_solve(&rw, r, kappa, eps).unwrap();
        let q = eps * eps / 2.0;
        let g = r / kappa;
        let want = (-1.0 + (1.0 + 4.0 * q * g).sqrt()) / (2.0 * q);
        assert!((v - want).abs() < 1e-10, "{v} vs {want}");
    }

    #[test]
    fn kinetic_conversions() {
        assert_eq!(kinetic_to_macro(1.0, 1.0, 1.0), (2.0, 0.0));
        assert_eq!(kinetic_to_macro(3.0, 1.0, 2.0), (4.0, 1.0));
        let (fp, fm) = macro_to_kinetic(4.0, 0.0, 0.5);
        assert_eq!(kinetic_to_macro(fp, fm, 0.5), (4.0, 0.0));
        let k = RwKineticParams::nonlinear(0.3, 0.5).unwrap();
        assert!((k.reynolds * k.knudsen - k.mach).abs() < 1e-15);
        assert!(RwKineticParams::linear(2.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn scaling_validation() {
        assert!(ScalingParams::new(0.0, vec![1.0]).is_err());
        assert!(ScalingParams::new(1e-3, vec![1.2]).is_err());
        assert!(ScalingParams::uniform(1e-3, 0.5, 4).unwrap().is_uniform());
    }

    #[test]
    fn custom_model() {
        let m = make_custom("u^2/2", "u + u^3/3").unwrap();
        assert_eq!(m.f_prime(3.0), 3.0);
        assert_eq!(m.p_prime(2.0), 5.0);
        assert!(!m.p_is_linear());
        assert!(make_custom("u +", "u").is_err());
    }

    fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
        let flo = f(lo);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if (f(mid) > 0.0) == (flo > 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    proptest! {
        #[test]
        fn quadratic_solve_matches_bisection(r in -2.0f64..5.0, kappa in 0.0f64..20.0, eps in 0.0f64..1.5) {
            let rw = make_ruijgrok_wu();
            let q = eps * eps / 2.0;
            let v = implicit_source_solve(&rw, r, kappa, eps);
            // root of kq v² + (1+k) v - r continuous in q, bracketed on [-10, 10]
            let res = |v: f64| kappa * q * v * v + (1.0 + kappa) * v - r;
            let disc = (1.0 + kappa).powi(2) + 4.0 * kappa * q * r;
            if disc < 0.0 {
                prop_assert!(v.is_err());
            } else {
                let v = v.unwrap();
                let vertex = if kappa * q > 0.0 { -(1.0 + kappa) / (2.0 * kappa * q) } else { -10.0 };
                let lo = vertex.max(-10.0);
                prop_assume!(res(lo) * res(10.0) <= 0.0);
                let want = bisect(res, lo, 10.0);
                prop_assert!((v - want).abs() < 1e-10, "{} vs {}", v, want);
            }
        }

        #[test]
        fn equilibrium_zeroes_source(u in -5.0f64..5.0, eps in 1e-8f64..1.0) {
            for m in [make_linear_gt(1.0), make_linear_gt(-0.7), make_ruijgrok_wu()] {
                if let Ok(v) = equilibrium(&m, u, eps) {
                    prop_assert!(m.source(u, v, eps).abs() < 1e-12 * (1.0 + m.g(u).abs()));
                }
            }
        }
    }
}
