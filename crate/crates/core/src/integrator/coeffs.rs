//! Stage coefficients of the scaled stage equations.
//!
//! With `ζ = ε^(1+α)/Δt`, `ν = ε^(1−α)` and `B = (ζI + A)⁻¹` the stages are
//!
//! ```text
//! V = ζB vⁿe + BÃ G + BA Hn − νBM P
//! U = uⁿe − Δt ∂ₓ(ζBc vⁿ + BAÃ G + BAA Hn − νBAM P)
//! ```
//!
//! where `M = Ã` (explicit diffusion) or `M = A` (implicit diffusion), `G`,
//! `Hn` are the source parts and `P = p(U)ₓ`. Every coefficient stays
//! bounded as ζ → 0.

use crate::tableaux::ImexPair;

/// The pair's coefficient matrices, with an extra stage `(b̃; b)` appended
/// when the numerical solution is not already the last stage.
#[derive(Debug, Clone)]
pub(crate) struct Extended {
    pub s: usize,
    pub at: Vec<f64>,
    pub ai: Vec<f64>,
}

impl Extended {
    pub fn new(pair: &ImexPair) -> Self {
        let s0 = pair.stages();
        let (ex, im) = (pair.explicit(), pair.implicit());
        let last_is_solution = pair.is_gsa() && ex.b()[s0 - 1] == 0.0;
        let s = if last_is_solution { s0 } else { s0 + 1 };
        let mut at = vec![0.0; s * s];
        let mut ai = vec![0.0; s * s];
        for i in 0..s0 {
            for j in 0..s0 {
                at[i * s + j] = ex.a(i, j);
                ai[i * s + j] = im.a(i, j);
            }
        }
        if s > s0 {
            for j in 0..s0 {
                at[s0 * s + j] = ex.b()[j];
                ai[s0 * s + j] = im.b()[j];
            }
        }
        Self { s, at, ai }
    }

    pub fn ai(&self, i: usize, j: usize) -> f64 {
        self.ai[i * self.s + j]
    }
}

/// Row-major `s × s` product of lower-triangular matrices.
fn lower_mul(x: &[f64], y: &[f64], s: usize) -> Vec<f64> {
    let mut out = vec![0.0; s * s];
    for i in 0..s {
        for j in 0..=i {
            out[i * s + j] = (j..=i).map(|k| x[i * s + k] * y[k * s + j]).sum();
        }
    }
    out
}

/// Coefficients at one grid site (cell or face), all `s × s` row-major
/// unless noted.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Coefs {
    /// `ζBe`, length s.
    pub beta: Vec<f64>,
    pub gamma: Vec<f64>,
    pub eta: Vec<f64>,
    pub delta: Vec<f64>,
    /// `ζBc`, length s.
    pub cv: Vec<f64>,
    pub cg: Vec<f64>,
    pub ch: Vec<f64>,
    pub cp: Vec<f64>,
}

impl Coefs {
    pub fn new(ext: &Extended, zeta: f64, nu: f64, implicit_p: bool) -> Self {
        let s = ext.s;
        let (at, ai) = (&ext.at, &ext.ai);
        let mut bm = vec![0.0; s * s];
        for j in 0..s {
            for i in j..s {
                let mut r = if i == j { 1.0 } else { 0.0 };
                for k in j..i {
                    r -= ai[i * s + k] * bm[k * s + j];
                }
                bm[i * s + j] = r / (zeta + ai[i * s + i]);
            }
        }
        let m = if implicit_p { ai } else { at };
        let gamma = lower_mul(&bm, at, s);
        let eta = lower_mul(&bm, ai, s);
        let delta: Vec<f64> = lower_mul(&bm, m, s).iter().map(|x| nu * x).collect();
        let cg = lower_mul(&eta, at, s);
        let ch = lower_mul(&eta, ai, s);
        let cp: Vec<f64> = lower_mul(&eta, m, s).iter().map(|x| nu * x).collect();
        let row_sum = |x: &[f64], i: usize, w: &dyn Fn(usize) -> f64| -> f64 {
            (0..=i).map(|k| x[i * s + k] * w(k)).sum()
        };
        let c: Vec<f64> = (0..s).map(|i| (0..s).map(|k| ai[i * s + k]).sum()).collect();
        let beta = (0..s).map(|i| zeta * row_sum(&bm, i, &|_| 1.0)).collect();
        let cv = (0..s).map(|i| zeta * row_sum(&bm, i, &|k| c[k])).collect();
        Self { beta, gamma, eta, delta, cv, cg, ch, cp }
    }

    /// Entrywise mean, used for face coefficients between two cells.
    pub fn mean(a: &Self, b: &Self) -> Self {
        let avg = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(p, q)| 0.5 * (p + q)).collect();
        Self {
            beta: avg(&a.beta, &b.beta),
            gamma: avg(&a.gamma, &b.gamma),
            eta: avg(&a.eta, &b.eta),
            delta: avg(&a.delta, &b.delta),
            cv: avg(&a.cv, &b.cv),
            cg: avg(&a.cg, &b.cg),
            ch: avg(&a.ch, &b.ch),
            cp: avg(&a.cp, &b.cp),
        }
    }
}

/// Coefficients for every cell and face of a grid.
#[derive(Debug, Clone)]
pub(crate) enum Sites {
    Uniform(Coefs),
    Varying { cells: Vec<Coefs>, faces: Vec<Coefs> },
}

impl Sites {
    pub fn new(ext: &Extended, eps: f64, alpha: &[f64], dt: f64, implicit_p: bool, periodic: bool) -> Self {
        let make = |a: f64| Coefs::new(ext, eps.powf(1.0 + a) / dt, eps.powf(1.0 - a), implicit_p);
        if alpha.windows(2).all(|w| w[0] == w[1]) {
            return Sites::Uniform(make(alpha[0]));
        }
        let cells: Vec<Coefs> = alpha.iter().map(|&a| make(a)).collect();
        let n = cells.len();
        let faces = (0..=n)
            .map(|k| {
                if k == 0 || k == n {
                    if periodic {
                        Coefs::mean(&cells[n - 1], &cells[0])
                    } else {
                        cells[k.min(n - 1)].clone()
                    }
                } else {
                    Coefs::mean(&cells[k - 1], &cells[k])
                }
            })
            .collect();
        Sites::Varying { cells, faces }
    }

    #[inline]
    pub fn cell(&self, i: usize) -> &Coefs {
        match self {
            Sites::Uniform(c) => c,
            Sites::Varying { cells, .. } => &cells[i],
        }
    }

    #[inline]
    pub fn face(&self, k: usize) -> &Coefs {
        match self {
            Sites::Uniform(c) => c,
            Sites::Varying { faces, .. } => &faces[k],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableaux::{builtin, builtin_names};

    #[test]
    fn gsa_pairs_are_not_extended() {
        for n in builtin_names() {
            assert_eq!(Extended::new(&builtin(n).unwrap()).s, builtin(n).unwrap().stages(), "{n}");
        }
    }

    #[test]
    fn stiff_limit_of_u_coefficients() {
        // as ζ → 0 the U-coefficients reduce to Ã, A and, for the diffusion
        // weight, Ã or A
        for n in builtin_names() {
            let ext = Extended::new(&builtin(n).unwrap());
            let s = ext.s;
            for implicit in [false, true] {
                let c = Coefs::new(&ext, 1e-14, 1.0, implicit);
                for i in 1..s {
                    for j in 0..s {
                        let at = ext.at[i * s + j];
                        let ai = ext.ai[i * s + j];
                        assert!((c.cg[i * s + j] - at).abs() < 1e-10, "{n} cg {i}{j}");
                        assert!((c.ch[i * s + j] - ai).abs() < 1e-10 || j == 0, "{n} ch {i}{j}");
                        let m = if implicit { ai } else { at };
                        assert!((c.cp[i * s + j] - m).abs() < 1e-10 || (j == 0 && implicit), "{n} cp {i}{j}");
                    }
                    assert!(c.cv[i].abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn nonstiff_limit() {
        // ζ → ∞: V → vⁿ and the vⁿ coefficient of U → c
        let pair = builtin("BPR343").unwrap();
        let ext = Extended::new(&pair);
        let c = Coefs::new(&ext, 1e12, 1.0, false);
        for i in 0..ext.s {
            assert!((c.beta[i] - 1.0).abs() < 1e-10);
            assert!((c.cv[i] - pair.implicit().c()[i]).abs() < 1e-10);
        }
    }
}
