//! IMEX double Butcher tableaus: storage, classification, structural
//! properties and order conditions.
//!
//! A pair couples an explicit tableau (Ã, b̃, c̃) with a diagonally implicit
//! one (A, b, c) over the same number of stages.

mod builtin;
mod conditions;
mod parse;

pub use builtin::{builtin, builtin_names};
pub use conditions::{check_additional_order, check_order, ConditionReport, CONDITION_TOL};
pub use parse::{load_pair, parse_pair};

use thiserror::Error;

/// Tolerance for structural identities (row sums, ISA/GSA, c̃ = c).
pub const STRUCT_TOL: f64 = 1e-14;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TableauError {
    #[error("unknown tableau `{name}`; valid identifiers: {valid}")]
    UnknownName { name: String, valid: String },
    #[error("malformed tableau: {0}")]
    Shape(String),
    #[error("tableau fits no scheme class: {0}")]
    Classification(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("structural error: {0}")]
    Structural(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("cannot read tableau file: {0}")]
    Io(String),
}

/// One Runge-Kutta tableau with `s` stages. `a` is stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct RkTableau {
    s: usize,
    a: Vec<f64>,
    b: Vec<f64>,
    c: Vec<f64>,
}

impl RkTableau {
    /// Build from rows of `a`, weights and abscissae. Checks shapes and that
    /// `c` reproduces the row sums of `a`.
    pub fn new(a: Vec<Vec<f64>>, b: Vec<f64>, c: Vec<f64>) -> Result<Self, TableauError> {
        let s = b.len();
        if s == 0 {
            return Err(TableauError::Shape("zero stages".into()));
        }
        if a.len() != s || a.iter().any(|r| r.len() != s) || c.len() != s {
            return Err(TableauError::Shape(format!(
                "expected {s}x{s} matrix with b, c of length {s}"
            )));
        }
        if a.iter().flatten().chain(&b).chain(&c).any(|x| !x.is_finite()) {
            return Err(TableauError::Shape("non-finite coefficient".into()));
        }
        for (i, row) in a.iter().enumerate() {
            let sum: f64 = row.iter().sum();
            if (sum - c[i]).abs() > STRUCT_TOL {
                return Err(TableauError::Shape(format!(
                    "c[{i}] = {} differs from row sum {sum}",
                    c[i]
                )));
            }
        }
        Ok(Self {
            s,
            a: a.into_iter().flatten().collect(),
            b,
            c,
        })
    }

    /// Like [`RkTableau::new`] with `c` taken as the row sums.
    pub fn from_rows(a: Vec<Vec<f64>>, b: Vec<f64>) -> Result<Self, TableauError> {
        let c = a.iter().map(|r| r.iter().sum()).collect();
        Self::new(a, b, c)
    }

    pub fn stages(&self) -> usize {
        self.s
    }

    #[inline]
    pub fn a(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.s + j]
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    pub fn c(&self) -> &[f64] {
        &self.c
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.a[i * self.s..(i + 1) * self.s]
    }

    pub fn is_strictly_lower(&self) -> bool {
        (0..self.s).all(|i| (i..self.s).all(|j| self.a(i, j) == 0.0))
    }

    pub fn is_lower(&self) -> bool {
        (0..self.s).all(|i| (i + 1..self.s).all(|j| self.a(i, j) == 0.0))
    }

    /// `a · x`.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.s)
            .map(|i| self.row(i).iter().zip(x).map(|(a, x)| a * x).sum())
            .collect()
    }
}

/// Classification of the implicit matrix of a pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemeClass {
    TypeA,
    TypeCK,
    TypeARS,
}

/// An explicit/implicit tableau pair.
#[derive(Debug, Clone, PartialEq)]
pub struct ImexPair {
    pub name: String,
    explicit: RkTableau,
    implicit: RkTableau,
    pub declared_order: usize,
    /// (explicit evaluations ν, implicit evaluations σ).
    pub declared_counts: (usize, usize),
}

impl ImexPair {
    pub fn new(
        name: impl Into<String>,
        explicit: RkTableau,
        implicit: RkTableau,
        declared_order: usize,
        declared_counts: (usize, usize),
    ) -> Result<Self, TableauError> {
        if explicit.s != implicit.s {
            return Err(TableauError::Shape(format!(
                "stage counts differ: explicit {} vs implicit {}",
                explicit.s, implicit.s
            )));
        }
        if !explicit.is_strictly_lower() {
            return Err(TableauError::Shape(
                "explicit matrix must be strictly lower triangular".into(),
            ));
        }
        if !implicit.is_lower() {
            return Err(TableauError::Shape(
                "implicit matrix must be lower triangular (DIRK)".into(),
            ));
        }
        if !(1..=3).contains(&declared_order) {
            return Err(TableauError::Shape(format!(
                "declared order {declared_order} outside 1..=3"
            )));
        }
        Ok(Self {
            name: name.into(),
            explicit,
            implicit,
            declared_order,
            declared_counts,
        })
    }

    /// Build a pair whose order and evaluation counts are inferred: the order
    /// is the largest p ≤ 3 passing [`check_order`], the counts are the number
    /// of stages whose explicit evaluation is used and the number of nonzero
    /// implicit diagonal entries.
    pub fn infer(
        name: impl Into<String>,
        explicit: RkTableau,
        implicit: RkTableau,
    ) -> Result<Self, TableauError> {
        let mut pair = Self::new(name, explicit, implicit, 1, (0, 0))?;
        pair.declared_counts = pair.evaluation_counts();
        let mut order = 0;
        for p in 1..=3 {
            match check_order(&pair, p) {
                Ok(r) if r.iter().all(|c| c.satisfied) => order = p,
                _ => break,
            }
        }
        if order == 0 {
            return Err(TableauError::Precondition(
                "pair is not consistent (first-order conditions fail)".into(),
            ));
        }
        pair.declared_order = order;
        Ok(pair)
    }

    pub fn stages(&self) -> usize {
        self.explicit.s
    }

    pub fn explicit(&self) -> &RkTableau {
        &self.explicit
    }

    pub fn implicit(&self) -> &RkTableau {
        &self.implicit
    }

    /// Counts (ν, σ) computed from the coefficients.
    pub fn evaluation_counts(&self) -> (usize, usize) {
        let s = self.stages();
        let e = &self.explicit;
        let nu = (0..s)
            .filter(|&j| e.b[j] != 0.0 || (j + 1..s).any(|i| e.a(i, j) != 0.0))
            .count();
        let sigma = (0..s).filter(|&i| self.implicit.a(i, i) != 0.0).count();
        (nu, sigma)
    }

    /// Label in the `NAME(ν,σ,p)` convention.
    pub fn label(&self) -> String {
        let (nu, sigma) = self.declared_counts;
        let stem = self.name.trim_end_matches(|c: char| c.is_ascii_digit());
        format!("{stem}({nu},{sigma},{})", self.declared_order)
    }

    pub fn classify(&self) -> Result<SchemeClass, TableauError> {
        classify(self)
    }

    pub fn is_isa(&self) -> bool {
        is_isa(self)
    }

    pub fn is_gsa(&self) -> bool {
        is_gsa(self)
    }
}

pub fn classify(pair: &ImexPair) -> Result<SchemeClass, TableauError> {
    let a = &pair.implicit;
    let s = a.s;
    if (0..s).all(|i| a.a(i, i) != 0.0) {
        return Ok(SchemeClass::TypeA);
    }
    if a.a(0, 0) != 0.0 {
        return Err(TableauError::Classification(
            "a zero diagonal entry below the first stage".into(),
        ));
    }
    if let Some(i) = (1..s).find(|&i| a.a(i, i) == 0.0) {
        return Err(TableauError::Classification(format!(
            "a11 = 0 and the trailing sub-block is singular (a[{i}][{i}] = 0)"
        )));
    }
    let first_col_zero = (1..s).all(|i| a.a(i, 0) == 0.0);
    if !first_col_zero {
        Ok(SchemeClass::TypeCK)
    } else if a.b[0] == 0.0 {
        Ok(SchemeClass::TypeARS)
    } else {
        Err(TableauError::Classification(
            "first implicit column is zero but b1 != 0".into(),
        ))
    }
}

pub fn is_isa(pair: &ImexPair) -> bool {
    let a = &pair.implicit;
    let s = a.s;
    (0..s).all(|i| (a.a(s - 1, i) - a.b[i]).abs() <= STRUCT_TOL)
}

pub fn is_gsa(pair: &ImexPair) -> bool {
    let e = &pair.explicit;
    let s = e.s;
    is_isa(pair) && (0..s - 1).all(|i| (e.a(s - 1, i) - e.b[i]).abs() <= STRUCT_TOL)
}
