use super::{classify, ImexPair, RkTableau, SchemeClass, TableauError, STRUCT_TOL};

/// Default tolerance for an order condition to count as satisfied.
pub const CONDITION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionReport {
    pub condition_id: String,
    /// Value the condition evaluates to.
    pub value: f64,
    /// Value it is required to take.
    pub expected: f64,
    pub residual: f64,
    pub satisfied: bool,
}

impl ConditionReport {
    fn new(id: &str, value: f64, expected: f64) -> Self {
        let residual = (value - expected).abs();
        Self {
            condition_id: id.to_string(),
            value,
            expected,
            residual,
            satisfied: residual <= CONDITION_TOL,
        }
    }
}

fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

fn sq(x: &[f64]) -> Vec<f64> {
    x.iter().map(|v| v * v).collect()
}

/// Classical IMEX order conditions up to order `p` (at most 3).
pub fn check_order(pair: &ImexPair, p: usize) -> Result<Vec<ConditionReport>, TableauError> {
    if !(1..=3).contains(&p) {
        return Err(TableauError::Precondition(format!(
            "order {p} outside the supported range 1..=3"
        )));
    }
    let (e, i) = (pair.explicit(), pair.implicit());
    if e.c().iter().zip(i.c()).any(|(x, y)| (x - y).abs() > STRUCT_TOL) {
        return Err(TableauError::Precondition(
            "explicit and implicit abscissae differ".into(),
        ));
    }
    let (bt, b, c) = (e.b(), i.b(), i.c());
    let ones = vec![1.0; pair.stages()];
    let mut out = vec![
        ConditionReport::new("bt.e", dot(bt, &ones), 1.0),
        ConditionReport::new("b.e", dot(b, &ones), 1.0),
    ];
    if p >= 2 {
        out.push(ConditionReport::new("bt.c", dot(bt, c), 0.5));
        out.push(ConditionReport::new("b.c", dot(b, c), 0.5));
    }
    if p >= 3 {
        let c2 = sq(c);
        let atc = e.mul_vec(c);
        let ac = i.mul_vec(c);
        out.push(ConditionReport::new("bt.c2", dot(bt, &c2), 1.0 / 3.0));
        out.push(ConditionReport::new("b.c2", dot(b, &c2), 1.0 / 3.0));
        out.push(ConditionReport::new("b.At.c", dot(b, &atc), 1.0 / 6.0));
        out.push(ConditionReport::new("bt.At.c", dot(bt, &atc), 1.0 / 6.0));
        out.push(ConditionReport::new("b.A.c", dot(b, &ac), 1.0 / 6.0));
        out.push(ConditionReport::new("bt.A.c", dot(bt, &ac), 1.0 / 6.0));
    }
    Ok(out)
}

/// Apply A⁻¹ by forward substitution. For type CK/ARS pairs, whose A is
/// singular, the first stage is dropped: y₁ = 0 and the trailing block is
/// solved with the first-column contribution folded into the right-hand side.
pub(crate) fn apply_inverse(
    a: &RkTableau,
    class: SchemeClass,
    x: &[f64],
) -> Result<Vec<f64>, TableauError> {
    let s = a.stages();
    let mut y = vec![0.0; s];
    let start = match class {
        SchemeClass::TypeA => 0,
        SchemeClass::TypeCK | SchemeClass::TypeARS => 1,
    };
    for i in start..s {
        let d = a.a(i, i);
        if d == 0.0 {
            return Err(TableauError::Structural(format!(
                "zero pivot a[{i}][{i}] in the implicit matrix"
            )));
        }
        let mut r = x[i];
        for j in 0..i {
            r -= a.a(i, j) * y[j];
        }
        y[i] = r / d;
    }
    Ok(y)
}

/// Additional conditions that govern accuracy in the stiff limit, up to
/// order `p` (at most 2). `p = 0` yields only the consistency condition.
pub fn check_additional_order(
    pair: &ImexPair,
    p: usize,
) -> Result<Vec<ConditionReport>, TableauError> {
    if p > 2 {
        return Err(TableauError::Precondition(format!(
            "additional conditions defined up to order 2, got {p}"
        )));
    }
    let class = classify(pair).map_err(|e| TableauError::Structural(e.to_string()))?;
    let (e, i) = (pair.explicit(), pair.implicit());
    let (b, c) = (i.b(), i.c());
    let s = pair.stages();
    // bᵀA⁻²Ã x
    let eval = |x: &[f64]| -> Result<f64, TableauError> {
        let y = apply_inverse(i, class, &e.mul_vec(x))?;
        let z = apply_inverse(i, class, &y)?;
        Ok(dot(b, &z))
    };
    let ones = vec![1.0; s];
    let mut out = vec![ConditionReport::new("b.Ainv2.At.e", eval(&ones)?, 1.0)];
    if p >= 1 {
        out.push(ConditionReport::new("b.Ainv2.At.c", eval(c)?, 1.0));
    }
    if p >= 2 {
        out.push(ConditionReport::new("b.Ainv2.At.c2", eval(&sq(c))?, 1.0));
        out.push(ConditionReport::new("b.Ainv2.At.A.c", eval(&i.mul_vec(c))?, 0.5));
        out.push(ConditionReport::new("b.Ainv2.At.At.c", eval(&e.mul_vec(c))?, 0.5));
    }
    Ok(out)
}
