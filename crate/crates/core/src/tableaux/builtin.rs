use super::{ImexPair, RkTableau, TableauError};

const NAMES: [&str; 5] = ["ARS111", "ARS222", "CK222", "BPR442", "BPR343"];

pub fn builtin_names() -> &'static [&'static str] {
    &NAMES
}

/// Look up one of the builtin pairs. Matching ignores case and the
/// punctuation of the `NAME(ν,σ,p)` spelling, so `ars(2,2,2)` works too.
pub fn builtin(name: &str) -> Result<ImexPair, TableauError> {
    let key: String = name
        .chars()
        .filter(|c| c.is_ascii_alphanumeric())
        .collect::<String>()
        .to_ascii_uppercase();
    match key.as_str() {
        "ARS111" => ars111(),
        "ARS222" => ars222(),
        "CK222" => ck222(),
        "BPR442" => bpr442(),
        "BPR343" => bpr343(),
        _ => Err(TableauError::UnknownName {
            name: name.to_string(),
            valid: NAMES.join(", "),
        }),
    }
}

fn pair(
    name: &str,
    ae: Vec<Vec<f64>>,
    be: Vec<f64>,
    ai: Vec<Vec<f64>>,
    bi: Vec<f64>,
    order: usize,
    counts: (usize, usize),
) -> Result<ImexPair, TableauError> {
    let explicit = RkTableau::from_rows(ae, be)?;
    let implicit = RkTableau::from_rows(ai, bi)?;
    ImexPair::new(name, explicit, implicit, order, counts)
}

fn ars111() -> Result<ImexPair, TableauError> {
    pair(
        "ARS111",
        vec![vec![0.0, 0.0], vec![1.0, 0.0]],
        vec![1.0, 0.0],
        vec![vec![0.0, 0.0], vec![0.0, 1.0]],
        vec![0.0, 1.0],
        1,
        (1, 1),
    )
}

fn ars222() -> Result<ImexPair, TableauError> {
    let g = 1.0 - 1.0 / 2f64.sqrt();
    let d = 1.0 - 1.0 / (2.0 * g);
    pair(
        "ARS222",
        vec![
            vec![0.0, 0.0, 0.0],
            vec![g, 0.0, 0.0],
            vec![d, 1.0 - d, 0.0],
        ],
        vec![d, 1.0 - d, 0.0],
        vec![
            vec![0.0, 0.0, 0.0],
            vec![0.0, g, 0.0],
            vec![0.0, 1.0 - g, g],
        ],
        vec![0.0, 1.0 - g, g],
        2,
        (2, 2),
    )
}

fn ck222() -> Result<ImexPair, TableauError> {
    let r = 2f64.sqrt();
    let g = 1.0 - r / 2.0;
    pair(
        "CK222",
        vec![
            vec![0.0, 0.0, 0.0],
            vec![2.0 / 3.0, 0.0, 0.0],
            vec![0.25, 0.75, 0.0],
        ],
        vec![0.25, 0.75, 0.0],
        vec![
            vec![0.0, 0.0, 0.0],
            vec![-1.0 / 3.0 + r / 2.0, g, 0.0],
            vec![0.75 - r / 4.0, -0.75 + 3.0 * r / 4.0, g],
        ],
        vec![0.75 - r / 4.0, -0.75 + 3.0 * r / 4.0, g],
        2,
        (2, 2),
    )
}

fn bpr442() -> Result<ImexPair, TableauError> {
    pair(
        "BPR442",
        vec![
            vec![0.0; 5],
            vec![0.25, 0.0, 0.0, 0.0, 0.0],
            vec![13.0 / 4.0, -3.0, 0.0, 0.0, 0.0],
            vec![0.25, 0.0, 0.5, 0.0, 0.0],
            vec![0.0, 1.0 / 3.0, 1.0 / 6.0, 0.5, 0.0],
        ],
        vec![0.0, 1.0 / 3.0, 1.0 / 6.0, 0.5, 0.0],
        vec![
            vec![0.0; 5],
            vec![0.0, 0.25, 0.0, 0.0, 0.0],
            vec![0.0, 0.0, 0.25, 0.0, 0.0],
            vec![0.0, 1.0 / 24.0, 11.0 / 24.0, 0.25, 0.0],
            vec![0.0, 11.0 / 24.0, 1.0 / 6.0, 1.0 / 8.0, 0.25],
        ],
        vec![0.0, 11.0 / 24.0, 1.0 / 6.0, 1.0 / 8.0, 0.25],
        2,
        (4, 4),
    )
}

fn bpr343() -> Result<ImexPair, TableauError> {
    pair(
        "BPR343",
        vec![
            vec![0.0; 5],
            vec![1.0, 0.0, 0.0, 0.0, 0.0],
            vec![4.0 / 9.0, 2.0 / 9.0, 0.0, 0.0, 0.0],
            vec![0.25, 0.0, 0.75, 0.0, 0.0],
            vec![0.25, 0.0, 0.75, 0.0, 0.0],
        ],
        vec![0.25, 0.0, 0.75, 0.0, 0.0],
        vec![
            vec![0.0; 5],
            vec![0.5, 0.5, 0.0, 0.0, 0.0],
            vec![5.0 / 18.0, -1.0 / 9.0, 0.5, 0.0, 0.0],
            vec![0.5, 0.0, 0.0, 0.5, 0.0],
            vec![0.25, 0.0, 0.75, -0.5, 0.5],
        ],
        vec![0.25, 0.0, 0.75, -0.5, 0.5],
        3,
        (3, 4),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tableaux::SchemeClass;

    #[test]
    fn ars111_coefficients() {
        let p = builtin("ARS111").unwrap();
        assert_eq!(p.explicit().row(1), &[1.0, 0.0]);
        assert_eq!(p.explicit().b(), &[1.0, 0.0]);
        assert_eq!(p.implicit().a(1, 1), 1.0);
        assert_eq!(p.implicit().b(), &[0.0, 1.0]);
    }

    #[test]
    fn bpr_rows() {
        let p = builtin("BPR343").unwrap();
        assert_eq!(p.implicit().row(4), &[0.25, 0.0, 0.75, -0.5, 0.5]);
        assert_eq!(p.implicit().row(4), p.implicit().b());
        let q = builtin("BPR442").unwrap();
        assert_eq!(q.implicit().row(3), &[0.0, 1.0 / 24.0, 11.0 / 24.0, 0.25, 0.0]);
    }

    #[test]
    fn unknown_name_lists_valid() {
        let err = builtin("RK4").unwrap_err();
        let msg = err.to_string();
        for n in NAMES {
            assert!(msg.contains(n));
        }
    }

    #[test]
    fn loose_spelling() {
        assert_eq!(builtin("bpr(3,4,3)").unwrap().name, "BPR343");
    }

    #[test]
    fn classes() {
        let cls = |n| builtin(n).unwrap().classify().unwrap();
        assert_eq!(cls("CK222"), SchemeClass::TypeCK);
        assert_eq!(cls("BPR343"), SchemeClass::TypeCK);
        assert_eq!(cls("ARS111"), SchemeClass::TypeARS);
        assert_eq!(cls("ARS222"), SchemeClass::TypeARS);
        assert_eq!(cls("BPR442"), SchemeClass::TypeARS);
    }

    #[test]
    fn counts_match_coefficients() {
        for n in NAMES {
            let p = builtin(n).unwrap();
            assert_eq!(p.evaluation_counts(), p.declared_counts, "{n}");
        }
        assert_eq!(builtin("BPR343").unwrap().label(), "BPR(3,4,3)");
    }

    #[test]
    fn all_gsa() {
        for n in NAMES {
            let p = builtin(n).unwrap();
            assert!(p.is_gsa() && p.is_isa(), "{n}");
        }
    }

    #[test]
    fn perturbed_last_row_not_isa() {
        let p = builtin("BPR343").unwrap();
        let s = p.stages();
        let mut rows: Vec<Vec<f64>> = (0..s).map(|i| p.implicit().row(i).to_vec()).collect();
        rows[s - 1][2] += 1e-6;
        rows[s - 1][3] -= 1e-6;
        let imp = RkTableau::from_rows(rows, p.implicit().b().to_vec()).unwrap();
        let q = ImexPair::new("x", p.explicit().clone(), imp, 3, (3, 4)).unwrap();
        assert!(!q.is_isa());
        assert!(!q.is_gsa());
    }
}
