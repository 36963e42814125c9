//! Orthogonality, normalisation sums, and tridiagonal actions.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exactnum::{ensure_admissible, format_rational, int, ParameterSet, Rational};
use crate::families::{recurrence_data, transition_table, Family};
use crate::opcalc::{casimir, euler_operator, DiffOp};
use crate::polyalg::{MultiPoly, VarSet};
use crate::report::{Check, Report, Scope};

use super::convolution::{hahn_vectors, racah_vectors};
use super::{compare_matrices, expand_all, mismatch, scaled_identity};

/// Both orthogonality matrices of the renormalised table equal `Γ I`.
pub fn verify_orthogonality(family: Family, params: &ParameterSet, n: u32) -> Result<Report> {
    ensure_admissible(params, n, family.mode())?;
    let table = transition_table(family, params, n)?;
    let mut report = Report::new(format!("{family}-orthogonality"), params, Scope::level(n), 0);
    let target = scaled_identity(table.size(), &table.gamma);
    report.push(Check::from_witness(
        "sum over k of values[k][l] tilde[k][l'] equals Γ δ(l,l')",
        compare_matrices(("l", "l'"), &table.orthogonality_matrix(true), &target),
    ));
    report.push(Check::from_witness(
        "sum over l of values[k][l] tilde[k'][l] equals Γ δ(k,k')",
        compare_matrices(("k", "k'"), &table.orthogonality_matrix(false), &target),
    ));
    Ok(report)
}

/// Step products of the recurrence coefficients against their closed forms,
/// both sums against `Γ`, and the standalone sum identity.
pub fn verify_gamma_sums(family: Family, params: &ParameterSet, n: u32) -> Result<Report> {
    ensure_admissible(params, n, family.mode())?;
    let table = transition_table(family, params, n)?;
    let mut report = Report::new(format!("{family}-gamma-sums"), params, Scope::level(n), 0);
    for c in table.consistency_checks() {
        report.push(c);
    }
    Ok(report)
}

/// Which operator acts on which eigenbasis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `X = x1 d1` on the `Y`-eigenbasis `w_l`.
    HahnX,
    /// `Y = C'12` on the `X`-eigenbasis `v_l`.
    HahnY,
    /// `X = C'12` on the `Y`-eigenbasis `w_l`.
    RacahX,
    /// `Y = C'23` on the `X`-eigenbasis `v_l`.
    RacahY,
}

impl Side {
    pub const ALL: [Side; 4] = [Side::HahnX, Side::HahnY, Side::RacahX, Side::RacahY];

    pub fn family(self) -> Family {
        match self {
            Side::HahnX | Side::HahnY => Family::Hahn,
            Side::RacahX | Side::RacahY => Family::Racah,
        }
    }

    pub fn of_family(family: Family) -> [Side; 2] {
        match family {
            Family::Hahn => [Side::HahnX, Side::HahnY],
            Family::Racah => [Side::RacahX, Side::RacahY],
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::HahnX => "hahn-x",
            Side::HahnY => "hahn-y",
            Side::RacahX => "racah-x",
            Side::RacahY => "racah-y",
        })
    }
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Side::ALL
            .into_iter()
            .find(|side| side.to_string() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::Parse(format!("unknown side `{s}`")))
    }
}

/// Expands the action of the non-diagonal operator on each eigenvector in
/// the same eigenbasis. The support must lie in `{l-1, l, l+1}`, the
/// diagonal must be `M(l)` (resp. `N_l`), and the off-diagonal products must
/// be `B(l) D(l+1)` (resp. `A_l C_{l+1}`); all three are independent of how
/// the eigenvectors are normalised.
pub fn verify_tridiagonal(params: &ParameterSet, n: u32, side: Side) -> Result<Report> {
    let family = side.family();
    ensure_admissible(params, n, family.mode())?;
    let rec = recurrence_data(family, params, n)?;
    let mut report = Report::new(format!("tridiagonal-{side}"), params, Scope::level(n), 0);
    let (op, basis): (DiffOp, Vec<MultiPoly>) = match side {
        Side::HahnX => (euler_operator(&VarSet::indexed("x", 2), &[1])?, hahn_vectors(params, n).1),
        Side::HahnY => (casimir(&[1, 2], params, true)?, hahn_vectors(params, n).0),
        Side::RacahX => (casimir(&[1, 2], params, true)?, racah_vectors(params, n).1),
        Side::RacahY => (casimir(&[2, 3], params, true)?, racah_vectors(params, n).0),
    };
    let (upper, lower, diagonal, names) = match side {
        Side::HahnY | Side::RacahY => (&rec.b, &rec.d, &rec.m, ("B(l)D(l+1)", "M(l)")),
        Side::HahnX | Side::RacahX => (&rec.a, &rec.c, &rec.nk, ("A_l C_(l+1)", "N_l")),
    };
    let images = basis
        .iter()
        .map(|v| op.apply(v))
        .collect::<Result<Vec<_>>>();
    // coords[l][k]: coefficient of basis k in op(basis l)
    let coords = images.and_then(|im| expand_all(&im, &basis));
    let coords = match coords {
        Ok(c) => c,
        Err(e) => {
            report.push(Check::fail("action stays in the span of the eigenbasis", format!("error: {e}")));
            return Ok(report);
        }
    };
    report.push(Check::pass("action stays in the span of the eigenbasis"));

    let support = coords.iter().enumerate().find_map(|(l, row)| {
        row.iter().enumerate().find_map(|(k, c)| {
            (k.abs_diff(l) > 1 && *c != int(0))
                .then(|| format!("l={l}, k={k}: coefficient {}", format_rational(c)))
        })
    });
    report.push(Check::from_witness("support in {l-1, l, l+1}", support));

    let diag = (0..coords.len()).find_map(|l| {
        (coords[l][l] != diagonal[l]).then(|| mismatch(&format!("l={l}"), &coords[l][l], &diagonal[l]))
    });
    report.push(Check::from_witness(format!("diagonal equals {}", names.1), diag));

    let products = (0..coords.len().saturating_sub(1)).find_map(|l| {
        let got = &coords[l + 1][l] * &coords[l][l + 1];
        let expected: Rational = &upper[l] * &lower[l + 1];
        (got != expected).then(|| mismatch(&format!("l={l}"), &got, &expected))
    });
    report.push(Check::from_witness(format!("off-diagonal products equal {}", names.0), products));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, sample_parameters, AdmissibilityMode};

    #[test]
    fn gamma_example() {
        let p = ParameterSet::parse("1,2").unwrap();
        let r = verify_gamma_sums(Family::Hahn, &p, 3).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(transition_table(Family::Hahn, &p, 3).unwrap().gamma, rat(5, 2));
        let r = verify_orthogonality(Family::Hahn, &p, 0).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn tables_pass_for_samples() {
        for family in [Family::Hahn, Family::Racah] {
            for seed in 0..3 {
                let count = if family == Family::Hahn { 2 } else { 3 };
                let p = sample_parameters(seed, count, 6, family.mode()).unwrap();
                for n in [0, 1, 4, 6] {
                    assert!(verify_orthogonality(family, &p, n).unwrap().passed());
                    assert!(verify_gamma_sums(family, &p, n).unwrap().passed());
                }
            }
        }
    }

    #[test]
    fn tridiagonal_hahn_example() {
        let p = ParameterSet::parse("1/2,3/2").unwrap();
        for side in Side::of_family(Family::Hahn) {
            let r = verify_tridiagonal(&p, 4, side).unwrap();
            assert!(r.passed(), "{}", r.to_text());
        }
    }

    #[test]
    fn tridiagonal_racah_samples() {
        for seed in 0..2 {
            let p = sample_parameters(seed, 3, 4, AdmissibilityMode::Racah).unwrap();
            for side in Side::of_family(Family::Racah) {
                for n in 0..=4 {
                    let r = verify_tridiagonal(&p, n, side).unwrap();
                    assert!(r.passed(), "{}", r.to_text());
                }
            }
        }
    }

    #[test]
    fn side_names_round_trip() {
        for side in Side::ALL {
            assert_eq!(side.to_string().parse::<Side>().unwrap(), side);
        }
        assert!("diagonal".parse::<Side>().is_err());
    }
}
