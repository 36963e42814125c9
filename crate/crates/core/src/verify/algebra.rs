//! Hahn and Racah algebra relations for every available realisation.

use crate::error::Result;
use crate::exactnum::{ensure_admissible, int, AdmissibilityMode, ParameterSet};
use crate::opcalc::{
    casimir, check_algebra_relations, check_algebra_relations_on, euler_operator,
    hahn_difference_ops, hahn_jacobi_pair, racah_difference_ops, AlgebraRelations, Central,
};
use crate::polyalg::{Monomial, MultiPoly, VarSet};
use crate::report::{Report, Scope};

use super::convolution::racah_vectors;

fn scope(n: u32, degree: u32) -> Scope {
    Scope {
        n: Some(n),
        d: Some(degree),
        ..Scope::default()
    }
}

/// Hahn relations at level `N` for the difference operators and the Jacobi
/// pair; for the two-variable Casimir realisation with `h12` as central
/// operator; and for the same realisation on the degree-`N` component with
/// `h12 = N`.
pub fn verify_hahn_algebra(params: &ParameterSet, n: u32, degree: u32) -> Result<Report> {
    ensure_admissible(params, n, AdmissibilityMode::Hahn)?;
    let level = int(i64::from(n));
    let mut report = Report::new("hahn-algebra", params, scope(n, degree), 0);

    let (x, y) = hahn_difference_ops(params, n)?;
    let rel = AlgebraRelations::hahn(params, Central::Level(level.clone()));
    report.absorb("difference operators: ", check_algebra_relations(&x, &y, &rel, degree));

    let (x, y) = hahn_jacobi_pair(params, n, &VarSet::single("v"))?;
    let rel = AlgebraRelations::hahn(params, Central::Level(level.clone()));
    report.absorb("Jacobi operators: ", check_algebra_relations(&x, &y, &rel, degree));

    let vars = VarSet::indexed("x", 2);
    let x = euler_operator(&vars, &[1])?;
    let y = casimir(&[1, 2], params, true)?;
    let h = euler_operator(&vars, &[1, 2])?;
    let rel = AlgebraRelations::hahn(params, Central::Operator(h));
    report.absorb("sl2 realisation: ", check_algebra_relations(&x, &y, &rel, degree));

    let component: Vec<MultiPoly> = Monomial::all_of_degree(2, n)
        .into_iter()
        .map(|m| MultiPoly::term(&vars, m, int(1)))
        .collect();
    let rel = AlgebraRelations::hahn(params, Central::Level(level));
    report.absorb(
        "sl2 realisation at level N: ",
        check_algebra_relations_on(&x, &y, &rel, &component, "monomials of degree N"),
    );
    Ok(report)
}

/// Racah relations at level `N` for the difference operators; for the
/// Casimir pair `(C'12, C'23)` with `C'123` as central operator; and for the
/// same pair on the `C'123` eigenspace spanned by `x123^j v_l` and
/// `x123^j w_l` (`j <= 2`) with the level-`N` constants.
pub fn verify_racah_algebra(params: &ParameterSet, n: u32, degree: u32) -> Result<Report> {
    ensure_admissible(params, n, AdmissibilityMode::Racah)?;
    let level = int(i64::from(n));
    let mut report = Report::new("racah-algebra", params, scope(n, degree), 0);

    let (x, y) = racah_difference_ops(params, n)?;
    let rel = AlgebraRelations::racah(params, Central::Level(level.clone()));
    report.absorb("difference operators: ", check_algebra_relations(&x, &y, &rel, degree));

    let x = casimir(&[1, 2], params, true)?;
    let y = casimir(&[2, 3], params, true)?;
    let c = casimir(&[1, 2, 3], params, true)?;
    let rel = AlgebraRelations::racah(params, Central::Operator(c));
    report.absorb("Casimir realisation: ", check_algebra_relations(&x, &y, &rel, degree));

    let (v, w) = racah_vectors(params, n);
    let vars = VarSet::indexed("x", 3);
    let t = MultiPoly::var(&vars, 0) + MultiPoly::var(&vars, 1) + MultiPoly::var(&vars, 2);
    let mut eigenspace = Vec::new();
    for j in 0..=2 {
        let tj = t.pow(j);
        eigenspace.extend(v.iter().chain(&w).map(|p| &tj * p));
    }
    let rel = AlgebraRelations::racah(params, Central::Level(level));
    report.absorb(
        "Casimir realisation at level N: ",
        check_algebra_relations_on(&x, &y, &rel, &eigenspace, "the C'123 eigenspace"),
    );
    Ok(report)
}
