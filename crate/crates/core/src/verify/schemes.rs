//! Higher-rank checks: commuting Casimir families and their common
//! eigenvectors, plus the enumeration counts.

use crate::coupling::{
    commutative_family, dedupe_families, eigenvalue, eigenvector, enumerate_schemes, k_vectors,
    CouplingScheme,
};
use crate::error::Result;
use crate::exactnum::{ensure_admissible, format_rational, int, AdmissibilityMode, ParameterSet};
use crate::opcalc::{casimir, DiffOp, LinearOperator};
use crate::polyalg::{Monomial, MultiPoly, VarSet};
use crate::report::{Check, Report, Scope};

use super::first_failure;

/// For the family selected by `scheme`: every pair of operators commutes (as
/// normal forms and on all monomials of degree `<= degree`), and for every
/// `k` with `|k| <= max_k` each operator maps the eigenvector `v_k` to the
/// predicted multiple of itself.
pub fn verify_scheme(
    scheme: &CouplingScheme,
    params: &ParameterSet,
    degree: u32,
    max_k: u32,
) -> Result<Report> {
    let n = scheme.n();
    let bound = degree.max(max_k);
    if params.len() != n {
        return Err(crate::error::Error::ModeArityMismatch {
            mode: "HigherRank",
            expected: n,
            got: params.len(),
        });
    }
    ensure_admissible(params, bound, AdmissibilityMode::HigherRank { degree: bound })?;
    let scope = Scope {
        d: Some(degree),
        k: Some(max_k),
        scheme: Some(scheme.to_string()),
        ..Scope::default()
    };
    let mut report = Report::new("scheme", params, scope, 0);
    let family = commutative_family(scheme);
    let ops = family
        .iter()
        .map(|s| casimir(&s.elements(), params, true))
        .collect::<Result<Vec<DiffOp>>>()?;

    let vars = VarSet::indexed("x", n);
    let monomials: Vec<MultiPoly> = Monomial::all_up_to_degree(n, degree)
        .into_iter()
        .map(|m| MultiPoly::term(&vars, m, int(1)))
        .collect();
    let pairs: Vec<(usize, usize)> = (0..ops.len())
        .flat_map(|a| (a + 1..ops.len()).map(move |b| (a, b)))
        .collect();
    let commutators = pairs
        .iter()
        .map(|&(a, b)| ops[a].commutator(&ops[b]))
        .collect::<Result<Vec<_>>>()?;
    let normal = pairs.iter().zip(&commutators).find_map(|(&(a, b), c)| {
        (!c.is_zero()).then(|| format!("[C'{}, C'{}] = {c}", family[a], family[b]))
    });
    report.push(Check::from_witness("pairwise commutators vanish, normal form", normal));
    let indexed: Vec<usize> = (0..pairs.len()).collect();
    report.push(Check::from_result(
        format!("pairwise commutators vanish on monomials of degree <= {degree}"),
        first_failure(&indexed, |&i| {
            let (a, b) = pairs[i];
            for m in &monomials {
                let r = commutators[i].apply(m)?;
                if !r.is_zero() {
                    return Ok(Some(format!("[C'{}, C'{}] at {m}: {r}", family[a], family[b])));
                }
            }
            Ok(None)
        }),
    ));

    let ks = k_vectors(n - 1, max_k);
    report.push(Check::from_result(
        format!("eigen-equations for |k| <= {max_k}"),
        first_failure(&ks, |k| {
            let v = eigenvector(scheme, k, params)?;
            for (b, op) in ops.iter().enumerate() {
                let lam = eigenvalue(scheme, b + 1, k, params)?;
                let residual = &op.apply(&v)? - &v.scale(&lam);
                if !residual.is_zero() {
                    return Ok(Some(format!(
                        "k={k:?}, C'{}: eigenvalue {}, residual {residual}",
                        family[b],
                        format_rational(&lam)
                    )));
                }
            }
            Ok(None)
        }),
    ));
    Ok(report)
}

/// Enumeration and deduplication counts against the closed forms
/// `n!(n-1)!/2^(n-1)` and `(2n-3)!!` for `n` in `2..=max_n`.
pub fn verify_counting(max_n: usize) -> Result<Report> {
    let params = ParameterSet::parse("1,1")?;
    let mut report = Report::new("counting", &params, Scope::default(), 0);
    report.params.clear();
    for n in 2..=max_n {
        let schemes = enumerate_schemes(n)?;
        let m = n as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        let expected = fact(m) * fact(m - 1) / (1u128 << (m - 1));
        let got = schemes.len() as u128;
        report.push(Check::from_witness(
            format!("n={n}: {expected} schemes"),
            (got != expected).then(|| format!("enumerated {got}")),
        ));
        let expected: u128 = (1..=2 * m - 3).step_by(2).product();
        let got = dedupe_families(&schemes).len() as u128;
        report.push(Check::from_witness(
            format!("n={n}: {expected} distinct families"),
            (got != expected).then(|| format!("found {got}")),
        ));
    }
    Ok(report)
}
