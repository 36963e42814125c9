//! Named verification suites. Each returns a [`Report`] whose outcome depends
//! only on its inputs; work is spread over rayon but results are merged in
//! index order.

mod algebra;
mod conjugation;
mod convolution;
mod schemes;
mod tables;

pub use algebra::{verify_hahn_algebra, verify_racah_algebra};
pub use conjugation::verify_conjugation;
pub use convolution::{
    hahn_forward_matrix, hahn_inverse_matrix, hahn_vectors, racah_forward_matrix,
    racah_inverse_matrix, racah_vectors, verify_cross_family, verify_hahn_convolution,
    verify_racah_convolution,
};
pub use schemes::{verify_counting, verify_scheme};
pub use tables::{verify_gamma_sums, verify_orthogonality, verify_tridiagonal, Side};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactnum::{format_rational, int, Rational};
use crate::opcalc::DiffOp;
use crate::polyalg::{expand_in_basis, MultiPoly};

/// Runs `f` on every item in parallel and returns the first failure in
/// index order. An error counts as a failure and is propagated.
pub(crate) fn first_failure<T, F>(items: &[T], f: F) -> Result<Option<String>>
where
    T: Sync,
    F: Fn(&T) -> Result<Option<String>> + Sync + Send,
{
    let results: Vec<_> = items.par_iter().map(f).collect();
    for r in results {
        if let Some(w) = r? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

pub(crate) fn mismatch(at: &str, got: &Rational, expected: &Rational) -> String {
    format!(
        "{at}: got {}, expected {}",
        format_rational(got),
        format_rational(expected)
    )
}

/// `a / b` with a named error on `b = 0`.
pub(crate) fn div(a: Rational, b: Rational, what: &str) -> Result<Rational> {
    if b == int(0) {
        return Err(Error::ZeroDenominator(what.to_string()));
    }
    Ok(a / b)
}

/// Coordinates of each target in `basis`; row `i` expands `targets[i]`.
pub(crate) fn expand_all(targets: &[MultiPoly], basis: &[MultiPoly]) -> Result<Vec<Vec<Rational>>> {
    targets
        .par_iter()
        .map(|t| expand_in_basis(t, basis))
        .collect()
}

/// First entry where the matrices differ, named `(row, col)` by `labels`.
pub(crate) fn compare_matrices(
    labels: (&str, &str),
    got: &[Vec<Rational>],
    expected: &[Vec<Rational>],
) -> Option<String> {
    for (i, (g, e)) in got.iter().zip(expected).enumerate() {
        for (j, (a, b)) in g.iter().zip(e).enumerate() {
            if a != b {
                return Some(mismatch(&format!("{}={i}, {}={j}", labels.0, labels.1), a, b));
            }
        }
    }
    None
}

pub(crate) fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let m = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..m)
                .map(|j| row.iter().zip(b).fold(int(0), |acc, (x, brow)| acc + x * &brow[j]))
                .collect()
        })
        .collect()
}

pub(crate) fn scaled_identity(size: usize, c: &Rational) -> Vec<Vec<Rational>> {
    (0..size)
        .map(|i| (0..size).map(|j| if i == j { c.clone() } else { int(0) }).collect())
        .collect()
}

/// First vector with `op v != eigenvalue(i) * v`.
pub(crate) fn eigen_failure<F>(op: &DiffOp, vectors: &[MultiPoly], eigenvalue: F, name: &str) -> Result<Option<String>>
where
    F: Fn(usize) -> Rational + Sync + Send,
{
    let indexed: Vec<usize> = (0..vectors.len()).collect();
    first_failure(&indexed, |&i| {
        let v = &vectors[i];
        let lam = eigenvalue(i);
        let image = op.apply(v)?;
        let expected = v.scale(&lam);
        Ok((image != expected).then(|| {
            format!(
                "{name}_{i}: eigenvalue {}, residual {}",
                format_rational(&lam),
                &image - &expected
            )
        }))
    })
}
