//! Exact Gaussian elimination on monomial coordinates.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::{Monomial, MultiPoly};
use crate::error::{Error, Result};
use crate::exactnum::Rational;

/// A row in echelon form: the polynomial `sum_k combo[k] * basis[k]`, whose
/// leading monomial is `pivot` with coefficient one.
struct EchelonRow {
    coords: BTreeMap<Monomial, Rational>,
    combo: Vec<Rational>,
}

struct Echelon {
    rows: Vec<EchelonRow>,
    pivots: HashMap<Monomial, usize>,
}

impl Echelon {
    /// Eliminates every pivot monomial from `coords`, updating `combo`
    /// alongside. Pivots are leading monomials, so subtracting a pivot row only
    /// introduces strictly smaller monomials; one descending sweep suffices.
    fn reduce(&self, coords: &mut BTreeMap<Monomial, Rational>, combo: &mut [Rational]) {
        let mut cursor: Option<Monomial> = None;
        loop {
            let next = match &cursor {
                None => coords.keys().next_back().cloned(),
                Some(c) => coords.range(..c.clone()).next_back().map(|(m, _)| m.clone()),
            };
            let Some(m) = next else { break };
            if let Some(&r) = self.pivots.get(&m) {
                let factor = coords[&m].clone();
                let row = &self.rows[r];
                for (rm, rc) in &row.coords {
                    let entry = coords.entry(rm.clone()).or_insert_with(Rational::zero);
                    *entry -= &factor * rc;
                    if entry.is_zero() {
                        coords.remove(rm);
                    }
                }
                for (dst, src) in combo.iter_mut().zip(&row.combo) {
                    *dst -= &factor * src;
                }
            }
            cursor = Some(m);
        }
    }
}

/// Coefficients `c` with `target = sum_k c[k] * basis[k]`.
///
/// Basis rows are processed in input order; each row's pivot is its leading
/// graded-lex monomial after reduction. A row that reduces to zero is reported
/// as [`Error::DependentBasis`] rather than silently dropped.
pub fn expand_in_basis(target: &MultiPoly, basis: &[MultiPoly]) -> Result<Vec<Rational>> {
    if basis.is_empty() {
        return Err(Error::EmptyBasis);
    }
    for b in basis {
        target.vars().check_same(b.vars())?;
    }
    let n = basis.len();
    let mut ech = Echelon {
        rows: Vec::with_capacity(n),
        pivots: HashMap::new(),
    };
    for (k, b) in basis.iter().enumerate() {
        let mut coords = b.terms.clone();
        let mut combo = vec![Rational::zero(); n];
        combo[k] = Rational::one();
        ech.reduce(&mut coords, &mut combo);
        let Some((pivot, lead)) = coords.iter().next_back().map(|(m, c)| (m.clone(), c.clone()))
        else {
            return Err(Error::DependentBasis(k));
        };
        let inv = lead.recip();
        for c in coords.values_mut() {
            *c *= &inv;
        }
        for c in combo.iter_mut() {
            *c *= &inv;
        }
        ech.pivots.insert(pivot, ech.rows.len());
        ech.rows.push(EchelonRow { coords, combo });
    }

    // target - sum_k c_k basis_k reduces to zero exactly when target is in the span;
    // track the negated combination while reducing.
    let mut coords = target.terms.clone();
    let mut combo = vec![Rational::zero(); n];
    ech.reduce(&mut coords, &mut combo);
    if !coords.is_empty() {
        return Err(Error::NotInSpan);
    }
    Ok(combo.into_iter().map(|c| -c).collect())
}

/// `sum_k coeffs[k] * basis[k]`.
pub fn recombine(coeffs: &[Rational], basis: &[MultiPoly]) -> Result<MultiPoly> {
    assert_eq!(coeffs.len(), basis.len());
    let Some(first) = basis.first() else {
        return Err(Error::EmptyBasis);
    };
    let mut out = MultiPoly::zero(first.vars());
    for (c, b) in coeffs.iter().zip(basis) {
        out = out.try_add(&b.scale(c))?;
    }
    Ok(out)
}
