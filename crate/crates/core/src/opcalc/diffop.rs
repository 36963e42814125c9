use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::LinearOperator;
use crate::error::Result;
use crate::exactnum::{binomial, Rational};
use crate::polyalg::{Monomial, MultiPoly, VarSet};

/// Differential operator with polynomial coefficients,
/// `sum_alpha c_alpha(x) d^alpha`, keyed by the derivative multi-index.
#[derive(Clone, PartialEq, Eq)]
pub struct DiffOp {
    vars: VarSet,
    terms: BTreeMap<Monomial, MultiPoly>,
}

/// All `gamma <= alpha` componentwise.
fn sub_indices(alpha: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::with_capacity(alpha.len())];
    for &a in alpha {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=a).map(move |g| {
                    let mut p = prefix.clone();
                    p.push(g);
                    p
                })
            })
            .collect();
    }
    out
}

impl DiffOp {
    pub fn zero(vars: &VarSet) -> Self {
        DiffOp {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(vars: &VarSet, c: Rational) -> Self {
        Self::multiplication(&MultiPoly::constant(vars, c))
    }

    pub fn identity(vars: &VarSet) -> Self {
        Self::scalar(vars, Rational::one())
    }

    /// Multiplication by `p`.
    pub fn multiplication(p: &MultiPoly) -> Self {
        let mut op = Self::zero(p.vars());
        op.add_term(Monomial::one(p.vars().len()), p.clone());
        op
    }

    /// `d/dx_i` (0-based).
    pub fn partial(vars: &VarSet, i: usize) -> Self {
        Self::partial_pow(vars, i, 1)
    }

    pub fn partial_pow(vars: &VarSet, i: usize, k: u32) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = k;
        Self::term(MultiPoly::one(vars), Monomial::new(e))
    }

    /// `coeff * d^alpha`.
    pub fn term(coeff: MultiPoly, alpha: Monomial) -> Self {
        let mut op = Self::zero(coeff.vars());
        op.add_term(alpha, coeff);
        op
    }

    fn add_term(&mut self, alpha: Monomial, c: MultiPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(alpha) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &MultiPoly)> {
        self.terms.iter()
    }

    /// Highest total derivative order; `None` for the zero operator.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn coefficient(&self, alpha: &Monomial) -> Option<&MultiPoly> {
        self.terms.get(alpha)
    }

    /// Leibniz rule: `f d^a . g d^b = sum_{c <= a} C(a, c) f (d^c g) d^{a-c+b}`.
    pub fn compose(&self, other: &DiffOp) -> Result<DiffOp> {
        self.vars.check_same(&other.vars)?;
        let mut out = DiffOp::zero(&self.vars);
        for (alpha, f) in &self.terms {
            let subs = sub_indices(alpha.exponents());
            for (beta, g) in &other.terms {
                for gamma in &subs {
                    let dg = g.derivative_multi(&Monomial::new(gamma.clone()));
                    if dg.is_zero() {
                        continue;
                    }
                    let weight = alpha
                        .exponents()
                        .iter()
                        .zip(gamma)
                        .fold(Rational::one(), |acc, (&a, &c)| acc * binomial(a, c));
                    let idx: Vec<u32> = alpha
                        .exponents()
                        .iter()
                        .zip(gamma)
                        .zip(beta.exponents())
                        .map(|((&a, &c), &b)| a - c + b)
                        .collect();
                    out.add_term(Monomial::new(idx), (f * &dg).scale(&weight));
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &DiffOp) -> Result<DiffOp> {
        self.vars.check_same(&other.vars)?;
        let mut out = self.clone();
        for (alpha, c) in &other.terms {
            out.add_term(alpha.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> DiffOp {
        if c.is_zero() {
            return DiffOp::zero(&self.vars);
        }
        DiffOp {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(a, p)| (a.clone(), p.scale(c)))
                .collect(),
        }
    }

    pub fn apply(&self, p: &MultiPoly) -> Result<MultiPoly> {
        self.vars.check_same(p.vars())?;
        let mut out = MultiPoly::zero(&self.vars);
        for (alpha, c) in &self.terms {
            let d = p.derivative_multi(alpha);
            if !d.is_zero() {
                out = &out + &(c * &d);
            }
        }
        Ok(out)
    }

    /// Same operator over a larger variable set containing these variables.
    pub fn embed(&self, target: &VarSet) -> Result<DiffOp> {
        let mut out = DiffOp::zero(target);
        for (alpha, c) in &self.terms {
            let idx = MultiPoly::term(&self.vars, alpha.clone(), Rational::one()).embed(target)?;
            let (m, _) = idx.leading().expect("nonzero");
            out.add_term(m.clone(), c.embed(target)?);
        }
        Ok(out)
    }
}

impl LinearOperator for DiffOp {
    type Vector = MultiPoly;

    fn scalar_like(&self, c: Rational) -> Self {
        DiffOp::scalar(&self.vars, c)
    }

    fn try_compose(&self, other: &Self) -> Result<Self> {
        self.compose(other)
    }

    fn try_add(&self, other: &Self) -> Result<Self> {
        self.add(other)
    }

    fn scale(&self, c: &Rational) -> Self {
        DiffOp::scale(self, c)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn apply(&self, v: &MultiPoly) -> Result<MultiPoly> {
        DiffOp::apply(self, v)
    }

    fn vector_is_zero(v: &MultiPoly) -> bool {
        v.is_zero()
    }

    fn test_vectors(&self, degree: u32) -> Vec<MultiPoly> {
        let n = self.vars.len();
        (0..=degree)
            .flat_map(|d| {
                let mut ms = Monomial::all_of_degree(n, d);
                ms.reverse();
                ms
            })
            .map(|m| MultiPoly::term(&self.vars, m, Rational::one()))
            .collect()
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let names = self.vars.names();
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(alpha, c)| {
                let ds: Vec<String> = alpha
                    .exponents()
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            format!("d{}", names[i])
                        } else {
                            format!("d{}^{}", names[i], e)
                        }
                    })
                    .collect();
                if ds.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c}) {}", ds.join(" "))
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffOp({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn derivative_of_square() {
        let v = VarSet::single("x");
        let x = MultiPoly::var(&v, 0);
        let d = DiffOp::partial(&v, 0);
        assert_eq!(d.apply(&x.pow(2)).unwrap(), x.scale(&int(2)));
    }

    #[test]
    fn weyl_relation() {
        let v = VarSet::single("x");
        let d = DiffOp::partial(&v, 0);
        let x = DiffOp::multiplication(&MultiPoly::var(&v, 0));
        assert_eq!(d.commutator(&x).unwrap(), DiffOp::identity(&v));
    }

    #[test]
    fn higher_order_leibniz() {
        let v = VarSet::single("x");
        let x = MultiPoly::var(&v, 0);
        // d^2 . x^2 = x^2 d^2 + 4x d + 2
        let lhs = DiffOp::partial_pow(&v, 0, 2)
            .compose(&DiffOp::multiplication(&x.pow(2)))
            .unwrap();
        let rhs = DiffOp::term(x.pow(2), Monomial::new(vec![2]))
            .add(&DiffOp::term(x.scale(&int(4)), Monomial::new(vec![1])))
            .unwrap()
            .add(&DiffOp::scalar(&v, int(2)))
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn mismatched_vars() {
        let a = DiffOp::partial(&VarSet::single("x"), 0);
        let b = DiffOp::partial(&VarSet::single("y"), 0);
        assert!(a.compose(&b).is_err());
        assert!(a.apply(&MultiPoly::var(&VarSet::single("y"), 0)).is_err());
    }

    fn arb_op() -> impl Strategy<Value = DiffOp> {
        prop::collection::vec(((0u32..3, 0u32..3), (0u32..3, 0u32..2), (-4i64..4, 1i64..3)), 0..4)
            .prop_map(|terms| {
                let v = VarSet::new(&["x", "y"]);
                let mut op = DiffOp::zero(&v);
                for ((a, b), (p, q), (n, d)) in terms {
                    let c = MultiPoly::term(&v, Monomial::new(vec![p, q]), rat(n, d));
                    op = op.add(&DiffOp::term(c, Monomial::new(vec![a, b]))).unwrap();
                }
                op
            })
    }

    proptest! {
        #[test]
        fn composition_matches_action(a in arb_op(), b in arb_op(), e in (0u32..5, 0u32..5)) {
            let v = a.vars().clone();
            let f = MultiPoly::term(&v, Monomial::new(vec![e.0, e.1]), int(1));
            let ab = a.compose(&b).unwrap();
            prop_assert_eq!(ab.apply(&f).unwrap(), a.apply(&b.apply(&f).unwrap()).unwrap());
        }

        #[test]
        fn composition_is_associative(a in arb_op(), b in arb_op(), c in arb_op()) {
            let lhs = a.compose(&b).unwrap().compose(&c).unwrap();
            let rhs = a.compose(&b.compose(&c).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
