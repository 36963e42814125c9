use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::LinearOperator;
use crate::error::{Error, Result};
use crate::exactnum::{int, Rational};
use crate::polyalg::{MultiPoly, RatFunc, UniPoly, VarSet};

/// Difference operator `sum_m a_m(x) T^m` in one variable, where
/// `(T^m f)(x) = f(x + m)`. Coefficients are rational functions of `x`.
#[derive(Clone, PartialEq, Eq)]
pub struct ShiftOp {
    var: VarSet,
    terms: BTreeMap<i32, RatFunc>,
}

impl ShiftOp {
    pub fn zero(var: &VarSet) -> Self {
        assert_eq!(var.len(), 1, "shift operators act in one variable");
        ShiftOp {
            var: var.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(var: &VarSet, c: Rational) -> Self {
        Self::term(var, RatFunc::constant(c), 0)
    }

    pub fn identity(var: &VarSet) -> Self {
        Self::scalar(var, Rational::one())
    }

    /// `T^m`.
    pub fn shift(var: &VarSet, m: i32) -> Self {
        Self::term(var, RatFunc::constant(Rational::one()), m)
    }

    /// Multiplication by `a(x)`.
    pub fn multiplication(var: &VarSet, a: RatFunc) -> Self {
        Self::term(var, a, 0)
    }

    /// `a(x) T^m`.
    pub fn term(var: &VarSet, a: RatFunc, m: i32) -> Self {
        let mut op = Self::zero(var);
        op.add_term(m, a);
        op
    }

    fn add_term(&mut self, m: i32, a: RatFunc) {
        if a.is_zero() {
            return;
        }
        let sum = match self.terms.get(&m) {
            Some(b) => b + &a,
            None => a,
        };
        if sum.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, sum);
        }
    }

    pub fn var(&self) -> &VarSet {
        &self.var
    }

    pub fn coefficient(&self, m: i32) -> RatFunc {
        self.terms.get(&m).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &RatFunc)> {
        self.terms.iter().map(|(m, a)| (*m, a))
    }

    /// `a T^m . b T^n = a b(x + m) T^{m+n}`.
    pub fn compose(&self, other: &ShiftOp) -> Result<ShiftOp> {
        self.var.check_same(&other.var)?;
        let mut out = ShiftOp::zero(&self.var);
        for (&m, a) in &self.terms {
            let shift = int(i64::from(m));
            for (&n, b) in &other.terms {
                out.add_term(m + n, a * &b.shift(&shift));
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &ShiftOp) -> Result<ShiftOp> {
        self.var.check_same(&other.var)?;
        let mut out = self.clone();
        for (&m, a) in &other.terms {
            out.add_term(m, a.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> ShiftOp {
        if c.is_zero() {
            return ShiftOp::zero(&self.var);
        }
        ShiftOp {
            var: self.var.clone(),
            terms: self.terms.iter().map(|(m, a)| (*m, a.scale(c))).collect(),
        }
    }

    pub fn apply_rat(&self, f: &RatFunc) -> RatFunc {
        let mut out = RatFunc::zero();
        for (&m, a) in &self.terms {
            out = &out + &(a * &f.shift(&int(i64::from(m))));
        }
        out
    }

    /// Action on a polynomial in the operator's variable. Fails when the
    /// result has a nontrivial denominator.
    pub fn apply_poly(&self, p: &MultiPoly) -> Result<MultiPoly> {
        self.var.check_same(p.vars())?;
        let u = UniPoly::from_multipoly(p, 0).expect("single variable");
        let r = self.apply_rat(&RatFunc::from_poly(u));
        match r.as_poly() {
            Some(q) => Ok(q.to_multipoly(&self.var, 0)),
            None => Err(Error::NotPolynomial(r.to_string())),
        }
    }

    /// Evaluates `(op f)(x)` for a function known only at points.
    pub fn apply_at<F>(&self, f: F, x: &Rational) -> Result<Rational>
    where
        F: Fn(&Rational) -> Rational,
    {
        let mut total = Rational::zero();
        for (&m, a) in &self.terms {
            total += a.eval(x)? * f(&(x + int(i64::from(m))));
        }
        Ok(total)
    }
}

impl LinearOperator for ShiftOp {
    type Vector = RatFunc;

    fn scalar_like(&self, c: Rational) -> Self {
        ShiftOp::scalar(&self.var, c)
    }

    fn try_compose(&self, other: &Self) -> Result<Self> {
        self.compose(other)
    }

    fn try_add(&self, other: &Self) -> Result<Self> {
        self.add(other)
    }

    fn scale(&self, c: &Rational) -> Self {
        ShiftOp::scale(self, c)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn apply(&self, v: &RatFunc) -> Result<RatFunc> {
        Ok(self.apply_rat(v))
    }

    fn vector_is_zero(v: &RatFunc) -> bool {
        v.is_zero()
    }

    fn test_vectors(&self, degree: u32) -> Vec<RatFunc> {
        (0..=degree as usize)
            .map(|d| {
                let mut c = vec![Rational::zero(); d + 1];
                c[d] = Rational::one();
                RatFunc::from_poly(UniPoly::new(c))
            })
            .collect()
    }
}

impl fmt::Display for ShiftOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, a)| match m {
                0 => format!("({a})"),
                1 => format!("({a}) T"),
                _ => format!("({a}) T^{m}"),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for ShiftOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ShiftOp({self})")
    }
}
