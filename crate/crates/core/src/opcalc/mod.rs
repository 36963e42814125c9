//! Exact linear operators on polynomial spaces and the quadratic-algebra
//! relation checks built on them.

mod diffop;
mod realisations;
mod relations;
mod shiftop;

use std::fmt;

pub use diffop::DiffOp;
pub use realisations::{
    casimir, coproduct_generators, euler_operator, hahn_difference_ops, hahn_jacobi_pair,
    jacobi_operator, racah_difference_ops, verma_generators, Sl2Triple,
};
pub use relations::{
    check_algebra_relations, check_algebra_relations_on, AlgebraKind, AlgebraRelations, Affine,
    Central, HahnConstants, RacahConstants,
};
pub use shiftop::ShiftOp;

use crate::error::{Error, Result};
use crate::exactnum::Rational;

/// Operations shared by differential and shift operators. Composition is in
/// normal form (coefficients left, derivatives or shifts right), so two
/// operators are equal exactly when their normal forms are.
pub trait LinearOperator: Clone + PartialEq + fmt::Display + Send + Sync + Sized {
    /// What the operator acts on.
    type Vector: Clone + fmt::Display + Send + Sync;

    /// `c` times the identity on the same space.
    fn scalar_like(&self, c: Rational) -> Self;
    fn try_compose(&self, other: &Self) -> Result<Self>;
    fn try_add(&self, other: &Self) -> Result<Self>;
    fn scale(&self, c: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn apply(&self, v: &Self::Vector) -> Result<Self::Vector>;
    fn vector_is_zero(v: &Self::Vector) -> bool;
    /// Monomials of total degree `<= degree`, ascending.
    fn test_vectors(&self, degree: u32) -> Vec<Self::Vector>;

    fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(&-Rational::from_integer(1.into())))
    }

    /// `ab - ba`.
    fn commutator(&self, other: &Self) -> Result<Self> {
        self.try_compose(other)?.try_sub(&other.try_compose(self)?)
    }

    /// `ab + ba`.
    fn anticommutator(&self, other: &Self) -> Result<Self> {
        self.try_compose(other)?.try_add(&other.try_compose(self)?)
    }
}

/// Either operator kind, for callers that select the kind at run time.
#[derive(Clone, PartialEq, Debug)]
pub enum Operator {
    Diff(DiffOp),
    Shift(ShiftOp),
}

impl Operator {
    pub fn compose(&self, other: &Operator) -> Result<Operator> {
        match (self, other) {
            (Operator::Diff(a), Operator::Diff(b)) => a.try_compose(b).map(Operator::Diff),
            (Operator::Shift(a), Operator::Shift(b)) => a.try_compose(b).map(Operator::Shift),
            _ => Err(Error::KindMismatch),
        }
    }

    pub fn commutator(&self, other: &Operator) -> Result<Operator> {
        match (self, other) {
            (Operator::Diff(a), Operator::Diff(b)) => a.commutator(b).map(Operator::Diff),
            (Operator::Shift(a), Operator::Shift(b)) => a.commutator(b).map(Operator::Shift),
            _ => Err(Error::KindMismatch),
        }
    }

    pub fn apply(&self, p: &crate::polyalg::MultiPoly) -> Result<crate::polyalg::MultiPoly> {
        match self {
            Operator::Diff(a) => a.apply(p),
            Operator::Shift(a) => a.apply_poly(p),
        }
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operator::Diff(a) => a.fmt(f),
            Operator::Shift(a) => a.fmt(f),
        }
    }
}
