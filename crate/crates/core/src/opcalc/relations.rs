//! Defining relations of the Hahn and Racah algebras and the exact checker.
//!
//! With `Z = [X, Y]`:
//!
//! Hahn:
//! `[X, Z] = 2X^2 + (λ1 - λ2 - 2N) X + Y - λ1 N`,
//! `[Y, Z] = -2{X, Y} - (λ1 + λ2)(λ1 + λ2 - 2) X - (λ1 - λ2 - 2N) Y + λ1(λ1 + λ2 - 2) N`.
//!
//! Racah:
//! `[X, Z] = 2X^2 + 2{X, Y} + a1 X + a2 Y + a3`,
//! `[Y, Z] = -2Y^2 - 2{X, Y} - a1 Y - b2 X - b3`.

use rayon::prelude::*;

use super::LinearOperator;
use crate::error::Result;
use crate::exactnum::{format_rational, int, ParameterSet, Rational};
use crate::report::{Check, Report, Scope};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlgebraKind {
    Hahn,
    Racah,
}

/// The central parameter: either a number, or an operator commuting with
/// `X` and `Y` that stands for it (`N` for Hahn, `N(λ1+λ2+λ3+N-1)` for Racah).
#[derive(Clone, Debug, PartialEq)]
pub enum Central<Op> {
    Level(Rational),
    Operator(Op),
}

/// `c0 + c1 * z` with `z` the central parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Affine {
    pub c0: Rational,
    pub c1: Rational,
}

impl Affine {
    pub fn constant(c0: Rational) -> Self {
        Affine {
            c0,
            c1: int(0),
        }
    }

    pub fn at(&self, z: &Rational) -> Rational {
        &self.c0 + &self.c1 * z
    }

    fn neg(&self) -> Affine {
        Affine {
            c0: -&self.c0,
            c1: -&self.c1,
        }
    }
}

/// Hahn structure constants as functions of the central parameter `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HahnConstants {
    /// `λ1 - λ2 - 2N`
    pub x_coeff: Affine,
    /// `-λ1 N`
    pub const1: Affine,
    /// `-(λ1 + λ2)(λ1 + λ2 - 2)`
    pub x_coeff2: Rational,
    /// `λ1(λ1 + λ2 - 2) N`
    pub const2: Affine,
}

impl HahnConstants {
    pub fn new(params: &ParameterSet) -> Self {
        let (l1, l2) = (params.lambda(1), params.lambda(2));
        let s = l1 + l2;
        HahnConstants {
            x_coeff: Affine {
                c0: l1 - l2,
                c1: int(-2),
            },
            const1: Affine {
                c0: int(0),
                c1: -l1,
            },
            x_coeff2: -(&s * (&s - int(2))),
            const2: Affine {
                c0: int(0),
                c1: l1 * (&s - int(2)),
            },
        }
    }

    pub fn at(&self, n: &Rational) -> Self {
        HahnConstants {
            x_coeff: Affine::constant(self.x_coeff.at(n)),
            const1: Affine::constant(self.const1.at(n)),
            x_coeff2: self.x_coeff2.clone(),
            const2: Affine::constant(self.const2.at(n)),
        }
    }
}

/// Racah structure constants; each is affine in `c = N(λ1+λ2+λ3+N-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RacahConstants {
    pub a1: Affine,
    pub a2: Affine,
    pub a3: Affine,
    pub b2: Affine,
    pub b3: Affine,
}

impl RacahConstants {
    /// The constants at level `N`, written exactly as in the definition:
    /// `a1 = (λ2 - 2N)(Λ + N - 1) - λ2(N + 1) - λ1 λ3`,
    /// `a2 = (λ1 + λ2)(λ1 + λ2 - 2)`, `a3 = -λ2 N (Λ + N - 1)(λ1 + λ2 - 2)`,
    /// `b2 = (λ2 + λ3)(λ2 + λ3 - 2)`, `b3 = -λ2 N (Λ + N - 1)(λ2 + λ3 - 2)`,
    /// where `Λ = λ1 + λ2 + λ3`.
    pub fn verbatim(params: &ParameterSet, n: &Rational) -> Self {
        let (l1, l2, l3) = (params.lambda(1), params.lambda(2), params.lambda(3));
        let big = l1 + l2 + l3 + n - int(1);
        let one = int(1);
        let two = int(2);
        let a1 = (l2 - n * &two) * &big - l2 * (n + &one) - l1 * l3;
        let a2 = (l1 + l2) * (l1 + l2 - &two);
        let a3 = -(l2 * n * &big * (l1 + l2 - &two));
        let b2 = (l2 + l3) * (l2 + l3 - &two);
        let b3 = -(l2 * n * &big * (l2 + l3 - &two));
        RacahConstants {
            a1: Affine::constant(a1),
            a2: Affine::constant(a2),
            a3: Affine::constant(a3),
            b2: Affine::constant(b2),
            b3: Affine::constant(b3),
        }
    }

    /// The same constants rewritten through `c = N(Λ + N - 1)`:
    /// `a1 = λ2(Λ - 2) - λ1 λ3 - 2c`, `a3 = -λ2(λ1 + λ2 - 2) c`,
    /// `b3 = -λ2(λ2 + λ3 - 2) c`.
    pub fn in_central(params: &ParameterSet) -> Self {
        let (l1, l2, l3) = (params.lambda(1), params.lambda(2), params.lambda(3));
        let total = l1 + l2 + l3;
        let two = int(2);
        RacahConstants {
            a1: Affine {
                c0: l2 * (&total - &two) - l1 * l3,
                c1: int(-2),
            },
            a2: Affine::constant((l1 + l2) * (l1 + l2 - &two)),
            a3: Affine {
                c0: int(0),
                c1: -(l2 * (l1 + l2 - &two)),
            },
            b2: Affine::constant((l2 + l3) * (l2 + l3 - &two)),
            b3: Affine {
                c0: int(0),
                c1: -(l2 * (l2 + l3 - &two)),
            },
        }
    }

    pub fn at(&self, c: &Rational) -> Self {
        let f = |a: &Affine| Affine::constant(a.at(c));
        RacahConstants {
            a1: f(&self.a1),
            a2: f(&self.a2),
            a3: f(&self.a3),
            b2: f(&self.b2),
            b3: f(&self.b3),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraRelations<Op> {
    pub kind: AlgebraKind,
    pub params: ParameterSet,
    pub central: Central<Op>,
}

impl<Op: LinearOperator> AlgebraRelations<Op> {
    pub fn hahn(params: &ParameterSet, central: Central<Op>) -> Self {
        AlgebraRelations {
            kind: AlgebraKind::Hahn,
            params: params.clone(),
            central,
        }
    }

    pub fn racah(params: &ParameterSet, central: Central<Op>) -> Self {
        AlgebraRelations {
            kind: AlgebraKind::Racah,
            params: params.clone(),
            central,
        }
    }

    fn central_op(&self) -> Option<&Op> {
        match &self.central {
            Central::Level(_) => None,
            Central::Operator(op) => Some(op),
        }
    }

    /// `a * op` with the central parameter replaced by its operator if any.
    fn times(&self, a: &Affine, op: &Op) -> Result<Op> {
        let mut out = op.scale(&a.c0);
        if let Some(z) = self.central_op() {
            out = out.try_add(&z.try_compose(op)?.scale(&a.c1))?;
        }
        Ok(out)
    }

    fn constant(&self, a: &Affine, like: &Op) -> Result<Op> {
        let mut out = like.scalar_like(a.c0.clone());
        if let Some(z) = self.central_op() {
            out = out.try_add(&z.scale(&a.c1))?;
        }
        Ok(out)
    }

    /// Right-hand sides of the `[X, Z]` and `[Y, Z]` relations.
    pub fn right_hand_sides(&self, x: &Op, y: &Op) -> Result<(Op, Op)> {
        let xx = x.try_compose(x)?;
        let xy = x.anticommutator(y)?;
        match self.kind {
            AlgebraKind::Hahn => {
                let k = match &self.central {
                    Central::Level(n) => HahnConstants::new(&self.params).at(n),
                    Central::Operator(_) => HahnConstants::new(&self.params),
                };
                let r1 = xx
                    .scale(&int(2))
                    .try_add(&self.times(&k.x_coeff, x)?)?
                    .try_add(y)?
                    .try_add(&self.constant(&k.const1, x)?)?;
                let r2 = xy
                    .scale(&int(-2))
                    .try_add(&x.scale(&k.x_coeff2))?
                    .try_add(&self.times(&k.x_coeff.neg(), y)?)?
                    .try_add(&self.constant(&k.const2, x)?)?;
                Ok((r1, r2))
            }
            AlgebraKind::Racah => {
                let k = match &self.central {
                    Central::Level(n) => RacahConstants::verbatim(&self.params, n),
                    Central::Operator(_) => RacahConstants::in_central(&self.params),
                };
                let yy = y.try_compose(y)?;
                let r1 = xx
                    .scale(&int(2))
                    .try_add(&xy.scale(&int(2)))?
                    .try_add(&self.times(&k.a1, x)?)?
                    .try_add(&self.times(&k.a2, y)?)?
                    .try_add(&self.constant(&k.a3, x)?)?;
                let r2 = yy
                    .scale(&int(-2))
                    .try_add(&xy.scale(&int(-2)))?
                    .try_add(&self.times(&k.a1.neg(), y)?)?
                    .try_add(&self.times(&k.b2.neg(), x)?)?
                    .try_add(&self.constant(&k.b3.neg(), x)?)?;
                Ok((r1, r2))
            }
        }
    }

    /// `([X, Z] - rhs1, [Y, Z] - rhs2)`.
    pub fn residuals(&self, x: &Op, y: &Op) -> Result<(Op, Op)> {
        let z = x.commutator(y)?;
        let (r1, r2) = self.right_hand_sides(x, y)?;
        Ok((x.commutator(&z)?.try_sub(&r1)?, y.commutator(&z)?.try_sub(&r2)?))
    }

    fn report(&self, scope: Scope) -> Report {
        let suite = match self.kind {
            AlgebraKind::Hahn => "hahn-algebra",
            AlgebraKind::Racah => "racah-algebra",
        };
        let mut scope = scope;
        if let Central::Level(n) = &self.central {
            if let Ok(n) = format_rational(n).parse::<u32>() {
                scope.n = Some(n);
            }
        }
        Report::new(suite, &self.params, scope, 0)
    }
}

/// First vector not annihilated by `op`, with the residual it produces.
fn first_nonzero<Op: LinearOperator>(op: &Op, vectors: &[Op::Vector]) -> Option<String> {
    let bad = vectors.par_iter().position_first(|v| match op.apply(v) {
        Ok(r) => !Op::vector_is_zero(&r),
        Err(_) => true,
    })?;
    let v = &vectors[bad];
    Some(match op.apply(v) {
        Ok(r) => format!("at {v}: residual {r}"),
        Err(e) => format!("at {v}: error {e}"),
    })
}

/// Checks the relations as operator identities: the residual normal forms
/// must vanish, and as a redundant safeguard the residuals must annihilate
/// every monomial of total degree `<= degree`. A central operator is also
/// checked to commute with `X` and `Y`.
pub fn check_algebra_relations<Op: LinearOperator>(
    x: &Op,
    y: &Op,
    rel: &AlgebraRelations<Op>,
    degree: u32,
) -> Report {
    let mut report = rel.report(Scope::degree(degree));
    let (res1, res2) = match rel.residuals(x, y) {
        Ok(r) => r,
        Err(e) => {
            report.push(Check::fail("relations", format!("error: {e}")));
            return report;
        }
    };
    let vectors = x.test_vectors(degree);
    for (label, res) in [("[X,Z]", &res1), ("[Y,Z]", &res2)] {
        let on_vectors = first_nonzero(res, &vectors);
        let normal = if res.is_zero() {
            None
        } else {
            Some(
                on_vectors
                    .clone()
                    .unwrap_or_else(|| format!("nonzero normal form {res}")),
            )
        };
        report.push(Check::from_witness(format!("{label} relation, normal form"), normal));
        report.push(Check::from_witness(
            format!("{label} relation on monomials of degree <= {degree}"),
            on_vectors,
        ));
    }
    if let Central::Operator(z) = &rel.central {
        for (label, op) in [("X", x), ("Y", y)] {
            let w = match z.commutator(op) {
                Ok(c) if c.is_zero() => None,
                Ok(c) => Some(format!("commutator {c}")),
                Err(e) => Some(format!("error: {e}")),
            };
            report.push(Check::from_witness(format!("central element commutes with {label}"), w));
        }
    }
    report
}

/// Checks the relations only on the given vectors, for realisations where
/// the central parameter takes its value on an invariant subspace.
pub fn check_algebra_relations_on<Op: LinearOperator>(
    x: &Op,
    y: &Op,
    rel: &AlgebraRelations<Op>,
    vectors: &[Op::Vector],
    label: &str,
) -> Report {
    let mut report = rel.report(Scope::default());
    match rel.residuals(x, y) {
        Ok((res1, res2)) => {
            for (name, res) in [("[X,Z]", &res1), ("[Y,Z]", &res2)] {
                report.push(Check::from_witness(
                    format!("{name} relation on {label}"),
                    first_nonzero(res, vectors),
                ));
            }
        }
        Err(e) => report.push(Check::fail("relations", format!("error: {e}"))),
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, sample_parameters, AdmissibilityMode};
    use crate::opcalc::{
        casimir, euler_operator, hahn_difference_ops, hahn_jacobi_pair, racah_difference_ops,
        realisations::hahn_jacobi_pair_unchecked, ShiftOp,
    };
    use crate::polyalg::{Monomial, MultiPoly, VarSet};

    #[test]
    fn racah_constants_agree() {
        for seed in 0..5 {
            let p = sample_parameters(seed, 3, 6, AdmissibilityMode::Racah).unwrap();
            let total = p.lambda(1) + p.lambda(2) + p.lambda(3);
            let affine = RacahConstants::in_central(&p);
            for n in 0..7 {
                let n = int(n);
                let c = &n * (&total + &n - int(1));
                assert_eq!(affine.at(&c), RacahConstants::verbatim(&p, &n));
            }
        }
    }

    #[test]
    fn hahn_difference_pair() {
        let p = ParameterSet::parse("1/2,3/2").unwrap();
        let (x, y) = hahn_difference_ops(&p, 4).unwrap();
        let rel = AlgebraRelations::hahn(&p, Central::Level(int(4)));
        let r = check_algebra_relations(&x, &y, &rel, 8);
        assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn perturbed_pair_fails() {
        let p = ParameterSet::parse("1/2,3/2").unwrap();
        let (x, y) = hahn_difference_ops(&p, 4).unwrap();
        let y1 = y.add(&ShiftOp::identity(y.var())).unwrap();
        let rel = AlgebraRelations::hahn(&p, Central::Level(int(4)));
        let r = check_algebra_relations(&x, &y1, &rel, 8);
        assert!(!r.passed());
        let w = r.failures().next().unwrap().witness.clone().unwrap();
        assert!(w.contains("residual"), "{w}");
    }

    #[test]
    fn racah_difference_pair() {
        let p = ParameterSet::parse("1/2,3/2,2/3").unwrap();
        let (x, y) = racah_difference_ops(&p, 3).unwrap();
        let rel = AlgebraRelations::racah(&p, Central::Level(int(3)));
        let r = check_algebra_relations(&x, &y, &rel, 8);
        assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn jacobi_pair_any_level() {
        let p = ParameterSet::parse("5/7,3/2").unwrap();
        let v = VarSet::single("v");
        let (x, y) = hahn_jacobi_pair(&p, 5, &v).unwrap();
        let r = check_algebra_relations(&x, &y, &AlgebraRelations::hahn(&p, Central::Level(int(5))), 8);
        assert!(r.passed(), "{}", r.to_text());
        let n = rat(7, 3);
        let (x, y) = hahn_jacobi_pair_unchecked(&n, &p, &v);
        let r = check_algebra_relations(&x, &y, &AlgebraRelations::hahn(&p, Central::Level(n)), 8);
        assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn casimir_pair_with_central_operator() {
        let p = ParameterSet::parse("1/2,3/2,2/3").unwrap();
        let x = casimir(&[1, 2], &p, true).unwrap();
        let y = casimir(&[2, 3], &p, true).unwrap();
        let c = casimir(&[1, 2, 3], &p, true).unwrap();
        let rel = AlgebraRelations::racah(&p, Central::Operator(c));
        let r = check_algebra_relations(&x, &y, &rel, 6);
        assert!(r.passed(), "{}", r.to_text());
    }

    #[test]
    fn sl2_hahn_pair_on_homogeneous_component() {
        let p = ParameterSet::parse("1/2,3/2").unwrap();
        let vars = VarSet::indexed("x", 2);
        let x = euler_operator(&vars, &[1]).unwrap();
        let y = casimir(&[1, 2], &p, true).unwrap();
        let h = euler_operator(&vars, &[1, 2]).unwrap();
        let full = check_algebra_relations(&x, &y, &AlgebraRelations::hahn(&p, Central::Operator(h)), 8);
        assert!(full.passed(), "{}", full.to_text());
        let n = 3;
        let vectors: Vec<MultiPoly> = Monomial::all_of_degree(2, n)
            .into_iter()
            .map(|m| MultiPoly::term(&vars, m, int(1)))
            .collect();
        let rel = AlgebraRelations::hahn(&p, Central::Level(int(i64::from(n))));
        let r = check_algebra_relations_on(&x, &y, &rel, &vectors, "degree 3");
        assert!(r.passed(), "{}", r.to_text());
        // wrong level is detected
        let rel = AlgebraRelations::hahn(&p, Central::Level(int(2)));
        assert!(!check_algebra_relations_on(&x, &y, &rel, &vectors, "degree 3").passed());
    }
}
