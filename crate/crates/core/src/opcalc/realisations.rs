//! Concrete operators: the Verma-module realisation of sl(2), intermediate
//! Casimirs, Jacobi operators and the bispectral difference operators.

use super::{DiffOp, ShiftOp};
use crate::error::{Error, Result};
use crate::exactnum::{ensure_admissible, int, AdmissibilityMode, ParameterSet, Rational};
use crate::families::{hahn_b_d, racah_b_d};
use crate::polyalg::{Monomial, MultiPoly, RatFunc, UniPoly, VarSet};

#[derive(Clone, Debug, PartialEq)]
pub struct Sl2Triple {
    pub h: DiffOp,
    pub e: DiffOp,
    pub f: DiffOp,
}

/// `H = λ + 2x d`, `E = x`, `F = -x d^2 - λ d` acting in variable `i`
/// (0-based) of `vars`.
pub fn verma_generators(vars: &VarSet, i: usize, lambda: &Rational) -> Sl2Triple {
    let x = MultiPoly::var(vars, i);
    let d1 = {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        Monomial::new(e)
    };
    let d2 = {
        let mut e = vec![0; vars.len()];
        e[i] = 2;
        Monomial::new(e)
    };
    let h = DiffOp::scalar(vars, lambda.clone())
        .add(&DiffOp::term(x.scale(&int(2)), d1.clone()))
        .expect("same vars");
    let e = DiffOp::multiplication(&x);
    let f = DiffOp::term(-&x, d2)
        .add(&DiffOp::term(MultiPoly::constant(vars, -lambda), d1))
        .expect("same vars");
    Sl2Triple { h, e, f }
}

fn check_subset(subset: &[usize], n: usize) -> Result<()> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    if subset.iter().any(|&i| i == 0 || i > n) {
        let s: Vec<String> = subset.iter().map(ToString::to_string).collect();
        return Err(Error::SubsetOutOfRange {
            subset: s.join(","),
            n,
        });
    }
    Ok(())
}

/// Images of `H, E, F` under the partial diagonal embedding indexed by the
/// 1-based `subset`: sums of the single-variable generators.
pub fn coproduct_generators(
    vars: &VarSet,
    subset: &[usize],
    params: &ParameterSet,
) -> Result<Sl2Triple> {
    check_subset(subset, params.len().min(vars.len()))?;
    let mut acc = Sl2Triple {
        h: DiffOp::zero(vars),
        e: DiffOp::zero(vars),
        f: DiffOp::zero(vars),
    };
    for &i in subset {
        let g = verma_generators(vars, i - 1, params.lambda(i));
        acc.h = acc.h.add(&g.h)?;
        acc.e = acc.e.add(&g.e)?;
        acc.f = acc.f.add(&g.f)?;
    }
    Ok(acc)
}

/// `C_I = (H_I^2 + 2 H_I)/4 + F_I E_I` over `x1..xn` with `n = params.len()`;
/// with `shifted`, the scalar `λ_I(λ_I - 2)/4` is subtracted so that `C'_I`
/// kills the lowest-weight vector `1`.
pub fn casimir(subset: &[usize], params: &ParameterSet, shifted: bool) -> Result<DiffOp> {
    let vars = VarSet::indexed("x", params.len());
    casimir_in(&vars, subset, params, shifted)
}

pub(crate) fn casimir_in(
    vars: &VarSet,
    subset: &[usize],
    params: &ParameterSet,
    shifted: bool,
) -> Result<DiffOp> {
    let g = coproduct_generators(vars, subset, params)?;
    let quarter = Rational::new(1.into(), 4.into());
    let mut c = g
        .h
        .compose(&g.h)?
        .add(&g.h.scale(&int(2)))?
        .scale(&quarter)
        .add(&g.f.compose(&g.e)?)?;
    if shifted {
        let li = params.sum_over(subset.iter().copied());
        let s = &li * (&li - int(2)) * &quarter;
        c = c.add(&DiffOp::scalar(vars, -s))?;
    }
    Ok(c)
}

/// `sum_{i in I} x_i d_i` (1-based subset).
pub fn euler_operator(vars: &VarSet, subset: &[usize]) -> Result<DiffOp> {
    check_subset(subset, vars.len())?;
    let mut op = DiffOp::zero(vars);
    for &i in subset {
        let mut e = vec![0; vars.len()];
        e[i - 1] = 1;
        op = op.add(&DiffOp::term(MultiPoly::var(vars, i - 1), Monomial::new(e)))?;
    }
    Ok(op)
}

/// `(x^2 - 1) d^2 + (λ - λ' + (λ + λ')x) d` in variable `i` of `vars`.
pub fn jacobi_operator(vars: &VarSet, i: usize, lambda: &Rational, lambda_p: &Rational) -> DiffOp {
    let x = MultiPoly::var(vars, i);
    let one = MultiPoly::one(vars);
    let mut d1 = vec![0; vars.len()];
    d1[i] = 1;
    let mut d2 = vec![0; vars.len()];
    d2[i] = 2;
    let second = &x.pow(2) - &one;
    let first = &MultiPoly::constant(vars, lambda - lambda_p) + &x.scale(&(lambda + lambda_p));
    DiffOp::term(second, Monomial::new(d2))
        .add(&DiffOp::term(first, Monomial::new(d1)))
        .expect("same vars")
}

fn tridiagonal_shift_op(var: &VarSet, b: RatFunc, d: RatFunc) -> ShiftOp {
    let m = -&(&b + &d);
    ShiftOp::term(var, b, 1)
        .add(&ShiftOp::term(var, m, 0))
        .and_then(|op| op.add(&ShiftOp::term(var, d, -1)))
        .expect("same var")
}

/// `X = x`, `Y = B(x) T + M(x) + D(x) T^{-1}` with the Hahn `B, D` and
/// `M = -B - D`, acting on functions of `x`.
pub fn hahn_difference_ops(params: &ParameterSet, n: u32) -> Result<(ShiftOp, ShiftOp)> {
    ensure_admissible(params, n, AdmissibilityMode::Hahn)?;
    let var = VarSet::single("x");
    let (b, d) = hahn_b_d(params, n);
    let x = ShiftOp::multiplication(&var, RatFunc::from_poly(UniPoly::x()));
    Ok((x, tridiagonal_shift_op(&var, b, d)))
}

/// `X = x(x + λ1 + λ2 - 1)`, `Y = B T + M + D T^{-1}` with the Racah `B, D`.
pub fn racah_difference_ops(params: &ParameterSet, n: u32) -> Result<(ShiftOp, ShiftOp)> {
    ensure_admissible(params, n, AdmissibilityMode::Racah)?;
    let var = VarSet::single("x");
    let (b, d) = racah_b_d(params, n);
    let mu = &UniPoly::x() * &UniPoly::linear(params.lambda(1) + params.lambda(2) - int(1));
    let x = ShiftOp::multiplication(&var, RatFunc::from_poly(mu));
    Ok((x, tridiagonal_shift_op(&var, b, d)))
}

/// `X = N(1 - v)/2 - (1 - v)(1 + v) d/2`, `Y` the Jacobi operator with
/// parameters `(λ1, λ2)`, both in the single variable of `var`.
pub fn hahn_jacobi_pair(params: &ParameterSet, n: u32, var: &VarSet) -> Result<(DiffOp, DiffOp)> {
    ensure_admissible(params, n, AdmissibilityMode::Hahn)?;
    Ok(hahn_jacobi_pair_unchecked(&int(i64::from(n)), params, var))
}

/// Same operators for any rational `N`; no admissibility gate.
pub fn hahn_jacobi_pair_unchecked(
    n: &Rational,
    params: &ParameterSet,
    var: &VarSet,
) -> (DiffOp, DiffOp) {
    assert_eq!(var.len(), 1);
    let v = MultiPoly::var(var, 0);
    let one = MultiPoly::one(var);
    let half = Rational::new(1.into(), 2.into());
    let mult = (&one - &v).scale(&(n * &half));
    let deriv = (&v.pow(2) - &one).scale(&half);
    let x = DiffOp::multiplication(&mult)
        .add(&DiffOp::term(deriv, Monomial::new(vec![1])))
        .expect("same vars");
    let y = jacobi_operator(var, 0, params.lambda(1), params.lambda(2));
    (x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{pochhammer, rat, sample_parameters};
    use crate::families::jacobi_poly;
    use crate::opcalc::LinearOperator;
    use proptest::prelude::*;

    fn unit(vars: &VarSet) -> MultiPoly {
        MultiPoly::one(vars)
    }

    fn x(vars: &VarSet, i: usize) -> MultiPoly {
        MultiPoly::var(vars, i)
    }

    #[test]
    fn verma_examples() {
        let v = VarSet::indexed("x", 2);
        let l = rat(3, 2);
        let g = verma_generators(&v, 1, &l);
        let one = unit(&v);
        assert_eq!(g.h.apply(&one).unwrap(), one.scale(&l));
        assert_eq!(g.e.apply(&one).unwrap(), x(&v, 1));
        assert_eq!(g.f.apply(&x(&v, 1)).unwrap(), one.scale(&-&l));
        assert!(g.f.apply(&x(&v, 0)).unwrap().is_zero());
    }

    #[test]
    fn sl2_relations() {
        let v = VarSet::single("x");
        let g = verma_generators(&v, 0, &rat(5, 3));
        assert_eq!(g.h.commutator(&g.e).unwrap(), g.e.scale(&int(2)));
        assert_eq!(g.h.commutator(&g.f).unwrap(), g.f.scale(&int(-2)));
        assert_eq!(g.e.commutator(&g.f).unwrap(), g.h);
    }

    #[test]
    fn coproduct_is_a_homomorphism() {
        let params = ParameterSet::parse("1/2,3/4,5").unwrap();
        let v = VarSet::indexed("x", 3);
        let g = coproduct_generators(&v, &[1, 3], &params).unwrap();
        assert_eq!(g.e.commutator(&g.f).unwrap(), g.h);
        assert_eq!(g.h.commutator(&g.e).unwrap(), g.e.scale(&int(2)));
    }

    #[test]
    fn casimir_examples() {
        let params = ParameterSet::parse("1/2,3/2").unwrap();
        let v = VarSet::indexed("x", 2);
        let one = unit(&v);
        let l1 = params.lambda(1).clone();
        let c1 = casimir(&[1], &params, false).unwrap();
        let expected = &l1 * (&l1 - int(2)) / int(4);
        assert_eq!(c1.apply(&one).unwrap(), one.scale(&expected));

        let c12 = casimir(&[1, 2], &params, true).unwrap();
        let t = &x(&v, 0) + &x(&v, 1);
        for n in 0..5 {
            assert!(c12.apply(&t.pow(n)).unwrap().is_zero());
        }
        let l2 = params.lambda(2).clone();
        let w = &x(&v, 1).scale(&l1) - &x(&v, 0).scale(&l2);
        assert_eq!(c12.apply(&w).unwrap(), w.scale(&(&l1 + &l2)));
    }

    #[test]
    fn casimir_subset_errors() {
        let params = ParameterSet::parse("1,2").unwrap();
        assert_eq!(casimir(&[], &params, true), Err(Error::EmptySubset));
        assert!(matches!(
            casimir(&[1, 3], &params, true),
            Err(Error::SubsetOutOfRange { .. })
        ));
    }

    #[test]
    fn casimir_is_central() {
        let params = ParameterSet::parse("1/3,7/2,2").unwrap();
        let v = VarSet::indexed("x", 3);
        let c = casimir(&[1, 2, 3], &params, false).unwrap();
        let g = coproduct_generators(&v, &[1, 2, 3], &params).unwrap();
        for op in [&g.h, &g.e, &g.f] {
            assert!(c.commutator(op).unwrap().is_zero());
        }
    }

    #[test]
    fn h12_realisation() {
        let params = ParameterSet::parse("2/5,9/4").unwrap();
        let v = VarSet::indexed("x", 2);
        let g = coproduct_generators(&v, &[1, 2], &params).unwrap();
        let lhs = g
            .h
            .add(&DiffOp::scalar(&v, -(params.lambda(1) + params.lambda(2))))
            .unwrap()
            .scale(&rat(1, 2));
        assert_eq!(lhs, euler_operator(&v, &[1, 2]).unwrap());
    }

    #[test]
    fn commuting_casimirs() {
        let params = ParameterSet::parse("1/2,2/3,5/4,3").unwrap();
        let n = 4;
        let subsets: Vec<Vec<usize>> = (1u32..(1 << n))
            .map(|m| (1..=n).filter(|i| m & (1 << (i - 1)) != 0).collect())
            .collect();
        let ops: Vec<DiffOp> = subsets
            .iter()
            .map(|s| casimir(s, &params, true).unwrap())
            .collect();
        for (a, sa) in subsets.iter().enumerate() {
            for (b, sb) in subsets.iter().enumerate().skip(a + 1) {
                let nested = sa.iter().all(|i| sb.contains(i)) || sb.iter().all(|i| sa.contains(i));
                let disjoint = sa.iter().all(|i| !sb.contains(i));
                if nested || disjoint {
                    assert!(
                        ops[a].commutator(&ops[b]).unwrap().is_zero(),
                        "{sa:?} vs {sb:?}"
                    );
                }
            }
        }
        // an overlapping, non-nested pair does not commute
        assert!(!ops[2].commutator(&ops[5]).unwrap().is_zero());
    }

    #[test]
    fn jacobi_operator_examples() {
        let v = VarSet::single("x");
        let (l, lp) = (rat(1, 2), rat(7, 3));
        let phi = jacobi_operator(&v, 0, &l, &lp);
        let xx = x(&v, 0);
        assert!(phi.apply(&unit(&v)).unwrap().is_zero());
        let expected = &MultiPoly::constant(&v, &l - &lp) + &xx.scale(&(&l + &lp));
        assert_eq!(phi.apply(&xx).unwrap(), expected);
        let p1 = jacobi_poly(1, &l, &lp, &v, 0);
        assert_eq!(phi.apply(&p1).unwrap(), p1.scale(&(&l + &lp)));
    }

    #[test]
    fn hahn_jacobi_pair_examples() {
        let params = ParameterSet::parse("1/2,3/2").unwrap();
        let v = VarSet::single("v");
        let (xop, yop) = hahn_jacobi_pair(&params, 4, &v).unwrap();
        let one = unit(&v);
        let expected = (&one - &x(&v, 0)).scale(&int(2));
        assert_eq!(xop.apply(&one).unwrap(), expected);
        let p1 = jacobi_poly(1, params.lambda(1), params.lambda(2), &v, 0);
        assert_eq!(yop.apply(&p1).unwrap(), p1.scale(&int(2)));
    }

    #[test]
    fn difference_op_examples() {
        let params = ParameterSet::parse("1/2,3/2").unwrap();
        let (_, y) = hahn_difference_ops(&params, 4).unwrap();
        let var = y.var().clone();
        assert!(y.apply_poly(&unit(&var)).unwrap().is_zero());

        let p3 = ParameterSet::parse("1/2,3/2,2/7").unwrap();
        let (xr, _) = racah_difference_ops(&p3, 3).unwrap();
        let t = x(&var, 0);
        let mu = &t * &(&t + &MultiPoly::constant(&var, int(1)));
        assert_eq!(xr.apply_poly(&unit(&var)).unwrap(), mu);

        let bad = ParameterSet::parse("-1,2").unwrap();
        assert!(matches!(
            hahn_difference_ops(&bad, 3),
            Err(Error::InadmissibleParameters(_))
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn jacobi_eigen_equation(seed in 0u64..1000) {
            let params = sample_parameters(seed, 2, 11, AdmissibilityMode::Hahn).unwrap();
            let (l, lp) = (params.lambda(1), params.lambda(2));
            let v = VarSet::single("x");
            let phi = jacobi_operator(&v, 0, l, lp);
            for k in 0..=10u32 {
                let p = jacobi_poly(k, l, lp, &v, 0);
                let ev = int(i64::from(k)) * (int(i64::from(k)) + l + lp - int(1));
                prop_assert_eq!(phi.apply(&p).unwrap(), p.scale(&ev));
                // value at 1
                let at1 = p.eval_at(&[int(1)]);
                prop_assert_eq!(at1, pochhammer(l, k) / crate::exactnum::factorial(k));
            }
        }
    }
}
