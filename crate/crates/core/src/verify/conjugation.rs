//! Moving a Jacobi operator past powers of `(1 - u)` and `(1 + u)`.

use crate::error::Result;
use crate::exactnum::{int, ParameterSet, Rational};
use crate::opcalc::jacobi_operator;
use crate::polyalg::{Monomial, MultiPoly, VarSet};
use crate::report::{Check, Report, Scope};

use super::first_failure;

struct Setup {
    vars: VarSet,
    minus: MultiPoly,
    plus: MultiPoly,
    monomials: Vec<MultiPoly>,
}

impl Setup {
    fn new(degree: u32) -> Self {
        let vars = VarSet::single("u");
        let u = MultiPoly::var(&vars, 0);
        let one = MultiPoly::one(&vars);
        let monomials = Monomial::all_up_to_degree(1, degree)
            .into_iter()
            .map(|m| MultiPoly::term(&vars, m, int(1)))
            .collect();
        Setup {
            minus: &one - &u,
            plus: &one + &u,
            vars,
            monomials,
        }
    }

    fn phi(&self, a: &Rational, b: &Rational) -> crate::opcalc::DiffOp {
        jacobi_operator(&self.vars, 0, a, b)
    }
}

/// `Φ^{α,β}((1-u)^l (1+u)^m f)` against
/// `(1-u)^l(1+u)^m(Φ^{α+2l,β+2m} f + (lβ + mα + 2lm) f)
///  - l(l+α-1)(1-u)^{l-1}(1+u)^{m+1} f - m(m+β-1)(1-u)^{l+1}(1+u)^{m-1} f`.
fn conjugation_residual(s: &Setup, a: &Rational, b: &Rational, l: u32, m: u32, f: &MultiPoly) -> Result<MultiPoly> {
    let lq = int(i64::from(l));
    let mq = int(i64::from(m));
    let prefactor = &s.minus.pow(l) * &s.plus.pow(m);
    let lhs = s.phi(a, b).apply(&(&prefactor * f))?;
    let shifted = s.phi(&(a + &lq * int(2)), &(b + &mq * int(2))).apply(f)?;
    let constant = &lq * b + &mq * a + &lq * &mq * int(2);
    let mut rhs = &prefactor * &(&shifted + &f.scale(&constant));
    if l > 0 {
        let c = &lq * (&lq + a - int(1));
        rhs = &rhs - &(&(&s.minus.pow(l - 1) * &s.plus.pow(m + 1)) * f).scale(&c);
    }
    if m > 0 {
        let c = &mq * (&mq + b - int(1));
        rhs = &rhs - &(&(&s.minus.pow(l + 1) * &s.plus.pow(m - 1)) * f).scale(&c);
    }
    Ok(&lhs - &rhs)
}

fn sweep(s: &Setup, a: &Rational, b: &Rational, pairs: &[(u32, u32)]) -> Result<Option<String>> {
    first_failure(pairs, |&(l, m)| {
        for f in &s.monomials {
            let r = conjugation_residual(s, a, b, l, m, f)?;
            if !r.is_zero() {
                return Ok(Some(format!("l={l}, m={m}, f={f}: residual {r}")));
            }
        }
        Ok(None)
    })
}

/// The one-sided identity for `l <= 5` and the two-sided one for
/// `l, m <= 4`, on monomials of degree `<= degree`, with `(α, β)` taken from
/// the first two parameters.
pub fn verify_conjugation(params: &ParameterSet, degree: u32) -> Result<Report> {
    let (a, b) = (params.lambda(1), params.lambda(2));
    let mut report = Report::new("conjugation", params, Scope::degree(degree), 0);
    let s = Setup::new(degree);
    let one_sided: Vec<(u32, u32)> = (0..=5).map(|l| (l, 0)).collect();
    report.push(Check::from_result(
        format!("one-sided, l <= 5, deg f <= {degree}"),
        sweep(&s, a, b, &one_sided),
    ));
    let two_sided: Vec<(u32, u32)> = (0..=4).flat_map(|l| (0..=4).map(move |m| (l, m))).collect();
    report.push(Check::from_result(
        format!("two-sided, l, m <= 4, deg f <= {degree}"),
        sweep(&s, a, b, &two_sided),
    ));
    Ok(report)
}
