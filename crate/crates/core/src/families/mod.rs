//! Jacobi, Hahn and Racah polynomials: exact values, polynomial forms,
//! recurrence data and transition tables.

mod recurrence;
mod tables;

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::Serialize;

pub use recurrence::{hahn_b_d, racah_b_d, recurrence_data, RecurrenceData};
pub use tables::{transition_table, TransitionTable};

use crate::error::{Error, Result};
use crate::exactnum::{
    ensure_admissible, factorial, gen_binomial, hyp_terminating, int, pochhammer,
    AdmissibilityMode, ParameterSet, Rational,
};
use crate::polyalg::{MultiPoly, VarSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Hahn,
    Racah,
}

impl Family {
    pub fn mode(self) -> AdmissibilityMode {
        match self {
            Family::Hahn => AdmissibilityMode::Hahn,
            Family::Racah => AdmissibilityMode::Racah,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Hahn => "hahn",
            Family::Racah => "racah",
        })
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "hahn" => Ok(Family::Hahn),
            "racah" => Ok(Family::Racah),
            _ => Err(Error::Parse(format!("unknown family `{s}`"))),
        }
    }
}

/// Jacobi polynomial in variable `i` of `vars`:
/// `2^{-l} sum_s (-1)^s C(l+λ-1, l-s) C(l+λ'-1, s) (1-x)^s (1+x)^{l-s}`.
pub fn jacobi_poly(l: u32, lambda: &Rational, lambda_p: &Rational, vars: &VarSet, i: usize) -> MultiPoly {
    let x = MultiPoly::var(vars, i);
    let one = MultiPoly::one(vars);
    let minus = &one - &x;
    let plus = &one + &x;
    let top_l = lambda + int(i64::from(l)) - int(1);
    let top_lp = lambda_p + int(i64::from(l)) - int(1);
    let mut acc = MultiPoly::zero(vars);
    for s in 0..=l {
        let mut c = gen_binomial(&top_l, l - s) * gen_binomial(&top_lp, s);
        if s % 2 == 1 {
            c = -c;
        }
        if c.is_zero() {
            continue;
        }
        acc = &acc + &(&minus.pow(s) * &plus.pow(l - s)).scale(&c);
    }
    acc.scale(&(Rational::one() / int(2).pow(l as i32)))
}

/// `sum_s (-1)^s C(k+λI-1, k-s) C(k+λJ-1, s) xI^s xJ^{k-s}`, which equals
/// `(xI + xJ)^k P_k^{λI,λJ}((xJ - xI)/(xI + xJ))` as a polynomial.
pub fn homogenized_jacobi(
    k: u32,
    lambda_i: &Rational,
    lambda_j: &Rational,
    xi: &MultiPoly,
    xj: &MultiPoly,
) -> MultiPoly {
    let top_i = lambda_i + int(i64::from(k)) - int(1);
    let top_j = lambda_j + int(i64::from(k)) - int(1);
    let mut acc = MultiPoly::zero(xi.vars());
    for s in 0..=k {
        let mut c = gen_binomial(&top_i, k - s) * gen_binomial(&top_j, s);
        if s % 2 == 1 {
            c = -c;
        }
        if c.is_zero() {
            continue;
        }
        acc = &acc + &(&xi.pow(s) * &xj.pow(k - s)).scale(&c);
    }
    acc
}

fn check_grid(k: u32, l: u32, n: u32) -> Result<()> {
    if k > n {
        return Err(Error::IndexOutOfRange {
            index: k as usize,
            limit: n as usize,
        });
    }
    if l > n {
        return Err(Error::IndexOutOfRange {
            index: l as usize,
            limit: n as usize,
        });
    }
    Ok(())
}

/// `Q_k(x) = 3F2(-k, k+λ1+λ2-1, -x; λ1, -N; 1)`.
fn hahn_value_unchecked(k: u32, x: &Rational, params: &ParameterSet, n: u32) -> Result<Rational> {
    let (l1, l2) = (params.lambda(1), params.lambda(2));
    let kk = int(i64::from(k));
    hyp_terminating(
        &[-kk.clone(), &kk + l1 + l2 - int(1), -x],
        &[l1.clone(), -int(i64::from(n))],
        k,
        &Rational::one(),
    )
}

/// `R_k(μ(x)) = 4F3(-k, k+λ2+λ3-1, -x, x+λ1+λ2-1; λ2, λ1+λ2+λ3+N-1, -N; 1)`.
fn racah_value_unchecked(k: u32, x: &Rational, params: &ParameterSet, n: u32) -> Result<Rational> {
    let (l1, l2, l3) = (params.lambda(1), params.lambda(2), params.lambda(3));
    let kk = int(i64::from(k));
    let nn = int(i64::from(n));
    hyp_terminating(
        &[
            -kk.clone(),
            &kk + l2 + l3 - int(1),
            -x,
            x + l1 + l2 - int(1),
        ],
        &[l2.clone(), l1 + l2 + l3 + &nn - int(1), -nn],
        k,
        &Rational::one(),
    )
}

/// `Q_{k,l}` or `R_{k,l}`: the polynomial of degree `k` at grid point `l`.
pub fn classical_value(family: Family, k: u32, l: u32, params: &ParameterSet, n: u32) -> Result<Rational> {
    ensure_admissible(params, n, family.mode())?;
    check_grid(k, l, n)?;
    let x = int(i64::from(l));
    match family {
        Family::Hahn => hahn_value_unchecked(k, &x, params, n),
        Family::Racah => racah_value_unchecked(k, &x, params, n),
    }
}

/// Builds `sum_j c_j prod_{t<j} f_t(x)` where `c_j` is the hypergeometric
/// coefficient of the `x`-free parameters.
fn hyp_polynomial<F>(
    k: u32,
    num: &[Rational],
    den: &[Rational],
    vars: &VarSet,
    factor: F,
) -> Result<MultiPoly>
where
    F: Fn(u32) -> MultiPoly,
{
    let mut coeff = Rational::one();
    let mut prod = MultiPoly::one(vars);
    let mut acc = MultiPoly::one(vars);
    for j in 0..k {
        let t = int(i64::from(j));
        for a in num {
            coeff *= a + &t;
        }
        let mut d = int(i64::from(j) + 1);
        for b in den {
            d *= b + &t;
        }
        if coeff.is_zero() {
            break;
        }
        if d.is_zero() {
            return Err(Error::ZeroDenominator(format!(
                "lower parameter vanishes at term {}",
                j + 1
            )));
        }
        coeff /= d;
        prod = &prod * &factor(j);
        acc = &acc + &prod.scale(&coeff);
    }
    Ok(acc)
}

/// `Q_k` as a polynomial of degree `k` in variable `i` of `vars`.
pub fn hahn_poly(k: u32, params: &ParameterSet, n: u32, vars: &VarSet, i: usize) -> Result<MultiPoly> {
    ensure_admissible(params, n, AdmissibilityMode::Hahn)?;
    let (l1, l2) = (params.lambda(1), params.lambda(2));
    let kk = int(i64::from(k));
    let x = MultiPoly::var(vars, i);
    hyp_polynomial(
        k,
        &[-kk.clone(), &kk + l1 + l2 - int(1)],
        &[l1.clone(), -int(i64::from(n))],
        vars,
        // (-x)_j picks up the factor (j - x)
        |j| &MultiPoly::constant(vars, int(i64::from(j))) - &x,
    )
}

/// `R_k(μ(x))` as a polynomial of degree `2k` in variable `i` of `vars`.
pub fn racah_poly(k: u32, params: &ParameterSet, n: u32, vars: &VarSet, i: usize) -> Result<MultiPoly> {
    ensure_admissible(params, n, AdmissibilityMode::Racah)?;
    let (l1, l2, l3) = (params.lambda(1), params.lambda(2), params.lambda(3));
    let kk = int(i64::from(k));
    let nn = int(i64::from(n));
    let x = MultiPoly::var(vars, i);
    let s = l1 + l2 - int(1);
    hyp_polynomial(
        k,
        &[-kk.clone(), &kk + l2 + l3 - int(1)],
        &[l2.clone(), l1 + l2 + l3 + &nn - int(1), -nn],
        vars,
        |j| {
            let t = int(i64::from(j));
            let a = &MultiPoly::constant(vars, t.clone()) - &x;
            let b = &x + &MultiPoly::constant(vars, &s + &t);
            &a * &b
        },
    )
}

/// `(λ)_k / k!`, the value of `P_k^{λ,λ'}` at `1`.
pub fn jacobi_value_at_one(k: u32, lambda: &Rational) -> Rational {
    pochhammer(lambda, k) / factorial(k)
}
