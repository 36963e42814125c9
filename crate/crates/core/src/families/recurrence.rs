//! Difference and recurrence coefficients `B, D, M` and `A, C, N_k`.
//!
//! Grid values are computed from factored forms: each coefficient is a sign
//! times a ratio of products of factors `c + l1 λ1 + l2 λ2 + l3 λ3`. Factors
//! that agree as linear forms in the λ's cancel before evaluation, so a
//! removable singularity (for example `A_0` at `λ1 + λ2 = 1`) takes its value
//! for generic λ rather than whatever a cancellation in `x` would suggest. A
//! factor that is identically zero makes the coefficient zero. Any other
//! vanishing denominator is reported, never resolved by a limit.

use serde::Serialize;

use super::Family;
use crate::error::{Error, Result};
use crate::exactnum::{ensure_admissible, format_rational, int, ParameterSet, Rational};
use crate::polyalg::{RatFunc, UniPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Lin {
    c: i64,
    l: [i64; 3],
}

const fn lin(c: i64, l1: i64, l2: i64, l3: i64) -> Lin {
    Lin { c, l: [l1, l2, l3] }
}

impl Lin {
    fn swap13(self) -> Lin {
        Lin {
            c: self.c,
            l: [self.l[2], self.l[1], self.l[0]],
        }
    }

    fn identically_zero(&self) -> bool {
        self.c == 0 && self.l == [0, 0, 0]
    }

    fn eval(&self, p: &ParameterSet) -> Rational {
        let mut v = int(self.c);
        for (i, &k) in self.l.iter().enumerate() {
            if k != 0 && i < p.len() {
                v += p.lambda(i + 1) * int(k);
            }
        }
        v
    }
}

/// `sign * prod(num) / prod(den)`.
struct Factored {
    sign: i64,
    num: Vec<Lin>,
    den: Vec<Lin>,
}

impl Factored {
    fn swap13(self) -> Factored {
        Factored {
            sign: self.sign,
            num: self.num.into_iter().map(Lin::swap13).collect(),
            den: self.den.into_iter().map(Lin::swap13).collect(),
        }
    }

    fn eval(self, p: &ParameterSet, what: impl FnOnce() -> String) -> Result<Rational> {
        if self.num.iter().any(Lin::identically_zero) {
            return Ok(int(0));
        }
        let mut den = self.den;
        let mut num = Vec::new();
        for f in self.num {
            match den.iter().position(|g| *g == f) {
                Some(i) => {
                    den.swap_remove(i);
                }
                None => num.push(f),
            }
        }
        let d = den.iter().fold(int(1), |acc, f| acc * f.eval(p));
        if d == int(0) {
            return Err(Error::ZeroDenominator(what()));
        }
        let n = num.iter().fold(int(self.sign), |acc, f| acc * f.eval(p));
        Ok(n / d)
    }
}

fn hahn_b(x: i64, n: i64) -> Factored {
    Factored {
        sign: 1,
        num: vec![lin(x - n, 0, 0, 0), lin(x, 1, 0, 0)],
        den: vec![],
    }
}

fn hahn_d(x: i64, n: i64) -> Factored {
    Factored {
        sign: 1,
        num: vec![lin(x, 0, 0, 0), lin(x - n, 0, -1, 0)],
        den: vec![],
    }
}

fn hahn_a(k: i64, n: i64) -> Factored {
    Factored {
        sign: 1,
        num: vec![lin(k - n, 0, 0, 0), lin(k, 1, 0, 0), lin(k - 1, 1, 1, 0)],
        den: vec![lin(2 * k - 1, 1, 1, 0), lin(2 * k, 1, 1, 0)],
    }
}

fn hahn_c(k: i64, n: i64) -> Factored {
    Factored {
        sign: -1,
        num: vec![lin(k, 0, 0, 0), lin(k - 1, 0, 1, 0), lin(k + n - 1, 1, 1, 0)],
        den: vec![lin(2 * k - 2, 1, 1, 0), lin(2 * k - 1, 1, 1, 0)],
    }
}

fn racah_b(x: i64, n: i64) -> Factored {
    Factored {
        sign: 1,
        num: vec![
            lin(x - n, 0, 0, 0),
            lin(x, 0, 1, 0),
            lin(x - 1, 1, 1, 0),
            lin(x + n - 1, 1, 1, 1),
        ],
        den: vec![lin(2 * x - 1, 1, 1, 0), lin(2 * x, 1, 1, 0)],
    }
}

fn racah_d(x: i64, n: i64) -> Factored {
    Factored {
        sign: 1,
        num: vec![
            lin(x, 0, 0, 0),
            lin(x - 1, 1, 0, 0),
            lin(x - n, 0, 0, -1),
            lin(x + n - 1, 1, 1, 0),
        ],
        den: vec![lin(2 * x - 2, 1, 1, 0), lin(2 * x - 1, 1, 1, 0)],
    }
}

fn to_ratfunc(num: &[Rational], den: &[(Rational, Rational)]) -> RatFunc {
    // num: roots-shifts a in (x + a); den: (slope, offset) pairs
    let n = UniPoly::from_roots_shifted(num);
    let d = den.iter().fold(UniPoly::one(), |acc, (s, o)| {
        &acc * &UniPoly::new(vec![o.clone(), s.clone()])
    });
    RatFunc::new(n, d)
}

/// Hahn `B(x) = (x - N)(x + λ1)` and `D(x) = x(x - λ2 - N)`.
pub fn hahn_b_d(params: &ParameterSet, n: u32) -> (RatFunc, RatFunc) {
    let nn = int(i64::from(n));
    let (l1, l2) = (params.lambda(1), params.lambda(2));
    let b = to_ratfunc(&[-nn.clone(), l1.clone()], &[]);
    let d = to_ratfunc(&[int(0), -(l2 + &nn)], &[]);
    (b, d)
}

/// Racah `B(x)`, `D(x)` as rational functions of `x`.
pub fn racah_b_d(params: &ParameterSet, n: u32) -> (RatFunc, RatFunc) {
    let nn = int(i64::from(n));
    let (l1, l2, l3) = (params.lambda(1), params.lambda(2), params.lambda(3));
    let s = l1 + l2;
    let one = int(1);
    let two = int(2);
    let b = to_ratfunc(
        &[-nn.clone(), l2.clone(), &s - &one, &s + l3 + &nn - &one],
        &[(two.clone(), &s - &one), (two.clone(), s.clone())],
    );
    let d = to_ratfunc(
        &[int(0), l1 - &one, -(l3 + &nn), &s + &nn - &one],
        &[(two.clone(), &s - &two), (two, &s - &one)],
    );
    (b, d)
}

/// Coefficients on the grid `0..=N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecurrenceData {
    pub family: Family,
    #[serde(serialize_with = "ser_params")]
    pub params: ParameterSet,
    #[serde(rename = "N")]
    pub n: u32,
    #[serde(serialize_with = "ser_vec")]
    pub b: Vec<Rational>,
    #[serde(serialize_with = "ser_vec")]
    pub d: Vec<Rational>,
    #[serde(serialize_with = "ser_vec")]
    pub m: Vec<Rational>,
    #[serde(serialize_with = "ser_vec")]
    pub a: Vec<Rational>,
    #[serde(serialize_with = "ser_vec")]
    pub c: Vec<Rational>,
    #[serde(serialize_with = "ser_vec")]
    pub nk: Vec<Rational>,
}

pub(crate) fn ser_params<S: serde::Serializer>(p: &ParameterSet, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(p.to_strings())
}

pub(crate) fn ser_vec<S: serde::Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(format_rational))
}

pub fn recurrence_data(family: Family, params: &ParameterSet, n: u32) -> Result<RecurrenceData> {
    ensure_admissible(params, n, family.mode())?;
    let nn = i64::from(n);
    let grid = 0..=nn;
    let eval = |f: Factored, name: &str, at: i64| {
        f.eval(params, || format!("{name}({at}) at N = {n}"))
    };
    let (b, d, a, c) = match family {
        Family::Hahn => (
            grid.clone().map(|x| eval(hahn_b(x, nn), "B", x)).collect::<Result<Vec<_>>>()?,
            grid.clone().map(|x| eval(hahn_d(x, nn), "D", x)).collect::<Result<Vec<_>>>()?,
            grid.clone().map(|k| eval(hahn_a(k, nn), "A", k)).collect::<Result<Vec<_>>>()?,
            grid.clone().map(|k| eval(hahn_c(k, nn), "C", k)).collect::<Result<Vec<_>>>()?,
        ),
        Family::Racah => (
            grid.clone().map(|x| eval(racah_b(x, nn), "B", x)).collect::<Result<Vec<_>>>()?,
            grid.clone().map(|x| eval(racah_d(x, nn), "D", x)).collect::<Result<Vec<_>>>()?,
            grid.clone()
                .map(|k| eval(racah_b(k, nn).swap13(), "A", k))
                .collect::<Result<Vec<_>>>()?,
            grid.clone()
                .map(|k| eval(racah_d(k, nn).swap13(), "C", k))
                .collect::<Result<Vec<_>>>()?,
        ),
    };
    let m = b.iter().zip(&d).map(|(x, y)| -(x + y)).collect();
    let nk = a.iter().zip(&c).map(|(x, y)| -(x + y)).collect();
    Ok(RecurrenceData {
        family,
        params: params.clone(),
        n,
        b,
        d,
        m,
        a,
        c,
        nk,
    })
}
