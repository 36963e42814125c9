//! Matrices of polynomial values, their renormalised versions, and the
//! normalisation constant `Γ`.

use serde::Serialize;

use super::recurrence::{ser_params, ser_vec};
use super::{classical_value, recurrence_data, Family, RecurrenceData};
use crate::error::{Error, Result};
use crate::exactnum::{binomial, format_rational, int, pochhammer, ParameterSet, Rational};
use crate::report::Check;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransitionTable {
    pub family: Family,
    #[serde(serialize_with = "ser_params")]
    pub params: ParameterSet,
    #[serde(rename = "N")]
    pub n: u32,
    /// `values[k][l]` is the degree-`k` polynomial at grid point `l`.
    #[serde(serialize_with = "ser_matrix")]
    pub values: Vec<Vec<Rational>>,
    /// `tilde[k][l] = bd[l] * ac[k] * values[k][l]`.
    #[serde(serialize_with = "ser_matrix")]
    pub tilde: Vec<Vec<Rational>>,
    /// Closed form of `B(0)...B(l-1) / (D(1)...D(l))`.
    #[serde(serialize_with = "ser_vec")]
    pub bd: Vec<Rational>,
    /// Closed form of `A_0...A_{k-1} / (C_1...C_k)`.
    #[serde(serialize_with = "ser_vec")]
    pub ac: Vec<Rational>,
    #[serde(serialize_with = "ser_rational")]
    pub gamma: Rational,
    #[serde(skip)]
    pub recurrence: RecurrenceData,
}

fn ser_matrix<S: serde::Serializer>(m: &[Vec<Rational>], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(m.iter().map(|row| row.iter().map(format_rational).collect::<Vec<_>>()))
}

fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

fn div(a: Rational, b: Rational, what: &str) -> Result<Rational> {
    if b == int(0) {
        return Err(Error::ZeroDenominator(what.to_string()));
    }
    Ok(a / b)
}

/// Running products `prod_{j<i} num[j] / prod_{1<=j<=i} den[j]`, `i = 0..=N`.
fn step_products(num: &[Rational], den: &[Rational], what: &str) -> Result<Vec<Rational>> {
    let mut out = vec![int(1)];
    for i in 1..num.len() {
        let prev = out[i - 1].clone();
        out.push(div(prev * &num[i - 1], den[i].clone(), what)?);
    }
    Ok(out)
}

fn hahn_closed_forms(p: &ParameterSet, n: u32) -> Result<(Vec<Rational>, Vec<Rational>, Rational)> {
    let (l1, l2) = (p.lambda(1), p.lambda(2));
    let s = l1 + l2;
    let l2n = pochhammer(l2, n);
    let sn = pochhammer(&s, n);
    let mut bd = Vec::new();
    let mut ac = Vec::new();
    for i in 0..=n {
        let ii = int(i64::from(i));
        bd.push(div(
            binomial(n, i) * pochhammer(l1, i) * pochhammer(l2, n - i),
            l2n.clone(),
            "(λ2)_N",
        )?);
        ac.push(div(
            binomial(n, i) * pochhammer(l1, i) * &sn,
            pochhammer(l2, i)
                * pochhammer(&(&s + &ii - int(1)), i)
                * pochhammer(&(&s + &ii * int(2)), n - i),
            "closed form of the A/C products",
        )?);
    }
    let gamma = div(sn, l2n, "(λ2)_N")?;
    Ok((bd, ac, gamma))
}

fn racah_bd(p: &ParameterSet, n: u32) -> Result<Vec<Rational>> {
    let (l1, l2, l3) = (p.lambda(1), p.lambda(2), p.lambda(3));
    let s = l1 + l2;
    let nn = int(i64::from(n));
    let big = &s + l3 + &nn - int(1);
    let sn = pochhammer(&s, n);
    (0..=n)
        .map(|l| {
            let ll = int(i64::from(l));
            div(
                binomial(n, l) * pochhammer(l2, l) * pochhammer(&big, l) * &sn,
                pochhammer(l1, l)
                    * pochhammer(&(l3 + &nn - &ll), l)
                    * pochhammer(&(&s + &ll - int(1)), l)
                    * pochhammer(&(&s + &ll * int(2)), n - l),
                "closed form of the B/D products",
            )
        })
        .collect()
}

fn racah_closed_forms(p: &ParameterSet, n: u32) -> Result<(Vec<Rational>, Vec<Rational>, Rational)> {
    let bd = racah_bd(p, n)?;
    let ac = racah_bd(&p.swap_first_third(), n)?;
    let (l1, l2, l3) = (p.lambda(1), p.lambda(2), p.lambda(3));
    let gamma = div(
        pochhammer(&(l1 + l2), n) * pochhammer(&(l2 + l3), n),
        pochhammer(l1, n) * pochhammer(l3, n),
        "(λ1)_N (λ3)_N",
    )?;
    Ok((bd, ac, gamma))
}

pub fn transition_table(family: Family, params: &ParameterSet, n: u32) -> Result<TransitionTable> {
    let recurrence = recurrence_data(family, params, n)?;
    let values = (0..=n)
        .map(|k| (0..=n).map(|l| classical_value(family, k, l, params, n)).collect())
        .collect::<Result<Vec<Vec<_>>>>()?;
    let (bd, ac, gamma) = match family {
        Family::Hahn => hahn_closed_forms(params, n)?,
        Family::Racah => racah_closed_forms(params, n)?,
    };
    let tilde = values
        .iter()
        .enumerate()
        .map(|(k, row)| {
            row.iter()
                .enumerate()
                .map(|(l, q)| &bd[l] * &ac[k] * q)
                .collect()
        })
        .collect();
    Ok(TransitionTable {
        family,
        params: params.clone(),
        n,
        values,
        tilde,
        bd,
        ac,
        gamma,
        recurrence,
    })
}

impl TransitionTable {
    pub fn size(&self) -> usize {
        self.n as usize + 1
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serialises")
    }

    /// `B(0)...B(l-1) / (D(1)...D(l))` from the grid values.
    pub fn bd_steps(&self) -> Result<Vec<Rational>> {
        step_products(&self.recurrence.b, &self.recurrence.d, "product of D values")
    }

    /// `A_0...A_{k-1} / (C_1...C_k)` from the grid values.
    pub fn ac_steps(&self) -> Result<Vec<Rational>> {
        step_products(&self.recurrence.a, &self.recurrence.c, "product of C values")
    }

    /// Left side of the sum identity and its closed-form right side.
    /// Hahn: `sum_k C(N,k)(λ1)_k / ((λ2)_k (λ1+λ2+k-1)_k (λ1+λ2+2k)_{N-k}) = 1/(λ2)_N`.
    /// Racah: `sum_l C(N,l)(λ2)_l(Λ+N-1)_l / ((λ1)_l(λ3+N-l)_l(λ1+λ2+l-1)_l(λ1+λ2+2l)_{N-l})
    /// = (λ2+λ3)_N / ((λ1)_N (λ3)_N)`.
    pub fn sum_identity(&self) -> Result<(Rational, Rational)> {
        let p = &self.params;
        let n = self.n;
        match self.family {
            Family::Hahn => {
                let sn = pochhammer(&(p.lambda(1) + p.lambda(2)), n);
                let lhs = self.ac.iter().try_fold(int(0), |acc, a| {
                    div(a.clone(), sn.clone(), "(λ1+λ2)_N").map(|t| acc + t)
                })?;
                let rhs = div(int(1), pochhammer(p.lambda(2), n), "(λ2)_N")?;
                Ok((lhs, rhs))
            }
            Family::Racah => {
                let sn = pochhammer(&(p.lambda(1) + p.lambda(2)), n);
                let lhs = self.bd.iter().try_fold(int(0), |acc, b| {
                    div(b.clone(), sn.clone(), "(λ1+λ2)_N").map(|t| acc + t)
                })?;
                let rhs = div(
                    pochhammer(&(p.lambda(2) + p.lambda(3)), n),
                    pochhammer(p.lambda(1), n) * pochhammer(p.lambda(3), n),
                    "(λ1)_N (λ3)_N",
                )?;
                Ok((lhs, rhs))
            }
        }
    }

    /// `sum_k values[k][l] tilde[k][l']` (`by_column`) or
    /// `sum_l values[k][l] tilde[k'][l]`.
    pub fn orthogonality_matrix(&self, by_column: bool) -> Vec<Vec<Rational>> {
        let m = self.size();
        (0..m)
            .map(|a| {
                (0..m)
                    .map(|b| {
                        (0..m).fold(int(0), |acc, i| {
                            if by_column {
                                acc + &self.values[i][a] * &self.tilde[i][b]
                            } else {
                                acc + &self.values[a][i] * &self.tilde[b][i]
                            }
                        })
                    })
                    .collect()
            })
            .collect()
    }

    /// Closed forms against step products, and both sums against `Γ`.
    pub fn consistency_checks(&self) -> Vec<Check> {
        let mut out = Vec::new();
        let compare = |name: &str, steps: Result<Vec<Rational>>, closed: &[Rational]| match steps {
            Err(e) => Check::fail(name, format!("error: {e}")),
            Ok(steps) => Check::from_witness(
                name,
                steps.iter().zip(closed).enumerate().find(|(_, (a, b))| a != b).map(
                    |(i, (a, b))| {
                        format!(
                            "index {i}: step product {} != closed form {}",
                            format_rational(a),
                            format_rational(b)
                        )
                    },
                ),
            ),
        };
        out.push(compare("B/D step products equal closed form", self.bd_steps(), &self.bd));
        out.push(compare("A/C step products equal closed form", self.ac_steps(), &self.ac));
        for (name, v) in [("sum of B/D products equals Γ", &self.bd), ("sum of A/C products equals Γ", &self.ac)] {
            let total = v.iter().fold(int(0), |acc, x| acc + x);
            out.push(Check::from_witness(
                name,
                (total != self.gamma).then(|| {
                    format!(
                        "sum {} != Γ {}",
                        format_rational(&total),
                        format_rational(&self.gamma)
                    )
                }),
            ));
        }
        out.push(Check::from_result(
            "sum identity",
            self.sum_identity().map(|(l, r)| {
                (l != r).then(|| format!("{} != {}", format_rational(&l), format_rational(&r)))
            }),
        ));
        out
    }
}
