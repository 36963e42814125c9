//! Exact rational scalars and the special-function kernel built on them:
//! Pochhammer symbols, generalised binomial coefficients, terminating
//! hypergeometric sums, and the parameter admissibility conditions.
//!
//! Nothing in this crate ever touches floating point.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d` in lowest terms. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("`{s}` is not a rational number"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::ZeroDenominator(format!("`{s}`")));
    }
    Ok(Rational::new(num, den))
}

/// Canonical text form: `"p/q"`, or `"p"` when `q == 1`; the sign lives on
/// the numerator.
pub fn format_rational(x: &Rational) -> String {
    debug_assert!(x.denom().is_positive());
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Returns `Some(n)` when `x` is an integer that fits an `i64`.
pub fn as_integer(x: &Rational) -> Option<i64> {
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}

/// Rising factorial `(x)_n = x (x+1) ... (x+n-1)`; `(x)_0 = 1`.
pub fn pochhammer(x: &Rational, n: u32) -> Rational {
    let mut acc = Rational::one();
    let mut factor = x.clone();
    for _ in 0..n {
        if factor.is_zero() {
            return Rational::zero();
        }
        acc *= &factor;
        factor += Rational::one();
    }
    acc
}

pub fn factorial(n: u32) -> Rational {
    pochhammer(&Rational::one(), n)
}

/// Integer binomial coefficient as a rational; zero when `k > n`.
pub fn binomial(n: u32, k: u32) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(n - i);
        acc = acc.div_floor(&BigInt::from(i + 1));
    }
    Rational::from_integer(acc)
}

/// Generalised binomial `(x-k+1)_k / k!`, i.e. "x choose k" for any rational x.
pub fn gen_binomial(x: &Rational, k: u32) -> Rational {
    let start = x - int(i64::from(k)) + Rational::one();
    pochhammer(&start, k) / factorial(k)
}

/// Terminating generalised hypergeometric sum
/// `sum_{n=0}^{k} prod (a_i)_n / prod (b_j)_n * arg^n / n!`.
///
/// One numerator parameter must equal `-k`. The running term is updated by its
/// ratio; once a numerator factor vanishes every later term is zero and the sum
/// stops early. A vanishing denominator factor before that is an error.
pub fn hyp_terminating(
    num_params: &[Rational],
    den_params: &[Rational],
    k: u32,
    arg: &Rational,
) -> Result<Rational> {
    let minus_k = -int(i64::from(k));
    if !num_params.contains(&minus_k) {
        return Err(Error::NotTerminating(k));
    }
    let mut term = Rational::one();
    let mut sum = Rational::one();
    for n in 0..k {
        let shift = int(i64::from(n));
        let mut numer = Rational::one();
        for a in num_params {
            numer *= a + &shift;
        }
        if numer.is_zero() {
            break;
        }
        let mut denom = int(i64::from(n) + 1);
        for b in den_params {
            let factor = b + &shift;
            if factor.is_zero() {
                return Err(Error::ZeroDenominator(format!(
                    "denominator parameter {} vanishes at step {}",
                    format_rational(b),
                    n + 1
                )));
            }
            denom *= factor;
        }
        term = term * numer * arg / denom;
        sum += &term;
    }
    Ok(sum)
}

/// The weights `λ_1, ..., λ_n` attached to the tensor factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParameterSet {
    lambdas: Vec<Rational>,
}

impl ParameterSet {
    pub fn new(lambdas: Vec<Rational>) -> Result<Self> {
        if lambdas.len() < 2 {
            return Err(Error::TooFewParameters(lambdas.len()));
        }
        Ok(Self { lambdas })
    }

    /// Parses a comma-separated list such as `"1/2,3/2"`.
    pub fn parse(list: &str) -> Result<Self> {
        let lambdas = list
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        Self::new(lambdas)
    }

    pub fn len(&self) -> usize {
        self.lambdas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambdas.is_empty()
    }

    /// `λ_i` with 1-based `i`, matching the tensor factor numbering.
    pub fn lambda(&self, i: usize) -> &Rational {
        &self.lambdas[i - 1]
    }

    pub fn lambdas(&self) -> &[Rational] {
        &self.lambdas
    }

    /// `λ_I = sum_{i in I} λ_i` for 1-based indices.
    pub fn sum_over<I: IntoIterator<Item = usize>>(&self, indices: I) -> Rational {
        indices
            .into_iter()
            .fold(Rational::zero(), |acc, i| acc + self.lambda(i))
    }

    /// Same set with `λ_1` and `λ_3` exchanged (Racah duality).
    pub fn swap_first_third(&self) -> Self {
        let mut lambdas = self.lambdas.clone();
        lambdas.swap(0, 2);
        Self { lambdas }
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.lambdas.iter().map(format_rational).collect()
    }
}

impl fmt::Display for ParameterSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_strings().join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdmissibilityMode {
    Hahn,
    Racah,
    /// Arbitrary `n`, with `degree` the largest total degree that will be
    /// exercised.
    HigherRank { degree: u32 },
}

impl AdmissibilityMode {
    pub fn name(&self) -> &'static str {
        match self {
            AdmissibilityMode::Hahn => "Hahn",
            AdmissibilityMode::Racah => "Racah",
            AdmissibilityMode::HigherRank { .. } => "HigherRank",
        }
    }
}

/// Which excluded range was hit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExcludedRange {
    /// `{0, -1, ..., -(N-1)}`
    Single,
    /// `{0, -1, ..., -(2N-2)}`
    Pair,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// 1-based indices whose λ's were summed.
    pub indices: Vec<usize>,
    pub value: Rational,
    pub range: ExcludedRange,
    /// Symbol used for the level in the message (`N` or `D`).
    pub level_symbol: char,
    pub level: u32,
}

fn subscript(i: usize) -> String {
    i.to_string()
        .chars()
        .map(|c| char::from_u32(0x2080 + c.to_digit(10).unwrap()).unwrap())
        .collect()
}

impl Violation {
    pub fn expression(&self) -> String {
        self.indices
            .iter()
            .map(|&i| format!("λ{}", subscript(i)))
            .collect::<Vec<_>>()
            .join("+")
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let expr = self.expression();
        let l = self.level_symbol;
        let set = match self.range {
            ExcludedRange::Single => format!("{{0,…,−({l}−1)}}"),
            ExcludedRange::Pair => format!("{{0,…,−(2{l}−2)}}"),
        };
        if self.indices.len() == 1 {
            write!(f, "{expr} ∈ {set}")?;
        } else {
            write!(f, "{expr} forbidden: {expr} ∈ {set}")?;
        }
        write!(
            f,
            " ({expr} = {}, {l} = {})",
            format_rational(&self.value),
            self.level
        )
    }
}

fn in_excluded(value: &Rational, bound: i64) -> bool {
    // {0, -1, ..., -bound}; empty when bound < 0
    match as_integer(value) {
        Some(v) => bound >= 0 && v <= 0 && v >= -bound,
        None => false,
    }
}

/// Checks the parameter exclusions that keep every recurrence coefficient
/// defined and nonzero. Returns the list of violated conditions (empty when
/// admissible).
///
/// `level` is `N` for the Hahn and Racah modes and is ignored for
/// `HigherRank`, which uses its own degree bound `D`: every `λ_i` must avoid
/// `{0..-(D-1)}` and every `λ_I` with `|I| >= 2` must avoid `{0..-(2D-2)}`.
pub fn check_admissible(
    params: &ParameterSet,
    level: u32,
    mode: AdmissibilityMode,
) -> Result<Vec<Violation>> {
    let n = params.len();
    let (groups, symbol, level) = match mode {
        AdmissibilityMode::Hahn => {
            if n != 2 {
                return Err(Error::ModeArityMismatch {
                    mode: mode.name(),
                    expected: 2,
                    got: n,
                });
            }
            (vec![vec![1], vec![2], vec![1, 2]], 'N', level)
        }
        AdmissibilityMode::Racah => {
            if n != 3 {
                return Err(Error::ModeArityMismatch {
                    mode: mode.name(),
                    expected: 3,
                    got: n,
                });
            }
            (
                vec![
                    vec![1],
                    vec![2],
                    vec![3],
                    vec![1, 2],
                    vec![2, 3],
                    vec![1, 2, 3],
                ],
                'N',
                level,
            )
        }
        AdmissibilityMode::HigherRank { degree } => {
            let mut groups: Vec<Vec<usize>> = (1..=n).map(|i| vec![i]).collect();
            let mut subsets: Vec<Vec<usize>> = (1u32..(1 << n))
                .filter(|m| m.count_ones() >= 2)
                .map(|m| (1..=n).filter(|i| m & (1 << (i - 1)) != 0).collect())
                .collect();
            subsets.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
            groups.extend(subsets);
            (groups, 'D', degree)
        }
    };
    let level_i = i64::from(level);
    let violations = groups
        .into_iter()
        .filter_map(|indices| {
            let value = params.sum_over(indices.iter().copied());
            let (range, bound) = if indices.len() == 1 {
                (ExcludedRange::Single, level_i - 1)
            } else {
                (ExcludedRange::Pair, 2 * level_i - 2)
            };
            in_excluded(&value, bound).then_some(Violation {
                indices,
                value,
                range,
                level_symbol: symbol,
                level,
            })
        })
        .collect();
    Ok(violations)
}

/// Like [`check_admissible`] but turns violations into an error.
pub fn ensure_admissible(
    params: &ParameterSet,
    level: u32,
    mode: AdmissibilityMode,
) -> Result<()> {
    let violations = check_admissible(params, level, mode)?;
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Error::InadmissibleParameters(violations))
    }
}

/// Draws `count` positive rationals with numerator and denominator uniform in
/// `[1, 12]`, resampling until admissible. Deterministic in `seed`.
pub fn sample_parameters(
    seed: u64,
    count: usize,
    level: u32,
    mode: AdmissibilityMode,
) -> Result<ParameterSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let lambdas = (0..count)
            .map(|_| {
                let p: i64 = rng.gen_range(1..=12);
                let q: i64 = rng.gen_range(1..=12);
                rat(p, q)
            })
            .collect();
        let params = ParameterSet::new(lambdas)?;
        if check_admissible(&params, level, mode)?.is_empty() {
            return Ok(params);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&rat(7, 3), 0), int(1));
        assert_eq!(pochhammer(&int(-3), 5), int(0));
        assert_eq!(pochhammer(&int(2), 3), int(24));
    }

    #[test]
    fn gen_binomial_examples() {
        assert_eq!(gen_binomial(&rat(-5, 7), 0), int(1));
        assert_eq!(gen_binomial(&int(5), 2), int(10));
        assert_eq!(gen_binomial(&rat(1, 2), 2), rat(-1, 8));
    }

    #[test]
    fn gen_binomial_matches_integer_binomials() {
        for m in 0..=20u32 {
            for k in 0..=m {
                assert_eq!(gen_binomial(&int(i64::from(m)), k), binomial(m, k), "{m} {k}");
            }
        }
    }

    #[test]
    fn hyp_examples() {
        // k = 0 is a single term whatever the other parameters are
        let r = hyp_terminating(&[int(0), rat(3, 4)], &[rat(5, 2)], 0, &rat(7, 3)).unwrap();
        assert_eq!(r, int(1));
        let r = hyp_terminating(&[int(-1), int(2)], &[int(3)], 1, &int(1)).unwrap();
        assert_eq!(r, rat(1, 3));
        // Hahn 3F2 at λ1 = 1, λ2 = 2, N = 2, k = 1, x = 1
        let r = hyp_terminating(&[int(-1), int(3), int(-1)], &[int(1), int(-2)], 1, &int(1))
            .unwrap();
        assert_eq!(r, rat(-1, 2));
    }

    #[test]
    fn hyp_errors() {
        assert_eq!(
            hyp_terminating(&[int(2)], &[int(1)], 2, &int(1)),
            Err(Error::NotTerminating(2))
        );
        let err = hyp_terminating(&[int(-3)], &[int(-1)], 3, &int(1)).unwrap_err();
        assert!(matches!(err, Error::ZeroDenominator(_)));
        // numerator and denominator vanish together: the numerator wins
        let r = hyp_terminating(&[int(-3), int(-1)], &[int(-1)], 3, &int(1)).unwrap();
        assert_eq!(r, int(1) + int(-3) * int(-1) / int(-1));
    }

    #[test]
    fn rational_text_form() {
        assert_eq!(format_rational(&rat(6, -4)), "-3/2");
        assert_eq!(format_rational(&int(5)), "5");
        assert_eq!(parse_rational(" -3/6 ").unwrap(), rat(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn admissibility_examples() {
        let p = ParameterSet::new(vec![rat(1, 2), rat(3, 2)]).unwrap();
        assert!(check_admissible(&p, 4, AdmissibilityMode::Hahn).unwrap().is_empty());

        let p = ParameterSet::new(vec![int(-1), int(2)]).unwrap();
        let v = check_admissible(&p, 3, AdmissibilityMode::Hahn).unwrap();
        assert_eq!(v.len(), 1);
        assert!(v[0].to_string().starts_with("λ₁ ∈ {0,…,−(N−1)}"), "{}", v[0]);

        let p = ParameterSet::new(vec![int(1), int(-1), int(1)]).unwrap();
        let v = check_admissible(&p, 2, AdmissibilityMode::Racah).unwrap();
        let text: Vec<String> = v.iter().map(ToString::to_string).collect();
        assert!(text.iter().any(|t| t.starts_with("λ₁+λ₂ forbidden")), "{text:?}");
        // λ2 = -1 is also excluded at N = 2, λ2+λ3 = 0 as well
        assert_eq!(v.len(), 3);
    }

    #[test]
    fn admissibility_arity() {
        let p = ParameterSet::new(vec![int(1), int(2), int(3)]).unwrap();
        assert!(matches!(
            check_admissible(&p, 2, AdmissibilityMode::Hahn),
            Err(Error::ModeArityMismatch { .. })
        ));
        let p = ParameterSet::new(vec![int(1), int(2)]).unwrap();
        assert!(matches!(
            check_admissible(&p, 2, AdmissibilityMode::Racah),
            Err(Error::ModeArityMismatch { .. })
        ));
        assert!(ParameterSet::new(vec![int(1)]).is_err());
    }

    #[test]
    fn higher_rank_admissibility() {
        let p = ParameterSet::new(vec![int(1), int(2), int(-3), rat(1, 2)]).unwrap();
        // λ1+λ3 = -2, λ2+λ3 = -1, λ1+λ2+λ3 = 0; λ3 = -3 joins once D >= 4
        let v = check_admissible(&p, 0, AdmissibilityMode::HigherRank { degree: 3 }).unwrap();
        assert_eq!(
            v.iter().map(|v| v.indices.clone()).collect::<Vec<_>>(),
            vec![vec![1, 3], vec![2, 3], vec![1, 2, 3]]
        );
        let v = check_admissible(&p, 0, AdmissibilityMode::HigherRank { degree: 4 }).unwrap();
        assert_eq!(v.len(), 4, "{v:?}");
        assert_eq!(v[0].indices, vec![3]);
    }

    #[test]
    fn sampling_is_deterministic_and_admissible() {
        let a = sample_parameters(7, 3, 6, AdmissibilityMode::Racah).unwrap();
        let b = sample_parameters(7, 3, 6, AdmissibilityMode::Racah).unwrap();
        assert_eq!(a, b);
        assert!(a.lambdas().iter().all(|l| l.is_positive()));
        let c = sample_parameters(8, 3, 6, AdmissibilityMode::Racah).unwrap();
        assert_ne!(a, c);
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-30i64..30, 1i64..12).prop_map(|(p, q)| rat(p, q))
    }

    proptest! {
        #[test]
        fn pochhammer_step(x in small_rational(), n in 0u32..12) {
            prop_assert_eq!(pochhammer(&x, n + 1), pochhammer(&x, n) * (&x + int(n.into())));
        }

        #[test]
        fn hyp_permutation_invariant(
            a in small_rational(), b in small_rational(),
            c in 1i64..9, d in 1i64..9, k in 0u32..6, arg in small_rational(),
        ) {
            let minus_k = -int(k.into());
            let dens = [rat(c, 1) + rat(1, 2), rat(d, 3)];
            let s1 = hyp_terminating(&[minus_k.clone(), a.clone(), b.clone()], &dens, k, &arg).unwrap();
            let s2 = hyp_terminating(&[b, a, minus_k], &[dens[1].clone(), dens[0].clone()], k, &arg).unwrap();
            prop_assert_eq!(s1, s2);
        }

        #[test]
        fn results_are_canonical(x in small_rational(), n in 0u32..8) {
            let p = pochhammer(&x, n);
            prop_assert!(p.denom().is_positive());
            prop_assert_eq!(p.numer().gcd(p.denom()), BigInt::one());
        }
    }
}
