//! Coupling schemes for `n`-fold tensor products: set partitions, merge
//! sequences, the commutative families of intermediate Casimirs they select,
//! and the product-of-Jacobi eigenvectors attached to them.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactnum::{ensure_admissible, int, AdmissibilityMode, ParameterSet, Rational};
use crate::families::homogenized_jacobi;
use crate::polyalg::{MultiPoly, VarSet};

/// Largest `n` handled by the enumeration routines.
pub const MAX_ARITY: usize = 7;

/// Nonempty subset of `{1..n}`, stored as a bitmask (bit `i-1` for `i`).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Subset(u32);

impl Subset {
    pub fn singleton(i: usize) -> Self {
        Subset(1 << (i - 1))
    }

    pub fn full(n: usize) -> Self {
        Subset((1u32 << n) - 1)
    }

    /// Builds a subset from 1-based elements.
    pub fn from_elements(elements: &[usize]) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::EmptySubset);
        }
        let mut mask = 0u32;
        for &i in elements {
            if i == 0 || i > 31 {
                return Err(Error::SubsetOutOfRange {
                    subset: format!("{elements:?}"),
                    n: 31,
                });
            }
            mask |= 1 << (i - 1);
        }
        Ok(Subset(mask))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// 1-based elements in increasing order.
    pub fn elements(self) -> Vec<usize> {
        (0..32).filter(|b| self.0 & (1 << b) != 0).map(|b| b + 1).collect()
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn min_elem(self) -> usize {
        self.0.trailing_zeros() as usize + 1
    }

    pub fn max_elem(self) -> usize {
        32 - self.0.leading_zeros() as usize
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    /// `λ_I = Σ_{i∈I} λ_i`.
    pub fn lambda(self, params: &ParameterSet) -> Rational {
        params.sum_over(self.elements())
    }

    /// `x_I = Σ_{i∈I} x_i` over `vars`.
    pub fn variable_sum(self, vars: &VarSet) -> MultiPoly {
        self.elements()
            .into_iter()
            .fold(MultiPoly::zero(vars), |acc, i| &acc + &MultiPoly::var(vars, i - 1))
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.elements().cmp(&other.elements()))
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in self.elements() {
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

impl FromStr for Subset {
    type Err = Error;

    /// Digits only, one per element (`"124"`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let elements = s
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .filter(|&d| d > 0)
                    .map(|d| d as usize)
                    .ok_or_else(|| Error::Parse(format!("bad subset `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        let subset = Subset::from_elements(&elements)?;
        if subset.len() != elements.len() {
            return Err(Error::Parse(format!("repeated element in `{s}`")));
        }
        Ok(subset)
    }
}

/// Partition of `{1..n}` with blocks ordered by their minimum element.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Subset>,
}

impl SetPartition {
    pub fn discrete(n: usize) -> Self {
        SetPartition {
            n,
            blocks: (1..=n).map(Subset::singleton).collect(),
        }
    }

    pub fn new(n: usize, mut blocks: Vec<Subset>) -> Result<Self> {
        let mut seen = 0u32;
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::EmptySubset);
            }
            if b.max_elem() > n {
                return Err(Error::SubsetOutOfRange {
                    subset: b.to_string(),
                    n,
                });
            }
            if seen & b.bits() != 0 {
                return Err(Error::InvalidScheme(format!("block {b} overlaps another block")));
            }
            seen |= b.bits();
        }
        if seen != Subset::full(n).bits() {
            return Err(Error::InvalidScheme(format!("blocks do not cover {{1..{n}}}")));
        }
        blocks.sort_by_key(|b| b.min_elem());
        Ok(SetPartition { n, blocks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Subset] {
        &self.blocks
    }

    /// Merges blocks `i < j` (0-based positions).
    pub fn merge(&self, i: usize, j: usize) -> SetPartition {
        let merged = self.blocks[i].union(self.blocks[j]);
        let mut blocks: Vec<Subset> = self
            .blocks
            .iter()
            .enumerate()
            .filter(|&(p, _)| p != i && p != j)
            .map(|(_, &b)| b)
            .collect();
        blocks.push(merged);
        blocks.sort_by_key(|b| b.min_elem());
        SetPartition { n: self.n, blocks }
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(|b| b.to_string()).collect();
        f.write_str(&parts.join("|"))
    }
}

impl fmt::Debug for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for SetPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let blocks = s
            .split('|')
            .map(Subset::from_str)
            .collect::<Result<Vec<_>>>()?;
        let n = blocks.iter().map(|b| b.max_elem()).max().unwrap_or(0);
        SetPartition::new(n, blocks)
    }
}

/// Position of `a` relative to step `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precedence {
    /// `I_a ∪ J_a ⊆ I_b`.
    LeftOf,
    /// `I_a ∪ J_a ⊆ J_b`.
    RightOf,
    Equal,
    Unrelated,
}

impl Precedence {
    /// `a ⪯ b`.
    pub fn is_below(self) -> bool {
        !matches!(self, Precedence::Unrelated)
    }
}

/// Sequence of `n-1` merges from the discrete partition to `{1..n}`. In each
/// step `(I, J)` the block `I` is the one with the smaller minimum.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CouplingScheme {
    n: usize,
    steps: Vec<(Subset, Subset)>,
}

impl CouplingScheme {
    /// Validates that each step merges two blocks of the current partition.
    /// Pairs given in the wrong order are normalised.
    pub fn new(n: usize, steps: Vec<(Subset, Subset)>) -> Result<Self> {
        if !(2..=31).contains(&n) {
            return Err(Error::ArityOutOfRange(n));
        }
        if steps.len() != n - 1 {
            return Err(Error::InvalidScheme(format!(
                "{} steps given, {} needed",
                steps.len(),
                n - 1
            )));
        }
        let mut partition = SetPartition::discrete(n);
        let mut normalised = Vec::with_capacity(n - 1);
        for (k, &(a, b)) in steps.iter().enumerate() {
            let pa = partition.blocks.iter().position(|&x| x == a);
            let pb = partition.blocks.iter().position(|&x| x == b);
            let (Some(pa), Some(pb)) = (pa, pb) else {
                return Err(Error::InvalidScheme(format!(
                    "step {}: {a} and {b} are not both blocks of {partition}",
                    k + 1
                )));
            };
            if pa == pb {
                return Err(Error::InvalidScheme(format!("step {}: merges {a} with itself", k + 1)));
            }
            let (i, j) = (pa.min(pb), pa.max(pb));
            normalised.push((partition.blocks[i], partition.blocks[j]));
            partition = partition.merge(i, j);
        }
        Ok(CouplingScheme {
            n,
            steps: normalised,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// All steps, 0-based.
    pub fn steps(&self) -> &[(Subset, Subset)] {
        &self.steps
    }

    /// Step `b` (1-based) as `(I_b, J_b)`.
    pub fn step(&self, b: usize) -> Result<(Subset, Subset)> {
        self.check_step(b)?;
        Ok(self.steps[b - 1])
    }

    fn check_step(&self, b: usize) -> Result<()> {
        if b == 0 || b > self.steps.len() {
            return Err(Error::IndexOutOfRange {
                index: b,
                limit: self.steps.len(),
            });
        }
        Ok(())
    }

    /// The `n` partitions visited, from discrete to full.
    pub fn partitions(&self) -> Vec<SetPartition> {
        let mut out = vec![SetPartition::discrete(self.n)];
        for &(a, b) in &self.steps {
            let last = out.last().unwrap();
            let i = last.blocks.iter().position(|&x| x == a).unwrap();
            let j = last.blocks.iter().position(|&x| x == b).unwrap();
            out.push(last.merge(i, j));
        }
        out
    }
}

impl fmt::Display for CouplingScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.partitions().iter().map(|p| p.to_string()).collect();
        f.write_str(&parts.join(" -> "))
    }
}

impl fmt::Debug for CouplingScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for CouplingScheme {
    type Err = Error;

    /// Parses `"1|2|3 -> 12|3 -> 123"`.
    fn from_str(s: &str) -> Result<Self> {
        let partitions = s
            .split("->")
            .map(SetPartition::from_str)
            .collect::<Result<Vec<_>>>()?;
        let n = partitions[0].n;
        if partitions[0] != SetPartition::discrete(n) {
            return Err(Error::InvalidScheme(format!(
                "first partition {} is not discrete",
                partitions[0]
            )));
        }
        let mut steps = Vec::new();
        for pair in partitions.windows(2) {
            let (before, after) = (&pair[0], &pair[1]);
            if after.n != n {
                return Err(Error::InvalidScheme(format!("{after} is not a partition of {{1..{n}}}")));
            }
            let gone: Vec<Subset> = before
                .blocks
                .iter()
                .copied()
                .filter(|b| !after.blocks.contains(b))
                .collect();
            let new: Vec<Subset> = after
                .blocks
                .iter()
                .copied()
                .filter(|b| !before.blocks.contains(b))
                .collect();
            if gone.len() != 2 || new.len() != 1 || gone[0].union(gone[1]) != new[0] {
                return Err(Error::InvalidScheme(format!("{before} -> {after} is not a single merge")));
            }
            steps.push((gone[0], gone[1]));
        }
        CouplingScheme::new(n, steps)
    }
}

fn check_arity(n: usize) -> Result<()> {
    if !(2..=MAX_ARITY).contains(&n) {
        return Err(Error::ArityOutOfRange(n));
    }
    Ok(())
}

/// Number of schemes, `n!(n-1)!/2^{n-1}`.
pub fn scheme_count(n: usize) -> u128 {
    (3..=n as u128).map(|k| k * (k - 1) / 2).product()
}

/// Number of distinct families, `(2n-3)!!`.
pub fn family_count(n: usize) -> u128 {
    (1..=(2 * n as u128).saturating_sub(3)).step_by(2).product()
}

/// All coupling schemes for `n`, ordered lexicographically by the block
/// positions `(i, j)` merged at each step.
pub fn enumerate_schemes(n: usize) -> Result<Vec<CouplingScheme>> {
    check_arity(n)?;
    let mut out = Vec::new();
    let mut steps = Vec::with_capacity(n - 1);
    enumerate_from(&SetPartition::discrete(n), &mut steps, &mut out);
    Ok(out)
}

fn enumerate_from(
    partition: &SetPartition,
    steps: &mut Vec<(Subset, Subset)>,
    out: &mut Vec<CouplingScheme>,
) {
    let m = partition.blocks.len();
    if m == 1 {
        out.push(CouplingScheme {
            n: partition.n,
            steps: steps.clone(),
        });
        return;
    }
    for i in 0..m {
        for j in i + 1..m {
            steps.push((partition.blocks[i], partition.blocks[j]));
            enumerate_from(&partition.merge(i, j), steps, out);
            steps.pop();
        }
    }
}

/// The subsets `I_b ∪ J_b` indexing the commuting Casimirs, in step order.
pub fn commutative_family(scheme: &CouplingScheme) -> Vec<Subset> {
    scheme.steps.iter().map(|&(a, b)| a.union(b)).collect()
}

/// A family as a sorted set of subsets.
pub type FamilyKey = Vec<Subset>;

pub fn family_key(scheme: &CouplingScheme) -> FamilyKey {
    let mut key = commutative_family(scheme);
    key.sort();
    key
}

/// Distinct families produced by `schemes`, sorted.
pub fn dedupe_families(schemes: &[CouplingScheme]) -> Vec<FamilyKey> {
    schemes
        .iter()
        .map(family_key)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// Relation of step `a` to step `b` (both 1-based, `a <= b`).
pub fn precedence(scheme: &CouplingScheme, a: usize, b: usize) -> Result<Precedence> {
    scheme.check_step(b)?;
    if a == 0 || a > b {
        return Err(Error::IndexOutOfRange { index: a, limit: b });
    }
    if a == b {
        return Ok(Precedence::Equal);
    }
    let (ia, ja) = scheme.steps[a - 1];
    let (ib, jb) = scheme.steps[b - 1];
    let merged = ia.union(ja);
    Ok(if merged.is_subset_of(ib) {
        Precedence::LeftOf
    } else if merged.is_subset_of(jb) {
        Precedence::RightOf
    } else {
        Precedence::Unrelated
    })
}

fn check_k(scheme: &CouplingScheme, k: &[u32]) -> Result<()> {
    if k.len() != scheme.n - 1 {
        return Err(Error::IndexOutOfRange {
            index: k.len(),
            limit: scheme.n - 1,
        });
    }
    Ok(())
}

fn check_params(scheme: &CouplingScheme, params: &ParameterSet) -> Result<()> {
    if params.len() != scheme.n {
        return Err(Error::ModeArityMismatch {
            mode: "HigherRank",
            expected: scheme.n,
            got: params.len(),
        });
    }
    Ok(())
}

/// `(Σ_{a≺_L b} k_a, Σ_{a≺_R b} k_a)` for each step `b`.
fn side_sums(scheme: &CouplingScheme, k: &[u32]) -> Vec<(u32, u32)> {
    let steps = scheme.steps.len();
    (1..=steps)
        .map(|b| {
            let mut left = 0;
            let mut right = 0;
            for a in 1..b {
                match precedence(scheme, a, b).expect("indices in range") {
                    Precedence::LeftOf => left += k[a - 1],
                    Precedence::RightOf => right += k[a - 1],
                    _ => {}
                }
            }
            (left, right)
        })
        .collect()
}

/// `(λ_{I_b} + 2Σ_{a≺_L b} k_a, λ_{J_b} + 2Σ_{a≺_R b} k_a)` for each step.
pub fn shifted_params(
    scheme: &CouplingScheme,
    k: &[u32],
    params: &ParameterSet,
) -> Result<Vec<(Rational, Rational)>> {
    check_k(scheme, k)?;
    check_params(scheme, params)?;
    Ok(scheme
        .steps
        .iter()
        .zip(side_sums(scheme, k))
        .map(|(&(i, j), (left, right))| {
            (
                i.lambda(params) + int(2 * i64::from(left)),
                j.lambda(params) + int(2 * i64::from(right)),
            )
        })
        .collect())
}

/// Common eigenvector `v_k` of the family, as a polynomial in `x1..xn`:
/// the product over steps of `homogenized_jacobi(k_b, shifted, x_{I_b}, x_{J_b})`.
pub fn eigenvector(scheme: &CouplingScheme, k: &[u32], params: &ParameterSet) -> Result<MultiPoly> {
    let shifted = shifted_params(scheme, k, params)?;
    let degree = k.iter().sum();
    ensure_admissible(params, degree, AdmissibilityMode::HigherRank { degree })?;
    let vars = VarSet::indexed("x", scheme.n);
    let mut acc = MultiPoly::one(&vars);
    for ((&(i, j), (li, lj)), &kb) in scheme.steps.iter().zip(&shifted).zip(k) {
        if kb == 0 {
            continue;
        }
        let factor = homogenized_jacobi(kb, li, lj, &i.variable_sum(&vars), &j.variable_sum(&vars));
        acc = &acc * &factor;
    }
    Ok(acc)
}

/// Eigenvalue of `C'_{I_b ∪ J_b}` on `v_k`: `S(S + λ_{I_b} + λ_{J_b} - 1)`
/// with `S = Σ_{a⪯b} k_a`.
pub fn eigenvalue(scheme: &CouplingScheme, b: usize, k: &[u32], params: &ParameterSet) -> Result<Rational> {
    scheme.check_step(b)?;
    check_k(scheme, k)?;
    check_params(scheme, params)?;
    let mut s = 0u32;
    for a in 1..=b {
        if precedence(scheme, a, b)?.is_below() {
            s += k[a - 1];
        }
    }
    if s == 0 {
        return Ok(Rational::zero());
    }
    let (i, j) = scheme.steps[b - 1];
    let s = int(i64::from(s));
    Ok(&s * (&s + i.lambda(params) + j.lambda(params) - int(1)))
}

/// All vectors of `len` nonnegative integers with sum at most `max`, in
/// increasing total order then lexicographically.
pub fn k_vectors(len: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for total in 0..=max {
        let mut cur = vec![0u32; len];
        compositions(total, 0, &mut cur, &mut out);
    }
    out
}

fn compositions(rest: u32, pos: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if pos + 1 == cur.len() {
        cur[pos] = rest;
        out.push(cur.clone());
        return;
    }
    for v in (0..=rest).rev() {
        cur[pos] = v;
        compositions(rest - v, pos + 1, cur, out);
    }
}

/// Graph on the distinct families of one arity, with two families adjacent
/// when they differ in exactly one subset. Experimental: the adjacency rule
/// is a heuristic for "related by a single Racah transition".
#[derive(Debug, Clone)]
pub struct FamilyGraph {
    pub families: Vec<FamilyKey>,
    pub adjacency: Vec<Vec<usize>>,
}

pub fn family_graph(n: usize) -> Result<FamilyGraph> {
    let families = dedupe_families(&enumerate_schemes(n)?);
    let adjacency = families
        .iter()
        .map(|f| {
            families
                .iter()
                .enumerate()
                .filter(|(_, g)| f.iter().filter(|s| !g.contains(s)).count() == 1)
                .map(|(j, _)| j)
                .collect()
        })
        .collect();
    Ok(FamilyGraph {
        families,
        adjacency,
    })
}

impl FamilyGraph {
    /// Breadth-first distances from `start`; `None` for unreachable nodes.
    pub fn distances_from(&self, start: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.families.len()];
        dist[start] = Some(0);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &v in &self.adjacency[u] {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn index_of(&self, family: &[Subset]) -> Option<usize> {
        let mut key = family.to_vec();
        key.sort();
        self.families.iter().position(|f| *f == key)
    }

    /// Largest distance, or `None` if the graph is disconnected.
    pub fn diameter(&self) -> Option<usize> {
        let mut best = 0;
        for i in 0..self.families.len() {
            for d in self.distances_from(i) {
                best = best.max(d?);
            }
        }
        Some(best)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{factorial, hyp_terminating, pochhammer, rat, sample_parameters};
    use crate::opcalc::casimir;
    use proptest::prelude::*;

    fn sub(s: &str) -> Subset {
        s.parse().unwrap()
    }

    fn scheme(s: &str) -> CouplingScheme {
        s.parse().unwrap()
    }

    fn params(v: &[(i64, i64)]) -> ParameterSet {
        ParameterSet::new(v.iter().map(|&(p, q)| rat(p, q)).collect()).unwrap()
    }

    /// `P_l^{a,b}(u) = (a)_l/l! 2F1(-l, l+a+b-1; a; (1-u)/2)` at a point.
    fn jacobi_at(l: u32, a: &Rational, b: &Rational, u: &Rational) -> Rational {
        let ll = int(i64::from(l));
        let z = (int(1) - u) / int(2);
        pochhammer(a, l) / factorial(l)
            * hyp_terminating(&[-ll.clone(), &ll + a + b - int(1)], std::slice::from_ref(a), l, &z).unwrap()
    }

    /// `x_{IJ}^k P_k^{a,b}(u_{I,J})` at a point.
    fn factor_at(k: u32, a: &Rational, b: &Rational, xi: &Rational, xj: &Rational) -> Rational {
        let t = xi + xj;
        let u = (xj - xi) / &t;
        num_traits::Pow::pow(&t, k) * jacobi_at(k, a, b, &u)
    }

    fn points() -> Vec<Vec<Rational>> {
        vec![
            vec![rat(1, 2), rat(2, 3), rat(5, 7), rat(3, 1)],
            vec![rat(-3, 4), rat(7, 5), rat(1, 9), rat(2, 11)],
            vec![rat(4, 1), rat(-1, 3), rat(6, 5), rat(-5, 2)],
        ]
    }

    #[test]
    fn subset_text_form() {
        assert_eq!(sub("12").to_string(), "12");
        assert_eq!(sub("21"), sub("12"));
        assert!("1a".parse::<Subset>().is_err());
        assert!("11".parse::<Subset>().is_err());
        assert!("".parse::<Subset>().is_err());
        assert_eq!(sub("234").elements(), vec![2, 3, 4]);
        assert_eq!(sub("234").min_elem(), 2);
    }

    #[test]
    fn scheme_text_round_trip() {
        let text = "1|2|3|4 -> 12|3|4 -> 123|4 -> 1234";
        assert_eq!(scheme(text).to_string(), text);
        let s = scheme("1|2|3|4 -> 1|24|3 -> 1|234 -> 1234");
        assert_eq!(s.steps()[0], (sub("2"), sub("4")));
        assert_eq!(s.steps()[1], (sub("24"), sub("3")));
        assert_eq!(s.steps()[2], (sub("1"), sub("234")));
    }

    #[test]
    fn invalid_schemes_are_rejected() {
        assert!("1|2|3 -> 123".parse::<CouplingScheme>().is_err());
        assert!("12|3 -> 123".parse::<CouplingScheme>().is_err());
        assert!("1|2|3 -> 12|3 -> 12|3".parse::<CouplingScheme>().is_err());
        assert!("1|2|3 -> 12|3".parse::<CouplingScheme>().is_err());
        assert!(CouplingScheme::new(3, vec![(sub("1"), sub("1")), (sub("1"), sub("23"))]).is_err());
        assert!(CouplingScheme::new(3, vec![(sub("12"), sub("3")), (sub("1"), sub("2"))]).is_err());
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_schemes(2).unwrap().len(), 1);
        assert_eq!(enumerate_schemes(3).unwrap().len(), 3);
        assert_eq!(enumerate_schemes(4).unwrap().len(), 18);
        assert_eq!(enumerate_schemes(1), Err(Error::ArityOutOfRange(1)));
        assert_eq!(enumerate_schemes(8), Err(Error::ArityOutOfRange(8)));
        let first = &enumerate_schemes(3).unwrap()[0];
        assert_eq!(first.to_string(), "1|2|3 -> 12|3 -> 123");
    }

    #[test]
    fn counts_match_closed_forms() {
        let factorial = |m: u128| (1..=m).product::<u128>();
        for n in 2..=6usize {
            let schemes = enumerate_schemes(n).unwrap();
            let m = n as u128;
            let expected = factorial(m) * factorial(m - 1) / (1u128 << (m - 1));
            assert_eq!(schemes.len() as u128, expected, "n={n}");
            assert_eq!(scheme_count(n), expected);
            let double_fact: u128 = (1..=2 * m - 3).filter(|v| v % 2 == 1).product();
            assert_eq!(dedupe_families(&schemes).len() as u128, double_fact, "n={n}");
            assert_eq!(family_count(n), double_fact);
        }
        assert_eq!(family_count(4), 15);
        assert_eq!(family_count(5), 105);
    }

    #[test]
    fn family_examples() {
        assert_eq!(
            commutative_family(&scheme("1|2|3 -> 12|3 -> 123")),
            vec![sub("12"), sub("123")]
        );
        assert_eq!(
            commutative_family(&scheme("1|2|3|4 -> 12|3|4 -> 12|34 -> 1234")),
            vec![sub("12"), sub("34"), sub("1234")]
        );
        let a = family_key(&scheme("1|2|3|4 -> 12|3|4 -> 12|34 -> 1234"));
        let b = family_key(&scheme("1|2|3|4 -> 1|2|34 -> 12|34 -> 1234"));
        assert_eq!(a, b);
        let n3: Vec<Vec<Subset>> = dedupe_families(&enumerate_schemes(3).unwrap());
        assert_eq!(
            n3,
            vec![
                vec![sub("12"), sub("123")],
                vec![sub("13"), sub("123")],
                vec![sub("23"), sub("123")],
            ]
        );
    }

    #[test]
    fn families_are_laminar() {
        for n in 2..=5 {
            for s in enumerate_schemes(n).unwrap() {
                let fam = commutative_family(&s);
                assert_eq!(*fam.last().unwrap(), Subset::full(n));
                assert_eq!(fam[0].len(), 2);
                for a in &fam {
                    for b in &fam {
                        assert!(a.is_subset_of(*b) || b.is_subset_of(*a) || a.is_disjoint(*b));
                    }
                }
            }
        }
    }

    #[test]
    fn precedence_examples() {
        let s = scheme("1|2|3|4 -> 12|3|4 -> 123|4 -> 1234");
        assert_eq!(precedence(&s, 1, 2).unwrap(), Precedence::LeftOf);
        assert_eq!(precedence(&s, 1, 3).unwrap(), Precedence::LeftOf);
        assert_eq!(precedence(&s, 2, 3).unwrap(), Precedence::LeftOf);
        assert_eq!(precedence(&s, 2, 2).unwrap(), Precedence::Equal);
        let t = scheme("1|2|3|4 -> 12|3|4 -> 12|34 -> 1234");
        assert_eq!(precedence(&t, 1, 2).unwrap(), Precedence::Unrelated);
        assert_eq!(precedence(&t, 2, 3).unwrap(), Precedence::RightOf);
        assert!(precedence(&s, 0, 2).is_err());
        assert!(precedence(&s, 3, 2).is_err());
        assert!(precedence(&s, 1, 4).is_err());
    }

    #[test]
    fn shifted_params_reduce_at_zero() {
        let p = params(&[(1, 2), (2, 3), (3, 4), (5, 6)]);
        for s in enumerate_schemes(4).unwrap() {
            let shifted = shifted_params(&s, &[0, 0, 0], &p).unwrap();
            for (&(i, j), (li, lj)) in s.steps().iter().zip(&shifted) {
                assert_eq!(*li, i.lambda(&p));
                assert_eq!(*lj, j.lambda(&p));
            }
        }
        let s = scheme("1|2|3|4 -> 12|3|4 -> 12|34 -> 1234");
        let shifted = shifted_params(&s, &[1, 2, 3], &p).unwrap();
        assert_eq!(shifted[2], (rat(7, 6) + int(2), rat(19, 12) + int(4)));
    }

    #[test]
    fn eigenvector_examples() {
        let p = params(&[(1, 2), (2, 3), (3, 4)]);
        let s = scheme("1|2|3 -> 12|3 -> 123");
        let vars = VarSet::indexed("x", 3);
        assert_eq!(eigenvector(&s, &[0, 0], &p).unwrap(), MultiPoly::one(&vars));
        let x1 = MultiPoly::var(&vars, 0);
        let x2 = MultiPoly::var(&vars, 1);
        let expected = &x2.scale(p.lambda(1)) - &x1.scale(p.lambda(2));
        assert_eq!(eigenvector(&s, &[1, 0], &p).unwrap(), expected);
        for b in 1..=2 {
            assert!(eigenvalue(&s, b, &[0, 0], &p).unwrap().is_zero());
        }
        assert_eq!(eigenvalue(&s, 1, &[1, 0], &p).unwrap(), rat(7, 6));
        assert_eq!(eigenvalue(&s, 2, &[1, 0], &p).unwrap(), rat(23, 12));
        assert!(eigenvalue(&s, 3, &[1, 0], &p).is_err());
    }

    #[test]
    fn eigenvector_rejects_bad_input() {
        let s = scheme("1|2|3 -> 12|3 -> 123");
        let p = params(&[(1, 2), (2, 3), (3, 4)]);
        assert!(eigenvector(&s, &[1], &p).is_err());
        assert!(eigenvector(&s, &[1, 0], &params(&[(1, 2), (2, 3)])).is_err());
        let bad = ParameterSet::new(vec![int(-1), int(2), int(3)]).unwrap();
        assert!(matches!(
            eigenvector(&s, &[1, 2], &bad),
            Err(Error::InadmissibleParameters(_))
        ));
    }

    #[test]
    fn n3_schemes_reproduce_v_and_w() {
        let p = params(&[(1, 2), (5, 3), (7, 4)]);
        let (l1, l2, l3) = (p.lambda(1).clone(), p.lambda(2).clone(), p.lambda(3).clone());
        let sv = scheme("1|2|3 -> 12|3 -> 123");
        let sw = scheme("1|2|3 -> 1|23 -> 123");
        for n in 0..=3u32 {
            for l in 0..=n {
                let v = eigenvector(&sv, &[l, n - l], &p).unwrap();
                let w = eigenvector(&sw, &[l, n - l], &p).unwrap();
                for pt in points() {
                    let (x, y, z) = (&pt[0], &pt[1], &pt[2]);
                    let two_l = int(2 * i64::from(l));
                    let v_expected = factor_at(n - l, &(&l1 + &l2 + &two_l), &l3, &(x + y), z)
                        * factor_at(l, &l1, &l2, x, y);
                    let w_expected = factor_at(n - l, &l1, &(&l2 + &l3 + &two_l), x, &(y + z))
                        * factor_at(l, &l2, &l3, y, z);
                    assert_eq!(v.eval_at(&pt[..3]), v_expected, "v_{l}, N={n}");
                    assert_eq!(w.eval_at(&pt[..3]), w_expected, "w_{l}, N={n}");
                }
            }
        }
    }

    #[test]
    fn n4_printed_examples() {
        let p = params(&[(1, 3), (3, 2), (5, 4), (2, 7)]);
        let lam = |s: &str| sub(s).lambda(&p);
        let x = |pt: &[Rational], s: &str| sub(s).elements().iter().map(|&i| pt[i - 1].clone()).sum::<Rational>();
        type Printed = fn(&[u32], &dyn Fn(&str) -> Rational, &dyn Fn(&str) -> Rational) -> Rational;
        let cases: Vec<(&str, Vec<&str>, Printed)> = vec![
            (
                "1|2|3|4 -> 12|3|4 -> 123|4 -> 1234",
                vec!["12", "123", "1234"],
                |k, lam, x| {
                    let two = |v: u32| int(2 * i64::from(v));
                    factor_at(k[2], &(lam("123") + two(k[0] + k[1])), &lam("4"), &x("123"), &x("4"))
                        * factor_at(k[1], &(lam("12") + two(k[0])), &lam("3"), &x("12"), &x("3"))
                        * factor_at(k[0], &lam("1"), &lam("2"), &x("1"), &x("2"))
                },
            ),
            (
                "1|2|3|4 -> 12|3|4 -> 12|34 -> 1234",
                vec!["12", "34", "1234"],
                |k, lam, x| {
                    let two = |v: u32| int(2 * i64::from(v));
                    factor_at(k[2], &(lam("12") + two(k[0])), &(lam("34") + two(k[1])), &x("12"), &x("34"))
                        * factor_at(k[1], &lam("3"), &lam("4"), &x("3"), &x("4"))
                        * factor_at(k[0], &lam("1"), &lam("2"), &x("1"), &x("2"))
                },
            ),
            (
                "1|2|3|4 -> 1|2|34 -> 1|234 -> 1234",
                vec!["34", "234", "1234"],
                |k, lam, x| {
                    let two = |v: u32| int(2 * i64::from(v));
                    factor_at(k[2], &lam("1"), &(lam("234") + two(k[0] + k[1])), &x("1"), &x("234"))
                        * factor_at(k[1], &lam("2"), &(lam("34") + two(k[0])), &x("2"), &x("34"))
                        * factor_at(k[0], &lam("3"), &lam("4"), &x("3"), &x("4"))
                },
            ),
            (
                "1|2|3|4 -> 1|24|3 -> 1|234 -> 1234",
                vec!["24", "234", "1234"],
                |k, lam, x| {
                    let two = |v: u32| int(2 * i64::from(v));
                    factor_at(k[2], &lam("1"), &(lam("234") + two(k[0] + k[1])), &x("1"), &x("234"))
                        * factor_at(k[1], &(lam("24") + two(k[0])), &lam("3"), &x("24"), &x("3"))
                        * factor_at(k[0], &lam("2"), &lam("4"), &x("2"), &x("4"))
                },
            ),
        ];
        for (text, family, printed) in cases {
            let s = scheme(text);
            let fam: Vec<Subset> = family.iter().map(|f| sub(f)).collect();
            assert_eq!(commutative_family(&s), fam, "{text}");
            for k in k_vectors(3, 3) {
                let v = eigenvector(&s, &k, &p).unwrap();
                for pt in points() {
                    let xf = |name: &str| x(&pt, name);
                    assert_eq!(v.eval_at(&pt), printed(&k, &lam, &xf), "{text} k={k:?}");
                }
            }
        }
    }

    #[test]
    fn eigenvalues_match_casimir_action() {
        let p = params(&[(1, 2), (5, 3), (7, 4)]);
        for s in enumerate_schemes(3).unwrap() {
            let ops: Vec<_> = commutative_family(&s)
                .iter()
                .map(|f| casimir(&f.elements(), &p, true).unwrap())
                .collect();
            for k in k_vectors(2, 3) {
                let v = eigenvector(&s, &k, &p).unwrap();
                for (b, op) in ops.iter().enumerate() {
                    let lam = eigenvalue(&s, b + 1, &k, &p).unwrap();
                    assert_eq!(op.apply(&v).unwrap(), v.scale(&lam), "{s} k={k:?} b={}", b + 1);
                }
            }
        }
    }

    #[test]
    fn k_vectors_enumeration() {
        let ks = k_vectors(3, 2);
        assert_eq!(ks.len(), 10);
        assert_eq!(ks[0], vec![0, 0, 0]);
        assert_eq!(ks[1], vec![1, 0, 0]);
        assert!(ks.iter().all(|k| k.iter().sum::<u32>() <= 2));
    }

    #[test]
    fn family_graph_n4() {
        let g = family_graph(4).unwrap();
        assert_eq!(g.families.len(), 15);
        assert_eq!(g.diameter(), Some(3));
        let first = g.index_of(&[sub("12"), sub("123"), sub("1234")]).unwrap();
        let last = g.index_of(&[sub("24"), sub("234"), sub("1234")]).unwrap();
        assert_eq!(g.distances_from(first)[last], Some(3));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn eigenvectors_are_homogeneous(seed in 0u64..1000, idx in 0usize..18, k in proptest::collection::vec(0u32..3, 3)) {
            let s = &enumerate_schemes(4).unwrap()[idx];
            let degree: u32 = k.iter().sum();
            let p = sample_parameters(seed, 4, degree, AdmissibilityMode::HigherRank { degree }).unwrap();
            let v = eigenvector(s, &k, &p).unwrap();
            prop_assert!(!v.is_zero());
            for (m, _) in v.terms() {
                prop_assert_eq!(m.degree(), degree);
            }
        }
    }
}
