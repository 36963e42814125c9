//! Convolution identities: explicit expansions between two eigenbases,
//! checked against brute-force linear algebra.

use crate::coupling::{eigenvector, CouplingScheme};
use crate::error::Result;
use crate::exactnum::{
    binomial, ensure_admissible, factorial, int, pochhammer, AdmissibilityMode, ParameterSet,
    Rational,
};
use crate::families::{classical_value, homogenized_jacobi, Family};
use crate::opcalc::{casimir, euler_operator};
use crate::polyalg::{MultiPoly, VarSet};
use crate::report::{Check, Report, Scope};

use super::{compare_matrices, div, eigen_failure, expand_all, mat_mul, scaled_identity};

fn xs(n: usize) -> (VarSet, Vec<MultiPoly>) {
    let vars = VarSet::indexed("x", n);
    let x = (0..n).map(|i| MultiPoly::var(&vars, i)).collect();
    (vars, x)
}

/// `v_l = x1^l x2^{N-l}` and `w_l = (x1+x2)^{N-l} hj(l, λ1, λ2, x1, x2)`.
pub fn hahn_vectors(params: &ParameterSet, n: u32) -> (Vec<MultiPoly>, Vec<MultiPoly>) {
    let (_, x) = xs(2);
    let t = &x[0] + &x[1];
    let v = (0..=n).map(|l| &x[0].pow(l) * &x[1].pow(n - l)).collect();
    let w = (0..=n)
        .map(|l| &t.pow(n - l) * &homogenized_jacobi(l, params.lambda(1), params.lambda(2), &x[0], &x[1]))
        .collect();
    (v, w)
}

/// `v_l = hj(l, λ1, λ2, x1, x2) hj(N-l, λ1+λ2+2l, λ3, x1+x2, x3)` and
/// `w_l = hj(l, λ2, λ3, x2, x3) hj(N-l, λ1, λ2+λ3+2l, x1, x2+x3)`.
pub fn racah_vectors(params: &ParameterSet, n: u32) -> (Vec<MultiPoly>, Vec<MultiPoly>) {
    let (_, x) = xs(3);
    let (l1, l2, l3) = (params.lambda(1), params.lambda(2), params.lambda(3));
    let x12 = &x[0] + &x[1];
    let x23 = &x[1] + &x[2];
    let v = (0..=n)
        .map(|l| {
            let two_l = int(2 * i64::from(l));
            &homogenized_jacobi(l, l1, l2, &x[0], &x[1])
                * &homogenized_jacobi(n - l, &(l1 + l2 + &two_l), l3, &x12, &x[2])
        })
        .collect();
    let w = (0..=n)
        .map(|l| {
            let two_l = int(2 * i64::from(l));
            &homogenized_jacobi(l, l2, l3, &x[1], &x[2])
                * &homogenized_jacobi(n - l, l1, &(l2 + l3 + &two_l), &x[0], &x23)
        })
        .collect();
    (v, w)
}

fn grid(n: u32) -> impl Iterator<Item = u32> + Clone {
    0..=n
}

/// Row `l`: coefficients of `w_l` on `v_k`, `(λ1)_l/l! C(N,k) Q_{l,k}`.
pub fn hahn_forward_matrix(params: &ParameterSet, n: u32) -> Result<Vec<Vec<Rational>>> {
    let l1 = params.lambda(1);
    grid(n)
        .map(|l| {
            grid(n)
                .map(|k| {
                    Ok(pochhammer(l1, l) / factorial(l)
                        * binomial(n, k)
                        * classical_value(Family::Hahn, l, k, params, n)?)
                })
                .collect()
        })
        .collect()
}

/// Row `l`: coefficients of `v_l` on `w_k`,
/// `C(N,k) k! (λ1)_l (λ2)_{N-l} / ((λ2)_k (s+k-1)_k (s+2k)_{N-k}) Q_{k,l}`.
pub fn hahn_inverse_matrix(params: &ParameterSet, n: u32) -> Result<Vec<Vec<Rational>>> {
    let (l1, l2) = (params.lambda(1), params.lambda(2));
    let s = l1 + l2;
    grid(n)
        .map(|l| {
            grid(n)
                .map(|k| {
                    let kk = int(i64::from(k));
                    let num = binomial(n, k) * factorial(k) * pochhammer(l1, l) * pochhammer(l2, n - l);
                    let den = pochhammer(l2, k)
                        * pochhammer(&(&s + &kk - int(1)), k)
                        * pochhammer(&(&s + &kk * int(2)), n - k);
                    Ok(div(num, den, "inverse Hahn coefficient")?
                        * classical_value(Family::Hahn, k, l, params, n)?)
                })
                .collect()
        })
        .collect()
}

/// Row `l`: coefficients of `w_l` on `v_k`,
/// `C(N,l)(λ2)_l(λ1)_{N-l}(Λ+N-1)_k / ((λ1)_k(λ1+λ2+k-1)_k(λ1+λ2+2k)_{N-k}) R_{l,k}`.
pub fn racah_forward_matrix(params: &ParameterSet, n: u32) -> Result<Vec<Vec<Rational>>> {
    let (l1, l2, l3) = (params.lambda(1), params.lambda(2), params.lambda(3));
    let s = l1 + l2;
    let big = &s + l3 + int(i64::from(n)) - int(1);
    grid(n)
        .map(|l| {
            grid(n)
                .map(|k| {
                    let kk = int(i64::from(k));
                    let num = binomial(n, l) * pochhammer(l2, l) * pochhammer(l1, n - l) * pochhammer(&big, k);
                    let den = pochhammer(l1, k)
                        * pochhammer(&(&s + &kk - int(1)), k)
                        * pochhammer(&(&s + &kk * int(2)), n - k);
                    Ok(div(num, den, "forward Racah coefficient")?
                        * classical_value(Family::Racah, l, k, params, n)?)
                })
                .collect()
        })
        .collect()
}

/// Row `l`: coefficients of `v_l` on `w_k`,
/// `C(N,l)(λ2)_l(λ3)_{N-l}(Λ+N-1)_k / ((λ3)_k(λ2+λ3+k-1)_k(λ2+λ3+2k)_{N-k}) R_{k,l}`.
pub fn racah_inverse_matrix(params: &ParameterSet, n: u32) -> Result<Vec<Vec<Rational>>> {
    let (l1, l2, l3) = (params.lambda(1), params.lambda(2), params.lambda(3));
    let s = l2 + l3;
    let big = l1 + &s + int(i64::from(n)) - int(1);
    grid(n)
        .map(|l| {
            grid(n)
                .map(|k| {
                    let kk = int(i64::from(k));
                    let num = binomial(n, l) * pochhammer(l2, l) * pochhammer(l3, n - l) * pochhammer(&big, k);
                    let den = pochhammer(l3, k)
                        * pochhammer(&(&s + &kk - int(1)), k)
                        * pochhammer(&(&s + &kk * int(2)), n - k);
                    Ok(div(num, den, "inverse Racah coefficient")?
                        * classical_value(Family::Racah, k, l, params, n)?)
                })
                .collect()
        })
        .collect()
}

fn expansion_check(
    name: &str,
    targets: &[MultiPoly],
    basis: &[MultiPoly],
    expected: &Result<Vec<Vec<Rational>>>,
) -> Check {
    Check::from_result(
        name,
        (|| {
            let expected = expected.as_ref().map_err(Clone::clone)?;
            let got = expand_all(targets, basis)?;
            Ok(compare_matrices(("l", "k"), &got, expected))
        })(),
    )
}

fn round_trip_check(forward: &Result<Vec<Vec<Rational>>>, inverse: &Result<Vec<Vec<Rational>>>, n: u32) -> Check {
    Check::from_result(
        "forward then inverse expansion is the identity",
        (|| {
            let f = forward.as_ref().map_err(Clone::clone)?;
            let g = inverse.as_ref().map_err(Clone::clone)?;
            let id = scaled_identity(n as usize + 1, &int(1));
            Ok(compare_matrices(("row", "col"), &mat_mul(f, g), &id))
        })(),
    )
}

/// Both expansions of the Hahn convolution identity, their composition, and
/// the eigen-equations `X v_l = l v_l`, `Y w_l = l(l+λ1+λ2-1) w_l` with
/// `X = x1 d1`, `Y = C'12`.
pub fn verify_hahn_convolution(params: &ParameterSet, n: u32) -> Result<Report> {
    ensure_admissible(params, n, AdmissibilityMode::Hahn)?;
    let mut report = Report::new("hahn-convolution", params, Scope::level(n), 0);
    let (v, w) = hahn_vectors(params, n);
    let vars = VarSet::indexed("x", 2);
    let x = euler_operator(&vars, &[1])?;
    let y = casimir(&[1, 2], params, true)?;
    let s = params.lambda(1) + params.lambda(2);
    report.push(Check::from_result(
        "X v_l = l v_l",
        eigen_failure(&x, &v, |l| int(l as i64), "v"),
    ));
    report.push(Check::from_result(
        "Y w_l = l(l+λ1+λ2-1) w_l",
        eigen_failure(&y, &w, |l| int(l as i64) * (int(l as i64) + &s - int(1)), "w"),
    ));
    let forward = hahn_forward_matrix(params, n);
    let inverse = hahn_inverse_matrix(params, n);
    report.push(expansion_check("w_l expanded in v_k matches the formula", &w, &v, &forward));
    report.push(expansion_check("v_l expanded in w_k matches the formula", &v, &w, &inverse));
    report.push(round_trip_check(&forward, &inverse, n));
    Ok(report)
}

/// Both expansions of the Racah convolution identity, their composition, and
/// the eigen-equations for `X = C'12` on `v_l`, `Y = C'23` on `w_l`, and
/// `C'123` on both with eigenvalue `N(λ1+λ2+λ3+N-1)`.
pub fn verify_racah_convolution(params: &ParameterSet, n: u32) -> Result<Report> {
    ensure_admissible(params, n, AdmissibilityMode::Racah)?;
    let mut report = Report::new("racah-convolution", params, Scope::level(n), 0);
    let (v, w) = racah_vectors(params, n);
    let (l1, l2, l3) = (params.lambda(1), params.lambda(2), params.lambda(3));
    let x = casimir(&[1, 2], params, true)?;
    let y = casimir(&[2, 3], params, true)?;
    let c = casimir(&[1, 2, 3], params, true)?;
    let nn = int(i64::from(n));
    let total = &nn * (l1 + l2 + l3 + &nn - int(1));
    let s12 = l1 + l2;
    let s23 = l2 + l3;
    report.push(Check::from_result(
        "X v_l = l(l+λ1+λ2-1) v_l",
        eigen_failure(&x, &v, |l| int(l as i64) * (int(l as i64) + &s12 - int(1)), "v"),
    ));
    report.push(Check::from_result(
        "Y w_l = l(l+λ2+λ3-1) w_l",
        eigen_failure(&y, &w, |l| int(l as i64) * (int(l as i64) + &s23 - int(1)), "w"),
    ));
    report.push(Check::from_result(
        "C'123 v_l = N(λ1+λ2+λ3+N-1) v_l",
        eigen_failure(&c, &v, |_| total.clone(), "v"),
    ));
    report.push(Check::from_result(
        "C'123 w_l = N(λ1+λ2+λ3+N-1) w_l",
        eigen_failure(&c, &w, |_| total.clone(), "w"),
    ));
    let forward = racah_forward_matrix(params, n);
    let inverse = racah_inverse_matrix(params, n);
    report.push(expansion_check("w_l expanded in v_k matches the formula", &w, &v, &forward));
    report.push(expansion_check("v_l expanded in w_k matches the formula", &v, &w, &inverse));
    report.push(round_trip_check(&forward, &inverse, n));
    Ok(report)
}

/// For `n = 3`, the eigenbases of the schemes `1|2|3 -> 12|3 -> 123` and
/// `1|2|3 -> 1|23 -> 123` at total degree `N`, related by brute-force
/// expansion, against the Racah convolution matrices.
pub fn verify_cross_family(params: &ParameterSet, n: u32) -> Result<Report> {
    ensure_admissible(params, n, AdmissibilityMode::Racah)?;
    let mut report = Report::new("cross-family", params, Scope::level(n), 0);
    let sv: CouplingScheme = "1|2|3 -> 12|3 -> 123".parse()?;
    let sw: CouplingScheme = "1|2|3 -> 1|23 -> 123".parse()?;
    let mut scope = Scope::level(n);
    scope.scheme = Some(format!("{sv} vs {sw}"));
    report.scope = scope;
    let v = (0..=n)
        .map(|l| eigenvector(&sv, &[l, n - l], params))
        .collect::<Result<Vec<_>>>()?;
    let w = (0..=n)
        .map(|l| eigenvector(&sw, &[l, n - l], params))
        .collect::<Result<Vec<_>>>()?;
    report.push(expansion_check(
        "second basis expanded in the first matches the Racah matrix",
        &w,
        &v,
        &racah_forward_matrix(params, n),
    ));
    report.push(expansion_check(
        "first basis expanded in the second matches the inverse Racah matrix",
        &v,
        &w,
        &racah_inverse_matrix(params, n),
    ));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, sample_parameters};
    use crate::polyalg::expand_in_basis;

    #[test]
    fn hahn_small_examples() {
        let p = ParameterSet::parse("1,2").unwrap();
        let (v, w) = hahn_vectors(&p, 1);
        // w0 = x1 + x2 = v0 + v1
        assert_eq!(expand_in_basis(&w[0], &v).unwrap(), vec![int(1), int(1)]);
        // w1 = x2 - 2 x1
        assert_eq!(expand_in_basis(&w[1], &v).unwrap(), vec![int(1), int(-2)]);
        let f = hahn_forward_matrix(&p, 1).unwrap();
        assert_eq!(f[1], vec![int(1), int(-2)]);
    }

    #[test]
    fn hahn_suite_passes() {
        for seed in 0..3 {
            let p = sample_parameters(seed, 2, 5, AdmissibilityMode::Hahn).unwrap();
            for n in 0..=5 {
                let r = verify_hahn_convolution(&p, n).unwrap();
                assert!(r.passed(), "{}", r.to_text());
            }
        }
    }

    #[test]
    fn racah_small_examples() {
        let p = ParameterSet::parse("1,1,1").unwrap();
        let (v, w) = racah_vectors(&p, 0);
        assert_eq!(v[0], w[0]);
        assert_eq!(v[0].constant_term(), int(1));
        let (v, w) = racah_vectors(&p, 1);
        let brute: Vec<Vec<Rational>> = w.iter().map(|t| expand_in_basis(t, &v).unwrap()).collect();
        let formula = racah_forward_matrix(&p, 1).unwrap();
        assert_eq!(brute, formula);
        // R_{1,1} = -1/3 enters the (1,1) coefficient
        let r11 = classical_value(Family::Racah, 1, 1, &p, 1).unwrap();
        assert_eq!(r11, rat(-1, 3));
        // prefactor (λ2)_1 (Λ)_1 / ((λ1)_1 (λ1+λ2)_1) = 3/2
        assert_eq!(formula[1][1], rat(3, 2) * r11);
        assert_eq!(brute[1][1], rat(-1, 2));
    }

    #[test]
    fn racah_suite_passes() {
        for seed in 0..2 {
            let p = sample_parameters(seed, 3, 4, AdmissibilityMode::Racah).unwrap();
            for n in 0..=4 {
                let r = verify_racah_convolution(&p, n).unwrap();
                assert!(r.passed(), "{}", r.to_text());
            }
        }
    }

    #[test]
    fn wrong_parameters_are_detected() {
        // tables built for other parameters must not match the brute force
        let p = ParameterSet::parse("1/2,3/2").unwrap();
        let q = ParameterSet::parse("1/2,5/2").unwrap();
        let (v, w) = hahn_vectors(&p, 3);
        let c = expansion_check("x", &w, &v, &hahn_forward_matrix(&q, 3));
        assert!(!c.pass);
    }

    #[test]
    fn cross_family_passes() {
        let p = ParameterSet::parse("2/3,5/4,3/5").unwrap();
        for n in 0..=3 {
            let r = verify_cross_family(&p, n).unwrap();
            assert!(r.passed(), "{}", r.to_text());
        }
    }
}
