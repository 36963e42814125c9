//! Subcommand dispatch. Every command resolves its parameters (checking
//! admissibility) before doing any work.

use std::time::Instant;

use racah_core::coupling::{dedupe_families, enumerate_schemes, CouplingScheme};
use racah_core::exactnum::AdmissibilityMode;
use racah_core::families::{transition_table, Family};
use racah_core::polyalg::{expand_in_basis, MultiPoly};
use racah_core::report::Report;
use racah_core::verify::{
    hahn_forward_matrix, hahn_inverse_matrix, hahn_vectors, racah_forward_matrix,
    racah_inverse_matrix, racah_vectors, verify_conjugation, verify_counting, verify_cross_family,
    verify_gamma_sums, verify_hahn_algebra, verify_hahn_convolution, verify_orthogonality,
    verify_racah_algebra, verify_racah_convolution, verify_scheme, verify_tridiagonal, Side,
};
use racah_core::Result;

use crate::output::{Expansion, Outcome};
use crate::{Command, Direction, EigencheckArgs, ExpandArgs, FamilyArg, Level, SchemesCommand, SideArg, Suite, TableArgs, VerifyArgs};

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Hahn => Family::Hahn,
            FamilyArg::Racah => Family::Racah,
        }
    }
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Self {
        match s {
            SideArg::HahnX => Side::HahnX,
            SideArg::HahnY => Side::HahnY,
            SideArg::RacahX => Side::RacahX,
            SideArg::RacahY => Side::RacahY,
        }
    }
}

fn arity(family: Family) -> usize {
    match family {
        Family::Hahn => 2,
        Family::Racah => 3,
    }
}

/// Runs `f`, stamping the seed and, with `timing`, the elapsed time.
fn timed(seed: u64, timing: bool, f: impl FnOnce() -> Result<Report>) -> Result<Report> {
    let start = Instant::now();
    let mut report = f()?;
    report.seed = seed;
    if timing {
        report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(report)
}

pub fn run(command: &Command, timing: bool) -> Result<Outcome> {
    match command {
        Command::Verify(args) => verify(args, timing),
        Command::Schemes(SchemesCommand::Enumerate { arity, dedupe }) => {
            let schemes = enumerate_schemes(*arity)?;
            let families = dedupe.then(|| dedupe_families(&schemes));
            Ok(Outcome::Schemes {
                n: *arity,
                schemes,
                families,
            })
        }
        Command::Schemes(SchemesCommand::Eigencheck(args)) => eigencheck(args, timing),
        Command::Expand(args) => expand(args),
        Command::Table(args) => table(args),
    }
}

fn verify(args: &VerifyArgs, timing: bool) -> Result<Outcome> {
    let lv = &args.level;
    let (n, seed) = (lv.n, lv.seed);
    let family = Family::from(args.family);
    let reports = match args.suite {
        Suite::HahnAlgebra => {
            let p = lv.resolve(2, n, AdmissibilityMode::Hahn)?;
            vec![timed(seed, timing, || verify_hahn_algebra(&p, n, lv.d))?]
        }
        Suite::RacahAlgebra => {
            let p = lv.resolve(3, n, AdmissibilityMode::Racah)?;
            vec![timed(seed, timing, || verify_racah_algebra(&p, n, lv.d))?]
        }
        Suite::HahnConvolution => {
            let p = lv.resolve(2, n, AdmissibilityMode::Hahn)?;
            vec![timed(seed, timing, || verify_hahn_convolution(&p, n))?]
        }
        Suite::RacahConvolution => {
            let p = lv.resolve(3, n, AdmissibilityMode::Racah)?;
            vec![timed(seed, timing, || verify_racah_convolution(&p, n))?]
        }
        Suite::CrossFamily => {
            let p = lv.resolve(3, n, AdmissibilityMode::Racah)?;
            vec![timed(seed, timing, || verify_cross_family(&p, n))?]
        }
        Suite::Orthogonality => {
            let p = lv.resolve(arity(family), n, family.mode())?;
            vec![timed(seed, timing, || verify_orthogonality(family, &p, n))?]
        }
        Suite::GammaSums => {
            let p = lv.resolve(arity(family), n, family.mode())?;
            vec![timed(seed, timing, || verify_gamma_sums(family, &p, n))?]
        }
        Suite::Tridiagonal => {
            let sides = match args.side {
                Some(s) => vec![Side::from(s)],
                None => Side::of_family(family).to_vec(),
            };
            let family = sides[0].family();
            let p = lv.resolve(arity(family), n, family.mode())?;
            sides
                .into_iter()
                .map(|side| timed(seed, timing, || verify_tridiagonal(&p, n, side)))
                .collect::<Result<_>>()?
        }
        Suite::Conjugation => {
            // level 0 excludes nothing; the identities hold for all (α, β)
            let p = lv.resolve(2, 0, AdmissibilityMode::Hahn)?;
            vec![timed(seed, timing, || verify_conjugation(&p, lv.d))?]
        }
        Suite::Counting => vec![timed(seed, timing, || verify_counting(args.max_n))?],
    };
    Ok(Outcome::Reports(reports))
}

fn eigencheck(args: &EigencheckArgs, timing: bool) -> Result<Outcome> {
    let schemes = match &args.scheme {
        Some(s) => vec![s.parse::<CouplingScheme>()?],
        None => enumerate_schemes(args.arity)?,
    };
    let lv = &args.level;
    let bound = lv.d.max(lv.k);
    let p = lv.resolve(schemes[0].n(), bound, AdmissibilityMode::HigherRank { degree: bound })?;
    let reports = schemes
        .iter()
        .map(|s| timed(lv.seed, timing, || verify_scheme(s, &p, lv.d, lv.k)))
        .collect::<Result<_>>()?;
    Ok(Outcome::Reports(reports))
}

fn expand(args: &ExpandArgs) -> Result<Outcome> {
    let family = Family::from(args.family);
    let lv: &Level = &args.level;
    let n = lv.n;
    let p = lv.resolve(arity(family), n, family.mode())?;
    let (v, w) = match family {
        Family::Hahn => hahn_vectors(&p, n),
        Family::Racah => racah_vectors(&p, n),
    };
    let closed_form = match (family, args.direction) {
        (Family::Hahn, Direction::Forward) => hahn_forward_matrix(&p, n)?,
        (Family::Hahn, Direction::Inverse) => hahn_inverse_matrix(&p, n)?,
        (Family::Racah, Direction::Forward) => racah_forward_matrix(&p, n)?,
        (Family::Racah, Direction::Inverse) => racah_inverse_matrix(&p, n)?,
    };
    let (targets, basis): (&[MultiPoly], &[MultiPoly]) = match args.direction {
        Direction::Forward => (&w, &v),
        Direction::Inverse => (&v, &w),
    };
    let coefficients = targets
        .iter()
        .map(|t| expand_in_basis(t, basis))
        .collect::<Result<Vec<_>>>()?;
    Ok(Outcome::Expansion(Expansion {
        family,
        forward: args.direction == Direction::Forward,
        params: p.to_strings(),
        n,
        seed: lv.seed,
        v: v.iter().map(ToString::to_string).collect(),
        w: w.iter().map(ToString::to_string).collect(),
        matches_closed_form: coefficients == closed_form,
        coefficients,
    }))
}

fn table(args: &TableArgs) -> Result<Outcome> {
    let family = Family::from(args.family);
    let lv = &args.level;
    let p = lv.resolve(arity(family), lv.n, family.mode())?;
    Ok(Outcome::Table {
        table: Box::new(transition_table(family, &p, lv.n)?),
        seed: lv.seed,
    })
}
