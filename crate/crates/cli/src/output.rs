//! Rendering of command results as text, JSON or CSV.

use std::fmt::Write;

use clap::ValueEnum;
use racah_core::coupling::{CouplingScheme, FamilyKey};
use racah_core::exactnum::{format_rational, Rational};
use racah_core::families::{Family, TransitionTable};
use racah_core::report::Report;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

pub struct Expansion {
    pub family: Family,
    /// `w_l` in the `v` basis when set, `v_l` in the `w` basis otherwise.
    pub forward: bool,
    pub params: Vec<String>,
    pub n: u32,
    pub seed: u64,
    pub v: Vec<String>,
    pub w: Vec<String>,
    /// Row `l` expands the `l`-th target vector.
    pub coefficients: Vec<Vec<Rational>>,
    pub matches_closed_form: bool,
}

pub enum Outcome {
    Reports(Vec<Report>),
    Schemes {
        n: usize,
        schemes: Vec<CouplingScheme>,
        families: Option<Vec<FamilyKey>>,
    },
    Expansion(Expansion),
    Table { table: Box<TransitionTable>, seed: u64 },
}

impl Outcome {
    pub fn passed(&self) -> bool {
        match self {
            Outcome::Reports(rs) => rs.iter().all(Report::passed),
            Outcome::Expansion(e) => e.matches_closed_form,
            Outcome::Schemes { .. } | Outcome::Table { .. } => true,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match (self, format) {
            (Outcome::Reports(rs), f) => reports(rs, f),
            (Outcome::Schemes { n, schemes, families }, f) => scheme_listing(*n, schemes, families.as_deref(), f),
            (Outcome::Expansion(e), f) => expansion(e, f),
            (Outcome::Table { table, seed }, f) => transition(table, *seed, f),
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serialises");
    s.push('\n');
    s
}

fn reports(rs: &[Report], format: Format) -> String {
    match format {
        Format::Text => rs.iter().map(Report::to_text).collect::<Vec<_>>().join("\n"),
        Format::Json if rs.len() == 1 => format!("{}\n", rs[0].to_json()),
        Format::Json => pretty(&serde_json::to_value(rs).expect("reports serialise")),
        Format::Csv => rs.iter().enumerate().map(|(i, r)| r.to_csv(i == 0)).collect(),
    }
}

fn family_text(key: &FamilyKey) -> String {
    key.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn scheme_listing(n: usize, schemes: &[CouplingScheme], families: Option<&[FamilyKey]>, format: Format) -> String {
    let mut s = String::new();
    match format {
        Format::Text => {
            let _ = writeln!(s, "n = {n}: {} schemes", schemes.len());
            for (i, scheme) in schemes.iter().enumerate() {
                let _ = writeln!(s, "{:>4}  {scheme}", i + 1);
            }
            if let Some(fs) = families {
                let _ = writeln!(s, "n = {n}: {} families", fs.len());
                for (i, key) in fs.iter().enumerate() {
                    let _ = writeln!(s, "{:>4}  {{{}}}", i + 1, family_text(key));
                }
            }
        }
        Format::Json => {
            let mut v = json!({
                "n": n,
                "scheme_count": schemes.len(),
                "schemes": schemes.iter().map(ToString::to_string).collect::<Vec<_>>(),
            });
            if let Some(fs) = families {
                v["family_count"] = json!(fs.len());
                v["families"] = json!(fs
                    .iter()
                    .map(|k| k.iter().map(ToString::to_string).collect::<Vec<_>>())
                    .collect::<Vec<_>>());
            }
            s = pretty(&v);
        }
        Format::Csv => {
            s.push_str("kind,index,value\n");
            for (i, scheme) in schemes.iter().enumerate() {
                let _ = writeln!(s, "scheme,{},{scheme}", i + 1);
            }
            for (i, key) in families.unwrap_or_default().iter().enumerate() {
                let _ = writeln!(s, "family,{},{}", i + 1, family_text(key));
            }
        }
    }
    s
}

fn strings(row: &[Rational]) -> Vec<String> {
    row.iter().map(format_rational).collect()
}

fn expansion(e: &Expansion, format: Format) -> String {
    let (target, basis) = if e.forward { ("w", "v") } else { ("v", "w") };
    let mut s = String::new();
    match format {
        Format::Text => {
            let _ = writeln!(s, "family: {}", e.family);
            let _ = writeln!(s, "params: {}", e.params.join(","));
            let _ = writeln!(s, "N: {}", e.n);
            let _ = writeln!(s, "seed: {}", e.seed);
            for (name, vs) in [("v", &e.v), ("w", &e.w)] {
                for (l, p) in vs.iter().enumerate() {
                    let _ = writeln!(s, "{name}_{l} = {p}");
                }
            }
            for (l, row) in e.coefficients.iter().enumerate() {
                let terms: Vec<String> = row
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| **c != Rational::default())
                    .map(|(k, c)| format!("({}) {basis}_{k}", format_rational(c)))
                    .collect();
                let _ = writeln!(s, "{target}_{l} = {}", terms.join(" + "));
            }
            let _ = writeln!(
                s,
                "closed form: {}",
                if e.matches_closed_form { "match" } else { "MISMATCH" }
            );
        }
        Format::Json => {
            s = pretty(&json!({
                "family": e.family.to_string(),
                "direction": if e.forward { "forward" } else { "inverse" },
                "params": e.params,
                "N": e.n,
                "seed": e.seed,
                "v": e.v,
                "w": e.w,
                "coefficients": e.coefficients.iter().map(|r| strings(r)).collect::<Vec<_>>(),
                "matches_closed_form": e.matches_closed_form,
            }));
        }
        Format::Csv => {
            let _ = writeln!(s, "{target},{basis},coefficient");
            for (l, row) in e.coefficients.iter().enumerate() {
                for (k, c) in row.iter().enumerate() {
                    let _ = writeln!(s, "{l},{k},{}", format_rational(c));
                }
            }
        }
    }
    s
}

fn grid(s: &mut String, name: &str, m: &[Vec<Rational>]) {
    let cells: Vec<Vec<String>> = m.iter().map(|r| strings(r)).collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
    let _ = writeln!(s, "{name}:");
    for row in cells {
        let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        let _ = writeln!(s, "  {}", line.join("  "));
    }
}

fn transition(t: &TransitionTable, seed: u64, format: Format) -> String {
    let mut s = String::new();
    match format {
        Format::Text => {
            let _ = writeln!(s, "family: {}", t.family);
            let _ = writeln!(s, "params: {}", t.params);
            let _ = writeln!(s, "N: {}", t.n);
            let _ = writeln!(s, "seed: {seed}");
            grid(&mut s, "values[k][l]", &t.values);
            grid(&mut s, "tilde[k][l]", &t.tilde);
            let _ = writeln!(s, "bd: {}", strings(&t.bd).join(", "));
            let _ = writeln!(s, "ac: {}", strings(&t.ac).join(", "));
            let _ = writeln!(s, "gamma: {}", format_rational(&t.gamma));
        }
        Format::Json => {
            let mut v = serde_json::to_value(t).expect("table serialises");
            v["seed"] = json!(seed);
            s = pretty(&v);
        }
        Format::Csv => {
            s.push_str("table,k,l,value\n");
            for (name, m) in [("values", &t.values), ("tilde", &t.tilde)] {
                for (k, row) in m.iter().enumerate() {
                    for (l, c) in row.iter().enumerate() {
                        let _ = writeln!(s, "{name},{k},{l},{}", format_rational(c));
                    }
                }
            }
            for (l, c) in t.bd.iter().enumerate() {
                let _ = writeln!(s, "bd,,{l},{}", format_rational(c));
            }
            for (k, c) in t.ac.iter().enumerate() {
                let _ = writeln!(s, "ac,{k},,{}", format_rational(c));
            }
            let _ = writeln!(s, "gamma,,,{}", format_rational(&t.gamma));
        }
    }
    s
}
