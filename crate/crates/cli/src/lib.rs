//! Command-line front end for the `circulant` library.
//!
//! Exit codes: 0 success or resolved verdict, 2 usage error, 3 Unresolved
//! verdict, 4 fixture mismatch, 1 any other failure.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use circulant::fixtures::{load_fixtures, verify_fixtures, VerifyReport, EXPECTED_FIXTURES};
use circulant::oracle::DEFAULT_BUDGET;
use circulant::{
    adam_orbit, brute_force_iso, classify, enumerate_type2, family_8n, family_np3, theta_image, theta_permutation,
    verify_family_8n, verify_family_np3, CirculantGraph, EnumerationReport, JumpSet, ThetaParams, Verdict,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_UNRESOLVED: u8 = 3;
pub const EXIT_MISMATCH: u8 = 4;

/// Parsed command line. Serializable so a run can be recorded and replayed.
#[derive(Debug, Clone, PartialEq, Eq, Parser, Serialize, Deserialize)]
#[command(name = "circulant", version, about = "Type-1 and Type-2 isomorphism of circulant graphs")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Theorem {
    /// Pairs on Z_{8n} with m = 2.
    #[value(name = "8n")]
    #[serde(rename = "8n")]
    EightN,
    /// p-cycles on Z_{np^3} with m = p.
    Np3,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand, Serialize, Deserialize)]
pub enum Command {
    /// Classify C_n(R) against C_n(S): Identical, Type1, Type2 or Unresolved.
    Classify {
        #[arg(long)]
        n: u32,
        /// Comma-separated jumps of R.
        #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
        r: Vec<i64>,
        /// Comma-separated jumps of S.
        #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
        s: Vec<i64>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Print the Adám orbit of R.
    Orbit {
        #[arg(long)]
        n: u32,
        #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
        r: Vec<i64>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Apply theta_{n,m,t} to C_n(R).
    Theta {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        t: u32,
        #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
        r: Vec<i64>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Enumerate all Type-2 classes of k-element jump sets over Z_n.
    Enumerate {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: usize,
        /// Worker threads; 0 uses all cores. Output does not depend on it.
        #[arg(long, default_value_t = 0)]
        workers: usize,
        /// Write the report here and print only the summary.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Verify one of the infinite Type-2 families over a parameter range.
    Families {
        #[arg(long, value_enum)]
        theorem: Theorem,
        #[arg(long, default_value_t = 12)]
        n_max: u32,
        /// Prime for the np3 family.
        #[arg(long, default_value_t = 3)]
        p: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check the bundled fixtures and print the typo appendix.
    VerifyPaper {
        #[arg(long, default_value_os_t = default_fixture_dir())]
        fixtures: PathBuf,
        /// Restrict to fixtures of this order.
        #[arg(long)]
        only: Option<u32>,
        #[arg(long, default_value_t = 0)]
        workers: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Decide isomorphism independently by refinement search.
    Oracle {
        #[arg(long)]
        n: u32,
        #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
        r: Vec<i64>,
        #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
        s: Vec<i64>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

pub fn default_fixture_dir() -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures"))
}

/// A failed run and the exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }

    fn failure(message: impl Into<String>) -> Self {
        Self { code: EXIT_FAILURE, message: message.into() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::failure(e.to_string())
    }
}

fn jumps(flag: &str, n: u32, values: &[i64]) -> Result<JumpSet, CliError> {
    JumpSet::new(n, values).map_err(|e| CliError::usage(format!("--{flag}: {e}")))
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

/// Execute a parsed command, writing its output to `out`. Returns the exit code.
pub fn run(config: &RunConfig, out: &mut dyn Write) -> Result<u8, CliError> {
    match &config.command {
        Command::Classify { n, r, s, format } => {
            let (r, s) = (jumps("r", *n, r)?, jumps("s", *n, s)?);
            let record = classify(&r, &s).map_err(|e| CliError::usage(e.to_string()))?;
            let text = match format {
                Format::Json => json(&record),
                _ => format!("{} {} {}\n", record.r, record.s, verdict_line(&record.verdict)),
            };
            out.write_all(text.as_bytes())?;
            Ok(if record.verdict == Verdict::Unresolved { EXIT_UNRESOLVED } else { EXIT_OK })
        }
        Command::Orbit { n, r, format } => {
            let orbit = adam_orbit(&jumps("r", *n, r)?);
            let text = match format {
                Format::Json => json(&orbit),
                _ => orbit.members().iter().map(|m| format!("{m}\n")).collect(),
            };
            out.write_all(text.as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Theta { n, m, t, r, format } => {
            let r = jumps("r", *n, r)?;
            let p = ThetaParams::new(*n, *m, *t).map_err(|e| CliError::usage(e.to_string()))?;
            let image = theta_image(&r, &p).ok();
            let text = match format {
                Format::Json => json(&ThetaOutput { params: p, r: &r, image: image.as_ref(), permutation: theta_permutation(&p).as_slice() }),
                _ => match &image {
                    Some(s) => format!("{s}\n"),
                    None => "not circulant\n".into(),
                },
            };
            out.write_all(text.as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Enumerate { n, k, workers, out: path, format } => {
            let report = enumerate_type2(*n, *k, *workers).map_err(|e| CliError::usage(e.to_string()))?;
            eprintln!("enumeration finished in {} ms", report.elapsed_ms);
            let artifact = match format {
                Format::Json => json(&report),
                Format::Csv => csv_report(&report)?,
                Format::Text => format!("{}{}", summary(&report), class_table(&report)),
            };
            match path {
                Some(p) => {
                    std::fs::write(p, artifact)?;
                    out.write_all(summary(&report).as_bytes())?;
                }
                None => out.write_all(artifact.as_bytes())?,
            }
            Ok(EXIT_OK)
        }
        Command::Families { theorem, n_max, p, format } => families(*theorem, *n_max, *p, *format, out),
        Command::VerifyPaper { fixtures, only, workers, format } => {
            let names: Vec<&str> = EXPECTED_FIXTURES
                .iter()
                .copied()
                .filter(|name| only.is_none_or(|n| name.starts_with(&format!("n{n}-"))))
                .collect();
            if names.is_empty() {
                return Err(CliError::usage(format!("--only: no fixtures for order {}", only.unwrap_or(0))));
            }
            let files = load_fixtures(fixtures, &names).map_err(|e| CliError::usage(e.to_string()))?;
            let report = verify_fixtures(&files, *workers).map_err(|e| CliError::failure(e.to_string()))?;
            let text = match format {
                Format::Json => json(&report),
                _ => verify_text(&report),
            };
            out.write_all(text.as_bytes())?;
            Ok(if report.passed() { EXIT_OK } else { EXIT_MISMATCH })
        }
        Command::Oracle { n, r, s, budget, format } => {
            let a = CirculantGraph::from_jumps(jumps("r", *n, r)?);
            let b = CirculantGraph::from_jumps(jumps("s", *n, s)?);
            let verdict = brute_force_iso(&a, &b, *budget);
            let text = match format {
                Format::Json => json(&verdict),
                _ => match &verdict {
                    circulant::OracleVerdict::Isomorphic { .. } => "isomorphic\n".to_string(),
                    circulant::OracleVerdict::NonIsomorphic { distinguisher } => format!("non-isomorphic ({distinguisher:?})\n"),
                    circulant::OracleVerdict::Timeout { expansions } => format!("timeout after {expansions} expansions\n"),
                },
            };
            out.write_all(text.as_bytes())?;
            Ok(EXIT_OK)
        }
    }
}

#[derive(Serialize)]
struct ThetaOutput<'a> {
    params: ThetaParams,
    r: &'a JumpSet,
    /// `null` when the image is not circulant in the natural labelling.
    image: Option<&'a JumpSet>,
    permutation: &'a [u32],
}

fn verdict_line(v: &Verdict) -> String {
    match v {
        Verdict::Identical => "Identical".into(),
        Verdict::Type1 { x } => format!("Type1 x={x}"),
        Verdict::Type2 { m, t, .. } => format!("Type2 m={m} t={t}"),
        Verdict::Unresolved => "Unresolved".into(),
    }
}

/// Deterministic summary block of an enumeration.
pub fn summary(r: &EnumerationReport) -> String {
    let m: Vec<String> = r.m_values.iter().map(u32::to_string).collect();
    let mut s = String::new();
    let _ = writeln!(s, "n: {}", r.n);
    let _ = writeln!(s, "k: {}", r.k);
    let _ = writeln!(s, "jump sets: {}", r.jumpset_count);
    let _ = writeln!(s, "orbits: {}", r.orbit_count);
    let _ = writeln!(s, "pairs: {}", r.pair_count);
    let _ = writeln!(s, "triples: {}", r.triple_count);
    let _ = writeln!(s, "larger classes: {}", r.larger_class_count);
    let _ = writeln!(s, "orbit-level classes: {}", r.orbit_class_count);
    let _ = writeln!(s, "m values: {}", if m.is_empty() { "-".into() } else { m.join(",") });
    s
}

fn class_table(r: &EnumerationReport) -> String {
    let mut s = String::new();
    for c in &r.classes {
        let members: Vec<String> = c.members.iter().map(ToString::to_string).collect();
        let first = c.leading_link();
        let _ = writeln!(s, "{}  m={} t={}", members.join(" ~ "), first.m, first.t);
    }
    s
}

fn space_separated(js: &JumpSet) -> String {
    js.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(" ")
}

/// One row per class: `n, memberA, memberB, memberC, m, t`. Members are
/// space-separated jump lists; `memberC` is empty for pairs and holds every
/// member from the third on, `;`-separated; `m, t` are the least link leaving
/// `memberA`.
pub fn csv_report(r: &EnumerationReport) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let fail = |e: csv::Error| CliError::failure(e.to_string());
    w.write_record(["n", "memberA", "memberB", "memberC", "m", "t"]).map_err(fail)?;
    for c in &r.classes {
        let link = c.leading_link();
        let member = |i: usize| c.members.get(i).map(space_separated).unwrap_or_default();
        // Members past the third share the last column, `;`-separated.
        let rest: Vec<String> = c.members.iter().skip(2).map(space_separated).collect();
        w.write_record([r.n.to_string(), member(0), member(1), rest.join(";"), link.m.to_string(), link.t.to_string()])
            .map_err(fail)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::failure(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[derive(Serialize)]
struct FamilyRow {
    n: u32,
    s: u32,
    jumps: Vec<JumpSet>,
    status: &'static str,
}

fn families(theorem: Theorem, n_max: u32, p: u32, format: Format, out: &mut dyn Write) -> Result<u8, CliError> {
    let mut rows = Vec::new();
    match theorem {
        Theorem::EightN => {
            for n in 2..=n_max {
                for s in 1..=n {
                    let inst = family_8n(n, s).map_err(|e| CliError::usage(e.to_string()))?;
                    let status = match (verify_family_8n(&inst), inst.is_degenerate()) {
                        (false, _) => "FAIL",
                        (true, true) => "identical",
                        (true, false) => "pass",
                    };
                    rows.push(FamilyRow { n, s, jumps: vec![inst.source, inst.target], status });
                }
            }
        }
        Theorem::Np3 => {
            for n in 1..=n_max {
                for x in 1..p {
                    for y in 0..n * p {
                        if x + y * p > n * p * p - 1 {
                            continue;
                        }
                        let ok = verify_family_np3(n, p, x, y).map_err(|e| CliError::usage(e.to_string()))?;
                        let jumps = (1..=p)
                            .map(|i| family_np3(n, p, x, y, i).map(|f| f.jumps))
                            .collect::<circulant::Result<Vec<_>>>()
                            .map_err(|e| CliError::usage(e.to_string()))?;
                        // `s` carries x + yp, the family's free parameter.
                        rows.push(FamilyRow { n, s: x + y * p, jumps, status: if ok { "pass" } else { "FAIL" } });
                    }
                }
            }
        }
    }
    let text = match format {
        Format::Json => json(&rows),
        _ => {
            let mut s = String::new();
            for row in &rows {
                let sets: Vec<String> = row.jumps.iter().map(ToString::to_string).collect();
                let _ = writeln!(s, "n={:<3} s={:<3} {:<9} {}", row.n, row.s, row.status, sets.join(" "));
            }
            let failed = rows.iter().filter(|r| r.status == "FAIL").count();
            let _ = writeln!(s, "instances: {}  failures: {failed}", rows.len());
            s
        }
    };
    out.write_all(text.as_bytes())?;
    Ok(if rows.iter().any(|r| r.status == "FAIL") { EXIT_FAILURE } else { EXIT_OK })
}

/// Human-readable verification report with the typo appendix.
pub fn verify_text(r: &VerifyReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "fixtures:");
    for f in &r.files {
        let status = if f.failures.is_empty() { "ok" } else { "MISMATCH" };
        let _ = writeln!(
            s,
            "  {:<22} {:<7} regenerated={:<4} printed={:<4} {status}",
            f.name,
            format!("{:?}", f.kind).to_lowercase(),
            f.regenerated_entries,
            f.printed_entries
        );
        for fail in &f.failures {
            let _ = writeln!(s, "    ({}) {}", fail.label, fail.issue);
        }
    }
    let _ = writeln!(s, "cross-checks:");
    for c in &r.cross_checks {
        let d = &c.diff;
        let _ = writeln!(
            s,
            "  n={} k={} pairs={} triples={} matching={} fixture-only={} enumeration-only={} m-mismatches={}",
            c.n,
            c.k,
            c.pair_count,
            c.triple_count,
            d.matching.len(),
            d.fixture_only.len(),
            d.enumeration_only.len(),
            d.m_mismatches.len()
        );
    }
    let _ = writeln!(s, "typo appendix ({} entries):", r.typo_appendix.len());
    for t in &r.typo_appendix {
        let _ = writeln!(s, "  {} ({}): {}", t.file, t.label, t.issue);
    }
    let _ = writeln!(s, "result: {}", if r.passed() { "pass" } else { "MISMATCH" });
    s
}
