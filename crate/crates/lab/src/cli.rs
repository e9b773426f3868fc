//! The `pgmax` command line.
//!
//! Exit codes: 0 success or certified, 2 exhausted / not found / check
//! failed, 1 usage, IO or guard errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use pgmax_core::bounds::{verify_appendix, BoundId};
use pgmax_core::certifier::certify_loop;
use pgmax_core::group::{audit_abmax, export_cas, export_text, DEFAULT_ORDER_CAP};
use pgmax_core::{AlternatingMap, LinearPowerMap, Mode, PowerMap, Prime, Verdict, DEFAULT_GUARD};
use serde_json::json;

use crate::certfile::{certificate_json, certificate_presentation, parse_certificate};
use crate::experiments::{
    exhaustive_tiny, mixed_surjection, quadratic_search, run_moments, run_no_bad_frequency, verify_lemma_p7,
    verify_lemma_p7_sampling, wedge_lemma_property, DEFAULT_SPACE_CAP,
};
use crate::record::{ExperimentRecord, SCHEMA_VERSION, TOOL_VERSION};
use crate::report::write_bounds_csv;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NOT_FOUND: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "pgmax", version, about = "Sample and certify alternating maps that define ab-maximal and d-maximal p-groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Abmax,
    Dmax,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Abmax => Mode::AbMax,
            ModeArg::Dmax => Mode::DMax,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum BoundArg {
    #[value(name = "A1")]
    A1,
    #[value(name = "A2")]
    A2,
    #[value(name = "A3")]
    A3,
    #[value(name = "A4")]
    A4,
}

impl From<BoundArg> for BoundId {
    fn from(b: BoundArg) -> BoundId {
        match b {
            BoundArg::A1 => BoundId::A1,
            BoundArg::A2 => BoundId::A2,
            BoundArg::A3 => BoundId::A3,
            BoundArg::A4 => BoundId::A4,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Text,
    Cas,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FixedFArg {
    Canonical,
    Mixed,
}

#[derive(Debug, Args)]
pub struct GuardArg {
    /// Maximum number of subspaces one enumeration may visit.
    #[arg(long, env = "PGMAX_GUARD", default_value_t = DEFAULT_GUARD)]
    pub guard: u128,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample maps until one has no bad subspace and write a certificate.
    Certify {
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: usize,
        /// Must equal n-3 (abmax) or n-2 (dmax) if given.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        max_attempts: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        guard: GuardArg,
    },
    /// Evaluate the exact bound inequalities.
    Bounds {
        #[arg(long, value_enum, ignore_case = true)]
        only: Option<BoundArg>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Falling-factorial moments of the number of isotropic 3-spaces.
    Moments {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 3)]
        k_max: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// JSONL trial records.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Summary CSV.
        #[arg(long)]
        summary: Option<PathBuf>,
        /// Add wall-clock timing to the outputs.
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        guard: GuardArg,
    },
    /// Frequency of maps without a bad subspace.
    Frequency {
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Hold a linear F fixed (dmax, odd p).
        #[arg(long, value_enum)]
        fixed_f: Option<FixedFArg>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        summary: Option<PathBuf>,
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        guard: GuardArg,
    },
    /// Exact tables over every alternating map F_p^n x F_p^n -> F_p^m.
    Exhaustive {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = DEFAULT_SPACE_CAP)]
        cap: u64,
        /// JSON table.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Every surjective map F_p^5 ∧ F_p^5 -> F_p^2 has an isotropic 3-space.
    #[command(name = "lemma-p7")]
    LemmaP7 {
        #[arg(long, default_value_t = 2)]
        p: u32,
        /// Samples for p != 2.
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Randomized check of the wedge-sum dimension inequality.
    #[command(name = "wedge-lemma")]
    WedgeLemma {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for quadratic maps F_2^n -> F_2^(n-2) with dim F(H) >= dim H - 1.
    #[command(name = "quad-search")]
    QuadSearch {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        max_attempts: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        guard: GuardArg,
    },
    /// Emit the group presentation of a certificate.
    Present {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Enumerate all subgroups of a small exponent-p group and test ab-maximality.
    Audit {
        /// Certificate whose alternating map defines the group.
        #[arg(long = "in", conflicts_with = "symplectic")]
        input: Option<PathBuf>,
        /// Use the standard symplectic form on F_p^n with m = 1.
        #[arg(long, requires_all = ["p", "n"])]
        symplectic: bool,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_ORDER_CAP)]
        order_cap: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, bytes).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn with_newline(mut s: String) -> Vec<u8> {
    s.push('\n');
    s.into_bytes()
}

fn write_record(rec: &ExperimentRecord, out: Option<&Path>, summary: Option<&Path>) -> anyhow::Result<()> {
    let mut jsonl = Vec::new();
    rec.write_jsonl(&mut jsonl)?;
    if out.is_some() || summary.is_none() {
        emit(out, &jsonl)?;
    }
    if let Some(path) = summary {
        let mut csv_bytes = Vec::new();
        rec.write_summary_csv(&mut csv_bytes)?;
        emit(Some(path), &csv_bytes)?;
    }
    Ok(())
}

fn prime(p: u32) -> anyhow::Result<Prime> {
    Ok(Prime::small(p)?)
}

/// Rejects parameter sets outside the extremal families.
fn validate_certify(mode: Mode, n: usize, m: Option<usize>) -> anyhow::Result<usize> {
    let min_n = match mode {
        Mode::AbMax => 5,
        Mode::DMax => 2,
    };
    if n < min_n {
        bail!("{mode} certification needs n >= {min_n}, got n = {n}");
    }
    let target = n - mode.codim();
    if let Some(m) = m {
        if m != target {
            bail!("{mode} needs m = n - {} = {target}, got m = {m}", mode.codim());
        }
    }
    Ok(target)
}

fn execute(cmd: Command) -> anyhow::Result<i32> {
    match cmd {
        Command::Certify { mode, p, n, m, seed, max_attempts, out, guard } => {
            let mode = Mode::from(mode);
            validate_certify(mode, n, m)?;
            let cert = certify_loop(prime(p)?, n, mode, seed, max_attempts, guard.guard)?;
            emit(out.as_deref(), &with_newline(certificate_json(&cert)))?;
            eprintln!("{} after {} attempt(s)", cert.verdict.as_str(), cert.attempts);
            Ok(if cert.verdict == Verdict::Certified { EXIT_OK } else { EXIT_NOT_FOUND })
        }
        Command::Bounds { only, out } => {
            let report = verify_appendix(only.map(BoundId::from));
            let mut buf = Vec::new();
            write_bounds_csv(&report, &mut buf)?;
            emit(out.as_deref(), &buf)?;
            let all = report.all_pass();
            if let Some(max) = report.max() {
                eprintln!("{} items, max {} at {}({}, {}), all < 1: {all}", report.items.len(), max.approx(), max.id, max.p, max.n);
            }
            Ok(if all { EXIT_OK } else { EXIT_NOT_FOUND })
        }
        Command::Moments { p, n, trials, k_max, seed, out, summary, timings, guard } => {
            let rec = run_moments(prime(p)?, n, trials, k_max, seed, guard.guard, timings)?;
            write_record(&rec, out.as_deref(), summary.as_deref())?;
            Ok(EXIT_OK)
        }
        Command::Frequency { mode, p, n, trials, seed, fixed_f, out, summary, timings, guard } => {
            let mode = Mode::from(mode);
            let q = prime(p)?;
            let f = match fixed_f {
                None => None,
                Some(_) if mode != Mode::DMax || q.is_two() => bail!("--fixed-f needs dmax with odd p"),
                Some(FixedFArg::Canonical) => Some(PowerMap::Linear(LinearPowerMap::canonical(q, n, n.saturating_sub(2))?)),
                Some(FixedFArg::Mixed) => Some(PowerMap::Linear(mixed_surjection(q, n, n.saturating_sub(2), seed)?)),
            };
            let rec = run_no_bad_frequency(q, n, mode, trials, seed, f.as_ref(), guard.guard, timings)?;
            write_record(&rec, out.as_deref(), summary.as_deref())?;
            Ok(EXIT_OK)
        }
        Command::Exhaustive { p, n, m, cap, out } => {
            let t = exhaustive_tiny(prime(p)?, n, m, cap)?;
            let mut text = format!("p={} n={} m={} maps={}\n", p, n, m, t.maps);
            text.push_str("N_3\tmaps\n");
            for (k, v) in &t.n3_distribution {
                text.push_str(&format!("{k}\t{v}\n"));
            }
            text.push_str(&format!("E[N_3] = {} (closed form {})\n", t.mean_n3, t.target_mean));
            text.push_str(&format!("maps without bad subspace: {}\n", t.no_bad_maps));
            text.push_str(&format!("surjective maps: {}\n", t.surjective_maps));
            print!("{text}");
            if let Some(path) = out {
                let mut v = t.to_json();
                v["schema_version"] = json!(SCHEMA_VERSION);
                v["tool_version"] = json!(TOOL_VERSION);
                emit(Some(&path), &with_newline(v.to_string()))?;
            }
            Ok(if t.mean_n3 == t.target_mean { EXIT_OK } else { EXIT_NOT_FOUND })
        }
        Command::LemmaP7 { p, trials, seed, out } => {
            let q = prime(p)?;
            let r = if q.is_two() { verify_lemma_p7()? } else { verify_lemma_p7_sampling(q, trials, seed)? };
            let mut v = r.to_json();
            v["schema_version"] = json!(SCHEMA_VERSION);
            v["tool_version"] = json!(TOOL_VERSION);
            if !r.exhaustive {
                v["seed"] = json!(seed);
            }
            if let Some(path) = out {
                emit(Some(&path), &with_newline(v.to_string()))?;
            }
            println!(
                "{} counterexamples among {} surjective maps ({} scanned{})",
                r.counterexamples,
                r.surjective,
                r.maps,
                if r.exhaustive { ", exhaustive" } else { ", sampled" }
            );
            Ok(if r.holds() { EXIT_OK } else { EXIT_NOT_FOUND })
        }
        Command::WedgeLemma { p, n, k, trials, seed, out } => {
            let q = prime(p)?;
            let r = wedge_lemma_property(q, n, k, trials, seed)?;
            let mut v = r.to_json(q, n, k, seed);
            v["schema_version"] = json!(SCHEMA_VERSION);
            v["tool_version"] = json!(TOOL_VERSION);
            emit(out.as_deref(), &with_newline(v.to_string()))?;
            eprintln!("{} violations in {} trials", r.violations, r.trials);
            Ok(if r.violations == 0 { EXIT_OK } else { EXIT_NOT_FOUND })
        }
        Command::QuadSearch { n, max_attempts, seed, out, guard } => {
            let r = quadratic_search(n, max_attempts, seed, guard.guard)?;
            let v = json!({
                "schema_version": SCHEMA_VERSION,
                "tool_version": TOOL_VERSION,
                "n": n,
                "m": n.saturating_sub(2),
                "seed": seed,
                "max_attempts": max_attempts,
                "attempts": r.attempts,
                "power_coeffs": r.found.as_ref().map(|f| f.coeff().to_rows()),
                "recheck_ok": r.recheck_ok,
            });
            emit(out.as_deref(), &with_newline(v.to_string()))?;
            Ok(if r.found.is_some() && r.recheck_ok { EXIT_OK } else { EXIT_NOT_FOUND })
        }
        Command::Present { input, format, out } => {
            let text = fs::read_to_string(&input).with_context(|| format!("reading {}", input.display()))?;
            let pres = certificate_presentation(&parse_certificate(&text)?)?;
            let body = match format {
                FormatArg::Text => export_text(&pres),
                FormatArg::Cas => export_cas(&pres),
            };
            emit(out.as_deref(), body.as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Audit { input, symplectic, p, n, order_cap, out } => {
            let b = match (input, symplectic) {
                (Some(path), _) => {
                    let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
                    parse_certificate(&text)?.b
                }
                (None, true) => AlternatingMap::symplectic(prime(p.unwrap_or(0))?, n.unwrap_or(0))?,
                (None, false) => bail!("audit needs --in FILE or --symplectic --p P --n N"),
            };
            let r = audit_abmax(&b, order_cap)?;
            let v = json!({
                "schema_version": SCHEMA_VERSION,
                "tool_version": TOOL_VERSION,
                "p": b.prime().get(),
                "n": b.n(),
                "m": b.m(),
                "order": r.order,
                "subgroups": r.subgroup_count,
                "derived_order": r.derived_order,
                "abelianization_index": r.abelianization_index,
                "max_proper_index": r.max_proper_index,
                "ab_maximal": r.ab_maximal,
                "violating_order": r.violating_order,
            });
            emit(out.as_deref(), &with_newline(v.to_string()))?;
            Ok(if r.ab_maximal { EXIT_OK } else { EXIT_NOT_FOUND })
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn certify_validation() {
        assert!(validate_certify(Mode::AbMax, 4, None).is_err());
        assert!(validate_certify(Mode::AbMax, 5, Some(1)).is_err());
        assert_eq!(validate_certify(Mode::AbMax, 5, Some(2)).unwrap(), 2);
        assert_eq!(validate_certify(Mode::DMax, 2, None).unwrap(), 0);
        assert!(validate_certify(Mode::DMax, 1, None).is_err());
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run(["pgmax", "bounds", "--only", "A9"]), EXIT_USAGE);
        assert_eq!(run(["pgmax", "certify", "--mode", "abmax", "--p", "3", "--n", "4"]), EXIT_USAGE);
        assert_eq!(run(["pgmax", "certify", "--mode", "dmax", "--p", "4", "--n", "4"]), EXIT_USAGE);
        assert_eq!(run(["pgmax", "nonsense"]), EXIT_USAGE);
    }
}
