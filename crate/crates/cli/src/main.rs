//! `ccode`: build and check 3-D constacyclic codes from JSON spec files.
//!
//! Exit codes: 0 success or verdict true, 1 verdict false, 2 invalid input,
//! 3 search budget exhausted.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use constacyclic3d::distance::{SearchLimits, DEFAULT_BUDGET};
use constacyclic3d::format::{export_cas_script, export_csv, ResultFile, SpecFile};
use constacyclic3d::idempotents::build_constacyclic_idempotents;
use constacyclic3d::poly::{factor_binomial, monic_divisors};
use constacyclic3d::sweep::{
    admitted_sign_rings, duality_sweep, exclusion_rings, factorized_sweep, grid_count,
};
use constacyclic3d::verify::{all_passed, seed_from_env, verify_spec};
use constacyclic3d::{
    build_code, build_dual, min_distance, quasi_twisted_closure, self_dual_decide, BuiltCode,
    CodeSpec, Error, PrimeField, RingParams,
};

const OK: u8 = 0;
const VERDICT_FALSE: u8 = 1;
const INVALID: u8 = 2;
const BUDGET: u8 = 3;

/// Grids up to this many are swept code by code; larger ones are factorized.
const DIRECT_SWEEP_LIMIT: u128 = 4096;

#[derive(Parser)]
#[command(
    name = "ccode",
    version,
    about = "3-D (alpha, beta, gamma)-constacyclic codes over F_q"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the idempotents of F_q[z]/<z^k - gamma>.
    Idempotents {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        k: usize,
        #[arg(long, allow_negative_numbers = true)]
        gamma: i64,
    },
    /// Factor x^s - alpha over F_q.
    Factor {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        s: usize,
        #[arg(long, allow_negative_numbers = true)]
        alpha: i64,
    },
    /// Build the generator matrix.
    Build(SpecArgs),
    /// Build the dual code's generator matrix H.
    Dual(SpecArgs),
    /// Decide self-duality from the divisor grid.
    Selfdual(SpecArgs),
    /// Compute the minimum distance.
    Mindist {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        max_weight: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Run every invariant check on a spec.
    Verify(SpecArgs),
    /// Export G (and H) for external tools.
    Export {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value_t = ExportFormat::CasScript)]
        format: ExportFormat,
    },
    /// Sweep every divisor grid of the given rings.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct SpecArgs {
    /// JSON spec file.
    #[arg(long)]
    spec: PathBuf,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print a human-readable summary on stderr.
    #[arg(long, short)]
    verbose: bool,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    q: u64,
    #[arg(long, required_unless_present = "exclusion")]
    s: Option<usize>,
    #[arg(long, required_unless_present = "exclusion")]
    l: Option<usize>,
    #[arg(long, required_unless_present = "exclusion")]
    k: Option<usize>,
    /// Restrict to one sign choice; all three must be given together.
    #[arg(long, allow_negative_numbers = true, requires_all = ["beta", "gamma"])]
    alpha: Option<i64>,
    #[arg(long, allow_negative_numbers = true, requires_all = ["alpha", "gamma"])]
    beta: Option<i64>,
    #[arg(long, allow_negative_numbers = true, requires_all = ["alpha", "beta"])]
    gamma: Option<i64>,
    /// Scan beta = gamma = 1, gcd(s, q) = 1 rings with s, l, k <= --max-len.
    #[arg(long, conflicts_with_all = ["s", "l", "k", "alpha", "beta", "gamma"])]
    exclusion: bool,
    #[arg(long, default_value_t = 4)]
    max_len: usize,
    #[arg(long, value_enum, default_value_t = SweepFormat::Text)]
    format: SweepFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportFormat {
    Csv,
    CasScript,
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepFormat {
    Text,
    Json,
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => match io::stdout().lock().write_all(text.as_bytes()) {
            Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e).context("writing stdout"),
            _ => Ok(()),
        },
    }
}

fn load(path: &Path) -> Result<CodeSpec> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(SpecFile::from_json(&text)?.to_code_spec()?)
}

fn field(q: u64) -> Result<PrimeField> {
    Ok(PrimeField::new(q)?)
}

fn cmd_idempotents(q: u64, k: usize, gamma: i64) -> Result<u8> {
    let f = field(q)?;
    let fam = build_constacyclic_idempotents(f, k, f.reduce(gamma))?;
    let mut text = format!(
        "z^{k} - ({}) over F_{q}: omega = {}, r = {}\n",
        f.signed(fam.gamma),
        fam.omega,
        fam.r
    );
    for (t, (m, root)) in fam.members.iter().zip(&fam.roots).enumerate() {
        text += &format!(
            "zeta_{t}(z) = {} = {}   (1 at z = {root})\n",
            m.render("z", true),
            m.render("z", false)
        );
    }
    emit(None, &text)?;
    Ok(OK)
}

fn cmd_factor(q: u64, s: usize, alpha: i64) -> Result<u8> {
    let f = field(q)?;
    let a = f.reduce(alpha);
    let factors = factor_binomial(f, s, a)?;
    let mut text = format!("x^{s} - ({}) over F_{q}:\n", f.signed(a));
    for (p, m) in &factors {
        text += &format!("  ({})^{m}\n", p.render("x", true));
    }
    text += &format!("{} monic divisors\n", monic_divisors(f, s, a)?.len());
    emit(None, &text)?;
    Ok(OK)
}

fn summary(code: &BuiltCode) -> String {
    let r = code.spec.ring();
    format!(
        "F_{} (s, l, k) = ({}, {}, {}), (alpha, beta, gamma) = ({}, {}, {}): [{}, {}]",
        r.field.modulus(),
        r.s,
        r.l,
        r.k,
        r.field.signed(r.alpha),
        r.field.signed(r.beta),
        r.field.signed(r.gamma),
        code.spec.length(),
        code.dimension
    )
}

fn cmd_build(args: &SpecArgs) -> Result<u8> {
    let code = build_code(&load(&args.spec)?);
    let mut result = ResultFile::from_code(&code);
    let qt = quasi_twisted_closure(&code);
    result.verdicts.quasi_twisted = Some(qt);
    if args.verbose {
        eprintln!(
            "{}; quasi-twisted x {} y {} z {}",
            summary(&code),
            qt.x,
            qt.y,
            qt.z
        );
    }
    emit(args.out.as_deref(), &result.to_json())?;
    Ok(OK)
}

fn cmd_dual(args: &SpecArgs) -> Result<u8> {
    let spec = load(&args.spec)?;
    let code = build_code(&spec);
    let h = match build_dual(&spec) {
        Ok(d) => d.h,
        Err(e @ Error::DualUnsupported { .. }) => {
            eprintln!("note: {e}");
            code.g.null_space()
        }
        Err(e) => return Err(e.into()),
    };
    if args.verbose {
        eprintln!("{}; H has {} rows", summary(&code), h.rows());
    }
    let mut result = ResultFile::from_code(&code);
    result.h = Some(h.row_vecs());
    emit(args.out.as_deref(), &result.to_json())?;
    Ok(OK)
}

fn cmd_selfdual(args: &SpecArgs) -> Result<u8> {
    let spec = load(&args.spec)?;
    let decision = self_dual_decide(&spec)?;
    let code = build_code(&spec);
    if args.verbose {
        eprintln!(
            "{}; self-dual: {} (direct check {})",
            summary(&code),
            decision.verdict,
            decision.direct_verdict
        );
        if !decision.dimension_condition {
            eprintln!(
                "dimension condition fails: n = {}, 2 sum deg p = {}",
                spec.length(),
                2 * spec.degree_sum()
            );
        }
        if let Some(cell) = decision.failing_cell() {
            eprintln!("first failing cell: {cell}");
        }
    }
    if !decision.agrees() {
        eprintln!("warning: criterion and direct check disagree");
    }
    let verdict = decision.verdict;
    let mut result = ResultFile::from_code(&code);
    result.verdicts.self_dual = Some(verdict);
    result.verdicts.self_dual_certificate = Some(decision);
    emit(args.out.as_deref(), &result.to_json())?;
    Ok(if verdict { OK } else { VERDICT_FALSE })
}

fn cmd_mindist(
    args: &SpecArgs,
    max_weight: Option<usize>,
    budget: u128,
    jobs: usize,
) -> Result<u8> {
    let code = build_code(&load(&args.spec)?);
    let d = min_distance(
        &code,
        SearchLimits {
            max_weight,
            budget,
            jobs,
        },
    )?;
    if args.verbose {
        let kind = if d.exact { "d =" } else { "d >=" };
        eprintln!(
            "{}; {kind} {} (weights up to {} cleared)",
            summary(&code),
            d.d,
            d.weight_checked
        );
    }
    let exact = d.exact;
    let mut result = ResultFile::from_code(&code);
    result.distance = Some(d);
    emit(args.out.as_deref(), &result.to_json())?;
    Ok(if exact { OK } else { BUDGET })
}

fn cmd_verify(args: &SpecArgs) -> Result<u8> {
    let spec = load(&args.spec)?;
    let checks = verify_spec(&spec, seed_from_env());
    for c in &checks {
        eprintln!("{c}");
    }
    let passed = all_passed(&checks);
    let mut result = ResultFile::from_code(&build_code(&spec));
    result.checks = Some(checks);
    emit(args.out.as_deref(), &result.to_json())?;
    Ok(if passed { OK } else { VERDICT_FALSE })
}

fn cmd_export(args: &SpecArgs, format: ExportFormat) -> Result<u8> {
    let spec = load(&args.spec)?;
    let code = build_code(&spec);
    let text = match format {
        ExportFormat::Csv => export_csv(&code, build_dual(&spec).ok().map(|d| d.h).as_ref())?,
        ExportFormat::CasScript => export_cas_script(&code)?,
    };
    if args.verbose {
        eprintln!("{}", summary(&code));
    }
    emit(args.out.as_deref(), &text)?;
    Ok(OK)
}

fn sweep_rings(args: &SweepArgs) -> Result<Vec<RingParams>> {
    let f = field(args.q)?;
    if args.exclusion {
        return Ok(exclusion_rings(args.q, args.max_len)?);
    }
    let (s, l, k) = (
        args.s.unwrap_or(1),
        args.l.unwrap_or(1),
        args.k.unwrap_or(1),
    );
    Ok(match (args.alpha, args.beta, args.gamma) {
        (Some(a), Some(b), Some(c)) => {
            vec![RingParams::new(
                f,
                (s, l, k),
                (f.reduce(a), f.reduce(b), f.reduce(c)),
            )?]
        }
        _ => admitted_sign_rings(f, s, l, k),
    })
}

#[derive(serde::Serialize)]
struct SweepLine {
    ring: RingParams,
    method: &'static str,
    grids: u128,
    self_dual: u128,
    disagreements: u128,
    divisibility_without_dimension: u128,
    structure_ok: bool,
}

fn cmd_sweep(args: &SweepArgs) -> Result<u8> {
    let rings = sweep_rings(args)?;
    if rings.is_empty() {
        anyhow::bail!("no ring with constants in {{1, -1}} has the required idempotents");
    }
    let mut lines = Vec::new();
    for r in &rings {
        let line = if grid_count(r)? <= DIRECT_SWEEP_LIMIT {
            let rep = duality_sweep(r)?;
            SweepLine {
                ring: *r,
                method: "direct",
                grids: rep.specs as u128,
                self_dual: rep.self_dual as u128,
                disagreements: rep.disagreements as u128,
                divisibility_without_dimension: rep.divisibility_without_dimension as u128,
                structure_ok: rep.clean(),
            }
        } else {
            let rep = factorized_sweep(r)?;
            SweepLine {
                ring: *r,
                method: "factorized",
                grids: rep.grids,
                self_dual: rep.self_dual,
                disagreements: rep.disagreements,
                divisibility_without_dimension: rep.divisibility_without_dimension,
                structure_ok: rep.structure_verified(),
            }
        };
        lines.push(line);
    }
    let clean = lines.iter().all(|l| l.structure_ok && l.disagreements == 0);
    let text = match args.format {
        SweepFormat::Json => {
            let mut t = serde_json_string(&lines);
            t.push('\n');
            t
        }
        SweepFormat::Text => lines
            .iter()
            .map(|l| {
                let f = l.ring.field;
                format!(
                    "q={} (s,l,k)=({},{},{}) (alpha,beta,gamma)=({},{},{}) {}: {} grids, {} self-dual, {} disagreements, checks {}\n",
                    f.modulus(),
                    l.ring.s,
                    l.ring.l,
                    l.ring.k,
                    f.signed(l.ring.alpha),
                    f.signed(l.ring.beta),
                    f.signed(l.ring.gamma),
                    l.method,
                    l.grids,
                    l.self_dual,
                    l.disagreements,
                    if l.structure_ok { "ok" } else { "FAILED" }
                )
            })
            .collect(),
    };
    emit(args.out.as_deref(), &text)?;
    Ok(if clean { OK } else { VERDICT_FALSE })
}

fn serde_json_string<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes")
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Idempotents { q, k, gamma } => cmd_idempotents(q, k, gamma),
        Command::Factor { q, s, alpha } => cmd_factor(q, s, alpha),
        Command::Build(a) => cmd_build(&a),
        Command::Dual(a) => cmd_dual(&a),
        Command::Selfdual(a) => cmd_selfdual(&a),
        Command::Mindist {
            spec,
            max_weight,
            budget,
            jobs,
        } => cmd_mindist(&spec, max_weight, budget, jobs),
        Command::Verify(a) => cmd_verify(&a),
        Command::Export { spec, format } => cmd_export(&spec, format),
        Command::Sweep(a) => cmd_sweep(&a),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(INVALID)
        }
    }
}
