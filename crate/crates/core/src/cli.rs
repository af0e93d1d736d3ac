//! Command-line front end.
//!
//! Exit codes: 0 success, 2 parse or usage error (including an equal slope
//! pair), 3 internal invariant violation, 4 meridian (trivial) surgery slope.

use std::fmt::Write as _;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use crate::check::verify_json;
use crate::invariants::{niwu_with_tau, InvariantSummary, NiWuReport};
use crate::knot::{enumerate_knots, CatalogEntry, TwoBridgeKnot};
use crate::obstruction::{distinguish_in, Evidence, ObstructionError, Verdict, VerdictKind};
use crate::slope::Slope;
use crate::surfaces::{SurfaceDescriptor, SurfaceTable};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;
pub const EXIT_MERIDIAN: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "cosmetic", version, about = "Spanning surfaces and cosmetic surgery obstructions for 2-bridge knots")]
struct Cli {
    #[command(flatten)]
    format: FormatArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args, Clone, Copy)]
struct FormatArgs {
    /// Machine-readable JSON output.
    #[arg(long, global = true, conflicts_with = "tsv")]
    json: bool,
    /// Tab-separated output.
    #[arg(long, global = true)]
    tsv: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Human,
    Json,
    Tsv,
}

impl From<FormatArgs> for Format {
    fn from(a: FormatArgs) -> Self {
        match (a.json, a.tsv) {
            (true, _) => Format::Json,
            (_, true) => Format::Tsv,
            _ => Format::Human,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the essential spanning surfaces of a knot.
    Surfaces {
        /// `S(p,q)`, `p/q` or a table name such as `9_27`.
        knot: TwoBridgeKnot,
    },
    /// Alexander polynomial, determinant, signature and tau.
    Invariants { knot: TwoBridgeKnot },
    /// Try to distinguish `K(r1)` from `K(r2)`.
    Obstruct {
        knot: TwoBridgeKnot,
        #[arg(allow_hyphen_values = true)]
        r1: Slope,
        #[arg(allow_hyphen_values = true)]
        r2: Slope,
        /// Re-check the printed certificate with the independent checker.
        #[arg(long)]
        verify: bool,
    },
    /// Filter and obstruct slope pairs for every knot up to a bound.
    Scan {
        #[arg(long, default_value_t = 49)]
        max_p: i64,
        /// Largest (even) slope numerator considered.
        #[arg(long, default_value_t = 10)]
        max_slope_num: i64,
        #[arg(long)]
        verify: bool,
    },
}

/// Failure of a command after argument parsing.
#[derive(Debug)]
pub struct CommandError {
    pub code: i32,
    pub message: String,
}

impl CommandError {
    fn internal(e: impl std::fmt::Display) -> Self {
        CommandError { code: EXIT_INTERNAL, message: e.to_string() }
    }
}

impl From<ObstructionError> for CommandError {
    fn from(e: ObstructionError) -> Self {
        let code = match e {
            ObstructionError::Meridian => EXIT_MERIDIAN,
            ObstructionError::EqualSlopes(_) => EXIT_USAGE,
            _ => EXIT_INTERNAL,
        };
        CommandError { code, message: e.to_string() }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let format = Format::from(cli.format);
    let result = match cli.command {
        Command::Surfaces { knot } => cmd_surfaces(&knot, format),
        Command::Invariants { knot } => cmd_invariants(&knot, format),
        Command::Obstruct { knot, r1, r2, verify } => cmd_obstruct(&knot, &r1, &r2, verify, format),
        Command::Scan { max_p, max_slope_num, verify } => {
            cmd_scan(&ScanOptions { max_p, max_slope_num, verify }, format)
        }
    };
    match result {
        Ok(Output { stdout, stderr }) => {
            let _ = out.write_all(stdout.as_bytes());
            let _ = err.write_all(stderr.as_bytes());
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

#[derive(Debug, Default)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn knot_label(k: &TwoBridgeKnot) -> String {
    match k.alias() {
        Some(a) => format!("{k} ({a})"),
        None => k.to_string(),
    }
}

fn surface_row(d: &SurfaceDescriptor, sep: &str) -> String {
    [
        d.genus.to_string(),
        d.orientable.to_string(),
        d.boundary_slope.to_string(),
        d.euler.to_string(),
        d.boundary_count.to_string(),
        d.expansion.to_string(),
    ]
    .join(sep)
}

pub fn cmd_surfaces(k: &TwoBridgeKnot, format: Format) -> Result<Output, CommandError> {
    let table = SurfaceTable::build(k).map_err(CommandError::internal)?;
    let mut diag = String::new();
    let _ = writeln!(diag, "two-boundary descriptors: {}", table.multi_boundary.len());
    for d in &table.multi_boundary {
        let _ = writeln!(diag, "  {}", surface_row(d, "  "));
    }
    for ((orientable, genus), n) in table.counts_by_genus() {
        let kind = if orientable { "orientable" } else { "non-orientable" };
        let _ = writeln!(diag, "{kind} genus {genus}: {n}");
    }
    if let Some(min) = table.nonorientable().map(|d| d.genus).min() {
        let counts: Vec<String> = table
            .candidate_counts(min)
            .iter()
            .map(|c| format!("{} {}", c.convention, c.count))
            .collect();
        let _ = writeln!(diag, "candidates of genus >= {min}: {}", counts.join("; "));
    }

    let mut out = Output::default();
    match format {
        Format::Json => {
            out.stdout = to_json(&table.spanning);
            out.stderr = diag;
        }
        Format::Tsv => {
            out.stdout.push_str("genus\torientable\tslope\tchi\tboundary_components\texpansion\n");
            for d in &table.spanning {
                let _ = writeln!(out.stdout, "{}", surface_row(d, "\t"));
            }
            out.stderr = diag;
        }
        Format::Human => {
            let s = &mut out.stdout;
            let _ = writeln!(
                s,
                "{}: even expansion {} of {}",
                knot_label(k),
                table.even,
                table.even.target()
            );
            let _ = writeln!(s, "{:>5}  {:<10}  {:>6}  {:>4}  {:>8}  expansion", "genus", "orientable", "slope", "chi", "boundary");
            for d in &table.spanning {
                let _ = writeln!(
                    s,
                    "{:>5}  {:<10}  {:>6}  {:>4}  {:>8}  {}",
                    d.genus,
                    if d.orientable { "yes" } else { "no" },
                    d.boundary_slope.num(),
                    d.euler,
                    d.boundary_count,
                    d.expansion
                );
            }
            let _ = writeln!(s, "diagnostics:");
            for line in diag.lines() {
                let _ = writeln!(s, "  {line}");
            }
        }
    }
    Ok(out)
}

pub fn cmd_invariants(k: &TwoBridgeKnot, format: Format) -> Result<Output, CommandError> {
    let inv = InvariantSummary::compute(k).map_err(CommandError::internal)?;
    let mut out = Output::default();
    match format {
        Format::Json => out.stdout = to_json(&inv),
        Format::Tsv => {
            out.stdout = format!(
                "knot\talexander\tdelta2\tdet\tsignature\ttau\n{k}\t{}\t{}\t{}\t{}\t{}\n",
                inv.alexander, inv.delta2, inv.det, inv.signature, inv.tau
            )
        }
        Format::Human => {
            let s = &mut out.stdout;
            let _ = writeln!(s, "{}", knot_label(k));
            let _ = writeln!(s, "  alexander   {}", inv.alexander);
            let _ = writeln!(s, "  delta''(1)  {}", inv.delta2);
            let _ = writeln!(s, "  determinant {}", inv.det);
            let _ = writeln!(s, "  signature   {}", inv.signature);
            let _ = writeln!(s, "  tau         {}", inv.tau);
            let _ = writeln!(s, "  amphicheiral {}", k.is_amphicheiral());
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
struct BoyerLines {
    delta2: i128,
    obstructs: bool,
}

#[derive(Debug, Clone, Serialize)]
struct ObstructReport {
    knot: TwoBridgeKnot,
    boyer_lines: BoyerLines,
    niwu: NiWuReport,
    result: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    verified: Option<bool>,
}

fn verify_certificate(k: &TwoBridgeKnot, v: &Verdict) -> Result<(), CommandError> {
    let json = serde_json::to_string(v).map_err(CommandError::internal)?;
    verify_json(k, &json).map(|_| ()).map_err(CommandError::internal)
}

pub fn cmd_obstruct(
    k: &TwoBridgeKnot,
    r1: &Slope,
    r2: &Slope,
    verify: bool,
    format: Format,
) -> Result<Output, CommandError> {
    if r1.is_meridian() || r2.is_meridian() {
        return Err(ObstructionError::Meridian.into());
    }
    if r1 == r2 {
        return Err(ObstructionError::EqualSlopes(*r1).into());
    }
    let inv = InvariantSummary::compute(k).map_err(CommandError::internal)?;
    let table = SurfaceTable::build(k).map_err(CommandError::internal)?;
    let verdict = distinguish_in(&table, r1, r2)?;
    if verify {
        verify_certificate(k, &verdict)?;
    }
    let report = ObstructReport {
        knot: *k,
        boyer_lines: BoyerLines { delta2: inv.delta2, obstructs: inv.boyer_lines_obstructs() },
        niwu: niwu_with_tau(inv.tau, r1, r2),
        result: verdict,
        verified: verify.then_some(true),
    };

    let mut out = Output::default();
    match format {
        Format::Json => out.stdout = to_json(&report),
        Format::Tsv => {
            out.stdout = format!(
                "knot\tr1\tr2\tboyer_lines\tniwu\tverdict\n{k}\t{r1}\t{r2}\t{}\t{}\t{}\n",
                report.boyer_lines.obstructs,
                report.niwu.survives,
                verdict_word(report.result.verdict)
            )
        }
        Format::Human => {
            let s = &mut out.stdout;
            let n = &report.niwu;
            let _ = writeln!(s, "{}: K({r1}) vs K({r2})", knot_label(k));
            let _ = writeln!(
                s,
                "Boyer-Lines: delta''(1) = {} ({})",
                inv.delta2,
                if report.boyer_lines.obstructs { "no cosmetic surgeries" } else { "no obstruction" }
            );
            let _ = writeln!(
                s,
                "Ni-Wu: (a) r1 = -r2 {}  (b) q^2 = -1 mod p {}  (c) tau = 0 {}  => {}",
                n.opposite,
                n.q_squared_minus_one,
                n.tau_zero,
                if n.survives { "pair survives" } else { "pair excluded" }
            );
            let _ = writeln!(s, "{}", verdict_word(report.result.verdict));
            for r in &report.result.reasons {
                let _ = writeln!(s, "  {r}");
            }
            if report.result.evidence.is_some() {
                let _ = writeln!(s, "certificate:");
                s.push_str(&to_json(&report.result));
            }
            if verify {
                let _ = writeln!(s, "verify: ok");
            }
        }
    }
    Ok(out)
}

fn verdict_word(kind: VerdictKind) -> &'static str {
    match kind {
        VerdictKind::Distinguished => "DISTINGUISHED",
        VerdictKind::Inconclusive => "INCONCLUSIVE",
    }
}

#[derive(Debug, Clone)]
pub struct ScanOptions {
    pub max_p: i64,
    pub max_slope_num: i64,
    pub verify: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairRecord {
    pub niwu: NiWuReport,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanRecord {
    #[serde(flatten)]
    pub entry: CatalogEntry,
    pub invariants: InvariantSummary,
    pub boyer_lines_obstructs: bool,
    /// Pairs passing both filters, with their verdicts.
    pub pairs: Vec<PairRecord>,
}

/// Slopes `p/q` with `p` even, `0 < q < p`, `gcd(p, q) = 1` and
/// `q^2 = -1 mod p`, for `p <= max_num`.
pub fn candidate_slopes(max_num: i64) -> Vec<Slope> {
    let mut v = Vec::new();
    for p in (2..=max_num).step_by(2) {
        for q in 1..p {
            if num_integer::gcd(p, q) == 1 && (q * q + 1) % p == 0 {
                v.push(Slope::new(p, q).expect("nonzero"));
            }
        }
    }
    v
}

fn scan_one(entry: &CatalogEntry, slopes: &[Slope], verify: bool) -> Result<ScanRecord, CommandError> {
    let k = entry.knot;
    let invariants = InvariantSummary::compute(&k).map_err(CommandError::internal)?;
    let boyer_lines_obstructs = invariants.boyer_lines_obstructs();
    let mut pairs = Vec::new();
    if !boyer_lines_obstructs && invariants.tau == 0 {
        let table = SurfaceTable::build(&k).map_err(CommandError::internal)?;
        for r in slopes {
            let (r1, r2) = (*r, r.negate());
            let niwu = niwu_with_tau(invariants.tau, &r1, &r2);
            if !niwu.survives {
                continue;
            }
            let verdict = distinguish_in(&table, &r1, &r2)?;
            let verified = if verify {
                verify_certificate(&k, &verdict)?;
                Some(true)
            } else {
                None
            };
            pairs.push(PairRecord { niwu, verdict, verified });
        }
    }
    Ok(ScanRecord { entry: *entry, invariants, boyer_lines_obstructs, pairs })
}

/// Scans every knot with `p <= max_p`; records come back in catalogue order.
pub fn scan(opts: &ScanOptions) -> Result<Vec<ScanRecord>, CommandError> {
    if opts.max_p < 3 {
        return Err(CommandError { code: EXIT_USAGE, message: "--max-p must be at least 3".into() });
    }
    let slopes = candidate_slopes(opts.max_slope_num);
    enumerate_knots(opts.max_p)
        .par_iter()
        .map(|e| scan_one(e, &slopes, opts.verify))
        .collect()
}

fn evidence_word(v: &Verdict) -> &'static str {
    match &v.evidence {
        Some(Evidence::GenusGap { .. }) => "genus_gap",
        Some(Evidence::Parity { .. }) => "parity",
        None => "-",
    }
}

pub fn cmd_scan(opts: &ScanOptions, format: Format) -> Result<Output, CommandError> {
    let records = scan(opts)?;
    let mut out = Output::default();
    let surviving: Vec<(&ScanRecord, &PairRecord)> =
        records.iter().flat_map(|r| r.pairs.iter().map(move |p| (r, p))).collect();
    let distinguished = surviving
        .iter()
        .filter(|(_, p)| p.verdict.verdict == VerdictKind::Distinguished)
        .count();
    match format {
        Format::Json => out.stdout = to_json(&records),
        Format::Tsv => {
            out.stdout.push_str("knot\tr1\tr2\tverdict\tevidence\n");
            for (r, p) in &surviving {
                let _ = writeln!(
                    out.stdout,
                    "{}\t{}\t{}\t{}\t{}",
                    r.entry.knot,
                    p.verdict.r1,
                    p.verdict.r2,
                    verdict_word(p.verdict.verdict),
                    evidence_word(&p.verdict)
                );
            }
        }
        Format::Human => {
            for (r, p) in &surviving {
                let _ = writeln!(
                    out.stdout,
                    "{:<16} {:>8} {:>8}  {}",
                    knot_label(&r.entry.knot),
                    p.verdict.r1.to_string(),
                    p.verdict.r2.to_string(),
                    verdict_word(p.verdict.verdict)
                );
            }
        }
    }
    let _ = writeln!(
        out.stderr,
        "scanned {} knots with p <= {}: {} pairs survive the filters, {} distinguished{}",
        records.len(),
        opts.max_p,
        surviving.len(),
        distinguished,
        if opts.verify { ", all certificates verified" } else { "" }
    );
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("cosmetic").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn candidate_slope_list() {
        let v: Vec<String> = candidate_slopes(10).iter().map(|s| s.to_string()).collect();
        assert_eq!(v, vec!["2/1", "10/3", "10/7"]);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_args(&["obstruct", "S(49,19)", "10/3", "10/3"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["obstruct", "S(49,19)", "1/0", "10/3"]).0, EXIT_MERIDIAN);
        assert_eq!(run_args(&["obstruct", "S(48,19)", "10/3", "-10/3"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["obstruct", "S(49,19)", "0/0", "-10/3"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn obstruct_theorem() {
        let (code, out, _) = run_args(&["obstruct", "S(49,19)", "10/3", "-10/3", "--verify"]);
        assert_eq!(code, 0);
        assert!(out.contains("DISTINGUISHED"));
        assert!(out.contains("verify: ok"));
    }

    #[test]
    fn surfaces_alias() {
        let a = run_args(&["surfaces", "S(49,19)"]);
        let b = run_args(&["surfaces", "9_27"]);
        assert_eq!(a, b);
        assert!(a.1.lines().any(|l| l.split_whitespace().collect::<Vec<_>>()[..3] == ["4", "no", "-4"]));
    }
}
