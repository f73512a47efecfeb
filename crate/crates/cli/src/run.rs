//! Subcommand dispatch and the process exit-code contract.

use std::ffi::OsString;
use std::io::{self, Write};

use clap::Parser;
use primespan::exactmath::{threshold_enclosure_capped, threshold_start};
use primespan::intervals::breusch_interval;
use primespan::{
    empirical_min_n, verify_claim, witness_at, Error, PrimeCache, Status, VerificationReport,
};

use crate::args::{
    Cli, Command, ExploreArgs, PointFormat, TableArgs, ThresholdArgs, Toggle, VerifyArgs,
    WhichTable, WitnessArgs,
};
use crate::doc::{ExploreDoc, Params, ThresholdDoc};
use crate::emit::{describe, emit_report};

enum CliError {
    Lib(Error),
    Io(io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

type CmdResult = Result<i32, CliError>;

/// Runs the CLI against explicit streams and returns the process exit code:
/// 0 verified or answered, 1 counterexample or absent witness, 2 usage or
/// resource error, 3 indeterminate at the precision cap.
pub fn run_to<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                return 2;
            }
            let _ = write!(out, "{rendered}");
            return 0;
        }
    };
    let result = match cli.command {
        Command::Verify(a) => cmd_verify(a, out),
        Command::Witness(a) => cmd_witness(a, out),
        Command::Threshold(a) => cmd_threshold(a, out),
        Command::Table(a) => cmd_table(a, out),
        Command::Explore(a) => cmd_explore(a, out),
    };
    match result {
        Ok(code) => code,
        Err(CliError::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Indeterminate { .. } => 3,
                Error::RangeTooLarge { .. } | Error::InvalidInput(_) => 2,
            }
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

/// Exit code for a finished sweep; with strict exceptions on, failures
/// covered by the claim's known exception set still count as verified.
fn verdict(report: &VerificationReport, strict: Toggle) -> i32 {
    match report.status {
        Status::Verified => 0,
        Status::Indeterminate => 3,
        Status::CounterexamplesFound => {
            let known = report.claim.known_exceptions();
            if strict == Toggle::On && report.counterexamples.iter().all(|n| known.contains(n)) {
                0
            } else {
                1
            }
        }
    }
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write) -> CmdResult {
    let claim = a.claim.resolve()?;
    let cfg = a.tuning.config();
    let cache = PrimeCache::with_defaults();
    let report = verify_claim(claim, a.min, a.max, &cache, &cfg)?;
    emit_report(&report, a.format, out)?;
    Ok(verdict(&report, a.strict_exceptions))
}

fn cmd_witness(a: WitnessArgs, out: &mut dyn Write) -> CmdResult {
    let claim = a.claim.resolve()?;
    let cfg = a.tuning.config();
    let cache = PrimeCache::with_defaults();
    match witness_at(claim, a.n, &cache, &cfg)? {
        Some(w) => {
            match a.format {
                PointFormat::Text => writeln!(out, "{}", describe(&w))?,
                PointFormat::Json => {
                    writeln!(out, "{}", serde_json::to_string(&w).expect("witness serializes"))?
                }
            }
            Ok(0)
        }
        None => {
            match a.format {
                PointFormat::Text => writeln!(out, "no witness at {}", a.n)?,
                PointFormat::Json => writeln!(out, "null")?,
            }
            Ok(1)
        }
    }
}

fn cmd_threshold(a: ThresholdArgs, out: &mut dyn Write) -> CmdResult {
    let kind = a.kind.to_kind();
    let enc = threshold_enclosure_capped(kind, a.m, a.bits, a.precision_cap)?;
    let least = threshold_start(kind, a.m, a.bits, a.precision_cap)?;
    match a.format {
        PointFormat::Text => writeln!(
            out,
            "threshold({}, m = {}) at {} bits: enclosure [{}, {}], least admissible integer {}",
            kind.name(),
            a.m,
            enc.bits,
            enc.lo,
            enc.hi,
            least
        )?,
        PointFormat::Json => {
            let doc = ThresholdDoc {
                kind: kind.name().to_string(),
                m: a.m,
                bits: enc.bits,
                lo: enc.lo.to_string(),
                hi: enc.hi.to_string(),
                threshold: least.to_string(),
            };
            writeln!(out, "{}", serde_json::to_string(&doc).expect("doc serializes"))?;
        }
    }
    Ok(0)
}

fn cmd_table(a: TableArgs, out: &mut dyn Write) -> CmdResult {
    let cache = PrimeCache::with_defaults();
    match a.which {
        WhichTable::Breusch => table_breusch(a.max, &cache, out),
        WhichTable::Kinterval => table_kinterval(a.max.unwrap_or(14), &cache, out),
    }
}

/// Reference rows for the wide interval: least prime and exact upper
/// endpoint at each n. Without --max, prints the classic excerpt around the
/// hand-checked boundary.
fn table_breusch(max: Option<u64>, cache: &PrimeCache, out: &mut dyn Write) -> CmdResult {
    writeln!(out, "{:>6}  {:>6}  9(n+3)/8", "n", "prime")?;
    let rows: Box<dyn Iterator<Item = Option<u64>>> = match max {
        Some(mx) => Box::new((1..=mx).map(Some)),
        None => Box::new(
            (1..=10)
                .map(Some)
                .chain(std::iter::once(None))
                .chain((3265..=3274).map(Some)),
        ),
    };
    for row in rows {
        match row {
            None => writeln!(out, "{:>6}  {:>6}  ...", "...", "...")?,
            Some(n) => {
                let interval = breusch_interval(n);
                let p = cache
                    .least_prime_in(&interval)?
                    .ok_or_else(|| Error::InvalidInput(format!("no prime found at {n}")))?;
                writeln!(out, "{:>6}  {:>6}  {}", n, p, interval.hi.display_pretty())?;
            }
        }
    }
    Ok(0)
}

fn join_primes(ps: &[u64]) -> String {
    if ps.is_empty() {
        return "-".to_string();
    }
    ps.iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

/// Five-column rows 2n | r | 3n | s | 4n for even 2n, listing every prime in
/// the closed halves [2n, 3n] and [3n, 4n].
fn table_kinterval(max: u64, cache: &PrimeCache, out: &mut dyn Write) -> CmdResult {
    if max < 2 || max % 2 != 0 || max > u64::MAX / 2 {
        return Err(CliError::Lib(Error::InvalidInput(
            "the rows are even values of 2n, so --max must be an even integer of at least 2"
                .into(),
        )));
    }
    let mut rows = Vec::new();
    for x in (2..=max).step_by(2) {
        let mid = x / 2 * 3;
        let r = join_primes(&cache.primes_in_range(x, mid)?);
        let s = join_primes(&cache.primes_in_range(mid, 2 * x)?);
        rows.push((x, r, mid, s, 2 * x));
    }
    let nw = (2 * max).to_string().len().max(2);
    let rw = rows.iter().map(|r| r.1.len()).max().unwrap_or(1).max(1);
    let sw = rows.iter().map(|r| r.3.len()).max().unwrap_or(1).max(1);
    writeln!(
        out,
        "{:>nw$}  {:<rw$}  {:>nw$}  {:<sw$}  {:>nw$}",
        "2n", "r", "3n", "s", "4n"
    )?;
    for (x, r, mid, s, top) in &rows {
        writeln!(out, "{x:>nw$}  {r:<rw$}  {mid:>nw$}  {s:<sw$}  {top:>nw$}")?;
    }
    writeln!(out)?;
    writeln!(
        out,
        "note: 2n = 2 admits no primes under the strict reading 2n < r < 3n < s < 4n; the rows list every prime in the closed intervals [2n, 3n] and [3n, 4n]."
    )?;
    Ok(0)
}

fn cmd_explore(a: ExploreArgs, out: &mut dyn Write) -> CmdResult {
    let claim = a.claim.resolve()?;
    let cfg = a.tuning.config();
    let cache = PrimeCache::with_defaults();
    let found = empirical_min_n(claim, a.horizon, &cache, &cfg)?;
    match a.format {
        PointFormat::Text => match found {
            Some(n) => writeln!(out, "least n: {n} (holds from there through {})", a.horizon)?,
            None => writeln!(out, "no onset: the claim fails at the horizon {}", a.horizon)?,
        },
        PointFormat::Json => {
            let doc = ExploreDoc {
                claim: claim.name().to_string(),
                params: Params::of(claim),
                horizon: a.horizon,
                min_n: found,
            };
            writeln!(out, "{}", serde_json::to_string(&doc).expect("doc serializes"))?;
        }
    }
    Ok(if found.is_some() { 0 } else { 1 })
}
