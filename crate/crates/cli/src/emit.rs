//! Report rendering: text for people, json and csv for machines.

use std::io::{self, Write};

use primespan::{Claim, Status, VerificationReport, Witness};

use crate::args::Format;
use crate::doc::ReportDoc;

pub fn emit_report(r: &VerificationReport, format: Format, out: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Text => emit_text(r, out),
        Format::Json => {
            let doc = ReportDoc::from_report(r);
            writeln!(out, "{}", serde_json::to_string(&doc).expect("report serializes"))
        }
        Format::Csv => emit_csv(r, out),
    }
}

fn status_str(s: Status) -> &'static str {
    match s {
        Status::Verified => "verified",
        Status::CounterexamplesFound => "counterexamples found",
        Status::Indeterminate => "indeterminate",
    }
}

fn emit_text(r: &VerificationReport, out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "claim: {}", r.claim)?;
    writeln!(out, "range: [{}, {}]", r.range.0, r.range.1)?;
    match &r.threshold_used {
        Some(t) => writeln!(out, "threshold: sweep starts at {t}")?,
        None => writeln!(out, "threshold: none")?,
    }
    writeln!(out, "status: {}", status_str(r.status))?;
    if r.counterexamples.is_empty() {
        writeln!(out, "counterexamples: none")?;
    } else {
        let shown: Vec<String> = r
            .counterexamples
            .iter()
            .take(12)
            .map(u64::to_string)
            .collect();
        let more = if r.counterexamples.len() > 12 {
            ", ..."
        } else {
            ""
        };
        writeln!(
            out,
            "counterexamples: {} ({}{more})",
            r.counterexamples.len(),
            shown.join(", ")
        )?;
    }
    writeln!(out, "witnesses: {} sampled", r.witnesses.len())?;
    if let Some(w) = r.witnesses.first() {
        writeln!(out, "  first: at {}: {}", w.at(), describe(w))?;
    }
    if r.witnesses.len() > 1 {
        let w = r.witnesses.last().expect("nonempty");
        writeln!(out, "  last: at {}: {}", w.at(), describe(w))?;
    }
    writeln!(out, "elapsed_ms: {}", r.elapsed.as_millis())
}

/// One-line human description of a witness.
pub fn describe(w: &Witness) -> String {
    match w {
        Witness::PrimeInInterval {
            n,
            interval_hi,
            least_prime,
        } => format!(
            "interval [{n}, {}] and prime {least_prime}",
            interval_hi.display_pretty()
        ),
        Witness::KPrime {
            lo,
            hi,
            least_prime,
            ..
        } => format!("interval [{lo}, {hi}] and prime {least_prime}"),
        Witness::Containment {
            dusart_hi_bound,
            breusch_hi,
            ..
        } => format!(
            "upper bound {} within endpoint {}",
            dusart_hi_bound.display_pretty(),
            breusch_hi.display_pretty()
        ),
        Witness::Quad(q) => {
            let mut parts = Vec::new();
            if let Some(p) = q.p {
                parts.push(format!("p = {p}"));
            }
            if let Some(v) = q.q {
                parts.push(format!("q = {v}"));
            }
            if let Some(v) = q.r {
                parts.push(format!("r = {v}"));
            }
            if let Some(v) = q.s {
                parts.push(format!("s = {v}"));
            }
            parts.join(", ")
        }
        Witness::PowerOnly { a, value, .. } => format!("a = {a} with a^m = {value}"),
        Witness::PowerAndPrime { a, value, s, .. } => {
            format!("a = {a} with a^m = {value}, then prime {s}")
        }
        Witness::PrimeAndPower { r, a, value, .. } => {
            format!("prime {r}, then a = {a} with a^m = {value}")
        }
        Witness::ThresholdFloor { m, lo } => format!(
            "degree {m}: certified lower bound {} exceeds 72/5",
            lo.display_pretty()
        ),
    }
}

fn csv_header(claim: &Claim) -> &'static str {
    match claim {
        Claim::Breusch => "n,interval_hi,least_prime",
        Claim::Dusart => "n,inner_hi,least_prime",
        Claim::DusartInBreusch => "n,dusart_hi_bound,breusch_hi",
        Claim::ScaledLower { .. } => "n,p",
        Claim::ScaledUpper { .. } => "n,q",
        Claim::ScaledPair { .. } => "n,p,q",
        Claim::ScaledFour { .. } => "n,p,q,r,s",
        Claim::PowerLower { .. } | Claim::PowerUpper { .. } => "n,a,value",
        Claim::PowerThenPrime { .. } => "n,a,value,s",
        Claim::PrimeThenPower { .. } => "n,r,a,value",
        Claim::KInterval { .. } => "n,lo,hi,least_prime",
        Claim::ThresholdFloor { .. } => "m,lo",
    }
}

fn csv_row(w: &Witness) -> String {
    match w {
        Witness::PrimeInInterval {
            n,
            interval_hi,
            least_prime,
        } => format!("{n},{interval_hi},{least_prime}"),
        Witness::KPrime {
            n,
            lo,
            hi,
            least_prime,
        } => format!("{n},{lo},{hi},{least_prime}"),
        Witness::Containment {
            n,
            dusart_hi_bound,
            breusch_hi,
        } => format!("{n},{dusart_hi_bound},{breusch_hi}"),
        Witness::Quad(q) => {
            let mut row = q.n.to_string();
            for part in [q.p, q.q, q.r, q.s].into_iter().flatten() {
                row.push(',');
                row.push_str(&part.to_string());
            }
            row
        }
        Witness::PowerOnly { n, a, value } => format!("{n},{a},{value}"),
        Witness::PowerAndPrime { n, a, value, s } => format!("{n},{a},{value},{s}"),
        Witness::PrimeAndPower { n, r, a, value } => format!("{n},{r},{a},{value}"),
        Witness::ThresholdFloor { m, lo } => format!("{m},{lo}"),
    }
}

fn emit_csv(r: &VerificationReport, out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "{}", csv_header(&r.claim))?;
    for w in &r.witnesses {
        writeln!(out, "{}", csv_row(w))?;
    }
    Ok(())
}
