use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use quivinv_core::evaluate::InvarianceReport;
use quivinv_core::io::{parse_quiver, parse_spec};
use quivinv_core::local_model::{local_model_report, LocalModelReport};
use quivinv_core::oracle::{check_spanning, fft_check, FftReport, SpanOptions, SpanningReport};
use quivinv_core::suite::{run_suite, SuiteConfig};
use quivinv_core::words::WordStep;
use quivinv_core::{build_doubled, enumerate_cycles, invariance_report, DimVector, Error, StarMode, SymQuiver};

use crate::{GensArgs, LocalArgs, Outcome, VerifyArgs};

fn fail(e: &Error) -> Outcome {
    eprintln!("error: {e}");
    Outcome::from_error(e)
}

fn read(path: &Path) -> Result<String, Outcome> {
    fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        Outcome::InputError
    })
}

fn load_quiver(path: &Path) -> Result<(SymQuiver, Option<DimVector>), Outcome> {
    parse_quiver(&read(path)?).map_err(|e| fail(&e))
}

fn mode(negative_control: bool) -> StarMode {
    if negative_control {
        StarMode::TransposeOnly
    } else {
        StarMode::Faithful
    }
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable report"));
}

fn pass_or_fail(pass: bool) -> Outcome {
    if pass {
        Outcome::Pass
    } else {
        Outcome::Failure
    }
}

#[derive(Serialize)]
struct WordEntry {
    steps: Vec<WordStep>,
    display: String,
    length: usize,
    /// Spot-check failures; absent when the quiver has no dimensions.
    failures: Option<usize>,
}

#[derive(Serialize)]
struct GensReport {
    words: Vec<WordEntry>,
    samples: usize,
    seed: u64,
    mode: StarMode,
    checked: bool,
    pass: bool,
}

pub fn gens(args: &GensArgs) -> Outcome {
    let (q, alpha) = match load_quiver(&args.input) {
        Ok(x) => x,
        Err(o) => return o,
    };
    let dq = build_doubled(&q);
    let words = enumerate_cycles(&dq, args.max_word_len);
    let mode = mode(args.negative_control);
    let checks = match &alpha {
        Some(alpha) if args.samples > 0 => {
            match invariance_report(&q, alpha, &words, args.samples, args.common.seed, mode) {
                Ok(r) => Some(r),
                Err(e) => return fail(&e),
            }
        }
        _ => None,
    };
    let entries: Vec<WordEntry> = words
        .iter()
        .enumerate()
        .map(|(k, w)| WordEntry {
            steps: w.to_steps(&q),
            display: w.display(&q),
            length: w.len(),
            failures: checks.as_ref().map(|c| c.words[k].failures),
        })
        .collect();
    let pass = checks.as_ref().is_none_or(InvarianceReport::passed);
    let report = GensReport {
        words: entries,
        samples: if checks.is_some() { args.samples } else { 0 },
        seed: args.common.seed,
        mode,
        checked: checks.is_some(),
        pass,
    };
    if args.common.json {
        print_json(&report);
    } else {
        println!("{:>4}  {:<40}  status", "len", "word");
        for e in &report.words {
            let status = match e.failures {
                None => "unchecked".to_string(),
                Some(0) => format!("ok ({} samples)", report.samples),
                Some(f) => format!("FAILED {f}/{}", report.samples),
            };
            println!("{:>4}  {:<40}  {status}", e.length, e.display);
        }
        println!("{} words", report.words.len());
    }
    pass_or_fail(pass)
}

#[derive(Serialize)]
struct VerifyReport {
    #[serde(skip_serializing_if = "Vec::is_empty")]
    fft: Vec<FftReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    spanning: Vec<SpanningReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    invariance: Option<InvarianceReport>,
    pass: bool,
}

fn print_fft(rows: &[FftReport]) {
    println!("{:>3} {:>3} {:>3}  {:>8}  {:>8}  result", "N", "N'", "i", "pairings", "oracle");
    for r in rows {
        println!(
            "{:>3} {:>3} {:>3}  {:>8}  {:>8}  {}",
            r.n,
            r.n_prime,
            r.i,
            r.pairing_span_dim,
            r.oracle_dim,
            if r.pass { "pass" } else { "FAIL" }
        );
    }
}

fn print_spanning(rows: &[SpanningReport]) {
    let w = rows.iter().map(|r| r.instance.len()).max().unwrap_or(0).max(8);
    println!("{:<w$}  {:>6}  {:>6}  {:>6}  result", "instance", "degree", "words", "oracle");
    for r in rows {
        println!(
            "{:<w$}  {:>6}  {:>6}  {:>6}  {}",
            r.instance,
            r.degree,
            r.span_dim,
            r.oracle_dim,
            if r.pass { "pass" } else { "FAIL" }
        );
    }
}

fn print_invariance(name: &str, r: &InvarianceReport) {
    println!(
        "invariance {name}: {} words x {} samples, {} failures",
        r.words.len(),
        r.samples,
        r.total_failures
    );
}

pub fn verify(args: &VerifyArgs) -> Outcome {
    let mode = mode(args.negative_control);
    if args.input.is_none() && args.fft.is_empty() {
        let cfg = SuiteConfig {
            max_degree: args.max_degree,
            max_word_len: args.max_word_len,
            samples: args.samples,
            seed: args.common.seed,
            guard_rail: args.guard_rail,
            mode,
        };
        let report = match run_suite(&cfg) {
            Ok(r) => r,
            Err(e) => return fail(&e),
        };
        if args.common.json {
            print_json(&report);
        } else {
            print_fft(&report.fft);
            print_spanning(&report.spanning);
            for inv in &report.invariance {
                print_invariance(&inv.instance, &inv.report);
            }
            let p = &report.pfaffian;
            println!(
                "pfaffian identity: {}/{} exact; degree reports accounted: {}; pf^2 in trace span: {}",
                p.identity.cases - p.identity.failures,
                p.identity.cases,
                p.degrees.iter().all(|d| d.accounted()),
                p.pf_square.iter().all(|s| s.in_trace_span)
            );
            println!(
                "local models consistent: {}/{}",
                report.local.iter().filter(|r| r.consistent()).count(),
                report.local.len()
            );
            println!("suite: {}", if report.pass { "pass" } else { "FAIL" });
        }
        return pass_or_fail(report.pass);
    }

    let fft = match args
        .fft
        .iter()
        .map(|&(n, np, i)| fft_check(n, np, i, args.guard_rail))
        .collect::<Result<Vec<_>, _>>()
    {
        Ok(v) => v,
        Err(e) => return fail(&e),
    };
    let mut spanning = Vec::new();
    let mut invariance = None;
    if let Some(path) = &args.input {
        let (q, alpha) = match load_quiver(path) {
            Ok(x) => x,
            Err(o) => return o,
        };
        let Some(alpha) = alpha else {
            eprintln!("error: {} has no `dims`; verification needs a dimension vector", path.display());
            return Outcome::InputError;
        };
        let opts = SpanOptions {
            max_word_len: args.max_word_len,
            guard_rail: args.guard_rail,
            mode,
        };
        for d in 1..=args.max_degree {
            match check_spanning(&q, &alpha, d, &opts) {
                Ok(r) => spanning.push(r),
                Err(e) => return fail(&e),
            }
        }
        let words = enumerate_cycles(&build_doubled(&q), args.max_word_len);
        match invariance_report(&q, &alpha, &words, args.samples, args.common.seed, mode) {
            Ok(r) => invariance = Some(r),
            Err(e) => return fail(&e),
        }
    }
    let pass = fft.iter().all(|r| r.pass)
        && spanning.iter().all(|r| r.pass)
        && invariance.as_ref().is_none_or(InvarianceReport::passed);
    let report = VerifyReport {
        fft,
        spanning,
        invariance,
        pass,
    };
    if args.common.json {
        print_json(&report);
    } else {
        if !report.fft.is_empty() {
            print_fft(&report.fft);
        }
        if !report.spanning.is_empty() {
            print_spanning(&report.spanning);
        }
        if let Some(inv) = &report.invariance {
            print_invariance("input", inv);
        }
        println!("result: {}", if pass { "pass" } else { "FAIL" });
    }
    pass_or_fail(pass)
}

fn print_local(r: &LocalModelReport) {
    let s = &r.spec;
    println!("genus {}, {:?} flavor, total rank {}", s.genus, s.flavor, r.total_rank);
    println!("  Ext^1 dimensions ({}):", r.ext.ext.labels.join(", "));
    for row in &r.ext.ext.dims {
        println!("    {row:?}");
    }
    println!("  H^1(Ad P):");
    for e in &r.h1ad.entries {
        println!("    {:<32} {}", e.label, e.dim);
    }
    println!("    {:<32} {} (quiver count {})", "total", r.h1ad.total, r.h1ad_total_quiver);
    let labeled = |name: &str, v: Option<(String, String)>| match v {
        Some((v, p)) => println!("  {name:<18} {v} [{p}]"),
        None => println!("  {name:<18} unsupported"),
    };
    let prov = |p: quivinv_core::local_model::Provenance| format!("{p:?}").to_lowercase();
    labeled(
        "multiplicity",
        r.multiplicity.as_ref().map(|m| (m.value.to_string(), prov(m.provenance))),
    );
    labeled(
        "tangent dimension",
        r.tangent_dim.as_ref().map(|t| (t.value.to_string(), prov(t.provenance))),
    );
    labeled(
        "hilbert series",
        r.hilbert_series.as_ref().map(|h| {
            let num: Vec<String> = h.value.numerator.iter().map(|c| c.to_string()).collect();
            (
                format!(
                    "[{}] / ((1-t)^{} (1-t^2)^{})",
                    num.join(", "),
                    h.value.one_minus_t,
                    h.value.one_minus_t2
                ),
                prov(h.provenance),
            )
        }),
    );
    match &r.fiber_cardinality {
        Some(f) => labeled("fiber cardinality", Some((f.value.to_string(), prov(f.provenance)))),
        None => println!("  {:<18} not applicable to this flavor", "fiber cardinality"),
    }
    for u in &r.unsupported {
        println!("  note: {u}");
    }
}

pub fn local(args: &LocalArgs) -> Outcome {
    let mut texts = Vec::new();
    for p in &args.input {
        match read(p) {
            Ok(t) => texts.push(t),
            Err(o) => return o,
        }
    }
    let results: Vec<Result<LocalModelReport, Error>> = texts
        .par_iter()
        .map(|t| parse_spec(t).and_then(|s| local_model_report(&s)))
        .collect();
    let mut reports = Vec::new();
    for (r, path) in results.into_iter().zip(&args.input) {
        match r {
            Ok(r) => reports.push(r),
            Err(e) => {
                eprintln!("error: {}: {e}", path.display());
                return Outcome::from_error(&e);
            }
        }
    }
    if args.common.json {
        if let [single] = reports.as_slice() {
            print_json(single);
        } else {
            print_json(&reports);
        }
    } else {
        for r in &reports {
            print_local(r);
        }
    }
    if !reports.iter().all(LocalModelReport::consistent) {
        return Outcome::Failure;
    }
    if reports.iter().any(|r| !r.unsupported.is_empty()) {
        return Outcome::Unsupported;
    }
    Outcome::Pass
}
