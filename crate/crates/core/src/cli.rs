//! The `cbdiv` command line. [`run`] takes the full argv and writers for
//! stdout/stderr and returns the process exit code: 0 on success, 1 when a
//! verification fails or stays undecided, 2 on a usage error.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::certificate::{
    decide_effectivity, lp_feasible, verify_proposition, Decision, LabeledTuple, Method, Status,
    DEFAULT_LP_CAP,
};
use crate::divisor::{conformal_blocks_divisor, scale_check, DivisorClass};
use crate::error::{Error, Result};
use crate::fusion::FusionRing;
use crate::json::{divisor_from_json, emit_json, weighting_to_json, DivisorJson, EdgeWeightingJson, ReportJson};
use crate::lie::{AlgebraId, Family, Weight};
use crate::rational::format;
use crate::suite::{run_theorem1, theorem1_instances};

#[derive(Parser, Debug)]
#[command(name = "cbdiv", version, about = "Conformal blocks divisors on M_{0,n} and their boundary certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rank of the bundle of conformal blocks.
    Rank(TupleArgs),
    /// Iterated fusion product of the weights.
    Fusion(TupleArgs),
    /// Divisor class in the ψ/boundary basis.
    Divisor(TupleArgs),
    /// Compute the divisor and certify it as an effective boundary sum.
    Certify {
        #[command(flatten)]
        tuple: TupleArgs,
        #[arg(long, default_value_t = DEFAULT_LP_CAP)]
        lp_cap: usize,
    },
    /// Check the per-split cut bounds of the explicit B/D weightings.
    VerifyProp(TupleArgs),
    /// Certify every admissible level-one B_r or D_r labeling.
    VerifyTheorem1 {
        #[arg(long)]
        family: Family,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long)]
        max_rank: usize,
        #[arg(long)]
        min_rank: Option<usize>,
        #[arg(long)]
        quiet: bool,
    },
    /// Compare the level-N divisor of (Nω_1)^n with N times the level-one one on B_r.
    VerifyScaling {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        n: usize,
        #[arg(long = "N")]
        big_n: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Search for a certificate with the exact LP.
    LpSearch {
        family: Option<Family>,
        rank: Option<usize>,
        #[arg(long, default_value_t = 1)]
        level: u64,
        #[arg(long)]
        weights: Option<String>,
        /// Divisor JSON file instead of a weight tuple.
        #[arg(long, conflicts_with_all = ["family", "rank", "weights"])]
        divisor: Option<std::path::PathBuf>,
        #[arg(long, default_value_t = DEFAULT_LP_CAP)]
        lp_cap: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args, Debug)]
struct TupleArgs {
    family: Family,
    rank: usize,
    #[arg(long, default_value_t = 1)]
    level: u64,
    /// Comma-separated weights: w0, w2, 2*w1, [1,0,2].
    #[arg(long)]
    weights: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

/// Splits at commas outside brackets so `[1,0],w2` gives two weights.
pub fn split_weight_list(s: &str) -> Vec<String> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '[' => depth += 1,
            ']' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                parts.push(std::mem::take(&mut cur).trim().to_string());
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    parts.push(cur.trim().to_string());
    parts
}

struct Loaded {
    ring: FusionRing,
    entries: Vec<Weight>,
}

fn load(args: &TupleArgs) -> Result<Loaded> {
    let id = AlgebraId::new(args.family, args.rank)?;
    let ring = FusionRing::for_algebra(id, args.level)?;
    let entries = split_weight_list(&args.weights)
        .iter()
        .map(|w| Weight::parse(w, args.rank))
        .collect::<Result<Vec<_>>>()?;
    // Validates non-emptiness and membership in P_ℓ.
    ring.tuple(entries.clone())?;
    Ok(Loaded { ring, entries })
}

fn divisor_text(d: &DivisorClass) -> String {
    let mut s = String::new();
    let psi: Vec<String> = d.psi().iter().map(format).collect();
    s.push_str(&format!("psi: {}\n", psi.join(" ")));
    for (p, c) in d.boundary() {
        s.push_str(&format!("D {p}: {}\n", format(c)));
    }
    s
}

fn method_name(m: Option<Method>) -> &'static str {
    match m {
        None => "none",
        Some(Method::ZeroClass) => "zero-class",
        Some(Method::ExplicitB) => "explicit-B",
        Some(Method::ExplicitD) => "explicit-D",
        Some(Method::Lp) => "lp",
    }
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Certified => "certified",
        Status::NoCertificate => "no-certificate",
        Status::Undecided => "undecided",
    }
}

#[derive(Serialize)]
struct CertifyJson {
    status: &'static str,
    method: &'static str,
    divisor: DivisorJson,
    weighting: Option<EdgeWeightingJson>,
    report: Option<ReportJson>,
}

fn certify_output(d: &Decision, fmt: Format) -> String {
    if fmt == Format::Json {
        let j = CertifyJson {
            status: status_name(d.status),
            method: method_name(d.method),
            divisor: (&d.divisor).into(),
            weighting: d.witness.as_ref().map(Into::into),
            report: d.report.as_ref().map(Into::into),
        };
        return emit_json(&j) + "\n";
    }
    let mut s = format!("status: {}\nmethod: {}\n", status_name(d.status), method_name(d.method));
    s.push_str(&divisor_text(&d.divisor));
    if let Some(r) = &d.report {
        s.push_str(&format!("verdict: {}\nmin cut slack: {}\n", r.verdict, format(&r.min_cut_slack)));
        let res: Vec<String> = r.vertex_residuals.iter().map(format).collect();
        s.push_str(&format!("vertex residuals: {}\n", res.join(" ")));
        for (p, slack) in &r.failing {
            s.push_str(&format!("failing {p}: {}\n", format(slack)));
        }
    }
    if let Some(w) = &d.witness {
        s.push_str(&format!("weighting: {}\n", weighting_to_json(w)));
    }
    s
}

enum Outcome {
    Ok(String),
    Failed(String),
}

fn execute(cmd: Command) -> Result<Outcome> {
    match cmd {
        Command::Rank(a) => {
            let l = load(&a)?;
            let r = l.ring.rank(&l.entries)?;
            Ok(Outcome::Ok(match a.format {
                Format::Text => format!("{r}\n"),
                Format::Json => format!("{{\"rank\":{r}}}\n"),
            }))
        }
        Command::Fusion(a) => {
            let l = load(&a)?;
            let idx = l
                .entries
                .iter()
                .map(|w| l.ring.index_of(w))
                .collect::<Result<Vec<_>>>()?;
            let v = l.ring.fuse_indices(&idx);
            let terms: Vec<(String, u64)> = l
                .ring
                .weights()
                .iter()
                .zip(v)
                .filter(|(_, c)| *c > 0)
                .map(|(w, c)| (w.to_string(), c))
                .collect();
            Ok(Outcome::Ok(match a.format {
                Format::Text => terms.iter().map(|(w, c)| format!("{w}: {c}\n")).collect(),
                Format::Json => {
                    #[derive(Serialize)]
                    struct Term<'a> {
                        weight: &'a str,
                        mult: u64,
                    }
                    let t: Vec<Term> = terms.iter().map(|(w, c)| Term { weight: w, mult: *c }).collect();
                    emit_json(&t) + "\n"
                }
            }))
        }
        Command::Divisor(a) => {
            let l = load(&a)?;
            let d = conformal_blocks_divisor(&l.ring, &l.ring.tuple(l.entries)?)?;
            Ok(Outcome::Ok(match a.format {
                Format::Text => divisor_text(&d),
                Format::Json => crate::json::divisor_to_json(&d) + "\n",
            }))
        }
        Command::Certify { tuple, lp_cap } => {
            let l = load(&tuple)?;
            let d = decide_effectivity(&l.ring, &l.ring.tuple(l.entries)?, lp_cap)?;
            let text = certify_output(&d, tuple.format);
            Ok(if d.status == Status::Certified {
                Outcome::Ok(text)
            } else {
                Outcome::Failed(text)
            })
        }
        Command::VerifyProp(a) => {
            let l = load(&a)?;
            if l.ring.level() != 1 {
                return Err(Error::ConstructionInapplicable("the explicit weightings are level one".into()));
            }
            let lt = LabeledTuple::from_tuple(l.ring.tables(), &l.ring.tuple(l.entries)?)?;
            let rep = verify_proposition(&lt)?;
            let mut s = String::new();
            for sp in &rep.splits {
                s.push_str(&format!(
                    "({},{}|{},{}) flow {} bound {} required {}{}{}\n",
                    sp.a1,
                    sp.a2,
                    sp.b1,
                    sp.b2,
                    format(&sp.flow),
                    format(&sp.bound),
                    format(&sp.required),
                    if sp.holds() { "" } else { " FAIL" },
                    if sp.bound_below_required() { " gap" } else { "" },
                ));
            }
            let (a1, a2, b1, b2) = rep.argmin;
            s.push_str(&format!(
                "{} splits, {} gaps, min margin {} at ({a1},{a2}|{b1},{b2})\n",
                rep.splits.len(),
                rep.gaps().count(),
                format(&rep.min_margin)
            ));
            Ok(if rep.all_hold {
                Outcome::Ok(s)
            } else {
                Outcome::Failed(s)
            })
        }
        Command::VerifyTheorem1 {
            family,
            max_n,
            max_rank,
            min_rank,
            quiet,
        } => {
            if !matches!(family, Family::B | Family::D) {
                return Err(Error::Unsupported(format!("family {} has no explicit weighting", family.letter())));
            }
            let lo = min_rank.unwrap_or(family.min_rank());
            AlgebraId::new(family, lo)?;
            if max_n > 10 {
                return Err(Error::Unsupported(format!("--max-n {max_n} exceeds 10")));
            }
            let instances = theorem1_instances(family, lo..=max_rank, max_n, None)?;
            let outcomes = run_theorem1(&instances)?;
            let mut s = String::new();
            let mut failed = 0;
            for o in &outcomes {
                let ok = o.verdict && o.closed_form_agrees;
                if !ok {
                    failed += 1;
                }
                if !quiet || !ok {
                    s.push_str(&format!(
                        "{} {} rank {} min slack {}{}\n",
                        if ok { "ok" } else { "FAIL" },
                        o.label,
                        o.rank,
                        format(&o.min_cut_slack),
                        if o.closed_form_agrees { "" } else { " closed-form mismatch" }
                    ));
                }
            }
            s.push_str(&format!("{} instances, {} failed\n", outcomes.len(), failed));
            Ok(if failed == 0 { Outcome::Ok(s) } else { Outcome::Failed(s) })
        }
        Command::VerifyScaling { rank, n, big_n, format: fmt } => {
            let c = scale_check(rank, n, big_n)?;
            let s = match fmt {
                Format::Json => {
                    #[derive(Serialize)]
                    struct ScaleJson {
                        equal: bool,
                        level_n: DivisorJson,
                        level_one: DivisorJson,
                    }
                    emit_json(&ScaleJson {
                        equal: c.equal,
                        level_n: (&c.level_n).into(),
                        level_one: (&c.level_one).into(),
                    }) + "\n"
                }
                Format::Text => format!(
                    "B{rank} n={n} N={big_n}: {}\nlevel N:\n{}level one:\n{}",
                    if c.equal { "equal" } else { "NOT equal" },
                    divisor_text(&c.level_n),
                    divisor_text(&c.level_one)
                ),
            };
            Ok(if c.equal { Outcome::Ok(s) } else { Outcome::Failed(s) })
        }
        Command::LpSearch {
            family,
            rank,
            level,
            weights,
            divisor,
            lp_cap,
            format: fmt,
        } => {
            let d = match (divisor, family, rank, weights) {
                (Some(path), ..) => {
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| Error::Json(format!("{}: {e}", path.display())))?;
                    divisor_from_json(&text)?
                }
                (None, Some(family), Some(rank), Some(weights)) => {
                    let l = load(&TupleArgs {
                        family,
                        rank,
                        level,
                        weights,
                        format: fmt,
                    })?;
                    conformal_blocks_divisor(&l.ring, &l.ring.tuple(l.entries)?)?
                }
                _ => {
                    return Err(Error::Unsupported(
                        "lp-search needs FAMILY RANK --weights or --divisor FILE".into(),
                    ))
                }
            };
            Ok(match lp_feasible(&d, lp_cap)? {
                Some(w) => Outcome::Ok(match fmt {
                    Format::Json => weighting_to_json(&w) + "\n",
                    Format::Text => format!("feasible\nweighting: {}\n", weighting_to_json(&w)),
                }),
                None => Outcome::Failed(match fmt {
                    Format::Json => "null\n".to_string(),
                    Format::Text => "infeasible\n".to_string(),
                }),
            })
        }
    }
}

/// Parses `argv` (including the program name) and runs the subcommand.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                // First line only keeps the diagnostic to one line.
                writeln!(err, "{}", text.lines().next().unwrap_or("usage error"))
            };
            return code;
        }
    };
    match execute(cli.command) {
        Ok(Outcome::Ok(s)) => {
            let _ = out.write_all(s.as_bytes());
            0
        }
        Ok(Outcome::Failed(s)) => {
            let _ = out.write_all(s.as_bytes());
            1
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
