use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use vote_manip::census::{
    self, elimination_scan, pair_table, run_census_with, CensusResult, CensusSpec, Execution, ReportEcho,
    DEFAULT_BUDGET,
};
use vote_manip::claims::{self, ClaimTarget};
use vote_manip::manipulation::{find_witness, MethodOutcome, Verdict};
use vote_manip::pscf::{find_sd_manipulation, induced_lottery};
use vote_manip::{Candidates, DominanceKind, LabeledProfile, MethodId, Notion, UncertaintySet};

#[derive(Parser)]
#[command(name = "vote-manip", version, about = "Manipulation analysis for voters uncertain about the voting method")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty, env = "VOTE_MANIP_FORMAT")]
    format: Format,
    /// Worker threads (defaults to the available parallelism)
    #[arg(long, global = true, env = "VOTE_MANIP_WORKERS")]
    workers: Option<usize>,
    /// Largest exhaustive profile space allowed
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET, env = "VOTE_MANIP_BUDGET")]
    budget: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Pretty,
}

#[derive(Subcommand)]
enum Command {
    /// Winning sets of each method on a profile file
    Winners {
        profile: PathBuf,
        /// Comma-separated methods, or `all`
        #[arg(long, default_value = "all", env = "VOTE_MANIP_METHODS")]
        methods: String,
    },
    /// Search for a manipulating ranking for one voter
    Analyze {
        profile: PathBuf,
        #[arg(long, default_value_t = 0, env = "VOTE_MANIP_VOTER")]
        voter: usize,
        /// The uncertainty set, e.g. `borda,hare,maxmin`
        #[arg(long, env = "VOTE_MANIP_METHODS")]
        methods: String,
        #[command(flatten)]
        query: Query,
    },
    /// Census over every singleton and pair of the given methods
    Table {
        #[arg(long, env = "VOTE_MANIP_METHODS")]
        methods: String,
        #[command(flatten)]
        space: Space,
        #[command(flatten)]
        query: Query,
    },
    /// Census over arbitrary uncertainty sets
    Census {
        /// One uncertainty set per flag, e.g. `--set borda+hare`
        #[arg(long = "set", required_unless_present = "replay")]
        sets: Vec<String>,
        #[command(flatten)]
        space: Space,
        #[command(flatten)]
        query: Query,
        /// Re-run the configuration echoed in a JSON report
        #[arg(long, conflicts_with = "sets")]
        replay: Option<PathBuf>,
    },
    /// Subsets of the given methods that eliminate manipulation
    Eliminate {
        #[arg(long, env = "VOTE_MANIP_METHODS")]
        methods: String,
        /// Largest subset size to scan
        #[arg(long, default_value_t = 3, env = "VOTE_MANIP_MAX_SIZE")]
        max_size: usize,
        #[command(flatten)]
        space: Space,
        #[command(flatten)]
        query: Query,
    },
    /// Check the built-in claims; exits nonzero if any component fails
    Verify {
        /// Claim names, or `all`
        #[arg(required = true)]
        targets: Vec<String>,
    },
    /// Induced lottery of an uncertainty set, and optionally a
    /// stochastic-dominance manipulation for one voter
    Pscf {
        profile: PathBuf,
        #[arg(long, env = "VOTE_MANIP_METHODS")]
        methods: String,
        #[arg(long, env = "VOTE_MANIP_VOTER")]
        voter: Option<usize>,
    },
}

#[derive(Args)]
struct Query {
    /// sure, safe, harmless, expected, single, sd or sd-not-expected
    #[arg(long, default_value = "sure", env = "VOTE_MANIP_NOTION")]
    notion: String,
    /// Method weights for `expected`, e.g. `1/3,2/3`
    #[arg(long, env = "VOTE_MANIP_WEIGHTS")]
    weights: Option<String>,
    /// weak, opt or pes
    #[arg(long, default_value = "weak", env = "VOTE_MANIP_KIND")]
    kind: DominanceKind,
}

impl Query {
    fn notion(&self) -> Result<Notion> {
        Ok(Notion::parse(&self.notion, self.weights.as_deref())?)
    }
}

#[derive(Args)]
struct Space {
    /// Number of candidates
    #[arg(short = 'n', long = "candidates", default_value_t = 3, env = "VOTE_MANIP_CANDIDATES")]
    n: usize,
    /// Number of voters
    #[arg(short = 'm', long = "voters", default_value_t = 4, env = "VOTE_MANIP_VOTERS")]
    m: usize,
    /// Sample this many impartial-culture profiles instead of enumerating
    #[arg(long, env = "VOTE_MANIP_SAMPLES")]
    samples: Option<u64>,
    #[arg(long, default_value_t = 0, env = "VOTE_MANIP_SEED")]
    seed: u64,
}

impl Space {
    fn spec(&self, query: &Query, sets: Vec<UncertaintySet>, budget: u64) -> Result<CensusSpec> {
        let notion = query.notion()?;
        let mut spec = match self.samples {
            Some(count) => CensusSpec::sampled(self.n, self.m, count, self.seed, notion, query.kind, sets),
            None => CensusSpec::exhaustive(self.n, self.m, notion, query.kind, sets),
        };
        spec.budget = budget;
        Ok(spec)
    }

    fn labels(&self) -> Result<Candidates> {
        Ok(Candidates::default_labels(self.n)?)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let g = &cli.global;
    let exec = match g.workers {
        Some(w) => Execution::with_workers(w),
        None => Execution::default(),
    };
    let mut out = io::stdout().lock();
    match &cli.command {
        Command::Winners { profile, methods } => {
            let lp = read_profile(profile)?;
            let methods = if methods.eq_ignore_ascii_case("all") {
                MethodId::PLAIN.to_vec()
            } else {
                parse_methods(methods, &lp.candidates)?
            };
            winners(&mut out, g.format, &lp, &methods)?;
        }
        Command::Analyze {
            profile,
            voter,
            methods,
            query,
        } => {
            let lp = read_profile(profile)?;
            let set = UncertaintySet::parse(methods, &lp.candidates)?;
            analyze(&mut out, g.format, &lp, *voter, &set, &query.notion()?, query.kind)?;
        }
        Command::Table { methods, space, query } => {
            let methods = parse_methods(methods, &space.labels()?)?;
            let spec = space.spec(query, vec![], g.budget)?;
            let table = pair_table(&methods, &spec, &exec)?;
            let labels = space.labels()?;
            match g.format {
                Format::Pretty => {
                    let names: Vec<String> = methods.iter().map(|m| m.name(&labels)).collect();
                    let width = names.iter().map(String::len).max().unwrap_or(0).max(6);
                    write!(out, "{:width$}", "")?;
                    for name in &names {
                        write!(out, " {name:>width$}")?;
                    }
                    writeln!(out)?;
                    for (i, name) in names.iter().enumerate() {
                        write!(out, "{name:width$}")?;
                        for j in 0..methods.len() {
                            let mark = if table.below_both(i, j) { "*" } else { " " };
                            let cell = format!("{:.1}{mark}", table.cell(i, j).percentage());
                            write!(out, " {cell:>width$}")?;
                        }
                        writeln!(out)?;
                    }
                    writeln!(
                        out,
                        "{}; * = pair below both of its members",
                        describe(&spec)
                    )?;
                }
                format => {
                    let below: Vec<Value> = (0..methods.len())
                        .flat_map(|i| (i + 1..methods.len()).map(move |j| (i, j)))
                        .filter(|&(i, j)| table.below_both(i, j))
                        .map(|(i, j)| json!([i, j]))
                        .collect();
                    let extra = json!({
                        "methods": methods.iter().map(|m| m.name(&labels)).collect::<Vec<_>>(),
                        "below_both": below,
                    });
                    let spec = CensusSpec {
                        sets: table.results().iter().map(|r| r.set.clone()).collect(),
                        ..spec
                    };
                    emit(&mut out, format, &spec, &table.results(), Some(&extra))?;
                }
            }
        }
        Command::Census {
            sets,
            space,
            query,
            replay,
        } => {
            let spec = match replay {
                Some(path) => {
                    let text = read_source(path)?;
                    let report: Value = serde_json::from_str(&text).context("replay file is not JSON")?;
                    let echo: ReportEcho =
                        serde_json::from_value(report["spec"].clone()).context("replay file has no spec echo")?;
                    echo.to_spec()?
                }
                None => {
                    let labels = space.labels()?;
                    let sets = sets
                        .iter()
                        .map(|s| UncertaintySet::parse(s, &labels))
                        .collect::<vote_manip::Result<Vec<_>>>()?;
                    space.spec(query, sets, g.budget)?
                }
            };
            let results = run_census_with(&spec, &exec)?;
            emit(&mut out, g.format, &spec, &results.iter().collect::<Vec<_>>(), None)?;
        }
        Command::Eliminate {
            methods,
            max_size,
            space,
            query,
        } => {
            let labels = space.labels()?;
            let methods = parse_methods(methods, &labels)?;
            let spec = space.spec(query, vec![], g.budget)?;
            let scan = elimination_scan(&methods, *max_size, &spec, &exec)?;
            let names: Vec<String> = scan.eliminating.iter().map(|s| s.name(&labels)).collect();
            match g.format {
                Format::Pretty => {
                    writeln!(out, "{}", describe(&spec))?;
                    if names.is_empty() {
                        writeln!(out, "no subset of size <= {max_size} eliminates manipulation")?;
                    }
                    for name in &names {
                        writeln!(out, "eliminates: {name}")?;
                    }
                }
                format => {
                    let spec = CensusSpec {
                        sets: scan.results.iter().map(|r| r.set.clone()).collect(),
                        ..spec
                    };
                    let extra = json!({ "eliminating": names });
                    emit(&mut out, format, &spec, &scan.results.iter().collect::<Vec<_>>(), Some(&extra))?;
                }
            }
        }
        Command::Verify { targets } => {
            let targets: Vec<ClaimTarget> = if targets.iter().any(|t| t == "all") {
                ClaimTarget::ALL.to_vec()
            } else {
                targets.iter().map(|t| t.parse()).collect::<vote_manip::Result<_>>()?
            };
            let mut all_passed = true;
            let mut reports = Vec::new();
            for target in targets {
                let report = claims::verify(target, &exec)?;
                all_passed &= report.passed();
                reports.push(report);
            }
            match g.format {
                Format::Json => {
                    let v: Vec<Value> = reports
                        .iter()
                        .map(|r| {
                            json!({
                                "target": r.target.name(),
                                "passed": r.passed(),
                                "checks": r.checks.iter().map(|c| json!({
                                    "component": c.component,
                                    "expected": c.expected,
                                    "observed": c.observed,
                                    "passed": c.passed,
                                })).collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    serde_json::to_writer_pretty(&mut out, &v)?;
                    writeln!(out)?;
                }
                Format::Csv => {
                    writeln!(out, "target,component,expected,observed,passed")?;
                    for r in &reports {
                        for c in &r.checks {
                            writeln!(
                                out,
                                "{},{},{},{},{}",
                                r.target.name(),
                                csv_field(&c.component),
                                csv_field(&c.expected),
                                csv_field(&c.observed),
                                c.passed
                            )?;
                        }
                    }
                }
                Format::Pretty => {
                    for r in &reports {
                        writeln!(out, "{} {}", pass_fail(r.passed()), r.target.name())?;
                        for c in &r.checks {
                            writeln!(
                                out,
                                "  {} {}: expected {}, observed {}",
                                pass_fail(c.passed),
                                c.component,
                                c.expected,
                                c.observed
                            )?;
                        }
                    }
                }
            }
            if !all_passed {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Pscf { profile, methods, voter } => {
            let lp = read_profile(profile)?;
            let set = UncertaintySet::parse(methods, &lp.candidates)?;
            pscf(&mut out, g.format, &lp, &set, *voter)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn pass_fail(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn read_source(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
    }
}

fn read_profile(path: &Path) -> Result<LabeledProfile> {
    let text = read_source(path)?;
    LabeledProfile::parse(&text).with_context(|| format!("invalid profile {}", path.display()))
}

fn parse_methods(text: &str, labels: &Candidates) -> Result<Vec<MethodId>> {
    Ok(UncertaintySet::parse(text, labels)?.methods().to_vec())
}

fn describe(spec: &CensusSpec) -> String {
    let source = match spec.source {
        census::Source::Exhaustive => "exhaustive".to_string(),
        census::Source::Sample { count, seed } => format!("{count} samples, seed {seed}"),
    };
    format!(
        "{} {} manipulation, ({},{})-profiles, {source}",
        spec.notion, spec.kind, spec.n, spec.m
    )
}

fn emit(
    out: &mut impl Write,
    format: Format,
    spec: &CensusSpec,
    results: &[&CensusResult],
    extra: Option<&Value>,
) -> Result<()> {
    match format {
        Format::Csv => census::write_csv(out, spec, results)?,
        Format::Json => {
            census::write_json(&mut *out, spec, results, extra)?;
            writeln!(out)?;
        }
        Format::Pretty => {
            let labels = Candidates::default_labels(spec.n)?;
            let names: Vec<String> = results.iter().map(|r| r.set.name(&labels)).collect();
            let width = names.iter().map(String::len).max().unwrap_or(0);
            writeln!(out, "{}", describe(spec))?;
            for (name, r) in names.iter().zip(results) {
                writeln!(
                    out,
                    "{name:width$}  {:>5.1}%  ({} of {} profiles, {} pointed)",
                    r.percentage(),
                    r.witnessing_profiles,
                    r.total_profiles,
                    r.witnessing_pointed
                )?;
            }
        }
    }
    Ok(())
}

fn winners(out: &mut impl Write, format: Format, lp: &LabeledProfile, methods: &[MethodId]) -> Result<()> {
    let c = &lp.candidates;
    let rows = methods
        .iter()
        .map(|m| Ok((m.name(c), m.winners(&lp.profile)?)))
        .collect::<vote_manip::Result<Vec<_>>>()?;
    match format {
        Format::Pretty => {
            let width = rows.iter().map(|(n, _)| n.len()).max().unwrap_or(0);
            for (name, w) in &rows {
                writeln!(out, "{name:width$}  {}", c.format_set(*w))?;
            }
        }
        Format::Csv => {
            writeln!(out, "method,winners")?;
            for (name, w) in &rows {
                writeln!(out, "{},{}", csv_field(name), csv_field(&c.format_set(*w)))?;
            }
        }
        Format::Json => {
            let v: Vec<Value> = rows
                .iter()
                .map(|(name, w)| json!({ "method": name, "winners": w.iter().map(|x| c.label(x)).collect::<Vec<_>>() }))
                .collect();
            serde_json::to_writer_pretty(&mut *out, &v)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Better => "better",
        Verdict::Worse => "worse",
        Verdict::Neutral => "neutral",
    }
}

fn outcome_rows(c: &Candidates, outcomes: &[MethodOutcome]) -> Vec<(String, String, String, &'static str)> {
    outcomes
        .iter()
        .map(|o| (o.method.name(c), c.format_set(o.before), c.format_set(o.after), verdict_name(o.verdict())))
        .collect()
}

fn analyze(
    out: &mut impl Write,
    format: Format,
    lp: &LabeledProfile,
    voter: usize,
    set: &UncertaintySet,
    notion: &Notion,
    kind: DominanceKind,
) -> Result<()> {
    let c = &lp.candidates;
    let p = &lp.profile;
    if voter >= p.num_voters() {
        bail!("voter {voter} is out of range for a profile with {} voters", p.num_voters());
    }
    let witness = find_witness(p, voter, set, notion, kind)?;
    let lotteries = match (&witness, notion.is_stochastic()) {
        (Some(w), true) => {
            let after = p.replace_ranking(voter, w.new_ranking)?;
            Some((induced_lottery(set, p)?, induced_lottery(set, &after)?))
        }
        _ => None,
    };
    match format {
        Format::Pretty => match &witness {
            None => writeln!(out, "none")?,
            Some(w) => {
                writeln!(
                    out,
                    "witness: voter {voter} reports {} instead of {} ({notion}, {kind})",
                    w.new_ranking.display(c),
                    p.ranking(voter)?.display(c)
                )?;
                let rows = outcome_rows(c, &w.outcomes);
                let width = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
                for (name, before, after, verdict) in rows {
                    writeln!(out, "  {name:width$}  {before} -> {after}  {verdict}")?;
                }
                if let Some((before, after)) = &lotteries {
                    writeln!(out, "  lottery {} -> {}", before.display(c), after.display(c))?;
                }
            }
        },
        Format::Csv => {
            writeln!(out, "voter,new_ranking,method,before,after,verdict")?;
            if let Some(w) = &witness {
                let ranking = w.new_ranking.display(c).to_string();
                for (name, before, after, verdict) in outcome_rows(c, &w.outcomes) {
                    writeln!(
                        out,
                        "{voter},{},{},{},{},{verdict}",
                        csv_field(&ranking),
                        csv_field(&name),
                        csv_field(&before),
                        csv_field(&after)
                    )?;
                }
            }
        }
        Format::Json => {
            let witness = witness.as_ref().map(|w| {
                json!({
                    "new_ranking": w.new_ranking.display(c).to_string(),
                    "outcomes": outcome_rows(c, &w.outcomes).into_iter().map(|(m, b, a, v)| json!({
                        "method": m, "before": b, "after": a, "verdict": v,
                    })).collect::<Vec<_>>(),
                    "lottery": lotteries.as_ref().map(|(b, a)| json!({ "before": b, "after": a })),
                })
            });
            let v = json!({
                "voter": voter,
                "set": set.name(c),
                "notion": notion.name(),
                "kind": kind.name(),
                "witness": witness,
            });
            serde_json::to_writer_pretty(&mut *out, &v)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

fn pscf(
    out: &mut impl Write,
    format: Format,
    lp: &LabeledProfile,
    set: &UncertaintySet,
    voter: Option<usize>,
) -> Result<()> {
    let c = &lp.candidates;
    let p = &lp.profile;
    let lottery = induced_lottery(set, p)?;
    let witness = match voter {
        Some(v) if v >= p.num_voters() => {
            bail!("voter {v} is out of range for a profile with {} voters", p.num_voters())
        }
        Some(v) => Some(find_sd_manipulation(p, v, set)?),
        None => None,
    };
    match format {
        Format::Pretty | Format::Csv => {
            if format == Format::Csv {
                writeln!(out, "candidate,probability")?;
                for (i, label) in c.labels().iter().enumerate() {
                    writeln!(out, "{label},{}", lottery.probs()[i])?;
                }
                return Ok(());
            }
            writeln!(out, "{} {}", set.name(c), lottery.display(c))?;
            match (voter, &witness) {
                (Some(v), Some(None)) => writeln!(out, "voter {v}: no stochastic-dominance manipulation")?,
                (Some(v), Some(Some(w))) => {
                    writeln!(
                        out,
                        "voter {v}: reporting {} gives {}",
                        w.new_ranking.display(c),
                        w.after.display(c)
                    )?;
                    for (name, before, after, verdict) in outcome_rows(c, &w.outcomes) {
                        writeln!(out, "  {name}  {before} -> {after}  {verdict}")?;
                    }
                }
                _ => {}
            }
        }
        Format::Json => {
            let manipulation = witness.map(|w| {
                w.map(|w| {
                    json!({
                        "new_ranking": w.new_ranking.display(c).to_string(),
                        "lottery": w.after,
                    })
                })
            });
            let v = json!({
                "set": set.name(c),
                "candidates": c.labels(),
                "lottery": lottery,
                "voter": voter,
                "manipulation": manipulation,
            });
            serde_json::to_writer_pretty(&mut *out, &v)?;
            writeln!(out)?;
        }
    }
    Ok(())
}
