use std::cell::RefCell;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use pingpong_core::arith::{GaussianRational, Rational};
use pingpong_core::hyperbolic::lemma32_bound;
use pingpong_core::moebius::{apply_word, make_generators, Region, SignPolicy};
use pingpong_core::pingpong::{
    certify_bound_with, relator_implication_report, w_membership, CertOptions, CertReport, PingPongTable, WSet,
};
use pingpong_core::relator::{bfs_find_relator, check_relator_form, is_relator, RelatorMode, RelatorVerdict};
use pingpong_core::word::{fw_decompose, Word, WordSet};
use pingpong_core::Error;

use crate::config::parse_table;
use crate::dto::{
    BoundReportDto, CertReportDto, DecompositionDto, FormDto, RelatorCheckDto, RelatorDto, RelatorFindDto,
};
use crate::svg::{render, Layer};
use crate::CliError;

pub const THREADS_ENV: &str = "PPCERT_THREADS";

#[derive(Parser, Debug)]
#[command(name = "pingpong", version, about = "Exact ping-pong certificates for two-parabolic groups")]
pub struct Cli {
    /// Disable the floating-point filter in sign evaluation.
    #[arg(long, global = true)]
    pub exact_only: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Certify a syllable bound for the lambda, mu pair.
    Certify(CertifyArgs),
    /// Angle-bound report for real 9/5 <= lambda < 2, mu = 2.
    Bound {
        #[arg(long)]
        lambda: String,
    },
    #[command(subcommand)]
    Relator(RelatorCommand),
    #[command(subcommand)]
    Plot(PlotCommand),
    /// F(W)-decomposition of a word.
    Decompose(DecomposeArgs),
    /// Certify over a grid of real lambda values and print CSV.
    Sweep(SweepArgs),
}

#[derive(Args, Debug, Clone)]
pub struct TableArgs {
    #[arg(long, value_enum, default_value_t = FlavorArg::Mu2)]
    pub flavor: FlavorArg,
    /// Region file for a custom table (overrides --flavor).
    #[arg(long)]
    pub table: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlavorArg {
    Mu2,
    Mui,
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    #[arg(long)]
    pub lambda: String,
    /// Defaults to the flavor's fixed mu.
    #[arg(long)]
    pub mu: Option<String>,
    #[command(flatten)]
    pub table: TableArgs,
    #[arg(long)]
    pub cap: Option<usize>,
    /// Enumerate exponent-inverted words even for symmetric tables.
    #[arg(long)]
    pub no_symmetry: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum RelatorCommand {
    /// Bounded search for a relator of least syllable count.
    Find {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        #[arg(long, default_value_t = 8)]
        max_syl: usize,
        #[arg(long, default_value_t = 3)]
        max_exp: i64,
    },
    /// Check whether a word is a relator.
    Check {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        word: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
        /// Working precision for numeric mode.
        #[arg(long, default_value_t = 128)]
        bits: u32,
        /// Certificate JSON to compare the relator against.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeArg {
    Exact,
    Psl,
    Numeric,
}

#[derive(Subcommand, Debug)]
pub enum PlotCommand {
    /// The four table regions.
    Table {
        #[command(flatten)]
        table: TableArgs,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 3.0)]
        window: f64,
    },
    /// Successive images of a table region under a word.
    Orbit {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: Option<String>,
        #[arg(long)]
        word: String,
        #[arg(long, default_value = "K2")]
        seed_region: String,
        #[command(flatten)]
        table: TableArgs,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 3.0)]
        window: f64,
    },
}

#[derive(Args, Debug)]
pub struct DecomposeArgs {
    #[arg(long)]
    pub word: String,
    /// Forbidden word (repeatable).
    #[arg(long, conflicts_with = "geom")]
    pub forbid: Vec<String>,
    /// Use membership in W_X_to_K or W_K_to_X as the forbidden set.
    #[arg(long)]
    pub geom: Option<String>,
    #[arg(long, default_value = "2")]
    pub lambda: String,
    #[arg(long)]
    pub mu: Option<String>,
    #[command(flatten)]
    pub table: TableArgs,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long)]
    pub from: String,
    #[arg(long)]
    pub to: String,
    #[arg(long)]
    pub step: String,
    #[arg(long)]
    pub mu: Option<String>,
    #[command(flatten)]
    pub table: TableArgs,
    #[arg(long)]
    pub cap: Option<usize>,
}

/// What a successful command produces.
pub enum Output {
    Stdout(String),
    /// Written to a file; the message goes to stdout.
    File(PathBuf, String, String),
}

fn policy(cli: &Cli) -> SignPolicy {
    if cli.exact_only {
        SignPolicy::ExactOnly
    } else {
        SignPolicy::Filtered
    }
}

fn gauss(s: &str) -> Result<GaussianRational, CliError> {
    s.parse().map_err(|e| CliError::Usage(format!("bad literal `{s}`: {e}")))
}

fn word(s: &str) -> Result<Word, CliError> {
    s.parse().map_err(|e| CliError::Usage(format!("bad word `{s}`: {e}")))
}

pub fn load_table(args: &TableArgs, policy: SignPolicy) -> Result<PingPongTable, CliError> {
    match &args.table {
        Some(path) => parse_table(&std::fs::read_to_string(path)?, policy),
        None => Ok(match args.flavor {
            FlavorArg::Mu2 => PingPongTable::mu2(),
            FlavorArg::Mui => PingPongTable::mui(),
        }),
    }
}

fn resolve_mu(t: &PingPongTable, mu: Option<&str>) -> Result<GaussianRational, CliError> {
    match (mu, t.fixed_mu()) {
        (Some(m), _) => gauss(m),
        (None, Some(m)) => Ok(m),
        (None, None) => Err(CliError::Usage("custom tables need --mu".into())),
    }
}

fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v.parse().map_err(|_| CliError::Usage(format!("{THREADS_ENV} must be a positive integer")))?;
        b = b.num_threads(n);
    }
    b.build().map_err(|e| CliError::Usage(e.to_string()))
}

/// Certification with each level evaluated in parallel.
pub fn certify_parallel(
    t: &PingPongTable,
    lambda: &GaussianRational,
    mu: &GaussianRational,
    opts: &CertOptions,
) -> Result<CertReport, CliError> {
    Ok(certify_bound_with(t, lambda, mu, opts, |words, check| words.par_iter().map(check).collect())?)
}

fn json<T: serde::Serialize>(v: &T) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let policy = policy(cli);
    match &cli.command {
        Command::Certify(a) => {
            let t = load_table(&a.table, policy)?;
            let lambda = gauss(&a.lambda)?;
            let mu = resolve_mu(&t, a.mu.as_deref())?;
            let opts = CertOptions { cap: a.cap, policy, no_symmetry: a.no_symmetry };
            let rep = thread_pool()?.install(|| certify_parallel(&t, &lambda, &mu, &opts))?;
            let text = json(&CertReportDto::new(&rep, Some(relator_implication_report(&rep))))?;
            Ok(match &a.out {
                Some(p) => Output::File(p.clone(), text, format!("wrote {}\n", p.display())),
                None => Output::Stdout(text),
            })
        }
        Command::Bound { lambda } => {
            let l: Rational = lambda.parse().map_err(|e| CliError::Usage(format!("bad literal `{lambda}`: {e}")))?;
            Ok(Output::Stdout(json(&BoundReportDto::from(&lemma32_bound(&l)?))?))
        }
        Command::Relator(RelatorCommand::Find { lambda, mu, max_syl, max_exp }) => {
            let (l, m) = (gauss(lambda)?, gauss(mu)?);
            let r = bfs_find_relator(&l, &m, *max_syl, *max_exp)?;
            Ok(Output::Stdout(json(&RelatorFindDto {
                lambda: l.to_string(),
                mu: m.to_string(),
                max_syllables: *max_syl,
                max_exponent: *max_exp,
                word: r.as_ref().map(|r| r.word.to_string()),
                sigma_upper: r.map(|r| r.sigma_upper),
            })?))
        }
        Command::Relator(RelatorCommand::Check { lambda, mu, word: w, mode, bits, certificate }) => {
            let (l, m, w) = (gauss(lambda)?, gauss(mu)?, word(w)?);
            let mode = match mode {
                ModeArg::Exact => RelatorMode::Exact,
                ModeArg::Psl => RelatorMode::Psl,
                ModeArg::Numeric => RelatorMode::Numeric { bits: *bits },
            };
            let report = match certificate {
                Some(p) => {
                    let dto: CertReportDto = serde_json::from_str(&std::fs::read_to_string(p)?)?;
                    Some(dto.to_report()?)
                }
                None => None,
            };
            let out = match is_relator(&w, &l, &m, mode)? {
                RelatorVerdict::Relator(c) => {
                    let form = check_relator_form(&c, report.as_ref());
                    RelatorCheckDto {
                        relator: true,
                        certificate: Some(RelatorDto::from(&c)),
                        form: Some(FormDto::from(&form)),
                        residual: None,
                    }
                }
                RelatorVerdict::NotRelator { residual } => RelatorCheckDto {
                    relator: false,
                    certificate: None,
                    form: None,
                    residual: Some(RelatorCheckDto::residual_of(&residual)),
                },
                RelatorVerdict::Refused(why) => {
                    return Err(CliError::Core(Error::Refused(why)));
                }
            };
            Ok(Output::Stdout(json(&out)?))
        }
        Command::Plot(PlotCommand::Table { table, out, window }) => {
            let t = load_table(table, policy)?;
            let layers: Vec<Layer<'_>> =
                t.regions().into_iter().map(|r| Layer { label: r.label().to_string(), region: r }).collect();
            let svg = render(&format!("{} table", t.flavor), &layers, *window);
            Ok(Output::File(out.clone(), svg, format!("wrote {}\n", out.display())))
        }
        Command::Plot(PlotCommand::Orbit { lambda, mu, word: w, seed_region, table, out, window }) => {
            let t = load_table(table, policy)?;
            let (l, m) = (gauss(lambda)?, resolve_mu(&t, mu.as_deref())?);
            let seed = t
                .regions()
                .into_iter()
                .find(|r| r.label() == seed_region)
                .ok_or_else(|| CliError::Usage(format!("no region labelled {seed_region}")))?;
            let steps = orbit_steps(w)?;
            let g = make_generators(&l, &m)?;
            let images: Vec<(String, Region)> =
                steps.iter().map(|s| (s.to_string(), seed.image(&apply_word(s, &g.a, &g.b)))).collect();
            let mut layers: Vec<Layer<'_>> =
                t.regions().into_iter().map(|r| Layer { label: r.label().to_string(), region: r }).collect();
            layers.extend(images.iter().map(|(label, r)| Layer { label: label.clone(), region: r }));
            let svg = render(&format!("orbit of {seed_region} under {w}"), &layers, *window);
            Ok(Output::File(out.clone(), svg, format!("wrote {}\n", out.display())))
        }
        Command::Decompose(a) => {
            let w = word(&a.word)?;
            let d = match &a.geom {
                None => {
                    let forbidden = a.forbid.iter().map(|f| word(f)).collect::<Result<Vec<_>, _>>()?;
                    fw_decompose(&w, &WordSet::new(forbidden))?
                }
                Some(set) => {
                    let set: WSet = set.parse()?;
                    let t = load_table(&a.table, policy)?;
                    let (l, m) = (gauss(&a.lambda)?, resolve_mu(&t, a.mu.as_deref())?);
                    t.check_domain(&l, &m)?;
                    let failure = RefCell::new(None);
                    let pred = |p: &Word| match w_membership(p, &t, set, &l, &m, policy) {
                        Ok(r) => r.member,
                        Err(e) => {
                            failure.borrow_mut().get_or_insert(e);
                            false
                        }
                    };
                    let d = fw_decompose(&w, &pred)?;
                    if let Some(e) = failure.into_inner() {
                        return Err(e.into());
                    }
                    d
                }
            };
            Ok(Output::Stdout(json(&DecompositionDto::new(&w, &d))?))
        }
        Command::Sweep(a) => sweep(a, policy).map(Output::Stdout),
    }
}

/// `(u)^n` gives the powers `u, u^2, ..., u^n`; any other word gives its
/// suffixes, shortest first (the order in which letters act).
pub fn orbit_steps(text: &str) -> Result<Vec<Word>, CliError> {
    let t = text.trim();
    if let Some(rest) = t.strip_prefix('(') {
        if let Some((inner, exp)) = rest.rsplit_once(")^") {
            if let (Ok(n), Ok(u)) = (exp.trim().parse::<u32>(), inner.parse::<Word>()) {
                if n > 0 && !inner.contains(')') {
                    return Ok((1..=n).map(|k| u.pow(k)).collect());
                }
            }
        }
    }
    let w = word(t)?;
    let k = w.syllable_count();
    Ok((1..=k).map(|j| w.slice(k - j, k)).collect())
}

fn sweep(a: &SweepArgs, policy: SignPolicy) -> Result<String, CliError> {
    let lit = |s: &str| s.parse::<Rational>().map_err(|e| CliError::Usage(format!("bad literal `{s}`: {e}")));
    let (from, to, step) = (lit(&a.from)?, lit(&a.to)?, lit(&a.step)?);
    if !step.is_positive() || from > to {
        return Err(CliError::Usage("sweep needs from <= to and a positive step".into()));
    }
    let t = load_table(&a.table, policy)?;
    let mu = resolve_mu(&t, a.mu.as_deref())?;
    let mut grid = Vec::new();
    let mut x = from;
    while x <= to {
        grid.push(x.clone());
        x = &x + &step;
    }
    let opts = CertOptions { cap: a.cap, policy, no_symmetry: false };
    let rows: Vec<String> = thread_pool()?.install(|| {
        grid.par_iter()
            .map(|l| {
                let lambda = GaussianRational::real(l.clone());
                let row = |status: &str, s: String, k: String, w: String| format!("{l},{mu},{status},{s},{k},{w}");
                match pingpong_core::pingpong::certify_bound(&t, &lambda, &mu, &opts) {
                    Ok(r) => row(
                        "ok",
                        r.certified_syllables.to_string(),
                        r.guaranteed_subword_exponent.to_string(),
                        r.failure_witness.map(|w| w.to_string()).unwrap_or_default(),
                    ),
                    Err(e) => {
                        let status = match e {
                            Error::DomainGate(_) => "domain-gate",
                            Error::PrerequisiteFailed(_) => "prerequisite-failed",
                            Error::Undecidable(_) => "undecidable",
                            _ => "error",
                        };
                        row(status, String::new(), String::new(), String::new())
                    }
                }
            })
            .collect()
    });
    let mut out = String::from("lambda,mu,status,certified_syllables,guaranteed_subword_exponent,failure_witness\n");
    for r in rows {
        out.push_str(&r);
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbit_steps_follow_powers_and_suffixes() {
        let p = orbit_steps("(a b^-1)^3").unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p[2], "(a b^-1)^3".parse().unwrap());
        let s = orbit_steps("a^2 b").unwrap();
        assert_eq!(s, vec!["b".parse().unwrap(), "a^2 b".parse().unwrap()]);
        assert_eq!(orbit_steps("(a b)^2 a").unwrap().len(), 5);
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
