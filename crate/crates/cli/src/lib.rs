//! The `pg` command line: argument definitions and command execution.

pub mod config;

use std::io::Write;

use clap::{Args, Parser, Subcommand};
use pg_core::cache::PairCache;
use pg_core::claims::{self, ClaimReport, Status};
use pg_core::families::{self, Family};
use pg_core::profinite::{Tower, TowerElement, TowerKind, Verdict};
use pg_core::rational::{self, to_text};
use pg_core::structure;
use pg_core::{Built, Error, GroupSpec, Word};

use config::{Config, ConfigError, Layer};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "pg", version, about = "Exact computations in finite permutation groups")]
pub struct Cli {
    /// Configuration file of key=value lines (cap, threads, cache_bytes).
    #[arg(long, global = true)]
    pub config: Option<String>,
    /// Largest group order to enumerate.
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Byte budget for the pair-subgroup cache.
    #[arg(long, global = true)]
    pub cache_bytes: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a group and print its order.
    Build {
        spec: String,
        /// Also print degree, center size and solvable/nilpotent flags.
        #[arg(long)]
        info: bool,
    },
    /// Size and measure of a family-set or Λ-set of an element.
    Set(SetArgs),
    /// Structural subgroups.
    Struct {
        spec: String,
        /// chief, sylow:<p>, op:<p>, fitting, radical or hypercenter.
        #[arg(long)]
        compute: String,
    },
    /// Chief-factor centralization counts of an element, as JSON.
    Tau {
        spec: String,
        #[arg(long)]
        element: String,
    },
    /// Certified measure interval on a direct-product tower.
    Measure {
        tower: String,
        #[arg(long)]
        element: String,
        #[arg(long)]
        family: String,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        epsilon: Option<String>,
    },
    /// Run registered claims.
    Verify {
        /// A claim id, or `all`.
        #[arg(default_value = "all")]
        claim: String,
        /// Write the reports as a JSON array to this path.
        #[arg(long)]
        json: Option<String>,
    },
}

#[derive(Debug, Args)]
#[group(id = "kind", required = true, multiple = false)]
pub struct SetKind {
    #[arg(long, group = "kind")]
    pub family: Option<String>,
    /// Λ_{G,p}: conjugates generating a p-group with the element.
    #[arg(long, group = "kind")]
    pub lambda: Option<u64>,
    /// Λ_G: conjugates generating a nilpotent group with the element.
    #[arg(long, group = "kind")]
    pub lambdanil: bool,
}

#[derive(Debug, Args)]
pub struct SetArgs {
    pub spec: String,
    #[command(flatten)]
    pub kind: SetKind,
    #[arg(long)]
    pub element: String,
    /// Recompute a family-set by enumerating every two-generated subgroup and compare.
    #[arg(long)]
    pub cross_check: bool,
}

/// Why a command stopped.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Cap(String),
    Fail(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Cap(_) => EXIT_CAP,
            Failure::Fail(_) => EXIT_FAIL,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_cap_exceeded() {
            Failure::Cap(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Fail(e.to_string())
    }
}

type Outcome = Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command. Returns the exit code.
pub fn run<I, T>(args: I, env_cap: Option<&str>, out: &mut (dyn Write + Send), err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match execute(&cli, env_cap, out) {
        Ok(code) => code,
        Err(f) => {
            let msg = match &f {
                Failure::Usage(m) | Failure::Cap(m) | Failure::Fail(m) => m,
            };
            let _ = writeln!(err, "error: {msg}");
            f.code()
        }
    }
}

pub fn resolve_config(cli: &Cli, env_cap: Option<&str>) -> Result<Config, ConfigError> {
    let file = cli.config.as_deref().map(config::load).transpose()?;
    let flags = Layer { cap: cli.cap, threads: cli.threads, cache_bytes: cli.cache_bytes };
    Config::resolve(file.as_ref(), env_cap, &flags)
}

fn execute(cli: &Cli, env_cap: Option<&str>, out: &mut (dyn Write + Send)) -> Outcome {
    let cfg = resolve_config(cli, env_cap)?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cfg.threads {
        pool = pool.num_threads(n);
    }
    let pool = pool.build().map_err(|e| Failure::Fail(e.to_string()))?;
    pool.install(|| dispatch(&cli.command, &cfg, out))
}

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

fn build(spec: &str, cfg: &Config) -> Result<Built, Failure> {
    Ok(spec.parse::<GroupSpec>()?.build(cfg.cap)?)
}

fn element(b: &Built, word: &str) -> Result<usize, Failure> {
    Ok(word.parse::<Word>()?.eval(&b.group)?)
}

fn dispatch(cmd: &Command, cfg: &Config, out: &mut (dyn Write + Send)) -> Outcome {
    match cmd {
        Command::Build { spec, info } => {
            let b = build(spec, cfg)?;
            let g = &b.group;
            writeln!(out, "order: {}", g.order())?;
            if *info {
                writeln!(out, "degree: {}", g.degree())?;
                writeln!(out, "generators: {}", g.generators().len())?;
                writeln!(out, "center: {}", g.center().order())?;
                writeln!(out, "solvable: {}", structure::is_solvable(g, &g.whole()))?;
                writeln!(out, "nilpotent: {}", structure::is_nilpotent(g, &g.whole()))?;
            }
            Ok(EXIT_PASS)
        }
        Command::Set(a) => set(a, cfg, out),
        Command::Struct { spec, compute } => {
            let b = build(spec, cfg)?;
            let g = &b.group;
            let prime = |s: &str| -> Result<u64, Failure> {
                let p: u64 = s.parse().map_err(|_| Failure::Usage(format!("invalid prime {s:?}")))?;
                if !pg_core::arith::is_prime(p) {
                    return Err(Failure::Usage(format!("{p} is not prime")));
                }
                Ok(p)
            };
            let sub = match compute.split_once(':') {
                None if compute == "chief" => {
                    let series = structure::chief_series(g);
                    for f in &series.factors {
                        match f.prime {
                            Some(p) => writeln!(out, "{} abelian p={p}", f.order)?,
                            None => writeln!(out, "{} nonabelian", f.order)?,
                        }
                    }
                    writeln!(out, "length: {}", series.len())?;
                    return Ok(EXIT_PASS);
                }
                None if compute == "fitting" => structure::fitting(g),
                None if compute == "radical" => structure::solvable_radical(g),
                None if compute == "hypercenter" => structure::hypercenter(g),
                Some(("sylow", p)) => structure::sylow(g, prime(p)?),
                Some(("op", p)) => structure::o_p(g, prime(p)?),
                _ => return Err(Failure::Usage(format!("unknown --compute value {compute:?}"))),
            };
            writeln!(out, "order: {}", sub.order())?;
            Ok(EXIT_PASS)
        }
        Command::Tau { spec, element: w } => {
            let b = build(spec, cfg)?;
            let x = element(&b, w)?;
            let report = families::tau_stats(&b.group, x, &structure::chief_series(&b.group));
            writeln!(out, "{}", serde_json::to_string_pretty(&report).map_err(|e| Failure::Fail(e.to_string()))?)?;
            Ok(EXIT_PASS)
        }
        Command::Measure { tower, element: lit, family, depth, epsilon } => {
            let kind: TowerKind = tower.parse()?;
            let e: TowerElement = lit.parse()?;
            let family: Family = family.parse()?;
            let t = Tower::new(kind, cfg.cap);
            let iv = t.measure_interval(&e, family, *depth)?;
            writeln!(out, "lo: {}", to_text(&iv.lo))?;
            writeln!(out, "hi: {}", to_text(&iv.hi))?;
            writeln!(out, "depth: {}", iv.depth)?;
            if let Some(eps) = epsilon {
                let eps = rational::parse(eps)?;
                let v = t.f_epsilon_membership(&e, family, &eps, *depth)?;
                let word = match v {
                    Verdict::Yes => "yes",
                    Verdict::No => "no",
                    Verdict::Unknown => "unknown",
                };
                writeln!(out, "verdict: {word}")?;
            }
            Ok(EXIT_PASS)
        }
        Command::Verify { claim, json } => verify(claim, json.as_deref(), cfg, out),
    }
}

fn set(a: &SetArgs, cfg: &Config, out: &mut (dyn Write + Send)) -> Outcome {
    let b = build(&a.spec, cfg)?;
    let g = &b.group;
    let x = element(&b, &a.element)?;
    let k = &a.kind;
    let s = if let Some(f) = &k.family {
        let family: Family = f.parse()?;
        let fast = families::f_set(g, x, family);
        if a.cross_check {
            let cache = PairCache::new(cfg.cache_bytes);
            if families::f_set_by_closure(g, x, family, &cache) != fast {
                return Err(Failure::Fail(format!("{family}: element-level and closure routes disagree")));
            }
            writeln!(out, "cross-check: agree")?;
        }
        fast
    } else if let Some(p) = k.lambda {
        if !pg_core::arith::is_prime(p) {
            return Err(usage(format!("{p} is not prime")));
        }
        families::lambda_p_set(g, x, p)?
    } else {
        families::lambda_nil_set(g, x)
    };
    writeln!(out, "size: {}", s.card())?;
    writeln!(out, "measure: {}", to_text(&families::fraction(&s)))?;
    Ok(EXIT_PASS)
}

fn verify(claim: &str, json: Option<&str>, cfg: &Config, out: &mut (dyn Write + Send)) -> Outcome {
    let reports: Vec<ClaimReport> =
        if claim == "all" { claims::run_all(cfg.cap) } else { vec![claims::run_claim(claim, cfg.cap)?] };
    for r in &reports {
        let tag = match &r.status {
            Status::Pass => "PASS".to_string(),
            Status::Fail => "FAIL".to_string(),
            Status::Skipped(why) => format!("SKIP ({why})"),
        };
        writeln!(out, "{tag} {}: {} (expected {}) [{} ms]", r.id, r.computed, r.expected, r.runtime_ms)?;
    }
    if let Some(path) = json {
        let text = serde_json::to_string_pretty(&reports).map_err(|e| Failure::Fail(e.to_string()))?;
        std::fs::write(path, text + "\n")?;
    }
    Ok(if reports.iter().any(|r| r.status == Status::Fail) {
        EXIT_FAIL
    } else if reports.iter().any(|r| matches!(r.status, Status::Skipped(_))) {
        EXIT_CAP
    } else {
        EXIT_PASS
    })
}
