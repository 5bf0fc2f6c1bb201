//! Command-line front end: `list` and `verify`.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::identities::{find, registry, run_check, CheckReport, IdentityCheck, Sizes};
use crate::scalar::SamplerConfig;

/// Upper bounds accepted for the size overrides.
pub const MAX_N: usize = 8;
pub const MAX_M: usize = 4;
pub const MAX_ORDER: usize = 20;
pub const MAX_HEIGHT: u32 = 1_000_000;

#[derive(Debug, Parser)]
#[command(
    name = "qhyper",
    version,
    about = "Exact verification of basic hypergeometric identities"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the registered identities.
    List,
    /// Verify identities at random rational points.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Identity id to verify; repeatable.
    #[arg(long = "identity", value_name = "ID")]
    pub identities: Vec<String>,
    /// Verify every registered identity.
    #[arg(long)]
    pub all: bool,
    /// Random points per identity.
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    /// Master seed; each trial derives its own.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Override of the largest polynomial degree or matrix order.
    #[arg(long)]
    pub nmax: Option<usize>,
    /// Override of the largest half-order of skew matrices.
    #[arg(long)]
    pub mmax: Option<usize>,
    /// Override of the series truncation order.
    #[arg(long)]
    pub order: Option<usize>,
    /// Bound on numerators and denominators of sampled rationals.
    #[arg(long)]
    pub height: Option<u32>,
    /// Write the JSON report here.
    #[arg(long, value_name = "PATH")]
    pub json: Option<PathBuf>,
}

/// A validated verification request.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub checks: Vec<IdentityCheck>,
    pub suite: String,
    pub trials: usize,
    pub seed: u64,
    pub sizes: Sizes,
    pub sampler: SamplerConfig,
    pub output: Option<PathBuf>,
}

impl SuiteConfig {
    pub fn from_args(args: &VerifyArgs) -> Result<Self> {
        if args.all == !args.identities.is_empty() {
            return Err(Error::Config(
                "give either --all or at least one --identity".into(),
            ));
        }
        let bounded = |v: Option<usize>, max: usize, flag: &str| match v {
            Some(x) if x > max => Err(Error::Config(format!("--{flag} {x} exceeds the cap {max}"))),
            _ => Ok(v),
        };
        let sizes = Sizes {
            n_max: bounded(args.nmax, MAX_N, "nmax")?,
            m_max: bounded(args.mmax, MAX_M, "mmax")?,
            order: bounded(args.order, MAX_ORDER, "order")?,
        };
        if sizes.m_max == Some(0) {
            return Err(Error::Config("--mmax must be at least 1".into()));
        }
        let mut sampler = SamplerConfig::default();
        if let Some(h) = args.height {
            if !(2..=MAX_HEIGHT).contains(&h) {
                return Err(Error::Config(format!(
                    "--height {h} must lie in 2..={MAX_HEIGHT}"
                )));
            }
            sampler.height = h;
        }
        let (checks, suite) = if args.all {
            (registry(), "all".to_string())
        } else {
            let checks = args
                .identities
                .iter()
                .map(|id| find(id))
                .collect::<Result<Vec<_>>>()?;
            (checks, args.identities.join(","))
        };
        Ok(SuiteConfig {
            checks,
            suite,
            trials: args.trials,
            seed: args.seed,
            sizes,
            sampler,
            output: args.json.clone(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub id: String,
    #[serde(rename = "paper_anchor")]
    pub anchor: String,
    pub trials: usize,
    pub failures: usize,
    pub witness_seeds: Vec<u64>,
    pub millis: u64,
}

impl From<&CheckReport> for ReportEntry {
    fn from(r: &CheckReport) -> Self {
        ReportEntry {
            id: r.id.clone(),
            anchor: r.anchor.clone(),
            trials: r.trials,
            failures: r.failures,
            witness_seeds: r.witness_seeds.clone(),
            millis: r.millis,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub results: Vec<ReportEntry>,
}

impl SuiteReport {
    pub fn failures(&self) -> usize {
        self.results.iter().map(|r| r.failures).sum()
    }
}

/// One line per identity: id, anchor, default sizes.
pub fn cmd_list() -> String {
    let reg = registry();
    let width = reg.iter().map(|c| c.id.len()).max().unwrap_or(0);
    let mut out = String::new();
    for c in &reg {
        out.push_str(&format!(
            "{:width$}  {}  [{}]\n",
            c.id, c.anchor, c.defaults
        ));
    }
    out
}

/// Runs the suite, printing one summary line per identity to `log`.
pub fn cmd_verify(config: &SuiteConfig, log: &mut impl Write) -> Result<SuiteReport> {
    let mut results = Vec::with_capacity(config.checks.len());
    for check in &config.checks {
        let r = run_check(
            check,
            config.trials,
            config.seed,
            &config.sizes,
            config.sampler,
        );
        let status = if r.failures == 0 { "ok" } else { "FAIL" };
        writeln!(
            log,
            "{status:4} {:28} {}/{} passed  {} ms",
            r.id, r.passes, r.trials, r.millis
        )
        .map_err(|e| Error::Config(e.to_string()))?;
        results.push(ReportEntry::from(&r));
    }
    let report = SuiteReport {
        suite: config.suite.clone(),
        seed: config.seed,
        results,
    };
    if let Some(path) = &config.output {
        let text =
            serde_json::to_string_pretty(&report).map_err(|e| Error::Config(e.to_string()))?;
        std::fs::write(path, text + "\n")
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    }
    Ok(report)
}

/// Parses `argv` and runs; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match cli.command {
        Command::List => {
            print!("{}", cmd_list());
            0
        }
        Command::Verify(args) => {
            let config = match SuiteConfig::from_args(&args) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("error: {e}");
                    return 2;
                }
            };
            match cmd_verify(&config, &mut std::io::stdout()) {
                Ok(report) if report.failures() == 0 => 0,
                Ok(_) => 1,
                Err(e) => {
                    eprintln!("error: {e}");
                    2
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(extra: &[&str]) -> VerifyArgs {
        let mut argv = vec!["qhyper", "verify"];
        argv.extend_from_slice(extra);
        match Cli::try_parse_from(argv).unwrap().command {
            Command::Verify(a) => a,
            Command::List => unreachable!(),
        }
    }

    #[test]
    fn list_covers_registry() {
        let text = cmd_list();
        assert!(text.contains("main_quadratic"));
        assert!(text.contains("gram_det"));
        assert!(text.lines().count() >= 18);
    }

    #[test]
    fn defaults() {
        let a = args(&["--all"]);
        assert_eq!((a.trials, a.seed), (20, 0));
        let c = SuiteConfig::from_args(&a).unwrap();
        assert_eq!(c.checks.len(), registry().len());
        assert_eq!(c.sampler, SamplerConfig::default());
    }

    #[test]
    fn config_errors() {
        for bad in [
            &[][..],
            &["--all", "--identity", "gram_det"][..],
            &["--identity", "nope"][..],
            &["--all", "--nmax", "99"][..],
            &["--all", "--mmax", "0"][..],
            &["--all", "--height", "1"][..],
        ] {
            assert!(SuiteConfig::from_args(&args(bad)).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn report_schema() {
        let c = SuiteConfig::from_args(&args(&[
            "--identity",
            "ten_factor_polynomial",
            "--trials",
            "2",
            "--seed",
            "3",
        ]))
        .unwrap();
        let report = cmd_verify(&c, &mut Vec::new()).unwrap();
        let v: serde_json::Value = serde_json::to_value(&report).unwrap();
        assert_eq!(v["suite"], "ten_factor_polynomial");
        assert_eq!(v["seed"], 3);
        let entry = &v["results"][0];
        for key in [
            "id",
            "paper_anchor",
            "trials",
            "failures",
            "witness_seeds",
            "millis",
        ] {
            assert!(entry.get(key).is_some(), "{key}");
        }
        assert_eq!(entry["failures"], 0);
    }
}
