use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mlk_cli::commands::{self, DjpFlags, Output, PrimeFlags};
use mlk_cli::input::{load_config, parse_big, parse_factors, parse_rational};
use mlk_cli::{render, suite, CliResult, Failure};
use mlk_core::obstructions::Variant;

/// Periods, Hodge-theoretic indices and explicit lattice constructions for
/// Brauer classes on hyperkähler lattices.
#[derive(Parser)]
#[command(name = "mlk", version)]
struct Cli {
    /// Indented JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Period, Mukai and symmetric-power indices of a configuration.
    Index(ConfigArgs),
    /// Explicit classes.
    #[command(subcommand)]
    Construct(Construct),
    /// Congruence conditions.
    #[command(subcommand)]
    Check(CheckCmd),
    /// Exact pairing identities.
    #[command(subcommand)]
    Verify(Verify),
    /// Bounds assembled from prime factors.
    #[command(subcommand)]
    Report(ReportCmd),
    /// Run the acceptance criteria; exits 3 if any fails.
    Suite {
        /// Run only this criterion.
        #[arg(long)]
        only: Option<u8>,
    },
}

#[derive(Args)]
struct ConfigArgs {
    #[arg(long)]
    config: PathBuf,
    /// Override the config's n.
    #[arg(long)]
    n: Option<u32>,
}

#[derive(Args)]
struct PrimeArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    m: u32,
    #[arg(long, default_value_t = 1)]
    nu: u64,
    #[arg(long)]
    epsilon: Option<u8>,
}

impl PrimeArgs {
    fn flags(&self) -> PrimeFlags {
        PrimeFlags { p: self.p, m: self.m, nu: self.nu, epsilon: self.epsilon }
    }
}

#[derive(Subcommand)]
enum Construct {
    /// η in T(X) orthogonal to b.
    Eta(ConfigArgs),
    /// b′ for h = first NS basis row.
    Bprime {
        #[command(flatten)]
        config: ConfigArgs,
        #[command(flatten)]
        prime: PrimeArgs,
    },
}

#[derive(Subcommand)]
enum CheckCmd {
    /// Conditions for e = q(b′), given directly or through a config.
    Ogrady {
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        prime: PrimeArgs,
        #[arg(long, default_value_t = 2)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        e: Option<String>,
    },
    /// Integrality records and the λ₁ solver.
    Djp {
        #[arg(long)]
        dim: u32,
        #[arg(long, default_value = "delta")]
        variant: String,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        ell: u64,
        #[arg(long, allow_hyphen_values = true)]
        qb: String,
        #[arg(long = "cF", alias = "cf", allow_hyphen_values = true)]
        c_f: String,
    },
}

#[derive(Subcommand)]
enum Verify {
    /// Defining property, splitting formula and w-identities.
    Identities(ConfigArgs),
}

#[derive(Subcommand)]
enum ReportCmd {
    /// ∏ p^{mn} with the branch used for each factor.
    Split {
        /// Comma-separated p^m list.
        #[arg(long)]
        factors: Option<String>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = 2)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        qb: Option<String>,
    },
}

fn dispatch(cmd: Command) -> CliResult<Output> {
    match cmd {
        Command::Index(a) => commands::index(&load_config(&a.config, a.n)?),
        Command::Construct(Construct::Eta(a)) => commands::construct_eta(&load_config(&a.config, a.n)?),
        Command::Construct(Construct::Bprime { config, prime }) => {
            commands::construct_bprime(&load_config(&config.config, config.n)?, prime.flags())
        }
        Command::Check(CheckCmd::Ogrady { config, prime, n, e }) => {
            let cfg = config.map(|p| load_config(&p, Some(n))).transpose()?;
            let e = e.map(|e| parse_big("e", &e)).transpose()?;
            commands::check_ogrady(cfg.as_ref(), prime.flags(), n, e)
        }
        Command::Check(CheckCmd::Djp { dim, variant, r, ell, qb, c_f }) => {
            let variant: Variant = variant.parse().map_err(|e: mlk_core::Error| Failure::malformed(e.to_string()))?;
            let flags = DjpFlags { dim, variant, r, ell, qb: parse_big("qb", &qb)?, c_f: parse_rational("cF", &c_f)? };
            commands::check_djp(&flags)
        }
        Command::Verify(Verify::Identities(a)) => commands::verify_identities(&load_config(&a.config, a.n)?),
        Command::Report(ReportCmd::Split { factors, p, m, n, qb }) => {
            let mut list = factors.as_deref().map(parse_factors).transpose()?.unwrap_or_default();
            if let Some(p) = p {
                list.push((p, m));
            }
            let qb = qb.map(|q| parse_big("qb", &q)).transpose()?;
            commands::report_split(&list, n, qb.as_ref())
        }
        Command::Suite { only } => {
            let picked: Vec<_> = suite::CRITERIA.iter().filter(|c| only.is_none_or(|o| o == c.0)).collect();
            if picked.is_empty() {
                return Err(Failure::malformed("--only must name a criterion 1..=10"));
            }
            let outcomes: Vec<_> = picked.into_iter().map(suite::run_one).collect();
            for o in &outcomes {
                eprintln!("{}", o.line());
            }
            let fixtures = suite::fixture_outcomes();
            for (name, ok, msg) in &fixtures {
                eprintln!("[{}] fixture {name} {msg}", if *ok { "PASS" } else { "FAIL" });
            }
            let mut v = suite::suite_json(&outcomes);
            let fixtures_pass = fixtures.iter().all(|f| f.1);
            v["fixtures"] = serde_json::json!(fixtures
                .iter()
                .map(|(name, ok, msg)| serde_json::json!({"name": name, "pass": ok, "detail": msg}))
                .collect::<Vec<_>>());
            v["all_pass"] = (v["all_pass"].as_bool().unwrap_or(false) && fixtures_pass).into();
            let pass = v["all_pass"] == true;
            Ok(Output { value: v, code: if pass { 0 } else { mlk_cli::EXIT_INTERNAL } })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(mlk_cli::EXIT_MALFORMED as u8);
        }
    };
    match dispatch(cli.command) {
        Ok(out) => {
            println!("{}", render(&out.value, cli.pretty));
            ExitCode::from(out.code as u8)
        }
        Err(f) => {
            println!("{}", render(&f.to_json(), cli.pretty));
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code as u8)
        }
    }
}
