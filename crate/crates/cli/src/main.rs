//! `hk`: command-line front end for the Hilbert-Kunz engine.
//!
//! Exit codes: 0 success, 2 parse error, 3 precondition violation,
//! 4 verification mismatch.

mod report;

use std::io::{self, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Map, Value};

use hk_core::closedform::{default_q_list, verify_family, CubicFamily};
use hk_core::hankel::{corollary_check, geronimus_check};
use hk_core::properties::{run_property_suite, SuiteConfig, DEFAULT_SEED};
use hk_core::series::{beta, format_rational, lower_bound_l, m_of_q};
use hk_core::{hk_profile_with, EngineOptions, Error, Execution, MultiPoly, PrimeField, RankStrategy};

use report::{BetaRow, BoundRow, CsvRow, Format, HankelRow, ProfileRow, PropertyRow, Report};

const EXIT_PARSE: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;
const EXIT_MISMATCH: u8 = 4;

#[derive(Parser)]
#[command(name = "hk", version, about = "Exact Hilbert-Kunz functions of hypersurfaces over prime fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Common {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Run on one thread.
    #[arg(long)]
    sequential: bool,
}

impl Common {
    fn execution(self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Auto,
    Direct,
    Normalized,
}

impl From<StrategyArg> for RankStrategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Auto => RankStrategy::Auto,
            StrategyArg::Direct => RankStrategy::Direct,
            StrategyArg::Normalized => RankStrategy::Normalized,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Full HK profile of a form at each q.
    Compute {
        #[arg(long)]
        prime: u64,
        /// Comma-separated variable names.
        #[arg(long, value_delimiter = ',', required = true)]
        vars: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        /// Comma-separated q values.
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u64>,
        #[arg(long, value_enum, default_value = "auto")]
        strategy: StrategyArg,
        #[command(flatten)]
        common: Common,
    },
    /// Engine vs closed form on a family's reference equation.
    Verify {
        #[arg(long, value_parser = parse_family)]
        family: CubicFamily,
        #[arg(long)]
        prime: u64,
        /// Largest q; defaults to p^2 for curves tied to Frobenius powers, 8 otherwise.
        #[arg(long)]
        qmax: Option<u64>,
        #[arg(long, value_enum, default_value = "auto")]
        strategy: StrategyArg,
        #[command(flatten)]
        common: Common,
    },
    /// Hankel-determinant identities for the Legendre sequences, k = 1..=kmax.
    Hankel {
        #[arg(long)]
        kmax: u64,
        /// Check mod this odd prime instead of over Q.
        #[arg(long)]
        prime: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Exact limits beta_1 ..= beta_nmax.
    Beta {
        #[arg(long)]
        nmax: u32,
        #[command(flatten)]
        common: Common,
    },
    /// m(q) and the lower bound L(q).
    Bound {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Randomized property suite over small instances.
    Properties {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
}

fn parse_family(s: &str) -> Result<CubicFamily, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// A failed run: diagnostics already carry the exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Parse { .. }) { EXIT_PARSE } else { EXIT_PRECONDITION };
        Failure { code, message: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure { code: 1, message: e.to_string() }
    }
}

struct Outcome<R> {
    parameters: Map<String, Value>,
    rows: Vec<R>,
    ok: bool,
}

fn emit<R: Serialize + CsvRow>(name: &str, common: Common, start: Instant, out: Outcome<R>) -> Result<bool, Failure> {
    let report = Report {
        command: name.to_string(),
        parameters: out.parameters,
        rows: out.rows,
        timing_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    report::write(&report, common.format, &mut lock)?;
    lock.flush()?;
    Ok(out.ok)
}

fn params(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => Map::new(),
    }
}

fn compute(
    prime: u64,
    vars: &[String],
    poly: &str,
    qs: &[u64],
    strategy: StrategyArg,
    common: Common,
) -> Result<Outcome<ProfileRow>, Failure> {
    let field = PrimeField::new(prime)?;
    let names: Vec<&str> = vars.iter().map(String::as_str).collect();
    let f = MultiPoly::parse(poly, &names, field)?;
    let opts = EngineOptions::new(strategy.into(), common.execution());
    let mut qs = qs.to_vec();
    qs.sort_unstable();
    qs.dedup();
    let mut rows = Vec::with_capacity(qs.len());
    for &q in &qs {
        rows.push(ProfileRow::new(&hk_profile_with(&f, q, &opts)?, None));
    }
    let parameters = params(json!({
        "prime": prime,
        "vars": vars,
        "poly": f.display_with(&names).to_string(),
        "q": qs,
    }));
    Ok(Outcome { parameters, rows, ok: true })
}

fn verify(
    family: CubicFamily,
    prime: u64,
    qmax: Option<u64>,
    strategy: StrategyArg,
    common: Common,
) -> Result<Outcome<ProfileRow>, Failure> {
    family.check_characteristic(prime)?;
    PrimeField::new(prime)?;
    let qmax = qmax.unwrap_or(if family.holds_for_all_q() { 8 } else { prime * prime });
    let qs = default_q_list(family, prime, qmax);
    if qs.is_empty() {
        return Err(Error::PreconditionViolated(format!("no admissible q up to {qmax}")).into());
    }
    let opts = EngineOptions::new(strategy.into(), common.execution());
    let report = verify_family(family, prime, &qs, &opts)?;
    let rows = report.rows.iter().map(|r| ProfileRow::new(&r.profile, Some((r.formula, r.matches)))).collect();
    let parameters = params(json!({
        "family": family.as_str(),
        "prime": prime,
        "qmax": qmax,
        "poly": report.polynomial,
    }));
    Ok(Outcome { parameters, rows, ok: report.all_match() })
}

fn hankel(kmax: u64, prime: Option<u64>) -> Result<Outcome<HankelRow>, Failure> {
    if kmax == 0 {
        return Err(Error::BadParameter("kmax must be at least 1".into()).into());
    }
    let field = prime.map_or("Q".to_string(), |p| format!("F_{p}"));
    let mut rows = Vec::new();
    for k in 1..=kmax {
        let checks = [
            ("legendre", geronimus_check(k as usize, prime)?),
            ("tilde_legendre", corollary_check(k as usize, prime)?),
        ];
        for (identity, holds) in checks {
            rows.push(HankelRow { identity: identity.into(), field: field.clone(), k, holds });
        }
    }
    let ok = rows.iter().all(|r| r.holds);
    Ok(Outcome { parameters: params(json!({ "kmax": kmax, "prime": prime })), rows, ok })
}

fn betas(nmax: u32) -> Result<Outcome<BetaRow>, Failure> {
    let mut rows = Vec::new();
    for vars in 1..=nmax {
        let b = beta(vars)?;
        let approx = b.to_f64().unwrap_or(f64::NAN);
        rows.push(BetaRow { vars, beta: format_rational(&b), approx });
    }
    Ok(Outcome { parameters: params(json!({ "nmax": nmax })), rows, ok: true })
}

fn bound(n: u32, d: u32, qs: &[u64]) -> Result<Outcome<BoundRow>, Failure> {
    if n == 0 || d == 0 || qs.contains(&0) {
        return Err(Error::PreconditionViolated("n, d and q must be at least 1".into()).into());
    }
    let mut qs = qs.to_vec();
    qs.sort_unstable();
    qs.dedup();
    let rows =
        qs.iter().map(|&q| BoundRow { n, d, q, m: m_of_q(n, d, q), l: lower_bound_l(n, d, q).to_string() }).collect();
    Ok(Outcome { parameters: params(json!({ "n": n, "d": d, "q": qs })), rows, ok: true })
}

fn properties(seed: u64, common: Common) -> Result<Outcome<PropertyRow>, Failure> {
    let cfg = SuiteConfig { seed, execution: common.execution(), ..SuiteConfig::default() };
    let report = run_property_suite(&cfg)?;
    let rows = report
        .instances
        .iter()
        .map(|i| PropertyRow {
            p: i.p,
            n: i.n,
            d: i.d,
            q: i.q,
            polynomial: i.polynomial.clone(),
            hk: i.hk,
            passed: i.passed(),
            failures: i.failures().map(|p| p.as_str().to_string()).collect(),
        })
        .collect();
    let parameters = params(json!({
        "seed": seed,
        "primes": cfg.primes,
        "n": cfg.ns,
        "d": cfg.degrees,
        "q": cfg.qs,
        "per_cell": cfg.per_cell,
        "coordinate_changes": cfg.coordinate_changes,
    }));
    Ok(Outcome { parameters, rows, ok: report.passed() })
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let start = Instant::now();
    match cli.command {
        Command::Compute { prime, vars, poly, q, strategy, common } => {
            emit("compute", common, start, compute(prime, &vars, &poly, &q, strategy, common)?)
        }
        Command::Verify { family, prime, qmax, strategy, common } => {
            emit("verify", common, start, verify(family, prime, qmax, strategy, common)?)
        }
        Command::Hankel { kmax, prime, common } => emit("hankel", common, start, hankel(kmax, prime)?),
        Command::Beta { nmax, common } => emit("beta", common, start, betas(nmax)?),
        Command::Bound { n, d, q, common } => emit("bound", common, start, bound(n, d, &q)?),
        Command::Properties { seed, common } => emit("properties", common, start, properties(seed, common)?),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_PARSE } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("hk: verification mismatch");
            ExitCode::from(EXIT_MISMATCH)
        }
        Err(f) => {
            eprintln!("hk: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
