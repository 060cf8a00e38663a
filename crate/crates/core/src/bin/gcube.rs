use std::fs;
use std::io::Write;
use std::num::NonZeroUsize;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use gcube::asymptotics::{leading_coefficient_table, write_sweep_csv, AsymptoticReport, SWEEP_CSV_HEADER};
use gcube::cache::{solver_config_hash, CacheEntry, ResultCache};
use gcube::entropy::{
    binomial_entropy, binomial_entropy_bounds, decreasing_rearrangement_exact, entropy, pmf_signed_sum,
    SignedBernoulliSum,
};
use gcube::format::{human_number, json_array, json_number};
use gcube::gowers::{energy_e, energy_e_tilde, energy_p, gowers_norm_pow};
use gcube::io::{function_from_json, set_from_json};
use gcube::solver::solve_exponent;
use gcube::terms::{enumerate_tuple_classes, pmf_of_tuple, TermTable};
use gcube::verify::{run_suite, SuiteReport};
use gcube::{ExponentPair, GcubeError, SolverConfig};

#[derive(Parser, Debug)]
#[command(name = "gcube", version, about = "Gowers norms, additive energies and their sharp exponents")]
struct Cli {
    /// Bisection tolerance on t, in (0, 1e-3].
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// JSON-lines file of earlier solver results.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    #[arg(long, global = true)]
    threads: Option<NonZeroUsize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum EnergyKind {
    #[value(name = "P")]
    P,
    #[value(name = "E")]
    E,
    #[value(name = "Etilde")]
    ETilde,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// ‖f‖_{U^k}^{2^k} and ‖f‖_{U^k} of a function read from JSON.
    Norm {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Exact P_k, E_k or Ẽ_k of a set read from JSON.
    Energy {
        #[arg(long)]
        set: PathBuf,
        #[arg(long, value_enum)]
        kind: EnergyKind,
        #[arg(long)]
        k: usize,
    },
    /// Solve for t_{k,n} and p_{k,n}.
    Exponent {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        #[arg(long)]
        csv: bool,
        /// Search symmetric g only.
        #[arg(long)]
        symmetric: bool,
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long)]
        multistart: Option<usize>,
    },
    /// Binomial entropy H_m with bounds, or the law of a signed Bernoulli sum.
    Entropy {
        #[arg(long, conflicts_with = "signed", required_unless_present = "signed")]
        binomial: Option<usize>,
        /// Comma-separated nonzero coefficients, e.g. 1,-1,2.
        #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
        signed: Option<Vec<i64>>,
    },
    /// Tuple classes T_{n,l} and the grouped terms of the objective.
    Terms {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long)]
        json: bool,
    },
    /// The leading coefficients (n-1)/H_{n-1}.
    Table1 {
        #[arg(long, default_value_t = 6)]
        n_max: usize,
    },
    /// Solver values against the large-k main term.
    Asym {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<usize>,
        /// Also write the table as CSV to this file.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        suite: String,
    },
}

enum Failure {
    Usage(String),
    Verification,
    Numeric(String),
}

impl From<GcubeError> for Failure {
    fn from(e: GcubeError) -> Self {
        match e {
            GcubeError::Numeric(msg) => Failure::Numeric(msg),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numeric(msg)) => {
            eprintln!("numeric failure: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> CmdResult {
    if !(cli.tol > 0.0 && cli.tol <= 1e-3) {
        return Err(Failure::Usage(format!("--tol must lie in (0, 1e-3], got {}", cli.tol)));
    }
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads.get())
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let mut out = std::io::stdout().lock();
    match &cli.command {
        Command::Norm { f, k } => cmd_norm(&cli, &mut out, f, *k),
        Command::Energy { set, kind, k } => cmd_energy(&cli, &mut out, set, *kind, *k),
        Command::Exponent {
            k,
            n,
            json,
            csv,
            symmetric,
            grid,
            multistart,
        } => {
            let format = if *json {
                Format::Json
            } else if *csv {
                Format::Csv
            } else {
                cli.format
            };
            let mut cfg = solver_config(&cli);
            cfg.symmetric = *symmetric;
            if let Some(g) = grid {
                cfg.inner_grid_resolution = *g;
            }
            if let Some(m) = multistart {
                cfg.multistart_count = *m;
            }
            cmd_exponent(&cli, &mut out, format, &cfg, *n, *k)
        }
        Command::Entropy { binomial, signed } => cmd_entropy(&cli, &mut out, *binomial, signed.as_deref()),
        Command::Terms { n, k, json } => {
            let format = if *json { Format::Json } else { cli.format };
            cmd_terms(&mut out, format, *n, *k)
        }
        Command::Table1 { n_max } => cmd_table1(&cli, &mut out, *n_max),
        Command::Asym { n, k, csv } => cmd_asym(&cli, &mut out, *n, k, csv.as_ref()),
        Command::Verify { suite } => cmd_verify(&cli, &mut out, suite),
    }
}

fn solver_config(cli: &Cli) -> SolverConfig {
    SolverConfig {
        t_tolerance: cli.tol,
        rng_seed: cli.seed,
        ..SolverConfig::default()
    }
}

fn read(path: &PathBuf) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

fn cmd_norm(cli: &Cli, out: &mut impl Write, path: &PathBuf, k: usize) -> CmdResult {
    let f = function_from_json(&read(path)?)?;
    let pow = gowers_norm_pow(&f, k)?;
    let norm = pow.powf(1.0 / 2f64.powi(k as i32));
    match cli.format {
        Format::Human => writeln!(out, "{}\nU^{k} norm {}", human_number(pow), human_number(norm))?,
        Format::Json => writeln!(
            out,
            "{{\"k\":{k},\"norm_pow\":{},\"norm\":{}}}",
            json_number(pow),
            json_number(norm)
        )?,
        Format::Csv => writeln!(out, "k,norm_pow,norm\n{k},{},{}", json_number(pow), json_number(norm))?,
    }
    Ok(())
}

fn cmd_energy(cli: &Cli, out: &mut impl Write, path: &PathBuf, kind: EnergyKind, k: usize) -> CmdResult {
    let set = set_from_json(&read(path)?)?;
    let (name, value) = match kind {
        EnergyKind::P => ("P", energy_p(&set, k)?),
        EnergyKind::E => ("E", energy_e(&set, k)?),
        EnergyKind::ETilde => ("Etilde", energy_e_tilde(&set, k)?),
    };
    match cli.format {
        Format::Human => writeln!(out, "{value}")?,
        Format::Json => writeln!(out, "{{\"kind\":\"{name}\",\"k\":{k},\"value\":{value}}}")?,
        Format::Csv => writeln!(out, "kind,k,value\n{name},{k},{value}")?,
    }
    Ok(())
}

fn solve_cached(cli: &Cli, cfg: &SolverConfig, n: usize, k: usize) -> std::result::Result<ExponentPair, Failure> {
    let cache = cli.cache.as_ref().map(ResultCache::new);
    let params = json!({"k": k, "n": n});
    let hash = solver_config_hash(cfg);
    if let Some(cache) = &cache {
        if let Some(hit) = cache.lookup("exponent", &params, &hash, cfg.t_tolerance)? {
            if let Ok(pair) = serde_json::from_value::<ExponentPair>(hit) {
                return Ok(pair);
            }
        }
    }
    let pair = solve_exponent(n, k, cfg)?;
    if let Some(cache) = &cache {
        cache.append(&CacheEntry {
            command: "exponent".into(),
            params,
            config_hash: hash,
            tolerance: cfg.t_tolerance,
            result: serde_json::to_value(&pair).map_err(|e| Failure::Usage(e.to_string()))?,
        })?;
    }
    Ok(pair)
}

fn cmd_exponent(cli: &Cli, out: &mut impl Write, format: Format, cfg: &SolverConfig, n: usize, k: usize) -> CmdResult {
    let r = solve_cached(cli, cfg, n, k)?;
    match format {
        Format::Human => {
            writeln!(out, "t_{{{k},{n}}} = {}", human_number(r.t))?;
            writeln!(out, "p_{{{k},{n}}} = {}", human_number(r.p))?;
            writeln!(out, "residual {}", human_number(r.residual))?;
            writeln!(
                out,
                "bracket [{}, {}]",
                human_number(r.bracket[0]),
                human_number(r.bracket[1])
            )?;
            let g: Vec<String> = r.argmax.iter().map(|&x| human_number(x)).collect();
            writeln!(out, "argmax ({})", g.join(", "))?;
        }
        Format::Json => writeln!(
            out,
            "{{\"k\":{k},\"n\":{n},\"t\":{},\"p\":{},\"residual\":{},\"bracket\":{},\"argmax\":{}}}",
            json_number(r.t),
            json_number(r.p),
            json_number(r.residual),
            json_array(&r.bracket),
            json_array(&r.argmax)
        )?,
        Format::Csv => writeln!(
            out,
            "k,n,t,p,residual,bracket_lo,bracket_hi\n{k},{n},{},{},{},{},{}",
            json_number(r.t),
            json_number(r.p),
            json_number(r.residual),
            json_number(r.bracket[0]),
            json_number(r.bracket[1])
        )?,
    }
    Ok(())
}

fn cmd_entropy(cli: &Cli, out: &mut impl Write, binomial: Option<usize>, signed: Option<&[i64]>) -> CmdResult {
    if let Some(m) = binomial {
        if m == 0 {
            return Err(Failure::Usage("--binomial needs m >= 1".into()));
        }
        let h = binomial_entropy(m);
        let (lo, hi) = binomial_entropy_bounds(m)?;
        match cli.format {
            Format::Human => writeln!(
                out,
                "H_{m} = {}\nbounds ({}, {})",
                human_number(h),
                human_number(lo),
                human_number(hi)
            )?,
            Format::Json => writeln!(
                out,
                "{{\"m\":{m},\"entropy\":{},\"lower\":{},\"upper\":{}}}",
                json_number(h),
                json_number(lo),
                json_number(hi)
            )?,
            Format::Csv => writeln!(
                out,
                "m,entropy,lower,upper\n{m},{},{},{}",
                json_number(h),
                json_number(lo),
                json_number(hi)
            )?,
        }
        return Ok(());
    }
    let coefficients = signed.unwrap_or_default().to_vec();
    let sum = SignedBernoulliSum::new(coefficients.clone())?;
    let pmf = pmf_signed_sum(&sum);
    let masses: Vec<String> = pmf.masses().iter().map(|q| q.to_string()).collect();
    let sorted: Vec<String> = decreasing_rearrangement_exact(&pmf)
        .iter()
        .map(|q| q.to_string())
        .collect();
    let h = entropy(&pmf);
    match cli.format {
        Format::Human => {
            writeln!(out, "offset {}", pmf.offset())?;
            writeln!(out, "pmf {}", masses.join(" "))?;
            writeln!(out, "rearranged {}", sorted.join(" "))?;
            writeln!(out, "entropy {}", human_number(h))?;
        }
        Format::Json => {
            let quoted = |v: &[String]| v.iter().map(|s| json_string(s)).collect::<Vec<_>>().join(",");
            writeln!(
                out,
                "{{\"coefficients\":{},\"offset\":{},\"pmf\":[{}],\"rearranged\":[{}],\"entropy\":{}}}",
                serde_json::to_string(&coefficients).expect("integers serialize"),
                pmf.offset(),
                quoted(&masses),
                quoted(&sorted),
                json_number(h)
            )?;
        }
        Format::Csv => {
            writeln!(out, "value,mass")?;
            for (i, m) in masses.iter().enumerate() {
                writeln!(out, "{},{m}", pmf.offset() + i as i64)?;
            }
        }
    }
    Ok(())
}

fn cmd_terms(out: &mut impl Write, format: Format, n: usize, k: usize) -> CmdResult {
    let classes = enumerate_tuple_classes(n)?;
    let table = TermTable::new(n, k)?;
    let rationals = |q: &[num_rational::BigRational]| {
        q.iter().map(|x| json_string(&x.to_string())).collect::<Vec<_>>().join(",")
    };
    match format {
        Format::Json => {
            let mut class_docs = Vec::new();
            for c in &classes {
                let mut tuple_docs = Vec::new();
                for t in &c.tuples {
                    let q = pmf_of_tuple(n, t.a, &t.h)?;
                    tuple_docs.push(format!(
                        "{{\"a\":{},\"h\":{},\"q\":[{}]}}",
                        t.a,
                        serde_json::to_string(&t.h).expect("integers serialize"),
                        rationals(&q)
                    ));
                }
                class_docs.push(format!(
                    "{{\"l\":{},\"size\":{},\"tuples\":[{}]}}",
                    c.l,
                    c.tuples.len(),
                    tuple_docs.join(",")
                ));
            }
            let group_docs: Vec<String> = table
                .groups()
                .iter()
                .map(|g| format!("{{\"coefficient\":{},\"q\":[{}]}}", g.coefficient, rationals(&g.q)))
                .collect();
            writeln!(
                out,
                "{{\"n\":{n},\"k\":{k},\"classes\":[{}],\"groups\":[{}]}}",
                class_docs.join(","),
                group_docs.join(",")
            )?;
        }
        Format::Csv => {
            writeln!(out, "coefficient,q")?;
            for g in table.groups() {
                let q: Vec<String> = g.q.iter().map(|x| x.to_string()).collect();
                writeln!(out, "{},{}", g.coefficient, q.join(" "))?;
            }
        }
        Format::Human => {
            for c in &classes {
                writeln!(out, "T_{{{n},{}}}: {} tuples", c.l, c.tuples.len())?;
            }
            writeln!(out, "{} term groups for k={k}, total coefficient {}", table.groups().len(), table.total_coefficient())?;
            for g in table.groups() {
                let q: Vec<String> = g.q.iter().map(|x| x.to_string()).collect();
                writeln!(out, "{:>8}  ({})", g.coefficient, q.join(", "))?;
            }
        }
    }
    Ok(())
}

fn cmd_table1(cli: &Cli, out: &mut impl Write, n_max: usize) -> CmdResult {
    let rows = leading_coefficient_table(n_max)?;
    match cli.format {
        Format::Human => {
            for r in &rows {
                writeln!(out, "{:>3}  {:<18} {:.10}", r.n, r.closed_form, r.value)?;
            }
        }
        Format::Json => {
            let docs: Vec<String> = rows
                .iter()
                .map(|r| {
                    format!(
                        "{{\"n\":{},\"closed_form\":{},\"value\":{}}}",
                        r.n,
                        json_string(r.closed_form),
                        json_number(r.value)
                    )
                })
                .collect();
            writeln!(out, "[{}]", docs.join(","))?;
        }
        Format::Csv => {
            writeln!(out, "n,closed_form,value")?;
            for r in &rows {
                writeln!(out, "{},{},{}", r.n, r.closed_form, json_number(r.value))?;
            }
        }
    }
    Ok(())
}

fn cmd_asym(cli: &Cli, out: &mut impl Write, n: usize, ks: &[usize], csv: Option<&PathBuf>) -> CmdResult {
    let cfg = solver_config(cli);
    let mut ks = ks.to_vec();
    ks.sort_unstable();
    ks.dedup();
    let mut rows = Vec::new();
    for &k in &ks {
        let pair = solve_cached(cli, &cfg, n, k)?;
        rows.push(AsymptoticReport::from_solution(n, k, pair.t)?);
    }
    if let Some(path) = csv {
        let file = fs::File::create(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        write_sweep_csv(&rows, std::io::BufWriter::new(file))?;
    }
    match cli.format {
        Format::Csv => write_sweep_csv(&rows, &mut *out)?,
        Format::Json => {
            let docs: Vec<String> = rows
                .iter()
                .map(|r| {
                    format!(
                        "{{\"k\":{},\"n\":{},\"t_solver\":{},\"t_formula\":{},\"gap\":{},\"lower13\":{},\"upper\":{}}}",
                        r.k,
                        r.n,
                        json_number(r.t_solver),
                        json_number(r.t_formula),
                        json_number(r.gap),
                        json_number(r.lower_main_term),
                        json_number(r.upper_trivial)
                    )
                })
                .collect();
            writeln!(out, "[{}]", docs.join(","))?;
        }
        Format::Human => {
            writeln!(out, "{}", SWEEP_CSV_HEADER.replace(',', "  "))?;
            for r in &rows {
                writeln!(
                    out,
                    "{}  {}  {}  {}  {}  {}  {}",
                    r.k,
                    r.n,
                    human_number(r.t_solver),
                    human_number(r.t_formula),
                    human_number(r.gap),
                    human_number(r.lower_main_term),
                    human_number(r.upper_trivial)
                )?;
            }
        }
    }
    Ok(())
}

fn render_suite_json(rep: &SuiteReport) -> String {
    let checks: Vec<String> = rep
        .checks
        .iter()
        .map(|c| {
            format!(
                "{{\"name\":{},\"passed\":{},\"detail\":{}}}",
                json_string(&c.name),
                c.passed,
                json_string(&c.detail)
            )
        })
        .collect();
    let ces: Vec<String> = rep.counterexamples.iter().map(|c| json_string(c)).collect();
    format!(
        "{{\"suite\":{},\"passed\":{},\"checks\":[{}],\"counterexamples\":[{}]}}",
        json_string(&rep.suite),
        rep.passed(),
        checks.join(","),
        ces.join(",")
    )
}

fn cmd_verify(cli: &Cli, out: &mut impl Write, suite: &str) -> CmdResult {
    let rep = run_suite(suite, cli.seed)?;
    match cli.format {
        Format::Json => writeln!(out, "{}", render_suite_json(&rep))?,
        Format::Csv => {
            writeln!(out, "check,passed,detail")?;
            for c in &rep.checks {
                writeln!(out, "{},{},{}", json_string(&c.name), c.passed, json_string(&c.detail))?;
            }
        }
        Format::Human => write!(out, "{}", rep.render())?,
    }
    if rep.passed() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}
