//! `qhankel`: command-line front end.
//!
//! Exit codes: 0 when every check passed, 1 when a verification failed,
//! 2 for usage or precondition errors.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qhankel::asym::{self, ConstantsReport};
use qhankel::exact::rational::format_rational;
use qhankel::exact::{parse_rational, MultiPoly, Rational, Var};
use qhankel::hankel::{factorize, hankel_det, hankel_matrix, bareiss};
use qhankel::qseq::{Param, Seed, SeqContext};
use qhankel::specialize::DEFAULT_SEED;
use qhankel::suites::{self, SuiteConfig};
use qhankel::{Error, Exec};

#[derive(Parser, Debug)]
#[command(name = "qhankel", version, about = "Hankel determinants of q-series tails: exact checks and constants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct Common {
    /// Seed for generic rational specializations.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Working precision in bits.
    #[arg(long, global = true)]
    precision: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here (atomically) instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Disable the data-parallel loops.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

/// `"p/q"`, an integer, or `"sym"`.
#[derive(Clone, Debug)]
enum ParamArg {
    Sym,
    Value(Rational),
}

impl ParamArg {
    fn param(&self) -> Param {
        match self {
            ParamArg::Sym => Param::Symbolic,
            ParamArg::Value(r) => Param::Value(r.clone()),
        }
    }

    fn seed(&self) -> Seed {
        match self {
            ParamArg::Sym => Seed::SymbolicMu,
            ParamArg::Value(r) => Seed::Explicit(r.clone()),
        }
    }

    fn json(&self) -> Value {
        match self {
            ParamArg::Sym => json!("sym"),
            ParamArg::Value(r) => json!(format_rational(r)),
        }
    }
}

fn parse_param(s: &str) -> Result<ParamArg, String> {
    if s == "sym" {
        return Ok(ParamArg::Sym);
    }
    parse_rational(s).map(ParamArg::Value).map_err(|e| e.to_string())
}

fn parse_rat(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Args, Debug)]
struct SymParams {
    #[arg(long, allow_hyphen_values = true, value_parser = parse_param, default_value = "sym")]
    alpha: ParamArg,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_param, default_value = "sym")]
    lambda: ParamArg,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_param, default_value = "sym")]
    mu: ParamArg,
}

impl SymParams {
    fn context(&self) -> SeqContext {
        SeqContext::new(self.alpha.param(), self.lambda.param(), self.mu.seed())
    }

    fn json(&self) -> Value {
        json!({ "alpha": self.alpha.json(), "lambda": self.lambda.json(), "mu": self.mu.json() })
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Clausen constant, A/B/C and the γ-thresholds.
    Constants {
        /// Only the threshold for this d.
        #[arg(long)]
        d: Option<u32>,
    },
    /// The determinant V_n.
    Det {
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        params: SymParams,
        /// Specialize q as well.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rat)]
        q: Option<Rational>,
    },
    /// V_n = q^{e0} Π Φ_l^{m_l} · cofactor.
    Factor {
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        params: SymParams,
        #[arg(long)]
        probe_limit: Option<u32>,
    },
    /// Run a verification suite, or `all`.
    Verify {
        suite: String,
        #[arg(long)]
        nmax: Option<u32>,
        #[arg(long)]
        l: Option<u32>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        probe_limit: Option<u32>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rat)]
        q: Option<Rational>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rat)]
        alpha: Option<Rational>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rat)]
        lambda: Option<Rational>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rat)]
        x: Option<Rational>,
        /// Include values below the guaranteed range.
        #[arg(long)]
        force: bool,
    },
    /// −log_|q| |V_n| / n³ from high-precision tails.
    Decay {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rat, default_value = "2")]
        q: Rational,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rat, default_value = "1")]
        alpha: Rational,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rat, default_value = "0")]
        lambda: Rational,
        #[arg(long, default_value_t = asym::DEFAULT_DECAY_CAP as u32)]
        nmax: u32,
    },
    /// Σ_l e_l(n) φ(l) against its cubic constant, at n/10 and n.
    Asym {
        #[arg(long, default_value_t = 10_000)]
        n: u64,
    },
    /// Σ_l φ(l) Σ_{i≤n} ⌊(i + cl)/(al)⌋ against n³/π² Σ (am − c)^{−2}.
    Sumel {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rat)]
        a: Rational,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rat)]
        c: Rational,
        #[arg(long)]
        n: u64,
    },
}

/// A finished report in every format it supports.
struct Output {
    command: &'static str,
    parameters: Value,
    passed: bool,
    report: Value,
    csv: Option<String>,
    text: Option<String>,
}

impl Output {
    fn new(command: &'static str, parameters: Value, passed: bool, report: Value) -> Self {
        Output { command, parameters, passed, report, csv: None, text: None }
    }

    fn envelope(&self) -> Value {
        json!({ "command": self.command, "parameters": self.parameters, "passed": self.passed, "report": self.report })
    }

    fn render(&self, format: Format) -> Result<String, Error> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(&self.envelope()).expect("serializable") + "\n"),
            Format::Csv => self
                .csv
                .clone()
                .ok_or_else(|| Error::Precondition(format!("csv output is not available for '{}'", self.command))),
            Format::Text => Ok(match &self.text {
                Some(t) => t.clone(),
                None => serde_json::to_string_pretty(&self.envelope()).expect("serializable") + "\n",
            }),
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Internal(_) | Error::InexactDivision(_) => 1,
        _ => 2,
    }
}

fn write_atomic(path: &Path, body: &str) -> std::io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(body.as_bytes())?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn constants(d: Option<u32>, prec: u32) -> Result<Output, Error> {
    let params = json!({ "precision": prec, "d": d });
    if let Some(d) = d {
        let digits = ((prec as f64 * std::f64::consts::LOG10_2) as usize).clamp(8, 60);
        let mut rows = Vec::new();
        let mut agree = true;
        for lz in [true, false] {
            let g = asym::threshold(d, lz, prec)?;
            let h = asym::threshold_closed_form(d, lz, prec)?;
            agree &= g.overlaps(&h);
            rows.push(json!({ "d": d, "lambda_is_zero": lz, "via_abc": g.record(digits), "closed_form": h.record(digits) }));
        }
        return Ok(Output::new("constants", params, agree, json!({ "thresholds": rows })));
    }
    let rep: ConstantsReport = asym::constants_report(prec)?;
    let mut csv = String::from("quantity,value,err_bound\n");
    for (name, b) in [("imLi2", &rep.im_li2), ("pi", &rep.pi), ("c034", &rep.c034)] {
        csv.push_str(&format!("{name},{},{}\n", b.value, b.radius));
    }
    for t in &rep.thresholds {
        let case = if t.lambda_is_zero { "lambda0" } else { "lambda_nonzero" };
        csv.push_str(&format!("gamma_d{}_{case},{},{}\n", t.d, t.via_abc.value, t.via_abc.radius));
    }
    let mut text = format!("Im Li2(e^(2πi/3)) = {}\nc034 = {}\n", rep.im_li2.value, rep.c034.value);
    for t in &rep.thresholds {
        text.push_str(&format!("gamma(d={}, lambda {}) = {}\n", t.d, if t.lambda_is_zero { "= 0" } else { "!= 0" }, t.via_abc.value));
    }
    let mut out = Output::new("constants", params, rep.passed(), serde_json::to_value(&rep).expect("serializable"));
    out.csv = Some(csv);
    out.text = Some(text);
    Ok(out)
}

fn det(n: u32, params: &SymParams, q: Option<&Rational>, exec: Exec) -> Result<Output, Error> {
    let ctx = params.context();
    let v: MultiPoly = match q {
        None => hankel_det(&ctx, n as usize, exec)?,
        Some(q) => {
            let m: Vec<Vec<MultiPoly>> = hankel_matrix(&ctx, n as usize)?
                .into_iter()
                .map(|row| row.iter().map(|e| e.substitute(Var::Q, q)).collect())
                .collect();
            bareiss(m, exec)?
        }
    };
    let mut p = params.json();
    p["n"] = json!(n);
    p["q"] = q.map_or(json!("sym"), |q| json!(format_rational(q)));
    let mut out = Output::new("det", p, true, json!({ "determinant": v.to_record(), "display": v.to_string() }));
    out.text = Some(format!("{v}\n"));
    Ok(out)
}

fn factor(n: u32, params: &SymParams, probe_limit: Option<u32>, exec: Exec) -> Result<Output, Error> {
    let f = factorize(&params.context(), n, probe_limit, exec)?;
    let mut p = params.json();
    p["n"] = json!(n);
    p["probe_limit"] = json!(probe_limit.unwrap_or_else(|| qhankel::hankel::default_probe_limit(n)));
    let rep = f.report();
    let mut text = format!("n = {n}: q^{} (guaranteed {})\n", rep.e0_found, rep.e0_guaranteed);
    for row in &rep.exponents {
        let g = row.guaranteed.map_or("-".to_string(), |g| g.to_string());
        text.push_str(&format!("Phi_{}: found {}, guaranteed {g}\n", row.l, row.found));
    }
    text.push_str(&format!("cofactor: {}\n", f.cofactor));
    let mut out = Output::new("factor", p, f.meets_guarantees(), serde_json::to_value(&rep).expect("serializable"));
    out.text = Some(text);
    Ok(out)
}

fn suite_text(r: &suites::SuiteReport) -> String {
    let status = if r.passed { "PASS" } else { "FAIL" };
    let mut s = format!("{}: {status} ({} checks) parameters {}\n", r.suite, r.checks, r.parameters);
    if let Some(f) = &r.first_failure {
        s.push_str(&format!("  first failure: {}\n  lhs: {}\n  rhs: {}\n", f.identity, f.lhs, f.rhs));
    }
    if let Some(c) = r.details.get("conjecture") {
        s.push_str(&format!("  conjecture: {}\n", c.as_str().unwrap_or("?")));
    }
    s
}

fn verify(suite: &str, cfg: SuiteConfig, exec: Exec) -> Result<Output, Error> {
    let params = json!({
        "suite": suite,
        "seed": cfg.seed,
        "nmax": cfg.n_max,
        "l": cfg.l_max,
        "m": cfg.m_max,
        "precision": cfg.precision,
        "probe_limit": cfg.probe_limit,
        "force": cfg.force,
    });
    if suite == "all" {
        let all = suites::run_all(&cfg, exec)?;
        let text: String = all.suites.iter().map(suite_text).collect();
        let mut out = Output::new("verify", params, all.passed, serde_json::to_value(&all).expect("serializable"));
        out.text = Some(text);
        return Ok(out);
    }
    let r = suites::run_suite(suite, &cfg, exec)?;
    let mut out = Output::new("verify", params, r.passed, serde_json::to_value(&r).expect("serializable"));
    out.text = Some(suite_text(&r));
    Ok(out)
}

fn decay(q: &Rational, alpha: &Rational, lambda: &Rational, nmax: u32, prec: Option<u32>, exec: Exec) -> Result<Output, Error> {
    let rep = asym::decay_experiment(q, alpha, lambda, nmax as usize, prec, exec)?;
    let params = json!({ "q": format_rational(q), "alpha": format_rational(alpha), "lambda": format_rational(lambda), "nmax": nmax, "precision": rep.precision });
    let mut text = format!("q = {}, alpha = {}, lambda = {}, {} bits\n", rep.q, rep.alpha, rep.lambda, rep.precision);
    for r in &rep.rows {
        text.push_str(&format!("{:>3}  {:.8}  ± {:.1e}{}\n", r.n, r.ratio, r.ratio_err, if r.positive { "" } else { "  (negative)" }));
    }
    let mut out = Output::new("decay", params, rep.first_sign_failure().is_none(), serde_json::to_value(&rep).expect("serializable"));
    out.csv = Some(rep.to_csv());
    out.text = Some(text);
    Ok(out)
}

fn asym_cmd(n: u64, exec: Exec) -> Result<Output, Error> {
    let small = (n / 10).max(3);
    let rep = asym::weighted_exponent_report(&[small, n], exec)?;
    let (lo, hi) = (&rep.rows[0], &rep.rows[1]);
    let within = hi.relative_deviation < 0.03;
    let closer = hi.relative_deviation < lo.relative_deviation;
    let mut csv = String::from("n,sum,ratio,relative_deviation\n");
    for r in &rep.rows {
        csv.push_str(&format!("{},{},{:.12},{:.6e}\n", r.n, r.sum, r.ratio, r.relative_deviation));
    }
    let report = json!({ "constant": rep.constant, "rows": rep.rows, "within_3_percent": within, "closer_at_larger_n": closer });
    let mut out = Output::new("asym", json!({ "n": n, "n_small": small }), within && closer, report);
    out.csv = Some(csv);
    Ok(out)
}

fn sumel(a: &Rational, c: &Rational, n: u64, exec: Exec) -> Result<Output, Error> {
    let rep = asym::sumel_partial(a, c, n, exec)?;
    let csv = format!("a,c,n,sum,prediction,ratio\n{},{},{},{},{:.6},{:.12}\n", rep.a, rep.c, rep.n, rep.sum, rep.prediction, rep.ratio);
    let params = json!({ "a": rep.a, "c": rep.c, "n": n });
    let mut out = Output::new("sumel", params, true, serde_json::to_value(&rep).expect("serializable"));
    out.csv = Some(csv);
    Ok(out)
}

fn run(cli: Cli) -> Result<Output, Error> {
    let exec = if cli.common.sequential { Exec::Sequential } else { Exec::Parallel };
    let prec = cli.common.precision;
    match cli.command {
        Command::Constants { d } => constants(d, prec.unwrap_or(128).max(32)),
        Command::Det { n, params, q } => det(n, &params, q.as_ref(), exec),
        Command::Factor { n, params, probe_limit } => factor(n, &params, probe_limit, exec),
        Command::Verify { suite, nmax, l, m, probe_limit, q, alpha, lambda, x, force } => {
            let cfg = SuiteConfig {
                n_max: nmax,
                l_max: l,
                m_max: m,
                seed: cli.common.seed,
                precision: prec,
                probe_limit,
                q,
                alpha,
                lambda,
                x,
                force,
            };
            verify(&suite, cfg, exec)
        }
        Command::Decay { q, alpha, lambda, nmax } => decay(&q, &alpha, &lambda, nmax, prec, exec),
        Command::Asym { n } => asym_cmd(n, exec),
        Command::Sumel { a, c, n } => sumel(&a, &c, n, exec),
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    let format = cli.common.format;
    let out_path = cli.common.out.clone();
    let result = run(cli).and_then(|out| Ok((out.render(format)?, out.passed)));
    let (body, passed) = match result {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let written = match &out_path {
        Some(p) => write_atomic(p, &body),
        None => std::io::stdout().write_all(body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(if passed { 0 } else { 1 })
}
