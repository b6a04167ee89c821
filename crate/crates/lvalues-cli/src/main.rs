//! `lvalues`: command-line front end for computing equivariant special
//! values of Drinfeld modules and verifying the class number formulas.
//!
//! Exit codes: `0` success or PASS, `1` verification FAIL, `2` usage error,
//! `3` computation error. Reports are printed as JSON with sorted keys, so
//! identical inputs give byte-identical output.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lvalues::algebra::{FqField, PolyRing, Ring};
use lvalues::drinfeld::DrinfeldModule;
use lvalues::extensions::fixture::{parse_fixture, validate_fixture, write_fixture};
use lvalues::extensions::{carlitz_cyclotomic_seeded, trivial_extension, ExtensionData};
use lvalues::nuclear::{theta_via_trace, trace_formula_check};
use lvalues::special_values::{theta_euler, zeta_direct_sum, ThetaValue};
use lvalues::volumes::{brumer_stark_check_with, etnf_check_with, LatticeData};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "lvalues", version, about = "Equivariant special values of Drinfeld modules")]
struct Cli {
    /// Worker threads for the product over primes.
    #[arg(long, global = true, env = "LVALUES_JOBS", default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute Θ(0) to a given precision.
    Theta {
        #[command(flatten)]
        job: JobArgs,
        #[arg(long, value_enum, default_value_t = MethodArg::Euler)]
        method: MethodArg,
    },
    /// Verify the trace formula, the class number formula or the
    /// Brumer–Stark membership.
    Verify {
        #[arg(value_enum)]
        check: CheckArg,
        #[command(flatten)]
        job: JobArgs,
    },
    /// Validate or generate extension fixtures.
    #[command(subcommand)]
    Fixture(FixtureCommand),
}

#[derive(Subcommand, Debug)]
enum FixtureCommand {
    /// Parse a fixture and run its structural checks.
    Validate { path: PathBuf },
    /// Write the fixture of a built-in Carlitz-cyclotomic extension.
    Generate {
        /// Conductor, for example `t`, `t2`, `t^2+t+1` or `0 0 1`.
        #[arg(long)]
        cyclotomic: String,
        #[command(flatten)]
        field: FieldArgs,
        /// Largest degree of the listed unramified primes.
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
struct FieldArgs {
    /// Characteristic-p field size q = p^s (with --s) or prime p.
    #[arg(long)]
    q: u32,
    /// Extension degree s of F_q over F_p.
    #[arg(long, default_value_t = 1)]
    s: u32,
}

#[derive(Args, Debug, Clone)]
struct JobArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// `trivial`, `cyclotomic:<conductor>` or `fixture:<path>`.
    #[arg(long, default_value = "trivial")]
    ext: String,
    /// `carlitz` or the coefficients `a_1;…;a_r` of φ(t) − t.
    #[arg(long = "E", default_value = "carlitz")]
    module: String,
    /// Precision: coefficients of t^e with e ≥ −N are computed exactly.
    #[arg(long = "N", value_parser = clap::value_parser!(i64).range(1..))]
    precision: i64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum MethodArg {
    Euler,
    Trace,
    Sum,
    All,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum CheckArg {
    Trace,
    Etnf,
    BrumerStark,
}

/// Failure of a command, mapped to an exit code.
enum Failure {
    Usage(String),
    Compute(String),
}

impl From<lvalues::Error> for Failure {
    fn from(e: lvalues::Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.max(1)).build_global() {
        eprintln!("error: {e}");
        return ExitCode::from(3);
    }
    match run(cli.command) {
        Ok((report, pass)) => {
            println!("{}", serde_json::to_string_pretty(&report).expect("serializable report"));
            ExitCode::from(if pass { 0 } else { 1 })
        }
        Err(Failure::Usage(m)) => {
            eprintln!("usage error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}

fn run(cmd: Command) -> Result<(Value, bool), Failure> {
    match cmd {
        Command::Theta { job, method } => cmd_theta(&job, method),
        Command::Verify { check, job } => cmd_verify(&job, check),
        Command::Fixture(FixtureCommand::Validate { path }) => {
            let text = read(&path)?;
            let report = validate_fixture(&text)?;
            let lines: Vec<Value> = report
                .lines
                .iter()
                .map(|(name, ok)| json!({ "check": name, "pass": ok }))
                .collect();
            Ok((json!({ "fixture": path.display().to_string(), "checks": lines, "pass": report.all_pass() }), report.all_pass()))
        }
        Command::Fixture(FixtureCommand::Generate { cyclotomic, field, max_degree, seed, output }) => {
            let f = make_field(&field)?;
            let cond = parse_poly(&f, &cyclotomic)?;
            let ext = carlitz_cyclotomic_seeded(&f, &cond, seed)?;
            let text = write_fixture(&ext, max_degree)?;
            let mut report = json!({ "name": ext.name, "seed": seed, "bytes": text.len() });
            match output {
                Some(p) => {
                    std::fs::write(&p, &text).map_err(|e| Failure::Compute(format!("{}: {e}", p.display())))?;
                    report["output"] = json!(p.display().to_string());
                }
                None => report["fixture"] = json!(text),
            }
            Ok((report, true))
        }
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn make_field(a: &FieldArgs) -> Result<FqField, Failure> {
    let p = if a.s == 1 { a.q } else { prime_root(a.q, a.s).ok_or_else(|| Failure::Usage(format!("{} is not a power p^{}", a.q, a.s)))? };
    FqField::new(p, a.s).map_err(|e| Failure::Usage(e.to_string()))
}

fn prime_root(q: u32, s: u32) -> Option<u32> {
    (2..=q).find(|p| p.checked_pow(s) == Some(q))
}

/// Parses `t^2+t+1`, `t2`, `2t+1` (prime fields) or a coefficient list
/// `c_0 c_1 …` low degree first.
fn parse_poly(f: &FqField, text: &str) -> Result<Vec<u32>, Failure> {
    let pr = PolyRing::new(f.clone());
    let text = text.trim();
    if !text.contains('t') {
        return pr.parse(&text.replace(',', " ")).map_err(|e| Failure::Usage(e.to_string()));
    }
    let bad = || Failure::Usage(format!("cannot read polynomial '{text}'"));
    let mut coeffs: Vec<u32> = Vec::new();
    for term in text.split('+').map(str::trim) {
        let (c, k) = match term.split_once('t') {
            None => (term, 0usize),
            Some((c, e)) => {
                let e = e.trim_start_matches('^');
                (c.trim_end_matches('*'), if e.is_empty() { 1 } else { e.parse().map_err(|_| bad())? })
            }
        };
        let c: u32 = if c.is_empty() { 1 } else { c.parse().map_err(|_| bad())? };
        if coeffs.len() <= k {
            coeffs.resize(k + 1, 0);
        }
        coeffs[k] = f.add(&coeffs[k], &f.from_int(c as i64));
    }
    Ok(pr.normalize(coeffs))
}

fn make_module(f: &FqField, text: &str) -> Result<DrinfeldModule, Failure> {
    if text.eq_ignore_ascii_case("carlitz") {
        return Ok(DrinfeldModule::carlitz(f.clone()));
    }
    let coeffs = text.split(';').map(|c| parse_poly(f, c)).collect::<Result<Vec<_>, _>>()?;
    DrinfeldModule::new(f.clone(), coeffs).map_err(|e| Failure::Usage(e.to_string()))
}

fn make_extension(f: &FqField, text: &str, seed: u64) -> Result<ExtensionData, Failure> {
    if text == "trivial" {
        return Ok(trivial_extension(f));
    }
    if let Some(c) = text.strip_prefix("cyclotomic:") {
        let cond = parse_poly(f, c)?;
        return Ok(carlitz_cyclotomic_seeded(f, &cond, seed)?);
    }
    if let Some(path) = text.strip_prefix("fixture:") {
        let path = PathBuf::from(path);
        let body = read(&path)?;
        let report = validate_fixture(&body)?;
        if !report.all_pass() {
            return Err(Failure::Compute(format!("fixture {} fails validation:\n{}", path.display(), report.render())));
        }
        let ext = parse_fixture(&body)?.ext;
        if ext.field() != f {
            return Err(Failure::Usage(format!("fixture field differs from --q {}", f.q())));
        }
        return Ok(ext);
    }
    Err(Failure::Usage(format!("unknown extension '{text}'")))
}

struct Job {
    module: DrinfeldModule,
    ext: ExtensionData,
    precision: i64,
}

fn make_job(a: &JobArgs) -> Result<Job, Failure> {
    let f = make_field(&a.field)?;
    Ok(Job {
        module: make_module(&f, &a.module)?,
        ext: make_extension(&f, &a.ext, a.seed)?,
        precision: a.precision,
    })
}

fn inputs(job: &Job, seed: u64) -> Value {
    json!({
        "q": job.ext.field().q(),
        "extension": job.ext.name,
        "module": job.module.format(),
        "precision": job.precision,
        "seed": seed,
    })
}

/// Exponents `e ≥ −N` at which two values differ.
fn diff(job: &Job, a: &ThetaValue, b: &ThetaValue) -> Vec<i64> {
    let r = &job.ext.ring;
    let top = a.result.v_top.max(b.result.v_top).max(0);
    (-job.precision..=top).rev().filter(|&e| a.result.coeff(r, e) != b.result.coeff(r, e)).collect()
}

fn cmd_theta(args: &JobArgs, method: MethodArg) -> Result<(Value, bool), Failure> {
    let job = make_job(args)?;
    let r = &job.ext.ring;
    let n = job.precision;
    let sum_applicable = r.order() == 1 && job.module.rank() == 1 && job.module.coeffs()[0] == vec![1];
    let mut values: Vec<(&str, ThetaValue)> = Vec::new();
    if matches!(method, MethodArg::Euler | MethodArg::All) {
        values.push(("euler", theta_euler(&job.module, &job.ext, n)?));
    }
    if matches!(method, MethodArg::Trace | MethodArg::All) {
        values.push(("trace", theta_via_trace(&job.module, &job.ext, n)?));
    }
    if method == MethodArg::Sum && !sum_applicable {
        return Err(Failure::Usage("the direct sum applies to the Carlitz module and the trivial extension only".into()));
    }
    if matches!(method, MethodArg::Sum | MethodArg::All) && sum_applicable {
        values.push(("sum", zeta_direct_sum(r, n)?));
    }
    let mut report = json!({ "inputs": inputs(&job, args.seed) });
    for (name, v) in &values {
        report[*name] = v.to_json(r);
    }
    let mut pass = true;
    if values.len() > 1 {
        let mut diffs = serde_json::Map::new();
        for i in 0..values.len() {
            for j in i + 1..values.len() {
                let d = diff(&job, &values[i].1, &values[j].1);
                pass &= d.is_empty();
                diffs.insert(format!("{}-{}", values[i].0, values[j].0), json!(d));
            }
        }
        report["differences"] = Value::Object(diffs);
        report["agree"] = json!(pass);
    }
    Ok((report, pass))
}

fn cmd_verify(args: &JobArgs, check: CheckArg) -> Result<(Value, bool), Failure> {
    let job = make_job(args)?;
    let r = &job.ext.ring;
    let n = job.precision;
    let (mut report, pass) = match check {
        CheckArg::Trace => {
            let t = trace_formula_check(&job.module, &job.ext, n, &[])?;
            let euler = theta_euler(&job.module, &job.ext, n)?;
            let trace = theta_via_trace(&job.module, &job.ext, n)?;
            let d = diff(&job, &euler, &trace);
            let defect: Vec<Value> = t.defect.iter().map(|c| r.to_json(c)).collect();
            let pass = t.pass && d.is_empty();
            (
                json!({
                    "check": "trace",
                    "trace_formula": {
                        "defect": defect,
                        "pass": t.pass,
                        "cutoff": t.cutoff,
                        "primes_used": t.primes_used,
                        "assumptions": t.assumptions,
                    },
                    "euler": euler.to_json(r),
                    "trace": trace.to_json(r),
                    "euler_trace_differences": d,
                    "pass": pass,
                }),
                pass,
            )
        }
        CheckArg::Etnf => {
            let theta = theta_euler(&job.module, &job.ext, n)?;
            let rep = etnf_check_with(&job.module, &job.ext, n, theta, &LatticeData::frame(r), "frame lattice A[G]θ")?;
            (rep.to_json(r), rep.pass)
        }
        CheckArg::BrumerStark => {
            let theta = theta_euler(&job.module, &job.ext, n)?;
            let rep = brumer_stark_check_with(&job.module, &job.ext, n, &theta)?;
            (rep.to_json(r), rep.pass)
        }
    };
    report["inputs"] = inputs(&job, args.seed);
    Ok((report, pass))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_syntaxes() {
        let f = FqField::prime(3).unwrap();
        let read = |s: &str| parse_poly(&f, s).ok().unwrap();
        assert_eq!(read("t"), vec![0, 1]);
        assert_eq!(read("t2"), vec![0, 0, 1]);
        assert_eq!(read("t^2+2t+1"), vec![1, 2, 1]);
        assert_eq!(read("1 1"), vec![1, 1]);
        assert_eq!(read("4t"), vec![0, 1]);
        assert!(parse_poly(&f, "tx").is_err());
    }
}
