use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use ffchar::hypergeometric::HypParams;
use ffchar::specmat::{build_matrix, Thm2Reading};
use ffchar::{FieldTable, PrimePower};
use serde_json::json;

use crate::cache::Cache;
use crate::context::FieldContext;
use crate::runner::run_sweep;
use crate::spec::{parse_list, parse_orders, reading_name, Backend, Check, Selector, SweepSpec};
use crate::UsageError;

const EXIT_USAGE: i32 = 2;

#[derive(Parser)]
#[command(
    name = "ffchar",
    version,
    about = "Character matrices and hypergeometric functions over finite fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct FieldArgs {
    /// Characteristic (list or inclusive range for sweeps)
    #[arg(long)]
    p: Option<String>,
    /// Degree over the prime field
    #[arg(long)]
    r: Option<String>,
    /// Field orders, e.g. `5,7,9` or `5..27`
    #[arg(long)]
    q: Option<String>,
}

#[derive(Args, Clone)]
struct CacheArgs {
    /// Cache directory (overrides FFCHAR_CACHE_DIR)
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Neither read nor write cache files
    #[arg(long)]
    no_cache: bool,
}

impl CacheArgs {
    fn cache(&self) -> Cache {
        Cache::from_options(self.cache_dir.clone(), self.no_cache)
    }
}

#[derive(Args, Clone)]
struct SweepArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Checks to run, comma separated
    #[arg(
        long,
        default_value = "lemma21,thm1,thm2,gf,euler,ec,identities,orthogonality"
    )]
    checks: String,
    /// Index of A: `all`, a list, or `sample:N`
    #[arg(long, default_value = "all")]
    a: String,
    /// Index of B: `all`, a list, or `sample:N`
    #[arg(long, default_value = "all")]
    b: String,
    /// Matrix powers for thm2
    #[arg(long, default_value = "2..5")]
    k: String,
    /// Euler transform arities (n+1 F n built from n F n-1)
    #[arg(long, default_value = "1,2")]
    n: String,
    /// Sampled parameter tuples per Euler arity
    #[arg(long, default_value_t = 20)]
    samples: usize,
    /// exact, float or both
    #[arg(long, default_value = "exact")]
    backend: String,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Float tolerance, scaled by max(1, |value|)
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Parameter reading for thm2: stated, product or ceiling
    #[arg(long, default_value = "stated")]
    reading: String,
    /// Write the JSON report here (`-` for stdout)
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    cache: CacheArgs,
}

#[derive(Subcommand)]
enum Command {
    /// Print the modulus and generator of F_q
    FieldInfo {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        cache: CacheArgs,
    },
    /// Evaluate nF(n-1)(top; bottom | x) by character indices
    Hyper {
        #[command(flatten)]
        field: FieldArgs,
        /// Top parameters, comma separated
        #[arg(long)]
        top: String,
        /// Bottom parameters, comma separated (may be empty)
        #[arg(long, default_value = "")]
        bottom: String,
        /// Argument, as a canonical element index
        #[arg(long)]
        x: u32,
        #[command(flatten)]
        cache: CacheArgs,
    },
    /// Write the exponent form of M_q as JSON
    MatrixBuild {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 0)]
        a: i64,
        #[arg(long, default_value_t = 0)]
        b: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run checks and print one line per record
    Verify(SweepArgs),
    /// Run checks and print a summary per check
    Sweep(SweepArgs),
    /// Build, load or clear cached tables
    Cache {
        /// build, load or clear
        action: String,
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        cache: CacheArgs,
    },
}

fn orders(args: &FieldArgs) -> Result<Vec<PrimePower>, UsageError> {
    if let Some(q) = &args.q {
        if args.p.is_some() || args.r.is_some() {
            return Err(UsageError("give either --q or --p/--r".into()));
        }
        return parse_orders(q);
    }
    let Some(p) = &args.p else {
        return Err(UsageError(
            "a field is required (--q, or --p with optional --r)".into(),
        ));
    };
    let rs = parse_list(args.r.as_deref().unwrap_or("1"))?;
    let ranged = p.contains("..");
    let mut out = Vec::new();
    for p in parse_list(p)? {
        for &r in &rs {
            let pp = u64::try_from(p)
                .ok()
                .zip(u32::try_from(r).ok())
                .ok_or_else(|| UsageError(format!("invalid (p, r) = ({p}, {r})")));
            match pp.and_then(|(p, r)| {
                PrimePower::new(p, r).map_err(|e| UsageError(format!("(p, r) = ({p}, {r}): {e}")))
            }) {
                Ok(pp) => out.push(pp),
                Err(_) if ranged => {}
                Err(e) => return Err(e),
            }
        }
    }
    if out.is_empty() {
        return Err(UsageError("no valid fields selected".into()));
    }
    out.sort_by_key(|pp| pp.q());
    out.dedup();
    Ok(out)
}

fn single_field(args: &FieldArgs) -> Result<PrimePower, UsageError> {
    match orders(args)?.as_slice() {
        [pp] => Ok(*pp),
        _ => Err(UsageError("exactly one field is required".into())),
    }
}

fn sweep_spec(args: &SweepArgs) -> Result<SweepSpec, UsageError> {
    let checks = args
        .checks
        .split(',')
        .map(str::trim)
        .filter(|c| !c.is_empty())
        .map(str::parse)
        .collect::<Result<Vec<Check>, _>>()?;
    let k = parse_list(&args.k)?
        .into_iter()
        .map(|k| u32::try_from(k).ok().filter(|&k| k >= 1))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| UsageError("powers must be at least 1".into()))?;
    let euler_n = parse_list(&args.n)?
        .into_iter()
        .map(|n| usize::try_from(n).ok().filter(|&n| n >= 1))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| UsageError("Euler arities must be at least 1".into()))?;
    let reading = Thm2Reading::ALL
        .into_iter()
        .find(|&r| reading_name(r) == args.reading)
        .ok_or_else(|| UsageError(format!("unknown reading `{}`", args.reading)))?;
    if args.workers == 0 {
        return Err(UsageError("--workers must be at least 1".into()));
    }
    Ok(SweepSpec {
        fields: orders(&args.field)?,
        a: args.a.parse::<Selector>()?,
        b: args.b.parse::<Selector>()?,
        k,
        euler_n,
        samples: args.samples,
        checks,
        backend: args.backend.parse::<Backend>()?,
        workers: args.workers,
        seed: args.seed,
        tolerance: args.tol,
        reading,
    })
}

fn write_out(path: &Option<PathBuf>, text: &str) -> Result<bool, String> {
    match path {
        Some(p) if p.as_os_str() == "-" => {
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            Ok(true)
        }
        Some(p) => {
            fs::write(p, text).map_err(|e| format!("{}: {e}", p.display()))?;
            Ok(false)
        }
        None => Ok(false),
    }
}

fn poly_in_t(coeffs: &[u32]) -> String {
    let mut terms = Vec::new();
    for (e, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match e {
            0 => String::new(),
            1 => "t".into(),
            _ => format!("t^{e}"),
        };
        terms.push(match (c, e) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}*{mono}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn field_info(field: &FieldArgs, cache: &CacheArgs) -> Result<i32, String> {
    let pp = single_field(field).map_err(|e| e.to_string())?;
    let (f, _) = cache.cache().field(pp)?;
    let g = f.generator();
    println!("q = {} (p = {}, r = {})", f.q(), f.p(), f.r());
    println!("modulus: {}", poly_in_t(f.modulus()));
    println!(
        "generator: {} (index {})",
        poly_in_t(&f.coeffs(g)),
        g.index()
    );
    Ok(0)
}

fn hyper(
    field: &FieldArgs,
    top: &str,
    bottom: &str,
    x: u32,
    cache: &CacheArgs,
) -> Result<i32, String> {
    let pp = single_field(field).map_err(|e| e.to_string())?;
    let top = parse_list(top).map_err(|e| e.to_string())?;
    let bottom = if bottom.trim().is_empty() {
        Vec::new()
    } else {
        parse_list(bottom).map_err(|e| e.to_string())?
    };
    let params = HypParams::new(top, bottom).map_err(|e| e.to_string())?;
    let ctx = FieldContext::load(pp, &cache.cache(), true)?;
    let x = ctx.field.element(x).map_err(|e| e.to_string())?;
    let sums = ctx.sums();
    let v = sums.hyp().eval(&params, x).map_err(|e| e.to_string())?;
    let z = v.embed_f64();
    println!("value: {v}");
    println!("numerator: {:?}", v.num().canonical());
    println!("denominator: {}", v.den());
    // Rounding noise below the shown precision would otherwise show as -0.
    let clean = |x: f64| if x.abs() < 5e-13 { 0.0 } else { x };
    println!("approx: {:.12} {:+.12}i", clean(z.re), clean(z.im));
    Ok(0)
}

fn matrix_build(field: &FieldArgs, a: i64, b: i64, out: &Option<PathBuf>) -> Result<i32, String> {
    let pp = single_field(field).map_err(|e| e.to_string())?;
    let f = FieldTable::build(pp).map_err(|e| e.to_string())?;
    let m = build_matrix(&f, a, b);
    let doc = json!({
        "p": f.p(),
        "r": f.r(),
        "modulus": f.modulus(),
        "a_idx": m.a().index(),
        "b_idx": m.b().index(),
        "entries": m.exponent_rows(),
    });
    let text = serde_json::to_string(&doc).unwrap() + "\n";
    if out.is_none() {
        let _ = std::io::stdout().lock().write_all(text.as_bytes());
    } else {
        write_out(out, &text)?;
    }
    Ok(0)
}

fn sweep(args: &SweepArgs, per_record: bool) -> Result<i32, String> {
    let spec = sweep_spec(args).map_err(|e| e.to_string())?;
    let report = run_sweep(&spec, &args.cache.cache())?;
    let to_stdout = write_out(&args.out, &report.render())?;
    if !to_stdout {
        let mut out = std::io::stdout().lock();
        if per_record {
            for r in &report.records {
                let _ = writeln!(out, "{} q={} {}: {}", r.check, r.q, r.inputs, r.verdict());
                if let Some(e) = &r.error {
                    let _ = writeln!(out, "  error: {e}");
                }
            }
        } else if let Some(by) = report.summary()["by_check"].as_object() {
            for (check, c) in by {
                let _ = writeln!(
                    out,
                    "{check}: {} pass, {} fail, {} error",
                    c["pass"], c["fail"], c["error"]
                );
            }
        }
        let t = report.thm1_tally();
        if t != Default::default() {
            let _ = writeln!(
                out,
                "thm1 variants: lemma {}, stated {}, indistinguishable {}, none {}",
                t.lemma, t.stated, t.indistinguishable, t.none
            );
        }
        let _ = writeln!(
            out,
            "verdict: {}",
            if report.pass() { "pass" } else { "fail" }
        );
    }
    Ok(report.exit_code())
}

fn cache_cmd(action: &str, field: &FieldArgs, cache: &CacheArgs) -> Result<i32, String> {
    let c = cache.cache();
    if c.dir().is_none() {
        return Err("no cache directory (use --cache-dir or FFCHAR_CACHE_DIR)".into());
    }
    match action {
        "build" | "load" => {
            let orders = orders(field).map_err(|e| e.to_string())?;
            if action == "build" {
                for &pp in &orders {
                    c.clear(Some(pp)).map_err(|e| e.to_string())?;
                }
            }
            for pp in orders {
                let ctx = FieldContext::load(pp, &c, true)?;
                let d = ctx.describe();
                println!(
                    "q = {}: field {}, jacobi {}",
                    pp.q(),
                    d["cache"]["field"].as_str().unwrap_or("-"),
                    d["cache"]["jacobi"].as_str().unwrap_or("-")
                );
            }
            Ok(0)
        }
        "clear" => {
            let removed = if field.p.is_none() && field.q.is_none() {
                c.clear(None).map_err(|e| e.to_string())?
            } else {
                let mut n = 0;
                for pp in orders(field).map_err(|e| e.to_string())? {
                    n += c.clear(Some(pp)).map_err(|e| e.to_string())?;
                }
                n
            };
            println!("removed {removed} files");
            Ok(0)
        }
        other => Err(format!("unknown cache action `{other}`")),
    }
}

/// Runs the tool; returns the process exit status.
pub fn main_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = match &cli.command {
        Command::FieldInfo { field, cache } => field_info(field, cache),
        Command::Hyper {
            field,
            top,
            bottom,
            x,
            cache,
        } => hyper(field, top, bottom, *x, cache),
        Command::MatrixBuild { field, a, b, out } => matrix_build(field, *a, *b, out),
        Command::Verify(args) => sweep(args, true),
        Command::Sweep(args) => sweep(args, false),
        Command::Cache {
            action,
            field,
            cache,
        } => cache_cmd(action, field, cache),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}
