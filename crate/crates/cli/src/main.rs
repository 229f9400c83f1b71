//! qshape: classify pure quartic fields, compute their shapes, enumerate
//! them under a bound, and check the distribution predictions.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage/domain error.

use clap::{Args, Parser, Subcommand};
use qshape_core::densities::{alpha, m_star, psi_star, Rect};
use qshape_core::enumerate::{
    count_c_tau, enumerate_fields, theorem_ratio_report, EnumerationResult, Filters,
};
use qshape_core::field::{FieldError, FieldType, PureQuarticField, Sign};
use qshape_core::gram::{gram, project_perp, shape_params};
use qshape_core::{carefree, embed, reduce, region, shape};
use serde_json::json;
use std::collections::HashMap;
use std::io::Write;
use std::process::ExitCode;
use std::str::FromStr;

mod output;
use output::sig12;

#[derive(Parser)]
#[command(name = "qshape", version, about, disable_help_subcommand = true)]
struct Cli {
    /// Line-oriented key=value config file (known keys: threads).
    #[arg(long, global = true)]
    config: Option<std::path::PathBuf>,
    /// Worker threads for enumeration (overrides config file and
    /// QSHAPE_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify m: normal forms, type, sign, discriminant, shape
    /// parameters.
    Classify(ClassifyArgs),
    /// Gram matrices, Iwasawa coordinates, and reduction for one field.
    Shape(ShapeArgs),
    /// Enumerate fields under a size or discriminant bound as CSV.
    Enumerate(EnumerateArgs),
    /// Run a verification suite; exit 1 on any failed check.
    Verify(VerifyArgs),
    /// Print the local density tables M_*(b) and alpha(b).
    Densities(DensitiesArgs),
    /// Empirical vs predicted field counts over a grid of shape
    /// rectangles, as CSV.
    Histogram(HistogramArgs),
}

#[derive(Args)]
struct ClassifyArgs {
    m: i64,
    #[arg(long, default_value = "text", value_parser = ["text", "json"])]
    format: String,
}

#[derive(Args)]
struct ShapeArgs {
    m: i64,
    /// Print only the exact entries.
    #[arg(long)]
    exact: bool,
    /// Print only the floating-point entries.
    #[arg(long, conflicts_with = "exact")]
    float: bool,
    /// Also print the Minkowski-reduced shape and the unimodular
    /// transform.
    #[arg(long)]
    reduce: bool,
}

#[derive(Args)]
struct EnumerateArgs {
    /// Bound N on |a| b^(2/3) c.
    #[arg(long, value_name = "N", conflicts_with = "max_disc")]
    max_n: Option<f64>,
    /// Bound X on |disc|; requires --types with a single type so the
    /// 2-power is determined.
    #[arg(long, value_name = "X")]
    max_disc: Option<f64>,
    /// Comma-separated list of types (I,II,III,IV,V).
    #[arg(long, value_delimiter = ',')]
    types: Option<Vec<String>>,
    /// Restrict to one sign of m: + or -.
    #[arg(long)]
    sign: Option<String>,
    /// Shape rectangle R1lo,R1hi,R2lo,R2hi restricting (|a|/c, b).
    #[arg(long, value_name = "R1LO,R1HI,R2LO,R2HI")]
    rect: Option<String>,
    /// Residue of m mod 32 (8 must not divide it).
    #[arg(long)]
    tau: Option<u64>,
    /// Output file (default stdout).
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    #[arg(long, default_value = "csv", value_parser = ["csv", "json"])]
    format: String,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite: gram, counting, densities, or lipschitz.
    suite: String,
    /// (gram) classify and check every |m| up to this bound.
    #[arg(long, default_value_t = 2000)]
    max_m: i64,
    /// (counting) region size N.
    #[arg(long, default_value_t = 1e5)]
    n: f64,
    #[arg(long, default_value_t = 4.0)]
    r1: f64,
    #[arg(long, default_value_t = 3.0)]
    r2: f64,
    /// (counting) residue class mod 32.
    #[arg(long, default_value_t = 3)]
    tau: u64,
    /// (counting) allowed relative deviation of empirical/N from the
    /// predicted density.
    #[arg(long, default_value_t = 0.15)]
    tolerance: f64,
    /// (densities) odd prime for the carefree count.
    #[arg(long, default_value_t = 3)]
    l: u64,
}

#[derive(Args)]
struct DensitiesArgs {
    /// Largest b in the table.
    #[arg(long, default_value_t = 20)]
    b_max: u64,
}

#[derive(Args)]
struct HistogramArgs {
    /// Discriminant bound X.
    #[arg(long)]
    x: f64,
    /// Field type for the report.
    #[arg(long, value_name = "TYPE")]
    typ: String,
    #[arg(long, default_value = "+")]
    sign: String,
    /// Bin edges for |a|/c, comma-separated and increasing.
    #[arg(long, value_delimiter = ',', default_value = "1,2,4")]
    r1_edges: Vec<f64>,
    /// Bin edges for b, comma-separated and increasing.
    #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
    r2_edges: Vec<f64>,
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

/// An error carrying the process exit code (1 = verification failure,
/// 2 = usage/domain error).
struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> CliError {
        CliError {
            code: 2,
            message: message.into(),
        }
    }

    fn verification(message: impl Into<String>) -> CliError {
        CliError {
            code: 1,
            message: message.into(),
        }
    }
}

fn field_error(e: FieldError) -> CliError {
    let message = match e {
        FieldError::ExcludedMinusFour => {
            "excluded case X^4 + 4 (m = -4 is reducible)".to_string()
        }
        other => other.to_string(),
    };
    CliError::usage(message)
}

fn parse_sign(s: &str) -> Result<Sign, CliError> {
    match s {
        "+" | "plus" => Ok(Sign::Plus),
        "-" | "minus" => Ok(Sign::Minus),
        other => Err(CliError::usage(format!("invalid sign '{other}'"))),
    }
}

fn parse_type(s: &str) -> Result<FieldType, CliError> {
    FieldType::from_str(s).map_err(|_| CliError::usage(format!("invalid type '{s}'")))
}

fn parse_rect(s: &str) -> Result<Rect, CliError> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::usage(format!("invalid rect '{s}': {e}")))?;
    if parts.len() != 4 {
        return Err(CliError::usage(format!(
            "rect needs 4 comma-separated values, got {}",
            parts.len()
        )));
    }
    if !(1.0 <= parts[0] && parts[0] <= parts[1] && 1.0 <= parts[2] && parts[2] <= parts[3]) {
        return Err(CliError::usage(format!("rect '{s}' is not a valid rectangle")));
    }
    Ok(Rect::new(parts[0], parts[1], parts[2], parts[3]))
}

/// Resolve the thread count: flag > config file > QSHAPE_THREADS > 1.
fn resolve_threads(cli: &Cli) -> Result<usize, CliError> {
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(CliError::usage("--threads must be positive"));
        }
        return Ok(t);
    }
    if let Some(path) = &cli.config {
        let config = read_config(path)?;
        if let Some(v) = config.get("threads") {
            return v
                .parse::<usize>()
                .ok()
                .filter(|&t| t > 0)
                .ok_or_else(|| {
                    CliError::usage(format!("config threads='{v}' is not a positive integer"))
                });
        }
    }
    if let Ok(v) = std::env::var("QSHAPE_THREADS") {
        return v
            .parse::<usize>()
            .ok()
            .filter(|&t| t > 0)
            .ok_or_else(|| {
                CliError::usage(format!("QSHAPE_THREADS='{v}' is not a positive integer"))
            });
    }
    Ok(1)
}

fn read_config(path: &std::path::Path) -> Result<HashMap<String, String>, CliError> {
    const KNOWN: &[&str] = &["threads"];
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
    let mut map = HashMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::usage(format!(
                "config {}:{}: expected key=value",
                path.display(),
                lineno + 1
            )));
        };
        let key = key.trim();
        if !KNOWN.contains(&key) {
            return Err(CliError::usage(format!(
                "config {}:{}: unknown key '{key}'",
                path.display(),
                lineno + 1
            )));
        }
        map.insert(key.to_string(), value.trim().to_string());
    }
    Ok(map)
}

fn cmd_classify(args: &ClassifyArgs) -> Result<(), CliError> {
    let f = PureQuarticField::new(args.m).map_err(field_error)?;
    let params = shape_params(&f.counting_form);
    if args.format == "json" {
        let record = json!({
            "m": f.m,
            "counting_form": {"a": f.counting_form.a, "b": f.counting_form.b, "c": f.counting_form.c},
            "funakura_form": {"a": f.funakura_form.a, "b": f.funakura_form.b, "c": f.funakura_form.c},
            "funakura_m": f.funakura_m,
            "type": f.class.typ.to_string(),
            "sign": f.class.sign.to_string(),
            "disc": f.discriminant.to_string(),
            "lambda1_sq": format!("{}/{}", params.lambda1_sq.0, params.lambda1_sq.1),
            "lambda2": format!("1/{}", params.b),
        });
        println!("{record}");
    } else {
        println!("m = {}", f.m);
        println!(
            "counting_form: a={} b={} c={}",
            f.counting_form.a, f.counting_form.b, f.counting_form.c
        );
        println!(
            "funakura_form: a={} b={} c={}",
            f.funakura_form.a, f.funakura_form.b, f.funakura_form.c
        );
        println!("funakura_m = {}", f.funakura_m);
        println!("type = {}{}", f.class.typ, f.class.sign);
        println!("disc = {}", f.discriminant);
        println!("lambda1_sq = {}/{}", params.lambda1_sq.0, params.lambda1_sq.1);
        println!("lambda2 = 1/{}", params.b);
    }
    Ok(())
}

fn cmd_shape(args: &ShapeArgs) -> Result<(), CliError> {
    let f = PureQuarticField::new(args.m).map_err(field_error)?;
    let g4 = gram(&f);
    let g3 = project_perp(&g4);
    let show_exact = !args.float;
    let show_float = !args.exact;
    if show_exact {
        println!("gram4 (exact):");
        for row in &g4.entries {
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            println!("  {}", cells.join(" "));
        }
        println!("gram3 (exact):");
        for row in &g3.entries {
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            println!("  {}", cells.join(" "));
        }
    }
    let g3f = g3.to_f64();
    if show_float {
        println!("gram4 (float):");
        for row in embed::gram_numeric(&f) {
            let cells: Vec<String> = row.iter().map(|&e| sig12(e)).collect();
            println!("  {}", cells.join(" "));
        }
        println!("gram3 (float):");
        for row in &g3f {
            let cells: Vec<String> = row.iter().map(|&e| sig12(e)).collect();
            println!("  {}", cells.join(" "));
        }
    }
    let coords = reduce::iwasawa(&g3f)
        .map_err(|e| CliError::usage(format!("iwasawa failed: {e}")))?;
    println!(
        "iwasawa: x1={} x2={} x3={} y1={} y2={}",
        sig12(coords.x1),
        sig12(coords.x2),
        sig12(coords.x3),
        sig12(coords.y1),
        sig12(coords.y2)
    );
    println!(
        "in_fundamental_domain = {}",
        reduce::in_f3(&g3f, reduce::BOUNDARY_TOL)
    );
    let params = shape_params(&f.counting_form);
    println!(
        "lambda1_sq = {}/{}  lambda2 = 1/{}",
        params.lambda1_sq.0, params.lambda1_sq.1, params.b
    );
    if args.reduce {
        let descriptor = shape::shape_of(args.m)
            .map_err(|e| CliError::usage(format!("reduction failed: {e}")))?;
        println!("reduced (det 1):");
        for row in &descriptor.reduced {
            let cells: Vec<String> = row.iter().map(|&e| sig12(e)).collect();
            println!("  {}", cells.join(" "));
        }
        println!("transform:");
        for row in &descriptor.transform {
            println!("  {} {} {}", row[0], row[1], row[2]);
        }
        println!(
            "reduced_in_f3 = {}",
            reduce::in_f3(&descriptor.reduced, reduce::BOUNDARY_TOL)
        );
    }
    Ok(())
}

fn build_filters(args: &EnumerateArgs) -> Result<Filters, CliError> {
    let types = match &args.types {
        Some(list) => Some(
            list.iter()
                .map(|s| parse_type(s))
                .collect::<Result<Vec<_>, _>>()?,
        ),
        None => None,
    };
    let sign = args.sign.as_deref().map(parse_sign).transpose()?;
    let rect = args.rect.as_deref().map(parse_rect).transpose()?;
    if let Some(t) = args.tau {
        if t % 8 == 0 {
            return Err(CliError::usage(format!("tau = {t} is divisible by 8")));
        }
    }
    Ok(Filters {
        types,
        sign,
        rect,
        tau: args.tau,
    })
}

fn cmd_enumerate(args: &EnumerateArgs, threads: usize) -> Result<(), CliError> {
    let filters = build_filters(args)?;
    let n = match (args.max_n, args.max_disc) {
        (Some(n), None) => n,
        (None, Some(x)) => {
            let Some([typ]) = filters.types.as_deref() else {
                return Err(CliError::usage(
                    "--max-disc needs --types with exactly one type to fix the 2-power",
                ));
            };
            (x / (1u64 << typ.two_power()) as f64).cbrt()
        }
        (None, None) => return Err(CliError::usage("one of --max-n or --max-disc is required")),
        (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
    };
    if n < 0.0 || n > 1e8 {
        return Err(CliError::usage(format!("bound N = {n} outside [0, 1e8]")));
    }
    let result = enumerate_fields(n, &filters, threads);
    let text = if args.format == "json" {
        render_json(&result)
    } else {
        render_csv(&result)
    };
    match &args.out {
        Some(path) => std::fs::write(path, text).map_err(|e| {
            CliError::usage(format!("cannot write {}: {e}", path.display()))
        })?,
        None => print!("{text}"),
    }
    Ok(())
}

fn render_csv(result: &EnumerationResult) -> String {
    let mut out = String::from("m,a,b,c,sign,type,disc,lambda1_sq_num,lambda1_sq_den,b_param\n");
    for r in &result.records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            r.m, r.a, r.b, r.c, r.sign, r.typ, r.disc, r.lambda1_sq.0, r.lambda1_sq.1, r.b_param
        ));
    }
    out.push_str(&format!(
        "# total={} excluded_8divm={}\n",
        result.records.len(),
        result.excluded_8divm
    ));
    out
}

fn render_json(result: &EnumerationResult) -> String {
    let records: Vec<_> = result
        .records
        .iter()
        .map(|r| {
            json!({
                "m": r.m.to_string(),
                "a": r.a,
                "b": r.b,
                "c": r.c,
                "sign": r.sign.to_string(),
                "type": r.typ.to_string(),
                "disc": r.disc.to_string(),
                "lambda1_sq_num": r.lambda1_sq.0,
                "lambda1_sq_den": r.lambda1_sq.1,
                "b_param": r.b_param,
            })
        })
        .collect();
    let doc = json!({
        "records": records,
        "total": result.records.len(),
        "excluded_8divm": result.excluded_8divm,
    });
    format!("{doc}\n")
}

/// One check inside a verify suite.
struct Check {
    check: String,
    passed: bool,
    observed: String,
    expected: String,
    tolerance: String,
}

fn report_checks(checks: &[Check]) -> Result<(), CliError> {
    let items: Vec<_> = checks
        .iter()
        .map(|c| {
            json!({
                "check": c.check,
                "status": if c.passed { "pass" } else { "fail" },
                "observed": c.observed,
                "expected": c.expected,
                "tolerance": c.tolerance,
            })
        })
        .collect();
    println!("{}", json!({ "checks": items }));
    if checks.iter().all(|c| c.passed) {
        Ok(())
    } else {
        let failed: Vec<&str> = checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.check.as_str())
            .collect();
        Err(CliError::verification(format!(
            "failed checks: {}",
            failed.join(", ")
        )))
    }
}

fn cmd_verify(args: &VerifyArgs, threads: usize) -> Result<(), CliError> {
    match args.suite.as_str() {
        "gram" => verify_gram(args.max_m),
        "counting" => verify_counting(args, threads),
        "densities" => verify_densities(args.l),
        "lipschitz" => verify_lipschitz(),
        other => Err(CliError::usage(format!("unknown verify suite '{other}'"))),
    }
}

fn verify_gram(max_m: i64) -> Result<(), CliError> {
    let mut worst = 0.0f64;
    let mut det_failures = 0u64;
    let mut fields = 0u64;
    for m in -max_m..=max_m {
        let Ok(f) = PureQuarticField::new(m) else {
            continue;
        };
        fields += 1;
        let exact = gram(&f);
        if exact.det() != num::bigint::BigInt::from(f.abs_discriminant()) {
            det_failures += 1;
        }
        let ef = exact.to_f64();
        let nf = embed::gram_numeric(&f);
        for i in 0..4 {
            for j in 0..4 {
                let rel = (ef[i][j] - nf[i][j]).abs() / ef[i][j].abs().max(1.0);
                worst = worst.max(rel);
            }
        }
    }
    report_checks(&[
        Check {
            check: format!("gram determinant equals |disc| ({fields} fields)"),
            passed: det_failures == 0,
            observed: format!("{det_failures} mismatches"),
            expected: "0 mismatches".into(),
            tolerance: "exact".into(),
        },
        Check {
            check: "exact vs numeric gram".into(),
            passed: worst <= 1e-9,
            observed: sig12(worst),
            expected: "<= 1e-9 relative".into(),
            tolerance: "1e-9".into(),
        },
    ])
}

fn verify_counting(args: &VerifyArgs, threads: usize) -> Result<(), CliError> {
    let report = count_c_tau(args.n, args.r1, args.r2, args.tau, threads)
        .map_err(|e| CliError::usage(e.to_string()))?;
    let deviation = (report.ratio - report.predicted).abs();
    report_checks(&[Check {
        check: format!(
            "C^tau density, tau={} N={} R1={} R2={}",
            args.tau, args.n, args.r1, args.r2
        ),
        passed: deviation <= args.tolerance * report.predicted,
        observed: format!("empirical/N = {}", sig12(report.ratio)),
        expected: format!("predicted = {}", sig12(report.predicted)),
        tolerance: format!("{} relative", args.tolerance),
    }])
}

fn verify_densities(l: u64) -> Result<(), CliError> {
    if l < 3 || l > 13 || !qshape_core::factor::is_prime(l) {
        return Err(CliError::usage(format!(
            "--l must be an odd prime in [3, 13], got {l}"
        )));
    }
    let brute = carefree::brute_force_a(l);
    let formula = carefree::a_l_formula(l);
    let total = (l * l).pow(3);
    let density = carefree::carefree_density(l);
    report_checks(&[Check {
        check: format!("carefree count A_{l}"),
        passed: brute == formula,
        observed: format!("{brute}/{total} = {density}"),
        expected: format!("{formula}/{total}"),
        tolerance: "exact".into(),
    }])
}

fn verify_lipschitz() -> Result<(), CliError> {
    let mut failures = Vec::new();
    for m in [1e2, 1e3, 1e4, 1e5] {
        for r in [1.0, 2.0, 5.0, 10.0] {
            if !region::lipschitz_check(m, r) {
                failures.push(format!("(M={m}, R={r})"));
            }
        }
    }
    report_checks(&[Check {
        check: "lipschitz principle on the (M, R) grid".into(),
        passed: failures.is_empty(),
        observed: if failures.is_empty() {
            "all grid points satisfy the bound".into()
        } else {
            failures.join(" ")
        },
        expected: "|count - area| <= 4(L+1)".into(),
        tolerance: "exact".into(),
    }])
}

fn cmd_densities(args: &DensitiesArgs) -> Result<(), CliError> {
    println!("b,alpha,M_I,M_II,M_III,M_IV,M_V");
    for b in 1..=args.b_max {
        let cells: Vec<String> = [
            FieldType::I,
            FieldType::II,
            FieldType::III,
            FieldType::IV,
            FieldType::V,
        ]
        .iter()
        .map(|&t| m_star(t, b).to_string())
        .collect();
        println!("{b},{},{}", sig12(alpha(b)), cells.join(","));
    }
    for t in [
        FieldType::I,
        FieldType::II,
        FieldType::III,
        FieldType::IV,
        FieldType::V,
    ] {
        println!(
            "# psi_{}({}) = {}",
            t,
            args.b_max,
            sig12(psi_star(t, args.b_max as f64))
        );
    }
    Ok(())
}

fn cmd_histogram(args: &HistogramArgs, threads: usize) -> Result<(), CliError> {
    let typ = parse_type(&args.typ)?;
    let sign = parse_sign(&args.sign)?;
    for edges in [&args.r1_edges, &args.r2_edges] {
        if edges.len() < 2 || edges.windows(2).any(|w| w[0] >= w[1]) || edges[0] < 1.0 {
            return Err(CliError::usage(
                "bin edges must be increasing and start at >= 1",
            ));
        }
    }
    let mut out = String::from("bin,empirical,predicted,ratio\n");
    for w1 in args.r1_edges.windows(2) {
        for w2 in args.r2_edges.windows(2) {
            let rect = Rect::new(w1[0], w1[1], w2[0], w2[1]);
            let report = theorem_ratio_report(typ, sign, args.x, &rect, threads);
            out.push_str(&format!(
                "[{},{}]x[{},{}],{},{},{}\n",
                w1[0],
                w1[1],
                w2[0],
                w2[1],
                report.empirical,
                sig12(report.predicted),
                sig12(report.ratio)
            ));
        }
    }
    match &args.out {
        Some(path) => std::fs::write(path, out).map_err(|e| {
            CliError::usage(format!("cannot write {}: {e}", path.display()))
        })?,
        None => print!("{out}"),
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), CliError> {
    // Validate the config file eagerly so unknown keys fail fast even
    // for subcommands that ignore it.
    if let Some(path) = &cli.config {
        read_config(path)?;
    }
    let threads = resolve_threads(cli)?;
    match &cli.command {
        Command::Classify(args) => cmd_classify(args),
        Command::Shape(args) => cmd_shape(args),
        Command::Enumerate(args) => cmd_enumerate(args, threads),
        Command::Verify(args) => cmd_verify(args, threads),
        Command::Densities(args) => cmd_densities(args),
        Command::Histogram(args) => cmd_histogram(args, threads),
    }
}

fn main() -> ExitCode {
    // Die quietly on closed pipes (e.g. `qshape enumerate ... | head`)
    // instead of panicking on the failed write.
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let mut stderr = std::io::stderr();
            let _ = writeln!(stderr, "error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
