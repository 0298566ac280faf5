use clap::{Args, Parser, Subcommand, ValueEnum};
use hermcm::cmcycles::{a_f_zero, deg_big, deg_big_exact, deg_small, dirichlet_chain, parse_alpha, EisensteinContext};
use hermcm::convolution::{
    coset_twist_table, euler_factor_product, scalar_vector_identity, EulerFactor,
};
use hermcm::fields::{CMExtension, FieldDescriptor, ImagQuadField};
use hermcm::heights::{height_report, HeightReport};
use hermcm::lattices::{aut_count, HermitianLattice, LatticeFile, ThetaTable};
use hermcm::lfun::{hecke_l, Mode};
use hermcm::suite::{ingest_newform, run_suite, Format, RunConfig, Suite};
use hermcm::weilrep::{cm_newform, full_lattice, gamma_p, induce, AtkinLehner, LocalData, NewformData};
use hermcm::{Error, Rat, C64};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "hermcm", version, about = "Hermitian lattices, induced forms, L-values and CM height formulas")]
struct Cli {
    /// Run configuration (JSON); the bundled configuration is used when absent.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Fmt::Json)]
    format: Fmt,
    /// Worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Seed for randomized property checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fmt {
    Json,
    Text,
    Csv,
}

impl From<Fmt> for Format {
    fn from(f: Fmt) -> Self {
        match f {
            Fmt::Json => Format::Json,
            Fmt::Text => Format::Text,
            Fmt::Csv => Format::Csv,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum LMode {
    Abelian,
    Series,
}

impl From<LMode> for Mode {
    fn from(m: LMode) -> Self {
        match m {
            LMode::Abelian => Mode::AbelianFactor,
            LMode::Series => Mode::IdealSeries,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ConvCheck {
    Coset,
    ScalarVector,
    Euler,
}

#[derive(Args)]
struct FieldArg {
    /// Field descriptor {"k": {"D": ..}, "F": {"min_poly": [..]}}.
    #[arg(long)]
    field_json: PathBuf,
}

#[derive(Args)]
struct NewformArg {
    /// `internal` for the generated CM newform, otherwise a CSV path (m, re, im).
    #[arg(long, default_value = "internal")]
    newform: String,
    #[arg(long, default_value_t = 3)]
    weight: u32,
}

#[derive(Subcommand)]
enum Cmd {
    /// Invariants of k, F and E.
    Field {
        #[arg(long, conflicts_with = "d")]
        field_json: Option<PathBuf>,
        /// Only the imaginary quadratic field of discriminant -D.
        #[arg(long)]
        d: Option<u64>,
    },
    /// Theta coefficients R(m, mu) as CSV (m_numerator, m_denominator, coset_index, count).
    Theta {
        #[arg(long)]
        lattice: PathBuf,
        /// Precision, an integer or a fraction a/b.
        #[arg(long, default_value = "10")]
        prec: String,
        /// Use box enumeration instead of short vectors.
        #[arg(long)]
        naive: bool,
    },
    /// Induced coefficients a~(m, mu) as CSV (m_num, m_den, coset_index, re, im).
    Induce {
        /// The lattice L of signature (n-1, 1).
        #[arg(long)]
        lattice: PathBuf,
        /// Treat the lattice file as positive definite Lambda and use O_k(-1) + Lambda.
        #[arg(long)]
        lambda: bool,
        #[command(flatten)]
        nf: NewformArg,
        #[arg(long, default_value = "10")]
        prec: String,
    },
    /// Coefficient identities of the convolution L-function.
    Convolve {
        /// Positive definite self-dual Lambda.
        #[arg(long)]
        lattice: PathBuf,
        #[command(flatten)]
        nf: NewformArg,
        #[arg(long, default_value_t = 30)]
        prec: i64,
        #[arg(long, value_enum, default_value_t = ConvCheck::ScalarVector)]
        check: ConvCheck,
    },
    /// L(s, chi_E) and its derivative.
    Lfun {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long, value_enum, default_value_t = LMode::Abelian)]
        mode: LMode,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        s: f64,
        /// Report the derivative (otherwise it is omitted).
        #[arg(long)]
        deriv: bool,
        #[arg(long)]
        cutoff: Option<u64>,
    },
    /// Eisenstein coefficients a_F(alpha, 0) and trace sums.
    Eisenstein {
        #[command(flatten)]
        field: FieldArg,
        /// Power-basis coordinates "a0,a1,.../den".
        #[arg(long, conflicts_with = "trace")]
        alpha: Option<String>,
        /// Sum over totally positive alpha in the inverse different with trace m.
        #[arg(long)]
        trace: Option<u64>,
        #[arg(long, value_enum, default_value_t = LMode::Abelian)]
        mode: LMode,
    },
    /// Degrees of the small and big CM cycles.
    Degrees {
        #[arg(long)]
        field_json: Option<PathBuf>,
        /// Small-cycle degree for this D ...
        #[arg(long, requires = "aut")]
        d: Option<u64>,
        /// ... and this |Aut(Lambda)|.
        #[arg(long)]
        aut: Option<u64>,
        /// Small-cycle degree with |Aut| of this lattice file.
        #[arg(long, conflicts_with_all = ["d", "aut"])]
        lattice: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = LMode::Abelian)]
        mode: LMode,
    },
    /// Faltings height report.
    Faltings {
        #[arg(long, required_unless_present = "table")]
        field_json: Option<PathBuf>,
        /// Regression table over the fields of the run configuration.
        #[arg(long)]
        table: bool,
        #[arg(long, value_enum, default_value_t = LMode::Abelian)]
        mode: LMode,
    },
    /// Run verification suites: lattice, weilrep, lfun, convolution, eisenstein, heights, all.
    Verify {
        /// Suites to run; the config's list when omitted.
        suites: Vec<String>,
    },
}

enum Failure {
    /// Bad input or configuration: exit 2.
    Config(String),
    /// A check failed: exit 1.
    Check,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Config(e.to_string())
    }
}

type Res<T> = std::result::Result<T, Failure>;

fn read(path: &Path) -> Res<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Config(format!("cannot read {}: {e}", path.display())))
}

fn load_field(path: &Path) -> Res<CMExtension> {
    Ok(FieldDescriptor::parse(&read(path)?)?.build()?)
}

fn load_lattice(path: &Path) -> Res<HermitianLattice> {
    Ok(LatticeFile::parse(&read(path)?)?.build()?)
}

fn parse_rat(s: &str) -> Res<Rat> {
    let bad = || Failure::Config(format!("bad precision '{s}'"));
    let (a, b) = match s.split_once('/') {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
        None => (s.trim().parse().map_err(|_| bad())?, 1i128),
    };
    if b == 0 {
        return Err(bad());
    }
    Ok(Rat::new(a, b))
}

fn load_newform(arg: &NewformArg, k: &ImagQuadField, prec: usize) -> Res<NewformData> {
    if arg.newform == "internal" {
        return Ok(cm_newform(k, arg.weight, prec)?);
    }
    let (g, warn) = ingest_newform(Path::new(&arg.newform), arg.weight, k.d)?;
    if let Some(w) = warn {
        eprintln!("warning: {w}");
    }
    Ok(g)
}

fn load_config(cli: &Cli) -> Res<RunConfig> {
    let mut c = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(s) = cli.seed {
        c.seed = s;
    }
    Ok(c)
}

fn c64(z: C64) -> Value {
    json!([z.re, z.im])
}

fn emit(cli: &Cli, text: &str) -> Res<()> {
    match &cli.out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Config(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_json(cli: &Cli, v: &impl serde::Serialize) -> Res<()> {
    let s = serde_json::to_string_pretty(v).map_err(|e| Failure::Config(e.to_string()))?;
    emit(cli, &(s + "\n"))
}

fn cmd_field(cli: &Cli, field_json: &Option<PathBuf>, d: Option<u64>) -> Res<()> {
    match (field_json, d) {
        (Some(p), _) => {
            let e = load_field(p)?;
            emit_json(cli, &json!({
                "k": e.k,
                "F": { "min_poly": e.f.min_poly, "n": e.f.n, "disc_F": e.f.disc_f, "index": e.f.index, "roots": e.f.roots },
                "E": { "r": e.r, "abs_disc_E": e.abs_disc_e.to_string(), "ramified": e.ramified },
            }))
        }
        (None, Some(d)) => emit_json(cli, &json!({ "k": ImagQuadField::new(d)? })),
        (None, None) => Err(Failure::Config("field needs --field-json or --d".into())),
    }
}

fn cmd_theta(cli: &Cli, lattice: &Path, prec: &str, naive: bool) -> Res<()> {
    let l = load_lattice(lattice)?;
    let prec = parse_rat(prec)?;
    let t = if naive { ThetaTable::naive(&l.zgram, prec)? } else { ThetaTable::new(&l, prec)? };
    let mut buf = Vec::new();
    t.write_csv(&mut buf)?;
    emit(cli, &String::from_utf8_lossy(&buf))
}

fn cmd_induce(cli: &Cli, lattice: &Path, lambda: bool, nf: &NewformArg, prec: &str) -> Res<()> {
    let mut l = load_lattice(lattice)?;
    if lambda {
        l = full_lattice(&l)?;
    }
    let prec = parse_rat(prec)?;
    let need = (prec * Rat::from_integer(l.k.d as i128)).floor().to_integer() as usize + 1;
    let g = load_newform(nf, &l.k, need)?;
    let a = induce(&g, &l, prec)?;
    let mut buf = Vec::new();
    a.write_csv(&mut buf)?;
    emit(cli, &String::from_utf8_lossy(&buf))
}

fn cmd_convolve(cli: &Cli, lattice: &Path, nf: &NewformArg, prec: i64, check: ConvCheck) -> Res<()> {
    let lam = load_lattice(lattice)?;
    if prec <= 0 {
        return Err(Failure::Config("precision must be positive".into()));
    }
    let d = lam.k.d;
    let report = match check {
        ConvCheck::Coset => {
            let mut rows = Vec::new();
            let mut ok = true;
            for q in hermcm::arith::divisors(d) {
                for (m, (a, b)) in coset_twist_table(&lam, q, prec as u64)?.into_iter().enumerate() {
                    ok &= a == b;
                    rows.push(json!({ "Q": q, "m": m, "lhs": a, "rhs": b, "residual": a.abs_diff(b) }));
                }
            }
            json!({ "check": "coset", "passed": ok, "rows": rows })
        }
        ConvCheck::ScalarVector => {
            let g = load_newform(nf, &lam.k, prec as usize * d as usize + 1)?;
            let r = scalar_vector_identity(&g, &lam, Rat::from_integer(prec as i128))?;
            let rows: Vec<Value> = r
                .rows
                .iter()
                .map(|x| json!({ "m": x.m.to_string(), "lhs": c64(x.lhs), "rhs": c64(x.rhs), "residual": x.residual }))
                .collect();
            json!({
                "check": "scalar-vector",
                "passed": r.max_residual <= 1e-10,
                "max_residual": r.max_residual,
                "lhs_at_4": c64(r.lhs_at_4),
                "rhs_at_4": c64(r.rhs_at_4),
                "tail_bound_at_4": r.tail_bound_at_4,
                "rows": rows,
            })
        }
        ConvCheck::Euler => {
            let g = load_newform(nf, &lam.k, d as usize + 1)?;
            let loc = LocalData::of_lattice(&full_lattice(&lam)?);
            let mut factors = Vec::new();
            for p in hermcm::arith::prime_divisors(d) {
                factors.push(EulerFactor {
                    p,
                    eps: AtkinLehner::new(&g, p, 1)?.eps.to_c64(),
                    gamma: gamma_p(p, &loc)?.to_c64(),
                    chi: C64::new(1.0, 0.0),
                });
            }
            let e = euler_factor_product(&factors);
            json!({
                "check": "euler",
                "factors": factors.iter().map(|f| json!({ "p": f.p, "coefficient": c64(f.coefficient()), "value_at_0": c64(f.at(0.0)) })).collect::<Vec<_>>(),
                "value": c64(e.value),
                "derivative": c64(e.derivative),
                "vanishing": e.vanishing,
            })
        }
    };
    let failed = report.get("passed") == Some(&Value::Bool(false));
    emit_json(cli, &report)?;
    if failed {
        Err(Failure::Check)
    } else {
        Ok(())
    }
}

fn cmd_lfun(cli: &Cli, field: &FieldArg, mode: LMode, s: f64, deriv: bool, cutoff: Option<u64>) -> Res<()> {
    let e = load_field(&field.field_json)?;
    let l = hecke_l(&e, mode.into(), s, cutoff)?;
    emit_json(cli, &json!({
        "value": l.value,
        "derivative": if deriv { json!(l.derivative) } else { Value::Null },
        "method": l.method,
        "cutoff": l.cutoff,
        "est_error": l.est_error,
    }))
}

fn cmd_eisenstein(cli: &Cli, field: &FieldArg, alpha: &Option<String>, trace: Option<u64>, mode: LMode) -> Res<()> {
    let e = load_field(&field.field_json)?;
    let ctx = EisensteinContext::new(&e)?;
    let fmt_alpha = |a: &[Rat]| a.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    match (alpha, trace) {
        (Some(s), _) => {
            let a = parse_alpha(s, e.n())?;
            let c = ctx.a_f_alpha(&a)?;
            emit_json(cli, &json!({ "alpha": fmt_alpha(&a), "diff": c.diff, "value": c.value }))
        }
        (None, Some(0)) => emit_json(cli, &json!({ "alpha": "0", "value": a_f_zero(&e, true, mode.into())? })),
        (None, Some(m)) => {
            let cands = ctx.trace_candidates(m)?;
            let terms: Vec<Value> = cands
                .iter()
                .map(|a| {
                    let c = ctx.a_f_alpha(a)?;
                    Ok(json!({ "alpha": fmt_alpha(a), "diff": c.diff, "value": c.value }))
                })
                .collect::<hermcm::Result<_>>()?;
            emit_json(cli, &json!({ "trace": m, "sum": ctx.trace_sum(m)?, "terms": terms }))
        }
        (None, None) => Err(Failure::Config("eisenstein needs --alpha or --trace".into())),
    }
}

fn cmd_degrees(cli: &Cli, field_json: &Option<PathBuf>, d: Option<u64>, aut: Option<u64>, lattice: &Option<PathBuf>, mode: LMode) -> Res<()> {
    let mut out = serde_json::Map::new();
    let small = match (lattice, d, aut) {
        (Some(p), _, _) => {
            let l = load_lattice(p)?;
            let a = aut_count(&l)?;
            Some((l.k.clone(), a))
        }
        (None, Some(d), Some(a)) => Some((ImagQuadField::new(d)?, a)),
        _ => None,
    };
    if let Some((k, a)) = small {
        out.insert("aut".into(), json!(a));
        out.insert("deg_small".into(), json!(deg_small(&k, a)?.to_string()));
    }
    if let Some(p) = field_json {
        let e = load_field(p)?;
        let db = deg_big(&e, mode.into())?;
        out.insert("r".into(), json!(e.r));
        out.insert("deg_big".into(), json!(db));
        out.insert("deg_big_over_n".into(), json!(db / e.n() as f64));
        if e.n() == 2 {
            if let Ok(x) = deg_big_exact(&e) {
                out.insert("deg_big_exact".into(), json!(x.to_string()));
            }
            if e.k.d != 3 {
                out.insert("dirichlet_chain".into(), serde_json::to_value(dirichlet_chain(&e, mode.into())?).unwrap_or(Value::Null));
            }
        }
    }
    if out.is_empty() {
        return Err(Failure::Config("degrees needs --field-json, --lattice or --d with --aut".into()));
    }
    emit_json(cli, &Value::Object(out))
}

fn height_table(reports: &[HeightReport], format: Format) -> String {
    let header = ["D", "F", "h_falt_k", "h_falt_E_Phi", "lambda0", "lambda1", "deg_big", "omega_degree", "gross_c", "residual"];
    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            vec![
                r.d.to_string(),
                format!("{:?}", r.f_poly),
                format!("{:.12}", r.h_falt_k),
                format!("{:.12}", r.h_falt_e_phi),
                format!("{:.12}", r.lambda0_chi_e),
                format!("{:.12}", r.lambda1_chi_e),
                format!("{:.12}", r.deg_big),
                format!("{:.12}", r.omega_degree),
                format!("{:.12}", r.gross_c),
                format!("{:.2e}", r.consistency_residual),
            ]
        })
        .collect();
    match format {
        Format::Csv => {
            let mut s = header.join(",") + "\n";
            for r in rows {
                s += &r.iter().map(|x| if x.contains(',') { format!("\"{x}\"") } else { x.clone() }).collect::<Vec<_>>().join(",");
                s += "\n";
            }
            s
        }
        _ => {
            let widths: Vec<usize> = (0..header.len())
                .map(|i| rows.iter().map(|r| r[i].len()).chain([header[i].len()]).max().unwrap_or(0))
                .collect();
            let line = |cells: Vec<String>| {
                cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect::<Vec<_>>().join("  ") + "\n"
            };
            let mut s = line(header.iter().map(|h| h.to_string()).collect());
            for r in rows {
                s += &line(r);
            }
            s
        }
    }
}

fn cmd_faltings(cli: &Cli, field_json: &Option<PathBuf>, table: bool, mode: LMode) -> Res<()> {
    if table {
        let cfg = load_config(cli)?;
        let ctx = hermcm::suite::Context::build(&cfg)?;
        let reports: Vec<HeightReport> =
            ctx.fields.iter().map(|(_, e)| height_report(e, mode.into())).collect::<hermcm::Result<_>>()?;
        return match cli.format {
            Fmt::Json => emit_json(cli, &reports),
            f => emit(cli, &height_table(&reports, f.into())),
        };
    }
    let e = load_field(field_json.as_ref().expect("clap enforces the field"))?;
    emit_json(cli, &height_report(&e, mode.into())?)
}

fn cmd_verify(cli: &Cli, suites: &[String]) -> Res<()> {
    let cfg = load_config(cli)?;
    let selected: Option<Vec<Suite>> = if suites.is_empty() {
        None
    } else {
        Some(suites.iter().map(|s| s.parse()).collect::<hermcm::Result<_>>()?)
    };
    let report = run_suite(&cfg, selected.as_deref())?;
    emit(cli, &report.render(cli.format.into())?)?;
    for c in report.failures() {
        eprintln!("{} {}: {}", c.status.label(), c.name, c.detail.as_deref().unwrap_or(&c.description));
    }
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn run(cli: &Cli) -> Res<()> {
    if let Some(j) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build_global()
            .map_err(|e| Failure::Config(format!("thread pool: {e}")))?;
    }
    match &cli.cmd {
        Cmd::Field { field_json, d } => cmd_field(cli, field_json, *d),
        Cmd::Theta { lattice, prec, naive } => cmd_theta(cli, lattice, prec, *naive),
        Cmd::Induce { lattice, lambda, nf, prec } => cmd_induce(cli, lattice, *lambda, nf, prec),
        Cmd::Convolve { lattice, nf, prec, check } => cmd_convolve(cli, lattice, nf, *prec, *check),
        Cmd::Lfun { field, mode, s, deriv, cutoff } => cmd_lfun(cli, field, *mode, *s, *deriv, *cutoff),
        Cmd::Eisenstein { field, alpha, trace, mode } => cmd_eisenstein(cli, field, alpha, *trace, *mode),
        Cmd::Degrees { field_json, d, aut, lattice, mode } => cmd_degrees(cli, field_json, *d, *aut, lattice, *mode),
        Cmd::Faltings { field_json, table, mode } => cmd_faltings(cli, field_json, *table, *mode),
        Cmd::Verify { suites } => cmd_verify(cli, suites),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
