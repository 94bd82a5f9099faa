//! Command-line front end: parses algebra and module files, runs the
//! computations and renders aligned tables or stable-keyed JSON.
//!
//! Exit codes: 0 success, 1 computation-level failure (an uncertified
//! precondition), 2 parse or usage error, 3 internal invariant violation.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use gorenstein::algebra::{cyclic_nakayama, opposite, MonomialAlgebra};
use gorenstein::fieldmat::Field;
use gorenstein::format::{
    builtin_module, parse_algebra_file_with, parse_module_file, write_algebra_file, write_module_file,
};
use gorenstein::rep::{direct_sum, dual_over, strip_projective_summands, Representation, DEFAULT_SEED};
use gorenstein::resolution::{
    complexity_estimate, default_ext_horizon, default_resolution_horizon, ext_dims, min_resolution,
    ComplexityClass,
};
use gorenstein::sg::{
    is_n_sg_flat, is_n_sg_injective, is_n_sg_projective, projectivity_via_self_ext, sg_projective_period_set,
    syzygy_cycle_sum, verify_theorem_suite, CheckStatus, Flavor, GcdChain, SgError, SgOptions, VerdictReport,
};

pub const SEED_ENV: &str = "GORENSTEIN_SEED";

pub const EXIT_OK: i32 = 0;
pub const EXIT_COMPUTATION: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "gorenstein", version, about = "Syzygies, Ext and strongly Gorenstein modules over monomial algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Algebra file, or a builtin `C<n>` (radical-square-zero cyclic Nakayama).
    #[arg(long, global = true)]
    pub algebra: Option<String>,

    /// Field characteristic for builtins and for files without a `field` line.
    #[arg(long, global = true)]
    pub prime: Option<u32>,

    /// RNG seed for isomorphism search (decimal or 0x-hex); beats GORENSTEIN_SEED.
    #[arg(long, global = true)]
    pub seed: Option<String>,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Table)]
    pub format: OutputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Table,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FlavorArg {
    Projective,
    Injective,
    Flat,
}

#[derive(Debug, Args)]
pub struct ModuleArgs {
    /// Module file or builtin such as `simple:1` or `simple 1 + proj 2`.
    #[arg(long = "module")]
    pub module: Vec<String>,

    /// Builtin module written as trailing words, e.g. `simple 1`.
    #[arg(trailing_var_arg = true)]
    pub spec: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimal projective resolution: terms and dimensions.
    Resolve {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long)]
        horizon: Option<usize>,
    },
    /// dim Ext^i(M, N) over a degree range; give two modules.
    Ext {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long, default_value_t = 0)]
        degree_from: usize,
        #[arg(long)]
        degree_to: Option<usize>,
    },
    /// Decide whether a module is n-strongly Gorenstein projective, injective or flat.
    Sg {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = FlavorArg::Projective)]
        flavor: FlavorArg,
        /// Also build the 1-periodic sum of the first n syzygies.
        #[arg(long)]
        cycle_sum: bool,
        /// Also decide projectivity from Ext^i(M, M), 1 <= i <= n.
        #[arg(long)]
        self_ext: bool,
    },
    /// All n up to the horizon for which the module is n-SG-projective.
    PeriodSet {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long)]
        horizon: Option<usize>,
    },
    /// Split off projective summands.
    Strip {
        #[command(flatten)]
        module: ModuleArgs,
    },
    /// k-dual module over the opposite algebra, in module-file format.
    Dual {
        #[command(flatten)]
        module: ModuleArgs,
        /// Write the dual module file here instead of stdout.
        #[arg(long)]
        output: Option<String>,
        /// Write the opposite algebra file here.
        #[arg(long)]
        algebra_output: Option<String>,
    },
    /// Growth of the minimal projective resolution.
    Complexity {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long)]
        horizon: Option<usize>,
    },
    /// Run the theorem suite on the algebra; nonzero exit on any failure.
    Verify {
        #[arg(long)]
        horizon: Option<usize>,
    },
}

/// Rendered output and exit status of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_PARSE,
            message: message.into(),
        }
    }

    fn computation(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_COMPUTATION,
            message: message.into(),
        }
    }

    fn invariant(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INVARIANT,
            message: message.into(),
        }
    }
}

impl From<SgError> for Failure {
    fn from(e: SgError) -> Self {
        match e {
            SgError::Uncertified { .. } => Failure::computation(e.to_string()),
            _ => Failure::invariant(e.to_string()),
        }
    }
}

pub fn parse_seed(s: &str) -> Result<u64, String> {
    let s = s.trim();
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse::<u64>(),
    };
    parsed.map_err(|_| format!("bad seed `{s}`"))
}

/// Runs one invocation. `env_seed` is the value of GORENSTEIN_SEED, if set.
pub fn run<I, T>(args: I, env_seed: Option<&str>) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                RunOutput {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                RunOutput {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let result = panic::catch_unwind(AssertUnwindSafe(|| execute(&cli, env_seed)));
    match result {
        Ok(Ok(stdout)) => RunOutput {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        },
        Ok(Err((stdout, f))) => RunOutput {
            code: f.code,
            stdout,
            stderr: format!("error: {}\n", f.message),
        },
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "unknown panic".into());
            RunOutput {
                code: EXIT_INVARIANT,
                stdout: String::new(),
                stderr: format!("error: internal invariant violated: {msg}\n"),
            }
        }
    }
}

struct Context {
    algebra: Arc<MonomialAlgebra>,
    algebra_label: String,
    seed: u64,
    format: OutputFormat,
}

#[derive(Serialize)]
struct Header<'a> {
    command: &'a str,
    seed: String,
    algebra: AlgebraSummary,
    modules: Vec<ModuleSummary>,
}

#[derive(Serialize)]
struct AlgebraSummary {
    source: String,
    prime: u32,
    vertices: usize,
    arrows: usize,
    relations: usize,
    dimension: usize,
}

#[derive(Serialize, Clone)]
struct ModuleSummary {
    source: String,
    dims: Vec<usize>,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    header: Header<'a>,
    result: T,
}

fn seed_hex(seed: u64) -> String {
    format!("{seed:#x}")
}

fn resolve_seed(flag: Option<&str>, env: Option<&str>) -> Result<u64, Failure> {
    match (flag, env) {
        (Some(s), _) => parse_seed(s).map_err(|e| Failure::parse(format!("--seed: {e}"))),
        (None, Some(s)) => parse_seed(s).map_err(|e| Failure::parse(format!("{SEED_ENV}: {e}"))),
        (None, None) => Ok(DEFAULT_SEED),
    }
}

fn load_algebra(spec: Option<&str>, prime: Option<u32>) -> Result<(Arc<MonomialAlgebra>, String), Failure> {
    let Some(spec) = spec else {
        return Err(Failure::parse("--algebra is required"));
    };
    if !Path::new(spec).exists() {
        if let Some(n) = spec.strip_prefix(['C', 'c']).and_then(|n| n.parse::<usize>().ok()) {
            let p = prime.unwrap_or(2);
            let field = Field::new(p).map_err(|e| Failure::parse(format!("--prime: {e}")))?;
            let alg = cyclic_nakayama(n, field).map_err(|e| Failure::parse(format!("--algebra {spec}: {e}")))?;
            return Ok((Arc::new(alg), spec.to_string()));
        }
    }
    let text = std::fs::read_to_string(spec).map_err(|e| Failure::parse(format!("{spec}: {e}")))?;
    let alg = parse_algebra_file_with(&text, prime.unwrap_or(2)).map_err(|e| Failure::parse(format!("{spec}: {e}")))?;
    if let Some(p) = prime {
        if alg.field().p() != p {
            return Err(Failure::parse(format!(
                "{spec} declares p={} but --prime is {p}",
                alg.field().p()
            )));
        }
    }
    Ok((Arc::new(alg), spec.to_string()))
}

/// Parses a builtin module expression such as `simple 1 + proj:2`.
pub fn parse_module_spec(alg: &Arc<MonomialAlgebra>, spec: &str) -> Result<Representation, String> {
    let mut parts = Vec::new();
    for term in spec.split('+') {
        let toks: Vec<&str> = term.split([' ', ':']).filter(|t| !t.is_empty()).collect();
        let [kind, vertex] = toks[..] else {
            return Err(format!("`{}` is not a module file or builtin like `simple 1`", term.trim()));
        };
        let v = vertex.parse::<usize>().map_err(|_| format!("bad vertex `{vertex}`"))?;
        parts.push(builtin_module(alg, kind, v)?);
    }
    Ok(direct_sum(&parts).map_err(|e| e.to_string())?.sum)
}

fn load_module(alg: &Arc<MonomialAlgebra>, spec: &str) -> Result<Representation, Failure> {
    if Path::new(spec).is_file() {
        let text = std::fs::read_to_string(spec).map_err(|e| Failure::parse(format!("{spec}: {e}")))?;
        return parse_module_file(&text, alg)
            .map(|m| m.module)
            .map_err(|e| Failure::parse(format!("{spec}: {e}")));
    }
    parse_module_spec(alg, spec).map_err(Failure::parse)
}

fn load_modules(alg: &Arc<MonomialAlgebra>, args: &ModuleArgs) -> Result<Vec<(String, Representation)>, Failure> {
    let mut specs = args.module.clone();
    if !args.spec.is_empty() {
        specs.push(args.spec.join(" "));
    }
    specs
        .into_iter()
        .map(|s| load_module(alg, &s).map(|m| (s, m)))
        .collect()
}

fn one_module(alg: &Arc<MonomialAlgebra>, args: &ModuleArgs) -> Result<(String, Representation), Failure> {
    let mut ms = load_modules(alg, args)?;
    if ms.len() != 1 {
        return Err(Failure::parse(format!("expected one module, got {}", ms.len())));
    }
    Ok(ms.remove(0))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Resolve { .. } => "resolve",
        Command::Ext { .. } => "ext",
        Command::Sg { .. } => "sg",
        Command::PeriodSet { .. } => "period-set",
        Command::Strip { .. } => "strip",
        Command::Dual { .. } => "dual",
        Command::Complexity { .. } => "complexity",
        Command::Verify { .. } => "verify",
    }
}

type Exec = Result<String, (String, Failure)>;

fn execute(cli: &Cli, env_seed: Option<&str>) -> Exec {
    let setup = || -> Result<Context, Failure> {
        let seed = resolve_seed(cli.seed.as_deref(), env_seed)?;
        let (algebra, algebra_label) = load_algebra(cli.algebra.as_deref(), cli.prime)?;
        Ok(Context {
            algebra,
            algebra_label,
            seed,
            format: cli.format,
        })
    };
    let ctx = setup().map_err(|f| (String::new(), f))?;
    let name = command_name(&cli.command);
    match &cli.command {
        Command::Resolve { module, horizon } => cmd_resolve(&ctx, name, module, *horizon),
        Command::Ext {
            module,
            degree_from,
            degree_to,
        } => cmd_ext(&ctx, name, module, *degree_from, *degree_to),
        Command::Sg {
            module,
            n,
            flavor,
            cycle_sum,
            self_ext,
        } => cmd_sg(&ctx, name, module, *n, *flavor, *cycle_sum, *self_ext),
        Command::PeriodSet { module, horizon } => cmd_period_set(&ctx, name, module, *horizon),
        Command::Strip { module } => cmd_strip(&ctx, name, module),
        Command::Dual {
            module,
            output,
            algebra_output,
        } => cmd_dual(&ctx, name, module, output.as_deref(), algebra_output.as_deref()),
        Command::Complexity { module, horizon } => cmd_complexity(&ctx, name, module, *horizon),
        Command::Verify { horizon } => cmd_verify(&ctx, name, *horizon),
    }
}

fn header<'a>(ctx: &Context, command: &'a str, modules: &[(String, Representation)]) -> Header<'a> {
    let a = &ctx.algebra;
    Header {
        command,
        seed: seed_hex(ctx.seed),
        algebra: AlgebraSummary {
            source: ctx.algebra_label.clone(),
            prime: a.field().p(),
            vertices: a.vertex_count(),
            arrows: a.arrows().len(),
            relations: a.relations().len(),
            dimension: a.dimension(),
        },
        modules: modules
            .iter()
            .map(|(s, m)| ModuleSummary {
                source: s.clone(),
                dims: m.dims().to_vec(),
            })
            .collect(),
    }
}

fn table_header(h: &Header) -> String {
    let mut out = String::new();
    writeln!(out, "# gorenstein {}  seed={}", h.command, h.seed).unwrap();
    let a = &h.algebra;
    writeln!(
        out,
        "# algebra {}  p={}  vertices={}  arrows={}  relations={}  dim={}",
        a.source, a.prime, a.vertices, a.arrows, a.relations, a.dimension
    )
    .unwrap();
    for m in &h.modules {
        writeln!(out, "# module {}  dims={}", m.source, join(&m.dims, " ")).unwrap();
    }
    out
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

/// Aligned text table; the first row is the heading.
fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> = r.iter().enumerate().map(|(c, s)| format!("{s:<w$}", w = widths[c])).collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn emit<T: Serialize>(ctx: &Context, header: Header, result: &T, table_body: impl FnOnce() -> String) -> String {
    match ctx.format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&Envelope { header, result }).expect("serializable");
            s.push('\n');
            s
        }
        OutputFormat::Table => table_header(&header) + &table_body(),
    }
}

fn fail(f: Failure) -> (String, Failure) {
    (String::new(), f)
}

#[derive(Serialize)]
struct ResolveTerm {
    degree: usize,
    projectives: Vec<usize>,
    dimension: usize,
}

#[derive(Serialize)]
struct ResolveResult {
    horizon: usize,
    projective_dimension: Option<usize>,
    terms: Vec<ResolveTerm>,
    dims_sequence: Vec<usize>,
}

fn cmd_resolve(ctx: &Context, name: &str, args: &ModuleArgs, horizon: Option<usize>) -> Exec {
    let horizon = horizon.unwrap_or_else(|| default_resolution_horizon(&ctx.algebra));
    if horizon == 0 {
        return Err(fail(Failure::parse("--horizon must be positive")));
    }
    let m = one_module(&ctx.algebra, args).map_err(fail)?;
    let mut res = min_resolution(&m.1, horizon);
    let terms: Vec<ResolveTerm> = (0..horizon)
        .map(|k| {
            let projectives = res.term_vertices(k);
            let dimension = res.term_projective(k).total_dim();
            ResolveTerm {
                degree: k,
                projectives,
                dimension,
            }
        })
        .collect();
    let result = ResolveResult {
        horizon,
        projective_dimension: res.projective_dimension(),
        dims_sequence: terms.iter().map(|t| t.dimension).collect(),
        terms,
    };
    Ok(emit(ctx, header(ctx, name, &[m]), &result, || {
        let mut rows = vec![vec!["k".to_string(), "P_k".to_string(), "dim".to_string()]];
        for t in &result.terms {
            let label = if t.projectives.is_empty() {
                "0".to_string()
            } else {
                t.projectives.iter().map(|v| format!("P{v}")).collect::<Vec<_>>().join("+")
            };
            rows.push(vec![t.degree.to_string(), label, t.dimension.to_string()]);
        }
        let mut out = table(&rows);
        match result.projective_dimension {
            Some(pd) => writeln!(out, "projective dimension {pd}").unwrap(),
            None => writeln!(out, "projective dimension > {}", horizon - 1).unwrap(),
        }
        out
    }))
}

#[derive(Serialize)]
struct ExtRow {
    degree: usize,
    dimension: usize,
}

fn cmd_ext(ctx: &Context, name: &str, args: &ModuleArgs, from: usize, to: Option<usize>) -> Exec {
    let to = to.unwrap_or_else(|| default_ext_horizon(&ctx.algebra));
    if from > to {
        return Err(fail(Failure::parse(format!("--degree-from {from} exceeds --degree-to {to}"))));
    }
    let ms = load_modules(&ctx.algebra, args).map_err(fail)?;
    if ms.len() != 2 {
        return Err(fail(Failure::parse(format!("ext needs two modules (M then N), got {}", ms.len()))));
    }
    let mut res = gorenstein::resolution::Resolution::new(&ms[0].1);
    let dims = ext_dims(&mut res, &ms[1].1, from..=to);
    let rows: Vec<ExtRow> = (from..=to).zip(dims).map(|(degree, dimension)| ExtRow { degree, dimension }).collect();
    Ok(emit(ctx, header(ctx, name, &ms), &rows, || {
        let mut t = vec![vec!["i".to_string(), "dim Ext^i(M,N)".to_string()]];
        t.extend(rows.iter().map(|r| vec![r.degree.to_string(), r.dimension.to_string()]));
        table(&t)
    }))
}

#[derive(Serialize)]
struct CycleSumReport {
    summand_dims: Vec<Vec<usize>>,
    total_dims: Vec<usize>,
    middle_dims: Vec<usize>,
    omega_isomorphic: bool,
    certified: bool,
}

#[derive(Serialize)]
struct SgResult {
    verdict: VerdictReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    cycle_sum: Option<CycleSumReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    self_ext: Option<gorenstein::sg::SelfExtReport>,
}

fn cmd_sg(
    ctx: &Context,
    name: &str,
    args: &ModuleArgs,
    n: usize,
    flavor: FlavorArg,
    cycle_sum: bool,
    self_ext: bool,
) -> Exec {
    if n == 0 {
        return Err(fail(Failure::parse("--n must be positive")));
    }
    if (cycle_sum || self_ext) && flavor != FlavorArg::Projective {
        return Err(fail(Failure::parse("--cycle-sum and --self-ext need --flavor projective")));
    }
    let m = one_module(&ctx.algebra, args).map_err(fail)?;
    let opts = SgOptions::with_seed(ctx.seed);
    let verdict = match flavor {
        FlavorArg::Projective => is_n_sg_projective(&m.1, n, &opts),
        FlavorArg::Injective => is_n_sg_injective(&m.1, n, &opts),
        FlavorArg::Flat => is_n_sg_flat(&m.1, n, &opts),
    };
    let mut result = SgResult {
        verdict: verdict.report(),
        cycle_sum: None,
        self_ext: None,
    };
    let mut failure = None;
    if cycle_sum {
        match syzygy_cycle_sum(&m.1, n, &opts) {
            Ok(cs) => {
                result.cycle_sum = Some(CycleSumReport {
                    summand_dims: cs.summands.iter().map(|s| s.dims().to_vec()).collect(),
                    total_dims: cs.total.dims().to_vec(),
                    middle_dims: cs.middle.dims().to_vec(),
                    omega_isomorphic: cs.omega_iso.is_isomorphic(),
                    certified: cs.omega_iso.is_certified(),
                })
            }
            Err(e) => failure = Some(Failure::from(e)),
        }
    }
    if self_ext && failure.is_none() {
        match projectivity_via_self_ext(&m.1, n, &opts) {
            Ok(r) => result.self_ext = Some(r),
            Err(e) => failure = Some(Failure::from(e)),
        }
    }
    let out = emit(ctx, header(ctx, name, &[m]), &result, || {
        let v = &result.verdict;
        let flavor = match v.kind {
            Flavor::Projective => "projective",
            Flavor::Injective => "injective",
            Flavor::Flat => "flat",
        };
        let mut rows = vec![
            vec!["kind".to_string(), format!("{flavor}_flavor")],
            vec!["n".to_string(), v.n.to_string()],
            vec!["outcome".to_string(), outcome_name(v)],
            vec!["witness_present".to_string(), v.witness_present.to_string()],
        ];
        for a in &v.assumptions {
            rows.push(vec!["assumption".to_string(), a.clone()]);
        }
        if let Some(cs) = &result.cycle_sum {
            rows.push(vec!["cycle_sum.total_dims".into(), join(&cs.total_dims, " ")]);
            rows.push(vec!["cycle_sum.middle_dims".into(), join(&cs.middle_dims, " ")]);
            rows.push(vec!["cycle_sum.omega_isomorphic".into(), cs.omega_isomorphic.to_string()]);
        }
        if let Some(se) = &result.self_ext {
            rows.push(vec!["self_ext.dims".into(), join(&se.ext_dims, " ")]);
            rows.push(vec!["self_ext.projective".into(), se.projective.to_string()]);
        }
        table(&rows)
    });
    match failure {
        Some(f) => Err((out, f)),
        None => Ok(out),
    }
}

fn outcome_name(v: &VerdictReport) -> String {
    v.outcome.to_string()
}

#[derive(Serialize)]
struct PeriodSetResult {
    horizon: usize,
    members: Vec<usize>,
    all_certified: bool,
    verdicts: Vec<VerdictReport>,
    gcd_chains: Vec<GcdChain>,
}

fn cmd_period_set(ctx: &Context, name: &str, args: &ModuleArgs, horizon: Option<usize>) -> Exec {
    let horizon = horizon.unwrap_or(3 * ctx.algebra.vertex_count());
    if horizon == 0 {
        return Err(fail(Failure::parse("--horizon must be positive")));
    }
    let m = one_module(&ctx.algebra, args).map_err(fail)?;
    let set = sg_projective_period_set(&m.1, horizon, &SgOptions::with_seed(ctx.seed)).map_err(|e| fail(e.into()))?;
    let result = PeriodSetResult {
        horizon,
        members: set.members.clone(),
        all_certified: set.all_certified(),
        verdicts: set.verdicts.iter().map(|v| v.report()).collect(),
        gcd_chains: set.gcd_chains.clone(),
    };
    Ok(emit(ctx, header(ctx, name, &[m]), &result, || {
        let mut out = format!("members {{{}}}\n", join(&result.members, ","));
        let mut rows = vec![vec!["n".to_string(), "outcome".to_string()]];
        rows.extend(result.verdicts.iter().map(|v| vec![v.n.to_string(), v.outcome.to_string()]));
        out += &table(&rows);
        for c in &result.gcd_chains {
            writeln!(out, "gcd({}, {}) = {}  via {}", c.m, c.n, c.gcd, join(&c.chain, " -> ")).unwrap();
        }
        out
    }))
}

#[derive(Serialize)]
struct StripReport {
    stable_dims: Vec<usize>,
    projective_dims: Vec<usize>,
    projective_vertices: Vec<usize>,
    stable_module: String,
}

fn cmd_strip(ctx: &Context, name: &str, args: &ModuleArgs) -> Exec {
    let m = one_module(&ctx.algebra, args).map_err(fail)?;
    let s = strip_projective_summands(&m.1);
    if !(s.embedding.is_isomorphism() && s.retraction.compose(&s.embedding).is_valid()) {
        return Err(fail(Failure::invariant("stripping did not produce a direct-sum decomposition")));
    }
    let result = StripReport {
        stable_dims: s.stable_part.dims().to_vec(),
        projective_dims: s.projective_part.dims().to_vec(),
        projective_vertices: s.projective_vertices.clone(),
        stable_module: write_module_file("stable", &s.stable_part),
    };
    Ok(emit(ctx, header(ctx, name, &[m]), &result, || {
        let proj = if result.projective_vertices.is_empty() {
            "0".to_string()
        } else {
            result.projective_vertices.iter().map(|v| format!("P{v}")).collect::<Vec<_>>().join("+")
        };
        let rows = vec![
            vec!["part".to_string(), "dims".to_string(), "summands".to_string()],
            vec!["stable".to_string(), join(&result.stable_dims, " "), String::new()],
            vec!["projective".to_string(), join(&result.projective_dims, " "), proj],
        ];
        table(&rows) + &result.stable_module
    }))
}

#[derive(Serialize)]
struct DualReport {
    dims: Vec<usize>,
    algebra_file: String,
    module_file: String,
}

fn cmd_dual(ctx: &Context, name: &str, args: &ModuleArgs, output: Option<&str>, algebra_output: Option<&str>) -> Exec {
    let m = one_module(&ctx.algebra, args).map_err(fail)?;
    let op = Arc::new(opposite(&ctx.algebra));
    let d = dual_over(&m.1, op.clone());
    let result = DualReport {
        dims: d.dims().to_vec(),
        algebra_file: write_algebra_file(&op),
        module_file: write_module_file("dual", &d),
    };
    let write = |path: &str, text: &str| {
        std::fs::write(path, text).map_err(|e| fail(Failure::computation(format!("{path}: {e}"))))
    };
    if let Some(p) = algebra_output {
        write(p, &result.algebra_file)?;
    }
    if let Some(p) = output {
        write(p, &result.module_file)?;
    }
    Ok(emit(ctx, header(ctx, name, &[m]), &result, || match output {
        Some(p) => format!("wrote {p}\n"),
        None => result.module_file.clone(),
    }))
}

fn cmd_complexity(ctx: &Context, name: &str, args: &ModuleArgs, horizon: Option<usize>) -> Exec {
    let horizon = horizon.unwrap_or_else(|| default_resolution_horizon(&ctx.algebra));
    if horizon < 4 {
        return Err(fail(Failure::parse("--horizon must be at least 4 for complexity")));
    }
    let m = one_module(&ctx.algebra, args).map_err(fail)?;
    let est = complexity_estimate(&m.1, horizon, &SgOptions::with_seed(ctx.seed).iso);
    Ok(emit(ctx, header(ctx, name, &[m]), &est, || {
        let class = match &est.classification {
            ComplexityClass::FiniteProjectiveDimension { projective_dimension } => {
                format!("finite projective dimension {projective_dimension}")
            }
            ComplexityClass::Bounded { start, period } => format!("bounded: Omega^{start} repeats with period {period}"),
            ComplexityClass::Growth { exponent } => format!("growth exponent {exponent:.3}"),
            ComplexityClass::Inconclusive => "inconclusive".to_string(),
        };
        let cx = est.exact_complexity().map_or("unknown".to_string(), |c| c.to_string());
        table(&[
            vec!["dims".to_string(), join(&est.dims_sequence, " ")],
            vec!["class".to_string(), class],
            vec!["certified".to_string(), est.certified.to_string()],
            vec!["complexity".to_string(), cx],
        ])
    }))
}

fn cmd_verify(ctx: &Context, name: &str, horizon: Option<usize>) -> Exec {
    let horizon = horizon.unwrap_or(3 * ctx.algebra.vertex_count());
    if horizon == 0 {
        return Err(fail(Failure::parse("--horizon must be positive")));
    }
    let report = verify_theorem_suite(&ctx.algebra, horizon, &SgOptions::with_seed(ctx.seed));
    let out = emit(ctx, header(ctx, name, &[]), &report, || {
        let mut rows = vec![vec!["status".to_string(), "check".to_string(), "detail".to_string()]];
        for c in &report.checks {
            let status = match c.status {
                CheckStatus::Pass => "PASS",
                CheckStatus::Fail => "FAIL",
                CheckStatus::Skipped => "SKIP",
            };
            let mut detail = c.detail.clone();
            if let Some(ce) = &c.counterexample {
                detail = format!("{detail}; counterexample: {ce}");
            }
            rows.push(vec![status.to_string(), c.name.to_string(), detail]);
        }
        table(&rows)
    });
    if report.all_passed() {
        Ok(out)
    } else {
        let failed: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| c.status == CheckStatus::Fail)
            .map(|c| c.name)
            .collect();
        Err((out, Failure::invariant(format!("failed checks: {}", failed.join(", ")))))
    }
}
