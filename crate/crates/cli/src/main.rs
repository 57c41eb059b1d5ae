mod cache;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use denomlab::character::CharacterTerm;
use denomlab::combinatorics::{denominator, parse_trace, render_trace, NoTracking};
use denomlab::fdalg::{count_submodules, fit_counts, grassmannian_degree_bound, primes_for_degree};
use denomlab::verify::{self, CompatibilityReport};
use denomlab::*;

use cache::Cache;

#[derive(Parser)]
#[command(name = "denomlab", version, about = "Denominator vectors, cluster characters and cluster categories of acyclic quivers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Explore the exchange graph and print the registry of seeds and variables.
    Enumerate {
        #[command(flatten)]
        run: RunArgs,
        /// Skip tracking the cluster-tilting objects.
        #[arg(long)]
        no_track: bool,
    },
    /// Run a verification campaign.
    Verify {
        campaign: Campaign,
        #[command(flatten)]
        run: RunArgs,
        /// Seed to verify, as a trace `mu(i,j,…)` or `id`; every seed when omitted.
        #[arg(long)]
        tilt: Option<String>,
        /// Radius of the registry searched around a converse witness.
        #[arg(long, default_value_t = 1)]
        search_depth: usize,
    },
    /// Exchange compatibility of the summands of T (or of --object) against every explored exchange pair.
    Compat {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value = "id")]
        tilt: String,
        #[arg(long)]
        object: Option<String>,
    },
    /// The cluster character X^T_M in the cluster of the seed.
    Character {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value = "id")]
        tilt: String,
        #[arg(long)]
        object: String,
        /// Include the term ledger and point-count fits.
        #[arg(long)]
        ledger: bool,
    },
    /// Euler characteristic of a quiver Grassmannian of Hom_C(T, M).
    Grassmannian {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value = "id")]
        tilt: String,
        #[arg(long)]
        object: String,
        /// Dimension vector of the submodules, e.g. `1,0,1`.
        #[arg(long)]
        e: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Campaign {
    Denominator,
    Converse,
}

#[derive(Args)]
struct RunArgs {
    /// Quiver file: one arrow per line, `i -> j` or `i -> j *m`.
    #[arg(long)]
    quiver: PathBuf,
    /// Exploration depth; required unless the quiver is Dynkin.
    #[arg(long)]
    depth: Option<usize>,
    /// Primes always used for point counts.
    #[arg(long, value_delimiter = ',', default_value = "2,3,5,7,11")]
    primes: Vec<u64>,
    /// Total-dimension bound of the object pool outside finite type.
    #[arg(long, default_value_t = 12)]
    cap_dim: usize,
    /// Search-node budget per submodule count.
    #[arg(long, default_value_t = 20_000_000)]
    budget: u64,
    #[arg(long, env = "CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// Write the JSON output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for randomized constructions.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    workers: Option<usize>,
}

struct Loaded {
    quiver: Quiver,
    cat: ClusterCategory<Rationals>,
}

impl RunArgs {
    fn load(&self) -> Result<Quiver> {
        let text = fs::read_to_string(&self.quiver).with_context(|| format!("reading {}", self.quiver.display()))?;
        let q = Quiver::parse(&text).with_context(|| format!("parsing {}", self.quiver.display()))?;
        if !q.is_acyclic() {
            bail!("{}: the quiver has an oriented cycle", self.quiver.display());
        }
        if self.cap_dim == 0 || self.budget == 0 || self.primes.is_empty() {
            bail!("--cap-dim, --budget and --primes must be positive");
        }
        if let Some(p) = self.primes.iter().find(|&&p| PrimeField::new(p).is_none()) {
            bail!("--primes: {p} is not a prime below 2^32");
        }
        if self.depth.is_none() && !q.is_dynkin() {
            bail!("{}: not a Dynkin quiver, --depth is required", self.quiver.display());
        }
        Ok(q)
    }

    fn category(&self, q: &Quiver) -> Result<ClusterCategory<Rationals>> {
        let config = CategoryConfig { cap_dim: self.cap_dim, seed: self.seed, ..Default::default() };
        Ok(ClusterCategory::new(Rationals, q, config)?)
    }

    fn key_parts(&self, q: &Quiver) -> Vec<String> {
        vec![
            q.to_text(),
            format!("{:?}", self.depth),
            format!("{:?}", self.primes),
            self.cap_dim.to_string(),
            self.budget.to_string(),
            self.seed.to_string(),
        ]
    }
}

fn with_seed<T: Serialize>(value: &T, seed: u64) -> Result<Value> {
    let mut v = serde_json::to_value(value)?;
    if let Value::Object(m) = &mut v {
        m.insert("seed".into(), seed.into());
    }
    Ok(v)
}

#[derive(Serialize)]
struct SeedDoc {
    trace: String,
    variables: Vec<String>,
    tilt: Option<Vec<ObjLabel>>,
}

#[derive(Serialize)]
struct VarDoc {
    variable: String,
    denominator: IntVector,
    object: Option<ObjLabel>,
    first_trace: String,
}

#[derive(Serialize)]
struct RegistryDoc {
    quiver: String,
    depth: Option<usize>,
    complete: bool,
    seeds: Vec<SeedDoc>,
    variables: Vec<VarDoc>,
}

fn registry_doc(reg: &Registry) -> RegistryDoc {
    RegistryDoc {
        quiver: reg.root.quiver.to_text(),
        depth: reg.depth,
        complete: reg.complete,
        seeds: reg
            .seeds
            .values()
            .map(|s| SeedDoc { trace: render_trace(&s.trace), variables: s.vars.iter().map(|v| v.render("u")).collect(), tilt: s.tilt.clone() })
            .collect(),
        variables: reg
            .variables
            .iter()
            .map(|(v, e)| VarDoc {
                variable: v.render("u"),
                denominator: denominator(v),
                object: e.object.clone(),
                first_trace: render_trace(&e.first_trace),
            })
            .collect(),
    }
}

fn enumerate_cmd(run: &RunArgs, l: &Loaded, track: bool) -> Result<(Value, Outcome)> {
    let reg = if track {
        verify::tracked_registry(&l.cat, run.depth)?
    } else {
        let opts = EnumerateOptions { depth: run.depth, ..Default::default() };
        enumerate(&Seed::root(l.quiver.clone(), None), &opts, &NoTracking)?
    };
    Ok((with_seed(&registry_doc(&reg), run.seed)?, Outcome::Pass))
}

fn trace_of(l: &Loaded, tilt: &str) -> Result<Vec<usize>> {
    parse_trace(tilt, l.quiver.n()).map_err(|e| anyhow!("--tilt: {e}"))
}

#[derive(Serialize)]
struct Campaigns {
    campaign: String,
    quiver: String,
    reports: Vec<VerificationReport>,
    outcome: Outcome,
}

#[derive(Serialize)]
struct ConverseDoc {
    campaign: String,
    quiver: String,
    depth: Option<usize>,
    witnesses: Vec<verify::Witness>,
    reports: Vec<VerificationReport>,
    outcome: Outcome,
}

fn verify_cmd(run: &RunArgs, l: &Loaded, campaign: Campaign, tilt: Option<&str>, search_depth: usize) -> Result<(Value, Outcome)> {
    let reg = verify::tracked_registry(&l.cat, run.depth)?;
    let exchanges = verify::exchange_pairs(&reg)?;
    let opts = verify::CampaignOptions { depth: run.depth, search_depth };
    match campaign {
        Campaign::Denominator => {
            if let Some(t) = tilt {
                let r = verify::verify_denominators(&l.cat, &reg, &exchanges, &trace_of(l, t)?, &opts)?;
                let o = r.summary.outcome;
                return Ok((with_seed(&r, run.seed)?, o));
            }
            let reports = verify::verify_all_seeds(&l.cat, &reg, &opts)?;
            let outcome = reports.iter().fold(Outcome::Pass, |a, r| a.combine(r.summary.outcome));
            let doc = Campaigns { campaign: "denominator".into(), quiver: l.quiver.to_text(), reports, outcome };
            Ok((with_seed(&doc, run.seed)?, outcome))
        }
        Campaign::Converse => {
            let mut witnesses = verify::scan_end_nontrivial(&l.cat, &reg)?;
            if let Some(t) = tilt {
                let t = render_trace(&trace_of(l, t)?);
                witnesses.retain(|w| w.trace == t);
            }
            let mut reports = Vec::new();
            let mut outcome = if witnesses.is_empty() && l.quiver.is_dynkin() { Outcome::Pass } else { Outcome::Inconclusive };
            for w in &witnesses {
                let r = verify::verify_converse(&l.cat, &exchanges, w, &opts)?;
                let o = r.summary.outcome;
                reports.push(r);
                if o == Outcome::Pass {
                    outcome = Outcome::Pass;
                    break;
                }
            }
            let doc = ConverseDoc { campaign: "converse".into(), quiver: l.quiver.to_text(), depth: run.depth, witnesses, reports, outcome };
            Ok((with_seed(&doc, run.seed)?, outcome))
        }
    }
}

fn parse_object(s: &str) -> Result<CObj> {
    s.parse::<CObj>().map_err(|e| anyhow!("--object: {e}"))
}

fn seed_and_tilt(l: &Loaded, tilt: &str) -> Result<(Vec<usize>, Vec<ObjLabel>)> {
    let trace = trace_of(l, tilt)?;
    let seed = verify::seed_at(&l.cat, &trace)?;
    Ok((trace, seed.tilt.expect("tracked seed")))
}

#[derive(Serialize)]
struct CompatDoc {
    quiver: String,
    trace: String,
    depth: Option<usize>,
    probes: Vec<ObjLabel>,
    checked: usize,
    compatible: usize,
    incompatible: usize,
    skipped: usize,
    reports: Vec<CompatibilityReport>,
}

fn compat_cmd(run: &RunArgs, l: &Loaded, tilt: &str, object: Option<&str>) -> Result<(Value, Outcome)> {
    let (trace, r) = seed_and_tilt(l, tilt)?;
    let probes: Vec<ObjLabel> = match object {
        Some(o) => parse_object(o)?.summands().map(|(x, _)| x.clone()).collect(),
        None => r.iter().map(|x| l.cat.tau_inv(x)).collect::<Result<_, _>>()?,
    };
    let reg = verify::tracked_registry(&l.cat, run.depth)?;
    let exchanges = verify::exchange_pairs(&reg)?;
    let mut reports = Vec::new();
    for p in &probes {
        for ex in &exchanges {
            reports.push(verify::check_compatibility(&l.cat, p, ex)?);
        }
    }
    let count = |v: Option<bool>| reports.iter().filter(|r| r.compatible == v).count();
    let doc = CompatDoc {
        quiver: l.quiver.to_text(),
        trace: render_trace(&trace),
        depth: run.depth,
        checked: reports.len(),
        compatible: count(Some(true)),
        incompatible: count(Some(false)),
        skipped: count(None),
        probes,
        reports,
    };
    let outcome = if doc.incompatible == 0 { Outcome::Pass } else { Outcome::Fail };
    Ok((with_seed(&doc, run.seed)?, outcome))
}

#[derive(Serialize)]
struct FactorDoc {
    object: ObjLabel,
    multiplicity: usize,
    value: String,
    f_dims: Vec<usize>,
    terms: Vec<CharacterTerm>,
}

#[derive(Serialize)]
struct CharacterDoc {
    quiver: String,
    trace: String,
    tilting_object: Vec<ObjLabel>,
    object: CObj,
    value: String,
    denominator: Option<IntVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ledger: Option<Vec<FactorDoc>>,
}

fn character_cmd(run: &RunArgs, l: &Loaded, tilt: &str, object: &str, ledger: bool) -> Result<(Value, Outcome)> {
    let (trace, r) = seed_and_tilt(l, tilt)?;
    let obj = parse_object(object)?;
    let ctx = TiltingContext::new(&l.cat, &r)?;
    let engine = CharacterEngine::new(&l.cat, CharacterOptions { primes: run.primes.clone(), budget: run.budget });
    let c = engine.character(&ctx, &obj)?;
    let doc = CharacterDoc {
        quiver: l.quiver.to_text(),
        trace: render_trace(&trace),
        tilting_object: r,
        object: obj,
        value: c.value.render("x"),
        denominator: c.value.denominator_vector().ok(),
        ledger: ledger.then(|| {
            c.factors
                .iter()
                .map(|(m, f)| FactorDoc {
                    object: f.object.clone(),
                    multiplicity: *m,
                    value: f.value.render("x"),
                    f_dims: f.f_dims.clone(),
                    terms: f.terms.clone(),
                })
                .collect()
        }),
    };
    Ok((with_seed(&doc, run.seed)?, Outcome::Pass))
}

#[derive(Serialize)]
struct GrassmannianDoc {
    quiver: String,
    trace: String,
    object: CObj,
    module_dims: Vec<usize>,
    degree_bound: usize,
    fit: fdalg::EulerFit,
}

fn grassmannian_cmd(run: &RunArgs, l: &Loaded, tilt: &str, object: &str, e: &str) -> Result<(Value, Outcome)> {
    let (trace, r) = seed_and_tilt(l, tilt)?;
    let obj = parse_object(object)?;
    let e: Vec<usize> = e.split(',').map(|t| t.trim().parse()).collect::<Result<_, _>>().context("--e: expected comma-separated integers")?;
    if e.len() != l.quiver.n() {
        bail!("--e has {} entries, the quiver has {} vertices", e.len(), l.quiver.n());
    }
    let ctx = TiltingContext::new(&l.cat, &r)?;
    let dims = ctx.f_module_obj(&l.cat, &obj)?.dims;
    let degree = grassmannian_degree_bound(&dims, &e);
    let primes = primes_for_degree(degree, &run.primes);
    let mut counts = Vec::new();
    for &p in &primes {
        let config = CategoryConfig { cap_dim: run.cap_dim, seed: run.seed, ..Default::default() };
        let pcat = ClusterCategory::new(PrimeField::new(p).expect("checked prime"), &l.quiver, config)?;
        let pctx = TiltingContext::new_unaudited(&pcat, &r)?;
        let fm = pctx.f_module_obj(&pcat, &obj)?;
        if fm.dims != dims {
            bail!("Hom_C(T, {obj}) has dimension vector {dims:?} over Q but {:?} over F_{p}", fm.dims);
        }
        counts.push(count_submodules(&pctx.algebra, &fm, &e, run.budget)?);
    }
    let fit = fit_counts(&e, &primes, &counts, degree)?;
    let doc = GrassmannianDoc { quiver: l.quiver.to_text(), trace: render_trace(&trace), object: obj, module_dims: dims, degree_bound: degree, fit };
    Ok((with_seed(&doc, run.seed)?, Outcome::Pass))
}

fn run_args(c: &Command) -> &RunArgs {
    match c {
        Command::Enumerate { run, .. }
        | Command::Verify { run, .. }
        | Command::Compat { run, .. }
        | Command::Character { run, .. }
        | Command::Grassmannian { run, .. } => run,
    }
}

fn request_key(c: &Command, q: &Quiver) -> Vec<String> {
    let mut parts = match c {
        Command::Enumerate { no_track, .. } => vec!["enumerate".into(), no_track.to_string()],
        Command::Verify { campaign, tilt, search_depth, .. } => vec![
            "verify".into(),
            match campaign {
                Campaign::Denominator => "denominator".into(),
                Campaign::Converse => "converse".into(),
            },
            format!("{:?}", tilt.as_ref().map(|t| parse_trace(t, q.n()).map(|t| render_trace(&t)))),
            search_depth.to_string(),
        ],
        Command::Compat { tilt, object, .. } => vec!["compat".into(), tilt.clone(), format!("{object:?}")],
        Command::Character { tilt, object, ledger, .. } => vec!["character".into(), tilt.clone(), object.clone(), ledger.to_string()],
        Command::Grassmannian { tilt, object, e, .. } => vec!["grassmannian".into(), tilt.clone(), object.clone(), e.clone()],
    };
    parts.extend(run_args(c).key_parts(q));
    parts
}

fn execute(c: &Command, l: &Loaded) -> Result<(Value, Outcome)> {
    let run = run_args(c);
    match c {
        Command::Enumerate { no_track, .. } => enumerate_cmd(run, l, !no_track),
        Command::Verify { campaign, tilt, search_depth, .. } => verify_cmd(run, l, *campaign, tilt.as_deref(), *search_depth),
        Command::Compat { tilt, object, .. } => compat_cmd(run, l, tilt, object.as_deref()),
        Command::Character { tilt, object, ledger, .. } => character_cmd(run, l, tilt, object, *ledger),
        Command::Grassmannian { tilt, object, e, .. } => grassmannian_cmd(run, l, tilt, object, e),
    }
}

fn main_inner(cli: Cli) -> Result<i32> {
    let run = run_args(&cli.command);
    if let Some(w) = run.workers {
        rayon::ThreadPoolBuilder::new().num_threads(w.max(1)).build_global()?;
    }
    let quiver = run.load()?;
    let cache = run.cache_dir.as_deref().map(Cache::open).transpose()?;
    let key = Cache::key(&request_key(&cli.command, &quiver));
    let (text, code) = match cache.as_ref().and_then(|c| c.get(&key)) {
        Some(hit) => hit,
        None => {
            let cat = run.category(&quiver)?;
            let loaded = Loaded { quiver, cat };
            let (value, outcome) = execute(&cli.command, &loaded)?;
            let mut text = serde_json::to_string_pretty(&value)?;
            text.push('\n');
            if let Some(c) = &cache {
                c.put(&key, &text, outcome.exit_code())?;
            }
            (text, outcome.exit_code())
        }
    };
    match &run.out {
        Some(path) => fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match main_inner(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
