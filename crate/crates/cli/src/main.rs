use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use mtcycles::cycle::{Cycle, CyclePacking};
use mtcycles::generators::{
    gen_bt, gen_complete_split, gen_complete_split_with_min_outdegree, gen_extended_tournament,
    gen_random_multipartite, gen_random_tournament, gen_with_min_outdegree, GenSpec,
};
use mtcycles::harness::{parse_sizes, run_campaign, CampaignConfig, DeltaRule, Family};
use mtcycles::mtg::{self, Instance};
use mtcycles::multipartite::MultipartiteTournament;
use mtcycles::oracle::{enumerate_cycles, exists_k_disjoint, kappa_exact, verify_packing, OracleBudget};
use mtcycles::packing::{
    diversify_3partite, kappa_one_characterization, pack_3partite, pack_bipartite_4cycles, pack_extended,
    pack_multipartite_3k2, pack_tournament_triangles, pack_triangle_free, KappaOneVerdict, PackingError,
};

const EXIT_USAGE: u8 = 1;
const EXIT_HYPOTHESIS: u8 = 2;
const EXIT_COUNTEREXAMPLE: u8 = 3;
const EXIT_INTERNAL: u8 = 4;

#[derive(Debug, Parser)]
#[command(name = "mtcycles", version, about = "Cycle packings in multipartite tournaments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate an instance and write it in mtg format.
    Gen(GenArgs),
    /// Pack k disjoint cycles.
    Pack(PackArgs),
    /// Pack k disjoint cycles of at least two lengths (3-partite only).
    Diversify(InstanceArgs),
    /// Exact maximum number of distinct lengths over k-packings.
    Kappa(OracleArgs),
    /// Decide whether every k-packing uses a single cycle length.
    CheckKappaOne(InstanceArgs),
    /// Exhaustive search for k disjoint cycles, or list all cycles.
    Oracle(OracleCmdArgs),
    /// Check a packing file against an instance.
    Verify(VerifyArgs),
    /// Run a seeded campaign and write a report.
    Hunt(HuntArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct InstanceArgs {
    /// Instance in mtg format.
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    k: usize,
    /// Write the packing here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long)]
    family: Family,
    /// Part sizes (split: clique,independent; bt: group sizes; extended: blob sizes).
    #[arg(long)]
    sizes: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Redraw until the minimum out-degree is at least this.
    #[arg(long)]
    min_out_degree: Option<usize>,
    #[arg(long, default_value_t = GenSpec::DEFAULT_MAX_ATTEMPTS)]
    max_attempts: u32,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Algorithm {
    /// 3-partite packer for at most three parts, tournament packer for
    /// tournaments, the 3k-2 packer otherwise.
    Auto,
    #[value(name = "3partite")]
    ThreePartite,
    #[value(name = "3k-2")]
    ThreeKMinusTwo,
    TriangleFree,
    Bipartite,
    Tournament,
    Extended,
}

#[derive(Debug, Args)]
struct PackArgs {
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long, value_enum, default_value = "auto")]
    algorithm: Algorithm,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    k: usize,
    /// Longest cycle considered; defaults to the vertex count.
    #[arg(long)]
    max_cycle_len: Option<usize>,
    #[arg(long, default_value_t = OracleBudget::DEFAULT_MAX_NODES)]
    max_nodes: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Debug, Args)]
struct OracleCmdArgs {
    #[command(flatten)]
    oracle: OracleArgs,
    /// List every cycle within the cap instead of searching for a packing.
    #[arg(long)]
    cycles: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    input: PathBuf,
    /// Packing file: one `cycle v0 v1 ...` line per cycle, or JSON.
    #[arg(long)]
    packing: PathBuf,
}

#[derive(Debug, Args)]
struct HuntArgs {
    #[arg(long)]
    family: Family,
    /// Part sizes or ranges, e.g. 3,3,3,3 or 3-5,4,4.
    #[arg(long)]
    sizes: String,
    /// A single k or a range such as 2-3.
    #[arg(long, default_value = "2")]
    k: String,
    #[arg(long)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "2k-1")]
    delta_rule: DeltaRule,
    /// Cross-check instances with at most this many vertices against the oracle.
    #[arg(long, default_value_t = 14)]
    oracle_max_n: usize,
    #[arg(long, default_value_t = GenSpec::DEFAULT_MAX_ATTEMPTS)]
    max_attempts: u32,
    /// Record per-trial wall-clock time (makes reports non-reproducible).
    #[arg(long)]
    elapsed: bool,
    /// Write the report here; the summary still goes to stdout.
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

/// An error with the exit code it maps to.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        Failure { code: EXIT_USAGE, error }
    }
}

fn packing_failure(e: PackingError) -> Failure {
    let code = if e.is_internal() { EXIT_INTERNAL } else { EXIT_HYPOTHESIS };
    Failure { code, error: e.into() }
}

type CmdResult = Result<u8, Failure>;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Gen(a) => gen(a),
        Command::Pack(a) => pack(a),
        Command::Diversify(a) => diversify(a),
        Command::Kappa(a) => kappa(a),
        Command::CheckKappaOne(a) => check_kappa_one(a),
        Command::Oracle(a) => oracle(a),
        Command::Verify(a) => verify(a),
        Command::Hunt(a) => hunt(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}

fn read_instance(path: &Path) -> anyhow::Result<Instance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    mtg::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_multipartite(path: &Path) -> anyhow::Result<MultipartiteTournament> {
    match read_instance(path)? {
        Instance::Multipartite(d) => Ok(d),
        Instance::Digraph(_) => bail!("{} holds a plain digraph; this command needs `p mtg`", path.display()),
    }
}

fn emit(output: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => io::stdout().write_all(text.as_bytes()).context("writing to stdout"),
    }
}

fn packing_text(p: &CyclePacking, format: Format) -> String {
    match format {
        Format::Text => p.cycles().iter().map(|c| format!("cycle {c}\n")).collect(),
        Format::Json => {
            let cycles: Vec<&[usize]> = p.cycles().iter().map(Cycle::vertices).collect();
            format!("{}\n", serde_json::json!({ "cycles": cycles, "lengths": p.lengths() }))
        }
    }
}

fn parse_packing(text: &str) -> anyhow::Result<Vec<Vec<usize>>> {
    if text.trim_start().starts_with('{') {
        let v: serde_json::Value = serde_json::from_str(text).context("parsing packing JSON")?;
        let cycles = v.get("cycles").cloned().ok_or_else(|| anyhow!("packing JSON has no `cycles`"))?;
        return serde_json::from_value(cycles).context("parsing `cycles`");
    }
    let mut cycles = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let mut toks = line.split_whitespace();
        match toks.next() {
            None => continue,
            Some("cycle") => {
                let verts = toks
                    .map(|t| t.parse::<usize>())
                    .collect::<Result<Vec<_>, _>>()
                    .with_context(|| format!("line {}: bad vertex", i + 1))?;
                cycles.push(verts);
            }
            Some(other) => bail!("line {}: expected `cycle`, found `{other}`", i + 1),
        }
    }
    Ok(cycles)
}

fn gen(a: GenArgs) -> CmdResult {
    let sizes: Vec<usize> = a
        .sizes
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| anyhow!("--sizes: expected comma-separated integers, got {:?}", a.sizes))?;
    let spec = GenSpec {
        sizes: sizes.clone(),
        seed: a.seed,
        delta_min: a.min_out_degree,
        max_attempts: a.max_attempts,
    };
    let d = match a.family {
        Family::Bt => gen_bt(&sizes),
        Family::Split => {
            if sizes.len() != 2 {
                return Err(anyhow!("--sizes: split takes clique,independent").into());
            }
            match a.min_out_degree {
                Some(delta) => gen_complete_split_with_min_outdegree(sizes[0], sizes[1], a.seed, delta, a.max_attempts),
                None => gen_complete_split(sizes[0], sizes[1], a.seed),
            }
        }
        Family::Extended => gen_random_tournament(sizes.len(), a.seed).and_then(|t| gen_extended_tournament(&t, &sizes)),
        _ if a.min_out_degree.is_some() => gen_with_min_outdegree(&spec),
        _ => gen_random_multipartite(&spec),
    }
    .map_err(anyhow::Error::from)?;
    if let Some(delta) = a.min_out_degree {
        let actual = d.min_out_degree().unwrap_or(0);
        if actual < delta {
            return Err(Failure {
                code: EXIT_HYPOTHESIS,
                error: anyhow!("generated instance has minimum out-degree {actual} < {delta}"),
            });
        }
    }
    emit(a.output.as_deref(), &mtg::serialize(&d))?;
    Ok(0)
}

fn pack(a: PackArgs) -> CmdResult {
    let i = &a.instance;
    let d = read_multipartite(&i.input)?;
    let algorithm = match a.algorithm {
        Algorithm::Auto if d.part_count() <= 3 => Algorithm::ThreePartite,
        Algorithm::Auto if d.is_tournament() => Algorithm::Tournament,
        Algorithm::Auto => Algorithm::ThreeKMinusTwo,
        other => other,
    };
    let packer = match algorithm {
        Algorithm::ThreePartite | Algorithm::Auto => pack_3partite,
        Algorithm::ThreeKMinusTwo => pack_multipartite_3k2,
        Algorithm::TriangleFree => pack_triangle_free,
        Algorithm::Bipartite => pack_bipartite_4cycles,
        Algorithm::Tournament => pack_tournament_triangles,
        Algorithm::Extended => pack_extended,
    };
    let p = packer(&d, i.k).map_err(packing_failure)?;
    emit(i.output.as_deref(), &packing_text(&p, i.format))?;
    Ok(0)
}

fn diversify(a: InstanceArgs) -> CmdResult {
    let d = read_multipartite(&a.input)?;
    let p = diversify_3partite(&d, a.k).map_err(packing_failure)?;
    emit(a.output.as_deref(), &packing_text(p.packing(), a.format))?;
    Ok(0)
}

fn budget(a: &OracleArgs, d: &mtcycles::Digraph) -> OracleBudget {
    OracleBudget {
        max_cycle_len: a.max_cycle_len.unwrap_or(d.vertex_count().max(2)),
        max_nodes: a.max_nodes,
    }
}

fn oracle_failure(e: mtcycles::oracle::OracleError) -> Failure {
    Failure { code: EXIT_INTERNAL, error: e.into() }
}

fn kappa(a: OracleArgs) -> CmdResult {
    let inst = read_instance(&a.input)?;
    let d = inst.digraph();
    if a.k == 0 {
        return Err(anyhow!("--k must be at least 1").into());
    }
    let kappa = kappa_exact(d, a.k, &budget(&a, d)).map_err(oracle_failure)?;
    let text = match a.format {
        Format::Text => {
            let mut out = format!("kappa {}\n", kappa.value);
            if let Some(w) = &kappa.witness {
                out.push_str(&packing_text(w, Format::Text));
            }
            out
        }
        Format::Json => {
            let witness: Option<Vec<&[usize]>> =
                kappa.witness.as_ref().map(|w| w.cycles().iter().map(Cycle::vertices).collect());
            format!("{}\n", serde_json::json!({ "kappa": kappa.value, "witness": witness }))
        }
    };
    emit(None, &text)?;
    Ok(0)
}

fn check_kappa_one(a: InstanceArgs) -> CmdResult {
    let d = read_multipartite(&a.input)?;
    let verdict = kappa_one_characterization(&d, a.k).map_err(packing_failure)?;
    let detail = match &verdict {
        KappaOneVerdict::KappaOne(l) => format!("terminal component is BT({:?}) with y vertices {:?}", l.n_list, l.y_vertices),
        KappaOneVerdict::NontrivialComponent(c) => format!("non-terminal component {c:?} has more than one vertex"),
        KappaOneVerdict::TerminalNotBt(c) => format!("terminal component {c:?} is not a BT instance"),
        KappaOneVerdict::WrongOrder { found } => format!("terminal component is BT with {} groups, not {}", 2 * found, 2 * a.k),
        KappaOneVerdict::SmallGroup { group, size } => format!("group {group:?} has {size} < {} vertices", 2 * a.k - 1),
    };
    let text = match a.format {
        Format::Text => format!("{}\n{detail}\n", verdict.is_kappa_one()),
        Format::Json => format!("{}\n", serde_json::json!({ "kappa_one": verdict.is_kappa_one(), "detail": detail })),
    };
    emit(a.output.as_deref(), &text)?;
    Ok(0)
}

fn oracle(a: OracleCmdArgs) -> CmdResult {
    let o = &a.oracle;
    let inst = read_instance(&o.input)?;
    let d = inst.digraph();
    let b = budget(o, d);
    if a.cycles {
        let cycles = enumerate_cycles(d, &b).map_err(oracle_failure)?;
        let text: String = match o.format {
            Format::Text => cycles.iter().map(|c| format!("cycle {c}\n")).collect(),
            Format::Json => {
                let all: Vec<&[usize]> = cycles.iter().map(Cycle::vertices).collect();
                format!("{}\n", serde_json::json!({ "cycles": all }))
            }
        };
        emit(None, &text)?;
        return Ok(0);
    }
    if o.k == 0 {
        return Err(anyhow!("--k must be at least 1").into());
    }
    let found = exists_k_disjoint(d, o.k, &b).map_err(oracle_failure)?;
    let text = match (&found, o.format) {
        (Some(p), f) => packing_text(p, f),
        (None, Format::Text) => "none\n".to_string(),
        (None, Format::Json) => format!("{}\n", serde_json::json!({ "cycles": null })),
    };
    emit(None, &text)?;
    Ok(0)
}

fn verify(a: VerifyArgs) -> CmdResult {
    let inst = read_instance(&a.input)?;
    let text = fs::read_to_string(&a.packing).with_context(|| format!("reading {}", a.packing.display()))?;
    let cycles = parse_packing(&text)?;
    match verify_packing(inst.digraph(), &cycles) {
        Ok(()) => {
            println!("true");
            Ok(0)
        }
        Err(v) => {
            println!("false\n{v}");
            Ok(EXIT_INTERNAL)
        }
    }
}

fn parse_k_range(s: &str) -> anyhow::Result<(usize, usize)> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| anyhow!("--k: expected N or N-M, got {s:?}"));
    match s.split_once('-') {
        Some((lo, hi)) => Ok((num(lo)?, num(hi)?)),
        None => num(s).map(|k| (k, k)),
    }
}

fn hunt(a: HuntArgs) -> CmdResult {
    let sizes = parse_sizes(&a.sizes).map_err(|e| anyhow!("--sizes: {e}"))?;
    let (k_min, k_max) = parse_k_range(&a.k)?;
    let config = CampaignConfig {
        family: a.family,
        sizes,
        k_min,
        k_max,
        trials: a.trials,
        seed: a.seed,
        delta_rule: a.delta_rule,
        oracle_cross_check_max_n: a.oracle_max_n,
        max_attempts: a.max_attempts,
        record_elapsed: a.elapsed,
    };
    let report = run_campaign(&config).map_err(|e| anyhow!("{e}"))?;
    let body = match a.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json_lines(),
    };
    match &a.report {
        Some(path) => {
            emit(Some(path), &body)?;
            let s = &report.summary;
            println!(
                "trials={} packed={} diverse={} counterexample-candidates={} hypothesis-unmet={} errors={}",
                s.trials, s.packed, s.diverse, s.counterexample_candidates, s.hypothesis_unmet, s.errors
            );
        }
        None => emit(None, &body)?,
    }
    if report.summary.counterexample_candidates > 0 {
        return Ok(EXIT_COUNTEREXAMPLE);
    }
    if report.summary.errors > 0 {
        return Ok(EXIT_INTERNAL);
    }
    Ok(0)
}
