//! Argument types and the subcommand implementations. Data goes to the
//! writer handed to [`run`]; notes and progress go to stderr.

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{ArgAction, ArgGroup, Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use wit_core::asymptotics::{
    correction_a, estimate_alpha, estimate_eta_extrapolation, estimate_eta_integral,
    estimate_eta_k, estimate_kary_exponent, scaled_b_recurrence, scaled_from_exact,
    scaled_h_recurrence, AsymptoticEstimate, Precision, ScaledSequence,
};
use wit_core::exact::{
    brute_force_count, count_binary_funceq, count_binary_upto, count_by_max_label,
    count_kary_funceq, count_kary_upto, CountTable, LabelStratifiedTable, TableKind,
};
use wit_core::sampler::{tree_statistics, SamplerContext};

use crate::cache::{self, CacheKind};
use crate::figure;
use crate::oeis::{self, OeisBFile};

#[derive(Debug, Parser)]
#[command(
    name = "wit",
    version,
    about = "Counting, sampling and asymptotics of weakly increasing trees"
)]
pub struct Cli {
    /// Working precision in significant decimal digits (at least 15).
    #[arg(long, global = true, default_value_t = 30)]
    pub digits: u32,
    /// Directory holding cached count tables.
    #[arg(long, global = true, env = "WIT_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Seed for the sampler.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Progress on stderr; repeat for more detail.
    #[arg(short, long, global = true, action = ArgAction::Count)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact number of trees of one size or of every size up to a bound.
    Count(CountArgs),
    /// Whole count tables as CSV, optionally split by maximal label.
    Table(TableArgs),
    /// Uniformly random trees.
    Sample(SampleArgs),
    /// Scaled sequences b_n, h_n or the correction a_n as CSV.
    Scaled(ScaledArgs),
    /// Asymptotic constants with error bars.
    Estimate(EstimateArgs),
    /// Data for the b_n and h_n plots.
    Figure(FigureArgs),
    /// Compare the binary counts with an OEIS b-file up to a shift.
    OeisCheck(OeisArgs),
    /// Save, inspect or verify cached tables.
    Cache(CacheArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Recurrence,
    Funceq,
    Brute,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Csv,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("size").required(true).args(["n", "upto"])))]
pub struct CountArgs {
    /// Arity.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(2..))]
    pub k: u64,
    /// Single tree size.
    #[arg(long)]
    pub n: Option<usize>,
    /// Every size from 0 to this bound.
    #[arg(long)]
    pub upto: Option<usize>,
    #[arg(long, value_enum, default_value_t = RouteArg::Recurrence)]
    pub route: RouteArg,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(2..))]
    pub k: u64,
    /// Largest tree size.
    #[arg(long)]
    pub upto: usize,
    /// Split binary counts by maximal label: rows `m,n,count`.
    #[arg(long)]
    pub by_label: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TreeFormat {
    /// Indented listing.
    Text,
    /// One labeled node per line.
    Graph,
    /// Canonical byte encoding in hex.
    Encoding,
    /// CSV of size, nodes, maximal label and depth.
    Stats,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(2..))]
    pub k: u64,
    /// Tree size (number of leaves).
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub count: u64,
    #[arg(long, value_enum, default_value_t = TreeFormat::Text)]
    pub format: TreeFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeqArg {
    B,
    H,
    A,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScaledRoute {
    /// Scaled recurrence in extended precision.
    Recurrence,
    /// Exact table rescaled in the log domain.
    Exact,
}

#[derive(Debug, Args)]
pub struct ScaledArgs {
    #[arg(value_enum)]
    pub seq: SeqArg,
    /// Arity for h_n.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(2..))]
    pub k: u64,
    #[arg(long)]
    pub upto: usize,
    #[arg(long, value_enum, default_value_t = ScaledRoute::Recurrence)]
    pub route: ScaledRoute,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    /// Growth factor of T_n / T_{n-1} / n.
    Alpha,
    /// Constant in b_n ~ η n^{-ln 2}.
    Eta,
    /// Constant in h_n ~ η_k n^e.
    EtaK,
    /// Power e in h_n ~ η_k n^e.
    Exponent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Ratio,
    Extrapolation,
    Integral,
    SlopeFit,
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    #[arg(value_enum)]
    pub target: Target,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(2..))]
    pub k: u64,
    /// Largest index used (table index for k > 2).
    #[arg(long = "N")]
    pub n: Option<usize>,
    #[arg(long, value_enum)]
    pub method: Option<MethodArg>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Fig2,
    Fig3,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    #[arg(value_enum)]
    pub which: Which,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OeisArgs {
    #[arg(long, default_value = "A171792")]
    pub id: String,
    /// Local b-file; with --fetch, where the download is written.
    #[arg(long)]
    pub bfile: Option<PathBuf>,
    /// Download the b-file from oeis.org (one GET).
    #[arg(long, conflicts_with = "self_check")]
    pub fetch: bool,
    /// Compare the table with itself.
    #[arg(long)]
    pub self_check: bool,
    #[arg(long, default_value_t = 50)]
    pub upto: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    #[value(name = "B")]
    B,
    #[value(name = "H")]
    H,
    #[value(name = "Bmn")]
    Bmn,
}

impl From<KindArg> for CacheKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::B => CacheKind::B,
            KindArg::H => CacheKind::H,
            KindArg::Bmn => CacheKind::Bmn,
        }
    }
}

#[derive(Debug, Args)]
pub struct CacheArgs {
    #[command(subcommand)]
    pub action: CacheAction,
}

#[derive(Debug, Args)]
pub struct CacheTarget {
    #[arg(long, value_enum)]
    pub kind: KindArg,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(2..))]
    pub k: u64,
    /// Cache file; defaults to a file in --cache-dir.
    #[arg(long)]
    pub path: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum CacheAction {
    /// Compute a table and write it.
    Save {
        #[command(flatten)]
        target: CacheTarget,
        /// Largest tree size.
        #[arg(long)]
        upto: usize,
    },
    /// Load a table and print a summary.
    Show {
        #[command(flatten)]
        target: CacheTarget,
    },
    /// Load a table and compare it with a fresh computation.
    Verify {
        #[command(flatten)]
        target: CacheTarget,
    },
}

/// Settings shared by every subcommand.
#[derive(Debug, Clone)]
pub struct Settings {
    pub precision: Precision,
    pub cache_dir: Option<PathBuf>,
    pub seed: u64,
}

impl Settings {
    pub fn from_cli(cli: &Cli) -> Result<Self> {
        Ok(Settings {
            precision: Precision::new(cli.digits)?,
            cache_dir: cli.cache_dir.clone(),
            seed: cli.seed,
        })
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    let ctx = Settings::from_cli(cli)?;
    match &cli.command {
        Command::Count(a) => count(&ctx, a, out),
        Command::Table(a) => table(&ctx, a, out),
        Command::Sample(a) => sample(&ctx, a, out),
        Command::Scaled(a) => scaled(&ctx, a, out),
        Command::Estimate(a) => estimate(&ctx, a, out),
        Command::Figure(a) => figure_cmd(&ctx, a, out),
        Command::OeisCheck(a) => oeis_check(&ctx, a, out),
        Command::Cache(a) => cache_cmd(&ctx, a, out),
    }
}

/// Smallest table index whose table covers every size up to `n`.
fn index_for_size(arity: usize, n: usize) -> usize {
    match arity {
        2 => n,
        _ => n.saturating_sub(1).div_ceil(arity - 1),
    }
}

fn kind_for(arity: usize) -> TableKind {
    if arity == 2 {
        TableKind::B
    } else {
        TableKind::H
    }
}

fn compute_table(arity: usize, max_index: usize) -> Result<CountTable> {
    Ok(match arity {
        2 => count_binary_upto(max_index),
        _ => count_kary_upto(arity, max_index)?,
    })
}

fn truncate(t: &CountTable, max_index: usize) -> CountTable {
    CountTable::new(
        t.arity(),
        t.kind(),
        t.route(),
        t.entries()[..=max_index].to_vec(),
    )
}

/// Recurrence table through `max_index`, read from and written back to the
/// cache directory when one is set.
pub fn cached_table(ctx: &Settings, arity: usize, max_index: usize) -> Result<CountTable> {
    let Some(dir) = &ctx.cache_dir else {
        return compute_table(arity, max_index);
    };
    let kind = kind_for(arity);
    let path = dir.join(cache::file_name(kind.into(), arity));
    if path.exists() {
        let t = cache::load_table(&path, kind, arity)
            .with_context(|| format!("reading {}", path.display()))?;
        if t.max_index() >= max_index && !t.entries().is_empty() {
            log::info!("using cached table {}", path.display());
            return Ok(truncate(&t, max_index));
        }
    }
    let t = compute_table(arity, max_index)?;
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    cache::save_table(&path, &t)?;
    log::info!("cached {} entries in {}", t.entries().len(), path.display());
    Ok(t)
}

fn count(ctx: &Settings, a: &CountArgs, out: &mut dyn Write) -> Result<()> {
    let arity = a.k as usize;
    let sizes: Vec<usize> = match (a.n, a.upto) {
        (Some(n), None) => vec![n],
        (None, Some(m)) => (0..=m).collect(),
        _ => bail!("pass exactly one of --n and --upto"),
    };
    let top = *sizes.last().expect("nonempty");
    let values: Vec<BigUint> = match a.route {
        RouteArg::Recurrence | RouteArg::Funceq => {
            let idx = index_for_size(arity, top);
            let t = match (a.route, arity) {
                (RouteArg::Recurrence, _) => cached_table(ctx, arity, idx)?,
                (_, 2) => count_binary_funceq(idx)?,
                _ => count_kary_funceq(arity, idx)?,
            };
            sizes
                .iter()
                .map(|&n| t.g(n).expect("size within table"))
                .collect()
        }
        RouteArg::Brute => sizes
            .iter()
            .map(|&n| brute_force_count(arity, n))
            .collect::<Result<_, _>>()?,
    };
    if a.format == Format::Csv {
        writeln!(out, "n,count")?;
    }
    for (n, v) in sizes.iter().zip(&values) {
        match a.format {
            Format::Plain => writeln!(out, "{v}")?,
            Format::Csv => writeln!(out, "{n},{v}")?,
        }
    }
    Ok(())
}

fn stratified(ctx: &Settings, upto: usize) -> Result<LabelStratifiedTable> {
    let Some(dir) = &ctx.cache_dir else {
        return Ok(count_by_max_label(upto));
    };
    let path = dir.join(cache::file_name(CacheKind::Bmn, 2));
    if path.exists() {
        let t = cache::load_stratified(&path)?;
        if t.max_size() >= upto {
            log::info!("using cached table {}", path.display());
            return Ok(t);
        }
    }
    let t = count_by_max_label(upto);
    std::fs::create_dir_all(dir)?;
    cache::save_stratified(&path, &t)?;
    Ok(t)
}

fn table(ctx: &Settings, a: &TableArgs, out: &mut dyn Write) -> Result<()> {
    let arity = a.k as usize;
    if a.by_label {
        if arity != 2 {
            bail!("--by-label is only available for k = 2");
        }
        let t = stratified(ctx, a.upto)?;
        writeln!(out, "m,n,count")?;
        for ((m, n), v) in t.nonzero().filter(|((_, n), _)| *n <= a.upto) {
            writeln!(out, "{m},{n},{v}")?;
        }
        return Ok(());
    }
    let t = cached_table(ctx, arity, index_for_size(arity, a.upto))?;
    writeln!(out, "index,size,count")?;
    for (i, v) in t.entries().iter().enumerate() {
        writeln!(out, "{i},{},{v}", t.size_of_index(i))?;
    }
    Ok(())
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn sample(ctx: &Settings, a: &SampleArgs, out: &mut dyn Write) -> Result<()> {
    let arity = a.k as usize;
    let t = cached_table(ctx, arity, index_for_size(arity, a.n))?;
    let mut sampler = SamplerContext::new(&t, ctx.seed);
    if a.format == TreeFormat::Stats {
        writeln!(out, "size,nodes,max_label,depth")?;
    }
    for i in 0..a.count {
        let tree = sampler.sample_uniform(a.n)?;
        match a.format {
            TreeFormat::Text | TreeFormat::Graph => {
                if i > 0 {
                    writeln!(out)?;
                }
                let body = match a.format {
                    TreeFormat::Text => tree.render_text(),
                    _ => tree.render_graph(),
                };
                write!(out, "{body}")?;
            }
            TreeFormat::Encoding => writeln!(out, "{}", hex(&tree.canonical_encoding()))?,
            TreeFormat::Stats => {
                let s = tree_statistics(&tree);
                writeln!(out, "{},{},{},{}", s.size, s.nodes, s.max_label, s.depth)?;
            }
        }
    }
    Ok(())
}

fn scaled(ctx: &Settings, a: &ScaledArgs, out: &mut dyn Write) -> Result<()> {
    let p = ctx.precision;
    let seq: ScaledSequence = match (a.seq, a.route) {
        (SeqArg::B, ScaledRoute::Recurrence) => scaled_b_recurrence(a.upto, p),
        (SeqArg::B, ScaledRoute::Exact) => scaled_from_exact(&cached_table(ctx, 2, a.upto)?, p)?,
        (SeqArg::H, ScaledRoute::Recurrence) => scaled_h_recurrence(a.k as usize, a.upto, p)?,
        (SeqArg::H, ScaledRoute::Exact) => {
            let arity = a.k as usize;
            let t = match arity {
                2 => count_kary_upto(2, a.upto)?,
                _ => cached_table(ctx, arity, a.upto)?,
            };
            scaled_from_exact(&t, p)?
        }
        (SeqArg::A, ScaledRoute::Recurrence) => {
            correction_a(a.upto, &scaled_b_recurrence(a.upto, p))?
        }
        (SeqArg::A, ScaledRoute::Exact) => {
            let b = scaled_from_exact(&cached_table(ctx, 2, a.upto)?, p)?;
            correction_a(a.upto, &b)?
        }
    };
    write!(out, "{}", seq.to_csv())?;
    Ok(())
}

/// The kernel of the integral representation is read as `1/g`.
pub const INTEGRAL_CAVEAT: &str =
    "note: the integral route takes the kernel of the integral representation to be 1/g; the result is marked interpreted";

fn estimate(ctx: &Settings, a: &EstimateArgs, out: &mut dyn Write) -> Result<()> {
    let p = ctx.precision;
    let arity = a.k as usize;
    let method = a.method.unwrap_or(match a.target {
        Target::Alpha => MethodArg::Ratio,
        Target::Eta | Target::EtaK => MethodArg::Extrapolation,
        Target::Exponent => MethodArg::SlopeFit,
    });
    let est: AsymptoticEstimate = match (a.target, method) {
        (Target::Alpha, MethodArg::Ratio) => {
            let n = a.n.unwrap_or(2000);
            estimate_alpha(&cached_table(ctx, arity, n)?, p)?
        }
        (Target::Eta, MethodArg::Extrapolation) => {
            only_binary(arity, a.target)?;
            let n = a.n.unwrap_or(5000);
            estimate_eta_extrapolation(&scaled_b_recurrence(n, p), n)?
        }
        (Target::Eta, MethodArg::Integral) => {
            only_binary(arity, a.target)?;
            let n = a.n.unwrap_or(2000);
            eprintln!("{INTEGRAL_CAVEAT}");
            let b = scaled_b_recurrence(n, p);
            estimate_eta_integral(&correction_a(n, &b)?)?
        }
        (Target::EtaK, MethodArg::Extrapolation) => {
            estimate_eta_k(&scaled_h_recurrence(arity, a.n.unwrap_or(4000), p)?)?
        }
        (Target::Exponent, MethodArg::SlopeFit) => {
            estimate_kary_exponent(&scaled_h_recurrence(arity, a.n.unwrap_or(4000), p)?)?
        }
        (t, m) => bail!(
            "method {} does not apply to target {}",
            m.to_possible_value().expect("named").get_name(),
            t.to_possible_value().expect("named").get_name()
        ),
    };
    writeln!(out, "{}", est.record())?;
    Ok(())
}

fn only_binary(arity: usize, target: Target) -> Result<()> {
    if arity != 2 {
        bail!(
            "target {} is defined for k = 2 only; use eta-k for k = {arity}",
            target.to_possible_value().expect("named").get_name()
        );
    }
    Ok(())
}

fn figure_cmd(ctx: &Settings, a: &FigureArgs, out: &mut dyn Write) -> Result<()> {
    let csv = match a.which {
        Which::Fig2 => figure::fig2(ctx.precision),
        Which::Fig3 => figure::fig3(ctx.precision)?,
    };
    match &a.out {
        Some(path) => {
            cache::write_atomic(path, csv.as_bytes())?;
            eprintln!("wrote {}", path.display());
        }
        None => out.write_all(csv.as_bytes())?,
    }
    Ok(())
}

fn oeis_check(ctx: &Settings, a: &OeisArgs, out: &mut dyn Write) -> Result<()> {
    oeis::check_id(&a.id)?;
    let counts = cached_table(ctx, 2, a.upto)?;
    let bfile = if a.self_check {
        OeisBFile::from_values(&a.id, counts.entries())
    } else if a.fetch {
        let default_name = format!("b{}.txt", &a.id[1..]);
        let dest = match (&a.bfile, &ctx.cache_dir) {
            (Some(p), _) => p.clone(),
            (None, Some(dir)) => dir.join(default_name),
            (None, None) => PathBuf::from(default_name),
        };
        let url = oeis::bfile_url(&a.id)?;
        let bytes = oeis::fetch(&a.id, &dest)?;
        eprintln!("fetched {bytes} bytes from {url} into {}", dest.display());
        OeisBFile::read(&a.id, &dest)?
    } else {
        let path = a
            .bfile
            .as_deref()
            .ok_or_else(|| anyhow!("no b-file: pass --bfile PATH, --fetch or --self-check"))?;
        OeisBFile::read(&a.id, path)?
    };
    let report = oeis::find_shift(counts.entries(), &bfile)?;
    write!(out, "{}", report.render())?;
    if !report.success() {
        bail!(
            "{}: only {} terms agree under shift {} (need {})",
            a.id,
            report.matched,
            report.shift,
            (a.upto as i64 - report.shift.abs()).max(oeis::MIN_MATCHES as i64)
        );
    }
    Ok(())
}

fn cache_path(ctx: &Settings, t: &CacheTarget) -> Result<PathBuf> {
    let arity = t.k as usize;
    if let Some(p) = &t.path {
        return Ok(p.clone());
    }
    let dir = ctx
        .cache_dir
        .as_ref()
        .ok_or_else(|| anyhow!("pass --path or set --cache-dir / WIT_CACHE_DIR"))?;
    Ok(dir.join(cache::file_name(t.kind.into(), arity)))
}

fn check_target(t: &CacheTarget) -> Result<()> {
    match (t.kind, t.k) {
        (KindArg::B | KindArg::Bmn, 2) | (KindArg::H, _) => Ok(()),
        (k, arity) => bail!("kind {} needs k = 2, got k = {arity}", CacheKind::from(k)),
    }
}

fn cache_cmd(ctx: &Settings, a: &CacheArgs, out: &mut dyn Write) -> Result<()> {
    match &a.action {
        CacheAction::Save { target, upto } => {
            check_target(target)?;
            let path = cache_path(ctx, target)?;
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)?;
            }
            let arity = target.k as usize;
            match target.kind {
                KindArg::Bmn => cache::save_stratified(&path, &count_by_max_label(*upto))?,
                KindArg::B => cache::save_table(&path, &count_binary_upto(*upto))?,
                KindArg::H => cache::save_table(&path, &compute_h(arity, *upto)?)?,
            }
            writeln!(out, "saved {}", path.display())?;
        }
        CacheAction::Show { target } => {
            check_target(target)?;
            let path = cache_path(ctx, target)?;
            writeln!(out, "{}", summarize(&path, target)?)?;
        }
        CacheAction::Verify { target } => {
            check_target(target)?;
            let path = cache_path(ctx, target)?;
            let arity = target.k as usize;
            let same = match target.kind {
                KindArg::Bmn => {
                    let t = cache::load_stratified(&path)?;
                    t == count_by_max_label(t.max_size())
                }
                KindArg::B | KindArg::H => {
                    let kind = if target.kind == KindArg::B {
                        TableKind::B
                    } else {
                        TableKind::H
                    };
                    let t = cache::load_table(&path, kind, arity)?;
                    let fresh = match kind {
                        TableKind::B => count_binary_upto(t.max_index()),
                        TableKind::H => count_kary_upto(arity, t.max_index())?,
                    };
                    t.entries() == fresh.entries()
                }
            };
            if !same {
                bail!("{} disagrees with a fresh computation", path.display());
            }
            writeln!(out, "ok {}", path.display())?;
        }
    }
    Ok(())
}

/// H-table for an arity, with `k = 2` allowed.
fn compute_h(arity: usize, upto: usize) -> Result<CountTable> {
    Ok(count_kary_upto(
        arity,
        upto.saturating_sub(1) / (arity - 1),
    )?)
}

fn summarize(path: &Path, t: &CacheTarget) -> Result<String> {
    let arity = t.k as usize;
    Ok(match t.kind {
        KindArg::Bmn => {
            let s = cache::load_stratified(path)?;
            format!(
                "kind=Bmn k=2 max_size={} max_label={} entries={}",
                s.max_size(),
                s.max_label(),
                s.nonzero().count()
            )
        }
        KindArg::B | KindArg::H => {
            let kind = if t.kind == KindArg::B {
                TableKind::B
            } else {
                TableKind::H
            };
            let tab = cache::load_table(path, kind, arity)?;
            format!(
                "kind={} k={arity} entries={} max_size={}",
                kind,
                tab.entries().len(),
                tab.max_size()
            )
        }
    })
}
