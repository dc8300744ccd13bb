use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use frcode::designs::maximal_arc_search;
use frcode::distance::{
    attains_locality_bound, attains_singleton, bound_table, dual_graph_optimal_cases, locality_bound, min_distance,
    repair_locality, singleton_range_affine, singleton_range_mols, singleton_range_regular,
    singleton_range_regular_beyond, singleton_range_steiner, singleton_range_turan, table3_predicate, KRange,
    ReportOptions,
};
use frcode::filesize::{affine_side_condition, dual_indicator_bound, file_size_profile, phi_sequence};
use frcode::graphs::girth;
use frcode::search::DEFAULT_BUDGET;
use frcode::{FrCode, FrError, SearchOptions};

mod source;
mod table;

use source::{Built, Origin, Source};
use table::{cell, Format, Table};

const EXIT_DISAGREE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

/// Build fractional repetition codes and check their file size, distance and bounds.
#[derive(Parser, Debug)]
#[command(name = "frcode", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct Common {
    /// Write the main output here instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Cap on search nodes visited by each exhaustive search
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Worker threads for the parallel searches
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a code and print it as JSON with a parameter summary
    Construct(Source),
    /// Build a code and print its dual
    Dual(Source),
    /// File-size profile: M_k, N_k and the two file-size bounds per k
    Analyze {
        #[command(flatten)]
        source: Source,
        /// Skip the exhaustive M_k search
        #[arg(long)]
        formula_only: bool,
    },
    /// Exact minimum distance next to every distance bound
    Bounds {
        #[command(flatten)]
        source: Source,
        /// File sizes: `a..b`, `a,b,c` or a single value (default: all)
        #[arg(long, value_name = "RANGE")]
        file_size: Option<String>,
        /// `n',rho'` of the local codes, for the local-structure bound
        #[arg(long, value_name = "N,RHO")]
        local: Option<String>,
        /// Skip the exact minimum distance
        #[arg(long)]
        formula_only: bool,
    },
    /// Compare theorem-predicted optimality with exhaustive search
    CheckOptimal {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = BoundKind::Singleton)]
        bound: BoundKind,
        /// Restrict to these k: `a..b`, `a,b,c` or a single value
        #[arg(long, value_name = "RANGE")]
        k: Option<String>,
        /// Print predictions only
        #[arg(long)]
        formula_only: bool,
    },
    /// Girth of a generated graph
    Girth(Source),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BoundKind {
    Singleton,
    Locality,
}

/// Parameter problems found while interpreting arguments; exit status 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn parse_list(text: &str) -> Result<Vec<usize>> {
    let bad = || usage(format!("cannot parse range {text:?}"));
    if let Some((a, b)) = text.split_once("..") {
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
        return Ok((a..=b).collect());
    }
    text.split(',').map(|s| s.trim().parse().map_err(|_| bad())).collect()
}

struct Output {
    path: Option<PathBuf>,
}

impl Output {
    fn write(&self, text: &str) -> Result<()> {
        match &self.path {
            Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
            None => {
                std::io::stdout().write_all(text.as_bytes())?;
                Ok(())
            }
        }
    }
}

fn summary(c: &FrCode) -> String {
    format!("{}\n", c.params())
}

fn emit_code(c: &FrCode, format: Format, out: &Output) -> Result<()> {
    match format {
        Format::Json => {
            out.write(&format!("{}\n", c.to_json()))?;
            print!("{}", summary(c));
        }
        Format::Text => out.write(&summary(c))?,
        Format::Csv => {
            let mut t = Table::new(vec!["block", "points"]);
            for (i, b) in c.structure().blocks().iter().enumerate() {
                let pts: Vec<String> = b.iter().map(u64::to_string).collect();
                t.push(vec![cell(i), cell(pts.join(" "))]);
            }
            out.write(&t.render(Format::Csv))?;
            print!("{}", summary(c));
        }
    }
    Ok(())
}

fn analyze(c: &FrCode, formula_only: bool, search: SearchOptions) -> Result<Table> {
    let p = c.params();
    let exact = if formula_only { None } else { Some(file_size_profile(c, search)?) };
    let phi = phi_sequence(p.n, p.alpha, p.rho);
    let mut t = Table::new(vec!["k", "M_k", "N_k", "phi_k", "indicator_bound_k"]);
    for k in 1..=p.n {
        t.push(vec![
            cell(k),
            exact.as_ref().and_then(|e| cell(e.m(k))),
            exact.as_ref().and_then(|e| cell(e.complement(k))),
            cell(phi[k - 1]),
            cell(dual_indicator_bound(p.n, p.alpha, p.rho, k)?),
        ]);
    }
    Ok(t)
}

fn bounds(c: &FrCode, file_sizes: &[usize], options: ReportOptions) -> Result<Table> {
    let mut t = Table::new(vec!["M", "d_min", "singleton", "locality", "improved", "local_structure"]);
    for r in bound_table(c, file_sizes, options)? {
        t.push(vec![
            cell(r.file_size),
            r.d_min_exact.and_then(cell),
            cell(r.bound_singleton),
            r.bound_locality.and_then(cell),
            cell(r.bound_improved),
            r.bound_local_structure.and_then(cell),
        ]);
    }
    Ok(t)
}

/// A prediction about attainment at one `k` (or file size `M`).
struct Claim {
    label: String,
    predicted_text: String,
    predicted: bool,
}

struct Plan {
    notes: Vec<String>,
    claims: Vec<(Claim, Box<dyn Fn() -> frcode::Result<bool>>)>,
}

fn union_text(a: KRange, b: KRange) -> String {
    if b.is_empty() {
        a.to_string()
    } else {
        format!("{a}+{b}")
    }
}

fn window(lo: usize, hi: usize, only: &Option<Vec<usize>>) -> Vec<usize> {
    (lo..=hi).filter(|k| only.as_ref().is_none_or(|o| o.contains(k))).collect()
}

fn singleton_claims(built: &Built, only: &Option<Vec<usize>>, formula_only: bool, search: SearchOptions) -> Result<Plan> {
    let c = built.code.clone();
    let mut notes = Vec::new();
    let (ranges, ks): ((KRange, KRange), RangeInclusive<usize>) = match (&built.origin, built.dualized) {
        (Origin::Graph { turan: Some((n, r)), .. }, false) => {
            ((singleton_range_turan(*n, *r)?, KRange::Empty), 1..=c.alpha().min(c.n()))
        }
        (Origin::Graph { graph, .. }, false) => {
            let alpha = c.alpha();
            let g = girth(graph).finite().ok_or_else(|| usage("acyclic graph has no girth window"))?;
            notes.push(format!("alpha={alpha} girth={g}"));
            // the file-size law, hence the prediction, is exact up to g + ceil(g/2) - 2
            let top = (g + g.div_ceil(2) - 2).min(c.n());
            ((singleton_range_regular(alpha, g), singleton_range_regular_beyond(alpha, g)), 1..=top)
        }
        (Origin::Steiner { sts }, true) => {
            if !formula_only {
                let arc = maximal_arc_search(sts, sts.rho() + 1, search.execution)?;
                notes.push(match arc {
                    Some(a) => format!("arc of size {} found: {a:?}", sts.rho() + 1),
                    None => format!("no arc of size {}: range hypothesis unverified on this instance", sts.rho() + 1),
                });
            }
            ((singleton_range_steiner(sts.rho()), KRange::Empty), 1..=c.alpha())
        }
        (Origin::Affine { q, m, rho }, false) => {
            if !affine_side_condition(*q, *m, *rho) {
                bail!(usage(format!("(q, m, rho) = ({q}, {m}, {rho}) violates the side condition; no prediction applies")));
            }
            ((singleton_range_affine(*q, *m), KRange::Empty), 1..=(*m as usize).min(*rho).min(c.n()))
        }
        (Origin::Mols { order, rho }, false) => ((singleton_range_mols(*order, *rho), KRange::Empty), 1..=*rho),
        _ => bail!(usage("no singleton attainment formula for this construction (graph, sts --dual, affine, mols-net)")),
    };
    let text = union_text(ranges.0, ranges.1);
    notes.push(format!("predicted={text} window=[{},{}]", ks.start(), ks.end()));
    let claims = window(*ks.start(), *ks.end(), only)
        .into_iter()
        .map(|k| {
            let claim = Claim {
                label: format!("k={k}"),
                predicted_text: text.clone(),
                predicted: ranges.0.contains(k) || ranges.1.contains(k),
            };
            let c = c.clone();
            let check: Box<dyn Fn() -> frcode::Result<bool>> = Box::new(move || attains_singleton(&c, k, search));
            (claim, check)
        })
        .collect();
    Ok(Plan { notes, claims })
}

fn locality_claims(built: &Built, only: &Option<Vec<usize>>, search: SearchOptions) -> Result<Plan> {
    let Origin::Graph { graph, .. } = &built.origin else {
        bail!(usage("locality attainment formulas exist only for graph codes and their duals"));
    };
    let g = girth(graph).finite().ok_or_else(|| usage("acyclic graph has no girth window"))?;
    let alpha = graph.regular_degree()?;
    let c = built.code.clone();
    let mut notes = vec![format!("alpha={alpha} girth={g}")];
    let mut claims: Vec<(Claim, Box<dyn Fn() -> frcode::Result<bool>>)> = Vec::new();
    if built.dualized {
        let cases = dual_graph_optimal_cases(graph.vertex_count(), alpha, g)?;
        if cases.is_empty() {
            notes.push("no integrality case applies".into());
        }
        for (m, case) in cases {
            if only.as_ref().is_some_and(|o| !o.contains(&m)) {
                continue;
            }
            let c = c.clone();
            let check: Box<dyn Fn() -> frcode::Result<bool>> = Box::new(move || {
                let d = repair_locality(&c)?;
                Ok(min_distance(&c, m, search)? as i64 == locality_bound(c.n(), c.alpha(), d, m))
            });
            claims.push((Claim { label: format!("M={m}"), predicted_text: format!("{case:?}"), predicted: true }, check));
        }
    } else {
        let top = (g + g.div_ceil(2) - 2).min(c.n());
        notes.push(format!("window=[{},{top}]", alpha + 1));
        for k in window(alpha + 1, top, only) {
            let row = table3_predicate(alpha, g, k)?;
            let text = row.map_or("none".to_string(), |r| format!("{r:?}").replace(' ', ""));
            let c = c.clone();
            let check: Box<dyn Fn() -> frcode::Result<bool>> = Box::new(move || attains_locality_bound(&c, k, search));
            claims.push((Claim { label: format!("k={k}"), predicted_text: text, predicted: row.is_some() }, check));
        }
    }
    Ok(Plan { notes, claims })
}

/// Verdict table; returns whether any prediction disagreed.
fn check_optimal(plan: Plan, formula_only: bool, format: Format, out: &Output) -> Result<bool> {
    let mut lines = Vec::new();
    let mut t = Table::new(vec!["at", "predicted", "expected", "actual", "verdict"]);
    let mut disagree = false;
    for (claim, check) in &plan.claims {
        if formula_only {
            lines.push(format!("{} predicted={} expected={}", claim.label, claim.predicted_text, claim.predicted));
            t.push(vec![cell(&claim.label), cell(&claim.predicted_text), cell(claim.predicted), None, None]);
            continue;
        }
        let actual = check()?;
        let verdict = if actual == claim.predicted { "AGREE" } else { "DISAGREE" };
        disagree |= actual != claim.predicted;
        lines.push(format!("{} predicted={} actual={actual} {verdict}", claim.label, claim.predicted_text));
        t.push(vec![
            cell(&claim.label),
            cell(&claim.predicted_text),
            cell(claim.predicted),
            cell(actual),
            cell(verdict),
        ]);
    }
    match format {
        Format::Text => {
            let mut text: String = plan.notes.iter().map(|n| format!("# {n}\n")).collect();
            for l in lines {
                text.push_str(&l);
                text.push('\n');
            }
            out.write(&text)?;
        }
        f => out.write(&t.render(f))?,
    }
    Ok(disagree)
}

fn run(cli: Cli) -> Result<ExitCode> {
    if let Some(jobs) = cli.common.jobs {
        if jobs == 0 {
            return Err(usage("--jobs must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global()?;
    }
    let search = SearchOptions::default().with_budget(cli.common.budget);
    let out = Output { path: cli.common.out.clone() };
    let fmt = |default| cli.common.format.unwrap_or(default);
    match &cli.command {
        Command::Construct(src) => emit_code(&src.build()?.code, fmt(Format::Json), &out)?,
        Command::Dual(src) => emit_code(&frcode::dual(&src.build()?.code), fmt(Format::Json), &out)?,
        Command::Analyze { source, formula_only } => {
            let c = source.build()?.code;
            out.write(&analyze(&c, *formula_only, search)?.render(fmt(Format::Csv)))?;
        }
        Command::Bounds { source, file_size, local, formula_only } => {
            let c = source.build()?.code;
            let ms = match file_size {
                Some(s) => parse_list(s)?,
                None => (1..=c.theta()).collect(),
            };
            let local = match local {
                Some(s) => match parse_list(s)?.as_slice() {
                    &[nl, rl] => Some((nl, rl)),
                    _ => return Err(usage("--local expects n',rho'")),
                },
                None => None,
            };
            let options = ReportOptions { search, formula_only: *formula_only, local };
            out.write(&bounds(&c, &ms, options)?.render(fmt(Format::Csv)))?;
        }
        Command::CheckOptimal { source, bound, k, formula_only } => {
            let built = source.build()?;
            let only = k.as_deref().map(parse_list).transpose()?;
            let plan = match bound {
                BoundKind::Singleton => singleton_claims(&built, &only, *formula_only, search)?,
                BoundKind::Locality => locality_claims(&built, &only, search)?,
            };
            if check_optimal(plan, *formula_only, fmt(Format::Text), &out)? {
                return Ok(ExitCode::from(EXIT_DISAGREE));
            }
        }
        Command::Girth(src) => {
            let (graph, _) = src.graph()?.ok_or_else(|| usage("girth needs a graph --kind"))?;
            let g = girth(&graph).to_string();
            let mut t = Table::new(vec!["girth"]);
            t.push(vec![cell(&g)]);
            match fmt(Format::Text) {
                Format::Text => out.write(&format!("girth={g}\n"))?,
                f => out.write(&t.render(f))?,
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            let budget = e.chain().any(|c| matches!(c.downcast_ref::<FrError>(), Some(FrError::SizeLimitExceeded(_))));
            ExitCode::from(if budget { EXIT_BUDGET } else { EXIT_USAGE })
        }
    }
}
