//! Construction descriptors: which generator, with which parameters.

use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use frcode::designs::{affine_fr_code, mols_fr_code, mols_prime, squares_from_json, steiner_triple_system};
use frcode::graphs::{
    circulant_graph, complete_graph, cycle_graph, graph_to_fr, petersen_graph, projective_plane_incidence_graph,
    turan_graph, Graph,
};
use frcode::{dual, FrCode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Turan,
    Cycle,
    Circulant,
    Petersen,
    PgIncidence,
    Complete,
    Sts,
    Affine,
    MolsNet,
}

#[derive(Args, Debug, Clone)]
pub struct Source {
    /// Generator to build the code from
    #[arg(long, value_enum, required_unless_present = "ingest", conflicts_with = "ingest")]
    pub kind: Option<Kind>,
    /// Read an incidence structure (JSON) instead of generating one
    #[arg(long, value_name = "PATH")]
    pub ingest: Option<PathBuf>,
    /// Vertex count (turan, cycle, circulant, complete)
    #[arg(long)]
    pub n: Option<usize>,
    /// Number of parts (turan)
    #[arg(long)]
    pub r: Option<usize>,
    /// Comma-separated offsets (circulant)
    #[arg(long, value_delimiter = ',')]
    pub offsets: Vec<usize>,
    /// Prime field size (pg-incidence, affine, mols-net)
    #[arg(long)]
    pub q: Option<u64>,
    /// Dimension (affine)
    #[arg(long)]
    pub dim: Option<u32>,
    /// Number of points (sts)
    #[arg(long)]
    pub theta: Option<u64>,
    /// Number of parallel classes (affine, mols-net)
    #[arg(long)]
    pub rho: Option<usize>,
    /// Latin squares (JSON) for mols-net instead of the prime construction
    #[arg(long, value_name = "PATH")]
    pub squares: Option<PathBuf>,
    /// Use the dual of the constructed code
    #[arg(long)]
    pub dual: bool,
}

/// Where a code came from, as far as the attainment theorems care.
#[derive(Debug, Clone)]
pub enum Origin {
    Graph { graph: Graph, turan: Option<(usize, usize)> },
    Steiner { sts: FrCode },
    Affine { q: u64, m: u32, rho: usize },
    Mols { order: usize, rho: usize },
    Ingested,
}

pub struct Built {
    pub code: FrCode,
    pub origin: Origin,
    pub dualized: bool,
}

fn need<T>(v: Option<T>, flag: &str, kind: Kind) -> Result<T> {
    v.with_context(|| format!("--kind {} requires --{flag}", kind.to_possible_value().unwrap().get_name()))
}

impl Source {
    pub fn graph(&self) -> Result<Option<(Graph, Option<(usize, usize)>)>> {
        let Some(kind) = self.kind else { return Ok(None) };
        let g = match kind {
            Kind::Turan => {
                let (n, r) = (need(self.n, "n", kind)?, need(self.r, "r", kind)?);
                return Ok(Some((turan_graph(n, r)?, Some((n, r)))));
            }
            Kind::Cycle => cycle_graph(need(self.n, "n", kind)?)?,
            Kind::Circulant => circulant_graph(need(self.n, "n", kind)?, &self.offsets)?,
            Kind::Petersen => petersen_graph(),
            Kind::PgIncidence => projective_plane_incidence_graph(need(self.q, "q", kind)?)?,
            Kind::Complete => complete_graph(need(self.n, "n", kind)?)?,
            Kind::Sts | Kind::Affine | Kind::MolsNet => return Ok(None),
        };
        Ok(Some((g, None)))
    }

    pub fn build(&self) -> Result<Built> {
        let (code, origin) = if let Some(path) = &self.ingest {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            (FrCode::from_json(&text).with_context(|| format!("ingesting {}", path.display()))?, Origin::Ingested)
        } else if let Some((graph, turan)) = self.graph()? {
            (graph_to_fr(&graph)?, Origin::Graph { graph, turan })
        } else {
            let kind = self.kind.expect("clap requires --kind or --ingest");
            match kind {
                Kind::Sts => {
                    let sts = steiner_triple_system(need(self.theta, "theta", kind)?)?;
                    (sts.clone(), Origin::Steiner { sts })
                }
                Kind::Affine => {
                    let (q, m, rho) = (need(self.q, "q", kind)?, need(self.dim, "dim", kind)?, need(self.rho, "rho", kind)?);
                    (affine_fr_code(q, m, rho)?.code, Origin::Affine { q, m, rho })
                }
                Kind::MolsNet => {
                    let rho = need(self.rho, "rho", kind)?;
                    let squares = match (&self.squares, self.q) {
                        (Some(path), _) => {
                            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                            squares_from_json(&text)?
                        }
                        (None, Some(p)) => mols_prime(p)?,
                        (None, None) => bail!("--kind mols-net requires --q or --squares"),
                    };
                    let order = squares.first().map_or(0, |s| s.order());
                    (mols_fr_code(&squares, rho)?.code, Origin::Mols { order, rho })
                }
                _ => unreachable!("graph kinds handled above"),
            }
        };
        Ok(if self.dual {
            Built { code: dual(&code), origin, dualized: true }
        } else {
            Built { code, origin, dualized: false }
        })
    }
}
