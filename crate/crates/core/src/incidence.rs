//! Incidence structures and the fractional repetition codes built on them.
//!
//! An [`IncidenceStructure`] is a list of point labels together with an
//! ordered list of blocks. A [`FrCode`] is a structure in which every block
//! holds the same number of points (`alpha`, the node capacity) and every point
//! lies in the same number of blocks (`rho`, the repetition degree). Blocks are
//! storage nodes and points are replicated packets.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{FrError, Result};

/// Raw JSON form: `{"points":[...],"blocks":[[...],...]}`.
#[derive(Serialize, Deserialize)]
struct RawStructure {
    points: Vec<u64>,
    blocks: Vec<Vec<u64>>,
}

/// Points and blocks with their incidence relation.
///
/// Blocks are kept sorted ascending; block order is significant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawStructure", into = "RawStructure")]
pub struct IncidenceStructure {
    points: Vec<u64>,
    blocks: Vec<Vec<u64>>,
}

impl TryFrom<RawStructure> for IncidenceStructure {
    type Error = FrError;

    fn try_from(raw: RawStructure) -> Result<Self> {
        IncidenceStructure::new(raw.points, raw.blocks)
    }
}

impl From<IncidenceStructure> for RawStructure {
    fn from(s: IncidenceStructure) -> Self {
        RawStructure { points: s.points, blocks: s.blocks }
    }
}

impl IncidenceStructure {
    pub fn new(points: Vec<u64>, blocks: Vec<Vec<u64>>) -> Result<Self> {
        if points.is_empty() {
            return Err(FrError::EmptyStructure("no points".into()));
        }
        if blocks.is_empty() {
            return Err(FrError::EmptyStructure("no blocks".into()));
        }
        let mut seen = BTreeSet::new();
        for &p in &points {
            if !seen.insert(p) {
                return Err(FrError::DuplicatePointLabel(p));
            }
        }
        let mut sorted_blocks = Vec::with_capacity(blocks.len());
        for (b, mut block) in blocks.into_iter().enumerate() {
            block.sort_unstable();
            for w in block.windows(2) {
                if w[0] == w[1] {
                    return Err(FrError::RepeatedIncidence { block: b, label: w[0] });
                }
            }
            if let Some(&label) = block.iter().find(|l| !seen.contains(l)) {
                return Err(FrError::UnknownPoint { block: b, label });
            }
            sorted_blocks.push(block);
        }
        Ok(IncidenceStructure { points, blocks: sorted_blocks })
    }

    /// Structure on contiguous labels `0..point_count`.
    pub fn contiguous(point_count: usize, blocks: Vec<Vec<u64>>) -> Result<Self> {
        Self::new((0..point_count as u64).collect(), blocks)
    }

    pub fn points(&self) -> &[u64] {
        &self.points
    }

    pub fn blocks(&self) -> &[Vec<u64>] {
        &self.blocks
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("incidence structure serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// A validated `(n, alpha, rho)` fractional repetition code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrCode {
    structure: IncidenceStructure,
    alpha: usize,
    rho: usize,
    /// Blocks as positions into `structure.points()`.
    block_index: Vec<Vec<usize>>,
}

/// The four code parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CodeParams {
    pub n: usize,
    pub alpha: usize,
    pub rho: usize,
    pub theta: usize,
}

impl CodeParams {
    /// Parameters of an `(n, alpha, rho)` code, if `n * alpha / rho` is integral.
    pub fn new(n: usize, alpha: usize, rho: usize) -> Result<Self> {
        if n == 0 || alpha == 0 || rho == 0 {
            return Err(FrError::BadParameters(format!(
                "(n, alpha, rho) = ({n}, {alpha}, {rho}) must be positive"
            )));
        }
        if (n * alpha) % rho != 0 {
            return Err(FrError::BadParameters(format!(
                "n * alpha = {} is not divisible by rho = {rho}",
                n * alpha
            )));
        }
        Ok(CodeParams { n, alpha, rho, theta: n * alpha / rho })
    }

    pub fn dual(self) -> CodeParams {
        CodeParams { n: self.theta, alpha: self.rho, rho: self.alpha, theta: self.n }
    }
}

impl std::fmt::Display for CodeParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "n={} alpha={} rho={} theta={}", self.n, self.alpha, self.rho, self.theta)
    }
}

/// Checks uniform block size and point degree, inferring `alpha` and `rho`.
pub fn validate_fr(s: IncidenceStructure) -> Result<FrCode> {
    let alpha = s.blocks[0].len();
    if alpha == 0 {
        return Err(FrError::EmptyStructure("block 0 has no points".into()));
    }
    for (b, block) in s.blocks.iter().enumerate() {
        if block.len() != alpha {
            return Err(FrError::NonUniformBlockSize { block: b, expected: alpha, found: block.len() });
        }
    }
    let position: HashMap<u64, usize> = s.points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut degree = vec![0usize; s.points.len()];
    let block_index: Vec<Vec<usize>> = s
        .blocks
        .iter()
        .map(|block| {
            block
                .iter()
                .map(|l| {
                    let i = position[l];
                    degree[i] += 1;
                    i
                })
                .collect()
        })
        .collect();
    let rho = degree[0];
    for (i, &d) in degree.iter().enumerate() {
        if d != rho {
            return Err(FrError::NonUniformPointDegree { point: s.points[i], expected: rho, found: d });
        }
    }
    if rho == 0 {
        return Err(FrError::EmptyStructure(format!("point {} lies in no block", s.points[0])));
    }
    Ok(FrCode { structure: s, alpha, rho, block_index })
}

impl FrCode {
    /// Code on contiguous labels `0..theta` from blocks of point indices.
    pub fn from_blocks(theta: usize, blocks: Vec<Vec<u64>>) -> Result<Self> {
        validate_fr(IncidenceStructure::contiguous(theta, blocks)?)
    }

    pub fn structure(&self) -> &IncidenceStructure {
        &self.structure
    }

    pub fn n(&self) -> usize {
        self.structure.blocks.len()
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn rho(&self) -> usize {
        self.rho
    }

    pub fn theta(&self) -> usize {
        self.structure.points.len()
    }

    pub fn params(&self) -> CodeParams {
        CodeParams { n: self.n(), alpha: self.alpha, rho: self.rho, theta: self.theta() }
    }

    /// Blocks as positions `0..theta` into the point list.
    pub fn block_indices(&self) -> &[Vec<usize>] {
        &self.block_index
    }

    /// For each point position, the indices of the blocks containing it.
    pub fn point_blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::with_capacity(self.rho); self.theta()];
        for (b, block) in self.block_index.iter().enumerate() {
            for &p in block {
                out[p].push(b);
            }
        }
        out
    }

    /// Same code with points renamed to their positions `0..theta`.
    pub fn relabeled(&self) -> FrCode {
        let blocks = self
            .block_index
            .iter()
            .map(|b| b.iter().map(|&i| i as u64).collect())
            .collect();
        FrCode::from_blocks(self.theta(), blocks).expect("relabeling preserves validity")
    }

    pub fn to_json(&self) -> String {
        self.structure.to_json()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        validate_fr(IncidenceStructure::from_json(text)?)
    }
}

/// The `(theta, rho, alpha)` code with points and blocks exchanged.
///
/// Block `i` of `c` becomes point `i`; dual block `j` lists the blocks of `c`
/// containing the point at position `j`.
pub fn dual(c: &FrCode) -> FrCode {
    let blocks = c
        .point_blocks()
        .into_iter()
        .map(|bs| bs.into_iter().map(|b| b as u64).collect())
        .collect();
    FrCode::from_blocks(c.n(), blocks).expect("dual of a valid code is valid")
}

pub fn has_repeated_blocks(c: &FrCode) -> bool {
    let mut seen = BTreeSet::new();
    c.structure.blocks.iter().any(|b| !seen.insert(b))
}

/// Disjoint union; `b`'s points are relabeled above the largest label of `a`.
pub fn disjoint_union(a: &FrCode, b: &FrCode) -> Result<FrCode> {
    if a.alpha != b.alpha || a.rho != b.rho {
        return Err(FrError::ParameterMismatch(format!(
            "(alpha, rho) = ({}, {}) vs ({}, {})",
            a.alpha, a.rho, b.alpha, b.rho
        )));
    }
    let offset = a.structure.points.iter().max().map_or(0, |m| m + 1);
    let mut points = a.structure.points.clone();
    points.extend(b.structure.points.iter().map(|p| p + offset));
    let mut blocks = a.structure.blocks.clone();
    blocks.extend(b.structure.blocks.iter().map(|bl| bl.iter().map(|p| p + offset).collect()));
    validate_fr(IncidenceStructure::new(points, blocks)?)
}

/// The 7-point, 7-block code with blocks {1,2,4},{1,3,7},... (a Fano plane).
pub fn fano_example() -> FrCode {
    let blocks = vec![
        vec![1, 2, 4],
        vec![1, 3, 7],
        vec![1, 5, 6],
        vec![2, 3, 5],
        vec![2, 6, 7],
        vec![3, 4, 6],
        vec![4, 5, 7],
    ];
    validate_fr(IncidenceStructure::new((1..=7).collect(), blocks).unwrap()).unwrap()
}
