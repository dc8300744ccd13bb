//! Repair locality, exact minimum distance, the minimum-distance upper bounds
//! and the attainment checks for the structured code families.
//!
//! The exact minimum distance for a stored file of `M` packets is the number
//! of nodes that must fail before fewer than `M` distinct packets survive. It
//! equals `M_{theta - M + 1}` of the dual code: losing all copies of
//! `theta - M + 1` packets takes down every node that holds one of them.

use num_bigint::BigInt;
use serde::Serialize;

use crate::arith::{ceil_div, floor_div};
use crate::error::{FrError, Result};
use crate::filesize::{phi_sequence, psi_sequence, supported_file_size};
use crate::incidence::{dual, CodeParams, FrCode};
use crate::search::SearchOptions;

/// Closed integer interval of reconstruction degrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum KRange {
    Empty,
    Closed { lo: usize, hi: usize },
}

impl KRange {
    pub fn new(lo: usize, hi: usize) -> Self {
        if lo > hi {
            KRange::Empty
        } else {
            KRange::Closed { lo, hi }
        }
    }

    pub fn contains(self, k: usize) -> bool {
        matches!(self, KRange::Closed { lo, hi } if lo <= k && k <= hi)
    }

    pub fn is_empty(self) -> bool {
        self == KRange::Empty
    }
}

impl std::fmt::Display for KRange {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            KRange::Empty => f.write_str("[]"),
            KRange::Closed { lo, hi } => write!(f, "[{lo},{hi}]"),
        }
    }
}

fn cover_cost(target: u128, masks: &[u128], used: usize, best: &mut usize) {
    if target == 0 {
        *best = (*best).min(used);
        return;
    }
    if used + 1 >= *best {
        return;
    }
    let low = target & target.wrapping_neg();
    for &m in masks.iter().filter(|&&m| m & low != 0) {
        cover_cost(target & !m, masks, used + 1, best);
    }
}

/// Fewest other blocks whose union contains every point of `block`.
fn block_repair_cost(c: &FrCode, point_blocks: &[Vec<usize>], block: usize) -> usize {
    let pts = &c.block_indices()[block];
    let mut masks: Vec<u128> = Vec::new();
    for (bit, &p) in pts.iter().enumerate() {
        for &other in point_blocks[p].iter().filter(|&&b| b != block) {
            let mask: u128 = c.block_indices()[other]
                .iter()
                .filter_map(|q| pts.iter().position(|x| x == q))
                .fold(0, |acc, i| acc | 1 << i);
            debug_assert!(mask >> bit & 1 == 1);
            masks.push(mask);
        }
    }
    masks.sort_unstable();
    masks.dedup();
    // drop masks strictly contained in another
    let kept: Vec<u128> =
        masks.iter().copied().filter(|&m| !masks.iter().any(|&o| o != m && o & m == m)).collect();
    let full = if pts.len() == 128 { u128::MAX } else { (1u128 << pts.len()) - 1 };
    let mut best = pts.len() + 1;
    cover_cost(full, &kept, 0, &mut best);
    best
}

/// Worst case over nodes of the fewest surviving nodes needed to rebuild a
/// lost node by copying packets.
pub fn repair_locality(c: &FrCode) -> Result<usize> {
    if c.rho() < 2 {
        return Err(FrError::Unrepairable(c.structure().points()[0]));
    }
    if c.alpha() > 128 {
        return Err(FrError::BadParameters(format!("repair locality supports alpha <= 128, got {}", c.alpha())));
    }
    let point_blocks = c.point_blocks();
    Ok((0..c.n()).map(|b| block_repair_cost(c, &point_blocks, b)).max().unwrap_or(0))
}

fn check_file_size(m: usize, theta: usize) -> Result<()> {
    if m == 0 || m > theta {
        Err(FrError::FileTooLarge { m, theta })
    } else {
        Ok(())
    }
}

/// Exact minimum distance when storing `M` packets: `M_{theta-M+1}` of the dual.
pub fn min_distance(c: &FrCode, m: usize, opts: SearchOptions) -> Result<usize> {
    check_file_size(m, c.theta())?;
    supported_file_size(&dual(c), c.theta() - m + 1, opts)
}

/// `n - ceil(M / alpha) + 1`.
pub fn singleton_bound(n: usize, alpha: usize, m: usize) -> i64 {
    n as i64 - ceil_div(m as i64, alpha as i64) + 1
}

/// `n - ceil(M / alpha) - ceil(M / (d alpha)) + 2`.
pub fn locality_bound(n: usize, alpha: usize, d: usize, m: usize) -> i64 {
    let (m, a) = (m as i64, alpha as i64);
    n as i64 - ceil_div(m, a) - ceil_div(m, d as i64 * a) + 2
}

/// `min(psi(theta - M + 1), #{k : phi(k) > M - 1})`.
pub fn improved_bound(params: CodeParams, m: usize) -> Result<usize> {
    check_file_size(m, params.theta)?;
    let psi = psi_sequence(params.n, params.alpha, params.rho)?;
    let phi = phi_sequence(params.n, params.alpha, params.rho);
    let via_phi = phi.iter().filter(|&&p| p + 1 > m).count();
    Ok(psi[params.theta - m].min(via_phi))
}

/// Bound for codes whose nodes each sit in an `(n_local, alpha, rho_local)`
/// local code:
/// `n - ceil(n'(1 - 1/rho') floor((M-1) rho' / (n' alpha)) + M / alpha) + 1`.
pub fn local_structure_bound(n: usize, alpha: usize, n_local: usize, rho_local: usize, m: usize) -> Result<i64> {
    if n_local == 0 || n_local > n || rho_local == 0 || alpha == 0 || m == 0 {
        return Err(FrError::BadParameters(format!(
            "local structure needs 1 <= n' <= n and rho', alpha, M >= 1 (n={n}, n'={n_local}, rho'={rho_local})"
        )));
    }
    let (nl, rl, a, m) = (n_local as i64, rho_local as i64, alpha as i64, m as i64);
    let groups = floor_div((m - 1) * rl, nl * a);
    // n'(rho'-1)/rho' * groups + M/alpha over the common denominator rho' alpha
    let inner = ceil_div(nl * (rl - 1) * groups * a + m * rl, rl * a);
    Ok(n as i64 - inner + 1)
}

fn check_k(k: usize, n: usize) -> Result<()> {
    if k == 0 || k > n {
        Err(FrError::KOutOfRange { k, n })
    } else {
        Ok(())
    }
}

/// `k == ceil(M_k / alpha)` with exact `M_k`.
pub fn attains_singleton(c: &FrCode, k: usize, opts: SearchOptions) -> Result<bool> {
    check_k(k, c.n())?;
    let mk = supported_file_size(c, k, opts)?;
    Ok(k == mk.div_ceil(c.alpha()))
}

/// `k == ceil(M_k / alpha) + ceil(M_k / (d alpha)) - 1` with `d` the repair locality.
pub fn attains_locality_bound(c: &FrCode, k: usize, opts: SearchOptions) -> Result<bool> {
    check_k(k, c.n())?;
    let d = repair_locality(c)?;
    let mk = supported_file_size(c, k, opts)?;
    Ok(k + 1 == mk.div_ceil(c.alpha()) + mk.div_ceil(d * c.alpha()))
}

/// Graph code with degree `alpha` and girth `g`: `[1, min(alpha, g - 1)]`.
pub fn singleton_range_regular(alpha: usize, g: usize) -> KRange {
    KRange::new(1, alpha.min(g.saturating_sub(1)))
}

/// When `g < alpha`: `[g, min(alpha - 1, g + ceil(g/2) - 2)]`, else empty.
pub fn singleton_range_regular_beyond(alpha: usize, g: usize) -> KRange {
    if g >= alpha {
        return KRange::Empty;
    }
    KRange::new(g, (alpha - 1).min(g + g.div_ceil(2) - 2))
}

/// Turán `(n, r)` code: `[1, min(n (r-1) / r, max{k : k^2 < 2n})]`.
pub fn singleton_range_turan(n: usize, r: usize) -> Result<KRange> {
    if r == 0 || n % r != 0 {
        return Err(FrError::NonDivisible { n, r });
    }
    let alpha = n * (r - 1) / r;
    let kmax = (0..).take_while(|k| k * k < 2 * n).last().unwrap_or(0);
    Ok(KRange::new(1, alpha.min(kmax)))
}

/// Largest `k` with `C(k, 2) < x`, i.e. `ceil((sqrt(1 + 8x) - 1) / 2)`.
fn pair_limit(x: usize) -> usize {
    (1..).take_while(|k| k * (k - 1) / 2 < x).last().unwrap_or(0)
}

/// Dual of a Steiner system with a `rho + 1` arc: `[1, ceil((sqrt(1 + 8 rho) - 1) / 2)]`.
pub fn singleton_range_steiner(rho: usize) -> KRange {
    KRange::new(1, pair_limit(rho))
}

/// Largest `k` with `q (1 - 1/q)^k + k - q < 1`, by ascending scan in exact arithmetic.
pub fn affine_k0(q: u64) -> usize {
    assert!(q >= 2, "affine_k0 needs q >= 2");
    let qb = BigInt::from(q);
    // F(k) < 1  <=>  (q-1)^k < (q + 1 - k) q^(k-1)
    let holds = |k: u32| {
        let lhs = (qb.clone() - 1u32).pow(k);
        let rhs = (qb.clone() + 1u32 - k) * qb.pow(k - 1);
        lhs < rhs
    };
    (1u32..).take_while(|&k| holds(k)).last().unwrap_or(0) as usize
}

/// Affine code over `q` in dimension `m`: `[1, min(m, k0)]`.
pub fn singleton_range_affine(q: u64, m: u32) -> KRange {
    KRange::new(1, (m as usize).min(affine_k0(q)))
}

/// MOLS net code of order `p^m` with `rho` classes: `[1, min(rho, ceil((sqrt(1 + 8 p^m) - 1) / 2))]`.
pub fn singleton_range_mols(order: usize, rho: usize) -> KRange {
    KRange::new(1, rho.min(pair_limit(order)))
}

/// Which branch of a discriminant row fired.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DeltaBranch {
    /// Discriminant `<= 0`: only the lower bound on `alpha` applies.
    NonPositive,
    /// Discriminant `> 0`, `alpha` below the smaller root.
    BelowRoots,
    /// Discriminant `> 0`, `alpha` above the larger root.
    AboveRoots,
}

/// The requirement row satisfied by `(alpha, g, k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Table3Row {
    /// `k = a0 alpha <= g - 1` with `a0 <= alpha`.
    Multiple { a0: usize },
    /// `k = a1 alpha + b1 <= g - 1`, `a1 < b1`.
    BelowGirth { a1: usize, b1: usize, branch: DeltaBranch },
    /// `g <= k = a2 alpha + b2 <= g + ceil(g/2) - 2`, `a2 < b2`.
    FromGirth { a2: usize, b2: usize, branch: DeltaBranch },
}

/// Branch conditions shared by both remainder rows, as printed: with
/// `s = b - a` and threshold `t = num / s`, require `alpha > t` when
/// `delta <= 0`; otherwise `t < alpha <= (s - sqrt(delta)) / 2` or
/// `alpha >= max((s + sqrt(delta)) / 2, t + 1)`.
fn delta_branch(alpha: i64, s: i64, num: i64, delta: i64) -> Option<DeltaBranch> {
    let above_t = alpha * s > num;
    if delta <= 0 {
        return above_t.then_some(DeltaBranch::NonPositive);
    }
    // alpha <= (s - sqrt(delta)) / 2  <=>  s - 2 alpha >= 0 and (s - 2 alpha)^2 >= delta
    let lower = s - 2 * alpha;
    if above_t && lower >= 0 && lower * lower >= delta {
        return Some(DeltaBranch::BelowRoots);
    }
    let upper = 2 * alpha - s;
    let above_root = upper >= 0 && upper * upper >= delta;
    // alpha >= t + 1  <=>  alpha s >= num + s
    (above_root && alpha * s >= num + s).then_some(DeltaBranch::AboveRoots)
}

/// Requirement table for graph codes to meet the locality bound at `k > alpha`.
///
/// Returns the satisfied row, or `None` when `(alpha, g, k)` fails it.
pub fn table3_predicate(alpha: usize, g: usize, k: usize) -> Result<Option<Table3Row>> {
    let top = g + g.div_ceil(2) - 2;
    if alpha < 2 || k <= alpha || k > top {
        return Err(FrError::OutOfTheoremRange(format!("need alpha >= 2 and alpha < k <= {top}, got alpha={alpha}, k={k}")));
    }
    let (a, b) = (k / alpha, k % alpha);
    if b == 0 {
        return Ok((k < g && a <= alpha).then_some(Table3Row::Multiple { a0: a }));
    }
    if a >= b {
        return Ok(None);
    }
    let (al, ai, bi) = (alpha as i64, a as i64, b as i64);
    let s = bi - ai;
    Ok(if k < g {
        let delta = s * s - 4 * bi + 4;
        delta_branch(al, s, bi - 1, delta).map(|branch| Table3Row::BelowGirth { a1: a, b1: b, branch })
    } else {
        let delta = s * s - 4 * bi;
        delta_branch(al, s, bi, delta).map(|branch| Table3Row::FromGirth { a2: a, b2: b, branch })
    })
}

/// Which of the eight integrality conditions on the dual of a graph code fired.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DualCase {
    Lambda1,
    Lambda2,
    Lambda3,
    Lambda4,
    LambdaPrime1,
    LambdaPrime2,
    LambdaPrime3,
    LambdaPrime4,
}

/// File sizes at which the dual of an `alpha`-regular graph code on `n`
/// vertices with girth `g` meets the locality bound, with the case that fired.
/// Only positive integral `Lambda` qualify.
pub fn dual_graph_optimal_cases(n: usize, alpha: usize, g: usize) -> Result<Vec<(usize, DualCase)>> {
    let den = 8 * alpha as i64 - 14;
    if den <= 0 {
        return Err(FrError::DegenerateDenominator(alpha));
    }
    let (n, a, g) = (n as i64, alpha as i64, g as i64);
    let h = g + (g + 1) / 2;
    let candidates = [
        ((n + 2) * (a - 2), 0, 0, g - 2, DualCase::Lambda1),
        (n * (a - 2) + 2, 1, 1, g - 1, DualCase::Lambda2),
        ((n - 2) * (a - 2), 2, 2, g, DualCase::Lambda3),
        ((n - 4) * (a - 2), 3, 3, g + 1, DualCase::Lambda4),
        (n * (a - 2) + 2 * (a - 3), 0, g - 1, h - 3, DualCase::LambdaPrime1),
        (n * (a - 2), 1, g, h - 2, DualCase::LambdaPrime2),
        (n * (a - 2) - 2 * (a - 1), 2, g + 1, h - 1, DualCase::LambdaPrime3),
        // the attainment condition at M = 4L + 3 gives 2(2 alpha - 3) here
        (n * (a - 2) - 2 * (2 * a - 3), 3, g + 2, h, DualCase::LambdaPrime4),
    ];
    Ok(candidates
        .into_iter()
        .filter(|&(num, ..)| num > 0 && num % den == 0)
        .filter_map(|(num, offset, lo, hi, case)| {
            let lambda = num / den;
            let rest = n - 4 * lambda;
            (lo <= rest && rest <= hi).then_some(((4 * lambda + offset) as usize, case))
        })
        .collect())
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ReportOptions {
    pub search: SearchOptions,
    /// Skip the exact minimum distance.
    pub formula_only: bool,
    /// `(n', rho')` of the local structure, if the code has one.
    pub local: Option<(usize, usize)>,
}

/// All bounds for one stored file size, with the exact distance when affordable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub file_size: usize,
    pub d_min_exact: Option<usize>,
    pub bound_singleton: i64,
    /// Absent when the code is not repairable (`rho = 1`).
    pub bound_locality: Option<i64>,
    pub bound_improved: usize,
    pub bound_local_structure: Option<i64>,
    pub attains_singleton: Option<bool>,
    pub attains_locality: Option<bool>,
    pub attains_improved: Option<bool>,
}

/// Reports for several file sizes; repair locality is computed once.
pub fn bound_table(c: &FrCode, file_sizes: &[usize], options: ReportOptions) -> Result<Vec<BoundReport>> {
    for &m in file_sizes {
        check_file_size(m, c.theta())?;
    }
    let d = match repair_locality(c) {
        Ok(d) => Some(d),
        Err(FrError::Unrepairable(_)) => None,
        Err(e) => return Err(e),
    };
    let dual_code = dual(c);
    file_sizes
        .iter()
        .map(|&m| {
            let exact = if options.formula_only {
                None
            } else {
                match supported_file_size(&dual_code, c.theta() - m + 1, options.search) {
                    Ok(v) => Some(v),
                    Err(FrError::SizeLimitExceeded(_)) => None,
                    Err(e) => return Err(e),
                }
            };
            let p = c.params();
            let singleton = singleton_bound(p.n, p.alpha, m);
            let locality = d.map(|d| locality_bound(p.n, p.alpha, d, m));
            let improved = improved_bound(p, m)?;
            let local = options
                .local
                .map(|(nl, rl)| local_structure_bound(p.n, p.alpha, nl, rl, m))
                .transpose()?;
            let eq = |bound: i64| exact.map(|x| x as i64 == bound);
            Ok(BoundReport {
                file_size: m,
                d_min_exact: exact,
                bound_singleton: singleton,
                bound_locality: locality,
                bound_improved: improved,
                bound_local_structure: local,
                attains_singleton: eq(singleton),
                attains_locality: locality.and_then(eq),
                attains_improved: eq(improved as i64),
            })
        })
        .collect()
}

pub fn bound_report(c: &FrCode, m: usize, options: ReportOptions) -> Result<BoundReport> {
    Ok(bound_table(c, &[m], options)?.remove(0))
}
