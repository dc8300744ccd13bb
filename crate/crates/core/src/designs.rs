//! Combinatorial designs: Steiner triple systems, affine resolvable designs
//! over prime fields, nets from mutually orthogonal Latin squares, maximal arc
//! search and resolvability search.

use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::bits::BitRow;
use crate::error::{FrError, Result};
use crate::graphs::projective_points;
use crate::incidence::FrCode;
use crate::search::Execution;

/// A code whose blocks split into parallel classes, each partitioning the points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolvableDesign {
    pub code: FrCode,
    /// Block indices per class, ascending within each class.
    pub parallel_classes: Vec<Vec<usize>>,
}

/// Steiner triple system `S(2, 3, theta)` on points `0..theta`.
///
/// Bose construction for `theta = 3 mod 6`, Skolem for `theta = 1 mod 6`.
pub fn steiner_triple_system(theta: u64) -> Result<FrCode> {
    if theta < 7 || !matches!(theta % 6, 1 | 3) {
        return Err(FrError::InadmissibleOrder(theta));
    }
    let blocks = if theta % 6 == 3 { bose_triples(theta as usize) } else { skolem_triples(theta as usize) };
    FrCode::from_blocks(theta as usize, blocks)
}

fn bose_triples(theta: usize) -> Vec<Vec<u64>> {
    let n = theta / 3;
    // idempotent commutative quasigroup on Z_n, n odd: x o y = (x + y)(n + 1)/2
    let op = |x: usize, y: usize| (x + y) * (n + 1) / 2 % n;
    let pt = |x: usize, i: usize| (x + n * (i % 3)) as u64;
    let mut blocks = Vec::with_capacity(theta * (theta - 1) / 6);
    for x in 0..n {
        blocks.push(vec![pt(x, 0), pt(x, 1), pt(x, 2)]);
    }
    for x in 0..n {
        for y in x + 1..n {
            for i in 0..3 {
                blocks.push(vec![pt(x, i), pt(y, i), pt(op(x, y), i + 1)]);
            }
        }
    }
    blocks
}

fn skolem_triples(theta: usize) -> Vec<Vec<u64>> {
    let t = (theta - 1) / 6;
    let n = 2 * t;
    // half-idempotent commutative quasigroup on Z_2t: relabel the sum s as
    // s/2 when even and t + (s-1)/2 when odd
    let op = |x: usize, y: usize| {
        let s = (x + y) % n;
        if s % 2 == 0 {
            s / 2
        } else {
            t + (s - 1) / 2
        }
    };
    let pt = |x: usize, i: usize| (x + n * (i % 3)) as u64;
    let inf = (3 * n) as u64;
    let mut blocks = Vec::with_capacity(theta * (theta - 1) / 6);
    for x in 0..t {
        blocks.push(vec![pt(x, 0), pt(x, 1), pt(x, 2)]);
        for i in 0..3 {
            blocks.push(vec![inf, pt(x + t, i), pt(x, i + 1)]);
        }
    }
    for x in 0..n {
        for y in x + 1..n {
            for i in 0..3 {
                blocks.push(vec![pt(x, i), pt(y, i), pt(op(x, y), i + 1)]);
            }
        }
    }
    blocks
}

/// First point pair (by position) not covered exactly once, if any.
fn steiner_violation(c: &FrCode) -> Option<(usize, usize)> {
    let theta = c.theta();
    let mut count = vec![0u32; theta * theta];
    for block in c.block_indices() {
        for (i, &p) in block.iter().enumerate() {
            for &q in &block[i + 1..] {
                count[p.min(q) * theta + p.max(q)] += 1;
            }
        }
    }
    (0..theta).flat_map(|p| (p + 1..theta).map(move |q| (p, q))).find(|&(p, q)| count[p * theta + q] != 1)
}

/// True iff every unordered pair of points lies in exactly one block.
pub fn is_steiner_system(c: &FrCode) -> bool {
    steiner_violation(c).is_none()
}

struct ArcSearch<'a> {
    point_blocks: &'a [Vec<usize>],
    /// Largest point position in each block.
    block_last: Vec<usize>,
    theta: usize,
    size: usize,
}

impl ArcSearch<'_> {
    fn extend(&self, i: usize, counts: &mut [u8], chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == self.size {
            return counts.iter().all(|&c| c != 1);
        }
        if self.theta - i < self.size - chosen.len() {
            return false;
        }
        let blocks = &self.point_blocks[i];
        if blocks.iter().all(|&b| counts[b] < 2) {
            blocks.iter().for_each(|&b| counts[b] += 1);
            chosen.push(i);
            if self.extend(i + 1, counts, chosen) {
                return true;
            }
            chosen.pop();
            blocks.iter().for_each(|&b| counts[b] -= 1);
        }
        // skipping i strands any block whose single chosen point has no later partner
        if blocks.iter().any(|&b| counts[b] == 1 && self.block_last[b] == i) {
            return false;
        }
        self.extend(i + 1, counts, chosen)
    }

    /// Lexicographically least arc whose smallest point is `first`.
    fn rooted(&self, first: usize, n_blocks: usize) -> Option<Vec<usize>> {
        let mut counts = vec![0u8; n_blocks];
        self.point_blocks[first].iter().for_each(|&b| counts[b] += 1);
        let mut chosen = vec![first];
        self.extend(first + 1, &mut counts, &mut chosen).then_some(chosen)
    }
}

/// Lexicographically least point set of the given size meeting every block
/// in zero or two points, or `None`.
pub fn maximal_arc_search(c: &FrCode, size: usize, execution: Execution) -> Result<Option<Vec<u64>>> {
    if let Some((p, q)) = steiner_violation(c) {
        let pts = c.structure().points();
        return Err(FrError::NotSteiner(pts[p], pts[q]));
    }
    if size > c.theta() {
        return Err(FrError::BadParameters(format!("arc size {size} exceeds {} points", c.theta())));
    }
    if size == 0 {
        return Ok(Some(Vec::new()));
    }
    let point_blocks = c.point_blocks();
    let block_last = c.block_indices().iter().map(|b| *b.iter().max().unwrap()).collect();
    let search = ArcSearch { point_blocks: &point_blocks, block_last, theta: c.theta(), size };
    let n = c.n();
    let found = match execution {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..c.theta()).into_par_iter().find_map_first(|p| search.rooted(p, n))
        }
        _ => (0..c.theta()).find_map(|p| search.rooted(p, n)),
    };
    let pts = c.structure().points();
    Ok(found.map(|arc| arc.into_iter().map(|i| pts[i]).collect()))
}

/// Projective directions with the unit vectors first, then the rest in
/// lexicographic order.
fn affine_directions(q: u64, m: u32) -> Vec<Vec<u64>> {
    let reps = projective_points(q, m as usize);
    let is_unit = |v: &Vec<u64>| v.iter().filter(|&&c| c != 0).count() == 1;
    let mut units: Vec<Vec<u64>> = reps.iter().filter(|v| is_unit(v)).cloned().collect();
    // e_1, e_2, ..., e_m
    units.reverse();
    units.extend(reps.into_iter().filter(|v| !is_unit(v)));
    units
}

/// `(q rho, q^(m-1), rho)` code from `rho` parallel classes of hyperplanes of `AG(m, q)`.
///
/// Points are the vectors of `Z_q^m`, labeled by their base-`q` value with the
/// first coordinate most significant. Class `s` consists of the `q` hyperplanes
/// `{x : a_s . x = c}`.
pub fn affine_fr_code(q: u64, m: u32, rho: usize) -> Result<ResolvableDesign> {
    if !is_prime(q) {
        return Err(FrError::NotPrime(q));
    }
    if m < 2 {
        return Err(FrError::BadParameters(format!("dimension m = {m} must be at least 2")));
    }
    let directions = affine_directions(q, m);
    if rho == 0 || rho > directions.len() {
        return Err(FrError::RhoOutOfRange { rho, max: directions.len() });
    }
    let qs = q as usize;
    let total = qs.pow(m);
    let vectors: Vec<Vec<u64>> = (0..total)
        .map(|mut x| {
            let mut v = vec![0u64; m as usize];
            for slot in v.iter_mut().rev() {
                *slot = (x % qs) as u64;
                x /= qs;
            }
            v
        })
        .collect();
    let mut blocks = Vec::with_capacity(qs * rho);
    let mut classes = Vec::with_capacity(rho);
    for a in &directions[..rho] {
        let mut class_blocks = vec![Vec::new(); qs];
        for (label, x) in vectors.iter().enumerate() {
            let dot: u64 = a.iter().zip(x).map(|(u, v)| u * v).sum();
            class_blocks[(dot % q) as usize].push(label as u64);
        }
        classes.push((blocks.len()..blocks.len() + qs).collect());
        blocks.extend(class_blocks);
    }
    let code = FrCode::from_blocks(total, blocks)?;
    Ok(ResolvableDesign { code, parallel_classes: classes })
}

/// Latin square with symbols `0..order` stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatinSquare {
    order: usize,
    cells: Vec<usize>,
}

impl LatinSquare {
    /// From rows of symbols in `0..order`.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(FrError::NotLatin("empty square".into()));
        }
        let mut cells = Vec::with_capacity(order * order);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != order {
                return Err(FrError::NotLatin(format!("row {i} has {} cells, expected {order}", row.len())));
            }
            cells.extend(row);
        }
        if let Some(&s) = cells.iter().find(|&&s| s >= order) {
            return Err(FrError::NotLatin(format!("symbol {s} outside 0..{order}")));
        }
        let sq = LatinSquare { order, cells };
        for i in 0..order {
            let mut row_seen = vec![false; order];
            let mut col_seen = vec![false; order];
            for j in 0..order {
                let (r, c) = (sq.get(i, j), sq.get(j, i));
                if std::mem::replace(&mut row_seen[r], true) {
                    return Err(FrError::NotLatin(format!("symbol {r} repeats in row {i}")));
                }
                if std::mem::replace(&mut col_seen[c], true) {
                    return Err(FrError::NotLatin(format!("symbol {c} repeats in column {i}")));
                }
            }
        }
        Ok(sq)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.cells[i * self.order + j]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.cells.chunks(self.order).map(<[usize]>::to_vec).collect()
    }
}

/// True iff the `N^2` ordered symbol pairs are pairwise distinct.
pub fn are_orthogonal(a: &LatinSquare, b: &LatinSquare) -> Result<bool> {
    if a.order != b.order {
        return Err(FrError::OrderMismatch(a.order, b.order));
    }
    let n = a.order;
    let mut seen = vec![false; n * n];
    Ok(a.cells.iter().zip(&b.cells).all(|(&x, &y)| !std::mem::replace(&mut seen[x * n + y], true)))
}

/// `L_a(i, j) = a i + j mod p` for `a = 1..p-1`.
pub fn mols_prime(p: u64) -> Result<Vec<LatinSquare>> {
    if !is_prime(p) {
        return Err(FrError::NotPrime(p));
    }
    let p = p as usize;
    (1..p)
        .map(|a| LatinSquare::new((0..p).map(|i| (0..p).map(|j| (a * i + j) % p).collect()).collect()))
        .collect()
}

/// `(rho N, N, rho)` net code: points are the `N^2` cells (`i N + j`), and each
/// of the first `rho` squares contributes one class of `N` symbol blocks.
pub fn mols_fr_code(squares: &[LatinSquare], rho: usize) -> Result<ResolvableDesign> {
    if rho == 0 || rho > squares.len() {
        return Err(FrError::RhoOutOfRange { rho, max: squares.len() });
    }
    let used = &squares[..rho];
    let n = used[0].order;
    for (i, a) in used.iter().enumerate() {
        for (j, b) in used.iter().enumerate().skip(i + 1) {
            if !are_orthogonal(a, b)? {
                return Err(FrError::NotOrthogonal(i, j));
            }
        }
    }
    let mut blocks = Vec::with_capacity(rho * n);
    let mut classes = Vec::with_capacity(rho);
    for sq in used {
        let mut class_blocks = vec![Vec::with_capacity(n); n];
        for (cell, &s) in sq.cells.iter().enumerate() {
            class_blocks[s].push(cell as u64);
        }
        classes.push((blocks.len()..blocks.len() + n).collect());
        blocks.extend(class_blocks);
    }
    let code = FrCode::from_blocks(n * n, blocks)?;
    Ok(ResolvableDesign { code, parallel_classes: classes })
}

/// JSON form `{"order":N,"squares":[[[...],...],...]}`; symbols are written
/// `1..=N` and read as either `0..N` or `1..=N`.
#[derive(Serialize, Deserialize)]
struct RawSquares {
    order: usize,
    squares: Vec<Vec<Vec<usize>>>,
}

pub fn squares_to_json(squares: &[LatinSquare]) -> String {
    let raw = RawSquares {
        order: squares.first().map_or(0, |s| s.order),
        squares: squares
            .iter()
            .map(|s| s.rows().into_iter().map(|r| r.into_iter().map(|x| x + 1).collect()).collect())
            .collect(),
    };
    serde_json::to_string(&raw).expect("squares serialize")
}

pub fn squares_from_json(text: &str) -> Result<Vec<LatinSquare>> {
    let raw: RawSquares = serde_json::from_str(text)?;
    raw.squares
        .into_iter()
        .map(|rows| {
            if rows.len() != raw.order {
                return Err(FrError::OrderMismatch(raw.order, rows.len()));
            }
            let one_based = rows.iter().flatten().all(|&x| x >= 1);
            let shift = usize::from(one_based);
            LatinSquare::new(rows.into_iter().map(|r| r.into_iter().map(|x| x - shift).collect()).collect())
        })
        .collect()
}

struct Resolver<'a> {
    rows: Vec<BitRow>,
    point_blocks: &'a [Vec<usize>],
    theta: usize,
    class_of: Vec<Option<usize>>,
    classes: Vec<Vec<usize>>,
}

impl Resolver<'_> {
    fn solve(&mut self) -> bool {
        let Some(first) = self.class_of.iter().position(Option::is_none) else {
            return true;
        };
        let id = self.classes.len();
        self.classes.push(vec![first]);
        self.class_of[first] = Some(id);
        let covered = self.rows[first].clone();
        if self.fill(id, covered) {
            return true;
        }
        self.class_of[first] = None;
        self.classes.pop();
        false
    }

    fn fill(&mut self, id: usize, covered: BitRow) -> bool {
        let Some(p) = (0..self.theta).find(|&p| !covered.contains(p)) else {
            return self.solve();
        };
        let point_blocks = self.point_blocks;
        for &b in &point_blocks[p] {
            if self.class_of[b].is_some() || self.rows[b].intersects(&covered) {
                continue;
            }
            self.class_of[b] = Some(id);
            self.classes[id].push(b);
            let mut next = covered.clone();
            next.union_with(&self.rows[b]);
            if self.fill(id, next) {
                return true;
            }
            self.classes[id].pop();
            self.class_of[b] = None;
        }
        false
    }
}

/// A partition of the blocks into parallel classes, found by backtracking
/// exact cover, or `None` (also when `alpha` does not divide `theta`).
pub fn is_resolvable(c: &FrCode) -> Option<ResolvableDesign> {
    if c.theta() % c.alpha() != 0 {
        return None;
    }
    let point_blocks = c.point_blocks();
    let mut r = Resolver {
        rows: c.block_indices().iter().map(|b| BitRow::from_indices(c.theta(), b)).collect(),
        point_blocks: &point_blocks,
        theta: c.theta(),
        class_of: vec![None; c.n()],
        classes: Vec::new(),
    };
    if !r.solve() {
        return None;
    }
    let mut classes = r.classes;
    classes.iter_mut().for_each(|cl| cl.sort_unstable());
    Some(ResolvableDesign { code: c.clone(), parallel_classes: classes })
}
