//! Supported file size `M_k`: the fewest distinct packets any `k` nodes hold.
//!
//! The exhaustive search is the ground truth. The recursive bounds and the
//! closed-form laws for structured families live here too, but those are
//! claims to check against the search, never substitutes for it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::arith::{binomial, ceil_div};
use crate::bits::BitRow;
use crate::error::{FrError, Result};
use crate::incidence::{dual, CodeParams, FrCode};
use crate::search::{min_union, SearchOptions};

/// `M_1..M_n` and `N_k = theta - M_k` for one code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FileSizeProfile {
    pub params: CodeParams,
    pub m_values: Vec<usize>,
    pub n_values: Vec<usize>,
}

impl FileSizeProfile {
    /// `M_k` for `1 <= k <= n`.
    pub fn m(&self, k: usize) -> usize {
        self.m_values[k - 1]
    }

    /// `N_k` for `1 <= k <= n`.
    pub fn complement(&self, k: usize) -> usize {
        self.n_values[k - 1]
    }
}

fn check_k(k: usize, n: usize) -> Result<()> {
    if k == 0 || k > n {
        Err(FrError::KOutOfRange { k, n })
    } else {
        Ok(())
    }
}

fn block_rows(c: &FrCode) -> Vec<BitRow> {
    c.block_indices().iter().map(|b| BitRow::from_indices(c.theta(), b)).collect()
}

/// Exact `M_k(c)` by branch-and-bound over all k-subsets of blocks.
pub fn supported_file_size(c: &FrCode, k: usize, opts: SearchOptions) -> Result<usize> {
    check_k(k, c.n())?;
    // k blocks can only miss a point if all rho of its blocks are left out
    if k + c.rho() > c.n() {
        return Ok(c.theta());
    }
    min_union(&block_rows(c), c.theta(), k, opts)
}

/// All `M_k`, `N_k` for `k = 1..=n`.
///
/// Refuses up front when `C(n, n/2)` exceeds the budget.
pub fn file_size_profile(c: &FrCode, opts: SearchOptions) -> Result<FileSizeProfile> {
    let n = c.n();
    if binomial(n, n / 2) > u128::from(opts.budget) {
        return Err(FrError::SizeLimitExceeded(opts.budget));
    }
    let rows = block_rows(c);
    let m_values = (1..=n)
        .map(|k| {
            if k + c.rho() > n {
                Ok(c.theta())
            } else {
                min_union(&rows, c.theta(), k, opts)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let n_values = m_values.iter().map(|m| c.theta() - m).collect();
    Ok(FileSizeProfile { params: c.params(), m_values, n_values })
}

/// `phi(1..=n)`: `phi(1) = alpha`, `phi(k+1) = phi(k) + alpha - ceil((rho phi(k) - k alpha) / (n - k))`.
pub fn phi_sequence(n: usize, alpha: usize, rho: usize) -> Vec<usize> {
    let (n_, a, r) = (n as i64, alpha as i64, rho as i64);
    let mut out = Vec::with_capacity(n);
    let mut phi = a;
    for k in 1..=n_ {
        out.push(phi as usize);
        if k < n_ {
            phi = phi + a - ceil_div(r * phi - k * a, n_ - k);
        }
    }
    out
}

pub fn phi_bound(n: usize, alpha: usize, rho: usize, k: usize) -> Result<usize> {
    check_k(k, n)?;
    Ok(phi_sequence(n, alpha, rho)[k - 1])
}

/// `psi(1..=theta)` with `theta = n alpha / rho`:
/// `psi(1) = rho`, `psi(l+1) = psi(l) + rho - ceil((alpha psi(l) - l rho) / (theta - l))`.
pub fn psi_sequence(n: usize, alpha: usize, rho: usize) -> Result<Vec<usize>> {
    let theta = CodeParams::new(n, alpha, rho)?.theta as i64;
    let (a, r) = (alpha as i64, rho as i64);
    let mut out = Vec::with_capacity(theta as usize);
    let mut psi = r;
    for l in 1..=theta {
        out.push(psi as usize);
        if l < theta {
            psi = psi + r - ceil_div(a * psi - l * r, theta - l);
        }
    }
    Ok(out)
}

pub fn psi_bound(n: usize, alpha: usize, rho: usize, ell: usize) -> Result<usize> {
    let psi = psi_sequence(n, alpha, rho)?;
    if ell == 0 || ell > psi.len() {
        return Err(FrError::EllOutOfRange { ell, theta: psi.len() });
    }
    Ok(psi[ell - 1])
}

/// `sum over l = 1..=theta of [k > n - psi(l)]`.
pub fn dual_indicator_bound(n: usize, alpha: usize, rho: usize, k: usize) -> Result<usize> {
    check_k(k, n)?;
    Ok(psi_sequence(n, alpha, rho)?.into_iter().filter(|&p| k + p > n).count())
}

/// `M_k(c)` read off the dual's complementary profile.
///
/// `dual_complements[j-1] = N_j(c^t)` for `j = 1..=theta`; `n` is the block count of `c`.
pub fn file_size_from_dual_complements(n: usize, dual_complements: &[usize], k: usize) -> Result<usize> {
    check_k(k, n)?;
    let theta = dual_complements.len();
    // N_0 := n covers the k > N_1 case, where nothing can be avoided
    let j = (1..=theta).rev().find(|&j| dual_complements[j - 1] >= k).unwrap_or(0);
    Ok(theta - j)
}

/// `M_k(c)` computed only from the exhaustively searched dual profile.
pub fn file_size_from_dual(c: &FrCode, k: usize, opts: SearchOptions) -> Result<usize> {
    check_k(k, c.n())?;
    let profile = file_size_profile(&dual(c), opts)?;
    file_size_from_dual_complements(c.n(), &profile.n_values, k)
}

/// Regular graph with girth `g`: `k alpha - k + 1` for `k <= g - 1`,
/// `k alpha - k` for `g <= k <= g + ceil(g/2) - 2`, otherwise no claim.
pub fn regular_graph_file_size(alpha: usize, g: usize, k: usize) -> Option<usize> {
    if k == 0 {
        None
    } else if k < g {
        Some(k * alpha - k + 1)
    } else if k + 2 <= g + g.div_ceil(2) {
        Some(k * alpha - k)
    } else {
        None
    }
}

/// Turán `(n, r)` graph code: `k (r-1) n / r - floor((r-1) k^2 / (2 r))` for `k <= (r-1) n / r`.
pub fn turan_file_size(n: usize, r: usize, k: usize) -> Option<usize> {
    let alpha = (r - 1) * n / r;
    (k >= 1 && k <= alpha && n % r == 0).then(|| k * alpha - ((r - 1) * k * k) / (2 * r))
}

/// `k rho - C(k, 2)`: dual of a Steiner system with a `rho + 1` arc (`k <= rho + 1`),
/// and the MOLS net code with `rho = N` (`k <= ` class count).
pub fn pairwise_file_size(rho: usize, k: usize) -> usize {
    k * rho - k * (k - 1) / 2
}

/// The affine-geometry side condition on `rho`: `rho > m` when `q > m`, `rho <= m` when `q <= m`.
pub fn affine_side_condition(q: u64, m: u32, rho: usize) -> bool {
    if q > u64::from(m) {
        rho > m as usize
    } else {
        rho <= m as usize
    }
}

/// `q^m [1 - (1 - 1/q)^k]`, evaluated exactly; `None` if not integral.
pub fn affine_formula(q: u64, m: u32, k: u32) -> Option<u64> {
    let qb = BigRational::from_integer(BigInt::from(q));
    let base = BigRational::one() - BigRational::one() / qb.clone();
    let mut pow = BigRational::one();
    for _ in 0..k {
        pow *= base.clone();
    }
    let mut qm = BigRational::one();
    for _ in 0..m {
        qm *= qb.clone();
    }
    let value = qm * (BigRational::one() - pow);
    value.is_integer().then(|| value.to_integer().to_u64()).flatten()
}

/// Closed-form file size of the affine code, under the side condition on
/// `rho` and `1 <= k <= min(m, rho)`. With fewer than `k` classes two of the
/// `k` blocks are parallel and the formula undercounts.
pub fn affine_file_size(q: u64, m: u32, rho: usize, k: usize) -> Result<usize> {
    if !affine_side_condition(q, m, rho) {
        return Err(FrError::SideConditionViolated { q, m, rho });
    }
    let kmax = rho.min(m as usize);
    if k == 0 || k > kmax {
        return Err(FrError::KOutOfRange { k, n: kmax });
    }
    let v = affine_formula(q, m, k as u32).expect("integral for k <= m");
    Ok(v as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::fano_example;

    #[test]
    fn fano_profile() {
        let p = file_size_profile(&fano_example(), SearchOptions::default()).unwrap();
        assert_eq!(p.m_values, vec![3, 5, 6, 6, 7, 7, 7]);
        assert_eq!(p.n_values, vec![4, 2, 1, 1, 0, 0, 0]);
        assert_eq!(phi_sequence(7, 3, 3), p.m_values);
    }

    #[test]
    fn single_block_profile() {
        let c = FrCode::from_blocks(2, vec![vec![0, 1]]).unwrap();
        let p = file_size_profile(&c, SearchOptions::default()).unwrap();
        assert_eq!(p.m_values, vec![2]);
    }

    #[test]
    fn recursions_832() {
        assert_eq!(phi_sequence(8, 3, 2), vec![3, 5, 7, 9, 10, 11, 12, 12]);
        assert_eq!(psi_sequence(8, 3, 2).unwrap(), vec![2, 3, 4, 5, 6, 6, 7, 7, 7, 8, 8, 8]);
        assert_eq!(phi_bound(8, 3, 2, 1).unwrap(), 3);
        assert_eq!(psi_bound(8, 3, 2, 1).unwrap(), 2);
        assert!(matches!(phi_bound(8, 3, 2, 9), Err(FrError::KOutOfRange { k: 9, n: 8 })));
        assert!(matches!(psi_bound(8, 3, 2, 13), Err(FrError::EllOutOfRange { ell: 13, theta: 12 })));
    }

    #[test]
    fn indicator_bound_832() {
        // psi(l) > 5 for l = 5..=12
        assert_eq!(dual_indicator_bound(8, 3, 2, 3).unwrap(), 8);
        assert_eq!(dual_indicator_bound(8, 3, 2, 8).unwrap(), 12);
    }

    #[test]
    fn k_range_errors() {
        let c = fano_example();
        let opts = SearchOptions::default();
        assert!(matches!(supported_file_size(&c, 0, opts), Err(FrError::KOutOfRange { .. })));
        assert!(matches!(supported_file_size(&c, 8, opts), Err(FrError::KOutOfRange { .. })));
        assert!(matches!(file_size_from_dual(&c, 8, opts), Err(FrError::KOutOfRange { .. })));
    }

    #[test]
    fn dual_route_on_fano() {
        let c = fano_example();
        let got: Vec<usize> =
            (1..=7).map(|k| file_size_from_dual(&c, k, SearchOptions::default()).unwrap()).collect();
        assert_eq!(got, vec![3, 5, 6, 6, 7, 7, 7]);
    }

    #[test]
    fn dual_route_bottom_regime() {
        // N_theta = 0 < k <= N_{theta-1}: the "M_k = 1" row
        assert_eq!(file_size_from_dual_complements(3, &[2, 1, 0], 1).unwrap(), 1);
        assert_eq!(file_size_from_dual_complements(3, &[1, 0, 0], 1).unwrap(), 2);
        assert_eq!(file_size_from_dual_complements(3, &[2, 1, 0], 3).unwrap(), 3);
    }

    #[test]
    fn closed_forms() {
        assert_eq!((1..=6).map(|k| regular_graph_file_size(3, 5, k).unwrap()).collect::<Vec<_>>(), vec![3, 5, 7, 9, 10, 12]);
        assert_eq!(regular_graph_file_size(3, 5, 7), None);
        assert_eq!((1..=4).map(|k| turan_file_size(8, 2, k).unwrap()).collect::<Vec<_>>(), vec![4, 7, 10, 12]);
        assert_eq!(turan_file_size(8, 2, 5), None);
        assert_eq!(affine_formula(3, 2, 1), Some(3));
        assert_eq!(affine_formula(3, 2, 2), Some(5));
        assert_eq!(affine_formula(3, 2, 3), None);
        assert_eq!(affine_file_size(3, 2, 4, 2).unwrap(), 5);
        assert!(matches!(affine_file_size(2, 2, 3, 1), Err(FrError::SideConditionViolated { .. })));
        assert_eq!(pairwise_file_size(7, 4), 22);
    }
}
