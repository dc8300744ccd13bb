//! Independent brute-force oracles against the optimised routines.

use frcode::designs::{maximal_arc_search, steiner_triple_system};
use frcode::distance::min_distance;
use frcode::filesize::{file_size_from_dual, supported_file_size};
use frcode::graphs::{
    circulant_graph, complete_graph, cycle_graph, girth, graph_to_fr, petersen_graph, projective_plane_incidence_graph,
    turan_graph, Girth, Graph,
};
use frcode::{Execution, FrCode, SearchOptions};
use itertools::Itertools;

fn block_masks(c: &FrCode) -> Vec<u128> {
    assert!(c.theta() <= 128);
    c.block_indices().iter().map(|b| b.iter().fold(0u128, |m, &p| m | 1 << p)).collect()
}

/// `M_k` by enumerating every k-subset.
fn brute_mk(c: &FrCode, k: usize) -> usize {
    let masks = block_masks(c);
    masks
        .iter()
        .combinations(k)
        .map(|s| s.into_iter().fold(0u128, |m, b| m | b).count_ones() as usize)
        .min()
        .unwrap()
}

/// Fewest failed nodes leaving fewer than `m` distinct packets, over all subsets.
fn brute_dmin(c: &FrCode, m: usize) -> usize {
    let n = c.n();
    assert!(n <= 20);
    let masks = block_masks(c);
    let mut union = vec![0u128; 1 << n];
    let mut best = usize::MAX;
    for s in 1usize..1 << n {
        let low = s.trailing_zeros() as usize;
        union[s] = union[s & (s - 1)] | masks[low];
    }
    for survivors in 0usize..1 << n {
        if (union[survivors].count_ones() as usize) < m {
            best = best.min(n - survivors.count_ones() as usize);
        }
    }
    best
}

/// Shortest cycle by enumerating simple paths from each start vertex.
fn brute_girth(g: &Graph) -> Option<usize> {
    let adj = g.adjacency();
    let n = g.vertex_count();
    let mut best: Option<usize> = None;
    fn walk(adj: &[Vec<usize>], start: usize, v: usize, len: usize, seen: &mut Vec<bool>, best: &mut Option<usize>) {
        for &w in &adj[v] {
            if w == start && len >= 3 {
                *best = Some(best.map_or(len, |b| b.min(len)));
            } else if w > start && !seen[w] && best.is_none_or(|b| len + 1 < b) {
                seen[w] = true;
                walk(adj, start, w, len + 1, seen, best);
                seen[w] = false;
            }
        }
    }
    for start in 0..n {
        let mut seen = vec![false; n];
        seen[start] = true;
        walk(&adj, start, start, 1, &mut seen, &mut best);
    }
    best
}

fn small_graphs() -> Vec<Graph> {
    let mut gs = vec![
        petersen_graph(),
        turan_graph(8, 2).unwrap(),
        turan_graph(6, 3).unwrap(),
        turan_graph(9, 3).unwrap(),
        complete_graph(5).unwrap(),
        circulant_graph(12, &[1, 5]).unwrap(),
        circulant_graph(10, &[1, 3]).unwrap(),
        circulant_graph(11, &[1, 2, 4]).unwrap(),
        circulant_graph(12, &[1, 4]).unwrap(),
    ];
    gs.extend((3..=12).map(|n| cycle_graph(n).unwrap()));
    gs
}

#[test]
fn girth_matches_cycle_enumeration() {
    let mut gs = small_graphs();
    gs.push(Graph::new(6, [(0, 1), (1, 2), (3, 4)]).unwrap());
    gs.push(projective_plane_incidence_graph(2).unwrap());
    for g in &gs {
        let expect = brute_girth(g).map_or(Girth::Acyclic, Girth::Finite);
        assert_eq!(girth(g), expect, "{g:?}");
    }
}

#[test]
fn search_matches_enumeration() {
    let mut codes: Vec<FrCode> = small_graphs().iter().map(|g| graph_to_fr(g).unwrap()).collect();
    codes.push(frcode::incidence::fano_example());
    codes.push(steiner_triple_system(9).unwrap());
    codes.push(frcode::dual(&graph_to_fr(&petersen_graph()).unwrap()));
    for c in &codes {
        for k in 1..=c.n().min(14) {
            let expect = brute_mk(c, k);
            for opts in [SearchOptions::sequential(), SearchOptions::default()] {
                assert_eq!(supported_file_size(c, k, opts).unwrap(), expect, "{} k={k}", c.params());
            }
        }
    }
}

#[test]
fn dual_route_matches_direct() {
    for g in small_graphs() {
        let c = graph_to_fr(&g).unwrap();
        // the dual profile is refused up front beyond C(theta, theta/2) > budget
        if frcode::binomial(c.theta(), c.theta() / 2) > u128::from(frcode::search::DEFAULT_BUDGET) {
            continue;
        }
        for k in 1..=c.n() {
            let opts = SearchOptions::default();
            assert_eq!(
                file_size_from_dual(&c, k, opts).unwrap(),
                supported_file_size(&c, k, opts).unwrap(),
                "{} k={k}",
                c.params()
            );
        }
    }
}

#[test]
fn min_distance_matches_definition() {
    let mut codes: Vec<FrCode> = small_graphs()
        .iter()
        .map(|g| graph_to_fr(g).unwrap())
        .filter(|c| c.n() <= 16)
        .collect();
    codes.push(frcode::incidence::fano_example());
    codes.push(steiner_triple_system(9).unwrap());
    codes.push(frcode::dual(&graph_to_fr(&petersen_graph()).unwrap()));
    codes.push(frcode::dual(&graph_to_fr(&cycle_graph(9).unwrap()).unwrap()));
    for c in &codes {
        for m in 1..=c.theta() {
            assert_eq!(
                min_distance(c, m, SearchOptions::default()).unwrap(),
                brute_dmin(c, m),
                "{} M={m}",
                c.params()
            );
        }
    }
}

/// Least arc of the given size, by plain lexicographic enumeration.
fn brute_arc(c: &FrCode, size: usize) -> Option<Vec<u64>> {
    let labels = c.structure().points();
    let blocks = c.block_indices();
    (0..c.theta()).combinations(size).find_map(|pts| {
        let ok = blocks.iter().all(|b| {
            let hit = b.iter().filter(|p| pts.contains(p)).count();
            hit == 0 || hit == 2
        });
        ok.then(|| pts.iter().map(|&p| labels[p]).collect())
    })
}

#[test]
fn arc_search_matches_enumeration() {
    let mut codes = vec![frcode::incidence::fano_example()];
    codes.extend([7, 9, 13].map(|t| steiner_triple_system(t).unwrap()));
    for c in &codes {
        for size in [(c.theta() + 1) / 2, (c.theta() + 1) / 2 + 1] {
            let expect = brute_arc(c, size);
            for ex in [Execution::Sequential, Execution::Parallel] {
                assert_eq!(maximal_arc_search(c, size, ex).unwrap(), expect, "theta={} size={size}", c.theta());
            }
        }
    }
}

#[test]
fn sts15_arc_search_agrees_between_modes() {
    let c = steiner_triple_system(15).unwrap();
    let seq = maximal_arc_search(&c, 8, Execution::Sequential).unwrap();
    let par = maximal_arc_search(&c, 8, Execution::Parallel).unwrap();
    assert_eq!(seq, par);
    if let Some(arc) = seq {
        // every block meets the arc in 0 or 2 points
        let pos: Vec<usize> = arc.iter().map(|l| c.structure().points().iter().position(|p| p == l).unwrap()).collect();
        for b in c.block_indices() {
            let hit = b.iter().filter(|p| pos.contains(p)).count();
            assert!(hit == 0 || hit == 2);
        }
    }
}
