//! Closed-form file-size laws and attainment predicates against exhaustive search.

use frcode::designs::{affine_fr_code, maximal_arc_search, mols_fr_code, mols_prime, steiner_triple_system};
use frcode::distance::{
    attains_locality_bound, attains_singleton, improved_bound, min_distance, repair_locality, singleton_range_affine,
    singleton_range_mols, singleton_range_regular, singleton_range_steiner, singleton_range_turan, table3_predicate,
    dual_graph_optimal_cases, locality_bound,
};
use frcode::filesize::{
    affine_file_size, pairwise_file_size, regular_graph_file_size, supported_file_size, turan_file_size,
};
use frcode::graphs::{
    circulant_graph, cycle_graph, girth, graph_to_fr, petersen_graph, projective_plane_incidence_graph, turan_graph,
    Graph,
};
use frcode::{dual, Execution, FrError, SearchOptions};

fn opts() -> SearchOptions {
    SearchOptions::default()
}

fn regular_fixtures() -> Vec<Graph> {
    let mut gs = vec![
        petersen_graph(),
        projective_plane_incidence_graph(2).unwrap(),
        circulant_graph(12, &[1, 5]).unwrap(),
        circulant_graph(13, &[1, 5]).unwrap(),
        turan_graph(8, 2).unwrap(),
    ];
    gs.extend((4..=10).map(|n| cycle_graph(n).unwrap()));
    gs
}

#[test]
fn regular_graph_law() {
    for g in regular_fixtures() {
        let alpha = g.regular_degree().unwrap();
        let gi = girth(&g).finite().unwrap();
        let c = graph_to_fr(&g).unwrap();
        for k in 1..=c.n() {
            if let Some(expect) = regular_graph_file_size(alpha, gi, k) {
                assert_eq!(supported_file_size(&c, k, opts()).unwrap(), expect, "alpha={alpha} g={gi} k={k}");
            }
        }
        let range = singleton_range_regular(alpha, gi);
        for k in 1..=alpha.min(c.n()) {
            assert_eq!(attains_singleton(&c, k, opts()).unwrap(), range.contains(k), "alpha={alpha} g={gi} k={k}");
        }
    }
}

#[test]
fn turan_law() {
    for (n, r) in [(6, 2), (8, 2), (6, 3), (9, 3), (8, 4), (10, 5)] {
        let c = graph_to_fr(&turan_graph(n, r).unwrap()).unwrap();
        let range = singleton_range_turan(n, r).unwrap();
        for k in 1..=n {
            if let Some(expect) = turan_file_size(n, r, k) {
                assert_eq!(supported_file_size(&c, k, opts()).unwrap(), expect, "T({n},{r}) k={k}");
            }
        }
        let alpha = n * (r - 1) / r;
        for k in 1..=alpha {
            assert_eq!(attains_singleton(&c, k, opts()).unwrap(), range.contains(k), "T({n},{r}) k={k}");
        }
    }
}

#[test]
fn steiner_dual_law() {
    for theta in [7u64, 9, 13] {
        let c = steiner_triple_system(theta).unwrap();
        let rho = c.rho();
        let d = dual(&c);
        let arc = maximal_arc_search(&c, rho + 1, Execution::Parallel).unwrap();
        // the k-pair law needs a k-subset with no collinear triple
        let reach = if arc.is_some() { rho + 1 } else { 3 };
        for k in 1..=reach.min(d.n()) {
            assert_eq!(supported_file_size(&d, k, opts()).unwrap(), pairwise_file_size(rho, k), "theta={theta} k={k}");
        }
        if arc.is_some() {
            let range = singleton_range_steiner(rho);
            for k in 1..=rho {
                assert_eq!(attains_singleton(&d, k, opts()).unwrap(), range.contains(k), "theta={theta} k={k}");
            }
        }
    }
}

#[test]
fn affine_law() {
    for (q, m, rho) in [(2u64, 2u32, 2usize), (2, 3, 3), (3, 2, 3), (3, 2, 4), (2, 3, 7), (5, 2, 3), (4, 2, 3)] {
        let Ok(design) = affine_fr_code(q, m, rho) else {
            assert!(q == 4, "q={q} should be supported");
            continue;
        };
        let c = design.code;
        for k in 1..=c.n().min(6) {
            match affine_file_size(q, m, rho, k) {
                Ok(expect) => assert_eq!(supported_file_size(&c, k, opts()).unwrap(), expect, "({q},{m},{rho}) k={k}"),
                Err(FrError::SideConditionViolated { .. } | FrError::KOutOfRange { .. } | FrError::BadParameters(_)) => {}
                Err(e) => panic!("({q},{m},{rho}) k={k}: {e}"),
            }
        }
        if frcode::filesize::affine_side_condition(q, m, rho) {
            let range = singleton_range_affine(q, m);
            for k in 1..=m as usize {
                assert_eq!(attains_singleton(&c, k, opts()).unwrap(), range.contains(k), "({q},{m},{rho}) k={k}");
            }
        }
    }
}

#[test]
fn mols_law() {
    for (p, rho) in [(3u64, 2usize), (5, 3), (5, 4), (7, 4), (7, 6)] {
        let c = mols_fr_code(&mols_prime(p).unwrap(), rho).unwrap().code;
        let order = p as usize;
        for k in 1..=rho {
            assert_eq!(supported_file_size(&c, k, opts()).unwrap(), order * k - k * (k - 1) / 2, "p={p} rho={rho} k={k}");
        }
        let range = singleton_range_mols(order, rho);
        for k in 1..=rho {
            assert_eq!(attains_singleton(&c, k, opts()).unwrap(), range.contains(k), "p={p} rho={rho} k={k}");
        }
    }
}

/// Graph codes have repair locality `alpha`, so with the regular-graph law the
/// locality condition is plain arithmetic.
fn arithmetic_attains(alpha: usize, g: usize, k: usize) -> bool {
    let m = regular_graph_file_size(alpha, g, k).unwrap();
    k + 1 == m.div_ceil(alpha) + m.div_ceil(alpha * alpha)
}

#[test]
fn attainment_predicate_matches_arithmetic_sweep() {
    for alpha in 2..=14 {
        for g in 3usize..=30 {
            for k in alpha + 1..=g + g.div_ceil(2) - 2 {
                let row = table3_predicate(alpha, g, k).unwrap();
                assert_eq!(row.is_some(), arithmetic_attains(alpha, g, k), "alpha={alpha} g={g} k={k} row={row:?}");
            }
        }
    }
}

#[test]
fn attainment_predicate_matches_search_on_graphs() {
    let graphs = [
        petersen_graph(),
        projective_plane_incidence_graph(2).unwrap(),
        projective_plane_incidence_graph(3).unwrap(),
        cycle_graph(6).unwrap(),
        cycle_graph(8).unwrap(),
    ];
    for g in &graphs {
        let alpha = g.regular_degree().unwrap();
        let gi = girth(g).finite().unwrap();
        let c = graph_to_fr(g).unwrap();
        assert_eq!(repair_locality(&c).unwrap(), alpha);
        for k in alpha + 1..=(gi + gi.div_ceil(2) - 2).min(c.n()) {
            let predicted = table3_predicate(alpha, gi, k).unwrap().is_some();
            assert_eq!(attains_locality_bound(&c, k, opts()).unwrap(), predicted, "alpha={alpha} g={gi} k={k}");
        }
    }
}

#[test]
fn dual_cases_confirmed_by_distance() {
    for g in [
        petersen_graph(),
        cycle_graph(7).unwrap(),
        cycle_graph(10).unwrap(),
        projective_plane_incidence_graph(2).unwrap(),
        circulant_graph(10, &[1, 3]).unwrap(),
        circulant_graph(12, &[1, 5]).unwrap(),
        circulant_graph(13, &[1, 5]).unwrap(),
        turan_graph(8, 2).unwrap(),
    ] {
        let alpha = g.regular_degree().unwrap();
        let gi = girth(&g).finite().unwrap();
        let d = dual(&graph_to_fr(&g).unwrap());
        let loc = repair_locality(&d).unwrap();
        for (m, case) in dual_graph_optimal_cases(g.vertex_count(), alpha, gi).unwrap() {
            let exact = min_distance(&d, m, opts()).unwrap() as i64;
            assert_eq!(exact, locality_bound(d.n(), d.alpha(), loc, m), "{case:?} M={m}");
        }
    }
}

#[test]
fn graph_duals_meet_improved_bound() {
    let petersen = dual(&graph_to_fr(&petersen_graph()).unwrap());
    for m in 8..=10 {
        assert_eq!(min_distance(&petersen, m, opts()).unwrap(), improved_bound(petersen.params(), m).unwrap(), "M={m}");
    }
    let turan = dual(&graph_to_fr(&turan_graph(8, 2).unwrap()).unwrap());
    for m in 5..=8 {
        assert_eq!(min_distance(&turan, m, opts()).unwrap(), improved_bound(turan.params(), m).unwrap(), "M={m}");
    }
}

#[test]
fn improved_never_exceeds_singleton_on_fixtures() {
    let mut codes = vec![frcode::incidence::fano_example()];
    for g in regular_fixtures() {
        let c = graph_to_fr(&g).unwrap();
        codes.push(dual(&c));
        codes.push(c);
    }
    for t in [7u64, 9, 13, 15] {
        let c = steiner_triple_system(t).unwrap();
        codes.push(dual(&c));
        codes.push(c);
    }
    codes.push(affine_fr_code(3, 2, 4).unwrap().code);
    codes.push(mols_fr_code(&mols_prime(5).unwrap(), 4).unwrap().code);
    for c in &codes {
        let p = c.params();
        for m in 1..=p.theta {
            let improved = improved_bound(p, m).unwrap() as i64;
            assert!(improved <= frcode::distance::singleton_bound(p.n, p.alpha, m), "{p} M={m}");
        }
    }
}

/// File sizes `M >= 4` at which the dual of a graph code meets the locality
/// bound, from the regular-graph law alone: the dual stores `M` packets with
/// distance `M_{n-M+1}` of the graph code, against the bound
/// `n alpha / 2 - ceil(M/2) - ceil(M/4) + 2` for locality 2.
fn arithmetic_dual_hits(n: usize, alpha: usize, g: usize) -> Vec<usize> {
    let top = g + g.div_ceil(2) - 2;
    (4..=n)
        .filter(|&m| {
            let k = n - m + 1;
            (1..=top).contains(&k)
                && regular_graph_file_size(alpha, g, k).unwrap() + m.div_ceil(2) + m.div_ceil(4) == n * alpha / 2 + 2
        })
        .collect()
}

#[test]
fn dual_cases_match_arithmetic_sweep() {
    for alpha in 2..=9 {
        for g in 3..=16 {
            for n in 4..=160 {
                if n * alpha % 2 != 0 {
                    continue;
                }
                let mut got: Vec<usize> =
                    dual_graph_optimal_cases(n, alpha, g).unwrap().into_iter().map(|(m, _)| m).collect();
                got.sort();
                assert_eq!(got, arithmetic_dual_hits(n, alpha, g), "n={n} alpha={alpha} g={g}");
            }
        }
    }
}
