//! Property tests over random resolvable codes: each of `rho` parallel classes
//! is a random partition of the points into blocks of size `alpha`.

use frcode::distance::{bound_table, locality_bound, repair_locality, singleton_bound, ReportOptions};
use frcode::filesize::{dual_indicator_bound, file_size_from_dual, phi_bound, supported_file_size};
use frcode::{dual, validate_fr, FrCode, IncidenceStructure, SearchOptions};
use proptest::prelude::*;

fn code_from(alpha: usize, classes: &[Vec<usize>], labels: &[u64]) -> FrCode {
    let blocks = classes
        .iter()
        .flat_map(|perm| perm.chunks(alpha).map(|ch| ch.iter().map(|&p| labels[p]).collect::<Vec<u64>>()))
        .collect();
    validate_fr(IncidenceStructure::new(labels.to_vec(), blocks).unwrap()).unwrap()
}

/// Codes with at most `max_n` blocks and arbitrary distinct labels.
fn random_code(max_n: usize) -> impl Strategy<Value = FrCode> {
    (2usize..=4, 1usize..=3)
        .prop_flat_map(move |(alpha, rho)| {
            let max_t = (max_n / rho).clamp(1, 5);
            (Just(alpha), Just(rho), 1usize..=max_t)
        })
        .prop_flat_map(|(alpha, rho, t)| {
            let theta = alpha * t;
            let perm = Just((0..theta).collect::<Vec<_>>()).prop_shuffle();
            let labels = prop::collection::btree_set(0u64..10_000, theta)
                .prop_map(|s| s.into_iter().collect::<Vec<_>>())
                .prop_shuffle();
            (Just(alpha), prop::collection::vec(perm, rho), labels)
        })
        .prop_map(|(alpha, classes, labels)| code_from(alpha, &classes, &labels))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn json_round_trip(c in random_code(16)) {
        let back = FrCode::from_json(&c.to_json()).unwrap();
        prop_assert_eq!(back.structure().points(), c.structure().points());
        prop_assert_eq!(back.structure().blocks(), c.structure().blocks());
        prop_assert_eq!(back, c);
    }

    #[test]
    fn dual_is_an_involution(c in random_code(16)) {
        let d = dual(&c);
        prop_assert_eq!(d.params(), c.params().dual());
        prop_assert_eq!(d.theta() * d.rho() / d.alpha(), c.theta());
        prop_assert!(validate_fr(d.structure().clone()).is_ok());
        prop_assert_eq!(dual(&d), c.relabeled());
    }

    #[test]
    fn search_modes_agree_and_respect_bounds(c in random_code(14)) {
        let p = c.params();
        for k in 1..=c.n() {
            let seq = supported_file_size(&c, k, SearchOptions::sequential()).unwrap();
            let par = supported_file_size(&c, k, SearchOptions::default()).unwrap();
            prop_assert_eq!(seq, par);
            prop_assert!(seq <= phi_bound(p.n, p.alpha, p.rho, k).unwrap());
            prop_assert!(seq <= dual_indicator_bound(p.n, p.alpha, p.rho, k).unwrap());
            prop_assert_eq!(file_size_from_dual(&c, k, SearchOptions::default()).unwrap(), seq);
        }
    }

    #[test]
    fn distance_bounds_are_sound(c in random_code(14)) {
        let ms: Vec<usize> = (1..=c.theta()).collect();
        for r in bound_table(&c, &ms, ReportOptions::default()).unwrap() {
            let d = r.d_min_exact.unwrap() as i64;
            prop_assert!(d <= r.bound_singleton, "{:?}", r);
            prop_assert!(d <= r.bound_improved as i64, "{:?}", r);
            if let Some(l) = r.bound_locality {
                prop_assert!(d <= l, "{:?}", r);
            }
        }
    }

    #[test]
    fn locality_reduces_to_singleton(c in random_code(16).prop_filter("repairable", |c| c.rho() >= 2)) {
        let d = repair_locality(&c).unwrap();
        for m in 1..=(d * c.alpha()).min(c.theta()) {
            prop_assert_eq!(locality_bound(c.n(), c.alpha(), d, m), singleton_bound(c.n(), c.alpha(), m));
        }
    }
}
