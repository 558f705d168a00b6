mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sombor::graph::{degrees, edge_type_profile};
use sombor::indices::{so2, so2_degree_bound, so2_from_profile, vdb_index, IndexKind, VdbKernel};
use sombor::Rational;

/// SO2 written as `m − Σ 2/(r + 1)` with `r = max(d²)/min(d²)` per edge.
fn so2_via_ratio_form(g: &sombor::Graph) -> Rational {
    let d = degrees(g);
    let mut total = Rational::from_integer(g.edge_count() as i64);
    for (u, v) in g.edges() {
        let (a, b) = ((d[u] * d[u]) as i64, (d[v] * d[v]) as i64);
        let ratio = Rational::new(a.max(b), a.min(b));
        total = total - Rational::from_integer(2) / (ratio + 1);
    }
    total
}

fn all_components_regular(g: &sombor::Graph) -> bool {
    g.components().iter().all(|comp| comp.iter().all(|&v| g.degree(v) == g.degree(comp[0])))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn three_routes_agree_on_trees(seed in any::<u64>(), n in 1usize..40) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_tree(n, &mut rng);
        let direct = so2(&g).exact.unwrap();
        prop_assert_eq!(&direct, &so2_from_profile(&edge_type_profile(&g)));
        prop_assert_eq!(&direct, &vdb_index(&g, VdbKernel::So2).exact.unwrap());
        prop_assert_eq!(&direct, &so2_via_ratio_form(&g));
    }

    #[test]
    fn indices_ignore_labels(seed in any::<u64>(), n in 2usize..16) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_graph(n, 0.35, &mut rng);
        let h = common::random_relabel(&g, &mut rng);
        prop_assert_eq!(edge_type_profile(&g), edge_type_profile(&h));
        for kind in IndexKind::ALL {
            let (a, b) = (kind.evaluate(&g), kind.evaluate(&h));
            prop_assert_eq!(a.exact, b.exact);
            prop_assert!((a.approx - b.approx).abs() <= 1e-9 * a.approx.abs().max(1.0));
        }
    }

    #[test]
    fn profile_identities_hold(seed in any::<u64>(), n in 1usize..20) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_graph(n, 0.3, &mut rng);
        prop_assert!(edge_type_profile(&g).check_identities().is_ok());
        prop_assert_eq!(so2(&g).exact.unwrap(), so2_from_profile(&edge_type_profile(&g)));
    }

    #[test]
    fn approx_is_nearest_double_of_exact(seed in any::<u64>(), n in 2usize..20) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_tree(n, &mut rng);
        for kind in IndexKind::ALL {
            let v = kind.evaluate(&g);
            if let Some(exact) = &v.exact {
                prop_assert_eq!(v.approx, exact.to_f64());
            }
        }
    }
}

#[test]
fn kernel_agrees_with_so2_on_1000_random_trees() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..1000 {
        let g = common::random_tree(2 + i % 30, &mut rng);
        assert_eq!(vdb_index(&g, VdbKernel::So2), so2(&g));
    }
}

#[test]
fn degree_bound_and_zero_case_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for i in 0..2000 {
        let n = 1 + i % 12;
        let g = common::random_graph(n, [0.2, 0.5, 0.8][i % 3], &mut rng);
        let value = so2(&g).exact.unwrap();
        assert!(!value.is_negative());
        assert_eq!(value.is_zero(), all_components_regular(&g), "{g:?}");
        if g.min_degree() > 0 {
            assert!(value <= so2_degree_bound(g.edge_count(), g.min_degree(), g.max_degree()).unwrap());
        }
    }
}
