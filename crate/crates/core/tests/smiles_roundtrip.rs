mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sombor::chem_io::{parse_alkane_smiles, to_alkane_smiles};
use sombor::graph::{is_molecular_tree, trees_isomorphic};

proptest! {
    #[test]
    fn written_smiles_reparses_to_an_isomorphic_tree(seed in any::<u64>(), n in 1usize..30) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_molecular_tree(n, &mut rng);
        let g = common::random_relabel(&g, &mut rng);
        let smiles = to_alkane_smiles(&g).unwrap();
        let back = parse_alkane_smiles(&smiles).unwrap();
        prop_assert!(is_molecular_tree(&back));
        prop_assert!(trees_isomorphic(&g, &back));
    }

    #[test]
    fn parser_never_yields_degree_above_four(s in "[C()]{1,24}") {
        if let Ok(g) = parse_alkane_smiles(&s) {
            prop_assert!(is_molecular_tree(&g));
        }
    }
}
