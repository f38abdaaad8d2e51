mod common;

use common::*;
use holosos::document::{Document, FormDocument, MapDocument};
use holosos::{extract_sos, SquaredNorm};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn map_documents_round_trip(seed in any::<u64>(), n in 1usize..=3, d in 0usize..=3) {
        let mut r = rng(seed);
        let f = random_affine_map(&mut r, n, d, 2);
        let json = MapDocument::from_map(&f).to_json();
        let parsed = MapDocument::parse(&json).unwrap();
        prop_assert_eq!(parsed.to_map().unwrap(), f);
        prop_assert_eq!(parsed.to_json(), json);
    }

    #[test]
    fn scaled_and_form_documents_round_trip(seed in any::<u64>(), n in 1usize..=2) {
        let mut r = rng(seed);
        let f = random_affine_map(&mut r, n, 2, 2);
        let h = extract_sos(&f.squared_norm()).unwrap();
        let doc = MapDocument::parse(&MapDocument::from_scaled(&h).to_json()).unwrap();
        prop_assert_eq!(doc.to_scaled().unwrap(), h);

        let a = random_hermitian(&mut r, n, 0, 2);
        let text = FormDocument::from_form(&a).to_json();
        prop_assert_eq!(Document::parse(&text).unwrap().to_form().unwrap(), a);
    }
}
