//! Round-trip properties of the text and JSON formats: every writer's output
//! is accepted by the matching reader and re-serializes identically.

use proptest::prelude::*;

use kneser_lab_core::rng::SplitMix64;
use kneser_lab_core::search::{random_code, random_family};
use kneser_lab_core::{FieldVector, LinearCode, PrimeField, SetFamily};

proptest! {
    #[test]
    fn vector_text_round_trips(p in prop::sample::select(vec![2u32, 3, 5, 7, 11, 251]),
                               coords in prop::collection::vec(any::<u64>(), 0..12)) {
        let field = PrimeField::new(p).unwrap();
        let v = FieldVector::new(field, coords);
        let text = v.render();
        let back = FieldVector::parse(field, &text).unwrap();
        prop_assert_eq!(back.render(), text);
        prop_assert_eq!(back, v);
    }

    #[test]
    fn code_file_round_trips(p in prop::sample::select(vec![2u32, 3, 5, 11]),
                             n in 1usize..9,
                             seed in any::<u64>()) {
        let field = PrimeField::new(p).unwrap();
        let mut rng = SplitMix64::new(seed);
        let code = random_code(&mut rng, field, n, 4);
        let text = code.render();
        let back = LinearCode::parse(&text).unwrap();
        prop_assert_eq!(back.render(), text);
        prop_assert_eq!(back, code);
    }

    #[test]
    fn family_formats_round_trip(n in 1usize..10, seed in any::<u64>()) {
        let mut rng = SplitMix64::new(seed);
        let family = random_family(&mut rng, n, 8);
        let text = family.render();
        let back = SetFamily::parse(&text).unwrap();
        prop_assert_eq!(back.render(), text);
        prop_assert_eq!(&back, &family);

        let json = family.to_json();
        let back = SetFamily::from_json(&json).unwrap();
        prop_assert_eq!(back.to_json(), json);
        prop_assert_eq!(back, family);
    }
}
