use proptest::prelude::*;
use stickforge_core::conway::{ConwayNotation, NormalizationAction};
use stickforge_core::invariants::{
    bracket, bracket_state_sum, canonical_diagram, determinant, jones, jones_all_orientations, Diagram,
};

fn notation(max_sum: u32) -> impl Strategy<Value = ConwayNotation> {
    (0usize..=3)
        .prop_flat_map(|half| prop::collection::vec(1u32..=5, 2 * half + 1))
        .prop_filter("crossing budget", move |v| v.iter().sum::<u32>() <= max_sum)
        .prop_map(|v| ConwayNotation::new(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn pairing_evaluator_matches_state_sum(n in notation(12), flip in any::<bool>()) {
        let d = canonical_diagram(&n);
        let d = if flip { d.mirror() } else { d };
        prop_assert_eq!(bracket(&d).unwrap(), bracket_state_sum(&d).unwrap());
    }

    #[test]
    fn mirror_inverts_the_variable(n in notation(10)) {
        let d = canonical_diagram(&n);
        prop_assert_eq!(jones(&d.mirror()).unwrap(), jones(&d).unwrap().invert_variable());
    }

    #[test]
    fn determinant_is_the_fraction_numerator(n in notation(14)) {
        prop_assert_eq!(determinant(&canonical_diagram(&n)).unwrap(), n.fraction().p);
    }

    #[test]
    fn canonical_diagram_shape(n in notation(14)) {
        let d = canonical_diagram(&n);
        prop_assert!(d.validate().is_ok());
        prop_assert_eq!(d.crossing_count() as u32, n.crossing_number());
        prop_assert!(d.is_alternating());
        prop_assert_eq!(d.arc_count(), 2 * d.crossing_count());
        prop_assert_eq!(d.component_count() as u32, n.fraction().component_count());
    }

    #[test]
    fn normalization_respects_jones(n in notation(10)) {
        let t = n.normalize();
        let before = jones_all_orientations(&canonical_diagram(&n)).unwrap();
        let after = jones(&canonical_diagram(&t.output)).unwrap();
        let expected = match t.action {
            NormalizationAction::Mirror => after.invert_variable(),
            _ => after,
        };
        prop_assert!(before.contains(&expected));
    }

    #[test]
    fn text_round_trip(n in notation(12)) {
        let d = canonical_diagram(&n);
        prop_assert_eq!(Diagram::parse(&d.to_string()).unwrap(), d);
    }
}
