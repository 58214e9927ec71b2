use proptest::prelude::*;

use quivinv_core::local_model::h1ad_total_from_quiver;
use quivinv_core::suite::bundled_instances;
use quivinv_core::{build_doubled, enumerate_cycles, h1ad_inventory, DecompositionSpec, Flavor, SummandKind, SummandSpec};

fn kind() -> impl Strategy<Value = SummandKind> {
    prop_oneof![
        Just(SummandKind::OrthogonalStable),
        Just(SummandKind::SymplecticStable),
        Just(SummandKind::NonSelfDualPair),
    ]
}

fn spec() -> impl Strategy<Value = DecompositionSpec> {
    (
        2usize..5,
        prop_oneof![Just(Flavor::Orthogonal), Just(Flavor::Symplectic)],
        prop::collection::vec((kind(), 1usize..4, 1usize..4), 1..5),
    )
        .prop_map(|(genus, flavor, raw)| {
            let summands = raw
                .into_iter()
                .map(|(k, r, m)| {
                    let r = if k == SummandKind::SymplecticStable { 2 * r } else { r };
                    let s = SummandSpec::new(k, r, m);
                    let one = DecompositionSpec::new(genus, flavor, vec![s]);
                    if one.validate().is_ok() {
                        s
                    } else {
                        SummandSpec::new(k, r, 2 * m)
                    }
                })
                .collect();
            DecompositionSpec::new(genus, flavor, summands)
        })
}

proptest! {
    #[test]
    fn inventory_matches_quiver_count(s in spec()) {
        prop_assert!(s.validate().is_ok());
        let inv = h1ad_inventory(&s).unwrap();
        prop_assert_eq!(inv.entries.iter().map(|e| e.dim).sum::<u64>(), inv.total);
        prop_assert_eq!(inv.total, h1ad_total_from_quiver(&s).unwrap());
    }

    #[test]
    fn spec_json_round_trip(s in spec()) {
        let text = serde_json::to_string(&s).unwrap();
        let back: DecompositionSpec = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, s);
    }

    #[test]
    fn canonical_form_is_stable(inst in 0usize..64, pick in any::<prop::sample::Index>(), k in 0usize..8) {
        let insts = bundled_instances();
        let inst = &insts[inst % insts.len()];
        let dq = build_doubled(&inst.quiver);
        let words = enumerate_cycles(&dq, 4);
        prop_assume!(!words.is_empty());
        let w = pick.get(&words);
        prop_assert_eq!(&w.canonical(), w);
        prop_assert_eq!(&w.rotated(k).canonical(), w);
        prop_assert_eq!(&w.adjoint_reversal().rotated(k).canonical(), w);
    }
}
