use proptest::prelude::*;
use ribbon_core::diagram::{Diagram, Side};
use ribbon_core::family::{builtin, BUILTIN_NAMES};
use ribbon_core::oracle::alexander_wirtinger;
use ribbon_core::skein::{fast_gamma, homflypt, SkeinConfig};

fn knot_names() -> Vec<&'static str> {
    BUILTIN_NAMES.iter().copied().filter(|n| builtin(n).unwrap().is_knot() && *n != "unknot").collect()
}

fn expanded() -> impl Strategy<Value = Diagram> {
    (prop::sample::select(knot_names()), any::<u64>(), 0usize..4).prop_map(|(n, seed, steps)| builtin(n).unwrap().expand_random(seed, steps))
}

/// Renames labels through a permutation and reverses the crossing order.
fn relabel(d: &Diagram, shift: usize) -> Diagram {
    let m = 2 * d.crossing_count();
    let image = |l: usize| (l - 1 + shift) % m + 1;
    let text = d
        .crossings()
        .iter()
        .rev()
        .map(|c| {
            let a = c.arcs().map(|l| image(l as usize));
            format!("X[{},{},{},{}]", a[0], a[1], a[2], a[3])
        })
        .collect::<Vec<_>>()
        .join(" ");
    Diagram::parse_pd(&text).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn expansions_stay_valid(d in expanded()) {
        prop_assert!(d.validate().all_passed());
        prop_assert!(d.is_knot());
    }

    #[test]
    fn pd_round_trip(d in expanded()) {
        let back = Diagram::parse_pd(&d.to_pd()).unwrap();
        prop_assert_eq!(back.canonical_key(), d.canonical_key());
    }

    #[test]
    fn canonical_key_ignores_labels(d in expanded(), shift in 0usize..40) {
        prop_assume!(d.crossing_count() > 0);
        prop_assert_eq!(relabel(&d, shift).canonical_key(), d.canonical_key());
    }

    #[test]
    fn expansion_preserves_homflypt(name in prop::sample::select(knot_names()), seed in any::<u64>(), steps in 1usize..4) {
        let cfg = SkeinConfig::default();
        let d = builtin(name).unwrap();
        prop_assert_eq!(homflypt(&d.expand_random(seed, steps), &cfg).unwrap(), homflypt(&d, &cfg).unwrap());
    }

    #[test]
    fn mirror_and_reverse(d in expanded()) {
        let cfg = SkeinConfig::default();
        let p = homflypt(&d, &cfg).unwrap();
        prop_assert_eq!(homflypt(&d.mirror(), &cfg).unwrap(), p.invert_v());
        prop_assert_eq!(homflypt(&d.reverse(), &cfg).unwrap(), p);
        prop_assert_eq!(d.mirror().mirror().canonical_key(), d.canonical_key());
    }

    #[test]
    fn twist_and_untwist_cancel(name in prop::sample::select(knot_names()), pick in any::<prop::sample::Index>()) {
        let d = builtin(name).unwrap();
        let slots = d.slots();
        let s = slots[pick.index(slots.len())];
        let w = d.insert_braid(&s, &[true, true, false, false]).unwrap();
        prop_assert_eq!(w.crossing_count(), d.crossing_count() + 4);
        prop_assert_eq!(w.simplify().canonical_key(), d.simplify().canonical_key());
    }

    #[test]
    fn cable_alexander_is_stretched(d in expanded()) {
        prop_assume!(d.crossing_count() <= 10);
        let c = d.cable_2_1().unwrap();
        prop_assert!(c.is_knot());
        prop_assert_eq!(c.crossing_count(), 4 * d.crossing_count() + (1 - 2 * d.writhe()).unsigned_abs() as usize);
        prop_assert_eq!(alexander_wirtinger(&c).unwrap(), alexander_wirtinger(&d).unwrap().stretch(2));
    }
}

#[test]
fn full_twists_add_two_crossings_each() {
    let d = builtin("figure_eight").unwrap();
    for s in d.slots() {
        for n in [-2i64, -1, 0, 1, 3] {
            let t = d.insert_full_twists(&s, n).unwrap();
            assert_eq!(t.crossing_count(), d.crossing_count() + 2 * n.unsigned_abs() as usize);
            assert!(t.validate().all_passed());
        }
    }
}

#[test]
fn cable_of_invariant_under_expansion() {
    let cfg = SkeinConfig::default();
    let d = builtin("trefoil_rh").unwrap();
    let want = fast_gamma(&d.cable_2_1().unwrap(), &cfg).unwrap();
    for seed in 0..4 {
        let e = d.expand_random(seed, 2);
        assert_eq!(fast_gamma(&e.cable_2_1().unwrap(), &cfg).unwrap(), want, "seed {seed}");
    }
}

#[test]
fn components_split_with_linking_sum() {
    let hopf = builtin("hopf_plus").unwrap();
    let (parts, mixed) = hopf.split_components();
    assert_eq!(parts.len(), 2);
    assert!(parts.iter().all(|p| p.crossing_count() == 0 && p.is_knot()));
    assert_eq!(mixed, 2);
    assert!(builtin("fig8_sum").unwrap().cable_2_1().is_ok());
    assert!(hopf.cable_2_1().is_err());
}

#[test]
fn cut_sides_are_checked() {
    let d = builtin("figure_eight").unwrap();
    let cuts = d.cuts(2);
    assert!(!cuts.is_empty());
    for c in &cuts {
        assert_eq!(c.strands.len(), 2);
        assert!(matches!(c.strands[0].1, Side::Left | Side::Right));
    }
}
