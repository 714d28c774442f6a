use proptest::prelude::*;
use stickforge_core::conway::{
    calvo_lower_bound, enumerate, negami_lower_bound, ConwayNotation, Equivalence, NormalizationAction,
    TwoBridgeFraction,
};

fn notation(max_entry: u32, max_len: usize) -> impl Strategy<Value = ConwayNotation> {
    (0..=(max_len - 1) / 2)
        .prop_flat_map(move |half| prop::collection::vec(1..=max_entry, 2 * half + 1))
        .prop_map(|v| ConwayNotation::new(v).unwrap())
}

fn mirror(f: TwoBridgeFraction) -> TwoBridgeFraction {
    TwoBridgeFraction { p: f.p, q: if f.p > 1 { (f.p - f.q) % f.p } else { f.q } }
}

proptest! {
    #[test]
    fn normalization_keeps_crossings_and_is_idempotent(n in notation(6, 9)) {
        let t = n.normalize();
        prop_assert_eq!(t.output.crossing_number(), n.crossing_number());
        let e = t.output.entries();
        prop_assert!(e.len() == 1 || *e.last().unwrap() >= 2);
        prop_assert_eq!(t.output.normalize().action, NormalizationAction::Identity);
    }

    #[test]
    fn normalization_action_matches_the_fraction(n in notation(6, 9)) {
        let t = n.normalize();
        let (before, after) = (n.fraction(), t.output.fraction());
        match t.action {
            NormalizationAction::Identity => prop_assert_eq!(before, after),
            NormalizationAction::Reversal => prop_assert_eq!(before.equivalent(&after), Equivalence::Identical),
            NormalizationAction::Mirror => prop_assert_eq!(mirror(before).equivalent(&after), Equivalence::Identical),
        }
    }

    #[test]
    fn reversal_names_the_same_type(n in notation(8, 11)) {
        prop_assert_eq!(n.fraction().equivalent(&n.reversed().fraction()), Equivalence::Identical);
        prop_assert_eq!(n.fraction().dedup_key(), n.reversed().fraction().dedup_key());
    }

    #[test]
    fn mirror_shares_the_dedup_key(n in notation(8, 11)) {
        let f = n.fraction();
        prop_assert_eq!(f.dedup_key(), mirror(f).dedup_key());
        prop_assert_eq!(f.component_count(), if f.p % 2 == 0 { 2 } else { 1 });
    }

    #[test]
    fn lower_bounds_stay_below_the_upper_bound(c in 6u32..5000) {
        prop_assert!(negami_lower_bound(c) <= calvo_lower_bound(c));
        prop_assert!(calvo_lower_bound(c) <= c + 2);
    }
}

#[test]
fn enumeration_counts() {
    let all = enumerate(6, 10).unwrap();
    let per_c: Vec<usize> = (6..=10).map(|c| all.iter().filter(|n| n.crossing_number() == c).count()).collect();
    assert_eq!(per_c, vec![6, 10, 20, 36, 72]);
}

/// Independent count: every reduced fraction p/q with 0 < q < p, crossing number
/// the sum of its regular continued fraction quotients, classes up to
/// q ↦ q^{-1} and q ↦ p - q.
#[test]
fn enumeration_agrees_with_fraction_brute_force() {
    fn quotient_sum(mut p: u64, mut q: u64) -> u64 {
        let mut s = 0;
        while q != 0 {
            s += p / q;
            (p, q) = (q, p % q);
        }
        s
    }
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    let mut classes = std::collections::BTreeSet::new();
    for p in 2..=200u64 {
        for q in 1..p {
            if gcd(p, q) != 1 {
                continue;
            }
            let c = quotient_sum(p, q);
            if (6..=10).contains(&c) {
                let inv = (1..p).find(|x| x * q % p == 1).unwrap();
                let key = [q, inv, p - q, p - inv].into_iter().min().unwrap();
                classes.insert((c, p, key));
            }
        }
    }
    let all = enumerate(6, 10).unwrap();
    let ours: std::collections::BTreeSet<_> = all
        .iter()
        .map(|n| {
            let (p, q) = n.fraction().dedup_key();
            (n.crossing_number() as u64, p, q)
        })
        .collect();
    assert_eq!(ours, classes);
}
