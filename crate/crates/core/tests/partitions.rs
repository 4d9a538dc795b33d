use std::collections::BTreeSet;

use proptest::prelude::*;
use thom_core::partitions::{contained_in_staircase, enumerate_partitions, enumerate_strict};
use thom_core::{Partition, StrictPartition};

/// Every weakly decreasing sequence summing to `d`, by brute force over compositions.
fn brute_partitions(d: u32) -> BTreeSet<Vec<u32>> {
    let mut out = BTreeSet::new();
    if d == 0 {
        out.insert(Vec::new());
        return out;
    }
    // compositions of d correspond to subsets of the d-1 cut points
    for mask in 0u32..(1 << (d - 1)) {
        let mut parts = Vec::new();
        let mut run = 1;
        for i in 0..d - 1 {
            if mask & (1 << i) != 0 {
                parts.push(run);
                run = 1;
            } else {
                run += 1;
            }
        }
        parts.push(run);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        out.insert(parts);
    }
    out
}

fn boxes(parts: &[u32]) -> BTreeSet<(u32, u32)> {
    parts.iter().enumerate().flat_map(|(r, &len)| (0..len).map(move |c| (r as u32, c))).collect()
}

#[test]
fn counts_match_brute_force() {
    for d in 0..=12 {
        let brute = brute_partitions(d);
        let listed: BTreeSet<Vec<u32>> = enumerate_partitions(d).iter().map(|p| p.parts().to_vec()).collect();
        assert_eq!(listed, brute, "d = {d}");
        assert_eq!(enumerate_partitions(d).len(), brute.len());
        let strict: BTreeSet<Vec<u32>> =
            brute.iter().filter(|p| p.windows(2).all(|w| w[0] > w[1])).cloned().collect();
        let listed_strict: BTreeSet<Vec<u32>> = enumerate_strict(d).iter().map(|p| p.parts().to_vec()).collect();
        assert_eq!(listed_strict, strict, "strict d = {d}");
    }
    assert_eq!(enumerate_partitions(5).len(), 7);
    assert_eq!(enumerate_strict(7).len(), 5);
}

#[test]
fn enumeration_is_lex_descending() {
    let shown: Vec<String> = enumerate_strict(6).iter().map(ToString::to_string).collect();
    assert_eq!(shown, ["(6)", "(5,1)", "(4,2)", "(3,2,1)"]);
    let shown: Vec<String> = enumerate_partitions(4).iter().map(ToString::to_string).collect();
    assert_eq!(shown, ["(4)", "(3,1)", "(2,2)", "(2,1,1)", "(1,1,1,1)"]);
}

#[test]
fn parsing_and_validation() {
    assert!(StrictPartition::new(vec![1, 2]).is_err());
    assert!(StrictPartition::new(vec![2, 2]).is_err());
    assert!(Partition::new(vec![1, 2]).is_err());
    assert!("(3,0)".parse::<StrictPartition>().is_err());
    assert_eq!("()".parse::<StrictPartition>().unwrap(), StrictPartition::empty());
    assert_eq!("(4, 2,1)".parse::<StrictPartition>().unwrap().to_string(), "(4,2,1)");
    assert!(contained_in_staircase(&"(3,2,1)".parse().unwrap(), 3));
    assert!(!contained_in_staircase(&"(4,1)".parse().unwrap(), 3));
}

proptest! {
    #[test]
    fn conjugate_transposes_the_diagram(d in 0u32..14, pick in any::<prop::sample::Index>()) {
        let all = enumerate_partitions(d);
        let p = &all[pick.index(all.len())];
        let c = p.conjugate();
        let transposed: BTreeSet<(u32, u32)> = boxes(p.parts()).into_iter().map(|(r, col)| (col, r)).collect();
        prop_assert_eq!(boxes(c.parts()), transposed);
        prop_assert_eq!(&c.conjugate(), p);
        prop_assert_eq!(c.weight(), d);
    }

    #[test]
    fn display_round_trips(d in 0u32..14, pick in any::<prop::sample::Index>()) {
        let all = enumerate_strict(d);
        let p = &all[pick.index(all.len())];
        prop_assert_eq!(&p.to_string().parse::<StrictPartition>().unwrap(), p);
    }
}
