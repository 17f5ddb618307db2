use std::collections::BTreeMap;

use proptest::prelude::*;
use rank3_mullineux::*;

fn part(s: &str) -> Partition {
    s.parse().unwrap()
}

/// `p`-regularisation: every node slides to the top of its ladder `i + (p−1)j`.
fn regularise(lambda: &Partition, p: u32) -> Partition {
    let mut per_ladder: BTreeMap<u32, u32> = BTreeMap::new();
    for (i, &len) in lambda.parts().iter().enumerate() {
        for j in 0..len {
            *per_ladder.entry(i as u32 + (p - 1) * j).or_default() += 1;
        }
    }
    let mut rows: Vec<u32> = Vec::new();
    for (ladder, count) in per_ladder {
        // positions (ladder − (p−1)j, j) ordered by row index
        let mut slots: Vec<(u32, u32)> = (0..=ladder / (p - 1)).map(|j| (ladder - (p - 1) * j, j)).collect();
        slots.sort();
        for &(i, _) in slots.iter().take(count as usize) {
            let i = i as usize;
            if rows.len() <= i {
                rows.resize(i + 1, 0);
            }
            rows[i] += 1;
        }
    }
    Partition::from_parts(rows).expect("regularisation is a partition")
}

#[test]
fn table_of_eight_pairs() {
    let pairs = [
        ("4,2", "2^2,1^2"),
        ("5,2", "3,2,1^2"),
        ("5,1^2", "3,2^2"),
        ("7,1", "4,3,1"),
        ("6,2", "3^2,1^2"),
        ("6,1^2", "3^2,2"),
        ("7,1^2", "4,3,2"),
        ("8,1", "4^2,1"),
    ];
    for (l, m) in pairs {
        assert_eq!(mullineux_map(&part(l), 3).unwrap(), part(m), "m({l})");
        assert_eq!(mullineux_map(&part(m), 3).unwrap(), part(l), "m({m})");
    }
}

#[test]
fn exhaustive_properties_up_to_twenty() {
    for n in 1..=20 {
        for l in regular_partitions(n, 3) {
            let m = mullineux_map(&l, 3).unwrap();
            assert_eq!(m.size(), n, "{l}");
            assert!(is_p_regular(&m, 3), "{l} ↦ {m}");
            assert_eq!(mullineux_map(&m, 3).unwrap(), l, "involution fails at {l}");
            assert_eq!(mullineux_map_frobenius(&l, 3).unwrap(), m, "definitions disagree at {l}");
            assert_eq!(is_mullineux_fixed(&l, 3).unwrap(), m == l, "{l}");
            let s = mullineux_symbol(&l, 3).unwrap();
            assert_eq!(s.h.iter().sum::<u32>(), n);
        }
    }
}

#[test]
fn other_primes_give_involutions() {
    for p in [2, 5, 7] {
        for n in 1..=14 {
            for l in regular_partitions(n, p) {
                let m = mullineux_map(&l, p).unwrap();
                assert_eq!(mullineux_map(&m, p).unwrap(), l, "p={p} λ={l}");
            }
        }
    }
}

#[test]
fn image_of_trivial_partition_is_regularised_column() {
    for p in [3, 5] {
        for n in 1..=40 {
            let trivial = Partition::new(vec![n]);
            let column = Partition::new(vec![1; n as usize]);
            assert_eq!(mullineux_map(&trivial, p).unwrap(), regularise(&column, p), "p={p} n={n}");
        }
    }
}

#[test]
fn large_first_part_fixed_points() {
    for n in 5..=60u32 {
        let candidates = [vec![n], vec![n - 1, 1], vec![n - 2, 2], vec![n - 2, 1, 1]];
        for parts in candidates {
            let l = Partition::new(parts);
            if !is_p_regular(&l, 3) {
                continue;
            }
            let want = (n == 5 || n == 6) && l.parts() == [n - 2, 1, 1];
            assert_eq!(is_mullineux_fixed(&l, 3).unwrap(), want, "n={n} λ={l}");
        }
    }
}

#[test]
fn hook_symbol_shape() {
    // (n−2,1²): h = (5,3,…,3,a), r = (3,1,…,1,1) with t threes, a = n−2−3(t+1);
    // a zero final column is absent.
    for n in 5..=60u32 {
        let t = (n - 2) / 3 - 1;
        let a = n - 2 - 3 * (t + 1);
        let mut h = vec![5];
        let mut r = vec![3];
        h.extend(std::iter::repeat_n(3, t as usize));
        r.extend(std::iter::repeat_n(1, t as usize));
        if a > 0 {
            h.push(a);
            r.push(1);
        }
        let s = mullineux_symbol(&Partition::new(vec![n - 2, 1, 1]), 3).unwrap();
        assert_eq!((s.h, s.r), (h, r), "n={n}");
    }
}

#[test]
fn js_examples() {
    assert!(is_js_partition(&part("8,1"), 3).unwrap());
    assert!(!is_js_partition(&part("7,1"), 3).unwrap());
    assert!(is_js_partition(&part("5^2"), 3).unwrap());
}

fn regular_partition_strategy() -> impl Strategy<Value = Partition> {
    proptest::collection::vec(1u32..12, 1..12).prop_map(|mut v| {
        // cap multiplicities at 2
        v.sort_unstable_by(|a, b| b.cmp(a));
        let mut out: Vec<u32> = Vec::new();
        for x in v {
            if out.iter().filter(|&&y| y == x).count() < 2 {
                out.push(x);
            }
        }
        Partition::new(out)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn random_regular_partitions(l in regular_partition_strategy()) {
        let m = mullineux_map(&l, 3).unwrap();
        prop_assert_eq!(m.size(), l.size());
        prop_assert_eq!(mullineux_map(&m, 3).unwrap(), l.clone());
        prop_assert_eq!(mullineux_map_frobenius(&l, 3).unwrap(), m);
        let s = mullineux_symbol(&l, 3).unwrap();
        prop_assert_eq!(partition_from_symbol(&s, 3).unwrap(), l);
    }
}
