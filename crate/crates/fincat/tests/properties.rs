use fincat::*;
use proptest::prelude::*;

/// Random poset on `n` objects: the transitive closure of a random relation
/// compatible with index order.
fn poset(n: usize, bits: &[bool], names: &[String]) -> Category {
    let mut r = vec![vec![false; n]; n];
    let mut k = 0;
    for (x, row) in r.iter_mut().enumerate() {
        row[x] = true;
    }
    for x in 0..n {
        for y in x + 1..n {
            r[x][y] = bits[k % bits.len()];
            k += 1;
        }
    }
    for m in 0..n {
        for x in 0..n {
            for y in 0..n {
                if r[x][m] && r[m][y] {
                    r[x][y] = true;
                }
            }
        }
    }
    Category::preorder(names, |x, y| r[x][y]).unwrap()
}

fn names(n: usize, perm: &[usize]) -> Vec<String> {
    (0..n).map(|i| format!("o{}", perm[i])).collect()
}

fn flags(r: &FilteredReport) -> [bool; 7] {
    [
        r.nonempty,
        r.connected,
        r.pf1,
        r.pf2,
        r.c_prime,
        r.filtrant,
        r.filtrant_via_c_prime,
    ]
}

proptest! {
    #[test]
    fn relabeling_preserves_filtered_flags(
        n in 1usize..6,
        bits in proptest::collection::vec(any::<bool>(), 15),
        perm in Just((0..6).collect::<Vec<usize>>()).prop_shuffle(),
    ) {
        let a = poset(n, &bits, &names(n, &(0..6).collect::<Vec<_>>()));
        let b = poset(n, &bits, &names(n, &perm));
        let (ra, rb) = (classify_filtered(&a), classify_filtered(&b));
        prop_assert_eq!(flags(&ra), flags(&rb));
        prop_assert_eq!(ra.filtrant, ra.filtrant_via_c_prime);
    }

    #[test]
    fn opposite_is_an_involution(n in 0usize..6, bits in proptest::collection::vec(any::<bool>(), 15)) {
        let c = poset(n, &bits, &names(n, &(0..6).collect::<Vec<_>>()));
        prop_assert_eq!(c.opposite().opposite(), c);
    }

    /// Over an index with a terminal object and no identifications arriving
    /// there, the colimit is the set at the terminal object.
    #[test]
    fn terminal_index_colimit(
        n in 1usize..6,
        bits in proptest::collection::vec(any::<bool>(), 15),
        sizes in proptest::collection::vec(1usize..4, 6),
        seed in any::<u64>(),
    ) {
        let mut bits = bits;
        // make the last object terminal
        let mut k = 0;
        for x in 0..n {
            for y in x + 1..n {
                if y == n - 1 {
                    bits[k % 15] = true;
                }
                k += 1;
            }
        }
        let c = poset(n, &bits, &names(n, &(0..6).collect::<Vec<_>>()));
        let t = n - 1;
        let sz = &sizes[..n];
        // each element carries a label in the terminal set
        let to_t: Vec<Vec<usize>> = (0..n)
            .map(|x| (0..sz[x]).map(|e| if x == t { e } else { ((seed >> (x * 3 + e)) as usize) % sz[t] }).collect())
            .collect();
        let sets: Vec<Vec<String>> = (0..n)
            .map(|x| (0..sz[x]).map(|e| format!("e{e}")).collect())
            .collect();
        // x <= y sends e to the least element of y with the same label
        let mut maps = vec![Vec::new(); c.num_morphisms()];
        let mut ok = true;
        for m in c.morphisms() {
            let (x, y) = (c.src(m), c.tgt(m));
            maps[m] = (0..sz[x])
                .map(|e| {
                    let lab = to_t[x][e];
                    match (0..sz[y]).find(|&f| to_t[y][f] == lab) {
                        Some(f) => f,
                        None => { ok = false; 0 }
                    }
                })
                .collect();
        }
        prop_assume!(ok);
        let d = SetDiagram { index: c, sets, maps };
        prop_assume!(d.violations().is_empty());
        prop_assert_eq!(d.colimit().len(), sz[t]);
    }

    #[test]
    fn singletons_over_connected_index(n in 1usize..6, bits in proptest::collection::vec(any::<bool>(), 15)) {
        let c = poset(n, &bits, &names(n, &(0..6).collect::<Vec<_>>()));
        let r = classify_filtered(&c);
        let d = SetDiagram {
            sets: vec![vec!["*".to_string()]; n],
            maps: vec![vec![0]; c.num_morphisms()],
            index: c,
        };
        let k = d.colimit().len();
        if r.connected {
            prop_assert_eq!(k, 1);
        } else {
            prop_assert!(k > 1);
        }
    }
}
