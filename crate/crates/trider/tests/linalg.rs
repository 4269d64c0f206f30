mod common;

use common::*;
use proptest::prelude::*;
use trider::{normal_form, presentations, CoeffRing, FModule, Mat};

fn check(r: &CoeffRing, rows: &[Vec<u64>], src: &[u32], tgt: &[u32]) {
    let a = Mat::from_rows(rows, src.len());
    let (s, t) = (FModule { exps: src.to_vec() }, FModule { exps: tgt.to_vec() });
    let p = presentations(r, &a, &s, &t);
    let (ker, coker) = brute_ker_coker(&Arith::of(r), rows, src, tgt);
    assert_eq!(p.kernel.exps, ker, "kernel of {rows:?} over {}", r.name());
    assert_eq!(p.cokernel.exps, coker, "cokernel of {rows:?} over {}", r.name());
    // |im| = |src| / |ker|
    assert_eq!(p.image.log_order() + p.kernel.log_order(), s.log_order());
}

#[test]
fn upper_triangular_block_over_z4() {
    let r = z4();
    let rows = vec![vec![2, 1], vec![0, 2]];
    check(&r, &rows, &[2, 2], &[2, 2]);
    // det = 4 = 0, and the first column generates a copy of Z/4 in the image
    let p = presentations(&r, &Mat::from_rows(&rows, 2), &FModule::free(&r, 2), &FModule::free(&r, 2));
    assert_eq!(p.cokernel.exps, vec![2]);
    assert_eq!(p.kernel.exps, vec![2]);
}

#[test]
fn small_examples() {
    let z4 = z4();
    check(&z4, &[vec![2]], &[2], &[2]);
    check(&z4, &[vec![1]], &[2], &[1]);
    check(&z4, &[vec![2]], &[1], &[2]);
    let f2 = CoeffRing::field(2);
    check(&f2, &[vec![1, 1], vec![1, 1]], &[1, 1], &[1, 1]);
    let d = CoeffRing::dual(2);
    // ε acting on F_2[ε]
    check(&d, &[vec![2]], &[2], &[2]);
    check(&d, &[vec![3, 2], vec![2, 1]], &[2, 2], &[2, 2]);
}

#[test]
fn normal_form_diagonalizes() {
    let r = CoeffRing::cyclic(3, 2);
    let a = Mat::from_rows(&[vec![3, 6, 0], vec![1, 4, 3], vec![0, 3, 3]], 3);
    let nf = normal_form(&r, &a);
    let d = nf.u.mul(&r, &a).mul(&r, &nf.v);
    for i in 0..3 {
        for j in 0..3 {
            let want = if i == j && i < nf.vals.len() { r.pi_pow(nf.vals[i]) } else { 0 };
            if i == j && i < nf.vals.len() {
                assert_eq!(r.val(d.get(i, j)), nf.vals[i]);
            } else {
                assert_eq!(d.get(i, j), want);
            }
        }
    }
    assert_eq!(nf.u.mul(&r, &nf.u_inv), Mat::identity(3));
}

fn ring() -> impl Strategy<Value = CoeffRing> {
    prop_oneof![
        Just(CoeffRing::cyclic(2, 2)),
        Just(CoeffRing::cyclic(2, 3)),
        Just(CoeffRing::cyclic(3, 2)),
        Just(CoeffRing::field(3)),
        Just(CoeffRing::dual(2)),
        Just(CoeffRing::dual(3)),
    ]
}

fn case() -> impl Strategy<Value = (CoeffRing, Vec<u32>, Vec<u32>, Vec<Vec<u64>>)> {
    (ring(), 1usize..=3, 1usize..=3).prop_flat_map(|(r, n, m)| {
        let k = r.k;
        let size = r.order();
        (
            Just(r),
            proptest::collection::vec(1..=k, n),
            proptest::collection::vec(1..=k, m),
            proptest::collection::vec(proptest::collection::vec(0..size, n), m),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn presentations_match_enumeration((r, src, tgt, rows) in case()) {
        let a = Arith::of(&r);
        // keep only well-defined maps: π^{e_j} times column j must vanish in the target
        let rows: Vec<Vec<u64>> = rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, &c)| {
                        let gap = tgt[i].saturating_sub(src[j]);
                        a.red(a.mul(a.pi_pow(gap), c), tgt[i])
                    })
                    .collect()
            })
            .collect();
        check(&r, &rows, &src, &tgt);
    }
}
