use proptest::prelude::*;
use rand::Rng;

use quasi_veronese::configs::{proj_equivalent, veronese_config, Configuration};
use quasi_veronese::exactlin::{int, Mat};
use quasi_veronese::fcurves::{fakhruddin_degree, FPartition, SymFPartition};
use quasi_veronese::gale::{dual_linearization, gale_involution_check, gale_transform, goppa_witness, self_association_matrix};
use quasi_veronese::gitstab::{cont_predicate, hassett_contracted, semistability, walls};
use quasi_veronese::sample;
use quasi_veronese::trees::{cut_criterion, semistable_partitions};
use quasi_veronese::{Param, Status};

fn small_matrix() -> impl Strategy<Value = Mat> {
    (1usize..5, 1usize..7).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-4i64..=4, r * c).prop_map(move |v| Mat::from_fn(r, c, |i, j| int(v[i * c + j])))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn kernel_is_annihilated_and_canonical(m in small_matrix(), k in 1i64..5) {
        let ker = m.kernel_basis();
        prop_assert_eq!(m.rank() + ker.rows(), m.cols());
        for v in ker.row_vecs() {
            prop_assert!(m.mul_vec(&v).iter().all(|x| *x == int(0)));
        }
        let scaled = Mat::from_fn(m.rows(), m.cols(), |i, j| &m[(i, j)] * int(k));
        prop_assert_eq!(scaled.kernel_basis(), ker);
    }

    #[test]
    fn random_change_of_frame_is_equivalent(seed in any::<u64>(), d in 1usize..4, extra in 1usize..4) {
        let mut r = sample::rng(seed);
        let c = sample::general_configuration(&mut r, d, d + 1 + extra);
        let g = loop {
            let g = Mat::from_fn(d + 1, d + 1, |_, _| int(r.gen_range(-3..=3)));
            if g.rank() == d + 1 {
                break g;
            }
        };
        let mut moved = &g * c.matrix();
        for j in 0..c.n() {
            moved.scale_column(j, &int(r.gen_range(1..=5) * if r.gen_bool(0.5) { 1 } else { -1 }));
        }
        let moved = Configuration::new(moved).unwrap();
        prop_assert!(proj_equivalent(&c, &moved).unwrap());
    }

    #[test]
    fn gale_is_involutive(seed in any::<u64>(), n in 4usize..9) {
        let mut r = sample::rng(seed);
        let d = r.gen_range(1..=n - 3);
        let c = sample::general_configuration(&mut r, d, n);
        prop_assert!(gale_involution_check(&c).unwrap());
    }

    #[test]
    fn gale_commutes_with_relabelling(seed in any::<u64>(), n in 4usize..9) {
        let mut r = sample::rng(seed);
        let d = r.gen_range(1..=n - 3);
        let c = sample::general_configuration(&mut r, d, n);
        let mut perm: Vec<usize> = (0..n).collect();
        rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), &mut r);
        let lhs = gale_transform(&c.select(&perm)).unwrap();
        let rhs = gale_transform(&c).unwrap().select(&perm);
        prop_assert!(proj_equivalent(&lhs, &rhs).unwrap());
    }

    #[test]
    fn goppa_witness_holds(seed in any::<u64>(), n in 4usize..10) {
        let mut r = sample::rng(seed);
        let d = r.gen_range(1..=n - 3);
        let ts = sample::distinct_rationals(&mut r, n, &[]);
        prop_assert!(goppa_witness(&ts, d).unwrap().ok());
    }

    #[test]
    fn self_association_vanishes(seed in any::<u64>(), m in 1usize..7) {
        let ts = sample::distinct_rationals(&mut sample::rng(seed), 2 * m, &[]);
        prop_assert!(self_association_matrix(&ts).unwrap().is_zero());
    }

    #[test]
    fn veronese_points_are_stable_for_symmetric_weights(seed in any::<u64>(), d in 1usize..4, extra in 2usize..5) {
        let n = d + 1 + extra;
        let ts: Vec<Param> = sample::distinct_rationals(&mut sample::rng(seed), n, &[]).into_iter().map(Param::Finite).collect();
        let c = veronese_config(d, &ts).unwrap();
        let l = quasi_veronese::Linearization::symmetric(d, n).unwrap();
        prop_assert_eq!(semistability(&c, &l).unwrap().status, Status::Stable);
    }

    #[test]
    fn dual_linearization_is_involutive(seed in any::<u64>(), n in 4usize..10) {
        let mut r = sample::rng(seed);
        let d = r.gen_range(1..=n - 3);
        let l = sample::random_linearization(&mut r, d, n, false);
        let back = dual_linearization(&dual_linearization(&l).unwrap()).unwrap();
        prop_assert_eq!(back.weights(), l.weights());
        prop_assert_eq!(walls(&l).len(), walls(&dual_linearization(&l).unwrap()).len());
    }

    #[test]
    fn fakhruddin_degree_ignores_leg_order(a in 1usize..7, b in 1usize..7, c in 1usize..7, e in 1usize..7, k in 2usize..6) {
        let n = a + b + c + e;
        prop_assume!(k + 2 <= n);
        let f = SymFPartition::from_unsorted([a, b, c, e]).unwrap();
        let g = SymFPartition::from_unsorted([e, c, a, b]).unwrap();
        prop_assert_eq!(f, g);
        prop_assert_eq!(fakhruddin_degree(n, k, &f).unwrap(), fakhruddin_degree(n, n - k, &g).unwrap());
    }

    #[test]
    fn hassett_contraction_is_certified(seed in any::<u64>(), n in 4usize..11) {
        let mut r = sample::rng(seed);
        let d = r.gen_range(1..=n - 3);
        let l = sample::random_linearization(&mut r, d, n, false);
        let mut owner: Vec<usize> = (0..4).chain((4..n).map(|_| r.gen_range(0..4))).collect();
        rand::seq::SliceRandom::shuffle(owner.as_mut_slice(), &mut r);
        let mut blocks: [Vec<usize>; 4] = Default::default();
        for (i, &b) in owner.iter().enumerate() {
            blocks[b].push(i);
        }
        let p = FPartition::new(n, blocks).unwrap();
        if hassett_contracted(&l, &p).unwrap() {
            prop_assert!(cont_predicate(&l, &p).unwrap().is_some());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn surviving_partitions_pass_the_cut_test(seed in any::<u64>(), comps in 1usize..4, n in 5usize..8) {
        let mut r = sample::rng(seed);
        let d = r.gen_range(1..=(n - 3).min(3));
        let tree = sample::stable_tree(&mut r, n, comps).unwrap();
        let off_wall = r.gen_bool(0.5);
        let l = sample::random_linearization(&mut r, d, n, off_wall);
        let sel = semistable_partitions(&tree, &l).unwrap();
        for (deg, _) in &sel.entries {
            prop_assert!(cut_criterion(&tree, deg, &l));
        }
    }
}
