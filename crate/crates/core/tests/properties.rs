use proptest::prelude::*;

use slrev::canonical::{
    basic_weyr_matrix, centralizer_pattern_check, jordan_block, jordan_matrix, sample_centralizer, weyr_of,
    JordanBlock, WeyrStructure,
};
use slrev::matrix::{permute_similarity, PermutationMap};
use slrev::reversal::{
    det_sign_of_involutive_reverser, involutive_witness, omega_closed, omega_general, omega_general_recurrence,
    omega_recurrence, pair_blocks, reverser_sample, sl_reverser_witness, DetSignPrediction,
};
use slrev::verify::oracles::lemma_verdicts;
use slrev::{
    check_witness, is_strongly_reversible, parse_scalar, ExactMatrix, Field, GaussianRational, JordanSpec, Partition,
};

fn scalar() -> impl Strategy<Value = GaussianRational> {
    (-20i64..=20, 1i64..=9, -20i64..=20, 1i64..=9).prop_map(|(a, b, c, d)| GaussianRational::from_parts(a, b, c, d))
}

fn nonzero() -> impl Strategy<Value = GaussianRational> {
    scalar().prop_filter("nonzero", |z| !z.is_zero())
}

fn matrix(n: usize) -> impl Strategy<Value = ExactMatrix> {
    proptest::collection::vec(scalar(), n * n).prop_map(move |v| ExactMatrix::new(n, n, v).unwrap())
}

fn partition() -> impl Strategy<Value = Partition> {
    proptest::collection::vec(1usize..=6, 1..=6).prop_map(|v| Partition::from_unsorted(v).unwrap())
}

fn pool_scalar() -> impl Strategy<Value = GaussianRational> {
    prop_oneof![
        Just(GaussianRational::from_integer(1)),
        Just(GaussianRational::from_integer(-1)),
        Just(GaussianRational::from_integer(2)),
        Just(GaussianRational::from_ratio(1, 2)),
        Just(GaussianRational::i()),
        Just(-GaussianRational::i()),
        Just(GaussianRational::from_parts(1, 1, 1, 1)),
        Just(GaussianRational::from_parts(1, 2, -1, 2)),
    ]
}

/// Specs of size at most `max_n` built from a pool closed under inversion.
/// Half of the blocks are mirrored so that reversible specs are common.
fn spec(max_n: usize) -> impl Strategy<Value = JordanSpec> {
    proptest::collection::vec((pool_scalar(), 1usize..=4, any::<bool>()), 1..=5).prop_map(move |raw| {
        let mut blocks = Vec::new();
        let mut total = 0;
        for (l, s, mirror) in raw {
            let needed = if mirror { 2 * s } else { s };
            if total + needed > max_n {
                continue;
            }
            total += needed;
            if mirror {
                blocks.push(JordanBlock::new(l.inv().unwrap(), s));
            }
            blocks.push(JordanBlock::new(l, s));
        }
        if blocks.is_empty() {
            blocks.push(JordanBlock::new(GaussianRational::from_integer(1), 1));
        }
        JordanSpec::new(blocks).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in nonzero()) {
        prop_assert_eq!(a.add_ref(&b), b.add_ref(&a));
        prop_assert_eq!(a.mul_ref(&b), b.mul_ref(&a));
        prop_assert_eq!(a.mul_ref(&b).mul_ref(&c), a.mul_ref(&b.mul_ref(&c)));
        prop_assert_eq!(a.add_ref(&b).mul_ref(&c), a.mul_ref(&c).add_ref(&b.mul_ref(&c)));
        prop_assert!(c.mul_ref(&c.inv().unwrap()).is_one());
        prop_assert!(a.sub_ref(&a).is_zero());
        prop_assert_eq!(a.conj().conj(), a.clone());
    }

    #[test]
    fn display_parse_round_trip(a in scalar()) {
        prop_assert_eq!(parse_scalar(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn power_law(z in nonzero(), p in -6i64..=6, q in -6i64..=6) {
        prop_assert_eq!(z.pow(p + q).unwrap(), z.pow(p).unwrap().mul_ref(&z.pow(q).unwrap()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn determinant_is_multiplicative(a in matrix(3), b in matrix(3)) {
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.det().unwrap(), a.det().unwrap().mul_ref(&b.det().unwrap()));
    }

    #[test]
    fn inverse_is_two_sided(a in matrix(4)) {
        match a.inverse() {
            Ok(inv) => {
                prop_assert!(a.mul(&inv).unwrap().is_identity());
                prop_assert!(inv.mul(&a).unwrap().is_identity());
            }
            Err(_) => prop_assert!(a.det().unwrap().is_zero()),
        }
    }

    #[test]
    fn matrix_json_round_trip(a in matrix(3)) {
        let text = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<ExactMatrix>(&text).unwrap(), a);
    }

    #[test]
    fn permutation_similarity_is_conjugation(images in Just((0..5).collect::<Vec<usize>>()).prop_shuffle(), a in matrix(5)) {
        let p = PermutationMap::new(images).unwrap();
        let pm: ExactMatrix = p.to_matrix();
        let direct = pm.mul(&a).unwrap().mul(&pm.inverse().unwrap()).unwrap();
        prop_assert_eq!(permute_similarity(&p, &a).unwrap(), direct);
    }

    #[test]
    fn conjugate_partition(p in partition()) {
        let c = p.conjugate();
        prop_assert_eq!(c.conjugate(), p.clone());
        prop_assert_eq!(c.clone(), p.transpose_diagram());
        prop_assert_eq!(c.total(), p.total());
        prop_assert_eq!(c.largest(), p.len());
    }

    #[test]
    fn omega_constructions_agree(l in nonzero(), n in 1usize..=8) {
        let o = omega_closed(&l, n).unwrap();
        prop_assert_eq!(&o, &omega_recurrence(&l, n).unwrap());
        prop_assert!(o.mul(&omega_closed(&l.inv().unwrap(), n).unwrap()).unwrap().is_identity());
    }

    #[test]
    fn general_omega_reverses(l in nonzero(), x in proptest::collection::vec(scalar(), 1..=6), x1 in nonzero()) {
        let mut x = x;
        x[0] = x1;
        let n = x.len();
        let g = omega_general(&l, &x, n).unwrap();
        prop_assert_eq!(&g, &omega_general_recurrence(&l, &x, n).unwrap());
        let lhs = g.mul(&jordan_block(&l.inv().unwrap(), n)).unwrap();
        let rhs = jordan_block(&l, n).inverse().unwrap().mul(&g).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn duality_permutation_reproduces_weyr(s in spec(10)) {
        let form = weyr_of(&s).unwrap();
        prop_assert_eq!(permute_similarity(&form.permutation, &jordan_matrix(&s)).unwrap(), form.matrix);
        for w in &form.structures {
            prop_assert_eq!(&w.sizes, &s.jordan_structure(&w.eigenvalue).conjugate());
        }
    }

    #[test]
    fn centralizer_samples(p in partition(), l in nonzero(), seed in any::<u64>()) {
        let w = WeyrStructure::new(l, p);
        let k = sample_centralizer(&w, seed).unwrap();
        let wm = basic_weyr_matrix(&w);
        prop_assert_eq!(k.mul(&wm).unwrap(), wm.mul(&k).unwrap());
        prop_assert!(centralizer_pattern_check(&w, &k).unwrap());
    }

    #[test]
    fn spec_json_round_trip(s in spec(10)) {
        prop_assert_eq!(serde_json::from_str::<JordanSpec>(&s.to_json()).unwrap(), s);
    }

    #[test]
    fn classifier_and_constructors_agree(s in spec(8)) {
        let report = is_strongly_reversible(&s);
        prop_assert_eq!(report.reversible, pair_blocks(&s).reversible);
        if report.reversible {
            prop_assert_eq!((s.n() - report.p - report.q) % 2, 0);
            let sl = sl_reverser_witness(&s).unwrap();
            prop_assert!(sl.reverses && sl.determinant.is_one());
            prop_assert!(check_witness(&sl.a, &sl.g).unwrap().reverses);
            let prediction = det_sign_of_involutive_reverser(&s).unwrap();
            prop_assert_eq!(prediction == DetSignPrediction::Free, report.condition1);
        }
        match involutive_witness(&s) {
            Ok(w) => {
                prop_assert!(report.strongly_reversible);
                prop_assert!(check_witness(&w.a, &w.g).unwrap().all_pass());
            }
            Err(_) => prop_assert!(!report.strongly_reversible),
        }
        for (_, verdict) in lemma_verdicts(&s) {
            prop_assert_eq!(verdict, report.strongly_reversible);
        }
    }

    #[test]
    fn reverser_coset_and_scaling(s in spec(8), seed in any::<u64>(), c in nonzero()) {
        prop_assume!(pair_blocks(&s).reversible);
        let a = jordan_matrix(&s);
        let r1 = reverser_sample(&s, seed).unwrap();
        let r2 = reverser_sample(&s, seed.wrapping_add(1)).unwrap();
        let prod = r1.mul(&r2).unwrap();
        prop_assert_eq!(prod.mul(&a).unwrap(), a.mul(&prod).unwrap());
        prop_assert!(check_witness(&a, &r1.scale(&c)).unwrap().reverses);
    }
}
