mod common;

use std::sync::Arc;

use gorenstein::algebra::{indecomposable_projective, opposite};
use gorenstein::fieldmat::Matrix;
use gorenstein::format::{parse_module_file, write_module_file};
use gorenstein::rep::{direct_sum, dual_over, is_isomorphic, strip_projective_summands, IsoOptions, Representation};
use gorenstein::resolution::{ext_dims, min_resolution, syzygy, Resolution};
use gorenstein::sg::{is_n_sg_injective, is_n_sg_projective, sg_projective_period_set, Outcome, SgDetector, SgOptions};
use proptest::prelude::*;

use common::*;

fn ext(m: &Representation, n: &Representation, lo: usize, hi: usize) -> Vec<usize> {
    let mut res = Resolution::new(m);
    ext_dims(&mut res, n, lo..=hi)
}

fn invertible(p: u32, d: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(0..p, d * d)
        .prop_map(move |v| Matrix::from_vec(field(p), d, d, v).unwrap())
        .prop_filter("invertible", Matrix::is_invertible)
}

/// A module together with a random change of basis of it.
fn rebased(n: usize, p: u32, max_total: usize) -> impl Strategy<Value = (Representation, Representation)> {
    arb_rsz(n, p, max_total).prop_flat_map(move |m| {
        let gs: Vec<_> = m.dims().iter().map(|&d| invertible(p, d)).collect();
        (Just(m), gs)
    })
    .prop_map(|(m, g)| {
        let alg = m.algebra().clone();
        let maps = alg
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let inv = g[a.source - 1].inverse().unwrap();
                &(&g[a.target - 1] * m.arrow_map(ai)) * &inv
            })
            .collect();
        let n = Representation::new(alg, m.dims().to_vec(), maps).unwrap();
        (m, n)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ext_matches_dimension_shifting_oracle(m in arb_rsz(3, 2, 5), n in arb_rsz(3, 2, 4)) {
        let n = n.with_algebra(m.algebra().clone());
        let fast = ext(&m, &n, 0, 4);
        for (i, d) in fast.iter().enumerate() {
            prop_assert_eq!(*d, ext_dim_oracle(&m, &n, i), "degree {}", i);
        }
    }

    #[test]
    fn ext_shifts_along_syzygies(m in arb_rsz(4, 3, 5), n in arb_rsz(4, 3, 4)) {
        let n = n.with_algebra(m.algebra().clone());
        let omega = syzygy(&m);
        prop_assert_eq!(ext(&m, &n, 2, 5), ext(&omega, &n, 1, 4));
    }

    #[test]
    fn ext_is_additive(a in arb_rsz(3, 3, 3), b in arb_rsz(3, 3, 3), n in arb_rsz(3, 3, 3)) {
        let alg = n.algebra().clone();
        let a = a.with_algebra(alg.clone());
        let b = b.with_algebra(alg);
        let sum = direct_sum(&[a.clone(), b.clone()]).unwrap().sum;
        let lhs = ext(&sum, &n, 0, 4);
        let rhs: Vec<usize> = ext(&a, &n, 0, 4).iter().zip(ext(&b, &n, 0, 4)).map(|(x, y)| x + y).collect();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn ext_is_compatible_with_duality(m in arb_rsz(3, 2, 4), n in arb_rsz(3, 2, 4)) {
        let alg = m.algebra().clone();
        let n = n.with_algebra(alg.clone());
        let op = Arc::new(opposite(&alg));
        let dm = dual_over(&m, op.clone());
        let dn = dual_over(&n, op);
        prop_assert_eq!(ext(&m, &n, 0, 4), ext(&dn, &dm, 0, 4));
    }

    #[test]
    fn resolutions_are_complexes_with_radical_images(m in arb_rsz(3, 3, 5)) {
        let mut res = min_resolution(&m, 5);
        for k in 1..5 {
            let d_k = res.boundary(k);
            let d_next = res.boundary(k + 1);
            if !d_k.source().is_zero() && !d_next.source().is_zero() {
                prop_assert!(d_k.compose(&d_next).is_zero());
            }
            // Minimality: the image of d_k lies in the radical, so it kills the top.
            let omega = res.syzygy(k);
            let hom_to_simple: usize = (1..=3).map(|v| hom_dim_oracle(&omega, &gorenstein::rep::simple(m.algebra(), v))).sum();
            prop_assert_eq!(hom_to_simple, res.term_vertices(k).len());
        }
    }

    #[test]
    fn iso_test_agrees_with_exhaustive_search(m in arb_rsz(3, 2, 4), n in arb_rsz(3, 2, 4)) {
        let n = n.with_algebra(m.algebra().clone());
        let verdict = is_isomorphic(&m, &n, &IsoOptions::default());
        let truth = brute_force_isomorphic(&m, &n);
        prop_assert!(verdict.is_certified());
        prop_assert_eq!(verdict.is_isomorphic(), truth);
        if let Some(w) = verdict.witness() {
            prop_assert!(verify_iso_witness(w));
        }
    }

    #[test]
    fn iso_test_finds_base_changes((m, n) in rebased(2, 3, 4)) {
        let verdict = is_isomorphic(&m, &n, &IsoOptions::default());
        prop_assert!(verify_iso_witness(verdict.witness().expect("modules are isomorphic")));
    }

    #[test]
    fn iso_test_finds_base_changes_over_c3((m, n) in rebased(3, 2, 5)) {
        let verdict = is_isomorphic(&m, &n, &IsoOptions::with_seed(7));
        prop_assert!(verify_iso_witness(verdict.witness().expect("modules are isomorphic")));
    }

    #[test]
    fn stripping_is_idempotent_and_exact(m in arb_rsz(3, 3, 6)) {
        let s = strip_projective_summands(&m);
        prop_assert!(s.embedding.is_isomorphism());
        prop_assert!(verify_iso_witness(&s.embedding));
        let again = strip_projective_summands(&s.stable_part);
        prop_assert!(again.projective_vertices.is_empty());
        let total: usize = s.projective_vertices.iter().map(|&v| indecomposable_projective(m.algebra(), v).total_dim()).sum();
        prop_assert_eq!(total + s.stable_part.total_dim(), m.total_dim());
    }

    #[test]
    fn verdicts_ignore_projective_summands(m in arb_rsz(3, 2, 5), v in 1usize..=3, n in 1usize..=4) {
        let p = indecomposable_projective(m.algebra(), v);
        let mp = direct_sum(&[m.clone(), p]).unwrap().sum;
        let opts = SgOptions::default();
        prop_assert_eq!(is_n_sg_projective(&m, n, &opts).outcome, is_n_sg_projective(&mp, n, &opts).outcome);
    }

    #[test]
    fn periods_are_closed_under_multiples_and_syzygies(m in arb_rsz(4, 2, 5)) {
        let opts = SgOptions::default();
        let mut det = SgDetector::new(&m, &opts);
        let set = det.period_set(8).unwrap();
        prop_assert!(set.all_certified());
        prop_assert!(set.members_closed());
        // Every module over this algebra is periodic with period dividing 4.
        prop_assert!(set.contains(4) && set.contains(8));
        let omega = syzygy(&m);
        for &n in &set.members {
            prop_assert!(is_n_sg_projective(&omega, n, &opts).is_certified_yes());
        }
    }

    #[test]
    fn flavors_agree_over_self_injective_algebras(m in arb_rsz(3, 3, 4), n in 1usize..=3) {
        let opts = SgOptions::default();
        let p = is_n_sg_projective(&m, n, &opts).outcome;
        let i = is_n_sg_injective(&m, n, &opts).outcome;
        prop_assert_eq!(p, i);
        prop_assert!(p == Outcome::CertifiedYes || p == Outcome::CertifiedNo);
    }

    #[test]
    fn module_files_round_trip(m in arb_rsz(3, 3, 6)) {
        let text = write_module_file("m", &m);
        let back = parse_module_file(&text, m.algebra()).unwrap().module;
        prop_assert_eq!(back.dims(), m.dims());
        prop_assert_eq!(back.maps(), m.maps());
        prop_assert_eq!(write_module_file("m", &back), text);
    }
}

#[test]
fn period_sets_of_all_small_modules_are_consistent() {
    let alg = cn(2, 3);
    let opts = SgOptions::default();
    for m in enumerate_rsz(&alg, 3) {
        let set = sg_projective_period_set(&m, 6, &opts).unwrap();
        assert!(set.all_certified());
        assert!(set.members_closed(), "{:?}: {:?}", m.dims(), set.members);
        assert!(set.contains(2));
    }
}

#[test]
fn path_counts_match_enumeration() {
    for n in 2..=6 {
        let alg = cn(n, 2);
        assert_eq!(alg.dimension(), count_paths_oracle(&alg));
    }
}
