use std::sync::Arc;

use alcove_calculus::affine_weyl::simple_reflections_sp;
use alcove_calculus::alcoves::{fold_to_closure, in_closed_fundamental_alcove, uparrow_leq};
use alcove_calculus::groth::convert_basis;
use alcove_calculus::levi::{all_levi_subsets, choose_mu};
use alcove_calculus::oracle::{brute_n_i, brute_orbit, brute_uparrow};
use alcove_calculus::sections::{skeleton_from_char, theta_transform};
use alcove_calculus::{
    Basis, GVector, LeviDatum, RootSystem, SectionKind, SectionSkeleton, Weight,
};
use proptest::prelude::*;

const P: i64 = 5;

fn system(t: &str) -> Arc<RootSystem> {
    Arc::new(RootSystem::from_spec(t).unwrap())
}

fn weight2() -> impl Strategy<Value = Weight> {
    prop::collection::vec(-12i64..=12, 2).prop_map(Weight)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fold_lands_in_closed_alcove(x in weight2()) {
        let rs = system("B2");
        let (w, base) = fold_to_closure(&rs, &x, P).unwrap();
        prop_assert!(in_closed_fundamental_alcove(&rs, &base, P));
        prop_assert_eq!(w.dot(&base), x);
    }

    #[test]
    fn orbit_rep_is_in_generator_closure(x in weight2(), which in 0usize..4) {
        let rs = system("A2");
        let levi = &all_levi_subsets(2)[which];
        let datum = LeviDatum::new(Arc::clone(&rs), levi, P).unwrap();
        let rep = datum.orbit_rep(&x);
        prop_assert!(datum.in_closed_ci(&rep));
        let orbit = brute_orbit(&x, &rs, levi, P, 60).unwrap();
        prop_assert!(orbit.contains(&rep));
    }

    #[test]
    fn n_i_matches_residue_closure(x in weight2(), which in 0usize..4) {
        let rs = system("B2");
        let levi = &all_levi_subsets(2)[which];
        let datum = LeviDatum::new(Arc::clone(&rs), levi, P).unwrap();
        prop_assert_eq!(datum.n_i(&x).unwrap(), brute_n_i(&rs, levi, P, &x));
    }

    #[test]
    fn uparrow_matches_closure(a in prop::collection::vec(-6i64..=6, 2), b in prop::collection::vec(-6i64..=6, 2)) {
        let rs = system("A2");
        let (mu, lambda) = (Weight(a), Weight(b));
        prop_assert_eq!(uparrow_leq(&rs, &mu, &lambda, P), brute_uparrow(&rs, &mu, &lambda, P).unwrap());
    }

    #[test]
    fn basis_conversion_round_trips(coeffs in prop::collection::vec(-3i64..=3, 1..5), which in 0usize..4) {
        let rs = system("A2");
        let levi = &all_levi_subsets(2)[which];
        let datum = LeviDatum::new(Arc::clone(&rs), levi, P).unwrap();
        let labels = [[0, 0], [3, 0], [0, 3], [3, 3], [8, 0]];
        let terms = coeffs
            .iter()
            .zip(labels.iter())
            .map(|(&c, l)| (datum.orbit_rep(&Weight(l.to_vec())), c));
        let v = GVector::from_terms(Basis::Zbar, rs.zero(), terms);
        let there = convert_basis(&v, Basis::Nabla, &datum).unwrap();
        let back = convert_basis(&there, Basis::Zbar, &datum).unwrap();
        prop_assert_eq!(back, v.clone());
        prop_assert_eq!(GVector::from_json(&v.to_json()).unwrap(), v);
    }

    #[test]
    fn theta_transform_doubles_on_second_application(counts in prop::collection::vec(0u64..=3, 3)) {
        let rs = system("A1");
        let datum = LeviDatum::new(Arc::clone(&rs), &[], P).unwrap();
        let sk = SectionSkeleton::from_sizes(
            SectionKind::Deltabar,
            [0i64, 8, 10].iter().zip(&counts).map(|(&l, &c)| (Weight(vec![l]), c)),
        );
        for s in simple_reflections_sp(&rs, P).unwrap() {
            let setup = choose_mu(&rs, &s, P).unwrap();
            let once = theta_transform(&sk, &setup, &datum).unwrap();
            let twice = theta_transform(&once, &setup, &datum).unwrap();
            prop_assert_eq!(twice.total(), 2 * once.total());
            prop_assert_eq!(SectionSkeleton::from_json(&once.to_json()).unwrap(), once);
        }
    }
}

#[test]
fn skeleton_of_character_counts_nabla_multiplicities() {
    let rs = system("A1");
    let datum = LeviDatum::new(Arc::clone(&rs), &[0], P).unwrap();
    let m = GVector::from_terms(
        Basis::Nabla,
        rs.zero(),
        [(Weight(vec![0]), 2), (Weight(vec![8]), 1)],
    );
    let sk = skeleton_from_char(&m, SectionKind::Deltabar, &datum).unwrap();
    assert_eq!(
        sk.to_json(),
        r#"{"kind":"DELTABAR","sizes":[{"label":[0],"count":2},{"label":[8],"count":1}]}"#
    );
}
