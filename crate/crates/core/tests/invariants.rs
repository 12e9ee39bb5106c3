use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mclab::catalog;
use mclab::dims::{ds_dimension, exponential_dimension, is_pseudo_cube, natarajan_dimension, pseudo_cube_core, vc_dimension};
use mclab::gen::{gen_torus, random_class, random_pseudo_cube, star_union};
use mclab::learn::{exact_expected_error, loo_bad_count, mc_error, Predictor};
use mclab::oig::{avg_degree, greedy_orientation, optimal_orientation, OneInclusionGraph, Rational};
use mclab::shift::shift_to_fixed_point;
use mclab::{Budget, ConceptClass, FiniteDistribution, LabeledExample, Sample};

fn class_strategy() -> impl Strategy<Value = ConceptClass> {
    (1usize..=3, 2usize..=4, 1usize..=12, any::<u64>())
        .prop_map(|(n, p, words, seed)| random_class(&mut ChaCha8Rng::seed_from_u64(seed), n, p, words))
}

/// Worst optimal orientation value over projections onto at most `len` points.
fn worst_outdeg(class: &ConceptClass, len: usize) -> usize {
    use itertools::Itertools;
    (1..=len.min(class.domain_size()))
        .flat_map(|k| (0..class.domain_size()).combinations(k))
        .map(|pts| optimal_orientation(&OneInclusionGraph::build(&class.project(&pts).unwrap()).unwrap()).1)
        .max()
        .unwrap_or(0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dimension_order(class in class_strategy()) {
        let b = Budget::default();
        let nat = natarajan_dimension(&class, &b).unwrap().points.len();
        let ds = ds_dimension(&class, &b).unwrap().value;
        prop_assert!(nat <= ds);
        if class.is_binary() {
            prop_assert_eq!(vc_dimension(&class, &b).unwrap().value, nat);
        }
    }

    #[test]
    fn core_is_a_pseudo_cube(class in class_strategy()) {
        let core = pseudo_cube_core(&class);
        prop_assert!(core.is_empty() || is_pseudo_cube(&core));
        prop_assert!(core.words().iter().all(|w| class.contains(w)));
    }

    #[test]
    fn claim_on_ds_plus_one_samples(class in class_strategy(), seed in any::<u64>()) {
        let b = Budget::default();
        let ds = ds_dimension(&class, &b).unwrap().value;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = class.word(rng.gen_range(0..class.len())).to_vec();
        let sample: Sample = (0..=ds).map(|_| {
            let x = rng.gen_range(0..class.domain_size());
            LabeledExample::new(x, w[x])
        }).collect();
        let bad = loo_bad_count(&Predictor::one_inclusion(class), &sample).unwrap();
        prop_assert!(bad <= ds);
    }

    #[test]
    fn exact_error_within_orientation_bound(class in class_strategy(), seed in any::<u64>(), n in 0usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = class.word(rng.gen_range(0..class.len())).to_vec();
        let mut atoms = Vec::new();
        for x in 0..class.domain_size() {
            if rng.gen_bool(0.7) {
                atoms.push((LabeledExample::new(x, w[x]), rng.gen_range(0.1..1.0)));
            }
        }
        prop_assume!(!atoms.is_empty());
        let total: f64 = atoms.iter().map(|a| a.1).sum();
        let dist = FiniteDistribution::new(atoms.into_iter().map(|(e, p)| (e, p / total)).collect()).unwrap();
        let pred = Predictor::one_inclusion(class.clone());
        let exact = exact_expected_error(&pred, &dist, n, &Budget::default()).unwrap();
        let bound = worst_outdeg(&class, n + 1) as f64 / (n + 1) as f64;
        prop_assert!(exact <= bound + 1e-9, "exact {} > bound {}", exact, bound);
        let mc = mc_error(&pred, &dist, n, 2000, seed).unwrap();
        prop_assert!((mc.mean - exact).abs() <= 3.0 * mc.std_err + 1e-9 || mc.std_err == 0.0 && (mc.mean - exact).abs() < 1e-9,
            "mc {} +- {} vs exact {}", mc.mean, mc.std_err, exact);
    }

    #[test]
    fn shifting_preserves_size(class in class_strategy()) {
        let t = shift_to_fixed_point(&class, &Budget::default()).unwrap();
        prop_assert_eq!(t.final_class.len(), class.len());
        prop_assert!(t.check_invariants().is_ok());
    }

    #[test]
    fn orientation_within_four_exponential_dimensions(class in class_strategy()) {
        let b = Budget::default();
        let de = exponential_dimension(&class, &b).unwrap().value;
        let g = OneInclusionGraph::build(&class).unwrap();
        prop_assert!(optimal_orientation(&g).1 <= 4 * de);
        prop_assert!(greedy_orientation(&g, 4 * de).is_some());
        let fixed = shift_to_fixed_point(&class, &b).unwrap().final_class;
        let avd = avg_degree(&OneInclusionGraph::build(&fixed).unwrap());
        let de_fixed = exponential_dimension(&fixed, &b).unwrap().value as u64;
        prop_assert!(avd <= Rational::from_integer(2 * de_fixed), "avd {} > 2 d_E {}", avd, de_fixed);
    }

    #[test]
    fn orientation_lower_bound_on_pseudo_cubes(seed in any::<u64>(), d in 1usize..=3) {
        let cube = random_pseudo_cube(&mut ChaCha8Rng::seed_from_u64(seed), d, 30);
        let (_, k) = optimal_orientation(&OneInclusionGraph::build(&cube).unwrap());
        prop_assert!(2 * k >= d);
    }
}

#[test]
fn predictions_are_deterministic() {
    let hex = catalog::hexagon();
    let p = Predictor::one_inclusion(hex);
    let s = Sample::from_pairs(&[(0, 1)]);
    let first = p.predict(&s, 1).unwrap();
    for _ in 0..5 {
        assert_eq!(p.predict(&s, 1).unwrap(), first);
    }
}

#[test]
fn star_union_of_hexagon_and_torus() {
    let b = Budget::default();
    let u = star_union(&[catalog::hexagon(), gen_torus(&b).unwrap().class]).unwrap();
    assert_eq!(natarajan_dimension(&u, &b).unwrap().points.len(), 1);
    assert!(ds_dimension(&u, &b).unwrap().value >= 3);
}
