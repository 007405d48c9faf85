//! Property tests over random models, weight laws and instances.

mod common;

use pafpp::graph::{generate, ModelParams, Vertex};
use pafpp::harness::{load_graph, save_graph};
use pafpp::pathfinder::{audit_trace, greedy_path_in, layers};
use pafpp::{k_star, layer_plan, weighted_distance, Explorer, LayerVariant, WeightDistribution};
use proptest::prelude::*;

fn weight_law() -> impl Strategy<Value = WeightDistribution> {
    prop_oneof![
        (0.1..10.0f64).prop_map(|r| WeightDistribution::exponential(r).unwrap()),
        (0.2..5.0f64, 0.1..4.0f64).prop_map(|(k, s)| WeightDistribution::weibull(k, s).unwrap()),
        (0.0..2.0f64, 0.01..3.0f64).prop_map(|(lo, w)| WeightDistribution::uniform(lo, lo + w).unwrap()),
        (0.0..3.0f64, 0.1..5.0f64).prop_map(|(shift, r)| {
            WeightDistribution::shifted(WeightDistribution::exponential(r).unwrap(), shift).unwrap()
        }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn searches_agree_with_path_enumeration(seed in any::<u64>()) {
        let g = common::random_instance(seed, 9);
        let mut ex = Explorer::new(&g);
        for u in 1..=g.t() {
            let oracle = common::brute_force(&g, u);
            for v in 1..=g.t() {
                let path = ex.weighted_distance(u, v).unwrap();
                match oracle[v as usize] {
                    None => prop_assert!(!path.is_connected()),
                    Some((dg, dl, dh)) => {
                        prop_assert_eq!(ex.graph_distance(u, v).unwrap(), Some(dg));
                        prop_assert_eq!(path.weight, dl);
                        prop_assert_eq!(path.hops, Some(dh));
                    }
                }
            }
        }
    }

    #[test]
    fn metric_axioms(seed in any::<u64>(), picks in prop::collection::vec((1u32..=1000, 1u32..=1000, 1u32..=1000), 10)) {
        let g = common::random_instance(seed, 120);
        let mut ex = Explorer::new(&g);
        let at = |x: u32| 1 + (x - 1) % g.t();
        for (a, b, c) in picks {
            let (a, b, c) = (at(a), at(b), at(c));
            let ab = ex.weighted_distance(a, b).unwrap();
            let bc = ex.weighted_distance(b, c).unwrap().weight;
            let ac = ex.weighted_distance(a, c).unwrap().weight;
            let ba = ex.weighted_distance(b, a).unwrap().weight;
            prop_assert!(ac <= (ab.weight + bc) * (1.0 + 1e-12));
            prop_assert!((ab.weight - ba).abs() <= 1e-12 * ab.weight.max(1.0) || ab.weight == ba);
            if let Some(dh) = ab.hops {
                let dg = ex.graph_distance(a, b).unwrap().unwrap();
                prop_assert!(dg <= dh);
                // The reported path realises the reported distance.
                prop_assert_eq!(ab.vertices.len() as u32, dh + 1);
                let mut sum = 0.0;
                for w in ab.vertices.windows(2) {
                    sum += g.lightest_edge(w[0], w[1]).expect("path edge exists").1;
                }
                prop_assert!((sum - ab.weight).abs() <= 1e-12 * sum.max(1.0));
            }
        }
    }

    #[test]
    fn constant_weights_collapse_to_graph_distance(seed in any::<u64>(), c in 0.1..5.0f64) {
        let g = common::random_instance(seed, 150)
            .with_weights(&WeightDistribution::constant(c).unwrap(), 0);
        let mut ex = Explorer::new(&g);
        for v in [1, g.t() / 2 + 1, g.t()] {
            let dg = ex.graph_distance(1, v).unwrap();
            let path = ex.weighted_distance(1, v).unwrap();
            prop_assert_eq!(path.hops, dg);
            if let Some(dg) = dg {
                prop_assert!((path.weight - c * dg as f64).abs() <= 1e-12 * path.weight.max(1.0));
            }
        }
    }

    #[test]
    fn quantile_and_cdf_form_a_galois_pair(dist in weight_law()) {
        prop_assert_eq!(common::check_galois(&dist, &common::galois_levels()), Ok(()));
    }

    #[test]
    fn distances_shrink_as_the_graph_grows(seed in any::<u64>()) {
        let g = common::random_instance(seed, 300);
        prop_assert_eq!(common::check_sprinkling(&g, seed), Ok(()));
    }

    #[test]
    fn ball_profiles_are_monotone(seed in any::<u64>(), q in 1u32..300) {
        let g = common::random_instance(seed, 300);
        prop_assert_eq!(common::check_sigma_beta(&g, 1 + (q - 1) % g.t()), Ok(()));
    }

    #[test]
    fn generation_is_a_function_of_the_seed(seed in any::<u64>(), which in 0u32..3) {
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        let model = common::random_model(which, &mut rng);
        let a = generate(&model, 200, seed).unwrap();
        let b = generate(&model, 200, seed).unwrap();
        prop_assert_eq!(a.edges(), b.edges());
    }

    #[test]
    fn saved_graphs_load_identically(seed in any::<u64>()) {
        let g = common::random_instance(seed, 200);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.txt");
        save_graph(&g, &path).unwrap();
        let back = load_graph(&path).unwrap();
        prop_assert_eq!(back.t(), g.t());
        prop_assert_eq!(back.edges(), g.edges());
        prop_assert_eq!(back.weights(), g.weights());
    }

    #[test]
    fn layer_plans_climb_to_the_cap(s0 in 1.5..200.0f64, t in 10u64..100_000_000, tau in 2.05..2.95f64, alpha in 0.5..0.99f64) {
        let plan = match layer_plan(s0, t, alpha, tau, LayerVariant::Tight) {
            Ok(plan) => plan,
            // Refused only when some exponent (1 - eps_k)/(tau - 2) is at most 1.
            Err(_) => {
                prop_assert!((1.0 - 0.25) / (tau - 2.0) <= 1.0);
                return Ok(());
            }
        };
        prop_assert_eq!(plan.s.len(), plan.k_t as usize + 1);
        prop_assert!(plan.s.windows(2).all(|w| w[1] > w[0]));
        prop_assert_eq!(*plan.s.last().unwrap(), plan.cap);
        prop_assert!(k_star(t, tau).unwrap() <= k_star(t * 10, tau).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn greedy_traces_always_audit(seed in any::<u64>(), s0 in 2.0..6.0f64) {
        let model = ModelParams::fpa(2, -1.0).unwrap();
        let t: Vertex = 3000;
        let g = generate(&model, t, seed)
            .unwrap()
            .with_weights(&WeightDistribution::exponential(1.0).unwrap(), seed);
        let plan = layer_plan(s0, t as u64, 0.5, 3.0 - 1.0 / 2.0, LayerVariant::Tight).unwrap();
        let ls = layers(&g, &plan, 0.5).unwrap();
        for &start in ls.layer(0).iter().take(5) {
            let trace = greedy_path_in(&g, start, &ls).unwrap();
            prop_assert!(audit_trace(&g, &trace, &ls).passed(), "{:?}", trace);
            let direct = weighted_distance(&g, start, trace.endpoint()).unwrap().weight;
            prop_assert!(direct <= trace.total_weight * (1.0 + 1e-12));
        }
    }
}
