//! Statistical checks of the graph samplers against their defining laws.

use pafpp::graph::{generate, generate_gvpa, generate_gvpa_naive, AttachmentRule, FpaSampler, ModelParams};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Two-sample Kolmogorov-Smirnov statistic.
fn ks_statistic(mut a: Vec<f64>, mut b: Vec<f64>) -> f64 {
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (mut i, mut j, mut d) = (0, 0, 0f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / a.len() as f64 - j as f64 / b.len() as f64).abs());
    }
    d
}

/// Rejection threshold at level 0.001.
fn ks_critical(n: usize, m: usize) -> f64 {
    1.949 * ((n + m) as f64 / (n * m) as f64).sqrt()
}

#[test]
fn fpa_empirical_step_matches_law() {
    // Walk to a state with uneven indegrees, then redraw its next edge.
    let mut sampler = FpaSampler::new(2, -0.5).unwrap();
    for target in [1, 1, 2, 1, 3, 1, 2, 4, 1] {
        sampler.force(target).unwrap();
    }
    let law = sampler.step_law();
    let n = 200_000;
    let mut counts = vec![0usize; law.len()];
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..n {
        let (_, _, target) = sampler.clone().step(&mut rng);
        counts[target as usize - 1] += 1;
    }
    let chi2: f64 = counts
        .iter()
        .zip(&law)
        .map(|(&c, &p)| (c as f64 - n as f64 * p).powi(2) / (n as f64 * p))
        .sum();
    // 4 degrees of freedom; the 0.999 quantile is 18.47.
    assert_eq!(law.len(), 5);
    assert!(chi2 < 18.47, "chi-square {chi2} for counts {counts:?} against {law:?}");
}

#[test]
fn fpa_step_law_matches_definition_for_random_parameters() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for m in 1..=4 {
        for delta in [-(m as f64) + 0.01, -0.3, 0.0, 2.5] {
            let mut sampler = FpaSampler::new(m, delta).unwrap();
            for _ in 0..300 {
                let fast = sampler.step_law();
                let naive = sampler.naive_step_law();
                let err = fast.iter().zip(&naive).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
                assert!(err < 1e-12, "m={m} delta={delta} at {:?}: {err}", sampler.position());
                assert!((fast.iter().sum::<f64>() - 1.0).abs() < 1e-12);
                assert!((sampler.numerator_sum() - sampler.normalizer()).abs() < 1e-9 * sampler.normalizer());
                sampler.step(&mut rng);
            }
        }
    }
}

#[test]
fn vpa_first_edge_probability() {
    let model = ModelParams::vpa(0.6, 0.5).unwrap();
    let runs = 100_000;
    let hits = (0..runs)
        .filter(|&seed| generate(&model, 2, seed).unwrap().edge_count() == 1)
        .count();
    let p = hits as f64 / runs as f64;
    assert!((p - 0.25).abs() <= 0.005, "P(2 -> 1) = {p}");
}

#[test]
fn gvpa_bucket_sampler_matches_per_vertex_coins() {
    let rule = AttachmentRule {
        values: vec![0.7, 1.3, 1.7],
        tail_slope: 0.35,
    };
    let model = ModelParams::gvpa(rule).unwrap();
    let (t, runs) = (500, 1000u64);
    let stats = |naive: bool| {
        let mut edges = Vec::new();
        let mut first = Vec::new();
        for r in 0..runs {
            let seed = r + if naive { 1 << 32 } else { 0 };
            let g = if naive {
                generate_gvpa_naive(&model, t, seed)
            } else {
                generate_gvpa(&model, t, seed)
            }
            .unwrap();
            edges.push(g.edge_count() as f64);
            first.push(g.degree(1) as f64);
        }
        (edges, first)
    };
    let (fast_edges, fast_first) = stats(false);
    let (naive_edges, naive_first) = stats(true);
    let crit = ks_critical(runs as usize, runs as usize);
    let d_edges = ks_statistic(fast_edges, naive_edges);
    let d_first = ks_statistic(fast_first, naive_first);
    assert!(d_edges < crit, "edge counts: D = {d_edges}, critical {crit}");
    assert!(d_first < crit, "degree of vertex 1: D = {d_first}, critical {crit}");
}

#[test]
fn ks_statistic_detects_a_shift() {
    let a: Vec<f64> = (0..1000).map(|i| i as f64).collect();
    let b: Vec<f64> = (0..1000).map(|i| i as f64 + 200.0).collect();
    assert!((ks_statistic(a.clone(), b) - 0.2).abs() < 1e-12);
    assert_eq!(ks_statistic(a.clone(), a), 0.0);
}
