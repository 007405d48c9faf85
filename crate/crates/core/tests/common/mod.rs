//! Shared helpers for the integration tests: a brute-force path oracle and
//! random small instances.
#![allow(dead_code)]

use pafpp::graph::{generate, AttachmentRule, GrowthGraph, ModelParams, Vertex};
use pafpp::WeightDistribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `(d_G, d_L, d_H)` from `u` to every vertex by enumerating all simple
/// paths, built from the raw edge list. Index 0 is unused.
pub fn brute_force(g: &GrowthGraph, u: Vertex) -> Vec<Option<(u32, f64, u32)>> {
    let n = g.t() as usize;
    let weights = g.weights().expect("weighted instance");
    let mut adj: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n + 1];
    for (e, &w) in g.edges().iter().zip(weights) {
        adj[e.src as usize].push((e.dst as usize, w));
        adj[e.dst as usize].push((e.src as usize, w));
    }
    let mut best: Vec<Option<(u32, f64, u32)>> = vec![None; n + 1];
    let mut on_path = vec![false; n + 1];

    fn dfs(
        x: usize,
        weight: f64,
        hops: u32,
        adj: &[Vec<(usize, f64)>],
        on_path: &mut [bool],
        best: &mut [Option<(u32, f64, u32)>],
    ) {
        best[x] = Some(match best[x] {
            None => (hops, weight, hops),
            Some((dg, dl, dh)) => {
                let lex_better = weight < dl || (weight == dl && hops < dh);
                let (dl, dh) = if lex_better { (weight, hops) } else { (dl, dh) };
                (dg.min(hops), dl, dh)
            }
        });
        on_path[x] = true;
        for &(y, w) in &adj[x] {
            if !on_path[y] {
                dfs(y, weight + w, hops + 1, adj, on_path, best);
            }
        }
        on_path[x] = false;
    }

    dfs(u as usize, 0.0, 0, &adj, &mut on_path, &mut best);
    best
}

/// Random valid parameters for one of the three models, chosen by `which`.
pub fn random_model(which: u32, rng: &mut impl Rng) -> ModelParams {
    match which % 3 {
        0 => {
            let m = rng.random_range(1..=2u32);
            let delta = rng.random_range(-(m as f64) + 0.05..2.0);
            ModelParams::fpa(m, delta).unwrap()
        }
        1 => ModelParams::vpa(rng.random_range(0.55..0.95), rng.random_range(0.1..1.0)).unwrap(),
        _ => {
            // Concave: f(0) = b, increments shrinking from below 1.
            let b = rng.random_range(0.2..1.0);
            let d1 = rng.random_range(0.3..0.95);
            let d2 = rng.random_range(0.1..d1);
            let tail = rng.random_range(0.05..d2);
            let rule = AttachmentRule {
                values: vec![b, b + d1, b + d1 + d2],
                tail_slope: tail,
            };
            ModelParams::gvpa(rule).unwrap()
        }
    }
}

/// A weighted graph with `t <= t_max` from a random model.
pub fn random_instance(seed: u64, t_max: Vertex) -> GrowthGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let model = random_model(rng.random_range(0..3), &mut rng);
    let t = rng.random_range(2..=t_max);
    let rate = rng.random_range(0.5..2.0);
    generate(&model, t, rng.random())
        .unwrap()
        .with_weights(&WeightDistribution::exponential(rate).unwrap(), rng.random())
}

/// Median of finite values.
pub fn median(values: &[f64]) -> f64 {
    pafpp::harness::stats::median(values).expect("non-empty sample")
}

/// One law from each family, plus nested shifts and a table.
pub fn families() -> Vec<WeightDistribution> {
    let exp1 = WeightDistribution::exponential(1.0).unwrap();
    vec![
        exp1.clone(),
        WeightDistribution::exponential(3.5).unwrap(),
        WeightDistribution::uniform(0.0, 1.0).unwrap(),
        WeightDistribution::uniform(0.5, 2.0).unwrap(),
        WeightDistribution::weibull(2.0, 1.0).unwrap(),
        WeightDistribution::weibull(0.5, 3.0).unwrap(),
        WeightDistribution::constant(1.5).unwrap(),
        WeightDistribution::shifted(exp1.clone(), 1.0).unwrap(),
        WeightDistribution::shifted(WeightDistribution::shifted(exp1, 0.5).unwrap(), 0.25).unwrap(),
        WeightDistribution::quantile_table(vec![(0.1, 0.0), (0.4, 1.0), (0.5, 1.0), (1.0, 7.0)]).unwrap(),
    ]
}

/// Levels spanning the whole of `(0, 1]`, dense near 0 and near 1.
pub fn galois_levels() -> Vec<f64> {
    let mut ys: Vec<f64> = (1..=1000).map(|i| i as f64 / 1000.0).collect();
    ys.extend((1..300).map(|k| 10f64.powi(-k)));
    ys.extend((1..16).map(|k| 1.0 - 10f64.powi(-k)));
    ys.extend([0.1, 0.4, 0.5, 0.1 + 1e-12, 0.4 - 1e-12]);
    ys
}

/// `cdf(quantile(y)) >= y`, `quantile(cdf(x)) <= x` wherever
/// `0 < cdf(x) < 1`, both without slack, and for tables the quantile is the
/// left-most point reaching `y`.
pub fn check_galois(dist: &WeightDistribution, ys: &[f64]) -> Result<(), String> {
    for &y in ys {
        let q = dist.quantile(y).map_err(|e| e.to_string())?;
        let c = dist.cdf(q);
        if c < y {
            return Err(format!("{}: cdf(quantile({y:e})) = {c:e}", dist.label()));
        }
        if let WeightDistribution::QuantileTable { points } = dist {
            let scan = points.iter().find(|(p, _)| *p >= y).map(|&(_, x)| x).unwrap();
            if q != scan {
                return Err(format!("table quantile({y}) = {q}, scan gives {scan}"));
            }
        }
    }
    for i in 0..2000 {
        let x = i as f64 * 0.005;
        let c = dist.cdf(x);
        if c > 0.0 && c < 1.0 {
            let back = dist.quantile(c).map_err(|e| e.to_string())?;
            if back > x {
                return Err(format!("{}: quantile(cdf({x})) = {back}", dist.label()));
            }
        }
    }
    Ok(())
}

/// Frequencies of `{min >= quantile(n^{-1+xi})}` and
/// `{min <= quantile(n^{-1-xi})}` over `trials` minima of `n` standard
/// exponentials.
pub fn min_of_iid_frequencies(n: usize, xi: f64, trials: usize, seed: u64) -> (f64, f64) {
    let dist = WeightDistribution::exponential(1.0).unwrap();
    let hi = dist.quantile((n as f64).powf(-1.0 + xi)).unwrap();
    let lo = dist.quantile((n as f64).powf(-1.0 - xi)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut above, mut below) = (0usize, 0usize);
    for _ in 0..trials {
        let min = (0..n).map(|_| dist.sample(&mut rng)).fold(f64::INFINITY, f64::min);
        above += (min >= hi) as usize;
        below += (min <= lo) as usize;
    }
    (above as f64 / trials as f64, below as f64 / trials as f64)
}

/// Distances between old vertices never increase as the graph grows.
pub fn check_sprinkling(g: &GrowthGraph, seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = g.t();
    for _ in 0..5 {
        let s = rng.random_range(2..=t);
        let snap = g.snapshot(s).map_err(|e| e.to_string())?;
        for _ in 0..10 {
            let (u, v) = (rng.random_range(1..=s), rng.random_range(1..=s));
            let early = pafpp::weighted_distance(&snap, u, v).unwrap().weight;
            let late = pafpp::weighted_distance(g, u, v).unwrap().weight;
            if late > early {
                return Err(format!("d_L({u},{v}) grew from {early} at s = {s} to {late} at t = {t}"));
            }
        }
    }
    Ok(())
}

/// `beta_k` nondecreasing in `k`, `sigma_n` nondecreasing in `n`, finite
/// exactly up to the component size, and balls of radius `sigma_n` hold at
/// least `n` vertices.
pub fn check_sigma_beta(g: &GrowthGraph, q: Vertex) -> Result<(), String> {
    let mut ex = pafpp::Explorer::new(g);
    let betas = ex.beta_profile(q, 12).unwrap();
    if betas[0] != 0.0 || betas.windows(2).any(|w| w[1] < w[0]) {
        return Err(format!("beta profile of {q} not monotone: {betas:?}"));
    }
    let component = ex.ball(q, pafpp::Metric::G, g.t() as f64).unwrap().len();
    let mut prev = 0.0;
    for n in 1..=component + 1 {
        let s = ex.sigma_n(q, n).unwrap();
        if s < prev || (n <= component) != s.is_finite() {
            return Err(format!("sigma_{n}({q}) = {s} after {prev}, component {component}"));
        }
        if n <= component && ex.ball(q, pafpp::Metric::L, s).unwrap().len() < n {
            return Err(format!("ball of radius sigma_{n}({q}) holds fewer than {n} vertices"));
        }
        prev = s;
    }
    Ok(())
}
