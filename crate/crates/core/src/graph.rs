//! Preferential attachment generators and the growth graph they produce.
//!
//! Vertices are labelled `1..=t`; vertex `s` arrives at time `s` and every
//! edge records the arrival time of its younger endpoint. `PA_1` is a single
//! vertex without edges.

use std::collections::BTreeMap;
use std::fmt;

use log::warn;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weights::WeightDistribution;

/// Vertex label, `1..=t`.
pub type Vertex = u32;

/// Attachment rule `f` for the variable-outdegree model: tabulated values
/// `f(0), ..., f(n-1)` continued affinely with slope `tail_slope`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AttachmentRule {
    pub values: Vec<f64>,
    pub tail_slope: f64,
}

impl AttachmentRule {
    pub fn affine(gamma: f64, beta0: f64) -> Self {
        Self {
            values: vec![beta0],
            tail_slope: gamma,
        }
    }

    pub fn eval(&self, k: u32) -> f64 {
        let k = k as usize;
        match self.values.get(k) {
            Some(v) => *v,
            None => {
                let last = self.values.len() - 1;
                self.values[last] + self.tail_slope * (k - last) as f64
            }
        }
    }

    /// `gamma_f = lim f(k)/k`.
    pub fn gamma(&self) -> f64 {
        self.tail_slope
    }

    pub fn validate(&self) -> Result<()> {
        if self.values.is_empty() {
            return Err(Error::config("attachment rule needs f(0)"));
        }
        if !(self.tail_slope.is_finite() && self.tail_slope >= 0.0) {
            return Err(Error::config("attachment rule tail slope must be finite and >= 0"));
        }
        if self.values.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::config("attachment rule values must be positive"));
        }
        let f0 = self.eval(0);
        if f0 > 1.0 {
            return Err(Error::config(format!("attachment rule needs f(0) <= 1, got {f0}")));
        }
        if self.eval(1) - f0 >= 1.0 {
            return Err(Error::config("attachment rule needs f(1) - f(0) < 1"));
        }
        // Concavity over the table and its join with the affine tail.
        let n = self.values.len();
        let mut prev_inc = f64::INFINITY;
        for k in 0..n {
            let inc = self.eval(k as u32 + 1) - self.eval(k as u32);
            if inc > prev_inc + 1e-12 {
                return Err(Error::config(format!("attachment rule is not concave at k = {k}")));
            }
            prev_inc = inc;
        }
        if self.tail_slope > prev_inc + 1e-12 {
            return Err(Error::config("attachment rule is not concave at the affine tail"));
        }
        Ok(())
    }
}

/// Parameters of the three models.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelParams {
    /// Fixed outdegree `m`, affine bias `delta > -m`.
    Fpa { m: u32, delta: f64 },
    /// Variable outdegree with `f(k) = gamma k + beta0`.
    Vpa { gamma: f64, beta0: f64 },
    /// Variable outdegree with a general concave rule.
    Gvpa { rule: AttachmentRule },
}

impl ModelParams {
    pub fn fpa(m: u32, delta: f64) -> Result<Self> {
        let p = Self::Fpa { m, delta };
        p.validate()?;
        Ok(p)
    }

    pub fn vpa(gamma: f64, beta0: f64) -> Result<Self> {
        let p = Self::Vpa { gamma, beta0 };
        p.validate()?;
        Ok(p)
    }

    pub fn gvpa(rule: AttachmentRule) -> Result<Self> {
        let p = Self::Gvpa { rule };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Fpa { m, delta } => {
                if *m == 0 {
                    return Err(Error::config("FPA needs m >= 1"));
                }
                if !(delta.is_finite() && *delta > -(*m as f64)) {
                    return Err(Error::config(format!("FPA needs delta > -m, got delta = {delta}, m = {m}")));
                }
                Ok(())
            }
            Self::Vpa { gamma, beta0 } => {
                if !(*gamma > 0.5 && *gamma < 1.0) {
                    return Err(Error::config(format!("VPA needs gamma in (1/2, 1), got {gamma}")));
                }
                self.rule().unwrap().validate().map_err(|_| {
                    Error::config(format!("VPA needs 0 < beta0 <= 1, got {beta0}"))
                })
            }
            Self::Gvpa { rule } => rule.validate(),
        }
    }

    /// The attachment rule of the variable-outdegree models.
    pub fn rule(&self) -> Option<AttachmentRule> {
        match self {
            Self::Fpa { .. } => None,
            Self::Vpa { gamma, beta0 } => Some(AttachmentRule::affine(*gamma, *beta0)),
            Self::Gvpa { rule } => Some(rule.clone()),
        }
    }

    /// Compact whitespace-free label used in edge-list headers.
    pub fn label(&self) -> String {
        match self {
            Self::Fpa { m, delta } => format!("fpa(m={m},delta={delta})"),
            Self::Vpa { gamma, beta0 } => format!("vpa(gamma={gamma},beta0={beta0})"),
            Self::Gvpa { rule } => {
                let vals: Vec<String> = rule.values.iter().map(|v| v.to_string()).collect();
                format!("gvpa(values=[{}],tail_slope={})", vals.join(";"), rule.tail_slope)
            }
        }
    }
}

impl fmt::Display for ModelParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// One edge: `src` arrived at time `born` (so `born == src`) and attached
/// to the older vertex `dst < src`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub born: Vertex,
    pub src: Vertex,
    pub dst: Vertex,
}

/// An undirected multigraph grown one vertex at a time.
///
/// Edge ids index `edges()` and `weights()`. The incidence list of each
/// vertex is ordered by edge birth time, which is `max(v, neighbor)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GrowthGraph {
    t: Vertex,
    variant: String,
    seed: u64,
    edges: Vec<Edge>,
    weights: Option<Vec<f64>>,
    offsets: Vec<usize>,
    incidence: Vec<(Vertex, u32)>,
}

impl GrowthGraph {
    /// Builds a graph from an edge list, checking the growth invariants.
    pub fn from_edges(
        t: Vertex,
        edges: Vec<Edge>,
        weights: Option<Vec<f64>>,
        variant: impl Into<String>,
        seed: u64,
    ) -> Result<Self> {
        if t == 0 {
            return Err(Error::domain("graph needs at least one vertex"));
        }
        let mut last_born = 0;
        for (i, e) in edges.iter().enumerate() {
            if e.born != e.src || e.dst == 0 || e.dst >= e.src || e.src > t {
                return Err(Error::domain(format!(
                    "edge {i} ({} {} {}) violates 1 <= dst < src = born <= t",
                    e.born, e.src, e.dst
                )));
            }
            if e.born < last_born {
                return Err(Error::domain(format!("edge {i} is out of birth order")));
            }
            last_born = e.born;
        }
        if edges.len() > u32::MAX as usize {
            return Err(Error::Resource("more than 2^32 edges".into()));
        }
        if let Some(w) = &weights {
            if w.len() != edges.len() {
                return Err(Error::domain("weight count differs from edge count"));
            }
            if w.iter().any(|x| !(*x >= 0.0)) {
                return Err(Error::domain("weights must be non-negative"));
            }
        }
        let (offsets, incidence) = build_incidence(t, &edges);
        Ok(Self {
            t,
            variant: variant.into(),
            seed,
            edges,
            weights,
            offsets,
            incidence,
        })
    }

    pub fn t(&self) -> Vertex {
        self.t
    }

    pub fn variant(&self) -> &str {
        &self.variant
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    pub fn has_weights(&self) -> bool {
        self.weights.is_some()
    }

    /// Weight of edge `id`. Panics if the graph is unweighted.
    #[inline]
    pub fn weight(&self, id: u32) -> f64 {
        self.weights.as_ref().expect("graph has no weights")[id as usize]
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v >= 1 && v <= self.t
    }

    pub(crate) fn check_vertex(&self, v: Vertex) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::domain(format!("vertex {v} outside [1, {}]", self.t)))
        }
    }

    /// Incident `(neighbor, edge id)` pairs of `v`, ordered by birth time.
    #[inline]
    pub fn incident(&self, v: Vertex) -> &[(Vertex, u32)] {
        &self.incidence[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }

    /// Total degree at the end of the process.
    pub fn degree(&self, v: Vertex) -> usize {
        self.incident(v).len()
    }

    /// Number of edges `v` created on arrival.
    pub fn outdegree(&self, v: Vertex) -> usize {
        self.incident(v).partition_point(|&(w, _)| w < v)
    }

    /// Total degree of `v` counting edges born at or before `s`.
    pub fn degree_at(&self, v: Vertex, s: Vertex) -> Result<usize> {
        if !self.contains(v) || s < v || s > self.t {
            return Err(Error::domain(format!(
                "degree_at needs 1 <= v <= s <= t, got v = {v}, s = {s}, t = {}",
                self.t
            )));
        }
        Ok(self.degree_at_unchecked(v, s))
    }

    #[inline]
    pub(crate) fn degree_at_unchecked(&self, v: Vertex, s: Vertex) -> usize {
        self.incident(v).partition_point(|&(w, _)| w.max(v) <= s)
    }

    /// Indegree of `v` counting edges born at or before `s`.
    pub fn indegree_at(&self, v: Vertex, s: Vertex) -> Result<usize> {
        Ok(self.degree_at(v, s)? - self.outdegree(v))
    }

    /// Minimal weight over the parallel edges joining `u` and `v`, if any.
    pub fn lightest_edge(&self, u: Vertex, v: Vertex) -> Option<(u32, f64)> {
        self.incident(u)
            .iter()
            .filter(|&&(w, _)| w == v)
            .map(|&(_, id)| (id, self.weights.as_ref().map_or(1.0, |ws| ws[id as usize])))
            .min_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)))
    }

    /// Restriction to vertices `[s]` and the edges born by time `s`.
    pub fn snapshot(&self, s: Vertex) -> Result<GrowthGraph> {
        if s < 2 || s > self.t {
            return Err(Error::domain(format!("snapshot time {s} outside [2, {}]", self.t)));
        }
        let n = self.edges.partition_point(|e| e.born <= s);
        let edges = self.edges[..n].to_vec();
        let weights = self.weights.as_ref().map(|w| w[..n].to_vec());
        let (offsets, incidence) = build_incidence(s, &edges);
        Ok(GrowthGraph {
            t: s,
            variant: self.variant.clone(),
            seed: self.seed,
            edges,
            weights,
            offsets,
            incidence,
        })
    }

    /// Replaces the weights; the draw for edge `i` depends only on
    /// `(seed, i)`.
    pub fn assign_weights(&mut self, dist: &WeightDistribution, seed: u64) {
        self.weights = Some(edge_weights(self.edges.len(), dist, seed));
    }

    /// Owned variant of [`GrowthGraph::assign_weights`].
    pub fn with_weights(mut self, dist: &WeightDistribution, seed: u64) -> Self {
        self.assign_weights(dist, seed);
        self
    }

    /// Installs explicit weights, one per edge.
    pub fn set_weights(&mut self, weights: Vec<f64>) -> Result<()> {
        if weights.len() != self.edges.len() {
            return Err(Error::domain("weight count differs from edge count"));
        }
        if weights.iter().any(|x| !(*x >= 0.0)) {
            return Err(Error::domain("weights must be non-negative"));
        }
        self.weights = Some(weights);
        Ok(())
    }

    /// Sum of all indegrees at time `t`; always equals the edge count.
    pub fn total_indegree(&self) -> usize {
        (1..=self.t).map(|v| self.degree(v) - self.outdegree(v)).sum()
    }
}

fn build_incidence(t: Vertex, edges: &[Edge]) -> (Vec<usize>, Vec<(Vertex, u32)>) {
    let mut offsets = vec![0usize; t as usize + 2];
    for e in edges {
        offsets[e.src as usize + 1] += 1;
        offsets[e.dst as usize + 1] += 1;
    }
    for i in 1..offsets.len() {
        offsets[i] += offsets[i - 1];
    }
    let mut fill = offsets.clone();
    let mut incidence = vec![(0, 0); 2 * edges.len()];
    // Edges are in birth order, so each list ends up sorted by birth.
    for (id, e) in edges.iter().enumerate() {
        incidence[fill[e.src as usize]] = (e.dst, id as u32);
        fill[e.src as usize] += 1;
        incidence[fill[e.dst as usize]] = (e.src, id as u32);
        fill[e.dst as usize] += 1;
    }
    (offsets, incidence)
}

/// i.i.d. weights where the draw for edge `i` is read at a fixed position
/// of the seeded ChaCha stream.
pub fn edge_weights(count: usize, dist: &WeightDistribution, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            // One f64 consumes one u64, i.e. two 32-bit words.
            rng.set_word_pos((i as u128) << 1);
            dist.sample(&mut rng)
        })
        .collect()
}

/// `Z_{t,j} = (t-2)(delta+2m) + j-1 + m+delta`.
pub fn connection_normalizer(t: Vertex, j: u32, m: u32, delta: f64) -> Result<f64> {
    if t < 2 || j < 1 || j > m {
        return Err(Error::domain(format!(
            "normalizer needs t >= 2 and 1 <= j <= m, got t = {t}, j = {j}, m = {m}"
        )));
    }
    let m = m as f64;
    Ok((t as f64 - 2.0) * (delta + 2.0 * m) + (j as f64 - 1.0) + m + delta)
}

/// Sequential state of the fixed-outdegree process.
///
/// The connection law of edge `(s, j)` splits into an indegree part, of
/// total mass `(s-2)m + j-1` (the number of edges so far), sampled by
/// picking the target of a uniform past edge, and a constant part of mass
/// `(s-1)(m+delta)`, sampled as a uniform vertex of `[s-1]`. The two masses
/// add up to `Z_{s,j}`.
#[derive(Clone, Debug)]
pub struct FpaSampler {
    m: u32,
    delta: f64,
    s: Vertex,
    j: u32,
    targets: Vec<Vertex>,
    indegree: Vec<u32>,
}

impl FpaSampler {
    /// State right before the first edge of vertex 2.
    pub fn new(m: u32, delta: f64) -> Result<Self> {
        ModelParams::fpa(m, delta)?;
        Ok(Self {
            m,
            delta,
            s: 2,
            j: 1,
            targets: Vec::new(),
            indegree: vec![0; 2],
        })
    }

    /// `(s, j)` of the next edge.
    pub fn position(&self) -> (Vertex, u32) {
        (self.s, self.j)
    }

    pub fn indegree(&self, v: Vertex) -> u32 {
        self.indegree[v as usize]
    }

    /// `(indegree mass, constant mass)` of the next edge.
    pub fn masses(&self) -> (f64, f64) {
        (
            self.targets.len() as f64,
            (self.s - 1) as f64 * (self.m as f64 + self.delta),
        )
    }

    pub fn normalizer(&self) -> f64 {
        connection_normalizer(self.s, self.j, self.m, self.delta).expect("sampler state is valid")
    }

    /// Sum of all candidate numerators, recomputed vertex by vertex.
    pub fn numerator_sum(&self) -> f64 {
        let c = self.m as f64 + self.delta;
        (1..self.s).map(|v| self.indegree[v as usize] as f64 + c).sum()
    }

    /// Law of the next target over `v = 1..s-1` as produced by the two-part
    /// sampler (index `v - 1`).
    pub fn step_law(&self) -> Vec<f64> {
        let (deg_mass, const_mass) = self.masses();
        let z = deg_mass + const_mass;
        let uniform = const_mass / z / (self.s - 1) as f64;
        (1..self.s)
            .map(|v| {
                let via_edge = if deg_mass > 0.0 {
                    (deg_mass / z) * (self.indegree[v as usize] as f64 / deg_mass)
                } else {
                    0.0
                };
                via_edge + uniform
            })
            .collect()
    }

    /// Law of the next target from the defining numerators
    /// `D(v) + m + delta`, normalized by their recomputed sum.
    pub fn naive_step_law(&self) -> Vec<f64> {
        let c = self.m as f64 + self.delta;
        let z = self.numerator_sum();
        (1..self.s).map(|v| (self.indegree[v as usize] as f64 + c) / z).collect()
    }

    fn record(&mut self, target: Vertex) {
        self.targets.push(target);
        self.indegree[target as usize] += 1;
        if self.j == self.m {
            self.j = 1;
            self.s += 1;
            self.indegree.push(0);
        } else {
            self.j += 1;
        }
    }

    /// Draws the next edge with the two-part sampler and returns
    /// `(s, j, target)`.
    pub fn step<R: Rng + ?Sized>(&mut self, rng: &mut R) -> (Vertex, u32, Vertex) {
        let (s, j) = (self.s, self.j);
        let (deg_mass, const_mass) = self.masses();
        let target = if rng.random_bool(deg_mass / (deg_mass + const_mass)) {
            self.targets[rng.random_range(0..self.targets.len())]
        } else {
            rng.random_range(1..s)
        };
        self.record(target);
        (s, j, target)
    }

    /// Forces the next edge to `target` (used to walk through states).
    pub fn force(&mut self, target: Vertex) -> Result<()> {
        if target == 0 || target >= self.s {
            return Err(Error::domain(format!("target {target} outside [1, {})", self.s)));
        }
        self.record(target);
        Ok(())
    }
}

/// Generates `FPA(m, delta)` up to `t` vertices.
pub fn generate_fpa(params: &ModelParams, t: Vertex, seed: u64) -> Result<GrowthGraph> {
    let ModelParams::Fpa { m, delta } = *params else {
        return Err(Error::config("generate_fpa needs FPA parameters"));
    };
    params.validate()?;
    if t < 2 {
        return Err(Error::domain("generation needs t >= 2"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sampler = FpaSampler::new(m, delta)?;
    let mut edges = Vec::with_capacity(m as usize * (t as usize - 1));
    while sampler.position().0 <= t {
        let (s, _, v) = sampler.step(&mut rng);
        edges.push(Edge { born: s, src: s, dst: v });
    }
    GrowthGraph::from_edges(t, edges, None, params.label(), seed)
}

fn connection_probability(rule: &AttachmentRule, indegree: u32, s: Vertex) -> f64 {
    let p = rule.eval(indegree) / s as f64;
    if p > 1.0 {
        warn!("attachment probability f({indegree})/{s} = {p} exceeds 1; clamped");
        1.0
    } else {
        p
    }
}

/// Generates `VPA(f)` / `GVPA(f)` up to `t` vertices.
///
/// Older vertices are bucketed by current indegree. Within a bucket every
/// vertex has the same connection probability `f(k)/s`, so the number of
/// connections is binomial and the connected set is a uniform subset of
/// that size, which is the law of independent per-vertex coins.
pub fn generate_gvpa(params: &ModelParams, t: Vertex, seed: u64) -> Result<GrowthGraph> {
    let rule = variable_rule(params)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut buckets: BTreeMap<u32, Vec<Vertex>> = BTreeMap::new();
    buckets.insert(0, vec![1]);
    let mut edges = Vec::new();
    let mut promoted: Vec<(u32, Vertex)> = Vec::new();
    let mut chosen: Vec<Vertex> = Vec::new();

    for s in 2..=t {
        promoted.clear();
        chosen.clear();
        for (&k, members) in buckets.iter_mut() {
            let p = connection_probability(&rule, k, s);
            let n = members.len();
            let hits = Binomial::new(n as u64, p)
                .expect("probability clamped to [0, 1]")
                .sample(&mut rng) as usize;
            // Partial Fisher-Yates from the back selects a uniform subset.
            for i in 0..hits {
                let last = n - 1 - i;
                let pick = rng.random_range(0..=last);
                members.swap(pick, last);
            }
            for v in members.drain(n - hits..) {
                promoted.push((k + 1, v));
                chosen.push(v);
            }
        }
        buckets.retain(|_, members| !members.is_empty());
        for &(k, v) in &promoted {
            buckets.entry(k).or_default().push(v);
        }
        chosen.sort_unstable();
        edges.extend(chosen.iter().map(|&v| Edge { born: s, src: s, dst: v }));
        buckets.entry(0).or_default().push(s);
    }
    GrowthGraph::from_edges(t, edges, None, params.label(), seed)
}

/// Reference implementation of the variable-outdegree model with one coin
/// per older vertex. Quadratic in `t`.
pub fn generate_gvpa_naive(params: &ModelParams, t: Vertex, seed: u64) -> Result<GrowthGraph> {
    let rule = variable_rule(params)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut indegree = vec![0u32; t as usize + 1];
    let mut edges = Vec::new();
    for s in 2..=t {
        let start = edges.len();
        for v in 1..s {
            if rng.random_bool(connection_probability(&rule, indegree[v as usize], s)) {
                edges.push(Edge { born: s, src: s, dst: v });
            }
        }
        for e in &edges[start..] {
            indegree[e.dst as usize] += 1;
        }
    }
    GrowthGraph::from_edges(t, edges, None, params.label(), seed)
}

fn variable_rule(params: &ModelParams) -> Result<AttachmentRule> {
    params.validate()?;
    params
        .rule()
        .ok_or_else(|| Error::config("variable-outdegree generation needs VPA or GVPA parameters"))
}

/// Generates any of the three models.
pub fn generate(params: &ModelParams, t: Vertex, seed: u64) -> Result<GrowthGraph> {
    if t < 2 {
        return Err(Error::domain("generation needs t >= 2"));
    }
    match params {
        ModelParams::Fpa { .. } => generate_fpa(params, t, seed),
        _ => generate_gvpa(params, t, seed),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizer_examples() {
        assert_eq!(connection_normalizer(2, 1, 1, 0.0).unwrap(), 1.0);
        assert_eq!(connection_normalizer(3, 1, 1, 0.0).unwrap(), 3.0);
        assert_eq!(connection_normalizer(2, 1, 2, -1.0).unwrap(), 1.0);
        assert!(connection_normalizer(1, 1, 1, 0.0).is_err());
        assert!(connection_normalizer(3, 3, 2, 0.0).is_err());
    }

    #[test]
    fn normalizer_matches_numerators_exhaustively() {
        for (m, delta, seed) in [(1, 0.0, 1), (2, -1.0, 2), (3, 1.5, 3), (1, -0.5, 4)] {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut sampler = FpaSampler::new(m, delta).unwrap();
            while sampler.position().0 <= 1000 {
                let z = sampler.normalizer();
                let sum = sampler.numerator_sum();
                assert!(((z - sum) / z).abs() < 1e-9, "m={m} delta={delta} at {:?}", sampler.position());
                let (a, b) = sampler.masses();
                assert!(((a + b - z) / z).abs() < 1e-12);
                sampler.step(&mut rng);
            }
        }
    }

    #[test]
    fn fpa_small_examples() {
        let p = ModelParams::fpa(1, 0.0).unwrap();
        let g = generate_fpa(&p, 2, 7).unwrap();
        assert_eq!(g.edges(), &[Edge { born: 2, src: 2, dst: 1 }]);

        let p = ModelParams::fpa(2, -1.0).unwrap();
        let g = generate_fpa(&p, 3, 7).unwrap();
        assert_eq!(g.edge_count(), 4);
        assert!(g.edges()[2..].iter().all(|e| e.src == 3 && (e.dst == 1 || e.dst == 2)));
        assert_eq!(g.edges()[0].dst, 1);
        assert_eq!(g.edges()[1].dst, 1);
    }

    #[test]
    fn fpa_edge_count_and_birth_order() {
        let p = ModelParams::fpa(3, -2.0).unwrap();
        let g = generate_fpa(&p, 500, 11).unwrap();
        assert_eq!(g.edge_count(), 3 * 499);
        for s in 2..=500 {
            assert_eq!(g.edges().iter().filter(|e| e.born == s).count(), 3);
        }
        assert_eq!(g.total_indegree(), g.edge_count());
        assert!(g.edges().iter().all(|e| e.dst < e.src));
    }

    #[test]
    fn invalid_params_are_rejected_before_sampling() {
        assert!(ModelParams::fpa(0, 0.0).is_err());
        assert!(ModelParams::fpa(2, -2.0).is_err());
        assert!(ModelParams::vpa(0.4, 0.5).is_err());
        assert!(ModelParams::vpa(0.6, 1.5).is_err());
        assert!(ModelParams::vpa(0.6, 0.0).is_err());
        let convex = AttachmentRule {
            values: vec![0.5, 0.6, 1.0],
            tail_slope: 0.6,
        };
        assert!(ModelParams::gvpa(convex).is_err());
        let steep = AttachmentRule {
            values: vec![0.5, 1.6],
            tail_slope: 0.6,
        };
        assert!(ModelParams::gvpa(steep).is_err());
        assert!(matches!(
            generate_fpa(&ModelParams::Fpa { m: 1, delta: -1.0 }, 10, 0),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn gvpa_rule_tail() {
        let rule = AttachmentRule {
            values: vec![0.5, 1.2, 1.8],
            tail_slope: 0.55,
        };
        rule.validate().unwrap();
        assert_eq!(rule.eval(2), 1.8);
        assert!((rule.eval(4) - 2.9).abs() < 1e-12);
        assert_eq!(rule.gamma(), 0.55);
    }

    #[test]
    fn gvpa_two_vertices() {
        let p = ModelParams::vpa(0.6, 0.5).unwrap();
        for seed in 0..50 {
            let g = generate_gvpa(&p, 2, seed).unwrap();
            assert!(g.edge_count() <= 1);
        }
    }

    #[test]
    fn gvpa_has_no_multi_edges_and_conserves_indegree() {
        let p = ModelParams::vpa(0.75, 1.0).unwrap();
        let g = generate_gvpa(&p, 3000, 5).unwrap();
        let mut seen = std::collections::HashSet::new();
        for e in g.edges() {
            assert!(seen.insert((e.src, e.dst)));
        }
        assert_eq!(g.total_indegree(), g.edge_count());
    }

    #[test]
    fn degree_queries() {
        let p = ModelParams::fpa(1, 0.0).unwrap();
        let g = generate_fpa(&p, 50, 3).unwrap();
        assert_eq!(g.degree_at(1, 2).unwrap(), 1);
        assert_eq!(g.indegree_at(50, 50).unwrap(), 0);
        assert!(g.degree_at(50, 50).unwrap() >= 1);
        assert!(g.degree_at(5, 4).is_err());
        assert!(g.degree_at(0, 4).is_err());
        assert!(g.degree_at(3, 51).is_err());
        let total: usize = (1..=50).map(|v| g.indegree_at(v, 50).unwrap()).sum();
        assert_eq!(total, g.edge_count());
    }

    #[test]
    fn snapshot_matches_degree_at() {
        let p = ModelParams::fpa(2, -1.0).unwrap();
        let dist = WeightDistribution::exponential(1.0).unwrap();
        let g = generate_fpa(&p, 300, 9).unwrap().with_weights(&dist, 4);
        assert_eq!(g.snapshot(300).unwrap(), g);
        assert_eq!(g.snapshot(2).unwrap().edge_count(), 2);
        assert!(g.snapshot(1).is_err());
        assert!(g.snapshot(301).is_err());
        for s in [2, 17, 150, 299] {
            let snap = g.snapshot(s).unwrap();
            for v in 1..=s {
                assert_eq!(snap.degree_at(v, s).unwrap(), g.degree_at(v, s).unwrap());
                assert_eq!(snap.degree(v), g.degree_at(v, s).unwrap());
            }
            assert_eq!(snap.weights().unwrap(), &g.weights().unwrap()[..snap.edge_count()]);
        }
    }

    #[test]
    fn weights_are_edge_indexed() {
        let dist = WeightDistribution::exponential(1.0).unwrap();
        let long = edge_weights(1000, &dist, 77);
        let short = edge_weights(10, &dist, 77);
        assert_eq!(&long[..10], &short[..]);
        assert_eq!(long, edge_weights(1000, &dist, 77));
        assert_ne!(long, edge_weights(1000, &dist, 78));

        let ones = edge_weights(100, &WeightDistribution::constant(1.0).unwrap(), 1);
        assert!(ones.iter().all(|&w| w == 1.0));

        let many = edge_weights(100_000, &dist, 3);
        let mean = many.iter().sum::<f64>() / many.len() as f64;
        assert!((mean - 1.0).abs() < 0.02, "mean {mean}");
    }

    #[test]
    fn generation_is_reproducible() {
        let p = ModelParams::fpa(2, -0.5).unwrap();
        assert_eq!(generate_fpa(&p, 2000, 1).unwrap(), generate_fpa(&p, 2000, 1).unwrap());
        let q = ModelParams::vpa(0.6, 0.5).unwrap();
        assert_eq!(generate_gvpa(&q, 2000, 1).unwrap(), generate_gvpa(&q, 2000, 1).unwrap());
    }
}
