//! Inner core, degree layers, alpha-connectors, and the greedy path that
//! climbs from a moderately high-degree vertex to the inner core.
//!
//! Everything is evaluated on the graph at time `t`, with degrees of old
//! vertices measured at the earlier time `floor(alpha t)`. A connector is a
//! vertex born after `floor(alpha t)`; since edges point from the younger
//! endpoint, every edge touching a connector was born after that time too.

use serde::{Deserialize, Serialize};

use crate::asymptotics::{inner_core_threshold, LayerPlan};
use crate::error::{Error, Result};
use crate::graph::{GrowthGraph, Vertex};

/// `floor(alpha t)`, the last old vertex.
pub fn old_horizon(graph: &GrowthGraph, alpha: f64) -> Result<Vertex> {
    if !(alpha >= 0.5 && alpha < 1.0) {
        return Err(Error::domain(format!("alpha {alpha} outside [1/2, 1)")));
    }
    let horizon = (alpha * graph.t() as f64).floor() as Vertex;
    if horizon < 3 {
        return Err(Error::domain(format!("floor(alpha t) = {horizon} is below 3")));
    }
    Ok(horizon)
}

/// Old vertices whose degree at time `floor(alpha t)` is at least `threshold`,
/// sorted by that degree (descending) then label.
fn old_vertices_above(graph: &GrowthGraph, horizon: Vertex, threshold: f64) -> Vec<(Vertex, usize)> {
    let mut out: Vec<(Vertex, usize)> = (1..=horizon)
        .map(|v| (v, graph.degree_at_unchecked(v, horizon)))
        .filter(|&(_, d)| d as f64 >= threshold)
        .collect();
    out.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    out
}

/// The inner core: old vertices with degree at least
/// [`inner_core_threshold`] at time `floor(alpha t)`, with their degrees.
pub fn inner_core(graph: &GrowthGraph, alpha: f64, tau: f64) -> Result<Vec<(Vertex, usize)>> {
    let horizon = old_horizon(graph, alpha)?;
    let threshold = inner_core_threshold(graph.t() as u64, alpha, tau)?;
    Ok(old_vertices_above(graph, horizon, threshold))
}

/// Nested vertex sets of one layer plan.
#[derive(Clone, Debug, PartialEq)]
pub struct Layers {
    horizon: Vertex,
    /// `level[v]`: largest `k` with `v` in layer `k`, or `None` outside layer 0.
    level: Vec<Option<u32>>,
    /// Members of each layer, sorted by label.
    members: Vec<Vec<Vertex>>,
}

impl Layers {
    pub fn horizon(&self) -> Vertex {
        self.horizon
    }

    pub fn count(&self) -> usize {
        self.members.len()
    }

    pub fn layer(&self, k: usize) -> &[Vertex] {
        &self.members[k]
    }

    pub fn contains(&self, k: usize, v: Vertex) -> bool {
        matches!(self.level.get(v as usize), Some(Some(l)) if *l as usize >= k)
    }
}

/// `L_k = {x <= floor(alpha t) : degree_at(x, floor(alpha t)) >= s_k}`.
pub fn layers(graph: &GrowthGraph, plan: &LayerPlan, alpha: f64) -> Result<Layers> {
    if plan.t != graph.t() as u64 || plan.alpha != alpha {
        return Err(Error::domain(format!(
            "layer plan computed for (t = {}, alpha = {}), graph has (t = {}, alpha = {alpha})",
            plan.t,
            plan.alpha,
            graph.t()
        )));
    }
    let horizon = old_horizon(graph, alpha)?;
    let mut level = vec![None; graph.t() as usize + 1];
    let mut members = vec![Vec::new(); plan.s.len()];
    for v in 1..=horizon {
        let d = graph.degree_at_unchecked(v, horizon) as f64;
        let top = plan.s.iter().take_while(|&&s| d >= s).count();
        if top > 0 {
            level[v as usize] = Some(top as u32 - 1);
            for layer in members.iter_mut().take(top) {
                layer.push(v);
            }
        }
    }
    Ok(Layers {
        horizon,
        level,
        members,
    })
}

/// A cherry `x - y - z` through the connector `y`, using the lightest of
/// any parallel edges on each side.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cherry {
    pub connector: Vertex,
    pub target: Vertex,
    pub first_edge: u32,
    pub second_edge: u32,
    /// Sum of the two edge weights (2 on an unweighted graph).
    pub weight: f64,
}

/// `A_k(x)`: cherries `(y, z)` with `y > floor(alpha t)`, `z` in `layer`,
/// `z != x`, and edges `x - y`, `y - z`. Sorted by `(y, z)`.
pub fn alpha_connectors(graph: &GrowthGraph, x: Vertex, layer: &Layers, k: usize) -> Result<Vec<Cherry>> {
    let horizon = layer.horizon;
    if x == 0 || x > horizon {
        return Err(Error::domain(format!("vertex {x} is not old (horizon {horizon})")));
    }
    if k >= layer.count() {
        return Err(Error::domain(format!("layer {k} not in plan")));
    }
    let mut out = Vec::new();
    let mut connectors: Vec<Vertex> = graph
        .incident(x)
        .iter()
        .map(|&(y, _)| y)
        .filter(|&y| y > horizon)
        .collect();
    connectors.sort_unstable();
    connectors.dedup();
    for y in connectors {
        let (first_edge, first_w) = graph.lightest_edge(x, y).expect("adjacent");
        let mut targets: Vec<Vertex> = graph
            .incident(y)
            .iter()
            .map(|&(z, _)| z)
            .filter(|&z| z != x && layer.contains(k, z))
            .collect();
        targets.sort_unstable();
        targets.dedup();
        for z in targets {
            let (second_edge, second_w) = graph.lightest_edge(y, z).expect("adjacent");
            out.push(Cherry {
                connector: y,
                target: z,
                first_edge,
                second_edge,
                weight: first_w + second_w,
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", content = "step", rename_all = "snake_case")]
pub enum GreedyOutcome {
    ReachedInnerCore,
    FailedAtStep(u32),
}

/// One step of the greedy path: from `from` via `connector` to `target`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GreedyStep {
    pub k: u32,
    pub from: Vertex,
    pub connector: Vertex,
    pub target: Vertex,
    pub first_edge: u32,
    pub second_edge: u32,
    pub weight: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GreedyPathTrace {
    pub start: Vertex,
    pub steps: Vec<GreedyStep>,
    pub outcome: GreedyOutcome,
    pub total_weight: f64,
    /// Connectors used in more than one step.
    pub reused_connectors: Vec<Vertex>,
}

impl GreedyPathTrace {
    /// Last vertex reached.
    pub fn endpoint(&self) -> Vertex {
        self.steps.last().map_or(self.start, |s| s.target)
    }

    pub fn succeeded(&self) -> bool {
        self.outcome == GreedyOutcome::ReachedInnerCore
    }

    /// The walk `start, y_1, pi_1, ..., y_K, pi_K`.
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut out = vec![self.start];
        for s in &self.steps {
            out.push(s.connector);
            out.push(s.target);
        }
        out
    }
}

/// Builds the greedy path from `start`: at step `k` it takes the lightest
/// cherry of `A_k(pi_{k-1})`, ties broken by the smallest `(y, z)`.
pub fn greedy_path(graph: &GrowthGraph, start: Vertex, plan: &LayerPlan, alpha: f64) -> Result<GreedyPathTrace> {
    let layers = layers(graph, plan, alpha)?;
    greedy_path_in(graph, start, &layers)
}

/// [`greedy_path`] with precomputed layers.
pub fn greedy_path_in(graph: &GrowthGraph, start: Vertex, layers: &Layers) -> Result<GreedyPathTrace> {
    if !layers.contains(0, start) {
        return Err(Error::domain(format!("start vertex {start} is not in layer 0")));
    }
    let mut steps: Vec<GreedyStep> = Vec::new();
    let mut current = start;
    let mut total = 0.0;
    let mut outcome = GreedyOutcome::ReachedInnerCore;
    for k in 1..layers.count() {
        let cherries = alpha_connectors(graph, current, layers, k)?;
        // Cherries arrive sorted by (y, z); min_by keeps the first minimum.
        let Some(best) = cherries
            .iter()
            .min_by(|a, b| a.weight.total_cmp(&b.weight))
        else {
            outcome = GreedyOutcome::FailedAtStep(k as u32);
            break;
        };
        steps.push(GreedyStep {
            k: k as u32,
            from: current,
            connector: best.connector,
            target: best.target,
            first_edge: best.first_edge,
            second_edge: best.second_edge,
            weight: best.weight,
        });
        total += best.weight;
        current = best.target;
    }
    let mut connectors: Vec<Vertex> = steps.iter().map(|s| s.connector).collect();
    connectors.sort_unstable();
    let mut reused: Vec<Vertex> = connectors.windows(2).filter(|w| w[0] == w[1]).map(|w| w[0]).collect();
    reused.dedup();
    Ok(GreedyPathTrace {
        start,
        steps,
        outcome,
        total_weight: total,
        reused_connectors: reused,
    })
}

/// Result of checking a trace against the graph.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct TraceAudit {
    pub edges_exist: bool,
    pub weights_match: bool,
    pub age_discipline: bool,
    pub layer_membership: bool,
    pub total_matches: bool,
    pub endpoint_in_top_layer: bool,
}

impl TraceAudit {
    pub fn passed(&self) -> bool {
        self.edges_exist
            && self.weights_match
            && self.age_discipline
            && self.layer_membership
            && self.total_matches
            && self.endpoint_in_top_layer
    }
}

/// Re-checks a trace: edges exist with the recorded endpoints and weights,
/// every edge is younger than the horizon, every `pi_k` lies in layer `k`,
/// the total is the exact sum, and a successful trace ends in the top layer.
pub fn audit_trace(graph: &GrowthGraph, trace: &GreedyPathTrace, layers: &Layers) -> TraceAudit {
    let horizon = layers.horizon;
    let mut audit = TraceAudit {
        edges_exist: true,
        weights_match: true,
        age_discipline: true,
        layer_membership: layers.contains(0, trace.start),
        total_matches: true,
        endpoint_in_top_layer: true,
    };
    let edge_ok = |id: u32, a: Vertex, b: Vertex| {
        graph.edges().get(id as usize).is_some_and(|e| {
            (e.src == a && e.dst == b) || (e.src == b && e.dst == a)
        })
    };
    let weight_of = |id: u32| graph.weights().map_or(1.0, |w| w[id as usize]);
    let mut prev = trace.start;
    let mut total = 0.0;
    for step in &trace.steps {
        if step.from != prev
            || !edge_ok(step.first_edge, prev, step.connector)
            || !edge_ok(step.second_edge, step.connector, step.target)
        {
            audit.edges_exist = false;
        }
        if weight_of(step.first_edge) + weight_of(step.second_edge) != step.weight {
            audit.weights_match = false;
        }
        for id in [step.first_edge, step.second_edge] {
            if graph.edges().get(id as usize).is_none_or(|e| e.born <= horizon) {
                audit.age_discipline = false;
            }
        }
        if step.connector <= horizon || !layers.contains(step.k as usize, step.target) {
            audit.layer_membership = false;
        }
        total += step.weight;
        prev = step.target;
    }
    audit.total_matches = total == trace.total_weight;
    if trace.succeeded() {
        audit.endpoint_in_top_layer = layers.contains(layers.count() - 1, trace.endpoint());
    }
    audit
}
