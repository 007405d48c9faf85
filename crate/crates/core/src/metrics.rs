//! Graph distance, weighted distance, hopcount, neighbourhoods, and the
//! explosion functionals `beta_k` and `sigma_n`.
//!
//! Edges are undirected for every query. Weighted shortest paths minimize
//! the lexicographic key `(total weight, hop count)`; among paths with equal
//! key, each vertex keeps the predecessor with the smallest label, which
//! makes the realizing path deterministic. Weight comparisons are exact.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{GrowthGraph, Vertex};

/// Weighted distance, hopcount, and one realizing path.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathResult {
    /// `d_L`; infinite when disconnected.
    pub weight: f64,
    /// `d_H`; `None` when disconnected.
    pub hops: Option<u32>,
    pub vertices: Vec<Vertex>,
}

impl PathResult {
    pub fn is_connected(&self) -> bool {
        self.hops.is_some()
    }

    fn disconnected() -> Self {
        Self {
            weight: f64::INFINITY,
            hops: None,
            vertices: Vec::new(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Metric {
    /// Graph distance.
    G,
    /// Weighted distance.
    L,
}

/// Vertices within distance `radius` of `center`, with their distances,
/// sorted by distance then label.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BallView {
    pub center: Vertex,
    pub metric: Metric,
    pub radius: f64,
    pub members: Vec<(Vertex, f64)>,
}

impl BallView {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

fn key_cmp(a: (f64, u32), b: (f64, u32)) -> Ordering {
    a.0.total_cmp(&b.0).then(a.1.cmp(&b.1))
}

/// Expands one BFS level from `front` into `next`, labelling through `own`.
/// Returns the shortest `s-t` length through a newly reached vertex that
/// the other side has already labelled.
fn expand_level(
    graph: &GrowthGraph,
    front: &[Vertex],
    next: &mut Vec<Vertex>,
    epoch: u32,
    own: (&mut [u32], &mut [u32]),
    other: (&[u32], &[u32]),
) -> Option<u32> {
    let (stamp, depth) = own;
    let (other_stamp, other_depth) = other;
    next.clear();
    let mut met: Option<u32> = None;
    for &x in front {
        let d = depth[x as usize] + 1;
        for &(w, _) in graph.incident(x) {
            let wi = w as usize;
            if stamp[wi] == epoch {
                continue;
            }
            stamp[wi] = epoch;
            depth[wi] = d;
            next.push(w);
            if other_stamp[wi] == epoch {
                let total = d + other_depth[wi];
                met = Some(met.map_or(total, |m| m.min(total)));
            }
        }
    }
    met
}

#[derive(Clone, Copy, Debug)]
struct Key {
    weight: f64,
    hops: u32,
    vertex: Vertex,
}

impl PartialEq for Key {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Key {}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Key {
    // Reversed so that `BinaryHeap` pops the smallest key.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .weight
            .total_cmp(&self.weight)
            .then(other.hops.cmp(&self.hops))
            .then(other.vertex.cmp(&self.vertex))
    }
}

/// Reusable scratch space for queries on one graph.
///
/// Per-vertex arrays are reset lazily through an epoch stamp, so a query
/// only pays for the vertices it touches.
pub struct Explorer<'g> {
    graph: &'g GrowthGraph,
    epoch: u32,
    /// Single-source searches, and the forward half of pair searches.
    fwd: Half,
    /// Backward half of pair searches.
    bwd: Half,
    pred: Vec<Vertex>,
    bfs_stamp: Vec<u32>,
    depth: Vec<u32>,
    queue: VecDeque<Vertex>,
}

/// Labels of one Dijkstra search, valid where `stamp == epoch`.
struct Half {
    stamp: Vec<u32>,
    settled: Vec<u32>,
    dist: Vec<f64>,
    hops: Vec<u32>,
    heap: BinaryHeap<Key>,
}

impl Half {
    fn new(n: usize) -> Self {
        Self {
            stamp: vec![0; n],
            settled: vec![0; n],
            dist: vec![0.0; n],
            hops: vec![0; n],
            heap: BinaryHeap::new(),
        }
    }

    fn reset(&mut self, full: bool) {
        if full {
            self.stamp.fill(0);
            self.settled.fill(0);
        }
        self.heap.clear();
    }

    fn seed(&mut self, v: Vertex, epoch: u32) {
        self.stamp[v as usize] = epoch;
        self.dist[v as usize] = 0.0;
        self.hops[v as usize] = 0;
        self.heap.push(Key {
            weight: 0.0,
            hops: 0,
            vertex: v,
        });
    }

    /// Smallest key of an unsettled vertex, dropping stale heap entries.
    fn top(&mut self, epoch: u32) -> Option<(f64, u32)> {
        while let Some(k) = self.heap.peek() {
            if self.settled[k.vertex as usize] == epoch {
                self.heap.pop();
            } else {
                return Some((k.weight, k.hops));
            }
        }
        None
    }
}

impl<'g> Explorer<'g> {
    pub fn new(graph: &'g GrowthGraph) -> Self {
        let n = graph.t() as usize + 1;
        Self {
            graph,
            epoch: 0,
            fwd: Half::new(n),
            bwd: Half::new(n),
            pred: vec![0; n],
            bfs_stamp: vec![0; n],
            depth: vec![0; n],
            queue: VecDeque::new(),
        }
    }

    pub fn graph(&self) -> &'g GrowthGraph {
        self.graph
    }

    fn next_epoch(&mut self) {
        self.epoch = self.epoch.wrapping_add(1);
        let wrapped = self.epoch == 0;
        if wrapped {
            self.bfs_stamp.fill(0);
            self.epoch = 1;
        }
        self.fwd.reset(wrapped);
        self.bwd.reset(wrapped);
        self.queue.clear();
    }

    fn require_weights(&self) -> Result<()> {
        if self.graph.has_weights() {
            Ok(())
        } else {
            Err(Error::State("weighted query on a graph without weights".into()))
        }
    }

    /// Breadth-first search from `source`, visiting vertices in order of
    /// graph distance. `visit(v, depth)` returns `false` to stop.
    fn bfs(&mut self, source: Vertex, max_depth: u32, mut visit: impl FnMut(Vertex, u32) -> bool) {
        self.next_epoch();
        let graph = self.graph;
        let epoch = self.epoch;
        self.bfs_stamp[source as usize] = epoch;
        self.depth[source as usize] = 0;
        self.queue.push_back(source);
        while let Some(v) = self.queue.pop_front() {
            let d = self.depth[v as usize];
            if !visit(v, d) {
                return;
            }
            if d == max_depth {
                continue;
            }
            for &(w, _) in graph.incident(v) {
                if self.bfs_stamp[w as usize] != epoch {
                    self.bfs_stamp[w as usize] = epoch;
                    self.depth[w as usize] = d + 1;
                    self.queue.push_back(w);
                }
            }
        }
    }

    /// Dijkstra from `source` on the key `(weight, hops)`. `visit(v, weight,
    /// hops)` is called as each vertex settles; returning `false` stops.
    /// Must not be interleaved with `bfs` when the BFS depths are needed,
    /// so this does not start a new epoch itself.
    fn dijkstra_inner(&mut self, source: Vertex, mut visit: impl FnMut(&Self, Vertex, f64, u32) -> bool) {
        let epoch = self.epoch;
        self.fwd.stamp[source as usize] = epoch;
        self.fwd.dist[source as usize] = 0.0;
        self.fwd.hops[source as usize] = 0;
        self.pred[source as usize] = source;
        self.fwd.heap.push(Key {
            weight: 0.0,
            hops: 0,
            vertex: source,
        });
        let graph = self.graph;
        let weights = graph.weights().expect("checked by caller");
        while let Some(Key { weight, hops, vertex: v }) = self.fwd.heap.pop() {
            if self.fwd.settled[v as usize] == epoch {
                continue;
            }
            self.fwd.settled[v as usize] = epoch;
            if !visit(self, v, weight, hops) {
                return;
            }
            for &(w, id) in graph.incident(v) {
                let wi = w as usize;
                if self.fwd.settled[wi] == epoch {
                    continue;
                }
                let nw = weight + weights[id as usize];
                let nh = hops + 1;
                if self.fwd.stamp[wi] != epoch {
                    self.fwd.stamp[wi] = epoch;
                    self.fwd.dist[wi] = nw;
                    self.fwd.hops[wi] = nh;
                    self.pred[wi] = v;
                    self.fwd.heap.push(Key {
                        weight: nw,
                        hops: nh,
                        vertex: w,
                    });
                    continue;
                }
                let order = nw
                    .total_cmp(&self.fwd.dist[wi])
                    .then(nh.cmp(&self.fwd.hops[wi]));
                match order {
                    Ordering::Less => {
                        self.fwd.dist[wi] = nw;
                        self.fwd.hops[wi] = nh;
                        self.pred[wi] = v;
                        self.fwd.heap.push(Key {
                            weight: nw,
                            hops: nh,
                            vertex: w,
                        });
                    }
                    Ordering::Equal if v < self.pred[wi] => self.pred[wi] = v,
                    _ => {}
                }
            }
        }
    }

    fn path_to(&self, source: Vertex, target: Vertex) -> Vec<Vertex> {
        let mut path = vec![target];
        let mut v = target;
        while v != source {
            v = self.pred[v as usize];
            path.push(v);
        }
        path.reverse();
        path
    }

    /// `d_G(u, v)`; `None` if no path exists.
    ///
    /// Searches from both ends, one full level at a time on whichever
    /// side has the cheaper frontier.
    pub fn graph_distance(&mut self, u: Vertex, v: Vertex) -> Result<Option<u32>> {
        self.graph.check_vertex(u)?;
        self.graph.check_vertex(v)?;
        if u == v {
            return Ok(Some(0));
        }
        self.next_epoch();
        let graph = self.graph;
        let epoch = self.epoch;
        self.bfs_stamp[u as usize] = epoch;
        self.depth[u as usize] = 0;
        self.bwd.stamp[v as usize] = epoch;
        self.bwd.hops[v as usize] = 0;
        let (mut front_f, mut front_b, mut next) = (vec![u], vec![v], Vec::new());
        let cost = |front: &[Vertex]| front.iter().map(|&x| graph.degree(x)).sum::<usize>();
        while !front_f.is_empty() && !front_b.is_empty() {
            let met = if cost(&front_f) <= cost(&front_b) {
                let met = expand_level(graph, &front_f, &mut next, epoch, (&mut self.bfs_stamp, &mut self.depth), (&self.bwd.stamp, &self.bwd.hops));
                std::mem::swap(&mut front_f, &mut next);
                met
            } else {
                let met = expand_level(graph, &front_b, &mut next, epoch, (&mut self.bwd.stamp, &mut self.bwd.hops), (&self.bfs_stamp, &self.depth));
                std::mem::swap(&mut front_b, &mut next);
                met
            };
            if met.is_some() {
                return Ok(met);
            }
        }
        Ok(None)
    }

    /// `(d_L(u, v), d_H(u, v))` by bidirectional Dijkstra on the key
    /// `(weight, hops)`; `None` if no path exists. Agrees with
    /// [`weighted_distance`](Self::weighted_distance) up to the rounding of
    /// summing the path weights in a different order, and does not build
    /// the path.
    pub fn weighted_key(&mut self, u: Vertex, v: Vertex) -> Result<Option<(f64, u32)>> {
        self.graph.check_vertex(u)?;
        self.graph.check_vertex(v)?;
        self.require_weights()?;
        if u == v {
            return Ok(Some((0.0, 0)));
        }
        self.next_epoch();
        let epoch = self.epoch;
        let graph = self.graph;
        let weights = graph.weights().expect("checked above");
        self.fwd.seed(u, epoch);
        self.bwd.seed(v, epoch);
        let mut best: Option<(f64, u32)> = None;
        loop {
            let (Some(kf), Some(kb)) = (self.fwd.top(epoch), self.bwd.top(epoch)) else {
                break;
            };
            if let Some(b) = best {
                if key_cmp((kf.0 + kb.0, kf.1 + kb.1), b) != Ordering::Less {
                    break;
                }
            }
            let (own, other) = if self.fwd.heap.len() <= self.bwd.heap.len() {
                (&mut self.fwd, &self.bwd)
            } else {
                (&mut self.bwd, &self.fwd)
            };
            let Key { weight, hops, vertex: x } = own.heap.pop().expect("top is present");
            own.settled[x as usize] = epoch;
            for &(w, id) in graph.incident(x) {
                let wi = w as usize;
                let nw = weight + weights[id as usize];
                let nh = hops + 1;
                if other.stamp[wi] == epoch {
                    let cand = (nw + other.dist[wi], nh + other.hops[wi]);
                    if best.is_none_or(|b| key_cmp(cand, b) == Ordering::Less) {
                        best = Some(cand);
                    }
                }
                if own.settled[wi] == epoch {
                    continue;
                }
                if own.stamp[wi] != epoch || key_cmp((nw, nh), (own.dist[wi], own.hops[wi])) == Ordering::Less {
                    own.stamp[wi] = epoch;
                    own.dist[wi] = nw;
                    own.hops[wi] = nh;
                    own.heap.push(Key {
                        weight: nw,
                        hops: nh,
                        vertex: w,
                    });
                }
            }
        }
        Ok(best)
    }

    /// `d_L(u, v)`, `d_H(u, v)` and a realizing path.
    pub fn weighted_distance(&mut self, u: Vertex, v: Vertex) -> Result<PathResult> {
        self.graph.check_vertex(u)?;
        self.graph.check_vertex(v)?;
        self.require_weights()?;
        self.next_epoch();
        let mut found = None;
        self.dijkstra_inner(u, |_, w, weight, hops| {
            if w == v {
                found = Some((weight, hops));
                false
            } else {
                true
            }
        });
        Ok(match found {
            Some((weight, hops)) => PathResult {
                weight,
                hops: Some(hops),
                vertices: self.path_to(u, v),
            },
            None => PathResult::disconnected(),
        })
    }

    /// Vertices at graph distance exactly `k` from `q`.
    pub fn boundary(&mut self, q: Vertex, k: u32) -> Result<Vec<Vertex>> {
        self.graph.check_vertex(q)?;
        let mut out = Vec::new();
        self.bfs(q, k, |w, d| {
            if d == k {
                out.push(w);
            }
            true
        });
        out.sort_unstable();
        Ok(out)
    }

    /// All vertices within distance `r` of `q` in the chosen metric.
    pub fn ball(&mut self, q: Vertex, metric: Metric, r: f64) -> Result<BallView> {
        self.graph.check_vertex(q)?;
        if !(r >= 0.0) {
            return Err(Error::domain(format!("ball radius {r} must be >= 0")));
        }
        let mut members = Vec::new();
        match metric {
            Metric::G => {
                let depth = if r >= u32::MAX as f64 { u32::MAX } else { r.floor() as u32 };
                self.bfs(q, depth, |w, d| {
                    members.push((w, d as f64));
                    true
                });
            }
            Metric::L => {
                self.require_weights()?;
                self.next_epoch();
                self.dijkstra_inner(q, |_, w, weight, _| {
                    if weight > r {
                        false
                    } else {
                        members.push((w, weight));
                        true
                    }
                });
            }
        }
        members.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));
        Ok(BallView {
            center: q,
            metric,
            radius: r,
            members,
        })
    }

    /// `beta_j(q) = d_L(q, boundary(q, j))` for `j = 0..=k_max`, from one
    /// BFS and one Dijkstra pass; infinite where the boundary is empty.
    pub fn beta_profile(&mut self, q: Vertex, k_max: u32) -> Result<Vec<f64>> {
        self.graph.check_vertex(q)?;
        self.require_weights()?;
        let mut betas = vec![f64::INFINITY; k_max as usize + 1];
        let mut pending = 0usize;
        let mut present = vec![false; k_max as usize + 1];
        self.bfs(q, k_max, |_, d| {
            if !present[d as usize] {
                present[d as usize] = true;
                pending += 1;
            }
            true
        });
        // The BFS stamps stay valid for this epoch; Dijkstra reuses it.
        let epoch = self.epoch;
        self.dijkstra_inner(q, |ex, w, weight, _| {
            if ex.bfs_stamp[w as usize] == epoch {
                let d = ex.depth[w as usize] as usize;
                if betas[d].is_infinite() {
                    betas[d] = weight;
                    pending -= 1;
                }
            }
            pending > 0
        });
        Ok(betas)
    }

    /// `beta_k(q)`.
    pub fn beta_k(&mut self, q: Vertex, k: u32) -> Result<f64> {
        Ok(self.beta_profile(q, k)?[k as usize])
    }

    /// `sigma_n(q)`: the `n`-th smallest weighted distance from `q`, with
    /// `q` itself first; infinite when the component has fewer than `n`
    /// vertices.
    pub fn sigma_n(&mut self, q: Vertex, n: usize) -> Result<f64> {
        self.graph.check_vertex(q)?;
        self.require_weights()?;
        if n == 0 {
            return Err(Error::domain("sigma_n needs n >= 1"));
        }
        self.next_epoch();
        let mut count = 0usize;
        let mut out = f64::INFINITY;
        self.dijkstra_inner(q, |_, _, weight, _| {
            count += 1;
            if count == n {
                out = weight;
                false
            } else {
                true
            }
        });
        Ok(out)
    }

    /// Weighted distances from `q` to every vertex of its component (other
    /// entries infinite), indexed by label.
    pub fn weighted_distances_from(&mut self, q: Vertex) -> Result<Vec<f64>> {
        self.graph.check_vertex(q)?;
        self.require_weights()?;
        self.next_epoch();
        let mut out = vec![f64::INFINITY; self.graph.t() as usize + 1];
        self.dijkstra_inner(q, |_, w, weight, _| {
            out[w as usize] = weight;
            true
        });
        Ok(out)
    }

    /// First vertex, in breadth-first order (ties by discovery order), that
    /// satisfies `pred`, with its graph distance.
    pub fn bfs_find(&mut self, q: Vertex, mut pred: impl FnMut(Vertex) -> bool) -> Result<Option<(Vertex, u32)>> {
        self.graph.check_vertex(q)?;
        let mut found = None;
        self.bfs(q, u32::MAX, |w, d| {
            if pred(w) {
                found = Some((w, d));
                false
            } else {
                true
            }
        });
        Ok(found)
    }

    /// Smallest weighted distance from `q` to any vertex of `targets`
    /// (given as a membership mask indexed by label), with the hit vertex.
    pub fn weighted_distance_to_set(&mut self, q: Vertex, targets: &[bool]) -> Result<Option<(Vertex, f64)>> {
        self.graph.check_vertex(q)?;
        self.require_weights()?;
        self.next_epoch();
        let mut found = None;
        self.dijkstra_inner(q, |_, w, weight, _| {
            if targets.get(w as usize).copied().unwrap_or(false) {
                found = Some((w, weight));
                false
            } else {
                true
            }
        });
        Ok(found)
    }
}

pub fn graph_distance(graph: &GrowthGraph, u: Vertex, v: Vertex) -> Result<Option<u32>> {
    Explorer::new(graph).graph_distance(u, v)
}

pub fn weighted_distance(graph: &GrowthGraph, u: Vertex, v: Vertex) -> Result<PathResult> {
    Explorer::new(graph).weighted_distance(u, v)
}

pub fn ball(graph: &GrowthGraph, q: Vertex, metric: Metric, r: f64) -> Result<BallView> {
    Explorer::new(graph).ball(q, metric, r)
}

pub fn boundary(graph: &GrowthGraph, q: Vertex, k: u32) -> Result<Vec<Vertex>> {
    Explorer::new(graph).boundary(q, k)
}

pub fn beta_k(graph: &GrowthGraph, q: Vertex, k: u32) -> Result<f64> {
    Explorer::new(graph).beta_k(q, k)
}

pub fn sigma_n(graph: &GrowthGraph, q: Vertex, n: usize) -> Result<f64> {
    Explorer::new(graph).sigma_n(q, n)
}

/// Two independent uniform vertices of `[t]`; equal labels are allowed.
pub fn sample_typical_pair<R: Rng + ?Sized>(t: Vertex, rng: &mut R) -> (Vertex, Vertex) {
    (rng.random_range(1..=t), rng.random_range(1..=t))
}
