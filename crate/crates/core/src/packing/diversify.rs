//! Packings with two distinct cycle lengths in 3-partite tournaments.
//!
//! Starting from `k` disjoint triangles `C_1, ..., C_k` with leftover
//! vertices `U`, one of the following always yields a cycle of length at
//! least 4 that replaces one or more triangles:
//!
//! * `U` has sinks. A triangle vertex in the sink part either has an
//!   out-neighbor in `U`, or the triangle can be rerouted through a sink.
//! * `U` has no sinks. Its terminal component contains a long cycle or an
//!   extra triangle `C_{k+1}`. Among the `k + 1` triangles, two joined both
//!   ways merge into a long cycle, a cyclic triple splits into a 4-cycle
//!   and a triangle, and otherwise the last triangle of the acyclic order is
//!   rerouted through `U`.

use std::collections::VecDeque;

use crate::condensation::condensation;
use crate::cycle::{Cycle, CyclePacking};
use crate::digraph::Digraph;
use crate::multipartite::MultipartiteTournament;

use super::lemmas::{merge_triangle_pair, split_triangle_triple};
use super::theorems::pack_3partite;
use super::{exhausted, find_triangle, finish, require_k, require_min_out_degree, PackingError};

const LONG_CYCLE_NODE_LIMIT: u64 = 5_000_000;

/// A packing together with two of its distinct cycle lengths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiversePacking {
    packing: CyclePacking,
    witness: (usize, usize),
}

impl DiversePacking {
    fn new(packing: CyclePacking) -> Option<Self> {
        let lengths = packing.lengths();
        let lo = *lengths.iter().min()?;
        let hi = *lengths.iter().max()?;
        (lo != hi).then_some(Self { packing, witness: (lo, hi) })
    }

    pub fn packing(&self) -> &CyclePacking {
        &self.packing
    }

    /// The shortest and longest cycle lengths, which differ.
    pub fn witness(&self) -> (usize, usize) {
        self.witness
    }

    pub fn into_packing(self) -> CyclePacking {
        self.packing
    }
}

/// `k >= 2` disjoint cycles of at least two different lengths in a 3-partite
/// tournament with minimum out-degree at least `2k - 1` that has a triangle.
///
/// ```
/// use mtcycles::generators::{gen_with_min_outdegree, GenSpec};
/// use mtcycles::packing::diversify_3partite;
///
/// let d = gen_with_min_outdegree(&GenSpec::new(vec![5, 5, 5], 4).with_min_out_degree(3)).unwrap();
/// let p = diversify_3partite(&d, 2).unwrap();
/// let (short, long) = p.witness();
/// assert!(short < long);
/// ```
pub fn diversify_3partite(d: &MultipartiteTournament, k: usize) -> Result<DiversePacking, PackingError> {
    if d.part_count() > 3 {
        return Err(PackingError::TooManyParts { max: 3, got: d.part_count() });
    }
    require_k(k, 2)?;
    require_min_out_degree(d, 2 * k - 1)?;
    if find_triangle(d, &[]).is_none() {
        return Err(PackingError::TriangleFree);
    }
    let start = pack_3partite(d, k)?;
    if start.distinct_lengths() >= 2 {
        return Ok(DiversePacking::new(start).expect("two lengths"));
    }
    let triangles = start.into_cycles();
    let mut in_packing = vec![false; d.vertex_count()];
    for c in &triangles {
        for &v in c.vertices() {
            in_packing[v] = true;
        }
    }
    let u: Vec<usize> = (0..d.vertex_count()).filter(|&v| !in_packing[v]).collect();
    let sinks = d
        .sinks_within(&u)
        .map_err(|e| exhausted(d, e.to_string()))?;
    let cycles = if sinks.is_empty() {
        without_sinks(d, triangles, &u)?
    } else {
        with_sinks(d, triangles, &u, &sinks)?
    };
    let packing = finish(d, cycles)?;
    DiversePacking::new(packing).ok_or_else(|| exhausted(d, "rearrangement kept a single length".into()))
}

fn replace(mut triangles: Vec<Cycle>, drop: &[usize], add: impl IntoIterator<Item = Cycle>) -> Vec<Cycle> {
    let mut drop = drop.to_vec();
    drop.sort_unstable_by(|a, b| b.cmp(a));
    for i in drop {
        triangles.remove(i);
    }
    triangles.extend(add);
    triangles
}

fn with_sinks(
    d: &MultipartiteTournament,
    triangles: Vec<Cycle>,
    u: &[usize],
    sinks: &[usize],
) -> Result<Vec<Cycle>, PackingError> {
    let sink_part = d.part_of(sinks[0]);
    let mut in_u = vec![false; d.vertex_count()];
    for &v in u {
        in_u[v] = true;
    }
    let is_sink = |v: usize| sinks.binary_search(&v).is_ok();
    let roles = |c: &Cycle| {
        let z = *c.vertices().iter().find(|&&v| d.part_of(v) == sink_part).expect("triangle meets every part");
        (c.successor(z).expect("on cycle"), c.predecessor(z).expect("on cycle"), z)
    };
    // A triangle vertex in the sink part with an out-neighbor in U.
    for (i, c) in triangles.iter().enumerate() {
        let (x, y, z) = roles(c);
        let s = sinks[0];
        if let Some(&w) = d.out_neighbors(z).iter().find(|&&w| in_u[w] && d.has_arc(w, s)) {
            let long = if d.has_arc(s, y) {
                vec![z, w, s, y]
            } else if d.has_arc(s, x) {
                vec![z, w, s, x, y]
            } else {
                continue;
            };
            let long = Cycle::new(long).expect("distinct vertices");
            log::debug!("sink part vertex {z} leaves the packing: {long}");
            return Ok(replace(triangles, &[i], [long]));
        }
    }
    // Reroute x -> y through U when a sink sends an arc to y.
    for (i, c) in triangles.iter().enumerate() {
        let (x, y, z) = roles(c);
        for &w in d.out_neighbors(x).iter().filter(|&&w| in_u[w]) {
            let through: Option<Vec<usize>> = if is_sink(w) {
                d.has_arc(w, y).then(|| vec![w])
            } else {
                sinks
                    .iter()
                    .filter(|&&s| d.has_arc(s, y))
                    .find_map(|&s| short_path(d, w, s, &in_u))
            };
            if let Some(path) = through {
                let mut long = vec![x];
                long.extend(path);
                long.extend([y, z]);
                let long = Cycle::new(long).expect("path lies in U");
                log::debug!("rerouted {c} through a sink: {long}");
                return Ok(replace(triangles, &[i], [long]));
            }
        }
    }
    Err(exhausted(d, "sinks present but no triangle could be rerouted".into()))
}

/// A path `from ... to` of length at most two inside `member`.
fn short_path(d: &Digraph, from: usize, to: usize, member: &[bool]) -> Option<Vec<usize>> {
    if d.has_arc(from, to) {
        return Some(vec![from, to]);
    }
    d.out_neighbors(from)
        .iter()
        .find(|&&m| member[m] && d.has_arc(m, to))
        .map(|&m| vec![from, m, to])
}

fn without_sinks(d: &MultipartiteTournament, triangles: Vec<Cycle>, u: &[usize]) -> Result<Vec<Cycle>, PackingError> {
    let (sub, map) = d.digraph().induced(u);
    let dag = condensation(&sub);
    let terminal: Vec<usize> = dag.terminal().to_vec();
    let mut in_terminal = vec![false; sub.vertex_count()];
    for &v in &terminal {
        in_terminal[v] = true;
    }
    if let Some(long) = long_cycle_within(&sub, &in_terminal) {
        let long = long.relabel(&map);
        log::debug!("long cycle in the leftover: {long}");
        return Ok(replace(triangles, &[0], [long]));
    }
    let degree = |v: usize| sub.out_degree_within(v, |w| in_terminal[w]);
    let anchor = *terminal
        .iter()
        .min_by_key(|&&v| (degree(v), v))
        .expect("terminal component is nonempty");
    let extra = shortest_cycle_through(&sub, anchor, &in_terminal)
        .ok_or_else(|| exhausted(d, "terminal component of the leftover has no cycle".into()))?;
    let extra = extra.relabel(&map);
    if extra.len() != 3 {
        log::debug!("shortest cycle through {} is long: {extra}", map[anchor]);
        return Ok(replace(triangles, &[0], [extra]));
    }
    let anchor = map[anchor];
    let k = triangles.len();
    let mut all = triangles;
    all.push(extra);
    let beats = |i: usize, j: usize| -> bool {
        d.arc_count_between(all[i].vertices(), all[j].vertices())
            .expect("disjoint triangles")
            > 0
    };
    // Two triangles joined both ways.
    for i in 0..=k {
        for j in i + 1..=k {
            if beats(i, j) && beats(j, i) {
                let merged = merge_triangle_pair(d, &all[i], &all[j])?;
                log::debug!("merged {} and {}: {merged}", all[i], all[j]);
                return Ok(replace(all, &[i, j], [merged]));
            }
        }
    }
    // A cyclic triple of triangles.
    for i in 0..=k {
        for j in 0..=k {
            for h in 0..=k {
                if i < j && i < h && j != h && beats(i, j) && beats(j, h) && beats(h, i) {
                    let (four, three) = split_triangle_triple(d, &all[i], &all[j], &all[h])?;
                    log::debug!("split a cyclic triple into {four} and {three}");
                    return Ok(replace(all, &[i, j, h], [four, three]));
                }
            }
        }
    }
    // Transitive order: reroute the sink triangle through U.
    let sink = (0..=k)
        .find(|&i| (0..=k).all(|j| j == i || !beats(i, j)))
        .ok_or_else(|| exhausted(d, "triangle order has no sink".into()))?;
    if sink == k {
        return Err(exhausted(d, "the extra triangle is the sink of the order".into()));
    }
    let last = &all[sink];
    let mut in_u = vec![false; d.vertex_count()];
    for &v in u {
        in_u[v] = true;
    }
    let extra = &all[k];
    for &a in last.vertices() {
        for &w in d.out_neighbors(a).iter().filter(|&&w| in_u[w] && !extra.contains(w)) {
            let Some(path) = bfs_path(d, w, anchor, &in_u) else {
                continue;
            };
            let Some(&b) = d
                .out_neighbors(anchor)
                .iter()
                .find(|&&b| b != a && last.contains(b))
            else {
                continue;
            };
            let mut long = vec![a];
            long.extend(path);
            let back = last.path(b, a).expect("on cycle");
            long.extend(&back[..back.len() - 1]);
            let long = Cycle::new(long).expect("path in U avoids the sink triangle");
            log::debug!("rerouted the last triangle {last}: {long}");
            return Ok(replace(all, &[sink, k], [long]));
        }
    }
    Err(exhausted(d, "no reroute of the sink triangle through the leftover".into()))
}

/// Some cycle of length at least 4 using only vertices in `member`, found by
/// depth-first search from each root in label order. Gives up (returning
/// `None`) after a fixed number of search nodes.
fn long_cycle_within(d: &Digraph, member: &[bool]) -> Option<Cycle> {
    fn extend(d: &Digraph, member: &[bool], on_path: &mut [bool], path: &mut Vec<usize>, nodes: &mut u64) -> bool {
        *nodes += 1;
        if *nodes > LONG_CYCLE_NODE_LIMIT {
            return false;
        }
        let root = path[0];
        let last = *path.last().expect("nonempty path");
        if path.len() >= 4 && d.has_arc(last, root) {
            return true;
        }
        for &w in d.out_neighbors(last) {
            if w > root && member[w] && !on_path[w] {
                on_path[w] = true;
                path.push(w);
                if extend(d, member, on_path, path, nodes) {
                    return true;
                }
                path.pop();
                on_path[w] = false;
            }
        }
        false
    }
    let mut on_path = vec![false; d.vertex_count()];
    let mut nodes = 0;
    for root in (0..d.vertex_count()).filter(|&v| member[v]) {
        let mut path = vec![root];
        on_path[root] = true;
        if extend(d, member, &mut on_path, &mut path, &mut nodes) {
            return Some(Cycle::new(path).expect("simple path"));
        }
        on_path[root] = false;
    }
    if nodes > LONG_CYCLE_NODE_LIMIT {
        log::warn!("long cycle search gave up after {LONG_CYCLE_NODE_LIMIT} nodes");
    }
    None
}

/// Shortest cycle through `v` inside `member`.
fn shortest_cycle_through(d: &Digraph, v: usize, member: &[bool]) -> Option<Cycle> {
    d.out_neighbors(v)
        .iter()
        .filter(|&&w| member[w])
        .filter_map(|&w| bfs_path(d, w, v, member))
        .min_by_key(|p| p.len())
        .map(|p| Cycle::new(p).expect("shortest path is simple"))
}

/// Shortest path from `from` to `to` inside `member`, ties broken by label.
fn bfs_path(d: &Digraph, from: usize, to: usize, member: &[bool]) -> Option<Vec<usize>> {
    let mut parent = vec![usize::MAX; d.vertex_count()];
    parent[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            let mut path = vec![to];
            let mut cur = to;
            while cur != from {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for &w in d.out_neighbors(v) {
            if member[w] && parent[w] == usize::MAX {
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    None
}
