//! Exponential-time ground truth for small digraphs.
//!
//! Everything here works on `u64` vertex masks, so instances are limited to
//! 64 vertices. Searches are exhaustive within the cycle-length cap and fail
//! with [`OracleError::BudgetExceeded`] rather than returning a truncated
//! answer.
//!
//! Packings are enumerated by branching on the smallest vertex `v` not yet
//! decided: either `v` starts one of the packing's cycles (that cycle's
//! other vertices are all larger than `v`) or `v` is left out. Each set of
//! cycles is visited exactly once, and cycles rooted at `v` are produced in
//! lexicographic order of their canonical sequences, so the first witness
//! found is the lexicographically first one.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use thiserror::Error;

use crate::condensation::condensation;
use crate::cycle::{Cycle, CyclePacking};
use crate::digraph::Digraph;
use crate::multipartite::MultipartiteTournament;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
    #[error("oracle handles at most 64 vertices, got {0}")]
    TooLarge(usize),
    #[error("invalid budget: {0}")]
    InvalidBudget(&'static str),
    #[error("k must be at least 1")]
    InvalidK,
    #[error("digraph is not strongly connected")]
    NotStrong,
    #[error("pancyclicity check needs at least 3 parts, got {0}")]
    TooFewParts(usize),
}

/// Limits for one oracle call.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    /// Longest cycle considered. At least the vertex count makes answers unconditional.
    pub max_cycle_len: usize,
    /// Search-tree node cap.
    pub max_nodes: u64,
}

impl OracleBudget {
    pub const DEFAULT_MAX_NODES: u64 = 200_000_000;

    /// Cap equal to the vertex count: no cycle is excluded.
    pub fn unconditional(d: &Digraph) -> Self {
        Self::with_cap(d.vertex_count().max(2))
    }

    pub fn with_cap(max_cycle_len: usize) -> Self {
        Self {
            max_cycle_len,
            max_nodes: Self::DEFAULT_MAX_NODES,
        }
    }

    fn validate(&self) -> Result<(), OracleError> {
        if self.max_cycle_len < 2 {
            return Err(OracleError::InvalidBudget("max_cycle_len must be at least 2"));
        }
        if self.max_nodes == 0 {
            return Err(OracleError::InvalidBudget("max_nodes must be positive"));
        }
        Ok(())
    }
}

/// First defect found by [`verify_packing`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PackingViolation {
    #[error("cycle {cycle} has {len} vertices")]
    TooShort { cycle: usize, len: usize },
    #[error("cycle {cycle} uses vertex {vertex} outside the host")]
    VertexOutOfRange { cycle: usize, vertex: usize },
    #[error("cycle {cycle} visits vertex {vertex} twice")]
    RepeatedVertex { cycle: usize, vertex: usize },
    #[error("cycle {cycle} uses missing arc ({from}, {to})")]
    MissingArc { cycle: usize, from: usize, to: usize },
    #[error("cycles {first} and {second} share vertex {vertex}")]
    SharedVertex {
        vertex: usize,
        first: usize,
        second: usize,
    },
}

/// Check that every cycle is a closed walk on host arcs without repeated
/// vertices and that the cycles are pairwise vertex-disjoint.
pub fn verify_packing<C: AsRef<[usize]>>(host: &Digraph, cycles: &[C]) -> Result<(), PackingViolation> {
    let n = host.vertex_count();
    let mut owner = vec![usize::MAX; n];
    for (ci, c) in cycles.iter().enumerate() {
        let verts = c.as_ref();
        if verts.len() < 2 {
            return Err(PackingViolation::TooShort {
                cycle: ci,
                len: verts.len(),
            });
        }
        for &v in verts {
            if v >= n {
                return Err(PackingViolation::VertexOutOfRange { cycle: ci, vertex: v });
            }
            if owner[v] == ci {
                return Err(PackingViolation::RepeatedVertex { cycle: ci, vertex: v });
            }
            if owner[v] != usize::MAX {
                return Err(PackingViolation::SharedVertex {
                    vertex: v,
                    first: owner[v],
                    second: ci,
                });
            }
            owner[v] = ci;
        }
        for i in 0..verts.len() {
            let (from, to) = (verts[i], verts[(i + 1) % verts.len()]);
            if !host.has_arc(from, to) {
                return Err(PackingViolation::MissingArc { cycle: ci, from, to });
            }
        }
    }
    Ok(())
}

type Flow = Result<ControlFlow<()>, OracleError>;

struct Searcher {
    out: Vec<u64>,
    n: usize,
    cap: usize,
    min_len: usize,
    nodes: u64,
    max_nodes: u64,
}

#[inline]
fn bit(v: usize) -> u64 {
    1u64 << v
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

impl Searcher {
    fn new(d: &Digraph, budget: &OracleBudget) -> Result<Self, OracleError> {
        budget.validate()?;
        let n = d.vertex_count();
        if n > 64 {
            return Err(OracleError::TooLarge(n));
        }
        let out = (0..n)
            .map(|v| d.out_neighbors(v).iter().fold(0u64, |m, &w| m | bit(w)))
            .collect();
        Ok(Self {
            out,
            n,
            cap: budget.max_cycle_len,
            min_len: if d.has_digon() { 2 } else { 3 },
            nodes: 0,
            max_nodes: budget.max_nodes,
        })
    }

    fn all(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            bit(self.n) - 1
        }
    }

    fn tick(&mut self) -> Result<(), OracleError> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            Err(OracleError::BudgetExceeded(self.max_nodes))
        } else {
            Ok(())
        }
    }

    /// Cycles through `root` whose other vertices lie in `allowed`, in
    /// lexicographic order. The callback receives the path and its mask.
    fn rooted_cycles(
        &mut self,
        root: usize,
        allowed: u64,
        f: &mut dyn FnMut(&mut Self, &[usize], u64) -> Flow,
    ) -> Flow {
        let mut path = vec![root];
        self.extend(root, allowed, &mut path, bit(root), f)
    }

    fn extend(
        &mut self,
        root: usize,
        allowed: u64,
        path: &mut Vec<usize>,
        mask: u64,
        f: &mut dyn FnMut(&mut Self, &[usize], u64) -> Flow,
    ) -> Flow {
        self.tick()?;
        let last = *path.last().expect("path starts at root");
        let next = self.out[last] & ((allowed & !mask) | bit(root));
        for w in bits(next) {
            if w == root {
                if path.len() >= 2 {
                    if let ControlFlow::Break(()) = f(self, path, mask)? {
                        return Ok(ControlFlow::Break(()));
                    }
                }
            } else if path.len() < self.cap {
                path.push(w);
                let r = self.extend(root, allowed, path, mask | bit(w), f)?;
                path.pop();
                if r.is_break() {
                    return Ok(r);
                }
            }
        }
        Ok(ControlFlow::Continue(()))
    }

    fn packings(
        &mut self,
        k_left: usize,
        undecided: u64,
        chosen: &mut Vec<Vec<usize>>,
        f: &mut dyn FnMut(&[Vec<usize>]) -> ControlFlow<()>,
    ) -> Flow {
        if k_left == 0 {
            return Ok(f(chosen));
        }
        if (undecided.count_ones() as usize) < k_left * self.min_len {
            return Ok(ControlFlow::Continue(()));
        }
        self.tick()?;
        let v = undecided.trailing_zeros() as usize;
        let rest = undecided & !bit(v);
        let r = self.rooted_cycles(v, rest, &mut |s, path, mask| {
            chosen.push(path.to_vec());
            let r = s.packings(k_left - 1, rest & !mask, chosen, f);
            chosen.pop();
            r
        })?;
        if r.is_break() {
            return Ok(r);
        }
        self.packings(k_left, rest, chosen, f)
    }
}

/// All simple cycles of length at most `budget.max_cycle_len`, canonical
/// and sorted.
pub fn enumerate_cycles(d: &Digraph, budget: &OracleBudget) -> Result<Vec<Cycle>, OracleError> {
    let mut s = Searcher::new(d, budget)?;
    let mut found = Vec::new();
    let all = s.all();
    for root in 0..s.n {
        let above = if root >= 63 { 0 } else { all & !(bit(root + 1) - 1) };
        let _ = s.rooted_cycles(root, above, &mut |_, path, _| {
            found.push(path.to_vec());
            Ok(ControlFlow::Continue(()))
        })?;
    }
    let mut cycles: Vec<Cycle> = found
        .into_iter()
        .map(|p| Cycle::new(p).expect("search yields simple cycles"))
        .collect();
    cycles.sort();
    Ok(cycles)
}

/// Visit every set of `k` vertex-disjoint cycles (within the length cap).
/// Cycles in each visited set are ordered by their smallest vertex.
pub fn for_each_packing(
    d: &Digraph,
    k: usize,
    budget: &OracleBudget,
    mut f: impl FnMut(&[Cycle]) -> ControlFlow<()>,
) -> Result<(), OracleError> {
    if k == 0 {
        return Err(OracleError::InvalidK);
    }
    let mut s = Searcher::new(d, budget)?;
    let all = s.all();
    let mut chosen = Vec::new();
    let _ = s.packings(k, all, &mut chosen, &mut |paths| {
        let cycles: Vec<Cycle> = paths
            .iter()
            .map(|p| Cycle::new(p.clone()).expect("search yields simple cycles"))
            .collect();
        f(&cycles)
    })?;
    Ok(())
}

/// Decide whether `d` has `k` vertex-disjoint cycles of length at most the
/// cap. `None` is unconditional when the cap is at least the vertex count.
pub fn exists_k_disjoint(
    d: &Digraph,
    k: usize,
    budget: &OracleBudget,
) -> Result<Option<CyclePacking>, OracleError> {
    let mut witness = None;
    for_each_packing(d, k, budget, |cycles| {
        witness = Some(CyclePacking::new(cycles.to_vec()).expect("search yields disjoint cycles"));
        ControlFlow::Break(())
    })?;
    Ok(witness)
}

/// Exact value of the maximum number of distinct lengths in a `k`-packing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kappa {
    /// 0 when no `k`-packing exists.
    pub value: usize,
    /// A packing attaining `value`, the first one found in search order.
    pub witness: Option<CyclePacking>,
}

pub fn kappa_exact(d: &Digraph, k: usize, budget: &OracleBudget) -> Result<Kappa, OracleError> {
    let mut best = Kappa {
        value: 0,
        witness: None,
    };
    for_each_packing(d, k, budget, |cycles| {
        let distinct = cycles.iter().map(Cycle::len).collect::<BTreeSet<_>>().len();
        if distinct > best.value {
            best.value = distinct;
            best.witness = Some(CyclePacking::new(cycles.to_vec()).expect("search yields disjoint cycles"));
        }
        if best.value == k {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(best)
}

/// Result of [`vertex_pancyclic_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pancyclicity {
    /// Smallest witness vertex per part, in part order.
    Holds(Vec<usize>),
    /// No vertex of `part` lies on an `m`-cycle for every `m` in `3..=t`.
    Violated { part: usize },
}

/// In a strong multipartite tournament with `t >= 3` parts, look for a
/// vertex in each part lying on cycles of every length `3..=t`.
pub fn vertex_pancyclic_check(
    d: &MultipartiteTournament,
    budget: &OracleBudget,
) -> Result<Pancyclicity, OracleError> {
    let t = d.part_count();
    if t < 3 {
        return Err(OracleError::TooFewParts(t));
    }
    if condensation(d.digraph()).len() != 1 {
        return Err(OracleError::NotStrong);
    }
    let capped = OracleBudget {
        max_cycle_len: budget.max_cycle_len.min(t),
        ..*budget
    };
    if capped.max_cycle_len < t {
        return Err(OracleError::InvalidBudget("cycle cap below the part count"));
    }
    let mut on_len = vec![0u64; t + 1];
    for c in enumerate_cycles(d.digraph(), &capped)? {
        on_len[c.len()] |= c.vertices().iter().fold(0, |m, &v| m | bit(v));
    }
    let on_all = (3..=t).fold(u64::MAX, |m, len| m & on_len[len]);
    let mut witnesses = Vec::with_capacity(t);
    for (p, part) in d.parts().iter().enumerate() {
        match part.iter().find(|&&v| on_all & bit(v) != 0) {
            Some(&v) => witnesses.push(v),
            None => {
                log::error!("no vertex of part {p} lies on cycles of every length 3..={t}");
                return Ok(Pancyclicity::Violated { part: p });
            }
        }
    }
    Ok(Pancyclicity::Holds(witnesses))
}
