//! Backtracking packers for the two cases whose existence results are
//! imported rather than proved constructively: disjoint 4-cycles in
//! bipartite tournaments and disjoint triangles in tournaments.
//!
//! The search branches on the smallest live vertex `v`: first every cycle
//! of the target length whose smallest vertex is `v` (lexicographic order),
//! then the branch where `v` is skipped. The first branch taken at each level
//! is the greedy choice, so on easy instances the search is greedy
//! extraction; the skip branches make it exhaustive.

use crate::cycle::{Cycle, CyclePacking};
use crate::digraph::Digraph;
use crate::multipartite::MultipartiteTournament;

use super::{exhausted, finish, require_k, require_min_out_degree, PackingError};

const NODE_LIMIT: u64 = 50_000_000;

pub(crate) struct FixedLengthSearch<'a> {
    d: &'a Digraph,
    len: usize,
    alive: Vec<bool>,
    nodes: u64,
}

pub(crate) enum SearchEnd {
    NotFound,
    OutOfBudget,
}

impl<'a> FixedLengthSearch<'a> {
    pub(crate) fn new(d: &'a Digraph, len: usize) -> Self {
        Self {
            d,
            len,
            alive: vec![true; d.vertex_count()],
            nodes: 0,
        }
    }

    /// `k` disjoint cycles of length `self.len`, or why there are none.
    pub(crate) fn run(&mut self, k: usize) -> Result<Vec<Cycle>, SearchEnd> {
        let mut chosen = Vec::new();
        match self.pack(k, 0, &mut chosen) {
            Ok(true) => Ok(chosen
                .into_iter()
                .map(|p| Cycle::new(p).expect("search yields simple cycles"))
                .collect()),
            Ok(false) => Err(SearchEnd::NotFound),
            Err(e) => Err(e),
        }
    }

    fn pack(&mut self, k_left: usize, from: usize, chosen: &mut Vec<Vec<usize>>) -> Result<bool, SearchEnd> {
        if k_left == 0 {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes > NODE_LIMIT {
            return Err(SearchEnd::OutOfBudget);
        }
        let n = self.d.vertex_count();
        let live = (from..n).filter(|&v| self.alive[v]).count();
        if live < k_left * self.len {
            return Ok(false);
        }
        let v = (from..n).find(|&v| self.alive[v]).expect("live vertices remain");
        let mut path = vec![v];
        self.alive[v] = false;
        let found = self.rooted(v, &mut path, k_left, chosen)?;
        self.alive[v] = true;
        if found {
            return Ok(true);
        }
        self.pack(k_left, v + 1, chosen)
    }

    /// Extend `path` (rooted at its smallest vertex `root`) to a cycle of the
    /// target length, then recurse on the remaining vertices.
    fn rooted(
        &mut self,
        root: usize,
        path: &mut Vec<usize>,
        k_left: usize,
        chosen: &mut Vec<Vec<usize>>,
    ) -> Result<bool, SearchEnd> {
        let last = *path.last().expect("rooted path");
        if path.len() == self.len {
            if !self.d.has_arc(last, root) {
                return Ok(false);
            }
            chosen.push(path.clone());
            if self.pack(k_left - 1, root + 1, chosen)? {
                return Ok(true);
            }
            chosen.pop();
            return Ok(false);
        }
        let d = self.d;
        for &w in d.out_neighbors(last) {
            if w <= root || !self.alive[w] {
                continue;
            }
            self.alive[w] = false;
            path.push(w);
            let found = self.rooted(root, path, k_left, chosen)?;
            path.pop();
            self.alive[w] = true;
            if found {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

fn run_search(d: &MultipartiteTournament, len: usize, k: usize, what: &str) -> Result<Vec<Cycle>, PackingError> {
    match FixedLengthSearch::new(d.digraph(), len).run(k) {
        Ok(cycles) => Ok(cycles),
        Err(SearchEnd::NotFound) => Err(exhausted(d, format!("no {k} disjoint {what} found"))),
        Err(SearchEnd::OutOfBudget) => Err(exhausted(
            d,
            format!("search for {k} disjoint {what} exceeded {NODE_LIMIT} nodes"),
        )),
    }
}

/// `k` vertex-disjoint 4-cycles in a bipartite tournament with minimum
/// out-degree at least `2k - 1`.
pub fn pack_bipartite_4cycles(d: &MultipartiteTournament, k: usize) -> Result<CyclePacking, PackingError> {
    require_k(k, 1)?;
    if d.part_count() != 2 {
        return Err(PackingError::NotBipartite(d.part_count()));
    }
    require_min_out_degree(d, 2 * k - 1)?;
    let cycles = run_search(d, 4, k, "4-cycles")?;
    finish(d, cycles)
}

/// `k` vertex-disjoint triangles in a tournament with minimum out-degree at
/// least `2k - 1`.
pub fn pack_tournament_triangles(t: &MultipartiteTournament, k: usize) -> Result<CyclePacking, PackingError> {
    require_k(k, 1)?;
    if !t.is_tournament() {
        return Err(PackingError::NotATournament);
    }
    require_min_out_degree(t, 2 * k - 1)?;
    let cycles = run_search(t, 3, k, "triangles")?;
    finish(t, cycles)
}
