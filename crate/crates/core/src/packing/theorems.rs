//! Packers that follow the inductive constructions: peel triangles while
//! the degree bound allows it, then finish in the terminal component.

use crate::condensation::terminal_component;
use crate::cycle::{Cycle, CyclePacking};
use crate::multipartite::{build_multipartite, MultipartiteTournament};

use super::search::pack_bipartite_4cycles;
use super::search::pack_tournament_triangles;
use super::{exhausted, find_triangle, find_triangle_alive, finish, require_k, require_min_out_degree, PackingError};

/// Re-raise an error from a nested packer whose hypotheses were derived
/// from ours: anything other than an internal failure means the derivation
/// was wrong, which is itself an internal failure.
fn nested(d: &MultipartiteTournament, what: &str, e: PackingError) -> PackingError {
    if e.is_internal() {
        e
    } else {
        exhausted(d, format!("{what}: {e}"))
    }
}

/// `k` disjoint cycles in a triangle-free multipartite tournament with
/// minimum out-degree at least `2k - 1`.
///
/// The terminal strong component is bipartite in that case, and the
/// 4-cycles are packed there.
pub fn pack_triangle_free(d: &MultipartiteTournament, k: usize) -> Result<CyclePacking, PackingError> {
    if let Some(t) = find_triangle(d, &[]) {
        return Err(PackingError::NotTriangleFree(t));
    }
    require_k(k, 1)?;
    require_min_out_degree(d, 2 * k - 1)?;
    let terminal = terminal_component(d);
    let mut parts: Vec<usize> = terminal.iter().map(|&v| d.part_of(v)).collect();
    parts.sort_unstable();
    parts.dedup();
    if parts.len() != 2 {
        log::error!(
            "terminal component spans {} parts; instance follows\n{}",
            parts.len(),
            crate::mtg::serialize(d)
        );
        return Err(PackingError::NonBipartiteTerminal(parts.len()));
    }
    let (h, map) = d
        .induced(&terminal)
        .map_err(|e| exhausted(d, format!("terminal component: {e}")))?;
    let inner = pack_bipartite_4cycles(&h, k).map_err(|e| nested(d, "terminal component", e))?;
    finish(d, inner.relabel(&map).into_cycles())
}

/// Peel lexicographically first triangles until `k` cycles are found or no
/// triangle is left, then pack the rest of the cycles triangle-free.
fn peel_then_finish(d: &MultipartiteTournament, k: usize) -> Result<CyclePacking, PackingError> {
    let mut alive = vec![true; d.vertex_count()];
    let mut cycles: Vec<Cycle> = Vec::with_capacity(k);
    while cycles.len() < k {
        let Some(t) = find_triangle_alive(d, &alive) else {
            break;
        };
        for &v in t.vertices() {
            alive[v] = false;
        }
        cycles.push(t);
    }
    let rest = k - cycles.len();
    if rest > 0 {
        let keep: Vec<usize> = (0..d.vertex_count()).filter(|&v| alive[v]).collect();
        let (sub, map) = d
            .induced(&keep)
            .map_err(|e| exhausted(d, format!("remainder after {} triangles: {e}", cycles.len())))?;
        let tail = pack_triangle_free(&sub, rest).map_err(|e| nested(d, "triangle-free remainder", e))?;
        cycles.extend(tail.relabel(&map).into_cycles());
    }
    finish(d, cycles)
}

/// `k` disjoint cycles in a multipartite tournament with at most three
/// parts and minimum out-degree at least `2k - 1`.
///
/// ```
/// use mtcycles::generators::{gen_with_min_outdegree, GenSpec};
/// use mtcycles::packing::pack_3partite;
///
/// let d = gen_with_min_outdegree(&GenSpec::new(vec![5, 5, 5], 1).with_min_out_degree(3)).unwrap();
/// let p = pack_3partite(&d, 2).unwrap();
/// assert_eq!(p.k(), 2);
/// ```
pub fn pack_3partite(d: &MultipartiteTournament, k: usize) -> Result<CyclePacking, PackingError> {
    if d.part_count() > 3 {
        return Err(PackingError::TooManyParts { max: 3, got: d.part_count() });
    }
    require_k(k, 1)?;
    require_min_out_degree(d, 2 * k - 1)?;
    peel_then_finish(d, k)
}

/// `k` disjoint cycles in any multipartite tournament with minimum
/// out-degree at least `3k - 2`.
pub fn pack_multipartite_3k2(d: &MultipartiteTournament, k: usize) -> Result<CyclePacking, PackingError> {
    require_k(k, 1)?;
    require_min_out_degree(d, 3 * k - 2)?;
    peel_then_finish(d, k)
}

/// `k` disjoint triangles in an extended tournament (every pair of parts
/// joined in one direction only) with minimum out-degree at least `2k - 1`.
///
/// Each part is ordered transitively by label to get a tournament on the
/// same vertices; its triangles never use an arc inside a part, so they are
/// triangles of `d`.
pub fn pack_extended(d: &MultipartiteTournament, k: usize) -> Result<CyclePacking, PackingError> {
    require_k(k, 1)?;
    let t = d.part_count();
    let mut direction = vec![vec![false; t]; t];
    for (u, v) in d.arcs() {
        let (p, q) = (d.part_of(u), d.part_of(v));
        if direction[q][p] {
            return Err(PackingError::NotAnExtension(p.min(q), p.max(q)));
        }
        direction[p][q] = true;
    }
    require_min_out_degree(d, 2 * k - 1)?;
    let n = d.vertex_count();
    let mut arcs: Vec<(usize, usize)> = d.arcs().collect();
    for part in d.parts() {
        for (i, &u) in part.iter().enumerate() {
            arcs.extend(part[i + 1..].iter().map(|&v| (u, v)));
        }
    }
    let aux = build_multipartite((0..n).map(|v| vec![v]).collect(), arcs)
        .map_err(|e| exhausted(d, format!("auxiliary tournament: {e}")))?;
    let triangles = pack_tournament_triangles(&aux, k).map_err(|e| nested(d, "auxiliary tournament", e))?;
    finish(d, triangles.into_cycles())
}
