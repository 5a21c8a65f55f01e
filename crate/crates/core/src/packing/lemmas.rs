//! Local rearrangements of disjoint triangles.

use crate::cycle::Cycle;
use crate::digraph::Digraph;
use crate::multipartite::MultipartiteTournament;

use super::PackingError;

fn precondition(msg: impl Into<String>) -> PackingError {
    PackingError::PreconditionViolated(msg.into())
}

fn check_triangles(d: &Digraph, triangles: &[&Cycle]) -> Result<(), PackingError> {
    for (i, c) in triangles.iter().enumerate() {
        if c.len() != 3 {
            return Err(precondition(format!("cycle {c} is not a triangle")));
        }
        if !c.lies_in(d) {
            return Err(precondition(format!("triangle {c} is not in the host")));
        }
        for other in &triangles[i + 1..] {
            if let Some(v) = c.vertices().iter().find(|&&v| other.contains(v)) {
                return Err(precondition(format!("triangles share vertex {v}")));
            }
        }
    }
    Ok(())
}

fn arcs_between(d: &Digraph, from: &Cycle, to: &Cycle) -> usize {
    d.arc_count_between(from.vertices(), to.vertices())
        .expect("triangles checked disjoint")
}

/// Splice two disjoint triangles joined by arcs in both directions into a
/// single cycle of length at least 4 on their six vertices.
///
/// Taking `first` as the triangle sending at least three arcs to `second`,
/// pick an arc `y' -> y` back into `first` and an arc `x -> x'` with
/// `x != y` and `x' != y'`; the cycle is `x x' ... y' y ... x`, following
/// `second` from `x'` to `y'` and `first` from `y` to `x`. Choices are made
/// in ascending label order. Both roles are tried, so the result exists
/// whenever the two triangles live in a multipartite tournament.
pub fn merge_triangle_pair(d: &Digraph, c: &Cycle, c2: &Cycle) -> Result<Cycle, PackingError> {
    check_triangles(d, &[c, c2])?;
    let forward = arcs_between(d, c, c2);
    let backward = arcs_between(d, c2, c);
    if forward == 0 || backward == 0 {
        return Err(precondition(format!(
            "need arcs both ways between {c} and {c2}, found {forward} and {backward}"
        )));
    }
    let roles = if forward >= backward { [(c, c2), (c2, c)] } else { [(c2, c), (c, c2)] };
    for (first, second) in roles {
        for &y2 in second.vertices() {
            for &y in first.vertices() {
                if !d.has_arc(y2, y) {
                    continue;
                }
                for &x in first.vertices().iter().filter(|&&x| x != y) {
                    for &x2 in second.vertices().iter().filter(|&&x2| x2 != y2) {
                        if !d.has_arc(x, x2) {
                            continue;
                        }
                        let mut verts = vec![x];
                        verts.extend(second.path(x2, y2).expect("on cycle"));
                        let back = first.path(y, x).expect("on cycle");
                        verts.extend(&back[..back.len() - 1]);
                        return Ok(Cycle::new(verts).expect("splice of disjoint paths is simple"));
                    }
                }
            }
        }
    }
    Err(PackingError::InternalExhaustion(format!(
        "no disjoint pair of opposite arcs between {c} and {c2}"
    )))
}

/// Three disjoint triangles of a 3-partite tournament where all arcs run
/// `c1 -> c2 -> c3 -> c1` between consecutive triangles become a disjoint
/// 4-cycle and triangle on the same nine vertices.
///
/// With each triangle labelled `x_i, y_i, z_i` by part so that
/// `x_1 -> y_1 -> z_1`, the 4-cycle is `x_1 y_1 z_2 y_3` and the triangle is
/// `z_1 y_2 x_3`. All assignments of the three parts to the roles are tried
/// in order and the first consistent one is used.
pub fn split_triangle_triple(
    d: &MultipartiteTournament,
    c1: &Cycle,
    c2: &Cycle,
    c3: &Cycle,
) -> Result<(Cycle, Cycle), PackingError> {
    let triple = [c1, c2, c3];
    check_triangles(d, &triple)?;
    for i in 0..3 {
        let (prev, next) = (triple[i], triple[(i + 1) % 3]);
        let back = arcs_between(d, next, prev);
        if back > 0 {
            return Err(precondition(format!(
                "{back} arcs run from {next} back to {prev}"
            )));
        }
    }
    let parts: Vec<usize> = c1.vertices().iter().map(|&v| d.part_of(v)).collect();
    let on_part = |c: &Cycle, p: usize| c.vertices().iter().copied().find(|&v| d.part_of(v) == p);
    for c in triple {
        for &p in &parts {
            if on_part(c, p).is_none() {
                return Err(precondition(format!(
                    "triangle {c} has no vertex in part {p}"
                )));
            }
        }
    }
    const ROLES: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    for perm in ROLES {
        let label = |c: &Cycle| -> [usize; 3] {
            [
                on_part(c, parts[perm[0]]).expect("checked above"),
                on_part(c, parts[perm[1]]).expect("checked above"),
                on_part(c, parts[perm[2]]).expect("checked above"),
            ]
        };
        let [x1, y1, z1] = label(c1);
        let [_, y2, z2] = label(c2);
        let [x3, y3, _] = label(c3);
        if !(d.has_arc(x1, y1) && d.has_arc(y1, z1) && d.has_arc(z1, x1)) {
            continue;
        }
        let four = Cycle::new(vec![x1, y1, z2, y3]).expect("distinct vertices");
        let three = Cycle::new(vec![z1, y2, x3]).expect("distinct vertices");
        if four.lies_in(d) && three.lies_in(d) {
            return Ok((four, three));
        }
    }
    Err(PackingError::InternalExhaustion(format!(
        "no labelling of {c1}, {c2}, {c3} yields the split"
    )))
}
