//! Recognizing the extremal family `BT(n_1, ..., n_2k)` and deciding when
//! every `k`-packing of a 3-partite tournament uses a single cycle length.

use crate::condensation::condensation;
use crate::multipartite::MultipartiteTournament;

use super::{require_k, require_min_out_degree, PackingError};

/// How a bipartite tournament matches `BT(n_1, ..., n_2k)`.
///
/// `y_vertices[i]` dominates exactly `x_groups[i]`, whose size is
/// `n_list[i]`. Groups are listed in increasing order of their `y` vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BtLabeling {
    pub k: usize,
    pub x_groups: Vec<Vec<usize>>,
    pub y_vertices: Vec<usize>,
    pub n_list: Vec<usize>,
}

impl BtLabeling {
    fn relabel(self, map: &[usize]) -> Self {
        let mut x_groups: Vec<Vec<usize>> = self
            .x_groups
            .iter()
            .map(|g| {
                let mut g: Vec<usize> = g.iter().map(|&v| map[v]).collect();
                g.sort_unstable();
                g
            })
            .collect();
        let mut y_vertices: Vec<usize> = self.y_vertices.iter().map(|&v| map[v]).collect();
        let mut order: Vec<usize> = (0..y_vertices.len()).collect();
        order.sort_by_key(|&i| y_vertices[i]);
        x_groups = order.iter().map(|&i| std::mem::take(&mut x_groups[i])).collect();
        y_vertices = order.iter().map(|&i| y_vertices[i]).collect();
        let n_list = x_groups.iter().map(Vec::len).collect();
        Self { k: self.k, x_groups, y_vertices, n_list }
    }
}

/// The `BT` labeling of `d`, if `d` is a member of the family.
///
/// ```
/// use mtcycles::generators::gen_bt;
/// use mtcycles::packing::recognize_bt;
///
/// let d = gen_bt(&[2, 3, 2, 3]).unwrap();
/// let labeling = recognize_bt(&d).unwrap();
/// assert_eq!(labeling.k, 2);
/// assert_eq!(labeling.n_list, vec![2, 3, 2, 3]);
/// ```
pub fn recognize_bt(d: &MultipartiteTournament) -> Option<BtLabeling> {
    if d.part_count() != 2 {
        return None;
    }
    (0..2).find_map(|side| recognize_with_y(d, side))
}

fn recognize_with_y(d: &MultipartiteTournament, side: usize) -> Option<BtLabeling> {
    let ys = &d.parts()[side];
    let xs = &d.parts()[1 - side];
    if ys.len() < 4 || ys.len() % 2 == 1 {
        return None;
    }
    let mut group_of = vec![usize::MAX; d.vertex_count()];
    let mut x_groups = Vec::with_capacity(ys.len());
    for (i, &y) in ys.iter().enumerate() {
        let group = d.out_neighbors(y).to_vec();
        if group.is_empty() {
            return None;
        }
        for &x in &group {
            if group_of[x] != usize::MAX {
                return None;
            }
            group_of[x] = i;
        }
        x_groups.push(group);
    }
    for &x in xs {
        let i = group_of[x];
        if i == usize::MAX {
            return None;
        }
        for (j, &y) in ys.iter().enumerate() {
            let expected = if i == j { d.has_arc(y, x) } else { d.has_arc(x, y) };
            if !expected {
                return None;
            }
        }
    }
    let n_list = x_groups.iter().map(Vec::len).collect();
    Some(BtLabeling {
        k: ys.len() / 2,
        x_groups,
        y_vertices: ys.clone(),
        n_list,
    })
}

/// Outcome of [`kappa_one_characterization`]. Only `KappaOne` means every
/// `k`-packing uses a single cycle length; the other variants name the
/// structure that rules it out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KappaOneVerdict {
    KappaOne(BtLabeling),
    NontrivialComponent(Vec<usize>),
    TerminalNotBt(Vec<usize>),
    WrongOrder { found: usize },
    SmallGroup { group: Vec<usize>, size: usize },
}

impl KappaOneVerdict {
    pub fn is_kappa_one(&self) -> bool {
        matches!(self, KappaOneVerdict::KappaOne(_))
    }
}

/// Decide whether every `k` disjoint cycles of `d` share one length, for a
/// 3-partite tournament with minimum out-degree at least `2k - 1`.
///
/// That happens exactly when every strong component other than the terminal
/// one is a single vertex, and the terminal one is `BT(n_1, ..., n_2k)` with
/// every `n_i >= 2k - 1`.
pub fn kappa_one_characterization(d: &MultipartiteTournament, k: usize) -> Result<KappaOneVerdict, PackingError> {
    if d.part_count() > 3 {
        return Err(PackingError::TooManyParts { max: 3, got: d.part_count() });
    }
    require_k(k, 2)?;
    require_min_out_degree(d, 2 * k - 1)?;
    let dag = condensation(d.digraph());
    let terminal = dag.terminal_index();
    if let Some(c) = dag
        .components()
        .iter()
        .enumerate()
        .find(|&(i, c)| i != terminal && c.len() > 1)
        .map(|(_, c)| c)
    {
        return Ok(KappaOneVerdict::NontrivialComponent(c.clone()));
    }
    let h = dag.terminal().to_vec();
    let labeling = match d.induced(&h) {
        Ok((sub, map)) => recognize_bt(&sub).map(|l| l.relabel(&map)),
        Err(_) => None,
    };
    let Some(labeling) = labeling else {
        return Ok(KappaOneVerdict::TerminalNotBt(h));
    };
    if labeling.k != k {
        return Ok(KappaOneVerdict::WrongOrder { found: labeling.k });
    }
    if let Some(group) = labeling.x_groups.iter().find(|g| g.len() < 2 * k - 1) {
        return Ok(KappaOneVerdict::SmallGroup { group: group.clone(), size: group.len() });
    }
    Ok(KappaOneVerdict::KappaOne(labeling))
}
