//! Instance families: random multipartite tournaments, the extremal `BT`
//! family, blow-ups of tournaments and complete split orientations.
//!
//! All randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded
//! with `seed_from_u64`. Vertices of part `i` get consecutive labels after
//! those of parts `0..i`, and cross pairs `(u, v)` with `u < v` are oriented
//! in lexicographic order, one coin flip each (`true` means `u -> v`). The
//! stream is therefore fixed by the seed and the part sizes alone.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::multipartite::{build_multipartite, MultipartiteTournament};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("no instance with minimum out-degree {delta_min} after {attempts} attempts")]
    ExhaustedAttempts { delta_min: usize, attempts: u32 },
    #[error("BT needs an even number of at least 4 group sizes, got {0}")]
    BadArity(usize),
    #[error("expected {expected} blob sizes, got {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("blow-up needs a tournament (all parts singletons)")]
    NotATournament,
    #[error("no orientation of these parts has minimum out-degree {delta_min}")]
    Infeasible { delta_min: usize },
}

/// Parameters for the random families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenSpec {
    pub sizes: Vec<usize>,
    pub seed: u64,
    pub delta_min: Option<usize>,
    pub max_attempts: u32,
}

impl GenSpec {
    pub const DEFAULT_MAX_ATTEMPTS: u32 = 100_000;

    pub fn new(sizes: Vec<usize>, seed: u64) -> Self {
        Self {
            sizes,
            seed,
            delta_min: None,
            max_attempts: Self::DEFAULT_MAX_ATTEMPTS,
        }
    }

    pub fn with_min_out_degree(mut self, delta_min: usize) -> Self {
        self.delta_min = Some(delta_min);
        self
    }

    pub fn with_max_attempts(mut self, max_attempts: u32) -> Self {
        self.max_attempts = max_attempts;
        self
    }

    fn validate(&self) -> Result<(), GenError> {
        if self.sizes.is_empty() {
            return Err(GenError::InvalidSpec("no part sizes".into()));
        }
        if self.sizes.contains(&0) {
            return Err(GenError::InvalidSpec("part sizes must be positive".into()));
        }
        if self.max_attempts == 0 {
            return Err(GenError::InvalidSpec("max_attempts must be positive".into()));
        }
        Ok(())
    }
}

fn consecutive_parts(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut next = 0;
    sizes
        .iter()
        .map(|&s| {
            let part = (next..next + s).collect();
            next += s;
            part
        })
        .collect()
}

fn random_orientation(sizes: &[usize], rng: &mut ChaCha8Rng) -> MultipartiteTournament {
    let parts = consecutive_parts(sizes);
    let part_of: Vec<usize> = parts
        .iter()
        .enumerate()
        .flat_map(|(p, part)| part.iter().map(move |_| p))
        .collect();
    let n = part_of.len();
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if part_of[u] != part_of[v] {
                arcs.push(if rng.random::<bool>() { (u, v) } else { (v, u) });
            }
        }
    }
    build_multipartite(parts, arcs).expect("random orientation is a multipartite tournament")
}

fn rejection_sample(
    delta_min: usize,
    max_attempts: u32,
    mut draw: impl FnMut() -> MultipartiteTournament,
) -> Result<MultipartiteTournament, GenError> {
    for _ in 0..max_attempts {
        let d = draw();
        if d.min_out_degree().unwrap_or(0) >= delta_min {
            return Ok(d);
        }
    }
    Err(GenError::ExhaustedAttempts {
        delta_min,
        attempts: max_attempts,
    })
}

/// Orient every cross pair uniformly at random. Needs at least two parts.
pub fn gen_random_multipartite(spec: &GenSpec) -> Result<MultipartiteTournament, GenError> {
    spec.validate()?;
    if spec.sizes.len() < 2 {
        return Err(GenError::InvalidSpec("at least two parts required".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    Ok(random_orientation(&spec.sizes, &mut rng))
}

/// Redraw random orientations (continuing one seeded stream) until the
/// minimum out-degree reaches `spec.delta_min`.
pub fn gen_with_min_outdegree(spec: &GenSpec) -> Result<MultipartiteTournament, GenError> {
    spec.validate()?;
    if spec.sizes.len() < 2 {
        return Err(GenError::InvalidSpec("at least two parts required".into()));
    }
    let delta_min = spec
        .delta_min
        .ok_or_else(|| GenError::InvalidSpec("delta_min not set".into()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    rejection_sample(delta_min, spec.max_attempts, || {
        random_orientation(&spec.sizes, &mut rng)
    })
}

/// Reorient `d` until its minimum out-degree reaches `delta_min`.
///
/// While some vertex `v` is short, the shortest directed path into `v` from
/// a vertex with out-degree above `delta_min` is reversed (breadth-first
/// over in-arcs, smallest labels first). Each reversal lowers the total
/// shortfall by one, and when no such path exists no orientation of the
/// underlying multipartite graph meets the bound. Applied to a random
/// orientation this reaches degree bounds that rejection sampling cannot.
pub fn raise_min_out_degree(d: &MultipartiteTournament, delta_min: usize) -> Result<MultipartiteTournament, GenError> {
    let n = d.vertex_count();
    let mut arc = vec![vec![false; n]; n];
    let mut out = vec![0usize; n];
    for (u, v) in d.arcs() {
        arc[u][v] = true;
        out[u] += 1;
    }
    while let Some(v) = (0..n).find(|&v| out[v] < delta_min) {
        let mut next = vec![usize::MAX; n];
        next[v] = v;
        let mut queue = std::collections::VecDeque::from([v]);
        let mut source = None;
        while let Some(x) = queue.pop_front() {
            if out[x] > delta_min {
                source = Some(x);
                break;
            }
            for w in 0..n {
                if arc[w][x] && next[w] == usize::MAX {
                    next[w] = x;
                    queue.push_back(w);
                }
            }
        }
        let Some(mut a) = source else {
            return Err(GenError::Infeasible { delta_min });
        };
        out[a] -= 1;
        out[v] += 1;
        while a != v {
            let b = next[a];
            arc[a][b] = false;
            arc[b][a] = true;
            a = b;
        }
    }
    let arcs = (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).filter(|&(u, v)| arc[u][v]);
    Ok(build_multipartite(d.parts().to_vec(), arcs.collect::<Vec<_>>()).expect("reversal keeps a multipartite tournament"))
}

/// Random tournament on `n` vertices.
pub fn gen_random_tournament(n: usize, seed: u64) -> Result<MultipartiteTournament, GenError> {
    gen_random_multipartite(&GenSpec::new(vec![1; n], seed))
}

/// The bipartite tournament `BT(n_1, ..., n_2k)`.
///
/// Labels: the groups `X_1, ..., X_2k` come first, consecutively, followed
/// by `y_1, ..., y_2k`. Part 0 is `X`, part 1 is `Y`. Every `x` in `X_i`
/// dominates every `y_j` with `j != i`, and `y_i` dominates all of `X_i`.
pub fn gen_bt(n_list: &[usize]) -> Result<MultipartiteTournament, GenError> {
    if n_list.len() < 4 || n_list.len() % 2 == 1 {
        return Err(GenError::BadArity(n_list.len()));
    }
    if n_list.contains(&0) {
        return Err(GenError::InvalidSpec("BT group sizes must be positive".into()));
    }
    let groups = consecutive_parts(n_list);
    let x_total: usize = n_list.iter().sum();
    let ys: Vec<usize> = (x_total..x_total + n_list.len()).collect();
    let mut arcs = Vec::new();
    for (i, group) in groups.iter().enumerate() {
        for &x in group {
            for (j, &y) in ys.iter().enumerate() {
                arcs.push(if i == j { (y, x) } else { (x, y) });
            }
        }
    }
    let parts = vec![(0..x_total).collect(), ys];
    Ok(build_multipartite(parts, arcs).expect("BT arc set is a bipartite tournament"))
}

/// Blow up each vertex `i` of the tournament `t` into an independent set of
/// `sizes[i]` vertices; an arc `i -> j` becomes all arcs from blob `i` to
/// blob `j`. Blobs get consecutive labels and become the parts.
pub fn gen_extended_tournament(
    t: &MultipartiteTournament,
    sizes: &[usize],
) -> Result<MultipartiteTournament, GenError> {
    if !t.is_tournament() {
        return Err(GenError::NotATournament);
    }
    if sizes.len() != t.vertex_count() {
        return Err(GenError::SizeMismatch {
            expected: t.vertex_count(),
            found: sizes.len(),
        });
    }
    if sizes.contains(&0) {
        return Err(GenError::InvalidSpec("blob sizes must be positive".into()));
    }
    let blobs = consecutive_parts(sizes);
    let arcs: Vec<(usize, usize)> = t
        .arcs()
        .flat_map(|(i, j)| {
            let (from, to) = (&blobs[i], &blobs[j]);
            from.iter().flat_map(move |&u| to.iter().map(move |&v| (u, v)))
        })
        .collect();
    Ok(build_multipartite(blobs, arcs).expect("blow-up of a tournament is a multipartite tournament"))
}

fn split_orientation(clique: usize, independent: usize, rng: &mut ChaCha8Rng) -> MultipartiteTournament {
    let mut sizes = vec![independent];
    sizes.extend(std::iter::repeat_n(1, clique));
    random_orientation(&sizes, rng)
}

/// Random orientation of the complete split graph with a clique of
/// `clique_size` vertices and an independent set of `independent_size`.
///
/// Part 0 is the independent set (labels `0..independent_size`); each clique
/// vertex is its own singleton part.
pub fn gen_complete_split(
    clique_size: usize,
    independent_size: usize,
    seed: u64,
) -> Result<MultipartiteTournament, GenError> {
    if clique_size == 0 || independent_size == 0 {
        return Err(GenError::InvalidSpec("split sides must be nonempty".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(split_orientation(clique_size, independent_size, &mut rng))
}

/// [`gen_complete_split`] with rejection on minimum out-degree.
pub fn gen_complete_split_with_min_outdegree(
    clique_size: usize,
    independent_size: usize,
    seed: u64,
    delta_min: usize,
    max_attempts: u32,
) -> Result<MultipartiteTournament, GenError> {
    if clique_size == 0 || independent_size == 0 {
        return Err(GenError::InvalidSpec("split sides must be nonempty".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rejection_sample(delta_min, max_attempts, || {
        split_orientation(clique_size, independent_size, &mut rng)
    })
}

/// A triangle-free multipartite tournament that is not bipartite in general.
///
/// A random bipartite core on parts of sizes `core` sits below a random
/// bipartite top layer on parts of sizes `top`; every top vertex dominates
/// every core vertex. Top-layer parts may be empty, giving 2, 3 or 4 parts.
/// The core is redrawn until its minimum out-degree reaches `delta_min`,
/// which then bounds the whole instance.
pub fn gen_layered_triangle_free(
    core: (usize, usize),
    top: (usize, usize),
    seed: u64,
    delta_min: usize,
    max_attempts: u32,
) -> Result<MultipartiteTournament, GenError> {
    if core.0 == 0 || core.1 == 0 {
        return Err(GenError::InvalidSpec("core parts must be nonempty".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let core_d = rejection_sample(delta_min, max_attempts, || {
        random_orientation(&[core.0, core.1], &mut rng)
    })?;
    let nc = core.0 + core.1;
    let mut parts = core_d.parts().to_vec();
    let top_a: Vec<usize> = (nc..nc + top.0).collect();
    let top_b: Vec<usize> = (nc + top.0..nc + top.0 + top.1).collect();
    let mut arcs: Vec<(usize, usize)> = core_d.arcs().collect();
    for &a in &top_a {
        for &b in &top_b {
            arcs.push(if rng.random::<bool>() { (a, b) } else { (b, a) });
        }
    }
    for &t in top_a.iter().chain(&top_b) {
        arcs.extend((0..nc).map(|c| (t, c)));
    }
    parts.extend([top_a, top_b].into_iter().filter(|p| !p.is_empty()));
    Ok(build_multipartite(parts, arcs).expect("layered construction is a multipartite tournament"))
}
