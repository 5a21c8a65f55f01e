use mtcycles::generators::{
    gen_bt, gen_extended_tournament, gen_random_multipartite, gen_random_tournament, gen_with_min_outdegree,
    raise_min_out_degree, GenSpec,
};
use mtcycles::oracle::{kappa_exact, verify_packing, OracleBudget};
use mtcycles::packing::{
    diversify_3partite, find_triangle, kappa_one_characterization, pack_3partite, pack_extended,
    pack_multipartite_3k2, pack_triangle_free,
};
use mtcycles::{build_multipartite, MultipartiteTournament};
use proptest::prelude::*;

fn three_partite(sizes: Vec<usize>, seed: u64, delta: usize) -> Option<MultipartiteTournament> {
    gen_with_min_outdegree(&GenSpec::new(sizes, seed).with_min_out_degree(delta).with_max_attempts(20_000)).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn three_partite_packings_verify(a in 3usize..7, b in 3usize..7, c in 3usize..7, k in 1usize..3, seed in any::<u64>()) {
        let delta = 2 * k - 1;
        prop_assume!([a, b, c].iter().all(|&s| s >= delta));
        let Some(d) = three_partite(vec![a, b, c], seed, delta) else { return Ok(()) };
        let p = pack_3partite(&d, k).unwrap();
        prop_assert_eq!(p.k(), k);
        prop_assert!(verify_packing(d.digraph(), p.cycles()).is_ok());
    }

    #[test]
    fn diverse_packings_have_two_lengths(a in 3usize..7, b in 3usize..7, c in 3usize..7, seed in any::<u64>()) {
        let Some(d) = three_partite(vec![a, b, c], seed, 3) else { return Ok(()) };
        prop_assume!(find_triangle(d.digraph(), &[]).is_some());
        let p = diversify_3partite(&d, 2).unwrap();
        let (lo, hi) = p.witness();
        prop_assert!(lo < hi);
        prop_assert!(p.packing().distinct_lengths() >= 2);
        prop_assert!(verify_packing(d.digraph(), p.packing().cycles()).is_ok());
    }

    #[test]
    fn corollary_packings_verify(parts in 3usize..6, size in 2usize..4, seed in any::<u64>()) {
        let Some(d) = three_partite(vec![size; parts], seed, 4) else { return Ok(()) };
        let p = pack_multipartite_3k2(&d, 2).unwrap();
        prop_assert!(verify_packing(d.digraph(), p.cycles()).is_ok());
    }

    #[test]
    fn bipartite_packings_are_quadrilaterals(a in 6usize..10, b in 6usize..10, seed in any::<u64>()) {
        let raw = gen_random_multipartite(&GenSpec::new(vec![a, b], seed)).unwrap();
        let d = raise_min_out_degree(&raw, 3).unwrap();
        let p = pack_triangle_free(&d, 2).unwrap();
        prop_assert!(p.lengths().iter().all(|&l| l == 4));
        prop_assert!(verify_packing(d.digraph(), p.cycles()).is_ok());
    }

    #[test]
    fn extended_packings_use_one_vertex_per_blob(sizes in proptest::collection::vec(1usize..4, 7), seed in any::<u64>()) {
        let t = gen_random_tournament(7, seed).unwrap();
        let d = gen_extended_tournament(&t, &sizes).unwrap();
        prop_assume!(d.digraph().min_out_degree().unwrap() >= 3);
        let p = pack_extended(&d, 2).unwrap();
        for c in p.cycles() {
            prop_assert_eq!(c.len(), 3);
            let mut blobs: Vec<usize> = c.vertices().iter().map(|&v| d.part_of(v)).collect();
            blobs.sort_unstable();
            blobs.dedup();
            prop_assert_eq!(blobs.len(), 3);
        }
        prop_assert!(verify_packing(d.digraph(), p.cycles()).is_ok());
    }
}

/// `d` with one extra part of `extra` vertices, each dominating all of `d`.
fn with_dominating_part(d: &MultipartiteTournament, extra: usize) -> MultipartiteTournament {
    let n = d.vertex_count();
    let mut parts = d.parts().to_vec();
    parts.push((n..n + extra).collect());
    let mut arcs: Vec<(usize, usize)> = d.digraph().arcs().collect();
    for s in n..n + extra {
        arcs.extend((0..n).map(|v| (s, v)));
    }
    build_multipartite(parts, arcs).unwrap()
}

/// Reverse the arc between `u` and `v`.
fn flip(d: &MultipartiteTournament, u: usize, v: usize) -> MultipartiteTournament {
    let arcs: Vec<(usize, usize)> = d
        .digraph()
        .arcs()
        .map(|(a, b)| if (a, b) == (u, v) || (a, b) == (v, u) { (b, a) } else { (a, b) })
        .collect();
    build_multipartite(d.parts().to_vec(), arcs).unwrap()
}

fn assert_characterization_matches_oracle(d: &MultipartiteTournament, k: usize) -> bool {
    let verdict = kappa_one_characterization(d, k).unwrap();
    let kappa = kappa_exact(d.digraph(), k, &OracleBudget::with_cap(4 * k)).unwrap();
    assert_eq!(verdict.is_kappa_one(), kappa.value == 1, "{verdict:?} vs kappa {}", kappa.value);
    verdict.is_kappa_one()
}

#[test]
fn kappa_one_characterization_matches_the_oracle() {
    let mut ones = 0;
    let mut others = 0;
    let bt = gen_bt(&[3, 3, 3, 3]).unwrap();
    let mut hosts = vec![bt.clone()];
    // Flips inside BT(3,3,3,3) that keep the minimum out-degree.
    for (u, v) in bt.digraph().arcs().collect::<Vec<_>>() {
        let f = flip(&bt, u, v);
        if f.digraph().min_out_degree().unwrap() >= 3 {
            hosts.push(f);
        }
    }
    for seed in 0..30 {
        for sizes in [vec![4, 4, 4], vec![5, 5, 5], vec![5, 5, 6]] {
            hosts.extend(three_partite(sizes, seed, 3));
        }
        let raw = gen_random_multipartite(&GenSpec::new(vec![8, 8], seed)).unwrap();
        hosts.push(raise_min_out_degree(&raw, 3).unwrap());
    }
    for d in &hosts {
        assert!(d.vertex_count() <= 16);
        if assert_characterization_matches_oracle(d, 2) {
            ones += 1;
        } else {
            others += 1;
        }
    }
    assert!(ones >= 1 && others >= 50, "{ones} {others}");
}

#[test]
fn dominating_part_keeps_kappa_one() {
    let d = with_dominating_part(&gen_bt(&[3, 3, 3, 3]).unwrap(), 2);
    assert!(assert_characterization_matches_oracle(&d, 2));
}

#[test]
fn small_instances_with_a_triangle_have_two_lengths() {
    let mut checked = 0;
    for seed in 0..60 {
        let Some(d) = three_partite(vec![4, 4, 4], seed, 3) else { continue };
        if find_triangle(d.digraph(), &[]).is_none() {
            continue;
        }
        checked += 1;
        let ours = diversify_3partite(&d, 2).unwrap();
        let kappa = kappa_exact(d.digraph(), 2, &OracleBudget::unconditional(d.digraph())).unwrap();
        assert_eq!(kappa.value, 2);
        assert_eq!(ours.packing().distinct_lengths(), 2);
    }
    assert!(checked >= 30);
}
