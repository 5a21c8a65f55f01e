use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::ops::ControlFlow;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use mtcycles::generators::{
    gen_bt, gen_extended_tournament, gen_layered_triangle_free, gen_random_tournament, gen_with_min_outdegree,
    raise_min_out_degree, GenSpec,
};
use mtcycles::harness::{parse_sizes, reverify_candidate, run_campaign, CampaignConfig, Family};
use mtcycles::oracle::{exists_k_disjoint, for_each_packing, kappa_exact, verify_packing, OracleBudget};
use mtcycles::packing::{
    diversify_3partite, find_triangle, kappa_one_characterization, merge_triangle_pair, pack_3partite, pack_extended,
    pack_multipartite_3k2, pack_triangle_free, recognize_bt, split_triangle_triple, PackingError,
};
use mtcycles::{build_multipartite, Cycle, CyclePacking, Digraph, MultipartiteTournament};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Verdict {
    pass: bool,
    detail: String,
    report: String,
    counterexample: bool,
}

impl Verdict {
    fn new(pass: bool, detail: String, report: String) -> Self {
        Self { pass, detail, report, counterexample: false }
    }
}

fn line(id: usize, name: &str, v: &Verdict, elapsed: Duration, limit: Option<Duration>) -> bool {
    let ok = v.pass && limit.is_none_or(|l| elapsed < l);
    let limit = limit.map(|l| format!(", limit {}s", l.as_secs())).unwrap_or_default();
    println!(
        "criterion {id:>2} {} {name}: {} ({:.2}s{limit})",
        if ok { "PASS" } else { "FAIL" },
        v.detail,
        elapsed.as_secs_f64(),
    );
    ok
}

fn fmt_packing(p: &CyclePacking) -> String {
    p.cycles().iter().map(|c| format!("[{c}]")).collect::<Vec<_>>().join(" ")
}

fn three_partite_instance(seed: u64) -> MultipartiteTournament {
    gen_with_min_outdegree(&GenSpec::new(vec![5, 5, 5], seed).with_min_out_degree(3)).expect("instance generates")
}

fn tightness() -> Verdict {
    let k3 = Digraph::complete(3);
    let k5 = Digraph::complete(5);
    let mut fails = Vec::new();
    for (name, d, k, expect) in [("K*3", &k3, 2, false), ("K*3", &k3, 1, true), ("K*5", &k5, 3, false), ("K*5", &k5, 2, true)]
    {
        let found = exists_k_disjoint(d, k, &OracleBudget::unconditional(d)).expect("oracle runs");
        if let Some(p) = &found {
            if verify_packing(d, p.cycles()).is_err() {
                fails.push(format!("{name} k={k} invalid witness"));
            }
        }
        if found.is_some() != expect {
            fails.push(format!("{name} k={k} found={}", found.is_some()));
        }
    }
    Verdict::new(fails.is_empty(), if fails.is_empty() { "4/4 exact".into() } else { fails.join("; ") }, String::new())
}

fn three_partite_packing() -> Verdict {
    let mut report = String::new();
    let mut failures = 0;
    let mut cross_checked = 0;
    for seed in 0..500u64 {
        let d = three_partite_instance(seed);
        let g = d.digraph();
        let packed = match pack_3partite(&d, 2) {
            Ok(p) => p,
            Err(e) => {
                failures += 1;
                writeln!(report, "{seed} error {e}").unwrap();
                continue;
            }
        };
        if verify_packing(g, packed.cycles()).is_err() {
            failures += 1;
        }
        writeln!(report, "{seed} {}", fmt_packing(&packed)).unwrap();
        if let Some(t) = find_triangle(g, &[]) {
            let rest: Vec<usize> = (0..g.vertex_count()).filter(|&v| !t.contains(v)).collect();
            if rest.len() <= 13 {
                let (sub, _) = g.induced(&rest);
                let one = exists_k_disjoint(&sub, 1, &OracleBudget::unconditional(&sub)).expect("oracle runs");
                let two = exists_k_disjoint(g, 2, &OracleBudget::unconditional(g)).expect("oracle runs");
                cross_checked += 1;
                if one.is_none() || two.is_none() {
                    failures += 1;
                    writeln!(report, "{seed} oracle disagrees").unwrap();
                }
            }
        }
    }
    Verdict::new(
        failures == 0,
        format!("500 instances, {failures} failures, {cross_checked} oracle cross-checks"),
        report,
    )
}

fn diversity() -> Verdict {
    let mut report = String::new();
    let mut failures = 0;
    let mut exhaustion = 0;
    let mut with_triangle = 0;
    let record = |e: &PackingError, failures: &mut usize, exhaustion: &mut usize| {
        *failures += 1;
        if matches!(e, PackingError::InternalExhaustion(_)) {
            *exhaustion += 1;
        }
    };
    for seed in 0..500u64 {
        let d = three_partite_instance(seed);
        if find_triangle(d.digraph(), &[]).is_none() {
            continue;
        }
        with_triangle += 1;
        match diversify_3partite(&d, 2) {
            Ok(p) => {
                let ok = verify_packing(d.digraph(), p.packing().cycles()).is_ok()
                    && p.packing().k() == 2
                    && p.packing().distinct_lengths() == 2;
                if !ok {
                    failures += 1;
                }
                writeln!(report, "{seed} {}", fmt_packing(p.packing())).unwrap();
            }
            Err(e) => {
                record(&e, &mut failures, &mut exhaustion);
                writeln!(report, "{seed} error {e}").unwrap();
            }
        }
    }
    let mut confirmed = 0;
    let mut seed = 10_000u64;
    while confirmed < 50 {
        let d = gen_with_min_outdegree(&GenSpec::new(vec![4, 4, 4], seed).with_min_out_degree(3))
            .expect("instance generates");
        seed += 1;
        if find_triangle(d.digraph(), &[]).is_none() {
            continue;
        }
        confirmed += 1;
        let kappa = kappa_exact(d.digraph(), 2, &OracleBudget::unconditional(d.digraph())).expect("oracle runs");
        let ours = diversify_3partite(&d, 2);
        if let Err(e) = &ours {
            record(e, &mut failures, &mut exhaustion);
        }
        if kappa.value < 2 {
            failures += 1;
        }
        writeln!(report, "small {} kappa {}", seed - 1, kappa.value).unwrap();
    }
    Verdict::new(
        failures == 0 && exhaustion == 0,
        format!(
            "{with_triangle} instances with a triangle, 50 oracle confirmations, {failures} failures, {exhaustion} exhaustion events"
        ),
        report,
    )
}

fn permuted(d: &MultipartiteTournament, rng: &mut ChaCha8Rng) -> MultipartiteTournament {
    let n = d.vertex_count();
    let mut map: Vec<usize> = (0..n).collect();
    map.shuffle(rng);
    let parts = d.parts().iter().map(|p| p.iter().map(|&v| map[v]).collect()).collect();
    let arcs: Vec<_> = d.digraph().arcs().map(|(u, v)| (map[u], map[v])).collect();
    build_multipartite(parts, arcs).expect("relabelling keeps the structure")
}

fn bt_characterization() -> Verdict {
    let mut fails = Vec::new();
    let d = gen_bt(&[3, 3, 3, 3]).expect("bt generates");
    let g = d.digraph();
    let budget = OracleBudget::with_cap(8);
    let kappa = kappa_exact(g, 2, &budget).expect("oracle runs");
    if kappa.value != 1 {
        fails.push(format!("kappa {}", kappa.value));
    }
    let mut packings = 0usize;
    let mut bad = 0usize;
    for_each_packing(g, 2, &budget, |cycles| {
        packings += 1;
        if cycles.iter().any(|c| c.len() != 4) {
            bad += 1;
        }
        ControlFlow::Continue(())
    })
    .expect("oracle runs");
    if bad > 0 || packings == 0 {
        fails.push(format!("{bad} of {packings} packings not two 4-cycles"));
    }
    match kappa_one_characterization(&d, 2) {
        Ok(v) if v.is_kappa_one() => {}
        other => fails.push(format!("characterization {other:?}")),
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for n_list in [[2, 3, 2, 3], [3, 3, 3, 3]] {
        let d = permuted(&gen_bt(&n_list).expect("bt generates"), &mut rng);
        let got = recognize_bt(&d).map(|l| {
            let mut s = l.n_list;
            s.sort_unstable();
            s
        });
        let mut want = n_list.to_vec();
        want.sort_unstable();
        if got.as_ref() != Some(&want) {
            fails.push(format!("round trip {n_list:?} gave {got:?}"));
        }
    }
    let report = format!("kappa {} packings {packings} bad {bad}\n", kappa.value);
    let detail = if fails.is_empty() {
        format!("kappa 1, {packings} packings all two 4-cycles, characterization true, round trips ok")
    } else {
        fails.join("; ")
    };
    Verdict::new(fails.is_empty(), detail, report)
}

fn merge_exhaustive() -> Verdict {
    let mut report = String::new();
    let mut cases = 0;
    let mut failures = 0;
    // shared[j]: vertex 3+j lies in the same part as vertex j.
    for shared_mask in 0u32..8 {
        let cross: Vec<(usize, usize)> = (0..3)
            .flat_map(|i| (3..6).map(move |j| (i, j)))
            .filter(|&(i, j)| !(i == j - 3 && shared_mask & (1 << i) != 0))
            .collect();
        for rev1 in [false, true] {
            for rev2 in [false, true] {
                let c1: Vec<usize> = if rev1 { vec![0, 2, 1] } else { vec![0, 1, 2] };
                let c2: Vec<usize> = if rev2 { vec![3, 5, 4] } else { vec![3, 4, 5] };
                for orient in 0u32..(1 << cross.len()) {
                    let mut arcs: Vec<(usize, usize)> = Vec::new();
                    for c in [&c1, &c2] {
                        arcs.extend((0..3).map(|i| (c[i], c[(i + 1) % 3])));
                    }
                    let (mut fwd, mut back) = (false, false);
                    for (b, &(u, v)) in cross.iter().enumerate() {
                        if orient & (1 << b) != 0 {
                            arcs.push((u, v));
                            fwd = true;
                        } else {
                            arcs.push((v, u));
                            back = true;
                        }
                    }
                    if !(fwd && back) {
                        continue;
                    }
                    cases += 1;
                    let d = Digraph::new(6, arcs).expect("valid digraph");
                    let t1 = Cycle::new(c1.clone()).unwrap();
                    let t2 = Cycle::new(c2.clone()).unwrap();
                    let ok = match merge_triangle_pair(&d, &t1, &t2) {
                        Ok(c) => c.len() >= 4 && c.lies_in(&d) && c.vertices().iter().all(|&v| v < 6),
                        Err(_) => false,
                    };
                    if !ok {
                        failures += 1;
                        writeln!(report, "fail mask {shared_mask} rev {rev1} {rev2} orient {orient}").unwrap();
                    }
                }
            }
        }
    }
    writeln!(report, "cases {cases}").unwrap();
    Verdict::new(
        failures == 0,
        format!("{cases} configurations over 6 to 9 cross arcs, {failures} failures"),
        report,
    )
}

fn permutations3() -> Vec<[usize; 3]> {
    vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]]
}

fn split_exhaustive() -> Verdict {
    let mut report = String::new();
    let mut cases = 0;
    let mut failures = 0;
    let perms = permutations3();
    // Triangle i uses vertices 3i..3i+3; alignment[i][j] is the part of 3i+j.
    for a1 in &perms {
        for a2 in &perms {
            for a3 in &perms {
                let alignment = [a1, a2, a3];
                for orient in 0u32..8 {
                    let tri: Vec<Vec<usize>> = (0..3)
                        .map(|i| {
                            let b = 3 * i;
                            if orient & (1 << i) != 0 {
                                vec![b, b + 2, b + 1]
                            } else {
                                vec![b, b + 1, b + 2]
                            }
                        })
                        .collect();
                    let part = |v: usize| alignment[v / 3][v % 3];
                    let mut parts = vec![Vec::new(); 3];
                    for v in 0..9 {
                        parts[part(v)].push(v);
                    }
                    let mut arcs: Vec<(usize, usize)> = Vec::new();
                    for t in &tri {
                        arcs.extend((0..3).map(|i| (t[i], t[(i + 1) % 3])));
                    }
                    for i in 0..3 {
                        let j = (i + 1) % 3;
                        for &u in &tri[i] {
                            for &v in &tri[j] {
                                if part(u) != part(v) {
                                    arcs.push((u, v));
                                }
                            }
                        }
                    }
                    let d = build_multipartite(parts, arcs).expect("valid 3-partite tournament");
                    let cycles: Vec<Cycle> = tri.iter().map(|t| Cycle::new(t.clone()).unwrap()).collect();
                    for rot in 0..3 {
                        cases += 1;
                        let (c1, c2, c3) = (&cycles[rot], &cycles[(rot + 1) % 3], &cycles[(rot + 2) % 3]);
                        let ok = match split_triangle_triple(&d, c1, c2, c3) {
                            Ok((four, three)) => {
                                four.len() == 4
                                    && three.len() == 3
                                    && verify_packing(d.digraph(), &[four, three]).is_ok()
                            }
                            Err(_) => false,
                        };
                        if !ok {
                            failures += 1;
                            writeln!(report, "fail {a1:?} {a2:?} {a3:?} orient {orient} rot {rot}").unwrap();
                        }
                    }
                }
            }
        }
    }
    writeln!(report, "cases {cases}").unwrap();
    Verdict::new(failures == 0, format!("{cases} configurations, {failures} failures"), report)
}

fn triangle_free() -> Verdict {
    let mut report = String::new();
    let mut failures = 0;
    let mut non_bipartite = 0;
    let mut check = |label: String, d: &MultipartiteTournament, report: &mut String| {
        match pack_triangle_free(d, 2) {
            Ok(p) if verify_packing(d.digraph(), p.cycles()).is_ok() => {
                writeln!(report, "{label} {}", fmt_packing(&p)).unwrap();
            }
            Ok(_) => {
                failures += 1;
                writeln!(report, "{label} invalid").unwrap();
            }
            Err(e) => {
                failures += 1;
                if matches!(e, PackingError::NonBipartiteTerminal(_)) {
                    non_bipartite += 1;
                }
                writeln!(report, "{label} error {e}").unwrap();
            }
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..200 {
        let groups = if rng.random_bool(0.5) { 4 } else { 6 };
        let n_list: Vec<usize> = (0..groups).map(|_| rng.random_range(3..=5)).collect();
        let d = gen_bt(&n_list).expect("bt generates");
        check(format!("bt {i} {n_list:?}"), &d, &mut report);
    }
    let mut accepted = 0;
    let mut seed = 0u64;
    while accepted < 200 {
        seed += 1;
        let d = if seed.is_multiple_of(2) {
            let a = rng.random_range(6..=9);
            let b = rng.random_range(6..=9);
            let spec = GenSpec::new(vec![a, b], seed);
            match mtcycles::generators::gen_random_multipartite(&spec) {
                Ok(d) => match raise_min_out_degree(&d, 3) {
                    Ok(d) => d,
                    Err(_) => continue,
                },
                Err(_) => continue,
            }
        } else {
            let top = (rng.random_range(0..=3), rng.random_range(0..=3));
            match gen_layered_triangle_free((8, 8), top, seed, 3, 10_000) {
                Ok(d) => d,
                Err(_) => continue,
            }
        };
        if d.digraph().min_out_degree().unwrap_or(0) < 3 || find_triangle(d.digraph(), &[]).is_some() {
            continue;
        }
        accepted += 1;
        check(format!("random {seed} parts {}", d.part_count()), &d, &mut report);
    }
    Verdict::new(
        failures == 0 && non_bipartite == 0,
        format!("400 instances, {failures} failures, {non_bipartite} non-bipartite terminal components"),
        report,
    )
}

fn corollary() -> Verdict {
    let mut report = String::new();
    let mut failures = 0;
    for seed in 0..200u64 {
        let d = gen_with_min_outdegree(&GenSpec::new(vec![4, 4, 4, 4], seed).with_min_out_degree(4))
            .expect("instance generates");
        match pack_multipartite_3k2(&d, 2) {
            Ok(p) => {
                if verify_packing(d.digraph(), p.cycles()).is_err() || p.k() != 2 {
                    failures += 1;
                }
                writeln!(report, "{seed} {}", fmt_packing(&p)).unwrap();
            }
            Err(e) => {
                failures += 1;
                writeln!(report, "{seed} error {e}").unwrap();
            }
        }
    }
    Verdict::new(failures == 0, format!("200 instances, {failures} failures"), report)
}

fn extended() -> Verdict {
    let mut report = String::new();
    let mut failures = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut accepted = 0;
    let mut seed = 0u64;
    while accepted < 100 {
        seed += 1;
        let t = gen_random_tournament(7, seed).expect("tournament generates");
        let sizes: Vec<usize> = (0..7).map(|_| rng.random_range(1..=3)).collect();
        let d = gen_extended_tournament(&t, &sizes).expect("blow-up generates");
        if d.digraph().min_out_degree().unwrap_or(0) < 3 {
            continue;
        }
        accepted += 1;
        match pack_extended(&d, 2) {
            Ok(p) => {
                let ok = verify_packing(d.digraph(), p.cycles()).is_ok() && p.k() == 2 && p.lengths() == vec![3, 3];
                if !ok {
                    failures += 1;
                }
                writeln!(report, "{seed} {sizes:?} {}", fmt_packing(&p)).unwrap();
            }
            Err(e) => {
                failures += 1;
                writeln!(report, "{seed} error {e}").unwrap();
            }
        }
    }
    Verdict::new(failures == 0, format!("100 blow-ups, {failures} failures"), report)
}

fn hunts() -> Verdict {
    let mut report = String::new();
    let mut candidates = 0;
    let mut confirmed = 0;
    let mut problems = Vec::new();
    for (family, sizes, seed) in [
        (Family::FourPartite, "3,3,3,3", 101u64),
        (Family::Split, "5,7", 202),
        (Family::Multipartite, "3,3,3,3", 303),
    ] {
        let config = CampaignConfig::new(family, parse_sizes(sizes).expect("sizes parse"), 2, 300, seed);
        let r = run_campaign(&config).expect("campaign runs");
        for c in r.counterexamples() {
            candidates += 1;
            match reverify_candidate(c) {
                Ok(true) => confirmed += 1,
                Ok(false) => problems.push(format!("{family} trial {} did not re-verify", c.index)),
                Err(e) => problems.push(format!("{family} trial {}: {e}", c.index)),
            }
        }
        if r.summary.errors > 0 || r.summary.hypothesis_unmet > 0 || r.summary.oracle_checked != r.summary.trials {
            problems.push(format!(
                "{family}: {} errors, {} unmet, {} oracle-checked",
                r.summary.errors, r.summary.hypothesis_unmet, r.summary.oracle_checked
            ));
        }
        report.push_str(&r.to_text());
    }
    let mut v = Verdict::new(
        candidates == 0 && problems.is_empty(),
        format!("900 trials, {candidates} candidates, {confirmed} re-verified{}", {
            if problems.is_empty() { String::new() } else { format!(", {}", problems.join("; ")) }
        }),
        report,
    );
    v.counterexample = confirmed > 0;
    v
}

type Criterion = (usize, &'static str, fn() -> Verdict, u64);

const CRITERIA: [Criterion; 10] = [
    (1, "tightness of K*3 and K*5", tightness, 1),
    (2, "3-partite packing", three_partite_packing, 120),
    (3, "two distinct lengths", diversity, 300),
    (4, "BT characterization", bt_characterization, 60),
    (5, "triangle pair merge", merge_exhaustive, 10),
    (6, "triangle triple split", split_exhaustive, 30),
    (7, "triangle-free packing", triangle_free, 120),
    (8, "3k-2 corollary", corollary, 60),
    (9, "extended tournaments", extended, 60),
    (10, "open-problem hunts", hunts, 600),
];

fn main() -> ExitCode {
    let mut all_ok = true;
    let mut reports = Vec::new();
    for (id, name, run, limit) in CRITERIA {
        let start = Instant::now();
        let v = run();
        all_ok &= line(id, name, &v, start.elapsed(), Some(Duration::from_secs(limit)));
        if v.counterexample {
            println!("confirmed counterexample, halting");
            return ExitCode::from(3);
        }
        reports.push((id, v.report));
    }
    let start = Instant::now();
    let differing: BTreeSet<usize> = CRITERIA[1..]
        .iter()
        .zip(&reports[1..])
        .filter(|((_, _, run, _), (_, first))| run().report.as_bytes() != first.as_bytes())
        .map(|(_, (id, _))| *id)
        .collect();
    let bytes: usize = reports[1..].iter().map(|(_, r)| r.len()).sum();
    let v = Verdict::new(
        differing.is_empty(),
        if differing.is_empty() {
            format!("criteria 2-10 rerun, {bytes} report bytes identical")
        } else {
            format!("reports differ for criteria {differing:?}")
        },
        String::new(),
    );
    all_ok &= line(11, "determinism", &v, start.elapsed(), None);
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
