//! Acceptance checks. Each test prints one `ACCEPTANCE <n> ...: PASS|FAIL`
//! line and then asserts. Every comparison is exact.

mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use common::*;
use rand::Rng;
use tihany_core::chromatic::{
    chromatic_index, kempe_component, kempe_swap, multiplicity_upper, shannon_upper, EdgeColorSolver,
};
use tihany_core::harness::{
    generate, multi_cycle, parse_edge_list, serialize, shannon_triangle, Enumeration, FamilySpec,
};
use tihany_core::linegraph::{build_line_graph, max_clique_bruteforce};
use tihany_core::proof_engine::{attempt_extension, select_s_v, EngineOptions};
use tihany_core::tihany::{
    admissible_pairs, batch_verify, general_floor, BatchOptions, BatchSummary, Outcome, ReportRecord, Verifier,
};
use tihany_core::Multigraph;

fn classes(max_edges: usize) -> Vec<Multigraph> {
    Enumeration::new(5, max_edges, 3).collect()
}

/// Graphs with `χ' > ω'` used by the later checks: the enumeration family,
/// odd multicycles and punctured Petersen multigraphs.
fn hypothesis_graphs() -> Vec<Multigraph> {
    let mut out: Vec<Multigraph> =
        Enumeration::new(5, 10, 3).filter(|g| chromatic_index(g).unwrap() > g.stats().omega_prime).collect();
    for (n, k) in [(5, 2), (5, 3), (7, 2), (7, 3), (9, 2)] {
        out.push(multi_cycle(n, k));
    }
    out.push(punctured_petersen(3, 2));
    out
}

#[test]
fn criterion_01_omega_prime_is_line_graph_clique_number() {
    let started = Instant::now();
    let graphs = classes(8);
    let mut bad = 0;
    for g in &graphs {
        let oracle = max_clique_bruteforce(&build_line_graph(g)).unwrap();
        let direct = max_degree(g).max(tau(g));
        if g.stats().omega_prime != oracle || oracle != direct {
            bad += 1;
        }
    }
    let pass = bad == 0 && !graphs.is_empty();
    report(
        1,
        "omega' = omega(L(G))",
        pass,
        &format!("{} classes, {bad} mismatches, {:.1?}", graphs.len(), started.elapsed()),
    );
    assert!(pass);
}

#[test]
fn criterion_02_solver_matches_line_graph_coloring() {
    let started = Instant::now();
    let graphs = classes(8);
    let mut bad = Vec::new();
    for g in &graphs {
        let mut solver = EdgeColorSolver::default();
        let (k, phi) = solver.chromatic_index_with_certificate(g).unwrap();
        let oracle = line_chromatic_number(g);
        if k != oracle || !is_proper(g, &phi) || phi.span() > k || !phi.is_total_for(g) {
            bad.push(g.pair_list());
        }
    }
    let pass = bad.is_empty();
    report(
        2,
        "solver exactness",
        pass,
        &format!("{} classes, {} mismatches, {:.1?}", graphs.len(), bad.len(), started.elapsed()),
    );
    assert!(pass, "{bad:?}");
}

#[test]
fn criterion_03_bound_sandwich_and_shannon_tightness() {
    let mut graphs = classes(8);
    graphs.extend(hypothesis_graphs());
    graphs.push(tihany_core::harness::petersen());
    let mut bad = 0;
    for g in &graphs {
        let chi = chromatic_index(g).unwrap();
        let lower = max_degree(g).max(tau(g)).max(matching_bound(g));
        let upper = (3 * max_degree(g) / 2).min(max_degree(g) + max_mult(g));
        let lib_upper = shannon_upper(g).min(multiplicity_upper(g));
        if !(lower <= chi && chi <= upper) || upper != lib_upper {
            bad += 1;
        }
    }
    let shannon: Vec<usize> = (1..=3).map(|k| chromatic_index(&shannon_triangle(k)).unwrap()).collect();
    let pass = bad == 0 && shannon == vec![3, 6, 9];
    report(
        3,
        "bound sandwich",
        pass,
        &format!("{} graphs, {bad} violations, Shannon triangles {shannon:?}", graphs.len()),
    );
    assert!(pass);
}

#[test]
fn criterion_04_no_candidates_at_ell_zero() {
    let started = Instant::now();
    let family = FamilySpec::Enumerate { max_n: 5, max_edges: 10, max_mult: 3 };
    let mut out = Vec::new();
    let summary = batch_verify(generate(&family).unwrap(), &BatchOptions::default(), &mut out).unwrap();
    let records: Vec<ReportRecord> =
        String::from_utf8(out).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let candidates = records.iter().filter(|r| r.outcome == "counterexample_candidate").count();
    let pass = candidates == 0 && summary.budget_exceeded == 0 && summary.hypothesis_holds > 0;
    report(
        4,
        "ell = 0 exhaustive batch",
        pass,
        &format!(
            "{} classes, {} with chi' > omega', {} witnesses, {candidates} candidates, {} budget, {:.1?}",
            summary.graphs_seen,
            summary.hypothesis_holds,
            summary.witnesses,
            summary.budget_exceeded,
            started.elapsed()
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_05_ell_one_witnesses() {
    let started = Instant::now();
    let graphs = vec![
        ("cycle:5:3", multi_cycle(5, 3)),
        ("cycle:7:2", multi_cycle(7, 2)),
        ("punctured petersen 3/2", punctured_petersen(3, 2)),
        ("punctured petersen 4/3", punctured_petersen(4, 3)),
    ];
    let mut verifier = Verifier::default();
    let mut details = Vec::new();
    let mut pass = true;
    for (name, g) in &graphs {
        let chi = verifier.chromatic_index(g).unwrap();
        let omega = g.stats().omega_prime;
        let mut witnesses = 0;
        let mut pairs = 0;
        if chi > omega {
            for r in verifier.verify_all_st(g, 1).unwrap() {
                if r.instance.s < 4 {
                    continue;
                }
                pairs += 1;
                match r.outcome {
                    Outcome::Witness { .. } => witnesses += 1,
                    _ => pass = false,
                }
            }
        }
        if name.starts_with("punctured") && (chi < 7 || chi <= omega) {
            pass = false;
        }
        details.push(format!("{name}: chi'={chi} omega'={omega} {witnesses}/{pairs}"));
    }
    report(5, "ell = 1 witnesses", pass, &format!("{}; {:.1?}", details.join(", "), started.elapsed()));
    assert!(pass);
}

#[test]
fn criterion_06_kempe_swaps() {
    let mut rng = rng(6);
    let mut passed = 0;
    let total = 1000;
    for _ in 0..total {
        let n = rng.gen_range(2..=8);
        let g = {
            let p = rng.gen_range(0.3..0.9);
            random_multigraph(&mut rng, n, p, 3)
        };
        let phi = random_proper_coloring(&mut rng, &g);
        let palette = phi.span().max(2);
        let c = rng.gen_range(0..palette);
        let alpha = (c + rng.gen_range(1..palette)) % palette;
        let x = rng.gen_range(0..n);
        let comp = kempe_component(&g, &phi, c, alpha, x).unwrap();
        let once = kempe_swap(&g, &phi, &comp).unwrap();
        let back_comp = kempe_component(&g, &once, c, alpha, x).unwrap();
        let twice = kempe_swap(&g, &once, &back_comp).unwrap();
        let same_edges = comp.edge_ids.iter().collect::<BTreeSet<_>>() == back_comp.edge_ids.iter().collect();
        if is_proper(&g, &once) && once.is_total_for(&g) && twice == phi && same_edges {
            passed += 1;
        }
    }
    let pass = passed == total;
    report(6, "Kempe swap properness and involution", pass, &format!("{passed}/{total}"));
    assert!(pass);
}

#[test]
fn criterion_07_round_robin_selection() {
    let mut rng = rng(7);
    let mut passed = 0;
    let total = 10_000;
    for _ in 0..total {
        let n = rng.gen_range(2..=8);
        let g = loop {
            let p = rng.gen_range(0.3..1.0);
            let g = random_multigraph(&mut rng, n, p, 5);
            if g.edge_count() > 0 {
                break g;
            }
        };
        let busy: Vec<usize> = (0..n).filter(|&v| degree(&g, v) > 0).collect();
        let v = busy[rng.gen_range(0..busy.len())];
        let s = rng.gen_range(1..=degree(&g, v));
        let sel = select_s_v(&g, v, s).unwrap();
        let m: Vec<usize> = sel.neighbor_order.iter().map(|&u| mult(&g, v, u)).collect();
        let sorted = m.windows(2).all(|w| w[0] >= w[1]);
        let used: Vec<usize> = sel.counts.iter().copied().filter(|&c| c > 0).collect();
        let monotone = used.windows(2).all(|w| w[0] >= w[1]) && sel.counts[..used.len()] == used[..];
        let mut useful = true;
        for i in 0..sel.counts.len() {
            for (j, &mj) in m.iter().enumerate().skip(i + 1) {
                if sel.counts[i] >= sel.counts[j] + 2 && sel.counts[j] != mj {
                    useful = false;
                }
            }
        }
        let edges: BTreeSet<usize> = sel.s_v.iter().copied().collect();
        let at_v = sel.s_v.iter().all(|&e| {
            let edge = g.edge(e).unwrap();
            edge.u == v || edge.v == v
        });
        let sums = sel.counts.iter().sum::<usize>() == s && edges.len() == s;
        let within = sel.counts.iter().zip(&m).all(|(c, mm)| c <= mm);
        if sorted && monotone && useful && at_v && sums && within {
            passed += 1;
        }
    }
    let pass = passed == total;
    report(7, "round-robin selection invariants", pass, &format!("{passed}/{total}"));
    assert!(pass);
}

/// `χ'` with a certificate checked here: a proper coloring from the solver
/// and a matching lower bound computed independently, or the brute-force
/// line-graph coloring when the graph is small.
fn certified_chi(g: &Multigraph) -> Option<usize> {
    let (k, phi) = EdgeColorSolver::default().chromatic_index_with_certificate(g).ok()?;
    if !is_proper(g, &phi) || !phi.is_total_for(g) || phi.span() > k {
        return None;
    }
    let lower = max_degree(g).max(tau(g)).max(matching_bound(g));
    if lower == k || (g.edge_count() <= 14 && line_chromatic_number(g) == k) {
        Some(k)
    } else {
        None
    }
}

#[test]
fn criterion_08_extension_soundness() {
    let started = Instant::now();
    let opts = EngineOptions::default();
    let want = 500;
    let mut rng = rng(8);
    let mut tight = 0;
    let mut tight_extended = 0;
    let mut loose = 0;
    let mut loose_extended = 0;
    let mut invalid = 0;
    let mut sources = hypothesis_graphs().into_iter();
    let mut draws = 0;
    while (tight < want || loose < want) && draws < 200_000 {
        let g = match sources.next() {
            Some(g) => g,
            None => {
                draws += 1;
                let n = rng.gen_range(3..=7);
                {
                    let p = rng.gen_range(0.4..1.0);
                    random_multigraph(&mut rng, n, p, 3)
                }
            }
        };
        if g.edge_count() == 0 {
            continue;
        }
        let Some(chi) = certified_chi(&g) else { continue };
        let omega = g.stats().omega_prime;
        for ell in 0..=1 {
            for total in [chi, chi + 1, chi + 2] {
                for (s, t) in admissible_pairs(total, ell) {
                    if s + t - 1 <= omega {
                        continue;
                    }
                    let is_tight = s + t - 1 == chi;
                    if (is_tight && tight >= want) || (!is_tight && loose >= want) {
                        continue;
                    }
                    let out = attempt_extension(&g, s, t, ell, &opts).unwrap();
                    if let Some(phi) = out.coloring() {
                        if !is_proper(&g, phi) || !phi.is_total_for(&g) || phi.span() > s + t - 2 {
                            invalid += 1;
                        }
                        if out.replay().as_ref() != Some(phi) {
                            invalid += 1;
                        }
                    }
                    if is_tight {
                        tight += 1;
                        tight_extended += out.is_extended() as usize;
                    } else {
                        loose += 1;
                        loose_extended += out.is_extended() as usize;
                    }
                }
            }
        }
    }
    let pass = tight >= want && loose >= want && tight_extended == 0 && invalid == 0;
    report(
        8,
        "extension engine soundness",
        pass,
        &format!(
            "chi' = s+t-1: {tight} instances, {tight_extended} extended; chi' <= s+t-2: {loose} instances, \
             {loose_extended} extended, {invalid} invalid; {:.1?}",
            started.elapsed()
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_09_probe_threshold() {
    let started = Instant::now();
    let mut verifier = Verifier::default();
    let mut probes = 0;
    let mut applicable = 0;
    let mut violations = Vec::new();
    for g in hypothesis_graphs() {
        let chi = verifier.chromatic_index(&g).unwrap();
        for ell in 0..=2 {
            let Ok(f) = verifier.probe_f(&g, ell) else { continue };
            probes += 1;
            let bound = general_floor(ell);
            // a pair (bound, t) with bound <= t exists
            if 2 * bound <= chi + 1 {
                applicable += 1;
                if !f.is_some_and(|f| f <= bound) {
                    violations.push((g.pair_list(), ell, f));
                }
            }
        }
    }
    let pass = violations.is_empty() && applicable > 0;
    report(
        9,
        "probed threshold within 3.5 ell + 2",
        pass,
        &format!(
            "{probes} probes, {applicable} with pairs at the bound, {} violations, {:.1?}",
            violations.len(),
            started.elapsed()
        ),
    );
    assert!(pass, "{violations:?}");
}

fn strip_ms(records: &[u8]) -> BTreeSet<String> {
    String::from_utf8(records.to_vec())
        .unwrap()
        .lines()
        .map(|l| {
            let mut v: serde_json::Value = serde_json::from_str(l).unwrap();
            v.as_object_mut().unwrap().remove("ms");
            v.to_string()
        })
        .collect()
}

#[test]
fn criterion_10_round_trip_and_resume() {
    let mut rng = rng(10);
    let mut round_trips = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(0..=9);
        let g = {
            let p = rng.gen_range(0.0..1.0);
            random_multigraph(&mut rng, n, p, 4)
        };
        let back = parse_edge_list(&serialize(&g)).unwrap();
        if back.same_structure(&g) && serialize(&back) == serialize(&g) {
            round_trips += 1;
        }
    }

    let family = FamilySpec::Enumerate { max_n: 5, max_edges: 10, max_mult: 3 };
    let opts = BatchOptions { ells: vec![0, 1], ..Default::default() };
    let mut full = Vec::new();
    let full_summary = batch_verify(generate(&family).unwrap(), &opts, &mut full).unwrap();

    let dir = tempfile::tempdir().unwrap();
    let ckpt = dir.path().join("run.ckpt");
    let mut resumed = Vec::new();
    let mut parts: Vec<BatchSummary> = Vec::new();
    for (resume, max_graphs) in [(false, Some(400)), (true, Some(300)), (true, None)] {
        let opts = BatchOptions { checkpoint: Some(ckpt.clone()), resume, max_graphs, ..opts.clone() };
        parts.push(batch_verify(generate(&family).unwrap(), &opts, &mut resumed).unwrap());
    }
    let seen: u64 = parts.iter().map(|p| p.graphs_seen).sum();
    let same = strip_ms(&full) == strip_ms(&resumed);
    let no_dupes = strip_ms(&resumed).len() == String::from_utf8(resumed.clone()).unwrap().lines().count();
    let pass = round_trips == 1000 && same && no_dupes && seen == full_summary.graphs_seen;
    report(
        10,
        "round trip and resume",
        pass,
        &format!(
            "{round_trips}/1000 round trips; {} records uninterrupted, resumed run in 3 sessions equal: {same}",
            strip_ms(&full).len()
        ),
    );
    assert!(pass);
}
