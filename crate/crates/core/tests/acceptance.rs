//! Acceptance suite: ten criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so every line is printed even when
//! earlier criteria fail. Exits non-zero if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use rand::Rng;

use spslab::classical::{
    check_thm3, classical_properties, decompose, is_totally_nonclassical, ClassicalAnalysis,
    OperationalClassicalAnalysis,
};
use spslab::closure::prop1_verdict;
use spslab::fixtures;
use spslab::iso::is_isomorphic;
use spslab::order::{central_elements, enumerate_orthos, verify_ortho, OrthoMap, DEFAULT_SIZE_CAP};
use spslab::sphere::{
    build_model, counterexample_eps0, epsilon_sweep, icosahedron, outcome_probability, simulate, OrthoSearchOutcome,
    SphereModelConfig, SpherePoint, TestSpec,
};
use spslab::sps::{direct_sum_with_orthos, AxiomFailure, SpsCandidate};
use spslab::topological::{check_prop2, is_t_classical, t_classical_system, TopologicalAnalysis};
use spslab::{FiniteSps, FiniteTopology, Lattice, StateSet};

use common::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let holds: bool = $cond;
        if !holds {
            return Err(format!($($msg)+));
        }
    };
}

fn within(limit: Duration, start: Instant) -> Outcome {
    let t = start.elapsed();
    if t <= limit {
        Ok(format!("{:.2?}", t))
    } else {
        Err(format!("took {:.2?}, limit {:.0?}", t, limit))
    }
}

// ---------------------------------------------------------------------
// 1. axiom suite

/// True when `f` really is a violation of the family `family` over `n`
/// states (order = inclusion).
fn witness_is_genuine(n: usize, family: &[StateSet], f: &AxiomFailure) -> bool {
    let top = family.iter().find(|a| family.iter().all(|b| b.is_subset(**a)));
    let bottom = family.iter().find(|a| family.iter().all(|b| a.is_subset(*b)));
    match *f {
        AxiomFailure::NoTop => top.is_none(),
        AxiomFailure::TopNotActual { state } => top.is_some_and(|t| !t.contains(state)) && state < n,
        AxiomFailure::NoBottom => bottom.is_none(),
        AxiomFailure::BottomActual { state } => bottom.is_some_and(|b| b.contains(state)),
        AxiomFailure::NotALattice { a, b } => {
            let m = family[a].intersection(family[b]);
            let lower: Vec<StateSet> = family.iter().copied().filter(|c| c.is_subset(m)).collect();
            !lower.iter().any(|g| lower.iter().all(|c| c.is_subset(*g)))
        }
        AxiomFailure::MeetNotIntersection { a, b } => !family.contains(&family[a].intersection(family[b])),
        AxiomFailure::NotDetermined { a, b } => a != b && family[a] == family[b],
        AxiomFailure::PreorderMismatch { .. } => false,
    }
}

enum Mutation {
    Removed,
    Added,
}

/// A one-set change that breaks intersection closure (or drops ∅ / Σ).
fn mutate(rng: &mut rand_chacha::ChaCha8Rng, n: usize, family: &[StateSet]) -> Option<(Vec<StateSet>, Mutation)> {
    let full = StateSet::full(n);
    if rng.random_bool(0.5) {
        let removable: Vec<StateSet> = family
            .iter()
            .copied()
            .filter(|&x| {
                x == full
                    || x.is_empty()
                    || family
                        .iter()
                        .any(|&a| family.iter().any(|&b| a != x && b != x && a.intersection(b) == x))
            })
            .collect();
        let x = removable[rng.random_range(0..removable.len())];
        let out: Vec<StateSet> = family.iter().copied().filter(|&s| s != x).collect();
        Some((out, Mutation::Removed))
    } else {
        let addable: Vec<StateSet> = (0u128..1 << n)
            .map(StateSet::from_bits)
            .filter(|y| !family.contains(y))
            .filter(|&y| {
                family
                    .iter()
                    .any(|a| !family.contains(&a.intersection(y)) && a.intersection(y) != y)
            })
            .collect();
        if addable.is_empty() {
            return None;
        }
        let y = addable[rng.random_range(0..addable.len())];
        let mut out = family.to_vec();
        out.push(y);
        Some((out, Mutation::Added))
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut rng = rng(1);
    for i in 0..100 {
        let (n, family) = random_family(&mut rng, 8);
        ensure!(
            is_intersection_closed(&family),
            "generator produced a non-closed family"
        );
        let report = SpsCandidate {
            states: names(n),
            family: family.clone(),
            declared_preorder: None,
        }
        .verify();
        ensure!(report.passed(), "valid family #{i} rejected: {report}");
    }
    let (mut removed, mut added, mut made) = (0, 0, 0);
    while made < 100 {
        let (n, family) = random_family(&mut rng, 8);
        let Some((mutant, how)) = mutate(&mut rng, n, &family) else {
            continue;
        };
        made += 1;
        let report = SpsCandidate {
            states: names(n),
            family: mutant.clone(),
            declared_preorder: None,
        }
        .verify();
        ensure!(!report.passed(), "mutant #{made} accepted");
        for f in &report.failures {
            ensure!(
                witness_is_genuine(n, &mutant, f),
                "mutant #{made}: bogus witness {}",
                report.describe(f)
            );
        }
        match how {
            Mutation::Removed => removed += 1,
            Mutation::Added => added += 1,
        }
    }
    let t = within(Duration::from_secs(5), start)?;
    Ok(format!(
        "100 valid accepted, 100 mutants ({removed} removals, {added} additions) rejected with genuine witnesses, {t}"
    ))
}

// ---------------------------------------------------------------------
// 2. closed-set lattices of topologies

fn all_topologies(n: usize) -> Vec<FiniteTopology> {
    let full = StateSet::full(n);
    let middle: Vec<StateSet> = (1u128..(1 << n) - 1).map(StateSet::from_bits).collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << middle.len() {
        let mut opens = vec![StateSet::EMPTY, full];
        opens.extend(
            middle
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, s)| *s),
        );
        let closed = opens.iter().all(|a| {
            opens
                .iter()
                .all(|b| opens.contains(&a.union(*b)) && opens.contains(&a.intersection(*b)))
        });
        if closed {
            out.push(FiniteTopology::new(names(n), opens).unwrap());
        }
    }
    out
}

fn check_prop1(t: &FiniteTopology) -> Result<(), String> {
    let v = prop1_verdict(t, 128).map_err(|e| e.to_string())?;
    let n = t.ground().len();
    // closed sets form a distributive sublattice of the power set, so being
    // Boolean means every complement is again closed, i.e. clopen
    let complement_closed = t.opens().iter().all(|o| t.is_open(o.complement(n)));
    let agree = v.ortho_exists == v.boolean && v.boolean == v.clopen_coincide;
    if !agree || v.boolean != complement_closed || !v.equivalence_holds {
        return Err(format!("disagreement on {:?}: {v:?}", t.opens()));
    }
    Ok(())
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut exhaustive = 0;
    for n in 1..=4 {
        for t in all_topologies(n) {
            check_prop1(&t)?;
            exhaustive += 1;
        }
    }
    ensure!(
        exhaustive == 1 + 4 + 29 + 355,
        "expected 389 topologies on 1..4 points, got {exhaustive}"
    );
    let mut rng = rng(2);
    for _ in 0..200 {
        let n = rng.random_range(1..=6);
        let k = rng.random_range(0..=n + 1);
        let subbase: Vec<StateSet> = (0..k).map(|_| random_subset(&mut rng, n)).collect();
        check_prop1(&FiniteTopology::generated_by(names(n), &subbase).unwrap())?;
    }
    let t = fixtures::partition_topology();
    let v = prop1_verdict(&t, DEFAULT_SIZE_CAP).map_err(|e| e.to_string())?;
    let closed = t.closed_sets();
    ensure!(
        v.ortho_exists && v.boolean && v.clopen_coincide,
        "partition topology not all-true: {v:?}"
    );
    ensure!(closed.members() == t.opens(), "partition topology: closed ≠ open");
    ensure!(!v.discrete, "partition topology is the power set");
    let time = within(Duration::from_secs(60), start)?;
    Ok(format!(
        "{exhaustive} exhaustive + 200 random topologies agree; partition fixture all-true, not discrete, {time}"
    ))
}

// ---------------------------------------------------------------------
// 3. τ(p) as a join of smaller τ's

fn criterion_3() -> Outcome {
    let mut rng = rng(3);
    let mut conditional = 0;
    for i in 0..500 {
        let s = random_sps(&mut rng, 7);
        let len = rng.random_range(0..4);
        let mut tests = random_battery(&mut rng, &s, len);
        if i % 2 == 0 {
            tests.extend(covering_battery(&s));
        }
        let r = check_prop2(&s, &tests).map_err(|e| e.to_string())?;
        ensure!(
            r.unconditional_violations.is_empty(),
            "instance {i}: unconditional identity fails"
        );
        ensure!(
            r.identity1_violations.is_empty() && r.identity2_violations.is_empty(),
            "instance {i}: conditional identity fails"
        );

        // independent recomputation of the unconditional identity
        let n = s.n_states();
        let fam = s.props();
        for p in 0..n {
            let tp = tau_oracle(n, fam, p);
            let joined = close_oracle(
                n,
                fam,
                tp.iter()
                    .fold(StateSet::EMPTY, |acc, q| acc.union(tau_oracle(n, fam, q))),
            );
            ensure!(joined == tp, "instance {i}, state {p}: oracle identity fails");
        }
        let top = topological_oracle(fam);
        let op = OperationalClassicalAnalysis::new(&s, &tests).map_err(|e| e.to_string())?;
        let cond = top.iter().all(|k| op.contains(s.property_of(*k).unwrap()));
        ensure!(cond == r.condition_holds, "instance {i}: condition 𝒯 ⊆ C_op misjudged");
        conditional += cond as usize;
    }
    ensure!(conditional >= 250, "only {conditional} instances met the condition");
    Ok(format!(
        "500 instances, 0 violations; conditional identities exercised on {conditional}"
    ))
}

// ---------------------------------------------------------------------
// 4. 𝒯 closed under meets and finite joins

fn criterion_4() -> Outcome {
    let mut rng = rng(4);
    let (mut exhaustive, mut pairwise) = (0, 0);
    for i in 0..500 {
        let s = random_sps(&mut rng, 7);
        let t: Vec<StateSet> = topological_oracle(s.props());
        let full = s.all_states();
        let lib: Vec<StateSet> = TopologicalAnalysis::new(&s)
            .topological
            .iter()
            .map(|&a| s.kappa(a))
            .collect();
        let mut lib_sorted = lib.clone();
        lib_sorted.sort_by_key(|k| k.bits());
        ensure!(
            lib_sorted == t,
            "instance {i}: topological properties differ from oracle"
        );
        if t.len() <= 12 {
            exhaustive += 1;
            for mask in 0u32..1 << t.len() {
                let meet = t
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| mask >> j & 1 == 1)
                    .fold(full, |acc, (_, k)| acc.intersection(*k));
                ensure!(
                    t.contains(&meet),
                    "instance {i}: meet of subfamily {mask:b} not topological"
                );
            }
        } else {
            pairwise += 1;
            ensure!(t.contains(&full), "instance {i}: empty meet (top) not topological");
            for a in &t {
                for b in &t {
                    ensure!(
                        t.contains(&a.intersection(*b)),
                        "instance {i}: binary meet not topological"
                    );
                }
            }
        }
        for a in &t {
            for b in &t {
                let ia = s.property_of(*a).unwrap();
                let ib = s.property_of(*b).unwrap();
                let j = s.join(ia, ib);
                ensure!(s.kappa(j) == a.union(*b), "instance {i}: κ(a∨b) ≠ κ(a) ∪ κ(b)");
                ensure!(t.contains(&s.kappa(j)), "instance {i}: join not topological");
            }
        }
        let tc = t_classical_system(&s).map_err(|e| format!("instance {i}: {e}"))?;
        ensure!(
            tc.verify_axioms().passed(),
            "instance {i}: T-classical system fails the axioms"
        );
        ensure!(
            tc.closure_system().is_additive(),
            "instance {i}: T-classical system not additive"
        );
    }
    Ok(format!(
        "500 instances ({exhaustive} exhaustive over subfamilies, {pairwise} pairwise), 0 violations"
    ))
}

// ---------------------------------------------------------------------
// 5. classical = topological on orthocomplemented fixtures

fn orthocomplemented_fixtures() -> Vec<(String, FiniteSps, Vec<OrthoMap>)> {
    let mut out = Vec::new();
    let mut push = |name: String, s: FiniteSps, given: OrthoMap| {
        // every ortho when the lattice is small enough to enumerate
        let all = enumerate_orthos(&s, DEFAULT_SIZE_CAP).unwrap_or_else(|_| vec![given]);
        out.push((name, s, all));
    };
    for k in 1..=4 {
        let states: Vec<String> = names(k);
        let (s, m) = fixtures::boolean(&states);
        push(format!("boolean-{k}"), s, m);
    }
    for n in 2..=4 {
        let (s, m) = fixtures::mo(n);
        push(format!("mo{n}"), s, m);
    }
    let (s, m) = fixtures::hexagon();
    push("hexagon".into(), s, m);
    let parts: Vec<(&str, (FiniteSps, OrthoMap))> = vec![
        ("mo2", fixtures::mo(2)),
        ("mo3", fixtures::mo(3)),
        ("mo4", fixtures::mo(4)),
        ("boolean-1", fixtures::trivial()),
        ("boolean-2", fixtures::two_point_discrete()),
        ("hexagon", fixtures::hexagon()),
    ];
    for (i, a) in parts.iter().enumerate() {
        for b in &parts[i..] {
            let (s, m) = direct_sum_with_orthos(&[a.1.clone(), b.1.clone()]).unwrap();
            push(format!("{}+{}", a.0, b.0), s, m);
        }
    }
    let (s, m) = direct_sum_with_orthos(&[fixtures::mo(2), fixtures::trivial(), fixtures::mo(3)]).unwrap();
    push("mo2+boolean-1+mo3".into(), s, m);
    out
}

fn criterion_5() -> Outcome {
    let fixtures = orthocomplemented_fixtures();
    let (mut runs, mut atomistic) = (0, 0);
    for (name, s, orthos) in &fixtures {
        ensure!(!orthos.is_empty(), "{name}: no orthocomplementation");
        let top: Vec<usize> = topological_oracle(s.props())
            .iter()
            .map(|k| s.property_of(*k).unwrap())
            .collect();
        let mut top = top;
        top.sort_unstable();
        for m in orthos {
            ensure!(verify_ortho(s, m).passed(), "{name}: ortho fails verification");
            let r = check_thm3(s, m).map_err(|e| e.to_string())?;
            ensure!(r.holds(), "{name}: {}", r.violations.join("; "));
            // independent check: a classical iff κ(a) ∪ κ(a') = Σ
            let classical: Vec<usize> = (0..s.n_props())
                .filter(|&a| s.kappa(a).union(s.kappa(m.apply(a))) == s.all_states())
                .collect();
            ensure!(classical == top, "{name}: classical ≠ topological (oracle)");
            ensure!(
                classical == classical_properties(s, m).unwrap(),
                "{name}: classical set differs from oracle"
            );
            let central = central_elements(s, m).map_err(|e| e.to_string())?;
            ensure!(
                classical.iter().all(|a| central.contains(a)),
                "{name}: classical ⊄ centre"
            );
            if s.is_atomistic() {
                ensure!(central == classical, "{name}: atomistic but centre ≠ classical");
                atomistic += 1;
            }
            runs += 1;
        }
    }
    Ok(format!(
        "{} fixtures, {runs} (fixture, ortho) runs, {atomistic} atomistic; 0 violations",
        fixtures.len()
    ))
}

// ---------------------------------------------------------------------
// 6. decomposition into totally non-classical summands

fn criterion_6() -> Outcome {
    let mut rng = rng(6);
    // (fixture, number of totally non-classical summands it contributes)
    let pieces: Vec<(FiniteSps, OrthoMap, usize)> = vec![
        (fixtures::trivial().0, fixtures::trivial().1, 1),
        (fixtures::two_point_discrete().0, fixtures::two_point_discrete().1, 2),
        (fixtures::mo(2).0, fixtures::mo(2).1, 1),
        (fixtures::mo(3).0, fixtures::mo(3).1, 1),
        (fixtures::hexagon().0, fixtures::hexagon().1, 1),
    ];
    let mut total_summands = 0;
    for run in 0..50 {
        let k = rng.random_range(1..=4);
        let chosen: Vec<usize> = (0..k).map(|_| rng.random_range(0..pieces.len())).collect();
        let expected: usize = chosen.iter().map(|&c| pieces[c].2).sum();
        let parts: Vec<(FiniteSps, OrthoMap)> = chosen
            .iter()
            .map(|&c| (pieces[c].0.clone(), pieces[c].1.clone()))
            .collect();
        let (sum, m) = direct_sum_with_orthos(&parts).map_err(|e| e.to_string())?;
        // relabel states so the blocks are interleaved
        let (s, perm) = shuffled(&mut rng, &sum);
        let pairs: Vec<(StateSet, StateSet)> = (0..sum.n_props())
            .map(|a| (sum.kappa(a).map(&perm), sum.kappa(m.apply(a)).map(&perm)))
            .collect();
        let m = fixtures::ortho_from_pairs(&s, &pairs);
        ensure!(verify_ortho(&s, &m).passed(), "run {run}: relabelled ortho invalid");

        let d = decompose(&s, &m, spslab::stateset::MAX_STATES).map_err(|e| format!("run {run}: {e}"))?;
        ensure!(
            d.summands.len() == expected,
            "run {run}: {} summands, expected {expected}",
            d.summands.len()
        );
        ensure!(
            d.witness.is_valid(
                &spslab::sps::direct_sum(&d.summands.iter().map(|x| x.system.clone()).collect::<Vec<_>>()).unwrap(),
                &s
            ),
            "run {run}: witness invalid"
        );
        for part in &d.summands {
            ensure!(
                is_totally_nonclassical(&part.system, &part.ortho).map_err(|e| e.to_string())?,
                "run {run}: summand not totally non-classical"
            );
        }
        let back = spslab::sps::direct_sum(&d.summands.iter().map(|x| x.system.clone()).collect::<Vec<_>>()).unwrap();
        let iso = is_isomorphic(&back, &s, spslab::stateset::MAX_STATES).map_err(|e| e.to_string())?;
        ensure!(
            iso.is_some_and(|w| w.is_valid(&back, &s)),
            "run {run}: round trip not isomorphic"
        );
        let c = ClassicalAnalysis::new(&s, &m).map_err(|e| e.to_string())?;
        let blocks: Vec<StateSet> = c.omega.iter().map(|&w| s.kappa(w)).collect();
        let union = blocks.iter().fold(StateSet::EMPTY, |acc, b| acc.union(*b));
        let disjoint = blocks
            .iter()
            .enumerate()
            .all(|(i, a)| blocks[i + 1..].iter().all(|b| a.is_disjoint(*b)));
        ensure!(
            union == s.all_states() && disjoint && blocks.iter().all(|b| !b.is_empty()),
            "run {run}: {{κ(ω(p))}} not a partition"
        );
        total_summands += expected;
    }
    Ok(format!("50 relabelled direct sums, {total_summands} summands recovered, all totally non-classical, all round trips isomorphic"))
}

// ---------------------------------------------------------------------
// 7. trivial topological structure

fn check_trivial(name: &str, s: &FiniteSps) -> Result<(), String> {
    let t = TopologicalAnalysis::new(s);
    ensure!(
        t.topological == vec![0, s.n_props() - 1],
        "{name}: 𝒯 = {:?}",
        t.topological
    );
    ensure!(t.t_states == vec![s.n_props() - 1], "{name}: T = {:?}", t.t_states);
    let tc = t_classical_system(s).map_err(|e| e.to_string())?;
    ensure!(
        tc.n_states() == 1 && tc.n_props() == 2,
        "{name}: T-classical system is not ({{*}}, {{0,1}})"
    );
    Ok(())
}

fn criterion_7() -> Outcome {
    check_trivial("fano", &fixtures::fano())?;
    let (s, _) = build_model(&SphereModelConfig::new(icosahedron(), 1.0, 20)).map_err(|e| e.to_string())?;
    ensure!(
        s.n_props() == 14,
        "ε=1 icosahedron model has {} properties",
        s.n_props()
    );
    check_trivial("icosahedron ε=1", &s)?;
    Ok("fano and ε=1 icosahedron: 𝒯 = {0,1}, T = {1}, one-state T-classical system".into())
}

// ---------------------------------------------------------------------
// 8. operationally classical but not topological

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let sample = icosahedron();
    let rep = counterexample_eps0(&sample, DEFAULT_SIZE_CAP).map_err(|e| e.to_string())?;
    let w = rep.witness.as_ref().ok_or("no witness found")?;
    let (s, tests) = build_model(&SphereModelConfig::new(sample.clone(), 0.0, 0)).map_err(|e| e.to_string())?;
    let op = OperationalClassicalAnalysis::new(&s, &tests).map_err(|e| e.to_string())?;
    ensure!(op.contains(w.a_u), "a_u is not operationally classical");
    let minus_u = sample[w.direction].antipode();
    let idx = sample
        .iter()
        .position(|p| p.approx_eq(&minus_u))
        .ok_or("antipode missing")?;
    let b_u = s.close(StateSet::singleton(idx));
    ensure!(s.kappa(w.b_u) == b_u, "b_u is not close({{−u}})");
    let join = s.join(w.a_u, w.b_u);
    let union = s.kappa(w.a_u).union(b_u);
    ensure!(
        s.kappa(join) == s.all_states() && s.kappa(join).len() == 12,
        "κ(a_u ∨ b_u) is not Σ"
    );
    ensure!(
        union.len() == 7 && w.union_size == 7 && w.join_size == 12,
        "union has {} states",
        union.len()
    );
    ensure!(
        !topological_oracle(s.props()).contains(&s.kappa(w.a_u)),
        "a_u is topological"
    );
    let orthos = match rep.ortho_search {
        OrthoSearchOutcome::Searched(0) => "enumerate_orthos: none within cap".to_string(),
        OrthoSearchOutcome::CapExceeded { size, cap } => {
            format!("enumerate_orthos: cap reported ({size} > {cap})")
        }
        OrthoSearchOutcome::Searched(k) => return Err(format!("enumerate_orthos found {k} within the cap")),
    };
    let t = within(Duration::from_secs(120), start)?;
    Ok(format!(
        "a_u = {}: |κ(a_u ∨ b_u)| = 12 > |κ(a_u) ∪ κ(b_u)| = 7; {orthos}; {t}",
        s.property_name(w.a_u)
    ))
}

// ---------------------------------------------------------------------
// 9. outcome statistics

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let n = 100_000u64;
    let u = SpherePoint::new(0.0, 0.0, 1.0).unwrap();
    let t = TestSpec::new(u, 1.0, 0.0).unwrap();
    let mut rows = Vec::new();
    for (theta, expected) in [(0.0, 1.0), (60.0, 0.75), (90.0, 0.5), (180.0, 0.0)] {
        let p = SpherePoint::from_degrees(theta, 0.0);
        let analytic = outcome_probability(&p, &t);
        ensure!(
            (analytic - expected).abs() < 1e-12,
            "θ={theta}: analytic {analytic} ≠ {expected}"
        );
        let ups = simulate(&p, &t, n, 9).map_err(|e| e.to_string())?;
        let freq = ups as f64 / n as f64;
        if expected == 0.0 || expected == 1.0 {
            ensure!(freq == expected, "θ={theta}: deterministic endpoint gave {freq}");
        } else {
            let bound = 4.0 * (expected * (1.0 - expected) / n as f64).sqrt();
            ensure!(
                (freq - expected).abs() <= bound,
                "θ={theta}: {freq} outside {expected} ± {bound:.5}"
            );
        }
        rows.push(format!("{theta}°→{freq}"));
    }
    let time = within(Duration::from_secs(10), start)?;
    Ok(format!("{}, {time}", rows.join(" ")))
}

// ---------------------------------------------------------------------
// 10. ε-sweep

fn criterion_10() -> Outcome {
    let sample = icosahedron();
    let eps = [1.0, 0.5, 0.2, 0.1, 0.05, 0.01];
    let rows = epsilon_sweep(&sample, &sample, &eps, 40).map_err(|e| e.to_string())?;
    let first = rows.first().ok_or("empty sweep")?;
    let last = rows.last().unwrap();
    ensure!(
        first.epsilon == 1.0 && first.n_topological == 2,
        "ε=1 row has |𝒯| = {}",
        first.n_topological
    );
    ensure!(
        last.additivity_defect == 0,
        "ε={} defect {}",
        last.epsilon,
        last.additivity_defect
    );
    ensure!(last.t_classical, "ε={} not T-classical", last.epsilon);
    ensure!(
        first.additivity_defect > last.additivity_defect,
        "defect did not decrease"
    );
    // cross-check the smallest-ε row against a fresh build
    let (s, _) = build_model(&SphereModelConfig::new(sample, last.epsilon, 40)).map_err(|e| e.to_string())?;
    ensure!(is_t_classical(&s), "rebuilt ε_min model not T-classical");
    let table: Vec<String> = rows
        .iter()
        .map(|r| format!("ε={}:{}", r.epsilon, r.additivity_defect))
        .collect();
    Ok(format!("defects {}; ε=1 has 𝒯 = {{0,1}}", table.join(" ")))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("axiom suite on random and mutated families", criterion_1),
        ("ortho / Boolean / clopen equivalence for topologies", criterion_2),
        ("τ(p) as a join of τ(q), plain and operational", criterion_3),
        ("topological properties closed under meets and joins", criterion_4),
        ("classical = topological on orthocomplemented fixtures", criterion_5),
        ("decomposition into totally non-classical summands", criterion_6),
        ("trivial topological structure of Fano and ε=1 model", criterion_7),
        ("operationally classical but not topological at ε=d=0", criterion_8),
        ("simulated frequencies against analytic probabilities", criterion_9),
        ("ε-sweep reaches an additive, T-classical system", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
