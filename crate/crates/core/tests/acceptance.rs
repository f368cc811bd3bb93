//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
//!
//! Set `ACCEPTANCE_SKIP_LARGE=1` to leave E7 and E8 out of criteria 1, 3 and 8.

use std::collections::{BTreeSet, HashMap};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use distinguished::chevalley::{StructureTable, DEFAULT_SEED};
use distinguished::distsets::{build_stage, build_stages, find_matched_pairs, find_singles, CandidateSet, Stage};
use distinguished::exact::Ratio;
use distinguished::involution::{build_involution, preset, RealForm};
use distinguished::rootsystem::{RootIndex, RootSystem};
use distinguished::verifier::{
    check_distinguished, check_equivalence, complex_algebra_set, expected_singles, matched_pair_predicate,
    run_all_suites, split_chevalley_set, ClosureOutcome, SuiteContext, VerificationReport, SUITE_NAMES,
};

type Outcome = Result<String, String>;

fn large() -> bool {
    std::env::var("ACCEPTANCE_SKIP_LARGE").map_or(true, |v| v.is_empty() || v == "0")
}

fn table(label: &str) -> StructureTable {
    StructureTable::build(RootSystem::from_label(label, None).unwrap())
}

fn form(label: &str, name: &str) -> RealForm {
    let t = table(label);
    let spec = preset(&t, name).unwrap();
    build_involution(&t, &spec).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---- criterion 1 ----------------------------------------------------------

/// `[e_i, Σ c_m e_m]` from integer basis brackets.
fn ad(t: &StructureTable, i: usize, v: &[(usize, i64)], buf: &mut Vec<(usize, i64)>) -> HashMap<usize, i64> {
    let mut out = HashMap::new();
    for &(m, c) in v {
        buf.clear();
        t.basis_bracket(i, m, buf);
        for &(k, d) in buf.iter() {
            *out.entry(k).or_insert(0) += c * d;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn jacobi(t: &StructureTable, i: usize, j: usize, k: usize) -> bool {
    let mut buf = Vec::new();
    let mut total: HashMap<usize, i64> = HashMap::new();
    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
        let mut inner = Vec::new();
        t.basis_bracket(b, c, &mut inner);
        for (m, x) in ad(t, a, &inner, &mut buf) {
            *total.entry(m).or_insert(0) += x;
        }
    }
    total.values().all(|&x| x == 0)
}

fn chevalley_axioms(label: &str, samples: Option<usize>) -> Result<(), String> {
    let t = table(label);
    let rs = t.root_system();
    let n = t.dim();
    // Antisymmetry on every basis pair.
    let mut u = Vec::new();
    let mut v = Vec::new();
    for i in 0..n {
        for j in 0..n {
            u.clear();
            v.clear();
            t.basis_bracket(i, j, &mut u);
            t.basis_bracket(j, i, &mut v);
            u.sort();
            v.sort();
            let neg: Vec<_> = v.iter().map(|&(k, c)| (k, -c)).collect();
            ensure(u == neg, || format!("{label}: [e{i}, e{j}] not antisymmetric"))?;
        }
    }
    // c_{α,β} = −c_{−α,−β} and c² = (q+1)², q read off coordinates.
    for a in rs.roots() {
        for b in rs.roots() {
            let Some(c) = t.c(a, b) else { continue };
            let cn = t.c(rs.neg(a), rs.neg(b)).ok_or_else(|| format!("{label}: c_(-a,-b) missing"))?;
            ensure(c == -cn, || format!("{label}: c({a},{b}) = {c}, c(-a,-b) = {cn}"))?;
            let (va, vb) = (rs.scaled_coords(a), rs.scaled_coords(b));
            let mut q = 0;
            while rs.lookup_scaled(&vb.iter().zip(va).map(|(y, x)| y - (q + 1) * x).collect::<Vec<_>>()).is_some() {
                q += 1;
            }
            ensure(c * c == (q + 1) * (q + 1), || format!("{label}: c({a},{b})² = {} but q = {q}", c * c))?;
        }
    }
    let bad = match samples {
        None => (0..n)
            .into_par_iter()
            .flat_map_iter(|i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| (i, j, k))))
            .find_any(|&(i, j, k)| !jacobi(&t, i, j, k)),
        Some(count) => {
            let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
            let triples: Vec<_> =
                (0..count).map(|_| (rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n))).collect();
            triples.into_par_iter().find_any(|&(i, j, k)| !jacobi(&t, i, j, k))
        }
    };
    ensure(bad.is_none(), || format!("{label}: Jacobi fails at {bad:?}"))
}

fn criterion_1() -> Outcome {
    let small = ["A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "C3", "C4", "D4", "D5", "E6", "F4", "G2"];
    for l in small {
        chevalley_axioms(l, None)?;
    }
    let mut note = format!("{} types exhaustive", small.len());
    if large() {
        for l in ["E7", "E8"] {
            chevalley_axioms(l, Some(100_000))?;
        }
        note.push_str(", E7/E8 with 10^5 sampled triples");
    }
    Ok(note)
}

// ---- criterion 2 ----------------------------------------------------------

fn reproduce_case_analysis(label: &str, name: &str) -> Result<(), String> {
    let rf = form(label, name);
    let rs = rf.root_system();
    // Oracle: the definition, evaluated on coordinates.
    let is_root = |v: Vec<i64>| rs.lookup_scaled(&v).is_some();
    let mut oracle = BTreeSet::new();
    for a in rs.roots() {
        for b in rs.roots() {
            let (va, vb, vt) = (rs.scaled_coords(a), rs.scaled_coords(b), rs.scaled_coords(rf.inv.theta_root(b)));
            let sum = va.iter().zip(vb).map(|(x, y)| x + y).collect();
            let diff = va.iter().zip(vt).map(|(x, y)| x - y).collect();
            if is_root(sum) && is_root(diff) {
                oracle.insert((a, b));
            }
        }
    }
    let computed: BTreeSet<_> = find_matched_pairs(&rf).iter().map(|p| (p.alpha, p.beta)).collect();
    let pred = matched_pair_predicate(&rf).map_err(|e| format!("{label} {name}: {e}"))?;
    let closed: BTreeSet<_> = rs.roots().flat_map(|a| rs.roots().map(move |b| (a, b))).filter(|&(a, b)| pred(a, b)).collect();
    ensure(computed == oracle, || format!("{label} {name}: matched pairs differ from the definition"))?;
    ensure(closed == oracle, || {
        let extra = closed.difference(&oracle).next();
        let missing = oracle.difference(&closed).next();
        format!("{label} {name}: closed form differs (extra {extra:?}, missing {missing:?})")
    })?;

    let in_pair: BTreeSet<RootIndex> = oracle.iter().flat_map(|&(a, b)| [a, b]).collect();
    let singles_oracle: BTreeSet<_> = rs.roots().filter(|r| !in_pair.contains(r)).collect();
    let singles: BTreeSet<_> = find_singles(&rf).into_iter().collect();
    let expected: BTreeSet<_> = expected_singles(&rf).into_iter().collect();
    ensure(singles == singles_oracle && expected == singles_oracle, || {
        format!("{label} {name}: single roots differ ({} computed, {} closed form, {} by definition)", singles.len(), expected.len(), singles_oracle.len())
    })
}

fn criterion_2() -> Outcome {
    let cases = [
        ("B3", "compact"),
        ("C3", "compact"),
        ("F4", "compact"),
        ("G2", "compact"),
        ("E8", "compact"),
        ("A5", "quasi-split"),
        ("D5", "quasi-split"),
        ("E6", "quasi-split"),
    ];
    for (l, p) in cases {
        reproduce_case_analysis(l, p)?;
    }
    let e8 = form("E8", "compact");
    let n = find_singles(&e8).len();
    ensure(n == 240, || format!("E8: {n} single roots, expected 240"))?;
    Ok(format!("{} forms, E8 has 240 single roots", cases.len()))
}

// ---- criteria 3, 7, 8 -----------------------------------------------------

struct Verified {
    name: String,
    report: VerificationReport,
    elapsed: Duration,
}

fn verify_form(label: &str, name: &str, stage: &str) -> Result<Verified, String> {
    let rf = form(label, name);
    let start = Instant::now();
    let set = build_stage(&rf, Stage::parse(stage).unwrap()).map_err(|e| e.to_string())?;
    let report = check_distinguished(&rf.table, &set, rf.table.dim());
    Ok(Verified { name: format!("{label} {name} {stage}"), report, elapsed: start.elapsed() })
}

fn verify_fixture(name: &str, set: CandidateSet, table: &StructureTable, target: usize) -> Verified {
    let start = Instant::now();
    let report = check_distinguished(table, &set, target);
    Verified { name: name.into(), report, elapsed: start.elapsed() }
}

fn matrix() -> Result<Vec<Verified>, String> {
    let mut rows = vec![
        ("A2", "compact", "S0"),
        ("A3", "compact", "S0"),
        ("D4", "compact", "S0"),
        ("E6", "compact", "S0"),
        ("B3", "compact", "S1"),
        ("B3", "painted", "S1"),
        ("C3", "compact", "S1"),
        ("C3", "painted", "S1"),
        ("A5", "quasi-split", "S1"),
        ("D5", "quasi-split", "S1"),
        ("F4", "compact", "S2"),
        ("E6", "quasi-split", "S2"),
        ("G2", "compact", "Sstar"),
    ];
    if large() {
        rows.extend([("E7", "compact", "S0"), ("E8", "compact", "S0")]);
    }
    let mut out = rows.into_iter().map(|(l, p, s)| verify_form(l, p, s)).collect::<Result<Vec<_>, _>>()?;
    let a2 = table("A2");
    out.push(verify_fixture("A2 split Chevalley set", split_chevalley_set(&a2), &a2, a2.dim()));
    out.push(verify_fixture("A2 complex S ∪ iS", complex_algebra_set(&a2), &a2, 2 * a2.dim()));
    Ok(out)
}

fn criterion_3(rows: &[Verified]) -> Outcome {
    for v in rows {
        let r = &v.report;
        ensure(r.verdict && r.all_real && r.spanning_rank == r.target_rank, || {
            format!("{}: verdict {}, real {}, rank {}/{}", v.name, r.verdict, r.all_real, r.spanning_rank, r.target_rank)
        })?;
    }
    Ok(format!("{} sets distinguished", rows.len()))
}

fn criterion_7(rows: &[Verified]) -> Outcome {
    let mut lambdas = 0u64;
    for v in rows.iter().filter(|v| v.report.verdict) {
        let table = v.report.closure_table.as_ref().ok_or_else(|| format!("{}: no closure table", v.name))?;
        for e in table {
            if let ClosureOutcome::Multiple { lambda, .. } = &e.outcome {
                ensure(lambda.im.is_zero(), || format!("{}: non-real λ at ({}, {})", v.name, e.i, e.j))?;
                lambdas += 1;
            }
        }
        for g in &v.report.generation_table {
            let w = g.witness.as_ref().ok_or_else(|| format!("{}: element {} has no witness", v.name, g.k))?;
            ensure(w.lambda.im.is_zero() && !w.lambda.is_zero(), || format!("{}: witness λ for {} is {:?}", v.name, g.k, w.lambda))?;
            lambdas += 1;
        }
    }
    Ok(format!("{lambdas} scalars checked"))
}

fn criterion_8(rows: &[Verified]) -> Outcome {
    let limits = [("E8 compact S0", 300), ("F4 compact S2", 120), ("E6 quasi-split S2", 120)];
    let mut seen = Vec::new();
    for (name, secs) in limits {
        let Some(v) = rows.iter().find(|v| v.name == name) else { continue };
        ensure(v.elapsed < Duration::from_secs(secs), || format!("{name}: {:.1?} over {secs}s", v.elapsed))?;
        seen.push(format!("{name} {:.2?}", v.elapsed));
    }
    ensure(seen.len() >= 2, || "timed rows missing".into())?;
    Ok(seen.join(", "))
}

// ---- criterion 4 ----------------------------------------------------------

fn stabilizes(label: &str, name: &str, k: usize) -> Result<(), String> {
    let st = build_stages(&form(label, name), k);
    ensure(check_equivalence(&st[k - 1], &st[k]), || {
        format!("{label} {name}: S{k} has {} elements, S{} has {}", st[k].len(), k - 1, st[k - 1].len())
    })
}

fn criterion_4() -> Outcome {
    let mut n = 0;
    for l in ["A2", "A3", "A4", "D4", "D5", "E6"] {
        stabilizes(l, "compact", 1)?;
        n += 1;
    }
    for (l, p) in [("B3", "compact"), ("B3", "painted"), ("C3", "compact"), ("C3", "painted"), ("A5", "quasi-split"), ("D5", "quasi-split")] {
        stabilizes(l, p, 2)?;
        n += 1;
    }
    for (l, p) in [("F4", "compact"), ("E6", "quasi-split")] {
        stabilizes(l, p, 3)?;
        n += 1;
    }
    Ok(format!("{n} forms stable"))
}

// ---- criterion 5 ----------------------------------------------------------

fn criterion_5() -> Outcome {
    let rf = form("B3", "compact");
    let set = build_stage(&rf, Stage::S0).unwrap();
    let r = check_distinguished(&rf.table, &set, rf.table.dim());
    ensure(!r.verdict, || "compact B3 S0 passed".into())?;
    let f = r.first_failure().ok_or("no closure counterexample")?;
    // Recompute the bracket and confirm no member is a real multiple of it.
    let els = set.elements();
    let br = rf.table.bracket(&els[f.i].element, &els[f.j].element);
    ensure(br == f.bracket && !br.is_zero(), || "reported bracket does not match".into())?;
    for e in els {
        if let Ratio::Scalar(l) = br.scalar_ratio(&e.element) {
            ensure(!l.is_real(), || format!("[{}, {}] is a real multiple of {}", f.left, f.right, e.label))?;
        }
    }
    // Two root-space terms: α + β and α − θβ.
    let rs = rf.root_system();
    let lines: BTreeSet<RootIndex> = br
        .entries()
        .iter()
        .filter_map(|(i, _)| rf.table.root_of_index(*i))
        .map(|a| if rs.is_positive(a) { a } else { rs.neg(a) })
        .collect();
    ensure(lines.len() == 2, || format!("bracket touches {} root lines", lines.len()))?;
    Ok(format!("[{}, {}] leaves the set", f.left, f.right))
}

// ---- criterion 6 ----------------------------------------------------------

fn criterion_6() -> Outcome {
    let forms = [
        ("B3", "compact"),
        ("B3", "painted"),
        ("C3", "compact"),
        ("F4", "compact"),
        ("G2", "compact"),
        ("A5", "quasi-split"),
        ("D5", "quasi-split"),
        ("E6", "quasi-split"),
    ];
    let mut ran = BTreeSet::new();
    let mut cases = 0;
    for (l, p) in forms {
        let rf = form(l, p);
        for r in run_all_suites(&SuiteContext::new(&rf, DEFAULT_SEED)) {
            ensure(r.passed(), || format!("{l} {p}: {}", r.summary_line()))?;
            if r.skipped.is_none() {
                cases += r.cases;
                ran.insert(r.suite.clone());
            }
        }
    }
    let missing: Vec<_> = SUITE_NAMES.iter().filter(|s| !ran.contains(**s)).collect();
    ensure(missing.is_empty(), || format!("never ran: {missing:?}"))?;
    Ok(format!("{} suites, {cases} cases", SUITE_NAMES.len()))
}

fn main() -> ExitCode {
    let rows = matrix();
    let results: Vec<(usize, Outcome)> = vec![
        (1, criterion_1()),
        (2, criterion_2()),
        (3, rows.as_ref().map_err(Clone::clone).and_then(|r| criterion_3(r))),
        (4, criterion_4()),
        (5, criterion_5()),
        (6, criterion_6()),
        (7, rows.as_ref().map_err(Clone::clone).and_then(|r| criterion_7(r))),
        (8, rows.as_ref().map_err(Clone::clone).and_then(|r| criterion_8(r))),
    ];
    let mut ok = true;
    for (n, r) in &results {
        match r {
            Ok(note) => println!("criterion {n}: PASS ({note})"),
            Err(e) => {
                ok = false;
                println!("criterion {n}: FAIL ({e})");
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
