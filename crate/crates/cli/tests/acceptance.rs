//! Acceptance suite: one PASS/FAIL line per criterion. Every check is exact;
//! the only tolerances are the wall-clock limits below.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stickforge_core::builder::fixtures::fixture;
use stickforge_core::builder::{general_budget_formula, stick_budget};
use stickforge_core::conway::{
    calvo_lower_bound, enumerate, odd_compositions, parse, ConwayNotation, NormalizationAction,
};
use stickforge_core::geometry::{certify, generic_direction, open_crossing_signs, project, Cycle, ProjectionDirection};
use stickforge_core::invariants::{
    bracket, bracket_state_sum, canonical_diagram, determinant, jones, jones_all_orientations, verify, CompareMode,
    Diagram,
};
use stickforge_core::point::Point3;
use stickforge_core::tangle::{build_tangle, Handedness, TangleParams};

const FIXTURE_LIMIT: Duration = Duration::from_secs(5);
const ENUMERATION_LIMIT: Duration = Duration::from_secs(300);
const BUDGET_LIMIT: Duration = Duration::from_secs(1);
const TANGLE_LIMIT: Duration = Duration::from_secs(10);
/// Largest diagram on which the 2^n state sum is compared with the evaluator.
const STATE_SUM_CROSSINGS: usize = 12;

type Outcome = Result<String, String>;

fn criterion(id: u32, name: &str, limit: Option<Duration>, check: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = check();
    let elapsed = start.elapsed();
    let in_time = limit.is_none_or(|l| elapsed <= l);
    let timing = match limit {
        Some(l) => format!("{:.2} s, limit {} s", elapsed.as_secs_f64(), l.as_secs()),
        None => format!("{:.2} s", elapsed.as_secs_f64()),
    };
    let (passed, detail) = match outcome {
        Ok(d) if in_time => (true, d),
        Ok(d) => (false, format!("{d}; over time")),
        Err(d) => (false, d),
    };
    println!("{} [{id}] {name}: {detail} ({timing})", if passed { "PASS" } else { "FAIL" });
    passed
}

fn n(s: &str) -> ConwayNotation {
    parse(s).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// (notation, sticks, components) of the reference fixtures.
const FIXTURES: [(&str, usize, usize); 7] =
    [("6", 8, 2), ("2,3,2", 9, 2), ("1,3,2", 8, 1), ("2,2,2", 8, 2), ("1,2,3", 8, 2), ("2,1,3", 8, 1), ("1,1,4", 8, 1)];

fn fixture_suite() -> Outcome {
    for (name, sticks, components) in FIXTURES {
        let k = n(name);
        let f = fixture(&k).map_err(|e| e.to_string())?;
        let r = verify(&f.components, &k, CompareMode::MirrorTolerant, 0).map_err(|e| e.to_string())?;
        ensure(r.embedding.embedded, || format!("{k} not embedded"))?;
        ensure(r.stick_count == sticks && r.expected_sticks == sticks, || format!("{k}: {} sticks", r.stick_count))?;
        ensure(r.component_count == components, || format!("{k}: {} components", r.component_count))?;
        ensure(r.passed(), || format!("{k}: verdict {}", r.verdict_label()))?;
    }
    Ok("7 fixtures embedded with sticks 8,9,8,8,8,8,8, components 2,2,1,2,2,1,1, matching type".into())
}

/// Sum of the partial quotients of p/q.
fn continued_fraction_sum(mut p: u64, mut q: u64) -> u64 {
    let mut sum = 0;
    while q != 0 {
        sum += p / q;
        (p, q) = (q, p % q);
    }
    sum
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Number of 2-bridge types per crossing number, mirror pairs identified,
/// straight from the classification p/q ~ p/q' with q' = ±q^(±1) mod p.
fn fraction_class_counts(c_max: u64) -> Vec<usize> {
    let mut classes: Vec<BTreeSet<(u64, u64)>> = vec![BTreeSet::new(); c_max as usize + 1];
    for p in 2..=400u64 {
        for q in 1..p {
            if gcd(p, q) != 1 {
                continue;
            }
            let c = continued_fraction_sum(p, q);
            if c > c_max {
                continue;
            }
            let inv = (1..p).find(|&x| x * q % p == 1).unwrap();
            let key = [q, inv, p - q, p - inv].into_iter().min().unwrap();
            classes[c as usize].insert((p, key));
        }
    }
    classes.iter().map(BTreeSet::len).collect()
}

fn theorem_reproduction() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let report = dir.path().join("enumeration.csv");
    let out = Command::new(env!("CARGO_BIN_EXE_stickforge"))
        .args(["enumerate", "--min", "6", "--max", "10", "--jobs", "1", "--report"])
        .arg(&report)
        .output()
        .map_err(|e| e.to_string())?;
    let csv = std::fs::read_to_string(&report).map_err(|e| e.to_string())?;
    let rows = csv.lines().count() - 1;
    let expected: usize = fraction_class_counts(10)[6..=10].iter().sum();
    ensure(out.status.code() == Some(0), || {
        format!("exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr).trim())
    })?;
    ensure(rows == expected, || format!("{rows} rows, fraction classes give {expected}"))?;
    Ok(format!("enumerate 6..10 exits 0 with {rows} rows = fraction-class count"))
}

fn random_notation(rng: &mut ChaCha8Rng) -> ConwayNotation {
    let m = 2 * rng.gen_range(0..8) + 1;
    loop {
        let entries: Vec<u32> = (0..m).map(|_| rng.gen_range(1..=9)).collect();
        if entries.iter().sum::<u32>() >= 6 {
            return ConwayNotation::new(entries).unwrap();
        }
    }
}

fn budget_arithmetic() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..1000 {
        let k = random_notation(&mut rng).normalize().output;
        let a = k.entries();
        let sum = k.crossing_number() as i64;
        let m = a.len() as i64;
        let case = match a {
            [p] => *p as i64 + 2,
            [p, q, r] => (p + q + r) as i64 + 2,
            _ => general_budget_formula(sum, m),
        };
        ensure(case == sum + 2, || format!("{k}: case expression {case}"))?;
        ensure(general_budget_formula(sum, m) == sum + 2, || format!("{k}: general formula"))?;
        ensure(stick_budget(&k) as i64 == sum + 2, || format!("{k}: stick_budget"))?;
    }
    Ok("1000 random notations (m <= 15): every budget expression equals sum + 2".into())
}

fn tangle_laws() -> Outcome {
    let params = TangleParams::default();
    for twists in 2..=10u32 {
        for h in [Handedness::Positive, Handedness::Negative] {
            let t = build_tangle(twists, h, &params).map_err(|e| format!("n = {twists}: {e}"))?;
            ensure(t.stick_count() == twists as usize + 1, || format!("n = {twists}: {} sticks", t.stick_count()))?;
            let signs = open_crossing_signs(&t.strands, &t.view_direction()).map_err(|e| e.to_string())?;
            ensure(signs.len() == twists as usize, || format!("n = {twists}: {} crossings", signs.len()))?;
            ensure(signs.iter().all(|&s| s == h.sign()), || format!("n = {twists}: mixed signs {signs:?}"))?;
        }
    }
    Ok("n = 2..10, both handedness values: n + 1 sticks, n same-sign crossings".into())
}

fn compositions_up_to(sum: u32) -> Vec<ConwayNotation> {
    (1..=sum).flat_map(odd_compositions).map(|e| ConwayNotation::new(e).unwrap()).collect()
}

/// First certified direction from a fixed skew list that is not parallel to `first`.
fn second_direction(components: &[Cycle], first: &Point3) -> Option<ProjectionDirection> {
    let skew = [(1, 2, 3), (3, -1, 2), (-2, 3, 5), (5, 7, -3), (2, -5, 7), (7, 3, 11)];
    skew.into_iter()
        .map(|(a, b, c)| Point3::from_ints(a, b, c))
        .filter(|d| !d.cross(first).is_zero())
        .find_map(|d| certify(components, &d).ok().map(|(pd, _)| pd))
}

fn oracle_cross_checks() -> Outcome {
    let small = compositions_up_to(10);
    for k in &small {
        let d = determinant(&canonical_diagram(k)).map_err(|e| e.to_string())?;
        ensure(d == k.fraction().p, || format!("{k}: determinant {d} vs p = {}", k.fraction().p))?;
    }
    let mut corpus: Vec<Diagram> = small.iter().map(canonical_diagram).collect();
    corpus.extend(enumerate(6, 10).unwrap().iter().map(canonical_diagram));
    let mut agreeing = 0;
    for (name, _, _) in FIXTURES {
        let f = fixture(&n(name)).unwrap();
        let d1 = generic_direction(&f.components, 0).map_err(|e| e.to_string())?;
        let d2 =
            second_direction(&f.components, &d1.direction).ok_or_else(|| format!("({name}): no second direction"))?;
        let p1 = project(&f.components, &d1).map_err(|e| e.to_string())?;
        let p2 = project(&f.components, &d2).map_err(|e| e.to_string())?;
        let (j1, j2) = (jones(&p1).map_err(|e| e.to_string())?, jones(&p2).map_err(|e| e.to_string())?);
        ensure(j1 == j2, || format!("({name}): projections disagree"))?;
        agreeing += 1;
        corpus.extend([p1, p2]);
    }
    let mut compared = 0;
    for d in corpus.iter().filter(|d| d.crossing_count() <= STATE_SUM_CROSSINGS) {
        let fast = bracket(d).map_err(|e| e.to_string())?;
        let slow = bracket_state_sum(d).map_err(|e| e.to_string())?;
        ensure(fast == slow, || format!("bracket mismatch on {d}"))?;
        compared += 1;
    }
    Ok(format!(
        "determinant = p on {} notations; state sum = evaluator on {compared} diagrams; {agreeing} fixtures agree across projections",
        small.len()
    ))
}

fn normalization_soundness() -> Outcome {
    let all = compositions_up_to(10);
    for k in &all {
        let t = k.normalize();
        let before = jones_all_orientations(&canonical_diagram(k)).map_err(|e| e.to_string())?;
        let after = jones(&canonical_diagram(&t.output)).map_err(|e| e.to_string())?;
        let expected = match t.action {
            NormalizationAction::Mirror => after.invert_variable(),
            NormalizationAction::Identity | NormalizationAction::Reversal => after,
        };
        ensure(before.contains(&expected), || format!("{k} -> {} ({})", t.output, t.action))?;
    }
    Ok(format!("{} notations: Jones preserved, or inverted under the mirror rule", all.len()))
}

/// Smallest s with 2s - 7 >= sqrt(8c + 1), by integer search.
fn calvo_by_search(c: u64) -> u64 {
    (0..).find(|&s: &u64| 2 * s >= 7 && (2 * s - 7).pow(2) > 8 * c).unwrap()
}

fn bound_sanity() -> Outcome {
    let types = enumerate(6, 10).unwrap();
    for k in &types {
        let c = k.crossing_number();
        let bound = calvo_lower_bound(c);
        ensure(bound as u64 == calvo_by_search(c as u64), || format!("c = {c}: bound {bound}"))?;
        ensure(bound <= c + 2, || format!("{k}: bound {bound} exceeds {}", c + 2))?;
    }
    Ok(format!("{} types: Calvo bound <= c + 2", types.len()))
}

fn main() -> ExitCode {
    let results = [
        criterion(1, "fixture suite", Some(FIXTURE_LIMIT), fixture_suite),
        criterion(2, "theorem reproduction for 6 <= c <= 10", Some(ENUMERATION_LIMIT), theorem_reproduction),
        criterion(3, "stick-budget arithmetic", Some(BUDGET_LIMIT), budget_arithmetic),
        criterion(4, "tangle laws", Some(TANGLE_LIMIT), tangle_laws),
        criterion(5, "oracle cross-checks", None, oracle_cross_checks),
        criterion(6, "normalization soundness", None, normalization_soundness),
        criterion(7, "bound sanity", None, bound_sanity),
    ];
    let failed = results.iter().filter(|&&p| !p).count();
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
