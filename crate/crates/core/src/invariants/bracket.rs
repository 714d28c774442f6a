//! Kauffman bracket evaluators.
//!
//! [`bracket`] merges crossings one at a time, keeping for every planar pairing
//! of the open boundary arcs the accumulated polynomial, so its cost grows with
//! the Catalan number of the boundary width rather than with `2^n`.
//! [`bracket_state_sum`] is the plain `2^n` state sum, kept as a reference.

use std::collections::HashMap;

use super::diagram::Diagram;
use crate::polynomial::LaurentPolynomial;

/// Crossing limit for the exhaustive reference evaluator.
pub const STATE_SUM_LIMIT: usize = 24;

/// Crossing limit for the pairing evaluator.
pub const BRACKET_LIMIT: usize = 120;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("diagram has {crossings} crossings, evaluator budget is {budget}")]
pub struct BudgetExceeded {
    pub crossings: usize,
    pub budget: usize,
}

/// The loop value `-A^2 - A^-2`.
pub fn loop_value() -> LaurentPolynomial {
    LaurentPolynomial::from_terms([(2, -1), (-2, -1)])
}

/// Divides by one loop value so the crossing-free unknot evaluates to 1.
fn normalize(total: &LaurentPolynomial) -> LaurentPolynomial {
    // P / (-A^-2 (A^4 + 1)) = -A^2 P / (A^4 + 1)
    let q = total.div_binomial(4).expect("every state has at least one loop");
    (-&q).shift(2)
}

fn loops_factor(count: usize) -> LaurentPolynomial {
    loop_value().pow(count as u32)
}

/// Reference `2^n` state sum.
pub fn bracket_state_sum(d: &Diagram) -> Result<LaurentPolynomial, BudgetExceeded> {
    let n = d.crossing_count();
    if n > STATE_SUM_LIMIT {
        return Err(BudgetExceeded { crossings: n, budget: STATE_SUM_LIMIT });
    }
    if n == 0 {
        return Ok(loops_factor(d.free_loops().saturating_sub(1)));
    }
    // slot s = 4 * crossing + position; arcs join the two slots carrying the same label
    let mut label_slots: HashMap<u32, Vec<usize>> = HashMap::new();
    for (ci, c) in d.crossings().iter().enumerate() {
        for (pos, &label) in c.pd.iter().enumerate() {
            label_slots.entry(label).or_default().push(4 * ci + pos);
        }
    }
    let arc_pairs: Vec<(usize, usize)> = label_slots.values().map(|v| (v[0], v[1])).collect();
    // loop count for each smoothing assignment, accumulated by exponent of A
    let mut counts: HashMap<(i64, usize), i128> = HashMap::new();
    let mut parent = vec![0usize; 4 * n];
    for state in 0u64..(1u64 << n) {
        for (i, p) in parent.iter_mut().enumerate() {
            *p = i;
        }
        let mut a_minus_b = 0i64;
        for ci in 0..n {
            let s = 4 * ci;
            if state >> ci & 1 == 0 {
                a_minus_b += 1;
                union(&mut parent, s, s + 1);
                union(&mut parent, s + 2, s + 3);
            } else {
                a_minus_b -= 1;
                union(&mut parent, s, s + 3);
                union(&mut parent, s + 1, s + 2);
            }
        }
        for &(x, y) in &arc_pairs {
            union(&mut parent, x, y);
        }
        let loops = (0..4 * n).filter(|&i| find(&mut parent, i) == i).count();
        *counts.entry((a_minus_b, loops + d.free_loops())).or_insert(0) += 1;
    }
    let mut total = LaurentPolynomial::zero();
    for ((e, loops), k) in counts {
        total += &(&LaurentPolynomial::monomial(k, e) * &loops_factor(loops));
    }
    Ok(normalize(&total))
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra] = rb;
    }
}

type Pairing = Vec<(u32, u32)>;

/// Pairing-state evaluator; agrees with [`bracket_state_sum`] wherever both run.
pub fn bracket(d: &Diagram) -> Result<LaurentPolynomial, BudgetExceeded> {
    let n = d.crossing_count();
    if n > BRACKET_LIMIT {
        return Err(BudgetExceeded { crossings: n, budget: BRACKET_LIMIT });
    }
    if n == 0 {
        return Ok(loops_factor(d.free_loops().saturating_sub(1)));
    }
    let crossings = d.crossings();
    let order = merge_order(d);
    let mut states: HashMap<Pairing, LaurentPolynomial> = HashMap::new();
    states.insert(Vec::new(), LaurentPolynomial::one());
    for &ci in &order {
        let pd = crossings[ci].pd;
        let smoothings = [(1i64, [(pd[0], pd[1]), (pd[2], pd[3])]), (-1i64, [(pd[0], pd[3]), (pd[1], pd[2])])];
        let mut next: HashMap<Pairing, LaurentPolynomial> = HashMap::new();
        for (pairing, poly) in &states {
            for (weight, new_edges) in &smoothings {
                let (merged, loops) = glue(pairing, new_edges);
                let factor = &LaurentPolynomial::monomial(1, *weight) * &loops_factor(loops);
                let contribution = poly * &factor;
                *next.entry(merged).or_insert_with(LaurentPolynomial::zero) += &contribution;
            }
        }
        next.retain(|_, p| !p.is_zero());
        states = next;
    }
    let mut total = LaurentPolynomial::zero();
    for (pairing, poly) in states {
        debug_assert!(pairing.is_empty());
        total += &poly;
    }
    total = &total * &loops_factor(d.free_loops());
    Ok(normalize(&total))
}

/// Greedy order keeping the open boundary narrow.
fn merge_order(d: &Diagram) -> Vec<usize> {
    let crossings = d.crossings();
    let n = crossings.len();
    let mut done = vec![false; n];
    let mut open: HashMap<u32, usize> = HashMap::new();
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best: Option<(i64, usize)> = None;
        for ci in (0..n).filter(|&c| !done[c]) {
            let shared = crossings[ci].pd.iter().filter(|l| open.contains_key(l)).count() as i64;
            let fresh = 4 - 2 * shared;
            // maximize closed arcs, then minimize growth
            let score = shared * 8 - fresh;
            if best.is_none_or(|(s, _)| score > s) {
                best = Some((score, ci));
            }
        }
        let (_, ci) = best.unwrap();
        done[ci] = true;
        order.push(ci);
        for &l in &crossings[ci].pd {
            let e = open.entry(l).or_insert(0);
            *e += 1;
            if *e == 2 {
                open.remove(&l);
            }
        }
    }
    order
}

/// Adds smoothing edges to a boundary pairing; returns the new pairing and the
/// number of loops closed off.
fn glue(pairing: &Pairing, new_edges: &[(u32, u32); 2]) -> (Pairing, usize) {
    let mut edges: Vec<(u32, u32)> = Vec::with_capacity(pairing.len() + 2);
    edges.extend_from_slice(pairing);
    edges.extend_from_slice(new_edges);
    let mut incident: HashMap<u32, Vec<usize>> = HashMap::new();
    for (i, &(a, b)) in edges.iter().enumerate() {
        incident.entry(a).or_default().push(i);
        incident.entry(b).or_default().push(i);
    }
    let mut used = vec![false; edges.len()];
    let mut result = Vec::new();
    let mut ends: Vec<u32> = incident.iter().filter(|(_, v)| v.len() == 1).map(|(&k, _)| k).collect();
    ends.sort_unstable();
    for start in ends {
        let e0 = incident[&start][0];
        if used[e0] {
            continue;
        }
        let mut at = start;
        let mut e = e0;
        loop {
            used[e] = true;
            let (a, b) = edges[e];
            at = if a == at { b } else { a };
            match incident[&at].iter().find(|&&x| !used[x]) {
                Some(&nx) => e = nx,
                None => break,
            }
        }
        result.push((start.min(at), start.max(at)));
    }
    let mut loops = 0;
    for i in 0..edges.len() {
        if used[i] {
            continue;
        }
        loops += 1;
        let mut e = i;
        let mut at = edges[i].0;
        loop {
            used[e] = true;
            let (a, b) = edges[e];
            at = if a == at { b } else { a };
            match incident[&at].iter().find(|&&x| !used[x]) {
                Some(&nx) => e = nx,
                None => break,
            }
        }
    }
    result.sort_unstable();
    (result, loops)
}

/// `(-A^3)^{-w} <D>` rewritten in `t = A^-4`, exponents in half-units of `t`.
pub fn jones_from_bracket(bracket: &LaurentPolynomial, writhe: i64) -> LaurentPolynomial {
    let sign = if writhe.rem_euclid(2) == 0 { 1 } else { -1 };
    let f = bracket.shift(-3 * writhe).scale(sign);
    LaurentPolynomial::from_terms(f.terms().map(|(e, c)| {
        assert!(e % 2 == 0, "normalized bracket exponent {e} is odd");
        (-e / 2, c)
    }))
}
