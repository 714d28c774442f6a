//! Exact linear programming for vertex heights.
//!
//! Given a planar layout and the desired over/under relation at every crossing,
//! the heights satisfying all relations with unit margin form a polyhedron;
//! [`min_l1_feasible`] finds its point of least L1 norm with a dense two-phase
//! simplex over rationals (Bland's rule, so it terminates).

use num_traits::{One, Signed, Zero};

use crate::point::Q;

/// `coeffs · x ≥ rhs` over free variables `x`.
#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<(usize, Q)>,
    pub rhs: Q,
}

/// Least-L1 solution of the constraint system, or `None` when infeasible.
pub fn min_l1_feasible(vars: usize, constraints: &[Constraint]) -> Option<Vec<Q>> {
    // columns: u (vars), v (vars), surplus (rows), artificial (rows); x = u - v
    let rows = constraints.len();
    let cols = 2 * vars + 2 * rows;
    let mut t: Vec<Vec<Q>> = Vec::with_capacity(rows);
    let mut rhs: Vec<Q> = Vec::with_capacity(rows);
    for (r, c) in constraints.iter().enumerate() {
        let mut row = vec![Q::zero(); cols];
        for (i, a) in &c.coeffs {
            row[*i] += a;
            row[vars + *i] -= a;
        }
        row[2 * vars + r] = -Q::one();
        let mut b = c.rhs.clone();
        if b.is_negative() {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
            b = -b;
        }
        row[2 * vars + rows + r] = Q::one();
        t.push(row);
        rhs.push(b);
    }
    let mut basis: Vec<usize> = (0..rows).map(|r| 2 * vars + rows + r).collect();

    // phase 1: minimise the sum of artificials
    let phase1: Vec<Q> = (0..cols).map(|j| if j >= 2 * vars + rows { Q::one() } else { Q::zero() }).collect();
    simplex(&mut t, &mut rhs, &mut basis, &phase1, cols);
    let infeasibility: Q = basis
        .iter()
        .zip(&rhs)
        .filter(|(&b, _)| b >= 2 * vars + rows)
        .map(|(_, v)| v.clone())
        .fold(Q::zero(), |a, b| a + b);
    if !infeasibility.is_zero() {
        return None;
    }
    // drive remaining zero-level artificials out of the basis where possible
    for r in 0..rows {
        if basis[r] >= 2 * vars + rows {
            if let Some(j) = (0..2 * vars + rows).find(|&j| !t[r][j].is_zero()) {
                pivot(&mut t, &mut rhs, &mut basis, r, j);
            }
        }
    }

    // phase 2: minimise sum(u + v) with artificials frozen at zero
    let usable = 2 * vars + rows;
    let phase2: Vec<Q> = (0..cols).map(|j| if j < 2 * vars { Q::one() } else { Q::zero() }).collect();
    simplex(&mut t, &mut rhs, &mut basis, &phase2, usable);

    let mut value = vec![Q::zero(); 2 * vars];
    for (r, &b) in basis.iter().enumerate() {
        if b < 2 * vars {
            value[b] = rhs[r].clone();
        }
    }
    Some((0..vars).map(|i| &value[i] - &value[vars + i]).collect())
}

fn pivot(t: &mut [Vec<Q>], rhs: &mut [Q], basis: &mut [usize], r: usize, j: usize) {
    let p = t[r][j].clone();
    for x in t[r].iter_mut() {
        *x = &*x / &p;
    }
    rhs[r] = &rhs[r] / &p;
    let prow = t[r].clone();
    let prhs = rhs[r].clone();
    for i in 0..t.len() {
        if i == r || t[i][j].is_zero() {
            continue;
        }
        let f = t[i][j].clone();
        for (x, y) in t[i].iter_mut().zip(&prow) {
            if !y.is_zero() {
                *x -= &f * y;
            }
        }
        rhs[i] -= &f * &prhs;
    }
    basis[r] = j;
}

/// Minimises `cost` over columns `< usable`, starting from a feasible basis.
fn simplex(t: &mut [Vec<Q>], rhs: &mut [Q], basis: &mut [usize], cost: &[Q], usable: usize) {
    loop {
        // reduced cost c_j - c_B B^-1 A_j; the tableau already holds B^-1 A
        let entering = (0..usable).find(|&j| {
            if basis.contains(&j) {
                return false;
            }
            let mut reduced = cost[j].clone();
            for (r, &b) in basis.iter().enumerate() {
                if !t[r][j].is_zero() && !cost[b].is_zero() {
                    reduced -= &cost[b] * &t[r][j];
                }
            }
            reduced.is_negative()
        });
        let Some(j) = entering else { return };
        let mut leave: Option<(usize, Q)> = None;
        for r in 0..t.len() {
            if t[r][j].is_positive() {
                let ratio = &rhs[r] / &t[r][j];
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        match leave {
            Some((r, _)) => pivot(t, rhs, basis, r, j),
            // unbounded below cannot happen for a nonnegative cost
            None => return,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::{q, qf};

    fn c(coeffs: &[(usize, i64)], rhs: i64) -> Constraint {
        Constraint { coeffs: coeffs.iter().map(|&(i, a)| (i, q(a))).collect(), rhs: q(rhs) }
    }

    #[test]
    fn least_norm_point() {
        // x0 >= 1, x1 <= -2, x0 - x1 >= 5
        let sol = min_l1_feasible(2, &[c(&[(0, 1)], 1), c(&[(1, -1)], 2), c(&[(0, 1), (1, -1)], 5)]).unwrap();
        assert_eq!(&sol[0] - &sol[1], q(5));
        assert_eq!(sol[0].abs() + sol[1].abs(), q(5));
        assert!(sol[0] >= q(1) && sol[1] <= q(-2));
    }

    #[test]
    fn infeasible_system() {
        assert!(min_l1_feasible(1, &[c(&[(0, 1)], 1), c(&[(0, -1)], 0)]).is_none());
    }

    #[test]
    fn fractional_coefficients() {
        let sol = min_l1_feasible(
            2,
            &[Constraint { coeffs: vec![(0, qf(1, 2)), (1, qf(1, 2))], rhs: q(1) }, c(&[(0, 1), (1, -1)], 0)],
        )
        .unwrap();
        assert_eq!(sol, vec![q(1), q(1)]);
    }
}
