//! One-variable Alexander polynomial from the Wirtinger presentation.
//!
//! Only used to separate notations whose Jones polynomials coincide. The
//! determinant of a first minor of the abelianized Fox matrix is sampled at
//! integer points with exact Bareiss elimination and interpolated back.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::diagram::Diagram;
use crate::polynomial::LaurentPolynomial;

/// Over-arc index of every PD edge label.
fn wirtinger_arcs(d: &Diagram) -> (Vec<usize>, usize) {
    let labels = 2 * d.crossing_count();
    let mut parent: Vec<usize> = (0..labels).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for c in d.crossings() {
        let (a, b) = (find(&mut parent, c.over_in() as usize), find(&mut parent, c.over_out() as usize));
        parent[a] = b;
    }
    let mut index = vec![usize::MAX; labels];
    let mut count = 0;
    let mut arc_of = vec![0; labels];
    for (l, arc) in arc_of.iter_mut().enumerate() {
        let r = find(&mut parent, l);
        if index[r] == usize::MAX {
            index[r] = count;
            count += 1;
        }
        *arc = index[r];
    }
    (arc_of, count)
}

fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v.div_floor(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Alexander polynomial normalized to a nonzero constant term and positive
/// leading coefficient; the zero polynomial for split diagrams.
pub fn alexander(d: &Diagram) -> LaurentPolynomial {
    let n = d.crossing_count();
    if n == 0 {
        return if d.component_count() <= 1 { LaurentPolynomial::one() } else { LaurentPolynomial::zero() };
    }
    let (arc_of, arcs) = wirtinger_arcs(d);
    // rows: crossings, columns: arcs; entries are a + b t
    let mut rows: Vec<Vec<(i64, i64)>> = vec![vec![(0, 0); arcs]; n];
    for (r, c) in d.crossings().iter().enumerate() {
        let over = arc_of[c.over_in() as usize];
        let (ui, uo) = (arc_of[c.under_in() as usize], arc_of[c.under_out() as usize]);
        let (into, out) = if c.sign > 0 { ((0, 1), (-1, 0)) } else { ((-1, 0), (0, 1)) };
        let add = |e: &mut (i64, i64), v: (i64, i64)| {
            e.0 += v.0;
            e.1 += v.1;
        };
        add(&mut rows[r][over], (1, -1));
        add(&mut rows[r][ui], into);
        add(&mut rows[r][uo], out);
    }
    let size = n.min(arcs) - 1;
    let samples: Vec<(BigInt, BigInt)> = (0..=size as i64)
        .map(|t| {
            let m =
                (0..size).map(|i| (0..size).map(|j| BigInt::from(rows[i][j].0 + rows[i][j].1 * t)).collect()).collect();
            (BigInt::from(t), bareiss_det(m))
        })
        .collect();
    let coeffs = interpolate(&samples);
    let mut p = LaurentPolynomial::from_terms(
        coeffs.iter().enumerate().map(|(e, c)| (e as i64, c.to_i128().expect("Alexander coefficient fits in i128"))),
    );
    if let Some(lo) = p.min_exponent() {
        p = p.shift(-lo);
    }
    if let Some(hi) = p.max_exponent() {
        if p.coefficient(hi) < 0 {
            p = p.scale(-1);
        }
    }
    p
}

/// Coefficients (lowest degree first) of the polynomial through the samples.
fn interpolate(samples: &[(BigInt, BigInt)]) -> Vec<BigInt> {
    let k = samples.len();
    let mut total = vec![BigRational::zero(); k];
    for (i, (xi, yi)) in samples.iter().enumerate() {
        // basis polynomial prod_{j != i} (x - xj) / (xi - xj)
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, (xj, _)) in samples.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (d, c) in basis.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * BigRational::from_integer(xj.clone());
            }
            basis = next;
            denom *= BigRational::from_integer(xi - xj);
        }
        let scale = BigRational::from_integer(yi.clone()) / denom;
        for (d, c) in basis.iter().enumerate() {
            total[d] += c * &scale;
        }
    }
    let mut out: Vec<BigInt> = total
        .into_iter()
        .map(|c| {
            assert!(c.is_integer(), "interpolated determinant has integral coefficients");
            c.to_integer()
        })
        .collect();
    while out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    out
}

/// Alexander polynomial of the two-bridge knot `p/q` (odd `p`) by the
/// exponent-walk formula; an independent oracle for [`alexander`].
pub fn two_bridge_alexander(p: u64, q: u64) -> LaurentPolynomial {
    // the formula wants q odd; q and q - p name the same knot
    let q = if q.is_multiple_of(2) { q as i64 - p as i64 } else { q as i64 };
    let p = p as i64;
    let mut poly = LaurentPolynomial::zero();
    let mut e = 0i64;
    for k in 0..p {
        poly.add_term(if k % 2 == 0 { 1 } else { -1 }, e);
        e += if Integer::div_floor(&((k + 1) * q), &p).is_even() { 1 } else { -1 };
    }
    let lo = poly.min_exponent().unwrap_or(0);
    let mut poly = poly.shift(-lo);
    if let Some(hi) = poly.max_exponent() {
        if poly.coefficient(hi).is_negative() {
            poly = poly.scale(-1);
        }
    }
    poly
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conway::{enumerate, parse};
    use crate::invariants::canonical_diagram;

    #[test]
    fn trefoil_and_figure_eight() {
        let t = alexander(&canonical_diagram(&parse("3").unwrap()));
        assert_eq!(t, LaurentPolynomial::from_terms([(0, 1), (1, -1), (2, 1)]));
        let f = alexander(&canonical_diagram(&parse("2,1,1").unwrap()));
        assert_eq!(f, LaurentPolynomial::from_terms([(0, 1), (1, -3), (2, 1)]));
    }

    #[test]
    fn matches_the_fraction_formula_on_knots() {
        for n in enumerate(6, 10).unwrap() {
            let f = n.fraction();
            if f.p % 2 == 1 {
                assert_eq!(alexander(&canonical_diagram(&n)), two_bridge_alexander(f.p, f.q), "{n}");
            }
        }
    }

    #[test]
    fn separates_the_ten_crossing_jones_pair() {
        let a = alexander(&canonical_diagram(&parse("1,1,2,4,2").unwrap()));
        let b = alexander(&canonical_diagram(&parse("1,2,1,3,3").unwrap()));
        assert_ne!(a, b);
    }
}
