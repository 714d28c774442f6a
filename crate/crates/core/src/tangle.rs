//! Integral ±n-tangles built from n+1 sticks.
//!
//! In local coordinates the core axis is the y axis, strands run from top
//! (large y) to bottom, and the tangle is read from the top view, i.e. by
//! projecting along +z. The planar layout is fixed combinatorially; heights are
//! then chosen by [`crate::lift`] so that every crossing has the sign of the
//! requested handedness.

use num_traits::{One, Signed, Zero};

use crate::geometry::Cycle;
use crate::lift::{min_l1_feasible, Constraint};
use crate::point::{q, qf, sign, Point3, Stick, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Handedness {
    Positive,
    Negative,
}

impl Handedness {
    pub fn sign(self) -> i8 {
        match self {
            Handedness::Positive => 1,
            Handedness::Negative => -1,
        }
    }

    pub fn flip(self) -> Handedness {
        match self {
            Handedness::Positive => Handedness::Negative,
            Handedness::Negative => Handedness::Positive,
        }
    }

    pub fn from_sign(s: i64) -> Option<Handedness> {
        match s.signum() {
            1 => Some(Handedness::Positive),
            -1 => Some(Handedness::Negative),
            _ => None,
        }
    }
}

/// Rigid motion `p ↦ rotation·p + translation` with an exactly orthogonal rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Placement {
    pub rotation: [[Q; 3]; 3],
    pub translation: Point3,
}

impl Placement {
    pub fn identity() -> Placement {
        let r = |i: usize, j: usize| if i == j { Q::one() } else { Q::zero() };
        Placement {
            rotation: [[r(0, 0), r(0, 1), r(0, 2)], [r(1, 0), r(1, 1), r(1, 2)], [r(2, 0), r(2, 1), r(2, 2)]],
            translation: Point3::origin(),
        }
    }

    pub fn translation(t: Point3) -> Placement {
        Placement { translation: t, ..Placement::identity() }
    }

    /// Rotation about the z axis through the rational point `((1-s²)/(1+s²), 2s/(1+s²))` of the unit circle.
    pub fn rotation_z(s: &Q) -> Placement {
        let d = Q::one() + s * s;
        let c = (Q::one() - s * s) / &d;
        let n = (q(2) * s) / &d;
        let mut p = Placement::identity();
        p.rotation[0][0] = c.clone();
        p.rotation[0][1] = -n.clone();
        p.rotation[1][0] = n;
        p.rotation[1][1] = c;
        p
    }

    /// Orthogonal with determinant +1, checked exactly.
    pub fn is_proper(&self) -> bool {
        let r = &self.rotation;
        for i in 0..3 {
            for j in 0..3 {
                let dot: Q = (0..3).map(|k| &r[k][i] * &r[k][j]).fold(Q::zero(), |a, b| a + b);
                if dot != if i == j { Q::one() } else { Q::zero() } {
                    return false;
                }
            }
        }
        let det = &r[0][0] * (&r[1][1] * &r[2][2] - &r[1][2] * &r[2][1])
            - &r[0][1] * (&r[1][0] * &r[2][2] - &r[1][2] * &r[2][0])
            + &r[0][2] * (&r[1][0] * &r[2][1] - &r[1][1] * &r[2][0]);
        det.is_one()
    }

    pub fn apply(&self, p: &Point3) -> Point3 {
        &self.apply_linear(p) + &self.translation
    }

    pub fn apply_linear(&self, p: &Point3) -> Point3 {
        let c = [&p.x, &p.y, &p.z];
        let row = |i: usize| (0..3).map(|k| &self.rotation[i][k] * c[k]).fold(Q::zero(), |a, b| a + b);
        Point3::new(row(0), row(1), row(2))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangleParams {
    pub wrap_radius: Q,
    /// Axial advance per half-twist.
    pub pitch: Q,
    /// Gap between the two core pieces of an odd tangle.
    pub perturbation: Q,
    pub placement: Placement,
}

impl Default for TangleParams {
    fn default() -> Self {
        TangleParams { wrap_radius: q(1), pitch: q(1), perturbation: qf(1, 100), placement: Placement::identity() }
    }
}

impl TangleParams {
    pub fn validate(&self) -> Result<(), TangleError> {
        if !self.wrap_radius.is_positive() || !self.pitch.is_positive() || !self.perturbation.is_positive() {
            return Err(TangleError::InvalidParams("magnitudes must be positive"));
        }
        if self.perturbation > &self.wrap_radius / q(10) {
            return Err(TangleError::InvalidParams("perturbation exceeds wrap_radius/10"));
        }
        if !self.placement.is_proper() {
            return Err(TangleError::InvalidParams("placement is not a proper rotation"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TangleError {
    #[error("a tangle needs at least 2 half-twists, got {0}")]
    TooFewTwists(u32),
    #[error("extension must add at least one half-twist")]
    EmptyExtension,
    #[error("invalid tangle parameters: {0}")]
    InvalidParams(&'static str),
    #[error("parameters give a degenerate layout: {0}")]
    DegenerateParams(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EndLabel {
    NW,
    NE,
    SW,
    SE,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ends {
    pub nw: Point3,
    pub ne: Point3,
    pub sw: Point3,
    pub se: Point3,
}

impl Ends {
    pub fn get(&self, label: EndLabel) -> &Point3 {
        match label {
            EndLabel::NW => &self.nw,
            EndLabel::NE => &self.ne,
            EndLabel::SW => &self.sw,
            EndLabel::SE => &self.se,
        }
    }
}

/// Line through `point` with direction `direction`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Line {
    pub point: Point3,
    pub direction: Point3,
}

impl Line {
    pub fn contains(&self, p: &Point3) -> bool {
        (p - &self.point).cross(&self.direction).is_zero()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangleBlock {
    /// The two strands as vertex chains, each oriented from top to bottom.
    pub strands: [Vec<Point3>; 2],
    pub ends: Ends,
    pub twist_count: u32,
    pub handedness: Handedness,
    pub core_axis: Line,
    pub params: TangleParams,
    local: [Vec<Point3>; 2],
}

impl TangleBlock {
    pub fn sticks(&self) -> Vec<Stick> {
        self.strands
            .iter()
            .flat_map(|s| {
                s.windows(2).map(|w| Stick::new(w[0].clone(), w[1].clone()).expect("layout vertices are distinct"))
            })
            .collect()
    }

    pub fn stick_count(&self) -> usize {
        self.strands.iter().map(|s| s.len() - 1).sum()
    }

    /// Direction of the top view in world coordinates.
    pub fn view_direction(&self) -> Point3 {
        self.params.placement.apply_linear(&Point3::from_ints(0, 0, 1))
    }

    /// Sticks with both endpoints on the core axis, and the two near-axis
    /// pieces of an odd tangle.
    pub fn core_sticks(&self) -> Vec<Stick> {
        let on_axis = |p: &Point3| self.core_axis.contains(p);
        self.sticks().into_iter().filter(|s| on_axis(&s.a) || on_axis(&s.b)).collect()
    }

    /// Closes the tangle by joining NW to SW and NE to SE around the outside,
    /// giving the two-bridge torus link of the twist.
    pub fn side_closure(&self) -> Vec<Cycle> {
        let far = &self.params.wrap_radius * q(3);
        let tops = [&self.local[0][0], &self.local[1][0]];
        let bottoms = [self.local[0].last().unwrap(), self.local[1].last().unwrap()];
        let top_west = |k: usize| tops[k].x < tops[1 - k].x;
        let bottom_west = |k: usize| bottoms[k].x < bottoms[1 - k].x;
        let outside = |p: &Point3, west: bool| {
            let x = if west { -far.clone() } else { far.clone() };
            Point3::new(x, p.y.clone(), Q::zero())
        };
        let mut cycles = Vec::new();
        let mut used = [false, false];
        while let Some(start) = (0..2).find(|&k| !used[k]) {
            let mut cycle = Vec::new();
            let mut k = start;
            while !used[k] {
                used[k] = true;
                cycle.extend(self.local[k].iter().cloned());
                let west = bottom_west(k);
                let next = (0..2).find(|&j| top_west(j) == west).unwrap();
                cycle.push(outside(bottoms[k], west));
                cycle.push(outside(tops[next], west));
                k = next;
            }
            cycles.push(cycle.iter().map(|p| self.params.placement.apply(p)).collect());
        }
        cycles
    }

    fn from_local(
        local: [Vec<Point3>; 2],
        twist_count: u32,
        handedness: Handedness,
        params: TangleParams,
    ) -> TangleBlock {
        let place = |c: &Vec<Point3>| c.iter().map(|p| params.placement.apply(p)).collect::<Vec<_>>();
        let strands = [place(&local[0]), place(&local[1])];
        // east/west is decided by local x, so mirroring swaps labels automatically
        let west_first = |a: &Point3, b: &Point3| a.x < b.x;
        let (s0, s1) = (&strands[0], &strands[1]);
        let (l0, l1) = (&local[0], &local[1]);
        let (nw, ne) =
            if west_first(&l0[0], &l1[0]) { (s0[0].clone(), s1[0].clone()) } else { (s1[0].clone(), s0[0].clone()) };
        let (e0, e1) = (l0.last().unwrap(), l1.last().unwrap());
        let (sw, se) = if west_first(e0, e1) {
            (s0.last().unwrap().clone(), s1.last().unwrap().clone())
        } else {
            (s1.last().unwrap().clone(), s0.last().unwrap().clone())
        };
        let core_axis = Line {
            point: params.placement.apply(&Point3::origin()),
            direction: params.placement.apply_linear(&Point3::from_ints(0, 1, 0)),
        };
        TangleBlock { strands, ends: Ends { nw, ne, sw, se }, twist_count, handedness, core_axis, params, local }
    }
}

type P2 = (Q, Q);

fn cross2(a: &P2, b: &P2) -> Q {
    &a.0 * &b.1 - &a.1 * &b.0
}

fn sub2(a: &P2, b: &P2) -> P2 {
    (&a.0 - &b.0, &a.1 - &b.1)
}

enum Meet {
    None,
    /// Interiors cross at parameters (t, u).
    Cross(Q, Q),
    Degenerate,
}

fn meet(a: &P2, b: &P2, c: &P2, d: &P2) -> Meet {
    let r = sub2(b, a);
    let s = sub2(d, c);
    let denom = cross2(&r, &s);
    let ca = sub2(c, a);
    if denom.is_zero() {
        // parallel: degenerate only if collinear and overlapping
        if !cross2(&ca, &r).is_zero() {
            return Meet::None;
        }
        let rr = &r.0 * &r.0 + &r.1 * &r.1;
        let t0 = (&ca.0 * &r.0 + &ca.1 * &r.1) / &rr;
        let t1 = &t0 + (&s.0 * &r.0 + &s.1 * &r.1) / &rr;
        let (lo, hi) = if t0 < t1 { (t0, t1) } else { (t1, t0) };
        return if hi < Q::zero() || lo > Q::one() { Meet::None } else { Meet::Degenerate };
    }
    let t = cross2(&ca, &s) / &denom;
    let u = cross2(&ca, &r) / &denom;
    let inside = |v: &Q| v.is_positive() && *v < Q::one();
    let closed = |v: &Q| !v.is_negative() && *v <= Q::one();
    if inside(&t) && inside(&u) {
        Meet::Cross(t, u)
    } else if closed(&t) && closed(&u) {
        Meet::Degenerate
    } else {
        Meet::None
    }
}

/// Planar layout with `None` heights for free vertices and fixed heights otherwise.
struct Layout {
    chains: [Vec<(P2, Option<Q>)>; 2],
}

/// Lifts a planar layout so that every crossing, read along +z with strands
/// oriented by vertex order, has sign `s`. Returns `None` when the layout is
/// degenerate, self-crossing within a strand, or when no heights exist.
fn lift(
    layout: &Layout,
    s: i8,
    margin: impl Fn(usize, usize, usize, usize) -> Q,
) -> Result<[Vec<Point3>; 2], TangleError> {
    let mut var = [Vec::new(), Vec::new()];
    let mut count = 0;
    for (k, chain) in layout.chains.iter().enumerate() {
        for (_, h) in chain {
            var[k].push(if h.is_none() {
                count += 1;
                Some(count - 1)
            } else {
                None
            });
        }
    }
    let edges: Vec<(usize, usize)> =
        (0..2).flat_map(|k| (0..layout.chains[k].len() - 1).map(move |i| (k, i))).collect();
    let mut constraints = Vec::new();
    for (x, &(k1, i1)) in edges.iter().enumerate() {
        for &(k2, i2) in &edges[x + 1..] {
            if k1 == k2 && i1.abs_diff(i2) <= 1 {
                continue;
            }
            let c1 = &layout.chains[k1];
            let c2 = &layout.chains[k2];
            let (a, b) = (&c1[i1].0, &c1[i1 + 1].0);
            let (c, d) = (&c2[i2].0, &c2[i2 + 1].0);
            let (t, u) = match meet(a, b, c, d) {
                Meet::None => continue,
                Meet::Degenerate => return Err(TangleError::DegenerateParams("touching sticks in the top view")),
                Meet::Cross(t, u) => (t, u),
            };
            if k1 == k2 {
                return Err(TangleError::DegenerateParams("strand crosses itself in the top view"));
            }
            // over edge o, under edge w: sign is sgn(o × w)
            let first_over = sign(&cross2(&sub2(b, a), &sub2(d, c))) == s;
            let g = if first_over { Q::one() } else { -Q::one() };
            let mut coeffs = Vec::new();
            let mut rhs = margin(k1, i1, k2, i2);
            let mut add = |k: usize, i: usize, w: Q| match (&var[k][i], &layout.chains[k][i].1) {
                (Some(v), _) => coeffs.push((*v, w)),
                (None, Some(h)) => rhs -= w * h,
                (None, None) => unreachable!(),
            };
            add(k1, i1, &g * (Q::one() - &t));
            add(k1, i1 + 1, &g * &t);
            add(k2, i2, -&g * (Q::one() - &u));
            add(k2, i2 + 1, -&g * &u);
            constraints.push(Constraint { coeffs, rhs });
        }
    }
    let z = min_l1_feasible(count, &constraints).ok_or(TangleError::DegenerateParams("no consistent heights"))?;
    let build = |k: usize| -> Vec<Point3> {
        layout.chains[k]
            .iter()
            .zip(&var[k])
            .map(|((p, h), v)| {
                let z = match (v, h) {
                    (Some(v), _) => z[*v].clone(),
                    (None, Some(h)) => h.clone(),
                    (None, None) => unreachable!(),
                };
                Point3::new(p.0.clone(), p.1.clone(), z)
            })
            .collect()
    };
    Ok([build(0), build(1)])
}

/// Number of planar crossings in the layout; used to confirm the twist count.
fn planar_crossings(chains: &[Vec<(P2, Option<Q>)>; 2]) -> usize {
    let mut n = 0;
    let seg = |k: usize, i: usize| (&chains[k][i].0, &chains[k][i + 1].0);
    for i in 0..chains[0].len() - 1 {
        for j in 0..chains[1].len() - 1 {
            let (a, b) = seg(0, i);
            let (c, d) = seg(1, j);
            if let Meet::Cross(..) = meet(a, b, c, d) {
                n += 1;
            }
        }
    }
    n
}

/// Positive-handed local layout: core on x = 0, wrap vertices alternating
/// between x = ±wrap_radius one pitch apart.
fn positive_layout(n: u32, p: &TangleParams) -> Layout {
    let r = &p.wrap_radius;
    let h = &p.pitch;
    let half = h / q(2);
    let wrap = |j: u32| -> P2 {
        let x = if j.is_multiple_of(2) { r.clone() } else { -r.clone() };
        (x, -(h * q(j as i64)))
    };
    let zero = Some(Q::zero());
    let top = ((Q::zero(), half.clone()), zero.clone());
    // wrap ends sit at fixed heights so that ends depend on parity only; odd wraps
    // meet the core near the split, where heights are amplified by radius / perturbation
    let lever = r / &p.perturbation;
    let (top_end, bottom_end) = if n.is_multiple_of(2) {
        (Some(r * q(2)), Some(-(r * q(2))))
    } else {
        let end = h * &lever * &lever;
        (Some(end.clone()), Some(-end))
    };
    if n.is_multiple_of(2) {
        let bottom = ((Q::zero(), -(h * q(n as i64)) - &half), zero);
        let height = |j: u32| match j {
            0 => top_end.clone(),
            j if j == n => bottom_end.clone(),
            _ => None,
        };
        Layout { chains: [vec![top, bottom], (0..=n).map(|j| (wrap(j), height(j))).collect()] }
    } else {
        // the wrap vertex at mid-height is replaced by the two near-axis ends
        let k = (n - 1) / 2;
        let e = &p.perturbation;
        let side = if k.is_multiple_of(2) { e.clone() } else { -e.clone() };
        let mid = -(h * q(k as i64));
        let p1 = ((side.clone(), &mid - e / q(4)), None);
        let p2 = ((side, &mid + e / q(4)), None);
        let bottom = ((Q::zero(), -(h * q(n as i64 - 1)) - &half), zero);
        let mut a = vec![top, p1];
        a.extend((k + 1..n).map(|j| (wrap(j), if j == n - 1 { bottom_end.clone() } else { None })));
        let mut b: Vec<_> = (0..k).map(|j| (wrap(j), if j == 0 { top_end.clone() } else { None })).collect();
        b.push(p2);
        b.push(bottom);
        Layout { chains: [a, b] }
    }
}

/// Integral tangle with `n` half-twists of the given handedness and `n + 1` sticks.
pub fn build_tangle(n: u32, handedness: Handedness, params: &TangleParams) -> Result<TangleBlock, TangleError> {
    if n < 2 {
        return Err(TangleError::TooFewTwists(n));
    }
    params.validate()?;
    let layout = positive_layout(n, params);
    if planar_crossings(&layout.chains) != n as usize {
        return Err(TangleError::DegenerateParams("top view does not show n crossings"));
    }
    let odd = n % 2 == 1;
    let near_core = |k: usize, i: usize| odd && i == 0 && k == 0 || odd && k == 1 && i == layout.chains[1].len() - 2;
    let local = lift(&layout, 1, |k1, i1, k2, i2| {
        if near_core(k1, i1) && near_core(k2, i2) {
            &params.perturbation / q(4 * n as i64)
        } else {
            // margins shrink with n so the pinned ends stay reachable
            &params.wrap_radius / q(2 * n as i64)
        }
    })?;
    let positive = TangleBlock::from_local(local, n, Handedness::Positive, params.clone());
    Ok(match handedness {
        Handedness::Positive => positive,
        Handedness::Negative => mirror_tangle(&positive),
    })
}

/// Reflection through the plane spanned by the core axis and the view direction.
pub fn mirror_tangle(t: &TangleBlock) -> TangleBlock {
    let reflect = |c: &Vec<Point3>| c.iter().map(|p| Point3::new(-p.x.clone(), p.y.clone(), p.z.clone())).collect();
    let local = [reflect(&t.local[0]), reflect(&t.local[1])];
    TangleBlock::from_local(local, t.twist_count, t.handedness.flip(), t.params.clone())
}

/// The same tangle with `extra_half_twists` more half-twists, same parameters and handedness.
pub fn extend_tangle(t: &TangleBlock, extra_half_twists: u32) -> Result<TangleBlock, TangleError> {
    if extra_half_twists == 0 {
        return Err(TangleError::EmptyExtension);
    }
    build_tangle(t.twist_count + extra_half_twists, t.handedness, &t.params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{open_crossing_signs, segments_intersect, SegmentRelation};

    fn signs(t: &TangleBlock) -> Vec<i8> {
        open_crossing_signs(&t.strands, &t.view_direction()).expect("top view is generic")
    }

    #[test]
    fn crossing_law_small() {
        for n in 2..=10 {
            for h in [Handedness::Positive, Handedness::Negative] {
                let t = build_tangle(n, h, &TangleParams::default()).unwrap();
                assert_eq!(t.stick_count(), n as usize + 1);
                let s = signs(&t);
                assert_eq!(s.len(), n as usize, "n={n}");
                assert!(s.iter().all(|&x| x == h.sign()), "n={n} {h:?} {s:?}");
            }
        }
    }

    #[test]
    fn sticks_meet_only_at_shared_vertices() {
        for n in 2..=9 {
            let t = build_tangle(n, Handedness::Positive, &TangleParams::default()).unwrap();
            let sticks = t.sticks();
            for i in 0..sticks.len() {
                for j in i + 1..sticks.len() {
                    let rel = segments_intersect(&sticks[i], &sticks[j]);
                    let shares = sticks[i].b == sticks[j].a || sticks[j].b == sticks[i].a;
                    let expected = if shares { SegmentRelation::Touch } else { SegmentRelation::Disjoint };
                    assert_eq!(rel, expected, "n={n} sticks {i},{j}");
                }
            }
        }
    }

    #[test]
    fn core_shape() {
        let even = build_tangle(4, Handedness::Positive, &TangleParams::default()).unwrap();
        let on_axis: Vec<_> = even
            .sticks()
            .into_iter()
            .filter(|s| even.core_axis.contains(&s.a) && even.core_axis.contains(&s.b))
            .collect();
        assert_eq!(on_axis.len(), 1);
        let odd = build_tangle(5, Handedness::Positive, &TangleParams::default()).unwrap();
        let core = odd.core_sticks();
        assert_eq!(core.len(), 2);
        let gap = &core[0].b - &core[1].a;
        assert!(gap.dot(&gap) <= qf(1, 10000), "core pieces {} and {}", core[0].b, core[1].a);
    }

    #[test]
    fn mirror_is_an_involution() {
        let t = build_tangle(3, Handedness::Positive, &TangleParams::default()).unwrap();
        let m = mirror_tangle(&t);
        assert_eq!(m.handedness, Handedness::Negative);
        assert_eq!(m.stick_count(), 4);
        let ne = &t.ends.ne;
        assert_eq!(m.ends.nw, Point3::new(-ne.x.clone(), ne.y.clone(), ne.z.clone()));
        assert_eq!(mirror_tangle(&m), t);
    }

    #[test]
    fn mirror_law_on_closures() {
        use crate::geometry::{certify, project};
        use crate::invariants::bracket::bracket;
        let closure_bracket = |t: &TangleBlock| {
            let cycles = t.side_closure();
            let (dir, _) = certify(&cycles, &t.view_direction()).unwrap();
            let d = project(&cycles, &dir).unwrap();
            assert_eq!(d.crossing_count(), t.twist_count as usize);
            assert_eq!(d.component_count(), if t.twist_count.is_multiple_of(2) { 2 } else { 1 });
            bracket(&d).unwrap()
        };
        for n in 2..=6 {
            let t = build_tangle(n, Handedness::Positive, &TangleParams::default()).unwrap();
            assert_eq!(closure_bracket(&mirror_tangle(&t)), closure_bracket(&t).invert_variable(), "n={n}");
        }
    }

    #[test]
    fn preconditions() {
        assert_eq!(build_tangle(1, Handedness::Positive, &TangleParams::default()), Err(TangleError::TooFewTwists(1)));
        let t = build_tangle(2, Handedness::Positive, &TangleParams::default()).unwrap();
        assert_eq!(extend_tangle(&t, 0), Err(TangleError::EmptyExtension));
        let e = extend_tangle(&t, 1).unwrap();
        assert_eq!((e.twist_count, e.stick_count()), (3, 4));
        let bad = TangleParams { perturbation: qf(1, 5), ..TangleParams::default() };
        assert!(matches!(build_tangle(3, Handedness::Positive, &bad), Err(TangleError::InvalidParams(_))));
    }

    #[test]
    fn placement_is_respected() {
        let params = TangleParams {
            placement: Placement { translation: Point3::from_ints(5, -2, 7), ..Placement::rotation_z(&qf(1, 2)) },
            ..TangleParams::default()
        };
        assert!(params.placement.is_proper());
        for n in [4, 7] {
            let t = build_tangle(n, Handedness::Negative, &params).unwrap();
            let s = signs(&t);
            assert_eq!(s, vec![-1; n as usize]);
        }
    }
}
