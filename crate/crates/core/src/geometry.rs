//! Exact embeddedness checks and generic projections of closed polygons.
//!
//! Every predicate is decided in rational arithmetic; nothing here uses a tolerance.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::invariants::{Diagram, Passage};
use crate::point::{sign, Point3, Stick, Q};
use num_traits::{One, Zero};

/// Closed polygon given by its vertices in order; the last vertex joins the first.
pub type Cycle = Vec<Point3>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SegmentRelation {
    Disjoint,
    /// Interiors meet in a single point.
    Cross,
    /// Single common point that is an endpoint of at least one segment.
    Touch,
    /// Collinear with a common sub-segment of positive length.
    Overlap,
}

/// Exact classification of the intersection of two closed, nondegenerate 3D segments.
pub fn segments_intersect(s1: &Stick, s2: &Stick) -> SegmentRelation {
    let d1 = s1.direction();
    let d2 = s2.direction();
    let w = &s2.a - &s1.a;
    let n = d1.cross(&d2);
    if !n.is_zero() {
        if !w.dot(&n).is_zero() {
            return SegmentRelation::Disjoint;
        }
        let nn = n.dot(&n);
        let t = w.cross(&d2).dot(&n) / &nn;
        let u = w.cross(&d1).dot(&n) / &nn;
        let zero = Q::zero();
        let one = Q::one();
        if t < zero || t > one || u < zero || u > one {
            return SegmentRelation::Disjoint;
        }
        if t == zero || t == one || u == zero || u == one {
            return SegmentRelation::Touch;
        }
        return SegmentRelation::Cross;
    }
    if !w.cross(&d1).is_zero() {
        return SegmentRelation::Disjoint;
    }
    let dd = d1.dot(&d1);
    let t0 = w.dot(&d1) / &dd;
    let t1 = (&s2.b - &s1.a).dot(&d1) / &dd;
    let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
    let lo = lo.max(Q::zero());
    let hi = hi.min(Q::one());
    if lo > hi {
        SegmentRelation::Disjoint
    } else if lo == hi {
        SegmentRelation::Touch
    } else {
        SegmentRelation::Overlap
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    Cross,
    Touch,
    Overlap,
    CollinearConsecutive,
    DuplicateVertex,
    TooFewVertices,
}

impl ViolationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationKind::Cross => "cross",
            ViolationKind::Touch => "touch",
            ViolationKind::Overlap => "overlap",
            ViolationKind::CollinearConsecutive => "collinear-consecutive",
            ViolationKind::DuplicateVertex => "duplicate-vertex",
            ViolationKind::TooFewVertices => "too-few-vertices",
        }
    }
}

/// Edge `index` of a component runs from vertex `index` to vertex `index + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Element {
    Edge { component: usize, index: usize },
    Vertex { component: usize, index: usize },
    Component(usize),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Edge { component, index } => write!(f, "edge {component}:{index}"),
            Element::Vertex { component, index } => write!(f, "vertex {component}:{index}"),
            Element::Component(c) => write!(f, "component {c}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub first: Element,
    pub second: Element,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} between {} and {}", self.kind.as_str(), self.first, self.second)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingReport {
    pub embedded: bool,
    pub violations: Vec<Violation>,
}

struct EdgeRec<'a> {
    component: usize,
    index: usize,
    len: usize,
    closed: bool,
    a: &'a Point3,
    b: &'a Point3,
}

impl EdgeRec<'_> {
    fn element(&self) -> Element {
        Element::Edge { component: self.component, index: self.index }
    }

    fn stick(&self) -> Stick {
        Stick { a: self.a.clone(), b: self.b.clone() }
    }

    /// Shares a polygon vertex with `o`.
    fn adjacent(&self, o: &EdgeRec<'_>) -> bool {
        let next = |e: &EdgeRec<'_>| if self.closed { (e.index + 1) % e.len } else { e.index + 1 };
        self.component == o.component && (next(self) == o.index || next(o) == self.index)
    }
}

fn edges(components: &[Cycle]) -> Vec<EdgeRec<'_>> {
    edges_of(components, true)
}

fn edges_of(components: &[Vec<Point3>], closed: bool) -> Vec<EdgeRec<'_>> {
    let mut out = Vec::new();
    for (ci, cyc) in components.iter().enumerate() {
        let len = cyc.len();
        let count = if closed { len } else { len.saturating_sub(1) };
        for i in 0..count {
            out.push(EdgeRec { component: ci, index: i, len, closed, a: &cyc[i], b: &cyc[(i + 1) % len] });
        }
    }
    out
}

/// Decides whether the closed polygons form an embedded link: pairwise disjoint
/// simple closed curves whose consecutive edges are not collinear.
pub fn check_embedded(components: &[Cycle]) -> EmbeddingReport {
    let mut violations = Vec::new();
    for (ci, cyc) in components.iter().enumerate() {
        if cyc.len() < 3 {
            violations.push(Violation {
                kind: ViolationKind::TooFewVertices,
                first: Element::Component(ci),
                second: Element::Component(ci),
            });
        }
    }
    let verts: Vec<(usize, usize, &Point3)> = components
        .iter()
        .enumerate()
        .flat_map(|(ci, c)| c.iter().enumerate().map(move |(vi, p)| (ci, vi, p)))
        .collect();
    for i in 0..verts.len() {
        for j in i + 1..verts.len() {
            if verts[i].2 == verts[j].2 {
                violations.push(Violation {
                    kind: ViolationKind::DuplicateVertex,
                    first: Element::Vertex { component: verts[i].0, index: verts[i].1 },
                    second: Element::Vertex { component: verts[j].0, index: verts[j].1 },
                });
            }
        }
    }
    if !violations.is_empty() {
        return EmbeddingReport { embedded: false, violations };
    }
    let es = edges(components);
    for i in 0..es.len() {
        for j in i + 1..es.len() {
            let (e, f) = (&es[i], &es[j]);
            if e.adjacent(f) {
                if e.len > 2 && e.stick().direction().cross(&f.stick().direction()).is_zero() {
                    violations.push(Violation {
                        kind: ViolationKind::CollinearConsecutive,
                        first: e.element(),
                        second: f.element(),
                    });
                }
                // a triangle's edges are pairwise adjacent; other overlaps are caught above
                continue;
            }
            let kind = match segments_intersect(&e.stick(), &f.stick()) {
                SegmentRelation::Disjoint => continue,
                SegmentRelation::Cross => ViolationKind::Cross,
                SegmentRelation::Touch => ViolationKind::Touch,
                SegmentRelation::Overlap => ViolationKind::Overlap,
            };
            violations.push(Violation { kind, first: e.element(), second: f.element() });
        }
    }
    EmbeddingReport { embedded: violations.is_empty(), violations }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GenericityCheck {
    NonzeroDirection,
    NoEdgeAlongDirection,
    DistinctVertexImages,
    NoVertexOnEdgeImage,
    NoFoldedCorner,
    DistinctCrossingPoints,
    SeparatedDepths,
}

impl GenericityCheck {
    pub const ALL: [GenericityCheck; 7] = [
        GenericityCheck::NonzeroDirection,
        GenericityCheck::NoEdgeAlongDirection,
        GenericityCheck::DistinctVertexImages,
        GenericityCheck::NoVertexOnEdgeImage,
        GenericityCheck::NoFoldedCorner,
        GenericityCheck::DistinctCrossingPoints,
        GenericityCheck::SeparatedDepths,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            GenericityCheck::NonzeroDirection => "nonzero-direction",
            GenericityCheck::NoEdgeAlongDirection => "no-edge-along-direction",
            GenericityCheck::DistinctVertexImages => "distinct-vertex-images",
            GenericityCheck::NoVertexOnEdgeImage => "no-vertex-on-edge-image",
            GenericityCheck::NoFoldedCorner => "no-folded-corner",
            GenericityCheck::DistinctCrossingPoints => "distinct-crossing-points",
            GenericityCheck::SeparatedDepths => "separated-depths",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProjectionError {
    #[error("direction is not generic: {} failed", .0.as_str())]
    NotGeneric(GenericityCheck),
    #[error("no generic direction among {0} candidates")]
    GenericityExhausted(usize),
}

/// A viewing direction with the list of genericity checks it passed for one realization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectionDirection {
    pub direction: Point3,
    pub certificate: Vec<GenericityCheck>,
}

/// Parallel projection along `direction` onto a coordinate plane, oriented as
/// seen by a viewer at `+infinity * direction`.
struct Projector {
    axis: usize,
    swap: bool,
    d: [Q; 3],
}

type P2 = (Q, Q);

impl Projector {
    fn new(direction: &Point3) -> Option<Projector> {
        let d = [direction.x.clone(), direction.y.clone(), direction.z.clone()];
        let axis = [2, 0, 1].into_iter().find(|&k| !d[k].is_zero())?;
        let swap = sign(&d[axis]) < 0;
        Some(Projector { axis, swap, d })
    }

    fn image(&self, p: &Point3) -> P2 {
        let c = [&p.x, &p.y, &p.z];
        let k = self.axis;
        let (i, j) = ((k + 1) % 3, (k + 2) % 3);
        let t = c[k] / &self.d[k];
        let u = c[i] - &t * &self.d[i];
        let v = c[j] - &t * &self.d[j];
        if self.swap {
            (v, u)
        } else {
            (u, v)
        }
    }

    /// Position along the direction; larger is nearer the viewer.
    fn depth(&self, p: &Point3) -> Q {
        [&p.x, &p.y, &p.z][self.axis] / &self.d[self.axis]
    }
}

fn cross2(a: &P2, b: &P2) -> Q {
    &a.0 * &b.1 - &a.1 * &b.0
}

fn sub2(a: &P2, b: &P2) -> P2 {
    (&a.0 - &b.0, &a.1 - &b.1)
}

fn orient(a: &P2, b: &P2, c: &P2) -> i8 {
    sign(&cross2(&sub2(b, a), &sub2(c, a)))
}

fn on_closed_segment(p: &P2, a: &P2, b: &P2) -> bool {
    orient(a, b, p) == 0
        && p.0 >= a.0.clone().min(b.0.clone())
        && p.0 <= a.0.clone().max(b.0.clone())
        && p.1 >= a.1.clone().min(b.1.clone())
        && p.1 <= a.1.clone().max(b.1.clone())
}

struct ProjectedCrossing {
    /// (edge position in the global edge list, parameter along that edge)
    under: (usize, Q),
    over: (usize, Q),
    sign: i8,
}

struct Projected {
    crossings: Vec<ProjectedCrossing>,
}

fn project_checked(components: &[Cycle], direction: &Point3) -> Result<Projected, ProjectionError> {
    project_chains(components, true, direction)
}

/// Signs of the crossings seen along `direction` for open polygonal chains,
/// after the same genericity checks as for closed polygons.
pub fn open_crossing_signs(chains: &[Vec<Point3>], direction: &Point3) -> Result<Vec<i8>, ProjectionError> {
    Ok(project_chains(chains, false, direction)?.crossings.iter().map(|c| c.sign).collect())
}

fn project_chains(components: &[Vec<Point3>], closed: bool, direction: &Point3) -> Result<Projected, ProjectionError> {
    let proj = Projector::new(direction).ok_or(ProjectionError::NotGeneric(GenericityCheck::NonzeroDirection))?;
    let es = edges_of(components, closed);
    let images: Vec<Vec<P2>> = components.iter().map(|c| c.iter().map(|p| proj.image(p)).collect()).collect();
    let seg = |e: &EdgeRec<'_>| -> (P2, P2) {
        let cyc = &images[e.component];
        (cyc[e.index].clone(), cyc[(e.index + 1) % e.len].clone())
    };
    for e in &es {
        let (a, b) = seg(e);
        if a == b {
            return Err(ProjectionError::NotGeneric(GenericityCheck::NoEdgeAlongDirection));
        }
    }
    let flat: Vec<(usize, usize, &P2)> =
        images.iter().enumerate().flat_map(|(ci, c)| c.iter().enumerate().map(move |(vi, p)| (ci, vi, p))).collect();
    for i in 0..flat.len() {
        for j in i + 1..flat.len() {
            if flat[i].2 == flat[j].2 {
                return Err(ProjectionError::NotGeneric(GenericityCheck::DistinctVertexImages));
            }
        }
    }
    for (ci, vi, p) in &flat {
        for e in &es {
            let incident = e.component == *ci && (e.index == *vi || (e.index + 1) % e.len == *vi);
            if incident {
                continue;
            }
            let (a, b) = seg(e);
            if on_closed_segment(p, &a, &b) {
                return Err(ProjectionError::NotGeneric(GenericityCheck::NoVertexOnEdgeImage));
            }
        }
    }
    let mut crossings = Vec::new();
    let mut points: Vec<P2> = Vec::new();
    for i in 0..es.len() {
        for j in i + 1..es.len() {
            let (e, f) = (&es[i], &es[j]);
            let (a, b) = seg(e);
            let (c, d) = seg(f);
            if e.adjacent(f) {
                if orient(&a, &b, &c) == 0 && orient(&a, &b, &d) == 0 {
                    return Err(ProjectionError::NotGeneric(GenericityCheck::NoFoldedCorner));
                }
                continue;
            }
            let (o1, o2) = (orient(&a, &b, &c), orient(&a, &b, &d));
            let (o3, o4) = (orient(&c, &d, &a), orient(&c, &d, &b));
            if o1 * o2 >= 0 || o3 * o4 >= 0 {
                continue;
            }
            let r = sub2(&b, &a);
            let s = sub2(&d, &c);
            let denom = cross2(&r, &s);
            let ca = sub2(&c, &a);
            let t = cross2(&ca, &s) / &denom;
            let u = cross2(&ca, &r) / &denom;
            let point = (&a.0 + &t * &r.0, &a.1 + &t * &r.1);
            if points.contains(&point) {
                return Err(ProjectionError::NotGeneric(GenericityCheck::DistinctCrossingPoints));
            }
            points.push(point);
            let de = proj.depth(&e.a.lerp(e.b, &t));
            let df = proj.depth(&f.a.lerp(f.b, &u));
            if de == df {
                return Err(ProjectionError::NotGeneric(GenericityCheck::SeparatedDepths));
            }
            let ((over, o_dir), (under, u_dir)) =
                if de > df { (((i, t), r), ((j, u), s)) } else { (((j, u), s), ((i, t), r)) };
            let crossing_sign = sign(&cross2(&o_dir, &u_dir));
            crossings.push(ProjectedCrossing { under, over, sign: crossing_sign });
        }
    }
    Ok(Projected { crossings })
}

/// Counts the crossings of a projection after certifying genericity.
pub fn certify(components: &[Cycle], direction: &Point3) -> Result<(ProjectionDirection, usize), ProjectionError> {
    let p = project_checked(components, direction)?;
    Ok((
        ProjectionDirection { direction: direction.clone(), certificate: GenericityCheck::ALL.to_vec() },
        p.crossings.len(),
    ))
}

/// Candidate directions `(a, b, c)` with `c > 0`, by growing max-norm shell,
/// each shell shuffled deterministically by `seed`.
fn candidate_directions(seed: u64, limit: usize) -> Vec<Point3> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut k = 1i64;
    while out.len() < limit && k <= 64 {
        let mut shell = Vec::new();
        for a in -k..=k {
            for b in -k..=k {
                for c in 1..=k {
                    if a.abs().max(b.abs()).max(c) == k {
                        shell.push(Point3::from_ints(a, b, c));
                    }
                }
            }
        }
        shell.shuffle(&mut rng);
        out.extend(shell);
        k += 1;
    }
    out.truncate(limit);
    out
}

/// Number of leading candidates compared by crossing count.
pub const PREFERENCE_WINDOW: usize = 64;
/// Candidates examined before giving up.
pub const CANDIDATE_BUDGET: usize = 8192;

/// Deterministic generic direction, preferring few projected crossings among
/// the first [`PREFERENCE_WINDOW`] candidates.
pub fn generic_direction(components: &[Cycle], seed: u64) -> Result<ProjectionDirection, ProjectionError> {
    let candidates = candidate_directions(seed, CANDIDATE_BUDGET);
    let mut best: Option<(usize, ProjectionDirection)> = None;
    for (i, d) in candidates.iter().enumerate() {
        if i >= PREFERENCE_WINDOW && best.is_some() {
            break;
        }
        if let Ok((pd, count)) = certify(components, d) {
            if best.as_ref().is_none_or(|(c, _)| count < *c) {
                best = Some((count, pd));
            }
        }
    }
    best.map(|(_, d)| d).ok_or(ProjectionError::GenericityExhausted(CANDIDATE_BUDGET))
}

/// Oriented diagram of the projection; components are oriented by vertex order.
pub fn project(components: &[Cycle], direction: &ProjectionDirection) -> Result<Diagram, ProjectionError> {
    let p = project_checked(components, &direction.direction)?;
    let es = edges(components);
    // passages per edge: (parameter, crossing id, over)
    let mut per_edge: Vec<Vec<(Q, usize, bool)>> = vec![Vec::new(); es.len()];
    for (ci, c) in p.crossings.iter().enumerate() {
        per_edge[c.under.0].push((c.under.1.clone(), ci, false));
        per_edge[c.over.0].push((c.over.1.clone(), ci, true));
    }
    let mut walks: Vec<Vec<Passage>> = vec![Vec::new(); components.len()];
    for (ei, list) in per_edge.iter_mut().enumerate() {
        list.sort_by(|x, y| x.0.cmp(&y.0));
        let comp = es[ei].component;
        walks[comp].extend(list.iter().map(|(_, c, over)| Passage { crossing: *c, over: *over }));
    }
    let signs = p.crossings.iter().map(|c| c.sign).collect();
    Ok(Diagram::from_walks(signs, walks).expect("each projected crossing has one over and one under passage"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::qf;

    fn p(x: i64, y: i64, z: i64) -> Point3 {
        Point3::from_ints(x, y, z)
    }

    fn stick(a: Point3, b: Point3) -> Stick {
        Stick::new(a, b).unwrap()
    }

    #[test]
    fn segment_relation_examples() {
        assert_eq!(
            segments_intersect(&stick(p(0, 0, 0), p(1, 0, 0)), &stick(p(0, 0, 1), p(1, 0, 1))),
            SegmentRelation::Disjoint
        );
        assert_eq!(
            segments_intersect(&stick(p(0, 0, 0), p(1, 1, 0)), &stick(p(1, 0, 0), p(0, 1, 0))),
            SegmentRelation::Cross
        );
        assert_eq!(
            segments_intersect(&stick(p(0, 0, 0), p(2, 0, 0)), &stick(p(1, 0, 0), p(3, 0, 0))),
            SegmentRelation::Overlap
        );
        assert_eq!(
            segments_intersect(&stick(p(0, 0, 0), p(2, 0, 0)), &stick(p(2, 0, 0), p(3, 0, 0))),
            SegmentRelation::Touch
        );
        assert_eq!(
            segments_intersect(&stick(p(0, 0, 0), p(2, 0, 0)), &stick(p(1, 0, 0), p(1, 5, 0))),
            SegmentRelation::Touch
        );
        // skew lines
        assert_eq!(
            segments_intersect(&stick(p(0, 0, 0), p(1, 1, 0)), &stick(p(1, 0, 1), p(0, 1, 1))),
            SegmentRelation::Disjoint
        );
    }

    fn square() -> Cycle {
        vec![p(0, 0, 0), p(1, 0, 0), p(1, 1, 0), p(0, 1, 0)]
    }

    #[test]
    fn square_is_embedded() {
        let r = check_embedded(&[square()]);
        assert!(r.embedded, "{:?}", r.violations);
    }

    #[test]
    fn shared_vertex_is_a_violation() {
        let other = vec![p(0, 0, 0), p(-1, 0, 5), p(-1, -1, 5)];
        let r = check_embedded(&[square(), other]);
        assert!(!r.embedded);
        assert!(r.violations.iter().any(|v| v.kind == ViolationKind::DuplicateVertex));
        let touching = vec![p(0, 0, 0).lerp(&p(1, 0, 0), &qf(1, 2)), p(0, 0, 5), p(1, 1, 5)];
        let r = check_embedded(&[square(), touching]);
        assert!(r.violations.iter().any(|v| v.kind == ViolationKind::Touch));
    }

    #[test]
    fn collinear_consecutive_edges_are_reported() {
        let c = vec![p(0, 0, 0), p(1, 0, 0), p(2, 0, 0), p(1, 1, 0)];
        let r = check_embedded(&[c]);
        assert!(r.violations.iter().any(|v| v.kind == ViolationKind::CollinearConsecutive));
    }

    #[test]
    fn planar_square_projects_without_crossings() {
        let d = generic_direction(&[square()], 0).unwrap();
        assert_ne!(d.direction, p(0, 0, 1).cross(&p(0, 0, 0)));
        let diagram = project(&[square()], &d).unwrap();
        assert_eq!(diagram.crossing_count(), 0);
        assert_eq!(diagram.component_count(), 1);
    }

    #[test]
    fn top_view_rejects_stacked_vertices() {
        let c = vec![p(0, 0, 0), p(4, 0, 0), p(0, 0, 3)];
        let err = certify(&[c], &p(0, 0, 1)).unwrap_err();
        assert_eq!(err, ProjectionError::NotGeneric(GenericityCheck::NoEdgeAlongDirection));
        let c = vec![p(0, 0, 0), p(4, 0, 0), p(2, 3, 0)];
        let d = vec![p(0, 0, 5), p(1, -3, 5), p(-2, 2, 5)];
        let err = certify(&[c, d], &p(0, 0, 1)).unwrap_err();
        assert_eq!(err, ProjectionError::NotGeneric(GenericityCheck::DistinctVertexImages));
    }
}
