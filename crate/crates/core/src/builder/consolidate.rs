//! Stick consolidation by elementary triangle moves.
//!
//! A polygon is simplified by deleting a vertex whose triangle with its two
//! neighbours is not met by any other edge, or by sliding a vertex across a
//! triangle that no other edge meets. Both moves are isotopies, so the link type
//! of the starting polygon is preserved throughout. The search runs in floating
//! point with a clearance margin; callers snap the result to exact rationals and
//! re-verify it.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type V3 = [f64; 3];

fn sub(a: V3, b: V3) -> V3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn add(a: V3, b: V3) -> V3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn mul(a: V3, s: f64) -> V3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

fn dot(a: V3, b: V3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: V3, b: V3) -> V3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn norm(a: V3) -> f64 {
    dot(a, a).sqrt()
}

fn closest_on_segment(p: V3, a: V3, b: V3) -> V3 {
    let ab = sub(b, a);
    let len2 = dot(ab, ab);
    if len2 == 0.0 {
        return a;
    }
    let t = (dot(sub(p, a), ab) / len2).clamp(0.0, 1.0);
    add(a, mul(ab, t))
}

fn point_triangle_distance(p: V3, a: V3, b: V3, c: V3) -> f64 {
    let n = cross(sub(b, a), sub(c, a));
    let nn = norm(n);
    let mut best = f64::INFINITY;
    if nn > 1e-12 {
        let d = dot(sub(p, a), n) / nn;
        let foot = sub(p, mul(n, d / nn));
        let inside = [(a, b), (b, c), (c, a)].iter().all(|&(u, v)| dot(cross(sub(v, u), sub(foot, u)), n) >= 0.0);
        if inside {
            best = d.abs();
        }
    }
    for (u, v) in [(a, b), (b, c), (c, a)] {
        best = best.min(norm(sub(p, closest_on_segment(p, u, v))));
    }
    best
}

fn segment_segment_distance(p1: V3, q1: V3, p2: V3, q2: V3) -> f64 {
    let d1 = sub(q1, p1);
    let d2 = sub(q2, p2);
    let r = sub(p1, p2);
    let (a, e, f) = (dot(d1, d1), dot(d2, d2), dot(d2, r));
    let (s, t);
    if a <= 1e-18 && e <= 1e-18 {
        return norm(r);
    }
    if a <= 1e-18 {
        s = 0.0;
        t = (f / e).clamp(0.0, 1.0);
    } else {
        let c = dot(d1, r);
        if e <= 1e-18 {
            t = 0.0;
            s = (-c / a).clamp(0.0, 1.0);
        } else {
            let b = dot(d1, d2);
            let denom = a * e - b * b;
            let mut s0 = if denom > 1e-18 { ((b * f - c * e) / denom).clamp(0.0, 1.0) } else { 0.0 };
            let mut t0 = (b * s0 + f) / e;
            if t0 < 0.0 {
                t0 = 0.0;
                s0 = (-c / a).clamp(0.0, 1.0);
            } else if t0 > 1.0 {
                t0 = 1.0;
                s0 = ((b - c) / a).clamp(0.0, 1.0);
            }
            s = s0;
            t = t0;
        }
    }
    norm(sub(add(p1, mul(d1, s)), add(p2, mul(d2, t))))
}

/// Distance between a closed segment and a closed triangle.
fn segment_triangle_distance(p: V3, q: V3, a: V3, b: V3, c: V3) -> f64 {
    let n = cross(sub(b, a), sub(c, a));
    if norm(n) > 1e-12 {
        let (dp, dq) = (dot(sub(p, a), n), dot(sub(q, a), n));
        if (dp > 0.0) != (dq > 0.0) && dp != dq {
            let x = add(p, mul(sub(q, p), dp / (dp - dq)));
            if [(a, b), (b, c), (c, a)].iter().all(|&(u, v)| dot(cross(sub(v, u), sub(x, u)), n) >= 0.0) {
                return 0.0;
            }
        }
    }
    let mut best = point_triangle_distance(p, a, b, c).min(point_triangle_distance(q, a, b, c));
    for (u, v) in [(a, b), (b, c), (c, a)] {
        best = best.min(segment_segment_distance(p, q, u, v));
    }
    best
}

/// Vertex identity: (component, index).
type Id = (usize, usize);

#[derive(Debug, Clone)]
pub struct Consolidator {
    pub components: Vec<Vec<V3>>,
    /// Minimum clearance kept between an edge and any swept triangle.
    pub clearance: f64,
}

impl Consolidator {
    pub fn new(components: Vec<Vec<V3>>, clearance: f64) -> Self {
        Consolidator { components, clearance }
    }

    pub fn stick_count(&self) -> usize {
        self.components.iter().map(Vec::len).sum()
    }

    fn neighbours(&self, (c, i): Id) -> (Id, Id) {
        let n = self.components[c].len();
        ((c, (i + n - 1) % n), (c, (i + 1) % n))
    }

    fn at(&self, (c, i): Id) -> V3 {
        self.components[c][i]
    }

    /// True when no edge other than `skip` meets the triangle, apart from
    /// meeting it at a shared corner transversally.
    fn triangle_clear(&self, tri: [(Option<Id>, V3); 3], skip: &[(Id, Id)]) -> bool {
        let [ta, tb, tc] = tri;
        let n = cross(sub(tb.1, ta.1), sub(tc.1, ta.1));
        let nn = norm(n);
        for (c, comp) in self.components.iter().enumerate() {
            let len = comp.len();
            for i in 0..len {
                let (u, w) = ((c, i), (c, (i + 1) % len));
                if skip.iter().any(|&(x, y)| (x == u && y == w) || (x == w && y == u)) {
                    continue;
                }
                let (pu, pw) = (comp[i], comp[(i + 1) % len]);
                let shared: Vec<(Id, V3)> = tri
                    .iter()
                    .filter_map(|&(id, _)| id)
                    .filter(|&id| id == u || id == w)
                    .map(|id| (id, self.at(id)))
                    .collect();
                match shared.len() {
                    0 => {
                        if segment_triangle_distance(pu, pw, ta.1, tb.1, tc.1) < self.clearance {
                            return false;
                        }
                    }
                    1 => {
                        // a line through a corner leaves the triangle's plane at once unless nearly coplanar
                        if nn < 1e-12 {
                            continue;
                        }
                        let (sid, sp) = shared[0];
                        let other = if sid == u { pw } else { pu };
                        let d = sub(other, sp);
                        if (dot(d, n) / (nn * norm(d))).abs() < 1e-3 {
                            return false;
                        }
                    }
                    _ => return false,
                }
            }
        }
        true
    }

    /// Deletes vertex `v` if its neighbour triangle is clear.
    pub fn try_remove(&mut self, v: Id) -> bool {
        if self.components[v.0].len() <= 3 {
            return false;
        }
        let (a, b) = self.neighbours(v);
        let tri = [(Some(a), self.at(a)), (Some(v), self.at(v)), (Some(b), self.at(b))];
        if !self.triangle_clear(tri, &[(a, v), (v, b)]) {
            return false;
        }
        // the new edge must not be nearly collinear with its neighbours
        self.components[v.0].remove(v.1);
        if !self.honest() {
            let p = tri[1].1;
            self.components[v.0].insert(v.1, p);
            return false;
        }
        true
    }

    /// Moves vertex `v` to `to` if both swept triangles are clear.
    pub fn try_move(&mut self, v: Id, to: V3) -> bool {
        let (a, b) = self.neighbours(v);
        let from = self.at(v);
        if to == from {
            return false;
        }
        let skip = [(a, v), (v, b)];
        let t1 = [(Some(a), self.at(a)), (Some(v), from), (None, to)];
        let t2 = [(Some(b), self.at(b)), (Some(v), from), (None, to)];
        if !self.triangle_clear(t1, &skip) || !self.triangle_clear(t2, &skip) {
            return false;
        }
        self.components[v.0][v.1] = to;
        if !self.honest() {
            self.components[v.0][v.1] = from;
            return false;
        }
        true
    }

    /// No short edges and no nearly straight corners.
    fn honest(&self) -> bool {
        self.components.iter().all(|comp| {
            let n = comp.len();
            (0..n).all(|i| {
                let (p, c, q) = (comp[(i + n - 1) % n], comp[i], comp[(i + 1) % n]);
                let (u, w) = (sub(c, p), sub(q, c));
                let (lu, lw) = (norm(u), norm(w));
                lw > 4.0 * self.clearance && norm(cross(u, w)) > 1e-3 * lu * lw
            })
        })
    }

    fn all_ids(&self) -> Vec<Id> {
        self.components.iter().enumerate().flat_map(|(c, comp)| (0..comp.len()).map(move |i| (c, i))).collect()
    }

    /// Runs removal sweeps interleaved with vertex slides until `target`
    /// sticks remain or `budget` slide attempts are spent.
    pub fn reduce(&mut self, target: usize, budget: usize, rng: &mut ChaCha8Rng) -> bool {
        let mut spent = 0;
        while self.stick_count() > target {
            if self.removal_sweep(rng) {
                continue;
            }
            if spent >= budget {
                return false;
            }
            for _ in 0..64 {
                spent += 1;
                self.random_slide(rng);
            }
        }
        true
    }

    fn removal_sweep(&mut self, rng: &mut ChaCha8Rng) -> bool {
        let mut ids = self.all_ids();
        for i in (1..ids.len()).rev() {
            ids.swap(i, rng.gen_range(0..=i));
        }
        ids.into_iter().any(|v| self.try_remove(v))
    }

    fn random_slide(&mut self, rng: &mut ChaCha8Rng) {
        let ids = self.all_ids();
        let v = ids[rng.gen_range(0..ids.len())];
        let (a, b) = self.neighbours(v);
        let p = self.at(v);
        let to = if rng.gen_bool(0.5) {
            // toward the chord of the neighbours, which makes the corner removable
            let mid = mul(add(self.at(a), self.at(b)), 0.5);
            add(p, mul(sub(mid, p), rng.gen_range(0.1..0.9)))
        } else {
            let scale = 0.5 * norm(sub(self.at(a), self.at(b))).max(4.0 * self.clearance);
            let d = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
            add(p, mul(d, scale * rng.gen_range(0.05..1.0)))
        };
        self.try_move(v, to);
    }
}

/// Polygon tracing a braid word on four strands closed by caps on (0,1) and
/// (2,3) at both ends. Strands sit at `x = 2 * position`; crossing `k` occupies
/// `-2k-2 ≤ y ≤ -2k` with the over strand raised to `z = 1/2` at mid-level.
pub fn plat_polygon(word: &[(usize, i8)]) -> Vec<Vec<V3>> {
    let levels = word.len();
    let bottom = -2.0 * levels as f64;
    let mut used_top = [false; 4];
    let mut components = Vec::new();
    while let Some(start) = (0..4).find(|&p| !used_top[p]) {
        let mut pts: Vec<V3> = Vec::new();
        let mut p = start;
        loop {
            used_top[p] = true;
            pts.push([2.0 * p as f64, 0.0, 0.0]);
            for (k, &(i, s)) in word.iter().enumerate() {
                if p == i || p == i + 1 {
                    let over = (p == i) == (s > 0);
                    pts.push([2.0 * i as f64 + 1.0, -2.0 * k as f64 - 1.0, if over { 0.5 } else { -0.5 }]);
                    p = if p == i { i + 1 } else { i };
                }
                pts.push([2.0 * p as f64, -2.0 * k as f64 - 2.0, 0.0]);
            }
            p ^= 1;
            pts.push([2.0 * p as f64, bottom, 0.0]);
            for k in (0..levels).rev() {
                let (i, s) = word[k];
                if p == i || p == i + 1 {
                    let top = if p == i { i + 1 } else { i };
                    let over = (top == i) == (s > 0);
                    pts.push([2.0 * i as f64 + 1.0, -2.0 * k as f64 - 1.0, if over { 0.5 } else { -0.5 }]);
                    p = top;
                }
                pts.push([2.0 * p as f64, -2.0 * k as f64, 0.0]);
            }
            used_top[p] = true;
            p ^= 1;
            if p == start {
                break;
            }
        }
        components.push(strip_straight(pts));
    }
    components
}

/// Drops vertices lying on the segment between their neighbours.
fn strip_straight(pts: Vec<V3>) -> Vec<V3> {
    let mut pts = pts;
    loop {
        let n = pts.len();
        let idx = (0..n).find(|&i| {
            let (p, c, q) = (pts[(i + n - 1) % n], pts[i], pts[(i + 1) % n]);
            norm(cross(sub(c, p), sub(q, c))) < 1e-12 && dot(sub(c, p), sub(q, c)) > 0.0
        });
        match idx {
            Some(i) if n > 3 => {
                pts.remove(i);
            }
            _ => return pts,
        }
    }
}

/// Small random displacement of every vertex, used once to leave the planar grid.
pub fn jitter(components: &mut [Vec<V3>], amount: f64, rng: &mut ChaCha8Rng) {
    for comp in components.iter_mut() {
        for p in comp.iter_mut() {
            for x in p.iter_mut() {
                *x += rng.gen_range(-amount..amount);
            }
        }
    }
}
