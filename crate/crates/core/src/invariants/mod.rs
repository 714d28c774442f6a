//! Canonical 2-bridge diagrams, bracket / Jones / determinant, and knot-type comparison.

pub mod alexander;
pub mod bracket;
pub mod diagram;
pub mod verify;

use std::collections::HashMap;
use std::fmt;

pub use bracket::{bracket, bracket_state_sum, jones_from_bracket, BudgetExceeded};
pub use diagram::{Crossing, Diagram, DiagramError, Passage};
pub use verify::{verify, verify_with_rivals, TieBreak, VerificationReport};

use crate::conway::ConwayNotation;
use crate::polynomial::LaurentPolynomial;

/// Handedness applied to the odd-position twist regions of the canonical
/// 4-plat; even positions get the opposite sign. Fixed so that the (6)
/// coordinate fixture is identical, not mirror, to `canonical_diagram((6))`.
pub const CANONICAL_CHIRALITY: i8 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TypeVerdict {
    Identical,
    Mirror,
    Distinct,
    Inconclusive,
}

impl TypeVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            TypeVerdict::Identical => "identical",
            TypeVerdict::Mirror => "mirror",
            TypeVerdict::Distinct => "distinct",
            TypeVerdict::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for TypeVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CompareMode {
    Strict,
    MirrorTolerant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Port {
    /// corner 0 = NW, 1 = NE, 2 = SW, 3 = SE
    Slot(usize, u8),
    Cap(usize, u8),
}

/// Braid-like twist sequence on four strands closed by caps joining
/// positions (0,1) and (2,3) at top and bottom.
struct Plat {
    /// (left position, sign) per crossing, top to bottom
    generators: Vec<(usize, i8)>,
}

impl Plat {
    fn diagram(&self) -> Diagram {
        const CORNER: [(i64, i64); 4] = [(-1, 1), (1, 1), (-1, -1), (1, -1)];
        let mut links: HashMap<Port, Port> = HashMap::new();
        let mut connect = |a: Port, b: Port| {
            links.insert(a, b);
            links.insert(b, a);
        };
        let mut last: [Port; 4] = [Port::Cap(0, 0), Port::Cap(0, 1), Port::Cap(1, 0), Port::Cap(1, 1)];
        for (k, &(i, _)) in self.generators.iter().enumerate() {
            connect(last[i], Port::Slot(k, 0));
            connect(last[i + 1], Port::Slot(k, 1));
            last[i] = Port::Slot(k, 2);
            last[i + 1] = Port::Slot(k, 3);
        }
        connect(last[0], Port::Cap(2, 0));
        connect(last[1], Port::Cap(2, 1));
        connect(last[2], Port::Cap(3, 0));
        connect(last[3], Port::Cap(3, 1));

        let n = self.generators.len();
        // direction of the over and under strand through each crossing
        let mut dirs: Vec<[(i64, i64); 2]> = vec![[(0, 0); 2]; n];
        let mut entered = vec![[false; 4]; n];
        let mut walks = Vec::new();
        for k0 in 0..n {
            for c0 in 0..4u8 {
                if entered[k0][c0 as usize] || entered[k0][(3 - c0) as usize] {
                    continue;
                }
                let mut walk = Vec::new();
                let (mut k, mut c) = (k0, c0);
                loop {
                    entered[k][c as usize] = true;
                    let exit = 3 - c;
                    // a positive generator puts the NW-SE strand over
                    let nw_se = c == 0 || c == 3;
                    let over = nw_se == (self.generators[k].1 > 0);
                    walk.push(Passage { crossing: k, over });
                    let (from, to) = (CORNER[c as usize], CORNER[exit as usize]);
                    dirs[k][usize::from(over)] = (to.0 - from.0, to.1 - from.1);
                    let mut next = links[&Port::Slot(k, exit)];
                    while let Port::Cap(id, side) = next {
                        next = links[&Port::Cap(id, 1 - side)];
                    }
                    match next {
                        Port::Slot(nk, nc) => (k, c) = (nk, nc),
                        Port::Cap(..) => unreachable!("caps join two strand ends"),
                    }
                    if k == k0 && c == c0 {
                        break;
                    }
                }
                walks.push(walk);
            }
        }
        let signs = dirs.iter().map(|[u, o]| if o.0 * u.1 - o.1 * u.0 > 0 { 1 } else { -1 }).collect();
        Diagram::from_walks(signs, walks).expect("plat tracing visits each crossing twice")
    }
}

/// Alternating 4-plat diagram of `(a_1, ..., a_m)`: twist regions of `a_1, ..., a_m`
/// crossings on alternating strand pairs with alternating handedness.
pub fn canonical_diagram(n: &ConwayNotation) -> Diagram {
    Plat { generators: plat_word(n) }.diagram()
}

/// Crossings of the canonical 4-plat from top to bottom as `(left position, sign)`.
/// Positions run 0..=3; caps join (0,1) and (2,3) above and below the word, and a
/// positive sign puts the strand running from the upper-left to the lower-right over.
pub fn plat_word(n: &ConwayNotation) -> Vec<(usize, i8)> {
    let mut generators = Vec::new();
    for (i, &a) in n.entries().iter().enumerate() {
        let (position, sign) = if i % 2 == 0 { (1, CANONICAL_CHIRALITY) } else { (0, -CANONICAL_CHIRALITY) };
        generators.extend(std::iter::repeat_n((position, sign), a as usize));
    }
    generators
}

pub fn jones(d: &Diagram) -> Result<LaurentPolynomial, BudgetExceeded> {
    Ok(jones_from_bracket(&bracket(d)?, d.writhe()))
}

/// `|V(-1)|`, taking `t^(1/2) = i`.
pub fn determinant_of_jones(v: &LaurentPolynomial) -> u64 {
    let (re, im) = v.eval_at_i();
    let norm = (re * re + im * im) as u128;
    norm.isqrt() as u64
}

pub fn determinant(d: &Diagram) -> Result<u64, BudgetExceeded> {
    Ok(determinant_of_jones(&jones(d)?))
}

/// Jones polynomials over every relative orientation of the components
/// (the first crossing-carrying component keeps its orientation).
pub fn jones_all_orientations(d: &Diagram) -> Result<Vec<LaurentPolynomial>, BudgetExceeded> {
    let b = bracket(d)?;
    let k = d.arc_components().len();
    let mut out = Vec::new();
    for mask in 0..(1u32 << k.saturating_sub(1)) {
        let mut dd = d.clone();
        for c in 1..k {
            if mask >> (c - 1) & 1 == 1 {
                dd = dd.with_component_reversed(c);
            }
        }
        let v = jones_from_bracket(&b, dd.writhe());
        if !out.contains(&v) {
            out.push(v);
        }
    }
    Ok(out)
}

/// Compares two diagrams as unoriented links through their Jones polynomials.
pub fn same_knot_type(d1: &Diagram, d2: &Diagram, mode: CompareMode) -> Result<TypeVerdict, BudgetExceeded> {
    if d1.component_count() != d2.component_count() {
        return Ok(TypeVerdict::Distinct);
    }
    let target = jones(d2)?;
    let candidates = jones_all_orientations(d1)?;
    if candidates.contains(&target) {
        return Ok(TypeVerdict::Identical);
    }
    if mode == CompareMode::MirrorTolerant && candidates.contains(&target.invert_variable()) {
        return Ok(TypeVerdict::Mirror);
    }
    Ok(TypeVerdict::Distinct)
}

/// Pairs of indices whose notations have inequivalent fractions but share a
/// Jones polynomial for some orientation, up to mirror image. Verdicts for
/// such notations cannot be trusted to separate the two types.
pub fn jones_collisions(notations: &[ConwayNotation]) -> Result<Vec<(usize, usize)>, BudgetExceeded> {
    let mut seen: HashMap<LaurentPolynomial, Vec<usize>> = HashMap::new();
    let mut pairs = Vec::new();
    for (i, n) in notations.iter().enumerate() {
        let mut values = jones_all_orientations(&canonical_diagram(n))?;
        let mirrored: Vec<_> = values.iter().map(LaurentPolynomial::invert_variable).collect();
        values.extend(mirrored);
        let mut partners: Vec<usize> = Vec::new();
        for v in values {
            let bucket = seen.entry(v).or_default();
            partners.extend(bucket.iter().copied());
            if !bucket.contains(&i) {
                bucket.push(i);
            }
        }
        partners.sort_unstable();
        partners.dedup();
        for j in partners {
            if j != i && notations[j].fraction().equivalent(&n.fraction()) == crate::conway::Equivalence::Distinct {
                pairs.push((j, i));
            }
        }
    }
    Ok(pairs)
}

/// Largest crossing number for which [`jones_rivals`] scans the whole table.
pub const RIVAL_SCAN_MAX: u32 = 12;

/// Notations of the same crossing number whose fraction differs from `n`'s
/// but whose canonical diagram shares a Jones polynomial with `n`'s, up to
/// orientation and mirror image. Empty above [`RIVAL_SCAN_MAX`] and below 6.
pub fn jones_rivals(n: &ConwayNotation) -> Result<Vec<ConwayNotation>, BudgetExceeded> {
    let c = n.crossing_number();
    if !(6..=RIVAL_SCAN_MAX).contains(&c) {
        return Ok(Vec::new());
    }
    let mut own = jones_all_orientations(&canonical_diagram(n))?;
    let mirrored: Vec<_> = own.iter().map(LaurentPolynomial::invert_variable).collect();
    own.extend(mirrored);
    let mut rivals = Vec::new();
    for other in crate::conway::enumerate(c, c).expect("crossing number in enumeration range") {
        if other.fraction().equivalent(&n.fraction()) != crate::conway::Equivalence::Distinct {
            continue;
        }
        if jones_all_orientations(&canonical_diagram(&other))?.iter().any(|v| own.contains(v)) {
            rivals.push(other);
        }
    }
    Ok(rivals)
}
