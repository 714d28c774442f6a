//! Conway notation for 2-bridge knots and links: parsing, normalization,
//! continued fractions, Schubert equivalence and enumeration.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConwayError {
    #[error("malformed notation: `{0}` is not a positive integer")]
    MalformedNotation(String),
    #[error("invalid notation: {0}")]
    InvalidNotation(String),
    #[error("invalid range [{min}, {max}]: need 6 <= min <= max")]
    InvalidRange { min: u32, max: u32 },
    #[error("crossing number {0} below theorem range (need at least 6)")]
    OutOfTheoremRange(u32),
}

/// Odd-length sequence `(a_1, ..., a_m)` of positive twist counts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConwayNotation(Vec<u32>);

impl ConwayNotation {
    pub fn new(entries: Vec<u32>) -> Result<Self, ConwayError> {
        if entries.is_empty() {
            return Err(ConwayError::InvalidNotation("empty notation".into()));
        }
        if entries.len().is_multiple_of(2) {
            return Err(ConwayError::InvalidNotation(format!("even length {} (odd length required)", entries.len())));
        }
        if let Some(bad) = entries.iter().find(|&&a| a == 0) {
            return Err(ConwayError::InvalidNotation(format!("entry {bad} is not positive")));
        }
        Ok(ConwayNotation(entries))
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn crossing_number(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn reversed(&self) -> ConwayNotation {
        ConwayNotation(self.0.iter().rev().copied().collect())
    }

    /// Evaluates `[a_m, ..., a_1] = a_m + 1/(a_{m-1} + ... + 1/a_1)` in lowest terms.
    pub fn fraction(&self) -> TwoBridgeFraction {
        // numerator/denominator of the tail, built from a_1 upwards
        let (mut p, mut q) = (self.0[0] as u64, 1u64);
        for &a in &self.0[1..] {
            (p, q) = (a as u64 * p + q, p);
        }
        let g = p.gcd(&q);
        let (p, q) = (p / g, q / g);
        // a single-entry (1) evaluates to 1/1; keep the residue convention q mod p
        TwoBridgeFraction { p, q: if p > 1 { q % p } else { q } }
    }

    /// Rewrites so that `a_m >= 2`, recording which rule applied.
    pub fn normalize(&self) -> NormalizationTrace {
        let a = &self.0;
        let m = a.len();
        let (output, action) = if a[m - 1] >= 2 || m == 1 {
            (self.clone(), NormalizationAction::Identity)
        } else if a[0] >= 2 {
            (self.reversed(), NormalizationAction::Reversal)
        } else if m == 3 {
            // (1, q, 1) is the closed (q+2)-twist
            (ConwayNotation(vec![a[1] + 2]), NormalizationAction::Mirror)
        } else {
            let mut inner = a[1..m - 1].to_vec();
            inner[0] += 1;
            let last = inner.len() - 1;
            inner[last] += 1;
            (ConwayNotation(inner), NormalizationAction::Mirror)
        };
        NormalizationTrace { input: self.clone(), output, action }
    }

    /// Calvo's lower bound and the `c + 2` upper bound on stick number.
    pub fn stick_bounds(&self) -> Result<(u32, u32), ConwayError> {
        let c = self.crossing_number();
        if c < 6 {
            return Err(ConwayError::OutOfTheoremRange(c));
        }
        Ok((calvo_lower_bound(c), c + 2))
    }
}

/// `ceil((7 + sqrt(8c + 1)) / 2)`, computed in integers.
pub fn calvo_lower_bound(c: u32) -> u32 {
    ceil_half_sum_sqrt(7, 8 * c as u64 + 1)
}

/// Negami's lower bound `ceil((5 + sqrt(25 + 8(c-2))) / 2)`.
pub fn negami_lower_bound(c: u32) -> u32 {
    ceil_half_sum_sqrt(5, 25 + 8 * (c as u64).saturating_sub(2))
}

/// `ceil((k + sqrt(disc)) / 2)`.
fn ceil_half_sum_sqrt(k: u64, disc: u64) -> u32 {
    let s = disc.isqrt();
    if s * s == disc {
        (k + s).div_ceil(2) as u32
    } else {
        // sqrt(disc) lies strictly inside (s, s + 1)
        ((k + s) / 2 + 1) as u32
    }
}

impl fmt::Display for ConwayNotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for ConwayNotation {
    type Err = ConwayError;

    /// Accepts comma- and/or whitespace-separated entries, optionally parenthesized.
    fn from_str(text: &str) -> Result<Self, ConwayError> {
        let t = text.trim();
        let t = t.strip_prefix('(').map(|r| r.strip_suffix(')').unwrap_or(r)).unwrap_or(t);
        let mut entries = Vec::new();
        for token in t.split(|c: char| c == ',' || c.is_whitespace()).filter(|s| !s.is_empty()) {
            let value: i64 = token.parse().map_err(|_| ConwayError::MalformedNotation(token.to_string()))?;
            if value < 1 {
                return Err(ConwayError::InvalidNotation(format!("entry {value} is not positive")));
            }
            entries.push(u32::try_from(value).map_err(|_| ConwayError::MalformedNotation(token.to_string()))?);
        }
        ConwayNotation::new(entries)
    }
}

pub fn parse(text: &str) -> Result<ConwayNotation, ConwayError> {
    text.parse()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NormalizationAction {
    Identity,
    Reversal,
    Mirror,
}

impl NormalizationAction {
    pub fn as_str(self) -> &'static str {
        match self {
            NormalizationAction::Identity => "identity",
            NormalizationAction::Reversal => "reversal",
            NormalizationAction::Mirror => "mirror",
        }
    }
}

impl fmt::Display for NormalizationAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizationTrace {
    pub input: ConwayNotation,
    pub output: ConwayNotation,
    pub action: NormalizationAction,
}

/// Schubert's classifying fraction `p/q`, with `0 < q < p` once `p >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoBridgeFraction {
    pub p: u64,
    pub q: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Equivalence {
    Identical,
    Mirror,
    Distinct,
}

impl Equivalence {
    pub fn as_str(self) -> &'static str {
        match self {
            Equivalence::Identical => "identical",
            Equivalence::Mirror => "mirror",
            Equivalence::Distinct => "distinct",
        }
    }
}

impl TwoBridgeFraction {
    pub fn component_count(&self) -> u32 {
        if self.p.is_multiple_of(2) {
            2
        } else {
            1
        }
    }

    /// `q^{-1} mod p`.
    pub fn inverse_q(&self) -> u64 {
        if self.p <= 1 {
            return self.q;
        }
        let egcd = (self.q as i64).extended_gcd(&(self.p as i64));
        egcd.x.rem_euclid(self.p as i64) as u64
    }

    pub fn equivalent(&self, other: &TwoBridgeFraction) -> Equivalence {
        if self.p != other.p {
            return Equivalence::Distinct;
        }
        let p = self.p;
        if p <= 2 {
            return Equivalence::Identical;
        }
        let q2 = other.q % p;
        let (q1, inv) = (self.q % p, self.inverse_q());
        if q2 == q1 || q2 == inv {
            Equivalence::Identical
        } else if q2 == (p - q1) % p || q2 == (p - inv) % p {
            Equivalence::Mirror
        } else {
            Equivalence::Distinct
        }
    }

    /// Representative shared by a type and its mirror.
    pub fn dedup_key(&self) -> (u64, u64) {
        if self.p <= 2 {
            return (self.p, self.q);
        }
        let inv = self.inverse_q();
        let p = self.p;
        let q = [self.q, inv, p - self.q, p - inv].into_iter().min().unwrap();
        (p, q)
    }
}

impl fmt::Display for TwoBridgeFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// All odd-length compositions of `total` (positive parts), in lexicographic order.
pub fn odd_compositions(total: u32) -> Vec<Vec<u32>> {
    fn rec(remaining: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            if prefix.len() % 2 == 1 {
                out.push(prefix.clone());
            }
            return;
        }
        for a in 1..=remaining {
            prefix.push(a);
            rec(remaining - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, &mut Vec::new(), &mut out);
    out
}

/// One normalized notation per 2-bridge type (up to mirror image) with
/// crossing number in `[c_min, c_max]`, ordered by crossing number then lexicographically.
pub fn enumerate(c_min: u32, c_max: u32) -> Result<Vec<ConwayNotation>, ConwayError> {
    if c_min < 6 || c_min > c_max {
        return Err(ConwayError::InvalidRange { min: c_min, max: c_max });
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for c in c_min..=c_max {
        for entries in odd_compositions(c) {
            if *entries.last().unwrap() < 2 {
                continue;
            }
            let n = ConwayNotation(entries);
            if seen.insert(n.fraction().dedup_key()) {
                out.push(n);
            }
        }
    }
    Ok(out)
}
