//! Planar-diagram (PD) codes.
//!
//! A crossing `X(i, j, k, l)` lists its four arcs counterclockwise starting from
//! the incoming under-arc `i`; `k` is the outgoing under-arc. For a positive
//! crossing the over-strand leaves along `j`, for a negative one along `l`.

use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error("crossing {0} is not visited exactly once over and once under")]
    BadVisits(usize),
    #[error("crossing sign must be +1 or -1, got {0}")]
    BadSign(i8),
    #[error("malformed diagram text: {0}")]
    Malformed(String),
}

/// One traversal of a crossing by a component walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Passage {
    pub crossing: usize,
    pub over: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub pd: [u32; 4],
    pub sign: i8,
}

impl Crossing {
    pub fn under_in(&self) -> u32 {
        self.pd[0]
    }

    pub fn under_out(&self) -> u32 {
        self.pd[2]
    }

    pub fn over_in(&self) -> u32 {
        if self.sign > 0 {
            self.pd[3]
        } else {
            self.pd[1]
        }
    }

    pub fn over_out(&self) -> u32 {
        if self.sign > 0 {
            self.pd[1]
        } else {
            self.pd[3]
        }
    }
}

/// Oriented link diagram: PD crossings plus the component walks that generated them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    /// Arc labels of each component with at least one crossing, in walk order.
    components: Vec<Vec<u32>>,
    walks: Vec<Vec<Passage>>,
    free_loops: usize,
}

impl Diagram {
    /// Builds a diagram from per-component crossing passages.
    ///
    /// `signs[c]` is the sign of crossing `c` under the walk orientations. A walk
    /// with no passages is a crossing-free unknotted component.
    pub fn from_walks(signs: Vec<i8>, walks: Vec<Vec<Passage>>) -> Result<Diagram, DiagramError> {
        for &s in &signs {
            if s != 1 && s != -1 {
                return Err(DiagramError::BadSign(s));
            }
        }
        let n = signs.len();
        // (arc in, arc out) for under and over visits
        let mut under: Vec<Option<(u32, u32)>> = vec![None; n];
        let mut over: Vec<Option<(u32, u32)>> = vec![None; n];
        let mut components = Vec::new();
        let mut kept_walks = Vec::new();
        let mut free_loops = 0;
        let mut next_label = 0u32;
        for walk in walks {
            if walk.is_empty() {
                free_loops += 1;
                continue;
            }
            let k = walk.len() as u32;
            let base = next_label;
            next_label += k;
            components.push((base..base + k).collect());
            for (i, p) in walk.iter().enumerate() {
                let i = i as u32;
                let arcs = (base + i, base + (i + 1) % k);
                let slot = if p.over { &mut over } else { &mut under };
                let entry = slot.get_mut(p.crossing).ok_or(DiagramError::BadVisits(p.crossing))?;
                if entry.is_some() {
                    return Err(DiagramError::BadVisits(p.crossing));
                }
                *entry = Some(arcs);
            }
            kept_walks.push(walk);
        }
        let mut crossings = Vec::with_capacity(n);
        for c in 0..n {
            let ((ui, uo), (oi, oo)) = match (under[c], over[c]) {
                (Some(u), Some(o)) => (u, o),
                _ => return Err(DiagramError::BadVisits(c)),
            };
            let pd = if signs[c] > 0 { [ui, oo, uo, oi] } else { [ui, oi, uo, oo] };
            crossings.push(Crossing { pd, sign: signs[c] });
        }
        Ok(Diagram { crossings, components, walks: kept_walks, free_loops })
    }

    pub fn unlink(components: usize) -> Diagram {
        Diagram { crossings: Vec::new(), components: Vec::new(), walks: Vec::new(), free_loops: components }
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn component_count(&self) -> usize {
        self.components.len() + self.free_loops
    }

    /// Arc cycles of the components that carry crossings.
    pub fn arc_components(&self) -> &[Vec<u32>] {
        &self.components
    }

    pub fn walks(&self) -> &[Vec<Passage>] {
        &self.walks
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    pub fn arc_count(&self) -> usize {
        self.components.iter().map(Vec::len).sum()
    }

    fn component_of_arc(&self) -> BTreeMap<u32, usize> {
        let mut map = BTreeMap::new();
        for (ci, arcs) in self.components.iter().enumerate() {
            for &a in arcs {
                map.insert(a, ci);
            }
        }
        map
    }

    /// Linking number between two crossing-carrying components.
    pub fn linking_number(&self, a: usize, b: usize) -> i64 {
        let comp = self.component_of_arc();
        let twice: i64 = self
            .crossings
            .iter()
            .filter(|c| {
                let (x, y) = (comp[&c.under_in()], comp[&c.over_in()]);
                (x == a && y == b) || (x == b && y == a)
            })
            .map(|c| c.sign as i64)
            .sum();
        twice / 2
    }

    /// Same diagram with the walk of crossing-carrying component `index` reversed.
    pub fn with_component_reversed(&self, index: usize) -> Diagram {
        let comp = self.component_of_arc();
        let mut signs: Vec<i8> = self.crossings.iter().map(|c| c.sign).collect();
        for (i, c) in self.crossings.iter().enumerate() {
            let (x, y) = (comp[&c.under_in()], comp[&c.over_in()]);
            if (x == index) != (y == index) {
                signs[i] = -signs[i];
            }
        }
        let mut walks = self.walks.clone();
        walks[index].reverse();
        walks.extend(std::iter::repeat_n(Vec::new(), self.free_loops));
        Diagram::from_walks(signs, walks).expect("reversal preserves visit structure")
    }

    /// Mirror image: every over/under exchanged, every sign flipped.
    pub fn mirror(&self) -> Diagram {
        let signs = self.crossings.iter().map(|c| -c.sign).collect();
        let mut walks: Vec<Vec<Passage>> = self
            .walks
            .iter()
            .map(|w| w.iter().map(|p| Passage { crossing: p.crossing, over: !p.over }).collect())
            .collect();
        walks.extend(std::iter::repeat_n(Vec::new(), self.free_loops));
        Diagram::from_walks(signs, walks).expect("mirror preserves visit structure")
    }

    /// Over and under passages alternate along every component.
    pub fn is_alternating(&self) -> bool {
        self.walks.iter().all(|w| w.len() % 2 == 0 && (0..w.len()).all(|i| w[i].over != w[(i + 1) % w.len()].over))
    }

    /// Structural checks: each arc label appears exactly twice, once as some
    /// crossing's incoming strand and once as an outgoing one.
    pub fn validate(&self) -> Result<(), DiagramError> {
        let mut count: BTreeMap<u32, (u32, u32)> = BTreeMap::new();
        for c in &self.crossings {
            for a in [c.under_in(), c.over_in()] {
                count.entry(a).or_default().0 += 1;
            }
            for a in [c.under_out(), c.over_out()] {
                count.entry(a).or_default().1 += 1;
            }
        }
        for (i, c) in self.crossings.iter().enumerate() {
            for a in c.pd {
                if count.get(&a) != Some(&(1, 1)) {
                    return Err(DiagramError::BadVisits(i));
                }
            }
        }
        Ok(())
    }

    /// Parses the text produced by `Display`.
    pub fn parse(text: &str) -> Result<Diagram, DiagramError> {
        let bad = |m: &str| DiagramError::Malformed(m.to_string());
        let mut crossings = Vec::new();
        let mut components: Vec<Vec<u32>> = Vec::new();
        let mut free_loops = 0;
        let nums = |body: &str| -> Result<Vec<u32>, DiagramError> {
            body.split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| s.trim().parse::<u32>().map_err(|_| bad(s)))
                .collect()
        };
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            if let Some(body) = line.strip_prefix("X(").and_then(|r| r.split_once(')')) {
                let pd = nums(body.0)?;
                let sign = match body.1.trim() {
                    "+" => 1,
                    "-" => -1,
                    other => return Err(bad(other)),
                };
                let pd: [u32; 4] = pd.try_into().map_err(|_| bad(line))?;
                crossings.push(Crossing { pd, sign });
            } else if let Some(body) = line.strip_prefix("C(").and_then(|r| r.strip_suffix(')')) {
                components.push(nums(body)?);
            } else if let Some(n) = line.strip_prefix("O ") {
                free_loops = n.trim().parse().map_err(|_| bad(line))?;
            } else {
                return Err(bad(line));
            }
        }
        // rebuild walks from arc order
        let mut at_in: BTreeMap<u32, Passage> = BTreeMap::new();
        for (i, c) in crossings.iter().enumerate() {
            at_in.insert(c.under_in(), Passage { crossing: i, over: false });
            at_in.insert(c.over_in(), Passage { crossing: i, over: true });
        }
        let mut walks = Vec::new();
        for comp in &components {
            let mut w = Vec::new();
            for a in comp {
                w.push(*at_in.get(a).ok_or_else(|| bad("arc without crossing"))?);
            }
            walks.push(w);
        }
        let signs = crossings.iter().map(|c| c.sign).collect();
        walks.extend(std::iter::repeat_n(Vec::new(), free_loops));
        Diagram::from_walks(signs, walks)
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.crossings {
            let [i, j, k, l] = c.pd;
            writeln!(f, "X({i},{j},{k},{l}) {}", if c.sign > 0 { "+" } else { "-" })?;
        }
        for comp in &self.components {
            let labels: Vec<String> = comp.iter().map(u32::to_string).collect();
            writeln!(f, "C({})", labels.join(","))?;
        }
        if self.free_loops > 0 {
            writeln!(f, "O {}", self.free_loops)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hopf() -> Diagram {
        let walks = vec![
            vec![Passage { crossing: 0, over: true }, Passage { crossing: 1, over: false }],
            vec![Passage { crossing: 0, over: false }, Passage { crossing: 1, over: true }],
        ];
        Diagram::from_walks(vec![1, 1], walks).unwrap()
    }

    #[test]
    fn labels_appear_twice() {
        let d = hopf();
        d.validate().unwrap();
        assert_eq!(d.arc_count(), 4);
        assert_eq!(d.linking_number(0, 1), 1);
        assert!(d.is_alternating());
    }

    #[test]
    fn reversing_a_component_flips_mixed_signs() {
        let d = hopf().with_component_reversed(1);
        assert_eq!(d.writhe(), -2);
        d.validate().unwrap();
    }

    #[test]
    fn text_round_trip() {
        let d = hopf();
        let back = Diagram::parse(&d.to_string()).unwrap();
        assert_eq!(back.crossings(), d.crossings());
        assert_eq!(back.writhe(), d.writhe());
        let u = Diagram::unlink(2);
        assert_eq!(Diagram::parse(&u.to_string()).unwrap().component_count(), 2);
    }

    #[test]
    fn rejects_double_visits() {
        let walks = vec![vec![Passage { crossing: 0, over: true }, Passage { crossing: 0, over: true }]];
        assert!(Diagram::from_walks(vec![1], walks).is_err());
    }
}
