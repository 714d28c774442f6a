//! Reference vertex coordinates for the smallest member of each construction case.

use crate::conway::ConwayNotation;
use crate::geometry::Cycle;
use crate::point::{parse_rational, Point3};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("no coordinate fixture for notation {0}")]
pub struct UnknownFixture(pub String);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    pub name: ConwayNotation,
    pub components: Vec<Cycle>,
}

impl Fixture {
    pub fn stick_count(&self) -> usize {
        self.components.iter().map(Vec::len).sum()
    }
}

/// Components as lists of `[x, y, z]` coordinate strings.
type Coordinates = &'static [&'static [[&'static str; 3]]];

const TABLE: [(&[u32], Coordinates); 7] = [
    (
        &[6],
        &[
            &[["0", "0", "0"], ["2", "-4", "0"], ["6", "2", "0"], ["8", "-3", "1"]],
            &[["2", "-2", "2"], ["8", "-1", "0"], ["8", "1", "1.7"], ["2", "1", "-3"]],
        ],
    ),
    (
        &[2, 3, 2],
        &[
            &[["0", "0", "0"], ["0", "10", "0"], ["5", "10", "0"], ["-2", "5", "1"], ["5", "0", "-4"]],
            &[["3", "11", "-1"], ["7", "2", "5"], ["1", "2", "-2"], ["7", "11", "5"]],
        ],
    ),
    (
        &[1, 3, 2],
        &[&[
            ["0", "0", "7"],
            ["3", "-5", "-8"],
            ["4", "-4", "2"],
            ["1", "3", "-1.3"],
            ["5", "0", "0"],
            ["1", "-3", "0"],
            ["4", "4", "0"],
            ["3", "5", "-10"],
        ]],
    ),
    (
        &[2, 2, 2],
        &[
            &[["0", "0", "0"], ["4", "0", "0"], ["0", "-5", "0"], ["4", "-5", "-1"]],
            &[["2", "-4", "-2"], ["6", "-4", "3"], ["2", "1", "-1"], ["6", "1", "5"]],
        ],
    ),
    (
        &[1, 2, 3],
        &[
            &[["0", "0", "0"], ["6", "-5", "0"], ["6", "0", "0"], ["0", "-5", "1"]],
            &[["1.5", "-5", "3"], ["7", "-2.5", "-1"], ["5.5", "-1.5", "1"], ["1", "-1.5", "-2.5"]],
        ],
    ),
    (
        &[2, 1, 3],
        &[&[
            ["0", "0", "0"],
            ["0", "-10", "0"],
            ["9", "-5", "-1"],
            ["-2", "-5", "6"],
            ["4", "-4", "-15"],
            ["4", "-6.5", "35"],
            ["9", "-8", "-130"],
            ["10", "-7", "0"],
        ]],
    ),
    (
        &[1, 1, 4],
        &[&[
            ["1", "2.5", "2.1"],
            ["7", "2", "-5"],
            ["7", "-5", "5"],
            ["3", "-5", "0"],
            ["3", "4", "0"],
            ["1", "-4", "0"],
            ["8", "-2", "1"],
            ["0", "0", "-1"],
        ]],
    ),
];

/// Notations that have a reference coordinate fixture.
pub fn fixture_names() -> Vec<ConwayNotation> {
    TABLE.iter().map(|(n, _)| ConwayNotation::new(n.to_vec()).expect("valid fixture name")).collect()
}

pub fn fixture(name: &ConwayNotation) -> Result<Fixture, UnknownFixture> {
    let (_, comps) =
        TABLE.iter().find(|(n, _)| *n == name.entries()).ok_or_else(|| UnknownFixture(name.to_string()))?;
    let components = comps
        .iter()
        .map(|cyc| {
            cyc.iter()
                .map(|[x, y, z]| {
                    let v = |s: &str| parse_rational(s).expect("fixture coordinates are decimals");
                    Point3::new(v(x), v(y), v(z))
                })
                .collect()
        })
        .collect();
    Ok(Fixture { name: name.clone(), components })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::qf;

    #[test]
    fn six_fixture_is_transcribed_exactly() {
        let f = fixture(&"6".parse().unwrap()).unwrap();
        assert_eq!(f.components.len(), 2);
        assert_eq!(f.components[0][3], Point3::from_ints(8, -3, 1));
        assert_eq!(f.components[1][2], Point3::new(qf(8, 1), qf(1, 1), qf(17, 10)));
        assert_eq!(f.stick_count(), 8);
    }

    #[test]
    fn fixture_stick_counts() {
        let counts: Vec<(String, usize, usize)> = fixture_names()
            .iter()
            .map(|n| {
                let f = fixture(n).unwrap();
                (n.to_string(), f.stick_count(), f.components.len())
            })
            .collect();
        let expected = [(8, 2), (9, 2), (8, 1), (8, 2), (8, 2), (8, 1), (8, 1)];
        for ((name, sticks, comps), (s, c)) in counts.iter().zip(expected) {
            assert_eq!((*sticks, *comps), (s, c), "{name}");
        }
    }

    #[test]
    fn unknown_fixture() {
        assert!(fixture(&"7".parse().unwrap()).is_err());
    }
}
