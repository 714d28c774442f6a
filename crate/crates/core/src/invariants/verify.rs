//! End-to-end check of a stick realization against a Conway notation.

use crate::conway::{ConwayError, ConwayNotation};
use crate::geometry::{check_embedded, generic_direction, project, Cycle, EmbeddingReport, ProjectionDirection};
use crate::polynomial::LaurentPolynomial;

use super::alexander::alexander;
use super::{canonical_diagram, jones, same_knot_type, BudgetExceeded, CompareMode, TypeVerdict};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub notation: ConwayNotation,
    pub mode: CompareMode,
    pub embedding: EmbeddingReport,
    pub stick_count: usize,
    pub expected_sticks: usize,
    pub component_count: usize,
    pub expected_components: usize,
    pub direction: Option<ProjectionDirection>,
    pub projected_crossings: Option<usize>,
    /// Jones polynomial of the projection as oriented by vertex order.
    pub jones: Option<LaurentPolynomial>,
    pub verdict: Option<TypeVerdict>,
    /// Why the type comparison did not run (projection or evaluator failure).
    pub problem: Option<String>,
    /// Jones-colliding rival notations and whether the Alexander polynomial told them apart.
    pub tie_breaks: Vec<TieBreak>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TieBreak {
    pub rival: ConwayNotation,
    pub separated: bool,
}

impl VerificationReport {
    pub fn sticks_ok(&self) -> bool {
        self.stick_count == self.expected_sticks
    }

    pub fn components_ok(&self) -> bool {
        self.component_count == self.expected_components
    }

    pub fn type_ok(&self) -> bool {
        matches!(
            (self.verdict, self.mode),
            (Some(TypeVerdict::Identical), _) | (Some(TypeVerdict::Mirror), CompareMode::MirrorTolerant)
        )
    }

    pub fn passed(&self) -> bool {
        self.embedding.embedded && self.sticks_ok() && self.components_ok() && self.type_ok()
    }

    /// Verdict label used in reports; a failure before comparison reads `failed`.
    pub fn verdict_label(&self) -> &'static str {
        self.verdict.map_or("failed", TypeVerdict::as_str)
    }
}

/// Checks embeddedness, stick count `c + 2`, component count, and knot type.
/// The projection direction is chosen by [`generic_direction`] with `seed`.
pub fn verify(
    components: &[Cycle],
    n: &ConwayNotation,
    mode: CompareMode,
    seed: u64,
) -> Result<VerificationReport, ConwayError> {
    verify_with_rivals(components, n, mode, seed, &[])
}

/// As [`verify`], but a passing verdict that a rival notation with an
/// inequivalent fraction would also pass is kept only if the Alexander
/// polynomial of the projection matches `n` and not the rival; otherwise it
/// becomes [`TypeVerdict::Inconclusive`].
pub fn verify_with_rivals(
    components: &[Cycle],
    n: &ConwayNotation,
    mode: CompareMode,
    seed: u64,
    rivals: &[ConwayNotation],
) -> Result<VerificationReport, ConwayError> {
    let c = n.crossing_number();
    if c < 6 {
        return Err(ConwayError::OutOfTheoremRange(c));
    }
    let embedding = check_embedded(components);
    let mut report = VerificationReport {
        notation: n.clone(),
        mode,
        stick_count: components.iter().map(Vec::len).sum(),
        expected_sticks: c as usize + 2,
        component_count: components.len(),
        expected_components: n.fraction().component_count() as usize,
        embedding,
        direction: None,
        projected_crossings: None,
        jones: None,
        verdict: None,
        problem: None,
        tie_breaks: Vec::new(),
    };
    if !report.embedding.embedded {
        report.problem = Some("polygon is not embedded".into());
        return Ok(report);
    }
    let direction = match generic_direction(components, seed) {
        Ok(d) => d,
        Err(e) => {
            report.problem = Some(e.to_string());
            return Ok(report);
        }
    };
    let diagram = match project(components, &direction) {
        Ok(d) => d,
        Err(e) => {
            report.problem = Some(e.to_string());
            return Ok(report);
        }
    };
    report.direction = Some(direction);
    report.projected_crossings = Some(diagram.crossing_count());
    let compared = jones(&diagram).and_then(|v| {
        report.jones = Some(v);
        same_knot_type(&diagram, &canonical_diagram(n), mode)
    });
    let budget_problem = |BudgetExceeded { crossings, budget }| {
        format!("projection has {crossings} crossings, evaluator budget is {budget}")
    };
    match compared {
        Ok(v) => report.verdict = Some(v),
        Err(e) => report.problem = Some(budget_problem(e)),
    }
    if report.type_ok() {
        for rival in rivals {
            let rival_diagram = canonical_diagram(rival);
            let rival_passes = match same_knot_type(&diagram, &rival_diagram, mode) {
                Ok(v) => {
                    v == TypeVerdict::Identical || (v == TypeVerdict::Mirror && mode == CompareMode::MirrorTolerant)
                }
                Err(e) => {
                    report.problem = Some(budget_problem(e));
                    true
                }
            };
            if !rival_passes {
                continue;
            }
            let seen = alexander(&diagram);
            let separated = seen == alexander(&canonical_diagram(n)) && seen != alexander(&rival_diagram);
            if !separated {
                report.verdict = Some(TypeVerdict::Inconclusive);
            }
            report.tie_breaks.push(TieBreak { rival: rival.clone(), separated });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::fixtures::fixture;
    use crate::conway::parse;
    use crate::point::Point3;

    #[test]
    fn fixture_six_passes_strictly() {
        let n = parse("6").unwrap();
        let f = fixture(&n).unwrap();
        let r = verify(&f.components, &n, CompareMode::Strict, 0).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.verdict, Some(TypeVerdict::Identical));
        assert!(r.projected_crossings.unwrap() >= 6);
    }

    #[test]
    fn square_fails_on_sticks_and_type() {
        let square = vec![vec![
            Point3::from_ints(0, 0, 0),
            Point3::from_ints(1, 0, 0),
            Point3::from_ints(1, 1, 0),
            Point3::from_ints(0, 1, 0),
        ]];
        let r = verify(&square, &parse("6").unwrap(), CompareMode::MirrorTolerant, 0).unwrap();
        assert!(!r.passed());
        assert!(!r.sticks_ok());
        assert!(!r.type_ok());
    }

    #[test]
    fn alexander_breaks_the_jones_tie() {
        // canonical polygons of the colliding pair are verified against each other
        let a = parse("1,1,2,4,2").unwrap();
        let b = parse("1,2,1,3,3").unwrap();
        let polygon = |n: &ConwayNotation| -> Vec<Cycle> {
            crate::builder::build(n, &crate::builder::BuildParams::default()).unwrap().components
        };
        let ra =
            verify_with_rivals(&polygon(&a), &a, CompareMode::MirrorTolerant, 0, std::slice::from_ref(&b)).unwrap();
        assert!(ra.passed(), "{ra:?}");
        assert_eq!(ra.tie_breaks, vec![TieBreak { rival: b.clone(), separated: true }]);
        let rb =
            verify_with_rivals(&polygon(&a), &b, CompareMode::MirrorTolerant, 0, std::slice::from_ref(&a)).unwrap();
        assert!(!rb.passed());
        assert_eq!(rb.verdict, Some(TypeVerdict::Inconclusive));
    }

    #[test]
    fn below_range_is_rejected() {
        let n = parse("2,2,1").unwrap();
        assert_eq!(verify(&[], &n, CompareMode::Strict, 0), Err(ConwayError::OutOfTheoremRange(5)));
    }
}
