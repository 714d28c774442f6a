//! JSON form of a realization, plus the bare-coordinate input format.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use stickforge_core::builder::{BuildParams, StickRealization};
use stickforge_core::conway::ConwayNotation;
use stickforge_core::geometry::Cycle;
use stickforge_core::point::{format_rational, parse_rational, Point3};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizationDocument {
    /// Notation the polygon realizes (the normal form of `requested`).
    pub notation: Vec<u32>,
    pub requested: Vec<u32>,
    pub normalization_action: String,
    pub stick_count: usize,
    /// Vertices as lowest-terms `"num/den"` strings.
    pub components: Vec<Vec<[String; 3]>>,
    pub params: DocumentParams,
    pub construction: String,
    pub verification: DocumentVerification,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocumentParams {
    pub seed: u64,
    pub grid: u32,
    pub use_fixtures: bool,
    pub projection_seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocumentVerification {
    pub mode: String,
    pub embedded: bool,
    pub projected_crossings: Option<usize>,
    pub jones: Option<String>,
    pub verdict: String,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InputError {
    #[error("not JSON: {0}")]
    Json(String),
    #[error("coordinate `{0}` is not an exact rational")]
    Coordinate(String),
    #[error("rational `{0}` is not in lowest `num/den` form")]
    NotLowestTerms(String),
    #[error("vertex is not a triple of coordinates")]
    Vertex,
    #[error("expected a list of components, each a list of vertices")]
    Shape,
    #[error("document notation is invalid: {0}")]
    Notation(String),
}

impl From<&BuildParams> for DocumentParams {
    fn from(p: &BuildParams) -> Self {
        DocumentParams { seed: p.seed, grid: p.grid, use_fixtures: p.use_fixtures, projection_seed: p.projection_seed }
    }
}

pub fn encode_cycles(components: &[Cycle]) -> Vec<Vec<[String; 3]>> {
    components
        .iter()
        .map(|c| c.iter().map(|p| [format_rational(&p.x), format_rational(&p.y), format_rational(&p.z)]).collect())
        .collect()
}

impl RealizationDocument {
    pub fn from_realization(r: &StickRealization) -> Self {
        let v = &r.report;
        RealizationDocument {
            notation: r.notation.entries().to_vec(),
            requested: r.trace.input.entries().to_vec(),
            normalization_action: r.trace.action.as_str().to_string(),
            stick_count: r.stick_count,
            components: encode_cycles(&r.components),
            params: (&r.params).into(),
            construction: r.method.to_string(),
            verification: DocumentVerification {
                mode: mode_name(v.mode).to_string(),
                embedded: v.embedding.embedded,
                projected_crossings: v.projected_crossings,
                jones: v.jones.as_ref().map(|j| j.render("t", 2)),
                verdict: v.verdict_label().to_string(),
            },
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, InputError> {
        let doc: RealizationDocument = serde_json::from_str(text).map_err(|e| InputError::Json(e.to_string()))?;
        doc.cycles()?;
        doc.realized_notation()?;
        Ok(doc)
    }

    /// Exact vertices; every coordinate must be a lowest-terms `num/den` string.
    pub fn cycles(&self) -> Result<Vec<Cycle>, InputError> {
        self.components
            .iter()
            .map(|c| {
                c.iter()
                    .map(|v| {
                        let coord = |s: &String| {
                            let q = parse_rational(s).map_err(|_| InputError::Coordinate(s.clone()))?;
                            if format_rational(&q) != *s {
                                return Err(InputError::NotLowestTerms(s.clone()));
                            }
                            Ok(q)
                        };
                        Ok(Point3::new(coord(&v[0])?, coord(&v[1])?, coord(&v[2])?))
                    })
                    .collect()
            })
            .collect()
    }

    pub fn realized_notation(&self) -> Result<ConwayNotation, InputError> {
        ConwayNotation::new(self.notation.clone()).map_err(|e| InputError::Notation(e.to_string()))
    }
}

pub fn mode_name(mode: stickforge_core::invariants::CompareMode) -> &'static str {
    match mode {
        stickforge_core::invariants::CompareMode::Strict => "strict",
        stickforge_core::invariants::CompareMode::MirrorTolerant => "mirror",
    }
}

/// Polygon read from a file, with the notation it claims to realize if known.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolygonInput {
    pub components: Vec<Cycle>,
    pub notation: Option<ConwayNotation>,
}

/// Accepts a [`RealizationDocument`], `{"components": [...]}`, or a bare list of
/// components. Bare coordinates may be rational strings or JSON numbers, read exactly.
pub fn load_polygon(text: &str) -> Result<PolygonInput, InputError> {
    let value: Value = serde_json::from_str(text).map_err(|e| InputError::Json(e.to_string()))?;
    if value.get("verification").is_some() {
        let doc = RealizationDocument::from_json(text)?;
        return Ok(PolygonInput { components: doc.cycles()?, notation: Some(doc.realized_notation()?) });
    }
    let list = match &value {
        Value::Object(map) => map.get("components").ok_or(InputError::Shape)?,
        other => other,
    };
    let components = list
        .as_array()
        .ok_or(InputError::Shape)?
        .iter()
        .map(|c| c.as_array().ok_or(InputError::Shape)?.iter().map(vertex).collect())
        .collect::<Result<Vec<Cycle>, InputError>>()?;
    Ok(PolygonInput { components, notation: None })
}

fn vertex(v: &Value) -> Result<Point3, InputError> {
    let coords = v.as_array().filter(|a| a.len() == 3).ok_or(InputError::Vertex)?;
    let coord = |c: &Value| {
        let text = match c {
            Value::String(s) => s.clone(),
            Value::Number(n) => n.to_string(),
            _ => return Err(InputError::Vertex),
        };
        parse_rational(&text).map_err(|_| InputError::Coordinate(text))
    };
    Ok(Point3::new(coord(&coords[0])?, coord(&coords[1])?, coord(&coords[2])?))
}
