pub mod commands;
pub mod document;
pub mod obj;

pub use commands::{EnumerationRow, Format};
pub use document::{load_polygon, PolygonInput, RealizationDocument};
