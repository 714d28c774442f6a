pub mod builder;
pub mod conway;
pub mod geometry;
pub mod invariants;
pub mod lift;
pub mod point;
pub mod polynomial;
pub mod tangle;
