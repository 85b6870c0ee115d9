//! Fully packed loops in a triangle: exhaustive enumeration of plain and
//! oriented configurations, their matching and path models, puzzles, and
//! exact checks of the counting formulas relating them to
//! Littlewood-Richardson coefficients.

pub mod algebra;
pub mod words;
pub mod matchings;
pub mod tfpl_core;
pub mod tangles;
pub mod puzzles;
pub mod fpl;
pub mod cli;
