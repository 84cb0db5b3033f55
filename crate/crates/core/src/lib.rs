//! Exact computational engine for facial (semi-simplicial) sets.
//!
//! Everything is finite and everything is exact: cell levels are finite
//! pointed sets, realization points carry arbitrary-precision rational
//! coordinates, and homology is computed over the integers by Smith normal
//! form. Identities are verified by exhaustive enumeration or exact equality,
//! never sampled with tolerances.

pub mod bar;
pub mod bifacial;
pub mod chains;
pub mod cotriple;
pub mod delta;
pub mod error;
pub mod facial;
pub mod gen;
pub mod json;
pub mod matrix;
pub mod monoid;
pub mod moore;
pub mod points;
pub mod ratio;
pub mod rectify;
pub mod report;
pub mod simplicial;
pub mod suites;
