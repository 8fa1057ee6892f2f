//! Matchings avoiding 2-right crossings and right nestings, partitions
//! avoiding right crossings, and the integer sequences that index both.
//!
//! The three families are equinumerous cell by cell: for every `n >= 1` and
//! `0 <= k < n`,
//!
//! ```text
//! |P(n+k-1, k)| = |S(n, k)| = |CT(n, k)| = [x^n y^k] F(x, y),
//! F(x, y) = sum_{n>=1} x^n (1+xy)^C(n,2) / prod_{j=0}^{n-1} (1 - (1+xy)^j xy).
//! ```
//!
//! [`bijections`] makes both correspondences executable, [`enumeration`]
//! counts the cells, and [`genfun`] expands `F` exactly.

pub mod bijections;
pub mod cli;
pub mod diagram;
pub mod enumeration;
pub mod genfun;
pub mod patterns;

pub use diagram::{ArcDiagram, DiagramClass, VertexRole};
pub use enumeration::{Class, ClassId, SeqS};
pub use genfun::BiSeries;
pub use patterns::PatternKind;
