//! The two correspondences between the classes:
//!
//! - [`alpha`] / [`alpha_inv`]: matchings in `P(n+k-1, k)` to sequences in `S(n, k)`;
//! - [`reduce`] / [`expand`]: matchings in `P(n+k-1, k)` to partitions in `CT(n, k)`,
//!   carrying neighbor alignments to transients.
//!
//! Inputs outside the domain class are rejected with the violated pattern or
//! sequence condition. Step invariants of each construction are checked on
//! every call and surface as [`MapError::Invariant`].

mod alpha;
mod reduction;

use thiserror::Error;

use crate::diagram::{Arc, ArcDiagram, VertexRole};
use crate::enumeration::SeqError;
use crate::patterns::{self, PatternKind, CT_FORBIDDEN, P_FORBIDDEN};

pub use alpha::{alpha, alpha_inv, alpha_inv_traced, alpha_traced, AlphaInvTrace, AlphaTrace, OpenerContext};
pub use reduction::{expand, reduce};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("vertex {0} is a transient, so the input is not a partial matching")]
    NotMatching(usize),
    #[error("arcs {first:?} and {second:?} form a {kind}")]
    Forbidden { kind: PatternKind, first: Arc, second: Arc },
    #[error("the empty diagram is not a partition of [n] for any n >= 1")]
    EmptyPartition,
    #[error("invalid sequence: {0}")]
    InvalidSequence(#[from] SeqError),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub(crate) fn require_p(d: &ArcDiagram) -> Result<(), MapError> {
    if let Some(v) = (1..=d.ground_size()).find(|&v| d.role_unchecked(v) == VertexRole::Transient) {
        return Err(MapError::NotMatching(v));
    }
    require_avoids(d, &P_FORBIDDEN)
}

pub(crate) fn require_ct(d: &ArcDiagram) -> Result<(), MapError> {
    if d.ground_size() == 0 {
        return Err(MapError::EmptyPartition);
    }
    require_avoids(d, &CT_FORBIDDEN)
}

fn require_avoids(d: &ArcDiagram, kinds: &[PatternKind]) -> Result<(), MapError> {
    match patterns::first_violation(d, kinds) {
        Some((kind, first, second)) => Err(MapError::Forbidden { kind, first, second }),
        None => Ok(()),
    }
}

/// A matching with its closers unlabeled and the remaining vertices
/// numbered `1, 2, ...` from left to right.
#[derive(Debug, Clone)]
pub struct LabeledDiagram<'a> {
    base: &'a ArcDiagram,
    /// `positions[l - 1]` is the vertex carrying label `l`.
    positions: Vec<usize>,
    /// `labels[v]` is the label of vertex `v`, if it is not a closer.
    labels: Vec<Option<usize>>,
}

impl<'a> LabeledDiagram<'a> {
    pub fn new(base: &'a ArcDiagram) -> Self {
        let mut positions = Vec::new();
        let mut labels = vec![None; base.ground_size() + 1];
        for v in 1..=base.ground_size() {
            if base.role_unchecked(v) != VertexRole::Closer {
                positions.push(v);
                labels[v] = Some(positions.len());
            }
        }
        Self { base, positions, labels }
    }

    pub fn base(&self) -> &ArcDiagram {
        self.base
    }

    /// Number of labeled vertices.
    pub fn label_count(&self) -> usize {
        self.positions.len()
    }

    pub fn position(&self, label: usize) -> usize {
        self.positions[label - 1]
    }

    pub fn label(&self, vertex: usize) -> Option<usize> {
        self.labels.get(vertex).copied().flatten()
    }
}
