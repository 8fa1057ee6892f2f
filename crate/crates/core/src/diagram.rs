//! Arc diagrams: the linear representation shared by set partitions and
//! partial matchings.
//!
//! Vertices are labeled `1..=ground_size`. A block `{i_1 < i_2 < ... < i_m}`
//! is drawn as the arcs `(i_1, i_2), ..., (i_{m-1}, i_m)`, so every vertex has
//! at most one arc leaving it to the right and at most one arc arriving from
//! the left.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// An arc `(opener, closer)` with `opener < closer`.
pub type Arc = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("arc ({0}, {1}) is not left-to-right")]
    ArcOrder(usize, usize),
    #[error("vertex {vertex} is outside 1..={ground_size}")]
    OutOfRange { vertex: usize, ground_size: usize },
    #[error("vertex {0} has two arcs leaving it")]
    DoubleOpener(usize),
    #[error("vertex {0} has two arcs arriving at it")]
    DoubleCloser(usize),
    #[error("vertex {0} appears in more than one block")]
    Overlap(usize),
    #[error("vertex {0} is not covered by any block")]
    Uncovered(usize),
    #[error("empty block")]
    EmptyBlock,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(position: usize, message: impl Into<String>) -> Self {
        Self { position, message: message.into() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexRole {
    Opener,
    Closer,
    Transient,
    Singleton,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiagramClass {
    AnyPartition,
    /// Blocks of size at most two.
    PartialMatching,
}

/// Linear representation of a set partition of `[ground_size]`.
///
/// Immutable once built. `next[v]` / `prev[v]` hold the right/left neighbour
/// of `v` inside its block (index 0 unused).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ArcDiagram {
    ground_size: usize,
    arcs: Vec<Arc>,
    next: Vec<Option<usize>>,
    prev: Vec<Option<usize>>,
}

impl ArcDiagram {
    /// The diagram on `ground_size` vertices with no arcs.
    pub fn empty(ground_size: usize) -> Self {
        Self {
            ground_size,
            arcs: Vec::new(),
            next: vec![None; ground_size + 1],
            prev: vec![None; ground_size + 1],
        }
    }

    /// Builds a diagram from an arc list, checking every structural invariant.
    /// Duplicate arcs are collapsed.
    pub fn from_arcs<I>(ground_size: usize, arcs: I) -> Result<Self, DiagramError>
    where
        I: IntoIterator<Item = Arc>,
    {
        let mut arcs: Vec<Arc> = arcs.into_iter().collect();
        arcs.sort_unstable();
        arcs.dedup();
        let mut next = vec![None; ground_size + 1];
        let mut prev = vec![None; ground_size + 1];
        for &(i, j) in &arcs {
            if i >= j {
                return Err(DiagramError::ArcOrder(i, j));
            }
            for v in [i, j] {
                if v == 0 || v > ground_size {
                    return Err(DiagramError::OutOfRange { vertex: v, ground_size });
                }
            }
            if next[i].replace(j).is_some() {
                return Err(DiagramError::DoubleOpener(i));
            }
            if prev[j].replace(i).is_some() {
                return Err(DiagramError::DoubleCloser(j));
            }
        }
        Ok(Self { ground_size, arcs, next, prev })
    }

    /// Linear representation of the partition given by `blocks`.
    pub fn from_blocks<B, I>(ground_size: usize, blocks: B) -> Result<Self, DiagramError>
    where
        B: IntoIterator<Item = I>,
        I: IntoIterator<Item = usize>,
    {
        let mut seen = vec![false; ground_size + 1];
        let mut arcs = Vec::new();
        for block in blocks {
            let mut block: Vec<usize> = block.into_iter().collect();
            if block.is_empty() {
                return Err(DiagramError::EmptyBlock);
            }
            block.sort_unstable();
            for &v in &block {
                if v == 0 || v > ground_size {
                    return Err(DiagramError::OutOfRange { vertex: v, ground_size });
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(DiagramError::Overlap(v));
                }
            }
            arcs.extend(block.windows(2).map(|w| (w[0], w[1])));
        }
        if let Some(v) = (1..=ground_size).find(|&v| !seen[v]) {
            return Err(DiagramError::Uncovered(v));
        }
        Self::from_arcs(ground_size, arcs)
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    /// Arcs sorted by opener.
    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// The vertex joined to `v` by an arc on its right, if any.
    pub fn next(&self, v: usize) -> Option<usize> {
        self.next.get(v).copied().flatten()
    }

    /// The vertex joined to `v` by an arc on its left, if any.
    pub fn prev(&self, v: usize) -> Option<usize> {
        self.prev.get(v).copied().flatten()
    }

    pub fn role(&self, v: usize) -> Result<VertexRole, DiagramError> {
        if v == 0 || v > self.ground_size {
            return Err(DiagramError::OutOfRange { vertex: v, ground_size: self.ground_size });
        }
        Ok(self.role_unchecked(v))
    }

    pub(crate) fn role_unchecked(&self, v: usize) -> VertexRole {
        match (self.prev[v].is_some(), self.next[v].is_some()) {
            (false, false) => VertexRole::Singleton,
            (false, true) => VertexRole::Opener,
            (true, false) => VertexRole::Closer,
            (true, true) => VertexRole::Transient,
        }
    }

    /// Roles of vertices `1..=ground_size`, in order.
    pub fn roles(&self) -> impl Iterator<Item = VertexRole> + '_ {
        (1..=self.ground_size).map(|v| self.role_unchecked(v))
    }

    pub fn is_partial_matching(&self) -> bool {
        self.roles().all(|r| r != VertexRole::Transient)
    }

    pub fn is_in_class(&self, class: DiagramClass) -> bool {
        match class {
            DiagramClass::AnyPartition => true,
            DiagramClass::PartialMatching => self.is_partial_matching(),
        }
    }

    /// Blocks as ascending vertex lists, sorted by minimum element.
    pub fn to_blocks(&self) -> Vec<Vec<usize>> {
        (1..=self.ground_size)
            .filter(|&v| self.prev[v].is_none())
            .map(|start| {
                let mut block = vec![start];
                let mut v = start;
                while let Some(w) = self.next[v] {
                    block.push(w);
                    v = w;
                }
                block
            })
            .collect()
    }

    /// Restricted growth string of the underlying partition (0-based block
    /// indices in order of first appearance).
    pub fn to_rgs(&self) -> Vec<usize> {
        let mut rgs = vec![0; self.ground_size];
        for (b, block) in self.to_blocks().into_iter().enumerate() {
            for v in block {
                rgs[v - 1] = b;
            }
        }
        rgs
    }
}

impl fmt::Debug for ArcDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ArcDiagram({self})")
    }
}

impl fmt::Display for ArcDiagram {
    /// Canonical text form, e.g. `8;{1,5,6},{2,3,8},{4,7}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.ground_size)?;
        for (b, block) in self.to_blocks().iter().enumerate() {
            if b > 0 {
                f.write_str(",")?;
            }
            f.write_str("{")?;
            for (e, v) in block.iter().enumerate() {
                if e > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str("}")?;
        }
        Ok(())
    }
}

impl FromStr for ArcDiagram {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

/// Parses `<ground_size>;{a,b,...},{c,...}`. Whitespace anywhere is ignored.
pub fn parse(text: &str) -> Result<ArcDiagram, ParseError> {
    let mut cur = Cursor::new(text);
    let ground_size = cur.number()?;
    cur.expect(';')?;
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    // Position of each block's opening brace, for error reporting.
    let mut starts = Vec::new();
    if cur.peek().is_some() {
        loop {
            starts.push(cur.pos());
            cur.expect('{')?;
            let mut block = vec![cur.number()?];
            while cur.eat(',') {
                block.push(cur.number()?);
            }
            cur.expect('}')?;
            blocks.push(block);
            if !cur.eat(',') {
                break;
            }
        }
    }
    if let Some((pos, c)) = cur.peek() {
        return Err(ParseError::new(pos, format!("unexpected '{c}' after last block")));
    }
    ArcDiagram::from_blocks(ground_size, blocks.iter().cloned()).map_err(|e| {
        let offending = match e {
            DiagramError::OutOfRange { vertex, .. }
            | DiagramError::Overlap(vertex)
            | DiagramError::Uncovered(vertex) => Some(vertex),
            _ => None,
        };
        let pos = offending
            .and_then(|v| blocks.iter().rposition(|b| b.contains(&v)))
            .map_or(text.len(), |b| starts[b]);
        ParseError::new(pos, e.to_string())
    })
}

pub(crate) struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    len: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        Self { chars: text.char_indices().peekable(), len: text.len() }
    }

    fn skip_ws(&mut self) {
        while self.chars.next_if(|(_, c)| c.is_whitespace()).is_some() {}
    }

    pub(crate) fn peek(&mut self) -> Option<(usize, char)> {
        self.skip_ws();
        self.chars.peek().copied()
    }

    pub(crate) fn pos(&mut self) -> usize {
        self.peek().map_or(self.len, |(p, _)| p)
    }

    pub(crate) fn eat(&mut self, want: char) -> bool {
        self.skip_ws();
        self.chars.next_if(|&(_, c)| c == want).is_some()
    }

    pub(crate) fn expect(&mut self, want: char) -> Result<(), ParseError> {
        let pos = self.pos();
        if self.eat(want) {
            Ok(())
        } else {
            Err(ParseError::new(pos, format!("expected '{want}'")))
        }
    }

    pub(crate) fn number(&mut self) -> Result<usize, ParseError> {
        let start = self.pos();
        let mut value: usize = 0;
        let mut digits = 0;
        while let Some((_, c)) = self.chars.next_if(|(_, c)| c.is_ascii_digit()) {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(c as usize - '0' as usize))
                .ok_or_else(|| ParseError::new(start, "number too large"))?;
            digits += 1;
        }
        if digits == 0 {
            return Err(ParseError::new(start, "expected a number"));
        }
        Ok(value)
    }
}
