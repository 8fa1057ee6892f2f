//! Generation and counting of the three equinumerous classes
//! `P(n+k-1, k)`, `S(n, k)` and `CT(n, k)`.
//!
//! Every generator is deterministic: set partitions come out in
//! restricted-growth order, matchings in lexicographic order of their sorted
//! arc lists, and sequences in lexicographic order.

mod pruned;
mod seq;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::diagram::{Arc, ArcDiagram};
use crate::patterns::{self, CT_FORBIDDEN, P_FORBIDDEN};

pub use pruned::{pruned_members, pruned_sequences};
pub use seq::{check_s, is_valid_s, lr_maxima, parse_values, SeqError, SeqParseError, SeqS};

/// Exact object counts. Additions are checked and panic on overflow.
pub type Count = u64;

pub(crate) fn bump(count: &mut Count) {
    *count = count.checked_add(1).expect("count overflowed u64");
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Class {
    /// Matchings of `[n+k-1]` with `k` arcs and no 2-right crossing or right nesting.
    P,
    /// Partitions of `[n]` with `k` arcs and no right crossing.
    CT,
    /// Sequences of length `n` with `n-k` left-to-right maxima.
    S,
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Class::P => "P",
            Class::CT => "CT",
            Class::S => "S",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassError {
    #[error("unknown class '{0}' (expected P, CT or S)")]
    UnknownClass(String),
    #[error("n must be at least 1")]
    ZeroN,
    #[error("k = {k} is out of range 0..={max} for n = {n}", max = .n - 1)]
    KOutOfRange { n: usize, k: usize },
}

impl FromStr for Class {
    type Err = ClassError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "P" | "p" => Ok(Class::P),
            "CT" | "ct" => Ok(Class::CT),
            "S" | "s" => Ok(Class::S),
            _ => Err(ClassError::UnknownClass(s.to_string())),
        }
    }
}

/// One cell `(n, k)` of one class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ClassId {
    pub class: Class,
    pub n: usize,
    pub k: usize,
}

impl ClassId {
    pub fn new(class: Class, n: usize, k: usize) -> Result<Self, ClassError> {
        if n == 0 {
            return Err(ClassError::ZeroN);
        }
        if k >= n {
            return Err(ClassError::KOutOfRange { n, k });
        }
        Ok(Self { class, n, k })
    }

    /// Ground-set size of the objects in this cell (`n+k-1` for `P`).
    pub fn ground_size(&self) -> usize {
        match self.class {
            Class::P => self.n + self.k - 1,
            Class::CT | Class::S => self.n,
        }
    }

    /// Whether `d` belongs to this cell (diagram classes only).
    pub fn contains_diagram(&self, d: &ArcDiagram) -> bool {
        match self.class {
            Class::P => {
                d.ground_size() == self.ground_size()
                    && d.arc_count() == self.k
                    && d.is_partial_matching()
                    && patterns::avoids(d, &P_FORBIDDEN)
            }
            Class::CT => {
                d.ground_size() == self.n && d.arc_count() == self.k && patterns::avoids(d, &CT_FORBIDDEN)
            }
            Class::S => false,
        }
    }

    pub fn contains_seq(&self, x: &[usize]) -> bool {
        self.class == Class::S && x.len() == self.n && is_valid_s(x) && lr_maxima(x) == self.n - self.k
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ClassObject {
    Diagram(ArcDiagram),
    Seq(SeqS),
}

impl fmt::Display for ClassObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassObject::Diagram(d) => d.fmt(f),
            ClassObject::Seq(s) => s.fmt(f),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Generate every candidate and test the class predicate.
    Filter,
    /// Backtrack, never placing an arc or value that breaks the class.
    Pruned,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "filter" => Ok(Mode::Filter),
            "pruned" => Ok(Mode::Pruned),
            _ => Err(format!("unknown mode '{s}' (expected filter or pruned)")),
        }
    }
}

/// Set partitions of `[n]` in restricted-growth-string order.
pub fn all_partitions(n: usize) -> Partitions {
    Partitions { rgs: vec![0; n], maxes: vec![0; n], done: false }
}

/// Iterator over restricted growth strings. `maxes[i]` is the maximum of
/// `rgs[..i]` (zero for `i = 0`).
#[derive(Debug, Clone)]
pub struct Partitions {
    rgs: Vec<usize>,
    maxes: Vec<usize>,
    done: bool,
}

impl Partitions {
    fn current(&self) -> ArcDiagram {
        let n = self.rgs.len();
        let mut last: Vec<Option<usize>> = vec![None; n];
        let mut arcs = Vec::new();
        for (i, &b) in self.rgs.iter().enumerate() {
            if let Some(prev) = last[b].replace(i + 1) {
                arcs.push((prev, i + 1));
            }
        }
        ArcDiagram::from_arcs(n, arcs).expect("restricted growth strings give valid diagrams")
    }

    fn advance(&mut self) {
        let n = self.rgs.len();
        // Rightmost position that can still grow; position 0 is fixed at 0.
        let Some(i) = (1..n).rev().find(|&i| self.rgs[i] <= self.maxes[i]) else {
            self.done = true;
            return;
        };
        self.rgs[i] += 1;
        for j in i + 1..n {
            self.rgs[j] = 0;
            self.maxes[j] = self.maxes[j - 1].max(self.rgs[j - 1]);
        }
    }
}

impl Iterator for Partitions {
    type Item = ArcDiagram;

    fn next(&mut self) -> Option<ArcDiagram> {
        if self.done {
            return None;
        }
        let d = self.current();
        self.advance();
        Some(d)
    }
}

/// Partial matchings of `[m]` with exactly `k` arcs, in lexicographic order
/// of the opener-sorted arc list. Empty when `2k > m`.
pub fn all_partial_matchings(m: usize, k: usize) -> Matchings {
    Matchings { m, k, arcs: Vec::with_capacity(k), used: vec![false; m + 1], state: MatchState::Fresh }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum MatchState {
    Fresh,
    Running,
    Done,
}

#[derive(Debug, Clone)]
pub struct Matchings {
    m: usize,
    k: usize,
    arcs: Vec<Arc>,
    used: Vec<bool>,
    state: MatchState,
}

impl Matchings {
    /// Smallest arc strictly after `after` (lexicographically) that can be
    /// placed next and still leaves room for the remaining arcs.
    fn next_arc(&self, after: Option<Arc>) -> Option<Arc> {
        let floor = self.arcs.last().map_or(1, |&(i, _)| i + 1);
        let still_needed = self.k - self.arcs.len() - 1;
        let (start_i, start_j) = match after {
            Some((i, j)) => (i, j + 1),
            None => (floor, floor + 1),
        };
        for i in start_i.max(floor)..=self.m {
            if self.used[i] {
                continue;
            }
            let free_after = (i + 1..=self.m).filter(|&v| !self.used[v]).count();
            if free_after < 1 + 2 * still_needed {
                return None;
            }
            let j_from = if i == start_i { start_j } else { i + 1 };
            if let Some(j) = (j_from.max(i + 1)..=self.m).find(|&j| !self.used[j]) {
                return Some((i, j));
            }
        }
        None
    }

    fn place(&mut self, (i, j): Arc) {
        self.used[i] = true;
        self.used[j] = true;
        self.arcs.push((i, j));
    }

    fn unplace(&mut self) -> Option<Arc> {
        let (i, j) = self.arcs.pop()?;
        self.used[i] = false;
        self.used[j] = false;
        Some((i, j))
    }

    /// Extends greedily to `k` arcs. Greedy completion fails only when no
    /// completion exists from the current prefix.
    fn fill(&mut self) -> bool {
        while self.arcs.len() < self.k {
            match self.next_arc(None) {
                Some(arc) => self.place(arc),
                None => return false,
            }
        }
        true
    }

    fn step(&mut self) -> bool {
        while let Some(last) = self.unplace() {
            if let Some(arc) = self.next_arc(Some(last)) {
                self.place(arc);
                if self.fill() {
                    return true;
                }
            }
        }
        false
    }
}

impl Iterator for Matchings {
    type Item = ArcDiagram;

    fn next(&mut self) -> Option<ArcDiagram> {
        let found = match self.state {
            MatchState::Done => return None,
            MatchState::Fresh => {
                self.state = MatchState::Running;
                2 * self.k <= self.m && self.fill()
            }
            MatchState::Running => self.step(),
        };
        if !found {
            self.state = MatchState::Done;
            return None;
        }
        Some(ArcDiagram::from_arcs(self.m, self.arcs.iter().copied()).expect("matching arcs are disjoint"))
    }
}

/// Every sequence of length `n` starting with 0 and drawn from `0..n`, in
/// lexicographic order. The brute-force candidate space for `S(n, k)`.
pub(crate) fn all_candidate_sequences(n: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut current = if n == 0 { None } else { Some(vec![0; n]) };
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let cur = current.as_mut().expect("checked above");
        match (1..n).rev().find(|&i| cur[i] + 1 < n) {
            Some(i) => {
                cur[i] += 1;
                cur[i + 1..].iter_mut().for_each(|v| *v = 0);
            }
            None => current = None,
        }
        Some(out)
    })
}

/// Objects of one cell. `P` and `CT` filter raw matchings/partitions by their
/// forbidden patterns; `S` walks the sequence conditions directly.
pub fn enumerate_class(c: ClassId) -> Box<dyn Iterator<Item = ClassObject>> {
    match c.class {
        Class::P => Box::new(
            all_partial_matchings(c.ground_size(), c.k)
                .filter(|d| patterns::avoids(d, &P_FORBIDDEN))
                .map(ClassObject::Diagram),
        ),
        Class::CT => Box::new(
            all_partitions(c.n)
                .filter(move |d| d.arc_count() == c.k && patterns::avoids(d, &CT_FORBIDDEN))
                .map(ClassObject::Diagram),
        ),
        Class::S => Box::new(pruned_sequences(c.n, c.k).into_iter().map(ClassObject::Seq)),
    }
}

/// Cardinality of one cell.
pub fn count_class(c: ClassId, mode: Mode) -> Count {
    match (mode, c.class) {
        (Mode::Filter, Class::S) => {
            let mut count = 0;
            all_candidate_sequences(c.n).filter(|x| c.contains_seq(x)).for_each(|_| bump(&mut count));
            count
        }
        (Mode::Filter, _) => {
            let mut count = 0;
            enumerate_class(c).for_each(|_| bump(&mut count));
            count
        }
        (Mode::Pruned, _) => pruned::count(c),
    }
}

/// Counts for `k = 0..n`.
pub fn count_row(class: Class, n: usize, mode: Mode) -> Result<Vec<Count>, ClassError> {
    (0..n).map(|k| ClassId::new(class, n, k).map(|c| count_class(c, mode))).collect()
}
