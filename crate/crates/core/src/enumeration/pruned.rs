//! Backtracking enumerators that reject a partial object as soon as it
//! completes a forbidden arc pair or breaks a sequence condition.

use crate::diagram::{Arc, ArcDiagram};
use crate::patterns::{PatternKind, CT_FORBIDDEN, P_FORBIDDEN};

use super::{bump, Class, ClassId, ClassObject, Count, SeqS};

pub(super) fn count(c: ClassId) -> Count {
    let mut count = 0;
    match c.class {
        Class::S => walk_sequences(c.n, c.k, &mut |_| bump(&mut count)),
        Class::P | Class::CT => DiagramSearch::for_class(c).run(&mut |_| bump(&mut count)),
    }
    count
}

/// Members of a cell produced by backtracking, in search order.
pub fn pruned_members(c: ClassId) -> Vec<ClassObject> {
    match c.class {
        Class::S => pruned_sequences(c.n, c.k).into_iter().map(ClassObject::Seq).collect(),
        Class::P | Class::CT => {
            let mut out = Vec::new();
            let ground = c.ground_size();
            DiagramSearch::for_class(c).run(&mut |arcs| {
                let d = ArcDiagram::from_arcs(ground, arcs.iter().copied()).expect("search keeps paths disjoint");
                out.push(ClassObject::Diagram(d));
            });
            out
        }
    }
}

/// `S(n, k)` in lexicographic order.
pub fn pruned_sequences(n: usize, k: usize) -> Vec<SeqS> {
    let mut out = Vec::new();
    walk_sequences(n, k, &mut |x| out.push(SeqS::new_unchecked(x.to_vec())));
    out
}

fn walk_sequences(n: usize, k: usize, visit: &mut dyn FnMut(&[usize])) {
    if n == 0 || k >= n {
        return;
    }
    let mut x = Vec::with_capacity(n);
    x.push(0);
    extend_sequence(&mut x, n, n - k, 0, 1, visit);
}

fn extend_sequence(
    x: &mut Vec<usize>,
    n: usize,
    target_maxima: usize,
    max: usize,
    maxima: usize,
    visit: &mut dyn FnMut(&[usize]),
) {
    let remaining = n - x.len();
    if maxima > target_maxima || maxima + remaining < target_maxima {
        return;
    }
    if remaining == 0 {
        visit(x);
        return;
    }
    let prev = *x.last().expect("sequence starts with 0");
    for value in 0..=max + 1 {
        // Below the prefix maximum the sequence must strictly descend.
        if value < max && value >= prev {
            continue;
        }
        x.push(value);
        if value > max {
            extend_sequence(x, n, target_maxima, value, maxima + 1, visit);
        } else {
            extend_sequence(x, n, target_maxima, max, maxima, visit);
        }
        x.pop();
    }
}

/// Left-to-right scan over vertex positions. Each vertex may close one
/// pending arc and may open a new one (not both, for matchings).
struct DiagramSearch {
    ground: usize,
    arcs_wanted: usize,
    matching: bool,
    forbidden: &'static [PatternKind],
    pending: Vec<usize>,
    done: Vec<Arc>,
    opened: usize,
}

impl DiagramSearch {
    fn for_class(c: ClassId) -> Self {
        let (matching, forbidden): (bool, &'static [PatternKind]) = match c.class {
            Class::P => (true, &P_FORBIDDEN),
            Class::CT => (false, &CT_FORBIDDEN),
            Class::S => unreachable!("sequences are not diagrams"),
        };
        Self {
            ground: c.ground_size(),
            arcs_wanted: c.k,
            matching,
            forbidden,
            pending: Vec::new(),
            done: Vec::new(),
            opened: 0,
        }
    }

    fn run(mut self, visit: &mut dyn FnMut(&[Arc])) {
        self.position(1, visit);
    }

    fn feasible(&self, next: usize) -> bool {
        // Positions still to be decided, including `next`.
        let left = (self.ground + 1).saturating_sub(next);
        let to_open = self.arcs_wanted - self.opened;
        let needed = if self.matching { self.pending.len() + 2 * to_open } else { self.pending.len() + to_open };
        needed <= left
    }

    fn completes_forbidden(&self, arc: Arc) -> bool {
        self.done.iter().any(|&other| self.forbidden.iter().any(|kind| kind.matches(arc, other)))
    }

    fn position(&mut self, p: usize, visit: &mut dyn FnMut(&[Arc])) {
        if !self.feasible(p) {
            return;
        }
        if p > self.ground {
            if self.pending.is_empty() && self.opened == self.arcs_wanted {
                visit(&self.done);
            }
            return;
        }
        // p closes nothing.
        self.open_or_not(p, visit);
        // p closes one pending arc.
        for t in 0..self.pending.len() {
            let arc = (self.pending[t], p);
            if self.completes_forbidden(arc) {
                continue;
            }
            let opener = self.pending.remove(t);
            self.done.push(arc);
            if self.matching {
                self.position(p + 1, visit);
            } else {
                self.open_or_not(p, visit);
            }
            self.done.pop();
            self.pending.insert(t, opener);
        }
    }

    fn open_or_not(&mut self, p: usize, visit: &mut dyn FnMut(&[Arc])) {
        self.position(p + 1, visit);
        if self.opened < self.arcs_wanted {
            self.opened += 1;
            self.pending.push(p);
            self.position(p + 1, visit);
            self.pending.pop();
            self.opened -= 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{enumerate_class, Mode};
    use super::*;

    #[test]
    fn pruned_members_match_filtered_members() {
        for n in 1..=6 {
            for k in 0..n {
                for class in [Class::P, Class::CT, Class::S] {
                    let c = ClassId::new(class, n, k).unwrap();
                    let mut filtered: Vec<String> = enumerate_class(c).map(|o| o.to_string()).collect();
                    let mut pruned: Vec<String> = pruned_members(c).iter().map(|o| o.to_string()).collect();
                    filtered.sort();
                    pruned.sort();
                    assert_eq!(filtered, pruned, "{class}({n},{k})");
                    assert_eq!(super::super::count_class(c, Mode::Pruned), filtered.len() as Count);
                }
            }
        }
    }

    #[test]
    fn sequences_come_out_sorted() {
        let seqs = pruned_sequences(6, 3);
        assert!(seqs.windows(2).all(|w| w[0] < w[1]));
        assert!(pruned_sequences(3, 3).is_empty());
    }
}
