use std::collections::BTreeSet;

use crate::diagram::{ArcDiagram, VertexRole};
use crate::enumeration::SeqS;

use super::{require_p, LabeledDiagram, MapError};

/// `O(i)`: labels of the openers whose arcs close left of label `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpenerContext {
    pub label: usize,
    pub openers: BTreeSet<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaTrace {
    pub sequence: SeqS,
    /// `O(1), ..., O(n)`; the last entry holds every opener.
    pub contexts: Vec<OpenerContext>,
    /// `max(x_0..x_i)` for `i = 0..n`.
    pub prefix_max: Vec<usize>,
}

impl AlphaTrace {
    pub fn opener_set(&self, label: usize) -> &BTreeSet<usize> {
        &self.contexts[label - 1].openers
    }
}

pub fn alpha(m: &ArcDiagram) -> Result<SeqS, MapError> {
    alpha_traced(m).map(|t| t.sequence)
}

/// Runs the matching-to-sequence map and records the opener sets it walks
/// through. Checks `max(x_0..x_i) = i - |O(i+1)|` after every step.
pub fn alpha_traced(m: &ArcDiagram) -> Result<AlphaTrace, MapError> {
    require_p(m)?;
    let labeled = LabeledDiagram::new(m);
    let n = labeled.label_count() + 1;
    let ground = m.ground_size();

    // O(i) only grows: an arc joins once its closer lies left of label i.
    let mut contexts = Vec::with_capacity(n);
    let mut openers = BTreeSet::new();
    let mut arcs_by_closer: Vec<(usize, usize)> = m.arcs().iter().map(|&(o, c)| (c, o)).collect();
    arcs_by_closer.sort_unstable();
    let mut closed = arcs_by_closer.iter().peekable();
    for label in 1..n {
        let pos = labeled.position(label);
        while let Some(&(_, o)) = closed.next_if(|&&(c, _)| c < pos) {
            openers.insert(labeled.label(o).expect("openers carry labels"));
        }
        contexts.push(OpenerContext { label, openers: openers.clone() });
    }
    let all: BTreeSet<usize> = m.arcs().iter().map(|&(o, _)| labeled.label(o).expect("openers carry labels")).collect();
    contexts.push(OpenerContext { label: n, openers: all });

    let mut x = vec![0];
    let mut prefix_max = vec![0];
    let mut max = 0;
    for i in 1..n {
        let after = labeled.position(i) + 1;
        let value = if after <= ground && m.role_unchecked(after) == VertexRole::Closer {
            let opener = m.prev(after).expect("closers have an arc");
            let j = labeled.label(opener).expect("openers carry labels");
            let open_set = &contexts[i - 1].openers;
            let rank = (1..=i).filter(|l| !open_set.contains(l)).position(|l| l == j).ok_or_else(|| {
                MapError::Invariant(format!("opener label {j} not available at label {i}"))
            })?;
            rank
        } else {
            max + 1
        };
        x.push(value);
        max = max.max(value);
        prefix_max.push(max);
        let expected = i as isize - contexts[i].openers.len() as isize;
        if max as isize != expected {
            return Err(MapError::Invariant(format!(
                "after x_{i} the prefix maximum is {max}, expected i - |O(i+1)| = {expected}"
            )));
        }
    }
    let sequence = SeqS::new(x).map_err(|e| MapError::Invariant(format!("image is not in S: {e}")))?;
    Ok(AlphaTrace { sequence, contexts, prefix_max })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaInvTrace {
    pub matching: ArcDiagram,
    /// Vacant original vertices among `1..=i` after step `i`, for `i = 0..n`.
    pub vacant: Vec<usize>,
    /// `max(x_0..x_i)` for `i = 0..n`.
    pub prefix_max: Vec<usize>,
}

pub fn alpha_inv(x: &SeqS) -> Result<ArcDiagram, MapError> {
    alpha_inv_traced(x).map(|t| t.matching)
}

/// Builds the matching for `x`, checking after every step that the number
/// of vacant vertices among `1..=i` equals `max(x_0..x_i)`.
pub fn alpha_inv_traced(x: &SeqS) -> Result<AlphaInvTrace, MapError> {
    let x = x.values();
    let n = x.len();
    // closer_after[i] = opener (original vertex) of the arc whose closer
    // is inserted right after original vertex i.
    let mut closer_after = vec![None; n];
    let mut vacant_flags = vec![true; n];
    let mut vacant = vec![0];
    let mut prefix_max = vec![0];
    let mut max = 0;
    for i in 1..n {
        if x[i] == max + 1 {
            max += 1;
        } else {
            let opener = (1..=i).filter(|&v| vacant_flags[v]).nth(x[i]).ok_or_else(|| {
                MapError::Invariant(format!("no {}-th vacant vertex among 1..={i}", x[i] + 1))
            })?;
            vacant_flags[opener] = false;
            closer_after[i] = Some(opener);
        }
        let now_vacant = (1..=i).filter(|&v| vacant_flags[v]).count();
        if now_vacant != max {
            return Err(MapError::Invariant(format!(
                "after step {i} there are {now_vacant} vacant vertices but the prefix maximum is {max}"
            )));
        }
        vacant.push(now_vacant);
        prefix_max.push(max);
    }

    let mut position = vec![0; n];
    let mut arcs = Vec::new();
    let mut next = 1;
    for i in 1..n {
        position[i] = next;
        next += 1;
        if let Some(opener) = closer_after[i] {
            arcs.push((position[opener], next));
            next += 1;
        }
    }
    let matching = ArcDiagram::from_arcs(next - 1, arcs).map_err(|e| MapError::Invariant(e.to_string()))?;
    Ok(AlphaInvTrace { matching, vacant, prefix_max })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn figure1() -> ArcDiagram {
        "12;{1,6},{2,3},{4,12},{5,10},{7,8},{9},{11}".parse().unwrap()
    }

    fn seq(s: &str) -> SeqS {
        s.parse().unwrap()
    }

    #[test]
    fn figure1_sequence_and_opener_sets() {
        let t = alpha_traced(&figure1()).unwrap();
        assert_eq!(t.sequence, seq("01120210"));
        let expected: [&[usize]; 8] = [&[], &[], &[2], &[2], &[1, 2], &[1, 2, 5], &[1, 2, 4, 5], &[1, 2, 3, 4, 5]];
        for (i, want) in expected.iter().enumerate() {
            assert_eq!(t.opener_set(i + 1).iter().copied().collect::<Vec<_>>(), *want, "O({})", i + 1);
        }
    }

    #[test]
    fn small_hand_traces() {
        let single = ArcDiagram::from_arcs(2, [(1, 2)]).unwrap();
        assert_eq!(alpha(&single).unwrap(), seq("00"));
        assert_eq!(alpha(&ArcDiagram::empty(1)).unwrap(), seq("01"));
        assert_eq!(alpha(&ArcDiagram::empty(0)).unwrap(), seq("0"));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(alpha_inv(&seq("01120210")).unwrap(), figure1());
        assert_eq!(alpha_inv(&seq("0")).unwrap(), ArcDiagram::empty(0));
        assert_eq!(alpha_inv(&seq("00")).unwrap(), ArcDiagram::from_arcs(2, [(1, 2)]).unwrap());
    }

    #[test]
    fn figure2_staging() {
        // Vacant counts after each step of building 01120210.
        let t = alpha_inv_traced(&seq("01120210")).unwrap();
        assert_eq!(t.vacant, [0, 1, 1, 2, 2, 2, 2, 2]);
        assert_eq!(t.vacant, t.prefix_max);
    }

    #[test]
    fn rejects_out_of_class() {
        let rn = ArcDiagram::from_arcs(4, [(1, 4), (2, 3)]).unwrap();
        assert!(matches!(alpha(&rn), Err(MapError::Forbidden { .. })));
        let cross2 = ArcDiagram::from_arcs(5, [(1, 3), (2, 5)]).unwrap();
        assert!(matches!(alpha(&cross2), Err(MapError::Forbidden { first: (1, 3), second: (2, 5), .. })));
        let path = ArcDiagram::from_arcs(3, [(1, 2), (2, 3)]).unwrap();
        assert_eq!(alpha(&path), Err(MapError::NotMatching(2)));
    }
}
