use crate::diagram::{ArcDiagram, VertexRole};
use crate::patterns::{self, CT_FORBIDDEN, P_FORBIDDEN};

use super::{require_ct, require_p, MapError};

/// Mutable arc structure over the original vertex ids of a diagram, with
/// deletions. Vertex order is id order among the live vertices.
struct Workspace {
    next: Vec<Option<usize>>,
    prev: Vec<Option<usize>>,
    alive: Vec<bool>,
}

impl Workspace {
    fn new(d: &ArcDiagram) -> Self {
        let size = d.ground_size() + 1;
        let mut ws = Self { next: vec![None; size], prev: vec![None; size], alive: vec![true; size] };
        ws.alive[0] = false;
        for &(i, j) in d.arcs() {
            ws.next[i] = Some(j);
            ws.prev[j] = Some(i);
        }
        ws
    }

    fn live(&self) -> impl Iterator<Item = usize> + '_ {
        (1..self.alive.len()).filter(|&v| self.alive[v])
    }

    fn following(&self, v: usize) -> Option<usize> {
        (v + 1..self.alive.len()).find(|&w| self.alive[w])
    }

    fn is_closer(&self, v: usize) -> bool {
        self.prev[v].is_some() && self.next[v].is_none()
    }

    fn is_singleton(&self, v: usize) -> bool {
        self.prev[v].is_none() && self.next[v].is_none()
    }

    /// Leftmost closer whose right neighbour opens an arc.
    fn leftmost_alignment(&self) -> Option<(usize, usize)> {
        self.live().filter(|&j| self.is_closer(j)).find_map(|j| {
            let after = self.following(j)?;
            self.next[after].is_some().then_some((j, after))
        })
    }

    fn consecutive_closers(&self) -> Option<(usize, usize)> {
        self.live().find_map(|v| {
            let w = self.following(v)?;
            (self.is_closer(v) && self.is_closer(w)).then_some((v, w))
        })
    }

    fn into_diagram(self) -> Result<ArcDiagram, MapError> {
        let mut relabel = vec![0; self.alive.len()];
        let mut size = 0;
        for v in self.live() {
            size += 1;
            relabel[v] = size;
        }
        let arcs = self.live().filter_map(|v| self.next[v].map(|w| (relabel[v], relabel[w])));
        ArcDiagram::from_arcs(size, arcs).map_err(|e| MapError::Invariant(e.to_string()))
    }
}

/// Sends a matching in `P(n+k-1, k)` to a partition in `CT(n, k)`.
///
/// Each neighbor alignment `(i, j), (j+1, l)` becomes the 2-path
/// `(i, j), (j, l)` with `j+1` deleted, leftmost first; then the singleton
/// following every closer but the last is deleted. For `k = 0` the
/// all-singleton diagram on `[n-1]` maps to the one on `[n]`.
pub fn reduce(m: &ArcDiagram) -> Result<ArcDiagram, MapError> {
    require_p(m)?;
    if m.arc_count() == 0 {
        return Ok(ArcDiagram::empty(m.ground_size() + 1));
    }
    let mut ws = Workspace::new(m);
    while let Some((j, opener)) = ws.leftmost_alignment() {
        let end = ws.next[opener].take().expect("alignment partner opens an arc");
        ws.next[j] = Some(end);
        ws.prev[end] = Some(j);
        ws.alive[opener] = false;
        if let Some((a, b)) = ws.consecutive_closers() {
            return Err(MapError::Invariant(format!("vertices {a} and {b} are consecutive closers")));
        }
    }

    let closers: Vec<usize> = ws.live().filter(|&v| ws.is_closer(v)).collect();
    let (_, rest) = closers.split_last().expect("k >= 1 leaves a closer");
    for &c in rest {
        match ws.following(c) {
            Some(s) if ws.is_singleton(s) => ws.alive[s] = false,
            other => {
                return Err(MapError::Invariant(format!(
                    "closer {c} is followed by {other:?}, not a singleton"
                )))
            }
        }
    }
    let p = ws.into_diagram()?;
    debug_assert!(patterns::avoids(&p, &CT_FORBIDDEN));
    Ok(p)
}

#[derive(Debug, Clone, Copy)]
enum Slot {
    Original(usize),
    /// Takes over the outgoing arc of a transient.
    Split(usize),
    Singleton,
}

/// Sends a partition in `CT(n, k)` to a matching in `P(n+k-1, k)`; inverse
/// of [`reduce`].
pub fn expand(p: &ArcDiagram) -> Result<ArcDiagram, MapError> {
    require_ct(p)?;
    let n = p.ground_size();
    if p.arc_count() == 0 {
        return Ok(ArcDiagram::empty(n - 1));
    }
    let last_closer = (1..=n).rev().find(|&v| p.role_unchecked(v) == VertexRole::Closer).expect("k >= 1");

    let mut slots = Vec::with_capacity(2 * n);
    for v in 1..=n {
        slots.push(Slot::Original(v));
        match p.role_unchecked(v) {
            VertexRole::Closer if v != last_closer => slots.push(Slot::Singleton),
            VertexRole::Transient => slots.push(Slot::Split(v)),
            _ => {}
        }
    }
    let mut original_pos = vec![0; n + 1];
    let mut split_pos = vec![0; n + 1];
    for (idx, slot) in slots.iter().enumerate() {
        match *slot {
            Slot::Original(v) => original_pos[v] = idx + 1,
            Slot::Split(v) => split_pos[v] = idx + 1,
            Slot::Singleton => {}
        }
    }
    let arcs = p.arcs().iter().map(|&(a, b)| {
        let from = if p.role_unchecked(a) == VertexRole::Transient { split_pos[a] } else { original_pos[a] };
        (from, original_pos[b])
    });
    let m = ArcDiagram::from_arcs(slots.len(), arcs).map_err(|e| MapError::Invariant(e.to_string()))?;
    debug_assert!(m.is_partial_matching() && patterns::avoids(&m, &P_FORBIDDEN));
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::{count_statistic, Statistic};

    fn d(s: &str) -> ArcDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn figure3() {
        let m = d("12;{1,6},{2,3},{4,12},{5,10},{7,8},{9},{11}");
        let p = reduce(&m).unwrap();
        assert_eq!(p, d("8;{1,5,6},{2,3,8},{4,7}"));
        assert_eq!(expand(&p).unwrap(), m);
        assert_eq!(count_statistic(&m, Statistic::NeighborAlignments), 2);
        assert_eq!(count_statistic(&p, Statistic::Transients), 2);
    }

    #[test]
    fn chain_of_alignments() {
        let m = ArcDiagram::from_arcs(6, [(1, 2), (3, 4), (5, 6)]).unwrap();
        let p = reduce(&m).unwrap();
        assert_eq!(p, d("4;{1,2,3,4}"));
        assert_eq!(expand(&p).unwrap(), m);
    }

    #[test]
    fn single_arc() {
        let m = d("2;{1,2}");
        assert_eq!(reduce(&m).unwrap(), m);
        assert_eq!(expand(&m).unwrap(), m);
    }

    #[test]
    fn no_arcs() {
        assert_eq!(reduce(&ArcDiagram::empty(0)).unwrap(), ArcDiagram::empty(1));
        assert_eq!(reduce(&ArcDiagram::empty(3)).unwrap(), ArcDiagram::empty(4));
        assert_eq!(expand(&ArcDiagram::empty(1)).unwrap(), ArcDiagram::empty(0));
        assert_eq!(expand(&ArcDiagram::empty(0)), Err(MapError::EmptyPartition));
    }

    #[test]
    fn rejects_out_of_class() {
        assert!(matches!(reduce(&d("4;{1,4},{2,3}")), Err(MapError::Forbidden { .. })));
        assert_eq!(reduce(&d("3;{1,2,3}")), Err(MapError::NotMatching(2)));
        let err = expand(&d("4;{1,3},{2,4}")).unwrap_err();
        assert_eq!(err.to_string(), "arcs (1, 3) and (2, 4) form a right-crossing");
    }
}
