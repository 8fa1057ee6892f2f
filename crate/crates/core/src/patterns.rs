//! Neighbor patterns on pairs of arcs: crossings, nestings, their left/right
//! and k-bounded variants, neighbor alignments and 2-paths.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::diagram::{Arc, ArcDiagram, VertexRole};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PatternKind {
    Crossing,
    Nesting,
    LeftCrossing,
    RightCrossing,
    LeftNesting,
    RightNesting,
    KLeftCrossing(usize),
    KRightCrossing(usize),
    KLeftNesting(usize),
    KRightNesting(usize),
    NeighborAlignment,
    TwoPath,
}

/// The two patterns avoided by the matchings of the class `P`.
pub const P_FORBIDDEN: [PatternKind; 2] = [PatternKind::KRightCrossing(2), PatternKind::RightNesting];

/// The pattern avoided by the partitions of the class `CT`.
pub const CT_FORBIDDEN: [PatternKind; 1] = [PatternKind::RightCrossing];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Shape {
    Crossing,
    Nesting,
}

/// Orders the pair by opener and reports whether it crosses or nests.
/// Pairs sharing an endpoint, or lying side by side, are neither.
fn shape(a: Arc, b: Arc) -> Option<(Shape, Arc, Arc)> {
    let (first, second) = if a <= b { (a, b) } else { (b, a) };
    let ((i1, j1), (i2, j2)) = (first, second);
    if i1 < i2 && i2 < j1 && j1 < j2 {
        Some((Shape::Crossing, first, second))
    } else if i1 < i2 && i2 < j2 && j2 < j1 {
        Some((Shape::Nesting, first, second))
    } else {
        None
    }
}

impl PatternKind {
    /// Whether the unordered pair `{a, b}` forms this pattern.
    pub fn matches(self, a: Arc, b: Arc) -> bool {
        use PatternKind::*;
        match self {
            NeighborAlignment => b.0 == a.1 + 1 || a.0 == b.1 + 1,
            TwoPath => (a.1 == b.0 && a.0 < a.1 && b.0 < b.1) || (b.1 == a.0 && b.0 < b.1 && a.0 < a.1),
            _ => {
                let Some((shape, (i1, j1), (i2, j2))) = shape(a, b) else {
                    return false;
                };
                match (self, shape) {
                    (Crossing, Shape::Crossing) | (Nesting, Shape::Nesting) => true,
                    (LeftCrossing, Shape::Crossing) | (LeftNesting, Shape::Nesting) => i2 == i1 + 1,
                    (RightCrossing, Shape::Crossing) => j2 == j1 + 1,
                    (RightNesting, Shape::Nesting) => j1 == j2 + 1,
                    (KLeftCrossing(k), Shape::Crossing) | (KLeftNesting(k), Shape::Nesting) => i2 - i1 <= k,
                    (KRightCrossing(k), Shape::Crossing) => j2 - j1 <= k,
                    (KRightNesting(k), Shape::Nesting) => j1 - j2 <= k,
                    _ => false,
                }
            }
        }
    }
}

/// Free-function form of [`PatternKind::matches`].
pub fn matches(a: Arc, b: Arc, kind: PatternKind) -> bool {
    kind.matches(a, b)
}

/// All arc pairs of `d` forming `kind`, each with the smaller opener first,
/// in lexicographic order.
pub fn find_patterns(d: &ArcDiagram, kind: PatternKind) -> Vec<(Arc, Arc)> {
    let arcs = d.arcs();
    let mut found = Vec::new();
    for (x, &a) in arcs.iter().enumerate() {
        for &b in &arcs[x + 1..] {
            if kind.matches(a, b) {
                found.push((a, b));
            }
        }
    }
    found
}

/// The first pair (in [`find_patterns`] order) forming any of `kinds`.
pub fn first_violation(d: &ArcDiagram, kinds: &[PatternKind]) -> Option<(PatternKind, Arc, Arc)> {
    let arcs = d.arcs();
    for (x, &a) in arcs.iter().enumerate() {
        for &b in &arcs[x + 1..] {
            if let Some(&kind) = kinds.iter().find(|k| k.matches(a, b)) {
                return Some((kind, a, b));
            }
        }
    }
    None
}

pub fn avoids(d: &ArcDiagram, kinds: &[PatternKind]) -> bool {
    first_violation(d, kinds).is_none()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Statistic {
    NeighborAlignments,
    Transients,
}

pub fn count_statistic(d: &ArcDiagram, stat: Statistic) -> usize {
    match stat {
        Statistic::NeighborAlignments => {
            // Arcs are sorted by opener, so an alignment partner is found by
            // looking up which vertex opens at `closer + 1`.
            d.arcs().iter().filter(|&&(_, j)| d.next(j + 1).is_some()).count()
        }
        Statistic::Transients => d.roles().filter(|&r| r == VertexRole::Transient).count(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown pattern kind '{0}'")]
pub struct UnknownPattern(pub String);

impl fmt::Display for PatternKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use PatternKind::*;
        match self {
            Crossing => f.write_str("crossing"),
            Nesting => f.write_str("nesting"),
            LeftCrossing => f.write_str("left-crossing"),
            RightCrossing => f.write_str("right-crossing"),
            LeftNesting => f.write_str("left-nesting"),
            RightNesting => f.write_str("right-nesting"),
            KLeftCrossing(k) => write!(f, "k-left-crossing:{k}"),
            KRightCrossing(k) => write!(f, "k-right-crossing:{k}"),
            KLeftNesting(k) => write!(f, "k-left-nesting:{k}"),
            KRightNesting(k) => write!(f, "k-right-nesting:{k}"),
            NeighborAlignment => f.write_str("neighbor-alignment"),
            TwoPath => f.write_str("two-path"),
        }
    }
}

impl FromStr for PatternKind {
    type Err = UnknownPattern;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        use PatternKind::*;
        let unknown = || UnknownPattern(s.to_string());
        if let Some((family, k)) = s.split_once(':') {
            let k: usize = k.parse().map_err(|_| unknown())?;
            if k == 0 {
                return Err(unknown());
            }
            return match family {
                "k-left-crossing" => Ok(KLeftCrossing(k)),
                "k-right-crossing" => Ok(KRightCrossing(k)),
                "k-left-nesting" => Ok(KLeftNesting(k)),
                "k-right-nesting" => Ok(KRightNesting(k)),
                _ => Err(unknown()),
            };
        }
        Ok(match s {
            "crossing" => Crossing,
            "nesting" => Nesting,
            "left-crossing" => LeftCrossing,
            "right-crossing" => RightCrossing,
            "left-nesting" => LeftNesting,
            "right-nesting" => RightNesting,
            "neighbor-alignment" => NeighborAlignment,
            "two-path" => TwoPath,
            _ => return Err(unknown()),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::PatternKind::*;
    use super::*;

    fn figure1_matching() -> ArcDiagram {
        "12;{1,6},{2,3},{4,12},{5,10},{7,8},{9},{11}".parse().unwrap()
    }

    fn figure3_partition() -> ArcDiagram {
        "8;{1,5,6},{2,3,8},{4,7}".parse().unwrap()
    }

    #[test]
    fn pair_examples() {
        assert!(matches((1, 3), (2, 4), RightCrossing));
        assert!(matches((1, 4), (2, 3), RightNesting));
        assert!(matches((1, 3), (2, 5), KRightCrossing(2)));
        assert!(!matches((1, 3), (2, 5), RightCrossing));
        assert!(matches((5, 10), (7, 8), KRightNesting(2)));
        assert!(!matches((5, 10), (7, 8), RightNesting));
        assert!(matches((2, 3), (4, 12), NeighborAlignment));
        assert!(matches((4, 12), (2, 3), NeighborAlignment));
        assert!(matches((3, 8), (2, 3), TwoPath));
        assert!(!matches((1, 2), (3, 4), Crossing));
        assert!(!matches((1, 3), (3, 5), Crossing));
        assert!(matches((1, 3), (2, 4), LeftCrossing));
        assert!(matches((1, 5), (2, 3), LeftNesting));
    }

    #[test]
    fn find_patterns_examples() {
        assert_eq!(
            find_patterns(&figure1_matching(), NeighborAlignment),
            vec![((1, 6), (7, 8)), ((2, 3), (4, 12))]
        );
        assert_eq!(
            find_patterns(&figure3_partition(), TwoPath),
            vec![((1, 5), (5, 6)), ((2, 3), (3, 8))]
        );
        let one = ArcDiagram::from_arcs(4, [(1, 4)]).unwrap();
        for kind in [Crossing, Nesting, NeighborAlignment, TwoPath, KRightCrossing(3)] {
            assert!(find_patterns(&one, kind).is_empty());
        }
    }

    #[test]
    fn avoids_examples() {
        assert!(avoids(&figure1_matching(), &P_FORBIDDEN));
        let crossing = ArcDiagram::from_arcs(4, [(1, 3), (2, 4)]).unwrap();
        assert!(!avoids(&crossing, &CT_FORBIDDEN));
        assert_eq!(first_violation(&crossing, &CT_FORBIDDEN), Some((RightCrossing, (1, 3), (2, 4))));
        assert!(avoids(&ArcDiagram::empty(5), &[Crossing, Nesting, TwoPath]));
    }

    #[test]
    fn statistics() {
        assert_eq!(count_statistic(&figure1_matching(), Statistic::NeighborAlignments), 2);
        assert_eq!(count_statistic(&figure3_partition(), Statistic::Transients), 2);
        let empty = ArcDiagram::empty(0);
        assert_eq!(count_statistic(&empty, Statistic::NeighborAlignments), 0);
        assert_eq!(count_statistic(&empty, Statistic::Transients), 0);
    }

    #[test]
    fn alignment_count_agrees_with_find_patterns() {
        for d in crate::enumeration::all_partitions(6) {
            assert_eq!(
                count_statistic(&d, Statistic::NeighborAlignments),
                find_patterns(&d, NeighborAlignment).len(),
                "{d}"
            );
        }
    }

    fn all_arcs(max: usize) -> Vec<Arc> {
        (1..=max).flat_map(|i| (i + 1..=max).map(move |j| (i, j))).collect()
    }

    fn kinds() -> Vec<PatternKind> {
        let mut v = vec![Crossing, Nesting, LeftCrossing, RightCrossing, LeftNesting, RightNesting, NeighborAlignment, TwoPath];
        for k in 1..=4 {
            v.extend([KLeftCrossing(k), KRightCrossing(k), KLeftNesting(k), KRightNesting(k)]);
        }
        v
    }

    #[test]
    fn symmetric_in_arguments() {
        let arcs = all_arcs(8);
        for kind in kinds() {
            for &a in &arcs {
                for &b in &arcs {
                    assert_eq!(kind.matches(a, b), kind.matches(b, a), "{kind} {a:?} {b:?}");
                }
            }
        }
    }

    #[test]
    fn k_equals_one_and_refinement_chains() {
        let arcs = all_arcs(8);
        let families: [(PatternKind, fn(usize) -> PatternKind); 4] = [
            (LeftCrossing, KLeftCrossing),
            (RightCrossing, KRightCrossing),
            (LeftNesting, KLeftNesting),
            (RightNesting, KRightNesting),
        ];
        for &a in &arcs {
            for &b in &arcs {
                for (plain, family) in families {
                    assert_eq!(plain.matches(a, b), family(1).matches(a, b));
                    for k in 1..8 {
                        if family(k).matches(a, b) {
                            assert!(family(k + 1).matches(a, b));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn consecutive_closers_force_right_pattern() {
        for m in 0..=8 {
            for d in crate::enumeration::all_partitions(m).filter(|d| d.is_partial_matching()) {
                for j in 1..m {
                    let (Some(a), Some(b)) = (d.prev(j), d.prev(j + 1)) else { continue };
                    let (a, b) = ((a, j), (b, j + 1));
                    assert!(RightCrossing.matches(a, b) || RightNesting.matches(a, b), "{d}");
                }
            }
        }
    }

    #[test]
    fn names_round_trip() {
        for kind in kinds() {
            assert_eq!(kind.to_string().parse::<PatternKind>(), Ok(kind));
        }
        assert_eq!("k-right-crossing:2".parse(), Ok(KRightCrossing(2)));
        assert!("k-right-crossing:0".parse::<PatternKind>().is_err());
        assert!("sideways".parse::<PatternKind>().is_err());
    }
}
