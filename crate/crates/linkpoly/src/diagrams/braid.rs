//! Link diagrams from braid words.
//!
//! A word on `k` strands is a list of signed generator positions; the
//! closure connects each strand's top back to its bottom around the
//! right side. Crossing darts sit at compass positions with rotation
//! `(SW, SE, NE, NW)` counterclockwise; a positive generator crosses the
//! strand arriving from the lower left over the one from the lower
//! right. Strands that meet no crossing close into free loops.

use std::collections::BTreeMap;

use super::link::{LinkDiagram, Orientation};
use super::map::{Dart, FreeLoop, PlanarMap};

/// One letter of a braid word: generator position (1-based, between
/// strand `pos` and `pos+1`) and crossing sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BraidLetter {
    pub pos: usize,
    pub positive: bool,
}

pub fn letter(pos: usize, positive: bool) -> BraidLetter {
    BraidLetter { pos, positive }
}

/// Parse a compact braid word like `"1 -2 1"` (signed generator indices).
pub fn parse_word(s: &str) -> Option<Vec<BraidLetter>> {
    s.split_whitespace()
        .map(|t| {
            let v: i32 = t.parse().ok()?;
            if v == 0 {
                return None;
            }
            Some(BraidLetter { pos: v.unsigned_abs() as usize, positive: v > 0 })
        })
        .collect()
}

/// Close the braid `word` on `strands` strands into a link diagram.
/// The result carries the all-strands-upward orientation; callers that
/// want an unoriented diagram can drop it.
pub fn braid_closure(strands: usize, word: &[BraidLetter]) -> LinkDiagram {
    assert!(strands >= 1);
    for l in word {
        assert!(l.pos >= 1 && l.pos < strands, "generator out of range");
    }
    let mut cycles: Vec<Vec<Dart>> = Vec::new();
    let mut edges: Vec<(Dart, Dart)> = Vec::new();
    let mut over: BTreeMap<Dart, Dart> = BTreeMap::new();
    let mut outs: Orientation = Orientation::new();

    // Per position: the dart currently heading up, and the dart at the
    // very bottom waiting for the closure arc.
    let mut top: Vec<Option<Dart>> = vec![None; strands + 1];
    let mut bottom: Vec<Option<Dart>> = vec![None; strands + 1];

    for (j, l) in word.iter().enumerate() {
        let base = (j as Dart) * 4;
        let (sw, se, ne, nw) = (base + 1, base + 2, base + 3, base + 4);
        cycles.push(vec![sw, se, ne, nw]);
        over.insert(sw, if l.positive { sw } else { se });
        outs.insert(ne);
        outs.insert(nw);
        for (leg, p) in [(sw, l.pos), (se, l.pos + 1)] {
            match top[p] {
                Some(t) => edges.push((t, leg)),
                None => bottom[p] = Some(leg),
            }
        }
        top[l.pos] = Some(nw);
        top[l.pos + 1] = Some(ne);
    }

    let mut free_loops = Vec::new();
    let mut outer_dart = None;
    for p in 1..=strands {
        match (top[p], bottom[p]) {
            (Some(t), Some(b)) => {
                edges.push((t, b));
                if outer_dart.is_none() {
                    outer_dart = Some(b);
                }
            }
            (None, None) => {
                // A strand with no crossings: an upward column closed
                // around the right runs clockwise.
                free_loops.push(FreeLoop::with_sign(-1));
            }
            _ => unreachable!(),
        }
    }

    let outers = outer_dart.into_iter().collect();
    let map = PlanarMap::from_cycles(&cycles, &edges, outers, free_loops);
    LinkDiagram::new(map, over, Some(outs))
}

/// Standard small diagrams used throughout the tests and the corpus.
pub mod zoo {
    use super::*;

    pub fn unknot() -> LinkDiagram {
        let mut ld = LinkDiagram::unlink(1);
        ld.map.free_loops[0].sign = Some(1);
        ld.orientation = Some(Orientation::new());
        ld
    }

    pub fn unknot_kink(positive: bool) -> LinkDiagram {
        braid_closure(2, &[letter(1, positive)])
    }

    pub fn unlink2() -> LinkDiagram {
        LinkDiagram::unlink(2)
    }

    pub fn hopf(positive: bool) -> LinkDiagram {
        braid_closure(2, &[letter(1, positive); 2])
    }

    pub fn trefoil(positive: bool) -> LinkDiagram {
        braid_closure(2, &[letter(1, positive); 3])
    }

    pub fn figure_eight() -> LinkDiagram {
        braid_closure(
            3,
            &[letter(1, true), letter(2, false), letter(1, true), letter(2, false)],
        )
    }

    /// Borromean rings: six crossings, three components, every face of
    /// the underlying 4-valent shadow a triangle.
    pub fn borromean() -> LinkDiagram {
        braid_closure(
            3,
            &[
                letter(1, true),
                letter(2, false),
                letter(1, true),
                letter(2, false),
                letter(1, true),
                letter(2, false),
            ],
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closures_validate() {
        for (k, w) in [
            (2, vec![letter(1, true)]),
            (2, vec![letter(1, true), letter(1, true)]),
            (3, vec![letter(1, true), letter(2, false), letter(1, true), letter(2, false)]),
        ] {
            let ld = braid_closure(k, &w);
            let rep = ld.validate();
            assert!(rep.is_valid(), "{:?}", rep.violations);
        }
    }

    #[test]
    fn writhe_of_standard_diagrams() {
        assert_eq!(zoo::hopf(true).writhe().unwrap(), 2);
        assert_eq!(zoo::hopf(false).writhe().unwrap(), -2);
        assert_eq!(zoo::trefoil(true).writhe().unwrap(), 3);
        assert_eq!(zoo::figure_eight().writhe().unwrap(), 0);
        assert_eq!(zoo::unknot_kink(true).writhe().unwrap(), 1);
    }

    #[test]
    fn component_counts() {
        assert_eq!(zoo::hopf(true).num_link_components(), 2);
        assert_eq!(zoo::trefoil(true).num_link_components(), 1);
        assert_eq!(zoo::borromean().num_link_components(), 3);
        let split = braid_closure(3, &[letter(1, true)]);
        assert_eq!(split.num_link_components(), 2);
        assert_eq!(split.map.free_loops.len(), 1);
    }
}
