//! Decorated planar maps: link diagrams (4-valent maps with over-strand
//! data), 4-valent rigid-vertex plane graphs, and trivalent classic
//! graphs with thick/common edges.
//!
//! The crossing sign convention, fixed once for the whole crate: a
//! crossing is *positive* when the outgoing under dart is the
//! counterclockwise neighbor of the outgoing over dart. Equivalently,
//! rotating the over-strand direction counterclockwise by a quarter turn
//! yields the under-strand direction.

use std::collections::{BTreeMap, BTreeSet};

use super::map::{Dart, EdgeId, PlanarMap, ValidationReport, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error("diagram is not oriented")]
    NotOriented,
    #[error("invalid diagram: {0}")]
    Invalid(String),
    #[error("vertex {0} is not a crossing")]
    NotACrossing(VertexId),
    #[error("inconsistent orientation at dart {0}")]
    BadOrientation(Dart),
}

/// Per-edge directions, stored as the set of *outgoing* darts: dart `d`
/// is in the set iff its edge is directed away from `d`'s vertex along
/// `d`. Every edge has exactly one of its two darts in the set.
pub type Orientation = BTreeSet<Dart>;

pub fn orientation_is_complete(map: &PlanarMap, outs: &Orientation) -> bool {
    map.edges()
        .iter()
        .all(|&(x, y)| outs.contains(&x) != outs.contains(&y))
}

/// A link diagram: a 4-valent planar map plus, per crossing, the dart
/// pair of the over-strand, and an optional orientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkDiagram {
    pub map: PlanarMap,
    /// One over dart per crossing (the over pair is `{d, sigma^2(d)}`),
    /// normalized to the smaller dart of the pair.
    pub over: BTreeMap<VertexId, Dart>,
    pub orientation: Option<Orientation>,
}

impl LinkDiagram {
    pub fn new(
        map: PlanarMap,
        over: BTreeMap<VertexId, Dart>,
        orientation: Option<Orientation>,
    ) -> Self {
        let mut ld = LinkDiagram { map, over, orientation };
        ld.normalize_over();
        ld
    }

    /// A diagram of `n` disjoint crossing-free circles.
    pub fn unlink(n: usize) -> Self {
        let mut map = PlanarMap::default();
        map.free_loops = (0..n).map(|_| super::map::FreeLoop::unoriented()).collect();
        LinkDiagram { map, over: BTreeMap::new(), orientation: None }
    }

    fn normalize_over(&mut self) {
        let map = &self.map;
        let over = std::mem::take(&mut self.over);
        self.over = over
            .into_values()
            .map(|d| (map.vertex_of(d), d.min(map.sigma_pow(d, 2))))
            .collect();
    }

    pub fn crossings(&self) -> Vec<VertexId> {
        self.map.vertices()
    }

    pub fn num_crossings(&self) -> usize {
        self.map.num_darts() / 4
    }

    pub fn over_dart(&self, v: VertexId) -> Dart {
        self.over[&v]
    }

    pub fn over_pair(&self, v: VertexId) -> (Dart, Dart) {
        let d = self.over[&v];
        (d, self.map.sigma_pow(d, 2))
    }

    pub fn is_over(&self, d: Dart) -> bool {
        let v = self.map.vertex_of(d);
        let (a, b) = self.over_pair(v);
        d == a || d == b
    }

    pub fn is_out(&self, d: Dart) -> Result<bool, DiagramError> {
        let o = self.orientation.as_ref().ok_or(DiagramError::NotOriented)?;
        Ok(o.contains(&d))
    }

    /// Sign of an oriented crossing: +1 iff the outgoing under dart is
    /// `sigma` of the outgoing over dart.
    pub fn crossing_sign(&self, v: VertexId) -> Result<i8, DiagramError> {
        let outs = self.orientation.as_ref().ok_or(DiagramError::NotOriented)?;
        crossing_sign_with(&self.map, self.over[&v], outs)
    }

    /// Writhe: positive minus negative crossings.
    pub fn writhe(&self) -> Result<i64, DiagramError> {
        let mut w = 0i64;
        for v in self.crossings() {
            w += self.crossing_sign(v)? as i64;
        }
        Ok(w)
    }

    /// Self-crossing sign of a kink, independent of any orientation: the
    /// loop edge pairs rotation-consecutive darts `(x, sigma(x))`, and
    /// the kink is positive iff `sigma(x)` lies on the over strand.
    pub fn kink_sign(&self, loop_first: Dart) -> i8 {
        let x = loop_first;
        debug_assert_eq!(self.map.alpha(x), self.map.sigma(x));
        if self.is_over(self.map.sigma(x)) {
            1
        } else {
            -1
        }
    }

    pub fn validate(&self) -> ValidationReport {
        let mut rep = self.map.validate(Some(4));
        for (&v, &d) in &self.over {
            if !self.map.contains_dart(d) {
                rep.violations.push(format!("over dart {d} not in map"));
            } else if self.map.vertex_of(d) != v {
                rep.violations
                    .push(format!("over dart {d} recorded at wrong vertex {v}"));
            }
        }
        for v in self.crossings() {
            if !self.over.contains_key(&v) {
                rep.violations.push(format!("crossing {v} has no over-strand data"));
            }
        }
        if let Some(outs) = &self.orientation {
            if !orientation_is_complete(&self.map, outs) {
                rep.violations.push("orientation does not direct every edge exactly once".into());
            } else {
                // Each strand must flow through every crossing: one dart of
                // each opposite pair out, the other in.
                for v in self.crossings() {
                    let d = self.over[&v];
                    for s in [d, self.map.sigma(d)] {
                        let opposite = self.map.sigma_pow(s, 2);
                        if outs.contains(&s) == outs.contains(&opposite) {
                            rep.violations.push(format!(
                                "strand through crossing {v} does not flow (darts {s},{opposite})"
                            ));
                        }
                    }
                }
            }
            for l in &self.map.free_loops {
                if l.sign.is_none() {
                    rep.violations.push("oriented diagram has an unoriented free loop".into());
                }
            }
        }
        rep
    }

    /// Forget over/under, keeping the underlying 4-valent graph.
    pub fn shadow(&self) -> FourValentGraph {
        FourValentGraph { map: self.map.clone(), orientation: self.orientation.clone() }
    }

    /// Strand components: closed curves through the crossings, plus free
    /// loops. Returns the dart sets of the curve components.
    pub fn strand_components(&self) -> Vec<Vec<Dart>> {
        strand_components_of(&self.map)
    }

    pub fn num_link_components(&self) -> usize {
        self.strand_components().len() + self.map.free_loops.len()
    }
}

pub(crate) fn crossing_sign_with(
    map: &PlanarMap,
    over_dart: Dart,
    outs: &Orientation,
) -> Result<i8, DiagramError> {
    let (o1, o2) = (over_dart, map.sigma_pow(over_dart, 2));
    let o_out = if outs.contains(&o1) {
        o1
    } else if outs.contains(&o2) {
        o2
    } else {
        return Err(DiagramError::BadOrientation(o1));
    };
    let u1 = map.sigma(o_out);
    let u2 = map.sigma_pow(o_out, 3);
    if outs.contains(&u1) && !outs.contains(&u2) {
        Ok(1)
    } else if outs.contains(&u2) && !outs.contains(&u1) {
        Ok(-1)
    } else {
        Err(DiagramError::BadOrientation(u1))
    }
}

/// Walk the strands of a 4-valent map (opposite darts belong to one
/// strand) and return the closed curves as dart lists in traversal order.
pub(crate) fn strand_components_of(map: &PlanarMap) -> Vec<Vec<Dart>> {
    let mut seen: BTreeSet<Dart> = BTreeSet::new();
    let mut out = Vec::new();
    for d in map.darts() {
        if seen.contains(&d) {
            continue;
        }
        // Follow the strand: leave along d, arrive at alpha(d), pass
        // straight through to the opposite dart.
        let mut curve = Vec::new();
        let mut x = d;
        loop {
            curve.push(x);
            seen.insert(x);
            seen.insert(map.alpha(x));
            x = map.sigma_pow(map.alpha(x), 2);
            if x == d {
                break;
            }
        }
        out.push(curve);
    }
    out
}

/// A 4-valent rigid-vertex plane graph. When oriented, every vertex must
/// be crossing-like: both strands flow through it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourValentGraph {
    pub map: PlanarMap,
    pub orientation: Option<Orientation>,
}

impl FourValentGraph {
    pub fn free_loop() -> Self {
        let mut map = PlanarMap::default();
        map.free_loops.push(super::map::FreeLoop::unoriented());
        FourValentGraph { map, orientation: None }
    }

    pub fn vertices(&self) -> Vec<VertexId> {
        self.map.vertices()
    }

    pub fn num_vertices(&self) -> usize {
        self.map.num_darts() / 4
    }

    pub fn validate(&self) -> ValidationReport {
        let mut rep = self.map.validate(Some(4));
        if let Some(outs) = &self.orientation {
            if !orientation_is_complete(&self.map, outs) {
                rep.violations.push("orientation does not direct every edge exactly once".into());
            } else {
                for v in self.vertices() {
                    for s in [v, self.map.sigma(v)] {
                        let opposite = self.map.sigma_pow(s, 2);
                        if outs.contains(&s) == outs.contains(&opposite) {
                            rep.violations.push(format!(
                                "vertex {v} is not crossing-like oriented"
                            ));
                            break;
                        }
                    }
                }
            }
            for l in &self.map.free_loops {
                if l.sign.is_none() {
                    rep.violations.push("oriented graph has an unoriented free loop".into());
                }
            }
        }
        rep
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeKind {
    Thick,
    Common,
}

/// An oriented trivalent classic graph: thick (color-2) and common
/// (color-1) edges with exactly one thick edge at each vertex.
#[derive(Debug, Clone)]
pub struct TrivalentGraph {
    pub map: PlanarMap,
    pub thick: BTreeSet<EdgeId>,
    pub orientation: Orientation,
}

impl TrivalentGraph {
    pub fn is_thick(&self, d: Dart) -> bool {
        self.thick.contains(&self.map.edge_of(d))
    }

    pub fn validate(&self) -> ValidationReport {
        let mut rep = self.map.validate(Some(3));
        for v in self.map.vertices() {
            let cyc = self.map.vertex_cycle(v);
            let thick: Vec<Dart> = cyc.iter().copied().filter(|&d| self.is_thick(d)).collect();
            if thick.len() != 1 {
                rep.violations.push(format!(
                    "vertex {v} has {} thick edge ends, expected exactly 1",
                    thick.len()
                ));
            }
        }
        for &e in &self.thick {
            if self.map.contains_dart(e) && self.map.vertex_of(e) == self.map.vertex_of(self.map.alpha(e)) {
                rep.violations.push(format!("thick edge {e} is a loop"));
            }
        }
        if !orientation_is_complete(&self.map, &self.orientation) {
            rep.violations.push("orientation does not direct every edge exactly once".into());
        } else {
            // Classic-graph flow: the thick edge absorbs or emits both
            // common edges at each vertex.
            for v in self.map.vertices() {
                let cyc = self.map.vertex_cycle(v);
                let thick_out = cyc
                    .iter()
                    .find(|&&d| self.is_thick(d))
                    .map(|&d| self.orientation.contains(&d));
                if let Some(t_out) = thick_out {
                    for &d in cyc.iter().filter(|&&d| !self.is_thick(d)) {
                        if self.orientation.contains(&d) == t_out {
                            rep.violations.push(format!(
                                "vertex {v}: common edge dart {d} flows with the thick edge"
                            ));
                        }
                    }
                }
            }
        }
        rep
    }

    /// Contract every thick edge, merging its two trivalent endpoints
    /// into one crossing-like 4-valent vertex. The rotation of the merged
    /// vertex follows the planar embedding; free loops are untouched.
    pub fn contract_thick_edges(&self) -> Result<FourValentGraph, DiagramError> {
        let mut cycles: BTreeMap<VertexId, Vec<Dart>> = BTreeMap::new();
        for v in self.map.vertices() {
            cycles.insert(v, self.map.vertex_cycle(v));
        }
        let mut edges: Vec<(Dart, Dart)> = Vec::new();
        let mut thick_pairs = Vec::new();
        for &(x, y) in &self.map.edges() {
            if self.thick.contains(&self.map.edge_of(x)) {
                if self.map.vertex_of(x) == self.map.vertex_of(y) {
                    return Err(DiagramError::Invalid(format!("thick edge {x} is a loop")));
                }
                thick_pairs.push((x, y));
            } else {
                edges.push((x, y));
            }
        }
        let mut merged: Vec<Vec<Dart>> = Vec::new();
        let mut consumed: BTreeSet<VertexId> = BTreeSet::new();
        for (x, y) in thick_pairs {
            let vx = self.map.vertex_of(x);
            let vy = self.map.vertex_of(y);
            if consumed.contains(&vx) || consumed.contains(&vy) {
                return Err(DiagramError::Invalid(
                    "thick edges share a vertex".into(),
                ));
            }
            consumed.insert(vx);
            consumed.insert(vy);
            // Rotation after contraction: the non-thick darts of the first
            // endpoint in order after the thick dart, then those of the
            // second endpoint after its thick dart.
            let after = |cyc: &Vec<Dart>, t: Dart| -> Vec<Dart> {
                let i = cyc.iter().position(|&d| d == t).unwrap();
                (1..cyc.len()).map(|k| cyc[(i + k) % cyc.len()]).collect()
            };
            let mut cyc = after(&cycles[&vx], x);
            cyc.extend(after(&cycles[&vy], y));
            merged.push(cyc);
        }
        for (v, cyc) in &cycles {
            if !consumed.contains(v) {
                merged.push(cyc.clone());
            }
        }
        let mut outers: Vec<Dart> = self
            .map
            .outers
            .iter()
            .copied()
            .filter(|&d| !self.thick.contains(&self.map.edge_of(d)))
            .collect();
        if outers.is_empty() {
            if let Some(&(x, _)) = edges.first() {
                outers.push(x);
            }
        }
        let map = PlanarMap::from_cycles(&merged, &edges, outers, self.map.free_loops.clone());
        let orientation: Orientation = self
            .orientation
            .iter()
            .copied()
            .filter(|d| map.contains_dart(*d))
            .collect();
        Ok(FourValentGraph { map, orientation: Some(orientation) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::map::FreeLoop;

    /// A theta-like classic graph: one thick edge, two common edges
    /// doubling back between the same two vertices.
    #[test]
    fn smallest_contraction() {
        // Vertices 1 (darts 1,2,3) and 4 (darts 4,5,6); thick edge (1,4);
        // common edges (2,6) and (3,5).
        let map = PlanarMap::from_cycles(
            &[vec![1, 2, 3], vec![4, 5, 6]],
            &[(1, 4), (2, 6), (3, 5)],
            vec![2],
            vec![],
        );
        let orientation: Orientation = [1, 5, 6].into_iter().collect();
        let g = TrivalentGraph { map, thick: [1].into_iter().collect(), orientation };
        assert!(g.validate().is_valid(), "{:?}", g.validate().violations);
        let c = g.contract_thick_edges().unwrap();
        assert_eq!(c.num_vertices(), 1);
        assert!(c.validate().is_valid(), "{:?}", c.validate().violations);
    }

    #[test]
    fn contraction_fixes_free_loops() {
        let mut map = PlanarMap::default();
        map.free_loops.push(FreeLoop::with_sign(1));
        let g = TrivalentGraph { map, thick: BTreeSet::new(), orientation: BTreeSet::new() };
        let c = g.contract_thick_edges().unwrap();
        assert_eq!(c.map.free_loops.len(), 1);
    }
}
