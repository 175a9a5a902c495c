//! Resolution views and rotation numbers.
//!
//! A [`ResolvedView`] records, over an *unmodified* base map, which
//! vertices are kept and which are spliced into arcs, together with a
//! full edge orientation. Because the base map's face structure is
//! retained, the winding sign of every smoothed circle is computable
//! without coordinates: splicing a vertex merges the two face corners
//! that its channel opens, the resulting regions form a tree under
//! curve-adjacency, and a circle is counterclockwise exactly when its
//! bounded side (the side not leading to the outer region) lies to the
//! left of the traversal.

use std::collections::BTreeMap;

use super::edit::{apply_actions, seifert_pairing, NewLoop, Pairing, Pass};
use super::link::{crossing_sign_with, DiagramError, FourValentGraph, LinkDiagram, Orientation};
use super::map::{Dart, FaceId, PlanarMap, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexAction {
    Keep,
    Splice(Pairing),
}

/// One term of a state sum seen as a resolution of the base map: every
/// vertex is either kept or spliced, every edge is directed, and base
/// free loops carry winding signs.
#[derive(Debug, Clone)]
pub struct ResolvedView<'a> {
    pub base: &'a PlanarMap,
    pub outs: Orientation,
    pub actions: BTreeMap<VertexId, VertexAction>,
    pub loop_signs: Vec<i8>,
}

/// The orientation-respecting smoothing of every site, with the
/// winding sign of each resulting circle.
#[derive(Debug, Clone)]
pub struct SeifertDecomposition {
    /// Each circle as its ordered list of outgoing darts.
    pub circles: Vec<Vec<Dart>>,
    pub signs: Vec<i8>,
    /// Signs of base free loops, appended to the circle signs in
    /// rotation-number sums.
    pub loop_signs: Vec<i8>,
}

impl SeifertDecomposition {
    pub fn rotation_number(&self) -> i64 {
        self.signs.iter().map(|&s| s as i64).sum::<i64>()
            + self.loop_signs.iter().map(|&s| s as i64).sum::<i64>()
    }
}

struct UnionFind {
    parent: BTreeMap<FaceId, FaceId>,
}

impl UnionFind {
    fn new(ids: impl Iterator<Item = FaceId>) -> Self {
        UnionFind { parent: ids.map(|i| (i, i)).collect() }
    }

    fn find(&mut self, x: FaceId) -> FaceId {
        let p = self.parent[&x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.parent.insert(x, r);
        r
    }

    fn union(&mut self, a: FaceId, b: FaceId) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent.insert(ra, rb);
        }
    }
}

impl<'a> ResolvedView<'a> {
    pub fn new(
        base: &'a PlanarMap,
        outs: Orientation,
        actions: BTreeMap<VertexId, VertexAction>,
        loop_signs: Vec<i8>,
    ) -> Self {
        ResolvedView { base, outs, actions, loop_signs }
    }

    pub fn action(&self, v: VertexId) -> VertexAction {
        self.actions.get(&v).copied().unwrap_or(VertexAction::Keep)
    }

    /// Smooth every site (kept vertices by their Seifert pairing) and
    /// compute the circle signs.
    pub fn seifert(&self) -> Result<SeifertDecomposition, DiagramError> {
        let map = self.base;
        let mut splice: BTreeMap<VertexId, Pairing> = BTreeMap::new();
        for v in map.vertices() {
            let p = match self.action(v) {
                VertexAction::Splice(p) => p,
                VertexAction::Keep => seifert_pairing(map, v, &self.outs),
            };
            splice.insert(v, p);
        }

        // Regions: base faces merged across each splice channel.
        let face_ids = map.face_ids();
        let mut uf = UnionFind::new(face_ids.values().copied().collect::<std::collections::BTreeSet<_>>().into_iter());
        for (_, p) in &splice {
            let f = p.first;
            uf.union(face_ids[&f], face_ids[&map.sigma_pow(f, 2)]);
        }

        // Trace circles along the orientation.
        let mut circles: Vec<Vec<Dart>> = Vec::new();
        let mut seen: std::collections::BTreeSet<Dart> = std::collections::BTreeSet::new();
        for d in map.darts() {
            if !self.outs.contains(&d) || seen.contains(&d) {
                continue;
            }
            let mut circle = Vec::new();
            let mut x = d;
            loop {
                circle.push(x);
                seen.insert(x);
                let arrive = map.alpha(x);
                let v = map.vertex_of(arrive);
                let next = splice[&v].partner(map, arrive);
                if !self.outs.contains(&next) {
                    return Err(DiagramError::BadOrientation(next));
                }
                x = next;
                if x == d {
                    break;
                }
            }
            circles.push(circle);
        }

        // The outer region: every designated outer face, merged.
        if map.num_darts() > 0 && map.outers.is_empty() {
            return Err(DiagramError::Invalid("no outer face designated".into()));
        }
        let mut outer_root = None;
        for &o in &map.outers {
            let r = uf.find(face_ids[&o]);
            match outer_root {
                None => outer_root = Some(r),
                // Disconnected bases share the unbounded region.
                Some(prev) => {
                    uf.union(prev, r);
                    outer_root = Some(uf.find(prev));
                }
            }
        }

        // Region adjacency is a tree; depth from the outer region decides
        // which side of each circle is bounded.
        let mut sides = Vec::new();
        for circle in &circles {
            let d0 = circle[0];
            let right = uf.find(face_ids[&d0]);
            let left = uf.find(face_ids[&map.alpha(d0)]);
            for &d in circle {
                debug_assert_eq!(uf.find(face_ids[&d]), right, "inconsistent right side");
                debug_assert_eq!(uf.find(face_ids[&map.alpha(d)]), left, "inconsistent left side");
            }
            if left == right {
                return Err(DiagramError::Invalid(
                    "smoothed circle does not separate its sides".into(),
                ));
            }
            sides.push((left, right));
        }
        let mut depth: BTreeMap<FaceId, u32> = BTreeMap::new();
        if let Some(root) = outer_root {
            depth.insert(root, 0);
            let mut frontier = vec![root];
            while let Some(r) = frontier.pop() {
                let d = depth[&r];
                for &(l, rr) in &sides {
                    for (a, b) in [(l, rr), (rr, l)] {
                        if a == r && !depth.contains_key(&b) {
                            depth.insert(b, d + 1);
                            frontier.push(b);
                        }
                    }
                }
            }
        }
        let mut signs = Vec::new();
        for &(left, right) in &sides {
            let dl = *depth.get(&left).ok_or_else(|| {
                DiagramError::Invalid("region unreachable from the outer face".into())
            })?;
            let dr = *depth.get(&right).ok_or_else(|| {
                DiagramError::Invalid("region unreachable from the outer face".into())
            })?;
            // Counterclockwise traversal keeps its bounded side on the
            // left, so the outer direction must lie to the right.
            signs.push(if dr < dl { 1 } else { -1 });
        }

        Ok(SeifertDecomposition { circles, signs, loop_signs: self.loop_signs.clone() })
    }

    pub fn rotation_number(&self) -> Result<i64, DiagramError> {
        Ok(self.seifert()?.rotation_number())
    }

    /// Sign of a kept crossing-like vertex under this view's orientation,
    /// using `over_dart` as the over strand.
    pub fn crossing_sign(&self, over_dart: Dart) -> Result<i8, DiagramError> {
        crossing_sign_with(self.base, over_dart, &self.outs)
    }

    /// The closed curves of the *state* (kept vertices stay vertices):
    /// returns each curve's dart list, only for curves through no kept
    /// vertex. These are the state's crossing-free components.
    pub fn vertexless_curves(&self) -> Vec<Vec<Dart>> {
        let map = self.base;
        let mut out = Vec::new();
        let mut seen: std::collections::BTreeSet<Dart> = std::collections::BTreeSet::new();
        for d in map.darts() {
            if seen.contains(&d) {
                continue;
            }
            let mut curve = vec![];
            let mut vertexless = true;
            let mut x = d;
            loop {
                curve.push(x);
                seen.insert(x);
                let arrive = map.alpha(x);
                curve.push(arrive);
                seen.insert(arrive);
                let v = map.vertex_of(arrive);
                x = match self.action(v) {
                    VertexAction::Keep => {
                        vertexless = false;
                        map.sigma_pow(arrive, 2)
                    }
                    VertexAction::Splice(p) => p.partner(map, arrive),
                };
                if x == d {
                    break;
                }
            }
            if vertexless {
                out.push(curve);
            }
        }
        out
    }
}

/// Seifert decomposition of an oriented link diagram or oriented 4-valent
/// graph (all vertices kept, hence Seifert-smoothed).
pub fn seifert_decompose(
    map: &PlanarMap,
    orientation: &Orientation,
    loop_signs: Vec<i8>,
) -> Result<SeifertDecomposition, DiagramError> {
    ResolvedView::new(map, orientation.clone(), BTreeMap::new(), loop_signs).seifert()
}

fn loop_signs_of(map: &PlanarMap) -> Result<Vec<i8>, DiagramError> {
    map.free_loops
        .iter()
        .map(|l| l.sign.ok_or(DiagramError::NotOriented))
        .collect()
}

pub fn link_rotation_number(ld: &LinkDiagram) -> Result<i64, DiagramError> {
    let outs = ld.orientation.as_ref().ok_or(DiagramError::NotOriented)?;
    Ok(seifert_decompose(&ld.map, outs, loop_signs_of(&ld.map)?)?.rotation_number())
}

pub fn graph_rotation_number(g: &FourValentGraph) -> Result<i64, DiagramError> {
    let outs = g.orientation.as_ref().ok_or(DiagramError::NotOriented)?;
    Ok(seifert_decompose(&g.map, outs, loop_signs_of(&g.map)?)?.rotation_number())
}

pub fn link_seifert(ld: &LinkDiagram) -> Result<SeifertDecomposition, DiagramError> {
    let outs = ld.orientation.as_ref().ok_or(DiagramError::NotOriented)?;
    seifert_decompose(&ld.map, outs, loop_signs_of(&ld.map)?)
}

/// A standalone diagram or graph cut out of a view: kept vertices remain
/// 4-valent, spliced arcs are suppressed into edges, and closed curves
/// with no kept vertex become free loops.
#[derive(Debug, Clone)]
pub struct Materialized {
    pub map: PlanarMap,
    pub orientation: Orientation,
    /// The curves that became free loops, by smallest base dart, with
    /// their travel direction at that dart.
    pub new_loops: Vec<NewLoop>,
}

impl ResolvedView<'_> {
    /// Cut the state out of the base map. When `winding_signs` is set the
    /// new free loops receive their true counterclockwise/clockwise signs
    /// (computed from the view's Seifert decomposition).
    pub fn materialize(&self, winding_signs: bool) -> Result<Materialized, DiagramError> {
        let acts: BTreeMap<VertexId, Pass> = self
            .actions
            .iter()
            .filter_map(|(&v, &a)| match a {
                VertexAction::Splice(p) => Some((v, Pass::Splice(p))),
                VertexAction::Keep => None,
            })
            .collect();
        let (mut map, new_loops) = apply_actions(self.base, &acts, Some(&self.outs));
        let orientation: Orientation = self
            .outs
            .iter()
            .copied()
            .filter(|d| map.contains_dart(*d))
            .collect();
        // Base free loops keep their recorded signs.
        let n_base = self.base.free_loops.len();
        for (i, l) in map.free_loops.iter_mut().take(n_base).enumerate() {
            l.sign = self.loop_signs.get(i).copied();
        }
        if winding_signs && !new_loops.is_empty() {
            let dec = self.seifert()?;
            let mut sign_of: BTreeMap<Dart, i8> = BTreeMap::new();
            for (circle, &s) in dec.circles.iter().zip(&dec.signs) {
                for &d in circle {
                    sign_of.insert(d, s);
                    sign_of.insert(self.base.alpha(d), s);
                }
            }
            for (l, rec) in map.free_loops.iter_mut().skip(n_base).zip(&new_loops) {
                l.sign = sign_of.get(&rec.min_dart).copied();
            }
        }
        Ok(Materialized { map, orientation, new_loops })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::braid::{letter, zoo};

    #[test]
    fn free_loop_signs_add_up() {
        let mut ld = LinkDiagram::unlink(3);
        for l in &mut ld.map.free_loops {
            l.sign = Some(1);
        }
        ld.orientation = Some(Orientation::new());
        assert_eq!(link_rotation_number(&ld).unwrap(), 3);
        ld.map.free_loops[0].sign = Some(-1);
        assert_eq!(link_rotation_number(&ld).unwrap(), 1);
    }

    #[test]
    fn braid_closure_circles_run_clockwise() {
        // The closure of an upward braid Seifert-smooths into one
        // clockwise circle per strand.
        let k = zoo::unknot_kink(true);
        let dec = link_seifert(&k).unwrap();
        assert_eq!(dec.circles.len(), 2);
        assert_eq!(dec.signs, vec![-1, -1]);
        assert_eq!(link_rotation_number(&k).unwrap(), -2);

        let h = zoo::hopf(true);
        let dec = link_seifert(&h).unwrap();
        assert_eq!(dec.circles.len(), 2);
        assert_eq!(link_rotation_number(&h).unwrap(), -2);
    }

    #[test]
    fn reversing_every_edge_negates_the_rotation_number() {
        for ld in [zoo::trefoil(true), zoo::figure_eight(), zoo::hopf(false)] {
            let r = link_rotation_number(&ld).unwrap();
            let mut rev = ld.clone();
            let outs = rev.orientation.take().unwrap();
            let flipped: Orientation =
                rev.map.darts().filter(|d| !outs.contains(d)).collect();
            rev.orientation = Some(flipped);
            for l in &mut rev.map.free_loops {
                l.sign = l.sign.map(|s| -s);
            }
            assert_eq!(link_rotation_number(&rev).unwrap(), -r);
        }
    }

    #[test]
    fn circle_count_matches_smoothed_permutation_cycles() {
        let ld = zoo::figure_eight();
        let dec = link_seifert(&ld).unwrap();
        let total: usize = dec.circles.iter().map(|c| c.len()).sum();
        // every edge is traversed once, i.e. one outgoing dart per edge
        assert_eq!(total, ld.map.num_edges());
        assert_eq!(dec.circles.len(), 3);
    }

    #[test]
    fn split_braid_closure_has_additive_rotation() {
        // sigma_1 on 3 strands: a kink component plus a free loop.
        let ld = crate::diagrams::braid::braid_closure(3, &[letter(1, true)]);
        assert_eq!(link_rotation_number(&ld).unwrap(), -3);
    }
}
