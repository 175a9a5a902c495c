//! Planar combinatorial maps: darts, vertex rotations, edge involution,
//! faces, and a designated outer face.
//!
//! A dart points away from its vertex along an edge. `sigma` sends a dart
//! to the next dart counterclockwise around its vertex; `alpha` pairs a
//! dart with the other end of its edge. Faces are the orbits of
//! `sigma(alpha(d))`; the face orbit of a dart is the face lying to the
//! *right* of that dart. Crossing-free closed curves are tracked apart as
//! free loops, since they carry no darts.

use std::collections::{BTreeMap, BTreeSet};

pub type Dart = u32;

/// A vertex is named by the smallest dart in its rotation cycle.
pub type VertexId = Dart;

/// An edge is named by the smaller of its two darts.
pub type EdgeId = Dart;

/// A face is named by the smallest dart in its orbit.
pub type FaceId = Dart;

/// A crossing-free closed curve. It has no darts; its orientation sign
/// (+1 counterclockwise, -1 clockwise) is carried directly, and the face
/// it nests in is remembered as a dart reference (`None` = the outer face).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeLoop {
    pub sign: Option<i8>,
    pub face: Option<Dart>,
}

impl FreeLoop {
    pub fn unoriented() -> Self {
        FreeLoop { sign: None, face: None }
    }

    pub fn with_sign(sign: i8) -> Self {
        FreeLoop { sign: Some(sign), face: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PlanarMap {
    sigma: BTreeMap<Dart, Dart>,
    alpha: BTreeMap<Dart, Dart>,
    /// One dart on the outer face boundary of each darted component.
    pub outers: Vec<Dart>,
    pub free_loops: Vec<FreeLoop>,
}

/// The outcome of [`PlanarMap::validate`]: an empty report means valid.
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl PlanarMap {
    /// Build a map from vertex rotation cycles (counterclockwise dart
    /// order) and edge pairs.
    pub fn from_cycles(
        vertex_cycles: &[Vec<Dart>],
        edges: &[(Dart, Dart)],
        outers: Vec<Dart>,
        free_loops: Vec<FreeLoop>,
    ) -> Self {
        let mut sigma = BTreeMap::new();
        for cyc in vertex_cycles {
            for (i, &d) in cyc.iter().enumerate() {
                sigma.insert(d, cyc[(i + 1) % cyc.len()]);
            }
        }
        let mut alpha = BTreeMap::new();
        for &(x, y) in edges {
            alpha.insert(x, y);
            alpha.insert(y, x);
        }
        PlanarMap { sigma, alpha, outers, free_loops }
    }

    pub fn darts(&self) -> impl Iterator<Item = Dart> + '_ {
        self.sigma.keys().copied()
    }

    pub fn num_darts(&self) -> usize {
        self.sigma.len()
    }

    pub fn contains_dart(&self, d: Dart) -> bool {
        self.sigma.contains_key(&d)
    }

    pub fn max_dart(&self) -> Dart {
        self.sigma.keys().next_back().copied().unwrap_or(0)
    }

    pub fn sigma(&self, d: Dart) -> Dart {
        self.sigma[&d]
    }

    pub fn alpha(&self, d: Dart) -> Dart {
        self.alpha[&d]
    }

    pub fn sigma_inv(&self, d: Dart) -> Dart {
        let mut x = d;
        loop {
            let n = self.sigma(x);
            if n == d {
                return x;
            }
            x = n;
        }
    }

    /// Iterated rotation, `sigma^k`.
    pub fn sigma_pow(&self, d: Dart, k: usize) -> Dart {
        let mut x = d;
        for _ in 0..k {
            x = self.sigma(x);
        }
        x
    }

    /// The rotation cycle of the vertex holding `d`, starting at its
    /// smallest dart.
    pub fn vertex_cycle(&self, d: Dart) -> Vec<Dart> {
        let mut cyc = vec![d];
        let mut x = self.sigma(d);
        while x != d {
            cyc.push(x);
            x = self.sigma(x);
        }
        let min_pos = cyc
            .iter()
            .enumerate()
            .min_by_key(|(_, v)| **v)
            .map(|(i, _)| i)
            .unwrap();
        cyc.rotate_left(min_pos);
        cyc
    }

    pub fn vertex_of(&self, d: Dart) -> VertexId {
        let mut min = d;
        let mut x = self.sigma(d);
        while x != d {
            min = min.min(x);
            x = self.sigma(x);
        }
        min
    }

    pub fn vertex_degree(&self, d: Dart) -> usize {
        let mut n = 1;
        let mut x = self.sigma(d);
        while x != d {
            n += 1;
            x = self.sigma(x);
        }
        n
    }

    pub fn vertices(&self) -> Vec<VertexId> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for d in self.darts() {
            if seen.contains(&d) {
                continue;
            }
            let cyc = self.vertex_cycle(d);
            seen.extend(cyc.iter().copied());
            out.push(cyc[0]);
        }
        out.sort_unstable();
        out
    }

    pub fn edge_of(&self, d: Dart) -> EdgeId {
        d.min(self.alpha(d))
    }

    pub fn edges(&self) -> Vec<(Dart, Dart)> {
        self.alpha
            .iter()
            .filter(|(d, a)| *d <= a)
            .map(|(d, a)| (*d, *a))
            .collect()
    }

    pub fn num_edges(&self) -> usize {
        self.alpha.len() / 2
    }

    /// Face successor: the next dart along the face lying to the right.
    pub fn face_next(&self, d: Dart) -> Dart {
        self.sigma(self.alpha(d))
    }

    /// The orbit of `d` under [`Self::face_next`], starting at the
    /// smallest dart of the face.
    pub fn face_cycle(&self, d: Dart) -> Vec<Dart> {
        let mut cyc = vec![d];
        let mut x = self.face_next(d);
        while x != d {
            cyc.push(x);
            x = self.face_next(x);
        }
        let min_pos = cyc
            .iter()
            .enumerate()
            .min_by_key(|(_, v)| **v)
            .map(|(i, _)| i)
            .unwrap();
        cyc.rotate_left(min_pos);
        cyc
    }

    pub fn faces(&self) -> Vec<Vec<Dart>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for d in self.darts() {
            if seen.contains(&d) {
                continue;
            }
            let cyc = self.face_cycle(d);
            seen.extend(cyc.iter().copied());
            out.push(cyc);
        }
        out.sort_by_key(|c| c[0]);
        out
    }

    /// Map each dart to the id of the face on its right.
    pub fn face_ids(&self) -> BTreeMap<Dart, FaceId> {
        let mut ids = BTreeMap::new();
        for f in self.faces() {
            let id = f[0];
            for d in f {
                ids.insert(d, id);
            }
        }
        ids
    }

    /// Connected components of the dart set under `sigma` and `alpha`.
    pub fn components(&self) -> Vec<BTreeSet<Dart>> {
        let mut seen: BTreeSet<Dart> = BTreeSet::new();
        let mut out = Vec::new();
        for d in self.darts() {
            if seen.contains(&d) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut stack = vec![d];
            while let Some(x) = stack.pop() {
                if !comp.insert(x) {
                    continue;
                }
                stack.push(self.sigma(x));
                stack.push(self.alpha(x));
            }
            seen.extend(comp.iter().copied());
            out.push(comp);
        }
        out
    }

    /// Check all structural invariants; every violation is reported.
    pub fn validate(&self, valence: Option<usize>) -> ValidationReport {
        let mut v = Vec::new();
        let dart_set: BTreeSet<Dart> = self.darts().collect();
        // sigma must be a permutation of the dart set
        let sigma_img: BTreeSet<Dart> = self.sigma.values().copied().collect();
        if sigma_img != dart_set {
            v.push("vertex rotation is not a permutation of the dart set".into());
        }
        // alpha: fixed-point-free involution over the same darts
        let alpha_keys: BTreeSet<Dart> = self.alpha.keys().copied().collect();
        if alpha_keys != dart_set {
            v.push("edge involution does not cover the dart set".into());
        }
        for (&d, &a) in &self.alpha {
            if a == d {
                v.push(format!("edge involution fixes dart {d}"));
            } else if self.alpha.get(&a) != Some(&d) {
                v.push(format!("edge involution is not an involution at dart {d}"));
            }
        }
        if !v.is_empty() {
            return ValidationReport { violations: v };
        }
        if let Some(k) = valence {
            for vid in self.vertices() {
                let deg = self.vertex_degree(vid);
                if deg != k {
                    v.push(format!("vertex {vid} has degree {deg}, expected {k}"));
                }
            }
        }
        for &d in &self.outers {
            if !dart_set.contains(&d) {
                v.push(format!("outer dart {d} is not in the map"));
            }
        }
        // Euler check per connected component: V - E + F = 2 on a sphere.
        // Each component also needs exactly one designated outer dart.
        let face_ids = self.face_ids();
        for comp in self.components() {
            let n_out = self.outers.iter().filter(|d| comp.contains(d)).count();
            if n_out != 1 {
                v.push(format!(
                    "component of dart {} has {} designated outer darts, expected 1",
                    comp.iter().next().unwrap(),
                    n_out
                ));
            }
            let nv = comp
                .iter()
                .map(|&d| self.vertex_of(d))
                .collect::<BTreeSet<_>>()
                .len() as i64;
            let ne = (comp.len() / 2) as i64;
            let nf = comp
                .iter()
                .map(|&d| face_ids[&d])
                .collect::<BTreeSet<_>>()
                .len() as i64;
            if nv - ne + nf != 2 {
                v.push(format!(
                    "Euler check failed on component of dart {}: V={} E={} F={}",
                    comp.iter().next().unwrap(),
                    nv,
                    ne,
                    nf
                ));
            }
        }
        for (i, l) in self.free_loops.iter().enumerate() {
            if let Some(s) = l.sign {
                if s != 1 && s != -1 {
                    v.push(format!("free loop {i} has sign {s}, expected +1 or -1"));
                }
            }
            if let Some(f) = l.face {
                if !dart_set.contains(&f) {
                    v.push(format!("free loop {i} nests in unknown face dart {f}"));
                }
            }
        }
        ValidationReport { violations: v }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Two vertices joined by two parallel edges (a digon).
    fn digon() -> PlanarMap {
        PlanarMap::from_cycles(
            &[vec![1, 2], vec![3, 4]],
            &[(1, 3), (2, 4)],
            vec![2],
            vec![],
        )
    }

    #[test]
    fn digon_faces() {
        let m = digon();
        let faces = m.faces();
        assert_eq!(faces.len(), 2);
        assert!(m.validate(Some(2)).is_valid());
        assert_eq!(m.vertex_of(2), 1);
        assert_eq!(m.face_cycle(1), vec![1, 4]);
    }

    #[test]
    fn free_loop_only_map_is_valid() {
        let m = PlanarMap {
            free_loops: vec![FreeLoop::unoriented()],
            ..Default::default()
        };
        assert!(m.validate(None).is_valid());
    }

    #[test]
    fn fixed_point_involution_is_reported() {
        let mut m = digon();
        m.alpha.insert(1, 1);
        m.alpha.insert(3, 3);
        let rep = m.validate(None);
        assert!(!rep.is_valid());
        assert!(rep.violations.iter().any(|s| s.contains("fixes dart")));
    }
}
