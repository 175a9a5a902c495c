//! Structural surgery on decorated maps: splicing crossings into arcs,
//! switching over-strands, curl and Reidemeister-II elimination, and the
//! generic vertex-removal engine that reconnects strands.

use std::collections::{BTreeMap, BTreeSet};

use super::link::{LinkDiagram, Orientation};
use super::map::{Dart, FreeLoop, PlanarMap, VertexId};

/// How two arcs replace a 4-valent vertex: the darts are paired
/// `(first, sigma(first))` and `(sigma^2(first), sigma^3(first))`.
/// Pairings always join rotation-adjacent darts, so the two arcs are
/// disjoint inside the old vertex disk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pairing {
    pub first: Dart,
}

impl Pairing {
    pub fn new(map: &PlanarMap, first: Dart) -> Self {
        Pairing { first: first.min(map.sigma_pow(first, 2)) }
    }

    pub fn pairs(&self, map: &PlanarMap) -> [(Dart, Dart); 2] {
        let f = self.first;
        [
            (f, map.sigma(f)),
            (map.sigma_pow(f, 2), map.sigma_pow(f, 3)),
        ]
    }

    pub fn partner(&self, map: &PlanarMap, d: Dart) -> Dart {
        for (x, y) in self.pairs(map) {
            if d == x {
                return y;
            }
            if d == y {
                return x;
            }
        }
        panic!("dart {d} is not at the paired vertex");
    }

    pub fn contains(&self, map: &PlanarMap, d: Dart) -> bool {
        let f = self.first;
        d == f || d == map.sigma(f) || d == map.sigma_pow(f, 2) || d == map.sigma_pow(f, 3)
    }
}

/// What happens to a vertex that is being removed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pass {
    /// Strands run straight through (used when deleting crossings whose
    /// over/under data no longer matters, e.g. a cancelled R2 pair).
    Through,
    /// Strands reconnect along the given arc pairing (a smoothing).
    Splice(Pairing),
}

/// A closed curve that lost all its crossings during surgery and became
/// a free loop. `min_dart` names it by the smallest removed dart it ran
/// through; `out` records its direction when the diagram was oriented
/// (whether `min_dart` was an outgoing dart).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewLoop {
    pub min_dart: Dart,
    pub out: Option<bool>,
}

/// Remove the vertices listed in `actions` from the map, reconnecting
/// strands according to each vertex's [`Pass`]. Closed curves that lose
/// every dart are returned as [`NewLoop`]s and appended to the map's
/// free loops (with unknown winding sign).
pub fn apply_actions(
    map: &PlanarMap,
    actions: &BTreeMap<VertexId, Pass>,
    orientation: Option<&Orientation>,
) -> (PlanarMap, Vec<NewLoop>) {
    let mut deleted: BTreeSet<Dart> = BTreeSet::new();
    for (&v, _) in actions {
        let mut x = v;
        loop {
            deleted.insert(x);
            x = map.sigma(x);
            if x == v {
                break;
            }
        }
    }
    let pass = |d: Dart| -> Dart {
        let v = map.vertex_of(d);
        match actions[&v] {
            Pass::Through => map.sigma_pow(d, 2),
            Pass::Splice(p) => p.partner(map, d),
        }
    };

    let mut alpha_new: BTreeMap<Dart, Dart> = BTreeMap::new();
    let mut visited: BTreeSet<Dart> = BTreeSet::new();
    for e in map.darts() {
        if deleted.contains(&e) || !deleted.contains(&map.alpha(e)) {
            continue;
        }
        // Walk through deleted structure until an external dart appears.
        let mut x = map.alpha(e);
        loop {
            visited.insert(x);
            let y = pass(x);
            visited.insert(y);
            let z = map.alpha(y);
            if !deleted.contains(&z) {
                alpha_new.insert(e, z);
                break;
            }
            x = z;
        }
    }

    // Closed curves entirely inside the deleted region become free loops.
    let mut loops = Vec::new();
    let mut remaining: BTreeSet<Dart> = deleted.difference(&visited).copied().collect();
    while let Some(&d0) = remaining.iter().next() {
        let mut cycle = Vec::new();
        let mut x = d0;
        loop {
            cycle.push(x);
            remaining.remove(&x);
            let y = pass(x);
            cycle.push(y);
            remaining.remove(&y);
            x = map.alpha(y);
            if x == d0 {
                break;
            }
        }
        let min_dart = *cycle.iter().min().unwrap();
        let out = orientation.map(|outs| outs.contains(&min_dart));
        loops.push(NewLoop { min_dart, out });
    }

    let mut sigma = BTreeMap::new();
    for d in map.darts() {
        if !deleted.contains(&d) {
            sigma.insert(d, map.sigma(d));
        }
    }
    let mut alpha = BTreeMap::new();
    for d in map.darts() {
        if deleted.contains(&d) {
            continue;
        }
        let a = map.alpha(d);
        if deleted.contains(&a) {
            let b = alpha_new[&d];
            alpha.insert(d, b);
            alpha.insert(b, d);
        } else {
            alpha.insert(d, a);
        }
    }

    let mut free_loops = map.free_loops.clone();
    for l in &loops {
        free_loops.push(FreeLoop { sign: None, face: None });
        let _ = l;
    }
    // Outer designations survive only while their darts do; surgered maps
    // feed value computations, which never consult them, so best effort
    // plus a fallback dart keeps the map printable.
    let mut outers: Vec<Dart> = map.outers.iter().copied().filter(|d| !deleted.contains(d)).collect();
    if outers.is_empty() {
        if let Some(&d) = sigma.keys().next() {
            outers.push(d);
        }
    }
    let new_map = rebuild(sigma, alpha, outers, free_loops);
    (new_map, loops)
}

fn rebuild(
    sigma: BTreeMap<Dart, Dart>,
    alpha: BTreeMap<Dart, Dart>,
    outers: Vec<Dart>,
    free_loops: Vec<FreeLoop>,
) -> PlanarMap {
    let mut cycles: Vec<Vec<Dart>> = Vec::new();
    let mut seen = BTreeSet::new();
    for &d in sigma.keys() {
        if seen.contains(&d) {
            continue;
        }
        let mut cyc = vec![d];
        seen.insert(d);
        let mut x = sigma[&d];
        while x != d {
            cyc.push(x);
            seen.insert(x);
            x = sigma[&x];
        }
        cycles.push(cyc);
    }
    let edges: Vec<(Dart, Dart)> = alpha
        .iter()
        .filter(|(d, a)| *d <= a)
        .map(|(d, a)| (*d, *a))
        .collect();
    PlanarMap::from_cycles(&cycles, &edges, outers, free_loops)
}

/// Restrict decorations to the surviving darts after surgery. Free loops
/// created by the surgery keep an unknown winding sign; polynomial values
/// never need it, and rotation numbers are computed on unsurgered views.
pub fn restrict_diagram(ld: &LinkDiagram, new_map: PlanarMap) -> LinkDiagram {
    let over = ld
        .over
        .iter()
        .filter(|(_, &d)| new_map.contains_dart(d))
        .map(|(&v, &d)| (v, d))
        .collect();
    let orientation = ld.orientation.as_ref().map(|outs| {
        outs.iter().copied().filter(|d| new_map.contains_dart(*d)).collect::<Orientation>()
    });
    LinkDiagram::new(new_map, over, orientation)
}

/// Switch one crossing: the under-strand becomes the over-strand.
pub fn switch_crossing(ld: &LinkDiagram, v: VertexId) -> LinkDiagram {
    let mut out = ld.clone();
    let d = ld.over[&v];
    let new_over = ld.map.sigma(d).min(ld.map.sigma_pow(d, 3));
    out.over.insert(v, new_over);
    out
}

/// Splice one crossing along `pairing`, dropping it from the diagram.
pub fn smooth_crossing(ld: &LinkDiagram, v: VertexId, pairing: Pairing) -> LinkDiagram {
    let actions = BTreeMap::from([(v, Pass::Splice(pairing))]);
    let (map, _) = apply_actions(&ld.map, &actions, ld.orientation.as_ref());
    restrict_diagram(ld, map)
}

/// The orientation-respecting (Seifert) pairing at a crossing-like
/// oriented vertex: each incoming dart joins its unique adjacent outgoing
/// dart.
pub fn seifert_pairing(
    map: &PlanarMap,
    v: VertexId,
    outs: &Orientation,
) -> Pairing {
    let cyc = map.vertex_cycle(v);
    // Find an incoming dart whose counterclockwise neighbor is also
    // incoming; the pairing then starts at the dart after that pair.
    for &d in &cyc {
        let inn = |x: Dart| !outs.contains(&x);
        if inn(d) && inn(map.sigma(d)) {
            // ins = {d, sigma d}; arcs (sigma^3 d, d)?? arcs join d ->
            // sigma^{-1}(d) and sigma(d) -> sigma^2(d).
            return Pairing::new(map, map.sigma(d));
        }
    }
    panic!("vertex {v} is not crossing-like oriented");
}

/// The unoriented A-smoothing of a crossing joins each over dart to its
/// clockwise neighbor; the B-smoothing to its counterclockwise neighbor.
pub fn a_smoothing_pairing(map: &PlanarMap, over_dart: Dart) -> Pairing {
    Pairing::new(map, map.sigma_pow(over_dart, 3))
}

pub fn b_smoothing_pairing(map: &PlanarMap, over_dart: Dart) -> Pairing {
    Pairing::new(map, over_dart)
}

/// Find a curl (monogon face): returns the loop's first dart `x`, where
/// the loop edge pairs `(x, sigma(x))`.
pub fn find_curl(map: &PlanarMap) -> Option<Dart> {
    map.darts().find(|&x| map.alpha(x) == map.sigma(x))
}

/// Remove the curl at `x` (as returned by [`find_curl`]) by untwisting:
/// the strand passes straight through the deleted crossing, absorbing
/// the loop. Returns the new diagram and the kink sign.
pub fn remove_curl(ld: &LinkDiagram, x: Dart) -> (LinkDiagram, i8) {
    let sign = ld.kink_sign(x);
    let actions = BTreeMap::from([(ld.map.vertex_of(x), Pass::Through)]);
    let (map, _) = apply_actions(&ld.map, &actions, ld.orientation.as_ref());
    (restrict_diagram(ld, map), sign)
}

/// A cancellable Reidemeister-II bigon: a 2-gon face between distinct
/// crossings where one strand is over at both. Returns the face's two
/// darts.
pub fn find_r2(ld: &LinkDiagram) -> Option<(Dart, Dart)> {
    let map = &ld.map;
    for f in map.faces() {
        if f.len() != 2 {
            continue;
        }
        let (x, y) = (f[0], f[1]);
        let (v1, v2) = (map.vertex_of(x), map.vertex_of(y));
        if v1 == v2 {
            continue;
        }
        if ld.is_over(x) == ld.is_over(map.alpha(x)) {
            return Some((x, y));
        }
    }
    None
}

/// Cancel the R2 pair found by [`find_r2`]: both crossings are removed
/// and the strands pass straight through.
pub fn remove_r2(ld: &LinkDiagram, pair: (Dart, Dart)) -> LinkDiagram {
    let (x, y) = pair;
    let v1 = ld.map.vertex_of(x);
    let v2 = ld.map.vertex_of(y);
    let actions = BTreeMap::from([(v1, Pass::Through), (v2, Pass::Through)]);
    let (map, _) = apply_actions(&ld.map, &actions, ld.orientation.as_ref());
    restrict_diagram(ld, map)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// One positive kink: vertex (1 2 3 4), loop edge (2,3), closure (1,4).
    pub(crate) fn kink(over: Dart) -> LinkDiagram {
        let map = PlanarMap::from_cycles(
            &[vec![1, 2, 3, 4]],
            &[(2, 3), (1, 4)],
            vec![3],
            vec![],
        );
        LinkDiagram::new(map, BTreeMap::from([(1, over)]), None)
    }

    #[test]
    fn kink_reduces_to_unknot() {
        let ld = kink(1);
        assert!(ld.validate().is_valid(), "{:?}", ld.validate().violations);
        let x = find_curl(&ld.map).unwrap();
        assert_eq!(x, 2);
        // over pair is {1,3}: sigma(2)=3 is over, so the kink is positive
        assert_eq!(ld.kink_sign(x), 1);
        let (out, sign) = remove_curl(&ld, x);
        assert_eq!(sign, 1);
        assert_eq!(out.map.num_darts(), 0);
        assert_eq!(out.map.free_loops.len(), 1);

        // the mirror kink
        let ld = kink(2);
        assert_eq!(ld.kink_sign(2), -1);
    }

    #[test]
    fn smoothing_splits_kink_into_two_loops() {
        let ld = kink(1);
        // A-smoothing joins over darts {1,3} to their clockwise neighbors:
        // pairs (1,4)?? A: over dart 1 joins sigma^3(1)=4, dart 3 joins 2.
        let p = a_smoothing_pairing(&ld.map, 1);
        let out = smooth_crossing(&ld, 1, p);
        assert_eq!(out.map.free_loops.len(), 2);
        let p = b_smoothing_pairing(&ld.map, 1);
        let out = smooth_crossing(&ld, 1, p);
        assert_eq!(out.map.free_loops.len(), 1);
    }
}
