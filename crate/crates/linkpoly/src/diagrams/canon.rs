//! Canonical forms of decorated maps, used as memo keys.
//!
//! Per connected component, a breadth-first relabeling is computed from
//! every start dart and the lexicographically smallest signature wins.
//! The signature records the relabeled rotation, involution, over-strand
//! membership and edge direction of every dart, so equal signatures mean
//! equal decorated maps up to dart renaming. Outer-face choice and the
//! nesting of split components are deliberately not part of the key:
//! every value this key caches is invariant under both.

use std::collections::BTreeMap;

use super::link::{LinkDiagram, Orientation};
use super::map::{Dart, PlanarMap, VertexId};

fn component_signature(
    map: &PlanarMap,
    comp: &[Dart],
    over: Option<&BTreeMap<VertexId, Dart>>,
    outs: Option<&Orientation>,
) -> Vec<u32> {
    let mut best: Option<Vec<u32>> = None;
    for &start in comp {
        let mut label: BTreeMap<Dart, u32> = BTreeMap::new();
        let mut order: Vec<Dart> = Vec::with_capacity(comp.len());
        label.insert(start, 0);
        order.push(start);
        let mut i = 0;
        while i < order.len() {
            let d = order[i];
            i += 1;
            for n in [map.sigma(d), map.alpha(d)] {
                if !label.contains_key(&n) {
                    label.insert(n, order.len() as u32);
                    order.push(n);
                }
            }
        }
        let mut sig = Vec::with_capacity(comp.len() * 4);
        for &d in &order {
            sig.push(label[&map.sigma(d)]);
            sig.push(label[&map.alpha(d)]);
            let over_flag = match over {
                None => 9,
                Some(ov) => {
                    let v = map.vertex_of(d);
                    let o = ov[&v];
                    u32::from(d == o || d == map.sigma_pow(o, 2))
                }
            };
            sig.push(over_flag);
            let dir_flag = match outs {
                None => 9,
                Some(o) => u32::from(o.contains(&d)),
            };
            sig.push(dir_flag);
        }
        if best.as_ref().is_none_or(|b| sig < *b) {
            best = Some(sig);
        }
    }
    best.unwrap()
}

pub fn map_signature(
    map: &PlanarMap,
    over: Option<&BTreeMap<VertexId, Dart>>,
    outs: Option<&Orientation>,
) -> String {
    let mut comps: Vec<Vec<u32>> = map
        .components()
        .iter()
        .map(|c| {
            let darts: Vec<Dart> = c.iter().copied().collect();
            component_signature(map, &darts, over, outs)
        })
        .collect();
    comps.sort();
    let mut s = String::new();
    for c in comps {
        s.push('[');
        for x in c {
            s.push_str(&x.to_string());
            s.push(',');
        }
        s.push(']');
    }
    s.push_str(&format!("L{}", map.free_loops.len()));
    s
}

pub fn link_signature(ld: &LinkDiagram) -> String {
    map_signature(&ld.map, Some(&ld.over), ld.orientation.as_ref())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    #[test]
    fn relabeled_kinks_share_a_signature() {
        let mk = |base: Dart, over: Dart| {
            let d = |k: Dart| base + k;
            let map = PlanarMap::from_cycles(
                &[vec![d(1), d(2), d(3), d(4)]],
                &[(d(2), d(3)), (d(1), d(4))],
                vec![d(3)],
                vec![],
            );
            LinkDiagram::new(map, BTreeMap::from([(d(1), over + base)]), None)
        };
        assert_eq!(link_signature(&mk(0, 1)), link_signature(&mk(100, 1)));
        assert_ne!(link_signature(&mk(0, 1)), link_signature(&mk(0, 2)));
    }
}
