//! The line-oriented diagram file format.
//!
//! ```text
//! # comments run to end of line
//! pmap <#darts> <#free_loops>
//! vrot: (d1 d2 d3 d4)(d5 d6 d7 d8)   counterclockwise rotation cycles
//! einv: (d1 d2)(d3 d4)               edge involution pairs
//! outer: d [d ...]                    one dart per component's outer face
//! over: v:d ...                       per crossing, one over-strand dart
//! orient: d+ d- ...                   per-dart out/in marks
//! ekind: e:thick e:common ...         trivalent edge kinds (e = min dart)
//! louts: + - ...                      free loop winding signs, in order
//! ```
//!
//! Dart identifiers are positive integers. `over:`, `orient:`, `ekind:`
//! and `louts:` are optional; their presence decides what the file can be
//! read as (link diagram, oriented or plain 4-valent graph, trivalent
//! graph).

use std::collections::{BTreeMap, BTreeSet};

use super::link::{
    orientation_is_complete, EdgeKind, FourValentGraph, LinkDiagram, Orientation, TrivalentGraph,
};
use super::map::{Dart, EdgeId, FreeLoop, PlanarMap, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

fn err<T>(line: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, msg: msg.into() })
}

/// A parsed diagram file, not yet committed to a decoration level.
#[derive(Debug, Clone, Default)]
pub struct DiagramFile {
    pub map: PlanarMap,
    pub over: Option<BTreeMap<VertexId, Dart>>,
    pub orientation: Option<Orientation>,
    pub thick: Option<BTreeSet<EdgeId>>,
}

fn parse_cycles(line: usize, rest: &str) -> Result<Vec<Vec<Dart>>, ParseError> {
    let mut cycles = Vec::new();
    let mut cur: Option<Vec<Dart>> = None;
    for tok in rest
        .replace('(', " ( ")
        .replace(')', " ) ")
        .split_whitespace()
    {
        match tok {
            "(" => {
                if cur.is_some() {
                    return err(line, "nested '(' in cycle list");
                }
                cur = Some(Vec::new());
            }
            ")" => match cur.take() {
                Some(c) if !c.is_empty() => cycles.push(c),
                _ => return err(line, "empty or unopened cycle"),
            },
            t => match (&mut cur, t.parse::<Dart>()) {
                (Some(c), Ok(d)) if d > 0 => c.push(d),
                _ => return err(line, format!("bad dart `{t}` in cycle list")),
            },
        }
    }
    if cur.is_some() {
        return err(line, "unclosed '(' in cycle list");
    }
    Ok(cycles)
}

pub fn parse(text: &str) -> Result<DiagramFile, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut vrot: Vec<Vec<Dart>> = Vec::new();
    let mut einv: Vec<(Dart, Dart)> = Vec::new();
    let mut outers: Vec<Dart> = Vec::new();
    let mut over: Option<BTreeMap<VertexId, Dart>> = None;
    let mut orient_marks: Vec<(usize, Dart, bool)> = Vec::new();
    let mut has_orient = false;
    let mut thick: Option<Vec<(usize, Dart, EdgeKind)>> = None;
    let mut louts: Option<Vec<i8>> = None;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if header.is_none() {
            let mut it = content.split_whitespace();
            if it.next() != Some("pmap") {
                return err(line, "expected `pmap <#darts> <#free_loops>` header");
            }
            let nd = it.next().and_then(|t| t.parse().ok());
            let nl = it.next().and_then(|t| t.parse().ok());
            match (nd, nl, it.next()) {
                (Some(nd), Some(nl), None) => header = Some((nd, nl)),
                _ => return err(line, "malformed pmap header"),
            }
            continue;
        }
        let (key, rest) = match content.split_once(':') {
            Some(kv) => kv,
            None => return err(line, format!("expected `key: ...`, got `{content}`")),
        };
        match key.trim() {
            "vrot" => vrot.extend(parse_cycles(line, rest)?),
            "einv" => {
                for c in parse_cycles(line, rest)? {
                    if c.len() != 2 {
                        return err(line, "einv cycles must pair exactly two darts");
                    }
                    einv.push((c[0], c[1]));
                }
            }
            "outer" => {
                for t in rest.split_whitespace() {
                    match t.parse::<Dart>() {
                        Ok(d) if d > 0 => outers.push(d),
                        _ => return err(line, format!("bad outer dart `{t}`")),
                    }
                }
            }
            "over" => {
                let m = over.get_or_insert_with(BTreeMap::new);
                for t in rest.split_whitespace() {
                    let (v, d) = match t.split_once(':') {
                        Some((v, d)) => (v.parse::<Dart>(), d.parse::<Dart>()),
                        None => return err(line, format!("expected `vertex:dart`, got `{t}`")),
                    };
                    match (v, d) {
                        (Ok(v), Ok(d)) if v > 0 && d > 0 => {
                            m.insert(v, d);
                        }
                        _ => return err(line, format!("bad over entry `{t}`")),
                    }
                }
            }
            "orient" => {
                has_orient = true;
                for t in rest.split_whitespace() {
                    let (num, dir) = t.split_at(t.len() - 1);
                    let out = match dir {
                        "+" => true,
                        "-" => false,
                        _ => return err(line, format!("orient mark `{t}` must end in + or -")),
                    };
                    match num.parse::<Dart>() {
                        Ok(d) if d > 0 => orient_marks.push((line, d, out)),
                        _ => return err(line, format!("bad dart in orient mark `{t}`")),
                    }
                }
            }
            "ekind" => {
                let m = thick.get_or_insert_with(Vec::new);
                for t in rest.split_whitespace() {
                    let (e, kind) = match t.split_once(':') {
                        Some((e, k)) => (e.parse::<Dart>(), k),
                        None => return err(line, format!("expected `edge:kind`, got `{t}`")),
                    };
                    let kind = match kind {
                        "thick" => EdgeKind::Thick,
                        "common" => EdgeKind::Common,
                        _ => return err(line, format!("edge kind must be thick|common in `{t}`")),
                    };
                    match e {
                        Ok(e) if e > 0 => m.push((line, e, kind)),
                        _ => return err(line, format!("bad edge in `{t}`")),
                    }
                }
            }
            "louts" => {
                let m = louts.get_or_insert_with(Vec::new);
                for t in rest.split_whitespace() {
                    match t {
                        "+" => m.push(1),
                        "-" => m.push(-1),
                        _ => return err(line, format!("loop sign must be + or -, got `{t}`")),
                    }
                }
            }
            k => return err(line, format!("unknown section `{k}`")),
        }
    }

    let (nd, nl) = match header {
        Some(h) => h,
        None => return err(1, "missing pmap header"),
    };
    let free_loops = match &louts {
        None => vec![FreeLoop::unoriented(); nl],
        Some(signs) => {
            if signs.len() != nl {
                return err(1, format!("louts lists {} signs for {} loops", signs.len(), nl));
            }
            signs.iter().map(|&s| FreeLoop::with_sign(s)).collect()
        }
    };
    let map = PlanarMap::from_cycles(&vrot, &einv, outers, free_loops);
    if map.num_darts() != nd {
        return err(1, format!("header declares {nd} darts, vrot lists {}", map.num_darts()));
    }
    let rep = map.validate(None);
    if !rep.is_valid() {
        return err(1, format!("invalid map: {}", rep.violations.join("; ")));
    }

    let over = match over {
        None => None,
        Some(m) => {
            let mut normalized = BTreeMap::new();
            for (v, d) in m {
                if !map.contains_dart(d) {
                    return err(1, format!("over dart {d} not in map"));
                }
                if map.vertex_of(d) != map.vertex_of(v) {
                    return err(1, format!("over dart {d} is not at vertex {v}"));
                }
                normalized.insert(map.vertex_of(v), d.min(map.sigma_pow(d, 2)));
            }
            Some(normalized)
        }
    };

    let orientation = if has_orient {
        let mut outs = Orientation::new();
        let mut ins = BTreeSet::new();
        for (line, d, out) in orient_marks {
            if !map.contains_dart(d) {
                return err(line, format!("orient mark on unknown dart {d}"));
            }
            if out {
                outs.insert(d);
            } else {
                ins.insert(d);
            }
        }
        for &(x, y) in &map.edges() {
            // derive missing marks and reject conflicts
            let xo = outs.contains(&x);
            let yo = outs.contains(&y);
            let xi = ins.contains(&x);
            let yi = ins.contains(&y);
            if (xo && yo) || (xi && yi) || (xo && xi) || (yo && yi) {
                return err(1, format!("conflicting orientation on edge ({x},{y})"));
            }
            if !xo && !yo {
                if xi {
                    outs.insert(y);
                } else if yi {
                    outs.insert(x);
                } else {
                    return err(1, format!("edge ({x},{y}) is not oriented"));
                }
            }
        }
        Some(outs)
    } else {
        None
    };

    let thick = match thick {
        None => None,
        Some(entries) => {
            let mut set = BTreeSet::new();
            for (line, e, kind) in entries {
                if !map.contains_dart(e) {
                    return err(line, format!("ekind names unknown edge {e}"));
                }
                if map.edge_of(e) != e {
                    return err(line, format!("edge {e} must be named by its smaller dart"));
                }
                if kind == EdgeKind::Thick {
                    set.insert(e);
                }
            }
            Some(set)
        }
    };

    Ok(DiagramFile { map, over, orientation, thick })
}

impl DiagramFile {
    pub fn as_link_diagram(&self) -> Result<LinkDiagram, ParseError> {
        let over = match &self.over {
            Some(o) => o.clone(),
            None if self.map.num_darts() == 0 => BTreeMap::new(),
            None => return err(1, "file has crossings but no `over:` section"),
        };
        let ld = LinkDiagram::new(self.map.clone(), over, self.orientation.clone());
        let rep = ld.validate();
        if !rep.is_valid() {
            return err(1, format!("invalid link diagram: {}", rep.violations.join("; ")));
        }
        Ok(ld)
    }

    pub fn as_four_valent(&self) -> Result<FourValentGraph, ParseError> {
        let g = FourValentGraph { map: self.map.clone(), orientation: self.orientation.clone() };
        let rep = g.validate();
        if !rep.is_valid() {
            return err(1, format!("invalid 4-valent graph: {}", rep.violations.join("; ")));
        }
        Ok(g)
    }

    pub fn as_trivalent(&self) -> Result<TrivalentGraph, ParseError> {
        let thick = match &self.thick {
            Some(t) => t.clone(),
            None => return err(1, "trivalent input needs an `ekind:` section"),
        };
        let orientation = match &self.orientation {
            Some(o) => o.clone(),
            None => return err(1, "trivalent input needs an `orient:` section"),
        };
        let g = TrivalentGraph { map: self.map.clone(), thick, orientation };
        let rep = g.validate();
        if !rep.is_valid() {
            return err(1, format!("invalid trivalent graph: {}", rep.violations.join("; ")));
        }
        Ok(g)
    }
}

fn write_cycles(out: &mut String, key: &str, cycles: &[Vec<Dart>]) {
    out.push_str(key);
    out.push(':');
    for c in cycles {
        out.push_str(" (");
        let inner = c.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ");
        out.push_str(&inner);
        out.push(')');
    }
    out.push('\n');
}

pub fn write_map(
    map: &PlanarMap,
    over: Option<&BTreeMap<VertexId, Dart>>,
    orientation: Option<&Orientation>,
    thick: Option<&BTreeSet<EdgeId>>,
) -> String {
    let mut s = String::new();
    s.push_str(&format!("pmap {} {}\n", map.num_darts(), map.free_loops.len()));
    if map.num_darts() > 0 {
        let cycles: Vec<Vec<Dart>> = map.vertices().iter().map(|&v| map.vertex_cycle(v)).collect();
        write_cycles(&mut s, "vrot", &cycles);
        let edges: Vec<Vec<Dart>> = map.edges().iter().map(|&(x, y)| vec![x, y]).collect();
        write_cycles(&mut s, "einv", &edges);
        let outs = map
            .outers
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        s.push_str(&format!("outer: {outs}\n"));
    }
    if let Some(over) = over {
        if !over.is_empty() {
            let body = over
                .iter()
                .map(|(v, d)| format!("{v}:{d}"))
                .collect::<Vec<_>>()
                .join(" ");
            s.push_str(&format!("over: {body}\n"));
        }
    }
    if let Some(outs) = orientation {
        if map.num_darts() > 0 {
            debug_assert!(orientation_is_complete(map, outs));
            let body = map
                .edges()
                .iter()
                .map(|&(x, _)| {
                    if outs.contains(&x) {
                        format!("{x}+")
                    } else {
                        format!("{x}-")
                    }
                })
                .collect::<Vec<_>>()
                .join(" ");
            s.push_str(&format!("orient: {body}\n"));
        }
    }
    if let Some(thick) = thick {
        let body = map
            .edges()
            .iter()
            .map(|&(x, _)| {
                let e = map.edge_of(x);
                if thick.contains(&e) {
                    format!("{e}:thick")
                } else {
                    format!("{e}:common")
                }
            })
            .collect::<Vec<_>>()
            .join(" ");
        s.push_str(&format!("ekind: {body}\n"));
    }
    if map.free_loops.iter().any(|l| l.sign.is_some()) {
        let body = map
            .free_loops
            .iter()
            .map(|l| match l.sign {
                Some(1) => "+",
                Some(-1) => "-",
                _ => "?",
            })
            .collect::<Vec<_>>()
            .join(" ");
        s.push_str(&format!("louts: {body}\n"));
    }
    s
}

pub fn write_link_diagram(ld: &LinkDiagram) -> String {
    write_map(&ld.map, Some(&ld.over), ld.orientation.as_ref(), None)
}

pub fn write_four_valent(g: &FourValentGraph) -> String {
    write_map(&g.map, None, g.orientation.as_ref(), None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::braid::zoo;

    #[test]
    fn round_trip_standard_diagrams() {
        for ld in [zoo::unknot_kink(true), zoo::hopf(true), zoo::figure_eight()] {
            let text = write_link_diagram(&ld);
            let parsed = parse(&text).unwrap().as_link_diagram().unwrap();
            assert_eq!(parsed, ld);
        }
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad = "pmap 4 0\nvrot: (1 2 3 4\n";
        let e = parse(bad).unwrap_err();
        assert_eq!(e.line, 2);

        let bad = "pmap 4 0\nvrot: (1 2 3 4)\neinv: (1 2)(3 4)\nouter: 9\n";
        assert!(parse(bad).is_err());
    }

    #[test]
    fn fixed_point_involution_is_rejected() {
        let bad = "pmap 4 0\nvrot: (1 2 3 4)\neinv: (1 1)(2 3)\nouter: 1\n";
        assert!(parse(bad).is_err());
    }
}
