//! Hypermaps from signed rotation systems of their bipartite incidence maps.
//!
//! Bipartite edge `i` (1-based, in declaration order) carries four labels:
//! `4i-3`, `4i-2` at its `u` end and `4i-1`, `4i` at its `v` end. The first
//! of each pair lies on the left side, the second on the right, and `iota`
//! swaps them.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::hypermap::{Class, Hypermap};
use crate::notation::LabelTable;
use crate::perm::Permutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    V,
    E,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum End {
    U,
    V,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeEnd {
    pub edge: String,
    pub end: End,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BVertex {
    pub side: Side,
    pub name: String,
    pub rotation: Vec<EdgeEnd>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BEdge {
    pub name: String,
    pub twisted: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BipartiteMapSpec {
    pub vertices: Vec<BVertex>,
    pub edges: Vec<BEdge>,
}

impl BipartiteMapSpec {
    /// Parses `bmf 1` text. An end written without `:u`/`:v` is the `u` end
    /// on the V side and the `v` end on the E side.
    pub fn parse(text: &str) -> Result<Self> {
        let mut spec = BipartiteMapSpec::default();
        let mut header = false;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut words = line.split_whitespace();
            let word = words.next().unwrap_or_default();
            if !header {
                if word != "bmf" || words.next() != Some("1") {
                    return Err(Error::parse(line_no, "expected header `bmf 1`"));
                }
                header = true;
                continue;
            }
            match word {
                "bvertex" => {
                    let side = match words.next() {
                        Some("V") => Side::V,
                        Some("E") => Side::E,
                        _ => return Err(Error::parse(line_no, "side must be V or E")),
                    };
                    let name = words
                        .next()
                        .ok_or_else(|| Error::parse(line_no, "bvertex needs a name"))?
                        .to_string();
                    let rest = line
                        .splitn(4, char::is_whitespace)
                        .nth(3)
                        .unwrap_or("")
                        .trim();
                    let inner = rest
                        .strip_prefix('(')
                        .and_then(|r| r.strip_suffix(')'))
                        .ok_or_else(|| Error::parse(line_no, "rotation must be one (...) list"))?;
                    let rotation = inner
                        .split(|c: char| c.is_whitespace() || c == ',')
                        .filter(|t| !t.is_empty())
                        .map(|t| parse_end(t, side, line_no))
                        .collect::<Result<Vec<_>>>()?;
                    spec.vertices.push(BVertex {
                        side,
                        name,
                        rotation,
                    });
                }
                "edge" => {
                    let name = words
                        .next()
                        .ok_or_else(|| Error::parse(line_no, "edge needs a name"))?
                        .to_string();
                    let twisted = match words.next() {
                        Some("+") => false,
                        Some("-") => true,
                        _ => return Err(Error::parse(line_no, "twist must be + or -")),
                    };
                    spec.edges.push(BEdge { name, twisted });
                }
                other => {
                    return Err(Error::parse(
                        line_no,
                        format!("unknown directive {other:?}"),
                    ))
                }
            }
        }
        if !header {
            return Err(Error::parse(1, "empty input"));
        }
        Ok(spec)
    }
}

fn parse_end(token: &str, side: Side, line: usize) -> Result<EdgeEnd> {
    let (edge, end) = match token.rsplit_once(':') {
        Some((e, "u")) => (e, End::U),
        Some((e, "v")) => (e, End::V),
        Some(_) => return Err(Error::parse(line, format!("bad edge end {token:?}"))),
        None => (
            token,
            match side {
                Side::V => End::U,
                Side::E => End::V,
            },
        ),
    };
    Ok(EdgeEnd {
        edge: edge.to_string(),
        end,
    })
}

/// Left and right labels (1-based) of an edge end.
fn end_labels(i: u64, end: End) -> (u64, u64) {
    match end {
        End::U => (4 * i - 3, 4 * i - 2),
        End::V => (4 * i - 1, 4 * i),
    }
}

/// Builds the bipartite map `M_H` and the hypermap `H` it encodes.
pub fn walsh_build(spec: &BipartiteMapSpec) -> Result<(Hypermap, Hypermap)> {
    let bad = |m: String| Error::InvalidBipartite(m);
    let m = spec.edges.len();
    let mut index = HashMap::new();
    for (i, e) in spec.edges.iter().enumerate() {
        if index.insert(e.name.as_str(), i as u64 + 1).is_some() {
            return Err(bad(format!("edge {} declared twice", e.name)));
        }
    }
    // Which vertex holds each end of each edge.
    let mut holder: Vec<[Option<usize>; 2]> = vec![[None, None]; m];
    for (k, v) in spec.vertices.iter().enumerate() {
        if v.rotation.is_empty() {
            return Err(bad(format!("vertex {} has no edges", v.name)));
        }
        for end in &v.rotation {
            let &i = index
                .get(end.edge.as_str())
                .ok_or_else(|| bad(format!("unknown edge {}", end.edge)))?;
            let slot = &mut holder[i as usize - 1][end.end as usize];
            if slot.is_some() {
                return Err(bad(format!("end {}:{:?} used twice", end.edge, end.end)));
            }
            *slot = Some(k);
        }
    }
    for (i, h) in holder.iter().enumerate() {
        let name = &spec.edges[i].name;
        match h {
            [Some(a), Some(b)] if spec.vertices[*a].side != spec.vertices[*b].side => {}
            [Some(_), Some(_)] => return Err(bad(format!("edge {name} joins one side"))),
            _ => return Err(bad(format!("edge {name} is missing an end"))),
        }
    }

    let table = LabelTable::one_based(4 * m);
    let d = |x: u64| (x - 1) as u32;
    let vertex_classes: Vec<Class> = spec
        .vertices
        .iter()
        .map(|v| {
            let ends: Vec<(u64, u64)> = v
                .rotation
                .iter()
                .map(|e| end_labels(index[e.edge.as_str()], e.end))
                .collect();
            let left = ends.iter().map(|&(l, _)| d(l)).collect();
            let right = std::iter::once(ends[0].1)
                .chain(ends[1..].iter().rev().map(|&(_, r)| r))
                .map(d)
                .collect();
            Class {
                name: v.name.clone(),
                cycles: [left, right],
            }
        })
        .collect();
    let edge_classes: Vec<Class> = spec
        .edges
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let i = i as u64 + 1;
            let cycles = if e.twisted {
                [
                    vec![d(4 * i - 3), d(4 * i)],
                    vec![d(4 * i - 2), d(4 * i - 1)],
                ]
            } else {
                [
                    vec![d(4 * i - 3), d(4 * i - 1)],
                    vec![d(4 * i - 2), d(4 * i)],
                ]
            };
            Class {
                name: e.name.clone(),
                cycles,
            }
        })
        .collect();
    let iota = Permutation::from_images_unchecked((0..4 * m as u32).map(|x| x ^ 1).collect());
    let bip = Hypermap::from_classes(table, vertex_classes.clone(), edge_classes, Some(iota))?;

    let keep: Vec<bool> = (0..4 * m as u32)
        .map(|x| spec.vertices[bip.vertex_of(x)].side == Side::V)
        .collect();
    let tau = bip.tau();
    let face = bip.psi().then(tau)?;
    let (tau_d, old) = tau.restrict(&keep).compact(&keep);
    let (face_d, _) = face.restrict(&keep).compact(&keep);
    let (iota_d, _) = bip.iota().compact(&keep);
    let psi_d = face_d.then(&tau_d.inverse())?;
    let mut new_of = vec![u32::MAX; 4 * m];
    for (j, &x) in old.iter().enumerate() {
        new_of[x as usize] = j as u32;
    }
    let labels = LabelTable::new(old.iter().map(|&x| x as u64 + 1).collect())?;

    let vertex_hint: Vec<Class> = vertex_classes
        .iter()
        .zip(&spec.vertices)
        .filter(|(_, v)| v.side == Side::V)
        .map(|(c, _)| Class {
            name: c.name.clone(),
            cycles: c
                .cycles
                .clone()
                .map(|cy| cy.iter().map(|&x| new_of[x as usize]).collect()),
        })
        .collect();
    // Each E-side vertex names the hyperedge formed by the V-side ends of
    // its incident bipartite edges.
    let edge_hint: Vec<Class> = spec
        .vertices
        .iter()
        .filter(|v| v.side == Side::E)
        .map(|v| {
            let first = &v.rotation[0];
            let i = index[first.edge.as_str()];
            let other = match first.end {
                End::U => End::V,
                End::V => End::U,
            };
            let x = new_of[d(end_labels(i, other).0) as usize];
            Class {
                name: v.name.clone(),
                cycles: [psi_d.cycle_of(x), psi_d.cycle_of(iota_d.apply(x))],
            }
        })
        .collect();
    let expected = edge_hint.len();
    let h = Hypermap::from_flags(labels, tau_d, psi_d, iota_d, &vertex_hint, &edge_hint)?;
    if h.edge_count() != expected {
        return Err(bad(format!(
            "{} hyperedge classes for {expected} E-side vertices",
            h.edge_count()
        )));
    }
    Ok((bip, h))
}
