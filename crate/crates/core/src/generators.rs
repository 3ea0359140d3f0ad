//! Bundled examples, parametric families and their closed-form polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constructions::{join, CornerRef};
use crate::dsu::UnionFind;
use crate::error::{Error, Result};
use crate::genus_poly::GenusPolynomial;
use crate::hmf;
use crate::hypermap::{Class, ClassSpec, Hypermap};
use crate::notation::LabelTable;
use crate::perm::Permutation;

pub const PLANE_EXAMPLE_HMF: &str = include_str!("../data/plane_example.hmf");
pub const TORUS_EXAMPLE_HMF: &str = include_str!("../data/torus_example.hmf");
pub const FIG7_HMF: &str = include_str!("../data/fig7.hmf");
pub const PLANE_EXAMPLE_BMF: &str = include_str!("../data/plane_example.bmf");
pub const TORUS_EXAMPLE_BMF: &str = include_str!("../data/torus_example.bmf");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    PlaneExample,
    TorusExample,
    Fig7,
    Ladder,
    LadderTree,
    CycleHypertree,
    Star,
    RandomHypertree,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::PlaneExample,
        Family::TorusExample,
        Family::Fig7,
        Family::Ladder,
        Family::LadderTree,
        Family::CycleHypertree,
        Family::Star,
        Family::RandomHypertree,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Family::PlaneExample => "plane_example",
            Family::TorusExample => "torus_example",
            Family::Fig7 => "fig7",
            Family::Ladder => "ladder",
            Family::LadderTree => "ladder_tree",
            Family::CycleHypertree => "cycle_hypertree",
            Family::Star => "star",
            Family::RandomHypertree => "random_hypertree",
        }
    }

    pub fn is_example(self) -> bool {
        matches!(
            self,
            Family::PlaneExample | Family::TorusExample | Family::Fig7
        )
    }

    /// Smallest admissible size, or `None` for the fixed examples.
    pub fn min_size(self) -> Option<usize> {
        match self {
            Family::CycleHypertree => Some(3),
            Family::Ladder | Family::LadderTree | Family::Star | Family::RandomHypertree => Some(1),
            _ => None,
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().replace('-', "_");
        Family::ALL
            .into_iter()
            .find(|f| f.tag() == norm)
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A family with its size and, for random families, a seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyParams {
    pub family: Family,
    pub n: Option<usize>,
    pub seed: u64,
}

impl FamilyParams {
    pub fn new(family: Family, n: Option<usize>) -> Result<Self> {
        let p = FamilyParams { family, n, seed: 0 };
        p.size()?;
        Ok(p)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Parses `fig7`, `ladder 4` or `ladder:4`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut parts = text.split([' ', ':']).filter(|s| !s.is_empty());
        let family: Family = parts.next().unwrap_or("").parse()?;
        let n = parts
            .next()
            .map(|s| {
                s.parse::<usize>()
                    .map_err(|_| Error::UnknownFamily(text.to_string()))
            })
            .transpose()?;
        FamilyParams::new(family, n)
    }

    fn size(&self) -> Result<usize> {
        let bad = |n| Error::InvalidFamilySize {
            family: self.family.tag().to_string(),
            n,
        };
        match (self.family.min_size(), self.n) {
            (None, None) => Ok(0),
            (None, Some(n)) => Err(bad(n)),
            (Some(_), None) => Err(bad(0)),
            (Some(min), Some(n)) if n < min => Err(bad(n)),
            (Some(_), Some(n)) => Ok(n),
        }
    }

    pub fn generate(&self) -> Result<Hypermap> {
        let n = self.size()?;
        match self.family {
            Family::PlaneExample | Family::TorusExample | Family::Fig7 => example(self.family),
            Family::Ladder => ladder(n),
            Family::LadderTree => ladder_tree(n),
            Family::CycleHypertree => cycle_hypertree(n),
            Family::Star => star(n),
            Family::RandomHypertree => random_hypertree(n, self.seed),
        }
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.n {
            Some(n) => write!(f, "{} {n}", self.family),
            None => write!(f, "{}", self.family),
        }
    }
}

/// One of the three bundled examples.
pub fn example(family: Family) -> Result<Hypermap> {
    match family {
        Family::PlaneExample => hmf::parse(PLANE_EXAMPLE_HMF),
        Family::TorusExample => hmf::parse(TORUS_EXAMPLE_HMF),
        Family::Fig7 => hmf::parse(FIG7_HMF),
        other => Err(Error::UnknownFamily(format!(
            "{other} is not a bundled example"
        ))),
    }
}

pub fn bundled_examples() -> Vec<(Family, Hypermap)> {
    [Family::PlaneExample, Family::TorusExample, Family::Fig7]
        .into_iter()
        .map(|f| (f, example(f).expect("bundled examples parse")))
        .collect()
}

/// Builds a flag system from rotations over darts. Dart `d` owns labels
/// `2d+1` and `2d+2`; the first cycle of each class reads the odd labels in
/// rotation order and `iota` pairs the two labels of a dart.
fn from_darts(
    vertices: Vec<(String, Vec<u32>)>,
    hyperedges: Vec<(String, Vec<u32>)>,
    darts: u32,
) -> Result<Hypermap> {
    let classes = |rot: Vec<(String, Vec<u32>)>| -> Vec<Class> {
        rot.into_iter()
            .map(|(name, ds)| {
                let first = ds.iter().map(|&d| 2 * d).collect();
                let second = ds.iter().rev().map(|&d| 2 * d + 1).collect();
                Class {
                    name,
                    cycles: [first, second],
                }
            })
            .collect()
    };
    let iota = (0..2 * darts).map(|x| x ^ 1).collect();
    Hypermap::from_classes(
        LabelTable::one_based(2 * darts as usize),
        classes(vertices),
        classes(hyperedges),
        Some(Permutation::from_images(iota)?),
    )
}

/// Incidences `(vertex, hyperedge)` in hyperedge rotation order, with
/// vertex rotations given by a sort key per incidence.
struct Incidences<V> {
    edges: Vec<(String, Vec<u32>)>,
    at: BTreeMap<V, Vec<(i64, u32)>>,
    darts: u32,
}

impl<V: Ord + Clone> Incidences<V> {
    fn new() -> Self {
        Incidences {
            edges: Vec::new(),
            at: BTreeMap::new(),
            darts: 0,
        }
    }

    fn edge(&mut self, name: String, members: &[(V, i64)]) {
        let mut ds = Vec::new();
        for (v, key) in members {
            self.at
                .entry(v.clone())
                .or_default()
                .push((*key, self.darts));
            ds.push(self.darts);
            self.darts += 1;
        }
        self.edges.push((name, ds));
    }

    fn build(self, name: impl Fn(&V) -> String) -> Result<Hypermap> {
        let vertices = self
            .at
            .iter()
            .map(|(v, ds)| {
                let mut ds = ds.clone();
                ds.sort();
                (name(v), ds.into_iter().map(|(_, d)| d).collect())
            })
            .collect();
        from_darts(vertices, self.edges, self.darts)
    }
}

fn ladder_impl(n: usize, strip_ends: bool) -> Result<Hypermap> {
    if n == 0 {
        return Err(Error::InvalidFamilySize {
            family: "ladder".into(),
            n,
        });
    }
    let last = 2 * n + 1;
    let mut inc = Incidences::new();
    for i in 1..=n {
        let order = [2 * i - 1, 2 * i + 1, 2 * i + 2, 2 * i];
        let members: Vec<(usize, i64)> = order
            .into_iter()
            .filter(|&x| !(strip_ends && (x <= 2 || x >= last)))
            .map(|x| {
                let key = if x % 2 == 0 { -(i as i64) } else { i as i64 };
                (x, key)
            })
            .collect();
        inc.edge(format!("e{i}"), &members);
    }
    inc.build(|x| format!("x{x}"))
}

/// The hyper-ladder `H_n`: the 4-uniform path with its four end vertices
/// removed. For `n = 1` nothing is removed.
pub fn ladder(n: usize) -> Result<Hypermap> {
    ladder_impl(n, n > 1)
}

/// The 4-uniform path `T_n` with hyperedges `(x_{2i-1}, x_{2i+1}, x_{2i+2}, x_{2i})`.
pub fn ladder_tree(n: usize) -> Result<Hypermap> {
    ladder_impl(n, false)
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum CycleVertex {
    U,
    V(usize),
    X(usize),
}

/// The hypertree with one cycle: `e_i = (u, v_i, x_i)` for `i < n` and
/// `e_n = (v_{n-1}, ..., v_1, x_n)`.
pub fn cycle_hypertree(n: usize) -> Result<Hypermap> {
    if n < 3 {
        return Err(Error::InvalidFamilySize {
            family: "cycle_hypertree".into(),
            n,
        });
    }
    let mut inc = Incidences::new();
    for i in 1..n {
        let k = i as i64;
        inc.edge(
            format!("e{i}"),
            &[
                (CycleVertex::U, k),
                (CycleVertex::V(i), 0),
                (CycleVertex::X(i), 0),
            ],
        );
    }
    let mut last: Vec<(CycleVertex, i64)> = (1..n).rev().map(|i| (CycleVertex::V(i), 1)).collect();
    last.push((CycleVertex::X(n), 0));
    inc.edge(format!("e{n}"), &last);
    inc.build(|v| match v {
        CycleVertex::U => "u".to_string(),
        CycleVertex::V(i) => format!("v{i}"),
        CycleVertex::X(i) => format!("x{i}"),
    })
}

/// One hyperedge through `k` vertices of degree one.
pub fn star(k: usize) -> Result<Hypermap> {
    if k == 0 {
        return Err(Error::InvalidFamilySize {
            family: "star".into(),
            n: k,
        });
    }
    let mut inc = Incidences::new();
    let members: Vec<(usize, i64)> = (1..=k).map(|v| (v, 0)).collect();
    inc.edge("e1".to_string(), &members);
    inc.build(|v| format!("v{v}"))
}

/// A cycle-free hypertree with `e_count` hyperedges, grown by joining stars
/// of 2 to 4 vertices at random corners. Deterministic in `seed`.
pub fn random_hypertree(e_count: usize, seed: u64) -> Result<Hypermap> {
    if e_count == 0 {
        return Err(Error::InvalidFamilySize {
            family: "random_hypertree".into(),
            n: 0,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut h = star(rng.gen_range(2..=4))?;
    for _ in 1..e_count {
        let s = star(rng.gen_range(2..=4))?;
        let at = h.labels().external(rng.gen_range(0..h.n_labels() as u32));
        let on = s.labels().external(rng.gen_range(0..s.n_labels() as u32));
        h = join(&h, &CornerRef::at(at), &s, &CornerRef::at(on))?;
    }
    renamed(&h)
}

/// Same flags with classes renamed `v1..`, `e1..` in their current order.
pub fn renamed(h: &Hypermap) -> Result<Hypermap> {
    let (vs, es, iota) = h.to_specs();
    let rename = |specs: Vec<ClassSpec>, p: &str| -> Vec<ClassSpec> {
        specs
            .into_iter()
            .enumerate()
            .map(|(i, s)| ClassSpec {
                name: format!("{p}{}", i + 1),
                ..s
            })
            .collect()
    };
    Hypermap::from_parts(rename(vs, "v"), rename(es, "e"), Some(&iota))
}

fn vertex_components(h: &Hypermap, skip: Option<usize>) -> usize {
    let mut uf = UnionFind::new(h.vertex_count());
    for k in (0..h.edge_count()).filter(|&k| Some(k) != skip) {
        for w in h.incident_vertices(k).windows(2) {
            uf.union(w[0] as u32, w[1] as u32);
        }
    }
    uf.sets()
}

/// Connected, and removing any hyperedge disconnects the underlying
/// hypergraph.
pub fn is_hypertree(h: &Hypermap) -> bool {
    vertex_components(h, None) == 1
        && (0..h.edge_count()).all(|k| vertex_components(h, Some(k)) > 1)
}

/// The vertex-hyperedge incidence graph is a tree.
pub fn is_berge_acyclic(h: &Hypermap) -> bool {
    let sum_n: usize = h.hyperedges().iter().map(Class::degree).sum();
    vertex_components(h, None) == 1 && sum_n + 1 == h.vertex_count() + h.edge_count()
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// `2 (1 + z^2)^{n-1}`.
pub fn ladder_closed_form(n: usize) -> Result<GenusPolynomial> {
    let base = GenusPolynomial::from_terms([(0, 1), (2, 1)])?;
    base.pow(n as u32 - 1)?.mul(&GenusPolynomial::constant(2))
}

/// Two-case binomial formula for the one-cycle hypertree.
pub fn cycle_hypertree_closed_form(n: usize) -> Result<GenusPolynomial> {
    let n = n as u64;
    let mut p = GenusPolynomial::from_terms([(0, 2)])?;
    let mut add = |e: u64, c: u64| -> Result<()> {
        if c > 0 {
            p.add_term(e as u32, c)?;
        }
        Ok(())
    };
    add(2 * n - 4, 2)?;
    let half = n / 2;
    let top = if n % 2 == 1 { half } else { half - 1 };
    for i in 1..=top {
        add(2 * i, 2 * binom(n - 1, i))?;
    }
    for i in 2..=top {
        add(2 * n - 2 * i, 2 * binom(n - 1, i - 1))?;
    }
    if n.is_multiple_of(2) {
        add(n, binom(n - 1, half) + binom(n - 1, half - 1))?;
    }
    Ok(p)
}

/// `2^e`, the polynomial of every cycle-free hypertree with `e` hyperedges.
pub fn tree_closed_form(e: usize) -> Result<GenusPolynomial> {
    1u64.checked_shl(e as u32)
        .filter(|_| e < 64)
        .map(GenusPolynomial::constant)
        .ok_or(Error::CoefficientOverflow)
}

pub fn closed_form(family: Family, n: usize) -> Result<GenusPolynomial> {
    FamilyParams::new(family, Some(n))?;
    match family {
        Family::Ladder | Family::LadderTree => ladder_closed_form(n),
        Family::CycleHypertree => cycle_hypertree_closed_form(n),
        Family::Star => tree_closed_form(1),
        Family::RandomHypertree => tree_closed_form(n),
        other => Err(Error::UnknownFamily(format!("{other} has no closed form"))),
    }
}
