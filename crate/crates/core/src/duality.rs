//! Partial duals with respect to hyperedge subsets, spanning sub-hypermaps,
//! and the characteristic and genus formulas that connect them.
//!
//! For `A` a set of hyperedges let `psi_A` act as `psi` on the labels of `A`
//! and fix everything else. The partial dual `H^A` has
//!
//! * `tau' = psi_A.then(tau)`,
//! * `psi'` equal to `psi` with the cycles of `A` reversed,
//! * `iota' = psi_A.then(iota)`.
//!
//! With the reversal, `(H^A)^B = H^(A xor B)` holds exactly.

use std::fmt;

use serde::Serialize;

use crate::dsu::UnionFind;
use crate::error::{Error, Result};
use crate::hypermap::Hypermap;
use crate::perm::{count_orbits, Permutation};
use crate::report::IdentityCheck;

/// A set of hyperedges of a particular hypermap, as a bitmask over
/// hyperedge indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EdgeSubset {
    mask: u64,
    len: usize,
}

impl EdgeSubset {
    pub fn new(mask: u64, len: usize) -> Result<Self> {
        if len > 64 || (len < 64 && mask >> len != 0) {
            return Err(Error::SubsetOutOfRange { mask, edges: len });
        }
        Ok(EdgeSubset { mask, len })
    }

    pub fn empty(len: usize) -> Self {
        EdgeSubset { mask: 0, len }
    }

    pub fn full(len: usize) -> Self {
        EdgeSubset {
            mask: full_mask(len),
            len,
        }
    }

    pub fn from_indices(indices: &[usize], len: usize) -> Result<Self> {
        let mut mask = 0u64;
        for &k in indices {
            if k >= len {
                return Err(Error::SubsetOutOfRange {
                    mask: 1u64.checked_shl(k as u32).unwrap_or(0),
                    edges: len,
                });
            }
            mask |= 1 << k;
        }
        Ok(EdgeSubset { mask, len })
    }

    /// Comma-separated hyperedge names, or a `0b` bitmask whose least
    /// significant bit is hyperedge 0.
    pub fn parse(h: &Hypermap, text: &str) -> Result<Self> {
        let text = text.trim();
        let len = h.edge_count();
        if let Some(bits) = text.strip_prefix("0b") {
            let mask = u64::from_str_radix(bits, 2)
                .map_err(|_| Error::parse(0, format!("bad bitmask {text:?}")))?;
            return EdgeSubset::new(mask, len);
        }
        let mut idx = Vec::new();
        for name in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            idx.push(h.hyperedge_index(name)?);
        }
        EdgeSubset::from_indices(&idx, len)
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn universe(&self) -> usize {
        self.len
    }

    pub fn contains(&self, k: usize) -> bool {
        self.mask >> k & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn complement(&self) -> Self {
        EdgeSubset {
            mask: !self.mask & full_mask(self.len),
            len: self.len,
        }
    }

    pub fn symmetric_difference(&self, other: &EdgeSubset) -> Self {
        debug_assert_eq!(self.len, other.len);
        EdgeSubset {
            mask: self.mask ^ other.mask,
            len: self.len,
        }
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&k| self.contains(k))
    }

    /// `{e1,e3}` style rendering with the hypermap's names.
    pub fn display<'a>(&'a self, h: &'a Hypermap) -> impl fmt::Display + 'a {
        SubsetNames { set: self, h }
    }
}

struct SubsetNames<'a> {
    set: &'a EdgeSubset,
    h: &'a Hypermap,
}

impl fmt::Display for SubsetNames<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, k) in self.set.indices().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(&self.h.hyperedges()[k].name)?;
        }
        f.write_str("}")
    }
}

pub(crate) fn full_mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

fn check_subset(h: &Hypermap, a: &EdgeSubset) -> Result<()> {
    if a.len != h.edge_count() {
        return Err(Error::SubsetOutOfRange {
            mask: a.mask,
            edges: h.edge_count(),
        });
    }
    Ok(())
}

/// `psi` on the labels of `A`, identity elsewhere.
pub fn psi_restricted(h: &Hypermap, a: &EdgeSubset) -> Permutation {
    let psi = h.psi();
    let image = (0..h.n_labels() as u32)
        .map(|x| {
            if a.contains(h.edge_of(x)) {
                psi.apply(x)
            } else {
                x
            }
        })
        .collect();
    Permutation::from_images(image).expect("restriction to whole cycles is a bijection")
}

pub fn partial_dual(h: &Hypermap, a: &EdgeSubset) -> Result<Hypermap> {
    check_subset(h, a)?;
    if a.is_empty() {
        return Ok(h.clone());
    }
    let psi_a = psi_restricted(h, a);
    let tau = psi_a.then(h.tau())?;
    let psi_inv = h.psi().inverse();
    let psi = Permutation::from_images(
        (0..h.n_labels() as u32)
            .map(|x| {
                if a.contains(h.edge_of(x)) {
                    psi_inv.apply(x)
                } else {
                    h.psi().apply(x)
                }
            })
            .collect(),
    )?;
    let iota = psi_a.then(h.iota())?;
    Hypermap::from_flags(
        h.labels().clone(),
        tau,
        psi,
        iota,
        h.vertices(),
        h.hyperedges(),
    )
}

pub fn dual(h: &Hypermap) -> Result<Hypermap> {
    partial_dual(h, &EdgeSubset::full(h.edge_count()))
}

/// Counts of the spanning sub-hypermap on all vertices and the hyperedges
/// of `A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SpanningSubCounts {
    pub e_a: usize,
    pub c_a: usize,
    pub f_a: usize,
    pub chi_a: i64,
    pub eps_a: i64,
    pub sum_n_a: usize,
}

impl SpanningSubCounts {
    fn assemble(v: usize, e_a: usize, c_a: usize, f_a: usize, sum_n_a: usize) -> Self {
        let chi_a = v as i64 + e_a as i64 + f_a as i64 - sum_n_a as i64;
        SpanningSubCounts {
            e_a,
            c_a,
            f_a,
            chi_a,
            eps_a: 2 * c_a as i64 - chi_a,
            sum_n_a,
        }
    }
}

/// Faces are counted over the full label set: labels of hyperedges outside
/// `A` ride along inside the face orbits of `psi_A.then(tau)`.
pub fn spanning_counts(h: &Hypermap, a: &EdgeSubset) -> Result<SpanningSubCounts> {
    check_subset(h, a)?;
    let mut ev = SubsetEvaluator::new(h);
    let f_a = ev.face_count(a.mask);
    let c_a = ev.component_count(a.mask);
    Ok(SpanningSubCounts::assemble(
        h.vertex_count(),
        a.count(),
        c_a,
        f_a,
        ev.sum_n(a.mask),
    ))
}

/// The same counts by deleting the labels outside `A` and adding one face
/// for every vertex left without labels.
pub fn spanning_counts_restricted(h: &Hypermap, a: &EdgeSubset) -> Result<SpanningSubCounts> {
    check_subset(h, a)?;
    let keep: Vec<bool> = (0..h.n_labels() as u32)
        .map(|x| a.contains(h.edge_of(x)))
        .collect();
    let tau_b = h.tau().restrict(&keep);
    let mut seen = Vec::new();
    let kept = keep.iter().filter(|&&k| k).count();
    // Labels outside B_A are fixed by both maps; drop those singleton orbits.
    let orbits = count_orbits(h.n_labels(), |x| tau_b.apply(h.psi_on(x, &keep)), &mut seen)
        - (h.n_labels() - kept);
    let mut touched = vec![false; h.vertex_count()];
    for x in 0..h.n_labels() as u32 {
        if keep[x as usize] {
            touched[h.vertex_of(x)] = true;
        }
    }
    let isolated = touched.iter().filter(|&&t| !t).count();
    let mut ev = SubsetEvaluator::new(h);
    Ok(SpanningSubCounts::assemble(
        h.vertex_count(),
        a.count(),
        ev.component_count(a.mask),
        orbits / 2 + isolated,
        kept / 2,
    ))
}

impl Hypermap {
    #[inline]
    fn psi_on(&self, x: u32, keep: &[bool]) -> u32 {
        if keep[x as usize] {
            self.psi().apply(x)
        } else {
            x
        }
    }
}

fn require_connected(h: &Hypermap) -> Result<()> {
    if h.is_connected() {
        Ok(())
    } else {
        Err(Error::NotConnected)
    }
}

/// `chi(A) + chi(A^c) - 2 v(H)`.
pub fn chi_partial_dual_formula(h: &Hypermap, a: &EdgeSubset) -> Result<i64> {
    require_connected(h)?;
    let s = spanning_counts(h, a)?;
    let t = spanning_counts(h, &a.complement())?;
    Ok(s.chi_a + t.chi_a - 2 * h.vertex_count() as i64)
}

/// `eps(A) + eps(A^c) + 2[c(H) - c(A) - c(A^c)] + 2 v(H)`.
pub fn eps_partial_dual_formula(h: &Hypermap, a: &EdgeSubset) -> Result<i64> {
    require_connected(h)?;
    check_subset(h, a)?;
    Ok(SubsetEvaluator::new(h).eps_formula(a.mask))
}

pub fn gamma_partial_dual_formula(h: &Hypermap, a: &EdgeSubset) -> Result<i64> {
    if !h.is_orientable() {
        return Err(Error::NotOrientable);
    }
    Ok(eps_partial_dual_formula(h, a)? / 2)
}

/// Scratch space for evaluating many subsets of one hypermap without
/// allocating.
pub struct SubsetEvaluator<'a> {
    h: &'a Hypermap,
    edge_of: Vec<u32>,
    edge_vertices: Vec<Vec<u32>>,
    degrees: Vec<usize>,
    seen: Vec<bool>,
    uf: UnionFind,
    label_uf: UnionFind,
    tau2: Vec<u32>,
    psi2: Vec<u32>,
    iota2: Vec<u32>,
    psi_inv: Permutation,
    c: usize,
}

impl<'a> SubsetEvaluator<'a> {
    pub fn new(h: &'a Hypermap) -> Self {
        let n = h.n_labels();
        SubsetEvaluator {
            h,
            edge_of: (0..n as u32).map(|x| h.edge_of(x) as u32).collect(),
            edge_vertices: (0..h.edge_count())
                .map(|k| {
                    h.incident_vertices(k)
                        .into_iter()
                        .map(|v| v as u32)
                        .collect()
                })
                .collect(),
            degrees: h.hyperedges().iter().map(|c| c.degree()).collect(),
            seen: vec![false; n],
            uf: UnionFind::new(h.vertex_count()),
            label_uf: UnionFind::new(n),
            tau2: vec![0; n],
            psi2: vec![0; n],
            iota2: vec![0; n],
            psi_inv: h.psi().inverse(),
            c: h.component_count(),
        }
    }

    #[inline]
    fn in_mask(&self, mask: u64, x: u32) -> bool {
        mask >> self.edge_of[x as usize] & 1 == 1
    }

    /// `f(A)`.
    pub fn face_count(&mut self, mask: u64) -> usize {
        let (tau, psi) = (self.h.tau(), self.h.psi());
        let edge_of = &self.edge_of;
        count_orbits(
            self.h.n_labels(),
            |x| {
                let y = if mask >> edge_of[x as usize] & 1 == 1 {
                    psi.apply(x)
                } else {
                    x
                };
                tau.apply(y)
            },
            &mut self.seen,
        ) / 2
    }

    /// `c(A)`, isolated vertices included.
    pub fn component_count(&mut self, mask: u64) -> usize {
        self.uf.reset();
        for (k, vs) in self.edge_vertices.iter().enumerate() {
            if mask >> k & 1 == 1 {
                for w in vs.windows(2) {
                    self.uf.union(w[0], w[1]);
                }
            }
        }
        self.uf.sets()
    }

    pub fn sum_n(&self, mask: u64) -> usize {
        self.degrees
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, d)| d)
            .sum()
    }

    fn spanning(&mut self, mask: u64) -> SpanningSubCounts {
        let f_a = self.face_count(mask);
        let c_a = self.component_count(mask);
        SpanningSubCounts::assemble(
            self.h.vertex_count(),
            mask.count_ones() as usize,
            c_a,
            f_a,
            self.sum_n(mask),
        )
    }

    /// Euler genus of `H^A` through the spanning sub-hypermaps of `A` and
    /// its complement.
    pub fn eps_formula(&mut self, mask: u64) -> i64 {
        let co = !mask & full_mask(self.h.edge_count());
        let s = self.spanning(mask);
        let t = self.spanning(co);
        s.eps_a
            + t.eps_a
            + 2 * (self.c as i64 - s.c_a as i64 - t.c_a as i64)
            + 2 * self.h.vertex_count() as i64
    }

    /// Euler genus of `H^A` read off the partial dual's own permutations.
    pub fn eps_direct(&mut self, mask: u64) -> i64 {
        let n = self.h.n_labels();
        let (tau, psi, iota) = (self.h.tau(), self.h.psi(), self.h.iota());
        for x in 0..n as u32 {
            let inside = self.in_mask(mask, x);
            let pa = if inside { psi.apply(x) } else { x };
            self.tau2[x as usize] = tau.apply(pa);
            self.iota2[x as usize] = iota.apply(pa);
            self.psi2[x as usize] = if inside {
                self.psi_inv.apply(x)
            } else {
                psi.apply(x)
            };
        }
        let (tau2, psi2, iota2) = (&self.tau2, &self.psi2, &self.iota2);
        let v = count_orbits(n, |x| tau2[x as usize], &mut self.seen) / 2;
        let f = count_orbits(n, |x| tau2[psi2[x as usize] as usize], &mut self.seen) / 2;
        self.label_uf.reset();
        for x in 0..n as u32 {
            self.label_uf.union(x, tau2[x as usize]);
            self.label_uf.union(x, psi2[x as usize]);
            self.label_uf.union(x, iota2[x as usize]);
        }
        let c = self.label_uf.sets();
        let chi = v as i64 + self.h.edge_count() as i64 + f as i64 - (n / 2) as i64;
        2 * c as i64 - chi
    }
}

/// Checks the partial-dual identities for one subset `A` (and `B`, for the
/// composition law) at the level of exact permutation equality.
pub fn check_properties(
    h: &Hypermap,
    a: &EdgeSubset,
    b: Option<&EdgeSubset>,
) -> Result<Vec<IdentityCheck>> {
    let ha = partial_dual(h, a)?;
    let hc = partial_dual(h, &a.complement())?;
    let witness = |ok: bool| (!ok).then(|| format!("A={}", a.display(h)));
    let (c0, c1) = (h.counts(), ha.counts());
    let sub = spanning_counts(h, a)?;
    let mut out = vec![
        IdentityCheck::from_witness(
            "pd.invariants",
            witness(c0.c == c1.c && c0.e == c1.e && c0.sum_n == c1.sum_n && c1.v == sub.f_a),
        ),
        IdentityCheck::from_witness("pd.orientability", witness(!c0.orientable || c1.orientable)),
        IdentityCheck::from_witness(
            "pd.dual_of_partial",
            witness({
                let d = dual(&ha)?;
                let da = partial_dual(&dual(h)?, a)?;
                d.same_flags(&hc) && da.same_flags(&hc)
            }),
        ),
        IdentityCheck::from_witness(
            "pd.involution",
            witness(partial_dual(&ha, a)?.same_flags(h)),
        ),
        IdentityCheck::from_witness("pd.faces_vs_complement", witness(c1.f == hc.counts().v)),
    ];
    if let Some(b) = b {
        let ab = partial_dual(&ha, b)?;
        let ba = partial_dual(&partial_dual(h, b)?, a)?;
        let direct = partial_dual(h, &a.symmetric_difference(b))?;
        let ok = ab.same_flags(&direct) && ba.same_flags(&direct);
        out.push(IdentityCheck::from_witness(
            "pd.composition",
            (!ok).then(|| format!("A={} B={}", a.display(h), b.display(h))),
        ));
    }
    if h.is_connected() {
        out.push(IdentityCheck::from_witness(
            "chi.formula",
            witness(chi_partial_dual_formula(h, a)? == c1.chi),
        ));
        out.push(IdentityCheck::from_witness(
            "eps.formula",
            witness(eps_partial_dual_formula(h, a)? == c1.eps),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hmf;
    use crate::notation::{format_cycles, parse_cycles};
    use crate::report::all_passed;

    fn fig7() -> Hypermap {
        hmf::parse(include_str!("../data/fig7.hmf")).unwrap()
    }

    fn plane() -> Hypermap {
        hmf::parse(include_str!("../data/plane_example.hmf")).unwrap()
    }

    fn all_subsets(h: &Hypermap) -> impl Iterator<Item = EdgeSubset> {
        let e = h.edge_count();
        (0..1u64 << e).map(move |m| EdgeSubset::new(m, e).unwrap())
    }

    #[test]
    fn fig7_partial_dual_matches_reference_cycles() {
        let h = fig7();
        let a = EdgeSubset::parse(&h, "e1").unwrap();
        let d = partial_dual(&h, &a).unwrap();
        let want =
            parse_cycles("(1,3,9,5,7,13,19,17,21)(2,22,18,20,14,8,6,10,4)(11,23,15)(12,16,24)")
                .unwrap()
                .canonical()
                .to_string();
        assert_eq!(format_cycles(d.tau(), d.labels()), want);
        assert_eq!(d.vertex_count(), 2);
        assert_eq!(spanning_counts(&h, &a).unwrap().f_a, 2);
        assert_eq!(d.vertices()[0].name, "v4");
    }

    #[test]
    fn empty_subset_is_identity() {
        let h = fig7();
        let d = partial_dual(&h, &EdgeSubset::empty(4)).unwrap();
        assert!(d.same_flags(&h));
        assert_eq!(d.vertices(), h.vertices());
        assert_eq!(d.hyperedges(), h.hyperedges());
    }

    #[test]
    fn involution_on_every_subset() {
        let h = fig7();
        for a in all_subsets(&h) {
            let back = partial_dual(&partial_dual(&h, &a).unwrap(), &a).unwrap();
            assert!(back.same_flags(&h), "mask {:b}", a.mask());
        }
    }

    #[test]
    fn dual_of_plane_example() {
        let h = plane();
        let d = dual(&h).unwrap();
        let c = d.counts();
        assert_eq!((c.v, c.f, c.e, c.chi), (6, 5, 3, 2));
        assert!(dual(&d).unwrap().same_flags(&h));
        let s = hmf::parse("hmf 1\nvertex v (1) (2)\nhyperedge e (1) (2)\n").unwrap();
        assert!(dual(&s).unwrap().is_isomorphic(&s));
    }

    #[test]
    fn spanning_counts_edge_cases() {
        let h = fig7();
        let s = spanning_counts(&h, &EdgeSubset::empty(4)).unwrap();
        assert_eq!((s.f_a, s.c_a, s.chi_a, s.eps_a), (4, 4, 8, 0));
        let t = spanning_counts(&h, &EdgeSubset::full(4)).unwrap();
        let c = h.counts();
        assert_eq!((t.f_a, t.c_a, t.chi_a, t.eps_a), (c.f, c.c, c.chi, c.eps));
    }

    #[test]
    fn both_face_routes_agree() {
        for h in [fig7(), plane()] {
            for a in all_subsets(&h) {
                assert_eq!(
                    spanning_counts(&h, &a).unwrap(),
                    spanning_counts_restricted(&h, &a).unwrap()
                );
            }
        }
    }

    #[test]
    fn formulas_match_direct_counts() {
        for h in [fig7(), plane()] {
            let mut ev = SubsetEvaluator::new(&h);
            let mut gammas = 0;
            for a in all_subsets(&h) {
                let d = partial_dual(&h, &a).unwrap().counts();
                assert_eq!(chi_partial_dual_formula(&h, &a).unwrap(), d.chi);
                assert_eq!(eps_partial_dual_formula(&h, &a).unwrap(), d.eps);
                assert_eq!(ev.eps_direct(a.mask()), d.eps);
                assert_eq!(gamma_partial_dual_formula(&h, &a).unwrap() * 2, d.eps);
                gammas += 1;
            }
            assert_eq!(gammas, 1 << h.edge_count());
            let e = EdgeSubset::empty(h.edge_count());
            assert_eq!(chi_partial_dual_formula(&h, &e).unwrap(), h.counts().chi);
            assert_eq!(eps_partial_dual_formula(&h, &e).unwrap(), h.counts().eps);
        }
    }

    #[test]
    fn formulas_need_connected_input() {
        let h = plane().disjoint_union(&plane());
        let a = EdgeSubset::empty(6);
        assert_eq!(chi_partial_dual_formula(&h, &a), Err(Error::NotConnected));
        assert_eq!(eps_partial_dual_formula(&h, &a), Err(Error::NotConnected));
    }

    #[test]
    fn property_checks_pass_on_fig7() {
        let h = fig7();
        for a in all_subsets(&h) {
            for b in all_subsets(&h) {
                let r = check_properties(&h, &a, Some(&b)).unwrap();
                assert!(all_passed(&r), "{r:?}");
            }
        }
    }

    #[test]
    fn subset_parsing() {
        let h = fig7();
        assert_eq!(EdgeSubset::parse(&h, "e1,e3").unwrap().mask(), 0b101);
        assert_eq!(EdgeSubset::parse(&h, "0b1010").unwrap().mask(), 0b1010);
        assert_eq!(EdgeSubset::parse(&h, "").unwrap().mask(), 0);
        assert!(EdgeSubset::parse(&h, "0b10000").is_err());
        assert!(matches!(
            EdgeSubset::parse(&h, "e9"),
            Err(Error::UnknownHyperedge(_))
        ));
        let a = EdgeSubset::parse(&h, "e2").unwrap();
        assert_eq!(a.complement().complement(), a);
        assert_eq!(a.display(&h).to_string(), "{e2}");
    }
}
