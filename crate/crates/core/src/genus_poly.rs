//! Genus polynomials summed over all hyperedge subsets, their spectra, and
//! the parallel enumerator that produces them.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::duality::SubsetEvaluator;
use crate::error::{Error, Result};
use crate::hypermap::Hypermap;

/// Exponent to coefficient, with no zero coefficients stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GenusPolynomial {
    terms: BTreeMap<u32, u64>,
}

impl GenusPolynomial {
    pub fn zero() -> Self {
        GenusPolynomial::default()
    }

    pub fn monomial(exp: u32, coeff: u64) -> Self {
        let mut p = GenusPolynomial::zero();
        if coeff != 0 {
            p.terms.insert(exp, coeff);
        }
        p
    }

    pub fn constant(c: u64) -> Self {
        GenusPolynomial::monomial(0, c)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u32, u64)>) -> Result<Self> {
        let mut p = GenusPolynomial::zero();
        for (e, c) in terms {
            p.add_term(e, c)?;
        }
        Ok(p)
    }

    pub fn add_term(&mut self, exp: u32, coeff: u64) -> Result<()> {
        if coeff == 0 {
            return Ok(());
        }
        let slot = self.terms.entry(exp).or_insert(0);
        *slot = slot.checked_add(coeff).ok_or(Error::CoefficientOverflow)?;
        Ok(())
    }

    pub fn coeff(&self, exp: u32) -> u64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn exponents(&self) -> Vec<u32> {
        self.terms.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn add(&self, other: &GenusPolynomial) -> Result<GenusPolynomial> {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c)?;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &GenusPolynomial) -> Result<GenusPolynomial> {
        let mut out = GenusPolynomial::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                let c = c1.checked_mul(c2).ok_or(Error::CoefficientOverflow)?;
                let e = e1.checked_add(e2).ok_or(Error::CoefficientOverflow)?;
                out.add_term(e, c)?;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<GenusPolynomial> {
        let mut out = GenusPolynomial::constant(1);
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    pub fn eval_at_one(&self) -> Result<u64> {
        self.terms
            .values()
            .try_fold(0u64, |acc, &c| acc.checked_add(c))
            .ok_or(Error::CoefficientOverflow)
    }

    /// `p(z^k)`.
    pub fn scale_exponents(&self, k: u32) -> GenusPolynomial {
        GenusPolynomial {
            terms: self.terms.iter().map(|(&e, &c)| (e * k, c)).collect(),
        }
    }

    /// The polynomial `q` with `q(z^2) = p(z)`, if every exponent is even.
    pub fn halve_exponents(&self) -> Option<GenusPolynomial> {
        if self.terms.keys().any(|e| e % 2 != 0) {
            return None;
        }
        Some(GenusPolynomial {
            terms: self.terms.iter().map(|(&e, &c)| (e / 2, c)).collect(),
        })
    }

    pub fn all_coefficients_even(&self) -> bool {
        self.terms.values().all(|c| c % 2 == 0)
    }
}

impl fmt::Display for GenusPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match (e, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => f.write_str("z")?,
                (1, c) => write!(f, "{c}z")?,
                (e, 1) => write!(f, "z^{e}")?,
                (e, c) => write!(f, "{c}z^{e}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for GenusPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_map(self.terms.iter().map(|(e, c)| (e.to_string(), c)))
    }
}

/// A maximal run of missing exponents strictly between two present ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Gap {
    pub from: u32,
    pub to: u32,
    pub size: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumReport {
    pub spectrum: Vec<u32>,
    pub gaps: Vec<Gap>,
    pub interpolating: bool,
}

pub fn spectrum_report(p: &GenusPolynomial) -> SpectrumReport {
    let spectrum = p.exponents();
    let gaps: Vec<Gap> = spectrum
        .windows(2)
        .filter(|w| w[1] - w[0] > 1)
        .map(|w| Gap {
            from: w[0] + 1,
            to: w[1] - 1,
            size: w[1] - w[0] - 1,
        })
        .collect();
    SpectrumReport {
        interpolating: gaps.is_empty(),
        spectrum,
        gaps,
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Direct,
    #[default]
    Formula,
    Both,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Direct => "direct",
            Engine::Formula => "formula",
            Engine::Both => "both",
        })
    }
}

impl FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "direct" => Ok(Engine::Direct),
            "formula" => Ok(Engine::Formula),
            "both" => Ok(Engine::Both),
            _ => Err(format!("unknown engine {s:?} (direct, formula, both)")),
        }
    }
}

pub const DEFAULT_EDGE_CAP: usize = 30;
pub const MAX_EDGE_CAP: usize = 62;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngineConfig {
    pub engine: Engine,
    pub workers: usize,
    pub edge_cap: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            engine: Engine::Formula,
            workers: 1,
            edge_cap: DEFAULT_EDGE_CAP,
        }
    }
}

impl EngineConfig {
    pub fn with_engine(engine: Engine) -> Self {
        EngineConfig {
            engine,
            ..Self::default()
        }
    }

    pub fn workers(mut self, n: usize) -> Self {
        self.workers = n.max(1);
        self
    }
}

/// Every subset of `e` hyperedges, ascending by mask.
pub fn subset_iter(e: usize) -> Range<u64> {
    0..1u64 << e
}

/// `total` masks split into at most `workers` contiguous ranges.
pub fn shard_ranges(total: u64, workers: usize) -> Vec<Range<u64>> {
    let w = (workers.max(1) as u64).min(total.max(1));
    let (q, r) = (total / w, total % w);
    let mut out = Vec::with_capacity(w as usize);
    let mut start = 0;
    for i in 0..w {
        let len = q + u64::from(i < r);
        out.push(start..start + len);
        start += len;
    }
    out
}

/// Sum over all subsets `A` of `z^eps(H^A)`.
pub fn euler_genus_polynomial(h: &Hypermap, cfg: &EngineConfig) -> Result<GenusPolynomial> {
    if cfg.edge_cap > MAX_EDGE_CAP {
        return Err(Error::InvalidEdgeCap(cfg.edge_cap));
    }
    let e = h.edge_count();
    if e > cfg.edge_cap {
        return Err(Error::EdgeCapExceeded {
            edges: e,
            cap: cfg.edge_cap,
        });
    }
    if !h.is_connected() {
        return Err(Error::NotConnected);
    }
    let shards = shard_ranges(1u64 << e, cfg.workers);
    let engine = cfg.engine;
    let results: Vec<Result<Vec<u64>>> = if shards.len() == 1 {
        vec![enumerate_range(h, engine, shards[0].clone())]
    } else {
        std::thread::scope(|s| {
            let handles: Vec<_> = shards
                .iter()
                .map(|r| {
                    let r = r.clone();
                    s.spawn(move || enumerate_range(h, engine, r))
                })
                .collect();
            handles
                .into_iter()
                .map(|j| j.join().expect("enumeration worker panicked"))
                .collect()
        })
    };
    let mut poly = GenusPolynomial::zero();
    for r in results {
        for (exp, c) in r?.into_iter().enumerate() {
            poly.add_term(exp as u32, c)?;
        }
    }
    Ok(poly)
}

fn enumerate_range(h: &Hypermap, engine: Engine, masks: Range<u64>) -> Result<Vec<u64>> {
    let mut ev = SubsetEvaluator::new(h);
    let mut acc: Vec<u64> = Vec::new();
    for mask in masks {
        let eps = match engine {
            Engine::Formula => ev.eps_formula(mask),
            Engine::Direct => ev.eps_direct(mask),
            Engine::Both => {
                let direct = ev.eps_direct(mask);
                let formula = ev.eps_formula(mask);
                if direct != formula {
                    return Err(Error::EngineMismatch {
                        mask,
                        direct,
                        formula,
                    });
                }
                direct
            }
        };
        let exp = usize::try_from(eps).expect("Euler genus is nonnegative");
        if exp >= acc.len() {
            acc.resize(exp + 1, 0);
        }
        acc[exp] = acc[exp].checked_add(1).ok_or(Error::CoefficientOverflow)?;
    }
    Ok(acc)
}

/// Sum over all subsets `A` of `z^gamma(H^A)`.
pub fn orientable_genus_polynomial(h: &Hypermap, cfg: &EngineConfig) -> Result<GenusPolynomial> {
    if !h.is_orientable() {
        return Err(Error::NotOrientable);
    }
    let p = euler_genus_polynomial(h, cfg)?;
    Ok(p.halve_exponents()
        .expect("orientable partial duals have even Euler genus"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hmf;
    use proptest::prelude::*;

    fn poly(terms: &[(u32, u64)]) -> GenusPolynomial {
        GenusPolynomial::from_terms(terms.iter().copied()).unwrap()
    }

    fn fig7() -> Hypermap {
        hmf::parse(include_str!("../data/fig7.hmf")).unwrap()
    }

    #[test]
    fn arithmetic() {
        let p = poly(&[(0, 2), (2, 2)]);
        assert_eq!(p.mul(&p).unwrap(), poly(&[(0, 4), (2, 8), (4, 4)]));
        assert_eq!(p.mul(&GenusPolynomial::constant(1)).unwrap(), p);
        assert_eq!(p.add(&p).unwrap(), poly(&[(0, 4), (2, 4)]));
        assert_eq!(p.eval_at_one().unwrap(), 4);
        assert_eq!(p.to_string(), "2 + 2z^2");
        assert_eq!(poly(&[(1, 1), (3, 5)]).to_string(), "z + 5z^3");
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"0":2,"2":2}"#);
        assert_eq!(p.halve_exponents().unwrap(), poly(&[(0, 2), (1, 2)]));
        assert_eq!(poly(&[(1, 1)]).halve_exponents(), None);
    }

    #[test]
    fn overflow_is_reported() {
        let big = GenusPolynomial::constant(u64::MAX);
        assert_eq!(big.add(&big), Err(Error::CoefficientOverflow));
        assert_eq!(big.mul(&poly(&[(0, 2)])), Err(Error::CoefficientOverflow));
    }

    #[test]
    fn spectra() {
        let r = spectrum_report(&poly(&[(0, 2), (2, 2)]));
        assert_eq!(r.spectrum, vec![0, 2]);
        assert_eq!(
            r.gaps,
            vec![Gap {
                from: 1,
                to: 1,
                size: 1
            }]
        );
        assert!(!r.interpolating);
        let r = spectrum_report(&GenusPolynomial::constant(16));
        assert!(r.interpolating);
        for n in 8..20u32 {
            let p = poly(&[(0, 1), (4, 1), (2 * n - 8, 1), (2 * n - 4, 1)]);
            let r = spectrum_report(&p);
            let middle = r.gaps.iter().find(|g| g.from == 5).unwrap();
            assert_eq!(middle.size, 2 * n - 13);
        }
    }

    #[test]
    fn subset_iteration() {
        assert_eq!(subset_iter(2).collect::<Vec<_>>(), vec![0, 1, 2, 3]);
        assert_eq!(subset_iter(10).count(), 1024);
        let shards = shard_ranges(1024, 7);
        assert_eq!(shards.len(), 7);
        assert_eq!(shards[0].start, 0);
        assert_eq!(shards.last().unwrap().end, 1024);
        assert!(shards.windows(2).all(|w| w[0].end == w[1].start));
        assert_eq!(shard_ranges(2, 8).len(), 2);
    }

    #[test]
    fn fig7_polynomials() {
        let h = fig7();
        let cfg = EngineConfig::with_engine(Engine::Both);
        let p = euler_genus_polynomial(&h, &cfg).unwrap();
        assert_eq!(p.eval_at_one().unwrap(), 16);
        assert!(p.all_coefficients_even());
        let g = orientable_genus_polynomial(&h, &cfg).unwrap();
        assert_eq!(g.eval_at_one().unwrap(), 16);
        assert_eq!(g.scale_exponents(2), p);
        assert_eq!(g.coeff(1), p.coeff(2));
    }

    #[test]
    fn single_hyperedge_star() {
        let h = hmf::parse(
            "hmf 1\nvertex a (1) (2)\nvertex b (3) (4)\nvertex c (5) (6)\nhyperedge e (1 3 5) (6 4 2)\n",
        )
        .unwrap();
        let p = euler_genus_polynomial(&h, &EngineConfig::default()).unwrap();
        assert_eq!(p, GenusPolynomial::constant(2));
    }

    #[test]
    fn caps_and_preconditions() {
        let h = fig7();
        let cfg = EngineConfig {
            edge_cap: 3,
            ..EngineConfig::default()
        };
        assert_eq!(
            euler_genus_polynomial(&h, &cfg),
            Err(Error::EdgeCapExceeded { edges: 4, cap: 3 })
        );
        let cfg = EngineConfig {
            edge_cap: 63,
            ..EngineConfig::default()
        };
        assert_eq!(
            euler_genus_polynomial(&h, &cfg),
            Err(Error::InvalidEdgeCap(63))
        );
        let u = h.disjoint_union(&h);
        assert_eq!(
            euler_genus_polynomial(&u, &EngineConfig::default()),
            Err(Error::NotConnected)
        );
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let h = fig7();
        let one = euler_genus_polynomial(&h, &EngineConfig::default()).unwrap();
        for w in [2, 3, 5, 16, 64] {
            let cfg = EngineConfig::default().workers(w);
            assert_eq!(euler_genus_polynomial(&h, &cfg).unwrap(), one);
        }
    }

    proptest! {
        #[test]
        fn multiplication_commutes_and_evaluates(
            a in proptest::collection::btree_map(0u32..10, 1u64..1000, 0..5),
            b in proptest::collection::btree_map(0u32..10, 1u64..1000, 0..5),
        ) {
            let p = GenusPolynomial::from_terms(a).unwrap();
            let q = GenusPolynomial::from_terms(b).unwrap();
            let pq = p.mul(&q).unwrap();
            prop_assert_eq!(&pq, &q.mul(&p).unwrap());
            prop_assert_eq!(pq.eval_at_one().unwrap(), p.eval_at_one().unwrap() * q.eval_at_one().unwrap());
        }

        #[test]
        fn gap_sizes_account_for_the_range(exps in proptest::collection::btree_set(0u32..60, 1..10)) {
            let p = GenusPolynomial::from_terms(exps.iter().map(|&e| (e, 1))).unwrap();
            let r = spectrum_report(&p);
            let missing: u32 = r.gaps.iter().map(|g| g.size).sum();
            let span = r.spectrum.last().unwrap() - r.spectrum[0] + 1;
            prop_assert_eq!(missing + r.spectrum.len() as u32, span);
            prop_assert_eq!(r.interpolating, r.gaps.is_empty());
        }
    }
}
