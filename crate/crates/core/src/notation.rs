//! Cycle notation and the table between external labels (arbitrary positive
//! integers, as written in files) and dense internal labels.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Disjoint cycles over external labels, as written.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleSet {
    pub cycles: Vec<Vec<u64>>,
}

impl CycleSet {
    /// Cycles rotated to start at their minimum, sorted by minimum, with
    /// fixed points dropped.
    pub fn canonical(&self) -> CycleSet {
        let mut cycles: Vec<Vec<u64>> = self
            .cycles
            .iter()
            .filter(|c| c.len() > 1)
            .map(|c| rotate_to_min(c))
            .collect();
        cycles.sort_by_key(|c| c[0]);
        CycleSet { cycles }
    }

    pub fn labels(&self) -> impl Iterator<Item = u64> + '_ {
        self.cycles.iter().flatten().copied()
    }
}

impl fmt::Display for CycleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cycles {
            write_cycle(f, c)?;
        }
        Ok(())
    }
}

pub(crate) fn write_cycle(f: &mut impl fmt::Write, cycle: &[u64]) -> fmt::Result {
    f.write_char('(')?;
    for (i, x) in cycle.iter().enumerate() {
        if i > 0 {
            f.write_char(' ')?;
        }
        write!(f, "{x}")?;
    }
    f.write_char(')')
}

pub(crate) fn rotate_to_min<T: Ord + Copy>(cycle: &[T]) -> Vec<T> {
    let Some(pos) = cycle
        .iter()
        .enumerate()
        .min_by_key(|(_, x)| **x)
        .map(|(i, _)| i)
    else {
        return Vec::new();
    };
    cycle[pos..].iter().chain(&cycle[..pos]).copied().collect()
}

/// Parses `(a b c)(d e)...`. Labels are positive decimal integers separated
/// by whitespace or commas; whitespace between cycles is ignored.
pub fn parse_cycles(text: &str) -> Result<CycleSet> {
    parse_cycles_at(text, 0)
}

pub(crate) fn parse_cycles_at(text: &str, line: usize) -> Result<CycleSet> {
    let mut cycles = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let Some(body) = rest.strip_prefix('(') else {
            return Err(Error::parse(line, format!("expected '(' at {rest:?}")));
        };
        let Some(close) = body.find(')') else {
            return Err(Error::parse(line, "unterminated cycle"));
        };
        let inner = &body[..close];
        if inner.contains('(') {
            return Err(Error::parse(line, "nested '('"));
        }
        let mut cycle = Vec::new();
        for tok in inner
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
        {
            let label: u64 = tok
                .parse()
                .map_err(|_| Error::parse(line, format!("bad label {tok:?}")))?;
            if label == 0 {
                return Err(Error::parse(line, "labels must be positive"));
            }
            if !seen.insert(label) {
                return Err(Error::RepeatedLabel(label));
            }
            cycle.push(label);
        }
        if cycle.is_empty() {
            return Err(Error::parse(line, "empty cycle"));
        }
        cycles.push(cycle);
        rest = body[close + 1..].trim_start();
    }
    Ok(CycleSet { cycles })
}

/// Bijection between external labels and `0..len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelTable {
    external: Vec<u64>,
    dense: HashMap<u64, u32>,
}

impl LabelTable {
    pub fn new(external: Vec<u64>) -> Result<Self> {
        let mut dense = HashMap::with_capacity(external.len());
        for (i, &x) in external.iter().enumerate() {
            if dense.insert(x, i as u32).is_some() {
                return Err(Error::RepeatedLabel(x));
            }
        }
        Ok(LabelTable { external, dense })
    }

    /// Labels `1..=n` in order.
    pub fn one_based(n: usize) -> Self {
        LabelTable::new((1..=n as u64).collect()).expect("distinct by construction")
    }

    pub fn len(&self) -> usize {
        self.external.len()
    }

    pub fn is_empty(&self) -> bool {
        self.external.is_empty()
    }

    pub fn dense(&self, label: u64) -> Option<u32> {
        self.dense.get(&label).copied()
    }

    pub fn external(&self, x: u32) -> u64 {
        self.external[x as usize]
    }

    pub fn externals(&self) -> &[u64] {
        &self.external
    }

    pub fn max_external(&self) -> u64 {
        self.external.iter().copied().max().unwrap_or(0)
    }

    pub fn dense_cycle(&self, cycle: &[u64]) -> Result<Vec<u32>> {
        cycle
            .iter()
            .map(|&x| self.dense(x).ok_or(Error::UnknownLabel(x)))
            .collect()
    }

    pub fn external_cycle(&self, cycle: &[u32]) -> Vec<u64> {
        cycle.iter().map(|&x| self.external(x)).collect()
    }

    pub fn permutation(&self, cycles: &CycleSet) -> Result<Permutation> {
        let dense = cycles
            .cycles
            .iter()
            .map(|c| self.dense_cycle(c))
            .collect::<Result<Vec<_>>>()?;
        Permutation::from_cycles(self.len(), &dense)
    }

    pub fn permutation_from_text(&self, text: &str) -> Result<Permutation> {
        self.permutation(&parse_cycles(text)?)
    }
}

/// Parses cycle notation into a permutation over exactly the labels that
/// occur in the text.
pub fn parse_permutation(text: &str) -> Result<(Permutation, LabelTable)> {
    let cycles = parse_cycles(text)?;
    let mut labels: Vec<u64> = cycles.labels().collect();
    labels.sort_unstable();
    let table = LabelTable::new(labels)?;
    let perm = table.permutation(&cycles)?;
    Ok((perm, table))
}

/// Canonical cycle notation of `p` in external labels.
pub fn format_cycles(p: &Permutation, table: &LabelTable) -> String {
    to_cycle_set(p, table).canonical().to_string()
}

pub fn to_cycle_set(p: &Permutation, table: &LabelTable) -> CycleSet {
    CycleSet {
        cycles: p.orbits().iter().map(|c| table.external_cycle(c)).collect(),
    }
}
