//! Permutations on a dense label universe `0..n`.
//!
//! Products are always spelled with [`Permutation::then`]: `a.then(&b)` maps
//! `x` to `b(a(x))`. There is no `∘` anywhere in this crate, so there is no
//! left-versus-right ambiguity to remember.

use std::ops::Index;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (0..n as u32).collect(),
        }
    }

    /// Wraps an image vector, checking that it is a bijection on `0..len`.
    pub fn from_images(image: Vec<u32>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &y in &image {
            let y = y as usize;
            if y >= n || seen[y] {
                return Err(Error::NotABijection(n));
            }
            seen[y] = true;
        }
        Ok(Permutation { image })
    }

    pub(crate) fn from_images_unchecked(image: Vec<u32>) -> Self {
        debug_assert!(Permutation::from_images(image.clone()).is_ok());
        Permutation { image }
    }

    /// Builds a permutation of `0..n` from disjoint cycles; labels not
    /// mentioned are fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut image: Vec<u32> = (0..n as u32).collect();
        let mut seen = vec![false; n];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                let xu = x as usize;
                if xu >= n {
                    return Err(Error::UnknownLabel(x as u64));
                }
                if seen[xu] {
                    return Err(Error::RepeatedLabel(x as u64));
                }
                seen[xu] = true;
                image[xu] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation { image })
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.image[x as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.image
    }

    /// `x ↦ other(self(x))`.
    pub fn then(&self, other: &Permutation) -> Result<Permutation> {
        if self.len() != other.len() {
            return Err(Error::SizeMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(Permutation {
            image: self
                .image
                .iter()
                .map(|&y| other.image[y as usize])
                .collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.len()];
        for (x, &y) in self.image.iter().enumerate() {
            inv[y as usize] = x as u32;
        }
        Permutation { image: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(x, &y)| x as u32 == y)
    }

    pub fn is_involution(&self) -> bool {
        self.image
            .iter()
            .enumerate()
            .all(|(x, &y)| self.image[y as usize] == x as u32)
    }

    pub fn is_fixed_point_free(&self) -> bool {
        self.image.iter().enumerate().all(|(x, &y)| x as u32 != y)
    }

    /// Labels moved by the permutation, ascending.
    pub fn support(&self) -> Vec<u32> {
        self.image
            .iter()
            .enumerate()
            .filter(|(x, &y)| *x as u32 != y)
            .map(|(x, _)| x as u32)
            .collect()
    }

    /// The cycle through `x`, starting at `x`.
    pub fn cycle_of(&self, x: u32) -> Vec<u32> {
        let mut cycle = vec![x];
        let mut y = self.apply(x);
        while y != x {
            cycle.push(y);
            y = self.apply(y);
        }
        cycle
    }

    /// All cycles, fixed points included; each starts at its minimum and the
    /// list is sorted by minimum.
    pub fn orbits(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for x in 0..self.len() as u32 {
            if seen[x as usize] {
                continue;
            }
            let cycle = self.cycle_of(x);
            for &y in &cycle {
                seen[y as usize] = true;
            }
            out.push(cycle);
        }
        out
    }

    pub fn orbit_count(&self) -> usize {
        let mut seen = vec![false; self.len()];
        count_orbits(self.len(), |x| self.apply(x), &mut seen)
    }

    /// Restriction to the labels with `keep[x]`: each kept label maps to the
    /// first kept label on its forward iterate. Labels outside the set are
    /// fixed in the result, so the universe is unchanged.
    pub fn restrict(&self, keep: &[bool]) -> Permutation {
        assert_eq!(keep.len(), self.len(), "restriction mask has wrong size");
        let image = (0..self.len() as u32)
            .map(|x| {
                if !keep[x as usize] {
                    return x;
                }
                let mut y = self.apply(x);
                while !keep[y as usize] {
                    y = self.apply(y);
                }
                y
            })
            .collect();
        Permutation { image }
    }

    /// Re-indexes the permutation onto the kept labels (which must be closed
    /// under `self`). Returns the compacted permutation and the old label of
    /// each new index.
    pub fn compact(&self, keep: &[bool]) -> (Permutation, Vec<u32>) {
        let old: Vec<u32> = (0..self.len() as u32)
            .filter(|&x| keep[x as usize])
            .collect();
        let mut new_of = vec![u32::MAX; self.len()];
        for (i, &x) in old.iter().enumerate() {
            new_of[x as usize] = i as u32;
        }
        let image = old
            .iter()
            .map(|&x| new_of[self.apply(x) as usize])
            .collect::<Vec<_>>();
        (Permutation::from_images_unchecked(image), old)
    }
}

impl Index<u32> for Permutation {
    type Output = u32;

    fn index(&self, x: u32) -> &u32 {
        &self.image[x as usize]
    }
}

/// Counts the orbits of the bijection `f` on `0..n` without materialising it.
/// `seen` is scratch space and is cleared on entry.
#[inline]
pub fn count_orbits(n: usize, f: impl Fn(u32) -> u32, seen: &mut Vec<bool>) -> usize {
    seen.clear();
    seen.resize(n, false);
    let mut count = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut y = start as u32;
        loop {
            seen[y as usize] = true;
            y = f(y);
            if y as usize == start {
                break;
            }
        }
    }
    count
}
