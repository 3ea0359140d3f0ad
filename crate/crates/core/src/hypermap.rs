//! The flag-system model: labels, the vertex and hyperedge bi-rotations `tau`
//! and `psi`, and the side-pairing involution `iota`.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::dsu::UnionFind;
use crate::error::{ClassKind, Error, Result};
use crate::notation::{CycleSet, LabelTable};
use crate::perm::Permutation;

/// A vertex or hyperedge: two mirror cycles over dense labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Class {
    pub name: String,
    pub cycles: [Vec<u32>; 2],
}

impl Class {
    pub fn degree(&self) -> usize {
        self.cycles[0].len()
    }

    pub fn labels(&self) -> impl Iterator<Item = u32> + '_ {
        self.cycles[0].iter().chain(&self.cycles[1]).copied()
    }
}

/// A class as written in a file, over external labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassSpec {
    pub name: String,
    pub cycles: [Vec<u64>; 2],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CountsBundle {
    pub v: usize,
    pub e: usize,
    pub f: usize,
    pub sum_n: usize,
    pub chi: i64,
    pub eps: i64,
    pub c: usize,
    pub orientable: bool,
}

#[derive(Clone, Debug)]
pub struct Hypermap {
    labels: LabelTable,
    tau: Permutation,
    psi: Permutation,
    iota: Permutation,
    vertices: Vec<Class>,
    hyperedges: Vec<Class>,
    vertex_of: Vec<u32>,
    edge_of: Vec<u32>,
}

impl Hypermap {
    /// Builds and validates a hypermap from declared cycle pairs. When `iota`
    /// is `None` a pairing is solved for.
    pub fn from_parts(
        vertices: Vec<ClassSpec>,
        hyperedges: Vec<ClassSpec>,
        iota: Option<&CycleSet>,
    ) -> Result<Self> {
        let mut ext: Vec<u64> = Vec::new();
        let mut seen = HashSet::new();
        for v in &vertices {
            for &x in v.cycles.iter().flatten() {
                if !seen.insert(x) {
                    return Err(Error::DuplicateLabel {
                        kind: ClassKind::Vertex,
                        label: x,
                    });
                }
                ext.push(x);
            }
        }
        ext.sort_unstable();
        let labels = LabelTable::new(ext)?;
        let dense = |specs: Vec<ClassSpec>| -> Result<Vec<Class>> {
            specs
                .into_iter()
                .map(|s| {
                    let conv = |c: &[u64]| -> Result<Vec<u32>> {
                        c.iter()
                            .map(|&x| {
                                labels.dense(x).ok_or(Error::MissingLabel {
                                    kind: ClassKind::Vertex,
                                    label: x,
                                })
                            })
                            .collect()
                    };
                    Ok(Class {
                        cycles: [conv(&s.cycles[0])?, conv(&s.cycles[1])?],
                        name: s.name,
                    })
                })
                .collect()
        };
        let vs = dense(vertices)?;
        let es = dense(hyperedges)?;
        let iota = match iota {
            Some(cs) => {
                let mut pairs = Vec::new();
                for c in &cs.cycles {
                    if c.len() != 2 {
                        return Err(Error::InvalidIota(format!(
                            "cycle of length {} (expected transpositions)",
                            c.len()
                        )));
                    }
                    pairs.push(labels.dense_cycle(c)?);
                }
                Some(Permutation::from_cycles(labels.len(), &pairs)?)
            }
            None => None,
        };
        Hypermap::from_classes(labels, vs, es, iota)
    }

    /// Validates dense classes and assembles the flag system.
    pub(crate) fn from_classes(
        labels: LabelTable,
        vertices: Vec<Class>,
        hyperedges: Vec<Class>,
        iota: Option<Permutation>,
    ) -> Result<Self> {
        let n = labels.len();
        let vertex_of = class_index(&labels, &vertices, ClassKind::Vertex)?;
        let edge_of = class_index(&labels, &hyperedges, ClassKind::Hyperedge)?;
        check_names(&vertices)?;
        check_names(&hyperedges)?;
        let tau = cycles_perm(n, &vertices);
        let psi = cycles_perm(n, &hyperedges);
        let iota = match iota {
            Some(i) => i,
            None => solve_iota(&tau, &psi, &vertices, &hyperedges, &labels)?,
        };
        let h = Hypermap {
            labels,
            tau,
            psi,
            iota,
            vertices,
            hyperedges,
            vertex_of,
            edge_of,
        };
        h.check_iota()?;
        Ok(h)
    }

    /// Assembles a hypermap from permutations, deriving the classes as
    /// orbit pairs. Classes whose label sets match a hint keep the hint's
    /// name, position and cycle base points; the rest follow, ordered by
    /// smallest label, with fresh names.
    pub(crate) fn from_flags(
        labels: LabelTable,
        tau: Permutation,
        psi: Permutation,
        iota: Permutation,
        vertex_hint: &[Class],
        edge_hint: &[Class],
    ) -> Result<Self> {
        check_iota_perm(&iota, &tau, &psi)?;
        let vertices = derive_classes(&tau, &iota, vertex_hint, ClassKind::Vertex, &labels)?;
        let hyperedges = derive_classes(&psi, &iota, edge_hint, ClassKind::Hyperedge, &labels)?;
        let vertex_of = class_index(&labels, &vertices, ClassKind::Vertex)?;
        let edge_of = class_index(&labels, &hyperedges, ClassKind::Hyperedge)?;
        let h = Hypermap {
            labels,
            tau,
            psi,
            iota,
            vertices,
            hyperedges,
            vertex_of,
            edge_of,
        };
        h.check_iota()?;
        Ok(h)
    }

    pub fn labels(&self) -> &LabelTable {
        &self.labels
    }

    pub fn tau(&self) -> &Permutation {
        &self.tau
    }

    pub fn psi(&self) -> &Permutation {
        &self.psi
    }

    pub fn iota(&self) -> &Permutation {
        &self.iota
    }

    pub fn vertices(&self) -> &[Class] {
        &self.vertices
    }

    pub fn hyperedges(&self) -> &[Class] {
        &self.hyperedges
    }

    pub fn n_labels(&self) -> usize {
        self.labels.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.hyperedges.len()
    }

    /// Index of the vertex owning dense label `x`.
    pub fn vertex_of(&self, x: u32) -> usize {
        self.vertex_of[x as usize] as usize
    }

    /// Index of the hyperedge owning dense label `x`.
    pub fn edge_of(&self, x: u32) -> usize {
        self.edge_of[x as usize] as usize
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|c| c.name == name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn hyperedge_index(&self, name: &str) -> Result<usize> {
        self.hyperedges
            .iter()
            .position(|c| c.name == name)
            .ok_or_else(|| Error::UnknownHyperedge(name.to_string()))
    }

    /// Dense label for an external one.
    pub fn label(&self, external: u64) -> Result<u32> {
        self.labels
            .dense(external)
            .ok_or(Error::UnknownLabel(external))
    }

    /// Distinct vertices incident to hyperedge `k`, in first-seen order.
    pub fn incident_vertices(&self, k: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for x in self.hyperedges[k].labels() {
            let v = self.vertex_of(x);
            if !out.contains(&v) {
                out.push(v);
            }
        }
        out
    }

    /// Exact equality of the flag systems: same labels, same `tau`, `psi`,
    /// `iota`. Class order and names are ignored.
    pub fn same_flags(&self, other: &Hypermap) -> bool {
        self.labels == other.labels
            && self.tau == other.tau
            && self.psi == other.psi
            && self.iota == other.iota
    }

    fn check_iota(&self) -> Result<()> {
        check_iota_perm(&self.iota, &self.tau, &self.psi)?;
        for (kind, classes) in [
            (ClassKind::Vertex, &self.vertices),
            (ClassKind::Hyperedge, &self.hyperedges),
        ] {
            for c in classes {
                let partner: HashSet<u32> = c.cycles[1].iter().copied().collect();
                if !c.cycles[0]
                    .iter()
                    .all(|&x| partner.contains(&self.iota.apply(x)))
                {
                    return Err(Error::PartnerMismatch {
                        kind,
                        name: c.name.clone(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn face_count(&self) -> usize {
        let mut seen = Vec::new();
        crate::perm::count_orbits(
            self.n_labels(),
            |x| self.tau.apply(self.psi.apply(x)),
            &mut seen,
        ) / 2
    }

    /// Number of components and the component id of every vertex.
    pub fn components(&self) -> (usize, Vec<usize>) {
        let mut uf = UnionFind::new(self.vertex_count());
        for k in 0..self.edge_count() {
            let vs = self.incident_vertices(k);
            for w in vs.windows(2) {
                uf.union(w[0] as u32, w[1] as u32);
            }
        }
        let mut ids = HashMap::new();
        let assignment = (0..self.vertex_count() as u32)
            .map(|v| {
                let root = uf.find(v);
                let next = ids.len();
                *ids.entry(root).or_insert(next)
            })
            .collect();
        (uf.sets(), assignment)
    }

    pub fn component_count(&self) -> usize {
        self.components().0
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// Every component splits into exactly two orbits of the group
    /// generated by `tau` and `psi`.
    pub fn is_orientable(&self) -> bool {
        let mut uf = UnionFind::new(self.n_labels());
        for x in 0..self.n_labels() as u32 {
            uf.union(x, self.tau.apply(x));
            uf.union(x, self.psi.apply(x));
        }
        uf.sets() == 2 * self.component_count()
    }

    pub fn counts(&self) -> CountsBundle {
        let v = self.vertex_count();
        let e = self.edge_count();
        let f = self.face_count();
        let sum_n = self.n_labels() / 2;
        let c = self.component_count();
        let chi = v as i64 + e as i64 + f as i64 - sum_n as i64;
        CountsBundle {
            v,
            e,
            f,
            sum_n,
            chi,
            eps: 2 * c as i64 - chi,
            c,
            orientable: self.is_orientable(),
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.counts().chi
    }

    pub fn euler_genus(&self) -> i64 {
        self.counts().eps
    }

    pub fn orientable_genus(&self) -> Result<i64> {
        if !self.is_orientable() {
            return Err(Error::NotOrientable);
        }
        Ok(self.euler_genus() / 2)
    }

    /// Classes and `iota` over external labels, ready for writing out.
    pub fn to_specs(&self) -> (Vec<ClassSpec>, Vec<ClassSpec>, CycleSet) {
        let spec = |c: &Class| ClassSpec {
            name: c.name.clone(),
            cycles: [
                self.labels.external_cycle(&c.cycles[0]),
                self.labels.external_cycle(&c.cycles[1]),
            ],
        };
        let iota = crate::notation::to_cycle_set(&self.iota, &self.labels).canonical();
        (
            self.vertices.iter().map(spec).collect(),
            self.hyperedges.iter().map(spec).collect(),
            iota,
        )
    }

    /// The same hypermap with every external label `x` renamed `rename(x)`.
    pub fn relabeled(&self, rename: impl Fn(u64) -> u64) -> Result<Hypermap> {
        let (vs, es, iota) = self.to_specs();
        let map_spec = |s: ClassSpec| ClassSpec {
            name: s.name,
            cycles: s.cycles.map(|c| c.into_iter().map(&rename).collect()),
        };
        let iota = CycleSet {
            cycles: iota
                .cycles
                .into_iter()
                .map(|c| c.into_iter().map(&rename).collect())
                .collect(),
        };
        Hypermap::from_parts(
            vs.into_iter().map(map_spec).collect(),
            es.into_iter().map(map_spec).collect(),
            Some(&iota),
        )
    }

    /// Disjoint union; `other`'s labels are shifted above this map's largest
    /// label and clashing names get a `'` suffix.
    pub fn disjoint_union(&self, other: &Hypermap) -> Hypermap {
        let shift = self.labels.max_external();
        let mut ext = self.labels.externals().to_vec();
        ext.extend(other.labels.externals().iter().map(|&x| x + shift));
        let labels = LabelTable::new(ext).expect("shifted labels are distinct");
        let off = self.n_labels() as u32;
        let lift = |classes: &[Class], mine: &[Class]| -> Vec<Class> {
            let mut names: HashSet<String> = mine.iter().map(|c| c.name.clone()).collect();
            classes
                .iter()
                .map(|c| {
                    let mut name = c.name.clone();
                    while names.contains(&name) {
                        name.push('\'');
                    }
                    names.insert(name.clone());
                    Class {
                        name,
                        cycles: c
                            .cycles
                            .clone()
                            .map(|cy| cy.iter().map(|x| x + off).collect()),
                    }
                })
                .collect()
        };
        let mut vertices = self.vertices.clone();
        vertices.extend(lift(&other.vertices, &self.vertices));
        let mut hyperedges = self.hyperedges.clone();
        hyperedges.extend(lift(&other.hyperedges, &self.hyperedges));
        let mut iota = self.iota.images().to_vec();
        iota.extend(other.iota.images().iter().map(|x| x + off));
        Hypermap::from_classes(
            labels,
            vertices,
            hyperedges,
            Some(Permutation::from_images_unchecked(iota)),
        )
        .expect("union of valid hypermaps is valid")
    }

    /// Relabeling-invariant code: per component, the lexicographically least
    /// breadth-first numbering over (`tau`, `psi`, `iota`), then the
    /// component codes sorted.
    pub fn canonical_code(&self) -> Vec<u32> {
        let n = self.n_labels();
        let gens = [&self.tau, &self.psi, &self.iota];
        let mut comp = vec![usize::MAX; n];
        let mut members: Vec<Vec<u32>> = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = members.len();
            let mut stack = vec![s as u32];
            comp[s] = id;
            let mut m = Vec::new();
            while let Some(x) = stack.pop() {
                m.push(x);
                for g in gens {
                    let y = g.apply(x);
                    if comp[y as usize] == usize::MAX {
                        comp[y as usize] = id;
                        stack.push(y);
                    }
                }
            }
            members.push(m);
        }
        let mut order = vec![u32::MAX; n];
        let mut codes: Vec<Vec<u32>> = members
            .iter()
            .map(|m| {
                let mut best: Option<Vec<u32>> = None;
                for &start in m {
                    let code = bfs_code(&gens, start, m.len(), &mut order);
                    if best.as_ref().is_none_or(|b| code < *b) {
                        best = Some(code);
                    }
                }
                best.unwrap_or_default()
            })
            .collect();
        codes.sort();
        let mut out = Vec::with_capacity(3 * n + codes.len());
        for c in codes {
            out.push(c.len() as u32);
            out.extend(c);
        }
        out
    }

    pub fn is_isomorphic(&self, other: &Hypermap) -> bool {
        self.n_labels() == other.n_labels()
            && self.vertex_count() == other.vertex_count()
            && self.edge_count() == other.edge_count()
            && self.canonical_code() == other.canonical_code()
    }

    /// The hypermap relabeled `1..=N` in canonical order.
    pub fn canonical_form(&self) -> Hypermap {
        let code = self.canonical_code();
        let n = self.n_labels();
        let (mut tau, mut psi, mut iota) = (vec![0; n], vec![0; n], vec![0; n]);
        let mut i = 0;
        let mut base = 0u32;
        while i < code.len() {
            let len = code[i] as usize;
            let body = &code[i + 1..i + 1 + len];
            for (k, t) in body.chunks(3).enumerate() {
                let x = base as usize + k;
                tau[x] = base + t[0];
                psi[x] = base + t[1];
                iota[x] = base + t[2];
            }
            base += (len / 3) as u32;
            i += 1 + len;
        }
        Hypermap::from_flags(
            LabelTable::one_based(n),
            Permutation::from_images_unchecked(tau),
            Permutation::from_images_unchecked(psi),
            Permutation::from_images_unchecked(iota),
            &[],
            &[],
        )
        .expect("canonical relabeling preserves validity")
    }
}

fn bfs_code(gens: &[&Permutation; 3], start: u32, size: usize, order: &mut [u32]) -> Vec<u32> {
    let mut queue = Vec::with_capacity(size);
    queue.push(start);
    order[start as usize] = 0;
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for g in gens {
            let y = g.apply(x);
            if order[y as usize] == u32::MAX {
                order[y as usize] = queue.len() as u32;
                queue.push(y);
            }
        }
    }
    let mut code = Vec::with_capacity(3 * size);
    for &x in &queue {
        for g in gens {
            code.push(order[g.apply(x) as usize]);
        }
    }
    for &x in &queue {
        order[x as usize] = u32::MAX;
    }
    code
}

fn cycles_perm(n: usize, classes: &[Class]) -> Permutation {
    let mut image: Vec<u32> = (0..n as u32).collect();
    for c in classes {
        for cycle in &c.cycles {
            for (i, &x) in cycle.iter().enumerate() {
                image[x as usize] = cycle[(i + 1) % cycle.len()];
            }
        }
    }
    Permutation::from_images_unchecked(image)
}

fn class_index(labels: &LabelTable, classes: &[Class], kind: ClassKind) -> Result<Vec<u32>> {
    let n = labels.len();
    let mut owner = vec![u32::MAX; n];
    for (k, c) in classes.iter().enumerate() {
        if c.cycles[0].len() != c.cycles[1].len() || c.cycles[0].is_empty() {
            return Err(Error::PairLengthMismatch {
                kind,
                name: c.name.clone(),
            });
        }
        for x in c.labels() {
            let slot = owner
                .get_mut(x as usize)
                .ok_or(Error::UnknownLabel(x as u64))?;
            if *slot != u32::MAX {
                return Err(Error::DuplicateLabel {
                    kind,
                    label: labels.external(x),
                });
            }
            *slot = k as u32;
        }
    }
    if let Some(x) = owner.iter().position(|&o| o == u32::MAX) {
        return Err(Error::MissingLabel {
            kind,
            label: labels.external(x as u32),
        });
    }
    Ok(owner)
}

fn check_names(classes: &[Class]) -> Result<()> {
    let mut seen = HashSet::new();
    for c in classes {
        if !seen.insert(c.name.as_str()) {
            return Err(Error::parse(0, format!("name {} used twice", c.name)));
        }
    }
    Ok(())
}

fn check_iota_perm(iota: &Permutation, tau: &Permutation, psi: &Permutation) -> Result<()> {
    if iota.len() != tau.len() {
        return Err(Error::InvalidIota("wrong size".into()));
    }
    if !iota.is_involution() || !iota.is_fixed_point_free() {
        return Err(Error::InvalidIota(
            "not a fixed-point-free involution".into(),
        ));
    }
    for (name, p) in [("tau", tau), ("psi", psi)] {
        let inv = p.inverse();
        let ok = (0..p.len() as u32).all(|x| iota.apply(p.apply(iota.apply(x))) == inv.apply(x));
        if !ok {
            return Err(Error::InvalidIota(format!(
                "does not conjugate {name} to its inverse"
            )));
        }
    }
    Ok(())
}

fn derive_classes(
    p: &Permutation,
    iota: &Permutation,
    hint: &[Class],
    kind: ClassKind,
    labels: &LabelTable,
) -> Result<Vec<Class>> {
    let n = p.len();
    let mut orbit_id = vec![usize::MAX; n];
    let orbits = p.orbits();
    for (i, o) in orbits.iter().enumerate() {
        for &x in o {
            orbit_id[x as usize] = i;
        }
    }
    let mut taken = vec![false; orbits.len()];
    let mut out = Vec::new();
    let mut used: HashSet<String> = HashSet::new();
    for h in hint {
        let a = orbit_id[h.cycles[0][0] as usize];
        let b = orbit_id[h.cycles[1][0] as usize];
        let same = a != b
            && !taken[a]
            && !taken[b]
            && orbits[a].len() == h.cycles[0].len()
            && orbits[b].len() == h.cycles[1].len()
            && h.cycles[0].iter().all(|&x| orbit_id[x as usize] == a)
            && h.cycles[1].iter().all(|&x| orbit_id[x as usize] == b)
            && orbit_id[iota.apply(h.cycles[0][0]) as usize] == b;
        if same {
            taken[a] = true;
            taken[b] = true;
            used.insert(h.name.clone());
            out.push(Class {
                name: h.name.clone(),
                cycles: [p.cycle_of(h.cycles[0][0]), p.cycle_of(h.cycles[1][0])],
            });
        }
    }
    let prefix = match kind {
        ClassKind::Vertex => "v",
        ClassKind::Hyperedge => "e",
    };
    let mut counter = 0usize;
    for (i, o) in orbits.iter().enumerate() {
        if taken[i] {
            continue;
        }
        let j = orbit_id[iota.apply(o[0]) as usize];
        if j == i {
            return Err(Error::SelfPairedOrbit {
                kind,
                label: labels.external(o[0]),
            });
        }
        taken[i] = true;
        taken[j] = true;
        let name = loop {
            counter += 1;
            let cand = format!("{prefix}{counter}");
            if !used.contains(&cand) {
                break cand;
            }
        };
        used.insert(name.clone());
        out.push(Class {
            name,
            cycles: [o.clone(), p.cycle_of(iota.apply(o[0]))],
        });
    }
    Ok(out)
}

/// Finds a side-pairing involution compatible with the declared pairs.
/// Candidates for `iota(x)` are the labels lying in both the vertex partner
/// cycle and the hyperedge partner cycle of `x`, tried smallest first; each
/// choice is propagated through the mirror axioms and undone on conflict.
pub(crate) fn solve_iota(
    tau: &Permutation,
    psi: &Permutation,
    vertices: &[Class],
    hyperedges: &[Class],
    labels: &LabelTable,
) -> Result<Permutation> {
    let n = tau.len();
    let partner_of = |classes: &[Class]| -> Vec<(u32, u8)> {
        let mut out = vec![(0u32, 0u8); n];
        for (k, c) in classes.iter().enumerate() {
            for (side, cycle) in c.cycles.iter().enumerate() {
                for &x in cycle {
                    out[x as usize] = (k as u32, 1 - side as u8);
                }
            }
        }
        out
    };
    let vpart = partner_of(vertices);
    let epart = partner_of(hyperedges);
    let side_of = |owner: &[(u32, u8)], x: u32| -> (u32, u8) {
        let (k, s) = owner[x as usize];
        (k, 1 - s)
    };
    let allowed = |x: u32, y: u32| -> bool {
        vpart[x as usize] == side_of(&vpart, y) && epart[x as usize] == side_of(&epart, y)
    };
    let tau_inv = tau.inverse();
    let psi_inv = psi.inverse();
    let mut iota = vec![u32::MAX; n];
    let mut trail: Vec<u32> = Vec::new();

    let propagate = |iota: &mut Vec<u32>, trail: &mut Vec<u32>, x: u32, y: u32| -> bool {
        let mut stack = vec![(x, y)];
        while let Some((a, b)) = stack.pop() {
            for (p, q) in [(a, b), (b, a)] {
                let cur = iota[p as usize];
                if cur != u32::MAX {
                    if cur != q {
                        return false;
                    }
                    continue;
                }
                if p == q || !allowed(p, q) {
                    return false;
                }
                iota[p as usize] = q;
                trail.push(p);
                stack.push((tau.apply(p), tau_inv.apply(q)));
                stack.push((psi.apply(p), psi_inv.apply(q)));
            }
        }
        true
    };

    type Propagate<'a> = &'a dyn Fn(&mut Vec<u32>, &mut Vec<u32>, u32, u32) -> bool;

    fn search(
        iota: &mut Vec<u32>,
        trail: &mut Vec<u32>,
        candidates: &dyn Fn(u32) -> Vec<u32>,
        propagate: Propagate<'_>,
    ) -> bool {
        let Some(x) = iota.iter().position(|&y| y == u32::MAX) else {
            return true;
        };
        let x = x as u32;
        for y in candidates(x) {
            if iota[y as usize] != u32::MAX {
                continue;
            }
            let mark = trail.len();
            if propagate(iota, trail, x, y) && search(iota, trail, candidates, propagate) {
                return true;
            }
            for p in trail.drain(mark..) {
                iota[p as usize] = u32::MAX;
            }
        }
        false
    }

    let candidates = |x: u32| -> Vec<u32> {
        let (k, s) = vpart[x as usize];
        let mut c: Vec<u32> = vertices[k as usize].cycles[s as usize]
            .iter()
            .copied()
            .filter(|&y| allowed(x, y))
            .collect();
        c.sort_unstable_by_key(|&y| labels.external(y));
        c
    };
    if !search(&mut iota, &mut trail, &candidates, &propagate) {
        return Err(Error::IotaUnsolvable);
    }
    let iota = Permutation::from_images(iota).map_err(|_| Error::IotaUnsolvable)?;
    check_iota_perm(&iota, tau, psi).map_err(|_| Error::IotaUnsolvable)?;
    Ok(iota)
}
