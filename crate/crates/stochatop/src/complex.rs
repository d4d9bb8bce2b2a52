//! Finite abstract simplicial complexes.
//!
//! A [`SimplicialComplex`] is a downward-closed set of simplices over an
//! ambient vertex range `0..n_vertices`. Simplices are grouped by dimension
//! and kept sorted, so iteration order (and everything derived from it,
//! matrices, file output, experiment results) is canonical.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::simplex::Simplex;

/// Face counts by dimension: `f[k]` is the number of k-simplices.
pub type FVector = Vec<usize>;

/// Hard cap on the number of simplices a single complex may hold. Operations
/// that would exceed it return [`Error::ResourceLimit`] instead of thrashing.
pub const MAX_SIMPLICES: usize = 5_000_000;

#[derive(Clone)]
pub struct SimplicialComplex {
    n_vertices: usize,
    /// `by_dim[k]` is the sorted list of k-simplices.
    by_dim: Vec<Vec<Simplex>>,
    f: FVector,
    fingerprint: u64,
}

impl SimplicialComplex {
    /// Builds the downward closure of the given facets. Every vertex label
    /// must be below `n_vertices`. Vertices not appearing in any facet are not
    /// part of the complex (list them as singleton facets to include them).
    pub fn from_facets(n_vertices: usize, facets: &[Simplex]) -> Result<Self> {
        let mut set: BTreeSet<Simplex> = BTreeSet::new();
        for f in facets {
            if f.vertices()
                .last()
                .is_some_and(|&v| v as usize >= n_vertices)
            {
                return Err(Error::invalid(format!(
                    "facet {f:?} uses a vertex >= n_vertices = {n_vertices}"
                )));
            }
            for k in 0..=f.dim() {
                for face in f.faces_of_dim(k) {
                    set.insert(face);
                }
            }
            if set.len() > MAX_SIMPLICES {
                return Err(Error::ResourceLimit(format!(
                    "closure exceeds {MAX_SIMPLICES} simplices"
                )));
            }
        }
        Ok(Self::from_closed_set(n_vertices, set))
    }

    /// Assembles a complex from a set already known to be downward closed.
    pub(crate) fn from_closed_set(n_vertices: usize, set: BTreeSet<Simplex>) -> Self {
        let max_dim = set.iter().map(|s| s.dim()).max();
        let mut by_dim: Vec<Vec<Simplex>> = vec![Vec::new(); max_dim.map_or(0, |d| d + 1)];
        for s in set {
            by_dim[s.dim()].push(s);
        }
        for level in &mut by_dim {
            level.sort_unstable();
        }
        let f: FVector = by_dim.iter().map(|l| l.len()).collect();
        let fingerprint = fingerprint_of(n_vertices, &by_dim);
        SimplicialComplex {
            n_vertices,
            by_dim,
            f,
            fingerprint,
        }
    }

    /// The empty complex on an ambient vertex range.
    pub fn empty(n_vertices: usize) -> Self {
        Self::from_closed_set(n_vertices, BTreeSet::new())
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    /// Dimension of the complex, `None` when it has no simplices.
    pub fn dim(&self) -> Option<usize> {
        if self.by_dim.is_empty() {
            None
        } else {
            Some(self.by_dim.len() - 1)
        }
    }

    pub fn f_vector(&self) -> &FVector {
        &self.f
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f
            .iter()
            .enumerate()
            .map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// The sorted k-simplices (empty slice when none exist).
    pub fn simplices_of_dim(&self, k: usize) -> &[Simplex] {
        self.by_dim.get(k).map_or(&[], |v| v.as_slice())
    }

    pub fn iter(&self) -> impl Iterator<Item = &Simplex> {
        self.by_dim.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.f.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.by_dim.is_empty()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.by_dim
            .get(s.dim())
            .is_some_and(|level| level.binary_search(s).is_ok())
    }

    /// Index of a k-simplex within the sorted k-level, used to address
    /// cochain coordinates.
    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.by_dim.get(s.dim())?.binary_search(s).ok()
    }

    /// Content hash; two complexes with equal fingerprints hold the same
    /// simplices over the same ambient range.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// The simplices not properly contained in any other simplex.
    pub fn maximal_simplices(&self) -> Vec<&Simplex> {
        let mut out = Vec::new();
        for k in 0..self.by_dim.len() {
            for s in &self.by_dim[k] {
                let covered = self
                    .by_dim
                    .get(k + 1)
                    .is_some_and(|next| next.iter().any(|t| s.is_face_of(t)));
                if !covered {
                    out.push(s);
                }
            }
        }
        out
    }

    /// True when every maximal simplex has the same dimension as the complex.
    /// The empty complex is vacuously pure.
    pub fn is_pure(&self) -> bool {
        let Some(d) = self.dim() else { return true };
        self.maximal_simplices().iter().all(|s| s.dim() == d)
    }

    /// The subcomplex of simplices of dimension at most `d`.
    pub fn skeleton(&self, d: usize) -> SimplicialComplex {
        let mut by_dim = self.by_dim.clone();
        by_dim.truncate(d + 1);
        let f: FVector = by_dim.iter().map(|l| l.len()).collect();
        let fingerprint = fingerprint_of(self.n_vertices, &by_dim);
        SimplicialComplex {
            n_vertices: self.n_vertices,
            by_dim,
            f,
            fingerprint,
        }
    }

    /// The link of `s`: all simplices disjoint from `s` whose union with `s`
    /// lies in the complex. Errors when `s` itself is absent.
    pub fn link(&self, s: &Simplex) -> Result<SimplicialComplex> {
        if !self.contains(s) {
            return Err(Error::invalid(format!(
                "link of {s:?}: simplex not in complex"
            )));
        }
        let mut set = BTreeSet::new();
        for t in self.iter() {
            if t.vertices().iter().any(|v| s.contains_vertex(*v)) {
                continue;
            }
            let union =
                Simplex::from_unsorted(t.vertices().iter().chain(s.vertices()).copied().collect())
                    .expect("disjoint vertex sets");
            if self.contains(&union) {
                set.insert(t.clone());
            }
        }
        Ok(Self::from_closed_set(self.n_vertices, set))
    }

    /// Splits the d-and-higher part into strong connectivity components: two
    /// d-simplices are related when they share a (d-1)-face, and the relation
    /// is closed transitively. Each component is returned as the downward
    /// closure of its d-simplices; simplices of dimension above d are assigned
    /// to the component containing their d-faces, merging components when they
    /// would span more than one. Components are ordered by their smallest
    /// d-simplex.
    pub fn strong_components(&self, d: usize) -> Result<Vec<SimplicialComplex>> {
        if d == 0 {
            return Err(Error::invalid("strong connectivity needs dimension >= 1"));
        }
        let level = self.simplices_of_dim(d);
        if level.is_empty() {
            return Ok(Vec::new());
        }
        let mut uf = UnionFind::new(level.len());
        let mut by_facet: BTreeMap<Simplex, usize> = BTreeMap::new();
        for (i, s) in level.iter().enumerate() {
            for facet in s.facets() {
                match by_facet.get(&facet) {
                    Some(&j) => uf.union(i, j),
                    None => {
                        by_facet.insert(facet, i);
                    }
                }
            }
        }
        // Assign higher simplices; a higher simplex unions all its d-faces.
        let mut higher: Vec<(usize, &Simplex)> = Vec::new();
        for k in d + 1..self.by_dim.len() {
            for s in &self.by_dim[k] {
                let faces = s.faces_of_dim(d);
                let first = self
                    .index_of(&faces[0])
                    .expect("face of a complex simplex is present");
                for face in &faces[1..] {
                    let idx = self.index_of(face).expect("closed complex");
                    uf.union(first, idx);
                }
                higher.push((first, s));
            }
        }
        // Group by root, keyed by smallest member index for deterministic order.
        let mut groups: BTreeMap<usize, BTreeSet<Simplex>> = BTreeMap::new();
        let mut root_key: BTreeMap<usize, usize> = BTreeMap::new();
        for i in 0..level.len() {
            let r = uf.find(i);
            root_key.entry(r).or_insert(i);
        }
        for (i, s) in level.iter().enumerate() {
            let key = root_key[&uf.find(i)];
            let set = groups.entry(key).or_default();
            for k in 0..=d {
                for face in s.faces_of_dim(k) {
                    set.insert(face);
                }
            }
        }
        for (anchor, s) in higher {
            let key = root_key[&uf.find(anchor)];
            let set = groups.entry(key).or_default();
            for k in 0..=s.dim() {
                for face in s.faces_of_dim(k) {
                    set.insert(face);
                }
            }
        }
        Ok(groups
            .into_values()
            .map(|set| Self::from_closed_set(self.n_vertices, set))
            .collect())
    }

    /// True when the complex has d-simplices and they all lie in a single
    /// strong connectivity class.
    pub fn is_strongly_connected(&self, d: usize) -> bool {
        match self.strong_components(d) {
            Ok(comps) => comps.len() == 1,
            Err(_) => false,
        }
    }

    /// The suspension-like construction that keeps the 1-skeleton complete:
    /// cone the complex over a fresh vertex, add the full simplex spanned by
    /// all existing vertices, then truncate to dimension `dim + 1`.
    ///
    /// For a complex of dimension d with v vertices the result has v + 1
    /// vertices, dimension d + 1, and f-vector
    /// `f_k = C(v, k+1) [k <= d+1] + f_{k-1}`.
    pub fn prime_suspension(&self) -> Result<SimplicialComplex> {
        let d = self
            .dim()
            .ok_or_else(|| Error::invalid("prime suspension of empty complex"))?;
        if d == 0 {
            return Err(Error::invalid("prime suspension needs dimension >= 1"));
        }
        let used: Vec<u32> = self.by_dim[0].iter().map(|s| s.vertices()[0]).collect();
        let apex = self.n_vertices as u32;
        let mut expected: usize = self.len() + self.len() + 1;
        for k in 0..=d + 1 {
            expected = expected.saturating_add(binomial(used.len(), k + 1));
        }
        if expected > MAX_SIMPLICES {
            return Err(Error::ResourceLimit(format!(
                "prime suspension would exceed {MAX_SIMPLICES} simplices"
            )));
        }
        let mut set: BTreeSet<Simplex> = BTreeSet::new();
        // Full simplex over the used vertices, truncated to dimension d+1.
        for size in 1..=(d + 2).min(used.len()) {
            for combo in used.iter().copied().combinations(size) {
                set.insert(Simplex::from_sorted_unchecked(combo));
            }
        }
        // Cone over the original complex.
        set.insert(Simplex::vertex(apex));
        for s in self.iter() {
            let mut vs = s.vertices().to_vec();
            vs.push(apex);
            set.insert(Simplex::from_sorted_unchecked(vs));
        }
        Ok(Self::from_closed_set(self.n_vertices + 1, set))
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.n_vertices == other.n_vertices && self.by_dim == other.by_dim
    }
}

impl Eq for SimplicialComplex {}

impl std::fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "SimplicialComplex(n={}, f={:?})",
            self.n_vertices, self.f
        )
    }
}

/// Binomial coefficient, saturating at usize::MAX to keep guards simple.
pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    acc as usize
}

fn fingerprint_of(n_vertices: usize, by_dim: &[Vec<Simplex>]) -> u64 {
    let mut h = mix64(0x5f4a_91c3 ^ n_vertices as u64);
    for level in by_dim {
        h = mix64(h ^ level.len() as u64);
        for s in level {
            for &v in s.vertices() {
                h = mix64(h ^ (v as u64).wrapping_add(0x9e37_79b9_7f4a_7c15));
            }
            h = mix64(h ^ 0xd1b5_4a32_d192_ed03);
        }
    }
    h
}

pub(crate) fn mix64(z: u64) -> u64 {
    let mut z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Smaller root wins so component keys stay stable.
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn simplex(vs: &[u32]) -> Simplex {
        Simplex::new(vs.to_vec()).unwrap()
    }

    fn boundary_tetrahedron() -> SimplicialComplex {
        let facets: Vec<Simplex> = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]
            .iter()
            .map(|f| simplex(f))
            .collect();
        SimplicialComplex::from_facets(4, &facets).unwrap()
    }

    #[test]
    fn closure_and_f_vector() {
        let k = boundary_tetrahedron();
        assert_eq!(k.f_vector(), &vec![4, 6, 4]);
        assert_eq!(k.euler_characteristic(), 2);
        assert!(k.is_pure());
        assert_eq!(k.dim(), Some(2));
    }

    #[test]
    fn empty_complex() {
        let k = SimplicialComplex::from_facets(3, &[]).unwrap();
        assert!(k.f_vector().is_empty());
        assert_eq!(k.dim(), None);
        assert!(k.is_pure());
        assert_eq!(k.euler_characteristic(), 0);
    }

    #[test]
    fn rejects_out_of_range_vertices() {
        let err = SimplicialComplex::from_facets(3, &[simplex(&[0, 3])]);
        assert!(err.is_err());
    }

    #[test]
    fn skeleton_truncates() {
        let k = SimplicialComplex::from_facets(4, &[simplex(&[0, 1, 2, 3])]).unwrap();
        let sk = k.skeleton(1);
        assert_eq!(sk.f_vector(), &vec![4, 6]);
        let sk0 = k.skeleton(0);
        assert_eq!(sk0.f_vector(), &vec![4]);
    }

    #[test]
    fn link_of_vertex_in_sphere() {
        let k = boundary_tetrahedron();
        let link = k.link(&simplex(&[3])).unwrap();
        // Link of a vertex in the boundary of a tetrahedron is a triangle rim.
        assert_eq!(link.f_vector(), &vec![3, 3]);
        assert!(k.link(&simplex(&[0, 1, 2, 3])).is_err());
    }

    #[test]
    fn link_of_edge() {
        let k = boundary_tetrahedron();
        let link = k.link(&simplex(&[0, 1])).unwrap();
        assert_eq!(link.f_vector(), &vec![2]);
    }

    #[test]
    fn maximal_simplices_and_purity() {
        let facets = vec![simplex(&[0, 1, 2]), simplex(&[2, 3])];
        let k = SimplicialComplex::from_facets(4, &facets).unwrap();
        assert!(!k.is_pure());
        let maximal: Vec<_> = k.maximal_simplices();
        assert_eq!(maximal.len(), 2);
    }

    #[test]
    fn strong_components_split_and_merge() {
        // Two triangles sharing only a vertex: two components in dim 2.
        let k =
            SimplicialComplex::from_facets(5, &[simplex(&[0, 1, 2]), simplex(&[2, 3, 4])]).unwrap();
        let comps = k.strong_components(2).unwrap();
        assert_eq!(comps.len(), 2);
        assert!(!k.is_strongly_connected(2));

        // Sharing an edge: one component.
        let k =
            SimplicialComplex::from_facets(4, &[simplex(&[0, 1, 2]), simplex(&[1, 2, 3])]).unwrap();
        assert!(k.is_strongly_connected(2));

        let sphere = boundary_tetrahedron();
        assert!(sphere.is_strongly_connected(2));
        assert_eq!(sphere.strong_components(2).unwrap().len(), 1);
    }

    #[test]
    fn strong_components_absorb_higher_simplices() {
        // A solid tetrahedron plus a disjoint triangle, components in dim 2.
        let k = SimplicialComplex::from_facets(7, &[simplex(&[0, 1, 2, 3]), simplex(&[4, 5, 6])])
            .unwrap();
        let comps = k.strong_components(2).unwrap();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].dim(), Some(3));
        assert_eq!(comps[1].dim(), Some(2));
    }

    #[test]
    fn prime_suspension_of_circle_is_sphere() {
        let circle = SimplicialComplex::from_facets(
            3,
            &[simplex(&[0, 1]), simplex(&[0, 2]), simplex(&[1, 2])],
        )
        .unwrap();
        let s = circle.prime_suspension().unwrap();
        assert_eq!(s, boundary_tetrahedron());
    }

    #[test]
    fn prime_suspension_f_vector_arithmetic() {
        // f_k = C(v, k+1) for k <= d+1, plus the cone layer f_{k-1}.
        let k = boundary_tetrahedron();
        let s = k.prime_suspension().unwrap();
        assert_eq!(s.n_vertices(), 5);
        let f = s.f_vector();
        assert_eq!(f[0], 4 + 1);
        assert_eq!(f[1], binomial(4, 2) + 4);
        assert_eq!(f[2], binomial(4, 3) + 6);
        assert_eq!(f[3], binomial(4, 4) + 4);
        assert_eq!(s.dim(), Some(3));
        assert!(s.is_pure());
    }

    #[test]
    fn prime_suspension_rejects_degenerate_input() {
        assert!(SimplicialComplex::empty(2).prime_suspension().is_err());
        let points = SimplicialComplex::from_facets(2, &[simplex(&[0]), simplex(&[1])]).unwrap();
        assert!(points.prime_suspension().is_err());
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(9, 5), 126);
        assert_eq!(binomial(4, 0), 1);
        assert_eq!(binomial(3, 5), 0);
    }
}
