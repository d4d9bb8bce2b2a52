use std::fmt;

use crate::error::{Error, Result};

/// An abstract simplex: a non-empty set of vertex labels, stored as a strictly
/// increasing vector. A simplex with k+1 vertices has dimension k.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex(Vec<u32>);

impl Simplex {
    /// Builds a simplex from a vertex list, which must be strictly increasing
    /// and non-empty.
    pub fn new(vertices: Vec<u32>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::invalid("simplex must have at least one vertex"));
        }
        if vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid(format!(
                "simplex vertices must be strictly increasing, got {:?}",
                vertices
            )));
        }
        Ok(Simplex(vertices))
    }

    /// Builds a simplex from vertices in any order, rejecting duplicates.
    pub fn from_unsorted(mut vertices: Vec<u32>) -> Result<Self> {
        vertices.sort_unstable();
        Simplex::new(vertices)
    }

    /// Internal constructor for vertex lists already known to be sorted.
    pub(crate) fn from_sorted_unchecked(vertices: Vec<u32>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]) && !vertices.is_empty());
        Simplex(vertices)
    }

    pub fn vertex(v: u32) -> Self {
        Simplex(vec![v])
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    pub fn contains_vertex(&self, v: u32) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// True when every vertex of `self` is a vertex of `other`.
    pub fn is_face_of(&self, other: &Simplex) -> bool {
        if self.0.len() > other.0.len() {
            return false;
        }
        let mut it = other.0.iter();
        self.0.iter().all(|v| it.any(|w| w == v))
    }

    /// The codimension-1 faces, in order of omitted position. Returns an empty
    /// iterator for vertices.
    pub fn facets(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = self.0.len();
        (0..n).filter(move |_| n > 1).map(move |skip| {
            let mut v = Vec::with_capacity(n - 1);
            v.extend(self.0.iter().take(skip));
            v.extend(self.0.iter().skip(skip + 1));
            Simplex(v)
        })
    }

    /// The simplex obtained by appending a vertex larger than the current
    /// maximum.
    pub(crate) fn extend_above(&self, v: u32) -> Simplex {
        debug_assert!(v > *self.0.last().unwrap());
        let mut vs = self.0.clone();
        vs.push(v);
        Simplex(vs)
    }

    /// All subsets of the vertex set with `k+1` elements, as k-simplices.
    pub fn faces_of_dim(&self, k: usize) -> Vec<Simplex> {
        use itertools::Itertools;
        if k + 1 > self.0.len() {
            return Vec::new();
        }
        self.0
            .iter()
            .copied()
            .combinations(k + 1)
            .map(Simplex)
            .collect()
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}
