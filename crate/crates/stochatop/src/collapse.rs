//! Free faces and greedy random collapse.
//!
//! A simplex is a free face when it is properly contained in exactly one other
//! simplex; removing the pair is an elementary collapse and preserves homotopy
//! type. Greedy collapse is a semi-decision procedure: success proves the
//! complex collapses to the requested dimension, failure proves nothing, so
//! the driver retries with fresh randomness.

use std::collections::{BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::complex::{mix64, SimplicialComplex};
use crate::error::{Error, Result};
use crate::simplex::Simplex;

/// All free pairs `(sigma, tau)`: `sigma` is contained in `tau` and in no
/// other simplex. Pairs are sorted by `sigma`.
pub fn free_faces(complex: &SimplicialComplex) -> Vec<(Simplex, Simplex)> {
    let set: BTreeSet<Simplex> = complex.iter().cloned().collect();
    free_pairs_of_set(&set, 0)
}

/// Free pairs whose top simplex has dimension strictly above `min_top_dim`
/// minus one; `min_top_dim = 0` returns every free pair.
fn free_pairs_of_set(set: &BTreeSet<Simplex>, min_top_dim: usize) -> Vec<(Simplex, Simplex)> {
    let mut coface_count: HashMap<&Simplex, (usize, Option<&Simplex>)> = HashMap::new();
    for s in set {
        coface_count.entry(s).or_insert((0, None));
    }
    let mut scratch: Vec<(Simplex, &Simplex)> = Vec::new();
    for t in set {
        if t.dim() == 0 {
            continue;
        }
        for facet in t.facets() {
            scratch.push((facet, t));
        }
    }
    for (facet, t) in &scratch {
        if let Some(entry) = coface_count.get_mut(facet) {
            entry.0 += 1;
            entry.1 = Some(t);
        }
    }
    let mut out: Vec<(Simplex, Simplex)> = set
        .iter()
        .filter_map(|s| match coface_count.get(s) {
            Some(&(1, Some(t))) if t.dim() >= min_top_dim => Some((s.clone(), t.clone())),
            _ => None,
        })
        .collect();
    out.sort();
    out
}

/// Result of a collapse attempt.
#[derive(Debug, Clone)]
pub struct CollapseOutcome {
    /// True when some restart reached dimension `<= d`.
    pub success: bool,
    /// Final complex of the successful attempt, or of the attempt that got
    /// furthest (fewest simplices above the target dimension).
    pub complex: SimplicialComplex,
    /// Number of elementary collapses performed in the reported attempt.
    pub pairs_removed: usize,
    /// Number of attempts actually run.
    pub attempts: usize,
}

/// Greedily collapses free pairs `(sigma, tau)` with `dim tau > d`, choosing
/// uniformly among current candidates, restarting with fresh randomness until
/// the complex has dimension `<= d` or the restart budget is exhausted.
pub fn collapse_to_dim(
    complex: &SimplicialComplex,
    d: usize,
    seed: u64,
    restarts: usize,
) -> Result<CollapseOutcome> {
    if restarts == 0 {
        return Err(Error::invalid("collapse needs at least one attempt"));
    }
    let mut best: Option<(usize, usize, BTreeSet<Simplex>)> = None;
    let mut attempts = 0;
    for attempt in 0..restarts {
        attempts += 1;
        let mut rng = ChaCha12Rng::seed_from_u64(mix64(seed ^ mix64(attempt as u64)));
        let mut set: BTreeSet<Simplex> = complex.iter().cloned().collect();
        let mut removed = 0;
        loop {
            let candidates = free_pairs_of_set(&set, d + 1);
            if candidates.is_empty() {
                break;
            }
            let (sigma, tau) = candidates[rng.gen_range(0..candidates.len())].clone();
            set.remove(&sigma);
            set.remove(&tau);
            removed += 1;
        }
        let above = set.iter().filter(|s| s.dim() > d).count();
        if above == 0 {
            let final_complex = SimplicialComplex::from_closed_set(complex.n_vertices(), set);
            return Ok(CollapseOutcome {
                success: true,
                complex: final_complex,
                pairs_removed: removed,
                attempts,
            });
        }
        if best.as_ref().is_none_or(|(b, _, _)| above < *b) {
            best = Some((above, removed, set));
        }
    }
    let (_, removed, set) = best.expect("at least one attempt ran");
    Ok(CollapseOutcome {
        success: false,
        complex: SimplicialComplex::from_closed_set(complex.n_vertices(), set),
        pairs_removed: removed,
        attempts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simplex(vs: &[u32]) -> Simplex {
        Simplex::new(vs.to_vec()).unwrap()
    }

    #[test]
    fn full_triangle_has_three_free_edges() {
        let k = SimplicialComplex::from_facets(3, &[simplex(&[0, 1, 2])]).unwrap();
        let pairs = free_faces(&k);
        assert_eq!(pairs.len(), 3);
        assert!(pairs.iter().all(|(s, t)| s.dim() == 1 && t.dim() == 2));
    }

    #[test]
    fn sphere_has_no_free_faces() {
        let facets: Vec<Simplex> = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]
            .iter()
            .map(|f| simplex(f))
            .collect();
        let k = SimplicialComplex::from_facets(4, &facets).unwrap();
        assert!(free_faces(&k).is_empty());
    }

    #[test]
    fn free_vertex_detected() {
        // A path 0-1-2: endpoints are free vertices.
        let k = SimplicialComplex::from_facets(3, &[simplex(&[0, 1]), simplex(&[1, 2])]).unwrap();
        let pairs = free_faces(&k);
        let sigmas: Vec<_> = pairs.iter().map(|(s, _)| s.clone()).collect();
        assert!(sigmas.contains(&simplex(&[0])));
        assert!(sigmas.contains(&simplex(&[2])));
    }

    #[test]
    fn full_simplex_collapses_to_point() {
        let k = SimplicialComplex::from_facets(4, &[simplex(&[0, 1, 2, 3])]).unwrap();
        let out = collapse_to_dim(&k, 0, 7, 4).unwrap();
        assert!(out.success);
        assert_eq!(out.complex.dim(), Some(0));
        assert_eq!(out.complex.f_vector()[0], 1);
    }

    #[test]
    fn sphere_cannot_collapse() {
        let facets: Vec<Simplex> = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]
            .iter()
            .map(|f| simplex(f))
            .collect();
        let k = SimplicialComplex::from_facets(4, &facets).unwrap();
        let out = collapse_to_dim(&k, 1, 3, 5).unwrap();
        assert!(!out.success);
        assert_eq!(out.attempts, 5);
        assert_eq!(out.complex, k);
    }

    #[test]
    fn collapse_is_deterministic_for_fixed_seed() {
        let k = SimplicialComplex::from_facets(5, &[simplex(&[0, 1, 2, 3, 4])]).unwrap();
        let a = collapse_to_dim(&k, 0, 11, 2).unwrap();
        let b = collapse_to_dim(&k, 0, 11, 2).unwrap();
        assert_eq!(a.complex, b.complex);
        assert_eq!(a.pairs_removed, b.pairs_removed);
    }
}
