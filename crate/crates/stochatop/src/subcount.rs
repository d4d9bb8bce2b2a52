//! Counting labeled and unlabeled copies of a pattern complex inside a host.
//!
//! An embedding is an injective vertex map carrying every pattern simplex to a
//! host simplex; the image need not be induced, so a hollow triangle embeds
//! into a filled one. Unlabeled copies are embeddings divided by pattern
//! automorphisms.

use std::collections::HashSet;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::simplex::Simplex;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CopyCount {
    pub embeddings: u64,
    pub automorphisms: u64,
    pub copies: u64,
}

/// Counts embeddings, automorphisms, and unlabeled copies of `pattern` in
/// `host`. Errors when the pattern is empty.
pub fn count_subcomplex_copies(
    pattern: &SimplicialComplex,
    host: &SimplicialComplex,
) -> Result<CopyCount> {
    if pattern.is_empty() {
        return Err(Error::invalid("pattern complex is empty"));
    }
    let embeddings = count_embeddings(pattern, host);
    let automorphisms = count_embeddings(pattern, pattern);
    debug_assert!(automorphisms > 0, "identity is always an automorphism");
    debug_assert_eq!(
        embeddings % automorphisms,
        0,
        "automorphism group acts freely on embeddings"
    );
    Ok(CopyCount {
        embeddings,
        automorphisms,
        copies: embeddings / automorphisms,
    })
}

/// Backtracking count of injective simplex-preserving vertex maps.
fn count_embeddings(pattern: &SimplicialComplex, host: &SimplicialComplex) -> u64 {
    let pattern_vertices: Vec<u32> = pattern
        .simplices_of_dim(0)
        .iter()
        .map(|s| s.vertices()[0])
        .collect();
    if pattern_vertices.is_empty() {
        return 0;
    }
    // Order pattern vertices by descending incidence degree so constrained
    // vertices are assigned early.
    let degree = |v: u32| pattern.iter().filter(|s| s.contains_vertex(v)).count();
    let mut order = pattern_vertices.clone();
    order.sort_by_key(|&v| (usize::MAX - degree(v), v));

    let position: std::collections::HashMap<u32, usize> =
        order.iter().enumerate().map(|(i, &v)| (v, i)).collect();

    // Maximal pattern simplices grouped by the step at which they are fully
    // assigned; faces of checked simplices are implied by closure.
    let maximal: Vec<&Simplex> = pattern.maximal_simplices();
    let mut completes_at: Vec<Vec<&Simplex>> = vec![Vec::new(); order.len()];
    for s in &maximal {
        let step = s.vertices().iter().map(|v| position[v]).max().unwrap();
        completes_at[step].push(s);
    }
    // Pattern edges to already-assigned vertices, for candidate pruning.
    let mut earlier_neighbors: Vec<Vec<usize>> = vec![Vec::new(); order.len()];
    for e in pattern.simplices_of_dim(1) {
        let (a, b) = (position[&e.vertices()[0]], position[&e.vertices()[1]]);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        earlier_neighbors[hi].push(lo);
    }

    let host_vertices: Vec<u32> = host
        .simplices_of_dim(0)
        .iter()
        .map(|s| s.vertices()[0])
        .collect();
    let mut adjacency: HashSet<(u32, u32)> = HashSet::new();
    for e in host.simplices_of_dim(1) {
        let (a, b) = (e.vertices()[0], e.vertices()[1]);
        adjacency.insert((a, b));
        adjacency.insert((b, a));
    }

    let mut assignment: Vec<u32> = vec![0; order.len()];
    let mut used: HashSet<u32> = HashSet::new();
    let mut count: u64 = 0;
    search(
        0,
        &order,
        &position,
        &completes_at,
        &earlier_neighbors,
        &host_vertices,
        &adjacency,
        host,
        &mut assignment,
        &mut used,
        &mut count,
    );
    count
}

#[allow(clippy::too_many_arguments)]
fn search(
    step: usize,
    order: &[u32],
    position: &std::collections::HashMap<u32, usize>,
    completes_at: &[Vec<&Simplex>],
    earlier_neighbors: &[Vec<usize>],
    host_vertices: &[u32],
    adjacency: &HashSet<(u32, u32)>,
    host: &SimplicialComplex,
    assignment: &mut Vec<u32>,
    used: &mut HashSet<u32>,
    count: &mut u64,
) {
    if step == order.len() {
        *count += 1;
        return;
    }
    'candidates: for &candidate in host_vertices {
        if used.contains(&candidate) {
            continue;
        }
        for &earlier in &earlier_neighbors[step] {
            if !adjacency.contains(&(assignment[earlier], candidate)) {
                continue 'candidates;
            }
        }
        assignment[step] = candidate;
        let mut ok = true;
        for s in &completes_at[step] {
            let image = Simplex::from_unsorted(
                s.vertices()
                    .iter()
                    .map(|v| assignment[position[v]])
                    .collect(),
            )
            .expect("injective assignment");
            if !host.contains(&image) {
                ok = false;
                break;
            }
        }
        if ok {
            used.insert(candidate);
            search(
                step + 1,
                order,
                position,
                completes_at,
                earlier_neighbors,
                host_vertices,
                adjacency,
                host,
                assignment,
                used,
                count,
            );
            used.remove(&candidate);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simplex(vs: &[u32]) -> Simplex {
        Simplex::new(vs.to_vec()).unwrap()
    }

    fn complex(n: usize, facets: &[&[u32]]) -> SimplicialComplex {
        let fs: Vec<Simplex> = facets.iter().map(|f| simplex(f)).collect();
        SimplicialComplex::from_facets(n, &fs).unwrap()
    }

    #[test]
    fn single_vertex_pattern_counts_vertices() {
        let pattern = complex(1, &[&[0]]);
        let host = complex(5, &[&[0], &[1], &[2], &[3], &[4]]);
        let c = count_subcomplex_copies(&pattern, &host).unwrap();
        assert_eq!(c.embeddings, 5);
        assert_eq!(c.automorphisms, 1);
        assert_eq!(c.copies, 5);
    }

    #[test]
    fn edges_in_sphere() {
        let pattern = complex(2, &[&[0, 1]]);
        let host = complex(4, &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]]);
        let c = count_subcomplex_copies(&pattern, &host).unwrap();
        assert_eq!(c.embeddings, 12);
        assert_eq!(c.automorphisms, 2);
        assert_eq!(c.copies, 6);
    }

    #[test]
    fn hollow_triangle_in_solid_tetrahedron() {
        let pattern = complex(3, &[&[0, 1], &[0, 2], &[1, 2]]);
        let host = complex(4, &[&[0, 1, 2, 3]]);
        let c = count_subcomplex_copies(&pattern, &host).unwrap();
        assert_eq!(c.automorphisms, 6);
        assert_eq!(c.copies, 4);
    }

    #[test]
    fn pattern_larger_than_host() {
        let pattern = complex(3, &[&[0, 1, 2]]);
        let host = complex(2, &[&[0, 1]]);
        let c = count_subcomplex_copies(&pattern, &host).unwrap();
        assert_eq!(c.embeddings, 0);
        assert_eq!(c.copies, 0);
    }

    #[test]
    fn empty_pattern_rejected() {
        let pattern = SimplicialComplex::empty(2);
        let host = complex(2, &[&[0, 1]]);
        assert!(count_subcomplex_copies(&pattern, &host).is_err());
    }

    #[test]
    fn disconnected_pattern() {
        // Two disjoint edges in a 4-cycle: pick opposite or adjacent pairs.
        let host = complex(4, &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]]);
        let pattern = complex(4, &[&[0, 1], &[2, 3]]);
        let c = count_subcomplex_copies(&pattern, &host).unwrap();
        // Unordered pairs of disjoint edges in C4: {01,23} and {12,03}.
        assert_eq!(c.copies, 2);
    }
}
