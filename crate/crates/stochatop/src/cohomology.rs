//! Cohomology over an exact field: Betti numbers, canonical class
//! representatives and coordinates, cup length, and Steenrod squares in
//! characteristic two.

use crate::cochain::Cochain;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::matrix::{Echelon, Matrix};

/// Basis data for one cohomology degree.
///
/// The echelon rows span the cocycles; the first `n_boundaries` rows span the
/// coboundaries, and the remaining rows are canonical cocycle representatives
/// of a cohomology basis. Expressing a cocycle over the rows and reading off
/// the representative coefficients gives well-defined class coordinates.
#[derive(Debug, Clone)]
pub struct CohomologyBasis {
    field: Field,
    dim: usize,
    ambient: u64,
    n_boundaries: usize,
    echelon: Echelon,
    representatives: Vec<Cochain>,
}

/// Signed incidence matrix of the coboundary from degree `k`: one row per
/// `(k+1)`-simplex, one column per `k`-simplex.
fn coboundary_matrix(complex: &SimplicialComplex, field: &Field, k: usize) -> Matrix {
    let rows = complex.f_vector().get(k + 1).copied().unwrap_or(0);
    let cols = complex.f_vector().get(k).copied().unwrap_or(0);
    let mut m = Matrix::zeros(field, rows, cols);
    for (t, tau) in complex.simplices_of_dim(k + 1).iter().enumerate() {
        for (j, facet) in tau.facets().enumerate() {
            let idx = complex
                .index_of(&facet)
                .expect("complex is closed under faces");
            let sign = if j % 2 == 0 { 1 } else { -1 };
            m.set(t, idx, field.from_integer(sign));
        }
    }
    m
}

impl CohomologyBasis {
    pub fn compute(
        complex: &SimplicialComplex,
        field: Field,
        dim: usize,
    ) -> Result<CohomologyBasis> {
        let width = complex.f_vector().get(dim).copied().unwrap_or(0);
        let mut echelon = Echelon::new(field, width);
        if dim >= 1 && width > 0 {
            for s in complex.simplices_of_dim(dim - 1) {
                let image = Cochain::indicator(complex, field, s)?.coboundary(complex)?;
                echelon.insert(image.values().to_vec());
            }
        }
        let n_boundaries = echelon.len();
        let mut representatives = Vec::new();
        if width > 0 {
            let delta = coboundary_matrix(complex, &field, dim);
            for vec in delta.kernel_basis(&field) {
                if echelon.insert(vec) {
                    let row = echelon.rows().last().expect("just inserted").clone();
                    representatives.push(Cochain::from_values(complex, field, dim, row)?);
                }
            }
        }
        Ok(CohomologyBasis {
            field,
            dim,
            ambient: complex.fingerprint(),
            n_boundaries,
            echelon,
            representatives,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn betti(&self) -> usize {
        self.echelon.len() - self.n_boundaries
    }

    /// Canonical cocycle representatives of a basis of the cohomology group.
    pub fn representatives(&self) -> &[Cochain] {
        &self.representatives
    }

    fn check(&self, complex: &SimplicialComplex, cocycle: &Cochain) -> Result<()> {
        if complex.fingerprint() != self.ambient {
            return Err(Error::invalid("basis was computed for a different complex"));
        }
        if cocycle.ambient_fingerprint() != self.ambient {
            return Err(Error::invalid("cochain does not belong to this complex"));
        }
        if cocycle.field() != self.field {
            return Err(Error::invalid("cochain is over a different field"));
        }
        if cocycle.dim() != self.dim {
            return Err(Error::invalid(format!(
                "cochain has degree {}, basis has degree {}",
                cocycle.dim(),
                self.dim
            )));
        }
        if !cocycle.coboundary(complex)?.is_zero() {
            return Err(Error::invalid("cochain is not a cocycle"));
        }
        Ok(())
    }

    /// Coordinates of a cocycle's class in the representative basis.
    pub fn coordinates(&self, complex: &SimplicialComplex, cocycle: &Cochain) -> Result<Vec<Elem>> {
        self.check(complex, cocycle)?;
        let coeffs = self
            .echelon
            .coordinates(cocycle.values())
            .ok_or_else(|| Error::invalid("cocycle is outside the computed cocycle space"))?;
        Ok(coeffs[self.n_boundaries..].to_vec())
    }

    /// Whether a cocycle is a coboundary.
    pub fn class_is_zero(&self, complex: &SimplicialComplex, cocycle: &Cochain) -> Result<bool> {
        let coords = self.coordinates(complex, cocycle)?;
        Ok(coords.iter().all(|c| self.field.is_zero(c)))
    }
}

/// Betti number in one degree.
pub fn betti_number(complex: &SimplicialComplex, field: Field, dim: usize) -> Result<usize> {
    Ok(CohomologyBasis::compute(complex, field, dim)?.betti())
}

/// Betti numbers in degrees `0..=dim(complex)`; empty for the empty complex.
pub fn betti_numbers(complex: &SimplicialComplex, field: Field) -> Result<Vec<usize>> {
    let Some(top) = complex.dim() else {
        return Ok(Vec::new());
    };
    (0..=top).map(|k| betti_number(complex, field, k)).collect()
}

/// Length of the longest nonzero cup product of positive-degree classes.
///
/// Works level by level: level one is spanned by basis representatives of
/// each positive degree; level `r+1` is spanned by cup products of a level-`r`
/// element with a level-one representative (multilinearity lets products of
/// arbitrary classes reduce to products of basis elements). The length is the
/// last level with a nonzero class, which is at most the complex dimension.
pub fn cup_length(complex: &SimplicialComplex, field: Field) -> Result<usize> {
    let top = match complex.dim() {
        None | Some(0) => return Ok(0),
        Some(top) => top,
    };
    let bases: Vec<CohomologyBasis> = (0..=top)
        .map(|k| CohomologyBasis::compute(complex, field, k))
        .collect::<Result<_>>()?;
    let mut current: Vec<Vec<Cochain>> = (0..=top)
        .map(|d| {
            if d >= 1 {
                bases[d].representatives().to_vec()
            } else {
                Vec::new()
            }
        })
        .collect();
    if current.iter().all(Vec::is_empty) {
        return Ok(0);
    }
    let mut length = 1;
    while length < top {
        let mut next: Vec<Vec<Cochain>> = vec![Vec::new(); top + 1];
        let mut spans: Vec<Echelon> = bases
            .iter()
            .map(|b| Echelon::new(field, b.betti()))
            .collect();
        for d in 2..=top {
            for e in 1..d {
                for z in &current[d - e] {
                    for w in bases[e].representatives() {
                        let product = z.cup(w, complex)?;
                        let coords = bases[d].coordinates(complex, &product)?;
                        if spans[d].insert(coords) {
                            next[d].push(product);
                        }
                    }
                }
            }
        }
        if next.iter().all(Vec::is_empty) {
            return Ok(length);
        }
        current = next;
        length += 1;
    }
    Ok(length)
}

/// Steenrod square of a cocycle in characteristic two: for a degree-`k`
/// cocycle the `i`-th square is the class of the cup-`(k-i)` self-product,
/// landing in degree `k + i`; squares above the degree vanish.
pub fn sq(complex: &SimplicialComplex, i: usize, cocycle: &Cochain) -> Result<Cochain> {
    if cocycle.field().characteristic() != 2 {
        return Err(Error::invalid(
            "Steenrod squares require characteristic two",
        ));
    }
    if cocycle.ambient_fingerprint() != complex.fingerprint() {
        return Err(Error::invalid("cochain does not belong to this complex"));
    }
    if !cocycle.coboundary(complex)?.is_zero() {
        return Err(Error::invalid("cochain is not a cocycle"));
    }
    let k = cocycle.dim();
    if i > k {
        return Ok(Cochain::zero(complex, cocycle.field(), k + i));
    }
    let square = cocycle.cup_i(cocycle, k - i, complex)?;
    #[cfg(debug_assertions)]
    {
        assert!(
            square.coboundary(complex)?.is_zero(),
            "square of a cocycle must be a cocycle"
        );
    }
    Ok(square)
}

/// Whether the `i`-th Steenrod square is nonzero as a map out of degree
/// `source_dim` cohomology. Squares are additive on classes, so checking
/// basis representatives suffices.
pub fn sq_is_nontrivial(complex: &SimplicialComplex, i: usize, source_dim: usize) -> Result<bool> {
    let f2 = Field::Prime(2);
    let source = CohomologyBasis::compute(complex, f2, source_dim)?;
    if source.betti() == 0 {
        return Ok(false);
    }
    let target = CohomologyBasis::compute(complex, f2, source_dim + i)?;
    if target.betti() == 0 {
        return Ok(false);
    }
    for z in source.representatives() {
        let square = sq(complex, i, z)?;
        if !target.class_is_zero(complex, &square)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Whether the `i`-th Steenrod square into degree `target_dim` is nonzero on
/// the whole complex, screened through the strong components of the
/// `target_dim`-simplices.
///
/// Cochains in degree `target_dim` split over those components, restriction
/// commutes with the square, and the degree-`target_dim` cohomology injects
/// into the direct sum over component closures, so a square that vanishes on
/// every component closure vanishes globally. When some component acts
/// nontrivially the global action is confirmed directly, because a component
/// cocycle need not extend to the whole complex.
pub fn steenrod_nontrivial_on_components(
    complex: &SimplicialComplex,
    i: usize,
    target_dim: usize,
) -> Result<bool> {
    if i > target_dim {
        return Err(Error::invalid(format!(
            "square index {i} exceeds target degree {target_dim}"
        )));
    }
    let source_dim = target_dim - i;
    if target_dim == 0 {
        return sq_is_nontrivial(complex, 0, 0);
    }
    let components = complex.strong_components(target_dim)?;
    let mut any_component_acts = false;
    for component in &components {
        if sq_is_nontrivial(component, i, source_dim)? {
            any_component_acts = true;
            break;
        }
    }
    if !any_component_acts {
        return Ok(false);
    }
    sq_is_nontrivial(complex, i, source_dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::datasets;
    use crate::simplex::Simplex;

    fn complex(n: usize, facets: &[&[u32]]) -> SimplicialComplex {
        let fs: Vec<Simplex> = facets
            .iter()
            .map(|f| Simplex::new(f.to_vec()).unwrap())
            .collect();
        SimplicialComplex::from_facets(n, &fs).unwrap()
    }

    fn sphere_2() -> SimplicialComplex {
        complex(4, &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]])
    }

    #[test]
    fn betti_of_two_sphere() {
        let b = betti_numbers(&sphere_2(), Field::Rationals).unwrap();
        assert_eq!(b, vec![1, 0, 1]);
        let b2 = betti_numbers(&sphere_2(), Field::Prime(2)).unwrap();
        assert_eq!(b2, vec![1, 0, 1]);
    }

    #[test]
    fn betti_counts_connected_components() {
        let k = complex(5, &[&[0, 1], &[1, 2], &[3, 4]]);
        assert_eq!(betti_number(&k, Field::Rationals, 0).unwrap(), 2);
    }

    #[test]
    fn betti_of_circle() {
        let k = complex(3, &[&[0, 1], &[1, 2], &[0, 2]]);
        assert_eq!(betti_numbers(&k, Field::Rationals).unwrap(), vec![1, 1]);
    }

    #[test]
    fn projective_plane_betti_depends_on_field() {
        let k = datasets::projective_plane_6();
        assert_eq!(betti_numbers(&k, Field::Rationals).unwrap(), vec![1, 0, 0]);
        assert_eq!(betti_numbers(&k, Field::Prime(2)).unwrap(), vec![1, 1, 1]);
        assert_eq!(betti_numbers(&k, Field::Prime(3)).unwrap(), vec![1, 0, 0]);
    }

    #[test]
    fn torus_betti_and_cup_length() {
        let k = datasets::torus_7();
        assert_eq!(betti_numbers(&k, Field::Rationals).unwrap(), vec![1, 2, 1]);
        assert_eq!(cup_length(&k, Field::Rationals).unwrap(), 2);
        assert_eq!(cup_length(&k, Field::Prime(2)).unwrap(), 2);
    }

    #[test]
    fn cup_length_of_simple_spaces() {
        assert_eq!(cup_length(&sphere_2(), Field::Rationals).unwrap(), 1);
        let point = complex(1, &[&[0]]);
        assert_eq!(cup_length(&point, Field::Rationals).unwrap(), 0);
        let rp2 = datasets::projective_plane_6();
        assert_eq!(cup_length(&rp2, Field::Rationals).unwrap(), 0);
        assert_eq!(cup_length(&rp2, Field::Prime(2)).unwrap(), 2);
    }

    #[test]
    fn coordinates_are_class_invariants() {
        let k = datasets::torus_7();
        let f5 = Field::Prime(5);
        let basis = CohomologyBasis::compute(&k, f5, 1).unwrap();
        assert_eq!(basis.betti(), 2);
        let rep = basis.representatives()[0].clone();
        let coords = basis.coordinates(&k, &rep).unwrap();
        // Shift by a coboundary; the coordinates must not move.
        let vertex = Simplex::new(vec![3]).unwrap();
        let shift = Cochain::indicator(&k, f5, &vertex)
            .unwrap()
            .coboundary(&k)
            .unwrap();
        let shifted = rep.add(&shift).unwrap();
        assert_eq!(basis.coordinates(&k, &shifted).unwrap(), coords);
        assert!(!basis.class_is_zero(&k, &rep).unwrap());
        assert!(basis.class_is_zero(&k, &shift).unwrap());
    }

    #[test]
    fn non_cocycles_are_rejected() {
        let k = sphere_2();
        let q = Field::Rationals;
        let edge = Simplex::new(vec![0, 1]).unwrap();
        let a = Cochain::indicator(&k, q, &edge).unwrap();
        let basis = CohomologyBasis::compute(&k, q, 1).unwrap();
        assert!(basis.coordinates(&k, &a).is_err());
    }

    #[test]
    fn projective_plane_has_nontrivial_first_square() {
        let rp2 = datasets::projective_plane_6();
        assert!(sq_is_nontrivial(&rp2, 1, 1).unwrap());
        assert!(steenrod_nontrivial_on_components(&rp2, 1, 2).unwrap());
    }

    #[test]
    fn torus_first_square_vanishes() {
        let t = datasets::torus_7();
        assert!(!sq_is_nontrivial(&t, 1, 1).unwrap());
        assert!(!steenrod_nontrivial_on_components(&t, 1, 2).unwrap());
    }

    #[test]
    fn sq_zero_acts_as_identity_on_classes() {
        let t = datasets::torus_7();
        let f2 = Field::Prime(2);
        let basis = CohomologyBasis::compute(&t, f2, 1).unwrap();
        for z in basis.representatives() {
            let s = sq(&t, 0, z).unwrap();
            let diff = s.sub(z).unwrap();
            assert!(basis.class_is_zero(&t, &diff).unwrap());
        }
    }

    #[test]
    fn squares_above_degree_vanish() {
        let rp2 = datasets::projective_plane_6();
        let f2 = Field::Prime(2);
        let basis = CohomologyBasis::compute(&rp2, f2, 1).unwrap();
        let z = &basis.representatives()[0];
        let s = sq(&rp2, 2, z).unwrap();
        assert!(s.is_zero());
        assert_eq!(s.dim(), 3);
    }

    #[test]
    fn disconnected_square_detection_uses_components() {
        // Disjoint union of a projective plane (labels 0..6) and a sphere
        // (labels 6..10): the square acts through the first component.
        let rp2 = datasets::projective_plane_6();
        let mut facets: Vec<Simplex> = rp2.maximal_simplices().into_iter().cloned().collect();
        for f in [[6u32, 7, 8], [6, 7, 9], [6, 8, 9], [7, 8, 9]] {
            facets.push(Simplex::new(f.to_vec()).unwrap());
        }
        let k = SimplicialComplex::from_facets(10, &facets).unwrap();
        assert_eq!(k.strong_components(2).unwrap().len(), 2);
        assert!(steenrod_nontrivial_on_components(&k, 1, 2).unwrap());
        // Two spheres alone: no square in sight.
        let mut sphere_facets: Vec<Simplex> = Vec::new();
        for f in [[0u32, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]] {
            sphere_facets.push(Simplex::new(f.to_vec()).unwrap());
        }
        for f in [[4u32, 5, 6], [4, 5, 7], [4, 6, 7], [5, 6, 7]] {
            sphere_facets.push(Simplex::new(f.to_vec()).unwrap());
        }
        let two_spheres = SimplicialComplex::from_facets(8, &sphere_facets).unwrap();
        assert!(!steenrod_nontrivial_on_components(&two_spheres, 1, 2).unwrap());
    }
}
