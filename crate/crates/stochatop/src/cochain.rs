//! Simplicial cochains with exact coefficients: coboundary, cup product,
//! and the higher cup-i products in characteristic two.
//!
//! A cochain of degree `k` stores one value per `k`-simplex of a fixed
//! ambient complex, in the complex's sorted simplex order, and remembers the
//! ambient fingerprint so cross-complex operations fail loudly.

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::simplex::Simplex;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    field: Field,
    dim: usize,
    values: Vec<Elem>,
    ambient: u64,
}

impl Cochain {
    pub fn zero(complex: &SimplicialComplex, field: Field, dim: usize) -> Cochain {
        let len = complex.f_vector().get(dim).copied().unwrap_or(0);
        Cochain {
            field,
            dim,
            values: vec![field.zero(); len],
            ambient: complex.fingerprint(),
        }
    }

    /// Builds a cochain from one value per `dim`-simplex, in complex order.
    pub fn from_values(
        complex: &SimplicialComplex,
        field: Field,
        dim: usize,
        values: Vec<Elem>,
    ) -> Result<Cochain> {
        let expect = complex.f_vector().get(dim).copied().unwrap_or(0);
        if values.len() != expect {
            return Err(Error::invalid(format!(
                "expected {expect} values for degree {dim}, got {}",
                values.len()
            )));
        }
        Ok(Cochain {
            field,
            dim,
            values,
            ambient: complex.fingerprint(),
        })
    }

    /// The indicator cochain of a single simplex of the complex.
    pub fn indicator(
        complex: &SimplicialComplex,
        field: Field,
        simplex: &Simplex,
    ) -> Result<Cochain> {
        let dim = simplex.dim();
        let index = complex
            .index_of(simplex)
            .ok_or_else(|| Error::invalid(format!("simplex {simplex} is not in the complex")))?;
        let mut c = Cochain::zero(complex, field, dim);
        c.values[index] = field.one();
        Ok(c)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Elem] {
        &mut self.values
    }

    pub fn ambient_fingerprint(&self) -> u64 {
        self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| self.field.is_zero(v))
    }

    /// Value on a simplex of the ambient complex.
    pub fn eval(&self, complex: &SimplicialComplex, simplex: &Simplex) -> Result<Elem> {
        self.check_complex(complex)?;
        if simplex.dim() != self.dim {
            return Err(Error::invalid(format!(
                "cochain has degree {}, simplex has dimension {}",
                self.dim,
                simplex.dim()
            )));
        }
        let index = complex
            .index_of(simplex)
            .ok_or_else(|| Error::invalid(format!("simplex {simplex} is not in the complex")))?;
        Ok(self.values[index].clone())
    }

    fn check_complex(&self, complex: &SimplicialComplex) -> Result<()> {
        if complex.fingerprint() != self.ambient {
            return Err(Error::invalid("cochain does not belong to this complex"));
        }
        Ok(())
    }

    fn check_compatible(&self, other: &Cochain) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::invalid("cochains live on different complexes"));
        }
        if self.field != other.field {
            return Err(Error::invalid("cochains have different coefficient fields"));
        }
        Ok(())
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.check_compatible(other)?;
        if self.dim != other.dim {
            return Err(Error::invalid(format!(
                "cannot add cochains of degrees {} and {}",
                self.dim, other.dim
            )));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| self.field.add(a, b))
            .collect();
        Ok(Cochain {
            field: self.field,
            dim: self.dim,
            values,
            ambient: self.ambient,
        })
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.add(&other.scale(&self.field.neg(&self.field.one())))
    }

    pub fn scale(&self, factor: &Elem) -> Cochain {
        let values = self
            .values
            .iter()
            .map(|v| self.field.mul(v, factor))
            .collect();
        Cochain {
            field: self.field,
            dim: self.dim,
            values,
            ambient: self.ambient,
        }
    }

    /// Simplicial coboundary: on a `(k+1)`-simplex, the alternating sum of
    /// values on its codimension-one faces, signed by omitted position.
    pub fn coboundary(&self, complex: &SimplicialComplex) -> Result<Cochain> {
        self.check_complex(complex)?;
        let target = self.dim + 1;
        let mut out = Cochain::zero(complex, self.field, target);
        for (t, tau) in complex.simplices_of_dim(target).iter().enumerate() {
            let mut acc = self.field.zero();
            for (j, facet) in tau.facets().enumerate() {
                let idx = complex
                    .index_of(&facet)
                    .expect("complex is closed under faces");
                let term = if j % 2 == 0 {
                    self.values[idx].clone()
                } else {
                    self.field.neg(&self.values[idx])
                };
                acc = self.field.add(&acc, &term);
            }
            out.values[t] = acc;
        }
        Ok(out)
    }

    /// Cup product by front/back face evaluation: on an ascending
    /// `(p+q)`-simplex the first factor sees the front `p`-face and the
    /// second the back `q`-face, with no extra sign.
    pub fn cup(&self, other: &Cochain, complex: &SimplicialComplex) -> Result<Cochain> {
        self.check_compatible(other)?;
        self.check_complex(complex)?;
        let (p, q) = (self.dim, other.dim);
        let target = p + q;
        let mut out = Cochain::zero(complex, self.field, target);
        for (t, sigma) in complex.simplices_of_dim(target).iter().enumerate() {
            let vs = sigma.vertices();
            let front = Simplex::from_sorted_unchecked(vs[..=p].to_vec());
            let back = Simplex::from_sorted_unchecked(vs[p..].to_vec());
            let a = &self.values[complex.index_of(&front).expect("front face present")];
            let b = &other.values[complex.index_of(&back).expect("back face present")];
            out.values[t] = self.field.mul(a, b);
        }
        Ok(out)
    }

    /// Higher cup-i product in characteristic two. On an ascending
    /// `(p+q-i)`-simplex, sums over interval decompositions into `i+2`
    /// consecutive blocks sharing endpoints: the first factor is evaluated on
    /// the union of even-position blocks and the second on the union of
    /// odd-position blocks, keeping only decompositions whose unions have the
    /// right sizes. `i = 0` recovers the cup product.
    pub fn cup_i(&self, other: &Cochain, i: usize, complex: &SimplicialComplex) -> Result<Cochain> {
        self.check_compatible(other)?;
        self.check_complex(complex)?;
        if self.field.characteristic() != 2 {
            return Err(Error::invalid("cup-i products require characteristic two"));
        }
        let (p, q) = (self.dim, other.dim);
        if i > p + q {
            return Err(Error::invalid(format!(
                "cup-{i} of degrees {p} and {q} would have negative degree"
            )));
        }
        let n = p + q - i;
        let mut out = Cochain::zero(complex, self.field, n);
        let simplices = complex.simplices_of_dim(n);
        let mut cuts: Vec<usize> = Vec::with_capacity(i + 1);
        for (t, sigma) in simplices.iter().enumerate() {
            let mut acc = self.field.zero();
            sum_over_cuts(self, other, complex, sigma, n, i, &mut cuts, &mut acc);
            out.values[t] = acc;
        }
        Ok(out)
    }
}

/// Enumerates ascending cut sequences `u_0 < … < u_i` in `0..=n` and adds
/// `a(even blocks) * b(odd blocks)` for each decomposition with correctly
/// sized unions.
#[allow(clippy::too_many_arguments)]
fn sum_over_cuts(
    a: &Cochain,
    b: &Cochain,
    complex: &SimplicialComplex,
    sigma: &Simplex,
    n: usize,
    i: usize,
    cuts: &mut Vec<usize>,
    acc: &mut Elem,
) {
    if cuts.len() == i + 1 {
        add_decomposition(a, b, complex, sigma, n, cuts, acc);
        return;
    }
    let lo = cuts.last().map_or(0, |&u| u + 1);
    for u in lo..=n {
        cuts.push(u);
        sum_over_cuts(a, b, complex, sigma, n, i, cuts, acc);
        cuts.pop();
    }
}

fn add_decomposition(
    a: &Cochain,
    b: &Cochain,
    complex: &SimplicialComplex,
    sigma: &Simplex,
    n: usize,
    cuts: &[usize],
    acc: &mut Elem,
) {
    let vs = sigma.vertices();
    let field = a.field();
    // Blocks: [0..=u_0], [u_0..=u_1], …, [u_i..=n]; even positions feed the
    // first factor, odd positions the second.
    let mut x_arg: Vec<u32> = Vec::with_capacity(a.dim() + 1);
    let mut y_arg: Vec<u32> = Vec::with_capacity(b.dim() + 1);
    let mut block_start = 0usize;
    for (pos, &end) in cuts.iter().chain(std::iter::once(&n)).enumerate() {
        let target = if pos % 2 == 0 { &mut x_arg } else { &mut y_arg };
        for v in &vs[block_start..=end] {
            // Shared endpoints appear in both unions but only once each.
            if target.last() != Some(v) {
                target.push(*v);
            }
        }
        block_start = end;
    }
    if x_arg.len() != a.dim() + 1 || y_arg.len() != b.dim() + 1 {
        return;
    }
    let x = Simplex::from_sorted_unchecked(x_arg);
    let y = Simplex::from_sorted_unchecked(y_arg);
    let va = &a.values()[complex.index_of(&x).expect("face of a simplex is present")];
    let vb = &b.values()[complex.index_of(&y).expect("face of a simplex is present")];
    *acc = field.add(acc, &field.mul(va, vb));
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::SimplicialComplex;

    fn simplex(vs: &[u32]) -> Simplex {
        Simplex::new(vs.to_vec()).unwrap()
    }

    fn complex(n: usize, facets: &[&[u32]]) -> SimplicialComplex {
        let fs: Vec<Simplex> = facets.iter().map(|f| simplex(f)).collect();
        SimplicialComplex::from_facets(n, &fs).unwrap()
    }

    fn filled_triangle() -> SimplicialComplex {
        complex(3, &[&[0, 1, 2]])
    }

    #[test]
    fn coboundary_of_vertex_indicator() {
        let k = filled_triangle();
        let q = Field::Rationals;
        let a = Cochain::indicator(&k, q, &simplex(&[0])).unwrap();
        let da = a.coboundary(&k).unwrap();
        // On an edge [u, v] the omitted-position signs give δa = a(v) - a(u).
        assert_eq!(da.eval(&k, &simplex(&[0, 1])).unwrap(), q.from_integer(-1));
        assert_eq!(da.eval(&k, &simplex(&[0, 2])).unwrap(), q.from_integer(-1));
        assert_eq!(da.eval(&k, &simplex(&[1, 2])).unwrap(), q.zero());
    }

    #[test]
    fn coboundary_squares_to_zero() {
        let k = complex(4, &[&[0, 1, 2, 3]]);
        for field in [Field::Rationals, Field::Prime(2), Field::Prime(5)] {
            for (d, &count) in k.f_vector().iter().enumerate().take(2) {
                for idx in 0..count {
                    let s = k.simplices_of_dim(d)[idx].clone();
                    let a = Cochain::indicator(&k, field, &s).unwrap();
                    let dda = a.coboundary(&k).unwrap().coboundary(&k).unwrap();
                    assert!(dda.is_zero(), "δ²≠0 on {s} over {field}");
                }
            }
        }
    }

    #[test]
    fn cup_uses_front_and_back_faces() {
        let k = filled_triangle();
        let q = Field::Rationals;
        let a = Cochain::indicator(&k, q, &simplex(&[0, 1])).unwrap();
        let b = Cochain::indicator(&k, q, &simplex(&[1, 2])).unwrap();
        let ab = a.cup(&b, &k).unwrap();
        assert_eq!(ab.eval(&k, &simplex(&[0, 1, 2])).unwrap(), q.one());
        let ba = b.cup(&a, &k).unwrap();
        assert!(ba.is_zero());
    }

    #[test]
    fn cup_zero_matches_cup_in_characteristic_two() {
        let k = complex(4, &[&[0, 1, 2], &[1, 2, 3], &[0, 1, 3]]);
        let f2 = Field::Prime(2);
        let edges = k.f_vector()[1];
        let mut a = Cochain::zero(&k, f2, 1);
        let mut b = Cochain::zero(&k, f2, 1);
        for e in 0..edges {
            a.values_mut()[e] = Elem::Mod((e as u64 * 7 + 1) % 2);
            b.values_mut()[e] = Elem::Mod((e as u64 * 5 + 2) % 2);
        }
        let plain = a.cup(&b, &k).unwrap();
        let zeroth = a.cup_i(&b, 0, &k).unwrap();
        assert_eq!(plain.values(), zeroth.values());
    }

    #[test]
    fn cup_one_coboundary_identity_smoke() {
        // δ(a ∪₁ b) = δa ∪₁ b + a ∪₁ δb + a ∪₀ b + b ∪₀ a in char two.
        let k = complex(5, &[&[0, 1, 2, 3], &[1, 2, 3, 4]]);
        let f2 = Field::Prime(2);
        let a = Cochain::indicator(&k, f2, &simplex(&[1, 2])).unwrap();
        let b = Cochain::indicator(&k, f2, &simplex(&[2, 3])).unwrap();
        let lhs = a.cup_i(&b, 1, &k).unwrap().coboundary(&k).unwrap();
        let rhs = a
            .coboundary(&k)
            .unwrap()
            .cup_i(&b, 1, &k)
            .unwrap()
            .add(&a.cup_i(&b.coboundary(&k).unwrap(), 1, &k).unwrap())
            .unwrap()
            .add(&a.cup_i(&b, 0, &k).unwrap())
            .unwrap()
            .add(&b.cup_i(&a, 0, &k).unwrap())
            .unwrap();
        assert_eq!(lhs.values(), rhs.values());
    }

    #[test]
    fn leibniz_rule_over_rationals() {
        let k = complex(5, &[&[0, 1, 2, 3], &[0, 1, 2, 4], &[1, 3, 4]]);
        let q = Field::Rationals;
        let mut a = Cochain::zero(&k, q, 1);
        for (e, v) in a.values_mut().iter_mut().enumerate() {
            *v = q.from_integer(e as i64 % 5 - 2);
        }
        let mut b = Cochain::zero(&k, q, 1);
        for (e, v) in b.values_mut().iter_mut().enumerate() {
            *v = q.from_integer((3 * e + 1) as i64 % 7 - 3);
        }
        let lhs = a.cup(&b, &k).unwrap().coboundary(&k).unwrap();
        // deg(a) = 1, so the sign on a ∪ δb is -1.
        let rhs = a
            .coboundary(&k)
            .unwrap()
            .cup(&b, &k)
            .unwrap()
            .sub(&a.cup(&b.coboundary(&k).unwrap(), &k).unwrap())
            .unwrap();
        assert_eq!(lhs.values(), rhs.values());
    }

    #[test]
    fn mismatched_complexes_are_rejected() {
        let k1 = filled_triangle();
        let k2 = complex(3, &[&[0, 1], &[1, 2], &[0, 2]]);
        let q = Field::Rationals;
        let a = Cochain::indicator(&k1, q, &simplex(&[0, 1])).unwrap();
        let b = Cochain::indicator(&k2, q, &simplex(&[1, 2])).unwrap();
        assert!(a.add(&b).is_err());
        assert!(a.cup(&b, &k1).is_err());
        assert!(a.coboundary(&k2).is_err());
    }

    #[test]
    fn cup_i_rejects_odd_characteristic() {
        let k = filled_triangle();
        let a = Cochain::indicator(&k, Field::Rationals, &simplex(&[0, 1])).unwrap();
        assert!(a.cup_i(&a, 1, &k).is_err());
        let b = Cochain::indicator(&k, Field::Prime(3), &simplex(&[0, 1])).unwrap();
        assert!(b.cup_i(&b, 1, &k).is_err());
    }

    #[test]
    fn sq_zero_is_identity_at_cochain_level() {
        // z ∪_k z = z for a degree-k cochain in characteristic two.
        let k = complex(4, &[&[0, 1, 2], &[1, 2, 3], &[0, 2, 3]]);
        let f2 = Field::Prime(2);
        for d in 0..=2 {
            let mut z = Cochain::zero(&k, f2, d);
            for (e, v) in z.values_mut().iter_mut().enumerate() {
                *v = Elem::Mod(((e * 3 + d) % 2) as u64);
            }
            let zz = z.cup_i(&z, d, &k).unwrap();
            assert_eq!(zz.values(), z.values(), "degree {d}");
        }
    }
}
