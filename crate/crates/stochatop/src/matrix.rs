//! Dense exact linear algebra: reduced row echelon form, rank, kernel
//! bases, and an incremental echelon structure used to carry a quotient
//! basis (rows with distinct leading columns, leading coefficient one).

use std::collections::HashMap;

use crate::field::{Elem, Field};

/// Row-major dense matrix over a fixed field.
#[derive(Debug, Clone)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Elem>>) -> Matrix {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Elem) {
        self.data[r * self.cols + c] = value;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, field: &Field, x: &[Elem]) -> Vec<Elem> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = field.zero();
                for (c, xv) in x.iter().enumerate() {
                    if !field.is_zero(self.get(r, c)) && !field.is_zero(xv) {
                        acc = field.add(&acc, &field.mul(self.get(r, c), xv));
                    }
                }
                acc
            })
            .collect()
    }

    /// Reduces in place to reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self, field: &Field) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r >= self.rows {
                break;
            }
            let Some(pivot_row) = (r..self.rows).find(|&i| !field.is_zero(self.get(i, c))) else {
                continue;
            };
            self.swap_rows(r, pivot_row);
            let inv = field.inv(self.get(r, c)).expect("pivot is nonzero");
            for j in c..self.cols {
                let v = field.mul(self.get(r, j), &inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r || field.is_zero(self.get(i, c)) {
                    continue;
                }
                let factor = self.get(i, c).clone();
                for j in c..self.cols {
                    let v = field.sub(self.get(i, j), &field.mul(&factor, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, field: &Field) -> usize {
        let mut work = self.clone();
        work.rref(field).len()
    }

    /// Basis of the right kernel `{x : Ax = 0}`, one vector per free column.
    pub fn kernel_basis(&self, field: &Field) -> Vec<Vec<Elem>> {
        let mut work = self.clone();
        let pivots = work.rref(field);
        let pivot_of_col: HashMap<usize, usize> = pivots
            .iter()
            .enumerate()
            .map(|(row, &col)| (col, row))
            .collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col.contains_key(&free) {
                continue;
            }
            let mut x = vec![field.zero(); self.cols];
            x[free] = field.one();
            for (row, &col) in pivots.iter().enumerate() {
                x[col] = field.neg(work.get(row, free));
            }
            basis.push(x);
        }
        basis
    }
}

/// Incrementally built set of row vectors with pairwise distinct leading
/// columns and leading coefficient one. Rows are kept in insertion order and
/// are only reduced forward, so a prefix of inserted rows keeps spanning the
/// same subspace it did at insertion time.
#[derive(Debug, Clone)]
pub struct Echelon {
    field: Field,
    width: usize,
    rows: Vec<Vec<Elem>>,
    row_of_leading: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new(field: Field, width: usize) -> Echelon {
        Echelon {
            field,
            width,
            rows: Vec::new(),
            row_of_leading: HashMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vec<Elem>] {
        &self.rows
    }

    pub fn width(&self) -> usize {
        self.width
    }

    fn leading_column(&self, v: &[Elem]) -> Option<usize> {
        v.iter().position(|e| !self.field.is_zero(e))
    }

    /// Reduces `v` against the stored rows; inserts the nonzero remainder
    /// (normalized to leading coefficient one) and returns `true`, or returns
    /// `false` when `v` already lies in the span.
    pub fn insert(&mut self, v: Vec<Elem>) -> bool {
        assert_eq!(v.len(), self.width, "row width mismatch");
        let mut v = v;
        while let Some(lead) = self.leading_column(&v) {
            let Some(&row) = self.row_of_leading.get(&lead) else {
                let inv = self.field.inv(&v[lead]).expect("leading entry is nonzero");
                for e in v.iter_mut() {
                    *e = self.field.mul(e, &inv);
                }
                self.row_of_leading.insert(lead, self.rows.len());
                self.rows.push(v);
                return true;
            };
            let factor = v[lead].clone();
            for (e, r) in v.iter_mut().zip(&self.rows[row]) {
                *e = self.field.sub(e, &self.field.mul(&factor, r));
            }
        }
        false
    }

    /// Expresses `v` as a combination of the stored rows, returning one
    /// coefficient per row, or `None` when `v` is outside the span.
    pub fn coordinates(&self, v: &[Elem]) -> Option<Vec<Elem>> {
        assert_eq!(v.len(), self.width, "row width mismatch");
        let mut v = v.to_vec();
        let mut coeffs = vec![self.field.zero(); self.rows.len()];
        while let Some(lead) = self.leading_column(&v) {
            let &row = self.row_of_leading.get(&lead)?;
            let factor = v[lead].clone();
            for (e, r) in v.iter_mut().zip(&self.rows[row]) {
                *e = self.field.sub(e, &self.field.mul(&factor, r));
            }
            coeffs[row] = self.field.add(&coeffs[row], &factor);
        }
        Some(coeffs)
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        self.coordinates(v).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(field: &Field, vals: &[i64]) -> Vec<Elem> {
        vals.iter().map(|&v| field.from_integer(v)).collect()
    }

    #[test]
    fn rank_over_rationals() {
        let q = Field::Rationals;
        let m = Matrix::from_rows(vec![
            ints(&q, &[1, 2, 3]),
            ints(&q, &[4, 5, 6]),
            ints(&q, &[7, 8, 9]),
        ]);
        assert_eq!(m.rank(&q), 2);
    }

    #[test]
    fn rank_depends_on_characteristic() {
        // Determinant 5: invertible over the rationals, singular mod 5.
        let rows = |f: &Field| vec![ints(f, &[1, 2]), ints(f, &[3, 11])];
        let q = Field::Rationals;
        assert_eq!(Matrix::from_rows(rows(&q)).rank(&q), 2);
        let f5 = Field::prime(5).unwrap();
        assert_eq!(Matrix::from_rows(rows(&f5)).rank(&f5), 1);
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let q = Field::Rationals;
        let m = Matrix::from_rows(vec![
            ints(&q, &[1, 2, 3, 4]),
            ints(&q, &[2, 4, 6, 8]),
            ints(&q, &[1, 0, 1, 0]),
        ]);
        let basis = m.kernel_basis(&q);
        assert_eq!(basis.len(), 4 - m.rank(&q));
        for x in &basis {
            for entry in m.mul_vec(&q, x) {
                assert!(q.is_zero(&entry));
            }
        }
    }

    #[test]
    fn kernel_of_injective_map_is_trivial() {
        let f3 = Field::prime(3).unwrap();
        let m = Matrix::from_rows(vec![ints(&f3, &[1, 0]), ints(&f3, &[1, 1])]);
        assert!(m.kernel_basis(&f3).is_empty());
    }

    #[test]
    fn rref_pivots_are_unit_columns() {
        let q = Field::Rationals;
        let mut m = Matrix::from_rows(vec![
            ints(&q, &[2, 4, 1]),
            ints(&q, &[1, 2, 0]),
            ints(&q, &[0, 0, 3]),
        ]);
        let pivots = m.rref(&q);
        assert_eq!(pivots, vec![0, 2]);
        for (row, &col) in pivots.iter().enumerate() {
            for r in 0..m.n_rows() {
                let want = if r == row { q.one() } else { q.zero() };
                assert_eq!(*m.get(r, col), want);
            }
        }
    }

    #[test]
    fn echelon_insert_and_membership() {
        let q = Field::Rationals;
        let mut ech = Echelon::new(q, 3);
        assert!(ech.insert(ints(&q, &[1, 1, 0])));
        assert!(ech.insert(ints(&q, &[0, 2, 2])));
        assert!(
            !ech.insert(ints(&q, &[2, 4, 2])),
            "dependent vector rejected"
        );
        assert_eq!(ech.len(), 2);
        assert!(ech.contains(&ints(&q, &[3, 5, 2])));
        assert!(!ech.contains(&ints(&q, &[0, 0, 1])));
    }

    #[test]
    fn echelon_coordinates_reconstruct() {
        let f7 = Field::prime(7).unwrap();
        let rows = [
            ints(&f7, &[1, 2, 3, 4]),
            ints(&f7, &[0, 1, 5, 6]),
            ints(&f7, &[0, 0, 0, 2]),
        ];
        let mut ech = Echelon::new(f7, 4);
        for r in &rows {
            assert!(ech.insert(r.clone()));
        }
        // A genuine member of the span: 2*r0 + 3*r1 + 1*r2.
        let combo = ints(&f7, &[2, 3, 1]);
        let mut v = vec![f7.zero(); 4];
        for (c, row) in combo.iter().zip(&rows) {
            for (acc, e) in v.iter_mut().zip(row) {
                *acc = f7.add(acc, &f7.mul(c, e));
            }
        }
        assert!(ech.coordinates(&ints(&f7, &[0, 0, 1, 0])).is_none());
        let coeffs = ech.coordinates(&v).unwrap();
        let mut rebuilt = vec![f7.zero(); 4];
        for (c, row) in coeffs.iter().zip(ech.rows()) {
            for (acc, e) in rebuilt.iter_mut().zip(row) {
                *acc = f7.add(acc, &f7.mul(c, e));
            }
        }
        assert_eq!(rebuilt, v);
    }

    #[test]
    fn zero_vector_never_inserts() {
        let q = Field::Rationals;
        let mut ech = Echelon::new(q, 2);
        assert!(!ech.insert(ints(&q, &[0, 0])));
        assert!(ech.is_empty());
    }
}
