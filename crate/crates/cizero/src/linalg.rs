//! Dense exact linear algebra over a `Scalar` field.
//!
//! The central type is `Subspace`: a K-subspace of K^ncols held in reduced
//! row echelon form at all times. RREF is a canonical form, so subspace
//! equality is literal row comparison. Everything downstream (ideals,
//! syzygies, colon ideals, Koszul images) reduces to these routines.

use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub ncols: usize,
    pub field: Field,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(ncols: usize, field: Field) -> Subspace {
        Subspace { ncols, field, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_rows(ncols: usize, field: Field, rows: Vec<Vec<Scalar>>) -> Subspace {
        let mut s = Subspace::new(ncols, field);
        for r in rows {
            s.insert(r);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates not used as pivots; they index a complement basis.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Reduces `v` against the echelon rows; the residual is zero exactly
    /// when `v` lies in the subspace.
    pub fn reduce(&self, mut v: Vec<Scalar>) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ncols);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = v[p].clone();
                for (vi, ri) in v.iter_mut().zip(row) {
                    *vi = vi.sub(&c.mul(ri));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v.to_vec()).iter().all(|c| c.is_zero())
    }

    /// Inserts a vector, keeping RREF; returns true when the dimension grew.
    pub fn insert(&mut self, v: Vec<Scalar>) -> bool {
        let mut v = self.reduce(v);
        let lead = match v.iter().position(|c| !c.is_zero()) {
            None => return false,
            Some(p) => p,
        };
        let inv = v[lead].inv().unwrap();
        for c in v.iter_mut() {
            *c = c.mul(&inv);
        }
        // clear the new pivot column from the existing rows
        for row in self.rows.iter_mut() {
            if !row[lead].is_zero() {
                let c = row[lead].clone();
                for (ri, vi) in row.iter_mut().zip(&v) {
                    *ri = ri.sub(&c.mul(vi));
                }
            }
        }
        let at = self.pivots.iter().position(|&p| p > lead).unwrap_or(self.pivots.len());
        self.pivots.insert(at, lead);
        self.rows.insert(at, v);
        true
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r.clone());
        }
        s
    }
}

/// Kernel of the K-linear map with matrix `rows` (each row one equation
/// over `ncols` unknowns). Returns a basis of the solution space.
pub fn kernel_basis(rows: &[Vec<Scalar>], ncols: usize, field: Field) -> Vec<Vec<Scalar>> {
    let echelon = Subspace::from_rows(ncols, field, rows.to_vec());
    let mut basis = Vec::new();
    for free in echelon.free_columns() {
        let mut v = vec![field.zero(); ncols];
        v[free] = field.one();
        for (row, &p) in echelon.rows().iter().zip(echelon.pivots()) {
            v[p] = row[free].neg();
        }
        basis.push(v);
    }
    basis
}

/// One particular solution of `rows * v = rhs`, or `None` if inconsistent.
pub fn solve_linear(
    rows: &[Vec<Scalar>],
    rhs: &[Scalar],
    ncols: usize,
    field: Field,
) -> Option<Vec<Scalar>> {
    assert_eq!(rows.len(), rhs.len());
    let mut aug = Subspace::new(ncols + 1, field);
    for (r, b) in rows.iter().zip(rhs) {
        let mut row = r.clone();
        row.push(b.clone());
        aug.insert(row);
    }
    // inconsistent iff some echelon row pivots in the rhs column
    if aug.pivots().contains(&ncols) {
        return None;
    }
    let mut v = vec![field.zero(); ncols];
    for (row, &p) in aug.rows().iter().zip(aug.pivots()) {
        // free variables stay zero; pivot value is the rhs entry
        v[p] = row[ncols].clone();
    }
    Some(v)
}

/// Evaluates `rows * v`.
pub fn apply(rows: &[Vec<Scalar>], v: &[Scalar], field: Field) -> Vec<Scalar> {
    rows.iter()
        .map(|r| {
            let mut acc = field.zero();
            for (a, b) in r.iter().zip(v) {
                if !a.is_zero() && !b.is_zero() {
                    acc = acc.add(&a.mul(b));
                }
            }
            acc
        })
        .collect()
}
