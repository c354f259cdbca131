//! Square matrices over an Artinian local algebra and the tests built on
//! them: syzygies of a row vector, initial Fitting ideals, Wiebe and nice
//! matrices, certified complete-intersection tests for ideals and
//! annihilators, Koszul perturbations, first-row normalization, and
//! diagonalization at a unit pivot.
//!
//! Conventions. Matrices act on columns; a row vector times a matrix is
//! `row_times`. The row of variable images is `variable_row`. For a row b,
//! `fitting_delta0(b)` is the ideal of maximal minors of any generating set
//! of the syzygy module of b; it does not depend on the generating set.
//! A matrix p is a Wiebe matrix when x*p = 0, det(p) is nonzero, and the
//! socle is det(p)*A. A matrix p is nice when det(p) lies outside the
//! ideal generated by the entries of the row x*p; a nice matrix is said to
//! belong to that row ideal. Wiebe matrices are exactly the nice matrices
//! belonging to the zero ideal.

use crate::artin::{
    self, annihilator, colon, ideal_span, maximal_ideal, mult_matrix, same_algebra, socle,
    variables, ArtinAlgebra, Elem, Ideal,
};
use crate::error::Error;
use crate::groebner;
use crate::linalg::{self, Subspace};
use crate::scalar::{Field, Scalar};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::sync::Arc;

pub(crate) const MAX_MINOR_COMBINATIONS: u64 = 1_000_000;
const MAX_DET_SIZE: usize = 6;

// ---------------------------------------------------------------------------
// Matrices
// ---------------------------------------------------------------------------

/// A square matrix with entries in an Artinian local algebra, row-major.
#[derive(Clone)]
pub struct MatA {
    pub alg: Arc<ArtinAlgebra>,
    pub n: usize,
    pub entries: Vec<Elem>,
}

impl PartialEq for MatA {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.alg, &other.alg) && self.n == other.n && self.entries == other.entries
    }
}
impl Eq for MatA {}

impl fmt::Debug for MatA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> =
                (0..self.n).map(|j| self.entry(i, j).to_string()).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl MatA {
    pub fn new(alg: &Arc<ArtinAlgebra>, n: usize, entries: Vec<Elem>) -> Result<MatA, Error> {
        if entries.len() != n * n {
            return Err(Error::SizeMismatch(format!(
                "{} entries for a {}x{} matrix",
                entries.len(),
                n,
                n
            )));
        }
        for e in &entries {
            if !same_algebra(alg, &e.alg) {
                return Err(Error::ContextMismatch("matrix entry from a different algebra".into()));
            }
        }
        Ok(MatA { alg: alg.clone(), n, entries })
    }

    pub fn from_texts(alg: &Arc<ArtinAlgebra>, rows: &[Vec<&str>]) -> Result<MatA, Error> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::SizeMismatch("ragged matrix rows".into()));
            }
            for t in row {
                entries.push(artin::elem_from_text(alg, t)?);
            }
        }
        MatA::new(alg, n, entries)
    }

    pub fn identity(alg: &Arc<ArtinAlgebra>, n: usize) -> MatA {
        let mut entries = vec![artin::zero(alg); n * n];
        for i in 0..n {
            entries[i * n + i] = artin::one(alg);
        }
        MatA { alg: alg.clone(), n, entries }
    }

    pub fn from_columns(alg: &Arc<ArtinAlgebra>, cols: &[Vec<Elem>]) -> Result<MatA, Error> {
        let n = cols.len();
        let mut entries = vec![artin::zero(alg); n * n];
        for (j, col) in cols.iter().enumerate() {
            if col.len() != n {
                return Err(Error::SizeMismatch("column length differs from column count".into()));
            }
            for i in 0..n {
                entries[i * n + j] = col[i].clone();
            }
        }
        MatA::new(alg, n, entries)
    }

    pub fn entry(&self, i: usize, j: usize) -> &Elem {
        &self.entries[i * self.n + j]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, e: Elem) {
        self.entries[i * self.n + j] = e;
    }

    pub fn column(&self, j: usize) -> Vec<Elem> {
        (0..self.n).map(|i| self.entry(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Elem> {
        (0..self.n).map(|j| self.entry(i, j).clone()).collect()
    }

    pub fn mul(&self, rhs: &MatA) -> Result<MatA, Error> {
        if !same_algebra(&self.alg, &rhs.alg) || self.n != rhs.n {
            return Err(Error::ContextMismatch("matrix product shape or algebra mismatch".into()));
        }
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = artin::zero(&self.alg);
                for k in 0..n {
                    acc = acc.add(&self.entry(i, k).mul(rhs.entry(k, j)));
                }
                entries.push(acc);
            }
        }
        MatA::new(&self.alg, n, entries)
    }

    pub fn add(&self, rhs: &MatA) -> Result<MatA, Error> {
        if !same_algebra(&self.alg, &rhs.alg) || self.n != rhs.n {
            return Err(Error::ContextMismatch("matrix sum shape or algebra mismatch".into()));
        }
        let entries =
            self.entries.iter().zip(&rhs.entries).map(|(a, b)| a.add(b)).collect();
        MatA::new(&self.alg, self.n, entries)
    }

    pub fn scale(&self, c: &Elem) -> MatA {
        MatA {
            alg: self.alg.clone(),
            n: self.n,
            entries: self.entries.iter().map(|e| e.mul(c)).collect(),
        }
    }

    pub fn transpose(&self) -> MatA {
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(self.entry(j, i).clone());
            }
        }
        MatA { alg: self.alg.clone(), n, entries }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.n {
            self.entries.swap(a * self.n + j, b * self.n + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.n {
            self.entries.swap(i * self.n + a, i * self.n + b);
        }
    }

    pub fn scale_row(&mut self, i: usize, c: &Elem) {
        for j in 0..self.n {
            let e = self.entry(i, j).mul(c);
            self.set_entry(i, j, e);
        }
    }

    pub fn scale_col(&mut self, j: usize, c: &Elem) {
        for i in 0..self.n {
            let e = self.entry(i, j).mul(c);
            self.set_entry(i, j, e);
        }
    }

    /// row[target] += c * row[src]
    pub fn add_row_multiple(&mut self, target: usize, src: usize, c: &Elem) {
        for j in 0..self.n {
            let e = self.entry(target, j).add(&self.entry(src, j).mul(c));
            self.set_entry(target, j, e);
        }
    }

    /// col[target] += c * col[src]
    pub fn add_col_multiple(&mut self, target: usize, src: usize, c: &Elem) {
        for i in 0..self.n {
            let e = self.entry(i, target).add(&self.entry(i, src).mul(c));
            self.set_entry(i, target, e);
        }
    }

    pub fn is_invertible(&self) -> Result<bool, Error> {
        Ok(det(self)?.is_unit())
    }

    /// Inverse via the adjugate; requires a unit determinant.
    pub fn inverse(&self) -> Result<MatA, Error> {
        let (d, adj) = det_adj(self)?;
        let dinv = d.inv().ok_or_else(|| {
            Error::Precondition("matrix determinant is not a unit".into())
        })?;
        Ok(adj.scale(&dinv))
    }

    /// Submatrix with row i and column j removed.
    pub fn minor_matrix(&self, i: usize, j: usize) -> MatA {
        let n = self.n;
        let mut entries = Vec::with_capacity((n - 1) * (n - 1));
        for r in 0..n {
            if r == i {
                continue;
            }
            for c in 0..n {
                if c == j {
                    continue;
                }
                entries.push(self.entry(r, c).clone());
            }
        }
        MatA { alg: self.alg.clone(), n: n - 1, entries }
    }
}

pub fn variable_row(alg: &Arc<ArtinAlgebra>) -> Vec<Elem> {
    variables(alg)
}

/// (row * m)_j = sum_i row_i * m_ij
pub fn row_times(row: &[Elem], m: &MatA) -> Result<Vec<Elem>, Error> {
    if row.len() != m.n {
        return Err(Error::SizeMismatch("row length differs from matrix size".into()));
    }
    let mut out = Vec::with_capacity(m.n);
    for j in 0..m.n {
        let mut acc = artin::zero(&m.alg);
        for i in 0..m.n {
            acc = acc.add(&row[i].mul(m.entry(i, j)));
        }
        out.push(acc);
    }
    Ok(out)
}

/// m * col
pub fn apply_matrix(m: &MatA, col: &[Elem]) -> Result<Vec<Elem>, Error> {
    if col.len() != m.n {
        return Err(Error::SizeMismatch("column length differs from matrix size".into()));
    }
    let mut out = Vec::with_capacity(m.n);
    for i in 0..m.n {
        let mut acc = artin::zero(&m.alg);
        for j in 0..m.n {
            acc = acc.add(&m.entry(i, j).mul(&col[j]));
        }
        out.push(acc);
    }
    Ok(out)
}

pub(crate) fn det_of_columns(alg: &Arc<ArtinAlgebra>, cols: &[&Vec<Elem>]) -> Result<Elem, Error> {
    let k = cols.len();
    if k > MAX_DET_SIZE {
        return Err(Error::SizeMismatch(format!(
            "determinants limited to size {}",
            MAX_DET_SIZE
        )));
    }
    // Laplace expansion along the first remaining row, tracking live columns
    fn rec(alg: &Arc<ArtinAlgebra>, cols: &[&Vec<Elem>], row: usize, live: &mut Vec<usize>) -> Elem {
        if live.is_empty() {
            return artin::one(alg);
        }
        let mut acc = artin::zero(alg);
        let mut sign_flip = false;
        for pos in 0..live.len() {
            let c = live[pos];
            let e = &cols[c][row];
            if !e.is_zero() {
                let removed = live.remove(pos);
                let sub = rec(alg, cols, row + 1, live);
                live.insert(pos, removed);
                let term = e.mul(&sub);
                acc = if sign_flip { acc.sub(&term) } else { acc.add(&term) };
            }
            sign_flip = !sign_flip;
        }
        acc
    }
    let mut live: Vec<usize> = (0..k).collect();
    for col in cols {
        if col.len() != k {
            return Err(Error::SizeMismatch("minor columns must be square".into()));
        }
    }
    Ok(rec(alg, cols, 0, &mut live))
}

/// Determinant by cofactor expansion; matrix size is capped.
pub fn det(m: &MatA) -> Result<Elem, Error> {
    let cols: Vec<Vec<Elem>> = (0..m.n).map(|j| m.column(j)).collect();
    let refs: Vec<&Vec<Elem>> = cols.iter().collect();
    det_of_columns(&m.alg, &refs)
}

/// Determinant and adjugate, with m * adj = det * identity checked.
pub fn det_adj(m: &MatA) -> Result<(Elem, MatA), Error> {
    let d = det(m)?;
    let n = m.n;
    let mut entries = vec![artin::zero(&m.alg); n * n];
    for i in 0..n {
        for j in 0..n {
            let sub = m.minor_matrix(i, j);
            let mut c = det(&sub)?;
            if (i + j) % 2 == 1 {
                c = c.neg();
            }
            // adjugate is the transposed cofactor matrix
            entries[j * n + i] = c;
        }
    }
    let adj = MatA::new(&m.alg, n, entries)?;
    let prod = m.mul(&adj)?;
    let expect = MatA::identity(&m.alg, n).scale(&d);
    assert_eq!(prod, expect, "adjugate identity must hold");
    Ok((d, adj))
}

// ---------------------------------------------------------------------------
// Modules inside A^k: flattening, spans, syzygies
// ---------------------------------------------------------------------------

pub(crate) fn flatten(col: &[Elem]) -> Vec<Scalar> {
    let mut out = Vec::new();
    for e in col {
        out.extend(e.coords.iter().cloned());
    }
    out
}

pub(crate) fn unflatten(alg: &Arc<ArtinAlgebra>, k: usize, flat: &[Scalar]) -> Vec<Elem> {
    let d = alg.dim;
    assert_eq!(flat.len(), k * d);
    (0..k)
        .map(|b| artin::from_coords(alg, flat[b * d..(b + 1) * d].to_vec()))
        .collect()
}

fn mult_flat_by_var(alg: &Arc<ArtinAlgebra>, k: usize, flat: &[Scalar], v: usize) -> Vec<Scalar> {
    let col = unflatten(alg, k, flat);
    let prod: Vec<Elem> =
        col.iter().map(|e| e.mul(&artin::variable(alg, v))).collect();
    flatten(&prod)
}

/// K-span of the A-submodule of A^k generated by `gens`, closed under
/// multiplication by the variables.
pub fn submodule_span(alg: &Arc<ArtinAlgebra>, k: usize, gens: &[Vec<Elem>]) -> Subspace {
    let d = alg.dim;
    let mut space = Subspace::new(k * d, alg.field());
    let mut queue: Vec<Vec<Scalar>> = Vec::new();
    for g in gens {
        let f = flatten(g);
        if space.insert(f.clone()) {
            queue.push(f);
        }
    }
    while let Some(f) = queue.pop() {
        for v in 0..alg.nvars() {
            let prod = mult_flat_by_var(alg, k, &f, v);
            if space.insert(prod.clone()) {
                queue.push(prod);
            }
        }
    }
    space
}

pub(crate) fn module_times_maximal(alg: &Arc<ArtinAlgebra>, k: usize, space: &Subspace) -> Subspace {
    let mut out = Subspace::new(k * alg.dim, alg.field());
    for row in space.rows() {
        for v in 0..alg.nvars() {
            out.insert(mult_flat_by_var(alg, k, row, v));
        }
    }
    out
}

/// Generators of the syzygy module of a row: all columns c in A^k with
/// row * c = 0. Raw form is a full K-basis; minimized form is a minimal
/// A-module generating set picked by Nakayama.
pub fn syzygy_generators(
    alg: &Arc<ArtinAlgebra>,
    row: &[Elem],
    minimize: bool,
) -> Result<Vec<Vec<Elem>>, Error> {
    let k = row.len();
    let d = alg.dim;
    for e in row {
        if !same_algebra(alg, &e.alg) {
            return Err(Error::ContextMismatch("row entry from a different algebra".into()));
        }
    }
    // condition matrix: d equations in k*d unknowns
    let mut rows: Vec<Vec<Scalar>> = vec![Vec::with_capacity(k * d); d];
    for e in row {
        let m = mult_matrix(e);
        for r in 0..d {
            rows[r].extend(m[r].iter().cloned());
        }
    }
    let kernel = linalg::kernel_basis(&rows, k * d, alg.field());
    if !minimize {
        return Ok(kernel.iter().map(|f| unflatten(alg, k, f)).collect());
    }
    let full = Subspace::from_rows(k * d, alg.field(), kernel);
    let mut grown = module_times_maximal(alg, k, &full);
    let mut picked = Vec::new();
    for r in full.rows() {
        if grown.insert(r.clone()) {
            picked.push(unflatten(alg, k, r));
        }
    }
    Ok(picked)
}

pub(crate) struct Combinations {
    m: usize,
    k: usize,
    idx: Vec<usize>,
    started: bool,
}

impl Combinations {
    pub(crate) fn new(m: usize, k: usize) -> Combinations {
        Combinations { m, k, idx: (0..k).collect(), started: false }
    }

    pub(crate) fn count(m: usize, k: usize) -> u64 {
        if k > m {
            return 0;
        }
        let mut acc: u64 = 1;
        for i in 0..k {
            acc = acc.saturating_mul((m - i) as u64) / (i as u64 + 1);
        }
        acc
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        if self.k > self.m {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(self.idx.clone());
        }
        let mut i = self.k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if self.idx[i] != i + self.m - self.k {
                break;
            }
        }
        self.idx[i] += 1;
        for j in i + 1..self.k {
            self.idx[j] = self.idx[j - 1] + 1;
        }
        Some(self.idx.clone())
    }
}

/// The ideal of maximal minors of the syzygy module of `row`. This is the
/// initial Fitting ideal of the cyclic presentation carried by the row and
/// is independent of the choice of generating set, which `minimize` only
/// makes cheaper.
pub fn fitting_delta0(
    alg: &Arc<ArtinAlgebra>,
    row: &[Elem],
    minimize: bool,
) -> Result<Ideal, Error> {
    let k = row.len();
    let gens = syzygy_generators(alg, row, minimize)?;
    let total = Combinations::count(gens.len(), k);
    if total > MAX_MINOR_COMBINATIONS {
        return Err(Error::Inconclusive(format!(
            "{} minor combinations exceed the search cap",
            total
        )));
    }
    let mut minors = Vec::new();
    for combo in Combinations::new(gens.len(), k) {
        let cols: Vec<&Vec<Elem>> = combo.iter().map(|&i| &gens[i]).collect();
        let m = det_of_columns(alg, &cols)?;
        if !m.is_zero() {
            minors.push(m);
        }
    }
    ideal_span(alg, &minors)
}

// ---------------------------------------------------------------------------
// Wiebe and nice matrices
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct WiebeReport {
    pub columns_are_syzygies: bool,
    pub det_nonzero: bool,
    pub socle_is_det_ideal: bool,
    pub det: Elem,
}

impl WiebeReport {
    pub fn holds(&self) -> bool {
        self.columns_are_syzygies && self.det_nonzero && self.socle_is_det_ideal
    }
}

/// Checks the three defining conditions: x*m = 0, det nonzero, socle = det*A.
pub fn wiebe_report(m: &MatA) -> Result<WiebeReport, Error> {
    if m.n != m.alg.nvars() {
        return Err(Error::SizeMismatch(
            "matrix size must match the number of variables".into(),
        ));
    }
    wiebe_report_for_row(&variable_row(&m.alg), m)
}

/// The same three conditions against an arbitrary generating row of the
/// maximal ideal: row*m = 0, det nonzero, socle = det*A. The row may be
/// longer than the variable count, as long as the matrix is square of the
/// same size.
pub fn wiebe_report_for_row(row: &[Elem], m: &MatA) -> Result<WiebeReport, Error> {
    let prod = row_times(row, m)?;
    let columns_are_syzygies = prod.iter().all(|e| e.is_zero());
    let d = det(m)?;
    let det_nonzero = !d.is_zero();
    let socle_is_det_ideal =
        socle(&m.alg)? == ideal_span(&m.alg, std::slice::from_ref(&d))?;
    Ok(WiebeReport { columns_are_syzygies, det_nonzero, socle_is_det_ideal, det: d })
}

pub fn is_wiebe(m: &MatA) -> Result<bool, Error> {
    Ok(wiebe_report(m)?.holds())
}

/// A Wiebe matrix for the algebra itself: minimized syzygies of the
/// variable row, first column set with a nonzero maximal minor. `None`
/// when every minor vanishes.
pub fn wiebe_matrix(alg: &Arc<ArtinAlgebra>) -> Result<Option<MatA>, Error> {
    let n = alg.nvars();
    let x = variable_row(alg);
    let gens = syzygy_generators(alg, &x, true)?;
    let total = Combinations::count(gens.len(), n);
    if total > MAX_MINOR_COMBINATIONS {
        return Err(Error::Inconclusive(format!(
            "{} minor combinations exceed the search cap",
            total
        )));
    }
    for combo in Combinations::new(gens.len(), n) {
        let cols: Vec<&Vec<Elem>> = combo.iter().map(|&i| &gens[i]).collect();
        let d = det_of_columns(alg, &cols)?;
        if !d.is_zero() {
            let owned: Vec<Vec<Elem>> = combo.iter().map(|&i| gens[i].clone()).collect();
            let m = MatA::from_columns(alg, &owned)?;
            let report = wiebe_report(&m)?;
            assert!(report.holds(), "nonzero syzygy minor must give a Wiebe matrix");
            return Ok(Some(m));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone)]
pub struct NiceReport {
    /// The ideal generated by the entries of the row x*m.
    pub row_ideal: Ideal,
    pub det: Elem,
    /// det outside the row ideal.
    pub is_nice: bool,
    /// When nice: (x*m)A : M == (x*m)A + det*A, the principal-socle witness.
    pub socle_identity: Option<bool>,
    /// When nice: (x*m)A : det == M.
    pub colon_identity: Option<bool>,
}

/// Nice test: det(m) outside the ideal generated by the row x*m. A nice
/// matrix certifies that its row ideal is a complete intersection ideal;
/// the two colon identities are consequences and are checked whenever the
/// matrix is nice.
pub fn nice_report(m: &MatA) -> Result<NiceReport, Error> {
    if m.n != m.alg.nvars() {
        return Err(Error::SizeMismatch(
            "matrix size must match the number of variables".into(),
        ));
    }
    let alg = &m.alg;
    let x = variable_row(alg);
    let row = row_times(&x, m)?;
    let row_ideal = ideal_span(alg, &row)?;
    let d = det(m)?;
    let is_nice = !row_ideal.contains(&d);
    let (socle_identity, colon_identity) = if is_nice {
        let lhs = colon(&row_ideal, &variables(alg))?;
        let rhs = row_ideal.sum(&ideal_span(alg, std::slice::from_ref(&d))?)?;
        let socle_ok = lhs == rhs;
        let colon_ok =
            colon(&row_ideal, std::slice::from_ref(&d))? == maximal_ideal(alg);
        assert!(socle_ok && colon_ok, "nice matrix must satisfy both colon identities");
        (Some(socle_ok), Some(colon_ok))
    } else {
        (None, None)
    };
    Ok(NiceReport { row_ideal, det: d, is_nice, socle_identity, colon_identity })
}

pub fn is_nice(m: &MatA) -> Result<bool, Error> {
    Ok(nice_report(m)?.is_nice)
}

// ---------------------------------------------------------------------------
// Complete-intersection tests with certificates
// ---------------------------------------------------------------------------

#[derive(Debug)]
pub struct Ci0Certificate {
    /// Wiebe matrix of A/I, over the quotient algebra.
    pub quotient_wiebe: MatA,
    /// Entrywise canonical lift of the quotient Wiebe matrix to A.
    pub lift: MatA,
    /// det(lift), an element of A.
    pub det: Elem,
    /// I : det == M in A.
    pub colon_det_identity: bool,
    /// I : M == I + det*A in A.
    pub socle_identity: bool,
}

#[derive(Debug)]
pub enum Ci0Outcome {
    Ci0(Box<Ci0Certificate>),
    NotCi0 {
        /// Minimal generator count of the full preimage ideal, computed on
        /// the polynomial side; exceeds the variable count exactly in this
        /// branch.
        preimage_mingens: usize,
        minors_checked: u64,
    },
}

impl Ci0Outcome {
    pub fn is_ci0(&self) -> bool {
        matches!(self, Ci0Outcome::Ci0(_))
    }
}

/// Decides whether the proper ideal I is a complete intersection ideal:
/// whether its full polynomial preimage is generated by a regular sequence
/// of length n. Positive answers carry a verified certificate; negative
/// answers report an exhaustive minor search plus an independent generator
/// count on the polynomial side.
pub fn ci0_test(alg: &Arc<ArtinAlgebra>, i: &Ideal) -> Result<Ci0Outcome, Error> {
    if !same_algebra(alg, &i.alg) {
        return Err(Error::ContextMismatch("ideal of a different algebra".into()));
    }
    if i.dim() == alg.dim {
        return Err(Error::Precondition("the unit ideal is not a candidate".into()));
    }
    let n = alg.nvars();
    let (q, map) = artin::quotient_algebra(alg, i)?;
    let xq = variable_row(&q);
    let gens = syzygy_generators(&q, &xq, true)?;
    let total = Combinations::count(gens.len(), n);
    if total > MAX_MINOR_COMBINATIONS {
        return Err(Error::Inconclusive(format!(
            "{} minor combinations exceed the search cap",
            total
        )));
    }
    let mut checked: u64 = 0;
    for combo in Combinations::new(gens.len(), n) {
        checked += 1;
        let cols: Vec<&Vec<Elem>> = combo.iter().map(|&i| &gens[i]).collect();
        let dq = det_of_columns(&q, &cols)?;
        if dq.is_zero() {
            continue;
        }
        let owned: Vec<Vec<Elem>> = combo.iter().map(|&i| gens[i].clone()).collect();
        let quotient_wiebe = MatA::from_columns(&q, &owned)?;
        assert!(wiebe_report(&quotient_wiebe)?.holds());
        let lifted: Vec<Vec<Elem>> = owned
            .iter()
            .map(|col| col.iter().map(|e| map.lift(e)).collect())
            .collect();
        let lift = MatA::from_columns(alg, &lifted)?;
        let d = det(&lift)?;
        // the lifted matrix is nice and belongs to I exactly
        let row = row_times(&variable_row(alg), &lift)?;
        let row_ideal = ideal_span(alg, &row)?;
        assert_eq!(row_ideal, *i, "lifted certificate row must generate the ideal");
        assert!(!row_ideal.contains(&d), "certificate determinant must stay outside");
        let colon_det_identity =
            colon(i, std::slice::from_ref(&d))? == maximal_ideal(alg);
        let socle_identity = colon(i, &variables(alg))?
            == i.sum(&ideal_span(alg, std::slice::from_ref(&d))?)?;
        return Ok(Ci0Outcome::Ci0(Box::new(Ci0Certificate {
            quotient_wiebe,
            lift,
            det: d,
            colon_det_identity,
            socle_identity,
        })));
    }
    // exhaustive: every maximal minor of a generating set vanishes
    let preimage_mingens =
        groebner::lifted_minimal_generator_count(&q.gb, q.exponent as u32)?;
    Ok(Ci0Outcome::NotCi0 { preimage_mingens, minors_checked: checked })
}

#[derive(Debug)]
pub struct AnnCi0Certificate {
    /// Columns are syzygies of the row (b*x_1, ..., b*x_n); the image of
    /// this matrix in A/ann(b) is a Wiebe matrix there.
    pub matrix: MatA,
    pub det: Elem,
    /// ann(b) : det == M.
    pub colon_det_identity: bool,
    /// ann(b) : M == ann(b) + det*A.
    pub socle_identity: bool,
}

#[derive(Debug)]
pub enum AnnCi0Outcome {
    Ci0(Box<AnnCi0Certificate>),
    NotCi0 { minors_checked: u64 },
}

impl AnnCi0Outcome {
    pub fn is_ci0(&self) -> bool {
        matches!(self, AnnCi0Outcome::Ci0(_))
    }
}

/// Decides whether ann(b) = 0 : b is a complete intersection ideal, working
/// directly in A: search the maximal minors d of the syzygies of the row
/// b*x for one with b*d nonzero. Syzygies of b*x surject onto syzygies of
/// the variable row over A/ann(b), so the exhausted search is conclusive.
pub fn ann_ci0_test(alg: &Arc<ArtinAlgebra>, b: &Elem) -> Result<AnnCi0Outcome, Error> {
    if !same_algebra(alg, &b.alg) {
        return Err(Error::ContextMismatch("element of a different algebra".into()));
    }
    if b.is_zero() {
        return Err(Error::Precondition(
            "the annihilator of zero is the unit ideal".into(),
        ));
    }
    let n = alg.nvars();
    let row: Vec<Elem> = variables(alg).iter().map(|x| x.mul(b)).collect();
    let gens = syzygy_generators(alg, &row, true)?;
    let total = Combinations::count(gens.len(), n);
    if total > MAX_MINOR_COMBINATIONS {
        return Err(Error::Inconclusive(format!(
            "{} minor combinations exceed the search cap",
            total
        )));
    }
    let mut checked: u64 = 0;
    for combo in Combinations::new(gens.len(), n) {
        checked += 1;
        let cols: Vec<&Vec<Elem>> = combo.iter().map(|&i| &gens[i]).collect();
        let d = det_of_columns(alg, &cols)?;
        if b.mul(&d).is_zero() {
            continue;
        }
        let owned: Vec<Vec<Elem>> = combo.iter().map(|&i| gens[i].clone()).collect();
        let matrix = MatA::from_columns(alg, &owned)?;
        let ann = annihilator(alg, b)?;
        // the found matrix is nice and belongs to ann(b) exactly
        let row = row_times(&variable_row(alg), &matrix)?;
        let row_ideal = ideal_span(alg, &row)?;
        assert_eq!(row_ideal, ann, "syzygy matrix row must generate the annihilator");
        assert!(!row_ideal.contains(&d), "determinant must stay outside the annihilator");
        let colon_det_identity =
            colon(&ann, std::slice::from_ref(&d))? == maximal_ideal(alg);
        let socle_identity = colon(&ann, &variables(alg))?
            == ann.sum(&ideal_span(alg, std::slice::from_ref(&d))?)?;
        return Ok(AnnCi0Outcome::Ci0(Box::new(AnnCi0Certificate {
            matrix,
            det: d,
            colon_det_identity,
            socle_identity,
        })));
    }
    Ok(AnnCi0Outcome::NotCi0 { minors_checked: checked })
}

// ---------------------------------------------------------------------------
// Koszul columns
// ---------------------------------------------------------------------------

/// Columns x_j e_i - x_i e_j for i < j; each one is a syzygy of the
/// variable row.
pub fn koszul_columns(alg: &Arc<ArtinAlgebra>) -> Vec<Vec<Elem>> {
    let n = alg.nvars();
    let xs = variables(alg);
    let mut cols = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut col = vec![artin::zero(alg); n];
            col[i] = xs[j].clone();
            col[j] = xs[i].neg();
            cols.push(col);
        }
    }
    cols
}

/// K-span of the submodule of A^n generated by the Koszul columns.
pub fn koszul_image(alg: &Arc<ArtinAlgebra>) -> Subspace {
    submodule_span(alg, alg.nvars(), &koszul_columns(alg))
}

pub fn in_koszul_image(alg: &Arc<ArtinAlgebra>, col: &[Elem]) -> bool {
    koszul_image(alg).contains(&flatten(col))
}

/// Adds seeded random Koszul-column multiples to the columns of m. The row
/// x * result equals x * m because Koszul columns are syzygies of x.
pub fn perturb_by_koszul(m: &MatA, seed: u64, moves: usize) -> MatA {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let kcols = koszul_columns(&m.alg);
    let mut out = m.clone();
    if kcols.is_empty() {
        return out;
    }
    for _ in 0..moves {
        let j = rng.gen_range(0..m.n);
        let k = rng.gen_range(0..kcols.len());
        let a = random_element(&m.alg, &mut rng, false);
        for i in 0..m.n {
            let e = out.entry(i, j).add(&kcols[k][i].mul(&a));
            out.set_entry(i, j, e);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Random sampling
// ---------------------------------------------------------------------------

/// Random element with small integral coordinates over the rationals and
/// uniform coordinates over a prime field. With `in_maximal`, the unit
/// coordinate is zeroed.
pub fn random_element(alg: &Arc<ArtinAlgebra>, rng: &mut impl RngCore, in_maximal: bool) -> Elem {
    let d = alg.dim;
    let coords: Vec<Scalar> = (0..d)
        .map(|k| {
            if in_maximal && k == 0 {
                return alg.field().zero();
            }
            match alg.field() {
                Field::Rational => alg.field().from_i64(rng.gen_range(-3i64..=3)),
                Field::Prime(p) => alg.field().from_i64(rng.gen_range(0..p as i64)),
            }
        })
        .collect();
    artin::from_coords(alg, coords)
}

pub fn random_matrix(
    alg: &Arc<ArtinAlgebra>,
    n: usize,
    rng: &mut impl RngCore,
    entries_in_maximal: bool,
) -> MatA {
    let entries: Vec<Elem> =
        (0..n * n).map(|_| random_element(alg, rng, entries_in_maximal)).collect();
    MatA { alg: alg.clone(), n, entries }
}

// ---------------------------------------------------------------------------
// Equivalence up to Koszul translates and column operations
// ---------------------------------------------------------------------------

/// Looks for an invertible theta with a = b*theta modulo the Koszul
/// submodule, column by column. Ok(None): no theta at all, invertible or
/// not. Err(Inconclusive): solutions exist but no invertible one was found
/// within the seeded retries.
pub fn translate_equivalent(a: &MatA, b: &MatA, seed: u64) -> Result<Option<MatA>, Error> {
    if !same_algebra(&a.alg, &b.alg) || a.n != b.n {
        return Err(Error::ContextMismatch("matrices of different shape or algebra".into()));
    }
    let alg = &a.alg;
    let n = a.n;
    let d = alg.dim;
    let kos = koszul_image(alg);
    let kdim = kos.dim();
    // unknowns: theta column (n*d scalars) then Koszul coefficients (kdim)
    let ncols = n * d + kdim;
    // rows of the linear map: flat target = B*(theta col) + K*lambda
    let mut rows: Vec<Vec<Scalar>> = vec![Vec::with_capacity(ncols); n * d];
    for k in 0..n {
        // block k: theta_{k j} multiplies column k of b
        let bcol = b.column(k);
        for mu in 0..d {
            // basis element mu in slot k maps to (b_{0k}*e_mu, ..., b_{n-1,k}*e_mu)
            let mut unit = vec![alg.field().zero(); d];
            unit[mu] = alg.field().one();
            let im: Vec<Elem> = bcol
                .iter()
                .map(|e| e.mul(&artin::from_coords(alg, unit.clone())))
                .collect();
            let f = flatten(&im);
            for (r, val) in f.into_iter().enumerate() {
                rows[r].push(val);
            }
        }
    }
    for kv in kos.rows() {
        for r in 0..n * d {
            rows[r].push(kv[r].clone());
        }
    }
    let mut particular: Vec<Vec<Scalar>> = Vec::with_capacity(n);
    for j in 0..n {
        let target = flatten(&a.column(j));
        match linalg::solve_linear(&rows, &target, ncols, alg.field()) {
            Some(sol) => particular.push(sol[..n * d].to_vec()),
            None => return Ok(None),
        }
    }
    let kernel = linalg::kernel_basis(&rows, ncols, alg.field());
    let kernel_theta: Vec<Vec<Scalar>> =
        kernel.iter().map(|v| v[..n * d].to_vec()).collect();
    let build = |cols: &[Vec<Scalar>]| -> MatA {
        let col_elems: Vec<Vec<Elem>> = cols.iter().map(|f| unflatten(alg, n, f)).collect();
        MatA::from_columns(alg, &col_elems).expect("square by construction")
    };
    let theta0 = build(&particular);
    if theta0.is_invertible()? {
        return Ok(Some(theta0));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        let cols: Vec<Vec<Scalar>> = particular
            .iter()
            .map(|p| {
                let mut c = p.clone();
                for kv in &kernel_theta {
                    let coeff = match alg.field() {
                        Field::Rational => alg.field().from_i64(rng.gen_range(-2i64..=2)),
                        Field::Prime(q) => alg.field().from_i64(rng.gen_range(0..q as i64)),
                    };
                    if !coeff.is_zero() {
                        for (t, kvi) in c.iter_mut().zip(kv.iter()) {
                            *t = t.add(&coeff.mul(kvi));
                        }
                    }
                }
                c
            })
            .collect();
        let theta = build(&cols);
        if theta.is_invertible()? {
            return Ok(Some(theta));
        }
    }
    Err(Error::Inconclusive(
        "translate solutions exist but no invertible one was found".into(),
    ))
}

/// Looks for any theta with b*theta = a exactly, no Koszul translate and no
/// invertibility demand. Column by column this is a linear solve.
pub fn matrix_factor_membership(a: &MatA, b: &MatA) -> Result<Option<MatA>, Error> {
    if !same_algebra(&a.alg, &b.alg) || a.n != b.n {
        return Err(Error::ContextMismatch("matrices of different shape or algebra".into()));
    }
    let alg = &a.alg;
    let n = a.n;
    let d = alg.dim;
    let mut rows: Vec<Vec<Scalar>> = vec![Vec::with_capacity(n * d); n * d];
    for k in 0..n {
        let bcol = b.column(k);
        for mu in 0..d {
            let mut unit = vec![alg.field().zero(); d];
            unit[mu] = alg.field().one();
            let im: Vec<Elem> = bcol
                .iter()
                .map(|e| e.mul(&artin::from_coords(alg, unit.clone())))
                .collect();
            let f = flatten(&im);
            for (r, val) in f.into_iter().enumerate() {
                rows[r].push(val);
            }
        }
    }
    let mut cols: Vec<Vec<Elem>> = Vec::with_capacity(n);
    for j in 0..n {
        let target = flatten(&a.column(j));
        match linalg::solve_linear(&rows, &target, n * d, alg.field()) {
            Some(sol) => cols.push(unflatten(alg, n, &sol)),
            None => return Ok(None),
        }
    }
    Ok(Some(MatA::from_columns(alg, &cols)?))
}

// ---------------------------------------------------------------------------
// First-row normalization
// ---------------------------------------------------------------------------

#[derive(Debug)]
pub struct NormalizeReport {
    /// The rewritten matrix: first row (x_1^r1, 0, ..., 0).
    pub matrix: MatA,
    pub r1: usize,
    /// max { i : x_1^i outside (x_2..x_n)A + (x*m)A }, for cross-checking.
    pub formula_r1: Option<usize>,
    /// (x*m)A : det(minor at 1,1 of the output) == (x_2..x_n)A + (x*m)A.
    pub colon_identity: bool,
    pub det: Elem,
}

/// Rewrites m by Koszul-column translates and invertible column operations
/// so the first row becomes (x_1^r1, 0, ..., 0). The row x*m is unchanged
/// by the Koszul translates and transformed by an invertible matrix by the
/// column operations, so the ideal (x*m)A and the initial Fitting ideal of
/// the row are preserved.
pub fn normalize_first_row(m: &MatA) -> Result<NormalizeReport, Error> {
    let alg = &m.alg;
    let n = alg.nvars();
    if m.n != n {
        return Err(Error::SizeMismatch(
            "matrix size must match the number of variables".into(),
        ));
    }
    if !is_nice(m)? {
        return Err(Error::Precondition(
            "first-row normalization applies to nice matrices only".into(),
        ));
    }
    let xs = variables(alg);
    let mut out = m.clone();

    // step 1: clear every first-row monomial divisible by a later variable,
    // shifting column j by multiples of Koszul columns x_i e_0 - x_0 e_i
    for j in 0..n {
        loop {
            let entry = out.entry(0, j).clone();
            let p = entry.to_poly();
            let mut mixed: Option<(usize, crate::poly::Monomial, Scalar)> = None;
            for (mon, c) in &p.terms {
                if let Some(i) = (1..n).find(|&i| mon.0[i] > 0) {
                    mixed = Some((i, mon.clone(), c.clone()));
                    break;
                }
            }
            let Some((i, mon, c)) = mixed else { break };
            // term c*mon = c*(mon/x_i)*x_i; subtract a*(x_i e_0 - x_0 e_i)
            // from column j with a = c*(mon/x_i)
            let mut reduced = mon.0.clone();
            reduced[i] -= 1;
            let a = artin::elem_from_poly(
                alg,
                &crate::poly::Polynomial::monomial_term(
                    &alg.ring,
                    crate::poly::Monomial(reduced),
                    c,
                ),
            )?;
            let delta0 = xs[i].mul(&a);
            let deltai = xs[0].mul(&a).neg();
            let e0 = out.entry(0, j).sub(&delta0);
            out.set_entry(0, j, e0);
            let ei = out.entry(i, j).sub(&deltai);
            out.set_entry(i, j, ei);
        }
    }

    // step 2: each first-row entry is now u*x_1^s with u a unit, or zero
    let split = |e: &Elem| -> Option<(usize, Elem)> {
        if e.is_zero() {
            return None;
        }
        let p = e.to_poly();
        let s = p
            .terms
            .iter()
            .map(|(mon, _)| mon.0[0] as usize)
            .min()
            .expect("nonzero entry");
        // e = x_1^s * u with u read off by shifting exponents down
        let terms: Vec<(crate::poly::Monomial, Scalar)> = p
            .terms
            .iter()
            .map(|(mon, c)| {
                let mut v = mon.0.clone();
                assert!(v[0] as usize >= s, "pure powers of the first variable");
                assert!(v.iter().skip(1).all(|&e| e == 0), "mixed part eliminated");
                v[0] -= s as u32;
                (crate::poly::Monomial(v), c.clone())
            })
            .collect();
        let u = artin::elem_from_poly(
            alg,
            &crate::poly::Polynomial::from_terms(&alg.ring, terms),
        )
        .expect("same ring");
        assert!(u.is_unit());
        Some((s, u))
    };

    let mut best: Option<(usize, usize)> = None;
    for j in 0..n {
        if let Some((s, _)) = split(out.entry(0, j)) {
            if best.map(|(bs, _)| s < bs).unwrap_or(true) {
                best = Some((s, j));
            }
        }
    }
    let Some((r1, jstar)) = best else {
        return Err(Error::NotApplicable(
            "the whole first row lies in the span of the later variables".into(),
        ));
    };
    if jstar != 0 {
        out.swap_cols(0, jstar);
    }
    let (_, u) = split(out.entry(0, 0)).expect("pivot column is nonzero");
    let uinv = u.inv().expect("unit factor");
    out.scale_col(0, &uinv);
    for j in 1..n {
        if let Some((s, uj)) = split(out.entry(0, j)) {
            assert!(s >= r1, "pivot had the least power");
            let shift = xs[0].pow((s - r1) as u32).mul(&uj).neg();
            out.add_col_multiple(j, 0, &shift);
        }
    }
    for j in 1..n {
        assert!(out.entry(0, j).is_zero(), "first row cleared");
    }
    let expect = xs[0].pow(r1 as u32);
    assert_eq!(out.entry(0, 0), &expect, "pivot is the bare power");

    // the row ideal is preserved: cross-check the exponent formula
    let row = row_times(&variable_row(alg), &out)?;
    let row_ideal = ideal_span(alg, &row)?;
    let h = ideal_span(alg, &xs[1..])?;
    let hplus = h.sum(&row_ideal)?;
    let mut formula_r1 = None;
    for i in (0..alg.exponent + 1).rev() {
        let p = xs[0].pow(i as u32);
        if !hplus.contains(&p) {
            formula_r1 = Some(i);
            break;
        }
    }
    let sub = out.minor_matrix(0, 0);
    let dsub = det(&sub)?;
    let colon_identity = colon(&row_ideal, std::slice::from_ref(&dsub))? == hplus;
    let d = det(&out)?;
    Ok(NormalizeReport { matrix: out, r1, formula_r1, colon_identity, det: d })
}

// ---------------------------------------------------------------------------
// Diagonalization at a unit pivot
// ---------------------------------------------------------------------------

#[derive(Debug)]
pub struct DiagReport {
    pub theta1: MatA,
    pub theta2: MatA,
    /// theta1 * m * theta2 = diag(d, 1, ..., 1), d in M outside M^2.
    pub d: Elem,
}

/// For det(m) in M outside M^2, row and column operations at unit pivots
/// bring m to diag(d, 1, ..., 1). The transforms are returned and the
/// reassembly theta1*m*theta2 is checked.
pub fn diagonalize_unit_pivot(m: &MatA) -> Result<DiagReport, Error> {
    let alg = &m.alg;
    let n = m.n;
    let dm = det(m)?;
    let mm = maximal_ideal(alg);
    let m2 = artin::maximal_ideal_power(alg, 2);
    if !mm.contains(&dm) || m2.contains(&dm) {
        return Err(Error::Precondition(
            "determinant must lie in M outside M^2".into(),
        ));
    }
    let mut g = m.clone();
    let mut theta1 = MatA::identity(alg, n);
    let mut theta2 = MatA::identity(alg, n);
    // shrink the live block [0..k] x [0..k] from k = n-1 down to 1,
    // installing a unit pivot at (k, k) and clearing its row and column
    for k in (1..n).rev() {
        let mut pivot = None;
        'search: for i in 0..=k {
            for j in 0..=k {
                if g.entry(i, j).is_unit() {
                    pivot = Some((i, j));
                    break 'search;
                }
            }
        }
        let Some((pi, pj)) = pivot else {
            // all live entries in M would force det into M^2
            return Err(Error::Precondition(
                "no unit pivot available; determinant lies deeper than M outside M^2".into(),
            ));
        };
        if pi != k {
            g.swap_rows(pi, k);
            theta1.swap_rows(pi, k);
        }
        if pj != k {
            g.swap_cols(pj, k);
            theta2.swap_cols(pj, k);
        }
        let inv = g.entry(k, k).inv().expect("unit pivot");
        g.scale_row(k, &inv);
        theta1.scale_row(k, &inv);
        for i in 0..k {
            let c = g.entry(i, k).neg();
            if !c.is_zero() {
                g.add_row_multiple(i, k, &c);
                theta1.add_row_multiple(i, k, &c);
            }
        }
        for j in 0..k {
            let c = g.entry(k, j).neg();
            if !c.is_zero() {
                g.add_col_multiple(j, k, &c);
                theta2.add_col_multiple(j, k, &c);
            }
        }
    }
    let d = g.entry(0, 0).clone();
    // reassembly check and shape check
    let mut expect = MatA::identity(alg, n);
    expect.set_entry(0, 0, d.clone());
    let reassembled = theta1.mul(m)?.mul(&theta2)?;
    assert_eq!(reassembled, expect, "transforms must reproduce the diagonal form");
    assert!(theta1.is_invertible()? && theta2.is_invertible()?);
    assert!(mm.contains(&d) && !m2.contains(&d), "pivot value stays in M outside M^2");
    Ok(DiagReport { theta1, theta2, d })
}
