//! Artinian local algebras A = K[x_1..x_n]/Q presented exactly.
//!
//! An algebra is built from polynomial relations: we take a reduced
//! Groebner basis, check the quotient is finite-dimensional and local
//! (every variable nilpotent), and store multiplication tables over the
//! standard-monomial basis. Elements are coordinate vectors; ideals are
//! K-subspaces in reduced echelon form that are closed under
//! multiplication by the variables, so ideal equality is literal row
//! comparison. All the lattice operations (sums, products, colon ideals,
//! annihilators, socle, powers of the maximal ideal) are exact linear
//! algebra over the coefficient field.

use crate::error::Error;
use crate::groebner::{self, GroebnerBasis};
use crate::linalg::{self, Subspace};
use crate::poly::{parse_polynomial, Monomial, PolyRing, Polynomial};
use crate::scalar::{Field, Scalar};
use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

pub struct ArtinAlgebra {
    pub ring: Arc<PolyRing>,
    pub gb: GroebnerBasis,
    /// Standard monomials ascending under the ring order; `basis[0] = 1`.
    pub basis: Vec<Monomial>,
    pub dim: usize,
    /// `true` when every defining relation is homogeneous.
    pub graded: bool,
    /// Least r with M^r = 0.
    pub exponent: usize,
    /// dim_K M/M^2.
    pub embdim: usize,
    mult: Vec<Vec<Scalar>>, // dim*dim rows, row (i*dim+j) = coords of basis[i]*basis[j]
    index: HashMap<Vec<u32>, usize>,
    /// M^0=A, M^1, ..., M^exponent = 0, as raw subspaces.
    m_powers: Vec<Subspace>,
    signature: u64,
}

impl fmt::Debug for ArtinAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ArtinAlgebra({}, dim {})", self.ring, self.dim)
    }
}

impl ArtinAlgebra {
    pub fn field(&self) -> Field {
        self.ring.field
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn signature(&self) -> u64 {
        self.signature
    }

    fn coords_of_nf(&self, nf: &Polynomial) -> Vec<Scalar> {
        let mut v = vec![self.field().zero(); self.dim];
        for (m, c) in &nf.terms {
            match self.index.get(&m.0) {
                Some(&k) => v[k] = c.clone(),
                None => panic!("normal form left the standard basis"),
            }
        }
        v
    }
}

/// Builds the algebra from relation polynomials over `ring`.
pub fn build_algebra(
    ring: &Arc<PolyRing>,
    relations: &[Polynomial],
) -> Result<Arc<ArtinAlgebra>, Error> {
    let gb = groebner::buchberger(relations)?;
    let basis = groebner::standard_monomials(&gb)?;
    let dim = basis.len();
    let nvars = ring.nvars();
    assert!(basis[0].is_one(), "global order puts 1 first");

    // locality: in a finite-dimensional quotient, x is nilpotent iff x^dim = 0
    for i in 0..nvars {
        let m = Monomial({
            let mut e = vec![0u32; nvars];
            e[i] = dim as u32;
            e
        });
        let p = Polynomial::monomial_term(ring, m, ring.field.one());
        if !groebner::normal_form(&p, &gb)?.is_zero() {
            return Err(Error::NotLocal(format!(
                "variable `{}` is not nilpotent in the quotient",
                ring.vars[i]
            )));
        }
    }

    let mut index = HashMap::new();
    for (k, m) in basis.iter().enumerate() {
        index.insert(m.0.clone(), k);
    }

    let one = ring.field.one();
    let mut mult: Vec<Vec<Scalar>> = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            if j < i {
                let prior = mult[j * dim + i].clone();
                mult.push(prior);
                continue;
            }
            let prod = Polynomial::monomial_term(ring, basis[i].mul(&basis[j]), one.clone());
            let nf = groebner::normal_form(&prod, &gb)?;
            let mut v = vec![ring.field.zero(); dim];
            for (m, c) in &nf.terms {
                v[*index.get(&m.0).expect("standard monomial")] = c.clone();
            }
            mult.push(v);
        }
    }

    let graded = relations.iter().all(|r| r.is_homogeneous());

    let mut hasher = DefaultHasher::new();
    format!("{}", ring).hash(&mut hasher);
    for g in &gb.gens {
        g.to_string().hash(&mut hasher);
    }
    let signature = hasher.finish();

    let mut alg = ArtinAlgebra {
        ring: ring.clone(),
        gb,
        basis,
        dim,
        graded,
        exponent: 0,
        embdim: 0,
        mult,
        index,
        m_powers: Vec::new(),
        signature,
    };

    verify_mult_tables(&alg);

    // powers of the maximal ideal, down to zero
    let field = alg.field();
    let full = Subspace::from_rows(
        dim,
        field,
        (0..dim)
            .map(|k| {
                let mut v = vec![field.zero(); dim];
                v[k] = field.one();
                v
            })
            .collect(),
    );
    let m1 = Subspace::from_rows(
        dim,
        field,
        (1..dim)
            .map(|k| {
                let mut v = vec![field.zero(); dim];
                v[k] = field.one();
                v
            })
            .collect(),
    );
    let mut powers = vec![full, m1];
    loop {
        let prev = powers.last().unwrap();
        if prev.dim() == 0 {
            break;
        }
        let mut next = Subspace::new(dim, field);
        for row in prev.rows() {
            for v in 0..nvars {
                next.insert(mult_row_by_var(&alg, row, v));
            }
        }
        powers.push(next);
    }
    alg.exponent = powers.len() - 1;
    alg.embdim = powers[1].dim() - powers.get(2).map(|s| s.dim()).unwrap_or(0);
    alg.m_powers = powers;
    Ok(Arc::new(alg))
}

/// Convenience: parse relation texts and build.
pub fn algebra_from_texts(
    ring: &Arc<PolyRing>,
    relations: &[&str],
) -> Result<Arc<ArtinAlgebra>, Error> {
    let rels: Result<Vec<Polynomial>, Error> =
        relations.iter().map(|t| parse_polynomial(t, ring)).collect();
    build_algebra(ring, &rels?)
}

fn mult_row_by_var(alg: &ArtinAlgebra, row: &[Scalar], v: usize) -> Vec<Scalar> {
    // x_v as an element has the coords of its normal form; use table rows
    let xv = var_coords(alg, v);
    mult_coords(alg, &xv, row)
}

fn var_coords(alg: &ArtinAlgebra, v: usize) -> Vec<Scalar> {
    let m = Monomial::var(alg.nvars(), v);
    match alg.index.get(&m.0) {
        Some(&k) => {
            let mut c = vec![alg.field().zero(); alg.dim];
            c[k] = alg.field().one();
            c
        }
        None => {
            // the variable itself lies in the leading-term ideal
            let p = Polynomial::monomial_term(&alg.ring, m, alg.ring.field.one());
            let nf = groebner::normal_form(&p, &alg.gb).expect("same ring");
            alg.coords_of_nf(&nf)
        }
    }
}

fn mult_coords(alg: &ArtinAlgebra, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let d = alg.dim;
    let mut out = vec![alg.field().zero(); d];
    for i in 0..d {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..d {
            if b[j].is_zero() {
                continue;
            }
            let c = a[i].mul(&b[j]);
            let row = &alg.mult[i * d + j];
            for k in 0..d {
                if !row[k].is_zero() {
                    out[k] = out[k].add(&c.mul(&row[k]));
                }
            }
        }
    }
    out
}

fn verify_mult_tables(alg: &ArtinAlgebra) {
    let d = alg.dim;
    // commutativity is structural (table is symmetric); check associativity
    let unit = |k: usize| {
        let mut v = vec![alg.field().zero(); d];
        v[k] = alg.field().one();
        v
    };
    let full = d * d * d <= 5000;
    let mut triples: Vec<(usize, usize, usize)> = Vec::new();
    if full {
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    triples.push((i, j, k));
                }
            }
        }
    } else {
        // deterministic stride sample
        let mut t = 0usize;
        while triples.len() < 4000 {
            triples.push((t % d, (t / d + 3 * t) % d, (t * 7 + 1) % d));
            t += 1;
        }
    }
    for (i, j, k) in triples {
        let ij_k = mult_coords(alg, &mult_coords(alg, &unit(i), &unit(j)), &unit(k));
        let i_jk = mult_coords(alg, &unit(i), &mult_coords(alg, &unit(j), &unit(k)));
        assert_eq!(ij_k, i_jk, "associativity defect at basis triple ({i},{j},{k})");
    }
}

pub fn same_algebra(a: &Arc<ArtinAlgebra>, b: &Arc<ArtinAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || (a.signature == b.signature && a.gb.gens == b.gb.gens)
}

// ---------------------------------------------------------------------------
// Elements
// ---------------------------------------------------------------------------

/// An element of an Artinian algebra: coordinates over the standard basis.
#[derive(Clone)]
pub struct Elem {
    pub alg: Arc<ArtinAlgebra>,
    pub coords: Vec<Scalar>,
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Elem({})", self.to_poly())
    }
}

impl PartialEq for Elem {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.alg, &other.alg) && self.coords == other.coords
    }
}
impl Eq for Elem {}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

impl Elem {
    fn check(&self, rhs: &Elem) -> Result<(), Error> {
        if !same_algebra(&self.alg, &rhs.alg) {
            return Err(Error::ContextMismatch("elements of different algebras".into()));
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Units are exactly the elements with nonzero coordinate on 1.
    pub fn is_unit(&self) -> bool {
        !self.coords[0].is_zero()
    }

    pub fn add(&self, rhs: &Elem) -> Elem {
        self.check(rhs).unwrap();
        Elem {
            alg: self.alg.clone(),
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, rhs: &Elem) -> Elem {
        self.check(rhs).unwrap();
        Elem {
            alg: self.alg.clone(),
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn neg(&self) -> Elem {
        Elem { alg: self.alg.clone(), coords: self.coords.iter().map(|c| c.neg()).collect() }
    }

    pub fn mul(&self, rhs: &Elem) -> Elem {
        self.check(rhs).unwrap();
        Elem { alg: self.alg.clone(), coords: mult_coords(&self.alg, &self.coords, &rhs.coords) }
    }

    pub fn scale(&self, c: &Scalar) -> Elem {
        Elem { alg: self.alg.clone(), coords: self.coords.iter().map(|k| k.mul(c)).collect() }
    }

    /// Inverse of a unit; `None` when the element lies in the maximal ideal.
    pub fn inv(&self) -> Option<Elem> {
        if !self.is_unit() {
            return None;
        }
        let rows = mult_matrix(self);
        let mut rhs = vec![self.alg.field().zero(); self.alg.dim];
        rhs[0] = self.alg.field().one();
        let sol = linalg::solve_linear(&rows, &rhs, self.alg.dim, self.alg.field())
            .expect("units are invertible");
        Some(Elem { alg: self.alg.clone(), coords: sol })
    }

    pub fn pow(&self, e: u32) -> Elem {
        let mut acc = one(&self.alg);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Canonical polynomial representative (the normal form).
    pub fn to_poly(&self) -> Polynomial {
        let terms: Vec<(Monomial, Scalar)> = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (self.alg.basis[k].clone(), c.clone()))
            .collect();
        Polynomial::from_terms(&self.alg.ring, terms)
    }

    /// Degree of the canonical representative, if homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let p = self.to_poly();
        if p.is_zero() || !p.is_homogeneous() {
            return None;
        }
        p.total_degree()
    }
}

pub fn zero(alg: &Arc<ArtinAlgebra>) -> Elem {
    Elem { alg: alg.clone(), coords: vec![alg.field().zero(); alg.dim] }
}

pub fn one(alg: &Arc<ArtinAlgebra>) -> Elem {
    let mut e = zero(alg);
    e.coords[0] = alg.field().one();
    e
}

pub fn variable(alg: &Arc<ArtinAlgebra>, v: usize) -> Elem {
    Elem { alg: alg.clone(), coords: var_coords(alg, v) }
}

pub fn variables(alg: &Arc<ArtinAlgebra>) -> Vec<Elem> {
    (0..alg.nvars()).map(|v| variable(alg, v)).collect()
}

pub fn from_coords(alg: &Arc<ArtinAlgebra>, coords: Vec<Scalar>) -> Elem {
    assert_eq!(coords.len(), alg.dim);
    Elem { alg: alg.clone(), coords }
}

pub fn elem_from_poly(alg: &Arc<ArtinAlgebra>, p: &Polynomial) -> Result<Elem, Error> {
    if !p.ring.same_context(&alg.ring) {
        return Err(Error::ContextMismatch(format!(
            "polynomial in {}, algebra over {}",
            p.ring, alg.ring
        )));
    }
    let nf = groebner::normal_form(p, &alg.gb)?;
    Ok(Elem { alg: alg.clone(), coords: alg.coords_of_nf(&nf) })
}

pub fn elem_from_text(alg: &Arc<ArtinAlgebra>, text: &str) -> Result<Elem, Error> {
    let p = parse_polynomial(text, &alg.ring)?;
    elem_from_poly(alg, &p)
}

/// Matrix (rows) of multiplication by `e` on the standard basis.
pub fn mult_matrix(e: &Elem) -> Vec<Vec<Scalar>> {
    let d = e.alg.dim;
    let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(d);
    for j in 0..d {
        let mut unit = vec![e.alg.field().zero(); d];
        unit[j] = e.alg.field().one();
        cols.push(mult_coords(&e.alg, &e.coords, &unit));
    }
    // transpose columns into rows
    (0..d)
        .map(|r| (0..d).map(|j| cols[j][r].clone()).collect())
        .collect()
}

// ---------------------------------------------------------------------------
// Ideals
// ---------------------------------------------------------------------------

/// An ideal of the algebra, held as a reduced-echelon K-subspace.
#[derive(Clone)]
pub struct Ideal {
    pub alg: Arc<ArtinAlgebra>,
    pub space: Subspace,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.space.rows().iter().map(|r| {
            Elem { alg: self.alg.clone(), coords: r.clone() }.to_string()
        }).collect();
        write!(f, "Ideal({})", gens.join(", "))
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.alg, &other.alg) && self.space == other.space
    }
}
impl Eq for Ideal {}

impl Ideal {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.space.dim() == 0
    }

    pub fn contains(&self, e: &Elem) -> bool {
        same_algebra(&self.alg, &e.alg) && self.space.contains(&e.coords)
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        same_algebra(&self.alg, &other.alg) && other.space.is_subspace_of(&self.space)
    }

    pub fn basis_elems(&self) -> Vec<Elem> {
        self.space
            .rows()
            .iter()
            .map(|r| Elem { alg: self.alg.clone(), coords: r.clone() })
            .collect()
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal, Error> {
        if !same_algebra(&self.alg, &other.alg) {
            return Err(Error::ContextMismatch("ideal sum across algebras".into()));
        }
        Ok(Ideal { alg: self.alg.clone(), space: self.space.sum(&other.space) })
    }

    /// Whole algebra as an ideal.
    pub fn unit(alg: &Arc<ArtinAlgebra>) -> Ideal {
        Ideal { alg: alg.clone(), space: alg.m_powers[0].clone() }
    }
}

fn verify_closed(alg: &Arc<ArtinAlgebra>, space: &Subspace) {
    for row in space.rows() {
        for v in 0..alg.nvars() {
            let prod = mult_row_by_var(alg, row, v);
            assert!(space.contains(&prod), "subspace is not an ideal");
        }
    }
}

/// Smallest ideal containing `gens`: their span closed under multiplication
/// by the variables.
pub fn ideal_span(alg: &Arc<ArtinAlgebra>, gens: &[Elem]) -> Result<Ideal, Error> {
    let mut space = Subspace::new(alg.dim, alg.field());
    let mut queue: Vec<Vec<Scalar>> = Vec::new();
    for g in gens {
        if !same_algebra(alg, &g.alg) {
            return Err(Error::ContextMismatch("generator from a different algebra".into()));
        }
        if space.insert(g.coords.clone()) {
            queue.push(g.coords.clone());
        }
    }
    while let Some(row) = queue.pop() {
        for v in 0..alg.nvars() {
            let prod = mult_row_by_var(alg, &row, v);
            if space.insert(prod.clone()) {
                queue.push(prod);
            }
        }
    }
    Ok(Ideal { alg: alg.clone(), space })
}

pub fn ideal_from_texts(alg: &Arc<ArtinAlgebra>, texts: &[&str]) -> Result<Ideal, Error> {
    let gens: Result<Vec<Elem>, Error> =
        texts.iter().map(|t| elem_from_text(alg, t)).collect();
    ideal_span(alg, &gens?)
}

pub fn zero_ideal(alg: &Arc<ArtinAlgebra>) -> Ideal {
    Ideal { alg: alg.clone(), space: Subspace::new(alg.dim, alg.field()) }
}

/// The maximal ideal M (span of the non-unit standard monomials).
pub fn maximal_ideal(alg: &Arc<ArtinAlgebra>) -> Ideal {
    Ideal { alg: alg.clone(), space: alg.m_powers[1].clone() }
}

/// M^k; M^0 = A.
pub fn maximal_ideal_power(alg: &Arc<ArtinAlgebra>, k: usize) -> Ideal {
    let space = if k < alg.m_powers.len() {
        alg.m_powers[k].clone()
    } else {
        Subspace::new(alg.dim, alg.field())
    };
    Ideal { alg: alg.clone(), space }
}

/// Product ideal I*J (span of pairwise products).
pub fn ideal_product(i: &Ideal, j: &Ideal) -> Result<Ideal, Error> {
    if !same_algebra(&i.alg, &j.alg) {
        return Err(Error::ContextMismatch("ideal product across algebras".into()));
    }
    let alg = &i.alg;
    let mut space = Subspace::new(alg.dim, alg.field());
    for a in i.space.rows() {
        for b in j.space.rows() {
            space.insert(mult_coords(alg, a, b));
        }
    }
    // product of ideals is an ideal; the span of pairwise products of
    // ideal bases is already closed, which we assert
    verify_closed(alg, &space);
    Ok(Ideal { alg: alg.clone(), space })
}

/// Colon ideal I : (g_1,...,g_k) = { a : a*g_t in I for all t }.
pub fn colon(i: &Ideal, by: &[Elem]) -> Result<Ideal, Error> {
    let alg = &i.alg;
    let d = alg.dim;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for g in by {
        if !same_algebra(alg, &g.alg) {
            return Err(Error::ContextMismatch("colon divisor from a different algebra".into()));
        }
        // condition: residual of (g*a) modulo I vanishes; build the matrix
        // of a |-> reduce(M_g a) column by column
        let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(d);
        for jcol in 0..d {
            let mut unit = vec![alg.field().zero(); d];
            unit[jcol] = alg.field().one();
            let prod = mult_coords(alg, &g.coords, &unit);
            cols.push(i.space.reduce(prod));
        }
        for r in 0..d {
            rows.push((0..d).map(|c| cols[c][r].clone()).collect());
        }
    }
    let kernel = linalg::kernel_basis(&rows, d, alg.field());
    let space = Subspace::from_rows(d, alg.field(), kernel);
    verify_closed(alg, &space);
    Ok(Ideal { alg: alg.clone(), space })
}

pub fn colon_ideal(i: &Ideal, j: &Ideal) -> Result<Ideal, Error> {
    colon(i, &j.basis_elems())
}

/// Annihilator 0 : b.
pub fn annihilator(alg: &Arc<ArtinAlgebra>, b: &Elem) -> Result<Ideal, Error> {
    colon(&zero_ideal(alg), std::slice::from_ref(b))
}

/// Socle = 0 : M.
pub fn socle(alg: &Arc<ArtinAlgebra>) -> Result<Ideal, Error> {
    colon(&zero_ideal(alg), &variables(alg))
}

/// Number of minimal generators of I (Nakayama: dim I - dim M*I).
pub fn minimal_generator_count(i: &Ideal) -> usize {
    i.dim() - m_times(i).dim()
}

fn m_times(i: &Ideal) -> Ideal {
    let alg = &i.alg;
    let mut space = Subspace::new(alg.dim, alg.field());
    for row in i.space.rows() {
        for v in 0..alg.nvars() {
            space.insert(mult_row_by_var(alg, row, v));
        }
    }
    Ideal { alg: alg.clone(), space }
}

/// A minimal generating set, chosen greedily from the echelon basis.
pub fn minimal_generators(i: &Ideal) -> Vec<Elem> {
    let mi = m_times(i);
    let mut grown = mi.space.clone();
    let mut out = Vec::new();
    for row in i.space.rows() {
        if grown.insert(row.clone()) {
            out.push(Elem { alg: i.alg.clone(), coords: row.clone() });
        }
    }
    debug_assert_eq!(out.len(), minimal_generator_count(i));
    out
}

pub fn is_principal(i: &Ideal) -> bool {
    minimal_generator_count(i) <= 1
}

/// For a principal nonzero ideal, one generator with span(g) = I.
pub fn principal_generator(i: &Ideal) -> Option<Elem> {
    if !is_principal(i) || i.is_zero() {
        return None;
    }
    let g = minimal_generators(i).pop().expect("nonzero principal ideal");
    let span = ideal_span(&i.alg, std::slice::from_ref(&g)).expect("same algebra");
    assert_eq!(&span, i, "minimal generator must regenerate the ideal");
    Some(g)
}

// ---------------------------------------------------------------------------
// Quotients
// ---------------------------------------------------------------------------

/// Projection A -> A/I together with its canonical linear section.
pub struct QuotientMap {
    pub src: Arc<ArtinAlgebra>,
    pub dst: Arc<ArtinAlgebra>,
}

impl QuotientMap {
    pub fn project(&self, e: &Elem) -> Elem {
        assert!(same_algebra(&self.src, &e.alg), "element of the source algebra");
        elem_from_poly(&self.dst, &e.to_poly()).expect("same ring context")
    }

    /// Canonical preimage: the normal-form representative of the class.
    pub fn lift(&self, e: &Elem) -> Elem {
        assert!(same_algebra(&self.dst, &e.alg), "element of the quotient algebra");
        elem_from_poly(&self.src, &e.to_poly()).expect("same ring context")
    }
}

/// Builds A/I as an algebra over the same ring: the defining ideal is the
/// preimage of I, generated by the relations of A plus canonical
/// representatives of an echelon basis of I.
pub fn quotient_algebra(
    alg: &Arc<ArtinAlgebra>,
    i: &Ideal,
) -> Result<(Arc<ArtinAlgebra>, QuotientMap), Error> {
    if !same_algebra(alg, &i.alg) {
        return Err(Error::ContextMismatch("ideal of a different algebra".into()));
    }
    if i.dim() == alg.dim {
        return Err(Error::Precondition("cannot quotient by the unit ideal".into()));
    }
    let mut rels = alg.gb.gens.clone();
    for e in i.basis_elems() {
        rels.push(e.to_poly());
    }
    let q = build_algebra(&alg.ring, &rels)?;
    assert_eq!(q.dim, alg.dim - i.dim(), "quotient dimension bookkeeping");
    let map = QuotientMap { src: alg.clone(), dst: q.clone() };
    Ok((q, map))
}

/// Pushes an ideal J of A forward to (J+I)/I inside A/I.
pub fn push_ideal(map: &QuotientMap, j: &Ideal) -> Ideal {
    let gens: Vec<Elem> = j.basis_elems().iter().map(|e| map.project(e)).collect();
    ideal_span(&map.dst, &gens).expect("same algebra")
}

/// Pulls an ideal of A/I back to its full preimage in A.
pub fn pull_ideal(map: &QuotientMap, jbar: &Ideal, i: &Ideal) -> Ideal {
    let mut gens: Vec<Elem> = jbar.basis_elems().iter().map(|e| map.lift(e)).collect();
    gens.extend(i.basis_elems());
    ideal_span(&map.src, &gens).expect("same algebra")
}

/// A/I is Gorenstein exactly when its socle is one-dimensional.
pub fn is_gorenstein_quotient(alg: &Arc<ArtinAlgebra>, i: &Ideal) -> Result<bool, Error> {
    let (q, _) = quotient_algebra(alg, i)?;
    Ok(socle(&q)?.dim() == 1)
}

// ---------------------------------------------------------------------------
// Graded data
// ---------------------------------------------------------------------------

/// Dimensions of M^d / M^(d+1) for d = 0..exponent-1. For a graded algebra
/// this is the Hilbert function.
pub fn hilbert_data(alg: &Arc<ArtinAlgebra>) -> Result<Vec<usize>, Error> {
    if !alg.graded {
        return Err(Error::NotApplicable(
            "Hilbert data requires homogeneous defining relations".into(),
        ));
    }
    Ok((0..alg.exponent)
        .map(|d| alg.m_powers[d].dim() - alg.m_powers[d + 1].dim())
        .collect())
}

/// Palindrome test of the Hilbert function; requires graded Gorenstein.
pub fn graded_symmetry_check(alg: &Arc<ArtinAlgebra>) -> Result<bool, Error> {
    let h = hilbert_data(alg)?;
    if socle(alg)?.dim() != 1 {
        return Err(Error::NotApplicable(
            "symmetry test requires a one-dimensional socle".into(),
        ));
    }
    let mut rev = h.clone();
    rev.reverse();
    Ok(h == rev)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::MonomialOrder;

    fn qring(vars: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(Field::Rational, vars, MonomialOrder::DegRevLex).unwrap()
    }

    fn xy_cubes() -> Arc<ArtinAlgebra> {
        algebra_from_texts(&qring(&["x", "y"]), &["x*y", "x^3 + y^3"]).unwrap()
    }

    fn three_squares() -> Arc<ArtinAlgebra> {
        algebra_from_texts(&qring(&["x", "y", "z"]), &["x^2", "y^2", "z^2"]).unwrap()
    }

    fn cusp() -> Arc<ArtinAlgebra> {
        algebra_from_texts(&qring(&["x", "y"]), &["x*y", "y^2 - x^3"]).unwrap()
    }

    #[test]
    fn build_statistics() {
        let a = xy_cubes();
        assert_eq!((a.dim, a.exponent, a.embdim, a.graded), (6, 4, 2, true));
        let b = three_squares();
        assert_eq!((b.dim, b.exponent, b.embdim, b.graded), (8, 4, 3, true));
        let c = cusp();
        assert_eq!((c.dim, c.exponent, c.embdim, c.graded), (5, 4, 2, false));
    }

    #[test]
    fn not_local_detected() {
        let r = qring(&["x"]);
        match algebra_from_texts(&r, &["x^2 - x"]) {
            Err(Error::NotLocal(_)) => {}
            other => panic!("expected NotLocal, got {:?}", other.map(|a| a.dim)),
        }
    }

    #[test]
    fn not_zero_dimensional_detected() {
        let r = qring(&["x", "y"]);
        assert!(matches!(
            algebra_from_texts(&r, &["x*y"]),
            Err(Error::NotZeroDimensional(_))
        ));
    }

    #[test]
    fn element_arithmetic_and_units() {
        let a = xy_cubes();
        let x = elem_from_text(&a, "x").unwrap();
        let y = elem_from_text(&a, "y").unwrap();
        assert!(x.mul(&y).is_zero());
        let u = elem_from_text(&a, "1 + x").unwrap();
        assert!(u.is_unit());
        let inv = u.inv().unwrap();
        assert_eq!(u.mul(&inv), one(&a));
        // 1/(1+x) = 1 - x + x^2 - x^3 = 1 - x + x^2 + y^3
        assert_eq!(inv, elem_from_text(&a, "1 - x + x^2 + y^3").unwrap());
        assert!(x.inv().is_none());
    }

    #[test]
    fn annihilator_of_y_in_xy_cubes_is_x_ideal() {
        let a = xy_cubes();
        let y = elem_from_text(&a, "y").unwrap();
        let ann = annihilator(&a, &y).unwrap();
        let xideal = ideal_from_texts(&a, &["x"]).unwrap();
        assert_eq!(ann, xideal);
        assert_eq!(ann.dim(), 3);
    }

    #[test]
    fn socle_of_corpus_algebras() {
        let a = xy_cubes();
        let s = socle(&a).unwrap();
        assert_eq!(s, ideal_from_texts(&a, &["y^3"]).unwrap());
        let b = three_squares();
        let sb = socle(&b).unwrap();
        assert_eq!(sb, ideal_from_texts(&b, &["x*y*z"]).unwrap());
        assert_eq!(sb, maximal_ideal_power(&b, 3));
    }

    #[test]
    fn maximal_ideal_powers_and_exponent() {
        let b = three_squares();
        assert_eq!(maximal_ideal_power(&b, 0).dim(), 8);
        assert_eq!(maximal_ideal_power(&b, 1).dim(), 7);
        assert_eq!(maximal_ideal_power(&b, 2).dim(), 4);
        assert_eq!(maximal_ideal_power(&b, 3).dim(), 1);
        assert_eq!(maximal_ideal_power(&b, 4).dim(), 0);
        assert_eq!(maximal_ideal_power(&b, 9).dim(), 0);
    }

    #[test]
    fn colon_and_annihilator_agree() {
        let a = xy_cubes();
        let y = elem_from_text(&a, "y").unwrap();
        let z = zero_ideal(&a);
        assert_eq!(colon(&z, &[y.clone()]).unwrap(), annihilator(&a, &y).unwrap());
        // I : A-units = I
        let m = maximal_ideal(&a);
        let u = elem_from_text(&a, "1 + y^2").unwrap();
        assert_eq!(colon(&m, &[u]).unwrap(), m);
    }

    #[test]
    fn minimal_generator_counts_nakayama() {
        let b = three_squares();
        let w = elem_from_text(&b, "x + y + z").unwrap();
        let ann = annihilator(&b, &w).unwrap();
        assert_eq!(ann.dim(), 3);
        assert_eq!(minimal_generator_count(&ann), 2);
        assert_eq!(
            ann,
            ideal_from_texts(&b, &["x*y - x*z", "x*y - y*z"]).unwrap()
        );
        let m = maximal_ideal(&b);
        assert_eq!(minimal_generator_count(&m), 3);
        assert!(!is_principal(&ann));
    }

    #[test]
    fn principal_generator_returns_witness() {
        let c = cusp();
        let y = elem_from_text(&c, "y").unwrap();
        let ann = annihilator(&c, &y).unwrap();
        assert!(is_principal(&ann));
        let g = principal_generator(&ann).unwrap();
        assert_eq!(ideal_span(&c, &[g]).unwrap(), ann);
        assert_eq!(ann, ideal_from_texts(&c, &["x"]).unwrap());
    }

    #[test]
    fn quotient_algebra_dimensions_and_section() {
        let a = xy_cubes();
        let xideal = ideal_from_texts(&a, &["x"]).unwrap();
        let (q, map) = quotient_algebra(&a, &xideal).unwrap();
        assert_eq!(q.dim, 3);
        assert_eq!(q.exponent, 3);
        // projection is an algebra map and lift is a section
        let y = elem_from_text(&a, "y").unwrap();
        let ybar = map.project(&y);
        assert_eq!(map.project(&map.lift(&ybar)), ybar);
        assert_eq!(map.project(&y.mul(&y)), ybar.mul(&ybar));
        // quotient by the maximal ideal is the field
        let m = maximal_ideal(&a);
        let (k, _) = quotient_algebra(&a, &m).unwrap();
        assert_eq!((k.dim, k.exponent), (1, 1));
        // quotient by the unit ideal is rejected
        assert!(quotient_algebra(&a, &Ideal::unit(&a)).is_err());
    }

    #[test]
    fn gorenstein_quotients() {
        let b = three_squares();
        let w = elem_from_text(&b, "x + y + z").unwrap();
        let ann = annihilator(&b, &w).unwrap();
        assert!(is_gorenstein_quotient(&b, &ann).unwrap());
        // A/(x*y) has a two-dimensional socle
        let i = ideal_from_texts(&b, &["x*y"]).unwrap();
        assert!(!is_gorenstein_quotient(&b, &i).unwrap());
    }

    #[test]
    fn hilbert_data_palindromes() {
        let a = xy_cubes();
        assert_eq!(hilbert_data(&a).unwrap(), vec![1, 2, 2, 1]);
        assert!(graded_symmetry_check(&a).unwrap());
        let b = three_squares();
        assert_eq!(hilbert_data(&b).unwrap(), vec![1, 3, 3, 1]);
        assert!(graded_symmetry_check(&b).unwrap());
        assert!(matches!(hilbert_data(&cusp()), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn ideal_lattice_sanity() {
        let a = xy_cubes();
        let m = maximal_ideal(&a);
        let m2 = maximal_ideal_power(&a, 2);
        assert_eq!(ideal_product(&m, &m).unwrap(), m2);
        let x = ideal_from_texts(&a, &["x"]).unwrap();
        let y = ideal_from_texts(&a, &["y"]).unwrap();
        assert_eq!(x.sum(&y).unwrap(), m);
        assert!(m.contains_ideal(&m2));
        assert!(!m2.contains_ideal(&m));
    }

    #[test]
    fn mixed_algebra_operations_rejected() {
        let a = xy_cubes();
        let b = three_squares();
        let xa = elem_from_text(&a, "x").unwrap();
        let i = zero_ideal(&b);
        assert!(colon(&i, &[xa.clone()]).is_err());
        assert!(ideal_span(&b, &[xa]).is_err());
    }
}
