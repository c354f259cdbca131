//! Buchberger's algorithm and the reduced Groebner basis toolkit.
//!
//! Bases are reduced, monic and sorted by leading monomial, so a basis is
//! a canonical form for its ideal: two ideals over the same ring context
//! are equal exactly when their reduced bases are identical. On top of
//! that sit normal forms (canonical coset representatives), membership,
//! standard monomials of zero-dimensional ideals, and an exact count of
//! minimal generators of an ideal inside the polynomial ring, obtained by
//! truncating at a power of the irrelevant maximal ideal.

use crate::error::Error;
use crate::linalg::Subspace;
use crate::poly::{parse_polynomial, Monomial, PolyRing, Polynomial};
use crate::scalar::Scalar;
use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub ring: Arc<PolyRing>,
    /// Reduced, monic, sorted ascending by leading monomial.
    pub gens: Vec<Polynomial>,
    /// The generators the caller supplied, kept for provenance.
    pub source: Vec<Polynomial>,
}

/// Divides `f` by the basis, reducing every term. The result contains no
/// term divisible by any leading monomial of `gens`, which makes it the
/// canonical representative of `f` modulo the ideal.
fn normal_form_by(f: &Polynomial, gens: &[Polynomial]) -> Polynomial {
    let ring = f.ring.clone();
    let mut p = f.clone();
    let mut remainder: Vec<(Monomial, Scalar)> = Vec::new();
    'outer: while let Some((lm, lc)) = p.leading().map(|(m, c)| (m.clone(), c.clone())) {
        for g in gens {
            let (gm, gc) = g.leading().expect("basis elements are nonzero");
            if gm.divides(&lm) {
                let q = gm.div_into(&lm);
                let coeff = lc.div(gc).unwrap();
                p = p.sub(&g.mul_term(&q, &coeff)).unwrap();
                continue 'outer;
            }
        }
        remainder.push((lm.clone(), lc));
        p = p.sub(&Polynomial::monomial_term(&ring, lm, p.leading().unwrap().1.clone())).unwrap();
    }
    // terms were peeled off in descending order
    Polynomial { ring, terms: remainder }
}

pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial, Error> {
    if !f.ring.same_context(&gb.ring) {
        return Err(Error::ContextMismatch(format!(
            "polynomial in {}, basis in {}",
            f.ring, gb.ring
        )));
    }
    Ok(normal_form_by(f, &gb.gens))
}

pub fn is_member(f: &Polynomial, gb: &GroebnerBasis) -> Result<bool, Error> {
    Ok(normal_form(f, gb)?.is_zero())
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (fm, fc) = f.leading().unwrap();
    let (gm, gc) = g.leading().unwrap();
    let l = fm.lcm(gm);
    let a = f.mul_term(&fm.div_into(&l), &fc.inv().unwrap());
    let b = g.mul_term(&gm.div_into(&l), &gc.inv().unwrap());
    a.sub(&b).unwrap()
}

/// Computes the reduced Groebner basis of the ideal generated by `gens`.
///
/// Pair selection is degree-first on the pair's lcm; the coprimality and
/// chain criteria prune the queue. The output is auto-reduced and monic.
pub fn buchberger(gens: &[Polynomial]) -> Result<GroebnerBasis, Error> {
    if gens.is_empty() {
        return Err(Error::Precondition("no generators given".into()));
    }
    let ring = gens[0].ring.clone();
    for g in gens {
        if !g.ring.same_context(&ring) {
            return Err(Error::ContextMismatch("generators from different rings".into()));
        }
    }
    let mut basis: Vec<Polynomial> = Vec::new();
    for g in gens {
        if !g.is_zero() {
            basis.push(g.monic());
        }
    }
    if basis.is_empty() {
        return Err(Error::Precondition("all generators are zero".into()));
    }

    let ord = ring.order;
    // pending pairs keyed for the chain criterion
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            pending.insert((i, j));
        }
    }

    let pick = |pending: &BTreeSet<(usize, usize)>, basis: &[Polynomial]| {
        pending
            .iter()
            .min_by(|&&(a, b), &&(c, d)| {
                let l1 = basis[a].leading().unwrap().0.lcm(basis[b].leading().unwrap().0);
                let l2 = basis[c].leading().unwrap().0.lcm(basis[d].leading().unwrap().0);
                match l1.degree().cmp(&l2.degree()) {
                    Ordering::Equal => match ord.cmp(&l1, &l2) {
                        Ordering::Equal => (a, b).cmp(&(c, d)),
                        o => o,
                    },
                    o => o,
                }
            })
            .copied()
    };

    while let Some((i, j)) = pick(&pending, &basis) {
        pending.remove(&(i, j));
        let (mi, _) = basis[i].leading().unwrap();
        let (mj, _) = basis[j].leading().unwrap();
        if mi.coprime(mj) {
            continue; // s-polynomial reduces to zero when leading terms are coprime
        }
        let l = mi.lcm(mj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading().unwrap().0.divides(&l)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let r = normal_form_by(&s_polynomial(&basis[i], &basis[j]), &basis);
        if !r.is_zero() {
            let t = basis.len();
            basis.push(r.monic());
            for k in 0..t {
                pending.insert((k, t));
            }
        }
    }

    // minimal: drop elements whose leading monomial is divisible by another's
    let mut keep: Vec<Polynomial> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let gm = g.leading().unwrap().0;
        let redundant = basis.iter().enumerate().any(|(k, h)| {
            let hm = h.leading().unwrap().0;
            k != i && hm.divides(gm) && (hm != gm || k < i)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    // reduced: every element in normal form w.r.t. the others
    loop {
        let mut changed = false;
        for i in 0..keep.len() {
            let others: Vec<Polynomial> =
                keep.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, p)| p.clone()).collect();
            let r = normal_form_by(&keep[i], &others).monic();
            if r != keep[i] {
                keep[i] = r;
                changed = true;
                keep.retain(|p| !p.is_zero());
                break;
            }
        }
        if !changed {
            break;
        }
    }
    keep.sort_by(|a, b| ord.cmp(a.leading().unwrap().0, b.leading().unwrap().0));
    Ok(GroebnerBasis { ring, gens: keep, source: gens.to_vec() })
}

/// Two ideals over the same context are equal iff their reduced bases match.
pub fn ideal_equal(a: &GroebnerBasis, b: &GroebnerBasis) -> Result<bool, Error> {
    if !a.ring.same_context(&b.ring) {
        return Err(Error::ContextMismatch("ideal comparison across different rings".into()));
    }
    Ok(a.gens == b.gens)
}

/// All monomials of total degree at most `max_deg`.
pub fn monomials_up_to(nvars: usize, max_deg: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fn rec(cur: &mut Vec<u32>, i: usize, left: u32, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            for e in 0..=left {
                cur[i] = e;
                out.push(Monomial(cur.clone()));
            }
            cur[i] = 0;
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(cur, i + 1, left - e, out);
        }
        cur[i] = 0;
    }
    rec(&mut cur, 0, max_deg, &mut out);
    out
}

fn monomials_of_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
    monomials_up_to(nvars, deg).into_iter().filter(|m| m.degree() == deg).collect()
}

/// Standard monomials (the complement of the leading-term ideal), sorted
/// ascending under the ring order. Fails with `NotZeroDimensional` when
/// some variable has no pure power among the leading terms.
pub fn standard_monomials(gb: &GroebnerBasis) -> Result<Vec<Monomial>, Error> {
    let n = gb.ring.nvars();
    let lts: Vec<&Monomial> = gb.gens.iter().map(|g| g.leading().unwrap().0).collect();
    if lts.iter().any(|m| m.is_one()) {
        return Err(Error::Precondition("the ideal is the unit ideal".into()));
    }
    let mut bounds = vec![0u32; n];
    for i in 0..n {
        let mut found = None;
        for m in &lts {
            if m.0[i] > 0 && m.0.iter().enumerate().all(|(k, &e)| k == i || e == 0) {
                found = Some(match found {
                    None => m.0[i],
                    Some(b) => m.0[i].min(b),
                });
            }
        }
        match found {
            Some(b) => bounds[i] = b,
            None => {
                return Err(Error::NotZeroDimensional(format!(
                    "no pure power of `{}` among the leading terms",
                    gb.ring.vars[i]
                )))
            }
        }
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    loop {
        let m = Monomial(cur.clone());
        if !lts.iter().any(|lt| lt.divides(&m)) {
            out.push(m);
        }
        // odometer over the box bounded by the pure powers
        let mut i = 0;
        loop {
            if i == n {
                let ord = gb.ring.order;
                out.sort_by(|a, b| ord.cmp(a, b));
                return Ok(out);
            }
            cur[i] += 1;
            if cur[i] >= bounds[i] {
                cur[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
    }
}

/// Number of minimal generators of the ideal of the basis, computed in the
/// truncation by the (N+2)-nd power of the irrelevant maximal ideal.
/// Precondition (checked): every monomial of degree `N` lies in the ideal.
pub fn lifted_minimal_generator_count(gb: &GroebnerBasis, n_trunc: u32) -> Result<usize, Error> {
    let nvars = gb.ring.nvars();
    for m in monomials_of_degree(nvars, n_trunc) {
        let f = Polynomial::monomial_term(&gb.ring, m, gb.ring.field.one());
        if !normal_form_by(&f, &gb.gens).is_zero() {
            return Err(Error::Precondition(format!(
                "monomial {} of degree {} is not in the ideal",
                f, n_trunc
            )));
        }
    }
    let max_deg = n_trunc + 1;
    let cols = monomials_up_to(nvars, max_deg);
    let col_index = |m: &Monomial| -> usize {
        cols.iter().position(|c| c == m).expect("column present")
    };
    let truncate_row = |p: &Polynomial| -> Vec<Scalar> {
        let mut row = vec![gb.ring.field.zero(); cols.len()];
        for (m, c) in &p.terms {
            if m.degree() <= max_deg {
                row[col_index(m)] = c.clone();
            }
        }
        row
    };
    let mut ideal_span = Subspace::new(cols.len(), gb.ring.field);
    let mut mprod_span = Subspace::new(cols.len(), gb.ring.field);
    let one = gb.ring.field.one();
    for g in &gb.gens {
        for m in &cols {
            let prod = g.mul_term(m, &one);
            ideal_span.insert(truncate_row(&prod));
            for v in 0..nvars {
                let shifted = prod.mul_term(&Monomial::var(nvars, v), &one);
                mprod_span.insert(truncate_row(&shifted));
            }
        }
    }
    Ok(ideal_span.dim() - mprod_span.dim())
}

/// Convenience: parse generator texts and run Buchberger.
pub fn basis_from_texts(ring: &Arc<PolyRing>, texts: &[&str]) -> Result<GroebnerBasis, Error> {
    let gens: Result<Vec<Polynomial>, Error> =
        texts.iter().map(|t| parse_polynomial(t, ring)).collect();
    buchberger(&gens?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::MonomialOrder;
    use crate::scalar::Field;

    fn ring2() -> Arc<PolyRing> {
        PolyRing::new(Field::Rational, &["x", "y"], MonomialOrder::DegRevLex).unwrap()
    }

    fn texts(gb: &GroebnerBasis) -> Vec<String> {
        gb.gens.iter().map(|g| g.to_string()).collect()
    }

    #[test]
    fn reduced_basis_of_xy_and_cubes() {
        let r = ring2();
        let gb = basis_from_texts(&r, &["x*y", "x^3 + y^3"]).unwrap();
        assert_eq!(texts(&gb), vec!["x*y", "x^3 + y^3", "y^4"]);
    }

    #[test]
    fn reduced_basis_of_cusp_relations() {
        let r = ring2();
        let gb = basis_from_texts(&r, &["x*y", "y^2 - x^3"]).unwrap();
        // y^3 sorts before x^3 - y^2? no: ascending by leading monomial
        let mut got = texts(&gb);
        got.sort();
        assert_eq!(got, vec!["x*y", "x^3 - y^2", "y^3"]);
        assert_eq!(standard_monomials(&gb).unwrap().len(), 5);
    }

    #[test]
    fn every_s_polynomial_reduces_to_zero() {
        // definitional oracle for the Buchberger output
        let r = PolyRing::new(Field::Rational, &["x", "y", "z"], MonomialOrder::DegRevLex)
            .unwrap();
        let gb = basis_from_texts(
            &r,
            &["x^2 + y*z", "y^2 - x*z", "z^2 + x*y - y"],
        )
        .unwrap();
        for i in 0..gb.gens.len() {
            for j in (i + 1)..gb.gens.len() {
                let s = s_polynomial(&gb.gens[i], &gb.gens[j]);
                assert!(normal_form(&s, &gb).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn normal_form_is_canonical_and_linear() {
        let r = ring2();
        let gb = basis_from_texts(&r, &["x*y", "x^3 + y^3"]).unwrap();
        let f = parse_polynomial("x^3 + x*y + 1", &r).unwrap();
        let nf = normal_form(&f, &gb).unwrap();
        assert_eq!(nf.to_string(), "-y^3 + 1");
        // NF(f+g) = NF(f) + NF(g)
        let g = parse_polynomial("y^4 + x - 2", &r).unwrap();
        let lhs = normal_form(&f.add(&g).unwrap(), &gb).unwrap();
        let rhs = normal_form(&f, &gb).unwrap().add(&normal_form(&g, &gb).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn membership_and_ideal_equality() {
        let r = ring2();
        let a = basis_from_texts(&r, &["x*y", "x^3 + y^3"]).unwrap();
        let b = basis_from_texts(&r, &["x^3 + y^3 + 7*x*y", "x*y", "y^4"]).unwrap();
        assert!(ideal_equal(&a, &b).unwrap());
        assert!(is_member(&parse_polynomial("y^4", &r).unwrap(), &a).unwrap());
        assert!(!is_member(&parse_polynomial("y^3", &r).unwrap(), &a).unwrap());
    }

    #[test]
    fn standard_monomials_of_xy_cubes() {
        let r = ring2();
        let gb = basis_from_texts(&r, &["x*y", "x^3 + y^3"]).unwrap();
        let basis = standard_monomials(&gb).unwrap();
        let names: Vec<String> = basis
            .iter()
            .map(|m| {
                Polynomial::monomial_term(&r, m.clone(), r.field.one()).to_string()
            })
            .collect();
        assert_eq!(names, vec!["1", "y", "x", "y^2", "x^2", "y^3"]);
    }

    #[test]
    fn non_zero_dimensional_detected() {
        let r = ring2();
        let gb = basis_from_texts(&r, &["x*y"]).unwrap();
        assert!(matches!(standard_monomials(&gb), Err(Error::NotZeroDimensional(_))));
    }

    #[test]
    fn dimension_is_order_independent() {
        for texts in [&["x*y", "x^3 + y^3"][..], &["x*y", "y^2 - x^3"][..]] {
            let rd = PolyRing::new(Field::Rational, &["x", "y"], MonomialOrder::DegRevLex)
                .unwrap();
            let rl =
                PolyRing::new(Field::Rational, &["x", "y"], MonomialOrder::Lex).unwrap();
            let d = standard_monomials(&basis_from_texts(&rd, texts).unwrap()).unwrap().len();
            let l = standard_monomials(&basis_from_texts(&rl, texts).unwrap()).unwrap().len();
            assert_eq!(d, l);
        }
    }

    #[test]
    fn minimal_generator_counts() {
        let r = ring2();
        let gb = basis_from_texts(&r, &["x*y", "x^3 + y^3"]).unwrap();
        assert_eq!(lifted_minimal_generator_count(&gb, 6).unwrap(), 2);

        let r3 = PolyRing::new(Field::Rational, &["x", "y", "z"], MonomialOrder::DegRevLex)
            .unwrap();
        let sq = basis_from_texts(&r3, &["x^2", "y^2", "z^2"]).unwrap();
        assert_eq!(lifted_minimal_generator_count(&sq, 4).unwrap(), 3);

        let big = basis_from_texts(
            &r3,
            &["x^2", "y^2", "z^2", "x*y - x*z", "x*y - y*z"],
        )
        .unwrap();
        assert_eq!(lifted_minimal_generator_count(&big, 4).unwrap(), 5);
    }

    #[test]
    fn truncation_precondition_enforced() {
        let r = ring2();
        let gb = basis_from_texts(&r, &["x*y", "x^3 + y^3"]).unwrap();
        // degree-2 monomials are not all inside the ideal
        assert!(matches!(
            lifted_minimal_generator_count(&gb, 2),
            Err(Error::Precondition(_))
        ));
    }
}
