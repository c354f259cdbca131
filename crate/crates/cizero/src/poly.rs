//! Sparse multivariate polynomials over an exact coefficient field.
//!
//! A polynomial lives in a shared ring context (field, named variables,
//! monomial order) and stores its nonzero terms sorted descending under
//! the active order, so the leading term is always `terms[0]`. Both
//! supported orders are global: the constant monomial is the smallest,
//! which is what Buchberger-style division needs to terminate.

use crate::error::Error;
use crate::scalar::{Field, Scalar};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// Exponent vector; index `i` is the exponent of the ring's variable `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&rhs.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn divides(&self, rhs: &Monomial) -> bool {
        self.0.iter().zip(&rhs.0).all(|(a, b)| a <= b)
    }

    /// `rhs / self`; caller must ensure divisibility.
    pub fn div_into(&self, rhs: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&rhs.0).map(|(a, b)| b - a).collect())
    }

    pub fn lcm(&self, rhs: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&rhs.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// True when lcm(a,b) = a*b, i.e. the supports are disjoint.
    pub fn coprime(&self, rhs: &Monomial) -> bool {
        self.0.iter().zip(&rhs.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// A global monomial order. Ties never happen between distinct monomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Degree first, ties broken reverse-lexicographically (the default).
    DegRevLex,
    /// Pure lexicographic with the ring's variable list as priority.
    Lex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::DegRevLex => match a.degree().cmp(&b.degree()) {
                Ordering::Equal => {
                    for i in (0..a.0.len()).rev() {
                        match a.0[i].cmp(&b.0[i]) {
                            Ordering::Equal => continue,
                            // smaller exponent in the last differing slot wins
                            Ordering::Less => return Ordering::Greater,
                            Ordering::Greater => return Ordering::Less,
                        }
                    }
                    Ordering::Equal
                }
                d => d,
            },
            MonomialOrder::Lex => {
                for i in 0..a.0.len() {
                    match a.0[i].cmp(&b.0[i]) {
                        Ordering::Equal => continue,
                        d => return d,
                    }
                }
                Ordering::Equal
            }
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::DegRevLex => write!(f, "degrevlex"),
            MonomialOrder::Lex => write!(f, "lex"),
        }
    }
}

/// Shared context: coefficient field, variable names, monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    pub field: Field,
    pub vars: Vec<String>,
    pub order: MonomialOrder,
}

impl PolyRing {
    pub fn new(field: Field, vars: &[&str], order: MonomialOrder) -> Result<Arc<PolyRing>, Error> {
        let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        Self::new_owned(field, names, order)
    }

    pub fn new_owned(
        field: Field,
        vars: Vec<String>,
        order: MonomialOrder,
    ) -> Result<Arc<PolyRing>, Error> {
        if vars.is_empty() {
            return Err(Error::Precondition("a ring needs at least one variable".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty()
                || !v.chars().next().unwrap().is_ascii_alphabetic()
                || !v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
            {
                return Err(Error::Precondition(format!("bad variable name `{}`", v)));
            }
            if vars[..i].contains(v) {
                return Err(Error::Precondition(format!("duplicate variable `{}`", v)));
            }
        }
        Ok(Arc::new(PolyRing { field, vars, order }))
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Structural compatibility (same field, variables and order).
    pub fn same_context(&self, other: &PolyRing) -> bool {
        self == other
    }
}

impl fmt::Display for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}] ({})", self.field, self.vars.join(","), self.order)
    }
}

/// Sparse polynomial; invariant: terms sorted strictly descending under
/// the ring order and no term has a zero coefficient.
#[derive(Clone, Debug)]
pub struct Polynomial {
    pub ring: Arc<PolyRing>,
    pub terms: Vec<(Monomial, Scalar)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_context(&other.ring) && self.terms == other.terms
    }
}
impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Polynomial {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Polynomial {
        Polynomial::constant(ring, ring.field.one())
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(ring);
        }
        Polynomial { ring: ring.clone(), terms: vec![(Monomial::one(ring.nvars()), c)] }
    }

    pub fn variable(ring: &Arc<PolyRing>, i: usize) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms: vec![(Monomial::var(ring.nvars(), i), ring.field.one())],
        }
    }

    pub fn monomial_term(ring: &Arc<PolyRing>, m: Monomial, c: Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(ring);
        }
        Polynomial { ring: ring.clone(), terms: vec![(m, c)] }
    }

    /// Normalizes an unsorted term list (merges duplicates, drops zeros).
    pub fn from_terms(ring: &Arc<PolyRing>, terms: Vec<(Monomial, Scalar)>) -> Polynomial {
        let mut map: HashMap<Vec<u32>, Scalar> = HashMap::new();
        for (m, c) in terms {
            match map.get_mut(&m.0) {
                Some(acc) => *acc = acc.add(&c),
                None => {
                    map.insert(m.0, c);
                }
            }
        }
        let mut out: Vec<(Monomial, Scalar)> = map
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (Monomial(e), c))
            .collect();
        let ord = ring.order;
        out.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        Polynomial { ring: ring.clone(), terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Leading term under the ring order; `None` for the zero polynomial.
    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.total_degree() {
            None => true,
            Some(d) => self.terms.iter().all(|(m, _)| m.degree() == d),
        }
    }

    fn check_ctx(&self, rhs: &Polynomial) -> Result<(), Error> {
        if !self.ring.same_context(&rhs.ring) {
            return Err(Error::ContextMismatch(format!(
                "operands live in {} and {}",
                self.ring, rhs.ring
            )));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Polynomial) -> Result<Polynomial, Error> {
        self.check_ctx(rhs)?;
        let ord = self.ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < rhs.terms.len() {
            match ord.cmp(&self.terms[i].0, &rhs.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(rhs.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = self.terms[i].1.add(&rhs.terms[j].1);
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&rhs.terms[j..]);
        Ok(Polynomial { ring: self.ring.clone(), terms: out })
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, rhs: &Polynomial) -> Result<Polynomial, Error> {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k.mul(c))).collect(),
        }
    }

    /// Multiplies by the single term `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(mm, k)| (mm.mul(m), k.mul(c))).collect(),
        }
    }

    pub fn mul(&self, rhs: &Polynomial) -> Result<Polynomial, Error> {
        self.check_ctx(rhs)?;
        let mut acc: Vec<(Monomial, Scalar)> = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (m, c) in &self.terms {
            for (mm, cc) in &rhs.terms {
                acc.push((m.mul(mm), c.mul(cc)));
            }
        }
        Ok(Polynomial::from_terms(&self.ring, acc))
    }

    /// Scales so the leading coefficient becomes 1.
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul(self).unwrap();
        }
        acc
    }
}

fn monomial_text(ring: &PolyRing, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        if e == 1 {
            parts.push(ring.vars[i].clone());
        } else if e > 1 {
            parts.push(format!("{}^{}", ring.vars[i], e));
        }
    }
    parts.join("*")
}

impl fmt::Display for Polynomial {
    /// Canonical text: terms descending under the ring order; the output
    /// re-parses to the same polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative_literal();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs_literal();
            let mono = monomial_text(&self.ring, m);
            if mono.is_empty() {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", mono)?;
            } else {
                write!(f, "{}*{}", mag, mono)?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Parser.
//
// expr   := ('+'|'-')? term (('+'|'-') term)*
// term   := factor ('*' factor)*
// factor := coefficient | var ('^' uint)? | '(' expr ')'
// coefficient := uint ('/' uint)?
//
// Whitespace is insignificant; juxtaposition is not multiplication.
// ---------------------------------------------------------------------------

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Arc<PolyRing>,
}

const MAX_EXPONENT: u64 = 1 << 20;

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn parse_uint(&mut self) -> Result<u64, Error> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an unsigned integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse::<u64>()
            .map_err(|_| Error::Parse { pos: start, msg: "integer literal too large".into() })
    }

    fn parse_ident(&mut self) -> (usize, String) {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() {
            let c = self.src[self.pos];
            if c.is_ascii_alphanumeric() || c == b'_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        (start, String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn parse_factor(&mut self) -> Result<Polynomial, Error> {
        match self.peek() {
            None => Err(self.err("unexpected end of input")),
            Some(b'(') => {
                self.bump();
                let inner = self.parse_expr()?;
                match self.peek() {
                    Some(b')') => {
                        self.bump();
                        Ok(inner)
                    }
                    _ => Err(self.err("expected `)`")),
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.parse_uint()?;
                let den = if self.peek() == Some(b'/') {
                    self.bump();
                    let d = self.parse_uint()?;
                    if d == 0 {
                        return Err(self.err("zero denominator"));
                    }
                    d
                } else {
                    1
                };
                if num > i64::MAX as u64 {
                    return Err(self.err("integer literal too large"));
                }
                let c = self
                    .ring
                    .field
                    .from_fraction(num as i64, den)
                    .map_err(|e| match e {
                        Error::Precondition(m) => Error::Parse { pos: self.pos, msg: m },
                        other => other,
                    })?;
                Ok(Polynomial::constant(self.ring, c))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let (start, name) = self.parse_ident();
                let idx = self
                    .ring
                    .var_index(&name)
                    .ok_or(Error::UnknownVariable { pos: start, name: name.clone() })?;
                let exp = if self.peek() == Some(b'^') {
                    self.bump();
                    let e = self.parse_uint()?;
                    if e > MAX_EXPONENT {
                        return Err(self.err("exponent too large"));
                    }
                    e as u32
                } else {
                    1
                };
                let m = Monomial({
                    let mut v = vec![0u32; self.ring.nvars()];
                    v[idx] = exp;
                    v
                });
                Ok(Polynomial::monomial_term(self.ring, m, self.ring.field.one()))
            }
            Some(_) => Err(self.err("expected a coefficient, variable or `(`")),
        }
    }

    fn parse_term(&mut self) -> Result<Polynomial, Error> {
        let mut acc = self.parse_factor()?;
        while self.peek() == Some(b'*') {
            self.bump();
            let f = self.parse_factor()?;
            acc = acc.mul(&f)?;
        }
        Ok(acc)
    }

    fn parse_expr(&mut self) -> Result<Polynomial, Error> {
        let mut negate = false;
        match self.peek() {
            Some(b'+') => {
                self.bump();
            }
            Some(b'-') => {
                self.bump();
                negate = true;
            }
            _ => {}
        }
        let first = self.parse_term()?;
        let mut acc = if negate { first.neg() } else { first };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.bump();
                    let t = self.parse_term()?;
                    acc = acc.add(&t)?;
                }
                Some(b'-') => {
                    self.bump();
                    let t = self.parse_term()?;
                    acc = acc.sub(&t)?;
                }
                _ => return Ok(acc),
            }
        }
    }
}

/// Parses a polynomial in the grammar above; errors carry byte offsets.
pub fn parse_polynomial(src: &str, ring: &Arc<PolyRing>) -> Result<Polynomial, Error> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, ring };
    let poly = p.parse_expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(poly)
}
