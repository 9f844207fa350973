//! Sparse multivariate polynomials over F_p with graded term orders.

mod field;
mod monomial;
mod text;

use rustc_hash::FxHashMap;
use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

pub use field::Fp;
pub use monomial::{Monomial, TermOrder, MAX_EXP, MAX_VARS};

use crate::error::{Error, Result};

pub const DEFAULT_PRIME: u32 = 32003;

/// A polynomial ring `F_p[x_0, ..., x_{n-1}]` together with a term order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    names: Vec<String>,
    field: Fp,
    order: TermOrder,
}

impl Ring {
    pub fn new(names: Vec<String>, prime: u32, order: TermOrder) -> Result<Arc<Ring>> {
        if names.len() > MAX_VARS {
            return Err(Error::TooManyVariables {
                got: names.len(),
                max: MAX_VARS,
            });
        }
        for (i, n) in names.iter().enumerate() {
            if !text::is_identifier(n) {
                return Err(Error::InvalidArgument(format!("bad variable name `{}`", n)));
            }
            if names[..i].contains(n) {
                return Err(Error::DuplicateVariable(n.clone()));
            }
        }
        if let TermOrder::Block { front } = order {
            if front == 0 || front >= names.len() {
                return Err(Error::InvalidArgument(format!(
                    "block split {} is not a proper prefix of {} variables",
                    front,
                    names.len()
                )));
            }
        }
        Ok(Arc::new(Ring {
            names,
            field: Fp::new(prime)?,
            order,
        }))
    }

    /// `x0, ..., x{n-1}` with degrevlex.
    pub fn standard(n: usize, prime: u32) -> Result<Arc<Ring>> {
        Ring::new(
            (0..n).map(|i| format!("x{}", i)).collect(),
            prime,
            TermOrder::DegRevLex,
        )
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    #[inline]
    pub fn field(&self) -> Fp {
        self.field
    }

    #[inline]
    pub fn prime(&self) -> u32 {
        self.field.p()
    }

    #[inline]
    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn with_order(&self, order: TermOrder) -> Result<Arc<Ring>> {
        Ring::new(self.names.clone(), self.prime(), order)
    }

    pub fn with_names(&self, names: Vec<String>) -> Result<Arc<Ring>> {
        Ring::new(names, self.prime(), self.order)
    }

    /// Compare two monomials; errors if either uses variables outside the ring.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        for m in [a, b] {
            if let Some(v) = m.last_var() {
                if v >= self.nvars() {
                    return Err(Error::LengthMismatch(v + 1, self.nvars()));
                }
            }
        }
        Ok(self.order.cmp(a, b))
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b)
    }

    pub fn monomial(&self, exps: &[u32]) -> Result<Monomial> {
        if exps.len() != self.nvars() {
            return Err(Error::LengthMismatch(exps.len(), self.nvars()));
        }
        Monomial::from_exponents(exps)
    }

    /// All monomials of degree `d`, in increasing term order.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let n = self.nvars();
        if n == 0 {
            if d == 0 {
                out.push(Monomial::one());
            }
            return out;
        }
        let mut e = vec![0u32; n];
        fn rec(v: usize, left: u32, e: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if v + 1 == e.len() {
                e[v] = left;
                if let Ok(m) = Monomial::from_exponents(e) {
                    out.push(m);
                }
                return;
            }
            for k in 0..=left {
                e[v] = k;
                rec(v + 1, left - k, e, out);
            }
            e[v] = 0;
        }
        rec(0, d, &mut e, &mut out);
        out.sort_by(|a, b| self.cmp(a, b));
        out
    }

    pub fn header(&self) -> String {
        format!(
            "ring {} mod {} order {}",
            self.names.join(" "),
            self.prime(),
            self.order.name()
        )
    }
}

/// Number of monomials of degree `d` in `n` variables.
pub fn monomial_count(n: usize, d: i64) -> u64 {
    if d < 0 {
        return 0;
    }
    if n == 0 {
        return (d == 0) as u64;
    }
    binomial((d as u64) + n as u64 - 1, n as u64 - 1)
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r as u64
}

/// A coefficient together with its monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub c: u32,
    pub m: Monomial,
}

/// A polynomial: terms strictly descending in the ring's order, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, 1)
    }

    pub fn constant(ring: &Arc<Ring>, c: i64) -> Self {
        let c = ring.field().from_i64(c);
        let terms = if c == 0 {
            vec![]
        } else {
            vec![Term {
                c,
                m: Monomial::one(),
            }]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn var(ring: &Arc<Ring>, v: usize) -> Self {
        assert!(v < ring.nvars());
        Polynomial {
            ring: ring.clone(),
            terms: vec![Term {
                c: 1,
                m: Monomial::var(v),
            }],
        }
    }

    pub fn monomial(ring: &Arc<Ring>, c: u32, m: Monomial) -> Self {
        let c = c % ring.prime();
        let terms = if c == 0 { vec![] } else { vec![Term { c, m }] };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Build from arbitrary terms: sorts, merges duplicates, drops zeros.
    pub fn from_terms(ring: &Arc<Ring>, terms: Vec<Term>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: canonicalize(ring, terms),
        }
    }

    /// Wrap terms that are already canonical.
    pub fn from_sorted_terms(ring: &Arc<Ring>, terms: Vec<Term>) -> Self {
        debug_assert!(is_canonical(ring, &terms));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn parse(ring: &Arc<Ring>, s: &str) -> Result<Self> {
        text::parse(ring, s)
    }

    #[inline]
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    #[inline]
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn lead_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.m)
    }

    /// Total degree of the leading term (the degree, for homogeneous input).
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(t) => self.terms.iter().all(|s| s.m.degree() == t.m.degree()),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.m.is_one())
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms: add_terms(&self.ring, &self.terms, &other.terms),
        })
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.add_unchecked(&other.neg()))
    }

    fn add_unchecked(&self, other: &Polynomial) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: add_terms(&self.ring, &self.terms, &other.terms),
        }
    }

    pub fn neg(&self) -> Polynomial {
        let f = self.ring.field();
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    c: f.neg(t.c),
                    m: t.m,
                })
                .collect(),
        }
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let f = self.ring.field();
        let c = c % f.p();
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    c: f.mul(t.c, c),
                    m: t.m,
                })
                .collect(),
        }
    }

    /// `c * m * self`.
    pub fn mul_term(&self, c: u32, m: &Monomial) -> Result<Polynomial> {
        let f = self.ring.field();
        let c = c % f.p();
        if c == 0 {
            return Ok(Polynomial::zero(&self.ring));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            terms.push(Term {
                c: f.mul(t.c, c),
                m: t.m.checked_mul(m).ok_or(Error::ExponentOverflow)?,
            });
        }
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let f = self.ring.field();
        let mut acc: FxHashMap<Monomial, u32> =
            FxHashMap::with_capacity_and_hasher(self.len() * other.len(), Default::default());
        for a in &self.terms {
            for b in &other.terms {
                let m = a.m.checked_mul(&b.m).ok_or(Error::ExponentOverflow)?;
                let e = acc.entry(m).or_insert(0);
                *e = f.add(*e, f.mul(a.c, b.c));
            }
        }
        let terms = acc.into_iter().map(|(m, c)| Term { c, m }).collect();
        Ok(Polynomial::from_terms(&self.ring, terms))
    }

    pub fn pow(&self, k: u32) -> Result<Polynomial> {
        let mut r = Polynomial::one(&self.ring);
        for _ in 0..k {
            r = r.mul(self)?;
        }
        Ok(r)
    }

    pub fn make_monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some(t) => self.scale(self.ring.field().inv(t.c)),
        }
    }

    /// Evaluate at a point of F_p^n.
    pub fn eval(&self, point: &[u32]) -> Result<u32> {
        if point.len() != self.ring.nvars() {
            return Err(Error::LengthMismatch(point.len(), self.ring.nvars()));
        }
        let f = self.ring.field();
        let mut acc = 0u32;
        for t in &self.terms {
            let mut v = t.c;
            for (i, e) in t.m.support() {
                v = f.mul(v, f.pow(point[i] % f.p(), e as u64));
            }
            acc = f.add(acc, v);
        }
        Ok(acc)
    }

    /// Substitute `x_v -> sum_w matrix[v][w] x_w` for every variable.
    pub fn apply_linear_change(&self, matrix: &[Vec<u32>]) -> Result<Polynomial> {
        let change = LinearChange::new(&self.ring, matrix)?;
        Ok(change.apply(self))
    }

    /// Substitute `x_v -> images[v]`, all images living in `target`.
    pub fn substitute(&self, target: &Arc<Ring>, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.nvars() {
            return Err(Error::LengthMismatch(images.len(), self.ring.nvars()));
        }
        if images.iter().any(|p| p.ring() != target) || target.prime() != self.ring.prime() {
            return Err(Error::RingMismatch);
        }
        let mut powers: FxHashMap<(usize, u32), Polynomial> = FxHashMap::default();
        let mut acc = Polynomial::zero(target);
        for t in &self.terms {
            let mut prod = Polynomial::constant(target, t.c as i64);
            for (v, e) in t.m.support() {
                if !powers.contains_key(&(v, e)) {
                    let p = images[v].pow(e)?;
                    powers.insert((v, e), p);
                }
                prod = prod.mul(&powers[&(v, e)])?;
            }
            acc = acc.add(&prod)?;
        }
        Ok(acc)
    }

    /// Reinterpret in another ring with the same number of variables (re-sorting terms).
    pub fn to_ring(&self, ring: &Arc<Ring>) -> Result<Polynomial> {
        if ring.nvars() != self.ring.nvars() || ring.prime() != self.ring.prime() {
            return Err(Error::RingMismatch);
        }
        Ok(Polynomial::from_terms(ring, self.terms.clone()))
    }

    /// Map monomials with `f` into `ring` (which may have a different variable count).
    pub fn map_monomials(&self, ring: &Arc<Ring>, f: impl Fn(&Monomial) -> Monomial) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|t| Term { c: t.c, m: f(&t.m) })
            .collect();
        Polynomial::from_terms(ring, terms)
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.terms.iter().any(|t| t.m.exp(v) > 0)
    }

    /// Coefficient of `m` (zero if absent).
    pub fn coeff(&self, m: &Monomial) -> u32 {
        self.terms
            .binary_search_by(|t| self.ring.cmp(m, &t.m))
            .map(|i| self.terms[i].c)
            .unwrap_or(0)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::print(self))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", text::print(self))
    }
}

/// Sort descending, merge equal monomials, drop zeros.
pub fn canonicalize(ring: &Ring, mut terms: Vec<Term>) -> Vec<Term> {
    let f = ring.field();
    terms.sort_by(|a, b| ring.cmp(&b.m, &a.m));
    let mut out: Vec<Term> = Vec::with_capacity(terms.len());
    for t in terms {
        let c = t.c % f.p();
        match out.last_mut() {
            Some(last) if last.m == t.m => last.c = f.add(last.c, c),
            _ => out.push(Term { c, m: t.m }),
        }
        if out.last().map_or(false, |l| l.c == 0) {
            out.pop();
        }
    }
    out
}

pub fn is_canonical(ring: &Ring, terms: &[Term]) -> bool {
    terms.iter().all(|t| t.c != 0 && t.c < ring.prime())
        && terms
            .windows(2)
            .all(|w| ring.cmp(&w[0].m, &w[1].m) == Ordering::Greater)
}

/// Merge two canonical term lists.
pub fn add_terms(ring: &Ring, a: &[Term], b: &[Term]) -> Vec<Term> {
    let f = ring.field();
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match ring.cmp(&a[i].m, &b[j].m) {
            Ordering::Greater => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Less => {
                out.push(b[j]);
                j += 1;
            }
            Ordering::Equal => {
                let c = f.add(a[i].c, b[j].c);
                if c != 0 {
                    out.push(Term { c, m: a[i].m });
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// `a + c * m * b` on canonical term lists.
pub fn add_scaled(ring: &Ring, a: &[Term], c: u32, m: &Monomial, b: &[Term]) -> Vec<Term> {
    let f = ring.field();
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    for t in b {
        let tm = t.m.mul(m);
        let tc = f.mul(t.c, c);
        while i < a.len() && ring.cmp(&a[i].m, &tm) == Ordering::Greater {
            out.push(a[i]);
            i += 1;
        }
        if i < a.len() && a[i].m == tm {
            let s = f.add(a[i].c, tc);
            if s != 0 {
                out.push(Term { c: s, m: tm });
            }
            i += 1;
        } else if tc != 0 {
            out.push(Term { c: tc, m: tm });
        }
    }
    out.extend_from_slice(&a[i..]);
    out
}

/// A linear form `sum_v c_v x_v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct LinearForm {
    pub coeffs: Vec<u32>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<u32>) -> Self {
        LinearForm { coeffs }
    }

    pub fn var(n: usize, v: usize) -> Self {
        let mut coeffs = vec![0; n];
        coeffs[v] = 1;
        LinearForm { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        LinearForm { coeffs: vec![0; n] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, f: Fp, point: &[u32]) -> u32 {
        self.coeffs
            .iter()
            .zip(point)
            .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b % f.p())))
    }

    pub fn add(&self, f: Fp, other: &LinearForm) -> LinearForm {
        LinearForm {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, f: Fp, c: u32) -> LinearForm {
        LinearForm {
            coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// `self + c * other`.
    pub fn axpy(&self, f: Fp, c: u32, other: &LinearForm) -> LinearForm {
        LinearForm {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f.add(a, f.mul(c, b)))
                .collect(),
        }
    }

    pub fn to_polynomial(&self, ring: &Arc<Ring>) -> Polynomial {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(v, &c)| Term {
                c,
                m: Monomial::var(v),
            })
            .collect();
        Polynomial::from_terms(ring, terms)
    }

    pub fn from_polynomial(p: &Polynomial) -> Result<LinearForm> {
        let mut coeffs = vec![0; p.ring().nvars()];
        for t in p.terms() {
            if t.m.degree() != 1 {
                return Err(Error::InvalidArgument(format!(
                    "`{}` is not a linear form",
                    p
                )));
            }
            coeffs[t.m.last_var().unwrap()] = t.c;
        }
        Ok(LinearForm { coeffs })
    }
}

/// A cached invertible substitution `x_v -> sum_w a_{vw} x_w`.
pub struct LinearChange {
    ring: Arc<Ring>,
    images: Vec<Polynomial>,
    powers: std::cell::RefCell<FxHashMap<(usize, u32), Polynomial>>,
}

impl LinearChange {
    pub fn new(ring: &Arc<Ring>, matrix: &[Vec<u32>]) -> Result<Self> {
        let n = ring.nvars();
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument(format!(
                "substitution matrix must be {}x{}",
                n, n
            )));
        }
        let f = ring.field();
        let reduced: Vec<Vec<u32>> = matrix
            .iter()
            .map(|r| r.iter().map(|&c| c % f.p()).collect())
            .collect();
        if crate::linalg::rank_dense(f, reduced.clone()) < n {
            return Err(Error::SingularMatrix);
        }
        let images = reduced
            .into_iter()
            .map(|r| LinearForm::new(r).to_polynomial(ring))
            .collect();
        Ok(LinearChange {
            ring: ring.clone(),
            images,
            powers: Default::default(),
        })
    }

    fn power(&self, v: usize, e: u32) -> Polynomial {
        if let Some(p) = self.powers.borrow().get(&(v, e)) {
            return p.clone();
        }
        let p = if e == 1 {
            self.images[v].clone()
        } else {
            self.power(v, e - 1)
                .mul(&self.images[v])
                .expect("same ring")
        };
        self.powers.borrow_mut().insert((v, e), p.clone());
        p
    }

    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        let f = self.ring.field();
        let mut acc: FxHashMap<Monomial, u32> = FxHashMap::default();
        for t in p.terms() {
            let mut prod = Polynomial::constant(&self.ring, t.c as i64);
            for (v, e) in t.m.support() {
                prod = prod.mul(&self.power(v, e)).expect("same ring");
            }
            for s in prod.terms() {
                let e = acc.entry(s.m).or_insert(0);
                *e = f.add(*e, s.c);
            }
        }
        Polynomial::from_terms(
            &self.ring,
            acc.into_iter().map(|(m, c)| Term { c, m }).collect(),
        )
    }
}

/// Inverse of a square matrix over F_p.
pub fn invert_matrix(f: Fp, m: &[Vec<u32>]) -> Result<Vec<Vec<u32>>> {
    let n = m.len();
    let mut a: Vec<Vec<u32>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<u32> = r.iter().map(|&c| c % f.p()).collect();
            row.extend((0..n).map(|j| (i == j) as u32));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| a[r][col] != 0)
            .ok_or(Error::SingularMatrix)?;
        a.swap(col, piv);
        let inv = f.inv(a[col][col]);
        for x in a[col].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for r in 0..n {
            if r != col && a[r][col] != 0 {
                let c = a[r][col];
                for k in 0..2 * n {
                    let v = f.mul(c, a[col][k]);
                    a[r][k] = f.sub(a[r][k], v);
                }
            }
        }
    }
    Ok(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(n: usize, p: u32) -> Arc<Ring> {
        Ring::standard(n, p).unwrap()
    }

    #[test]
    fn addition_examples() {
        let r = ring(2, 32003);
        let f = Polynomial::parse(&r, "x0 + x1").unwrap();
        let g = Polynomial::parse(&r, "32002*x1").unwrap();
        assert_eq!(f.add(&g).unwrap(), Polynomial::var(&r, 0));
        assert_eq!(f.add(&Polynomial::zero(&r)).unwrap(), f);
        let r2 = ring(1, 3);
        let x = Polynomial::var(&r2, 0);
        let three_x = x.add(&x).unwrap().add(&x).unwrap();
        assert!(three_x.is_zero());
    }

    #[test]
    fn multiplication_examples() {
        let r = ring(2, 32003);
        let a = Polynomial::parse(&r, "x0 + x1").unwrap();
        let b = Polynomial::parse(&r, "x0 - x1").unwrap();
        assert_eq!(
            a.mul(&b).unwrap(),
            Polynomial::parse(&r, "x0^2 - x1^2").unwrap()
        );
        assert_eq!(a.mul(&Polynomial::one(&r)).unwrap(), a);
        let r5 = Ring::new(vec!["x".into()], 5, TermOrder::DegRevLex).unwrap();
        let f = Polynomial::parse(&r5, "x + 1").unwrap();
        assert_eq!(
            f.pow(5).unwrap(),
            Polynomial::parse(&r5, "x^5 + 1").unwrap()
        );
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let a = Polynomial::var(&ring(2, 32003), 0);
        let b = Polynomial::var(&ring(3, 32003), 0);
        assert_eq!(a.add(&b), Err(Error::RingMismatch));
    }

    #[test]
    fn compare_checks_lengths() {
        let r = ring(2, 32003);
        let m = Monomial::from_exponents(&[0, 0, 1]).unwrap();
        assert!(r.compare(&m, &Monomial::one()).is_err());
    }

    #[test]
    fn linear_change_examples() {
        let r = ring(2, 32003);
        let f = Polynomial::parse(&r, "x0^2").unwrap();
        let id = vec![vec![1, 0], vec![0, 1]];
        assert_eq!(f.apply_linear_change(&id).unwrap(), f);
        let swap = vec![vec![0, 1], vec![1, 0]];
        assert_eq!(
            f.apply_linear_change(&swap).unwrap(),
            Polynomial::parse(&r, "x1^2").unwrap()
        );
        let sing = vec![vec![1, 1], vec![2, 2]];
        assert_eq!(f.apply_linear_change(&sing), Err(Error::SingularMatrix));
    }

    #[test]
    fn monomials_of_degree_counts() {
        let r = ring(4, 32003);
        assert_eq!(r.monomials_of_degree(3).len() as u64, monomial_count(4, 3));
        assert_eq!(monomial_count(13, 2), 91);
    }

    #[test]
    fn inverse_matrix() {
        let f = Fp::new(101).unwrap();
        let m = vec![vec![1, 2], vec![3, 4]];
        let inv = invert_matrix(f, &m).unwrap();
        let prod: Vec<Vec<u32>> = (0..2)
            .map(|i| {
                (0..2)
                    .map(|j| (0..2).fold(0, |a, k| f.add(a, f.mul(m[i][k], inv[k][j]))))
                    .collect()
            })
            .collect();
        assert_eq!(prod, vec![vec![1, 0], vec![0, 1]]);
    }
}
