//! Gröbner bases of homogeneous ideals and submodules, with elimination,
//! ideal quotients, saturation and syzygies.

pub(crate) mod engine;
pub mod io;

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::linalg::SparseEchelon;
use crate::polyring::{Monomial, Polynomial, Ring, Term, TermOrder};

use engine::Basis;
pub use engine::{MTerm, ModOrder, Vector};
pub use io::{parse_ideal_file, write_ideal_file};

/// A homogeneous ideal with a lazily computed reduced Gröbner basis.
#[derive(Debug)]
pub struct GradedIdeal {
    ring: Arc<Ring>,
    gens: Vec<Polynomial>,
    gb: OnceLock<Vec<Polynomial>>,
}

impl Clone for GradedIdeal {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(g) = self.gb.get() {
            let _ = gb.set(g.clone());
        }
        GradedIdeal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            gb,
        }
    }
}

impl PartialEq for GradedIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.groebner_basis() == other.groebner_basis()
    }
}

pub(crate) fn to_vector(p: &Polynomial, comp: u32) -> Vector {
    p.terms()
        .iter()
        .map(|t| MTerm {
            c: t.c,
            m: t.m,
            comp,
        })
        .collect()
}

pub(crate) fn from_vector(ring: &Arc<Ring>, v: &[MTerm]) -> Polynomial {
    Polynomial::from_sorted_terms(ring, v.iter().map(|t| Term { c: t.c, m: t.m }).collect())
}

impl GradedIdeal {
    pub fn new(ring: &Arc<Ring>, gens: Vec<Polynomial>) -> Result<Self> {
        let mut out = Vec::with_capacity(gens.len());
        for g in gens {
            if g.ring() != ring {
                return Err(Error::RingMismatch);
            }
            if !g.is_homogeneous() {
                return Err(Error::NotHomogeneous);
            }
            if !g.is_zero() {
                out.push(g);
            }
        }
        Ok(GradedIdeal {
            ring: ring.clone(),
            gens: out,
            gb: OnceLock::new(),
        })
    }

    pub fn parse(ring: &Arc<Ring>, gens: &[&str]) -> Result<Self> {
        let polys = gens
            .iter()
            .map(|s| Polynomial::parse(ring, s))
            .collect::<Result<Vec<_>>>()?;
        GradedIdeal::new(ring, polys)
    }

    /// Ideal whose generators are already a reduced Gröbner basis.
    pub(crate) fn from_reduced_gb(ring: &Arc<Ring>, gb: Vec<Polynomial>) -> Self {
        let cell = OnceLock::new();
        let _ = cell.set(gb.clone());
        GradedIdeal {
            ring: ring.clone(),
            gens: gb,
            gb: cell,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Reduced Gröbner basis for the ring's term order, sorted by increasing lead.
    pub fn groebner_basis(&self) -> &[Polynomial] {
        self.gb.get_or_init(|| {
            let ord = ModOrder::top(self.ring.order(), 1);
            let gens = self.gens.iter().map(|g| to_vector(g, 0)).collect();
            engine::groebner(&self.ring, &ord, &[0], gens)
                .into_iter()
                .map(|v| from_vector(&self.ring, &v))
                .collect()
        })
    }

    pub fn is_unit(&self) -> bool {
        self.groebner_basis().iter().any(|g| g.is_constant())
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        normal_form(f, self.groebner_basis())
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &GradedIdeal) -> Result<bool> {
        for g in other.gens() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Leading monomials of the Gröbner basis.
    pub fn lead_monomials(&self) -> Vec<Monomial> {
        self.groebner_basis()
            .iter()
            .map(|g| g.lead_monomial().unwrap())
            .collect()
    }

    /// A minimal homogeneous generating set, chosen from the Gröbner basis.
    pub fn minimal_generators(&self) -> Vec<Polynomial> {
        let vs: Vec<Vector> = self
            .groebner_basis()
            .iter()
            .map(|g| to_vector(g, 0))
            .collect();
        let keep = minimal_subset(&self.ring, &[0], &vs);
        keep.into_iter()
            .map(|i| self.groebner_basis()[i].clone())
            .collect()
    }

    /// Number of minimal generators in each degree.
    pub fn generator_degrees(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for g in self.minimal_generators() {
            let d = g.degree().unwrap();
            match out.iter_mut().find(|x| x.0 == d) {
                Some(x) => x.1 += 1,
                None => out.push((d, 1)),
            }
        }
        out.sort();
        out
    }

    /// `dim_k I_d`, read off the lead-term ideal.
    pub fn dim_in_degree(&self, d: u32) -> u64 {
        let leads = self.lead_monomials();
        let all = crate::polyring::monomial_count(self.ring.nvars(), d as i64);
        let std = crate::resolve::hilbert::standard_monomial_count(self.ring.nvars(), &leads, d);
        all - std
    }

    /// Same ideal viewed in a ring with a different term order.
    pub fn with_order(&self, order: TermOrder) -> Result<GradedIdeal> {
        let r = self.ring.with_order(order)?;
        let gens = self
            .gens
            .iter()
            .map(|g| g.to_ring(&r))
            .collect::<Result<Vec<_>>>()?;
        GradedIdeal::new(&r, gens)
    }

    /// Apply the substitution `x_v -> sum_w m[v][w] x_w` to every generator.
    pub fn apply_linear_change(&self, m: &[Vec<u32>]) -> Result<GradedIdeal> {
        let ch = crate::polyring::LinearChange::new(&self.ring, m)?;
        GradedIdeal::new(&self.ring, self.gens.iter().map(|g| ch.apply(g)).collect())
    }

    pub fn sum(&self, other: &GradedIdeal) -> Result<GradedIdeal> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        GradedIdeal::new(&self.ring, g)
    }

    pub fn is_homogeneous_prime_candidate(&self) -> bool {
        !self.is_zero() && !self.is_unit()
    }
}

/// Reduced Gröbner basis of an ideal (cached on the ideal).
pub fn groebner_basis(ideal: &GradedIdeal) -> Vec<Polynomial> {
    ideal.groebner_basis().to_vec()
}

/// Normal form of `f` modulo a reduced Gröbner basis in the same ring.
pub fn normal_form(f: &Polynomial, gb: &[Polynomial]) -> Result<Polynomial> {
    let ring = f.ring();
    for g in gb {
        if g.ring() != ring {
            return Err(Error::RingMismatch);
        }
    }
    let ord = ModOrder::top(ring.order(), 1);
    let basis = Basis::from_vectors(
        1,
        gb.iter()
            .filter(|g| !g.is_zero())
            .map(|g| monic_vector(g))
            .collect(),
    );
    let nf = engine::normal_form(ring.field(), &ord, &basis, &to_vector(f, 0), false);
    Ok(from_vector(ring, &nf))
}

fn monic_vector(g: &Polynomial) -> Vector {
    let mut v = to_vector(g, 0);
    engine::make_monic(g.ring().field(), &mut v);
    v
}

/// Indices of a minimal generating subset of homogeneous vectors.
pub(crate) fn minimal_subset(ring: &Arc<Ring>, twists: &[i32], gens: &[Vector]) -> Vec<usize> {
    let f = ring.field();
    let ord = ModOrder::top(ring.order(), twists.len());
    let mut idx: Vec<usize> = (0..gens.len()).filter(|&i| !gens[i].is_empty()).collect();
    idx.sort_by_key(|&i| (engine::vector_degree(&gens[i], twists).unwrap(), i));
    let mut chosen: Vec<usize> = Vec::new();
    let mut k = 0;
    while k < idx.len() {
        let d = engine::vector_degree(&gens[idx[k]], twists).unwrap();
        let mut end = k;
        while end < idx.len() && engine::vector_degree(&gens[idx[end]], twists).unwrap() == d {
            end += 1;
        }
        let lower: Vec<Vector> = chosen.iter().map(|&i| gens[i].clone()).collect();
        let gb = engine::groebner(ring, &ord, twists, lower);
        let basis = Basis::from_vectors(twists.len(), gb);
        // columns: distinct (monomial, comp) keys of the normal forms in this degree
        let mut keys: Vec<(Monomial, u32)> = Vec::new();
        let mut nfs: Vec<Vector> = Vec::new();
        for &i in &idx[k..end] {
            let nf = engine::normal_form(f, &ord, &basis, &gens[i], false);
            for t in &nf {
                keys.push((t.m, t.comp));
            }
            nfs.push(nf);
        }
        keys.sort();
        keys.dedup();
        let mut ech = SparseEchelon::new(f, keys.len());
        for (j, nf) in nfs.into_iter().enumerate() {
            let mut row: Vec<(u32, u32)> = nf
                .iter()
                .map(|t| (keys.binary_search(&(t.m, t.comp)).unwrap() as u32, t.c))
                .collect();
            row.sort_unstable();
            if ech.insert(row) {
                chosen.push(idx[k + j]);
            }
        }
        k = end;
    }
    chosen
}

/// Ring on the variables outside `front`, in their original order, with degrevlex.
fn back_ring(ring: &Ring, front: &[usize]) -> Result<Arc<Ring>> {
    let names = (0..ring.nvars())
        .filter(|v| !front.contains(v))
        .map(|v| ring.names()[v].clone())
        .collect();
    Ring::new(names, ring.prime(), TermOrder::DegRevLex)
}

/// Intersection of the ideal with the subring of the variables not in `front_vars`.
///
/// Computed with a block order whose first block is `front_vars`; the result
/// lives in the ring of the remaining variables (names kept).
pub fn eliminate(ideal: &GradedIdeal, front_vars: &[usize]) -> Result<GradedIdeal> {
    let ring = ideal.ring();
    let n = ring.nvars();
    let mut front: Vec<usize> = front_vars.to_vec();
    front.sort_unstable();
    front.dedup();
    if front.is_empty() || front.len() >= n || front.iter().any(|&v| v >= n) {
        return Err(Error::InvalidArgument(
            "elimination set must be a nonempty proper subset of the variables".into(),
        ));
    }
    let back: Vec<usize> = (0..n).filter(|v| !front.contains(v)).collect();
    // perm[v] = position of v in the block ring
    let mut perm = vec![0usize; n];
    for (pos, &v) in front.iter().chain(back.iter()).enumerate() {
        perm[v] = pos;
    }
    let mut names = vec![String::new(); n];
    for v in 0..n {
        names[perm[v]] = ring.names()[v].clone();
    }
    let block = Ring::new(names, ring.prime(), TermOrder::Block { front: front.len() })?;
    let gens: Vec<Polynomial> = ideal
        .gens()
        .iter()
        .map(|g| g.map_monomials(&block, |m| m.permuted(&perm)))
        .collect();
    let bi = GradedIdeal::new(&block, gens)?;
    let target = back_ring(ring, &front)?;
    let k = front.len();
    let mut kept = Vec::new();
    for g in bi.groebner_basis() {
        if g.terms().iter().all(|t| (0..k).all(|v| t.m.exp(v) == 0)) {
            let mut p = g.clone();
            for _ in 0..k {
                p = p.map_monomials(&block, |m| m.remove_var(0));
            }
            kept.push(Polynomial::from_terms(&target, p.into_terms()));
        }
    }
    kept.sort_by(|a, b| target.cmp(&a.lead_monomial().unwrap(), &b.lead_monomial().unwrap()));
    Ok(GradedIdeal::from_reduced_gb(&target, kept))
}

/// Kernel-style helper: GB of vectors in a module whose first `hi` components are
/// on an upper elimination level; returns the GB elements living entirely on the lower level.
fn lower_level_part(ring: &Arc<Ring>, twists: &[i32], hi: usize, gens: Vec<Vector>) -> Vec<Vector> {
    let mut ord = ModOrder::top(ring.order(), twists.len());
    for l in ord.levels.iter_mut().take(hi) {
        *l = 1;
    }
    let gb = engine::groebner(ring, &ord, twists, gens);
    gb.into_iter()
        .filter(|v| v[0].comp as usize >= hi)
        .collect()
}

/// `(I : f)`.
pub fn quotient_by(ideal: &GradedIdeal, f: &Polynomial) -> Result<GradedIdeal> {
    let ring = ideal.ring();
    if f.is_zero() {
        return Err(Error::InvalidArgument("quotient by zero".into()));
    }
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let df = f.degree().unwrap() as i32;
    // (f, 1) and (i, 0) in S(0) + S(-deg f)
    let mut gens = Vec::new();
    let mut v = to_vector(f, 0);
    v.push(MTerm {
        c: 1,
        m: Monomial::one(),
        comp: 1,
    });
    gens.push(v);
    for g in ideal.gens() {
        gens.push(to_vector(g, 0));
    }
    let part = lower_level_part(ring, &[0, df], 1, gens);
    let polys: Vec<Polynomial> = part
        .iter()
        .map(|v| {
            Polynomial::from_sorted_terms(ring, v.iter().map(|t| Term { c: t.c, m: t.m }).collect())
        })
        .collect();
    let q = GradedIdeal::new(ring, polys)?;
    Ok(reduced(&q))
}

fn reduced(i: &GradedIdeal) -> GradedIdeal {
    GradedIdeal::from_reduced_gb(i.ring(), i.groebner_basis().to_vec())
}

/// `I ∩ J`.
pub fn intersect(a: &GradedIdeal, b: &GradedIdeal) -> Result<GradedIdeal> {
    let ring = a.ring();
    if ring != b.ring() {
        return Err(Error::RingMismatch);
    }
    // generators (1,1,1), (i,0,0), (0,j,0) in S^2 + S; the third coordinate of
    // the part with vanishing first two coordinates is I ∩ J
    let mut gens = Vec::new();
    gens.push(vec![
        MTerm {
            c: 1,
            m: Monomial::one(),
            comp: 0,
        },
        MTerm {
            c: 1,
            m: Monomial::one(),
            comp: 1,
        },
        MTerm {
            c: 1,
            m: Monomial::one(),
            comp: 2,
        },
    ]);
    for g in a.gens() {
        gens.push(to_vector(g, 0));
    }
    for g in b.gens() {
        gens.push(to_vector(g, 1));
    }
    let ord_twists = [0, 0, 0];
    let gens = gens
        .into_iter()
        .map(|v| engine::canonical_vector(ring.field(), &pos_order(ring, 3, 2), v))
        .collect();
    let part = lower_level_part(ring, &ord_twists, 2, gens);
    let polys = part.iter().map(|v| from_vector(ring, v)).collect();
    Ok(reduced(&GradedIdeal::new(ring, polys)?))
}

fn pos_order(ring: &Ring, rank: usize, hi: usize) -> ModOrder {
    let mut ord = ModOrder::top(ring.order(), rank);
    for l in ord.levels.iter_mut().take(hi) {
        *l = 1;
    }
    ord
}

/// `(I : J) = ∩_g (I : g)` over the generators of `J`.
pub fn ideal_quotient(i: &GradedIdeal, j: &GradedIdeal) -> Result<GradedIdeal> {
    if j.is_zero() {
        return Err(Error::InvalidArgument("quotient by the zero ideal".into()));
    }
    let mut acc: Option<GradedIdeal> = None;
    for g in j.gens() {
        let q = quotient_by(i, g)?;
        acc = Some(match acc {
            None => q,
            Some(a) => intersect(&a, &q)?,
        });
    }
    Ok(acc.unwrap())
}

/// `(I : f^∞)`.
pub fn saturate(ideal: &GradedIdeal, f: &Polynomial) -> Result<GradedIdeal> {
    if f.is_zero() {
        return Err(Error::InvalidArgument("saturation by zero".into()));
    }
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    if f.is_constant() {
        return Ok(reduced(ideal));
    }
    if f.degree() == Some(1) && ideal.ring().order() == TermOrder::DegRevLex {
        return saturate_linear(ideal, f);
    }
    let mut cur = reduced(ideal);
    loop {
        let next = quotient_by(&cur, f)?;
        if next.groebner_basis() == cur.groebner_basis() {
            return Ok(cur);
        }
        cur = next;
    }
}

/// Saturation by a linear form: make it the last variable and divide the
/// degrevlex Gröbner basis by the largest power of that variable.
fn saturate_linear(ideal: &GradedIdeal, f: &Polynomial) -> Result<GradedIdeal> {
    let ring = ideal.ring();
    let n = ring.nvars();
    let fld = ring.field();
    let l = crate::polyring::LinearForm::from_polynomial(f)?;
    let v = (0..n).rev().find(|&v| l.coeffs[v] != 0).unwrap();
    // variables permuted so that v is last
    let mut perm: Vec<usize> = (0..n).collect();
    perm.remove(v);
    perm.push(v);
    // substitution x_v -> (y - sum_{w != v} l_w x_w) / l_v, expressed on positions
    let inv = fld.inv(l.coeffs[v]);
    let mut mat = vec![vec![0u32; n]; n];
    for w in 0..n {
        if w == v {
            for u in 0..n {
                mat[v][u] = if u == v {
                    inv
                } else {
                    fld.neg(fld.mul(inv, l.coeffs[u]))
                };
            }
        } else {
            mat[w][w] = 1;
        }
    }
    let changed = ideal.apply_linear_change(&mat)?;
    // permute v to the end
    let mut pos = vec![0usize; n];
    for (p, &w) in perm.iter().enumerate() {
        pos[w] = p;
    }
    let names: Vec<String> = perm.iter().map(|&w| ring.names()[w].clone()).collect();
    let pr = Ring::new(names, ring.prime(), TermOrder::DegRevLex)?;
    let pgens: Vec<Polynomial> = changed
        .gens()
        .iter()
        .map(|g| g.map_monomials(&pr, |m| m.permuted(&pos)))
        .collect();
    let pi = GradedIdeal::new(&pr, pgens)?;
    let last = n - 1;
    let divided: Vec<Polynomial> = pi
        .groebner_basis()
        .iter()
        .map(|g| {
            let k = g.terms().iter().map(|t| t.m.exp(last)).min().unwrap_or(0);
            let d = Monomial::var_pow(last, k).unwrap();
            g.map_monomials(&pr, |m| m.div(&d))
        })
        .collect();
    // back to the original variable positions, then undo the substitution
    let mut back = vec![0usize; n];
    for (p, &w) in perm.iter().enumerate() {
        back[p] = w;
    }
    let gens: Vec<Polynomial> = divided
        .iter()
        .map(|g| g.map_monomials(ring, |m| m.permuted(&back)))
        .collect();
    let mut undo = vec![vec![0u32; n]; n];
    for w in 0..n {
        if w == v {
            undo[v] = l.coeffs.clone();
        } else {
            undo[w][w] = 1;
        }
    }
    let ch = crate::polyring::LinearChange::new(ring, &undo)?;
    let res = GradedIdeal::new(ring, gens.iter().map(|g| ch.apply(g)).collect())?;
    Ok(reduced(&res))
}

/// Saturation with respect to the irrelevant ideal, via a seeded random linear form.
pub fn saturate_irrelevant(ideal: &GradedIdeal, seed: u64) -> Result<GradedIdeal> {
    use rand::{Rng, SeedableRng};
    let ring = ideal.ring();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let coeffs: Vec<u32> = (0..ring.nvars())
        .map(|_| rng.gen_range(1..ring.prime()))
        .collect();
    let l = crate::polyring::LinearForm::new(coeffs).to_polynomial(ring);
    saturate(ideal, &l)
}

/// A graded free module `⊕ S(-twists[c])`, written by the degrees of its basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModule {
    pub ring: Arc<Ring>,
    pub twists: Vec<i32>,
}

impl FreeModule {
    pub fn new(ring: &Arc<Ring>, twists: Vec<i32>) -> Self {
        FreeModule {
            ring: ring.clone(),
            twists,
        }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }
}

/// An element of a graded free module, one polynomial per basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModuleElement {
    pub entries: Vec<Polynomial>,
}

impl FreeModuleElement {
    pub fn new(entries: Vec<Polynomial>) -> Self {
        FreeModuleElement { entries }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    /// Degree with respect to the given twists, if the element is homogeneous and nonzero.
    pub fn degree(&self, twists: &[i32]) -> Option<i32> {
        let mut d = None;
        for (c, p) in self.entries.iter().enumerate() {
            for t in p.terms() {
                let e = t.m.degree() as i32 + twists[c];
                match d {
                    None => d = Some(e),
                    Some(x) if x != e => return None,
                    _ => {}
                }
            }
        }
        d
    }

    pub(crate) fn to_vector(&self, ord: &ModOrder) -> Vector {
        let mut v = Vec::new();
        for (c, p) in self.entries.iter().enumerate() {
            v.extend(p.terms().iter().map(|t| MTerm {
                c: t.c,
                m: t.m,
                comp: c as u32,
            }));
        }
        let f = self.entries.first().map(|p| p.ring().field());
        match f {
            Some(f) => engine::canonical_vector(f, ord, v),
            None => v,
        }
    }

    pub(crate) fn from_vector(ring: &Arc<Ring>, rank: usize, v: &[MTerm]) -> Self {
        let mut buckets: Vec<Vec<Term>> = vec![Vec::new(); rank];
        for t in v {
            buckets[t.comp as usize].push(Term { c: t.c, m: t.m });
        }
        FreeModuleElement {
            entries: buckets
                .into_iter()
                .map(|b| Polynomial::from_terms(ring, b))
                .collect(),
        }
    }
}

/// A submodule of a graded free module given by homogeneous generators.
#[derive(Debug)]
pub struct GradedSubmodule {
    pub ambient: FreeModule,
    gens: Vec<FreeModuleElement>,
    gb: OnceLock<Vec<Vector>>,
}

impl Clone for GradedSubmodule {
    fn clone(&self) -> Self {
        GradedSubmodule {
            ambient: self.ambient.clone(),
            gens: self.gens.clone(),
            gb: OnceLock::new(),
        }
    }
}

impl GradedSubmodule {
    pub fn new(ambient: FreeModule, gens: Vec<FreeModuleElement>) -> Result<Self> {
        let mut out = Vec::new();
        for g in gens {
            if g.entries.len() != ambient.rank() {
                return Err(Error::LengthMismatch(g.entries.len(), ambient.rank()));
            }
            if g.entries.iter().any(|p| p.ring() != &ambient.ring) {
                return Err(Error::RingMismatch);
            }
            if g.is_zero() {
                continue;
            }
            if g.degree(&ambient.twists).is_none() {
                return Err(Error::NotHomogeneous);
            }
            out.push(g);
        }
        Ok(GradedSubmodule {
            ambient,
            gens: out,
            gb: OnceLock::new(),
        })
    }

    pub fn gens(&self) -> &[FreeModuleElement] {
        &self.gens
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ambient.ring
    }

    pub(crate) fn order(&self) -> ModOrder {
        ModOrder::top(self.ambient.ring.order(), self.ambient.rank())
    }

    pub(crate) fn gen_vectors(&self) -> Vec<Vector> {
        let ord = self.order();
        self.gens.iter().map(|g| g.to_vector(&ord)).collect()
    }

    /// Reduced Gröbner basis (term-over-position order).
    pub(crate) fn gb_vectors(&self) -> &[Vector] {
        self.gb.get_or_init(|| {
            engine::groebner(
                &self.ambient.ring,
                &self.order(),
                &self.ambient.twists,
                self.gen_vectors(),
            )
        })
    }

    pub fn groebner_basis(&self) -> Vec<FreeModuleElement> {
        let r = self.ambient.rank();
        self.gb_vectors()
            .iter()
            .map(|v| FreeModuleElement::from_vector(&self.ambient.ring, r, v))
            .collect()
    }

    pub fn normal_form(&self, e: &FreeModuleElement) -> FreeModuleElement {
        let ord = self.order();
        let basis = Basis::from_vectors(self.ambient.rank(), self.gb_vectors().to_vec());
        let nf = engine::normal_form(
            self.ambient.ring.field(),
            &ord,
            &basis,
            &e.to_vector(&ord),
            false,
        );
        FreeModuleElement::from_vector(&self.ambient.ring, self.ambient.rank(), &nf)
    }

    pub fn contains(&self, e: &FreeModuleElement) -> bool {
        self.normal_form(e).is_zero()
    }

    pub fn minimal_generators(&self) -> Vec<FreeModuleElement> {
        let vs = self.gen_vectors();
        let keep = minimal_subset(&self.ambient.ring, &self.ambient.twists, &vs);
        keep.into_iter().map(|i| self.gens[i].clone()).collect()
    }

    /// Apply the generator map `S^m -> ambient` to a coefficient vector.
    pub fn image_of(&self, coeffs: &FreeModuleElement) -> Result<FreeModuleElement> {
        let ring = &self.ambient.ring;
        let mut acc: Vec<Polynomial> = vec![Polynomial::zero(ring); self.ambient.rank()];
        for (k, a) in coeffs.entries.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (c, p) in self.gens[k].entries.iter().enumerate() {
                acc[c] = acc[c].add(&a.mul(p)?)?;
            }
        }
        Ok(FreeModuleElement::new(acc))
    }
}

/// First syzygy module of the generators, as a minimally generated submodule of
/// `⊕ S(-deg g_k)`.
///
/// The generators are lifted to `(g_k, e_k)` in an augmented module whose first
/// block is eliminated; the surviving Gröbner basis elements are the syzygies.
pub fn syzygies(m: &GradedSubmodule) -> Result<GradedSubmodule> {
    let ring = m.ring().clone();
    let r = m.ambient.rank();
    let degs: Vec<i32> = m
        .gens
        .iter()
        .map(|g| g.degree(&m.ambient.twists).unwrap())
        .collect();
    let mut twists = m.ambient.twists.clone();
    twists.extend(degs.iter().copied());
    let ord = pos_order(&ring, twists.len(), r);
    let mut lifted = Vec::new();
    for (k, v) in m.gen_vectors().into_iter().enumerate() {
        let mut w = v;
        w.push(MTerm {
            c: 1,
            m: Monomial::one(),
            comp: (r + k) as u32,
        });
        lifted.push(engine::canonical_vector(ring.field(), &ord, w));
    }
    let part = lower_level_part(&ring, &twists, r, lifted);
    let target = FreeModule::new(&ring, degs.clone());
    let gens: Vec<FreeModuleElement> = part
        .iter()
        .map(|v| {
            let shifted: Vector = v
                .iter()
                .map(|t| MTerm {
                    c: t.c,
                    m: t.m,
                    comp: t.comp - r as u32,
                })
                .collect();
            FreeModuleElement::from_vector(&ring, degs.len(), &shifted)
        })
        .collect();
    let all = GradedSubmodule::new(target.clone(), gens)?;
    let minimal = all.minimal_generators();
    GradedSubmodule::new(target, minimal)
}
