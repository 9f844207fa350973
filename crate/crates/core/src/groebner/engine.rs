//! Homogeneous Buchberger algorithm on vectors of a graded free module.
//!
//! Ideals are rank-one modules. Components carry a twist (the degree of the
//! basis vector) and an elimination level: terms on a higher level are larger
//! than any term on a lower one, which gives position-over-term block orders.

use std::cmp::Ordering;

use crate::polyring::{Fp, Monomial, Ring, TermOrder};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MTerm {
    pub c: u32,
    pub m: Monomial,
    pub comp: u32,
}

pub type Vector = Vec<MTerm>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModOrder {
    pub order: TermOrder,
    pub levels: Vec<u8>,
}

impl ModOrder {
    pub fn top(order: TermOrder, rank: usize) -> Self {
        ModOrder {
            order,
            levels: vec![0; rank],
        }
    }

    #[inline]
    pub fn cmp(&self, am: &Monomial, ac: u32, bm: &Monomial, bc: u32) -> Ordering {
        let (la, lb) = (self.levels[ac as usize], self.levels[bc as usize]);
        if la != lb {
            return la.cmp(&lb);
        }
        match self.order.cmp(am, bm) {
            Ordering::Equal => ac.cmp(&bc),
            o => o,
        }
    }

    #[inline]
    pub fn cmp_terms(&self, a: &MTerm, b: &MTerm) -> Ordering {
        self.cmp(&a.m, a.comp, &b.m, b.comp)
    }
}

/// Sort descending, merge duplicates, drop zeros.
pub fn canonical_vector(f: Fp, ord: &ModOrder, mut v: Vector) -> Vector {
    v.sort_by(|a, b| ord.cmp_terms(b, a));
    let mut out: Vector = Vec::with_capacity(v.len());
    for t in v {
        match out.last_mut() {
            Some(l) if l.m == t.m && l.comp == t.comp => l.c = f.add(l.c, t.c),
            _ => out.push(t),
        }
        if out.last().map_or(false, |l| l.c == 0) {
            out.pop();
        }
    }
    out
}

/// Degree of a homogeneous vector (of its leading term).
pub fn vector_degree(v: &[MTerm], twists: &[i32]) -> Option<i32> {
    v.first()
        .map(|t| t.m.degree() as i32 + twists[t.comp as usize])
}

pub fn is_homogeneous(v: &[MTerm], twists: &[i32]) -> bool {
    match vector_degree(v, twists) {
        None => true,
        Some(d) => v
            .iter()
            .all(|t| t.m.degree() as i32 + twists[t.comp as usize] == d),
    }
}

/// Max-heap keyed by module terms, with a payload.
pub struct TermHeap<'o, P> {
    ord: &'o ModOrder,
    data: Vec<(Monomial, u32, P)>,
}

impl<'o, P: Copy> TermHeap<'o, P> {
    pub fn new(ord: &'o ModOrder) -> Self {
        TermHeap {
            ord,
            data: Vec::new(),
        }
    }

    #[inline]
    fn less(&self, i: usize, j: usize) -> bool {
        let (a, b) = (&self.data[i], &self.data[j]);
        self.ord.cmp(&a.0, a.1, &b.0, b.1) == Ordering::Less
    }

    pub fn push(&mut self, m: Monomial, comp: u32, p: P) {
        self.data.push((m, comp, p));
        let mut i = self.data.len() - 1;
        while i > 0 {
            let parent = (i - 1) / 2;
            if self.less(parent, i) {
                self.data.swap(parent, i);
                i = parent;
            } else {
                break;
            }
        }
    }

    #[inline]
    pub fn peek(&self) -> Option<&(Monomial, u32, P)> {
        self.data.first()
    }

    pub fn pop(&mut self) -> Option<(Monomial, u32, P)> {
        if self.data.is_empty() {
            return None;
        }
        let last = self.data.len() - 1;
        self.data.swap(0, last);
        let top = self.data.pop();
        let n = self.data.len();
        let mut i = 0;
        loop {
            let l = 2 * i + 1;
            let r = l + 1;
            let mut big = i;
            if l < n && self.less(big, l) {
                big = l;
            }
            if r < n && self.less(big, r) {
                big = r;
            }
            if big == i {
                break;
            }
            self.data.swap(i, big);
            i = big;
        }
        top
    }
}

/// A monic basis with lead lookup by component.
pub struct Basis {
    pub elems: Vec<Vector>,
    by_comp: Vec<Vec<u32>>,
}

impl Basis {
    pub fn new(rank: usize) -> Self {
        Basis {
            elems: Vec::new(),
            by_comp: vec![Vec::new(); rank],
        }
    }

    pub fn from_vectors(rank: usize, elems: Vec<Vector>) -> Self {
        let mut b = Basis::new(rank);
        for e in elems {
            b.push(e);
        }
        b
    }

    pub fn push(&mut self, v: Vector) -> usize {
        let idx = self.elems.len();
        self.by_comp[v[0].comp as usize].push(idx as u32);
        self.elems.push(v);
        idx
    }

    #[inline]
    pub fn find_divisor(&self, m: &Monomial, comp: u32) -> Option<usize> {
        for &i in &self.by_comp[comp as usize] {
            if self.elems[i as usize][0].m.divides(m) {
                return Some(i as usize);
            }
        }
        None
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.elems.len()
    }
}

#[derive(Clone, Copy)]
struct Stream {
    src: u32,
    mult: Monomial,
    coef: u32,
    pos: u32,
}

/// Full normal form of `v` with respect to a monic basis.
///
/// If `top_only` is set, reduction stops at the first irreducible term and the
/// rest is copied unreduced.
pub fn normal_form(f: Fp, ord: &ModOrder, basis: &Basis, v: &[MTerm], top_only: bool) -> Vector {
    if v.is_empty() {
        return Vec::new();
    }
    let mut streams: Vec<Stream> = Vec::new();
    let mut heap: TermHeap<u32> = TermHeap::new(ord);
    // stream u32::MAX stands for `v` itself; its position lives in streams[0]
    streams.push(Stream {
        src: u32::MAX,
        mult: Monomial::one(),
        coef: 1,
        pos: 0,
    });
    heap.push(v[0].m, v[0].comp, 0);
    let term_of = |s: &Stream| -> MTerm {
        let t = if s.src == u32::MAX {
            v[s.pos as usize]
        } else {
            basis.elems[s.src as usize][s.pos as usize]
        };
        MTerm {
            c: f.mul(t.c, s.coef),
            m: t.m.mul(&s.mult),
            comp: t.comp,
        }
    };
    let len_of = |s: &Stream| -> usize {
        if s.src == u32::MAX {
            v.len()
        } else {
            basis.elems[s.src as usize].len()
        }
    };
    let mut out = Vec::new();
    let mut stop = false;
    while let Some(&(m, comp, _)) = heap.peek() {
        let mut c = 0u32;
        while let Some(&(m2, comp2, sid)) = heap.peek() {
            if m2 != m || comp2 != comp {
                break;
            }
            heap.pop();
            let s = &mut streams[sid as usize];
            let t = term_of(s);
            c = f.add(c, t.c);
            s.pos += 1;
            if (s.pos as usize) < len_of(s) {
                let nt = term_of(s);
                heap.push(nt.m, nt.comp, sid);
            }
        }
        if c == 0 {
            continue;
        }
        if !stop {
            if let Some(g) = basis.find_divisor(&m, comp) {
                let lead = basis.elems[g][0];
                let mult = m.div(&lead.m);
                let coef = f.neg(f.div(c, lead.c));
                if basis.elems[g].len() > 1 {
                    let sid = streams.len() as u32;
                    streams.push(Stream {
                        src: g as u32,
                        mult,
                        coef,
                        pos: 1,
                    });
                    let nt = term_of(&streams[sid as usize]);
                    heap.push(nt.m, nt.comp, sid);
                }
                continue;
            }
            if top_only {
                stop = true;
            }
        }
        out.push(MTerm { c, m, comp });
    }
    out
}

pub fn make_monic(f: Fp, v: &mut Vector) {
    if let Some(t) = v.first() {
        if t.c != 1 {
            let inv = f.inv(t.c);
            for x in v.iter_mut() {
                x.c = f.mul(x.c, inv);
            }
        }
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: u32,
    j: u32,
    lcm: Monomial,
    comp: u32,
    deg: i32,
}

/// Reduced Gröbner basis of the submodule generated by homogeneous `gens`.
///
/// The output is sorted increasingly by leading term.
pub fn groebner(ring: &Ring, ord: &ModOrder, twists: &[i32], gens: Vec<Vector>) -> Vec<Vector> {
    let f = ring.field();
    let rank = twists.len();
    let ideal_mode = rank == 1;
    let mut inputs: Vec<(i32, usize, Vector)> = gens
        .into_iter()
        .map(|g| canonical_vector(f, ord, g))
        .enumerate()
        .filter(|(_, g)| !g.is_empty())
        .inspect(|(_, g)| debug_assert!(is_homogeneous(g, twists)))
        .map(|(k, g)| (vector_degree(&g, twists).unwrap(), k, g))
        .collect();
    inputs.sort_by_key(|x| (x.0, x.1));
    let mut inputs = inputs.into_iter().peekable();

    let mut basis = Basis::new(rank);
    let mut pairs: Vec<Pair> = Vec::new();

    loop {
        let next_in = inputs.peek().map(|x| x.0);
        let next_pair = pairs.iter().map(|p| p.deg).min();
        let d = match (next_in, next_pair) {
            (None, None) => break,
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (Some(a), Some(b)) => a.min(b),
        };
        let mut todo: Vec<Pair> = Vec::new();
        pairs.retain(|p| {
            if p.deg == d {
                todo.push(p.clone());
                false
            } else {
                true
            }
        });
        todo.sort_by(|a, b| {
            ord.cmp(&a.lcm, a.comp, &b.lcm, b.comp)
                .then(a.j.cmp(&b.j))
                .then(a.i.cmp(&b.i))
        });
        let mut candidates: Vec<Vector> = Vec::new();
        for p in &todo {
            candidates.push(spoly(f, ord, &basis, p));
        }
        while inputs.peek().map_or(false, |x| x.0 == d) {
            candidates.push(inputs.next().unwrap().2);
        }
        for c in candidates {
            let mut h = normal_form(f, ord, &basis, &c, true);
            if h.is_empty() {
                continue;
            }
            make_monic(f, &mut h);
            add_element(twists, ideal_mode, &mut basis, &mut pairs, h);
        }
    }

    // tail reduction; leads are already pairwise non-divisible
    let mut result: Vec<Vector> = Vec::with_capacity(basis.len());
    for i in 0..basis.len() {
        let v = &basis.elems[i];
        let tail = normal_form(f, ord, &basis, &v[1..], false);
        let mut r = Vec::with_capacity(tail.len() + 1);
        r.push(v[0]);
        r.extend(tail);
        result.push(r);
    }
    result.sort_by(|a, b| ord.cmp_terms(&a[0], &b[0]));
    result
}

fn spoly(f: Fp, ord: &ModOrder, basis: &Basis, p: &Pair) -> Vector {
    let a = &basis.elems[p.i as usize];
    let b = &basis.elems[p.j as usize];
    let ma = p.lcm.div(&a[0].m);
    let mb = p.lcm.div(&b[0].m);
    // both monic: ma*a - mb*b, dropping the cancelled leads
    let mut out = Vec::with_capacity(a.len() + b.len());
    for t in &a[1..] {
        out.push(MTerm {
            c: t.c,
            m: t.m.mul(&ma),
            comp: t.comp,
        });
    }
    for t in &b[1..] {
        out.push(MTerm {
            c: f.neg(t.c),
            m: t.m.mul(&mb),
            comp: t.comp,
        });
    }
    canonical_vector(f, ord, out)
}

fn add_element(
    twists: &[i32],
    ideal_mode: bool,
    basis: &mut Basis,
    pairs: &mut Vec<Pair>,
    h: Vector,
) {
    let hl = h[0];
    let hidx = basis.len() as u32;
    let comp = hl.comp;
    let tw = twists[comp as usize];
    // candidate pairs with the same component
    let mut cand: Vec<(Pair, bool)> = Vec::new();
    for (k, g) in basis.elems.iter().enumerate() {
        if g[0].comp != comp {
            continue;
        }
        let lcm = g[0].m.lcm(&hl.m);
        let coprime = ideal_mode && g[0].m.coprime(&hl.m);
        cand.push((
            Pair {
                i: k as u32,
                j: hidx,
                lcm,
                comp,
                deg: lcm.degree() as i32 + tw,
            },
            coprime,
        ));
    }
    // Gebauer-Moeller: criterion M / F on the new pairs
    let mut kept: Vec<(Pair, bool)> = Vec::new();
    for idx in 0..cand.len() {
        let (ref p, coprime) = cand[idx];
        let dominated = if coprime {
            false
        } else {
            cand.iter()
                .enumerate()
                .any(|(k, (q, _))| k != idx && q.lcm.divides(&p.lcm) && (q.lcm != p.lcm || k < idx))
        };
        if !dominated {
            kept.push(cand[idx].clone());
        }
    }
    // among pairs sharing an lcm with a coprime pair, all are dropped
    let mut new_pairs: Vec<Pair> = Vec::new();
    for (p, coprime) in &kept {
        if *coprime {
            continue;
        }
        let shares_coprime = cand.iter().any(|(q, c)| *c && q.lcm == p.lcm);
        if !shares_coprime {
            new_pairs.push(p.clone());
        }
    }
    // criterion B on old pairs
    pairs.retain(|p| {
        if p.comp != comp || !hl.m.divides(&p.lcm) {
            return true;
        }
        let li = basis.elems[p.i as usize][0].m.lcm(&hl.m);
        let lj = basis.elems[p.j as usize][0].m.lcm(&hl.m);
        li == p.lcm || lj == p.lcm
    });
    pairs.extend(new_pairs);
    basis.push(h);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{Polynomial, Ring};

    fn vecs(ring: &std::sync::Arc<Ring>, polys: &[&str]) -> Vec<Vector> {
        polys
            .iter()
            .map(|s| {
                Polynomial::parse(ring, s)
                    .unwrap()
                    .terms()
                    .iter()
                    .map(|t| MTerm {
                        c: t.c,
                        m: t.m,
                        comp: 0,
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn twisted_cubic_is_a_basis() {
        let r = Ring::standard(4, 32003).unwrap();
        let ord = ModOrder::top(r.order(), 1);
        let g = vecs(&r, &["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"]);
        let gb = groebner(&r, &ord, &[0], g);
        assert_eq!(gb.len(), 3);
    }

    #[test]
    fn heap_orders_terms() {
        let ord = ModOrder::top(TermOrder::DegRevLex, 2);
        let mut h: TermHeap<u32> = TermHeap::new(&ord);
        let ms = [
            Monomial::var(0),
            Monomial::var(1),
            Monomial::var(0).mul(&Monomial::var(1)),
        ];
        for (k, m) in ms.iter().enumerate() {
            h.push(*m, (k % 2) as u32, k as u32);
        }
        let mut out = Vec::new();
        while let Some(x) = h.pop() {
            out.push(x.2);
        }
        assert_eq!(out, vec![2, 0, 1]);
    }
}
