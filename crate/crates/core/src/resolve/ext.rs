//! Deficiency modules `K^i(M) = Ext^{N-i}_S(M, S(-N))`, `N` the number of variables.
//!
//! The dual of a free resolution is cut into degree pieces, and each piece into
//! blocks of equal torus weight when the maps are homogeneous for a torus
//! larger than the standard grading. Ranks are computed blockwise.

use std::collections::BTreeMap;

use rustc_hash::FxHashMap;
use std::sync::Arc;

use serde::Serialize;

use super::FreeComplex;
use crate::error::{Error, Result};
use crate::groebner::GradedSubmodule;
use crate::linalg::{kernel_dense, SparseEchelon};
use crate::polyring::{Fp, LinearForm, Monomial, Polynomial, Ring};

/// Observable data of a graded module on a finite degree window.
#[derive(Clone, Debug, Serialize)]
pub struct GradedModuleData {
    pub window: (i32, i32),
    /// `n -> dim_k M_n` for every `n` in the window.
    pub hilbert: BTreeMap<i32, u64>,
    /// Basis of the linear forms `l` with `l M_n = 0` for `lo <= n < hi`.
    pub linear_annihilator: Vec<LinearForm>,
    #[serde(skip)]
    pub presentation: Option<GradedSubmodule>,
}

impl GradedModuleData {
    pub fn dim(&self, n: i32) -> u64 {
        self.hilbert.get(&n).copied().unwrap_or(0)
    }

    pub fn is_zero_on_window(&self) -> bool {
        self.hilbert.values().all(|&v| v == 0)
    }

    /// Lowest degree with a nonzero component in the window.
    pub fn beg(&self) -> Option<i32> {
        self.hilbert.iter().find(|(_, &v)| v > 0).map(|(&n, _)| n)
    }

    pub fn end(&self) -> Option<i32> {
        self.hilbert
            .iter()
            .rev()
            .find(|(_, &v)| v > 0)
            .map(|(&n, _)| n)
    }
}

/// Integer weights `W(x_v)` for which a family of polynomials is homogeneous.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Torus {
    /// `weights[k][v]`; row 0 is the standard grading.
    pub weights: Vec<Vec<i64>>,
}

impl Torus {
    pub fn standard(n: usize) -> Self {
        Torus {
            weights: vec![vec![1; n]],
        }
    }

    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    pub fn weight(&self, m: &Monomial) -> Vec<i64> {
        self.weights
            .iter()
            .map(|w| m.raw().iter().zip(w).map(|(&e, &x)| e as i64 * x).sum())
            .collect()
    }

    /// Largest torus (rational kernel of the term differences) under which every polynomial is homogeneous.
    pub fn of_polynomials<'a>(n: usize, polys: impl IntoIterator<Item = &'a Polynomial>) -> Self {
        let mut rows: Vec<Vec<i128>> = Vec::new();
        for p in polys {
            let ts = p.terms();
            if let Some(first) = ts.first() {
                for t in &ts[1..] {
                    let d: Vec<i128> = (0..n)
                        .map(|v| t.m.exp(v) as i128 - first.m.exp(v) as i128)
                        .collect();
                    rows.push(d);
                }
            }
        }
        let mut ker = integer_kernel(rows, n);
        // put the standard grading first
        let ones = vec![1i64; n];
        ker.retain(|w| w != &ones);
        let mut weights = vec![ones];
        for w in ker {
            let mut cand = weights.clone();
            cand.push(w);
            if rational_rank(&cand) == cand.len() {
                weights = cand;
            }
        }
        Torus { weights }
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn normalize(row: &mut [i128]) {
    let g = row.iter().fold(0, |g, &x| gcd(g, x));
    if g > 1 {
        row.iter_mut().for_each(|x| *x /= g);
    }
}

/// Row echelon over `Q` with integer rows; returns pivot columns and the reduced rows.
fn echelon_q(mut rows: Vec<Vec<i128>>, n: usize) -> (Vec<usize>, Vec<Vec<i128>>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let piv = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[col] != 0 {
                let a = row[col];
                let b = piv[col];
                for k in 0..n {
                    row[k] = row[k] * b - piv[k] * a;
                }
                normalize(row);
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    (pivots, rows)
}

fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let n = rows.first().map_or(0, |r| r.len());
    echelon_q(
        rows.iter()
            .map(|r| r.iter().map(|&x| x as i128).collect())
            .collect(),
        n,
    )
    .0
    .len()
}

/// Integer basis of the rational kernel `{w : D w = 0}`.
fn integer_kernel(rows: Vec<Vec<i128>>, n: usize) -> Vec<Vec<i64>> {
    let (pivots, red) = echelon_q(rows, n);
    let mut out = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        // w_free = L, w_pivot = -L * row[free] / row[pivot]
        let l = red.iter().zip(&pivots).fold(1i128, |acc, (row, &pc)| {
            let d = row[pc].abs();
            acc / gcd(acc, d) * d
        });
        let mut w = vec![0i128; n];
        w[free] = l;
        for (row, &pc) in red.iter().zip(&pivots) {
            w[pc] = -l * row[free] / row[pc];
        }
        normalize(&mut w);
        out.push(w.into_iter().map(|x| x as i64).collect());
    }
    out
}

/// Torus weights of the basis vectors of every module of the complex, or `None`
/// if some map is not homogeneous for the torus.
fn generator_weights(c: &FreeComplex, torus: &Torus) -> Option<Vec<Vec<Vec<i64>>>> {
    let k = torus.rank();
    let mut out = vec![vec![vec![0i64; k]; c.rank(0)]];
    for i in 1..=c.length() {
        let prev = &out[i - 1];
        let mut cur = Vec::with_capacity(c.rank(i));
        for col in c.map(i) {
            let mut w: Option<Vec<i64>> = None;
            for (row, p) in col {
                for t in p.terms() {
                    let x: Vec<i64> = torus
                        .weight(&t.m)
                        .iter()
                        .zip(&prev[*row as usize])
                        .map(|(a, b)| a + b)
                        .collect();
                    match &w {
                        None => w = Some(x),
                        Some(y) if *y != x => return None,
                        _ => {}
                    }
                }
            }
            cur.push(w.unwrap_or_else(|| vec![0; k]));
        }
        out.push(cur);
    }
    Some(out)
}

/// Basis of `Hom(F_q, S(-N))_n` split into weight blocks.
struct Cochains {
    /// `(basis index k, monomial g)` -> `(block, position)`.
    index: FxHashMap<(u32, Monomial), (u32, u32)>,
    blocks: Vec<Vec<(u32, Monomial)>>,
    block_of: FxHashMap<Vec<i64>, u32>,
}

impl Cochains {
    fn block_len(&self, b: u32) -> usize {
        self.blocks[b as usize].len()
    }
}

struct Dual<'a> {
    c: &'a FreeComplex,
    ring: Arc<Ring>,
    torus: Torus,
    weights: Vec<Vec<Vec<i64>>>,
    monomials: FxHashMap<u32, Vec<Monomial>>,
    /// `transposed[q][k]`: the entries `(j, d_{q+1}[k][j])` in row `k` of `d_{q+1}`.
    transposed: Vec<Vec<Vec<(u32, Polynomial)>>>,
    f: Fp,
}

impl<'a> Dual<'a> {
    fn new(c: &'a FreeComplex) -> Self {
        let ring = c.ring().clone();
        let n = ring.nvars();
        let gens: Vec<&Polynomial> = c.map(1).iter().flatten().map(|(_, p)| p).collect();
        let torus = Torus::of_polynomials(n, gens);
        let (torus, weights) = match generator_weights(c, &torus) {
            Some(w) => (torus, w),
            None => {
                let t = Torus::standard(n);
                let w = generator_weights(c, &t).expect("graded complex");
                (t, w)
            }
        };
        let mut transposed = Vec::new();
        for q in 0..=c.length() {
            let mut rows = vec![Vec::new(); c.rank(q)];
            for (j, col) in c.map(q + 1).iter().enumerate() {
                for (row, p) in col {
                    if !p.is_zero() {
                        rows[*row as usize].push((j as u32, p.clone()));
                    }
                }
            }
            transposed.push(rows);
        }
        Dual {
            f: ring.field(),
            c,
            ring,
            torus,
            weights,
            monomials: FxHashMap::default(),
            transposed,
        }
    }

    fn monomials(&mut self, d: i64) -> Vec<Monomial> {
        if d < 0 {
            return Vec::new();
        }
        let ring = self.ring.clone();
        self.monomials
            .entry(d as u32)
            .or_insert_with(|| ring.monomials_of_degree(d as u32))
            .clone()
    }

    fn cochains(&mut self, q: usize, n: i32) -> Cochains {
        let nv = self.ring.nvars() as i64;
        let mut out = Cochains {
            index: FxHashMap::default(),
            blocks: Vec::new(),
            block_of: FxHashMap::default(),
        };
        if q > self.c.length() {
            return out;
        }
        let degs = self.c.degrees(q).to_vec();
        for (k, &a) in degs.iter().enumerate() {
            let ms = self.monomials(n as i64 + a as i64 - nv);
            for g in ms {
                let w: Vec<i64> = self
                    .torus
                    .weight(&g)
                    .iter()
                    .zip(&self.weights[q][k])
                    .map(|(x, y)| x - y)
                    .collect();
                let nb = out.blocks.len() as u32;
                let b = *out.block_of.entry(w).or_insert(nb);
                if b == nb {
                    out.blocks.push(Vec::new());
                }
                let pos = out.blocks[b as usize].len() as u32;
                out.blocks[b as usize].push((k as u32, g));
                out.index.insert((k as u32, g), (b, pos));
            }
        }
        out
    }

    /// Image of the cochain `(k, g)` of `Hom(F_q)` under composition with `d_{q+1}`,
    /// as `(position, value)` pairs in the matching block of `target`.
    fn coboundary(&self, q: usize, k: u32, g: &Monomial, target: &Cochains) -> Vec<(u32, u32)> {
        let f = self.f;
        let mut acc: BTreeMap<u32, u32> = BTreeMap::new();
        for (j, p) in &self.transposed[q][k as usize] {
            for t in p.terms() {
                let m = t.m.mul(g);
                let (_, pos) = target.index[&(*j, m)];
                let e = acc.entry(pos).or_insert(0);
                *e = f.add(*e, t.c);
            }
        }
        acc.into_iter().filter(|e| e.1 != 0).collect()
    }

    /// Rows of `d^{q}` restricted to the weight block `w`: images of `Hom(F_{q-1})_n` in `Hom(F_q)_n`.
    fn image_rows(
        &self,
        q: usize,
        src: &Cochains,
        dst: &Cochains,
        w: &Vec<i64>,
    ) -> Vec<Vec<(u32, u32)>> {
        let Some(&sb) = src.block_of.get(w) else {
            return Vec::new();
        };
        src.blocks[sb as usize]
            .iter()
            .map(|(k, g)| self.coboundary(q - 1, *k, g, dst))
            .collect()
    }
}

/// Echelon form of the coboundaries `B^q_n` in one block.
fn boundary_echelon(f: Fp, ncols: usize, rows: Vec<Vec<(u32, u32)>>) -> SparseEchelon {
    let mut ech = SparseEchelon::new(f, ncols);
    let mut rows: Vec<_> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    rows.sort_by_key(|r| (r[0].0, r.len()));
    for r in rows {
        ech.insert(r);
    }
    ech
}

/// Left kernel of sparse rows with `ncols` columns.
fn left_kernel(f: Fp, ncols: usize, rows: &[Vec<(u32, u32)>]) -> Vec<Vec<(u32, u32)>> {
    let m = rows.len();
    let mut ech = SparseEchelon::new(f, ncols + m);
    for (i, r) in rows.iter().enumerate() {
        let mut aug = r.clone();
        aug.push(((ncols + i) as u32, 1));
        ech.insert(aug);
    }
    ech.rows()
        .iter()
        .filter(|r| r[0].0 as usize >= ncols)
        .map(|r| r.iter().map(|&(c, v)| (c - ncols as u32, v)).collect())
        .collect()
}

/// Krull dimension of the module resolved by the complex, from its Euler polynomial.
fn krull_dim(c: &FreeComplex) -> usize {
    let e = c.euler_polynomial();
    let Some((&lo, _)) = e.iter().next() else {
        return 0;
    };
    let hi = *e.keys().last().unwrap();
    let mut p: Vec<i64> = (lo..=hi).map(|d| e.get(&d).copied().unwrap_or(0)).collect();
    let mut k = 0;
    while !p.is_empty() && p.iter().sum::<i64>() == 0 {
        // divide by (1 - t)
        let mut q = vec![0i64; p.len() - 1];
        let mut acc = 0;
        for i in 0..q.len() {
            acc += p[i];
            q[i] = acc;
        }
        p = q;
        k += 1;
    }
    c.ring().nvars() - k
}

/// `K^i(M)` on the degree window `[lo, hi]` from a free resolution of `M`.
pub fn ext_deficiency(res: &FreeComplex, i: usize, window: (i32, i32)) -> Result<GradedModuleData> {
    ext_deficiency_with(res, i, window, true)
}

/// As [`ext_deficiency`]; the linear annihilator is skipped when `annihilator` is false.
pub fn ext_deficiency_with(
    res: &FreeComplex,
    i: usize,
    window: (i32, i32),
    annihilator: bool,
) -> Result<GradedModuleData> {
    ext_deficiency_cached(res, i, window, annihilator, &mut RankCache::default())
}

/// Ranks of coboundary blocks, keyed by cochain index, degree and torus weight.
///
/// Neighbouring `K^i` share one map each; reuse a cache only with the same resolution.
#[derive(Default)]
pub struct RankCache(FxHashMap<(usize, i32, Vec<i64>), usize>);

/// As [`ext_deficiency_with`], reusing ranks found by earlier calls on `res`.
pub fn ext_deficiency_cached(
    res: &FreeComplex,
    i: usize,
    window: (i32, i32),
    annihilator: bool,
    cache: &mut RankCache,
) -> Result<GradedModuleData> {
    let dim = krull_dim(res);
    if i > dim {
        return Err(Error::InvalidArgument(format!(
            "deficiency index {} outside [0, {}]",
            i, dim
        )));
    }
    let (lo, hi) = window;
    if lo > hi {
        return Err(Error::InvalidArgument(format!(
            "empty window {}..{}",
            lo, hi
        )));
    }
    let nv = res.ring().nvars();
    let q = nv - i;
    let mut dual = Dual::new(res);
    let f = dual.f;

    struct Piece {
        cur: Cochains,
        /// Per block of `cur`: echelon of coboundaries.
        bnd: Vec<SparseEchelon>,
        /// Per block: cocycle representatives of a basis of the cohomology.
        reps: Vec<Vec<Vec<(u32, u32)>>>,
    }

    let mut pieces: BTreeMap<i32, Piece> = BTreeMap::new();
    let mut hilbert = BTreeMap::new();
    for n in lo..=hi {
        let prev = if q >= 1 {
            dual.cochains(q - 1, n)
        } else {
            dual.cochains(usize::MAX, n)
        };
        let cur = dual.cochains(q, n);
        let next = dual.cochains(q + 1, n);
        let mut total = 0u64;
        let mut bnd = Vec::new();
        let mut reps = Vec::new();
        let weights: Vec<(Vec<i64>, u32)> = {
            let mut v: Vec<_> = cur.block_of.iter().map(|(w, &b)| (w.clone(), b)).collect();
            v.sort_by_key(|x| x.1);
            v
        };
        for (w, b) in weights {
            let ncols = cur.block_len(b);
            let ncols_next = next.block_of.get(&w).map_or(0, |&nb| next.block_len(nb));
            let out_rows = || -> Vec<Vec<(u32, u32)>> {
                cur.blocks[b as usize]
                    .iter()
                    .map(|(k, g)| {
                        if q < res.length() {
                            dual.coboundary(q, *k, g, &next)
                        } else {
                            Vec::new()
                        }
                    })
                    .collect()
            };
            if !annihilator {
                let rank_in = match (q, cache.0.get(&(q.wrapping_sub(1), n, w.clone()))) {
                    (0, _) => 0,
                    (_, Some(&r)) => r,
                    _ => {
                        let r = crate::linalg::rank_sparse(
                            f,
                            ncols,
                            dual.image_rows(q, &prev, &cur, &w),
                        );
                        cache.0.insert((q - 1, n, w.clone()), r);
                        r
                    }
                };
                let rank_out = match cache.0.get(&(q, n, w.clone())) {
                    Some(&r) => r,
                    None => {
                        let r = crate::linalg::rank_sparse(f, ncols_next, out_rows());
                        cache.0.insert((q, n, w.clone()), r);
                        r
                    }
                };
                total += (ncols - rank_in - rank_out) as u64;
                continue;
            }
            let rows = if q >= 1 {
                dual.image_rows(q, &prev, &cur, &w)
            } else {
                Vec::new()
            };
            let ech = boundary_echelon(f, ncols, rows);
            if q >= 1 {
                cache.0.insert((q - 1, n, w.clone()), ech.rank());
            }
            let ker = left_kernel(f, ncols_next, &out_rows());
            let mut ext = ech.clone();
            let mut block_reps = Vec::new();
            for z in ker {
                let rem = ext.reduce(&z, false);
                if ext.install(rem) {
                    block_reps.push(z);
                }
            }
            total += block_reps.len() as u64;
            bnd.push(ech);
            reps.push(block_reps);
        }
        hilbert.insert(n, total);
        pieces.insert(n, Piece { cur, bnd, reps });
    }

    let mut linear_annihilator = Vec::new();
    if annihilator {
        // equations sum_v l_v [x_v z] = 0 in degree n + 1
        let mut eqs: FxHashMap<(i32, usize, u32, u32), Vec<(usize, u32)>> = FxHashMap::default();
        for n in lo..hi {
            let here = &pieces[&n];
            let mut cycles: Vec<Vec<(u32, Monomial, u32)>> = Vec::new();
            for (b, reps) in here.reps.iter().enumerate() {
                for z in reps {
                    cycles.push(
                        z.iter()
                            .map(|&(pos, c)| {
                                let (k, g) = here.cur.blocks[b][pos as usize];
                                (k, g, c)
                            })
                            .collect(),
                    );
                }
            }
            let there = pieces.get_mut(&(n + 1)).unwrap();
            for (zi, z) in cycles.iter().enumerate() {
                for v in 0..nv {
                    let xv = Monomial::var(v);
                    let mut terms: Vec<(u32, u32)> = Vec::new();
                    let mut target = None;
                    for (k, g, c) in z {
                        let (tb, tp) = there.cur.index[&(*k, g.mul(&xv))];
                        target = Some(tb);
                        terms.push((tp, *c));
                    }
                    let Some(tb) = target else { continue };
                    terms.sort_unstable_by_key(|t| t.0);
                    for (c, val) in there.bnd[tb as usize].reduce(&terms, true) {
                        eqs.entry((n, zi, tb, c)).or_default().push((v, val));
                    }
                }
            }
        }
        let rows: Vec<Vec<u32>> = eqs
            .into_values()
            .map(|e| {
                let mut r = vec![0u32; nv];
                for (v, c) in e {
                    r[v] = f.add(r[v], c);
                }
                r
            })
            .collect();
        linear_annihilator = kernel_dense(f, &rows, nv)
            .into_iter()
            .map(LinearForm::new)
            .collect();
    }
    Ok(GradedModuleData {
        window,
        hilbert,
        linear_annihilator,
        presentation: None,
    })
}

/// Hilbert function of `K^i(M)` on the window without the annihilator.
pub fn ext_hilbert_function(
    res: &FreeComplex,
    i: usize,
    window: (i32, i32),
) -> Result<BTreeMap<i32, u64>> {
    Ok(ext_deficiency_with(res, i, window, false)?.hilbert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::GradedIdeal;
    use crate::resolve::free_resolution;

    fn res(n: usize, gens: &[&str]) -> FreeComplex {
        let r = Ring::standard(n, 32003).unwrap();
        free_resolution(&GradedIdeal::parse(&r, gens).unwrap())
            .unwrap()
            .minimalize()
    }

    #[test]
    fn torus_of_scroll() {
        let r = Ring::standard(4, 32003).unwrap();
        let i = GradedIdeal::parse(&r, &["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"]).unwrap();
        let t = Torus::of_polynomials(4, i.gens());
        assert_eq!(t.rank(), 2);
        for g in i.gens() {
            let w: Vec<_> = g.terms().iter().map(|t2| t.weight(&t2.m)).collect();
            assert!(w.windows(2).all(|p| p[0] == p[1]));
        }
    }

    #[test]
    fn canonical_module_of_twisted_cubic() {
        let c = res(4, &["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"]);
        let k = ext_deficiency(&c, 2, (-2, 4)).unwrap();
        let expect: Vec<u64> = (-2..=4)
            .map(|n: i32| if n >= 1 { (3 * n - 1) as u64 } else { 0 })
            .collect();
        assert_eq!(k.hilbert.values().copied().collect::<Vec<_>>(), expect);
        assert!(k.linear_annihilator.is_empty());
        for i in [0, 1] {
            assert!(ext_deficiency(&c, i, (-3, 4)).unwrap().is_zero_on_window());
        }
        assert!(ext_deficiency(&c, 3, (0, 1)).is_err());
    }

    #[test]
    fn gorenstein_line() {
        // A = k[x1], K(A) = A(-1)
        let c = res(2, &["x0"]);
        let k = ext_deficiency(&c, 1, (-1, 3)).unwrap();
        assert_eq!(
            k.hilbert.values().copied().collect::<Vec<_>>(),
            vec![0, 0, 1, 1, 1]
        );
        assert_eq!(k.linear_annihilator, vec![LinearForm::new(vec![1, 0])]);
    }

    #[test]
    fn depth_one_curve_has_k1() {
        // rational quartic in P^3: K^1 = k(1)
        let r = Ring::standard(4, 32003).unwrap();
        let i = GradedIdeal::parse(
            &r,
            &[
                "x1*x2 - x0*x3",
                "x2^3 - x1*x3^2",
                "x1^3 - x0^2*x2",
                "x0*x2^2 - x1^2*x3",
            ],
        )
        .unwrap();
        let c = free_resolution(&i).unwrap().minimalize();
        let k1 = ext_deficiency(&c, 1, (-3, 3)).unwrap();
        assert_eq!(k1.dim(-1), 1);
        assert_eq!(k1.hilbert.values().sum::<u64>(), 1);
        assert_eq!(k1.linear_annihilator.len(), 4);
        let fast = ext_hilbert_function(&c, 1, (-3, 3)).unwrap();
        assert_eq!(fast, k1.hilbert);
    }

    #[test]
    fn shared_ranks_give_the_same_modules() {
        let r = Ring::standard(4, 32003).unwrap();
        let i = GradedIdeal::parse(
            &r,
            &[
                "x1*x2 - x0*x3",
                "x2^3 - x1*x3^2",
                "x1^3 - x0^2*x2",
                "x0*x2^2 - x1^2*x3",
            ],
        )
        .unwrap();
        let c = free_resolution(&i).unwrap();
        let mut cache = RankCache::default();
        for i in 0..=2 {
            for ann in [false, true] {
                let shared = ext_deficiency_cached(&c, i, (-4, 4), ann, &mut cache).unwrap();
                let alone = ext_deficiency(&c, i, (-4, 4)).unwrap();
                assert_eq!(shared.hilbert, alone.hilbert, "K^{}", i);
            }
        }
    }

    #[test]
    fn integer_kernel_basis() {
        let k = integer_kernel(vec![vec![1, -2, 1]], 3);
        assert_eq!(k.len(), 2);
        for w in &k {
            assert_eq!(w[0] - 2 * w[1] + w[2], 0);
        }
    }
}
