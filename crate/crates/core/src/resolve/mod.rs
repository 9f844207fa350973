//! Graded free resolutions, Betti tables, Hilbert series and deficiency modules.
//!
//! Resolutions are built as Schreyer frames: the leading terms of each level
//! are read off combinatorially from the level below, and only the tails are
//! computed by division. Minimal Betti numbers come from the ranks of the
//! constant parts of the maps; [`FreeComplex::minimalize`] also produces an
//! explicit minimal complex by Gaussian cancellation.

pub mod betti;
pub mod depth;
pub mod ext;
pub mod hilbert;
pub mod scalars;

use std::collections::{BTreeMap, BTreeSet};

use rustc_hash::FxHashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{GradedIdeal, GradedSubmodule, Vector};
use crate::linalg::rank_sparse;
use crate::polyring::{Monomial, Polynomial, Ring, Term, TermOrder, MAX_VARS};

pub use betti::{depth_from_betti, regularity, BettiTable};
pub use depth::depth_by_regular_sequence;
pub use ext::{ext_deficiency, ext_hilbert_function, GradedModuleData, Torus};
pub use hilbert::HilbertData;
pub use scalars::{module_data, restrict_scalars, restrict_scalars_presentation};

/// One column of a map: `(row, entry)` pairs sorted by row.
pub type Column = Vec<(u32, Polynomial)>;

/// A complex of graded free modules `F_0 <- F_1 <- ... <- F_n`.
#[derive(Clone, Debug)]
pub struct FreeComplex {
    ring: Arc<Ring>,
    /// `degrees[i][a]`: degree of the `a`-th basis vector of `F_i`.
    degrees: Vec<Vec<i32>>,
    /// `maps[i - 1][a]`: image of the `a`-th basis vector of `F_i` in `F_{i-1}`.
    maps: Vec<Vec<Column>>,
}

impl FreeComplex {
    pub fn new(ring: &Arc<Ring>, degrees: Vec<Vec<i32>>, maps: Vec<Vec<Column>>) -> Result<Self> {
        if degrees.is_empty() || maps.len() + 1 != degrees.len() {
            return Err(Error::InvalidArgument(
                "need one map between consecutive modules".into(),
            ));
        }
        for (k, cols) in maps.iter().enumerate() {
            if cols.len() != degrees[k + 1].len() {
                return Err(Error::LengthMismatch(cols.len(), degrees[k + 1].len()));
            }
            for (a, col) in cols.iter().enumerate() {
                for (b, p) in col {
                    if *b as usize >= degrees[k].len() || p.ring() != ring {
                        return Err(Error::InvalidArgument("map entry out of range".into()));
                    }
                    if p.is_zero() {
                        continue;
                    }
                    if !p.is_homogeneous()
                        || p.degree().unwrap() as i32 != degrees[k + 1][a] - degrees[k][*b as usize]
                    {
                        return Err(Error::NotHomogeneous);
                    }
                }
            }
        }
        Ok(FreeComplex {
            ring: ring.clone(),
            degrees,
            maps,
        })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    /// Index of the last nonzero module.
    pub fn length(&self) -> usize {
        (0..self.degrees.len())
            .rev()
            .find(|&i| !self.degrees[i].is_empty())
            .unwrap_or(0)
    }

    pub fn rank(&self, i: usize) -> usize {
        self.degrees.get(i).map_or(0, |d| d.len())
    }

    pub fn degrees(&self, i: usize) -> &[i32] {
        self.degrees.get(i).map_or(&[], |d| d.as_slice())
    }

    /// Columns of `d_i : F_i -> F_{i-1}` (`i >= 1`).
    pub fn map(&self, i: usize) -> &[Column] {
        if i == 0 {
            return &[];
        }
        self.maps.get(i - 1).map_or(&[], |m| m.as_slice())
    }

    /// Checks `d_{i} d_{i+1} = 0` for every `i`.
    pub fn is_complex(&self) -> bool {
        for i in 1..self.maps.len() {
            let lower = &self.maps[i - 1];
            for col in &self.maps[i] {
                let mut acc: BTreeMap<u32, Polynomial> = BTreeMap::new();
                for (b, p) in col {
                    for (c, q) in &lower[*b as usize] {
                        let prod = p.mul(q).unwrap();
                        let e = acc
                            .entry(*c)
                            .or_insert_with(|| Polynomial::zero(&self.ring));
                        *e = e.add(&prod).unwrap();
                    }
                }
                if acc.values().any(|p| !p.is_zero()) {
                    return false;
                }
            }
        }
        true
    }

    /// True if no map has a nonzero constant entry.
    pub fn is_minimal(&self) -> bool {
        self.maps
            .iter()
            .flatten()
            .flatten()
            .all(|(_, p)| p.is_zero() || !p.is_constant())
    }

    /// `sum_i (-1)^i sum_a t^{deg e_a}`, keyed by degree.
    pub fn euler_polynomial(&self) -> BTreeMap<i32, i64> {
        let mut out = BTreeMap::new();
        for (i, ds) in self.degrees.iter().enumerate() {
            let s = if i % 2 == 0 { 1 } else { -1 };
            for &d in ds {
                *out.entry(d).or_insert(0) += s;
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }

    /// Minimal Betti numbers from the ranks of the constant parts of the maps.
    ///
    /// Valid for any free resolution: `beta_{i,j} = n_{i,j} - rank C_{i,j} - rank C_{i+1,j}`
    /// where `C_{i,j}` is the degree-`j` constant block of `d_i`.
    pub fn betti(&self) -> BettiTable {
        let f = self.ring.field();
        let len = self.degrees.len();
        // const_rank[i][j] for d_i, i >= 1
        let mut const_rank: Vec<BTreeMap<i32, usize>> = vec![BTreeMap::new(); len + 1];
        for i in 1..len {
            let mut by_deg: BTreeMap<i32, Vec<Vec<(u32, u32)>>> = BTreeMap::new();
            for (a, col) in self.maps[i - 1].iter().enumerate() {
                let row: Vec<(u32, u32)> = col
                    .iter()
                    .filter(|(_, p)| !p.is_zero() && p.is_constant())
                    .map(|(b, p)| (*b, p.terms()[0].c))
                    .collect();
                if !row.is_empty() {
                    by_deg.entry(self.degrees[i][a]).or_default().push(row);
                }
            }
            for (j, rows) in by_deg {
                const_rank[i].insert(j, rank_sparse(f, self.degrees[i - 1].len(), rows));
            }
        }
        let mut entries = BTreeMap::new();
        for (i, ds) in self.degrees.iter().enumerate() {
            let mut count: BTreeMap<i32, i64> = BTreeMap::new();
            for &d in ds {
                *count.entry(d).or_insert(0) += 1;
            }
            for (j, n) in count {
                let r1 = *const_rank[i].get(&j).unwrap_or(&0) as i64;
                let r2 = *const_rank[i + 1].get(&j).unwrap_or(&0) as i64;
                let b = n - r1 - r2;
                debug_assert!(b >= 0);
                if b > 0 {
                    entries.insert((i, j), b as u64);
                }
            }
        }
        BettiTable::new(self.ring.nvars(), entries)
    }

    /// Minimal complex obtained by cancelling unit entries, from `d_1` upward and
    /// by increasing degree within each map.
    pub fn minimalize(&self) -> FreeComplex {
        let levels = self.degrees.len();
        let mut alive: Vec<Vec<bool>> = self.degrees.iter().map(|d| vec![true; d.len()]).collect();
        let mut cols: Vec<Vec<BTreeMap<u32, Polynomial>>> = self
            .maps
            .iter()
            .map(|m| m.iter().map(|c| c.iter().cloned().collect()).collect())
            .collect();
        // rows[k][b]: columns of maps[k] with an entry in row b
        let mut rows: Vec<Vec<BTreeSet<u32>>> = (0..self.maps.len())
            .map(|k| {
                let mut r = vec![BTreeSet::new(); self.degrees[k].len()];
                for (a, c) in cols[k].iter().enumerate() {
                    for b in c.keys() {
                        r[*b as usize].insert(a as u32);
                    }
                }
                r
            })
            .collect();
        for k in 0..self.maps.len() {
            // map d_{k+1}: F_{k+1} -> F_k
            let mut order: Vec<usize> = (0..self.degrees[k + 1].len()).collect();
            order.sort_by_key(|&a| (self.degrees[k + 1][a], a));
            for a in order {
                if !alive[k + 1][a] {
                    continue;
                }
                let unit = cols[k][a]
                    .iter()
                    .find(|(_, p)| !p.is_zero() && p.is_constant())
                    .map(|(b, p)| (*b, p.clone()));
                let Some((b, u)) = unit else { continue };
                let uinv = self.ring.field().inv(u.terms()[0].c);
                let col_a = cols[k][a].clone();
                let others: Vec<u32> = rows[k][b as usize]
                    .iter()
                    .copied()
                    .filter(|&x| x as usize != a)
                    .collect();
                for a2 in others {
                    let factor = cols[k][a2 as usize][&b].scale(uinv);
                    for (row, p) in &col_a {
                        let delta = factor.mul(p).unwrap();
                        let e = cols[k][a2 as usize]
                            .entry(*row)
                            .or_insert_with(|| Polynomial::zero(&self.ring));
                        *e = e.sub(&delta).unwrap();
                        if e.is_zero() {
                            cols[k][a2 as usize].remove(row);
                            rows[k][*row as usize].remove(&a2);
                        } else {
                            rows[k][*row as usize].insert(a2);
                        }
                    }
                }
                // drop column a of d_{k+1}
                for row in cols[k][a].keys() {
                    rows[k][*row as usize].remove(&(a as u32));
                }
                cols[k][a].clear();
                // drop column b of d_k
                if k > 0 {
                    for row in cols[k - 1][b as usize].keys() {
                        rows[k - 1][*row as usize].remove(&b);
                    }
                    cols[k - 1][b as usize].clear();
                }
                // drop row a of d_{k+2}
                if k + 1 < self.maps.len() {
                    let hit: Vec<u32> = rows[k + 1][a].iter().copied().collect();
                    for c in hit {
                        cols[k + 1][c as usize].remove(&(a as u32));
                    }
                    rows[k + 1][a].clear();
                }
                alive[k + 1][a] = false;
                alive[k][b as usize] = false;
            }
        }
        let newidx: Vec<Vec<u32>> = alive
            .iter()
            .map(|al| {
                let mut n = 0u32;
                al.iter()
                    .map(|&x| {
                        let i = n;
                        if x {
                            n += 1;
                        }
                        i
                    })
                    .collect()
            })
            .collect();
        let mut degrees = Vec::with_capacity(levels);
        for i in 0..levels {
            degrees.push(
                (0..self.degrees[i].len())
                    .filter(|&a| alive[i][a])
                    .map(|a| self.degrees[i][a])
                    .collect::<Vec<_>>(),
            );
        }
        let mut maps = Vec::with_capacity(self.maps.len());
        for k in 0..self.maps.len() {
            let m: Vec<Column> = (0..self.degrees[k + 1].len())
                .filter(|&a| alive[k + 1][a])
                .map(|a| {
                    cols[k][a]
                        .iter()
                        .filter(|(b, p)| alive[k][**b as usize] && !p.is_zero())
                        .map(|(b, p)| (newidx[k][*b as usize], p.clone()))
                        .collect()
                })
                .collect();
            maps.push(m);
        }
        while degrees.len() > 1 && degrees.last().unwrap().is_empty() {
            degrees.pop();
            maps.pop();
        }
        FreeComplex {
            ring: self.ring.clone(),
            degrees,
            maps,
        }
    }
}

/// Minimal graded Betti numbers of a resolution, by explicit cancellation.
pub fn minimalize(complex: &FreeComplex) -> BettiTable {
    let m = complex.minimalize();
    let mut entries = BTreeMap::new();
    for i in 0..m.degrees.len() {
        for &d in &m.degrees[i] {
            *entries.entry((i, d)).or_insert(0) += 1;
        }
    }
    BettiTable::new(complex.ring.nvars(), entries)
}

/// Options for building a Schreyer frame.
#[derive(Clone, Debug, Default)]
pub struct ResolutionOptions {
    /// Shuffle the first-level generators (same lead component) with this seed.
    pub shuffle_seed: Option<u64>,
    /// Report progress per level on standard error.
    pub progress: bool,
}

/// Free resolution of `S/I`.
pub fn free_resolution(ideal: &GradedIdeal) -> Result<FreeComplex> {
    free_resolution_with(ideal, &ResolutionOptions::default())
}

pub fn free_resolution_with(ideal: &GradedIdeal, opts: &ResolutionOptions) -> Result<FreeComplex> {
    let ideal = if ideal.ring().order() == TermOrder::DegRevLex {
        ideal.clone()
    } else {
        ideal.with_order(TermOrder::DegRevLex)?
    };
    let ring = ideal.ring().clone();
    let gb: Vec<Vector> = ideal
        .groebner_basis()
        .iter()
        .map(|g| crate::groebner::to_vector(g, 0))
        .collect();
    Ok(schreyer_frame(&ring, vec![0], gb, opts))
}

/// Free resolution of the cokernel `F_0 / M`.
pub fn free_resolution_module(
    m: &GradedSubmodule,
    opts: &ResolutionOptions,
) -> Result<FreeComplex> {
    if m.ring().order() != TermOrder::DegRevLex {
        return Err(Error::InvalidArgument(
            "module resolutions need a degrevlex ring".into(),
        ));
    }
    let gb = m.gb_vectors().to_vec();
    Ok(schreyer_frame(m.ring(), m.ambient.twists.clone(), gb, opts))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct RTerm {
    c: u32,
    m: Monomial,
    comp: u32,
}

/// Integer key whose natural order is degrevlex on monomials.
#[inline]
fn drl_key(m: &Monomial) -> u128 {
    let r = m.raw();
    let mut k: u128 = (m.degree() as u128) << 112;
    for (v, &e) in r.iter().enumerate().take(MAX_VARS) {
        k |= ((127 - e) as u128) << (7 * v);
    }
    k
}

struct Level {
    degrees: Vec<i32>,
    /// Lead monomial of each element's image (over its lead component).
    lead_m: Vec<Monomial>,
    lead_c: Vec<u32>,
    /// Product of lead monomials down the frame: the Schreyer order compares
    /// `m * total[a]` first and the index `a` second.
    total: Vec<Monomial>,
    images: Vec<Vec<RTerm>>,
}

type ImageFn =
    fn(crate::polyring::Fp, &Level, &Level, &[Vec<u32>], &[(Monomial, u32)]) -> Vec<Vec<RTerm>>;

fn schreyer_frame(
    ring: &Arc<Ring>,
    f0: Vec<i32>,
    gb: Vec<Vector>,
    opts: &ResolutionOptions,
) -> FreeComplex {
    schreyer_frame_with(ring, f0, gb, opts, frame_images)
}

fn schreyer_frame_with(
    ring: &Arc<Ring>,
    f0: Vec<i32>,
    gb: Vec<Vector>,
    opts: &ResolutionOptions,
    images: ImageFn,
) -> FreeComplex {
    let f = ring.field();
    let rank0 = f0.len();
    let mut levels: Vec<Level> = Vec::new();
    levels.push(Level {
        degrees: f0.clone(),
        lead_m: vec![Monomial::one(); rank0],
        lead_c: vec![0; rank0],
        total: vec![Monomial::one(); rank0],
        images: vec![Vec::new(); rank0],
    });
    // level 1: the Gröbner basis, grouped by lead component
    let mut gb = gb;
    gb.sort_by_key(|v| v[0].comp);
    if let Some(seed) = opts.shuffle_seed {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut start = 0;
        while start < gb.len() {
            let c = gb[start][0].comp;
            let end = start + gb[start..].iter().take_while(|v| v[0].comp == c).count();
            gb[start..end].shuffle(&mut rng);
            start = end;
        }
    }
    let mut l1 = Level {
        degrees: vec![],
        lead_m: vec![],
        lead_c: vec![],
        total: vec![],
        images: vec![],
    };
    for v in gb {
        let lt = v[0];
        l1.degrees.push(lt.m.degree() as i32 + f0[lt.comp as usize]);
        l1.lead_m.push(lt.m);
        l1.lead_c.push(lt.comp);
        l1.total.push(lt.m);
        l1.images.push(
            v.iter()
                .map(|t| RTerm {
                    c: t.c,
                    m: t.m,
                    comp: t.comp,
                })
                .collect(),
        );
    }
    levels.push(l1);
    loop {
        let i = levels.len() - 1;
        let cur = &levels[i];
        if cur.degrees.is_empty() {
            levels.pop();
            break;
        }
        if opts.progress {
            eprintln!("  frame level {}: {} elements", i, cur.degrees.len());
        }
        let rank_below = levels[i - 1].degrees.len();
        let mut by_comp: Vec<Vec<u32>> = vec![Vec::new(); rank_below];
        for (a, &c) in cur.lead_c.iter().enumerate() {
            by_comp[c as usize].push(a as u32);
        }
        // leads of the next level
        let mut next_leads: Vec<(Monomial, u32)> = Vec::new();
        for a in 0..cur.degrees.len() {
            let mu = cur.lead_m[a];
            let mut qs: Vec<Monomial> = by_comp[cur.lead_c[a] as usize]
                .iter()
                .take_while(|&&b| (b as usize) < a)
                .map(|&b| mu.lcm(&cur.lead_m[b as usize]).div(&mu))
                .collect();
            qs.sort_by_key(|q| (q.degree(), std::cmp::Reverse(drl_key(q))));
            qs.dedup();
            let mut min: Vec<Monomial> = Vec::new();
            for q in qs {
                if !min.iter().any(|p| p.divides(&q)) {
                    min.push(q);
                }
            }
            for q in min {
                next_leads.push((q, a as u32));
            }
        }
        if next_leads.is_empty() {
            break;
        }
        let below = &levels[i - 1];
        let mut next = Level {
            degrees: Vec::with_capacity(next_leads.len()),
            lead_m: Vec::with_capacity(next_leads.len()),
            lead_c: Vec::with_capacity(next_leads.len()),
            total: Vec::with_capacity(next_leads.len()),
            images: Vec::with_capacity(next_leads.len()),
        };
        let imgs = images(f, cur, below, &by_comp, &next_leads);
        for (&(q, a), img) in next_leads.iter().zip(imgs) {
            next.degrees
                .push(cur.degrees[a as usize] + q.degree() as i32);
            next.lead_m.push(q);
            next.lead_c.push(a);
            next.total.push(q.mul(&cur.total[a as usize]));
            next.images.push(img);
        }
        levels.push(next);
    }
    let degrees: Vec<Vec<i32>> = levels.iter().map(|l| l.degrees.clone()).collect();
    let maps: Vec<Vec<Column>> = levels[1..]
        .iter()
        .map(|l| {
            l.images
                .iter()
                .map(|img| {
                    let mut by_row: BTreeMap<u32, Vec<Term>> = BTreeMap::new();
                    for t in img {
                        by_row
                            .entry(t.comp)
                            .or_default()
                            .push(Term { c: t.c, m: t.m });
                    }
                    by_row
                        .into_iter()
                        .map(|(b, ts)| (b, Polynomial::from_terms(ring, ts)))
                        .collect()
                })
                .collect()
        })
        .collect();
    FreeComplex {
        ring: ring.clone(),
        degrees,
        maps,
    }
}

/// Images of the frame elements with leads `q e_a`: `q e_a - sum c t e_b`, where the
/// sum is the division of `q d(e_a)` by the images of the current level.
///
/// Elements of one degree are reduced together against a shared set of reducer
/// rows `t d(e_b)`, each built once; columns are the terms of `F_{i-1}` in the
/// Schreyer order. Each column is reduced by the first `b` whose lead divides it.
fn frame_images(
    f: crate::polyring::Fp,
    cur: &Level,
    below: &Level,
    by_comp: &[Vec<u32>],
    leads: &[(Monomial, u32)],
) -> Vec<Vec<RTerm>> {
    let p = f.p() as u64;
    let mut out: Vec<Vec<RTerm>> = vec![Vec::new(); leads.len()];
    let mut by_degree: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
    for (k, &(q, a)) in leads.iter().enumerate() {
        by_degree
            .entry(cur.degrees[a as usize] + q.degree() as i32)
            .or_default()
            .push(k);
    }
    for (_, elems) in by_degree {
        // symbolic preprocessing: every column reachable from the elements, with its reducer
        let mut col_of: FxHashMap<(Monomial, u32), u32> = FxHashMap::default();
        let mut cols: Vec<(Monomial, u32)> = Vec::new();
        let mut reducer: Vec<Option<(Monomial, u32)>> = Vec::new();
        let mut queue = 0usize;
        let touch = |m: Monomial,
                     comp: u32,
                     col_of: &mut FxHashMap<(Monomial, u32), u32>,
                     cols: &mut Vec<(Monomial, u32)>| {
            col_of.entry((m, comp)).or_insert_with(|| {
                cols.push((m, comp));
                (cols.len() - 1) as u32
            });
        };
        for &k in &elems {
            let (q, a) = leads[k];
            for t in &cur.images[a as usize] {
                touch(t.m.mul(&q), t.comp, &mut col_of, &mut cols);
            }
        }
        while queue < cols.len() {
            let (m, comp) = cols[queue];
            queue += 1;
            let b = by_comp[comp as usize]
                .iter()
                .copied()
                .find(|&b| cur.lead_m[b as usize].divides(&m));
            match b {
                Some(b) => {
                    let t = m.div(&cur.lead_m[b as usize]);
                    reducer.push(Some((t, b)));
                    for term in &cur.images[b as usize][1..] {
                        touch(term.m.mul(&t), term.comp, &mut col_of, &mut cols);
                    }
                }
                None => reducer.push(None),
            }
        }
        // columns in decreasing Schreyer order
        let mut order: Vec<u32> = (0..cols.len() as u32).collect();
        let keys: Vec<(u128, u32)> = cols
            .iter()
            .map(|(m, c)| (drl_key(&m.mul(&below.total[*c as usize])), *c))
            .collect();
        order.sort_unstable_by(|&x, &y| keys[y as usize].cmp(&keys[x as usize]));
        let mut pos = vec![0u32; cols.len()];
        for (i, &c) in order.iter().enumerate() {
            pos[c as usize] = i as u32;
        }
        // reducer tails as (position, coefficient)
        let rows: Vec<Option<(Monomial, u32, Vec<(u32, u32)>)>> = order
            .iter()
            .map(|&c| {
                reducer[c as usize].map(|(t, b)| {
                    let tail = cur.images[b as usize][1..]
                        .iter()
                        .map(|term| (pos[col_of[&(term.m.mul(&t), term.comp)] as usize], term.c))
                        .collect();
                    (t, b, tail)
                })
            })
            .collect();
        let mut acc = vec![0u64; cols.len()];
        for &k in &elems {
            let (q, a) = leads[k];
            let mut start = u32::MAX;
            for t in &cur.images[a as usize] {
                let i = pos[col_of[&(t.m.mul(&q), t.comp)] as usize];
                acc[i as usize] = (acc[i as usize] + t.c as u64) % p;
                start = start.min(i);
            }
            let mut img = vec![RTerm {
                c: 1,
                m: q,
                comp: a,
            }];
            for i in start as usize..cols.len() {
                let c = acc[i];
                if c == 0 {
                    continue;
                }
                acc[i] = 0;
                let (t, b, tail) = rows[i]
                    .as_ref()
                    .expect("Schreyer frame division left a remainder");
                let neg = p - c;
                img.push(RTerm {
                    c: neg as u32,
                    m: *t,
                    comp: *b,
                });
                for &(j, v) in tail {
                    let j = j as usize;
                    acc[j] = (acc[j] + neg * v as u64) % p;
                }
            }
            out[k] = img;
        }
    }
    out
}

/// Hilbert data of `S/I` from the lead terms of its Gröbner basis.
pub fn hilbert_series(ideal: &GradedIdeal) -> HilbertData {
    HilbertData::from_leads(ideal.ring().nvars(), &ideal.lead_monomials())
}

/// `(dim, codim, degree)` of the projective scheme defined by the ideal.
pub fn dimension_degree(h: &HilbertData) -> Result<(i64, i64, i64)> {
    if h.numerator == vec![1] && h.krull_dim == h.nvars {
        return Err(Error::Precondition("zero ideal".into()));
    }
    let dim = h.dim();
    Ok((dim, h.nvars as i64 - 1 - dim, h.degree()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BinaryHeap;

    /// Image of the frame element with lead `q e_a`: `q e_a - sum c t e_b` where the
    /// sum is the division of `q d(e_a)` by the images of the current level.
    pub(super) fn syzygy_tail(
        f: crate::polyring::Fp,
        cur: &Level,
        below: &Level,
        by_comp: &[Vec<u32>],
        q: Monomial,
        a: u32,
    ) -> Vec<RTerm> {
        #[derive(Clone, Copy)]
        struct Stream {
            src: u32,
            mult: Monomial,
            coef: u32,
            pos: u32,
        }
        let key = |m: &Monomial, comp: u32| drl_key(&m.mul(&below.total[comp as usize]));
        let term = |s: &Stream| -> RTerm {
            let t = cur.images[s.src as usize][s.pos as usize];
            RTerm {
                c: f.mul(t.c, s.coef),
                m: t.m.mul(&s.mult),
                comp: t.comp,
            }
        };
        let mut streams = vec![Stream {
            src: a,
            mult: q,
            coef: 1,
            pos: 0,
        }];
        let mut heap: BinaryHeap<(u128, u32, u32)> = BinaryHeap::new();
        let t0 = term(&streams[0]);
        heap.push((key(&t0.m, t0.comp), t0.comp, 0));
        let mut out = vec![RTerm {
            c: 1,
            m: q,
            comp: a,
        }];
        let mut first = true;
        while let Some(&(k, comp, _)) = heap.peek() {
            let mut c = 0u32;
            let mut m = Monomial::one();
            while let Some(&(k2, comp2, sid)) = heap.peek() {
                if k2 != k || comp2 != comp {
                    break;
                }
                heap.pop();
                let s = &mut streams[sid as usize];
                let t = term(s);
                m = t.m;
                c = f.add(c, t.c);
                s.pos += 1;
                if (s.pos as usize) < cur.images[s.src as usize].len() {
                    let nt = term(s);
                    heap.push((key(&nt.m, nt.comp), nt.comp, sid));
                }
            }
            if c == 0 {
                first = false;
                continue;
            }
            let b = by_comp[comp as usize]
                .iter()
                .copied()
                .find(|&b| (!first || b < a) && cur.lead_m[b as usize].divides(&m))
                .expect("Schreyer frame division left a remainder");
            first = false;
            let t = m.div(&cur.lead_m[b as usize]);
            out.push(RTerm {
                c: f.neg(c),
                m: t,
                comp: b,
            });
            if cur.images[b as usize].len() > 1 {
                let sid = streams.len() as u32;
                streams.push(Stream {
                    src: b,
                    mult: t,
                    coef: f.neg(c),
                    pos: 1,
                });
                let nt = term(&streams[sid as usize]);
                heap.push((key(&nt.m, nt.comp), nt.comp, sid));
            }
        }
        out
    }

    fn ideal(n: usize, gens: &[&str]) -> GradedIdeal {
        let r = Ring::standard(n, 32003).unwrap();
        GradedIdeal::parse(&r, gens).unwrap()
    }

    #[test]
    fn principal_ideal() {
        let c = free_resolution(&ideal(3, &["x0"])).unwrap();
        assert_eq!(c.degrees(0), &[0]);
        assert_eq!(c.degrees(1), &[1]);
        assert_eq!(c.length(), 1);
        assert!(c.is_complex());
        let b = c.betti();
        assert_eq!(b.pd(), 1);
        assert_eq!(b.reg(), 0);
    }

    fn images_one_by_one(
        f: crate::polyring::Fp,
        cur: &Level,
        below: &Level,
        by_comp: &[Vec<u32>],
        leads: &[(Monomial, u32)],
    ) -> Vec<Vec<RTerm>> {
        leads
            .iter()
            .map(|&(q, a)| syzygy_tail(f, cur, below, by_comp, q, a))
            .collect()
    }

    #[test]
    fn batched_tails_match_single_division() {
        let cases: [(usize, &[&str]); 4] = [
            (4, &["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"]),
            (3, &["x0^2 + x1*x2", "x1^2 + x0*x2", "x2^2 + x0*x1"]),
            (
                5,
                &[
                    "3*x0*x1 + x2^2 - x3*x4",
                    "x0^2 - 7*x1*x4 + x2*x3",
                    "x4^3 + x0*x1*x2 - x3^3",
                    "x1*x3 + 11*x2*x4",
                ],
            ),
            (
                6,
                &[
                    "x0*x3 - x1*x2 + x4*x5",
                    "x0^2 + x5^2 - 2*x1*x3",
                    "x2*x4 - x3*x5 + x0*x1",
                    "x1^2 - x4^2",
                ],
            ),
        ];
        for (n, gens) in cases {
            let i = ideal(n, gens);
            let gb: Vec<Vector> = i
                .groebner_basis()
                .iter()
                .map(|g| crate::groebner::to_vector(g, 0))
                .collect();
            let opts = ResolutionOptions::default();
            let fast = schreyer_frame_with(i.ring(), vec![0], gb.clone(), &opts, frame_images);
            let slow = schreyer_frame_with(i.ring(), vec![0], gb, &opts, images_one_by_one);
            assert_eq!(fast.degrees, slow.degrees);
            assert_eq!(fast.maps, slow.maps);
            assert!(fast.is_complex());
        }
    }

    #[test]
    fn twisted_cubic_ranks() {
        let i = ideal(4, &["x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"]);
        let c = free_resolution(&i).unwrap();
        assert!(c.is_complex());
        let b = c.betti();
        assert_eq!(b.get(0, 0), 1);
        assert_eq!(b.get(1, 2), 3);
        assert_eq!(b.get(2, 3), 2);
        assert_eq!(b.pd(), 2);
        assert_eq!(b.reg(), 1);
        assert_eq!(minimalize(&c), b);
    }

    #[test]
    fn koszul_complex_is_minimal() {
        let c = free_resolution(&ideal(3, &["x0", "x1", "x2"])).unwrap();
        assert!(c.is_complex());
        let m = c.minimalize();
        assert!(m.is_minimal());
        assert_eq!((m.rank(0), m.rank(1), m.rank(2), m.rank(3)), (1, 3, 3, 1));
    }

    #[test]
    fn non_minimal_frame_cancels() {
        // the lead ideal has a longer resolution than the ideal itself
        let i = ideal(3, &["x0^2 + x1*x2", "x1^2 + x0*x2", "x2^2 + x0*x1"]);
        let c = free_resolution(&i).unwrap();
        assert!(c.is_complex());
        let m = c.minimalize();
        assert!(m.is_minimal());
        assert!(m.is_complex());
        assert_eq!(minimalize(&c), c.betti());
    }

    #[test]
    fn dimension_and_degree() {
        let h = hilbert_series(&ideal(4, &["x0*x1 - x2*x3"]));
        assert_eq!(dimension_degree(&h).unwrap(), (2, 1, 2));
        let z = hilbert_series(&ideal(4, &[]));
        assert!(dimension_degree(&z).is_err());
    }
}
