//! Linear algebra over F_p: dense and sparse ranks, kernels, echelon bases.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::polyring::Fp;

/// Rank of a dense matrix given as rows.
pub fn rank_dense(f: Fp, mut rows: Vec<Vec<u32>>) -> usize {
    let ncols = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r].get(col).copied().unwrap_or(0) != 0)
        else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = f.inv(rows[rank][col]);
        let pivot: Vec<u32> = rows[rank].iter().map(|&x| f.mul(x, inv)).collect();
        for r in rank + 1..rows.len() {
            let c = rows[r].get(col).copied().unwrap_or(0);
            if c != 0 {
                for (k, &pv) in pivot.iter().enumerate().skip(col) {
                    if pv != 0 {
                        rows[r][k] = f.sub(rows[r][k], f.mul(c, pv));
                    }
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

/// Basis of `{x : A x = 0}` for `A` given by rows with `ncols` columns.
pub fn kernel_dense(f: Fp, rows: &[Vec<u32>], ncols: usize) -> Vec<Vec<u32>> {
    let mut a: Vec<Vec<u32>> = rows
        .iter()
        .map(|r| {
            let mut v = r.clone();
            v.resize(ncols, 0);
            v
        })
        .collect();
    let mut pivcols = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..a.len()).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = f.inv(a[rank][col]);
        for x in a[rank].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot = a[rank].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let c = row[col];
                for k in col..ncols {
                    if pivot[k] != 0 {
                        row[k] = f.sub(row[k], f.mul(c, pivot[k]));
                    }
                }
            }
        }
        pivcols.push(col);
        rank += 1;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivcols.contains(c)) {
        let mut v = vec![0u32; ncols];
        v[free] = 1;
        for (i, &pc) in pivcols.iter().enumerate() {
            v[pc] = f.neg(a[i][free]);
        }
        basis.push(v);
    }
    basis
}

/// Solve `x A = b` for a row vector `x`, with `A` given by rows.
pub fn solve_left(f: Fp, rows: &[Vec<u32>], b: &[u32]) -> Option<Vec<u32>> {
    // x A = b  <=>  A^T x^T = b^T; kernel of [A^T | -b] with last coordinate 1
    let m = rows.len();
    let n = b.len();
    let mut t: Vec<Vec<u32>> = (0..n)
        .map(|j| {
            let mut r: Vec<u32> = (0..m)
                .map(|i| rows[i].get(j).copied().unwrap_or(0))
                .collect();
            r.push(f.neg(b[j]));
            r
        })
        .collect();
    if t.is_empty() {
        t = vec![];
    }
    let ker = kernel_dense(f, &t, m + 1);
    let v = ker.into_iter().find(|v| v[m] != 0)?;
    let s = f.inv(v[m]);
    Some(v[..m].iter().map(|&x| f.mul(x, s)).collect())
}

/// Rank of a sparse matrix; each row is a list of `(column, value)` pairs.
///
/// Row and column singletons are peeled off first; the rest goes through
/// [`SparseEchelon`].
pub fn rank_sparse(f: Fp, ncols: usize, mut rows: Vec<Vec<(u32, u32)>>) -> usize {
    for r in rows.iter_mut() {
        for e in r.iter_mut() {
            e.1 %= f.p();
        }
        r.retain(|e| e.1 != 0);
        r.sort_unstable_by_key(|e| e.0);
        r.dedup_by(|b, a| {
            if a.0 == b.0 {
                a.1 = f.add(a.1, b.1);
                true
            } else {
                false
            }
        });
        r.retain(|e| e.1 != 0);
    }
    rows.retain(|r| !r.is_empty());
    let (peeled, mut rows) = peel_singletons(ncols, rows);
    rows.sort_by_key(|r| (r[0].0, r.len()));
    let mut ech = SparseEchelon::new(f, ncols);
    for r in rows {
        ech.insert(r);
    }
    peeled + ech.rank()
}

/// Remove rows that are alone in some column and columns hit by a one-entry row,
/// counting one rank each. Returns the count and the surviving rows.
fn peel_singletons(ncols: usize, rows: Vec<Vec<(u32, u32)>>) -> (usize, Vec<Vec<(u32, u32)>>) {
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); ncols];
    for (i, r) in rows.iter().enumerate() {
        for &(c, _) in r {
            col_rows[c as usize].push(i as u32);
        }
    }
    let mut col_count: Vec<u32> = col_rows.iter().map(|v| v.len() as u32).collect();
    let mut row_len: Vec<u32> = rows.iter().map(|r| r.len() as u32).collect();
    let mut row_alive = vec![true; rows.len()];
    let mut col_alive = vec![true; ncols];
    let mut cols: Vec<u32> = (0..ncols as u32)
        .filter(|&c| col_count[c as usize] == 1)
        .collect();
    let mut singles: Vec<u32> = (0..rows.len() as u32)
        .filter(|&r| row_len[r as usize] == 1)
        .collect();
    let mut rank = 0;
    loop {
        if let Some(c) = cols.pop() {
            if !col_alive[c as usize] || col_count[c as usize] != 1 {
                continue;
            }
            let r = *col_rows[c as usize]
                .iter()
                .find(|&&r| row_alive[r as usize])
                .unwrap();
            rank += 1;
            row_alive[r as usize] = false;
            for &(c2, _) in &rows[r as usize] {
                if col_alive[c2 as usize] {
                    col_count[c2 as usize] -= 1;
                    if col_count[c2 as usize] == 1 {
                        cols.push(c2);
                    }
                }
            }
            col_alive[c as usize] = false;
        } else if let Some(r) = singles.pop() {
            if !row_alive[r as usize] || row_len[r as usize] != 1 {
                continue;
            }
            let c = rows[r as usize]
                .iter()
                .map(|e| e.0)
                .find(|&c| col_alive[c as usize])
                .unwrap();
            rank += 1;
            row_alive[r as usize] = false;
            col_alive[c as usize] = false;
            for &r2 in &col_rows[c as usize] {
                if row_alive[r2 as usize] {
                    row_len[r2 as usize] -= 1;
                    match row_len[r2 as usize] {
                        0 => row_alive[r2 as usize] = false,
                        1 => singles.push(r2),
                        _ => {}
                    }
                }
            }
        } else {
            break;
        }
    }
    let rest = rows
        .into_iter()
        .enumerate()
        .filter(|(i, _)| row_alive[*i])
        .map(|(_, r)| {
            r.into_iter()
                .filter(|e| col_alive[e.0 as usize])
                .collect::<Vec<_>>()
        })
        .filter(|r| !r.is_empty())
        .collect();
    (rank, rest)
}

/// Incrementally built row echelon form of sparse vectors (top-reduced pivots).
#[derive(Clone)]
pub struct SparseEchelon {
    f: Fp,
    pivot_of_col: Vec<u32>,
    pivots: Vec<Vec<(u32, u32)>>,
    dense: Vec<u32>,
    heap: BinaryHeap<Reverse<u32>>,
}

const NONE: u32 = u32::MAX;

impl SparseEchelon {
    pub fn new(f: Fp, ncols: usize) -> Self {
        SparseEchelon {
            f,
            pivot_of_col: vec![NONE; ncols],
            pivots: Vec::new(),
            dense: vec![0; ncols],
            heap: BinaryHeap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduce `row` (sorted by column) against the pivots; returns the remainder,
    /// which is empty iff the row lies in the span.
    pub fn reduce(&mut self, row: &[(u32, u32)], full: bool) -> Vec<(u32, u32)> {
        let f = self.f;
        for &(c, v) in row {
            if v != 0 {
                self.dense[c as usize] = f.add(self.dense[c as usize], v % f.p());
                self.heap.push(Reverse(c));
            }
        }
        let mut out = Vec::new();
        let mut last = NONE;
        while let Some(Reverse(c)) = self.heap.pop() {
            if c == last {
                continue;
            }
            let v = self.dense[c as usize];
            if v == 0 {
                continue;
            }
            let p = self.pivot_of_col[c as usize];
            if p == NONE || (!full && !out.is_empty()) {
                out.push((c, v));
                self.dense[c as usize] = 0;
                last = c;
                continue;
            }
            last = NONE;
            let neg = f.neg(v);
            let piv = &self.pivots[p as usize];
            for &(cc, pv) in piv {
                let d = &mut self.dense[cc as usize];
                let was = *d;
                *d = f.add(*d, f.mul(neg, pv));
                if was == 0 && *d != 0 {
                    self.heap.push(Reverse(cc));
                }
            }
            debug_assert_eq!(self.dense[c as usize], 0);
        }
        out
    }

    /// Insert a row; returns true if it increased the rank.
    pub fn insert(&mut self, row: Vec<(u32, u32)>) -> bool {
        let r = self.reduce(&row, false);
        self.install(r)
    }

    /// Install an already reduced remainder as a pivot row.
    pub fn install(&mut self, mut r: Vec<(u32, u32)>) -> bool {
        if r.is_empty() {
            return false;
        }
        let inv = self.f.inv(r[0].1);
        for e in r.iter_mut() {
            e.1 = self.f.mul(e.1, inv);
        }
        self.pivot_of_col[r[0].0 as usize] = self.pivots.len() as u32;
        self.pivots.push(r);
        true
    }

    /// The pivot rows, each starting at its pivot column.
    pub fn rows(&self) -> &[Vec<(u32, u32)>] {
        &self.pivots
    }

    pub fn pivot_columns(&self) -> Vec<u32> {
        self.pivots.iter().map(|r| r[0].0).collect()
    }
}
