use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::scroll::{ScrollMatrix, ScrollSpec};
use crate::error::{Error, Result};
use crate::linalg::{kernel_dense, rank_dense};
use crate::polyring::{Fp, LinearForm};

/// Block structure of a 1-generic `2 x c` matrix of linear forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScrollNormalForm {
    /// Echelon basis `y_0..y_m` of the span of the entries.
    pub basis: Vec<LinearForm>,
    /// Block degrees, nondecreasing.
    pub degrees: Vec<u32>,
    /// `m`: projective dimension of the span.
    pub span_dim: usize,
    /// `s - m - 1` with `s` the ambient projective dimension.
    pub vertex_dim: i64,
}

impl ScrollNormalForm {
    pub fn spec(&self) -> Result<ScrollSpec> {
        ScrollSpec::new(self.degrees.clone(), self.vertex_dim as i32)
    }

    /// Dimension of the scroll: number of blocks plus vertex dimension plus one.
    pub fn dim(&self) -> i64 {
        self.degrees.len() as i64 + self.vertex_dim + 1
    }
}

/// Row-reduced basis of the span of some linear forms.
fn echelon_basis(f: Fp, forms: &[&LinearForm], n: usize) -> Vec<LinearForm> {
    let mut rows: Vec<Vec<u32>> = forms.iter().map(|l| l.coeffs.clone()).collect();
    let mut out: Vec<Vec<u32>> = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = f.inv(rows[r][col]);
        rows[r].iter_mut().for_each(|x| *x = f.mul(*x, inv));
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[col] != 0 {
                let c = row[col];
                for k in 0..n {
                    row[k] = f.sub(row[k], f.mul(c, pivot[k]));
                }
            }
        }
        out.push(pivot);
        r += 1;
    }
    out.into_iter().map(LinearForm::new).collect()
}

/// Coordinates of `l` in an echelon basis.
fn coordinates(basis: &[LinearForm], l: &LinearForm) -> Vec<u32> {
    basis
        .iter()
        .map(|b| {
            let piv = b.coeffs.iter().position(|&c| c != 0).unwrap();
            l.coeffs[piv]
        })
        .collect()
}

/// Dimension of the degree-`k` right kernel of the pencil `s A + t B`.
fn kernel_dim(f: Fp, a: &[Vec<u32>], b: &[Vec<u32>], k: usize) -> usize {
    let rows_a = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    // unknowns z_0..z_k, equations A z_i + B z_{i-1} = 0 for i = 0..k+1
    let ncols = (k + 1) * cols;
    let mut sys = Vec::new();
    for i in 0..=k + 1 {
        for r in 0..rows_a {
            let mut row = vec![0u32; ncols];
            if i <= k {
                row[i * cols..(i + 1) * cols].copy_from_slice(&a[r]);
            }
            if i >= 1 {
                row[(i - 1) * cols..i * cols].copy_from_slice(&b[r]);
            }
            sys.push(row);
        }
    }
    ncols - rank_dense(f, sys)
}

/// Scroll type of a 1-generic `2 x c` matrix via the Kronecker minimal indices of its pencil.
pub fn scroll_normal_form(m: &ScrollMatrix) -> Result<ScrollNormalForm> {
    let f = m.ring.field();
    let n = m.ring.nvars();
    let c = m.columns();
    let forms: Vec<&LinearForm> = m.rows.iter().flatten().collect();
    let basis = echelon_basis(f, &forms, n);
    let dim = basis.len();
    let a: Vec<Vec<u32>> = m.rows[0].iter().map(|l| coordinates(&basis, l)).collect();
    let b: Vec<Vec<u32>> = m.rows[1].iter().map(|l| coordinates(&basis, l)).collect();
    let mut nk = vec![0usize; c + 2];
    for (k, slot) in nk.iter_mut().enumerate() {
        *slot = kernel_dim(f, &a, &b, k);
    }
    let at = |k: i64| if k < 0 { 0 } else { nk[k as usize] as i64 };
    let mut degrees = Vec::new();
    for k in 0..=c as i64 {
        let count = at(k) - 2 * at(k - 1) + at(k - 2);
        if count < 0 {
            return Err(Error::Precondition(
                "pencil has inconsistent kernel dimensions".into(),
            ));
        }
        for _ in 0..count {
            degrees.push(k as u32);
        }
    }
    let sum: usize = degrees.iter().map(|&d| d as usize).sum();
    if degrees.contains(&0) || sum != c || sum + degrees.len() != dim {
        return Err(Error::Precondition(
            "matrix is not 1-generic: pencil is not a sum of scroll blocks".into(),
        ));
    }
    if degrees.is_empty() {
        return Err(Error::Precondition("matrix has no scroll blocks".into()));
    }
    Ok(ScrollNormalForm {
        basis,
        degrees,
        span_dim: dim - 1,
        vertex_dim: n as i64 - dim as i64 - 1,
    })
}

/// Outcome of the sampling 1-genericity falsifier.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum GenericityResult {
    /// `v N w = 0` for these nonzero `v` and `w`.
    Falsified {
        v: [u32; 2],
        w: Vec<u32>,
    },
    Plausible {
        samples: usize,
    },
}

impl GenericityResult {
    pub fn is_falsified(&self) -> bool {
        matches!(self, GenericityResult::Falsified { .. })
    }
}

/// Test row vectors `v`: if the entries of `v N` are dependent, a `w` with `v N w = 0` exists.
/// With `samples > p` every point of `P^1(F_p)` is tried.
pub fn one_generic_test(m: &ScrollMatrix, samples: usize, seed: u64) -> GenericityResult {
    let f = m.ring.field();
    let p = f.p();
    let c = m.columns();
    let check = |v: [u32; 2]| -> Option<Vec<u32>> {
        let row: Vec<LinearForm> = (0..c)
            .map(|k| m.rows[0][k].scale(f, v[0]).axpy(f, v[1], &m.rows[1][k]))
            .collect();
        // columns of the coefficient matrix are the forms; kernel gives w
        let n = m.ring.nvars();
        let rows: Vec<Vec<u32>> = (0..n)
            .map(|var| row.iter().map(|l| l.coeffs[var]).collect())
            .collect();
        kernel_dense(f, &rows, c).into_iter().next()
    };
    let mut tried = 0usize;
    let mut candidates: Vec<[u32; 2]> = Vec::new();
    if samples as u64 > p as u64 {
        candidates.push([0, 1]);
        candidates.extend((0..p).map(|a| [1, a]));
    } else {
        candidates.extend([[1, 0], [0, 1]]);
        for a in 1..=8u32.min(p - 1) {
            candidates.push([1, a % p]);
            candidates.push([1, f.neg(a % p)]);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        while candidates.len() < samples {
            candidates.push([1, rng.gen_range(0..p)]);
        }
    }
    for v in candidates.into_iter().take(samples.max(1)) {
        tried += 1;
        if let Some(w) = check(v) {
            return GenericityResult::Falsified { v, w };
        }
    }
    GenericityResult::Plausible { samples: tried }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{Ring, DEFAULT_PRIME};
    use crate::varieties::scroll_ideal;

    fn mat(p: u32, n: usize, top: &[&[(usize, i64)]], bot: &[&[(usize, i64)]]) -> ScrollMatrix {
        let ring = Ring::standard(n, p).unwrap();
        let f = ring.field();
        let lf = |e: &[(usize, i64)]| {
            let mut c = vec![0; n];
            for &(v, a) in e {
                c[v] = f.from_i64(a);
            }
            LinearForm::new(c)
        };
        ScrollMatrix::new(
            &ring,
            top.iter().map(|e| lf(e)).collect(),
            bot.iter().map(|e| lf(e)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn fixed_point_on_scrolls() {
        for s in ["S(2)", "S(1,1)", "S(2,2,6)", "S(1,3)+vertex:1", "S(3,3,4)"] {
            let spec: ScrollSpec = s.parse().unwrap();
            let (m, _) = scroll_ideal(&spec, DEFAULT_PRIME).unwrap();
            let nf = scroll_normal_form(&m).unwrap();
            assert_eq!(nf.degrees, spec.degrees, "{}", s);
            assert_eq!(nf.vertex_dim, spec.vertex as i64, "{}", s);
            assert_eq!(nf.spec().unwrap(), spec);
        }
    }

    #[test]
    fn conjugated_conic() {
        let (m, _) = scroll_ideal(&"S(1,2)".parse().unwrap(), DEFAULT_PRIME).unwrap();
        let w = vec![vec![1, 2, 0], vec![0, 1, 5], vec![3, 0, 1]];
        let c = m.conjugate(&[[2, 1], [1, 1]], &w).unwrap();
        assert_ne!(c, m);
        assert_eq!(scroll_normal_form(&c).unwrap().degrees, vec![1, 2]);
    }

    #[test]
    fn zero_entry_is_not_generic() {
        let m = mat(DEFAULT_PRIME, 3, &[&[(0, 1)], &[(1, 1)]], &[&[(1, 1)], &[]]);
        match one_generic_test(&m, 100, 0) {
            GenericityResult::Falsified { v, w } => {
                assert!(v != [0, 0] && w.iter().any(|&x| x != 0));
            }
            r => panic!("{:?}", r),
        }
        assert!(scroll_normal_form(&m).is_err());
    }

    #[test]
    fn symmetric_and_skew_two_by_two() {
        // [[x0, x1], [x1, x0]] is killed by v = (1, +-1)
        let m = mat(
            DEFAULT_PRIME,
            2,
            &[&[(0, 1)], &[(1, 1)]],
            &[&[(1, 1)], &[(0, 1)]],
        );
        assert!(one_generic_test(&m, 20, 0).is_falsified());
        // [[x0, x1], [-x1, x0]] needs v = (1, i) with i^2 = -1; 13 = 1 mod 4, 11 = 3 mod 4
        let skew = |p| mat(p, 2, &[&[(0, 1)], &[(1, 1)]], &[&[(1, -1)], &[(0, 1)]]);
        match one_generic_test(&skew(13), 100, 0) {
            GenericityResult::Falsified { v, .. } => assert_eq!((v[1] * v[1]) % 13, 12),
            r => panic!("{:?}", r),
        }
        assert!(!one_generic_test(&skew(11), 100, 0).is_falsified());
    }

    #[test]
    fn scrolls_are_plausible() {
        let (m, _) = scroll_ideal(&"S(2,3)".parse().unwrap(), DEFAULT_PRIME).unwrap();
        assert_eq!(
            one_generic_test(&m, 10_000, 7),
            GenericityResult::Plausible { samples: 10_000 }
        );
    }
}
