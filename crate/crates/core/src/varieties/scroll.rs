use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::GradedIdeal;
use crate::polyring::{Fp, LinearForm, Polynomial, Ring};

/// A rational normal scroll `S(d_1, ..., d_l)`, possibly a cone with vertex of dimension `h`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScrollSpec {
    pub degrees: Vec<u32>,
    /// Vertex dimension; `-1` for no vertex.
    pub vertex: i32,
}

impl ScrollSpec {
    pub fn new(degrees: Vec<u32>, vertex: i32) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::InvalidArgument(
                "a scroll needs at least one block".into(),
            ));
        }
        if degrees.iter().any(|&d| d < 1) {
            return Err(Error::InvalidArgument(
                "scroll degrees must be at least 1".into(),
            ));
        }
        if degrees.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidArgument(
                "scroll degrees must be nondecreasing".into(),
            ));
        }
        if vertex < -1 {
            return Err(Error::InvalidArgument(
                "vertex dimension must be at least -1".into(),
            ));
        }
        let s = ScrollSpec { degrees, vertex };
        if s.nvars() > crate::polyring::MAX_VARS {
            return Err(Error::TooManyVariables {
                got: s.nvars(),
                max: crate::polyring::MAX_VARS,
            });
        }
        Ok(s)
    }

    pub fn smooth(degrees: &[u32]) -> Result<Self> {
        ScrollSpec::new(degrees.to_vec(), -1)
    }

    /// `n = sum d_i + l - 1`: the scroll spans `P^n`.
    pub fn span_dim(&self) -> usize {
        self.degrees.iter().sum::<u32>() as usize + self.degrees.len() - 1
    }

    /// Ambient projective dimension `s = n + h + 1`.
    pub fn ambient_dim(&self) -> usize {
        (self.span_dim() as i64 + self.vertex as i64 + 1) as usize
    }

    pub fn nvars(&self) -> usize {
        self.ambient_dim() + 1
    }

    pub fn dim(&self) -> usize {
        (self.degrees.len() as i64 + self.vertex as i64 + 1) as usize
    }

    pub fn degree(&self) -> u32 {
        self.degrees.iter().sum()
    }

    pub fn columns(&self) -> usize {
        self.degree() as usize
    }

    /// Column split points `a_1 < ... < a_{l-1}` of the block matrix.
    pub fn splits(&self) -> Vec<usize> {
        let mut a = Vec::new();
        let mut acc: i64 = -1;
        for &d in &self.degrees[..self.degrees.len() - 1] {
            acc += d as i64 + 1;
            a.push(acc as usize);
        }
        a
    }
}

impl fmt::Display for ScrollSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ds: Vec<String> = self.degrees.iter().map(|d| d.to_string()).collect();
        write!(f, "S({})", ds.join(","))?;
        if self.vertex >= 0 {
            write!(f, "+vertex:{}", self.vertex)?;
        }
        Ok(())
    }
}

impl FromStr for ScrollSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            pos: 0,
            msg: format!("expected `S(d1,...,dl)[+vertex:h]`, got `{}`", s),
        };
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (head, vertex) = match t.split_once('+') {
            Some((h, v)) => {
                let v = v.strip_prefix("vertex:").ok_or_else(bad)?;
                (h.to_string(), v.parse::<i32>().map_err(|_| bad())?)
            }
            None => (t.clone(), -1),
        };
        let inner = head
            .strip_prefix("S(")
            .and_then(|x| x.strip_suffix(')'))
            .ok_or_else(bad)?;
        let degrees = inner
            .split(',')
            .map(|x| x.parse::<u32>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        ScrollSpec::new(degrees, vertex)
    }
}

/// A `2 x c` matrix of linear forms whose `2 x 2` minors define a scroll.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScrollMatrix {
    pub ring: Arc<Ring>,
    pub rows: [Vec<LinearForm>; 2],
    /// Variables that appear in no entry (cone directions).
    pub vertex_vars: Vec<usize>,
}

impl ScrollMatrix {
    pub fn new(ring: &Arc<Ring>, top: Vec<LinearForm>, bottom: Vec<LinearForm>) -> Result<Self> {
        if top.len() != bottom.len() {
            return Err(Error::LengthMismatch(top.len(), bottom.len()));
        }
        let n = ring.nvars();
        if top.iter().chain(&bottom).any(|l| l.len() != n) {
            return Err(Error::InvalidArgument(
                "entries must be linear forms of the ring".into(),
            ));
        }
        let vertex_vars = (0..n)
            .filter(|&v| top.iter().chain(&bottom).all(|l| l.coeffs[v] == 0))
            .collect();
        Ok(ScrollMatrix {
            ring: ring.clone(),
            rows: [top, bottom],
            vertex_vars,
        })
    }

    pub fn columns(&self) -> usize {
        self.rows[0].len()
    }

    pub fn entry(&self, row: usize, col: usize) -> &LinearForm {
        &self.rows[row][col]
    }

    pub fn minor(&self, i: usize, j: usize) -> Polynomial {
        let r = &self.ring;
        let a = self.rows[0][i].to_polynomial(r);
        let b = self.rows[0][j].to_polynomial(r);
        let c = self.rows[1][i].to_polynomial(r);
        let d = self.rows[1][j].to_polynomial(r);
        a.mul(&d).unwrap().sub(&b.mul(&c).unwrap()).unwrap()
    }

    /// All `2 x 2` minors, columns `i < j` in lexicographic order, zeros dropped.
    pub fn minors(&self) -> Vec<Polynomial> {
        let c = self.columns();
        let mut out = Vec::new();
        for i in 0..c {
            for j in i + 1..c {
                let m = self.minor(i, j);
                if !m.is_zero() {
                    out.push(m);
                }
            }
        }
        out
    }

    pub fn ideal(&self) -> Result<GradedIdeal> {
        GradedIdeal::new(&self.ring, self.minors())
    }

    /// Dimension of the span of the entries.
    pub fn span_rank(&self) -> usize {
        let rows: Vec<Vec<u32>> = self
            .rows
            .iter()
            .flatten()
            .map(|l| l.coeffs.clone())
            .collect();
        crate::linalg::rank_dense(self.ring.field(), rows)
    }

    /// `V N W^{-1}` for invertible `V` (2x2) and `W` (c x c).
    pub fn conjugate(&self, v: &[[u32; 2]; 2], w: &[Vec<u32>]) -> Result<ScrollMatrix> {
        let f = self.ring.field();
        let c = self.columns();
        if f.sub(f.mul(v[0][0], v[1][1]), f.mul(v[0][1], v[1][0])) == 0 {
            return Err(Error::SingularMatrix);
        }
        let winv = crate::polyring::invert_matrix(f, w)?;
        let n = self.ring.nvars();
        let mut rows: [Vec<LinearForm>; 2] = [Vec::new(), Vec::new()];
        for (r, out) in rows.iter_mut().enumerate() {
            for col in 0..c {
                let mut acc = LinearForm::zero(n);
                for k in 0..2 {
                    for l in 0..c {
                        let coef = f.mul(v[r][k], winv[l][col]);
                        if coef != 0 {
                            acc = acc.axpy(f, coef, &self.rows[k][l]);
                        }
                    }
                }
                out.push(acc);
            }
        }
        let [top, bottom] = rows;
        ScrollMatrix::new(&self.ring, top, bottom)
    }

    pub fn to_text(&self) -> String {
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|l| l.to_polynomial(&self.ring).to_string())
                    .collect()
            })
            .collect();
        let c = self.columns();
        let w: Vec<usize> = (0..c)
            .map(|j| cells[0][j].len().max(cells[1][j].len()))
            .collect();
        let mut out = String::new();
        for row in &cells {
            out.push('[');
            let parts: Vec<String> = row
                .iter()
                .enumerate()
                .map(|(j, s)| format!("{:>w$}", s, w = w[j]))
                .collect();
            out.push_str(&parts.join("  "));
            out.push_str("]\n");
        }
        out
    }
}

fn field(prime: u32) -> Result<Fp> {
    Fp::new(prime)
}

/// The block matrix of a scroll and its ideal of `2 x 2` minors in `x0..x_s`.
pub fn scroll_ideal(spec: &ScrollSpec, prime: u32) -> Result<(ScrollMatrix, GradedIdeal)> {
    field(prime)?;
    let ring = Ring::standard(spec.nvars(), prime)?;
    let n = ring.nvars();
    let mut top = Vec::new();
    let mut bottom = Vec::new();
    let mut start = 0usize;
    for &d in &spec.degrees {
        for k in 0..d as usize {
            top.push(LinearForm::var(n, start + k));
            bottom.push(LinearForm::var(n, start + k + 1));
        }
        start += d as usize + 1;
    }
    let m = ScrollMatrix::new(&ring, top, bottom)?;
    let i = m.ideal()?;
    Ok((m, i))
}

/// The symmetric `3 x 3` matrix whose `2 x 2` minors define the Veronese surface in `P^5`.
pub fn veronese_matrix() -> [[usize; 3]; 3] {
    [[0, 1, 2], [1, 3, 4], [2, 4, 5]]
}

/// Ideal of the Veronese surface: the distinct `2 x 2` minors of the symmetric matrix.
pub fn veronese_ideal(prime: u32) -> Result<GradedIdeal> {
    let ring = Ring::standard(6, prime)?;
    let m = veronese_matrix();
    let x = |v: usize| Polynomial::var(&ring, v);
    let mut gens: Vec<Polynomial> = Vec::new();
    let pairs = [(0, 1), (0, 2), (1, 2)];
    for &(r1, r2) in &pairs {
        for &(c1, c2) in &pairs {
            let p = x(m[r1][c1])
                .mul(&x(m[r2][c2]))?
                .sub(&x(m[r1][c2]).mul(&x(m[r2][c1]))?)?;
            if !p.is_zero() && !gens.iter().any(|g| *g == p || *g == p.neg()) {
                gens.push(p);
            }
        }
    }
    GradedIdeal::new(&ring, gens)
}

/// Skew-symmetric `5 x 5` matrix of variables: entry `(i, j)`, `i < j`, is a variable index.
fn skew_index(i: usize, j: usize) -> usize {
    // row-major over the strict upper triangle
    let mut k = 0;
    for a in 0..5 {
        for b in a + 1..5 {
            if (a, b) == (i, j) {
                return k;
            }
            k += 1;
        }
    }
    unreachable!()
}

/// The five `4 x 4` Pfaffians of the generic skew `5 x 5` matrix in `x0..x9`.
///
/// `F_k = (-1)^k Pf(M without row and column k)`, so that `M F = 0`.
pub fn pfaffian_fixture(prime: u32) -> Result<GradedIdeal> {
    let ring = Ring::standard(10, prime)?;
    let entry = |i: usize, j: usize| Polynomial::var(&ring, skew_index(i, j));
    let mut gens = Vec::new();
    for k in 0..5 {
        let idx: Vec<usize> = (0..5).filter(|&x| x != k).collect();
        let (a, b, c, d) = (idx[0], idx[1], idx[2], idx[3]);
        let pf = entry(a, b)
            .mul(&entry(c, d))?
            .sub(&entry(a, c).mul(&entry(b, d))?)?
            .add(&entry(a, d).mul(&entry(b, c))?)?;
        gens.push(if k % 2 == 0 { pf } else { pf.neg() });
    }
    GradedIdeal::new(&ring, gens)
}

/// Entry `(i, j)` of the skew matrix as a polynomial.
#[cfg(test)]
fn skew_entry(ring: &Arc<Ring>, i: usize, j: usize) -> Polynomial {
    use std::cmp::Ordering::*;
    match i.cmp(&j) {
        Equal => Polynomial::zero(ring),
        Less => Polynomial::var(ring, skew_index(i, j)),
        Greater => Polynomial::var(ring, skew_index(j, i)).neg(),
    }
}
