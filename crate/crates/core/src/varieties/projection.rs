use std::fmt;
use std::sync::Arc;

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::pencil::{scroll_normal_form, ScrollNormalForm};
use super::scroll::ScrollMatrix;
use crate::error::{Error, Result};
use crate::groebner::{eliminate, GradedIdeal};
use crate::polyring::{LinearForm, Ring};
use crate::resolve::hilbert_series;

/// An `F_p`-rational point of the ambient projective space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ProjectionPoint {
    pub coords: Vec<u32>,
}

impl ProjectionPoint {
    pub fn new(coords: Vec<u32>, prime: u32) -> Result<Self> {
        let coords: Vec<u32> = coords.into_iter().map(|c| c % prime).collect();
        if coords.iter().all(|&c| c == 0) {
            return Err(Error::InvalidArgument(
                "projection point must be nonzero".into(),
            ));
        }
        Ok(ProjectionPoint { coords })
    }

    /// The coordinate point `e_k`.
    pub fn coordinate(nvars: usize, k: usize) -> Result<Self> {
        if k >= nvars {
            return Err(Error::InvalidArgument(format!(
                "e{} is not a point of P^{}",
                k,
                nvars as i64 - 1
            )));
        }
        let mut coords = vec![0; nvars];
        coords[k] = 1;
        Ok(ProjectionPoint { coords })
    }

    /// `e<k>` or comma-separated coordinates (negative values allowed).
    pub fn parse(s: &str, nvars: usize, prime: u32) -> Result<Self> {
        let s = s.trim();
        if let Some(k) = s.strip_prefix('e') {
            let k: usize = k.parse().map_err(|_| Error::Parse {
                pos: 1,
                msg: format!("bad coordinate point `{}`", s),
            })?;
            return Self::coordinate(nvars, k);
        }
        let mut coords = Vec::new();
        for (i, part) in s.split(',').enumerate() {
            let v: i64 = part.trim().parse().map_err(|_| Error::Parse {
                pos: i,
                msg: format!("bad coordinate `{}`", part.trim()),
            })?;
            coords.push(v.rem_euclid(prime as i64) as u32);
        }
        if coords.len() != nvars {
            return Err(Error::LengthMismatch(coords.len(), nvars));
        }
        Self::new(coords, prime)
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// First coordinate that is nonzero.
    pub fn default_center(&self) -> usize {
        self.coords
            .iter()
            .position(|&c| c != 0)
            .expect("nonzero point")
    }

    pub fn lies_on(&self, ideal: &GradedIdeal) -> Result<bool> {
        for g in ideal.gens() {
            if g.eval(&self.coords)? != 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for ProjectionPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nz: Vec<usize> = (0..self.coords.len())
            .filter(|&i| self.coords[i] != 0)
            .collect();
        if nz.len() == 1 && self.coords[nz[0]] == 1 {
            return write!(f, "e{}", nz[0]);
        }
        let s: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

/// A seeded random point off the variety. With `support = Some(k)` only `k` coordinates are nonzero.
pub fn random_point(
    ideal: &GradedIdeal,
    seed: u64,
    support: Option<usize>,
) -> Result<ProjectionPoint> {
    let n = ideal.ring().nvars();
    let p = ideal.ring().prime();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..1000 {
        let mut coords = vec![0u32; n];
        match support {
            Some(k) if k < n => {
                let mut idx: Vec<usize> = (0..n).collect();
                for i in 0..k.max(1) {
                    let j = rng.gen_range(i..n);
                    idx.swap(i, j);
                    coords[idx[i]] = rng.gen_range(1..p);
                }
            }
            _ => coords.iter_mut().for_each(|c| *c = rng.gen_range(0..p)),
        }
        if coords.iter().all(|&c| c == 0) {
            continue;
        }
        let pt = ProjectionPoint { coords };
        if !pt.lies_on(ideal)? {
            return Ok(pt);
        }
    }
    Err(Error::Precondition(
        "could not find a point off the variety".into(),
    ))
}

/// Result of projecting from a point: the image ideal in the coordinates
/// `y_a = x_a - (c_a / c_v) x_v`, `a != v`, named after the `x_a`.
#[derive(Clone, Debug)]
pub struct Projection {
    pub ideal: GradedIdeal,
    pub point: ProjectionPoint,
    pub center: usize,
    /// `x = T y`: row `a` is the image of `x_a`.
    pub substitution: Vec<Vec<u32>>,
}

impl Projection {
    /// Restrict a linear form vanishing at the point to the target ring.
    pub fn restrict_linear(&self, l: &LinearForm) -> Result<LinearForm> {
        let f = self.ideal.ring().field();
        if l.eval(f, &self.point.coords) != 0 {
            return Err(Error::Precondition(
                "linear form does not vanish at the center".into(),
            ));
        }
        let mut c = l.coeffs.clone();
        c.remove(self.center);
        Ok(LinearForm::new(c))
    }
}

fn substitution(ring: &Arc<Ring>, p: &ProjectionPoint, v: usize) -> Vec<Vec<u32>> {
    let n = ring.nvars();
    let mut t = vec![vec![0u32; n]; n];
    for a in 0..n {
        if a == v {
            t[a][v] = p.coords[v];
        } else {
            t[a][a] = 1;
            t[a][v] = p.coords[a];
        }
    }
    t
}

/// Image of `V(I)` under projection from `p`, centred at the first nonzero coordinate.
pub fn project_from_point(ideal: &GradedIdeal, p: &ProjectionPoint) -> Result<GradedIdeal> {
    Ok(project_from_point_with_center(ideal, p, None)?.ideal)
}

/// Projection from `p`; `center` picks which coordinate `v` (with `c_v != 0`) is eliminated.
pub fn project_from_point_with_center(
    ideal: &GradedIdeal,
    p: &ProjectionPoint,
    center: Option<usize>,
) -> Result<Projection> {
    let ring = ideal.ring();
    if p.len() != ring.nvars() {
        return Err(Error::LengthMismatch(p.len(), ring.nvars()));
    }
    if ring.nvars() < 2 {
        return Err(Error::InvalidArgument(
            "cannot project from a point of P^0".into(),
        ));
    }
    if p.coords.iter().all(|&c| c == 0) {
        return Err(Error::InvalidArgument(
            "projection point must be nonzero".into(),
        ));
    }
    if p.lies_on(ideal)? {
        return Err(Error::Precondition(format!(
            "point {} lies on the variety",
            p
        )));
    }
    let v = center.unwrap_or_else(|| p.default_center());
    if v >= ring.nvars() || p.coords[v] == 0 {
        return Err(Error::InvalidArgument(format!(
            "center x{} has zero coordinate",
            v
        )));
    }
    let t = substitution(ring, p, v);
    let moved = if p
        .coords
        .iter()
        .enumerate()
        .all(|(a, &c)| (a == v) == (c != 0))
        && p.coords[v] == 1
    {
        ideal.clone()
    } else {
        ideal.apply_linear_change(&t)?
    };
    let image = eliminate(&moved, &[v])?;
    Ok(Projection {
        ideal: image,
        point: p.clone(),
        center: v,
        substitution: t,
    })
}

/// Output of the containing-scroll construction with its certificate.
#[derive(Clone, Debug)]
pub struct ContainingScroll {
    pub matrix: ScrollMatrix,
    pub projection: Projection,
    /// Columns `(i, j)` of the source matrix used for the pivot block.
    pub columns: (usize, usize),
    /// `delta = t_i b_j - t_j b_i` of the matrix evaluated at the point.
    pub delta: u32,
    pub normal_form: ScrollNormalForm,
    pub minors_contained: bool,
    pub dim_source: i64,
    pub dim_scroll: i64,
    pub dim_image: i64,
    pub source_vertex_dim: i64,
    pub scroll_vertex_dim: i64,
}

impl ContainingScroll {
    pub fn vertex_gap(&self) -> i64 {
        self.scroll_vertex_dim - self.source_vertex_dim
    }

    pub fn dimension_ok(&self) -> bool {
        self.dim_scroll == self.dim_source + 1
    }

    pub fn is_valid(&self) -> bool {
        self.minors_contained && self.dimension_ok() && (0..=3).contains(&self.vertex_gap())
    }
}

/// Scroll `Y` in the target space containing the projection of the scroll of `m` from `p`.
pub fn containing_scroll(m: &ScrollMatrix, p: &ProjectionPoint) -> Result<ContainingScroll> {
    let source = m.ideal()?;
    let proj = project_from_point_with_center(&source, p, None)?;
    containing_scroll_for(m, &source, proj)
}

/// As [`containing_scroll`] with a precomputed projection of the ideal of `m`.
pub fn containing_scroll_for(
    m: &ScrollMatrix,
    source: &GradedIdeal,
    proj: Projection,
) -> Result<ContainingScroll> {
    let ring = &m.ring;
    let f = ring.field();
    let n = ring.nvars();
    let p = &proj.point;
    let c = m.columns();
    if c < 2 {
        return Err(Error::InvalidArgument(
            "matrix needs at least two columns".into(),
        ));
    }
    let top: Vec<u32> = m.rows[0].iter().map(|l| l.eval(f, &p.coords)).collect();
    let bot: Vec<u32> = m.rows[1].iter().map(|l| l.eval(f, &p.coords)).collect();
    let det = |i: usize, j: usize| f.sub(f.mul(top[i], bot[j]), f.mul(top[j], bot[i]));
    let (i, j) = (0..c)
        .flat_map(|i| (0..c).map(move |j| (i, j)))
        .find(|&(i, j)| i != j && bot[i] != 0 && det(i, j) != 0)
        .ok_or_else(|| Error::Precondition(format!("point {} lies on the scroll", p)))?;
    let delta = det(i, j);

    // every entry is (value at p) * x_v / c_v plus a form vanishing at p
    let mut rows = m.rows.clone();
    let a = f.div(top[i], bot[i]);
    let mut vals = [top.clone(), bot.clone()];
    for k in 0..c {
        rows[0][k] = rows[0][k].axpy(f, f.neg(a), &rows[1][k]);
        vals[0][k] = f.sub(vals[0][k], f.mul(a, vals[1][k]));
    }
    // column i now has value (0, b_i), column j has value (-delta / b_i, b_j)
    let col_op = |rows: &mut [Vec<LinearForm>; 2],
                  vals: &mut [Vec<u32>; 2],
                  dst: usize,
                  src: usize,
                  e: u32| {
        for r in 0..2 {
            let s = rows[r][src].clone();
            rows[r][dst] = rows[r][dst].axpy(f, f.neg(e), &s);
            vals[r][dst] = f.sub(vals[r][dst], f.mul(e, vals[r][src]));
        }
    };
    let e = f.div(vals[1][j], vals[1][i]);
    col_op(&mut rows, &mut vals, j, i, e);
    debug_assert_eq!(vals[1][j], 0);
    debug_assert_eq!(vals[0][j], f.neg(f.div(delta, bot[i])));
    for k in (0..c).filter(|&k| k != i && k != j) {
        let e1 = f.div(vals[1][k], vals[1][i]);
        col_op(&mut rows, &mut vals, k, i, e1);
        let e2 = f.div(vals[0][k], vals[0][j]);
        col_op(&mut rows, &mut vals, k, j, e2);
        debug_assert!(vals[0][k] == 0 && vals[1][k] == 0);
    }
    let target = proj.ideal.ring().clone();
    let mut new_rows: [Vec<LinearForm>; 2] = [Vec::new(), Vec::new()];
    for r in 0..2 {
        for k in (0..c).filter(|&k| k != i && k != j) {
            new_rows[r].push(proj.restrict_linear(&rows[r][k])?);
        }
    }
    let [t, b] = new_rows;
    let nmat = ScrollMatrix::new(&target, t, b)?;

    let mut minors_contained = true;
    for g in nmat.minors() {
        if !proj.ideal.contains(&g)? {
            minors_contained = false;
            break;
        }
    }
    let y_ideal = nmat.ideal()?;
    let dim_scroll = hilbert_series(&y_ideal).dim();
    let dim_source = hilbert_series(source).dim();
    let dim_image = hilbert_series(&proj.ideal).dim();
    let normal_form = scroll_normal_form(&nmat)?;
    let source_vertex_dim = n as i64 - m.span_rank() as i64 - 1;
    let scroll_vertex_dim = normal_form.vertex_dim;
    Ok(ContainingScroll {
        matrix: nmat,
        projection: proj,
        columns: (i, j),
        delta,
        normal_form,
        minors_contained,
        dim_source,
        dim_scroll,
        dim_image,
        source_vertex_dim,
        scroll_vertex_dim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{Polynomial, DEFAULT_PRIME};
    use crate::varieties::scroll_ideal;

    #[test]
    fn point_parsing() {
        let p = ProjectionPoint::parse("e9", 13, DEFAULT_PRIME).unwrap();
        assert_eq!(p.default_center(), 9);
        assert_eq!(p.to_string(), "e9");
        let q = ProjectionPoint::parse("0,1,-1,0", 4, DEFAULT_PRIME).unwrap();
        assert_eq!(q.coords, vec![0, 1, DEFAULT_PRIME - 1, 0]);
        assert!(ProjectionPoint::parse("0,0,0", 3, DEFAULT_PRIME).is_err());
        assert!(ProjectionPoint::parse("e13", 13, DEFAULT_PRIME).is_err());
        assert!(ProjectionPoint::parse("1,2", 3, DEFAULT_PRIME).is_err());
    }

    #[test]
    fn twisted_cubic_to_plane_cubic() {
        let (_, i) = scroll_ideal(&"S(3)".parse().unwrap(), DEFAULT_PRIME).unwrap();
        let p = ProjectionPoint::parse("1,0,0,1", 4, DEFAULT_PRIME).unwrap();
        let j = project_from_point(&i, &p).unwrap();
        assert_eq!(j.ring().nvars(), 3);
        assert_eq!(j.generator_degrees(), vec![(3, 1)]);
        // every image point of the parametrisation satisfies the cubic
        let g = &j.gens()[0];
        for (s, t) in [(1u32, 2u32), (3, 5), (7, 1)] {
            let x = [s * s * s, s * s * t, s * t * t, t * t * t];
            // y_a = x_a - c_a / c_0 x_0 for a = 1, 2, 3
            let f = j.ring().field();
            let y = [x[1], x[2], f.sub(x[3], x[0])];
            assert_eq!(g.eval(&y).unwrap(), 0);
        }
    }

    #[test]
    fn point_on_variety_rejected() {
        let (_, i) = scroll_ideal(&"S(2)".parse().unwrap(), DEFAULT_PRIME).unwrap();
        let p = ProjectionPoint::parse("1,1,1", 3, DEFAULT_PRIME).unwrap();
        assert!(matches!(
            project_from_point(&i, &p),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn secant_projection_drops_degree() {
        let (_, i) = scroll_ideal(&"S(1,1)".parse().unwrap(), DEFAULT_PRIME).unwrap();
        let p = ProjectionPoint::parse("1,0,0,1", 4, DEFAULT_PRIME).unwrap();
        let j = project_from_point(&i, &p).unwrap();
        assert!(j.is_zero());
        assert_eq!(hilbert_series(&j).degree(), 1);
    }

    #[test]
    fn rational_normal_curve_containing_scroll() {
        let (m, _) = scroll_ideal(&"S(4)".parse().unwrap(), DEFAULT_PRIME).unwrap();
        let p = ProjectionPoint::parse("0,0,1,0,0", 5, DEFAULT_PRIME).unwrap();
        let cs = containing_scroll(&m, &p).unwrap();
        assert!(cs.minors_contained);
        assert_eq!(cs.dim_source, 1);
        assert_eq!(cs.dim_scroll, 2);
        assert!(cs.is_valid(), "{:?}", cs.normal_form);
        assert_eq!(cs.matrix.columns(), 2);
    }

    #[test]
    fn generic_point_containing_scroll() {
        let (m, i) = scroll_ideal(&"S(2,3)".parse().unwrap(), DEFAULT_PRIME).unwrap();
        for seed in 0..5 {
            let p = random_point(&i, seed, None).unwrap();
            let cs = containing_scroll(&m, &p).unwrap();
            assert!(cs.is_valid(), "seed {}: {:?}", seed, cs);
            for g in cs.matrix.minors() {
                assert!(cs.projection.ideal.contains(&g).unwrap());
            }
        }
    }

    #[test]
    fn restriction_matches_substitution() {
        let (_, i) = scroll_ideal(&"S(3)".parse().unwrap(), DEFAULT_PRIME).unwrap();
        let p = ProjectionPoint::parse("0,2,3,1", 4, DEFAULT_PRIME).unwrap();
        let pr = project_from_point_with_center(&i, &p, Some(2)).unwrap();
        let r = i.ring();
        let f = r.field();
        // l = 3 x1 - 2 x2 vanishes at p
        let l = LinearForm::new(vec![0, 3, f.neg(2), 0]);
        let rl = pr.restrict_linear(&l).unwrap();
        let lhs = Polynomial::from_terms(r, l.to_polynomial(r).into_terms())
            .apply_linear_change(&pr.substitution)
            .unwrap();
        let mut c = rl.coeffs.clone();
        c.insert(2, 0);
        assert_eq!(lhs, LinearForm::new(c).to_polynomial(r));
    }
}
