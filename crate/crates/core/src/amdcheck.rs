//! Classification of a projective variety from its ideal, and the closed-form
//! checks for varieties of almost minimal degree.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::groebner::{saturate_irrelevant, GradedIdeal};
use crate::polyring::{monomial_count, LinearForm, Polynomial, Ring, TermOrder};
use crate::resolve::hilbert::TPoly;
use crate::resolve::{
    depth_by_regular_sequence,
    ext::{ext_deficiency_cached, ext_deficiency_with, RankCache},
    free_resolution_with, hilbert_series, BettiTable, FreeComplex, GradedModuleData, HilbertData,
    ResolutionOptions,
};

/// Default degree window for deficiency modules.
pub const DEFAULT_WINDOW: (i32, i32) = (-6, 4);

/// Maximal number of random hyperplanes tried before giving up.
pub const SECTION_RETRIES: usize = 8;

#[derive(Clone, Debug)]
pub struct AnalysisOptions {
    pub window: (i32, i32),
    pub seed: u64,
    /// Compute the deficiency modules `K^i` on the window.
    pub ext: bool,
    /// Run the Betti bound checks (the variety is a projection of a scroll).
    pub scroll_projection: bool,
    /// The variety is known to be non-normal; enables the secant dimension when ACM.
    pub non_normal: bool,
    /// Cross-check the depth by cutting with generic linear forms.
    pub regular_sequence: bool,
    pub progress: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            window: DEFAULT_WINDOW,
            seed: 0,
            ext: true,
            scroll_projection: true,
            non_normal: false,
            regular_sequence: false,
            progress: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub r: usize,
    pub d: usize,
    pub codim: usize,
    pub degree: i64,
    pub t: usize,
    pub reg: i32,
    pub is_amd: bool,
    pub is_minimal_degree: bool,
    pub is_acm: bool,
    pub is_gorenstein: bool,
    pub delta_genus: Option<i64>,
    pub sectional_genus: i64,
    pub quadric_count: u64,
    pub secant_cone_dim: Option<usize>,
    pub depth_by_regular_sequence: Option<usize>,
    pub generator_degrees: Vec<(u32, usize)>,
    pub formula_checks: BTreeMap<String, bool>,
    pub window: (i32, i32),
    pub hilbert: HilbertData,
    #[serde(serialize_with = "betti_json")]
    pub betti: BettiTable,
    pub deficiency: BTreeMap<usize, GradedModuleData>,
}

fn betti_json<S: Serializer>(b: &BettiTable, s: S) -> std::result::Result<S::Ok, S::Error> {
    b.to_json().serialize(s)
}

impl AnalysisReport {
    pub fn all_checks_pass(&self) -> bool {
        self.formula_checks.values().all(|&b| b)
    }

    pub fn failed_checks(&self) -> Vec<&str> {
        self.formula_checks
            .iter()
            .filter(|(_, &b)| !b)
            .map(|(k, _)| k.as_str())
            .collect()
    }

    pub fn to_text(&self) -> String {
        let yn = |b: bool| if b { "yes" } else { "no" };
        let opt = |o: Option<i64>| o.map_or("-".to_string(), |v| v.to_string());
        let mut s = String::new();
        let gens: Vec<String> = self
            .generator_degrees
            .iter()
            .map(|(d, n)| format!("{}x{}", n, d))
            .collect();
        let lines = [
            ("r", self.r.to_string()),
            ("dim", self.d.to_string()),
            ("codim", self.codim.to_string()),
            ("degree", self.degree.to_string()),
            ("depth t", self.t.to_string()),
            ("reg", self.reg.to_string()),
            ("generators", gens.join(" ")),
            ("minimal degree", yn(self.is_minimal_degree).into()),
            ("almost minimal", yn(self.is_amd).into()),
            ("ACM", yn(self.is_acm).into()),
            ("Gorenstein", yn(self.is_gorenstein).into()),
            ("delta genus", opt(self.delta_genus)),
            ("sectional genus", self.sectional_genus.to_string()),
            ("quadrics", self.quadric_count.to_string()),
            (
                "secant cone dim",
                opt(self.secant_cone_dim.map(|v| v as i64)),
            ),
            (
                "depth (slicing)",
                opt(self.depth_by_regular_sequence.map(|v| v as i64)),
            ),
        ];
        for (k, v) in lines {
            s.push_str(&format!("{:<16} {}\n", k, v));
        }
        for (i, k) in &self.deficiency {
            let vals: Vec<String> = k
                .hilbert
                .iter()
                .map(|(n, v)| format!("{}:{}", n, v))
                .collect();
            s.push_str(&format!(
                "K^{:<14} {}\n",
                i,
                if k.is_zero_on_window() {
                    "0".into()
                } else {
                    vals.join(" ")
                }
            ));
        }
        for (k, &v) in &self.formula_checks {
            s.push_str(&format!(
                "check {:<30} {}\n",
                k,
                if v { "PASS" } else { "FAIL" }
            ));
        }
        s
    }
}

/// Analyze with default options.
pub fn analyze(ideal: &GradedIdeal) -> Result<AnalysisReport> {
    analyze_with(ideal, &AnalysisOptions::default())
}

pub fn analyze_with(ideal: &GradedIdeal, opts: &AnalysisOptions) -> Result<AnalysisReport> {
    if ideal.is_unit() {
        return Err(Error::Precondition(
            "the unit ideal defines the empty set".into(),
        ));
    }
    if ideal.is_zero() {
        return Err(Error::Precondition(
            "the zero ideal defines the whole space".into(),
        ));
    }
    let n = ideal.ring().nvars();
    let hilbert = hilbert_series(ideal);
    let r = n - 1;
    let d = hilbert.dim() as usize;
    let codim = r - d;
    let degree = hilbert.degree();
    let ropts = ResolutionOptions {
        progress: opts.progress,
        ..Default::default()
    };
    let res = free_resolution_with(ideal, &ropts)?;
    let betti = res.betti();
    let t = betti.depth() as usize;
    let reg = betti.reg();
    let is_amd = degree == codim as i64 + 2;
    let is_acm = t == d + 1;
    let mut report = AnalysisReport {
        r,
        d,
        codim,
        degree,
        t,
        reg,
        is_amd,
        is_minimal_degree: degree == codim as i64 + 1,
        is_acm,
        is_gorenstein: false,
        delta_genus: None,
        sectional_genus: 0,
        quadric_count: ideal.dim_in_degree(2),
        secant_cone_dim: None,
        depth_by_regular_sequence: None,
        generator_degrees: ideal.generator_degrees(),
        formula_checks: BTreeMap::new(),
        window: opts.window,
        hilbert,
        betti,
        deficiency: BTreeMap::new(),
    };
    if opts.ext {
        let mut cache = RankCache::default();
        for i in 0..=d + 1 {
            let k = ext_deficiency_cached(&res, i, opts.window, i == t && t <= d, &mut cache)?;
            report.deficiency.insert(i, k);
        }
    } else if d >= 1 {
        let k = ext_deficiency_with(&res, 1, (-1, -1), false)?;
        report.deficiency.insert(1, k);
    }
    let (delta, gs) = genus_invariants(&report);
    report.delta_genus = delta;
    report.sectional_genus = gs;
    if is_acm {
        report.is_gorenstein = check_gorenstein(&report, &res, opts.window)?;
    }
    if is_amd && (t <= d || (is_acm && opts.non_normal)) {
        report.secant_cone_dim = Some(t - 1);
    }
    if opts.regular_sequence {
        let depth = depth_by_regular_sequence(ideal, opts.seed)?;
        report.depth_by_regular_sequence = Some(depth);
        report
            .formula_checks
            .insert("depth:two_routes".into(), depth == t);
    }
    if is_amd {
        let checks = amd_checks(&report, opts)?;
        report.formula_checks.extend(checks);
    }
    Ok(report)
}

fn amd_checks(report: &AnalysisReport, opts: &AnalysisOptions) -> Result<BTreeMap<String, bool>> {
    let mut out = BTreeMap::new();
    let residual = check_hilbert_formula(report, &report.hilbert)?;
    out.insert("hilbert_formula".into(), residual.iter().all(|&c| c == 0));
    out.insert("quadric_count".into(), check_quadric_count(report)?);
    out.insert("regularity".into(), report.reg == 2);
    out.insert(
        "depth_range".into(),
        1 <= report.t && report.t <= report.d + 1,
    );
    if let Some(delta) = report.delta_genus {
        out.insert(
            "delta_genus".into(),
            delta == if report.t == 1 { 0 } else { 1 },
        );
    }
    out.insert(
        "sectional_genus".into(),
        report.sectional_genus == report.is_acm as i64,
    );
    if report.is_acm {
        out.insert("gorenstein".into(), report.is_gorenstein);
    } else {
        if opts.scroll_projection {
            for (k, v) in check_betti_bounds(report, &report.betti)? {
                out.insert(format!("betti:{}", k), v);
            }
        }
        if opts.ext {
            for (k, v) in check_deficiency_shapes(report, &report.deficiency)? {
                out.insert(format!("deficiency:{}", k), v);
            }
        }
    }
    Ok(out)
}

fn require_amd(report: &AnalysisReport) -> Result<()> {
    if !report.is_amd {
        return Err(Error::Precondition(format!(
            "degree {} is not codim + 2 = {}",
            report.degree,
            report.codim + 2
        )));
    }
    Ok(())
}

fn binom(n: i64, k: i64) -> i64 {
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc as i64
}

fn poly_mul(a: &[i64], b: &[i64]) -> TPoly {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn one_minus_t_pow(k: usize) -> TPoly {
    (0..=k as i64)
        .map(|i| {
            if i % 2 == 0 {
                binom(k as i64, i)
            } else {
                -binom(k as i64, i)
            }
        })
        .collect()
}

/// Expected numerator over `(1-λ)^{r+1}` of the Hilbert series of an AMD variety of depth `t`.
pub fn expected_hilbert_numerator(r: usize, d: usize, t: usize) -> Result<TPoly> {
    let n = r + 1;
    if d + 1 > n || t == 0 || t > d + 1 {
        return Err(Error::InvalidArgument(format!(
            "(r, d, t) = ({}, {}, {})",
            r, d, t
        )));
    }
    let first = poly_mul(&[1, (r + 1 - d) as i64], &one_minus_t_pow(n - d - 1));
    let second = poly_mul(&[0, 1], &one_minus_t_pow(n - t + 1));
    let len = first.len().max(second.len());
    let mut out: TPoly = (0..len)
        .map(|i| first.get(i).copied().unwrap_or(0) - second.get(i).copied().unwrap_or(0))
        .collect();
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    Ok(out)
}

/// Residual `computed - expected` of the Hilbert numerator; all zeros on success.
pub fn check_hilbert_formula(report: &AnalysisReport, series: &HilbertData) -> Result<TPoly> {
    require_amd(report)?;
    let expected = expected_hilbert_numerator(report.r, report.d, report.t)?;
    let len = expected.len().max(series.numerator.len());
    Ok((0..len)
        .map(|i| {
            series.numerator.get(i).copied().unwrap_or(0) - expected.get(i).copied().unwrap_or(0)
        })
        .collect())
}

pub fn expected_quadric_count(r: usize, d: usize, t: usize) -> i64 {
    t as i64 + binom((r + 1 - d) as i64, 2) - d as i64 - 2
}

pub fn check_quadric_count(report: &AnalysisReport) -> Result<bool> {
    require_amd(report)?;
    Ok(report.quadric_count as i64 == expected_quadric_count(report.r, report.d, report.t))
}

/// Per-index checks of `u_i = beta_{i,i+1}` and `v_i = beta_{i,i+2}` against the bounds
/// for projections of scrolls with `t <= d`. Vacuous ranges are skipped.
pub fn check_betti_bounds(
    report: &AnalysisReport,
    betti: &BettiTable,
) -> Result<BTreeMap<String, bool>> {
    require_amd(report)?;
    if report.t > report.d {
        return Err(Error::Precondition("Betti bounds need t <= d".into()));
    }
    let (r, d, t) = (report.r as i64, report.d as i64, report.t as i64);
    let u = |i: i64| betti.get(i as usize, i as i32 + 1) as i64;
    let v = |i: i64| betti.get(i as usize, i as i32 + 2) as i64;
    let b = |i: i64| (r + 1 - d) * binom(r - d, i) - binom(r - d, i + 1);
    let c = |i: i64| i * binom(r - d, i + 1);
    let top = r - t + 2;
    let mut out = BTreeMap::new();
    out.insert(
        "u1".to_string(),
        u(1) == expected_quadric_count(report.r, report.d, report.t),
    );
    for i in 2..(r - 2 * d + t - 1) {
        out.insert(format!("u{}", i), c(i) <= u(i) && u(i) <= b(i));
    }
    for i in (r - 2 * d + t - 1).max(2)..(r - d) {
        out.insert(format!("u{}", i), u(i) == c(i));
    }
    for i in (r - d).max(1)..(r - t + 1) {
        out.insert(format!("u{}", i), u(i) == 0);
    }
    for i in 1..(r - 2 * d + t - 2) {
        let lo = (binom(top, i + 1) - (i + 2) * binom(r - d, i + 1)).max(0);
        out.insert(format!("v{}", i), lo <= v(i) && v(i) <= binom(top, i + 1));
    }
    for i in (r - 2 * d + t - 2).max(1)..(r - d) {
        out.insert(
            format!("v{}", i),
            v(i) == binom(top, i + 1) - (i + 2) * binom(r - d, i + 1),
        );
    }
    for i in (r - d).max(1)..=(r - t + 1) {
        out.insert(format!("v{}", i), v(i) == binom(top, i + 1));
    }
    for i in 1..(r - d) {
        let rhs = binom(top, i + 1) - (r - d + 1) * binom(r - d, i + 1) + binom(r - d, i + 2);
        out.insert(format!("v{}-u{}", i, i + 1), v(i) - u(i + 1) == rhs);
    }
    // nothing outside the two rows
    let off = betti
        .entries()
        .any(|(i, j, _)| i > 0 && !(j == i as i32 + 1 || j == i as i32 + 2));
    out.insert("two_rows".to_string(), !off);
    Ok(out)
}

/// Hilbert function of `(S/(y_{t-1}, ..., y_r))(2 - t)` at degree `n`.
pub fn expected_kt_dim(t: usize, n: i32) -> u64 {
    monomial_count(t - 1, n as i64 + 2 - t as i64)
}

/// Vanishing of `K^i` off `{t, d+1}`, the shape of `K^t`, and `beg K(A) = d`.
pub fn check_deficiency_shapes(
    report: &AnalysisReport,
    ext: &BTreeMap<usize, GradedModuleData>,
) -> Result<BTreeMap<String, bool>> {
    require_amd(report)?;
    let (r, d, t) = (report.r, report.d, report.t);
    if t > d {
        return Err(Error::Precondition("deficiency shapes need t <= d".into()));
    }
    let mut out = BTreeMap::new();
    for i in 0..=d + 1 {
        let Some(k) = ext.get(&i) else {
            return Err(Error::InvalidArgument(format!("K^{} missing", i)));
        };
        if i == t {
            let shape = k.hilbert.iter().all(|(&n, &v)| v == expected_kt_dim(t, n));
            out.insert(format!("K{}_shape", i), shape);
            out.insert(
                format!("K{}_linear_annihilator", i),
                k.linear_annihilator.len() == r - t + 2,
            );
        } else if i == d + 1 {
            let (lo, hi) = k.window;
            let beg = k.beg();
            let ok = if (lo..=hi).contains(&(d as i32)) {
                beg == Some(d as i32)
            } else {
                k.is_zero_on_window()
            };
            out.insert("canonical_beg".to_string(), ok);
        } else {
            out.insert(format!("K{}_vanishes", i), k.is_zero_on_window());
        }
    }
    Ok(out)
}

/// Last Betti number is 1 and `K(A)` has the Hilbert function of `A(1 - d)` on the window.
pub fn check_gorenstein(
    report: &AnalysisReport,
    res: &FreeComplex,
    window: (i32, i32),
) -> Result<bool> {
    if !report.is_acm {
        return Err(Error::Precondition(
            "Gorenstein test needs an arithmetically Cohen-Macaulay ring".into(),
        ));
    }
    let betti = res.betti();
    if betti.total(betti.pd()) != 1 {
        return Ok(false);
    }
    let k = match report.deficiency.get(&(report.d + 1)) {
        Some(k) if k.window == window => k.clone(),
        _ => ext_deficiency_with(res, report.d + 1, window, false)?,
    };
    let shift = 1 - report.d as i64;
    Ok(k.hilbert
        .iter()
        .all(|(&n, &v)| v as i128 == report.hilbert.hilbert_function(n as i64 + shift)))
}

/// `(Δ, g_s)` with `Δ = deg - codim - 1 - dim K^1(A)_{-1}` and `g_s = 1 - χ_{d-1}`.
pub fn genus_invariants(report: &AnalysisReport) -> (Option<i64>, i64) {
    let h1 = if report.d == 0 {
        Some(0)
    } else {
        report
            .deficiency
            .get(&1)
            .filter(|k| k.window.0 <= -1 && -1 <= k.window.1)
            .map(|k| k.dim(-1) as i64)
    };
    let delta = h1.map(|h| report.degree - report.codim as i64 - 1 - h);
    let chi = report.hilbert.chi_coefficients();
    let gs = if report.d >= 1 {
        1 - chi[report.d - 1] as i64
    } else {
        0
    };
    (delta, gs)
}

/// Result of cutting with a hyperplane and removing the irrelevant component.
#[derive(Clone, Debug)]
pub struct HyperplaneSection {
    pub ideal: GradedIdeal,
    pub form: LinearForm,
    pub depth_before: usize,
    pub depth_after: usize,
    pub attempts: usize,
}

impl HyperplaneSection {
    pub fn depth_delta(&self) -> i64 {
        self.depth_before as i64 - self.depth_after as i64
    }
}

fn depth_of(ideal: &GradedIdeal) -> Result<usize> {
    Ok(free_resolution_with(ideal, &ResolutionOptions::default())?
        .betti()
        .depth() as usize)
}

/// `(A / ℓA)` modulo its `H^0`, written in the variables other than the last one `ℓ` involves.
///
/// With `form = None` a seeded random form is used, retried up to [`SECTION_RETRIES`] times
/// until dimension drops by one and degree is kept.
pub fn hyperplane_section(
    ideal: &GradedIdeal,
    form: Option<&LinearForm>,
    seed: u64,
) -> Result<HyperplaneSection> {
    let ring = ideal.ring();
    let n = ring.nvars();
    if n < 2 {
        return Err(Error::InvalidArgument("no variable left to cut".into()));
    }
    let h = hilbert_series(ideal);
    let depth_before = depth_of(ideal)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let attempts = if form.is_some() { 1 } else { SECTION_RETRIES };
    for attempt in 0..attempts {
        let l = match form {
            Some(l) => l.clone(),
            None => LinearForm::new((0..n).map(|_| rng.gen_range(1..ring.prime())).collect()),
        };
        if l.len() != n {
            return Err(Error::LengthMismatch(l.len(), n));
        }
        if l.is_zero() {
            return Err(Error::InvalidArgument("zero linear form".into()));
        }
        if ideal.contains(&l.to_polynomial(ring))? {
            return Err(Error::Precondition(
                "the linear form lies in the ideal".into(),
            ));
        }
        let cut = cut_by(ideal, &l, seed.wrapping_add(attempt as u64))?;
        let hc = hilbert_series(&cut);
        let generic = hc.dim() == h.dim() - 1 && hc.degree() == h.degree();
        if generic || form.is_some() {
            let depth_after = depth_of(&cut)?;
            return Ok(HyperplaneSection {
                ideal: cut,
                form: l,
                depth_before,
                depth_after,
                attempts: attempt + 1,
            });
        }
    }
    Err(Error::Precondition(format!(
        "no generic hyperplane found in {} attempts",
        SECTION_RETRIES
    )))
}

fn cut_by(ideal: &GradedIdeal, l: &LinearForm, seed: u64) -> Result<GradedIdeal> {
    let ring = ideal.ring();
    let f = ring.field();
    let n = ring.nvars();
    let v = (0..n).rev().find(|&w| l.coeffs[w] != 0).unwrap();
    let names: Vec<String> = (0..n)
        .filter(|&w| w != v)
        .map(|w| ring.names()[w].clone())
        .collect();
    let target = Ring::new(names, ring.prime(), TermOrder::DegRevLex)?;
    let scale = f.neg(f.inv(l.coeffs[v]));
    let mut images = Vec::with_capacity(n);
    let mut xv = Polynomial::zero(&target);
    for w in 0..n {
        if w == v {
            images.push(Polynomial::zero(&target));
            continue;
        }
        let idx = if w < v { w } else { w - 1 };
        let x = Polynomial::var(&target, idx);
        xv = xv.add(&x.scale(f.mul(scale, l.coeffs[w])))?;
        images.push(x);
    }
    images[v] = xv;
    let gens = ideal
        .gens()
        .iter()
        .map(|g| g.substitute(&target, &images))
        .collect::<Result<Vec<_>>>()?;
    let cut = GradedIdeal::new(&target, gens.into_iter().filter(|g| !g.is_zero()).collect())?;
    saturate_irrelevant(&cut, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::varieties::{project_from_point, scroll_ideal, ProjectionPoint};

    fn scroll(s: &str) -> GradedIdeal {
        scroll_ideal(&s.parse().unwrap(), 32003).unwrap().1
    }

    fn projected(s: &str, p: &str) -> GradedIdeal {
        let i = scroll(s);
        let p = ProjectionPoint::parse(p, i.ring().nvars(), 32003).unwrap();
        project_from_point(&i, &p).unwrap()
    }

    #[test]
    fn expected_numerator_of_a_plane_quartic_curve() {
        // S(4) projected to P^3: (r, d, t) = (3, 1, 1), Hilbert polynomial 4n + 1
        let e = expected_hilbert_numerator(3, 1, 1).unwrap();
        assert_eq!(e, vec![1, 0, -1, -3, 4, -1]);
        assert_eq!(expected_quadric_count(3, 1, 1), 1);
        assert_eq!(expected_quadric_count(11, 3, 1), 32);
        assert_eq!(expected_quadric_count(11, 3, 3), 34);
        assert_eq!(expected_quadric_count(4, 2, 1), 0);
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(8, 6), 28);
        assert_eq!(binom(12, 9), 220);
        assert_eq!(binom(3, 5), 0);
        assert_eq!(binom(-1, 0), 0);
    }

    #[test]
    fn quartic_curve() {
        let j = projected("S(4)", "e2");
        let rep = analyze(&j).unwrap();
        assert_eq!((rep.r, rep.d, rep.degree, rep.t, rep.reg), (3, 1, 4, 1, 2));
        assert!(rep.is_amd && !rep.is_acm);
        assert_eq!(rep.hilbert.hilbert_polynomial(10), 41);
        assert!(rep.all_checks_pass(), "{:?}", rep.failed_checks());
        assert_eq!(rep.delta_genus, Some(0));
        assert_eq!(rep.sectional_genus, 0);
        assert_eq!(rep.secant_cone_dim, Some(0));
    }

    #[test]
    fn scroll_is_minimal_degree() {
        let rep = analyze(&scroll("S(2,3)")).unwrap();
        assert!(rep.is_minimal_degree && !rep.is_amd);
        assert!(rep.is_acm && !rep.is_gorenstein);
        assert!(rep.formula_checks.is_empty());
        let err = check_quadric_count(&rep);
        assert!(matches!(err, Err(Error::Precondition(_))));
    }

    #[test]
    fn twisted_cubic_projection_is_a_plane_cubic() {
        // a plane cubic is AMD and a hypersurface, hence Gorenstein
        let rep = analyze(&projected("S(3)", "e1")).unwrap();
        assert_eq!((rep.r, rep.d, rep.degree, rep.t), (2, 1, 3, 2));
        assert!(rep.is_amd && rep.is_acm && rep.is_gorenstein);
        assert_eq!(rep.sectional_genus, 1);
        assert_eq!(rep.delta_genus, Some(1));
        assert!(rep.all_checks_pass(), "{:?}", rep.failed_checks());
    }

    #[test]
    fn perturbed_series_leaves_a_residual() {
        let rep = analyze(&projected("S(4)", "e2")).unwrap();
        let mut h = rep.hilbert.clone();
        h.numerator[2] += 1;
        let res = check_hilbert_formula(&rep, &h).unwrap();
        assert_eq!(res.iter().filter(|&&c| c != 0).count(), 1);
        assert_eq!(res[2], 1);
    }

    #[test]
    fn rejects_trivial_ideals() {
        let r = Ring::standard(3, 32003).unwrap();
        assert!(analyze(&GradedIdeal::parse(&r, &["1"]).unwrap()).is_err());
        assert!(analyze(&GradedIdeal::new(&r, vec![]).unwrap()).is_err());
    }

    #[test]
    fn section_of_a_surface_scroll() {
        let i = scroll("S(2,3)");
        let s = hyperplane_section(&i, None, 3).unwrap();
        let h = hilbert_series(&s.ideal);
        assert_eq!((h.dim(), h.degree()), (1, 5));
        assert_eq!(s.ideal.ring().nvars(), 6);
        assert_eq!((s.depth_before, s.depth_after), (3, 2));
        assert_eq!(s.ideal.generator_degrees(), vec![(2, 10)]);
    }

    #[test]
    fn section_rejects_bad_forms() {
        let i = scroll("S(3)");
        assert!(hyperplane_section(&i, Some(&LinearForm::zero(4)), 0).is_err());
        let r = Ring::standard(3, 32003).unwrap();
        let j = GradedIdeal::parse(&r, &["x0", "x1*x2"]).unwrap();
        assert!(hyperplane_section(&j, Some(&LinearForm::var(3, 0)), 0).is_err());
    }
}
