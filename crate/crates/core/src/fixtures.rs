//! Named example varieties with their expected invariants.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::amdcheck::{analyze_with, AnalysisOptions, AnalysisReport, DEFAULT_WINDOW};
use crate::error::{Error, Result};
use crate::groebner::GradedIdeal;
use crate::polyring::DEFAULT_PRIME;
use crate::resolve::{free_resolution_module, restrict_scalars, BettiTable, ResolutionOptions};
use crate::varieties::{
    containing_scroll_for, pfaffian_fixture, project_from_point_with_center, scroll_ideal,
    veronese_ideal, Projection, ProjectionPoint, ScrollMatrix, ScrollSpec,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    /// A scroll (or cone) projected from a point, given as text.
    Projection {
        scroll: &'static str,
        point: &'static str,
    },
    /// The Veronese surface projected from a point.
    Veronese {
        point: &'static str,
    },
    Pfaffian,
    /// A scroll itself.
    Scroll(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub r: usize,
    pub d: usize,
    pub degree: i64,
    pub t: usize,
    pub reg: i32,
    pub is_amd: bool,
    pub is_gorenstein: bool,
    pub quadrics: u64,
    pub generator_degrees: Option<Vec<(u32, usize)>>,
    pub u_row: Option<Vec<u64>>,
    pub v_row: Option<Vec<u64>>,
    pub secant_cone_dim: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub description: &'static str,
    pub source: Source,
    pub expected: Expected,
    /// Non-normal ACM fixture.
    pub non_normal: bool,
    /// Part of the default verification suite.
    pub in_suite: bool,
}

/// A fixture's ideal, with the source scroll and projection when there is one.
#[derive(Clone, Debug)]
pub struct Built {
    pub ideal: GradedIdeal,
    pub matrix: Option<ScrollMatrix>,
    pub source: Option<GradedIdeal>,
    pub projection: Option<Projection>,
}

impl Fixture {
    pub fn build(&self, prime: u32) -> Result<Built> {
        match &self.source {
            Source::Projection { scroll, point } => {
                let spec: ScrollSpec = scroll.parse()?;
                let (m, i) = scroll_ideal(&spec, prime)?;
                let p = ProjectionPoint::parse(point, spec.nvars(), prime)?;
                let proj = project_from_point_with_center(&i, &p, None)?;
                Ok(Built {
                    ideal: proj.ideal.clone(),
                    matrix: Some(m),
                    source: Some(i),
                    projection: Some(proj),
                })
            }
            Source::Veronese { point } => {
                let i = veronese_ideal(prime)?;
                let p = ProjectionPoint::parse(point, 6, prime)?;
                let proj = project_from_point_with_center(&i, &p, None)?;
                Ok(Built {
                    ideal: proj.ideal.clone(),
                    matrix: None,
                    source: Some(i),
                    projection: Some(proj),
                })
            }
            Source::Pfaffian => Ok(Built {
                ideal: pfaffian_fixture(prime)?,
                matrix: None,
                source: None,
                projection: None,
            }),
            Source::Scroll(s) => {
                let (m, i) = scroll_ideal(&s.parse()?, prime)?;
                Ok(Built {
                    ideal: i,
                    matrix: Some(m),
                    source: None,
                    projection: None,
                })
            }
        }
    }

    fn is_scroll_projection(&self) -> bool {
        matches!(self.source, Source::Projection { .. })
    }
}

fn exp(r: usize, d: usize, degree: i64, t: usize, quadrics: u64) -> Expected {
    Expected {
        r,
        d,
        degree,
        t,
        reg: 2,
        is_amd: true,
        is_gorenstein: t == d + 1,
        quadrics,
        generator_degrees: None,
        u_row: None,
        v_row: None,
        secant_cone_dim: if t <= d { Some(t - 1) } else { None },
    }
}

fn rows(mut e: Expected, gens: &[(u32, usize)], u: &[u64], v: &[u64]) -> Expected {
    e.generator_degrees = Some(gens.to_vec());
    e.u_row = Some(u.to_vec());
    e.v_row = Some(v.to_vec());
    e
}

fn del_pezzo(r: usize, d: usize, quadrics: u64) -> Expected {
    let mut e = exp(r, d, r as i64 - d as i64 + 2, d + 1, quadrics);
    e.secant_cone_dim = Some(d);
    e
}

/// All registered fixtures, suite members first.
pub fn all() -> Vec<Fixture> {
    let v11 = [220, 66, 12, 1];
    let tail = |head: &[u64]| -> Vec<u64> { head.iter().chain(v11.iter()).copied().collect() };
    vec![
        Fixture {
            name: "ex6.1A",
            description: "S(2,2,6) in P^12 projected from e9: depth 1, 32 quadrics",
            source: Source::Projection {
                scroll: "S(2,2,6)",
                point: "e9",
            },
            expected: rows(
                exp(11, 3, 10, 1, 32),
                &[(2, 32)],
                &[32, 130, 234, 234, 140, 48, 7, 0, 0, 0, 0],
                &tail(&[0, 20, 155, 456, 728, 728, 486]),
            ),
            non_normal: false,
            in_suite: true,
        },
        Fixture {
            name: "ex6.1B",
            description: "S(2,2,6) in P^12 projected from e10: depth 1, 32 quadrics and a cubic",
            source: Source::Projection {
                scroll: "S(2,2,6)",
                point: "e10",
            },
            expected: rows(
                exp(11, 3, 10, 1, 32),
                &[(2, 32), (3, 1)],
                &[32, 131, 234, 234, 140, 48, 7, 0, 0, 0, 0],
                &tail(&[1, 20, 155, 456, 728, 728, 486]),
            ),
            non_normal: false,
            in_suite: true,
        },
        Fixture {
            name: "ex6.1C",
            description: "S(2,4,4) in P^12 projected from e10: depth 1, 32 quadrics and 3 cubics",
            source: Source::Projection {
                scroll: "S(2,4,4)",
                point: "e10",
            },
            expected: rows(
                exp(11, 3, 10, 1, 32),
                &[(2, 32), (3, 3)],
                &[32, 133, 248, 234, 140, 48, 7, 0, 0, 0, 0],
                &tail(&[3, 34, 155, 456, 728, 728, 486]),
            ),
            non_normal: false,
            in_suite: true,
        },
        Fixture {
            name: "ex6.2A",
            description: "S(3,3,4) in P^12 projected from e6: depth 2, secant cone a line",
            source: Source::Projection {
                scroll: "S(3,3,4)",
                point: "e6",
            },
            expected: rows(
                exp(11, 3, 10, 2, 33),
                &[(2, 33), (3, 1)],
                &[33, 142, 278, 284, 155, 48, 7, 0, 0, 0],
                &[1, 9, 40, 141, 266, 266, 156, 55, 11, 1],
            ),
            non_normal: false,
            in_suite: true,
        },
        Fixture {
            name: "ex6.2B",
            description: "S(2,4,4) in P^12 projected from e1: depth 3, secant cone a plane",
            source: Source::Projection {
                scroll: "S(2,4,4)",
                point: "e1",
            },
            expected: rows(
                exp(11, 3, 10, 3, 34),
                &[(2, 34)],
                &[34, 151, 314, 364, 230, 69, 7, 0, 0],
                &[0, 0, 0, 6, 35, 56, 36, 10, 1],
            ),
            non_normal: false,
            in_suite: true,
        },
        Fixture {
            name: "ex6.3A",
            description: "S(2,3) in P^6 projected from e1: non-normal Del Pezzo surface in P^5",
            source: Source::Projection {
                scroll: "S(2,3)",
                point: "e1",
            },
            expected: del_pezzo(5, 2, 5),
            non_normal: true,
            in_suite: true,
        },
        Fixture {
            name: "ex6.3B",
            description:
                "S(1,1,2) in P^6 projected from (0:1:1:0:...:0): non-normal Del Pezzo 3-fold in P^5",
            source: Source::Projection {
                scroll: "S(1,1,2)",
                point: "0,1,1,0,0,0,0",
            },
            expected: del_pezzo(5, 3, 2),
            non_normal: true,
            in_suite: true,
        },
        Fixture {
            name: "ex6.4",
            description:
                "Pfaffians of the generic skew 5x5 matrix: Gorenstein 6-fold of degree 5 in P^9",
            source: Source::Pfaffian,
            expected: {
                let mut e = rows(exp(9, 6, 5, 7, 5), &[(2, 5)], &[5, 5, 0], &[0, 0, 1]);
                e.secant_cone_dim = None;
                e
            },
            non_normal: false,
            in_suite: true,
        },
        Fixture {
            name: "ex6.3A-r4",
            description: "S(2,2) in P^5 projected from e1: non-normal Del Pezzo surface in P^4",
            source: Source::Projection {
                scroll: "S(2,2)",
                point: "e1",
            },
            expected: del_pezzo(4, 2, 2),
            non_normal: true,
            in_suite: false,
        },
        Fixture {
            name: "ex6.3A-r6",
            description: "S(2,4) in P^7 projected from e1: non-normal Del Pezzo surface in P^6",
            source: Source::Projection {
                scroll: "S(2,4)",
                point: "e1",
            },
            expected: del_pezzo(6, 2, 9),
            non_normal: true,
            in_suite: false,
        },
        Fixture {
            name: "ex6.3B-r6",
            description:
                "S(1,1,3) in P^7 projected from (0:1:1:0:...:0): non-normal Del Pezzo 3-fold in P^6",
            source: Source::Projection {
                scroll: "S(1,1,3)",
                point: "0,1,1,0,0,0,0,0",
            },
            expected: del_pezzo(6, 3, 5),
            non_normal: true,
            in_suite: false,
        },
        Fixture {
            name: "veronese",
            description:
                "Veronese surface projected from a point off its secant variety: no quadrics",
            source: Source::Veronese {
                point: "1,0,0,1,0,1",
            },
            expected: {
                let mut e = exp(4, 2, 4, 1, 0);
                e.reg = 2;
                e
            },
            non_normal: false,
            in_suite: false,
        },
        Fixture {
            name: "quartic",
            description: "rational normal quartic projected to a smooth quartic curve in P^3",
            source: Source::Projection {
                scroll: "S(4)",
                point: "e2",
            },
            expected: rows(
                exp(3, 1, 4, 1, 1),
                &[(2, 1), (3, 3)],
                &[1, 0, 0],
                &[3, 4, 1],
            ),
            non_normal: false,
            in_suite: false,
        },
        Fixture {
            name: "scroll",
            description: "the scroll S(2,3) itself: minimal degree, not almost minimal",
            source: Source::Scroll("S(2,3)"),
            expected: Expected {
                r: 6,
                d: 2,
                degree: 5,
                t: 3,
                reg: 1,
                is_amd: false,
                is_gorenstein: false,
                quadrics: 10,
                generator_degrees: Some(vec![(2, 10)]),
                u_row: Some(vec![10, 20, 15, 4]),
                v_row: Some(vec![0, 0, 0, 0]),
                secant_cone_dim: None,
            },
            non_normal: false,
            in_suite: false,
        },
    ]
}

/// The default verification suite.
pub fn suite() -> Vec<Fixture> {
    all().into_iter().filter(|f| f.in_suite).collect()
}

pub fn find(name: &str) -> Result<Fixture> {
    all()
        .into_iter()
        .find(|f| f.name == name)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown fixture `{}`", name)))
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub prime: u32,
    pub seed: u64,
    pub window: (i32, i32),
    pub progress: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            prime: DEFAULT_PRIME,
            seed: 0,
            window: DEFAULT_WINDOW,
            progress: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Verification {
    pub fixture: String,
    pub checks: BTreeMap<String, bool>,
    pub report: AnalysisReport,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.checks.values().all(|&b| b)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|(_, &b)| !b)
            .map(|(k, _)| k.as_str())
            .collect()
    }
}

/// Betti table of the projected scroll's coordinate ring as a module over the target ring.
pub fn source_ring_betti(built: &Built) -> Result<Option<BettiTable>> {
    let (Some(source), Some(proj)) = (&built.source, &built.projection) else {
        return Ok(None);
    };
    let moved = source.apply_linear_change(&proj.substitution)?;
    let sub = restrict_scalars(&moved, proj.center)?;
    Ok(Some(
        free_resolution_module(&sub, &ResolutionOptions::default())?.betti(),
    ))
}

/// Expected Betti numbers of the source ring over the target ring when `t <= d`:
/// `k ⊕ k(-1)` in homological degree 0, then `b_i` in degree `i + 1`.
pub fn expected_source_ring_betti(r: usize, d: usize) -> BTreeMap<(usize, i32), u64> {
    let c = |n: usize, k: usize| crate::polyring::binomial(n as u64, k as u64);
    let mut out = BTreeMap::new();
    out.insert((0, 0), 1);
    out.insert((0, 1), 1);
    for i in 1..=r - d {
        out.insert(
            (i, i as i32 + 1),
            (r + 1 - d) as u64 * c(r - d, i) - c(r - d, i + 1),
        );
    }
    out
}

/// Run the analysis and compare with the expected values.
pub fn verify(fixture: &Fixture, opts: &VerifyOptions) -> Result<Verification> {
    let built = fixture.build(opts.prime)?;
    let aopts = AnalysisOptions {
        window: opts.window,
        seed: opts.seed,
        ext: true,
        scroll_projection: fixture.is_scroll_projection(),
        non_normal: fixture.non_normal,
        regular_sequence: true,
        progress: opts.progress,
    };
    let report = analyze_with(&built.ideal, &aopts)?;
    let e = &fixture.expected;
    let mut checks = BTreeMap::new();
    let mut put = |k: &str, v: bool| {
        checks.insert(k.to_string(), v);
    };
    put("expected:r", report.r == e.r);
    put("expected:dim", report.d == e.d);
    put("expected:degree", report.degree == e.degree);
    put("expected:depth", report.t == e.t);
    put("expected:reg", report.reg == e.reg);
    put("expected:amd", report.is_amd == e.is_amd);
    put(
        "expected:gorenstein",
        report.is_gorenstein == e.is_gorenstein,
    );
    put("expected:quadrics", report.quadric_count == e.quadrics);
    put(
        "expected:secant_cone_dim",
        report.secant_cone_dim == e.secant_cone_dim,
    );
    if let Some(g) = &e.generator_degrees {
        put("expected:generators", &report.generator_degrees == g);
    }
    if let Some(u) = &e.u_row {
        put("expected:u_row", &report.betti.u_row() == u);
    }
    if let Some(v) = &e.v_row {
        put("expected:v_row", &report.betti.v_row() == v);
    }
    if let (Some(m), Some(src), Some(proj)) = (&built.matrix, &built.source, &built.projection) {
        let cs = containing_scroll_for(m, src, proj.clone())?;
        put("containing_scroll:minors", cs.minors_contained);
        put("containing_scroll:dimension", cs.dimension_ok());
        put(
            "containing_scroll:vertex_gap",
            (0..=3).contains(&cs.vertex_gap()),
        );
    }
    if fixture.is_scroll_projection() && report.is_amd && report.t <= report.d {
        if let Some(b) = source_ring_betti(&built)? {
            let got: BTreeMap<(usize, i32), u64> =
                b.entries().map(|(i, j, v)| ((i, j), v)).collect();
            put(
                "source_ring_betti",
                got == expected_source_ring_betti(report.r, report.d),
            );
        }
    }
    for (k, &v) in &report.formula_checks {
        put(k, v);
    }
    Ok(Verification {
        fixture: fixture.name.to_string(),
        checks,
        report,
    })
}
