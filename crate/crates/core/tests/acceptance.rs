//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits nonzero on any failure.


use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use amdeg::amdcheck::{
    analyze_with, check_betti_bounds, hyperplane_section, AnalysisOptions, AnalysisReport,
    SECTION_RETRIES,
};
use amdeg::fixtures::{self, find, verify, Verification, VerifyOptions};
use amdeg::groebner::GradedIdeal;
use amdeg::resolve::{depth_by_regular_sequence, free_resolution};
use amdeg::varieties::project_from_point;
use amdeg::varieties::{
    containing_scroll, random_point, scroll_ideal, ProjectionPoint, ScrollSpec,
};

const PRIME: u32 = 32003;
const FIVE: [&str; 5] = ["ex6.1A", "ex6.1B", "ex6.1C", "ex6.2A", "ex6.2B"];
const PER_FIXTURE_LIMIT: Duration = Duration::from_secs(15 * 60);
const SUITE_LIMIT: Duration = Duration::from_secs(60 * 60);
const PROPERTY_LIMIT: Duration = Duration::from_secs(5 * 60);
const RANDOM_POINTS_PER_SCROLL: u64 = 50;
const SMOOTH_PROJECTIONS: u64 = 200;
const CONE_PROJECTIONS: u64 = 100;
const SMOOTH_DEPTH_BOUND: usize = 4;

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: true,
        detail: detail.into(),
    }
}

fn outcome(problems: Vec<String>, summary: impl Into<String>) -> Outcome {
    if problems.is_empty() {
        pass(summary)
    } else {
        Outcome {
            ok: false,
            detail: problems.join("; "),
        }
    }
}

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

struct Runs {
    verifications: BTreeMap<String, (Verification, Duration)>,
}

impl Runs {
    fn new() -> Self {
        Runs {
            verifications: BTreeMap::new(),
        }
    }

    fn get(&mut self, name: &str) -> &(Verification, Duration) {
        if !self.verifications.contains_key(name) {
            let start = Instant::now();
            let v = verify(&find(name).unwrap(), &VerifyOptions::default()).unwrap();
            self.verifications
                .insert(name.to_string(), (v, start.elapsed()));
        }
        &self.verifications[name]
    }

    fn report(&mut self, name: &str) -> AnalysisReport {
        self.get(name).0.report.clone()
    }
}

fn betti_tables(runs: &mut Runs) -> Outcome {
    let mut problems = Vec::new();
    let suite_start = Instant::now();
    for f in fixtures::suite() {
        let (v, took) = runs.get(f.name);
        if FIVE.contains(&f.name) {
            let r = &v.report;
            if Some(r.betti.u_row()) != f.expected.u_row
                || Some(r.betti.v_row()) != f.expected.v_row
            {
                problems.push(format!("{} table differs", f.name));
            }
            if *took > PER_FIXTURE_LIMIT {
                problems.push(format!("{} took {:?}", f.name, took));
            }
        }
    }
    let total = suite_start.elapsed();
    if total > SUITE_LIMIT {
        problems.push(format!("suite took {:?}", total));
    }
    let slowest = FIVE.iter().map(|n| runs.get(n).1).max().unwrap();
    outcome(
        problems,
        format!(
            "five tables exact, slowest {:.2?}, suite {:.2?}",
            slowest, total
        ),
    )
}

fn quadric_counts(runs: &mut Runs) -> Outcome {
    let mut problems = Vec::new();
    let want = [32, 32, 32, 33, 34];
    for (name, w) in FIVE.iter().zip(want) {
        let r = runs.report(name);
        let formula = r.t as i64 + binom((r.r + 1 - r.d) as i64, 2) - r.d as i64 - 2;
        if r.quadric_count != w || formula != w as i64 {
            problems.push(format!(
                "{}: {} quadrics, formula {}",
                name, r.quadric_count, formula
            ));
        }
    }
    let v = runs.report("veronese");
    if v.quadric_count != 0 {
        problems.push(format!("veronese: {} quadrics", v.quadric_count));
    }
    outcome(problems, "32 32 32 33 34, veronese 0")
}

/// `(1 + (r+1-d) z)(1-z)^(r-d) - z (1-z)^(r+2-t)`, expanded term by term.
fn hilbert_oracle(r: usize, d: usize, t: usize) -> Vec<i64> {
    let (r, d, t) = (r as i64, d as i64, t as i64);
    let len = (r + 4) as usize;
    let mut out = vec![0i64; len];
    let sgn = |k: i64| if k % 2 == 0 { 1 } else { -1 };
    for k in 0..=r - d {
        out[k as usize] += sgn(k) * binom(r - d, k);
        out[k as usize + 1] += (r + 1 - d) * sgn(k) * binom(r - d, k);
    }
    for k in 0..=r + 2 - t {
        out[k as usize + 1] -= sgn(k) * binom(r + 2 - t, k);
    }
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    out
}

fn hilbert_series_formula(runs: &mut Runs) -> Outcome {
    let mut problems = Vec::new();
    let names = [
        "ex6.1A",
        "ex6.1B",
        "ex6.1C",
        "ex6.2A",
        "ex6.2B",
        "ex6.3A-r4",
        "ex6.3A",
        "ex6.3A-r6",
        "ex6.3B",
        "ex6.3B-r6",
        "ex6.4",
        "quartic",
    ];
    for name in names {
        let r = runs.report(name);
        let mut got = r.hilbert.numerator.clone();
        while got.len() > 1 && *got.last().unwrap() == 0 {
            got.pop();
        }
        if !r.is_amd
            || got != hilbert_oracle(r.r, r.d, r.t)
            || r.formula_checks.get("hilbert_formula") != Some(&true)
        {
            problems.push(name.to_string());
        }
    }
    outcome(
        problems,
        format!(
            "{} AMD fixtures, ACM r = 4, 5, 6 and 5, 6 included",
            names.len()
        ),
    )
}

fn depth_and_regularity(runs: &mut Runs) -> Outcome {
    let mut problems = Vec::new();
    for (name, t) in FIVE.iter().zip([1, 1, 1, 2, 3]) {
        let r = runs.report(name);
        if r.t != t || r.reg != 2 {
            problems.push(format!("{}: t {} reg {}", name, r.t, r.reg));
        }
    }
    for name in [
        "ex6.3A-r4",
        "ex6.3A",
        "ex6.3A-r6",
        "ex6.3B",
        "ex6.3B-r6",
        "ex6.4",
    ] {
        let r = runs.report(name);
        if r.t != r.d + 1 {
            problems.push(format!("{}: t {} d {}", name, r.t, r.d));
        }
    }
    outcome(
        problems,
        "t = 1 1 1 2 3 with reg 2, t = d+1 on the ACM fixtures",
    )
}

fn betti_bounds(runs: &mut Runs) -> Outcome {
    let mut problems = Vec::new();
    let mut count = 0;
    for name in FIVE {
        let r = runs.report(name);
        let checks = check_betti_bounds(&r, &r.betti).unwrap();
        count += checks.len();
        for (k, ok) in checks {
            if !ok {
                problems.push(format!("{} {}", name, k));
            }
        }
        // exact windows recomputed here
        let (rr, d, t) = (r.r as i64, r.d as i64, r.t as i64);
        let u = r.betti.u_row();
        let v = r.betti.v_row();
        for i in (r.r as i64 - 2 * d + t - 1).max(2)..rr - d {
            if u[i as usize - 1] as i64 != i * binom(rr - d, i + 1) {
                problems.push(format!("{} u{}", name, i));
            }
        }
        for i in (rr - d).max(1)..=rr - t + 1 {
            if v[i as usize - 1] as i64 != binom(rr - t + 2, i + 1) {
                problems.push(format!("{} v{}", name, i));
            }
        }
    }
    let r = runs.report("ex6.1A");
    let u = r.betti.u_row();
    let v = r.betti.v_row();
    if u[4..7] != [140, 48, 7] || v[7..] != [220, 66, 12, 1] {
        problems.push(format!("ex6.1A tails {:?} {:?}", &u[4..7], &v[7..]));
    }
    outcome(
        problems,
        format!(
            "{} bound checks, ex6.1A tails 140 48 7 / 220 66 12 1",
            count
        ),
    )
}

fn deficiency_modules(runs: &mut Runs) -> Outcome {
    let mut problems = Vec::new();
    for name in FIVE {
        let r = runs.report(name);
        if r.window != (-6, 4) {
            problems.push(format!("{} window {:?}", name, r.window));
        }
        for (k, ok) in &r.formula_checks {
            if k.starts_with("deficiency:") && !ok {
                problems.push(format!("{} {}", name, k));
            }
        }
        for (i, m) in &r.deficiency {
            let nonzero = m.hilbert.values().any(|&x| x != 0);
            if nonzero != (*i == r.t || *i == r.d + 1) {
                problems.push(format!("{} K^{}", name, i));
            }
        }
        // K^t(n) = dim of the degree n + 2 - t part of k[y_0..y_{t-2}], recounted here
        let kt = &r.deficiency[&r.t];
        for (&n, &dim) in &kt.hilbert {
            let deg = n as i64 + 2 - r.t as i64;
            let want = match (deg, r.t) {
                (d, _) if d < 0 => 0,
                (d, 1) => (d == 0) as i64,
                (d, t) => binom(d + t as i64 - 2, t as i64 - 2),
            };
            if dim as i64 != want {
                problems.push(format!("{} K^{}({})", name, r.t, n));
            }
        }
        if r.t == 1 {
            let k1 = &r.deficiency[&1];
            let shape: Vec<(i32, u64)> = k1
                .hilbert
                .iter()
                .filter(|(_, &v)| v != 0)
                .map(|(&n, &v)| (n, v))
                .collect();
            if shape != [(-1, 1)] || k1.linear_annihilator.len() != r.r + 1 {
                problems.push(format!("{} K^1 is not k(1)", name));
            }
        }
    }
    outcome(
        problems,
        "window [-6, 4], K^1 = k(1) on the three t = 1 fixtures",
    )
}

fn containing_scrolls(_runs: &mut Runs) -> Outcome {
    let mut problems = Vec::new();
    let mut count = 0;
    let mut scrolls: Vec<&str> = Vec::new();
    for f in fixtures::all() {
        if let fixtures::Source::Projection { scroll, point } = f.source {
            let spec: ScrollSpec = scroll.parse().unwrap();
            let (m, _) = scroll_ideal(&spec, PRIME).unwrap();
            let p = ProjectionPoint::parse(point, spec.nvars(), PRIME).unwrap();
            match containing_scroll(&m, &p) {
                Ok(cs) if cs.is_valid() => count += 1,
                _ => problems.push(format!("{} at {}", f.name, point)),
            }
            if !scrolls.contains(&scroll) {
                scrolls.push(scroll);
            }
        }
    }
    for scroll in &scrolls {
        let spec: ScrollSpec = scroll.parse().unwrap();
        let (m, i) = scroll_ideal(&spec, PRIME).unwrap();
        let n = spec.nvars();
        for seed in 0..RANDOM_POINTS_PER_SCROLL {
            // alternate dense points with sparse ones, which hit the special positions
            let support = if seed % 2 == 0 {
                None
            } else {
                Some(1 + (seed as usize / 2) % n)
            };
            let p = random_point(&i, 1000 + seed, support).unwrap();
            match containing_scroll(&m, &p) {
                Ok(cs) if cs.is_valid() => count += 1,
                Ok(cs) => problems.push(format!(
                    "{} at {}: minors {} dims {}/{} gap {}",
                    scroll,
                    p,
                    cs.minors_contained,
                    cs.dim_scroll,
                    cs.dim_source,
                    cs.vertex_gap()
                )),
                Err(e) => problems.push(format!("{} at {}: {}", scroll, p, e)),
            }
        }
    }
    outcome(
        problems,
        format!(
            "{} certified, {} scrolls with {} random points each",
            count,
            scrolls.len(),
            RANDOM_POINTS_PER_SCROLL
        ),
    )
}

/// Depth by the minimal resolution and by a regular sequence; both must agree.
fn depth_two_routes(ideal: &GradedIdeal, seed: u64) -> Result<usize, String> {
    let n = ideal.ring().nvars();
    let pd = free_resolution(ideal)
        .map_err(|e| e.to_string())?
        .betti()
        .pd();
    let by_betti = n - pd;
    let by_sequence = depth_by_regular_sequence(ideal, seed).map_err(|e| e.to_string())?;
    if by_betti != by_sequence {
        return Err(format!(
            "depth {} by Betti, {} by regular sequence",
            by_betti, by_sequence
        ));
    }
    Ok(by_betti)
}

fn random_projection_depths(
    scrolls: &[&str],
    count: u64,
    bound: fn(&ScrollSpec) -> usize,
) -> (Vec<String>, BTreeMap<usize, u64>) {
    let jobs: Vec<(usize, u64)> = (0..count)
        .map(|k| ((k as usize) % scrolls.len(), k))
        .collect();
    let threads = std::thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(8);
    let results: Vec<Result<(usize, usize), String>> = std::thread::scope(|s| {
        let chunks: Vec<Vec<(usize, u64)>> = (0..threads)
            .map(|t| jobs.iter().copied().skip(t).step_by(threads).collect())
            .collect();
        let handles: Vec<_> = chunks
            .into_iter()
            .map(|chunk| {
                s.spawn(move || {
                    chunk
                        .into_iter()
                        .map(|(which, seed)| {
                            let spec: ScrollSpec = scrolls[which].parse().unwrap();
                            let (_, i) = scroll_ideal(&spec, PRIME).unwrap();
                            let support = if seed % 2 == 0 {
                                None
                            } else {
                                Some(1 + (seed as usize / 2) % spec.nvars())
                            };
                            let p = random_point(&i, 5000 + seed, support)
                                .map_err(|e| e.to_string())?;
                            let image = project_from_point(&i, &p).map_err(|e| e.to_string())?;
                            let t = depth_two_routes(&image, seed)
                                .map_err(|e| format!("{} at {}: {}", scrolls[which], p, e))?;
                            if t > bound(&spec) {
                                return Err(format!("{} at {}: t = {}", scrolls[which], p, t));
                            }
                            Ok((which, t))
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().unwrap())
            .collect()
    });
    let mut problems = Vec::new();
    let mut histogram = BTreeMap::new();
    for r in results {
        match r {
            Ok((_, t)) => *histogram.entry(t).or_insert(0) += 1,
            Err(e) => problems.push(e),
        }
    }
    (problems, histogram)
}

fn depth_bounds(_runs: &mut Runs) -> Outcome {
    let smooth = ["S(2,2,6)", "S(2,4,4)", "S(3,3,4)", "S(4)", "S(2,3)"];
    let (mut problems, hs) =
        random_projection_depths(&smooth, SMOOTH_PROJECTIONS, |_| SMOOTH_DEPTH_BOUND);
    let cones = [
        "S(2,3)+vertex:0",
        "S(1,1,2)+vertex:0",
        "S(4)+vertex:0",
        "S(2,2)+vertex:1",
        "S(1,3)+vertex:1",
    ];
    let (p2, hc) = random_projection_depths(&cones, CONE_PROJECTIONS, |s| s.vertex as usize + 5);
    problems.extend(p2);
    let total_s: u64 = hs.values().sum();
    let total_c: u64 = hc.values().sum();
    if total_s != SMOOTH_PROJECTIONS || total_c != CONE_PROJECTIONS {
        problems.push(format!("ran {} + {} projections", total_s, total_c));
    }
    outcome(
        problems,
        format!("smooth depths {:?}, cone depths {:?}", hs, hc),
    )
}

fn gorenstein(runs: &mut Runs) -> Outcome {
    let mut problems = Vec::new();
    for name in [
        "ex6.3A-r4",
        "ex6.3A",
        "ex6.3A-r6",
        "ex6.3B",
        "ex6.3B-r6",
        "ex6.4",
    ] {
        let r = runs.report(name);
        if !r.is_gorenstein || r.formula_checks.get("gorenstein") != Some(&true) {
            problems.push(format!("{} not Gorenstein", name));
        }
    }
    let scrolls = [
        "S(3)",
        "S(4)",
        "S(1,2)",
        "S(2,2)",
        "S(2,3)",
        "S(1,1,2)",
        "S(3,3)",
        "S(2,2)+vertex:0",
        "S(1,1,1,1)",
    ];
    for s in scrolls {
        let spec: ScrollSpec = s.parse().unwrap();
        let (_, i) = scroll_ideal(&spec, PRIME).unwrap();
        let opts = AnalysisOptions {
            scroll_projection: false,
            ..AnalysisOptions::default()
        };
        let r = analyze_with(&i, &opts).unwrap();
        if r.codim < 2 || r.is_gorenstein {
            problems.push(format!(
                "{} codim {} Gorenstein {}",
                s, r.codim, r.is_gorenstein
            ));
        }
    }
    outcome(
        problems,
        format!("6 Del Pezzo fixtures pass, {} scrolls fail", scrolls.len()),
    )
}

fn hyperplane_sections(runs: &mut Runs) -> Outcome {
    let mut problems = Vec::new();
    let b = find("ex6.2B").unwrap().build(PRIME).unwrap().ideal;
    let seed = 1;
    let one = hyperplane_section(&b, None, seed).unwrap();
    let two = hyperplane_section(&one.ideal, None, seed + 1).unwrap();
    let depths = [runs.report("ex6.2B").t, one.depth_after, two.depth_after];
    if depths != [3, 2, 1] || one.depth_before != 3 || two.depth_before != 2 {
        problems.push(format!("ex6.2B depths {:?}", depths));
    }
    let a = find("ex6.1A").unwrap().build(PRIME).unwrap().ideal;
    let cut = hyperplane_section(&a, None, seed).unwrap();
    if cut.depth_after != 1 {
        problems.push(format!("ex6.1A section depth {}", cut.depth_after));
    }
    for s in [&one, &two, &cut] {
        if s.attempts == 0 || s.attempts > SECTION_RETRIES {
            problems.push(format!("{} attempts", s.attempts));
        }
    }
    outcome(
        problems,
        format!(
            "ex6.2B 3 -> {} -> {}, ex6.1A 1 -> {}, attempts {} {} {}",
            one.depth_after,
            two.depth_after,
            cut.depth_after,
            one.attempts,
            two.attempts,
            cut.attempts
        ),
    )
}

fn engine_properties(_runs: &mut Runs) -> Outcome {
    let start = Instant::now();
    let mut problems = Vec::new();
    for (name, run) in properties::ALL {
        if let Err(e) = run() {
            problems.push(format!("{}: {}", name, e));
        }
    }
    let took = start.elapsed();
    if took > PROPERTY_LIMIT {
        problems.push(format!("took {:?}", took));
    }
    outcome(
        problems,
        format!(
            "{} properties x 1000 cases in {:.2?}",
            properties::ALL.len(),
            took
        ),
    )
}

fn main() {
    let criteria: [(&str, fn(&mut Runs) -> Outcome); 11] = [
        ("betti tables", betti_tables),
        ("quadric count", quadric_counts),
        ("hilbert series", hilbert_series_formula),
        ("depth and regularity", depth_and_regularity),
        ("betti bounds", betti_bounds),
        ("deficiency modules", deficiency_modules),
        ("containing scroll", containing_scrolls),
        ("depth bounds", depth_bounds),
        ("gorenstein", gorenstein),
        ("hyperplane sections", hyperplane_sections),
        ("engine properties", engine_properties),
    ];
    let mut runs = Runs::new();
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let o = run(&mut runs);
        if !o.ok {
            failed += 1;
        }
        println!(
            "{} {:>2} {:<22} {}",
            if o.ok { "PASS" } else { "FAIL" },
            k + 1,
            name,
            o.detail
        );
    }
    if failed > 0 {
        println!("{} of {} criteria failed", failed, criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria pass", criteria.len());
}
