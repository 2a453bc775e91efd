//! Acceptance suite: one line per criterion, `PASS` or `FAIL`, with timings.
//! Exits nonzero if any criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::Rng;

use pants_cli::{link_summary, trefoil_summary};
use pants_core::exactlin::{RatMatrix, Rational};
use pants_core::geometry::link::trefoil_polyline;
use pants_core::geometry::polyline::polyline_crossings;
use pants_core::geometry::suite::{double_point_checks, identity_checks, rank_checks};
use pants_core::geometry::{count_link_components, GeomConfig};
use pants_core::modelcat::random::{random_autpair, random_int_matrix, random_invertible, rng_for, scramble};
use pants_core::modelcat::{
    classify, from_autpair, graph_star, hom_autpair, hom_star, random_pants, random_trefoil, roundtrip_witness,
    to_autpair, AutPair, Classification,
};

type Verdict = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Verdict,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn failed_checks(checks: &[pants_core::geometry::Check]) -> Vec<String> {
    checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{} worst={:e} threshold={:e}", c.name, c.worst, c.threshold))
        .collect()
}

fn geometry_identities() -> Verdict {
    let config = GeomConfig::default();
    let checks = identity_checks(&config).map_err(|e| e.to_string())?;
    let bad = failed_checks(&checks);
    ensure(bad.is_empty(), || bad.join("; "))?;
    let worst = checks
        .iter()
        .filter(|c| c.threshold == config.tol)
        .map(|c| c.worst)
        .fold(0.0, f64::max);
    Ok(format!("{} checks over {} samples, worst defect {worst:e}", checks.len(), config.samples))
}

fn ramification() -> Verdict {
    let checks = rank_checks(&GeomConfig::default()).map_err(|e| e.to_string())?;
    let bad = failed_checks(&checks);
    ensure(bad.is_empty(), || bad.join("; "))?;
    let at = checks.iter().find(|c| c.name == "p_rank_drop_at_ramification").unwrap();
    let away = checks.iter().find(|c| c.name == "p_rank_2_away_from_ramification").unwrap();
    Ok(format!(
        "sigma_2 at R <= {:e}; min sigma_2 over {} samples away from R = {:.3e}",
        at.worst, away.samples, away.worst
    ))
}

fn trefoil() -> Verdict {
    let config = GeomConfig::default();
    let s = trefoil_summary(&config).map_err(|e| e.to_string())?;
    let got = (s.crossings, s.regions_total, s.regions_bounded, s.stable);
    ensure(got == (3, 5, 4, true), || format!("got {got:?}"))?;
    let curve = trefoil_polyline(&config).map_err(|e| e.to_string())?;
    let report = polyline_crossings(&curve, config.tol).map_err(|e| e.to_string())?;
    ensure(report.min_angle_sine() > 0.05, || {
        format!("crossing angle sine {} not transverse", report.min_angle_sine())
    })?;
    Ok(format!(
        "3 crossings (min |sin angle| {:.3}), 5 regions, 4 bounded, stable",
        report.min_angle_sine()
    ))
}

fn link_regions() -> Verdict {
    let config = GeomConfig::default();
    let s = link_summary(&config).map_err(|e| e.to_string())?;
    let got = (s.regions_total, s.regions_bounded, s.unbounded, s.stable);
    ensure(got == (6, 5, 1, true), || format!("got {got:?} at grid_res 96/192"))?;
    Ok("6 components, 5 bounded, 1 unbounded at 96^3 and 192^3".into())
}

fn link_box_independence() -> Result<(), String> {
    let config = GeomConfig::default();
    let r = count_link_components(&config, config.grid_res, 3.0).map_err(|e| e.to_string())?;
    ensure((r.total, r.bounded, r.unbounded) == (6, 5, 1), || format!("tripled box gave {r:?}"))
}

fn double_points() -> Verdict {
    let config = GeomConfig::default();
    let checks = double_point_checks(&config).map_err(|e| e.to_string())?;
    let bad = failed_checks(&checks);
    ensure(bad.is_empty(), || bad.join("; "))?;
    let count = |name: &str| checks.iter().find(|c| c.name == name).map(|c| c.samples).unwrap_or(0);
    Ok(format!(
        "{} toy and {} q double points on the wall and transverse; wall-free patch empty",
        count("toy_double_points_on_wall"),
        count("q_double_points_on_wall")
    ))
}

fn det_shift(m3: &RatMatrix, m4: &RatMatrix) -> Rational {
    let m = m3.invert().expect("invertible").try_mul(m4).expect("square");
    m.try_sub(&RatMatrix::identity(m.rows())).expect("square").det().expect("square")
}

fn eigenvalue_constraint() -> Verdict {
    let mut rng = rng_for(6);
    let (mut engineered, mut invalid) = (0, 0);
    for k in 0..200 {
        let d = rng.gen_range(1..=6);
        let m3 = random_invertible(&mut rng, d);
        let m4 = if k % 5 == 0 {
            // m4 = m3 (I + N) with N singular, so m3^{-1} m4 - I = N.
            engineered += 1;
            loop {
                let mut n = random_int_matrix(&mut rng, d, d);
                let row = rng.gen_range(0..d);
                for j in 0..d {
                    n[(row, j)] = Rational::zero();
                }
                let shifted = RatMatrix::identity(d).try_add(&n).expect("square");
                if !shifted.det().expect("square").is_zero() {
                    break m3.try_mul(&shifted).expect("square");
                }
            }
        } else {
            random_invertible(&mut rng, d)
        };
        let valid = graph_star(&m3, &m4).is_valid();
        let det_nonzero = !det_shift(&m3, &m4).is_zero();
        ensure(valid == det_nonzero, || format!("assembly {k}: valid={valid} det!=0={det_nonzero}"))?;
        if !valid {
            invalid += 1;
        }
    }
    ensure(engineered >= 20, || format!("only {engineered} engineered"))?;
    Ok(format!("200 assemblies ({engineered} engineered, {invalid} invalid), 0 exceptions"))
}

fn round_trips() -> Verdict {
    let mut rng = rng_for(7);
    for k in 0..200 {
        let pair = random_autpair(&mut rng, 6);
        let back = to_autpair(&from_autpair(&pair)).map_err(|e| format!("pair {k}: {e}"))?;
        ensure(back == pair, || format!("pair {k} changed"))?;
    }
    for seed in 0..200 {
        let rep = random_pants(1000 + seed, 6);
        let w = roundtrip_witness(&rep).map_err(|e| format!("rep {seed}: {e}"))?;
        ensure(w.passed(), || format!("witness failed for rep {seed}: {:?}", w.checks))?;
    }
    Ok("200 AutPairs identical after round trip; 200 witnesses pass".into())
}

fn hom_preservation() -> Verdict {
    let mut max_dim = 0;
    for k in 0..100 {
        let p = random_pants(2000 + 2 * k, 6);
        // Every other pair compares a rep with a scrambled copy of itself.
        let q = if k % 2 == 0 {
            random_pants(2001 + 2 * k, 6)
        } else {
            scramble(&mut rng_for(2001 + 2 * k), &p)
        };
        let star = hom_star(&p, &q).map_err(|e| e.to_string())?.dimension;
        let (a, b) = (to_autpair(&p).map_err(|e| e.to_string())?, to_autpair(&q).map_err(|e| e.to_string())?);
        let pair = hom_autpair(&a, &b).dimension;
        ensure(star == pair, || format!("pair {k}: hom_star {star} != hom_autpair {pair}"))?;
        max_dim = max_dim.max(star);
    }
    let values = [Rational::from(2), Rational::from(3), Rational::from(-1), Rational::new(1, 2)];
    for (i, l) in values.iter().enumerate() {
        for (j, m) in values.iter().enumerate() {
            let a = AutPair::skyscraper(l.clone()).map_err(|e| e.to_string())?;
            let b = AutPair::skyscraper(m.clone()).map_err(|e| e.to_string())?;
            let expected = usize::from(i == j);
            let star = hom_star(&from_autpair(&a), &from_autpair(&b)).map_err(|e| e.to_string())?.dimension;
            let pair = hom_autpair(&a, &b).dimension;
            ensure(star == expected && pair == expected, || {
                format!("skyscrapers {l}, {m}: star {star} pair {pair} expected {expected}")
            })?;
        }
    }
    Ok(format!("100 pairs agree (largest Hom {max_dim}); 4x4 skyscraper table is the identity"))
}

fn trefoil_classification() -> Verdict {
    let reps: Vec<_> = (0..50).map(|s| random_trefoil(3000 + s, 6)).collect();
    let mut dims = Vec::new();
    for (k, rep) in reps.iter().enumerate() {
        match classify(rep).map_err(|e| format!("rep {k}: {e}"))? {
            Classification::GraphVect { dim, verified: true, .. } => dims.push(dim),
            other => return Err(format!("rep {k} classified as {other:?}")),
        }
    }
    for k in 0..50 {
        let l = (k + 1) % 50;
        let h = hom_star(&reps[k], &reps[l]).map_err(|e| e.to_string())?.dimension;
        ensure(h == dims[k] * dims[l], || format!("Hom({k},{l}) = {h}, expected {}", dims[k] * dims[l]))?;
    }
    Ok("50 reps classify with verified witnesses; 50 Hom dims equal dim V1 * dim V1'".into())
}

fn run_cli(args: &[&str], dir: &Path) -> Result<(Vec<u8>, i32), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_pants"))
        .args(args)
        .current_dir(dir)
        .env("PANTS_SEED", "42")
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.stdout, out.status.code().unwrap_or(-1)))
}

fn cli_suite(dir: &Path) -> Result<Vec<u8>, String> {
    let mut transcript = Vec::new();
    let mut step = |args: &[&str]| -> Result<Vec<u8>, String> {
        let (stdout, code) = run_cli(args, dir)?;
        ensure(code == 0, || format!("`pants {}` exited with {code}", args.join(" ")))?;
        transcript.extend_from_slice(&stdout);
        Ok(stdout)
    };
    step(&["verify-geometry"])?;
    step(&["trefoil", "--out", "trefoil.csv"])?;
    step(&["link-regions"])?;
    for kind in ["pants", "trefoil", "autpair"] {
        let text = step(&["rep", "random", "--kind", kind])?;
        std::fs::write(dir.join(format!("{kind}.json")), text).map_err(|e| e.to_string())?;
    }
    for file in ["pants.json", "trefoil.json", "autpair.json"] {
        step(&["rep", "validate", file])?;
        step(&["rep", "classify", file])?;
    }
    step(&["rep", "roundtrip", "pants.json"])?;
    step(&["rep", "roundtrip", "autpair.json"])?;
    step(&["rep", "hom", "pants.json", "autpair.json"])?;
    step(&["rep", "hom", "trefoil.json", "trefoil.json"])?;
    let csv = std::fs::read(dir.join("trefoil.csv")).map_err(|e| e.to_string())?;
    transcript.extend_from_slice(&csv);
    Ok(transcript)
}

fn determinism() -> Verdict {
    let first = tempfile::tempdir().map_err(|e| e.to_string())?;
    let second = tempfile::tempdir().map_err(|e| e.to_string())?;
    let a = cli_suite(first.path())?;
    let b = cli_suite(second.path())?;
    ensure(a == b, || "outputs differ between runs".into())?;
    Ok(format!("two runs produced {} identical bytes", a.len()))
}

fn main() {
    let criteria = [
        Criterion { id: 1, name: "geometry identity suite", limit: Some(Duration::from_secs(10)), run: geometry_identities },
        Criterion { id: 2, name: "ramification of p on K", limit: None, run: ramification },
        Criterion { id: 3, name: "trefoil diagram", limit: Some(Duration::from_secs(5)), run: trefoil },
        Criterion {
            id: 4,
            name: "3D link regions",
            limit: Some(Duration::from_secs(60)),
            run: || {
                let v = link_regions()?;
                link_box_independence()?;
                Ok(format!("{v}; tripled box agrees"))
            },
        },
        Criterion { id: 5, name: "double-point locus", limit: None, run: double_points },
        Criterion { id: 6, name: "eigenvalue-constraint equivalence", limit: None, run: eigenvalue_constraint },
        Criterion { id: 7, name: "round trips", limit: None, run: round_trips },
        Criterion { id: 8, name: "Hom preservation", limit: None, run: hom_preservation },
        Criterion { id: 9, name: "n=3 classification", limit: None, run: trefoil_classification },
        Criterion { id: 10, name: "CLI determinism", limit: None, run: determinism },
    ];

    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            (o, _) => o,
        };
        let timing = match c.limit {
            Some(limit) => format!("{elapsed:.2?} / limit {limit:?}"),
            None => format!("{elapsed:.2?}"),
        };
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2} {} [{timing}]: {detail}", c.id, c.name),
            Err(detail) => {
                failures += 1;
                println!("FAIL criterion {:>2} {} [{timing}]: {detail}", c.id, c.name);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
