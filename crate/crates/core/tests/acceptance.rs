//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use common::bar::{bar_tor, coequalizer_dim};
use homepi::algebra::Bimodule;
use homepi::almost::{almost_derived_ideal, almost_quotient, serre_adjoint_report, verify_contraction, SerreOutcome};
use homepi::derived::tor_dims;
use homepi::functors::{ann_on_subcat, ker_on_subcat, BimoduleFunctor, FiniteSubcat};
use homepi::homcat::{cone, is_homotopy_equivalence, recognize_triangle, BlockMat, GradedMap, Triangle};
use homepi::ideals::{factor_through_ideal, generate_ideal, WindowMap};
use homepi::io::{emit_json, run_task, run_tasks, Fixture, Overrides, Report, TaskSpec, Verdict};
use homepi::lifting::{lift_chain_map, lift_complex, ComplexLiftOutcome, LiftOutcome, SearchBudget};
use homepi::linalg::{Laurent, Mat, Scalar};

const TASK_LIMIT: Duration = Duration::from_secs(10);

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

/// Runs one fixture task and enforces the time limit.
fn task(fx: &Fixture, id: &str) -> Result<Report, String> {
    let t = fx.task(id).ok_or_else(|| format!("no task {id}"))?;
    let start = Instant::now();
    let r = run_task(fx, t, &Overrides::default()).map_err(|e| format!("{id}: {e}"))?;
    let took = start.elapsed();
    ensure!(took < TASK_LIMIT, "{id} took {took:?}");
    Ok(r)
}

fn c1_corner_certified() -> Outcome {
    let fx = common::load("corner");
    let r = task(&fx, "hepi")?;
    let e = &r.evidence;
    ensure!(r.verdict == Verdict::Certified, "verdict {:?}", r.verdict);
    ensure!(e["tensor_dim"] == 1 && e["target_dim"] == 1, "dims {} vs {}", e["tensor_dim"], e["target_dim"]);
    ensure!(e["tor"][0] == 0 && e["terminated"] == true, "tor {} terminated {}", e["tor"], e["terminated"]);
    let q = &fx.ring_maps["q"];
    let s_r = Bimodule::restriction(q).as_right_module();
    let bar = bar_tor(&s_r, &Bimodule::along(q), 4);
    let fast = tor_dims(&s_r, &Bimodule::along(q), 4).map_err(|e| e.to_string())?;
    ensure!(bar == vec![1, 0, 0, 0, 0] && fast == bar, "bar {bar:?}, resolution {fast:?}");
    ensure!(coequalizer_dim(q) == 1, "coequalizer dim {}", coequalizer_dim(q));
    Ok(format!("dim S(x)S = dim S = 1, Tor_1..4 = 0 (bar oracle {bar:?})"))
}

fn c2_split_refuted() -> Outcome {
    let fx = common::load("split");
    let r = task(&fx, "hepi")?;
    ensure!(r.verdict == Verdict::Refuted, "verdict {:?}", r.verdict);
    let w = &r.evidence["witness"];
    ensure!(w["kind"] == "multiplication" && w["tensor_dim"] == 4 && w["target_dim"] == 3, "witness {w}");
    let oracle = coequalizer_dim(&fx.ring_maps["diag"]);
    ensure!(oracle == 4, "coequalizer oracle gives {oracle}");
    Ok("multiplication witness 4 vs 3, coequalizer oracle 4".into())
}

fn c3_split_window() -> Outcome {
    let fx = common::load("split");
    let s = &fx.subcategories["S"];
    let f = &fx.functors["f"];
    ensure!(s.len() == 15, "window has {} objects", s.len());
    let gamma = WindowMap::locate(s, &fx.maps["gamma"]).map_err(|e| e.to_string())?;
    let ann = ann_on_subcat(f, s).map_err(|e| e.to_string())?;
    ensure!(ann.contains(&gamma), "gamma not annihilated");
    let ker = ker_on_subcat(f, s);
    ensure!(ker.is_empty(), "kernel {ker:?}");
    let g = generate_ideal(s, &[gamma]).map_err(|e| e.to_string())?;
    ensure!(!g.is_zero() && g.square().is_zero(), "<gamma> zero or <gamma>^2 nonzero");
    let r = task(&fx, "telescope")?;
    ensure!(r.verdict == Verdict::Inconsistent, "telescope verdict {:?}", r.verdict);
    Ok(format!(
        "gamma in Ann F, Ker F = {{}}, <gamma>^2 = 0 != <gamma>, telescope inconsistent (|S| = {})",
        s.len()
    ))
}

fn p2_shifts(s: &FiniteSubcat, base: &str) -> Vec<usize> {
    let b = s.base_names().iter().position(|n| n == base).expect("base object present");
    (0..s.len()).filter(|&i| s.object_ref(i).base == b).collect()
}

fn c4_corner_consistent() -> Outcome {
    let fx = common::load("corner");
    let g = &fx.functors["g"];
    let r = fixtures_ut2(&fx);
    let wide = Arc::new(FiniteSubcat::new(&r, homepi::fixtures::ut2_indecomposables(&r), (-2, 2)).map_err(|e| e.to_string())?);
    let mut sizes = Vec::new();
    for (s, p2) in [(fx.subcategories["S"].clone(), "P2"), (wide, "X1")] {
        let ann = ann_on_subcat(g, &s).map_err(|e| e.to_string())?;
        let ft = factor_through_ideal(&s, &p2_shifts(&s, p2)).map_err(|e| e.to_string())?;
        ensure!(ann == ft, "Ann g differs from maps through Sigma^n P2 on {}", s.describe());
        ensure!(ann.is_idempotent(), "ideal not idempotent on {}", s.describe());
        sizes.push(s.len());
    }
    let rep = task(&fx, "telescope")?;
    ensure!(rep.verdict == Verdict::Consistent, "telescope verdict {:?}", rep.verdict);
    Ok(format!("Ann g = maps through Sigma^n P2, idempotent, on windows of {sizes:?} objects"))
}

fn fixtures_ut2(fx: &Fixture) -> Arc<homepi::algebra::Algebra> {
    fx.algebras["UT2"].clone()
}

fn c5_lifting() -> Outcome {
    let fx = common::load("corner");
    let g: &BimoduleFunctor = &fx.functors["g"];
    let r = fixtures_ut2(&fx);
    let p2 = fx.complexes["P2"].clone();
    let budget = SearchBudget::new(3, vec![p2.clone()]);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut found, mut tried) = (0, 0);
    for _ in 0..40 {
        let x = common::random_complex(&mut rng, &r);
        let y = common::random_complex(&mut rng, &r);
        let alpha = common::random_chain_map(&mut rng, &g.apply(&x), &g.apply(&y));
        tried += 1;
        match lift_chain_map(g, &x, &y, &alpha, &budget).map_err(|e| e.to_string())? {
            LiftOutcome::Found(c) => {
                ensure!(c.verify(g, &x, &y, &alpha), "certificate {tried} fails replay");
                found += 1;
            }
            LiftOutcome::NotFound { .. } => {}
        }
    }
    for id in ["lift_s1", "lift_direct"] {
        let rep = task(&fx, id)?;
        ensure!(rep.verdict == Verdict::Found && rep.evidence["reverified"] == true, "{id}: {:?}", rep.verdict);
    }
    // complexes of length <= 3: fixture tasks, images of random complexes, and cones over them
    let mut complexes = 0;
    for id in ["lift_two_term", "lift_three_term"] {
        let rep = task(&fx, id)?;
        ensure!(rep.verdict == Verdict::Found && rep.evidence["reverified"] == true, "{id}: {:?}", rep.verdict);
        complexes += 1;
    }
    for _ in 0..20 {
        let a = g.apply(&common::random_complex(&mut rng, &r));
        let b = g.apply(&common::random_complex(&mut rng, &r));
        let y = cone(&common::random_chain_map(&mut rng, &a, &b)).complex;
        if y.len() > 3 {
            continue;
        }
        let pre: Vec<Vec<usize>> = y.terms().iter().map(|t| vec![0; t.len()]).collect();
        match lift_complex(g, &y, &pre, &budget).map_err(|e| e.to_string())? {
            ComplexLiftOutcome::Found(l) => ensure!(l.verify(g, &y), "complex lift fails replay: {}", y.describe()),
            ComplexLiftOutcome::NotFound { stage, .. } => return Err(format!("{} not lifted at {stage}", y.describe())),
        }
        complexes += 1;
    }
    let split = common::load("split");
    let rep = task(&split, "obstruction")?;
    ensure!(rep.verdict == Verdict::NotFound, "obstruction verdict {:?}", rep.verdict);
    Ok(format!(
        "{found}/{tried} random maps lifted, all certificates replayed; {complexes} complexes lifted; obstruction not_found at depth 4"
    ))
}

fn c6_triangles() -> Outcome {
    let r = homepi::fixtures::ut2(homepi::linalg::Field::Rational);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    for k in 0..50 {
        let x = common::random_complex(&mut rng, &r);
        let y = common::random_complex(&mut rng, &r);
        let f = common::random_chain_map(&mut rng, &x, &y);
        let mut t = Triangle::canonical(&f);
        for rot in 0..4 {
            let v = recognize_triangle(&t);
            ensure!(v.exact, "complex {k}, rotation {rot}: {:?}", v.reason);
            ensure!(v.certificate.verify(&t), "complex {k}, rotation {rot}: certificate fails");
            t = t.rotate();
            checked += 1;
        }
    }
    let fx = common::load("split");
    let good = task(&fx, "triangle")?;
    let bad = task(&fx, "triangle_split")?;
    ensure!(good.verdict == Verdict::Exact && good.evidence["reverified"] == true, "fixture triangle {:?}", good.verdict);
    ensure!(bad.verdict == Verdict::NotExact && bad.evidence["reverified"] == true, "corruption {:?}", bad.verdict);
    let v = recognize_triangle(&fx.triangles["t_split"]);
    ensure!(!v.exact && v.certificate.verify(&fx.triangles["t_split"]), "corruption certificate");
    Ok(format!("{checked} cone triangles and rotations exact with certificates; gamma -> 0 rejected"))
}

fn c7_almost() -> Outcome {
    let fx = common::load("almost");
    let r = fixtures_ut2(&fx);
    let samples = common::standard_modules(&r);
    let (mut failures, mut certified) = (0, 0);
    for (name, a) in &fx.ideals {
        let rep = serre_adjoint_report(a, &samples).map_err(|e| e.to_string())?;
        if rep.idempotent() {
            ensure!(rep.certified(), "{name}: adjunction identities fail");
            certified += 1;
        } else {
            let SerreOutcome::Failure(w) = &rep.outcome else {
                return Err(format!("{name}: no Serre witness"));
            };
            let sq = a.square().map_err(|e| e.to_string())?;
            ensure!(w.is_failure(), "{name}: witness does not fail closure");
            ensure!(
                w.module_dim == r.dim() - sq.dim() && w.sub_dim == a.dim() - sq.dim() && w.quotient_dim == r.dim() - a.dim(),
                "{name}: witness dims ({}, {}, {})",
                w.module_dim,
                w.sub_dim,
                w.quotient_dim
            );
            failures += 1;
        }
    }
    let a = &fx.ideals["a"];
    let s = &fx.subcategories["S"];
    let d = almost_derived_ideal(a, s, None).map_err(|e| e.to_string())?;
    let p2 = fx.complexes["X1"].clone();
    let proj = GradedMap::chain_map(
        d.cone.clone(),
        p2,
        vec![(0, BlockMat::from_rows(&r, vec![1], vec![0, 1], vec![vec![r.zero(), r.basis_elem(2)]])?)],
    )
    .map_err(|e| e.to_string())?;
    ensure!(is_homotopy_equivalence(&proj).is_some(), "cone is not P2: {}", d.cone.describe());
    ensure!(d.idempotent, "derived ideal not idempotent on S");
    let (_, q) = almost_quotient(&r, &r.basis_elem(0), &samples).map_err(|e| e.to_string())?;
    ensure!(q.exact(), "M -> Me not exact on samples");
    let rep = task(&fx, "corner")?;
    ensure!(rep.verdict == Verdict::Certified, "corner report {:?}", rep.verdict);
    ensure!(task(&fx, "radical")?.verdict == Verdict::Refuted, "radical report not refuted");
    Ok(format!("{failures} Serre witnesses, {certified} adjunctions certified; C ~ P2, ideal idempotent on S"))
}

fn perturb(m: &Mat, i: usize, j: usize, to: Laurent) -> Mat {
    Mat::from_fn(m.field(), m.rows(), m.cols(), |a, b| {
        if (a, b) == (i, j) {
            Scalar::laurent(to.clone())
        } else {
            m.get(a, b)
        }
    })
}

fn c8_koszul() -> Outcome {
    let fx = common::load("koszul");
    let k = &fx.contractions["koszul"];
    ensure!(verify_contraction(k), "Koszul contraction rejected");
    ensure!(task(&fx, "koszul")?.verdict == Verdict::Certified, "koszul task not certified");
    ensure!(task(&fx, "koszul_no_h0")?.verdict == Verdict::Refuted, "h0 = 0 accepted");
    let one = Scalar::one(homepi::linalg::Field::Rational).as_laurent();
    let mut mutants = 0;
    for (n, h) in k.homotopy().iter().enumerate() {
        for i in 0..h.rows() {
            for j in 0..h.cols() {
                let e = h.get(i, j).as_laurent();
                let mut variants = vec![&e + &one];
                if !e.is_zero() {
                    variants.push(Laurent::zero());
                }
                for v in variants {
                    let mut hs = k.homotopy().to_vec();
                    hs[n] = perturb(h, i, j, v);
                    let m = k.with_homotopy(hs).map_err(|e| e.to_string())?;
                    ensure!(!verify_contraction(&m), "mutant h[{n}]({i},{j}) accepted");
                    mutants += 1;
                }
            }
        }
    }
    Ok(format!("contraction accepted, all {mutants} single-entry mutants rejected"))
}

fn c9_oracle() -> Outcome {
    let mut n = 0;
    for (label, m, b) in common::tor_inputs() {
        let fast = tor_dims(&m, &b, 4).map_err(|e| format!("{label}: {e}"))?;
        let slow = bar_tor(&m, &b, 4);
        ensure!(fast == slow, "{label}: resolution {fast:?}, bar {slow:?}");
        n += 1;
    }
    Ok(format!("{n} (M, N) pairs agree for i <= 4"))
}

fn c10_determinism() -> Outcome {
    let mut bytes = 0;
    for name in common::FIXTURES {
        let fx = common::load(name);
        let tasks: Vec<&TaskSpec> = fx.file.tasks.iter().collect();
        let ov = Overrides::default();
        let run = |w| run_tasks(&fx, &tasks, &ov, Some(w)).map(|r| emit_json(&r)).map_err(|e| e.to_string());
        let first = run(1)?;
        for w in [1, 2, 4, 8] {
            ensure!(run(w)? == first, "{name}: output differs with {w} workers");
        }
        let parsed: Value = serde_json::from_str(&first).map_err(|e| e.to_string())?;
        ensure!(parsed.as_array().map(Vec::len) == Some(tasks.len()), "{name}: report count");
        for t in &tasks {
            task(&fx, t.id())?;
        }
        bytes += first.len();
    }
    Ok(format!("{bytes} bytes of reports identical across runs and 1/2/4/8 workers"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("corner fixture certified", c1_corner_certified),
        ("split fixture refuted", c2_split_refuted),
        ("split window phenomenon", c3_split_window),
        ("corner fixture telescope-consistent", c4_corner_consistent),
        ("lifting soundness", c5_lifting),
        ("triangle recognizer", c6_triangles),
        ("almost suite", c7_almost),
        ("Koszul certificate", c8_koszul),
        ("oracle equivalence", c9_oracle),
        ("determinism", c10_determinism),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match out {
            Ok(detail) => println!("PASS {:>2} {name} ({secs:.2}s): {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.2}s): {why}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
