use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::load::*;
use super::schema::*;
use crate::almost::{almost_derived_ideal, almost_quotient, serre_adjoint_report, standard_modules, verify_contraction, SerreOutcome};
use crate::derived::{check_homological_epi, HepiOutcome, HepiWitness, DEFAULT_MAX_DEGREE};
use crate::error::{Error, Result};
use crate::functors::{BimoduleFunctor, FiniteSubcat};
use crate::homcat::{cone, ProjComplex, TriangleCertificate};
use crate::ideals::{telescope_report, HomIdeal, SaturationWitness, WindowTriangle};
use crate::lifting::{lift_chain_map, lift_complex, ComplexLiftOutcome, LiftCertificate, LiftOutcome, SearchBudget, DEFAULT_DEPTH};

/// Environment variable holding the worker count for [`run_tasks`].
pub const WORKERS_ENV: &str = "HOMEPI_WORKERS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Certified,
    Refuted,
    Inconclusive,
    Found,
    NotFound,
    Exact,
    NotExact,
    Consistent,
    Inconsistent,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Certified => "certified",
            Verdict::Refuted => "refuted",
            Verdict::Inconclusive => "inconclusive",
            Verdict::Found => "found",
            Verdict::NotFound => "not_found",
            Verdict::Exact => "exact",
            Verdict::NotExact => "not_exact",
            Verdict::Consistent => "consistent",
            Verdict::Inconsistent => "inconsistent",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub id: String,
    pub task: String,
    pub verdict: Verdict,
    pub evidence: Value,
    /// What part of an infinite question was actually examined.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<String>,
}

/// Command-line overrides applied on top of task parameters.
#[derive(Clone, Copy, Debug, Default)]
pub struct Overrides {
    pub max_degree: Option<usize>,
    pub depth: Option<usize>,
    pub window: Option<(i64, i64)>,
}

/// Worker count from [`WORKERS_ENV`], if set to a positive integer.
pub fn workers_from_env() -> Option<usize> {
    std::env::var(WORKERS_ENV).ok()?.trim().parse().ok().filter(|&n| n > 0)
}

/// Runs the tasks on a pool of `workers` threads (rayon's default when
/// `None`); reports come back in input order.
pub fn run_tasks(fx: &Fixture, tasks: &[&TaskSpec], ov: &Overrides, workers: Option<usize>) -> Result<Vec<Report>> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = workers {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| Error::Fixture(format!("worker pool: {e}")))?;
    pool.install(|| tasks.par_iter().map(|t| run_task(fx, t, ov)).collect())
}

pub fn run_task(fx: &Fixture, task: &TaskSpec, ov: &Overrides) -> Result<Report> {
    let report = |verdict: Verdict, evidence: Value, window: Option<String>| Report {
        id: task.id().to_string(),
        task: task.kind().to_string(),
        verdict,
        evidence,
        window,
    };
    match task {
        TaskSpec::CheckHepi { map, max_degree, .. } => {
            let f = fx.get(&fx.ring_maps, map, "ring map")?;
            let n = ov.max_degree.or(*max_degree).unwrap_or(DEFAULT_MAX_DEGREE);
            let v = check_homological_epi(f, n)?;
            let (verdict, witness) = match &v.outcome {
                HepiOutcome::Certified => (Verdict::Certified, Value::Null),
                HepiOutcome::Refuted(HepiWitness::Multiplication { tensor_dim, target_dim, rank }) => (
                    Verdict::Refuted,
                    json!({"kind": "multiplication", "tensor_dim": tensor_dim, "target_dim": target_dim, "rank": rank}),
                ),
                HepiOutcome::Refuted(HepiWitness::Tor { degree, dim }) => {
                    (Verdict::Refuted, json!({"kind": "tor", "degree": degree, "dim": dim}))
                }
                HepiOutcome::Inconclusive(k) => (Verdict::Inconclusive, json!({"kind": "unterminated", "terms": k})),
            };
            let ev = json!({
                "tensor_dim": v.tensor_dim,
                "target_dim": v.target_dim,
                "multiplication_rank": v.multiplication_rank,
                "multiplication_iso": v.mult_iso,
                "tor": v.tor,
                "resolution_length": v.resolution_length,
                "terminated": v.terminated,
                "witness": witness,
            });
            Ok(report(verdict, ev, Some(format!("Tor_i for 1 <= i <= {n}"))))
        }
        TaskSpec::LiftMap {
            functor,
            source,
            target,
            map,
            generators,
            depth,
            window,
            ..
        } => {
            let f = fx.get(&fx.functors, functor, "functor")?;
            let (x, y) = (fx.get(&fx.complexes, source, "complex")?, fx.get(&fx.complexes, target, "complex")?);
            let alpha = fx.get(&fx.maps, map, "map")?;
            let gens = generators
                .iter()
                .map(|g| fx.get(&fx.complexes, g, "complex").cloned())
                .collect::<Result<Vec<_>>>()?;
            let mut budget = SearchBudget::new(ov.depth.or(*depth).unwrap_or(DEFAULT_DEPTH), gens);
            budget.window = ov.window.or(*window);
            let win = budget_window(&budget);
            match lift_chain_map(f, x, y, alpha, &budget)? {
                LiftOutcome::Found(cert) => {
                    let ev = json!({
                        "depth": cert.depth(),
                        "path": cert.path,
                        "reverified": cert.verify(f, x, y, alpha),
                        "certificate": encode_certificate(fx, task.id(), f, &cert),
                    });
                    Ok(report(Verdict::Found, ev, Some(win)))
                }
                LiftOutcome::NotFound {
                    depth_reached,
                    explored,
                    note,
                } => Ok(report(
                    Verdict::NotFound,
                    json!({"depth_reached": depth_reached, "explored": explored, "note": note}),
                    Some(win),
                )),
            }
        }
        TaskSpec::LiftComplex {
            functor,
            complex,
            preimages,
            generators,
            depth,
            ..
        } => {
            let f = fx.get(&fx.functors, functor, "functor")?;
            let y = fx.get(&fx.complexes, complex, "complex")?;
            let gens = generators
                .iter()
                .map(|g| fx.get(&fx.complexes, g, "complex").cloned())
                .collect::<Result<Vec<_>>>()?;
            let mut budget = SearchBudget::new(ov.depth.or(*depth).unwrap_or(DEFAULT_DEPTH), gens);
            budget.window = ov.window;
            let win = budget_window(&budget);
            match lift_complex(f, y, preimages, &budget)? {
                ComplexLiftOutcome::Found(l) => {
                    let ev = json!({
                        "complex": encode_complex(&fx.algebra_name(f.source()), &l.complex),
                        "equivalence": encode_map(&l.equivalence),
                        "reverified": l.verify(f, y),
                    });
                    Ok(report(Verdict::Found, ev, Some(win)))
                }
                ComplexLiftOutcome::NotFound { stage, explored } => Ok(report(
                    Verdict::NotFound,
                    json!({"stage": stage, "explored": explored}),
                    Some(win),
                )),
            }
        }
        TaskSpec::RecognizeTriangle { triangle, .. } => {
            let t = fx.get(&fx.triangles, triangle, "triangle")?;
            let v = crate::homcat::recognize_triangle(t);
            let kind = match &v.certificate {
                TriangleCertificate::Exact { .. } => "cone_isomorphism",
                TriangleCertificate::Composition { first: true, .. } => "beta_alpha_not_null",
                TriangleCertificate::Composition { first: false, .. } => "gamma_beta_not_null",
                TriangleCertificate::NoComparison { .. } => "no_comparison_map",
                TriangleCertificate::NotEquivalence { .. } => "comparison_not_equivalence",
            };
            let ev = json!({"certificate": kind, "reason": v.reason, "reverified": v.certificate.verify(t)});
            let verdict = if v.exact { Verdict::Exact } else { Verdict::NotExact };
            Ok(report(verdict, ev, None))
        }
        TaskSpec::CheckIdeal { ideal, triangles, .. } => {
            let h = fx.get(&fx.hom_ideals, ideal, "hom ideal")?;
            let s = h.subcat();
            let wt = window_triangles(fx, s, triangles)?;
            let idempotent = h.is_idempotent();
            let sigma = h.sigma_stable();
            let sat = (!wt.is_empty()).then(|| h.saturation_witness(&wt));
            let verdict = match (&sat, idempotent && sigma) {
                (_, false) | (Some(Some(_)), _) => Verdict::Refuted,
                (Some(None), true) => Verdict::Certified,
                (None, true) => Verdict::Inconclusive,
            };
            let ev = json!({
                "dim": total_dim(h),
                "square_dim": total_dim(&h.square()),
                "idempotent": idempotent,
                "sigma_stable": sigma,
                "saturated": sat.as_ref().map(|w| w.is_none()),
                "saturation_witness": sat.flatten().map(|w| saturation_json(s, triangles, &w)),
            });
            Ok(report(verdict, ev, Some(s.describe())))
        }
        TaskSpec::TelescopeReport {
            functor,
            subcategory,
            triangles,
            ..
        } => {
            let f = fx.get(&fx.functors, functor, "functor")?;
            let s = fx.get(&fx.subcategories, subcategory, "subcategory")?;
            let wt = window_triangles(fx, s, triangles)?;
            let r = telescope_report(f, s, &wt)?;
            let ev = json!({
                "annihilator_dim": total_dim(&r.annihilator),
                "annihilator_square_dim": total_dim(&r.annihilator.square()),
                "kernel": r.kernel.iter().map(|&i| s.object_name(i)).collect::<Vec<_>>(),
                "factor_through_kernel_dim": total_dim(&r.factor_through_kernel),
                "idempotent": r.idempotent,
                "sigma_stable": r.sigma_stable,
                "saturated": r.saturation.as_ref().map(|w| w.is_none()),
                "saturation_witness": r.saturation.clone().flatten().map(|w| saturation_json(s, triangles, &w)),
            });
            let verdict = if r.consistent { Verdict::Consistent } else { Verdict::Inconsistent };
            Ok(report(verdict, ev, Some(r.window.clone())))
        }
        TaskSpec::AlmostReport {
            ideal,
            idempotent,
            subcategory,
            window,
            ..
        } => {
            let a = fx.get(&fx.ideals, ideal, "ideal")?;
            let r = a.algebra();
            let samples = standard_modules(r)?;
            let serre = serre_adjoint_report(a, &samples)?;
            let mut ok = serre.certified() && serre.idempotent();
            let mut ev = serde_json::Map::new();
            ev.insert("ideal_dim".into(), json!(serre.ideal_dim));
            ev.insert("square_dim".into(), json!(serre.square_dim));
            match &serre.outcome {
                SerreOutcome::Adjunction(checks) => {
                    let failing: Vec<Value> = checks
                        .iter()
                        .filter(|c| !c.holds())
                        .map(|c| json!([c.module, c.test_module]))
                        .collect();
                    ev.insert("adjunction_checks".into(), json!(checks.len()));
                    ev.insert("adjunction_failures".into(), json!(failing));
                }
                SerreOutcome::Failure(w) => {
                    ev.insert(
                        "serre_witness".into(),
                        json!({
                            "module": "R/a^2",
                            "module_dim": w.module_dim,
                            "sub_dim": w.sub_dim,
                            "quotient_dim": w.quotient_dim,
                            "sub_in_perp": w.sub_annihilated,
                            "quotient_in_perp": w.quotient_annihilated,
                            "module_in_perp": w.module_annihilated,
                            "acting_element": encode_elem(r, &w.acting_element),
                        }),
                    );
                }
            }
            let mut win = None;
            if serre.idempotent() {
                if let Some(e) = idempotent {
                    let e = decode_elem(r, e, task.id())?;
                    let (q, qr) = almost_quotient(r, &e, &samples)?;
                    ok &= qr.exact();
                    ev.insert(
                        "corner".into(),
                        json!({
                            "dim": q.corner().dim(),
                            "images": qr.images.iter().map(|(n, d)| json!([n, d])).collect::<Vec<_>>(),
                            "exact": qr.exact(),
                        }),
                    );
                }
                if let Some(sname) = subcategory {
                    let s = fx.get(&fx.subcategories, sname, "subcategory")?;
                    let d = almost_derived_ideal(a, s, ov.window.or(*window))?;
                    ok &= d.idempotent;
                    ev.insert(
                        "derived".into(),
                        json!({
                            "tensor_dim": d.tensor_dim,
                            "multiplication_rank": d.multiplication_rank,
                            "ideal_projective": d.ideal_projective,
                            "tensor_projective": d.tensor_projective,
                            "tensor_left_projective": d.tensor_left_projective,
                            "cone": encode_complex(&fx.algebra_name(r), &d.cone),
                            "cone_contractible": crate::homcat::is_contractible(&d.cone),
                            "ideal_dim": total_dim(&d.ideal),
                            "idempotent": d.idempotent,
                        }),
                    );
                    win = Some(format!("{}; Hom(-, Sigma^n C) for {} <= n <= {}", s.describe(), d.window.0, d.window.1));
                }
            }
            let verdict = if ok { Verdict::Certified } else { Verdict::Refuted };
            Ok(report(verdict, Value::Object(ev), win))
        }
        TaskSpec::VerifyContraction { contraction, .. } => {
            let c = fx.get(&fx.contractions, contraction, "contraction")?;
            let holds = verify_contraction(c);
            let ev = json!({"lo": c.lo(), "ranks": c.ranks(), "identity_holds": holds});
            Ok(report(if holds { Verdict::Certified } else { Verdict::Refuted }, ev, None))
        }
    }
}

fn budget_window(b: &SearchBudget) -> String {
    let shifts = match b.window {
        Some((lo, hi)) => format!("{lo} <= n <= {hi}"),
        None => "all overlapping shifts".into(),
    };
    format!("cones on Sigma^n K for {} generators, {shifts}, depth <= {}", b.generators.len(), b.depth)
}

fn total_dim(h: &HomIdeal) -> usize {
    h.dims().iter().flatten().sum()
}

fn window_triangles(fx: &Fixture, s: &FiniteSubcat, names: &[String]) -> Result<Vec<WindowTriangle>> {
    names
        .iter()
        .map(|n| WindowTriangle::new(s, fx.get(&fx.triangles, n, "triangle")?))
        .collect()
}

fn saturation_json(s: &FiniteSubcat, names: &[String], w: &SaturationWitness) -> Value {
    json!({
        "triangle": names[w.triangle],
        "source": s.object_name(w.phi.source),
        "target": s.object_name(w.phi.target),
        "coords": w.phi.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    })
}

/// A lift certificate in fixture notation, replayable with [`verify_certificate`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateFile {
    pub task: String,
    pub x_prime: ComplexSpec,
    pub pi: MapData,
    pub alpha_prime: MapData,
    pub contraction: MapData,
    pub homotopy: MapData,
    pub path: Vec<(usize, i64)>,
}

fn encode_certificate(fx: &Fixture, task: &str, f: &BimoduleFunctor, c: &LiftCertificate) -> CertificateFile {
    CertificateFile {
        task: task.to_string(),
        x_prime: encode_complex(&fx.algebra_name(f.source()), &c.x_prime),
        pi: encode_map(&c.pi),
        alpha_prime: encode_map(&c.alpha_prime),
        contraction: encode_map(&c.contraction),
        homotopy: encode_map(&c.homotopy),
        path: c.path.clone(),
    }
}

/// Extracts the certificate from a lift-map report, a report list, or a bare
/// certificate object.
pub fn certificate_from_json(v: &Value) -> Result<CertificateFile> {
    let bad = |e: serde_json::Error| Error::Fixture(format!("certificate: {e}"));
    if let Some(arr) = v.as_array() {
        let found: Vec<&Value> = arr.iter().filter_map(|r| r.pointer("/evidence/certificate")).collect();
        return match found.as_slice() {
            [one] => serde_json::from_value((*one).clone()).map_err(bad),
            _ => Err(Error::Fixture(format!("expected exactly one certificate, found {}", found.len()))),
        };
    }
    if let Some(c) = v.pointer("/evidence/certificate") {
        return serde_json::from_value(c.clone()).map_err(bad);
    }
    serde_json::from_value(v.clone()).map_err(bad)
}

/// Rebuilds the certificate against the lift-map task it names and replays
/// every identity. Never calls a solver.
pub fn verify_certificate(fx: &Fixture, cert: &CertificateFile) -> Result<bool> {
    let task = fx
        .task(&cert.task)
        .ok_or_else(|| Error::Fixture(format!("certificate names unknown task '{}'", cert.task)))?;
    let TaskSpec::LiftMap {
        functor,
        source,
        target,
        map,
        ..
    } = task
    else {
        return Err(Error::Fixture(format!("task '{}' is not a lift-map task", cert.task)));
    };
    let f = fx.get(&fx.functors, functor, "functor")?;
    let (x, y) = (fx.get(&fx.complexes, source, "complex")?, fx.get(&fx.complexes, target, "complex")?);
    let alpha = fx.get(&fx.maps, map, "map")?;
    let alg: &Arc<_> = f.source();
    if fx.algebra_name(alg) != cert.x_prime.algebra {
        return Ok(false);
    }
    let xp = decode_complex(alg, &cert.x_prime, "certificate x_prime")?;
    let pi = decode_map(&xp, x, &cert.pi, "certificate pi")?;
    let ap = decode_map(&xp, y, &cert.alpha_prime, "certificate alpha_prime")?;
    let fpi = f.apply_map(&pi);
    let c: ProjComplex = cone(&fpi).complex;
    let contraction = decode_map(&c, &c, &cert.contraction, "certificate contraction")?;
    let homotopy = decode_map(&f.apply(&xp), &f.apply(y), &cert.homotopy, "certificate homotopy")?;
    let lc = LiftCertificate {
        x_prime: xp,
        pi,
        alpha_prime: ap,
        contraction,
        homotopy,
        path: cert.path.clone(),
    };
    Ok(lc.verify(f, x, y, alpha))
}

/// Sorted-key pretty JSON with a trailing newline.
pub fn emit_json(reports: &[Report]) -> String {
    let v = serde_json::to_value(reports).expect("reports serialize");
    let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
    s.push('\n');
    s
}

pub fn emit_text(reports: &[Report]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&format!("{} [{}]: {}\n", r.id, r.task, r.verdict.as_str()));
        if let Some(w) = &r.window {
            out.push_str(&format!("  window: {w}\n"));
        }
        if let Value::Object(m) = &r.evidence {
            for (k, v) in m {
                if k == "certificate" || k == "equivalence" || k == "complex" {
                    out.push_str(&format!("  {k}: (see --out json)\n"));
                } else {
                    out.push_str(&format!("  {k}: {v}\n"));
                }
            }
        }
    }
    out
}
