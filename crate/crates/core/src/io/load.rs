use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use super::schema::*;
use crate::algebra::{validate_algebra, Algebra, Elem, FdModule, RawAlgebra, RingMap, TwoSidedIdeal};
use crate::almost::{ContractionFixture, LaurentRing};
use crate::error::{Error, Result};
use crate::functors::{BimoduleFunctor, FiniteSubcat, Witness};
use crate::homcat::{BlockMat, GradedMap, ProjComplex, Triangle};
use crate::ideals::{factor_through_ideal, generate_ideal, HomIdeal, WindowMap};
use crate::linalg::{Field, Laurent, Mat, Scalar};

/// A fixture file with every section built and validated.
#[derive(Debug)]
pub struct Fixture {
    pub file: FixtureFile,
    pub field: Field,
    pub algebras: BTreeMap<String, Arc<Algebra>>,
    pub ideals: BTreeMap<String, TwoSidedIdeal>,
    pub ring_maps: BTreeMap<String, RingMap>,
    pub functors: BTreeMap<String, BimoduleFunctor>,
    pub modules: BTreeMap<String, FdModule>,
    pub complexes: BTreeMap<String, ProjComplex>,
    pub maps: BTreeMap<String, GradedMap>,
    pub triangles: BTreeMap<String, Triangle>,
    pub subcategories: BTreeMap<String, Arc<FiniteSubcat>>,
    pub hom_ideals: BTreeMap<String, HomIdeal>,
    pub contractions: BTreeMap<String, ContractionFixture>,
}

fn fixture_err(ctx: &str, e: impl std::fmt::Display) -> Error {
    Error::Fixture(format!("{ctx}: {e}"))
}

fn lookup<'a, T>(map: &'a BTreeMap<String, T>, name: &str, what: &str, ctx: &str) -> Result<&'a T> {
    map.get(name)
        .ok_or_else(|| Error::Fixture(format!("{ctx}: unknown {what} '{name}'")))
}

pub fn parse_field(s: &str) -> Result<Field> {
    let s = s.trim();
    if s == "Q" {
        return Ok(Field::Rational);
    }
    let p = s
        .strip_prefix("F_")
        .and_then(|p| p.parse::<u64>().ok())
        .ok_or_else(|| Error::Fixture(format!("field '{s}' is neither \"Q\" nor \"F_p\"")))?;
    Ok(Field::prime(p)?)
}

pub fn field_name(f: Field) -> String {
    match f {
        Field::Rational => "Q".into(),
        Field::Prime(p) => format!("F_{p}"),
    }
}

pub fn decode_elem(alg: &Algebra, spec: &ElemSpec, ctx: &str) -> Result<Elem> {
    let mut out = alg.zero();
    for (name, value) in spec {
        let i = alg
            .basis_names()
            .iter()
            .position(|b| b == name)
            .ok_or_else(|| Error::Fixture(format!("{ctx}: '{name}' is not a basis element of {}", alg.name())))?;
        out[i] = Scalar::parse(alg.field(), value).map_err(|e| fixture_err(ctx, e))?;
    }
    Ok(out)
}

pub fn encode_elem(alg: &Algebra, x: &[Scalar]) -> ElemSpec {
    x.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (alg.basis_names()[i].clone(), c.to_string()))
        .collect()
}

pub fn decode_block(alg: &Algebra, rows: &[usize], cols: &[usize], spec: &BlockSpec, ctx: &str) -> Result<BlockMat> {
    let entries = spec
        .iter()
        .map(|row| row.iter().map(|e| decode_elem(alg, e, ctx)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    BlockMat::from_rows(alg, rows.to_vec(), cols.to_vec(), entries).map_err(|e| fixture_err(ctx, e))
}

pub fn encode_block(alg: &Algebra, m: &BlockMat) -> BlockSpec {
    m.to_rows()
        .iter()
        .map(|row| row.iter().map(|x| encode_elem(alg, x)).collect())
        .collect()
}

pub fn decode_complex(alg: &Arc<Algebra>, spec: &ComplexSpec, ctx: &str) -> Result<ProjComplex> {
    if spec.diffs.len() + 1 != spec.terms.len() && !(spec.terms.is_empty() && spec.diffs.is_empty()) {
        return Err(Error::Fixture(format!(
            "{ctx}: {} terms need {} differentials, found {}",
            spec.terms.len(),
            spec.terms.len().saturating_sub(1),
            spec.diffs.len()
        )));
    }
    let diffs = spec
        .diffs
        .iter()
        .enumerate()
        .map(|(k, d)| decode_block(alg, &spec.terms[k + 1], &spec.terms[k], d, &format!("{ctx}, d^{}", spec.lo + k as i64)))
        .collect::<Result<Vec<_>>>()?;
    ProjComplex::new(alg.clone(), spec.lo, spec.terms.clone(), diffs).map_err(|e| fixture_err(ctx, e))
}

pub fn encode_complex(algebra: &str, x: &ProjComplex) -> ComplexSpec {
    let alg = x.algebra();
    ComplexSpec {
        algebra: algebra.to_string(),
        lo: x.lo(),
        terms: x.terms().to_vec(),
        diffs: x.diffs().iter().map(|d| encode_block(alg, d)).collect(),
    }
}

pub fn decode_map(source: &ProjComplex, target: &ProjComplex, data: &MapData, ctx: &str) -> Result<GradedMap> {
    let alg = source.algebra();
    let mut seen = BTreeSet::new();
    let comps = data
        .components
        .iter()
        .map(|c| {
            if !seen.insert(c.degree) {
                return Err(Error::Fixture(format!("{ctx}: component at degree {} listed twice", c.degree)));
            }
            let m = decode_block(
                alg,
                target.term(c.degree + data.degree),
                source.term(c.degree),
                &c.matrix,
                &format!("{ctx}, degree {}", c.degree),
            )?;
            Ok((c.degree, m))
        })
        .collect::<Result<Vec<_>>>()?;
    GradedMap::new(source.clone(), target.clone(), data.degree, comps).map_err(|e| fixture_err(ctx, e))
}

pub fn encode_map(f: &GradedMap) -> MapData {
    let alg = f.algebra();
    MapData {
        degree: f.degree(),
        components: f
            .components()
            .filter(|(_, m)| !m.is_zero())
            .map(|(n, m)| ComponentSpec {
                degree: n,
                matrix: encode_block(alg, m),
            })
            .collect(),
    }
}

fn decode_laurent(spec: &LaurentSpec, ctx: &str) -> Result<Scalar> {
    let terms = spec
        .iter()
        .map(|(exp, c)| match Scalar::parse(Field::Rational, c) {
            Ok(Scalar::Rat(r)) => Ok((exp.clone(), r)),
            Ok(_) => unreachable!("rational parse"),
            Err(e) => Err(fixture_err(ctx, e)),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Scalar::laurent(Laurent::from_terms(terms)))
}

fn decode_laurent_mat(rows: usize, cols: usize, spec: &[Vec<LaurentSpec>], ctx: &str) -> Result<Mat> {
    if spec.len() != rows || spec.iter().any(|r| r.len() != cols) {
        return Err(Error::Fixture(format!("{ctx}: expected a {rows}x{cols} matrix")));
    }
    let entries = spec
        .iter()
        .map(|r| r.iter().map(|e| decode_laurent(e, ctx)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(Mat::from_fn(Field::Rational, rows, cols, |i, j| entries[i][j].clone()))
}

pub fn decode_contraction(spec: &ContractionSpec, ctx: &str) -> Result<ContractionFixture> {
    for v in &spec.inverted {
        if !spec.variables.contains(v) {
            return Err(Error::Fixture(format!("{ctx}: inverted variable '{v}' is not declared")));
        }
    }
    let ring = LaurentRing::new(
        spec.variables.clone(),
        spec.variables.iter().map(|v| spec.inverted.contains(v)).collect(),
    )?;
    let steps = spec.ranks.len().saturating_sub(1);
    if spec.diffs.len() != steps || spec.homotopy.len() != steps {
        return Err(Error::Fixture(format!("{ctx}: {} ranks need {steps} differentials and homotopy components", spec.ranks.len())));
    }
    let r = &spec.ranks;
    let diffs = (0..steps)
        .map(|k| decode_laurent_mat(r[k], r[k + 1], &spec.diffs[k], &format!("{ctx}, d^{}", spec.lo + k as i64)))
        .collect::<Result<Vec<_>>>()?;
    let homotopy = (0..steps)
        .map(|k| decode_laurent_mat(r[k + 1], r[k], &spec.homotopy[k], &format!("{ctx}, h^{}", spec.lo + k as i64 + 1)))
        .collect::<Result<Vec<_>>>()?;
    ContractionFixture::new(ring, spec.lo, spec.ranks.clone(), diffs, homotopy).map_err(|e| fixture_err(ctx, e))
}

fn encode_laurent(s: &Scalar) -> LaurentSpec {
    s.as_laurent()
        .terms()
        .map(|(e, c)| (e.clone(), Scalar::Rat(c.clone()).to_string()))
        .collect()
}

pub fn encode_contraction(fx: &ContractionFixture) -> ContractionSpec {
    let mat = |m: &Mat| -> Vec<Vec<LaurentSpec>> {
        (0..m.rows()).map(|i| (0..m.cols()).map(|j| encode_laurent(&m.get(i, j))).collect()).collect()
    };
    let ring = fx.ring();
    ContractionSpec {
        variables: ring.variables.clone(),
        inverted: ring
            .variables
            .iter()
            .zip(&ring.inverted)
            .filter(|(_, &b)| b)
            .map(|(v, _)| v.clone())
            .collect(),
        lo: fx.lo(),
        ranks: fx.ranks().to_vec(),
        diffs: fx.diffs().iter().map(mat).collect(),
        homotopy: fx.homotopy().iter().map(mat).collect(),
    }
}

fn build_algebra(name: &str, field: Field, spec: &AlgebraSpec) -> Result<Arc<Algebra>> {
    let ctx = format!("algebra '{name}'");
    let d = spec.basis.len();
    let mut seen = BTreeSet::new();
    for b in &spec.basis {
        if !seen.insert(b) {
            return Err(Error::Fixture(format!("{ctx}: basis element '{b}' listed twice")));
        }
    }
    let index = |b: &str| spec.basis.iter().position(|x| x == b);
    let view = RawAlgebraView { basis: &spec.basis, field };
    let mut table = vec![vec![vec![Scalar::zero(field); d]; d]; d];
    let mut set = BTreeSet::new();
    for (l, r, p) in &spec.products {
        let triple = format!("product triple ({l}, {r}, {p:?})");
        let (i, j) = match (index(l), index(r)) {
            (Some(i), Some(j)) => (i, j),
            _ => return Err(Error::Fixture(format!("{ctx}: {triple} names an unknown basis element"))),
        };
        if !set.insert((i, j)) {
            return Err(Error::Fixture(format!("{ctx}: {triple} repeats the pair ({l}, {r})")));
        }
        table[i][j] = view.elem(p).map_err(|e| Error::Fixture(format!("{ctx}: {triple}: {e}")))?;
    }
    let unit = view.elem(&spec.unit).map_err(|e| fixture_err(&format!("{ctx}, unit"), e))?;
    let idempotents = spec
        .idempotents
        .iter()
        .map(|e| view.elem(e).map_err(|err| fixture_err(&format!("{ctx}, idempotent"), err)))
        .collect::<Result<Vec<_>>>()?;
    let raw = RawAlgebra {
        name: name.to_string(),
        field,
        basis_names: spec.basis.clone(),
        table,
        unit,
        idempotents,
        primitive: spec.primitive,
    };
    validate_algebra(raw).map_err(|e| match e {
        Error::NonAssociative { i, j, l } => Error::Fixture(format!(
            "{ctx}: multiplication is not associative on basis triple ({}, {}, {})",
            spec.basis[i], spec.basis[j], spec.basis[l]
        )),
        e => fixture_err(&ctx, e),
    })
}

/// Element decoding before the algebra exists.
struct RawAlgebraView<'a> {
    basis: &'a [String],
    field: Field,
}

impl RawAlgebraView<'_> {
    fn elem(&self, spec: &ElemSpec) -> std::result::Result<Elem, String> {
        let mut out = vec![Scalar::zero(self.field); self.basis.len()];
        for (name, value) in spec {
            let i = self
                .basis
                .iter()
                .position(|b| b == name)
                .ok_or_else(|| format!("'{name}' is not a basis element"))?;
            out[i] = Scalar::parse(self.field, value).map_err(|e| e.to_string())?;
        }
        Ok(out)
    }
}

impl Fixture {
    pub fn from_text(text: &str) -> Result<Fixture> {
        Fixture::load(parse(text)?)
    }

    pub fn from_path(path: &std::path::Path) -> Result<Fixture> {
        Fixture::from_text(&std::fs::read_to_string(path)?)
    }

    /// Builds every section in dependency order, re-validating each invariant.
    pub fn load(file: FixtureFile) -> Result<Fixture> {
        let field = parse_field(&file.field)?;
        let mut algebras = BTreeMap::new();
        for (name, spec) in &file.algebras {
            algebras.insert(name.clone(), build_algebra(name, field, spec)?);
        }

        let mut ideals = BTreeMap::new();
        for (name, spec) in &file.ideals {
            let ctx = format!("ideal '{name}'");
            let r = lookup(&algebras, &spec.algebra, "algebra", &ctx)?;
            let gens = spec
                .generators
                .iter()
                .map(|g| decode_elem(r, g, &ctx))
                .collect::<Result<Vec<_>>>()?;
            ideals.insert(name.clone(), TwoSidedIdeal::generated(r, &gens).map_err(|e| fixture_err(&ctx, e))?);
        }

        let mut ring_maps = BTreeMap::new();
        // quotients first: they register algebras other maps may use
        for (name, spec) in &file.ring_maps {
            if let RingMapSpec::Quotient { ideal, target } = spec {
                let ctx = format!("ring map '{name}'");
                let i = lookup(&ideals, ideal, "ideal", &ctx)?;
                if algebras.contains_key(target) {
                    return Err(Error::Fixture(format!("{ctx}: algebra '{target}' already exists")));
                }
                let f = RingMap::quotient(i, target).map_err(|e| fixture_err(&ctx, e))?;
                algebras.insert(target.clone(), f.target().clone());
                ring_maps.insert(name.clone(), f);
            }
        }
        for (name, spec) in &file.ring_maps {
            let ctx = format!("ring map '{name}'");
            let f = match spec {
                RingMapSpec::Quotient { .. } => continue,
                RingMapSpec::Identity { algebra } => RingMap::identity(lookup(&algebras, algebra, "algebra", &ctx)?),
                RingMapSpec::Explicit { source, target, images } => {
                    let s = lookup(&algebras, source, "algebra", &ctx)?;
                    let t = lookup(&algebras, target, "algebra", &ctx)?;
                    let images = images
                        .iter()
                        .map(|x| decode_elem(t, x, &ctx))
                        .collect::<Result<Vec<_>>>()?;
                    RingMap::new(s.clone(), t.clone(), images).map_err(|e| fixture_err(&ctx, e))?
                }
            };
            ring_maps.insert(name.clone(), f);
        }

        let mut functors = BTreeMap::new();
        for (name, spec) in &file.functors {
            let ctx = format!("functor '{name}'");
            let f = match spec {
                FunctorSpec::Identity { algebra } => Ok(BimoduleFunctor::identity(lookup(&algebras, algebra, "algebra", &ctx)?)),
                FunctorSpec::Induction { map } => BimoduleFunctor::induction(name, lookup(&ring_maps, map, "ring map", &ctx)?),
                FunctorSpec::Restriction { map, witnesses } => {
                    let f = lookup(&ring_maps, map, "ring map", &ctx)?;
                    let w = match witnesses {
                        None => None,
                        Some(w) => Some(
                            w.iter()
                                .map(|row| {
                                    row.iter()
                                        .map(|x| {
                                            Ok(Witness {
                                                target_idempotent: x.target,
                                                generator: decode_elem(f.target(), &x.generator, &ctx)?,
                                            })
                                        })
                                        .collect::<Result<Vec<_>>>()
                                })
                                .collect::<Result<Vec<_>>>()?,
                        ),
                    };
                    BimoduleFunctor::restriction(name, f, w)
                }
            }
            .map_err(|e| fixture_err(&ctx, e))?;
            functors.insert(name.clone(), f);
        }

        let mut modules = BTreeMap::new();
        for (name, spec) in &file.modules {
            let ctx = format!("module '{name}'");
            let m = match spec {
                ModuleSpec::Projective { algebra, index } | ModuleSpec::Simple { algebra, index } => {
                    let r = lookup(&algebras, algebra, "algebra", &ctx)?;
                    if *index >= r.n_idempotents() {
                        return Err(Error::Fixture(format!("{ctx}: idempotent index {index} out of range")));
                    }
                    if matches!(spec, ModuleSpec::Projective { .. }) {
                        FdModule::projective(r, *index)
                    } else {
                        FdModule::simple(r, *index).map_err(|e| fixture_err(&ctx, e))?
                    }
                }
                ModuleSpec::Regular { algebra } => FdModule::regular(lookup(&algebras, algebra, "algebra", &ctx)?),
                ModuleSpec::Explicit { algebra, dim, action } => {
                    let r = lookup(&algebras, algebra, "algebra", &ctx)?;
                    let mats = action
                        .iter()
                        .map(|m| {
                            let rows = m
                                .iter()
                                .map(|row| row.iter().map(|s| Scalar::parse(field, s)).collect::<std::result::Result<Vec<_>, _>>())
                                .collect::<std::result::Result<Vec<_>, _>>()
                                .map_err(|e| fixture_err(&ctx, e))?;
                            if rows.is_empty() {
                                Ok(Mat::zeros(field, 0, 0))
                            } else {
                                Mat::from_rows(field, rows).map_err(|e| fixture_err(&ctx, e))
                            }
                        })
                        .collect::<Result<Vec<_>>>()?;
                    FdModule::new(r.clone(), *dim, mats).map_err(|e| fixture_err(&ctx, e))?
                }
            };
            modules.insert(name.clone(), m);
        }

        let mut complexes = BTreeMap::new();
        for (name, spec) in &file.complexes {
            let ctx = format!("complex '{name}'");
            let r = lookup(&algebras, &spec.algebra, "algebra", &ctx)?;
            complexes.insert(name.clone(), decode_complex(r, spec, &ctx)?);
        }

        let mut maps = BTreeMap::new();
        for (name, spec) in &file.maps {
            let ctx = format!("map '{name}'");
            let s = lookup(&complexes, &spec.source, "complex", &ctx)?;
            let t = lookup(&complexes, &spec.target, "complex", &ctx)?;
            let data = MapData {
                degree: spec.degree,
                components: spec.components.clone(),
            };
            maps.insert(name.clone(), decode_map(s, t, &data, &ctx)?);
        }

        let mut triangles = BTreeMap::new();
        for (name, spec) in &file.triangles {
            let ctx = format!("triangle '{name}'");
            let get = |m: &str| lookup(&maps, m, "map", &ctx).cloned();
            let t = Triangle::new(get(&spec.alpha)?, get(&spec.beta)?, get(&spec.gamma)?).map_err(|e| fixture_err(&ctx, e))?;
            triangles.insert(name.clone(), t);
        }

        let mut subcategories = BTreeMap::new();
        for (name, spec) in &file.subcategories {
            let ctx = format!("subcategory '{name}'");
            let r = lookup(&algebras, &spec.algebra, "algebra", &ctx)?;
            let objects = spec
                .objects
                .iter()
                .map(|o| Ok((o.clone(), lookup(&complexes, o, "complex", &ctx)?.clone())))
                .collect::<Result<Vec<_>>>()?;
            let s = FiniteSubcat::new(r, objects, spec.window).map_err(|e| fixture_err(&ctx, e))?;
            subcategories.insert(name.clone(), Arc::new(s));
        }

        let mut hom_ideals = BTreeMap::new();
        for (name, spec) in &file.hom_ideals {
            let ctx = format!("hom ideal '{name}'");
            let s = lookup(&subcategories, &spec.subcategory, "subcategory", &ctx)?;
            let gens = spec
                .generators
                .iter()
                .map(|g| WindowMap::locate(s, lookup(&maps, g, "map", &ctx)?).map_err(|e| fixture_err(&ctx, e)))
                .collect::<Result<Vec<_>>>()?;
            let mut ideal = generate_ideal(s, &gens).map_err(|e| fixture_err(&ctx, e))?;
            if !spec.factor_through.is_empty() {
                let mut objs = Vec::new();
                for o in &spec.factor_through {
                    let base = s
                        .base_names()
                        .iter()
                        .position(|b| b == o)
                        .ok_or_else(|| Error::Fixture(format!("{ctx}: '{o}' is not an object of the subcategory")))?;
                    objs.extend((0..s.len()).filter(|&i| s.object_ref(i).base == base));
                }
                let ft = factor_through_ideal(s, &objs).map_err(|e| fixture_err(&ctx, e))?;
                ideal = sum_ideals(&ideal, &ft).map_err(|e| fixture_err(&ctx, e))?;
            }
            hom_ideals.insert(name.clone(), ideal);
        }

        let mut contractions = BTreeMap::new();
        for (name, spec) in &file.contractions {
            contractions.insert(name.clone(), decode_contraction(spec, &format!("contraction '{name}'"))?);
        }

        let fx = Fixture {
            file,
            field,
            algebras,
            ideals,
            ring_maps,
            functors,
            modules,
            complexes,
            maps,
            triangles,
            subcategories,
            hom_ideals,
            contractions,
        };
        fx.check_tasks()?;
        Ok(fx)
    }

    fn check_tasks(&self) -> Result<()> {
        let mut ids = BTreeSet::new();
        for t in &self.file.tasks {
            let ctx = format!("task '{}'", t.id());
            if !ids.insert(t.id().to_string()) {
                return Err(Error::Fixture(format!("{ctx}: duplicate task id")));
            }
            match t {
                TaskSpec::CheckHepi { map, .. } => {
                    lookup(&self.ring_maps, map, "ring map", &ctx)?;
                }
                TaskSpec::LiftMap {
                    functor,
                    source,
                    target,
                    map,
                    generators,
                    ..
                } => {
                    lookup(&self.functors, functor, "functor", &ctx)?;
                    for c in [source, target].into_iter().chain(generators) {
                        lookup(&self.complexes, c, "complex", &ctx)?;
                    }
                    lookup(&self.maps, map, "map", &ctx)?;
                }
                TaskSpec::LiftComplex {
                    functor,
                    complex,
                    generators,
                    ..
                } => {
                    lookup(&self.functors, functor, "functor", &ctx)?;
                    for c in std::iter::once(complex).chain(generators) {
                        lookup(&self.complexes, c, "complex", &ctx)?;
                    }
                }
                TaskSpec::RecognizeTriangle { triangle, .. } => {
                    lookup(&self.triangles, triangle, "triangle", &ctx)?;
                }
                TaskSpec::CheckIdeal { ideal, triangles, .. } => {
                    lookup(&self.hom_ideals, ideal, "hom ideal", &ctx)?;
                    for t in triangles {
                        lookup(&self.triangles, t, "triangle", &ctx)?;
                    }
                }
                TaskSpec::TelescopeReport {
                    functor,
                    subcategory,
                    triangles,
                    ..
                } => {
                    lookup(&self.functors, functor, "functor", &ctx)?;
                    lookup(&self.subcategories, subcategory, "subcategory", &ctx)?;
                    for t in triangles {
                        lookup(&self.triangles, t, "triangle", &ctx)?;
                    }
                }
                TaskSpec::AlmostReport {
                    ideal,
                    idempotent,
                    subcategory,
                    ..
                } => {
                    let i = lookup(&self.ideals, ideal, "ideal", &ctx)?;
                    if let Some(e) = idempotent {
                        decode_elem(i.algebra(), e, &ctx)?;
                    }
                    if let Some(s) = subcategory {
                        lookup(&self.subcategories, s, "subcategory", &ctx)?;
                    }
                }
                TaskSpec::VerifyContraction { contraction, .. } => {
                    lookup(&self.contractions, contraction, "contraction", &ctx)?;
                }
            }
        }
        Ok(())
    }

    /// The fixture name of an algebra, falling back to its own name.
    pub fn algebra_name(&self, alg: &Arc<Algebra>) -> String {
        self.algebras
            .iter()
            .find(|(_, a)| Arc::ptr_eq(a, alg))
            .or_else(|| self.algebras.iter().find(|(_, a)| Algebra::same(a, alg)))
            .map(|(n, _)| n.clone())
            .unwrap_or_else(|| alg.name().to_string())
    }

    pub fn task(&self, id: &str) -> Option<&TaskSpec> {
        self.file.tasks.iter().find(|t| t.id() == id)
    }

    pub(crate) fn get<'a, T>(&self, map: &'a BTreeMap<String, T>, name: &str, what: &str) -> Result<&'a T> {
        lookup(map, name, what, "task")
    }
}

fn sum_ideals(a: &HomIdeal, b: &HomIdeal) -> Result<HomIdeal> {
    let s = a.subcat().clone();
    let n = s.len();
    let spaces = (0..n * n)
        .map(|p| Ok(a.space(p / n, p % n).sum(b.space(p / n, p % n))?))
        .collect::<Result<Vec<_>>>()?;
    HomIdeal::from_spaces(s, spaces)
}
