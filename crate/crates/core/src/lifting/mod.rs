//! Lifting maps and complexes along a bimodule functor `F`.
//!
//! A map `alpha: FX -> FY` lifts if there is a fraction `X <-pi- X' -alpha'-> Y`
//! with `F pi` invertible and `F alpha' = alpha o F pi` up to homotopy. The
//! search only builds `X'` as iterated cones `Sigma^-1 Cone(psi)` of maps
//! `psi: X_cur -> (Sigma^n K)^h` into kernel objects `K`, so a negative answer
//! never proves that no lift exists.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::functors::BimoduleFunctor;
use crate::homcat::{
    cone, cone_morphism, contraction, direct_sum, is_contractible, is_homotopy_equivalence, verify_null_homotopy, GradedMap,
    HomSpace, MapLayout, ProjComplex,
};
use crate::linalg::{LinearSolver, Scalar};

pub const DEFAULT_DEPTH: usize = 3;
pub const DEFAULT_MAX_NODES: usize = 4096;

#[derive(Clone, Debug)]
pub struct SearchBudget {
    /// Maximal number of cone extensions.
    pub depth: usize,
    /// Objects `K` with `F K = 0`.
    pub generators: Vec<ProjComplex>,
    /// Shifts `n` tried for `Sigma^n K`. When absent, all shifts for which
    /// `Sigma^n K` and the current source share a degree.
    pub window: Option<(i64, i64)>,
    /// Cap on the number of candidates examined across all depths.
    pub max_nodes: usize,
}

impl SearchBudget {
    pub fn new(depth: usize, generators: Vec<ProjComplex>) -> SearchBudget {
        SearchBudget {
            depth,
            generators,
            window: None,
            max_nodes: DEFAULT_MAX_NODES,
        }
    }

    fn shifts(&self, x: &ProjComplex, k: &ProjComplex) -> Vec<i64> {
        if let Some((lo, hi)) = self.window {
            return (lo..=hi).collect();
        }
        if x.is_zero_object() || k.is_zero_object() {
            return Vec::new();
        }
        // (Sigma^n K)^m = K^{m+n} lives in degrees k.lo - n ..= k.hi - n
        (k.lo() - x.hi()..=k.hi() - x.lo()).collect()
    }
}

/// `X <-pi- X' -alpha'-> Y` with the evidence that it lifts `alpha`.
#[derive(Clone, Debug)]
pub struct LiftCertificate {
    pub x_prime: ProjComplex,
    pub pi: GradedMap,
    pub alpha_prime: GradedMap,
    /// Contraction of `Cone(F pi)`.
    pub contraction: GradedMap,
    /// `F alpha' - alpha o F pi = d h + h d`.
    pub homotopy: GradedMap,
    /// The (generator, shift) steps that built `X'`.
    pub path: Vec<(usize, i64)>,
}

impl LiftCertificate {
    pub fn depth(&self) -> usize {
        self.path.len()
    }

    /// Rechecks every identity from scratch, without solving anything.
    pub fn verify(&self, f: &BimoduleFunctor, x: &ProjComplex, y: &ProjComplex, alpha: &GradedMap) -> bool {
        if self.pi.source() != &self.x_prime
            || self.pi.target() != x
            || self.alpha_prime.source() != &self.x_prime
            || self.alpha_prime.target() != y
            || self.pi.degree() != 0
            || self.alpha_prime.degree() != 0
            || !self.pi.is_chain_map()
            || !self.alpha_prime.is_chain_map()
            || alpha.source() != &f.apply(x)
            || alpha.target() != &f.apply(y)
        {
            return false;
        }
        let f_pi = f.apply_map(&self.pi);
        let c = cone(&f_pi).complex;
        if !verify_null_homotopy(&GradedMap::identity(&c), &self.contraction) {
            return false;
        }
        let defect = f.apply_map(&self.alpha_prime).sub(&alpha.compose(&f_pi));
        verify_null_homotopy(&defect, &self.homotopy)
    }
}

#[derive(Clone, Debug)]
pub enum LiftOutcome {
    Found(LiftCertificate),
    /// The budget was exhausted. This does not refute the existence of a lift.
    NotFound {
        depth_reached: usize,
        explored: usize,
        note: Option<String>,
    },
}

#[derive(Clone)]
struct Node {
    x: ProjComplex,
    pi: GradedMap,
    path: Vec<(usize, i64)>,
}

/// Solves for a chain map `a: X' -> Y` and `h` with `F a - target = d h + h d`.
fn solve_node(f: &BimoduleFunctor, node: &Node, y: &ProjComplex, target: &GradedMap) -> Option<(GradedMap, GradedMap)> {
    let fx = target.source();
    let fy = target.target();
    let l_a = MapLayout::new(&node.x, y, 0);
    let l_chain = MapLayout::new(&node.x, y, 1);
    let l_h = MapLayout::new(fx, fy, -1);
    let l_out = MapLayout::new(fx, fy, 0);
    let field = l_a.field();
    let mut columns = Vec::with_capacity(l_a.dim() + l_h.dim());
    for k in 0..l_a.dim() {
        let u = l_a.unit_map(k);
        let mut col = l_chain.params(&u.boundary());
        col.extend(l_out.params(&f.apply_map(&u)));
        columns.push(col);
    }
    for k in 0..l_h.dim() {
        let mut col = vec![Scalar::zero(field); l_chain.dim()];
        col.extend(l_out.params(&l_h.unit_map(k).boundary().neg()));
        columns.push(col);
    }
    let mut rhs = vec![Scalar::zero(field); l_chain.dim()];
    rhs.extend(l_out.params(target));
    let solver = LinearSolver::from_columns(field, rhs.len(), &columns).expect("no Laurent entries");
    let sol = solver.solve(&rhs).expect("shapes match")?;
    Some((l_a.to_map(&sol[..l_a.dim()]), l_h.to_map(&sol[l_a.dim()..])))
}

/// `psi: X -> (Sigma^n K)^h` built from a basis of `Hom(X, Sigma^n K)`.
fn universal_map(x: &ProjComplex, k: &ProjComplex) -> Option<GradedMap> {
    let hom = HomSpace::new(x, k).expect("same algebra");
    let maps = hom.basis_maps();
    let (first, rest) = maps.split_first()?;
    let mut target = k.clone();
    let mut psi = first.clone();
    for m in rest {
        let ds = direct_sum(&target, k);
        psi = ds.inclusions[0].compose(&psi).add(&ds.inclusions[1].compose(m));
        target = ds.complex;
    }
    Some(psi)
}

fn extend(node: &Node, psi: &GradedMap, step: (usize, i64)) -> Node {
    let c = cone(psi);
    let pi_step = c.pi.shift(-1);
    let pi_step = pi_step.with_ends(c.complex.shift(-1), node.x.clone());
    let mut path = node.path.clone();
    path.push(step);
    Node {
        x: pi_step.source().clone(),
        pi: node.pi.compose(&pi_step),
        path,
    }
}

fn certificate(f: &BimoduleFunctor, node: &Node, alpha: &GradedMap, y: &ProjComplex) -> Option<LiftCertificate> {
    let f_pi = f.apply_map(&node.pi);
    let target = alpha.compose(&f_pi);
    let (alpha_prime, homotopy) = solve_node(f, node, y, &target)?;
    let contraction = contraction(&cone(&f_pi).complex)?;
    Some(LiftCertificate {
        x_prime: node.x.clone(),
        pi: node.pi.clone(),
        alpha_prime,
        contraction,
        homotopy,
        path: node.path.clone(),
    })
}

/// Breadth-first search for a lift of `alpha: FX -> FY`. Candidates at one
/// depth are ordered by (parent, generator index, shift) and evaluated in
/// parallel; the first success in that order is returned.
pub fn lift_chain_map(
    f: &BimoduleFunctor,
    x: &ProjComplex,
    y: &ProjComplex,
    alpha: &GradedMap,
    budget: &SearchBudget,
) -> Result<LiftOutcome> {
    let (fx, fy) = (f.apply(x), f.apply(y));
    if alpha.source() != &fx || alpha.target() != &fy {
        return Err(Error::ChainMap("alpha must go from F(X) to F(Y)".into()));
    }
    if alpha.degree() != 0 || !alpha.is_chain_map() {
        return Err(Error::ChainMap("alpha is not a chain map".into()));
    }
    for (i, k) in budget.generators.iter().enumerate() {
        if !is_contractible(&f.apply(k)) {
            return Err(Error::Budget(format!("generator {i} is not killed by {}", f.name())));
        }
    }
    let root = Node {
        x: x.clone(),
        pi: GradedMap::identity(x),
        path: Vec::new(),
    };
    if let Some(cert) = certificate(f, &root, alpha, y) {
        return Ok(LiftOutcome::Found(cert));
    }
    if budget.generators.is_empty() {
        return Ok(LiftOutcome::NotFound {
            depth_reached: 0,
            explored: 1,
            note: (budget.depth > 0)
                .then(|| "no kernel generators: the search reduces to a direct preimage solve".to_string()),
        });
    }
    let mut frontier = vec![root];
    let mut explored = 1;
    for depth in 1..=budget.depth {
        let mut children = Vec::new();
        for node in &frontier {
            for (g, k) in budget.generators.iter().enumerate() {
                for n in budget.shifts(&node.x, k) {
                    if explored + children.len() >= budget.max_nodes {
                        break;
                    }
                    if let Some(psi) = universal_map(&node.x, &k.shift(n)) {
                        children.push(extend(node, &psi, (g, n)));
                    }
                }
            }
        }
        explored += children.len();
        let found = children
            .par_iter()
            .map(|c| certificate(f, c, alpha, y))
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .next();
        if let Some(cert) = found {
            return Ok(LiftOutcome::Found(cert));
        }
        if children.is_empty() {
            return Ok(LiftOutcome::NotFound {
                depth_reached: depth,
                explored,
                note: Some("no nonzero maps into shifted generators".into()),
            });
        }
        frontier = children;
        if explored >= budget.max_nodes {
            return Ok(LiftOutcome::NotFound {
                depth_reached: depth,
                explored,
                note: Some(format!("node cap {} reached", budget.max_nodes)),
            });
        }
    }
    Ok(LiftOutcome::NotFound {
        depth_reached: budget.depth,
        explored,
        note: None,
    })
}

/// A complex `X` over the source with a homotopy equivalence `F X -> Y`.
#[derive(Clone, Debug)]
pub struct ComplexLift {
    pub complex: ProjComplex,
    pub equivalence: GradedMap,
    /// Contraction of `Cone(equivalence)`.
    pub contraction: GradedMap,
}

impl ComplexLift {
    pub fn verify(&self, f: &BimoduleFunctor, y: &ProjComplex) -> bool {
        self.equivalence.source() == &f.apply(&self.complex)
            && self.equivalence.target() == y
            && self.equivalence.degree() == 0
            && self.equivalence.is_chain_map()
            && verify_null_homotopy(&GradedMap::identity(&cone(&self.equivalence).complex), &self.contraction)
    }
}

#[derive(Clone, Debug)]
pub enum ComplexLiftOutcome {
    Found(ComplexLift),
    /// Lifting the connecting map of the named stage failed within budget.
    NotFound { stage: String, explored: usize },
}

/// Lifts `Y` by induction on its length. `preimages[i]` lists the source
/// summands with `F(P) = Y^{lo + i}`. The top term is split off as a stalk,
/// `Y = Cone(Sigma^-1 Y' -> Y^hi)`, the rest is lifted recursively, and the
/// connecting map is lifted with [`lift_chain_map`].
pub fn lift_complex(
    f: &BimoduleFunctor,
    y: &ProjComplex,
    preimages: &[Vec<usize>],
    budget: &SearchBudget,
) -> Result<ComplexLiftOutcome> {
    let s = f.target();
    if !crate::algebra::Algebra::same(y.algebra(), s) {
        return Err(Error::AlgebraMismatch("Y must live over the target algebra".into()));
    }
    let r = f.source().clone();
    if y.is_zero_object() {
        let x = ProjComplex::zero(&r);
        let e = GradedMap::zero(&f.apply(&x), y, 0);
        let h = GradedMap::zero(&ProjComplex::zero(s), &ProjComplex::zero(s), -1);
        return Ok(ComplexLiftOutcome::Found(ComplexLift {
            complex: x,
            equivalence: e,
            contraction: h,
        }));
    }
    if preimages.len() != y.len() {
        return Err(Error::Lift {
            stage: "preimages".into(),
            reason: format!("{} preimage lists for {} degrees", preimages.len(), y.len()),
        });
    }
    for (i, n) in y.degrees().enumerate() {
        let image: Vec<usize> = preimages[i].iter().flat_map(|&j| f.image_summands(j)).collect();
        if image != y.term(n) {
            return Err(Error::Lift {
                stage: format!("degree {n}"),
                reason: "declared preimage does not map onto the term".into(),
            });
        }
    }
    let (lo, hi) = (y.lo(), y.hi());
    let top = ProjComplex::stalk(&r, hi, preimages[preimages.len() - 1].clone())?;
    if lo == hi {
        let fx = f.apply(&top);
        let e = GradedMap::identity(&fx).with_ends(fx.clone(), y.clone());
        let h = is_homotopy_equivalence(&e).expect("identity");
        return Ok(ComplexLiftOutcome::Found(ComplexLift {
            complex: top,
            equivalence: e,
            contraction: h,
        }));
    }
    let lower = y.truncate(lo, hi - 1);
    let lower_pre = &preimages[..(lower.hi() - lo + 1) as usize];
    let upper = y.truncate(hi, hi);
    let sub = match lift_complex(f, &lower, lower_pre, budget)? {
        ComplexLiftOutcome::Found(sub) => sub,
        not_found => return Ok(not_found),
    };
    // delta: Sigma^-1 Y' -> Y'' is d^{hi-1} in degree hi
    let sl = lower.shift(-1);
    let delta = if lower.hi() == hi - 1 {
        GradedMap::new(sl.clone(), upper.clone(), 0, vec![(hi, y.d(hi - 1))])?
    } else {
        GradedMap::zero(&sl, &upper, 0)
    };
    let e1 = sub.equivalence.shift(-1);
    let x_lower = sub.complex.shift(-1);
    let fx_lower = f.apply(&x_lower);
    let e1 = e1.with_ends(fx_lower.clone(), sl);
    let f_top = f.apply(&top);
    let alpha = delta.compose(&e1).with_ends(fx_lower, f_top.clone());
    let cert = match lift_chain_map(f, &x_lower, &top, &alpha, budget)? {
        LiftOutcome::Found(c) => c,
        LiftOutcome::NotFound { explored, .. } => {
            return Ok(ComplexLiftOutcome::NotFound {
                stage: format!("connecting map into degree {hi}"),
                explored,
            })
        }
    };
    let x = cone(&cert.alpha_prime).complex;
    let f_alpha = f.apply_map(&cert.alpha_prime);
    let f_pi = f.apply_map(&cert.pi);
    let fx = f.apply(&x);
    // Cone(F alpha') -> Cone(alpha o F pi) -> Cone(alpha) -> Cone(delta) = Y
    let mid = alpha.compose(&f_pi);
    let m1 = cone_morphism(
        &f_alpha,
        &mid,
        &GradedMap::identity(f_alpha.source()),
        &GradedMap::identity(f_alpha.target()),
        &cert.homotopy,
    );
    let m2 = cone_morphism(
        &mid,
        &alpha,
        &f_pi,
        &GradedMap::identity(&f_top),
        &GradedMap::zero(f_pi.source(), &f_top, -1),
    );
    let m3 = cone_morphism(
        &alpha,
        &delta,
        &e1,
        &GradedMap::identity(&upper),
        &GradedMap::zero(e1.source(), &upper, -1),
    );
    let equivalence = m3.compose(&m2).compose(&m1).with_ends(fx, y.clone());
    let Some(h) = is_homotopy_equivalence(&equivalence) else {
        return Err(Error::Lift {
            stage: format!("degree {hi}"),
            reason: "assembled comparison map is not an equivalence".into(),
        });
    };
    Ok(ComplexLiftOutcome::Found(ComplexLift {
        complex: x,
        equivalence,
        contraction: h,
    }))
}

#[cfg(test)]
mod tests;
