use super::hom::{homotopy_columns, null_homotopy_or_witness};
use super::{cone, verify_null_homotopy, Farkas, GradedMap, MapLayout, ProjComplex};
use crate::error::{Error, Result};
use crate::linalg::{LinearSolver, Scalar};

/// A candidate triangle `X -> Y -> Z -> Sigma X`.
#[derive(Clone, Debug)]
pub struct Triangle {
    pub alpha: GradedMap,
    pub beta: GradedMap,
    pub gamma: GradedMap,
}

impl Triangle {
    pub fn new(alpha: GradedMap, beta: GradedMap, gamma: GradedMap) -> Result<Triangle> {
        for (name, f) in [("alpha", &alpha), ("beta", &beta), ("gamma", &gamma)] {
            if !f.is_chain_map() {
                return Err(Error::ChainMap(format!("{name} is not a chain map")));
            }
        }
        if alpha.target() != beta.source() || beta.target() != gamma.source() {
            return Err(Error::ChainMap("triangle maps are not composable".into()));
        }
        if *gamma.target() != alpha.source().shift(1) {
            return Err(Error::ChainMap("third map must land in the shift of the first object".into()));
        }
        Ok(Triangle { alpha, beta, gamma })
    }

    /// The canonical triangle `X -> Y -> Cone(f) -> Sigma X`.
    pub fn canonical(f: &GradedMap) -> Triangle {
        let c = cone(f);
        Triangle {
            alpha: f.clone(),
            beta: c.iota,
            gamma: c.pi,
        }
    }

    pub fn x(&self) -> &ProjComplex {
        self.alpha.source()
    }

    pub fn y(&self) -> &ProjComplex {
        self.beta.source()
    }

    pub fn z(&self) -> &ProjComplex {
        self.gamma.source()
    }

    /// `Y -> Z -> Sigma X -> Sigma Y` with third map `-Sigma alpha`.
    pub fn rotate(&self) -> Triangle {
        Triangle {
            alpha: self.beta.clone(),
            beta: self.gamma.clone(),
            gamma: self.alpha.shift(1).neg(),
        }
    }
}

/// Evidence attached to a triangle verdict. Every variant can be rechecked
/// with [`TriangleCertificate::verify`], which never calls the solver.
#[derive(Clone, Debug)]
pub enum TriangleCertificate {
    /// `rho: Cone(alpha) -> Z` with `rho iota - beta = d h + h d`,
    /// `gamma rho - pi = d k + k d`, and a contraction of `Cone(rho)`.
    Exact {
        rho: GradedMap,
        h_iota: GradedMap,
        h_pi: GradedMap,
        contraction: GradedMap,
    },
    /// `beta alpha` (`first = true`) or `gamma beta` is not null-homotopic.
    Composition { first: bool, witness: Farkas },
    /// No `rho` makes the comparison diagram commute up to homotopy.
    NoComparison { witness: Farkas },
    /// The comparison map exists but `Cone(rho)` is not contractible.
    NotEquivalence {
        rho: GradedMap,
        h_iota: GradedMap,
        h_pi: GradedMap,
        witness: Farkas,
    },
}

#[derive(Clone, Debug)]
pub struct TriangleVerdict {
    pub exact: bool,
    pub reason: Option<String>,
    pub certificate: TriangleCertificate,
}

struct ComparisonSystem {
    rho: MapLayout,
    h_iota: MapLayout,
    h_pi: MapLayout,
    columns: Vec<Vec<Scalar>>,
    rhs: Vec<Scalar>,
}

fn comparison_system(t: &Triangle) -> ComparisonSystem {
    let c = cone(&t.alpha);
    let (y, z, sx) = (t.y(), t.z(), t.gamma.target());
    let l_rho = MapLayout::new(&c.complex, z, 0);
    let l_chain = MapLayout::new(&c.complex, z, 1);
    let l_yz = MapLayout::new(y, z, 0);
    let l_cx = MapLayout::new(&c.complex, sx, 0);
    let l_h1 = MapLayout::new(y, z, -1);
    let l_h2 = MapLayout::new(&c.complex, sx, -1);
    let (n1, n2, n3) = (l_chain.dim(), l_yz.dim(), l_cx.dim());
    let field = l_rho.field();
    let zeros = |n: usize| vec![Scalar::zero(field); n];
    let mut columns = Vec::new();
    for k in 0..l_rho.dim() {
        let rho = l_rho.unit_map(k);
        let mut col = l_chain.params(&rho.boundary());
        col.extend(l_yz.params(&rho.compose(&c.iota)));
        col.extend(l_cx.params(&t.gamma.compose(&rho)));
        columns.push(col);
    }
    for k in 0..l_h1.dim() {
        let mut col = zeros(n1);
        col.extend(l_yz.params(&l_h1.unit_map(k).boundary().neg()));
        col.extend(zeros(n3));
        columns.push(col);
    }
    for k in 0..l_h2.dim() {
        let mut col = zeros(n1 + n2);
        col.extend(l_cx.params(&l_h2.unit_map(k).boundary().neg()));
        columns.push(col);
    }
    let mut rhs = zeros(n1);
    rhs.extend(l_yz.params(&t.beta));
    rhs.extend(l_cx.params(&c.pi));
    ComparisonSystem {
        rho: l_rho,
        h_iota: l_h1,
        h_pi: l_h2,
        columns,
        rhs,
    }
}

/// Decides whether the triangle is exact by comparing it with the cone of
/// its first map.
pub fn recognize_triangle(t: &Triangle) -> TriangleVerdict {
    if let Err(w) = null_homotopy_or_witness(&t.beta.compose(&t.alpha)) {
        return TriangleVerdict {
            exact: false,
            reason: Some("compositions: beta o alpha is not null-homotopic".into()),
            certificate: TriangleCertificate::Composition { first: true, witness: w },
        };
    }
    if let Err(w) = null_homotopy_or_witness(&t.gamma.compose(&t.beta)) {
        return TriangleVerdict {
            exact: false,
            reason: Some("compositions: gamma o beta is not null-homotopic".into()),
            certificate: TriangleCertificate::Composition { first: false, witness: w },
        };
    }
    let sys = comparison_system(t);
    let solver = LinearSolver::from_columns(sys.rho.field(), sys.rhs.len(), &sys.columns).expect("no Laurent entries");
    let Some(sol) = solver.solve(&sys.rhs).expect("shapes match") else {
        return TriangleVerdict {
            exact: false,
            reason: Some("no map from the cone of the first map commutes with the triangle".into()),
            certificate: TriangleCertificate::NoComparison {
                witness: Farkas {
                    y: solver.infeasibility(&sys.rhs).expect("inconsistent system has a witness"),
                },
            },
        };
    };
    let (a, b) = (sys.rho.dim(), sys.h_iota.dim());
    let rho = sys.rho.to_map(&sol[..a]);
    let h_iota = sys.h_iota.to_map(&sol[a..a + b]);
    let h_pi = sys.h_pi.to_map(&sol[a + b..]);
    let c = cone(&rho).complex;
    match null_homotopy_or_witness(&GradedMap::identity(&c)) {
        Ok(contraction) => TriangleVerdict {
            exact: true,
            reason: None,
            certificate: TriangleCertificate::Exact {
                rho,
                h_iota,
                h_pi,
                contraction,
            },
        },
        Err(witness) => TriangleVerdict {
            exact: false,
            reason: Some("the comparison map from the cone is not a homotopy equivalence".into()),
            certificate: TriangleCertificate::NotEquivalence {
                rho,
                h_iota,
                h_pi,
                witness,
            },
        },
    }
}

fn verify_not_null(f: &GradedMap, w: &Farkas) -> bool {
    let l0 = MapLayout::new(f.source(), f.target(), 0);
    let cols = homotopy_columns(f.source(), f.target(), &l0);
    w.verify(&cols, &l0.params(f))
}

fn verify_comparison(t: &Triangle, rho: &GradedMap, h_iota: &GradedMap, h_pi: &GradedMap) -> bool {
    let c = cone(&t.alpha);
    rho.source() == &c.complex
        && rho.target() == t.z()
        && rho.is_chain_map()
        && verify_null_homotopy(&rho.compose(&c.iota).sub(&t.beta), h_iota)
        && verify_null_homotopy(&t.gamma.compose(rho).sub(&c.pi), h_pi)
}

impl TriangleCertificate {
    /// Rechecks the certificate from scratch.
    pub fn verify(&self, t: &Triangle) -> bool {
        match self {
            TriangleCertificate::Exact {
                rho,
                h_iota,
                h_pi,
                contraction,
            } => {
                verify_comparison(t, rho, h_iota, h_pi) && {
                    let c = cone(rho).complex;
                    verify_null_homotopy(&GradedMap::identity(&c), contraction)
                }
            }
            TriangleCertificate::Composition { first, witness } => {
                let f = if *first {
                    t.beta.compose(&t.alpha)
                } else {
                    t.gamma.compose(&t.beta)
                };
                verify_not_null(&f, witness)
            }
            TriangleCertificate::NoComparison { witness } => {
                let sys = comparison_system(t);
                witness.verify(&sys.columns, &sys.rhs)
            }
            TriangleCertificate::NotEquivalence {
                rho,
                h_iota,
                h_pi,
                witness,
            } => verify_comparison(t, rho, h_iota, h_pi) && verify_not_null(&GradedMap::identity(&cone(rho).complex), witness),
        }
    }
}
