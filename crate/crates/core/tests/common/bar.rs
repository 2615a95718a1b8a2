//! Tor from the normalized bar complex `M (x) Rbar^{(x) n} (x) N` over the
//! ground field. Slow and independent of the resolution code: no projective
//! covers, no idempotents, its own elimination.

use homepi::algebra::{Algebra, Bimodule, FdModule};
use homepi::linalg::Scalar;

/// Rank by plain Gaussian elimination on a dense row list.
pub fn rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        let pivot: Vec<Scalar> = rows[r].iter().map(|x| x * &inv).collect();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in c..cols {
                    rows[i][j] = &rows[i][j] - &(&f * &pivot[j]);
                }
            }
        }
        rows[r] = pivot;
        r += 1;
    }
    r
}

struct Bar<'a> {
    alg: &'a Algebra,
    m: &'a FdModule,
    n: &'a Bimodule,
    /// Basis indices of `R` kept in `Rbar = R / k 1`.
    kept: Vec<usize>,
    /// Index of the dropped unit coordinate.
    pivot: usize,
}

impl Bar<'_> {
    fn rbar(&self) -> usize {
        self.kept.len()
    }

    fn dim(&self, deg: usize) -> usize {
        self.m.dim() * self.rbar().pow(deg as u32) * self.n.dim()
    }

    /// Coordinates of `x` in `Rbar`.
    fn project(&self, x: &[Scalar]) -> Vec<Scalar> {
        let u = self.alg.unit();
        let c = &x[self.pivot] * &u[self.pivot].inv().expect("unit coordinate");
        self.kept.iter().map(|&j| &x[j] - &(&c * &u[j])).collect()
    }

    fn index(&self, mi: usize, js: &[usize], xi: usize) -> usize {
        let mut k = mi;
        for &j in js {
            k = k * self.rbar() + j;
        }
        k * self.n.dim() + xi
    }

    fn elem(&self, j: usize) -> Vec<Scalar> {
        self.alg.basis_elem(self.kept[j])
    }

    /// Image of the basis tensor `m_mi (x) a_js (x) x_xi` under `d_deg`.
    fn boundary(&self, mi: usize, js: &[usize], xi: usize) -> Vec<Scalar> {
        let field = self.alg.field();
        let deg = js.len();
        let mut out = vec![Scalar::zero(field); self.dim(deg - 1)];
        let sign = |i: usize| if i % 2 == 0 { Scalar::one(field) } else { -Scalar::one(field) };
        let mut unit_m = vec![Scalar::zero(field); self.m.dim()];
        unit_m[mi] = Scalar::one(field);
        let mv = self.m.act(&unit_m, &self.elem(js[0]));
        for (k, c) in mv.iter().enumerate() {
            if !c.is_zero() {
                let t = self.index(k, &js[1..], xi);
                out[t] = &out[t] + c;
            }
        }
        for i in 1..deg {
            let prod = self.project(&self.alg.mul(&self.elem(js[i - 1]), &self.elem(js[i])));
            for (k, c) in prod.iter().enumerate() {
                if !c.is_zero() {
                    let mut nj: Vec<usize> = js[..i - 1].to_vec();
                    nj.push(k);
                    nj.extend_from_slice(&js[i + 1..]);
                    let t = self.index(mi, &nj, xi);
                    out[t] = &out[t] + &(&sign(i) * c);
                }
            }
        }
        let mut unit_x = vec![Scalar::zero(field); self.n.dim()];
        unit_x[xi] = Scalar::one(field);
        let xv = self.n.act_left(&self.elem(js[deg - 1]), &unit_x);
        for (k, c) in xv.iter().enumerate() {
            if !c.is_zero() {
                let t = self.index(mi, &js[..deg - 1], k);
                out[t] = &out[t] + &(&sign(deg) * c);
            }
        }
        out
    }

    fn rank_d(&self, deg: usize) -> usize {
        if deg == 0 || self.dim(deg) == 0 || self.dim(deg - 1) == 0 {
            return 0;
        }
        let mut rows = Vec::with_capacity(self.dim(deg));
        let mut js = vec![0; deg];
        loop {
            for mi in 0..self.m.dim() {
                for xi in 0..self.n.dim() {
                    rows.push(self.boundary(mi, &js, xi));
                }
            }
            // odometer over Rbar indices
            let mut p = deg;
            loop {
                if p == 0 {
                    return rank(rows);
                }
                p -= 1;
                js[p] += 1;
                if js[p] < self.rbar() {
                    break;
                }
                js[p] = 0;
            }
        }
    }
}

/// `dim Tor_i^R(M, N)` for `i = 0..=i_max`.
pub fn bar_tor(m: &FdModule, n: &Bimodule, i_max: usize) -> Vec<usize> {
    let alg: &Algebra = m.algebra();
    let u = alg.unit();
    let pivot = (0..alg.dim()).find(|&j| !u[j].is_zero()).expect("unit is nonzero");
    let bar = Bar {
        alg,
        m,
        n,
        kept: (0..alg.dim()).filter(|&j| j != pivot).collect(),
        pivot,
    };
    let ranks: Vec<usize> = (0..=i_max + 1).map(|k| bar.rank_d(k)).collect();
    (0..=i_max).map(|i| bar.dim(i) - ranks[i] - ranks[i + 1]).collect()
}

/// `dim S (x)_R S` for `f: R -> S`, as the coequalizer of
/// `S (x) R (x) S => S (x) S` over the ground field.
pub fn coequalizer_dim(f: &homepi::algebra::RingMap) -> usize {
    let s = f.target();
    let field = s.field();
    let d = s.dim();
    let mut rows = Vec::new();
    for a in f.images() {
        for p in 0..d {
            for q in 0..d {
                let left = s.mul(&s.basis_elem(p), a);
                let right = s.mul(a, &s.basis_elem(q));
                let mut row = vec![Scalar::zero(field); d * d];
                for (k, c) in left.iter().enumerate() {
                    row[k * d + q] = &row[k * d + q] + c;
                }
                for (k, c) in right.iter().enumerate() {
                    row[p * d + k] = &row[p * d + k] - c;
                }
                rows.push(row);
            }
        }
    }
    d * d - rank(rows)
}
