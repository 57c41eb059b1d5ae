//! Representations of an acyclic quiver over an exact field.
//!
//! Hom and Ext¹ both come from the map
//! `δ : ⊕_v Hom(M_v, N_v) → ⊕_a Hom(M_s(a), N_t(a))`, `δ(φ)_a = φ_t M_a − N_a φ_s`:
//! Hom is its kernel and, the path algebra being hereditary, Ext¹ is its
//! cokernel. Ext classes are stored as cocycles in the target of δ.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::combinatorics::Quiver;
use crate::field::Field;
use crate::laurent::IntVector;
use crate::linalg::{self, Kernel, Matrix, Quotient};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("quiver has an oriented cycle")]
    Cyclic,
    #[error("representation does not fit the quiver: {0}")]
    Shape(String),
    #[error("module has a projective summand with dimension vector {0}")]
    ProjectiveSummand(IntVector),
    #[error("module has an injective summand with dimension vector {0}")]
    InjectiveSummand(IntVector),
    #[error("not a morphism of representations")]
    NotMorphism,
    #[error("bad serialized representation: {0}")]
    Decode(String),
}

/// A representation: one vector space per vertex, one matrix per arrow.
///
/// `maps[a]` has shape `dims[t(a)] × dims[s(a)]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Rep<E> {
    pub dims: Vec<usize>,
    pub maps: Vec<Matrix<E>>,
}

impl<E: Clone> Rep<E> {
    pub fn dim_vector(&self) -> IntVector {
        IntVector(self.dims.iter().map(|&d| d as i64).collect())
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }
}

/// A morphism of representations: one matrix per vertex, `N_v × M_v`.
pub type Morphism<E> = Vec<Matrix<E>>;

/// Offsets of the per-arrow blocks of a cocycle for the pair `(M, N)`.
#[derive(Clone, Debug)]
struct CocycleLayout {
    offsets: Vec<usize>,
    total: usize,
}

#[derive(Clone, Debug)]
pub struct HomSpace<E> {
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub basis: Vec<Morphism<E>>,
    kernel: Kernel<E>,
}

impl<E: Clone> HomSpace<E> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a morphism in [`HomSpace::basis`].
    pub fn coords(&self, phi: &Morphism<E>) -> Vec<E> {
        self.kernel.coords(&flatten(phi))
    }
}

#[derive(Clone, Debug)]
pub struct ExtSpace<E> {
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    quotient: Quotient<E>,
}

impl<E: Clone> ExtSpace<E> {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    /// Cocycle representing the `i`-th basis class.
    pub fn representative<K: Field<Elem = E>>(&self, k: &K, i: usize) -> Vec<E> {
        self.quotient.representative(k, i)
    }

    pub fn cocycle<K: Field<Elem = E>>(&self, k: &K, coords: &[E]) -> Vec<E> {
        let mut v = vec![k.zero(); self.quotient.ambient];
        for (&c, x) in self.quotient.complement.iter().zip(coords) {
            v[c] = x.clone();
        }
        v
    }

    pub fn coords<K: Field<Elem = E>>(&self, k: &K, cocycle: &[E]) -> Vec<E> {
        self.quotient.coords(k, cocycle)
    }
}

/// Indecomposable projective, injective and simple modules at every vertex.
#[derive(Clone, Debug)]
pub struct StandardModules<E> {
    pub projective: Vec<Rep<E>>,
    pub injective: Vec<Rep<E>>,
    pub simple: Vec<Rep<E>>,
}

/// The path algebra `kQ` of an acyclic quiver, with its paths enumerated.
#[derive(Clone, Debug)]
pub struct PathAlgebra<K: Field> {
    k: K,
    quiver: Quiver,
    arrows: Vec<(usize, usize)>,
    /// `paths[i][v]`: paths from `i` to `v` as arrow sequences, shortest first.
    paths: Vec<Vec<Vec<Vec<usize>>>>,
    standard: StandardModules<K::Elem>,
}

impl<K: Field> PathAlgebra<K> {
    pub fn new(k: K, quiver: &Quiver) -> Result<Self, RepError> {
        let order = quiver.topological_order().ok_or(RepError::Cyclic)?;
        let mut arrows = Vec::new();
        for (i, j, m) in quiver.arrows() {
            for _ in 0..m {
                arrows.push((i, j));
            }
        }
        let n = quiver.n();
        let mut paths = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            paths[i][i].push(Vec::new());
            for &v in &order {
                let here = paths[i][v].clone();
                for (a, &(s, t)) in arrows.iter().enumerate() {
                    if s == v {
                        for p in &here {
                            let mut q = p.clone();
                            q.push(a);
                            paths[i][t].push(q);
                        }
                    }
                }
            }
            for v in 0..n {
                paths[i][v].sort_by(|p, q| p.len().cmp(&q.len()).then_with(|| p.cmp(q)));
            }
        }
        let mut alg = PathAlgebra {
            k,
            quiver: quiver.clone(),
            arrows,
            paths,
            standard: StandardModules { projective: vec![], injective: vec![], simple: vec![] },
        };
        alg.standard = StandardModules {
            projective: (0..n).map(|i| alg.build_projective(i)).collect(),
            injective: (0..n).map(|i| alg.build_injective(i)).collect(),
            simple: (0..n).map(|i| alg.build_simple(i)).collect(),
        };
        Ok(alg)
    }

    pub fn field(&self) -> &K {
        &self.k
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn n(&self) -> usize {
        self.quiver.n()
    }

    /// Arrows with multiplicities expanded, `(source, target)`.
    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn paths(&self, from: usize, to: usize) -> &[Vec<usize>] {
        &self.paths[from][to]
    }

    pub fn dim(&self) -> usize {
        self.paths.iter().flatten().map(|p| p.len()).sum()
    }

    pub fn rep(&self, dims: Vec<usize>, maps: Vec<Matrix<K::Elem>>) -> Result<Rep<K::Elem>, RepError> {
        let r = Rep { dims, maps };
        self.check(&r)?;
        Ok(r)
    }

    /// Builds a representation from integer matrices.
    pub fn rep_from_ints(&self, dims: &[usize], maps: &[Vec<Vec<i64>>]) -> Result<Rep<K::Elem>, RepError> {
        let k = &self.k;
        let ms = maps
            .iter()
            .zip(&self.arrows)
            .map(|(rows, &(s, t))| {
                Matrix::from_fn(dims[t], dims[s], |r, c| k.from_i64(rows.get(r).and_then(|x| x.get(c)).copied().unwrap_or(0)))
            })
            .collect();
        if maps.len() != self.arrows.len() {
            return Err(RepError::Shape(format!("expected {} arrow maps, got {}", self.arrows.len(), maps.len())));
        }
        self.rep(dims.to_vec(), ms)
    }

    pub fn check(&self, m: &Rep<K::Elem>) -> Result<(), RepError> {
        if m.dims.len() != self.n() {
            return Err(RepError::Shape(format!("{} vertices, quiver has {}", m.dims.len(), self.n())));
        }
        if m.maps.len() != self.arrows.len() {
            return Err(RepError::Shape(format!("{} arrow maps, quiver has {}", m.maps.len(), self.arrows.len())));
        }
        for (a, (&(s, t), mat)) in self.arrows.iter().zip(&m.maps).enumerate() {
            if mat.shape() != (m.dims[t], m.dims[s]) {
                return Err(RepError::Shape(format!(
                    "arrow {} has shape {:?}, expected {:?}",
                    a + 1,
                    mat.shape(),
                    (m.dims[t], m.dims[s])
                )));
            }
        }
        Ok(())
    }

    pub fn zero_rep(&self) -> Rep<K::Elem> {
        self.rep_with_dims(&vec![0; self.n()])
    }

    fn rep_with_dims(&self, dims: &[usize]) -> Rep<K::Elem> {
        let maps = self.arrows.iter().map(|&(s, t)| linalg::zeros(&self.k, dims[t], dims[s])).collect();
        Rep { dims: dims.to_vec(), maps }
    }

    pub fn standard_modules(&self) -> &StandardModules<K::Elem> {
        &self.standard
    }

    pub fn projective(&self, i: usize) -> &Rep<K::Elem> {
        &self.standard.projective[i]
    }

    pub fn injective(&self, i: usize) -> &Rep<K::Elem> {
        &self.standard.injective[i]
    }

    pub fn simple(&self, i: usize) -> &Rep<K::Elem> {
        &self.standard.simple[i]
    }

    fn build_simple(&self, i: usize) -> Rep<K::Elem> {
        let mut d = vec![0; self.n()];
        d[i] = 1;
        self.rep_with_dims(&d)
    }

    /// Basis of `(P_i)_v` is the paths `i ⇝ v`; arrows act by appending.
    fn build_projective(&self, i: usize) -> Rep<K::Elem> {
        let dims: Vec<usize> = (0..self.n()).map(|v| self.paths[i][v].len()).collect();
        let mut r = self.rep_with_dims(&dims);
        for (a, &(s, t)) in self.arrows.iter().enumerate() {
            for (c, p) in self.paths[i][s].iter().enumerate() {
                let mut q = p.clone();
                q.push(a);
                let row = self.paths[i][t].iter().position(|x| *x == q).expect("path");
                r.maps[a].set(row, c, self.k.one());
            }
        }
        r
    }

    /// Basis of `(I_j)_v` is dual to the paths `v ⇝ j`; arrow `b` sends `p*`
    /// to `q*` when `p = b·q`.
    fn build_injective(&self, j: usize) -> Rep<K::Elem> {
        let dims: Vec<usize> = (0..self.n()).map(|v| self.paths[v][j].len()).collect();
        let mut r = self.rep_with_dims(&dims);
        for (b, &(s, t)) in self.arrows.iter().enumerate() {
            for (c, p) in self.paths[s][j].iter().enumerate() {
                if p.first() == Some(&b) {
                    let q = &p[1..];
                    let row = self.paths[t][j].iter().position(|x| x.as_slice() == q).expect("path");
                    r.maps[b].set(row, c, self.k.one());
                }
            }
        }
        r
    }

    /// `ρ_a : P_j → P_i` for `a : i → j`, prefixing paths with `a`.
    pub fn projective_arrow_map(&self, a: usize) -> Morphism<K::Elem> {
        let (i, j) = self.arrows[a];
        (0..self.n())
            .map(|v| {
                let src = &self.paths[j][v];
                let tgt = &self.paths[i][v];
                let mut m = linalg::zeros(&self.k, tgt.len(), src.len());
                for (c, p) in src.iter().enumerate() {
                    let mut q = vec![a];
                    q.extend_from_slice(p);
                    let row = tgt.iter().position(|x| *x == q).expect("path");
                    m.set(row, c, self.k.one());
                }
                m
            })
            .collect()
    }

    /// `ι_a : I_j → I_i` for `a : i → j`, sending `p*` to `r*` when `p = r·a`.
    pub fn injective_arrow_map(&self, a: usize) -> Morphism<K::Elem> {
        let (i, j) = self.arrows[a];
        (0..self.n())
            .map(|v| {
                let src = &self.paths[v][j];
                let tgt = &self.paths[v][i];
                let mut m = linalg::zeros(&self.k, tgt.len(), src.len());
                for (c, p) in src.iter().enumerate() {
                    if p.last() == Some(&a) {
                        let r = &p[..p.len() - 1];
                        let row = tgt.iter().position(|x| x.as_slice() == r).expect("path");
                        m.set(row, c, self.k.one());
                    }
                }
                m
            })
            .collect()
    }

    pub fn direct_sum(&self, parts: &[&Rep<K::Elem>]) -> Rep<K::Elem> {
        let n = self.n();
        let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
        let mut out = self.rep_with_dims(&dims);
        let mut off = vec![0usize; n];
        for p in parts {
            for (a, &(s, t)) in self.arrows.iter().enumerate() {
                for r in 0..p.dims[t] {
                    for c in 0..p.dims[s] {
                        out.maps[a].set(off[t] + r, off[s] + c, p.maps[a].get(r, c).clone());
                    }
                }
            }
            for v in 0..n {
                off[v] += p.dims[v];
            }
        }
        out
    }

    fn layout(&self, m: &[usize], n: &[usize]) -> CocycleLayout {
        let mut offsets = Vec::with_capacity(self.arrows.len());
        let mut total = 0;
        for &(s, t) in &self.arrows {
            offsets.push(total);
            total += n[t] * m[s];
        }
        CocycleLayout { offsets, total }
    }

    /// Matrix of `δ` for the pair `(M, N)`.
    fn delta(&self, m: &Rep<K::Elem>, n: &Rep<K::Elem>) -> Matrix<K::Elem> {
        let k = &self.k;
        let nv = self.n();
        let mut voff = vec![0usize; nv + 1];
        for v in 0..nv {
            voff[v + 1] = voff[v] + n.dims[v] * m.dims[v];
        }
        let lay = self.layout(&m.dims, &n.dims);
        let mut d = linalg::zeros(k, lay.total, voff[nv]);
        for (a, &(s, t)) in self.arrows.iter().enumerate() {
            let ma = &m.maps[a];
            let na = &n.maps[a];
            let (ms, nt) = (m.dims[s], n.dims[t]);
            for r in 0..nt {
                for c in 0..ms {
                    let row = lay.offsets[a] + r * ms + c;
                    // (φ_t M_a)[r][c] = Σ_x φ_t[r][x] M_a[x][c]
                    for x in 0..m.dims[t] {
                        let e = ma.get(x, c);
                        if !k.is_zero(e) {
                            let col = voff[t] + r * m.dims[t] + x;
                            let cur = d.get(row, col).clone();
                            d.set(row, col, k.add(&cur, e));
                        }
                    }
                    // −(N_a φ_s)[r][c] = −Σ_y N_a[r][y] φ_s[y][c]
                    for y in 0..n.dims[s] {
                        let e = na.get(r, y);
                        if !k.is_zero(e) {
                            let col = voff[s] + y * ms + c;
                            let cur = d.get(row, col).clone();
                            d.set(row, col, k.sub(&cur, e));
                        }
                    }
                }
            }
        }
        d
    }

    pub fn hom(&self, m: &Rep<K::Elem>, n: &Rep<K::Elem>) -> HomSpace<K::Elem> {
        let ker = linalg::kernel(&self.k, &self.delta(m, n));
        let basis = ker.basis.iter().map(|v| unflatten(v, &m.dims, &n.dims)).collect();
        HomSpace { source: m.dims.clone(), target: n.dims.clone(), basis, kernel: ker }
    }

    pub fn hom_dim(&self, m: &Rep<K::Elem>, n: &Rep<K::Elem>) -> usize {
        let d = self.delta(m, n);
        d.cols() - linalg::rank(&self.k, &d)
    }

    pub fn ext1(&self, m: &Rep<K::Elem>, n: &Rep<K::Elem>) -> ExtSpace<K::Elem> {
        let q = linalg::cokernel(&self.k, &self.delta(m, n));
        ExtSpace { source: m.dims.clone(), target: n.dims.clone(), quotient: q }
    }

    pub fn ext1_dim(&self, m: &Rep<K::Elem>, n: &Rep<K::Elem>) -> usize {
        let d = self.delta(m, n);
        d.rows() - linalg::rank(&self.k, &d)
    }

    pub fn is_morphism(&self, m: &Rep<K::Elem>, n: &Rep<K::Elem>, phi: &Morphism<K::Elem>) -> bool {
        let k = &self.k;
        if phi.len() != self.n() || (0..self.n()).any(|v| phi[v].shape() != (n.dims[v], m.dims[v])) {
            return false;
        }
        self.arrows.iter().enumerate().all(|(a, &(s, t))| {
            linalg::mul(k, &phi[t], &m.maps[a]) == linalg::mul(k, &n.maps[a], &phi[s])
        })
    }

    pub fn compose(&self, g: &Morphism<K::Elem>, f: &Morphism<K::Elem>) -> Morphism<K::Elem> {
        g.iter().zip(f).map(|(gv, fv)| linalg::mul(&self.k, gv, fv)).collect()
    }

    pub fn identity_morphism(&self, m: &Rep<K::Elem>) -> Morphism<K::Elem> {
        m.dims.iter().map(|&d| linalg::identity(&self.k, d)).collect()
    }

    pub fn zero_morphism(&self, m: &[usize], n: &[usize]) -> Morphism<K::Elem> {
        (0..self.n()).map(|v| linalg::zeros(&self.k, n[v], m[v])).collect()
    }

    pub fn combine(&self, basis: &[Morphism<K::Elem>], coeffs: &[K::Elem], m: &[usize], n: &[usize]) -> Morphism<K::Elem> {
        let k = &self.k;
        let mut out = self.zero_morphism(m, n);
        for (b, c) in basis.iter().zip(coeffs) {
            if k.is_zero(c) {
                continue;
            }
            for v in 0..self.n() {
                out[v] = linalg::add(k, &out[v], &linalg::scale(k, c, &b[v]));
            }
        }
        out
    }

    /// Pulls a cocycle for `(X, N)` back along `g : Y → X`, giving one for `(Y, N)`.
    pub fn pullback_cocycle(&self, eta: &[K::Elem], g: &Morphism<K::Elem>, y: &[usize], x: &[usize], n: &[usize]) -> Vec<K::Elem> {
        let k = &self.k;
        let lx = self.layout(x, n);
        let ly = self.layout(y, n);
        let mut out = vec![k.zero(); ly.total];
        for (a, &(s, t)) in self.arrows.iter().enumerate() {
            let block = Matrix::from_rows(n[t], x[s], eta[lx.offsets[a]..lx.offsets[a] + n[t] * x[s]].to_vec());
            let res = linalg::mul(k, &block, &g[s]);
            out[ly.offsets[a]..ly.offsets[a] + n[t] * y[s]].clone_from_slice(res.data());
        }
        out
    }

    /// Pushes a cocycle for `(M, N)` forward along `f : N → N'`.
    pub fn pushforward_cocycle(&self, eta: &[K::Elem], f: &Morphism<K::Elem>, m: &[usize], n: &[usize], n2: &[usize]) -> Vec<K::Elem> {
        let k = &self.k;
        let l1 = self.layout(m, n);
        let l2 = self.layout(m, n2);
        let mut out = vec![k.zero(); l2.total];
        for (a, &(s, t)) in self.arrows.iter().enumerate() {
            let block = Matrix::from_rows(n[t], m[s], eta[l1.offsets[a]..l1.offsets[a] + n[t] * m[s]].to_vec());
            let res = linalg::mul(k, &f[t], &block);
            out[l2.offsets[a]..l2.offsets[a] + n2[t] * m[s]].clone_from_slice(res.data());
        }
        out
    }

    /// Matrix of `Ext¹(M, f) : Ext¹(M, N) → Ext¹(M, N')` in the spaces' bases.
    pub fn ext_push_matrix(
        &self,
        from: &ExtSpace<K::Elem>,
        to: &ExtSpace<K::Elem>,
        f: &Morphism<K::Elem>,
    ) -> Matrix<K::Elem> {
        let k = &self.k;
        let cols: Vec<Vec<K::Elem>> = (0..from.dim())
            .map(|i| {
                let pushed = self.pushforward_cocycle(&from.representative(k, i), f, &from.source, &from.target, &to.target);
                to.coords(k, &pushed)
            })
            .collect();
        Matrix::from_columns(to.dim(), &cols, k.zero())
    }

    /// Matrix of `Ext¹(g, N) : Ext¹(X, N) → Ext¹(Y, N)` for `g : Y → X`.
    pub fn ext_pull_matrix(
        &self,
        from: &ExtSpace<K::Elem>,
        to: &ExtSpace<K::Elem>,
        g: &Morphism<K::Elem>,
    ) -> Matrix<K::Elem> {
        let k = &self.k;
        let cols: Vec<Vec<K::Elem>> = (0..from.dim())
            .map(|i| {
                let pulled = self.pullback_cocycle(&from.representative(k, i), g, &to.source, &from.source, &from.target);
                to.coords(k, &pulled)
            })
            .collect();
        Matrix::from_columns(to.dim(), &cols, k.zero())
    }

    /// `M` has no projective summand iff `Hom(M, kQ) = 0`.
    pub fn projective_free(&self, m: &Rep<K::Elem>) -> bool {
        (0..self.n()).all(|i| self.hom_dim(m, self.projective(i)) == 0)
    }

    /// `M` has no injective summand iff `Hom(D kQ, M) = 0`.
    pub fn injective_free(&self, m: &Rep<K::Elem>) -> bool {
        (0..self.n()).all(|i| self.hom_dim(self.injective(i), m) == 0)
    }

    /// `τM = D Ext¹(M, kQ)`, with `(τM)_j = D Ext¹(M, P_j)`.
    pub fn tau(&self, m: &Rep<K::Elem>) -> Result<Rep<K::Elem>, RepError> {
        if !self.projective_free(m) {
            let bad = self
                .decompose(m)
                .into_iter()
                .find(|s| !self.projective_free(s))
                .map(|s| s.dim_vector())
                .unwrap_or_else(|| m.dim_vector());
            return Err(RepError::ProjectiveSummand(bad));
        }
        Ok(self.tau_unchecked(m))
    }

    /// τ without the domain check; projective summands contribute zero.
    pub fn tau_unchecked(&self, m: &Rep<K::Elem>) -> Rep<K::Elem> {
        let spaces: Vec<ExtSpace<K::Elem>> = (0..self.n()).map(|j| self.ext1(m, self.projective(j))).collect();
        let dims: Vec<usize> = spaces.iter().map(|e| e.dim()).collect();
        let maps = self
            .arrows
            .iter()
            .enumerate()
            .map(|(a, &(i, j))| {
                let rho = self.projective_arrow_map(a);
                self.ext_push_matrix(&spaces[j], &spaces[i], &rho).transpose()
            })
            .collect();
        Rep { dims, maps }
    }

    /// `(τ⁻¹N)_j = Ext¹(I_j, N)`; arrows act by pullback along `ι_a`.
    pub fn tau_inv(&self, n: &Rep<K::Elem>) -> Result<Rep<K::Elem>, RepError> {
        if !self.injective_free(n) {
            let bad = self
                .decompose(n)
                .into_iter()
                .find(|s| !self.injective_free(s))
                .map(|s| s.dim_vector())
                .unwrap_or_else(|| n.dim_vector());
            return Err(RepError::InjectiveSummand(bad));
        }
        Ok(self.tau_inv_unchecked(n))
    }

    pub fn tau_inv_unchecked(&self, n: &Rep<K::Elem>) -> Rep<K::Elem> {
        let spaces = self.tau_inv_spaces(n);
        let dims: Vec<usize> = spaces.iter().map(|e| e.dim()).collect();
        let maps = self
            .arrows
            .iter()
            .enumerate()
            .map(|(a, &(i, j))| {
                let iota = self.injective_arrow_map(a);
                self.ext_pull_matrix(&spaces[i], &spaces[j], &iota)
            })
            .collect();
        Rep { dims, maps }
    }

    /// The spaces `Ext¹(I_j, N)` whose bases define the basis of `τ⁻¹N`.
    pub fn tau_inv_spaces(&self, n: &Rep<K::Elem>) -> Vec<ExtSpace<K::Elem>> {
        (0..self.n()).map(|j| self.ext1(self.injective(j), n)).collect()
    }

    /// `τ⁻¹(g) : τ⁻¹N → τ⁻¹N'` for `g : N → N'`, by pushing forward.
    pub fn tau_inv_morphism(&self, g: &Morphism<K::Elem>, n: &Rep<K::Elem>, n2: &Rep<K::Elem>) -> Morphism<K::Elem> {
        let s1 = self.tau_inv_spaces(n);
        let s2 = self.tau_inv_spaces(n2);
        s1.iter().zip(&s2).map(|(a, b)| self.ext_push_matrix(a, b, g)).collect()
    }

    pub fn is_rigid(&self, m: &Rep<K::Elem>) -> bool {
        self.ext1_dim(m, m) == 0
    }

    pub fn is_indecomposable(&self, m: &Rep<K::Elem>) -> bool {
        !m.is_zero() && self.decompose(m).len() == 1
    }

    /// Euler form `⟨a, b⟩ = Σ a_i b_i − Σ_{arrows i→j} a_i b_j`.
    pub fn euler_form(&self, a: &IntVector, b: &IntVector) -> i64 {
        let mut s: i64 = a.0.iter().zip(&b.0).map(|(x, y)| x * y).sum();
        for &(i, j) in &self.arrows {
            s -= a.0[i] * b.0[j];
        }
        s
    }

    /// Iso test for representations: equal dimension vectors and an invertible
    /// element in a random combination of a Hom basis. A `false` is
    /// probabilistic for modules with many non-invertible homomorphisms.
    pub fn is_isomorphic(&self, m: &Rep<K::Elem>, n: &Rep<K::Elem>, seed: u64) -> bool {
        if m.dims != n.dims {
            return false;
        }
        if m.is_zero() {
            return true;
        }
        let h = self.hom(m, n);
        if h.dim() == 0 {
            return false;
        }
        let k = &self.k;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for attempt in 0..12 {
            let coeffs: Vec<K::Elem> = (0..h.dim())
                .map(|i| if attempt == 0 { k.from_i64(i as i64 + 1) } else { k.from_i64(rng.gen_range(-7..=7)) })
                .collect();
            let phi = self.combine(&h.basis, &coeffs, &m.dims, &n.dims);
            if phi.iter().all(|b| linalg::rank(k, b) == b.rows()) {
                return true;
            }
        }
        false
    }

    /// Krull-Schmidt decomposition by splitting along Fitting decompositions of
    /// non-nilpotent, non-invertible endomorphisms. When no such element turns
    /// up among the candidates the module is returned whole.
    pub fn decompose(&self, m: &Rep<K::Elem>) -> Vec<Rep<K::Elem>> {
        if m.is_zero() {
            return Vec::new();
        }
        let end = self.hom(m, m);
        if end.dim() == 1 {
            return vec![m.clone()];
        }
        if self.k.characteristic() == 0 && self.semisimple_quotient_dim(&end) == 1 {
            return vec![m.clone()];
        }
        for phi in self.split_candidates(m, &end) {
            if let Some((a, b)) = self.fitting_split(m, &phi) {
                let mut out = self.decompose(&a);
                out.extend(self.decompose(&b));
                return out;
            }
        }
        vec![m.clone()]
    }

    /// `dim End/rad` in characteristic zero: rank of the trace form.
    fn semisimple_quotient_dim(&self, end: &HomSpace<K::Elem>) -> usize {
        let k = &self.k;
        let r = end.dim();
        let g = Matrix::from_fn(r, r, |i, j| {
            let mut acc = k.zero();
            for (x, y) in end.basis[i].iter().zip(&end.basis[j]) {
                let p = linalg::mul(k, x, y);
                for d in 0..p.rows() {
                    acc = k.add(&acc, p.get(d, d));
                }
            }
            acc
        });
        linalg::rank(k, &g)
    }

    fn split_candidates(&self, m: &Rep<K::Elem>, end: &HomSpace<K::Elem>) -> Vec<Morphism<K::Elem>> {
        let k = &self.k;
        let mut base: Vec<Morphism<K::Elem>> = end.basis.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..4 {
            let coeffs: Vec<K::Elem> = (0..end.dim()).map(|_| k.from_i64(rng.gen_range(-5..=5))).collect();
            base.push(self.combine(&end.basis, &coeffs, &m.dims, &m.dims));
        }
        let mut out = Vec::new();
        for phi in base {
            let eig = self.eigenvalue_candidates(&phi);
            out.push(phi.clone());
            for lam in eig {
                let shifted: Morphism<K::Elem> = phi
                    .iter()
                    .map(|b| linalg::sub(k, b, &linalg::scale(k, &lam, &linalg::identity(k, b.rows()))))
                    .collect();
                out.push(shifted);
            }
        }
        out
    }

    /// Eigenvalues of the vertex blocks that lie in the base field.
    fn eigenvalue_candidates(&self, phi: &Morphism<K::Elem>) -> Vec<K::Elem> {
        let k = &self.k;
        let mut out: Vec<K::Elem> = Vec::new();
        let push = |x: K::Elem, out: &mut Vec<K::Elem>| {
            if !out.contains(&x) {
                out.push(x);
            }
        };
        if let Some(elems) = k.elements() {
            if elems.len() <= 64 {
                for b in phi {
                    for lam in &elems {
                        let shifted = linalg::sub(k, b, &linalg::scale(k, lam, &linalg::identity(k, b.rows())));
                        if b.rows() > 0 && linalg::rank(k, &shifted) < b.rows() {
                            push(lam.clone(), &mut out);
                        }
                    }
                }
            }
            return out;
        }
        for b in phi {
            if b.rows() == 0 {
                continue;
            }
            let rb: Matrix<BigRational> = b.map(|x| {
                k.to_rational(x).expect("characteristic zero field maps to Q")
            });
            for r in rational_eigenvalues(&rb) {
                if let Some(e) = k.from_rational(&r) {
                    push(e, &mut out);
                }
            }
        }
        out
    }

    /// Splits `M = ker φ^N ⊕ im φ^N` when both parts are nonzero.
    fn fitting_split(&self, m: &Rep<K::Elem>, phi: &Morphism<K::Elem>) -> Option<(Rep<K::Elem>, Rep<K::Elem>)> {
        let k = &self.k;
        if !self.is_morphism(m, m, phi) {
            return None;
        }
        let total = m.total_dim();
        let mut pw: Morphism<K::Elem> = phi.clone();
        let mut e = 1;
        while e < total {
            pw = self.compose(&pw, &pw);
            e *= 2;
        }
        let im: Vec<Vec<Vec<K::Elem>>> = pw.iter().map(|b| linalg::column_space(k, b)).collect();
        let ker: Vec<Vec<Vec<K::Elem>>> = pw.iter().map(|b| linalg::kernel(k, b).basis).collect();
        let im_dim: usize = im.iter().map(|v| v.len()).sum();
        let ker_dim: usize = ker.iter().map(|v| v.len()).sum();
        if im_dim == 0 || ker_dim == 0 {
            return None;
        }
        Some((self.restrict(m, &im), self.restrict(m, &ker)))
    }

    /// Restriction of `M` to a subrepresentation given by per-vertex bases.
    pub fn restrict(&self, m: &Rep<K::Elem>, bases: &[Vec<Vec<K::Elem>>]) -> Rep<K::Elem> {
        let k = &self.k;
        let dims: Vec<usize> = bases.iter().map(|b| b.len()).collect();
        let bm: Vec<Matrix<K::Elem>> =
            bases.iter().zip(&m.dims).map(|(b, &d)| Matrix::from_columns(d, b, k.zero())).collect();
        let maps = self
            .arrows
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let img = linalg::mul(k, &m.maps[a], &bm[s]);
                let cols: Vec<Vec<K::Elem>> = (0..dims[s])
                    .map(|c| linalg::solve(k, &bm[t], &img.column(c)).expect("subspace is stable"))
                    .collect();
                Matrix::from_columns(dims[t], &cols, k.zero())
            })
            .collect();
        Rep { dims, maps }
    }

    /// A generic representation with the given dimension vector: entries drawn
    /// uniformly from `-range..=range`.
    pub fn random_rep(&self, dims: &[usize], rng: &mut impl Rng, range: i64) -> Rep<K::Elem> {
        let k = &self.k;
        let maps = self
            .arrows
            .iter()
            .map(|&(s, t)| Matrix::from_fn(dims[t], dims[s], |_, _| k.from_i64(rng.gen_range(-range..=range))))
            .collect();
        Rep { dims: dims.to_vec(), maps }
    }

    /// Re-reads a representation defined over another field through integers.
    /// Entries must be integral (or reduce to integers modulo `p`).
    pub fn transport<L: Field>(&self, other: &L, m: &Rep<L::Elem>) -> Option<Rep<K::Elem>> {
        let mut maps = Vec::with_capacity(m.maps.len());
        for mat in &m.maps {
            let mut data = Vec::with_capacity(mat.rows() * mat.cols());
            for x in mat.data() {
                data.push(self.k.from_rational(&other.to_rational(x)?)?);
            }
            maps.push(Matrix::from_rows(mat.rows(), mat.cols(), data));
        }
        Some(Rep { dims: m.dims.clone(), maps })
    }

    pub fn to_doc(&self, m: &Rep<K::Elem>) -> RepDoc {
        RepDoc {
            field: self.k.tag().to_string(),
            dims: m.dims.clone(),
            arrows: self
                .arrows
                .iter()
                .zip(&m.maps)
                .map(|(&(s, t), mat)| ArrowDoc {
                    source: s + 1,
                    target: t + 1,
                    rows: (0..mat.rows()).map(|r| mat.row(r).iter().map(|x| self.k.render(x)).collect()).collect(),
                })
                .collect(),
        }
    }

    pub fn from_doc(&self, doc: &RepDoc) -> Result<Rep<K::Elem>, RepError> {
        if doc.field != self.k.tag().to_string() {
            return Err(RepError::Decode(format!("field {} does not match {}", doc.field, self.k.tag())));
        }
        if doc.arrows.len() != self.arrows.len() {
            return Err(RepError::Decode("arrow count".into()));
        }
        let mut maps = Vec::new();
        for (ad, &(s, t)) in doc.arrows.iter().zip(&self.arrows) {
            if (ad.source, ad.target) != (s + 1, t + 1) {
                return Err(RepError::Decode(format!("arrow {}->{} out of order", ad.source, ad.target)));
            }
            let rows = doc.dims.get(t).copied().unwrap_or(0);
            let cols = doc.dims.get(s).copied().unwrap_or(0);
            let mut data = Vec::new();
            for r in &ad.rows {
                for x in r {
                    data.push(crate::field::parse_elem(&self.k, x).ok_or_else(|| RepError::Decode(format!("entry `{x}`")))?);
                }
            }
            if data.len() != rows * cols {
                return Err(RepError::Decode(format!("arrow {}->{} has wrong shape", ad.source, ad.target)));
            }
            maps.push(Matrix::from_rows(rows, cols, data));
        }
        self.rep(doc.dims.clone(), maps)
    }
}

/// JSON form of a representation: row-major matrices over a field tag.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepDoc {
    pub field: String,
    pub dims: Vec<usize>,
    pub arrows: Vec<ArrowDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowDoc {
    pub source: usize,
    pub target: usize,
    pub rows: Vec<Vec<String>>,
}

fn flatten<E: Clone>(phi: &Morphism<E>) -> Vec<E> {
    phi.iter().flat_map(|b| b.data().iter().cloned()).collect()
}

fn unflatten<E: Clone>(v: &[E], m: &[usize], n: &[usize]) -> Morphism<E> {
    let mut off = 0;
    m.iter()
        .zip(n)
        .map(|(&mv, &nv)| {
            let b = Matrix::from_rows(nv, mv, v[off..off + nv * mv].to_vec());
            off += nv * mv;
            b
        })
        .collect()
}

/// Rational roots of the characteristic polynomial of a square rational matrix.
pub fn rational_eigenvalues(m: &Matrix<BigRational>) -> Vec<BigRational> {
    let coeffs = char_poly(m);
    // clear denominators
    let lcm = coeffs.iter().fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
    let mut ints: Vec<BigInt> = coeffs.iter().map(|c| (c * BigRational::from(lcm.clone())).to_integer()).collect();
    let mut roots = Vec::new();
    // strip zero roots: coefficients are lowest degree first
    while ints.len() > 1 && ints[0].is_zero() {
        ints.remove(0);
        if !roots.contains(&BigRational::zero()) {
            roots.push(BigRational::zero());
        }
    }
    if ints.len() <= 1 {
        return roots;
    }
    let a0 = ints[0].abs();
    let an = ints.last().unwrap().abs();
    let limit = BigInt::from(100_000);
    if a0 > limit || an > limit {
        return roots;
    }
    let divisors = |x: &BigInt| -> Vec<BigInt> {
        let mut d = Vec::new();
        let mut i = BigInt::one();
        while &i <= x {
            if (x % &i).is_zero() {
                d.push(i.clone());
            }
            i += 1;
        }
        d
    };
    for p in divisors(&a0) {
        for q in divisors(&an) {
            for sign in [1, -1] {
                let r = BigRational::new(&p * sign, q.clone());
                if roots.contains(&r) {
                    continue;
                }
                let mut acc = BigRational::zero();
                for c in ints.iter().rev() {
                    acc = acc * &r + BigRational::from(c.clone());
                }
                if acc.is_zero() {
                    roots.push(r);
                }
            }
        }
    }
    roots
}

/// Characteristic polynomial `det(λI − M)` by Faddeev–LeVerrier; lowest degree first.
fn char_poly(m: &Matrix<BigRational>) -> Vec<BigRational> {
    let k = crate::field::Rationals;
    let n = m.rows();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut mk = linalg::zeros(&k, n, n);
    for step in 1..=n {
        let prev = coeffs[n - step + 1].clone();
        let shifted = linalg::add(&k, &mk, &linalg::scale(&k, &prev, &linalg::identity(&k, n)));
        mk = linalg::mul(&k, m, &shifted);
        let mut tr = BigRational::zero();
        for d in 0..n {
            tr += mk.get(d, d);
        }
        coeffs[n - step] = -tr / BigRational::from(BigInt::from(step));
    }
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn a2() -> PathAlgebra<Rationals> {
        PathAlgebra::new(Rationals, &Quiver::linear_a(2)).unwrap()
    }

    #[test]
    fn standard_modules_of_a2() {
        let alg = a2();
        assert_eq!(alg.projective(0).dims, vec![1, 1]);
        assert_eq!(alg.projective(1).dims, vec![0, 1]);
        assert_eq!(alg.injective(0), alg.simple(0));
        assert_eq!(alg.injective(1).dims, vec![1, 1]);
        assert_eq!(alg.dim(), 3);
    }

    #[test]
    fn hom_and_ext_in_a2() {
        let alg = a2();
        let (s1, s2, p1) = (alg.simple(0), alg.simple(1), alg.projective(0));
        assert_eq!(alg.hom_dim(s1, s1), 1);
        assert_eq!(alg.hom_dim(p1, s2), 0);
        assert_eq!(alg.ext1_dim(s1, s2), 1);
        assert_eq!(alg.ext1_dim(s2, s1), 0);
        assert_eq!(alg.ext1_dim(p1, p1), 0);
        let h = alg.hom(p1, p1);
        assert!(h.basis.iter().all(|phi| alg.is_morphism(p1, p1, phi)));
    }

    #[test]
    fn hom_into_sum_is_additive() {
        let alg = a2();
        let m = alg.projective(0);
        let (n1, n2) = (alg.simple(0), alg.injective(1));
        let sum = alg.direct_sum(&[n1, n2]);
        assert_eq!(alg.hom_dim(m, &sum), alg.hom_dim(m, n1) + alg.hom_dim(m, n2));
    }

    #[test]
    fn tau_in_a2() {
        let alg = a2();
        let t = alg.tau(alg.simple(0)).unwrap();
        assert!(alg.is_isomorphic(&t, alg.simple(1), 1));
        let back = alg.tau_inv(&t).unwrap();
        assert!(alg.is_isomorphic(&back, alg.simple(0), 1));
        assert_eq!(alg.tau(alg.projective(0)), Err(RepError::ProjectiveSummand(IntVector(vec![1, 1]))));
        assert_eq!(alg.tau_inv(alg.simple(0)), Err(RepError::InjectiveSummand(IntVector(vec![1, 0]))));
    }

    #[test]
    fn decompositions() {
        let alg = a2();
        let s1 = alg.simple(0);
        let parts = alg.decompose(&alg.direct_sum(&[s1, s1]));
        assert_eq!(parts.len(), 2);
        assert!(parts.iter().all(|p| alg.is_isomorphic(p, s1, 0)));
        let split = alg.rep_from_ints(&[1, 1], &[vec![vec![0]]]).unwrap();
        let mut dv: Vec<_> = alg.decompose(&split).iter().map(|p| p.dim_vector()).collect();
        dv.sort();
        assert_eq!(dv, vec![IntVector(vec![0, 1]), IntVector(vec![1, 0])]);
        assert!(alg.is_indecomposable(alg.projective(0)));
        assert!(alg.is_rigid(alg.projective(0)));
    }

    #[test]
    fn decomposition_over_prime_field() {
        let alg = PathAlgebra::new(PrimeField::new(3).unwrap(), &Quiver::linear_a(3)).unwrap();
        let m = alg.direct_sum(&[alg.projective(0), alg.simple(1), alg.simple(1)]);
        let mut dv: Vec<_> = alg.decompose(&m).iter().map(|p| p.dim_vector()).collect();
        dv.sort();
        assert_eq!(dv, vec![IntVector(vec![0, 1, 0]), IntVector(vec![0, 1, 0]), IntVector(vec![1, 1, 1])]);
    }

    #[test]
    fn doc_roundtrip() {
        let alg = a2();
        let p = alg.projective(0);
        let doc = alg.to_doc(p);
        assert_eq!(doc.field, "Q");
        assert_eq!(&alg.from_doc(&doc).unwrap(), p);
    }

    #[test]
    fn rational_eigenvalues_of_triangular() {
        let k = Rationals;
        let m = Matrix::from_fn(3, 3, |r, c| if r == c { k.from_i64([2, -1, 2][r]) } else if c > r { k.one() } else { k.zero() });
        let mut ev = rational_eigenvalues(&m);
        ev.sort();
        assert_eq!(ev, vec![k.from_i64(-1), k.from_i64(2)]);
    }
}
