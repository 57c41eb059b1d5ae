//! Finite-dimensional basic algebras given by structure constants, their
//! graded modules, and submodule counting over finite fields.
//!
//! A module is stored with its basis grouped by idempotent: block `v` spans
//! `e_v M`. A basis element of the algebra lying in `e_i A e_j` maps block `j`
//! into block `i`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::field::{Field, PrimeField};
use crate::laurent::IntVector;
use crate::linalg::{self, Matrix};
use crate::repkit::{PathAlgebra, Rep};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgError {
    #[error("idempotent relations fail: {0}")]
    Idempotents(String),
    #[error("multiplication is not associative on basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("radical candidate {0} is not nilpotent")]
    NotNilpotent(String),
    #[error("modules belong to different algebras")]
    Mismatch,
    #[error("action is not a module structure at basis pair ({0}, {1})")]
    NotModule(usize, usize),
    #[error("counting polynomial violated: counts {counts:?} at primes {primes:?} fit no polynomial of degree <= {degree}")]
    CountingPolynomial { primes: Vec<u64>, counts: Vec<String>, degree: usize },
    #[error("submodule enumeration exceeded {0} search nodes")]
    Budget(u64),
    #[error("field is infinite; point counting needs a prime field")]
    InfiniteField,
}

#[derive(Clone, Debug)]
pub struct FdAlgebra<K: Field> {
    k: K,
    n: usize,
    labels: Vec<String>,
    /// `block[b] = (i, j)` when basis element `b` lies in `e_i A e_j`.
    block: Vec<(usize, usize)>,
    idempotents: Vec<usize>,
    /// `products[a][b]`: coordinates of `a·b`.
    products: Vec<Vec<Vec<K::Elem>>>,
}

impl<K: Field> FdAlgebra<K> {
    pub fn new(
        k: K,
        n: usize,
        labels: Vec<String>,
        block: Vec<(usize, usize)>,
        idempotents: Vec<usize>,
        products: Vec<Vec<Vec<K::Elem>>>,
    ) -> Result<Self, AlgError> {
        let alg = FdAlgebra { k, n, labels, block, idempotents, products };
        alg.check_idempotents()?;
        Ok(alg)
    }

    /// The path algebra as a structure-constant algebra: a path `i ⇝ j` lies
    /// in `e_j A e_i` and `a·b` is "`b` then `a`", so modules are representations.
    pub fn from_path_algebra(pa: &PathAlgebra<K>) -> Self {
        let k = pa.field().clone();
        let n = pa.n();
        let mut paths: Vec<(usize, usize, Vec<usize>)> = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for p in pa.paths(i, j) {
                    paths.push((i, j, p.clone()));
                }
            }
        }
        paths.sort_by(|a, b| (a.1, a.0, a.2.len(), &a.2).cmp(&(b.1, b.0, b.2.len(), &b.2)));
        let labels = paths
            .iter()
            .map(|(i, j, p)| {
                if p.is_empty() {
                    format!("e{}", i + 1)
                } else {
                    let arrows: Vec<String> = p.iter().map(|a| format!("a{}", a + 1)).collect();
                    format!("{}:{}->{}", arrows.join("."), i + 1, j + 1)
                }
            })
            .collect();
        let block = paths.iter().map(|(i, j, _)| (*j, *i)).collect();
        let idempotents = (0..n).map(|v| paths.iter().position(|(i, j, p)| *i == v && *j == v && p.is_empty()).unwrap()).collect();
        let d = paths.len();
        let products = (0..d)
            .map(|a| {
                (0..d)
                    .map(|b| {
                        let mut v = vec![k.zero(); d];
                        let (ai, aj, ap) = &paths[a];
                        let (bi, bj, bp) = &paths[b];
                        if bj == ai {
                            let mut cat = bp.clone();
                            cat.extend_from_slice(ap);
                            let c = paths.iter().position(|(i, j, p)| i == bi && j == aj && *p == cat).unwrap();
                            v[c] = k.one();
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        FdAlgebra { k, n, labels, block, idempotents, products }
    }

    pub fn field(&self) -> &K {
        &self.k
    }

    pub fn dim(&self) -> usize {
        self.block.len()
    }

    /// Number of primitive idempotents.
    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn block(&self, b: usize) -> (usize, usize) {
        self.block[b]
    }

    pub fn idempotent(&self, i: usize) -> usize {
        self.idempotents[i]
    }

    pub fn product(&self, a: usize, b: usize) -> &[K::Elem] {
        &self.products[a][b]
    }

    fn is_idempotent_index(&self, b: usize) -> bool {
        self.idempotents.contains(&b)
    }

    fn unit_vec(&self, b: usize) -> Vec<K::Elem> {
        let mut v = vec![self.k.zero(); self.dim()];
        v[b] = self.k.one();
        v
    }

    fn check_idempotents(&self) -> Result<(), AlgError> {
        for (i, &ei) in self.idempotents.iter().enumerate() {
            if self.block[ei] != (i, i) {
                return Err(AlgError::Idempotents(format!("e{} is not in its own block", i + 1)));
            }
            for (j, &ej) in self.idempotents.iter().enumerate() {
                let want = if i == j { self.unit_vec(ei) } else { vec![self.k.zero(); self.dim()] };
                if self.products[ei][ej] != want {
                    return Err(AlgError::Idempotents(format!("e{} e{}", i + 1, j + 1)));
                }
            }
        }
        for b in 0..self.dim() {
            let (i, j) = self.block[b];
            let unit = self.unit_vec(b);
            for v in 0..self.n {
                let left = if v == i { unit.clone() } else { vec![self.k.zero(); self.dim()] };
                let right = if v == j { unit.clone() } else { vec![self.k.zero(); self.dim()] };
                if self.products[self.idempotents[v]][b] != left || self.products[b][self.idempotents[v]] != right {
                    return Err(AlgError::Idempotents(format!("basis element {} is not in block ({}, {})", self.labels[b], i + 1, j + 1)));
                }
            }
        }
        Ok(())
    }

    fn mul_coords(&self, x: &[K::Elem], y: &[K::Elem]) -> Vec<K::Elem> {
        let k = &self.k;
        let mut out = vec![k.zero(); self.dim()];
        for (a, xa) in x.iter().enumerate() {
            if k.is_zero(xa) {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if k.is_zero(yb) {
                    continue;
                }
                let s = k.mul(xa, yb);
                for (c, pc) in self.products[a][b].iter().enumerate() {
                    if !k.is_zero(pc) {
                        out[c] = k.add(&out[c], &k.mul(&s, pc));
                    }
                }
            }
        }
        out
    }

    /// `(ab)c = a(bc)` on every basis triple.
    pub fn check_associative(&self) -> Result<(), AlgError> {
        let d = self.dim();
        (0..d).into_par_iter().try_for_each(|a| {
            for b in 0..d {
                if self.block[a].1 != self.block[b].0 {
                    continue;
                }
                let ab = &self.products[a][b];
                for c in 0..d {
                    if self.block[b].1 != self.block[c].0 {
                        continue;
                    }
                    let lhs = self.mul_coords(ab, &self.unit_vec(c));
                    let rhs = self.mul_coords(&self.unit_vec(a), &self.products[b][c]);
                    if lhs != rhs {
                        return Err(AlgError::NotAssociative(a, b, c));
                    }
                }
            }
            Ok(())
        })
    }

    /// Left multiplication by `x` restricted to `e_i A e_i`, in the basis elements of that block.
    fn corner_left_matrix(&self, i: usize, x: &[K::Elem]) -> Matrix<K::Elem> {
        let idx: Vec<usize> = (0..self.dim()).filter(|&b| self.block[b] == (i, i)).collect();
        let cols: Vec<Vec<K::Elem>> = idx
            .iter()
            .map(|&b| {
                let p = self.mul_coords(x, &self.unit_vec(b));
                idx.iter().map(|&c| p[c].clone()).collect()
            })
            .collect();
        Matrix::from_columns(idx.len(), &cols, self.k.zero())
    }

    fn is_nilpotent(&self, m: &Matrix<K::Elem>) -> bool {
        let mut p = m.clone();
        let mut e = 1;
        while e < m.rows().max(1) {
            p = linalg::mul(&self.k, &p, &p);
            e *= 2;
        }
        linalg::is_zero_matrix(&self.k, &p)
    }

    /// Radical basis: off-diagonal blocks plus the nilpotent parts `x − λ e_i`
    /// of the local corners `e_i A e_i`.
    pub fn radical(&self) -> Result<Vec<Vec<K::Elem>>, AlgError> {
        let k = &self.k;
        let mut out = Vec::new();
        for b in 0..self.dim() {
            let (i, j) = self.block[b];
            if i != j {
                out.push(self.unit_vec(b));
                continue;
            }
            if self.is_idempotent_index(b) {
                continue;
            }
            let x = self.unit_vec(b);
            let lm = self.corner_left_matrix(i, &x);
            let m = lm.rows();
            let mut candidates = Vec::new();
            let p = k.characteristic();
            if p == 0 || (m as u64) % p != 0 {
                let mut tr = k.zero();
                for d in 0..m {
                    tr = k.add(&tr, lm.get(d, d));
                }
                candidates.push(k.div(&tr, &k.from_i64(m as i64)).expect("nonzero"));
            } else if let Some(all) = k.elements() {
                candidates = all;
            }
            let mut found = None;
            for lam in candidates {
                let mut y = x.clone();
                let ei = self.idempotents[i];
                y[ei] = k.sub(&y[ei], &lam);
                if self.is_nilpotent(&self.corner_left_matrix(i, &y)) {
                    found = Some(y);
                    break;
                }
            }
            match found {
                Some(y) => out.push(y),
                None => return Err(AlgError::NotNilpotent(self.labels[b].clone())),
            }
        }
        Ok(out)
    }

    pub fn simple(&self, i: usize) -> FdModule<K::Elem> {
        let k = &self.k;
        let mut dims = vec![0; self.n];
        dims[i] = 1;
        let action = (0..self.dim())
            .map(|b| if b == self.idempotents[i] { linalg::identity(k, 1) } else { linalg::zeros(k, 1, 1) })
            .collect();
        FdModule { dims, action }
    }

    /// `A e_i`, with basis the algebra basis elements of `e_v A e_i`, grouped by `v`.
    pub fn projective(&self, i: usize) -> FdModule<K::Elem> {
        let k = &self.k;
        let mut idx: Vec<usize> = (0..self.dim()).filter(|&b| self.block[b].1 == i).collect();
        idx.sort_by_key(|&b| (self.block[b].0, b));
        let dims: Vec<usize> = (0..self.n).map(|v| idx.iter().filter(|&&b| self.block[b].0 == v).count()).collect();
        let action = (0..self.dim())
            .map(|a| {
                Matrix::from_fn(idx.len(), idx.len(), |r, c| self.products[a][idx[c]][idx[r]].clone())
            })
            .collect::<Vec<_>>();
        let _ = k;
        FdModule { dims, action }
    }

    /// Module structure on a representation, through [`FdAlgebra::from_path_algebra`]'s basis.
    pub fn module_from_rep(&self, pa: &PathAlgebra<K>, m: &Rep<K::Elem>) -> FdModule<K::Elem> {
        let k = &self.k;
        let n = self.n;
        let offs = offsets(&m.dims);
        let total = m.total_dim();
        let mut paths: Vec<(usize, usize, Vec<usize>)> = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for p in pa.paths(i, j) {
                    paths.push((i, j, p.clone()));
                }
            }
        }
        paths.sort_by(|a, b| (a.1, a.0, a.2.len(), &a.2).cmp(&(b.1, b.0, b.2.len(), &b.2)));
        let action = paths
            .iter()
            .map(|(i, j, p)| {
                let mut mat = linalg::identity(k, m.dims[*i]);
                for &a in p {
                    mat = linalg::mul(k, &m.maps[a], &mat);
                }
                let mut full = linalg::zeros(k, total, total);
                for r in 0..m.dims[*j] {
                    for c in 0..m.dims[*i] {
                        full.set(offs[*j] + r, offs[*i] + c, mat.get(r, c).clone());
                    }
                }
                full
            })
            .collect();
        FdModule { dims: m.dims.clone(), action }
    }

    /// Every action matrix is compatible with the multiplication.
    pub fn check_module(&self, m: &FdModule<K::Elem>) -> Result<(), AlgError> {
        let k = &self.k;
        for a in 0..self.dim() {
            for b in 0..self.dim() {
                let lhs = linalg::mul(k, &m.action[a], &m.action[b]);
                let mut rhs = linalg::zeros(k, m.total_dim(), m.total_dim());
                for (c, x) in self.products[a][b].iter().enumerate() {
                    if !k.is_zero(x) {
                        rhs = linalg::add(k, &rhs, &linalg::scale(k, x, &m.action[c]));
                    }
                }
                if lhs != rhs {
                    return Err(AlgError::NotModule(a, b));
                }
            }
        }
        Ok(())
    }

    fn generators(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.dim()).filter(|b| !self.is_idempotent_index(*b))
    }

    pub fn hom_dim(&self, m: &FdModule<K::Elem>, n: &FdModule<K::Elem>) -> usize {
        let k = &self.k;
        let mo = offsets(&m.dims);
        let no = offsets(&n.dims);
        let mut voff = vec![0usize; self.n + 1];
        for v in 0..self.n {
            voff[v + 1] = voff[v] + n.dims[v] * m.dims[v];
        }
        let unknowns = voff[self.n];
        let mut rows: Vec<Vec<K::Elem>> = Vec::new();
        for b in self.generators() {
            let (i, j) = self.block[b];
            // φ_i · M(b)_{ij} − N(b)_{ij} · φ_j = 0, an n_i × m_j system
            for r in 0..n.dims[i] {
                for c in 0..m.dims[j] {
                    let mut row = vec![k.zero(); unknowns];
                    for x in 0..m.dims[i] {
                        let e = m.action[b].get(mo[i] + x, mo[j] + c);
                        if !k.is_zero(e) {
                            let col = voff[i] + r * m.dims[i] + x;
                            row[col] = k.add(&row[col], e);
                        }
                    }
                    for y in 0..n.dims[j] {
                        let e = n.action[b].get(no[i] + r, no[j] + y);
                        if !k.is_zero(e) {
                            let col = voff[j] + y * m.dims[j] + c;
                            row[col] = k.sub(&row[col], e);
                        }
                    }
                    if row.iter().any(|x| !k.is_zero(x)) {
                        rows.push(row);
                    }
                }
            }
        }
        if rows.is_empty() {
            return unknowns;
        }
        let mat = Matrix::from_rows(rows.len(), unknowns, rows.into_iter().flatten().collect());
        unknowns - linalg::rank(k, &mat)
    }

    /// Per-vertex basis of `rad(A)·M`.
    pub fn radical_of_module(&self, m: &FdModule<K::Elem>) -> Result<Vec<Vec<Vec<K::Elem>>>, AlgError> {
        let k = &self.k;
        let offs = offsets(&m.dims);
        let rad = self.radical()?;
        let mut per_vertex: Vec<Vec<Vec<K::Elem>>> = vec![Vec::new(); self.n];
        for r in &rad {
            let mut act = linalg::zeros(k, m.total_dim(), m.total_dim());
            for (c, x) in r.iter().enumerate() {
                if !k.is_zero(x) {
                    act = linalg::add(k, &act, &linalg::scale(k, x, &m.action[c]));
                }
            }
            for col in 0..m.total_dim() {
                let v = act.column(col);
                for t in 0..self.n {
                    let part: Vec<K::Elem> = v[offs[t]..offs[t] + m.dims[t]].to_vec();
                    if part.iter().any(|x| !k.is_zero(x)) {
                        per_vertex[t].push(part);
                    }
                }
            }
        }
        Ok(per_vertex
            .into_iter()
            .zip(&m.dims)
            .map(|(vs, &d)| {
                if vs.is_empty() {
                    return vs;
                }
                linalg::column_space(k, &Matrix::from_columns(d, &vs, k.zero()))
            })
            .collect())
    }

    /// Projective cover `P₀ → M` as `(P₀, matrix of the surjection)`.
    pub fn projective_cover(&self, m: &FdModule<K::Elem>) -> Result<(FdModule<K::Elem>, Matrix<K::Elem>), AlgError> {
        let k = &self.k;
        let rad = self.radical_of_module(m)?;
        let offs = offsets(&m.dims);
        let mut tops: Vec<(usize, Vec<K::Elem>)> = Vec::new();
        for v in 0..self.n {
            // complement of rad(M)_v spanned by unit vectors, in column order
            let mut basis = rad[v].clone();
            for u in 0..m.dims[v] {
                let mut e = vec![k.zero(); m.dims[v]];
                e[u] = k.one();
                let mut trial = basis.clone();
                trial.push(e.clone());
                if linalg::rank(k, &Matrix::from_columns(m.dims[v], &trial, k.zero())) > basis.len() {
                    basis = trial;
                    let mut full = vec![k.zero(); m.total_dim()];
                    full[offs[v] + u] = k.one();
                    tops.push((v, full));
                }
            }
        }
        let parts: Vec<FdModule<K::Elem>> = tops.iter().map(|(v, _)| self.projective(*v)).collect();
        let p0 = self.direct_sum(&parts.iter().collect::<Vec<_>>());
        // column for each basis element b of A e_v: b · top vector, placed in P₀'s graded order
        let mut cols_by_summand: Vec<Vec<(usize, Vec<K::Elem>)>> = Vec::new();
        for (v, top) in &tops {
            let mut idx: Vec<usize> = (0..self.dim()).filter(|&b| self.block[b].1 == *v).collect();
            idx.sort_by_key(|&b| (self.block[b].0, b));
            cols_by_summand.push(idx.iter().map(|&b| (self.block[b].0, linalg::mat_vec(k, &m.action[b], top))).collect());
        }
        let mut cols: Vec<Vec<K::Elem>> = Vec::new();
        for t in 0..self.n {
            for s in &cols_by_summand {
                for (blk, col) in s {
                    if *blk == t {
                        cols.push(col.clone());
                    }
                }
            }
        }
        let map = Matrix::from_columns(m.total_dim(), &cols, k.zero());
        Ok((p0, map))
    }

    pub fn syzygy(&self, m: &FdModule<K::Elem>) -> Result<FdModule<K::Elem>, AlgError> {
        let (p0, map) = self.projective_cover(m)?;
        let po = offsets(&p0.dims);
        let mo = offsets(&m.dims);
        let bases: Vec<Vec<Vec<K::Elem>>> = (0..self.n)
            .map(|v| {
                let blk = map.block(mo[v]..mo[v] + m.dims[v], po[v]..po[v] + p0.dims[v]);
                linalg::kernel(&self.k, &blk).basis
            })
            .collect();
        Ok(self.submodule(&p0, &bases))
    }

    /// Restriction to a graded submodule given by per-block bases.
    pub fn submodule(&self, m: &FdModule<K::Elem>, bases: &[Vec<Vec<K::Elem>>]) -> FdModule<K::Elem> {
        let k = &self.k;
        let dims: Vec<usize> = bases.iter().map(|b| b.len()).collect();
        let mo = offsets(&m.dims);
        let mut embed_cols: Vec<Vec<K::Elem>> = Vec::new();
        for (v, bs) in bases.iter().enumerate() {
            for b in bs {
                let mut full = vec![k.zero(); m.total_dim()];
                full[mo[v]..mo[v] + m.dims[v]].clone_from_slice(b);
                embed_cols.push(full);
            }
        }
        let total: usize = dims.iter().sum();
        let emb = Matrix::from_columns(m.total_dim(), &embed_cols, k.zero());
        let action = m
            .action
            .iter()
            .map(|act| {
                let img = linalg::mul(k, act, &emb);
                let cols: Vec<Vec<K::Elem>> =
                    (0..total).map(|c| linalg::solve(k, &emb, &img.column(c)).expect("submodule is stable")).collect();
                Matrix::from_columns(total, &cols, k.zero())
            })
            .collect();
        FdModule { dims, action }
    }

    pub fn direct_sum(&self, parts: &[&FdModule<K::Elem>]) -> FdModule<K::Elem> {
        let k = &self.k;
        let dims: Vec<usize> = (0..self.n).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
        let total: usize = dims.iter().sum();
        let out_off = offsets(&dims);
        // position of (part, local index) in the sum
        let mut place: Vec<Vec<usize>> = Vec::new();
        let mut fill = vec![0usize; self.n];
        for p in parts {
            let po = offsets(&p.dims);
            let mut pl = vec![0; p.total_dim()];
            for v in 0..self.n {
                for x in 0..p.dims[v] {
                    pl[po[v] + x] = out_off[v] + fill[v] + x;
                }
                fill[v] += p.dims[v];
            }
            place.push(pl);
        }
        let action = (0..self.dim())
            .map(|b| {
                let mut m = linalg::zeros(k, total, total);
                for (p, pl) in parts.iter().zip(&place) {
                    for r in 0..p.total_dim() {
                        for c in 0..p.total_dim() {
                            let x = p.action[b].get(r, c);
                            if !k.is_zero(x) {
                                m.set(pl[r], pl[c], x.clone());
                            }
                        }
                    }
                }
                m
            })
            .collect();
        FdModule { dims, action }
    }

    /// `dim Ext¹(M,N) = dim Hom(ΩM,N) − dim Hom(P₀,N) + dim Hom(M,N)`.
    pub fn ext1_dim(&self, m: &FdModule<K::Elem>, n: &FdModule<K::Elem>) -> Result<usize, AlgError> {
        let (p0, _) = self.projective_cover(m)?;
        let omega = self.syzygy(m)?;
        let v = self.hom_dim(&omega, n) as i64 - self.hom_dim(&p0, n) as i64 + self.hom_dim(m, n) as i64;
        Ok(v as usize)
    }

    pub fn euler_form(&self, m: &FdModule<K::Elem>, n: &FdModule<K::Elem>) -> Result<i64, AlgError> {
        Ok(self.hom_dim(m, n) as i64 - self.ext1_dim(m, n)? as i64)
    }

    /// `[i][j] = ⟨S_i,S_j⟩ − ⟨S_j,S_i⟩`.
    pub fn antisym_form_matrix(&self) -> Result<Vec<Vec<i64>>, AlgError> {
        let s: Vec<_> = (0..self.n).map(|i| self.simple(i)).collect();
        let mut e = vec![vec![0i64; self.n]; self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                e[i][j] = self.euler_form(&s[i], &s[j])?;
            }
        }
        Ok((0..self.n).map(|i| (0..self.n).map(|j| e[i][j] - e[j][i]).collect()).collect())
    }

    /// `[i][j] = dim Ext¹(S_i, S_j)`: arrow counts of the quiver of the algebra.
    pub fn ext_quiver(&self) -> Result<Vec<Vec<i64>>, AlgError> {
        let s: Vec<_> = (0..self.n).map(|i| self.simple(i)).collect();
        let mut out = vec![vec![0i64; self.n]; self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                out[i][j] = self.ext1_dim(&s[i], &s[j])? as i64;
            }
        }
        Ok(out)
    }
}

/// A graded module: `action[b]` is the full matrix of basis element `b`.
#[derive(Clone, Debug, PartialEq)]
pub struct FdModule<E> {
    pub dims: Vec<usize>,
    pub action: Vec<Matrix<E>>,
}

impl<E: Clone> FdModule<E> {
    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn dim_vector(&self) -> IntVector {
        IntVector(self.dims.iter().map(|&d| d as i64).collect())
    }
}

fn offsets(dims: &[usize]) -> Vec<usize> {
    let mut o = Vec::with_capacity(dims.len());
    let mut acc = 0;
    for &d in dims {
        o.push(acc);
        acc += d;
    }
    o
}

/// Upper bound for the dimension of `Gr_e(M)`: the product of ordinary Grassmannians.
pub fn grassmannian_degree_bound(d: &[usize], e: &[usize]) -> usize {
    d.iter().zip(e).map(|(&d, &e)| e * d.saturating_sub(e)).sum()
}

/// Submodules of `m` with dimension vector `e`, counted over a finite field.
///
/// Subspaces are enumerated block by block as reduced row-echelon forms and
/// pruned as soon as a generator maps a chosen block outside another chosen block.
pub fn count_submodules<K: Field>(
    alg: &FdAlgebra<K>,
    m: &FdModule<K::Elem>,
    e: &[usize],
    budget: u64,
) -> Result<BigInt, AlgError> {
    let k = alg.field();
    let elems = k.elements().ok_or(AlgError::InfiniteField)?;
    if e.iter().zip(&m.dims).any(|(a, b)| a > b) {
        return Ok(BigInt::zero());
    }
    let n = alg.rank();
    let offs = offsets(&m.dims);
    // generator blocks: (target i, source j, matrix M(b)_{ij})
    let mut gens: Vec<(usize, usize, Matrix<K::Elem>)> = Vec::new();
    for b in alg.generators() {
        let (i, j) = alg.block(b);
        let blk = m.action[b].block(offs[i]..offs[i] + m.dims[i], offs[j]..offs[j] + m.dims[j]);
        if !linalg::is_zero_matrix(k, &blk) {
            gens.push((i, j, blk));
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (grassmannian_degree_bound(&[m.dims[v]], &[e[v]]), v));
    let mut chosen: Vec<Option<Matrix<K::Elem>>> = vec![None; n];
    let mut nodes = 0u64;
    let mut count = BigInt::zero();
    search(k, &elems, &order, 0, m, e, &gens, &mut chosen, &mut nodes, budget, &mut count)?;
    Ok(count)
}

#[allow(clippy::too_many_arguments)]
fn search<K: Field>(
    k: &K,
    elems: &[K::Elem],
    order: &[usize],
    depth: usize,
    m: &FdModule<K::Elem>,
    e: &[usize],
    gens: &[(usize, usize, Matrix<K::Elem>)],
    chosen: &mut Vec<Option<Matrix<K::Elem>>>,
    nodes: &mut u64,
    budget: u64,
    count: &mut BigInt,
) -> Result<(), AlgError> {
    if depth == order.len() {
        *count += 1;
        return Ok(());
    }
    let v = order[depth];
    let mut result = Ok(());
    for_each_rref(k, elems, e[v], m.dims[v], &mut |sub: &Matrix<K::Elem>| {
        if result.is_err() {
            return;
        }
        *nodes += 1;
        if *nodes > budget {
            result = Err(AlgError::Budget(budget));
            return;
        }
        chosen[v] = Some(sub.clone());
        let ok = gens.iter().all(|(i, j, g)| {
            if (*i != v && *j != v) || chosen[*i].is_none() || chosen[*j].is_none() {
                return true;
            }
            maps_into(k, g, chosen[*j].as_ref().unwrap(), chosen[*i].as_ref().unwrap())
        });
        if ok {
            if let Err(err) = search(k, elems, order, depth + 1, m, e, gens, chosen, nodes, budget, count) {
                result = Err(err);
            }
        }
        chosen[v] = None;
    });
    result
}

/// Whether `g` maps the row space of `src` into the row space of the RREF matrix `dst`.
fn maps_into<K: Field>(k: &K, g: &Matrix<K::Elem>, src: &Matrix<K::Elem>, dst: &Matrix<K::Elem>) -> bool {
    let pivots: Vec<usize> = (0..dst.rows()).map(|r| (0..dst.cols()).find(|&c| !k.is_zero(dst.get(r, c))).unwrap()).collect();
    for r in 0..src.rows() {
        let img = linalg::mat_vec(k, g, src.row(r));
        let mut w = img;
        for (row, &p) in pivots.iter().enumerate() {
            let f = w[p].clone();
            if k.is_zero(&f) {
                continue;
            }
            for c in 0..w.len() {
                let x = dst.get(row, c);
                if !k.is_zero(x) {
                    w[c] = k.sub(&w[c], &k.mul(&f, x));
                }
            }
        }
        if w.iter().any(|x| !k.is_zero(x)) {
            return false;
        }
    }
    true
}

/// Calls `f` on every `r × d` reduced row-echelon matrix of rank `r`.
fn for_each_rref<K: Field>(k: &K, elems: &[K::Elem], r: usize, d: usize, f: &mut dyn FnMut(&Matrix<K::Elem>)) {
    let mut pivots = Vec::with_capacity(r);
    fn choose<K: Field>(
        k: &K,
        elems: &[K::Elem],
        start: usize,
        r: usize,
        d: usize,
        pivots: &mut Vec<usize>,
        f: &mut dyn FnMut(&Matrix<K::Elem>),
    ) {
        if pivots.len() == r {
            let mut free: Vec<(usize, usize)> = Vec::new();
            for (row, &p) in pivots.iter().enumerate() {
                for c in p + 1..d {
                    if !pivots.contains(&c) {
                        free.push((row, c));
                    }
                }
            }
            let mut m = Matrix::filled(r, d, k.zero());
            for (row, &p) in pivots.iter().enumerate() {
                m.set(row, p, k.one());
            }
            let mut idx = vec![0usize; free.len()];
            loop {
                for (slot, &(row, c)) in free.iter().enumerate() {
                    m.set(row, c, elems[idx[slot]].clone());
                }
                f(&m);
                let mut s = 0;
                loop {
                    if s == idx.len() {
                        return;
                    }
                    idx[s] += 1;
                    if idx[s] < elems.len() {
                        break;
                    }
                    idx[s] = 0;
                    s += 1;
                }
            }
        }
        for c in start..d {
            pivots.push(c);
            choose(k, elems, c + 1, r, d, pivots, f);
            pivots.pop();
        }
    }
    choose(k, elems, 0, r, d, &mut pivots, f);
}

/// Polynomial through `(x_i, y_i)` by Newton interpolation, lowest degree first.
pub fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> Vec<BigRational> {
    let n = xs.len();
    let x: Vec<BigRational> = xs.iter().map(|v| BigRational::from(v.clone())).collect();
    let mut coef: Vec<BigRational> = ys.iter().map(|v| BigRational::from(v.clone())).collect();
    for j in 1..n {
        for i in (j..n).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&x[i] - &x[i - j]);
        }
    }
    // expand the Newton form
    let mut poly = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        // poly = poly * (t − x_i) + coef[i]
        let mut next = vec![BigRational::zero(); n];
        for d in 0..n {
            if poly[d].is_zero() {
                continue;
            }
            if d + 1 < n {
                next[d + 1] += &poly[d];
            }
            next[d] -= &poly[d] * &x[i];
        }
        next[0] += &coef[i];
        poly = next;
    }
    poly
}

pub fn eval_poly(p: &[BigRational], t: &BigRational) -> BigRational {
    p.iter().rev().fold(BigRational::zero(), |acc, c| acc * t + c)
}

/// Counting-polynomial fit for one dimension vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerFit {
    pub e: Vec<usize>,
    pub primes: Vec<u64>,
    pub counts: Vec<String>,
    /// Coefficients, lowest degree first, rendered exactly.
    pub polynomial: Vec<String>,
    pub chi: i64,
}

/// Primes used for a fit of degree at most `degree`: at least `min_primes`,
/// and two more than the number of unknown coefficients.
pub fn primes_for_degree(degree: usize, min_primes: &[u64]) -> Vec<u64> {
    let need = (degree + 3).max(min_primes.len());
    let mut out: Vec<u64> = min_primes.to_vec();
    let mut c = out.last().copied().unwrap_or(1) + 1;
    while out.len() < need {
        if crate::field::is_prime(c) {
            out.push(c);
        }
        c += 1;
    }
    out
}

/// `χ(Gr_e)` from point counts: `module_at(p)` builds the module over `F_p`.
pub fn euler_char<F>(dims: &[usize], e: &[usize], min_primes: &[u64], budget: u64, module_at: F) -> Result<EulerFit, AlgError>
where
    F: Fn(u64) -> Result<(FdAlgebra<PrimeField>, FdModule<u64>), AlgError> + Sync,
{
    let degree = grassmannian_degree_bound(dims, e);
    let primes = primes_for_degree(degree, min_primes);
    let counts: Vec<BigInt> = primes
        .par_iter()
        .map(|&p| {
            let (alg, m) = module_at(p)?;
            count_submodules(&alg, &m, e, budget)
        })
        .collect::<Result<_, _>>()?;
    fit_counts(e, &primes, &counts, degree)
}

pub fn fit_counts(e: &[usize], primes: &[u64], counts: &[BigInt], degree: usize) -> Result<EulerFit, AlgError> {
    let xs: Vec<BigInt> = primes.iter().map(|&p| BigInt::from(p)).collect();
    let poly = interpolate(&xs[..degree + 1], &counts[..degree + 1]);
    for (x, y) in xs.iter().zip(counts).skip(degree + 1) {
        if eval_poly(&poly, &BigRational::from(x.clone())) != BigRational::from(y.clone()) {
            return Err(AlgError::CountingPolynomial {
                primes: primes.to_vec(),
                counts: counts.iter().map(|c| c.to_string()).collect(),
                degree,
            });
        }
    }
    let chi = eval_poly(&poly, &BigRational::one());
    if !chi.is_integer() {
        return Err(AlgError::CountingPolynomial {
            primes: primes.to_vec(),
            counts: counts.iter().map(|c| c.to_string()).collect(),
            degree,
        });
    }
    let mut trimmed = poly.clone();
    while trimmed.len() > 1 && trimmed.last().is_some_and(|c| c.is_zero()) {
        trimmed.pop();
    }
    Ok(EulerFit {
        e: e.to_vec(),
        primes: primes.to_vec(),
        counts: counts.iter().map(|c| c.to_string()).collect(),
        polynomial: trimmed.iter().map(|c| c.to_string()).collect(),
        chi: chi.to_integer().try_into().expect("Euler characteristic fits in i64"),
    })
}
