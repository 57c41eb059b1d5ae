//! Quivers, matrix and seed mutation, and exchange-graph enumeration.
//!
//! Vertices are 0-indexed here and 1-indexed in every text format.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::laurent::{IntVector, LaurentError, LaurentPoly};

#[derive(Debug, Error)]
pub enum CombError {
    #[error("vertex {0} out of range for a quiver on {1} vertices")]
    Vertex(usize, usize),
    #[error("exchange matrix is not skew-symmetric at ({0},{1})")]
    NotSkew(usize, usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("input quiver has an oriented cycle")]
    Cyclic,
    #[error("seed arity mismatch: {0}")]
    Arity(String),
    #[error("exchange relation did not divide exactly at vertex {0}; arithmetic bug")]
    NonLaurent(usize),
    #[error("quiver is not of Dynkin type; an explicit depth bound is required")]
    DepthRequired,
    #[error("seed budget of {limit} exceeded at depth {depth}; partial registry attached")]
    Budget { limit: usize, depth: usize, partial: Box<Registry> },
    #[error("tilt tracking failed: {0}")]
    Tracking(String),
    #[error("cluster variable {0} is tracked by two different objects: {1} and {2}")]
    TrackingConflict(String, ObjLabel, ObjLabel),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

/// Skew-symmetric exchange matrix of a quiver without loops or 2-cycles.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Quiver {
    n: usize,
    b: Vec<Vec<i64>>,
}

impl Quiver {
    pub fn new(b: Vec<Vec<i64>>) -> Result<Self, CombError> {
        let n = b.len();
        for (i, row) in b.iter().enumerate() {
            if row.len() != n {
                return Err(CombError::Arity(format!("row {} has length {}", i + 1, row.len())));
            }
            for j in 0..n {
                if row[j] != -b[j][i] {
                    return Err(CombError::NotSkew(i + 1, j + 1));
                }
            }
        }
        Ok(Quiver { n, b })
    }

    /// `arrows` are `(source, target, multiplicity)`, 0-indexed.
    pub fn from_arrows(n: usize, arrows: &[(usize, usize, u32)]) -> Result<Self, CombError> {
        let mut b = vec![vec![0i64; n]; n];
        for &(i, j, m) in arrows {
            if i >= n {
                return Err(CombError::Vertex(i + 1, n));
            }
            if j >= n {
                return Err(CombError::Vertex(j + 1, n));
            }
            if i == j {
                return Err(CombError::Parse { line: 0, msg: format!("loop at vertex {}", i + 1) });
            }
            b[i][j] += m as i64;
            b[j][i] -= m as i64;
        }
        Ok(Quiver { n, b })
    }

    /// Linear orientation 1 → 2 → … → n.
    pub fn linear_a(n: usize) -> Self {
        let arrows: Vec<_> = (1..n).map(|i| (i - 1, i, 1)).collect();
        Quiver::from_arrows(n, &arrows).expect("valid")
    }

    /// Parses "i -> j" or "i -> j *m" lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, CombError> {
        let mut arrows = Vec::new();
        let mut n = 0usize;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| CombError::Parse { line: lineno + 1, msg: msg.to_string() };
            let (lhs, rhs) = line.split_once("->").ok_or_else(|| err("expected `i -> j`"))?;
            let (tgt, mult) = match rhs.split_once('*') {
                Some((t, m)) => (t, m.trim().parse::<u32>().map_err(|_| err("bad multiplicity"))?),
                None => (rhs, 1),
            };
            let i: usize = lhs.trim().parse().map_err(|_| err("bad source vertex"))?;
            let j: usize = tgt.trim().parse().map_err(|_| err("bad target vertex"))?;
            if i == 0 || j == 0 {
                return Err(err("vertices are numbered from 1"));
            }
            if i == j {
                return Err(err("loops are not allowed"));
            }
            if mult == 0 {
                return Err(err("multiplicity must be positive"));
            }
            n = n.max(i).max(j);
            arrows.push((i - 1, j - 1, mult));
        }
        let q = Quiver::from_arrows(n, &arrows)?;
        for &(i, j, _) in &arrows {
            if q.b[i][j] <= 0 {
                return Err(CombError::Parse { line: 0, msg: format!("2-cycle between {} and {}", i + 1, j + 1) });
            }
        }
        Ok(q)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (i, j, m) in self.arrows() {
            if m == 1 {
                s.push_str(&format!("{} -> {}\n", i + 1, j + 1));
            } else {
                s.push_str(&format!("{} -> {} *{}\n", i + 1, j + 1, m));
            }
        }
        s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn b(&self, i: usize, j: usize) -> i64 {
        self.b[i][j]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.b
    }

    /// `(source, target, multiplicity)` for every positive entry, in row-major order.
    pub fn arrows(&self) -> Vec<(usize, usize, u32)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if self.b[i][j] > 0 {
                    out.push((i, j, self.b[i][j] as u32));
                }
            }
        }
        out
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    /// Vertices in an order where every arrow goes forward. `None` if cyclic.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let mut indeg: Vec<usize> = (0..self.n).map(|j| (0..self.n).filter(|&i| self.b[i][j] > 0).count()).collect();
        let mut order = Vec::with_capacity(self.n);
        let mut ready: BTreeSet<usize> = (0..self.n).filter(|&j| indeg[j] == 0).collect();
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for w in 0..self.n {
                if self.b[v][w] > 0 {
                    indeg[w] -= 1;
                    if indeg[w] == 0 {
                        ready.insert(w);
                    }
                }
            }
        }
        (order.len() == self.n).then_some(order)
    }

    pub fn mutate(&self, k: usize) -> Result<Quiver, CombError> {
        if k >= self.n {
            return Err(CombError::Vertex(k + 1, self.n));
        }
        let n = self.n;
        let b = &self.b;
        let mut out = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                out[i][j] = if i == k || j == k {
                    -b[i][j]
                } else {
                    b[i][j] + b[i][k].signum() * (b[i][k] * b[k][j]).max(0)
                };
            }
        }
        Ok(Quiver { n, b: out })
    }

    /// Finite mutation type test: the symmetrized Cartan matrix `2I − |b|` is
    /// positive definite exactly for disjoint unions of simply-laced Dynkin diagrams.
    pub fn is_dynkin(&self) -> bool {
        let n = self.n;
        let c: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| BigInt::from(if i == j { 2 } else { -self.b[i][j].abs() })).collect())
            .collect();
        leading_minors_positive(c)
    }

    /// Tits form `q(d) = Σ d_i² − Σ_{arrows} d_i d_j`.
    pub fn tits_form(&self, d: &[i64]) -> i64 {
        let mut q: i64 = d.iter().map(|x| x * x).sum();
        for (i, j, m) in self.arrows() {
            q -= m as i64 * d[i] * d[j];
        }
        q
    }
}

/// Bareiss elimination; all leading principal minors of `m` are positive.
fn leading_minors_positive(mut m: Vec<Vec<BigInt>>) -> bool {
    let n = m.len();
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if !m[k][k].is_positive() {
            return false;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    true
}

/// Identifier of an indecomposable object of the cluster category.
///
/// Exceptional modules are determined by their dimension vectors, so a label
/// is independent of the ground field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ObjLabel {
    Mod(IntVector),
    Shift(usize),
}

impl ObjLabel {
    pub fn dim_vector(&self, n: usize) -> IntVector {
        match self {
            ObjLabel::Mod(d) => d.clone(),
            ObjLabel::Shift(i) => -&IntVector::unit(n, *i),
        }
    }
}

impl fmt::Display for ObjLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObjLabel::Mod(d) => {
                let parts: Vec<String> = d.0.iter().map(|a| a.to_string()).collect();
                write!(f, "dim:{}", parts.join(","))
            }
            ObjLabel::Shift(i) => write!(f, "sp:{}", i + 1),
        }
    }
}

impl FromStr for ObjLabel {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("dim:") {
            let v: Result<Vec<i64>, _> = rest.split(',').map(|t| t.trim().parse::<i64>()).collect();
            let v = v.map_err(|e| format!("bad dimension vector `{rest}`: {e}"))?;
            if v.iter().any(|&a| a < 0) || v.iter().all(|&a| a == 0) {
                return Err(format!("dimension vector `{rest}` must be nonnegative and nonzero"));
            }
            Ok(ObjLabel::Mod(IntVector(v)))
        } else if let Some(rest) = s.strip_prefix("sp:") {
            let i: usize = rest.trim().parse().map_err(|e| format!("bad vertex `{rest}`: {e}"))?;
            if i == 0 {
                return Err("vertices are numbered from 1".into());
            }
            Ok(ObjLabel::Shift(i - 1))
        } else {
            Err(format!("unknown object `{s}` (expected dim:… or sp:…)"))
        }
    }
}

impl Serialize for ObjLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ObjLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    pub quiver: Quiver,
    pub vars: Vec<LaurentPoly>,
    /// Mutation sequence from the root (0-indexed vertices).
    pub trace: Vec<usize>,
    pub tilt: Option<Vec<ObjLabel>>,
}

/// Sorted variable multiset; equal keys mean equal (unlabeled) seeds.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeedKey(pub Vec<LaurentPoly>);

impl Seed {
    /// Initial seed `(u, Q)` with free variables.
    pub fn root(quiver: Quiver, tilt: Option<Vec<ObjLabel>>) -> Self {
        let n = quiver.n();
        Seed { vars: (0..n).map(|i| LaurentPoly::var(n, i)).collect(), quiver, trace: Vec::new(), tilt }
    }

    pub fn n(&self) -> usize {
        self.quiver.n()
    }

    pub fn canonical_key(&self) -> SeedKey {
        let mut v = self.vars.clone();
        v.sort();
        SeedKey(v)
    }

    /// The two monomials of the exchange relation at `k`: `(∏_{b_jk>0} x_j^{b_jk}, ∏_{b_jk<0} x_j^{-b_jk})`.
    pub fn exchange_monomials(&self, k: usize) -> (LaurentPoly, LaurentPoly) {
        let m = self.vars[0].nvars();
        let mut pos = LaurentPoly::one(m);
        let mut neg = LaurentPoly::one(m);
        for j in 0..self.n() {
            let bjk = self.quiver.b(j, k);
            if bjk > 0 {
                pos = pos.mul(&self.vars[j].pow(bjk as u32)).expect("same arity");
            } else if bjk < 0 {
                neg = neg.mul(&self.vars[j].pow((-bjk) as u32)).expect("same arity");
            }
        }
        (pos, neg)
    }

    /// Mutation without tilt tracking (the tilt is dropped).
    pub fn mutate(&self, k: usize) -> Result<Seed, CombError> {
        self.mutate_with(k, &NoTracking)
    }

    pub fn mutate_with(&self, k: usize, tracker: &dyn TiltTracker) -> Result<Seed, CombError> {
        if k >= self.n() {
            return Err(CombError::Vertex(k + 1, self.n()));
        }
        let (pos, neg) = self.exchange_monomials(k);
        let new_var = pos.add(&neg)?.exact_div(&self.vars[k]).map_err(|e| match e {
            LaurentError::NotDivisible => CombError::NonLaurent(k + 1),
            other => other.into(),
        })?;
        let tilt = match &self.tilt {
            Some(t) if tracker.enabled() => {
                let partner = tracker.exchange(self, k, &new_var).map_err(CombError::Tracking)?;
                let mut t = t.clone();
                t[k] = partner;
                Some(t)
            }
            _ => None,
        };
        let mut vars = self.vars.clone();
        vars[k] = new_var;
        let mut trace = self.trace.clone();
        trace.push(k);
        Ok(Seed { quiver: self.quiver.mutate(k)?, vars, trace, tilt })
    }
}

/// Supplies the exchange partner of a tracked cluster-tilting object.
pub trait TiltTracker: Sync {
    fn enabled(&self) -> bool {
        true
    }
    /// Replacement for `seed.tilt[k]` when `seed` is mutated at `k`, producing `new_var`.
    fn exchange(&self, seed: &Seed, k: usize, new_var: &LaurentPoly) -> Result<ObjLabel, String>;
}

pub struct NoTracking;

impl TiltTracker for NoTracking {
    fn enabled(&self) -> bool {
        false
    }
    fn exchange(&self, _: &Seed, _: usize, _: &LaurentPoly) -> Result<ObjLabel, String> {
        Err("tracking disabled".into())
    }
}

#[derive(Clone, Debug)]
pub struct VarEntry {
    /// In the variables of the registry's root seed.
    pub local: LaurentPoly,
    pub object: Option<ObjLabel>,
    /// Trace of the first seed (in canonical order) where the variable appears.
    pub first_trace: Vec<usize>,
}

/// One mutation step between two registered seeds.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Edge {
    pub from: SeedKey,
    pub k: usize,
    pub to: SeedKey,
}

#[derive(Clone, Debug)]
pub struct Registry {
    pub root: Seed,
    pub depth: Option<usize>,
    /// True when no unexplored frontier remains.
    pub complete: bool,
    pub seeds: BTreeMap<SeedKey, Seed>,
    pub variables: BTreeMap<LaurentPoly, VarEntry>,
    pub edges: Vec<Edge>,
}

impl Registry {
    pub fn num_seeds(&self) -> usize {
        self.seeds.len()
    }

    pub fn num_variables(&self) -> usize {
        self.variables.len()
    }

    pub fn object_of(&self, var: &LaurentPoly) -> Option<&ObjLabel> {
        self.variables.get(var).and_then(|e| e.object.as_ref())
    }

    fn insert_seed(&mut self, key: SeedKey, seed: Seed) -> Result<(), CombError> {
        for (i, v) in seed.vars.iter().enumerate() {
            let obj = seed.tilt.as_ref().map(|t| t[i].clone());
            match self.variables.get(v) {
                Some(e) => {
                    if let (Some(a), Some(b)) = (&e.object, &obj) {
                        if a != b {
                            return Err(CombError::TrackingConflict(v.to_string(), a.clone(), b.clone()));
                        }
                    }
                }
                None => {
                    self.variables
                        .insert(v.clone(), VarEntry { local: v.clone(), object: obj, first_trace: seed.trace.clone() });
                }
            }
        }
        self.seeds.insert(key, seed);
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct EnumerateOptions {
    pub depth: Option<usize>,
    pub max_seeds: usize,
    /// The root is known to be mutation-equivalent to a Dynkin quiver, so the
    /// exploration terminates without a depth bound.
    pub finite_type: bool,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions { depth: None, max_seeds: 200_000, finite_type: false }
    }
}

impl EnumerateOptions {
    pub fn depth(depth: usize) -> Self {
        EnumerateOptions { depth: Some(depth), ..Default::default() }
    }
}

/// Breadth-first exploration of the exchange graph from `root`.
///
/// Each level's frontier is expanded in parallel, then merged in key order, so
/// the registry depends only on `(root, depth)`.
pub fn enumerate(root: &Seed, opts: &EnumerateOptions, tracker: &dyn TiltTracker) -> Result<Registry, CombError> {
    if opts.depth.is_none() && !opts.finite_type && !root.quiver.is_dynkin() {
        return Err(CombError::DepthRequired);
    }
    let mut reg = Registry {
        root: root.clone(),
        depth: opts.depth,
        complete: false,
        seeds: BTreeMap::new(),
        variables: BTreeMap::new(),
        edges: Vec::new(),
    };
    let root_key = root.canonical_key();
    reg.insert_seed(root_key.clone(), root.clone())?;
    let mut frontier = vec![root_key];
    let mut level = 0usize;
    while !frontier.is_empty() {
        if opts.depth.is_some_and(|d| level >= d) {
            return Ok(reg);
        }
        let jobs: Vec<(SeedKey, usize)> =
            frontier.iter().flat_map(|key| (0..root.n()).map(move |k| (key.clone(), k))).collect();
        let results: Vec<Result<(SeedKey, usize, Seed), CombError>> = jobs
            .par_iter()
            .map(|(key, k)| {
                let s = &reg.seeds[key];
                s.mutate_with(*k, tracker).map(|m| (key.clone(), *k, m))
            })
            .collect();
        let mut next = Vec::new();
        for r in results {
            let (from, k, seed) = r?;
            let key = seed.canonical_key();
            reg.edges.push(Edge { from, k, to: key.clone() });
            if !reg.seeds.contains_key(&key) {
                if reg.seeds.len() >= opts.max_seeds {
                    let depth = level + 1;
                    return Err(CombError::Budget { limit: opts.max_seeds, depth, partial: Box::new(reg) });
                }
                reg.insert_seed(key.clone(), seed)?;
                next.push(key);
            } else if let Some(t) = &seed.tilt {
                // the same cluster must carry the same objects
                let existing = &reg.seeds[&key];
                if let Some(et) = &existing.tilt {
                    for (v, o) in seed.vars.iter().zip(t) {
                        let pos = existing.vars.iter().position(|w| w == v).expect("same cluster");
                        if &et[pos] != o {
                            return Err(CombError::TrackingConflict(v.to_string(), et[pos].clone(), o.clone()));
                        }
                    }
                }
            }
        }
        next.sort();
        frontier = next;
        level += 1;
    }
    reg.complete = true;
    Ok(reg)
}

/// Convenience: a denominator vector that must exist (nonzero input).
pub fn denominator(f: &LaurentPoly) -> IntVector {
    f.denominator_vector().expect("cluster variables are nonzero")
}

/// Parses a mutation trace `mu(1,2,3)` or `id` into 0-indexed vertices.
pub fn parse_trace(s: &str, n: usize) -> Result<Vec<usize>, String> {
    let s = s.trim();
    if s == "id" || s == "mu()" || s.is_empty() {
        return Ok(Vec::new());
    }
    let inner = s
        .strip_prefix("mu(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| format!("expected `mu(i,j,…)` or `id`, got `{s}`"))?;
    inner
        .split(',')
        .map(|t| {
            let k: usize = t.trim().parse().map_err(|_| format!("bad vertex `{}` in trace", t.trim()))?;
            if k == 0 || k > n {
                return Err(format!("vertex {k} out of range 1..={n}"));
            }
            Ok(k - 1)
        })
        .collect()
}

pub fn render_trace(trace: &[usize]) -> String {
    if trace.is_empty() {
        return "id".into();
    }
    let parts: Vec<String> = trace.iter().map(|k| (k + 1).to_string()).collect();
    format!("mu({})", parts.join(","))
}

/// Applies a mutation trace from `root`.
pub fn follow_trace(root: &Seed, trace: &[usize], tracker: &dyn TiltTracker) -> Result<Seed, CombError> {
    let mut s = root.clone();
    for &k in trace {
        s = s.mutate_with(k, tracker)?;
    }
    Ok(s)
}

/// True when every coefficient of every variable is nonnegative.
pub fn all_coefficients_nonnegative(reg: &Registry) -> bool {
    reg.variables.keys().all(|v| v.has_nonnegative_coefficients())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a3() -> Quiver {
        Quiver::linear_a(3)
    }

    #[test]
    fn parse_and_render_quiver() {
        let q = Quiver::parse("# kronecker then tail\n1 -> 2 *2\n\n2 -> 3\n").unwrap();
        assert_eq!(q.n(), 3);
        assert_eq!(q.b(0, 1), 2);
        assert_eq!(q.b(2, 1), -1);
        assert_eq!(Quiver::parse(&q.to_text()).unwrap(), q);
        match Quiver::parse("1 -> 2\n2 -> x\n") {
            Err(CombError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(Quiver::parse("1 -> 1").is_err());
    }

    #[test]
    fn a2_mutation_reverses_arrow() {
        let q = Quiver::linear_a(2);
        let m = q.mutate(0).unwrap();
        assert_eq!(m.arrows(), vec![(1, 0, 1)]);
        assert!(matches!(q.mutate(2), Err(CombError::Vertex(3, 2))));
    }

    #[test]
    fn a3_mutation_at_middle() {
        let m = a3().mutate(1).unwrap();
        let mut arrows = m.arrows();
        arrows.sort();
        assert_eq!(arrows, vec![(0, 2, 1), (1, 0, 1), (2, 1, 1)]);
        assert!(!m.is_acyclic());
        assert_eq!(m.mutate(1).unwrap(), a3());
    }

    #[test]
    fn a2_exchange() {
        let s = Seed::root(Quiver::linear_a(2), None);
        let m = s.mutate(0).unwrap();
        assert_eq!(m.vars[0].render("u"), "(1 + u2) / u1");
        assert_eq!(m.mutate(0).unwrap().vars, s.vars);
        assert_ne!(m.canonical_key(), s.canonical_key());
    }

    #[test]
    fn pentagon() {
        let root = Seed::root(Quiver::linear_a(2), None);
        let mut s = root.clone();
        let mut keys = vec![s.canonical_key()];
        for step in 0..10 {
            s = s.mutate(step % 2).unwrap();
            keys.push(s.canonical_key());
        }
        assert_eq!(s.vars, root.vars);
        let distinct: BTreeSet<_> = keys.iter().collect();
        assert_eq!(distinct.len(), 5);
    }

    #[test]
    fn dynkin_detection() {
        assert!(Quiver::linear_a(5).is_dynkin());
        let d4 = Quiver::from_arrows(4, &[(0, 1, 1), (2, 1, 1), (3, 1, 1)]).unwrap();
        assert!(d4.is_dynkin());
        let kron = Quiver::from_arrows(2, &[(0, 1, 2)]).unwrap();
        assert!(!kron.is_dynkin());
        let d4_tilde = Quiver::from_arrows(5, &[(0, 1, 1), (2, 1, 1), (3, 1, 1), (4, 1, 1)]).unwrap();
        assert!(!d4_tilde.is_dynkin());
    }

    #[test]
    fn depth_zero_and_required_depth() {
        let root = Seed::root(a3(), None);
        let reg = enumerate(&root, &EnumerateOptions::depth(0), &NoTracking).unwrap();
        assert_eq!(reg.num_seeds(), 1);
        assert!(!reg.complete);
        let kron = Seed::root(Quiver::from_arrows(2, &[(0, 1, 2)]).unwrap(), None);
        assert!(matches!(enumerate(&kron, &EnumerateOptions::default(), &NoTracking), Err(CombError::DepthRequired)));
    }

    #[test]
    fn budget_keeps_partial_results() {
        let root = Seed::root(a3(), None);
        let opts = EnumerateOptions { depth: None, max_seeds: 4, finite_type: false };
        match enumerate(&root, &opts, &NoTracking) {
            Err(CombError::Budget { partial, limit, .. }) => {
                assert_eq!(limit, 4);
                assert_eq!(partial.num_seeds(), 4);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn traces() {
        assert_eq!(parse_trace("mu(2,1,3)", 3).unwrap(), vec![1, 0, 2]);
        assert_eq!(parse_trace("id", 3).unwrap(), Vec::<usize>::new());
        assert!(parse_trace("mu(4)", 3).is_err());
        assert_eq!(render_trace(&[1, 0]), "mu(2,1)");
    }

    #[test]
    fn labels_roundtrip() {
        for s in ["dim:1,0,2", "sp:3"] {
            assert_eq!(s.parse::<ObjLabel>().unwrap().to_string(), s);
        }
        assert!("dim:0,0".parse::<ObjLabel>().is_err());
    }
}
