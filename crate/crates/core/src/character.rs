//! Cluster characters `X^T_M` from quiver-Grassmannian Euler characteristics.
//!
//! `X^T_M = Σ_e χ(Gr_e(FM)) ∏_i x_i^{⟨S_i,e⟩_a − ⟨S_i,FM⟩}`, with `X^T_{ST_i} = x_i`
//! and multiplicativity on direct sums. Dimensions and the Euler form are
//! computed over `Q`; point counts use the same context rebuilt over `F_p`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::clustercat::{CObj, CatError, ClusterCategory, TiltingContext};
use crate::combinatorics::ObjLabel;
use crate::fdalg::{self, AlgError, EulerFit, FdModule};
use crate::field::{PrimeField, Rationals};
use crate::laurent::LaurentPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharError {
    #[error(transparent)]
    Cat(#[from] CatError),
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error("F({label}) has dimension vector {rational:?} over Q but {modular:?} over F_{p}")]
    FieldMismatch { label: String, p: u64, rational: Vec<usize>, modular: Vec<usize> },
}

#[derive(Clone, Debug)]
pub struct CharacterOptions {
    /// Primes always used for point counts; extended when a fit needs more.
    pub primes: Vec<u64>,
    /// Search-node budget per submodule count.
    pub budget: u64,
}

impl Default for CharacterOptions {
    fn default() -> Self {
        CharacterOptions { primes: vec![2, 3, 5, 7, 11], budget: 20_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterTerm {
    pub e: Vec<usize>,
    pub chi: i64,
    pub exponent: Vec<i64>,
    pub fit: Option<EulerFit>,
}

/// `X^T_M` for an indecomposable `M`, with its term ledger.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterResult {
    pub object: ObjLabel,
    pub value: LaurentPoly,
    /// `dim FM`; empty when `M = ST_i`.
    pub f_dims: Vec<usize>,
    pub terms: Vec<CharacterTerm>,
}

impl CharacterResult {
    /// Rebuilds the value from the ledger.
    pub fn ledger_sum(&self) -> LaurentPoly {
        let n = self.value.nvars();
        let mut acc = LaurentPoly::zero(n);
        for t in &self.terms {
            let exps: Vec<i32> = t.exponent.iter().map(|&x| x as i32).collect();
            acc = acc.add(&LaurentPoly::monomial(n, exps, BigInt::from(t.chi))).expect("same arity");
        }
        acc
    }
}

/// `X^T_M` for an object with several summands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObjectCharacter {
    pub object: CObj,
    pub value: LaurentPoly,
    pub factors: Vec<(usize, Arc<CharacterResult>)>,
}

type CtxKey = Vec<ObjLabel>;

/// Evaluates cluster characters, caching prime-field categories, contexts and results.
pub struct CharacterEngine<'a> {
    cat: &'a ClusterCategory<Rationals>,
    options: CharacterOptions,
    prime_cats: Mutex<BTreeMap<u64, Arc<ClusterCategory<PrimeField>>>>,
    prime_ctx: Mutex<HashMap<(u64, CtxKey), Arc<TiltingContext<PrimeField>>>>,
    results: Mutex<HashMap<(CtxKey, ObjLabel), Arc<CharacterResult>>>,
}

impl<'a> CharacterEngine<'a> {
    pub fn new(cat: &'a ClusterCategory<Rationals>, options: CharacterOptions) -> Self {
        CharacterEngine {
            cat,
            options,
            prime_cats: Mutex::new(BTreeMap::new()),
            prime_ctx: Mutex::new(HashMap::new()),
            results: Mutex::new(HashMap::new()),
        }
    }

    pub fn category(&self) -> &ClusterCategory<Rationals> {
        self.cat
    }

    fn prime_category(&self, p: u64) -> Result<Arc<ClusterCategory<PrimeField>>, CatError> {
        if let Some(c) = self.prime_cats.lock().unwrap().get(&p) {
            return Ok(c.clone());
        }
        let k = PrimeField::new(p).expect("configured primes are prime");
        let c = Arc::new(ClusterCategory::new(k, self.cat.quiver(), self.cat.config().clone())?);
        Ok(self.prime_cats.lock().unwrap().entry(p).or_insert(c).clone())
    }

    fn prime_context(&self, p: u64, r: &[ObjLabel]) -> Result<Arc<TiltingContext<PrimeField>>, CatError> {
        let key = (p, r.to_vec());
        if let Some(c) = self.prime_ctx.lock().unwrap().get(&key) {
            return Ok(c.clone());
        }
        let cat = self.prime_category(p)?;
        let ctx = Arc::new(TiltingContext::new_unaudited(&cat, r)?);
        Ok(self.prime_ctx.lock().unwrap().entry(key).or_insert(ctx).clone())
    }

    /// `F M` over `F_p`, checked to have the same dimension vector as over `Q`.
    fn modular_module(&self, p: u64, r: &[ObjLabel], m: &ObjLabel, dims: &[usize]) -> Result<(Arc<TiltingContext<PrimeField>>, FdModule<u64>), CharError> {
        let ctx = self.prime_context(p, r)?;
        let cat = self.prime_category(p)?;
        let fm = ctx.f_module(&cat, m)?;
        if fm.dims != dims {
            return Err(CharError::FieldMismatch { label: m.to_string(), p, rational: dims.to_vec(), modular: fm.dims });
        }
        Ok((ctx, fm))
    }

    /// `X^T_M` for an indecomposable `M`.
    pub fn indecomposable(&self, ctx: &TiltingContext<Rationals>, m: &ObjLabel) -> Result<Arc<CharacterResult>, CharError> {
        let key = (ctx.r.clone(), m.clone());
        if let Some(r) = self.results.lock().unwrap().get(&key) {
            return Ok(r.clone());
        }
        let res = Arc::new(self.compute(ctx, m)?);
        Ok(self.results.lock().unwrap().entry(key).or_insert(res).clone())
    }

    fn compute(&self, ctx: &TiltingContext<Rationals>, m: &ObjLabel) -> Result<CharacterResult, CharError> {
        let n = ctx.n();
        if let Some(i) = ctx.shifted_summand(m) {
            let mut exponent = vec![0i64; n];
            exponent[i] = 1;
            return Ok(CharacterResult {
                object: m.clone(),
                value: LaurentPoly::var(n, i),
                f_dims: Vec::new(),
                terms: vec![CharacterTerm { e: vec![0; n], chi: 1, exponent, fit: None }],
            });
        }
        let fm = ctx.f_module(self.cat, m)?;
        let dims = fm.dims.clone();
        let base: Vec<i64> =
            (0..n).map(|i| ctx.algebra.euler_form(&ctx.algebra.simple(i), &fm)).collect::<Result<_, _>>()?;
        let boxes = dimension_box(&dims);
        let max_degree = boxes.iter().map(|e| fdalg::grassmannian_degree_bound(&dims, e)).max().unwrap_or(0);
        let primes = fdalg::primes_for_degree(max_degree, &self.options.primes);
        let modular: Vec<(u64, (Arc<TiltingContext<PrimeField>>, FdModule<u64>))> = primes
            .par_iter()
            .map(|&p| self.modular_module(p, &ctx.r, m, &dims).map(|x| (p, x)))
            .collect::<Result<_, _>>()?;
        let terms: Vec<CharacterTerm> = boxes
            .par_iter()
            .map(|e| {
                let degree = fdalg::grassmannian_degree_bound(&dims, e);
                let ps = fdalg::primes_for_degree(degree, &self.options.primes);
                let counts: Vec<BigInt> = ps
                    .iter()
                    .map(|p| {
                        let (c, fm) = &modular.iter().find(|(q, _)| q == p).expect("prime prepared").1;
                        fdalg::count_submodules(&c.algebra, fm, e, self.options.budget)
                    })
                    .collect::<Result<_, _>>()?;
                let fit = fdalg::fit_counts(e, &ps, &counts, degree)?;
                let exponent: Vec<i64> = (0..n)
                    .map(|i| (0..n).map(|j| ctx.antisym[i][j] * e[j] as i64).sum::<i64>() - base[i])
                    .collect();
                Ok(CharacterTerm { e: e.clone(), chi: fit.chi, exponent, fit: Some(fit) })
            })
            .collect::<Result<_, CharError>>()?;
        let mut res = CharacterResult { object: m.clone(), value: LaurentPoly::zero(n), f_dims: dims, terms };
        res.value = res.ledger_sum();
        Ok(res)
    }

    /// `X^T_M`, multiplicative over the summands of `M`.
    pub fn character(&self, ctx: &TiltingContext<Rationals>, m: &CObj) -> Result<ObjectCharacter, CharError> {
        let n = ctx.n();
        let mut value = LaurentPoly::one(n);
        let mut factors = Vec::new();
        for (l, mult) in m.summands() {
            let r = self.indecomposable(ctx, l)?;
            value = value.mul(&r.value.pow(mult as u32)).expect("same arity");
            factors.push((mult, r));
        }
        Ok(ObjectCharacter { object: m.clone(), value, factors })
    }
}

/// The context of the initial seed: `ST_i = SP_i`, so `T = ⊕ P_i` and `B = kQ`.
pub fn root_context(cat: &ClusterCategory<Rationals>) -> Result<TiltingContext<Rationals>, CatError> {
    let r: Vec<ObjLabel> = (0..cat.n()).map(ObjLabel::Shift).collect();
    TiltingContext::new(cat, &r)
}

/// The classical Caldero-Chapoton value of `M`, in the initial variables.
pub fn classical_cc(engine: &CharacterEngine<'_>, root: &TiltingContext<Rationals>, m: &CObj) -> Result<ObjectCharacter, CharError> {
    engine.character(root, m)
}

/// All `e` with `0 ≤ e ≤ d`, in lexicographic order.
pub fn dimension_box(d: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &di in d {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=di).map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clustercat::CategoryConfig;
    use crate::combinatorics::Quiver;
    use crate::laurent::IntVector;

    #[test]
    fn a2_simple_character() {
        let cat = ClusterCategory::new(Rationals, &Quiver::linear_a(2), CategoryConfig::default()).unwrap();
        let ctx = root_context(&cat).unwrap();
        let eng = CharacterEngine::new(&cat, CharacterOptions::default());
        let s1 = ObjLabel::Mod(IntVector(vec![1, 0]));
        let r = eng.indecomposable(&ctx, &s1).unwrap();
        assert_eq!(r.value.render("x"), "(1 + x2) / x1");
        assert_eq!(r.value, r.ledger_sum());
        let sp = eng.indecomposable(&ctx, &ObjLabel::Shift(1)).unwrap();
        assert_eq!(sp.value, LaurentPoly::var(2, 1));
        let sq = eng.character(&ctx, &CObj::single(s1.clone()).with(s1.clone(), 1)).unwrap();
        assert_eq!(sq.value, r.value.pow(2));
        assert_eq!(eng.character(&ctx, &CObj::zero()).unwrap().value, LaurentPoly::one(2));
    }

    #[test]
    fn box_order() {
        assert_eq!(dimension_box(&[1, 2]), vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 0], vec![1, 1], vec![1, 2]]);
    }
}
