//! Campaigns checking denominator vectors of cluster variables against
//! Hom-dimension vectors, exchange compatibility, the multiplication formula
//! for cluster characters, and the converse statement about endomorphism rings.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::character::{CharError, CharacterEngine};
use crate::clustercat::{CObj, CatError, ClusterCategory, ClusterTracker, Exchange, TiltingContext};
use crate::combinatorics::{
    denominator, enumerate, follow_trace, render_trace, CombError, EnumerateOptions, ObjLabel, Registry, Seed, SeedKey,
};
use crate::field::{Field, Rationals};
use crate::laurent::{weak_positivity_certificate, IntVector, LaurentPoly, Positivity};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Cat(#[from] CatError),
    #[error(transparent)]
    Comb(#[from] CombError),
    #[error(transparent)]
    Char(#[from] CharError),
    #[error("registry has no tracked object for {0}")]
    Untracked(String),
}

#[derive(Clone, Debug)]
pub struct CampaignOptions {
    /// Exploration depth; required outside finite type.
    pub depth: Option<usize>,
    /// Depth of the registry searched around a converse witness.
    pub search_depth: usize,
}

impl Default for CampaignOptions {
    fn default() -> Self {
        CampaignOptions { depth: None, search_depth: 1 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Inconclusive,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 2,
            Outcome::Inconclusive => 3,
        }
    }

    /// Failures dominate inconclusive results, which dominate passes.
    pub fn combine(self, other: Outcome) -> Outcome {
        match (self, other) {
            (Outcome::Fail, _) | (_, Outcome::Fail) => Outcome::Fail,
            (Outcome::Inconclusive, _) | (_, Outcome::Inconclusive) => Outcome::Inconclusive,
            _ => Outcome::Pass,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompatibilityReport {
    pub probe: ObjLabel,
    pub u: ObjLabel,
    pub ustar: ObjLabel,
    pub e: CObj,
    pub eprime: CObj,
    pub lhs: usize,
    pub rhs: usize,
    /// `U ≅ τN` or `U* ≅ τN`.
    pub skipped: bool,
    /// `None` when skipped.
    pub compatible: Option<bool>,
}

/// `dim Hom_C(N,U) + dim Hom_C(N,U*) = max(dim Hom_C(N,E), dim Hom_C(N,E′))` unless `τN ∈ {U, U*}`.
pub fn check_compatibility<K: Field>(cat: &ClusterCategory<K>, n: &ObjLabel, ex: &Exchange) -> Result<CompatibilityReport, CatError> {
    let tn = cat.tau(n)?;
    let lhs = cat.hom_dim(n, &ex.u)? + cat.hom_dim(n, &ex.ustar)?;
    let rhs = cat.hom_dim_obj(n, &ex.e)?.max(cat.hom_dim_obj(n, &ex.eprime)?);
    let skipped = tn == ex.u || tn == ex.ustar;
    Ok(CompatibilityReport {
        probe: n.clone(),
        u: ex.u.clone(),
        ustar: ex.ustar.clone(),
        e: ex.e.clone(),
        eprime: ex.eprime.clone(),
        lhs,
        rhs,
        skipped,
        compatible: (!skipped).then_some(lhs == rhs),
    })
}

/// Registry rooted at the initial seed with `ST_i = SP_i` tracked along mutations.
pub fn tracked_registry<K: Field>(cat: &ClusterCategory<K>, depth: Option<usize>) -> Result<Registry, VerifyError> {
    let root = root_seed(cat);
    let opts = EnumerateOptions { depth, ..Default::default() };
    Ok(enumerate(&root, &opts, &ClusterTracker::new(cat))?)
}

pub fn root_seed<K: Field>(cat: &ClusterCategory<K>) -> Seed {
    Seed::root(cat.quiver().clone(), Some((0..cat.n()).map(ObjLabel::Shift).collect()))
}

/// Registry rooted at `seed`, in its own cluster variables `x_i`.
pub fn x_registry<K: Field>(cat: &ClusterCategory<K>, seed: &Seed, depth: Option<usize>) -> Result<Registry, VerifyError> {
    let root = Seed::root(seed.quiver.clone(), seed.tilt.clone());
    let tracker = ClusterTracker::with_images(cat, seed.vars.clone());
    let opts = EnumerateOptions { depth, finite_type: cat.is_finite_type(), ..Default::default() };
    Ok(enumerate(&root, &opts, &tracker)?)
}

/// The exchange pair behind every explored edge, each unordered edge once.
pub fn exchange_pairs(reg: &Registry) -> Result<Vec<Exchange>, VerifyError> {
    let mut seen: BTreeSet<(SeedKey, SeedKey)> = BTreeSet::new();
    let mut out = Vec::new();
    for edge in &reg.edges {
        let pair = if edge.from <= edge.to { (edge.from.clone(), edge.to.clone()) } else { (edge.to.clone(), edge.from.clone()) };
        if !seen.insert(pair) {
            continue;
        }
        let from = &reg.seeds[&edge.from];
        let to = &reg.seeds[&edge.to];
        let (Some(r), Some(r2)) = (&from.tilt, &to.tilt) else {
            return Err(VerifyError::Untracked(render_trace(&from.trace)));
        };
        let new_var = &from.mutate(edge.k)?.vars[edge.k];
        let pos = to.vars.iter().position(|v| v == new_var).expect("mutated variable lies in the target seed");
        let mut e = CObj::zero();
        let mut eprime = CObj::zero();
        for (j, rj) in r.iter().enumerate() {
            let b = from.quiver.b(j, edge.k);
            if b > 0 {
                e = e.with(rj.clone(), b as usize);
            } else if b < 0 {
                eprime = eprime.with(rj.clone(), (-b) as usize);
            }
        }
        out.push(Exchange { k: edge.k, u: r[edge.k].clone(), ustar: r2[pos].clone(), e, eprime });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DenominatorRecord {
    pub variable: String,
    pub object: ObjLabel,
    pub expected: IntVector,
    pub actual: IntVector,
    pub pass: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AuditSummary {
    pub checked: usize,
    pub failed: usize,
    pub failures: Vec<String>,
}

impl AuditSummary {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < 50 {
                self.failures.push(what());
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HypothesisSummary {
    pub checked: usize,
    pub compatible: usize,
    pub incompatible: usize,
    pub skipped: usize,
    pub failures: Vec<CompatibilityReport>,
    /// Exploration depth the hypothesis was checked against; `None` for the full exchange graph.
    pub depth: Option<usize>,
}

impl HypothesisSummary {
    pub fn holds(&self) -> bool {
        self.incompatible == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub records: usize,
    pub failures: usize,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub campaign: String,
    pub quiver: String,
    pub trace: String,
    pub depth: Option<usize>,
    pub tilting_object: Vec<ObjLabel>,
    pub hypothesis: Option<HypothesisSummary>,
    pub records: Vec<DenominatorRecord>,
    pub audits: BTreeMap<String, AuditSummary>,
    pub summary: Summary,
}

/// Compatibility of each `T_i` with every exchange pair of the root registry.
pub fn hypothesis<K: Field>(cat: &ClusterCategory<K>, t: &[ObjLabel], exchanges: &[Exchange], depth: Option<usize>) -> Result<HypothesisSummary, CatError> {
    let reports: Vec<CompatibilityReport> = t
        .par_iter()
        .flat_map(|ti| exchanges.par_iter().map(move |ex| check_compatibility(cat, ti, ex)))
        .collect::<Result<_, _>>()?;
    let mut h = HypothesisSummary { depth, ..Default::default() };
    for r in reports {
        h.checked += 1;
        match r.compatible {
            None => h.skipped += 1,
            Some(true) => h.compatible += 1,
            Some(false) => {
                h.incompatible += 1;
                if h.failures.len() < 50 {
                    h.failures.push(r);
                }
            }
        }
    }
    Ok(h)
}

/// Expected denominator of the variable attached to `m`: `−e_i` for `ST_i`, otherwise `dim Hom_C(T, M)`.
pub fn expected_denominator<K: Field>(cat: &ClusterCategory<K>, r: &[ObjLabel], t: &[ObjLabel], m: &ObjLabel) -> Result<IntVector, CatError> {
    if let Some(i) = r.iter().position(|x| x == m) {
        return Ok(IntVector::unit(r.len(), i).scaled(-1));
    }
    Ok(IntVector(t.iter().map(|ti| cat.hom_dim(ti, m).map(|d| d as i64)).collect::<Result<_, _>>()?))
}

/// Denominator records for all variables of `xreg` in the context of its root seed.
fn denominator_records<K: Field>(cat: &ClusterCategory<K>, xreg: &Registry) -> Result<Vec<DenominatorRecord>, VerifyError> {
    let r = xreg.root.tilt.clone().ok_or_else(|| VerifyError::Untracked("root".into()))?;
    let t: Vec<ObjLabel> = r.iter().map(|l| cat.tau_inv(l)).collect::<Result<_, _>>()?;
    let vars: Vec<(&LaurentPoly, &crate::combinatorics::VarEntry)> = xreg.variables.iter().collect();
    vars.par_iter()
        .map(|(x, entry)| {
            let m = entry.object.clone().ok_or_else(|| VerifyError::Untracked(x.render("x")))?;
            let expected = expected_denominator(cat, &r, &t, &m)?;
            let actual = denominator(x);
            Ok(DenominatorRecord { variable: x.render("x"), object: m, pass: expected == actual, expected, actual })
        })
        .collect()
}

/// `δ(x_k) + δ(x_k') = max(δ(E), δ(E′))` on every mutation of `xreg`, and the
/// middle terms share no summand.
fn exchange_audits(xreg: &Registry, audits: &mut BTreeMap<String, AuditSummary>) -> Result<(), VerifyError> {
    let mut max_id = AuditSummary::default();
    let mut basic = AuditSummary::default();
    for edge in &xreg.edges {
        let s = &xreg.seeds[&edge.from];
        let k = edge.k;
        let (pos, neg) = s.exchange_monomials(k);
        let new_var = &s.mutate(k)?.vars[k];
        let lhs = &denominator(&s.vars[k]) + &denominator(new_var);
        let rhs = IntVector::max(&denominator(&pos), &denominator(&neg));
        max_id.record(lhs == rhs, || format!("{} at {}: {} vs {}", render_trace(&s.trace), k + 1, lhs, rhs));
        if let Some(r) = &s.tilt {
            let e: BTreeSet<&ObjLabel> = (0..s.n()).filter(|&j| s.quiver.b(j, k) > 0).map(|j| &r[j]).collect();
            let ep: BTreeSet<&ObjLabel> = (0..s.n()).filter(|&j| s.quiver.b(j, k) < 0).map(|j| &r[j]).collect();
            basic.record(e.is_disjoint(&ep), || format!("{} at {}", render_trace(&s.trace), k + 1));
        }
    }
    audits.insert("max_identity".into(), max_id);
    audits.insert("basic_middle_terms".into(), basic);
    Ok(())
}

/// The seed reached by `trace` in a tracked registry.
pub fn seed_at<K: Field>(cat: &ClusterCategory<K>, trace: &[usize]) -> Result<Seed, VerifyError> {
    Ok(follow_trace(&root_seed(cat), trace, &ClusterTracker::new(cat))?)
}

/// T-denominator campaign for the seed at `trace`.
///
/// `root_reg` is the tracked registry from the initial seed; its exchange
/// pairs are the ones the compatibility hypothesis is tested against.
pub fn verify_denominators<K: Field>(
    cat: &ClusterCategory<K>,
    root_reg: &Registry,
    exchanges: &[Exchange],
    trace: &[usize],
    opts: &CampaignOptions,
) -> Result<VerificationReport, VerifyError> {
    let seed = seed_at(cat, trace)?;
    let r = seed.tilt.clone().expect("tracked seed");
    let t: Vec<ObjLabel> = r.iter().map(|l| cat.tau_inv(l)).collect::<Result<_, _>>()?;
    let depth = if cat.is_finite_type() { None } else { opts.depth };
    let hyp = hypothesis(cat, &t, exchanges, depth)?;
    let xreg = x_registry(cat, &seed, depth)?;
    let records = denominator_records(cat, &xreg)?;
    let mut audits = BTreeMap::new();
    exchange_audits(&xreg, &mut audits)?;
    // substituting the seed's initial-cluster expressions recovers the initial registry
    let mut phi = AuditSummary::default();
    for (x, entry) in &xreg.variables {
        let u = x.substitute(&seed.vars).map_err(CombError::from)?;
        match root_reg.variables.get(&u) {
            Some(e) => phi.record(e.object == entry.object, || format!("{} tracked as {:?} and {:?}", x.render("x"), entry.object, e.object)),
            None if !root_reg.complete => {}
            None => phi.record(false, || format!("{} maps outside the initial registry", x.render("x"))),
        }
    }
    audits.insert("substitution".into(), phi);
    let failures = records.iter().filter(|r| !r.pass).count();
    let audit_fail = audits.values().any(|a| a.failed > 0);
    let outcome = if failures == 0 && hyp.holds() && !audit_fail { Outcome::Pass } else { Outcome::Fail };
    Ok(VerificationReport {
        campaign: "denominator".into(),
        quiver: cat.quiver().to_text(),
        trace: render_trace(trace),
        depth,
        tilting_object: r,
        hypothesis: Some(hyp),
        summary: Summary { records: records.len(), failures, outcome },
        records,
        audits,
    })
}

/// One T-denominator campaign per seed of `root_reg`, in registry order.
pub fn verify_all_seeds<K: Field>(cat: &ClusterCategory<K>, root_reg: &Registry, opts: &CampaignOptions) -> Result<Vec<VerificationReport>, VerifyError> {
    let exchanges = exchange_pairs(root_reg)?;
    let traces: Vec<Vec<usize>> = root_reg.seeds.values().map(|s| s.trace.clone()).collect();
    traces.par_iter().map(|t| verify_denominators(cat, root_reg, &exchanges, t, opts)).collect()
}

/// `δ(u) = dim M` (or `−e_i` for `SP_i`) for every variable of the initial registry.
pub fn initial_denominator_records(n: usize, reg: &Registry) -> Result<Vec<DenominatorRecord>, VerifyError> {
    reg.variables
        .iter()
        .map(|(u, e)| {
            let m = e.object.clone().ok_or_else(|| VerifyError::Untracked(u.render("u")))?;
            let expected = m.dim_vector(n);
            let actual = denominator(u);
            Ok(DenominatorRecord { variable: u.render("u"), object: m, pass: expected == actual, expected, actual })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterRecord {
    pub variable: String,
    pub object: ObjLabel,
    pub character: String,
    pub equal: bool,
    pub positivity: Positivity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterReport {
    pub campaign: String,
    pub quiver: String,
    pub trace: String,
    pub tilting_object: Vec<ObjLabel>,
    pub records: Vec<CharacterRecord>,
    pub multiplication: AuditSummary,
    pub positivity: AuditSummary,
    /// Point-count fits performed, all with zero residual.
    pub fits: usize,
    pub summary: Summary,
}

/// `X^T_M` against the registry's `x`-coordinates for every variable, and the
/// multiplication formula on every exchange pair.
pub fn verify_characters(
    engine: &CharacterEngine<'_>,
    exchanges: &[Exchange],
    trace: &[usize],
    depth: Option<usize>,
) -> Result<CharacterReport, VerifyError> {
    let cat = engine.category();
    let seed = seed_at(cat, trace)?;
    let r = seed.tilt.clone().expect("tracked seed");
    let ctx = TiltingContext::new(cat, &r)?;
    let xreg = x_registry(cat, &seed, if cat.is_finite_type() { None } else { depth })?;
    let vars: Vec<(&LaurentPoly, &crate::combinatorics::VarEntry)> = xreg.variables.iter().collect();
    let records: Vec<CharacterRecord> = vars
        .par_iter()
        .map(|(x, entry)| {
            let m = entry.object.clone().ok_or_else(|| VerifyError::Untracked(x.render("x")))?;
            let c = engine.indecomposable(&ctx, &m)?;
            Ok(CharacterRecord {
                variable: x.render("x"),
                object: m,
                character: c.value.render("x"),
                equal: c.value == **x && c.ledger_sum() == c.value,
                positivity: weak_positivity_certificate(&c.value),
            })
        })
        .collect::<Result<_, VerifyError>>()?;
    let mut mult = AuditSummary::default();
    let checks: Vec<(bool, String)> = exchanges
        .par_iter()
        .map(|ex| {
            let a = engine.indecomposable(&ctx, &ex.u)?.value.mul(&engine.indecomposable(&ctx, &ex.ustar)?.value).expect("arity");
            let b = engine.character(&ctx, &ex.e)?.value.add(&engine.character(&ctx, &ex.eprime)?.value).expect("arity");
            Ok((a == b, format!("{} * {} vs {} + {}", ex.u, ex.ustar, ex.e, ex.eprime)))
        })
        .collect::<Result<_, VerifyError>>()?;
    for (ok, what) in checks {
        mult.record(ok, || what);
    }
    let mut pos = AuditSummary::default();
    for rec in &records {
        pos.record(!matches!(rec.positivity, Positivity::Falsified { .. }), || rec.variable.clone());
    }
    let mut fits = 0;
    for rec in &records {
        fits += engine.indecomposable(&ctx, &rec.object)?.terms.iter().filter(|t| t.fit.is_some()).count();
    }
    let failures = records.iter().filter(|r| !r.equal).count() + mult.failed + pos.failed;
    let unknown = records.iter().any(|r| r.positivity == Positivity::Unknown);
    let outcome = if failures > 0 {
        Outcome::Fail
    } else if unknown {
        Outcome::Inconclusive
    } else {
        Outcome::Pass
    };
    Ok(CharacterReport {
        campaign: "character".into(),
        quiver: cat.quiver().to_text(),
        trace: render_trace(trace),
        tilting_object: r,
        summary: Summary { records: records.len(), failures, outcome },
        records,
        multiplication: mult,
        positivity: pos,
        fits,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub trace: String,
    #[serde(skip)]
    pub trace_steps: Vec<usize>,
    pub index: usize,
    pub summand: ObjLabel,
    pub end_dim: usize,
}

/// Seeds of `reg` whose object `T` has a summand with `dim End_C(T_i) > 1`.
pub fn scan_end_nontrivial<K: Field>(cat: &ClusterCategory<K>, reg: &Registry) -> Result<Vec<Witness>, VerifyError> {
    let seeds: Vec<&Seed> = reg.seeds.values().collect();
    let found: Vec<Vec<Witness>> = seeds
        .par_iter()
        .map(|s| {
            let r = s.tilt.as_ref().ok_or_else(|| VerifyError::Untracked(render_trace(&s.trace)))?;
            let mut out = Vec::new();
            for (i, ri) in r.iter().enumerate() {
                let ti = cat.tau_inv(ri)?;
                let d = cat.end_dim(&ti)?;
                if d > 1 {
                    out.push(Witness { trace: render_trace(&s.trace), trace_steps: s.trace.clone(), index: i, summand: ti, end_dim: d });
                }
            }
            Ok(out)
        })
        .collect::<Result<_, VerifyError>>()?;
    Ok(found.into_iter().flatten().collect())
}

/// Mutation trace from the initial seed to the seed whose `i`-th summand is `τ⁻¹ SP_i = P_i`.
pub fn projective_trace<K: Field>(cat: &ClusterCategory<K>) -> Result<Vec<usize>, VerifyError> {
    let tracker = ClusterTracker::new(cat);
    let n = cat.n();
    let mut cur = root_seed(cat);
    let mut done = vec![false; n];
    let mut trace = Vec::with_capacity(n);
    while trace.len() < n {
        let mut step = None;
        for j in (0..n).filter(|&j| !done[j]) {
            let next = cur.mutate_with(j, &tracker)?;
            if next.tilt.as_ref().expect("tracked")[j] == cat.tau_inv(&ObjLabel::Shift(j))? {
                step = Some((j, next));
                break;
            }
        }
        let Some((j, next)) = step else {
            return Err(VerifyError::Untracked(format!("no projective step after {}", render_trace(&trace))));
        };
        done[j] = true;
        trace.push(j);
        cur = next;
    }
    Ok(trace)
}

/// Looks for a variable without a T-denominator, `T` being the object of the witness seed.
///
/// The seed of `T` itself is reached from the witness seed `R = τ T` by undoing
/// the witness trace, applying [`projective_trace`] and redoing the witness
/// trace; mutating it at the witness summand gives the exchange pair
/// `(T_i, T_i*)`. Every variable met on that route is checked, plus the
/// registry of radius `search_depth` around the witness seed.
pub fn verify_converse<K: Field>(
    cat: &ClusterCategory<K>,
    exchanges: &[Exchange],
    witness: &Witness,
    opts: &CampaignOptions,
) -> Result<VerificationReport, VerifyError> {
    let seed = seed_at(cat, &witness.trace_steps)?;
    let r = seed.tilt.clone().expect("tracked seed");
    let t: Vec<ObjLabel> = r.iter().map(|l| cat.tau_inv(l)).collect::<Result<_, _>>()?;
    let mut hyp = hypothesis(cat, &t[witness.index..=witness.index], exchanges, opts.depth)?;
    let mut audits = BTreeMap::new();
    let mut seen: BTreeMap<LaurentPoly, DenominatorRecord> = BTreeMap::new();
    let mut check = |x: &LaurentPoly, m: &ObjLabel| -> Result<(), CatError> {
        if !seen.contains_key(x) {
            let expected = expected_denominator(cat, &r, &t, m)?;
            let actual = denominator(x);
            seen.insert(x.clone(), DenominatorRecord { variable: x.render("x"), object: m.clone(), pass: expected == actual, expected, actual });
        }
        Ok(())
    };

    let tracker = ClusterTracker::with_images(cat, seed.vars.clone());
    let start = Seed::root(seed.quiver.clone(), seed.tilt.clone());
    let mut route: Vec<usize> = witness.trace_steps.iter().rev().copied().collect();
    route.extend(projective_trace(cat)?);
    route.extend(&witness.trace_steps);
    let mut cur = start;
    let mut route_audit = AuditSummary::default();
    for &k in &route {
        cur = cur.mutate_with(k, &tracker)?;
        let tilt = cur.tilt.as_ref().expect("tracked");
        check(&cur.vars[k], &tilt[k])?;
    }
    let tilt = cur.tilt.clone().expect("tracked");
    let reached: BTreeSet<&ObjLabel> = tilt.iter().collect();
    route_audit.record(reached == t.iter().collect(), || format!("route ends at {:?}, not {:?}", tilt, t));
    if let Some(p) = tilt.iter().position(|l| *l == t[witness.index]) {
        for (j, x) in cur.vars.iter().enumerate() {
            check(x, &tilt[j])?;
        }
        let ex = cat.exchange(&tilt, &cur.quiver, p, None)?;
        let rep = check_compatibility(cat, &t[witness.index], &ex)?;
        hyp.checked += 1;
        match rep.compatible {
            None => hyp.skipped += 1,
            Some(true) => hyp.compatible += 1,
            Some(false) => {
                hyp.incompatible += 1;
                hyp.failures.push(rep);
            }
        }
        let next = cur.mutate_with(p, &tracker)?;
        check(&next.vars[p], &next.tilt.as_ref().expect("tracked")[p])?;
    }
    audits.insert("route".into(), route_audit);

    let xreg = x_registry(cat, &seed, Some(opts.search_depth))?;
    for (x, entry) in &xreg.variables {
        let m = entry.object.clone().ok_or_else(|| VerifyError::Untracked(x.render("x")))?;
        check(x, &m)?;
    }
    let total = seen.len();
    let failing: Vec<DenominatorRecord> = seen.into_values().filter(|r| !r.pass).collect();
    let outcome = if failing.is_empty() { Outcome::Inconclusive } else { Outcome::Pass };
    let mut a = AuditSummary::default();
    for f in &failing {
        a.record(false, || format!("{}: expected {} actual {}", f.variable, f.expected, f.actual));
    }
    audits.insert("counterexamples".into(), a);
    Ok(VerificationReport {
        campaign: "converse".into(),
        quiver: cat.quiver().to_text(),
        trace: witness.trace.clone(),
        depth: Some(opts.search_depth),
        tilting_object: r,
        hypothesis: Some(hyp),
        summary: Summary { records: total, failures: failing.len(), outcome },
        records: failing,
        audits,
    })
}

/// Context of the initial seed, whose algebra is the path algebra.
pub fn root_tilting_context(cat: &ClusterCategory<Rationals>) -> Result<TiltingContext<Rationals>, CatError> {
    crate::character::root_context(cat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clustercat::CategoryConfig;
    use crate::combinatorics::Quiver;

    #[test]
    fn a2_campaigns() {
        let cat = ClusterCategory::new(Rationals, &Quiver::linear_a(2), CategoryConfig::default()).unwrap();
        let reg = tracked_registry(&cat, None).unwrap();
        assert_eq!(reg.num_variables(), 5);
        assert!(initial_denominator_records(2, &reg).unwrap().iter().all(|r| r.pass));
        let reports = verify_all_seeds(&cat, &reg, &CampaignOptions::default()).unwrap();
        assert_eq!(reports.len(), 5);
        for r in &reports {
            assert_eq!(r.summary.outcome, Outcome::Pass, "{}", serde_json::to_string_pretty(r).unwrap());
        }
        assert!(scan_end_nontrivial(&cat, &reg).unwrap().is_empty());
    }

    #[test]
    fn a2_compatibility_probe() {
        let cat = ClusterCategory::new(Rationals, &Quiver::linear_a(2), CategoryConfig::default()).unwrap();
        let reg = tracked_registry(&cat, None).unwrap();
        let ex = exchange_pairs(&reg).unwrap();
        assert_eq!(ex.len(), 5);
        for n in cat.pool() {
            for e in &ex {
                let rep = check_compatibility(&cat, n, e).unwrap();
                assert_ne!(rep.compatible, Some(false), "{rep:?}");
                assert_eq!(rep.skipped, cat.tau(n).unwrap() == e.u || cat.tau(n).unwrap() == e.ustar);
            }
        }
    }

    #[test]
    fn a2_characters() {
        let cat = ClusterCategory::new(Rationals, &Quiver::linear_a(2), CategoryConfig::default()).unwrap();
        let reg = tracked_registry(&cat, None).unwrap();
        let ex = exchange_pairs(&reg).unwrap();
        let eng = CharacterEngine::new(&cat, Default::default());
        for s in reg.seeds.values() {
            let rep = verify_characters(&eng, &ex, &s.trace, None).unwrap();
            assert_eq!(rep.summary.outcome, Outcome::Pass, "{}", serde_json::to_string_pretty(&rep).unwrap());
        }
    }
}
