//! Exact multivariate Laurent polynomials over arbitrary-precision integers.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vector, so iteration is in
//! lexicographic exponent order and two equal polynomials have identical
//! internal state. That makes [`LaurentPoly`] usable directly as a hash or
//! ordering key for deduplication.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaurentError {
    #[error("variable count mismatch: {0} vs {1}")]
    Arity(usize, usize),
    #[error("division is not exact in the Laurent ring")]
    NotDivisible,
    #[error("denominator vector of the zero polynomial is undefined")]
    Zero,
    #[error("substitution image {0} is zero")]
    ZeroImage(usize),
}

/// A vector in Z^n: denominator vectors, dimension vectors, unit vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntVector(pub Vec<i64>);

impl IntVector {
    pub fn zeros(n: usize) -> Self {
        IntVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        IntVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len());
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn scaled(&self, s: i64) -> Self {
        IntVector(self.0.iter().map(|a| a * s).collect())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&a| a >= 0)
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl std::ops::Add for &IntVector {
    type Output = IntVector;
    fn add(self, rhs: &IntVector) -> IntVector {
        assert_eq!(self.len(), rhs.len());
        IntVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl std::ops::Sub for &IntVector {
    type Output = IntVector;
    fn sub(self, rhs: &IntVector) -> IntVector {
        assert_eq!(self.len(), rhs.len());
        IntVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl std::ops::Neg for &IntVector {
    type Output = IntVector;
    fn neg(self) -> IntVector {
        IntVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

type Exponent = Vec<i32>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    n: usize,
    terms: BTreeMap<Exponent, BigInt>,
}

impl LaurentPoly {
    pub fn zero(n: usize) -> Self {
        LaurentPoly { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(n, vec![0; n], BigInt::one())
    }

    pub fn constant(n: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(n, vec![0; n], c.into())
    }

    /// The variable `u_i` (0-indexed).
    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Self::monomial(n, e, BigInt::one())
    }

    pub fn monomial(n: usize, exps: Vec<i32>, coeff: BigInt) -> Self {
        assert_eq!(exps.len(), n);
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exps, coeff);
        }
        LaurentPoly { n, terms }
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging repeats.
    pub fn from_terms<'a>(n: usize, terms: impl IntoIterator<Item = (&'a [i32], i64)>) -> Self {
        let mut p = LaurentPoly::zero(n);
        for (e, c) in terms {
            p.add_term(e.to_vec(), BigInt::from(c));
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i32], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coeff(&self, exps: &[i32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, exps: Exponent, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_arity(&self, other: &Self) -> Result<(), LaurentError> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(LaurentError::Arity(self.n, other.n))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LaurentError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentPoly { n: self.n, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_arity(other)?;
        let mut out = LaurentPoly::zero(self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = LaurentPoly::one(self.n);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base).expect("same arity");
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).expect("same arity");
            }
        }
        acc
    }

    /// Multiplies by the monomial `u^shift`.
    pub fn shift(&self, shift: &[i32]) -> Self {
        LaurentPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Componentwise minimum exponent over all terms (zeros for the zero polynomial).
    fn min_exponents(&self) -> Exponent {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return vec![0; self.n];
        };
        let mut m = first.clone();
        for e in it {
            for (a, b) in m.iter_mut().zip(e) {
                *a = (*a).min(*b);
            }
        }
        m
    }

    /// Reduced presentation `f = P / u^d` with `P` a polynomial divisible by no `u_i`.
    pub fn reduced_form(&self) -> Result<(LaurentPoly, IntVector), LaurentError> {
        if self.is_zero() {
            return Err(LaurentError::Zero);
        }
        let m = self.min_exponents();
        let neg: Exponent = m.iter().map(|a| -a).collect();
        Ok((self.shift(&neg), IntVector(neg.iter().map(|&a| a as i64).collect())))
    }

    pub fn denominator_vector(&self) -> Result<IntVector, LaurentError> {
        Ok(self.reduced_form()?.1)
    }

    /// Rebuilds `P / u^d`.
    pub fn from_reduced(numerator: &LaurentPoly, d: &IntVector) -> Self {
        let shift: Exponent = d.0.iter().map(|&a| -(a as i32)).collect();
        numerator.shift(&shift)
    }

    /// Exact quotient `self / divisor` in the Laurent ring.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self, LaurentError> {
        self.check_arity(divisor)?;
        if divisor.is_zero() {
            return Err(LaurentError::NotDivisible);
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero(self.n));
        }
        let sd = divisor.min_exponents();
        let sf = self.min_exponents();
        let g = divisor.shift(&sd.iter().map(|a| -a).collect::<Vec<_>>());
        let mut r = self.shift(&sf.iter().map(|a| -a).collect::<Vec<_>>());
        let (glm, glc) = g.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let mut q = LaurentPoly::zero(self.n);
        while let Some((lm, lc)) = r.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            let qm: Exponent = lm.iter().zip(&glm).map(|(a, b)| a - b).collect();
            if qm.iter().any(|&a| a < 0) {
                return Err(LaurentError::NotDivisible);
            }
            let (qc, rem) = lc.div_rem(&glc);
            if !rem.is_zero() {
                return Err(LaurentError::NotDivisible);
            }
            for (e, c) in &g.terms {
                let em: Exponent = e.iter().zip(&qm).map(|(a, b)| a + b).collect();
                r.add_term(em, -(c * &qc));
            }
            q.add_term(qm, qc);
        }
        let shift: Exponent = sf.iter().zip(&sd).map(|(a, b)| a - b).collect();
        Ok(q.shift(&shift))
    }

    /// Evaluates a polynomial (all exponents non-negative) at a natural point.
    pub fn eval_polynomial(&self, point: &[u64]) -> BigInt {
        assert_eq!(point.len(), self.n);
        let mut total = BigInt::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                assert!(k >= 0, "negative exponent in polynomial evaluation");
                t *= num_traits::pow(BigInt::from(*x), k as usize);
            }
            total += t;
        }
        total
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Canonical text rendering with variables named `{prefix}1 … {prefix}n`.
    ///
    /// Numerator terms are listed by total degree, ties in descending
    /// lexicographic exponent order, so `1 + u1 + u2` reads naturally.
    pub fn render(&self, prefix: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let (_, d) = self.reduced_form().expect("nonzero");
        let den_shift: Exponent = d.0.iter().map(|&a| a.max(0) as i32).collect();
        let num = self.shift(&den_shift);
        let mut ordered: Vec<_> = num.terms.iter().collect();
        ordered.sort_by_key(|(e, _)| (e.iter().map(|&a| a as i64).sum::<i64>(), std::cmp::Reverse(e.to_vec())));
        let mut s = String::new();
        for (idx, (e, c)) in ordered.into_iter().enumerate() {
            let mono = render_monomial(e, prefix);
            let neg = c.is_negative();
            let a = c.abs();
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            match (mono.is_empty(), a.is_one()) {
                (true, _) => s.push_str(&a.to_string()),
                (false, true) => s.push_str(&mono),
                (false, false) => {
                    s.push_str(&a.to_string());
                    s.push('*');
                    s.push_str(&mono);
                }
            }
        }
        let den = render_monomial(&den_shift, prefix);
        if den.is_empty() {
            return s;
        }
        let num_s = if num.terms.len() > 1 { format!("({s})") } else { s };
        let factors = den_shift.iter().filter(|&&a| a > 0).count();
        let single_power = factors == 1;
        if single_power {
            format!("{num_s} / {den}")
        } else {
            format!("{num_s} / ({den})")
        }
    }

    /// Ring homomorphism sending variable `i` to `images[i]`; strict mode.
    pub fn substitute(&self, images: &[LaurentPoly]) -> Result<LaurentPoly, LaurentError> {
        let (num, den) = self.substitute_parts(images)?;
        num.exact_div(&den)
    }

    /// Like [`substitute`](Self::substitute) but keeps a fraction when the
    /// result leaves the Laurent ring.
    pub fn substitute_extended(&self, images: &[LaurentPoly]) -> Result<LaurentFraction, LaurentError> {
        let (num, den) = self.substitute_parts(images)?;
        Ok(match num.exact_div(&den) {
            Ok(q) => LaurentFraction { numerator: q, denominator: LaurentPoly::one(num.n) },
            Err(LaurentError::NotDivisible) => LaurentFraction { numerator: num, denominator: den },
            Err(e) => return Err(e),
        })
    }

    fn substitute_parts(&self, images: &[LaurentPoly]) -> Result<(LaurentPoly, LaurentPoly), LaurentError> {
        if images.len() != self.n {
            return Err(LaurentError::Arity(self.n, images.len()));
        }
        let m = images.first().map(|p| p.n).unwrap_or(0);
        for (i, img) in images.iter().enumerate() {
            if img.n != m {
                return Err(LaurentError::Arity(m, img.n));
            }
            if img.is_zero() {
                return Err(LaurentError::ZeroImage(i));
            }
        }
        let shift: Exponent = self.min_exponents().iter().map(|a| (-a).max(0)).collect();
        let poly = self.shift(&shift);
        let mut powers: Vec<Vec<LaurentPoly>> = images.iter().map(|p| vec![LaurentPoly::one(m), p.clone()]).collect();
        let mut power = |i: usize, k: usize| -> LaurentPoly {
            while powers[i].len() <= k {
                let next = powers[i].last().unwrap().mul(&images[i]).expect("same arity");
                powers[i].push(next);
            }
            powers[i][k].clone()
        };
        let mut num = LaurentPoly::zero(m);
        for (e, c) in &poly.terms {
            let mut t = LaurentPoly::constant(m, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = t.mul(&power(i, k as usize))?;
                }
            }
            num = num.add(&t)?;
        }
        let mut den = LaurentPoly::one(m);
        for (i, &k) in shift.iter().enumerate() {
            if k > 0 {
                den = den.mul(&power(i, k as usize))?;
            }
        }
        Ok((num, den))
    }
}

fn render_monomial(e: &[i32], prefix: &str) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.iter().enumerate() {
        match k {
            0 => {}
            1 => parts.push(format!("{prefix}{}", i + 1)),
            _ => parts.push(format!("{prefix}{}^{k}", i + 1)),
        }
    }
    parts.join("*")
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("u"))
    }
}

/// Quotient of two Laurent polynomials that failed to divide exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentFraction {
    pub numerator: LaurentPoly,
    pub denominator: LaurentPoly,
}

impl LaurentFraction {
    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        (self.denominator == LaurentPoly::one(self.denominator.n)).then_some(&self.numerator)
    }
}

/// Outcome of the weak-positivity semi-decision.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Positivity {
    Certified,
    Falsified { point: Vec<u64>, value: String },
    Unknown,
}

impl Positivity {
    pub fn is_certified(&self) -> bool {
        matches!(self, Positivity::Certified)
    }
}

/// Budget for the counterexample search behind [`weak_positivity_certificate`].
#[derive(Clone, Debug)]
pub struct PositivitySearch {
    pub box_bound: u64,
    pub max_box_points: usize,
    pub random_points: usize,
    pub random_bound: u64,
    pub seed: u64,
}

impl Default for PositivitySearch {
    fn default() -> Self {
        PositivitySearch { box_bound: 4, max_box_points: 20_000, random_points: 200, random_bound: 50, seed: 0 }
    }
}

/// Test points with at most one zero coordinate: all-ones, then one zero at each position.
pub fn unit_test_points(n: usize) -> Vec<Vec<u64>> {
    let mut pts = vec![vec![1; n]];
    for i in 0..n {
        let mut z = vec![1; n];
        z[i] = 0;
        pts.push(z);
    }
    pts
}

pub fn weak_positivity_certificate(f: &LaurentPoly) -> Positivity {
    weak_positivity_certificate_with(f, &PositivitySearch::default())
}

/// Certified when the reduced numerator has non-negative coefficients and is
/// positive at every 0/1 test point: each monomial is then non-decreasing on
/// N^n, and every admissible point dominates one of the test points.
pub fn weak_positivity_certificate_with(f: &LaurentPoly, search: &PositivitySearch) -> Positivity {
    let Ok((p, _)) = f.reduced_form() else {
        return Positivity::Falsified { point: vec![1; f.nvars()], value: "0".into() };
    };
    let n = p.nvars();
    let mut all_positive = true;
    for z in unit_test_points(n) {
        let v = p.eval_polynomial(&z);
        if !v.is_positive() {
            return Positivity::Falsified { point: z, value: v.to_string() };
        }
        all_positive &= v.is_positive();
    }
    if all_positive && p.has_nonnegative_coefficients() {
        return Positivity::Certified;
    }
    if let Some((z, v)) = box_search(&p, search) {
        return Positivity::Falsified { point: z, value: v.to_string() };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(search.seed);
    for _ in 0..search.random_points {
        let zero_at = rng.gen_range(0..=n);
        let z: Vec<u64> = (0..n)
            .map(|i| if i == zero_at { 0 } else { rng.gen_range(1..=search.random_bound.max(1)) })
            .collect();
        let v = p.eval_polynomial(&z);
        if !v.is_positive() {
            return Positivity::Falsified { point: z, value: v.to_string() };
        }
    }
    Positivity::Unknown
}

fn box_search(p: &LaurentPoly, search: &PositivitySearch) -> Option<(Vec<u64>, BigInt)> {
    let n = p.nvars();
    let mut z = vec![0u64; n];
    let mut visited = 0usize;
    loop {
        if z.iter().filter(|&&x| x == 0).count() <= 1 {
            let v = p.eval_polynomial(&z);
            if !v.is_positive() {
                return Some((z, v));
            }
            visited += 1;
            if visited >= search.max_box_points {
                return None;
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                return None;
            }
            if z[i] < search.box_bound {
                z[i] += 1;
                break;
            }
            z[i] = 0;
            i += 1;
        }
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.render("u"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, t: &[(&[i32], i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(n, t.iter().copied())
    }

    #[test]
    fn inverse_monomial_product() {
        let u1 = LaurentPoly::var(2, 0);
        let inv = LaurentPoly::monomial(2, vec![-1, 0], 1.into());
        assert_eq!(u1.mul(&inv).unwrap(), LaurentPoly::one(2));
        let f = p(2, &[(&[1, 0], 1), (&[0, 0], 1)]);
        assert_eq!(f.add(&LaurentPoly::zero(2)).unwrap(), f);
    }

    #[test]
    fn exact_division_of_constructed_product() {
        let a = p(2, &[(&[0, 0], 1), (&[1, 0], 1)]);
        let b = p(2, &[(&[0, 0], 1), (&[0, 1], 1)]);
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab.exact_div(&b).unwrap(), a);
        assert_eq!(a.exact_div(&b), Err(LaurentError::NotDivisible));
        // monomial shifts on both sides
        let shifted = ab.shift(&[-2, 1]);
        let bs = b.shift(&[1, -3]);
        assert_eq!(shifted.exact_div(&bs).unwrap(), a.shift(&[-3, 4]));
    }

    #[test]
    fn denominator_vectors() {
        let f = p(2, &[(&[-1, -1], 1), (&[0, -1], 1), (&[-1, 0], 1)]);
        assert_eq!(f.denominator_vector().unwrap(), IntVector(vec![1, 1]));
        assert_eq!(LaurentPoly::var(2, 0).denominator_vector().unwrap(), IntVector(vec![-1, 0]));
        let g = p(2, &[(&[-1, 0], 1), (&[-1, 1], 1)]);
        assert_eq!(g.denominator_vector().unwrap(), IntVector(vec![1, 0]));
        assert_eq!(LaurentPoly::zero(2).denominator_vector(), Err(LaurentError::Zero));
    }

    #[test]
    fn rendering() {
        let f = p(2, &[(&[-1, -1], 1), (&[0, -1], 1), (&[-1, 0], 1)]);
        assert_eq!(f.render("u"), "(1 + u1 + u2) / (u1*u2)");
        let g = p(2, &[(&[-1, 0], 1), (&[-1, 1], 1)]);
        assert_eq!(g.render("x"), "(1 + x2) / x1");
        assert_eq!(LaurentPoly::var(3, 2).render("u"), "u3");
        let h = p(2, &[(&[-2, 0], -3), (&[0, 0], 1)]);
        assert_eq!(h.render("u"), "(-3 + u1^2) / u1^2");
        assert_eq!(p(1, &[(&[2], 1)]).render("u"), "u1^2");
    }

    #[test]
    fn positivity_examples() {
        let a = p(2, &[(&[-1, 0], 1), (&[-1, 1], 1)]);
        assert_eq!(weak_positivity_certificate(&a), Positivity::Certified);
        let b = p(2, &[(&[-1, 0], 1), (&[-1, 1], -1)]);
        assert_eq!(
            weak_positivity_certificate(&b),
            Positivity::Falsified { point: vec![1, 1], value: "0".into() }
        );
        let c = p(2, &[(&[2, 0], 1), (&[1, 1], -1), (&[0, 2], 1)]);
        assert_eq!(weak_positivity_certificate(&c), Positivity::Unknown);
    }

    #[test]
    fn positive_definite_quadratic_really_is_positive_on_grid() {
        // independent check that the Unknown above is not a missed counterexample
        let c = p(2, &[(&[2, 0], 1), (&[1, 1], -1), (&[0, 2], 1)]);
        for a in 0..30u64 {
            for b in 0..30u64 {
                if a == 0 && b == 0 {
                    continue;
                }
                assert!(c.eval_polynomial(&[a, b]).is_positive());
            }
        }
    }

    #[test]
    fn substitution() {
        let u1 = LaurentPoly::var(2, 0);
        let u2 = LaurentPoly::var(2, 1);
        let f = u1.mul(&u2).unwrap();
        assert_eq!(f.substitute(&[u1.clone(), u2.clone()]).unwrap(), f);

        // x1^{-1} with x1 -> (1+u2)/u1 leaves the Laurent ring
        let xinv = LaurentPoly::monomial(2, vec![-1, 0], 1.into());
        let img = p(2, &[(&[-1, 0], 1), (&[-1, 1], 1)]);
        assert_eq!(xinv.substitute(&[img.clone(), u2.clone()]), Err(LaurentError::NotDivisible));
        let ext = xinv.substitute_extended(&[img.clone(), u2.clone()]).unwrap();
        assert!(ext.as_laurent().is_none());
        assert_eq!(ext.denominator, img);

        assert_eq!(f.substitute(&[LaurentPoly::zero(2), u2]), Err(LaurentError::ZeroImage(0)));
    }

    #[test]
    fn reduced_form_roundtrip() {
        let f = p(3, &[(&[-2, 1, 0], 3), (&[0, -1, 4], -1), (&[1, 1, 1], 2)]);
        let (num, d) = f.reduced_form().unwrap();
        assert_eq!(LaurentPoly::from_reduced(&num, &d), f);
        for i in 0..3 {
            assert!(num.terms().any(|(e, _)| e[i] == 0));
        }
    }
}
