//! The coefficient ring for everything downstream: Laurent polynomials in a
//! formal prime `p` over exact rationals, the group algebra they span on
//! `σ`-invariant cocharacters (basis elements `h_ν`), the twisted "dot"
//! action of Weyl elements on that algebra, and monic polynomials in an
//! outer variable `x` with such coefficients.
//!
//! Everything is exact and canonically ordered: Laurent terms render with
//! descending exponents, group-algebra terms with descending lexicographic
//! basis exponents, and equality is structural.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::root_datum::{BasedRootDatum, Cocharacter, IntMat, LeviDatum};

/// Laurent polynomial in the formal prime `p`, with exact rational
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPolynomial {
    terms: BTreeMap<i64, BigRational>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        LaurentPolynomial { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        LaurentPolynomial::constant(BigRational::one())
    }

    pub fn constant(q: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(0, q);
        }
        LaurentPolynomial { terms }
    }

    /// `q · p^k`
    pub fn monomial(k: i64, q: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(k, q);
        }
        LaurentPolynomial { terms }
    }

    /// `p^k`
    pub fn p_power(k: i64) -> Self {
        LaurentPolynomial::monomial(k, BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(One::is_one)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &BigRational)> {
        self.terms.iter()
    }

    /// Every stored coefficient is strictly negative. (False for zero.)
    pub fn all_negative(&self) -> bool {
        !self.terms.is_empty() && self.terms.values().all(Signed::is_negative)
    }

    pub fn neg(&self) -> Self {
        LaurentPolynomial {
            terms: self.terms.iter().map(|(&k, q)| (k, -q.clone())).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (&k, q) in &other.terms {
            let entry = terms.entry(k).or_insert_with(BigRational::zero);
            *entry += q;
            if entry.is_zero() {
                terms.remove(&k);
            }
        }
        LaurentPolynomial { terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (&k1, q1) in &self.terms {
            for (&k2, q2) in &other.terms {
                let k = k1.checked_add(k2).expect("Laurent exponent overflow");
                let entry = terms.entry(k).or_insert_with(BigRational::zero);
                *entry += q1 * q2;
            }
        }
        terms.retain(|_, q| !q.is_zero());
        LaurentPolynomial { terms }
    }

    /// Substitute a concrete nonzero rational for `p`.
    pub fn eval(&self, p: &BigRational) -> BigRational {
        assert!(!p.is_zero(), "cannot specialize p to zero");
        let mut acc = BigRational::zero();
        for (&k, q) in &self.terms {
            let pk = if k >= 0 {
                BigRational::new(p.numer().pow(k as u32), p.denom().pow(k as u32))
            } else {
                let m = (-k) as u32;
                BigRational::new(p.denom().pow(m), p.numer().pow(m))
            };
            acc += q * pk;
        }
        acc
    }
}

fn render_magnitude(k: i64, q_abs: &BigRational) -> String {
    let coeff = q_abs.to_string();
    match k {
        0 => coeff,
        _ => {
            let p_part = if k == 1 { "p".to_string() } else { alloc::format!("p^{k}") };
            if coeff == "1" {
                p_part
            } else {
                alloc::format!("{coeff}*{p_part}")
            }
        }
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (&k, q)) in self.terms.iter().rev().enumerate() {
            let neg = q.is_negative();
            let body = render_magnitude(k, &q.abs());
            if idx == 0 {
                if neg {
                    write!(f, "-{body}")?;
                } else {
                    write!(f, "{body}")?;
                }
            } else if neg {
                write!(f, " - {body}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}

/// Failure to parse the canonical Laurent syntax.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentParseError {
    pub message: String,
}

impl fmt::Display for LaurentParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid Laurent polynomial: {}", self.message)
    }
}

impl core::error::Error for LaurentParseError {}

fn err(message: &str) -> LaurentParseError {
    LaurentParseError { message: message.to_string() }
}

fn parse_rational(s: &str) -> Result<BigRational, LaurentParseError> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let n = BigInt::from_str(num).map_err(|_| err("bad numerator"))?;
    let d = match den {
        Some(d) => BigInt::from_str(d).map_err(|_| err("bad denominator"))?,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(err("zero denominator"));
    }
    if d.is_negative() {
        return Err(err("denominator must be positive"));
    }
    Ok(BigRational::new(n, d))
}

fn parse_term(term: &str) -> Result<(i64, BigRational), LaurentParseError> {
    let parse_p = |s: &str| -> Option<Result<i64, LaurentParseError>> {
        if s == "p" {
            Some(Ok(1))
        } else if let Some(exp) = s.strip_prefix("p^") {
            Some(i64::from_str(exp).map_err(|_| err("bad exponent")))
        } else {
            None
        }
    };
    let mut parts = term.split('*');
    let first = parts.next().ok_or_else(|| err("empty term"))?;
    let second = parts.next();
    if parts.next().is_some() {
        return Err(err("too many factors in a term"));
    }
    match (parse_p(first), second) {
        (Some(k), None) => Ok((k?, BigRational::one())),
        (Some(_), Some(_)) => Err(err("p-part must come last")),
        (None, None) => Ok((0, parse_rational(first)?)),
        (None, Some(p_str)) => {
            let k = parse_p(p_str).ok_or_else(|| err("expected a power of p"))??;
            Ok((k, parse_rational(first)?))
        }
    }
}

impl FromStr for LaurentPolynomial {
    type Err = LaurentParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(err("empty input"));
        }
        if s == "0" {
            return Ok(LaurentPolynomial::zero());
        }
        let mut terms: BTreeMap<i64, BigRational> = BTreeMap::new();
        let mut rest = s;
        let mut negate = if let Some(tail) = rest.strip_prefix('-') {
            rest = tail;
            true
        } else {
            false
        };
        loop {
            let (plus, minus) = (rest.find(" + "), rest.find(" - "));
            let cut = match (plus, minus) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            };
            let (term_str, next_negate, tail) = match cut {
                Some(i) => {
                    let is_minus = rest[i..].starts_with(" - ");
                    (&rest[..i], is_minus, &rest[i + 3..])
                }
                None => (rest, false, ""),
            };
            let (k, q) = parse_term(term_str)?;
            let q = if negate { -q } else { q };
            if terms.contains_key(&k) {
                return Err(err("duplicate exponent"));
            }
            if !q.is_zero() {
                terms.insert(k, q);
            }
            if tail.is_empty() && cut.is_none() {
                break;
            }
            if tail.is_empty() {
                return Err(err("trailing separator"));
            }
            rest = tail;
            negate = next_negate;
        }
        Ok(LaurentPolynomial { terms })
    }
}

/// Element of the twisted torus algebra: a finite sum `Σ c_ν · h_ν` with
/// Laurent coefficients, indexed by `σ`-invariant cocharacters. The
/// `σ`-invariance of indices is enforced at [`TorusAlgebraElement::h`] and
/// preserved by every ring operation and by the dot action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusAlgebraElement {
    rank: usize,
    terms: BTreeMap<Cocharacter, LaurentPolynomial>,
}

impl TorusAlgebraElement {
    pub fn zero(rank: usize) -> Self {
        TorusAlgebraElement { rank, terms: BTreeMap::new() }
    }

    pub fn one(rank: usize) -> Self {
        TorusAlgebraElement::monomial(rank, vec![0; rank], LaurentPolynomial::one())
    }

    /// Basis element `h_ν`. Panics unless `ν` is `σ`-invariant: the algebra
    /// is spanned by the `σ`-fixed part of the cocharacter lattice.
    pub fn h(datum: &BasedRootDatum, nu: &[i64]) -> Self {
        assert!(
            datum.is_sigma_invariant(nu),
            "h_ν requires a σ-invariant exponent, got {nu:?}"
        );
        TorusAlgebraElement::monomial(datum.rank(), nu.to_vec(), LaurentPolynomial::one())
    }

    /// `c · h_ν` without the σ-invariance gate; crate-internal constructors
    /// are responsible for only feeding invariant exponents.
    pub(crate) fn monomial(rank: usize, nu: Cocharacter, coeff: LaurentPolynomial) -> Self {
        assert_eq!(nu.len(), rank, "exponent length mismatch");
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(nu, coeff);
        }
        TorusAlgebraElement { rank, terms }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&vec![0; self.rank])
                .is_some_and(LaurentPolynomial::is_one)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Cocharacter, &LaurentPolynomial)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff_of(&self, nu: &[i64]) -> LaurentPolynomial {
        self.terms.get(nu).cloned().unwrap_or_default()
    }

    pub fn neg(&self) -> Self {
        TorusAlgebraElement {
            rank: self.rank,
            terms: self.terms.iter().map(|(nu, c)| (nu.clone(), c.neg())).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.rank, other.rank, "rank mismatch");
        let mut terms = self.terms.clone();
        for (nu, c) in &other.terms {
            let entry = terms.entry(nu.clone()).or_insert_with(LaurentPolynomial::zero);
            *entry = entry.add(c);
            if entry.is_zero() {
                terms.remove(nu);
            }
        }
        TorusAlgebraElement { rank: self.rank, terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.rank, other.rank, "rank mismatch");
        let mut terms: BTreeMap<Cocharacter, LaurentPolynomial> = BTreeMap::new();
        for (nu1, c1) in &self.terms {
            for (nu2, c2) in &other.terms {
                let nu: Cocharacter = nu1
                    .iter()
                    .zip(nu2)
                    .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
                    .collect();
                let entry = terms.entry(nu).or_insert_with(LaurentPolynomial::zero);
                *entry = entry.add(&c1.mul(c2));
            }
        }
        terms.retain(|_, c| !c.is_zero());
        TorusAlgebraElement { rank: self.rank, terms }
    }

    pub fn scale(&self, factor: &LaurentPolynomial) -> Self {
        let mut terms: BTreeMap<Cocharacter, LaurentPolynomial> = BTreeMap::new();
        for (nu, c) in &self.terms {
            let scaled = c.mul(factor);
            if !scaled.is_zero() {
                terms.insert(nu.clone(), scaled);
            }
        }
        TorusAlgebraElement { rank: self.rank, terms }
    }

    /// Substitute a concrete rational for `p` in every coefficient.
    pub fn specialize(&self, p: &BigRational) -> Self {
        let mut terms: BTreeMap<Cocharacter, LaurentPolynomial> = BTreeMap::new();
        for (nu, c) in &self.terms {
            let v = LaurentPolynomial::constant(c.eval(p));
            if !v.is_zero() {
                terms.insert(nu.clone(), v);
            }
        }
        TorusAlgebraElement { rank: self.rank, terms }
    }

    /// Every Laurent coefficient of every term is entirely negative.
    pub fn all_negative(&self) -> bool {
        !self.terms.is_empty() && self.terms.values().all(LaurentPolynomial::all_negative)
    }

    /// Signed-monomial view: `Some((negative, magnitude))` when the element
    /// is a single basis term with a single Laurent term.
    fn as_signed_monomial(&self) -> Option<(bool, String)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (nu, c) = self.terms.iter().next().unwrap();
        if c.terms.len() != 1 {
            return None;
        }
        let (&k, q) = c.terms.iter().next().unwrap();
        let mag = render_magnitude(k, &q.abs());
        let body = if nu.iter().all(|&v| v == 0) {
            mag
        } else if mag == "1" {
            render_h(nu)
        } else {
            alloc::format!("{mag}*{}", render_h(nu))
        };
        Some((q.is_negative(), body))
    }
}

fn render_h(nu: &[i64]) -> String {
    let mut s = String::from("h[");
    for (i, v) in nu.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        s.push_str(&v.to_string());
    }
    s.push(']');
    s
}

impl fmt::Display for TorusAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (nu, c)) in self.terms.iter().rev().enumerate() {
            let (neg, body) = term_piece(nu, c);
            if idx == 0 {
                if neg {
                    write!(f, "-{body}")?;
                } else {
                    write!(f, "{body}")?;
                }
            } else if neg {
                write!(f, " - {body}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}

fn term_piece(nu: &[i64], c: &LaurentPolynomial) -> (bool, String) {
    let zero_exp = nu.iter().all(|&v| v == 0);
    if c.terms.len() == 1 {
        let (&k, q) = c.terms.iter().next().unwrap();
        let mag = render_magnitude(k, &q.abs());
        let body = if zero_exp {
            mag
        } else if mag == "1" {
            render_h(nu)
        } else {
            alloc::format!("{mag}*{}", render_h(nu))
        };
        (q.is_negative(), body)
    } else if c.all_negative() {
        let inner = c.neg().to_string();
        let body = if zero_exp {
            alloc::format!("({inner})")
        } else {
            alloc::format!("({inner})*{}", render_h(nu))
        };
        (true, body)
    } else {
        let inner = c.to_string();
        let body = if zero_exp {
            alloc::format!("({inner})")
        } else {
            alloc::format!("({inner})*{}", render_h(nu))
        };
        (false, body)
    }
}

/// The dot action of a `σ`-commuting Weyl element on the algebra:
/// `w • h_ν = p^{⟨ρ, ν − w(ν)⟩} h_{w(ν)}`, extended by linearity over the
/// Laurent coefficients. This is a ring automorphism.
pub fn dot_act(datum: &BasedRootDatum, w: &IntMat, e: &TorusAlgebraElement) -> TorusAlgebraElement {
    dot_act_with_weights(datum, datum.two_rho(), w, e)
}

/// Dot action in the normalization of a Levi: `2ρ` is replaced by the sum of
/// the Levi's positive roots. `w` must lie in the Levi's Weyl group for the
/// half-pairing to stay integral.
pub fn dot_act_levi(
    datum: &BasedRootDatum,
    levi: &LeviDatum,
    w: &IntMat,
    e: &TorusAlgebraElement,
) -> TorusAlgebraElement {
    dot_act_with_weights(datum, levi.two_rho(), w, e)
}

fn dot_act_with_weights(
    datum: &BasedRootDatum,
    two_rho: &[i64],
    w: &IntMat,
    e: &TorusAlgebraElement,
) -> TorusAlgebraElement {
    assert!(
        w.commutes_with(datum.sigma()),
        "dot action only defined for σ-commuting elements"
    );
    let mut terms: BTreeMap<Cocharacter, LaurentPolynomial> = BTreeMap::new();
    for (nu, c) in e.terms() {
        let w_nu = w.apply(nu);
        let diff: Vec<i64> = nu.iter().zip(&w_nu).map(|(&a, &b)| a - b).collect();
        let twice = datum.pair(two_rho, &diff);
        assert!(
            twice % 2 == 0,
            "dot exponent ⟨2ρ, ν − wν⟩ = {twice} is odd; w is outside the expected Weyl group"
        );
        let shifted = c.mul(&LaurentPolynomial::p_power(twice / 2));
        let prev = terms.insert(w_nu, shifted);
        assert!(prev.is_none(), "Weyl element is not injective on exponents");
    }
    TorusAlgebraElement { rank: e.rank(), terms }
}

/// Witness that an element fails to be dot-invariant under some group
/// element: the offending matrix and the first basis exponent where the
/// transformed element disagrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DotInvarianceFailure {
    pub witness_rows: Vec<Vec<i64>>,
    pub exponent: Cocharacter,
}

impl fmt::Display for DotInvarianceFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "dot-invariance fails at h_{:?} under the element with rows {:?}",
            self.exponent, self.witness_rows
        )
    }
}

fn first_difference(a: &TorusAlgebraElement, b: &TorusAlgebraElement) -> Option<Cocharacter> {
    let keys: alloc::collections::BTreeSet<&Cocharacter> =
        a.terms.keys().chain(b.terms.keys()).collect();
    keys.into_iter()
        .find(|nu| a.terms.get(*nu) != b.terms.get(*nu))
        .cloned()
}

/// `None` when `e` is fixed by the dot action of every listed element;
/// otherwise the first failure found.
pub fn dot_invariance_failure(
    datum: &BasedRootDatum,
    elements: &[IntMat],
    e: &TorusAlgebraElement,
) -> Option<DotInvarianceFailure> {
    for w in elements {
        let moved = dot_act(datum, w, e);
        if moved != *e {
            let exponent = first_difference(e, &moved)
                .expect("unequal elements must differ at some exponent");
            return Some(DotInvarianceFailure { witness_rows: w.rows(), exponent });
        }
    }
    None
}

/// Levi-normalized variant of [`dot_invariance_failure`], quantified over
/// the `σ`-commuting part of the Levi's Weyl group.
pub fn dot_invariance_failure_levi(
    datum: &BasedRootDatum,
    levi: &LeviDatum,
    e: &TorusAlgebraElement,
) -> Option<DotInvarianceFailure> {
    for w in levi.weyl_sigma_fixed() {
        let moved = dot_act_levi(datum, levi, w, e);
        if moved != *e {
            let exponent = first_difference(e, &moved)
                .expect("unequal elements must differ at some exponent");
            return Some(DotInvarianceFailure { witness_rows: w.rows(), exponent });
        }
    }
    None
}

/// Monic-friendly polynomial in an outer variable `x` with torus-algebra
/// coefficients, stored lowest degree first with trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckePolynomial {
    rank: usize,
    coeffs: Vec<TorusAlgebraElement>,
}

/// Exact division failed (or was ill-posed).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DivisionError {
    NonMonicDivisor,
    Remainder {
        /// Degree of the first (highest) obstructing remainder coefficient.
        degree_index: usize,
        coefficient: TorusAlgebraElement,
    },
}

impl fmt::Display for DivisionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DivisionError::NonMonicDivisor => write!(f, "divisor is not monic"),
            DivisionError::Remainder { degree_index, coefficient } => write!(
                f,
                "division leaves a remainder; leading obstruction at x^{degree_index}: {coefficient}"
            ),
        }
    }
}

impl core::error::Error for DivisionError {}

impl HeckePolynomial {
    pub fn new(rank: usize, mut coeffs: Vec<TorusAlgebraElement>) -> Self {
        for c in &coeffs {
            assert_eq!(c.rank(), rank, "coefficient rank mismatch");
        }
        while coeffs.last().is_some_and(TorusAlgebraElement::is_zero) {
            coeffs.pop();
        }
        HeckePolynomial { rank, coeffs }
    }

    pub fn zero(rank: usize) -> Self {
        HeckePolynomial { rank, coeffs: Vec::new() }
    }

    pub fn one(rank: usize) -> Self {
        HeckePolynomial::new(rank, vec![TorusAlgebraElement::one(rank)])
    }

    /// `x^m − c` for `m ≥ 1`
    pub fn power_minus(rank: usize, m: usize, c: &TorusAlgebraElement) -> Self {
        assert!(m >= 1, "power_minus needs a positive degree");
        let mut coeffs = vec![TorusAlgebraElement::zero(rank); m + 1];
        coeffs[0] = c.neg();
        coeffs[m] = TorusAlgebraElement::one(rank);
        HeckePolynomial::new(rank, coeffs)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficients(&self) -> &[TorusAlgebraElement] {
        &self.coeffs
    }

    pub fn coefficient(&self, k: usize) -> TorusAlgebraElement {
        self.coeffs.get(k).cloned().unwrap_or_else(|| TorusAlgebraElement::zero(self.rank))
    }

    pub fn leading(&self) -> Option<&TorusAlgebraElement> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(TorusAlgebraElement::is_one)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.rank, other.rank);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|k| self.coefficient(k).add(&other.coefficient(k)))
            .collect();
        HeckePolynomial::new(self.rank, coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.rank, other.rank);
        if self.is_zero() || other.is_zero() {
            return HeckePolynomial::zero(self.rank);
        }
        let mut coeffs =
            vec![TorusAlgebraElement::zero(self.rank); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        HeckePolynomial::new(self.rank, coeffs)
    }

    /// Divide exactly by a monic polynomial; on failure report the highest
    /// nonzero remainder coefficient.
    pub fn exact_divide(&self, divisor: &Self) -> Result<Self, DivisionError> {
        assert_eq!(self.rank, divisor.rank);
        if !divisor.is_monic() {
            return Err(DivisionError::NonMonicDivisor);
        }
        let dd = divisor.degree().expect("monic polynomial has a degree");
        let mut rem: Vec<TorusAlgebraElement> = self.coeffs.clone();
        let n = rem.len();
        let mut quot = vec![TorusAlgebraElement::zero(self.rank); n.saturating_sub(dd)];
        for k in (dd..n).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let lead = rem[k].clone();
            for j in 0..=dd {
                let delta = divisor.coeffs[j].mul(&lead);
                rem[k - dd + j] = rem[k - dd + j].sub(&delta);
            }
            debug_assert!(rem[k].is_zero());
            quot[k - dd] = lead;
        }
        if let Some(idx) = rem.iter().rposition(|c| !c.is_zero()) {
            return Err(DivisionError::Remainder {
                degree_index: idx,
                coefficient: rem[idx].clone(),
            });
        }
        Ok(HeckePolynomial::new(self.rank, quot))
    }

    /// Evaluate at a torus-algebra element by Horner's rule.
    pub fn evaluate(&self, at: &TorusAlgebraElement) -> TorusAlgebraElement {
        assert_eq!(self.rank, at.rank());
        let mut acc = TorusAlgebraElement::zero(self.rank);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(at).add(c);
        }
        acc
    }

    /// Substitute a concrete rational for `p` in every coefficient.
    pub fn specialize_p(&self, p: &BigRational) -> Self {
        HeckePolynomial::new(
            self.rank,
            self.coeffs.iter().map(|c| c.specialize(p)).collect(),
        )
    }
}

impl fmt::Display for HeckePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let x_part = match k {
                0 => None,
                1 => Some("x".to_string()),
                _ => Some(alloc::format!("x^{k}")),
            };
            let (neg, body) = if c.is_one() {
                (false, None)
            } else if let Some((neg, mono)) = c.as_signed_monomial() {
                (neg, Some(mono))
            } else if c.all_negative() {
                (true, Some(alloc::format!("({})", c.neg())))
            } else {
                (false, Some(alloc::format!("({c})")))
            };
            let piece = match (&body, &x_part) {
                (Some(b), Some(x)) => alloc::format!("{b}*{x}"),
                (Some(b), None) => b.clone(),
                (None, Some(x)) => x.clone(),
                (None, None) => "1".to_string(),
            };
            if first {
                if neg {
                    write!(f, "-{piece}")?;
                } else {
                    write!(f, "{piece}")?;
                }
                first = false;
            } else if neg {
                write!(f, " - {piece}")?;
            } else {
                write!(f, " + {piece}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::preset;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn laurent_render_and_parse() {
        let cases = [
            "0",
            "1",
            "-1",
            "p",
            "-p",
            "p^-2",
            "2*p",
            "3/2*p^2 - p^-1",
            "-p^3 + 1/2",
            "p^2 + p + 1",
            "5 - 2/3*p^-4",
        ];
        for s in cases {
            let parsed: LaurentPolynomial = s.parse().unwrap();
            assert_eq!(parsed.to_string(), s, "canonical render must round-trip");
            let reparsed: LaurentPolynomial = parsed.to_string().parse().unwrap();
            assert_eq!(reparsed, parsed);
        }
        assert!("".parse::<LaurentPolynomial>().is_err());
        assert!("p^".parse::<LaurentPolynomial>().is_err());
        assert!("1/0".parse::<LaurentPolynomial>().is_err());
        assert!("p*p".parse::<LaurentPolynomial>().is_err());
        assert!("1 + 1".parse::<LaurentPolynomial>().is_err());
    }

    #[test]
    fn laurent_arithmetic() {
        let a: LaurentPolynomial = "p + 1".parse().unwrap();
        let b: LaurentPolynomial = "p - 1".parse().unwrap();
        assert_eq!(a.mul(&b).to_string(), "p^2 - 1");
        assert_eq!(a.add(&b).to_string(), "2*p");
        assert_eq!(a.sub(&a), LaurentPolynomial::zero());
        let five = q(5, 1);
        assert_eq!(a.eval(&five), q(6, 1));
        let inv: LaurentPolynomial = "p^-1".parse().unwrap();
        assert_eq!(inv.eval(&five), q(1, 5));
    }

    #[test]
    fn gl2_dot_anchor() {
        let (d, _) = preset("gl2").unwrap();
        let swap = d.weyl().iter().find(|w| !w.is_identity()).unwrap().clone();
        let e = TorusAlgebraElement::h(&d, &[0, -1]);
        let moved = dot_act(&d, &swap, &e);
        let expected =
            TorusAlgebraElement::h(&d, &[-1, 0]).scale(&LaurentPolynomial::p_power(1));
        assert_eq!(moved, expected);

        // The dot action is a ring homomorphism.
        let f = TorusAlgebraElement::h(&d, &[-1, 0]);
        let prod = dot_act(&d, &swap, &e.mul(&f));
        assert_eq!(prod, dot_act(&d, &swap, &e).mul(&dot_act(&d, &swap, &f)));
    }

    #[test]
    fn gl2_invariant_coefficient() {
        let (d, _) = preset("gl2").unwrap();
        let s = TorusAlgebraElement::h(&d, &[0, -1])
            .add(&TorusAlgebraElement::h(&d, &[-1, 0]).scale(&LaurentPolynomial::p_power(1)));
        assert!(dot_invariance_failure(&d, d.weyl(), &s).is_none());

        let bare = TorusAlgebraElement::h(&d, &[1, 0]);
        let fail = dot_invariance_failure(&d, d.weyl(), &bare).unwrap();
        assert!(fail.exponent == vec![1, 0] || fail.exponent == vec![0, 1]);
    }

    #[test]
    #[should_panic(expected = "σ-invariant")]
    fn h_rejects_moving_exponent() {
        let (d, _) = preset("hilbert_g2").unwrap();
        let _ = TorusAlgebraElement::h(&d, &[1, 0, 0, 0]);
    }

    #[test]
    fn gl2_polynomial_product_and_display() {
        let (d, _) = preset("gl2").unwrap();
        let a = TorusAlgebraElement::h(&d, &[0, -1]);
        let b = TorusAlgebraElement::h(&d, &[-1, 0]).scale(&LaurentPolynomial::p_power(1));
        let f1 = HeckePolynomial::power_minus(2, 1, &a);
        let f2 = HeckePolynomial::power_minus(2, 1, &b);
        let h = f1.mul(&f2);
        assert_eq!(h.degree(), Some(2));
        assert!(h.is_monic());
        assert_eq!(
            h.to_string(),
            "x^2 - (h[0,-1] + p*h[-1,0])*x + p*h[-1,-1]"
        );
        assert_eq!(f1.to_string(), "x - h[0,-1]");
        assert_eq!(f2.to_string(), "x - p*h[-1,0]");

        let back = h.exact_divide(&f1).unwrap();
        assert_eq!(back, f2);
        let back2 = h.exact_divide(&f2).unwrap();
        assert_eq!(back2, f1);
    }

    #[test]
    fn division_reports_obstruction() {
        let (d, _) = preset("gl2").unwrap();
        let a = TorusAlgebraElement::h(&d, &[0, -1]);
        let b = TorusAlgebraElement::h(&d, &[-1, 0]).scale(&LaurentPolynomial::p_power(1));
        let h = HeckePolynomial::power_minus(2, 1, &a)
            .mul(&HeckePolynomial::power_minus(2, 1, &b));
        let t = TorusAlgebraElement::h(&d, &[1, 0]);
        let wrong = HeckePolynomial::power_minus(2, 1, &t);
        match h.exact_divide(&wrong) {
            Err(DivisionError::Remainder { degree_index, coefficient }) => {
                assert_eq!(degree_index, 0);
                // remainder = H(h_{(1,0)}) by the factor theorem
                assert_eq!(coefficient, h.evaluate(&t));
                assert!(!coefficient.is_zero());
            }
            other => panic!("expected a remainder, got {other:?}"),
        }

        let nonmonic = HeckePolynomial::new(2, vec![a.clone(), a.scale(&LaurentPolynomial::p_power(1))]);
        assert!(matches!(h.exact_divide(&nonmonic), Err(DivisionError::NonMonicDivisor)));
    }

    #[test]
    fn specialization_is_a_ring_map() {
        let (d, _) = preset("gl2").unwrap();
        let five = q(5, 1);
        let a = TorusAlgebraElement::h(&d, &[0, -1]).scale(&"p + 1".parse().unwrap());
        let b = TorusAlgebraElement::h(&d, &[-1, 0]).scale(&"p^-1 - 2".parse().unwrap());
        assert_eq!(a.mul(&b).specialize(&five), a.specialize(&five).mul(&b.specialize(&five)));
        assert_eq!(a.add(&b).specialize(&five), a.specialize(&five).add(&b.specialize(&five)));
    }

    #[test]
    fn horner_evaluation() {
        let (d, _) = preset("gl2").unwrap();
        let a = TorusAlgebraElement::h(&d, &[0, -1]);
        let f = HeckePolynomial::power_minus(2, 1, &a);
        assert!(f.evaluate(&a).is_zero());
        let other = TorusAlgebraElement::h(&d, &[-1, 0]);
        assert_eq!(f.evaluate(&other), other.sub(&a));
    }
}
