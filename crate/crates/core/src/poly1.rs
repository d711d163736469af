//! Sparse multivariate first-order polynomials over ℕ.
//!
//! A [`Poly1`] is stored in monomial normal form: a map from [`Monomial`] to a
//! nonzero coefficient. Two polynomials are syntactically equivalent exactly
//! when their maps are equal, so `==` is the equivalence test.

use crate::{Error, Natural, Result};
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul};
use num_traits::{One, ToPrimitive, Zero};

/// Opaque variable identity. Pretty names are supplied by the caller.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub u32);

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// Product of variables with positive exponents; empty means the constant 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(BTreeMap<Var, u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn var(v: Var) -> Self {
        Self::power(v, 1)
    }

    pub fn power(v: Var, exp: u32) -> Self {
        let mut m = BTreeMap::new();
        if exp > 0 {
            m.insert(v, exp);
        }
        Monomial(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.get(&v).copied().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.values().sum()
    }

    /// `(variable, exponent)` pairs in increasing variable order.
    pub fn factors(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.0.iter().map(|(v, e)| (*v, *e))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.0.clone();
        for (v, e) in &other.0 {
            *out.entry(*v).or_insert(0) += e;
        }
        Monomial(out)
    }

    fn eval_with(&self, value: &mut impl FnMut(Var) -> Option<Natural>) -> Result<Natural> {
        let mut acc = Natural::one();
        for (v, e) in &self.0 {
            let x = value(*v).ok_or(Error::MissingVariable(*v))?;
            acc *= x.pow(*e);
        }
        Ok(acc)
    }

    /// Order used for printing: total degree descending, then graded
    /// lexicographic with the lowest variable id most significant.
    pub fn print_cmp(&self, other: &Monomial) -> Ordering {
        other
            .total_degree()
            .cmp(&self.total_degree())
            .then_with(|| {
                let vars: BTreeSet<Var> = self.0.keys().chain(other.0.keys()).copied().collect();
                for v in vars {
                    match other.exponent(v).cmp(&self.exponent(v)) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            })
    }
}

/// Sparse polynomial with natural coefficients in monomial normal form.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly1 {
    terms: BTreeMap<Monomial, Natural>,
}

/// Outcome of [`Poly1::eventual_compare`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EventualOrder {
    pub ordering: Ordering,
    /// For every `d >= threshold` the strict order `ordering` holds (or the
    /// polynomials are identical when `ordering` is `Equal`).
    pub threshold: Natural,
}

/// Largest certified threshold that is refined by a downward scan.
const REFINE_LIMIT: u64 = 1 << 14;

impl Poly1 {
    pub fn zero() -> Self {
        Poly1::default()
    }

    pub fn one() -> Self {
        Self::constant(Natural::one())
    }

    pub fn constant(c: impl Into<Natural>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Poly1 { terms }
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(Monomial::var(v), Natural::one())
    }

    pub fn monomial(m: Monomial, coeff: impl Into<Natural>) -> Self {
        let c = coeff.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly1 { terms }
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs, merging
    /// repeated monomials and dropping zero coefficients.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Natural)>) -> Self {
        let mut out = Poly1::zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    /// Univariate polynomial `Σ coeffs[i] · v^i`.
    pub fn from_coefficients(v: Var, coeffs: &[Natural]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::power(v, i as u32), c.clone())),
        )
    }

    fn add_term(&mut self, m: Monomial, c: Natural) {
        if c.is_zero() {
            return;
        }
        *self.terms.entry(m).or_insert_with(Natural::zero) += c;
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Natural)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> Natural {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_default()
    }

    /// Returns the single variable if `self` is exactly `1·v`.
    pub fn as_var(&self) -> Option<Var> {
        let mut it = self.terms.iter();
        match (it.next(), it.next()) {
            (Some((m, c)), None) if c.is_one() && m.total_degree() == 1 => m.factors().next().map(|(v, _)| v),
            _ => None,
        }
    }

    /// Sum of all coefficients.
    pub fn coefficient_sum(&self) -> Natural {
        self.terms.values().sum()
    }

    pub fn pow(&self, k: u32) -> Poly1 {
        let mut acc = Poly1::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact value at `point`; every occurring variable must be assigned.
    pub fn eval(&self, point: &BTreeMap<Var, Natural>) -> Result<Natural> {
        self.eval_with(|v| point.get(&v).cloned())
    }

    pub fn eval_with(&self, mut value: impl FnMut(Var) -> Option<Natural>) -> Result<Natural> {
        let mut acc = Natural::zero();
        for (m, c) in &self.terms {
            acc += m.eval_with(&mut value)? * c;
        }
        Ok(acc)
    }

    /// Value of a polynomial in (at most) the single variable `v` at `x`.
    pub fn eval_univariate(&self, v: Var, x: &Natural) -> Result<Natural> {
        self.eval_with(|w| if w == v { Some(x.clone()) } else { None })
    }

    /// Maximum total degree over the monomials, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// Whether `v` occurs with positive exponent in some monomial.
    pub fn occurs(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.0.keys().copied()).collect()
    }

    /// Partial evaluation: replaces `v` by the constant `value`.
    pub fn substitute(&self, v: Var, value: &Natural) -> Poly1 {
        let mut out = Poly1::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                out.add_term(m.clone(), c.clone());
            } else {
                let mut rest = m.0.clone();
                rest.remove(&v);
                out.add_term(Monomial(rest), c * value.pow(e));
            }
        }
        out
    }

    /// Replaces every variable by a polynomial.
    pub fn compose(&self, image: &impl Fn(Var) -> Poly1) -> Poly1 {
        let mut out = Poly1::zero();
        for (m, c) in &self.terms {
            let mut t = Poly1::constant(c.clone());
            for (v, e) in m.factors() {
                t = &t * &image(v).pow(e);
            }
            out = &out + &t;
        }
        out
    }

    /// Dense coefficient vector of a polynomial in (at most) the variable `v`.
    pub fn coefficients(&self, v: Var) -> Result<Vec<Natural>> {
        let mut out: Vec<Natural> = Vec::new();
        for (m, c) in &self.terms {
            if let Some((w, _)) = m.factors().find(|(w, _)| *w != v) {
                return Err(Error::NotUnivariate { expected: v, found: w });
            }
            let e = m.exponent(v) as usize;
            if out.len() <= e {
                out.resize(e + 1, Natural::zero());
            }
            out[e] = c.clone();
        }
        Ok(out)
    }

    /// Eventual order of two polynomials in the variable `v`.
    ///
    /// Nonnegative coefficients make the order a lexicographic comparison of
    /// the coefficient vectors from the top degree down. The threshold comes
    /// from the bound `d > S` where `S` sums the deficits of the larger
    /// polynomial below the deciding degree; when that bound is small it is
    /// refined by scanning down to the exact crossover.
    pub fn eventual_compare(&self, other: &Poly1, v: Var) -> Result<EventualOrder> {
        let p = self.coefficients(v)?;
        let q = other.coefficients(v)?;
        let Some((ordering, k)) = deciding_degree(&p, &q) else {
            return Ok(EventualOrder { ordering: Ordering::Equal, threshold: Natural::zero() });
        };
        let (big, small) = if ordering == Ordering::Greater { (&p, &q) } else { (&q, &p) };
        let threshold = crossover(big, small, k, true);
        Ok(EventualOrder { ordering, threshold })
    }

    /// Threshold from which `self(d) >= other(d)` holds, if it does eventually.
    pub(crate) fn dominance_threshold(&self, other: &Poly1, v: Var) -> Result<Option<Natural>> {
        let p = self.coefficients(v)?;
        let q = other.coefficients(v)?;
        Ok(match deciding_degree(&p, &q) {
            None => Some(Natural::zero()),
            Some((Ordering::Greater, k)) => Some(crossover(&p, &q, k, false)),
            Some(_) => None,
        })
    }

    /// Renders the polynomial with caller-supplied variable names.
    pub fn display_with<F: Fn(Var) -> String>(&self, names: F) -> DisplayPoly1<'_, F> {
        DisplayPoly1 { poly: self, names }
    }

    /// Renders a univariate polynomial with every variable named `name`.
    pub fn display_in<'a>(&'a self, name: &'a str) -> DisplayPoly1<'a, impl Fn(Var) -> String + 'a> {
        self.display_with(move |_| String::from(name))
    }

    /// Monomials in canonical print order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Natural)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.print_cmp(b.0));
        v
    }
}

fn coeff(v: &[Natural], i: usize) -> Natural {
    v.get(i).cloned().unwrap_or_default()
}

/// Highest degree where the coefficient vectors differ, with the order there.
fn deciding_degree(p: &[Natural], q: &[Natural]) -> Option<(Ordering, usize)> {
    let top = p.len().max(q.len());
    (0..top).rev().find_map(|i| match coeff(p, i).cmp(&coeff(q, i)) {
        Ordering::Equal => None,
        ord => Some((ord, i)),
    })
}

fn eval_dense(c: &[Natural], d: &Natural) -> Natural {
    c.iter().rev().fold(Natural::zero(), |acc, a| acc * d + a)
}

/// Threshold for `big > small` (strict) or `big >= small`, given that `big`
/// wins at degree `k`. Certified by `1 + Σ_{i<k} max(0, small_i − big_i)`.
fn crossover(big: &[Natural], small: &[Natural], k: usize, strict: bool) -> Natural {
    let deficit: Natural = (0..k)
        .map(|i| {
            let (b, s) = (coeff(big, i), coeff(small, i));
            if s > b {
                s - b
            } else {
                Natural::zero()
            }
        })
        .sum();
    let bound = deficit + Natural::one();
    let Some(limit) = bound.to_u64().filter(|b| *b <= REFINE_LIMIT) else {
        return bound;
    };
    let holds = |d: u64| {
        let d = Natural::from(d);
        let (b, s) = (eval_dense(big, &d), eval_dense(small, &d));
        if strict {
            b > s
        } else {
            b >= s
        }
    };
    let mut t = limit;
    while t > 0 && holds(t - 1) {
        t -= 1;
    }
    Natural::from(t)
}

impl Add for &Poly1 {
    type Output = Poly1;
    fn add(self, rhs: &Poly1) -> Poly1 {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Add for Poly1 {
    type Output = Poly1;
    fn add(self, rhs: Poly1) -> Poly1 {
        &self + &rhs
    }
}

impl Mul for &Poly1 {
    type Output = Poly1;
    fn mul(self, rhs: &Poly1) -> Poly1 {
        let mut out = Poly1::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for Poly1 {
    type Output = Poly1;
    fn mul(self, rhs: Poly1) -> Poly1 {
        &self * &rhs
    }
}

pub struct DisplayPoly1<'a, F> {
    poly: &'a Poly1,
    names: F,
}

impl<F: Fn(Var) -> String> fmt::Display for DisplayPoly1<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.poly.sorted_terms().into_iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let mut parts: Vec<String> = vec![];
            if !c.is_one() || m.is_one() {
                parts.push(format!("{c}"));
            }
            for (v, e) in m.factors() {
                let name = (self.names)(v);
                parts.push(if e == 1 { name } else { format!("{name}^{e}") });
            }
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Display for Poly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.display_with(|v| format!("{v}")), f)
    }
}
