//! Third-order polynomials `𝔓(N, Λ, 𝓕)`.
//!
//! `𝓕` ranges over monotone operators `Φ` on nondecreasing functions. An
//! application `𝓕(𝔓)` denotes `Φ(m ↦ ⟦𝔓⟧(m, ℓ, Φ))` applied to `n`.

use crate::arctic::{ArcticTerm, ArcticTerm2, Incomparable, Lim2, LimResult, Limit2, Regime, D};
use crate::monotone::FnMonotone;
use crate::syntax::{self, Printable, View};
use crate::{Error, Monotone, MonotoneFn, Natural, Poly2, Result};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Poly3 {
    One,
    N,
    Add(Arc<Poly3>, Arc<Poly3>),
    Mul(Arc<Poly3>, Arc<Poly3>),
    Lam(Arc<Poly3>),
    AppF(Arc<Poly3>),
}

/// A concrete monotone operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Operator2 {
    /// `Φ(f) = n ↦ ⟦T⟧(n, f)`.
    Template(Poly2),
    /// `Φ(f) = g ∘ f`.
    PostCompose(MonotoneFn),
}

impl Operator2 {
    /// `Φ(f)(n)`.
    pub fn apply(&self, f: &dyn Monotone, n: &Natural) -> Natural {
        match self {
            Operator2::Template(t) => t.eval(n, f),
            Operator2::PostCompose(g) => g.eval(&f.apply(n)),
        }
    }
}

impl fmt::Display for Operator2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operator2::Template(t) => t.fmt(f),
            Operator2::PostCompose(g) => write!(f, "compose({g})"),
        }
    }
}

/// Outcome of [`Poly3::double_degree`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DoubleDegree {
    Degree {
        /// Limit of the second-order degree.
        limit: Limit2,
        regime: Regime,
        /// First-order degree of `limit`.
        degree: ArcticTerm,
        asymptotic: LimResult,
    },
    Incomparable(Incomparable),
}

/// Witness returned by [`distinguish_random`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness3 {
    pub n: Natural,
    pub ell: MonotoneFn,
    pub phi: Operator2,
    pub values: Vec<Natural>,
}

impl Poly3 {
    pub fn one() -> Self {
        Poly3::One
    }

    pub fn n() -> Self {
        Poly3::N
    }

    pub fn add(a: Poly3, b: Poly3) -> Self {
        Poly3::Add(Arc::new(a), Arc::new(b))
    }

    pub fn mul(a: Poly3, b: Poly3) -> Self {
        Poly3::Mul(Arc::new(a), Arc::new(b))
    }

    pub fn lam(a: Poly3) -> Self {
        Poly3::Lam(Arc::new(a))
    }

    pub fn app_f(a: Poly3) -> Self {
        Poly3::AppF(Arc::new(a))
    }

    /// See [`Poly2::literal`].
    pub fn literal(k: u64) -> Self {
        Poly3::from(&Poly2::literal(k))
    }

    /// See [`Poly2::pow`].
    pub fn pow(x: &Poly3, k: u32) -> Self {
        assert!(k >= 1, "exponent must be positive");
        let base = Arc::new(x.clone());
        let mut acc = x.clone();
        for _ in 1..k {
            acc = Poly3::Mul(Arc::new(acc), base.clone());
        }
        acc
    }

    pub fn size(&self) -> usize {
        match self {
            Poly3::One | Poly3::N => 1,
            Poly3::Add(a, b) | Poly3::Mul(a, b) => 1 + a.size() + b.size(),
            Poly3::Lam(a) | Poly3::AppF(a) => 1 + a.size(),
        }
    }

    /// The same term when `𝓕` does not occur.
    pub fn to_poly2(&self) -> Option<Poly2> {
        Some(match self {
            Poly3::One => Poly2::One,
            Poly3::N => Poly2::N,
            Poly3::Add(a, b) => Poly2::add(a.to_poly2()?, b.to_poly2()?),
            Poly3::Mul(a, b) => Poly2::mul(a.to_poly2()?, b.to_poly2()?),
            Poly3::Lam(a) => Poly2::lam(a.to_poly2()?),
            Poly3::AppF(_) => return None,
        })
    }

    pub fn eval(&self, n: &Natural, ell: &dyn Monotone, phi: &Operator2) -> Natural {
        match self {
            Poly3::One => Natural::one(),
            Poly3::N => n.clone(),
            Poly3::Add(a, b) => a.eval(n, ell, phi) + b.eval(n, ell, phi),
            Poly3::Mul(a, b) => a.eval(n, ell, phi) * b.eval(n, ell, phi),
            Poly3::Lam(a) => ell.apply(&a.eval(n, ell, phi)),
            Poly3::AppF(a) => {
                let arg = FnMonotone(|m: &Natural| a.eval(m, ell, phi));
                phi.apply(&arg, n)
            }
        }
    }

    fn map_n(&self, q: &Arc<Poly3>) -> Poly3 {
        match self {
            Poly3::One => Poly3::One,
            Poly3::N => (**q).clone(),
            Poly3::Add(a, b) => Poly3::Add(Arc::new(a.map_n(q)), Arc::new(b.map_n(q))),
            Poly3::Mul(a, b) => Poly3::Mul(Arc::new(a.map_n(q)), Arc::new(b.map_n(q))),
            Poly3::Lam(a) => Poly3::Lam(Arc::new(a.map_n(q))),
            Poly3::AppF(a) => Poly3::AppF(Arc::new(a.map_n(q))),
        }
    }

    /// `𝔓 ⋆ 𝔔`: every `N` replaced by `𝔔`.
    pub fn star(&self, q: &Poly3) -> Poly3 {
        self.map_n(&Arc::new(q.clone()))
    }

    /// `𝔓 ∘ 𝔔`: `Λ(𝔓) ∘ 𝔔 = 𝔔 ⋆ (𝔓 ∘ 𝔔)`, `𝓕` left in place.
    pub fn circ(&self, q: &Poly3) -> Poly3 {
        match self {
            Poly3::One => Poly3::One,
            Poly3::N => Poly3::N,
            Poly3::Add(a, b) => Poly3::add(a.circ(q), b.circ(q)),
            Poly3::Mul(a, b) => Poly3::mul(a.circ(q), b.circ(q)),
            Poly3::Lam(a) => q.star(&a.circ(q)),
            Poly3::AppF(a) => Poly3::app_f(a.circ(q)),
        }
    }

    /// `𝔓 ⊛ 𝔔`: `𝓕(𝔓) ⊛ 𝔔 = 𝔔 ∘ (𝔓 ⊛ 𝔔)`, `Λ` left in place.
    pub fn opcirc(&self, q: &Poly3) -> Poly3 {
        match self {
            Poly3::One => Poly3::One,
            Poly3::N => Poly3::N,
            Poly3::Add(a, b) => Poly3::add(a.opcirc(q), b.opcirc(q)),
            Poly3::Mul(a, b) => Poly3::mul(a.opcirc(q), b.opcirc(q)),
            Poly3::Lam(a) => Poly3::lam(a.opcirc(q)),
            Poly3::AppF(a) => q.circ(&a.opcirc(q)),
        }
    }

    /// The second-order arctic degree; `𝓕(𝔓) ↦ Δ(DEG(𝔓))`.
    #[allow(non_snake_case)]
    pub fn DEG(&self) -> ArcticTerm2 {
        match self {
            Poly3::One => ArcticTerm2::constant(0u32),
            Poly3::N => ArcticTerm2::constant(1u32),
            Poly3::Add(a, b) => ArcticTerm2::max([a.DEG(), b.DEG()]),
            Poly3::Mul(a, b) => ArcticTerm2::add(a.DEG(), b.DEG()),
            Poly3::Lam(a) => ArcticTerm2::mul(ArcticTerm2::D, a.DEG()),
            Poly3::AppF(a) => ArcticTerm2::delta(a.DEG()),
        }
    }

    /// Maximal nesting of `𝓕`.
    pub fn depth_f(&self) -> u32 {
        match self {
            Poly3::One | Poly3::N => 0,
            Poly3::Add(a, b) | Poly3::Mul(a, b) => a.depth_f().max(b.depth_f()),
            Poly3::Lam(a) => a.depth_f(),
            Poly3::AppF(a) => 1 + a.depth_f(),
        }
    }

    /// Degree of the limit of the second-order degree, and its limit.
    pub fn double_degree(&self) -> Result<DoubleDegree> {
        Ok(match self.DEG().lim() {
            Lim2::Incomparable(inc) => DoubleDegree::Incomparable(inc),
            Lim2::Limit { limit, regime } => {
                let degree = limit.degree();
                let asymptotic = degree.lim(D)?;
                DoubleDegree::Degree { limit, regime, degree, asymptotic }
            }
        })
    }
}

impl From<&Poly2> for Poly3 {
    fn from(p: &Poly2) -> Self {
        match p {
            Poly2::One => Poly3::One,
            Poly2::N => Poly3::N,
            Poly2::Add(a, b) => Poly3::add(a.as_ref().into(), b.as_ref().into()),
            Poly2::Mul(a, b) => Poly3::mul(a.as_ref().into(), b.as_ref().into()),
            Poly2::Lam(a) => Poly3::lam(a.as_ref().into()),
        }
    }
}

impl Printable for Poly3 {
    fn view(&self) -> View<'_, Self> {
        match self {
            Poly3::One => View::One,
            Poly3::N => View::N,
            Poly3::Add(a, b) => View::Add(a, b),
            Poly3::Mul(a, b) => View::Mul(a, b),
            Poly3::Lam(a) => View::Lam(a),
            Poly3::AppF(a) => View::F(a),
        }
    }
}

impl fmt::Display for Poly3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&syntax::print(self))
    }
}

/// Random steep table: consecutive breakpoints `0..=16` whose values grow
/// by a factor in `2..=5`, continued quadratically.
pub fn random_steep(rng: &mut impl Rng) -> MonotoneFn {
    let mut y = Natural::from(rng.gen_range(1u32..=4));
    let mut points = Vec::new();
    for x in 0u32..=16 {
        points.push((Natural::from(x), y.clone()));
        y *= rng.gen_range(2u32..=5);
    }
    let last = points.last().expect("nonempty").1.clone();
    let tail = crate::Poly1::monomial(crate::Monomial::power(crate::Var(0), 2), last);
    MonotoneFn::new(points, crate::Tail::Poly(tail)).expect("steep table is monotone")
}

/// Searches for `(n, ℓ, Φ)` under which all inputs evaluate pairwise
/// distinctly, sampling steep tables for `ℓ` and random templates for `Φ`.
///
/// `Ok(None)` means the budget ran out, which says nothing about equality.
pub fn distinguish_random(ps: &[Poly3], budget: usize, seed: u64) -> Result<Option<Witness3>> {
    for i in 0..ps.len() {
        for j in i + 1..ps.len() {
            if ps[i] == ps[j] {
                return Err(Error::DuplicateInputs(i, j));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..budget {
        let n = Natural::from(rng.gen_range(2u32..=9));
        let ell = random_steep(&mut rng);
        let phi = Operator2::Template(crate::random::poly2(&mut rng, 7, 2));
        let values: Vec<Natural> = ps.iter().map(|p| p.eval(&n, &ell, &phi)).collect();
        let distinct = (0..values.len()).all(|i| (i + 1..values.len()).all(|j| values[i] != values[j]));
        if distinct {
            let check: Vec<Natural> = ps.iter().map(|p| p.eval(&n, &ell, &phi)).collect();
            if check != values {
                return Err(Error::VerificationFailed);
            }
            return Ok(Some(Witness3 { n, ell, phi, values }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_arctic2, parse_poly2, parse_poly3};

    fn p(s: &str) -> Poly3 {
        parse_poly3(s).unwrap()
    }

    fn n(v: u64) -> Natural {
        Natural::from(v)
    }

    fn template(s: &str) -> Operator2 {
        Operator2::Template(parse_poly2(s).unwrap())
    }

    #[test]
    fn eval_examples() {
        let double = FnMonotone(|m: &Natural| m * 2u32);
        // Φ(f)(3) = f(3) + 1 with f(m) = ⟦N⟧(m) = m.
        assert_eq!(p("F(N)").eval(&n(3), &double, &template("L(N)+1")), n(4));
        assert_eq!(p("1").eval(&n(3), &double, &template("N")), n(1));
        // The template N ignores its function argument.
        assert_eq!(p("F(N*N)").eval(&n(2), &double, &template("N")), n(2));
        // f(m) = m², applied by Φ at n = 2.
        assert_eq!(p("F(N*N)").eval(&n(2), &double, &template("L(N)")), n(4));
        let post = Operator2::PostCompose(MonotoneFn::from_poly(crate::syntax::parse_univariate("m+10", "m").unwrap()).unwrap());
        assert_eq!(p("F(N*N)").eval(&n(3), &double, &post), n(19));
    }

    #[test]
    fn composition_examples() {
        assert_eq!(p("F(N)").star(&p("N*N")), p("F(N*N)"));
        let q = p("F(L(N))+N");
        assert_eq!(p("L(N)").circ(&q), q);
        assert_eq!(p("N").opcirc(&q), p("N"));
        assert_eq!(p("F(N)").opcirc(&p("L(N)")), p("N"));
        assert_eq!(p("F(N)*L(N)").opcirc(&q), Poly3::mul(p("F(N)").opcirc(&q), p("L(N)").opcirc(&q)));
        assert_eq!(p("F(L(N))").opcirc(&p("L(L(N))")), p("L(L(N))"));
    }

    #[test]
    fn star_semantics_for_f_free_outer() {
        let ell = FnMonotone(|m: &Natural| m + 1u32);
        let phi = template("L(N)");
        let outer = p("L(N)*N + 1");
        let inner = p("F(N)+N");
        let lhs = outer.star(&inner).eval(&n(2), &ell, &phi);
        assert_eq!(lhs, outer.eval(&inner.eval(&n(2), &ell, &phi), &ell, &phi));
    }

    #[test]
    fn star_semantics_fails_through_f() {
        // ⟦F(N) ⋆ N²⟧ applies Φ to m ↦ m², two-stage evaluation applies Φ(id) at n².
        let ell = FnMonotone(|m: &Natural| m + 1u32);
        let phi = template("L(N)");
        let lhs = p("F(N)").star(&p("N*N")).eval(&n(3), &ell, &phi);
        let rhs = p("F(N)").eval(&n(9), &ell, &phi);
        assert_eq!((lhs, rhs), (n(9), n(9)));
        let phi = template("L(N)+N");
        let lhs = p("F(N)").star(&p("N*N")).eval(&n(3), &ell, &phi);
        let rhs = p("F(N)").eval(&n(9), &ell, &phi);
        assert_eq!((lhs, rhs), (n(12), n(18)));
    }

    #[test]
    fn deg_examples() {
        assert_eq!(p("F(L(N)*N)*L(F(N))").DEG(), parse_arctic2("Delta(D*1 + 1) + D*Delta(1)").unwrap());
        assert_eq!(p("N").DEG(), ArcticTerm2::constant(1u32));
        assert_eq!(p("F(1)").DEG(), parse_arctic2("Delta(0)").unwrap());
        let sq = FnMonotone(|m: &Natural| m * m);
        assert_eq!(p("F(L(N)*N)*L(F(N))").DEG().eval(&n(2), &sq), n(11));
    }

    #[test]
    fn depth_examples() {
        assert_eq!(p("F(F(N))").depth_f(), 2);
        assert_eq!(p("L(N)").depth_f(), 0);
        assert_eq!(p("F(L(F(N)))").depth_f(), 2);
    }

    #[test]
    fn double_degree_examples() {
        match p("F(F(N))").double_degree().unwrap() {
            DoubleDegree::Degree { limit, degree, asymptotic, .. } => {
                assert_eq!(limit.to_term(), parse_arctic2("Delta(Delta(1))").unwrap());
                assert_eq!(limit.to_poly2().unwrap().to_string(), "L(L(1))");
                assert_eq!(degree.simplify(), ArcticTerm::constant(0u32));
                assert_eq!(asymptotic.poly.total_degree(), None);
            }
            other => panic!("{other:?}"),
        }
        match p("N*N").double_degree().unwrap() {
            DoubleDegree::Degree { degree, .. } => assert_eq!(degree.simplify(), ArcticTerm::constant(0u32)),
            other => panic!("{other:?}"),
        }
        match p("L(N)+F(N)").double_degree().unwrap() {
            DoubleDegree::Incomparable(inc) => assert_eq!(inc.pair().to_string(), "max(D, Delta(1))"),
            other => panic!("{other:?}"),
        }
        match p("F(L(N))").double_degree().unwrap() {
            DoubleDegree::Degree { asymptotic, .. } => assert_eq!(asymptotic.poly.total_degree(), Some(1)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn random_distinguisher() {
        let found = distinguish_random(&[p("F(N)"), p("L(N)")], 50, 1).unwrap().unwrap();
        assert_ne!(found.values[0], found.values[1]);
        let phi = template("L(N)*L(N)");
        let ell = MonotoneFn::new(alloc::vec![(n(2), n(3))], crate::Tail::AffineSlope(n(1))).unwrap();
        assert_eq!(p("F(N)").eval(&n(2), &ell, &phi), n(4));
        assert_eq!(p("L(N)").eval(&n(2), &ell, &phi), n(3));
        assert_eq!(distinguish_random(&[p("N"), p("N")], 5, 1), Err(Error::DuplicateInputs(0, 1)));
        let found = distinguish_random(&[p("F(N)"), p("F(N)+1")], 5, 3).unwrap().unwrap();
        assert_eq!(&found.values[0] + 1u32, found.values[1]);
        assert_eq!(distinguish_random(&[p("N+1"), p("1+N")], 20, 3).unwrap(), None);
    }

    #[test]
    fn operator_monotone() {
        let t = template("L(N)*N + L(L(N))");
        let small = FnMonotone(|m: &Natural| m + 1u32);
        let big = FnMonotone(|m: &Natural| m * m + 1u32);
        for x in 0..10u64 {
            assert!(t.apply(&small, &n(x)) <= t.apply(&big, &n(x)));
        }
    }
}
