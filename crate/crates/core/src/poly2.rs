//! Second-order polynomials `P(N, Λ)`.

use crate::arctic::{ArcticTerm, LimResult, D};
use crate::syntax::{self, Printable, View};
use crate::{Monotone, Natural, Result};
use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use core::fmt;
use num_traits::One;

/// Terms over `1`, `N`, `+`, `·` and `Λ(·)`. Subterms are shared, so
/// compositions do not copy their arguments.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Poly2 {
    One,
    N,
    Add(Arc<Poly2>, Arc<Poly2>),
    Mul(Arc<Poly2>, Arc<Poly2>),
    Lam(Arc<Poly2>),
}

impl Poly2 {
    pub fn one() -> Self {
        Poly2::One
    }

    pub fn n() -> Self {
        Poly2::N
    }

    pub fn add(a: Poly2, b: Poly2) -> Self {
        Poly2::Add(Arc::new(a), Arc::new(b))
    }

    pub fn mul(a: Poly2, b: Poly2) -> Self {
        Poly2::Mul(Arc::new(a), Arc::new(b))
    }

    pub fn lam(a: Poly2) -> Self {
        Poly2::Lam(Arc::new(a))
    }

    /// `1 + 1 + ⋯ + 1` with `k >= 1` ones, nested to the left.
    pub fn literal(k: u64) -> Self {
        assert!(k >= 1, "second-order polynomials have no zero");
        let one = Arc::new(Poly2::One);
        let mut acc = Poly2::One;
        for _ in 1..k {
            acc = Poly2::Add(Arc::new(acc), one.clone());
        }
        acc
    }

    /// `x · x ⋯ x` with `k >= 1` factors, nested to the left.
    pub fn pow(x: &Poly2, k: u32) -> Self {
        assert!(k >= 1, "exponent must be positive");
        let base = Arc::new(x.clone());
        let mut acc = x.clone();
        for _ in 1..k {
            acc = Poly2::Mul(Arc::new(acc), base.clone());
        }
        acc
    }

    /// Number of nodes of the unshared tree.
    pub fn size(&self) -> usize {
        match self {
            Poly2::One | Poly2::N => 1,
            Poly2::Add(a, b) | Poly2::Mul(a, b) => 1 + a.size() + b.size(),
            Poly2::Lam(a) => 1 + a.size(),
        }
    }

    pub fn eval(&self, n: &Natural, ell: &dyn Monotone) -> Natural {
        self.eval_memo(n, ell, &mut BTreeMap::new())
    }

    fn eval_memo(&self, n: &Natural, ell: &dyn Monotone, memo: &mut BTreeMap<*const Poly2, Natural>) -> Natural {
        let key = self as *const Poly2;
        if let Some(v) = memo.get(&key) {
            return v.clone();
        }
        let v = match self {
            Poly2::One => Natural::one(),
            Poly2::N => n.clone(),
            Poly2::Add(a, b) => a.eval_memo(n, ell, memo) + b.eval_memo(n, ell, memo),
            Poly2::Mul(a, b) => a.eval_memo(n, ell, memo) * b.eval_memo(n, ell, memo),
            Poly2::Lam(a) => ell.apply(&a.eval_memo(n, ell, memo)),
        };
        memo.insert(key, v.clone());
        v
    }

    /// The arctic degree: `1 ↦ 0`, `N ↦ 1`, `+ ↦ max`, `· ↦ +`,
    /// `Λ(P) ↦ D·Deg(P)`.
    pub fn deg(&self) -> ArcticTerm {
        match self {
            Poly2::One => ArcticTerm::constant(0u32),
            Poly2::N => ArcticTerm::constant(1u32),
            Poly2::Add(a, b) => ArcticTerm::max([a.deg(), b.deg()]),
            Poly2::Mul(a, b) => ArcticTerm::add(a.deg(), b.deg()),
            Poly2::Lam(a) => ArcticTerm::mul(ArcticTerm::d(), a.deg()),
        }
    }

    /// Limit of the degree.
    pub fn asym_deg(&self) -> Result<LimResult> {
        self.deg().lim(D)
    }

    /// `P ⋆ Q`: every `N` replaced by `Q`.
    pub fn star(&self, q: &Poly2) -> Poly2 {
        let q = Arc::new(q.clone());
        self.star_arc(&q)
    }

    fn star_arc(&self, q: &Arc<Poly2>) -> Poly2 {
        match self {
            Poly2::One => Poly2::One,
            Poly2::N => (**q).clone(),
            Poly2::Add(a, b) => Poly2::Add(Arc::new(a.star_arc(q)), Arc::new(b.star_arc(q))),
            Poly2::Mul(a, b) => Poly2::Mul(Arc::new(a.star_arc(q)), Arc::new(b.star_arc(q))),
            Poly2::Lam(a) => Poly2::Lam(Arc::new(a.star_arc(q))),
        }
    }

    /// `P ∘ Q`: every `Λ` replaced by `Q`, via `Λ(P) ∘ Q = Q ⋆ (P ∘ Q)`.
    pub fn circ(&self, q: &Poly2) -> Poly2 {
        match self {
            Poly2::One => Poly2::One,
            Poly2::N => Poly2::N,
            Poly2::Add(a, b) => Poly2::add(a.circ(q), b.circ(q)),
            Poly2::Mul(a, b) => Poly2::mul(a.circ(q), b.circ(q)),
            Poly2::Lam(a) => q.star(&a.circ(q)),
        }
    }

    /// Maximal nesting of `Λ`.
    pub fn depth(&self) -> u32 {
        match self {
            Poly2::One | Poly2::N => 0,
            Poly2::Add(a, b) | Poly2::Mul(a, b) => a.depth().max(b.depth()),
            Poly2::Lam(a) => 1 + a.depth(),
        }
    }

    /// No multiplication anywhere.
    pub fn is_linear(&self) -> bool {
        match self {
            Poly2::One | Poly2::N => true,
            Poly2::Add(a, b) => a.is_linear() && b.is_linear(),
            Poly2::Mul(..) => false,
            Poly2::Lam(a) => a.is_linear(),
        }
    }
}

impl Printable for Poly2 {
    fn view(&self) -> View<'_, Self> {
        match self {
            Poly2::One => View::One,
            Poly2::N => View::N,
            Poly2::Add(a, b) => View::Add(a, b),
            Poly2::Mul(a, b) => View::Mul(a, b),
            Poly2::Lam(a) => View::Lam(a),
        }
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&syntax::print(self))
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::arctic::arc_eq;
    use crate::monotone::FnMonotone;
    use crate::syntax::{parse_arctic, parse_poly2};
    use crate::{random, MonotoneFn, Poly1};
    use num_traits::ToPrimitive;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    pub(crate) const EXAMPLE: &str =
        "L(L(L(N)^5)^3)*(L(N^2)+N^9)*N^4 + N^999*L(3*N^5+4*L(N+2)^8*L(7*N)+L(1)^6) + L(N^9)^50";

    fn p(s: &str) -> Poly2 {
        parse_poly2(s).unwrap()
    }

    fn n(v: u64) -> Natural {
        Natural::from(v)
    }

    #[test]
    fn eval_examples() {
        let plus3 = FnMonotone(|m: &Natural| m + 3u32);
        assert_eq!(p("L(N*N)+N").eval(&n(2), &plus3), n(9));
        assert_eq!(p("1").eval(&n(5), &plus3), n(1));
        assert_eq!(p("L(L(N))").eval(&n(1), &MonotoneFn::identity()), n(1));
    }

    #[test]
    fn degree_examples() {
        let eq11 = parse_arctic("max(D*3*D*5*D + max(2*D,9) + 4, 999 + D*max(5, 8*D+D), 450*D)").unwrap();
        assert!(arc_eq(&p(EXAMPLE).deg(), &eq11, D).unwrap());
        assert_eq!(p("N").deg(), ArcticTerm::constant(1u32));
        let d = p("L(N*N)*N").deg();
        assert_eq!(d, parse_arctic("D*(1 + 1) + 1").unwrap());
        for x in 0..10u64 {
            assert_eq!(d.eval_at(&n(x)).unwrap(), n(2 * x + 1));
        }
    }

    #[test]
    fn asymptotic_examples() {
        let lim = p(EXAMPLE).asym_deg().unwrap();
        assert_eq!(lim.poly.display_in("D").to_string(), "15*D^3 + 2*D + 4");
        assert_eq!(p(EXAMPLE).deg().min_threshold(D, &lim).unwrap(), n(6));
        assert_eq!(p("1").asym_deg().unwrap().poly, Poly1::zero());
        let q = p("L(N) + N*N");
        let lim = q.asym_deg().unwrap();
        assert_eq!(lim.poly, Poly1::var(D));
        assert_eq!(q.deg().min_threshold(D, &lim).unwrap(), n(2));
    }

    #[test]
    fn composition_examples() {
        assert_eq!(p("L(N)").star(&p("N*N")), p("L(N*N)"));
        assert_eq!(p("1").star(&p("L(N)")), p("1"));
        assert_eq!(p("L(L(N))").circ(&p("L(N*N)")), p("L(L(N*N)*L(N*N))"));
        assert_eq!(p("N").circ(&p("L(N)+1")), p("N"));
        assert_eq!(p("L(N)").circ(&p("L(N)+N^2")), p("L(N)+N^2"));
        let plus1 = FnMonotone(|m: &Natural| m + 1u32);
        let lhs = p("L(L(N))").circ(&p("L(N*N)"));
        for x in 0..5u64 {
            let via = FnMonotone(|m: &Natural| p("L(N*N)").eval(m, &plus1));
            assert_eq!(lhs.eval(&n(x), &plus1), p("L(L(N))").eval(&n(x), &via));
        }
    }

    #[test]
    fn depth_and_linearity() {
        assert_eq!(p(EXAMPLE).depth(), 3);
        assert_eq!(p("N").depth(), 0);
        assert_eq!(p("L(L(1))").depth(), 2);
        assert!(p("L(N+1)+N").is_linear());
        assert!(!p("N*N").is_linear());
        assert!(p("L(L(N)+1)").is_linear());
    }

    #[test]
    fn depth_law_fails_on_constant_arguments() {
        let q = p("L(1)");
        assert_eq!(q.depth(), 1);
        assert_eq!(q.asym_deg().unwrap().poly.total_degree(), None);
    }

    fn no_mixed_add(t: &ArcticTerm) -> bool {
        match t {
            ArcticTerm::Const(_) | ArcticTerm::Var(_) => true,
            ArcticTerm::Add(a, b) => {
                let nonconst = |x: &ArcticTerm| x.lim(D).map(|l| l.poly.total_degree().unwrap_or(0) > 0).unwrap_or(true);
                !(nonconst(a) && nonconst(b)) && no_mixed_add(a) && no_mixed_add(b)
            }
            ArcticTerm::Mul(a, b) => no_mixed_add(a) && no_mixed_add(b),
            ArcticTerm::Max(v) => v.iter().all(no_mixed_add),
        }
    }

    #[test]
    fn properties_on_random_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let ells: [&dyn Fn(&Natural) -> Natural; 3] = [&|m| m + 1u32, &|m| m * 2u32, &|m| m * m];
        for _ in 0..300 {
            let a = random::poly2(&mut rng, 12, 4);
            let b = random::poly2(&mut rng, 12, 4);
            for f in ells {
                let ell = FnMonotone(f);
                let x = n(3);
                // ⋆ and ∘ semantics by two-stage evaluation.
                let inner = b.eval(&x, &ell);
                assert_eq!(a.star(&b).eval(&x, &ell), a.eval(&inner, &ell));
                let via = FnMonotone(|m: &Natural| b.eval(m, &ell));
                assert_eq!(a.circ(&b).eval(&x, &ell), a.eval(&x, &via));
            }
            // Monotonicity in both arguments.
            let small = FnMonotone(|m: &Natural| m + 1u32);
            let big = FnMonotone(|m: &Natural| m * m + 2u32);
            assert!(a.eval(&n(2), &small) <= a.eval(&n(3), &small));
            assert!(a.eval(&n(2), &small) <= a.eval(&n(2), &big));
            if a.is_linear() {
                assert!(no_mixed_add(&a.deg()), "{a}");
            }
            // Rewrites leave the degree unchanged.
            let r = random::rewrite(&mut rng, &a);
            assert!(arc_eq(&a.deg(), &r.deg(), D).unwrap(), "{a} vs {r}");
            let lim = a.asym_deg().unwrap();
            assert!(lim.threshold.to_u64().is_some());
        }
    }
}
