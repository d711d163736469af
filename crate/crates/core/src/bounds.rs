//! Running-time bounds of chained oracle machines.
//!
//! With `M` running in time `P` and `M'` in time `Q`, feeding the output of
//! `M` to `M'` runs in time `O(P + Q⋆P)`, and using `M` as the oracle of `M'`
//! runs in time `O((Q∘P)·(P⋆(Q∘P)))`. The reports carry these bounds exactly,
//! without the constant factors.

use crate::arctic::{ArcticTerm, LimResult, D};
use crate::{Poly2, Result};
use alloc::boxed::Box;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub bound: Poly2,
    pub degree: ArcticTerm,
    pub asymptotic: LimResult,
}

impl BoundReport {
    fn new(bound: Poly2) -> Result<Self> {
        let degree = bound.deg();
        let asymptotic = degree.lim(D)?;
        Ok(BoundReport { bound, degree, asymptotic })
    }
}

/// `P + Q⋆P`, the bound for running `M'` on the output of `M`.
pub fn concat_a(p: &Poly2, q: &Poly2) -> Result<BoundReport> {
    BoundReport::new(Poly2::add(p.clone(), q.star(p)))
}

/// `(Q∘P)·(P⋆(Q∘P))`, the bound for `M'` querying `M` as its oracle.
pub fn concat_b(p: &Poly2, q: &Poly2) -> Result<BoundReport> {
    let qp = q.circ(p);
    BoundReport::new(Poly2::mul(qp.clone(), p.star(&qp)))
}

/// `outer` with `D` replaced by `inner`.
pub fn compose(outer: &ArcticTerm, inner: &ArcticTerm) -> ArcticTerm {
    match outer {
        ArcticTerm::Const(_) => outer.clone(),
        ArcticTerm::Var(v) if *v == D => inner.clone(),
        ArcticTerm::Var(_) => outer.clone(),
        ArcticTerm::Add(a, b) => ArcticTerm::Add(Box::new(compose(a, inner)), Box::new(compose(b, inner))),
        ArcticTerm::Mul(a, b) => ArcticTerm::Mul(Box::new(compose(a, inner)), Box::new(compose(b, inner))),
        ArcticTerm::Max(v) => ArcticTerm::max(v.iter().map(|t| compose(t, inner))),
    }
}

/// `max(Deg P, Deg P · Deg Q)`.
pub fn predicted_degree_a(p: &Poly2, q: &Poly2) -> ArcticTerm {
    let dp = p.deg();
    ArcticTerm::max([dp.clone(), ArcticTerm::mul(dp, q.deg())])
}

/// `Deg Q ∘ Deg P + Deg P · (Deg Q ∘ Deg P)`.
pub fn predicted_degree_b(p: &Poly2, q: &Poly2) -> ArcticTerm {
    let dp = p.deg();
    let c = compose(&q.deg(), &dp);
    ArcticTerm::add(c.clone(), ArcticTerm::mul(dp, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arctic::arc_eq;
    use crate::syntax::{parse_arctic, parse_poly2};
    use crate::Natural;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> Poly2 {
        parse_poly2(s).unwrap()
    }

    fn agree(a: &ArcticTerm, b: &ArcticTerm) {
        for d in 0..=8u32 {
            assert_eq!(a.eval_at(&Natural::from(d)).unwrap(), b.eval_at(&Natural::from(d)).unwrap(), "{a} vs {b} at {d}");
        }
    }

    #[test]
    fn concat_a_examples() {
        let r = concat_a(&p("N"), &p("N*N")).unwrap();
        assert_eq!(r.bound, p("N + N*N"));
        agree(&r.degree, &parse_arctic("max(1, 2)").unwrap());
        let r = concat_a(&p("1"), &p("L(N)+N")).unwrap();
        assert_eq!(r.bound, p("1 + (L(1)+1)"));
        let r = concat_a(&p("L(N)"), &p("N")).unwrap();
        assert_eq!(r.bound, p("L(N) + L(N)"));
        assert!(arc_eq(&r.degree, &parse_arctic("max(D, D)").unwrap(), D).unwrap());
        assert_eq!(r.asymptotic.poly.display_in("D").to_string(), "D");
    }

    #[test]
    fn concat_b_examples() {
        let r = concat_b(&p("N"), &p("N")).unwrap();
        assert_eq!(r.bound, p("N*N"));
        agree(&r.degree, &ArcticTerm::constant(2u32));
        let r = concat_b(&p("L(N)"), &p("L(N)")).unwrap();
        assert_eq!(r.bound, p("L(N)*L(L(N))"));
        assert!(arc_eq(&r.degree, &parse_arctic("D + D*D").unwrap(), D).unwrap());
        let r = concat_b(&p("L(N)+N"), &p("1")).unwrap();
        assert_eq!(r.bound, p("1*(L(1)+1)"));
    }

    #[test]
    fn degree_identities_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for _ in 0..200 {
            let a = crate::random::poly2(&mut rng, 10, 3);
            let b = crate::random::poly2(&mut rng, 10, 3);
            agree(&concat_a(&a, &b).unwrap().degree, &predicted_degree_a(&a, &b));
            agree(&concat_b(&a, &b).unwrap().degree, &predicted_degree_b(&a, &b));
        }
    }
}
