//! Concrete nondecreasing total functions `ℕ → ℕ`.

use crate::{Error, Natural, Poly1, Result, Var};
use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use num_traits::Zero;

/// Anything that can serve as the function argument of a second-order
/// polynomial.
pub trait Monotone {
    fn apply(&self, x: &Natural) -> Natural;
}

/// Adapter turning a closure into a [`Monotone`]. Monotonicity is the
/// caller's responsibility.
pub struct FnMonotone<F>(pub F);

impl<F: Fn(&Natural) -> Natural> Monotone for FnMonotone<F> {
    fn apply(&self, x: &Natural) -> Natural {
        (self.0)(x)
    }
}

impl<T: Monotone + ?Sized> Monotone for &T {
    fn apply(&self, x: &Natural) -> Natural {
        (**self).apply(x)
    }
}

/// Extension beyond the last breakpoint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tail {
    /// Repeat the last value.
    Hold,
    /// `y_last + k·(x − x_last)`.
    AffineSlope(Natural),
    /// A univariate polynomial in [`Var`] `0`.
    Poly(Poly1),
}

/// Step table with a tail policy.
///
/// Below the first breakpoint the first value is returned; between two
/// breakpoints the value of the left one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneFn {
    points: Vec<(Natural, Natural)>,
    tail: Tail,
}

pub(crate) const TAIL_VAR: Var = Var(0);

impl MonotoneFn {
    pub fn new(points: Vec<(Natural, Natural)>, tail: Tail) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::NotMonotone("no breakpoints".into()));
        }
        for w in points.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::NotMonotone(format!("x values {} and {} are not increasing", w[0].0, w[1].0)));
            }
            if w[0].1 > w[1].1 {
                return Err(Error::NotMonotone(format!("value drops from {} to {} at x = {}", w[0].1, w[1].1, w[1].0)));
            }
        }
        if let Tail::Poly(p) = &tail {
            let (x, y) = points.last().expect("nonempty");
            let at = p.eval_univariate(TAIL_VAR, x)?;
            if &at < y {
                return Err(Error::NotMonotone(format!("tail polynomial gives {at} < {y} at x = {x}")));
            }
        }
        Ok(MonotoneFn { points, tail })
    }

    /// The function `m ↦ p(m)`; `p` must be univariate in `Var(0)`.
    pub fn from_poly(p: Poly1) -> Result<Self> {
        let y0 = p.eval_univariate(TAIL_VAR, &Natural::zero())?;
        Self::new(alloc::vec![(Natural::zero(), y0)], Tail::Poly(p))
    }

    pub fn identity() -> Self {
        Self::from_poly(Poly1::var(TAIL_VAR)).expect("identity is monotone")
    }

    pub fn constant(c: Natural) -> Self {
        MonotoneFn { points: alloc::vec![(Natural::zero(), c)], tail: Tail::Hold }
    }

    pub fn points(&self) -> &[(Natural, Natural)] {
        &self.points
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    pub fn eval(&self, x: &Natural) -> Natural {
        let idx = self.points.partition_point(|(px, _)| px <= x);
        if idx == 0 {
            return self.points[0].1.clone();
        }
        if idx < self.points.len() {
            return self.points[idx - 1].1.clone();
        }
        let (lx, ly) = &self.points[idx - 1];
        match &self.tail {
            Tail::Hold => ly.clone(),
            Tail::AffineSlope(k) => ly + k * (x - lx),
            Tail::Poly(p) => {
                if x == lx {
                    ly.clone()
                } else {
                    p.eval_univariate(TAIL_VAR, x).expect("validated univariate").max(ly.clone())
                }
            }
        }
    }

    /// Whether `self(x) >= other(x)` at every breakpoint of both and at
    /// `extra` sample points.
    pub fn dominates_on(&self, other: &MonotoneFn, extra: impl IntoIterator<Item = Natural>) -> bool {
        let xs = self.points.iter().chain(other.points.iter()).map(|(x, _)| x.clone()).chain(extra);
        xs.into_iter().all(|x| self.eval(&x) >= other.eval(&x))
    }
}

impl Monotone for MonotoneFn {
    fn apply(&self, x: &Natural) -> Natural {
        self.eval(x)
    }
}

impl fmt::Display for MonotoneFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("table:")?;
        for (i, (x, y)) in self.points.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}:{y}")?;
        }
        match &self.tail {
            Tail::Hold => f.write_str(";tail:hold"),
            Tail::AffineSlope(k) => write!(f, ";tail:slope:{k}"),
            Tail::Poly(p) => write!(f, ";tail:poly:{}", p.display_in("m")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: u64) -> Natural {
        Natural::from(v)
    }

    fn table(pts: &[(u64, u64)], tail: Tail) -> Result<MonotoneFn> {
        MonotoneFn::new(pts.iter().map(|(x, y)| (n(*x), n(*y))).collect(), tail)
    }

    #[test]
    fn step_lookup_and_head() {
        let f = table(&[(2, 5), (4, 6)], Tail::Hold).unwrap();
        assert_eq!(f.eval(&n(0)), n(5));
        assert_eq!(f.eval(&n(2)), n(5));
        assert_eq!(f.eval(&n(3)), n(5));
        assert_eq!(f.eval(&n(4)), n(6));
        assert_eq!(f.eval(&n(100)), n(6));
    }

    #[test]
    fn tails() {
        let f = table(&[(2, 5)], Tail::AffineSlope(n(3))).unwrap();
        assert_eq!(f.eval(&n(4)), n(11));
        let sq = Poly1::var(TAIL_VAR).pow(2);
        let g = table(&[(2, 4)], Tail::Poly(sq.clone())).unwrap();
        assert_eq!(g.eval(&n(5)), n(25));
        assert!(table(&[(2, 5)], Tail::Poly(sq)).is_err());
    }

    #[test]
    fn rejects_nonmonotone() {
        assert!(table(&[(1, 5), (2, 4)], Tail::Hold).is_err());
        assert!(table(&[(2, 1), (2, 4)], Tail::Hold).is_err());
        assert!(table(&[], Tail::Hold).is_err());
    }

    #[test]
    fn from_poly_matches_polynomial() {
        let p = &Poly1::var(TAIL_VAR) + &Poly1::constant(n(3));
        let f = MonotoneFn::from_poly(p).unwrap();
        for x in 0..20 {
            assert_eq!(f.eval(&n(x)), n(x + 3));
        }
        assert_eq!(MonotoneFn::identity().eval(&n(17)), n(17));
    }

    #[test]
    fn display_is_fnspec() {
        let f = table(&[(1, 2), (3, 9)], Tail::AffineSlope(n(1))).unwrap();
        assert_eq!(f.to_string(), "table:1:2,3:9;tail:slope:1");
    }
}
