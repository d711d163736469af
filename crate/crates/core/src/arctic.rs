//! Arctic (max-plus-times) terms.
//!
//! [`ArcticTerm`] is the first-order kind: constants, variables, `+`, `·` and
//! `max`. Its limit ([`ArcticTerm::lim`]) is the ordinary polynomial it
//! eventually coincides with. [`ArcticTerm2`] adds applications `Δ(·)` of a
//! monotone function variable; its limit ([`ArcticTerm2::lim`]) is only
//! partially defined and is computed by a sound dominance order.

use crate::poly1::EventualOrder;
use crate::syntax::{self, Printable, View};
use crate::{Error, Monotone, Natural, Poly1, Poly2, Result, Var};
use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_traits::{One, ToPrimitive, Zero};

/// The degree variable.
pub const D: Var = Var(0);

/// Largest threshold that [`arc_eq`] and [`ArcticTerm::min_threshold`] scan.
pub const SCAN_LIMIT: u64 = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ArcticTerm {
    Const(Natural),
    Var(Var),
    Add(Box<ArcticTerm>, Box<ArcticTerm>),
    Mul(Box<ArcticTerm>, Box<ArcticTerm>),
    /// At least two operands, none of them a `Max`.
    Max(Vec<ArcticTerm>),
}

/// Asymptotic polynomial of a univariate term with a certified threshold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimResult {
    pub poly: Poly1,
    /// From this argument on the term and `poly` agree.
    pub threshold: Natural,
}

fn flatten_max<T>(ops: impl IntoIterator<Item = T>, split: impl Fn(T) -> core::result::Result<Vec<T>, T>) -> Vec<T> {
    let mut out = Vec::new();
    for t in ops {
        match split(t) {
            Ok(inner) => out.extend(inner),
            Err(t) => out.push(t),
        }
    }
    out
}

impl ArcticTerm {
    pub fn constant(c: impl Into<Natural>) -> Self {
        ArcticTerm::Const(c.into())
    }

    pub fn d() -> Self {
        ArcticTerm::Var(D)
    }

    pub fn add(a: ArcticTerm, b: ArcticTerm) -> Self {
        ArcticTerm::Add(Box::new(a), Box::new(b))
    }

    pub fn mul(a: ArcticTerm, b: ArcticTerm) -> Self {
        ArcticTerm::Mul(Box::new(a), Box::new(b))
    }

    /// Flattening `max`; a single operand is returned as is.
    ///
    /// # Panics
    /// If `ops` is empty.
    pub fn max(ops: impl IntoIterator<Item = ArcticTerm>) -> Self {
        let mut flat = flatten_max(ops, |t| match t {
            ArcticTerm::Max(v) => Ok(v),
            t => Err(t),
        });
        assert!(!flat.is_empty(), "max of no operands");
        if flat.len() == 1 {
            flat.pop().expect("one operand")
        } else {
            ArcticTerm::Max(flat)
        }
    }

    pub fn size(&self) -> usize {
        match self {
            ArcticTerm::Const(_) | ArcticTerm::Var(_) => 1,
            ArcticTerm::Add(a, b) | ArcticTerm::Mul(a, b) => 1 + a.size() + b.size(),
            ArcticTerm::Max(v) => 1 + v.iter().map(Self::size).sum::<usize>(),
        }
    }

    pub fn eval(&self, point: &BTreeMap<Var, Natural>) -> Result<Natural> {
        self.eval_with(&|v| point.get(&v).cloned())
    }

    /// Value of a term in the single variable [`D`].
    pub fn eval_at(&self, d: &Natural) -> Result<Natural> {
        self.eval_with(&|v| if v == D { Some(d.clone()) } else { None })
    }

    fn eval_with(&self, value: &dyn Fn(Var) -> Option<Natural>) -> Result<Natural> {
        Ok(match self {
            ArcticTerm::Const(c) => c.clone(),
            ArcticTerm::Var(v) => value(*v).ok_or(Error::MissingVariable(*v))?,
            ArcticTerm::Add(a, b) => a.eval_with(value)? + b.eval_with(value)?,
            ArcticTerm::Mul(a, b) => a.eval_with(value)? * b.eval_with(value)?,
            ArcticTerm::Max(v) => {
                let mut best = Natural::zero();
                for t in v {
                    best = best.max(t.eval_with(value)?);
                }
                best
            }
        })
    }

    /// Asymptotic polynomial in `var` with a certified threshold.
    ///
    /// Sums and products take limits componentwise; a `max` takes the
    /// eventually largest operand limit, its threshold being the point from
    /// which that limit is at least every other.
    pub fn lim(&self, var: Var) -> Result<LimResult> {
        Ok(match self {
            ArcticTerm::Const(c) => LimResult { poly: Poly1::constant(c.clone()), threshold: Natural::zero() },
            ArcticTerm::Var(v) if *v == var => LimResult { poly: Poly1::var(var), threshold: Natural::zero() },
            ArcticTerm::Var(v) => return Err(Error::NotUnivariate { expected: var, found: *v }),
            ArcticTerm::Add(a, b) | ArcticTerm::Mul(a, b) => {
                let (la, lb) = (a.lim(var)?, b.lim(var)?);
                let poly = if matches!(self, ArcticTerm::Add(..)) { &la.poly + &lb.poly } else { &la.poly * &lb.poly };
                LimResult { poly, threshold: la.threshold.max(lb.threshold) }
            }
            ArcticTerm::Max(ops) => {
                let lims = ops.iter().map(|t| t.lim(var)).collect::<Result<Vec<_>>>()?;
                let mut best = 0;
                for i in 1..lims.len() {
                    let EventualOrder { ordering, .. } = lims[i].poly.eventual_compare(&lims[best].poly, var)?;
                    if ordering == core::cmp::Ordering::Greater {
                        best = i;
                    }
                }
                let mut threshold = Natural::zero();
                for l in &lims {
                    threshold = threshold.max(l.threshold.clone());
                    let t = lims[best].poly.dominance_threshold(&l.poly, var)?.expect("maximum dominates");
                    threshold = threshold.max(t);
                }
                LimResult { poly: lims[best].poly.clone(), threshold }
            }
        })
    }

    /// Smallest `t` such that the term agrees with `lim.poly` on all
    /// arguments `>= t`, found by scanning below the certified threshold.
    pub fn min_threshold(&self, var: Var, lim: &LimResult) -> Result<Natural> {
        let top = lim
            .threshold
            .to_u64()
            .filter(|t| *t <= SCAN_LIMIT)
            .ok_or_else(|| Error::ThresholdTooLarge(lim.threshold.to_string()))?;
        let mut t = top;
        while t > 0 {
            let d = Natural::from(t - 1);
            let here = self.eval_with(&|v| if v == var { Some(d.clone()) } else { None })?;
            if here != lim.poly.eval_univariate(var, &d)? {
                break;
            }
            t -= 1;
        }
        Ok(Natural::from(t))
    }

    /// Algebraically equal term with folded constants.
    ///
    /// Constants in sums, products and maxima are combined, zero summands and
    /// zero `max` operands dropped, unit factors removed and repeated summands
    /// merged into `k*t`.
    pub fn simplify(&self) -> ArcticTerm {
        match self {
            ArcticTerm::Const(_) | ArcticTerm::Var(_) => self.clone(),
            ArcticTerm::Add(..) => {
                let mut parts = Vec::new();
                collect(self, &mut parts, &|t| match t {
                    ArcticTerm::Add(a, b) => Some((a, b)),
                    _ => None,
                });
                let mut constant = Natural::zero();
                let mut grouped: Vec<(ArcticTerm, u64)> = Vec::new();
                for p in parts {
                    let mut flat = Vec::new();
                    let s = p.simplify();
                    collect(&s, &mut flat, &|t| match t {
                        ArcticTerm::Add(a, b) => Some((a, b)),
                        _ => None,
                    });
                    for q in flat {
                        match q {
                            ArcticTerm::Const(c) => constant += c,
                            q => match grouped.iter_mut().find(|(t, _)| *t == *q) {
                                Some((_, k)) => *k += 1,
                                None => grouped.push((q.clone(), 1)),
                            },
                        }
                    }
                }
                let mut items: Vec<ArcticTerm> = grouped
                    .into_iter()
                    .map(|(t, k)| if k == 1 { t } else { scale(k, t) })
                    .collect();
                if !constant.is_zero() || items.is_empty() {
                    items.push(ArcticTerm::Const(constant));
                }
                fold(items, ArcticTerm::add)
            }
            ArcticTerm::Mul(..) => {
                let mut parts = Vec::new();
                collect(self, &mut parts, &|t| match t {
                    ArcticTerm::Mul(a, b) => Some((a, b)),
                    _ => None,
                });
                let mut constant = Natural::one();
                let mut items = Vec::new();
                for p in parts {
                    match p.simplify() {
                        ArcticTerm::Const(c) => constant *= c,
                        q => items.push(q),
                    }
                }
                if constant.is_zero() || items.is_empty() {
                    return ArcticTerm::Const(constant);
                }
                if !constant.is_one() {
                    items.insert(0, ArcticTerm::Const(constant));
                }
                fold(items, ArcticTerm::mul)
            }
            ArcticTerm::Max(ops) => {
                let mut constant: Option<(usize, Natural)> = None;
                let mut items: Vec<ArcticTerm> = Vec::new();
                let simplified = ArcticTerm::max(ops.iter().map(Self::simplify));
                let flat = match simplified {
                    ArcticTerm::Max(v) => v,
                    t => vec![t],
                };
                for q in flat {
                    match q {
                        ArcticTerm::Const(c) => match &mut constant {
                            Some((_, m)) => *m = core::mem::take(m).max(c),
                            None => constant = Some((items.len(), c)),
                        },
                        q if !items.contains(&q) => items.push(q),
                        _ => {}
                    }
                }
                if let Some((pos, c)) = constant {
                    if !c.is_zero() || items.is_empty() {
                        items.insert(pos, ArcticTerm::Const(c));
                    }
                }
                ArcticTerm::max(items)
            }
        }
    }
}

fn scale(k: u64, t: ArcticTerm) -> ArcticTerm {
    match t {
        ArcticTerm::Mul(a, b) => match *a {
            ArcticTerm::Const(c) => ArcticTerm::mul(ArcticTerm::Const(c * k), *b),
            a => ArcticTerm::mul(ArcticTerm::constant(k), ArcticTerm::mul(a, *b)),
        },
        t => ArcticTerm::mul(ArcticTerm::constant(k), t),
    }
}

fn collect<'a>(t: &'a ArcticTerm, out: &mut Vec<&'a ArcticTerm>, split: &dyn Fn(&'a ArcticTerm) -> Option<(&'a Box<ArcticTerm>, &'a Box<ArcticTerm>)>) {
    match split(t) {
        Some((a, b)) => {
            collect(a, out, split);
            collect(b, out, split);
        }
        None => out.push(t),
    }
}

fn fold<T>(items: Vec<T>, op: impl Fn(T, T) -> T) -> T {
    let mut it = items.into_iter();
    let first = it.next().expect("nonempty");
    it.fold(first, op)
}

/// Whether two univariate terms agree on all of ℕ.
///
/// Equal limits plus agreement below both certified thresholds decide the
/// question exactly.
pub fn arc_eq(s: &ArcticTerm, t: &ArcticTerm, var: Var) -> Result<bool> {
    let (ls, lt) = (s.lim(var)?, t.lim(var)?);
    if ls.poly != lt.poly {
        return Ok(false);
    }
    let top = ls.threshold.max(lt.threshold);
    let top = top
        .to_u64()
        .filter(|t| *t <= SCAN_LIMIT)
        .ok_or_else(|| Error::ThresholdTooLarge(top.to_string()))?;
    for d in 0..=top {
        let d = Natural::from(d);
        let at = |x: &ArcticTerm| x.eval_with(&|v| if v == var { Some(d.clone()) } else { None });
        if at(s)? != at(t)? {
            return Ok(false);
        }
    }
    Ok(true)
}

impl Printable for ArcticTerm {
    fn view(&self) -> View<'_, Self> {
        match self {
            ArcticTerm::Const(c) => View::Nat(c),
            ArcticTerm::Var(v) if *v == D => View::D,
            ArcticTerm::Var(v) => View::Name(v.0),
            ArcticTerm::Add(a, b) => View::Add(a, b),
            ArcticTerm::Mul(a, b) => View::Mul(a, b),
            ArcticTerm::Max(v) => View::Max(v),
        }
    }
}

impl fmt::Display for ArcticTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&syntax::print(self))
    }
}

/// Arctic term in `D` and a function variable `Δ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ArcticTerm2 {
    Const(Natural),
    D,
    Add(Box<ArcticTerm2>, Box<ArcticTerm2>),
    Mul(Box<ArcticTerm2>, Box<ArcticTerm2>),
    Max(Vec<ArcticTerm2>),
    Delta(Box<ArcticTerm2>),
}

impl ArcticTerm2 {
    pub fn constant(c: impl Into<Natural>) -> Self {
        ArcticTerm2::Const(c.into())
    }

    pub fn add(a: ArcticTerm2, b: ArcticTerm2) -> Self {
        ArcticTerm2::Add(Box::new(a), Box::new(b))
    }

    pub fn mul(a: ArcticTerm2, b: ArcticTerm2) -> Self {
        ArcticTerm2::Mul(Box::new(a), Box::new(b))
    }

    pub fn delta(a: ArcticTerm2) -> Self {
        ArcticTerm2::Delta(Box::new(a))
    }

    /// Flattening `max`; see [`ArcticTerm::max`].
    pub fn max(ops: impl IntoIterator<Item = ArcticTerm2>) -> Self {
        let mut flat = flatten_max(ops, |t| match t {
            ArcticTerm2::Max(v) => Ok(v),
            t => Err(t),
        });
        assert!(!flat.is_empty(), "max of no operands");
        if flat.len() == 1 {
            flat.pop().expect("one operand")
        } else {
            ArcticTerm2::Max(flat)
        }
    }

    pub fn eval(&self, d: &Natural, delta: &dyn Monotone) -> Natural {
        match self {
            ArcticTerm2::Const(c) => c.clone(),
            ArcticTerm2::D => d.clone(),
            ArcticTerm2::Add(a, b) => a.eval(d, delta) + b.eval(d, delta),
            ArcticTerm2::Mul(a, b) => a.eval(d, delta) * b.eval(d, delta),
            ArcticTerm2::Max(v) => v.iter().map(|t| t.eval(d, delta)).max().unwrap_or_default(),
            ArcticTerm2::Delta(a) => delta.apply(&a.eval(d, delta)),
        }
    }

    /// Replaces every `D` by `s`.
    pub fn subst_d(&self, s: &ArcticTerm2) -> ArcticTerm2 {
        self.map(&|t| match t {
            ArcticTerm2::D => Some(s.clone()),
            _ => None,
        })
    }

    /// Replaces every `Δ(a)` by `s` with `D` bound to the rewritten `a`.
    pub fn subst_delta(&self, s: &ArcticTerm2) -> ArcticTerm2 {
        self.map(&|t| match t {
            ArcticTerm2::Delta(a) => Some(s.subst_d(&a.subst_delta(s))),
            _ => None,
        })
    }

    fn map(&self, f: &dyn Fn(&ArcticTerm2) -> Option<ArcticTerm2>) -> ArcticTerm2 {
        if let Some(t) = f(self) {
            return t;
        }
        match self {
            ArcticTerm2::Const(_) | ArcticTerm2::D => self.clone(),
            ArcticTerm2::Add(a, b) => ArcticTerm2::add(a.map(f), b.map(f)),
            ArcticTerm2::Mul(a, b) => ArcticTerm2::mul(a.map(f), b.map(f)),
            ArcticTerm2::Max(v) => ArcticTerm2::max(v.iter().map(|t| t.map(f))),
            ArcticTerm2::Delta(a) => ArcticTerm2::delta(a.map(f)),
        }
    }

    /// The first-order term obtained when no `Δ` occurs.
    pub fn to_first_order(&self) -> Option<ArcticTerm> {
        Some(match self {
            ArcticTerm2::Const(c) => ArcticTerm::Const(c.clone()),
            ArcticTerm2::D => ArcticTerm::d(),
            ArcticTerm2::Add(a, b) => ArcticTerm::add(a.to_first_order()?, b.to_first_order()?),
            ArcticTerm2::Mul(a, b) => ArcticTerm::mul(a.to_first_order()?, b.to_first_order()?),
            ArcticTerm2::Max(v) => ArcticTerm::max(v.iter().map(Self::to_first_order).collect::<Option<Vec<_>>>()?),
            ArcticTerm2::Delta(_) => return None,
        })
    }

    /// Partial limit; see [`Lim2`].
    pub fn lim(&self) -> Lim2 {
        match self.lim_inner() {
            Ok((limit, regime)) => Lim2::Limit { limit, regime },
            Err(inc) => Lim2::Incomparable(inc),
        }
    }

    fn lim_inner(&self) -> core::result::Result<(Limit2, Regime), Incomparable> {
        Ok(match self {
            ArcticTerm2::Const(c) => (Limit2::constant(c.clone()), Regime::base()),
            ArcticTerm2::D => (Limit2::d(), Regime::base()),
            ArcticTerm2::Add(a, b) | ArcticTerm2::Mul(a, b) => {
                let (la, ra) = a.lim_inner()?;
                let (lb, rb) = b.lim_inner()?;
                let limit = if matches!(self, ArcticTerm2::Add(..)) { la.add(&lb) } else { la.mul(&lb) };
                (limit, ra.join(&rb))
            }
            ArcticTerm2::Delta(a) => {
                let (la, ra) = a.lim_inner()?;
                (Limit2::delta(la), ra)
            }
            ArcticTerm2::Max(ops) => {
                let mut lims = Vec::new();
                let mut regime = Regime::base();
                for t in ops {
                    let (l, r) = t.lim_inner()?;
                    regime = regime.join(&r);
                    lims.push(l);
                }
                let mut best: Option<(usize, usize, usize)> = None;
                for i in 0..lims.len() {
                    let mut certs = Regime::base();
                    let mut wins = 0;
                    let mut first_loss = None;
                    for j in 0..lims.len() {
                        if i == j {
                            continue;
                        }
                        match dominates(&lims[i], &lims[j]) {
                            Some(r) => {
                                certs = certs.join(&r);
                                wins += 1;
                            }
                            None => {
                                first_loss.get_or_insert(j);
                            }
                        }
                    }
                    match first_loss {
                        None => return Ok((lims.swap_remove(i), regime.join(&certs))),
                        Some(j) => {
                            if best.is_none_or(|(_, w, _)| wins > w) {
                                best = Some((i, wins, j));
                            }
                        }
                    }
                }
                let (i, _, j) = best.expect("at least two operands");
                let (i, j) = (i.min(j), i.max(j));
                return Err(Incomparable { node: self.clone(), left: lims[i].clone(), right: lims[j].clone() });
            }
        })
    }
}

impl Printable for ArcticTerm2 {
    fn view(&self) -> View<'_, Self> {
        match self {
            ArcticTerm2::Const(c) => View::Nat(c),
            ArcticTerm2::D => View::D,
            ArcticTerm2::Add(a, b) => View::Add(a, b),
            ArcticTerm2::Mul(a, b) => View::Mul(a, b),
            ArcticTerm2::Max(v) => View::Max(v),
            ArcticTerm2::Delta(a) => View::Delta(a),
        }
    }
}

impl fmt::Display for ArcticTerm2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&syntax::print(self))
    }
}

/// Lower bound `δ(m) >= c·(m+1)^k` on the function argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Floor {
    pub c: Natural,
    pub k: u32,
}

impl Floor {
    pub fn eval(&self, m: &Natural) -> Natural {
        &self.c * (m + 1u32).pow(self.k)
    }
}

impl fmt::Display for Floor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = if self.k == 1 { String::from("(m + 1)") } else { format!("(m + 1)^{}", self.k) };
        if self.c.is_one() {
            write!(f, "m -> {base}")
        } else {
            write!(f, "m -> {}*{base}", self.c)
        }
    }
}

/// Range of validity of a second-order limit: all `d >= d0` together with all
/// monotone `δ` bounded below by `floor`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Regime {
    pub d0: Natural,
    pub floor: Floor,
}

impl Regime {
    /// `d >= 0` and `δ(m) >= m + 1`.
    pub fn base() -> Self {
        Regime { d0: Natural::zero(), floor: Floor { c: Natural::one(), k: 1 } }
    }

    fn with_d0(d0: Natural) -> Self {
        Regime { d0, ..Self::base() }
    }

    fn with_floor(c: Natural, k: u32) -> Self {
        Regime { d0: Natural::zero(), floor: Floor { c, k } }
    }

    pub fn join(&self, other: &Regime) -> Regime {
        Regime {
            d0: self.d0.clone().max(other.d0.clone()),
            floor: Floor { c: self.floor.c.clone().max(other.floor.c.clone()), k: self.floor.k.max(other.floor.k) },
        }
    }
}

/// Outcome of [`ArcticTerm2::lim`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lim2 {
    Limit { limit: Limit2, regime: Regime },
    Incomparable(Incomparable),
}

/// A `max` node none of whose operands provably dominates the others.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Incomparable {
    pub node: ArcticTerm2,
    /// The operand limits that could not be ordered, in source order.
    pub left: Limit2,
    pub right: Limit2,
}

impl Incomparable {
    /// The undominated pair rendered as a `max` term.
    pub fn pair(&self) -> ArcticTerm2 {
        ArcticTerm2::max([self.left.to_term(), self.right.to_term()])
    }
}

impl fmt::Display for Incomparable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "undominated pair {} in {}", self.pair(), self.node)
    }
}

/// Sum of products `c·D^j·Δ(α₁)⋯Δ(α_r)` with nonzero coefficients; the
/// normal form of `max`-free terms in `D` and `Δ`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Limit2 {
    terms: BTreeMap<Prod2, Natural>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prod2 {
    pub d: u32,
    /// Sorted arguments of the `Δ` factors.
    pub deltas: Vec<Limit2>,
}

impl Prod2 {
    fn mul(&self, other: &Prod2) -> Prod2 {
        let mut deltas: Vec<Limit2> = self.deltas.iter().chain(&other.deltas).cloned().collect();
        deltas.sort();
        Prod2 { d: self.d + other.d, deltas }
    }

    fn eval(&self, d: &Natural, delta: &dyn Monotone) -> Natural {
        let mut acc = d.pow(self.d);
        for a in &self.deltas {
            acc *= delta.apply(&a.eval(d, delta));
        }
        acc
    }
}

impl Limit2 {
    pub fn constant(c: Natural) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Prod2::default(), c);
        }
        Limit2 { terms }
    }

    pub fn d() -> Self {
        Limit2 { terms: [(Prod2 { d: 1, deltas: vec![] }, Natural::one())].into_iter().collect() }
    }

    pub fn delta(arg: Limit2) -> Self {
        Limit2 { terms: [(Prod2 { d: 0, deltas: vec![arg] }, Natural::one())].into_iter().collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Prod2, &Natural)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Limit2) -> Limit2 {
        let mut terms = self.terms.clone();
        for (p, c) in &other.terms {
            *terms.entry(p.clone()).or_insert_with(Natural::zero) += c;
        }
        Limit2 { terms }
    }

    pub fn mul(&self, other: &Limit2) -> Limit2 {
        let mut terms: BTreeMap<Prod2, Natural> = BTreeMap::new();
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                *terms.entry(p.mul(q)).or_insert_with(Natural::zero) += a * b;
            }
        }
        Limit2 { terms }
    }

    pub fn eval(&self, d: &Natural, delta: &dyn Monotone) -> Natural {
        self.terms.iter().map(|(p, c)| c * p.eval(d, delta)).sum()
    }

    /// The polynomial in [`D`] when no `Δ` occurs.
    pub fn to_poly1(&self) -> Option<Poly1> {
        let mut out = Poly1::zero();
        for (p, c) in &self.terms {
            if !p.deltas.is_empty() {
                return None;
            }
            out = &out + &Poly1::monomial(crate::Monomial::power(D, p.d), c.clone());
        }
        Some(out)
    }

    /// Term rendering, highest products first.
    pub fn to_term(&self) -> ArcticTerm2 {
        if self.terms.is_empty() {
            return ArcticTerm2::constant(0u32);
        }
        let sums: Vec<ArcticTerm2> = self
            .terms
            .iter()
            .rev()
            .map(|(p, c)| {
                let mut factors = Vec::new();
                if !c.is_one() || (p.d == 0 && p.deltas.is_empty()) {
                    factors.push(ArcticTerm2::Const(c.clone()));
                }
                factors.extend((0..p.d).map(|_| ArcticTerm2::D));
                factors.extend(p.deltas.iter().rev().map(|a| ArcticTerm2::delta(a.to_term())));
                fold(factors, ArcticTerm2::mul)
            })
            .collect();
        fold(sums, ArcticTerm2::add)
    }

    /// The second-order polynomial with `N` for `D` and `Λ` for `Δ`; `None`
    /// when a zero appears, which second-order polynomials cannot express.
    pub fn to_poly2(&self) -> Option<Poly2> {
        if self.terms.is_empty() {
            return None;
        }
        let mut sums = Vec::new();
        for (p, c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            if !c.is_one() || (p.d == 0 && p.deltas.is_empty()) {
                factors.push(Poly2::literal(c.to_u64()?));
            }
            factors.extend((0..p.d).map(|_| Poly2::n()));
            for a in p.deltas.iter().rev() {
                factors.push(Poly2::lam(a.to_poly2()?));
            }
            sums.push(fold(factors, Poly2::mul));
        }
        Some(fold(sums, Poly2::add))
    }

    /// First-order degree of the limit computed directly on the normal form,
    /// with the zero polynomial given degree `0`.
    pub fn degree(&self) -> ArcticTerm {
        if self.terms.is_empty() {
            return ArcticTerm::constant(0u32);
        }
        ArcticTerm::max(self.terms.keys().map(|p| {
            let mut parts = vec![ArcticTerm::constant(p.d)];
            parts.extend(p.deltas.iter().map(|a| ArcticTerm::mul(ArcticTerm::d(), a.degree())));
            fold(parts, ArcticTerm::add)
        }))
    }
}

impl fmt::Display for Limit2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_term(), f)
    }
}

const SEARCH_BUDGET: usize = 20_000;

/// Sound eventual dominance `a ⪰ b`: the returned regime guarantees
/// `a(d, δ) >= b(d, δ)` throughout it.
pub fn dominates(a: &Limit2, b: &Limit2) -> Option<Regime> {
    let mut budget = SEARCH_BUDGET;
    sum_dom(a, b, &mut budget)
}

fn sum_dom(a: &Limit2, b: &Limit2, budget: &mut usize) -> Option<Regime> {
    if b.is_zero() {
        return Some(Regime::base());
    }
    if let (Some(pa), Some(pb)) = (a.to_poly1(), b.to_poly1()) {
        return pa.dominance_threshold(&pb, D).ok()?.map(Regime::with_d0);
    }
    let at: Vec<(&Prod2, &Natural)> = a.terms.iter().collect();
    let bt: Vec<(&Prod2, &Natural)> = b.terms.iter().collect();
    let mut weak: Vec<Vec<Option<Regime>>> = Vec::new();
    let mut strict: Vec<Vec<bool>> = Vec::new();
    for (pa, _) in &at {
        weak.push(bt.iter().map(|(pb, _)| mono_dom(pa, pb, &Natural::one(), budget)).collect());
        strict.push(bt.iter().map(|(pb, _)| mono_dom(pa, pb, &Natural::from(2u32), budget).is_some()).collect());
    }
    let mut choice: Vec<(usize, bool)> = Vec::with_capacity(bt.len());
    assign(&at, &bt, &weak, &strict, &mut choice, budget)
}

/// Backtracking over which `a` product covers each `b` product, weakly
/// (spending coefficient budget) or strictly (absorbing any multiple).
fn assign(
    at: &[(&Prod2, &Natural)],
    bt: &[(&Prod2, &Natural)],
    weak: &[Vec<Option<Regime>>],
    strict: &[Vec<bool>],
    choice: &mut Vec<(usize, bool)>,
    budget: &mut usize,
) -> Option<Regime> {
    if *budget == 0 {
        return None;
    }
    *budget -= 1;
    let j = choice.len();
    if j == bt.len() {
        return certify(at, bt, weak, choice, budget);
    }
    for i in 0..at.len() {
        for is_strict in [true, false] {
            let ok = if is_strict { strict[i][j] } else { weak[i][j].is_some() };
            if ok {
                choice.push((i, is_strict));
                let r = assign(at, bt, weak, strict, choice, budget);
                choice.pop();
                if r.is_some() {
                    return r;
                }
            }
        }
    }
    None
}

fn certify(
    at: &[(&Prod2, &Natural)],
    bt: &[(&Prod2, &Natural)],
    weak: &[Vec<Option<Regime>>],
    choice: &[(usize, bool)],
    budget: &mut usize,
) -> Option<Regime> {
    let mut regime = Regime::base();
    for (i, (pa, ca)) in at.iter().enumerate() {
        let mut w = Natural::zero();
        let mut s = Natural::zero();
        for (j, (ci, is_strict)) in choice.iter().enumerate() {
            if *ci != i {
                continue;
            }
            if *is_strict {
                s += bt[j].1;
            } else {
                w += bt[j].1;
                regime = regime.join(weak[i][j].as_ref().expect("weak choice"));
            }
        }
        if s.is_zero() {
            if &w > *ca {
                return None;
            }
            continue;
        }
        if &w >= *ca {
            return None;
        }
        for (j, (ci, is_strict)) in choice.iter().enumerate() {
            if *ci == i && *is_strict {
                regime = regime.join(&mono_dom(pa, bt[j].0, &s, budget)?);
            }
        }
    }
    Some(regime)
}

/// `a >= m·b` for single products.
fn mono_dom(a: &Prod2, b: &Prod2, m: &Natural, budget: &mut usize) -> Option<Regime> {
    let mut used = vec![false; a.deltas.len()];
    inject(a, b, m, 0, &mut used, Regime::base(), budget)
}

fn inject(a: &Prod2, b: &Prod2, m: &Natural, j: usize, used: &mut [bool], acc: Regime, budget: &mut usize) -> Option<Regime> {
    if *budget == 0 {
        return None;
    }
    *budget -= 1;
    if j == b.deltas.len() {
        return finish(a, b, m, used, acc, budget);
    }
    for i in 0..a.deltas.len() {
        if used[i] {
            continue;
        }
        if let Some(r) = sum_dom(&a.deltas[i], &b.deltas[j], budget) {
            used[i] = true;
            let out = inject(a, b, m, j + 1, used, acc.join(&r), budget);
            used[i] = false;
            if out.is_some() {
                return out;
            }
        }
    }
    None
}

/// Covers the remaining `D^k` and the multiplier `m` once the `Δ` factors
/// of `b` are matched. Unmatched `Δ` factors of `a` are at least the floor.
fn finish(a: &Prod2, b: &Prod2, m: &Natural, used: &[bool], acc: Regime, budget: &mut usize) -> Option<Regime> {
    let spare: Vec<&Limit2> = a.deltas.iter().zip(used).filter(|(_, u)| !**u).map(|(x, _)| x).collect();
    let (j, k) = (a.d, b.d);
    if j >= k {
        if m.is_one() {
            let d0 = if j > k { Natural::one() } else { Natural::zero() };
            return Some(acc.join(&Regime::with_d0(d0)));
        }
        if j > k {
            return Some(acc.join(&Regime::with_d0(m.clone())));
        }
        if !spare.is_empty() {
            return Some(acc.join(&Regime::with_floor(m.clone(), 1)));
        }
        return None;
    }
    let d = Limit2::d();
    for alpha in spare {
        if let Some(r) = sum_dom(alpha, &d, budget) {
            return Some(acc.join(&r).join(&Regime::with_floor(m.clone(), k - j)));
        }
    }
    None
}
