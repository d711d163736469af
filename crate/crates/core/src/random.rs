//! Random terms and syntactic rewrites for property testing.

use crate::arctic::{ArcticTerm, ArcticTerm2};
use crate::{Poly2, Poly3};
use alloc::sync::Arc;
use alloc::vec::Vec;
use rand::Rng;

/// Random third-order polynomial with at most `size` nodes and at most
/// `depth` nested applications; `F` only when `allow_f`.
pub fn poly3(rng: &mut impl Rng, size: usize, depth: u32, allow_f: bool) -> Poly3 {
    let budget = rng.gen_range(1..=size.max(1));
    gen3(rng, budget, depth, allow_f)
}

fn gen3(rng: &mut impl Rng, budget: usize, depth: u32, allow_f: bool) -> Poly3 {
    let unary = depth > 0 && budget >= 2;
    let binary = budget >= 3;
    let leaf = || -> bool { !unary && !binary };
    if leaf() {
        return if rng.gen_bool(0.65) { Poly3::N } else { Poly3::One };
    }
    let pick = rng.gen_range(0..4);
    if (pick < 2 && binary) || !unary {
        let left = rng.gen_range(1..=budget - 2);
        let (a, b) = (gen3(rng, left, depth, allow_f), gen3(rng, budget - 1 - left, depth, allow_f));
        return if rng.gen_bool(0.5) { Poly3::add(a, b) } else { Poly3::mul(a, b) };
    }
    let inner = gen3(rng, budget - 1, depth - 1, allow_f);
    if allow_f && rng.gen_bool(0.5) {
        Poly3::app_f(inner)
    } else {
        Poly3::lam(inner)
    }
}

/// Random second-order polynomial; see [`poly3`].
pub fn poly2(rng: &mut impl Rng, size: usize, depth: u32) -> Poly2 {
    poly3(rng, size, depth, false).to_poly2().expect("no F generated")
}

/// Random univariate arctic term with constants up to 20.
pub fn arctic(rng: &mut impl Rng, size: usize) -> ArcticTerm {
    let budget = rng.gen_range(1..=size.max(1));
    arctic2_gen(rng, budget, false).to_first_order().expect("no Delta generated")
}

/// Random arctic term in `D` and `Δ`.
pub fn arctic2(rng: &mut impl Rng, size: usize) -> ArcticTerm2 {
    let budget = rng.gen_range(1..=size.max(1));
    arctic2_gen(rng, budget, true)
}

fn arctic2_gen(rng: &mut impl Rng, budget: usize, delta: bool) -> ArcticTerm2 {
    if budget <= 1 || (budget == 2 && !delta) {
        return if rng.gen_bool(0.5) { ArcticTerm2::D } else { ArcticTerm2::constant(rng.gen_range(0u32..=20)) };
    }
    if delta && (budget == 2 || rng.gen_bool(0.2)) {
        return ArcticTerm2::delta(arctic2_gen(rng, budget - 1, delta));
    }
    let left = rng.gen_range(1..=budget - 2);
    let a = arctic2_gen(rng, left, delta);
    let b = arctic2_gen(rng, budget - 1 - left, delta);
    match rng.gen_range(0..3) {
        0 => ArcticTerm2::add(a, b),
        1 => ArcticTerm2::mul(a, b),
        _ => ArcticTerm2::max([a, b]),
    }
}

/// Applies one randomly chosen rule of syntactic equivalence (commutativity,
/// associativity, distributivity or the unit law, in either direction) at a
/// random position.
pub fn rewrite(rng: &mut impl Rng, p: &Poly2) -> Poly2 {
    let target = rng.gen_range(0..p.size());
    let mut counter = 0;
    rewrite_at(rng, p, target, &mut counter)
}

fn rewrite_at(rng: &mut impl Rng, p: &Poly2, target: usize, counter: &mut usize) -> Poly2 {
    if *counter == target {
        *counter += p.size();
        let options = rewrites(p);
        return options[rng.gen_range(0..options.len())].clone();
    }
    *counter += 1;
    match p {
        Poly2::One | Poly2::N => p.clone(),
        Poly2::Add(a, b) | Poly2::Mul(a, b) => {
            let a2 = rewrite_at(rng, a, target, counter);
            let b2 = rewrite_at(rng, b, target, counter);
            match p {
                Poly2::Add(..) => Poly2::add(a2, b2),
                _ => Poly2::mul(a2, b2),
            }
        }
        Poly2::Lam(a) => Poly2::lam(rewrite_at(rng, a, target, counter)),
    }
}

fn rewrites(p: &Poly2) -> Vec<Poly2> {
    let c = |x: &Arc<Poly2>| (**x).clone();
    let mut out = alloc::vec![Poly2::mul(p.clone(), Poly2::One)];
    match p {
        Poly2::Add(a, b) => {
            out.push(Poly2::add(c(b), c(a)));
            if let Poly2::Add(x, y) = &**a {
                out.push(Poly2::add(c(x), Poly2::add(c(y), c(b))));
            }
            if let Poly2::Add(x, y) = &**b {
                out.push(Poly2::add(Poly2::add(c(a), c(x)), c(y)));
            }
            if let (Poly2::Mul(x, y), Poly2::Mul(u, v)) = (&**a, &**b) {
                if x == u {
                    out.push(Poly2::mul(c(x), Poly2::add(c(y), c(v))));
                }
                if y == v {
                    out.push(Poly2::mul(Poly2::add(c(x), c(u)), c(y)));
                }
            }
        }
        Poly2::Mul(a, b) => {
            out.push(Poly2::mul(c(b), c(a)));
            if let Poly2::Mul(x, y) = &**a {
                out.push(Poly2::mul(c(x), Poly2::mul(c(y), c(b))));
            }
            if let Poly2::Mul(x, y) = &**b {
                out.push(Poly2::mul(Poly2::mul(c(a), c(x)), c(y)));
            }
            if let Poly2::Add(x, y) = &**b {
                out.push(Poly2::add(Poly2::mul(c(a), c(x)), Poly2::mul(c(a), c(y))));
            }
            if let Poly2::Add(x, y) = &**a {
                out.push(Poly2::add(Poly2::mul(c(x), c(b)), Poly2::mul(c(y), c(b))));
            }
            if **b == Poly2::One {
                out.push(c(a));
            }
        }
        _ => {}
    }
    out
}
