use hopoly_core::arctic::{arc_eq, ArcticTerm2, Lim2, D};
use hopoly_core::dagnf::{nf_build, nf_distinguish, nf_eq, nf_merge, sz_search, sz_separate, verify_distinct};
use hopoly_core::monotone::FnMonotone;
use hopoly_core::{random, Monotone, MonotoneFn, Natural, Poly1, Poly2, Poly3, Var};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn nat(v: u64) -> Natural {
    Natural::from(v)
}

fn deltas() -> Vec<Box<dyn Monotone>> {
    vec![
        Box::new(FnMonotone(|m: &Natural| m + 1u32)),
        Box::new(FnMonotone(|m: &Natural| m * 2u32)),
        Box::new(FnMonotone(|m: &Natural| m * m)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn star_multiplies_degrees(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (p, q) = (random::poly2(&mut r, 12, 4), random::poly2(&mut r, 12, 4));
        for d in 0..=8u64 {
            let d = nat(d);
            let lhs = p.star(&q).deg().eval_at(&d).unwrap();
            prop_assert_eq!(lhs, p.deg().eval_at(&d).unwrap() * q.deg().eval_at(&d).unwrap());
        }
    }

    #[test]
    fn circ_composes_degrees(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (p, q) = (random::poly2(&mut r, 12, 4), random::poly2(&mut r, 12, 4));
        for d in 0..=8u64 {
            let d = nat(d);
            let inner = q.deg().eval_at(&d).unwrap();
            prop_assert_eq!(p.circ(&q).deg().eval_at(&d).unwrap(), p.deg().eval_at(&inner).unwrap());
        }
    }

    #[test]
    fn rewrites_preserve_normal_form_and_degree(seed in any::<u64>(), steps in 1usize..=5) {
        let mut r = rng(seed);
        let p = random::poly2(&mut r, 12, 4);
        let mut q = p.clone();
        for _ in 0..steps {
            q = random::rewrite(&mut r, &q);
        }
        prop_assert!(nf_eq(&p, &q));
        prop_assert!(arc_eq(&p.deg(), &q.deg(), D).unwrap());
    }

    #[test]
    fn normal_form_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let p = random::poly2(&mut r, 14, 4);
        let (dag, root) = nf_build(&p);
        let back = dag.root_to_poly2(&root).unwrap();
        prop_assert!(nf_eq(&p, &back));
        let ell = MonotoneFn::new(vec![(nat(0), nat(1)), (nat(3), nat(7))], hopoly_core::Tail::AffineSlope(nat(2))).unwrap();
        for n in 0..4u64 {
            prop_assert_eq!(p.eval(&nat(n), &ell), back.eval(&nat(n), &ell));
        }
        for u in dag.lam_nodes() {
            prop_assert_eq!(dag.height(u).unwrap(), dag.to_poly2(u).unwrap().depth());
        }
    }

    #[test]
    fn distinct_inputs_are_separated(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ps: Vec<Poly2> = (0..3).map(|_| random::poly2(&mut r, 10, 3)).collect();
        let (dag, roots) = nf_merge(ps.iter());
        let a = nf_distinguish(&dag, &roots).unwrap();
        prop_assert!(verify_distinct(&dag, &roots, &a));
        for i in 0..ps.len() {
            for j in i + 1..ps.len() {
                let same = nf_eq(&ps[i], &ps[j]);
                prop_assert_eq!(same, roots[i] == roots[j]);
                let (vi, vj) = (ps[i].eval(&a.n, &a.ell), ps[j].eval(&a.n, &a.ell));
                prop_assert_eq!(same, vi == vj);
            }
        }
    }

    #[test]
    fn separator_respects_bound(seed in any::<u64>()) {
        let mut r = rng(seed);
        let vars = [Var(3), Var(4)];
        let mut polys: Vec<Poly1> = Vec::new();
        while polys.len() < 3 {
            let mut p = Poly1::constant(nat(r.gen_range(0..3)));
            for _ in 0..r.gen_range(1..3) {
                let v = vars[r.gen_range(0..2)];
                p = &p + &Poly1::var(v).pow(r.gen_range(1..=2));
            }
            if !polys.contains(&p) {
                polys.push(p);
            }
        }
        let d = polys.iter().filter_map(Poly1::total_degree).max().unwrap() as u64;
        let size = d * 3 + 1;
        let grids: BTreeMap<Var, Vec<Natural>> = vars.iter().map(|v| (*v, (0..size).map(nat).collect())).collect();
        let pt = sz_separate(&polys, &grids).unwrap();
        let vals: Vec<Natural> = polys.iter().map(|p| p.eval_with(|v| pt.get(&v).cloned()).unwrap()).collect();
        prop_assert!(vals[0] != vals[1] && vals[0] != vals[2] && vals[1] != vals[2]);
        let small: BTreeMap<Var, Vec<Natural>> = vars.iter().map(|v| (*v, (0..2).map(nat).collect())).collect();
        if let Some(pt) = sz_search(&polys, &small) {
            let vals: Vec<Natural> = polys.iter().map(|p| p.eval_with(|v| pt.get(&v).cloned()).unwrap()).collect();
            prop_assert!(vals[0] != vals[1] && vals[0] != vals[2] && vals[1] != vals[2]);
        }
    }

    #[test]
    fn poly3_degree_laws_without_f_in_the_substituted_positions(seed in any::<u64>()) {
        let mut r = rng(seed);
        // ⋆ needs F-free P; ∘ and ⊛ need F-free Q. Nested F under ⊛ multiplies
        // the unshared size of the degree term, so F-nesting stays shallow.
        let with_f = random::poly3(&mut r, 8, 2, true);
        let without = Poly3::from(&random::poly2(&mut r, 10, 3));
        let deltas = deltas();
        for d in 0..=6u64 {
            let d = nat(d);
            for delta in &deltas {
                let e = |t: &ArcticTerm2| t.eval(&d, delta.as_ref());
                prop_assert_eq!(e(&without.star(&with_f).DEG()), e(&without.DEG()) * e(&with_f.DEG()));
                prop_assert_eq!(e(&with_f.circ(&without).DEG()), e(&with_f.DEG().subst_d(&without.DEG())));
                prop_assert_eq!(e(&with_f.opcirc(&without).DEG()), e(&with_f.DEG().subst_delta(&without.DEG())));
            }
        }
    }

    #[test]
    fn second_order_limit_agrees_in_its_regime(seed in any::<u64>()) {
        let mut r = rng(seed);
        let t = random::arctic2(&mut r, 9);
        if let Lim2::Limit { limit, regime } = t.lim() {
            let floor = regime.floor.clone();
            let steep = FnMonotone(move |m: &Natural| floor.eval(m) * 3u32);
            let exact = FnMonotone(|m: &Natural| regime.floor.eval(m));
            for k in 0..4u64 {
                let d = &regime.d0 + nat(k);
                prop_assert_eq!(t.eval(&d, &steep), limit.eval(&d, &steep));
                prop_assert_eq!(t.eval(&d, &exact), limit.eval(&d, &exact));
            }
        }
    }
}

#[test]
fn operator_semantics_of_substitutions() {
    let mut r = rng(7);
    let ell = FnMonotone(|m: &Natural| m * 2u32 + 1u32);
    for _ in 0..100 {
        let phi = hopoly_core::Operator2::Template(random::poly2(&mut r, 6, 2));
        let p = Poly3::from(&random::poly2(&mut r, 8, 2));
        let q = random::poly3(&mut r, 8, 2, true);
        let n = nat(r.gen_range(0..5));
        let inner = q.eval(&n, &ell, &phi);
        assert_eq!(p.star(&q).eval(&n, &ell, &phi), p.eval(&inner, &ell, &phi));
    }
}
