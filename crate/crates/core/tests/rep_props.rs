mod common;

use std::sync::Arc;

use common::{conformal_map, element, ns};
use homlie_core::poly::int;
use homlie_core::rep::{chom_commutator, chom_compose};
use homlie_core::{adjoint, rep_shift, semidirect, BracketTable, ConformalAlgebra, Element, GradedModule, LambdaContext, ModuleMap, Parity, Poly};
use proptest::prelude::*;

fn module() -> GradedModule {
    GradedModule::new([("a", Parity::Even), ("x", Parity::Odd)]).unwrap()
}

fn parity() -> impl Strategy<Value = Parity> {
    prop::sample::select(vec![Parity::Even, Parity::Odd])
}

fn two_slots() -> (LambdaContext, Poly, Poly) {
    let c = LambdaContext::new(["lam", "mu"]).unwrap();
    let lam = Poly::slot(&c, "lam").unwrap();
    let mu = Poly::slot(&c, "mu").unwrap();
    (c, lam, mu)
}

/// `[L_l L] = (d + c l) L`, `[L_l E] = (d + b l) E` and the skew-completed
/// `[E_l L]`, with a constant twist `diag(1, t)`.
fn mutation(c: i64, b: i64, t: i64) -> Arc<ConformalAlgebra> {
    let m = ns().module().clone();
    let ctx = LambdaContext::new(["l"]).unwrap();
    let p = |s: &str| Element::parse(s, &m, &ctx).unwrap();
    let entries = vec![
        vec![p(&format!("(d + ({c}/2)*l) L")), p(&format!("(d + ({b}/2)*l) E"))],
        vec![p(&format!("(({b}/2) - 1)*d E + ({b}/2)*l E")), Element::zero(&m, &ctx)],
    ];
    let table = BracketTable::from_entries(&m, &ctx, entries).unwrap();
    Arc::new(ConformalAlgebra::new(ModuleMap::diagonal(&m, &[int(1), int(t)]), table).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn maps_are_conformal(f in parity().prop_flat_map(|p| conformal_map(module(), p, 2)),
                          x in element(module(), LambdaContext::empty(), 2, 2)) {
        let c = LambdaContext::new(["s"]).unwrap();
        let s = Poly::slot(&c, "s").unwrap();
        let lhs = f.apply_at(&x.derive(), &s).unwrap();
        let rhs = f.apply_at(&x, &s).unwrap().mul_poly(&(&Poly::d(&c) + &s));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn commutator_is_skew(f in parity().prop_flat_map(|p| conformal_map(module(), p, 1)),
                          g in parity().prop_flat_map(|p| conformal_map(module(), p, 1))) {
        let (ctx, lam, mu) = two_slots();
        let fg = chom_commutator(&f, &g, "lam").unwrap();
        let gf = chom_commutator(&g, &f, "lam").unwrap();
        let eps = int(f.parity().koszul(g.parity()));
        for j in 0..module().rank() {
            let x = Element::generator(&module(), &ctx, j);
            let lhs = fg.apply_at(&x, &mu).unwrap();
            let rhs = gf.apply_at(&x, &mu).unwrap().substitute_slot("lam", &(&mu - &lam)).unwrap().scale(&-&eps);
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn composition_applies_in_turn(f in conformal_map(module(), Parity::Even, 1), g in parity().prop_flat_map(|p| conformal_map(module(), p, 1))) {
        let (ctx, lam, mu) = two_slots();
        let fg = chom_compose(&f, &g, "lam").unwrap();
        for j in 0..module().rank() {
            let x = Element::generator(&module(), &ctx, j);
            let direct = f.apply_at(&g.apply_at(&x, &(&mu - &lam)).unwrap(), &lam).unwrap();
            prop_assert_eq!(fg.apply_at(&x, &mu).unwrap(), direct);
        }
    }

    #[test]
    fn adjoint_is_a_representation_iff_hom_jacobi(c in 2i64..=6, b in 2i64..=4, t in prop::sample::select(vec![1i64, -1, 2])) {
        let a = mutation(c, b, t);
        let rep = adjoint(&a);
        prop_assert_eq!(rep.rep_check().passed(), a.check_hom_jacobi().passed());
    }
}

#[test]
fn the_mutation_family_hits_both_outcomes() {
    assert!(mutation(4, 3, 1).check_hom_jacobi().passed());
    assert!(!mutation(4, 3, -1).check_hom_jacobi().passed());
    assert!(!mutation(6, 3, 1).check_hom_jacobi().passed());
    assert!(!adjoint(&mutation(6, 3, 1)).rep_check().passed());
}

#[test]
fn shifts_of_an_untwisted_algebra_are_the_adjoint() {
    let a = ns();
    for s in [-2, 1, 3] {
        assert_eq!(rep_shift(&a, s).unwrap(), adjoint(&a));
    }
}

#[test]
fn semidirect_sum_with_the_adjoint_is_hom_lie() {
    let a = mutation(4, 3, 1);
    let s = semidirect(&adjoint(&a)).unwrap();
    assert_eq!(s.rank(), 4);
    assert!(s.axiom_suite().iter().all(|r| r.passed()));
}
