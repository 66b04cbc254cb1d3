mod common;

use std::sync::OnceLock;

use common::{conformal_map, heisenberg, ns};
use homlie_core::deriv::{class_check, der_commutator, gder_decompose, inclusion_audit, solve_class};
use homlie_core::linsolve::in_span;
use homlie_core::poly::int;
use homlie_core::rep::chom_commutator;
use homlie_core::{Bounds, ClassBases, ConformalAlgebra, ConformalMap, DerClass, DerivationCandidate, Element, LambdaContext, Parity, Poly, Rational, SolutionBasis};
use proptest::prelude::*;

const WINDOW: Bounds = Bounds { deg_l: 1, deg_d: 1 };

fn alg() -> &'static ConformalAlgebra {
    static A: OnceLock<ConformalAlgebra> = OnceLock::new();
    A.get_or_init(|| (*heisenberg()).clone())
}

/// All six classes on the twisted Heisenberg algebra at power one.
fn bases() -> &'static ClassBases {
    static B: OnceLock<ClassBases> = OnceLock::new();
    B.get_or_init(|| ClassBases::solve(alg(), 1, WINDOW).unwrap())
}

fn der_at(k: u32) -> &'static SolutionBasis {
    static B: OnceLock<Vec<SolutionBasis>> = OnceLock::new();
    &B.get_or_init(|| (0..=1).map(|k| solve_class(alg(), DerClass::Der, k, WINDOW).unwrap()).collect())[k as usize]
}

fn basis_of(class: DerClass) -> &'static SolutionBasis {
    let b = bases();
    match class {
        DerClass::Der => &b.der,
        DerClass::GDer => &b.gder,
        DerClass::QDer => &b.qder,
        DerClass::Centroid => &b.centroid,
        DerClass::QuasiCentroid => &b.quasi_centroid,
        DerClass::ZDer => &b.zder,
    }
}

fn combine(maps: &[&ConformalMap], coeffs: &[Rational]) -> ConformalMap {
    let mut out = maps[0].scale(&coeffs[0]);
    for (m, c) in maps.iter().zip(coeffs).skip(1) {
        out = out.try_add(&m.scale(c)).unwrap();
    }
    out
}

/// A random combination of the basis elements of one parity, companions
/// combined alongside.
fn combination(b: &SolutionBasis, parity: Parity, coeffs: &[Rational]) -> Option<DerivationCandidate> {
    let picked: Vec<&DerivationCandidate> = b.basis.iter().filter(|c| c.parity() == parity).collect();
    if picked.is_empty() {
        return None;
    }
    let coeffs = &coeffs[..picked.len().min(coeffs.len())];
    let picked = &picked[..coeffs.len()];
    let map = combine(&picked.iter().map(|c| &c.map).collect::<Vec<_>>(), coeffs);
    let companions = (0..b.class.companions())
        .map(|i| combine(&picked.iter().map(|c| &c.companions[i]).collect::<Vec<_>>(), coeffs))
        .collect();
    Some(DerivationCandidate::new(map, b.k, b.class).with_companions(companions))
}

fn coeffs() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-3i64..=3).prop_map(int), 12)
}

fn parity() -> impl Strategy<Value = Parity> {
    prop::sample::select(vec![Parity::Even, Parity::Odd])
}

fn class() -> impl Strategy<Value = DerClass> {
    prop::sample::select(DerClass::ALL.to_vec())
}

fn sign(p: Parity, q: Parity) -> Rational {
    int(p.koszul(q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn solver_and_checker_agree(class in class(), p in parity(), cs in coeffs(),
                                noise in prop::option::of(parity().prop_flat_map(|p| conformal_map(alg().module().clone(), p, 1)))) {
        let b = basis_of(class);
        let Some(mut cand) = combination(b, p, &cs) else { return Ok(()) };
        prop_assert!(class_check(alg(), &cand).unwrap().passed());
        prop_assert!(b.contains(&cand.map));
        if let Some(n) = noise.filter(|n| n.parity() == p && class.companions() == 0) {
            cand.map = cand.map.try_add(&n).unwrap();
            prop_assert_eq!(class_check(alg(), &cand).unwrap().passed(), b.contains(&cand.map));
        }
    }

    #[test]
    fn commutators_of_derivations_are_derivations(p in parity(), q in parity(), a in coeffs(), b in coeffs()) {
        let (Some(d), Some(e)) = (combination(der_at(0), p, &a), combination(der_at(1), q, &b)) else { return Ok(()) };
        let c = der_commutator(&d, &e, DerClass::Der).unwrap();
        prop_assert_eq!(c.k, 1);
        prop_assert!(class_check(alg(), &c).unwrap().passed());
    }

    #[test]
    fn derivations_form_a_hom_lie_conformal_superalgebra(i in 0usize..64, j in 0usize..64, k in 0usize..64) {
        let b = &der_at(0).basis;
        let (d, e, f) = (&b[i % b.len()].map, &b[j % b.len()].map, &b[k % b.len()].map);
        prop_assert!(three_slot_residuals(alg(), d, e, f).iter().all(Element::is_zero));
    }

    #[test]
    fn closure_under_commutators(class in prop::sample::select(vec![DerClass::GDer, DerClass::QDer, DerClass::Centroid]),
                                 p in parity(), q in parity(), a in coeffs(), b in coeffs()) {
        let basis = basis_of(class);
        let (Some(d), Some(e)) = (combination(basis, p, &a), combination(basis, q, &b)) else { return Ok(()) };
        let mut c = der_commutator(&d, &e, class).unwrap();
        c.companions = (0..class.companions())
            .map(|i| chom_commutator(&d.companions[i], &e.companions[i], "lam").unwrap())
            .collect();
        prop_assert_eq!(c.k, 2);
        prop_assert!(class_check(alg(), &c).unwrap().passed());
    }

    #[test]
    fn generalized_derivations_split(p in parity(), cs in coeffs()) {
        let Some(g) = combination(&bases().gder, p, &cs) else { return Ok(()) };
        let (q, c) = gder_decompose(alg(), &g).unwrap();
        prop_assert!(q.map.try_add(&c.map).unwrap().same_as(&g.map));
    }
}

/// `[α′(D)_λ [D′_µ D″]]_θ - ε [α′(D′)_µ [D_λ D″]]_θ - [[D_λ D′]_{λ+µ} α′(D″)]_θ`
/// on every generator, with `α′(D) = D∘α`.
fn three_slot_residuals(a: &ConformalAlgebra, d: &ConformalMap, e: &ConformalMap, f: &ConformalMap) -> Vec<Element> {
    let twist = |m: &ConformalMap| m.pre_compose(a.alpha()).unwrap();
    let comm = |x: &ConformalMap, y: &ConformalMap, outer: &str| chom_commutator(x, y, outer).unwrap();
    let first = comm(&twist(d), &comm(e, f, "mu"), "lam");
    let second = comm(&twist(e), &comm(d, f, "lam"), "mu");
    let third = comm(&comm(d, e, "lam"), &twist(f), "s");
    let ctx = LambdaContext::new(["lam", "mu", "s", "th"]).unwrap();
    let slot = |n: &str| Poly::slot(&ctx, n).unwrap();
    let th = slot("th");
    let eps = sign(d.parity(), e.parity());
    (0..a.rank())
        .map(|j| {
            let g = a.generator(j, &ctx);
            let one = first.apply_at(&g, &th).unwrap();
            let two = second.apply_at(&g, &th).unwrap().scale(&eps);
            let three = third.apply_at(&g, &th).unwrap().substitute_slot("s", &(&slot("lam") + &slot("mu"))).unwrap();
            &(&one - &two) - &three.embed(one.ctx()).unwrap()
        })
        .collect()
}

#[test]
fn audit_passes_on_the_heisenberg_bases() {
    let b = bases();
    assert!(b.centroid.dimension() > 0);
    assert!(b.quasi_centroid.dimension() > 0);
    for r in inclusion_audit(alg(), b).unwrap() {
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn generalized_derivations_lie_in_the_sum() {
    for (a, k, w) in [(ns(), 0, Bounds::new(1, 1)), (heisenberg(), 1, WINDOW)] {
        let b = ClassBases::solve(&a, k, w).unwrap();
        let mut sum = b.qder.vectors();
        sum.extend(b.quasi_centroid.vectors());
        for v in b.gder.vectors() {
            assert!(in_span(&v, &sum).unwrap());
        }
    }
}

#[test]
fn the_three_slot_identity_is_not_vacuous() {
    let b = &der_at(0).basis;
    let ctx = LambdaContext::new(["lam", "mu", "th"]).unwrap();
    let th = Poly::slot(&ctx, "th").unwrap();
    let nonzero = b.iter().flat_map(|d| b.iter().map(move |e| (d, e))).any(|(d, e)| {
        let outer = chom_commutator(&d.map.pre_compose(alg().alpha()).unwrap(), &chom_commutator(&e.map, &e.map, "mu").unwrap(), "lam").unwrap();
        (0..alg().rank()).any(|j| !outer.apply_at(&alg().generator(j, &ctx), &th).unwrap().is_zero())
    });
    assert!(nonzero);
}
