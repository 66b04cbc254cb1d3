#![allow(dead_code)]

use std::sync::Arc;

use homlie_core::catalog;
use homlie_core::poly::{int, rat};
use homlie_core::{cur_algebra, ConformalAlgebra, ConformalMap, Element, GradedModule, LambdaContext, ModuleMap, Parity, Poly, Rational};
use proptest::prelude::*;

pub fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

pub fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (1i64..=6, 1i64..=3, any::<bool>()).prop_map(|(n, d, s)| rat(if s { n } else { -n }, d))
}

/// Sparse polynomial over `ctx` with at most `terms` terms and every
/// exponent (including that of `d`) at most `max_exp`.
pub fn poly(ctx: LambdaContext, terms: usize, max_exp: u32) -> impl Strategy<Value = Poly> {
    let vars = ctx.len() + 1;
    prop::collection::vec((prop::collection::vec(0..=max_exp, vars), rational()), 0..=terms).prop_map(move |ts| {
        ts.into_iter().fold(Poly::zero(&ctx), |acc, (e, c)| &acc + &Poly::monomial(&ctx, e, c))
    })
}

pub fn element(module: GradedModule, ctx: LambdaContext, terms: usize, max_exp: u32) -> impl Strategy<Value = Element> {
    let n = module.rank();
    prop::collection::vec(poly(ctx.clone(), terms, max_exp), n)
        .prop_map(move |cs| Element::from_coeffs(&module, &ctx, cs).expect("shape"))
}

/// Homogeneous element of the given parity.
pub fn homogeneous(module: GradedModule, ctx: LambdaContext, parity: Parity) -> impl Strategy<Value = Element> {
    let n = module.rank();
    let m = module.clone();
    prop::collection::vec(poly(ctx.clone(), 2, 2), n).prop_map(move |cs| {
        let cs = cs
            .into_iter()
            .enumerate()
            .map(|(i, c)| if m.parity(i) == parity { c } else { Poly::zero(&ctx) })
            .collect();
        Element::from_coeffs(&m, &ctx, cs).expect("shape")
    })
}

/// Conformal map of the given parity with entries in `l` and `d`.
pub fn conformal_map(module: GradedModule, parity: Parity, max_exp: u32) -> impl Strategy<Value = ConformalMap> {
    let n = module.rank();
    let ctx = LambdaContext::new(["l"]).unwrap();
    prop::collection::vec(poly(ctx.clone(), 2, max_exp), n * n).prop_map(move |es| {
        let m = (0..n)
            .map(|k| {
                (0..n)
                    .map(|j| {
                        if module.parity(k) == module.parity(j) + parity { es[k * n + j].clone() } else { Poly::zero(&ctx) }
                    })
                    .collect()
            })
            .collect();
        ConformalMap::new(&module, &module, parity, &ctx, m).expect("parity respected")
    })
}

/// Even module map `diag · (1 + N)` with `N` strictly upper triangular over
/// `Q[d]` among same-parity generators: invertible over `Q[d]`.
pub fn invertible_map(module: GradedModule) -> impl Strategy<Value = ModuleMap> {
    let n = module.rank();
    let ctx = LambdaContext::empty();
    (prop::collection::vec(nonzero_rational(), n), prop::collection::vec(poly(ctx.clone(), 2, 2), n * n)).prop_map(
        move |(diag, upper)| {
            let m = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if i == j {
                                Poly::constant(&ctx, diag[i].clone())
                            } else if i < j && module.parity(i) == module.parity(j) {
                                upper[i * n + j].scale(&diag[i])
                            } else {
                                Poly::zero(&ctx)
                            }
                        })
                        .collect()
                })
                .collect();
            ModuleMap::new(&module, &module, Parity::Even, m).expect("even")
        },
    )
}

pub fn ns() -> Arc<ConformalAlgebra> {
    Arc::new(catalog::ns_algebra())
}

pub fn lie2() -> Arc<ConformalAlgebra> {
    Arc::new(cur_algebra(&catalog::two_dim_lie()).unwrap())
}

pub fn hom_lie2() -> Arc<ConformalAlgebra> {
    Arc::new(cur_algebra(&catalog::two_dim_hom_lie(int(-1))).unwrap())
}

pub fn heisenberg() -> Arc<ConformalAlgebra> {
    Arc::new(cur_algebra(&catalog::odd_heisenberg(int(-1), int(-1))).unwrap())
}

/// The algebras with finite-order twists used across the property tests.
pub fn zoo() -> Vec<(&'static str, Arc<ConformalAlgebra>)> {
    vec![("ns", ns()), ("lie2", lie2()), ("hom-lie2", hom_lie2()), ("heisenberg", heisenberg())]
}
