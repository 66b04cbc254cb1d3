//! Small algebras used as fixtures by tests, benches and the command line.

use crate::algebra::{BracketTable, ConformalAlgebra, FiniteSuperalgebra};
use crate::freemod::{Element, GradedModule, ModuleMap, Parity};
use crate::poly::{int, LambdaContext, Poly, Rational};

fn table_from(module: &GradedModule, entries: &[(&str, &str, &str)]) -> BracketTable {
    let mut t = BracketTable::zero(module, &LambdaContext::empty());
    let ctx = t.ctx().clone();
    for (a, b, v) in entries {
        let i = module.index_of(a).expect("generator");
        let j = module.index_of(b).expect("generator");
        t.set_entry(i, j, Element::parse(v, module, &ctx).expect("fixture entry")).expect("context");
    }
    t
}

fn ns_module() -> GradedModule {
    GradedModule::new([("L", Parity::Even), ("E", Parity::Odd)]).expect("fixture module")
}

/// The rank-two algebra on `L` (even) and `E` (odd) with
/// `[L_l L] = (d + 2l) L`, `[L_l E] = (d + 3/2 l) E`,
/// `[E_l L] = (1/2 d + 3/2 l) E`, `[E_l E] = 0`, twisted by
/// `α(L) = f(d) L`, `α(E) = g(d) E`.
pub fn ns_algebra_twisted(f: &str, g: &str) -> ConformalAlgebra {
    let m = ns_module();
    let ctx = LambdaContext::empty();
    let z = Poly::zero(&ctx);
    let alpha = ModuleMap::new(
        &m,
        &m,
        Parity::Even,
        vec![
            vec![Poly::parse(f, &ctx).expect("f"), z.clone()],
            vec![z, Poly::parse(g, &ctx).expect("g")],
        ],
    )
    .expect("diagonal twist");
    ConformalAlgebra::new(alpha, ns_table("d + 2*l", "d + (3/2)*l")).expect("fixture algebra")
}

fn ns_table(ll: &str, le: &str) -> BracketTable {
    table_from(
        &ns_module(),
        &[
            ("L", "L", &format!("({ll}) L")),
            ("L", "E", &format!("({le}) E")),
            ("E", "L", "((1/2)*d + (3/2)*l) E"),
        ],
    )
}

/// `ns_algebra_twisted` with `f = g = 1`.
pub fn ns_algebra() -> ConformalAlgebra {
    ns_algebra_twisted("1", "1")
}

/// `[L_l L] = (d + 3l) L` instead of `(d + 2l) L`.
pub fn ns_mutant() -> ConformalAlgebra {
    let m = ns_module();
    ConformalAlgebra::new(ModuleMap::identity(&m), ns_table("d + 3*l", "d + (3/2)*l")).expect("fixture")
}

/// `[L_l E] = (d + l) E` instead of `(d + 3/2 l) E`.
pub fn ns_skew_mutant() -> ConformalAlgebra {
    let m = ns_module();
    ConformalAlgebra::new(ModuleMap::identity(&m), ns_table("d + 2*l", "d + l")).expect("fixture")
}

/// The algebra with zero bracket and identity twist.
pub fn abelian(module: &GradedModule) -> ConformalAlgebra {
    ConformalAlgebra::new(ModuleMap::identity(module), BracketTable::zero(module, &LambdaContext::empty()))
        .expect("abelian")
}

fn zeros(n: usize) -> Vec<Vec<Vec<Rational>>> {
    vec![vec![vec![int(0); n]; n]; n]
}

fn identity(n: usize) -> Vec<Vec<Rational>> {
    (0..n).map(|i| (0..n).map(|j| int((i == j) as i64)).collect()).collect()
}

/// Abelian superalgebra on `x` (even) and `y` (odd) with `α = id`.
pub fn abelian_superalgebra() -> FiniteSuperalgebra {
    let module = GradedModule::new([("x", Parity::Even), ("y", Parity::Odd)]).expect("module");
    FiniteSuperalgebra { module, bracket: zeros(2), alpha: identity(2) }
}

/// The two-dimensional Lie algebra `[x, y] = y` with `α = id`.
pub fn two_dim_lie() -> FiniteSuperalgebra {
    let module = GradedModule::new([("x", Parity::Even), ("y", Parity::Even)]).expect("module");
    let mut bracket = zeros(2);
    bracket[0][1] = vec![int(0), int(1)];
    bracket[1][0] = vec![int(0), int(-1)];
    FiniteSuperalgebra { module, bracket, alpha: identity(2) }
}

/// `[x, y] = y` twisted by `α = diag(1, a)`; multiplicative for every
/// nonzero `a`, and regular.
pub fn two_dim_hom_lie(a: Rational) -> FiniteSuperalgebra {
    let mut g = two_dim_lie();
    g.alpha[1][1] = a;
    g
}

/// The odd Heisenberg superalgebra: even central `h`, odd `e`, `f` with
/// `[e, f] = [f, e] = h`, twisted by `α = diag(ab, a, b)`.
pub fn odd_heisenberg(a: Rational, b: Rational) -> FiniteSuperalgebra {
    let module = GradedModule::new([("h", Parity::Even), ("e", Parity::Odd), ("f", Parity::Odd)]).expect("module");
    let mut bracket = zeros(3);
    bracket[1][2] = vec![int(1), int(0), int(0)];
    bracket[2][1] = vec![int(1), int(0), int(0)];
    let mut alpha = identity(3);
    alpha[0][0] = &a * &b;
    alpha[1][1] = a;
    alpha[2][2] = b;
    FiniteSuperalgebra { module, bracket, alpha }
}
