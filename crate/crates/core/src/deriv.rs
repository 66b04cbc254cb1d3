//! α^k-derivations and the generalized derivation classes: checks,
//! commutators, extensions by a derivation, and exact solvers within a
//! degree window.

use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;

use crate::algebra::{BracketTable, ConformalAlgebra};
use crate::error::{Error, Result};
use crate::freemod::{sign, Element, GradedModule, ModuleMap, Parity};
use crate::linsolve::{in_span, rref, RationalMatrix};
use crate::poly::{int, LambdaContext, Poly, Rational};
use crate::rep::{chom_commutator, ConformalMap};
use crate::report::CheckReport;
use crate::system;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DerClass {
    Der,
    GDer,
    QDer,
    Centroid,
    QuasiCentroid,
    ZDer,
}

impl DerClass {
    pub const ALL: [DerClass; 6] =
        [DerClass::Der, DerClass::GDer, DerClass::QDer, DerClass::Centroid, DerClass::QuasiCentroid, DerClass::ZDer];

    pub fn name(self) -> &'static str {
        match self {
            DerClass::Der => "der",
            DerClass::GDer => "gder",
            DerClass::QDer => "qder",
            DerClass::Centroid => "c",
            DerClass::QuasiCentroid => "qc",
            DerClass::ZDer => "zder",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == s)
    }

    /// Number of companion maps in the defining identity.
    pub fn companions(self) -> usize {
        match self {
            DerClass::GDer => 2,
            DerClass::QDer => 1,
            _ => 0,
        }
    }
}

impl fmt::Display for DerClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A conformal endomorphism tagged with a class and a power of α. GDer
/// candidates carry `D′, D″`; QDer candidates may carry `D′`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationCandidate {
    pub map: ConformalMap,
    pub k: u32,
    pub class: DerClass,
    pub companions: Vec<ConformalMap>,
}

impl DerivationCandidate {
    pub fn new(map: ConformalMap, k: u32, class: DerClass) -> Self {
        DerivationCandidate { map, k, class, companions: Vec::new() }
    }

    pub fn with_companions(mut self, companions: Vec<ConformalMap>) -> Self {
        self.companions = companions;
        self
    }

    pub fn parity(&self) -> Parity {
        self.map.parity()
    }
}

/// Degree window for solver unknowns: `deg λ ≤ deg_l`, `deg d ≤ deg_d`
/// in every matrix entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Bounds {
    pub deg_l: u32,
    pub deg_d: u32,
}

impl Bounds {
    pub fn new(deg_l: u32, deg_d: u32) -> Self {
        Bounds { deg_l, deg_d }
    }

    pub fn contains(&self, m: &ConformalMap) -> bool {
        m.degree_in_slot() <= self.deg_l && m.degree_in_d() <= self.deg_d
    }
}

impl fmt::Display for Bounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "deg l <= {}, deg d <= {}", self.deg_l, self.deg_d)
    }
}

/// Solutions of one class at one power, complete within the bounds only.
#[derive(Clone, Debug)]
pub struct SolutionBasis {
    pub class: DerClass,
    pub k: u32,
    pub bounds: Bounds,
    pub basis: Vec<DerivationCandidate>,
}

impl SolutionBasis {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Coefficient vectors of the basis maps in the shared layout.
    pub fn vectors(&self) -> Vec<Vec<Rational>> {
        self.basis
            .iter()
            .map(|c| coefficient_vector(&c.map, self.bounds).expect("basis maps lie in the window"))
            .collect()
    }

    pub fn contains(&self, m: &ConformalMap) -> bool {
        match coefficient_vector(m, self.bounds) {
            Some(v) => in_span(&v, &self.vectors()).unwrap_or(false),
            None => false,
        }
    }
}

fn exponent_vectors(bounds: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for &b in bounds {
        out = out
            .into_iter()
            .flat_map(|e: Vec<u32>| {
                (0..=b).map(move |x| {
                    let mut f = e.clone();
                    f.push(x);
                    f
                })
            })
            .collect();
    }
    out
}

/// Coordinates of a parameter-free map in the layout `(k, j, a, b)`: row
/// `k`, column `j`, then the coefficient of `λ^a d^b`, each index
/// ascending. `None` when the map has parameters or leaves the window.
pub fn coefficient_vector(m: &ConformalMap, bounds: Bounds) -> Option<Vec<Rational>> {
    if !m.params().is_empty() || !bounds.contains(m) || m.domain() != m.codomain() {
        return None;
    }
    let n = m.domain().rank();
    let per = ((bounds.deg_l + 1) * (bounds.deg_d + 1)) as usize;
    let mut v = vec![int(0); n * n * per];
    for k in 0..n {
        for j in 0..n {
            for (e, c) in m.entry(k, j).to_terms() {
                let idx = ((k * n + j) * per) + (e[0] * (bounds.deg_d + 1) + e[1]) as usize;
                v[idx] = c;
            }
        }
    }
    Some(v)
}

/// The space of conformal maps of one parity with entries of bounded
/// degree in each variable of `ctx` (the last slot being the action slot)
/// and in `d`.
struct MapSpace {
    module: GradedModule,
    parity: Parity,
    ctx: LambdaContext,
    units: Vec<(usize, usize, Vec<u32>)>,
}

impl MapSpace {
    fn new(module: &GradedModule, parity: Parity, ctx: &LambdaContext, bounds: &[u32]) -> Self {
        let n = module.rank();
        let exps = exponent_vectors(bounds);
        let mut units = Vec::new();
        for k in 0..n {
            for j in 0..n {
                if module.parity(k) == module.parity(j) + parity {
                    units.extend(exps.iter().map(|e| (k, j, e.clone())));
                }
            }
        }
        MapSpace { module: module.clone(), parity, ctx: ctx.clone(), units }
    }

    fn len(&self) -> usize {
        self.units.len()
    }

    fn zero(&self) -> ConformalMap {
        let n = self.module.rank();
        ConformalMap::new(&self.module, &self.module, self.parity, &self.ctx, vec![vec![Poly::zero(&self.ctx); n]; n])
            .expect("zero map")
    }

    fn combine(&self, coeffs: &[Rational]) -> ConformalMap {
        let n = self.module.rank();
        let mut m = vec![vec![Poly::zero(&self.ctx); n]; n];
        for ((k, j, e), c) in self.units.iter().zip(coeffs) {
            if !c.is_zero() {
                m[*k][*j] = &m[*k][*j] + &Poly::monomial(&self.ctx, e.clone(), c.clone());
            }
        }
        ConformalMap::new(&self.module, &self.module, self.parity, &self.ctx, m).expect("parity respected")
    }

    fn unit(&self, u: usize) -> ConformalMap {
        let mut c = vec![int(0); self.len()];
        c[u] = int(1);
        self.combine(&c)
    }
}

struct Work {
    alg: ConformalAlgebra,
    ak: ModuleMap,
    ctx: LambdaContext,
    l: Poly,
    m: Poly,
}

impl Work {
    fn new(alg: &ConformalAlgebra, k: u32, maps: &[&ConformalMap]) -> Result<Self> {
        let params = maps.iter().fold(alg.params(), |p, m| p.union(&m.params()));
        let alg = alg.with_params(&params)?;
        let ak = alg.alpha_power(k as i64)?;
        let l = params.fresh_name("l");
        let ctx = params.extend([l.clone()])?;
        let m = ctx.fresh_name("m");
        let ctx = ctx.extend([m.clone()])?;
        let lp = Poly::slot(&ctx, &l)?;
        let mp = Poly::slot(&ctx, &m)?;
        Ok(Work { alg, ak, ctx, l: lp, m: mp })
    }

    fn g(&self, i: usize) -> Element {
        self.alg.generator(i, &self.ctx)
    }

    /// `[D_m(a)_{l+m} α^k(b)]`
    fn a_term(&self, d: &ConformalMap, i: usize, j: usize) -> Result<Element> {
        let da = d.apply_at(&self.g(i), &self.m)?;
        self.alg.bracket_at(&da, &self.ak.apply(&self.g(j))?, &(&self.l + &self.m))
    }

    /// `(-1)^{|D||a|} [α^k(a)_l D_m(b)]`
    fn b_term(&self, d: &ConformalMap, i: usize, j: usize) -> Result<Element> {
        let eps = sign(d.parity().koszul(self.alg.parity(i)));
        let db = d.apply_at(&self.g(j), &self.m)?;
        Ok(self.alg.bracket_at(&self.ak.apply(&self.g(i))?, &db, &self.l)?.scale(&eps))
    }

    /// `D_m([a_l b])`
    fn c_term(&self, d: &ConformalMap, i: usize, j: usize) -> Result<Element> {
        d.apply_at(&self.alg.bracket_at(&self.g(i), &self.g(j), &self.l)?, &self.m)
    }

    /// `D_m(α(g_j)) - α(D_m(g_j))`
    fn omega(&self, d: &ConformalMap, j: usize) -> Result<Element> {
        let x = self.g(j);
        let lhs = d.apply_at(&self.alg.apply_alpha(&x)?, &self.m)?;
        let rhs = self.alg.apply_alpha(&d.apply_at(&x, &self.m)?)?;
        Ok(&lhs - &rhs)
    }

    /// Residual families of the class identity for the pair `(i, j)`, with
    /// labels; `maps` holds `D` followed by its companions.
    fn class_residuals(&self, class: DerClass, maps: &[ConformalMap], i: usize, j: usize) -> Result<Vec<(&'static str, Element)>> {
        let d = &maps[0];
        Ok(match class {
            DerClass::Der => {
                vec![("", &(&self.c_term(d, i, j)? - &self.a_term(d, i, j)?) - &self.b_term(d, i, j)?)]
            }
            DerClass::GDer => vec![(
                "",
                &(&self.a_term(d, i, j)? + &self.b_term(&maps[1], i, j)?) - &self.c_term(&maps[2], i, j)?,
            )],
            DerClass::QDer => {
                vec![("", &(&self.a_term(d, i, j)? + &self.b_term(d, i, j)?) - &self.c_term(&maps[1], i, j)?)]
            }
            DerClass::Centroid => {
                let a = self.a_term(d, i, j)?;
                vec![("left-right ", &a - &self.b_term(d, i, j)?), ("left-inner ", &a - &self.c_term(d, i, j)?)]
            }
            DerClass::QuasiCentroid => vec![("", &self.a_term(d, i, j)? - &self.b_term(d, i, j)?)],
            DerClass::ZDer => vec![("left ", self.a_term(d, i, j)?), ("inner ", self.c_term(d, i, j)?)],
        })
    }

    fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.alg.rank();
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect()
    }
}

/// Checks `D ∘ α = α ∘ D` for `D` and each companion.
pub fn omega_check(algebra: &ConformalAlgebra, maps: &[&ConformalMap]) -> Result<CheckReport> {
    let w = Work::new(algebra, 0, maps)?;
    let mut r = CheckReport::new("alpha-commutation");
    for (idx, m) in maps.iter().enumerate() {
        let m = m.with_params(&w.alg.params())?;
        for j in 0..w.alg.rank() {
            let tag = if idx == 0 { String::new() } else { format!("companion {idx} ") };
            r.record(format!("{tag}{}", w.alg.module().name(j)), w.omega(&m, j)?);
        }
    }
    Ok(r)
}

fn check_shapes(algebra: &ConformalAlgebra, cand: &DerivationCandidate) -> Result<()> {
    for m in std::iter::once(&cand.map).chain(&cand.companions) {
        if m.domain() != algebra.module() || m.codomain() != algebra.module() {
            return Err(Error::ModuleMismatch("candidate must be an endomorphism of the algebra".into()));
        }
        if m.parity() != cand.map.parity() && !m.is_zero() {
            return Err(Error::Parity("companions must share the parity of the map".into()));
        }
    }
    Ok(())
}

/// Evaluates the identity of the candidate's class on all generator pairs
/// in a two-slot context (`l` for the bracket, `m` for the map), together
/// with α-commutation of the map and its companions. A QDer candidate
/// without a companion gets one by an exact search within the degrees of
/// the left-hand side.
pub fn class_check(algebra: &ConformalAlgebra, cand: &DerivationCandidate) -> Result<CheckReport> {
    check_shapes(algebra, cand)?;
    let needed = cand.class.companions();
    let mut maps: Vec<ConformalMap> = std::iter::once(cand.map.clone()).chain(cand.companions.iter().cloned()).collect();
    let mut report = CheckReport::new(format!("{} at power {}", cand.class, cand.k));
    if maps.len() < needed + 1 {
        if cand.class != DerClass::QDer {
            return Err(Error::MissingCompanions(cand.class.name().into()));
        }
        match find_companion(algebra, &cand.map, cand.k)? {
            Some(c) => {
                report.note("companion found by search");
                maps.push(c);
            }
            None => {
                report.fail("companion", "no companion within the degrees of the left-hand side");
                return Ok(report);
            }
        }
    }
    let refs: Vec<&ConformalMap> = maps.iter().take(needed + 1).collect();
    let w = Work::new(algebra, cand.k, &refs)?;
    let params = w.alg.params();
    let maps: Vec<ConformalMap> = refs.iter().map(|m| m.with_params(&params)).collect::<Result<_>>()?;
    let items = w
        .pairs()
        .par_iter()
        .map(|&(i, j)| {
            let res = w.class_residuals(cand.class, &maps, i, j)?;
            Ok(res.into_iter().map(|(tag, e)| (format!("{tag}{}", w.alg.witness(&[i, j])), e)).collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;
    for (wit, e) in items.into_iter().flatten() {
        report.record(wit, e);
    }
    let omega = omega_check(algebra, &maps.iter().collect::<Vec<_>>())?;
    report.absorb(omega);
    Ok(report)
}

/// A `D′ ∈ Ω` with `D′_m([a_l b]) = [D_m(a)_{l+m} α^k b] + ε[α^k a_l D_m(b)]`,
/// searched among maps whose degrees in every variable do not exceed those
/// of the right-hand side.
fn find_companion(algebra: &ConformalAlgebra, d: &ConformalMap, k: u32) -> Result<Option<ConformalMap>> {
    let w = Work::new(algebra, k, &[d])?;
    let d = d.with_params(&w.alg.params())?;
    let targets: Vec<Element> = w
        .pairs()
        .iter()
        .map(|&(i, j)| Ok(&w.a_term(&d, i, j)? + &w.b_term(&d, i, j)?))
        .collect::<Result<_>>()?;
    // per-variable degree caps, read off the targets: params, m, d
    let params = d.params();
    let mut caps = vec![0u32; params.len() + 2];
    for t in &targets {
        for c in t.coeffs() {
            for (e, _) in c.to_terms() {
                for (pi, name) in params.slots().iter().enumerate() {
                    let idx = w.ctx.index_of(name).expect("param");
                    caps[pi] = caps[pi].max(e[idx]);
                }
                let mi = w.ctx.len() - 1;
                caps[params.len()] = caps[params.len()].max(e[mi]);
                caps[params.len() + 1] = caps[params.len() + 1].max(e[w.ctx.len()]);
            }
        }
    }
    let space = MapSpace::new(w.alg.module(), d.parity(), d.ctx(), &caps);
    let n = space.len();
    // unknowns: the companion's coordinates, then the coefficient of the targets
    let kernel = system::kernel(n + 1, |u| {
        let mut out = Vec::new();
        if u < n {
            let unit = space.unit(u);
            for &(i, j) in &w.pairs() {
                out.push(w.c_term(&unit, i, j).expect("apply"));
            }
            for j in 0..w.alg.rank() {
                out.push(w.omega(&unit, j).expect("apply"));
            }
        } else {
            out.extend(targets.iter().map(|t| -t));
            out.extend((0..w.alg.rank()).map(|_| Element::zero(w.alg.module(), &w.ctx)));
        }
        out
    });
    for v in kernel {
        if !v[n].is_zero() {
            let scale = int(1) / v[n].clone();
            let coeffs: Vec<Rational> = v[..n].iter().map(|c| c * &scale).collect();
            return Ok(Some(space.combine(&coeffs)));
        }
    }
    Ok(None)
}

/// `D_k(a)_l(b) = [a_l α^{k+1}(b)]` for `a` fixed by α, an
/// `α^{k+1}`-derivation.
pub fn inner_derivation(algebra: &ConformalAlgebra, a: &Element, k: u32) -> Result<DerivationCandidate> {
    let params = algebra.params().union(a.ctx());
    let alg = algebra.with_params(&params)?;
    let a = a.embed(&params)?;
    if alg.apply_alpha(&a)? != a {
        return Err(Error::NotAlphaFixed);
    }
    let parity = a.parity().unwrap_or(Parity::Even);
    let power = alg.alpha_power(k as i64 + 1)?;
    let map = ConformalMap::from_columns(alg.module(), alg.module(), parity, &params, |j, ctx, l| {
        let b = power.column(j, ctx)?.embed(ctx)?;
        alg.bracket_at(&a.embed(ctx)?, &b, l)
    })?;
    Ok(DerivationCandidate::new(map, k + 1, DerClass::Der))
}

/// `[D_λ D′]_µ = D_λ D′_{µ-λ} - (-1)^{|D||D′|} D′_{µ-λ} D_λ`, a map in `µ`
/// with `λ` kept as a parameter, at power `k + s`. The result is tagged
/// with `class`.
pub fn der_commutator(d: &DerivationCandidate, e: &DerivationCandidate, class: DerClass) -> Result<DerivationCandidate> {
    let params = d.map.params().union(&e.map.params());
    let outer = params.fresh_name("lam");
    let map = chom_commutator(&d.map, &e.map, &outer)?;
    Ok(DerivationCandidate::new(map, d.k + e.k, class))
}

/// `R ⊕ C[d] D` with `[D_l b] = D_l(b)`, `[a_l D] = -(-1)^{|a||D|} D_{-l-d}(a)`,
/// `[D_l D] = 0` and twist `α ⊕ id`. The new generator is named `D`
/// (or a fresh variant when taken).
pub fn derivation_extension(algebra: &ConformalAlgebra, d: &ConformalMap) -> Result<ConformalAlgebra> {
    if !algebra.is_regular() {
        return Err(Error::NotRegular);
    }
    if d.domain() != algebra.module() || d.codomain() != algebra.module() {
        return Err(Error::ModuleMismatch("the derivation must act on the algebra".into()));
    }
    let mut name = "D".to_string();
    let mut n = 0;
    while algebra.module().index_of(&name).is_some() {
        name = format!("D{n}");
        n += 1;
    }
    let extra = GradedModule::new([(name.as_str(), d.parity())])?;
    let module = algebra.module().direct_sum(&extra, "_D");
    let r = algebra.rank();
    let params = algebra.params().union(&d.params());
    let alg = algebra.with_params(&params)?;
    let d = d.with_params(&params)?;
    let table = BracketTable::build(&module, &params, |i, j, ctx, l| {
        let g = |x: usize| alg.generator(x, ctx);
        match (i < r, j < r) {
            (true, true) => Ok(alg.bracket_at(&g(i), &g(j), l)?.inject(&module, 0)),
            (false, true) => Ok(d.apply_at(&g(j), l)?.inject(&module, 0)),
            (true, false) => {
                let eps = sign(alg.parity(i).koszul(d.parity()));
                let at = -&(l + &Poly::d(ctx));
                Ok(d.apply_at(&g(i), &at)?.inject(&module, 0).scale(&-eps))
            }
            (false, false) => Ok(Element::zero(&module, ctx)),
        }
    })?;
    let alpha = alg.alpha().direct_sum(&ModuleMap::identity(&extra).embed(&params)?, &module)?;
    ConformalAlgebra::new(alpha, table)
}

/// Solves the class identity for maps of both parities within `bounds`,
/// treating every coefficient of `λ^a d^b` in every admissible matrix
/// entry (and of each companion) as an unknown. Returns the projection of
/// the solution space to `D`, each element carrying companions and
/// re-verified by [`class_check`].
pub fn solve_class(algebra: &ConformalAlgebra, class: DerClass, k: u32, bounds: Bounds) -> Result<SolutionBasis> {
    if !algebra.params().is_empty() {
        return Err(Error::Precondition("the solver needs an algebra without parameters".into()));
    }
    let module = algebra.module().clone();
    let ctx = LambdaContext::new(["l"])?;
    let blocks = class.companions() + 1;
    let mut basis = Vec::new();
    for parity in [Parity::Even, Parity::Odd] {
        let space = MapSpace::new(&module, parity, &ctx, &[bounds.deg_l, bounds.deg_d]);
        let nu = space.len();
        if nu == 0 {
            continue;
        }
        let zero = space.zero();
        let w = Work::new(algebra, k, &[&zero])?;
        let kernel = system::kernel(nu * blocks, |u| {
            let (b, unit) = (u / nu, u % nu);
            let maps: Vec<ConformalMap> =
                (0..blocks).map(|x| if x == b { space.unit(unit) } else { zero.clone() }).collect();
            let mut out = Vec::new();
            for (i, j) in w.pairs() {
                out.extend(w.class_residuals(class, &maps, i, j).expect("residual").into_iter().map(|(_, e)| e));
            }
            for m in &maps {
                for j in 0..module.rank() {
                    out.push(w.omega(m, j).expect("apply"));
                }
            }
            out
        });
        if kernel.is_empty() {
            continue;
        }
        let (reduced, pivots) = rref(&RationalMatrix::from_rows(kernel)?);
        for (row, &p) in pivots.iter().enumerate() {
            if p >= nu {
                break;
            }
            let v = reduced.row(row);
            let map = space.combine(&v[..nu]);
            let companions = (1..blocks).map(|b| space.combine(&v[b * nu..(b + 1) * nu])).collect();
            basis.push(DerivationCandidate::new(map, k, class).with_companions(companions));
        }
    }
    let unverified: Vec<usize> = basis
        .par_iter()
        .enumerate()
        .filter_map(|(i, c)| match class_check(algebra, c) {
            Ok(r) if r.passed() => None,
            _ => Some(i),
        })
        .collect();
    if let Some(i) = unverified.first() {
        return Err(Error::invalid(format!("solver output {i} of class {class} failed re-verification")));
    }
    Ok(SolutionBasis { class, k, bounds, basis })
}

/// Bases of all six classes at one power and one window.
#[derive(Clone, Debug)]
pub struct ClassBases {
    pub der: SolutionBasis,
    pub gder: SolutionBasis,
    pub qder: SolutionBasis,
    pub centroid: SolutionBasis,
    pub quasi_centroid: SolutionBasis,
    pub zder: SolutionBasis,
}

impl ClassBases {
    pub fn solve(algebra: &ConformalAlgebra, k: u32, bounds: Bounds) -> Result<Self> {
        let s = |c| solve_class(algebra, c, k, bounds);
        Ok(ClassBases {
            der: s(DerClass::Der)?,
            gder: s(DerClass::GDer)?,
            qder: s(DerClass::QDer)?,
            centroid: s(DerClass::Centroid)?,
            quasi_centroid: s(DerClass::QuasiCentroid)?,
            zder: s(DerClass::ZDer)?,
        })
    }

    pub fn all(&self) -> [&SolutionBasis; 6] {
        [&self.der, &self.gder, &self.qder, &self.centroid, &self.quasi_centroid, &self.zder]
    }

    fn shared(&self) -> Result<(u32, Bounds)> {
        let (k, b) = (self.der.k, self.der.bounds);
        for s in self.all() {
            if s.k != k || s.bounds != b {
                return Err(Error::BoundMismatch(format!(
                    "{} at power {} with {} vs power {k} with {b}",
                    s.class, s.k, s.bounds
                )));
            }
        }
        Ok((k, b))
    }
}

fn inclusion(report: &mut CheckReport, small: &SolutionBasis, big: &SolutionBasis) {
    let vs = big.vectors();
    for (i, v) in small.vectors().iter().enumerate() {
        if !in_span(v, &vs).unwrap_or(false) {
            report.fail(format!("{} {i} in {}", small.class, big.class), "not in span");
        }
    }
}

/// Checks membership of every commutator `[x_λ y]` of basis pairs in
/// `class`; failures whose degree leaves the window are inconclusive.
fn closure(
    algebra: &ConformalAlgebra,
    name: &str,
    left: &SolutionBasis,
    right: &SolutionBasis,
    class: DerClass,
    bounds: Bounds,
) -> Result<CheckReport> {
    let pairs: Vec<(usize, usize)> =
        (0..left.dimension()).flat_map(|i| (0..right.dimension()).map(move |j| (i, j))).collect();
    let results = pairs
        .par_iter()
        .map(|&(i, j)| {
            let c = der_commutator(&left.basis[i], &right.basis[j], class)?;
            let r = class_check(algebra, &c)?;
            let inside = c.map.degree_in_slot() <= bounds.deg_l && c.map.degree_in_d() <= bounds.deg_d;
            Ok((format!("{} {i}, {} {j}", left.class, right.class), r.passed(), inside, r))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut report = CheckReport::new(name);
    for (w, ok, inside, r) in results {
        if ok {
            continue;
        }
        if inside {
            report.fail(w, r.residuals.first().map(|x| x.detail.clone()).unwrap_or_default());
        } else {
            report.inconclusive.push(format!("({w}) leaves the window"));
        }
    }
    Ok(report)
}

/// The inclusion chain `ZDer ⊆ Der ⊆ QDer ⊆ GDer`, `C ⊆ QC ⊆ GDer` by span
/// membership, then the commutator containments `[Der C] ⊆ C`,
/// `[QDer QC] ⊆ QC`, `[QC QC] ⊆ QDer` and the ideal property of ZDer in Der.
pub fn inclusion_audit(algebra: &ConformalAlgebra, bases: &ClassBases) -> Result<Vec<CheckReport>> {
    let (_, bounds) = bases.shared()?;
    let mut inc = CheckReport::new("inclusions");
    inclusion(&mut inc, &bases.zder, &bases.der);
    inclusion(&mut inc, &bases.der, &bases.qder);
    inclusion(&mut inc, &bases.qder, &bases.gder);
    inclusion(&mut inc, &bases.centroid, &bases.quasi_centroid);
    inclusion(&mut inc, &bases.quasi_centroid, &bases.gder);
    inc.note(format!("complete within {bounds} only"));
    Ok(vec![
        inc,
        closure(algebra, "der-c", &bases.der, &bases.centroid, DerClass::Centroid, bounds)?,
        closure(algebra, "qder-qc", &bases.qder, &bases.quasi_centroid, DerClass::QuasiCentroid, bounds)?,
        closure(algebra, "qc-qc", &bases.quasi_centroid, &bases.quasi_centroid, DerClass::QDer, bounds)?,
        closure(algebra, "zder-der", &bases.zder, &bases.der, DerClass::ZDer, bounds)?,
        closure(algebra, "der-zder", &bases.der, &bases.zder, DerClass::ZDer, bounds)?,
    ])
}

/// Splits a generalized derivation `(D, D′, D″)` into `(D + D′)/2`, a
/// quasiderivation with companion `D″`, and `(D - D′)/2`, a
/// quasicentroid. Both parts are verified.
pub fn gder_decompose(algebra: &ConformalAlgebra, cand: &DerivationCandidate) -> Result<(DerivationCandidate, DerivationCandidate)> {
    if cand.class != DerClass::GDer {
        return Err(Error::Precondition("decomposition needs a gder candidate".into()));
    }
    let check = class_check(algebra, cand)?;
    if !check.passed() {
        return Err(Error::Precondition(format!("not a generalized derivation: {}", check.to_string().trim_end())));
    }
    let half = crate::poly::rat(1, 2);
    let (d, d1, d2) = (&cand.map, &cand.companions[0], &cand.companions[1]);
    let q = DerivationCandidate::new(d.try_add(d1)?.scale(&half), cand.k, DerClass::QDer).with_companions(vec![d2.clone()]);
    let c = DerivationCandidate::new(d.try_sub(d1)?.scale(&half), cand.k, DerClass::QuasiCentroid);
    for part in [&q, &c] {
        let r = class_check(algebra, part)?;
        if !r.passed() {
            return Err(Error::invalid(format!("decomposition part failed: {}", r.to_string().trim_end())));
        }
    }
    Ok((q, c))
}

/// Result of [`center_interaction_check`]. The quasicentroid commutator
/// data is an outcome, not a check.
#[derive(Clone, Debug)]
pub struct CenterInteraction {
    pub center_dimension: usize,
    pub check: CheckReport,
    /// Quasicentroid basis pairs with a nonzero commutator.
    pub nonvanishing_qc: Vec<(usize, usize)>,
    /// Membership of quasicentroid commutators in the quasicentroid.
    pub qc_closure: CheckReport,
}

impl CenterInteraction {
    pub fn qc_commutators_vanish(&self) -> bool {
        self.nonvanishing_qc.is_empty()
    }
}

/// For every centroid/quasicentroid basis pair, checks that the commutator
/// takes values in the center (and vanishes when the center is trivial
/// within the window); then records which quasicentroid commutators are
/// nonzero.
pub fn center_interaction_check(
    algebra: &ConformalAlgebra,
    centroid: &SolutionBasis,
    quasi_centroid: &SolutionBasis,
) -> Result<CenterInteraction> {
    if !algebra.is_regular() {
        return Err(Error::NotRegular);
    }
    if centroid.bounds != quasi_centroid.bounds || centroid.k != quasi_centroid.k {
        return Err(Error::BoundMismatch("centroid and quasicentroid bases differ".into()));
    }
    let bounds = centroid.bounds;
    let center = algebra.center_solve(bounds.deg_d);
    let mut cq = CheckReport::new("c-qc-center");
    cq.note(format!("center dimension {} within deg d <= {}", center.len(), bounds.deg_d));
    let pairs: Vec<(usize, usize)> =
        (0..centroid.dimension()).flat_map(|i| (0..quasi_centroid.dimension()).map(move |j| (i, j))).collect();
    let rows = pairs
        .par_iter()
        .map(|&(i, j)| {
            let c = der_commutator(&centroid.basis[i], &quasi_centroid.basis[j], DerClass::QuasiCentroid)?;
            let mut bad = Vec::new();
            for g in 0..algebra.rank() {
                let z = c.map.column(g);
                for h in 0..algebra.rank() {
                    let slot = z.ctx().fresh_name("n");
                    let hz = algebra.bracket_eval(&z, &algebra.generator(h, z.ctx()), &slot)?;
                    if !hz.is_zero() {
                        bad.push((format!("c {i}, qc {j}: image of {} against {}", algebra.module().name(g), algebra.module().name(h)), hz));
                    }
                }
                if center.is_empty() && !z.is_zero() {
                    bad.push((format!("c {i}, qc {j}: image of {}", algebra.module().name(g)), z));
                }
            }
            Ok(bad)
        })
        .collect::<Result<Vec<_>>>()?;
    for (w, e) in rows.into_iter().flatten() {
        cq.record(w, e);
    }
    let qq = (0..quasi_centroid.dimension())
        .flat_map(|i| (0..quasi_centroid.dimension()).map(move |j| (i, j)))
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&(i, j)| {
            let c = der_commutator(&quasi_centroid.basis[i], &quasi_centroid.basis[j], DerClass::QuasiCentroid)?;
            Ok((i, j, c.map.is_zero()))
        })
        .collect::<Result<Vec<_>>>()?;
    let nonvanishing_qc: Vec<(usize, usize)> = qq.into_iter().filter(|x| !x.2).map(|(i, j, _)| (i, j)).collect();
    let qc_closure = closure(algebra, "qc-closure", quasi_centroid, quasi_centroid, DerClass::QuasiCentroid, bounds)?;
    if center.is_empty() && qc_closure.inconclusive.is_empty() && qc_closure.passed() != nonvanishing_qc.is_empty() {
        cq.fail("quasicentroid", "closure under the bracket and vanishing of commutators disagree");
    }
    Ok(CenterInteraction { center_dimension: center.len(), check: cq, nonvanishing_qc, qc_closure })
}

impl fmt::Display for SolutionBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "class {} power {} ({}) dimension {}", self.class, self.k, self.bounds, self.dimension())?;
        for (i, c) in self.basis.iter().enumerate() {
            writeln!(f, "basis {i} ({}):", c.parity())?;
            writeln!(f, "{}", c.map)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use std::sync::Arc;

    fn ns() -> Arc<ConformalAlgebra> {
        Arc::new(catalog::ns_algebra())
    }

    fn ad(a: &ConformalAlgebra, i: usize) -> DerivationCandidate {
        let mut c = inner_derivation(a, &a.generator(i, &LambdaContext::empty()), 0).unwrap();
        c.k = 0;
        c
    }

    #[test]
    fn inner_derivations_pass() {
        let a = ns();
        let d = inner_derivation(&a, &a.generator(0, &LambdaContext::empty()), 0).unwrap();
        assert_eq!(d.k, 1);
        let ctx = d.map.ctx().clone();
        assert_eq!(d.map.entry(0, 0), &Poly::parse("d + 2*l", &ctx).unwrap());
        assert_eq!(d.map.entry(1, 1), &Poly::parse("d + (3/2)*l", &ctx).unwrap());
        assert!(class_check(&a, &d).unwrap().passed());
        let mut z = d.clone();
        z.class = DerClass::ZDer;
        assert!(!class_check(&a, &z).unwrap().passed());
        let twisted = crate::cur_algebra(&catalog::two_dim_hom_lie(int(2))).unwrap();
        assert!(matches!(
            inner_derivation(&twisted, &twisted.generator(1, &LambdaContext::empty()), 0),
            Err(Error::NotAlphaFixed)
        ));
    }

    #[test]
    fn gder_needs_companions() {
        let a = ns();
        let mut d = ad(&a, 0);
        d.class = DerClass::GDer;
        assert!(matches!(class_check(&a, &d), Err(Error::MissingCompanions(_))));
    }

    #[test]
    fn commutators_of_inner_derivations() {
        let a = ns();
        let (x, y) = (ad(&a, 0), ad(&a, 1));
        for (p, q) in [(&x, &x), (&x, &y), (&y, &y)] {
            let c = der_commutator(p, q, DerClass::Der).unwrap();
            assert!(class_check(&a, &c).unwrap().passed());
        }
    }

    #[test]
    fn extension_by_a_non_derivation_fails() {
        let a = ns();
        let ctx = LambdaContext::new(["l"]).unwrap();
        let z = Poly::zero(&ctx);
        let m = ConformalMap::new(a.module(), a.module(), Parity::Even, &ctx, vec![vec![Poly::one(&ctx), z.clone()], vec![z.clone(), z]])
            .unwrap();
        assert!(!class_check(&a, &DerivationCandidate::new(m.clone(), 1, DerClass::Der)).unwrap().passed());
        let ext = derivation_extension(&a, &m).unwrap();
        assert!(!ext.check_hom_jacobi().passed());
        let zero = ConformalMap::zero(a.module(), a.module(), Parity::Even, &LambdaContext::empty());
        for r in derivation_extension(&a, &zero).unwrap().axiom_suite() {
            assert!(r.passed(), "{r}");
        }
    }

    #[test]
    fn solver_small_window() {
        let a = ns();
        let der = solve_class(&a, DerClass::Der, 0, Bounds::new(1, 1)).unwrap();
        assert!(der.contains(&ad(&a, 0).map));
        assert!(der.contains(&ad(&a, 1).map));
        let c = solve_class(&a, DerClass::Centroid, 0, Bounds::new(1, 1)).unwrap();
        let id = ConformalMap::from_module_map(&ModuleMap::identity(a.module()), &LambdaContext::empty()).unwrap();
        assert_eq!(c.dimension(), 0);
        assert!(!c.contains(&id));
        let m = GradedModule::new([("g", Parity::Even), ("h", Parity::Odd)]).unwrap();
        let ab = catalog::abelian(&m);
        let z = solve_class(&ab, DerClass::ZDer, 0, Bounds::new(1, 1)).unwrap();
        // every map commuting with α = id: 2 even entries and 2 odd, 4 monomials each
        assert_eq!(z.dimension(), 16);
    }

    #[test]
    fn decomposition_of_a_derivation() {
        let a = ns();
        let d = ad(&a, 0);
        let g = DerivationCandidate { class: DerClass::GDer, companions: vec![d.map.clone(), d.map.clone()], ..d.clone() };
        let (q, c) = gder_decompose(&a, &g).unwrap();
        assert!(q.map.same_as(&d.map));
        assert!(c.map.is_zero());
    }
}
