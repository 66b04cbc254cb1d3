//! Conformal linear maps, representations, shifted adjoint modules,
//! semidirect sums and the dual-representation criterion.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::{BracketTable, ConformalAlgebra};
use crate::error::{Error, Result};
use crate::freemod::{sign, Element, GradedModule, ModuleMap, Parity};
use crate::poly::{LambdaContext, Poly, Rational};
use crate::report::CheckReport;

/// A conformal linear map `f_λ : M -> N[λ]` of parity θ, stored as a matrix
/// of polynomials in the action slot `λ`, `d` and parameters. It acts by
/// `f_λ(p(d) g_j) = p(d + λ) Σ_k M_kj(λ) h_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConformalMap {
    domain: GradedModule,
    codomain: GradedModule,
    parity: Parity,
    ctx: LambdaContext,
    slot: String,
    matrix: Vec<Vec<Poly>>,
}

impl ConformalMap {
    /// Zero map over `params + [fresh slot]`.
    pub fn zero(domain: &GradedModule, codomain: &GradedModule, parity: Parity, params: &LambdaContext) -> Self {
        let slot = params.fresh_name("l");
        let ctx = params.extend([slot.clone()]).expect("fresh");
        let matrix = vec![vec![Poly::zero(&ctx); domain.rank()]; codomain.rank()];
        ConformalMap { domain: domain.clone(), codomain: codomain.clone(), parity, ctx, slot, matrix }
    }

    /// Map over `ctx` (last slot is the action slot) from an explicit matrix.
    pub fn new(
        domain: &GradedModule,
        codomain: &GradedModule,
        parity: Parity,
        ctx: &LambdaContext,
        matrix: Vec<Vec<Poly>>,
    ) -> Result<Self> {
        let slot = ctx.slots().last().cloned().ok_or_else(|| Error::invalid("conformal map needs a slot"))?;
        if matrix.len() != codomain.rank() || matrix.iter().any(|r| r.len() != domain.rank()) {
            return Err(Error::ModuleMismatch("matrix shape does not match modules".into()));
        }
        for (k, row) in matrix.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                if p.ctx() != ctx {
                    return Err(Error::ContextMismatch { left: ctx.to_string(), right: p.ctx().to_string() });
                }
                if !p.is_zero() && codomain.parity(k) != domain.parity(j) + parity {
                    return Err(Error::Parity(format!(
                        "entry ({}, {}) of a {parity} map",
                        codomain.name(k),
                        domain.name(j)
                    )));
                }
            }
        }
        Ok(ConformalMap { domain: domain.clone(), codomain: codomain.clone(), parity, ctx: ctx.clone(), slot, matrix })
    }

    /// Map whose value on generator `j` is `column(j, ctx, λ)`.
    pub fn from_columns<F>(
        domain: &GradedModule,
        codomain: &GradedModule,
        parity: Parity,
        params: &LambdaContext,
        column: F,
    ) -> Result<Self>
    where
        F: Fn(usize, &LambdaContext, &Poly) -> Result<Element>,
    {
        let mut out = Self::zero(domain, codomain, parity, params);
        let l = out.slot_poly();
        for j in 0..domain.rank() {
            let col = column(j, &out.ctx, &l)?.embed(&out.ctx)?;
            if col.module() != codomain {
                return Err(Error::ModuleMismatch("column lies in the wrong module".into()));
            }
            for k in 0..codomain.rank() {
                out.matrix[k][j] = col.coeff(k).clone();
            }
        }
        Self::new(domain, codomain, parity, &out.ctx.clone(), out.matrix)
    }

    /// The λ-independent map given by a module map.
    pub fn from_module_map(m: &ModuleMap, params: &LambdaContext) -> Result<Self> {
        Self::from_columns(m.domain(), m.codomain(), m.parity(), &params.union(m.ctx()), |j, ctx, _| {
            m.column(j, ctx)?.embed(ctx)
        })
    }

    pub fn domain(&self) -> &GradedModule {
        &self.domain
    }

    pub fn codomain(&self) -> &GradedModule {
        &self.codomain
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn ctx(&self) -> &LambdaContext {
        &self.ctx
    }

    pub fn slot(&self) -> &str {
        &self.slot
    }

    pub fn slot_poly(&self) -> Poly {
        Poly::slot(&self.ctx, &self.slot).expect("action slot")
    }

    pub fn params(&self) -> LambdaContext {
        self.ctx.without(&[self.slot.as_str()])
    }

    pub fn entry(&self, k: usize, j: usize) -> &Poly {
        &self.matrix[k][j]
    }

    pub fn matrix(&self) -> &[Vec<Poly>] {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(Poly::is_zero)
    }

    /// Highest power of the action slot in any entry.
    pub fn degree_in_slot(&self) -> u32 {
        let idx = self.ctx.len() - 1;
        self.matrix.iter().flatten().map(|p| p.degree_in_slot(idx)).max().unwrap_or(0)
    }

    pub fn degree_in_d(&self) -> u32 {
        self.matrix.iter().flatten().map(Poly::degree_in_d).max().unwrap_or(0)
    }

    /// Image of generator `j` over the map's own context.
    pub fn column(&self, j: usize) -> Element {
        let coeffs = self.matrix.iter().map(|r| r[j].clone()).collect();
        Element::from_coeffs(&self.codomain, &self.ctx, coeffs).expect("column")
    }

    /// Re-expresses the map over `params + [fresh slot]`.
    pub fn with_params(&self, params: &LambdaContext) -> Result<ConformalMap> {
        let all = params.union(&self.params());
        let mut out = Self::zero(&self.domain, &self.codomain, self.parity, &all);
        let images: Vec<Poly> = self
            .ctx
            .slots()
            .iter()
            .map(|s| if *s == self.slot { Ok(out.slot_poly()) } else { Poly::slot(&out.ctx, s) })
            .collect::<Result<_>>()?;
        let d = Poly::d(&out.ctx);
        for (k, row) in self.matrix.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                out.matrix[k][j] = p.compose(&out.ctx, &images, &d);
            }
        }
        Ok(out)
    }

    fn aligned(&self, other: &ConformalMap) -> Result<(ConformalMap, ConformalMap)> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::ModuleMismatch("maps between different modules".into()));
        }
        let params = self.params().union(&other.params());
        Ok((self.with_params(&params)?, other.with_params(&params)?))
    }

    fn combine(&self, other: &ConformalMap, f: impl Fn(&Poly, &Poly) -> Poly) -> Result<ConformalMap> {
        let (a, b) = self.aligned(other)?;
        let parity = if a.is_zero() { b.parity } else { a.parity };
        if a.parity != b.parity && !a.is_zero() && !b.is_zero() {
            return Err(Error::Parity("sum of maps with different parities".into()));
        }
        let matrix = a.matrix.iter().zip(&b.matrix).map(|(r, s)| r.iter().zip(s).map(|(x, y)| f(x, y)).collect()).collect();
        Ok(ConformalMap { parity, matrix, ..a })
    }

    pub fn try_add(&self, other: &ConformalMap) -> Result<ConformalMap> {
        self.combine(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &ConformalMap) -> Result<ConformalMap> {
        self.combine(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &Rational) -> ConformalMap {
        let matrix = self.matrix.iter().map(|r| r.iter().map(|p| p.scale(c)).collect()).collect();
        ConformalMap { matrix, ..self.clone() }
    }

    /// Multiplies every entry by `p`, a polynomial in the map's context.
    pub fn mul_poly(&self, p: &Poly) -> Result<ConformalMap> {
        let p = p.embed(&self.ctx)?;
        let matrix = self.matrix.iter().map(|r| r.iter().map(|x| &p * x).collect()).collect();
        Ok(ConformalMap { matrix, ..self.clone() })
    }

    /// Maps with the same modules, parity and values after aligning
    /// parameters and renaming the action slot.
    pub fn same_as(&self, other: &ConformalMap) -> bool {
        match self.aligned(other) {
            Ok((a, b)) => a.matrix == b.matrix && (a.parity == b.parity || a.is_zero()),
            Err(_) => false,
        }
    }

    /// `f_at(x)` for `x` over the domain; `at` may involve `d`.
    pub fn apply_at(&self, x: &Element, at: &Poly) -> Result<Element> {
        if x.module() != &self.domain {
            return Err(Error::ModuleMismatch(format!("[{}] vs [{}]", x.module(), self.domain)));
        }
        let w = x.ctx().union(at.ctx()).union(&self.params());
        let x = x.embed(&w)?;
        let at = at.embed(&w)?;
        let d = Poly::d(&w);
        let ids: Vec<Poly> = (0..w.len()).map(|i| Poly::slot_at(&w, i)).collect();
        let shift = &d + &at;
        let images: Vec<Poly> = self
            .ctx
            .slots()
            .iter()
            .map(|s| if *s == self.slot { Ok(at.clone()) } else { Poly::slot(&w, s) })
            .collect::<Result<_>>()?;
        let mut out = Element::zero(&self.codomain, &w);
        for (j, xj) in x.coeffs().iter().enumerate() {
            if xj.is_zero() {
                continue;
            }
            let xj = if xj.is_d_free() { xj.clone() } else { xj.compose(&w, &ids, &shift) };
            let mut col = Vec::with_capacity(self.codomain.rank());
            for k in 0..self.codomain.rank() {
                let m = &self.matrix[k][j];
                col.push(if m.is_zero() { Poly::zero(&w) } else { &m.compose(&w, &images, &d) * &xj });
            }
            out = &out + &Element::from_coeffs(&self.codomain, &w, col)?;
        }
        Ok(out)
    }

    /// `m ∘ f` for a module map `m` on the codomain.
    pub fn post_compose(&self, m: &ModuleMap) -> Result<ConformalMap> {
        let params = self.params().union(m.ctx());
        let f = self.with_params(&params)?;
        Self::from_columns(&self.domain, m.codomain(), f.parity + m.parity(), &params, |j, ctx, _| {
            m.apply(&f.column(j))?.embed(ctx)
        })
    }

    /// `f ∘ m` for a module map `m` into the domain.
    pub fn pre_compose(&self, m: &ModuleMap) -> Result<ConformalMap> {
        let params = self.params().union(m.ctx());
        Self::from_columns(m.domain(), &self.codomain, self.parity + m.parity(), &params, |j, ctx, l| {
            self.apply_at(&m.column(j, ctx)?.embed(ctx)?, l)
        })
    }

    /// The map with its action slot replaced by `image`, a polynomial over
    /// `params + [λ]` of the returned map (the caller supplies the new
    /// parameter context).
    pub fn reindex(&self, params: &LambdaContext, image: impl Fn(&LambdaContext, &Poly) -> Poly) -> Result<ConformalMap> {
        let all = params.union(&self.params());
        Self::from_columns(&self.domain, &self.codomain, self.parity, &all, |j, ctx, l| {
            let at = image(ctx, l);
            let images: Vec<Poly> = self
                .ctx
                .slots()
                .iter()
                .map(|s| if *s == self.slot { Ok(at.clone()) } else { Poly::slot(ctx, s) })
                .collect::<Result<_>>()?;
            Ok(self.column(j).compose(ctx, &images, &Poly::d(ctx)))
        })
    }
}

impl fmt::Display for ConformalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..self.domain.rank() {
            if j > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{} -> {}", self.domain.name(j), self.column(j))?;
        }
        Ok(())
    }
}

/// `(f_λ g)_{λ+ν}`: the composite `f_λ g_ν` as a map in the action slot
/// `ν' = λ + ν`, with `λ` kept as a parameter named `outer`.
pub fn chom_compose(f: &ConformalMap, g: &ConformalMap, outer: &str) -> Result<ConformalMap> {
    if g.codomain != f.domain {
        return Err(Error::ModuleMismatch("composition of incompatible conformal maps".into()));
    }
    let params = f.params().union(&g.params());
    let with_outer = params.extend([outer])?;
    let lam = Poly::slot(&with_outer, outer)?;
    ConformalMap::from_columns(&g.domain, &f.codomain, f.parity + g.parity, &with_outer, |j, ctx, nu| {
        let lam = lam.embed(ctx)?;
        let inner = g.apply_at(&Element::generator(&g.domain, ctx, j), &(nu - &lam))?;
        f.apply_at(&inner, &lam)?.embed(ctx)
    })
}

/// The gc bracket `[f_λ g]_µ = f_λ g_{µ-λ} - ε g_{µ-λ} f_λ`, as a map in
/// the action slot `µ` with `λ` kept as a parameter named `outer`.
pub fn chom_commutator(f: &ConformalMap, g: &ConformalMap, outer: &str) -> Result<ConformalMap> {
    if f.domain != f.codomain || g.domain != g.codomain || f.domain != g.domain {
        return Err(Error::ModuleMismatch("commutator needs endomorphisms of one module".into()));
    }
    let params = f.params().union(&g.params());
    let with_outer = params.extend([outer])?;
    let lam = Poly::slot(&with_outer, outer)?;
    let eps = sign(f.parity.koszul(g.parity));
    ConformalMap::from_columns(&f.domain, &f.domain, f.parity + g.parity, &with_outer, |j, ctx, mu| {
        let lam = lam.embed(ctx)?;
        let x = Element::generator(&f.domain, ctx, j);
        let fg = f.apply_at(&g.apply_at(&x, &(mu - &lam))?, &lam)?;
        let gf = g.apply_at(&f.apply_at(&x, &lam)?, &(mu - &lam))?;
        Ok(&fg - &gf.scale(&eps))
    })
}

/// A representation `(ρ, M, β)`: one conformal map `ρ(g_i)` per algebra
/// generator, extended by `ρ(p(d) a)_λ = p(-λ) ρ(a)_λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    algebra: Arc<ConformalAlgebra>,
    module: GradedModule,
    beta: ModuleMap,
    rho: Vec<ConformalMap>,
}

impl Representation {
    pub fn new(algebra: Arc<ConformalAlgebra>, beta: ModuleMap, rho: Vec<ConformalMap>) -> Result<Self> {
        let module = beta.domain().clone();
        if beta.codomain() != &module || beta.parity() != Parity::Even {
            return Err(Error::invalid("beta must be an even endomorphism"));
        }
        if rho.len() != algebra.rank() {
            return Err(Error::ModuleMismatch("one map per algebra generator".into()));
        }
        for (i, r) in rho.iter().enumerate() {
            if r.domain() != &module || r.codomain() != &module {
                return Err(Error::ModuleMismatch("rho must act on the representation module".into()));
            }
            if r.parity() != algebra.parity(i) && !r.is_zero() {
                return Err(Error::Parity(format!("rho({}) must have the parity of its generator", algebra.module().name(i))));
            }
        }
        let params = rho.iter().fold(algebra.params().union(beta.ctx()), |acc, r| acc.union(&r.params()));
        let rho = rho.iter().map(|r| r.with_params(&params)).collect::<Result<Vec<_>>>()?;
        let beta = beta.embed(&params)?;
        Ok(Representation { algebra, module, beta, rho })
    }

    pub fn algebra(&self) -> &ConformalAlgebra {
        &self.algebra
    }

    pub fn algebra_arc(&self) -> &Arc<ConformalAlgebra> {
        &self.algebra
    }

    pub fn module(&self) -> &GradedModule {
        &self.module
    }

    pub fn beta(&self) -> &ModuleMap {
        &self.beta
    }

    pub fn rho(&self, i: usize) -> &ConformalMap {
        &self.rho[i]
    }

    pub fn params(&self) -> LambdaContext {
        self.rho.first().map_or_else(|| self.algebra.params().union(self.beta.ctx()), ConformalMap::params)
    }

    /// `ρ(x)_at(v)` for `x` over the algebra and `v` over the module.
    pub fn act(&self, x: &Element, at: &Poly, v: &Element) -> Result<Element> {
        let w = x.ctx().union(at.ctx()).union(v.ctx()).union(&self.params());
        let x = x.embed(&w)?;
        let at = at.embed(&w)?;
        let v = v.embed(&w)?;
        let ids: Vec<Poly> = (0..w.len()).map(|i| Poly::slot_at(&w, i)).collect();
        let left = -&at;
        let mut out = Element::zero(&self.module, &w);
        for (k, xk) in x.coeffs().iter().enumerate() {
            if xk.is_zero() || self.rho[k].is_zero() {
                continue;
            }
            let image = self.rho[k].apply_at(&v, &at)?;
            let xk = if xk.is_d_free() { xk.clone() } else { xk.compose(&w, &ids, &left) };
            out = &out + &image.mul_poly(&xk);
        }
        Ok(out)
    }

    pub fn apply_beta(&self, v: &Element) -> Result<Element> {
        self.beta.apply(v)
    }

    fn witness(&self, a: &[usize], v: usize) -> String {
        let mut parts: Vec<&str> = a.iter().map(|&i| self.algebra.module().name(i)).collect();
        parts.push(self.module.name(v));
        parts.join(", ")
    }

    fn pair_cases(&self) -> Vec<(usize, usize, usize)> {
        let n = self.algebra.rank();
        let r = self.module.rank();
        (0..n).flat_map(|i| (0..n).flat_map(move |j| (0..r).map(move |v| (i, j, v)))).collect()
    }

    fn work(&self) -> (LambdaContext, Poly, Poly) {
        let params = self.params();
        let l = params.fresh_name("l");
        let ctx = params.extend([l.clone()]).expect("fresh");
        let m = ctx.fresh_name("m");
        let ctx = ctx.extend([m.clone()]).expect("fresh");
        let lp = Poly::slot(&ctx, &l).expect("slot");
        let mp = Poly::slot(&ctx, &m).expect("slot");
        (ctx, lp, mp)
    }

    /// Verifies `ρ(d a)_λ = -λ ρ(a)_λ` and
    /// `ρ([a_λ b])_{λ+µ} β = ρ(α(a))_λ ρ(b)_µ - ε ρ(α(b))_µ ρ(a)_λ`
    /// on generators.
    pub fn rep_check(&self) -> CheckReport {
        let (w, l, m) = self.work();
        let alg = &self.algebra;
        let mut report = CheckReport::new("representation");
        let n = alg.rank();
        for i in 0..n {
            for v in 0..self.module.rank() {
                let a = alg.generator(i, &w);
                let vv = Element::generator(&self.module, &w, v);
                let res = self
                    .act(&a.derive(), &l, &vv)
                    .and_then(|x| Ok(&x + &self.act(&a, &l, &vv)?.mul_poly(&l)))
                    .expect("action");
                report.record(format!("d {}", self.witness(&[i], v)), res);
            }
        }
        let items = self
            .pair_cases()
            .par_iter()
            .map(|&(i, j, v)| {
                let a = alg.generator(i, &w);
                let b = alg.generator(j, &w);
                let vv = Element::generator(&self.module, &w, v);
                let eps = sign(alg.parity(i).koszul(alg.parity(j)));
                let ab = alg.bracket_at(&a, &b, &l)?;
                let lhs = self.act(&ab, &(&l + &m), &self.apply_beta(&vv)?)?;
                let first = self.act(&alg.apply_alpha(&a)?, &l, &self.act(&b, &m, &vv)?)?;
                let second = self.act(&alg.apply_alpha(&b)?, &m, &self.act(&a, &l, &vv)?)?;
                Ok((self.witness(&[i, j], v), &(&first - &second.scale(&eps)) - &lhs))
            })
            .collect::<Result<Vec<_>>>()
            .expect("action");
        for (w, r) in items {
            report.record(w, r);
        }
        report
    }

    /// Verifies `β(ρ([a_λ b])_{λ+µ} v) = ε ρ(a)_λ ρ(α(b))_µ v - ρ(b)_µ ρ(α(a))_λ v`
    /// on generators, the condition under which `-ρ` defines a
    /// representation on the dual module.
    pub fn dual_rep_condition_check(&self) -> CheckReport {
        let (w, l, m) = self.work();
        let alg = &self.algebra;
        let items = self
            .pair_cases()
            .par_iter()
            .map(|&(i, j, v)| {
                let a = alg.generator(i, &w);
                let b = alg.generator(j, &w);
                let vv = Element::generator(&self.module, &w, v);
                let eps = sign(alg.parity(i).koszul(alg.parity(j)));
                let ab = alg.bracket_at(&a, &b, &l)?;
                let lhs = self.apply_beta(&self.act(&ab, &(&l + &m), &vv)?)?;
                let first = self.act(&a, &l, &self.act(&alg.apply_alpha(&b)?, &m, &vv)?)?;
                let second = self.act(&b, &m, &self.act(&alg.apply_alpha(&a)?, &l, &vv)?)?;
                Ok((self.witness(&[i, j], v), &(&first.scale(&eps) - &second) - &lhs))
            })
            .collect::<Result<Vec<_>>>()
            .expect("action");
        CheckReport::from_residuals("dual-representation", items)
    }
}

/// The adjoint representation `ρ(a)_λ b = [a_λ b]`, `β = α`.
pub fn adjoint(algebra: &Arc<ConformalAlgebra>) -> Representation {
    rep_shift(algebra, 0).expect("the adjoint needs no inverse")
}

/// `R_s`: `ρ(a)_λ b = [α^s(a)_λ b]`, `β = α`.
pub fn rep_shift(algebra: &Arc<ConformalAlgebra>, s: i64) -> Result<Representation> {
    let power = algebra.alpha_power(s)?;
    let module = algebra.module().clone();
    let params = algebra.params();
    let rho = (0..algebra.rank())
        .map(|i| {
            ConformalMap::from_columns(&module, &module, module.parity(i), &params, |j, ctx, l| {
                let a = power.column(i, ctx)?.embed(ctx)?;
                algebra.bracket_at(&a, &Element::generator(&module, ctx, j), l)
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Representation::new(algebra.clone(), algebra.alpha().clone(), rho)
}

/// The semidirect sum `R ⊕ M` with
/// `[(a + u)_λ (b + v)] = [a_λ b] + ρ(a)_λ v - ε(u, b) ρ(b)_{-λ-d} u`
/// and twist `α ⊕ β`. Module generator names that clash with algebra
/// generators get a `_M` suffix.
pub fn semidirect(rep: &Representation) -> Result<ConformalAlgebra> {
    let alg = rep.algebra();
    let n = alg.rank();
    let module = alg.module().direct_sum(rep.module(), "_M");
    let params = rep.params();
    let table = BracketTable::build(&module, &params, |i, j, ctx, l| {
        let zero = Element::zero(&module, ctx);
        match (i < n, j < n) {
            (true, true) => {
                let v = alg.bracket_at(&alg.generator(i, ctx), &alg.generator(j, ctx), l)?;
                Ok(v.inject(&module, 0))
            }
            (true, false) => {
                let v = Element::generator(rep.module(), ctx, j - n);
                Ok(rep.act(&alg.generator(i, ctx), l, &v)?.inject(&module, n))
            }
            (false, true) => {
                let u = Element::generator(rep.module(), ctx, i - n);
                let eps = sign(rep.module().parity(i - n).koszul(alg.parity(j)));
                let swapped = -&(l + &Poly::d(ctx));
                Ok(rep.act(&alg.generator(j, ctx), &swapped, &u)?.inject(&module, n).scale(&-eps))
            }
            (false, false) => Ok(zero),
        }
    })?;
    let alpha = alg.alpha().embed(&params)?;
    let beta = rep.beta().embed(&params)?;
    ConformalAlgebra::new(alpha.direct_sum(&beta, &module)?, table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::poly::int;

    fn ns() -> Arc<ConformalAlgebra> {
        Arc::new(catalog::ns_algebra())
    }

    #[test]
    fn adjoint_matrix_reads_the_table() {
        let a = ns();
        let ad = adjoint(&a);
        let ctx = ad.rho(0).ctx().clone();
        assert_eq!(ad.rho(0).entry(0, 0), &Poly::parse("d + 2*l", &ctx).unwrap());
        assert_eq!(ad.rho(0).entry(1, 1), &Poly::parse("d + (3/2)*l", &ctx).unwrap());
        assert!(ad.rep_check().passed());
        let m = GradedModule::new([("g", Parity::Even)]).unwrap();
        let ab = Arc::new(catalog::abelian(&m));
        assert!(adjoint(&ab).rho(0).is_zero());
    }

    #[test]
    fn mutant_adjoint_fails() {
        let m = Arc::new(catalog::ns_mutant());
        assert!(!adjoint(&m).rep_check().passed());
    }

    #[test]
    fn zero_rep_passes() {
        let a = ns();
        let v = GradedModule::new([("V", Parity::Even)]).unwrap();
        let zero = (0..a.rank())
            .map(|i| ConformalMap::zero(&v, &v, a.parity(i), &LambdaContext::empty()))
            .collect();
        let rep = Representation::new(a, ModuleMap::diagonal(&v, &[int(3)]), zero).unwrap();
        assert!(rep.rep_check().passed());
        assert!(rep.dual_rep_condition_check().passed());
    }

    #[test]
    fn shifted_modules() {
        let a = ns();
        assert_eq!(rep_shift(&a, 0).unwrap(), adjoint(&a));
        assert_eq!(rep_shift(&a, 1).unwrap(), adjoint(&a));
        let twisted = Arc::new(crate::cur_algebra(&catalog::two_dim_hom_lie(int(3))).unwrap());
        let r = rep_shift(&twisted, -1).unwrap();
        // ρ(x)_λ y = [α^{-1}(x)_λ y] = y, ρ(y)_λ x = [α^{-1}(y)_λ x] = -y/3
        let ctx = r.rho(0).ctx().clone();
        assert_eq!(r.rho(0).entry(1, 1), &Poly::one(&ctx));
        assert_eq!(r.rho(1).entry(1, 0), &Poly::constant(&ctx, crate::poly::rat(-1, 3)));
        let singular = Arc::new(catalog::ns_algebra_twisted("d", "1"));
        assert!(matches!(rep_shift(&singular, -1), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn semidirect_of_adjoint_passes() {
        let a = ns();
        let s = semidirect(&adjoint(&a)).unwrap();
        assert_eq!(s.module().names(), vec!["L", "E", "L_M", "E_M"]);
        for r in s.axiom_suite() {
            assert!(r.passed(), "{r}");
        }
        let (w, l) = s.work_ctx(&["l"]);
        for i in 2..4 {
            for j in 2..4 {
                assert!(s.bracket_at(&s.generator(i, &w), &s.generator(j, &w), &l[0]).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn conformal_maps_shift_d() {
        let a = ns();
        let f = adjoint(&a).rho(0).clone();
        let (w, s) = a.work_ctx(&["l"]);
        let x = Element::parse("(d^2 + l) L + 3 E", a.module(), &w).unwrap();
        let lhs = f.apply_at(&x.derive(), &s[0]).unwrap();
        let rhs = f.apply_at(&x, &s[0]).unwrap().mul_poly(&(&Poly::d(&w) + &s[0]));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn commutator_of_constant_maps() {
        let m = GradedModule::new([("u", Parity::Even), ("v", Parity::Odd)]).unwrap();
        let ctx = LambdaContext::new(["l"]).unwrap();
        let c = |x: i64| Poly::from_int(&ctx, x);
        let z = || Poly::zero(&ctx);
        let f = ConformalMap::new(&m, &m, Parity::Odd, &ctx, vec![vec![z(), c(1)], vec![c(2), z()]]).unwrap();
        let g = ConformalMap::new(&m, &m, Parity::Odd, &ctx, vec![vec![z(), c(3)], vec![c(-1), z()]]).unwrap();
        // odd-odd: AB + BA
        let comm = chom_commutator(&f, &g, "k").unwrap();
        let cc = comm.ctx().clone();
        assert_eq!(comm.entry(0, 0), &Poly::from_int(&cc, -1 + 6));
        assert_eq!(comm.entry(1, 1), &Poly::from_int(&cc, 6 - 1));
        assert!(chom_commutator(&f, &f, "k").unwrap().entry(0, 0) == &Poly::from_int(&cc, 4));
        let zero = ConformalMap::zero(&m, &m, Parity::Even, &LambdaContext::empty());
        assert!(chom_compose(&zero, &f, "k").unwrap().is_zero());
    }
}
