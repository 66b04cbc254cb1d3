//! Hom-Lie conformal superalgebras: structure tables, sesquilinear bracket
//! evaluation, axiom checks, constructors and the center.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::freemod::{sign, Element, GradedModule, ModuleMap, Parity};
use crate::poly::{LambdaContext, Poly, Rational};
use crate::report::CheckReport;
use crate::system;

/// Values `[g_i _l g_j]` of a sesquilinear product on generators, as
/// elements over `params + [slot]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketTable {
    module: GradedModule,
    ctx: LambdaContext,
    slot: String,
    entries: Vec<Vec<Element>>,
}

impl BracketTable {
    pub fn zero(module: &GradedModule, params: &LambdaContext) -> Self {
        let slot = params.fresh_name("l");
        let ctx = params.extend([slot.clone()]).expect("fresh slot");
        let n = module.rank();
        let entries = vec![vec![Element::zero(module, &ctx); n]; n];
        BracketTable { module: module.clone(), ctx, slot, entries }
    }

    /// Builds a table from entries over `ctx`, whose last slot is the
    /// bracket variable.
    pub fn from_entries(module: &GradedModule, ctx: &LambdaContext, entries: Vec<Vec<Element>>) -> Result<Self> {
        let slot = ctx
            .slots()
            .last()
            .cloned()
            .ok_or_else(|| Error::invalid("bracket table needs a slot"))?;
        let n = module.rank();
        if entries.len() != n || entries.iter().any(|r| r.len() != n) {
            return Err(Error::ModuleMismatch("bracket table shape".into()));
        }
        for e in entries.iter().flatten() {
            if e.module() != module {
                return Err(Error::ModuleMismatch(format!("[{}] vs [{}]", e.module(), module)));
            }
            if e.ctx() != ctx {
                return Err(Error::ContextMismatch { left: ctx.to_string(), right: e.ctx().to_string() });
            }
        }
        Ok(BracketTable { module: module.clone(), ctx: ctx.clone(), slot, entries })
    }

    /// Table whose `(i, j)` entry is produced by `f` over `params + [l]`,
    /// given the context and the slot polynomial.
    pub fn build<F>(module: &GradedModule, params: &LambdaContext, f: F) -> Result<Self>
    where
        F: Fn(usize, usize, &LambdaContext, &Poly) -> Result<Element> + Sync,
    {
        let mut t = Self::zero(module, params);
        let l = Poly::slot(&t.ctx, &t.slot)?;
        let n = module.rank();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
        let values: Vec<Element> = pairs
            .par_iter()
            .map(|&(i, j)| f(i, j, &t.ctx, &l).and_then(|e| e.embed(&t.ctx)))
            .collect::<Result<_>>()?;
        for ((i, j), v) in pairs.into_iter().zip(values) {
            t.entries[i][j] = v;
        }
        Ok(t)
    }

    pub fn module(&self) -> &GradedModule {
        &self.module
    }

    pub fn ctx(&self) -> &LambdaContext {
        &self.ctx
    }

    pub fn slot(&self) -> &str {
        &self.slot
    }

    pub fn slot_poly(&self) -> Poly {
        Poly::slot(&self.ctx, &self.slot).expect("table slot")
    }

    pub fn params(&self) -> LambdaContext {
        self.ctx.without(&[self.slot.as_str()])
    }

    pub fn entry(&self, i: usize, j: usize) -> &Element {
        &self.entries[i][j]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, value: Element) -> Result<()> {
        self.entries[i][j] = value.embed(&self.ctx)?;
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Element::is_zero)
    }

    /// Re-expresses the table over `params` (which must contain the current
    /// parameters); the bracket slot is renamed if needed.
    pub fn with_params(&self, params: &LambdaContext) -> Result<BracketTable> {
        let mut out = BracketTable::zero(&self.module, params);
        let images: Vec<Poly> = self
            .ctx
            .slots()
            .iter()
            .map(|s| if *s == self.slot { Ok(out.slot_poly()) } else { Poly::slot(&out.ctx, s) })
            .collect::<Result<_>>()?;
        let d = Poly::d(&out.ctx);
        for (i, row) in self.entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                out.entries[i][j] = e.compose(&out.ctx, &images, &d);
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &BracketTable) -> Result<BracketTable> {
        let params = self.params().union(&other.params());
        let a = self.with_params(&params)?;
        let b = other.with_params(&params)?;
        let mut out = a.clone();
        for (i, row) in b.entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                out.entries[i][j] = a.entries[i][j].try_add(e)?;
            }
        }
        Ok(out)
    }

    /// Multiplies every entry by a polynomial in the parameters.
    pub fn mul_param(&self, p: &Poly) -> Result<BracketTable> {
        let params = self.params().union(p.ctx());
        let mut out = self.with_params(&params)?;
        let p = p.embed(&out.ctx)?;
        for e in out.entries.iter_mut().flatten() {
            *e = e.mul_poly(&p);
        }
        Ok(out)
    }

    /// Sesquilinear extension of the table: for `x = Σ x_i(d) g_i` and
    /// `y = Σ y_j(d) g_j`, returns `Σ x_i(-at) y_j(d + at) [g_i _at g_j]`.
    /// `at` may involve `d`, which then acts on coefficients by
    /// multiplication. The result lives in the union of the input contexts
    /// and the table parameters.
    pub fn bracket_at(&self, x: &Element, y: &Element, at: &Poly) -> Result<Element> {
        for e in [x, y] {
            if e.module() != &self.module {
                return Err(Error::ModuleMismatch(format!("[{}] vs [{}]", e.module(), self.module)));
            }
        }
        let w = x.ctx().union(y.ctx()).union(at.ctx()).union(&self.params());
        let x = x.embed(&w)?;
        let y = y.embed(&w)?;
        let at = at.embed(&w)?;
        let d = Poly::d(&w);
        let ids: Vec<Poly> = (0..w.len()).map(|i| Poly::slot_at(&w, i)).collect();
        let left = -&at;
        let right = &d + &at;
        let table_images: Vec<Poly> = self
            .ctx
            .slots()
            .iter()
            .map(|s| if *s == self.slot { Ok(at.clone()) } else { Poly::slot(&w, s) })
            .collect::<Result<_>>()?;
        let shifted = |c: &Poly, image: &Poly| -> Option<Poly> {
            if c.is_zero() {
                None
            } else if c.is_d_free() {
                Some(c.clone())
            } else {
                Some(c.compose(&w, &ids, image))
            }
        };
        let xs: Vec<Option<Poly>> = x.coeffs().iter().map(|c| shifted(c, &left)).collect();
        let ys: Vec<Option<Poly>> = y.coeffs().iter().map(|c| shifted(c, &right)).collect();
        let mut out = Element::zero(&self.module, &w);
        for (i, xi) in xs.iter().enumerate() {
            let Some(xi) = xi else { continue };
            for (j, yj) in ys.iter().enumerate() {
                let Some(yj) = yj else { continue };
                let c = &self.entries[i][j];
                if c.is_zero() {
                    continue;
                }
                let value = c.compose(&w, &table_images, &d);
                out = &out + &value.mul_poly(&(xi * yj));
            }
        }
        Ok(out)
    }
}

/// A finite free Hom-Lie conformal superalgebra candidate: generators, the
/// twist `alpha` and the bracket table. Whether the axioms hold is decided by
/// the `check_*` methods.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConformalAlgebra {
    module: GradedModule,
    alpha: ModuleMap,
    table: BracketTable,
}

impl ConformalAlgebra {
    pub fn new(alpha: ModuleMap, table: BracketTable) -> Result<Self> {
        let module = table.module().clone();
        if alpha.domain() != &module || alpha.codomain() != &module {
            return Err(Error::ModuleMismatch("alpha must be an endomorphism of the generators".into()));
        }
        if alpha.parity() != Parity::Even && !alpha.is_zero() {
            return Err(Error::Parity("alpha must be even".into()));
        }
        let params = table.params().union(alpha.ctx());
        let table = table.with_params(&params)?;
        let alpha = alpha.embed(&params)?;
        Ok(ConformalAlgebra { module, alpha, table })
    }

    /// Adds parameters (for instance a deformation variable) to the context.
    pub fn with_params(&self, params: &LambdaContext) -> Result<Self> {
        let all = self.params().union(params);
        Ok(ConformalAlgebra {
            module: self.module.clone(),
            alpha: self.alpha.embed(&all)?,
            table: self.table.with_params(&all)?,
        })
    }

    pub fn module(&self) -> &GradedModule {
        &self.module
    }

    pub fn alpha(&self) -> &ModuleMap {
        &self.alpha
    }

    pub fn table(&self) -> &BracketTable {
        &self.table
    }

    pub fn rank(&self) -> usize {
        self.module.rank()
    }

    pub fn params(&self) -> LambdaContext {
        self.table.params()
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.module.parity(i)
    }

    /// `params` followed by fresh slots named after `bases`.
    pub fn work_ctx(&self, bases: &[&str]) -> (LambdaContext, Vec<Poly>) {
        let mut ctx = self.params();
        let mut names = Vec::new();
        for b in bases {
            let n = ctx.fresh_name(b);
            ctx = ctx.extend([n.clone()]).expect("fresh");
            names.push(n);
        }
        let slots = names.iter().map(|n| Poly::slot(&ctx, n).expect("slot")).collect();
        (ctx, slots)
    }

    pub fn generator(&self, i: usize, ctx: &LambdaContext) -> Element {
        Element::generator(&self.module, ctx, i)
    }

    pub fn bracket_at(&self, x: &Element, y: &Element, at: &Poly) -> Result<Element> {
        self.table.bracket_at(x, y, at)
    }

    /// `[x _s y]` for a new slot `s` appended to the ambient context.
    pub fn bracket_eval(&self, x: &Element, y: &Element, out_slot: &str) -> Result<Element> {
        let ambient = x.ctx().union(y.ctx()).union(&self.params());
        let w = ambient.extend([out_slot])?;
        let at = Poly::slot(&w, out_slot)?;
        self.bracket_at(&x.embed(&w)?, &y.embed(&w)?, &at)
    }

    pub fn apply_alpha(&self, x: &Element) -> Result<Element> {
        self.alpha.apply(x)
    }

    pub fn alpha_power(&self, k: i64) -> Result<ModuleMap> {
        self.alpha.power(k)
    }

    pub fn is_regular(&self) -> bool {
        self.alpha.regularity_check()
    }

    fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.rank();
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect()
    }

    fn triples(&self) -> Vec<(usize, usize, usize)> {
        let n = self.rank();
        (0..n)
            .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
            .collect()
    }

    pub(crate) fn witness(&self, idx: &[usize]) -> String {
        idx.iter().map(|&i| self.module.name(i)).collect::<Vec<_>>().join(", ")
    }

    pub fn check_grading(&self) -> CheckReport {
        let mut r = CheckReport::new("grading");
        for (i, j) in self.pairs() {
            let e = self.table.entry(i, j);
            let expected = self.parity(i) + self.parity(j);
            match e.parity() {
                _ if e.is_zero() => {}
                Some(p) if p == expected => {}
                _ => {
                    let wrong = e.homogeneous_parts().into_iter().filter(|(p, _)| *p != expected);
                    for (_, part) in wrong {
                        r.record(self.witness(&[i, j]), part);
                    }
                }
            }
        }
        r
    }

    /// Residual `-ε [g_j _{-l-d} g_i] - [g_i _l g_j]` for every pair.
    pub fn check_skew(&self) -> CheckReport {
        let (w, s) = self.work_ctx(&["l"]);
        let swapped = -&(&s[0] + &Poly::d(&w));
        let items = self
            .pairs()
            .par_iter()
            .map(|&(i, j)| {
                let eps = sign(self.parity(i).koszul(self.parity(j)));
                let rhs = self
                    .bracket_at(&self.generator(j, &w), &self.generator(i, &w), &swapped)?
                    .scale(&-eps);
                let lhs = self.table.entry(i, j).embed(&w)?;
                Ok((self.witness(&[i, j]), &rhs - &lhs))
            })
            .collect::<Result<Vec<_>>>()
            .expect("generator brackets are well formed");
        CheckReport::from_residuals("skew-symmetry", items)
    }

    /// `[α(a)_l [b_m c]] - [[a_l b]_{l+m} α(c)] - ε(a,b) [α(b)_m [a_l c]]`.
    #[allow(clippy::too_many_arguments)]
    pub fn hom_jacobi_residual(&self, a: &Element, b: &Element, c: &Element, pa: Parity, pb: Parity, l: &Poly, m: &Poly) -> Result<Element> {
        let lhs = self.bracket_at(&self.apply_alpha(a)?, &self.bracket_at(b, c, m)?, l)?;
        let first = self.bracket_at(&self.bracket_at(a, b, l)?, &self.apply_alpha(c)?, &(l + m))?;
        let second = self.bracket_at(&self.apply_alpha(b)?, &self.bracket_at(a, c, l)?, m)?;
        let eps = sign(pa.koszul(pb));
        Ok(&(&lhs - &first) - &second.scale(&eps))
    }

    pub fn check_hom_jacobi(&self) -> CheckReport {
        let (w, s) = self.work_ctx(&["l", "m"]);
        let items = self
            .triples()
            .par_iter()
            .map(|&(i, j, k)| {
                let g = |x| self.generator(x, &w);
                let res = self.hom_jacobi_residual(&g(i), &g(j), &g(k), self.parity(i), self.parity(j), &s[0], &s[1])?;
                Ok((self.witness(&[i, j, k]), res))
            })
            .collect::<Result<Vec<_>>>()
            .expect("generator brackets are well formed");
        CheckReport::from_residuals("hom-jacobi", items)
    }

    /// Residual `[α(g_i) _l α(g_j)] - α([g_i _l g_j])`.
    pub fn check_multiplicative(&self) -> CheckReport {
        let (w, s) = self.work_ctx(&["l"]);
        let items = self
            .pairs()
            .par_iter()
            .map(|&(i, j)| {
                let ai = self.apply_alpha(&self.generator(i, &w))?;
                let aj = self.apply_alpha(&self.generator(j, &w))?;
                let rhs = self.bracket_at(&ai, &aj, &s[0])?;
                let lhs = self.apply_alpha(&self.bracket_at(&self.generator(i, &w), &self.generator(j, &w), &s[0])?)?;
                Ok((self.witness(&[i, j]), &rhs - &lhs))
            })
            .collect::<Result<Vec<_>>>()
            .expect("generator brackets are well formed");
        CheckReport::from_residuals("multiplicative", items)
    }

    pub fn check_regular(&self) -> CheckReport {
        let mut r = CheckReport::new("regular");
        if !self.is_regular() {
            let det = self.alpha.determinant().map(|d| d.to_string()).unwrap_or_default();
            r.fail("alpha", format!("determinant {det} is not a nonzero constant"));
        }
        r
    }

    /// Grading, skew-symmetry, Hom-Jacobi and multiplicativity.
    pub fn axiom_suite(&self) -> Vec<CheckReport> {
        vec![self.check_grading(), self.check_skew(), self.check_hom_jacobi(), self.check_multiplicative()]
    }

    /// Whether `z` brackets to zero with every generator.
    pub fn is_central(&self, z: &Element) -> Result<bool> {
        let (w, s) = self.work_ctx(&["l"]);
        let z = z.embed(&w)?;
        for k in 0..self.rank() {
            if !self.bracket_at(&z, &self.generator(k, &w), &s[0])?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Basis of the central elements `Σ q_i(d) g_i` with `deg q_i ≤ max_d`.
    /// Complete only within that bound.
    pub fn center_solve(&self, max_d: u32) -> Vec<Element> {
        let (w, s) = self.work_ctx(&["l"]);
        let params = self.params();
        let mut basis = Vec::new();
        for p in [Parity::Even, Parity::Odd] {
            let unknowns: Vec<(usize, u32)> = (0..self.rank())
                .filter(|&i| self.parity(i) == p)
                .flat_map(|i| (0..=max_d).map(move |e| (i, e)))
                .collect();
            if unknowns.is_empty() {
                continue;
            }
            let monomial = |(i, e): (usize, u32), ctx: &LambdaContext| {
                Element::monomial(&self.module, i, Poly::d(ctx).pow(e))
            };
            let kernel = system::kernel(unknowns.len(), |u| {
                let z = monomial(unknowns[u], &w);
                (0..self.rank())
                    .map(|k| self.bracket_at(&z, &self.generator(k, &w), &s[0]).expect("bracket"))
                    .collect()
            });
            for v in kernel {
                let mut z = Element::zero(&self.module, &params);
                for (u, c) in v.iter().enumerate() {
                    if !num_traits::Zero::is_zero(c) {
                        z = &z + &monomial(unknowns[u], &params).scale(c);
                    }
                }
                basis.push(z);
            }
        }
        basis
    }
}

/// Finite-dimensional Hom-Lie superalgebra data over Q: `bracket[i][j]` are
/// the coordinates of `[e_i, e_j]`, `alpha[r][c]` the matrix of the twist.
#[derive(Clone, Debug)]
pub struct FiniteSuperalgebra {
    pub module: GradedModule,
    pub bracket: Vec<Vec<Vec<Rational>>>,
    pub alpha: Vec<Vec<Rational>>,
}

/// The current algebra: the free C[d]-module on the basis with
/// `[a_l b] = [a, b]` on generators and `alpha` acting entrywise.
pub fn cur_algebra(g: &FiniteSuperalgebra) -> Result<ConformalAlgebra> {
    let ctx0 = LambdaContext::empty();
    let n = g.module.rank();
    let alpha_matrix = g
        .alpha
        .iter()
        .map(|r| r.iter().map(|c| Poly::constant(&ctx0, c.clone())).collect())
        .collect();
    let alpha = ModuleMap::new(&g.module, &g.module, Parity::Even, alpha_matrix)?;
    if g.bracket.len() != n || g.bracket.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
        return Err(Error::ModuleMismatch("structure constants shape".into()));
    }
    let table = BracketTable::build(&g.module, &ctx0, |i, j, ctx, _| {
        let coeffs = g.bracket[i][j].iter().map(|c| Poly::constant(ctx, c.clone())).collect();
        Element::from_coeffs(&g.module, ctx, coeffs)
    })?;
    ConformalAlgebra::new(alpha, table)
}

/// The commutator algebra `[a_l b] = a_l b - ε b_{-l-d} a` of a product
/// table.
pub fn from_hom_associative(product: &BracketTable, alpha: &ModuleMap) -> Result<ConformalAlgebra> {
    let module = product.module().clone();
    let table = BracketTable::build(&module, &product.params(), |i, j, ctx, l| {
        let eps = sign(module.parity(i).koszul(module.parity(j)));
        let x = Element::generator(&module, ctx, i);
        let y = Element::generator(&module, ctx, j);
        let direct = product.bracket_at(&x, &y, l)?;
        let swapped = product.bracket_at(&y, &x, &-&(l + &Poly::d(ctx)))?;
        Ok(&direct - &swapped.scale(&eps))
    })?;
    ConformalAlgebra::new(alpha.clone(), table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn el(s: &str, a: &ConformalAlgebra, ctx: &LambdaContext) -> Element {
        Element::parse(s, a.module(), ctx).unwrap()
    }

    #[test]
    fn bracket_eval_examples() {
        let a = catalog::ns_algebra();
        let ctx = LambdaContext::empty();
        let w = LambdaContext::new(["l"]).unwrap();
        let l = el("L", &a, &ctx);
        let e = el("E", &a, &ctx);
        let dl = el("d L", &a, &ctx);
        let de = el("d E", &a, &ctx);
        assert_eq!(a.bracket_eval(&l, &l, "l").unwrap(), el("(d + 2*l) L", &a, &w));
        assert_eq!(a.bracket_eval(&dl, &l, "l").unwrap(), el("-l (d + 2*l) L", &a, &w));
        assert_eq!(a.bracket_eval(&l, &de, "l").unwrap(), el("(d + l)(d + 3/2 l) E", &a, &w));
        assert!(matches!(
            a.bracket_eval(&l.embed(&w).unwrap(), &e, "l"),
            Err(Error::SlotCollision(_))
        ));
    }

    #[test]
    fn ns_algebra_passes_axioms() {
        let a = catalog::ns_algebra();
        for r in a.axiom_suite() {
            assert!(r.passed(), "{r}");
        }
        assert!(a.check_regular().passed());
    }

    #[test]
    fn mutants_fail() {
        let m = catalog::ns_mutant();
        let jac = m.check_hom_jacobi();
        assert!(!jac.passed());
        assert!(jac.residuals.iter().any(|r| r.witness == "L, L, L"));

        let skew = catalog::ns_skew_mutant().check_skew();
        let le = skew.residuals.iter().find(|r| r.witness == "L, E").unwrap();
        assert_eq!(le.detail, "((1/2)*l) E");
        assert!(skew.residuals.iter().all(|r| r.witness == "L, E" || r.witness == "E, L"));
    }

    #[test]
    fn grading_detects_parity_violation() {
        let m = GradedModule::new([("L", Parity::Even), ("E", Parity::Odd)]).unwrap();
        let mut t = BracketTable::zero(&m, &LambdaContext::empty());
        let ctx = t.ctx().clone();
        t.set_entry(0, 0, Element::parse("E", &m, &ctx).unwrap()).unwrap();
        let a = ConformalAlgebra::new(ModuleMap::identity(&m), t).unwrap();
        let r = a.check_grading();
        assert_eq!(r.residuals.len(), 1);
        assert_eq!(r.residuals[0].witness, "L, L");
        let abelian = catalog::abelian(&m);
        assert!(abelian.check_grading().passed());
    }

    #[test]
    fn multiplicative_examples() {
        let a = catalog::ns_algebra();
        assert!(a.check_multiplicative().passed());
        let scaled = ConformalAlgebra::new(
            ModuleMap::diagonal(a.module(), &[crate::poly::int(2), crate::poly::int(2)]),
            a.table().clone(),
        )
        .unwrap();
        assert!(!scaled.check_multiplicative().passed());
        assert!(scaled.check_skew().passed());
    }

    #[test]
    fn current_algebras() {
        let ab = cur_algebra(&catalog::abelian_superalgebra()).unwrap();
        assert!(ab.axiom_suite().iter().all(CheckReport::passed));
        let xy = cur_algebra(&catalog::two_dim_lie()).unwrap();
        assert!(xy.axiom_suite().iter().all(CheckReport::passed));
        let (w, _) = xy.work_ctx(&["l"]);
        assert_eq!(xy.table().entry(0, 1), &el("y", &xy, &w));
        assert_eq!(xy.table().entry(1, 0), &el("-y", &xy, &w));
        for e in [&xy, &ab].iter().flat_map(|a| {
            let n = a.rank();
            (0..n).flat_map(move |i| (0..n).map(move |j| a.table().entry(i, j).clone()))
        }) {
            assert!(e.coeffs().iter().all(|c| c.as_constant().is_some()));
        }
    }

    #[test]
    fn commutator_construction() {
        let m = GradedModule::new([("e", Parity::Even)]).unwrap();
        let mut p = BracketTable::zero(&m, &LambdaContext::empty());
        let ctx = p.ctx().clone();
        p.set_entry(0, 0, Element::parse("e", &m, &ctx).unwrap()).unwrap();
        let a = from_hom_associative(&p, &ModuleMap::identity(&m)).unwrap();
        assert!(a.table().is_zero());
        let zero = from_hom_associative(&BracketTable::zero(&m, &LambdaContext::empty()), &ModuleMap::identity(&m)).unwrap();
        assert!(zero.table().is_zero());

        // odd generator: the commutator is the symmetrisation
        let o = GradedModule::new([("u", Parity::Odd)]).unwrap();
        let mut q = BracketTable::zero(&o, &LambdaContext::empty());
        let ctx = q.ctx().clone();
        q.set_entry(0, 0, Element::zero(&o, &ctx)).unwrap();
        let b = from_hom_associative(&q, &ModuleMap::identity(&o)).unwrap();
        assert!(b.table().is_zero());
    }

    #[test]
    fn center_examples() {
        let a = catalog::ns_algebra();
        assert!(a.center_solve(2).is_empty());
        let m = GradedModule::new([("g", Parity::Even)]).unwrap();
        let ab = catalog::abelian(&m);
        let z = ab.center_solve(1);
        let ctx = LambdaContext::empty();
        assert_eq!(z, vec![Element::parse("g", &m, &ctx).unwrap(), Element::parse("d g", &m, &ctx).unwrap()]);
        for e in &z {
            assert!(ab.is_central(e).unwrap());
        }
    }
}
