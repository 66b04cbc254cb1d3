//! Cochains of the basic complex, the differentials `d` and `d_s`,
//! 2-cocycles, first-order deformations and Nijenhuis operators.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;

use crate::algebra::{BracketTable, ConformalAlgebra};
use crate::error::{Error, Result};
use crate::freemod::{sign, Element, ModuleMap, Parity};
use crate::poly::{int, LambdaContext, Poly, Rational};
use crate::rep::{rep_shift, Representation};
use crate::report::CheckReport;

/// All permutations of `0..n` in lexicographic order.
pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// Nondecreasing tuples of length `n` over `0..rank`.
pub(crate) fn canonical_tuples(rank: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for t in &out {
            let start = t.last().copied().unwrap_or(0);
            for g in start..rank {
                let mut u = t.clone();
                u.push(g);
                next.push(u);
            }
        }
        out = next;
    }
    out
}

/// All tuples of length `n` over `0..rank`, lexicographically.
pub(crate) fn all_tuples(rank: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t: Vec<usize>| {
                (0..rank).map(move |g| {
                    let mut u = t.clone();
                    u.push(g);
                    u
                })
            })
            .collect();
    }
    out
}

fn slot_context(params: &LambdaContext, n: usize) -> (LambdaContext, Vec<String>) {
    let mut ctx = params.clone();
    let mut names = Vec::with_capacity(n);
    for k in 1..=n {
        let name = ctx.fresh_name(&format!("l{k}"));
        ctx = ctx.extend([name.clone()]).expect("fresh");
        names.push(name);
    }
    (ctx, names)
}

fn lcm(a: u32, b: u32) -> u32 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

/// An `n`-cochain `γ` with values in a representation, stored on ordered
/// generator tuples. Each value lives in `params + [l1, …, ln]`, slot `lk`
/// belonging to the `k`-th argument. Tuples without a stored value are
/// obtained from a stored permutation by the signed swap rule, and from
/// zero when none is stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    arity: usize,
    parity: Parity,
    target: Arc<Representation>,
    ctx: LambdaContext,
    slots: Vec<String>,
    values: BTreeMap<Vec<usize>, Element>,
}

impl Cochain {
    pub fn new(target: Arc<Representation>, arity: usize, parity: Parity) -> Self {
        let (ctx, slots) = slot_context(&target.params(), arity);
        Cochain { arity, parity, target, ctx, slots, values: BTreeMap::new() }
    }

    /// The 0-cochain with value `m`.
    pub fn from_element(target: Arc<Representation>, m: &Element) -> Result<Self> {
        let parity = m
            .parity()
            .ok_or_else(|| Error::InvalidCochain("a 0-cochain needs a homogeneous value".into()))?;
        let params = target.params().union(m.ctx());
        let mut c = Cochain::new(target, 0, parity).with_params(&params)?;
        c.set(&[], m.clone())?;
        Ok(c)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn target(&self) -> &Arc<Representation> {
        &self.target
    }

    pub fn algebra(&self) -> &ConformalAlgebra {
        self.target.algebra()
    }

    pub fn ctx(&self) -> &LambdaContext {
        &self.ctx
    }

    pub fn slot_names(&self) -> &[String] {
        &self.slots
    }

    pub fn slot_polys(&self) -> Vec<Poly> {
        self.slots.iter().map(|s| Poly::slot(&self.ctx, s).expect("slot")).collect()
    }

    pub fn params(&self) -> LambdaContext {
        let names: Vec<&str> = self.slots.iter().map(String::as_str).collect();
        self.ctx.without(&names)
    }

    /// Stored values in tuple order.
    pub fn stored(&self) -> impl Iterator<Item = (&Vec<usize>, &Element)> {
        self.values.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(Element::is_zero)
    }

    /// The same cochain over a larger parameter context.
    pub fn with_params(&self, params: &LambdaContext) -> Result<Cochain> {
        let all = self.params().union(params);
        if all == self.params() {
            return Ok(self.clone());
        }
        let (ctx, slots) = slot_context(&all, self.arity);
        let images: Vec<Poly> = self
            .ctx
            .slots()
            .iter()
            .map(|s| match self.slots.iter().position(|x| x == s) {
                Some(k) => Poly::slot(&ctx, &slots[k]),
                None => Poly::slot(&ctx, s),
            })
            .collect::<Result<_>>()?;
        let d = Poly::d(&ctx);
        let values = self.values.iter().map(|(t, v)| (t.clone(), v.compose(&ctx, &images, &d))).collect();
        Ok(Cochain { ctx, slots, values, ..self.clone() })
    }

    /// The same values regarded as a cochain with values in `target`, which
    /// must act on the same module.
    pub fn retarget(&self, target: Arc<Representation>) -> Result<Cochain> {
        if target.module() != self.target.module() || target.algebra().module() != self.algebra().module() {
            return Err(Error::ModuleMismatch("retargeting to a different module".into()));
        }
        let mut out = Cochain::new(target, self.arity, self.parity).with_params(&self.params())?;
        let me = self.with_params(&out.params())?;
        out.values = me.values;
        Ok(out)
    }

    /// Parses a value in this cochain's context.
    pub fn parse_value(&self, text: &str) -> Result<Element> {
        Element::parse(text, self.target.module(), &self.ctx)
    }

    /// Stores the value on `tuple`; the value must live in the cochain's
    /// context (or a sub-context of it).
    pub fn set(&mut self, tuple: &[usize], value: Element) -> Result<()> {
        if tuple.len() != self.arity {
            return Err(Error::InvalidCochain(format!("tuple of length {} for arity {}", tuple.len(), self.arity)));
        }
        if let Some(g) = tuple.iter().find(|&&g| g >= self.algebra().rank()) {
            return Err(Error::InvalidCochain(format!("no generator with index {g}")));
        }
        if value.module() != self.target.module() {
            return Err(Error::ModuleMismatch("value outside the target module".into()));
        }
        self.values.insert(tuple.to_vec(), value.embed(&self.ctx)?);
        Ok(())
    }

    fn swap_sign(&self, stored: &[usize], perm: &[usize]) -> Rational {
        let mut s = int(1);
        for p in 0..perm.len() {
            for q in p + 1..perm.len() {
                if perm[p] > perm[q] {
                    let (x, y) = (self.algebra().parity(stored[perm[p]]), self.algebra().parity(stored[perm[q]]));
                    s = -s * sign(x.koszul(y));
                }
            }
        }
        s
    }

    /// The value on `stored ∘ perm` derived from `value`, the value on
    /// `stored`: slot `l_{perm[p]}` of the stored value becomes `l_p`.
    fn permuted(&self, stored: &[usize], value: &Element, perm: &[usize]) -> Element {
        let mut images: Vec<Poly> = self.ctx.slots().iter().map(|s| Poly::slot(&self.ctx, s).expect("slot")).collect();
        let polys = self.slot_polys();
        for (p, &q) in perm.iter().enumerate() {
            let idx = self.ctx.index_of(&self.slots[q]).expect("slot");
            images[idx] = polys[p].clone();
        }
        value.compose(&self.ctx, &images, &Poly::d(&self.ctx)).scale(&self.swap_sign(stored, perm))
    }

    /// `γ_{l1, …, ln}(g_{t1}, …, g_{tn})`.
    pub fn value(&self, tuple: &[usize]) -> Element {
        if let Some(v) = self.values.get(tuple) {
            return v.clone();
        }
        for perm in permutations(self.arity) {
            // stored ∘ perm = tuple
            let mut stored = vec![0; self.arity];
            for (p, &q) in perm.iter().enumerate() {
                stored[q] = tuple[p];
            }
            if let Some(v) = self.values.get(&stored) {
                return self.permuted(&stored, v, &perm);
            }
        }
        Element::zero(self.target.module(), &self.ctx)
    }

    /// `γ_{at_1, …, at_n}(x_1, …, x_n)` for arbitrary elements, using
    /// `γ(…, p(d) a, …) = p(-at_k) γ(…, a, …)` in argument `k`. Slot values
    /// are substituted commutatively, so `at` may mention `d`.
    pub fn eval(&self, args: &[Element], at: &[Poly]) -> Result<Element> {
        if args.len() != self.arity || at.len() != self.arity {
            return Err(Error::InvalidCochain(format!("{} arguments for arity {}", args.len(), self.arity)));
        }
        let mut w = self.params();
        for (x, a) in args.iter().zip(at) {
            if x.module() != self.algebra().module() {
                return Err(Error::ModuleMismatch("cochain argument outside the algebra".into()));
            }
            w = w.union(x.ctx()).union(a.ctx());
        }
        let ids: Vec<Poly> = (0..w.len()).map(|i| Poly::slot_at(&w, i)).collect();
        let d = Poly::d(&w);
        let at: Vec<Poly> = at.iter().map(|a| a.embed(&w)).collect::<Result<_>>()?;
        let mut expanded: Vec<Vec<(usize, Poly)>> = Vec::with_capacity(self.arity);
        for (x, a) in args.iter().zip(&at) {
            let x = x.embed(&w)?;
            let neg = -a;
            expanded.push(
                x.coeffs()
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (i, if c.is_d_free() { c.clone() } else { c.compose(&w, &ids, &neg) }))
                    .collect(),
            );
        }
        let images: Vec<Poly> = self
            .ctx
            .slots()
            .iter()
            .map(|s| match self.slots.iter().position(|x| x == s) {
                Some(k) => Ok(at[k].clone()),
                None => Poly::slot(&w, s),
            })
            .collect::<Result<_>>()?;
        let mut out = Element::zero(self.target.module(), &w);
        let mut pick = vec![0usize; self.arity];
        if expanded.iter().any(Vec::is_empty) {
            return Ok(out);
        }
        loop {
            let tuple: Vec<usize> = pick.iter().zip(&expanded).map(|(&p, e)| e[p].0).collect();
            let v = self.value(&tuple);
            if !v.is_zero() {
                let mut coef = Poly::one(&w);
                for (&p, e) in pick.iter().zip(&expanded) {
                    coef = &coef * &e[p].1;
                }
                out = &out + &v.compose(&w, &images, &d).mul_poly(&coef);
            }
            // odometer
            let mut k = self.arity;
            loop {
                if k == 0 {
                    return Ok(out);
                }
                k -= 1;
                pick[k] += 1;
                if pick[k] < expanded[k].len() {
                    break;
                }
                pick[k] = 0;
            }
        }
    }

    fn expected_parity(&self, tuple: &[usize]) -> Parity {
        tuple.iter().fold(self.parity, |p, &g| p + self.algebra().parity(g))
    }

    /// Checks value parities, the signed swap rule between stored tuples
    /// (slots travel with their arguments) and `γ ∘ α = β ∘ γ`.
    pub fn validate(&self) -> CheckReport {
        let alg = self.algebra();
        let witness = |t: &[usize]| if t.is_empty() { "()".to_string() } else { alg.witness(t) };
        let mut report = CheckReport::new("cochain");
        for (t, v) in &self.values {
            let expected = self.expected_parity(t);
            for (p, part) in v.homogeneous_parts() {
                if p != expected {
                    report.record(format!("parity {}", witness(t)), part);
                }
            }
        }
        let perms = permutations(self.arity);
        for (t, v) in &self.values {
            for perm in &perms {
                let image: Vec<usize> = perm.iter().map(|&q| t[q]).collect();
                if let Some(other) = self.values.get(&image) {
                    if image == *t && perm.iter().enumerate().all(|(p, &q)| p == q) {
                        continue;
                    }
                    let derived = self.permuted(t, v, perm);
                    report.record(format!("swap {} -> {}", witness(t), witness(&image)), &derived - other);
                }
            }
        }
        let beta = self.target.beta();
        let slots = self.slot_polys();
        let items: Vec<(String, Result<Element>)> = canonical_tuples(alg.rank(), self.arity)
            .par_iter()
            .map(|t| {
                let res = (|| {
                    let args = t
                        .iter()
                        .map(|&g| alg.apply_alpha(&alg.generator(g, &self.ctx)))
                        .collect::<Result<Vec<_>>>()?;
                    let lhs = self.eval(&args, &slots)?;
                    let rhs = beta.apply(&self.value(t))?;
                    Ok(&lhs - &rhs.embed(lhs.ctx())?)
                })();
                (format!("alpha {}", witness(t)), res)
            })
            .collect();
        for (w, r) in items {
            match r {
                Ok(e) => report.record(w, e),
                Err(e) => report.fail(w, e.to_string()),
            }
        }
        report
    }

    /// `dγ` with values in the cochain's own representation.
    pub fn differential(&self) -> Result<Cochain> {
        self.differential_in(self.target.clone())
    }

    /// `d_s γ`: the differential computed in `R_s`, where the action of
    /// `a` is `[α^s(a) _λ ·]`. The cochain must take values in the algebra.
    pub fn differential_s(&self, s: i64) -> Result<Cochain> {
        let shifted = Arc::new(rep_shift(self.target.algebra_arc(), s)?);
        self.differential_in(shifted)
    }

    fn differential_in(&self, rep: Arc<Representation>) -> Result<Cochain> {
        let me = self.retarget(rep.clone())?;
        let alg = rep.algebra();
        let n = self.arity;
        let power = alg.alpha_power(n as i64)?;
        let out = Cochain::new(rep.clone(), n + 1, self.parity).with_params(&me.params())?;
        let w = out.ctx.clone();
        let lam = out.slot_polys();
        let gp = |g: usize| alg.parity(g).bit() as usize;
        let values = all_tuples(alg.rank(), n + 1)
            .par_iter()
            .map(|t| {
                let gens: Vec<Element> = t.iter().map(|&g| alg.generator(g, &w)).collect();
                let mut acc = Element::zero(rep.module(), &w);
                let mut before = 0usize;
                for i in 0..=n {
                    let e = i + (self.parity.bit() as usize + before) * gp(t[i]);
                    before += gp(t[i]);
                    let rest: Vec<Element> = (0..=n).filter(|&k| k != i).map(|k| gens[k].clone()).collect();
                    let rest_at: Vec<Poly> = (0..=n).filter(|&k| k != i).map(|k| lam[k].clone()).collect();
                    let inner = me.eval(&rest, &rest_at)?;
                    let term = rep.act(&power.apply(&gens[i])?, &lam[i], &inner)?.embed(&w)?;
                    acc = if e.is_multiple_of(2) { &acc + &term } else { &acc - &term };
                }
                let prefix: Vec<usize> = t
                    .iter()
                    .scan(0, |s, &g| {
                        let v = *s;
                        *s += gp(g);
                        Some(v)
                    })
                    .collect();
                for i in 0..=n {
                    for j in i + 1..=n {
                        let e = i + j + prefix[i] * gp(t[i]) + prefix[j] * gp(t[j]) + gp(t[i]) * gp(t[j]);
                        let mut args = vec![alg.bracket_at(&gens[i], &gens[j], &lam[i])?];
                        let mut at = vec![&lam[i] + &lam[j]];
                        for k in (0..=n).filter(|&k| k != i && k != j) {
                            args.push(alg.apply_alpha(&gens[k])?);
                            at.push(lam[k].clone());
                        }
                        let term = me.eval(&args, &at)?.embed(&w)?;
                        acc = if e.is_multiple_of(2) { &acc + &term } else { &acc - &term };
                    }
                }
                Ok((t.clone(), acc))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut out = out;
        out.values = values.into_iter().collect();
        Ok(out)
    }

    /// A random skew cochain commuting with the twists: random values on
    /// ordered tuples (coefficients in `-3..=3`, total degree at most
    /// `max_degree` in slots and `d`), averaged over tuple stabilizers and
    /// then over the group generated by `γ ↦ β^{-1} γ(α ·)`. Requires
    /// `α` and `β` of finite order.
    pub fn random<R: Rng>(
        target: Arc<Representation>,
        arity: usize,
        parity: Parity,
        max_degree: u32,
        rng: &mut R,
    ) -> Result<Cochain> {
        let alg = target.algebra();
        let oa = alg.alpha().order(64);
        let ob = target.beta().order(64);
        let (Some(oa), Some(ob)) = (oa, ob) else {
            return Err(Error::Precondition("random cochains need twists of finite order".into()));
        };
        let mut c = Cochain::new(target.clone(), arity, parity);
        let module = target.module().clone();
        let ctx = c.ctx.clone();
        let free: Vec<usize> = c.slots.iter().map(|s| ctx.index_of(s).expect("slot")).collect();
        for t in canonical_tuples(alg.rank(), arity) {
            let p = c.expected_parity(&t);
            let coeffs = (0..module.rank())
                .map(|k| {
                    let mut poly = Poly::zero(&ctx);
                    if module.parity(k) == p {
                        for _ in 0..rng.gen_range(0..=3) {
                            let mut e = vec![0u32; ctx.len() + 1];
                            let mut budget = rng.gen_range(0..=max_degree);
                            let vars: Vec<usize> = free.iter().copied().chain([ctx.len()]).collect();
                            while budget > 0 {
                                e[vars[rng.gen_range(0..vars.len())]] += 1;
                                budget -= 1;
                            }
                            let v: i64 = rng.gen_range(-3..=3);
                            poly = &poly + &Poly::monomial(&ctx, e, int(v));
                        }
                    }
                    poly
                })
                .collect();
            let raw = Element::from_coeffs(&module, &ctx, coeffs)?;
            let stab: Vec<Vec<usize>> = permutations(arity)
                .into_iter()
                .filter(|perm| perm.iter().enumerate().all(|(p, &q)| t[p] == t[q]))
                .collect();
            let mut sum = Element::zero(&module, &ctx);
            for perm in &stab {
                sum = &sum + &c.permuted(&t, &raw, perm);
            }
            c.values.insert(t, sum.scale(&(int(1) / int(stab.len() as i64))));
        }
        let n = lcm(oa, ob);
        if n == 1 {
            return Ok(c);
        }
        let beta_inv = target.beta().inverse()?;
        let mut acc = c.clone();
        let mut cur = c;
        for _ in 1..n {
            cur = cur.twisted(&beta_inv)?;
            for (t, v) in &cur.values {
                let e = acc.values.get_mut(t).expect("same tuples");
                *e = &*e + v;
            }
        }
        let inv = int(1) / int(n as i64);
        for v in acc.values.values_mut() {
            *v = v.scale(&inv);
        }
        Ok(acc)
    }

    /// `β^{-1} γ(α ·)` on canonical tuples.
    fn twisted(&self, beta_inv: &ModuleMap) -> Result<Cochain> {
        let alg = self.algebra();
        let slots = self.slot_polys();
        let mut out = self.clone();
        out.values.clear();
        for t in canonical_tuples(alg.rank(), self.arity) {
            let args = t.iter().map(|&g| alg.apply_alpha(&alg.generator(g, &self.ctx))).collect::<Result<Vec<_>>>()?;
            let v = beta_inv.apply(&self.eval(&args, &slots)?)?.embed(&self.ctx)?;
            out.values.insert(t, v);
        }
        Ok(out)
    }

    /// `γ + other`, as cochains on the same representation.
    pub fn try_add(&self, other: &Cochain) -> Result<Cochain> {
        if self.arity != other.arity || self.target.module() != other.target.module() {
            return Err(Error::InvalidCochain("sum of incompatible cochains".into()));
        }
        let params = self.params().union(&other.params());
        let a = self.with_params(&params)?;
        let b = other.with_params(&params)?;
        let mut out = a.clone();
        out.values.clear();
        for t in a.values.keys().chain(b.values.keys()) {
            if !out.values.contains_key(t) {
                out.values.insert(t.clone(), &a.value(t) + &b.value(t));
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "arity {}, parity {}, slots [{}]", self.arity, self.parity, self.slots.join(", "))?;
        for (t, v) in &self.values {
            let names: Vec<&str> = t.iter().map(|&g| self.algebra().module().name(g)).collect();
            writeln!(f, "({}) = {}", names.join(", "), v)?;
        }
        Ok(())
    }
}

/// `ψ_{l1, l2}(g_i, g_j) = c_ij(d -> -l1 - l2, l -> l1)`: the 2-cochain with
/// values in `R_{-1}` whose reduction is the given table.
pub fn psi_from_table(algebra: &Arc<ConformalAlgebra>, table: &BracketTable) -> Result<Cochain> {
    if table.module() != algebra.module() {
        return Err(Error::ModuleMismatch("table over a different module".into()));
    }
    let target = Arc::new(rep_shift(algebra, -1)?);
    let params = target.params().union(&table.params());
    let mut psi = Cochain::new(target, 2, Parity::Even).with_params(&params)?;
    let ctx = psi.ctx.clone();
    let s = psi.slot_polys();
    let images: Vec<Poly> = table
        .ctx()
        .slots()
        .iter()
        .map(|n| if n == table.slot() { Ok(s[0].clone()) } else { Poly::slot(&ctx, n) })
        .collect::<Result<_>>()?;
    let d = -&(&s[0] + &s[1]);
    for i in 0..algebra.rank() {
        for j in 0..algebra.rank() {
            let v = table.entry(i, j).compose(&ctx, &images, &d);
            if !v.is_zero() {
                psi.set(&[i, j], v)?;
            }
        }
    }
    Ok(psi)
}

/// `ψ̄_l(a, b) = ψ_{l, -l-d}(a, b)` as a bracket table.
pub fn reduced_table(psi: &Cochain) -> Result<BracketTable> {
    if psi.arity() != 2 {
        return Err(Error::InvalidCochain("reduction needs a 2-cochain".into()));
    }
    let module = psi.algebra().module().clone();
    BracketTable::build(&module, &psi.params(), |i, j, ctx, l| {
        let images: Vec<Poly> = psi
            .ctx()
            .slots()
            .iter()
            .map(|n| {
                if *n == psi.slots[0] {
                    Ok(l.clone())
                } else if *n == psi.slots[1] {
                    Ok(-&(l + &Poly::d(ctx)))
                } else {
                    Poly::slot(ctx, n)
                }
            })
            .collect::<Result<_>>()?;
        Ok(psi.value(&[i, j]).compose(ctx, &images, &Poly::d(ctx)))
    })
}

/// Whether `d_{-1} ψ` vanishes once the last slot is set to
/// `-l1 - l2 - d`. The exact (unreduced) value is reported as a note.
pub fn cocycle2_check(psi: &Cochain) -> CheckReport {
    let mut report = CheckReport::new("2-cocycle");
    let valid = psi.validate();
    if !valid.passed() {
        report.absorb(valid);
        report.note("not evaluated: the cochain is invalid");
        return report;
    }
    if psi.arity() != 2 {
        report.fail("arity", format!("expected 2, found {}", psi.arity()));
        return report;
    }
    let dpsi = match psi.differential_s(-1) {
        Ok(c) => c,
        Err(e) => {
            report.fail("d_-1", e.to_string());
            return report;
        }
    };
    let alg = psi.algebra();
    let ctx = dpsi.ctx().clone();
    let s = dpsi.slot_polys();
    let last = -&(&(&s[0] + &s[1]) + &Poly::d(&ctx));
    let mut exact = 0usize;
    for t in all_tuples(alg.rank(), 3) {
        let v = dpsi.value(&t);
        if !v.is_zero() {
            exact += 1;
        }
        let r = v.substitute_slot(&dpsi.slots[2], &last).expect("slot");
        report.record(alg.witness(&t), r);
    }
    report.note(format!("exact values nonzero on {exact} of {} triples", alg.rank().pow(3)));
    report
}

/// A one-parameter family `[a_l b]_t = [a_l b] + t ψ̄_l(a, b)`.
#[derive(Clone, Debug)]
pub struct DeformationFamily {
    pub base: Arc<ConformalAlgebra>,
    pub psi: Cochain,
    pub psi_bar: BracketTable,
    pub parameter: String,
    pub deformed: ConformalAlgebra,
}

impl DeformationFamily {
    /// The deformed algebra with the parameter set to `value`.
    pub fn specialize(&self, value: &Rational) -> Result<ConformalAlgebra> {
        let params = self.deformed.params();
        let keep: LambdaContext = params.without(&[self.parameter.as_str()]);
        let table = self.deformed.table();
        let t = BracketTable::build(self.deformed.module(), &keep, |i, j, ctx, l| {
            let images: Vec<Poly> = table
                .ctx()
                .slots()
                .iter()
                .map(|n| {
                    if *n == self.parameter {
                        Ok(Poly::constant(ctx, value.clone()))
                    } else if n == table.slot() {
                        Ok(l.clone())
                    } else {
                        Poly::slot(ctx, n)
                    }
                })
                .collect::<Result<_>>()?;
            Ok(table.entry(i, j).compose(ctx, &images, &Poly::d(ctx)))
        })?;
        let alpha = self.deformed.alpha().clone();
        let alpha = ModuleMap::new(
            alpha.domain(),
            alpha.codomain(),
            alpha.parity(),
            alpha
                .matrix()
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|p| {
                            let images: Vec<Poly> = p
                                .ctx()
                                .slots()
                                .iter()
                                .map(|n| {
                                    if *n == self.parameter {
                                        Ok(Poly::constant(&keep, value.clone()))
                                    } else {
                                        Poly::slot(&keep, n)
                                    }
                                })
                                .collect::<Result<_>>()?;
                            Ok(p.compose(&keep, &images, &Poly::d(&keep)))
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?,
        )?;
        ConformalAlgebra::new(alpha, t)
    }
}

/// Outcome of the two deformation conditions, plus the rotated second-order
/// form as a diagnostic that does not affect [`DeformationReport::passed`].
#[derive(Clone, Debug)]
pub struct DeformationReport {
    pub first_order: CheckReport,
    pub second_order: CheckReport,
    pub rotated: CheckReport,
}

impl DeformationReport {
    pub fn passed(&self) -> bool {
        self.first_order.passed() && self.second_order.passed()
    }
}

/// `[α(a)_l ψ̄_m(b,c)] + ψ̄_l(α(a), [b_m c]) - ε[α(b)_m ψ̄_l(a,c)]
///  - ε ψ̄_m(α(b), [a_l c]) - [ψ̄_l(a,b)_{l+m} α(c)] - ψ̄_{l+m}([a_l b], α(c))`.
#[allow(clippy::too_many_arguments)]
fn first_order_residual(
    base: &ConformalAlgebra,
    p: &BracketTable,
    a: &Element,
    b: &Element,
    c: &Element,
    eps: &Rational,
    l: &Poly,
    m: &Poly,
) -> Result<Element> {
    let al = |x: &Element| base.apply_alpha(x);
    let br = |x: &Element, y: &Element, at: &Poly| base.bracket_at(x, y, at);
    let ps = |x: &Element, y: &Element, at: &Poly| p.bracket_at(x, y, at);
    let lm = l + m;
    let lhs = &br(&al(a)?, &ps(b, c, m)?, l)? + &ps(&al(a)?, &br(b, c, m)?, l)?;
    let mid = &br(&al(b)?, &ps(a, c, l)?, m)? + &ps(&al(b)?, &br(a, c, l)?, m)?;
    let last = &br(&ps(a, b, l)?, &al(c)?, &lm)? + &ps(&br(a, b, l)?, &al(c)?, &lm)?;
    Ok(&(&lhs - &mid.scale(eps)) - &last)
}

/// `ψ̄_l(α(a), ψ̄_m(b,c)) - ε ψ̄_m(α(b), ψ̄_{-d-l}(c,a)) - ψ̄_{-d-l-m}(α(c), ψ̄_l(a,b))`.
#[allow(clippy::too_many_arguments)]
fn rotated_residual(
    alg: &ConformalAlgebra,
    a: &Element,
    b: &Element,
    c: &Element,
    eps: &Rational,
    l: &Poly,
    m: &Poly,
    nu: &Poly,
    nu_name: &str,
) -> Result<Element> {
    let d = Poly::d(nu.ctx());
    let first = alg.bracket_at(&alg.apply_alpha(a)?, &alg.bracket_at(b, c, m)?, l)?;
    let inner = alg.bracket_at(c, a, nu)?;
    let mid = alg
        .bracket_at(&alg.apply_alpha(b)?, &inner, m)?
        .substitute_slot(nu_name, &-&(&(&d + m) + l))?;
    let last = alg
        .bracket_at(&alg.apply_alpha(c)?, &alg.bracket_at(a, b, l)?, nu)?
        .substitute_slot(nu_name, &-&(&(&d + l) + m))?;
    Ok(&(&first - &mid.scale(eps)) - &last)
}

fn deformation_report(base: &ConformalAlgebra, psi_bar: &BracketTable) -> Result<DeformationReport> {
    let p_alg = ConformalAlgebra::new(base.alpha().clone(), psi_bar.clone())?;
    let base = base.with_params(&p_alg.params())?;
    let (w, s) = p_alg.work_ctx(&["l", "m", "n"]);
    let nu_name = w.slots().last().expect("slot").clone();
    let n = base.rank();
    let triples: Vec<Vec<usize>> = all_tuples(n, 3);
    let rows = triples
        .par_iter()
        .map(|t| {
            let g = |x: usize| base.generator(x, &w);
            let (a, b, c) = (g(t[0]), g(t[1]), g(t[2]));
            let (pa, pb) = (base.parity(t[0]), base.parity(t[1]));
            let eps = sign(pa.koszul(pb));
            let first = first_order_residual(&base, p_alg.table(), &a, &b, &c, &eps, &s[0], &s[1])?;
            let second = p_alg.hom_jacobi_residual(&a, &b, &c, pa, pb, &s[0], &s[1])?;
            let rotated = rotated_residual(&p_alg, &a, &b, &c, &eps, &s[0], &s[1], &s[2], &nu_name)?;
            Ok((base.witness(t), first, second, rotated))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut first_order = CheckReport::new("first-order");
    let mut second_order = CheckReport::new("second-order");
    let mut rotated = CheckReport::new("second-order-rotated");
    for (w, f, s, r) in rows {
        first_order.record(w.clone(), f);
        second_order.record(w.clone(), s);
        rotated.record(w, r);
    }
    Ok(DeformationReport { first_order, second_order, rotated })
}

/// The family `[a_l b]_t = [a_l b] + t ψ̄_l(a, b)` for an even 2-cochain
/// with values in `R_{-1}`, with the first- and second-order conditions.
pub fn deform(algebra: &Arc<ConformalAlgebra>, psi: &Cochain) -> Result<(DeformationFamily, DeformationReport)> {
    if psi.arity() != 2 || psi.parity() != Parity::Even {
        return Err(Error::Precondition("deformations need an even 2-cochain".into()));
    }
    let shifted = rep_shift(algebra, -1)?;
    let target = psi.target();
    if target.module() != algebra.module() || target.algebra().module() != algebra.module() {
        return Err(Error::Precondition("the cochain must take values in the algebra".into()));
    }
    let psi = psi.retarget(Arc::new(shifted))?;
    let valid = psi.validate();
    if !valid.passed() {
        return Err(Error::InvalidCochain(valid.to_string().trim_end().to_string()));
    }
    let psi_bar = reduced_table(&psi)?;
    let report = deformation_report(algebra, &psi_bar)?;
    let t = algebra.params().union(&psi.params()).fresh_name("t");
    let all = algebra.params().union(&psi.params()).extend([t.clone()])?;
    let base_table = algebra.table().with_params(&all)?;
    let tp = Poly::slot(&all, &t)?;
    let deformed_table = base_table.try_add(&psi_bar.with_params(&all)?.mul_param(&tp)?)?;
    let deformed = ConformalAlgebra::new(algebra.alpha().embed(&all)?, deformed_table)?;
    Ok((DeformationFamily { base: algebra.clone(), psi, psi_bar, parameter: t, deformed }, report))
}

fn check_operator(algebra: &ConformalAlgebra, f: &ModuleMap) -> Result<()> {
    if f.domain() != algebra.module() || f.codomain() != algebra.module() {
        return Err(Error::ModuleMismatch("operator must be an endomorphism of the algebra".into()));
    }
    if f.parity() != Parity::Even && !f.is_zero() {
        return Err(Error::Parity("Nijenhuis operators are even".into()));
    }
    if !f.commutes_with(algebra.alpha())? {
        return Err(Error::AlphaCommutationFailure);
    }
    Ok(())
}

/// `[a_l b]_N = [f(a)_l b] + [a_l f(b)] - f([a_l b])` as a table.
pub fn nijenhuis_table(algebra: &ConformalAlgebra, f: &ModuleMap) -> Result<BracketTable> {
    let params = algebra.params().union(f.ctx());
    let alg = algebra.with_params(&params)?;
    let f = f.embed(&params)?;
    BracketTable::build(alg.module(), &params, |i, j, ctx, l| {
        let (a, b) = (alg.generator(i, ctx), alg.generator(j, ctx));
        let one = alg.bracket_at(&f.apply(&a)?, &b, l)?;
        let two = alg.bracket_at(&a, &f.apply(&b)?, l)?;
        let three = f.apply(&alg.bracket_at(&a, &b, l)?)?;
        Ok(&(&one + &two) - &three)
    })
}

/// Residual `[f(a)_l f(b)] - f([a_l b]_N)` on generator pairs.
pub fn nijenhuis_check(algebra: &ConformalAlgebra, f: &ModuleMap) -> Result<CheckReport> {
    check_operator(algebra, f)?;
    let n_table = nijenhuis_table(algebra, f)?;
    let params = n_table.params();
    let alg = algebra.with_params(&params)?;
    let f = f.embed(&params)?;
    let (w, s) = alg.work_ctx(&["l"]);
    let mut items = Vec::new();
    for i in 0..alg.rank() {
        for j in 0..alg.rank() {
            let (a, b) = (alg.generator(i, &w), alg.generator(j, &w));
            let lhs = alg.bracket_at(&f.apply(&a)?, &f.apply(&b)?, &s[0])?;
            let rhs = f.apply(&n_table.bracket_at(&a, &b, &s[0])?)?;
            items.push((alg.witness(&[i, j]), &lhs - &rhs));
        }
    }
    Ok(CheckReport::from_residuals("nijenhuis", items))
}

/// Both sides of `T_t([a_l b]_t) = [T_t(a)_l T_t(b)]`, `T_t = id + t f`,
/// split by powers of `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateRow {
    pub witness: String,
    pub lhs: Vec<Element>,
    pub rhs: Vec<Element>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrivialityCertificate {
    pub parameter: String,
    pub rows: Vec<CertificateRow>,
}

impl TrivialityCertificate {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.lhs == r.rhs)
    }

    pub fn report(&self) -> CheckReport {
        let mut r = CheckReport::new("triviality");
        for row in &self.rows {
            for (k, (x, y)) in row.lhs.iter().zip(&row.rhs).enumerate() {
                r.record(format!("{} at {}^{k}", row.witness, self.parameter), x - y);
            }
        }
        r
    }
}

impl fmt::Display for TrivialityCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            for (k, (x, y)) in row.lhs.iter().zip(&row.rhs).enumerate() {
                writeln!(f, "({}) {}^{k}: {} | {}", row.witness, self.parameter, x, y)?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct NijenhuisDeformation {
    pub family: DeformationFamily,
    pub report: DeformationReport,
    pub certificate: TrivialityCertificate,
}

/// The deformation generated by a Nijenhuis operator together with the
/// expansion of both sides of the triviality identity.
pub fn nijenhuis_deformation(algebra: &Arc<ConformalAlgebra>, f: &ModuleMap) -> Result<NijenhuisDeformation> {
    let check = nijenhuis_check(algebra, f)?;
    if !check.passed() {
        return Err(Error::Precondition(format!("not a Nijenhuis operator: {}", check.to_string().trim_end())));
    }
    let n_table = nijenhuis_table(algebra, f)?;
    let alg = Arc::new(algebra.with_params(&n_table.params())?);
    let psi = psi_from_table(&alg, &n_table)?;
    let (family, report) = deform(&alg, &psi)?;
    let deformed = &family.deformed;
    let params = deformed.params();
    let t = Poly::slot(&params, &family.parameter)?;
    let tf = f.embed(&params)?.mul_poly(&t)?;
    let tt = ModuleMap::identity(alg.module()).embed(&params)?.try_add(&tf)?;
    let base = alg.with_params(&params)?;
    let (w, s) = deformed.work_ctx(&["l"]);
    let t_idx = w.index_of(&family.parameter).expect("parameter");
    let split = |e: &Element| -> Vec<Element> {
        (0..=2).map(|k| e.map_coeffs(|p| p.coefficient_of_slot(t_idx, k))).collect()
    };
    let mut rows = Vec::new();
    for i in 0..alg.rank() {
        for j in 0..alg.rank() {
            let (a, b) = (alg.generator(i, &w), alg.generator(j, &w));
            let lhs = tt.apply(&deformed.bracket_at(&a, &b, &s[0])?)?;
            let rhs = base.bracket_at(&tt.apply(&a)?, &tt.apply(&b)?, &s[0])?;
            let high = |e: &Element| e.coeffs().iter().any(|p| p.degree_in_slot(t_idx) > 2);
            if high(&lhs) || high(&rhs) {
                return Err(Error::invalid("triviality expansion exceeds degree two"));
            }
            rows.push(CertificateRow { witness: alg.witness(&[i, j]), lhs: split(&lhs), rhs: split(&rhs) });
        }
    }
    let certificate = TrivialityCertificate { parameter: family.parameter.clone(), rows };
    Ok(NijenhuisDeformation { family, report, certificate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::poly::rat;
    use crate::rep::adjoint;
    use rand::SeedableRng;

    fn ns() -> Arc<ConformalAlgebra> {
        Arc::new(catalog::ns_algebra())
    }

    #[test]
    fn permutations_and_tuples() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(0), vec![Vec::<usize>::new()]);
        assert_eq!(canonical_tuples(2, 2), vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(all_tuples(2, 2).len(), 4);
    }

    #[test]
    fn d_of_a_generator() {
        let a = ns();
        let ad = Arc::new(adjoint(&a));
        let g = Cochain::from_element(ad, &a.generator(0, &LambdaContext::empty())).unwrap();
        let dg = g.differential().unwrap();
        let ctx = dg.ctx().clone();
        assert_eq!(dg.value(&[0]), Element::parse("(d + 2*l1) L", a.module(), &ctx).unwrap());
        assert_eq!(dg.value(&[1]), Element::parse("((1/2)*d + (3/2)*l1) E", a.module(), &ctx).unwrap());
        assert!(dg.validate().passed());
        assert!(dg.differential().unwrap().is_zero());
    }

    #[test]
    fn swap_rule() {
        let a = ns();
        let ad = Arc::new(adjoint(&a));
        let mut c = Cochain::new(ad, 2, Parity::Even);
        let v = c.parse_value("l1 L").unwrap();
        c.set(&[0, 0], v).unwrap();
        assert!(!c.validate().passed());
        let mut c2 = Cochain::new(c.target().clone(), 2, Parity::Even);
        let v = c2.parse_value("(l1 - l2) L").unwrap();
        c2.set(&[0, 0], v).unwrap();
        assert!(c2.validate().passed());
        let mut c3 = Cochain::new(c.target().clone(), 2, Parity::Even);
        c3.set(&[0, 1], c3.parse_value("l1 E").unwrap()).unwrap();
        let derived = c3.value(&[1, 0]);
        assert_eq!(derived, c3.parse_value("-l2 E").unwrap());
        c3.set(&[1, 0], c3.parse_value("l2 E").unwrap()).unwrap();
        assert!(!c3.validate().passed());
    }

    fn d_squared(alg: Arc<ConformalAlgebra>, arity: usize, parity: Parity, seed: u64) -> bool {
        let ad = Arc::new(adjoint(&alg));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let g = Cochain::random(ad, arity, parity, 2, &mut rng).unwrap();
        assert!(g.validate().passed(), "{}", g.validate());
        let dg = g.differential().unwrap();
        assert!(dg.validate().passed(), "{}", dg.validate());
        let ddg = dg.differential().unwrap();
        assert!(ddg.is_zero(), "{ddg}");
        !dg.is_zero()
    }

    #[test]
    fn d_squared_vanishes() {
        let mut nontrivial = 0;
        for seed in 0..3 {
            for (n, p) in [(0, Parity::Even), (0, Parity::Odd), (1, Parity::Even), (1, Parity::Odd)] {
                nontrivial += d_squared(ns(), n, p, seed) as usize;
            }
        }
        assert!(nontrivial >= 8);
    }

    #[test]
    fn d_squared_twisted() {
        let h = Arc::new(crate::cur_algebra(&catalog::odd_heisenberg(int(-1), int(-1))).unwrap());
        let g = Arc::new(crate::cur_algebra(&catalog::two_dim_hom_lie(int(-1))).unwrap());
        let mut nontrivial = 0;
        for seed in 0..3 {
            for p in [Parity::Even, Parity::Odd] {
                nontrivial += d_squared(h.clone(), 1, p, seed) as usize;
                nontrivial += d_squared(g.clone(), 1, p, seed) as usize;
                nontrivial += d_squared(h.clone(), 2, p, seed) as usize;
            }
        }
        assert!(nontrivial >= 9);
    }

    #[test]
    fn bracket_is_a_cocycle() {
        let a = ns();
        let psi = psi_from_table(&a, a.table()).unwrap();
        assert!(psi.validate().passed(), "{}", psi.validate());
        let r = cocycle2_check(&psi);
        assert!(r.passed(), "{r}");
        let zero = Cochain::new(psi.target().clone(), 2, Parity::Even);
        assert!(cocycle2_check(&zero).passed());
        let back = reduced_table(&psi).unwrap();
        assert_eq!(&back, a.table());
    }

    #[test]
    fn scalar_nijenhuis() {
        let a = ns();
        let c = LambdaContext::new(["c"]).unwrap();
        let f = ModuleMap::scalar(a.module(), &c, Poly::slot(&c, "c").unwrap());
        assert!(nijenhuis_check(&a, &f).unwrap().passed());
        let out = nijenhuis_deformation(&a, &f).unwrap();
        assert!(out.report.passed(), "{}{}", out.report.first_order, out.report.second_order);
        assert!(out.certificate.passed(), "{}", out.certificate);
        for r in out.family.deformed.axiom_suite() {
            assert!(r.passed(), "{r}");
        }
        let zero = out.family.specialize(&int(0)).unwrap();
        assert_eq!(zero.table(), a.with_params(&c).unwrap().table());
        let m = ModuleMap::zero(a.module(), a.module(), Parity::Even);
        assert!(nijenhuis_deformation(&a, &m).unwrap().certificate.passed());
        let id = ModuleMap::identity(a.module());
        assert!(nijenhuis_deformation(&a, &id).unwrap().certificate.passed());
    }

    #[test]
    fn random_psi_fails() {
        let a = ns();
        let target = Arc::new(rep_shift(&a, -1).unwrap());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let psi = Cochain::random(target, 2, Parity::Even, 2, &mut rng).unwrap();
        let (_, rep) = deform(&a, &psi).unwrap();
        assert!(!rep.passed());
        let _ = rat(1, 2);
    }
}
