//! Finite free Z/2-graded C[d]-modules, their elements and C[d]-linear maps.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{is_identifier, LambdaContext, Poly, Rational, D_SYMBOL};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(b: u8) -> Self {
        if b & 1 == 0 { Parity::Even } else { Parity::Odd }
    }

    pub fn bit(self) -> u8 {
        self as u8
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// `(-1)^(self * other)` as +1 / -1.
    pub fn koszul(self, other: Parity) -> i64 {
        if self.is_odd() && other.is_odd() { -1 } else { 1 }
    }

    pub fn name(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "even" => Some(Parity::Even),
            "odd" => Some(Parity::Odd),
            _ => None,
        }
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.bit() ^ rhs.bit())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Sign `±1` as a rational.
pub(crate) fn sign(s: i64) -> Rational {
    Rational::from_integer(s.into())
}

#[derive(Clone, Debug)]
pub struct GradedModule {
    gens: Arc<[(String, Parity)]>,
}

impl PartialEq for GradedModule {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.gens, &other.gens) || self.gens == other.gens
    }
}

impl Eq for GradedModule {}

impl std::hash::Hash for GradedModule {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.gens.hash(state);
    }
}

impl GradedModule {
    pub fn new<I, S>(gens: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, Parity)>,
        S: Into<String>,
    {
        let mut list: Vec<(String, Parity)> = Vec::new();
        for (name, p) in gens {
            let name = name.into();
            if !is_identifier(&name) || name == D_SYMBOL {
                return Err(Error::invalid(format!("`{name}` is not a valid generator name")));
            }
            if list.iter().any(|(n, _)| *n == name) {
                return Err(Error::invalid(format!("duplicate generator `{name}`")));
            }
            list.push((name, p));
        }
        Ok(GradedModule { gens: list.into() })
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.gens[i].0
    }

    pub fn names(&self) -> Vec<String> {
        self.gens.iter().map(|(n, _)| n.clone()).collect()
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.gens[i].1
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|(n, _)| n == name)
    }

    pub fn generators(&self) -> &[(String, Parity)] {
        &self.gens
    }

    /// Generators of `self` followed by those of `other`; names of `other`
    /// that collide get `suffix` appended until unique.
    pub fn direct_sum(&self, other: &GradedModule, suffix: &str) -> GradedModule {
        let mut list: Vec<(String, Parity)> = self.gens.to_vec();
        for (n, p) in other.gens.iter() {
            let mut name = n.clone();
            while list.iter().any(|(m, _)| *m == name) {
                name.push_str(suffix);
            }
            list.push((name, *p));
        }
        GradedModule { gens: list.into() }
    }
}

impl fmt::Display for GradedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|(n, p)| format!("{n}:{p}")).collect();
        f.write_str(&parts.join(" "))
    }
}

/// A C[d]-combination of generators whose coefficients are polynomials in
/// `d` and the slots of `ctx`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    module: GradedModule,
    ctx: LambdaContext,
    coeffs: Vec<Poly>,
}

impl Element {
    pub fn zero(module: &GradedModule, ctx: &LambdaContext) -> Self {
        Element { module: module.clone(), ctx: ctx.clone(), coeffs: vec![Poly::zero(ctx); module.rank()] }
    }

    pub fn generator(module: &GradedModule, ctx: &LambdaContext, i: usize) -> Self {
        Self::monomial(module, i, Poly::one(ctx))
    }

    pub fn monomial(module: &GradedModule, i: usize, coeff: Poly) -> Self {
        let mut e = Self::zero(module, coeff.ctx());
        e.coeffs[i] = coeff;
        e
    }

    pub fn from_coeffs(module: &GradedModule, ctx: &LambdaContext, coeffs: Vec<Poly>) -> Result<Self> {
        if coeffs.len() != module.rank() {
            return Err(Error::ModuleMismatch(format!(
                "expected {} coefficients, got {}",
                module.rank(),
                coeffs.len()
            )));
        }
        if let Some(bad) = coeffs.iter().find(|p| p.ctx() != ctx) {
            return Err(Error::ContextMismatch { left: ctx.to_string(), right: bad.ctx().to_string() });
        }
        Ok(Element { module: module.clone(), ctx: ctx.clone(), coeffs })
    }

    pub fn parse(text: &str, module: &GradedModule, ctx: &LambdaContext) -> Result<Self> {
        let coeffs = crate::poly::parse_linear(text, ctx, &module.names())?;
        Self::from_coeffs(module, ctx, coeffs)
    }

    pub fn module(&self) -> &GradedModule {
        &self.module
    }

    pub fn ctx(&self) -> &LambdaContext {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Poly {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }

    /// The common parity of all nonzero components; `None` for zero or
    /// inhomogeneous elements.
    pub fn parity(&self) -> Option<Parity> {
        let mut found = None;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = self.module.parity(i);
            match found {
                None => found = Some(p),
                Some(q) if q != p => return None,
                _ => {}
            }
        }
        found
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.parity().is_some()
    }

    /// Nonzero parity-homogeneous components, even part first.
    pub fn homogeneous_parts(&self) -> Vec<(Parity, Element)> {
        [Parity::Even, Parity::Odd]
            .into_iter()
            .filter_map(|p| {
                let part = self.map_coeffs_indexed(|i, c| {
                    if self.module.parity(i) == p { c.clone() } else { Poly::zero(&self.ctx) }
                });
                (!part.is_zero()).then_some((p, part))
            })
            .collect()
    }

    fn check_same(&self, other: &Element) -> Result<()> {
        if self.module != other.module {
            return Err(Error::ModuleMismatch(format!("[{}] vs [{}]", self.module, other.module)));
        }
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch { left: self.ctx.to_string(), right: other.ctx.to_string() });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        Ok(self.zip(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        Ok(self.zip(other, |a, b| a - b))
    }

    fn zip(&self, other: &Element, f: impl Fn(&Poly, &Poly) -> Poly) -> Element {
        Element {
            module: self.module.clone(),
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect(),
        }
    }

    /// Coefficient-wise transformation; the result lives in the context of
    /// the transformed coefficients.
    pub fn map_coeffs(&self, f: impl Fn(&Poly) -> Poly) -> Element {
        self.map_coeffs_indexed(|_, c| f(c))
    }

    fn map_coeffs_indexed(&self, f: impl Fn(usize, &Poly) -> Poly) -> Element {
        let coeffs: Vec<Poly> = self.coeffs.iter().enumerate().map(|(i, c)| f(i, c)).collect();
        let ctx = coeffs.first().map_or_else(|| self.ctx.clone(), |c| c.ctx().clone());
        Element { module: self.module.clone(), ctx, coeffs }
    }

    /// Multiplies every coefficient by `p` (same context).
    pub fn mul_poly(&self, p: &Poly) -> Element {
        self.map_coeffs(|c| p * c)
    }

    pub fn scale(&self, c: &Rational) -> Element {
        self.map_coeffs(|p| p.scale(c))
    }

    /// `d * self`.
    pub fn derive(&self) -> Element {
        self.mul_poly(&Poly::d(&self.ctx))
    }

    pub fn embed(&self, target: &LambdaContext) -> Result<Element> {
        if &self.ctx == target {
            return Ok(self.clone());
        }
        let coeffs = self.coeffs.iter().map(|c| c.embed(target)).collect::<Result<Vec<_>>>()?;
        Ok(Element { module: self.module.clone(), ctx: target.clone(), coeffs })
    }

    pub fn compose(&self, target: &LambdaContext, slot_images: &[Poly], d_image: &Poly) -> Element {
        let coeffs = self.coeffs.iter().map(|c| c.compose(target, slot_images, d_image)).collect();
        Element { module: self.module.clone(), ctx: target.clone(), coeffs }
    }

    pub fn substitute_slot(&self, name: &str, image: &Poly) -> Result<Element> {
        let coeffs = self.coeffs.iter().map(|c| c.substitute_slot(name, image)).collect::<Result<Vec<_>>>()?;
        Ok(Element { module: self.module.clone(), ctx: self.ctx.clone(), coeffs })
    }

    /// Embeds into a direct sum, placing the coefficients at `offset`.
    pub(crate) fn inject(&self, target: &GradedModule, offset: usize) -> Element {
        let mut out = Element::zero(target, &self.ctx);
        for (i, c) in self.coeffs.iter().enumerate() {
            out.coeffs[offset + i] = c.clone();
        }
        out
    }
}

impl Add<&Element> for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        self.try_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub<&Element> for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        self.try_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.map_coeffs(|c| -c)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "{}", self.module.name(i))?;
            } else {
                write!(f, "({c}) {}", self.module.name(i))?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// A C[d]-linear map between free modules, stored as a matrix over Q[d]
/// (rows indexed by the codomain). Entries may also involve parameter
/// slots from `ctx`, such as a formal deformation parameter.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleMap {
    domain: GradedModule,
    codomain: GradedModule,
    parity: Parity,
    ctx: LambdaContext,
    matrix: Vec<Vec<Poly>>,
}

impl ModuleMap {
    pub fn new(
        domain: &GradedModule,
        codomain: &GradedModule,
        parity: Parity,
        matrix: Vec<Vec<Poly>>,
    ) -> Result<Self> {
        let ctx = matrix
            .iter()
            .flatten()
            .next()
            .map_or_else(LambdaContext::empty, |p| p.ctx().clone());
        if matrix.len() != codomain.rank() || matrix.iter().any(|r| r.len() != domain.rank()) {
            return Err(Error::ModuleMismatch("matrix shape does not match modules".into()));
        }
        for (i, row) in matrix.iter().enumerate() {
            for (j, p) in row.iter().enumerate() {
                if p.ctx() != &ctx {
                    return Err(Error::ContextMismatch { left: ctx.to_string(), right: p.ctx().to_string() });
                }
                if !p.is_zero() && codomain.parity(i) != domain.parity(j) + parity {
                    return Err(Error::Parity(format!(
                        "entry ({}, {}) of a {parity} map",
                        codomain.name(i),
                        domain.name(j)
                    )));
                }
            }
        }
        Ok(ModuleMap { domain: domain.clone(), codomain: codomain.clone(), parity, ctx, matrix })
    }

    pub fn identity(module: &GradedModule) -> Self {
        Self::scalar(module, &LambdaContext::empty(), Poly::one(&LambdaContext::empty()))
    }

    pub fn scalar(module: &GradedModule, ctx: &LambdaContext, c: Poly) -> Self {
        let n = module.rank();
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| if i == j { c.clone() } else { Poly::zero(ctx) }).collect())
            .collect();
        ModuleMap { domain: module.clone(), codomain: module.clone(), parity: Parity::Even, ctx: ctx.clone(), matrix }
    }

    pub fn zero(domain: &GradedModule, codomain: &GradedModule, parity: Parity) -> Self {
        let ctx = LambdaContext::empty();
        let matrix = vec![vec![Poly::zero(&ctx); domain.rank()]; codomain.rank()];
        ModuleMap { domain: domain.clone(), codomain: codomain.clone(), parity, ctx, matrix }
    }

    /// Diagonal map with constant rational entries.
    pub fn diagonal(module: &GradedModule, diag: &[Rational]) -> Self {
        let ctx = LambdaContext::empty();
        let n = module.rank();
        assert_eq!(diag.len(), n);
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Poly::constant(&ctx, diag[i].clone()) } else { Poly::zero(&ctx) })
                    .collect()
            })
            .collect();
        ModuleMap { domain: module.clone(), codomain: module.clone(), parity: Parity::Even, ctx, matrix }
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

    pub fn entry(&self, row: usize, col: usize) -> &Poly {
        &self.matrix[row][col]
    }

    pub fn matrix(&self) -> &[Vec<Poly>] {
        &self.matrix
    }

    pub fn is_square(&self) -> bool {
        self.domain == self.codomain
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(Poly::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && self.matrix.iter().enumerate().all(|(i, r)| {
                r.iter().enumerate().all(|(j, p)| if i == j { p.is_one() } else { p.is_zero() })
            })
    }

    /// True when no entry involves `d` or a parameter.
    pub fn is_constant(&self) -> bool {
        self.matrix.iter().flatten().all(|p| p.as_constant().is_some())
    }

    /// Image of generator `j` as an element over `ctx`.
    pub fn column(&self, j: usize, ctx: &LambdaContext) -> Result<Element> {
        let work = ctx.union(&self.ctx);
        let coeffs = self.matrix.iter().map(|r| r[j].embed(&work)).collect::<Result<Vec<_>>>()?;
        Element::from_coeffs(&self.codomain, &work, coeffs)
    }

    /// Re-expresses the entries in a larger parameter context.
    pub fn embed(&self, target: &LambdaContext) -> Result<ModuleMap> {
        let matrix = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|p| p.embed(target)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(ModuleMap { matrix, ctx: target.clone(), ..self.clone() })
    }

    /// C[d]-linear application. The result lives in the union of the
    /// element's context and the map's parameter context.
    pub fn apply(&self, x: &Element) -> Result<Element> {
        if x.module() != &self.domain {
            return Err(Error::ModuleMismatch(format!("[{}] vs [{}]", x.module(), self.domain)));
        }
        let work = x.ctx().union(&self.ctx);
        let x = x.embed(&work)?;
        let m = self.embed(&work)?;
        let mut out = Element::zero(&self.codomain, &work);
        for (k, row) in m.matrix.iter().enumerate() {
            let mut acc = Poly::zero(&work);
            for (j, a) in row.iter().enumerate() {
                if !a.is_zero() && !x.coeff(j).is_zero() {
                    acc += &(a * x.coeff(j));
                }
            }
            out.coeffs[k] = acc;
        }
        Ok(out)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ModuleMap) -> Result<ModuleMap> {
        if other.codomain != self.domain {
            return Err(Error::ModuleMismatch("composition of incompatible maps".into()));
        }
        let work = self.ctx.union(&other.ctx);
        let a = self.embed(&work)?;
        let b = other.embed(&work)?;
        let matrix = (0..self.codomain.rank())
            .map(|i| {
                (0..other.domain.rank())
                    .map(|j| {
                        let mut acc = Poly::zero(&work);
                        for k in 0..self.domain.rank() {
                            if !a.matrix[i][k].is_zero() && !b.matrix[k][j].is_zero() {
                                acc += &(&a.matrix[i][k] * &b.matrix[k][j]);
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        Ok(ModuleMap {
            domain: other.domain.clone(),
            codomain: self.codomain.clone(),
            parity: self.parity + other.parity,
            ctx: work,
            matrix,
        })
    }

    pub fn try_add(&self, other: &ModuleMap) -> Result<ModuleMap> {
        self.combine(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &ModuleMap) -> Result<ModuleMap> {
        self.combine(other, |a, b| a - b)
    }

    fn combine(&self, other: &ModuleMap, f: impl Fn(&Poly, &Poly) -> Poly) -> Result<ModuleMap> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::ModuleMismatch("sum of maps with different modules".into()));
        }
        if self.parity != other.parity && !self.is_zero() && !other.is_zero() {
            return Err(Error::Parity("sum of maps with different parities".into()));
        }
        let parity = if self.is_zero() { other.parity } else { self.parity };
        let work = self.ctx.union(&other.ctx);
        let a = self.embed(&work)?;
        let b = other.embed(&work)?;
        let matrix = a
            .matrix
            .iter()
            .zip(&b.matrix)
            .map(|(r, s)| r.iter().zip(s).map(|(x, y)| f(x, y)).collect())
            .collect();
        Ok(ModuleMap { parity, ctx: work, matrix, ..self.clone() })
    }

    /// Multiplies every entry by `p`, which must live in the map's context
    /// or a context it embeds into.
    pub fn mul_poly(&self, p: &Poly) -> Result<ModuleMap> {
        let work = self.ctx.union(p.ctx());
        let m = self.embed(&work)?;
        let p = p.embed(&work)?;
        let matrix = m.matrix.iter().map(|r| r.iter().map(|x| &p * x).collect()).collect();
        Ok(ModuleMap { matrix, ..m })
    }

    pub fn scale(&self, c: &Rational) -> ModuleMap {
        let matrix = self.matrix.iter().map(|r| r.iter().map(|x| x.scale(c)).collect()).collect();
        ModuleMap { matrix, ..self.clone() }
    }

    /// Block-diagonal sum on `target = domain(self) ⊕ domain(other)`.
    #[allow(clippy::needless_range_loop)]
    pub fn direct_sum(&self, other: &ModuleMap, target: &GradedModule) -> Result<ModuleMap> {
        if !self.is_square() || !other.is_square() {
            return Err(Error::ModuleMismatch("direct sum needs endomorphisms".into()));
        }
        let work = self.ctx.union(&other.ctx);
        let a = self.embed(&work)?;
        let b = other.embed(&work)?;
        let n = a.domain.rank();
        let total = n + b.domain.rank();
        if target.rank() != total {
            return Err(Error::ModuleMismatch("direct sum rank".into()));
        }
        let mut matrix = vec![vec![Poly::zero(&work); total]; total];
        for i in 0..n {
            for j in 0..n {
                matrix[i][j] = a.matrix[i][j].clone();
            }
        }
        for i in 0..b.domain.rank() {
            for j in 0..b.domain.rank() {
                matrix[n + i][n + j] = b.matrix[i][j].clone();
            }
        }
        ModuleMap::new(target, target, self.parity, matrix).map(|m| ModuleMap { ctx: work, ..m })
    }

    /// Determinant over Q[d] (square maps only).
    pub fn determinant(&self) -> Result<Poly> {
        if !self.is_square() {
            return Err(Error::ModuleMismatch("determinant of a non-square map".into()));
        }
        let rows: Vec<usize> = (0..self.domain.rank()).collect();
        let cols = rows.clone();
        Ok(minor_det(&self.matrix, &rows, &cols, &self.ctx))
    }

    /// True iff the determinant is a nonzero rational constant, i.e. the map
    /// is invertible over Q[d].
    pub fn regularity_check(&self) -> bool {
        self.is_square()
            && self.parity == Parity::Even
            && self.determinant().ok().and_then(|d| d.as_constant()).is_some_and(|c| !c.is_zero())
    }

    #[allow(clippy::needless_range_loop)]
    pub fn inverse(&self) -> Result<ModuleMap> {
        let det = self.determinant()?;
        let inv_det = match det.as_constant() {
            Some(c) if !c.is_zero() => c.recip(),
            _ => return Err(Error::NotInvertible(format!("determinant is {det}"))),
        };
        let n = self.domain.rank();
        let mut matrix = vec![vec![Poly::zero(&self.ctx); n]; n];
        for i in 0..n {
            for j in 0..n {
                // adj(A)[i][j] = (-1)^(i+j) * minor(j, i)
                let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
                let m = minor_det(&self.matrix, &rows, &cols, &self.ctx);
                let s = if (i + j) % 2 == 0 { inv_det.clone() } else { -inv_det.clone() };
                matrix[i][j] = m.scale(&s);
            }
        }
        Ok(ModuleMap { matrix, ..self.clone() })
    }

    /// `self^k`; negative powers require invertibility.
    pub fn power(&self, k: i64) -> Result<ModuleMap> {
        if !self.is_square() {
            return Err(Error::ModuleMismatch("power of a non-square map".into()));
        }
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut acc = ModuleMap::identity(&self.domain).embed(&self.ctx)?;
        for _ in 0..k.unsigned_abs() {
            acc = acc.compose(&base)?;
        }
        Ok(acc)
    }

    /// Whether `self ∘ other = other ∘ self` exactly.
    pub fn commutes_with(&self, other: &ModuleMap) -> Result<bool> {
        Ok(maps_equal(&self.compose(other)?, &other.compose(self)?))
    }

    /// Smallest `n ≤ max` with `self^n = id`.
    pub fn order(&self, max: u32) -> Option<u32> {
        let mut acc = self.clone();
        for n in 1..=max {
            if acc.is_identity() {
                return Some(n);
            }
            acc = acc.compose(self).ok()?;
        }
        None
    }
}

/// Equality of matrices up to a common parameter context.
pub fn maps_equal(a: &ModuleMap, b: &ModuleMap) -> bool {
    if a.domain != b.domain || a.codomain != b.codomain {
        return false;
    }
    let work = a.ctx.union(&b.ctx);
    match (a.embed(&work), b.embed(&work)) {
        (Ok(x), Ok(y)) => x.matrix == y.matrix,
        _ => false,
    }
}

fn minor_det(m: &[Vec<Poly>], rows: &[usize], cols: &[usize], ctx: &LambdaContext) -> Poly {
    match rows.len() {
        0 => Poly::one(ctx),
        1 => m[rows[0]][cols[0]].clone(),
        _ => {
            let r0 = rows[0];
            let rest = &rows[1..];
            let mut acc = Poly::zero(ctx);
            for (k, &c) in cols.iter().enumerate() {
                if m[r0][c].is_zero() {
                    continue;
                }
                let sub: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let term = &m[r0][c] * &minor_det(m, rest, &sub, ctx);
                if k % 2 == 0 {
                    acc += &term;
                } else {
                    acc -= &term;
                }
            }
            acc
        }
    }
}

impl fmt::Display for ModuleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ctx = self.ctx.clone();
        for j in 0..self.domain.rank() {
            if j > 0 {
                f.write_str("; ")?;
            }
            let col = self.column(j, &ctx).map_err(|_| fmt::Error)?;
            write!(f, "{} -> {}", self.domain.name(j), col)?;
        }
        Ok(())
    }
}
