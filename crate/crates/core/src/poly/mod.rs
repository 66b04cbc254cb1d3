//! Exact-rational sparse polynomials in `d` (the derivation ∂) and an ordered
//! context of λ-slots.
//!
//! Every polynomial carries its [`LambdaContext`]. Arithmetic between
//! polynomials requires identical contexts; higher layers move values between
//! contexts explicitly with [`Poly::embed`] or [`Poly::compose`].

mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use parse::{parse_linear, parse_poly};

pub type Rational = BigRational;

/// Shorthand for the rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Symbol reserved for ∂ in parsed and printed polynomials.
pub const D_SYMBOL: &str = "d";

/// Ordered list of distinct λ-slot names.
#[derive(Clone, Debug)]
pub struct LambdaContext {
    slots: Arc<[String]>,
}

impl PartialEq for LambdaContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.slots, &other.slots) || self.slots == other.slots
    }
}

impl Eq for LambdaContext {}

impl std::hash::Hash for LambdaContext {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.slots.hash(state);
    }
}

impl LambdaContext {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut slots: Vec<String> = Vec::new();
        for name in names {
            let name = name.into();
            if name == D_SYMBOL || !is_identifier(&name) {
                return Err(Error::invalid(format!("`{name}` is not a valid slot name")));
            }
            if slots.contains(&name) {
                return Err(Error::SlotCollision(name));
            }
            slots.push(name);
        }
        Ok(LambdaContext { slots: slots.into() })
    }

    pub fn empty() -> Self {
        LambdaContext { slots: Arc::from(Vec::<String>::new()) }
    }

    /// `l1, …, ln`: the slot context used for n-cochain values.
    pub fn numbered(n: usize) -> Self {
        Self::new((1..=n).map(|i| format!("l{i}"))).expect("numbered slots are distinct")
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn slots(&self) -> &[String] {
        &self.slots
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.slots.iter().position(|s| s == name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }

    /// Appends new slots; fails if any name is already present.
    pub fn extend<I, S>(&self, names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self::new(self.slots.iter().cloned().chain(names.into_iter().map(Into::into)))
    }

    /// Slots of `self` followed by the slots of `other` not already present.
    pub fn union(&self, other: &LambdaContext) -> Self {
        if self == other {
            return self.clone();
        }
        let mut slots: Vec<String> = self.slots.to_vec();
        for s in other.slots.iter() {
            if !slots.contains(s) {
                slots.push(s.clone());
            }
        }
        LambdaContext { slots: slots.into() }
    }

    /// Drops the named slots (missing names are ignored).
    pub fn without(&self, names: &[&str]) -> Self {
        let slots: Vec<String> =
            self.slots.iter().filter(|s| !names.contains(&s.as_str())).cloned().collect();
        LambdaContext { slots: slots.into() }
    }

    /// A slot name starting with `base` that is not in the context.
    pub fn fresh_name(&self, base: &str) -> String {
        if !self.contains(base) {
            return base.to_string();
        }
        (0..)
            .map(|i| format!("{base}{i}"))
            .find(|n| !self.contains(n))
            .expect("unbounded search")
    }
}

impl fmt::Display for LambdaContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.slots.join(", "))
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

/// Exponent vector: one entry per slot, then the exponent of `d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Box<[u32]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars].into_boxed_slice())
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn d_exponent(&self) -> u32 {
        *self.0.last().expect("monomial has a d exponent")
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }
}

// graded lexicographic, slots in context order, d last
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    ctx: LambdaContext,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(ctx: &LambdaContext) -> Self {
        Poly { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ctx: &LambdaContext) -> Self {
        Self::constant(ctx, Rational::one())
    }

    pub fn constant(ctx: &LambdaContext, c: Rational) -> Self {
        let mut p = Self::zero(ctx);
        p.add_term(Monomial::one(ctx.len() + 1), c);
        p
    }

    pub fn from_int(ctx: &LambdaContext, n: i64) -> Self {
        Self::constant(ctx, int(n))
    }

    /// The polynomial `d`.
    pub fn d(ctx: &LambdaContext) -> Self {
        let mut e = vec![0; ctx.len() + 1];
        e[ctx.len()] = 1;
        Self::monomial(ctx, e, Rational::one())
    }

    pub fn slot(ctx: &LambdaContext, name: &str) -> Result<Self> {
        let idx = ctx.index_of(name).ok_or_else(|| Error::UnknownSlot(name.to_string()))?;
        Ok(Self::slot_at(ctx, idx))
    }

    pub fn slot_at(ctx: &LambdaContext, idx: usize) -> Self {
        assert!(idx < ctx.len(), "slot index out of range");
        let mut e = vec![0; ctx.len() + 1];
        e[idx] = 1;
        Self::monomial(ctx, e, Rational::one())
    }

    pub fn monomial(ctx: &LambdaContext, exponents: Vec<u32>, c: Rational) -> Self {
        assert_eq!(exponents.len(), ctx.len() + 1, "exponent vector length");
        let mut p = Self::zero(ctx);
        p.add_term(Monomial(exponents.into_boxed_slice()), c);
        p
    }

    pub fn parse(text: &str, ctx: &LambdaContext) -> Result<Self> {
        parse_poly(text, ctx)
    }

    pub fn ctx(&self) -> &LambdaContext {
        &self.ctx
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The value if the polynomial has no slot and no `d` dependence.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        debug_assert_eq!(m.0.len(), self.ctx.len() + 1);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_ctx(&self, other: &Poly) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch {
                left: self.ctx.to_string(),
                right: other.ctx.to_string(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check_ctx(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_ctx(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_ctx(other)?;
        let mut out = Poly::zero(&self.ctx);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ctx);
        }
        Poly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.ctx);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Highest exponent of the slot at `idx` (0 for the zero polynomial).
    pub fn degree_in_slot(&self, idx: usize) -> u32 {
        self.terms.keys().map(|m| m.0[idx]).max().unwrap_or(0)
    }

    pub fn degree_in_d(&self) -> u32 {
        self.terms.keys().map(Monomial::d_exponent).max().unwrap_or(0)
    }

    /// True when `d` does not occur.
    pub fn is_d_free(&self) -> bool {
        self.terms.keys().all(|m| m.d_exponent() == 0)
    }

    /// True when no slot occurs.
    pub fn is_slot_free(&self) -> bool {
        let n = self.ctx.len();
        self.terms.keys().all(|m| m.0[..n].iter().all(|&e| e == 0))
    }

    /// Whether the named slot occurs in some term.
    pub fn uses_slot(&self, idx: usize) -> bool {
        self.terms.keys().any(|m| m.0[idx] > 0)
    }

    /// Ring homomorphism sending slot `i` to `slot_images[i]` and `d` to
    /// `d_image`. All images must share the context `target`.
    pub fn compose(&self, target: &LambdaContext, slot_images: &[Poly], d_image: &Poly) -> Poly {
        assert_eq!(slot_images.len(), self.ctx.len(), "one image per slot");
        for img in slot_images.iter().chain(std::iter::once(d_image)) {
            assert_eq!(img.ctx(), target, "images must live in the target context");
        }
        let nvars = self.ctx.len() + 1;
        let mut powers: Vec<Vec<Poly>> = vec![vec![Poly::one(target)]; nvars];
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut acc = Poly::constant(target, c.clone());
            for (v, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let img = if v + 1 < nvars { &slot_images[v] } else { d_image };
                while powers[v].len() <= e as usize {
                    let next = powers[v].last().unwrap() * img;
                    powers[v].push(next);
                }
                acc = &acc * &powers[v][e as usize];
            }
            for (m2, c2) in acc.terms {
                out.add_term(m2, c2);
            }
        }
        out
    }

    /// Replaces one slot by `image` (a polynomial in the same context, which
    /// may involve `d`: on free modules `d` acts by multiplying coefficients).
    pub fn substitute_slot(&self, name: &str, image: &Poly) -> Result<Poly> {
        self.check_ctx(image)?;
        let idx = self.ctx.index_of(name).ok_or_else(|| Error::UnknownSlot(name.to_string()))?;
        let mut images: Vec<Poly> = (0..self.ctx.len()).map(|i| Poly::slot_at(&self.ctx, i)).collect();
        images[idx] = image.clone();
        Ok(self.compose(&self.ctx, &images, &Poly::d(&self.ctx)))
    }

    pub fn substitute_d(&self, image: &Poly) -> Poly {
        let images: Vec<Poly> = (0..self.ctx.len()).map(|i| Poly::slot_at(&self.ctx, i)).collect();
        self.compose(&self.ctx, &images, image)
    }

    /// Reinterprets the polynomial in `target`, matching slots by name. Fails
    /// if a slot that actually occurs is missing from `target`.
    pub fn embed(&self, target: &LambdaContext) -> Result<Poly> {
        if &self.ctx == target {
            return Ok(self.clone());
        }
        let n = self.ctx.len();
        let mut map = Vec::with_capacity(n);
        for (i, name) in self.ctx.slots().iter().enumerate() {
            match target.index_of(name) {
                Some(j) => map.push(Some(j)),
                None if !self.uses_slot(i) => map.push(None),
                None => return Err(Error::UnknownSlot(name.clone())),
            }
        }
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.len() + 1];
            for (i, &j) in map.iter().enumerate() {
                if let Some(j) = j {
                    e[j] = m.0[i];
                }
            }
            e[target.len()] = m.d_exponent();
            out.add_term(Monomial(e.into_boxed_slice()), c.clone());
        }
        Ok(out)
    }

    /// Coefficient of `slot^power`, as a polynomial in the same context.
    pub fn coefficient_of_slot(&self, idx: usize, power: u32) -> Poly {
        let mut out = Poly::zero(&self.ctx);
        for (m, c) in &self.terms {
            if m.0[idx] == power {
                let mut e = m.0.clone();
                e[idx] = 0;
                out.add_term(Monomial(e), c.clone());
            }
        }
        out
    }

    /// Dense list of `(exponents, coefficient)` pairs in ascending order.
    pub fn to_terms(&self) -> Vec<(Vec<u32>, Rational)> {
        self.terms.iter().map(|(m, c)| (m.0.to_vec(), c.clone())).collect()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                self.$inner(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$inner(&rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        self.check_ctx(rhs).unwrap_or_else(|e| panic!("{e}"));
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        self.check_ctx(rhs).unwrap_or_else(|e| panic!("{e}"));
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

fn fmt_monomial(m: &Monomial, ctx: &LambdaContext) -> String {
    let mut parts = Vec::new();
    let names = ctx.slots().iter().map(String::as_str).chain(std::iter::once(D_SYMBOL));
    for (name, &e) in names.zip(m.0.iter()) {
        match e {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            }
            let a = c.abs();
            let mono = fmt_monomial(m, &self.ctx);
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else if a.is_integer() {
                write!(f, "{a}*{mono}")?;
            } else {
                write!(f, "({a})*{mono}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(names: &[&str]) -> LambdaContext {
        LambdaContext::new(names.iter().copied()).unwrap()
    }

    #[test]
    fn parse_and_print_examples() {
        let c = ctx(&["l"]);
        let p = Poly::parse("d + 2*l", &c).unwrap();
        assert_eq!(p.to_string(), "d + 2*l");
        assert!(Poly::parse("0", &c).unwrap().is_zero());
        let q = Poly::parse("(1/2)*d + (3/2)*l", &c).unwrap();
        assert_eq!(q.to_string(), "(1/2)*d + (3/2)*l");
        assert_eq!(Poly::parse(&q.to_string(), &c).unwrap(), q);
    }

    #[test]
    fn ring_examples() {
        let c = ctx(&["l"]);
        let a = Poly::parse("d + 2*l", &c).unwrap();
        let b = Poly::parse("-d - 2*l", &c).unwrap();
        assert!((&a + &b).is_zero());

        // (d + l)(d + 3/2 l) = d^2 + 5/2 l d + 3/2 l^2
        let x = Poly::parse("d + l", &c).unwrap();
        let y = Poly::parse("d + (3/2)*l", &c).unwrap();
        let expected = Poly::parse("d^2 + (5/2)*l*d + (3/2)*l^2", &c).unwrap();
        assert_eq!(&x * &y, expected);
        assert_eq!((&x * &y).to_string(), "d^2 + (5/2)*l*d + (3/2)*l^2");

        let h = Poly::parse("(1/2)*d", &c).unwrap();
        assert_eq!(h.scale(&int(3)), Poly::parse("(3/2)*d", &c).unwrap());
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let a = Poly::parse("l", &ctx(&["l"])).unwrap();
        let b = Poly::parse("m", &ctx(&["m"])).unwrap();
        assert!(matches!(a.try_add(&b), Err(Error::ContextMismatch { .. })));
    }

    #[test]
    fn substitution_examples() {
        let c = ctx(&["l", "m"]);
        let shift = Poly::parse("-l - d", &c).unwrap();
        let m = Poly::parse("m", &c).unwrap();
        assert_eq!(m.substitute_slot("m", &shift).unwrap(), shift);
        let m2 = Poly::parse("m^2", &c).unwrap();
        assert_eq!(
            m2.substitute_slot("m", &shift).unwrap(),
            Poly::parse("l^2 + 2*l*d + d^2", &c).unwrap()
        );
        let r = Poly::parse("d + 2*m", &c).unwrap();
        let l = Poly::parse("l", &c).unwrap();
        assert_eq!(r.substitute_slot("m", &l).unwrap(), Poly::parse("d + 2*l", &c).unwrap());
        assert!(matches!(r.substitute_slot("q", &l), Err(Error::UnknownSlot(_))));
    }

    #[test]
    fn embed_matches_by_name() {
        let p = Poly::parse("l*d + 3", &ctx(&["l"])).unwrap();
        let big = ctx(&["t", "l", "m"]);
        let q = p.embed(&big).unwrap();
        assert_eq!(q, Poly::parse("l*d + 3", &big).unwrap());
        assert!(q.embed(&ctx(&["m"])).is_err());
        // unused slots may be dropped
        let r = Poly::parse("d", &big).unwrap();
        assert_eq!(r.embed(&LambdaContext::empty()).unwrap().to_string(), "d");
    }

    #[test]
    fn constants_and_degrees() {
        let c = ctx(&["l"]);
        let p = Poly::parse("3*l^2*d + l - 7", &c).unwrap();
        assert_eq!(p.degree_in_slot(0), 2);
        assert_eq!(p.degree_in_d(), 1);
        assert_eq!(p.coefficient_of_slot(0, 2), Poly::parse("3*d", &c).unwrap());
        assert_eq!(Poly::parse("5/3", &c).unwrap().as_constant(), Some(rat(5, 3)));
        assert_eq!(p.as_constant(), None);
    }

    #[test]
    fn fresh_names_avoid_collisions() {
        let c = ctx(&["l", "l0"]);
        assert_eq!(c.fresh_name("m"), "m");
        assert_eq!(c.fresh_name("l"), "l1");
        assert!(matches!(c.extend(["l"]), Err(Error::SlotCollision(_))));
        assert!(LambdaContext::new(["d"]).is_err());
    }
}
