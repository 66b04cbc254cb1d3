//! The sectioned text format for algebras, representations, cochains, maps
//! and solver bases.
//!
//! ```text
//! [params]
//! c
//!
//! [generators]
//! L:even E:odd
//!
//! [alpha]
//! L = "L"
//!
//! [bracket]
//! L L = "(d + 2*l) L"
//! L E = "(d + (3/2)*l) E"
//!
//! [map f]
//! parity = even
//! L = "c L"
//! E = "c E"
//! ```
//!
//! Missing alpha images are the identity. A missing bracket entry is
//! derived from its transpose by skew-symmetry when that is given, and is
//! zero otherwise. `#` starts a comment.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::algebra::{BracketTable, ConformalAlgebra};
use crate::cohom::Cochain;
use crate::deriv::{Bounds, DerClass, DerivationCandidate, SolutionBasis};
use crate::error::{Error, Result};
use crate::freemod::{sign, Element, GradedModule, ModuleMap, Parity};
use crate::poly::{LambdaContext, Poly};
use crate::rep::{adjoint, rep_shift, ConformalMap, Representation};

/// Is `name` one of the reserved slot names `d`, `l`, `l1`, `l2`, ...,
/// `m`, `t`?
pub fn is_reserved(name: &str) -> bool {
    matches!(name, "d" | "l" | "m" | "t")
        || (name.len() > 1 && name.starts_with('l') && name[1..].chars().all(|c| c.is_ascii_digit()))
}

#[derive(Clone, Debug)]
struct Entry {
    line: usize,
    key: Vec<String>,
    key_col: usize,
    value: String,
    value_col: usize,
}

#[derive(Clone, Debug)]
struct Section {
    line: usize,
    kind: String,
    name: Option<String>,
    entries: Vec<Entry>,
    // bare lines, as (line, column, token)
    words: Vec<(usize, usize, String)>,
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::File { line, col, msg: msg.into() }
}

/// Rebases an error from parsing a value at `(line, col)` onto the file.
fn at(line: usize, col: usize, e: Error) -> Error {
    match e {
        Error::Syntax { col: c, msg } => err(line, col + c, msg),
        Error::File { .. } => e,
        other => err(line, col, other.to_string()),
    }
}

fn strip_comment(line: &str) -> &str {
    let mut quoted = false;
    for (i, c) in line.char_indices() {
        match c {
            '"' => quoted = !quoted,
            '#' if !quoted => return &line[..i],
            _ => {}
        }
    }
    line
}

fn columns(text: &str) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, text[s..i].to_string()));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, text[s..].to_string()));
    }
    out
}

fn lex(text: &str) -> Result<Vec<Section>> {
    let mut sections: Vec<Section> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let body = strip_comment(raw);
        let trimmed = body.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = body.len() - body.trim_start().len();
        if trimmed.starts_with('[') {
            if !trimmed.ends_with(']') {
                return Err(err(line, indent + 1, "unterminated section header"));
            }
            let inner: Vec<&str> = trimmed[1..trimmed.len() - 1].split_whitespace().collect();
            let (kind, name) = match inner.as_slice() {
                [k] => (k.to_string(), None),
                [k, nm] => (k.to_string(), Some(nm.to_string())),
                _ => return Err(err(line, indent + 1, "malformed section header")),
            };
            let named = matches!(kind.as_str(), "rep" | "cochain" | "map");
            let known = named || matches!(kind.as_str(), "params" | "generators" | "alpha" | "bracket" | "basis");
            if !known {
                return Err(err(line, indent + 2, format!("unknown section `{kind}`")));
            }
            if named != name.is_some() {
                return Err(err(line, indent + 2, format!("section `{kind}` {} a name", if named { "needs" } else { "takes no" })));
            }
            sections.push(Section { line, kind, name, entries: Vec::new(), words: Vec::new() });
            continue;
        }
        let section = sections.last_mut().ok_or_else(|| err(line, indent + 1, "entry outside a section"))?;
        match body.find('=') {
            Some(eq) if !body[..eq].contains('"') => {
                let key_cols = columns(&body[..eq]);
                if key_cols.is_empty() {
                    return Err(err(line, eq + 1, "missing key"));
                }
                let rest = &body[eq + 1..];
                let lead = rest.len() - rest.trim_start().len();
                let v = rest.trim();
                let mut value_col = eq + 2 + lead;
                let value = if let Some(q) = v.strip_prefix('"') {
                    let close = q.find('"').ok_or_else(|| err(line, value_col, "unterminated string"))?;
                    if !q[close + 1..].trim().is_empty() {
                        return Err(err(line, value_col + close + 2, "trailing characters after string"));
                    }
                    value_col += 1;
                    q[..close].to_string()
                } else {
                    if v.is_empty() || v.contains(char::is_whitespace) {
                        return Err(err(line, value_col, "expected a quoted string or a single word"));
                    }
                    v.to_string()
                };
                section.entries.push(Entry {
                    line,
                    key_col: key_cols[0].0,
                    key: key_cols.into_iter().map(|(_, k)| k).collect(),
                    value,
                    value_col,
                });
            }
            _ => {
                for (c, w) in columns(body) {
                    section.words.push((line, c, w));
                }
            }
        }
    }
    Ok(sections)
}

/// A conformal endomorphism of the algebra read from a `[map]` section.
#[derive(Clone, Debug)]
pub struct MapDecl {
    pub name: String,
    pub map: ConformalMap,
    pub k: u32,
    pub class: Option<DerClass>,
    pub companions: Vec<String>,
}

/// A named cochain and the target it was declared with.
#[derive(Clone, Debug)]
pub struct CochainDecl {
    pub name: String,
    pub target: String,
    pub cochain: Cochain,
}

/// The `[basis]` header of a solver output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisDecl {
    pub class: DerClass,
    pub k: u32,
    pub bounds: Bounds,
    pub maps: Vec<String>,
}

/// Everything read from one or more input files sharing an algebra.
#[derive(Clone, Debug)]
pub struct AlgebraFile {
    pub algebra: Arc<ConformalAlgebra>,
    pub reps: Vec<(String, Arc<Representation>)>,
    pub cochains: Vec<CochainDecl>,
    pub maps: Vec<MapDecl>,
    pub basis: Option<BasisDecl>,
}

struct Loader<'a> {
    sections: &'a [Section],
}

impl<'a> Loader<'a> {
    fn of(&self, kind: &str) -> impl Iterator<Item = &'a Section> + '_ {
        let kind = kind.to_string();
        self.sections.iter().filter(move |s| s.kind == kind)
    }

    fn single(&self, kind: &str) -> Result<Option<&'a Section>> {
        let mut it = self.of(kind);
        let first = it.next();
        if let Some(dup) = it.next() {
            return Err(err(dup.line, 2, format!("duplicate section `{kind}`")));
        }
        Ok(first)
    }

    fn params(&self) -> Result<Vec<String>> {
        let mut out = Vec::new();
        for s in self.of("params") {
            if let Some(e) = s.entries.first() {
                return Err(err(e.line, e.key_col, format!("unknown key `{}`", e.key.join(" "))));
            }
            for (line, col, w) in &s.words {
                if is_reserved(w) || !w.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                    return Err(err(*line, *col, format!("`{w}` cannot be a parameter name")));
                }
                if !out.contains(w) {
                    out.push(w.clone());
                }
            }
        }
        Ok(out)
    }
}

fn parse_parity(e: &Entry) -> Result<Parity> {
    Parity::parse(&e.value).ok_or_else(|| err(e.line, e.value_col, format!("unknown parity `{}`", e.value)))
}

fn parse_module(line: usize, words: &[(usize, String)]) -> Result<GradedModule> {
    let mut gens = Vec::new();
    for (col, w) in words {
        let (name, p) = w.split_once(':').ok_or_else(|| err(line, *col, format!("expected NAME:parity, found `{w}`")))?;
        let parity = Parity::parse(p).ok_or_else(|| err(line, col + name.len() + 1, format!("unknown parity `{p}`")))?;
        if is_reserved(name) || name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(err(line, *col, format!("`{name}` cannot be a generator name")));
        }
        gens.push((name.to_string(), parity));
    }
    if gens.is_empty() {
        return Err(err(line, 1, "no generators"));
    }
    GradedModule::new(gens).map_err(|e| err(line, 1, e.to_string()))
}

fn generator_index(module: &GradedModule, e: &Entry, pos: usize) -> Result<usize> {
    let name = &e.key[pos];
    module.index_of(name).ok_or_else(|| err(e.line, e.key_col, format!("unknown generator `{name}`")))
}

fn element(e: &Entry, module: &GradedModule, ctx: &LambdaContext) -> Result<Element> {
    Element::parse(&e.value, module, ctx).map_err(|x| at(e.line, e.value_col, x))
}

fn unknown_key(e: &Entry) -> Error {
    err(e.line, e.key_col, format!("unknown key `{}`", e.key.join(" ")))
}

fn no_words(s: &Section) -> Result<()> {
    match s.words.first() {
        Some((line, col, w)) => Err(err(*line, *col, format!("unexpected `{w}`"))),
        None => Ok(()),
    }
}

fn load_algebra(l: &Loader, params: &LambdaContext) -> Result<ConformalAlgebra> {
    let gens = l.single("generators")?.ok_or_else(|| err(1, 1, "missing [generators] section"))?;
    if let Some(e) = gens.entries.first() {
        return Err(unknown_key(e));
    }
    let words: Vec<(usize, String)> = gens.words.iter().map(|(_, c, w)| (*c, w.clone())).collect();
    let module = parse_module(gens.line, &words).map_err(|e| match e {
        Error::File { col, msg, .. } => {
            let line = gens.words.iter().find(|(_, c, _)| *c == col).map_or(gens.line, |w| w.0);
            err(line, col, msg)
        }
        other => other,
    })?;
    let n = module.rank();
    let mut alpha: Vec<Vec<Poly>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { Poly::one(params) } else { Poly::zero(params) }).collect()).collect();
    if let Some(s) = l.single("alpha")? {
        no_words(s)?;
        let mut seen = vec![false; n];
        for e in &s.entries {
            if e.key.len() != 1 {
                return Err(unknown_key(e));
            }
            let j = generator_index(&module, e, 0)?;
            if std::mem::replace(&mut seen[j], true) {
                return Err(err(e.line, e.key_col, "duplicate entry"));
            }
            let v = element(e, &module, params)?;
            for (k, row) in alpha.iter_mut().enumerate() {
                row[j] = v.coeff(k).clone();
            }
        }
    }
    let alpha = ModuleMap::new(&module, &module, Parity::Even, alpha)?.embed(params)?;
    let mut table = BracketTable::zero(&module, params);
    let ctx = table.ctx().clone();
    let slot = table.slot().to_string();
    let mut given: BTreeMap<(usize, usize), Element> = BTreeMap::new();
    if let Some(s) = l.single("bracket")? {
        no_words(s)?;
        for e in &s.entries {
            if e.key.len() != 2 {
                return Err(unknown_key(e));
            }
            let (i, j) = (generator_index(&module, e, 0)?, generator_index(&module, e, 1)?);
            if given.insert((i, j), element(e, &module, &ctx)?).is_some() {
                return Err(err(e.line, e.key_col, "duplicate entry"));
            }
        }
    }
    let l_poly = Poly::slot(&ctx, &slot)?;
    let flipped = -&(&l_poly + &Poly::d(&ctx));
    for i in 0..n {
        for j in 0..n {
            let v = match (given.get(&(i, j)), given.get(&(j, i))) {
                (Some(v), _) => v.clone(),
                (None, Some(t)) => {
                    let eps = sign(module.parity(i).koszul(module.parity(j)));
                    t.substitute_slot(&slot, &flipped)?.scale(&-eps)
                }
                (None, None) => continue,
            };
            table.set_entry(i, j, v)?;
        }
    }
    ConformalAlgebra::new(alpha, table)
}

fn load_rep(s: &Section, alg: &Arc<ConformalAlgebra>, params: &LambdaContext) -> Result<Representation> {
    no_words(s)?;
    let gens = s
        .entries
        .iter()
        .find(|e| e.key == ["generators"])
        .ok_or_else(|| err(s.line, 1, "representation needs `generators`"))?;
    let words: Vec<(usize, String)> = columns(&gens.value).into_iter().map(|(c, w)| (gens.value_col + c - 1, w)).collect();
    let module = parse_module(gens.line, &words)?;
    let n = module.rank();
    let mut beta: Vec<Vec<Poly>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { Poly::one(params) } else { Poly::zero(params) }).collect()).collect();
    let zero = ConformalMap::zero(&module, &module, Parity::Even, params);
    let ctx = zero.ctx().clone();
    let mut acts: Vec<Vec<Option<Element>>> = vec![vec![None; n]; alg.rank()];
    for e in &s.entries {
        match e.key.first().map(String::as_str) {
            Some("generators") if e.key.len() == 1 => {}
            Some("beta") if e.key.len() == 2 => {
                let j = generator_index(&module, e, 1)?;
                let v = element(e, &module, params)?;
                for (k, row) in beta.iter_mut().enumerate() {
                    row[j] = v.coeff(k).clone();
                }
            }
            Some("act") if e.key.len() == 3 => {
                let i = generator_index(alg.module(), e, 1)?;
                let j = generator_index(&module, e, 2)?;
                acts[i][j] = Some(element(e, &module, &ctx)?);
            }
            _ => return Err(unknown_key(e)),
        }
    }
    let beta = ModuleMap::new(&module, &module, Parity::Even, beta)?.embed(params)?;
    let rho = acts
        .iter()
        .enumerate()
        .map(|(i, cols)| {
            ConformalMap::from_columns(&module, &module, alg.parity(i), params, |j, c, _| match &cols[j] {
                Some(v) => v.embed(c),
                None => Ok(Element::zero(&module, c)),
            })
        })
        .collect::<Result<Vec<_>>>()
        .map_err(|e| at(s.line, 1, e))?;
    Representation::new(alg.clone(), beta, rho).map_err(|e| at(s.line, 1, e))
}

fn resolve_target(
    name: &str,
    alg: &Arc<ConformalAlgebra>,
    reps: &[(String, Arc<Representation>)],
) -> Result<Arc<Representation>> {
    if name == "adjoint" {
        return Ok(Arc::new(adjoint(alg)));
    }
    if let Some(s) = name.strip_prefix("shift:") {
        let s: i64 = s.parse().map_err(|_| Error::invalid(format!("bad shift `{s}`")))?;
        return Ok(Arc::new(rep_shift(alg, s)?));
    }
    reps.iter()
        .find(|(n, _)| n == name)
        .map(|(_, r)| r.clone())
        .ok_or_else(|| Error::invalid(format!("unknown target `{name}`")))
}

fn load_cochain(
    s: &Section,
    alg: &Arc<ConformalAlgebra>,
    reps: &[(String, Arc<Representation>)],
) -> Result<CochainDecl> {
    no_words(s)?;
    let mut arity = None;
    let mut parity = Parity::Even;
    let mut target = "adjoint".to_string();
    let mut values = Vec::new();
    for e in &s.entries {
        match e.key.as_slice() {
            [k] if k == "arity" => {
                arity = Some(e.value.parse::<usize>().map_err(|_| err(e.line, e.value_col, "arity must be a number"))?)
            }
            [k] if k == "parity" => parity = parse_parity(e)?,
            [k] if k == "target" => target = e.value.clone(),
            _ => values.push(e),
        }
    }
    let arity = arity.ok_or_else(|| err(s.line, 1, "cochain needs `arity`"))?;
    let tgt = resolve_target(&target, alg, reps).map_err(|e| at(s.line, 1, e))?;
    let mut c = Cochain::new(tgt, arity, parity).with_params(&alg.params())?;
    for e in values {
        let tuple: Vec<usize> = if arity == 0 {
            if e.key != ["value"] {
                return Err(unknown_key(e));
            }
            Vec::new()
        } else {
            if e.key.len() != arity {
                return Err(unknown_key(e));
            }
            (0..arity).map(|p| generator_index(alg.module(), e, p)).collect::<Result<_>>()?
        };
        let v = c.parse_value(&e.value).map_err(|x| at(e.line, e.value_col, x))?;
        c.set(&tuple, v).map_err(|x| at(e.line, e.value_col, x))?;
    }
    Ok(CochainDecl { name: s.name.clone().unwrap_or_default(), target, cochain: c })
}

fn load_map(s: &Section, alg: &ConformalAlgebra, params: &LambdaContext) -> Result<MapDecl> {
    no_words(s)?;
    let module = alg.module();
    let mut parity = Parity::Even;
    let mut k = 0;
    let mut class = None;
    let mut companions = Vec::new();
    let zero = ConformalMap::zero(module, module, Parity::Even, params);
    let ctx = zero.ctx().clone();
    let mut cols: Vec<Option<Element>> = vec![None; module.rank()];
    for e in &s.entries {
        match e.key.as_slice() {
            [x] if x == "parity" => parity = parse_parity(e)?,
            [x] if x == "k" => k = e.value.parse().map_err(|_| err(e.line, e.value_col, "k must be a number"))?,
            [x] if x == "class" => {
                class = Some(
                    DerClass::parse(&e.value).ok_or_else(|| err(e.line, e.value_col, format!("unknown class `{}`", e.value)))?,
                )
            }
            [x] if x == "companions" => companions = e.value.split_whitespace().map(str::to_string).collect(),
            [g] if module.index_of(g).is_some() => {
                let j = generator_index(module, e, 0)?;
                if cols[j].replace(element(e, module, &ctx)?).is_some() {
                    return Err(err(e.line, e.key_col, "duplicate entry"));
                }
            }
            _ => return Err(unknown_key(e)),
        }
    }
    let map = ConformalMap::from_columns(module, module, parity, params, |j, c, _| match &cols[j] {
        Some(v) => v.embed(c),
        None => Ok(Element::zero(module, c)),
    })
    .map_err(|e| at(s.line, 1, e))?;
    Ok(MapDecl { name: s.name.clone().unwrap_or_default(), map, k, class, companions })
}

fn load_basis(s: &Section) -> Result<BasisDecl> {
    no_words(s)?;
    let (mut class, mut k, mut dl, mut dd, mut maps) = (None, 0, None, None, Vec::new());
    for e in &s.entries {
        let num = || e.value.parse::<u32>().map_err(|_| err(e.line, e.value_col, "expected a number"));
        match e.key.as_slice() {
            [x] if x == "class" => class = DerClass::parse(&e.value),
            [x] if x == "k" => k = num()?,
            [x] if x == "deg_l" => dl = Some(num()?),
            [x] if x == "deg_d" => dd = Some(num()?),
            [x] if x == "maps" => maps = e.value.split_whitespace().map(str::to_string).collect(),
            _ => return Err(unknown_key(e)),
        }
    }
    match (class, dl, dd) {
        (Some(class), Some(deg_l), Some(deg_d)) => Ok(BasisDecl { class, k, bounds: Bounds { deg_l, deg_d }, maps }),
        _ => Err(err(s.line, 1, "basis needs class, deg_l and deg_d")),
    }
}

impl AlgebraFile {
    /// Reads a file that declares the algebra.
    pub fn parse(text: &str) -> Result<Self> {
        let sections = lex(text)?;
        let l = Loader { sections: &sections };
        let params = LambdaContext::new(l.params()?)?;
        let algebra = Arc::new(load_algebra(&l, &params)?);
        let base = AlgebraFile { algebra, reps: Vec::new(), cochains: Vec::new(), maps: Vec::new(), basis: None };
        base.attach(&sections)
    }

    /// Reads a file of representations, cochains, maps or a basis over the
    /// algebra already loaded. Parameters it declares are adjoined.
    pub fn extend(&self, text: &str) -> Result<Self> {
        let sections = lex(text)?;
        for kind in ["generators", "alpha", "bracket"] {
            if let Some(s) = sections.iter().find(|s| s.kind == kind) {
                return Err(err(s.line, 2, format!("section `{kind}` belongs in the algebra file")));
            }
        }
        self.attach(&sections)
    }

    fn attach(&self, sections: &[Section]) -> Result<Self> {
        let l = Loader { sections };
        let extra = LambdaContext::new(l.params()?)?;
        let params = self.algebra.params().union(&extra);
        let mut out = self.clone();
        if params != self.algebra.params() {
            out.algebra = Arc::new(self.algebra.with_params(&params)?);
        }
        let alg = out.algebra.clone();
        for s in l.of("rep") {
            let r = Arc::new(load_rep(s, &alg, &params)?);
            out.reps.push((s.name.clone().unwrap_or_default(), r));
        }
        for s in l.of("cochain") {
            let c = load_cochain(s, &alg, &out.reps)?;
            out.cochains.push(c);
        }
        for s in l.of("map") {
            out.maps.push(load_map(s, &alg, &params)?);
        }
        if let Some(s) = l.single("basis")? {
            out.basis = Some(load_basis(s)?);
        }
        Ok(out)
    }

    pub fn map(&self, name: &str) -> Option<&MapDecl> {
        self.maps.iter().find(|m| m.name == name)
    }

    /// The candidate named `name`, with its companions resolved.
    pub fn candidate(&self, name: &str, default_class: DerClass) -> Result<DerivationCandidate> {
        let m = self.map(name).ok_or_else(|| Error::invalid(format!("no map named `{name}`")))?;
        let companions = m
            .companions
            .iter()
            .map(|c| self.map(c).map(|d| d.map.clone()).ok_or_else(|| Error::invalid(format!("no map named `{c}`"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(DerivationCandidate::new(m.map.clone(), m.k, m.class.unwrap_or(default_class)).with_companions(companions))
    }

    /// The basis declared by a `[basis]` section.
    pub fn solution_basis(&self) -> Result<SolutionBasis> {
        let b = self.basis.as_ref().ok_or_else(|| Error::invalid("no [basis] section"))?;
        let basis = b.maps.iter().map(|n| self.candidate(n, b.class)).collect::<Result<Vec<_>>>()?;
        Ok(SolutionBasis { class: b.class, k: b.k, bounds: b.bounds, basis })
    }
}

fn quoted(e: &Element) -> String {
    if e.is_zero() { "\"0\"".to_string() } else { format!("\"{e}\"") }
}

fn write_params(out: &mut String, params: &LambdaContext) {
    if !params.is_empty() {
        let _ = writeln!(out, "[params]\n{}\n", params.slots().join(" "));
    }
}

/// Text of an algebra in the file format; parses back to an equal algebra.
pub fn write_algebra(alg: &ConformalAlgebra) -> String {
    let mut out = String::new();
    write_params(&mut out, &alg.params());
    let _ = writeln!(out, "[generators]\n{}\n", alg.module());
    let _ = writeln!(out, "[alpha]");
    let params = alg.params();
    for j in 0..alg.rank() {
        let col = alg.alpha().column(j, &params).expect("alpha column");
        let _ = writeln!(out, "{} = {}", alg.module().name(j), quoted(&col));
    }
    let _ = writeln!(out, "\n[bracket]");
    let t = alg.table();
    let slot = t.slot().to_string();
    let ctx = t.ctx().clone();
    let plain = params.extend(["l"]).expect("reserved slot");
    for i in 0..alg.rank() {
        for j in 0..alg.rank() {
            let e = t.entry(i, j);
            let l = Poly::slot(&plain, "l").expect("slot");
            let images: Vec<Poly> = ctx
                .slots()
                .iter()
                .map(|s| if *s == slot { l.clone() } else { Poly::slot(&plain, s).expect("param") })
                .collect();
            let e = e.compose(&plain, &images, &Poly::d(&plain));
            let _ = writeln!(out, "{} {} = {}", alg.module().name(i), alg.module().name(j), quoted(&e));
        }
    }
    out
}

fn map_columns(m: &ConformalMap) -> Vec<Element> {
    let plain = m.params().extend(["l"]).expect("reserved slot");
    let images: Vec<Poly> = m
        .ctx()
        .slots()
        .iter()
        .map(|s| Poly::slot(&plain, if s == m.slot() { "l" } else { s }).expect("slot"))
        .collect();
    (0..m.domain().rank()).map(|j| m.column(j).compose(&plain, &images, &Poly::d(&plain))).collect()
}

/// A `[map NAME]` section.
pub fn write_map(name: &str, m: &ConformalMap, k: u32, class: Option<DerClass>, companions: &[String]) -> String {
    let mut out = format!("[map {name}]\nparity = {}\nk = {k}\n", m.parity());
    if let Some(c) = class {
        let _ = writeln!(out, "class = {c}");
    }
    if !companions.is_empty() {
        let _ = writeln!(out, "companions = \"{}\"", companions.join(" "));
    }
    for (j, col) in map_columns(m).iter().enumerate() {
        let _ = writeln!(out, "{} = {}", m.domain().name(j), quoted(col));
    }
    out
}

/// A basis file: a `[basis]` header followed by one `[map]` section per
/// basis element and per companion.
pub fn write_basis(basis: &SolutionBasis) -> String {
    let names: Vec<String> = (0..basis.dimension()).map(|i| format!("b{i}")).collect();
    let mut out = format!(
        "[basis]\nclass = {}\nk = {}\ndeg_l = {}\ndeg_d = {}\nmaps = \"{}\"\n",
        basis.class,
        basis.k,
        basis.bounds.deg_l,
        basis.bounds.deg_d,
        names.join(" ")
    );
    for (c, name) in basis.basis.iter().zip(&names) {
        let comp: Vec<String> = (1..=c.companions.len()).map(|x| format!("{name}_{x}")).collect();
        out.push('\n');
        out.push_str(&write_map(name, &c.map, c.k, Some(c.class), &comp));
        for (m, cn) in c.companions.iter().zip(&comp) {
            out.push('\n');
            out.push_str(&write_map(cn, m, c.k, None, &[]));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    const NS: &str = "\
# the L/E algebra
[generators]
L:even E:odd

[bracket]
L L = \"(d + 2*l) L\"
L E = \"(d + (3/2)*l) E\"
";

    #[test]
    fn parses_with_defaults() {
        let f = AlgebraFile::parse(NS).unwrap();
        let ns = catalog::ns_algebra();
        assert_eq!(f.algebra.table(), ns.table());
        assert_eq!(f.algebra.alpha(), ns.alpha());
    }

    #[test]
    fn round_trip() {
        let ns = catalog::ns_algebra();
        let back = AlgebraFile::parse(&write_algebra(&ns)).unwrap();
        assert_eq!(back.algebra.table(), ns.table());
        let h = crate::cur_algebra(&catalog::odd_heisenberg(crate::poly::int(-1), crate::poly::int(2))).unwrap();
        let back = AlgebraFile::parse(&write_algebra(&h)).unwrap();
        assert_eq!(back.algebra.table(), h.table());
        assert_eq!(back.algebra.alpha(), h.alpha());
    }

    #[test]
    fn errors_carry_positions() {
        let e = AlgebraFile::parse("[generators]\nL:even\n[bracket]\nL L = \"(d + 2*q) L\"\n").unwrap_err();
        assert!(matches!(e, Error::File { line: 4, .. }), "{e}");
        let e = AlgebraFile::parse("[generators]\nL:even\n[alpha]\nfoo = \"L\"\n").unwrap_err();
        assert_eq!(e, err(4, 1, "unknown generator `foo`"));
        let e = AlgebraFile::parse("[generators]\n").unwrap_err();
        assert!(matches!(e, Error::File { line: 1, .. }));
        let e = AlgebraFile::parse("[generators]\nL:even\n[stuff]\n").unwrap_err();
        assert!(matches!(e, Error::File { line: 3, col: 2, .. }));
        let e = AlgebraFile::parse("[generators]\nL:even\n[map f]\nwhat = even\n").unwrap_err();
        assert_eq!(e, err(4, 1, "unknown key `what`"));
    }

    #[test]
    fn maps_and_cochains() {
        let f = AlgebraFile::parse(NS).unwrap();
        let g = f
            .extend(
                "[params]\nc\n[map f]\nL = \"c L\"\nE = \"c E\"\n\
                 [map ad]\nk = 1\nL = \"(d + 2*l) L\"\nE = \"(d + (3/2)*l) E\"\n\
                 [cochain g]\narity = 0\nvalue = \"L\"\n\
                 [cochain h]\narity = 1\nparity = odd\nL = \"E\"\n",
            )
            .unwrap();
        assert_eq!(g.algebra.params().slots(), ["c"]);
        assert_eq!(g.maps.len(), 2);
        let text = write_map("ad", &g.maps[1].map, 1, Some(DerClass::Der), &[]);
        let h = f.extend(&text).unwrap();
        assert!(h.maps[0].map.same_as(&g.maps[1].map));
        assert!(crate::deriv::class_check(&f.algebra, &h.candidate("ad", DerClass::Der).unwrap()).unwrap().passed());
        assert_eq!(g.cochains[1].cochain.parity(), Parity::Odd);
    }

    #[test]
    fn skew_completion() {
        let f = AlgebraFile::parse(NS).unwrap();
        assert!(f.algebra.check_skew().passed());
    }
}
