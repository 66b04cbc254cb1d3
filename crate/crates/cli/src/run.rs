use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use homlie_core::cohom::{cocycle2_check, deform, nijenhuis_check, nijenhuis_deformation, Cochain};
use homlie_core::deriv::{
    center_interaction_check, class_check, derivation_extension, gder_decompose, inclusion_audit, solve_class, Bounds,
    ClassBases, DerClass, DerivationCandidate,
};
use homlie_core::format::{write_algebra, write_basis, AlgebraFile};
use homlie_core::{CheckReport, Error, ModuleMap, Parity, Poly};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::Command;

pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Syntax { .. } | Error::File { .. } | Error::UnknownSlot(_) | Error::SlotCollision(_) => 2,
            _ => 3,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: 2, message: msg.into() }
}

/// A report printed one key per line: the command, a digest of every
/// input, the check blocks and an overall status.
pub struct RunReport {
    command: &'static str,
    hasher: Sha256,
    body: String,
    passed: bool,
    timings: Vec<(String, u128)>,
    timing: bool,
}

impl RunReport {
    fn new(command: &'static str, options: &str, timing: bool) -> Self {
        let mut hasher = Sha256::new();
        hasher.update(command.as_bytes());
        hasher.update([0]);
        hasher.update(options.as_bytes());
        RunReport { command, hasher, body: String::new(), passed: true, timings: Vec::new(), timing }
    }

    fn read(&mut self, path: &Path) -> Result<String, Failure> {
        let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        self.hasher.update([0]);
        self.hasher.update(text.as_bytes());
        Ok(text)
    }

    fn line(&mut self, key: &str, value: impl std::fmt::Display) {
        let _ = writeln!(self.body, "{key}: {value}");
    }

    fn check(&mut self, r: &CheckReport) {
        self.passed &= r.passed();
        self.body.push_str(&r.to_string());
    }

    fn block(&mut self, key: &str, text: &str) {
        let _ = writeln!(self.body, "{key}:");
        for l in text.lines() {
            let _ = writeln!(self.body, "  {l}");
        }
    }

    fn fail(&mut self) {
        self.passed = false;
    }

    fn time<T>(&mut self, label: &str, f: impl FnOnce() -> T) -> T {
        let t = Instant::now();
        let out = f();
        self.timings.push((label.to_string(), t.elapsed().as_millis()));
        out
    }

    pub fn render(&self) -> String {
        let digest = hex::encode(self.hasher.clone().finalize());
        let mut out = format!("command: {}\ninputs: sha256 {digest}\n{}", self.command, self.body);
        let _ = writeln!(out, "status: {}", if self.passed { "pass" } else { "fail" });
        if self.timing {
            for (k, ms) in &self.timings {
                let _ = writeln!(out, "time {k}: {ms} ms");
            }
        }
        out
    }

    pub fn exit_code(&self) -> u8 {
        if self.passed { 0 } else { 1 }
    }
}

fn load(report: &mut RunReport, file: &Path) -> Result<AlgebraFile, Failure> {
    let text = report.read(file)?;
    AlgebraFile::parse(&text).map_err(|e| Failure::from(e).located(file))
}

fn attach(report: &mut RunReport, base: &AlgebraFile, file: &Path) -> Result<AlgebraFile, Failure> {
    let text = report.read(file)?;
    base.extend(&text).map_err(|e| Failure::from(e).located(file))
}

impl Failure {
    fn located(mut self, file: &Path) -> Self {
        self.message = format!("{}: {}", file.display(), self.message);
        self
    }
}

fn parse_class(s: &str) -> Result<DerClass, Failure> {
    DerClass::parse(s).ok_or_else(|| usage(format!("unknown class `{s}` (der, gder, qder, c, qc, zder)")))
}

fn pick<'a, T>(items: &'a [T], name: Option<&str>, name_of: impl Fn(&T) -> &str, what: &str) -> Result<&'a T, Failure> {
    match name {
        Some(n) => items.iter().find(|x| name_of(x) == n).ok_or_else(|| usage(format!("no {what} named `{n}`"))),
        None => items.first().ok_or_else(|| usage(format!("no {what} in the file"))),
    }
}

pub fn dispatch(command: Command, timing: bool) -> Result<RunReport, Failure> {
    match command {
        Command::Check { file } => check(&file, timing),
        Command::D2 { file, cochains, target, trials, seed, arity, max_degree } => {
            d2(&file, cochains.as_deref(), target, trials, seed, &arity, max_degree, timing)
        }
        Command::Solve { file, class, k, deg_l, deg_d, out } => solve(&file, &class, k, Bounds::new(deg_l, deg_d), out, timing),
        Command::Verify { file, maps, class } => verify(&file, &maps, &class, timing),
        Command::Nijenhuis { file, maps, map } => nijenhuis(&file, &maps, map.as_deref(), timing),
        Command::Deform { file, cochains, cochain } => deformation(&file, &cochains, cochain.as_deref(), timing),
        Command::Extend { file, maps, map } => extend(&file, &maps, map.as_deref(), timing),
        Command::Audit { file, k, deg_l, deg_d } => audit(&file, k, Bounds::new(deg_l, deg_d), timing),
    }
}

fn check(file: &Path, timing: bool) -> Result<RunReport, Failure> {
    let mut r = RunReport::new("check", "", timing);
    let f = load(&mut r, file)?;
    r.line("generators", f.algebra.module());
    let reports = r.time("checks", || {
        let mut v = f.algebra.axiom_suite();
        v.push(f.algebra.check_regular());
        v
    });
    for c in &reports {
        r.check(c);
    }
    Ok(r)
}

#[allow(clippy::too_many_arguments)]
fn d2(
    file: &Path,
    cochains: Option<&Path>,
    target: Option<String>,
    trials: u32,
    seed: Option<u64>,
    arities: &[usize],
    max_degree: u32,
    timing: bool,
) -> Result<RunReport, Failure> {
    if trials > 0 && seed.is_none() {
        return Err(usage("--seed is required with --trials"));
    }
    if arities.is_empty() {
        return Err(usage("--arity needs at least one value"));
    }
    let options = format!("target={target:?} trials={trials} seed={seed:?} arity={arities:?} max-degree={max_degree}");
    let mut r = RunReport::new("d2", &options, timing);
    let mut f = load(&mut r, file)?;
    if let Some(c) = cochains {
        f = attach(&mut r, &f, c)?;
    }
    let target_name = target.unwrap_or_else(|| "adjoint".into());
    let tgt = resolve(&f, &target_name)?;
    r.line("target", &target_name);
    let mut max_terms = 0usize;
    let mut witness = String::new();
    let mut run = |r: &mut RunReport, label: String, c: &Cochain| -> Result<(), Failure> {
        let dd = c.differential()?.differential()?;
        let mut terms = 0;
        for (_, v) in dd.stored() {
            terms += v.coeffs().iter().map(Poly::num_terms).sum::<usize>();
        }
        if terms > max_terms {
            max_terms = terms;
            witness = label.clone();
        }
        if terms != 0 {
            r.fail();
            r.block(&format!("nonzero {label}"), &dd.to_string());
        }
        Ok(())
    };
    let start = Instant::now();
    for decl in &f.cochains {
        let c = decl.cochain.retarget(tgt.clone())?;
        r.line(&format!("cochain {}", decl.name), format!("arity {}, parity {}", c.arity(), c.parity()));
        run(&mut r, format!("cochain {}", decl.name), &c)?;
    }
    if trials > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.unwrap_or_default());
        for t in 0..trials {
            let arity = arities[t as usize % arities.len()];
            let parity = if (t / arities.len() as u32).is_multiple_of(2) { Parity::Even } else { Parity::Odd };
            let c = Cochain::random(tgt.clone(), arity, parity, max_degree, &mut rng)?;
            run(&mut r, format!("trial {t} (arity {arity}, parity {parity})"), &c)?;
        }
    }
    r.timings.push(("d2".into(), start.elapsed().as_millis()));
    r.line("cochains", f.cochains.len());
    r.line("trials", trials);
    if max_terms == 0 {
        r.line("max residual terms", 0);
    } else {
        r.line("max residual terms", format!("{max_terms} at {witness}"));
    }
    Ok(r)
}

fn resolve(f: &AlgebraFile, name: &str) -> Result<Arc<homlie_core::Representation>, Failure> {
    if name == "adjoint" {
        return Ok(Arc::new(homlie_core::adjoint(&f.algebra)));
    }
    if let Some(s) = name.strip_prefix("shift:") {
        let s: i64 = s.parse().map_err(|_| usage(format!("bad shift `{s}`")))?;
        return Ok(Arc::new(homlie_core::rep_shift(&f.algebra, s)?));
    }
    f.reps
        .iter()
        .find(|(n, _)| n == name)
        .map(|(_, rep)| rep.clone())
        .ok_or_else(|| usage(format!("unknown target `{name}`")))
}

fn solve(file: &Path, class: &str, k: u32, bounds: Bounds, out: Option<PathBuf>, timing: bool) -> Result<RunReport, Failure> {
    let options = format!("class={class} k={k} deg-l={} deg-d={}", bounds.deg_l, bounds.deg_d);
    let mut r = RunReport::new("solve", &options, timing);
    let f = load(&mut r, file)?;
    r.line("bounds", bounds);
    if class == "center" {
        let center = r.time("solve", || f.algebra.center_solve(bounds.deg_d));
        r.line("class", "center");
        r.line("dimension", center.len());
        for (i, z) in center.iter().enumerate() {
            r.line(&format!("basis {i}"), z);
        }
        return Ok(r);
    }
    let class = parse_class(class)?;
    let basis = r.time("solve", || solve_class(&f.algebra, class, k, bounds))?;
    r.line("class", class);
    r.line("k", k);
    r.line("dimension", basis.dimension());
    r.line("reverified", "yes");
    for (i, c) in basis.basis.iter().enumerate() {
        r.line(&format!("basis {i} ({})", c.parity()), &c.map);
        for (x, m) in c.companions.iter().enumerate() {
            r.line(&format!("basis {i} companion {}", x + 1), m);
        }
    }
    if let Some(path) = out {
        fs::write(&path, write_basis(&basis)).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        r.line("written", path.display());
    }
    Ok(r)
}

fn verify(file: &Path, maps: &Path, class: &str, timing: bool) -> Result<RunReport, Failure> {
    let mut r = RunReport::new("verify", &format!("class={class}"), timing);
    let f = load(&mut r, file)?;
    let f = attach(&mut r, &f, maps)?;
    let default = parse_class(class)?;
    let candidates: Vec<(String, DerivationCandidate)> = match &f.basis {
        Some(b) => b.maps.iter().map(|n| Ok((n.clone(), f.candidate(n, b.class)?))).collect::<Result<_, Error>>()?,
        None => {
            let companions: Vec<&String> = f.maps.iter().flat_map(|m| &m.companions).collect();
            f.maps
                .iter()
                .filter(|m| !companions.contains(&&m.name))
                .map(|m| Ok((m.name.clone(), f.candidate(&m.name, default)?)))
                .collect::<Result<_, Error>>()?
        }
    };
    if let Some(b) = &f.basis {
        r.line("basis", format!("{} at power {} ({})", b.class, b.k, b.bounds));
    }
    for (name, c) in candidates {
        let mut rep = class_check(&f.algebra, &c)?;
        rep.name = format!("{name} {}", rep.name);
        r.check(&rep);
    }
    Ok(r)
}

/// The λ-free map with the entries of `m`, over its parameters.
fn module_map(m: &homlie_core::ConformalMap) -> Result<ModuleMap, Failure> {
    if m.degree_in_slot() > 0 {
        return Err(Failure { code: 3, message: "the operator must not depend on the slot".into() });
    }
    let params = m.params();
    let matrix = m
        .matrix()
        .iter()
        .map(|row| row.iter().map(|p| p.embed(&params)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ModuleMap::new(m.domain(), m.codomain(), m.parity(), matrix)?.embed(&params)?)
}

/// A check block that is printed but does not affect the status.
fn diagnostic(r: &mut RunReport, c: &CheckReport) {
    let mut c = c.clone();
    c.name = format!("{} (diagnostic)", c.name);
    r.body.push_str(&c.to_string());
}

fn nijenhuis(file: &Path, maps: &Path, name: Option<&str>, timing: bool) -> Result<RunReport, Failure> {
    let mut r = RunReport::new("nijenhuis", &format!("map={name:?}"), timing);
    let f = load(&mut r, file)?;
    let f = attach(&mut r, &f, maps)?;
    let decl = pick(&f.maps, name, |m| m.name.as_str(), "map")?;
    let op = module_map(&decl.map)?;
    r.line("map", &decl.name);
    r.line("operator", &op);
    let check = r.time("check", || nijenhuis_check(&f.algebra, &op))?;
    r.check(&check);
    if !check.passed() {
        return Ok(r);
    }
    let nd = r.time("deformation", || nijenhuis_deformation(&f.algebra, &op))?;
    r.check(&cocycle2_check(&nd.family.psi));
    r.check(&nd.report.first_order);
    r.check(&nd.report.second_order);
    diagnostic(&mut r, &nd.report.rotated);
    r.check(&nd.certificate.report());
    r.line("parameter", &nd.family.parameter);
    r.block("certificate", &nd.certificate.to_string());
    Ok(r)
}

fn deformation(file: &Path, cochains: &Path, name: Option<&str>, timing: bool) -> Result<RunReport, Failure> {
    let mut r = RunReport::new("deform", &format!("cochain={name:?}"), timing);
    let f = load(&mut r, file)?;
    let f = attach(&mut r, &f, cochains)?;
    let decl = pick(&f.cochains, name, |c| c.name.as_str(), "cochain")?;
    r.line("cochain", &decl.name);
    let (family, report) = r.time("deform", || deform(&f.algebra, &decl.cochain))?;
    r.check(&cocycle2_check(&family.psi));
    r.check(&report.first_order);
    r.check(&report.second_order);
    diagnostic(&mut r, &report.rotated);
    r.line("parameter", &family.parameter);
    r.block("deformed", &write_algebra(&family.deformed));
    Ok(r)
}

fn extend(file: &Path, maps: &Path, name: Option<&str>, timing: bool) -> Result<RunReport, Failure> {
    let mut r = RunReport::new("extend", &format!("map={name:?}"), timing);
    let f = load(&mut r, file)?;
    let f = attach(&mut r, &f, maps)?;
    let decl = pick(&f.maps, name, |m| m.name.as_str(), "map")?;
    r.line("map", &decl.name);
    let der = class_check(&f.algebra, &DerivationCandidate::new(decl.map.clone(), 1, DerClass::Der))?;
    r.body.push_str(&der.to_string());
    r.line("derivation", if der.passed() { "yes" } else { "no" });
    let ext = derivation_extension(&f.algebra, &decl.map)?;
    r.block("extension", &write_algebra(&ext));
    let suite = r.time("checks", || ext.axiom_suite());
    for c in &suite {
        r.check(c);
    }
    Ok(r)
}

fn audit(file: &Path, k: u32, bounds: Bounds, timing: bool) -> Result<RunReport, Failure> {
    let options = format!("k={k} deg-l={} deg-d={}", bounds.deg_l, bounds.deg_d);
    let mut r = RunReport::new("audit", &options, timing);
    let f = load(&mut r, file)?;
    r.line("bounds", bounds);
    let bases = r.time("solve", || ClassBases::solve(&f.algebra, k, bounds))?;
    for b in bases.all() {
        r.line(&format!("dimension {}", b.class), b.dimension());
    }
    for c in r.time("audit", || inclusion_audit(&f.algebra, &bases))? {
        r.check(&c);
    }
    let mut dec = CheckReport::new("gder-decomposition");
    for (i, g) in bases.gder.basis.iter().enumerate() {
        match gder_decompose(&f.algebra, g) {
            Ok((q, c)) => {
                if !q.map.try_add(&c.map)?.same_as(&g.map) {
                    dec.fail(format!("gder {i}"), "parts do not sum to the map");
                }
            }
            Err(e) => dec.fail(format!("gder {i}"), e.to_string()),
        }
    }
    r.check(&dec);
    let ci = r.time("center", || center_interaction_check(&f.algebra, &bases.centroid, &bases.quasi_centroid))?;
    r.check(&ci.check);
    diagnostic(&mut r, &ci.qc_closure);
    r.line("qc-qc commutators vanish", if ci.qc_commutators_vanish() { "yes" } else { "no" });
    for (i, j) in &ci.nonvanishing_qc {
        r.line("nonzero qc-qc commutator", format!("qc {i}, qc {j}"));
    }
    Ok(r)
}
