use std::fmt;

use crate::freemod::Element;

/// A failed instance of an identity: the inputs that witness it and the
/// nonzero difference of the two sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residual {
    pub witness: String,
    pub detail: String,
    pub element: Option<Element>,
}

impl Residual {
    pub fn element(witness: impl Into<String>, value: Element) -> Self {
        Residual { witness: witness.into(), detail: value.to_string(), element: Some(value) }
    }

    pub fn message(witness: impl Into<String>, detail: impl Into<String>) -> Self {
        Residual { witness: witness.into(), detail: detail.into(), element: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

/// Outcome of one identity checked over all generator tuples. The status is
/// `Pass` exactly when no residual was recorded. Entries that could not be
/// decided (for instance because they leave a truncation window) are listed
/// separately and do not affect the status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub residuals: Vec<Residual>,
    pub inconclusive: Vec<String>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport { name: name.into(), residuals: Vec::new(), inconclusive: Vec::new(), notes: Vec::new() }
    }

    pub fn status(&self) -> Status {
        if self.residuals.is_empty() { Status::Pass } else { Status::Fail }
    }

    pub fn passed(&self) -> bool {
        self.residuals.is_empty()
    }

    /// Records `value` as a residual unless it is zero.
    pub fn record(&mut self, witness: impl Into<String>, value: Element) {
        if !value.is_zero() {
            self.residuals.push(Residual::element(witness, value));
        }
    }

    pub fn fail(&mut self, witness: impl Into<String>, detail: impl Into<String>) {
        self.residuals.push(Residual::message(witness, detail));
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Collects `(witness, residual)` pairs produced in tuple order.
    pub fn from_residuals(name: impl Into<String>, items: Vec<(String, Element)>) -> Self {
        let mut r = Self::new(name);
        for (w, v) in items {
            r.record(w, v);
        }
        r
    }

    /// Appends the residuals of `other`, prefixing witnesses with its name.
    pub fn absorb(&mut self, other: CheckReport) {
        for mut r in other.residuals {
            r.witness = format!("{}: {}", other.name, r.witness);
            self.residuals.push(r);
        }
        self.inconclusive.extend(other.inconclusive.into_iter().map(|s| format!("{}: {s}", other.name)));
        self.notes.extend(other.notes);
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "check {}: {}", self.name, self.status())?;
        for r in &self.residuals {
            writeln!(f, "  residual ({}) = {}", r.witness, r.detail)?;
        }
        for i in &self.inconclusive {
            writeln!(f, "  inconclusive {i}")?;
        }
        for n in &self.notes {
            writeln!(f, "  note {n}")?;
        }
        Ok(())
    }
}
