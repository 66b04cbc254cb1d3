//! Turns families of residual elements into exact linear systems.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::freemod::Element;
use crate::linsolve::{nullspace, RationalMatrix};
use crate::poly::Rational;

/// Coordinates of a residual family: one entry per (equation, generator,
/// monomial) with a nonzero coefficient.
pub(crate) type Coords = Vec<((usize, usize, Vec<u32>), Rational)>;

pub(crate) fn coordinates(residuals: &[Element]) -> Coords {
    let mut out = Vec::new();
    for (eq, e) in residuals.iter().enumerate() {
        for (g, c) in e.coeffs().iter().enumerate() {
            for (m, v) in c.terms() {
                out.push(((eq, g, m.exponents().to_vec()), v.clone()));
            }
        }
    }
    out
}

/// Assembles the matrix whose columns are the coordinate vectors of the
/// given residual families (computed in parallel, in column order).
pub(crate) fn assemble<F>(unknowns: usize, column: F) -> RationalMatrix
where
    F: Fn(usize) -> Vec<Element> + Sync,
{
    let cols: Vec<Coords> = (0..unknowns).into_par_iter().map(|u| coordinates(&column(u))).collect();
    let mut keys: BTreeMap<&(usize, usize, Vec<u32>), usize> = BTreeMap::new();
    for c in &cols {
        for (k, _) in c {
            let n = keys.len();
            keys.entry(k).or_insert(n);
        }
    }
    // renumber rows in key order so the system does not depend on discovery order
    let order: BTreeMap<&(usize, usize, Vec<u32>), usize> =
        keys.keys().enumerate().map(|(i, k)| (*k, i)).collect();
    let mut m = RationalMatrix::zeros(order.len(), unknowns);
    for (j, c) in cols.iter().enumerate() {
        for (k, v) in c {
            m[(order[k], j)] += v;
        }
    }
    m
}

/// Basis of the solutions of `Σ x_u · column(u) = 0`.
pub(crate) fn kernel<F>(unknowns: usize, column: F) -> Vec<Vec<Rational>>
where
    F: Fn(usize) -> Vec<Element> + Sync,
{
    nullspace(&assemble(unknowns, column))
}
