//! Integrals and distinguished grouplike elements.

use std::collections::BTreeMap;

use crate::cyclotomic::linalg::{self, Matrix, SparseVector};
use crate::cyclotomic::Cyc;

use super::{Element, HopfAlgebra, HopfError};

/// Which elements `h` enter the defining system `h t = ε(h) t`.
#[derive(Debug, Clone)]
pub enum IntegralSystem {
    /// All basis vectors.
    Basis,
    /// A generating set; enough because `ε` is multiplicative.
    Elements(Vec<Element>),
    /// Basis up to dimension 64, registered generators beyond.
    Auto,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

fn resolve(h: &HopfAlgebra, system: &IntegralSystem) -> Vec<Element> {
    match system {
        IntegralSystem::Basis => (0..h.dim()).map(|i| h.basis(i)).collect(),
        IntegralSystem::Elements(v) => v.clone(),
        IntegralSystem::Auto => {
            let gens = h.generators();
            if h.dim() <= 64 || gens.is_empty() {
                (0..h.dim()).map(|i| h.basis(i)).collect()
            } else {
                gens
            }
        }
    }
}

fn solve_one_dimensional(h: &HopfAlgebra, rows: Vec<SparseVector>) -> Result<Element, HopfError> {
    let m = Matrix::from_rows(h.context(), h.dim(), rows);
    let kernel = linalg::nullspace(&m)?;
    if kernel.len() != 1 {
        return Err(HopfError::IntegralDimension(kernel.len()));
    }
    Ok(h.wrap(kernel.into_iter().next().unwrap()).normalized())
}

fn integral(h: &HopfAlgebra, side: Side, system: &IntegralSystem) -> Result<Element, HopfError> {
    let mut rows = Vec::new();
    for x in resolve(h, system) {
        let eps = h.counit(&x)?;
        let mut block: BTreeMap<usize, SparseVector> = BTreeMap::new();
        for j in 0..h.dim() {
            let e = h.basis(j);
            let p = match side {
                Side::Left => h.multiply(&x, &e)?,
                Side::Right => h.multiply(&e, &x)?,
            };
            for (k, c) in p.iter() {
                *block.entry(k).or_default().entry(j).or_insert_with(|| h.context().zero()) += c;
            }
            if !eps.is_zero() {
                *block.entry(j).or_default().entry(j).or_insert_with(|| h.context().zero()) -= &eps;
            }
        }
        rows.extend(block.into_values().map(|mut r| {
            r.retain(|_, v| !v.is_zero());
            r
        }));
    }
    solve_one_dimensional(h, rows)
}

/// Spanning vector of the left integrals, normalized to leading coefficient 1.
pub fn left_integrals(h: &HopfAlgebra) -> Result<Element, HopfError> {
    integral(h, Side::Left, &IntegralSystem::Auto)
}

pub fn left_integrals_with(h: &HopfAlgebra, system: &IntegralSystem) -> Result<Element, HopfError> {
    integral(h, Side::Left, system)
}

/// Spanning vector of the right integrals, normalized to leading coefficient 1.
pub fn right_integrals(h: &HopfAlgebra) -> Result<Element, HopfError> {
    integral(h, Side::Right, &IntegralSystem::Auto)
}

pub fn right_integrals_with(h: &HopfAlgebra, system: &IntegralSystem) -> Result<Element, HopfError> {
    integral(h, Side::Right, system)
}

/// Right integral of `H*` from the coalgebra of `H`: `T` is a right integral exactly when
/// `Σ T(y_1) y_2 = T(y) 1` for every basis vector `y`. Avoids products in `H*`.
pub fn dual_right_integral(h: &HopfAlgebra, dual: &HopfAlgebra) -> Result<Element, HopfError> {
    if dual.dual_of() != Some(h.id()) {
        return Err(HopfError::Invalid(format!("{} is not dual to {}", dual.name(), h.name())));
    }
    let ctx = h.context();
    let mut rows = Vec::new();
    for y in 0..h.dim() {
        let mut block: BTreeMap<usize, SparseVector> = BTreeMap::new();
        for ((i, j), c) in h.structure().coproduct(y).iter() {
            *block.entry(*j).or_default().entry(*i).or_insert_with(|| ctx.zero()) += c;
        }
        for (r, c) in h.unit_terms() {
            *block.entry(*r).or_default().entry(y).or_insert_with(|| ctx.zero()) -= c;
        }
        rows.extend(block.into_values().map(|mut r| {
            r.retain(|_, v| !v.is_zero());
            r
        }));
    }
    Ok(dual.adopt(&solve_one_dimensional(h, rows)?))
}

fn proportionality(product: &Element, t: &Element, what: impl FnOnce() -> String) -> Result<Cyc, HopfError> {
    match product.ratio_to(t) {
        Some(c) => Ok(c),
        None if product.is_zero() => Ok(t.ctx.zero()),
        None => Err(HopfError::NotProportional(what())),
    }
}

/// `α̃ ∈ H*` with `t h = α̃(h) t`, for `t` spanning the left integrals. The result is checked
/// to be an algebra character of `H`, i.e. grouplike in `H*`.
pub fn distinguished_grouplike_dual(h: &HopfAlgebra, dual: &HopfAlgebra, t: &Element) -> Result<Element, HopfError> {
    if t.is_zero() {
        return Err(HopfError::Invalid("zero integral".into()));
    }
    let mut values = Vec::with_capacity(h.dim());
    for b in 0..h.dim() {
        let p = h.multiply(t, &h.basis(b))?;
        values.push(proportionality(&p, t, || format!("t * {} is not a multiple of t", h.labels()[b]))?);
    }
    let alpha = dual.element_from_terms(values.iter().cloned().enumerate());
    check_character(h, &values).map_err(HopfError::NotGrouplike)?;
    Ok(alpha)
}

/// `χ(1) = 1` and `χ(a e_b) = χ(a) χ(e_b)` for `a` in a generating set (or the whole basis
/// when none is registered or the algebra is small) and every basis `e_b`.
pub fn check_character(h: &HopfAlgebra, values: &[Cyc]) -> Result<(), String> {
    let eval = |e: &Element| -> Cyc {
        let mut acc = h.context().zero();
        for (k, c) in e.iter() {
            acc.add_product(c, &values[k]);
        }
        acc
    };
    if !eval(&h.one()).is_one() {
        return Err("value at 1 is not 1".into());
    }
    let left = resolve(h, &IntegralSystem::Auto);
    for (i, a) in left.iter().enumerate() {
        let va = eval(a);
        for b in 0..h.dim() {
            let ab = h.multiply(a, &h.basis(b)).map_err(|e| e.to_string())?;
            if eval(&ab) != &va * &values[b] {
                return Err(format!("not multiplicative on element {i} times {}", h.labels()[b]));
            }
        }
    }
    Ok(())
}

/// `g̃ ∈ H` with `p T = ⟨p, g̃⟩ T`, for `T` spanning the right integrals of `H*`. The
/// result is checked to be grouplike in `H`.
pub fn distinguished_grouplike(h: &HopfAlgebra, dual: &HopfAlgebra, big_t: &Element) -> Result<Element, HopfError> {
    if dual.dual_of() != Some(h.id()) {
        return Err(HopfError::Invalid(format!("{} is not dual to {}", dual.name(), h.name())));
    }
    if big_t.is_zero() {
        return Err(HopfError::Invalid("zero integral".into()));
    }
    let mut values = Vec::with_capacity(h.dim());
    for p in 0..dual.dim() {
        let prod = dual.multiply(&dual.basis(p), big_t)?;
        values.push(proportionality(&prod, big_t, || format!("{} * T is not a multiple of T", dual.labels()[p]))?);
    }
    let g = h.element_from_terms(values.into_iter().enumerate());
    if h.comultiply(&g)? != h.tensor(&g, &g)? || !h.counit(&g)?.is_one() {
        return Err(HopfError::NotGrouplike(format!("distinguished element {}", h.render(&g))));
    }
    Ok(g)
}
