//! The pairing between `H` and `H*` and the four harpoon actions it induces.

use super::{Accumulator, Element, HopfAlgebra, HopfError};

fn check_pair(h: &HopfAlgebra, dual: &HopfAlgebra, p: &Element, a: &Element) -> Result<(), HopfError> {
    if dual.dual_of() != Some(h.id()) {
        return Err(HopfError::Invalid(format!("{} is not dual to {}", dual.name(), h.name())));
    }
    dual.owns(p)?;
    h.owns(a)
}

/// `⟨p, a⟩`.
pub fn pairing(h: &HopfAlgebra, dual: &HopfAlgebra, p: &Element, a: &Element) -> Result<crate::Cyc, HopfError> {
    check_pair(h, dual, p, a)?;
    let mut acc = h.context().zero();
    for (k, x) in a.iter() {
        let y = p.coeff(k);
        if !y.is_zero() {
            acc.add_product(x, &y);
        }
    }
    Ok(acc)
}

fn functional(h: &HopfAlgebra, p: &Element) -> Vec<crate::Cyc> {
    let mut f = vec![h.context().zero(); h.dim()];
    for (k, c) in p.iter() {
        f[k] = c.clone();
    }
    f
}

/// `p ⇀ a = Σ a_1 ⟨p, a_2⟩`.
pub fn act_left(h: &HopfAlgebra, dual: &HopfAlgebra, p: &Element, a: &Element) -> Result<Element, HopfError> {
    check_pair(h, dual, p, a)?;
    Ok(h.comultiply(a)?.contract_leg(1, &functional(h, p), h.id()))
}

/// `a ↼ p = Σ ⟨p, a_1⟩ a_2`.
pub fn act_right(h: &HopfAlgebra, dual: &HopfAlgebra, a: &Element, p: &Element) -> Result<Element, HopfError> {
    check_pair(h, dual, p, a)?;
    Ok(h.comultiply(a)?.contract_leg(0, &functional(h, p), h.id()))
}

/// `a ⇀ p` for `a ∈ H` acting on `p ∈ H*`: `(a ⇀ p)(y) = p(y a)`.
pub fn hit_dual_left(h: &HopfAlgebra, dual: &HopfAlgebra, a: &Element, p: &Element) -> Result<Element, HopfError> {
    check_pair(h, dual, p, a)?;
    let mut acc = Accumulator::new();
    for y in 0..h.dim() {
        let ya = h.multiply(&h.basis(y), a)?;
        acc.add(y, &pairing(h, dual, p, &ya)?);
    }
    Ok(dual.wrap(acc.into_map()))
}

/// `p ↼ b` for `b ∈ H` acting on `p ∈ H*`: `(p ↼ b)(y) = p(b y)`.
pub fn hit_dual_right(h: &HopfAlgebra, dual: &HopfAlgebra, p: &Element, b: &Element) -> Result<Element, HopfError> {
    check_pair(h, dual, p, b)?;
    let mut acc = Accumulator::new();
    for y in 0..h.dim() {
        let by = h.multiply(b, &h.basis(y))?;
        acc.add(y, &pairing(h, dual, p, &by)?);
    }
    Ok(dual.wrap(acc.into_map()))
}
