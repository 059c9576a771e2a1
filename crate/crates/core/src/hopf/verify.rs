//! Exhaustive or generator-based verification of the Hopf algebra axioms.
//!
//! Linear identities (coassociativity, counit, antipode, invertibility of `S`) are always
//! checked on every basis vector. Bilinear and trilinear identities (associativity, unit,
//! multiplicativity of `Δ` and `ε`) run on all basis pairs/triples at full depth, and on
//! generator words of length at most three otherwise.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Accumulator, Element, HopfAlgebra, HopfError};

/// Default dimension bound for full-depth verification.
pub const DEFAULT_FULL_BOUND: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Depth {
    Generators,
    Full,
}

impl Depth {
    /// Full when `dim ≤ bound`, generators otherwise.
    pub fn for_dim(dim: usize, bound: usize) -> Depth {
        if dim <= bound {
            Depth::Full
        } else {
            Depth::Generators
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomCheck {
    pub name: String,
    pub passed: bool,
    /// Number of instances evaluated.
    pub evaluated: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl AxiomCheck {
    pub fn pass(name: &str, evaluated: usize) -> AxiomCheck {
        AxiomCheck { name: name.to_string(), passed: true, evaluated, counterexample: None }
    }

    pub fn fail(name: &str, evaluated: usize, witness: String) -> AxiomCheck {
        AxiomCheck { name: name.to_string(), passed: false, evaluated, counterexample: Some(witness) }
    }

    /// Pass when `witness` is `None`.
    pub fn from_witness(name: &str, evaluated: usize, witness: Option<String>) -> AxiomCheck {
        match witness {
            None => AxiomCheck::pass(name, evaluated),
            Some(w) => AxiomCheck::fail(name, evaluated, w),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub algebra: String,
    pub dim: usize,
    pub depth: Depth,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Verifies with the default full-depth bound.
pub fn verify_hopf_axioms(h: &HopfAlgebra, depth: Depth) -> Result<AxiomReport, HopfError> {
    verify_hopf_axioms_bounded(h, depth, DEFAULT_FULL_BOUND)
}

/// Full depth is refused above `full_bound`; generator depth needs registered generators.
pub fn verify_hopf_axioms_bounded(h: &HopfAlgebra, depth: Depth, full_bound: usize) -> Result<AxiomReport, HopfError> {
    if depth == Depth::Full && h.dim() > full_bound {
        return Err(HopfError::Budget { dim: h.dim(), budget: full_bound });
    }
    let mut checks = Vec::new();
    match depth {
        Depth::Full => {
            let basis: Vec<Element> = (0..h.dim()).map(|i| h.basis(i)).collect();
            checks.push(associativity_full(h));
            checks.push(unit_check(h, &basis));
            checks.push(counit_multiplicative(h, &basis, &basis));
            checks.push(coproduct_multiplicative(h, &basis, &basis)?);
        }
        Depth::Generators => {
            let gens = h.generators();
            if gens.is_empty() {
                return Err(HopfError::Invalid(format!("{} has no registered generators", h.name())));
            }
            let words2 = words_up_to(h, &gens, 2)?;
            let mut triples = 0;
            let mut witness = None;
            'outer: for (ia, a) in gens.iter().enumerate() {
                for (ib, b) in gens.iter().enumerate() {
                    let ab = h.multiply(a, b)?;
                    for (ic, c) in words2.iter().enumerate() {
                        triples += 1;
                        if h.multiply(&ab, c)? != h.multiply(a, &h.multiply(b, c)?)? {
                            witness = Some(format!("generators {ia}, {ib} and word {ic}"));
                            break 'outer;
                        }
                    }
                }
            }
            checks.push(AxiomCheck::from_witness("associativity", triples, witness));
            checks.push(unit_check(h, &words2));
            checks.push(counit_multiplicative(h, &gens, &words2));
            checks.push(coproduct_multiplicative(h, &gens, &words2)?);
        }
    }
    checks.push(unit_coalgebra(h)?);
    checks.push(coassociativity(h)?);
    checks.push(counit_axiom(h)?);
    checks.push(antipode_axiom(h)?);
    checks.push(antipode_invertible(h)?);
    Ok(AxiomReport { algebra: h.name().to_string(), dim: h.dim(), depth, checks })
}

/// Generator words of length `1..=len` (length-one words first).
pub fn words_up_to(h: &HopfAlgebra, gens: &[Element], len: usize) -> Result<Vec<Element>, HopfError> {
    let mut out: Vec<Element> = gens.to_vec();
    let mut frontier: Vec<Element> = gens.to_vec();
    for _ in 1..len {
        let mut next = Vec::new();
        for w in &frontier {
            for g in gens {
                next.push(h.multiply(w, g)?);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    Ok(out)
}

fn associativity_full(h: &HopfAlgebra) -> AxiomCheck {
    let dim = h.dim();
    let s = h.structure();
    let witness = (0..dim).into_par_iter().find_map_first(|a| {
        for b in 0..dim {
            let ab = s.product(a, b);
            for c in 0..dim {
                let mut lhs = Accumulator::new();
                for (k, x) in ab.iter() {
                    for (r, y) in s.product(*k, c).iter() {
                        lhs.add_product(*r, x, y);
                    }
                }
                let mut rhs = Accumulator::new();
                for (k, x) in s.product(b, c).iter() {
                    for (r, y) in s.product(a, *k).iter() {
                        rhs.add_product(*r, x, y);
                    }
                }
                if lhs.into_map() != rhs.into_map() {
                    let l = h.labels();
                    return Some(format!("({} * {}) * {} != {} * ({} * {})", l[a], l[b], l[c], l[a], l[b], l[c]));
                }
            }
        }
        None
    });
    AxiomCheck::from_witness("associativity", dim * dim * dim, witness)
}

fn unit_check(h: &HopfAlgebra, elems: &[Element]) -> AxiomCheck {
    let one = h.one();
    let witness = elems.iter().enumerate().find_map(|(i, e)| {
        let ok = h.multiply(&one, e).ok()? == *e && h.multiply(e, &one).ok()? == *e;
        (!ok).then(|| format!("element {i}: {}", h.render(e)))
    });
    AxiomCheck::from_witness("unit", elems.len(), witness)
}

fn counit_multiplicative(h: &HopfAlgebra, left: &[Element], right: &[Element]) -> AxiomCheck {
    let witness = left.par_iter().enumerate().find_map_first(|(i, a)| {
        let ea = h.counit(a).ok()?;
        right.iter().enumerate().find_map(|(j, b)| {
            let lhs = h.counit(&h.multiply(a, b).ok()?).ok()?;
            (lhs != &ea * &h.counit(b).ok()?).then(|| format!("eps(x_{i} * y_{j}) != eps(x_{i}) eps(y_{j})"))
        })
    });
    AxiomCheck::from_witness("counit_multiplicative", left.len() * right.len(), witness)
}

fn coproduct_multiplicative(h: &HopfAlgebra, left: &[Element], right: &[Element]) -> Result<AxiomCheck, HopfError> {
    let dl: Vec<_> = left.iter().map(|a| h.comultiply(a)).collect::<Result<_, _>>()?;
    let dr: Vec<_> = right.iter().map(|b| h.comultiply(b)).collect::<Result<_, _>>()?;
    let witness = (0..left.len()).into_par_iter().find_map_first(|i| {
        (0..right.len()).find_map(|j| {
            let lhs = h.comultiply(&h.multiply(&left[i], &right[j]).ok()?).ok()?;
            let rhs = h.tensor_multiply(&dl[i], &dr[j]).ok()?;
            (lhs != rhs).then(|| format!("Delta(x_{i} * y_{j}) != Delta(x_{i}) Delta(y_{j})"))
        })
    });
    Ok(AxiomCheck::from_witness("coproduct_multiplicative", left.len() * right.len(), witness))
}

fn unit_coalgebra(h: &HopfAlgebra) -> Result<AxiomCheck, HopfError> {
    let one = h.one();
    let ok = h.comultiply(&one)? == h.tensor(&one, &one)? && h.counit(&one)?.is_one();
    Ok(AxiomCheck::from_witness("unit_grouplike", 1, (!ok).then(|| "Delta(1) != 1 (x) 1 or eps(1) != 1".into())))
}

fn coassociativity(h: &HopfAlgebra) -> Result<AxiomCheck, HopfError> {
    let witness = (0..h.dim()).into_par_iter().find_map_first(|k| {
        let d = h.comultiply(&h.basis(k)).ok()?;
        let l = h.comultiply_leg(&d, 0).ok()?;
        let r = h.comultiply_leg(&d, 1).ok()?;
        (l != r).then(|| format!("coassociativity fails on {}", h.labels()[k]))
    });
    Ok(AxiomCheck::from_witness("coassociativity", h.dim(), witness))
}

fn counit_axiom(h: &HopfAlgebra) -> Result<AxiomCheck, HopfError> {
    let witness = (0..h.dim()).into_par_iter().find_map_first(|k| {
        let e = h.basis(k);
        let d = h.comultiply(&e).ok()?;
        let ok = h.counit_leg(&d, 0).ok()? == e && h.counit_leg(&d, 1).ok()? == e;
        (!ok).then(|| format!("counit axiom fails on {}", h.labels()[k]))
    });
    Ok(AxiomCheck::from_witness("counit", h.dim(), witness))
}

fn antipode_axiom(h: &HopfAlgebra) -> Result<AxiomCheck, HopfError> {
    let witness = (0..h.dim()).into_par_iter().find_map_first(|k| {
        let e = h.basis(k);
        let d = h.comultiply(&e).ok()?;
        let expected = h.scalar(h.counit(&e).ok()?);
        let left = h.multiply_legs(&h.antipode_leg(&d, 0).ok()?).ok()?;
        let right = h.multiply_legs(&h.antipode_leg(&d, 1).ok()?).ok()?;
        (left != expected || right != expected).then(|| format!("antipode axiom fails on {}", h.labels()[k]))
    });
    Ok(AxiomCheck::from_witness("antipode", h.dim(), witness))
}

fn antipode_invertible(h: &HopfAlgebra) -> Result<AxiomCheck, HopfError> {
    let witness = (0..h.dim()).into_par_iter().find_map_first(|k| {
        let e = h.basis(k);
        let a = h.antipode(&h.antipode_inv(&e).ok()?).ok()?;
        let b = h.antipode_inv(&h.antipode(&e).ok()?).ok()?;
        (a != e || b != e).then(|| format!("S and S^-1 are not inverse on {}", h.labels()[k]))
    });
    Ok(AxiomCheck::from_witness("antipode_invertible", h.dim(), witness))
}

/// A named list of checks that are not tied to one algebra's axiom suite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub subject: String,
    pub checks: Vec<AxiomCheck>,
}

impl CheckReport {
    pub fn new(subject: impl Into<String>) -> CheckReport {
        CheckReport { subject: subject.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, check: AxiomCheck) {
        self.checks.push(check);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}
