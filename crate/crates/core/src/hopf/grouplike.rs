//! Verified finite groups of grouplike elements.

use serde::Serialize;

use crate::cyclotomic::linalg::{self, Matrix};

use super::{Element, HopfAlgebra, HopfError};

/// A group of grouplike elements with its multiplication table.
#[derive(Debug, Clone)]
pub struct GrouplikeSet {
    pub elements: Vec<Element>,
    /// `mult_table[i][j]` is the index of `elements[i] * elements[j]`.
    pub mult_table: Vec<Vec<usize>>,
    pub identity: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupSummary {
    pub order: usize,
    pub identity: usize,
}

impl GrouplikeSet {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, e: &Element) -> Option<usize> {
        self.elements.iter().position(|x| x == e)
    }

    pub fn inverse_index(&self, i: usize) -> usize {
        (0..self.order()).find(|&j| self.mult_table[i][j] == self.identity).expect("verified group")
    }

    /// Multiplicative order of element `i`.
    pub fn element_order(&self, i: usize) -> usize {
        let mut k = 1;
        let mut cur = i;
        while cur != self.identity {
            cur = self.mult_table[cur][i];
            k += 1;
        }
        k
    }

    /// All `h` with `h² = elements[target]`, in index order.
    pub fn square_roots(&self, target: usize) -> Vec<usize> {
        (0..self.order()).filter(|&i| self.mult_table[i][i] == target).collect()
    }

    pub fn summary(&self) -> GroupSummary {
        GroupSummary { order: self.order(), identity: self.identity }
    }
}

/// Checks that `g` is grouplike; the error names the violated equation.
pub fn check_grouplike(h: &HopfAlgebra, g: &Element) -> Result<(), HopfError> {
    if !h.counit(g)?.is_one() {
        return Err(HopfError::NotGrouplike(format!("eps(g) != 1 for g = {}", h.render(g))));
    }
    if h.comultiply(g)? != h.tensor(g, g)? {
        return Err(HopfError::NotGrouplike(format!("Delta(g) != g (x) g for g = {}", h.render(g))));
    }
    Ok(())
}

/// Verifies each candidate, closes under products (inverses follow in a finite group and
/// are checked against `S`), and asserts linear independence.
pub fn grouplike_set(h: &HopfAlgebra, candidates: &[Element]) -> Result<GrouplikeSet, HopfError> {
    let mut elements: Vec<Element> = Vec::new();
    let one = h.one();
    for c in std::iter::once(&one).chain(candidates) {
        check_grouplike(h, c)?;
        if !elements.contains(c) {
            elements.push(c.clone());
        }
    }
    let mut table: Vec<Vec<Option<usize>>> = Vec::new();
    let mut i = 0;
    while i < elements.len() {
        for j in 0..elements.len() {
            ensure_product(h, &mut elements, &mut table, i, j)?;
        }
        for j in 0..i {
            ensure_product(h, &mut elements, &mut table, j, i)?;
        }
        i += 1;
    }
    let n = elements.len();
    let mult_table: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).map(|j| table[i][j].expect("closed")).collect())
        .collect();
    let identity = 0;
    for (i, g) in elements.iter().enumerate() {
        let inv = (0..n)
            .find(|&j| mult_table[i][j] == identity && mult_table[j][i] == identity)
            .ok_or_else(|| HopfError::NotGrouplike(format!("no inverse for {}", h.render(g))))?;
        if h.antipode(g)? != elements[inv] {
            return Err(HopfError::NotGrouplike(format!("S(g) != g^-1 for g = {}", h.render(g))));
        }
    }
    let rows = elements.iter().map(|e| e.as_map().clone()).collect();
    let rank = linalg::echelon(&Matrix::from_rows(h.context(), h.dim(), rows), usize::MAX)?.rank();
    if rank != n {
        return Err(HopfError::NotGrouplike(format!("{n} grouplikes span only rank {rank}")));
    }
    Ok(GrouplikeSet { elements, mult_table, identity })
}

fn ensure_product(
    h: &HopfAlgebra,
    elements: &mut Vec<Element>,
    table: &mut Vec<Vec<Option<usize>>>,
    i: usize,
    j: usize,
) -> Result<(), HopfError> {
    while table.len() <= i.max(j) {
        table.push(Vec::new());
    }
    if table[i].len() > j && table[i][j].is_some() {
        return Ok(());
    }
    let p = h.multiply(&elements[i], &elements[j])?;
    let idx = match elements.iter().position(|e| *e == p) {
        Some(k) => k,
        None => {
            check_grouplike(h, &p)?;
            elements.push(p);
            elements.len() - 1
        }
    };
    if table[i].len() <= j {
        table[i].resize(j + 1, None);
    }
    table[i][j] = Some(idx);
    Ok(())
}
