//! Finite-dimensional Hopf algebras given by structure constants.
//!
//! A [`HopfAlgebra`] is a basis with labels, a unit and counit, and a [`Structure`]
//! that answers basis-level queries: the product of two basis vectors, the coproduct,
//! antipode and inverse antipode of one basis vector. Tabulated algebras answer from
//! precomputed tables; duals, co-opposites and Drinfeld doubles compute entries on demand
//! and cache them.

mod accum;
pub mod actions;
pub mod dual;
pub mod grouplike;
pub mod integrals;
pub mod verify;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use crate::cyclotomic::linalg::{self, LinalgError, Matrix, SparseVector};
use crate::cyclotomic::{Cyc, CycContext, CycError};

pub use accum::Accumulator;
pub use dual::{coopposite, dual_hopf};
pub use grouplike::{grouplike_set, GrouplikeSet};
pub use integrals::{
    distinguished_grouplike, distinguished_grouplike_dual, left_integrals, right_integrals,
    IntegralSystem,
};
pub use verify::{verify_hopf_axioms, AxiomCheck, AxiomReport, CheckReport, Depth};

/// Sorted sparse coefficient list over one basis.
pub type Terms = Vec<(usize, Cyc)>;
/// Sorted sparse coefficient list over pairs of basis indices.
pub type Terms2 = Vec<((usize, usize), Cyc)>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HopfError {
    #[error("element belongs to algebra #{found}, expected #{expected}")]
    ForeignElement { expected: u64, found: u64 },
    #[error("element is not invertible")]
    NotInvertible,
    #[error("integral space has dimension {0}, expected 1")]
    IntegralDimension(usize),
    #[error("{0}")]
    NotProportional(String),
    #[error("grouplike check failed: {0}")]
    NotGrouplike(String),
    #[error("relation failed: {0}")]
    Relation(String),
    #[error("{0}")]
    Invalid(String),
    #[error("dimension {dim} exceeds the configured budget {budget}")]
    Budget { dim: usize, budget: usize },
    #[error(transparent)]
    Field(#[from] CycError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Basis-level structure constants.
pub trait Structure: Send + Sync {
    fn dim(&self) -> usize;
    /// `e_i · e_j`.
    fn product(&self, i: usize, j: usize) -> Arc<Terms>;
    /// `Δ(e_k)`.
    fn coproduct(&self, k: usize) -> Arc<Terms2>;
    fn antipode(&self, k: usize) -> Arc<Terms>;
    fn antipode_inverse(&self, k: usize) -> Arc<Terms>;
}

/// Fully tabulated structure constants.
pub struct TableStructure {
    dim: usize,
    products: Vec<Arc<Terms>>,
    coproducts: Vec<Arc<Terms2>>,
    antipode: Vec<Arc<Terms>>,
    antipode_inverse: Vec<Arc<Terms>>,
}

impl TableStructure {
    /// `products` is indexed `i * dim + j`.
    pub fn new(
        dim: usize,
        products: Vec<Terms>,
        coproducts: Vec<Terms2>,
        antipode: Vec<Terms>,
        antipode_inverse: Vec<Terms>,
    ) -> TableStructure {
        assert_eq!(products.len(), dim * dim);
        assert_eq!(coproducts.len(), dim);
        assert_eq!(antipode.len(), dim);
        assert_eq!(antipode_inverse.len(), dim);
        TableStructure {
            dim,
            products: products.into_iter().map(Arc::new).collect(),
            coproducts: coproducts.into_iter().map(Arc::new).collect(),
            antipode: antipode.into_iter().map(Arc::new).collect(),
            antipode_inverse: antipode_inverse.into_iter().map(Arc::new).collect(),
        }
    }
}

impl Structure for TableStructure {
    fn dim(&self) -> usize {
        self.dim
    }
    fn product(&self, i: usize, j: usize) -> Arc<Terms> {
        self.products[i * self.dim + j].clone()
    }
    fn coproduct(&self, k: usize) -> Arc<Terms2> {
        self.coproducts[k].clone()
    }
    fn antipode(&self, k: usize) -> Arc<Terms> {
        self.antipode[k].clone()
    }
    fn antipode_inverse(&self, k: usize) -> Arc<Terms> {
        self.antipode_inverse[k].clone()
    }
}

/// Lazily filled cache of basis-level values.
pub struct LazyCache<V> {
    slots: Vec<OnceLock<Arc<V>>>,
}

impl<V> LazyCache<V> {
    pub fn new(len: usize) -> Self {
        LazyCache { slots: (0..len).map(|_| OnceLock::new()).collect() }
    }

    pub fn get_or_compute(&self, idx: usize, f: impl FnOnce() -> V) -> Arc<V> {
        self.slots[idx].get_or_init(|| Arc::new(f())).clone()
    }
}

/// Identity of a constructed algebra; elements carry it so operands can be checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraId(pub u64);

fn next_id() -> AlgebraId {
    static NEXT: AtomicU64 = AtomicU64::new(1);
    AlgebraId(NEXT.fetch_add(1, Ordering::Relaxed))
}

struct Inner {
    id: AlgebraId,
    name: String,
    ctx: &'static CycContext,
    labels: Vec<String>,
    unit: Terms,
    counit: Vec<Cyc>,
    structure: Arc<dyn Structure>,
    /// The algebra whose basis this one's basis is dual to, if any.
    dual_of: Option<AlgebraId>,
    generators: Vec<Terms>,
}

/// A finite-dimensional Hopf algebra over `Q(ζ_N)`. Cheap to clone.
#[derive(Clone)]
pub struct HopfAlgebra {
    inner: Arc<Inner>,
}

impl fmt::Debug for HopfAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HopfAlgebra")
            .field("name", &self.inner.name)
            .field("dim", &self.dim())
            .field("id", &self.inner.id)
            .finish()
    }
}

pub struct HopfAlgebraBuilder {
    pub name: String,
    pub ctx: &'static CycContext,
    pub labels: Vec<String>,
    pub unit: Terms,
    pub counit: Vec<Cyc>,
    pub structure: Arc<dyn Structure>,
    pub dual_of: Option<AlgebraId>,
    pub generators: Vec<Terms>,
}

impl HopfAlgebraBuilder {
    pub fn build(self) -> HopfAlgebra {
        assert_eq!(self.labels.len(), self.structure.dim());
        assert_eq!(self.counit.len(), self.structure.dim());
        HopfAlgebra {
            inner: Arc::new(Inner {
                id: next_id(),
                name: self.name,
                ctx: self.ctx,
                labels: self.labels,
                unit: self.unit,
                counit: self.counit,
                structure: self.structure,
                dual_of: self.dual_of,
                generators: self.generators,
            }),
        }
    }
}

impl HopfAlgebra {
    pub fn id(&self) -> AlgebraId {
        self.inner.id
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub fn dim(&self) -> usize {
        self.inner.labels.len()
    }

    pub fn context(&self) -> &'static CycContext {
        self.inner.ctx
    }

    pub fn labels(&self) -> &[String] {
        &self.inner.labels
    }

    pub fn structure(&self) -> &Arc<dyn Structure> {
        &self.inner.structure
    }

    pub fn dual_of(&self) -> Option<AlgebraId> {
        self.inner.dual_of
    }

    pub fn counit_vector(&self) -> &[Cyc] {
        &self.inner.counit
    }

    pub fn unit_terms(&self) -> &Terms {
        &self.inner.unit
    }

    /// Algebra generators registered by the family constructor (may be empty).
    pub fn generators(&self) -> Vec<Element> {
        self.inner.generators.iter().map(|t| self.element_from_terms(t.iter().cloned())).collect()
    }

    /// A copy of this algebra with a different generating set.
    pub fn with_generators(&self, generators: &[Element]) -> HopfAlgebra {
        HopfAlgebra {
            inner: Arc::new(Inner {
                id: self.inner.id,
                name: self.inner.name.clone(),
                ctx: self.inner.ctx,
                labels: self.inner.labels.clone(),
                unit: self.inner.unit.clone(),
                counit: self.inner.counit.clone(),
                structure: self.inner.structure.clone(),
                dual_of: self.inner.dual_of,
                generators: generators.iter().map(|g| g.terms()).collect(),
            }),
        }
    }

    pub fn builder_from(&self) -> HopfAlgebraBuilder {
        HopfAlgebraBuilder {
            name: self.inner.name.clone(),
            ctx: self.inner.ctx,
            labels: self.inner.labels.clone(),
            unit: self.inner.unit.clone(),
            counit: self.inner.counit.clone(),
            structure: self.inner.structure.clone(),
            dual_of: self.inner.dual_of,
            generators: self.inner.generators.clone(),
        }
    }

    fn owns(&self, e: &Element) -> Result<(), HopfError> {
        if e.algebra != self.id() {
            return Err(HopfError::ForeignElement { expected: self.id().0, found: e.algebra.0 });
        }
        Ok(())
    }

    fn owns_tensor(&self, t: &TensorElement) -> Result<(), HopfError> {
        if let Some(bad) = t.legs.iter().find(|&&l| l != self.id()) {
            return Err(HopfError::ForeignElement { expected: self.id().0, found: bad.0 });
        }
        Ok(())
    }

    pub fn zero(&self) -> Element {
        Element { algebra: self.id(), ctx: self.context(), terms: BTreeMap::new() }
    }

    pub fn one(&self) -> Element {
        self.element_from_terms(self.inner.unit.iter().cloned())
    }

    pub fn basis(&self, i: usize) -> Element {
        assert!(i < self.dim());
        self.element_from_terms([(i, self.context().one())])
    }

    pub fn element_from_terms(&self, terms: impl IntoIterator<Item = (usize, Cyc)>) -> Element {
        let mut acc = Accumulator::new();
        for (k, c) in terms {
            assert!(k < self.dim(), "basis index {k} out of range");
            acc.add(k, &c);
        }
        Element { algebra: self.id(), ctx: self.context(), terms: acc.into_map() }
    }

    pub fn scalar(&self, c: Cyc) -> Element {
        self.one().scale(&c)
    }

    /// Re-tags an element of an algebra on the same underlying vector space (for example
    /// `H*` and `(H*)^cop`).
    pub fn adopt(&self, e: &Element) -> Element {
        Element { algebra: self.id(), ctx: self.context(), terms: e.terms.clone() }
    }

    pub(crate) fn raw_product(&self, a: &BTreeMap<usize, Cyc>, b: &BTreeMap<usize, Cyc>) -> BTreeMap<usize, Cyc> {
        let s = &self.inner.structure;
        let mut acc = Accumulator::new();
        for (i, x) in a {
            for (j, y) in b {
                let xy = x * y;
                for (k, c) in s.product(*i, *j).iter() {
                    acc.add_product(*k, &xy, c);
                }
            }
        }
        acc.into_map()
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element, HopfError> {
        self.owns(a)?;
        self.owns(b)?;
        Ok(self.wrap(self.raw_product(&a.terms, &b.terms)))
    }

    /// Product of several factors, left to right.
    pub fn multiply_all(&self, factors: &[&Element]) -> Result<Element, HopfError> {
        let mut acc = self.one();
        for f in factors {
            acc = self.multiply(&acc, f)?;
        }
        Ok(acc)
    }

    pub fn power(&self, a: &Element, e: u32) -> Result<Element, HopfError> {
        self.owns(a)?;
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.multiply(&acc, a)?;
        }
        Ok(acc)
    }

    pub fn commutator(&self, a: &Element, b: &Element) -> Result<Element, HopfError> {
        Ok(&self.multiply(a, b)? - &self.multiply(b, a)?)
    }

    pub fn comultiply(&self, a: &Element) -> Result<TensorElement, HopfError> {
        self.owns(a)?;
        let mut acc = Accumulator::new();
        for (k, x) in &a.terms {
            for ((i, j), c) in self.inner.structure.coproduct(*k).iter() {
                acc.add_product([*i, *j, 0], x, c);
            }
        }
        Ok(TensorElement::new(vec![self.id(); 2], self.context(), acc.into_map()))
    }

    pub fn counit(&self, a: &Element) -> Result<Cyc, HopfError> {
        self.owns(a)?;
        let mut acc = self.context().zero();
        for (k, x) in &a.terms {
            acc.add_product(x, &self.inner.counit[*k]);
        }
        Ok(acc)
    }

    fn apply_basis_map(&self, a: &Element, f: impl Fn(usize) -> Arc<Terms>) -> Element {
        let mut acc = Accumulator::new();
        for (k, x) in &a.terms {
            for (j, c) in f(*k).iter() {
                acc.add_product(*j, x, c);
            }
        }
        self.wrap(acc.into_map())
    }

    pub fn antipode(&self, a: &Element) -> Result<Element, HopfError> {
        self.owns(a)?;
        Ok(self.apply_basis_map(a, |k| self.inner.structure.antipode(k)))
    }

    pub fn antipode_inv(&self, a: &Element) -> Result<Element, HopfError> {
        self.owns(a)?;
        Ok(self.apply_basis_map(a, |k| self.inner.structure.antipode_inverse(k)))
    }

    /// Inverse of `a`, found by solving `a·x = 1` and checked on both sides.
    pub fn inverse(&self, a: &Element) -> Result<Element, HopfError> {
        self.owns(a)?;
        let dim = self.dim();
        let mut cols: Vec<SparseVector> = vec![SparseVector::new(); dim];
        for j in 0..dim {
            let col = self.raw_product(&a.terms, &BTreeMap::from([(j, self.context().one())]));
            for (r, v) in col {
                cols[r].insert(j, v);
            }
        }
        let m = Matrix::from_rows(self.context(), dim, cols);
        let rhs: SparseVector = self.inner.unit.iter().cloned().collect();
        let x = linalg::solve_linear(&m, &rhs)?.ok_or(HopfError::NotInvertible)?;
        let inv = self.wrap(x);
        let one = self.one();
        if self.multiply(a, &inv)? != one || self.multiply(&inv, a)? != one {
            return Err(HopfError::NotInvertible);
        }
        Ok(inv)
    }

    /// Checks that `candidate` is a two-sided inverse of `a`.
    pub fn is_inverse(&self, a: &Element, candidate: &Element) -> Result<bool, HopfError> {
        let one = self.one();
        Ok(self.multiply(a, candidate)? == one && self.multiply(candidate, a)? == one)
    }

    pub(crate) fn wrap(&self, terms: BTreeMap<usize, Cyc>) -> Element {
        Element { algebra: self.id(), ctx: self.context(), terms }
    }

    /// `(x ⊗ y)` for elements of this algebra.
    pub fn tensor(&self, x: &Element, y: &Element) -> Result<TensorElement, HopfError> {
        self.owns(x)?;
        self.owns(y)?;
        Ok(TensorElement::outer(&[x, y]))
    }

    pub fn tensor3(&self, x: &Element, y: &Element, z: &Element) -> Result<TensorElement, HopfError> {
        self.owns(x)?;
        self.owns(y)?;
        self.owns(z)?;
        Ok(TensorElement::outer(&[x, y, z]))
    }

    /// Componentwise product in `H ⊗ H` (or `H ⊗ H ⊗ H`).
    pub fn tensor_multiply(&self, x: &TensorElement, y: &TensorElement) -> Result<TensorElement, HopfError> {
        self.owns_tensor(x)?;
        self.owns_tensor(y)?;
        if x.arity() != y.arity() {
            return Err(HopfError::Invalid("tensor arity mismatch".into()));
        }
        let arity = x.arity();
        let s = &self.inner.structure;
        let mut acc = Accumulator::new();
        for (kx, cx) in &x.terms {
            for (ky, cy) in &y.terms {
                let c = cx * cy;
                let p0 = s.product(kx[0], ky[0]);
                let p1 = s.product(kx[1], ky[1]);
                if arity == 2 {
                    for (i, a) in p0.iter() {
                        let ca = &c * a;
                        for (j, b) in p1.iter() {
                            acc.add_product([*i, *j, 0], &ca, b);
                        }
                    }
                } else {
                    let p2 = s.product(kx[2], ky[2]);
                    for (i, a) in p0.iter() {
                        let ca = &c * a;
                        for (j, b) in p1.iter() {
                            let cab = &ca * b;
                            for (k, d) in p2.iter() {
                                acc.add_product([*i, *j, *k], &cab, d);
                            }
                        }
                    }
                }
            }
        }
        Ok(TensorElement::new(x.legs.clone(), self.context(), acc.into_map()))
    }

    /// Applies `Δ` to one leg of a 2-tensor, producing a 3-tensor.
    pub fn comultiply_leg(&self, t: &TensorElement, leg: usize) -> Result<TensorElement, HopfError> {
        self.owns_tensor(t)?;
        if t.arity() != 2 || leg > 1 {
            return Err(HopfError::Invalid("comultiply_leg needs a 2-tensor".into()));
        }
        let mut acc = Accumulator::new();
        for (k, c) in &t.terms {
            for ((i, j), d) in self.inner.structure.coproduct(k[leg]).iter() {
                let key = if leg == 0 { [*i, *j, k[1]] } else { [k[0], *i, *j] };
                acc.add_product(key, c, d);
            }
        }
        Ok(TensorElement::new(vec![self.id(); 3], self.context(), acc.into_map()))
    }

    /// Applies the antipode to one leg.
    pub fn antipode_leg(&self, t: &TensorElement, leg: usize) -> Result<TensorElement, HopfError> {
        self.owns_tensor(t)?;
        let mut acc = Accumulator::new();
        for (k, c) in &t.terms {
            for (i, d) in self.inner.structure.antipode(k[leg]).iter() {
                let mut key = *k;
                key[leg] = *i;
                acc.add_product(key, c, d);
            }
        }
        Ok(TensorElement::new(t.legs.clone(), self.context(), acc.into_map()))
    }

    /// Applies `ε` to one leg of a 2-tensor.
    pub fn counit_leg(&self, t: &TensorElement, leg: usize) -> Result<Element, HopfError> {
        self.owns_tensor(t)?;
        if t.arity() != 2 || leg > 1 {
            return Err(HopfError::Invalid("counit_leg needs a 2-tensor".into()));
        }
        let mut acc = Accumulator::new();
        for (k, c) in &t.terms {
            let e = &self.inner.counit[k[leg]];
            if !e.is_zero() {
                acc.add_product(k[1 - leg], c, e);
            }
        }
        Ok(self.wrap(acc.into_map()))
    }

    /// `Σ x_i y_i` for a 2-tensor `Σ x_i ⊗ y_i`.
    pub fn multiply_legs(&self, t: &TensorElement) -> Result<Element, HopfError> {
        self.owns_tensor(t)?;
        let mut acc = Accumulator::new();
        for (k, c) in &t.terms {
            for (j, d) in self.inner.structure.product(k[0], k[1]).iter() {
                acc.add_product(*j, c, d);
            }
        }
        Ok(self.wrap(acc.into_map()))
    }

    /// Renders an element with this algebra's labels.
    pub fn render(&self, e: &Element) -> String {
        if e.terms.is_empty() {
            return "0".to_string();
        }
        e.terms
            .iter()
            .map(|(k, c)| {
                let text = c.poly_text();
                if text.contains(' ') {
                    format!("({text}) * {}", self.inner.labels[*k])
                } else {
                    format!("{text} * {}", self.inner.labels[*k])
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Replaces one structure constant: the coefficient of `e_k` in `e_i·e_j` becomes
    /// `value`. The result is tabulated, so this is for small algebras (negative controls).
    pub fn with_perturbed_product(&self, i: usize, j: usize, k: usize, value: Cyc) -> HopfAlgebra {
        let dim = self.dim();
        let s = &self.inner.structure;
        let mut products: Vec<Terms> = Vec::with_capacity(dim * dim);
        for a in 0..dim {
            for b in 0..dim {
                let mut t: BTreeMap<usize, Cyc> = s.product(a, b).iter().cloned().collect();
                if (a, b) == (i, j) {
                    t.insert(k, value.clone());
                    t.retain(|_, v| !v.is_zero());
                }
                products.push(t.into_iter().collect());
            }
        }
        let table = TableStructure::new(
            dim,
            products,
            (0..dim).map(|k| s.coproduct(k).as_ref().clone()).collect(),
            (0..dim).map(|k| s.antipode(k).as_ref().clone()).collect(),
            (0..dim).map(|k| s.antipode_inverse(k).as_ref().clone()).collect(),
        );
        let mut b = self.builder_from();
        b.name = format!("{} (perturbed)", self.name());
        b.structure = Arc::new(table);
        b.build()
    }
}

/// Sparse element of a specific algebra. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Element {
    algebra: AlgebraId,
    ctx: &'static CycContext,
    terms: BTreeMap<usize, Cyc>,
}

impl Element {
    pub fn algebra(&self) -> AlgebraId {
        self.algebra
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: usize) -> Cyc {
        self.terms.get(&k).cloned().unwrap_or_else(|| self.ctx.zero())
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Cyc)> + '_ {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> Terms {
        self.terms.iter().map(|(k, v)| (*k, v.clone())).collect()
    }

    pub fn as_map(&self) -> &BTreeMap<usize, Cyc> {
        &self.terms
    }

    pub fn scale(&self, c: &Cyc) -> Element {
        if c.is_zero() {
            return Element { terms: BTreeMap::new(), ..self.clone() };
        }
        Element { terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(), ..self.clone() }
    }

    /// Divides by the first nonzero coefficient.
    pub fn normalized(&self) -> Element {
        match self.terms.values().next() {
            Some(lead) => self.scale(&lead.inv().expect("nonzero lead")),
            None => self.clone(),
        }
    }

    /// `Some(c)` when `self = c · other` (and `other ≠ 0`).
    pub fn ratio_to(&self, other: &Element) -> Option<Cyc> {
        let (&k, lead) = other.terms.iter().next()?;
        let c = &self.coeff(k) * &lead.inv().ok()?;
        (other.scale(&c) == *self).then_some(c)
    }

    fn combine(&self, other: &Element, negate: bool) -> Element {
        assert_eq!(self.algebra, other.algebra, "elements of different algebras");
        let mut terms = self.terms.clone();
        for (k, v) in &other.terms {
            let e = terms.entry(*k).or_insert_with(|| self.ctx.zero());
            if negate {
                *e -= v;
            } else {
                *e += v;
            }
            if e.is_zero() {
                terms.remove(k);
            }
        }
        Element { terms, ..self.clone() }
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element#{}{{", self.algebra.0)?;
        for (i, (k, v)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{k}: {}", v.poly_text())?;
        }
        write!(f, "}}")
    }
}

impl Add for &Element {
    type Output = Element;
    /// Panics if the operands belong to different algebras.
    fn add(self, rhs: &Element) -> Element {
        self.combine(rhs, false)
    }
}

impl Sub for &Element {
    type Output = Element;
    /// Panics if the operands belong to different algebras.
    fn sub(self, rhs: &Element) -> Element {
        self.combine(rhs, true)
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(&self.ctx.integer(-1))
    }
}

/// Sparse element of `A ⊗ B` or `A ⊗ B ⊗ C`; keys are `[i, j, k]` with `k = 0` for
/// 2-tensors.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorElement {
    legs: Vec<AlgebraId>,
    ctx: &'static CycContext,
    terms: BTreeMap<[usize; 3], Cyc>,
}

impl TensorElement {
    pub fn new(legs: Vec<AlgebraId>, ctx: &'static CycContext, terms: BTreeMap<[usize; 3], Cyc>) -> TensorElement {
        assert!(legs.len() == 2 || legs.len() == 3);
        debug_assert!(terms.values().all(|v| !v.is_zero()));
        TensorElement { legs, ctx, terms }
    }

    pub fn zero(legs: Vec<AlgebraId>, ctx: &'static CycContext) -> TensorElement {
        TensorElement::new(legs, ctx, BTreeMap::new())
    }

    /// `x ⊗ y (⊗ z)` for elements of possibly different algebras.
    pub fn outer(factors: &[&Element]) -> TensorElement {
        let ctx = factors[0].ctx;
        let legs = factors.iter().map(|f| f.algebra).collect();
        let mut acc = Accumulator::new();
        match factors {
            [x, y] => {
                for (i, a) in &x.terms {
                    for (j, b) in &y.terms {
                        acc.add_product([*i, *j, 0], a, b);
                    }
                }
            }
            [x, y, z] => {
                for (i, a) in &x.terms {
                    for (j, b) in &y.terms {
                        let ab = a * b;
                        for (k, c) in &z.terms {
                            acc.add_product([*i, *j, *k], &ab, c);
                        }
                    }
                }
            }
            _ => panic!("tensor arity must be 2 or 3"),
        }
        TensorElement::new(legs, ctx, acc.into_map())
    }

    pub fn arity(&self) -> usize {
        self.legs.len()
    }

    pub fn legs(&self) -> &[AlgebraId] {
        &self.legs
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[usize; 3], &Cyc)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, key: [usize; 3]) -> Cyc {
        self.terms.get(&key).cloned().unwrap_or_else(|| self.ctx.zero())
    }

    /// Permutes legs: output leg `i` is input leg `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> TensorElement {
        assert_eq!(perm.len(), self.arity());
        let legs = perm.iter().map(|&p| self.legs[p]).collect();
        let terms = self
            .terms
            .iter()
            .map(|(k, v)| {
                let mut key = [0; 3];
                for (i, &p) in perm.iter().enumerate() {
                    key[i] = k[p];
                }
                (key, v.clone())
            })
            .collect();
        TensorElement { legs, ctx: self.ctx, terms }
    }

    /// Swaps the two legs of a 2-tensor.
    pub fn flip(&self) -> TensorElement {
        self.permute(&[1, 0])
    }

    /// Embeds a 2-tensor into three legs at positions `(a, b)`, filling the remaining leg
    /// with `unit` (the `R_12`, `R_13`, `R_23` construction).
    pub fn embed(&self, positions: (usize, usize), unit: &Element) -> TensorElement {
        assert_eq!(self.arity(), 2);
        let third = 3 - positions.0 - positions.1;
        let mut legs = vec![unit.algebra; 3];
        legs[positions.0] = self.legs[0];
        legs[positions.1] = self.legs[1];
        let mut acc = Accumulator::new();
        for (k, v) in &self.terms {
            for (u, c) in &unit.terms {
                let mut key = [0; 3];
                key[positions.0] = k[0];
                key[positions.1] = k[1];
                key[third] = *u;
                acc.add_product(key, v, c);
            }
        }
        TensorElement::new(legs, self.ctx, acc.into_map())
    }

    pub fn scale(&self, c: &Cyc) -> TensorElement {
        let terms = if c.is_zero() {
            BTreeMap::new()
        } else {
            self.terms.iter().map(|(k, v)| (*k, v * c)).collect()
        };
        TensorElement { legs: self.legs.clone(), ctx: self.ctx, terms }
    }

    fn combine(&self, other: &TensorElement, negate: bool) -> TensorElement {
        assert_eq!(self.legs, other.legs, "tensors over different algebras");
        let mut terms = self.terms.clone();
        for (k, v) in &other.terms {
            let e = terms.entry(*k).or_insert_with(|| self.ctx.zero());
            if negate {
                *e -= v;
            } else {
                *e += v;
            }
            if e.is_zero() {
                terms.remove(k);
            }
        }
        TensorElement { legs: self.legs.clone(), ctx: self.ctx, terms }
    }

    /// Projects one leg through a linear functional given by its values on the basis.
    pub fn contract_leg(&self, leg: usize, functional: &[Cyc], keep: AlgebraId) -> Element {
        assert_eq!(self.arity(), 2);
        let mut acc = Accumulator::new();
        for (k, v) in &self.terms {
            let f = &functional[k[leg]];
            if !f.is_zero() {
                acc.add_product(k[1 - leg], v, f);
            }
        }
        Element { algebra: keep, ctx: self.ctx, terms: acc.into_map() }
    }
}

impl Add for &TensorElement {
    type Output = TensorElement;
    fn add(self, rhs: &TensorElement) -> TensorElement {
        self.combine(rhs, false)
    }
}

impl Sub for &TensorElement {
    type Output = TensorElement;
    fn sub(self, rhs: &TensorElement) -> TensorElement {
        self.combine(rhs, true)
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tensor{:?}{{", self.legs.iter().map(|l| l.0).collect::<Vec<_>>())?;
        for (i, (k, v)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}: {}", &k[..self.legs.len()], v.poly_text())?;
        }
        write!(f, "}}")
    }
}

/// Builds a tabulated Hopf algebra from a multiplication rule on basis pairs and a
/// coproduct and antipode on basis elements; the inverse antipode is obtained by exact
/// matrix inversion.
pub fn tabulate(
    name: String,
    ctx: &'static CycContext,
    labels: Vec<String>,
    unit: Terms,
    counit: Vec<Cyc>,
    product: impl Fn(usize, usize) -> Terms,
    coproduct: impl Fn(usize) -> Terms2,
    antipode: impl Fn(usize) -> Terms,
) -> Result<HopfAlgebra, HopfError> {
    let dim = labels.len();
    let products: Vec<Terms> = (0..dim).flat_map(|i| (0..dim).map(move |j| (i, j))).map(|(i, j)| product(i, j)).collect();
    let coproducts: Vec<Terms2> = (0..dim).map(&coproduct).collect();
    let s: Vec<Terms> = (0..dim).map(&antipode).collect();
    let s_inv = invert_linear_map(ctx, dim, &s)?;
    let table = TableStructure::new(dim, products, coproducts, s, s_inv);
    Ok(HopfAlgebraBuilder {
        name,
        ctx,
        labels,
        unit,
        counit,
        structure: Arc::new(table),
        dual_of: None,
        generators: Vec::new(),
    }
    .build())
}

/// Inverts a linear map given by the images of basis vectors.
pub fn invert_linear_map(ctx: &'static CycContext, dim: usize, images: &[Terms]) -> Result<Vec<Terms>, HopfError> {
    // matrix with column k = image of e_k
    let mut rows: Vec<SparseVector> = vec![SparseVector::new(); dim];
    for (k, img) in images.iter().enumerate() {
        for (r, v) in img {
            rows[*r].insert(k, v.clone());
        }
    }
    let inv = linalg::invert_matrix(&Matrix::from_rows(ctx, dim, rows))?;
    let mut out: Vec<Terms> = vec![Vec::new(); dim];
    for r in 0..dim {
        for (c, v) in inv.row(r) {
            out[*c].push((r, v.clone()));
        }
    }
    Ok(out)
}
