//! Dual and co-opposite Hopf algebras.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use super::{Accumulator, HopfAlgebra, HopfAlgebraBuilder, LazyCache, Structure, Terms, Terms2};

/// `H*` on the dual basis: product is the transpose of `Δ_H`, coproduct the transpose of
/// `m_H`, antipode the transpose of `S_H`. Each transpose is indexed on first use.
struct DualStructure {
    base: HopfAlgebra,
    products: OnceLock<HashMap<(usize, usize), Arc<Terms>>>,
    coproducts: OnceLock<Vec<Arc<Terms2>>>,
    antipode: OnceLock<Vec<Arc<Terms>>>,
    antipode_inverse: OnceLock<Vec<Arc<Terms>>>,
    empty: Arc<Terms>,
}

fn transpose_map(dim: usize, image: impl Fn(usize) -> Arc<Terms>) -> Vec<Arc<Terms>> {
    let mut out: Vec<Terms> = vec![Vec::new(); dim];
    for j in 0..dim {
        for (k, c) in image(j).iter() {
            out[*k].push((j, c.clone()));
        }
    }
    out.into_iter().map(Arc::new).collect()
}

impl Structure for DualStructure {
    fn dim(&self) -> usize {
        self.base.dim()
    }

    fn product(&self, i: usize, j: usize) -> Arc<Terms> {
        let index = self.products.get_or_init(|| {
            let s = self.base.structure();
            let mut acc: HashMap<(usize, usize), Terms> = HashMap::new();
            for k in 0..self.dim() {
                for (pair, c) in s.coproduct(k).iter() {
                    acc.entry(*pair).or_default().push((k, c.clone()));
                }
            }
            acc.into_iter().map(|(k, v)| (k, Arc::new(v))).collect()
        });
        index.get(&(i, j)).cloned().unwrap_or_else(|| self.empty.clone())
    }

    fn coproduct(&self, k: usize) -> Arc<Terms2> {
        let table = self.coproducts.get_or_init(|| {
            let dim = self.dim();
            let s = self.base.structure();
            let mut out: Vec<Terms2> = vec![Vec::new(); dim];
            for i in 0..dim {
                for j in 0..dim {
                    for (r, c) in s.product(i, j).iter() {
                        out[*r].push(((i, j), c.clone()));
                    }
                }
            }
            out.into_iter().map(Arc::new).collect()
        });
        table[k].clone()
    }

    fn antipode(&self, k: usize) -> Arc<Terms> {
        let s = self.base.structure();
        self.antipode.get_or_init(|| transpose_map(self.dim(), |j| s.antipode(j)))[k].clone()
    }

    fn antipode_inverse(&self, k: usize) -> Arc<Terms> {
        let s = self.base.structure();
        self.antipode_inverse.get_or_init(|| transpose_map(self.dim(), |j| s.antipode_inverse(j)))[k].clone()
    }
}

/// The dual Hopf algebra on the dual basis, with `⟨e^i, e_j⟩ = δ_ij`.
pub fn dual_hopf(h: &HopfAlgebra) -> HopfAlgebra {
    let ctx = h.context();
    let unit: Terms = h
        .counit_vector()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k, c.clone()))
        .collect();
    let mut counit = vec![ctx.zero(); h.dim()];
    for (k, c) in h.unit_terms() {
        counit[*k] = c.clone();
    }
    HopfAlgebraBuilder {
        name: format!("dual({})", h.name()),
        ctx,
        labels: h.labels().iter().map(|l| format!("bar({l})")).collect(),
        unit,
        counit,
        structure: Arc::new(DualStructure {
            base: h.clone(),
            products: OnceLock::new(),
            coproducts: OnceLock::new(),
            antipode: OnceLock::new(),
            antipode_inverse: OnceLock::new(),
            empty: Arc::new(Vec::new()),
        }),
        dual_of: Some(h.id()),
        generators: Vec::new(),
    }
    .build()
}

struct CopStructure {
    inner: Arc<dyn Structure>,
    flipped: LazyCache<Terms2>,
}

impl Structure for CopStructure {
    fn dim(&self) -> usize {
        self.inner.dim()
    }
    fn product(&self, i: usize, j: usize) -> Arc<Terms> {
        self.inner.product(i, j)
    }
    fn coproduct(&self, k: usize) -> Arc<Terms2> {
        self.flipped.get_or_compute(k, || {
            let mut acc = Accumulator::new();
            for ((a, b), c) in self.inner.coproduct(k).iter() {
                acc.add((*b, *a), c);
            }
            acc.into_terms()
        })
    }
    fn antipode(&self, k: usize) -> Arc<Terms> {
        self.inner.antipode_inverse(k)
    }
    fn antipode_inverse(&self, k: usize) -> Arc<Terms> {
        self.inner.antipode(k)
    }
}

/// `H^cop`: the flipped coproduct, with antipode `S^{-1}`.
pub fn coopposite(h: &HopfAlgebra) -> HopfAlgebra {
    let mut b = h.builder_from();
    b.name = format!("cop({})", h.name());
    b.structure = Arc::new(CopStructure {
        flipped: LazyCache::new(h.dim()),
        inner: h.structure().clone(),
    });
    b.build()
}
