//! The Radford Hopf algebras `R_mn(q)` and the Taft algebras, with the distinguished dual
//! elements `α`, `β` and checks of the closed-form dual structure.
//!
//! `R_mn(q)` is generated by `g`, `x` with `g^{mn} = 1`, `x^n = g^n − 1`, `xg = q gx`,
//! `Δ(g) = g⊗g`, `Δ(x) = x⊗g + 1⊗x`. Here `ξ = ζ_{mn}` and `q = ξ^m`. The Taft algebra
//! `A_n(q)` is the case `m = 1`, where the relation becomes `x^n = 0`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cyclotomic::linalg::{self, Matrix, SparseVector};
use crate::cyclotomic::{make_context, Cyc, CycContext};
use crate::hopf::{
    self, coopposite, dual_hopf, verify_hopf_axioms, Accumulator, AxiomCheck, AxiomReport, CheckReport, Depth, Element,
    HopfAlgebra, HopfError, TensorElement, Terms, Terms2,
};
use crate::qcalc::QTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    Radford,
    Taft,
}

/// A constructed family member `R_mn(q)` or `A_n(q)`.
#[derive(Debug, Clone)]
pub struct Family {
    pub kind: FamilyKind,
    /// `1` for Taft algebras.
    pub m: u32,
    pub n: u32,
    pub ctx: &'static CycContext,
    pub xi: Cyc,
    pub q: Cyc,
    pub h: HopfAlgebra,
    pub axioms: AxiomReport,
}

impl Family {
    /// `"radford(m,n)"` or `"taft(n)"`.
    pub fn descriptor(&self) -> String {
        match self.kind {
            FamilyKind::Radford => format!("radford({},{})", self.m, self.n),
            FamilyKind::Taft => format!("taft({})", self.n),
        }
    }

    /// Order of `g`, which is `mn`.
    pub fn group_order(&self) -> usize {
        (self.m * self.n) as usize
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        (i % self.group_order()) * self.n as usize + j
    }

    /// `g^i` for any integer `i`.
    pub fn g_pow(&self, i: i64) -> Element {
        self.h.basis(self.index(i.rem_euclid(self.group_order() as i64) as usize, 0))
    }

    /// `x`; for `n = 1` this is `g − 1`.
    pub fn x(&self) -> Element {
        if self.n == 1 {
            &self.g_pow(1) - &self.h.one()
        } else {
            self.h.basis(self.index(0, 1))
        }
    }

    /// The grouplikes `g^i`, `0 ≤ i < mn`.
    pub fn grouplike_candidates(&self) -> Vec<Element> {
        (0..self.group_order() as i64).map(|i| self.g_pow(i)).collect()
    }

    pub fn qtable(&self) -> QTable {
        QTable::new(self.q.clone())
    }
}

/// Builds `R_mn(q)`, `m ≥ 2`, `n ≥ 1`, and runs the full axiom suite.
pub fn build_radford(m: u32, n: u32) -> Result<Family, HopfError> {
    if m < 2 {
        return Err(HopfError::Invalid(format!("radford requires m >= 2, got m = {m}")));
    }
    if n < 1 {
        return Err(HopfError::Invalid("radford requires n >= 1".into()));
    }
    build_family(FamilyKind::Radford, m, n)
}

/// Builds the Taft algebra `A_n(q)`, `n ≥ 2`, and runs the full axiom suite.
pub fn build_taft(n: u32) -> Result<Family, HopfError> {
    if n < 2 {
        return Err(HopfError::Invalid(format!("taft requires n >= 2, got n = {n}")));
    }
    build_family(FamilyKind::Taft, 1, n)
}

fn build_family(kind: FamilyKind, m: u32, n: u32) -> Result<Family, HopfError> {
    let order = (m * n) as usize;
    let nn = n as usize;
    let ctx = make_context((m * n) as u64)?;
    let xi = ctx.zeta();
    let q = ctx.root_power(m as i64);
    let dim = order * nn;
    let idx = |i: usize, j: usize| (i % order) * nn + j;
    // q^e for e reduced mod n
    let qpow: Vec<Cyc> = (0..nn).map(|e| ctx.root_power((m as usize * e) as i64)).collect();

    let product = |a: usize, b: usize| -> Terms {
        let (i, j) = (a / nn, a % nn);
        let (k, l) = (b / nn, b % nn);
        let c = qpow[(j * k) % nn].clone();
        if j + l < nn {
            vec![(idx(i + k, j + l), c)]
        } else if kind == FamilyKind::Taft {
            Vec::new()
        } else {
            // x^{j+l} = (g^n − 1) x^{j+l−n}
            let mut t = vec![(idx(i + k + nn, j + l - nn), c.clone()), (idx(i + k, j + l - nn), -&c)];
            t.sort_by_key(|(k, _)| *k);
            t
        }
    };
    let mul_terms = |a: &Terms, b: &Terms| -> Terms {
        let mut acc = Accumulator::new();
        for (i, x) in a {
            for (j, y) in b {
                let xy = x * y;
                for (k, c) in product(*i, *j) {
                    acc.add_product(k, &xy, &c);
                }
            }
        }
        acc.into_terms()
    };
    let mul_tensor = |a: &Terms2, b: &Terms2| -> Terms2 {
        let mut acc = Accumulator::new();
        for ((a0, a1), x) in a {
            for ((b0, b1), y) in b {
                let xy = x * y;
                for (i, c) in product(*a0, *b0) {
                    let xyc = &xy * &c;
                    for (j, d) in product(*a1, *b1) {
                        acc.add_product((i, j), &xyc, &d);
                    }
                }
            }
        }
        acc.into_terms()
    };

    let one = ctx.one();
    // Δ(x^j) by repeated multiplication, then Δ(g^i x^j) = (g^i ⊗ g^i) Δ(x^j)
    let delta_x: Terms2 = if nn > 1 {
        vec![((idx(0, 0), idx(0, 1)), one.clone()), ((idx(0, 1), idx(1, 0)), one.clone())]
    } else {
        Vec::new()
    };
    let mut delta_xpow: Vec<Terms2> = vec![vec![((0, 0), one.clone())]];
    for j in 1..nn {
        let next = mul_tensor(&delta_xpow[j - 1], &delta_x);
        delta_xpow.push(next);
    }
    let coproduct = |k: usize| -> Terms2 {
        let (i, j) = (k / nn, k % nn);
        mul_tensor(&vec![((idx(i, 0), idx(i, 0)), one.clone())], &delta_xpow[j])
    };
    // S(x) = −x g^{-1}, S(g^i x^j) = S(x)^j g^{-i}
    let s_x: Terms = if nn > 1 {
        mul_terms(&vec![(idx(0, 1), -&one)], &vec![(idx(order - 1, 0), one.clone())])
    } else {
        Vec::new()
    };
    let mut s_xpow: Vec<Terms> = vec![vec![(0, one.clone())]];
    for j in 1..nn {
        let next = mul_terms(&s_xpow[j - 1], &s_x);
        s_xpow.push(next);
    }
    let antipode = |k: usize| -> Terms {
        let (i, j) = (k / nn, k % nn);
        mul_terms(&s_xpow[j], &vec![(idx(order - i, 0), one.clone())])
    };
    let labels: Vec<String> = (0..dim).map(|k| format!("g^{}x^{}", k / nn, k % nn)).collect();
    let counit: Vec<Cyc> = (0..dim).map(|k| if k % nn == 0 { one.clone() } else { ctx.zero() }).collect();
    let name = match kind {
        FamilyKind::Radford => format!("radford({m},{n})"),
        FamilyKind::Taft => format!("taft({n})"),
    };
    let h = hopf::tabulate(name, ctx, labels, vec![(0, one.clone())], counit, &product, &coproduct, &antipode)?;
    let mut gens = vec![h.basis(idx(1, 0))];
    if nn > 1 {
        gens.push(h.basis(idx(0, 1)));
    }
    let h = h.with_generators(&gens);
    let axioms = verify_hopf_axioms(&h, Depth::Full)?;
    if !axioms.passed() {
        let names: Vec<_> = axioms.failures().map(|c| c.name.clone()).collect();
        return Err(HopfError::Relation(format!("{} fails Hopf axioms: {}", h.name(), names.join(", "))));
    }
    Ok(Family { kind, m, n, ctx, xi, q, h, axioms })
}

/// `H*`, `(H*)^cop`, and the generators `α`, `β` (both as elements of `H*`).
#[derive(Debug, Clone)]
pub struct FamilyDual {
    pub dual: HopfAlgebra,
    pub cop: HopfAlgebra,
    pub alpha: Element,
    /// `None` when `n = 1`.
    pub beta: Option<Element>,
}

impl FamilyDual {
    /// `α^k` in `H*` for any integer `k` (`α` has order `mn`).
    pub fn alpha_pow(&self, k: i64, fam: &Family) -> Element {
        let e = k.rem_euclid(fam.group_order() as i64) as u32;
        self.dual.power(&self.alpha, e).expect("own element")
    }

    /// `α^i β^j` in `H*`.
    pub fn word(&self, i: i64, j: u32, fam: &Family) -> Element {
        let a = self.alpha_pow(i, fam);
        match &self.beta {
            Some(b) => {
                let bj = self.dual.power(b, j).expect("own element");
                self.dual.multiply(&a, &bj).expect("own element")
            }
            None if j == 0 => a,
            None => self.dual.zero(),
        }
    }

    /// The characters `α^{mk}`, `0 ≤ k < n`, for `n ≥ 2`; for `n = 1` every `α^k`,
    /// `0 ≤ k < m`, is a character of `k[Z_m]`.
    pub fn grouplike_candidates(&self, fam: &Family) -> Vec<Element> {
        if fam.n == 1 {
            (0..fam.m as i64).map(|k| self.alpha_pow(k, fam)).collect()
        } else {
            (0..fam.n as i64).map(|k| self.alpha_pow(fam.m as i64 * k, fam)).collect()
        }
    }
}

/// Builds `H*` and `(H*)^cop` and the elements `α`, `β`, checking their relations.
pub fn build_dual(fam: &Family) -> Result<FamilyDual, HopfError> {
    let dual = dual_hopf(&fam.h);
    let (alpha, beta) = alpha_beta(fam, &dual)?;
    let mut gens = vec![alpha.clone()];
    gens.extend(beta.iter().cloned());
    let dual = dual.with_generators(&gens);
    let cop = coopposite(&dual);
    Ok(FamilyDual { dual, cop, alpha, beta })
}

/// `α = Σ ξ^i ḡ^i`, `β = Σ ḡ^i x`; checks `α^{mn} = ε`, `β^n = 0`, `βα = ξαβ` and that the
/// words `α^i β^j` span `H*`.
pub fn alpha_beta(fam: &Family, dual: &HopfAlgebra) -> Result<(Element, Option<Element>), HopfError> {
    let order = fam.group_order();
    let alpha = dual.element_from_terms((0..order).map(|i| (fam.index(i, 0), fam.ctx.root_power(i as i64))));
    let beta = (fam.n > 1).then(|| dual.element_from_terms((0..order).map(|i| (fam.index(i, 1), fam.ctx.one()))));
    if dual.power(&alpha, order as u32)? != dual.one() {
        return Err(HopfError::Relation("alpha^{mn} != eps".into()));
    }
    if let Some(b) = &beta {
        if !dual.power(b, fam.n)?.is_zero() {
            return Err(HopfError::Relation("beta^n != 0".into()));
        }
        let ba = dual.multiply(b, &alpha)?;
        let ab = dual.multiply(&alpha, b)?;
        if ba != ab.scale(&fam.xi) {
            return Err(HopfError::Relation("beta alpha != xi alpha beta".into()));
        }
    }
    let words = word_vectors(fam, dual, &alpha, beta.as_ref())?;
    let rows = words.into_iter().map(|(_, w)| w.as_map().clone()).collect();
    let rank = linalg::echelon(&Matrix::from_rows(fam.ctx, dual.dim(), rows), usize::MAX)?.rank();
    if rank != dual.dim() {
        return Err(HopfError::Relation(format!("alpha, beta words span rank {rank} < {}", dual.dim())));
    }
    Ok((alpha, beta))
}

fn word_vectors(
    fam: &Family,
    dual: &HopfAlgebra,
    alpha: &Element,
    beta: Option<&Element>,
) -> Result<Vec<((usize, usize), Element)>, HopfError> {
    let mut out = Vec::new();
    let mut bj = dual.one();
    for j in 0..fam.n as usize {
        let mut aibj = bj.clone();
        for i in 0..fam.group_order() {
            out.push(((i, j), aibj.clone()));
            aibj = dual.multiply(alpha, &aibj)?;
        }
        if let Some(b) = beta {
            bj = dual.multiply(&bj, b)?;
        }
    }
    Ok(out)
}

/// Coordinates with respect to the word basis `{α^i β^j}` of `H*`.
pub struct WordBasis {
    /// Column `c` of the inverse change of basis: coordinates of the dual basis vector `c`.
    inverse: Matrix,
    labels: Vec<(usize, usize)>,
}

impl WordBasis {
    pub fn new(fam: &Family, fd: &FamilyDual) -> Result<WordBasis, HopfError> {
        let words = word_vectors(fam, &fd.dual, &fd.alpha, fd.beta.as_ref())?;
        let dim = fd.dual.dim();
        // column w = expansion of word w
        let mut rows: Vec<SparseVector> = vec![SparseVector::new(); dim];
        for (w, (_, e)) in words.iter().enumerate() {
            for (k, c) in e.iter() {
                rows[k].insert(w, c.clone());
            }
        }
        let inverse = linalg::invert_matrix(&Matrix::from_rows(fam.ctx, dim, rows))?;
        Ok(WordBasis { inverse, labels: words.into_iter().map(|(l, _)| l).collect() })
    }

    /// `(i, j) ↦` coefficient of `α^i β^j`.
    pub fn coordinates(&self, e: &Element) -> BTreeMap<(usize, usize), Cyc> {
        let v: SparseVector = e.as_map().clone();
        self.inverse.mul_vec(&v).into_iter().map(|(w, c)| (self.labels[w], c)).collect()
    }

    /// Coordinates of a 2-tensor over `H*` (or its co-opposite) in words ⊗ words.
    pub fn tensor_coordinates(&self, t: &TensorElement) -> BTreeMap<((usize, usize), (usize, usize)), Cyc> {
        let mut acc = Accumulator::new();
        for (k, c) in t.iter() {
            let left = self.inverse_column(k[0]);
            let right = self.inverse_column(k[1]);
            for (a, x) in &left {
                let cx = c * x;
                for (b, y) in &right {
                    acc.add_product((*a, *b), &cx, y);
                }
            }
        }
        acc.into_map().into_iter().map(|((a, b), c)| ((self.labels[a], self.labels[b]), c)).collect()
    }

    fn inverse_column(&self, k: usize) -> Vec<(usize, Cyc)> {
        (0..self.inverse.rows())
            .filter_map(|r| self.inverse.row(r).get(&k).map(|c| (r, c.clone())))
            .collect()
    }
}

/// Closed form of `ḡ^i x^j ∗ ḡ^k x^l` in `H*`: zero unless `k ≡ i+j (mod mn)` and
/// `j+l < n`, in which case it is `binom(l+j, j)_q ḡ^i x^{j+l}`.
pub fn dual_product_closed_form(fam: &Family, dual: &HopfAlgebra, a: usize, b: usize, qt: &QTable) -> Element {
    let nn = fam.n as usize;
    let (i, j) = (a / nn, a % nn);
    let (k, l) = (b / nn, b % nn);
    if k != (i + j) % fam.group_order() || l + j >= nn {
        return dual.zero();
    }
    dual.element_from_terms([(fam.index(i, j + l), qt.binomial((l + j) as u32, j as u32))])
}

/// Exhaustive product table check plus the closed forms of `Δ`, `ε`, `S` on `α`, `β` in
/// `(H*)^cop`. Fails with `Budget` when the table exceeds `full_bound` basis vectors.
pub fn verify_dual_structure(fam: &Family, fd: &FamilyDual, full_bound: usize) -> Result<CheckReport, HopfError> {
    let dual = &fd.dual;
    let cop = &fd.cop;
    if dual.dim() > full_bound {
        return Err(HopfError::Budget { dim: dual.dim(), budget: full_bound });
    }
    let qt = fam.qtable();
    let mut checks = Vec::new();

    let mut witness = None;
    'table: for a in 0..dual.dim() {
        for b in 0..dual.dim() {
            let got = dual.multiply(&dual.basis(a), &dual.basis(b))?;
            if got != dual_product_closed_form(fam, dual, a, b, &qt) {
                witness = Some(format!("{} * {} = {}", dual.labels()[a], dual.labels()[b], dual.render(&got)));
                break 'table;
            }
        }
    }
    checks.push(AxiomCheck::from_witness("dual_product_table", dual.dim() * dual.dim(), witness));

    let order = fam.group_order() as i64;
    let m = fam.m as i64;
    let alpha_c = cop.adopt(&fd.alpha);
    let a_pow = |k: i64| cop.adopt(&fd.alpha_pow(k, fam));
    let word = |i: i64, j: u32| cop.adopt(&fd.word(i, j, fam));

    let rel = fd.alpha_pow(order, fam) == dual.one();
    checks.push(AxiomCheck::from_witness("alpha_order", 1, (!rel).then(|| "alpha^{mn} != eps".into())));
    checks.push(AxiomCheck::from_witness(
        "counit_alpha",
        1,
        (!cop.counit(&alpha_c)?.is_one()).then(|| "eps(alpha) != 1".into()),
    ));

    // Δ(α) = α⊗α + (ξ^n − 1) Σ_{k+l=n, 0<k<n} 1/((k)!(l)!) α^{mk+1}β^l ⊗ αβ^k
    let mut expected = cop.tensor(&alpha_c, &alpha_c)?;
    let lead = &fam.ctx.root_power(fam.n as i64) - &fam.ctx.one();
    for k in 1..fam.n {
        let l = fam.n - k;
        let c = &lead * &(&qt.factorial(k) * &qt.factorial(l)).inv()?;
        let term = cop.tensor(&word(m * k as i64 + 1, l), &word(1, k))?.scale(&c);
        expected = &expected + &term;
    }
    let got = cop.comultiply(&alpha_c)?;
    checks.push(AxiomCheck::from_witness(
        "cop_coproduct_alpha",
        1,
        (got != expected).then(|| format!("Delta(alpha) = {got:?}")),
    ));
    let s_alpha = cop.antipode(&alpha_c)?;
    checks.push(AxiomCheck::from_witness(
        "cop_antipode_alpha",
        1,
        (s_alpha != a_pow(order - 1)).then(|| format!("S(alpha) = {}", cop.render(&s_alpha))),
    ));

    if let Some(beta) = &fd.beta {
        let beta_c = cop.adopt(beta);
        let ok = dual.power(beta, fam.n)?.is_zero();
        checks.push(AxiomCheck::from_witness("beta_nilpotent", 1, (!ok).then(|| "beta^n != 0".into())));
        let ok = dual.multiply(beta, &fd.alpha)? == dual.multiply(&fd.alpha, beta)?.scale(&fam.xi);
        checks.push(AxiomCheck::from_witness("beta_alpha_commutation", 1, (!ok).then(|| "beta alpha != xi alpha beta".into())));
        checks.push(AxiomCheck::from_witness(
            "counit_beta",
            1,
            (!cop.counit(&beta_c)?.is_zero()).then(|| "eps(beta) != 0".into()),
        ));
        let expected = &cop.tensor(&beta_c, &cop.one())? + &cop.tensor(&a_pow(m), &beta_c)?;
        let got = cop.comultiply(&beta_c)?;
        checks.push(AxiomCheck::from_witness(
            "cop_coproduct_beta",
            1,
            (got != expected).then(|| format!("Delta(beta) = {got:?}")),
        ));
        let expected = -&cop.multiply(&a_pow(-m), &beta_c)?;
        let got = cop.antipode(&beta_c)?;
        checks.push(AxiomCheck::from_witness(
            "cop_antipode_beta",
            1,
            (got != expected).then(|| format!("S(beta) = {}", cop.render(&got))),
        ));
    }
    Ok(CheckReport { subject: format!("dual structure of {}", fam.descriptor()), checks })
}
