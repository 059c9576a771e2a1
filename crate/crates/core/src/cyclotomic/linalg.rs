//! Exact linear algebra over `Q(ζ_N)`: reduced row echelon form, kernels, linear solves
//! and inverses.
//!
//! Matrices are stored as sparse rows. Elimination picks pivots by a Markowitz-style rule
//! (shortest remaining row, then the column touching the fewest rows) to limit fill-in;
//! below [`DENSE_CUTOFF`] a plain dense elimination is used instead. Both paths reduce to
//! the same row space, though pivot columns may differ. Every result is re-checked by
//! substitution.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{Cyc, CycContext, CycError};

/// Matrices with both dimensions below this size are eliminated densely.
pub const DENSE_CUTOFF: usize = 64;

pub type SparseVector = BTreeMap<usize, Cyc>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("matrix is singular")]
    Singular,
    #[error("matrix must be square, got {0}x{1}")]
    NotSquare(usize, usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("substitution check failed after elimination")]
    VerificationFailed,
    #[error(transparent)]
    Field(#[from] CycError),
}

/// A sparse matrix over `Q(ζ_N)` stored row-wise.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    ctx: &'static CycContext,
    rows: usize,
    cols: usize,
    data: Vec<SparseVector>,
}

impl Matrix {
    pub fn zeros(ctx: &'static CycContext, rows: usize, cols: usize) -> Matrix {
        Matrix { ctx, rows, cols, data: vec![SparseVector::new(); rows] }
    }

    pub fn identity(ctx: &'static CycContext, n: usize) -> Matrix {
        let mut m = Matrix::zeros(ctx, n, n);
        for i in 0..n {
            m.set(i, i, ctx.one());
        }
        m
    }

    pub fn from_rows(ctx: &'static CycContext, cols: usize, rows: Vec<SparseVector>) -> Matrix {
        debug_assert!(rows.iter().all(|r| r.keys().all(|&c| c < cols)));
        let rows: Vec<SparseVector> =
            rows.into_iter().map(|r| r.into_iter().filter(|(_, v)| !v.is_zero()).collect()).collect();
        Matrix { ctx, rows: rows.len(), cols, data: rows }
    }

    pub fn from_dense(ctx: &'static CycContext, rows: Vec<Vec<Cyc>>) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .into_iter()
            .map(|r| r.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect())
            .collect::<Vec<SparseVector>>();
        Matrix { ctx, rows: data.len(), cols, data }
    }

    pub fn context(&self) -> &'static CycContext {
        self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn row(&self, r: usize) -> &SparseVector {
        &self.data[r]
    }

    pub fn get(&self, r: usize, c: usize) -> Cyc {
        self.data[r].get(&c).cloned().unwrap_or_else(|| self.ctx.zero())
    }

    pub fn set(&mut self, r: usize, c: usize, v: Cyc) {
        assert!(r < self.rows && c < self.cols);
        if v.is_zero() {
            self.data[r].remove(&c);
        } else {
            self.data[r].insert(c, v);
        }
    }

    pub fn push_row(&mut self, row: SparseVector) {
        debug_assert!(row.keys().all(|&c| c < self.cols));
        self.data.push(row.into_iter().filter(|(_, v)| !v.is_zero()).collect());
        self.rows += 1;
    }

    pub fn mul_vec(&self, x: &SparseVector) -> SparseVector {
        let mut out = SparseVector::new();
        for (r, row) in self.data.iter().enumerate() {
            let mut acc = self.ctx.zero();
            // iterate over the shorter side
            if row.len() <= x.len() {
                for (c, a) in row {
                    if let Some(b) = x.get(c) {
                        acc.add_product(a, b);
                    }
                }
            } else {
                for (c, b) in x {
                    if let Some(a) = row.get(c) {
                        acc.add_product(a, b);
                    }
                }
            }
            if !acc.is_zero() {
                out.insert(r, acc);
            }
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::Dimension { expected: self.cols, got: other.rows });
        }
        let mut out = Matrix::zeros(self.ctx, self.rows, other.cols);
        for (r, row) in self.data.iter().enumerate() {
            let mut acc = SparseVector::new();
            for (k, a) in row {
                for (c, b) in &other.data[*k] {
                    acc.entry(*c).or_insert_with(|| self.ctx.zero()).add_product(a, b);
                }
            }
            acc.retain(|_, v| !v.is_zero());
            out.data[r] = acc;
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.ctx, self.cols, self.rows);
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                out.data[*c].insert(r, v.clone());
            }
        }
        out
    }

    /// Appends the columns of `other` on the right.
    fn augment(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut out = self.clone();
        for (r, row) in other.data.iter().enumerate() {
            for (c, v) in row {
                out.data[r].insert(self.cols + c, v.clone());
            }
        }
        out.cols += other.cols;
        out
    }
}

/// Reduced row echelon form restricted to pivots in columns `< pivot_limit`.
#[derive(Debug, Clone)]
pub struct Echelon {
    /// `(pivot column, reduced row)` sorted by pivot column; each row is monic at its pivot.
    pub pivots: Vec<(usize, SparseVector)>,
    /// Rows left with entries only in columns `>= pivot_limit`.
    pub residual: Vec<SparseVector>,
    pub cols: usize,
    pub pivot_limit: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn pivot_columns(&self) -> BTreeSet<usize> {
        self.pivots.iter().map(|(c, _)| *c).collect()
    }
}

/// Gauss-Jordan elimination, choosing dense or sparse elimination by size.
pub fn echelon(m: &Matrix, pivot_limit: usize) -> Result<Echelon, LinalgError> {
    if m.rows < DENSE_CUTOFF && m.cols < DENSE_CUTOFF {
        echelon_dense(m, pivot_limit)
    } else {
        echelon_sparse(m, pivot_limit)
    }
}

pub fn echelon_dense(m: &Matrix, pivot_limit: usize) -> Result<Echelon, LinalgError> {
    let ctx = m.ctx;
    let mut a: Vec<Vec<Cyc>> = m
        .data
        .iter()
        .map(|row| {
            let mut dense = vec![ctx.zero(); m.cols];
            for (c, v) in row {
                dense[*c] = v.clone();
            }
            dense
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut next = 0;
    for col in 0..pivot_limit.min(m.cols) {
        let Some(p) = (next..a.len()).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(next, p);
        let inv = a[next][col].inv()?;
        for c in col..m.cols {
            if !a[next][c].is_zero() {
                a[next][c] = &a[next][c] * &inv;
            }
        }
        let pivot_row = a[next].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == next || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for c in col..m.cols {
                if !pivot_row[c].is_zero() {
                    let t = &f * &pivot_row[c];
                    row[c] -= &t;
                }
            }
        }
        pivot_cols.push(col);
        next += 1;
    }
    let to_sparse = |row: &Vec<Cyc>| -> SparseVector {
        row.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(c, v)| (c, v.clone())).collect()
    };
    let pivots = pivot_cols.iter().enumerate().map(|(i, &c)| (c, to_sparse(&a[i]))).collect();
    let residual = a[next..].iter().map(to_sparse).filter(|r: &SparseVector| !r.is_empty()).collect();
    Ok(Echelon { pivots, residual, cols: m.cols, pivot_limit })
}

pub fn echelon_sparse(m: &Matrix, pivot_limit: usize) -> Result<Echelon, LinalgError> {
    let mut rows: Vec<SparseVector> = m.data.iter().filter(|r| !r.is_empty()).cloned().collect();
    let mut col_rows: HashMap<usize, BTreeSet<usize>> = HashMap::new();
    for (r, row) in rows.iter().enumerate() {
        for &c in row.keys() {
            col_rows.entry(c).or_default().insert(r);
        }
    }
    let eligible = |row: &SparseVector| row.range(..pivot_limit).count();
    // active rows keyed by number of eligible entries
    let mut active: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut weight = vec![0usize; rows.len()];
    for (r, row) in rows.iter().enumerate() {
        weight[r] = eligible(row);
        active.insert((weight[r], r));
    }
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    while let Some(&(w, r)) = active.iter().next() {
        active.remove(&(w, r));
        if w == 0 {
            continue;
        }
        let col = *rows[r]
            .range(..pivot_limit)
            .map(|(c, _)| c)
            .min_by_key(|c| (col_rows.get(c).map_or(0, |s| s.len()), **c))
            .expect("row has an eligible entry");
        let inv = rows[r][&col].inv()?;
        for v in rows[r].values_mut() {
            *v = &*v * &inv;
        }
        let pivot_row = rows[r].clone();
        let targets: Vec<usize> = col_rows[&col].iter().copied().filter(|&s| s != r).collect();
        for s in targets {
            let f = rows[s][&col].clone();
            let was_active = active.remove(&(weight[s], s));
            for (c, pv) in &pivot_row {
                let t = &f * pv;
                let entry = rows[s].entry(*c).or_insert_with(|| m.ctx.zero());
                let fresh = entry.is_zero();
                *entry -= &t;
                if entry.is_zero() {
                    rows[s].remove(c);
                    if let Some(set) = col_rows.get_mut(c) {
                        set.remove(&s);
                    }
                } else if fresh {
                    col_rows.entry(*c).or_default().insert(s);
                }
            }
            if was_active {
                weight[s] = eligible(&rows[s]);
                active.insert((weight[s], s));
            }
        }
        pivots.push((col, r));
    }
    pivots.sort();
    let pivot_rows: BTreeSet<usize> = pivots.iter().map(|(_, r)| *r).collect();
    let residual = rows
        .iter()
        .enumerate()
        .filter(|(r, row)| !pivot_rows.contains(r) && !row.is_empty())
        .map(|(_, row)| row.clone())
        .collect();
    let pivots = pivots.into_iter().map(|(c, r)| (c, std::mem::take(&mut rows[r]))).collect();
    Ok(Echelon { pivots, residual, cols: m.cols, pivot_limit })
}

/// A basis of `{x : A x = 0}`, one vector per free column (ascending), each with a `1`
/// in its free column.
pub fn nullspace(a: &Matrix) -> Result<Vec<SparseVector>, LinalgError> {
    let ech = echelon(a, a.cols)?;
    let basis = kernel_from_echelon(&ech, a.ctx);
    for v in &basis {
        if !a.mul_vec(v).is_empty() {
            return Err(LinalgError::VerificationFailed);
        }
    }
    Ok(basis)
}

fn kernel_from_echelon(ech: &Echelon, ctx: &'static CycContext) -> Vec<SparseVector> {
    let pivot_cols = ech.pivot_columns();
    let mut basis: BTreeMap<usize, SparseVector> = (0..ech.pivot_limit)
        .filter(|c| !pivot_cols.contains(c))
        .map(|c| (c, SparseVector::from([(c, ctx.one())])))
        .collect();
    for (pc, row) in &ech.pivots {
        for (c, v) in row.range(..ech.pivot_limit) {
            if c != pc {
                basis.get_mut(c).expect("non-pivot column is free").insert(*pc, -v);
            }
        }
    }
    basis.into_values().collect()
}

/// Solves `A x = b`. Returns `Ok(None)` when the system is inconsistent; otherwise the
/// solution with all free variables set to zero.
pub fn solve_linear(a: &Matrix, b: &SparseVector) -> Result<Option<SparseVector>, LinalgError> {
    if let Some((&k, _)) = b.iter().next_back() {
        if k >= a.rows {
            return Err(LinalgError::Dimension { expected: a.rows, got: k + 1 });
        }
    }
    let mut rhs = Matrix::zeros(a.ctx, a.rows, 1);
    for (r, v) in b {
        rhs.set(*r, 0, v.clone());
    }
    let ech = echelon(&a.augment(&rhs), a.cols)?;
    if !ech.residual.is_empty() {
        return Ok(None);
    }
    let x: SparseVector =
        ech.pivots.iter().filter_map(|(c, row)| row.get(&a.cols).map(|v| (*c, v.clone()))).collect();
    let check: SparseVector = a.mul_vec(&x);
    let b_clean: SparseVector = b.iter().filter(|(_, v)| !v.is_zero()).map(|(k, v)| (*k, v.clone())).collect();
    if check != b_clean {
        return Err(LinalgError::VerificationFailed);
    }
    Ok(Some(x))
}

pub fn invert_matrix(a: &Matrix) -> Result<Matrix, LinalgError> {
    if a.rows != a.cols {
        return Err(LinalgError::NotSquare(a.rows, a.cols));
    }
    let n = a.rows;
    let ech = echelon(&a.augment(&Matrix::identity(a.ctx, n)), n)?;
    if ech.rank() < n {
        return Err(LinalgError::Singular);
    }
    let mut inv = Matrix::zeros(a.ctx, n, n);
    for (c, row) in &ech.pivots {
        for (k, v) in row.range(n..) {
            inv.set(*c, k - n, v.clone());
        }
    }
    if a.mul(&inv)? != Matrix::identity(a.ctx, n) {
        return Err(LinalgError::VerificationFailed);
    }
    Ok(inv)
}

/// Determinant by dense elimination. Intended for small matrices (tests, Vandermonde checks).
pub fn determinant(a: &Matrix) -> Result<Cyc, LinalgError> {
    if a.rows != a.cols {
        return Err(LinalgError::NotSquare(a.rows, a.cols));
    }
    let ctx = a.ctx;
    let n = a.rows;
    let mut m: Vec<Vec<Cyc>> = (0..n).map(|r| (0..n).map(|c| a.get(r, c)).collect()).collect();
    let mut det = ctx.one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else { return Ok(ctx.zero()) };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        det = &det * &m[col][col];
        let inv = m[col][col].inv()?;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] * &inv;
            for c in col..n {
                let t = &f * &m[col][c];
                m[r][c] -= &t;
            }
        }
    }
    Ok(det)
}
