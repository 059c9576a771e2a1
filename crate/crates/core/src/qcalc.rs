//! q-integers, q-factorials and Gaussian binomial coefficients at a concrete `q`.
//!
//! Binomials come from the q-Pascal recursion, never from the factorial quotient, so they
//! stay well defined when `q` is a root of unity and factorials vanish.

use std::sync::Mutex;

use crate::cyclotomic::Cyc;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QCalcError {
    #[error("q-binomial ({n} choose {i}) needs 0 <= i <= n")]
    OutOfRange { n: i64, i: i64 },
}

/// `(n)_q = 1 + q + … + q^{n-1}`, with `(0)_q = 0`.
pub fn q_int(q: &Cyc, n: u32) -> Cyc {
    let ctx = q.context();
    let mut acc = ctx.zero();
    let mut pow = ctx.one();
    for _ in 0..n {
        acc += &pow;
        pow = &pow * q;
    }
    acc
}

/// `(n)!_q = (1)_q (2)_q ⋯ (n)_q`, with `(0)!_q = 1`.
pub fn q_factorial(q: &Cyc, n: u32) -> Cyc {
    (1..=n).fold(q.context().one(), |acc, k| &acc * &q_int(q, k))
}

/// Gaussian binomial by the recursion `C(n,i) = q^i C(n-1,i) + C(n-1,i-1)`.
pub fn q_binomial(q: &Cyc, n: i64, i: i64) -> Result<Cyc, QCalcError> {
    if i < 0 || n < 0 || i > n {
        return Err(QCalcError::OutOfRange { n, i });
    }
    Ok(QTable::new(q.clone()).binomial(n as u32, i as u32))
}

/// Memoized q-Pascal triangle for one fixed `q`. Shareable across threads; the table
/// only ever grows.
#[derive(Debug)]
pub struct QTable {
    q: Cyc,
    rows: Mutex<Vec<Vec<Cyc>>>,
}

impl QTable {
    pub fn new(q: Cyc) -> QTable {
        let one = q.context().one();
        QTable { q, rows: Mutex::new(vec![vec![one]]) }
    }

    pub fn q(&self) -> &Cyc {
        &self.q
    }

    /// Panics if `i > n`; use [`q_binomial`] for checked access.
    pub fn binomial(&self, n: u32, i: u32) -> Cyc {
        assert!(i <= n, "q-binomial ({n} choose {i})");
        let mut rows = self.rows.lock().unwrap();
        while rows.len() <= n as usize {
            let prev = rows.last().unwrap();
            let k = prev.len();
            let ctx = self.q.context();
            let mut row = Vec::with_capacity(k + 1);
            row.push(ctx.one());
            for j in 1..k {
                let qj = self.q.pow(j as i64).expect("q is nonzero");
                row.push(&(&qj * &prev[j]) + &prev[j - 1]);
            }
            row.push(ctx.one());
            rows.push(row);
        }
        rows[n as usize][i as usize].clone()
    }

    pub fn factorial(&self, n: u32) -> Cyc {
        q_factorial(&self.q, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::make_context;

    #[test]
    fn q_int_examples() {
        let ctx = make_context(6).unwrap();
        let q = ctx.root_power(2);
        assert!(q_int(&q, 0).is_zero());
        assert_eq!(q_int(&ctx.one(), 5), ctx.integer(5));
        assert!(q_int(&q, 3).is_zero());
        // (n)_q (q - 1) = q^n - 1
        let z = ctx.zeta();
        for n in 0..9 {
            let lhs = &q_int(&z, n) * &(&z - &ctx.one());
            assert_eq!(lhs, &z.pow(n as i64).unwrap() - &ctx.one());
        }
    }

    #[test]
    fn q_factorial_examples() {
        let ctx = make_context(9).unwrap();
        let q = ctx.root_power(3);
        assert!(q_factorial(&q, 0).is_one());
        assert_eq!(q_factorial(&q, 2), &ctx.one() + &q);
        assert!(q_factorial(&q, 3).is_zero());
    }

    #[test]
    fn q_binomial_examples() {
        let ctx = make_context(12).unwrap();
        let q = ctx.root_power(4);
        for n in 0..6 {
            assert!(q_binomial(&q, n, 0).unwrap().is_one());
            assert!(q_binomial(&q, n, n).unwrap().is_one());
        }
        assert_eq!(q_binomial(&q, 2, 1).unwrap(), &ctx.one() + &q);
        assert_eq!(q_binomial(&ctx.one(), 4, 2).unwrap(), ctx.integer(6));
        assert!(q_binomial(&q, 3, 4).is_err());
        assert!(q_binomial(&q, 3, -1).is_err());
    }

    #[test]
    fn pascal_recursion_symmetry_and_factorials() {
        for (order, k) in [(6u64, 2i64), (9, 3), (12, 1), (8, 1)] {
            let ctx = make_context(order).unwrap();
            let q = ctx.root_power(k);
            let table = QTable::new(q.clone());
            for n in 1..=12u32 {
                for i in 0..=n {
                    let c = table.binomial(n, i);
                    assert_eq!(c, table.binomial(n, n - i), "symmetry n={n} i={i}");
                    if i > 0 && i < n {
                        let rec = &(&q.pow(i as i64).unwrap() * &table.binomial(n - 1, i))
                            + &table.binomial(n - 1, i - 1);
                        assert_eq!(c, rec);
                    }
                    if i > 0 && i < n && !table.factorial(n - 1).is_zero() {
                        let lhs = &(&c * &table.factorial(i)) * &table.factorial(n - i);
                        assert_eq!(lhs, table.factorial(n));
                    }
                }
            }
        }
    }

    #[test]
    fn ordinary_binomials_at_one() {
        let ctx = make_context(5).unwrap();
        let table = QTable::new(ctx.one());
        let mut pascal = vec![vec![1i64]];
        for n in 1..=12usize {
            let prev = &pascal[n - 1];
            let mut row = vec![1i64];
            for i in 1..n {
                row.push(prev[i - 1] + prev[i]);
            }
            row.push(1);
            pascal.push(row);
        }
        for n in 0..=12u32 {
            for i in 0..=n {
                assert_eq!(table.binomial(n, i), ctx.integer(pascal[n as usize][i as usize]));
            }
        }
    }
}
