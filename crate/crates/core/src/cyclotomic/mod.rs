//! Exact arithmetic in the cyclotomic field `Q(ζ_N)`.
//!
//! Numbers are stored in the power basis `1, ζ, …, ζ^{φ(N)-1}` reduced modulo the
//! `N`-th cyclotomic polynomial, as an integer numerator vector over a single positive
//! denominator. Values whose numerators and denominator fit in `i64` use an inline
//! representation with `i128` intermediates; anything larger falls back to `BigInt`.
//! The representation is canonical, so structural equality is field equality.

pub mod linalg;

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use smallvec::SmallVec;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CycError {
    #[error("root of unity order must be at least 1")]
    ZeroOrder,
    #[error("attempted to invert zero")]
    DivisionByZero,
    #[error("cyclotomic polynomial of order {0} does not fit in machine integers")]
    Overflow(u64),
}

/// The field `Q(ζ_N)` for a fixed primitive `N`-th root of unity `ζ`.
///
/// Contexts are interned: [`make_context`] returns the same `&'static` instance for a
/// given `N`, so numbers can carry a plain reference and compare contexts by address.
#[derive(Debug)]
pub struct CycContext {
    order: u64,
    /// Coefficients of Φ_N, lowest degree first; monic.
    phi: Vec<i64>,
    degree: usize,
    /// `ζ^k` for `0 ≤ k < N`, already reduced.
    roots: Vec<Vec<i64>>,
}

static REGISTRY: OnceLock<Mutex<HashMap<u64, &'static CycContext>>> = OnceLock::new();

/// Returns the (interned) context for `Q(ζ_N)`.
pub fn make_context(order: u64) -> Result<&'static CycContext, CycError> {
    if order == 0 {
        return Err(CycError::ZeroOrder);
    }
    let registry = REGISTRY.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(ctx) = registry.lock().unwrap().get(&order) {
        return Ok(ctx);
    }
    let ctx = CycContext::build(order)?;
    let mut map = registry.lock().unwrap();
    Ok(*map.entry(order).or_insert_with(|| Box::leak(Box::new(ctx))))
}

/// Φ_N by exact division of `x^N - 1` by the cyclotomic polynomials of the proper divisors.
pub fn cyclotomic_polynomial(order: u64) -> Result<Vec<i64>, CycError> {
    if order == 0 {
        return Err(CycError::ZeroOrder);
    }
    let mut memo: HashMap<u64, Vec<i128>> = HashMap::new();
    let poly = cyclotomic_rec(order, &mut memo).ok_or(CycError::Overflow(order))?;
    poly.iter()
        .map(|&c| i64::try_from(c).map_err(|_| CycError::Overflow(order)))
        .collect()
}

fn cyclotomic_rec(order: u64, memo: &mut HashMap<u64, Vec<i128>>) -> Option<Vec<i128>> {
    if let Some(p) = memo.get(&order) {
        return Some(p.clone());
    }
    let n = usize::try_from(order).ok()?;
    let mut num = vec![0i128; n + 1];
    num[0] = -1;
    num[n] = 1;
    for d in (1..order).filter(|d| order % d == 0) {
        let divisor = cyclotomic_rec(d, memo)?;
        num = exact_div_monic(&num, &divisor)?;
    }
    memo.insert(order, num.clone());
    Some(num)
}

/// Exact division by a monic polynomial; `None` on overflow or a nonzero remainder.
fn exact_div_monic(num: &[i128], den: &[i128]) -> Option<Vec<i128>> {
    let dd = den.len() - 1;
    if num.len() <= dd {
        return None;
    }
    let mut rem = num.to_vec();
    let mut quot = vec![0i128; num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (i, &d) in den.iter().enumerate() {
                rem[k + i] = rem[k + i].checked_sub(c.checked_mul(d)?)?;
            }
        }
    }
    rem.iter().all(|&r| r == 0).then_some(quot)
}

impl CycContext {
    fn build(order: u64) -> Result<Self, CycError> {
        let phi = cyclotomic_polynomial(order)?;
        let degree = phi.len() - 1;
        let mut roots = Vec::with_capacity(order as usize);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..order {
            roots.push(cur.clone());
            // multiply by ζ and fold the x^degree term back through Φ_N
            let top = cur[degree - 1];
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..degree {
                    cur[i] = cur[i]
                        .checked_sub(top.checked_mul(phi[i]).ok_or(CycError::Overflow(order))?)
                        .ok_or(CycError::Overflow(order))?;
                }
            }
        }
        Ok(CycContext { order, phi, degree, roots })
    }

    /// The root order `N`.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// `φ(N)`, the dimension of the field over `Q`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficients of Φ_N, lowest degree first.
    pub fn phi_coefficients(&self) -> &[i64] {
        &self.phi
    }

    pub fn zero(&'static self) -> Cyc {
        Cyc { ctx: self, repr: Repr::zero(self.degree) }
    }

    pub fn one(&'static self) -> Cyc {
        self.integer(1)
    }

    pub fn integer(&'static self, v: i64) -> Cyc {
        self.rational(v, 1)
    }

    /// The rational number `p / q`. Panics if `q == 0`.
    pub fn rational(&'static self, p: i64, q: i64) -> Cyc {
        assert!(q != 0, "zero denominator");
        let mut num = vec![0i128; self.degree];
        num[0] = p as i128;
        Cyc { ctx: self, repr: Repr::finish_wide(num, q as i128) }
    }

    pub fn from_big_rational(&'static self, r: &BigRational) -> Cyc {
        let mut num = vec![BigInt::zero(); self.degree];
        num[0] = r.numer().clone();
        Cyc { ctx: self, repr: Repr::finish_big(num, r.denom().clone()) }
    }

    /// Builds `Σ c_i ζ^i` from power-basis rational coefficients (length at most `2φ(N)-1`
    /// is accepted; higher powers are reduced).
    pub fn from_rationals(&'static self, coeffs: &[BigRational]) -> Cyc {
        let mut acc = self.zero();
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc += &(&self.root_power(k as i64) * &self.from_big_rational(c));
            }
        }
        acc
    }

    /// `ζ^k`, with `k` reduced mod `N`.
    pub fn root_power(&'static self, k: i64) -> Cyc {
        let idx = k.rem_euclid(self.order as i64) as usize;
        let num: SmallVec<[i64; INLINE]> = self.roots[idx].iter().copied().collect();
        Cyc { ctx: self, repr: Repr::Small { num, den: 1 } }
    }

    /// The distinguished generator `ζ`.
    pub fn zeta(&'static self) -> Cyc {
        self.root_power(1)
    }

    fn reduce_wide(&self, poly: &mut [i128]) -> Option<()> {
        let d = self.degree;
        for k in (d..poly.len()).rev() {
            let c = poly[k];
            if c != 0 {
                for i in 0..d {
                    poly[k - d + i] = poly[k - d + i].checked_sub(c.checked_mul(self.phi[i] as i128)?)?;
                }
                poly[k] = 0;
            }
        }
        Some(())
    }

    fn reduce_big(&self, poly: &mut [BigInt]) {
        let d = self.degree;
        for k in (d..poly.len()).rev() {
            if !poly[k].is_zero() {
                let c = std::mem::take(&mut poly[k]);
                for i in 0..d {
                    poly[k - d + i] -= &c * self.phi[i];
                }
            }
        }
    }
}

impl PartialEq for CycContext {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
    }
}

impl Eq for CycContext {}

const INLINE: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Small { num: SmallVec<[i64; INLINE]>, den: i64 },
    Big { num: Vec<BigInt>, den: BigInt },
}

fn fits(v: i128) -> bool {
    v.unsigned_abs() <= i64::MAX as u128
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a <= u64::MAX as u128 && b <= u64::MAX as u128 {
        return gcd_u64(a as u64, b as u64) as u128;
    }
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

impl Repr {
    fn zero(degree: usize) -> Repr {
        Repr::Small { num: SmallVec::from_elem(0, degree), den: 1 }
    }

    fn is_zero(&self) -> bool {
        match self {
            Repr::Small { num, .. } => num.iter().all(|&c| c == 0),
            Repr::Big { num, .. } => num.iter().all(|c| c.is_zero()),
        }
    }

    /// Normalizes a wide numerator/denominator pair. Never overflows: values that do not
    /// fit the inline form are promoted.
    fn finish_wide(mut num: Vec<i128>, mut den: i128) -> Repr {
        debug_assert!(den != 0);
        if num.iter().all(|&c| c == 0) {
            return Repr::zero(num.len());
        }
        if den < 0 {
            if den == i128::MIN || num.iter().any(|&c| c == i128::MIN) {
                let big: Vec<BigInt> = num.iter().map(|&c| BigInt::from(c)).collect();
                return Repr::finish_big(big, BigInt::from(den));
            }
            den = -den;
            for c in num.iter_mut() {
                *c = -*c;
            }
        }
        let mut g = den as u128;
        for &c in &num {
            if g == 1 {
                break;
            }
            g = gcd_u128(g, c.unsigned_abs());
        }
        if g > 1 {
            let g = g as i128;
            den /= g;
            for c in num.iter_mut() {
                *c /= g;
            }
        }
        if fits(den) && num.iter().all(|&c| fits(c)) {
            Repr::Small { num: num.iter().map(|&c| c as i64).collect(), den: den as i64 }
        } else {
            Repr::Big { num: num.into_iter().map(BigInt::from).collect(), den: BigInt::from(den) }
        }
    }

    fn finish_big(mut num: Vec<BigInt>, mut den: BigInt) -> Repr {
        debug_assert!(!den.is_zero());
        if num.iter().all(|c| c.is_zero()) {
            return Repr::zero(num.len());
        }
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -std::mem::take(c);
            }
        }
        let mut g = den.clone();
        for c in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            den /= &g;
            for c in num.iter_mut() {
                *c /= &g;
            }
        }
        let small_den = den.to_i64().filter(|&d| d != i64::MIN);
        let small_num: Option<SmallVec<[i64; INLINE]>> =
            num.iter().map(|c| c.to_i64().filter(|&v| v != i64::MIN)).collect();
        match (small_num, small_den) {
            (Some(num), Some(den)) => Repr::Small { num, den },
            _ => Repr::Big { num, den },
        }
    }

    fn to_big(&self) -> (Vec<BigInt>, BigInt) {
        match self {
            Repr::Small { num, den } => (num.iter().map(|&c| BigInt::from(c)).collect(), BigInt::from(*den)),
            Repr::Big { num, den } => (num.clone(), den.clone()),
        }
    }

    fn add(&self, other: &Repr, negate_other: bool) -> Repr {
        if let (Repr::Small { num: a, den: da }, Repr::Small { num: b, den: db }) = (self, other) {
            let sign: i128 = if negate_other { -1 } else { 1 };
            let (da, db) = (*da as i128, *db as i128);
            if da == db {
                let num = a.iter().zip(b.iter()).map(|(&x, &y)| x as i128 + sign * y as i128).collect();
                return Repr::finish_wide(num, da);
            }
            let g = gcd_u128(da as u128, db as u128) as i128;
            let (fa, fb) = (db / g, da / g);
            let num = a
                .iter()
                .zip(b.iter())
                .map(|(&x, &y)| x as i128 * fa + sign * (y as i128 * fb))
                .collect();
            return Repr::finish_wide(num, da * fa);
        }
        let (a, da) = self.to_big();
        let (b, db) = other.to_big();
        let num = a
            .iter()
            .zip(b.iter())
            .map(|(x, y)| if negate_other { x * &db - y * &da } else { x * &db + y * &da })
            .collect();
        Repr::finish_big(num, da * db)
    }

    fn mul(&self, other: &Repr, ctx: &CycContext) -> Repr {
        let d = ctx.degree;
        if let (Repr::Small { num: a, den: da }, Repr::Small { num: b, den: db }) = (self, other) {
            if let Some(r) = Self::mul_small(a, b, ctx) {
                return Repr::finish_wide(r, *da as i128 * *db as i128);
            }
        }
        let (a, da) = self.to_big();
        let (b, db) = other.to_big();
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        ctx.reduce_big(&mut prod);
        prod.truncate(d);
        Repr::finish_big(prod, da * db)
    }

    fn mul_small(a: &[i64], b: &[i64], ctx: &CycContext) -> Option<Vec<i128>> {
        let d = ctx.degree;
        let mut prod = vec![0i128; 2 * d - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    prod[i + j] = prod[i + j].checked_add(x as i128 * y as i128)?;
                }
            }
        }
        ctx.reduce_wide(&mut prod)?;
        prod.truncate(d);
        Some(prod)
    }

    fn scale_int(&self, k: i64) -> Repr {
        match self {
            Repr::Small { num, den } => {
                Repr::finish_wide(num.iter().map(|&c| c as i128 * k as i128).collect(), *den as i128)
            }
            Repr::Big { num, den } => Repr::finish_big(num.iter().map(|c| c * k).collect(), den.clone()),
        }
    }

    fn coefficient(&self, i: usize) -> BigRational {
        match self {
            Repr::Small { num, den } => BigRational::new(BigInt::from(num[i]), BigInt::from(*den)),
            Repr::Big { num, den } => BigRational::new(num[i].clone(), den.clone()),
        }
    }
}

/// An element of `Q(ζ_N)`.
#[derive(Clone)]
pub struct Cyc {
    ctx: &'static CycContext,
    repr: Repr,
}

impl Cyc {
    pub fn context(&self) -> &'static CycContext {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.repr.is_zero()
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Small { num, den } => *den == 1 && num[0] == 1 && num[1..].iter().all(|&c| c == 0),
            Repr::Big { .. } => false,
        }
    }

    /// Power-basis coefficients as exact rationals, length `φ(N)`.
    pub fn coefficients(&self) -> Vec<BigRational> {
        (0..self.ctx.degree).map(|i| self.repr.coefficient(i)).collect()
    }

    /// The value as a rational number when it lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        let coeffs = self.coefficients();
        coeffs[1..].iter().all(|c| c.is_zero()).then(|| coeffs[0].clone())
    }

    fn check(&self, other: &Cyc) {
        assert!(
            std::ptr::eq(self.ctx, other.ctx),
            "cyclotomic operands from Q(ζ_{}) and Q(ζ_{})",
            self.ctx.order,
            other.ctx.order
        );
    }

    pub fn scale(&self, k: i64) -> Cyc {
        Cyc { ctx: self.ctx, repr: self.repr.scale_int(k) }
    }

    /// Multiplicative inverse, solving `a·x = 1` in the `φ(N)`-dimensional `Q`-basis.
    pub fn inv(&self) -> Result<Cyc, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero);
        }
        let d = self.ctx.degree;
        if d == 1 {
            let r = self.repr.coefficient(0);
            return Ok(self.ctx.from_big_rational(&r.recip()));
        }
        // column j of the multiplication matrix is self·ζ^j
        let mut m: Vec<Vec<BigRational>> = vec![Vec::with_capacity(d + 1); d];
        for j in 0..d {
            let col = self * &self.ctx.root_power(j as i64);
            for (i, c) in col.coefficients().into_iter().enumerate() {
                m[i].push(c);
            }
        }
        for (i, row) in m.iter_mut().enumerate() {
            row.push(if i == 0 { BigRational::one() } else { BigRational::zero() });
        }
        for col in 0..d {
            let p = (col..d).find(|&r| !m[r][col].is_zero()).ok_or(CycError::DivisionByZero)?;
            m.swap(col, p);
            let pivot = m[col][col].recip();
            for c in col..=d {
                m[col][c] = &m[col][c] * &pivot;
            }
            for r in 0..d {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for c in col..=d {
                        let t = &f * &m[col][c];
                        m[r][c] -= t;
                    }
                }
            }
        }
        let sol: Vec<BigRational> = m.into_iter().map(|row| row[d].clone()).collect();
        Ok(self.ctx.from_rationals(&sol))
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Cyc, CycError> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.ctx.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    /// `self += a * b`.
    pub fn add_product(&mut self, a: &Cyc, b: &Cyc) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let p = a * b;
        *self += &p;
    }

    /// Canonical polynomial text without the modulus suffix, e.g. `1 + -1/2*z^2`.
    pub fn poly_text(&self) -> String {
        let coeffs = self.coefficients();
        let terms: Vec<String> = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let c = rational_text(c);
                match k {
                    0 => c,
                    1 => format!("{c}*z"),
                    _ => format!("{c}*z^{k}"),
                }
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

fn rational_text(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl PartialEq for Cyc {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.ctx, other.ctx) && self.repr == other.repr
    }
}

impl Eq for Cyc {}

impl std::hash::Hash for Cyc {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ctx.order.hash(state);
        self.repr.hash(state);
    }
}

impl fmt::Display for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod Phi_{})", self.poly_text(), self.ctx.order)
    }
}

impl fmt::Debug for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a> Add<&'a Cyc> for &'a Cyc {
    type Output = Cyc;
    fn add(self, rhs: &Cyc) -> Cyc {
        self.check(rhs);
        Cyc { ctx: self.ctx, repr: self.repr.add(&rhs.repr, false) }
    }
}

impl<'a> Sub<&'a Cyc> for &'a Cyc {
    type Output = Cyc;
    fn sub(self, rhs: &Cyc) -> Cyc {
        self.check(rhs);
        Cyc { ctx: self.ctx, repr: self.repr.add(&rhs.repr, true) }
    }
}

impl<'a> Mul<&'a Cyc> for &'a Cyc {
    type Output = Cyc;
    fn mul(self, rhs: &Cyc) -> Cyc {
        self.check(rhs);
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        Cyc { ctx: self.ctx, repr: self.repr.mul(&rhs.repr, self.ctx) }
    }
}

impl Neg for &Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        self.scale(-1)
    }
}

impl Neg for Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        self.scale(-1)
    }
}

impl AddAssign<&Cyc> for Cyc {
    fn add_assign(&mut self, rhs: &Cyc) {
        if rhs.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = rhs.clone();
            return;
        }
        *self = &*self + rhs;
    }
}

impl SubAssign<&Cyc> for Cyc {
    fn sub_assign(&mut self, rhs: &Cyc) {
        if rhs.is_zero() {
            return;
        }
        *self = &*self - rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    /// Naive Φ_N oracle: product of (x - ζ) is unavailable over Z, so divide x^N - 1 by
    /// every Φ_d independently with schoolbook long division on i64.
    fn schoolbook_div(num: &[i64], den: &[i64]) -> (Vec<i64>, Vec<i64>) {
        let mut rem = num.to_vec();
        let dd = den.len() - 1;
        let mut quot = vec![0; num.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd] / den[dd];
            quot[k] = c;
            for i in 0..=dd {
                rem[k + i] -= c * den[i];
            }
        }
        (quot, rem)
    }

    #[test]
    fn phi_small_orders() {
        assert_eq!(cyclotomic_polynomial(1).unwrap(), vec![-1, 1]);
        // (x^4 - 1) / ((x - 1)(x + 1))
        let (q4, r4) = schoolbook_div(&[-1, 0, 0, 0, 1], &[-1, 0, 1]);
        assert!(r4.iter().all(|&c| c == 0));
        assert_eq!(cyclotomic_polynomial(4).unwrap(), q4);
        assert_eq!(q4, vec![1, 0, 1]);
        // (x^6 - 1) / ((x - 1)(x + 1)(x^2 + x + 1))
        let (q6, r6) = schoolbook_div(&[-1, 0, 0, 0, 0, 0, 1], &[-1, -1, 0, 1, 1]);
        assert!(r6.iter().all(|&c| c == 0));
        assert_eq!(q6, vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(6).unwrap(), q6);
        assert_eq!(make_context(6).unwrap().degree(), 2);
        assert_eq!(make_context(9).unwrap().degree(), 6);
        assert_eq!(make_context(12).unwrap().degree(), 4);
    }

    #[test]
    fn zero_order_rejected() {
        assert_eq!(make_context(0).unwrap_err(), CycError::ZeroOrder);
    }

    #[test]
    fn phi_divides_x_n_minus_one() {
        for n in 1..=30u64 {
            let phi = cyclotomic_polynomial(n).unwrap();
            let mut num = vec![0i64; n as usize + 1];
            num[0] = -1;
            num[n as usize] = 1;
            let (_, rem) = schoolbook_div(&num, &phi);
            assert!(rem.iter().all(|&c| c == 0), "Φ_{n} does not divide x^{n}-1");
            assert_eq!(*phi.last().unwrap(), 1);
            let totient = (1..=n).filter(|k| k.gcd(&n) == 1).count();
            assert_eq!(phi.len() - 1, totient);
        }
    }

    #[test]
    fn root_powers() {
        let c4 = make_context(4).unwrap();
        assert_eq!(c4.root_power(2).coefficients(), vec![q(-1, 1), q(0, 1)]);
        let c6 = make_context(6).unwrap();
        assert!(c6.root_power(0).is_one());
        assert_eq!(c6.root_power(7), c6.root_power(1));
        assert_eq!(c6.root_power(-1), c6.root_power(5));
    }

    #[test]
    fn primitivity() {
        for n in [1u64, 2, 3, 4, 6, 8, 9, 12] {
            let ctx = make_context(n).unwrap();
            let z = ctx.zeta();
            for k in 1..n {
                assert!(!z.pow(k as i64).unwrap().is_one(), "ζ_{n}^{k} = 1");
            }
            assert!(z.pow(n as i64).unwrap().is_one());
        }
    }

    #[test]
    fn phi_vanishes_at_zeta() {
        for n in [2u64, 5, 6, 9, 12, 15] {
            let ctx = make_context(n).unwrap();
            let mut acc = ctx.zero();
            for (k, &c) in ctx.phi_coefficients().iter().enumerate() {
                acc += &ctx.root_power(k as i64).scale(c);
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn field_examples() {
        let ctx = make_context(6).unwrap();
        let mut sum = ctx.zero();
        for k in 0..6 {
            sum += &ctx.root_power(k);
        }
        assert!(sum.is_zero());
        let z = ctx.zeta();
        assert_eq!(z.inv().unwrap(), ctx.root_power(5));
        // (1+ζ)(1-ζ) = 1 - ζ² = 1 - (ζ - 1) = 2 - ζ
        let one = ctx.one();
        let lhs = &(&one + &z) * &(&one - &z);
        assert_eq!(lhs.coefficients(), vec![q(2, 1), q(-1, 1)]);
        assert!(ctx.zero().inv().is_err());
    }

    #[test]
    fn canonical_text() {
        let ctx = make_context(6).unwrap();
        let x = &ctx.rational(1, 2) - &ctx.zeta();
        assert_eq!(x.to_string(), "1/2 + -1*z (mod Phi_6)");
        assert_eq!(ctx.zero().to_string(), "0 (mod Phi_6)");
        let c9 = make_context(9).unwrap();
        assert_eq!(c9.root_power(4).scale(3).to_string(), "3*z^4 (mod Phi_9)");
    }

    #[test]
    fn big_fallback_roundtrip() {
        let ctx = make_context(6).unwrap();
        let big = ctx.integer(i64::MAX - 1);
        let sq = &big * &big;
        assert!(matches!(sq.repr, Repr::Big { .. }));
        let back = &(&sq * &big.inv().unwrap()) - &big;
        assert!(back.is_zero());
        assert!(matches!(back.repr, Repr::Small { .. }));
        let tiny = ctx.rational(1, i64::MAX - 2);
        let t2 = &tiny * &tiny;
        assert_eq!(&(&t2 * &ctx.integer(i64::MAX - 2)) * &ctx.integer(i64::MAX - 2), ctx.one());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_cyc(n: u64) -> impl Strategy<Value = Cyc> {
            let ctx = make_context(n).unwrap();
            proptest::collection::vec((-20i64..20, 1i64..7), ctx.degree()).prop_map(move |cs| {
                let mut acc = ctx.zero();
                for (k, (p, d)) in cs.into_iter().enumerate() {
                    acc += &ctx.root_power(k as i64).scale(p);
                    acc = &acc * &ctx.rational(1, d);
                }
                acc
            })
        }

        proptest! {
            #[test]
            fn ring_axioms(a in arb_cyc(9), b in arb_cyc(9), c in arb_cyc(9)) {
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert!((&a - &a).is_zero());
            }

            #[test]
            fn inverse(a in arb_cyc(12)) {
                prop_assume!(!a.is_zero());
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }

            #[test]
            fn q_is_primitive(m in 2u64..5, n in 1u64..5) {
                let ctx = make_context(m * n).unwrap();
                let qv = ctx.root_power(m as i64);
                for k in 1..n {
                    prop_assert!(!qv.pow(k as i64).unwrap().is_one());
                }
                prop_assert!(qv.pow(n as i64).unwrap().is_one());
            }
        }
    }
}
