//! Dense Laurent polynomials in one variable with integer coefficients.

use crate::int::Int;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

/// `c[k]` is the coefficient of `x^(lo + k)`. Zero is the empty vector; otherwise
/// the first and last coefficients are nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LPoly {
    lo: i64,
    c: Vec<Int>,
}

impl LPoly {
    pub fn zero() -> LPoly {
        LPoly { lo: 0, c: Vec::new() }
    }

    pub fn one() -> LPoly {
        LPoly::constant(Int::one())
    }

    pub fn constant(a: Int) -> LPoly {
        LPoly::monomial(0, a)
    }

    pub fn from_i64(a: i64) -> LPoly {
        LPoly::constant(Int::from(a))
    }

    pub fn monomial(e: i64, a: Int) -> LPoly {
        if a.is_zero() {
            return LPoly::zero();
        }
        LPoly { lo: e, c: vec![a] }
    }

    pub fn x_pow(e: i64) -> LPoly {
        LPoly::monomial(e, Int::one())
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I: IntoIterator<Item = (i64, Int)>>(terms: I) -> LPoly {
        let terms: Vec<(i64, Int)> = terms.into_iter().collect();
        if terms.is_empty() {
            return LPoly::zero();
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut c = vec![Int::zero(); (hi - lo + 1) as usize];
        for (e, a) in terms {
            c[(e - lo) as usize] += &a;
        }
        LPoly::normalize(lo, c)
    }

    /// Coefficients of `c0 + c1 x + ...`.
    pub fn from_coeffs(coeffs: &[i64]) -> LPoly {
        LPoly::normalize(0, coeffs.iter().map(|&a| Int::from(a)).collect())
    }

    fn normalize(mut lo: i64, mut c: Vec<Int>) -> LPoly {
        while c.last().is_some_and(|a| a.is_zero()) {
            c.pop();
        }
        let first = c.iter().position(|a| !a.is_zero());
        match first {
            None => LPoly::zero(),
            Some(0) => LPoly { lo, c },
            Some(k) => {
                c.drain(..k);
                lo += k as i64;
                LPoly { lo, c }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.lo == 0 && self.c.len() == 1 && self.c[0].is_one()
    }

    /// Lowest exponent; `None` for zero.
    pub fn low(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.lo)
        }
    }

    /// Highest exponent; `None` for zero.
    pub fn high(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.lo + self.c.len() as i64 - 1)
        }
    }

    pub fn coeff(&self, e: i64) -> Int {
        if e < self.lo || e >= self.lo + self.c.len() as i64 {
            return Int::zero();
        }
        self.c[(e - self.lo) as usize].clone()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Int)> + '_ {
        self.c
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(move |(k, a)| (self.lo + k as i64, a))
    }

    pub fn num_terms(&self) -> usize {
        self.c.iter().filter(|a| !a.is_zero()).count()
    }

    /// The single term if this is a monomial.
    pub fn as_monomial(&self) -> Option<(i64, Int)> {
        if self.c.len() == 1 {
            Some((self.lo, self.c[0].clone()))
        } else {
            None
        }
    }

    pub fn shift(&self, k: i64) -> LPoly {
        if self.is_zero() {
            return LPoly::zero();
        }
        LPoly { lo: self.lo + k, c: self.c.clone() }
    }

    pub fn scale(&self, a: &Int) -> LPoly {
        if a.is_zero() {
            return LPoly::zero();
        }
        LPoly { lo: self.lo, c: self.c.iter().map(|x| x * a).collect() }
    }

    /// Substitutes `x -> x^k` for `k != 0`.
    pub fn compose_power(&self, k: i64) -> LPoly {
        LPoly::from_terms(self.terms().map(|(e, a)| (e * k, a.clone())))
    }

    /// Exact quotient in the Laurent ring, `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &LPoly) -> Option<LPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LPoly::zero());
        }
        if d.c.len() == 1 {
            let a = &d.c[0];
            let mut out = Vec::with_capacity(self.c.len());
            for x in &self.c {
                out.push(x.div_exact(a)?);
            }
            return Some(LPoly { lo: self.lo - d.lo, c: out });
        }
        // long division from the top; both sides have nonzero constant term after shifting
        let n = self.c.len();
        let m = d.c.len();
        if n < m {
            return None;
        }
        let lead = &d.c[m - 1];
        let mut rem = self.c.clone();
        let mut q = vec![Int::zero(); n - m + 1];
        for k in (0..=n - m).rev() {
            let top = &rem[k + m - 1];
            if top.is_zero() {
                continue;
            }
            let f = top.div_exact(lead)?;
            for j in 0..m {
                let t = &f * &d.c[j];
                rem[k + j] -= &t;
            }
            q[k] = f;
        }
        if rem.iter().any(|a| !a.is_zero()) {
            return None;
        }
        Some(LPoly::normalize(self.lo - d.lo, q))
    }

    pub fn eval_i64(&self, x: i64) -> BigRational {
        let xr = BigRational::from_integer(BigInt::from(x));
        let mut acc = BigRational::zero();
        for a in self.c.iter().rev() {
            acc = acc * &xr + BigRational::from_integer(a.to_big());
        }
        if self.lo >= 0 {
            acc * xr.pow(self.lo as i32)
        } else {
            acc / xr.pow((-self.lo) as i32)
        }
    }

    /// Evaluates modulo a prime `p < 2^62` at a unit `x`.
    pub fn eval_mod(&self, x: u64, p: u64) -> u64 {
        let mut acc: u128 = 0;
        for a in self.c.iter().rev() {
            let r = int_mod(a, p) as u128;
            acc = (acc * x as u128 + r) % p as u128;
        }
        let xp = if self.lo >= 0 {
            pow_mod(x, self.lo as u64, p)
        } else {
            pow_mod(inv_mod(x, p), (-self.lo) as u64, p)
        };
        ((acc * xp as u128) % p as u128) as u64
    }

    /// Content (gcd of coefficients), zero for the zero polynomial.
    pub fn content(&self) -> Int {
        let mut g = Int::zero();
        for a in &self.c {
            g = g.gcd(a);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// `exp_fmt` renders an exponent; `None` marks the constant term.
    pub fn fmt_var(&self, var: &str, f: &mut fmt::Formatter<'_>, exp_fmt: &dyn Fn(i64) -> Option<String>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, a) in self.terms() {
            let neg = a.is_negative();
            let abs = a.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match exp_fmt(e) {
                None => write!(f, "{abs}")?,
                Some(es) => {
                    if !abs.is_one() {
                        write!(f, "{abs}*")?;
                    }
                    write!(f, "{var}{es}")?;
                }
            }
        }
        Ok(())
    }
}

pub fn int_mod(a: &Int, p: u64) -> u64 {
    match a {
        Int::Small(s) => s.rem_euclid(p as i64) as u64,
        Int::Big(_) => {
            use num_traits::ToPrimitive;
            let pb = BigInt::from(p);
            let r = ((a.to_big() % &pb) + &pb) % &pb;
            r.to_u64().unwrap()
        }
    }
}

pub fn pow_mod(b: u64, mut e: u64, p: u64) -> u64 {
    let mut r: u128 = 1 % p as u128;
    let mut bb = (b % p) as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * bb % p as u128;
        }
        bb = bb * bb % p as u128;
        e >>= 1;
    }
    r as u64
}

pub fn inv_mod(x: u64, p: u64) -> u64 {
    pow_mod(x, p - 2, p)
}

impl fmt::Display for LPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_var("q", f, &|e| match e {
            0 => None,
            1 => Some(String::new()),
            _ => Some(format!("^{e}")),
        })
    }
}

fn add_into(a: &LPoly, b: &LPoly, sign: bool) -> LPoly {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if sign { b.clone() } else { -b };
    }
    let lo = a.lo.min(b.lo);
    let hi = a.high().unwrap().max(b.high().unwrap());
    let mut c = vec![Int::zero(); (hi - lo + 1) as usize];
    for (k, x) in a.c.iter().enumerate() {
        c[(a.lo - lo) as usize + k] = x.clone();
    }
    for (k, x) in b.c.iter().enumerate() {
        let slot = &mut c[(b.lo - lo) as usize + k];
        if sign {
            *slot += x;
        } else {
            *slot -= x;
        }
    }
    LPoly::normalize(lo, c)
}

impl<'a> Add<&'a LPoly> for &'a LPoly {
    type Output = LPoly;
    fn add(self, o: &LPoly) -> LPoly {
        add_into(self, o, true)
    }
}

impl<'a> Sub<&'a LPoly> for &'a LPoly {
    type Output = LPoly;
    fn sub(self, o: &LPoly) -> LPoly {
        add_into(self, o, false)
    }
}

impl<'a> Mul<&'a LPoly> for &'a LPoly {
    type Output = LPoly;
    fn mul(self, o: &LPoly) -> LPoly {
        if self.is_zero() || o.is_zero() {
            return LPoly::zero();
        }
        let mut c = vec![Int::zero(); self.c.len() + o.c.len() - 1];
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.c.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                c[i + j] += &(x * y);
            }
        }
        LPoly::normalize(self.lo + o.lo, c)
    }
}

impl Neg for &LPoly {
    type Output = LPoly;
    fn neg(self) -> LPoly {
        LPoly { lo: self.lo, c: self.c.iter().map(|a| -a).collect() }
    }
}

impl Neg for LPoly {
    type Output = LPoly;
    fn neg(self) -> LPoly {
        -&self
    }
}

impl Add for LPoly {
    type Output = LPoly;
    fn add(self, o: LPoly) -> LPoly {
        &self + &o
    }
}

impl Sub for LPoly {
    type Output = LPoly;
    fn sub(self, o: LPoly) -> LPoly {
        &self - &o
    }
}

impl Mul for LPoly {
    type Output = LPoly;
    fn mul(self, o: LPoly) -> LPoly {
        &self * &o
    }
}

impl AddAssign<&LPoly> for LPoly {
    fn add_assign(&mut self, o: &LPoly) {
        if o.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = o.clone();
            return;
        }
        if o.lo >= self.lo && o.high() <= self.high() {
            let off = (o.lo - self.lo) as usize;
            for (k, x) in o.c.iter().enumerate() {
                self.c[off + k] += x;
            }
            let c = std::mem::take(&mut self.c);
            *self = LPoly::normalize(self.lo, c);
            return;
        }
        *self = &*self + o;
    }
}

impl SubAssign<&LPoly> for LPoly {
    fn sub_assign(&mut self, o: &LPoly) {
        *self += &(-o);
    }
}

/// `[n]_q = 1 + q + ... + q^(n-1)`.
pub fn q_int(n: u32) -> LPoly {
    LPoly::normalize(0, vec![Int::one(); n as usize])
}

/// `[n]_q! = [1]_q [2]_q ... [n]_q`.
pub fn q_factorial(n: u32) -> LPoly {
    let mut r = LPoly::one();
    for k in 2..=n {
        r = &r * &q_int(k);
    }
    r
}

/// `|GL_m(F_q)| = prod_{k<m} (q^m - q^k)` as a polynomial in `q`.
pub fn gl_order(m: u32) -> LPoly {
    let mut r = LPoly::one();
    for k in 0..m {
        let f = LPoly::from_terms([(m as i64, Int::one()), (k as i64, Int::from(-1))]);
        r = &r * &f;
    }
    r
}

/// Lagrange interpolation through integer points. Returns `None` when the
/// interpolant does not have integer coefficients.
pub fn interpolate(points: &[(i64, Int)]) -> Option<LPoly> {
    let n = points.len();
    let mut acc: Vec<BigRational> = vec![BigRational::zero(); n.max(1)];
    for (i, (xi, yi)) in points.iter().enumerate() {
        // basis numerator prod_{j != i} (x - xj), denominator prod (xi - xj)
        let mut num: Vec<BigRational> = vec![BigRational::one()];
        let mut den = BigRational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); num.len() + 1];
            let xjr = BigRational::from_integer(BigInt::from(*xj));
            for (k, a) in num.iter().enumerate() {
                next[k + 1] += a;
                next[k] -= a * &xjr;
            }
            num = next;
            den *= BigRational::from_integer(BigInt::from(xi - xj));
        }
        let scale = BigRational::from_integer(yi.to_big()) / den;
        for (k, a) in num.iter().enumerate() {
            acc[k] += a * &scale;
        }
    }
    let mut coeffs = Vec::with_capacity(n);
    for a in acc {
        if !a.is_integer() {
            return None;
        }
        coeffs.push(Int::from(a.to_integer()));
    }
    Some(LPoly::normalize(0, coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_poly() -> impl Strategy<Value = LPoly> {
        (-4i64..4, proptest::collection::vec(-5i64..6, 0..6))
            .prop_map(|(lo, cs)| LPoly::from_terms(cs.into_iter().enumerate().map(|(k, a)| (lo + k as i64, Int::from(a)))))
    }

    #[test]
    fn gaussian_integers() {
        assert_eq!(q_int(3), LPoly::from_coeffs(&[1, 1, 1]));
        assert_eq!(q_factorial(3).eval_i64(2), BigRational::from_integer(BigInt::from(21)));
        // |GL_2(F_3)| = 48
        assert_eq!(gl_order(2).eval_i64(3), BigRational::from_integer(BigInt::from(48)));
    }

    #[test]
    fn interpolation_recovers_cubic() {
        let p = LPoly::from_coeffs(&[3, 0, -2, 1]);
        let pts: Vec<(i64, Int)> = [2, 3, 5, 7]
            .iter()
            .map(|&x| (x, Int::from(p.eval_i64(x).to_integer())))
            .collect();
        assert_eq!(interpolate(&pts), Some(p));
    }

    #[test]
    fn division_by_non_monic_fails_cleanly() {
        let a = LPoly::from_coeffs(&[1, 1]);
        let b = LPoly::from_coeffs(&[0, 2]);
        assert_eq!(a.div_exact(&b), None);
    }

    proptest! {
        #[test]
        fn product_then_divide(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let p = &a * &b;
            prop_assert_eq!(p.div_exact(&b), Some(a.clone()));
        }

        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&(&a - &a), &LPoly::zero());
            let mut s = a.clone();
            s += &b;
            prop_assert_eq!(s, &a + &b);
        }

        #[test]
        fn eval_matches_mod(a in arb_poly(), x in 2u64..50) {
            let p = 1_000_000_007u64;
            let exact = a.eval_i64(x as i64);
            let num = int_mod(&Int::from(exact.numer().clone()), p);
            let den = int_mod(&Int::from(exact.denom().clone()), p);
            prop_assert_eq!(a.eval_mod(x, p), num * inv_mod(den, p) % p);
        }
    }
}
