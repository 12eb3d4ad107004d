//! Laurent polynomials in `v^(1/2)` and their specializations at `v = sqrt(q)`.

use crate::int::Int;
use crate::lpoly::LPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

/// Element of `Z[v^(1/2), v^(-1/2)]`. Exponents are stored doubled, so the
/// internal variable is `t = v^(1/2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentHalf(LPoly);

impl LaurentHalf {
    pub fn zero() -> Self {
        LaurentHalf(LPoly::zero())
    }

    pub fn one() -> Self {
        LaurentHalf(LPoly::one())
    }

    pub fn from_int(a: i64) -> Self {
        LaurentHalf(LPoly::from_i64(a))
    }

    /// `a * v^(e2/2)`.
    pub fn term(e2: i64, a: Int) -> Self {
        LaurentHalf(LPoly::monomial(e2, a))
    }

    /// `v^(e2/2)`.
    pub fn v_half_pow(e2: i64) -> Self {
        LaurentHalf(LPoly::x_pow(e2))
    }

    /// `v^e`.
    pub fn v_pow(e: i64) -> Self {
        LaurentHalf(LPoly::x_pow(2 * e))
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Int)>>(terms: I) -> Self {
        LaurentHalf(LPoly::from_terms(terms))
    }

    /// Substitutes `q = v^2` into a Laurent polynomial in `q`.
    pub fn from_q(p: &LPoly) -> Self {
        LaurentHalf(p.compose_power(4))
    }

    pub fn inner(&self) -> &LPoly {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// `(doubled exponent, coefficient)` pairs in increasing order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Int)> + '_ {
        self.0.terms()
    }

    pub fn coeff2(&self, e2: i64) -> Int {
        self.0.coeff(e2)
    }

    pub fn low2(&self) -> Option<i64> {
        self.0.low()
    }

    pub fn high2(&self) -> Option<i64> {
        self.0.high()
    }

    pub fn as_monomial(&self) -> Option<(i64, Int)> {
        self.0.as_monomial()
    }

    /// Multiplies by `v^(e2/2)`.
    pub fn shift2(&self, e2: i64) -> Self {
        LaurentHalf(self.0.shift(e2))
    }

    pub fn scale(&self, a: &Int) -> Self {
        LaurentHalf(self.0.scale(a))
    }

    /// The ring involution `v^(1/2) -> v^(-1/2)`.
    pub fn bar(&self) -> Self {
        LaurentHalf(self.0.compose_power(-1))
    }

    pub fn div_exact(&self, d: &LaurentHalf) -> Option<Self> {
        self.0.div_exact(&d.0).map(LaurentHalf)
    }

    /// True when only integral powers of `v` occur.
    pub fn has_integral_exponents(&self) -> bool {
        self.terms().all(|(e, _)| e % 2 == 0)
    }

    /// True for elements of `v^(-1) Z[v^(-1)]`.
    pub fn in_negative_part(&self) -> bool {
        self.terms().all(|(e, _)| e % 2 == 0 && e < 0)
    }

    /// Part with exponents strictly below zero.
    pub fn negative_part(&self) -> Self {
        LaurentHalf::from_terms(self.terms().filter(|(e, _)| *e < 0).map(|(e, a)| (e, a.clone())))
    }

    /// Specializes at `v = sqrt(q)`.
    pub fn eval_sqrt(&self, q: u64) -> Option<QSqrt> {
        let mut out = QSqrt::zero(q);
        for (e2, a) in self.terms() {
            if e2 % 2 != 0 {
                return None;
            }
            let e = e2 / 2;
            out = &out + &QSqrt::sqrt_pow(q, e).scale_int(a);
        }
        Some(out)
    }

    /// Evaluates modulo a prime at `v^(1/2) = t`.
    pub fn eval_mod(&self, t: u64, p: u64) -> u64 {
        self.0.eval_mod(t, p)
    }

    pub fn content(&self) -> Int {
        self.0.content()
    }

    /// `{"<doubled exponent>": coefficient}` with coefficients beyond `i64` as strings.
    pub fn to_json(&self) -> serde_json::Value {
        let mut m = serde_json::Map::new();
        for (e, a) in self.terms() {
            let v = match a.to_i64() {
                Some(s) => serde_json::Value::from(s),
                None => serde_json::Value::from(a.to_string()),
            };
            m.insert(e.to_string(), v);
        }
        serde_json::Value::Object(m)
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, String> {
        let obj = v.as_object().ok_or("coefficient must be an object")?;
        let mut terms = Vec::new();
        for (k, val) in obj {
            let e: i64 = k.trim().parse().map_err(|_| format!("bad exponent key {k:?}"))?;
            let a: Int = match val {
                serde_json::Value::Number(n) => Int::from(n.as_i64().ok_or("coefficient out of range")?),
                serde_json::Value::String(s) => s.parse().map_err(|_| format!("bad coefficient {s:?}"))?,
                _ => return Err("coefficient must be integer or string".into()),
            };
            terms.push((e, a));
        }
        Ok(LaurentHalf::from_terms(terms))
    }
}

impl fmt::Display for LaurentHalf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt_var("v", f, &|e2| {
            if e2 == 0 {
                None
            } else if e2 == 2 {
                Some(String::new())
            } else if e2 % 2 == 0 {
                Some(format!("^{}", e2 / 2))
            } else {
                Some(format!("^({}/2)", e2))
            }
        })
    }
}

macro_rules! lh_binop {
    ($tr:ident, $m:ident) => {
        impl<'a> $tr<&'a LaurentHalf> for &'a LaurentHalf {
            type Output = LaurentHalf;
            fn $m(self, o: &LaurentHalf) -> LaurentHalf {
                LaurentHalf($tr::$m(&self.0, &o.0))
            }
        }
        impl $tr for LaurentHalf {
            type Output = LaurentHalf;
            fn $m(self, o: LaurentHalf) -> LaurentHalf {
                LaurentHalf($tr::$m(&self.0, &o.0))
            }
        }
    };
}

lh_binop!(Add, add);
lh_binop!(Sub, sub);
lh_binop!(Mul, mul);

impl Neg for &LaurentHalf {
    type Output = LaurentHalf;
    fn neg(self) -> LaurentHalf {
        LaurentHalf(-&self.0)
    }
}

impl Neg for LaurentHalf {
    type Output = LaurentHalf;
    fn neg(self) -> LaurentHalf {
        LaurentHalf(-&self.0)
    }
}

impl AddAssign<&LaurentHalf> for LaurentHalf {
    fn add_assign(&mut self, o: &LaurentHalf) {
        self.0 += &o.0;
    }
}

impl SubAssign<&LaurentHalf> for LaurentHalf {
    fn sub_assign(&mut self, o: &LaurentHalf) {
        self.0 -= &o.0;
    }
}

/// `a + b sqrt(q)` with rational `a`, `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSqrt {
    pub q: u64,
    pub a: BigRational,
    pub b: BigRational,
}

impl QSqrt {
    pub fn zero(q: u64) -> QSqrt {
        QSqrt { q, a: BigRational::zero(), b: BigRational::zero() }
    }

    pub fn one(q: u64) -> QSqrt {
        QSqrt::rational(q, BigRational::one())
    }

    pub fn rational(q: u64, a: BigRational) -> QSqrt {
        QSqrt { q, a, b: BigRational::zero() }
    }

    pub fn from_int(q: u64, a: &Int) -> QSqrt {
        QSqrt::rational(q, BigRational::from_integer(a.to_big()))
    }

    /// `sqrt(q)^e`.
    pub fn sqrt_pow(q: u64, e: i64) -> QSqrt {
        let qb = BigRational::from_integer(BigInt::from(q));
        let half = e.div_euclid(2);
        let r = if half >= 0 { qb.pow(half as i32) } else { BigRational::one() / qb.pow((-half) as i32) };
        if e.rem_euclid(2) == 0 {
            QSqrt { q, a: r, b: BigRational::zero() }
        } else {
            QSqrt { q, a: BigRational::zero(), b: r }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn scale_int(&self, k: &Int) -> QSqrt {
        let kb = BigRational::from_integer(k.to_big());
        QSqrt { q: self.q, a: &self.a * &kb, b: &self.b * &kb }
    }

    pub fn scale(&self, k: &BigRational) -> QSqrt {
        QSqrt { q: self.q, a: &self.a * k, b: &self.b * k }
    }

    /// Writes a nonzero value as `c * sqrt(q)^k` with `c` an integer, if possible.
    pub fn as_int_times_sqrt_pow(&self) -> Option<(BigInt, i64)> {
        if !self.a.is_zero() && !self.b.is_zero() {
            return None;
        }
        let (mut c, mut k) = if self.b.is_zero() { (self.a.clone(), 0i64) } else { (self.b.clone(), 1i64) };
        if c.is_zero() {
            return Some((BigInt::zero(), 0));
        }
        let qb = BigInt::from(self.q);
        // pull q-powers out of the denominator
        while !c.denom().is_one() {
            if (c.denom() % &qb).is_zero() {
                c *= BigRational::from_integer(qb.clone());
                k -= 2;
            } else {
                return None;
            }
        }
        Some((c.to_integer(), k))
    }
}

impl fmt::Display for QSqrt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt({})", self.b, self.q)
        } else {
            let sign = if self.b.is_negative() { "-" } else { "+" };
            write!(f, "{} {} {}*sqrt({})", self.a, sign, self.b.abs(), self.q)
        }
    }
}

impl<'a> Add<&'a QSqrt> for &'a QSqrt {
    type Output = QSqrt;
    fn add(self, o: &QSqrt) -> QSqrt {
        debug_assert_eq!(self.q, o.q);
        QSqrt { q: self.q, a: &self.a + &o.a, b: &self.b + &o.b }
    }
}

impl<'a> Sub<&'a QSqrt> for &'a QSqrt {
    type Output = QSqrt;
    fn sub(self, o: &QSqrt) -> QSqrt {
        debug_assert_eq!(self.q, o.q);
        QSqrt { q: self.q, a: &self.a - &o.a, b: &self.b - &o.b }
    }
}

impl<'a> Mul<&'a QSqrt> for &'a QSqrt {
    type Output = QSqrt;
    fn mul(self, o: &QSqrt) -> QSqrt {
        debug_assert_eq!(self.q, o.q);
        let qb = BigRational::from_integer(BigInt::from(self.q));
        QSqrt {
            q: self.q,
            a: &self.a * &o.a + &self.b * &o.b * qb,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }
}

impl AddAssign<&QSqrt> for QSqrt {
    fn add_assign(&mut self, o: &QSqrt) {
        self.a += &o.a;
        self.b += &o.b;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb() -> impl Strategy<Value = LaurentHalf> {
        proptest::collection::vec((-6i64..6, -4i64..5), 0..5)
            .prop_map(|ts| LaurentHalf::from_terms(ts.into_iter().map(|(e, a)| (e, Int::from(a)))))
    }

    #[test]
    fn q_substitution() {
        // q - 1 becomes v^2 - 1
        let p = LPoly::from_coeffs(&[-1, 1]);
        let l = LaurentHalf::from_q(&p);
        assert_eq!(l, &LaurentHalf::v_pow(2) - &LaurentHalf::one());
        assert_eq!(format!("{}", LaurentHalf::v_half_pow(-1)), "v^(-1/2)");
    }

    #[test]
    fn sqrt_evaluation() {
        // v^3 at q = 2 is 2 sqrt 2
        let x = LaurentHalf::v_pow(3).eval_sqrt(2).unwrap();
        assert_eq!(x.b, BigRational::from_integer(BigInt::from(2)));
        assert!(x.a.is_zero());
        assert!(LaurentHalf::v_half_pow(1).eval_sqrt(2).is_none());
        let y = LaurentHalf::v_pow(-3).eval_sqrt(3).unwrap();
        assert_eq!(y.as_int_times_sqrt_pow(), Some((BigInt::one(), -3)));
    }

    proptest! {
        #[test]
        fn bar_is_ring_involution(a in arb(), b in arb()) {
            prop_assert_eq!(a.bar().bar(), a.clone());
            prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        }

        #[test]
        fn json_round_trip(a in arb()) {
            prop_assert_eq!(LaurentHalf::from_json(&a.to_json()).unwrap(), a);
        }

        #[test]
        fn evaluation_is_multiplicative(a in arb(), b in arb()) {
            let a = LaurentHalf::from_terms(a.terms().map(|(e, c)| (2 * e, c.clone())));
            let b = LaurentHalf::from_terms(b.terms().map(|(e, c)| (2 * e, c.clone())));
            let lhs = (&a * &b).eval_sqrt(3).unwrap();
            let rhs = &a.eval_sqrt(3).unwrap() * &b.eval_sqrt(3).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
