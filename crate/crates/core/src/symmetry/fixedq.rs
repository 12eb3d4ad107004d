//! The hat algebra over one prime field, with Hall numbers counted directly.
//! Coefficients live in `Q(sqrt p)`.

use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::ihall::{diamond_exp2, IHallElt, IKey};
use crate::laurent::QSqrt;
use crate::modfq::classes::{aut_order, classes_of_dim};
use crate::modfq::count::census;
use crate::modfq::ModClass;
use crate::quiver::DimVec;
use num_bigint::BigInt;
use num_rational::BigRational;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedElt {
    pub p: u64,
    pub terms: BTreeMap<IKey, QSqrt>,
}

impl FixedElt {
    pub fn zero(p: u64) -> FixedElt {
        FixedElt { p, terms: BTreeMap::new() }
    }

    pub fn basis(p: u64, key: IKey) -> FixedElt {
        let mut x = FixedElt::zero(p);
        x.add_term(key, &QSqrt::one(p));
        x
    }

    pub fn add_term(&mut self, key: IKey, c: &QSqrt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key.clone()).or_insert_with(|| QSqrt::zero(c.q));
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, o: &FixedElt) -> FixedElt {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(k.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: &QSqrt) -> FixedElt {
        let mut out = FixedElt::zero(self.p);
        for (k, x) in &self.terms {
            out.add_term(k.clone(), &(x * c));
        }
        out
    }

    pub fn sub(&self, o: &FixedElt) -> FixedElt {
        self.add(&o.scale(&QSqrt::from_int(self.p, &crate::int::Int::from(-1))))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Specializes a generic element at `v = sqrt p`.
    pub fn from_generic(x: &IHallElt, p: u64) -> Result<FixedElt> {
        let mut out = FixedElt::zero(p);
        for (k, c) in x.iter() {
            let s = c.eval_sqrt(p).ok_or_else(|| Error::NonRationalCoefficient(format!("{c} has a quarter power of {p}")))?;
            out.add_term(k.clone(), &s);
        }
        Ok(out)
    }
}

impl fmt::Display for FixedElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|((a, l), c)| format!("({c}) K{a:?} u{l}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

type Census = HashMap<(ModClass, ModClass), u64>;

pub struct FixedQAlgebra {
    pub ctx: Arc<Ctx>,
    pub p: u64,
    pub budget: u64,
    census: Mutex<HashMap<(ModClass, DimVec), Arc<Census>>>,
    classes: Mutex<HashMap<DimVec, Arc<Vec<ModClass>>>>,
    products: Mutex<HashMap<(ModClass, ModClass), Arc<FixedElt>>>,
}

impl fmt::Debug for FixedQAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FixedQAlgebra").field("p", &self.p).finish_non_exhaustive()
    }
}

fn sub_vec(a: &[i64], b: &[i64]) -> DimVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

impl FixedQAlgebra {
    pub fn new(ctx: Arc<Ctx>, p: u64, budget: u64) -> Arc<FixedQAlgebra> {
        Arc::new(FixedQAlgebra { ctx, p, budget, census: Mutex::default(), classes: Mutex::default(), products: Mutex::default() })
    }

    fn classes(&self, d: &[i64]) -> Arc<Vec<ModClass>> {
        if d.iter().any(|&x| x < 0) {
            return Arc::new(Vec::new());
        }
        self.classes.lock().unwrap().entry(d.to_vec()).or_insert_with(|| Arc::new(classes_of_dim(&self.ctx, d))).clone()
    }

    /// `(X, Z) -> F^Y_{XZ}` over all `Z` of dimension `d`.
    fn census(&self, y: &ModClass, d: &[i64]) -> Result<Arc<Census>> {
        let key = (y.clone(), d.to_vec());
        if let Some(c) = self.census.lock().unwrap().get(&key) {
            return Ok(c.clone());
        }
        let c = Arc::new(census(&self.ctx, y, d, self.p, self.budget)?);
        self.census.lock().unwrap().insert(key, c.clone());
        Ok(c)
    }

    fn aut(&self, c: &ModClass) -> BigInt {
        aut_order(&self.ctx, c, self.p)
    }

    /// `F^Y_{XZ}` counted over `F_p`.
    pub fn hall_number(&self, x: &ModClass, z: &ModClass, y: &ModClass) -> Result<u64> {
        Ok(self.census(y, &self.ctx.class_dim(z))?.get(&(x.clone(), z.clone())).copied().unwrap_or(0))
    }

    /// `u_a * u_b` from the reduced product formula with counted Hall numbers.
    pub fn product_basis(&self, a: &ModClass, b: &ModClass) -> Result<Arc<FixedElt>> {
        let key = (a.clone(), b.clone());
        if let Some(v) = self.products.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let v = Arc::new(self.compute_product(a, b)?);
        self.products.lock().unwrap().insert(key, v.clone());
        Ok(v)
    }

    fn compute_product(&self, a: &ModClass, b: &ModClass) -> Result<FixedElt> {
        let ctx = self.ctx.clone();
        let q = &ctx.q;
        let p = self.p;
        let (da, db) = (ctx.class_dim(a), ctx.class_dim(b));
        let ab = q.euler(&da, &db);
        let mut out = FixedElt::zero(p);
        for x in crate::bar::piece::grades_up_to(&da) {
            let tx = q.tau_vec(&x);
            if (0..ctx.n()).any(|i| tx[i] > db[i]) {
                continue;
            }
            let n = sub_vec(&da, &x);
            let l = sub_vec(&db, &tx);
            let m: DimVec = n.iter().zip(&l).map(|(s, t)| s + t).collect();
            let fa = self.census(a, &n)?;
            let fb = self.census(b, &tx)?;
            let mut acc: HashMap<ModClass, BigInt> = HashMap::new();
            for mc in self.classes(&m).iter() {
                let fm = self.census(mc, &l)?;
                let mut total = BigInt::from(0);
                for ((xc, nc), &cnt_a) in fa.iter() {
                    let txc = ctx.twist(xc);
                    let wx = self.aut(xc) * BigInt::from(cnt_a) * self.aut(nc);
                    for ((lc, zc), &cnt_b) in fb.iter() {
                        if *zc != txc {
                            continue;
                        }
                        let Some(&cnt_m) = fm.get(&(nc.clone(), lc.clone())) else { continue };
                        total += &wx * BigInt::from(cnt_b) * self.aut(lc) * BigInt::from(cnt_m);
                    }
                }
                if total != BigInt::from(0) {
                    acc.insert(mc.clone(), total);
                }
            }
            let vexp = q.euler(&x, &m) - q.euler(&tx, &m) - ab;
            let qpow = q.euler(&n, &l);
            for (mc, t) in acc {
                let c = BigRational::new(t, self.aut(&mc));
                let val = QSqrt::sqrt_pow(p, vexp + 2 * qpow).scale(&c);
                out.add_term((x.clone(), mc), &val);
            }
        }
        Ok(out)
    }

    pub fn product(&self, x: &FixedElt, y: &FixedElt) -> Result<FixedElt> {
        let ctx = &self.ctx;
        let mut out = FixedElt::zero(self.p);
        for ((al, m), c1) in &x.terms {
            let dm = ctx.class_dim(m);
            for ((be, nn), c2) in &y.terms {
                let coef = &(c1 * c2) * &QSqrt::sqrt_pow(self.p, diamond_exp2(ctx, be, &dm));
                let s: DimVec = al.iter().zip(be).map(|(p, r)| p + r).collect();
                for ((xk, mk), c) in &self.product_basis(m, nn)?.terms {
                    let k: DimVec = s.iter().zip(xk).map(|(p, r)| p + r).collect();
                    out.add_term((k, mk.clone()), &(c * &coef));
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ihall::IHallAlgebra;
    use crate::modfq::count::DEFAULT_BUDGET;
    use crate::quiver::{IQuiver, RawQuiver};

    #[test]
    fn matches_generic_specialization() {
        for raw in [
            RawQuiver::new(&["1"], &[], &[]),
            RawQuiver::new(&["1", "2"], &[("1", "2")], &[]),
            RawQuiver::new(&["1", "2", "3"], &[("1", "2"), ("3", "2")], &[("1", "3")]),
        ] {
            let ctx = Ctx::new(IQuiver::validate(&raw).unwrap()).unwrap();
            let gen = IHallAlgebra::from_ctx(ctx.clone()).unwrap();
            for p in [2, 3] {
                let fq = FixedQAlgebra::new(ctx.clone(), p, DEFAULT_BUDGET);
                let keys = crate::symmetry::gamma::Reflection::keys_up_to(&gen, &vec![1; ctx.n()]);
                for (_, a) in keys.iter().filter(|k| k.0.iter().all(|&x| x == 0)) {
                    for (_, b) in keys.iter().filter(|k| k.0.iter().all(|&x| x == 0)) {
                        let g = gen.iproduct(&IHallElt::u(&ctx, a), &IHallElt::u(&ctx, b)).unwrap();
                        let want = FixedElt::from_generic(&g, p).unwrap();
                        assert_eq!(*fq.product_basis(a, b).unwrap(), want, "{a} * {b} at {p}");
                    }
                }
            }
        }
    }
}
