//! The bar involution on the generic i-Hall algebra.
//!
//! `bar(u_i) = v^-1 u_i`, `bar(K_i) = K_i`, extended as a ring
//! anti-automorphism that inverts `v^(1/2)`. Values on `u_lambda` are found
//! recursively from a product `x * y = c u_lambda + (terms of smaller module
//! dimension)` whose factors are already barred.

use crate::error::{Error, Result};
use crate::ihall::{IHallAlgebra, IHallElt};
use crate::laurent::LaurentHalf;
use crate::modfq::ModClass;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

pub struct IBar {
    pub alg: Arc<IHallAlgebra>,
    memo: Mutex<HashMap<ModClass, Arc<IHallElt>>>,
}

impl std::fmt::Debug for IBar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IBar").finish_non_exhaustive()
    }
}

impl IBar {
    pub fn new(alg: Arc<IHallAlgebra>) -> Arc<IBar> {
        Arc::new(IBar { alg, memo: Mutex::new(HashMap::new()) })
    }

    pub fn bar(&self, x: &IHallElt) -> Result<IHallElt> {
        let ctx = self.alg.ctx();
        let mut out = IHallElt { terms: Default::default(), variant: x.variant };
        for ((a, l), c) in x.iter() {
            // bar(K_a * u_l) = bar(u_l) * K_a
            let bl = self.bar_u(l)?;
            let t = if a.iter().all(|&e| e == 0) { (*bl).clone() } else { self.alg.iproduct(&bl, &IHallElt::k(ctx, a))? };
            out = out.add(&t.scale(&c.bar()));
        }
        out.variant = x.variant;
        Ok(out)
    }

    pub fn bar_u(&self, l: &ModClass) -> Result<Arc<IHallElt>> {
        if let Some(v) = self.memo.lock().unwrap().get(l) {
            return Ok(v.clone());
        }
        let v = Arc::new(self.compute(l)?);
        self.memo.lock().unwrap().insert(l.clone(), v.clone());
        Ok(v)
    }

    fn compute(&self, l: &ModClass) -> Result<IHallElt> {
        let alg = &self.alg;
        let ctx = alg.ctx();
        let nr = ctx.nroots();
        if l.is_zero() {
            return Ok(IHallElt::one(ctx));
        }
        let u = |m: &ModClass| IHallElt::u(ctx, m);
        let first = *ctx.adm.iter().find(|&&r| l.get(r) > 0).expect("nonzero class");
        let beta = ModClass::single(nr, first, 1);
        if l.total() == 1 {
            if ctx.roots[first].iter().sum::<i64>() == 1 {
                return Ok(u(l).scale(&LaurentHalf::v_pow(-1)));
            }
            // u_2 * u_1 - v^<b2,b1> u_1 * u_2 has M(beta) as its only top term
            let (r1, r2) = self.alg.eng().exceptional_pair(first).expect("non-simple root");
            let (m1, m2) = (ModClass::single(nr, r1, 1), ModClass::single(nr, r2, 1));
            let e = ctx.q.euler(&ctx.roots[r2], &ctx.roots[r1]);
            let p = alg.iproduct(&u(&m2), &u(&m1))?.sub(&alg.iproduct(&u(&m1), &u(&m2))?.scale(&LaurentHalf::v_pow(e)));
            let (b1, b2) = (self.bar_u(&m1)?, self.bar_u(&m2)?);
            let bar_p = alg.iproduct(&b1, &b2)?.sub(&alg.iproduct(&b2, &b1)?.scale(&LaurentHalf::v_pow(-e)));
            return self.solve(l, &p, bar_p);
        }
        // u_beta * u_rest = c u_l + K-terms
        let rest = l.checked_sub(&beta).expect("beta in support");
        let p = alg.iproduct(&u(&beta), &u(&rest))?;
        let bar_p = alg.iproduct(&*self.bar_u(&rest)?, &*self.bar_u(&beta)?)?;
        self.solve(l, &p, bar_p)
    }

    /// Given `p = c u_l + r` with `bar(r)` computable and `bar_p = bar(p)`,
    /// returns `bar(u_l) = (bar_p - bar(r)) / bar(c)`.
    fn solve(&self, l: &ModClass, p: &IHallElt, bar_p: IHallElt) -> Result<IHallElt> {
        let ctx = self.alg.ctx();
        let zero = vec![0; ctx.n()];
        let c = p.coeff(&zero, l);
        if c.is_zero() {
            return Err(Error::RankDeficient(format!("u{l} missing from its defining product")));
        }
        let mut r = p.clone();
        r.add_term(zero.clone(), l.clone(), &(-&c));
        let top = ctx.class_dim(l);
        for ((a, m), _) in r.iter() {
            if a.iter().all(|&x| x == 0) && ctx.class_dim(m) == top {
                return Err(Error::RankDeficient(format!("u{m} appears next to u{l} in its defining product")));
            }
        }
        let num = bar_p.sub(&self.bar(&r)?);
        num.div_exact(&c.bar()).ok_or_else(|| Error::NonIntegralCoefficient(format!("bar(u{l})")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ctx::Ctx;
    use crate::quiver::{IQuiver, RawQuiver};

    fn ibar(raw: RawQuiver) -> Arc<IBar> {
        IBar::new(IHallAlgebra::from_ctx(Ctx::new(IQuiver::validate(&raw).unwrap()).unwrap()).unwrap())
    }

    #[test]
    fn split_a1_square() {
        let b = ibar(RawQuiver::new(&["1"], &[], &[]));
        let ctx = b.alg.ctx().clone();
        let got = b.bar_u(&ModClass(vec![2])).unwrap();
        let mut want = IHallElt::u(&ctx, &ModClass(vec![2])).scale(&LaurentHalf::v_pow(-4));
        want.add_term(vec![1], ModClass(vec![0]), &(LaurentHalf::one() - LaurentHalf::v_pow(-4)));
        assert_eq!(*got, want);
    }

    #[test]
    fn involutive_and_anti_multiplicative_a3() {
        let b = ibar(RawQuiver::new(&["1", "2", "3"], &[("1", "2"), ("3", "2")], &[("1", "3")]));
        let alg = b.alg.clone();
        let ctx = alg.ctx().clone();
        let classes: Vec<ModClass> = [vec![1, 1, 0], vec![0, 1, 1], vec![1, 1, 1], vec![1, 0, 1]]
            .iter()
            .flat_map(|d| alg.eng().classes(d).iter().cloned().collect::<Vec<_>>())
            .collect();
        for x in &classes {
            let ux = IHallElt::u(&ctx, x);
            assert_eq!(b.bar(&b.bar(&ux).unwrap()).unwrap(), ux);
            for y in classes.iter().take(4) {
                let uy = IHallElt::u(&ctx, y);
                let lhs = b.bar(&alg.iproduct(&ux, &uy).unwrap()).unwrap();
                let rhs = alg.iproduct(&b.bar(&uy).unwrap(), &b.bar(&ux).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}
