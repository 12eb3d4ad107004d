//! Multiplication in the generic i-Hall algebra.

use super::elt::{IHallElt, IKey, Variant};
use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::hall::{Engine, HallAlgebra, Op};
use crate::laurent::LaurentHalf;
use crate::lin::Lin;
use crate::lpoly::LPoly;
use crate::modfq::ModClass;
use crate::quiver::DimVec;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

pub struct IHallAlgebra {
    pub hall: Arc<HallAlgebra>,
    products: Mutex<HashMap<(ModClass, ModClass), Arc<Lin<IKey>>>>,
}

impl std::fmt::Debug for IHallAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("IHallAlgebra").finish_non_exhaustive()
    }
}

/// `v`-exponent `e` with `K_alpha * X = v^e X * K_alpha` for `X` of dimension `d`.
pub fn k_commute(ctx: &Ctx, alpha: &[i64], d: &[i64]) -> i64 {
    let t = ctx.q.tau_vec(alpha);
    ctx.q.sym(&t, d) - ctx.q.sym(alpha, d)
}

/// Doubled exponent of `K_alpha <> u_lambda = v^(e2/2) K_alpha * u_lambda`.
pub fn diamond_exp2(ctx: &Ctx, alpha: &[i64], d: &[i64]) -> i64 {
    let t = ctx.q.tau_vec(alpha);
    let diff: Vec<i64> = alpha.iter().zip(&t).map(|(a, b)| a - b).collect();
    ctx.q.sym(&diff, d)
}

fn sub_vec(a: &[i64], b: &[i64]) -> DimVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// All `x` with `0 <= x <= a` componentwise.
fn boxed(a: &[i64]) -> Vec<DimVec> {
    let mut out = vec![vec![]];
    for &ai in a {
        let mut next = Vec::new();
        for v in &out {
            for k in 0..=ai.max(0) {
                let mut w = v.clone();
                w.push(k);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

impl IHallAlgebra {
    pub fn new(hall: Arc<HallAlgebra>) -> Arc<IHallAlgebra> {
        Arc::new(IHallAlgebra { hall, products: Mutex::new(HashMap::new()) })
    }

    pub fn from_ctx(ctx: Arc<Ctx>) -> Result<Arc<IHallAlgebra>> {
        Ok(IHallAlgebra::new(HallAlgebra::new(Engine::new(ctx)?)))
    }

    pub fn ctx(&self) -> &Arc<Ctx> {
        self.hall.ctx()
    }

    pub fn eng(&self) -> &Arc<Engine> {
        &self.hall.eng
    }

    pub fn hall(&self) -> &Arc<HallAlgebra> {
        &self.hall
    }

    /// Doubled exponent `e2` with `K_alpha <> U_l = v^(e2/2) K_alpha * u_l`.
    pub fn basis_exp2(&self, alpha: &[i64], l: &ModClass) -> i64 {
        diamond_exp2(self.ctx(), alpha, &self.ctx().class_dim(l)) + self.hall.rescale_exp2(l)
    }

    /// `u_a * u_b` expanded on `K_x * u_m`.
    pub fn product_basis(&self, a: &ModClass, b: &ModClass) -> Result<Arc<Lin<IKey>>> {
        let key = (a.clone(), b.clone());
        if let Some(v) = self.products.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let v = Arc::new(self.compute_product(a, b)?);
        self.products.lock().unwrap().insert(key, v.clone());
        Ok(v)
    }

    fn compute_product(&self, a: &ModClass, b: &ModClass) -> Result<Lin<IKey>> {
        let ctx = self.ctx().clone();
        let eng = self.eng().clone();
        let q = &ctx.q;
        let (da, db) = (ctx.class_dim(a), ctx.class_dim(b));
        let ab = q.euler(&da, &db);
        let mut out = Lin::zero();
        for x in boxed(&da) {
            let tx = q.tau_vec(&x);
            if (0..ctx.n()).any(|i| tx[i] > db[i]) {
                continue;
            }
            let n = sub_vec(&da, &x);
            let l = sub_vec(&db, &tx);
            let m: DimVec = n.iter().zip(&l).map(|(s, t)| s + t).collect();
            // sum over X of a_X sum_{N,L} F^A_{X,N} a_N F^B_{L,tX} a_L F^M_{N,L}
            let mut acc: HashMap<ModClass, LPoly> = HashMap::new();
            for xc in eng.classes(&x).iter() {
                let deltas = eng.op_basis(Op::Delta, xc, a)?;
                if deltas.is_empty() {
                    continue;
                }
                let nablas = eng.op_basis(Op::Nabla, &ctx.twist(xc), b)?;
                if nablas.is_empty() {
                    continue;
                }
                let ax = eng.aut(xc);
                for (nc, fa) in deltas.iter() {
                    let wn = &(fa * &eng.aut(nc)) * &ax;
                    for (lc, fb) in nablas.iter() {
                        let w = &(&wn * fb) * &eng.aut(lc);
                        for (mc, fm) in eng.op_basis(Op::Lam, nc, lc)?.iter() {
                            let t = &w * fm;
                            let e = acc.entry(mc.clone()).or_default();
                            *e += &t;
                        }
                    }
                }
            }
            let v2 = 2 * (q.euler(&x, &m) - q.euler(&tx, &m) - ab);
            let qpow = q.euler(&n, &l);
            for (mc, c) in acc {
                if c.is_zero() {
                    continue;
                }
                let c = c.div_exact(&eng.aut(&mc)).ok_or_else(|| Error::NonIntegralCoefficient(format!("u{a} * u{b} at K{x:?} u{mc}")))?;
                let lh = LaurentHalf::from_q(&c.shift(qpow)).shift2(v2);
                out.add_term((x.clone(), mc), &lh);
            }
        }
        Ok(out)
    }

    /// Bilinear product with `(K_a u_m)(K_b u_n) = v^{(b - tau b, dim m)} K_{a+b} (u_m * u_n)`.
    pub fn iproduct(&self, x: &IHallElt, y: &IHallElt) -> Result<IHallElt> {
        let ctx = self.ctx();
        let mut out = Lin::zero();
        for ((al, m), c1) in x.iter() {
            let dm = ctx.class_dim(m);
            for ((be, nn), c2) in y.iter() {
                let e2 = diamond_exp2(ctx, be, &dm) * 2;
                let coef = (c1 * c2).shift2(e2);
                let s: DimVec = al.iter().zip(be).map(|(p, r)| p + r).collect();
                for ((xk, mk), c) in self.product_basis(m, nn)?.iter() {
                    let k: DimVec = s.iter().zip(xk).map(|(p, r)| p + r).collect();
                    out.add_term((k, mk.clone()), &(c * &coef));
                }
            }
        }
        let variant = if x.variant == Variant::Hat && y.variant == Variant::Hat { Variant::Hat } else { Variant::Tilde };
        Ok(IHallElt { terms: out, variant })
    }

    /// Product of several factors, left to right.
    pub fn iproduct_all(&self, xs: &[&IHallElt]) -> Result<IHallElt> {
        let mut acc = IHallElt::one(self.ctx());
        for x in xs {
            acc = self.iproduct(&acc, x)?;
        }
        Ok(acc)
    }

    /// `K_alpha <> x`, the rescaled left multiplication.
    pub fn diamond(&self, alpha: &[i64], x: &IHallElt) -> IHallElt {
        let ctx = self.ctx();
        let mut out = IHallElt { terms: Lin::zero(), variant: x.variant };
        for ((be, l), c) in x.iter() {
            let e2 = diamond_exp2(ctx, alpha, &ctx.class_dim(l));
            let k: DimVec = alpha.iter().zip(be).map(|(p, r)| p + r).collect();
            out.add_term(k, l.clone(), &c.shift2(e2));
        }
        out
    }

    /// `K_alpha <> U_lambda` as an element.
    pub fn diamond_u(&self, alpha: &[i64], l: &ModClass) -> IHallElt {
        let e2 = self.basis_exp2(alpha, l);
        let mut out = IHallElt::zero();
        out.add_term(alpha.to_vec(), l.clone(), &LaurentHalf::v_half_pow(e2));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{IQuiver, RawQuiver};

    fn alg(raw: RawQuiver) -> Arc<IHallAlgebra> {
        IHallAlgebra::from_ctx(Ctx::new(IQuiver::validate(&raw).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn rank_one_square() {
        let h = alg(RawQuiver::new(&["1"], &[], &[]));
        let ctx = h.ctx().clone();
        let s = IHallElt::u(&ctx, &ModClass(vec![1]));
        let got = h.iproduct(&s, &s).unwrap();
        let mut want = IHallElt::u(&ctx, &ModClass(vec![2])).scale(&LaurentHalf::v_pow(-1));
        want.add_term(vec![1], ModClass(vec![0]), &(LaurentHalf::v_pow(1) - LaurentHalf::v_pow(-1)));
        assert_eq!(got, want);
    }

    #[test]
    fn unit_is_neutral() {
        let h = alg(RawQuiver::new(&["1", "2", "3"], &[("1", "2"), ("3", "2")], &[("1", "3")]));
        let ctx = h.ctx().clone();
        let x = IHallElt::u(&ctx, &ModClass(vec![1, 0, 1, 0, 1, 0]));
        assert_eq!(h.iproduct(&IHallElt::one(&ctx), &x).unwrap(), x);
        assert_eq!(h.iproduct(&x, &IHallElt::one(&ctx)).unwrap(), x);
    }

    #[test]
    fn k_commute_examples() {
        let a3 = Ctx::new(IQuiver::validate(&RawQuiver::new(&["1", "2", "3"], &[("1", "2"), ("3", "2")], &[("1", "3")])).unwrap()).unwrap();
        assert_eq!(k_commute(&a3, &[1, 0, 0], &[1, 0, 0]), -2);
        assert_eq!(k_commute(&a3, &[0, 0, 0], &[1, 1, 0]), 0);
        let a2 = Ctx::new(IQuiver::validate(&RawQuiver::new(&["1", "2"], &[("1", "2")], &[])).unwrap()).unwrap();
        assert_eq!(k_commute(&a2, &[1, 2], &[1, 1]), 0);
        assert_eq!(diamond_exp2(&a3, &[1, 0, 0], &[1, 0, 0]), 2);
    }

    #[test]
    fn k_commutation_matches_products() {
        let h = alg(RawQuiver::new(&["1", "2", "3"], &[("1", "2"), ("3", "2")], &[("1", "3")]));
        let ctx = h.ctx().clone();
        for r in 0..ctx.nroots() {
            let u = IHallElt::u(&ctx, &ModClass::single(ctx.nroots(), r, 1));
            for i in 0..3 {
                let k = IHallElt::k(&ctx, &ctx.q.unit(i));
                let left = h.iproduct(&k, &u).unwrap();
                let right = h.iproduct(&u, &k).unwrap();
                let e = k_commute(&ctx, &ctx.q.unit(i), &ctx.roots[r]);
                assert_eq!(left, right.scale(&LaurentHalf::v_pow(e)));
            }
        }
    }

    #[test]
    fn diamond_composes() {
        let h = alg(RawQuiver::new(&["1", "2", "3"], &[("1", "2"), ("3", "2")], &[("1", "3")]));
        let ctx = h.ctx().clone();
        let x = IHallElt::u(&ctx, &ModClass(vec![1, 0, 0, 0, 0, 0]));
        let a = [1, 0, 0];
        let b = [0, 1, 2];
        let ab = [1, 1, 2];
        assert_eq!(h.diamond(&a, &h.diamond(&b, &x)), h.diamond(&ab, &x));
        assert_eq!(h.diamond(&[0, 0, 0], &x), x);
    }
}
