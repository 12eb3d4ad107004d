//! The twisted generic Hall algebra of `kQ` over `Z[v^(1/2), v^(-1/2)]`.

use super::engine::{Engine, Op};
use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::laurent::LaurentHalf;
use crate::lin::Lin;
use crate::lpoly::LPoly;
use crate::modfq::ModClass;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

pub type PlainHallElt = Lin<ModClass>;

pub struct HallAlgebra {
    pub eng: Arc<Engine>,
    products: Mutex<HashMap<(ModClass, ModClass), Arc<PlainHallElt>>>,
}

impl std::fmt::Debug for HallAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HallAlgebra").finish_non_exhaustive()
    }
}

impl HallAlgebra {
    pub fn new(eng: Arc<Engine>) -> Arc<HallAlgebra> {
        Arc::new(HallAlgebra { eng, products: Mutex::new(HashMap::new()) })
    }

    pub fn ctx(&self) -> &Arc<Ctx> {
        &self.eng.ctx
    }

    /// `G^l_{m n} = F^l_{m n} a_m a_n / a_l` as a Laurent polynomial in `q`.
    pub fn g_poly(&self, m: &ModClass, n: &ModClass, l: &ModClass) -> Result<LPoly> {
        let f = self.eng.hall_poly(m, n, l)?;
        self.f_to_g(&f, m, n, l)
    }

    fn f_to_g(&self, f: &LPoly, m: &ModClass, n: &ModClass, l: &ModClass) -> Result<LPoly> {
        if f.is_zero() {
            return Ok(LPoly::zero());
        }
        let num = &(f * &self.eng.aut(m)) * &self.eng.aut(n);
        num.div_exact(&self.eng.aut(l)).ok_or_else(|| Error::NonIntegralCoefficient(format!("G^{l}_{{{m},{n}}}")))
    }

    /// `u_m u_n = v^<m,n> sum_l G^l_{mn}(v^2) u_l`.
    pub fn product_basis(&self, m: &ModClass, n: &ModClass) -> Result<Arc<PlainHallElt>> {
        let key = (m.clone(), n.clone());
        if let Some(v) = self.products.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let ctx = self.ctx();
        let fs = self.eng.op_basis(Op::Lam, m, n)?;
        let twist = ctx.q.euler(&ctx.class_dim(m), &ctx.class_dim(n));
        let mut out = PlainHallElt::zero();
        for (l, f) in fs.iter() {
            let g = self.f_to_g(f, m, n, l)?;
            out.add_term(l.clone(), &LaurentHalf::from_q(&g).shift2(2 * twist));
        }
        let out = Arc::new(out);
        self.products.lock().unwrap().insert(key, out.clone());
        Ok(out)
    }

    pub fn product(&self, x: &PlainHallElt, y: &PlainHallElt) -> Result<PlainHallElt> {
        let mut out = PlainHallElt::zero();
        for (m, a) in x.iter() {
            for (n, b) in y.iter() {
                out.add_scaled(&*self.product_basis(m, n)?, &(a * b));
            }
        }
        Ok(out)
    }

    /// `(x, y) = sum_l x_l y_l a_l(v^2)`.
    pub fn pairing(&self, x: &PlainHallElt, y: &PlainHallElt) -> LaurentHalf {
        let mut out = LaurentHalf::zero();
        for (l, a) in x.iter() {
            let b = y.get(l);
            if !b.is_zero() {
                out += &(&(a * &b) * &LaurentHalf::from_q(&self.eng.aut(l)));
            }
        }
        out
    }

    /// Doubled exponent `e2` with `U_l = v^(e2/2) u_l`.
    pub fn rescale_exp2(&self, l: &ModClass) -> i64 {
        let ctx = self.ctx();
        let d = ctx.class_dim(l);
        -2 * ctx.end_dim(l) as i64 + ctx.q.euler(&d, &d)
    }

    pub fn rescaled_u(&self, l: &ModClass) -> PlainHallElt {
        PlainHallElt::term(l.clone(), LaurentHalf::v_half_pow(self.rescale_exp2(l)))
    }

    /// Root-power blocks of `l` in admissible order.
    pub fn blocks(&self, l: &ModClass) -> Vec<ModClass> {
        let ctx = self.ctx();
        ctx.adm.iter().filter(|&&r| l.get(r) > 0).map(|&r| ModClass::single(ctx.nroots(), r, l.get(r))).collect()
    }

    /// The bar involution on a basis vector: factor into admissible blocks,
    /// bar each block, reverse and multiply out.
    pub fn bar_basis(&self, l: &ModClass) -> Result<PlainHallElt> {
        let ctx = self.ctx();
        let blocks = self.blocks(l);
        let dims: Vec<Vec<i64>> = blocks.iter().map(|b| ctx.class_dim(b)).collect();
        // u_l = v^{sum_{a<b} <d_a, d_b>} u_{B_1} ... u_{B_N}
        let mut e = 0;
        for a in 0..dims.len() {
            for b in a + 1..dims.len() {
                e += ctx.q.euler(&dims[a], &dims[b]);
            }
        }
        let mut acc = PlainHallElt::basis(ctx.zero_class());
        for blk in blocks.iter().rev() {
            let m = blk.total() as i64;
            acc = self.product(&acc, &PlainHallElt::term(blk.clone(), LaurentHalf::v_pow(-m * m)))?;
        }
        Ok(acc.scale(&LaurentHalf::v_pow(-e)))
    }

    pub fn bar(&self, x: &PlainHallElt) -> Result<PlainHallElt> {
        let mut out = PlainHallElt::zero();
        for (l, c) in x.iter() {
            out.add_scaled(&self.bar_basis(l)?, &c.bar());
        }
        Ok(out)
    }
}
