//! Extension counting by explicit cocycles, an independent check on Hall numbers.

use super::decompose::fingerprint;
use super::{hom_dim_unchecked, FqRep, ModClass};
use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::fp::Mat;
use num_bigint::BigInt;
use num_rational::BigRational;

/// Middle term of the extension of `x` by `z` with cocycle `e`
/// (one `z_t x x_s` block per arrow).
pub fn middle_term(ctx: &Ctx, x: &FqRep, z: &FqRep, e: &[Mat]) -> FqRep {
    let q = &ctx.q;
    let dims: Vec<usize> = (0..q.n()).map(|i| z.dims[i] + x.dims[i]).collect();
    let mut maps = Vec::new();
    for (h, &(s, t)) in q.arrows().iter().enumerate() {
        let mut m = Mat::zeros(dims[t], dims[s]);
        for i in 0..z.dims[t] {
            for j in 0..z.dims[s] {
                m.set(i, j, z.maps[h].get(i, j));
            }
            for j in 0..x.dims[s] {
                m.set(i, z.dims[s] + j, e[h].get(i, j));
            }
        }
        for i in 0..x.dims[t] {
            for j in 0..x.dims[s] {
                m.set(z.dims[t] + i, z.dims[s] + j, x.maps[h].get(i, j));
            }
        }
        maps.push(m);
    }
    FqRep { p: x.p, dims, maps }
}

/// `|Ext^1(X, Z)_Y| / |Hom(X, Z)|`, counting cocycles whose middle term is `Y`.
pub fn riedtmann_peng_g(ctx: &Ctx, x: &ModClass, z: &ModClass, y: &ModClass, p: u64, budget: u64) -> Result<BigRational> {
    let q = &ctx.q;
    let (mx, mz) = (ctx.assemble(x, p)?, ctx.assemble(z, p)?);
    // coboundary map from vertex maps to arrow maps
    let vars: usize = (0..q.n()).map(|i| mz.dims[i] * mx.dims[i]).sum();
    let blocks: Vec<(usize, usize)> = q.arrows().iter().map(|&(s, t)| (mz.dims[t], mx.dims[s])).collect();
    let cocycle_dim: usize = blocks.iter().map(|(a, b)| a * b).sum();
    let total = (p as u128).checked_pow(cocycle_dim as u32).filter(|&t| t <= budget as u128).ok_or(Error::BudgetExceeded(budget))?;
    let mut delta = Mat::zeros(cocycle_dim, vars);
    let mut voff = vec![0; q.n() + 1];
    for i in 0..q.n() {
        voff[i + 1] = voff[i] + mz.dims[i] * mx.dims[i];
    }
    let mut row = 0;
    for (h, &(s, t)) in q.arrows().iter().enumerate() {
        for a in 0..mz.dims[t] {
            for b in 0..mx.dims[s] {
                // (Z_h f_s - f_t X_h)[a][b]
                for c in 0..mz.dims[s] {
                    let v = mz.maps[h].get(a, c);
                    let idx = voff[s] + c * mx.dims[s] + b;
                    delta.set(row, idx, crate::fp::addm(delta.get(row, idx), v, p));
                }
                for c in 0..mx.dims[t] {
                    let v = mx.maps[h].get(c, b);
                    let idx = voff[t] + a * mx.dims[t] + c;
                    delta.set(row, idx, crate::fp::subm(delta.get(row, idx), v, p));
                }
                row += 1;
            }
        }
    }
    let rank = delta.rank(p);
    let fy = ctx.fingerprint(y);
    let mut count = 0u64;
    let mut vals = vec![0u64; cocycle_dim];
    for _ in 0..total {
        let mut e = Vec::new();
        let mut k = 0;
        for &(r, c) in &blocks {
            let mut m = Mat::zeros(r, c);
            m.data.copy_from_slice(&vals[k..k + r * c]);
            k += r * c;
            e.push(m);
        }
        let mid = middle_term(ctx, &mx, &mz, &e);
        if fingerprint(ctx, &mid)? == fy {
            count += 1;
        }
        for v in vals.iter_mut() {
            *v += 1;
            if *v < p {
                break;
            }
            *v = 0;
        }
    }
    let hom = hom_dim_unchecked(q, &mx, &mz);
    let denom = BigInt::from(p).pow((rank + hom) as u32);
    Ok(BigRational::new(BigInt::from(count), denom))
}

/// `F^Y_{XZ} a_X a_Z = |Ext^1(X, Z)_Y| / |Hom(X, Z)| a_Y` at prime `p` for every
/// triple with `Y` of total dimension at most `max_total`.
pub fn check_riedtmann_peng(ctx: &Ctx, max_total: i64, p: u64, budget: u64) -> Result<crate::report::Report> {
    use super::classes::{aut_order, classes_of_dim};
    let mut rep = crate::report::Report::new(&format!("Riedtmann-Peng at p = {p}"));
    let n = ctx.n();
    let bound = vec![max_total; n];
    for dy in crate::bar::piece::grades_up_to(&bound) {
        if dy.iter().sum::<i64>() > max_total {
            continue;
        }
        for dz in crate::bar::piece::grades_up_to(&dy) {
            let dx: Vec<i64> = (0..n).map(|i| dy[i] - dz[i]).collect();
            for y in classes_of_dim(ctx, &dy) {
                for x in classes_of_dim(ctx, &dx) {
                    for z in classes_of_dim(ctx, &dz) {
                        let f = super::count::hall_number(ctx, &x, &z, &y, p, budget)?;
                        let g = riedtmann_peng_g(ctx, &x, &z, &y, p, budget)?;
                        let lhs = BigRational::from_integer(BigInt::from(f) * aut_order(ctx, &x, p) * aut_order(ctx, &z, p));
                        let rhs = g * BigRational::from_integer(aut_order(ctx, &y, p));
                        rep.push(format!("F^{y}_{{{x},{z}}}"), lhs == rhs, format!("F a_X a_Z = {lhs}, G a_Y = {rhs}"));
                    }
                }
            }
        }
    }
    Ok(rep)
}
