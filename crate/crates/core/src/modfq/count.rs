//! Counting subrepresentations over a prime field.

use super::decompose::{decompose, fingerprint};
use super::{FqRep, ModClass};
use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::fp::{mulm, subm, Mat};
use crate::quiver::IQuiver;
use std::collections::HashMap;

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Vertices ordered so that every arrow points to an earlier vertex.
fn sinks_first(q: &IQuiver) -> Vec<usize> {
    let n = q.n();
    let mut outdeg = vec![0usize; n];
    for &(s, _) in q.arrows() {
        outdeg[s] += 1;
    }
    let mut order = Vec::new();
    let mut ready: Vec<usize> = (0..n).filter(|&i| outdeg[i] == 0).collect();
    while let Some(v) = ready.pop() {
        order.push(v);
        for &(s, t) in q.arrows() {
            if t == v {
                outdeg[s] -= 1;
                if outdeg[s] == 0 {
                    ready.push(s);
                }
            }
        }
    }
    order
}

/// Calls `visit(rows)` with each `k`-dimensional subspace of the row space of
/// `basis` (rows independent), given in reduced echelon form.
pub fn for_each_subspace(basis: &Mat, k: usize, p: u64, counter: &mut u64, budget: u64, visit: &mut dyn FnMut(&Mat, &[usize]) -> Result<()>) -> Result<()> {
    let a = basis.rows;
    if k > a {
        return Ok(());
    }
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        let free: Vec<(usize, usize)> =
            (0..k).flat_map(|r| (pivots[r] + 1..a).filter(|j| !pivots.contains(j)).map(move |j| (r, j))).collect();
        let mut vals = vec![0u64; free.len()];
        loop {
            *counter += 1;
            if *counter > budget {
                return Err(Error::BudgetExceeded(budget));
            }
            let mut coef = Mat::zeros(k, a);
            for r in 0..k {
                coef.set(r, pivots[r], 1);
            }
            for (idx, &(r, j)) in free.iter().enumerate() {
                coef.set(r, j, vals[idx]);
            }
            let mut sub = coef.mul(basis, p);
            let piv = sub.rref(p);
            visit(&sub, &piv)?;
            // odometer
            let mut pos = 0;
            while pos < vals.len() {
                vals[pos] += 1;
                if vals[pos] < p {
                    break;
                }
                vals[pos] = 0;
                pos += 1;
            }
            if pos == vals.len() {
                break;
            }
        }
        // next pivot combination
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            if pivots[i] < a - k + i {
                pivots[i] += 1;
                for j in i + 1..k {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
    }
}

struct Walk<'a> {
    q: &'a IQuiver,
    y: &'a FqRep,
    d: &'a [i64],
    order: Vec<usize>,
    chosen: Vec<Option<(Mat, Vec<usize>)>>,
    counter: u64,
    budget: u64,
}

impl Walk<'_> {
    fn step(&mut self, level: usize, visit: &mut dyn FnMut(&FqRep, &FqRep) -> Result<()>) -> Result<()> {
        if level == self.order.len() {
            let chosen: Vec<(Mat, Vec<usize>)> = self.chosen.iter().map(|c| c.clone().expect("all vertices chosen")).collect();
            let (sub, quot) = split_rep(self.q, self.y, &chosen);
            return visit(&sub, &quot);
        }
        let i = self.order[level];
        let p = self.y.p;
        let yi = self.y.dims[i];
        let mut constraint = Mat::zeros(0, yi);
        for (h, &(s, t)) in self.q.arrows().iter().enumerate() {
            if s != i {
                continue;
            }
            let (lt, _) = self.chosen[t].as_ref().expect("targets come first");
            let ann = lt.nullspace(p);
            constraint = constraint.vstack(&ann.mul(&self.y.maps[h], p));
        }
        let allowed = if constraint.rows == 0 { Mat::identity(yi) } else { constraint.nullspace(p) };
        let k = self.d[i] as usize;
        let mut subs = Vec::new();
        let budget = self.budget;
        for_each_subspace(&allowed, k, p, &mut self.counter, budget, &mut |m, piv| {
            subs.push((m.clone(), piv.to_vec()));
            Ok(())
        })?;
        for s in subs {
            self.chosen[i] = Some(s);
            self.step(level + 1, visit)?;
        }
        self.chosen[i] = None;
        Ok(())
    }
}

/// Subrepresentation and quotient for a choice of subspace at every vertex,
/// each in reduced echelon form with its pivot columns.
pub fn split_rep(q: &IQuiver, y: &FqRep, chosen: &[(Mat, Vec<usize>)]) -> (FqRep, FqRep) {
    let p = y.p;
    let n = q.n();
    let sub_dims: Vec<usize> = (0..n).map(|i| chosen[i].1.len()).collect();
    let quot_dims: Vec<usize> = (0..n).map(|i| y.dims[i] - sub_dims[i]).collect();
    let nonpiv: Vec<Vec<usize>> = (0..n).map(|i| (0..y.dims[i]).filter(|c| !chosen[i].1.contains(c)).collect()).collect();
    let mut sub_maps = Vec::new();
    let mut quot_maps = Vec::new();
    for (h, &(s, t)) in q.arrows().iter().enumerate() {
        let yh = &y.maps[h];
        let (ls, _) = &chosen[s];
        let (lt, pt) = &chosen[t];
        let mut sm = Mat::zeros(sub_dims[t], sub_dims[s]);
        for c in 0..sub_dims[s] {
            let w = yh.mul_vec(ls.row(c), p);
            for (r, &pc) in pt.iter().enumerate() {
                sm.set(r, c, w[pc]);
            }
        }
        let mut qm = Mat::zeros(quot_dims[t], quot_dims[s]);
        for (ci, &c) in nonpiv[s].iter().enumerate() {
            let mut w: Vec<u64> = (0..yh.rows).map(|j| yh.get(j, c)).collect();
            for (r, &pc) in pt.iter().enumerate() {
                let f = w[pc];
                if f != 0 {
                    for j in 0..w.len() {
                        w[j] = subm(w[j], mulm(f, lt.get(r, j), p), p);
                    }
                }
            }
            for (ji, &j) in nonpiv[t].iter().enumerate() {
                qm.set(ji, ci, w[j]);
            }
        }
        sub_maps.push(sm);
        quot_maps.push(qm);
    }
    (FqRep { p, dims: sub_dims, maps: sub_maps }, FqRep { p, dims: quot_dims, maps: quot_maps })
}

/// Calls `visit(sub, quotient)` for every subrepresentation of `y` with
/// dimension vector `d`. Returns the number of candidate subspaces tried.
pub fn for_each_submodule(q: &IQuiver, y: &FqRep, d: &[i64], budget: u64, visit: &mut dyn FnMut(&FqRep, &FqRep) -> Result<()>) -> Result<u64> {
    if d.len() != q.n() || d.iter().zip(&y.dims).any(|(&a, &b)| a < 0 || a as usize > b) {
        return Ok(0);
    }
    let mut w = Walk { q, y, d, order: sinks_first(q), chosen: vec![None; q.n()], counter: 0, budget };
    w.step(0, visit)?;
    Ok(w.counter)
}

/// `F^Y_{XZ}`: submodules `L` of `M_p(Y)` with `L = Z` and `Y/L = X`.
pub fn hall_number(ctx: &Ctx, x: &ModClass, z: &ModClass, y: &ModClass, p: u64, budget: u64) -> Result<u64> {
    let (dx, dz, dy) = (ctx.class_dim(x), ctx.class_dim(z), ctx.class_dim(y));
    if (0..ctx.n()).any(|i| dx[i] + dz[i] != dy[i]) {
        return Err(Error::DimMismatch(format!("{dx:?} + {dz:?} != {dy:?}")));
    }
    let rep = ctx.assemble(y, p)?;
    let (fz, fx) = (ctx.fingerprint(z), ctx.fingerprint(x));
    let mut count = 0u64;
    for_each_submodule(&ctx.q, &rep, &dz, budget, &mut |sub, quot| {
        if fingerprint(ctx, sub)? == fz && fingerprint(ctx, quot)? == fx {
            count += 1;
        }
        Ok(())
    })?;
    Ok(count)
}

/// All `F^Y_{XZ}` with `dim Z = d` at once, keyed by `(X, Z)`.
pub fn census(ctx: &Ctx, y: &ModClass, d: &[i64], p: u64, budget: u64) -> Result<HashMap<(ModClass, ModClass), u64>> {
    let rep = ctx.assemble(y, p)?;
    let mut out: HashMap<(ModClass, ModClass), u64> = HashMap::new();
    for_each_submodule(&ctx.q, &rep, d, budget, &mut |sub, quot| {
        let key = (decompose(ctx, quot)?, decompose(ctx, sub)?);
        *out.entry(key).or_insert(0) += 1;
        Ok(())
    })?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::RawQuiver;

    fn a2() -> std::sync::Arc<Ctx> {
        Ctx::new(IQuiver::validate(&RawQuiver::new(&["1", "2"], &[("1", "2")], &[])).unwrap()).unwrap()
    }

    #[test]
    fn a2_hall_numbers() {
        let c = a2();
        let (s1, s2, p1) = (ModClass(vec![1, 0, 0]), ModClass(vec![0, 1, 0]), ModClass(vec![0, 0, 1]));
        for p in [2, 3] {
            assert_eq!(hall_number(&c, &s1, &s2, &p1, p, DEFAULT_BUDGET).unwrap(), 1);
            assert_eq!(hall_number(&c, &s2, &s1, &p1, p, DEFAULT_BUDGET).unwrap(), 0);
        }
        assert!(matches!(hall_number(&c, &s1, &s1, &p1, 2, DEFAULT_BUDGET), Err(Error::DimMismatch(_))));
    }

    #[test]
    fn a1_lines() {
        let c = Ctx::new(IQuiver::validate(&RawQuiver::new(&["1"], &[], &[])).unwrap()).unwrap();
        for p in [2u64, 3, 5] {
            let n = hall_number(&c, &ModClass(vec![1]), &ModClass(vec![1]), &ModClass(vec![2]), p, DEFAULT_BUDGET).unwrap();
            assert_eq!(n, p + 1);
        }
        let err = hall_number(&c, &ModClass(vec![3]), &ModClass(vec![3]), &ModClass(vec![6]), 5, 10);
        assert!(matches!(err, Err(Error::BudgetExceeded(10))));
    }

    #[test]
    fn census_totals_count_all_subspaces() {
        // A1: the number of k-dim subspaces of F_p^n is the Gaussian binomial
        let c = Ctx::new(IQuiver::validate(&RawQuiver::new(&["1"], &[], &[])).unwrap()).unwrap();
        let t = census(&c, &ModClass(vec![4]), &[2], 3, DEFAULT_BUDGET).unwrap();
        assert_eq!(t.values().sum::<u64>(), 130);
    }
}
