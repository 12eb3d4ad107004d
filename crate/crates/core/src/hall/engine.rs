//! Generic Hall numbers `F^Y_{XZ}` as polynomials in `q`, organized as four
//! families of linear operators on the span of isoclasses:
//!
//! * `Lam_X [Z] = sum_Y F^Y_{XZ} [Y]` (left multiplication by `[X]`)
//! * `Rho_Z [X] = sum_Y F^Y_{XZ} [Y]` (right multiplication by `[Z]`)
//! * `Delta_X [Y] = sum_Z F^Y_{XZ} [Z]` (transpose of `Lam_X`)
//! * `Nabla_Z [Y] = sum_X F^Y_{XZ} [X]` (transpose of `Rho_Z`)
//!
//! Only the operators of simple modules are counted (hyperplanes above the
//! radical, lines in the socle). Roots are reached through commutators of an
//! exceptional pair, and general classes through products of root powers in
//! admissible order.

use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::fp::Mat;
use crate::int::Int;
use crate::lpoly::{interpolate, q_factorial, q_int, LPoly};
use crate::modfq::classes::{aut_polynomial, classes_of_dim};
use crate::modfq::count::{for_each_subspace, hall_number, split_rep, DEFAULT_BUDGET};
use crate::modfq::decompose::decompose;
use crate::modfq::{FqRep, ModClass};
use crate::quiver::DimVec;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

pub type QVec = HashMap<ModClass, LPoly>;

fn candidate_rows(ctx: &Ctx, rep: &FqRep, left: bool, i: usize, p: u64) -> Mat {
    let yi = rep.dims[i];
    let mut stacked = Mat::zeros(0, yi);
    for (h, &(s, t)) in ctx.q.arrows().iter().enumerate() {
        if left && t == i {
            stacked = stacked.vstack(&rep.maps[h].transpose());
        } else if !left && s == i {
            stacked = stacked.vstack(&rep.maps[h]);
        }
    }
    if stacked.rows == 0 {
        Mat::identity(yi)
    } else {
        stacked.nullspace(p)
    }
}

pub const DEFAULT_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    Lam,
    Rho,
    Delta,
    Nabla,
}

impl Op {
    /// Whether the operator raises dimension.
    fn raises(self) -> bool {
        matches!(self, Op::Lam | Op::Rho)
    }
}

pub fn add_scaled(acc: &mut QVec, v: &QVec, c: &LPoly) {
    for (k, x) in v {
        let t = x * c;
        match acc.get_mut(k) {
            Some(e) => {
                *e += &t;
                if e.is_zero() {
                    acc.remove(k);
                }
            }
            None => {
                if !t.is_zero() {
                    acc.insert(k.clone(), t);
                }
            }
        }
    }
}

fn sub_into(acc: &mut QVec, v: &QVec) {
    add_scaled(acc, v, &LPoly::from_i64(-1));
}

fn next_prime(after: u64) -> u64 {
    let mut n = after + 1;
    loop {
        if n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0) {
            return n;
        }
        n += 1;
    }
}

type Memo = Mutex<HashMap<(Op, ModClass, ModClass), Arc<QVec>>>;

pub struct Engine {
    pub ctx: Arc<Ctx>,
    primes: Vec<u64>,
    budget: u64,
    /// Exceptional pair `(r1, r2)` with `[M] = [M2][M1] - [M1][M2]` for each non-simple root.
    split: Vec<Option<(usize, usize)>>,
    classes: Mutex<HashMap<DimVec, Arc<Vec<ModClass>>>>,
    aut: Mutex<HashMap<ModClass, LPoly>>,
    tables: Mutex<HashMap<(bool, usize, ModClass), Arc<QVec>>>,
    memo: Memo,
}

impl std::fmt::Debug for Engine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Engine").field("primes", &self.primes).finish()
    }
}

impl Engine {
    pub fn new(ctx: Arc<Ctx>) -> Result<Arc<Engine>> {
        Engine::with_primes(ctx, &DEFAULT_PRIMES, DEFAULT_BUDGET)
    }

    pub fn with_primes(ctx: Arc<Ctx>, primes: &[u64], budget: u64) -> Result<Arc<Engine>> {
        if primes.is_empty() {
            return Err(Error::InvalidInput("empty prime list".into()));
        }
        let mut split = vec![None; ctx.nroots()];
        for b in 0..ctx.nroots() {
            if ctx.roots[b].iter().sum::<i64>() > 1 {
                split[b] = Some(find_exceptional_pair(&ctx, b, budget)?);
            }
        }
        Ok(Arc::new(Engine {
            ctx,
            primes: primes.to_vec(),
            budget,
            split,
            classes: Mutex::new(HashMap::new()),
            aut: Mutex::new(HashMap::new()),
            tables: Mutex::new(HashMap::new()),
            memo: Mutex::new(HashMap::new()),
        }))
    }

    pub fn classes(&self, d: &[i64]) -> Arc<Vec<ModClass>> {
        if let Some(v) = self.classes.lock().unwrap().get(d) {
            return v.clone();
        }
        let v = Arc::new(classes_of_dim(&self.ctx, d));
        self.classes.lock().unwrap().insert(d.to_vec(), v.clone());
        v
    }

    pub fn aut(&self, c: &ModClass) -> LPoly {
        if let Some(v) = self.aut.lock().unwrap().get(c) {
            return v.clone();
        }
        let v = aut_polynomial(&self.ctx, c);
        self.aut.lock().unwrap().insert(c.clone(), v.clone());
        v
    }

    /// The first `k` counting primes, extending the configured list when needed.
    fn nodes(&self, k: usize) -> Vec<u64> {
        let mut out: Vec<u64> = self.primes.iter().copied().take(k).collect();
        while out.len() < k {
            let last = *out.last().unwrap();
            out.push(next_prime(last));
        }
        out
    }

    /// `Delta_{S_i}[Y]` when `left`, else `Nabla_{S_i}[Y]`.
    fn simple_table(&self, left: bool, i: usize, y: &ModClass) -> Result<Arc<QVec>> {
        let key = (left, i, y.clone());
        if let Some(v) = self.tables.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let v = Arc::new(self.count_simple_table(left, i, y)?);
        self.tables.lock().unwrap().insert(key, v.clone());
        Ok(v)
    }

    fn count_simple_table(&self, left: bool, i: usize, y: &ModClass) -> Result<QVec> {
        let ctx = &self.ctx;
        let dy = ctx.class_dim(y);
        if dy[i] == 0 {
            return Ok(QVec::new());
        }
        let mut rest = dy.clone();
        rest[i] -= 1;
        // the space of candidate lines (socle) or hyperplanes (above the radical)
        let n = self.candidate_space(left, i, y, self.primes[0])?.rows;
        if n == 0 {
            return Ok(QVec::new());
        }
        let targets = self.classes(&rest);
        if targets.len() == 1 {
            let mut out = QVec::new();
            out.insert(targets[0].clone(), q_int(n as u32));
            return Ok(out);
        }
        let nodes = self.nodes(n + 2);
        let mut samples: HashMap<ModClass, Vec<(i64, Int)>> = HashMap::new();
        for (k, &p) in nodes.iter().enumerate() {
            let counts = self.count_at(left, i, y, p)?;
            for t in targets.iter() {
                let c = counts.get(t).copied().unwrap_or(0);
                samples.entry(t.clone()).or_insert_with(|| Vec::with_capacity(nodes.len())).push((p as i64, Int::from(c)));
            }
            let total: u64 = counts.values().sum();
            if total != (p.pow(n as u32) - 1) / (p - 1) {
                return Err(Error::InconsistentFingerprint(format!("table total at p={p}, step {k}")));
            }
        }
        let mut out = QVec::new();
        for (t, pts) in samples {
            let poly = interpolate(&pts).ok_or_else(|| Error::StabilizationFailed(format!("non-integral fit for {t}")))?;
            if poly.high().is_some_and(|h| h > n as i64 - 1) || poly.low().is_some_and(|l| l < 0) {
                return Err(Error::StabilizationFailed(format!("degree bound exceeded for {t}")));
            }
            if !poly.is_zero() {
                out.insert(t, poly);
            }
        }
        Ok(out)
    }

    /// Rows spanning the functionals killing the radical at `i` (left) or the
    /// socle at `i` (right).
    fn candidate_space(&self, left: bool, i: usize, y: &ModClass, p: u64) -> Result<Mat> {
        Ok(candidate_rows(&self.ctx, &self.ctx.assemble(y, p)?, left, i, p))
    }

    /// The class cut out by the line spanned by `v` in the candidate space.
    fn class_of_line(&self, rep: &FqRep, left: bool, i: usize, v: &Mat, p: u64) -> Result<ModClass> {
        let ctx = &self.ctx;
        let chosen: Vec<(Mat, Vec<usize>)> = (0..ctx.n())
            .map(|j| {
                if j == i {
                    let mut m = if left { v.nullspace(p) } else { v.clone() };
                    let piv = m.rref(p);
                    (m, piv)
                } else if left {
                    (Mat::identity(rep.dims[j]), (0..rep.dims[j]).collect())
                } else {
                    (Mat::zeros(0, rep.dims[j]), Vec::new())
                }
            })
            .collect();
        let (sub, quot) = split_rep(&ctx.q, rep, &chosen);
        if left {
            decompose(ctx, &sub)
        } else {
            decompose(ctx, &quot)
        }
    }

    /// Counts lines by the class they cut out. `GL(m)` acting on the
    /// multiplicity space of each isotypic block preserves the class, and a
    /// vector's orbit is fixed by the column space of its component in each
    /// block, so one representative per tuple of column spaces suffices.
    fn count_at(&self, left: bool, i: usize, y: &ModClass, p: u64) -> Result<HashMap<ModClass, u64>> {
        let ctx = &self.ctx;
        let rep = ctx.assemble(y, p)?;
        let reps = ctx.indecomposables(p)?;
        // (first coordinate at i, multiplicity, block candidate rows, choices)
        let mut blocks: Vec<(usize, u32, Mat, Vec<(Mat, u128)>)> = Vec::new();
        let mut offset = 0;
        let mut counter = 0u64;
        for &r in &ctx.adm {
            let m = y.get(r);
            if m == 0 {
                continue;
            }
            let di = reps[r].dims[i];
            let cb = candidate_rows(ctx, &reps[r], left, i, p);
            if cb.rows > 0 {
                let d = cb.rows;
                let mut choices = vec![(Mat::zeros(0, d), 1u128)];
                for k in 1..=d.min(m as usize) {
                    let w: u128 = (0..k).map(|j| (p as u128).pow(m) - (p as u128).pow(j as u32)).product();
                    for_each_subspace(&Mat::identity(d), k, p, &mut counter, self.budget, &mut |sub, _| {
                        choices.push((sub.clone(), w));
                        Ok(())
                    })?;
                }
                blocks.push((offset, m, cb, choices));
            }
            offset += m as usize * di;
        }
        let yi = rep.dims[i];
        let mut counts: HashMap<ModClass, u64> = HashMap::new();
        let mut pick = vec![0usize; blocks.len()];
        loop {
            if pick.iter().any(|&c| c > 0) {
                counter += 1;
                if counter > self.budget {
                    return Err(Error::BudgetExceeded(self.budget));
                }
                let mut v = Mat::zeros(1, yi);
                let mut weight = 1u128;
                for (b, &c) in blocks.iter().zip(&pick) {
                    let (off, _, cb, choices) = b;
                    let (w, wt) = &choices[c];
                    weight *= wt;
                    let di = cb.cols;
                    let comps = w.mul(cb, p);
                    for j in 0..comps.rows {
                        for t in 0..di {
                            v.set(0, off + j * di + t, comps.get(j, t));
                        }
                    }
                }
                let lines = u64::try_from(weight / (p as u128 - 1)).map_err(|_| Error::BudgetExceeded(self.budget))?;
                let c = self.class_of_line(&rep, left, i, &v, p)?;
                *counts.entry(c).or_insert(0) += lines;
            }
            let mut pos = 0;
            while pos < pick.len() {
                pick[pos] += 1;
                if pick[pos] < blocks[pos].3.len() {
                    break;
                }
                pick[pos] = 0;
                pos += 1;
            }
            if pos == pick.len() {
                break;
            }
        }
        Ok(counts)
    }

    /// Reference count enumerating every line.
    #[cfg(test)]
    fn count_at_by_lines(&self, left: bool, i: usize, y: &ModClass, p: u64) -> Result<HashMap<ModClass, u64>> {
        let rep = self.ctx.assemble(y, p)?;
        let space = self.candidate_space(left, i, y, p)?;
        let mut counts: HashMap<ModClass, u64> = HashMap::new();
        let mut counter = 0u64;
        for_each_subspace(&space, 1, p, &mut counter, self.budget, &mut |line, _| {
            *counts.entry(self.class_of_line(&rep, left, i, line, p)?).or_insert(0) += 1;
            Ok(())
        })?;
        Ok(counts)
    }

    /// Applies an operator to a vector.
    pub fn apply(&self, op: Op, x: &ModClass, v: &QVec) -> Result<QVec> {
        let mut acc = QVec::new();
        for (b, c) in v {
            let r = self.op_basis(op, x, b)?;
            add_scaled(&mut acc, &r, c);
        }
        Ok(acc)
    }

    fn unit(b: &ModClass) -> QVec {
        let mut v = QVec::new();
        v.insert(b.clone(), LPoly::one());
        v
    }

    /// The operator of class `x` applied to the basis vector `b`.
    pub fn op_basis(&self, op: Op, x: &ModClass, b: &ModClass) -> Result<Arc<QVec>> {
        if x.is_zero() {
            return Ok(Arc::new(Engine::unit(b)));
        }
        let ctx = &self.ctx;
        let (dx, db) = (ctx.class_dim(x), ctx.class_dim(b));
        if !op.raises() && (0..ctx.n()).any(|i| dx[i] > db[i]) {
            return Ok(Arc::new(QVec::new()));
        }
        let key = (op, x.clone(), b.clone());
        if let Some(v) = self.memo.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let v = Arc::new(self.compute(op, x, b)?);
        self.memo.lock().unwrap().insert(key, v.clone());
        Ok(v)
    }

    fn compute(&self, op: Op, x: &ModClass, b: &ModClass) -> Result<QVec> {
        let ctx = &self.ctx;
        let blocks: Vec<(usize, u32)> = ctx.adm.iter().filter(|&&r| x.get(r) > 0).map(|&r| (r, x.get(r))).collect();
        if blocks.len() > 1 {
            let mut order: Vec<ModClass> = blocks.iter().map(|&(r, m)| ModClass::single(ctx.nroots(), r, m)).collect();
            // Lam applies the last block first, Nabla too; Delta and Rho the first
            if matches!(op, Op::Lam | Op::Nabla) {
                order.reverse();
            }
            let mut v = Engine::unit(b);
            for blk in &order {
                v = self.apply(op, blk, &v)?;
            }
            return Ok(v);
        }
        let (r, m) = blocks[0];
        if m > 1 {
            let single = ModClass::single(ctx.nroots(), r, 1);
            let mut v = Engine::unit(b);
            for _ in 0..m {
                v = self.apply(op, &single, &v)?;
            }
            let f = q_factorial(m);
            let mut out = QVec::new();
            for (k, c) in v {
                let d = c.div_exact(&f).ok_or_else(|| Error::NonIntegralCoefficient(format!("power {m} of root {r}")))?;
                out.insert(k, d);
            }
            return Ok(out);
        }
        match self.split[r] {
            None => {
                let i = ctx.roots[r].iter().position(|&c| c == 1).expect("simple root");
                self.simple_op(op, i, b)
            }
            Some((r1, r2)) => {
                let m1 = ModClass::single(ctx.nroots(), r1, 1);
                let m2 = ModClass::single(ctx.nroots(), r2, 1);
                let e = Engine::unit(b);
                // (first applied, second applied) for the positive term
                let (a, c) = match op {
                    Op::Lam => (&m1, &m2),
                    Op::Rho => (&m2, &m1),
                    Op::Delta => (&m2, &m1),
                    Op::Nabla => (&m1, &m2),
                };
                let mut pos = self.apply(op, c, &self.apply(op, a, &e)?)?;
                let neg = self.apply(op, a, &self.apply(op, c, &e)?)?;
                sub_into(&mut pos, &neg);
                Ok(pos)
            }
        }
    }

    fn simple_op(&self, op: Op, i: usize, b: &ModClass) -> Result<QVec> {
        match op {
            Op::Delta => Ok((*self.simple_table(true, i, b)?).clone()),
            Op::Nabla => Ok((*self.simple_table(false, i, b)?).clone()),
            Op::Lam | Op::Rho => {
                let mut d = self.ctx.class_dim(b);
                d[i] += 1;
                let mut out = QVec::new();
                for y in self.classes(&d).iter() {
                    let t = self.simple_table(op == Op::Lam, i, y)?;
                    if let Some(c) = t.get(b) {
                        out.insert(y.clone(), c.clone());
                    }
                }
                Ok(out)
            }
        }
    }

    /// The pair `(r1, r2)` used for a non-simple root, `None` for simple roots.
    pub fn exceptional_pair(&self, r: usize) -> Option<(usize, usize)> {
        self.split[r]
    }

    /// `F^Y_{XZ}` as a polynomial in `q`.
    pub fn hall_poly(&self, x: &ModClass, z: &ModClass, y: &ModClass) -> Result<LPoly> {
        Ok(self.op_basis(Op::Lam, x, z)?.get(y).cloned().unwrap_or_default())
    }
}

/// Finds roots `beta_1 + beta_2 = beta` with `Hom` vanishing both ways,
/// `<beta_2, beta_1> = -1` and `<beta_1, beta_2> = 0`, and confirms by counting
/// that `M(beta)` is the middle term of the non-split extension.
fn find_exceptional_pair(ctx: &Ctx, b: usize, budget: u64) -> Result<(usize, usize)> {
    let beta = &ctx.roots[b];
    let whole = ModClass::single(ctx.nroots(), b, 1);
    for r1 in 0..ctx.nroots() {
        for r2 in 0..ctx.nroots() {
            let sum: Vec<i64> = (0..ctx.n()).map(|i| ctx.roots[r1][i] + ctx.roots[r2][i]).collect();
            if sum != *beta || ctx.hom[r1][r2] != 0 || ctx.hom[r2][r1] != 0 {
                continue;
            }
            if ctx.q.euler(&ctx.roots[r2], &ctx.roots[r1]) != -1 || ctx.q.euler(&ctx.roots[r1], &ctx.roots[r2]) != 0 {
                continue;
            }
            let m1 = ModClass::single(ctx.nroots(), r1, 1);
            let m2 = ModClass::single(ctx.nroots(), r2, 1);
            if hall_number(ctx, &m2, &m1, &whole, 2, budget)? == 1 && hall_number(ctx, &m1, &m2, &whole, 2, budget)? == 0 {
                return Ok((r1, r2));
            }
        }
    }
    Err(Error::InconsistentFingerprint(format!("no exceptional pair for root {beta:?}")))
}
