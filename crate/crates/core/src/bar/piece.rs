//! Graded pieces of the hat algebra and the partial order on basis pairs.

use crate::ctx::Ctx;
use crate::ihall::{elt::adm_key, IHallAlgebra, IHallElt, IKey};
use crate::modfq::classes::degeneration_lt;
use crate::modfq::ModClass;
use crate::quiver::DimVec;

/// Basis pairs `(alpha, lambda)` of one grade, listed along a linear
/// extension of the pair order (smaller first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPiece {
    pub grade: DimVec,
    pub basis: Vec<IKey>,
}

/// All `alpha >= 0` with `alpha + tau(alpha) <= grade`.
pub fn k_parts(ctx: &Ctx, grade: &[i64]) -> Vec<DimVec> {
    let mut out = grades_up_to(grade);
    out.retain(|a| {
        let t = ctx.q.tau_vec(a);
        (0..ctx.n()).all(|i| a[i] + t[i] <= grade[i])
    });
    out
}

/// `(alpha, lambda) < (beta, mu)`: same grade, and either `alpha < beta`
/// componentwise or `alpha = beta` and `lambda` a proper degeneration of `mu`.
pub fn pair_lt(ctx: &Ctx, a: &IKey, b: &IKey) -> bool {
    if IHallElt::term_grade(ctx, &a.0, &a.1) != IHallElt::term_grade(ctx, &b.0, &b.1) {
        return false;
    }
    if a.0 == b.0 {
        return degeneration_lt(ctx, &a.1, &b.1);
    }
    a.0.iter().zip(&b.0).all(|(x, y)| x <= y)
}

pub fn pair_leq(ctx: &Ctx, a: &IKey, b: &IKey) -> bool {
    a == b || pair_lt(ctx, a, b)
}

/// Topological order of `keys` under `lt`, ties broken by `tie` (or its reverse).
pub fn linear_extension<K: Clone, T: Ord>(keys: &[K], lt: impl Fn(&K, &K) -> bool, tie: impl Fn(&K) -> T, reverse_ties: bool) -> Vec<K> {
    let n = keys.len();
    let mut indeg = vec![0usize; n];
    for i in 0..n {
        for j in 0..n {
            if i != j && lt(&keys[j], &keys[i]) {
                indeg[i] += 1;
            }
        }
    }
    let mut done = vec![false; n];
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let ready = (0..n).filter(|&i| !done[i] && indeg[i] == 0);
        let pick = if reverse_ties { ready.max_by_key(|&i| tie(&keys[i])) } else { ready.min_by_key(|&i| tie(&keys[i])) }.expect("partial order is acyclic");
        done[pick] = true;
        out.push(keys[pick].clone());
        for j in 0..n {
            if !done[j] && lt(&keys[pick], &keys[j]) {
                indeg[j] -= 1;
            }
        }
    }
    out
}

fn pair_tie(ctx: &Ctx, k: &IKey) -> (i64, DimVec, Vec<u32>) {
    (k.0.iter().sum(), k.0.clone(), adm_key(ctx, &k.1))
}

pub fn hat_piece_ordered(alg: &IHallAlgebra, grade: &[i64], reverse_ties: bool) -> GradedPiece {
    let ctx = alg.ctx();
    let mut keys = Vec::new();
    for alpha in k_parts(ctx, grade) {
        let t = ctx.q.tau_vec(&alpha);
        let rest: DimVec = (0..ctx.n()).map(|i| grade[i] - alpha[i] - t[i]).collect();
        for l in alg.eng().classes(&rest).iter() {
            keys.push((alpha.clone(), l.clone()));
        }
    }
    let basis = linear_extension(&keys, |a, b| pair_lt(ctx, a, b), |k| pair_tie(ctx, k), reverse_ties);
    GradedPiece { grade: grade.to_vec(), basis }
}

pub fn hat_piece(alg: &IHallAlgebra, grade: &[i64]) -> GradedPiece {
    hat_piece_ordered(alg, grade, false)
}

/// Classes of one dimension along a linear extension of the degeneration order.
pub fn plain_order(ctx: &Ctx, classes: &[ModClass], reverse_ties: bool) -> Vec<ModClass> {
    linear_extension(classes, |a, b| degeneration_lt(ctx, a, b), |k| adm_key(ctx, k), reverse_ties)
}

/// Every `g` with `0 <= g <= bound` componentwise.
pub fn grades_up_to(bound: &[i64]) -> Vec<DimVec> {
    let mut out = vec![vec![]];
    for &b in bound {
        let mut next = Vec::new();
        for v in &out {
            for k in 0..=b.max(0) {
                let mut w: DimVec = v.clone();
                w.push(k);
                next.push(w);
            }
        }
        out = next;
    }
    out
}
