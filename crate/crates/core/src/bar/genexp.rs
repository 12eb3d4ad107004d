//! Expansion of a graded piece of the hat algebra in monomials of the
//! generators `u_i` and `K_i`, and the bar involution computed through it.

use super::piece::{hat_piece, GradedPiece};
use crate::error::{Error, Result};
use crate::ihall::{IHallAlgebra, IHallElt, IKey};
use crate::laurent::LaurentHalf;
use crate::lin::Lin;
use crate::quiver::DimVec;
use std::collections::HashMap;

/// `K_alpha * u_{i_1} * ... * u_{i_k}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorWord {
    pub k: DimVec,
    pub word: Vec<usize>,
}

const MOD: u64 = (1 << 61) - 1;
const EVAL_AT: u64 = 0x1234_5678_9abc_def;

/// Basis elements expressed through monomials: `basis_b = sum_m (adj[b][m] / det) mono_m`.
#[derive(Clone, Debug)]
pub struct Expansion {
    pub piece: GradedPiece,
    pub monomials: Vec<GeneratorWord>,
    pub det: LaurentHalf,
    pub adj: Vec<Vec<LaurentHalf>>,
}

fn words_of_grade(n: usize, d: &mut DimVec, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if d.iter().all(|&x| x == 0) {
        out.push(cur.clone());
        return;
    }
    for i in 0..n {
        if d[i] > 0 {
            d[i] -= 1;
            cur.push(i);
            words_of_grade(n, d, cur, out);
            cur.pop();
            d[i] += 1;
        }
    }
}

/// All monomials `K_alpha u_word` of the given grade, `K`-part first.
pub fn monomials(alg: &IHallAlgebra, grade: &[i64]) -> Vec<GeneratorWord> {
    let ctx = alg.ctx();
    let mut out = Vec::new();
    for alpha in super::piece::k_parts(ctx, grade) {
        let t = ctx.q.tau_vec(&alpha);
        let mut rest: DimVec = (0..ctx.n()).map(|i| grade[i] - alpha[i] - t[i]).collect();
        let mut words = Vec::new();
        words_of_grade(ctx.n(), &mut rest, &mut Vec::new(), &mut words);
        for w in words {
            out.push(GeneratorWord { k: alpha.clone(), word: w });
        }
    }
    out
}

impl GeneratorWord {
    pub fn eval(&self, alg: &IHallAlgebra) -> Result<IHallElt> {
        let ctx = alg.ctx();
        let mut acc = IHallElt::k(ctx, &self.k);
        for &i in &self.word {
            acc = alg.iproduct(&acc, &IHallElt::u(ctx, &ctx.zero_class().add(&crate::modfq::ModClass::single(ctx.nroots(), ctx.simple_index(i), 1))))?;
        }
        Ok(acc)
    }

    /// `bar(K_a u_{i_1} ... u_{i_k}) = v^-k u_{i_k} ... u_{i_1} K_a`.
    pub fn eval_bar(&self, alg: &IHallAlgebra) -> Result<IHallElt> {
        let ctx = alg.ctx();
        let mut acc = IHallElt::one(ctx);
        for &i in self.word.iter().rev() {
            acc = alg.iproduct(&acc, &IHallElt::u(ctx, &ctx.zero_class().add(&crate::modfq::ModClass::single(ctx.nroots(), ctx.simple_index(i), 1))))?;
        }
        acc = alg.iproduct(&acc, &IHallElt::k(ctx, &self.k))?;
        Ok(acc.scale(&LaurentHalf::v_pow(-(self.word.len() as i64))))
    }
}

fn row_mod(e: &IHallElt, index: &HashMap<IKey, usize>, n: usize) -> Vec<u64> {
    let mut row = vec![0u64; n];
    for (k, c) in e.iter() {
        row[index[k]] = c.eval_mod(EVAL_AT, MOD);
    }
    row
}

/// Reduces `row` against an echelon list; returns true if it is independent.
fn insert_mod(echelon: &mut Vec<(usize, Vec<u64>)>, mut row: Vec<u64>) -> bool {
    use crate::fp::{invm, mulm, subm};
    for (piv, r) in echelon.iter() {
        let f = row[*piv];
        if f != 0 {
            for j in 0..row.len() {
                row[j] = subm(row[j], mulm(f, r[j], MOD), MOD);
            }
        }
    }
    let Some(piv) = row.iter().position(|&x| x != 0) else { return false };
    let inv = invm(row[piv], MOD);
    for x in row.iter_mut() {
        *x = mulm(*x, inv, MOD);
    }
    echelon.push((piv, row));
    true
}

/// Fraction-free Gauss-Jordan on `[A | I]`: returns `(d, R)` with `A R = d I`.
pub fn fraction_free_inverse(a: &[Vec<LaurentHalf>]) -> Result<(LaurentHalf, Vec<Vec<LaurentHalf>>)> {
    let n = a.len();
    let mut m: Vec<Vec<LaurentHalf>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { LaurentHalf::one() } else { LaurentHalf::zero() }));
            row
        })
        .collect();
    let mut prev = LaurentHalf::one();
    for k in 0..n {
        // pivot with the fewest terms
        let p = (k..n).filter(|&i| !m[i][k].is_zero()).min_by_key(|&i| m[i][k].terms().count()).ok_or_else(|| Error::RankDeficient("singular monomial matrix".into()))?;
        m.swap(k, p);
        let pivot_row = m[k].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == k {
                continue;
            }
            let f = row[k].clone();
            for j in 0..2 * n {
                let t = &(&pivot_row[k] * &row[j]) - &(&f * &pivot_row[j]);
                row[j] = t.div_exact(&prev).ok_or_else(|| Error::NonIntegralCoefficient("fraction-free elimination".into()))?;
            }
        }
        prev = pivot_row[k].clone();
    }
    // every diagonal entry equals the last pivot
    let d = m[n - 1][n - 1].clone();
    for (i, row) in m.iter().enumerate() {
        if row[i] != d {
            return Err(Error::NonIntegralCoefficient("fraction-free elimination lost the common pivot".into()));
        }
    }
    let r = m.iter().map(|row| row[n..].to_vec()).collect();
    Ok((d, r))
}

/// Picks a basis-size set of independent monomials (in the order given) and
/// inverts their expansion matrix.
pub fn generator_expansion_with(alg: &IHallAlgebra, grade: &[i64], candidates: &[GeneratorWord]) -> Result<Expansion> {
    let piece = hat_piece(alg, grade);
    let nb = piece.basis.len();
    if nb == 0 {
        return Ok(Expansion { piece, monomials: vec![], det: LaurentHalf::one(), adj: vec![] });
    }
    let index: HashMap<IKey, usize> = piece.basis.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect();
    let mut echelon = Vec::new();
    let mut chosen = Vec::new();
    let mut rows = Vec::new();
    for w in candidates {
        let e = w.eval(alg)?;
        if insert_mod(&mut echelon, row_mod(&e, &index, nb)) {
            let mut row = vec![LaurentHalf::zero(); nb];
            for (k, c) in e.iter() {
                row[index[k]] = c.clone();
            }
            rows.push(row);
            chosen.push(w.clone());
            if chosen.len() == nb {
                break;
            }
        }
    }
    if chosen.len() < nb {
        return Err(Error::RankDeficient(format!("monomials span {} of {} basis elements in grade {grade:?}", chosen.len(), nb)));
    }
    // rows: mono_m = sum_b A[m][b] basis_b, so basis = A^{-1} mono
    let (det, inv) = fraction_free_inverse(&rows)?;
    Ok(Expansion { piece, monomials: chosen, det, adj: inv })
}

pub fn generator_expansion(alg: &IHallAlgebra, grade: &[i64]) -> Result<Expansion> {
    let m = monomials(alg, grade);
    generator_expansion_with(alg, grade, &m)
}

impl Expansion {
    /// `basis_b` written back from its monomial expression; equals `basis_b`.
    pub fn reconstruct(&self, alg: &IHallAlgebra, b: usize) -> Result<IHallElt> {
        let mut acc = IHallElt::zero();
        for (m, w) in self.monomials.iter().enumerate() {
            acc = acc.add(&w.eval(alg)?.scale(&self.adj[b][m]));
        }
        acc.div_exact(&self.det).ok_or_else(|| Error::NonIntegralCoefficient("reconstruction".into()))
    }

    /// `bar(basis_b)` via reversed monomials.
    pub fn bar_basis(&self, alg: &IHallAlgebra, b: usize) -> Result<IHallElt> {
        let mut acc = IHallElt::zero();
        for (m, w) in self.monomials.iter().enumerate() {
            acc = acc.add(&w.eval_bar(alg)?.scale(&self.adj[b][m].bar()));
        }
        acc.div_exact(&self.det.bar()).ok_or_else(|| Error::NonIntegralCoefficient("bar through generators".into()))
    }

    /// Bar of every basis element of the piece.
    pub fn bar_all(&self, alg: &IHallAlgebra) -> Result<Vec<(IKey, IHallElt)>> {
        let bars: Vec<IHallElt> = self.monomials.iter().map(|w| w.eval_bar(alg)).collect::<Result<_>>()?;
        let dbar = self.det.bar();
        let mut out = Vec::new();
        for (b, key) in self.piece.basis.iter().enumerate() {
            let mut acc = Lin::zero();
            for (m, e) in bars.iter().enumerate() {
                acc.add_scaled(&e.terms, &self.adj[b][m].bar());
            }
            let acc = acc.div_exact(&dbar).ok_or_else(|| Error::NonIntegralCoefficient("bar through generators".into()))?;
            out.push((key.clone(), IHallElt::from_terms(acc)));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bar::IBar;
    use crate::ctx::Ctx;
    use crate::modfq::ModClass;
    use crate::quiver::{IQuiver, RawQuiver};
    use std::sync::Arc;

    fn alg(raw: RawQuiver) -> Arc<IHallAlgebra> {
        IHallAlgebra::from_ctx(Ctx::new(IQuiver::validate(&raw).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn split_a1_square_in_generators() {
        let a = alg(RawQuiver::new(&["1"], &[], &[]));
        let ctx = a.ctx().clone();
        let u1 = IHallElt::u(&ctx, &ModClass(vec![1]));
        // u_{2a} = v (u_a u_a) - (v^2 - 1) K_a
        let mut want = a.iproduct(&u1, &u1).unwrap().scale(&LaurentHalf::v_pow(1));
        want.add_term(vec![1], ModClass(vec![0]), &(LaurentHalf::one() - LaurentHalf::v_pow(2)));
        assert_eq!(want, IHallElt::u(&ctx, &ModClass(vec![2])));
    }

    #[test]
    fn reconstruct_and_bar_agree_with_recursion() {
        let a = alg(RawQuiver::new(&["1", "2", "3"], &[("1", "2"), ("3", "2")], &[("1", "3")]));
        let ib = IBar::new(a.clone());
        for g in [vec![1, 1, 0], vec![1, 1, 1], vec![1, 2, 1], vec![2, 1, 0]] {
            let ex = generator_expansion(&a, &g).unwrap();
            for (b, key) in ex.piece.basis.iter().enumerate() {
                let basis = IHallElt::basis(key.0.clone(), key.1.clone());
                assert_eq!(ex.reconstruct(&a, b).unwrap(), basis, "{g:?}");
            }
            for (key, bar) in ex.bar_all(&a).unwrap() {
                assert_eq!(bar, ib.bar(&IHallElt::basis(key.0, key.1)).unwrap(), "{g:?}");
            }
        }
    }

    #[test]
    fn monomial_order_does_not_matter() {
        let a = alg(RawQuiver::new(&["1", "2"], &[("1", "2")], &[]));
        let g = vec![2, 1];
        let mut m = monomials(&a, &g);
        let fwd = generator_expansion_with(&a, &g, &m).unwrap().bar_all(&a).unwrap();
        m.reverse();
        let rev = generator_expansion_with(&a, &g, &m).unwrap().bar_all(&a).unwrap();
        assert_eq!(fwd, rev);
    }
}
