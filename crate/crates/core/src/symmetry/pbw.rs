//! PBW monomials `B^a K_mu` in Hall form and their expansion matrix.

use crate::bar::genexp::fraction_free_inverse;
use crate::bar::piece::{hat_piece, k_parts, pair_lt};
use crate::error::Result;
use crate::ihall::{IHallAlgebra, IHallElt, IKey};
use crate::laurent::LaurentHalf;
use crate::modfq::ModClass;
use crate::quiver::{i_admissible_sequence, sequence_roots, DimVec};
use crate::report::Report;

/// Exponents on the roots (in PBW order) and a `K`-part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbwMonomial {
    pub exps: Vec<u32>,
    pub k: DimVec,
}

/// Roots in the order induced by the admissible sink sequence, as root indices.
pub fn pbw_root_order(alg: &IHallAlgebra) -> Vec<usize> {
    let ctx = alg.ctx();
    let seq = i_admissible_sequence(&ctx.q);
    sequence_roots(&ctx.q, &seq).iter().map(|r| ctx.root_index(r).expect("sequence yields positive roots")).collect()
}

fn exponent_vectors(roots: &[DimVec], target: &[i64], from: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if from == roots.len() {
        if target.iter().all(|&x| x == 0) {
            out.push(cur.clone());
        }
        return;
    }
    let r = &roots[from];
    let mut rest = target.to_vec();
    let mut a = 0;
    loop {
        cur.push(a);
        exponent_vectors(roots, &rest, from + 1, cur, out);
        cur.pop();
        for i in 0..rest.len() {
            rest[i] -= r[i];
        }
        if rest.iter().any(|&x| x < 0) {
            break;
        }
        a += 1;
    }
}

/// All PBW monomials of one grade.
pub fn pbw_monomials(alg: &IHallAlgebra, grade: &[i64]) -> Vec<PbwMonomial> {
    let ctx = alg.ctx();
    let order = pbw_root_order(alg);
    let roots: Vec<DimVec> = order.iter().map(|&r| ctx.roots[r].clone()).collect();
    let mut out = Vec::new();
    for mu in k_parts(ctx, grade) {
        let t = ctx.q.tau_vec(&mu);
        let rest: DimVec = (0..ctx.n()).map(|i| grade[i] - mu[i] - t[i]).collect();
        let mut vs = Vec::new();
        exponent_vectors(&roots, &rest, 0, &mut Vec::new(), &mut vs);
        out.extend(vs.into_iter().map(|exps| PbwMonomial { exps, k: mu.clone() }));
    }
    out
}

impl PbwMonomial {
    /// `prod_gamma (v^-1/2 u_gamma)^a_gamma * K_mu`.
    pub fn eval(&self, alg: &IHallAlgebra, order: &[usize]) -> Result<IHallElt> {
        let ctx = alg.ctx();
        let mut acc = IHallElt::one(ctx);
        for (&r, &a) in order.iter().zip(&self.exps) {
            let b = IHallElt::u(ctx, &ModClass::single(ctx.nroots(), r, 1)).scale(&LaurentHalf::v_half_pow(-1));
            for _ in 0..a {
                acc = alg.iproduct(&acc, &b)?;
            }
        }
        alg.iproduct(&acc, &IHallElt::k(ctx, &self.k))
    }

    /// Basis pair of the leading term: `K_mu * u_lambda` with `lambda(gamma) = a_gamma`.
    pub fn leading_key(&self, alg: &IHallAlgebra, order: &[usize]) -> IKey {
        let ctx = alg.ctx();
        let mut l = ModClass::zero(ctx.nroots());
        for (&r, &a) in order.iter().zip(&self.exps) {
            l.0[r] += a;
        }
        (self.k.clone(), l)
    }

    /// Predicted leading coefficient
    /// `v^(-|a|/2 - sum a(a-1)/2 - sum_{r<t} a_r a_t <beta_r, beta_t>) * v^((mu - tau mu, dim lambda))`.
    pub fn leading_coeff(&self, alg: &IHallAlgebra, order: &[usize]) -> LaurentHalf {
        let ctx = alg.ctx();
        let a: Vec<i64> = self.exps.iter().map(|&x| x as i64).collect();
        let mut e2 = -a.iter().sum::<i64>();
        e2 -= a.iter().map(|x| x * (x - 1)).sum::<i64>();
        for r in 0..a.len() {
            for t in r + 1..a.len() {
                e2 -= 2 * a[r] * a[t] * ctx.q.euler(&ctx.roots[order[r]], &ctx.roots[order[t]]);
            }
        }
        let (_, l) = self.leading_key(alg, order);
        e2 += 2 * crate::ihall::diamond_exp2(ctx, &self.k, &ctx.class_dim(&l));
        LaurentHalf::v_half_pow(e2)
    }
}

/// One grade of the PBW basis: rows in basis order, each expanded on the hat basis.
#[derive(Clone, Debug)]
pub struct PbwPiece {
    pub grade: DimVec,
    pub basis: Vec<IKey>,
    pub monomials: Vec<PbwMonomial>,
    pub rows: Vec<IHallElt>,
}

pub fn pbw_piece(alg: &IHallAlgebra, grade: &[i64]) -> Result<PbwPiece> {
    let order = pbw_root_order(alg);
    let basis = hat_piece(alg, grade).basis;
    let monomials = pbw_monomials(alg, grade);
    let rows = monomials.iter().map(|m| m.eval(alg, &order)).collect::<Result<Vec<_>>>()?;
    Ok(PbwPiece { grade: grade.to_vec(), basis, monomials, rows })
}

/// Leading terms, unitriangularity and exact invertibility for every grade `<= bound`.
pub fn check_pbw(alg: &IHallAlgebra, bound: &[i64]) -> Result<Report> {
    let ctx = alg.ctx().clone();
    let order = pbw_root_order(alg);
    let mut rep = Report::new("PBW basis");
    for g in crate::bar::piece::grades_up_to(bound) {
        let p = pbw_piece(alg, &g)?;
        if p.basis.is_empty() {
            continue;
        }
        rep.push(format!("{g:?} size"), p.monomials.len() == p.basis.len(), format!("{} monomials for {} basis elements", p.monomials.len(), p.basis.len()));
        let mut leads = Vec::new();
        for (m, row) in p.monomials.iter().zip(&p.rows) {
            let lk = m.leading_key(alg, &order);
            let want = m.leading_coeff(alg, &order);
            let got = row.terms.get(&lk);
            let stray: Vec<String> = row.iter().filter(|(k, _)| **k != lk && !pair_lt(&ctx, &lk, k)).map(|((a, l), c)| format!("K{a:?} u{l}: {c}")).collect();
            rep.push(format!("{g:?} {:?}|{:?} leading", m.exps, m.k), got == want && stray.is_empty(), format!("leading {got} (want {want}); off-order terms [{}]", stray.join(", ")));
            leads.push(lk);
        }
        leads.sort();
        leads.dedup();
        rep.push(format!("{g:?} leading terms distinct"), leads.len() == p.basis.len(), "two monomials share a leading term");
        // exact rank: the expansion matrix is invertible, and its determinant is a unit
        let idx: std::collections::HashMap<&IKey, usize> = p.basis.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let mat: Vec<Vec<LaurentHalf>> = p
            .rows
            .iter()
            .map(|r| {
                let mut row = vec![LaurentHalf::zero(); p.basis.len()];
                for (k, c) in r.iter() {
                    row[idx[k]] = c.clone();
                }
                row
            })
            .collect();
        let inv = fraction_free_inverse(&mat);
        let ok = matches!(&inv, Ok((d, _)) if d.as_monomial().is_some_and(|(_, c)| c.abs().is_one()));
        rep.push(format!("{g:?} invertible over Z[v^(1/2), v^(-1/2)]"), ok, match &inv {
            Ok((d, _)) => format!("determinant {d}"),
            Err(e) => format!("{e}"),
        });
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ctx::Ctx;
    use crate::quiver::{IQuiver, RawQuiver};

    #[test]
    fn a3_outer_small_grades() {
        let alg = IHallAlgebra::from_ctx(Ctx::new(IQuiver::validate(&RawQuiver::new(&["1", "2", "3"], &[("1", "2"), ("3", "2")], &[("1", "3")])).unwrap()).unwrap()).unwrap();
        assert_eq!(pbw_root_order(&alg).len(), 6);
        let rep = check_pbw(&alg, &[1, 1, 1]).unwrap();
        assert!(rep.all_passed(), "{}", rep.to_text());
    }

    #[test]
    fn single_factor() {
        let alg = IHallAlgebra::from_ctx(Ctx::new(IQuiver::validate(&RawQuiver::new(&["1", "2"], &[("1", "2")], &[])).unwrap()).unwrap()).unwrap();
        let order = pbw_root_order(&alg);
        let ctx = alg.ctx().clone();
        let mut exps = vec![0; 3];
        exps[0] = 1;
        let m = PbwMonomial { exps, k: vec![0, 0] };
        let want = IHallElt::u(&ctx, &ModClass::single(3, order[0], 1)).scale(&LaurentHalf::v_half_pow(-1));
        assert_eq!(m.eval(&alg, &order).unwrap(), want);
    }
}
