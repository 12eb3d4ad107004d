//! Dual canonical bases via Lusztig's lemma.
//!
//! Given a basis `b_1, ..., b_n` listed along a linear extension of a partial
//! order, and `bar(b_j) = sum_i r_ij b_i` with `r` unitriangular, the unique
//! bar-invariant `L_j = b_j + sum_{i > j} c_ij b_i` with `c_ij` in
//! `v^-1 Z[v^-1]` is found column by column from
//! `c_ij - bar(c_ij) = sum_{j <= k < i} bar(c_kj) r_ik`.

use super::piece::{hat_piece_ordered, pair_lt, plain_order, GradedPiece};
use super::IBar;
use crate::error::{Error, Result};
use crate::hall::{HallAlgebra, PlainHallElt};
use crate::ihall::{IHallAlgebra, IHallElt, IKey};
use crate::laurent::LaurentHalf;
use crate::lin::Lin;
use crate::modfq::classes::degeneration_lt;
use crate::modfq::ModClass;
use crate::quiver::DimVec;
use crate::report::Report;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

/// Column `j` of the bar matrix: `i -> r_ij`.
pub type BarColumn = BTreeMap<usize, LaurentHalf>;

/// Solves for the correction coefficients. `bars[j]` is `bar(b_j)`; the
/// result's column `j` holds `c_ij` including `c_jj = 1`.
pub fn lusztig_solve(bars: &[BarColumn]) -> Result<Vec<BarColumn>> {
    let n = bars.len();
    for (j, col) in bars.iter().enumerate() {
        if !col.get(&j).is_some_and(|c| c.is_one()) || col.keys().any(|&i| i < j) {
            return Err(Error::NonSolvableResidual(format!("bar matrix is not unitriangular in column {j}")));
        }
    }
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let mut c: BarColumn = BTreeMap::new();
        c.insert(j, LaurentHalf::one());
        for i in j + 1..n {
            let mut r = LaurentHalf::zero();
            for (k, ckj) in c.range(j..i) {
                if let Some(rik) = bars[*k].get(&i) {
                    r = &r + &(&ckj.bar() * rik);
                }
            }
            if r.is_zero() {
                continue;
            }
            let cij = r.negative_part();
            if &cij - &cij.bar() != r {
                return Err(Error::NonSolvableResidual(format!("residual {r} at ({i}, {j}) is not of the form c - bar(c)")));
            }
            c.insert(i, cij);
        }
        out.push(c);
    }
    Ok(out)
}

/// The dual canonical basis of one graded piece of the hat algebra.
#[derive(Clone, Debug)]
pub struct DcbPiece {
    pub piece: GradedPiece,
    /// Coefficients of each `L` over the basis `K_beta <> U_mu`.
    pub coeffs: Vec<Lin<IKey>>,
    /// Each `L` expanded on `K_beta * u_mu`.
    pub elements: Vec<IHallElt>,
}

impl DcbPiece {
    pub fn get(&self, key: &IKey) -> Option<&IHallElt> {
        self.piece.basis.iter().position(|k| k == key).map(|i| &self.elements[i])
    }

    pub fn coeff_table(&self) -> BTreeMap<IKey, Lin<IKey>> {
        self.piece.basis.iter().cloned().zip(self.coeffs.iter().cloned()).collect()
    }
}

/// Computes and memoizes dual canonical basis pieces of an i-Hall algebra.
pub struct DcbSolver {
    pub alg: Arc<IHallAlgebra>,
    pub ibar: Arc<IBar>,
    memo: Mutex<HashMap<(DimVec, bool), Arc<DcbPiece>>>,
}

impl std::fmt::Debug for DcbSolver {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DcbSolver").finish_non_exhaustive()
    }
}

impl DcbSolver {
    pub fn new(alg: Arc<IHallAlgebra>) -> DcbSolver {
        let ibar = IBar::new(alg.clone());
        DcbSolver { alg, ibar, memo: Mutex::new(HashMap::new()) }
    }

    /// `bar(K_alpha <> U_l)` on the basis `K_beta <> U_mu`.
    pub fn bar_in_basis(&self, key: &IKey) -> Result<Lin<IKey>> {
        let (a, l) = key;
        let e = self.alg.basis_exp2(a, l);
        let b = self.ibar.bar(&IHallElt::basis(a.clone(), l.clone()))?;
        Ok(b.iter().map(|((be, m), c)| ((be.clone(), m.clone()), c.shift2(-e - self.alg.basis_exp2(be, m)))).collect())
    }

    /// Converts an element to coordinates over `K_beta <> U_mu`.
    pub fn to_basis(&self, x: &IHallElt) -> Lin<IKey> {
        x.iter().map(|((be, m), c)| ((be.clone(), m.clone()), c.shift2(-self.alg.basis_exp2(be, m)))).collect()
    }

    pub fn from_basis(&self, x: &Lin<IKey>) -> IHallElt {
        IHallElt::from_terms(x.iter().map(|((be, m), c)| ((be.clone(), m.clone()), c.shift2(self.alg.basis_exp2(be, m)))).collect())
    }

    pub fn solve(&self, grade: &[i64]) -> Result<Arc<DcbPiece>> {
        self.solve_ordered(grade, false)
    }

    /// Solves along the linear extension with normal or reversed tie-breaks.
    pub fn solve_ordered(&self, grade: &[i64], reverse_ties: bool) -> Result<Arc<DcbPiece>> {
        let key = (grade.to_vec(), reverse_ties);
        if let Some(p) = self.memo.lock().unwrap().get(&key) {
            return Ok(p.clone());
        }
        let piece = hat_piece_ordered(&self.alg, grade, reverse_ties);
        let pos: HashMap<&IKey, usize> = piece.basis.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let mut bars = Vec::with_capacity(piece.basis.len());
        for k in &piece.basis {
            let b = self.bar_in_basis(k)?;
            let mut col = BarColumn::new();
            for (t, c) in b.iter() {
                let i = *pos.get(t).ok_or_else(|| Error::NonSolvableResidual(format!("bar leaves the graded piece {grade:?}")))?;
                col.insert(i, c.clone());
            }
            bars.push(col);
        }
        let sol = lusztig_solve(&bars)?;
        let coeffs: Vec<Lin<IKey>> = sol.iter().map(|col| col.iter().map(|(i, c)| (piece.basis[*i].clone(), c.clone())).collect()).collect();
        let elements = coeffs.iter().map(|c| self.from_basis(c)).collect();
        let out = Arc::new(DcbPiece { piece, coeffs, elements });
        self.memo.lock().unwrap().insert(key, out.clone());
        Ok(out)
    }

    /// `L_{alpha, lambda}` for a single pair.
    pub fn element(&self, key: &IKey) -> Result<IHallElt> {
        let g = IHallElt::term_grade(self.alg.ctx(), &key.0, &key.1);
        let p = self.solve(&g)?;
        p.get(key).cloned().ok_or_else(|| Error::InvalidInput(format!("no basis pair {key:?} in grade {g:?}")))
    }

    /// Bar triangularity: `bar(b) - b` lies on strictly larger pairs with
    /// coefficients in `Z[v, v^-1]`.
    pub fn check_triangularity(&self, grade: &[i64]) -> Result<Report> {
        let ctx = self.alg.ctx();
        let mut rep = Report::new(&format!("bar triangularity {grade:?}"));
        let piece = hat_piece_ordered(&self.alg, grade, false);
        for k in &piece.basis {
            let mut d = self.bar_in_basis(k)?;
            d.add_term(k.clone(), &-LaurentHalf::one());
            let bad: Vec<String> = d
                .iter()
                .filter(|(t, c)| !pair_lt(ctx, k, t) || !c.has_integral_exponents())
                .map(|((a, m), c)| format!("K{a:?} u{m}: {c}"))
                .collect();
            rep.push(format!("{k:?}"), bad.is_empty(), bad.join(", "));
        }
        Ok(rep)
    }

    /// Checks bar-invariance, unitriangularity, the `K_alpha <> L_{0,lambda}`
    /// factorization and independence of the linear extension.
    pub fn check_piece(&self, grade: &[i64]) -> Result<Report> {
        let ctx = self.alg.ctx().clone();
        let mut rep = Report::new(&format!("dual canonical basis {grade:?}"));
        let p = self.solve(grade)?;
        let rev = self.solve_ordered(grade, true)?;
        for (j, key) in p.piece.basis.iter().enumerate() {
            let l = &p.elements[j];
            let name = format!("{key:?}");
            rep.push_result(format!("{name} bar-invariant"), self.ibar.bar(l).map(|b| if &b == l { None } else { Some(format!("residual {}", b.sub(l).display(&ctx))) }));
            let bad: Vec<String> = p.coeffs[j]
                .iter()
                .filter(|(t, c)| if *t == key { !c.is_one() } else { !pair_lt(&ctx, key, t) || !c.in_negative_part() })
                .map(|((a, m), c)| format!("K{a:?} U{m}: {c}"))
                .collect();
            rep.push(format!("{name} unitriangular"), bad.is_empty(), bad.join(", "));
            if key.0.iter().any(|&x| x != 0) {
                let zero = vec![0; ctx.n()];
                let base = self.element(&(zero, key.1.clone()));
                rep.push_result(
                    format!("{name} = K <> L(0, lambda)"),
                    base.map(|b| {
                        let want = self.alg.diamond(&key.0, &b);
                        if &want == l { None } else { Some(format!("residual {}", want.sub(l).display(&ctx))) }
                    }),
                );
            }
            let other = rev.get(key);
            rep.push(format!("{name} order-independent"), other == Some(l), "differs under the reversed linear extension");
        }
        Ok(rep)
    }
}

/// Dual canonical basis of the plain Hall algebra in one dimension vector,
/// expanded on `u_mu`.
pub fn dcb_plain(hall: &HallAlgebra, grade: &[i64]) -> Result<BTreeMap<ModClass, PlainHallElt>> {
    dcb_plain_ordered(hall, grade, false)
}

pub fn dcb_plain_ordered(hall: &HallAlgebra, grade: &[i64], reverse_ties: bool) -> Result<BTreeMap<ModClass, PlainHallElt>> {
    let ctx = hall.ctx().clone();
    let classes = plain_order(&ctx, &hall.eng.classes(grade), reverse_ties);
    let pos: HashMap<&ModClass, usize> = classes.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut bars = Vec::new();
    for l in &classes {
        let e = hall.rescale_exp2(l);
        let mut col = BarColumn::new();
        for (m, c) in hall.bar_basis(l)?.iter() {
            col.insert(pos[m], c.shift2(-e - hall.rescale_exp2(m)));
        }
        bars.push(col);
    }
    let sol = lusztig_solve(&bars)?;
    let mut out = BTreeMap::new();
    for (j, col) in sol.iter().enumerate() {
        let x: PlainHallElt = col.iter().map(|(i, c)| (classes[*i].clone(), c.shift2(hall.rescale_exp2(&classes[*i])))).collect();
        out.insert(classes[j].clone(), x);
    }
    Ok(out)
}

/// Plain analogue of the triangularity check: `bar(U_l) - U_l` lies on
/// classes `mu` with `l < mu`.
pub fn check_plain_triangularity(hall: &HallAlgebra, grade: &[i64]) -> Result<Report> {
    let ctx = hall.ctx().clone();
    let mut rep = Report::new(&format!("plain bar triangularity {grade:?}"));
    for l in hall.eng.classes(grade).iter() {
        let e = hall.rescale_exp2(l);
        let bad: Vec<String> = hall
            .bar_basis(l)?
            .iter()
            .map(|(m, c)| (m, c.shift2(-e - hall.rescale_exp2(m))))
            .filter(|(m, c)| if *m == l { !c.is_one() } else { !degeneration_lt(&ctx, l, m) })
            .map(|(m, c)| format!("U{m}: {c}"))
            .collect();
        rep.push(format!("{l}"), bad.is_empty(), bad.join(", "));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ctx::Ctx;
    use crate::quiver::{IQuiver, RawQuiver};

    fn solver(raw: RawQuiver) -> DcbSolver {
        DcbSolver::new(IHallAlgebra::from_ctx(Ctx::new(IQuiver::validate(&raw).unwrap()).unwrap()).unwrap())
    }

    #[test]
    fn lusztig_rank_two() {
        // bar(b0) = b0 + (v^2 - v^-2) b1
        let mut c0 = BarColumn::new();
        c0.insert(0, LaurentHalf::one());
        c0.insert(1, &LaurentHalf::v_pow(2) - &LaurentHalf::v_pow(-2));
        let mut c1 = BarColumn::new();
        c1.insert(1, LaurentHalf::one());
        let sol = lusztig_solve(&[c0, c1]).unwrap();
        assert_eq!(sol[0][&1], -LaurentHalf::v_pow(-2));
    }

    #[test]
    fn symmetric_residual_is_rejected() {
        let mut c0 = BarColumn::new();
        c0.insert(0, LaurentHalf::one());
        c0.insert(1, LaurentHalf::one());
        let mut c1 = BarColumn::new();
        c1.insert(1, LaurentHalf::one());
        assert!(matches!(lusztig_solve(&[c0, c1]), Err(Error::NonSolvableResidual(_))));
    }

    #[test]
    fn split_a1_grade_two() {
        let s = solver(RawQuiver::new(&["1"], &[], &[]));
        let l = s.element(&(vec![0], ModClass(vec![2]))).unwrap();
        let mut want = IHallElt::u(s.alg.ctx(), &ModClass(vec![2])).scale(&LaurentHalf::v_pow(-2));
        want.add_term(vec![1], ModClass(vec![0]), &-LaurentHalf::v_pow(-2));
        assert_eq!(l, want);
        assert!(s.check_piece(&[2]).unwrap().all_passed());
        assert!(s.check_piece(&[4]).unwrap().all_passed());
    }

    #[test]
    fn roots_are_their_own_dcb() {
        let s = solver(RawQuiver::new(&["1", "2", "3"], &[("1", "2"), ("3", "2")], &[("1", "3")]));
        let ctx = s.alg.ctx().clone();
        for r in 0..ctx.nroots() {
            let l = ModClass::single(ctx.nroots(), r, 1);
            let zero = vec![0; ctx.n()];
            let got = s.element(&(zero.clone(), l.clone())).unwrap();
            let lin = s.to_basis(&got);
            assert_eq!(lin.get(&(zero, l)), LaurentHalf::one());
        }
        for g in [vec![1, 1, 1], vec![1, 2, 1], vec![2, 1, 0]] {
            let rep = s.check_piece(&g).unwrap();
            assert!(rep.all_passed(), "{}", rep.to_text());
            let rep = s.check_triangularity(&g).unwrap();
            assert!(rep.all_passed(), "{}", rep.to_text());
        }
    }

    #[test]
    fn plain_a1_powers() {
        let hall = HallAlgebra::new(crate::hall::Engine::new(Ctx::new(IQuiver::validate(&RawQuiver::new(&["1"], &[], &[])).unwrap()).unwrap()).unwrap());
        for m in 1..=4i64 {
            let got = dcb_plain(&hall, &[m]).unwrap();
            let c = ModClass(vec![m as u32]);
            assert_eq!(got[&c], PlainHallElt::term(c.clone(), LaurentHalf::v_half_pow(-m * m)));
        }
    }

    #[test]
    fn plain_a2_split_class() {
        let hall = HallAlgebra::new(crate::hall::Engine::new(Ctx::new(IQuiver::validate(&RawQuiver::new(&["1", "2"], &[("1", "2")], &[])).unwrap()).unwrap()).unwrap());
        let ctx = hall.ctx().clone();
        let got = dcb_plain(&hall, &[1, 1]).unwrap();
        let rep = check_plain_triangularity(&hall, &[1, 1]).unwrap();
        assert!(rep.all_passed(), "{}", rep.to_text());
        let mid = ctx.root_index(&[1, 1]).unwrap();
        let ind = ModClass::single(ctx.nroots(), mid, 1);
        for (l, x) in &got {
            for (m, _) in x.iter() {
                assert!(m == l || *m == ind);
            }
        }
        assert_eq!(got[&ind], hall.rescaled_u(&ind));
    }
}
