//! The reflection isomorphism `Gamma_l` from the tilde algebra of `Q` to that
//! of `r_l Q`, on the rescaled basis `K_gamma <> U_lambda`.

use crate::bar::{DcbSolver, IBar};
use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::ihall::{IHallAlgebra, IHallElt, IKey};
use crate::lin::Lin;
use crate::modfq::ModClass;
use crate::quiver::DimVec;
use crate::report::Report;
use std::sync::Arc;

pub struct Reflection {
    pub src: Arc<IHallAlgebra>,
    pub dst: Arc<IHallAlgebra>,
    pub l: usize,
    /// Source root index to target root index.
    root_map: Vec<usize>,
}

impl std::fmt::Debug for Reflection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Reflection").field("l", &self.l).finish_non_exhaustive()
    }
}

impl Reflection {
    pub fn new(src: Arc<IHallAlgebra>, l: usize) -> Result<Reflection> {
        let dst = IHallAlgebra::from_ctx(Ctx::new(src.ctx().q.reflect(l)?)?)?;
        Reflection::between(src, dst, l)
    }

    /// Uses an existing algebra for `r_l Q`.
    pub fn between(src: Arc<IHallAlgebra>, dst: Arc<IHallAlgebra>, l: usize) -> Result<Reflection> {
        let (s, d) = (src.ctx().clone(), dst.ctx().clone());
        let want = s.q.reflect(l)?;
        if want.arrows() != d.q.arrows() || want.tau_perm() != d.q.tau_perm() {
            return Err(Error::QuiverMismatch(format!("target is not the reflection at {}", s.q.name(l))));
        }
        let tl = s.q.tau(l);
        let (al, atl) = (s.simple_index(l), s.simple_index(tl));
        let root_map = (0..s.nroots())
            .map(|r| {
                let img = if r == al {
                    d.q.unit(tl)
                } else if r == atl {
                    d.q.unit(l)
                } else {
                    s.q.orbit_reflect(l, &s.roots[r])
                };
                d.root_index(&img).expect("reflection permutes the remaining roots")
            })
            .collect();
        Ok(Reflection { src, dst, l, root_map })
    }

    /// `(gamma', lambda')` with `Gamma_l(K_gamma <> U_lambda) = K_gamma' <> U_lambda'`.
    pub fn gamma_basis(&self, key: &IKey) -> IKey {
        let s = self.src.ctx();
        let (gamma, lam) = key;
        let tl = s.q.tau(self.l);
        let a = lam.get(s.simple_index(self.l)) as i64;
        let mut g = s.q.orbit_reflect(self.l, gamma);
        g[self.l] -= a;
        if tl != self.l {
            g[tl] -= lam.get(s.simple_index(tl)) as i64;
        }
        let mut out = ModClass::zero(self.dst.ctx().nroots());
        for (r, m) in lam.support() {
            out.0[self.root_map[r]] += m;
        }
        (g, out)
    }

    /// `Gamma_l` extended linearly; input and output on `K * u`.
    pub fn apply(&self, x: &IHallElt) -> IHallElt {
        let mut out = Lin::zero();
        for (k, c) in x.iter() {
            let img = self.gamma_basis(k);
            let e2 = self.dst.basis_exp2(&img.0, &img.1) - self.src.basis_exp2(&k.0, &k.1);
            out.add_term(img, &c.shift2(e2));
        }
        IHallElt::from_terms(out)
    }

    /// Hat basis keys of every grade `<= bound`.
    pub fn keys_up_to(alg: &IHallAlgebra, bound: &[i64]) -> Vec<IKey> {
        let mut out = Vec::new();
        for g in crate::bar::piece::grades_up_to(bound) {
            out.extend(crate::bar::piece::hat_piece(alg, &g).basis);
        }
        out
    }

    /// Homomorphism residuals on all basis pairs whose product grade is `<= bound`.
    pub fn check_homomorphism(&self, bound: &[i64]) -> Result<Report> {
        let ctx = self.src.ctx().clone();
        let mut rep = Report::new(&format!("Gamma_{} homomorphism", ctx.q.name(self.l)));
        let keys = Self::keys_up_to(&self.src, bound);
        let grade = |k: &IKey| IHallElt::term_grade(&ctx, &k.0, &k.1);
        for x in &keys {
            let gx = grade(x);
            let ex = IHallElt::basis(x.0.clone(), x.1.clone());
            let gex = self.apply(&ex);
            for y in &keys {
                let gy = grade(y);
                if (0..ctx.n()).any(|i| gx[i] + gy[i] > bound[i]) {
                    continue;
                }
                let ey = IHallElt::basis(y.0.clone(), y.1.clone());
                let lhs = self.apply(&self.src.iproduct(&ex, &ey)?);
                let rhs = self.dst.iproduct(&gex, &self.apply(&ey))?;
                rep.push(format!("{x:?} * {y:?}"), lhs == rhs, format!("residual {}", lhs.sub(&rhs).display(self.dst.ctx())));
            }
        }
        Ok(rep)
    }

    /// `Gamma_l(bar x) = bar(Gamma_l x)` on basis elements up to `bound`.
    pub fn check_bar(&self, src_bar: &IBar, dst_bar: &IBar, bound: &[i64]) -> Result<Report> {
        let mut rep = Report::new(&format!("Gamma_{} commutes with bar", self.src.ctx().q.name(self.l)));
        for k in Self::keys_up_to(&self.src, bound) {
            let x = IHallElt::basis(k.0.clone(), k.1.clone());
            let lhs = self.apply(&src_bar.bar(&x)?);
            let rhs = dst_bar.bar(&self.apply(&x))?;
            rep.push(format!("{k:?}"), lhs == rhs, format!("residual {}", lhs.sub(&rhs).display(self.dst.ctx())));
        }
        Ok(rep)
    }

    /// Basis-to-basis: `gamma_basis` is injective and every image is a
    /// single rescaled basis vector with coefficient one.
    pub fn check_basis(&self, bound: &[i64]) -> Report {
        let mut rep = Report::new(&format!("Gamma_{} on the rescaled basis", self.src.ctx().q.name(self.l)));
        let keys = Self::keys_up_to(&self.src, bound);
        let mut seen = std::collections::HashMap::new();
        for k in &keys {
            let img = self.gamma_basis(k);
            let x = self.src.diamond_u(&k.0, &k.1);
            let want = self.dst.diamond_u(&img.0, &img.1);
            rep.push(format!("{k:?}"), self.apply(&x) == want, "image is not a rescaled basis vector");
            if let Some(prev) = seen.insert(img.clone(), k.clone()) {
                rep.push(format!("{k:?} injective"), false, format!("collides with {prev:?}"));
            }
        }
        rep
    }

    /// `Gamma_l(L_{alpha,lambda}) = L'_{gamma', lambda'}`, with the target
    /// basis solved independently.
    pub fn check_dcb(&self, src: &DcbSolver, dst: &DcbSolver, bound: &[i64]) -> Result<Report> {
        let mut rep = Report::new(&format!("Gamma_{} on the dual canonical basis", self.src.ctx().q.name(self.l)));
        let dctx = self.dst.ctx().clone();
        for k in Self::keys_up_to(&self.src, bound) {
            let l = src.element(&k)?;
            let (g, lam) = self.gamma_basis(&k);
            let zero: DimVec = vec![0; dctx.n()];
            let base = dst.element(&(zero, lam))?;
            let want = self.dst.diamond(&g, &base);
            let got = self.apply(&l);
            rep.push(format!("{k:?}"), got == want, format!("residual {}", got.sub(&want).display(&dctx)));
        }
        Ok(rep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::LaurentHalf;
    use crate::quiver::{IQuiver, RawQuiver};

    fn alg(raw: RawQuiver) -> Arc<IHallAlgebra> {
        IHallAlgebra::from_ctx(Ctx::new(IQuiver::validate(&raw).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn not_a_sink() {
        let a = alg(RawQuiver::new(&["1", "2"], &[("1", "2")], &[]));
        assert!(matches!(Reflection::new(a, 0), Err(Error::NotASink(_))));
    }

    #[test]
    fn split_a2_simple_at_sink() {
        let a = alg(RawQuiver::new(&["1", "2"], &[("1", "2")], &[]));
        let g = Reflection::new(a.clone(), 1).unwrap();
        let (s, d) = (a.ctx().clone(), g.dst.ctx().clone());
        let s2 = ModClass::single(s.nroots(), s.simple_index(1), 1);
        let (k, l) = g.gamma_basis(&(vec![0, 0], s2));
        assert_eq!(k, vec![0, -1]);
        assert_eq!(l, ModClass::single(d.nroots(), d.simple_index(1), 1));
        // S_1 is in the torsion class: Gamma(U[S_1]) = U[F+(S_1)] = U[P]
        let s1 = ModClass::single(s.nroots(), s.simple_index(0), 1);
        let (k, l) = g.gamma_basis(&(vec![0, 0], s1));
        assert_eq!(k, vec![0, 0]);
        assert_eq!(d.class_dim(&l), vec![1, 1]);
        // pure K: gamma -> s_l gamma
        assert_eq!(g.gamma_basis(&(vec![1, 0], ModClass::zero(s.nroots()))).0, vec![1, 1]);
    }

    #[test]
    fn outer_orbit_simple_matches_module_formula() {
        // Gamma([S_l]) = v [K'_l]^{-1} * [S'_{tau l}] when tau l != l
        let a = alg(RawQuiver::new(&["1", "2", "3"], &[("2", "1"), ("2", "3")], &[("1", "3")]));
        let g = Reflection::new(a.clone(), 0).unwrap();
        let (s, d) = (a.ctx().clone(), g.dst.ctx().clone());
        let x = IHallElt::u(&s, &ModClass::single(s.nroots(), s.simple_index(0), 1));
        let mut want = IHallElt::zero();
        want.add_term(vec![-1, 0, 0], ModClass::single(d.nroots(), d.simple_index(2), 1), &LaurentHalf::v_pow(1));
        assert_eq!(g.apply(&x), want);
    }

    #[test]
    fn homomorphism_and_bar_small() {
        for (raw, l) in [
            (RawQuiver::new(&["1", "2"], &[("1", "2")], &[]), 1),
            (RawQuiver::new(&["1", "2", "3"], &[("1", "2"), ("3", "2")], &[("1", "3")]), 1),
            (RawQuiver::new(&["1", "2", "3"], &[("2", "1"), ("2", "3")], &[("1", "3")]), 0),
        ] {
            let a = alg(raw);
            let g = Reflection::new(a.clone(), l).unwrap();
            let bound = vec![1; a.ctx().n()];
            let rep = g.check_homomorphism(&bound).unwrap();
            assert!(rep.all_passed(), "{}", rep.to_text());
            let rep = g.check_bar(&IBar::new(a.clone()), &IBar::new(g.dst.clone()), &bound).unwrap();
            assert!(rep.all_passed(), "{}", rep.to_text());
            assert!(g.check_basis(&bound).all_passed());
        }
    }
}
