//! Elements of the generic i-Hall algebras on the basis `K_alpha * u_lambda`.

use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::laurent::LaurentHalf;
use crate::lin::Lin;
use crate::modfq::ModClass;
use crate::quiver::DimVec;

/// A basis label `(alpha, lambda)` for `K_alpha * u_lambda`.
pub type IKey = (DimVec, ModClass);

/// `Hat` allows only `alpha >= 0`; `Tilde` allows any integer `alpha`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    Hat,
    Tilde,
}

#[derive(Clone, Debug)]
pub struct IHallElt {
    pub terms: Lin<IKey>,
    pub variant: Variant,
}

/// Equal when the terms agree; the variant only records which algebra an
/// element was built in.
impl PartialEq for IHallElt {
    fn eq(&self, o: &IHallElt) -> bool {
        self.terms == o.terms
    }
}

impl Eq for IHallElt {}

impl IHallElt {
    pub fn zero() -> IHallElt {
        IHallElt { terms: Lin::zero(), variant: Variant::Hat }
    }

    pub fn from_terms(terms: Lin<IKey>) -> IHallElt {
        let variant = if terms.keys().all(|(a, _)| a.iter().all(|&x| x >= 0)) { Variant::Hat } else { Variant::Tilde };
        IHallElt { terms, variant }
    }

    pub fn basis(alpha: DimVec, lambda: ModClass) -> IHallElt {
        IHallElt::from_terms(Lin::basis((alpha, lambda)))
    }

    pub fn one(ctx: &Ctx) -> IHallElt {
        IHallElt::basis(vec![0; ctx.n()], ctx.zero_class())
    }

    /// `u_lambda`.
    pub fn u(ctx: &Ctx, lambda: &ModClass) -> IHallElt {
        IHallElt::basis(vec![0; ctx.n()], lambda.clone())
    }

    /// `K_alpha`.
    pub fn k(ctx: &Ctx, alpha: &[i64]) -> IHallElt {
        IHallElt::basis(alpha.to_vec(), ctx.zero_class())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&IKey, &LaurentHalf)> {
        self.terms.iter()
    }

    pub fn coeff(&self, alpha: &[i64], lambda: &ModClass) -> LaurentHalf {
        self.terms.get(&(alpha.to_vec(), lambda.clone()))
    }

    fn join(a: Variant, b: Variant) -> Variant {
        if a == Variant::Hat && b == Variant::Hat {
            Variant::Hat
        } else {
            Variant::Tilde
        }
    }

    pub fn add(&self, o: &IHallElt) -> IHallElt {
        IHallElt { terms: self.terms.add(&o.terms), variant: IHallElt::join(self.variant, o.variant) }
    }

    pub fn sub(&self, o: &IHallElt) -> IHallElt {
        IHallElt { terms: self.terms.sub(&o.terms), variant: IHallElt::join(self.variant, o.variant) }
    }

    pub fn scale(&self, c: &LaurentHalf) -> IHallElt {
        IHallElt { terms: self.terms.scale(c), variant: self.variant }
    }

    pub fn add_term(&mut self, alpha: DimVec, lambda: ModClass, c: &LaurentHalf) {
        if alpha.iter().any(|&x| x < 0) {
            self.variant = Variant::Tilde;
        }
        self.terms.add_term((alpha, lambda), c);
    }

    pub fn map_coeffs(&self, f: impl Fn(&LaurentHalf) -> LaurentHalf) -> IHallElt {
        IHallElt { terms: self.terms.map_coeffs(f), variant: self.variant }
    }

    pub fn div_exact(&self, d: &LaurentHalf) -> Option<IHallElt> {
        Some(IHallElt { terms: self.terms.div_exact(d)?, variant: self.variant })
    }

    /// The tilde copy of a hat element.
    pub fn to_tilde(&self) -> IHallElt {
        IHallElt { terms: self.terms.clone(), variant: Variant::Tilde }
    }

    /// Back to the hat variant when all `K`-exponents are non-negative.
    pub fn to_hat(&self) -> Result<IHallElt> {
        if self.terms.keys().any(|(a, _)| a.iter().any(|&x| x < 0)) {
            return Err(Error::InvalidInput("negative K-exponent in a hat element".into()));
        }
        Ok(IHallElt { terms: self.terms.clone(), variant: Variant::Hat })
    }

    /// `alpha + tau(alpha) + dim lambda` for one term.
    pub fn term_grade(ctx: &Ctx, alpha: &[i64], lambda: &ModClass) -> DimVec {
        let t = ctx.q.tau_vec(alpha);
        let d = ctx.class_dim(lambda);
        (0..ctx.n()).map(|i| alpha[i] + t[i] + d[i]).collect()
    }

    /// The common grade of all terms, if there is one.
    pub fn grade(&self, ctx: &Ctx) -> Option<DimVec> {
        let mut g: Option<DimVec> = None;
        for ((a, l), _) in self.iter() {
            let t = IHallElt::term_grade(ctx, a, l);
            match &g {
                None => g = Some(t),
                Some(h) if *h != t => return None,
                _ => {}
            }
        }
        g.or_else(|| Some(vec![0; ctx.n()]))
    }

    /// The quotient setting `K_alpha * u_lambda` to `u_lambda` if `alpha = 0`, else 0.
    pub fn k_free_part(&self) -> Lin<ModClass> {
        self.iter().filter(|((a, _), _)| a.iter().all(|&x| x == 0)).map(|((_, l), c)| (l.clone(), c.clone())).collect()
    }

    /// Canonical term order: `K`-exponents lexicographic, then `lambda` in
    /// admissible root order.
    pub fn sorted_terms(&self, ctx: &Ctx) -> Vec<(IKey, LaurentHalf)> {
        let mut v: Vec<(IKey, LaurentHalf)> = self.iter().map(|(k, c)| (k.clone(), c.clone())).collect();
        v.sort_by(|(a, _), (b, _)| a.0.cmp(&b.0).then_with(|| adm_key(ctx, &a.1).cmp(&adm_key(ctx, &b.1))));
        v
    }

    pub fn display(&self, ctx: &Ctx) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for ((a, l), c) in self.sorted_terms(ctx) {
            let mut s = format!("({c})");
            if a.iter().any(|&x| x != 0) {
                s.push_str(&format!(" K{a:?}"));
            }
            if !l.is_zero() {
                s.push_str(&format!(" u{l}"));
            }
            parts.push(s);
        }
        parts.join(" + ")
    }
}

/// Multiplicities listed in admissible root order.
pub fn adm_key(ctx: &Ctx, l: &ModClass) -> Vec<u32> {
    ctx.adm.iter().map(|&r| l.get(r)).collect()
}
