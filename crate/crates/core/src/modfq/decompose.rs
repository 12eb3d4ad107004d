//! Krull-Schmidt decomposition from Hom fingerprints.

use super::{hom_dim_unchecked, FqRep, ModClass};
use crate::ctx::Ctx;
use crate::error::{Error, Result};

/// `dim Hom(M(beta_r), M)` for every root index `r`.
pub fn fingerprint(ctx: &Ctx, m: &FqRep) -> Result<Vec<u32>> {
    let reps = ctx.indecomposables(m.p)?;
    Ok((0..ctx.nroots())
        .map(|r| match ctx.proj[r] {
            Some(i) => m.dims[i] as u32,
            None => hom_dim_unchecked(&ctx.q, &reps[r], m) as u32,
        })
        .collect())
}

/// Solves `f[r] = sum_t hom[r][t] lambda_t`, which is unitriangular in the
/// admissible order.
pub fn solve_fingerprint(ctx: &Ctx, f: &[u32]) -> Result<ModClass> {
    let mut lam = vec![0u32; ctx.nroots()];
    for k in (0..ctx.nroots()).rev() {
        let r = ctx.adm[k];
        let mut v = f[r] as i64;
        for &t in &ctx.adm[k + 1..] {
            v -= ctx.hom[r][t] as i64 * lam[t] as i64;
        }
        if v < 0 {
            return Err(Error::InconsistentFingerprint(format!("negative multiplicity at root {r}")));
        }
        lam[r] = v as u32;
    }
    Ok(ModClass(lam))
}

pub fn decompose(ctx: &Ctx, m: &FqRep) -> Result<ModClass> {
    m.check_shape(&ctx.q)?;
    let f = fingerprint(ctx, m)?;
    let c = solve_fingerprint(ctx, &f)?;
    if ctx.class_dim(&c) != m.dimvec() {
        return Err(Error::InconsistentFingerprint(format!("class {c} does not match dimension {:?}", m.dims)));
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::Mat;
    use crate::quiver::{IQuiver, RawQuiver};
    use proptest::prelude::*;

    fn a3() -> std::sync::Arc<Ctx> {
        Ctx::new(IQuiver::validate(&RawQuiver::new(&["1", "2", "3"], &[("1", "2"), ("3", "2")], &[("1", "3")])).unwrap()).unwrap()
    }

    #[test]
    fn a2_examples() {
        let ctx = Ctx::new(IQuiver::validate(&RawQuiver::new(&["1", "2"], &[("1", "2")], &[])).unwrap()).unwrap();
        let split = FqRep { p: 2, dims: vec![1, 1], maps: vec![Mat::zeros(1, 1)] };
        assert_eq!(decompose(&ctx, &split).unwrap(), ModClass(vec![1, 1, 0]));
        let ind = FqRep { p: 2, dims: vec![1, 1], maps: vec![Mat::identity(1)] };
        assert_eq!(decompose(&ctx, &ind).unwrap(), ModClass(vec![0, 0, 1]));
    }

    proptest! {
        #[test]
        fn assemble_round_trip(m in proptest::collection::vec(0u32..3, 6), p in prop::sample::select(vec![2u64, 3, 5])) {
            let ctx = a3();
            let c = ModClass(m);
            let rep = ctx.assemble(&c, p).unwrap();
            prop_assert_eq!(decompose(&ctx, &rep).unwrap(), c);
        }
    }
}
