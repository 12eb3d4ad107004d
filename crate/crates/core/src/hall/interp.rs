//! Hall polynomials fitted to direct submodule counts at several primes.

use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::int::Int;
use crate::lpoly::{interpolate, LPoly};
use crate::modfq::count::hall_number;
use crate::modfq::ModClass;
use serde::{Deserialize, Serialize};

/// An F-polynomial together with the primes it was fitted and confirmed on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HallPolynomial {
    #[serde(with = "poly_serde")]
    pub poly: LPoly,
    pub nodes: Vec<u64>,
}

mod poly_serde {
    use crate::lpoly::LPoly;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(p: &LPoly, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<(i64, String)> = p.terms().map(|(e, c)| (e, c.to_string())).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<LPoly, D::Error> {
        let v: Vec<(i64, String)> = Vec::deserialize(d)?;
        let mut terms = Vec::new();
        for (e, c) in v {
            terms.push((e, c.parse().map_err(|_| serde::de::Error::custom(format!("bad coefficient {c}")))?));
        }
        Ok(LPoly::from_terms(terms))
    }
}

/// `F^l_{m n}` as a polynomial in `q`: fit through `k` counts, confirm at
/// two further primes, and grow `k` until the confirmation holds.
/// `k` starts at `dim Hom(M(n), M(m)) + 1`.
pub fn interpolate_hall_polynomial(ctx: &Ctx, m: &ModClass, n: &ModClass, l: &ModClass, primes: &[u64], budget: u64) -> Result<HallPolynomial> {
    let (dm, dn, dl) = (ctx.class_dim(m), ctx.class_dim(n), ctx.class_dim(l));
    if (0..ctx.n()).any(|i| dm[i] + dn[i] != dl[i]) {
        return Ok(HallPolynomial { poly: LPoly::zero(), nodes: Vec::new() });
    }
    let mut k = ctx.hom_classes(n, m) as usize + 1;
    let mut samples: Vec<(i64, Int)> = Vec::new();
    let count_upto = |upto: usize, samples: &mut Vec<(i64, Int)>| -> Result<()> {
        while samples.len() < upto {
            let p = *primes.get(samples.len()).ok_or_else(|| Error::StabilizationFailed(format!("F^{l}_{{{m},{n}}} needs more than {} primes", primes.len())))?;
            samples.push((p as i64, Int::from(hall_number(ctx, m, n, l, p, budget)?)));
        }
        Ok(())
    };
    loop {
        count_upto(k + 2, &mut samples)?;
        if let Some(poly) = interpolate(&samples[..k]) {
            let held_out_ok = samples[k..k + 2].iter().all(|(x, y)| poly.eval_i64(*x) == num_rational::BigRational::from_integer(y.to_big()));
            if held_out_ok {
                return Ok(HallPolynomial { poly, nodes: samples.iter().map(|s| s.0 as u64).collect() });
            }
        }
        k += 1;
    }
}
