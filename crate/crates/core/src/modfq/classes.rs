//! Isoclasses of a given dimension, automorphism group orders and the
//! degeneration order.

use super::ModClass;
use crate::ctx::Ctx;
use crate::lpoly::{gl_order, LPoly};
use num_bigint::BigInt;

/// Every class with dimension vector `d`, sorted.
pub fn classes_of_dim(ctx: &Ctx, d: &[i64]) -> Vec<ModClass> {
    let mut out = Vec::new();
    if d.iter().any(|&x| x < 0) {
        return out;
    }
    let mut cur = vec![0u32; ctx.nroots()];
    let mut rem = d.to_vec();
    fill(ctx, 0, &mut rem, &mut cur, &mut out);
    out.sort();
    out
}

fn fill(ctx: &Ctx, r: usize, rem: &mut Vec<i64>, cur: &mut Vec<u32>, out: &mut Vec<ModClass>) {
    if rem.iter().all(|&x| x == 0) {
        out.push(ModClass(cur.clone()));
        return;
    }
    if r == ctx.nroots() {
        return;
    }
    let beta = &ctx.roots[r];
    let maxm = (0..rem.len()).filter(|&i| beta[i] > 0).map(|i| rem[i] / beta[i]).min().unwrap_or(0);
    for m in 0..=maxm {
        for i in 0..rem.len() {
            rem[i] -= m * beta[i];
        }
        cur[r] = m as u32;
        fill(ctx, r + 1, rem, cur, out);
        for i in 0..rem.len() {
            rem[i] += m * beta[i];
        }
    }
    cur[r] = 0;
}

/// `|Aut M_q(lambda)|` as a polynomial in `q`.
pub fn aut_polynomial(ctx: &Ctx, c: &ModClass) -> LPoly {
    let e = ctx.end_dim(c) as i64;
    let sq: i64 = c.support().map(|(_, m)| (m as i64) * (m as i64)).sum();
    let mut p = LPoly::x_pow(e - sq);
    for (_, m) in c.support() {
        p = &p * &gl_order(m);
    }
    p
}

pub fn aut_order(ctx: &Ctx, c: &ModClass, q: u64) -> BigInt {
    let v = aut_polynomial(ctx, c).eval_i64(q as i64);
    v.to_integer()
}

/// `lambda <= mu` in the degeneration order: equal dimension and
/// `hom(M(beta), lambda) >= hom(M(beta), mu)` for every root.
pub fn degeneration_leq(ctx: &Ctx, lam: &ModClass, mu: &ModClass) -> bool {
    if ctx.class_dim(lam) != ctx.class_dim(mu) {
        return false;
    }
    let (a, b) = (ctx.fingerprint(lam), ctx.fingerprint(mu));
    a.iter().zip(&b).all(|(x, y)| x >= y)
}

pub fn degeneration_lt(ctx: &Ctx, lam: &ModClass, mu: &ModClass) -> bool {
    lam != mu && degeneration_leq(ctx, lam, mu)
}

/// `dim Ext^1(M(lambda), M(mu))` from the Euler form.
pub fn ext_classes(ctx: &Ctx, a: &ModClass, b: &ModClass) -> i64 {
    ctx.hom_classes(a, b) as i64 - ctx.q.euler(&ctx.class_dim(a), &ctx.class_dim(b))
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{IQuiver, RawQuiver};

    fn ctx(raw: RawQuiver) -> std::sync::Arc<Ctx> {
        Ctx::new(IQuiver::validate(&raw).unwrap()).unwrap()
    }

    #[test]
    fn aut_examples() {
        let c = ctx(RawQuiver::new(&["1", "2"], &[("1", "2")], &[]));
        assert_eq!(aut_polynomial(&c, &ModClass(vec![0, 0, 1])), LPoly::from_coeffs(&[-1, 1]));
        assert_eq!(aut_polynomial(&c, &ModClass(vec![1, 1, 0])), LPoly::from_coeffs(&[1, -2, 1]));
        let two = aut_polynomial(&c, &ModClass(vec![2, 0, 0]));
        assert_eq!(two, &LPoly::from_coeffs(&[-1, 0, 1]) * &LPoly::from_coeffs(&[0, -1, 1]));
    }

    #[test]
    fn aut_matches_brute_force_count() {
        // count invertible endomorphisms of M_2(lambda) directly for small classes
        let c = ctx(RawQuiver::new(&["1", "2"], &[("1", "2")], &[]));
        for d in [[1i64, 1], [2, 1], [1, 2]] {
            for lam in classes_of_dim(&c, &d) {
                let rep = c.assemble(&lam, 2).unwrap();
                let basis = crate::modfq::hom_basis(&c.q, &rep, &rep);
                let mut units = 0u64;
                for mask in 0..(1u64 << basis.len()) {
                    let mut ok = true;
                    for i in 0..c.n() {
                        let mut f = crate::fp::Mat::zeros(rep.dims[i], rep.dims[i]);
                        for (k, b) in basis.iter().enumerate() {
                            if mask >> k & 1 == 1 {
                                for x in 0..f.data.len() {
                                    f.data[x] = (f.data[x] + b[i].data[x]) % 2;
                                }
                            }
                        }
                        if f.rank(2) != rep.dims[i] {
                            ok = false;
                        }
                    }
                    if ok {
                        units += 1;
                    }
                }
                assert_eq!(BigInt::from(units), aut_order(&c, &lam, 2), "{lam}");
            }
        }
    }

    #[test]
    fn degeneration_examples() {
        let c = ctx(RawQuiver::new(&["1", "2"], &[("1", "2")], &[]));
        let split = ModClass(vec![1, 1, 0]);
        let ind = ModClass(vec![0, 0, 1]);
        assert!(degeneration_lt(&c, &split, &ind));
        assert!(!degeneration_lt(&c, &split, &split));
        assert!(!degeneration_leq(&c, &split, &ModClass(vec![1, 0, 0])));
    }

    #[test]
    fn degeneration_is_partial_order() {
        for raw in [
            RawQuiver::new(&["1", "2"], &[("1", "2")], &[]),
            RawQuiver::new(&["1", "2", "3"], &[("1", "2"), ("3", "2")], &[]),
            RawQuiver::new(&["1", "2", "3"], &[("1", "2"), ("2", "3")], &[]),
        ] {
            let c = ctx(raw);
            let n = c.n();
            let mut dims = vec![vec![0i64; n]];
            for _ in 0..4 {
                let mut next = Vec::new();
                for d in &dims {
                    for i in 0..n {
                        let mut e = d.clone();
                        e[i] += 1;
                        next.push(e);
                    }
                }
                next.sort();
                next.dedup();
                for d in &next {
                    let cl = classes_of_dim(&c, d);
                    for a in &cl {
                        assert!(degeneration_leq(&c, a, a));
                        for b in &cl {
                            if a != b && degeneration_leq(&c, a, b) {
                                assert!(!degeneration_leq(&c, b, a));
                            }
                            for e in &cl {
                                if degeneration_leq(&c, a, b) && degeneration_leq(&c, b, e) {
                                    assert!(degeneration_leq(&c, a, e));
                                }
                            }
                        }
                    }
                }
                dims = next;
            }
        }
    }
}
