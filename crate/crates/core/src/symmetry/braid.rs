//! Braid operators on generators, compared with `Gamma_l` on Hall images.

use super::gamma::Reflection;
use crate::bar::genexp::generator_expansion;
use crate::error::{Error, Result};
use crate::ihall::{generator_image, GenKind, IHallAlgebra, IHallElt};
use crate::laurent::LaurentHalf;
use crate::quiver::DimVec;
use crate::report::Report;

fn b(alg: &IHallAlgebra, j: usize) -> Result<IHallElt> {
    generator_image(alg.ctx(), j, GenKind::B)
}

fn kk(alg: &IHallAlgebra, mu: &[i64]) -> IHallElt {
    IHallElt::k(alg.ctx(), mu)
}

fn unit(n: usize, i: usize, s: i64) -> DimVec {
    let mut v = vec![0; n];
    v[i] = s;
    v
}

/// `[x, y]_v = x y - v y x`.
fn vbracket(alg: &IHallAlgebra, x: &IHallElt, y: &IHallElt) -> Result<IHallElt> {
    Ok(alg.iproduct(x, y)?.sub(&alg.iproduct(y, x)?.scale(&LaurentHalf::v_pow(1))))
}

/// `v^(1/2) B_i B_j - v^(-1/2) B_j B_i`, the numerator of the rank-two formula.
fn twisted_commutator(alg: &IHallAlgebra, i: usize, j: usize) -> Result<IHallElt> {
    let (bi, bj) = (b(alg, i)?, b(alg, j)?);
    Ok(alg.iproduct(&bi, &bj)?.scale(&LaurentHalf::v_half_pow(1)).sub(&alg.iproduct(&bj, &bi)?.scale(&LaurentHalf::v_half_pow(-1))))
}

/// `T_l(B_j)` evaluated in the algebra of `r_l Q`, as `(numerator, k)` with
/// the value equal to `numerator / (v - v^-1)^k`.
pub fn braid_image_b(dst: &IHallAlgebra, l: usize, j: usize) -> Result<(IHallElt, u32)> {
    let q = &dst.ctx().q;
    let n = q.n();
    let tl = q.tau(l);
    if tl == l {
        return Ok(match q.cartan(l, j) {
            2 => (dst.iproduct(&kk(dst, &unit(n, l, -1)), &b(dst, l)?)?, 0),
            0 => (b(dst, j)?, 0),
            -1 => (twisted_commutator(dst, l, j)?, 1),
            c => return Err(Error::InvalidInput(format!("Cartan entry {c} outside simply-laced range"))),
        });
    }
    if q.cartan(l, tl) != 0 {
        return Err(Error::InvalidInput("orbit of l is not a pair of orthogonal vertices".into()));
    }
    let v = LaurentHalf::v_pow(1);
    Ok(if j == l {
        (dst.iproduct(&kk(dst, &unit(n, l, -1)), &b(dst, tl)?)?.scale(&v), 0)
    } else if j == tl {
        (dst.iproduct(&kk(dst, &unit(n, tl, -1)), &b(dst, l)?)?.scale(&v), 0)
    } else {
        match (q.cartan(l, j), q.cartan(tl, j)) {
            (-1, 0) => (twisted_commutator(dst, l, j)?, 1),
            (0, -1) => (twisted_commutator(dst, tl, j)?, 1),
            (-1, -1) => {
                // v^-1 [[B_j, B_l]_v, B_tl]_v / (v - v^-1)^2 + B_j K_l
                let inner = vbracket(dst, &b(dst, j)?, &b(dst, l)?)?;
                let num = vbracket(dst, &inner, &b(dst, tl)?)?.scale(&LaurentHalf::v_pow(-1));
                let tail = dst.iproduct(&b(dst, j)?, &kk(dst, &unit(n, l, 1)))?;
                let d = &LaurentHalf::v_pow(1) - &LaurentHalf::v_pow(-1);
                (num.add(&tail.scale(&(&d * &d))), 2)
            }
            _ => (b(dst, j)?, 0),
        }
    })
}

/// Compares `psi'(T_l(g))` with `Gamma_l(psi(g))` for every generator `B_j`, `K_j`.
pub fn braid_diagram_check(g: &Reflection) -> Result<Report> {
    let (src, dst) = (&g.src, &g.dst);
    let sc = src.ctx().clone();
    let n = sc.n();
    let mut rep = Report::new(&format!("braid diagram at {}", sc.q.name(g.l)));
    let d = &LaurentHalf::v_pow(1) - &LaurentHalf::v_pow(-1);
    for j in 0..n {
        let name = sc.q.name(j).to_string();
        let (num, k) = braid_image_b(dst, g.l, j)?;
        let mut rhs = g.apply(&b(src, j)?);
        for _ in 0..k {
            rhs = rhs.scale(&d);
        }
        rep.push(format!("B_{name}"), num == rhs, format!("residual {}", num.sub(&rhs).display(dst.ctx())));
        let kimg = g.apply(&kk(src, &sc.q.unit(j)));
        let want = kk(dst, &sc.q.orbit_reflect(g.l, &sc.q.unit(j)));
        rep.push(format!("K_{name}"), kimg == want, format!("residual {}", kimg.sub(&want).display(dst.ctx())));
    }
    Ok(rep)
}

/// Rewrites a homogeneous element of one algebra as the same polynomial in
/// the generators `u_i`, `K_i` evaluated in another algebra on the same vertices.
pub fn transport(from: &IHallAlgebra, to: &IHallAlgebra, x: &IHallElt) -> Result<IHallElt> {
    let ctx = from.ctx();
    let n = ctx.n();
    if x.is_zero() {
        return Ok(IHallElt::zero());
    }
    let grade = x.grade(ctx).ok_or_else(|| Error::InvalidInput("transport needs a homogeneous element".into()))?;
    // shift into the hat algebra by a central-up-to-scalar K
    let mut m = vec![0i64; n];
    for ((a, _), _) in x.iter() {
        for i in 0..n {
            m[i] = m[i].max(-a[i]);
        }
    }
    let shifted = from.iproduct(&IHallElt::k(ctx, &m), x)?;
    let tm = ctx.q.tau_vec(&m);
    let hat_grade: DimVec = (0..n).map(|i| grade[i] + m[i] + tm[i]).collect();
    let ex = generator_expansion(from, &hat_grade)?;
    let mut acc = IHallElt::zero();
    for (mi, w) in ex.monomials.iter().enumerate() {
        let mut c = LaurentHalf::zero();
        for (bi, key) in ex.piece.basis.iter().enumerate() {
            let xb = shifted.terms.get(key);
            if !xb.is_zero() {
                c = &c + &(&xb * &ex.adj[bi][mi]);
            }
        }
        if !c.is_zero() {
            acc = acc.add(&w.eval(to)?.scale(&c));
        }
    }
    let acc = acc.div_exact(&ex.det).ok_or_else(|| Error::NonIntegralCoefficient("transport".into()))?;
    let neg: DimVec = m.iter().map(|x| -x).collect();
    to.iproduct(&IHallElt::k(to.ctx(), &neg), &acc)
}

/// Applies a chain of reflections (first element first).
pub fn apply_chain(chain: &[&Reflection], x: &IHallElt) -> IHallElt {
    chain.iter().fold(x.clone(), |acc, g| g.apply(&acc))
}

/// Braid relation of a rank-two pair of orbits: the two alternating chains
/// of length `m`, started at the quivers where their first letter is a sink,
/// agree on every generator after transporting one result to the other quiver.
pub fn composite_braid_check(left: &[&Reflection], right: &[&Reflection]) -> Result<Report> {
    let (ls, rs) = (&left[0].src, &right[0].src);
    let lt = &left.last().expect("nonempty chain").dst;
    let rt = &right.last().expect("nonempty chain").dst;
    let words = |c: &[&Reflection]| c.iter().map(|g| g.src.ctx().q.name(g.l).to_string()).collect::<Vec<_>>().join("");
    let mut rep = Report::new(&format!("braid relation {} = {}", words(left), words(right)));
    if lt.ctx().q.arrows() != ls.ctx().q.arrows() || rt.ctx().q.arrows() != rs.ctx().q.arrows() {
        return Err(Error::QuiverMismatch("chains do not return to their starting quivers".into()));
    }
    let n = ls.ctx().n();
    for j in 0..n {
        for (name, gl, gr) in [
            (format!("B_{}", ls.ctx().q.name(j)), b(ls, j)?, b(rs, j)?),
            (format!("K_{}", ls.ctx().q.name(j)), kk(ls, &unit(n, j, 1)), kk(rs, &unit(n, j, 1))),
        ] {
            let a = apply_chain(left, &gl);
            let bb = transport(rt, lt, &apply_chain(right, &gr))?;
            rep.push(name, a == bb, format!("residual {}", a.sub(&bb).display(lt.ctx())));
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ctx::Ctx;
    use crate::quiver::{IQuiver, RawQuiver};
    use std::sync::Arc;

    fn alg(raw: RawQuiver) -> Arc<IHallAlgebra> {
        IHallAlgebra::from_ctx(Ctx::new(IQuiver::validate(&raw).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn diagram_split_a2_and_a3() {
        for (raw, l) in [
            (RawQuiver::new(&["1", "2"], &[("1", "2")], &[]), 1),
            (RawQuiver::new(&["1", "2", "3"], &[("1", "2"), ("3", "2")], &[("1", "3")]), 1),
            (RawQuiver::new(&["1", "2", "3"], &[("2", "1"), ("2", "3")], &[("1", "3")]), 0),
        ] {
            let g = Reflection::new(alg(raw), l).unwrap();
            let rep = braid_diagram_check(&g).unwrap();
            assert!(rep.all_passed(), "{}", rep.to_text());
        }
    }

    #[test]
    fn transport_is_identity_on_same_quiver() {
        let a = alg(RawQuiver::new(&["1", "2", "3"], &[("1", "2"), ("3", "2")], &[("1", "3")]));
        let ctx = a.ctx().clone();
        let x = IHallElt::basis(vec![-1, 0, 0], ctx.zero_class().add(&crate::modfq::ModClass::single(ctx.nroots(), ctx.root_index(&[1, 1, 0]).unwrap(), 1)));
        assert_eq!(transport(&a, &a, &x).unwrap(), x);
    }

    #[test]
    fn braid_relation_a3_outer() {
        let qa = alg(RawQuiver::new(&["1", "2", "3"], &[("1", "2"), ("3", "2")], &[("1", "3")]));
        let qb = alg(RawQuiver::new(&["1", "2", "3"], &[("2", "1"), ("2", "3")], &[("1", "3")]));
        // reflections at 2 go qa -> qb, at 1 go qb -> qa
        let r2 = Reflection::between(qa.clone(), qb.clone(), 1).unwrap();
        let r1 = Reflection::between(qb.clone(), qa.clone(), 0).unwrap();
        let rep = composite_braid_check(&[&r2, &r1, &r2, &r1], &[&r1, &r2, &r1, &r2]).unwrap();
        assert!(rep.all_passed(), "{}", rep.to_text());
    }
}
