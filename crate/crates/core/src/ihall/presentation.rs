//! Generator images and the defining relations of the (i)quantum group.

use super::algebra::IHallAlgebra;
use super::elt::IHallElt;
use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::laurent::LaurentHalf;
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenKind {
    /// `B_i`
    B,
    /// `k~_i`
    Tk,
    /// `KK_i`, equal to `v k~_i` on fixed vertices and `k~_i` otherwise.
    BoldK,
    E,
    F,
    K,
    Kp,
}

impl std::str::FromStr for GenKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<GenKind> {
        Ok(match s {
            "B" => GenKind::B,
            "k" | "tk" => GenKind::Tk,
            "KK" | "bold-k" => GenKind::BoldK,
            "E" => GenKind::E,
            "F" => GenKind::F,
            "K" => GenKind::K,
            "K'" | "Kp" => GenKind::Kp,
            _ => return Err(Error::Parse(format!("unknown generator kind {s}"))),
        })
    }
}

/// The partner of `i` in a diagonal double, when `i` lies in the first half.
fn double_partner(ctx: &Ctx, i: usize) -> Result<usize> {
    let halves = ctx.q.double_halves().ok_or_else(|| Error::KindUnavailable("not a diagonal double".into()))?;
    halves.iter().find(|(a, _)| *a == i).map(|&(_, b)| b).ok_or_else(|| Error::KindUnavailable(format!("vertex {} is not in the first half", ctx.q.name(i))))
}

pub fn generator_image(ctx: &Ctx, i: usize, kind: GenKind) -> Result<IHallElt> {
    if i >= ctx.n() {
        return Err(Error::InvalidInput(format!("vertex index {i} out of range")));
    }
    let simple = |j: usize| ctx.zero_class().add(&crate::modfq::ModClass::single(ctx.nroots(), ctx.simple_index(j), 1));
    let fixed = ctx.q.tau(i) == i;
    Ok(match kind {
        GenKind::B => IHallElt::u(ctx, &simple(i)).scale(&LaurentHalf::v_half_pow(-1)),
        GenKind::Tk => {
            let k = IHallElt::k(ctx, &ctx.q.unit(i));
            if fixed {
                k.scale(&LaurentHalf::v_pow(-1))
            } else {
                k
            }
        }
        GenKind::BoldK => IHallElt::k(ctx, &ctx.q.unit(i)),
        GenKind::E => {
            double_partner(ctx, i)?;
            IHallElt::u(ctx, &simple(i)).scale(&LaurentHalf::v_half_pow(-1))
        }
        GenKind::F => IHallElt::u(ctx, &simple(double_partner(ctx, i)?)).scale(&LaurentHalf::v_half_pow(-1)),
        GenKind::K => IHallElt::k(ctx, &ctx.q.unit(double_partner(ctx, i)?)),
        GenKind::Kp => {
            double_partner(ctx, i)?;
            IHallElt::k(ctx, &ctx.q.unit(i))
        }
    })
}

/// Symmetric quantum integer `[n] = (v^n - v^-n)/(v - v^-1)`.
pub fn sym_qint(n: i64) -> LaurentHalf {
    let mut out = LaurentHalf::zero();
    for k in 0..n {
        out += &LaurentHalf::v_pow(n - 1 - 2 * k);
    }
    out
}

pub fn sym_qbinom(m: i64, r: i64) -> LaurentHalf {
    let mut num = LaurentHalf::one();
    let mut den = LaurentHalf::one();
    for k in 0..r {
        num = &num * &sym_qint(m - k);
        den = &den * &sym_qint(k + 1);
    }
    num.div_exact(&den).expect("quantum binomials are Laurent polynomials")
}

struct Words<'a> {
    alg: &'a IHallAlgebra,
}

impl Words<'_> {
    fn prod(&self, xs: &[&IHallElt]) -> Result<IHallElt> {
        self.alg.iproduct_all(xs)
    }

    /// `sum_s (-1)^s [1-c, s] x^s y x^(1-c-s)`.
    fn serre(&self, x: &IHallElt, y: &IHallElt, c: i64) -> Result<IHallElt> {
        let m = 1 - c;
        let mut out = IHallElt::zero();
        for s in 0..=m {
            let mut f: Vec<&IHallElt> = vec![x; s as usize];
            f.push(y);
            f.extend(std::iter::repeat_n(x, (m - s) as usize));
            let sign = if s % 2 == 0 { 1 } else { -1 };
            out = out.add(&self.prod(&f)?.scale(&sym_qbinom(m, s).scale(&sign.into())));
        }
        Ok(out)
    }

    fn commutator(&self, x: &IHallElt, y: &IHallElt, c: &LaurentHalf) -> Result<IHallElt> {
        Ok(self.prod(&[x, y])?.sub(&self.prod(&[y, x])?.scale(c)))
    }
}

fn residual(r: Result<IHallElt>, ctx: &Ctx) -> Result<Option<String>> {
    let r = r?;
    Ok(if r.is_zero() { None } else { Some(r.display(ctx)) })
}

/// Evaluates each defining relation on the generator images.
pub fn verify_presentation(alg: &IHallAlgebra) -> Report {
    let ctx = alg.ctx().clone();
    if ctx.q.double_halves().is_some() {
        verify_double(alg)
    } else {
        verify_iquantum(alg)
    }
}

fn verify_iquantum(alg: &IHallAlgebra) -> Report {
    let ctx = alg.ctx().clone();
    let q = &ctx.q;
    let w = Words { alg };
    let n = ctx.n();
    let name = |i: usize| q.name(i).to_string();
    let b: Vec<IHallElt> = (0..n).map(|i| generator_image(&ctx, i, GenKind::B).expect("B exists")).collect();
    let k: Vec<IHallElt> = (0..n).map(|i| generator_image(&ctx, i, GenKind::Tk).expect("k exists")).collect();
    let mut rep = Report::new("relations");
    for i in 0..n {
        for l in 0..n {
            if i < l {
                rep.push_result(format!("k{} k{} = k{} k{}", name(i), name(l), name(l), name(i)), residual(w.commutator(&k[i], &k[l], &LaurentHalf::one()), &ctx));
            }
            let e = q.cartan(q.tau(l), i) - q.cartan(l, i);
            rep.push_result(format!("k{} B{} = v^{} B{} k{}", name(l), name(i), e, name(i), name(l)), residual(w.commutator(&k[l], &b[i], &LaurentHalf::v_pow(e)), &ctx));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let c = q.cartan(i, j);
            if c == 0 && q.tau(i) != j && i < j {
                rep.push_result(format!("B{} B{} = B{} B{}", name(i), name(j), name(j), name(i)), residual(w.commutator(&b[i], &b[j], &LaurentHalf::one()), &ctx));
            }
            if c < 0 && j != q.tau(i) && q.tau(i) != i {
                rep.push_result(format!("Serre(B{}, B{})", name(i), name(j)), residual(w.serre(&b[i], &b[j], c), &ctx));
            }
            if c == -1 && q.tau(i) == i {
                let r = (|| {
                    let lhs = w.serre(&b[i], &b[j], c)?;
                    let vv = LaurentHalf::v_pow(1) - LaurentHalf::v_pow(-1);
                    let coef = -(&(&vv * &vv) * &LaurentHalf::v_pow(1));
                    Ok(lhs.sub(&w.prod(&[&k[i], &b[j]])?.scale(&coef)))
                })();
                rep.push_result(format!("Serre(B{}, B{}) = -v(v-v^-1)^2 k{} B{}", name(i), name(j), name(i), name(j)), residual(r, &ctx));
            }
        }
        let t = q.tau(i);
        if t != i {
            let r = (|| {
                let lhs = w.commutator(&b[t], &b[i], &LaurentHalf::one())?;
                let rhs = k[i].sub(&k[t]).scale(&(LaurentHalf::v_pow(-1) - LaurentHalf::v_pow(1)));
                Ok(lhs.sub(&rhs))
            })();
            rep.push_result(format!("B{} B{} - B{} B{} = (v^-1 - v)(k{} - k{})", name(t), name(i), name(i), name(t), name(i), name(t)), residual(r, &ctx));
        }
    }
    rep
}

fn verify_double(alg: &IHallAlgebra) -> Report {
    let ctx = alg.ctx().clone();
    let q = &ctx.q;
    let w = Words { alg };
    let halves = q.double_halves().expect("double");
    let idx: Vec<usize> = halves.iter().map(|p| p.0).collect();
    let name = |i: usize| q.name(i).to_string();
    let gen = |i: usize, g: GenKind| generator_image(&ctx, i, g).expect("double generator");
    let mut rep = Report::new("relations");
    for &i in &idx {
        for &j in &idx {
            let (ei, fj) = (gen(i, GenKind::E), gen(j, GenKind::F));
            let r = (|| {
                let lhs = w.commutator(&ei, &fj, &LaurentHalf::one())?;
                if i != j {
                    return Ok(lhs);
                }
                let rhs = gen(i, GenKind::K).sub(&gen(i, GenKind::Kp)).scale(&(LaurentHalf::v_pow(-1) - LaurentHalf::v_pow(1)));
                Ok(lhs.sub(&rhs))
            })();
            rep.push_result(format!("[E{}, F{}]", name(i), name(j)), residual(r, &ctx));
            let c = q.cartan(i, j);
            let ks = [(GenKind::K, GenKind::E, c), (GenKind::K, GenKind::F, -c), (GenKind::Kp, GenKind::E, -c), (GenKind::Kp, GenKind::F, c)];
            for (kk, x, e) in ks {
                let r = w.commutator(&gen(i, kk), &gen(j, x), &LaurentHalf::v_pow(e));
                rep.push_result(format!("{kk:?}{} {x:?}{} = v^{e} {x:?}{} {kk:?}{}", name(i), name(j), name(j), name(i)), residual(r, &ctx));
            }
            for a in [GenKind::K, GenKind::Kp] {
                for b in [GenKind::K, GenKind::Kp] {
                    let r = w.commutator(&gen(i, a), &gen(j, b), &LaurentHalf::one());
                    rep.push_result(format!("[{a:?}{}, {b:?}{}]", name(i), name(j)), residual(r, &ctx));
                }
            }
            if i != j {
                for g in [GenKind::E, GenKind::F] {
                    rep.push_result(format!("Serre({g:?}{}, {g:?}{})", name(i), name(j)), residual(w.serre(&gen(i, g), &gen(j, g), c), &ctx));
                }
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{IQuiver, RawQuiver};

    fn alg(raw: RawQuiver) -> std::sync::Arc<IHallAlgebra> {
        IHallAlgebra::from_ctx(Ctx::new(IQuiver::validate(&raw).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn quantum_binomials() {
        assert_eq!(sym_qbinom(2, 1), LaurentHalf::v_pow(1) + LaurentHalf::v_pow(-1));
        assert_eq!(sym_qbinom(3, 0), LaurentHalf::one());
        assert_eq!(sym_qbinom(3, 1), sym_qint(3));
    }

    #[test]
    fn images() {
        let a = alg(RawQuiver::new(&["1"], &[], &[]));
        let ctx = a.ctx();
        let k = generator_image(ctx, 0, GenKind::Tk).unwrap();
        assert_eq!(k.coeff(&[1], &ctx.zero_class()), LaurentHalf::v_pow(-1));
        assert_eq!(generator_image(ctx, 0, GenKind::BoldK).unwrap(), IHallElt::k(ctx, &[1]));
        assert!(matches!(generator_image(ctx, 0, GenKind::E), Err(Error::KindUnavailable(_))));
    }

    #[test]
    fn relations_split_a2() {
        let a = alg(RawQuiver::new(&["1", "2"], &[("1", "2")], &[]));
        let rep = verify_presentation(&a);
        assert!(rep.all_passed(), "{}", rep.to_text());
        assert!(rep.entries.iter().any(|e| e.name.contains("-v(v-v^-1)^2")));
    }

    #[test]
    fn relations_a3_outer() {
        let a = alg(RawQuiver::new(&["1", "2", "3"], &[("1", "2"), ("3", "2")], &[("1", "3")]));
        let rep = verify_presentation(&a);
        assert!(rep.all_passed(), "{}", rep.to_text());
    }

    #[test]
    fn relations_double_a1() {
        let a = alg(RawQuiver::new(&["1", "1'"], &[], &[("1", "1'")]));
        let rep = verify_presentation(&a);
        assert!(rep.all_passed(), "{}", rep.to_text());
        assert!(rep.entries.iter().any(|e| e.name == "[E1, F1]"));
    }
}
