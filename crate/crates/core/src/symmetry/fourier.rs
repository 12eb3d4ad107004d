//! Fourier transform between the hat algebras of `Q` and of `Q'`, which is `Q`
//! with a set of arrows reversed, over a prime field. On functions,
//! `f^(x, w) = sqrt(p)^(-dim Y) sum_y zeta^(tr(y w)) f(x, y)` where `Y` is the
//! space of reversed arrows. `K`-parts are fixed.

use super::fixedq::{FixedElt, FixedQAlgebra};
use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::fp::{addm, mulm, Mat};
use crate::ihall::IKey;
use crate::laurent::QSqrt;
use crate::modfq::classes::{aut_order, classes_of_dim};
use crate::modfq::decompose::decompose;
use crate::modfq::{FqRep, ModClass};
use crate::quiver::DimVec;
use crate::report::Report;
use num_bigint::BigInt;
use num_rational::BigRational;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

/// Value of `sum_t c_t zeta^t` if it is rational.
pub fn character_sum(counts: &[u64]) -> Option<BigInt> {
    let first = counts.get(1).copied().unwrap_or(0);
    if counts.iter().skip(1).any(|&c| c != first) {
        return None;
    }
    Some(BigInt::from(counts[0]) - BigInt::from(first))
}

pub struct Fourier {
    pub src: Arc<Ctx>,
    pub dst: Arc<Ctx>,
    pub p: u64,
    /// Source arrow indices that are reversed, with the index of the reversed arrow in `dst`.
    flipped: Vec<(usize, usize)>,
    /// Source arrow index to target arrow index, for the arrows kept.
    kept: Vec<(usize, usize)>,
    /// Per dimension vector: source class to its image in target classes.
    columns: Mutex<HashMap<DimVec, Arc<HashMap<ModClass, BTreeMap<ModClass, QSqrt>>>>>,
}

impl std::fmt::Debug for Fourier {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Fourier").field("p", &self.p).field("flipped", &self.flipped).finish_non_exhaustive()
    }
}

impl Fourier {
    /// Reverses `arrows` (pairs of vertex indices of `src`).
    pub fn new(src: Arc<Ctx>, arrows: &[(usize, usize)], p: u64) -> Result<Fourier> {
        let q2 = src.q.reverse_arrows(arrows)?;
        let dst = Ctx::new(q2)?;
        Fourier::between(src, dst, arrows, p)
    }

    pub fn between(src: Arc<Ctx>, dst: Arc<Ctx>, arrows: &[(usize, usize)], p: u64) -> Result<Fourier> {
        let find = |a: (usize, usize)| {
            dst.q.arrows().iter().position(|&b| b == a).ok_or_else(|| Error::QuiverMismatch(format!("target lacks arrow {}->{}", dst.q.name(a.0), dst.q.name(a.1))))
        };
        let (mut flipped, mut kept) = (Vec::new(), Vec::new());
        for (k, &(s, t)) in src.q.arrows().iter().enumerate() {
            if arrows.contains(&(s, t)) {
                flipped.push((k, find((t, s))?));
            } else {
                kept.push((k, find((s, t))?));
            }
        }
        if src.q.arrows().len() != dst.q.arrows().len() || src.q.tau_perm() != dst.q.tau_perm() {
            return Err(Error::QuiverMismatch("arrow sets or involutions differ".into()));
        }
        Ok(Fourier { src, dst, p, flipped, kept, columns: Mutex::default() })
    }

    /// The same transform in the opposite direction (its inverse up to conjugating the character).
    pub fn reverse(&self) -> Result<Fourier> {
        let arrows: Vec<(usize, usize)> = self.flipped.iter().map(|&(k, _)| {
            let (s, t) = self.src.q.arrows()[k];
            (t, s)
        }).collect();
        Fourier::between(self.dst.clone(), self.src.clone(), &arrows, self.p)
    }

    /// `Phi(u_lambda)` for every class of dimension `d`.
    fn columns(&self, d: &[i64]) -> Result<Arc<HashMap<ModClass, BTreeMap<ModClass, QSqrt>>>> {
        if let Some(c) = self.columns.lock().unwrap().get(d) {
            return Ok(c.clone());
        }
        let c = Arc::new(self.compute_columns(d)?);
        self.columns.lock().unwrap().insert(d.to_vec(), c.clone());
        Ok(c)
    }

    fn compute_columns(&self, d: &[i64]) -> Result<HashMap<ModClass, BTreeMap<ModClass, QSqrt>>> {
        let p = self.p;
        let du: Vec<usize> = d.iter().map(|&x| x as usize).collect();
        let arrows = self.src.q.arrows();
        // free entries of the reversed arrows
        let shapes: Vec<(usize, usize)> = self.flipped.iter().map(|&(k, _)| (du[arrows[k].1], du[arrows[k].0])).collect();
        let nvars: usize = shapes.iter().map(|(r, c)| r * c).sum();
        let norm = QSqrt::sqrt_pow(p, -(nvars as i64));
        let mut out: HashMap<ModClass, BTreeMap<ModClass, QSqrt>> = HashMap::new();
        for target in classes_of_dim(&self.dst, d) {
            let rep = self.dst.assemble(&target, p)?;
            // pairing weights: tr(y w) = sum_{ij} y_ij w_ji
            let mut weights = Vec::with_capacity(nvars);
            for (f, &(_, kd)) in self.flipped.iter().enumerate() {
                let w = &rep.maps[kd];
                let (r, c) = shapes[f];
                for i in 0..r {
                    for j in 0..c {
                        weights.push(w.get(j, i));
                    }
                }
            }
            let mut counts: HashMap<ModClass, Vec<u64>> = HashMap::new();
            let mut y = vec![0u64; nvars];
            loop {
                let mut maps: Vec<Mat> = arrows.iter().map(|&(s, t)| Mat::zeros(du[t], du[s])).collect();
                for &(ks, kd) in &self.kept {
                    maps[ks] = rep.maps[kd].clone();
                }
                let mut pos = 0;
                for (f, &(ks, _)) in self.flipped.iter().enumerate() {
                    let (r, c) = shapes[f];
                    let mut m = Mat::zeros(r, c);
                    for i in 0..r {
                        for j in 0..c {
                            m.set(i, j, y[pos]);
                            pos += 1;
                        }
                    }
                    maps[ks] = m;
                }
                let cls = decompose(&self.src, &FqRep { p, dims: du.clone(), maps })?;
                let t = y.iter().zip(&weights).fold(0, |acc, (&a, &b)| addm(acc, mulm(a, b, p), p));
                counts.entry(cls).or_insert_with(|| vec![0; p as usize])[t as usize] += 1;
                // odometer
                let mut i = 0;
                while i < nvars {
                    y[i] += 1;
                    if y[i] < p {
                        break;
                    }
                    y[i] = 0;
                    i += 1;
                }
                if i == nvars {
                    break;
                }
            }
            for (cls, c) in counts {
                let s = character_sum(&c).ok_or_else(|| Error::NonRationalCoefficient(format!("character sum {c:?} for {cls} -> {target}")))?;
                if s != BigInt::from(0) {
                    out.entry(cls).or_default().insert(target.clone(), norm.scale(&BigRational::from_integer(s)));
                }
            }
        }
        Ok(out)
    }

    /// Transform of the orbit indicator of `lambda`, on target orbit indicators.
    pub fn image_indicator(&self, lam: &ModClass) -> Result<BTreeMap<ModClass, QSqrt>> {
        let d = self.src.class_dim(lam);
        Ok(self.columns(&d)?.get(lam).cloned().unwrap_or_default())
    }

    pub fn apply(&self, x: &FixedElt) -> Result<FixedElt> {
        let mut out = FixedElt::zero(self.p);
        for ((a, lam), c) in &x.terms {
            for (t, v) in self.image_class(lam)? {
                out.add_term((a.clone(), t), &(&v * c));
            }
        }
        Ok(out)
    }

    /// `Phi(u_lambda)`. The Hall basis element `u_M` is the orbit indicator
    /// divided by the orbit size, so coefficients pick up `a_M / a_N`.
    pub fn image_class(&self, lam: &ModClass) -> Result<BTreeMap<ModClass, QSqrt>> {
        let am = aut_order(&self.src, lam, self.p);
        Ok(self
            .image_indicator(lam)?
            .into_iter()
            .map(|(t, v)| {
                let an = aut_order(&self.dst, &t, self.p);
                (t, v.scale(&BigRational::new(am.clone(), an)))
            })
            .collect())
    }
}

fn is_int_times_sqrt_power(c: &QSqrt) -> bool {
    c.as_int_times_sqrt_pow().is_some()
}

/// Multiplicativity on basis pairs with product grade `<= bound`, inversion by
/// the reverse transform, the images of `u_{S_i}` and `K_i`, and integrality.
pub fn fourier_check(f: &Fourier, bound: &[i64]) -> Result<Report> {
    let p = f.p;
    let (src, dst) = (&f.src, &f.dst);
    let mut rep = Report::new(&format!("Fourier transform at p = {p}"));
    let fa = FixedQAlgebra::new(src.clone(), p, crate::modfq::count::DEFAULT_BUDGET);
    let fb = FixedQAlgebra::new(dst.clone(), p, crate::modfq::count::DEFAULT_BUDGET);
    let back = f.reverse()?;
    let alg = crate::ihall::IHallAlgebra::from_ctx(src.clone())?;
    let keys: Vec<IKey> = super::gamma::Reflection::keys_up_to(&alg, bound);
    let grade = |k: &IKey| crate::ihall::IHallElt::term_grade(src, &k.0, &k.1);
    let n = src.n();

    for i in 0..n {
        let s = ModClass::single(src.nroots(), src.simple_index(i), 1);
        let want: BTreeMap<ModClass, QSqrt> = [(ModClass::single(dst.nroots(), dst.simple_index(i), 1), QSqrt::one(p))].into();
        rep.push(format!("simple {}", src.q.name(i)), f.image_class(&s)? == want, "image of a simple is not the simple");
        let ki = FixedElt::basis(p, (src.q.unit(i), src.zero_class()));
        let kimg = f.apply(&ki)?;
        rep.push(format!("K_{}", src.q.name(i)), kimg == FixedElt::basis(p, (src.q.unit(i), dst.zero_class())), format!("image {kimg}"));
    }

    let mut images = HashMap::new();
    for k in &keys {
        let x = FixedElt::basis(p, k.clone());
        let fx = f.apply(&x)?;
        let bad: Vec<String> = fx.terms.values().filter(|c| !is_int_times_sqrt_power(c)).map(|c| c.to_string()).collect();
        rep.push(format!("{k:?} integral"), bad.is_empty(), format!("coefficients [{}]", bad.join(", ")));
        let round = back.apply(&fx)?;
        rep.push(format!("{k:?} inverse"), round == x, format!("round trip {round}"));
        images.insert(k.clone(), fx);
    }

    for x in &keys {
        let gx = grade(x);
        for y in &keys {
            let gy = grade(y);
            if (0..n).any(|i| gx[i] + gy[i] > bound[i]) {
                continue;
            }
            let prod = fa.product(&FixedElt::basis(p, x.clone()), &FixedElt::basis(p, y.clone()))?;
            let lhs = f.apply(&prod)?;
            let rhs = fb.product(&images[x], &images[y])?;
            rep.push(format!("{x:?} * {y:?}"), lhs == rhs, format!("residual {}", lhs.sub(&rhs)));
        }
    }
    Ok(rep)
}
