//! Representations over prime fields: construction, Hom spaces and direct sums.

pub mod classes;
pub mod count;
pub mod decompose;
pub mod ext;

use crate::error::{Error, Result};
use crate::fp::Mat;
use crate::quiver::{roots, DimVec, IQuiver};
use std::fmt;

/// Multiplicity of each positive root (canonical root index) in a module.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ModClass(pub Vec<u32>);

impl ModClass {
    pub fn zero(nroots: usize) -> ModClass {
        ModClass(vec![0; nroots])
    }

    pub fn single(nroots: usize, r: usize, m: u32) -> ModClass {
        let mut c = ModClass::zero(nroots);
        c.0[r] = m;
        c
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&m| m == 0)
    }

    pub fn get(&self, r: usize) -> u32 {
        self.0[r]
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn dim(&self, roots: &[DimVec]) -> DimVec {
        let n = roots.first().map_or(0, |r| r.len());
        let mut d = vec![0; n];
        for (r, &m) in self.0.iter().enumerate() {
            for i in 0..n {
                d[i] += m as i64 * roots[r][i];
            }
        }
        d
    }

    pub fn add(&self, o: &ModClass) -> ModClass {
        ModClass(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn checked_sub(&self, o: &ModClass) -> Option<ModClass> {
        self.0.iter().zip(&o.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(ModClass)
    }

    /// Non-zero `(root index, multiplicity)` pairs.
    pub fn support(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().enumerate().filter(|(_, &m)| m > 0).map(|(r, &m)| (r, m))
    }
}

impl fmt::Display for ModClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for (r, m) in self.support() {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{r}:{m}")?;
        }
        write!(f, "}}")
    }
}

/// A representation over `F_p`: one space per vertex, one matrix per arrow
/// (target dimension by source dimension), arrows in the quiver's order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FqRep {
    pub p: u64,
    pub dims: Vec<usize>,
    pub maps: Vec<Mat>,
}

impl FqRep {
    pub fn zero(q: &IQuiver, p: u64) -> FqRep {
        FqRep { p, dims: vec![0; q.n()], maps: q.arrows().iter().map(|_| Mat::zeros(0, 0)).collect() }
    }

    pub fn simple(arrows: &[(usize, usize)], n: usize, i: usize, p: u64) -> FqRep {
        let mut dims = vec![0; n];
        dims[i] = 1;
        let maps = arrows.iter().map(|&(s, t)| Mat::zeros(dims[t], dims[s])).collect();
        FqRep { p, dims, maps }
    }

    pub fn dimvec(&self) -> DimVec {
        self.dims.iter().map(|&d| d as i64).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn check_shape(&self, q: &IQuiver) -> Result<()> {
        if self.dims.len() != q.n() || self.maps.len() != q.arrows().len() {
            return Err(Error::ShapeMismatch("vertex or arrow count differs from the quiver".into()));
        }
        for (k, &(s, t)) in q.arrows().iter().enumerate() {
            let m = &self.maps[k];
            if m.rows != self.dims[t] || m.cols != self.dims[s] {
                return Err(Error::ShapeMismatch(format!("arrow {k} has a {}x{} matrix", m.rows, m.cols)));
            }
        }
        Ok(())
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(q: &IQuiver, p: u64, parts: &[&FqRep]) -> FqRep {
        let n = q.n();
        let mut dims = vec![0; n];
        for part in parts {
            for i in 0..n {
                dims[i] += part.dims[i];
            }
        }
        let mut maps = Vec::new();
        for (k, &(s, t)) in q.arrows().iter().enumerate() {
            let mut m = Mat::zeros(dims[t], dims[s]);
            let (mut r0, mut c0) = (0, 0);
            for part in parts {
                let pm = &part.maps[k];
                for i in 0..pm.rows {
                    for j in 0..pm.cols {
                        m.set(r0 + i, c0 + j, pm.get(i, j));
                    }
                }
                r0 += part.dims[t];
                c0 += part.dims[s];
            }
            maps.push(m);
        }
        FqRep { p, dims, maps }
    }

    /// Row-major text listing of every matrix.
    pub fn to_text(&self, q: &IQuiver) -> String {
        let mut out = format!("p = {}\ndims = {:?}\n", self.p, self.dims);
        for (k, &(s, t)) in q.arrows().iter().enumerate() {
            out.push_str(&format!("{}->{}:", q.name(s), q.name(t)));
            let m = &self.maps[k];
            for i in 0..m.rows {
                out.push_str(&format!(" {:?}", m.row(i)));
            }
            out.push('\n');
        }
        out
    }
}

/// Linear system whose kernel is `Hom(M, N)`; unknowns are the entries of
/// `f_i : M_i -> N_i`, row-major, vertex by vertex.
fn hom_system(q: &IQuiver, m: &FqRep, n: &FqRep) -> (Mat, Vec<usize>) {
    let nv = q.n();
    let mut off = vec![0; nv + 1];
    for i in 0..nv {
        off[i + 1] = off[i] + m.dims[i] * n.dims[i];
    }
    let neq: usize = q.arrows().iter().map(|&(s, t)| n.dims[t] * m.dims[s]).sum();
    let p = m.p;
    let mut a = Mat::zeros(neq, off[nv]);
    let mut row = 0;
    for (k, &(s, t)) in q.arrows().iter().enumerate() {
        let (mh, nh) = (&m.maps[k], &n.maps[k]);
        for x in 0..n.dims[t] {
            for y in 0..m.dims[s] {
                // (N_h f_s - f_t M_h)[x][y]
                for c in 0..n.dims[s] {
                    let v = nh.get(x, c);
                    if v != 0 {
                        let idx = off[s] + c * m.dims[s] + y;
                        a.set(row, idx, crate::fp::addm(a.get(row, idx), v, p));
                    }
                }
                for c in 0..m.dims[t] {
                    let v = mh.get(c, y);
                    if v != 0 {
                        let idx = off[t] + x * m.dims[t] + c;
                        a.set(row, idx, crate::fp::subm(a.get(row, idx), v, p));
                    }
                }
                row += 1;
            }
        }
    }
    (a, off)
}

pub fn hom_dim(q: &IQuiver, m: &FqRep, n: &FqRep) -> Result<usize> {
    if m.p != n.p {
        return Err(Error::ShapeMismatch(format!("primes {} and {} differ", m.p, n.p)));
    }
    m.check_shape(q)?;
    n.check_shape(q)?;
    Ok(hom_dim_unchecked(q, m, n))
}

pub(crate) fn hom_dim_unchecked(q: &IQuiver, m: &FqRep, n: &FqRep) -> usize {
    if m.is_zero() || n.is_zero() {
        return 0;
    }
    let (a, off) = hom_system(q, m, n);
    off[q.n()] - a.rank(m.p)
}

/// Basis of `Hom(M, N)` as per-vertex matrices.
pub fn hom_basis(q: &IQuiver, m: &FqRep, n: &FqRep) -> Vec<Vec<Mat>> {
    let (a, off) = hom_system(q, m, n);
    let ns = a.nullspace(m.p);
    (0..ns.rows)
        .map(|k| {
            let v = ns.row(k);
            (0..q.n())
                .map(|i| {
                    let mut f = Mat::zeros(n.dims[i], m.dims[i]);
                    f.data.copy_from_slice(&v[off[i]..off[i + 1]]);
                    f
                })
                .collect()
        })
        .collect()
}

/// Sink-adapted reduced word whose induced roots exhaust the positive roots:
/// each letter is a sink of the quiver reflected at the earlier letters.
fn adapted_word(q: &IQuiver, nroots: usize) -> Vec<usize> {
    fn go(q: &IQuiver, arrows: &[(usize, usize)], word: &mut Vec<usize>, seen: &mut Vec<DimVec>, nroots: usize) -> bool {
        if seen.len() == nroots {
            return true;
        }
        for k in 0..q.n() {
            if arrows.iter().any(|&(s, _)| s == k) {
                continue;
            }
            let mut r = q.unit(k);
            for &l in word.iter().rev() {
                r = q.simple_reflect(l, &r);
            }
            if !roots::is_positive(&r) || seen.contains(&r) {
                continue;
            }
            let next: Vec<(usize, usize)> = arrows.iter().map(|&a| if a.1 == k { (a.1, a.0) } else { a }).collect();
            word.push(k);
            seen.push(r);
            if go(q, &next, word, seen, nroots) {
                return true;
            }
            word.pop();
            seen.pop();
        }
        false
    }
    let mut word = Vec::new();
    let found = go(q, q.arrows(), &mut word, &mut Vec::new(), nroots);
    debug_assert!(found);
    word
}

/// BGP coreflection at a source `k`: the new space at `k` is the cokernel of
/// the combined outgoing map, and those arrows turn around.
fn coreflect(arrows: &mut [(usize, usize)], rep: &mut FqRep, k: usize) {
    let p = rep.p;
    let out: Vec<usize> = (0..arrows.len()).filter(|&h| arrows[h].0 == k).collect();
    let total: usize = out.iter().map(|&h| rep.dims[arrows[h].1]).sum();
    let mut phi = Mat::zeros(total, rep.dims[k]);
    let mut r0 = 0;
    let mut offs = Vec::new();
    for &h in &out {
        let m = &rep.maps[h];
        for i in 0..m.rows {
            for j in 0..m.cols {
                phi.set(r0 + i, j, m.get(i, j));
            }
        }
        offs.push(r0);
        r0 += m.rows;
    }
    let c = phi.left_nullspace(p);
    rep.dims[k] = c.rows;
    for (idx, &h) in out.iter().enumerate() {
        let t = arrows[h].1;
        rep.maps[h] = c.col_block(offs[idx], offs[idx] + rep.dims[t]);
        arrows[h] = (t, k);
    }
}

/// The indecomposable with dimension vector `beta`, built by coreflecting a
/// simple along a sink-adapted word.
pub fn build_indecomposable(q: &IQuiver, beta: &[i64], p: u64) -> Result<FqRep> {
    if !roots::is_positive(beta) || q.sym(beta, beta) != 2 {
        return Err(Error::InvalidInput(format!("{beta:?} is not a positive root")));
    }
    let nroots = roots::positive_roots(q).len();
    let word = adapted_word(q, nroots);
    let mut found = None;
    for k in 0..word.len() {
        let mut r = q.unit(word[k]);
        for &l in word[..k].iter().rev() {
            r = q.simple_reflect(l, &r);
        }
        if r == beta {
            found = Some(k);
            break;
        }
    }
    let k = found.ok_or_else(|| Error::InvalidInput(format!("root {beta:?} not reached by the adapted word")))?;
    let mut arrows: Vec<(usize, usize)> = q.arrows().to_vec();
    for &l in &word[..k] {
        for a in arrows.iter_mut() {
            if a.1 == l {
                *a = (a.1, a.0);
            }
        }
    }
    let mut rep = FqRep::simple(&arrows, q.n(), word[k], p);
    for &l in word[..k].iter().rev() {
        coreflect(&mut arrows, &mut rep, l);
    }
    debug_assert_eq!(arrows, q.arrows());
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::RawQuiver;

    fn a2() -> IQuiver {
        IQuiver::validate(&RawQuiver::new(&["1", "2"], &[("1", "2")], &[])).unwrap()
    }

    #[test]
    fn a2_indecomposables() {
        let q = a2();
        let p1 = build_indecomposable(&q, &[1, 1], 2).unwrap();
        assert_eq!(p1.dims, vec![1, 1]);
        assert_eq!(p1.maps[0].get(0, 0), 1);
        let s1 = build_indecomposable(&q, &[1, 0], 2).unwrap();
        assert_eq!(hom_dim(&q, &p1, &s1).unwrap(), 1);
        assert_eq!(hom_dim(&q, &s1, &p1).unwrap(), 0);
        assert_eq!(hom_dim(&q, &p1, &p1).unwrap(), 1);
    }

    #[test]
    fn every_root_has_trivial_endomorphisms() {
        let quivers = [
            IQuiver::validate(&RawQuiver::new(&["1", "2", "3", "4"], &[("1", "2"), ("3", "2"), ("4", "2")], &[])).unwrap(),
            IQuiver::validate(&RawQuiver::new(&["1", "2", "3", "4"], &[("2", "1"), ("2", "3"), ("4", "2")], &[])).unwrap(),
            IQuiver::validate(&RawQuiver::new(&["1", "2", "3", "4"], &[("1", "2"), ("3", "2"), ("3", "4")], &[])).unwrap(),
        ];
        for q in &quivers {
            for p in [2, 3] {
                for beta in roots::positive_roots(q) {
                    let m = build_indecomposable(q, &beta, p).unwrap();
                    m.check_shape(q).unwrap();
                    assert_eq!(m.dimvec(), beta);
                    assert_eq!(hom_dim(q, &m, &m).unwrap(), 1, "{beta:?} at p={p}");
                }
            }
        }
    }

    #[test]
    fn hom_minus_ext_is_euler() {
        // on indecomposables hom - ext = <a,b>, and ext(M,N) = hom(N, tau M) >= 0,
        // so at least hom >= <a,b> must hold
        let q = IQuiver::validate(&RawQuiver::new(&["1", "2", "3"], &[("1", "2"), ("3", "2")], &[])).unwrap();
        let rs = roots::positive_roots(&q);
        for a in &rs {
            for b in &rs {
                let ma = build_indecomposable(&q, a, 3).unwrap();
                let mb = build_indecomposable(&q, b, 3).unwrap();
                assert!(hom_dim(&q, &ma, &mb).unwrap() as i64 >= q.euler(a, b));
            }
        }
    }

    #[test]
    fn direct_sum_shapes() {
        let q = a2();
        let p1 = build_indecomposable(&q, &[1, 1], 2).unwrap();
        let d = FqRep::direct_sum(&q, 2, &[&p1, &p1]);
        assert_eq!(d.maps[0], Mat::identity(2));
        let z = FqRep::zero(&q, 2);
        assert_eq!(hom_dim(&q, &z, &d).unwrap(), 0);
        let bad = FqRep { p: 2, dims: vec![1, 1], maps: vec![Mat::zeros(2, 1)] };
        assert!(matches!(hom_dim(&q, &bad, &d), Err(Error::ShapeMismatch(_))));
    }
}
