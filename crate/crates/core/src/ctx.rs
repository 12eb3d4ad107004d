//! Per-quiver data shared by every computation: roots, Hom dimensions between
//! indecomposables, the admissible order and cached indecomposables per prime.

use crate::error::{Error, Result};
use crate::modfq::{self, FqRep, ModClass};
use crate::quiver::{roots, DimVec, IQuiver};
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

/// Prime used to tabulate Hom dimensions, which are field independent.
const HOM_PRIME: u64 = 3;

pub struct Ctx {
    pub q: IQuiver,
    pub roots: Vec<DimVec>,
    root_index: HashMap<DimVec, usize>,
    /// `hom[r][t] = dim Hom(M(beta_r), M(beta_t))`.
    pub hom: Vec<Vec<u32>>,
    /// Root indices in admissible order.
    pub adm: Vec<usize>,
    pub adm_pos: Vec<usize>,
    /// `proj[r] = Some(i)` when `M(beta_r)` is the projective cover of `S_i`.
    pub proj: Vec<Option<usize>>,
    /// Root index of `tau(beta_r)`.
    pub tau_root: Vec<usize>,
    indec: Mutex<HashMap<u64, Arc<Vec<FqRep>>>>,
}

impl std::fmt::Debug for Ctx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Ctx").field("q", &self.q).field("adm", &self.adm).finish()
    }
}

impl Ctx {
    pub fn new(q: IQuiver) -> Result<Arc<Ctx>> {
        let rts = roots::positive_roots(&q);
        let nr = rts.len();
        let root_index = rts.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        let reps = rts.iter().map(|b| modfq::build_indecomposable(&q, b, HOM_PRIME)).collect::<Result<Vec<_>>>()?;
        let mut hom = vec![vec![0u32; nr]; nr];
        for r in 0..nr {
            for t in 0..nr {
                hom[r][t] = modfq::hom_dim_unchecked(&q, &reps[r], &reps[t]) as u32;
            }
        }
        let ext = |r: usize, t: usize| hom[r][t] as i64 - q.euler(&rts[r], &rts[t]);

        // Kahn's algorithm: r before t when Hom(M_r, M_t) != 0 or Ext(M_t, M_r) != 0
        let mut succ = vec![Vec::new(); nr];
        let mut indeg = vec![0usize; nr];
        for r in 0..nr {
            for t in 0..nr {
                if r != t && (hom[r][t] > 0 || ext(t, r) > 0) {
                    succ[r].push(t);
                    indeg[t] += 1;
                }
            }
        }
        let mut adm = Vec::new();
        let mut ready: std::collections::BTreeSet<usize> = (0..nr).filter(|&r| indeg[r] == 0).collect();
        while let Some(&r) = ready.iter().next() {
            ready.remove(&r);
            adm.push(r);
            for &t in &succ[r] {
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    ready.insert(t);
                }
            }
        }
        if adm.len() != nr {
            return Err(Error::InconsistentFingerprint("Hom/Ext relation among indecomposables has a cycle".into()));
        }
        let mut adm_pos = vec![0; nr];
        for (k, &r) in adm.iter().enumerate() {
            adm_pos[r] = k;
        }
        for r in 0..nr {
            for t in 0..nr {
                let (pr, pt) = (adm_pos[r], adm_pos[t]);
                if (pr > pt && hom[r][t] > 0) || (pr <= pt && ext(r, t) > 0) {
                    return Err(Error::InconsistentFingerprint("admissible order check failed".into()));
                }
            }
        }

        let mut proj = vec![None; nr];
        for i in 0..q.n() {
            let d = path_counts(&q, i);
            if let Some(&r) = rts.iter().position(|x| *x == d).as_ref() {
                proj[r] = Some(i);
            }
        }
        let tau_root = rts.iter().map(|b| rts.iter().position(|x| *x == q.tau_vec(b)).expect("tau permutes roots")).collect();
        let mut cache = HashMap::new();
        cache.insert(HOM_PRIME, Arc::new(reps));
        Ok(Arc::new(Ctx { q, roots: rts, root_index, hom, adm, adm_pos, proj, tau_root, indec: Mutex::new(cache) }))
    }

    pub fn nroots(&self) -> usize {
        self.roots.len()
    }

    pub fn n(&self) -> usize {
        self.q.n()
    }

    pub fn root_index(&self, d: &[i64]) -> Option<usize> {
        self.root_index.get(d).copied()
    }

    pub fn simple_index(&self, i: usize) -> usize {
        self.root_index(&self.q.unit(i)).expect("simple roots are roots")
    }

    pub fn ext(&self, r: usize, t: usize) -> i64 {
        self.hom[r][t] as i64 - self.q.euler(&self.roots[r], &self.roots[t])
    }

    pub fn indecomposables(&self, p: u64) -> Result<Arc<Vec<FqRep>>> {
        if let Some(v) = self.indec.lock().expect("cache lock").get(&p) {
            return Ok(v.clone());
        }
        let reps = self.roots.iter().map(|b| modfq::build_indecomposable(&self.q, b, p)).collect::<Result<Vec<_>>>()?;
        let arc = Arc::new(reps);
        self.indec.lock().expect("cache lock").insert(p, arc.clone());
        Ok(arc)
    }

    /// The class of the module twisted by the involution.
    pub fn twist(&self, c: &ModClass) -> ModClass {
        let mut out = self.zero_class();
        for (r, m) in c.support() {
            out.0[self.tau_root[r]] = m;
        }
        out
    }

    pub fn class_dim(&self, c: &ModClass) -> DimVec {
        c.dim(&self.roots)
    }

    pub fn zero_class(&self) -> ModClass {
        ModClass::zero(self.nroots())
    }

    /// `hom(M(beta_r), M(lambda))` for every root.
    pub fn fingerprint(&self, c: &ModClass) -> Vec<u32> {
        (0..self.nroots()).map(|r| c.support().map(|(t, m)| self.hom[r][t] * m).sum()).collect()
    }

    pub fn end_dim(&self, c: &ModClass) -> u32 {
        let mut e = 0;
        for (r, a) in c.support() {
            for (t, b) in c.support() {
                e += a * b * self.hom[r][t];
            }
        }
        e
    }

    pub fn hom_classes(&self, a: &ModClass, b: &ModClass) -> u32 {
        let mut e = 0;
        for (r, x) in a.support() {
            for (t, y) in b.support() {
                e += x * y * self.hom[r][t];
            }
        }
        e
    }

    /// `M_p(lambda)`, blocks in admissible order.
    pub fn assemble(&self, c: &ModClass, p: u64) -> Result<FqRep> {
        let reps = self.indecomposables(p)?;
        let mut parts = Vec::new();
        for &r in &self.adm {
            for _ in 0..c.get(r) {
                parts.push(&reps[r]);
            }
        }
        Ok(FqRep::direct_sum(&self.q, p, &parts))
    }
}

fn path_counts(q: &IQuiver, i: usize) -> DimVec {
    let mut d = vec![0i64; q.n()];
    let mut stack = vec![i];
    while let Some(v) = stack.pop() {
        d[v] += 1;
        for &(s, t) in q.arrows() {
            if s == v {
                stack.push(t);
            }
        }
    }
    d
}
