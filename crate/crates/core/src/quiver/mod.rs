//! Dynkin quivers with an involution, Euler forms and reflection combinatorics.

pub mod roots;

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

/// Integer vector indexed by vertex position.
pub type DimVec = Vec<i64>;

/// Unvalidated quiver description, as read from a quiver file.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RawQuiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<(String, String)>,
    #[serde(default)]
    pub involution: Vec<(String, String)>,
}

impl RawQuiver {
    pub fn new(vertices: &[&str], arrows: &[(&str, &str)], involution: &[(&str, &str)]) -> RawQuiver {
        RawQuiver {
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            arrows: arrows.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
            involution: involution.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<RawQuiver> {
        let v: serde_json::Value = serde_json::from_str(text)?;
        let name = |x: &serde_json::Value| -> Result<String> {
            match x {
                serde_json::Value::String(s) => Ok(s.clone()),
                serde_json::Value::Number(n) => Ok(n.to_string()),
                _ => Err(Error::Parse(format!("bad vertex name {x}"))),
            }
        };
        let pairs = |key: &str| -> Result<Vec<(String, String)>> {
            let Some(arr) = v.get(key) else { return Ok(Vec::new()) };
            let arr = arr.as_array().ok_or_else(|| Error::Parse(format!("{key} must be a list")))?;
            arr.iter()
                .map(|p| {
                    let p = p.as_array().filter(|p| p.len() == 2).ok_or_else(|| Error::Parse(format!("{key} entries must be pairs")))?;
                    Ok((name(&p[0])?, name(&p[1])?))
                })
                .collect()
        };
        let vertices = v
            .get("vertices")
            .and_then(|x| x.as_array())
            .ok_or_else(|| Error::Parse("missing vertices".into()))?
            .iter()
            .map(name)
            .collect::<Result<Vec<_>>>()?;
        Ok(RawQuiver { vertices, arrows: pairs("arrows")?, involution: pairs("involution")? })
    }
}

fn name_cmp(a: &str, b: &str) -> Ordering {
    match (a.parse::<i64>(), b.parse::<i64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y),
        (Ok(_), Err(_)) => Ordering::Less,
        (Err(_), Ok(_)) => Ordering::Greater,
        _ => a.cmp(b),
    }
}

/// A validated Dynkin quiver with an admissible involution. Vertices are
/// stored in canonical order and referred to by position.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IQuiver {
    names: Vec<String>,
    arrows: Vec<(usize, usize)>,
    tau: Vec<usize>,
}

impl IQuiver {
    pub fn validate(raw: &RawQuiver) -> Result<IQuiver> {
        let mut names = raw.vertices.clone();
        names.sort_by(|a, b| name_cmp(a, b));
        for w in names.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidInput(format!("duplicate vertex {}", w[0])));
            }
        }
        let pos: HashMap<&str, usize> = names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let look = |s: &str| pos.get(s).copied().ok_or_else(|| Error::InvalidInput(format!("unknown vertex {s}")));
        let n = names.len();

        let mut tau: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        for (a, b) in &raw.involution {
            let (i, j) = (look(a)?, look(b)?);
            if seen[i] || seen[j] {
                return Err(Error::NotInvolution(format!("vertex appears in two cycles near ({a} {b})")));
            }
            seen[i] = true;
            seen[j] = true;
            tau[i] = j;
            tau[j] = i;
        }

        let mut arrows = Vec::new();
        for (a, b) in &raw.arrows {
            arrows.push((look(a)?, look(b)?));
        }
        arrows.sort();

        if let Some(&(i, _)) = arrows.iter().find(|(i, j)| i == j) {
            return Err(Error::Cyclic(names[i].clone()));
        }
        if let Some(v) = find_oriented_cycle(n, &arrows) {
            return Err(Error::Cyclic(names[v].clone()));
        }
        check_dynkin(n, &arrows).map_err(Error::NotDynkin)?;
        for i in 0..n {
            let j = tau[i];
            if j != i && arrows.iter().any(|&(s, t)| (s, t) == (i, j) || (s, t) == (j, i)) {
                let (a, b) = if i < j { (i, j) } else { (j, i) };
                return Err(Error::AdjacentOrbit(names[a].clone(), names[b].clone()));
            }
        }
        let set: BTreeSet<(usize, usize)> = arrows.iter().copied().collect();
        for &(s, t) in &arrows {
            if !set.contains(&(tau[s], tau[t])) {
                return Err(Error::NotAutomorphism(format!("{}->{}", names[s], names[t])));
            }
        }
        Ok(IQuiver { names, arrows, tau })
    }

    /// Builds a quiver from positional data, validating it.
    pub fn from_indices(n: usize, arrows: &[(usize, usize)], tau: &[usize]) -> Result<IQuiver> {
        let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let mut inv = Vec::new();
        for i in 0..n {
            if tau.get(i).copied().unwrap_or(i) > i {
                inv.push((names[i].clone(), names[tau[i]].clone()));
            }
        }
        for i in 0..n {
            if tau.get(i).copied().unwrap_or(i) >= n || tau[tau[i]] != i {
                return Err(Error::NotInvolution(format!("vertex {}", i + 1)));
            }
        }
        IQuiver::validate(&RawQuiver {
            vertices: names.clone(),
            arrows: arrows.iter().map(|&(a, b)| (names[a].clone(), names[b].clone())).collect(),
            involution: inv,
        })
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|s| s == name)
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn tau(&self, i: usize) -> usize {
        self.tau[i]
    }

    pub fn tau_perm(&self) -> &[usize] {
        &self.tau
    }

    pub fn is_split(&self) -> bool {
        (0..self.n()).all(|i| self.tau[i] == i)
    }

    pub fn to_raw(&self) -> RawQuiver {
        RawQuiver {
            vertices: self.names.clone(),
            arrows: self.arrows.iter().map(|&(a, b)| (self.names[a].clone(), self.names[b].clone())).collect(),
            involution: (0..self.n())
                .filter(|&i| self.tau[i] > i)
                .map(|i| (self.names[i].clone(), self.names[self.tau[i]].clone()))
                .collect(),
        }
    }

    /// Canonical JSON text, stable across input permutations.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(&self.to_raw()).expect("quiver serializes")
    }

    /// Hex SHA-256 of the canonical JSON.
    pub fn hash(&self) -> String {
        let d = Sha256::digest(self.canonical_json().as_bytes());
        d.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn unit(&self, i: usize) -> DimVec {
        let mut v = vec![0; self.n()];
        v[i] = 1;
        v
    }

    /// `<a,b> = sum a_i b_i - sum over arrows i->j of a_i b_j`.
    pub fn euler(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s: i64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
        for &(i, j) in &self.arrows {
            s -= a[i] * b[j];
        }
        s
    }

    pub fn sym(&self, a: &[i64], b: &[i64]) -> i64 {
        self.euler(a, b) + self.euler(b, a)
    }

    pub fn euler_matrix(&self) -> Vec<Vec<i64>> {
        (0..self.n()).map(|i| (0..self.n()).map(|j| self.euler(&self.unit(i), &self.unit(j))).collect()).collect()
    }

    /// Cartan matrix `c_ij = (alpha_i, alpha_j)`.
    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        self.sym(&self.unit(i), &self.unit(j))
    }

    /// `tau` acting on the root lattice, `tau(alpha_i) = alpha_{tau i}`.
    pub fn tau_vec(&self, d: &[i64]) -> DimVec {
        let mut out = vec![0; self.n()];
        for i in 0..self.n() {
            out[self.tau[i]] = d[i];
        }
        out
    }

    /// `N(a) = (a,a)/2 - sum a_i`.
    pub fn norm_n(&self, a: &[i64]) -> i64 {
        self.sym(a, a) / 2 - a.iter().sum::<i64>()
    }

    pub fn is_sink(&self, l: usize) -> bool {
        !self.arrows.iter().any(|&(s, _)| s == l)
    }

    pub fn is_source(&self, l: usize) -> bool {
        !self.arrows.iter().any(|&(_, t)| t == l)
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .arrows
            .iter()
            .filter_map(|&(s, t)| if s == i { Some(t) } else if t == i { Some(s) } else { None })
            .collect();
        v.sort();
        v.dedup();
        v
    }

    /// Simple reflection `s_i(d) = d - (d, alpha_i) alpha_i`.
    pub fn simple_reflect(&self, i: usize, d: &[i64]) -> DimVec {
        let c = self.sym(d, &self.unit(i));
        let mut out = d.to_vec();
        out[i] -= c;
        out
    }

    /// The lattice involution `s_l` (or `s_l s_{tau l}` on a mixed orbit).
    pub fn orbit_reflect(&self, l: usize, d: &[i64]) -> DimVec {
        let once = self.simple_reflect(l, d);
        if self.tau[l] == l {
            once
        } else {
            self.simple_reflect(self.tau[l], &once)
        }
    }

    /// Reverses all arrows at the orbit of the sink `l`.
    pub fn reflect(&self, l: usize) -> Result<IQuiver> {
        if l >= self.n() || !self.is_sink(l) {
            return Err(Error::NotASink(self.names.get(l).cloned().unwrap_or_else(|| l.to_string())));
        }
        let orbit = [l, self.tau[l]];
        let mut arrows: Vec<(usize, usize)> =
            self.arrows.iter().map(|&(s, t)| if orbit.contains(&t) { (t, s) } else { (s, t) }).collect();
        arrows.sort();
        Ok(IQuiver { names: self.names.clone(), arrows, tau: self.tau.clone() })
    }

    /// Same vertices and involution with the given arrows reversed.
    pub fn reverse_arrows(&self, which: &[(usize, usize)]) -> Result<IQuiver> {
        let mut arrows = Vec::new();
        for &a in &self.arrows {
            arrows.push(if which.contains(&a) { (a.1, a.0) } else { a });
        }
        for a in which {
            if !self.arrows.contains(a) {
                return Err(Error::InvalidInput(format!("{}->{} is not an arrow", self.names[a.0], self.names[a.1])));
            }
        }
        let raw = RawQuiver {
            vertices: self.names.clone(),
            arrows: arrows.iter().map(|&(a, b)| (self.names[a].clone(), self.names[b].clone())).collect(),
            involution: self.to_raw().involution,
        };
        IQuiver::validate(&raw)
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![s];
            let mut members = Vec::new();
            comp[s] = id;
            while let Some(v) = stack.pop() {
                members.push(v);
                for w in self.neighbors(v) {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        stack.push(w);
                    }
                }
            }
            members.sort();
            out.push(members);
        }
        out
    }

    /// For a diagonal double (every vertex sent to another component), the
    /// map from each vertex of the first half to its partner.
    pub fn double_halves(&self) -> Option<Vec<(usize, usize)>> {
        let comps = self.components();
        let mut comp_of = vec![0; self.n()];
        for (c, m) in comps.iter().enumerate() {
            for &v in m {
                comp_of[v] = c;
            }
        }
        let mut first = vec![false; comps.len()];
        for (c, m) in comps.iter().enumerate() {
            let partner = comp_of[self.tau[m[0]]];
            if partner == c {
                return None;
            }
            if c < partner {
                first[c] = true;
            }
        }
        let mut pairs = Vec::new();
        for i in 0..self.n() {
            if first[comp_of[i]] {
                pairs.push((i, self.tau[i]));
            }
        }
        Some(pairs)
    }
}

fn find_oriented_cycle(n: usize, arrows: &[(usize, usize)]) -> Option<usize> {
    let mut indeg = vec![0usize; n];
    for &(_, t) in arrows {
        indeg[t] += 1;
    }
    let mut stack: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    let mut done = 0;
    while let Some(v) = stack.pop() {
        done += 1;
        for &(s, t) in arrows {
            if s == v {
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    stack.push(t);
                }
            }
        }
    }
    if done == n {
        None
    } else {
        (0..n).find(|&i| indeg[i] > 0)
    }
}

/// Positive definiteness of `2I - A` by leading principal minors.
fn check_dynkin(n: usize, arrows: &[(usize, usize)]) -> std::result::Result<(), String> {
    let mut m = vec![vec![num_rational::BigRational::from_integer(0.into()); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = num_rational::BigRational::from_integer(2.into());
    }
    for &(s, t) in arrows {
        m[s][t] -= num_rational::BigRational::from_integer(1.into());
        m[t][s] -= num_rational::BigRational::from_integer(1.into());
    }
    // Gaussian elimination without pivoting: all pivots positive iff positive definite
    use num_traits::Zero;
    for k in 0..n {
        if m[k][k] <= num_rational::BigRational::zero() {
            return Err("symmetrized Cartan matrix is not positive definite".into());
        }
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = &m[i][k] / &m[k][k];
            for j in k..n {
                let d = &f * &m[k][j];
                m[i][j] -= d;
            }
        }
    }
    Ok(())
}

/// An admissible sequence of sink orbits: each vertex is a sink of the quiver
/// reflected at all earlier ones, and the induced roots exhaust the positive roots.
pub fn i_admissible_sequence(q: &IQuiver) -> Vec<usize> {
    let total = roots::positive_roots(q).len();
    let mut found = Vec::new();
    dfs(q, &mut Vec::new(), &mut Vec::new(), total, &mut found);
    found
}

fn apply_word(q: &IQuiver, word: &[usize], d: &[i64]) -> DimVec {
    let mut v = d.to_vec();
    for &l in word.iter().rev() {
        v = q.orbit_reflect(l, &v);
    }
    v
}

fn dfs(q: &IQuiver, seen: &mut Vec<DimVec>, path: &mut Vec<usize>, total: usize, found: &mut Vec<usize>) -> bool {
    if seen.len() == total {
        *found = path.clone();
        return true;
    }
    let cur = path.iter().try_fold(q.clone(), |acc, &l| acc.reflect(l)).expect("sink path");
    for l in 0..q.n() {
        if q.tau(l) < l || !cur.is_sink(l) {
            continue;
        }
        let mut new = vec![apply_word(q, path, &q.unit(l))];
        if q.tau(l) != l {
            new.push(apply_word(q, path, &q.unit(q.tau(l))));
        }
        if new.iter().any(|r| r.iter().any(|&x| x < 0) || seen.contains(r)) {
            continue;
        }
        let k = seen.len();
        seen.extend(new);
        path.push(l);
        if dfs(q, seen, path, total, found) {
            return true;
        }
        path.pop();
        seen.truncate(k);
    }
    false
}

/// Roots `beta_1, tau beta_1, ...` induced by an admissible sequence.
pub fn sequence_roots(q: &IQuiver, seq: &[usize]) -> Vec<DimVec> {
    let mut out = Vec::new();
    for k in 0..seq.len() {
        let l = seq[k];
        out.push(apply_word(q, &seq[..k], &q.unit(l)));
        if q.tau(l) != l {
            out.push(apply_word(q, &seq[..k], &q.unit(q.tau(l))));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn a3_outer() -> IQuiver {
        IQuiver::validate(&RawQuiver::new(&["1", "2", "3"], &[("1", "2"), ("3", "2")], &[("1", "3")])).unwrap()
    }

    #[test]
    fn validation_errors() {
        let a2_swap = RawQuiver::new(&["1", "2"], &[("1", "2")], &[("1", "2")]);
        assert!(matches!(IQuiver::validate(&a2_swap), Err(Error::AdjacentOrbit(..))));
        let cyc = RawQuiver::new(&["1", "2", "3"], &[("1", "2"), ("2", "3"), ("3", "1")], &[]);
        assert!(matches!(IQuiver::validate(&cyc), Err(Error::Cyclic(_))));
        let affine = RawQuiver::new(&["1", "2", "3"], &[("1", "2"), ("2", "3"), ("1", "3")], &[]);
        assert!(matches!(IQuiver::validate(&affine), Err(Error::NotDynkin(_))));
        let kron = RawQuiver::new(&["1", "2"], &[("1", "2"), ("1", "2")], &[]);
        assert!(matches!(IQuiver::validate(&kron), Err(Error::NotDynkin(_))));
        let bad = RawQuiver::new(&["1", "2", "3"], &[("1", "2"), ("3", "2")], &[("1", "3"), ("3", "2")]);
        assert!(matches!(IQuiver::validate(&bad), Err(Error::NotInvolution(_))));
        let d5 = RawQuiver::new(&["1", "2", "3", "4", "5"], &[("1", "2"), ("2", "3"), ("3", "4"), ("3", "5")], &[]);
        assert!(IQuiver::validate(&d5).is_ok());
        let e6 = RawQuiver::new(&["1", "2", "3", "4", "5", "6"], &[("1", "2"), ("2", "3"), ("3", "4"), ("4", "5"), ("3", "6")], &[]);
        assert!(IQuiver::validate(&e6).is_ok());
        let e6t = RawQuiver::new(&["1", "2", "3", "4", "5", "6", "7"], &[("1", "2"), ("2", "3"), ("3", "4"), ("4", "5"), ("5", "6"), ("4", "7")], &[]);
        // E7 is fine, the affine E6 star is not
        assert!(IQuiver::validate(&e6t).is_ok());
        let e6aff = RawQuiver::new(
            &["1", "2", "3", "4", "5", "6", "7"],
            &[("1", "2"), ("2", "3"), ("4", "5"), ("5", "3"), ("6", "7"), ("7", "3")],
            &[],
        );
        assert!(matches!(IQuiver::validate(&e6aff), Err(Error::NotDynkin(_))));
    }

    #[test]
    fn euler_form_a2() {
        let q = IQuiver::validate(&RawQuiver::new(&["1", "2"], &[("1", "2")], &[])).unwrap();
        assert_eq!(q.euler_matrix(), vec![vec![1, -1], vec![0, 1]]);
        assert_eq!(q.sym(&[1, 0], &[0, 1]), -1);
        assert_eq!(q.norm_n(&[1, 1]), -1);
        assert_eq!(q.norm_n(&[1, 0]), 0);
        assert_eq!(q.norm_n(&[0, 0]), 0);
    }

    #[test]
    fn canonical_order_is_numeric() {
        let a = IQuiver::validate(&RawQuiver::new(&["10", "2", "1"], &[("1", "2"), ("10", "2")], &[])).unwrap();
        assert_eq!(a.names(), &["1", "2", "10"]);
        let b = IQuiver::validate(&RawQuiver::new(&["2", "1", "10"], &[("10", "2"), ("1", "2")], &[])).unwrap();
        assert_eq!(a.hash(), b.hash());
    }

    #[test]
    fn reflections() {
        let a2 = IQuiver::validate(&RawQuiver::new(&["1", "2"], &[("1", "2")], &[])).unwrap();
        let r = a2.reflect(1).unwrap();
        assert_eq!(r.arrows(), &[(1, 0)]);
        assert_eq!(a2.orbit_reflect(1, &[1, 0]), vec![1, 1]);
        assert!(matches!(a2.reflect(0), Err(Error::NotASink(_))));
        let a3 = a3_outer();
        let r = a3.reflect(1).unwrap();
        assert_eq!(r.arrows(), &[(1, 0), (1, 2)]);
        let back = r.reflect(0).unwrap();
        assert_eq!(back, a3);
        assert_eq!(r.orbit_reflect(0, &[1, 0, 0]), vec![-1, 0, 0]);
        assert_eq!(r.orbit_reflect(0, &[0, 1, 0]), vec![1, 1, 1]);
    }

    #[test]
    fn admissible_sequences() {
        let a3 = a3_outer();
        let s = i_admissible_sequence(&a3);
        assert_eq!(s, vec![1, 0, 1, 0]);
        let roots = sequence_roots(&a3, &s);
        assert_eq!(roots, vec![vec![0, 1, 0], vec![1, 1, 0], vec![0, 1, 1], vec![1, 1, 1], vec![0, 0, 1], vec![1, 0, 0]]);
        let a2 = IQuiver::validate(&RawQuiver::new(&["1", "2"], &[("1", "2")], &[])).unwrap();
        assert_eq!(i_admissible_sequence(&a2), vec![1, 0, 1]);
        let a1 = IQuiver::validate(&RawQuiver::new(&["1"], &[], &[])).unwrap();
        assert_eq!(i_admissible_sequence(&a1), vec![0]);
    }

    #[test]
    fn diagonal_double_detected() {
        let d = IQuiver::validate(&RawQuiver::new(&["1", "2", "3", "4"], &[("1", "2"), ("3", "4")], &[("1", "3"), ("2", "4")])).unwrap();
        assert_eq!(d.double_halves(), Some(vec![(0, 2), (1, 3)]));
        assert_eq!(a3_outer().double_halves(), None);
    }
}
