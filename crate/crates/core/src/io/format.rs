//! JSON files for elements and dual canonical basis tables. Terms are written
//! in canonical order so equal inputs give byte-identical files.

use crate::bar::piece::pair_lt;
use crate::bar::DcbPiece;
use crate::ctx::Ctx;
use crate::error::{Error, Result};
use crate::hall::plain::PlainHallElt;
use crate::ihall::{IHallElt, IKey};
use crate::laurent::LaurentHalf;
use crate::modfq::classes::degeneration_lt;
use crate::modfq::ModClass;
use crate::quiver::DimVec;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Debug, Serialize, Deserialize)]
struct TermJson {
    k: DimVec,
    lambda: BTreeMap<usize, u32>,
    coeff: serde_json::Value,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct ElementJson {
    quiver: String,
    terms: Vec<TermJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct TableJson {
    quiver: String,
    grade: DimVec,
    basis: Vec<(DimVec, BTreeMap<usize, u32>)>,
    /// `[i, j]` whenever `basis[i] < basis[j]`.
    order: Vec<(usize, usize)>,
    elements: Vec<Vec<TermJson>>,
}

fn lambda_map(l: &ModClass) -> BTreeMap<usize, u32> {
    l.support().collect()
}

fn lambda_from(ctx: &Ctx, m: &BTreeMap<usize, u32>) -> Result<ModClass> {
    let mut l = ModClass::zero(ctx.nroots());
    for (&r, &c) in m {
        if r >= ctx.nroots() {
            return Err(Error::Parse(format!("root index {r} out of range")));
        }
        l.0[r] = c;
    }
    Ok(l)
}

fn terms_json(ctx: &Ctx, x: &IHallElt) -> Vec<TermJson> {
    x.sorted_terms(ctx).into_iter().map(|((k, l), c)| TermJson { k, lambda: lambda_map(&l), coeff: c.to_json() }).collect()
}

fn terms_from(ctx: &Ctx, terms: &[TermJson]) -> Result<IHallElt> {
    let mut x = IHallElt::zero();
    for t in terms {
        if t.k.len() != ctx.n() {
            return Err(Error::Parse(format!("K-exponent {:?} has the wrong length", t.k)));
        }
        let c = LaurentHalf::from_json(&t.coeff).map_err(Error::Parse)?;
        x.add_term(t.k.clone(), lambda_from(ctx, &t.lambda)?, &c);
    }
    Ok(x)
}

fn check_quiver(ctx: &Ctx, hash: &str) -> Result<()> {
    if hash != ctx.q.hash() {
        return Err(Error::QuiverMismatch(format!("file was written for quiver {hash}, not {}", ctx.q.hash())));
    }
    Ok(())
}

pub fn element_to_json(ctx: &Ctx, x: &IHallElt) -> String {
    let e = ElementJson { quiver: ctx.q.hash(), terms: terms_json(ctx, x) };
    serde_json::to_string_pretty(&e).expect("element serializes") + "\n"
}

pub fn element_from_json(ctx: &Ctx, text: &str) -> Result<IHallElt> {
    let e: ElementJson = serde_json::from_str(text)?;
    check_quiver(ctx, &e.quiver)?;
    terms_from(ctx, &e.terms)
}

/// A graded piece of a dual canonical basis in file form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DcbTable {
    pub grade: DimVec,
    pub basis: Vec<IKey>,
    pub order: Vec<(usize, usize)>,
    pub elements: Vec<IHallElt>,
}

impl DcbTable {
    pub fn from_piece(ctx: &Ctx, p: &DcbPiece) -> DcbTable {
        let basis = p.piece.basis.clone();
        let order = relations(&basis, |a, b| pair_lt(ctx, a, b));
        DcbTable { grade: p.piece.grade.clone(), basis, order, elements: p.elements.clone() }
    }

    /// Plain basis elements, keyed by class, as a table with zero `K`-parts.
    pub fn from_plain(ctx: &Ctx, grade: &[i64], order_of_classes: &[ModClass], elts: &BTreeMap<ModClass, PlainHallElt>) -> DcbTable {
        let zero = vec![0; ctx.n()];
        let basis: Vec<IKey> = order_of_classes.iter().map(|l| (zero.clone(), l.clone())).collect();
        let order = relations(&basis, |a, b| degeneration_lt(ctx, &a.1, &b.1));
        let elements = order_of_classes
            .iter()
            .map(|l| {
                let mut x = IHallElt::zero();
                for (m, c) in elts[l].iter() {
                    x.add_term(zero.clone(), m.clone(), c);
                }
                x
            })
            .collect();
        DcbTable { grade: grade.to_vec(), basis, order, elements }
    }

    pub fn to_json(&self, ctx: &Ctx) -> String {
        let t = TableJson {
            quiver: ctx.q.hash(),
            grade: self.grade.clone(),
            basis: self.basis.iter().map(|(k, l)| (k.clone(), lambda_map(l))).collect(),
            order: self.order.clone(),
            elements: self.elements.iter().map(|x| terms_json(ctx, x)).collect(),
        };
        serde_json::to_string_pretty(&t).expect("table serializes") + "\n"
    }

    pub fn from_json(ctx: &Ctx, text: &str) -> Result<DcbTable> {
        let t: TableJson = serde_json::from_str(text)?;
        check_quiver(ctx, &t.quiver)?;
        if t.elements.len() != t.basis.len() {
            return Err(Error::Parse("basis and element counts differ".into()));
        }
        let basis = t.basis.iter().map(|(k, l)| Ok((k.clone(), lambda_from(ctx, l)?))).collect::<Result<Vec<_>>>()?;
        let elements = t.elements.iter().map(|ts| terms_from(ctx, ts)).collect::<Result<Vec<_>>>()?;
        Ok(DcbTable { grade: t.grade, basis, order: t.order, elements })
    }

    /// Human-readable rows.
    pub fn to_text(&self, ctx: &Ctx) -> String {
        let mut s = String::new();
        for (k, x) in self.basis.iter().zip(&self.elements) {
            s.push_str(&format!("L[K{:?} u{}] = {}\n", k.0, k.1, x.display(ctx)));
        }
        s
    }
}

fn relations<K>(basis: &[K], lt: impl Fn(&K, &K) -> bool) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            if i != j && lt(&basis[i], &basis[j]) {
                out.push((i, j));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bar::DcbSolver;
    use crate::ihall::IHallAlgebra;
    use crate::quiver::{IQuiver, RawQuiver};

    fn a2() -> std::sync::Arc<Ctx> {
        Ctx::new(IQuiver::validate(&RawQuiver::new(&["1", "2"], &[("1", "2")], &[])).unwrap()).unwrap()
    }

    #[test]
    fn element_round_trip() {
        let ctx = a2();
        let alg = IHallAlgebra::from_ctx(ctx.clone()).unwrap();
        let s1 = IHallElt::u(&ctx, &ModClass::single(3, ctx.simple_index(0), 1));
        let s2 = IHallElt::u(&ctx, &ModClass::single(3, ctx.simple_index(1), 1));
        let x = alg.iproduct(&alg.iproduct(&s1, &s2).unwrap(), &s1).unwrap();
        let text = element_to_json(&ctx, &x);
        let y = element_from_json(&ctx, &text).unwrap();
        assert_eq!(x, y);
        assert_eq!(element_to_json(&ctx, &y), text);
    }

    #[test]
    fn wrong_quiver_is_rejected() {
        let ctx = a2();
        let other = Ctx::new(IQuiver::validate(&RawQuiver::new(&["1", "2"], &[("2", "1")], &[])).unwrap()).unwrap();
        let text = element_to_json(&ctx, &IHallElt::one(&ctx));
        assert!(matches!(element_from_json(&other, &text), Err(Error::QuiverMismatch(_))));
    }

    #[test]
    fn table_round_trip() {
        let ctx = a2();
        let s = DcbSolver::new(IHallAlgebra::from_ctx(ctx.clone()).unwrap());
        let t = DcbTable::from_piece(&ctx, &s.solve(&[2, 1]).unwrap());
        let text = t.to_json(&ctx);
        assert_eq!(DcbTable::from_json(&ctx, &text).unwrap(), t);
    }
}
