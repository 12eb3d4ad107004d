//! Positive roots by iterated simple reflection.

use super::{DimVec, IQuiver};
use std::cmp::Ordering;
use std::collections::HashSet;

/// Canonical root order: by height, then lexicographically descending, so the
/// simple root of vertex `i` has index `i`.
pub fn root_cmp(a: &[i64], b: &[i64]) -> Ordering {
    let ha: i64 = a.iter().sum();
    let hb: i64 = b.iter().sum();
    ha.cmp(&hb).then_with(|| b.cmp(a))
}

/// All positive roots in canonical order. The order depends only on the
/// underlying graph, so it is shared by every orientation.
pub fn positive_roots(q: &IQuiver) -> Vec<DimVec> {
    let n = q.n();
    let mut seen: HashSet<DimVec> = HashSet::new();
    let mut frontier: Vec<DimVec> = (0..n).map(|i| q.unit(i)).collect();
    for r in &frontier {
        seen.insert(r.clone());
    }
    while let Some(r) = frontier.pop() {
        for i in 0..n {
            let c = q.sym(&r, &q.unit(i));
            if c < 0 {
                let s = q.simple_reflect(i, &r);
                if seen.insert(s.clone()) {
                    frontier.push(s);
                }
            }
        }
    }
    let mut out: Vec<DimVec> = seen.into_iter().collect();
    out.sort_by(|a, b| root_cmp(a, b));
    out
}

pub fn is_positive(d: &[i64]) -> bool {
    d.iter().all(|&x| x >= 0) && d.iter().any(|&x| x > 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::RawQuiver;

    fn line(n: usize) -> IQuiver {
        let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let arrows: Vec<(&str, &str)> = (0..n - 1).map(|i| (refs[i], refs[i + 1])).collect();
        IQuiver::validate(&RawQuiver::new(&refs, &arrows, &[])).unwrap()
    }

    #[test]
    fn root_counts() {
        for n in 1..6 {
            assert_eq!(positive_roots(&line(n)).len(), n * (n + 1) / 2);
        }
        let d4 = IQuiver::validate(&RawQuiver::new(&["1", "2", "3", "4"], &[("1", "2"), ("3", "2"), ("4", "2")], &[])).unwrap();
        let r = positive_roots(&d4);
        assert_eq!(r.len(), 12);
        assert!(r.contains(&vec![1, 2, 1, 1]));
        let e6 = IQuiver::validate(&RawQuiver::new(
            &["1", "2", "3", "4", "5", "6"],
            &[("1", "2"), ("2", "3"), ("3", "4"), ("4", "5"), ("3", "6")],
            &[],
        ))
        .unwrap();
        assert_eq!(positive_roots(&e6).len(), 36);
    }

    #[test]
    fn simple_roots_lead() {
        let q = line(3);
        let r = positive_roots(&q);
        for (i, root) in r.iter().take(3).enumerate() {
            assert_eq!(root, &q.unit(i));
        }
        for root in &r {
            assert_eq!(q.sym(root, root), 2);
        }
    }
}
