//! Finite linear combinations with `LaurentHalf` coefficients.

use crate::laurent::LaurentHalf;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lin<K: Ord + Clone>(BTreeMap<K, LaurentHalf>);

impl<K: Ord + Clone> Default for Lin<K> {
    fn default() -> Self {
        Lin(BTreeMap::new())
    }
}

impl<K: Ord + Clone> Lin<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(k: K) -> Self {
        Self::term(k, LaurentHalf::one())
    }

    pub fn term(k: K, c: LaurentHalf) -> Self {
        let mut out = Self::default();
        out.add_term(k, &c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, k: &K) -> LaurentHalf {
        self.0.get(k).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &LaurentHalf)> {
        self.0.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.0.keys()
    }

    pub fn add_term(&mut self, k: K, c: &LaurentHalf) {
        if c.is_zero() {
            return;
        }
        match self.0.get_mut(&k) {
            Some(e) => {
                *e += c;
                if e.is_zero() {
                    self.0.remove(&k);
                }
            }
            None => {
                self.0.insert(k, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, o: &Lin<K>, c: &LaurentHalf) {
        if c.is_zero() {
            return;
        }
        for (k, x) in &o.0 {
            self.add_term(k.clone(), &(x * c));
        }
    }

    pub fn add(&self, o: &Lin<K>) -> Lin<K> {
        let mut out = self.clone();
        out.add_scaled(o, &LaurentHalf::one());
        out
    }

    pub fn sub(&self, o: &Lin<K>) -> Lin<K> {
        let mut out = self.clone();
        out.add_scaled(o, &LaurentHalf::from_int(-1));
        out
    }

    pub fn scale(&self, c: &LaurentHalf) -> Lin<K> {
        let mut out = Lin::default();
        out.add_scaled(self, c);
        out
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&LaurentHalf) -> LaurentHalf) -> Lin<K> {
        let mut out = Lin::default();
        for (k, c) in &self.0 {
            out.add_term(k.clone(), &f(c));
        }
        out
    }

    /// Divides every coefficient exactly, or returns `None`.
    pub fn div_exact(&self, d: &LaurentHalf) -> Option<Lin<K>> {
        let mut out = Lin::default();
        for (k, c) in &self.0 {
            out.0.insert(k.clone(), c.div_exact(d)?);
        }
        Some(out)
    }

    pub fn into_map(self) -> BTreeMap<K, LaurentHalf> {
        self.0
    }
}

impl<K: Ord + Clone> FromIterator<(K, LaurentHalf)> for Lin<K> {
    fn from_iter<I: IntoIterator<Item = (K, LaurentHalf)>>(it: I) -> Self {
        let mut out = Lin::default();
        for (k, c) in it {
            out.add_term(k, &c);
        }
        out
    }
}
