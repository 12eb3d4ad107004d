//! Dense matrices over a prime field.

#[inline]
pub fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub fn addm(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn subm(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn powm(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, b, p);
        }
        b = mulm(b, b, p);
        e >>= 1;
    }
    r
}

pub fn invm(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    powm(a, p - 2, p)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u64>], cols: usize) -> Mat {
        let mut m = Mat::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            m.data[i * cols..(i + 1) * cols].copy_from_slice(&r[..cols]);
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u64) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, o: &Mat, p: u64) -> Mat {
        assert_eq!(self.cols, o.rows);
        let mut out = Mat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    let idx = i * o.cols + j;
                    out.data[idx] = addm(out.data[idx], mulm(a, o.get(k, j), p), p);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64], p: u64) -> Vec<u64> {
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(0, |acc, (&a, &b)| addm(acc, mulm(a, b, p), p)))
            .collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&mut self, p: u64) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| self.get(i, c) != 0) else { continue };
            if piv != r {
                for j in 0..self.cols {
                    self.data.swap(piv * self.cols + j, r * self.cols + j);
                }
            }
            let inv = invm(self.get(r, c), p);
            for j in 0..self.cols {
                let x = self.get(r, j);
                self.set(r, j, mulm(x, inv, p));
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c);
                if f == 0 {
                    continue;
                }
                for j in 0..self.cols {
                    let x = subm(self.get(i, j), mulm(f, self.get(r, j), p), p);
                    self.set(i, j, x);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, p: u64) -> usize {
        self.clone().rref(p).len()
    }

    /// Basis of `{x : A x = 0}`, one vector per row of the result.
    pub fn nullspace(&self, p: u64) -> Mat {
        let mut a = self.clone();
        let pivots = a.rref(p);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Mat::zeros(free.len(), self.cols);
        for (k, &f) in free.iter().enumerate() {
            out.set(k, f, 1);
            for (r, &pc) in pivots.iter().enumerate() {
                out.set(k, pc, subm(0, a.get(r, f), p));
            }
        }
        out
    }

    /// Basis of `{y : y A = 0}`, one vector per row.
    pub fn left_nullspace(&self, p: u64) -> Mat {
        self.transpose().nullspace(p)
    }

    /// Stacks `self` above `o`.
    pub fn vstack(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&o.data);
        Mat { rows: self.rows + o.rows, cols: self.cols, data }
    }

    /// Columns `c0..c1`.
    pub fn col_block(&self, c0: usize, c1: usize) -> Mat {
        let mut out = Mat::zeros(self.rows, c1 - c0);
        for i in 0..self.rows {
            for j in c0..c1 {
                out.set(i, j - c0, self.get(i, j));
            }
        }
        out
    }

    /// Rows `r0..r1`.
    pub fn row_block(&self, r0: usize, r1: usize) -> Mat {
        Mat { rows: r1 - r0, cols: self.cols, data: self.data[r0 * self.cols..r1 * self.cols].to_vec() }
    }
}

/// Row space intersection of two row-basis matrices of the same width.
pub fn intersect_rowspaces(a: &Mat, b: &Mat, p: u64) -> Mat {
    if a.rows == 0 || b.rows == 0 {
        return Mat::zeros(0, a.cols);
    }
    // x a = y b  <=>  [x, -y] [a; b] = 0
    let stacked = a.vstack(b);
    let null = stacked.left_nullspace(p);
    let xs = null.col_block(0, a.rows);
    let mut out = xs.mul(a, p);
    let piv = out.rref(p);
    out.row_block(0, piv.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn rank_nullity(rows in 1usize..5, cols in 1usize..5, seed in proptest::collection::vec(0u64..7, 25)) {
            let p = 7;
            let m = Mat { rows, cols, data: seed[..rows * cols].to_vec() };
            let ns = m.nullspace(p);
            prop_assert_eq!(m.rank(p) + ns.rows, cols);
            for k in 0..ns.rows {
                prop_assert!(m.mul_vec(ns.row(k), p).iter().all(|&x| x == 0));
            }
            let ln = m.left_nullspace(p);
            prop_assert_eq!(ln.mul(&m, p).is_zero(), true);
        }
    }

    #[test]
    fn intersection_of_planes() {
        let p = 5;
        let a = Mat::from_rows(&[vec![1, 0, 0], vec![0, 1, 0]], 3);
        let b = Mat::from_rows(&[vec![0, 1, 0], vec![0, 0, 1]], 3);
        let c = intersect_rowspaces(&a, &b, p);
        assert_eq!(c.rows, 1);
        assert_eq!(c.row(0), &[0, 1, 0]);
    }
}
