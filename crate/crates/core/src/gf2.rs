//! Bit matrices and affine maps over GF(2), rows packed into `u64`.

use std::fmt;

use crate::error::{input, Result};
use crate::reference::MAX_BITS;

/// Square bit matrix; bit `j` of `rows[i]` is entry `(i, j)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    n: usize,
    rows: Vec<u64>,
}

fn width_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl BitMatrix {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_BITS);
        BitMatrix {
            n,
            rows: (0..n).map(|i| 1u64 << i).collect(),
        }
    }

    pub fn zeros(n: usize) -> Self {
        assert!(n <= MAX_BITS);
        BitMatrix { n, rows: vec![0; n] }
    }

    pub fn from_rows(n: usize, rows: Vec<u64>) -> Result<Self> {
        if n > MAX_BITS || rows.len() != n {
            return input(format!("{} rows for a {n}x{n} matrix", rows.len()));
        }
        if rows.iter().any(|r| r & !width_mask(n) != 0) {
            return input("row has bits beyond the matrix width");
        }
        Ok(BitMatrix { n, rows })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> u64 {
        self.rows[i]
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.rows[i] >> j) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        if v {
            self.rows[i] |= 1 << j;
        } else {
            self.rows[i] &= !(1 << j);
        }
    }

    /// `row[dst] ^= row[src]`.
    pub fn add_row(&mut self, src: usize, dst: usize) {
        self.rows[dst] ^= self.rows[src];
    }

    pub fn mul_vec(&self, v: u64) -> u64 {
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (i, r)| acc | (((r & v).count_ones() as u64 & 1) << i))
    }

    /// `self * other`.
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.n, other.n);
        let rows = self
            .rows
            .iter()
            .map(|&r| {
                (0..self.n)
                    .filter(|&k| (r >> k) & 1 == 1)
                    .fold(0, |acc, k| acc ^ other.rows[k])
            })
            .collect();
        BitMatrix { n: self.n, rows }
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for col in 0..self.n {
            let Some(p) = (rank..self.n).find(|&r| (rows[r] >> col) & 1 == 1) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank];
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && (*row >> col) & 1 == 1 {
                    *row ^= pivot;
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.n
    }

    /// Number of ones.
    pub fn weight(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix({}x{})", self.n, self.n)?;
        for i in 0..self.n {
            let row: String = (0..self.n).map(|j| if self.get(i, j) { '1' } else { '0' }).collect();
            writeln!(f, "  {row}")?;
        }
        Ok(())
    }
}

/// `s -> L s + c` over GF(2).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineMapGF2 {
    linear: BitMatrix,
    constant: u64,
}

impl AffineMapGF2 {
    pub fn identity(n: usize) -> Self {
        AffineMapGF2 {
            linear: BitMatrix::identity(n),
            constant: 0,
        }
    }

    pub fn new(linear: BitMatrix, constant: u64) -> Result<Self> {
        if constant & !width_mask(linear.n()) != 0 {
            return input("constant has bits beyond the map width");
        }
        Ok(AffineMapGF2 { linear, constant })
    }

    pub fn n_bits(&self) -> usize {
        self.linear.n()
    }

    pub fn linear(&self) -> &BitMatrix {
        &self.linear
    }

    pub fn constant(&self) -> u64 {
        self.constant
    }

    pub fn is_linear(&self) -> bool {
        self.constant == 0
    }

    pub fn apply(&self, s: u64) -> u64 {
        self.linear.mul_vec(s) ^ self.constant
    }

    /// Output bit `t` flips input bit `t` by `support . s + c_t`; returns
    /// `(support, c_t)` with `support = row_t(L) + e_t`.
    pub fn flip_form(&self, t: usize) -> (u64, bool) {
        (
            self.linear.row(t) ^ (1u64 << t),
            (self.constant >> t) & 1 == 1,
        )
    }

    /// Flip NOT into output bit `t`.
    pub fn push_not(&mut self, t: usize) {
        self.constant ^= 1 << t;
    }

    /// Apply CNOT(control, target) after this map.
    pub fn push_cnot(&mut self, control: usize, target: usize) {
        self.linear.add_row(control, target);
        self.constant ^= ((self.constant >> control) & 1) << target;
    }

    /// `other` after `self`.
    pub fn then(&self, other: &AffineMapGF2) -> AffineMapGF2 {
        AffineMapGF2 {
            linear: other.linear.mul(&self.linear),
            constant: other.apply(self.constant),
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.linear.is_invertible()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_rank() {
        let id = BitMatrix::identity(5);
        assert!(id.is_invertible());
        assert_eq!(id.mul_vec(0b10110), 0b10110);
        let mut m = BitMatrix::identity(3);
        m.add_row(0, 1);
        assert!(m.is_invertible());
        m.add_row(1, 0); // row0 = e1
        m.set(2, 2, false);
        m.set(2, 1, true); // row2 = e1 duplicates row0
        assert_eq!(m.rank(), 2);
        assert!(!m.is_invertible());
        assert_eq!(BitMatrix::zeros(4).rank(), 0);
        assert!(BitMatrix::identity(64).is_invertible());
    }

    #[test]
    fn from_rows_validates() {
        assert!(BitMatrix::from_rows(2, vec![1, 2]).is_ok());
        assert!(BitMatrix::from_rows(2, vec![1]).is_err());
        assert!(BitMatrix::from_rows(2, vec![1, 4]).is_err());
    }

    #[test]
    fn composition_matches_application() {
        let mut a = AffineMapGF2::identity(4);
        a.push_cnot(0, 1);
        a.push_not(2);
        let mut b = AffineMapGF2::identity(4);
        b.push_cnot(2, 3);
        b.push_cnot(1, 0);
        let ab = a.then(&b);
        for s in 0..16 {
            assert_eq!(ab.apply(s), b.apply(a.apply(s)));
        }
    }

    #[test]
    fn cnot_carries_constant() {
        let mut m = AffineMapGF2::identity(2);
        m.push_not(0);
        m.push_cnot(0, 1);
        assert_eq!(m.constant(), 0b11);
        assert_eq!(m.flip_form(1), (0b01, true));
        assert_eq!(m.flip_form(0), (0, true));
    }
}
