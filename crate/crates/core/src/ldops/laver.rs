//! Laver tables `A_n`: the LD operation on `{1, …, 2^n}` with `p * 1 = p + 1`
//! (cyclically).

use alloc::vec::Vec;

use crate::{Error, Result};

pub const MAX_LAVER_LEVEL: u8 = 5;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaverTable {
    n: u8,
    size: usize,
    table: Vec<u8>,
}

impl LaverTable {
    /// Rows are filled from `2^n` downwards: row `2^n` is the identity, and
    /// `p * (q+1) = (p * q) * (p+1)` only needs rows above `p`.
    pub fn new(n: u8) -> Result<Self> {
        if n > MAX_LAVER_LEVEL {
            return Err(Error::InvalidArgument("Laver level must be at most 5"));
        }
        let size = 1usize << n;
        let mut table = alloc::vec![0u8; size * size];
        for q in 1..=size {
            table[(size - 1) * size + (q - 1)] = q as u8;
        }
        for p in (1..size).rev() {
            let row = (p - 1) * size;
            table[row] = (p + 1) as u8;
            for q in 1..size {
                let pq = table[row + q - 1] as usize;
                table[row + q] = table[(pq - 1) * size + p];
            }
        }
        Ok(Self { n, size, table })
    }

    pub fn level(&self) -> u8 {
        self.n
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// `p * q` for one-based `p, q`.
    pub fn op(&self, p: usize, q: usize) -> Result<usize> {
        if p == 0 || q == 0 || p > self.size || q > self.size {
            return Err(Error::InvalidArgument("Laver operand out of range"));
        }
        Ok(self.table[(p - 1) * self.size + (q - 1)] as usize)
    }

    pub fn row(&self, p: usize) -> &[u8] {
        &self.table[(p - 1) * self.size..p * self.size]
    }

    /// The first violating triple, if any.
    pub fn ld_counterexample(&self) -> Option<(usize, usize, usize)> {
        let s = self.size;
        let at = |p: usize, q: usize| self.table[(p - 1) * s + (q - 1)] as usize;
        for x in 1..=s {
            for y in 1..=s {
                for z in 1..=s {
                    if at(x, at(y, z)) != at(at(x, y), at(x, z)) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }
}

impl core::fmt::Debug for LaverTable {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "LaverTable(A_{})", self.n)
    }
}
