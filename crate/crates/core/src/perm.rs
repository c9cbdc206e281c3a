//! Permutations of `{1..n}` for small `n`.
//!
//! Points are stored zero-based in a fixed array so that permutations are
//! `Copy`; the public constructors and [`Permutation::images`] speak the usual
//! one-based language. Products read left to right: `x.then(&y)` applies `x`
//! first, matching the order of letters in a braid word.

use core::fmt;

use alloc::vec::Vec;

use crate::{Error, Result};

/// Largest supported number of points (and braid strands).
pub const MAX_POINTS: usize = 32;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    n: u8,
    img: [u8; MAX_POINTS],
}

impl Permutation {
    pub fn identity(n: usize) -> Result<Self> {
        if n > MAX_POINTS {
            return Err(Error::StrandLimit(n));
        }
        Ok(Self::identity_unchecked(n))
    }

    pub(crate) fn identity_unchecked(n: usize) -> Self {
        let mut img = [0u8; MAX_POINTS];
        for (i, slot) in img.iter_mut().enumerate().take(n) {
            *slot = i as u8;
        }
        Self { n: n as u8, img }
    }

    /// Build from one-based images: `images[i-1]` is the image of point `i`.
    pub fn from_images(images: &[u16]) -> Result<Self> {
        let n = images.len();
        if n > MAX_POINTS {
            return Err(Error::StrandLimit(n));
        }
        let mut img = [0u8; MAX_POINTS];
        let mut seen = 0u64;
        for (i, &v) in images.iter().enumerate() {
            if v == 0 || v as usize > n {
                return Err(Error::InvalidPermutation);
            }
            let z = v - 1;
            if seen & (1 << z) != 0 {
                return Err(Error::InvalidPermutation);
            }
            seen |= 1 << z;
            img[i] = z as u8;
        }
        Ok(Self { n: n as u8, img })
    }

    /// The transposition swapping the one-based points `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        Self::cycle(n, &[a, b])
    }

    /// The cycle `(c0 c1 ... ck)` on one-based points.
    pub fn cycle(n: usize, points: &[usize]) -> Result<Self> {
        let mut p = Self::identity(n)?;
        for (idx, &a) in points.iter().enumerate() {
            let b = points[(idx + 1) % points.len()];
            if a == 0 || a > n || b == 0 || b > n {
                return Err(Error::InvalidPermutation);
            }
            p.img[a - 1] = (b - 1) as u8;
        }
        if !p.is_bijection() {
            return Err(Error::InvalidPermutation);
        }
        Ok(p)
    }

    fn is_bijection(&self) -> bool {
        let mut seen = 0u64;
        for &v in &self.img[..self.len()] {
            seen |= 1 << v;
        }
        seen.count_ones() as usize == self.len()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Zero-based image of the zero-based point `i`.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.img[i] as usize
    }

    /// One-based images, in point order.
    pub fn images(&self) -> impl Iterator<Item = u16> + '_ {
        self.img[..self.len()].iter().map(|&v| v as u16 + 1)
    }

    pub fn is_identity(&self) -> bool {
        self.img[..self.len()]
            .iter()
            .enumerate()
            .all(|(i, &v)| i == v as usize)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        let mut img = [0u8; MAX_POINTS];
        for (i, slot) in img.iter_mut().enumerate().take(self.len()) {
            *slot = other.img[self.img[i] as usize];
        }
        Self { n: self.n, img }
    }

    pub fn inverse(&self) -> Self {
        let mut img = [0u8; MAX_POINTS];
        for i in 0..self.len() {
            img[self.img[i] as usize] = i as u8;
        }
        Self { n: self.n, img }
    }

    /// Embed into `n` points, fixing the new ones.
    pub fn extend_to(&self, n: usize) -> Result<Self> {
        if n < self.len() {
            return Err(Error::InvalidArgument("cannot shrink a permutation"));
        }
        let mut p = Self::identity(n)?;
        p.img[..self.len()].copy_from_slice(&self.img[..self.len()]);
        Ok(p)
    }

    /// Conjugate the point labels by `i -> i + p`, fixing the first `p` points.
    /// Fails if a moved point would leave `{1..n}`.
    pub(crate) fn shift_points(&self, p: usize) -> Option<Self> {
        let n = self.len();
        for i in n.saturating_sub(p)..n {
            if self.img[i] as usize != i {
                return None;
            }
        }
        let mut out = Self::identity_unchecked(n);
        for i in 0..n - p.min(n) {
            out.img[i + p] = self.img[i] + p as u8;
        }
        Some(out)
    }

    // Raw slot access for the Garside machinery.
    #[inline]
    pub(crate) fn raw(&self) -> &[u8] {
        &self.img[..self.len()]
    }

    #[inline]
    pub(crate) fn swap_positions(&mut self, i: usize, j: usize) {
        self.img.swap(i, j);
    }

    pub(crate) fn from_raw(n: usize, f: impl Fn(usize) -> usize) -> Self {
        let mut img = [0u8; MAX_POINTS];
        for (i, slot) in img.iter_mut().enumerate().take(n) {
            *slot = f(i) as u8;
        }
        Self { n: n as u8, img }
    }

    /// Lexicographic rank among all permutations of the same size.
    pub fn rank(&self) -> u64 {
        let n = self.len();
        let mut rank = 0u64;
        let mut used = 0u64;
        for i in 0..n {
            let v = self.img[i] as u64;
            let smaller_unused = (used & ((1u64 << v) - 1)).count_ones() as u64;
            rank = rank * (n - i) as u64 + (v - smaller_unused);
            used |= 1 << v;
        }
        rank
    }

    /// Inverse of [`Permutation::rank`]. Requires `n <= 20`.
    pub fn unrank(n: usize, mut rank: u64) -> Result<Self> {
        if n > 20 {
            return Err(Error::InvalidArgument("unrank supports at most 20 points"));
        }
        let mut digits = [0u64; 20];
        for i in (0..n).rev() {
            let base = (n - i) as u64;
            digits[i] = rank % base;
            rank /= base;
        }
        if rank != 0 {
            return Err(Error::InvalidArgument("rank out of range"));
        }
        let mut pool: Vec<u8> = (0..n as u8).collect();
        let mut img = [0u8; MAX_POINTS];
        for i in 0..n {
            img[i] = pool.remove(digits[i] as usize);
        }
        Ok(Self { n: n as u8, img })
    }

    /// Disjoint cycles of length at least two, one-based.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = 0u64;
        let mut out = Vec::new();
        for start in 0..n {
            if seen & (1 << start) != 0 || self.img[start] as usize == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = start;
            while seen & (1 << i) == 0 {
                seen |= 1 << i;
                cyc.push(i + 1);
                i = self.img[i] as usize;
            }
            out.push(cyc);
        }
        out
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{}[", self.n)?;
        for (k, v) in self.images().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation, `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}
