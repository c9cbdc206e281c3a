//! Left normal form `Δ^k · p_1 ⋯ p_l` in `B_n`.
//!
//! Simple factors are permutation braids, stored as [`Permutation`]s: strands
//! `i < j` cross exactly when `π(i) > π(j)`. Descent sets are `u32` bit masks
//! with bit `i` standing for `σ_{i+1}`.

use alloc::vec::Vec;

use super::BraidWord;
use crate::codec::Writer;
use crate::perm::MAX_POINTS;
use crate::{Error, Permutation, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GarsideNormalForm {
    strands: u16,
    infimum: i64,
    factors: Vec<Permutation>,
}

// ---- simple factors ----

fn delta(n: usize) -> Permutation {
    Permutation::from_raw(n, |i| n - 1 - i)
}

fn is_delta(p: &Permutation) -> bool {
    let n = p.len();
    p.raw().iter().enumerate().all(|(i, &v)| v as usize == n - 1 - i)
}

fn starting_set(p: &Permutation) -> u32 {
    let r = p.raw();
    let mut m = 0u32;
    for i in 0..r.len().saturating_sub(1) {
        if r[i] > r[i + 1] {
            m |= 1 << i;
        }
    }
    m
}

fn starting_set_of_inverse(inv: &[u8]) -> u32 {
    let mut m = 0u32;
    for i in 0..inv.len().saturating_sub(1) {
        if inv[i] > inv[i + 1] {
            m |= 1 << i;
        }
    }
    m
}

fn finishing_set(p: &Permutation) -> u32 {
    starting_set(&p.inverse())
}

/// Conjugation by `Δ`: `Δ⁻¹ s Δ`.
fn tau(p: &Permutation) -> Permutation {
    let n = p.len();
    Permutation::from_raw(n, |i| n - 1 - p.apply(n - 1 - i))
}

fn tau_pow(p: &Permutation, k: i64) -> Permutation {
    if k.rem_euclid(2) == 1 {
        tau(p)
    } else {
        *p
    }
}

/// `s⁻¹ Δ`.
fn right_complement(p: &Permutation) -> Permutation {
    let n = p.len();
    p.inverse().then(&delta(n))
}

/// `Δ s⁻¹`.
fn left_complement(p: &Permutation) -> Permutation {
    let n = p.len();
    delta(n).then(&p.inverse())
}

fn simple_generator(n: usize, i: usize) -> Permutation {
    let mut p = Permutation::identity_unchecked(n);
    p.swap_positions(i - 1, i);
    p
}

/// Positive Artin word of a permutation braid, peeling the smallest descent
/// off the left each time.
fn simple_letters(p: &Permutation) -> Vec<i16> {
    let mut q = *p;
    let mut out = Vec::new();
    loop {
        let s = starting_set(&q);
        if s == 0 {
            return out;
        }
        let i = s.trailing_zeros() as usize;
        q.swap_positions(i, i + 1);
        out.push(i as i16 + 1);
    }
}

/// Make the pair `(a, b)` left-weighted in place. Returns whether anything
/// moved.
fn left_weight(a: &mut Permutation, b: &mut Permutation) -> bool {
    let n = a.len();
    let mut a_inv = a.inverse();
    let mut changed = false;
    loop {
        let m = starting_set(b) & !starting_set_of_inverse(&a_inv.raw()[..n]);
        if m == 0 {
            return changed;
        }
        changed = true;
        let i = m.trailing_zeros() as usize;
        // a <- a σ_i swaps the values i, i+1; b <- σ_i⁻¹ b swaps positions.
        let (x, y) = (a_inv.apply(i), a_inv.apply(i + 1));
        a.swap_positions(x, y);
        a_inv.swap_positions(i, i + 1);
        b.swap_positions(i, i + 1);
    }
}

impl GarsideNormalForm {
    pub fn identity(strands: u16) -> Result<Self> {
        if strands as usize > MAX_POINTS {
            return Err(Error::StrandLimit(strands as usize));
        }
        Ok(Self {
            strands,
            infimum: 0,
            factors: Vec::new(),
        })
    }

    fn n(&self) -> usize {
        self.strands.max(1) as usize
    }

    pub fn strands(&self) -> u16 {
        self.strands
    }

    pub fn infimum(&self) -> i64 {
        self.infimum
    }

    pub fn supremum(&self) -> i64 {
        self.infimum + self.factors.len() as i64
    }

    pub fn factors(&self) -> &[Permutation] {
        &self.factors
    }

    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }

    pub fn is_identity(&self) -> bool {
        self.infimum == 0 && self.factors.is_empty()
    }

    /// Check the normal-form invariants: no trivial or `Δ` factors, and every
    /// adjacent pair left-weighted.
    pub fn is_normal(&self) -> bool {
        let n = self.n();
        if n < 2 {
            return self.is_identity();
        }
        if self
            .factors
            .iter()
            .any(|p| p.len() != n || p.is_identity() || is_delta(p))
        {
            return false;
        }
        self.factors
            .windows(2)
            .all(|w| starting_set(&w[1]) & !finishing_set(&w[0]) == 0)
    }

    fn push_delta_power(&mut self, k: i64) {
        if self.n() < 2 || k == 0 {
            return;
        }
        self.infimum += k;
        if k % 2 != 0 {
            for f in &mut self.factors {
                *f = tau(f);
            }
        }
    }

    /// Right-multiply by one simple factor and restore left-weightedness.
    fn push_simple(&mut self, s: Permutation) {
        if s.is_identity() {
            return;
        }
        if is_delta(&s) {
            self.push_delta_power(1);
            return;
        }
        self.factors.push(s);
        let mut j = self.factors.len() - 1;
        while j > 0 {
            let (head, tail) = self.factors.split_at_mut(j);
            if !left_weight(&mut head[j - 1], &mut tail[0]) {
                break;
            }
            j -= 1;
        }
        let lead = self.factors.iter().take_while(|p| is_delta(p)).count();
        if lead > 0 {
            self.factors.drain(..lead);
            self.infimum += lead as i64;
        }
        while self.factors.last().is_some_and(|p| p.is_identity()) {
            self.factors.pop();
        }
    }

    pub fn from_word(w: &BraidWord) -> Result<Self> {
        let mut out = Self::identity(w.strands())?;
        let n = out.n();
        if n < 2 {
            return Ok(out);
        }
        // σ_i⁻¹ = Δ⁻¹ · (Δ σ_i⁻¹); move every Δ⁻¹ to the front, twisting the
        // factors it passes over.
        let total_neg = w.letters().iter().filter(|&&e| e < 0).count() as i64;
        let mut neg_seen = 0i64;
        for &e in w.letters() {
            let g = simple_generator(n, e.unsigned_abs() as usize);
            let z = if e > 0 {
                g
            } else {
                neg_seen += 1;
                left_complement(&g)
            };
            out.push_simple(tau_pow(&z, total_neg - neg_seen));
        }
        out.infimum -= total_neg;
        Ok(out)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.strands != other.strands {
            return Err(Error::PlatformMismatch);
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        out.push_delta_power(other.infimum);
        for f in &other.factors {
            out.push_simple(*f);
        }
        Ok(out)
    }

    pub fn inverse(&self) -> Self {
        let n = self.n();
        let mut out = Self {
            strands: self.strands,
            infimum: 0,
            factors: Vec::with_capacity(self.factors.len()),
        };
        if n < 2 {
            return out;
        }
        let a = self.infimum;
        let l = self.factors.len() as i64;
        out.infimum = -a - l;
        for (j, f) in self.factors.iter().enumerate().rev() {
            out.push_simple(tau_pow(&right_complement(f), j as i64 + 1 + a));
        }
        out
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = Self {
            strands: self.strands,
            infimum: 0,
            factors: Vec::new(),
        };
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base).expect("same strand count");
        }
        out
    }

    /// `x⁻¹ y x`.
    pub fn conjugate_by(&self, x: &Self) -> Result<Self> {
        x.inverse().mul(self)?.mul(x)
    }

    /// Image in `S_n`.
    pub fn permutation(&self) -> Permutation {
        let n = self.n();
        let mut p = if self.infimum.rem_euclid(2) == 1 {
            delta(n)
        } else {
            Permutation::identity_unchecked(n)
        };
        for f in &self.factors {
            p = p.then(f);
        }
        p
    }

    /// The literal word `Δ^k p_1 ⋯ p_l`.
    pub fn to_word(&self) -> BraidWord {
        let n = self.n();
        let mut letters = Vec::new();
        if n >= 2 {
            let d = simple_letters(&delta(n));
            for _ in 0..self.infimum.unsigned_abs() {
                if self.infimum > 0 {
                    letters.extend_from_slice(&d);
                } else {
                    letters.extend(d.iter().rev().map(|&e| -e));
                }
            }
            for f in &self.factors {
                letters.extend(simple_letters(f));
            }
        }
        BraidWord::from_parts_unchecked(self.strands, letters)
    }

    /// Reduced left fraction `x = A⁻¹ B` with `A`, `B` positive, returned as
    /// sequences of simple factors. Neither sequence is necessarily in normal
    /// form, but `B` always is.
    pub fn fraction(&self) -> (Vec<Permutation>, Vec<Permutation>) {
        let n = self.n();
        if n < 2 {
            return (Vec::new(), Vec::new());
        }
        if self.infimum >= 0 {
            let mut b = alloc::vec![delta(n); self.infimum as usize];
            b.extend_from_slice(&self.factors);
            return (Vec::new(), b);
        }
        let r = (-self.infimum) as usize;
        let l = self.factors.len();
        let m = r.min(l);
        let mut a = alloc::vec![delta(n); r - m];
        for j in (1..=m).rev() {
            a.push(tau_pow(&right_complement(&self.factors[j - 1]), (r - j) as i64));
        }
        (a, self.factors[m..].to_vec())
    }

    /// The word of the reduced left fraction, `A⁻¹ B`. Equal braids give
    /// identical words.
    pub fn canonical_word(&self) -> BraidWord {
        let (a, b) = self.fraction();
        let mut letters = Vec::new();
        for f in a.iter().rev() {
            letters.extend(simple_letters(f).iter().rev().map(|&e| -e));
        }
        for f in &b {
            letters.extend(simple_letters(f));
        }
        BraidWord::from_parts_unchecked(self.strands, letters)
    }

    fn positive(n: u16, factors: &[Permutation]) -> Self {
        let mut out = Self {
            strands: n,
            infimum: 0,
            factors: Vec::new(),
        };
        for f in factors {
            out.push_simple(*f);
        }
        out
    }

    /// Apply `σ_i ↦ σ_{i+p}` within the same `B_n`. Fails with
    /// [`Error::StrandOverflow`] when the braid involves any of the top `p`
    /// strands.
    pub fn shift(&self, p: u16) -> Result<Self> {
        if p == 0 || self.is_identity() {
            return Ok(self.clone());
        }
        let n = self.strands;
        let overflow = Error::StrandOverflow {
            required: n as usize + p as usize,
            available: n,
        };
        let (a, b) = self.fraction();
        let a = Self::positive(n, &a);
        let b = Self::positive(n, &b);
        let lift = |x: &Self| -> Result<Self> {
            if x.infimum != 0 {
                return Err(overflow.clone());
            }
            let factors = x
                .factors
                .iter()
                .map(|f| f.shift_points(p as usize).ok_or(overflow.clone()))
                .collect::<Result<Vec<_>>>()?;
            Ok(Self {
                strands: n,
                infimum: 0,
                factors,
            })
        };
        lift(&a)?.inverse().mul(&lift(&b)?)
    }

    /// Re-embed into `B_m` for `m >= n`, keeping the extra strands straight.
    pub fn extend_to(&self, m: u16) -> Result<Self> {
        if m < self.strands {
            return Err(Error::InvalidArgument("cannot shrink a braid"));
        }
        if m == self.strands {
            return Ok(self.clone());
        }
        self.canonical_word().with_strands(m)?.normal_form()
    }

    /// Canonical key serialization: strands, infimum, factor count, and every
    /// factor's one-based images.
    pub fn encode(&self, w: &mut Writer) -> Result<()> {
        w.u16(self.strands);
        w.u64(self.infimum as u64);
        w.len(self.factors.len())?;
        for f in &self.factors {
            for v in f.images() {
                w.u8(v as u8);
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::handle_reduce;
    use alloc::vec;
    use proptest::prelude::*;

    fn w(n: u16, l: &[i16]) -> BraidWord {
        BraidWord::new(n, l.to_vec()).unwrap()
    }

    fn nf(n: u16, l: &[i16]) -> GarsideNormalForm {
        w(n, l).normal_form().unwrap()
    }

    #[test]
    fn braid_relations_hold() {
        assert_eq!(nf(3, &[1, 2, 1]), nf(3, &[2, 1, 2]));
        assert_eq!(nf(4, &[1, 3]), nf(4, &[3, 1]));
        assert_ne!(nf(3, &[1, 2]), nf(3, &[2, 1]));
        assert!(nf(3, &[1, -1, 2, -2]).is_identity());
    }

    #[test]
    fn delta_is_absorbed() {
        let d = nf(4, &[1, 2, 1, 3, 2, 1]);
        assert_eq!(d.infimum(), 1);
        assert!(d.factors().is_empty());
        let x = nf(3, &[-1]);
        assert_eq!(x.infimum(), -1);
        assert_eq!(x.factors().len(), 1);
        assert_eq!(nf(2, &[-1]).infimum(), -1);
        assert!(nf(2, &[-1]).factors().is_empty());
    }

    #[test]
    fn fraction_of_small_word() {
        let x = nf(3, &[-1, 2]);
        assert_eq!(x.canonical_word(), w(3, &[-1, 2]));
        assert_eq!(nf(2, &[-1]).canonical_word(), w(2, &[-1]));
        assert_eq!(nf(4, &[]).canonical_word(), w(4, &[]));
    }

    #[test]
    fn simple_letters_spell_delta() {
        assert_eq!(simple_letters(&delta(3)), vec![1, 2, 1]);
        assert_eq!(simple_letters(&delta(4)).len(), 6);
    }

    #[test]
    fn shift_within_strands() {
        assert_eq!(nf(4, &[1, -2]).shift(1).unwrap(), nf(4, &[2, -3]));
        assert!(matches!(
            nf(3, &[2]).shift(1),
            Err(Error::StrandOverflow { .. })
        ));
        assert!(nf(3, &[]).shift(5).unwrap().is_identity());
    }

    #[test]
    fn encoding_is_structural() {
        let mut a = Writer::new();
        let mut b = Writer::new();
        nf(3, &[1, 2, 1]).encode(&mut a).unwrap();
        nf(3, &[2, 1, 2]).encode(&mut b).unwrap();
        assert_eq!(a.as_slice(), b.as_slice());
    }

    fn word(n: u16, max_len: usize) -> impl Strategy<Value = BraidWord> {
        let g = (n - 1) as i16;
        proptest::collection::vec((1..=g, any::<bool>()), 0..max_len).prop_map(move |v| {
            let letters = v.into_iter().map(|(i, s)| if s { i } else { -i }).collect();
            BraidWord::new(n, letters).unwrap()
        })
    }

    fn word_any() -> impl Strategy<Value = BraidWord> {
        (2u16..7).prop_flat_map(|n| word(n, 30))
    }

    proptest! {
        #[test]
        fn normal_form_invariants(x in word_any()) {
            let a = x.normal_form().unwrap();
            prop_assert!(a.is_normal());
            prop_assert_eq!(a.permutation(), x.permutation().unwrap());
            prop_assert_eq!(a.to_word().normal_form().unwrap(), a.clone());
            prop_assert_eq!(a.canonical_word().normal_form().unwrap(), a);
        }

        #[test]
        fn agrees_with_handle_reduction(x in word_any()) {
            let trivial_nf = x.normal_form().unwrap().is_identity();
            prop_assert_eq!(trivial_nf, handle_reduce(&x).is_empty());
        }

        #[test]
        fn product_matches_concatenation((x, y) in (2u16..7).prop_flat_map(|n| (word(n, 25), word(n, 25)))) {
            let a = x.normal_form().unwrap();
            let b = y.normal_form().unwrap();
            let ab = a.mul(&b).unwrap();
            prop_assert!(ab.is_normal());
            prop_assert_eq!(&ab, &x.concat(&y).normal_form().unwrap());
            prop_assert!(ab.mul(&ab.inverse()).unwrap().is_identity());
            prop_assert_eq!(a.inverse(), x.invert().normal_form().unwrap());
        }

        #[test]
        fn shift_matches_word_shift(x in (2u16..6).prop_flat_map(|n| word(n, 25)), p in 1u16..3) {
            let n = x.strands();
            let big = x.clone().with_strands(n + p).unwrap().normal_form().unwrap();
            let expect = x.shift(p).normal_form().unwrap();
            prop_assert_eq!(big.shift(p).unwrap(), expect);
        }
    }
}
