//! Braid words over Artin generators, with the word-level operations the
//! protocols need: free reduction, inversion, the shift endomorphism, the
//! projection to `S_n`, and strand removal on pure braids.
//!
//! Letter `i > 0` stands for `σ_i`, letter `-i` for `σ_i⁻¹`.

use core::fmt;

use alloc::vec::Vec;
use rand::Rng;

use crate::codec::{Reader, Writer};
use crate::{Error, Permutation, Result};

mod garside;
mod handle;

pub use garside::GarsideNormalForm;
pub use handle::handle_reduce;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BraidWord {
    strands: u16,
    letters: Vec<i16>,
}

impl BraidWord {
    /// A word in `B_strands`. The letters are kept as given; see
    /// [`BraidWord::freely_reduced`].
    pub fn new(strands: u16, letters: Vec<i16>) -> Result<Self> {
        for &e in &letters {
            check_letter(e, strands)?;
        }
        Ok(Self { strands, letters })
    }

    pub fn identity(strands: u16) -> Self {
        Self {
            strands,
            letters: Vec::new(),
        }
    }

    /// The single-letter word `σ_i^{±1}`.
    pub fn generator(strands: u16, letter: i16) -> Result<Self> {
        Self::new(strands, alloc::vec![letter])
    }

    pub(crate) fn from_parts_unchecked(strands: u16, letters: Vec<i16>) -> Self {
        Self { strands, letters }
    }

    pub fn strands(&self) -> u16 {
        self.strands
    }

    pub fn letters(&self) -> &[i16] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Largest generator index used, 0 for the empty word.
    pub fn max_index(&self) -> u16 {
        self.letters
            .iter()
            .map(|e| e.unsigned_abs())
            .max()
            .unwrap_or(0)
    }

    /// Re-declare the strand count. Fails if a letter would fall outside.
    pub fn with_strands(mut self, strands: u16) -> Result<Self> {
        if self.max_index() >= strands.max(1) && !self.letters.is_empty() {
            return Err(Error::InvalidLetter {
                letter: self.max_index() as i32,
                strands,
            });
        }
        self.strands = strands;
        Ok(self)
    }

    pub fn freely_reduced(&self) -> Self {
        let mut out: Vec<i16> = Vec::with_capacity(self.letters.len());
        push_reduced(&mut out, &self.letters);
        Self {
            strands: self.strands,
            letters: out,
        }
    }

    /// Concatenation with eager free reduction; the strand count is the larger
    /// of the two.
    pub fn concat(&self, other: &Self) -> Self {
        let mut out: Vec<i16> = Vec::with_capacity(self.letters.len() + other.letters.len());
        push_reduced(&mut out, &self.letters);
        push_reduced(&mut out, &other.letters);
        Self {
            strands: self.strands.max(other.strands),
            letters: out,
        }
    }

    pub fn invert(&self) -> Self {
        Self {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|&e| -e).collect(),
        }
    }

    /// The shift endomorphism applied `p` times: `σ_i ↦ σ_{i+p}`.
    pub fn shift(&self, p: u16) -> Self {
        let p = p as i16;
        Self {
            strands: self.strands + p as u16,
            letters: self
                .letters
                .iter()
                .map(|&e| if e > 0 { e + p } else { e - p })
                .collect(),
        }
    }

    /// Image under `B_n → S_n`; `perm(i)` is where the strand starting at
    /// position `i` ends.
    pub fn permutation(&self) -> Result<Permutation> {
        let n = self.strands.max(1) as usize;
        let mut at = Permutation::identity(n)?;
        for &e in &self.letters {
            let i = e.unsigned_abs() as usize;
            at.swap_positions(i - 1, i);
        }
        // `at` maps positions to strands; invert to get strands to positions.
        Ok(at.inverse())
    }

    pub fn is_pure(&self) -> bool {
        // Parity of crossings per strand pair is enough, but the permutation is
        // just as cheap and keeps one code path.
        let n = self.strands.max(1) as usize;
        let mut at: Vec<u16> = (0..n as u16).collect();
        for &e in &self.letters {
            let i = e.unsigned_abs() as usize;
            at.swap(i - 1, i);
        }
        at.iter().enumerate().all(|(i, &s)| i == s as usize)
    }

    pub fn normal_form(&self) -> Result<GarsideNormalForm> {
        GarsideNormalForm::from_word(self)
    }

    pub fn handle_reduce(&self) -> Self {
        handle_reduce(self)
    }

    /// `δ_n = σ_{n-1} ⋯ σ_2 σ_1` in `B_n`.
    pub fn delta(n: u16) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument("delta word needs n >= 2"));
        }
        Ok(Self {
            strands: n,
            letters: (1..n as i16).rev().collect(),
        })
    }

    /// `τ_{p,q} = δ_{p+1} ∂(δ_{p+1}) ⋯ ∂^{q-1}(δ_{p+1})`, a word in `B_{p+q}`.
    pub fn tau(p: u16, q: u16) -> Result<Self> {
        if p < 1 || q < 1 {
            return Err(Error::InvalidArgument("tau needs p, q >= 1"));
        }
        let d = Self::delta(p + 1)?;
        let mut letters = Vec::with_capacity(p as usize * q as usize);
        for k in 0..q {
            letters.extend(d.shift(k).letters);
        }
        Ok(Self {
            strands: p + q,
            letters,
        })
    }

    /// Erase the last `d` strands of a pure braid, giving a pure braid on
    /// `n - d` strands.
    pub fn remove_strands(&self, d: u16) -> Result<Self> {
        if d == 0 || d >= self.strands {
            return Err(Error::InvalidArgument("remove_strands needs 1 <= d < n"));
        }
        if !self.is_pure() {
            return Err(Error::NotPure);
        }
        let keep = self.strands - d;
        // `at[pos]` is the initial position of the strand now at `pos`.
        let mut at: Vec<u16> = (0..self.strands).collect();
        let mut out = Vec::with_capacity(self.letters.len());
        for &e in &self.letters {
            let i = e.unsigned_abs() as usize;
            let (u, v) = (at[i - 1], at[i]);
            if u < keep && v < keep {
                let rank = at[..i].iter().filter(|&&s| s < keep).count() as i16;
                out.push(if e > 0 { rank } else { -rank });
            }
            at.swap(i - 1, i);
        }
        Ok(Self {
            strands: keep,
            letters: out,
        })
    }

    /// The endomorphism `∂^d ∘ η_d` of `P_n`: erase the last `d` strands, then
    /// shift the result back up into `B_n`.
    pub fn pure_braid_endo(&self, d: u16) -> Result<Self> {
        let removed = self.remove_strands(d)?;
        Ok(removed.shift(d))
    }

    /// A uniformly random word of `len` letters over `σ_1^{±1} … σ_{n-1}^{±1}`,
    /// freely reduced afterwards.
    pub fn random<R: Rng + ?Sized>(n: u16, len: usize, rng: &mut R) -> Self {
        if n < 2 {
            return Self::identity(n);
        }
        let g = (n - 1) as i16;
        let letters: Vec<i16> = (0..len)
            .map(|_| {
                let i = rng.gen_range(1..=g);
                if rng.gen::<bool>() {
                    i
                } else {
                    -i
                }
            })
            .collect();
        Self { strands: n, letters }.freely_reduced()
    }

    /// Canonical serialization: u16 strand count, u32 letter count, then each
    /// letter as i16, all big-endian.
    pub fn encode(&self, w: &mut Writer) -> Result<()> {
        w.u16(self.strands);
        w.len(self.letters.len())?;
        for &e in &self.letters {
            w.i16(e);
        }
        Ok(())
    }

    pub fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let strands = r.u16()?;
        let n = r.count(2)?;
        let mut letters = Vec::with_capacity(n);
        for _ in 0..n {
            letters.push(r.i16()?);
        }
        Self::new(strands, letters).map_err(|_| Error::Decode("letter outside strand range"))
    }
}

fn check_letter(e: i16, strands: u16) -> Result<()> {
    if e == 0 || e.unsigned_abs() >= strands {
        return Err(Error::InvalidLetter {
            letter: e as i32,
            strands,
        });
    }
    Ok(())
}

fn push_reduced(out: &mut Vec<i16>, letters: &[i16]) {
    for &e in letters {
        if out.last() == Some(&-e) {
            out.pop();
        } else {
            out.push(e);
        }
    }
}

impl fmt::Debug for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}[{}]", self.strands, self)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("e");
        }
        for (k, &e) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn w(n: u16, l: &[i16]) -> BraidWord {
        BraidWord::new(n, l.to_vec()).unwrap()
    }

    #[test]
    fn concat_cancels_freely() {
        assert!(w(2, &[1]).concat(&w(2, &[-1])).is_empty());
        assert_eq!(w(3, &[1, 2]).concat(&BraidWord::identity(3)), w(3, &[1, 2]));
        assert_eq!(w(4, &[1, 2]).concat(&w(4, &[-2, 3])), w(4, &[1, 3]));
        assert_eq!(w(2, &[1]).concat(&w(5, &[4])).strands(), 5);
    }

    #[test]
    fn invert_examples() {
        assert_eq!(w(3, &[1, 2]).invert(), w(3, &[-2, -1]));
        assert!(BraidWord::identity(3).invert().is_empty());
        assert_eq!(w(2, &[-1]).invert(), w(2, &[1]));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(w(2, &[1]).shift(1), w(3, &[2]));
        assert_eq!(w(4, &[-1, 3]).shift(2), w(6, &[-3, 5]));
        assert_eq!(w(4, &[-1, 3]).shift(0), w(4, &[-1, 3]));
    }

    #[test]
    fn permutation_and_purity() {
        let t = w(3, &[1]).permutation().unwrap();
        assert_eq!(t, Permutation::transposition(3, 1, 2).unwrap());
        assert!(w(3, &[1, 1]).permutation().unwrap().is_identity());
        assert!(BraidWord::identity(3).permutation().unwrap().is_identity());
        assert!(w(3, &[1, 1]).is_pure());
        assert!(!w(3, &[1]).is_pure());
        // (1 2)(2 3)(1 2)(2 3) is a 3-cycle
        let c = w(3, &[1, 2, -1, -2]);
        assert!(!c.is_pure());
        assert_eq!(c.permutation().unwrap().cycles().len(), 1);
        assert_eq!(c.permutation().unwrap().cycles()[0].len(), 3);
    }

    #[test]
    fn delta_and_tau_words() {
        assert_eq!(BraidWord::delta(2).unwrap(), w(2, &[1]));
        assert_eq!(BraidWord::delta(4).unwrap(), w(4, &[3, 2, 1]));
        assert_eq!(BraidWord::tau(1, 1).unwrap(), w(2, &[1]));
        assert_eq!(BraidWord::tau(1, 2).unwrap(), w(3, &[1, 2]));
        assert_eq!(BraidWord::tau(2, 2).unwrap(), w(4, &[2, 1, 3, 2]));
        assert!(BraidWord::delta(1).is_err());
        assert!(BraidWord::tau(0, 1).is_err());
        assert!(BraidWord::tau(1, 0).is_err());
    }

    #[test]
    fn strand_removal_examples() {
        assert_eq!(w(3, &[1, 1]).remove_strands(1).unwrap(), w(2, &[1, 1]));
        assert!(w(3, &[2, 2]).remove_strands(1).unwrap().is_empty());
        assert_eq!(w(3, &[1, 1]).pure_braid_endo(1).unwrap(), w(3, &[2, 2]));
        assert!(BraidWord::identity(3).pure_braid_endo(1).unwrap().is_empty());
        assert_eq!(w(3, &[1]).remove_strands(1), Err(Error::NotPure));
        assert!(w(3, &[1, 1]).remove_strands(3).is_err());
        assert!(w(3, &[1, 1]).remove_strands(0).is_err());
    }

    #[test]
    fn letters_validated() {
        assert!(BraidWord::new(3, vec![3]).is_err());
        assert!(BraidWord::new(3, vec![0]).is_err());
        assert!(BraidWord::new(1, vec![]).is_ok());
    }

    #[test]
    fn random_words() {
        let mut rng = crate::seeded_rng(7);
        assert!(BraidWord::random(2, 0, &mut rng).is_empty());
        let r = BraidWord::random(2, 3, &mut rng);
        assert!(r.len() <= 3 && r.letters().iter().all(|e| e.abs() == 1));
        let a = BraidWord::random(6, 40, &mut crate::seeded_rng(99));
        let b = BraidWord::random(6, 40, &mut crate::seeded_rng(99));
        assert_eq!(a, b);
    }

    #[test]
    fn encoding_is_bit_exact() {
        let mut out = Writer::new();
        w(3, &[1, -2]).encode(&mut out).unwrap();
        assert_eq!(
            out.as_slice(),
            &[0, 3, 0, 0, 0, 2, 0, 1, 0xff, 0xfe]
        );
        let back = BraidWord::decode(&mut Reader::new(out.as_slice())).unwrap();
        assert_eq!(back, w(3, &[1, -2]));
    }
}
