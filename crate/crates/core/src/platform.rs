//! Group platforms: braid groups `B_n`, symmetric groups `S_n`, and the
//! multiplicative group `(Z/p)^*`. Everything above this module is written
//! against [`Platform`] and [`Element`] only.

use core::fmt;

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;
use rand::Rng;

use crate::braid::{BraidWord, GarsideNormalForm};
use crate::codec::{Reader, Writer};
use crate::perm::MAX_POINTS;
use crate::{Error, Permutation, Result};

/// Largest finite group `elements()` will list.
pub const MAX_ENUMERATION: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Platform {
    Braid { strands: u16 },
    Symmetric { n: u8 },
    MultMod { p: u64 },
}

/// A group element in canonical form. Braids are kept as normal forms, so
/// `==` is group equality on every platform.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Braid(GarsideNormalForm),
    Perm(Permutation),
    Residue(u64),
}

const TAG_BRAID: u8 = 0x01;
const TAG_PERM: u8 = 0x02;
const TAG_RESIDUE: u8 = 0x03;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

impl Platform {
    pub fn braid(strands: u16) -> Result<Self> {
        if strands == 0 {
            return Err(Error::InvalidArgument("braid platform needs at least one strand"));
        }
        if strands as usize > MAX_POINTS {
            return Err(Error::StrandLimit(strands as usize));
        }
        Ok(Platform::Braid { strands })
    }

    pub fn symmetric(n: u8) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("symmetric group needs n >= 1"));
        }
        if n as usize > MAX_POINTS {
            return Err(Error::StrandLimit(n as usize));
        }
        Ok(Platform::Symmetric { n })
    }

    pub fn mult_mod(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Platform::MultMod { p })
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self, Platform::Braid { .. })
    }

    pub fn order(&self) -> Option<u64> {
        match *self {
            Platform::Braid { strands } => (strands <= 1).then_some(1),
            Platform::Symmetric { n } => (1..=n as u64).try_fold(1u64, |a, k| a.checked_mul(k)),
            Platform::MultMod { p } => Some(p - 1),
        }
    }

    pub fn name(&self) -> alloc::string::String {
        match *self {
            Platform::Braid { strands } => alloc::format!("braid({strands})"),
            Platform::Symmetric { n } => alloc::format!("symmetric({n})"),
            Platform::MultMod { p } => alloc::format!("mult_mod({p})"),
        }
    }

    pub fn identity(&self) -> Element {
        match *self {
            Platform::Braid { strands } => Element::Braid(
                GarsideNormalForm::identity(strands).expect("validated strand count"),
            ),
            Platform::Symmetric { n } => Element::Perm(Permutation::identity_unchecked(n as usize)),
            Platform::MultMod { .. } => Element::Residue(1),
        }
    }

    pub fn contains(&self, x: &Element) -> bool {
        match (*self, x) {
            (Platform::Braid { strands }, Element::Braid(b)) => b.strands() == strands,
            (Platform::Symmetric { n }, Element::Perm(q)) => q.len() == n as usize,
            (Platform::MultMod { p }, Element::Residue(r)) => *r >= 1 && *r < p,
            _ => false,
        }
    }

    pub fn check(&self, x: &Element) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::PlatformMismatch)
        }
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(match (x, y) {
            (Element::Braid(a), Element::Braid(b)) => Element::Braid(a.mul(b)?),
            (Element::Perm(a), Element::Perm(b)) => Element::Perm(a.then(b)),
            (Element::Residue(a), Element::Residue(b)) => match *self {
                Platform::MultMod { p } => Element::Residue(mul_mod(*a, *b, p)),
                _ => unreachable!(),
            },
            _ => return Err(Error::PlatformMismatch),
        })
    }

    pub fn inv(&self, x: &Element) -> Result<Element> {
        self.check(x)?;
        Ok(match (self, x) {
            (_, Element::Braid(a)) => Element::Braid(a.inverse()),
            (_, Element::Perm(a)) => Element::Perm(a.inverse()),
            (Platform::MultMod { p }, Element::Residue(a)) => Element::Residue(pow_mod(*a, p - 2, *p)),
            _ => return Err(Error::PlatformMismatch),
        })
    }

    /// Product of a sequence, left to right.
    pub fn product<'a>(&self, xs: impl IntoIterator<Item = &'a Element>) -> Result<Element> {
        let mut acc = self.identity();
        for x in xs {
            acc = self.mul(&acc, x)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, x: &Element, e: i64) -> Result<Element> {
        let base = if e < 0 { self.inv(x)? } else { x.clone() };
        if let (Platform::MultMod { p }, Element::Residue(r)) = (self, &base) {
            return Ok(Element::Residue(pow_mod(*r, e.unsigned_abs(), *p)));
        }
        let mut acc = self.identity();
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &sq)?;
            }
            k >>= 1;
            if k > 0 {
                sq = self.mul(&sq, &sq)?;
            }
        }
        Ok(acc)
    }

    /// `by⁻¹ x by`.
    pub fn conj(&self, x: &Element, by: &Element) -> Result<Element> {
        self.mul(&self.mul(&self.inv(by)?, x)?, by)
    }

    /// `x⁻¹ y⁻¹ x y`.
    pub fn commutator(&self, x: &Element, y: &Element) -> Result<Element> {
        let xi = self.inv(x)?;
        let yi = self.inv(y)?;
        self.product([&xi, &yi, x, y])
    }

    pub fn commute(&self, x: &Element, y: &Element) -> Result<bool> {
        Ok(self.mul(x, y)? == self.mul(y, x)?)
    }

    pub fn is_identity(&self, x: &Element) -> bool {
        *x == self.identity()
    }

    /// Shift `σ_i ↦ σ_{i+p}` inside the platform's `B_n`.
    pub fn shift(&self, x: &Element, p: u16) -> Result<Element> {
        self.check(x)?;
        match x {
            Element::Braid(b) => Ok(Element::Braid(b.shift(p)?)),
            _ => Err(Error::InvalidArgument("shift needs a braid platform")),
        }
    }

    /// Interpret a braid word on this platform. Words on fewer strands are
    /// embedded.
    pub fn braid_element(&self, w: &BraidWord) -> Result<Element> {
        match *self {
            Platform::Braid { strands } => {
                if !w.is_empty() && w.max_index() >= strands {
                    return Err(Error::StrandOverflow {
                        required: w.max_index() as usize + 1,
                        available: strands,
                    });
                }
                let w = w.clone().with_strands(strands)?;
                Ok(Element::Braid(w.normal_form()?))
            }
            _ => Err(Error::PlatformMismatch),
        }
    }

    pub fn braid_letters(&self, letters: &[i16]) -> Result<Element> {
        match *self {
            Platform::Braid { strands } => {
                self.braid_element(&BraidWord::new(strands, letters.to_vec())?)
            }
            _ => Err(Error::PlatformMismatch),
        }
    }

    /// Standard generating set: Artin generators, `{(1 2), (1 2 ⋯ n)}`, or a
    /// primitive root.
    pub fn generators(&self) -> Vec<Element> {
        match *self {
            Platform::Braid { strands } => (1..strands as i16)
                .map(|i| self.braid_letters(&[i]).expect("valid generator"))
                .collect(),
            Platform::Symmetric { n } => {
                let n = n as usize;
                let mut out = Vec::new();
                if n >= 2 {
                    out.push(Element::Perm(Permutation::transposition(n, 1, 2).unwrap()));
                }
                if n >= 3 {
                    let pts: Vec<usize> = (1..=n).collect();
                    out.push(Element::Perm(Permutation::cycle(n, &pts).unwrap()));
                }
                out
            }
            Platform::MultMod { p } => {
                if p == 2 {
                    Vec::new()
                } else {
                    alloc::vec![Element::Residue(primitive_root(p))]
                }
            }
        }
    }

    /// Every element, in a fixed order consistent with [`Platform::index_of`].
    pub fn elements(&self) -> Result<Vec<Element>> {
        let size = self.finite_size()?;
        Ok(match *self {
            Platform::Symmetric { n } => (0..size)
                .map(|r| Element::Perm(Permutation::unrank(n as usize, r).unwrap()))
                .collect(),
            Platform::MultMod { .. } => (1..=size).map(Element::Residue).collect(),
            Platform::Braid { .. } => alloc::vec![self.identity()],
        })
    }

    fn finite_size(&self) -> Result<u64> {
        match *self {
            Platform::Braid { strands } if strands > 1 => Err(Error::NotFinite),
            Platform::Symmetric { n } if n > 20 => Err(Error::CountOverflow),
            _ => {
                let size = self.order().ok_or(Error::CountOverflow)?;
                if size > MAX_ENUMERATION {
                    Err(Error::CountOverflow)
                } else {
                    Ok(size)
                }
            }
        }
    }

    pub fn index_of(&self, x: &Element) -> Result<usize> {
        self.check(x)?;
        Ok(match x {
            Element::Perm(q) => q.rank() as usize,
            Element::Residue(r) => *r as usize - 1,
            Element::Braid(_) => 0,
        })
    }

    /// A random element. `len` is the word length used on braid platforms.
    pub fn random_element<R: Rng + ?Sized>(&self, len: usize, rng: &mut R) -> Element {
        match *self {
            Platform::Braid { strands } => {
                let w = BraidWord::random(strands, len, rng);
                Element::Braid(w.normal_form().expect("validated strand count"))
            }
            Platform::Symmetric { n } => {
                let n = n as usize;
                let mut img: Vec<u16> = (1..=n as u16).collect();
                for i in (1..n).rev() {
                    img.swap(i, rng.gen_range(0..=i));
                }
                Element::Perm(Permutation::from_images(&img).unwrap())
            }
            Platform::MultMod { p } => Element::Residue(rng.gen_range(1..p)),
        }
    }

    /// `{ c : cx = xc for all x in S }`, by exhaustion.
    pub fn centralizer(&self, s: &[Element]) -> Result<Vec<Element>> {
        if !self.is_finite() {
            return Err(Error::NotFinite);
        }
        let mut out = Vec::new();
        for c in self.elements()? {
            let mut ok = true;
            for x in s {
                if !self.commute(&c, x)? {
                    ok = false;
                    break;
                }
            }
            if ok {
                out.push(c);
            }
        }
        Ok(out)
    }

    /// The subgroup generated by `gens`, by breadth-first closure.
    pub fn subgroup(&self, gens: &[Element]) -> Result<Vec<Element>> {
        if !self.is_finite() {
            return Err(Error::NotFinite);
        }
        self.finite_size()?;
        let id = self.identity();
        let mut seen = alloc::collections::BTreeSet::new();
        seen.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        while let Some(g) = queue.pop_front() {
            for s in gens {
                let h = self.mul(&g, s)?;
                if seen.insert(h.clone()) {
                    queue.push_back(h);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    pub fn encode_element(&self, x: &Element, w: &mut Writer) -> Result<()> {
        self.check(x)?;
        match x {
            Element::Braid(b) => {
                w.u8(TAG_BRAID);
                b.canonical_word().encode(w)?;
            }
            Element::Perm(q) => {
                w.u8(TAG_PERM);
                w.u16(q.len() as u16);
                for v in q.images() {
                    w.u16(v);
                }
            }
            Element::Residue(r) => {
                w.u8(TAG_RESIDUE);
                w.u64(*r);
            }
        }
        Ok(())
    }

    pub fn decode_element(&self, r: &mut Reader<'_>) -> Result<Element> {
        let x = match r.u8()? {
            TAG_BRAID => {
                let w = BraidWord::decode(r)?;
                self.braid_element(&w).map_err(|_| Error::Decode("braid on wrong platform"))?
            }
            TAG_PERM => {
                let n = r.u16()? as usize;
                if n > MAX_POINTS || n * 2 > r.remaining() {
                    return Err(Error::Decode("permutation too large"));
                }
                let mut img = Vec::with_capacity(n);
                for _ in 0..n {
                    img.push(r.u16()?);
                }
                Element::Perm(
                    Permutation::from_images(&img).map_err(|_| Error::Decode("not a permutation"))?,
                )
            }
            TAG_RESIDUE => Element::Residue(r.u64()?),
            _ => return Err(Error::Decode("unknown element tag")),
        };
        self.check(&x).map_err(|_| Error::Decode("element not on platform"))?;
        Ok(x)
    }

    /// Serialization of the canonical form, the input to key extraction.
    /// Braids serialize their normal form rather than a word.
    pub fn encode_canonical(&self, x: &Element, w: &mut Writer) -> Result<()> {
        match x {
            Element::Braid(b) => {
                self.check(x)?;
                w.u8(TAG_BRAID);
                b.encode(w)
            }
            _ => self.encode_element(x, w),
        }
    }
}

fn primitive_root(p: u64) -> u64 {
    let phi = p - 1;
    let mut factors = Vec::new();
    let mut m = phi;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            factors.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, phi / q, p) != 1))
        .unwrap_or(1)
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Braid(b) => write!(f, "{}", b.canonical_word()),
            Element::Perm(q) => write!(f, "{q}"),
            Element::Residue(r) => write!(f, "{r}"),
        }
    }
}

impl Element {
    pub fn as_braid(&self) -> Option<&GarsideNormalForm> {
        match self {
            Element::Braid(b) => Some(b),
            _ => None,
        }
    }

    /// Letter count of the canonical word (0 off braid platforms).
    pub fn word_len(&self) -> usize {
        match self {
            Element::Braid(b) => b.canonical_word().len(),
            _ => 0,
        }
    }
}

/// A closed catalog of endomorphisms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Endomorphism {
    Identity,
    /// `x ↦ p⁻¹ x p`.
    Inner(Element),
    /// `∂^d ∘ η_d` on pure braids.
    PowerShift { d: u16 },
    PointMap(PointMap),
}

/// A full table for an endomorphism of a finite platform, indexed by
/// [`Platform::index_of`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointMap {
    platform: Platform,
    table: Vec<u32>,
}

impl PointMap {
    /// Build from a table and verify `f(xy) = f(x)f(y)` on all pairs.
    pub fn new(platform: Platform, table: Vec<u32>) -> Result<Self> {
        let elems = platform.elements()?;
        if table.len() != elems.len() || table.iter().any(|&v| v as usize >= elems.len()) {
            return Err(Error::NotHomomorphism);
        }
        for (i, x) in elems.iter().enumerate() {
            for (j, y) in elems.iter().enumerate() {
                let xy = platform.index_of(&platform.mul(x, y)?)?;
                let lhs = &elems[table[xy] as usize];
                let rhs = platform.mul(&elems[table[i] as usize], &elems[table[j] as usize])?;
                if *lhs != rhs {
                    return Err(Error::NotHomomorphism);
                }
            }
        }
        Ok(Self { platform, table })
    }

    /// Tabulate any endomorphism of a finite platform.
    pub fn of(f: &Endomorphism, platform: &Platform) -> Result<Self> {
        let elems = platform.elements()?;
        let mut table = Vec::with_capacity(elems.len());
        for x in &elems {
            table.push(platform.index_of(&f.apply(platform, x)?)? as u32);
        }
        Ok(Self {
            platform: *platform,
            table,
        })
    }

    pub fn platform(&self) -> &Platform {
        &self.platform
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    /// `self` after `other`: `x ↦ self(other(x))`.
    pub fn after(&self, other: &Self) -> Self {
        Self {
            platform: self.platform,
            table: other.table.iter().map(|&i| self.table[i as usize]).collect(),
        }
    }

    pub fn is_idempotent(&self) -> bool {
        self.after(self) == *self
    }
}

impl Endomorphism {
    pub fn apply(&self, platform: &Platform, x: &Element) -> Result<Element> {
        platform.check(x)?;
        match self {
            Endomorphism::Identity => Ok(x.clone()),
            Endomorphism::Inner(p) => platform.conj(x, p),
            Endomorphism::PowerShift { d } => {
                let b = x.as_braid().ok_or(Error::PlatformMismatch)?;
                if !b.permutation().is_identity() {
                    return Err(Error::NotPure);
                }
                let w = b.canonical_word().pure_braid_endo(*d)?;
                Ok(Element::Braid(w.normal_form()?))
            }
            Endomorphism::PointMap(m) => {
                if m.platform != *platform {
                    return Err(Error::PlatformMismatch);
                }
                let idx = platform.index_of(x)?;
                let target = m.table[idx] as u64;
                Ok(match *platform {
                    Platform::Symmetric { n } => {
                        Element::Perm(Permutation::unrank(n as usize, target)?)
                    }
                    Platform::MultMod { .. } => Element::Residue(target + 1),
                    Platform::Braid { .. } => platform.identity(),
                })
            }
        }
    }

    /// Whether `f ∘ f = f`. Exhaustive on finite platforms; on braids it is
    /// checked on the generators of the endomorphism's domain.
    pub fn is_idempotent(&self, platform: &Platform) -> Result<bool> {
        if platform.is_finite() {
            return Ok(PointMap::of(self, platform)?.is_idempotent());
        }
        let gens = match self {
            Endomorphism::PowerShift { .. } => pure_generators(platform)?,
            _ => platform.generators(),
        };
        for g in &gens {
            let once = self.apply(platform, g)?;
            if self.apply(platform, &once)? != once {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether the endomorphism can be applied to `x` (purity for shifts).
    pub fn accepts(&self, x: &Element) -> bool {
        match (self, x) {
            (Endomorphism::PowerShift { .. }, Element::Braid(b)) => b.permutation().is_identity(),
            (Endomorphism::PowerShift { .. }, _) => false,
            _ => true,
        }
    }
}

/// Standard generators `A_{ij}` of the pure braid group `P_n`.
pub fn pure_generators(platform: &Platform) -> Result<Vec<Element>> {
    let Platform::Braid { strands } = *platform else {
        return Err(Error::PlatformMismatch);
    };
    let mut out = Vec::new();
    for j in 2..=strands as i16 {
        for i in 1..j {
            // σ_{j-1} ⋯ σ_{i+1} σ_i² σ_{i+1}⁻¹ ⋯ σ_{j-1}⁻¹
            let mut letters: Vec<i16> = ((i + 1)..j).rev().collect();
            letters.extend([i, i]);
            letters.extend(((i + 1)..j).map(|e| -e));
            out.push(platform.braid_letters(&letters)?);
        }
    }
    Ok(out)
}

/// Every endomorphism of a small finite platform, found by trying all images
/// of the standard generators and keeping the consistent ones.
pub fn enumerate_endomorphisms(platform: &Platform) -> Result<Vec<PointMap>> {
    let elems = platform.elements()?;
    let gens = platform.generators();
    let size = elems.len() as u64;
    let combos = size
        .checked_pow(gens.len() as u32)
        .filter(|&c| c <= MAX_ENUMERATION)
        .ok_or(Error::CountOverflow)?;
    let mut out = Vec::new();
    for code in 0..combos {
        let mut c = code;
        let images: Vec<&Element> = gens
            .iter()
            .map(|_| {
                let e = &elems[(c % size) as usize];
                c /= size;
                e
            })
            .collect();
        if let Some(table) = extend_on_generators(platform, &elems, &gens, &images)? {
            out.push(PointMap {
                platform: *platform,
                table,
            });
        }
    }
    Ok(out)
}

fn extend_on_generators(
    platform: &Platform,
    elems: &[Element],
    gens: &[Element],
    images: &[&Element],
) -> Result<Option<Vec<u32>>> {
    let mut map: BTreeMap<usize, Element> = BTreeMap::new();
    let id = platform.identity();
    map.insert(platform.index_of(&id)?, id.clone());
    let mut queue = VecDeque::from([(id.clone(), id)]);
    // f(g s) = f(g) f(s) on every Cayley-graph edge is enough for a homomorphism.
    while let Some((g, fg)) = queue.pop_front() {
        for (s, fs) in gens.iter().zip(images) {
            let h = platform.mul(&g, s)?;
            let fh = platform.mul(&fg, fs)?;
            let k = platform.index_of(&h)?;
            match map.get(&k) {
                Some(prev) if *prev != fh => return Ok(None),
                Some(_) => {}
                None => {
                    map.insert(k, fh.clone());
                    queue.push_back((h, fh));
                }
            }
        }
    }
    if map.len() != elems.len() {
        return Ok(None);
    }
    let mut table = Vec::with_capacity(elems.len());
    for v in map.values() {
        table.push(platform.index_of(v)? as u32);
    }
    Ok(Some(table))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(n: usize, c: &[usize]) -> Element {
        Element::Perm(Permutation::cycle(n, c).unwrap())
    }

    #[test]
    fn group_examples() {
        let z = Platform::mult_mod(23).unwrap();
        assert_eq!(
            z.mul(&Element::Residue(5), &Element::Residue(5)).unwrap(),
            Element::Residue(2)
        );
        let s3 = Platform::symmetric(3).unwrap();
        let t = perm(3, &[1, 2]);
        assert!(s3.is_identity(&s3.mul(&t, &t).unwrap()));
        let b3 = Platform::braid(3).unwrap();
        assert_eq!(
            b3.braid_letters(&[1, 2, 1]).unwrap(),
            b3.braid_letters(&[2, 1, 2]).unwrap()
        );
        assert!(Platform::mult_mod(21).is_err());
        assert!(Platform::symmetric(0).is_err());
    }

    #[test]
    fn mismatched_elements_rejected() {
        let s3 = Platform::symmetric(3).unwrap();
        let s4 = Platform::symmetric(4).unwrap();
        let x = s4.identity();
        assert_eq!(s3.mul(&x, &x), Err(Error::PlatformMismatch));
    }

    #[test]
    fn endomorphism_examples() {
        let s3 = Platform::symmetric(3).unwrap();
        let p = perm(3, &[1, 2, 3]);
        let inner = Endomorphism::Inner(p.clone());
        assert_eq!(inner.apply(&s3, &p).unwrap(), p);
        let b3 = Platform::braid(3).unwrap();
        let f = Endomorphism::PowerShift { d: 1 };
        let x = b3.braid_letters(&[1, 1]).unwrap();
        assert_eq!(f.apply(&b3, &x).unwrap(), b3.braid_letters(&[2, 2]).unwrap());
        assert_eq!(
            f.apply(&b3, &b3.braid_letters(&[1]).unwrap()),
            Err(Error::NotPure)
        );
    }

    #[test]
    fn centralizer_examples() {
        let s3 = Platform::symmetric(3).unwrap();
        assert_eq!(s3.centralizer(&[s3.identity()]).unwrap().len(), 6);
        let c = perm(3, &[1, 2, 3]);
        let cent = s3.centralizer(core::slice::from_ref(&c)).unwrap();
        assert_eq!(cent.len(), 3);
        assert!(cent.contains(&c) && cent.contains(&perm(3, &[1, 3, 2])));
        let s4 = Platform::symmetric(4).unwrap();
        let all = s4.elements().unwrap();
        assert_eq!(s4.centralizer(&all).unwrap(), alloc::vec![s4.identity()]);
        assert_eq!(
            Platform::braid(3).unwrap().centralizer(&[]),
            Err(Error::NotFinite)
        );
    }

    #[test]
    fn point_maps_are_checked() {
        let s3 = Platform::symmetric(3).unwrap();
        let mut bad: Vec<u32> = (0..6).collect();
        bad.swap(1, 2);
        assert_eq!(PointMap::new(s3, bad), Err(Error::NotHomomorphism));
        let id: Vec<u32> = (0..6).collect();
        assert!(PointMap::new(s3, id).is_ok());
        // S_3 has 10 endomorphisms: 6 automorphisms, 3 onto order-2 images, 1 trivial.
        assert_eq!(enumerate_endomorphisms(&s3).unwrap().len(), 10);
    }

    #[test]
    fn element_encoding_roundtrip() {
        for plat in [
            Platform::braid(4).unwrap(),
            Platform::symmetric(5).unwrap(),
            Platform::mult_mod(101).unwrap(),
        ] {
            let mut rng = crate::seeded_rng(3);
            for _ in 0..20 {
                let x = plat.random_element(12, &mut rng);
                let mut w = Writer::new();
                plat.encode_element(&x, &mut w).unwrap();
                let mut r = Reader::new(w.as_slice());
                assert_eq!(plat.decode_element(&mut r).unwrap(), x);
                assert!(r.is_empty());
            }
        }
    }

    #[test]
    fn pure_generators_are_pure() {
        let b4 = Platform::braid(4).unwrap();
        let g = pure_generators(&b4).unwrap();
        assert_eq!(g.len(), 6);
        assert!(g.iter().all(|x| x.as_braid().unwrap().permutation().is_identity()));
        assert!(!Endomorphism::PowerShift { d: 1 }.is_idempotent(&b4).unwrap());
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root(23), 5);
        assert_eq!(primitive_root(7), 3);
    }
}
