//! Binary operations on group platforms and the law checkers for them.
//!
//! Every operation is described by an [`OpDescriptor`] and evaluated against
//! a [`Platform`]. The checkers draw operands from a [`Carrier`], which also
//! covers Laver tables, and report the first violating tuple.

use alloc::vec::Vec;
use rand::Rng;

use crate::braid::BraidWord;
use crate::codec::{Reader, Writer};
use crate::platform::{pure_generators, Element, Endomorphism, Platform, PointMap};
use crate::{Error, Result};

mod conditions;
mod laver;

pub use conditions::{
    check_fconj_conditions, check_shifted_conditions, check_symconj_conditions,
    generalized_shifted_parameter, make_generalized_family, make_generalized_shifted,
    make_split_shifted, split_shifted_parameter, GeneralizedParams,
};
pub use laver::{LaverTable, MAX_LAVER_LEVEL};

/// Default sample counts for the randomized checkers.
pub const FINITE_SAMPLES: usize = 1000;
pub const BRAID_SAMPLES: usize = 200;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OpDescriptor {
    /// `x⁻¹ y x`
    Conj,
    /// `f(x⁻¹ y) x`
    FConj(Endomorphism),
    /// `x f(y x⁻¹)`
    FConjRev(Endomorphism),
    /// `f(x⁻¹) y x`, not LD
    TwistedConj(Endomorphism),
    /// `x y⁻¹ x`
    SymConj,
    /// `f(x y⁻¹) x`, needs `f` idempotent
    FSymConj(Endomorphism),
    /// `x f(y⁻¹ x)`, needs `f` idempotent
    FSymConjRev(Endomorphism),
    /// `x y⁻¹ x`, the same formula as [`OpDescriptor::SymConj`]
    Bullet,
    /// `x^k y x^l`
    BetaKl { k: u32, l: u32 },
    /// `∂^p(x⁻¹) a ∂^p(y) x`
    Shifted { p: u16, a: BraidWord },
    /// The same formula, conventionally with `a` inverted relative to its
    /// [`OpDescriptor::Shifted`] partner.
    ShiftedBar { p: u16, a: BraidWord },
    /// `x ∂^p(y) a ∂^p(x⁻¹)`
    ShiftedRev { p: u16, a: BraidWord },
    Laver(LaverTable),
    /// `f(x⁻¹) g(y) h(x)`
    ConjTriple {
        f: Endomorphism,
        g: Endomorphism,
        h: Endomorphism,
    },
    /// `f(x) g(y⁻¹) h(x)`
    SymTriple {
        f: Endomorphism,
        g: Endomorphism,
        h: Endomorphism,
    },
}

impl OpDescriptor {
    /// Dehornoy's shifted conjugacy `∂(x⁻¹) σ_1 ∂(y) x`.
    pub fn shifted_sigma1() -> Self {
        OpDescriptor::Shifted {
            p: 1,
            a: BraidWord::from_parts_unchecked(2, alloc::vec![1]),
        }
    }

    /// Its partner `∂(x⁻¹) σ_1⁻¹ ∂(y) x`.
    pub fn shifted_bar_sigma1() -> Self {
        OpDescriptor::ShiftedBar {
            p: 1,
            a: BraidWord::from_parts_unchecked(2, alloc::vec![-1]),
        }
    }

    pub fn laver(n: u8) -> Result<Self> {
        Ok(OpDescriptor::Laver(LaverTable::new(n)?))
    }

    pub fn name(&self) -> &'static str {
        match self {
            OpDescriptor::Conj => "conj",
            OpDescriptor::FConj(_) => "f_conj",
            OpDescriptor::FConjRev(_) => "f_conj_rev",
            OpDescriptor::TwistedConj(_) => "twisted_conj",
            OpDescriptor::SymConj => "sym_conj",
            OpDescriptor::FSymConj(_) => "f_sym_conj",
            OpDescriptor::FSymConjRev(_) => "f_sym_conj_rev",
            OpDescriptor::Bullet => "bullet",
            OpDescriptor::BetaKl { .. } => "beta_kl",
            OpDescriptor::Shifted { .. } => "shifted",
            OpDescriptor::ShiftedBar { .. } => "shifted_bar",
            OpDescriptor::ShiftedRev { .. } => "shifted_rev",
            OpDescriptor::Laver(_) => "laver",
            OpDescriptor::ConjTriple { .. } => "conj_triple",
            OpDescriptor::SymTriple { .. } => "sym_triple",
        }
    }

    /// The shift amount of shifted kinds, 0 otherwise.
    pub fn shift_amount(&self) -> u16 {
        match self {
            OpDescriptor::Shifted { p, .. }
            | OpDescriptor::ShiftedBar { p, .. }
            | OpDescriptor::ShiftedRev { p, .. } => *p,
            _ => 0,
        }
    }

    /// Check the descriptor's own invariants against a platform.
    pub fn validate(&self, platform: &Platform) -> Result<()> {
        match self {
            OpDescriptor::FSymConj(f) | OpDescriptor::FSymConjRev(f) => {
                if !f.is_idempotent(platform)? {
                    return Err(Error::NotIdempotent);
                }
            }
            OpDescriptor::Shifted { p, a }
            | OpDescriptor::ShiftedBar { p, a }
            | OpDescriptor::ShiftedRev { p, a } => {
                if !matches!(platform, Platform::Braid { .. }) {
                    return Err(Error::PlatformMismatch);
                }
                if *p == 0 {
                    return Err(Error::InvalidArgument("shift amount must be positive"));
                }
                if a.normal_form()?.canonical_word().max_index() >= 2 * p {
                    return Err(Error::ConditionViolation("shift parameter a must lie in B_2p"));
                }
            }
            _ => {}
        }
        Ok(())
    }

    pub fn apply(&self, platform: &Platform, x: &Element, y: &Element) -> Result<Element> {
        apply_op(self, Some(platform), x, y)
    }

    pub fn encode(&self, platform: &Platform, w: &mut Writer) -> Result<()> {
        let endo = |w: &mut Writer, f: &Endomorphism| encode_endo(platform, f, w);
        match self {
            OpDescriptor::Conj => {
                w.u8(0x01);
            }
            OpDescriptor::FConj(f) => {
                w.u8(0x02);
                endo(w, f)?;
            }
            OpDescriptor::FConjRev(f) => {
                w.u8(0x03);
                endo(w, f)?;
            }
            OpDescriptor::TwistedConj(f) => {
                w.u8(0x04);
                endo(w, f)?;
            }
            OpDescriptor::SymConj => {
                w.u8(0x05);
            }
            OpDescriptor::FSymConj(f) => {
                w.u8(0x06);
                endo(w, f)?;
            }
            OpDescriptor::FSymConjRev(f) => {
                w.u8(0x07);
                endo(w, f)?;
            }
            OpDescriptor::Bullet => {
                w.u8(0x08);
            }
            OpDescriptor::BetaKl { k, l } => {
                w.u8(0x09).u32(*k).u32(*l);
            }
            OpDescriptor::Shifted { p, a } => {
                w.u8(0x0A).u16(*p);
                a.encode(w)?;
            }
            OpDescriptor::ShiftedBar { p, a } => {
                w.u8(0x0B).u16(*p);
                a.encode(w)?;
            }
            OpDescriptor::ShiftedRev { p, a } => {
                w.u8(0x0C).u16(*p);
                a.encode(w)?;
            }
            OpDescriptor::Laver(t) => {
                w.u8(0x0D).u8(t.level());
            }
            OpDescriptor::ConjTriple { f, g, h } => {
                w.u8(0x0E);
                endo(w, f)?;
                endo(w, g)?;
                endo(w, h)?;
            }
            OpDescriptor::SymTriple { f, g, h } => {
                w.u8(0x0F);
                endo(w, f)?;
                endo(w, g)?;
                endo(w, h)?;
            }
        }
        Ok(())
    }

    pub fn decode(platform: &Platform, r: &mut Reader<'_>) -> Result<Self> {
        let endo = |r: &mut Reader<'_>| decode_endo(platform, r);
        Ok(match r.u8()? {
            0x01 => OpDescriptor::Conj,
            0x02 => OpDescriptor::FConj(endo(r)?),
            0x03 => OpDescriptor::FConjRev(endo(r)?),
            0x04 => OpDescriptor::TwistedConj(endo(r)?),
            0x05 => OpDescriptor::SymConj,
            0x06 => OpDescriptor::FSymConj(endo(r)?),
            0x07 => OpDescriptor::FSymConjRev(endo(r)?),
            0x08 => OpDescriptor::Bullet,
            0x09 => OpDescriptor::BetaKl {
                k: r.u32()?,
                l: r.u32()?,
            },
            0x0A => OpDescriptor::Shifted {
                p: r.u16()?,
                a: BraidWord::decode(r)?,
            },
            0x0B => OpDescriptor::ShiftedBar {
                p: r.u16()?,
                a: BraidWord::decode(r)?,
            },
            0x0C => OpDescriptor::ShiftedRev {
                p: r.u16()?,
                a: BraidWord::decode(r)?,
            },
            0x0D => OpDescriptor::Laver(
                LaverTable::new(r.u8()?).map_err(|_| Error::Decode("Laver level"))?,
            ),
            0x0E => OpDescriptor::ConjTriple {
                f: endo(r)?,
                g: endo(r)?,
                h: endo(r)?,
            },
            0x0F => OpDescriptor::SymTriple {
                f: endo(r)?,
                g: endo(r)?,
                h: endo(r)?,
            },
            _ => return Err(Error::Decode("unknown operation tag")),
        })
    }
}

pub fn encode_endo(platform: &Platform, f: &Endomorphism, w: &mut Writer) -> Result<()> {
    match f {
        Endomorphism::Identity => {
            w.u8(0x00);
        }
        Endomorphism::Inner(p) => {
            w.u8(0x01);
            platform.encode_element(p, w)?;
        }
        Endomorphism::PowerShift { d } => {
            w.u8(0x02).u16(*d);
        }
        Endomorphism::PointMap(m) => {
            w.u8(0x03);
            w.len(m.table().len())?;
            for &v in m.table() {
                w.u32(v);
            }
        }
    }
    Ok(())
}

pub fn decode_endo(platform: &Platform, r: &mut Reader<'_>) -> Result<Endomorphism> {
    Ok(match r.u8()? {
        0x00 => Endomorphism::Identity,
        0x01 => Endomorphism::Inner(platform.decode_element(r)?),
        0x02 => Endomorphism::PowerShift { d: r.u16()? },
        0x03 => {
            let n = r.count(4)?;
            let mut table = Vec::with_capacity(n);
            for _ in 0..n {
                table.push(r.u32()?);
            }
            Endomorphism::PointMap(
                PointMap::new(*platform, table).map_err(|_| Error::Decode("bad point map"))?,
            )
        }
        _ => return Err(Error::Decode("unknown endomorphism tag")),
    })
}

fn laver_value(x: &Element) -> Result<usize> {
    match x {
        Element::Residue(v) => Ok(*v as usize),
        _ => Err(Error::PlatformMismatch),
    }
}

fn apply_op(op: &OpDescriptor, platform: Option<&Platform>, x: &Element, y: &Element) -> Result<Element> {
    if let OpDescriptor::Laver(t) = op {
        return Ok(Element::Residue(t.op(laver_value(x)?, laver_value(y)?)? as u64));
    }
    let g = platform.ok_or(Error::PlatformMismatch)?;
    let inv = |v: &Element| g.inv(v);
    let mul = |a: &Element, b: &Element| g.mul(a, b);
    match op {
        OpDescriptor::Conj => g.conj(y, x),
        OpDescriptor::FConj(f) => mul(&f.apply(g, &mul(&inv(x)?, y)?)?, x),
        OpDescriptor::FConjRev(f) => mul(x, &f.apply(g, &mul(y, &inv(x)?)?)?),
        OpDescriptor::TwistedConj(f) => g.product([&f.apply(g, &inv(x)?)?, y, x]),
        OpDescriptor::SymConj | OpDescriptor::Bullet => g.product([x, &inv(y)?, x]),
        OpDescriptor::FSymConj(f) => mul(&f.apply(g, &mul(x, &inv(y)?)?)?, x),
        OpDescriptor::FSymConjRev(f) => mul(x, &f.apply(g, &mul(&inv(y)?, x)?)?),
        OpDescriptor::BetaKl { k, l } => {
            g.product([&g.pow(x, *k as i64)?, y, &g.pow(x, *l as i64)?])
        }
        OpDescriptor::Shifted { p, a } | OpDescriptor::ShiftedBar { p, a } => {
            let a = g.braid_element(a)?;
            let sx = g.shift(&inv(x)?, *p)?;
            let sy = g.shift(y, *p)?;
            g.product([&sx, &a, &sy, x])
        }
        OpDescriptor::ShiftedRev { p, a } => {
            let a = g.braid_element(a)?;
            let sy = g.shift(y, *p)?;
            let sx = g.shift(&inv(x)?, *p)?;
            g.product([x, &sy, &a, &sx])
        }
        OpDescriptor::ConjTriple { f, g: gg, h } => g.product([
            &f.apply(g, &inv(x)?)?,
            &gg.apply(g, y)?,
            &h.apply(g, x)?,
        ]),
        OpDescriptor::SymTriple { f, g: gg, h } => g.product([
            &f.apply(g, x)?,
            &gg.apply(g, &inv(y)?)?,
            &h.apply(g, x)?,
        ]),
        OpDescriptor::Laver(_) => unreachable!(),
    }
}

/// Where law-check operands come from.
#[derive(Clone, Debug)]
pub enum Carrier {
    /// Uniform elements of a finite platform.
    Finite(Platform),
    /// Random words of `operand_len` letters in `B_{operand_strands}`,
    /// embedded into the braid platform. With `pure`, products of
    /// `operand_len` random pure generators instead.
    Braid {
        platform: Platform,
        operand_strands: u16,
        operand_len: usize,
        pure: bool,
    },
    Laver(LaverTable),
}

impl Carrier {
    pub fn platform(&self) -> Option<&Platform> {
        match self {
            Carrier::Finite(p) | Carrier::Braid { platform: p, .. } => Some(p),
            Carrier::Laver(_) => None,
        }
    }

    pub fn elements(&self) -> Result<Vec<Element>> {
        match self {
            Carrier::Finite(p) => p.elements(),
            Carrier::Laver(t) => Ok((1..=t.size() as u64).map(Element::Residue).collect()),
            Carrier::Braid { .. } => Err(Error::NotFinite),
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Element> {
        match self {
            Carrier::Finite(p) => Ok(p.random_element(0, rng)),
            Carrier::Laver(t) => Ok(Element::Residue(rng.gen_range(1..=t.size() as u64))),
            Carrier::Braid {
                platform,
                operand_strands,
                operand_len,
                pure,
            } => {
                if *pure {
                    let sub = Platform::braid(*operand_strands)?;
                    let gens = pure_generators(&sub)?;
                    let mut letters: Vec<i16> = Vec::new();
                    for _ in 0..*operand_len {
                        if gens.is_empty() {
                            break;
                        }
                        let g = gens[rng.gen_range(0..gens.len())]
                            .as_braid()
                            .expect("braid")
                            .canonical_word();
                        if rng.gen::<bool>() {
                            letters.extend_from_slice(g.letters());
                        } else {
                            letters.extend(g.invert().letters());
                        }
                    }
                    platform.braid_letters(&letters)
                } else {
                    let w = BraidWord::random(*operand_strands, *operand_len, rng);
                    platform.braid_element(&w)
                }
            }
        }
    }

    pub fn apply(&self, op: &OpDescriptor, x: &Element, y: &Element) -> Result<Element> {
        apply_op(op, self.platform(), x, y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sampling {
    Random(usize),
    /// Every triple; finite carriers only.
    Exhaustive,
}

/// Outcome of a law check: the number of tuples tried and the first failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub checked: usize,
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    /// Indices into the family of the two operations involved.
    pub ops: (usize, usize),
    pub triple: [Element; 3],
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

fn check_triples<R, F>(carrier: &Carrier, sampling: Sampling, rng: &mut R, mut law: F) -> Result<Verdict>
where
    R: Rng + ?Sized,
    F: FnMut(&Element, &Element, &Element) -> Result<bool>,
{
    let mut checked = 0;
    let fail = |checked, x: &Element, y: &Element, z: &Element| Verdict {
        checked,
        counterexample: Some(Counterexample {
            ops: (0, 0),
            triple: [x.clone(), y.clone(), z.clone()],
        }),
    };
    match sampling {
        Sampling::Exhaustive => {
            let all = carrier.elements()?;
            for x in &all {
                for y in &all {
                    for z in &all {
                        checked += 1;
                        if !law(x, y, z)? {
                            return Ok(fail(checked, x, y, z));
                        }
                    }
                }
            }
        }
        Sampling::Random(n) => {
            for _ in 0..n {
                let x = carrier.sample(rng)?;
                let y = carrier.sample(rng)?;
                let z = carrier.sample(rng)?;
                checked += 1;
                if !law(&x, &y, &z)? {
                    return Ok(fail(checked, &x, &y, &z));
                }
            }
        }
    }
    Ok(Verdict {
        checked,
        counterexample: None,
    })
}

/// Check `x *_1 (y *_2 z) = (x *_1 y) *_2 (x *_1 z)`.
pub fn check_distributivity<R: Rng + ?Sized>(
    op1: &OpDescriptor,
    op2: &OpDescriptor,
    carrier: &Carrier,
    sampling: Sampling,
    rng: &mut R,
) -> Result<Verdict> {
    check_triples(carrier, sampling, rng, |x, y, z| {
        let lhs = carrier.apply(op1, x, &carrier.apply(op2, y, z)?)?;
        let rhs = carrier.apply(op2, &carrier.apply(op1, x, y)?, &carrier.apply(op1, x, z)?)?;
        Ok(lhs == rhs)
    })
}

/// Left self-distributivity `x * (y * z) = (x * y) * (x * z)`.
pub fn verify_ld<R: Rng + ?Sized>(
    op: &OpDescriptor,
    carrier: &Carrier,
    sampling: Sampling,
    rng: &mut R,
) -> Result<Verdict> {
    check_distributivity(op, op, carrier, sampling, rng)
}

/// The mixed law for every ordered pair of the family, `sampling` per pair.
pub fn verify_multi_ld<R: Rng + ?Sized>(
    family: &[OpDescriptor],
    carrier: &Carrier,
    sampling: Sampling,
    rng: &mut R,
) -> Result<Verdict> {
    let mut checked = 0;
    for (i, a) in family.iter().enumerate() {
        for (j, b) in family.iter().enumerate() {
            let mut v = check_distributivity(a, b, carrier, sampling, rng)?;
            checked += v.checked;
            if let Some(c) = v.counterexample.as_mut() {
                c.ops = (i, j);
                return Ok(Verdict {
                    checked,
                    counterexample: v.counterexample,
                });
            }
        }
    }
    Ok(Verdict {
        checked,
        counterexample: None,
    })
}

/// The law twisted conjugacy does satisfy:
/// `α * (β * γ) = (α * β) * (f(α) * γ)` for `x * y = f(x⁻¹) y x`.
pub fn verify_near_ld<R: Rng + ?Sized>(
    f: &Endomorphism,
    carrier: &Carrier,
    sampling: Sampling,
    rng: &mut R,
) -> Result<Verdict> {
    let platform = *carrier.platform().ok_or(Error::PlatformMismatch)?;
    let op = OpDescriptor::TwistedConj(f.clone());
    check_triples(carrier, sampling, rng, |a, b, c| {
        let lhs = carrier.apply(&op, a, &carrier.apply(&op, b, c)?)?;
        let fa = f.apply(&platform, a)?;
        let rhs = carrier.apply(&op, &carrier.apply(&op, a, b)?, &carrier.apply(&op, &fa, c)?)?;
        Ok(lhs == rhs)
    })
}

/// Strands needed so that nested shifted products of depth `depth` over
/// operands in `B_base` stay inside the platform.
pub fn shifted_strands(base: u16, p: u16, depth: usize) -> u16 {
    base.max(2 * p) + p * (depth as u16 + 2)
}
