//! Parameter conditions for the (f,g,h)-conjugacy families and the
//! generalized shifted conjugacy operations.

use alloc::vec::Vec;

use super::OpDescriptor;
use crate::braid::BraidWord;
use crate::platform::{Endomorphism, Platform, PointMap};
use crate::{Error, Result};

fn tables(platform: &Platform, f: &Endomorphism, g: &Endomorphism, h: &Endomorphism) -> Result<[PointMap; 3]> {
    if !platform.is_finite() {
        return Err(Error::NotFinite);
    }
    Ok([
        PointMap::of(f, platform)?,
        PointMap::of(g, platform)?,
        PointMap::of(h, platform)?,
    ])
}

/// `fh = f, gh = hg = hf, fg = gf = f², h² = h`, with `fh = f ∘ h`, checked
/// pointwise. These are the conditions for `f(x⁻¹) g(y) h(x)` to be LD.
pub fn check_fconj_conditions(
    f: &Endomorphism,
    g: &Endomorphism,
    h: &Endomorphism,
    platform: &Platform,
) -> Result<bool> {
    let [f, g, h] = tables(platform, f, g, h)?;
    let c = |a: &PointMap, b: &PointMap| a.after(b);
    Ok(c(&f, &h) == f
        && c(&g, &h) == c(&h, &g)
        && c(&h, &g) == c(&h, &f)
        && c(&f, &g) == c(&g, &f)
        && c(&g, &f) == c(&f, &f)
        && c(&h, &h) == h)
}

/// `f² = f, fh = gh = fg, hg = gf = hf, h² = h`: the conditions for
/// `f(x) g(y⁻¹) h(x)` to be LD.
pub fn check_symconj_conditions(
    f: &Endomorphism,
    g: &Endomorphism,
    h: &Endomorphism,
    platform: &Platform,
) -> Result<bool> {
    let [f, g, h] = tables(platform, f, g, h)?;
    let c = |a: &PointMap, b: &PointMap| a.after(b);
    Ok(c(&f, &f) == f
        && c(&f, &h) == c(&g, &h)
        && c(&g, &h) == c(&f, &g)
        && c(&h, &g) == c(&g, &f)
        && c(&g, &f) == c(&h, &f)
        && c(&h, &h) == h)
}

fn words_equal(u: &BraidWord, v: &BraidWord) -> Result<bool> {
    let n = u.strands().max(v.strands());
    Ok(u.clone().with_strands(n)?.normal_form()? == v.clone().with_strands(n)?.normal_form()?)
}

fn words_commute(u: &BraidWord, v: &BraidWord) -> Result<bool> {
    words_equal(&u.concat(v), &v.concat(u))
}

/// For `f = ∂^p`: `a` lies in `B_{2p}` (so it commutes with `∂^{2p}` of
/// everything) and `a ∂^p(a) a = ∂^p(a) a ∂^p(a)`.
pub fn check_shifted_conditions(p: u16, a: &BraidWord) -> Result<bool> {
    if p == 0 {
        return Err(Error::InvalidArgument("shift amount must be positive"));
    }
    if a.normal_form()?.canonical_word().max_index() >= 2 * p {
        return Ok(false);
    }
    let sa = a.shift(p);
    let lhs = a.concat(&sa).concat(a);
    let rhs = sa.concat(a).concat(&sa);
    words_equal(&lhs, &rhs)
}

fn in_b(w: &BraidWord, n: u16) -> Result<()> {
    if !w.is_empty() && w.max_index() >= n {
        return Err(Error::InvalidArgument("parameter braid outside B_p"));
    }
    Ok(())
}

/// `a′ τ_{p,p}^{±1} a″` without any condition check.
pub fn generalized_shifted_parameter(p: u16, a1: &BraidWord, a2: &BraidWord, inverse_tau: bool) -> Result<BraidWord> {
    in_b(a1, p)?;
    in_b(a2, p)?;
    let t = BraidWord::tau(p, p)?;
    let t = if inverse_tau { t.invert() } else { t };
    a1.concat(&t).concat(a2).with_strands(2 * p)
}

/// `x * y = ∂^p(x⁻¹) a ∂^p(y) x` with `a = a′ τ_{p,p} a″`. Requires
/// `[a′, a″] = 1`.
pub fn make_generalized_shifted(p: u16, a1: &BraidWord, a2: &BraidWord) -> Result<OpDescriptor> {
    let a = generalized_shifted_parameter(p, a1, a2, false)?;
    if !words_commute(a1, a2)? {
        return Err(Error::ConditionViolation("[a', a''] != 1"));
    }
    Ok(OpDescriptor::Shifted { p, a })
}

/// One member `a_i = a_i′ τ_{p,p}^{±1} a_i″` of a generalized shifted family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedParams {
    pub a1: BraidWord,
    pub a2: BraidWord,
    pub inverse_tau: bool,
}

/// A multi-LD family of generalized shifted operations. Requires
/// `[a_i′, a_j′] = [a_i′, a_j″] = 1` for all `i, j`; the `a_i″` need not
/// commute among themselves.
pub fn make_generalized_family(p: u16, members: &[GeneralizedParams]) -> Result<Vec<OpDescriptor>> {
    for mi in members {
        for mj in members {
            if !words_commute(&mi.a1, &mj.a1)? {
                return Err(Error::ConditionViolation("[a_i', a_j'] != 1"));
            }
            if !words_commute(&mi.a1, &mj.a2)? {
                return Err(Error::ConditionViolation("[a_i', a_j''] != 1"));
            }
        }
    }
    members
        .iter()
        .map(|m| {
            Ok(OpDescriptor::Shifted {
                p,
                a: generalized_shifted_parameter(p, &m.a1, &m.a2, m.inverse_tau)?,
            })
        })
        .collect()
}

/// `a = a1′ ∂^{p1}(a2′) ∂^{p1}(τ_{p2,p}) τ_{p,p1}⁻¹ a1″ ∂^{p1}(a2″)` with
/// `p = p1 + p2`, unchecked.
pub fn split_shifted_parameter(
    p1: u16,
    p2: u16,
    a1: (&BraidWord, &BraidWord),
    a2: (&BraidWord, &BraidWord),
) -> Result<BraidWord> {
    if p1 == 0 || p2 == 0 {
        return Err(Error::InvalidArgument("split needs p1, p2 >= 1"));
    }
    in_b(a1.0, p1)?;
    in_b(a1.1, p1)?;
    in_b(a2.0, p2)?;
    in_b(a2.1, p2)?;
    let p = p1 + p2;
    let w = a1
        .0
        .concat(&a2.0.shift(p1))
        .concat(&BraidWord::tau(p2, p)?.shift(p1))
        .concat(&BraidWord::tau(p, p1)?.invert())
        .concat(a1.1)
        .concat(&a2.1.shift(p1));
    w.with_strands(2 * p)
}

/// The split operation; requires `[a1′, a1″] = [a2′, a2″] = 1`.
pub fn make_split_shifted(
    p1: u16,
    p2: u16,
    a1: (&BraidWord, &BraidWord),
    a2: (&BraidWord, &BraidWord),
) -> Result<OpDescriptor> {
    let a = split_shifted_parameter(p1, p2, a1, a2)?;
    if !words_commute(a1.0, a1.1)? {
        return Err(Error::ConditionViolation("[a1', a1''] != 1"));
    }
    if !words_commute(a2.0, a2.1)? {
        return Err(Error::ConditionViolation("[a2', a2''] != 1"));
    }
    Ok(OpDescriptor::Shifted { p: p1 + p2, a })
}
