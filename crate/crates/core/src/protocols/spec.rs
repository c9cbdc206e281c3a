//! Spec constructors and their validation.

use alloc::vec::Vec;

use super::{shifted_parameter_ok, Instantiation, KeyPolicy, ProtocolSpec, ShiftedVariant};
use crate::braid::BraidWord;
use crate::ldops::{shifted_strands, OpDescriptor};
use crate::platform::{Element, Endomorphism, Platform};
use crate::{Error, Result};

fn check_all(g: &Platform, xs: &[Element]) -> Result<()> {
    xs.iter().try_for_each(|x| g.check(x))
}

fn commute_all(g: &Platform, a: &[Element], b: &[Element], what: &'static str) -> Result<()> {
    for x in a {
        for y in b {
            if !g.commute(x, y)? {
                return Err(Error::CommutationViolation(what));
            }
        }
    }
    Ok(())
}

fn nonempty(s: &[Element], t: &[Element]) -> Result<()> {
    if s.is_empty() || t.is_empty() {
        return Err(Error::InvalidArgument("generator lists must be nonempty"));
    }
    Ok(())
}

/// Strands actually used by a braid element (at least 1).
fn used_strands(x: &Element) -> u16 {
    x.as_braid()
        .map(|b| {
            let w = b.canonical_word();
            if w.is_empty() { 1 } else { w.max_index() + 1 }
        })
        .unwrap_or(1)
}

pub(super) fn validate(spec: &ProtocolSpec) -> Result<()> {
    let g = &spec.platform;
    if !(0.0..=1.0).contains(&spec.policy.comb_bias) {
        return Err(Error::InvalidArgument("comb bias must lie in [0, 1]"));
    }
    if spec.policy.leaves == 0 {
        return Err(Error::InvalidArgument("secrets need at least one leaf"));
    }
    match &spec.instantiation {
        Instantiation::ClassicDh {
            g: base,
            alice_secret,
            bob_secret,
        } => {
            let Platform::MultMod { p } = *g else {
                return Err(Error::PlatformMismatch);
            };
            g.check(base)?;
            for e in [alice_secret, bob_secret].into_iter().flatten() {
                if *e == 0 || *e >= p {
                    return Err(Error::InvalidArgument("exponent out of range"));
                }
            }
        }
        Instantiation::GroupDh { a1, a2, b1, b2, x } => {
            for xs in [a1, a2, b1, b2] {
                check_all(g, xs)?;
            }
            g.check(x)?;
            commute_all(g, a1, b1, "[A1, B1] != 1")?;
            commute_all(g, a2, b2, "[A2, B2] != 1")?;
        }
        Instantiation::KoLee { a, b, x } | Instantiation::Str { a, b, x } => {
            check_all(g, a)?;
            check_all(g, b)?;
            g.check(x)?;
            commute_all(g, a, b, "[A, B] != 1")?;
        }
        Instantiation::AagCommutator { s, t }
        | Instantiation::SimDcp { s, t }
        | Instantiation::SimDcpAlt { s, t } => {
            nonempty(s, t)?;
            check_all(g, s)?;
            check_all(g, t)?;
        }
        Instantiation::SymDp {
            s,
            t,
            k,
            l,
            secret_exponents,
        } => {
            nonempty(s, t)?;
            check_all(g, s)?;
            check_all(g, t)?;
            if !secret_exponents {
                if *k == 0 || *l == 0 {
                    return Err(Error::InvalidArgument("exponents must be positive"));
                }
                if *k != 1 && *l != 1 {
                    return Err(Error::ConditionViolation("symdp needs k = 1 or l = 1"));
                }
            }
        }
        Instantiation::FCommutator { f, s, t } => {
            nonempty(s, t)?;
            check_all(g, s)?;
            check_all(g, t)?;
            OpDescriptor::FConj(f.clone()).validate(g)?;
            if let Endomorphism::PointMap(m) = f {
                if m.platform() != g {
                    return Err(Error::PlatformMismatch);
                }
            }
            if !s.iter().chain(t).all(|x| f.accepts(x)) {
                return Err(Error::NotPure);
            }
        }
        Instantiation::ShiftedCommutator {
            variant,
            p,
            a,
            mixed,
            s,
            t,
        } => {
            nonempty(s, t)?;
            if *mixed && *variant == ShiftedVariant::Rev {
                return Err(Error::ConditionViolation("mixed trees need the bi-LD variant"));
            }
            let Platform::Braid { strands } = *g else {
                return Err(Error::PlatformMismatch);
            };
            check_all(g, s)?;
            check_all(g, t)?;
            if *p == 0 {
                return Err(Error::InvalidArgument("shift amount must be positive"));
            }
            if !shifted_parameter_ok(*p, a)? {
                return Err(Error::ConditionViolation("a does not satisfy the shifted LD conditions"));
            }
            let base = s.iter().chain(t).map(used_strands).max().unwrap_or(1);
            let required = shifted_strands(base, *p, spec.policy.max_depth);
            if required > strands {
                return Err(Error::StrandOverflow {
                    required: required as usize,
                    available: strands,
                });
            }
        }
    }
    Ok(())
}

fn finish(platform: Platform, instantiation: Instantiation, policy: Option<KeyPolicy>, seed: u64) -> Result<ProtocolSpec> {
    let policy = policy.unwrap_or_else(|| KeyPolicy::default_for(&platform));
    let spec = ProtocolSpec {
        platform,
        instantiation,
        policy,
        seed,
    };
    spec.validate()?;
    Ok(spec)
}

/// Textbook Diffie-Hellman in `Z_p^*`. Secrets left as `None` are drawn.
pub fn make_classic_dh(p: u64, g: u64, alice: Option<u64>, bob: Option<u64>, seed: u64) -> Result<ProtocolSpec> {
    let platform = Platform::mult_mod(p)?;
    finish(
        platform,
        Instantiation::ClassicDh {
            g: Element::Residue(g),
            alice_secret: alice,
            bob_secret: bob,
        },
        None,
        seed,
    )
}

#[allow(clippy::too_many_arguments)]
pub fn make_group_dh(
    platform: Platform,
    a1: Vec<Element>,
    a2: Vec<Element>,
    b1: Vec<Element>,
    b2: Vec<Element>,
    x: Element,
    policy: Option<KeyPolicy>,
    seed: u64,
) -> Result<ProtocolSpec> {
    finish(platform, Instantiation::GroupDh { a1, a2, b1, b2, x }, policy, seed)
}

pub fn make_ko_lee(
    platform: Platform,
    a: Vec<Element>,
    b: Vec<Element>,
    x: Element,
    policy: Option<KeyPolicy>,
    seed: u64,
) -> Result<ProtocolSpec> {
    finish(platform, Instantiation::KoLee { a, b, x }, policy, seed)
}

pub fn make_str_kep(
    platform: Platform,
    a: Vec<Element>,
    b: Vec<Element>,
    x: Element,
    policy: Option<KeyPolicy>,
    seed: u64,
) -> Result<ProtocolSpec> {
    finish(platform, Instantiation::Str { a, b, x }, policy, seed)
}

pub fn make_aag_commutator(
    platform: Platform,
    s: Vec<Element>,
    t: Vec<Element>,
    policy: Option<KeyPolicy>,
    seed: u64,
) -> Result<ProtocolSpec> {
    finish(platform, Instantiation::AagCommutator { s, t }, policy, seed)
}

pub fn make_simdcp(
    platform: Platform,
    s: Vec<Element>,
    t: Vec<Element>,
    policy: Option<KeyPolicy>,
    seed: u64,
) -> Result<ProtocolSpec> {
    finish(platform, Instantiation::SimDcp { s, t }, policy, seed)
}

pub fn make_simdcp_alt(
    platform: Platform,
    s: Vec<Element>,
    t: Vec<Element>,
    policy: Option<KeyPolicy>,
    seed: u64,
) -> Result<ProtocolSpec> {
    finish(platform, Instantiation::SimDcpAlt { s, t }, policy, seed)
}

/// With `secret_exponents`, each party draws its own exponent and `k, l`
/// are ignored; otherwise `k = 1` or `l = 1` is required.
#[allow(clippy::too_many_arguments)]
pub fn make_symdp(
    platform: Platform,
    s: Vec<Element>,
    t: Vec<Element>,
    k: u32,
    l: u32,
    secret_exponents: bool,
    policy: Option<KeyPolicy>,
    seed: u64,
) -> Result<ProtocolSpec> {
    finish(
        platform,
        Instantiation::SymDp {
            s,
            t,
            k,
            l,
            secret_exponents,
        },
        policy,
        seed,
    )
}

pub fn make_f_commutator(
    platform: Platform,
    f: Endomorphism,
    s: Vec<Element>,
    t: Vec<Element>,
    policy: Option<KeyPolicy>,
    seed: u64,
) -> Result<ProtocolSpec> {
    finish(platform, Instantiation::FCommutator { f, s, t }, policy, seed)
}

/// Builds the braid platform itself, sized for the generators, `p` and the
/// policy's depth cap.
#[allow(clippy::too_many_arguments)]
pub fn make_shifted_commutator(
    variant: ShiftedVariant,
    p: u16,
    a: BraidWord,
    mixed: bool,
    s: &[BraidWord],
    t: &[BraidWord],
    policy: Option<KeyPolicy>,
    seed: u64,
) -> Result<ProtocolSpec> {
    let policy = policy.unwrap_or(KeyPolicy::braid_default());
    let base = s
        .iter()
        .chain(t)
        .map(|w| if w.is_empty() { 1 } else { w.max_index() + 1 })
        .max()
        .unwrap_or(1);
    let n = shifted_strands(base, p, policy.max_depth);
    let platform = Platform::braid(n).map_err(|_| Error::StrandLimit(n as usize))?;
    let s = s.iter().map(|w| platform.braid_element(w)).collect::<Result<Vec<_>>>()?;
    let t = t.iter().map(|w| platform.braid_element(w)).collect::<Result<Vec<_>>>()?;
    finish(
        platform,
        Instantiation::ShiftedCommutator {
            variant,
            p,
            a,
            mixed,
            s,
            t,
        },
        Some(policy),
        seed,
    )
}
