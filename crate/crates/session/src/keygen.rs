//! Random specs for the `keygen` subcommand.

use magmakey_core::braid::BraidWord;
use magmakey_core::ldops::{Carrier, OpDescriptor};
use magmakey_core::platform::{Element, Endomorphism, Platform};
use magmakey_core::protocols::{self as p, KeyPolicy, ProtocolSpec, ShiftedVariant};
use magmakey_core::Permutation;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{doc_err, Result};

pub const INSTANTIATIONS: [&str; 10] = [
    "classic_dh",
    "group_dh",
    "ko_lee",
    "str",
    "aag_commutator",
    "simdcp",
    "simdcp_alt",
    "symdp",
    "f_commutator",
    "shifted_commutator",
];

#[derive(Clone, Debug)]
pub struct KeygenParams {
    pub instantiation: String,
    pub platform: Platform,
    pub gens: usize,
    pub gen_len: usize,
    pub policy: Option<KeyPolicy>,
    /// Shift amount for the shifted commutator.
    pub p: u16,
}

fn random_gens<R: Rng>(g: &Platform, count: usize, len: usize, rng: &mut R) -> Vec<Element> {
    (0..count).map(|_| g.random_element(len, rng)).collect()
}

/// Two commuting families: braids on disjoint strand ranges, or
/// permutations with disjoint supports.
fn commuting_halves<R: Rng>(g: &Platform, count: usize, len: usize, rng: &mut R) -> Result<(Vec<Element>, Vec<Element>)> {
    match *g {
        Platform::Braid { strands } => {
            if strands < 5 {
                return Err(doc_err("commuting families need at least 5 strands"));
            }
            let m = strands / 2;
            let side = |lo: i16, hi: i16, rng: &mut R| -> Result<Element> {
                let letters: Vec<i16> = (0..len)
                    .map(|_| rng.gen_range(lo..=hi) * if rng.gen() { 1 } else { -1 })
                    .collect();
                Ok(g.braid_letters(&letters)?)
            };
            let a = (0..count).map(|_| side(1, m as i16 - 1, rng)).collect::<Result<_>>()?;
            let b = (0..count).map(|_| side(m as i16 + 1, strands as i16 - 1, rng)).collect::<Result<_>>()?;
            Ok((a, b))
        }
        Platform::Symmetric { n } => {
            if n < 4 {
                return Err(doc_err("commuting families need at least 4 points"));
            }
            let n = n as u16;
            let m = n / 2;
            let side = |lo: u16, hi: u16, rng: &mut R| -> Result<Element> {
                let mut moved: Vec<u16> = (lo..=hi).collect();
                moved.shuffle(rng);
                let mut images: Vec<u16> = (1..=n).collect();
                for (k, v) in (lo..=hi).zip(moved) {
                    images[k as usize - 1] = v;
                }
                Ok(Element::Perm(Permutation::from_images(&images)?))
            };
            let a = (0..count).map(|_| side(1, m, rng)).collect::<Result<_>>()?;
            let b = (0..count).map(|_| side(m + 1, n, rng)).collect::<Result<_>>()?;
            Ok((a, b))
        }
        Platform::MultMod { .. } => Ok((random_gens(g, count, len, rng), random_gens(g, count, len, rng))),
    }
}

/// Draw a random spec. `seed` drives both the public data and the spec's
/// own seed.
pub fn random_spec<R: Rng>(params: &KeygenParams, seed: u64, rng: &mut R) -> Result<ProtocolSpec> {
    let g = params.platform;
    let (m, len, policy) = (params.gens.max(1), params.gen_len, params.policy);
    let spec = match params.instantiation.as_str() {
        "classic_dh" => {
            let Platform::MultMod { p } = g else {
                return Err(doc_err("classic_dh needs a mod:P platform"));
            };
            p::make_classic_dh(p, rng.gen_range(2..p), None, None, seed)?
        }
        "group_dh" => {
            let (a1, b1) = commuting_halves(&g, m, len, rng)?;
            let (b2, a2) = commuting_halves(&g, m, len, rng)?;
            p::make_group_dh(g, a1, a2, b1, b2, g.random_element(len, rng), policy, seed)?
        }
        "ko_lee" | "str" => {
            let (a, b) = commuting_halves(&g, m, len, rng)?;
            let x = g.random_element(len, rng);
            if params.instantiation == "ko_lee" {
                p::make_ko_lee(g, a, b, x, policy, seed)?
            } else {
                p::make_str_kep(g, a, b, x, policy, seed)?
            }
        }
        "aag_commutator" => p::make_aag_commutator(
            g,
            random_gens(&g, m, len, rng),
            random_gens(&g, m, len, rng),
            policy,
            seed,
        )?,
        "simdcp" => p::make_simdcp(
            g,
            random_gens(&g, m, len, rng),
            random_gens(&g, m, len, rng),
            policy,
            seed,
        )?,
        "simdcp_alt" => p::make_simdcp_alt(
            g,
            random_gens(&g, m, len, rng),
            random_gens(&g, m, len, rng),
            policy,
            seed,
        )?,
        "symdp" => p::make_symdp(
            g,
            random_gens(&g, m, len, rng),
            random_gens(&g, m, len, rng),
            1,
            2,
            false,
            policy,
            seed,
        )?,
        "f_commutator" => {
            let (f, s, t) = if let Platform::Braid { strands } = g {
                let carrier = Carrier::Braid {
                    platform: g,
                    operand_strands: strands,
                    operand_len: len.clamp(1, 3),
                    pure: true,
                };
                let draw = |rng: &mut R| (0..m).map(|_| carrier.sample(rng)).collect::<std::result::Result<Vec<_>, _>>();
                (Endomorphism::PowerShift { d: 1 }, draw(rng)?, draw(rng)?)
            } else {
                (Endomorphism::Identity, random_gens(&g, m, len, rng), random_gens(&g, m, len, rng))
            };
            p::make_f_commutator(g, f, s, t, policy, seed)?
        }
        "shifted_commutator" => {
            let pp = params.p.max(1);
            let a = default_shift_parameter(pp)?;
            let base = 3u16;
            let words = |rng: &mut R| -> Vec<BraidWord> { (0..m).map(|_| BraidWord::random(base, len, rng)).collect() };
            let (s, t) = (words(rng), words(rng));
            let policy = policy.unwrap_or(KeyPolicy {
                leaves: 4,
                max_depth: 4,
                ..KeyPolicy::braid_default()
            });
            p::make_shifted_commutator(ShiftedVariant::BiLd, pp, a, false, &s, &t, Some(policy), seed)?
        }
        other => return Err(doc_err(format!("unknown instantiation `{other}`"))),
    };
    Ok(spec)
}

/// `σ_1` for `p = 1`, `τ_{p,p}` otherwise.
pub fn default_shift_parameter(p: u16) -> Result<BraidWord> {
    Ok(if p == 1 {
        BraidWord::generator(2, 1)?
    } else {
        BraidWord::tau(p, p)?
    })
}

/// The shifted operation with the default parameter.
pub fn default_shifted(p: u16) -> Result<OpDescriptor> {
    Ok(OpDescriptor::Shifted {
        p,
        a: default_shift_parameter(p)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use magmakey_core::protocols::run;
    use magmakey_core::seeded_rng;

    #[test]
    fn every_instantiation_generates_and_runs() {
        for name in INSTANTIATIONS {
            let platform = match name {
                "classic_dh" => Platform::mult_mod(1009).unwrap(),
                "f_commutator" | "shifted_commutator" => Platform::braid(5).unwrap(),
                _ => Platform::symmetric(5).unwrap(),
            };
            let params = KeygenParams {
                instantiation: name.to_string(),
                platform,
                gens: 2,
                gen_len: 4,
                policy: None,
                p: 1,
            };
            let spec = random_spec(&params, 9, &mut seeded_rng(9)).unwrap();
            let t = run(&spec).unwrap();
            assert_eq!(t.k_a, t.k_b, "{name}");
        }
    }
}
