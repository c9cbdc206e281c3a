//! Two-party key establishment over group and magma platforms.
//!
//! Every instantiation is expressed through the same three per-party steps,
//! so an in-process [`run`] and a networked session perform identical
//! computations:
//!
//! 1. [`keygen`] draws the party's secret from its own RNG stream,
//! 2. [`public_message`] maps the peer's public generators (or the base
//!    element) through the secret,
//! 3. [`derive_key`] pushes the party's secret through the peer's message
//!    and combines the result into the shared key.

use alloc::string::String;
use alloc::vec::Vec;
use rand::{Rng, SeedableRng};
use sha2::{Digest, Sha256};

use crate::braid::BraidWord;
use crate::codec::{Reader, Writer};
use crate::ldops::{check_shifted_conditions, decode_endo, encode_endo, shifted_strands, OpDescriptor};
use crate::magma::TreeWord;
use crate::platform::{Element, Endomorphism, Platform};
use crate::{Error, Result, SeededRng};

mod spec;

pub use spec::{
    make_aag_commutator, make_classic_dh, make_f_commutator, make_group_dh, make_ko_lee,
    make_shifted_commutator, make_simdcp, make_simdcp_alt, make_str_kep, make_symdp,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    Alice,
    Bob,
}

impl Role {
    pub fn byte(self) -> u8 {
        match self {
            Role::Alice => 0x01,
            Role::Bob => 0x02,
        }
    }

    pub fn peer(self) -> Role {
        match self {
            Role::Alice => Role::Bob,
            Role::Bob => Role::Alice,
        }
    }
}

/// Limits on secret keys.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KeyPolicy {
    /// Leaves per secret tree (word length for subgroup secrets).
    pub leaves: usize,
    pub max_depth: usize,
    pub comb_bias: f64,
    /// Word length of auxiliary random braid elements.
    pub word_len: usize,
    /// Upper bound for secret exponents.
    pub exponent_max: u64,
}

impl KeyPolicy {
    pub const fn braid_default() -> Self {
        Self {
            leaves: 6,
            max_depth: 6,
            comb_bias: 0.75,
            word_len: 8,
            exponent_max: 4,
        }
    }

    pub const fn finite_default() -> Self {
        Self {
            leaves: 8,
            max_depth: 12,
            comb_bias: 0.75,
            word_len: 8,
            exponent_max: 16,
        }
    }

    pub fn default_for(platform: &Platform) -> Self {
        if platform.is_finite() {
            Self::finite_default()
        } else {
            Self::braid_default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ShiftedVariant {
    /// Alice over `̄*`, Bob over `*`.
    BiLd,
    /// Alice over `*`, Bob over `*^rev`.
    Rev,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Instantiation {
    ClassicDh {
        g: Element,
        alice_secret: Option<u64>,
        bob_secret: Option<u64>,
    },
    GroupDh {
        a1: Vec<Element>,
        a2: Vec<Element>,
        b1: Vec<Element>,
        b2: Vec<Element>,
        x: Element,
    },
    KoLee {
        a: Vec<Element>,
        b: Vec<Element>,
        x: Element,
    },
    Str {
        a: Vec<Element>,
        b: Vec<Element>,
        x: Element,
    },
    AagCommutator {
        s: Vec<Element>,
        t: Vec<Element>,
    },
    SimDcp {
        s: Vec<Element>,
        t: Vec<Element>,
    },
    SimDcpAlt {
        s: Vec<Element>,
        t: Vec<Element>,
    },
    SymDp {
        s: Vec<Element>,
        t: Vec<Element>,
        k: u32,
        l: u32,
        secret_exponents: bool,
    },
    FCommutator {
        f: Endomorphism,
        s: Vec<Element>,
        t: Vec<Element>,
    },
    ShiftedCommutator {
        variant: ShiftedVariant,
        p: u16,
        a: BraidWord,
        /// Let secret trees use both operations of the family.
        mixed: bool,
        s: Vec<Element>,
        t: Vec<Element>,
    },
}

impl Instantiation {
    pub fn tag(&self) -> &'static str {
        match self {
            Instantiation::ClassicDh { .. } => "classic_dh",
            Instantiation::GroupDh { .. } => "group_dh",
            Instantiation::KoLee { .. } => "ko_lee",
            Instantiation::Str { .. } => "str",
            Instantiation::AagCommutator { .. } => "aag_commutator",
            Instantiation::SimDcp { .. } => "simdcp",
            Instantiation::SimDcpAlt { .. } => "simdcp_alt",
            Instantiation::SymDp { .. } => "symdp",
            Instantiation::FCommutator { .. } => "f_commutator",
            Instantiation::ShiftedCommutator { .. } => "shifted_commutator",
        }
    }

    /// The public generator lists `(s, t)` of AAG-like instantiations.
    pub fn generators(&self) -> Option<(&[Element], &[Element])> {
        match self {
            Instantiation::AagCommutator { s, t }
            | Instantiation::SimDcp { s, t }
            | Instantiation::SimDcpAlt { s, t }
            | Instantiation::SymDp { s, t, .. }
            | Instantiation::FCommutator { s, t, .. }
            | Instantiation::ShiftedCommutator { s, t, .. } => Some((s, t)),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProtocolSpec {
    pub platform: Platform,
    pub instantiation: Instantiation,
    pub policy: KeyPolicy,
    pub seed: u64,
}

/// A party's secret. Which fields are used depends on the instantiation;
/// `elements[0]` is always the main secret element when there is one.
#[derive(Clone, Debug, PartialEq)]
pub struct SecretKey {
    pub tree: Option<TreeWord>,
    /// Generator indices of alternating-word secrets.
    pub indices: Vec<u16>,
    pub elements: Vec<Element>,
    pub exponent: Option<u64>,
}

impl SecretKey {
    fn elements(elements: Vec<Element>) -> Self {
        Self {
            tree: None,
            indices: Vec::new(),
            elements,
            exponent: None,
        }
    }

    /// The main secret element, if any.
    pub fn value(&self) -> Option<&Element> {
        self.elements.first()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Derived {
    /// The push-through (or direct) value computed from the peer's message.
    pub step3: Element,
    pub key: Element,
}

/// Full record of a run.
#[derive(Clone, Debug, PartialEq)]
pub struct Transcript {
    pub spec: ProtocolSpec,
    pub spec_digest: [u8; 32],
    pub alice_message: Vec<Element>,
    pub bob_message: Vec<Element>,
    pub alice_step3: Element,
    pub bob_step3: Element,
    pub k_a: Element,
    pub k_b: Element,
    pub extracted_key: [u8; 32],
    pub seed: u64,
    pub warnings: Vec<String>,
}

/// The party's RNG: one ChaCha20 stream per role, keyed by the spec seed.
pub fn party_rng(seed: u64, role: Role) -> SeededRng {
    let mut rng = SeededRng::seed_from_u64(seed);
    rng.set_stream(role.byte() as u64);
    rng
}

fn shifted_family(variant: ShiftedVariant, p: u16, a: &BraidWord) -> [OpDescriptor; 2] {
    match variant {
        ShiftedVariant::BiLd => [
            OpDescriptor::Shifted { p, a: a.clone() },
            OpDescriptor::ShiftedBar { p, a: a.invert() },
        ],
        ShiftedVariant::Rev => [
            OpDescriptor::Shifted { p, a: a.clone() },
            OpDescriptor::ShiftedRev { p, a: a.clone() },
        ],
    }
}

/// The label a party's trees use by default in the shifted family: Alice
/// uses `̄*` (bi-LD) or `*` (rev), Bob `*` (bi-LD) or `*^rev` (rev).
fn shifted_label(variant: ShiftedVariant, role: Role) -> u8 {
    match (variant, role) {
        (ShiftedVariant::BiLd, Role::Alice) => 1,
        (ShiftedVariant::BiLd, Role::Bob) => 0,
        (ShiftedVariant::Rev, Role::Alice) => 0,
        (ShiftedVariant::Rev, Role::Bob) => 1,
    }
}

fn random_tree<R: Rng + ?Sized>(policy: &KeyPolicy, m: usize, rng: &mut R) -> Result<TreeWord> {
    if m == 0 {
        return Err(Error::InvalidArgument("empty generator list"));
    }
    let k = policy.leaves.max(1);
    let min_depth = usize::BITS as usize - (k - 1).leading_zeros() as usize;
    if min_depth > policy.max_depth {
        return Err(Error::PolicyViolation("leaf count needs deeper trees than allowed"));
    }
    for _ in 0..1000 {
        let t = TreeWord::random(k, m as u16, 1, policy.comb_bias, rng);
        if t.depth() <= policy.max_depth {
            return Ok(t);
        }
    }
    Err(Error::PolicyViolation("no tree within the depth cap"))
}

/// Random product of `len` generators and their inverses.
fn subgroup_element<R: Rng + ?Sized>(g: &Platform, gens: &[Element], len: usize, rng: &mut R) -> Result<Element> {
    let mut acc = g.identity();
    if gens.is_empty() {
        return Ok(acc);
    }
    for _ in 0..len {
        let x = &gens[rng.gen_range(0..gens.len())];
        let x = if rng.gen::<bool>() { x.clone() } else { g.inv(x)? };
        acc = g.mul(&acc, &x)?;
    }
    Ok(acc)
}

fn eval_with<F>(tree: &TreeWord, gens: &[Element], mut op: F) -> Result<Element>
where
    F: FnMut(u8, &Element, &Element) -> Result<Element>,
{
    tree.eval(gens, &mut op)
}

fn eval_ops(g: &Platform, tree: &TreeWord, gens: &[Element], ops: &[OpDescriptor]) -> Result<Element> {
    eval_with(tree, gens, |label, x, y| {
        ops.get(label as usize)
            .ok_or(Error::OpLabelOutOfRange {
                label: label as usize,
                count: ops.len(),
            })?
            .apply(g, x, y)
    })
}

/// Generator list extended by inverses: `[s_1, …, s_m, s_1⁻¹, …, s_m⁻¹]`.
fn with_inverses(g: &Platform, gens: &[Element]) -> Result<Vec<Element>> {
    let mut out = gens.to_vec();
    for x in gens {
        out.push(g.inv(x)?);
    }
    Ok(out)
}

fn alternating(g: &Platform, gens: &[Element], idx: &[u16]) -> Result<Element> {
    let mut acc = g.identity();
    for (k, &i) in idx.iter().enumerate() {
        let x = gens.get(i as usize).ok_or(Error::LeafOutOfRange {
            index: i as usize,
            count: gens.len(),
        })?;
        let x = if k % 2 == 0 { x.clone() } else { g.inv(x)? };
        acc = g.mul(&acc, &x)?;
    }
    Ok(acc)
}

fn own_generators(inst: &Instantiation, role: Role) -> &[Element] {
    match inst.generators() {
        Some((s, t)) => match role {
            Role::Alice => s,
            Role::Bob => t,
        },
        None => &[],
    }
}

fn peer_generators(inst: &Instantiation, role: Role) -> &[Element] {
    own_generators(inst, role.peer())
}

/// Step 1: draw the party's secret.
pub fn keygen(spec: &ProtocolSpec, role: Role) -> Result<SecretKey> {
    let mut rng = party_rng(spec.seed, role);
    let rng = &mut rng;
    let g = &spec.platform;
    let pol = &spec.policy;
    let own = own_generators(&spec.instantiation, role);
    Ok(match &spec.instantiation {
        Instantiation::ClassicDh {
            alice_secret,
            bob_secret,
            ..
        } => {
            let Platform::MultMod { p } = *g else {
                return Err(Error::PlatformMismatch);
            };
            let fixed = match role {
                Role::Alice => *alice_secret,
                Role::Bob => *bob_secret,
            };
            let e = match fixed {
                Some(e) => e,
                None if p > 3 => rng.gen_range(1..=p - 2),
                None => 1,
            };
            SecretKey {
                exponent: Some(e),
                ..SecretKey::elements(Vec::new())
            }
        }
        Instantiation::GroupDh { a1, a2, b1, b2, .. } => {
            let (x, y) = match role {
                Role::Alice => (a1, a2),
                Role::Bob => (b1, b2),
            };
            SecretKey::elements(alloc::vec![
                subgroup_element(g, x, pol.leaves, rng)?,
                subgroup_element(g, y, pol.leaves, rng)?,
            ])
        }
        Instantiation::KoLee { a, b, .. } => {
            let gens = if role == Role::Alice { a } else { b };
            SecretKey::elements(alloc::vec![subgroup_element(g, gens, pol.leaves, rng)?])
        }
        Instantiation::Str { a, b, .. } => {
            let gens = if role == Role::Alice { a } else { b };
            let elem = subgroup_element(g, gens, pol.leaves, rng)?;
            SecretKey {
                exponent: Some(rng.gen_range(1..=pol.exponent_max.max(1))),
                ..SecretKey::elements(alloc::vec![elem])
            }
        }
        Instantiation::AagCommutator { .. } => {
            let ext = with_inverses(g, own)?;
            let idx: Vec<u16> = (0..pol.leaves.max(1))
                .map(|_| rng.gen_range(0..ext.len() as u16))
                .collect();
            let tree = TreeWord::left_comb_over(&idx, 0)?;
            let value = eval_with(&tree, &ext, |_, x, y| g.mul(x, y))?;
            SecretKey {
                tree: Some(tree),
                ..SecretKey::elements(alloc::vec![value])
            }
        }
        Instantiation::SimDcp { .. } => {
            let tree = random_tree(pol, own.len(), rng)?;
            let magma = eval_ops(g, &tree, own, &[OpDescriptor::Bullet])?;
            let free = g.random_element(pol.word_len, rng);
            // Alice holds (a_l free, a_r in the submagma), Bob the mirror image.
            let elements = match role {
                Role::Alice => alloc::vec![free, magma],
                Role::Bob => alloc::vec![magma, free],
            };
            SecretKey {
                tree: Some(tree),
                ..SecretKey::elements(elements)
            }
        }
        Instantiation::SimDcpAlt { .. } => {
            if own.is_empty() {
                return Err(Error::InvalidArgument("empty generator list"));
            }
            let len = {
                let k = pol.leaves.max(1);
                if k % 2 == 1 { k } else { k - 1 }
            };
            let idx: Vec<u16> = (0..len).map(|_| rng.gen_range(0..own.len() as u16)).collect();
            let word = alternating(g, own, &idx)?;
            let free = g.random_element(pol.word_len, rng);
            let elements = match role {
                Role::Alice => alloc::vec![free, word],
                Role::Bob => alloc::vec![word, free],
            };
            SecretKey {
                indices: idx,
                ..SecretKey::elements(elements)
            }
        }
        Instantiation::SymDp {
            k,
            l,
            secret_exponents,
            ..
        } => {
            let tree = random_tree(pol, own.len(), rng)?;
            let value = eval_ops(g, &tree, own, &[OpDescriptor::Bullet])?;
            let exponent = if *secret_exponents {
                rng.gen_range(1..=pol.exponent_max.max(1))
            } else if role == Role::Alice {
                *k as u64
            } else {
                *l as u64
            };
            SecretKey {
                tree: Some(tree),
                exponent: Some(exponent),
                ..SecretKey::elements(alloc::vec![value])
            }
        }
        Instantiation::FCommutator { f, .. } => {
            let tree = random_tree(pol, own.len(), rng)?;
            let value = eval_ops(g, &tree, own, &[OpDescriptor::FConj(f.clone())])?;
            SecretKey {
                tree: Some(tree),
                ..SecretKey::elements(alloc::vec![value])
            }
        }
        Instantiation::ShiftedCommutator {
            variant,
            p,
            a,
            mixed,
            ..
        } => {
            let mut tree = random_tree(pol, own.len(), rng)?;
            let label = shifted_label(*variant, role);
            tree = relabel(&tree, &mut |_| if *mixed { rng.gen_range(0..2) } else { label });
            let ops = shifted_family(*variant, *p, a);
            let value = eval_ops(g, &tree, own, &ops)?;
            SecretKey {
                tree: Some(tree),
                ..SecretKey::elements(alloc::vec![value])
            }
        }
    })
}

fn relabel(t: &TreeWord, label: &mut impl FnMut(u8) -> u8) -> TreeWord {
    match t {
        TreeWord::Leaf(i) => TreeWord::Leaf(*i),
        TreeWord::Node(op, l, r) => {
            let op = label(*op);
            let l = relabel(l, label);
            let r = relabel(r, label);
            TreeWord::node(op, l, r)
        }
    }
}

fn main_value(secret: &SecretKey) -> Result<&Element> {
    secret
        .value()
        .ok_or(Error::InvalidArgument("secret key has no element"))
}

fn exponent(secret: &SecretKey) -> Result<u64> {
    secret
        .exponent
        .ok_or(Error::InvalidArgument("secret key has no exponent"))
}

/// Step 2: the party's public message.
pub fn public_message(spec: &ProtocolSpec, role: Role, secret: &SecretKey) -> Result<Vec<Element>> {
    let g = &spec.platform;
    let peer = peer_generators(&spec.instantiation, role);
    let map = |f: &mut dyn FnMut(&Element) -> Result<Element>| -> Result<Vec<Element>> {
        peer.iter().map(f).collect()
    };
    match &spec.instantiation {
        Instantiation::ClassicDh { g: base, .. } => {
            Ok(alloc::vec![g.pow(base, exponent(secret)? as i64)?])
        }
        Instantiation::GroupDh { x, .. } => {
            let e = &secret.elements;
            Ok(alloc::vec![g.product([&e[0], x, &e[1]])?])
        }
        Instantiation::KoLee { x, .. } => Ok(alloc::vec![g.conj(x, main_value(secret)?)?]),
        Instantiation::Str { x, .. } => {
            let xk = g.pow(x, exponent(secret)? as i64)?;
            Ok(alloc::vec![g.conj(&xk, main_value(secret)?)?])
        }
        Instantiation::AagCommutator { .. } => {
            let a = main_value(secret)?;
            map(&mut |t| g.conj(t, a))
        }
        Instantiation::SimDcp { .. } | Instantiation::SimDcpAlt { .. } => {
            let (l, r) = (&secret.elements[0], &secret.elements[1]);
            map(&mut |t| g.product([l, t, r]))
        }
        Instantiation::SymDp { .. } => {
            let a = main_value(secret)?;
            let (k, l) = match role {
                Role::Alice => (exponent(secret)? as u32, 1),
                Role::Bob => (1, exponent(secret)? as u32),
            };
            let beta = OpDescriptor::BetaKl { k, l };
            map(&mut |t| beta.apply(g, a, t))
        }
        Instantiation::FCommutator { f, .. } => {
            let a = main_value(secret)?;
            let op = OpDescriptor::FConj(f.clone());
            map(&mut |t| op.apply(g, a, t))
        }
        Instantiation::ShiftedCommutator { variant, p, a: param, .. } => {
            let a = main_value(secret)?;
            let [star, other] = shifted_family(*variant, *p, param);
            match (variant, role) {
                (ShiftedVariant::BiLd, Role::Alice) => map(&mut |t| other.apply(g, a, t)),
                (ShiftedVariant::BiLd, Role::Bob) => map(&mut |t| star.apply(g, a, t)),
                (ShiftedVariant::Rev, Role::Alice) => {
                    let ai = g.inv(a)?;
                    map(&mut |t| other.apply(g, &ai, t))
                }
                (ShiftedVariant::Rev, Role::Bob) => {
                    let ai = g.inv(a)?;
                    map(&mut |t| star.apply(g, &ai, t))
                }
            }
        }
    }
}

/// Steps 3 and 4: push the own secret through the peer's message and form
/// the shared key.
pub fn derive_key(spec: &ProtocolSpec, role: Role, secret: &SecretKey, peer_msg: &[Element]) -> Result<Derived> {
    let g = &spec.platform;
    let own_len = own_generators(&spec.instantiation, role).len();
    let expected = match &spec.instantiation {
        Instantiation::ClassicDh { .. }
        | Instantiation::GroupDh { .. }
        | Instantiation::KoLee { .. }
        | Instantiation::Str { .. } => 1,
        _ => own_len,
    };
    if peer_msg.len() != expected {
        return Err(Error::InvalidArgument("peer message has the wrong length"));
    }
    for x in peer_msg {
        g.check(x)?;
    }
    let tree = || secret.tree.as_ref().ok_or(Error::InvalidArgument("secret key has no tree"));
    let (step3, key) = match &spec.instantiation {
        Instantiation::ClassicDh { .. } => {
            let k = g.pow(&peer_msg[0], exponent(secret)? as i64)?;
            (k.clone(), k)
        }
        Instantiation::GroupDh { .. } => {
            let e = &secret.elements;
            let k = g.product([&e[0], &peer_msg[0], &e[1]])?;
            (k.clone(), k)
        }
        Instantiation::KoLee { .. } => {
            let k = g.conj(&peer_msg[0], main_value(secret)?)?;
            (k.clone(), k)
        }
        Instantiation::Str { .. } => {
            let yk = g.pow(&peer_msg[0], exponent(secret)? as i64)?;
            let k = g.conj(&yk, main_value(secret)?)?;
            (k.clone(), k)
        }
        Instantiation::AagCommutator { .. } => {
            let ext = with_inverses(g, peer_msg)?;
            let pushed = eval_with(tree()?, &ext, |_, x, y| g.mul(x, y))?;
            let own = main_value(secret)?;
            let key = match role {
                Role::Alice => g.mul(&g.inv(own)?, &pushed)?,
                Role::Bob => g.mul(&g.inv(&pushed)?, own)?,
            };
            (pushed, key)
        }
        Instantiation::SimDcp { .. } => {
            let pushed = eval_ops(g, tree()?, peer_msg, &[OpDescriptor::Bullet])?;
            let key = match role {
                Role::Alice => g.mul(&secret.elements[0], &pushed)?,
                Role::Bob => g.mul(&pushed, &secret.elements[1])?,
            };
            (pushed, key)
        }
        Instantiation::SimDcpAlt { .. } => {
            let pushed = alternating(g, peer_msg, &secret.indices)?;
            let key = match role {
                Role::Alice => g.mul(&secret.elements[0], &pushed)?,
                Role::Bob => g.mul(&pushed, &secret.elements[1])?,
            };
            (pushed, key)
        }
        Instantiation::SymDp { .. } => {
            let pushed = eval_ops(g, tree()?, peer_msg, &[OpDescriptor::Bullet])?;
            let own = main_value(secret)?;
            let power = g.pow(own, exponent(secret)? as i64)?;
            let key = match role {
                Role::Alice => g.mul(&power, &pushed)?,
                Role::Bob => g.mul(&pushed, &power)?,
            };
            (pushed, key)
        }
        Instantiation::FCommutator { f, .. } => {
            let pushed = eval_ops(g, tree()?, peer_msg, &[OpDescriptor::FConj(f.clone())])?;
            let own = main_value(secret)?;
            let key = match role {
                Role::Alice => g.mul(&g.inv(own)?, &pushed)?,
                Role::Bob => g.mul(&g.inv(&pushed)?, own)?,
            };
            (pushed, key)
        }
        Instantiation::ShiftedCommutator { variant, p, a, .. } => {
            let ops = shifted_family(*variant, *p, a);
            let pushed = eval_ops(g, tree()?, peer_msg, &ops)?;
            let own = main_value(secret)?;
            let key = match (variant, role) {
                (_, Role::Alice) => g.mul(&g.inv(own)?, &pushed)?,
                (ShiftedVariant::BiLd, Role::Bob) => g.mul(&g.inv(&pushed)?, own)?,
                (ShiftedVariant::Rev, Role::Bob) => g.mul(&pushed, &g.inv(own)?)?,
            };
            (pushed, key)
        }
    };
    Ok(Derived { step3, key })
}

/// SHA-256 of the canonical serialization of `k`.
pub fn key_extract(platform: &Platform, k: &Element) -> Result<[u8; 32]> {
    let mut w = Writer::new();
    platform.encode_canonical(k, &mut w)?;
    Ok(Sha256::digest(w.as_slice()).into())
}

/// `SHA-256(key ‖ role)`, exchanged to confirm agreement.
pub fn key_confirmation(key: &[u8; 32], role: Role) -> [u8; 32] {
    let mut h = Sha256::new();
    h.update(key);
    h.update([role.byte()]);
    h.finalize().into()
}

pub fn spec_digest(spec: &ProtocolSpec) -> Result<[u8; 32]> {
    let mut w = Writer::new();
    spec.encode(&mut w)?;
    Ok(Sha256::digest(w.as_slice()).into())
}

/// Warnings about degenerate secrets (identity elements are accepted but
/// weak).
pub fn secret_warnings(spec: &ProtocolSpec, role: Role, secret: &SecretKey) -> Vec<String> {
    let mut out = Vec::new();
    let name = match role {
        Role::Alice => "alice",
        Role::Bob => "bob",
    };
    if secret.elements.iter().any(|x| spec.platform.is_identity(x)) {
        out.push(alloc::format!("{name}: secret contains the identity element (weak key)"));
    }
    out
}

/// Run both parties in process and check that they agree.
pub fn run(spec: &ProtocolSpec) -> Result<Transcript> {
    spec.validate()?;
    let sa = keygen(spec, Role::Alice)?;
    let sb = keygen(spec, Role::Bob)?;
    let ma = public_message(spec, Role::Alice, &sa)?;
    let mb = public_message(spec, Role::Bob, &sb)?;
    let da = derive_key(spec, Role::Alice, &sa, &mb)?;
    let db = derive_key(spec, Role::Bob, &sb, &ma)?;
    if da.key != db.key {
        return Err(Error::KeyMismatch);
    }
    let extracted_key = key_extract(&spec.platform, &da.key)?;
    if extracted_key != key_extract(&spec.platform, &db.key)? {
        return Err(Error::KeyMismatch);
    }
    let mut warnings = secret_warnings(spec, Role::Alice, &sa);
    warnings.extend(secret_warnings(spec, Role::Bob, &sb));
    Ok(Transcript {
        spec: spec.clone(),
        spec_digest: spec_digest(spec)?,
        alice_message: ma,
        bob_message: mb,
        alice_step3: da.step3,
        bob_step3: db.step3,
        k_a: da.key,
        k_b: db.key,
        extracted_key,
        seed: spec.seed,
        warnings,
    })
}

pub fn encode_platform(p: &Platform, w: &mut Writer) {
    match *p {
        Platform::Braid { strands } => {
            w.u8(0x01).u16(strands);
        }
        Platform::Symmetric { n } => {
            w.u8(0x02).u8(n);
        }
        Platform::MultMod { p } => {
            w.u8(0x03).u64(p);
        }
    }
}

pub fn decode_platform(r: &mut Reader<'_>) -> Result<Platform> {
    let p = match r.u8()? {
        0x01 => Platform::braid(r.u16()?),
        0x02 => Platform::symmetric(r.u8()?),
        0x03 => Platform::mult_mod(r.u64()?),
        _ => return Err(Error::Decode("unknown platform tag")),
    };
    p.map_err(|_| Error::Decode("invalid platform parameters"))
}

/// Encode a list of elements: u32 count, then each element.
pub fn encode_elements(g: &Platform, xs: &[Element], w: &mut Writer) -> Result<()> {
    w.len(xs.len())?;
    for x in xs {
        g.encode_element(x, w)?;
    }
    Ok(())
}

pub fn decode_elements(g: &Platform, r: &mut Reader<'_>) -> Result<Vec<Element>> {
    let n = r.count(2)?;
    (0..n).map(|_| g.decode_element(r)).collect()
}

impl ProtocolSpec {
    /// Re-run the constructor checks: generator lists, commutation and
    /// operation conditions, strand sizing.
    pub fn validate(&self) -> Result<()> {
        spec::validate(self)
    }

    /// Canonical binary encoding, the input of the spec digest.
    pub fn encode(&self, w: &mut Writer) -> Result<()> {
        let g = &self.platform;
        encode_platform(g, w);
        let list = |w: &mut Writer, xs: &[Element]| encode_elements(g, xs, w);
        let opt = |w: &mut Writer, v: Option<u64>| match v {
            Some(v) => {
                w.u8(1).u64(v);
            }
            None => {
                w.u8(0);
            }
        };
        match &self.instantiation {
            Instantiation::ClassicDh {
                g: base,
                alice_secret,
                bob_secret,
            } => {
                w.u8(0x01);
                g.encode_element(base, w)?;
                opt(w, *alice_secret);
                opt(w, *bob_secret);
            }
            Instantiation::GroupDh { a1, a2, b1, b2, x } => {
                w.u8(0x02);
                for xs in [a1, a2, b1, b2] {
                    list(w, xs)?;
                }
                g.encode_element(x, w)?;
            }
            Instantiation::KoLee { a, b, x } => {
                w.u8(0x03);
                list(w, a)?;
                list(w, b)?;
                g.encode_element(x, w)?;
            }
            Instantiation::Str { a, b, x } => {
                w.u8(0x04);
                list(w, a)?;
                list(w, b)?;
                g.encode_element(x, w)?;
            }
            Instantiation::AagCommutator { s, t } => {
                w.u8(0x05);
                list(w, s)?;
                list(w, t)?;
            }
            Instantiation::SimDcp { s, t } => {
                w.u8(0x06);
                list(w, s)?;
                list(w, t)?;
            }
            Instantiation::SimDcpAlt { s, t } => {
                w.u8(0x07);
                list(w, s)?;
                list(w, t)?;
            }
            Instantiation::SymDp {
                s,
                t,
                k,
                l,
                secret_exponents,
            } => {
                w.u8(0x08);
                list(w, s)?;
                list(w, t)?;
                w.u32(*k).u32(*l).u8(*secret_exponents as u8);
            }
            Instantiation::FCommutator { f, s, t } => {
                w.u8(0x09);
                encode_endo(g, f, w)?;
                list(w, s)?;
                list(w, t)?;
            }
            Instantiation::ShiftedCommutator {
                variant,
                p,
                a,
                mixed,
                s,
                t,
            } => {
                w.u8(0x0A);
                w.u8(match variant {
                    ShiftedVariant::BiLd => 0,
                    ShiftedVariant::Rev => 1,
                });
                w.u16(*p);
                a.encode(w)?;
                w.u8(*mixed as u8);
                list(w, s)?;
                list(w, t)?;
            }
        }
        let pol = &self.policy;
        w.u32(pol.leaves as u32)
            .u32(pol.max_depth as u32)
            .u64(pol.comb_bias.to_bits())
            .u32(pol.word_len as u32)
            .u64(pol.exponent_max)
            .u64(self.seed);
        Ok(())
    }

    pub fn decode(r: &mut Reader<'_>) -> Result<Self> {
        let g = decode_platform(r)?;
        let list = |r: &mut Reader<'_>| decode_elements(&g, r);
        let opt = |r: &mut Reader<'_>| -> Result<Option<u64>> {
            Ok(match r.u8()? {
                0 => None,
                1 => Some(r.u64()?),
                _ => return Err(Error::Decode("bad option flag")),
            })
        };
        let flag = |r: &mut Reader<'_>| -> Result<bool> {
            match r.u8()? {
                0 => Ok(false),
                1 => Ok(true),
                _ => Err(Error::Decode("bad boolean")),
            }
        };
        let instantiation = match r.u8()? {
            0x01 => Instantiation::ClassicDh {
                g: g.decode_element(r)?,
                alice_secret: opt(r)?,
                bob_secret: opt(r)?,
            },
            0x02 => Instantiation::GroupDh {
                a1: list(r)?,
                a2: list(r)?,
                b1: list(r)?,
                b2: list(r)?,
                x: g.decode_element(r)?,
            },
            0x03 => Instantiation::KoLee {
                a: list(r)?,
                b: list(r)?,
                x: g.decode_element(r)?,
            },
            0x04 => Instantiation::Str {
                a: list(r)?,
                b: list(r)?,
                x: g.decode_element(r)?,
            },
            0x05 => Instantiation::AagCommutator {
                s: list(r)?,
                t: list(r)?,
            },
            0x06 => Instantiation::SimDcp {
                s: list(r)?,
                t: list(r)?,
            },
            0x07 => Instantiation::SimDcpAlt {
                s: list(r)?,
                t: list(r)?,
            },
            0x08 => Instantiation::SymDp {
                s: list(r)?,
                t: list(r)?,
                k: r.u32()?,
                l: r.u32()?,
                secret_exponents: flag(r)?,
            },
            0x09 => Instantiation::FCommutator {
                f: decode_endo(&g, r)?,
                s: list(r)?,
                t: list(r)?,
            },
            0x0A => {
                let variant = match r.u8()? {
                    0 => ShiftedVariant::BiLd,
                    1 => ShiftedVariant::Rev,
                    _ => return Err(Error::Decode("bad shifted variant")),
                };
                Instantiation::ShiftedCommutator {
                    variant,
                    p: r.u16()?,
                    a: BraidWord::decode(r)?,
                    mixed: flag(r)?,
                    s: list(r)?,
                    t: list(r)?,
                }
            }
            _ => return Err(Error::Decode("unknown instantiation tag")),
        };
        let policy = KeyPolicy {
            leaves: r.u32()? as usize,
            max_depth: r.u32()? as usize,
            comb_bias: f64::from_bits(r.u64()?),
            word_len: r.u32()? as usize,
            exponent_max: r.u64()?,
        };
        let seed = r.u64()?;
        Ok(Self {
            platform: g,
            instantiation,
            policy,
            seed,
        })
    }
}

/// Strand count a shifted-commutator spec needs for generators in
/// `B_base` and trees of depth at most `depth`.
pub fn shifted_platform_strands(base: u16, p: u16, depth: usize) -> u16 {
    shifted_strands(base, p, depth)
}

pub(crate) fn shifted_parameter_ok(p: u16, a: &BraidWord) -> Result<bool> {
    check_shifted_conditions(p, a)
}
