//! JSON documents for specs, transcripts, secrets and attack instances.
//!
//! Elements are written per platform: braids as the letter list of their
//! canonical word, permutations as one-based image lists, residues as plain
//! integers. Messages inside transcripts are hex of the canonical binary
//! encoding used on the wire.

use magmakey_core::attacks::{Pairs, ProblemInstance};
use magmakey_core::braid::BraidWord;
use magmakey_core::codec::{Reader, Writer};
use magmakey_core::ldops::{LaverTable, OpDescriptor};
use magmakey_core::platform::{Element, Endomorphism, Platform, PointMap};
use magmakey_core::protocols::{
    decode_elements, encode_elements, Instantiation, KeyPolicy, ProtocolSpec, SecretKey, ShiftedVariant,
    Transcript,
};
use magmakey_core::Permutation;
use serde::{Deserialize, Serialize};

use crate::error::{doc_err, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PlatformDoc {
    Braid { strands: u16 },
    Symmetric { n: u8 },
    MultMod { p: u64 },
}

impl PlatformDoc {
    pub fn build(self) -> Result<Platform> {
        Ok(match self {
            PlatformDoc::Braid { strands } => Platform::braid(strands)?,
            PlatformDoc::Symmetric { n } => Platform::symmetric(n)?,
            PlatformDoc::MultMod { p } => Platform::mult_mod(p)?,
        })
    }

    pub fn of(p: &Platform) -> Self {
        match *p {
            Platform::Braid { strands } => PlatformDoc::Braid { strands },
            Platform::Symmetric { n } => PlatformDoc::Symmetric { n },
            Platform::MultMod { p } => PlatformDoc::MultMod { p },
        }
    }
}

/// Parse `braid:N`, `sym:N` or `mod:P`.
pub fn parse_platform(s: &str) -> Result<Platform> {
    let (kind, n) = s
        .split_once(':')
        .ok_or_else(|| doc_err(format!("platform `{s}` is not of the form kind:N")))?;
    let n: u64 = n.parse().map_err(|_| doc_err(format!("bad platform size in `{s}`")))?;
    let too_big = || doc_err(format!("platform size out of range in `{s}`"));
    let doc = match kind {
        "braid" => PlatformDoc::Braid {
            strands: u16::try_from(n).map_err(|_| too_big())?,
        },
        "sym" => PlatformDoc::Symmetric {
            n: u8::try_from(n).map_err(|_| too_big())?,
        },
        "mod" => PlatformDoc::MultMod { p: n },
        _ => return Err(doc_err(format!("unknown platform kind `{kind}`"))),
    };
    doc.build()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElemDoc {
    Int(u64),
    Word(Vec<i64>),
}

pub fn elem_doc(x: &Element) -> ElemDoc {
    match x {
        Element::Braid(b) => ElemDoc::Word(b.canonical_word().letters().iter().map(|&l| l as i64).collect()),
        Element::Perm(p) => ElemDoc::Word(p.images().map(i64::from).collect()),
        Element::Residue(v) => ElemDoc::Int(*v),
    }
}

pub fn parse_elem(g: &Platform, d: &ElemDoc) -> Result<Element> {
    match (g, d) {
        (Platform::Braid { .. }, ElemDoc::Word(ls)) => {
            let letters = ls
                .iter()
                .map(|&l| i16::try_from(l).map_err(|_| doc_err("braid letter out of range")))
                .collect::<Result<Vec<_>>>()?;
            Ok(g.braid_letters(&letters)?)
        }
        (Platform::Symmetric { .. }, ElemDoc::Word(images)) => {
            let images = images
                .iter()
                .map(|&i| u16::try_from(i).map_err(|_| doc_err("permutation image out of range")))
                .collect::<Result<Vec<_>>>()?;
            let x = Element::Perm(Permutation::from_images(&images)?);
            g.check(&x)?;
            Ok(x)
        }
        (Platform::MultMod { .. }, ElemDoc::Int(v)) => {
            let x = Element::Residue(*v);
            g.check(&x)?;
            Ok(x)
        }
        _ => Err(doc_err(format!("element {d:?} does not fit platform {}", g.name()))),
    }
}

fn elems_doc(xs: &[Element]) -> Vec<ElemDoc> {
    xs.iter().map(elem_doc).collect()
}

fn parse_elems(g: &Platform, ds: &[ElemDoc]) -> Result<Vec<Element>> {
    ds.iter().map(|d| parse_elem(g, d)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordDoc {
    pub strands: u16,
    pub letters: Vec<i16>,
}

impl WordDoc {
    pub fn of(w: &BraidWord) -> Self {
        Self {
            strands: w.strands(),
            letters: w.letters().to_vec(),
        }
    }

    pub fn build(&self) -> Result<BraidWord> {
        Ok(BraidWord::new(self.strands, self.letters.clone())?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EndoDoc {
    Identity,
    Inner { by: ElemDoc },
    PowerShift { d: u16 },
    PointMap { table: Vec<u32> },
}

pub fn endo_doc(f: &Endomorphism) -> EndoDoc {
    match f {
        Endomorphism::Identity => EndoDoc::Identity,
        Endomorphism::Inner(x) => EndoDoc::Inner { by: elem_doc(x) },
        Endomorphism::PowerShift { d } => EndoDoc::PowerShift { d: *d },
        Endomorphism::PointMap(m) => EndoDoc::PointMap {
            table: m.table().to_vec(),
        },
    }
}

pub fn parse_endo(g: &Platform, d: &EndoDoc) -> Result<Endomorphism> {
    Ok(match d {
        EndoDoc::Identity => Endomorphism::Identity,
        EndoDoc::Inner { by } => Endomorphism::Inner(parse_elem(g, by)?),
        EndoDoc::PowerShift { d } => Endomorphism::PowerShift { d: *d },
        EndoDoc::PointMap { table } => Endomorphism::PointMap(PointMap::new(*g, table.clone())?),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VariantDoc {
    BiLd,
    Rev,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum InstantiationDoc {
    ClassicDh {
        g: ElemDoc,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        alice_secret: Option<u64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        bob_secret: Option<u64>,
    },
    GroupDh {
        a1: Vec<ElemDoc>,
        a2: Vec<ElemDoc>,
        b1: Vec<ElemDoc>,
        b2: Vec<ElemDoc>,
        x: ElemDoc,
    },
    KoLee {
        a: Vec<ElemDoc>,
        b: Vec<ElemDoc>,
        x: ElemDoc,
    },
    Str {
        a: Vec<ElemDoc>,
        b: Vec<ElemDoc>,
        x: ElemDoc,
    },
    AagCommutator {
        s: Vec<ElemDoc>,
        t: Vec<ElemDoc>,
    },
    Simdcp {
        s: Vec<ElemDoc>,
        t: Vec<ElemDoc>,
    },
    SimdcpAlt {
        s: Vec<ElemDoc>,
        t: Vec<ElemDoc>,
    },
    Symdp {
        s: Vec<ElemDoc>,
        t: Vec<ElemDoc>,
        k: u32,
        l: u32,
        #[serde(default)]
        secret_exponents: bool,
    },
    FCommutator {
        f: EndoDoc,
        s: Vec<ElemDoc>,
        t: Vec<ElemDoc>,
    },
    ShiftedCommutator {
        variant: VariantDoc,
        p: u16,
        a: WordDoc,
        #[serde(default)]
        mixed: bool,
        s: Vec<ElemDoc>,
        t: Vec<ElemDoc>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolicyDoc {
    pub leaves: usize,
    pub max_depth: usize,
    pub comb_bias: f64,
    pub word_len: usize,
    pub exponent_max: u64,
}

impl From<KeyPolicy> for PolicyDoc {
    fn from(p: KeyPolicy) -> Self {
        Self {
            leaves: p.leaves,
            max_depth: p.max_depth,
            comb_bias: p.comb_bias,
            word_len: p.word_len,
            exponent_max: p.exponent_max,
        }
    }
}

impl From<PolicyDoc> for KeyPolicy {
    fn from(p: PolicyDoc) -> Self {
        Self {
            leaves: p.leaves,
            max_depth: p.max_depth,
            comb_bias: p.comb_bias,
            word_len: p.word_len,
            exponent_max: p.exponent_max,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpecDoc {
    pub platform: PlatformDoc,
    pub instantiation: InstantiationDoc,
    /// Defaults to the platform's policy when omitted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub policy: Option<PolicyDoc>,
    #[serde(default)]
    pub seed: u64,
}

impl SpecDoc {
    pub fn of(spec: &ProtocolSpec) -> Self {
        use Instantiation as I;
        use InstantiationDoc as D;
        let instantiation = match &spec.instantiation {
            I::ClassicDh {
                g,
                alice_secret,
                bob_secret,
            } => D::ClassicDh {
                g: elem_doc(g),
                alice_secret: *alice_secret,
                bob_secret: *bob_secret,
            },
            I::GroupDh { a1, a2, b1, b2, x } => D::GroupDh {
                a1: elems_doc(a1),
                a2: elems_doc(a2),
                b1: elems_doc(b1),
                b2: elems_doc(b2),
                x: elem_doc(x),
            },
            I::KoLee { a, b, x } => D::KoLee {
                a: elems_doc(a),
                b: elems_doc(b),
                x: elem_doc(x),
            },
            I::Str { a, b, x } => D::Str {
                a: elems_doc(a),
                b: elems_doc(b),
                x: elem_doc(x),
            },
            I::AagCommutator { s, t } => D::AagCommutator {
                s: elems_doc(s),
                t: elems_doc(t),
            },
            I::SimDcp { s, t } => D::Simdcp {
                s: elems_doc(s),
                t: elems_doc(t),
            },
            I::SimDcpAlt { s, t } => D::SimdcpAlt {
                s: elems_doc(s),
                t: elems_doc(t),
            },
            I::SymDp {
                s,
                t,
                k,
                l,
                secret_exponents,
            } => D::Symdp {
                s: elems_doc(s),
                t: elems_doc(t),
                k: *k,
                l: *l,
                secret_exponents: *secret_exponents,
            },
            I::FCommutator { f, s, t } => D::FCommutator {
                f: endo_doc(f),
                s: elems_doc(s),
                t: elems_doc(t),
            },
            I::ShiftedCommutator {
                variant,
                p,
                a,
                mixed,
                s,
                t,
            } => D::ShiftedCommutator {
                variant: match variant {
                    ShiftedVariant::BiLd => VariantDoc::BiLd,
                    ShiftedVariant::Rev => VariantDoc::Rev,
                },
                p: *p,
                a: WordDoc::of(a),
                mixed: *mixed,
                s: elems_doc(s),
                t: elems_doc(t),
            },
        };
        Self {
            platform: PlatformDoc::of(&spec.platform),
            instantiation,
            policy: Some(spec.policy.into()),
            seed: spec.seed,
        }
    }

    /// Build and validate the spec.
    pub fn build(&self) -> Result<ProtocolSpec> {
        use Instantiation as I;
        use InstantiationDoc as D;
        let g = self.platform.build()?;
        let e = |d: &ElemDoc| parse_elem(&g, d);
        let es = |ds: &[ElemDoc]| parse_elems(&g, ds);
        let instantiation = match &self.instantiation {
            D::ClassicDh {
                g: base,
                alice_secret,
                bob_secret,
            } => I::ClassicDh {
                g: e(base)?,
                alice_secret: *alice_secret,
                bob_secret: *bob_secret,
            },
            D::GroupDh { a1, a2, b1, b2, x } => I::GroupDh {
                a1: es(a1)?,
                a2: es(a2)?,
                b1: es(b1)?,
                b2: es(b2)?,
                x: e(x)?,
            },
            D::KoLee { a, b, x } => I::KoLee {
                a: es(a)?,
                b: es(b)?,
                x: e(x)?,
            },
            D::Str { a, b, x } => I::Str {
                a: es(a)?,
                b: es(b)?,
                x: e(x)?,
            },
            D::AagCommutator { s, t } => I::AagCommutator { s: es(s)?, t: es(t)? },
            D::Simdcp { s, t } => I::SimDcp { s: es(s)?, t: es(t)? },
            D::SimdcpAlt { s, t } => I::SimDcpAlt { s: es(s)?, t: es(t)? },
            D::Symdp {
                s,
                t,
                k,
                l,
                secret_exponents,
            } => I::SymDp {
                s: es(s)?,
                t: es(t)?,
                k: *k,
                l: *l,
                secret_exponents: *secret_exponents,
            },
            D::FCommutator { f, s, t } => I::FCommutator {
                f: parse_endo(&g, f)?,
                s: es(s)?,
                t: es(t)?,
            },
            D::ShiftedCommutator {
                variant,
                p,
                a,
                mixed,
                s,
                t,
            } => I::ShiftedCommutator {
                variant: match variant {
                    VariantDoc::BiLd => ShiftedVariant::BiLd,
                    VariantDoc::Rev => ShiftedVariant::Rev,
                },
                p: *p,
                a: a.build()?,
                mixed: *mixed,
                s: es(s)?,
                t: es(t)?,
            },
        };
        let spec = ProtocolSpec {
            platform: g,
            instantiation,
            policy: self.policy.map(Into::into).unwrap_or_else(|| KeyPolicy::default_for(&g)),
            seed: self.seed,
        };
        spec.validate()?;
        Ok(spec)
    }
}

pub fn messages_hex(g: &Platform, xs: &[Element]) -> Result<String> {
    let mut w = Writer::new();
    encode_elements(g, xs, &mut w)?;
    Ok(hex::encode(w.as_slice()))
}

pub fn messages_from_hex(g: &Platform, s: &str) -> Result<Vec<Element>> {
    let bytes = hex::decode(s).map_err(|e| doc_err(format!("bad hex: {e}")))?;
    let mut r = Reader::new(&bytes);
    let xs = decode_elements(g, &mut r)?;
    r.expect_end()?;
    Ok(xs)
}

/// A transcript as written to disk. Networked sessions only know their own
/// side's push-through value and key, so those fields are optional.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TranscriptDoc {
    pub spec: SpecDoc,
    pub spec_digest: String,
    pub alice_message: String,
    pub bob_message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alice_step3: Option<ElemDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bob_step3: Option<ElemDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_a: Option<ElemDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_b: Option<ElemDoc>,
    pub extracted_key: String,
    pub seed: u64,
    #[serde(default)]
    pub warnings: Vec<String>,
}

impl TranscriptDoc {
    pub fn of(t: &Transcript) -> Result<Self> {
        let g = &t.spec.platform;
        Ok(Self {
            spec: SpecDoc::of(&t.spec),
            spec_digest: hex::encode(t.spec_digest),
            alice_message: messages_hex(g, &t.alice_message)?,
            bob_message: messages_hex(g, &t.bob_message)?,
            alice_step3: Some(elem_doc(&t.alice_step3)),
            bob_step3: Some(elem_doc(&t.bob_step3)),
            k_a: Some(elem_doc(&t.k_a)),
            k_b: Some(elem_doc(&t.k_b)),
            extracted_key: hex::encode(t.extracted_key),
            seed: t.seed,
            warnings: t.warnings.clone(),
        })
    }

    /// Messages, digest and extracted key agree.
    pub fn same_key_fields(&self, other: &Self) -> bool {
        self.spec_digest == other.spec_digest
            && self.alice_message == other.alice_message
            && self.bob_message == other.bob_message
            && self.extracted_key == other.extracted_key
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SecretDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tree: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub indices: Vec<u16>,
    pub elements: Vec<ElemDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponent: Option<u64>,
}

impl SecretDoc {
    pub fn of(s: &SecretKey) -> Self {
        Self {
            tree: s.tree.as_ref().map(|t| t.to_string()),
            indices: s.indices.clone(),
            elements: elems_doc(&s.elements),
            exponent: s.exponent,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum OpDoc {
    Conj,
    FConj { f: EndoDoc },
    FConjRev { f: EndoDoc },
    SymConj,
    FSymConj { f: EndoDoc },
    FSymConjRev { f: EndoDoc },
    Bullet,
    BetaKl { k: u32, l: u32 },
    Shifted { p: u16, a: WordDoc },
    ShiftedBar { p: u16, a: WordDoc },
    ShiftedRev { p: u16, a: WordDoc },
    Laver { n: u8 },
}

pub fn parse_op(g: &Platform, d: &OpDoc) -> Result<OpDescriptor> {
    Ok(match d {
        OpDoc::Conj => OpDescriptor::Conj,
        OpDoc::FConj { f } => OpDescriptor::FConj(parse_endo(g, f)?),
        OpDoc::FConjRev { f } => OpDescriptor::FConjRev(parse_endo(g, f)?),
        OpDoc::SymConj => OpDescriptor::SymConj,
        OpDoc::FSymConj { f } => OpDescriptor::FSymConj(parse_endo(g, f)?),
        OpDoc::FSymConjRev { f } => OpDescriptor::FSymConjRev(parse_endo(g, f)?),
        OpDoc::Bullet => OpDescriptor::Bullet,
        OpDoc::BetaKl { k, l } => OpDescriptor::BetaKl { k: *k, l: *l },
        OpDoc::Shifted { p, a } => OpDescriptor::Shifted { p: *p, a: a.build()? },
        OpDoc::ShiftedBar { p, a } => OpDescriptor::ShiftedBar { p: *p, a: a.build()? },
        OpDoc::ShiftedRev { p, a } => OpDescriptor::ShiftedRev { p: *p, a: a.build()? },
        OpDoc::Laver { n } => OpDescriptor::Laver(LaverTable::new(*n)?),
    })
}

pub type PairDoc = [ElemDoc; 2];

/// Problem instances. Laver operands are plain integers `1..=2^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "problem", rename_all = "snake_case")]
pub enum InstanceDoc {
    Csp {
        s: ElemDoc,
        target: ElemDoc,
    },
    LSimcsp {
        pairs: Vec<PairDoc>,
    },
    SubCsp {
        h: Vec<ElemDoc>,
        s: ElemDoc,
        target: ElemDoc,
    },
    LSscsp {
        h: Vec<ElemDoc>,
        pairs: Vec<PairDoc>,
    },
    Dcp {
        h1: Vec<ElemDoc>,
        h2: Vec<ElemDoc>,
        s: ElemDoc,
        target: ElemDoc,
    },
    Cdp {
        h: Vec<ElemDoc>,
        s: ElemDoc,
        target: ElemDoc,
    },
    DhDcp {
        a1: Vec<ElemDoc>,
        a2: Vec<ElemDoc>,
        b1: Vec<ElemDoc>,
        b2: Vec<ElemDoc>,
        s: ElemDoc,
        x_msg: ElemDoc,
        y_msg: ElemDoc,
    },
    Klp {
        a: Vec<ElemDoc>,
        b: Vec<ElemDoc>,
        s: ElemDoc,
        sx: ElemDoc,
        sy: ElemDoc,
    },
    Aagp {
        a: Vec<ElemDoc>,
        b: Vec<ElemDoc>,
        a_images: Vec<ElemDoc>,
        b_images: Vec<ElemDoc>,
    },
    Msp {
        target: ElemDoc,
        gens: Vec<ElemDoc>,
    },
    NSimdp {
        pairs: Vec<PairDoc>,
    },
    SymSdp {
        k: i64,
        l: i64,
        pairs: Vec<PairDoc>,
    },
    FCsp {
        f: EndoDoc,
        pairs: Vec<PairDoc>,
    },
    ShCsp {
        p: u16,
        a: WordDoc,
        pairs: Vec<PairDoc>,
    },
    LdMsp {
        target: ElemDoc,
        gens: Vec<ElemDoc>,
        ops: Vec<OpDoc>,
        max_leaves: usize,
    },
}

fn laver_elem(d: &ElemDoc) -> Result<Element> {
    match d {
        ElemDoc::Int(v) => Ok(Element::Residue(*v)),
        ElemDoc::Word(_) => Err(doc_err("Laver operands are integers")),
    }
}

impl InstanceDoc {
    pub fn build(&self, g: &Platform) -> Result<ProblemInstance> {
        use InstanceDoc as D;
        use ProblemInstance as P;
        let e = |d: &ElemDoc| parse_elem(g, d);
        let es = |ds: &[ElemDoc]| parse_elems(g, ds);
        let ps = |ds: &[PairDoc]| -> Result<Pairs> { ds.iter().map(|[a, b]| Ok((e(a)?, e(b)?))).collect() };
        Ok(match self {
            D::Csp { s, target } => P::Csp {
                s: e(s)?,
                target: e(target)?,
            },
            D::LSimcsp { pairs } => P::LSimCsp { pairs: ps(pairs)? },
            D::SubCsp { h, s, target } => P::SubCsp {
                h: es(h)?,
                s: e(s)?,
                target: e(target)?,
            },
            D::LSscsp { h, pairs } => P::LSsCsp {
                h: es(h)?,
                pairs: ps(pairs)?,
            },
            D::Dcp { h1, h2, s, target } => P::Dcp {
                h1: es(h1)?,
                h2: es(h2)?,
                s: e(s)?,
                target: e(target)?,
            },
            D::Cdp { h, s, target } => P::Cdp {
                h: es(h)?,
                s: e(s)?,
                target: e(target)?,
            },
            D::DhDcp {
                a1,
                a2,
                b1,
                b2,
                s,
                x_msg,
                y_msg,
            } => P::DhDcp {
                a1: es(a1)?,
                a2: es(a2)?,
                b1: es(b1)?,
                b2: es(b2)?,
                s: e(s)?,
                x_msg: e(x_msg)?,
                y_msg: e(y_msg)?,
            },
            D::Klp { a, b, s, sx, sy } => P::Klp {
                a: es(a)?,
                b: es(b)?,
                s: e(s)?,
                sx: e(sx)?,
                sy: e(sy)?,
            },
            D::Aagp {
                a,
                b,
                a_images,
                b_images,
            } => P::Aagp {
                a: es(a)?,
                b: es(b)?,
                a_images: es(a_images)?,
                b_images: es(b_images)?,
            },
            D::Msp { target, gens } => P::Msp {
                target: e(target)?,
                gens: es(gens)?,
            },
            D::NSimdp { pairs } => P::NSimDp { pairs: ps(pairs)? },
            D::SymSdp { k, l, pairs } => P::SymSdp {
                k: *k,
                l: *l,
                pairs: ps(pairs)?,
            },
            D::FCsp { f, pairs } => P::FCsp {
                f: parse_endo(g, f)?,
                pairs: ps(pairs)?,
            },
            D::ShCsp { p, a, pairs } => P::ShCsp {
                p: *p,
                a: a.build()?,
                pairs: ps(pairs)?,
            },
            D::LdMsp {
                target,
                gens,
                ops,
                max_leaves,
            } => {
                let ops = ops.iter().map(|o| parse_op(g, o)).collect::<Result<Vec<_>>>()?;
                let laver = matches!(ops.first(), Some(OpDescriptor::Laver(_)));
                let elem = |d: &ElemDoc| if laver { laver_elem(d) } else { e(d) };
                P::LdMsp {
                    target: elem(target)?,
                    gens: gens.iter().map(elem).collect::<Result<Vec<_>>>()?,
                    ops,
                    max_leaves: *max_leaves,
                }
            }
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverDoc {
    #[default]
    BruteForce,
    /// Greedy length peeling; f_csp and sh_csp instances on braid platforms.
    Length,
}

fn default_budget() -> u64 {
    1_000_000
}

/// An attack experiment: one platform, a solver, a budget and a list of
/// instances.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AttackDoc {
    /// May be omitted when every instance runs over a Laver table.
    #[serde(default)]
    pub platform: Option<PlatformDoc>,
    #[serde(default)]
    pub solver: SolverDoc,
    #[serde(default = "default_budget")]
    pub budget: u64,
    pub instances: Vec<InstanceDoc>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use magmakey_core::protocols::{make_aag_commutator, make_classic_dh, make_shifted_commutator, run};

    #[test]
    fn spec_round_trips_through_json() {
        let w = |l: &[i16]| BraidWord::new(3, l.to_vec()).unwrap();
        let specs = [
            make_classic_dh(23, 5, Some(6), Some(15), 1).unwrap(),
            make_aag_commutator(
                Platform::symmetric(4).unwrap(),
                vec![Element::Perm(Permutation::cycle(4, &[1, 2]).unwrap())],
                vec![Element::Perm(Permutation::cycle(4, &[2, 3, 4]).unwrap())],
                None,
                2,
            )
            .unwrap(),
            make_shifted_commutator(
                ShiftedVariant::BiLd,
                1,
                BraidWord::generator(2, 1).unwrap(),
                true,
                &[w(&[1, 2]), w(&[-2])],
                &[w(&[2])],
                None,
                3,
            )
            .unwrap(),
        ];
        for spec in specs {
            let json = serde_json::to_string(&SpecDoc::of(&spec)).unwrap();
            let back: SpecDoc = serde_json::from_str(&json).unwrap();
            assert_eq!(back.build().unwrap(), spec);
        }
    }

    #[test]
    fn dh_spec_from_hand_written_json() {
        let doc: SpecDoc = serde_json::from_str(
            r#"{"platform": {"kind": "mult_mod", "p": 23},
                "instantiation": {"type": "classic_dh", "g": 5, "alice_secret": 6, "bob_secret": 15}}"#,
        )
        .unwrap();
        let t = run(&doc.build().unwrap()).unwrap();
        assert_eq!(t.k_a, Element::Residue(2));
        let d = TranscriptDoc::of(&t).unwrap();
        assert_eq!(d.k_a, Some(ElemDoc::Int(2)));
        let g = t.spec.platform;
        assert_eq!(messages_from_hex(&g, &d.alice_message).unwrap(), [Element::Residue(8)]);
    }

    #[test]
    fn elements_must_fit_the_platform() {
        let s4 = Platform::symmetric(4).unwrap();
        assert!(parse_elem(&s4, &ElemDoc::Word(vec![2, 1, 3, 4])).is_ok());
        assert!(parse_elem(&s4, &ElemDoc::Word(vec![1, 1, 3, 4])).is_err());
        assert!(parse_elem(&s4, &ElemDoc::Int(3)).is_err());
        let b3 = Platform::braid(3).unwrap();
        assert!(parse_elem(&b3, &ElemDoc::Word(vec![3])).is_err());
        assert_eq!(parse_platform("sym:4").unwrap(), s4);
        assert!(parse_platform("sym4").is_err());
    }
}
