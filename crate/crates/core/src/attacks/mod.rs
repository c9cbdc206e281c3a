//! Desk-scale attack tooling: problem instances, brute-force oracles on
//! finite platforms, reductions between problems, and a length-based
//! search skeleton for braid instances.
//!
//! Every witness, whoever produced it, can be checked with [`verify`] by
//! substituting it into the defining equation of its instance.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;

use crate::braid::BraidWord;
use crate::ldops::{Carrier, OpDescriptor};
use crate::magma::TreeWord;
use crate::platform::{Element, Endomorphism, Platform};
use crate::{Error, Result};

mod reductions;

pub use reductions::{
    inn_centralizer_experiment, inn_perturbations, length_attack_skeleton, lift, lower, reduce_cdp_to_klp,
    reduce_simdp_to_sscsp, reduce_simfcsp_to_simcsp, reduce_simshcsp_to_simcsp, reduce_sscsp_to_aagp,
    AagpReduction, BruteForce, InnExperiment, InnReport, Oracle, Planted, SimDpDerived,
};

/// Pairs `(s, s')` of a simultaneous problem.
pub type Pairs = Vec<(Element, Element)>;

/// Conjugation is `s^x = x⁻¹ s x` throughout.
#[derive(Clone, Debug, PartialEq)]
pub enum ProblemInstance {
    /// Find `x` with `s^x = target`.
    Csp { s: Element, target: Element },
    /// Find `x` with `s_i^x = s_i'` for all pairs.
    LSimCsp { pairs: Pairs },
    /// As [`ProblemInstance::Csp`] with `x ∈ ⟨h⟩`.
    SubCsp { h: Vec<Element>, s: Element, target: Element },
    /// As [`ProblemInstance::LSimCsp`] with `x ∈ ⟨h⟩`.
    LSsCsp { h: Vec<Element>, pairs: Pairs },
    /// Find `(x1, x2) ∈ ⟨h1⟩ × ⟨h2⟩` with `x1 s x2 = target`.
    Dcp {
        h1: Vec<Element>,
        h2: Vec<Element>,
        s: Element,
        target: Element,
    },
    /// Find `(x1, x2) ∈ ⟨h⟩²` with `x1 s x2 = target`.
    Cdp { h: Vec<Element>, s: Element, target: Element },
    /// Find `x1 y1 s x2 y2` from `x1 s x2` and `y1 s y2`.
    DhDcp {
        a1: Vec<Element>,
        a2: Vec<Element>,
        b1: Vec<Element>,
        b2: Vec<Element>,
        s: Element,
        x_msg: Element,
        y_msg: Element,
    },
    /// Find `x⁻¹ y⁻¹ s x y` from `s^x, s^y` with `[A, B] = 1`.
    Klp {
        a: Vec<Element>,
        b: Vec<Element>,
        s: Element,
        sx: Element,
        sy: Element,
    },
    /// Find `[x, y]` from `a_i^y` and `b_j^x`, `x ∈ ⟨a⟩, y ∈ ⟨b⟩`.
    Aagp {
        a: Vec<Element>,
        b: Vec<Element>,
        a_images: Vec<Element>,
        b_images: Vec<Element>,
    },
    /// Express `target` as a group word in `gens`.
    Msp { target: Element, gens: Vec<Element> },
    /// Find `(a_l, a_r)` with `a_l t a_r = t'` for all pairs.
    NSimDp { pairs: Pairs },
    /// Find `a` with `a^k t a^l = t'` for all pairs.
    SymSdp { k: i64, l: i64, pairs: Pairs },
    /// Find `b` with `f(b⁻¹ s) b = s'` for all pairs.
    FCsp { f: Endomorphism, pairs: Pairs },
    /// Find `b` with `∂^p(b⁻¹) a ∂^p(s) b = s'` for all pairs.
    ShCsp { p: u16, a: BraidWord, pairs: Pairs },
    /// Express `target` as a tree word over `gens` and `ops`.
    LdMsp {
        target: Element,
        gens: Vec<Element>,
        ops: Vec<OpDescriptor>,
        max_leaves: usize,
    },
}

impl ProblemInstance {
    pub fn tag(&self) -> &'static str {
        match self {
            ProblemInstance::Csp { .. } => "csp",
            ProblemInstance::LSimCsp { .. } => "l_simcsp",
            ProblemInstance::SubCsp { .. } => "sub_csp",
            ProblemInstance::LSsCsp { .. } => "l_sscsp",
            ProblemInstance::Dcp { .. } => "dcp",
            ProblemInstance::Cdp { .. } => "cdp",
            ProblemInstance::DhDcp { .. } => "dh_dcp",
            ProblemInstance::Klp { .. } => "klp",
            ProblemInstance::Aagp { .. } => "aagp",
            ProblemInstance::Msp { .. } => "msp",
            ProblemInstance::NSimDp { .. } => "n_simdp",
            ProblemInstance::SymSdp { .. } => "sym_sdp",
            ProblemInstance::FCsp { .. } => "f_csp",
            ProblemInstance::ShCsp { .. } => "sh_csp",
            ProblemInstance::LdMsp { .. } => "ld_msp",
        }
    }

    /// Whether the tag's arity constraints hold (nonempty pair lists,
    /// matching image counts, at least one generator or operation).
    pub fn well_formed(&self) -> bool {
        match self {
            ProblemInstance::LSimCsp { pairs }
            | ProblemInstance::LSsCsp { pairs, .. }
            | ProblemInstance::NSimDp { pairs }
            | ProblemInstance::SymSdp { pairs, .. }
            | ProblemInstance::FCsp { pairs, .. }
            | ProblemInstance::ShCsp { pairs, .. } => !pairs.is_empty(),
            ProblemInstance::Aagp {
                a,
                b,
                a_images,
                b_images,
            } => a.len() == a_images.len() && b.len() == b_images.len(),
            ProblemInstance::LdMsp { gens, ops, .. } => !gens.is_empty() && !ops.is_empty(),
            _ => true,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    Element(Element),
    Pair(Element, Element),
    /// Group word: `±(i+1)` stands for `gens[i]^{±1}`.
    Word(Vec<i32>),
    Tree(TreeWord),
    /// A recovered shared key together with the recovered secrets that
    /// certify it.
    Key { key: Element, parts: Vec<Element> },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Search {
    Found(Witness),
    /// The whole space (of the given size) was examined.
    NotFound { examined: u64 },
}

impl Search {
    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Search::Found(w) => Some(w),
            Search::NotFound { .. } => None,
        }
    }
}

fn member(g: &Platform, x: &Element, gens: &[Element]) -> Result<bool> {
    Ok(g.subgroup(gens)?.binary_search(x).is_ok())
}

fn conj_all(g: &Platform, pairs: &[(Element, Element)], x: &Element) -> Result<bool> {
    for (s, t) in pairs {
        if g.conj(s, x)? != *t {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(crate) fn eval_word(g: &Platform, gens: &[Element], word: &[i32]) -> Result<Element> {
    let mut acc = g.identity();
    for &l in word {
        let i = l.unsigned_abs() as usize;
        if i == 0 || i > gens.len() {
            return Err(Error::LeafOutOfRange {
                index: i,
                count: gens.len(),
            });
        }
        let x = if l > 0 { gens[i - 1].clone() } else { g.inv(&gens[i - 1])? };
        acc = g.mul(&acc, &x)?;
    }
    Ok(acc)
}

fn op_carrier(platform: &Platform, ops: &[OpDescriptor]) -> Carrier {
    match ops.first() {
        Some(OpDescriptor::Laver(t)) => Carrier::Laver(t.clone()),
        _ if platform.is_finite() => Carrier::Finite(*platform),
        _ => Carrier::Braid {
            platform: *platform,
            operand_strands: 2,
            operand_len: 0,
            pure: false,
        },
    }
}

fn eval_tree(carrier: &Carrier, tree: &TreeWord, gens: &[Element], ops: &[OpDescriptor]) -> Result<Element> {
    tree.eval(gens, &mut |label, x, y| {
        let op = ops.get(label as usize).ok_or(Error::OpLabelOutOfRange {
            label: label as usize,
            count: ops.len(),
        })?;
        carrier.apply(op, x, y)
    })
}

/// `f(b⁻¹ s) b`.
pub fn f_conj(g: &Platform, f: &Endomorphism, b: &Element, s: &Element) -> Result<Element> {
    OpDescriptor::FConj(f.clone()).apply(g, b, s)
}

/// `∂^p(b⁻¹) a ∂^p(s) b`.
pub fn sh_conj(g: &Platform, p: u16, a: &BraidWord, b: &Element, s: &Element) -> Result<Element> {
    OpDescriptor::Shifted { p, a: a.clone() }.apply(g, b, s)
}

/// Substitute `w` into the defining equation of `inst`. Membership
/// constraints are checked on finite platforms.
pub fn verify(inst: &ProblemInstance, platform: &Platform, w: &Witness) -> Result<bool> {
    let g = platform;
    Ok(match (inst, w) {
        (ProblemInstance::Csp { s, target }, Witness::Element(x)) => g.conj(s, x)? == *target,
        (ProblemInstance::LSimCsp { pairs }, Witness::Element(x)) => conj_all(g, pairs, x)?,
        (ProblemInstance::SubCsp { h, s, target }, Witness::Element(x)) => {
            g.conj(s, x)? == *target && member(g, x, h)?
        }
        (ProblemInstance::LSsCsp { h, pairs }, Witness::Element(x)) => conj_all(g, pairs, x)? && member(g, x, h)?,
        (ProblemInstance::Dcp { h1, h2, s, target }, Witness::Pair(x1, x2)) => {
            g.product([x1, s, x2])? == *target && member(g, x1, h1)? && member(g, x2, h2)?
        }
        (ProblemInstance::Cdp { h, s, target }, Witness::Pair(x1, x2)) => {
            g.product([x1, s, x2])? == *target && member(g, x1, h)? && member(g, x2, h)?
        }
        (
            ProblemInstance::DhDcp {
                a1,
                a2,
                s,
                x_msg,
                y_msg,
                ..
            },
            Witness::Key { key, parts },
        ) => match parts.as_slice() {
            [x1, x2] => {
                g.product([x1, s, x2])? == *x_msg
                    && member(g, x1, a1)?
                    && member(g, x2, a2)?
                    && g.product([x1, y_msg, x2])? == *key
            }
            _ => false,
        },
        (ProblemInstance::Klp { a, s, sx, sy, .. }, Witness::Key { key, parts }) => match parts.as_slice() {
            [x] => g.conj(s, x)? == *sx && member(g, x, a)? && g.conj(sy, x)? == *key,
            [x1, x2] => {
                g.product([x1, s, x2])? == *sx
                    && member(g, x1, a)?
                    && member(g, x2, a)?
                    && g.product([x1, sy, x2])? == *key
            }
            _ => false,
        },
        (
            ProblemInstance::Aagp {
                a,
                b,
                a_images,
                b_images,
            },
            Witness::Key { key, parts },
        ) => match parts.as_slice() {
            [x, y] => {
                let bx: Pairs = b.iter().cloned().zip(b_images.iter().cloned()).collect();
                let ay: Pairs = a.iter().cloned().zip(a_images.iter().cloned()).collect();
                conj_all(g, &bx, x)?
                    && conj_all(g, &ay, y)?
                    && member(g, x, a)?
                    && member(g, y, b)?
                    && g.commutator(x, y)? == *key
            }
            _ => false,
        },
        (ProblemInstance::Msp { target, gens }, Witness::Word(word)) => eval_word(g, gens, word)? == *target,
        (ProblemInstance::NSimDp { pairs }, Witness::Pair(l, r)) => {
            for (t, tp) in pairs {
                if g.product([l, t, r])? != *tp {
                    return Ok(false);
                }
            }
            true
        }
        (ProblemInstance::SymSdp { k, l, pairs }, Witness::Element(a)) => {
            let ak = g.pow(a, *k)?;
            let al = g.pow(a, *l)?;
            for (t, tp) in pairs {
                if g.product([&ak, t, &al])? != *tp {
                    return Ok(false);
                }
            }
            true
        }
        (ProblemInstance::FCsp { f, pairs }, Witness::Element(b)) => {
            for (s, sp) in pairs {
                if f_conj(g, f, b, s)? != *sp {
                    return Ok(false);
                }
            }
            true
        }
        (ProblemInstance::ShCsp { p, a, pairs }, Witness::Element(b)) => {
            for (s, sp) in pairs {
                if sh_conj(g, *p, a, b, s)? != *sp {
                    return Ok(false);
                }
            }
            true
        }
        (
            ProblemInstance::LdMsp {
                target,
                gens,
                ops,
                max_leaves,
            },
            Witness::Tree(t),
        ) => t.leaves() <= *max_leaves && eval_tree(&op_carrier(g, ops), t, gens, ops)? == *target,
        _ => false,
    })
}

fn within(budget: u64, size: usize) -> Result<()> {
    if size as u64 > budget {
        return Err(Error::BudgetExceeded);
    }
    Ok(())
}

fn search<F>(space: &[Element], budget: u64, mut hit: F) -> Result<Search>
where
    F: FnMut(&Element) -> Result<Option<Witness>>,
{
    within(budget, space.len())?;
    for x in space {
        if let Some(w) = hit(x)? {
            return Ok(Search::Found(w));
        }
    }
    Ok(Search::NotFound {
        examined: space.len() as u64,
    })
}

/// Exhaustive search in deterministic order (platform rank order, or
/// sorted subgroup order). Fails with [`Error::BudgetExceeded`] before
/// searching when the space is larger than `budget`.
pub fn bf_solve(inst: &ProblemInstance, platform: &Platform, budget: u64) -> Result<Search> {
    let g = platform;
    if let ProblemInstance::LdMsp {
        target,
        gens,
        ops,
        max_leaves,
    } = inst
    {
        let carrier = op_carrier(g, ops);
        return Ok(match bf_membership_magma(&carrier, target, gens, ops, *max_leaves, budget)? {
            Some(t) => Search::Found(Witness::Tree(t)),
            None => Search::NotFound { examined: budget },
        });
    }
    if !g.is_finite() {
        return Err(Error::NotFinite);
    }
    let el = |x: &Element| Some(Witness::Element(x.clone()));
    match inst {
        ProblemInstance::Csp { s, target } => search(&g.elements()?, budget, |x| {
            Ok((g.conj(s, x)? == *target).then(|| el(x)).flatten())
        }),
        ProblemInstance::LSimCsp { pairs } => {
            search(&g.elements()?, budget, |x| Ok(conj_all(g, pairs, x)?.then(|| el(x)).flatten()))
        }
        ProblemInstance::SubCsp { h, s, target } => search(&g.subgroup(h)?, budget, |x| {
            Ok((g.conj(s, x)? == *target).then(|| el(x)).flatten())
        }),
        ProblemInstance::LSsCsp { h, pairs } => {
            search(&g.subgroup(h)?, budget, |x| Ok(conj_all(g, pairs, x)?.then(|| el(x)).flatten()))
        }
        ProblemInstance::Dcp { h1, h2, s, target } => {
            let right = g.subgroup(h2)?;
            decompose(g, &g.subgroup(h1)?, &right, s, target, budget)
        }
        ProblemInstance::Cdp { h, s, target } => {
            let sub = g.subgroup(h)?;
            decompose(g, &sub, &sub, s, target, budget)
        }
        ProblemInstance::DhDcp {
            a1,
            a2,
            s,
            x_msg,
            y_msg,
            ..
        } => {
            let found = decompose(g, &g.subgroup(a1)?, &g.subgroup(a2)?, s, x_msg, budget)?;
            keyed(found, |parts| g.product([&parts[0], y_msg, &parts[1]]))
        }
        ProblemInstance::Klp { a, s, sx, sy, .. } => search(&g.subgroup(a)?, budget, |x| {
            Ok((g.conj(s, x)? == *sx).then(|| Witness::Key {
                key: g.conj(sy, x).expect("same platform"),
                parts: alloc::vec![x.clone()],
            }))
        }),
        ProblemInstance::Aagp {
            a,
            b,
            a_images,
            b_images,
        } => {
            let bx: Pairs = b.iter().cloned().zip(b_images.iter().cloned()).collect();
            let ay: Pairs = a.iter().cloned().zip(a_images.iter().cloned()).collect();
            let (sa, sb) = (g.subgroup(a)?, g.subgroup(b)?);
            within(budget, sa.len() + sb.len())?;
            let x = sa.iter().find(|x| conj_all(g, &bx, x).unwrap_or(false));
            let y = sb.iter().find(|y| conj_all(g, &ay, y).unwrap_or(false));
            Ok(match (x, y) {
                (Some(x), Some(y)) => Search::Found(Witness::Key {
                    key: g.commutator(x, y)?,
                    parts: alloc::vec![x.clone(), y.clone()],
                }),
                _ => Search::NotFound {
                    examined: (sa.len() + sb.len()) as u64,
                },
            })
        }
        ProblemInstance::Msp { target, gens } => msp_bfs(g, target, gens, budget),
        ProblemInstance::NSimDp { pairs } => {
            let (t0, tp0) = pairs.first().ok_or(Error::InvalidArgument("empty instance"))?;
            search(&g.elements()?, budget, |r| {
                // a_l is forced by the first pair.
                let l = g.product([tp0, &g.inv(r)?, &g.inv(t0)?])?;
                let w = Witness::Pair(l, r.clone());
                Ok(verify(inst, g, &w)?.then_some(w))
            })
        }
        ProblemInstance::SymSdp { .. } | ProblemInstance::FCsp { .. } => search(&g.elements()?, budget, |x| {
            let w = Witness::Element(x.clone());
            Ok(verify(inst, g, &w)?.then_some(w))
        }),
        ProblemInstance::ShCsp { .. } => Err(Error::NotFinite),
        ProblemInstance::LdMsp { .. } => unreachable!(),
    }
}

fn keyed(found: Search, key: impl Fn(&[Element]) -> Result<Element>) -> Result<Search> {
    Ok(match found {
        Search::Found(Witness::Pair(x1, x2)) => {
            let parts = alloc::vec![x1, x2];
            Search::Found(Witness::Key {
                key: key(&parts)?,
                parts,
            })
        }
        other => other,
    })
}

/// `x1 ∈ left`, then `x2 = s⁻¹ x1⁻¹ target` must lie in `right`.
fn decompose(
    g: &Platform,
    left: &[Element],
    right: &[Element],
    s: &Element,
    target: &Element,
    budget: u64,
) -> Result<Search> {
    let si = g.inv(s)?;
    search(left, budget, |x1| {
        let x2 = g.product([&si, &g.inv(x1)?, target])?;
        Ok(right
            .binary_search(&x2)
            .is_ok()
            .then(|| Witness::Pair(x1.clone(), x2)))
    })
}

/// Breadth-first search over words in `gens^{±1}`; returns a shortest word.
fn msp_bfs(g: &Platform, target: &Element, gens: &[Element], budget: u64) -> Result<Search> {
    let mut letters = Vec::new();
    for (i, x) in gens.iter().enumerate() {
        letters.push((i as i32 + 1, x.clone()));
        letters.push((-(i as i32 + 1), g.inv(x)?));
    }
    let id = g.identity();
    let mut words: BTreeMap<Element, Vec<i32>> = BTreeMap::new();
    words.insert(id.clone(), Vec::new());
    let mut queue = VecDeque::from([id]);
    let mut examined = 0u64;
    while let Some(x) = queue.pop_front() {
        examined += 1;
        if examined > budget {
            return Err(Error::BudgetExceeded);
        }
        if x == *target {
            return Ok(Search::Found(Witness::Word(words[&x].clone())));
        }
        for (l, y) in &letters {
            let z = g.mul(&x, y)?;
            if !words.contains_key(&z) {
                let mut w = words[&x].clone();
                w.push(*l);
                words.insert(z.clone(), w);
                queue.push_back(z);
            }
        }
    }
    Ok(Search::NotFound { examined })
}

/// Shortest tree word (fewest leaves, then first in enumeration order)
/// evaluating to `target`, built level by level: level `k` holds one tree
/// for every value reachable with exactly `k` leaves. `budget` bounds the
/// number of operation evaluations.
pub fn bf_membership_magma(
    carrier: &Carrier,
    target: &Element,
    gens: &[Element],
    ops: &[OpDescriptor],
    max_leaves: usize,
    budget: u64,
) -> Result<Option<TreeWord>> {
    if gens.is_empty() || ops.is_empty() || max_leaves == 0 {
        return Ok(None);
    }
    let mut levels: Vec<BTreeMap<Element, TreeWord>> = alloc::vec![BTreeMap::new()];
    let mut first = BTreeMap::new();
    for (i, x) in gens.iter().enumerate() {
        first.entry(x.clone()).or_insert(TreeWord::leaf(i as u16));
    }
    levels.push(first);
    if let Some(t) = levels[1].get(target) {
        return Ok(Some(t.clone()));
    }
    let mut spent = 0u64;
    for k in 2..=max_leaves {
        let mut level = BTreeMap::new();
        for i in 1..k {
            for (x, tx) in &levels[i] {
                for (y, ty) in &levels[k - i] {
                    for (q, op) in ops.iter().enumerate() {
                        spent += 1;
                        if spent > budget {
                            return Err(Error::BudgetExceeded);
                        }
                        let z = carrier.apply(op, x, y)?;
                        level
                            .entry(z)
                            .or_insert_with(|| TreeWord::node(q as u8, tx.clone(), ty.clone()));
                    }
                }
            }
        }
        if let Some(t) = level.get(target) {
            return Ok(Some(t.clone()));
        }
        levels.push(level);
    }
    Ok(None)
}

/// Values reachable with at most `max_leaves` leaves; the set
/// [`bf_membership_magma`] searches.
pub fn reachable(
    carrier: &Carrier,
    gens: &[Element],
    ops: &[OpDescriptor],
    max_leaves: usize,
) -> Result<BTreeSet<Element>> {
    let mut levels: Vec<BTreeSet<Element>> = alloc::vec![BTreeSet::new(), gens.iter().cloned().collect()];
    for k in 2..=max_leaves {
        let mut level = BTreeSet::new();
        for i in 1..k {
            for x in &levels[i] {
                for y in &levels[k - i] {
                    for op in ops {
                        level.insert(carrier.apply(op, x, y)?);
                    }
                }
            }
        }
        levels.push(level);
    }
    Ok(levels.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests;
