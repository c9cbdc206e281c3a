//! Planar binary tree-words. Leaves carry generator indices and internal nodes
//! carry operation labels, so the same tree can be evaluated against the
//! public generators or against their images.

use core::fmt;

use alloc::boxed::Box;
use alloc::vec::Vec;
use rand::Rng;

use crate::codec::{Reader, Writer};
use crate::{Error, Result};

/// Nesting limit when decoding untrusted trees.
const MAX_DECODE_DEPTH: usize = 1024;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TreeWord {
    Leaf(u16),
    Node(u8, Box<TreeWord>, Box<TreeWord>),
}

impl TreeWord {
    pub fn leaf(i: u16) -> Self {
        TreeWord::Leaf(i)
    }

    pub fn node(op: u8, left: TreeWord, right: TreeWord) -> Self {
        TreeWord::Node(op, Box::new(left), Box::new(right))
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, TreeWord::Leaf(_))
    }

    pub fn leaves(&self) -> usize {
        match self {
            TreeWord::Leaf(_) => 1,
            TreeWord::Node(_, l, r) => l.leaves() + r.leaves(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            TreeWord::Leaf(_) => 0,
            TreeWord::Node(_, l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    /// Leaf indices left to right.
    pub fn leaf_indices(&self) -> Vec<u16> {
        let mut out = Vec::new();
        self.visit(&mut |t| {
            if let TreeWord::Leaf(i) = t {
                out.push(*i)
            }
        });
        out
    }

    /// Operation labels in pre-order.
    pub fn op_labels(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.visit(&mut |t| {
            if let TreeWord::Node(op, _, _) = t {
                out.push(*op)
            }
        });
        out
    }

    fn visit(&self, f: &mut impl FnMut(&TreeWord)) {
        f(self);
        if let TreeWord::Node(_, l, r) = self {
            l.visit(f);
            r.visit(f);
        }
    }

    /// Check leaf indices against `gens` and labels against `ops`.
    pub fn validate(&self, gens: usize, ops: usize) -> Result<()> {
        match self {
            TreeWord::Leaf(i) if (*i as usize) < gens => Ok(()),
            TreeWord::Leaf(i) => Err(Error::LeafOutOfRange {
                index: *i as usize,
                count: gens,
            }),
            TreeWord::Node(op, _, _) if (*op as usize) >= ops => Err(Error::OpLabelOutOfRange {
                label: *op as usize,
                count: ops,
            }),
            TreeWord::Node(_, l, r) => {
                l.validate(gens, ops)?;
                r.validate(gens, ops)
            }
        }
    }

    /// Evaluate bottom-up: `Leaf i ↦ gens[i]`, `Node(op, l, r) ↦ op(l, r)`.
    pub fn eval<T, F>(&self, gens: &[T], op: &mut F) -> Result<T>
    where
        T: Clone,
        F: FnMut(u8, &T, &T) -> Result<T>,
    {
        match self {
            TreeWord::Leaf(i) => gens.get(*i as usize).cloned().ok_or(Error::LeafOutOfRange {
                index: *i as usize,
                count: gens.len(),
            }),
            TreeWord::Node(label, l, r) => {
                let a = l.eval(gens, op)?;
                let b = r.eval(gens, op)?;
                op(*label, &a, &b)
            }
        }
    }

    /// Evaluate against images of the generators with every label mapped to
    /// its image-side operation. For a magma homomorphism `β` this equals
    /// `β(eval(gens))`.
    pub fn push_through<T, M, F>(&self, images: &[T], label_map: M, op: &mut F) -> Result<T>
    where
        T: Clone,
        M: Fn(u8) -> u8,
        F: FnMut(u8, &T, &T) -> Result<T>,
    {
        self.eval(images, &mut |label, a: &T, b: &T| op(label_map(label), a, b))
    }

    /// `r_0 * (r_1 * (⋯ * r_{k-1}))` over the given leaves.
    pub fn left_comb_over(leaves: &[u16], op: u8) -> Result<Self> {
        let (last, rest) = leaves
            .split_last()
            .ok_or(Error::InvalidArgument("a comb needs at least one leaf"))?;
        let mut t = TreeWord::Leaf(*last);
        for &i in rest.iter().rev() {
            t = TreeWord::node(op, TreeWord::Leaf(i), t);
        }
        Ok(t)
    }

    /// `((r_0 * r_1) * r_2) ⋯ * r_{k-1}` over the given leaves.
    pub fn right_comb_over(leaves: &[u16], op: u8) -> Result<Self> {
        let (first, rest) = leaves
            .split_first()
            .ok_or(Error::InvalidArgument("a comb needs at least one leaf"))?;
        let mut t = TreeWord::Leaf(*first);
        for &i in rest {
            t = TreeWord::node(op, t, TreeWord::Leaf(i));
        }
        Ok(t)
    }

    pub fn left_comb(k: usize) -> Result<Self> {
        let leaves: Vec<u16> = (0..k as u16).collect();
        Self::left_comb_over(&leaves, 0)
    }

    pub fn right_comb(k: usize) -> Result<Self> {
        let leaves: Vec<u16> = (0..k as u16).collect();
        Self::right_comb_over(&leaves, 0)
    }

    /// Internal nodes whose left child is internal: 0 on left combs, `k - 2`
    /// on right combs with `k >= 2` leaves.
    pub fn comb_distance(&self) -> usize {
        match self {
            TreeWord::Leaf(_) => 0,
            TreeWord::Node(_, l, r) => {
                usize::from(!l.is_leaf()) + l.comb_distance() + r.comb_distance()
            }
        }
    }

    /// A random tree with `k` leaves over `m` generators and `q` labels. With
    /// probability `comb_bias` each subtree takes a single left leaf (the
    /// left-comb step); otherwise the split is weighted so shapes come out
    /// uniform.
    pub fn random<R: Rng + ?Sized>(k: usize, m: u16, q: u8, comb_bias: f64, rng: &mut R) -> Self {
        let k = k.max(1);
        let m = m.max(1);
        let q = q.max(1);
        let catalan = catalan_f64(k);
        Self::random_rec(k, m, q, comb_bias, &catalan, rng)
    }

    fn random_rec<R: Rng + ?Sized>(
        k: usize,
        m: u16,
        q: u8,
        bias: f64,
        catalan: &[f64],
        rng: &mut R,
    ) -> Self {
        if k == 1 {
            return TreeWord::Leaf(rng.gen_range(0..m));
        }
        let left = if rng.gen_bool(bias.clamp(0.0, 1.0)) {
            1
        } else {
            // P(left = i) ∝ C(i-1) C(k-i-1), which makes the shape uniform.
            let total = catalan[k - 1];
            let mut u = rng.gen::<f64>() * total;
            let mut pick = k - 1;
            for i in 1..k {
                let w = catalan[i - 1] * catalan[k - i - 1];
                if u < w {
                    pick = i;
                    break;
                }
                u -= w;
            }
            pick
        };
        let op = rng.gen_range(0..q);
        let l = Self::random_rec(left, m, q, bias, catalan, rng);
        let r = Self::random_rec(k - left, m, q, bias, catalan, rng);
        TreeWord::node(op, l, r)
    }

    /// Pre-order encoding: `0x00 u16` for a leaf, `0x01 u8` then both
    /// subtrees for a node.
    pub fn encode(&self, w: &mut Writer) {
        match self {
            TreeWord::Leaf(i) => {
                w.u8(0x00).u16(*i);
            }
            TreeWord::Node(op, l, r) => {
                w.u8(0x01).u8(*op);
                l.encode(w);
                r.encode(w);
            }
        }
    }

    pub fn decode(r: &mut Reader<'_>) -> Result<Self> {
        Self::decode_rec(r, 0)
    }

    fn decode_rec(r: &mut Reader<'_>, depth: usize) -> Result<Self> {
        if depth > MAX_DECODE_DEPTH {
            return Err(Error::Decode("tree nested too deeply"));
        }
        match r.u8()? {
            0x00 => Ok(TreeWord::Leaf(r.u16()?)),
            0x01 => {
                let op = r.u8()?;
                let left = Self::decode_rec(r, depth + 1)?;
                let right = Self::decode_rec(r, depth + 1)?;
                Ok(TreeWord::node(op, left, right))
            }
            _ => Err(Error::Decode("unknown tree tag")),
        }
    }

    /// Fill a shape's leaves and labels from pre-order sequences.
    fn relabel(&self, leaves: &mut impl Iterator<Item = u16>, ops: &mut impl Iterator<Item = u8>) -> Self {
        match self {
            TreeWord::Leaf(_) => TreeWord::Leaf(leaves.next().unwrap_or(0)),
            TreeWord::Node(_, l, r) => {
                let op = ops.next().unwrap_or(0);
                let l = l.relabel(leaves, ops);
                let r = r.relabel(leaves, ops);
                TreeWord::node(op, l, r)
            }
        }
    }
}

/// `C(0), …, C(k-1)` as floats.
fn catalan_f64(k: usize) -> Vec<f64> {
    let mut c = alloc::vec![1.0f64; k.max(1)];
    for n in 1..c.len() {
        c[n] = (0..n).map(|i| c[i] * c[n - 1 - i]).sum();
    }
    c
}

pub fn catalan(n: usize) -> Option<u64> {
    let mut c: Vec<u64> = alloc::vec![1];
    for m in 1..=n {
        let mut s = 0u64;
        for i in 0..m {
            s = s.checked_add(c[i].checked_mul(c[m - 1 - i])?)?;
        }
        c.push(s);
    }
    Some(c[n])
}

/// Number of labelled trees with `k` leaves: `C(k-1) · m^k · q^(k-1)`.
pub fn tree_count(k: usize, m: usize, q: usize) -> Option<u64> {
    if k == 0 {
        return Some(0);
    }
    catalan(k - 1)?
        .checked_mul((m as u64).checked_pow(k as u32)?)?
        .checked_mul((q as u64).checked_pow(k as u32 - 1)?)
}

/// Largest leaf count for which shapes are materialized.
pub const MAX_ENUMERATION_LEAVES: usize = 16;

/// All labelled trees with exactly `k` leaves, shape-major, each shape's
/// labels in mixed-radix order.
pub fn enumerate_trees(k: usize, m: usize, q: usize) -> Result<TreeIter> {
    if k == 0 || m == 0 || q == 0 {
        return Err(Error::InvalidArgument("enumeration needs k, m, q >= 1"));
    }
    if k > MAX_ENUMERATION_LEAVES || m > u16::MAX as usize + 1 || q > 256 {
        return Err(Error::CountOverflow);
    }
    tree_count(k, m, q).ok_or(Error::CountOverflow)?;
    Ok(TreeIter {
        shapes: shapes(k),
        shape: 0,
        leaves: alloc::vec![0; k],
        ops: alloc::vec![0; k - 1],
        m,
        q,
        done: false,
    })
}

fn shapes(k: usize) -> Vec<TreeWord> {
    let mut table: Vec<Vec<TreeWord>> = alloc::vec![Vec::new(), alloc::vec![TreeWord::Leaf(0)]];
    for n in 2..=k {
        let mut here = Vec::new();
        for i in 1..n {
            for l in &table[i] {
                for r in &table[n - i] {
                    here.push(TreeWord::node(0, l.clone(), r.clone()));
                }
            }
        }
        table.push(here);
    }
    table.swap_remove(k)
}

#[derive(Debug, Clone)]
pub struct TreeIter {
    shapes: Vec<TreeWord>,
    shape: usize,
    leaves: Vec<usize>,
    ops: Vec<usize>,
    m: usize,
    q: usize,
    done: bool,
}

impl TreeIter {
    fn advance(&mut self) {
        for d in self.leaves.iter_mut() {
            *d += 1;
            if *d < self.m {
                return;
            }
            *d = 0;
        }
        for d in self.ops.iter_mut() {
            *d += 1;
            if *d < self.q {
                return;
            }
            *d = 0;
        }
        self.shape += 1;
        if self.shape == self.shapes.len() {
            self.done = true;
        }
    }
}

impl Iterator for TreeIter {
    type Item = TreeWord;

    fn next(&mut self) -> Option<TreeWord> {
        if self.done {
            return None;
        }
        let t = self.shapes[self.shape].relabel(
            &mut self.leaves.iter().map(|&v| v as u16),
            &mut self.ops.iter().map(|&v| v as u8),
        );
        self.advance();
        Some(t)
    }
}

impl fmt::Debug for TreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for TreeWord {
    /// `(l *k r)` with generator indices as `gN`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeWord::Leaf(i) => write!(f, "g{i}"),
            TreeWord::Node(op, l, r) => write!(f, "({l} *{op} {r})"),
        }
    }
}
