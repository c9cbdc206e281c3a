//! Laver tables, submagma membership and comb lengths against oracles
//! written directly in the test.

use std::collections::BTreeSet;

use magmakey_core::attacks::bf_membership_magma;
use magmakey_core::braid::BraidWord;
use magmakey_core::ldops::{verify_ld, Carrier, LaverTable, OpDescriptor, Sampling};
use magmakey_core::magma::TreeWord;
use magmakey_core::platform::Element;
use magmakey_core::seeded_rng;
use rand::Rng;

#[test]
fn laver_tables_are_ld_and_start_with_successor() {
    let mut rng = seeded_rng(0);
    for n in 0..=4u8 {
        let t = LaverTable::new(n).unwrap();
        let size = t.size();
        for p in 1..=size {
            assert_eq!(t.op(p, 1).unwrap(), p % size + 1);
        }
        let v = verify_ld(&OpDescriptor::Laver(t.clone()), &Carrier::Laver(t), Sampling::Exhaustive, &mut rng).unwrap();
        assert!(v.passed());
        assert_eq!(v.checked, size.pow(3));
    }
    assert_eq!(LaverTable::new(2).unwrap().row(1), &[2, 4, 2, 4]);
}

fn closure(t: &LaverTable, gens: &[usize]) -> BTreeSet<usize> {
    let mut set: BTreeSet<usize> = gens.iter().copied().collect();
    loop {
        let new: BTreeSet<usize> = set
            .iter()
            .flat_map(|&x| set.iter().map(move |&y| (x, y)))
            .map(|(x, y)| t.op(x, y).unwrap())
            .collect();
        let before = set.len();
        set.extend(new);
        if set.len() == before {
            return set;
        }
    }
}

fn laver_eval(t: &LaverTable, tree: &TreeWord, gens: &[usize]) -> usize {
    tree.eval(gens, &mut |_, &x, &y| t.op(x, y)).unwrap()
}

#[test]
fn membership_in_a3_matches_closure() {
    let t = LaverTable::new(3).unwrap();
    let carrier = Carrier::Laver(t.clone());
    let op = [OpDescriptor::Laver(t.clone())];
    for g in 1..=8usize {
        let reach = closure(&t, &[g]);
        for target in 1..=8usize {
            let found = bf_membership_magma(
                &carrier,
                &Element::Residue(target as u64),
                &[Element::Residue(g as u64)],
                &op,
                64,
                1 << 24,
            )
            .unwrap();
            match found {
                Some(tree) => {
                    assert!(reach.contains(&target));
                    assert_eq!(laver_eval(&t, &tree, &[g]), target);
                }
                None => assert!(!reach.contains(&target), "g = {g}, target = {target}"),
            }
        }
    }
}

/// `x * y = ∂(x⁻¹ y) x` on freely reduced words.
fn fconj_words(x: &BraidWord, y: &BraidWord) -> BraidWord {
    x.invert().concat(y).shift(1).concat(x).freely_reduced()
}

#[test]
fn comb_lengths_stay_within_bounds() {
    let mut rng = seeded_rng(11);
    let l0 = 6;
    for _ in 0..20 {
        let gens: Vec<BraidWord> = (0..10)
            .map(|_| BraidWord::random(5, rng.gen_range(1..=l0), &mut rng).with_strands(20).unwrap())
            .collect();
        for k in 1..=10usize {
            let leaves: Vec<u16> = (0..k as u16).collect();
            let lc = TreeWord::left_comb_over(&leaves, 0).unwrap();
            let rc = TreeWord::right_comb_over(&leaves, 0).unwrap();
            let mut op = |_, x: &BraidWord, y: &BraidWord| Ok(fconj_words(x, y));
            let l = lc.eval(&gens, &mut op).unwrap().len();
            let r = rc.eval(&gens, &mut op).unwrap().len();
            assert!(l <= (2 * k - 1) * l0);
            assert!(r <= ((1 << k) - 1) * l0);
        }
    }
}
