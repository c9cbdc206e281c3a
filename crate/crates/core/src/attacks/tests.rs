use super::*;
use crate::ldops::LaverTable;
use crate::{seeded_rng, Permutation};

fn perm(n: usize, cycle: &[usize]) -> Element {
    Element::Perm(Permutation::cycle(n, cycle).unwrap())
}

const BUDGET: u64 = 1 << 16;

#[test]
fn csp_on_s3() {
    let g = Platform::symmetric(3).unwrap();
    let inst = ProblemInstance::Csp {
        s: perm(3, &[1, 3]),
        target: perm(3, &[2, 3]),
    };
    let w = bf_solve(&inst, &g, BUDGET).unwrap();
    assert!(verify(&inst, &g, w.witness().unwrap()).unwrap());
    assert!(verify(&inst, &g, &Witness::Element(perm(3, &[1, 2]))).unwrap());
    assert!(!verify(&inst, &g, &Witness::Element(g.identity())).unwrap());
}

#[test]
fn simcsp_recovers_up_to_centralizer() {
    let g = Platform::symmetric(4).unwrap();
    let mut rng = seeded_rng(3);
    for _ in 0..10 {
        let x = g.random_element(0, &mut rng);
        let gens = g.generators();
        let pairs = gens.iter().map(|s| (s.clone(), g.conj(s, &x).unwrap())).collect();
        let inst = ProblemInstance::LSimCsp { pairs };
        let Search::Found(Witness::Element(found)) = bf_solve(&inst, &g, BUDGET).unwrap() else {
            panic!("no witness");
        };
        // The generators have trivial common centralizer in S_4.
        assert_eq!(found, x);
    }
}

#[test]
fn msp_outside_subgroup() {
    let g = Platform::symmetric(4).unwrap();
    let inst = ProblemInstance::Msp {
        target: perm(4, &[1, 2]),
        gens: alloc::vec![perm(4, &[1, 2, 3])],
    };
    assert_eq!(bf_solve(&inst, &g, BUDGET).unwrap(), Search::NotFound { examined: 3 });
    let inst = ProblemInstance::Msp {
        target: perm(4, &[1, 3, 2]),
        gens: alloc::vec![perm(4, &[1, 2, 3])],
    };
    let w = bf_solve(&inst, &g, BUDGET).unwrap();
    assert_eq!(w.witness(), Some(&Witness::Word(alloc::vec![-1])));
}

#[test]
fn budget_is_enforced() {
    let g = Platform::symmetric(5).unwrap();
    let inst = ProblemInstance::Csp {
        s: perm(5, &[1, 2]),
        target: perm(5, &[4, 5]),
    };
    assert_eq!(bf_solve(&inst, &g, 100), Err(Error::BudgetExceeded));
    assert!(bf_solve(&inst, &g, 120).is_ok());
}

#[test]
fn laver_membership() {
    let t = LaverTable::new(1).unwrap();
    let carrier = Carrier::Laver(t.clone());
    let ops = [OpDescriptor::Laver(t)];
    let one = Element::Residue(1);
    let tree = bf_membership_magma(&carrier, &Element::Residue(2), core::slice::from_ref(&one), &ops, 4, BUDGET)
        .unwrap()
        .unwrap();
    assert_eq!(tree, TreeWord::node(0, TreeWord::leaf(0), TreeWord::leaf(0)));
    assert_eq!(
        bf_membership_magma(&carrier, &one, core::slice::from_ref(&one), &ops, 4, BUDGET).unwrap(),
        Some(TreeWord::leaf(0))
    );
    assert_eq!(
        bf_membership_magma(&carrier, &Element::Residue(3), &[one], &ops, 6, BUDGET).unwrap(),
        None
    );
}

#[test]
fn dcp_family() {
    let g = Platform::symmetric(4).unwrap();
    let a = alloc::vec![perm(4, &[1, 2])];
    let b = alloc::vec![perm(4, &[3, 4])];
    let s = perm(4, &[1, 3, 2, 4]);
    let (x, y) = (perm(4, &[1, 2]), perm(4, &[3, 4]));
    let klp = ProblemInstance::Klp {
        a: a.clone(),
        b: b.clone(),
        s: s.clone(),
        sx: g.conj(&s, &x).unwrap(),
        sy: g.conj(&s, &y).unwrap(),
    };
    let k = g.conj(&g.conj(&s, &x).unwrap(), &y).unwrap();
    let w = bf_solve(&klp, &g, BUDGET).unwrap();
    match w.witness().unwrap() {
        Witness::Key { key, .. } => assert_eq!(*key, k),
        other => panic!("{other:?}"),
    }
    let mut oracle = BruteForce {
        platform: g,
        budget: BUDGET,
    };
    assert_eq!(reduce_cdp_to_klp(&mut oracle, &klp, &g).unwrap(), k);
    for to in ["dh_dcp", "cdp"] {
        let lifted = lift(&klp, to, &g).unwrap();
        let lw = match bf_solve(&lifted, &g, BUDGET).unwrap() {
            Search::Found(w) => w,
            other => panic!("{other:?}"),
        };
        let down = lower(&klp, to, &lw, &g).unwrap();
        assert!(verify(&klp, &g, &down).unwrap(), "{to}");
    }
}

#[test]
fn trivial_klp() {
    let g = Platform::symmetric(3).unwrap();
    let s = perm(3, &[1, 2, 3]);
    let klp = ProblemInstance::Klp {
        a: Vec::new(),
        b: Vec::new(),
        s: s.clone(),
        sx: s.clone(),
        sy: s.clone(),
    };
    let mut oracle = BruteForce {
        platform: g,
        budget: BUDGET,
    };
    assert_eq!(reduce_cdp_to_klp(&mut oracle, &klp, &g).unwrap(), s);
}

#[test]
fn aagp_exact_and_abelian() {
    let g = Platform::symmetric(4).unwrap();
    let a = alloc::vec![perm(4, &[1, 2]), perm(4, &[2, 3])];
    let b = alloc::vec![perm(4, &[2, 3, 4])];
    let x = perm(4, &[1, 3]);
    let y = perm(4, &[2, 4, 3]);
    let inst = ProblemInstance::Aagp {
        a: a.clone(),
        b: b.clone(),
        a_images: a.iter().map(|s| g.conj(s, &y).unwrap()).collect(),
        b_images: b.iter().map(|s| g.conj(s, &x).unwrap()).collect(),
    };
    let (px, py) = (x.clone(), y.clone());
    let mut exact = Planted(move |i: &ProblemInstance| match i {
        ProblemInstance::LSsCsp { h, .. } if h.len() == 2 => Ok(Witness::Element(px.clone())),
        _ => Ok(Witness::Element(py.clone())),
    });
    let r = reduce_sscsp_to_aagp(&mut exact, &inst, &g, Some((&x, &y))).unwrap();
    assert_eq!(r.key, g.commutator(&x, &y).unwrap());
    assert_eq!(r.diagnostic, Some(g.identity()));

    let z = Platform::mult_mod(11).unwrap();
    let gens = alloc::vec![Element::Residue(2)];
    let (x, y) = (Element::Residue(8), Element::Residue(5));
    let inst = ProblemInstance::Aagp {
        a: gens.clone(),
        b: gens.clone(),
        a_images: alloc::vec![z.conj(&gens[0], &y).unwrap()],
        b_images: alloc::vec![z.conj(&gens[0], &x).unwrap()],
    };
    let mut bf = BruteForce {
        platform: z,
        budget: BUDGET,
    };
    assert_eq!(reduce_sscsp_to_aagp(&mut bf, &inst, &z, None).unwrap().key, z.identity());
}

#[test]
fn simdp_derived_instances() {
    let g = Platform::symmetric(4).unwrap();
    let (al, ar) = (perm(4, &[1, 2, 3, 4]), perm(4, &[2, 4]));
    let ts = [perm(4, &[1, 2]), perm(4, &[1, 3, 4])];
    let pairs: Pairs = ts.iter().map(|t| (t.clone(), g.product([&al, t, &ar]).unwrap())).collect();
    let inst = ProblemInstance::NSimDp { pairs };
    let d = reduce_simdp_to_sscsp(&inst, &g).unwrap();
    for (fam, x) in [(&d.left, &al), (&d.right, &ar)] {
        let ProblemInstance::LSimCsp { pairs } = fam else { panic!() };
        assert_eq!(pairs.len(), 2);
        assert!(verify(fam, &g, &Witness::Element(x.clone())).unwrap());
    }
    let w = bf_solve(&inst, &g, BUDGET).unwrap();
    assert!(verify(&inst, &g, w.witness().unwrap()).unwrap());

    let one = ProblemInstance::NSimDp {
        pairs: alloc::vec![(ts[0].clone(), ts[0].clone())],
    };
    assert!(reduce_simdp_to_sscsp(&one, &g).is_err());

    let same = ProblemInstance::NSimDp {
        pairs: alloc::vec![(ts[0].clone(), ts[1].clone()), (ts[0].clone(), ts[1].clone())],
    };
    let d = reduce_simdp_to_sscsp(&same, &g).unwrap();
    let ProblemInstance::LSimCsp { pairs } = d.right else { panic!() };
    assert!(pairs.iter().all(|(u, v)| g.is_identity(u) && g.is_identity(v)));
}

#[test]
fn fcsp_with_identity_is_classical() {
    let g = Platform::symmetric(4).unwrap();
    let b = perm(4, &[1, 4, 2]);
    let ss = [perm(4, &[1, 2]), perm(4, &[2, 3, 4]), perm(4, &[1, 3])];
    let f = Endomorphism::Identity;
    let pairs: Pairs = ss.iter().map(|s| (s.clone(), f_conj(&g, &f, &b, s).unwrap())).collect();
    let inst = ProblemInstance::FCsp { f, pairs };
    let Some(ProblemInstance::LSimCsp { pairs: derived }) = reduce_simfcsp_to_simcsp(&inst, &g).unwrap() else {
        panic!()
    };
    assert_eq!(derived.len(), 6);
    for ((u, v), (i, j)) in derived.iter().zip([(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)]) {
        assert_eq!(*u, g.mul(&g.inv(&ss[i]).unwrap(), &ss[j]).unwrap());
        assert_eq!(g.conj(u, &b).unwrap(), *v);
    }
    let w = bf_solve(&inst, &g, BUDGET).unwrap();
    assert!(verify(&inst, &g, w.witness().unwrap()).unwrap());
}

fn shifted_instance(b: &[i16], gens: &[&[i16]]) -> (Platform, ProblemInstance, Element) {
    let g = Platform::braid(8).unwrap();
    let sigma = BraidWord::generator(2, 1).unwrap();
    let b = g.braid_letters(b).unwrap();
    let pairs = gens
        .iter()
        .map(|s| {
            let s = g.braid_letters(s).unwrap();
            let sp = sh_conj(&g, 1, &sigma, &b, &s).unwrap();
            (s, sp)
        })
        .collect();
    (g, ProblemInstance::ShCsp { p: 1, a: sigma, pairs }, b)
}

#[test]
fn shifted_derived_pairs() {
    let (g, inst, b) = shifted_instance(&[2, -1, 3], &[&[1, 2], &[-3], &[2, 2, 1]]);
    let Some(derived) = reduce_simshcsp_to_simcsp(&inst, &g).unwrap() else { panic!() };
    let ProblemInstance::LSimCsp { pairs } = &derived else { panic!() };
    assert_eq!(pairs.len(), 6);
    assert!(verify(&derived, &g, &Witness::Element(b.clone())).unwrap());
    assert!(verify(&inst, &g, &Witness::Element(b)).unwrap());

    let (g, single, _) = shifted_instance(&[2], &[&[1]]);
    assert_eq!(reduce_simshcsp_to_simcsp(&single, &g).unwrap(), None);
}

#[test]
fn length_attack() {
    let score = |x: &Element| x.word_len();
    let (g, inst, b) = shifted_instance(&[2], &[&[1, 2], &[-3, 1], &[4]]);
    assert_eq!(
        length_attack_skeleton(&inst, &g, &score, 0).unwrap(),
        Search::NotFound { examined: 0 }
    );
    let found = length_attack_skeleton(&inst, &g, &score, 1000).unwrap();
    assert_eq!(found.witness(), Some(&Witness::Element(b)));
}

#[test]
fn inn_experiment_unperturbed() {
    let g = Platform::symmetric(4).unwrap();
    let exp = InnExperiment {
        platform: g,
        p: perm(4, &[1, 2]),
        s: alloc::vec![perm(4, &[1, 3])],
        t: alloc::vec![perm(4, &[2, 4])],
        a: perm(4, &[1, 2, 3]),
        b: perm(4, &[2, 3, 4]),
    };
    let e = g.identity();
    let r = inn_centralizer_experiment(&exp, &e, &e).unwrap();
    assert!(r.equal && r.conditions_hold() && r.c1_valid && r.c2_valid);
    let c1s = inn_perturbations(&g, &exp.p, &exp.s).unwrap();
    assert!(c1s.contains(&e));
}
