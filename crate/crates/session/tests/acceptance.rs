//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::collections::BTreeMap;
use std::net::TcpListener;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::thread;
use std::time::{Duration, Instant};

use magmakey::doc::TranscriptDoc;
use magmakey::keygen::{random_spec, KeygenParams};
use magmakey::session::{connect, serve};
use magmakey_core::attacks::{
    bf_membership_magma, reduce_cdp_to_klp, reduce_simdp_to_sscsp, reduce_simfcsp_to_simcsp,
    reduce_simshcsp_to_simcsp, reduce_sscsp_to_aagp, verify, BruteForce, ProblemInstance, Witness,
};
use magmakey_core::braid::BraidWord;
use magmakey_core::ldops::{
    check_fconj_conditions, check_symconj_conditions, generalized_shifted_parameter, make_generalized_family,
    make_generalized_shifted, make_split_shifted, verify_ld, verify_multi_ld, Carrier, GeneralizedParams,
    LaverTable, OpDescriptor, Sampling,
};
use magmakey_core::magma::TreeWord;
use magmakey_core::platform::{enumerate_endomorphisms, Element, Endomorphism, Platform, PointMap};
use magmakey_core::protocols::{key_extract, run, Instantiation, KeyPolicy, ProtocolSpec};
use magmakey_core::{seeded_rng, Permutation, SeededRng};
use rand::seq::SliceRandom;
use rand::Rng;

type Outcome = (bool, String);
type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 12] = [
        ("protocol correctness", c1_protocols),
        ("DH vector", c2_dh_vector),
        ("LD law suites", c3_ld_suites),
        ("bi-/multi-LD families", c4_multi_ld),
        ("condition checkers vs law behavior", c5_conditions),
        ("tau relation", c6_tau),
        ("normal form vs handle reduction", c7_word_problem),
        ("comb bounds", c8_combs),
        ("reductions", c9_reductions),
        ("Laver tables", c10_laver),
        ("membership oracle", c11_membership),
        ("wire session", c12_session),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (ok, detail) = match catch_unwind(AssertUnwindSafe(f)) {
            Ok(r) => r,
            Err(e) => {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                (false, format!("panicked: {msg}"))
            }
        };
        failed += usize::from(!ok);
        println!(
            "criterion {:>2} [{}] {name}: {detail} ({:.1}s)",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {} of 12 criteria passed", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

fn perm(n: usize, images: &[u16]) -> Element {
    let mut full: Vec<u16> = images.to_vec();
    full.extend(images.len() as u16 + 1..=n as u16);
    Element::Perm(Permutation::from_images(&full).unwrap())
}

fn word(n: u16, letters: &[i16]) -> BraidWord {
    BraidWord::new(n, letters.to_vec()).unwrap()
}

// 1 -----------------------------------------------------------------------

fn c1_protocols() -> Outcome {
    let small = KeyPolicy {
        leaves: 4,
        max_depth: 4,
        comb_bias: 0.75,
        word_len: 6,
        exponent_max: 4,
    };
    let finite = KeyPolicy {
        max_depth: 4,
        leaves: 5,
        ..KeyPolicy::finite_default()
    };
    let cases: [(&str, Platform, KeyPolicy, usize); 10] = [
        ("classic_dh", Platform::mult_mod(10007).unwrap(), finite, 3),
        ("group_dh", Platform::braid(8).unwrap(), small, 4),
        ("ko_lee", Platform::braid(8).unwrap(), small, 6),
        ("str", Platform::symmetric(4).unwrap(), finite, 4),
        ("aag_commutator", Platform::symmetric(5).unwrap(), finite, 4),
        ("simdcp", Platform::braid(6).unwrap(), small, 6),
        ("simdcp_alt", Platform::symmetric(5).unwrap(), finite, 4),
        ("symdp", Platform::braid(6).unwrap(), small, 6),
        ("f_commutator", Platform::braid(5).unwrap(), small, 3),
        ("shifted_commutator", Platform::braid(8).unwrap(), small, 6),
    ];
    let start = Instant::now();
    let mut good = 0;
    let mut bad = Vec::new();
    for (name, platform, policy, gen_len) in cases {
        let params = KeygenParams {
            instantiation: name.to_string(),
            platform,
            gens: 3,
            gen_len,
            policy: Some(policy),
            p: 1,
        };
        for seed in 0..100u64 {
            let ok = (|| -> Result<bool, String> {
                let spec = random_spec(&params, seed, &mut seeded_rng(seed ^ 0xACCE)).map_err(|e| e.to_string())?;
                check_desk_scale(&spec)?;
                let t = run(&spec).map_err(|e| e.to_string())?;
                let g = &spec.platform;
                let (ea, eb) = (key_extract(g, &t.k_a).unwrap(), key_extract(g, &t.k_b).unwrap());
                Ok(t.k_a == t.k_b && ea == eb && ea == t.extracted_key)
            })();
            match ok {
                Ok(true) => good += 1,
                Ok(false) => bad.push(format!("{name}#{seed}: keys differ")),
                Err(e) => bad.push(format!("{name}#{seed}: {e}")),
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let ok = good == 1000 && secs < 300.0;
    let mut detail = format!("{good}/1000 runs agree in {secs:.0}s (limit 300s)");
    if let Some(first) = bad.first() {
        detail += &format!("; first failure {first}");
    }
    (ok, detail)
}

/// Braid generators on at most 8 base strands, trees at most depth 4.
/// Classic DH has no trees.
fn check_desk_scale(spec: &ProtocolSpec) -> Result<(), String> {
    let trees = !matches!(spec.instantiation, Instantiation::ClassicDh { .. });
    if trees && spec.policy.max_depth > 4 {
        return Err("policy depth above 4".into());
    }
    if let Some((s, t)) = spec.instantiation.generators() {
        for x in s.iter().chain(t) {
            if let Some(b) = x.as_braid() {
                let w = b.canonical_word();
                if !w.is_empty() && w.max_index() + 1 > 8 {
                    return Err("generator uses more than 8 base strands".into());
                }
            }
        }
    }
    Ok(())
}

// 2 -----------------------------------------------------------------------

fn c2_dh_vector() -> Outcome {
    let naive = |g: u64, e: u64| (0..e).fold(1u64, |acc, _| acc * g % 23);
    let spec = magmakey_core::protocols::make_classic_dh(23, 5, Some(6), Some(15), 0).unwrap();
    let t = run(&spec).unwrap();
    let want = (naive(5, 6), naive(5, 15), naive(naive(5, 6), 15));
    let got = (&t.alice_message[0], &t.bob_message[0], &t.k_a);
    let ok = want == (8, 19, 2)
        && *got.0 == Element::Residue(want.0)
        && *got.1 == Element::Residue(want.1)
        && *got.2 == Element::Residue(want.2)
        && t.k_a == t.k_b;
    (ok, format!("y_A={}, y_B={}, K={}", got.0, got.1, got.2))
}

// 3 -----------------------------------------------------------------------

fn braid_carrier(strands: u16, operand_strands: u16, len: usize, pure: bool) -> Carrier {
    Carrier::Braid {
        platform: Platform::braid(strands).unwrap(),
        operand_strands,
        operand_len: len,
        pure,
    }
}

fn idempotent_endo(g: &Platform) -> PointMap {
    let n = g.elements().unwrap().len() as u32;
    enumerate_endomorphisms(g)
        .unwrap()
        .into_iter()
        .find(|m| {
            let t = m.table();
            let image: std::collections::BTreeSet<_> = t.iter().collect();
            m.is_idempotent() && image.len() > 1 && (image.len() as u32) < n
        })
        .expect("S4 has a nontrivial idempotent endomorphism")
}

fn c3_ld_suites() -> Outcome {
    let mut rng = seeded_rng(3);
    let s4 = Platform::symmetric(4).unwrap();
    let fin = Carrier::Finite(s4);
    let inner = Endomorphism::Inner(perm(4, &[2, 3, 1]));
    let idem = Endomorphism::PointMap(idempotent_endo(&s4));
    let b = |strands| braid_carrier(strands, 4, 6, false);
    let pure = braid_carrier(6, 4, 3, true);

    let sigma = word(2, &[1]);
    let gen_a = make_generalized_shifted(2, &word(2, &[1]), &word(2, &[1, 1])).unwrap();
    let gen_b = make_generalized_shifted(3, &word(3, &[1, 2]), &word(3, &[1, 2, 1, 2, 1, 2])).unwrap();
    let split = make_split_shifted(1, 1, (&word(1, &[]), &word(1, &[])), (&word(1, &[]), &word(1, &[]))).unwrap();
    let split2 = make_split_shifted(2, 1, (&word(2, &[1]), &word(2, &[-1])), (&word(1, &[]), &word(1, &[]))).unwrap();

    let positive: Vec<(&str, OpDescriptor, Carrier, usize)> = vec![
        ("conj/S4", OpDescriptor::Conj, fin.clone(), 1000),
        ("conj/B", OpDescriptor::Conj, b(6), 200),
        ("f_conj(id)/S4", OpDescriptor::FConj(Endomorphism::Identity), fin.clone(), 1000),
        ("f_conj(inner)/S4", OpDescriptor::FConj(inner.clone()), fin.clone(), 1000),
        ("f_conj(inner)/B", OpDescriptor::FConj(Endomorphism::Inner(
            Platform::braid(6).unwrap().braid_letters(&[1, -2, 3]).unwrap(),
        )), b(6), 200),
        ("f_conj(pure_braid_endo)/P", OpDescriptor::FConj(Endomorphism::PowerShift { d: 1 }), pure, 200),
        ("sym_conj/S4", OpDescriptor::SymConj, fin.clone(), 1000),
        ("sym_conj/B", OpDescriptor::SymConj, b(6), 200),
        ("f_sym_conj(idempotent)/S4", OpDescriptor::FSymConj(idem), fin.clone(), 1000),
        ("shifted(1,s1)", OpDescriptor::Shifted { p: 1, a: sigma }, b(9), 200),
        ("generalized(p=2)", gen_a, braid_carrier(12, 3, 4, false), 200),
        ("generalized(p=3)", gen_b, braid_carrier(18, 3, 4, false), 200),
        ("split(1,1)", split, braid_carrier(12, 3, 4, false), 200),
        ("split(2,1)", split2, braid_carrier(18, 3, 4, false), 200),
    ];
    let mut fails = Vec::new();
    for (name, op, carrier, n) in &positive {
        let v = verify_ld(op, carrier, Sampling::Random(*n), &mut rng).unwrap();
        if !v.passed() || v.checked != *n {
            fails.push(name.to_string());
        }
    }
    // [a', a''] != 1 in B_3: the law must break.
    let bad_a = generalized_shifted_parameter(3, &word(3, &[1]), &word(3, &[2]), false).unwrap();
    let bad = OpDescriptor::Shifted { p: 3, a: bad_a };
    let v = verify_ld(&bad, &braid_carrier(18, 3, 4, false), Sampling::Random(1000), &mut rng).unwrap();
    let caught = !v.passed();
    let ok = fails.is_empty() && caught;
    let detail = format!(
        "{}/{} valid suites with 0 counterexamples; invalid parameter refuted after {} samples{}",
        positive.len() - fails.len(),
        positive.len(),
        v.checked,
        if fails.is_empty() { String::new() } else { format!("; failing: {}", fails.join(", ")) }
    );
    (ok, detail)
}

// 4 -----------------------------------------------------------------------

fn c4_multi_ld() -> Outcome {
    let mut rng = seeded_rng(4);
    let pair = [OpDescriptor::shifted_sigma1(), OpDescriptor::shifted_bar_sigma1()];
    let v1 = verify_multi_ld(&pair, &braid_carrier(9, 4, 6, false), Sampling::Random(200), &mut rng).unwrap();
    let members = [
        GeneralizedParams {
            a1: word(2, &[1]),
            a2: word(2, &[]),
            inverse_tau: false,
        },
        GeneralizedParams {
            a1: word(2, &[-1]),
            a2: word(2, &[1, 1, 1]),
            inverse_tau: false,
        },
        GeneralizedParams {
            a1: word(2, &[]),
            a2: word(2, &[-1]),
            inverse_tau: true,
        },
    ];
    let family = make_generalized_family(2, &members).unwrap();
    let v2 = verify_multi_ld(&family, &braid_carrier(12, 3, 4, false), Sampling::Random(200), &mut rng).unwrap();
    let ok = v1.passed() && v2.passed() && v1.checked == 4 * 200 && v2.checked == 9 * 200;
    (
        ok,
        format!(
            "{{*, bar*}}: {} checks, {}; p=2 family of 3: {} checks, {}",
            v1.checked,
            if v1.passed() { "no counterexample" } else { "counterexample" },
            v2.checked,
            if v2.passed() { "no counterexample" } else { "counterexample" }
        ),
    )
}

// 5 -----------------------------------------------------------------------

#[derive(Default)]
struct Tally {
    triples: usize,
    sound: usize,
    complete: usize,
    /// Conditions hold but the law fails.
    unsound: usize,
    /// Conditions fail but the law holds.
    incomplete: usize,
}

fn tally_conditions(g: &Platform, triples: &[[PointMap; 3]], t: &mut Tally, rng: &mut SeededRng) {
    let carrier = Carrier::Finite(*g);
    for [f, gg, h] in triples {
        let (f, gg, h) = (
            Endomorphism::PointMap(f.clone()),
            Endomorphism::PointMap(gg.clone()),
            Endomorphism::PointMap(h.clone()),
        );
        let cases = [
            (
                check_fconj_conditions(&f, &gg, &h, g).unwrap(),
                OpDescriptor::ConjTriple {
                    f: f.clone(),
                    g: gg.clone(),
                    h: h.clone(),
                },
            ),
            (
                check_symconj_conditions(&f, &gg, &h, g).unwrap(),
                OpDescriptor::SymTriple { f, g: gg, h },
            ),
        ];
        for (cond, op) in cases {
            t.triples += 1;
            let law = verify_ld(&op, &carrier, Sampling::Exhaustive, rng).unwrap().passed();
            match (cond, law) {
                (true, true) => t.sound += 1,
                (false, false) => t.complete += 1,
                (true, false) => t.unsound += 1,
                (false, true) => t.incomplete += 1,
            }
        }
    }
}

fn c5_conditions() -> Outcome {
    let mut rng = seeded_rng(5);
    let mut t = Tally::default();
    let s3 = Platform::symmetric(3).unwrap();
    let e3 = enumerate_endomorphisms(&s3).unwrap();
    let mut all3 = Vec::new();
    for f in &e3 {
        for g in &e3 {
            for h in &e3 {
                all3.push([f.clone(), g.clone(), h.clone()]);
            }
        }
    }
    tally_conditions(&s3, &all3, &mut t, &mut rng);
    let s4 = Platform::symmetric(4).unwrap();
    let e4 = enumerate_endomorphisms(&s4).unwrap();
    let some4: Vec<[PointMap; 3]> = (0..24)
        .map(|_| {
            let mut pick = || e4.choose(&mut rng).unwrap().clone();
            [pick(), pick(), pick()]
        })
        .collect();
    let mut rng2 = seeded_rng(55);
    tally_conditions(&s4, &some4, &mut t, &mut rng2);
    let ok = t.triples >= 20 && t.unsound == 0 && t.incomplete == 0;
    (
        ok,
        format!(
            "{} (op, f, g, h) cases over S3 (all {}) and S4 (24 random): {} hold and pass, {} fail with counterexample, {} hold yet fail, {} fail yet pass",
            t.triples,
            all3.len(),
            t.sound,
            t.complete,
            t.unsound,
            t.incomplete
        ),
    )
}

// 6 -----------------------------------------------------------------------

fn c6_tau() -> Outcome {
    let mut good = 0;
    for p in 1..=4u16 {
        let t = BraidWord::tau(p, p).unwrap().with_strands(3 * p).unwrap();
        let st = t.shift(p);
        let lhs = t.concat(&st).concat(&t).normal_form().unwrap();
        let rhs = st.concat(&t).concat(&st).normal_form().unwrap();
        good += usize::from(lhs == rhs);
    }
    (good == 4, format!("{good}/4 values of p"))
}

// 7 -----------------------------------------------------------------------

fn c7_word_problem() -> Outcome {
    let mut rng = seeded_rng(7);
    let mut agree = 0;
    let mut equal = 0;
    for k in 0..500 {
        let u = BraidWord::random(6, rng.gen_range(0..=40), &mut rng);
        let v = if k % 2 == 0 {
            // Conjugate the empty braid into the word: u x x⁻¹ stays equal.
            let cut = rng.gen_range(0..=u.len());
            let x = BraidWord::random(6, rng.gen_range(0..=(40 - u.len()) / 2), &mut rng);
            let mut l = u.letters()[..cut].to_vec();
            l.extend_from_slice(x.letters());
            l.extend_from_slice(x.invert().letters());
            l.extend_from_slice(&u.letters()[cut..]);
            word(6, &l)
        } else {
            BraidWord::random(6, rng.gen_range(0..=40), &mut rng)
        };
        let garside = u.normal_form().unwrap() == v.normal_form().unwrap();
        let handle = u.concat(&v.invert()).handle_reduce().is_empty();
        agree += usize::from(garside == handle);
        equal += usize::from(garside);
    }
    (agree == 500, format!("{agree}/500 verdicts agree ({equal} equal pairs)"))
}

// 8 -----------------------------------------------------------------------

fn c8_combs() -> Outcome {
    let mut rng = seeded_rng(8);
    let l0 = 6usize;
    let mut checks = 0;
    let mut violations = 0;
    let mut worst = (0.0f64, 0.0f64);
    for _ in 0..50 {
        let gens: Vec<BraidWord> = (0..10)
            .map(|_| BraidWord::random(5, rng.gen_range(1..=l0), &mut rng).with_strands(16).unwrap())
            .collect();
        // x * y = ∂(x⁻¹ y) x evaluated on freely reduced words.
        let mut op = |_, x: &BraidWord, y: &BraidWord| Ok(x.invert().concat(y).shift(1).concat(x).freely_reduced());
        for k in 1..=10usize {
            let leaves: Vec<u16> = (0..k as u16).collect();
            let lc = TreeWord::left_comb_over(&leaves, 0).unwrap().eval(&gens, &mut op).unwrap().len();
            let rc = TreeWord::right_comb_over(&leaves, 0).unwrap().eval(&gens, &mut op).unwrap().len();
            let (bl, br) = ((2 * k - 1) * l0, ((1usize << k) - 1) * l0);
            checks += 2;
            violations += usize::from(lc > bl) + usize::from(rc > br);
            worst.0 = worst.0.max(lc as f64 / bl as f64);
            worst.1 = worst.1.max(rc as f64 / br as f64);
        }
    }
    (
        violations == 0,
        format!(
            "{checks} bounds checked, {violations} violated; max ratio LC {:.2}, RC {:.2}",
            worst.0, worst.1
        ),
    )
}

// 9 -----------------------------------------------------------------------

fn random_word_in(g: &Platform, gens: &[Element], len: usize, rng: &mut SeededRng) -> Element {
    let mut x = g.identity();
    for _ in 0..len {
        let s = gens.choose(rng).unwrap();
        let s = if rng.gen() { s.clone() } else { g.inv(s).unwrap() };
        x = g.mul(&x, &s).unwrap();
    }
    x
}

/// A random permutation of `S_n` moving only the points in `support`.
fn perm_on(n: usize, support: &[u16], rng: &mut SeededRng) -> Element {
    let mut images: Vec<u16> = (1..=n as u16).collect();
    let mut moved = support.to_vec();
    moved.shuffle(rng);
    for (&p, v) in support.iter().zip(moved) {
        images[p as usize - 1] = v;
    }
    Element::Perm(Permutation::from_images(&images).unwrap())
}

fn c9_reductions() -> Outcome {
    let mut rng = seeded_rng(9);
    let s6 = Platform::symmetric(6).unwrap();
    let s5 = Platform::symmetric(5).unwrap();
    let mut counts = BTreeMap::<&str, usize>::new();
    for _ in 0..50 {
        // Ko-Lee through a CDP oracle.
        let a: Vec<Element> = (0..2).map(|_| perm_on(6, &[1, 2, 3], &mut rng)).collect();
        let b: Vec<Element> = (0..2).map(|_| perm_on(6, &[4, 5, 6], &mut rng)).collect();
        let s = s6.random_element(0, &mut rng);
        let x = random_word_in(&s6, &a, 5, &mut rng);
        let y = random_word_in(&s6, &b, 5, &mut rng);
        let k = s6.conj(&s, &s6.mul(&x, &y).unwrap()).unwrap();
        let klp = ProblemInstance::Klp {
            a,
            b,
            s: s.clone(),
            sx: s6.conj(&s, &x).unwrap(),
            sy: s6.conj(&s, &y).unwrap(),
        };
        let mut oracle = BruteForce {
            platform: s6,
            budget: 1 << 20,
        };
        if reduce_cdp_to_klp(&mut oracle, &klp, &s6).ok() == Some(k) {
            *counts.entry("cdp->klp").or_default() += 1;
        }

        // AAG through subgroup simultaneous CSP oracles.
        let a: Vec<Element> = (0..2).map(|_| s5.random_element(0, &mut rng)).collect();
        let b: Vec<Element> = (0..2).map(|_| s5.random_element(0, &mut rng)).collect();
        let x = random_word_in(&s5, &a, 6, &mut rng);
        let y = random_word_in(&s5, &b, 6, &mut rng);
        let aagp = ProblemInstance::Aagp {
            a: a.clone(),
            b: b.clone(),
            a_images: a.iter().map(|ai| s5.conj(ai, &y).unwrap()).collect(),
            b_images: b.iter().map(|bj| s5.conj(bj, &x).unwrap()).collect(),
        };
        let mut oracle = BruteForce {
            platform: s5,
            budget: 1 << 20,
        };
        let key = s5.commutator(&x, &y).unwrap();
        if reduce_sscsp_to_aagp(&mut oracle, &aagp, &s5, Some((&x, &y))).map(|r| r.key).ok() == Some(key) {
            *counts.entry("sscsp->aagp").or_default() += 1;
        }

        // simDP: both derived families are solved by the planted pair.
        let g = Platform::braid(5).unwrap();
        let al = g.random_element(6, &mut rng);
        let ar = g.random_element(6, &mut rng);
        let pairs: Vec<(Element, Element)> = (0..3)
            .map(|_| {
                let t = g.random_element(5, &mut rng);
                let tp = g.product([&al, &t, &ar]).unwrap();
                (t, tp)
            })
            .collect();
        let d = reduce_simdp_to_sscsp(&ProblemInstance::NSimDp { pairs }, &g).unwrap();
        if verify(&d.left, &g, &Witness::Element(al)).unwrap() && verify(&d.right, &g, &Witness::Element(ar)).unwrap()
        {
            *counts.entry("simdp->simcsp").or_default() += 1;
        }

        // f-CSP with an inner endomorphism on S5.
        let f = Endomorphism::Inner(s5.random_element(0, &mut rng));
        let bsec = s5.random_element(0, &mut rng);
        let pairs: Vec<(Element, Element)> = (0..3)
            .map(|_| {
                let si = s5.random_element(0, &mut rng);
                let img = f.apply(&s5, &s5.mul(&s5.inv(&bsec).unwrap(), &si).unwrap()).unwrap();
                (si, s5.mul(&img, &bsec).unwrap())
            })
            .collect();
        let derived = reduce_simfcsp_to_simcsp(&ProblemInstance::FCsp { f, pairs }, &s5).unwrap().unwrap();
        if verify(&derived, &s5, &Witness::Element(bsec)).unwrap() {
            *counts.entry("simfcsp->simcsp").or_default() += 1;
        }

        // sh-CSP with p = 1, a = σ1 on B_8.
        let g = Platform::braid(8).unwrap();
        let sigma = g.braid_letters(&[1]).unwrap();
        let small = Platform::braid(4).unwrap();
        let lift = |x: Element| x.as_braid().unwrap().extend_to(8).map(Element::Braid).unwrap();
        let bsec = lift(small.random_element(6, &mut rng));
        let pairs: Vec<(Element, Element)> = (0..3)
            .map(|_| {
                let si = lift(small.random_element(5, &mut rng));
                let sb = g.shift(&g.inv(&bsec).unwrap(), 1).unwrap();
                let img = g.product([&sb, &sigma, &g.shift(&si, 1).unwrap(), &bsec]).unwrap();
                (si, img)
            })
            .collect();
        let inst = ProblemInstance::ShCsp {
            p: 1,
            a: word(2, &[1]),
            pairs,
        };
        let derived = reduce_simshcsp_to_simcsp(&inst, &g).unwrap().unwrap();
        if verify(&inst, &g, &Witness::Element(bsec.clone())).unwrap()
            && verify(&derived, &g, &Witness::Element(bsec)).unwrap()
        {
            *counts.entry("simshcsp->simcsp").or_default() += 1;
        }
    }
    let names = ["cdp->klp", "sscsp->aagp", "simdp->simcsp", "simfcsp->simcsp", "simshcsp->simcsp"];
    let ok = names.iter().all(|n| counts.get(n) == Some(&50));
    let detail = names
        .iter()
        .map(|n| format!("{n} {}/50", counts.get(n).copied().unwrap_or(0)))
        .collect::<Vec<_>>()
        .join(", ");
    (ok, detail)
}

// 10 ----------------------------------------------------------------------

/// Laver table by the defining recursion, rows from the top down.
fn laver_oracle(n: u32) -> Vec<Vec<usize>> {
    let size = 1usize << n;
    let mut t = vec![vec![0usize; size + 1]; size + 1];
    for (q, cell) in t[size].iter_mut().enumerate().skip(1) {
        *cell = q;
    }
    for p in (1..size).rev() {
        t[p][1] = p + 1;
        for q in 1..size {
            t[p][q + 1] = t[t[p][q]][p + 1];
        }
    }
    t
}

fn c10_laver() -> Outcome {
    let mut rng = seeded_rng(10);
    let mut ok = true;
    for n in 0..=4u8 {
        let lib = LaverTable::new(n).unwrap();
        let oracle = laver_oracle(n as u32);
        let size = lib.size();
        for p in 1..=size {
            for q in 1..=size {
                ok &= lib.op(p, q).unwrap() == oracle[p][q];
                for r in 1..=size {
                    let o = &oracle;
                    ok &= o[p][o[q][r]] == o[o[p][q]][o[p][r]];
                }
            }
        }
        let v = verify_ld(&OpDescriptor::Laver(lib.clone()), &Carrier::Laver(lib), Sampling::Exhaustive, &mut rng).unwrap();
        ok &= v.passed() && v.checked == size.pow(3);
    }
    let row = LaverTable::new(2).unwrap().row(1).to_vec();
    ok &= row == [2, 4, 2, 4];
    (ok, format!("A_0..A_4 exhaustively LD and equal to the recursion; A_2 row 1 = {row:?}"))
}

// 11 ----------------------------------------------------------------------

fn c11_membership() -> Outcome {
    let t = LaverTable::new(3).unwrap();
    let carrier = Carrier::Laver(t.clone());
    let ops = [OpDescriptor::Laver(t.clone())];
    let (mut trees, mut refusals, mut wrong) = (0, 0, 0);
    for g in 1..=8usize {
        let mut closure = std::collections::BTreeSet::from([g]);
        loop {
            let next: Vec<usize> = closure
                .iter()
                .flat_map(|&x| closure.iter().map(move |&y| (x, y)))
                .map(|(x, y)| t.op(x, y).unwrap())
                .collect();
            let before = closure.len();
            closure.extend(next);
            if closure.len() == before {
                break;
            }
        }
        for target in 1..=8usize {
            let found = bf_membership_magma(
                &carrier,
                &Element::Residue(target as u64),
                &[Element::Residue(g as u64)],
                &ops,
                64,
                1 << 24,
            )
            .unwrap();
            match (found, closure.contains(&target)) {
                (Some(tree), true) => {
                    let v = tree.eval(&[g], &mut |_, &x, &y| t.op(x, y)).unwrap();
                    if v == target {
                        trees += 1;
                    } else {
                        wrong += 1;
                    }
                }
                (None, false) => refusals += 1,
                _ => wrong += 1,
            }
        }
    }
    (
        wrong == 0 && trees + refusals == 64,
        format!("{trees} members with verified trees, {refusals} non-members refused, {wrong} wrong"),
    )
}

// 12 ----------------------------------------------------------------------

fn loopback(spec: &ProtocolSpec) -> (TranscriptDoc, TranscriptDoc) {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let addr = listener.local_addr().unwrap().to_string();
    let s = spec.clone();
    let server = thread::spawn(move || serve(&listener, &s, Duration::from_secs(30)));
    let a = connect(&addr, spec, Duration::from_secs(30)).unwrap();
    let b = server.join().unwrap().unwrap();
    (a, b)
}

fn c12_session() -> Outcome {
    let params = KeygenParams {
        instantiation: "shifted_commutator".into(),
        platform: Platform::braid(8).unwrap(),
        gens: 3,
        gen_len: 6,
        policy: None,
        p: 1,
    };
    let spec = random_spec(&params, 12, &mut seeded_rng(12)).unwrap();
    let (a, b) = loopback(&spec);
    let (a2, b2) = loopback(&spec);
    let local = TranscriptDoc::of(&run(&spec).unwrap()).unwrap();
    let same_key = a.extracted_key == b.extracted_key && a.extracted_key.len() == 64;
    let replay = a.to_json().unwrap() == a2.to_json().unwrap() && b.to_json().unwrap() == b2.to_json().unwrap();
    let matches_local = a.same_key_fields(&local) && b.same_key_fields(&local) && a.k_a == local.k_a && b.k_b == local.k_b;
    (
        same_key && replay && matches_local,
        format!(
            "keys identical: {same_key}, replay byte-identical: {replay}, matches in-process run: {matches_local}"
        ),
    )
}
