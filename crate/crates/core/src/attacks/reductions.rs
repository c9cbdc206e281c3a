//! Oracles, reductions between problems, and derived-instance transforms.

use alloc::vec::Vec;

use super::{bf_solve, verify, Pairs, ProblemInstance, Search, Witness};
use crate::platform::{Element, Endomorphism, Platform};
use crate::{Error, Result};

/// A solver for problem instances.
pub trait Oracle {
    fn solve(&mut self, inst: &ProblemInstance) -> Result<Witness>;
}

/// Exhaustive search on a finite platform.
#[derive(Clone, Debug)]
pub struct BruteForce {
    pub platform: Platform,
    pub budget: u64,
}

impl Oracle for BruteForce {
    fn solve(&mut self, inst: &ProblemInstance) -> Result<Witness> {
        match bf_solve(inst, &self.platform, self.budget)? {
            Search::Found(w) => Ok(w),
            Search::NotFound { .. } => Err(Error::NotFound),
        }
    }
}

/// A test double answering from a closure, typically one that knows the
/// planted secret.
pub struct Planted<F>(pub F);

impl<F: FnMut(&ProblemInstance) -> Result<Witness>> Oracle for Planted<F> {
    fn solve(&mut self, inst: &ProblemInstance) -> Result<Witness> {
        (self.0)(inst)
    }
}

fn checked(oracle: &mut dyn Oracle, inst: &ProblemInstance, g: &Platform) -> Result<Witness> {
    let w = oracle.solve(inst)?;
    if !verify(inst, g, &w)? {
        return Err(Error::InvalidWitness);
    }
    Ok(w)
}

/// Solve a Ko-Lee instance with a CDP oracle: `(x1, x2) ∈ A²` with
/// `x1 s x2 = s^x` gives `K = x1 s^y x2`.
pub fn reduce_cdp_to_klp(oracle: &mut dyn Oracle, inst: &ProblemInstance, g: &Platform) -> Result<Element> {
    let ProblemInstance::Klp { a, s, sx, sy, .. } = inst else {
        return Err(Error::InvalidArgument("expected a klp instance"));
    };
    let cdp = ProblemInstance::Cdp {
        h: a.clone(),
        s: s.clone(),
        target: sx.clone(),
    };
    match checked(oracle, &cdp, g)? {
        Witness::Pair(x1, x2) => g.product([&x1, sy, &x2]),
        _ => Err(Error::InvalidWitness),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AagpReduction {
    pub key: Element,
    pub x: Element,
    pub y: Element,
    /// `c_b⁻¹ c_a⁻¹ c_b c_a` for `c_b = x′x⁻¹`, `c_a = y′y⁻¹`; the key is
    /// exact iff this is trivial. Only available with the planted secrets.
    pub diagnostic: Option<Element>,
}

/// Solve an AAG instance with two subgroup-constrained simultaneous CSP
/// oracles and return `K′ = [x′, y′]`.
pub fn reduce_sscsp_to_aagp(
    oracle: &mut dyn Oracle,
    inst: &ProblemInstance,
    g: &Platform,
    planted: Option<(&Element, &Element)>,
) -> Result<AagpReduction> {
    let ProblemInstance::Aagp {
        a,
        b,
        a_images,
        b_images,
    } = inst
    else {
        return Err(Error::InvalidArgument("expected an aagp instance"));
    };
    if !inst.well_formed() {
        return Err(Error::InvalidArgument("image counts do not match generators"));
    }
    let for_x = ProblemInstance::LSsCsp {
        h: a.clone(),
        pairs: b.iter().cloned().zip(b_images.iter().cloned()).collect(),
    };
    let for_y = ProblemInstance::LSsCsp {
        h: b.clone(),
        pairs: a.iter().cloned().zip(a_images.iter().cloned()).collect(),
    };
    let (Witness::Element(x), Witness::Element(y)) = (checked(oracle, &for_x, g)?, checked(oracle, &for_y, g)?) else {
        return Err(Error::InvalidWitness);
    };
    let diagnostic = match planted {
        Some((px, py)) => {
            let cb = g.mul(&x, &g.inv(px)?)?;
            let ca = g.mul(&y, &g.inv(py)?)?;
            Some(g.commutator(&cb, &ca)?)
        }
        None => None,
    };
    Ok(AagpReduction {
        key: g.commutator(&x, &y)?,
        x,
        y,
        diagnostic,
    })
}

fn ordered_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
}

/// The two derived simultaneous CSP families of a simultaneous
/// decomposition instance `t′ = a_l t a_r`.
#[derive(Clone, Debug, PartialEq)]
pub struct SimDpDerived {
    /// `(t′_i t′_j⁻¹, t_i t_j⁻¹)`, solved by `a_l`.
    pub left: ProblemInstance,
    /// `(t_i⁻¹ t_j, t′_i⁻¹ t′_j)`, solved by `a_r`.
    pub right: ProblemInstance,
}

pub fn reduce_simdp_to_sscsp(inst: &ProblemInstance, g: &Platform) -> Result<SimDpDerived> {
    let ProblemInstance::NSimDp { pairs } = inst else {
        return Err(Error::InvalidArgument("expected an n_simdp instance"));
    };
    if pairs.len() < 2 {
        return Err(Error::InvalidArgument("n_simdp needs at least two pairs"));
    }
    let mut left = Pairs::new();
    let mut right = Pairs::new();
    for (i, j) in ordered_pairs(pairs.len()) {
        let (ti, tpi) = &pairs[i];
        let (tj, tpj) = &pairs[j];
        left.push((g.mul(tpi, &g.inv(tpj)?)?, g.mul(ti, &g.inv(tj)?)?));
        right.push((g.mul(&g.inv(ti)?, tj)?, g.mul(&g.inv(tpi)?, tpj)?));
    }
    Ok(SimDpDerived {
        left: ProblemInstance::LSimCsp { pairs: left },
        right: ProblemInstance::LSimCsp { pairs: right },
    })
}

fn derived_pairs(
    g: &Platform,
    pairs: &Pairs,
    mut image: impl FnMut(&Element) -> Result<Element>,
) -> Result<Option<ProblemInstance>> {
    if pairs.len() < 2 {
        return Ok(None);
    }
    let mut out = Pairs::new();
    for (i, j) in ordered_pairs(pairs.len()) {
        let (si, spi) = &pairs[i];
        let (sj, spj) = &pairs[j];
        let u = image(&g.mul(&g.inv(si)?, sj)?)?;
        out.push((u, g.mul(&g.inv(spi)?, spj)?));
    }
    Ok(Some(ProblemInstance::LSimCsp { pairs: out }))
}

/// `(f(s_i⁻¹ s_j), s′_i⁻¹ s′_j)` for ordered `i ≠ j`, solved by `b`.
/// `None` when there are fewer than two pairs.
pub fn reduce_simfcsp_to_simcsp(inst: &ProblemInstance, g: &Platform) -> Result<Option<ProblemInstance>> {
    let ProblemInstance::FCsp { f, pairs } = inst else {
        return Err(Error::InvalidArgument("expected an f_csp instance"));
    };
    derived_pairs(g, pairs, |x| f.apply(g, x))
}

/// `(∂^p(s_i⁻¹ s_j), s′_i⁻¹ s′_j)` for ordered `i ≠ j`, solved by `b`.
/// `None` when there are fewer than two pairs.
pub fn reduce_simshcsp_to_simcsp(inst: &ProblemInstance, g: &Platform) -> Result<Option<ProblemInstance>> {
    let ProblemInstance::ShCsp { p, pairs, .. } = inst else {
        return Err(Error::InvalidArgument("expected an sh_csp instance"));
    };
    derived_pairs(g, pairs, |x| g.shift(x, *p))
}

/// An f-commutator run with `f(x) = p⁻¹ x p`, secrets visible.
#[derive(Clone, Debug, PartialEq)]
pub struct InnExperiment {
    pub platform: Platform,
    pub p: Element,
    pub s: Vec<Element>,
    pub t: Vec<Element>,
    pub a: Element,
    pub b: Element,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InnReport {
    pub k: Element,
    pub k_prime: Element,
    pub equal: bool,
    /// `c1` centralizes every `s_i p`, so `b′ = c1 b` solves Bob's f-CSP.
    pub c1_valid: bool,
    /// `c2` centralizes every `t_j p`, so `a′ = c2 a` solves Alice's f-CSP.
    pub c2_valid: bool,
    pub c1_c2_commute: bool,
    pub c1_ap_commute: bool,
    pub c2_bp_commute: bool,
}

impl InnReport {
    /// All three sufficient commutation conditions hold.
    pub fn conditions_hold(&self) -> bool {
        self.c1_c2_commute && self.c1_ap_commute && self.c2_bp_commute
    }
}

/// `∩ C_G(x p)` over `xs`: the admissible perturbations of an f-CSP
/// solution for `f = inner(p)`.
pub fn inn_perturbations(g: &Platform, p: &Element, xs: &[Element]) -> Result<Vec<Element>> {
    let shifted = xs.iter().map(|x| g.mul(x, p)).collect::<Result<Vec<_>>>()?;
    g.centralizer(&shifted)
}

/// Compare `K = [a, b]_f` with `K′ = [c2 a, c1 b]_f`.
pub fn inn_centralizer_experiment(exp: &InnExperiment, c1: &Element, c2: &Element) -> Result<InnReport> {
    let g = &exp.platform;
    let f = Endomorphism::Inner(exp.p.clone());
    let fcomm = |x: &Element, y: &Element| -> Result<Element> {
        // x⁻¹ f(y⁻¹ x) y
        let inner = f.apply(g, &g.mul(&g.inv(y)?, x)?)?;
        g.product([&g.inv(x)?, &inner, y])
    };
    let a2 = g.mul(c2, &exp.a)?;
    let b2 = g.mul(c1, &exp.b)?;
    let k = fcomm(&exp.a, &exp.b)?;
    let k_prime = fcomm(&a2, &b2)?;
    let centralizes = |c: &Element, xs: &[Element]| -> Result<bool> {
        for x in xs {
            if !g.commute(c, &g.mul(x, &exp.p)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    };
    Ok(InnReport {
        equal: k == k_prime,
        c1_valid: centralizes(c1, &exp.s)?,
        c2_valid: centralizes(c2, &exp.t)?,
        c1_c2_commute: g.commute(c1, c2)?,
        c1_ap_commute: g.commute(c1, &g.mul(&exp.a, &exp.p)?)?,
        c2_bp_commute: g.commute(c2, &g.mul(&exp.b, &exp.p)?)?,
        k,
        k_prime,
    })
}

/// Greedy length-based search for the secret of an f-CSP or sh-CSP
/// instance over a braid platform. Works on the derived simultaneous CSP
/// `b⁻¹ u b = v`: repeatedly conjugate every `v` by the Artin generator
/// (or inverse) that lowers the total score most, and stop once all `v`
/// equal their `u`. A candidate is only reported after it verifies against
/// the original instance. `budget` counts candidate evaluations.
pub fn length_attack_skeleton(
    inst: &ProblemInstance,
    g: &Platform,
    scorer: &dyn Fn(&Element) -> usize,
    budget: u64,
) -> Result<Search> {
    if !matches!(g, Platform::Braid { .. }) {
        return Err(Error::PlatformMismatch);
    }
    let derived = match inst {
        ProblemInstance::FCsp { .. } => reduce_simfcsp_to_simcsp(inst, g)?,
        ProblemInstance::ShCsp { .. } => reduce_simshcsp_to_simcsp(inst, g)?,
        _ => return Err(Error::InvalidArgument("expected an f_csp or sh_csp instance")),
    };
    let Some(ProblemInstance::LSimCsp { pairs }) = derived else {
        return Ok(Search::NotFound { examined: 0 });
    };
    let (us, mut vs): (Vec<Element>, Vec<Element>) = pairs.into_iter().unzip();
    let mut letters = Vec::new();
    for x in g.generators() {
        letters.push((g.inv(&x)?, x.clone()));
        letters.push((x.clone(), g.inv(&x)?));
    }
    let total = |vs: &[Element]| vs.iter().map(scorer).sum::<usize>();
    let mut acc = g.identity();
    let mut score = total(&vs);
    let mut examined = 0u64;
    let finish = |acc: &Element, examined: u64| -> Result<Search> {
        let w = Witness::Element(acc.clone());
        Ok(if verify(inst, g, &w)? {
            Search::Found(w)
        } else {
            Search::NotFound { examined }
        })
    };
    if vs == us {
        return finish(&acc, examined);
    }
    loop {
        let mut best: Option<(usize, Vec<Element>, Element)> = None;
        for (gi, x) in &letters {
            if examined >= budget {
                return Ok(Search::NotFound { examined });
            }
            examined += 1;
            // x v x⁻¹ peels x off the right end of the conjugator.
            let next = vs
                .iter()
                .map(|v| g.product([x, v, gi]))
                .collect::<Result<Vec<_>>>()?;
            if next == us {
                return finish(&g.mul(x, &acc)?, examined);
            }
            let s = total(&next);
            if best.as_ref().is_none_or(|(b, _, _)| s < *b) {
                best = Some((s, next, x.clone()));
            }
        }
        match best {
            Some((s, next, x)) if s < score => {
                score = s;
                vs = next;
                acc = g.mul(&x, &acc)?;
            }
            _ => return Ok(Search::NotFound { examined }),
        }
    }
}

/// Re-express `inst` as an instance of the harder problem `to`, following
/// the arrows of the problem hierarchy that hold by definition.
pub fn lift(inst: &ProblemInstance, to: &str, g: &Platform) -> Result<ProblemInstance> {
    let whole = || g.generators();
    Ok(match (inst, to) {
        (ProblemInstance::Csp { s, target }, "l_simcsp") => ProblemInstance::LSimCsp {
            pairs: alloc::vec![(s.clone(), target.clone())],
        },
        (ProblemInstance::Csp { s, target }, "sub_csp") => ProblemInstance::SubCsp {
            h: whole(),
            s: s.clone(),
            target: target.clone(),
        },
        (ProblemInstance::Csp { s, target }, "l_sscsp") => ProblemInstance::LSsCsp {
            h: whole(),
            pairs: alloc::vec![(s.clone(), target.clone())],
        },
        (ProblemInstance::LSimCsp { pairs }, "l_sscsp") => ProblemInstance::LSsCsp {
            h: whole(),
            pairs: pairs.clone(),
        },
        (ProblemInstance::SubCsp { h, s, target }, "l_sscsp") => ProblemInstance::LSsCsp {
            h: h.clone(),
            pairs: alloc::vec![(s.clone(), target.clone())],
        },
        (ProblemInstance::Cdp { h, s, target }, "sub_csp") => ProblemInstance::SubCsp {
            h: h.clone(),
            s: s.clone(),
            target: target.clone(),
        },
        (ProblemInstance::Cdp { h, s, target }, "dcp") => ProblemInstance::Dcp {
            h1: h.clone(),
            h2: h.clone(),
            s: s.clone(),
            target: target.clone(),
        },
        (
            ProblemInstance::DhDcp {
                a1, a2, s, x_msg, ..
            },
            "dcp",
        ) => ProblemInstance::Dcp {
            h1: a1.clone(),
            h2: a2.clone(),
            s: s.clone(),
            target: x_msg.clone(),
        },
        (ProblemInstance::Klp { a, b, s, sx, sy }, "dh_dcp") => ProblemInstance::DhDcp {
            a1: a.clone(),
            a2: a.clone(),
            b1: b.clone(),
            b2: b.clone(),
            s: s.clone(),
            x_msg: sx.clone(),
            y_msg: sy.clone(),
        },
        (ProblemInstance::Klp { a, s, sx, .. }, "cdp") => ProblemInstance::Cdp {
            h: a.clone(),
            s: s.clone(),
            target: sx.clone(),
        },
        _ => return Err(Error::InvalidArgument("no such arrow in the problem hierarchy")),
    })
}

/// Translate a witness for `lift(inst, to)` back into a witness for `inst`.
pub fn lower(inst: &ProblemInstance, to: &str, w: &Witness, g: &Platform) -> Result<Witness> {
    Ok(match (inst, to, w) {
        (
            ProblemInstance::Csp { .. } | ProblemInstance::LSimCsp { .. } | ProblemInstance::SubCsp { .. },
            _,
            Witness::Element(x),
        ) => Witness::Element(x.clone()),
        (ProblemInstance::Cdp { .. }, "sub_csp", Witness::Element(x)) => Witness::Pair(g.inv(x)?, x.clone()),
        (ProblemInstance::Cdp { .. }, "dcp", Witness::Pair(x1, x2)) => Witness::Pair(x1.clone(), x2.clone()),
        (ProblemInstance::DhDcp { y_msg, .. }, "dcp", Witness::Pair(x1, x2)) => Witness::Key {
            key: g.product([x1, y_msg, x2])?,
            parts: alloc::vec![x1.clone(), x2.clone()],
        },
        (ProblemInstance::Klp { .. }, "dh_dcp", Witness::Key { key, parts }) => Witness::Key {
            key: key.clone(),
            parts: parts.clone(),
        },
        (ProblemInstance::Klp { sy, .. }, "cdp", Witness::Pair(x1, x2)) => Witness::Key {
            key: g.product([x1, sy, x2])?,
            parts: alloc::vec![x1.clone(), x2.clone()],
        },
        _ => return Err(Error::InvalidWitness),
    })
}
