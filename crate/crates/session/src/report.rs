//! Attack experiments and their CSV reports.

use std::io::Write;
use std::time::Instant;

use magmakey_core::attacks::{bf_solve, length_attack_skeleton, verify, ProblemInstance, Search};
use magmakey_core::ldops::OpDescriptor;
use magmakey_core::platform::{Element, Platform};
use magmakey_core::Error;
use serde::Serialize;

use crate::doc::{AttackDoc, SolverDoc};
use crate::error::{doc_err, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AttackRow {
    pub tag: String,
    pub platform: String,
    pub params: String,
    pub outcome: String,
    pub verified: bool,
    pub wall_ms: f64,
}

/// A short `key=value` summary of an instance's sizes.
pub fn params(inst: &ProblemInstance) -> String {
    use ProblemInstance as P;
    match inst {
        P::Csp { .. } => String::new(),
        P::LSimCsp { pairs } | P::NSimDp { pairs } => format!("pairs={}", pairs.len()),
        P::SubCsp { h, .. } | P::Cdp { h, .. } => format!("h={}", h.len()),
        P::LSsCsp { h, pairs } => format!("h={} pairs={}", h.len(), pairs.len()),
        P::Dcp { h1, h2, .. } => format!("h1={} h2={}", h1.len(), h2.len()),
        P::DhDcp { a1, a2, b1, b2, .. } => {
            format!("a1={} a2={} b1={} b2={}", a1.len(), a2.len(), b1.len(), b2.len())
        }
        P::Klp { a, b, .. } | P::Aagp { a, b, .. } => format!("a={} b={}", a.len(), b.len()),
        P::Msp { gens, .. } => format!("gens={}", gens.len()),
        P::SymSdp { k, l, pairs } => format!("k={k} l={l} pairs={}", pairs.len()),
        P::FCsp { pairs, .. } => format!("pairs={}", pairs.len()),
        P::ShCsp { p, pairs, .. } => format!("p={p} pairs={}", pairs.len()),
        P::LdMsp {
            gens, ops, max_leaves, ..
        } => format!("gens={} ops={} max_leaves={max_leaves}", gens.len(), ops.len()),
    }
}

fn platform_label(g: Option<&Platform>, inst: &ProblemInstance) -> String {
    if let ProblemInstance::LdMsp { ops, .. } = inst {
        if let Some(OpDescriptor::Laver(t)) = ops.first() {
            return format!("A_{}", t.level());
        }
    }
    g.map(|g| g.name()).unwrap_or_default()
}

/// Run every instance of the experiment. Individual failures are recorded
/// as rows, not returned as errors.
pub fn run_attacks(doc: &AttackDoc) -> Result<Vec<AttackRow>> {
    let platform = doc.platform.map(|p| p.build()).transpose()?;
    // Laver instances ignore the platform; any placeholder will do.
    let fallback = Platform::mult_mod(2)?;
    let g = platform.unwrap_or(fallback);
    let mut rows = Vec::with_capacity(doc.instances.len());
    for d in &doc.instances {
        if platform.is_none() && !matches!(d, crate::doc::InstanceDoc::LdMsp { .. }) {
            return Err(doc_err("a platform is required for group instances"));
        }
        let inst = d.build(&g)?;
        let start = Instant::now();
        let result = match doc.solver {
            SolverDoc::BruteForce => bf_solve(&inst, &g, doc.budget),
            SolverDoc::Length => length_attack_skeleton(&inst, &g, &Element::word_len, doc.budget),
        };
        let wall_ms = start.elapsed().as_secs_f64() * 1e3;
        let (outcome, verified) = match result {
            Ok(Search::Found(w)) => ("found".to_string(), verify(&inst, &g, &w)?),
            Ok(Search::NotFound { .. }) => ("not_found".to_string(), false),
            Err(Error::BudgetExceeded) => ("budget_exceeded".to_string(), false),
            Err(e) => (format!("error: {e}"), false),
        };
        rows.push(AttackRow {
            tag: inst.tag().to_string(),
            platform: platform_label(platform.as_ref(), &inst),
            params: params(&inst),
            outcome,
            verified,
            wall_ms,
        });
    }
    Ok(rows)
}

pub fn write_csv<W: Write>(rows: &[AttackRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
