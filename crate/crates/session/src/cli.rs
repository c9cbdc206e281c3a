//! The `magmakey` command line.
//!
//! Exit codes: 0 success, 1 verified failure (key mismatch, unexpected
//! verdict, failed session), 2 usage error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use magmakey_core::braid::BraidWord;
use magmakey_core::ldops::{
    shifted_strands, verify_ld, verify_multi_ld, Carrier, LaverTable, OpDescriptor, Sampling, Verdict,
    BRAID_SAMPLES, FINITE_SAMPLES,
};
use magmakey_core::platform::{Endomorphism, Platform};
use magmakey_core::protocols::{keygen as party_keygen, run, KeyPolicy, ProtocolSpec, Role};
use magmakey_core::seeded_rng;
use serde::Serialize;

use crate::doc::{parse_elem, parse_platform, AttackDoc, ElemDoc, SecretDoc, SpecDoc, TranscriptDoc};
use crate::error::{doc_err, AppError, Result};
use crate::keygen::{default_shift_parameter, random_spec, KeygenParams};
use crate::report::{run_attacks, write_csv};
use crate::session::{connect, default_listen, serve, LISTEN_ENV};

#[derive(Parser, Debug)]
#[command(name = "magmakey", version, about = "Key establishment over braid, permutation and LD-magma platforms")]
pub struct Cli {
    /// Seed for deterministic runs; overrides the seed stored in spec files.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run both parties in-process and write the transcript.
    Run {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Accept one connection and run the responder side.
    Serve {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, env = LISTEN_ENV)]
        listen: Option<String>,
        #[arg(long, default_value_t = 30)]
        timeout: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Connect to a responder and run the initiator side.
    Connect {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        addr: String,
        #[arg(long, default_value_t = 30)]
        timeout: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an attack experiment file and write a CSV report.
    Attack {
        #[arg(long)]
        instances: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Overrides the budget in the file.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Check left self-distributivity of a named operation or family.
    VerifyLaws(VerifyArgs),
    /// Time normal forms or protocol runs.
    Bench(BenchArgs),
    /// Emit a random spec and the secrets it induces.
    Keygen(KeygenArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LawOp {
    Conj,
    FConj,
    SymConj,
    FSymConj,
    Bullet,
    BetaKl,
    Shifted,
    ShiftedBar,
    ShiftedRev,
    /// `{shifted, shifted_bar}` as a bi-LD family.
    Bild,
    Laver,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Expect {
    Pass,
    Fail,
}

#[derive(clap::Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub op: LawOp,
    /// `sym:N`, `mod:P` or `braid:N`; defaults to sym:4, or a braid
    /// platform for shifted operations.
    #[arg(long)]
    pub platform: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub p: u16,
    /// Comma-separated letters of the shift parameter; default σ1 or τ_{p,p}.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    /// `id`, `shift:D` or `inner:X` with X a comma-separated element.
    #[arg(long, default_value = "id", allow_hyphen_values = true)]
    pub f: String,
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    #[arg(long, default_value_t = 1)]
    pub l: u32,
    /// Laver table level.
    #[arg(long, default_value_t = 3)]
    pub n: u8,
    #[arg(long)]
    pub samples: Option<usize>,
    /// Check every triple (finite carriers only).
    #[arg(long)]
    pub exhaustive: bool,
    /// Strands and word length of random braid operands.
    #[arg(long, default_value_t = 4)]
    pub operand_strands: u16,
    #[arg(long, default_value_t = 6)]
    pub operand_len: usize,
    #[arg(long, value_enum, default_value_t = Expect::Pass)]
    pub expect: Expect,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BenchWhat {
    NormalForm,
    Protocol,
}

#[derive(clap::Args, Debug)]
pub struct BenchArgs {
    #[arg(long, value_enum, default_value_t = BenchWhat::NormalForm)]
    pub what: BenchWhat,
    #[arg(long, value_delimiter = ',', default_values_t = [4u16, 6, 8])]
    pub strands: Vec<u16>,
    #[arg(long, value_delimiter = ',', default_values_t = [10usize, 20, 40])]
    pub lengths: Vec<usize>,
    #[arg(long, default_value_t = 20)]
    pub reps: usize,
    /// Spec file for protocol timing.
    #[arg(long)]
    pub spec: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
pub struct KeygenArgs {
    #[arg(long)]
    pub instantiation: String,
    #[arg(long, default_value = "sym:5")]
    pub platform: String,
    #[arg(long, default_value_t = 3)]
    pub gens: usize,
    #[arg(long, default_value_t = 4)]
    pub gen_len: usize,
    #[arg(long)]
    pub leaves: Option<usize>,
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub p: u16,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write both parties' secrets here.
    #[arg(long)]
    pub secrets: Option<PathBuf>,
}

/// Parse `argv` (including the program name), run, and return the exit code.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &AppError) -> i32 {
    match e {
        AppError::Doc(_) | AppError::Json(_) => 2,
        AppError::Io(io) if io.kind() == std::io::ErrorKind::NotFound => 2,
        _ => 1,
    }
}

fn load_spec(path: &Path, seed: Option<u64>) -> Result<ProtocolSpec> {
    let text = fs::read_to_string(path)?;
    let mut doc: SpecDoc = serde_json::from_str(&text)?;
    if let Some(s) = seed {
        doc.seed = s;
    }
    doc.build()
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn summarize(t: &TranscriptDoc) {
    eprintln!("spec digest   {}", t.spec_digest);
    eprintln!("extracted key {}", t.extracted_key);
    for w in &t.warnings {
        eprintln!("warning: {w}");
    }
}

fn execute(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Run { spec, out } => {
            let spec = load_spec(spec, cli.seed)?;
            let t = match run(&spec) {
                Ok(t) => t,
                Err(magmakey_core::Error::KeyMismatch) => {
                    eprintln!("verdict: keys differ");
                    return Ok(1);
                }
                Err(e) => return Err(e.into()),
            };
            let doc = TranscriptDoc::of(&t)?;
            summarize(&doc);
            emit(out.as_deref(), &doc.to_json()?)?;
            Ok(0)
        }
        Command::Serve {
            spec,
            listen,
            timeout,
            out,
        } => {
            let spec = load_spec(spec, cli.seed)?;
            let addr = listen.clone().unwrap_or_else(default_listen);
            let listener = std::net::TcpListener::bind(&addr)?;
            eprintln!("listening on {}", listener.local_addr()?);
            let doc = serve(&listener, &spec, Duration::from_secs(*timeout))?;
            summarize(&doc);
            emit(out.as_deref(), &doc.to_json()?)?;
            Ok(0)
        }
        Command::Connect {
            spec,
            addr,
            timeout,
            out,
        } => {
            let spec = load_spec(spec, cli.seed)?;
            let doc = connect(addr, &spec, Duration::from_secs(*timeout))?;
            summarize(&doc);
            emit(out.as_deref(), &doc.to_json()?)?;
            Ok(0)
        }
        Command::Attack {
            instances,
            out,
            budget,
        } => {
            let text = fs::read_to_string(instances)?;
            let mut doc: AttackDoc = serde_json::from_str(&text)?;
            if let Some(b) = budget {
                doc.budget = *b;
            }
            let rows = run_attacks(&doc)?;
            let bad = rows.iter().filter(|r| r.outcome == "found" && !r.verified).count();
            match out {
                Some(p) => write_csv(&rows, fs::File::create(p)?)?,
                None => write_csv(&rows, std::io::stdout())?,
            }
            Ok(if bad > 0 { 1 } else { 0 })
        }
        Command::VerifyLaws(args) => verify_laws(args, cli.seed.unwrap_or(0)),
        Command::Bench(args) => bench(args, cli.seed.unwrap_or(0)),
        Command::Keygen(args) => keygen(args, cli.seed.unwrap_or(0)),
    }
}

fn parse_letters(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<i64>().map_err(|_| doc_err(format!("bad number `{t}`"))))
        .collect()
}

fn parse_f(g: &Platform, s: &str) -> Result<Endomorphism> {
    if s == "id" {
        return Ok(Endomorphism::Identity);
    }
    if let Some(d) = s.strip_prefix("shift:") {
        let d = d.parse().map_err(|_| doc_err("bad shift amount"))?;
        return Ok(Endomorphism::PowerShift { d });
    }
    if let Some(x) = s.strip_prefix("inner:") {
        let x = parse_elem(g, &ElemDoc::Word(parse_letters(x)?))?;
        return Ok(Endomorphism::Inner(x));
    }
    Err(doc_err(format!("unknown endomorphism `{s}`")))
}

fn shift_parameter(args: &VerifyArgs) -> Result<BraidWord> {
    match &args.a {
        None => default_shift_parameter(args.p),
        Some(s) => {
            let letters = parse_letters(s)?
                .into_iter()
                .map(|l| i16::try_from(l).map_err(|_| doc_err("braid letter out of range")))
                .collect::<Result<Vec<_>>>()?;
            let n = letters.iter().map(|l| l.unsigned_abs() + 1).max().unwrap_or(2).max(2);
            Ok(BraidWord::new(n, letters)?)
        }
    }
}

/// Builds the operation family and its carrier, then runs the checker.
pub fn verify_laws_verdict(args: &VerifyArgs, seed: u64) -> Result<(Vec<OpDescriptor>, Verdict)> {
    let shifted = matches!(args.op, LawOp::Shifted | LawOp::ShiftedBar | LawOp::ShiftedRev | LawOp::Bild);
    let platform = match (&args.platform, shifted) {
        (Some(s), _) => Some(parse_platform(s)?),
        (None, true) => None,
        (None, false) => Some(Platform::symmetric(4)?),
    };
    let mk_carrier = |g: Platform, pure: bool| -> Carrier {
        if g.is_finite() {
            Carrier::Finite(g)
        } else {
            let strands = match g {
                Platform::Braid { strands } => strands,
                _ => unreachable!(),
            };
            Carrier::Braid {
                platform: g,
                operand_strands: args.operand_strands.min(strands),
                operand_len: args.operand_len,
                pure,
            }
        }
    };
    let (family, carrier) = if args.op == LawOp::Laver {
        let t = LaverTable::new(args.n)?;
        (vec![OpDescriptor::Laver(t.clone())], Carrier::Laver(t))
    } else if shifted {
        let a = shift_parameter(args)?;
        let needed = shifted_strands(args.operand_strands, args.p, 2);
        let g = match platform {
            Some(g @ Platform::Braid { strands }) if strands >= needed => g,
            Some(Platform::Braid { .. }) => {
                return Err(doc_err(format!("shifted checks need at least {needed} strands")))
            }
            Some(_) => return Err(doc_err("shifted operations need a braid platform")),
            None => Platform::braid(needed)?,
        };
        let (p, inv) = (args.p, a.invert());
        let family = match args.op {
            LawOp::Shifted => vec![OpDescriptor::Shifted { p, a }],
            LawOp::ShiftedBar => vec![OpDescriptor::ShiftedBar { p, a }],
            LawOp::ShiftedRev => vec![OpDescriptor::ShiftedRev { p, a }],
            _ => vec![OpDescriptor::Shifted { p, a }, OpDescriptor::ShiftedBar { p, a: inv }],
        };
        for op in &family {
            op.validate(&g)?;
        }
        (family, mk_carrier(g, false))
    } else {
        let g = platform.expect("set above");
        let f = parse_f(&g, &args.f)?;
        let pure = matches!(f, Endomorphism::PowerShift { .. });
        let op = match args.op {
            LawOp::Conj => OpDescriptor::Conj,
            LawOp::FConj => OpDescriptor::FConj(f),
            LawOp::SymConj => OpDescriptor::SymConj,
            LawOp::FSymConj => OpDescriptor::FSymConj(f),
            LawOp::Bullet => OpDescriptor::Bullet,
            LawOp::BetaKl => OpDescriptor::BetaKl { k: args.k, l: args.l },
            _ => unreachable!(),
        };
        op.validate(&g)?;
        (vec![op], mk_carrier(g, pure))
    };
    let sampling = if args.exhaustive {
        Sampling::Exhaustive
    } else {
        let default = if matches!(carrier, Carrier::Braid { .. }) {
            BRAID_SAMPLES
        } else {
            FINITE_SAMPLES
        };
        Sampling::Random(args.samples.unwrap_or(default))
    };
    let mut rng = seeded_rng(seed);
    let verdict = if family.len() == 1 {
        verify_ld(&family[0], &carrier, sampling, &mut rng)?
    } else {
        verify_multi_ld(&family, &carrier, sampling, &mut rng)?
    };
    Ok((family, verdict))
}

fn verify_laws(args: &VerifyArgs, seed: u64) -> Result<i32> {
    let (family, v) = verify_laws_verdict(args, seed)?;
    let names: Vec<&str> = family.iter().map(|o| o.name()).collect();
    let verdict = if v.passed() { "pass" } else { "fail" };
    println!("op={} checked={} verdict={verdict}", names.join("+"), v.checked);
    if let Some(c) = &v.counterexample {
        println!(
            "counterexample ops=({}, {}) x={} y={} z={}",
            c.ops.0, c.ops.1, c.triple[0], c.triple[1], c.triple[2]
        );
    }
    let expected = args.expect == Expect::Pass;
    Ok(if v.passed() == expected { 0 } else { 1 })
}

fn bench(args: &BenchArgs, seed: u64) -> Result<i32> {
    let mut rng = seeded_rng(seed);
    let reps = args.reps.max(1);
    println!("bench,size,length,reps,mean_us");
    match args.what {
        BenchWhat::NormalForm => {
            for &n in &args.strands {
                for &len in &args.lengths {
                    let words: Vec<BraidWord> = (0..reps).map(|_| BraidWord::random(n, len, &mut rng)).collect();
                    let start = Instant::now();
                    for w in &words {
                        w.normal_form()?;
                    }
                    let mean = start.elapsed().as_secs_f64() * 1e6 / reps as f64;
                    println!("normal_form,{n},{len},{reps},{mean:.2}");
                }
            }
        }
        BenchWhat::Protocol => {
            let path = args.spec.as_ref().ok_or_else(|| doc_err("--spec is required for protocol timing"))?;
            let mut spec = load_spec(path, None)?;
            let tag = spec.instantiation.tag();
            let start = Instant::now();
            for k in 0..reps {
                spec.seed = seed.wrapping_add(k as u64);
                run(&spec)?;
            }
            let mean = start.elapsed().as_secs_f64() * 1e6 / reps as f64;
            println!("{tag},{},{},{reps},{mean:.2}", spec.platform.name(), spec.policy.leaves);
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct SecretsDoc {
    alice: SecretDoc,
    bob: SecretDoc,
}

fn keygen(args: &KeygenArgs, seed: u64) -> Result<i32> {
    let platform = parse_platform(&args.platform)?;
    let policy = if args.leaves.is_some() || args.depth.is_some() {
        let base = KeyPolicy::default_for(&platform);
        Some(KeyPolicy {
            leaves: args.leaves.unwrap_or(base.leaves),
            max_depth: args.depth.unwrap_or(base.max_depth),
            ..base
        })
    } else {
        None
    };
    let params = KeygenParams {
        instantiation: args.instantiation.clone(),
        platform,
        gens: args.gens,
        gen_len: args.gen_len,
        policy,
        p: args.p,
    };
    let spec = random_spec(&params, seed, &mut seeded_rng(seed))?;
    let doc = SpecDoc::of(&spec);
    emit(args.out.as_deref(), &(serde_json::to_string_pretty(&doc)? + "\n"))?;
    if let Some(path) = &args.secrets {
        let secrets = SecretsDoc {
            alice: SecretDoc::of(&party_keygen(&spec, Role::Alice)?),
            bob: SecretDoc::of(&party_keygen(&spec, Role::Bob)?),
        };
        fs::write(path, serde_json::to_string_pretty(&secrets)? + "\n")?;
    }
    Ok(0)
}
