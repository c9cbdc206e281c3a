//! Two-party sessions over a byte stream.
//!
//! The initiator plays Alice and the responder Bob. Phases strictly
//! alternate: Hello (spec digest), PublicKeyList, KeyConfirm, with the
//! initiator sending first in each phase.

use std::io::{Read, Write};
use std::net::{SocketAddr, TcpListener, TcpStream, ToSocketAddrs};
use std::thread;
use std::time::{Duration, Instant};

use magmakey_core::codec::{Reader, Writer};
use magmakey_core::protocols::{
    decode_elements, derive_key, encode_elements, key_confirmation, key_extract, keygen, public_message,
    secret_warnings, spec_digest, ProtocolSpec, Role,
};

use crate::doc::{elem_doc, messages_hex, SpecDoc, TranscriptDoc};
use crate::error::{AppError, Result};
use crate::wire::{read_frame, write_frame, Frame, FrameType};

pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(30);
pub const DEFAULT_LISTEN: &str = "127.0.0.1:7878";
pub const LISTEN_ENV: &str = "MAGMAKEY_LISTEN";

const ERR_SPEC: u8 = 1;
const ERR_CONFIRM: u8 = 2;
const ERR_MALFORMED: u8 = 3;
const ERR_OTHER: u8 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SessionRole {
    Initiator,
    Responder,
}

impl SessionRole {
    pub fn party(self) -> Role {
        match self {
            SessionRole::Initiator => Role::Alice,
            SessionRole::Responder => Role::Bob,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SessionConfig {
    pub role: SessionRole,
    pub spec: ProtocolSpec,
    /// Listen address for the responder, peer address for the initiator.
    pub address: String,
    pub timeout: Duration,
}

/// The listen address from the environment, or the built-in default.
pub fn default_listen() -> String {
    std::env::var(LISTEN_ENV).unwrap_or_else(|_| DEFAULT_LISTEN.to_string())
}

pub fn session_run(cfg: &SessionConfig) -> Result<TranscriptDoc> {
    match cfg.role {
        SessionRole::Responder => {
            let listener = TcpListener::bind(&cfg.address)?;
            serve(&listener, &cfg.spec, cfg.timeout)
        }
        SessionRole::Initiator => connect(&cfg.address, &cfg.spec, cfg.timeout),
    }
}

/// Accept one connection on `listener` and run the responder side.
pub fn serve(listener: &TcpListener, spec: &ProtocolSpec, timeout: Duration) -> Result<TranscriptDoc> {
    let deadline = Instant::now() + timeout;
    listener.set_nonblocking(true)?;
    let stream = loop {
        match listener.accept() {
            Ok((s, _)) => break s,
            Err(e) if e.kind() == std::io::ErrorKind::WouldBlock => {
                if Instant::now() >= deadline {
                    return Err(AppError::Timeout);
                }
                thread::sleep(Duration::from_millis(5));
            }
            Err(e) => return Err(e.into()),
        }
    };
    stream.set_nonblocking(false)?;
    run_stream(stream, spec, SessionRole::Responder, timeout)
}

/// Connect to `addr`, retrying until the deadline, and run the initiator
/// side.
pub fn connect(addr: &str, spec: &ProtocolSpec, timeout: Duration) -> Result<TranscriptDoc> {
    let deadline = Instant::now() + timeout;
    let addrs: Vec<SocketAddr> = addr.to_socket_addrs()?.collect();
    let stream = 'outer: loop {
        for a in &addrs {
            let left = deadline.saturating_duration_since(Instant::now());
            if left.is_zero() {
                return Err(AppError::Timeout);
            }
            if let Ok(s) = TcpStream::connect_timeout(a, left) {
                break 'outer s;
            }
        }
        thread::sleep(Duration::from_millis(20));
    };
    run_stream(stream, spec, SessionRole::Initiator, timeout)
}

fn run_stream(stream: TcpStream, spec: &ProtocolSpec, role: SessionRole, timeout: Duration) -> Result<TranscriptDoc> {
    stream.set_read_timeout(Some(timeout))?;
    stream.set_write_timeout(Some(timeout))?;
    stream.set_nodelay(true)?;
    let mut stream = stream;
    run_over(&mut stream, spec, role)
}

fn error_frame(code: u8, msg: &str) -> Frame {
    let mut payload = vec![code];
    payload.extend_from_slice(msg.as_bytes());
    Frame::new(FrameType::Error, payload)
}

fn peer_error(payload: &[u8]) -> AppError {
    let msg = String::from_utf8_lossy(payload.get(1..).unwrap_or_default()).into_owned();
    match payload.first() {
        Some(&ERR_SPEC) => AppError::SpecMismatch,
        Some(&ERR_CONFIRM) => AppError::ConfirmMismatch,
        Some(&ERR_MALFORMED) => AppError::MalformedFrame(format!("peer: {msg}")),
        _ => AppError::Peer(msg),
    }
}

fn expect<S: Read>(s: &mut S, kind: FrameType) -> Result<Vec<u8>> {
    let f = read_frame(s)?;
    if f.kind == FrameType::Error {
        return Err(peer_error(&f.payload));
    }
    if f.kind != kind {
        return Err(AppError::MalformedFrame(format!("expected {kind:?}, got {:?}", f.kind)));
    }
    Ok(f.payload)
}

/// Tell the peer why we are aborting, best effort.
fn abort<S: Write>(s: &mut S, e: AppError) -> AppError {
    let code = match e {
        AppError::SpecMismatch => ERR_SPEC,
        AppError::ConfirmMismatch => ERR_CONFIRM,
        AppError::MalformedFrame(_) => ERR_MALFORMED,
        AppError::Peer(_) | AppError::Timeout | AppError::Io(_) => return e,
        _ => ERR_OTHER,
    };
    let _ = write_frame(s, &error_frame(code, &e.to_string()));
    e
}

/// Run one side of a session over any byte stream.
pub fn run_over<S: Read + Write>(s: &mut S, spec: &ProtocolSpec, role: SessionRole) -> Result<TranscriptDoc> {
    let party = role.party();
    let initiator = role == SessionRole::Initiator;
    let g = spec.platform;
    let digest = spec_digest(spec)?;

    // Hello
    let hello = Frame::new(FrameType::Hello, digest.to_vec());
    if initiator {
        write_frame(s, &hello)?;
    }
    let peer_digest = expect(s, FrameType::Hello)?;
    if peer_digest != digest {
        return Err(abort(s, AppError::SpecMismatch));
    }
    if !initiator {
        write_frame(s, &hello)?;
    }

    // PublicKeyList
    let secret = keygen(spec, party)?;
    let own_msg = public_message(spec, party, &secret)?;
    let mut w = Writer::new();
    encode_elements(&g, &own_msg, &mut w)?;
    let keys = Frame::new(FrameType::PublicKeyList, w.as_slice().to_vec());
    if initiator {
        write_frame(s, &keys)?;
    }
    let payload = expect(s, FrameType::PublicKeyList)?;
    let parsed = (|| {
        let mut r = Reader::new(&payload);
        let xs = decode_elements(&g, &mut r)?;
        r.expect_end()?;
        Ok::<_, magmakey_core::Error>(xs)
    })();
    let peer_msg = match parsed {
        Ok(xs) => xs,
        Err(e) => return Err(abort(s, AppError::MalformedFrame(format!("public keys: {e}")))),
    };
    if !initiator {
        write_frame(s, &keys)?;
    }

    // Derivation and KeyConfirm
    let derived = match derive_key(spec, party, &secret, &peer_msg) {
        Ok(d) => d,
        Err(e) => return Err(abort(s, e.into())),
    };
    let key = key_extract(&g, &derived.key)?;
    let confirm = Frame::new(FrameType::KeyConfirm, key_confirmation(&key, party).to_vec());
    if initiator {
        write_frame(s, &confirm)?;
    }
    let peer_confirm = expect(s, FrameType::KeyConfirm)?;
    if peer_confirm != key_confirmation(&key, party.peer()) {
        return Err(abort(s, AppError::ConfirmMismatch));
    }
    if !initiator {
        write_frame(s, &confirm)?;
    }

    let (alice_msg, bob_msg) = if initiator {
        (&own_msg, &peer_msg)
    } else {
        (&peer_msg, &own_msg)
    };
    let step3 = Some(elem_doc(&derived.step3));
    let k = Some(elem_doc(&derived.key));
    let (alice_step3, bob_step3, k_a, k_b) = if initiator {
        (step3, None, k, None)
    } else {
        (None, step3, None, k)
    };
    Ok(TranscriptDoc {
        spec: SpecDoc::of(spec),
        spec_digest: hex::encode(digest),
        alice_message: messages_hex(&g, alice_msg)?,
        bob_message: messages_hex(&g, bob_msg)?,
        alice_step3,
        bob_step3,
        k_a,
        k_b,
        extracted_key: hex::encode(key),
        seed: spec.seed,
        warnings: secret_warnings(spec, party, &secret),
    })
}
