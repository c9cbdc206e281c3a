//! Length-prefixed frames: `u32` big-endian payload length, one type byte,
//! then the payload.

use std::io::{ErrorKind, Read, Write};

use crate::error::{AppError, Result};

/// Frames larger than this are rejected before allocating.
pub const MAX_PAYLOAD: u32 = 16 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrameType {
    Hello = 0x01,
    PublicKeyList = 0x02,
    KeyConfirm = 0x03,
    Error = 0x7F,
}

impl TryFrom<u8> for FrameType {
    type Error = AppError;

    fn try_from(b: u8) -> Result<Self> {
        Ok(match b {
            0x01 => FrameType::Hello,
            0x02 => FrameType::PublicKeyList,
            0x03 => FrameType::KeyConfirm,
            0x7F => FrameType::Error,
            _ => return Err(AppError::MalformedFrame(format!("unknown frame type {b:#04x}"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    pub kind: FrameType,
    pub payload: Vec<u8>,
}

impl Frame {
    pub fn new(kind: FrameType, payload: impl Into<Vec<u8>>) -> Self {
        Self {
            kind,
            payload: payload.into(),
        }
    }

    pub fn encode(&self) -> Result<Vec<u8>> {
        let len = u32::try_from(self.payload.len())
            .ok()
            .filter(|&l| l <= MAX_PAYLOAD)
            .ok_or_else(|| AppError::MalformedFrame("payload too large".into()))?;
        let mut out = Vec::with_capacity(5 + self.payload.len());
        out.extend_from_slice(&len.to_be_bytes());
        out.push(self.kind as u8);
        out.extend_from_slice(&self.payload);
        Ok(out)
    }

    /// Decode exactly one frame occupying all of `bytes`.
    pub fn decode(mut bytes: &[u8]) -> Result<Self> {
        let f = read_frame(&mut bytes)?;
        if !bytes.is_empty() {
            return Err(AppError::MalformedFrame("trailing bytes after frame".into()));
        }
        Ok(f)
    }
}

fn io_to_app(e: std::io::Error) -> AppError {
    match e.kind() {
        ErrorKind::UnexpectedEof => AppError::MalformedFrame("truncated frame".into()),
        ErrorKind::WouldBlock | ErrorKind::TimedOut => AppError::Timeout,
        _ => AppError::Io(e),
    }
}

pub fn read_frame<R: Read + ?Sized>(r: &mut R) -> Result<Frame> {
    let mut header = [0u8; 5];
    r.read_exact(&mut header).map_err(io_to_app)?;
    let len = u32::from_be_bytes([header[0], header[1], header[2], header[3]]);
    let kind = FrameType::try_from(header[4])?;
    if len > MAX_PAYLOAD {
        return Err(AppError::MalformedFrame(format!("declared length {len} exceeds limit")));
    }
    let mut payload = vec![0u8; len as usize];
    r.read_exact(&mut payload).map_err(io_to_app)?;
    Ok(Frame { kind, payload })
}

pub fn write_frame<W: Write + ?Sized>(w: &mut W, f: &Frame) -> Result<()> {
    w.write_all(&f.encode()?).map_err(io_to_app)?;
    w.flush().map_err(io_to_app)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout_is_big_endian_length_then_type() {
        let f = Frame::new(FrameType::KeyConfirm, vec![0xAA, 0xBB]);
        assert_eq!(f.encode().unwrap(), [0, 0, 0, 2, 0x03, 0xAA, 0xBB]);
        assert_eq!(Frame::decode(&[0, 0, 0, 0, 0x7F]).unwrap(), Frame::new(FrameType::Error, vec![]));
    }

    #[test]
    fn bad_frames_are_malformed() {
        for bytes in [&[0u8, 0, 0][..], &[0, 0, 0, 2, 0x01, 9], &[0, 0, 0, 0, 0x04], &[0, 0, 0, 0, 1, 0]] {
            assert!(matches!(Frame::decode(bytes), Err(AppError::MalformedFrame(_))), "{bytes:?}");
        }
        let huge = (MAX_PAYLOAD + 1).to_be_bytes();
        let bytes = [huge[0], huge[1], huge[2], huge[3], 0x02];
        assert!(matches!(Frame::decode(&bytes), Err(AppError::MalformedFrame(_))));
    }
}
