//! Binary tensor files.
//!
//! Layout, all little-endian:
//!
//! ```text
//! "QT3\0"            4 bytes
//! m, n, p            3 × u64
//! entries            m·n·p × (w, x, y, z) as f64
//! ```
//!
//! Entries are slice-major (third index slowest) and row-major within a
//! slice, matching [`CdTensor3`] storage, so a round trip is bit-exact.

use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;

use qtprod_core::algebra::Quaternion;
use qtprod_core::CdTensor3;

pub const MAGIC: [u8; 4] = *b"QT3\0";
pub const HEADER_LEN: usize = 4 + 3 * 8;
const ENTRY_LEN: usize = 4 * 8;

#[derive(Debug, thiserror::Error)]
pub enum TensorIoError {
    #[error("bad magic: expected \"QT3\\0\", found {0:02x?}")]
    BadMagic([u8; 4]),
    #[error("truncated header: {0} of {HEADER_LEN} bytes")]
    TruncatedHeader(usize),
    #[error("dimension overflow: {m}×{n}×{p} entries do not fit in memory")]
    DimOverflow { m: u64, n: u64, p: u64 },
    #[error("truncated payload: header promises {expected} bytes, found {found}")]
    TruncatedPayload { expected: usize, found: usize },
    #[error("trailing bytes: payload is {expected} bytes, found {found}")]
    TrailingBytes { expected: usize, found: usize },
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, TensorIoError>;

pub fn encode(t: &CdTensor3) -> Vec<u8> {
    let (m, n, p) = t.dims();
    let mut out = Vec::with_capacity(HEADER_LEN + t.len() * ENTRY_LEN);
    out.extend_from_slice(&MAGIC);
    for d in [m, n, p] {
        out.extend_from_slice(&(d as u64).to_le_bytes());
    }
    for q in t.to_quaternions() {
        for v in q.to_array() {
            out.extend_from_slice(&v.to_le_bytes());
        }
    }
    out
}

fn u64_at(bytes: &[u8], at: usize) -> u64 {
    u64::from_le_bytes(bytes[at..at + 8].try_into().expect("8-byte window"))
}

fn f64_at(bytes: &[u8], at: usize) -> f64 {
    f64::from_le_bytes(bytes[at..at + 8].try_into().expect("8-byte window"))
}

pub fn decode(bytes: &[u8]) -> Result<CdTensor3> {
    if bytes.len() < 4 {
        return Err(TensorIoError::TruncatedHeader(bytes.len()));
    }
    let magic: [u8; 4] = bytes[..4].try_into().expect("4 bytes");
    if magic != MAGIC {
        return Err(TensorIoError::BadMagic(magic));
    }
    if bytes.len() < HEADER_LEN {
        return Err(TensorIoError::TruncatedHeader(bytes.len()));
    }
    let (m, n, p) = (u64_at(bytes, 4), u64_at(bytes, 12), u64_at(bytes, 20));
    let count = m
        .checked_mul(n)
        .and_then(|v| v.checked_mul(p))
        .and_then(|v| usize::try_from(v).ok())
        .ok_or(TensorIoError::DimOverflow { m, n, p })?;
    let expected = count
        .checked_mul(ENTRY_LEN)
        .and_then(|v| v.checked_add(HEADER_LEN))
        .ok_or(TensorIoError::DimOverflow { m, n, p })?;
    let found = bytes.len();
    if found < expected {
        return Err(TensorIoError::TruncatedPayload { expected, found });
    }
    if found > expected {
        return Err(TensorIoError::TrailingBytes { expected, found });
    }
    let entries: Vec<Quaternion> = bytes[HEADER_LEN..]
        .chunks_exact(ENTRY_LEN)
        .map(|c| Quaternion::new(f64_at(c, 0), f64_at(c, 8), f64_at(c, 16), f64_at(c, 24)))
        .collect();
    // dims already fit in usize since their product does
    Ok(
        CdTensor3::from_quaternions(m as usize, n as usize, p as usize, &entries)
            .expect("length checked"),
    )
}

pub fn write_to(mut w: impl Write, t: &CdTensor3) -> Result<()> {
    w.write_all(&encode(t))?;
    Ok(())
}

pub fn read_from(mut r: impl Read) -> Result<CdTensor3> {
    let mut buf = Vec::new();
    r.read_to_end(&mut buf)?;
    decode(&buf)
}

pub fn write_tensor(path: impl AsRef<Path>, t: &CdTensor3) -> Result<()> {
    fs::write(path, encode(t))?;
    Ok(())
}

pub fn read_tensor(path: impl AsRef<Path>) -> Result<CdTensor3> {
    decode(&fs::read(path)?)
}
