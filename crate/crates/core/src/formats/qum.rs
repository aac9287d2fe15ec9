//! `QUM1`: magic, `u32` N, then N² `(re, im)` pairs of `f64`, row-major,
//! all little-endian.

use std::io::{Read, Write};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, UnitaryMatrix};

pub const MAGIC: &[u8; 4] = b"QUM1";

pub fn write_unitary<W: Write>(mut w: W, u: &UnitaryMatrix) -> Result<()> {
    w.write_all(&encode(u))?;
    Ok(())
}

pub fn encode(u: &UnitaryMatrix) -> Vec<u8> {
    let n = u.modes();
    let mut out = Vec::with_capacity(8 + 16 * n * n);
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&(n as u32).to_le_bytes());
    for z in u.matrix().as_slice() {
        out.extend_from_slice(&z.re.to_le_bytes());
        out.extend_from_slice(&z.im.to_le_bytes());
    }
    out
}

pub fn read_unitary<R: Read>(mut r: R) -> Result<UnitaryMatrix> {
    let mut bytes = Vec::new();
    r.read_to_end(&mut bytes)?;
    decode(&bytes)
}

pub fn decode(bytes: &[u8]) -> Result<UnitaryMatrix> {
    if bytes.len() < 8 || &bytes[..4] != MAGIC {
        return Err(Error::Format("not a QUM1 file".into()));
    }
    let n = u32::from_le_bytes(bytes[4..8].try_into().unwrap()) as usize;
    let expected = n
        .checked_mul(n)
        .and_then(|n2| n2.checked_mul(16))
        .and_then(|b| b.checked_add(8))
        .ok_or_else(|| Error::Format(format!("QUM1 size {n} overflows")))?;
    if bytes.len() != expected {
        return Err(Error::Format(format!("QUM1 with N={n} needs {expected} bytes, found {}", bytes.len())));
    }
    let f = |at: usize| f64::from_le_bytes(bytes[at..at + 8].try_into().unwrap());
    let data = (0..n * n).map(|i| Complex64::new(f(8 + 16 * i), f(16 + 16 * i))).collect();
    UnitaryMatrix::new(ComplexMatrix::from_vec(n, n, data)?)
}
