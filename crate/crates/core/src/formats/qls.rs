//! `QLS1` sample batches.
//!
//! Header: magic `QLS1`, then little-endian `u32` version (1), rows, cols and
//! dtype code (0 = f32, 1 = i32). The payload follows row-major.

use std::io::{Read, Write};

use crate::error::{Error, Result};

pub const MAGIC: &[u8; 4] = b"QLS1";
pub const VERSION: u32 = 1;
const HEADER_LEN: usize = 20;

#[derive(Clone, Debug, PartialEq)]
pub enum Payload {
    F32(Vec<f32>),
    I32(Vec<i32>),
}

impl Payload {
    pub fn dtype_code(&self) -> u32 {
        match self {
            Payload::F32(_) => 0,
            Payload::I32(_) => 1,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Payload::F32(v) => v.len(),
            Payload::I32(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_f64(&self) -> Vec<f64> {
        match self {
            Payload::F32(v) => v.iter().map(|&x| f64::from(x)).collect(),
            Payload::I32(v) => v.iter().map(|&x| f64::from(x)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QlsBatch {
    rows: usize,
    cols: usize,
    payload: Payload,
}

impl QlsBatch {
    pub fn new(rows: usize, cols: usize, payload: Payload) -> Result<Self> {
        if payload.len() != rows * cols {
            return Err(Error::Dimension(format!("{} values for a {rows}x{cols} batch", payload.len())));
        }
        if u32::try_from(rows).is_err() || u32::try_from(cols).is_err() {
            return Err(Error::Format("QLS1 dimensions must fit in u32".into()));
        }
        Ok(QlsBatch { rows, cols, payload })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn payload(&self) -> &Payload {
        &self.payload
    }

    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(HEADER_LEN + 4 * self.payload.len());
        out.extend_from_slice(MAGIC);
        for word in [VERSION, self.rows as u32, self.cols as u32, self.payload.dtype_code()] {
            out.extend_from_slice(&word.to_le_bytes());
        }
        match &self.payload {
            Payload::F32(v) => v.iter().for_each(|x| out.extend_from_slice(&x.to_le_bytes())),
            Payload::I32(v) => v.iter().for_each(|x| out.extend_from_slice(&x.to_le_bytes())),
        }
        out
    }

    pub fn decode(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < HEADER_LEN || &bytes[..4] != MAGIC {
            return Err(Error::Format("not a QLS1 file".into()));
        }
        let word = |i: usize| u32::from_le_bytes(bytes[4 + 4 * i..8 + 4 * i].try_into().unwrap());
        let (version, rows, cols, dtype) = (word(0), word(1) as usize, word(2) as usize, word(3));
        if version != VERSION {
            return Err(Error::Format(format!("unsupported QLS1 version {version}")));
        }
        let count = rows.checked_mul(cols).ok_or_else(|| Error::Format("QLS1 dimensions overflow".into()))?;
        let body = &bytes[HEADER_LEN..];
        if body.len() != count * 4 {
            return Err(Error::Format(format!(
                "QLS1 {rows}x{cols} needs {} payload bytes, found {}",
                count * 4,
                body.len()
            )));
        }
        let words = body.chunks_exact(4).map(|c| <[u8; 4]>::try_from(c).unwrap());
        let payload = match dtype {
            0 => Payload::F32(words.map(f32::from_le_bytes).collect()),
            1 => Payload::I32(words.map(i32::from_le_bytes).collect()),
            other => return Err(Error::Format(format!("unknown QLS1 dtype {other}"))),
        };
        QlsBatch::new(rows, cols, payload)
    }

    pub fn write_to<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(&self.encode())?;
        Ok(())
    }

    pub fn read_from<R: Read>(mut r: R) -> Result<Self> {
        let mut bytes = Vec::new();
        r.read_to_end(&mut bytes)?;
        Self::decode(&bytes)
    }
}
