//! Binary PGM (P5) with 8-bit samples.
//!
//! The writer emits exactly `P5\n<width> <height>\n255\n` followed by the raw
//! pixels, so files are byte-for-byte reproducible.

use std::io::{self, Write};

use sigsim_core::GrayImage;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PgmError {
    #[error("not a binary PGM (missing P5 magic)")]
    BadMagic,
    #[error("malformed PGM header")]
    BadHeader,
    #[error("unsupported maxval {0}; only 255 is handled")]
    UnsupportedMaxval(u32),
    #[error("pixel data holds {found} bytes, expected {expected}")]
    Truncated { expected: usize, found: usize },
}

pub fn header(image: &GrayImage) -> String {
    format!("P5\n{} {}\n255\n", image.width(), image.height())
}

pub fn encode(image: &GrayImage) -> Vec<u8> {
    let header = header(image);
    let mut out = Vec::with_capacity(header.len() + image.pixels().len());
    out.extend_from_slice(header.as_bytes());
    out.extend_from_slice(image.pixels());
    out
}

/// Writes `image` to `dest`, returning the number of bytes written.
pub fn write_pgm<W: Write>(image: &GrayImage, mut dest: W) -> io::Result<usize> {
    let header = header(image);
    dest.write_all(header.as_bytes())?;
    dest.write_all(image.pixels())?;
    dest.flush()?;
    Ok(header.len() + image.pixels().len())
}

/// Parses a P5 image with maxval 255. Comments in the header are accepted.
pub fn decode(bytes: &[u8]) -> Result<GrayImage, PgmError> {
    if !bytes.starts_with(b"P5") {
        return Err(PgmError::BadMagic);
    }
    let mut pos = 2;
    let mut fields = [0u32; 3];
    for field in &mut fields {
        // Whitespace and comments before each header number.
        loop {
            match bytes.get(pos) {
                Some(b) if b.is_ascii_whitespace() => pos += 1,
                Some(b'#') => {
                    while bytes.get(pos).is_some_and(|&b| b != b'\n') {
                        pos += 1;
                    }
                }
                Some(_) => break,
                None => return Err(PgmError::BadHeader),
            }
        }
        let start = pos;
        while bytes.get(pos).is_some_and(u8::is_ascii_digit) {
            pos += 1;
        }
        let digits = std::str::from_utf8(&bytes[start..pos]).map_err(|_| PgmError::BadHeader)?;
        *field = digits.parse().map_err(|_| PgmError::BadHeader)?;
    }
    // Exactly one whitespace byte separates maxval from the raster.
    if !bytes.get(pos).is_some_and(u8::is_ascii_whitespace) {
        return Err(PgmError::BadHeader);
    }
    pos += 1;
    let [width, height, maxval] = fields;
    if maxval != 255 {
        return Err(PgmError::UnsupportedMaxval(maxval));
    }
    let expected = width as usize * height as usize;
    let data = &bytes[pos..];
    if data.len() != expected {
        return Err(PgmError::Truncated {
            expected,
            found: data.len(),
        });
    }
    GrayImage::new(width as usize, height as usize, data.to_vec()).map_err(|_| PgmError::BadHeader)
}
