//! Binary PGM (P5) mask files: 8-bit, 0 = background, 255 = foreground.
//!
//! The writer emits a canonical header so that write -> read -> write is
//! byte-identical. The reader accepts any conforming P5 file and thresholds
//! pixel values at >127.

use super::RasterMask;
use crate::error::{Error, Result};
use std::fs;
use std::path::Path;

pub fn write_pgm_bytes(mask: &RasterMask) -> Vec<u8> {
    let header = format!("P5\n{} {}\n255\n", mask.width(), mask.height());
    let mut out = Vec::with_capacity(header.len() + mask.bits().len());
    out.extend_from_slice(header.as_bytes());
    out.extend(mask.bits().iter().map(|&b| if b != 0 { 255u8 } else { 0u8 }));
    out
}

pub fn write_pgm(mask: &RasterMask, path: &Path) -> Result<()> {
    fs::write(path, write_pgm_bytes(mask))?;
    Ok(())
}

pub fn read_pgm(path: &Path) -> Result<RasterMask> {
    let bytes = fs::read(path)?;
    read_pgm_bytes(&bytes).map_err(|e| match e {
        Error::PgmParse(msg) => Error::PgmParse(format!("{}: {}", path.display(), msg)),
        other => other,
    })
}

pub fn read_pgm_bytes(bytes: &[u8]) -> Result<RasterMask> {
    let mut cursor = 0usize;
    let magic = next_token(bytes, &mut cursor)
        .ok_or_else(|| Error::PgmParse("missing magic number".into()))?;
    if magic != b"P5" {
        return Err(Error::PgmParse(format!(
            "unsupported magic {:?} (expected P5)",
            String::from_utf8_lossy(magic)
        )));
    }
    let width: u32 = parse_number(bytes, &mut cursor, "width")?;
    let height: u32 = parse_number(bytes, &mut cursor, "height")?;
    let maxval: u32 = parse_number(bytes, &mut cursor, "maxval")?;
    if maxval == 0 || maxval > 255 {
        return Err(Error::PgmParse(format!("maxval {maxval} outside 1..=255")));
    }
    // Exactly one whitespace byte separates the header from the raster.
    if cursor >= bytes.len() || !bytes[cursor].is_ascii_whitespace() {
        return Err(Error::PgmParse("missing separator before raster data".into()));
    }
    cursor += 1;
    let expected = width as usize * height as usize;
    let data = &bytes[cursor..];
    if data.len() < expected {
        return Err(Error::PgmParse(format!(
            "raster truncated: {} bytes, expected {}",
            data.len(),
            expected
        )));
    }
    RasterMask::from_gray(width, height, &data[..expected])
}

/// Next whitespace-delimited token, skipping `#` comment lines.
fn next_token<'a>(bytes: &'a [u8], cursor: &mut usize) -> Option<&'a [u8]> {
    loop {
        while *cursor < bytes.len() && bytes[*cursor].is_ascii_whitespace() {
            *cursor += 1;
        }
        if *cursor < bytes.len() && bytes[*cursor] == b'#' {
            while *cursor < bytes.len() && bytes[*cursor] != b'\n' {
                *cursor += 1;
            }
            continue;
        }
        break;
    }
    if *cursor >= bytes.len() {
        return None;
    }
    let start = *cursor;
    while *cursor < bytes.len() && !bytes[*cursor].is_ascii_whitespace() {
        *cursor += 1;
    }
    Some(&bytes[start..*cursor])
}

fn parse_number(bytes: &[u8], cursor: &mut usize, what: &str) -> Result<u32> {
    let token = next_token(bytes, cursor)
        .ok_or_else(|| Error::PgmParse(format!("missing {what}")))?;
    std::str::from_utf8(token)
        .ok()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| {
            Error::PgmParse(format!(
                "bad {what}: {:?}",
                String::from_utf8_lossy(token)
            ))
        })
}
