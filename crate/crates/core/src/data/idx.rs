//! IDX container (the MNIST distribution format), big-endian throughout.
//!
//! Images: magic `0x00000803`, u32 count, u32 rows, u32 cols, then
//! `count·rows·cols` unsigned bytes. Labels: magic `0x00000801`, u32 count,
//! then `count` bytes.

use std::io::Read;
use std::path::Path;

use flate2::read::GzDecoder;

use crate::error::{Error, Result};

pub const IMAGES_MAGIC: u32 = 0x0000_0803;
pub const LABELS_MAGIC: u32 = 0x0000_0801;

/// Decoded image file. Pixels are scaled to `[0, 1]` by `1/255`.
#[derive(Debug, Clone, PartialEq)]
pub struct IdxImages {
    pub rows: usize,
    pub cols: usize,
    pub images: Vec<Vec<f64>>,
}

fn read_u32(bytes: &[u8], offset: usize) -> Result<u32> {
    bytes
        .get(offset..offset + 4)
        .map(|b| u32::from_be_bytes([b[0], b[1], b[2], b[3]]))
        .ok_or(Error::Truncated { expected: offset + 4, actual: bytes.len() })
}

fn check_magic(bytes: &[u8], expected: u32) -> Result<()> {
    let found = read_u32(bytes, 0)?;
    if found != expected {
        return Err(Error::BadMagic { expected, found });
    }
    Ok(())
}

fn payload<'a>(bytes: &'a [u8], header: usize, counts: &[u32]) -> Result<&'a [u8]> {
    let len = counts
        .iter()
        .try_fold(1usize, |acc, &c| acc.checked_mul(c as usize))
        .and_then(|n| n.checked_add(header))
        .ok_or_else(|| Error::InvalidArgument("IDX dimensions overflow".into()))?;
    if bytes.len() < len {
        return Err(Error::Truncated { expected: len, actual: bytes.len() });
    }
    Ok(&bytes[header..len])
}

pub fn parse_idx_images(bytes: &[u8]) -> Result<IdxImages> {
    check_magic(bytes, IMAGES_MAGIC)?;
    let n = read_u32(bytes, 4)?;
    let rows = read_u32(bytes, 8)?;
    let cols = read_u32(bytes, 12)?;
    let pixels = payload(bytes, 16, &[n, rows, cols])?;
    let d = rows as usize * cols as usize;
    let images = if d == 0 {
        vec![Vec::new(); n as usize]
    } else {
        pixels.chunks_exact(d).map(|img| img.iter().map(|&p| f64::from(p) / 255.0).collect()).collect()
    };
    Ok(IdxImages { rows: rows as usize, cols: cols as usize, images })
}

pub fn parse_idx_labels(bytes: &[u8]) -> Result<Vec<u8>> {
    check_magic(bytes, LABELS_MAGIC)?;
    let n = read_u32(bytes, 4)?;
    let labels = payload(bytes, 8, &[n])?;
    if let Some(index) = labels.iter().position(|&b| b > 9) {
        return Err(Error::LabelOutOfRange { index, value: labels[index] });
    }
    Ok(labels.to_vec())
}

/// Serializes raw pixel bytes (one `rows·cols` slice per image).
pub fn write_idx_images(images: &[Vec<u8>], rows: usize, cols: usize) -> Result<Vec<u8>> {
    let d = rows * cols;
    if let Some(bad) = images.iter().find(|img| img.len() != d) {
        return Err(Error::DimensionMismatch { expected: d, found: bad.len() });
    }
    let mut out = Vec::with_capacity(16 + images.len() * d);
    for v in [IMAGES_MAGIC, to_u32(images.len())?, to_u32(rows)?, to_u32(cols)?] {
        out.extend_from_slice(&v.to_be_bytes());
    }
    for img in images {
        out.extend_from_slice(img);
    }
    Ok(out)
}

pub fn write_idx_labels(labels: &[u8]) -> Result<Vec<u8>> {
    let mut out = Vec::with_capacity(8 + labels.len());
    out.extend_from_slice(&LABELS_MAGIC.to_be_bytes());
    out.extend_from_slice(&to_u32(labels.len())?.to_be_bytes());
    out.extend_from_slice(labels);
    Ok(out)
}

fn to_u32(n: usize) -> Result<u32> {
    u32::try_from(n).map_err(|_| Error::InvalidArgument(format!("{n} does not fit an IDX u32 field")))
}

/// Reads a file, transparently inflating gzip (`1f 8b`) content.
pub fn read_maybe_gzip(path: &Path) -> Result<Vec<u8>> {
    let raw = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    if raw.starts_with(&[0x1f, 0x8b]) {
        let mut out = Vec::new();
        GzDecoder::new(raw.as_slice()).read_to_end(&mut out).map_err(|e| Error::io(path, e))?;
        Ok(out)
    } else {
        Ok(raw)
    }
}
