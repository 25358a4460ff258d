//! Binary field snapshots.
//!
//! Layout (all little-endian): magic `MSMF`, version `u32`, points per axis
//! `u32`, period `f64`, field count `u32`, then `count` fields of `n × n`
//! complex samples in row-major order, each sample stored as `(re, im)` `f64`.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::{ComplexField, Grid, C64};
use crate::error::{Error, Result};

pub const MAGIC: [u8; 4] = *b"MSMF";
pub const VERSION: u32 = 1;

pub fn write_fields<W: Write>(mut out: W, fields: &[ComplexField]) -> Result<()> {
    let grid = match fields.first() {
        Some(f) => f.grid(),
        None => return Err(Error::Snapshot("no fields to write".into())),
    };
    for f in fields {
        grid.ensure_same(&f.grid())?;
    }
    out.write_all(&MAGIC)?;
    out.write_all(&VERSION.to_le_bytes())?;
    out.write_all(&(grid.n() as u32).to_le_bytes())?;
    out.write_all(&grid.length().to_le_bytes())?;
    out.write_all(&(fields.len() as u32).to_le_bytes())?;
    for f in fields {
        for c in f.samples() {
            out.write_all(&c.re.to_le_bytes())?;
            out.write_all(&c.im.to_le_bytes())?;
        }
    }
    out.flush()?;
    Ok(())
}

fn read_array<const N: usize, R: Read>(input: &mut R) -> Result<[u8; N]> {
    let mut buf = [0u8; N];
    input
        .read_exact(&mut buf)
        .map_err(|e| Error::Snapshot(format!("truncated snapshot: {e}")))?;
    Ok(buf)
}

pub fn read_fields<R: Read>(mut input: R) -> Result<Vec<ComplexField>> {
    let magic: [u8; 4] = read_array(&mut input)?;
    if magic != MAGIC {
        return Err(Error::Snapshot(format!("bad magic {magic:?}")));
    }
    let version = u32::from_le_bytes(read_array(&mut input)?);
    if version != VERSION {
        return Err(Error::Snapshot(format!("unsupported version {version}")));
    }
    let n = u32::from_le_bytes(read_array(&mut input)?) as usize;
    let length = f64::from_le_bytes(read_array(&mut input)?);
    let count = u32::from_le_bytes(read_array(&mut input)?) as usize;
    let grid = Grid::new(n, length)?;
    let mut fields = Vec::with_capacity(count);
    for _ in 0..count {
        let mut samples = Vec::with_capacity(grid.len());
        for _ in 0..grid.len() {
            let re = f64::from_le_bytes(read_array(&mut input)?);
            let im = f64::from_le_bytes(read_array(&mut input)?);
            samples.push(C64::new(re, im));
        }
        fields.push(ComplexField::from_samples(grid, samples)?);
    }
    let mut rest = Vec::new();
    input.read_to_end(&mut rest)?;
    if !rest.is_empty() {
        return Err(Error::Snapshot(format!("{} trailing bytes", rest.len())));
    }
    Ok(fields)
}

pub fn save(path: impl AsRef<Path>, fields: &[ComplexField]) -> Result<()> {
    write_fields(BufWriter::new(File::create(path)?), fields)
}

pub fn load(path: impl AsRef<Path>) -> Result<Vec<ComplexField>> {
    read_fields(BufReader::new(File::open(path)?))
}
