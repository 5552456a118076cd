//! GZKF snapshot files.
//!
//! Layout (little-endian): magic `b"GZKF"`, `u32` version, `f64` L_x,
//! `u32` N_x, `u32` N_y, `f64` timestamp, then `N_x * N_y` `f64` values in
//! row-major order (x outer, y inner).

use std::fs;
use std::io::Write;
use std::path::Path;

use super::{Field, Grid, SpectralError};

pub const MAGIC: &[u8; 4] = b"GZKF";
pub const VERSION: u32 = 1;
const HEADER_LEN: usize = 4 + 4 + 8 + 4 + 4 + 8;

#[derive(Clone, Debug, PartialEq)]
pub struct Snapshot {
    pub half_length_x: f64,
    pub nx: u32,
    pub ny: u32,
    pub time: f64,
    pub values: Vec<f64>,
}

impl Snapshot {
    pub fn from_field(field: &Field, time: f64) -> Self {
        let g = field.grid();
        Self {
            half_length_x: g.half_length_x(),
            nx: g.nx() as u32,
            ny: g.ny() as u32,
            time,
            values: field.values().into_owned(),
        }
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(HEADER_LEN + 8 * self.values.len());
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&VERSION.to_le_bytes());
        out.extend_from_slice(&self.half_length_x.to_le_bytes());
        out.extend_from_slice(&self.nx.to_le_bytes());
        out.extend_from_slice(&self.ny.to_le_bytes());
        out.extend_from_slice(&self.time.to_le_bytes());
        for v in &self.values {
            out.extend_from_slice(&v.to_le_bytes());
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, SpectralError> {
        let bad = |m: &str| SpectralError::BadSnapshot(m.to_string());
        if bytes.len() < HEADER_LEN {
            return Err(bad("truncated header"));
        }
        if &bytes[0..4] != MAGIC {
            return Err(bad("bad magic"));
        }
        let u32_at = |o: usize| u32::from_le_bytes(bytes[o..o + 4].try_into().unwrap());
        let f64_at = |o: usize| f64::from_le_bytes(bytes[o..o + 8].try_into().unwrap());
        let version = u32_at(4);
        if version != VERSION {
            return Err(SpectralError::BadSnapshot(format!("unsupported version {version}")));
        }
        let half_length_x = f64_at(8);
        let nx = u32_at(16);
        let ny = u32_at(20);
        let time = f64_at(24);
        let n = nx as usize * ny as usize;
        if bytes.len() != HEADER_LEN + 8 * n {
            return Err(bad("payload length does not match header"));
        }
        let values = bytes[HEADER_LEN..]
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
            .collect();
        Ok(Self {
            half_length_x,
            nx,
            ny,
            time,
            values,
        })
    }

    /// Interprets the payload on the unit-period cylinder grid.
    pub fn cylinder_field(&self) -> Result<Field, SpectralError> {
        let grid = Grid::cylinder(self.half_length_x, self.nx as usize, self.ny as usize)?;
        Field::from_values(&grid, self.values.clone())
    }
}

/// Writes `bytes` to `path` through a temporary sibling and a rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    if let Some(d) = dir {
        fs::create_dir_all(d)?;
    }
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let tmp = path.with_file_name(format!(".{name}.tmp"));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)
}

pub fn write_snapshot(path: &Path, field: &Field, time: f64) -> Result<(), SpectralError> {
    write_atomic(path, &Snapshot::from_field(field, time).to_bytes())?;
    Ok(())
}

pub fn read_snapshot(path: &Path) -> Result<Snapshot, SpectralError> {
    Snapshot::from_bytes(&fs::read(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_layout() {
        let g = Grid::cylinder(2.5, 2, 2).unwrap();
        let f = Field::from_values(&g, vec![1.0, -0.0, f64::MIN_POSITIVE, 3.5]).unwrap();
        let bytes = Snapshot::from_field(&f, 0.25).to_bytes();
        assert_eq!(&bytes[..4], b"GZKF");
        assert_eq!(&bytes[4..8], &1u32.to_le_bytes());
        assert_eq!(&bytes[8..16], &2.5f64.to_le_bytes());
        assert_eq!(&bytes[16..20], &2u32.to_le_bytes());
        assert_eq!(&bytes[20..24], &2u32.to_le_bytes());
        assert_eq!(&bytes[24..32], &0.25f64.to_le_bytes());
        assert_eq!(bytes.len(), 32 + 4 * 8);
        let back = Snapshot::from_bytes(&bytes).unwrap();
        assert_eq!(back.to_bytes(), bytes);
    }

    #[test]
    fn rejects_corruption() {
        let g = Grid::cylinder(1.0, 2, 2).unwrap();
        let mut bytes = Snapshot::from_field(&Field::zeros(&g), 0.0).to_bytes();
        assert!(Snapshot::from_bytes(&bytes[..10]).is_err());
        bytes.pop();
        assert!(Snapshot::from_bytes(&bytes).is_err());
        bytes.push(0);
        bytes[0] = b'X';
        assert!(Snapshot::from_bytes(&bytes).is_err());
    }
}
