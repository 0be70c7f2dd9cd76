//! Self-describing binary checkpoint of a [`GridState`].
//!
//! Layout (little-endian): 8-byte magic `TORDGRID`, u32 version, u64 nx,
//! u64 ny, f64 h, f64 x0, f64 y0, f64 time, then nx·ny (re, im) f64 pairs
//! in row-major order.  Round-trips are bit-exact.

use super::grid::GridState;
use super::DynamicsError;
use num_complex::Complex64;
use std::io::{Read, Write};

const MAGIC: &[u8; 8] = b"TORDGRID";
const VERSION: u32 = 1;

pub fn write_checkpoint<W: Write>(state: &GridState, mut w: W) -> Result<(), DynamicsError> {
    w.write_all(MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    w.write_all(&(state.nx as u64).to_le_bytes())?;
    w.write_all(&(state.ny as u64).to_le_bytes())?;
    for v in [state.h, state.x0, state.y0, state.time] {
        w.write_all(&v.to_le_bytes())?;
    }
    let mut buf = Vec::with_capacity(state.field.len() * 16);
    for c in &state.field {
        buf.extend_from_slice(&c.re.to_le_bytes());
        buf.extend_from_slice(&c.im.to_le_bytes());
    }
    w.write_all(&buf)?;
    Ok(())
}

pub fn read_checkpoint<R: Read>(mut r: R) -> Result<GridState, DynamicsError> {
    let mut magic = [0u8; 8];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(DynamicsError::BadCheckpoint("wrong magic bytes".into()));
    }
    let mut u32b = [0u8; 4];
    r.read_exact(&mut u32b)?;
    let version = u32::from_le_bytes(u32b);
    if version != VERSION {
        return Err(DynamicsError::BadCheckpoint(format!(
            "unsupported version {version}"
        )));
    }
    let mut u64b = [0u8; 8];
    r.read_exact(&mut u64b)?;
    let nx = u64::from_le_bytes(u64b) as usize;
    r.read_exact(&mut u64b)?;
    let ny = u64::from_le_bytes(u64b) as usize;
    if nx == 0 || ny == 0 || nx.saturating_mul(ny) > (1 << 32) {
        return Err(DynamicsError::BadCheckpoint(format!(
            "implausible dimensions {nx} x {ny}"
        )));
    }
    let mut f64b = [0u8; 8];
    let mut scalars = [0.0f64; 4];
    for s in &mut scalars {
        r.read_exact(&mut f64b)?;
        *s = f64::from_le_bytes(f64b);
    }
    let mut field = Vec::with_capacity(nx * ny);
    let mut buf = vec![0u8; nx * ny * 16];
    r.read_exact(&mut buf)?;
    for chunk in buf.chunks_exact(16) {
        let re = f64::from_le_bytes(chunk[..8].try_into().expect("8 bytes"));
        let im = f64::from_le_bytes(chunk[8..].try_into().expect("8 bytes"));
        field.push(Complex64::new(re, im));
    }
    Ok(GridState {
        nx,
        ny,
        h: scalars[0],
        x0: scalars[1],
        y0: scalars[2],
        time: scalars[3],
        field,
        ix0: nx / 2,
        iy0: ny / 2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::gaussian_packet;

    #[test]
    fn round_trip_is_bit_exact() {
        let mut g = GridState::centered(48, 32, 0.37).unwrap();
        gaussian_packet(&mut g, (1.0, -0.5), (1.1, 0.9), (2.2, -3.3));
        g.time = 1.2345678901234567;
        let mut buf = Vec::new();
        write_checkpoint(&g, &mut buf).unwrap();
        let back = read_checkpoint(buf.as_slice()).unwrap();
        assert_eq!(back.nx, g.nx);
        assert_eq!(back.ny, g.ny);
        assert_eq!(back.h.to_bits(), g.h.to_bits());
        assert_eq!(back.time.to_bits(), g.time.to_bits());
        for (a, b) in back.field.iter().zip(&g.field) {
            assert_eq!(a.re.to_bits(), b.re.to_bits());
            assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
        // and the serialized form itself is reproducible
        let mut buf2 = Vec::new();
        write_checkpoint(&back, &mut buf2).unwrap();
        assert_eq!(buf, buf2);
    }

    #[test]
    fn rejects_corrupt_headers() {
        let mut g = GridState::centered(16, 16, 0.5).unwrap();
        gaussian_packet(&mut g, (0.0, 0.0), (1.0, 1.0), (1.0, 1.0));
        let mut buf = Vec::new();
        write_checkpoint(&g, &mut buf).unwrap();
        let mut bad = buf.clone();
        bad[0] = b'X';
        assert!(read_checkpoint(bad.as_slice()).is_err());
        let mut bad = buf.clone();
        bad[8] = 9; // version
        assert!(read_checkpoint(bad.as_slice()).is_err());
        let short = &buf[..40];
        assert!(read_checkpoint(short).is_err());
    }
}
