//! Zone grid over a drawing and per-module zone masks used for culling.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::geometry::{Point, Rect};

pub const MAX_ZONE_CELLS: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZoneGrid {
    pub origin: Point,
    pub cell_w: f64,
    pub cell_h: f64,
    pub nx: u32,
    pub ny: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ZoneError {
    #[error("zone grid needs positive finite cell sizes and counts with nx*ny <= 4096")]
    InvalidGrid,
    #[error("zone mask length {found} does not match grid size {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("malformed zone mask encoding")]
    Malformed,
}

impl ZoneGrid {
    /// Even `nx × ny` subdivision of `extent`.
    pub fn over(extent: Rect, nx: u32, ny: u32) -> ZoneGrid {
        ZoneGrid {
            origin: extent.min,
            cell_w: extent.width() / nx as f64,
            cell_h: extent.height() / ny as f64,
            nx,
            ny,
        }
    }

    pub fn validate(&self) -> Result<(), ZoneError> {
        let ok = self.origin.is_finite()
            && self.cell_w.is_finite()
            && self.cell_h.is_finite()
            && self.cell_w > 0.0
            && self.cell_h > 0.0
            && self.nx > 0
            && self.ny > 0
            && (self.nx as usize) * (self.ny as usize) <= MAX_ZONE_CELLS;
        if ok {
            Ok(())
        } else {
            Err(ZoneError::InvalidGrid)
        }
    }

    pub fn cell_count(&self) -> usize {
        self.nx as usize * self.ny as usize
    }

    fn x_at(&self, i: u32) -> f64 {
        self.origin.x + i as f64 * self.cell_w
    }

    fn y_at(&self, j: u32) -> f64 {
        self.origin.y + j as f64 * self.cell_h
    }

    /// Closed rectangle of cell `(i, j)`. Neighbouring cells share bit-identical edges.
    pub fn cell_rect(&self, i: u32, j: u32) -> Rect {
        Rect::new(
            Point::new(self.x_at(i), self.y_at(j)),
            Point::new(self.x_at(i + 1), self.y_at(j + 1)),
        )
    }

    /// Union of all cells.
    pub fn bounds(&self) -> Rect {
        Rect::new(self.origin, Point::new(self.x_at(self.nx), self.y_at(self.ny)))
    }

    pub fn index(&self, i: u32, j: u32) -> usize {
        j as usize * self.nx as usize + i as usize
    }
}

/// Row-major bit set over the cells of a [`ZoneGrid`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZoneMask {
    words: Vec<u64>,
    len: usize,
}

impl ZoneMask {
    pub fn empty(len: usize) -> ZoneMask {
        ZoneMask {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn set(&mut self, idx: usize) {
        assert!(idx < self.len, "zone index out of range");
        self.words[idx / 64] |= 1 << (idx % 64);
    }

    pub fn get(&self, idx: usize) -> bool {
        idx < self.len && self.words[idx / 64] & (1 << (idx % 64)) != 0
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn intersects(&self, other: &ZoneMask) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn iter_set(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|i| self.get(*i))
    }

    /// Lowercase hex of the packed bytes, cell 0 in the low bit of the first byte.
    pub fn to_hex(&self) -> String {
        const HEX: &[u8; 16] = b"0123456789abcdef";
        let nbytes = self.len.div_ceil(8);
        let mut s = String::with_capacity(nbytes * 2);
        for b in 0..nbytes {
            let byte = (self.words[b / 8] >> ((b % 8) * 8)) as u8;
            s.push(HEX[(byte >> 4) as usize] as char);
            s.push(HEX[(byte & 0xf) as usize] as char);
        }
        s
    }

    pub fn from_hex(s: &str, len: usize) -> Result<ZoneMask, ZoneError> {
        let nbytes = len.div_ceil(8);
        if s.len() != nbytes * 2 {
            return Err(ZoneError::LengthMismatch {
                expected: nbytes * 2,
                found: s.len(),
            });
        }
        let mut mask = ZoneMask::empty(len);
        let digits = s.as_bytes();
        for b in 0..nbytes {
            let hi = hex_digit(digits[2 * b])?;
            let lo = hex_digit(digits[2 * b + 1])?;
            let byte = (hi << 4 | lo) as u64;
            mask.words[b / 8] |= byte << ((b % 8) * 8);
        }
        // stray bits past `len` would break equality
        if (len..nbytes * 8).any(|i| mask.words[i / 64] & (1 << (i % 64)) != 0) {
            return Err(ZoneError::Malformed);
        }
        Ok(mask)
    }
}

fn hex_digit(c: u8) -> Result<u8, ZoneError> {
    match c {
        b'0'..=b'9' => Ok(c - b'0'),
        b'a'..=b'f' => Ok(c - b'a' + 10),
        _ => Err(ZoneError::Malformed),
    }
}

/// Cells whose closed rectangle intersects `bbox`.
pub fn compute_zone_mask(bbox: &Rect, grid: &ZoneGrid) -> ZoneMask {
    let mut mask = ZoneMask::empty(grid.cell_count());
    if !bbox.intersects(&grid.bounds()) {
        return mask;
    }
    let (i0, i1) = candidate_range(bbox.min.x, bbox.max.x, grid.origin.x, grid.cell_w, grid.nx);
    let (j0, j1) = candidate_range(bbox.min.y, bbox.max.y, grid.origin.y, grid.cell_h, grid.ny);
    for j in j0..=j1 {
        for i in i0..=i1 {
            if grid.cell_rect(i, j).intersects(bbox) {
                mask.set(grid.index(i, j));
            }
        }
    }
    mask
}

// Index range guessed by division, widened by one cell each way; the exact
// closed-rectangle test above decides membership.
fn candidate_range(lo: f64, hi: f64, origin: f64, cell: f64, n: u32) -> (u32, u32) {
    let clamp = |v: f64| -> u32 {
        if v <= 0.0 {
            0
        } else if v >= (n - 1) as f64 {
            n - 1
        } else {
            v as u32
        }
    };
    let a = clamp(libm::floor((lo - origin) / cell) - 1.0);
    let b = clamp(libm::floor((hi - origin) / cell) + 1.0);
    (a, b)
}
