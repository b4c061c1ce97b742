use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Per-coordinate distance weights `D_s` indexed by symbol pairs in `[-s, s]`.
///
/// Entry `(x, y)` is 0 when `x == y`, 1 when `1 <= |x - y| <= s` and 2 when
/// `s + 1 <= |x - y| <= 2s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DsMatrix {
    s: u32,
    entries: Vec<Vec<u8>>,
}

/// Weight of a single coordinate difference, `None` when it exceeds `2s`.
pub fn symbol_weight(diff: i64, s: u32) -> Option<u8> {
    let d = diff.unsigned_abs();
    let s = s as u64;
    if d == 0 {
        Some(0)
    } else if d <= s {
        Some(1)
    } else if d <= 2 * s {
        Some(2)
    } else {
        None
    }
}

pub fn ds_matrix(s: u32) -> Result<DsMatrix> {
    if s == 0 {
        return Err(Error::InvalidParameter("s must be at least 1".into()));
    }
    let m = 2 * s as i64 + 1;
    let entries = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| symbol_weight(i - j, s).expect("symbols differ by at most 2s"))
                .collect()
        })
        .collect();
    Ok(DsMatrix { s, entries })
}

impl DsMatrix {
    pub fn s(&self) -> u32 {
        self.s
    }

    /// Matrix side, `2s + 1`.
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// Entry for symbols `x, y` in `[-s, s]`.
    pub fn get(&self, x: i64, y: i64) -> u8 {
        let s = self.s as i64;
        assert!(x.abs() <= s && y.abs() <= s, "symbol outside [-s, s]");
        self.entries[(x + s) as usize][(y + s) as usize]
    }

    /// Entry by row/column index (`index = symbol + s`).
    pub fn at(&self, i: usize, j: usize) -> u8 {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.entries
    }
}
