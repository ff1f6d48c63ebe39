//! Brute-force count of boxed plane partitions.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::exact::macmahon_pl;

/// Number of `a×b` arrays with entries in `0..=c`, weakly decreasing along
/// rows and columns, by depth-first filling in row-major order.
pub fn count_plane_partitions(a: usize, b: usize, c: u32) -> u64 {
    fn fill(cells: &mut [u32], idx: usize, b: usize, c: u32) -> u64 {
        if idx == cells.len() {
            return 1;
        }
        let (row, col) = (idx / b, idx % b);
        let mut cap = c;
        if col > 0 {
            cap = cap.min(cells[idx - 1]);
        }
        if row > 0 {
            cap = cap.min(cells[idx - b]);
        }
        (0..=cap)
            .map(|v| {
                cells[idx] = v;
                fill(cells, idx + 1, b, c)
            })
            .sum()
    }
    let mut cells = vec![0; a * b];
    fill(&mut cells, 0, b, c)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanePartitionCheck {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub enumerated: u64,
    pub formula: String,
    pub agree: bool,
}

/// Compares the product formula with enumeration for all `a, b, c ≤ max`.
pub fn macmahon_sweep(max: u64) -> Vec<PlanePartitionCheck> {
    let mut out = Vec::new();
    for a in 0..=max {
        for b in 0..=max {
            for c in 0..=max {
                let enumerated = count_plane_partitions(a as usize, b as usize, c as u32);
                let formula = macmahon_pl(a, b, c);
                let agree = formula.as_ref().is_ok_and(|f| *f == BigUint::from(enumerated));
                out.push(PlanePartitionCheck {
                    a,
                    b,
                    c,
                    enumerated,
                    formula: formula.map_or_else(|e| e.to_string(), |f| f.to_string()),
                    agree,
                });
            }
        }
    }
    out
}
