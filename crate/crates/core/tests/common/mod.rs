#![allow(dead_code)]

use ringcode_core::{BinaryVector, ConstructionType, DefiningSetSpec, Side};

/// Every non-degenerate spec for one `m`, all types and both sides.
pub fn all_specs(m: usize) -> Vec<DefiningSetSpec> {
    let mut out = Vec::new();
    for kind in ConstructionType::ALL {
        for side in Side::ALL {
            for a in 0..(1u32 << m) {
                for b in 0..(1u32 << m) {
                    let first = BinaryVector::new(m, a).unwrap();
                    let second = BinaryVector::new(m, b).unwrap();
                    if let Ok(s) = DefiningSetSpec::new(kind, first, second, side) {
                        out.push(s);
                    }
                }
            }
        }
    }
    out
}

pub fn spec(m: usize, kind: ConstructionType, first: &[usize], second: &[usize], side: Side) -> DefiningSetSpec {
    DefiningSetSpec::from_coords(m, kind, first, second, side).unwrap()
}
