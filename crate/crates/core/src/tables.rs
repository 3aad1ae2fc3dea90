//! Closed-form Lee weight tables for the ten constructions.
//!
//! Frequencies count messages `v ∈ E^m`, so every table sums to `4^m`.
//! Weights are stored doubled: several rows carry half-integer weights for
//! boundary parameters (`|M| = 0`, say), and those rows always have zero
//! frequency.

use crate::construction::{ConstructionType, DefiningSetSpec, Side};

/// One row of a weight table: `2·weight` and how many messages reach it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub twice_weight: i64,
    pub frequency: i64,
}

#[inline]
fn pow2(e: u32) -> i64 {
    1i64 << e
}

fn row(twice_weight: i64, frequency: i64) -> TableRow {
    TableRow { twice_weight, frequency }
}

/// The raw table for `spec`, in the order the rows are usually listed, with
/// no merging and no zero-frequency filtering.
pub fn closed_form_rows(spec: &DefiningSetSpec) -> Vec<TableRow> {
    let m = spec.m() as u32;
    let p = spec.first().weight() as u32;
    let q = spec.second().weight() as u32;
    let u = (spec.first().bits() | spec.second().bits()).count_ones();

    match spec.side() {
        Side::Left => left_rows(spec.kind(), m, p, q),
        Side::Right => right_rows(spec.kind(), m, p, q, u),
    }
}

fn left_rows(kind: ConstructionType, m: u32, p: u32, q: u32) -> Vec<TableRow> {
    // Shared frequency column of the T2, T4 and T5 tables.
    let complement_freqs = [
        pow2(2 * m - 2 * p) - pow2(m - p + 1) + 1,
        pow2(m - p + 1) - 2,
        pow2(2 * m) + pow2(2 * m - 2 * p) - pow2(2 * m - p + 1),
        pow2(2 * m - p + 1) - pow2(2 * m - 2 * p + 1) - pow2(m + 1) + pow2(m - p + 1),
        pow2(m + 1) - pow2(m - p + 1),
    ];
    let with_complement_freqs = |weights: [i64; 5]| {
        let mut rows: Vec<TableRow> = weights
            .iter()
            .zip(complement_freqs)
            .map(|(&w, f)| row(w, f))
            .collect();
        rows.push(row(0, 1));
        rows
    };

    match kind {
        ConstructionType::T1 => vec![
            row(pow2(p + q + 1), pow2(2 * m - 2 * p) * (pow2(p) - 1).pow(2)),
            row(pow2(p + q), pow2(2 * m - 2 * p + 1) * (pow2(p) - 1)),
            row(0, pow2(2 * m - 2 * p)),
        ],
        ConstructionType::T2 => with_complement_freqs([
            pow2(m + q + 1),
            pow2(m + q),
            pow2(m + q + 1) - pow2(p + q + 1),
            pow2(m + q + 1) - pow2(p + q),
            pow2(m + q) - pow2(p + q),
        ]),
        ConstructionType::T3 => {
            let tail = pow2(m) - pow2(q);
            vec![
                row(pow2(p + 1) * tail, pow2(2 * m) - pow2(2 * m - p + 1) + pow2(2 * m - 2 * p)),
                row(pow2(p) * tail, pow2(2 * m - p + 1) - pow2(2 * m - 2 * p + 1)),
                row(0, pow2(2 * m - 2 * p)),
            ]
        }
        ConstructionType::T4 => {
            let tail = pow2(m) - pow2(q);
            with_complement_freqs([
                pow2(m + 1) * tail,
                pow2(m) * tail,
                2 * (pow2(m) - pow2(p)) * tail,
                (pow2(m + 1) - pow2(p)) * tail,
                (pow2(m) - pow2(p)) * tail,
            ])
        }
        ConstructionType::T5 => with_complement_freqs([
            pow2(2 * m + 1),
            pow2(2 * m),
            pow2(2 * m + 1) - pow2(p + q + 1),
            pow2(2 * m + 1) - pow2(p + q),
            pow2(2 * m) - pow2(p + q),
        ]),
    }
}

fn right_rows(kind: ConstructionType, m: u32, p: u32, q: u32, u: u32) -> Vec<TableRow> {
    let f_full = pow2(m) * (pow2(m) - pow2(m - q));
    let f_mid = pow2(m) * (pow2(m - q) - pow2(m - u));
    let f_top = pow2(m) * (pow2(m - u) - 1);
    let zero = row(0, pow2(m));

    match kind {
        ConstructionType::T1 => vec![
            row(pow2(p + q + 1), f_full),
            row(pow2(p + q), f_mid),
            row(0, pow2(2 * m - u)),
        ],
        ConstructionType::T2 => vec![
            row((pow2(m) - pow2(p)) * pow2(q + 1), f_full),
            row(pow2(m + q), f_top),
            row((pow2(m) - pow2(p)) * pow2(q), f_mid),
            zero,
        ],
        ConstructionType::T3 => vec![
            row(pow2(m + p + 1), f_top),
            row(pow2(p) * (pow2(m + 1) - pow2(q)), f_mid),
            row(pow2(p + 1) * (pow2(m) - pow2(q)), f_full),
            zero,
        ],
        ConstructionType::T4 => vec![
            row((pow2(m) - pow2(p)) * (pow2(m + 1) - pow2(q)), f_mid),
            row(pow2(m + 1) * (pow2(m) - pow2(p)) - pow2(m + q), f_top),
            row(2 * (pow2(m) - pow2(p)) * (pow2(m) - pow2(q)), f_full),
            zero,
        ],
        ConstructionType::T5 => vec![
            row(pow2(2 * m + 1), f_top),
            row(pow2(2 * m + 1) - pow2(p + q), f_mid),
            row(pow2(2 * m + 1) - pow2(p + q + 1), f_full),
            zero,
        ],
    }
}
