use std::collections::{BTreeMap, HashSet};

mod common;

use common::all_specs as specs;
use ringcode_core::{
    distribution_bruteforce, gray_image, materialize, BinaryCode, CodeReport, Limits, RingElement,
    RingVector, Word,
};

/// Block-layout Gray image of a codeword: all `t` bits, then all `s + t`.
fn gray_word(word: &[RingElement]) -> Word {
    let n = word.len();
    let mut bits = vec![false; 2 * n];
    for (j, e) in word.iter().enumerate() {
        let (t, st) = e.gray();
        bits[j] = t;
        bits[n + j] = st;
    }
    Word::from_bools(&bits)
}

fn span(code: &BinaryCode) -> HashSet<Word> {
    let mut out = HashSet::new();
    for mask in 0u64..(1 << code.k()) {
        let mut w = Word::zeros(code.n());
        for (j, row) in code.basis().iter().enumerate() {
            if mask >> j & 1 == 1 {
                w.xor_assign(row);
            }
        }
        out.insert(w);
    }
    out
}

#[test]
fn gray_image_is_the_image_of_every_message() {
    let limits = Limits::default();
    for m in 1..=3 {
        for spec in specs(m) {
            let ods = materialize(&spec).unwrap();
            let images: HashSet<Word> = RingVector::all(m)
                .unwrap()
                .map(|v| gray_word(&ods.encode(&v).unwrap()))
                .collect();
            let code = gray_image(&spec, &limits).unwrap();
            assert_eq!(span(&code), images, "{spec}");
        }
    }
}

#[test]
fn gray_dimension_and_weight_transport() {
    let limits = Limits::default();
    for m in 1..=4 {
        for spec in specs(m) {
            let lee = distribution_bruteforce(&spec, &limits).unwrap();
            let per_codeword = lee.to_per_codeword(lee.kernel_size()).unwrap();
            let code = gray_image(&spec, &limits).unwrap();
            assert_eq!(1u64 << code.k(), per_codeword.total(), "{spec}");
            let hamming: BTreeMap<u64, u64> = code
                .weight_distribution()
                .unwrap()
                .into_iter()
                .map(|(w, f)| (w as u64, f))
                .collect();
            assert_eq!(hamming, per_codeword.entries, "{spec}");
        }
    }
}

#[test]
fn implication_chains_on_generated_codes() {
    let limits = Limits::default();
    let mut div4 = 0;
    let mut ab = 0;
    for m in 1..=4 {
        for spec in specs(m) {
            let report = CodeReport::measure(&gray_image(&spec, &limits).unwrap()).unwrap();
            if report.all_weights_div4 {
                div4 += 1;
                assert!(report.self_orthogonal, "{spec}: div4 without self-orthogonality");
            }
            if report.k <= 14 && report.ashikhmin_barg {
                ab += 1;
                assert_eq!(report.minimal_exhaustive, Some(true), "{spec}: Ashikhmin-Barg without minimality");
            }
            if let Some(d) = report.d {
                assert!(report.griesmer.unwrap().sum <= report.n as u64, "{spec}: Griesmer violated");
                assert_eq!(Some(d), report.wt_min);
            }
            assert_eq!(report.hamming_distribution.values().sum::<u64>(), 1 << report.k);
        }
    }
    assert!(div4 > 0 && ab > 0);
}

#[test]
fn equidistant_codes_are_single_weight() {
    let limits = Limits::default();
    let mut hits = 0;
    for m in 1..=4 {
        for spec in specs(m) {
            let report = CodeReport::measure(&gray_image(&spec, &limits).unwrap()).unwrap();
            if report.equidistant {
                hits += 1;
                assert_eq!(report.num_nonzero_weights, 1);
                let wt = report.wt_min.unwrap() as u64;
                let r = report.replication.expect("replicated simplex shape");
                assert_eq!(wt, r << (report.k - 1), "{spec}");
            }
        }
    }
    assert!(hits > 0);
}
