use proptest::prelude::*;
use ringcode_core::{
    chi, chi_simplex_fast, count_psi, count_psi_joint, count_psi_pair, psi, BinaryVector,
    JointCase, RingElement, RingVector, SimplexRegion, SimplicialComplex,
};

fn vectors(m: usize) -> Vec<BinaryVector> {
    BinaryVector::all(m).unwrap().collect()
}

fn ring_vector(m: usize, alpha: u32, beta: u32) -> RingVector {
    RingVector::new(BinaryVector::new(m, alpha).unwrap(), BinaryVector::new(m, beta).unwrap()).unwrap()
}

fn hamming(a: &[bool], b: &[bool]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

#[test]
fn chi_psi_identity_exhaustive() {
    for m in 1..=6 {
        for subset in vectors(m) {
            let simplex = SimplicialComplex::simplex(subset);
            let members = simplex.members();
            for alpha in vectors(m) {
                let direct = chi(&alpha, members.iter().copied());
                let expected = if psi(&alpha, &subset) { 1i64 << subset.weight() } else { 0 };
                assert_eq!(direct, expected, "m={m} M={subset} α={alpha}");
                assert_eq!(chi_simplex_fast(&alpha, &subset), direct);
                assert_eq!(SimplexRegion::simplex(subset).chi(&alpha), direct);
            }
        }
    }
}

#[test]
fn complement_identity_exhaustive() {
    for m in 1..=5 {
        for subset in vectors(m) {
            let region = SimplexRegion::complement(subset);
            let members: Vec<_> = region.members().collect();
            assert_eq!(members.len() as u64, (1u64 << m) - (1u64 << subset.weight()));
            for alpha in vectors(m) {
                let direct = chi(&alpha, members.iter().copied());
                let delta = if alpha.is_zero() { 1i64 << m } else { 0 };
                assert_eq!(direct, delta - chi_simplex_fast(&alpha, &subset), "m={m} M={subset} α={alpha}");
                assert_eq!(region.chi(&alpha), direct);
            }
        }
    }
}

#[test]
fn counting_formulas_exhaustive() {
    for m in 1..=5 {
        let all = vectors(m);
        for first in &all {
            for target in [false, true] {
                let direct = all.iter().filter(|v| psi(v, first) == target).count() as u64;
                assert_eq!(count_psi(m, first, target), direct, "m={m} M={first} target={target}");
            }
            for second in &all {
                let direct = all.iter().filter(|v| !psi(v, first) && !psi(v, second)).count() as u64;
                assert_eq!(count_psi_pair(m, first, second), direct, "m={m} M={first} N={second}");
            }
            for case in JointCase::ALL {
                let mut direct = 0u64;
                for v in all.iter().filter(|v| !v.is_zero()) {
                    for w in all.iter().filter(|w| !w.is_zero() && *w != v) {
                        let sum = v.xor(w).unwrap();
                        if psi(w, first) == case.psi_w && psi(&sum, first) == case.psi_sum {
                            direct += 1;
                        }
                    }
                }
                assert_eq!(count_psi_joint(m, first, case), direct, "m={m} M={first} {case:?}");
            }
        }
    }
}

#[test]
fn gray_map_examples() {
    let x = ring_vector(2, 0b10, 0b11);
    assert_eq!(x.elements(), vec![RingElement::C, RingElement::B]);
    assert_eq!(x.gray_map(), vec![true, true, true, false]);
    assert_eq!(x.lee_weight(), 3);
    assert_eq!(ring_vector(4, 0b0101, 0b0011).lee_weight(), 4);
}

fn antichain(m: usize, raw: Vec<u32>) -> Vec<BinaryVector> {
    let full = (1u32 << m) - 1;
    let mut faces: Vec<u32> = raw.into_iter().map(|b| b & full).collect();
    faces.sort_unstable();
    faces.dedup();
    let kept: Vec<u32> = faces
        .iter()
        .copied()
        .filter(|&f| !faces.iter().any(|&g| g != f && f & !g == 0))
        .collect();
    kept.into_iter().map(|b| BinaryVector::new(m, b).unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn gray_isometry(m in 1usize..=6, a in any::<u32>(), b in any::<u32>(), c in any::<u32>(), d in any::<u32>()) {
        let full = (1u32 << m) - 1;
        let x = ring_vector(m, a & full, b & full);
        let y = ring_vector(m, c & full, d & full);
        let dist = x.lee_distance(&y).unwrap();
        prop_assert_eq!(dist, hamming(&x.gray_map(), &y.gray_map()));
        prop_assert_eq!(dist, y.lee_distance(&x).unwrap());
        prop_assert_eq!(x.lee_weight(), x.gray_map().iter().filter(|&&b| b).count());
        prop_assert_eq!(dist == 0, x == y);
    }

    #[test]
    fn dot_is_sum_of_coordinate_products(m in 1usize..=6, a in any::<u32>(), b in any::<u32>(), c in any::<u32>(), d in any::<u32>()) {
        let full = (1u32 << m) - 1;
        let x = ring_vector(m, a & full, b & full);
        let y = ring_vector(m, c & full, d & full);
        let walked = x
            .elements()
            .into_iter()
            .zip(y.elements())
            .fold(RingElement::Zero, |acc, (p, q)| acc + p * q);
        prop_assert_eq!(x.dot(&y).unwrap(), walked);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn inclusion_exclusion_on_random_antichains(
        m in 1usize..=6,
        raw in proptest::collection::vec(any::<u32>(), 1..5),
        y in proptest::collection::vec(-3i64..=3, 6),
    ) {
        let faces = antichain(m, raw);
        let complex = SimplicialComplex::from_faces(m, &faces).unwrap();
        let members = complex.members();
        let direct: Vec<BinaryVector> = vectors(m)
            .into_iter()
            .filter(|v| faces.iter().any(|f| f.covers(v).unwrap()))
            .collect();
        prop_assert_eq!(&members, &direct);
        for v in &members {
            prop_assert!(complex.contains(v));
        }
        prop_assert_eq!(complex.size_inclusion_exclusion(), members.len() as u64);
        let point = &y[..m];
        let by_sum: i64 = members
            .iter()
            .map(|v| v.support().iter().map(|&i| point[i - 1]).product::<i64>())
            .sum();
        prop_assert_eq!(complex.generating_function_eval(point), by_sum);
    }
}
