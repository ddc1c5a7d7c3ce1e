mod common;

use common::{oracle_rn, random_algebra};
use monoext::centre::degree_semigroup_generators;
use monoext::{compose, is_subpath, AlgebraFile, Limits, MonomialAlgebra, Path, ResolutionBasis};
use proptest::prelude::*;

fn members(alg: &MonomialAlgebra, top: usize) -> Vec<Vec<Path>> {
    let mut basis = ResolutionBasis::new(alg, Limits::default());
    (0..=top).map(|n| basis.members(n).unwrap().to_vec()).collect()
}

fn power(alg: &MonomialAlgebra, p: &Path, k: usize) -> Option<Path> {
    let mut acc = p.clone();
    for _ in 1..k {
        acc = alg.multiply_basis(&acc, p)?;
    }
    Some(acc)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn left_and_right_sequences_agree(seed in 0u64..10_000) {
        let (_, alg) = random_algebra(seed);
        let ms = members(&alg, 4);
        for n in 2..=4 {
            prop_assert_eq!(&oracle_rn(&alg, n, false), &ms[n]);
            prop_assert_eq!(&oracle_rn(&alg, n, true), &ms[n]);
            for p in &ms[n] {
                prop_assert_eq!(alg.resolution_degree_right(p), Some(n));
            }
        }
    }

    #[test]
    fn products_are_associative(seed in 0u64..10_000) {
        let (_, alg) = random_algebra(seed);
        let ms = members(&alg, 4);
        for a in 1..=2 {
            for b in 1..=2 {
                for c in 1..=2 {
                    for x in &ms[a] {
                        for y in &ms[b] {
                            for z in &ms[c] {
                                let left = alg.multiply_basis(x, y).and_then(|xy| alg.multiply_basis(&xy, z));
                                let right = alg.multiply_basis(y, z).and_then(|yz| alg.multiply_basis(x, &yz));
                                prop_assert_eq!(left, right);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn products_factor_uniquely(seed in 0u64..10_000) {
        let (_, alg) = random_algebra(seed);
        let ms = members(&alg, 6);
        for m in 1..6 {
            for n in 1..=6 - m {
                for p in &ms[m] {
                    for q in &ms[n] {
                        if let Some(pq) = alg.multiply_basis(p, q) {
                            prop_assert_eq!(alg.resolution_degree(&pq), Some(m + n));
                            prop_assert_eq!(pq.slice(alg.quiver(), 0, p.len()), p.clone());
                            // `p` is the only degree m member that is a prefix of `pq`
                            let prefixes = ms[m].iter().filter(|r| pq.arrows().starts_with(r.arrows())).count();
                            prop_assert_eq!(prefixes, 1);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn nilpotence_matches_powers(seed in 0u64..10_000) {
        let (_, alg) = random_algebra(seed);
        let limits = Limits::default();
        let ms = members(&alg, 4);
        for n in 1..=4 {
            for p in ms[n].iter().filter(|p| p.is_closed_walk()) {
                let (nil, k) = alg.is_nilpotent_basis(p, &limits).unwrap();
                if nil {
                    prop_assert!(power(&alg, p, k).is_none());
                    prop_assert!(k == 1 || power(&alg, p, k - 1).is_some());
                } else {
                    prop_assert!(power(&alg, p, 6).is_some());
                }
            }
        }
    }

    #[test]
    fn files_round_trip(seed in 0u64..10_000) {
        let (text, alg) = random_algebra(seed);
        let file = AlgebraFile::parse(&text).unwrap();
        prop_assert_eq!(&file.emit(), &text);
        let again = AlgebraFile::from_algebra(&alg).to_algebra().unwrap();
        prop_assert_eq!(again.dimension(), alg.dimension());
        prop_assert_eq!(again.relations(), alg.relations());
    }

    #[test]
    fn composition_and_subpaths(seed in 0u64..10_000, i in 0usize..8, j in 0usize..8) {
        let (_, alg) = random_algebra(seed);
        let ms = members(&alg, 3);
        let all: Vec<&Path> = ms[1..].iter().flatten().collect();
        let (p, q) = (all[i % all.len()], all[j % all.len()]);
        if let Some(pq) = compose(p, q) {
            prop_assert_eq!(pq.len(), p.len() + q.len());
            prop_assert_eq!(is_subpath(p, &pq), Some(0));
            prop_assert!(is_subpath(q, &pq).is_some());
        } else {
            prop_assert_ne!(p.terminus(), q.origin());
        }
    }

    #[test]
    fn frobenius_of_random_generators(gens in prop::collection::vec(2usize..20, 1..4)) {
        let (min, frob) = degree_semigroup_generators(&gens).unwrap();
        let g = min.iter().fold(0, |a, &b| num_gcd(a, b));
        prop_assert_eq!(g, gens.iter().fold(0, |a, &b| num_gcd(a, b)));
        let top = 400;
        let mut reach = vec![false; top + 1];
        reach[0] = true;
        for v in 1..=top {
            reach[v] = min.iter().any(|&x| x <= v && reach[v - x]);
        }
        for &x in &gens {
            prop_assert!(reach[x]);
        }
        match frob {
            Some(f) => {
                prop_assert_eq!(g, 1);
                prop_assert!(!reach[f as usize]);
                prop_assert!(reach[f as usize + 1..].iter().all(|&r| r));
            }
            None => prop_assert!(g > 1),
        }
    }
}

fn num_gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { num_gcd(b, a % b) }
}
