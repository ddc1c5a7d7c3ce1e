mod common;

use common::{corpus, oracle_rn, path};
use monoext::centre::{class_data, degree_semigroup_generators, quotient_report, QuotientOptions};
use monoext::hochschild::class_support;
use monoext::walks::{lies_on, stability};
use monoext::{
    build_chi, conjugate_decomposition, is_overlap_relation, is_subpath, load_algebra, verify_cocycle, AlgebraError,
    CochainChi, FormatError, HochschildError, Limits, ResolutionBasis,
};

fn rendered(alg: &monoext::MonomialAlgebra, n: usize) -> Vec<String> {
    let mut basis = ResolutionBasis::new(alg, Limits::default());
    basis.members(n).unwrap().iter().map(|p| alg.render(p)).collect()
}

#[test]
fn ex1_tables() {
    let alg = corpus("ex1");
    assert_eq!(alg.radical_length(), 4);
    assert_eq!(alg.dimension(), 24);
    assert_eq!(rendered(&alg, 2), ["a b c", "b c d e", "c d e f", "e f g"]);
    assert_eq!(rendered(&alg, 3), ["a b c d e", "b c d e f", "c d e f g"]);
    assert_eq!(rendered(&alg, 4), ["a b c d e f g"]);
    assert!(rendered(&alg, 5).is_empty());
    for n in 2..=5 {
        let mut basis = ResolutionBasis::new(&alg, Limits::default());
        let members = basis.members(n).unwrap().to_vec();
        assert_eq!(oracle_rn(&alg, n, false), members);
        assert_eq!(oracle_rn(&alg, n, true), members);
    }
}

#[test]
fn ex1_overlap_sequences() {
    let alg = corpus("ex1");
    let (abc, cdef) = (path(&alg, "a b c"), path(&alg, "c d e f"));
    assert!(is_overlap_relation(&abc, &cdef, &path(&alg, "d e f"), &path(&alg, "a b")));
    assert!(!is_overlap_relation(&abc, &path(&alg, "e f g"), &path(&alg, "d e f g"), &path(&alg, "a b c d")));
    let s = &alg.left_overlap_sequences(&[0, 2])[0];
    assert_eq!(alg.render(&s.path), "a b c d e f");
    assert!(!alg.is_maximal_left(s));
    let s = &alg.left_overlap_sequences(&[0, 1])[0];
    assert_eq!(alg.render(&s.path), "a b c d e");
    assert!(alg.is_maximal_left(s));
    let r = alg.record(&path(&alg, "a b c d e f g")).unwrap();
    assert_eq!(alg.render(&r.tail), "f g");
    assert_eq!(alg.render(&r.beginning), "a b");
    assert_eq!(r.left.iter().map(|l| l.start).collect::<Vec<_>>(), [0, 1, 4]);
    assert_eq!(r.right.iter().map(|l| l.start).collect::<Vec<_>>(), [0, 2, 4]);
}

#[test]
fn ex2_tables_and_tails() {
    let alg = corpus("ex2");
    let mut basis = ResolutionBasis::new(&alg, Limits::default());
    let tails: Vec<String> = basis.records(4).unwrap().iter().map(|r| alg.render(&r.tail)).collect();
    assert_eq!(tails, ["a6 a7", "a7 a1 a2", "a1 a2 a3", "a3 a4", "a5 a6"]);
    let beginnings: Vec<String> = basis.records(8).unwrap().iter().map(|r| alg.render(&r.beginning)).collect();
    assert_eq!(beginnings, ["a1 a2 a3", "a4", "a5 a6", "a7"]);
    assert_eq!(basis.members(6).unwrap().len(), 4);
}

#[test]
fn ex2_stability() {
    let alg = corpus("ex2");
    let limits = Limits::default();
    let expect = [
        ("a1 a2 a3 a4 a5 a6 a7", 7, 3),
        ("a4 a5 a6 a7 a1 a2 a3", 3, 7),
        ("a5 a6 a7 a1 a2 a3 a4", 5, 3),
        ("a7 a1 a2 a3 a4 a5 a6", 3, 5),
    ];
    for (w, jl, jr) in expect {
        let st = stability(&alg, &path(&alg, w), &limits).unwrap();
        assert_eq!((st.left_stable_at, st.right_stable_at, st.u, st.tail_u), (jl, jr, 2, 2), "{w}");
        assert!(st.is_left_stable_at(7) && st.is_right_stable_at(7));
        assert!(!st.is_left_stable_at(8));
        assert!(st.tightly_covered());
    }
}

#[test]
fn ex2_class_and_quotient() {
    let alg = corpus("ex2");
    let limits = Limits::default();
    let classes = class_data(&alg, &limits).unwrap();
    assert_eq!(classes.len(), 1);
    let c = &classes[0];
    assert_eq!((c.m, c.u, c.n), (2, 2, 4));
    assert!(c.certified());
    assert_eq!(c.candidate_degree(), Some(8));
    let q = quotient_report(&alg, QuotientOptions { degree_bound: 16, validation_bound: 12, check_bound: None }, &limits)
        .unwrap();
    let certified: Vec<usize> = q.degrees.iter().filter(|d| !d.certified.is_empty()).map(|d| d.degree).collect();
    assert_eq!(certified, [8, 16]);
    let d_central: Vec<usize> = q.degrees.iter().filter(|d| !d.d_central.is_empty()).map(|d| d.degree).collect();
    assert_eq!(d_central, [4, 8, 12]);
    assert_eq!(q.semigroups[0].as_ref().unwrap().0, [4]);
    assert!(q.disagreements.is_empty());
}

#[test]
fn ex2_cochains() {
    let alg = corpus("ex2");
    let limits = Limits::default();
    let c = &class_data(&alg, &limits).unwrap()[0];
    assert!(matches!(build_chi(&alg, c, 4, &limits), Err(HochschildError::NotStabilized(..))));
    for d in [8, 12, 16] {
        let chi = build_chi(&alg, c, d, &limits).unwrap();
        assert_eq!(chi.support(), class_support(&alg, c, d, &limits).unwrap());
        assert!(verify_cocycle(&alg, &chi, &limits).unwrap().is_none(), "degree {d}");
    }
    let text = std::fs::read_to_string(format!("{}/corpus/ex2_chi4.json", env!("CARGO_MANIFEST_DIR"))).unwrap();
    let chi = CochainChi::from_json(&alg, &text).unwrap();
    assert!(verify_cocycle(&alg, &chi, &limits).unwrap().is_none());
    let mut broken = chi.clone();
    broken.values.remove(&path(&alg, "a2 a3 a4 a5 a6 a7 a1 a2"));
    let w = verify_cocycle(&alg, &broken, &limits).unwrap().unwrap();
    assert_eq!(w.generator, "a1 a2 a3 a4 a5 a6 a7 a1 a2");
}

#[test]
fn ex3_class_fails_overlap_conditions() {
    let alg = corpus("ex3");
    let limits = Limits::default();
    let classes = class_data(&alg, &limits).unwrap();
    let ab = classes.iter().find(|c| alg.render(&c.class.representative) == "a b").unwrap();
    let holds: Vec<bool> = ab.conditions.iter().map(|c| c.holds).collect();
    assert_eq!(holds, [true, true, false, false]);
    assert!(!ab.certified());
    let q = quotient_report(&alg, QuotientOptions { degree_bound: 12, validation_bound: 12, check_bound: None }, &limits)
        .unwrap();
    assert_eq!(q.krull_dimension, 0);
    let nilpotent: Vec<usize> =
        q.degrees.iter().filter(|d| d.oracle_dimension.unwrap_or(0) > 0).map(|d| d.degree).collect();
    assert_eq!(nilpotent, [6, 8, 10, 12]);
}

#[test]
fn ex4_obstruction() {
    let alg = corpus("ex4");
    let limits = Limits::default();
    let c = &class_data(&alg, &limits).unwrap()[0];
    assert!(c.certified());
    match build_chi(&alg, c, 4, &limits) {
        Err(HochschildError::NotStabilized(w, 7, 3)) => assert_eq!(w, "a1 a2 a3 a4 a5 a6 a7"),
        other => panic!("{other:?}"),
    }
    let text = std::fs::read_to_string(format!("{}/corpus/ex2_chi4.json", env!("CARGO_MANIFEST_DIR"))).unwrap();
    let chi = CochainChi::from_json(&alg, &text).unwrap();
    let w = verify_cocycle(&alg, &chi, &limits).unwrap().unwrap();
    assert_eq!(w.generator, "a1 a2 a3 a4 a5 a6 a7 x y");
}

#[test]
fn loop_square_zero() {
    let alg = corpus("loop");
    let limits = Limits::default();
    assert_eq!(alg.radical_length(), 2);
    for n in 0..=6 {
        assert_eq!(rendered(&alg, n).len(), 1);
    }
    let c = &class_data(&alg, &limits).unwrap()[0];
    // a single relation is 3-stable at best, so N = 2 although tails already repeat at the first power
    assert_eq!((c.m, c.u, c.n), (1, 2, 2));
    assert_eq!(c.delta[0].tail_u, 1);
    let q = quotient_report(&alg, QuotientOptions { degree_bound: 8, validation_bound: 8, check_bound: None }, &limits)
        .unwrap();
    assert!(q.degrees.iter().all(|d| d.dimension == 1));
    assert_eq!(q.semigroups[0].as_ref().unwrap().0, [2]);
}

#[test]
fn empty_relation_set() {
    let alg = load_algebra("vertex 1\nvertex 2\narrow a 1 2\n").unwrap();
    assert_eq!(rendered(&alg, 1), ["a"]);
    for n in 2..=4 {
        assert!(rendered(&alg, n).is_empty());
    }
}

/// Paths of length at most `top` without a relation as a subpath, vertices included.
fn count_nonzero_paths(alg: &monoext::MonomialAlgebra, top: usize) -> u128 {
    let q = alg.quiver();
    let mut layer: Vec<monoext::Path> = (0..q.num_vertices()).map(|v| q.trivial(v as u32)).collect();
    let mut count = layer.len() as u128;
    for _ in 0..top {
        let mut next = Vec::new();
        for p in &layer {
            for &a in q.out_arrows(p.terminus()) {
                let mut arrows = p.arrows().to_vec();
                arrows.push(a);
                let w = q.path(&arrows).unwrap();
                if !alg.relations().iter().any(|r| is_subpath(r, &w).is_some()) {
                    next.push(w);
                }
            }
        }
        count += next.len() as u128;
        layer = next;
    }
    assert!(layer.is_empty(), "paths longer than {top}");
    count
}

#[test]
fn validation_errors() {
    let ex2 = std::fs::read_to_string(format!("{}/corpus/ex2.alg", env!("CARGO_MANIFEST_DIR"))).unwrap();
    // every path of length 10 on the 7-cycle contains a1 a2 a3 a4, so dropping a4 a5 a6 keeps it finite
    let without = load_algebra(&ex2.replace("relation a4 a5 a6\n", "")).unwrap();
    assert_eq!((without.radical_length(), without.dimension()), (5, count_nonzero_paths(&without, 12)));
    assert_eq!(without.dimension(), 28);
    let free_loop = "vertex 1\narrow x 1 1\narrow y 1 1\nrelation x y\n";
    assert!(matches!(load_algebra(free_loop), Err(FormatError::Algebra(AlgebraError::InfiniteDimensional(_)))));
    let base = "vertex 1\nvertex 2\nvertex 3\nvertex 4\narrow a 1 2\narrow b 2 3\narrow c 3 4\n";
    let nonminimal = format!("{base}relation a b\nrelation a b c\n");
    assert!(matches!(load_algebra(&nonminimal), Err(FormatError::Algebra(AlgebraError::NonMinimal(..)))));
    let short = format!("{base}relation a\n");
    assert!(matches!(load_algebra(&short), Err(FormatError::Algebra(AlgebraError::RelationTooShort(_)))));
    match load_algebra("vertex 1\narrow a 1 2\n") {
        Err(FormatError::Quiver { line: 2, .. }) => {}
        other => panic!("{other:?}"),
    }
    match load_algebra("vertex 1\nbogus\n") {
        Err(FormatError::Parse { line: 2, .. }) => {}
        other => panic!("{other:?}"),
    }
}

#[test]
fn paths_and_walks() {
    let alg = corpus("ex2");
    let w = path(&alg, "a1 a2 a3 a4 a5 a6 a7");
    assert_eq!(is_subpath(&path(&alg, "a3 a4"), &w), Some(2));
    assert_eq!(is_subpath(&path(&alg, "a7 a1"), &w), None);
    assert!(lies_on(&path(&alg, "a7 a1 a2"), &w));
    assert!(lies_on(&w.power(2), &w));
    let rot = path(&alg, "a4 a5 a6 a7 a1 a2 a3");
    assert_eq!(conjugate_decomposition(&w, &path(&alg, "a1 a2 a3"), &rot), Ok((0, 3)));
    let q = monoext::compose(&w, &path(&alg, "a1 a2 a3")).unwrap();
    assert_eq!(conjugate_decomposition(&w, &q, &rot), Ok((1, 3)));
    assert!(conjugate_decomposition(&w, &path(&alg, "a1 a2"), &rot).is_err());
}

#[test]
fn semigroups() {
    assert_eq!(degree_semigroup_generators(&[4, 8, 12]).unwrap(), (vec![4], None));
    assert_eq!(degree_semigroup_generators(&[3, 5, 6, 8, 9, 10]).unwrap(), (vec![3, 5], Some(7)));
    assert_eq!(degree_semigroup_generators(&[1, 2]).unwrap(), (vec![1], Some(-1)));
    assert!(degree_semigroup_generators(&[]).is_err());
}
