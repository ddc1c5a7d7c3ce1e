#![allow(dead_code)]

use monoext::{load_algebra, Limits, MonomialAlgebra, ResolutionBasis};

pub const DESK_DEGREE: usize = 40;
pub const DESK_MEMBERS: usize = 400;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn corpus(name: &str) -> MonomialAlgebra {
    let path = format!("{}/corpus/{name}.alg", env!("CARGO_MANIFEST_DIR"));
    load_algebra(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Random finite dimensional monomial algebra: at most 5 vertices, 8 arrows, 6 relations and
/// radical length 8.  Returns the file text and the algebra.
pub fn random_algebra(seed: u64) -> (String, MonomialAlgebra) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        if let Some(found) = attempt(&mut rng) {
            return found;
        }
    }
}

fn attempt(rng: &mut ChaCha8Rng) -> Option<(String, MonomialAlgebra)> {
    let nv = rng.gen_range(1..=5);
    let na = rng.gen_range(1..=8);
    let mut arrows: Vec<(usize, usize)> = Vec::new();
    // a cycle through some vertices makes closed walks likely
    let cyc = rng.gen_range(1..=nv);
    for i in 0..cyc.min(na) {
        arrows.push((i, (i + 1) % cyc));
    }
    while arrows.len() < na {
        arrows.push((rng.gen_range(0..nv), rng.gen_range(0..nv)));
    }
    let out: Vec<Vec<usize>> = (0..nv).map(|v| (0..na).filter(|&a| arrows[a].0 == v).collect()).collect();
    let nr = rng.gen_range(1..=6);
    let mut rels: Vec<Vec<usize>> = Vec::new();
    for _ in 0..nr * 4 {
        if rels.len() == nr {
            break;
        }
        let len = rng.gen_range(2..=4);
        let mut a = rng.gen_range(0..na);
        let mut w = vec![a];
        while w.len() < len {
            a = *out[arrows[a].1].choose(rng)?;
            w.push(a);
        }
        let sub = |x: &[usize], y: &[usize]| y.windows(x.len()).any(|s| s == x);
        if rels.iter().any(|r| sub(r, &w) || sub(&w, r)) {
            continue;
        }
        rels.push(w);
    }
    let mut text = String::new();
    for v in 0..nv {
        text.push_str(&format!("vertex {v}\n"));
    }
    for (i, (s, t)) in arrows.iter().enumerate() {
        text.push_str(&format!("arrow x{i} {s} {t}\n"));
    }
    for r in &rels {
        let names: Vec<String> = r.iter().map(|a| format!("x{a}")).collect();
        text.push_str(&format!("relation {}\n", names.join(" ")));
    }
    let alg = load_algebra(&text).ok()?;
    if alg.radical_length() > 8 {
        return None;
    }
    // keep the linear algebra oracle at desk scale
    let mut basis = ResolutionBasis::new(&alg, Limits { max_degree: DESK_DEGREE, max_members: DESK_MEMBERS });
    basis.ensure(DESK_DEGREE).ok()?;
    Some((text, alg))
}

/// R^n for `n >= 2` rebuilt from the definition: paths of maximal left (or right) overlap
/// sequences of `n - 1` relations, over every tuple of relations.
pub fn oracle_rn(alg: &MonomialAlgebra, n: usize, right: bool) -> Vec<monoext::Path> {
    assert!(n >= 2);
    let k = alg.relations().len();
    let mut out = std::collections::BTreeSet::new();
    let mut tuple = vec![0usize; n - 1];
    loop {
        let seqs = if right { alg.right_overlap_sequences(&tuple) } else { alg.left_overlap_sequences(&tuple) };
        for s in seqs {
            let maximal = if right { alg.is_maximal_right(&s) } else { alg.is_maximal_left(&s) };
            if maximal {
                out.insert(s.path);
            }
        }
        let mut i = 0;
        while i < tuple.len() {
            tuple[i] += 1;
            if tuple[i] < k {
                break;
            }
            tuple[i] = 0;
            i += 1;
        }
        if i == tuple.len() {
            break;
        }
    }
    out.into_iter().collect()
}

pub fn path(alg: &MonomialAlgebra, text: &str) -> monoext::Path {
    alg.quiver().parse_path(text).unwrap()
}
