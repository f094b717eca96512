//! Random instances and brute-force oracles shared by the integration tests.
//!
//! The oracles here deliberately avoid the library's algorithms: ranks come
//! from exhaustive subset search, colorings from backtracking.

#![allow(dead_code)]

pub mod catalog;

use std::collections::HashSet;
use std::sync::Arc;

use mgame_core::matroid::{ExplicitMatroid, GraphicMatroid, TransversalMatroid, UniformMatroid};
use mgame_core::{ElementSet, Matroid};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn uniform(n: usize, r: usize) -> Arc<dyn Matroid> {
    Arc::new(UniformMatroid::new(n, r).unwrap())
}

pub fn random_uniform(rng: &mut impl Rng, n: usize) -> Arc<dyn Matroid> {
    uniform(n, rng.gen_range(1..=n))
}

/// Random connected-ish multigraph without self-loops.
pub fn random_graph(rng: &mut impl Rng, edges: usize) -> GraphicMatroid {
    let vertices = rng.gen_range(2..=edges.max(1) + 1);
    let list = (0..edges)
        .map(|i| {
            // a spanning path first keeps most instances connected
            if i + 1 < vertices {
                (i, i + 1)
            } else {
                let u = rng.gen_range(0..vertices);
                let mut v = rng.gen_range(0..vertices - 1);
                if v >= u {
                    v += 1;
                }
                (u, v)
            }
        })
        .collect();
    GraphicMatroid::new(vertices, list).unwrap()
}

pub fn random_transversal(rng: &mut impl Rng, n: usize) -> TransversalMatroid {
    let slots = rng.gen_range(1..=n.max(1));
    let mut family: Vec<Vec<usize>> = vec![Vec::new(); slots];
    for e in 0..n {
        family[rng.gen_range(0..slots)].push(e);
        for s in family.iter_mut() {
            if rng.gen_bool(0.3) && !s.contains(&e) {
                s.push(e);
            }
        }
    }
    TransversalMatroid::new(n, family).unwrap()
}

/// A tabulated copy of a random uniform, graphic or transversal matroid.
pub fn random_explicit(rng: &mut impl Rng, n: usize) -> Arc<dyn Matroid> {
    let inner: Arc<dyn Matroid> = match rng.gen_range(0..3) {
        0 => random_uniform(rng, n),
        1 => Arc::new(random_graph(rng, n)),
        _ => Arc::new(random_transversal(rng, n)),
    };
    Arc::new(ExplicitMatroid::tabulate(inner.as_ref()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Uniform,
    Graphic,
    Transversal,
    Explicit,
}

pub fn random_matroid(rng: &mut impl Rng, kind: Kind, n: usize) -> Arc<dyn Matroid> {
    match kind {
        Kind::Uniform => random_uniform(rng, n),
        Kind::Graphic => Arc::new(random_graph(rng, n)),
        Kind::Transversal => Arc::new(random_transversal(rng, n)),
        Kind::Explicit => random_explicit(rng, n),
    }
}

pub fn subsets(n: usize) -> impl Iterator<Item = ElementSet> {
    (0u64..1 << n).map(ElementSet::from_mask)
}

/// Largest independent subset, by exhaustive search.
pub fn brute_rank(m: &dyn Matroid, set: &ElementSet) -> usize {
    let items = set.to_vec();
    let mut best = 0;
    for mask in 0u64..1 << items.len() {
        let size = mask.count_ones() as usize;
        if size > best {
            let sub: ElementSet = (0..items.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| items[i])
                .collect();
            if m.is_independent(&sub) {
                best = size;
            }
        }
    }
    best
}

/// Whether sets `V_1..V_d` with `V_i` independent in `M_i`, `V_i ⊆ allowed`
/// and each `e` in exactly `W(e)` of them exist, by backtracking over
/// elements.
pub fn brute_cover_exists(matroids: &[&dyn Matroid], weights: &[usize], allowed: Option<&[ElementSet]>) -> bool {
    fn go(
        e: usize,
        classes: &mut Vec<ElementSet>,
        matroids: &[&dyn Matroid],
        weights: &[usize],
        allowed: Option<&[ElementSet]>,
    ) -> bool {
        if e == weights.len() {
            return true;
        }
        let d = matroids.len();
        let options: Vec<usize> = (0..d)
            .filter(|&i| allowed.is_none_or(|a| a[e].contains(i)))
            .filter(|&i| matroids[i].is_independent(&classes[i].with(e)))
            .collect();
        if options.len() < weights[e] {
            return false;
        }
        for combo in combinations(&options, weights[e]) {
            for &i in &combo {
                classes[i].insert(e);
            }
            let ok = go(e + 1, classes, matroids, weights, allowed);
            for &i in &combo {
                classes[i].remove(e);
            }
            if ok {
                return true;
            }
        }
        false
    }
    let mut classes = vec![ElementSet::new(); matroids.len()];
    go(0, &mut classes, matroids, weights, allowed)
}

pub fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in combinations(&items[i + 1..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

/// Random lists of exact sizes `sizes[e]` from `0..palette`.
pub fn random_lists(rng: &mut impl Rng, sizes: &[usize], palette: usize) -> Vec<Vec<u32>> {
    let colors: Vec<u32> = (0..palette as u32).collect();
    sizes
        .iter()
        .map(|&s| {
            let mut l: Vec<u32> = colors.choose_multiple(rng, s).copied().collect();
            l.sort_unstable();
            l
        })
        .collect()
}

/// Every matroid on `0..n` without loops, one per isomorphism class, as
/// explicit matroids; found by checking the basis exchange axiom on every
/// family of `r`-subsets.
pub fn all_loopless_matroids(n: usize) -> Vec<Arc<dyn Matroid>> {
    assert!(n <= 6, "exhaustive matroid enumeration is only feasible for n ≤ 6");
    let mut out: Vec<Arc<dyn Matroid>> = Vec::new();
    let perms = permutations(n);
    for r in 1..=n {
        let rsets: Vec<u64> = (0u64..1 << n).filter(|m| m.count_ones() as usize == r).collect();
        let index = |m: u64| rsets.binary_search(&m).ok();
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        let full = (1u64 << n) - 1;
        for family in 1u64..1 << rsets.len() {
            let bases: Vec<u64> = (0..rsets.len())
                .filter(|i| family >> i & 1 == 1)
                .map(|i| rsets[i])
                .collect();
            if bases.iter().fold(0, |a, b| a | b) != full {
                continue;
            }
            let has = |m: u64| index(m).is_some_and(|i| family >> i & 1 == 1);
            let exchange = bases.iter().all(|&b1| {
                bases.iter().all(|&b2| {
                    let mut xs = b1 & !b2;
                    while xs != 0 {
                        let x = xs & xs.wrapping_neg();
                        xs &= xs - 1;
                        let mut ys = b2 & !b1;
                        let mut found = false;
                        while ys != 0 {
                            let y = ys & ys.wrapping_neg();
                            ys &= ys - 1;
                            if has((b1 & !x) | y) {
                                found = true;
                                break;
                            }
                        }
                        if !found {
                            return false;
                        }
                    }
                    true
                })
            });
            if !exchange {
                continue;
            }
            let canon = perms
                .iter()
                .map(|p| {
                    let mut mapped: Vec<u64> = bases.iter().map(|&b| permute(b, p)).collect();
                    mapped.sort_unstable();
                    mapped
                })
                .min()
                .unwrap();
            if seen.insert(canon) {
                let sets = bases.iter().map(|&b| ElementSet::from_mask(b)).collect();
                out.push(Arc::new(ExplicitMatroid::from_bases(n, sets).unwrap()));
            }
        }
    }
    out
}

fn permute(mask: u64, p: &[usize]) -> u64 {
    (0..p.len())
        .filter(|&i| mask >> i & 1 == 1)
        .fold(0, |m, i| m | 1 << p[i])
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}
