//! Loopless matroids on up to eight elements, one per isomorphism class.
//!
//! Every loopless matroid on `n + 1` elements deletes to a loopless one on
//! `n`, so the catalog grows by single-element extensions. Extensions of `M`
//! correspond to modular cuts of its lattice of flats; those are enumerated
//! by backtracking over flats in decreasing rank.

use std::collections::{HashMap, HashSet};
use std::hash::{Hash, Hasher};

/// A matroid stored as its sorted basis masks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bases {
    pub n: usize,
    pub rank: usize,
    pub bases: Vec<u16>,
}

impl Bases {
    fn ranks(&self) -> Vec<u8> {
        (0u32..1 << self.n)
            .map(|s| {
                self.bases
                    .iter()
                    .map(|&b| (b as u32 & s).count_ones())
                    .max()
                    .unwrap_or(0) as u8
            })
            .collect()
    }

    pub fn is_independent(&self, set: u16) -> bool {
        self.bases.iter().any(|&b| set & !b == 0)
    }
}

fn flats(n: usize, rank: &[u8]) -> Vec<u16> {
    let full = (1u32 << n) - 1;
    (0..=full)
        .filter(|&s| (0..n).all(|e| s >> e & 1 == 1 || rank[(s | 1 << e) as usize] > rank[s as usize]))
        .map(|s| s as u16)
        .collect()
}

/// All modular cuts that do not contain every flat.
///
/// Flats are indexed in decreasing rank and handled as `u128` masks. Each
/// inclusion is closed at once (upward and under meets of modular pairs),
/// so every node of the search extends to at least one cut.
fn modular_cuts(n: usize, rank: &[u8]) -> Vec<Vec<u16>> {
    let mut fl = flats(n, rank);
    fl.sort_by_key(|&f| std::cmp::Reverse((rank[f as usize], f)));
    let m = fl.len();
    assert!(m <= 128, "{m} flats");
    let index: HashMap<u16, usize> = fl.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let r = |s: u16| rank[s as usize] as i32;
    let above: Vec<u128> = (0..m)
        .map(|i| {
            (0..m)
                .filter(|&j| fl[i] & !fl[j] == 0)
                .fold(0u128, |acc, j| acc | 1 << j)
        })
        .collect();
    let meet: Vec<Vec<Option<usize>>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let (a, b) = (fl[i], fl[j]);
                    (r(a) + r(b) == r(a | b) + r(a & b)).then(|| index[&(a & b)])
                })
                .collect()
        })
        .collect();
    let close = |cut: u128, add: usize| -> u128 {
        let mut cut = cut;
        let mut work = vec![add];
        while let Some(f) = work.pop() {
            if cut >> f & 1 == 1 {
                continue;
            }
            cut |= 1 << f;
            let mut up = above[f] & !cut;
            while up != 0 {
                work.push(up.trailing_zeros() as usize);
                up &= up - 1;
            }
            let mut members = cut;
            while members != 0 {
                let g = members.trailing_zeros() as usize;
                members &= members - 1;
                if let Some(x) = meet[f][g] {
                    if cut >> x & 1 == 0 {
                        work.push(x);
                    }
                }
            }
        }
        cut
    };

    let mut out: Vec<Vec<u16>> = Vec::new();
    let mut stack = vec![(0usize, 0u128, 0u128)];
    while let Some((i, cut, excluded)) = stack.pop() {
        if i == m {
            out.push((0..m).filter(|&j| cut >> j & 1 == 1).map(|j| fl[j]).collect());
            continue;
        }
        if cut >> i & 1 == 1 {
            stack.push((i + 1, cut, excluded));
            continue;
        }
        stack.push((i + 1, cut, excluded | 1 << i));
        let with = close(cut, i);
        if with & excluded == 0 {
            stack.push((i + 1, with, excluded));
        }
    }
    // the last flat is the closure of the empty set; containing it makes a loop
    let bottom = fl[m - 1];
    out.retain(|cut| !cut.contains(&bottom));
    out
}

fn extensions(mat: &Bases) -> Vec<Bases> {
    let rank = mat.ranks();
    let n = mat.n;
    let p = 1u16 << n;
    let closure = |s: u16| -> u16 {
        (0..n).fold(s, |c, e| {
            if rank[(s | 1 << e) as usize] == rank[s as usize] {
                c | 1 << e
            } else {
                c
            }
        })
    };
    modular_cuts(n, &rank)
        .into_iter()
        .map(|cut| {
            if cut.is_empty() {
                let bases = mat.bases.iter().map(|&b| b | p).collect();
                return Bases {
                    n: n + 1,
                    rank: mat.rank + 1,
                    bases,
                };
            }
            let cut: HashSet<u16> = cut.into_iter().collect();
            let mut bases = mat.bases.clone();
            for s in 0u16..1 << n {
                if s.count_ones() as usize + 1 == mat.rank
                    && rank[s as usize] as u32 == s.count_ones()
                    && !cut.contains(&closure(s))
                {
                    bases.push(s | p);
                }
            }
            bases.sort_unstable();
            Bases {
                n: n + 1,
                rank: mat.rank,
                bases,
            }
        })
        .collect()
}

/// Element statistics used to bucket candidates and prune isomorphism search.
struct Profile {
    /// Bases through each pair (diagonal: through each element).
    pair: Vec<Vec<usize>>,
    triple: Vec<usize>,
    /// Refined element classes, comparable across matroids of one bucket.
    class: Vec<u64>,
    key: (usize, usize, usize, Vec<u64>),
}

fn profile(mat: &Bases) -> Profile {
    let n = mat.n;
    let mut pair = vec![vec![0; n]; n];
    let mut triple = vec![0; n * n * n];
    for &b in &mat.bases {
        let members: Vec<usize> = (0..n).filter(|&e| b >> e & 1 == 1).collect();
        for &e in &members {
            for &f in &members {
                pair[e][f] += 1;
                for &g in &members {
                    triple[(e * n + f) * n + g] += 1;
                }
            }
        }
    }
    // colour refinement on the pair counts
    let mut class: Vec<u64> = (0..n).map(|e| pair[e][e] as u64).collect();
    for _ in 0..n {
        let next: Vec<u64> = (0..n)
            .map(|e| {
                let mut around: Vec<(usize, u64)> =
                    (0..n).filter(|&f| f != e).map(|f| (pair[e][f], class[f])).collect();
                around.sort_unstable();
                let mut h = std::collections::hash_map::DefaultHasher::new();
                (class[e], around).hash(&mut h);
                h.finish()
            })
            .collect();
        class = next;
    }
    let mut sorted = class.clone();
    sorted.sort_unstable();
    Profile {
        pair,
        triple,
        class,
        key: (n, mat.rank, mat.bases.len(), sorted),
    }
}

/// Backtracking search for a relabeling of `a` onto `b`.
fn isomorphic(a: &Bases, pa: &Profile, b: &Bases, pb: &Profile) -> bool {
    let n = a.n;
    let target: HashSet<u16> = b.bases.iter().copied().collect();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    #[allow(clippy::too_many_arguments)]
    fn go(
        e: usize,
        n: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        a: &Bases,
        pa: &Profile,
        pb: &Profile,
        target: &HashSet<u16>,
    ) -> bool {
        if e == n {
            return a.bases.iter().all(|&s| {
                let img = (0..n).filter(|&x| s >> x & 1 == 1).fold(0u16, |m, x| m | 1 << map[x]);
                target.contains(&img)
            });
        }
        for t in 0..n {
            if used[t] || pa.class[e] != pb.class[t] {
                continue;
            }
            let fits = (0..e).all(|f| {
                pa.pair[e][f] == pb.pair[t][map[f]]
                    && (0..f).all(|g| pa.triple[(e * n + f) * n + g] == pb.triple[(t * n + map[f]) * n + map[g]])
            });
            if !fits {
                continue;
            }
            map[e] = t;
            used[t] = true;
            if go(e + 1, n, map, used, a, pa, pb, target) {
                return true;
            }
            used[t] = false;
        }
        map[e] = usize::MAX;
        false
    }
    go(0, n, &mut map, &mut used, a, pa, pb, &target)
}

/// `catalog[n]` lists the loopless matroids on `n` elements, `n ≤ max_n`.
pub fn loopless_catalog(max_n: usize) -> Vec<Vec<Bases>> {
    assert!(max_n <= 8);
    let mut catalog = vec![vec![Bases {
        n: 0,
        rank: 0,
        bases: vec![0],
    }]];
    for n in 1..=max_n {
        let mut buckets: HashMap<_, Vec<(Bases, Profile)>> = HashMap::new();
        let mut layer = Vec::new();
        for m in &catalog[n - 1] {
            for ext in extensions(m) {
                let p = profile(&ext);
                let bucket = buckets.entry(p.key.clone()).or_default();
                if bucket.iter().any(|(other, q)| isomorphic(&ext, &p, other, q)) {
                    continue;
                }
                layer.push(ext.clone());
                bucket.push((ext, p));
            }
        }
        catalog.push(layer);
    }
    catalog
}
