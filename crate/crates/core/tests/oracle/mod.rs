//! Brute-force reference computations on groups of order at most 128,
//! with subsets stored as `u128` masks. Nothing here calls the library's
//! lattice, cover or isomorphism code.

#![allow(dead_code)]

use gcover_core::Group;

pub type Mask = u128;

pub fn full(g: &Group) -> Mask {
    assert!(g.order() <= 128, "oracle handles order ≤ 128");
    if g.order() == 128 {
        Mask::MAX
    } else {
        (1 << g.order()) - 1
    }
}

pub fn members(mask: Mask) -> impl Iterator<Item = usize> {
    (0..128).filter(move |i| mask >> i & 1 == 1)
}

/// Smallest subset containing `seed` and the identity, closed under products:
/// every right multiple of a reached element by a seed element is reached.
pub fn closure(g: &Group, seed: Mask) -> Mask {
    let gens: Vec<usize> = members(seed).collect();
    let mut set: Mask = 1 << g.identity();
    let mut stack = vec![g.identity()];
    while let Some(a) = stack.pop() {
        for &s in &gens {
            let b = g.mul(a, s);
            if set >> b & 1 == 0 {
                set |= 1 << b;
                stack.push(b);
            }
        }
    }
    set
}

/// Every subgroup, found by closing each known subgroup with one more
/// element until nothing new appears.
pub fn subgroups(g: &Group) -> Vec<Mask> {
    let mut seen = std::collections::HashSet::new();
    let mut frontier = vec![closure(g, 0)];
    seen.insert(frontier[0]);
    while let Some(h) = frontier.pop() {
        for x in 0..g.order() {
            if h >> x & 1 == 0 {
                let k = closure(g, h | 1 << x);
                if seen.insert(k) {
                    frontier.push(k);
                }
            }
        }
    }
    let mut out: Vec<Mask> = seen.into_iter().collect();
    out.sort_by_key(|m| (m.count_ones(), *m));
    out
}

/// Proper subgroups contained in no larger proper subgroup.
pub fn maximals(g: &Group) -> Vec<Mask> {
    let all = full(g);
    let proper: Vec<Mask> = subgroups(g).into_iter().filter(|&h| h != all).collect();
    proper.iter().copied().filter(|&h| !proper.iter().any(|&k| k != h && h & k == h)).collect()
}

/// Least number of sets from `sets` whose union is `target`, by iterative
/// deepening; each level branches on every set containing the first
/// uncovered element. `None` when even all sets together miss something.
pub fn min_cover(target: Mask, sets: &[Mask], max_depth: usize) -> Option<usize> {
    let union = sets.iter().fold(0, |a, &s| a | s);
    if union & target != target {
        return None;
    }
    fn go(target: Mask, covered: Mask, sets: &[Mask], depth: usize) -> bool {
        let missing = target & !covered;
        if missing == 0 {
            return true;
        }
        if depth == 0 {
            return false;
        }
        let x = missing.trailing_zeros();
        sets.iter().filter(|&&s| s >> x & 1 == 1).any(|&s| go(target, covered | s, sets, depth - 1))
    }
    (1..=max_depth).find(|&k| go(target, 0, sets, k))
}

/// `σ(G)` from the brute-force maximal subgroups.
pub fn sigma(g: &Group, max_depth: usize) -> Option<usize> {
    if g.order() == 1 {
        return None;
    }
    min_cover(full(g), &maximals(g), max_depth)
}

pub fn is_normal(g: &Group, h: Mask) -> bool {
    members(h).all(|x| (0..g.order()).all(|y| h >> g.mul(g.mul(g.inv(y), x), y) & 1 == 1))
}

pub fn conjugate(g: &Group, h: Mask, y: usize) -> Mask {
    members(h).fold(0, |acc, x| acc | 1 << g.mul(g.mul(g.inv(y), x), y))
}

/// Elements `x` such that no proper subgroup `H` has `⟨H, x⟩ = G`.
pub fn non_generators(g: &Group) -> Mask {
    let all = full(g);
    let proper: Vec<Mask> = subgroups(g).into_iter().filter(|&h| h != all).collect();
    (0..g.order())
        .filter(|&x| proper.iter().all(|&h| closure(g, h | 1 << x) != all))
        .fold(0, |acc, x| acc | 1 << x)
}

pub fn element_order(g: &Group, x: usize) -> usize {
    let (mut y, mut k) = (x, 1);
    while y != g.identity() {
        y = g.mul(y, x);
        k += 1;
    }
    k
}

/// Isomorphism by backtracking over order-preserving bijections, pruned by
/// the multiplication rule on assigned pairs and checked in full at the end.
pub fn isomorphic(a: &Group, b: &Group) -> bool {
    let n = a.order();
    if n != b.order() {
        return false;
    }
    let oa: Vec<usize> = (0..n).map(|x| element_order(a, x)).collect();
    let ob: Vec<usize> = (0..n).map(|x| element_order(b, x)).collect();
    let mut sa = oa.clone();
    let mut sb = ob.clone();
    sa.sort();
    sb.sort();
    if sa != sb {
        return false;
    }
    fn go(a: &Group, b: &Group, oa: &[usize], ob: &[usize], map: &mut Vec<usize>, used: &mut Vec<bool>, i: usize) -> bool {
        let n = a.order();
        if i == n {
            return (0..n).all(|x| (0..n).all(|y| map[a.mul(x, y)] == b.mul(map[x], map[y])));
        }
        for y in 0..n {
            if used[y] || oa[i] != ob[y] {
                continue;
            }
            map[i] = y;
            let ok = (0..=i).all(|j| {
                let p = a.mul(i, j);
                let q = a.mul(j, i);
                (p > i || map[p] == b.mul(y, map[j])) && (q > i || map[q] == b.mul(map[j], y))
            });
            if ok {
                used[y] = true;
                if go(a, b, oa, ob, map, used, i + 1) {
                    return true;
                }
                used[y] = false;
            }
        }
        false
    }
    go(a, b, &oa, &ob, &mut vec![usize::MAX; n], &mut vec![false; n], 0)
}

/// `g` with its elements renamed by `perm`.
pub fn relabel(g: &Group, perm: &[usize]) -> Group {
    let n = g.order();
    let mut rows = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            rows[perm[a]][perm[b]] = perm[g.mul(a, b)];
        }
    }
    Group::from_rows(&rows, format!("{}'", g.label())).unwrap()
}
