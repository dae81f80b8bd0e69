//! Isomorphism testing: a fingerprint filter, then a backtracking search
//! for images of a generating set.

use std::collections::BTreeMap;

use crate::group::{Group, GroupHomomorphism};

/// Isomorphism invariants compared before any search.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint {
    pub order: usize,
    pub order_histogram: Vec<(u32, usize)>,
    pub class_sizes: Vec<usize>,
    pub center_order: usize,
    pub derived_length: Option<usize>,
    pub abelianization: Vec<(u32, usize)>,
}

fn histogram(orders: &[u32]) -> Vec<(u32, usize)> {
    let mut h = BTreeMap::new();
    for &o in orders {
        *h.entry(o).or_insert(0) += 1;
    }
    h.into_iter().collect()
}

pub fn fingerprint(g: &Group) -> Fingerprint {
    let mut class_sizes: Vec<usize> = g.conjugacy_classes().iter().map(|c| c.len()).collect();
    class_sizes.sort();
    let (ab, _) = g.quotient_unchecked(&g.derived_subgroup());
    Fingerprint {
        order: g.order(),
        order_histogram: histogram(g.element_orders()),
        class_sizes,
        center_order: g.center().size(),
        derived_length: g.derived_length(),
        abelianization: histogram(ab.element_orders()),
    }
}

/// An isomorphism `a → b` if one exists.
pub fn is_isomorphic(a: &Group, b: &Group) -> Option<GroupHomomorphism> {
    if a.order() != b.order() {
        return None;
    }
    if fingerprint(a) != fingerprint(b) {
        return None;
    }
    find_isomorphism(a, b)
}

/// Backtracking search without the fingerprint filter.
pub fn find_isomorphism(a: &Group, b: &Group) -> Option<GroupHomomorphism> {
    if a.order() != b.order() {
        return None;
    }
    let n = a.order();
    let class_size = |g: &Group| {
        let mut cs = vec![0usize; g.order()];
        for c in g.conjugacy_classes() {
            for &x in c {
                cs[x] = c.len();
            }
        }
        cs
    };
    let (csa, csb) = (class_size(a), class_size(b));
    let gens = a.generators().to_vec();
    let cands: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| {
            (0..n)
                .filter(|&y| b.element_order(y) == a.element_order(x) && csb[y] == csa[x])
                .collect()
        })
        .collect();
    if cands.iter().any(|c| c.is_empty()) {
        return None;
    }
    const UNSET: usize = usize::MAX;
    let mut state = Search {
        a,
        b,
        gens: &gens,
        img: vec![UNSET; gens.len()],
        map: vec![UNSET; n],
        used: vec![false; n],
        mapped: Vec::with_capacity(n),
    };
    state.map[a.identity()] = b.identity();
    state.used[b.identity()] = true;
    state.mapped.push(a.identity());
    if state.search(0, &cands) {
        Some(GroupHomomorphism { images: state.map })
    } else {
        None
    }
}

struct Search<'a> {
    a: &'a Group,
    b: &'a Group,
    gens: &'a [usize],
    img: Vec<usize>,
    map: Vec<usize>,
    used: Vec<bool>,
    mapped: Vec<usize>,
}

impl Search<'_> {
    fn search(&mut self, level: usize, cands: &[Vec<usize>]) -> bool {
        if level == self.gens.len() {
            return self.mapped.len() == self.a.order();
        }
        for &y in &cands[level] {
            self.img[level] = y;
            let mark = self.mapped.len();
            if self.extend(level) && self.search(level + 1, cands) {
                return true;
            }
            for &x in &self.mapped[mark..] {
                self.used[self.map[x]] = false;
                self.map[x] = usize::MAX;
            }
            self.mapped.truncate(mark);
        }
        false
    }

    /// Propagates the map along every edge `x → x·g_i` (`i ≤ level`) of
    /// the mapped region, failing on an inconsistency or a collision.
    fn extend(&mut self, level: usize) -> bool {
        let mut i = 0;
        while i < self.mapped.len() {
            let x = self.mapped[i];
            let fx = self.map[x];
            for k in 0..=level {
                let y = self.a.mul(x, self.gens[k]);
                let fy = self.b.mul(fx, self.img[k]);
                let cur = self.map[y];
                if cur == usize::MAX {
                    if self.used[fy] {
                        return false;
                    }
                    self.map[y] = fy;
                    self.used[fy] = true;
                    self.mapped.push(y);
                } else if cur != fy {
                    return false;
                }
            }
            i += 1;
        }
        true
    }
}
