//! The verification corpus: a deterministic recipe list, built and
//! deduplicated up to isomorphism.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::arith::prime_power;
use crate::ff::gl_order;
use crate::group::{Group, MAX_ORDER};
use crate::iso::{find_isomorphism, fingerprint, Fingerprint};
use crate::recipe::{semidirect_actions, Recipe};

/// Largest elementary abelian normal part used for semidirect recipes.
pub const SEMIDIRECT_NORMAL_BOUND: usize = 32;
/// Largest acting cyclic order used for semidirect recipes.
pub const SEMIDIRECT_ACTING_BOUND: usize = 60;

/// Groups that are not direct products: cyclic, elementary abelian,
/// dihedral, a few named groups, and the matrix semidirect products.
pub fn base_recipes(max_order: usize) -> Vec<Recipe> {
    let max_order = max_order.min(MAX_ORDER);
    let mut out = Vec::new();
    for n in 1..=max_order {
        out.push(Recipe::Cyclic(n));
    }
    for q in 4..=max_order {
        if let Some((_, k)) = prime_power(q as u64) {
            if k >= 2 {
                out.push(Recipe::Elementary(q));
            }
        }
    }
    for n in (6..=max_order).step_by(2) {
        out.push(Recipe::Dihedral(n));
    }
    for r in [Recipe::Symmetric(3), Recipe::Symmetric(4), Recipe::Alternating(4), Recipe::Dicyclic(8)] {
        if r.order() <= max_order {
            out.push(r);
        }
    }
    for q in 2..=SEMIDIRECT_NORMAL_BOUND {
        let Some((p, k)) = prime_power(q as u64) else { continue };
        let gl = gl_order(p, k);
        for m in 2..=SEMIDIRECT_ACTING_BOUND {
            if q * m > max_order || gl % m as u128 != 0 {
                continue;
            }
            let count = semidirect_actions(q, m).map(|a| a.len()).unwrap_or(0);
            for index in 1..=count {
                out.push(Recipe::Semidirect { normal: q, m, index });
            }
        }
    }
    out
}

/// Base recipes followed by pairwise direct products `b_i × b_j`, `i ≤ j`,
/// of the nontrivial base groups within the bound.
pub fn all_recipes(max_order: usize) -> Vec<Recipe> {
    let base = base_recipes(max_order);
    let mut out = base.clone();
    let nontrivial: Vec<&Recipe> = base.iter().filter(|r| r.order() > 1).collect();
    for (i, a) in nontrivial.iter().enumerate() {
        for b in &nontrivial[i..] {
            if a.order() * b.order() <= max_order {
                out.push(Recipe::Direct(Box::new((*a).clone()), Box::new((*b).clone())));
            }
        }
    }
    out
}

/// A deduplicated corpus and the discarded isomorphic copies.
#[derive(Debug, Clone)]
pub struct Corpus {
    pub groups: Vec<Group>,
    /// `(position of the kept representative, discarded copy)`.
    pub duplicates: Vec<(usize, Group)>,
}

/// Builds every recipe, then keeps the first group of each isomorphism
/// class in recipe order.
pub fn corpus_with_duplicates(max_order: usize) -> Corpus {
    let recipes = all_recipes(max_order);
    let built: Vec<(Group, Fingerprint)> = recipes
        .par_iter()
        .map(|r| {
            let g = r.build().expect("corpus recipes stay within bounds");
            let f = fingerprint(&g);
            (g, f)
        })
        .collect();
    let mut groups: Vec<Group> = Vec::new();
    let mut buckets: HashMap<Fingerprint, Vec<usize>> = HashMap::new();
    let mut duplicates = Vec::new();
    for (g, f) in built {
        // cyclic recipes are listed first, so every later cyclic group is a copy
        let bucket = buckets.entry(f).or_default();
        let hit = bucket.iter().copied().find(|&i| {
            let h: &Group = &groups[i];
            (g.is_cyclic() && h.is_cyclic()) || find_isomorphism(h, &g).is_some()
        });
        match hit {
            Some(i) => duplicates.push((i, g)),
            None => {
                bucket.push(groups.len());
                groups.push(g);
            }
        }
    }
    Corpus { groups, duplicates }
}

pub fn corpus_generate(max_order: usize) -> Vec<Group> {
    corpus_with_duplicates(max_order).groups
}
