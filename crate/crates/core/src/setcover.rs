//! Exact minimum set cover by branch and bound.
//!
//! Elements that lie in exactly the same sets are merged before the search,
//! so the effective universe is the set of membership patterns. Branching
//! picks the uncovered pattern with the fewest candidate sets and tries the
//! candidates in the caller's order; a candidate tried earlier at a node is
//! excluded from the later subtrees, so each cover is reached at most once.

use std::collections::HashMap;

use crate::bits::Bits;

/// A cover instance over element classes.
#[derive(Debug, Clone)]
pub struct CoverProblem {
    classes: usize,
    sets: Vec<Bits>,
    /// class → sets containing it, ascending
    containing: Vec<Vec<usize>>,
}

impl CoverProblem {
    /// Builds the class-level instance for covering `universe` with `sets`
    /// (all bit vectors of the same length). Returns `None` when some
    /// element of the universe lies in no set.
    pub fn new(universe: &Bits, sets: &[&Bits]) -> Option<CoverProblem> {
        let mut pattern_id: HashMap<Vec<u32>, usize> = HashMap::new();
        let mut containing: Vec<Vec<usize>> = Vec::new();
        let mut class_members: Vec<usize> = Vec::new();
        for x in universe.iter() {
            let pat: Vec<u32> = (0..sets.len()).filter(|&s| sets[s].contains(x)).map(|s| s as u32).collect();
            if pat.is_empty() {
                return None;
            }
            if !pattern_id.contains_key(&pat) {
                pattern_id.insert(pat.clone(), containing.len());
                containing.push(pat.iter().map(|&s| s as usize).collect());
                class_members.push(x);
            }
        }
        let classes = containing.len();
        let mut class_sets = vec![Bits::new(classes); sets.len()];
        for (c, list) in containing.iter().enumerate() {
            for &s in list {
                class_sets[s].insert(c);
            }
        }
        Some(CoverProblem { classes, sets: class_sets, containing })
    }

    pub fn class_count(&self) -> usize {
        self.classes
    }

    pub fn set_count(&self) -> usize {
        self.sets.len()
    }

    fn greedy(&self, forced: &[usize]) -> Vec<usize> {
        let mut uncovered = Bits::full(self.classes);
        let mut chosen = forced.to_vec();
        for &s in forced {
            uncovered.difference_with(&self.sets[s]);
        }
        while !uncovered.is_empty() {
            let best = (0..self.sets.len())
                .max_by_key(|&s| (self.sets[s].intersection_count(&uncovered), std::cmp::Reverse(s)))
                .unwrap();
            chosen.push(best);
            uncovered.difference_with(&self.sets[best]);
        }
        chosen.sort();
        chosen.dedup();
        chosen
    }

    /// A minimum cover containing every set in `forced`, as sorted set
    /// positions.
    pub fn minimum_with(&self, forced: &[usize]) -> Vec<usize> {
        let mut best = self.greedy(forced);
        let mut uncovered = Bits::full(self.classes);
        for &s in forced {
            uncovered.difference_with(&self.sets[s]);
        }
        let mut chosen = forced.to_vec();
        let mut excluded = Bits::new(self.sets.len());
        for &s in forced {
            excluded.insert(s);
        }
        self.search_min(&uncovered, &mut chosen, &mut excluded, &mut best);
        best.sort();
        best
    }

    pub fn minimum(&self) -> Vec<usize> {
        self.minimum_with(&[])
    }

    /// Lower bound on the sets still needed: ceil(uncovered / best single
    /// coverage). `None` when some allowed set must exist but none helps.
    fn lower_bound(&self, uncovered: &Bits, excluded: &Bits) -> Option<usize> {
        let rem = uncovered.count();
        if rem == 0 {
            return Some(0);
        }
        let best = (0..self.sets.len())
            .filter(|&s| !excluded.contains(s))
            .map(|s| self.sets[s].intersection_count(uncovered))
            .max()
            .unwrap_or(0);
        (best > 0).then(|| rem.div_ceil(best))
    }

    /// Uncovered class with the fewest allowed candidates, and those
    /// candidates.
    fn branch_class(&self, uncovered: &Bits, excluded: &Bits) -> Vec<usize> {
        let mut best: Option<Vec<usize>> = None;
        for c in uncovered.iter() {
            let cands: Vec<usize> = self.containing[c].iter().copied().filter(|&s| !excluded.contains(s)).collect();
            if best.as_ref().is_none_or(|b| cands.len() < b.len()) {
                let done = cands.len() <= 1;
                best = Some(cands);
                if done {
                    break;
                }
            }
        }
        best.unwrap_or_default()
    }

    fn search_min(&self, uncovered: &Bits, chosen: &mut Vec<usize>, excluded: &mut Bits, best: &mut Vec<usize>) {
        if uncovered.is_empty() {
            if chosen.len() < best.len() {
                *best = chosen.clone();
            }
            return;
        }
        let Some(lb) = self.lower_bound(uncovered, excluded) else { return };
        if chosen.len() + lb >= best.len() {
            return;
        }
        let cands = self.branch_class(uncovered, excluded);
        let mut newly = Vec::new();
        for &s in &cands {
            let mut next = uncovered.clone();
            next.difference_with(&self.sets[s]);
            chosen.push(s);
            self.search_min(&next, chosen, excluded, best);
            chosen.pop();
            excluded.insert(s);
            newly.push(s);
        }
        for s in newly {
            excluded.remove(s);
        }
    }

    /// Every cover with exactly `k` sets, where `k` is the minimum cover
    /// size, stopping after `cap` covers. Returns the covers (each sorted,
    /// list sorted) and whether the enumeration is complete.
    pub fn enumerate_minimum(&self, k: usize, cap: usize) -> (Vec<Vec<usize>>, bool) {
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        let mut excluded = Bits::new(self.sets.len());
        let complete = self.search_all(&Bits::full(self.classes), k, cap, &mut chosen, &mut excluded, &mut out);
        for c in &mut out {
            c.sort();
        }
        out.sort();
        (out, complete)
    }

    fn search_all(
        &self,
        uncovered: &Bits,
        k: usize,
        cap: usize,
        chosen: &mut Vec<usize>,
        excluded: &mut Bits,
        out: &mut Vec<Vec<usize>>,
    ) -> bool {
        if uncovered.is_empty() {
            if out.len() >= cap {
                return false;
            }
            out.push(chosen.clone());
            return true;
        }
        let Some(lb) = self.lower_bound(uncovered, excluded) else { return true };
        if chosen.len() + lb > k {
            return true;
        }
        let cands = self.branch_class(uncovered, excluded);
        let mut newly = Vec::new();
        let mut complete = true;
        for &s in &cands {
            let mut next = uncovered.clone();
            next.difference_with(&self.sets[s]);
            chosen.push(s);
            let ok = self.search_all(&next, k, cap, chosen, excluded, out);
            chosen.pop();
            if !ok {
                complete = false;
                break;
            }
            excluded.insert(s);
            newly.push(s);
        }
        for s in newly {
            excluded.remove(s);
        }
        complete
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn problem(n: usize, sets: &[&[usize]]) -> Option<CoverProblem> {
        let bits: Vec<Bits> = sets.iter().map(|s| Bits::from_indices(n, s.iter().copied())).collect();
        let refs: Vec<&Bits> = bits.iter().collect();
        CoverProblem::new(&Bits::full(n), &refs)
    }

    #[test]
    fn greedy_is_not_optimal_but_search_is() {
        // greedy takes the big middle set first and needs three
        let p = problem(6, &[&[0, 1, 2], &[3, 4, 5], &[1, 2, 3, 4]]).unwrap();
        assert_eq!(p.minimum(), vec![0, 1]);
        let (all, complete) = p.enumerate_minimum(2, 100);
        assert!(complete);
        assert_eq!(all, vec![vec![0, 1]]);
    }

    #[test]
    fn enumeration_finds_each_cover_once() {
        // the three lines of a triangle, each pair covers all vertices
        let p = problem(3, &[&[0, 1], &[1, 2], &[0, 2]]).unwrap();
        assert_eq!(p.minimum().len(), 2);
        let (all, complete) = p.enumerate_minimum(2, 100);
        assert!(complete);
        assert_eq!(all, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        let (capped, complete) = p.enumerate_minimum(2, 2);
        assert!(!complete);
        assert_eq!(capped.len(), 2);
    }

    #[test]
    fn infeasible_and_forced() {
        assert!(problem(3, &[&[0, 1]]).is_none());
        let p = problem(4, &[&[0, 1, 2, 3], &[0], &[1, 2, 3]]).unwrap();
        assert_eq!(p.minimum(), vec![0]);
        assert_eq!(p.minimum_with(&[1]), vec![0, 1]);
        assert_eq!(p.class_count(), 2);
    }
}
