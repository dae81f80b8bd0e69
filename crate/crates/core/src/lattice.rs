//! Subgroup lattices, maximal subgroups, the Frattini subgroup, cores and
//! minimal normal overgroups.
//!
//! Maximal subgroups come from one of two routes. A group whose minimal
//! normal subgroup `N` is abelian gets `maxes(G/N)` lifted through the
//! projection plus every complement of `N` (each of which is maximal). When a
//! nonabelian minimal normal subgroup is met, the full lattice is enumerated
//! by join closure of cyclic subgroups. [`maximal_subgroups_via_lattice`] runs
//! the second route unconditionally; tests use it as a cross-check.

use std::collections::{HashMap, HashSet};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::group::{Group, SubgroupSet};

/// Default abort threshold for full lattice enumeration.
pub const DEFAULT_LATTICE_LIMIT: usize = 1_000_000;

static LATTICE_LIMIT_OVERRIDE: AtomicUsize = AtomicUsize::new(0);

/// Overrides the lattice abort threshold for this process (0 restores the
/// environment/default lookup).
pub fn set_lattice_limit(limit: usize) {
    LATTICE_LIMIT_OVERRIDE.store(limit, Ordering::Relaxed);
}

/// The active threshold: an explicit override, else `GCOVER_MAX_LATTICE`,
/// else [`DEFAULT_LATTICE_LIMIT`].
pub fn lattice_limit() -> usize {
    match LATTICE_LIMIT_OVERRIDE.load(Ordering::Relaxed) {
        0 => std::env::var("GCOVER_MAX_LATTICE")
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .filter(|&v: &usize| v > 0)
            .unwrap_or(DEFAULT_LATTICE_LIMIT),
        v => v,
    }
}

/// Every subgroup of a group, sorted by `(size, bits)`.
#[derive(Debug, Clone)]
pub struct SubgroupLattice {
    pub parent_order: usize,
    subgroups: Vec<SubgroupSet>,
    maximal_indices: Vec<usize>,
    normal_flags: Vec<bool>,
}

impl SubgroupLattice {
    pub fn subgroups(&self) -> &[SubgroupSet] {
        &self.subgroups
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn maximal_indices(&self) -> &[usize] {
        &self.maximal_indices
    }

    pub fn normal_flags(&self) -> &[bool] {
        &self.normal_flags
    }

    pub fn position(&self, s: &SubgroupSet) -> Option<usize> {
        self.subgroups.binary_search(s).ok()
    }
}

/// Maximal subgroups in canonical order (index ascending, then bit order)
/// together with their normality.
#[derive(Debug, Clone)]
pub struct MaximalData {
    pub maximals: Vec<SubgroupSet>,
    pub normal: Vec<bool>,
    /// Conjugacy class id of each maximal, numbered as returned by
    /// [`subgroup_conjugacy_classes`].
    pub class_of: Vec<usize>,
}

impl MaximalData {
    /// `|G : M|` for the maximal at `pos`.
    pub fn index(&self, order: usize, pos: usize) -> usize {
        order / self.maximals[pos].size()
    }
}

fn cached<T>(cell: &std::sync::OnceLock<Arc<T>>, f: impl FnOnce() -> Result<T>) -> Result<Arc<T>> {
    if let Some(v) = cell.get() {
        return Ok(v.clone());
    }
    let v = Arc::new(f()?);
    let _ = cell.set(v);
    Ok(cell.get().unwrap().clone())
}

/// Full subgroup lattice by join closure, aborting past [`lattice_limit`].
pub fn all_subgroups(g: &Group) -> Result<Arc<SubgroupLattice>> {
    cached(&g.cache.lattice, || build_lattice(g, lattice_limit()))
}

/// As [`all_subgroups`] with an explicit threshold and no caching.
pub fn all_subgroups_with_limit(g: &Group, limit: usize) -> Result<SubgroupLattice> {
    build_lattice(g, limit)
}

fn build_lattice(g: &Group, limit: usize) -> Result<SubgroupLattice> {
    let n = g.order();
    let abort = || Error::Resource { what: "subgroup lattice size".into(), threshold: limit };
    let mut index: HashMap<Bits, usize> = HashMap::new();
    let mut subs: Vec<(SubgroupSet, Vec<usize>)> = Vec::new();

    // cyclic subgroups, one generator each
    let mut cyclic_gens = Vec::new();
    for x in 0..n {
        let c = g.closure_of([x]);
        if !index.contains_key(c.bits()) {
            index.insert(c.bits().clone(), subs.len());
            let gens = if x == g.identity() { vec![] } else { vec![x] };
            subs.push((c, gens));
            if x != g.identity() {
                cyclic_gens.push(x);
            }
            if subs.len() > limit {
                return Err(abort());
            }
        }
    }

    let mut i = 0;
    while i < subs.len() {
        let (h, hgens) = subs[i].clone();
        let elems = h.elements();
        let mut tried = HashSet::new();
        for &c in &cyclic_gens {
            if h.contains(c) {
                continue;
            }
            let mut gens = hgens.clone();
            gens.push(c);
            let (bits, el) = g.extend_parts(h.bits(), &elems, &gens);
            if !tried.insert(bits.clone()) || index.contains_key(&bits) {
                continue;
            }
            let j = SubgroupSet::from_raw(bits.clone(), el.len());
            index.insert(bits, subs.len());
            subs.push((j, gens));
            if subs.len() > limit {
                return Err(abort());
            }
        }
        i += 1;
    }

    let mut subgroups: Vec<SubgroupSet> = subs.into_iter().map(|(s, _)| s).collect();
    subgroups.sort();
    let maximal_indices = {
        let mut found: Vec<usize> = Vec::new();
        for (pos, s) in subgroups.iter().enumerate().rev() {
            if s.size() == n {
                continue;
            }
            if !found.iter().any(|&f| s.is_subgroup_of(&subgroups[f])) {
                found.push(pos);
            }
        }
        found.sort();
        found
    };
    let normal_flags = subgroups.iter().map(|s| g.is_normal_unchecked(s)).collect();
    Ok(SubgroupLattice { parent_order: n, subgroups, maximal_indices, normal_flags })
}

fn canonical_maximal_order(maxes: &mut [SubgroupSet]) {
    maxes.sort_by(|a, b| b.size().cmp(&a.size()).then_with(|| a.bits().cmp(b.bits())));
}

/// Maximal subgroups together with normality flags, cached per group.
pub fn maximal_data(g: &Group) -> Result<Arc<MaximalData>> {
    cached(&g.cache.maximals, || {
        let mut maximals = compute_maximals(g)?;
        canonical_maximal_order(&mut maximals);
        let normal = maximals.iter().map(|m| g.is_normal_unchecked(m)).collect();
        let mut class_of = vec![0; maximals.len()];
        for (id, class) in subgroup_conjugacy_classes(g, &maximals)?.into_iter().enumerate() {
            for i in class {
                class_of[i] = id;
            }
        }
        Ok(MaximalData { maximals, normal, class_of })
    })
}

pub fn maximal_subgroups(g: &Group) -> Result<Vec<SubgroupSet>> {
    Ok(maximal_data(g)?.maximals.clone())
}

/// Maximal subgroups read off the full lattice, in canonical order.
pub fn maximal_subgroups_via_lattice(g: &Group) -> Result<Vec<SubgroupSet>> {
    let lat = all_subgroups(g)?;
    let mut out: Vec<SubgroupSet> = lat.maximal_indices.iter().map(|&i| lat.subgroups[i].clone()).collect();
    canonical_maximal_order(&mut out);
    Ok(out)
}

pub fn m_count(g: &Group) -> Result<usize> {
    Ok(maximal_data(g)?.maximals.len())
}

fn compute_maximals(g: &Group) -> Result<Vec<SubgroupSet>> {
    if g.order() == 1 {
        return Ok(Vec::new());
    }
    let n = smallest_normal_closure(g);
    if n.size() == g.order() && !g.is_abelian() {
        // G is simple and nonabelian
        return maximal_subgroups_via_lattice(g);
    }
    let (nn, _) = g.subgroup_group(&n);
    if !nn.is_abelian() {
        return maximal_subgroups_via_lattice(g);
    }
    let (q, proj) = g.quotient_unchecked(&n);
    let mut out: Vec<SubgroupSet> = maximal_data(&q)?.maximals.iter().map(|m| g.preimage(&proj, m)).collect();
    out.extend(complements_of_normal(g, &n, &q, &proj, usize::MAX));
    Ok(out)
}

/// The smallest normal closure of a prime-order element, which is a minimal
/// normal subgroup. Ties go to the class listed first.
fn smallest_normal_closure(g: &Group) -> SubgroupSet {
    let mut best: Option<SubgroupSet> = None;
    for class in g.conjugacy_classes() {
        let x = class[0];
        let o = g.element_order(x);
        if o < 2 || !crate::arith::is_prime(o as u64) {
            continue;
        }
        let c = g.normal_closure([x]);
        if best.as_ref().is_none_or(|b| c.size() < b.size()) {
            best = Some(c);
        }
        if best.as_ref().unwrap().size() == o {
            break;
        }
    }
    best.expect("nontrivial group has an element of prime order")
}

/// All complements of the normal subgroup `n`, found by choosing one lift
/// in each coset of a generating set of `G/N`.
fn complements_of_normal(
    g: &Group,
    n: &SubgroupSet,
    q: &Group,
    proj: &crate::group::GroupHomomorphism,
    limit: usize,
) -> Vec<SubgroupSet> {
    let target = q.order();
    let qgens = q.generators().to_vec();
    // representative of each generator coset, and the partial spans' orders
    let mut reps = Vec::new();
    for &qg in &qgens {
        reps.push((0..g.order()).find(|&x| proj.images[x] == qg).unwrap());
    }
    let mut span_orders = Vec::new();
    for i in 0..qgens.len() {
        span_orders.push(q.closure_of(qgens[..=i].iter().copied()).size());
    }
    let nel = n.elements();
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn rec(
        g: &Group,
        reps: &[usize],
        nel: &[usize],
        span_orders: &[usize],
        target: usize,
        limit: usize,
        chosen: &mut Vec<usize>,
        cur: (Bits, Vec<usize>),
        out: &mut Vec<SubgroupSet>,
    ) {
        let i = chosen.len();
        if i == reps.len() {
            if cur.1.len() == target {
                out.push(SubgroupSet::from_raw(cur.0, target));
            }
            return;
        }
        for &y in nel {
            if out.len() >= limit {
                return;
            }
            let x = g.mul(reps[i], y);
            chosen.push(x);
            let next = g.extend_parts(&cur.0, &cur.1, chosen);
            if next.1.len() == span_orders[i] {
                rec(g, reps, nel, span_orders, target, limit, chosen, next, out);
            }
            chosen.pop();
        }
    }
    let mut start = Bits::new(g.order());
    start.insert(g.identity());
    rec(g, &reps, &nel, &span_orders, target, limit, &mut chosen, (start, vec![g.identity()]), &mut out);
    out
}

/// Some complement of the normal subgroup `n`, if one exists.
pub fn find_complement(g: &Group, n: &SubgroupSet) -> Result<Option<SubgroupSet>> {
    check_input(g, n)?;
    if !g.is_normal_unchecked(n) {
        return Err(Error::Precondition("complements are searched for normal subgroups only".into()));
    }
    let (q, proj) = g.quotient_unchecked(n);
    Ok(complements_of_normal(g, n, &q, &proj, 1).pop())
}

/// Intersection of all maximal subgroups.
pub fn frattini(g: &Group) -> Result<SubgroupSet> {
    let data = maximal_data(g)?;
    if data.maximals.is_empty() {
        return Ok(g.trivial_subgroup());
    }
    Ok(SubgroupSet::meet_all(g, &data.maximals))
}

/// Largest normal subgroup of `G` inside `m`.
pub fn core(g: &Group, m: &SubgroupSet) -> Result<SubgroupSet> {
    check_input(g, m)?;
    Ok(core_unchecked(g, m))
}

pub(crate) fn core_unchecked(g: &Group, m: &SubgroupSet) -> SubgroupSet {
    let mut acc = m.clone();
    let mut seen = HashSet::new();
    for x in 0..g.order() {
        if acc.is_trivial() {
            break;
        }
        let c = g.conjugate_subgroup(m, x);
        if seen.insert(c.bits().clone()) {
            acc = acc.meet(&c);
        }
    }
    acc
}

fn check_input(g: &Group, s: &SubgroupSet) -> Result<()> {
    if s.bits().len() != g.order() {
        return Err(Error::Input(format!(
            "subgroup over {} elements passed for a group of order {}",
            s.bits().len(),
            g.order()
        )));
    }
    Ok(())
}

/// Minimal members of `{N ⊴ G : C < N}`.
#[derive(Debug, Clone)]
pub struct MinimalNormalOver {
    pub minimal: Vec<SubgroupSet>,
}

impl MinimalNormalOver {
    pub fn is_unique(&self) -> bool {
        self.minimal.len() == 1
    }

    pub fn unique(&self) -> Option<&SubgroupSet> {
        if self.is_unique() {
            self.minimal.first()
        } else {
            None
        }
    }
}

pub fn minimal_normal_over(g: &Group, c: &SubgroupSet) -> Result<MinimalNormalOver> {
    check_input(g, c)?;
    if !g.is_normal_unchecked(c) {
        return Err(Error::Precondition("C is not normal".into()));
    }
    if c.size() == g.order() {
        return Err(Error::Precondition("C equals G".into()));
    }
    // each minimal normal overgroup is the normal closure of C and one of its elements
    let cg = g.subgroup_generators(c);
    let mut cands: Vec<SubgroupSet> = Vec::new();
    for class in g.conjugacy_classes() {
        let x = class[0];
        if c.contains(x) {
            continue;
        }
        let nc = g.normal_closure(cg.iter().copied().chain([x]));
        if !cands.contains(&nc) {
            cands.push(nc);
        }
    }
    cands.sort();
    let mut minimal: Vec<SubgroupSet> = Vec::new();
    for s in cands {
        if !minimal.iter().any(|m| m.is_subgroup_of(&s)) {
            minimal.push(s);
        }
    }
    Ok(MinimalNormalOver { minimal })
}

/// Minimal normal subgroups of `G`, sorted.
pub fn minimal_normal_subgroups(g: &Group) -> Vec<SubgroupSet> {
    if g.order() == 1 {
        return Vec::new();
    }
    minimal_normal_over(g, &g.trivial_subgroup()).expect("trivial subgroup is normal").minimal
}

/// All normal subgroups, sorted, as joins of normal closures of elements.
pub fn normal_subgroups(g: &Group) -> Result<Arc<Vec<SubgroupSet>>> {
    cached(&g.cache.normals, || {
        let limit = lattice_limit();
        let mut closures: Vec<SubgroupSet> = Vec::new();
        for class in g.conjugacy_classes() {
            let c = g.normal_closure([class[0]]);
            if !closures.contains(&c) {
                closures.push(c);
            }
        }
        let mut seen: HashSet<Bits> = closures.iter().map(|s| s.bits().clone()).collect();
        let mut all = closures.clone();
        let mut i = 0;
        while i < all.len() {
            for c in &closures {
                if c.is_subgroup_of(&all[i]) {
                    continue;
                }
                let j = g.join(&all[i], c);
                if seen.insert(j.bits().clone()) {
                    all.push(j);
                    if all.len() > limit {
                        return Err(Error::Resource { what: "normal subgroup count".into(), threshold: limit });
                    }
                }
            }
            i += 1;
        }
        all.sort();
        Ok(all)
    })
}

/// Partition of `subs` into conjugacy classes, as lists of positions in
/// `subs`. Classes are ordered by subgroup size and then by the smallest
/// member subgroup in bit order.
pub fn subgroup_conjugacy_classes(g: &Group, subs: &[SubgroupSet]) -> Result<Vec<Vec<usize>>> {
    for s in subs {
        check_input(g, s)?;
    }
    let mut assigned = vec![false; subs.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..subs.len() {
        if assigned[i] {
            continue;
        }
        assigned[i] = true;
        let mut class = vec![i];
        if !g.is_normal_unchecked(&subs[i]) {
            let orbit: HashSet<Bits> = (0..g.order()).map(|x| g.conjugate_subgroup(&subs[i], x).bits().clone()).collect();
            for j in i + 1..subs.len() {
                if !assigned[j] && subs[j].size() == subs[i].size() && orbit.contains(subs[j].bits()) {
                    assigned[j] = true;
                    class.push(j);
                }
            }
        }
        classes.push(class);
    }
    let key = |c: &Vec<usize>| {
        let smallest = c.iter().map(|&i| subs[i].bits()).min().unwrap();
        (subs[c[0]].size(), smallest.clone())
    };
    classes.sort_by_key(key);
    Ok(classes)
}

/// Whether two subgroups are conjugate in `G`.
pub fn are_conjugate(g: &Group, a: &SubgroupSet, b: &SubgroupSet) -> bool {
    a.size() == b.size() && (0..g.order()).any(|x| g.conjugate_subgroup(a, x) == *b)
}
