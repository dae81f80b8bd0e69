//! Finite groups given by complete Cayley tables, their subgroups, and the
//! elementary structural computations everything else is built on.
//!
//! Elements are the indices `0..order`. A [`Group`] is immutable once built;
//! derived data (element orders, conjugacy classes, a generating set, the
//! maximal subgroups, the normal subgroups) is computed on first request and
//! cached inside the instance.

use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::cover::SigmaResult;
use crate::lattice::{MaximalData, SubgroupLattice};

/// Largest group order supported anywhere in the crate.
pub const MAX_ORDER: usize = 2000;

/// Tables up to this order get an exhaustive associativity check.
const FULL_ASSOCIATIVITY_BOUND: usize = 256;

#[derive(Clone, Default)]
pub(crate) struct Caches {
    orders: OnceLock<Vec<u32>>,
    classes: OnceLock<Vec<Vec<usize>>>,
    generators: OnceLock<Vec<usize>>,
    pub(crate) maximals: OnceLock<Arc<MaximalData>>,
    pub(crate) normals: OnceLock<Arc<Vec<SubgroupSet>>>,
    pub(crate) lattice: OnceLock<Arc<SubgroupLattice>>,
    pub(crate) sigma: OnceLock<Option<usize>>,
    pub(crate) sigma_full: OnceLock<Arc<SigmaResult>>,
}

/// A finite group stored as its multiplication table.
#[derive(Clone)]
pub struct Group {
    order: usize,
    table: Vec<u16>,
    identity: usize,
    inverses: Vec<u16>,
    label: String,
    pub(crate) cache: Caches,
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for Group {}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("label", &self.label)
            .field("order", &self.order)
            .finish()
    }
}

/// Abelian / cyclic / soluble / nilpotent flags of a group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StructuralPredicates {
    pub is_abelian: bool,
    pub is_cyclic: bool,
    pub is_soluble: bool,
    pub is_nilpotent: bool,
}

impl Group {
    /// Builds a group from table rows, validating every group axiom.
    pub fn from_rows(rows: &[Vec<usize>], label: impl Into<String>) -> Result<Group> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        if order > MAX_ORDER {
            return Err(Error::OrderBound { order, bound: MAX_ORDER });
        }
        let mut table = Vec::with_capacity(order * order);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::InvalidTable(format!(
                    "row {r} has {} entries, expected {order}",
                    row.len()
                )));
            }
            for &x in row {
                if x >= order {
                    return Err(Error::InvalidTable(format!(
                        "row {r} contains entry {x} outside 0..{order}"
                    )));
                }
                table.push(x as u16);
            }
        }
        Group::from_flat(order, table, label)
    }

    /// Builds a group from a row-major flat table, validating every axiom.
    pub fn from_flat(order: usize, table: Vec<u16>, label: impl Into<String>) -> Result<Group> {
        if order == 0 || table.len() != order * order {
            return Err(Error::InvalidTable(format!(
                "table of length {} does not match order {order}",
                table.len()
            )));
        }
        if order > MAX_ORDER {
            return Err(Error::OrderBound { order, bound: MAX_ORDER });
        }
        check_latin(order, &table)?;
        let identity = find_identity(order, &table)
            .ok_or_else(|| Error::InvalidTable("no two-sided identity".into()))?;
        let inverses = compute_inverses(order, &table, identity)?;
        let g = Group {
            order,
            table,
            identity,
            inverses,
            label: label.into(),
            cache: Caches::default(),
        };
        g.check_associative()?;
        Ok(g)
    }

    /// Builds a group from a table known to be a group table (products,
    /// quotients, subgroup restrictions). Only cheap checks run in debug.
    pub(crate) fn from_flat_trusted(order: usize, table: Vec<u16>, label: impl Into<String>) -> Group {
        debug_assert_eq!(table.len(), order * order);
        debug_assert!(check_latin(order, &table).is_ok());
        let identity = find_identity(order, &table).expect("group table without identity");
        let inverses = compute_inverses(order, &table, identity).expect("group table without inverses");
        Group {
            order,
            table,
            identity,
            inverses,
            label: label.into(),
            cache: Caches::default(),
        }
    }

    /// Builds a trusted table from a product closure.
    pub(crate) fn from_fn_trusted(
        order: usize,
        label: impl Into<String>,
        mut f: impl FnMut(usize, usize) -> usize,
    ) -> Group {
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                table.push(f(a, b) as u16);
            }
        }
        Group::from_flat_trusted(order, table, label)
    }

    /// Re-runs the full axiom check (Latin square, identity, inverses,
    /// associativity).
    pub fn validate(&self) -> Result<()> {
        check_latin(self.order, &self.table)?;
        let e = find_identity(self.order, &self.table)
            .ok_or_else(|| Error::InvalidTable("no two-sided identity".into()))?;
        if e != self.identity {
            return Err(Error::InvalidTable("identity mismatch".into()));
        }
        for x in 0..self.order {
            if self.mul(x, self.inv(x)) != e || self.mul(self.inv(x), x) != e {
                return Err(Error::InvalidTable(format!("bad inverse for {x}")));
            }
        }
        self.check_associative()
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.order;
        let fail = |a, b, c| {
            Err(Error::InvalidTable(format!(
                "associativity fails for ({a}, {b}, {c})"
            )))
        };
        if n <= FULL_ASSOCIATIVITY_BOUND {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.mul(a, b);
                    for c in 0..n {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            return fail(a, b, c);
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ n as u64);
            for _ in 0..10 * n * n {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                    return fail(a, b, c);
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    pub fn inverses(&self) -> Vec<usize> {
        self.inverses.iter().map(|&x| x as usize).collect()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Group {
        self.label = label.into();
        self
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.order)
            .map(|r| r.iter().map(|&x| x as usize).collect())
            .collect()
    }

    /// Hex SHA-256 of the table (little-endian u16 entries).
    pub fn table_digest(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.order as u64).to_le_bytes());
        for &x in &self.table {
            h.update(x.to_le_bytes());
        }
        hex::encode(h.finalize())
    }

    pub fn pow(&self, x: usize, k: usize) -> usize {
        let mut acc = self.identity;
        let mut base = x;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// `g x g⁻¹`.
    #[inline]
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    #[inline]
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn element_orders(&self) -> &[u32] {
        self.cache.orders.get_or_init(|| {
            (0..self.order)
                .map(|x| {
                    let mut k = 1u32;
                    let mut y = x;
                    while y != self.identity {
                        y = self.mul(y, x);
                        k += 1;
                    }
                    k
                })
                .collect()
        })
    }

    #[inline]
    pub fn element_order(&self, x: usize) -> usize {
        self.element_orders()[x] as usize
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        self.element_orders().iter().any(|&o| o as usize == self.order)
    }

    /// A small deterministic generating set: elements are scanned by
    /// decreasing order (then index) and kept when they enlarge the span.
    pub fn generators(&self) -> &[usize] {
        self.cache.generators.get_or_init(|| {
            let orders = self.element_orders();
            let mut cand: Vec<usize> = (0..self.order).collect();
            cand.sort_by_key(|&x| (std::cmp::Reverse(orders[x]), x));
            let mut span = self.trivial_parts();
            let mut gens = Vec::new();
            for x in cand {
                if span.1.len() == self.order {
                    break;
                }
                if !span.0.contains(x) {
                    gens.push(x);
                    span = self.extend_parts(&span.0, &span.1, &gens);
                }
            }
            gens
        })
    }

    pub fn conjugacy_classes(&self) -> &[Vec<usize>] {
        self.cache.classes.get_or_init(|| {
            let n = self.order;
            let mut seen = Bits::new(n);
            let mut classes = Vec::new();
            for x in 0..n {
                if seen.contains(x) {
                    continue;
                }
                let mut class = Bits::new(n);
                for g in 0..n {
                    class.insert(self.conjugate(x, g));
                }
                seen.union_with(&class);
                classes.push(class.iter().collect::<Vec<_>>());
            }
            classes.sort_by_key(|c| (c.len(), c[0]));
            classes
        })
    }

    // ----- subgroups -------------------------------------------------------

    fn trivial_parts(&self) -> (Bits, Vec<usize>) {
        let mut b = Bits::new(self.order);
        b.insert(self.identity);
        (b, vec![self.identity])
    }

    /// Dimino extension: given a subgroup `H` (as bits and element list) and a
    /// generating set `gens` of the target group `J ⊇ H` (which must include
    /// generators of `H`), returns `J` by adding right cosets `H x`.
    pub(crate) fn extend_parts(&self, h_bits: &Bits, h_elems: &[usize], gens: &[usize]) -> (Bits, Vec<usize>) {
        let mut bits = h_bits.clone();
        let mut elems = h_elems.to_vec();
        let mut reps = vec![self.identity];
        let mut i = 0;
        while i < reps.len() {
            let r = reps[i];
            i += 1;
            for &g in gens {
                let x = self.mul(r, g);
                if !bits.contains(x) {
                    for &h in h_elems {
                        let y = self.mul(h, x);
                        bits.insert(y);
                        elems.push(y);
                    }
                    reps.push(x);
                }
            }
        }
        (bits, elems)
    }

    pub(crate) fn closure_parts(&self, seed: impl IntoIterator<Item = usize>) -> (Bits, Vec<usize>, Vec<usize>) {
        let (mut bits, mut elems) = self.trivial_parts();
        let mut gens = Vec::new();
        for s in seed {
            if !bits.contains(s) {
                gens.push(s);
                let (b, e) = self.extend_parts(&bits, &elems, &gens);
                bits = b;
                elems = e;
            }
        }
        (bits, elems, gens)
    }

    pub(crate) fn closure_of(&self, seed: impl IntoIterator<Item = usize>) -> SubgroupSet {
        let (bits, elems, _) = self.closure_parts(seed);
        SubgroupSet::from_raw(bits, elems.len())
    }

    /// Smallest subgroup containing `seed`.
    pub fn subgroup_closure(&self, seed: &[usize]) -> Result<SubgroupSet> {
        for &s in seed {
            self.check_index(s)?;
        }
        Ok(self.closure_of(seed.iter().copied()))
    }

    pub(crate) fn check_index(&self, x: usize) -> Result<()> {
        if x >= self.order {
            Err(Error::IndexOutOfRange { index: x, order: self.order })
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_subgroup(&self, s: &SubgroupSet) -> Result<()> {
        if s.members.len() != self.order {
            return Err(Error::NotSubgroup(format!(
                "membership vector of length {} for a group of order {}",
                s.members.len(),
                self.order
            )));
        }
        Ok(())
    }

    pub fn trivial_subgroup(&self) -> SubgroupSet {
        let (b, _) = self.trivial_parts();
        SubgroupSet::from_raw(b, 1)
    }

    pub fn whole(&self) -> SubgroupSet {
        SubgroupSet::from_raw(Bits::full(self.order), self.order)
    }

    /// `⟨A ∪ B⟩`.
    pub fn join(&self, a: &SubgroupSet, b: &SubgroupSet) -> SubgroupSet {
        if a.members.is_subset(&b.members) {
            return b.clone();
        }
        if b.members.is_subset(&a.members) {
            return a.clone();
        }
        let elems: Vec<usize> = a.members.iter().collect();
        let mut gens = self.subgroup_generators(a);
        let (mut bits, mut el) = (a.members.clone(), elems);
        for x in self.subgroup_generators(b) {
            if !bits.contains(x) {
                gens.push(x);
                let (nb, ne) = self.extend_parts(&bits, &el, &gens);
                bits = nb;
                el = ne;
            }
        }
        SubgroupSet::from_raw(bits, el.len())
    }

    /// A generating set of a subgroup, chosen greedily by element index.
    pub fn subgroup_generators(&self, s: &SubgroupSet) -> Vec<usize> {
        let (_, _, gens) = self.closure_parts(s.members.iter());
        gens
    }

    pub fn is_normal(&self, s: &SubgroupSet) -> Result<bool> {
        self.check_subgroup(s)?;
        Ok(self.is_normal_unchecked(s))
    }

    pub(crate) fn is_normal_unchecked(&self, s: &SubgroupSet) -> bool {
        if s.size == 1 || s.size == self.order {
            return true;
        }
        let sgens = self.subgroup_generators(s);
        self.generators()
            .iter()
            .all(|&g| sgens.iter().all(|&x| s.contains(self.conjugate(x, g))))
    }

    /// `g S g⁻¹`.
    pub fn conjugate_subgroup(&self, s: &SubgroupSet, g: usize) -> SubgroupSet {
        let mut b = Bits::new(self.order);
        for x in s.members.iter() {
            b.insert(self.conjugate(x, g));
        }
        SubgroupSet::from_raw(b, s.size)
    }

    pub fn normalizer(&self, s: &SubgroupSet) -> SubgroupSet {
        let sgens = self.subgroup_generators(s);
        let elems = (0..self.order).filter(|&g| sgens.iter().all(|&x| s.contains(self.conjugate(x, g))));
        self.closure_of(elems)
    }

    /// Smallest normal subgroup containing `seed`.
    pub fn normal_closure(&self, seed: impl IntoIterator<Item = usize>) -> SubgroupSet {
        let (mut bits, mut elems, mut sg) = self.closure_parts(seed);
        let ggens = self.generators().to_vec();
        loop {
            let mut grown = false;
            let snapshot = sg.clone();
            for &x in &snapshot {
                for &g in &ggens {
                    let c = self.conjugate(x, g);
                    if !bits.contains(c) {
                        sg.push(c);
                        let (b, e) = self.extend_parts(&bits, &elems, &sg);
                        bits = b;
                        elems = e;
                        grown = true;
                    }
                }
            }
            if !grown {
                break;
            }
        }
        SubgroupSet::from_raw(bits, elems.len())
    }

    pub fn center(&self) -> SubgroupSet {
        let gens = self.generators();
        let mut b = Bits::new(self.order);
        let mut size = 0;
        for x in 0..self.order {
            if gens.iter().all(|&g| self.mul(x, g) == self.mul(g, x)) {
                b.insert(x);
                size += 1;
            }
        }
        SubgroupSet::from_raw(b, size)
    }

    /// Centralizer in `G` of the subgroup `s`.
    pub fn centralizer(&self, s: &SubgroupSet) -> SubgroupSet {
        let sg = self.subgroup_generators(s);
        let mut b = Bits::new(self.order);
        let mut size = 0;
        for x in 0..self.order {
            if sg.iter().all(|&g| self.mul(x, g) == self.mul(g, x)) {
                b.insert(x);
                size += 1;
            }
        }
        SubgroupSet::from_raw(b, size)
    }

    /// `[A, B]`, the subgroup generated by all `[a, b]`.
    pub fn subgroup_commutator(&self, a: &SubgroupSet, b: &SubgroupSet) -> Result<SubgroupSet> {
        self.check_subgroup(a)?;
        self.check_subgroup(b)?;
        Ok(self.commutator_unchecked(a, b))
    }

    pub(crate) fn commutator_unchecked(&self, a: &SubgroupSet, b: &SubgroupSet) -> SubgroupSet {
        let mut seed = Bits::new(self.order);
        for x in a.members.iter() {
            for y in b.members.iter() {
                seed.insert(self.commutator(x, y));
            }
        }
        self.closure_of(seed.iter())
    }

    pub fn derived_subgroup(&self) -> SubgroupSet {
        // [G, G] is the normal closure of commutators of generators.
        let gens = self.generators();
        let mut seed = Vec::new();
        for &a in gens {
            for &b in gens {
                seed.push(self.commutator(a, b));
            }
        }
        self.normal_closure(seed)
    }

    /// `G = G⁽⁰⁾ ≥ G⁽¹⁾ ≥ …` until it stabilises; the last entry is the
    /// perfect core (trivial exactly when `G` is soluble).
    pub fn derived_series(&self) -> Vec<SubgroupSet> {
        let mut series = vec![self.whole()];
        loop {
            let cur = series.last().unwrap();
            let next = self.commutator_unchecked(cur, cur);
            if next == *cur {
                break;
            }
            series.push(next);
        }
        series
    }

    /// `γ₁ = G, γᵢ₊₁ = [γᵢ, G]` until it stabilises.
    pub fn lower_central_series(&self) -> Vec<SubgroupSet> {
        let whole = self.whole();
        let mut series = vec![whole.clone()];
        loop {
            let cur = series.last().unwrap();
            let next = if cur.size == self.order {
                self.derived_subgroup()
            } else {
                self.commutator_unchecked(cur, &whole)
            };
            if next == *cur {
                break;
            }
            series.push(next);
        }
        series
    }

    pub fn derived_length(&self) -> Option<usize> {
        let s = self.derived_series();
        (s.last().unwrap().size == 1).then(|| s.len() - 1)
    }

    pub fn is_soluble(&self) -> bool {
        self.derived_series().last().unwrap().size == 1
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().unwrap().size == 1
    }

    pub fn structural_predicates(&self) -> StructuralPredicates {
        let is_abelian = self.is_abelian();
        StructuralPredicates {
            is_abelian,
            is_cyclic: self.is_cyclic(),
            is_soluble: is_abelian || self.is_soluble(),
            is_nilpotent: is_abelian || self.is_nilpotent(),
        }
    }

    /// Coset group `G/N` and its projection. Cosets are numbered by their
    /// minimal element index.
    pub fn quotient(&self, n: &SubgroupSet) -> Result<(Group, GroupHomomorphism)> {
        self.check_subgroup(n)?;
        if !self.is_normal_unchecked(n) {
            return Err(Error::Precondition("quotient by a non-normal subgroup".into()));
        }
        Ok(self.quotient_unchecked(n))
    }

    pub(crate) fn quotient_unchecked(&self, n: &SubgroupSet) -> (Group, GroupHomomorphism) {
        const UNSET: usize = usize::MAX;
        let nel: Vec<usize> = n.members.iter().collect();
        let mut coset = vec![UNSET; self.order];
        let mut reps = Vec::new();
        for x in 0..self.order {
            if coset[x] != UNSET {
                continue;
            }
            let id = reps.len();
            reps.push(x);
            for &y in &nel {
                coset[self.mul(x, y)] = id;
            }
        }
        let q = reps.len();
        let label = format!("{}/N{}", self.label, n.size);
        let group = Group::from_fn_trusted(q, label, |a, b| coset[self.mul(reps[a], reps[b])]);
        (group, GroupHomomorphism { images: coset })
    }

    pub fn inner_automorphism_group(&self) -> Group {
        let z = self.center();
        let (q, _) = self.quotient_unchecked(&z);
        q.with_label(format!("Inn({})", self.label))
    }

    /// The subgroup `s` as a group in its own right, together with the list
    /// of parent elements in the order used for the new indices.
    pub fn subgroup_group(&self, s: &SubgroupSet) -> (Group, Vec<usize>) {
        let elems: Vec<usize> = s.members.iter().collect();
        let mut pos = vec![u16::MAX; self.order];
        for (i, &x) in elems.iter().enumerate() {
            pos[x] = i as u16;
        }
        let label = format!("{}[{}]", self.label, s.size);
        let g = Group::from_fn_trusted(elems.len(), label, |a, b| pos[self.mul(elems[a], elems[b])] as usize);
        (g, elems)
    }

    /// `A / B` for subgroups `B ⊴ A ≤ G`, built as a standalone group.
    pub fn section(&self, a: &SubgroupSet, b: &SubgroupSet) -> Result<Group> {
        if !b.is_subgroup_of(a) {
            return Err(Error::Precondition("section A/B needs B ≤ A".into()));
        }
        let (ag, emb) = self.subgroup_group(a);
        let mut pos = vec![usize::MAX; self.order];
        for (i, &x) in emb.iter().enumerate() {
            pos[x] = i;
        }
        let bb = SubgroupSet::from_raw(Bits::from_indices(ag.order(), b.members.iter().map(|x| pos[x])), b.size);
        let (q, _) = ag.quotient(&bb)?;
        Ok(q)
    }

    /// Preimage under `hom` of a subgroup of the image group.
    pub fn preimage(&self, hom: &GroupHomomorphism, target: &SubgroupSet) -> SubgroupSet {
        let mut b = Bits::new(self.order);
        let mut size = 0;
        for x in 0..self.order {
            if target.contains(hom.images[x]) {
                b.insert(x);
                size += 1;
            }
        }
        SubgroupSet::from_raw(b, size)
    }
}

fn check_latin(order: usize, table: &[u16]) -> Result<()> {
    let mut seen = vec![0u32; order];
    let mut stamp = 0u32;
    for r in 0..order {
        stamp += 1;
        for c in 0..order {
            let x = table[r * order + c] as usize;
            if x >= order {
                return Err(Error::InvalidTable(format!("row {r} has out-of-range entry {x}")));
            }
            if seen[x] == stamp {
                return Err(Error::InvalidTable(format!("row {r} repeats entry {x}")));
            }
            seen[x] = stamp;
        }
    }
    for c in 0..order {
        stamp += 1;
        for r in 0..order {
            let x = table[r * order + c] as usize;
            if seen[x] == stamp {
                return Err(Error::InvalidTable(format!("column {c} repeats entry {x}")));
            }
            seen[x] = stamp;
        }
    }
    Ok(())
}

fn find_identity(order: usize, table: &[u16]) -> Option<usize> {
    (0..order).find(|&e| {
        (0..order).all(|x| table[e * order + x] as usize == x && table[x * order + e] as usize == x)
    })
}

fn compute_inverses(order: usize, table: &[u16], identity: usize) -> Result<Vec<u16>> {
    (0..order)
        .map(|x| {
            (0..order)
                .find(|&y| table[x * order + y] as usize == identity && table[y * order + x] as usize == identity)
                .map(|y| y as u16)
                .ok_or_else(|| Error::InvalidTable(format!("element {x} has no inverse")))
        })
        .collect()
}

/// Membership bit-vector of a subgroup with a cached order. The fields are
/// private, so every value is closed under products and inverses by
/// construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubgroupSet {
    size: usize,
    members: Bits,
}

/// Orders by `(size, bit-vector lexicographic)`.
impl Ord for SubgroupSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.size.cmp(&other.size).then_with(|| self.members.cmp(&other.members))
    }
}

impl PartialOrd for SubgroupSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for SubgroupSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(|{}| {:?})", self.size, self.members)
    }
}

impl SubgroupSet {
    pub(crate) fn from_raw(members: Bits, size: usize) -> SubgroupSet {
        debug_assert_eq!(members.count(), size);
        SubgroupSet { size, members }
    }

    /// Validates that `members` is a subgroup of `g`.
    pub fn from_members(g: &Group, members: &[usize]) -> Result<SubgroupSet> {
        let mut bits = Bits::new(g.order());
        for &x in members {
            g.check_index(x)?;
            bits.insert(x);
        }
        if !bits.contains(g.identity()) {
            return Err(Error::NotSubgroup("identity missing".into()));
        }
        let elems: Vec<usize> = bits.iter().collect();
        for &a in &elems {
            if !bits.contains(g.inv(a)) {
                return Err(Error::NotSubgroup(format!("inverse of {a} missing")));
            }
            for &b in &elems {
                if !bits.contains(g.mul(a, b)) {
                    return Err(Error::NotSubgroup(format!("product of {a} and {b} missing")));
                }
            }
        }
        let size = elems.len();
        if g.order() % size != 0 {
            return Err(Error::NotSubgroup("order does not divide the group order".into()));
        }
        Ok(SubgroupSet { size, members: bits })
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter()
    }

    pub fn elements(&self) -> Vec<usize> {
        self.members.iter().collect()
    }

    pub fn bits(&self) -> &Bits {
        &self.members
    }

    pub fn min_member(&self) -> usize {
        self.members.first().unwrap_or(0)
    }

    pub fn is_trivial(&self) -> bool {
        self.size == 1
    }

    pub fn is_subgroup_of(&self, other: &SubgroupSet) -> bool {
        self.size <= other.size && self.members.is_subset(&other.members)
    }

    /// `A ∩ B`.
    pub fn meet(&self, other: &SubgroupSet) -> SubgroupSet {
        let members = self.members.intersection(&other.members);
        let size = members.count();
        SubgroupSet { size, members }
    }

    /// Intersection of a family; the whole group for an empty family.
    pub fn meet_all<'a>(g: &Group, subs: impl IntoIterator<Item = &'a SubgroupSet>) -> SubgroupSet {
        let mut acc = g.whole();
        for s in subs {
            acc = acc.meet(s);
        }
        acc
    }
}

/// A map between element indices of two groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHomomorphism {
    pub images: Vec<usize>,
}

impl GroupHomomorphism {
    pub fn identity(g: &Group) -> Self {
        GroupHomomorphism { images: (0..g.order()).collect() }
    }

    /// Checks `φ(ab) = φ(a)φ(b)` on every pair.
    pub fn is_homomorphism(&self, source: &Group, target: &Group) -> bool {
        if self.images.len() != source.order() || self.images.iter().any(|&x| x >= target.order()) {
            return false;
        }
        let n = source.order();
        (0..n).all(|a| {
            (0..n).all(|b| self.images[source.mul(a, b)] == target.mul(self.images[a], self.images[b]))
        })
    }

    pub fn kernel(&self, source: &Group, target: &Group) -> SubgroupSet {
        let e = target.identity();
        let ker: Vec<usize> = (0..source.order()).filter(|&x| self.images[x] == e).collect();
        source.closure_of(ker)
    }

    pub fn is_bijective(&self, target: &Group) -> bool {
        let mut seen = Bits::new(target.order());
        self.images.len() == target.order() && self.images.iter().all(|&x| seen.insert(x))
    }

    pub fn inverse(&self) -> Option<GroupHomomorphism> {
        let mut inv = vec![usize::MAX; self.images.len()];
        for (a, &b) in self.images.iter().enumerate() {
            if b >= inv.len() || inv[b] != usize::MAX {
                return None;
            }
            inv[b] = a;
        }
        Some(GroupHomomorphism { images: inv })
    }
}
