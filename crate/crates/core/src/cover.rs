//! Covering numbers, minimal covers by maximal subgroups, and the checks on
//! the shape of those covers.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::group::{Group, SubgroupSet};
use crate::lattice::{maximal_data, minimal_normal_subgroups, MaximalData};
use crate::record::{ids, Counterexample, VerificationRecord};
use crate::setcover::CoverProblem;

/// Default cap on enumerated minimal covers.
pub const WITNESS_CAP: usize = 10_000;

static WITNESS_CAP_OVERRIDE: AtomicUsize = AtomicUsize::new(0);

/// Overrides the witness cap used by [`sigma`] (0 restores the default).
/// Groups whose covers were already enumerated keep their cached result.
pub fn set_witness_cap(cap: usize) {
    WITNESS_CAP_OVERRIDE.store(cap, Ordering::Relaxed);
}

pub fn witness_cap() -> usize {
    match WITNESS_CAP_OVERRIDE.load(Ordering::Relaxed) {
        0 => WITNESS_CAP,
        v => v,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sigma {
    Finite(usize),
    Infinite,
}

impl Sigma {
    pub fn finite(self) -> Option<usize> {
        match self {
            Sigma::Finite(n) => Some(n),
            Sigma::Infinite => None,
        }
    }
}

impl std::fmt::Display for Sigma {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Sigma::Finite(n) => write!(f, "{n}"),
            Sigma::Infinite => f.write_str("INFINITE"),
        }
    }
}

/// `σ(G)` with minimal covers given as sorted positions into the canonical
/// maximal-subgroup list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaResult {
    pub value: Sigma,
    pub witnesses: Vec<Vec<usize>>,
    /// `false` when the enumeration stopped at the cap.
    pub exhaustive: bool,
}

fn full_problem(g: &Group, md: &MaximalData) -> CoverProblem {
    let sets: Vec<&Bits> = md.maximals.iter().map(|m| m.bits()).collect();
    CoverProblem::new(&Bits::full(g.order()), &sets).expect("a non-cyclic group is the union of its maximals")
}

fn no_cover(g: &Group) -> bool {
    g.order() == 1 || g.is_cyclic()
}

/// Cached `σ(G)` with witnesses up to [`witness_cap`].
pub fn sigma(g: &Group) -> Result<Arc<SigmaResult>> {
    if let Some(v) = g.cache.sigma_full.get() {
        return Ok(v.clone());
    }
    let r = Arc::new(sigma_with_cap(g, witness_cap())?);
    let _ = g.cache.sigma_full.set(r);
    Ok(g.cache.sigma_full.get().unwrap().clone())
}

pub fn sigma_with_cap(g: &Group, cap: usize) -> Result<SigmaResult> {
    if no_cover(g) {
        return Ok(SigmaResult { value: Sigma::Infinite, witnesses: vec![], exhaustive: true });
    }
    let md = maximal_data(g)?;
    let p = full_problem(g, &md);
    let k = sigma_value(g)?.unwrap();
    let (witnesses, exhaustive) = p.enumerate_minimum(k, cap);
    Ok(SigmaResult { value: Sigma::Finite(k), witnesses, exhaustive })
}

/// `σ(G)`, `None` for cyclic groups; cached, no witness enumeration.
pub fn sigma_value(g: &Group) -> Result<Option<usize>> {
    if let Some(v) = g.cache.sigma.get() {
        return Ok(*v);
    }
    let v = if no_cover(g) {
        None
    } else {
        let md = maximal_data(g)?;
        Some(full_problem(g, &md).minimum().len())
    };
    let _ = g.cache.sigma.set(v);
    Ok(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum CoverClass {
    Conjugate,
    Normal,
    Other,
}

/// Kind of a σ-cover and its sorted index sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverKind {
    pub kind: CoverClass,
    pub indices: Vec<usize>,
}

/// Classifies a σ-cover given as maximal subgroups.
pub fn classify_sigma_cover(g: &Group, cover: &[SubgroupSet]) -> Result<CoverKind> {
    let md = maximal_data(g)?;
    let s = sigma_value(g)?.ok_or_else(|| Error::Input("cyclic group has no σ-cover".into()))?;
    if cover.len() != s {
        return Err(Error::Input(format!("cover has {} members but σ = {s}", cover.len())));
    }
    let mut positions = Vec::new();
    let mut union = Bits::new(g.order());
    for m in cover {
        let pos = md
            .maximals
            .iter()
            .position(|x| x == m)
            .ok_or_else(|| Error::Input("cover member is not a maximal subgroup".into()))?;
        positions.push(pos);
        union.union_with(m.bits());
    }
    if union.count() != g.order() {
        return Err(Error::Input("subgroups do not cover the group".into()));
    }
    Ok(classify_positions(g, &md, &positions))
}

pub(crate) fn classify_positions(g: &Group, md: &MaximalData, positions: &[usize]) -> CoverKind {
    let n = positions.len();
    let idx = |p: usize| md.index(g.order(), p);
    let mut indices: Vec<usize> = positions.iter().map(|&p| idx(p)).collect();
    indices.sort();
    let i1 = indices[0];
    let kind = if i1 + 1 < n {
        let conj = positions.iter().filter(|&&p| idx(p) == i1).any(|&first| {
            let rest: Vec<usize> = positions.iter().copied().filter(|&p| p != first).collect();
            rest.iter().all(|&p| md.class_of[p] == md.class_of[rest[0]])
        });
        if conj {
            CoverClass::Conjugate
        } else {
            CoverClass::Other
        }
    } else if i1 + 1 == n && positions.iter().all(|&p| md.normal[p]) {
        CoverClass::Normal
    } else {
        CoverClass::Other
    };
    CoverKind { kind, indices }
}

/// A σ-cover `M_1, …` with `|G:M_1| < σ − 1` and the others one conjugacy
/// class, searched directly rather than among enumerated witnesses.
pub fn find_conjugate_cover(g: &Group) -> Result<Option<Vec<usize>>> {
    let Some(s) = sigma_value(g)? else { return Ok(None) };
    let md = maximal_data(g)?;
    let n = g.order();
    let classes = md.class_of.iter().copied().max().map_or(0, |c| c + 1);
    for class in 0..classes {
        let members: Vec<usize> = (0..md.maximals.len()).filter(|&p| md.class_of[p] == class).collect();
        if members.len() + 1 < s {
            continue;
        }
        let class_index = md.index(n, members[0]);
        for first in 0..md.maximals.len() {
            let i1 = md.index(n, first);
            if i1 + 1 >= s || i1 > class_index {
                continue;
            }
            let mut universe = Bits::full(n);
            universe.difference_with(md.maximals[first].bits());
            let sets: Vec<&Bits> = members.iter().map(|&p| md.maximals[p].bits()).collect();
            let Some(p) = CoverProblem::new(&universe, &sets) else { continue };
            let rest = p.minimum();
            if rest.len() + 1 <= s {
                let mut cover: Vec<usize> = rest.iter().map(|&i| members[i]).collect();
                cover.push(first);
                cover.sort();
                cover.dedup();
                return Ok(Some(cover));
            }
        }
    }
    Ok(None)
}

/// A σ-cover by normal maximals of index σ − 1 or more; its smallest index
/// is then exactly σ − 1.
pub fn find_normal_cover(g: &Group) -> Result<Option<Vec<usize>>> {
    let Some(s) = sigma_value(g)? else { return Ok(None) };
    let md = maximal_data(g)?;
    let allowed: Vec<usize> =
        (0..md.maximals.len()).filter(|&p| md.normal[p] && md.index(g.order(), p) + 1 >= s).collect();
    let sets: Vec<&Bits> = allowed.iter().map(|&p| md.maximals[p].bits()).collect();
    let Some(p) = CoverProblem::new(&Bits::full(g.order()), &sets) else { return Ok(None) };
    let c = p.minimum();
    Ok((c.len() == s).then(|| c.iter().map(|&i| allowed[i]).collect()))
}

/// No nontrivial proper normal `N` has `σ(G/N) = σ(G)`.
///
/// Since `σ(G) ≤ σ(G/N₀) ≤ σ(G/N)` whenever `N₀ ≤ N`, only minimal normal
/// subgroups need to be tried.
pub fn is_primitive_sigma_sum(g: &Group) -> Result<bool> {
    let s = sigma_value(g)?.ok_or_else(|| Error::Precondition("cyclic group has infinite σ".into()))?;
    for n in minimal_normal_subgroups(g) {
        if n.size() == g.order() {
            continue;
        }
        let (q, _) = g.quotient_unchecked(&n);
        if sigma_value(&q)? == Some(s) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The same check against every nontrivial proper normal subgroup.
pub fn is_primitive_sigma_sum_exhaustive(g: &Group) -> Result<bool> {
    let s = sigma_value(g)?.ok_or_else(|| Error::Precondition("cyclic group has infinite σ".into()))?;
    for n in crate::lattice::normal_subgroups(g)?.iter() {
        if n.is_trivial() || n.size() == g.order() {
            continue;
        }
        let (q, _) = g.quotient_unchecked(n);
        if sigma_value(&q)? == Some(s) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn precondition_skip(g: &Group) -> Option<String> {
    if g.order() == 1 {
        Some("trivial group".into())
    } else if g.is_cyclic() {
        Some("cyclic".into())
    } else if !g.is_soluble() {
        Some("insoluble".into())
    } else {
        None
    }
}

/// The four statements about σ-covers of a soluble non-cyclic group: the
/// conjugate/normal dichotomy, the two-maximals bound, uniqueness of small
/// indices, and existence of a conjugate cover from a non-normal maximal of
/// index σ − 1.
pub fn verify_cover_theorems(g: &Group) -> Vec<VerificationRecord> {
    let theorems = [ids::COVER_DICHOTOMY, ids::TWO_MAXIMALS_BOUND, ids::SMALL_INDEX_UNIQUE, ids::NON_NORMAL_INDEX];
    if let Some(reason) = precondition_skip(g) {
        return theorems.iter().map(|t| VerificationRecord::skip(g, t, reason.clone())).collect();
    }
    match cover_records(g) {
        Ok(r) => r,
        Err(e) => theorems.iter().map(|t| VerificationRecord::skip(g, t, e.to_string())).collect(),
    }
}

pub fn verify_cover_theorem(g: &Group, theorem_id: &str) -> Option<VerificationRecord> {
    verify_cover_theorems(g).into_iter().find(|r| r.theorem_id == theorem_id)
}

fn cover_records(g: &Group) -> Result<Vec<VerificationRecord>> {
    let md = maximal_data(g)?;
    let sr = sigma(g)?;
    let s = sr.value.finite().unwrap();
    let m = md.maximals.len();
    let n = g.order();
    let base = |t: &str, outcome: fn(&Group, &str, String) -> VerificationRecord, reason: String| {
        outcome(g, t, reason).param("m", m).param("sigma", s)
    };
    let pass = |g: &Group, t: &str, r: String| VerificationRecord::pass(g, t, r);
    let skip = |g: &Group, t: &str, r: String| VerificationRecord::skip(g, t, r);
    let mut out = Vec::new();

    // dichotomy
    let kinds: Vec<CoverKind> = sr.witnesses.iter().map(|w| classify_positions(g, &md, w)).collect();
    let conj = kinds.iter().filter(|k| k.kind == CoverClass::Conjugate).count();
    let norm = kinds.iter().filter(|k| k.kind == CoverClass::Normal).count();
    let found = if let Some(i) = kinds.iter().position(|k| k.kind != CoverClass::Other) {
        Some((kinds[i].kind, sr.witnesses[i].clone()))
    } else if let Some(c) = find_conjugate_cover(g)? {
        Some((CoverClass::Conjugate, c))
    } else {
        find_normal_cover(g)?.map(|c| (CoverClass::Normal, c))
    };
    let mut rec = match &found {
        Some((kind, cover)) => {
            let k = classify_positions(g, &md, cover);
            base(ids::COVER_DICHOTOMY, pass, format!("{kind:?} σ-cover with indices {:?}", k.indices))
                .param("kind", format!("{kind:?}").to_uppercase())
                .param("cover_indices", k.indices)
                .param("cover_positions", cover.clone())
        }
        None => {
            let witness: Vec<SubgroupSet> = sr.witnesses[0].iter().map(|&p| md.maximals[p].clone()).collect();
            let cex = Counterexample::new(ids::COVER_DICHOTOMY, g).with_input("cover", &witness);
            VerificationRecord::fail(g, ids::COVER_DICHOTOMY, "no conjugate or normal σ-cover", cex)
                .param("m", m)
                .param("sigma", s)
        }
    };
    rec.set_param("witnesses", sr.witnesses.len());
    rec.set_param("exhaustive", sr.exhaustive);
    rec.set_param("conjugate_witnesses", conj);
    rec.set_param("normal_witnesses", norm);
    out.push(rec);

    // index multiplicities
    let mut by_index: std::collections::BTreeMap<usize, usize> = Default::default();
    for p in 0..m {
        *by_index.entry(md.index(n, p)).or_insert(0) += 1;
    }

    let shared: Vec<usize> = by_index.iter().filter(|(_, &c)| c >= 2).map(|(&i, _)| i).collect();
    out.push(if shared.is_empty() {
        base(ids::TWO_MAXIMALS_BOUND, skip, "no index shared by two maximals".into())
    } else {
        let bad: Vec<usize> = shared.iter().copied().filter(|&i| s > i + 1).collect();
        if bad.is_empty() {
            base(ids::TWO_MAXIMALS_BOUND, pass, format!("σ ≤ 1 + i for shared indices {shared:?}"))
                .param("shared_indices", shared)
        } else {
            VerificationRecord::fail(
                g,
                ids::TWO_MAXIMALS_BOUND,
                format!("σ = {s} exceeds 1 + i for indices {bad:?}"),
                Counterexample::new(ids::TWO_MAXIMALS_BOUND, g),
            )
            .param("m", m)
            .param("sigma", s)
            .param("shared_indices", shared)
        }
    });

    let small: Vec<(usize, usize)> = by_index.iter().filter(|(&i, _)| i + 1 < s).map(|(&i, &c)| (i, c)).collect();
    out.push(if small.is_empty() {
        base(ids::SMALL_INDEX_UNIQUE, skip, "no maximal of index below σ − 1".into())
    } else {
        let bad: Vec<usize> = small.iter().filter(|(_, c)| *c > 1).map(|(i, _)| *i).collect();
        let list: Vec<usize> = small.iter().map(|(i, _)| *i).collect();
        if bad.is_empty() {
            base(ids::SMALL_INDEX_UNIQUE, pass, format!("one maximal each of indices {list:?}"))
                .param("small_indices", list)
        } else {
            VerificationRecord::fail(
                g,
                ids::SMALL_INDEX_UNIQUE,
                format!("several maximals of index {bad:?} below σ − 1"),
                Counterexample::new(ids::SMALL_INDEX_UNIQUE, g),
            )
            .param("m", m)
            .param("sigma", s)
        }
    });

    let trigger = (0..m).find(|&p| !md.normal[p] && md.index(n, p) + 1 == s);
    out.push(match trigger {
        None => base(ids::NON_NORMAL_INDEX, skip, "no non-normal maximal of index σ − 1".into()),
        Some(p) => {
            let conj_cover = if conj > 0 { Some(()) } else { find_conjugate_cover(g)?.map(|_| ()) };
            match conj_cover {
                Some(()) => base(ids::NON_NORMAL_INDEX, pass, "conjugate σ-cover exists".into()),
                None => VerificationRecord::fail(
                    g,
                    ids::NON_NORMAL_INDEX,
                    "non-normal maximal of index σ − 1 but no conjugate σ-cover",
                    Counterexample::new(ids::NON_NORMAL_INDEX, g).with_input("maximal", &[md.maximals[p].clone()]),
                )
                .param("m", m)
                .param("sigma", s),
            }
        }
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::*;

    fn sv(g: &Group) -> Option<usize> {
        sigma_value(g).unwrap()
    }

    #[test]
    fn known_sigma_values() {
        assert_eq!(sv(&cyclic(12).unwrap()), None);
        assert_eq!(sv(&cyclic(1).unwrap()), None);
        assert_eq!(sv(&elementary_abelian(2, 2).unwrap()), Some(3));
        assert_eq!(sv(&elementary_abelian(3, 2).unwrap()), Some(4));
        assert_eq!(sv(&elementary_abelian(5, 2).unwrap()), Some(6));
        assert_eq!(sv(&symmetric(3).unwrap()), Some(4));
        assert_eq!(sv(&alternating(4).unwrap()), Some(5));
        assert_eq!(sv(&symmetric(4).unwrap()), Some(4));
        assert_eq!(sv(&dihedral(6).unwrap()), Some(3));
        assert_eq!(sv(&dicyclic(2).unwrap()), Some(3));
    }

    #[test]
    fn witnesses_are_minimal_covers() {
        for g in [symmetric(3).unwrap(), alternating(4).unwrap(), dihedral(6).unwrap(), symmetric(4).unwrap()] {
            let r = sigma(&g).unwrap();
            let md = maximal_data(&g).unwrap();
            assert!(r.exhaustive);
            for w in &r.witnesses {
                assert_eq!(w.len(), r.value.finite().unwrap());
                let mut u = Bits::new(g.order());
                for &p in w {
                    u.union_with(md.maximals[p].bits());
                }
                assert_eq!(u.count(), g.order());
            }
        }
        // S3: A3 together with the three involution subgroups is the only cover
        assert_eq!(sigma(&symmetric(3).unwrap()).unwrap().witnesses.len(), 1);
    }

    #[test]
    fn cover_kinds() {
        let s3 = symmetric(3).unwrap();
        let md = maximal_data(&s3).unwrap();
        let cover = md.maximals.clone();
        let k = classify_sigma_cover(&s3, &cover).unwrap();
        assert_eq!(k.kind, CoverClass::Conjugate);
        assert_eq!(k.indices, vec![2, 3, 3, 3]);
        let e4 = elementary_abelian(2, 2).unwrap();
        let k = classify_sigma_cover(&e4, &maximal_data(&e4).unwrap().maximals).unwrap();
        assert_eq!(k.kind, CoverClass::Normal);
        assert!(classify_sigma_cover(&s3, &cover[..3]).is_err());
        assert!(classify_sigma_cover(&e4, &[e4.whole(), e4.whole(), e4.whole()]).is_err());
    }

    #[test]
    fn primitivity() {
        assert!(is_primitive_sigma_sum(&elementary_abelian(2, 2).unwrap()).unwrap());
        assert!(is_primitive_sigma_sum(&symmetric(3).unwrap()).unwrap());
        assert!(!is_primitive_sigma_sum(&dihedral(6).unwrap()).unwrap());
        assert!(is_primitive_sigma_sum(&cyclic(5).unwrap()).is_err());
        for g in [dihedral(6).unwrap(), symmetric(4).unwrap(), alternating(4).unwrap(), dicyclic(3).unwrap()] {
            assert_eq!(is_primitive_sigma_sum(&g).unwrap(), is_primitive_sigma_sum_exhaustive(&g).unwrap());
        }
    }

    #[test]
    fn cover_theorem_records() {
        use crate::record::Outcome;
        let recs = verify_cover_theorems(&symmetric(3).unwrap());
        assert!(recs.iter().all(|r| r.outcome != Outcome::Fail), "{recs:?}");
        assert_eq!(recs[0].outcome, Outcome::Pass);
        let e9 = elementary_abelian(3, 2).unwrap();
        let r = verify_cover_theorem(&e9, ids::TWO_MAXIMALS_BOUND).unwrap();
        assert_eq!(r.outcome, Outcome::Pass);
        let z6 = verify_cover_theorems(&cyclic(6).unwrap());
        assert!(z6.iter().all(|r| r.outcome == Outcome::Skip && r.reason == "cyclic"));
    }
}
