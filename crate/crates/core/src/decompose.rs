//! Checks of the decomposition statements about cores, intersections of
//! maximal subgroups and Frattini quotients.

use crate::arith::{gcd, is_prime, solve_prime_power_eq};
use crate::bits::Bits;
use crate::construct::{direct_product, matrix_semidirect, mersenne_exponent_check, symmetric};
use crate::cover::{is_primitive_sigma_sum, sigma, sigma_value};
use crate::error::{Error, Result};
use crate::ff::matrices_of_order;
use crate::group::{Group, SubgroupSet};
use crate::iso::{find_isomorphism, is_isomorphic};
use crate::lattice::{are_conjugate, core_unchecked, frattini, maximal_data, minimal_normal_over, minimal_normal_subgroups};
use crate::record::{ids, Counterexample, VerificationRecord};
use crate::setcover::CoverProblem;

fn iso(a: &Group, b: &Group) -> bool {
    is_isomorphic(a, b).is_some()
}

fn product(groups: &[Group]) -> Result<Group> {
    let mut acc = crate::construct::cyclic(1)?;
    for h in groups {
        acc = direct_product(&acc, h)?;
    }
    Ok(acc)
}

fn meet_list(g: &Group, subs: &[&SubgroupSet]) -> SubgroupSet {
    subs.iter().fold(g.whole(), |acc, s| acc.meet(s))
}

/// `|AB| = |A||B|/|A ∩ B|`.
fn product_order(a: &SubgroupSet, b: &SubgroupSet) -> usize {
    a.size() * b.size() / a.meet(b).size()
}

/// `N/Fr ⊴ Q`, `A/Fr ∩ B/Fr = 1` and `|A/Fr||B/Fr| = |G/Fr|` for normal `A, B ⊇ Fr`.
fn internal_direct(g: &Group, a: &SubgroupSet, b: &SubgroupSet, fr: &SubgroupSet) -> bool {
    g.is_normal_unchecked(a) && g.is_normal_unchecked(b) && a.meet(b) == *fr && product_order(a, b) == g.order()
}

struct Failures(Vec<String>);

impl Failures {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.0.push(what());
        }
    }
}

fn no_cover_reason(g: &Group) -> Option<&'static str> {
    if g.order() == 1 || g.is_cyclic() {
        Some("cyclic")
    } else {
        None
    }
}

/// `H = ∩ M_i` over a σ-cover whose outside maximals are all normal:
/// `G/Φ ≅ H/Φ × G/H`, `H/Φ` elementary abelian by primes, and `G/H`
/// primitive when the σ-cover is unique.
pub fn verify_surplus_decomposition(g: &Group) -> VerificationRecord {
    let id = ids::SURPLUS_DECOMPOSITION;
    if let Some(r) = no_cover_reason(g) {
        return VerificationRecord::skip(g, id, r);
    }
    match surplus_decomposition(g) {
        Ok(r) => r,
        Err(e) => VerificationRecord::skip(g, id, e.to_string()),
    }
}

fn surplus_decomposition(g: &Group) -> Result<VerificationRecord> {
    let id = ids::SURPLUS_DECOMPOSITION;
    let md = maximal_data(g)?;
    let sr = sigma(g)?;
    let s = sr.value.finite().unwrap();
    let m = md.maximals.len();
    let skip = |reason: &str| VerificationRecord::skip(g, id, reason).param("m", m).param("sigma", s);
    if m == s {
        return Ok(skip("no surplus maximals"));
    }
    let forced: Vec<usize> = (0..m).filter(|&p| !md.normal[p]).collect();
    let mut covers: Vec<Vec<usize>> =
        sr.witnesses.iter().filter(|w| forced.iter().all(|p| w.contains(p))).cloned().collect();
    if covers.is_empty() && !sr.exhaustive && forced.len() <= s {
        let sets: Vec<&Bits> = md.maximals.iter().map(|x| x.bits()).collect();
        let problem = CoverProblem::new(&Bits::full(g.order()), &sets).unwrap();
        let c = problem.minimum_with(&forced);
        if c.len() == s {
            covers.push(c);
        }
    }
    if covers.is_empty() {
        return Ok(skip("every σ-cover leaves a non-normal maximal outside"));
    }
    const CHECKED: usize = 50;
    let unique = sr.exhaustive && sr.witnesses.len() == 1;
    let phi = frattini(g)?;
    let mut fails = Failures(Vec::new());
    let mut chain_lengths = Vec::new();
    for cover in covers.iter().take(CHECKED) {
        let members: Vec<&SubgroupSet> = cover.iter().map(|&p| &md.maximals[p]).collect();
        let h = meet_list(g, &members);
        fails.check(g.is_normal_unchecked(&h), || format!("H of cover {cover:?} is not normal"));
        // H_j = H_{j−1} ∩ M_{l_j} along the outside maximals
        let mut hj = h.clone();
        let mut k = g.whole();
        let mut chain = 0usize;
        for p in (0..m).filter(|p| !cover.contains(p)) {
            if !hj.is_subgroup_of(&md.maximals[p]) {
                hj = hj.meet(&md.maximals[p]);
                k = k.meet(&md.maximals[p]);
                chain += 1;
            }
        }
        chain_lengths.push(chain);
        fails.check(hj == phi, || format!("chain of cover {cover:?} ends at order {} ≠ |Φ|", hj.size()));
        fails.check(product_order(&h, &k) == g.order(), || format!("G ≠ H K_n for cover {cover:?}"));
        fails.check(h.meet(&k) == phi, || format!("H ∩ K_n ≠ Φ for cover {cover:?}"));
        fails.check(internal_direct(g, &h, &k, &phi), || format!("G/Φ is not the internal product H/Φ × K_n/Φ for cover {cover:?}"));
        let gh = g.quotient_unchecked(&h).0;
        let kn = g.section(&k, &phi)?;
        fails.check(iso(&kn, &gh), || format!("K_n/Φ ≇ G/H for cover {cover:?}"));
        let hp = g.section(&h, &phi)?;
        let squarefree = hp.element_orders().iter().all(|&o| crate::arith::is_squarefree(o as u64));
        fails.check(hp.is_abelian() && squarefree, || format!("H/Φ is not a product of elementary abelian groups for cover {cover:?}"));
        if unique {
            fails.check(is_primitive_sigma_sum(&gh)?, || "G/H is not primitive for the unique σ-cover".to_string());
        }
    }
    let base = |r: VerificationRecord| {
        r.param("m", m)
            .param("sigma", s)
            .param("covers_checked", covers.len().min(CHECKED))
            .param("chain_lengths", chain_lengths.clone())
            .param("unique_cover", unique)
    };
    Ok(if fails.0.is_empty() {
        let r = format!("decomposition holds for {} qualifying σ-cover(s)", covers.len().min(CHECKED));
        base(VerificationRecord::pass(g, id, r))
    } else {
        let cover: Vec<SubgroupSet> = covers[0].iter().map(|&p| md.maximals[p].clone()).collect();
        let cex = Counterexample::new(id, g).with_input("cover", &cover);
        base(VerificationRecord::fail(g, id, fails.0.join("; "), cex))
    })
}

/// A non-normal abelian maximal of index `σ − 1` forces
/// `G/Φ ≅ Inn(G) × Z(G)/Φ` with `Inn(G)` primitive.
pub fn verify_abelian_maximal(g: &Group) -> VerificationRecord {
    let id = ids::ABELIAN_MAXIMAL;
    if let Some(r) = no_cover_reason(g) {
        return VerificationRecord::skip(g, id, r);
    }
    if !g.is_soluble() {
        return VerificationRecord::skip(g, id, "insoluble");
    }
    let run = || -> Result<VerificationRecord> {
        let md = maximal_data(g)?;
        let s = sigma_value(g)?.unwrap();
        let n = g.order();
        let hit = (0..md.maximals.len()).find(|&p| {
            !md.normal[p] && md.index(n, p) + 1 == s && g.subgroup_group(&md.maximals[p]).0.is_abelian()
        });
        let Some(p) = hit else {
            return Ok(VerificationRecord::skip(g, id, "no non-normal abelian maximal of index σ − 1").param("sigma", s));
        };
        let phi = frattini(g)?;
        let z = g.center();
        let mut fails = Failures(Vec::new());
        let inn = g.inner_automorphism_group();
        if phi.is_subgroup_of(&z) {
            let q = g.quotient_unchecked(&phi).0;
            let rhs = direct_product(&inn, &g.section(&z, &phi)?)?;
            fails.check(iso(&q, &rhs), || "G/Φ ≇ Inn(G) × Z(G)/Φ".into());
        } else {
            fails.check(false, || "Φ(G) is not central".into());
        }
        fails.check(is_primitive_sigma_sum(&inn)?, || "Inn(G) is not primitive".into());
        let r = if fails.0.is_empty() {
            VerificationRecord::pass(g, id, "G/Φ ≅ Inn(G) × Z(G)/Φ, Inn(G) primitive")
        } else {
            let cex = Counterexample::new(id, g).with_input("maximal", &[md.maximals[p].clone()]);
            VerificationRecord::fail(g, id, fails.0.join("; "), cex)
        };
        Ok(r.param("sigma", s).param("center_order", z.size()).param("frattini_order", phi.size()))
    };
    run().unwrap_or_else(|e| VerificationRecord::skip(g, id, e.to_string()))
}

/// `m = σ` makes `G/Φ` primitive; `m = 3` moreover gives `G/Φ ≅ E_4` and a
/// 2-group.
pub fn verify_equal_count_remark(g: &Group) -> VerificationRecord {
    let id = ids::TWO_MAXIMALS_REMARK;
    if let Some(r) = no_cover_reason(g) {
        return VerificationRecord::skip(g, id, r);
    }
    let run = || -> Result<VerificationRecord> {
        let m = crate::lattice::m_count(g)?;
        let s = sigma_value(g)?.unwrap();
        if m != s {
            return Ok(VerificationRecord::skip(g, id, "m ≠ σ").param("m", m).param("sigma", s));
        }
        let q = g.quotient_unchecked(&frattini(g)?).0;
        let mut fails = Failures(Vec::new());
        fails.check(is_primitive_sigma_sum(&q)?, || "G/Φ is not primitive".into());
        if m == 3 {
            let v4 = crate::construct::elementary_abelian(2, 2)?;
            fails.check(iso(&q, &v4), || "m = 3 but G/Φ ≇ E_4".into());
            fails.check(g.order().is_power_of_two(), || "m = 3 but G is not a 2-group".into());
        }
        let r = if fails.0.is_empty() {
            let what = if m == 3 { "G/Φ ≅ E_4, primitive, 2-group" } else { "G/Φ primitive" };
            VerificationRecord::pass(g, id, what)
        } else {
            VerificationRecord::fail(g, id, fails.0.join("; "), Counterexample::new(id, g))
        };
        Ok(r.param("m", m).param("sigma", s))
    };
    run().unwrap_or_else(|e| VerificationRecord::skip(g, id, e.to_string()))
}

fn is_maximal(g: &Group, s: &SubgroupSet) -> Result<bool> {
    Ok(maximal_data(g)?.maximals.contains(s))
}

/// Cores `C_i`, `H_i = ∩_{ℓ≠i} C_ℓ` and minimal normal overgroups `L_i`
/// of pairwise non-conjugate non-normal maximals `M_1, …, M_n`: the three
/// conditional isomorphisms, the prime-index corollary, the commutator
/// identity `[L_i ∩ H_i, M_j ∩ H_j] ≤ ∩ C_ℓ` and `G/∩C ≅ G/C_ℓ × G/H_ℓ`
/// whenever `G = H_ℓ C_ℓ`.
pub fn verify_core_intersections(g: &Group, selection: &[SubgroupSet]) -> Result<VerificationRecord> {
    let id = ids::CORE_INTERSECTIONS;
    if selection.is_empty() {
        return Err(Error::Input("empty selection".into()));
    }
    if !g.is_soluble() {
        return Err(Error::Precondition("insoluble group".into()));
    }
    for (i, m) in selection.iter().enumerate() {
        if m.bits().len() != g.order() || !is_maximal(g, m)? {
            return Err(Error::Input(format!("selection entry {i} is not a maximal subgroup")));
        }
        if g.is_normal_unchecked(m) {
            return Err(Error::Input(format!("selection entry {i} is normal")));
        }
    }
    for i in 0..selection.len() {
        for j in i + 1..selection.len() {
            if are_conjugate(g, &selection[i], &selection[j]) {
                return Err(Error::Input(format!("selection entries {i} and {j} are conjugate")));
            }
        }
    }
    let n = selection.len();
    let cs: Vec<SubgroupSet> = selection.iter().map(|m| core_unchecked(g, m)).collect();
    let hs: Vec<SubgroupSet> = (0..n)
        .map(|i| meet_list(g, &cs.iter().enumerate().filter(|(l, _)| *l != i).map(|(_, c)| c).collect::<Vec<_>>()))
        .collect();
    let ks: Vec<SubgroupSet> = (0..n)
        .map(|i| meet_list(g, &selection.iter().enumerate().filter(|(l, _)| *l != i).map(|(_, c)| c).collect::<Vec<_>>()))
        .collect();
    let c_all = meet_list(g, &cs.iter().collect::<Vec<_>>());
    let m_all = meet_list(g, &selection.iter().collect::<Vec<_>>());
    let mut ls = Vec::new();
    for (i, c) in cs.iter().enumerate() {
        match minimal_normal_over(g, c)?.unique() {
            Some(l) => ls.push(l.clone()),
            None => {
                return Ok(VerificationRecord::skip(g, id, format!("minimal normal subgroup over C_{} is not unique", i + 1))
                    .param("n", n))
            }
        }
    }
    let mut fails = Failures(Vec::new());
    let mut evaluated: Vec<String> = Vec::new();
    let m_over_c = g.section(&m_all, &c_all)?;

    if (0..n).all(|i| !hs[i].is_subgroup_of(&cs[i])) {
        evaluated.push("i".into());
        let l = meet_list(g, &ls.iter().collect::<Vec<_>>());
        let factors: Vec<Group> = (0..n).map(|i| g.section(&ls[i], &cs[i])).collect::<Result<_>>()?;
        fails.check(
            l.meet(&m_all) == c_all && product_order(&l, &m_all) == g.order(),
            || "∩L_i/C is not complemented by ∩M_i/C".into(),
        );
        fails.check(iso(&g.section(&l, &c_all)?, &product(&factors)?), || "∩L_i/C ≇ ∏ L_i/C_i".into());
    }
    for l in 0..n {
        let hc = product_order(&hs[l], &cs[l]) == g.order();
        if hc {
            evaluated.push(format!("ii@{}", l + 1));
            let rhs = direct_product(&g.section(&selection[l], &cs[l])?, &g.section(&ks[l], &hs[l])?)?;
            fails.check(iso(&m_over_c, &rhs), || format!("(ii) fails at ℓ = {}", l + 1));
            evaluated.push(format!("eq2@{}", l + 1));
            let rhs = direct_product(&g.quotient_unchecked(&cs[l]).0, &g.quotient_unchecked(&hs[l]).0)?;
            fails.check(iso(&g.quotient_unchecked(&c_all).0, &rhs), || format!("G/C ≇ G/C_ℓ × G/H_ℓ at ℓ = {}", l + 1));
        }
        let k_over_h = g.section(&ks[l], &hs[l])?;
        let degenerate = if hs[l].is_subgroup_of(&cs[l]) { " (H_ℓ ≤ C_ℓ)" } else { "" };
        if hs[l].meet(&selection[l]).is_subgroup_of(&cs[l]) {
            evaluated.push(format!("iii@{}", l + 1));
            fails.check(iso(&m_over_c, &k_over_h), || format!("(iii) fails at ℓ = {}{degenerate}", l + 1));
        }
        if is_prime((selection[l].size() / cs[l].size()) as u64) && !hc {
            evaluated.push(format!("cor@{}", l + 1));
            fails.check(iso(&m_over_c, &k_over_h), || format!("prime-index corollary fails at ℓ = {}{degenerate}", l + 1));
        }
    }
    if n >= 2 {
        evaluated.push("commutator".into());
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let a = ls[i].meet(&hs[i]);
                let b = selection[j].meet(&hs[j]);
                let comm = g.commutator_unchecked(&a, &b);
                fails.check(comm.is_subgroup_of(&c_all), || format!("[L_{0} ∩ H_{0}, M_{1} ∩ H_{1}] ⊄ ∩C", i + 1, j + 1));
            }
        }
    }
    let checks = evaluated.join(",");
    Ok(if evaluated.is_empty() {
        VerificationRecord::skip(g, id, "no hypothesis holds").param("n", n)
    } else if fails.0.is_empty() {
        VerificationRecord::pass(g, id, format!("checked {checks}")).param("n", n).param("checks", checks)
    } else {
        let cex = Counterexample::new(id, g).with_input("selection", selection);
        VerificationRecord::fail(g, id, fails.0.join("; "), cex).param("n", n).param("checks", checks)
    })
}

/// `(M_1 ∩ M_2)/(C_1 ∩ C_2) ≅ Z_t × Z_n` for non-conjugate non-normal
/// maximals with cyclic `M_i/C_i` of orders `r_i` and `ℓ = |G : C_1C_2| > 1`,
/// where `n = gcd(r_1/ℓ, r_2/ℓ)` and `t = r_1 r_2/(ℓ n)`.
pub fn verify_core_pair(g: &Group, m1: &SubgroupSet, m2: &SubgroupSet) -> VerificationRecord {
    let id = ids::CORE_PAIR;
    let run = || -> Result<VerificationRecord> {
        let skip = |why: &str| Ok(VerificationRecord::skip(g, id, why));
        if !g.is_soluble() {
            return skip("insoluble");
        }
        if m1.bits().len() != g.order() || m2.bits().len() != g.order() || !is_maximal(g, m1)? || !is_maximal(g, m2)? {
            return skip("maximal subgroups required");
        }
        if g.is_normal_unchecked(m1) || g.is_normal_unchecked(m2) {
            return skip("non-normal maximals required");
        }
        if are_conjugate(g, m1, m2) {
            return skip("non-conjugate required");
        }
        let c1 = core_unchecked(g, m1);
        let c2 = core_unchecked(g, m2);
        let q1 = g.section(m1, &c1)?;
        let q2 = g.section(m2, &c2)?;
        if !q1.is_cyclic() || !q2.is_cyclic() {
            return skip("M_i/C_i cyclic required");
        }
        let (r1, r2) = (q1.order(), q2.order());
        let c12 = g.join(&c1, &c2);
        let ell = g.order() / c12.size();
        if ell <= 1 {
            return skip("|G : C_1C_2| > 1 required");
        }
        let mut fails = Failures(Vec::new());
        fails.check(r1 % ell == 0 && r2 % ell == 0, || format!("ℓ = {ell} does not divide r_1 = {r1} and r_2 = {r2}"));
        let params = |r: VerificationRecord, n: usize, t: usize, case: usize| {
            r.param("r1", r1).param("r2", r2).param("ell", ell).param("n", n).param("t", t).param("case", case)
        };
        if !fails.0.is_empty() {
            let cex = Counterexample::new(id, g).with_input("m1", &[m1.clone()]).with_input("m2", &[m2.clone()]);
            return Ok(params(VerificationRecord::fail(g, id, fails.0.join("; "), cex), 0, 0, 0));
        }
        let n = gcd((r1 / ell) as u64, (r2 / ell) as u64) as usize;
        let t = r1 * r2 / (ell * n);
        let cc = c1.meet(&c2);
        let k = g.section(&m1.meet(m2), &cc)?;
        let case = if c1.meet(m2) == cc || c2.meet(m1) == cc { 1 } else { 2 };
        if case == 1 {
            fails.check(n == 1, || format!("degenerate pair has n = {n}"));
        }
        let target = direct_product(&crate::construct::cyclic(t)?, &crate::construct::cyclic(n)?)?;
        fails.check(iso(&k, &target), || format!("(M_1 ∩ M_2)/(C_1 ∩ C_2) of order {} ≇ Z_{t} × Z_{n}", k.order()));
        Ok(params(
            if fails.0.is_empty() {
                VerificationRecord::pass(g, id, format!("≅ Z_{t} × Z_{n}"))
            } else {
                let cex = Counterexample::new(id, g).with_input("m1", &[m1.clone()]).with_input("m2", &[m2.clone()]);
                VerificationRecord::fail(g, id, fails.0.join("; "), cex)
            },
            n,
            t,
            case,
        ))
    };
    run().unwrap_or_else(|e| VerificationRecord::skip(g, id, e.to_string()))
}

/// `G = LM` with `M` maximal acting faithfully and fixed-point-freely on
/// `L ⊴ G`, `|L| − 1` prime and every subgroup of `M` normal in `M`: the
/// action is transitive and `G` is `S_3` or `E_{2^n} ⋊ Z_q`.
pub fn verify_fixed_point_free(g: &Group, l: &SubgroupSet, m: &SubgroupSet) -> VerificationRecord {
    let id = ids::FIXED_POINT_FREE;
    let run = || -> Result<VerificationRecord> {
        if let Some(why) = fixed_point_free_precondition(g, l, m)? {
            return Ok(VerificationRecord::skip(g, id, why));
        }
        let lel: Vec<usize> = l.members().filter(|&x| x != g.identity()).collect();
        let mut orbit = Bits::new(g.order());
        for x in m.members() {
            orbit.insert(g.conjugate(lel[0], x));
        }
        let mut fails = Failures(Vec::new());
        fails.check(orbit.count() == lel.len(), || format!("M-orbit of size {} on {} points", orbit.count(), lel.len()));
        fails.check(m.size() == lel.len(), || format!("|M| = {} ≠ |L| − 1 = {}", m.size(), lel.len()));
        let conclusion = if l.size() == 3 {
            iso(g, &symmetric(3)?).then_some("S_3")
        } else if l.size().is_power_of_two() {
            let n = l.size().trailing_zeros();
            let target = mersenne_exponent_check(n).and_then(|_| crate::construct::mersenne_semidirect(n));
            match target {
                Ok(t) => iso(g, &t).then_some("E_{2^n} ⋊ Z_q"),
                Err(_) => None,
            }
        } else {
            None
        };
        fails.check(conclusion.is_some(), || "G is neither S_3 nor E_{2^n} ⋊ Z_q".into());
        Ok(if fails.0.is_empty() {
            VerificationRecord::pass(g, id, format!("transitive, G ≅ {}", conclusion.unwrap()))
        } else {
            let cex = Counterexample::new(id, g).with_input("l", &[l.clone()]).with_input("m", &[m.clone()]);
            VerificationRecord::fail(g, id, fails.0.join("; "), cex)
        }
        .param("l_order", l.size())
        .param("m_order", m.size()))
    };
    run().unwrap_or_else(|e| VerificationRecord::skip(g, id, e.to_string()))
}

/// The first unmet hypothesis of the fixed-point-free check, in the order
/// they are listed.
pub fn fixed_point_free_precondition(g: &Group, l: &SubgroupSet, m: &SubgroupSet) -> Result<Option<String>> {
    if l.bits().len() != g.order() || m.bits().len() != g.order() {
        return Err(Error::Input("subgroups of another group".into()));
    }
    let e = g.identity();
    let why = if !g.is_normal_unchecked(l) {
        "L normal required"
    } else if !is_maximal(g, m)? {
        "M maximal required"
    } else if !l.meet(m).is_trivial() {
        "L ∩ M = 1 required"
    } else if l.size() * m.size() != g.order() {
        "G = LM required"
    } else if m.members().any(|x| x != e && l.members().all(|y| g.conjugate(y, x) == y)) {
        "faithful action required"
    } else if m.members().any(|x| x != e && l.members().any(|y| y != e && g.conjugate(y, x) == y)) {
        "fixed-point-free action required"
    } else if !is_prime(l.size() as u64 - 1) {
        "|L| − 1 prime required"
    } else if !is_dedekind(g, m) {
        "every subgroup of M normal required"
    } else {
        return Ok(None);
    };
    Ok(Some(why.to_string()))
}

fn is_dedekind(g: &Group, m: &SubgroupSet) -> bool {
    m.members().all(|x| {
        let cyc = g.closure_of([x]);
        m.members().all(|y| cyc.contains(g.conjugate(x, y)))
    })
}

/// Cap on the order-`q` matrices tried for the uniqueness check.
pub const MERSENNE_MATRIX_CAP: usize = 200;

/// Every `E_{2^n} ⋊ Z_q`, `q = 2^n − 1` prime, built from an order-`q`
/// matrix of `GL(n, 2)` is isomorphic to the one from the first matrix,
/// with each witness checked on the full table.
pub fn verify_mersenne_unique(n: u32) -> Result<VerificationRecord> {
    let id = ids::MERSENNE_UNIQUE;
    let q = mersenne_exponent_check(n)?;
    let mats = matrices_of_order(2, n as usize, q, MERSENNE_MATRIX_CAP);
    let base = matrix_semidirect(&mats[0], q)?;
    let label = format!("E({}):C({q})", 1usize << n);
    let mut bad = None;
    for (i, mat) in mats.iter().enumerate().skip(1) {
        let h = matrix_semidirect(mat, q)?;
        let ok = find_isomorphism(&base, &h).is_some_and(|w| w.is_bijective(&h) && w.is_homomorphism(&base, &h));
        if !ok {
            bad = Some((i, h));
            break;
        }
    }
    let rec = match bad {
        None => VerificationRecord::new(&label, id, crate::record::Outcome::Pass, format!("{} instances isomorphic", mats.len())),
        Some((i, h)) => {
            let mut r =
                VerificationRecord::new(&label, id, crate::record::Outcome::Fail, format!("instance {i} not isomorphic to instance 0"));
            r.counterexample = Some(Counterexample::new(id, &h).with_argument("n", n as i64));
            r
        }
    };
    Ok(rec.param("n", n as usize).param("q", q).param("instances", mats.len()))
}

/// Every solution of `p^n = q^m + 1` within the bounds falls under one of
/// the three listed cases.
pub fn verify_prime_power_eq(p_max: u64, exp_max: u32) -> VerificationRecord {
    let id = ids::PRIME_POWER_EQ;
    let sols = solve_prime_power_eq(p_max, exp_max);
    let show = |s: &crate::arith::PrimePowerSolution| format!("({}, {}, {}, {})", s.p, s.n, s.q, s.m);
    let untagged: Vec<String> = sols.iter().filter(|s| s.cases.is_empty()).map(show).collect();
    let multi: Vec<String> = sols.iter().filter(|s| s.cases.len() > 1).map(show).collect();
    let label = format!("p^n = q^m + 1, p, q ≤ {p_max}, n, m ≤ {exp_max}");
    let mut r = if untagged.is_empty() && multi.is_empty() {
        VerificationRecord::new(&label, id, crate::record::Outcome::Pass, format!("{} solutions, each in exactly one case", sols.len()))
    } else {
        let mut why = Vec::new();
        if !untagged.is_empty() {
            why.push(format!("unclassified: {}", untagged.join(" ")));
        }
        if !multi.is_empty() {
            why.push(format!("several cases: {}", multi.join(" ")));
        }
        let mut r = VerificationRecord::new(&label, id, crate::record::Outcome::Fail, why.join("; "));
        r.counterexample = Some(
            Counterexample::new(id, &crate::construct::cyclic(1).unwrap())
                .with_argument("p_max", p_max as i64)
                .with_argument("exp_max", exp_max as i64),
        );
        r
    };
    r.set_param("p_max", p_max);
    r.set_param("exp_max", exp_max as usize);
    r.set_param("solutions", sols.len());
    r.set_param("multi_tagged", multi.len());
    r
}

/// Non-normal maximal subgroups grouped by conjugacy class.
fn non_normal_classes(g: &Group) -> Result<Vec<Vec<SubgroupSet>>> {
    let md = maximal_data(g)?;
    let k = md.class_of.iter().copied().max().map_or(0, |c| c + 1);
    let mut classes: Vec<Vec<SubgroupSet>> = vec![Vec::new(); k];
    for (p, m) in md.maximals.iter().enumerate() {
        if !md.normal[p] {
            classes[md.class_of[p]].push(m.clone());
        }
    }
    classes.retain(|c| !c.is_empty());
    Ok(classes)
}

/// Intersection checks on every pair of class representatives and on the
/// full set of representatives.
pub fn core_intersection_records(g: &Group) -> Vec<VerificationRecord> {
    let id = ids::CORE_INTERSECTIONS;
    if let Some(r) = no_cover_reason(g) {
        return vec![VerificationRecord::skip(g, id, r)];
    }
    if !g.is_soluble() {
        return vec![VerificationRecord::skip(g, id, "insoluble")];
    }
    let classes = match non_normal_classes(g) {
        Ok(c) => c,
        Err(e) => return vec![VerificationRecord::skip(g, id, e.to_string())],
    };
    if classes.is_empty() {
        return vec![VerificationRecord::skip(g, id, "no non-normal maximal")];
    }
    let reps: Vec<SubgroupSet> = classes.iter().map(|c| c[0].clone()).collect();
    let mut selections: Vec<Vec<SubgroupSet>> = Vec::new();
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            selections.push(vec![reps[i].clone(), reps[j].clone()]);
        }
    }
    if reps.len() != 2 {
        selections.push(reps.clone());
    }
    selections
        .iter()
        .map(|sel| verify_core_intersections(g, sel).unwrap_or_else(|e| VerificationRecord::skip(g, id, e.to_string())))
        .collect()
}

/// Core-pair checks on every qualifying pair, or one skip when none
/// qualifies.
pub fn core_pair_records(g: &Group) -> Vec<VerificationRecord> {
    let id = ids::CORE_PAIR;
    if let Some(r) = no_cover_reason(g) {
        return vec![VerificationRecord::skip(g, id, r)];
    }
    if !g.is_soluble() {
        return vec![VerificationRecord::skip(g, id, "insoluble")];
    }
    let classes = match non_normal_classes(g) {
        Ok(c) => c,
        Err(e) => return vec![VerificationRecord::skip(g, id, e.to_string())],
    };
    let mut out = Vec::new();
    for a in 0..classes.len() {
        for b in a + 1..classes.len() {
            for m2 in &classes[b] {
                let r = verify_core_pair(g, &classes[a][0], m2);
                if r.outcome != crate::record::Outcome::Skip {
                    out.push(r);
                }
            }
        }
    }
    if out.is_empty() {
        out.push(VerificationRecord::skip(g, id, "no qualifying maximal pair"));
    }
    out
}

/// Fixed-point-free checks on minimal normal `L` with a maximal complement
/// `M`, or one skip when no pair meets the hypotheses.
pub fn fixed_point_free_records(g: &Group) -> Vec<VerificationRecord> {
    let id = ids::FIXED_POINT_FREE;
    let run = || -> Result<Vec<VerificationRecord>> {
        let md = maximal_data(g)?;
        let mut out = Vec::new();
        for l in minimal_normal_subgroups(g) {
            for m in &md.maximals {
                if l.size() * m.size() == g.order() && l.meet(m).is_trivial() {
                    let r = verify_fixed_point_free(g, &l, m);
                    if r.outcome != crate::record::Outcome::Skip {
                        out.push(r);
                    }
                }
            }
        }
        Ok(out)
    };
    let mut out = run().unwrap_or_default();
    if out.is_empty() {
        out.push(VerificationRecord::skip(g, id, "no qualifying (L, M) pair"));
    }
    out
}
