//! End-to-end acceptance run: one line per criterion, non-zero exit when
//! any criterion fails.

#[path = "../../core/tests/oracle/mod.rs"]
mod oracle;

use std::collections::BTreeSet;
use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use gcover_core::arith::{is_prime, solve_prime_power_eq};
use gcover_core::classify::verify_classification;
use gcover_core::construct::{alternating, cyclic, dihedral, elementary_abelian, matrix_semidirect, symmetric};
use gcover_core::corpus::corpus_generate;
use gcover_core::cover::{sigma_value, verify_cover_theorems};
use gcover_core::decompose::core_pair_records;
use gcover_core::ff::Matrix;
use gcover_core::iso::is_isomorphic;
use gcover_core::lattice::{frattini, m_count, maximal_data};
use gcover_core::record::{ids, Outcome, Param, VerificationRecord};
use gcover_core::Group;

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Verdict {
    Verdict { ok, detail: detail.into() }
}

fn within(t: Duration, limit_s: u64) -> bool {
    t <= Duration::from_secs(limit_s)
}

fn secs(t: Duration) -> String {
    format!("{:.1}s", t.as_secs_f64())
}

fn mask_of(members: impl Iterator<Item = usize>) -> oracle::Mask {
    members.fold(0, |acc, x| acc | 1 << x)
}

/// Branch-and-bound σ against the brute-force oracle on corpus groups of
/// order ≤ 120.
fn sigma_equivalence() -> Verdict {
    let t = Instant::now();
    let corpus = corpus_generate(120);
    let mut bad = Vec::new();
    let mut n = 0;
    for g in corpus.iter().filter(|g| g.order() > 1) {
        n += 1;
        let fast = sigma_value(g).unwrap();
        let brute = oracle::sigma(g, g.order());
        if fast != brute {
            bad.push(format!("{}: {fast:?} vs {brute:?}", g.label()));
        }
    }
    let dt = t.elapsed();
    verdict(
        bad.is_empty() && n >= 40 && within(dt, 60),
        format!("{n} groups (need ≥ 40), {} mismatches {bad:?}, {} (limit 60s)", bad.len(), secs(dt)),
    )
}

fn known_values() -> Verdict {
    let cases: Vec<(Group, Option<usize>)> = vec![
        (elementary_abelian(2, 2).unwrap(), Some(3)),
        (elementary_abelian(3, 2).unwrap(), Some(4)),
        (elementary_abelian(5, 2).unwrap(), Some(6)),
        (symmetric(3).unwrap(), Some(4)),
        (alternating(4).unwrap(), Some(5)),
        (symmetric(4).unwrap(), Some(4)),
        (dihedral(6).unwrap(), Some(3)),
        (cyclic(1).unwrap(), None),
        (cyclic(7).unwrap(), None),
        (cyclic(12).unwrap(), None),
        (cyclic(60).unwrap(), None),
    ];
    let mut bad = Vec::new();
    for (g, want) in &cases {
        let fast = sigma_value(g).unwrap();
        let brute = oracle::sigma(g, g.order());
        if fast != *want || brute != *want {
            bad.push(format!("{}: search {fast:?}, oracle {brute:?}, expected {want:?}", g.label()));
        }
    }
    verdict(bad.is_empty(), format!("{} values, both paths agree; mismatches {bad:?}", cases.len()))
}

/// Every non-cyclic soluble group has a conjugate or normal σ-cover, and
/// the claimed cover is rechecked here.
fn cover_dichotomy(corpus: &[Group]) -> Verdict {
    let mut groups = 0;
    let mut problems = Vec::new();
    let (mut lemma_pass, mut cor_pass) = (0, 0);
    for g in corpus.iter().filter(|g| g.order() > 1 && !g.is_cyclic() && g.is_soluble()) {
        groups += 1;
        let recs = verify_cover_theorems(g);
        let get = |id: &str| recs.iter().find(|r| r.theorem_id == id).unwrap();
        let dich = get(ids::COVER_DICHOTOMY);
        if dich.outcome != Outcome::Pass {
            problems.push(format!("{}: {}", g.label(), dich.reason));
            continue;
        }
        for id in [ids::TWO_MAXIMALS_BOUND, ids::SMALL_INDEX_UNIQUE] {
            match get(id).outcome {
                Outcome::Fail => problems.push(format!("{} {id}: {}", g.label(), get(id).reason)),
                Outcome::Pass if id == ids::TWO_MAXIMALS_BOUND => lemma_pass += 1,
                Outcome::Pass => cor_pass += 1,
                Outcome::Skip => {}
            }
        }
        if g.order() <= 128 {
            let md = maximal_data(g).unwrap();
            let Some(Param::List(pos)) = dich.parameters.get("cover_positions") else {
                problems.push(format!("{}: no cover positions", g.label()));
                continue;
            };
            let cover: Vec<oracle::Mask> = pos.iter().map(|&p| mask_of(md.maximals[p as usize].members())).collect();
            let union = cover.iter().fold(0, |a, &m| a | m);
            let claimed_ok = union == oracle::full(g)
                && cover.len() == sigma_value(g).unwrap().unwrap()
                && match dich.get_text("kind") {
                    Some("NORMAL") => {
                        let mut idx: Vec<usize> = cover.iter().map(|m| g.order() / m.count_ones() as usize).collect();
                        idx.sort();
                        cover.iter().all(|&m| oracle::is_normal(g, m)) && idx[0] + 1 == cover.len()
                    }
                    Some("CONJUGATE") => (0..cover.len()).any(|first| {
                        let rest: Vec<oracle::Mask> =
                            cover.iter().enumerate().filter(|(i, _)| *i != first).map(|(_, &m)| m).collect();
                        let i1 = g.order() / cover[first].count_ones() as usize;
                        let least = cover.iter().all(|m| g.order() / m.count_ones() as usize >= i1);
                        least && i1 + 1 < cover.len()
                            && rest.iter().all(|&m| (0..g.order()).any(|y| oracle::conjugate(g, rest[0], y) == m))
                    }),
                    _ => false,
                };
            if !claimed_ok {
                problems.push(format!("{}: claimed cover does not check out", g.label()));
            }
        }
    }
    verdict(
        problems.is_empty(),
        format!(
            "{groups} groups, problems {problems:?}; index bound PASS {lemma_pass}, small-index uniqueness PASS {cor_pass}, no FAIL"
        ),
    )
}

fn expected_regime(m: usize, s: usize) -> &'static str {
    if m == s {
        ids::EQUAL_COUNT
    } else if m + 1 < 2 * s {
        ids::BELOW_TWICE
    } else if m + 1 == 2 * s {
        ids::TWICE_MINUS_ONE
    } else {
        ids::TWICE
    }
}

fn classification(corpus: &[Group]) -> Verdict {
    let mut checked = 0;
    let mut problems = Vec::new();
    let mut fails_without_cex = 0;
    for g in corpus.iter().filter(|g| g.order() > 1 && !g.is_cyclic() && g.is_soluble() && !g.is_nilpotent()) {
        let m = m_count(g).unwrap();
        let s = sigma_value(g).unwrap().unwrap();
        if m > 2 * s {
            continue;
        }
        checked += 1;
        let r = verify_classification(g);
        if r.outcome != Outcome::Pass || r.theorem_id != expected_regime(m, s) {
            if r.outcome == Outcome::Fail && r.counterexample.is_none() {
                fails_without_cex += 1;
            }
            problems.push(format!("{} ({}, {}): {} {}", g.label(), r.theorem_id, r.outcome.as_str(), r.reason, m));
        }
    }
    let anchor = |g: Group, id: &str, case: &str, extra: &[(&str, i64)]| -> Option<String> {
        let r = verify_classification(&g);
        let ok = r.outcome == Outcome::Pass
            && r.theorem_id == id
            && r.get_text("case_id") == Some(case)
            && extra.iter().all(|(k, v)| r.get_int(k) == Some(*v));
        (!ok).then(|| format!("{}: {} {:?} {:?}", g.label(), r.theorem_id, r.get_text("case_id"), r.parameters))
    };
    let anchors: Vec<String> = [
        anchor(symmetric(3).unwrap(), ids::EQUAL_COUNT, "3.2", &[("p_alpha", 2)]),
        anchor(alternating(4).unwrap(), ids::EQUAL_COUNT, "3.2", &[("p_alpha", 3)]),
        anchor(dihedral(6).unwrap(), ids::TWICE, "3.10(i)", &[]),
        anchor(symmetric(4).unwrap(), ids::TWICE, "3.10(viii)", &[("q", 3), ("t", 2)]),
    ]
    .into_iter()
    .flatten()
    .collect();
    let descriptors = [symmetric(3).unwrap(), alternating(4).unwrap()]
        .iter()
        .map(|g| verify_classification(g).get_text("descriptor").unwrap_or("").to_string())
        .collect::<Vec<_>>();
    let desc_ok = descriptors == ["E(3):C(2)", "E(4):C(3)"];
    verdict(
        problems.is_empty() && anchors.is_empty() && desc_ok,
        format!(
            "{checked} groups with m ≤ 2σ, mismatches {problems:?} ({fails_without_cex} without counterexample); anchors S3, A4, D12, S4 {} ; S3/A4 templates {descriptors:?}",
            if anchors.is_empty() { "ok".to_string() } else { format!("{anchors:?}") }
        ),
    )
}

fn f2_mul(a: &[u32], b: &[u32], k: usize) -> Vec<u32> {
    let mut c = vec![0; k * k];
    for i in 0..k {
        for j in 0..k {
            c[i * k + j] = (0..k).map(|l| a[i * k + l] * b[l * k + j]).sum::<u32>() % 2;
        }
    }
    c
}

/// All `k × k` matrices over `F_2` of multiplicative order exactly `q`.
fn f2_matrices_of_order(k: usize, q: usize) -> Vec<Matrix> {
    let id: Vec<u32> = (0..k * k).map(|i| u32::from(i % (k + 1) == 0)).collect();
    let mut out = Vec::new();
    for bits in 0u32..1 << (k * k) {
        let a: Vec<u32> = (0..k * k).map(|i| bits >> i & 1).collect();
        let mut p = a.clone();
        let mut ord = 1;
        while p != id && ord <= q {
            p = f2_mul(&p, &a, k);
            ord += 1;
        }
        if ord == q && p == id {
            let rows: Vec<Vec<u32>> = a.chunks(k).map(|r| r.to_vec()).collect();
            out.push(Matrix::from_rows(2, &rows));
        }
    }
    out
}

fn mersenne_uniqueness() -> Verdict {
    let t = Instant::now();
    let mut parts = Vec::new();
    let mut ok = true;
    for (k, q, need) in [(2usize, 3usize, 2usize), (3, 7, 20)] {
        let mats = f2_matrices_of_order(k, q);
        let groups: Vec<Group> = mats.iter().map(|m| matrix_semidirect(m, q).unwrap()).collect();
        let mut pairs = 0;
        let mut bad = 0;
        for i in 0..groups.len() {
            for j in i + 1..groups.len() {
                pairs += 1;
                let w = is_isomorphic(&groups[i], &groups[j]);
                if !w.is_some_and(|w| w.is_bijective(&groups[j]) && w.is_homomorphism(&groups[i], &groups[j])) {
                    bad += 1;
                }
            }
        }
        ok &= bad == 0 && groups.len() >= need;
        parts.push(format!("E({}):C({q}) {} matrices (need ≥ {need}), {pairs} pairs, {bad} non-isomorphic", 1 << k, groups.len()));
    }
    let dt = t.elapsed();
    verdict(ok && within(dt, 120), format!("{}; {} (limit 120s)", parts.join("; "), secs(dt)))
}

/// `p^n = q^m + 1` by direct search; sides have opposite parity, so one of
/// them is a power of 2 below `2^21` and overflowing powers never matter.
fn prime_power_equation() -> Verdict {
    let primes: Vec<u64> = (2..=1000).filter(|&x| is_prime(x)).collect();
    let mut brute = BTreeSet::new();
    for &p in &primes {
        for n in 1..=20u32 {
            let Some(lhs) = p.checked_pow(n) else { break };
            for &q in &primes {
                for m in 1..=20u32 {
                    let Some(rhs) = q.checked_pow(m) else { break };
                    if rhs + 1 == lhs {
                        brute.insert((p, n, q, m));
                    }
                    if rhs >= lhs {
                        break;
                    }
                }
            }
        }
    }
    let mut expected = BTreeSet::new();
    for n in 1..=20u32 {
        let q = (1u64 << n) - 1;
        if q <= 1000 && is_prime(q) {
            expected.insert((2, n, q, 1));
        }
    }
    for m in 1..=20u32 {
        let p = (1u64 << m) + 1;
        if p <= 1000 && is_prime(p) {
            expected.insert((p, 1, 2, m));
        }
    }
    expected.insert((3, 2, 2, 3));
    let sols = solve_prime_power_eq(1000, 20);
    let found: BTreeSet<(u64, u32, u64, u32)> = sols.iter().map(|s| (s.p, s.n, s.q, s.m)).collect();
    let tags_ok = sols.iter().all(|s| s.cases.len() == 1);
    verdict(
        found == expected && brute == expected && tags_ok && found.len() == sols.len(),
        format!(
            "{} solutions, expected {}, direct search {}, every solution has exactly one case: {tags_ok}",
            found.len(),
            expected.len(),
            brute.len()
        ),
    )
}

fn frattini_non_generators() -> Verdict {
    let corpus = corpus_generate(60);
    let mut bad = Vec::new();
    for g in &corpus {
        let phi = mask_of(frattini(g).unwrap().members());
        if phi != oracle::non_generators(g) {
            bad.push(g.label().to_string());
        }
    }
    verdict(bad.is_empty(), format!("{} groups of order ≤ 60, mismatches {bad:?}", corpus.len()))
}

fn coset_order(g: &Group, x: usize, c: oracle::Mask) -> usize {
    let (mut y, mut k) = (x, 1);
    while c >> y & 1 == 0 {
        y = g.mul(y, x);
        k += 1;
    }
    k
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Qualifying core-pair triples of one group recomputed from masks, with
/// the same pair selection as the library scan; returns (triples, n > 1,
/// mismatches).
fn core_pairs_by_oracle(g: &Group) -> (usize, usize, usize) {
    if g.is_cyclic() || !g.is_soluble() {
        return (0, 0, 0);
    }
    let md = maximal_data(g).unwrap();
    let order = g.order();
    let k = md.class_of.iter().copied().max().map_or(0, |c| c + 1);
    let classes: Vec<Vec<oracle::Mask>> = (0..k)
        .map(|c| {
            (0..md.maximals.len())
                .filter(|&p| md.class_of[p] == c && !md.normal[p])
                .map(|p| mask_of(md.maximals[p].members()))
                .collect()
        })
        .filter(|v: &Vec<oracle::Mask>| !v.is_empty())
        .collect();
    let core = |m: oracle::Mask| (0..order).fold(oracle::full(g), |acc, y| acc & oracle::conjugate(g, m, y));
    let (mut triples, mut wide, mut bad) = (0, 0, 0);
    for a in 0..classes.len() {
        for b in a + 1..classes.len() {
            let m1 = classes[a][0];
            for &m2 in &classes[b] {
                let (c1, c2) = (core(m1), core(m2));
                let (s1, s2) = (m1.count_ones() as usize, m2.count_ones() as usize);
                let (r1, r2) = (s1 / c1.count_ones() as usize, s2 / c2.count_ones() as usize);
                let cyclic1 = oracle::members(m1).any(|x| coset_order(g, x, c1) == r1);
                let cyclic2 = oracle::members(m2).any(|x| coset_order(g, x, c2) == r2);
                let ell = order / oracle::closure(g, c1 | c2).count_ones() as usize;
                if !cyclic1 || !cyclic2 || ell <= 1 {
                    continue;
                }
                triples += 1;
                if r1 % ell != 0 || r2 % ell != 0 {
                    bad += 1;
                    continue;
                }
                let n = gcd(r1 / ell, r2 / ell);
                let t = r1 * r2 / (ell * n);
                wide += usize::from(n > 1);
                let (m12, c12) = (m1 & m2, c1 & c2);
                let abelian = oracle::members(m12)
                    .all(|x| oracle::members(m12).all(|y| c12 >> g.mul(g.mul(g.inv(x), g.inv(y)), g.mul(x, y)) & 1 == 1));
                let csize = c12.count_ones() as usize;
                let mut got: Vec<usize> = oracle::members(m12).map(|x| coset_order(g, x, c12)).collect();
                got.sort();
                let mut want: Vec<usize> = (0..t)
                    .flat_map(|i| (0..n).map(move |j| t / gcd(i, t) * (n / gcd(j, n)) / gcd(t / gcd(i, t), n / gcd(j, n))))
                    .flat_map(|o| std::iter::repeat(o).take(csize))
                    .collect();
                want.sort();
                if !abelian || got != want {
                    bad += 1;
                }
            }
        }
    }
    (triples, wide, bad)
}

fn core_pair_formula(corpus: &[Group]) -> Verdict {
    let (mut triples, mut wide, mut fails) = (0, 0, 0);
    let mut lib_small = 0;
    let (mut o_triples, mut o_wide, mut o_bad) = (0, 0, 0);
    for g in corpus.iter().filter(|g| g.order() > 1) {
        let recs: Vec<VerificationRecord> = core_pair_records(g);
        for r in &recs {
            match r.outcome {
                Outcome::Pass => {
                    triples += 1;
                    wide += usize::from(r.get_int("n").unwrap_or(0) > 1);
                    if g.order() <= 128 {
                        lib_small += 1;
                    }
                }
                Outcome::Fail => fails += 1,
                Outcome::Skip => {}
            }
        }
        if g.order() <= 128 {
            let (a, b, c) = core_pairs_by_oracle(g);
            o_triples += a;
            o_wide += b;
            o_bad += c;
        }
    }
    let wide_note = if wide == 0 { "none in the corpus (documented)".to_string() } else { wide.to_string() };
    verdict(
        fails == 0 && triples >= 1 && o_bad == 0 && o_triples == lib_small,
        format!(
            "{triples} qualifying triples up to order 500, {fails} FAIL, triples with n > 1: {wide_note}; order ≤ 128 recomputed: {o_triples} triples ({lib_small} from the scan), {o_wide} with n > 1, {o_bad} mismatches"
        ),
    )
}

fn determinism() -> Verdict {
    let dir = std::env::temp_dir().join(format!("gcover-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut outputs = Vec::new();
    let mut times = Vec::new();
    for run in 0..2 {
        let path = dir.join(format!("run{run}.json"));
        let t = Instant::now();
        let status = Command::new(env!("CARGO_BIN_EXE_gcover"))
            .args(["verify", "--max-order", "200", "--jobs", "8", "--out"])
            .arg(&path)
            .status()
            .unwrap();
        times.push(t.elapsed());
        if !status.success() {
            return verdict(false, format!("run {run} exited with {status}"));
        }
        outputs.push(std::fs::read(&path).unwrap());
    }
    let _ = std::fs::remove_dir_all(&dir);
    let same = outputs[0] == outputs[1];
    let fast = times.iter().all(|&t| within(t, 300));
    verdict(
        same && fast && !outputs[0].is_empty(),
        format!(
            "two runs, {} bytes each, identical: {same}; {} and {} (limit 300s each)",
            outputs[0].len(),
            secs(times[0]),
            secs(times[1])
        ),
    )
}

fn main() {
    let corpus = corpus_generate(500);
    let criteria: Vec<(&str, Box<dyn Fn() -> Verdict + '_>)> = vec![
        ("σ search equals brute force", Box::new(sigma_equivalence)),
        ("known covering numbers", Box::new(known_values)),
        ("conjugate/normal σ-cover dichotomy", Box::new(|| cover_dichotomy(&corpus))),
        ("Frattini quotient classification", Box::new(|| classification(&corpus))),
        ("Mersenne semidirect uniqueness", Box::new(mersenne_uniqueness)),
        ("prime-power equation solutions", Box::new(prime_power_equation)),
        ("Frattini subgroup is the non-generators", Box::new(frattini_non_generators)),
        ("core-pair quotient formula", Box::new(|| core_pair_formula(&corpus))),
        ("deterministic reports", Box::new(determinism)),
    ];
    let mut failed = 0;
    let err = &mut std::io::stderr();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let v = check();
        failed += usize::from(!v.ok);
        writeln!(err, "criterion {} [{}] {name}: {}", i + 1, if v.ok { "PASS" } else { "FAIL" }, v.detail).unwrap();
    }
    writeln!(err, "acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len()).unwrap();
    if failed > 0 {
        std::process::exit(1);
    }
}
