//! Corpus-wide verification runs.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use gcover_core::arith::is_prime;
use gcover_core::classify::verify_classification;
use gcover_core::corpus::corpus_generate;
use gcover_core::cover::{sigma_value, verify_cover_theorems};
use gcover_core::decompose::{
    core_intersection_records, core_pair_records, fixed_point_free_records, verify_abelian_maximal,
    verify_equal_count_remark, verify_mersenne_unique, verify_prime_power_eq, verify_surplus_decomposition,
};
use gcover_core::lattice::m_count;
use gcover_core::record::{ids, Outcome, Param, VerificationRecord};
use gcover_core::{Group, MAX_ORDER};

use crate::{Error, Result};

/// Exponent bound of the prime-power equation scan in a corpus run.
pub const PRIME_POWER_EXP_MAX: u32 = 20;

const COVER_IDS: &[&str] = &[ids::COVER_DICHOTOMY, ids::TWO_MAXIMALS_BOUND, ids::SMALL_INDEX_UNIQUE, ids::NON_NORMAL_INDEX];
const CLASSIFY_IDS: &[&str] = &[ids::EQUAL_COUNT, ids::BELOW_TWICE, ids::TWICE_MINUS_ONE, ids::TWICE, ids::CLASSIFY];

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunOptions {
    pub max_order: usize,
    /// Keep only records with this theorem id.
    pub theorem: Option<String>,
    /// Worker threads; 0 lets the pool choose.
    pub jobs: usize,
}

/// Record counts per theorem id and outcome.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary(pub BTreeMap<String, BTreeMap<Outcome, usize>>);

impl Summary {
    pub fn of(records: &[VerificationRecord]) -> Summary {
        let mut s = Summary::default();
        for r in records {
            let row = s.0.entry(r.theorem_id.clone()).or_insert_with(|| {
                [Outcome::Pass, Outcome::Fail, Outcome::Skip].into_iter().map(|o| (o, 0)).collect()
            });
            *row.entry(r.outcome).or_default() += 1;
        }
        s
    }

    pub fn count(&self, theorem_id: &str, outcome: Outcome) -> usize {
        self.0.get(theorem_id).and_then(|r| r.get(&outcome)).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.0.values().flat_map(|r| r.values()).sum()
    }
}

fn wanted(filter: Option<&str>, family: &[&str]) -> bool {
    filter.map_or(true, |t| family.contains(&t))
}

/// Every per-group check, in a fixed order.
pub fn group_records(g: &Group, filter: Option<&str>) -> Vec<VerificationRecord> {
    let mut out: Vec<VerificationRecord> = Vec::new();
    let run = |out: &mut Vec<VerificationRecord>, family: &[&str], f: &dyn Fn() -> Vec<VerificationRecord>| {
        if !wanted(filter, family) {
            return;
        }
        match catch_unwind(AssertUnwindSafe(f)) {
            Ok(recs) => out.extend(recs),
            Err(_) => out.extend(family.iter().map(|t| VerificationRecord::skip(g, t, "internal error"))),
        }
    };
    run(&mut out, COVER_IDS, &|| verify_cover_theorems(g));
    run(&mut out, CLASSIFY_IDS, &|| vec![verify_classification(g)]);
    run(&mut out, &[ids::SURPLUS_DECOMPOSITION], &|| vec![verify_surplus_decomposition(g)]);
    run(&mut out, &[ids::ABELIAN_MAXIMAL], &|| vec![verify_abelian_maximal(g)]);
    run(&mut out, &[ids::TWO_MAXIMALS_REMARK], &|| vec![verify_equal_count_remark(g)]);
    run(&mut out, &[ids::CORE_INTERSECTIONS], &|| core_intersection_records(g));
    run(&mut out, &[ids::CORE_PAIR], &|| core_pair_records(g));
    run(&mut out, &[ids::FIXED_POINT_FREE], &|| fixed_point_free_records(g));
    if let Some(t) = filter {
        out.retain(|r| r.theorem_id == t);
    }
    annotate(g, &mut out);
    out
}

/// Adds the `order`, `m` and `sigma` parameters of `g` to each record.
pub fn annotate(g: &Group, records: &mut [VerificationRecord]) {
    let m = m_count(g).ok();
    let sigma = sigma_value(g).ok();
    for r in records {
        r.set_param("order", g.order());
        if let Some(m) = m {
            r.set_param("m", m);
        }
        match sigma {
            Some(Some(s)) => r.set_param("sigma", s),
            Some(None) => r.set_param("sigma", "INFINITE"),
            None => {}
        }
    }
}

/// Checks that take no group: Mersenne uniqueness for each `n` with
/// `2^n (2^n − 1) ≤ max_order`, then the prime-power equation with
/// `p, q ≤ max_order`.
pub fn global_records(max_order: usize, filter: Option<&str>) -> Vec<VerificationRecord> {
    let mut out = Vec::new();
    if wanted(filter, &[ids::MERSENNE_UNIQUE]) {
        for n in 2u32.. {
            let order = (1usize << n) * ((1usize << n) - 1);
            if order > max_order {
                break;
            }
            if !is_prime((1u64 << n) - 1) {
                continue;
            }
            out.push(verify_mersenne_unique(n).unwrap_or_else(|e| {
                VerificationRecord::new(&format!("E({})", 1usize << n), ids::MERSENNE_UNIQUE, Outcome::Skip, e.to_string())
            }));
        }
    }
    if max_order >= 2 && wanted(filter, &[ids::PRIME_POWER_EQ]) {
        out.push(verify_prime_power_eq(max_order as u64, PRIME_POWER_EXP_MAX));
    }
    out
}

/// Corpus records in corpus order followed by the global records. The
/// trivial group yields no records.
pub fn run_corpus_verification(opts: &RunOptions) -> Result<Vec<VerificationRecord>> {
    if opts.max_order > MAX_ORDER {
        return Err(Error::Usage(format!("--max-order {} exceeds {MAX_ORDER}", opts.max_order)));
    }
    let filter = opts.theorem.as_deref();
    if let Some(t) = filter {
        if !ids::ALL.contains(&t) {
            return Err(Error::Usage(format!("unknown theorem id {t}; known: {}", ids::ALL.join(", "))));
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| Error::Usage(format!("thread pool: {e}")))?;
    let mut records: Vec<VerificationRecord> = pool.install(|| {
        let corpus = corpus_generate(opts.max_order);
        let per_group: Vec<Vec<VerificationRecord>> =
            corpus.par_iter().filter(|g| g.order() > 1).map(|g| group_records(g, filter)).collect();
        per_group.into_iter().flatten().collect()
    });
    records.extend(global_records(opts.max_order, filter));
    Ok(records)
}

/// Value of an integer-or-text parameter as text, for tabular output.
pub fn param_text(r: &VerificationRecord, key: &str) -> String {
    r.parameters.get(key).map(Param::to_string).unwrap_or_default()
}
