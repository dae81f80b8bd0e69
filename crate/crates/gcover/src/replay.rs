//! Reruns a failed check from its counterexample payload.

use std::path::Path;

use gcover_core::classify::verify_classification;
use gcover_core::cover::verify_cover_theorem;
use gcover_core::decompose::{
    verify_abelian_maximal, verify_core_intersections, verify_core_pair, verify_equal_count_remark,
    verify_fixed_point_free, verify_mersenne_unique, verify_prime_power_eq, verify_surplus_decomposition,
};
use gcover_core::record::{ids, Counterexample, Outcome, VerificationRecord};
use gcover_core::{Group, SubgroupSet};

use crate::harness::annotate;
use crate::report::Report;
use crate::{read_file, Error, Result};

fn inputs(g: &Group, cex: &Counterexample, name: &str) -> Result<Vec<SubgroupSet>> {
    let lists = cex
        .inputs
        .get(name)
        .ok_or_else(|| Error::Usage(format!("counterexample for {} lacks input `{name}`", cex.theorem_id)))?;
    Ok(lists.iter().map(|m| SubgroupSet::from_members(g, m)).collect::<gcover_core::Result<_>>()?)
}

fn single(g: &Group, cex: &Counterexample, name: &str) -> Result<SubgroupSet> {
    let mut v = inputs(g, cex, name)?;
    if v.len() != 1 {
        return Err(Error::Usage(format!("input `{name}` must hold one subgroup, found {}", v.len())));
    }
    Ok(v.pop().unwrap())
}

fn argument(cex: &Counterexample, name: &str) -> Result<i64> {
    cex.arguments
        .get(name)
        .copied()
        .ok_or_else(|| Error::Usage(format!("counterexample for {} lacks argument `{name}`", cex.theorem_id)))
}

/// The check named by `cex.theorem_id`, rerun on the stored group and
/// inputs.
pub fn replay_counterexample(cex: &Counterexample) -> Result<VerificationRecord> {
    let g = Group::from_rows(&cex.rows, cex.group_label.clone())?;
    let id = cex.theorem_id.as_str();
    let mut rec = match id {
        ids::COVER_DICHOTOMY | ids::TWO_MAXIMALS_BOUND | ids::SMALL_INDEX_UNIQUE | ids::NON_NORMAL_INDEX => {
            verify_cover_theorem(&g, id).ok_or_else(|| Error::Usage(format!("no {id} record produced")))?
        }
        ids::EQUAL_COUNT | ids::BELOW_TWICE | ids::TWICE_MINUS_ONE | ids::TWICE | ids::CLASSIFY => verify_classification(&g),
        ids::SURPLUS_DECOMPOSITION => verify_surplus_decomposition(&g),
        ids::ABELIAN_MAXIMAL => verify_abelian_maximal(&g),
        ids::TWO_MAXIMALS_REMARK => verify_equal_count_remark(&g),
        ids::CORE_INTERSECTIONS => verify_core_intersections(&g, &inputs(&g, cex, "selection")?)?,
        ids::CORE_PAIR => verify_core_pair(&g, &single(&g, cex, "m1")?, &single(&g, cex, "m2")?),
        ids::FIXED_POINT_FREE => verify_fixed_point_free(&g, &single(&g, cex, "l")?, &single(&g, cex, "m")?),
        ids::MERSENNE_UNIQUE => {
            let n = u32::try_from(argument(cex, "n")?).map_err(|_| Error::Usage("argument `n` out of range".into()))?;
            verify_mersenne_unique(n)?
        }
        ids::PRIME_POWER_EQ => {
            let p_max = u64::try_from(argument(cex, "p_max")?).map_err(|_| Error::Usage("argument `p_max` out of range".into()))?;
            let exp_max =
                u32::try_from(argument(cex, "exp_max")?).map_err(|_| Error::Usage("argument `exp_max` out of range".into()))?;
            verify_prime_power_eq(p_max, exp_max)
        }
        other => return Err(Error::Usage(format!("unknown theorem id {other}"))),
    };
    if !matches!(id, ids::MERSENNE_UNIQUE | ids::PRIME_POWER_EQ) {
        annotate(&g, std::slice::from_mut(&mut rec));
    }
    Ok(rec)
}

/// Counterexamples held in a file: a bare counterexample, one record, or a
/// whole report (every FAIL in it).
pub fn load_counterexamples(path: &Path) -> Result<Vec<Counterexample>> {
    let text = read_file(path)?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    if value.get("records").is_some() {
        let report: Report = serde_json::from_value(value)?;
        return Ok(report.records.into_iter().filter(|r| r.outcome == Outcome::Fail).filter_map(|r| r.counterexample).collect());
    }
    if value.get("outcome").is_some() {
        let rec: VerificationRecord = serde_json::from_value(value)?;
        return Ok(rec.counterexample.into_iter().collect());
    }
    Ok(vec![serde_json::from_value(value)?])
}

pub fn replay_file(path: &Path) -> Result<Vec<VerificationRecord>> {
    load_counterexamples(path)?.iter().map(replay_counterexample).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use gcover_core::decompose::core_intersection_records;
    use gcover_core::recipe::build_recipe;

    #[test]
    fn reproduces_core_intersection_failure() {
        let g = build_recipe("S(4)").unwrap();
        let mut fail = core_intersection_records(&g).into_iter().find(|r| r.outcome == Outcome::Fail).unwrap();
        annotate(&g, std::slice::from_mut(&mut fail));
        let again = replay_counterexample(fail.counterexample.as_ref().unwrap()).unwrap();
        assert_eq!(again, fail);
    }

    #[test]
    fn global_checks_replay_from_arguments() {
        let g = gcover_core::construct::cyclic(1).unwrap();
        let cex = Counterexample::new(ids::PRIME_POWER_EQ, &g).with_argument("p_max", 50).with_argument("exp_max", 6);
        assert_eq!(replay_counterexample(&cex).unwrap().outcome, Outcome::Pass);
        let bad = Counterexample::new(ids::MERSENNE_UNIQUE, &g);
        assert!(replay_counterexample(&bad).is_err());
        let unknown = Counterexample::new("Thm9.9", &g);
        assert!(replay_counterexample(&unknown).is_err());
    }
}
