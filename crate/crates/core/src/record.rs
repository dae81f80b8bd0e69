//! Verification records shared by every checker.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::group::{Group, SubgroupSet};

/// Report identifiers of the checked statements.
pub mod ids {
    pub const COVER_DICHOTOMY: &str = "Thm1.1";
    pub const TWO_MAXIMALS_BOUND: &str = "Lemma1.2";
    pub const SMALL_INDEX_UNIQUE: &str = "Cor1.3";
    pub const NON_NORMAL_INDEX: &str = "Prop1.4";
    pub const SURPLUS_DECOMPOSITION: &str = "Prop3.1";
    pub const ABELIAN_MAXIMAL: &str = "Cor3.1.5";
    pub const TWO_MAXIMALS_REMARK: &str = "Remark3.1.5";
    pub const EQUAL_COUNT: &str = "Lemma3.2";
    pub const BELOW_TWICE: &str = "Cor3.4";
    pub const CORE_INTERSECTIONS: &str = "Thm3.4p";
    pub const CORE_PAIR: &str = "Thm3.5";
    pub const TWICE_MINUS_ONE: &str = "Thm3.6";
    pub const MERSENNE_UNIQUE: &str = "Lemma3.7";
    pub const FIXED_POINT_FREE: &str = "Prop3.8";
    pub const PRIME_POWER_EQ: &str = "Lemma3.9";
    pub const TWICE: &str = "Thm3.10";
    /// Skip records of the quotient classifier before a regime is known.
    pub const CLASSIFY: &str = "Classify";

    pub const ALL: &[&str] = &[
        COVER_DICHOTOMY,
        TWO_MAXIMALS_BOUND,
        SMALL_INDEX_UNIQUE,
        NON_NORMAL_INDEX,
        SURPLUS_DECOMPOSITION,
        ABELIAN_MAXIMAL,
        TWO_MAXIMALS_REMARK,
        EQUAL_COUNT,
        BELOW_TWICE,
        CORE_INTERSECTIONS,
        CORE_PAIR,
        TWICE_MINUS_ONE,
        MERSENNE_UNIQUE,
        FIXED_POINT_FREE,
        PRIME_POWER_EQ,
        TWICE,
        CLASSIFY,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Outcome {
    Pass,
    Fail,
    Skip,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Skip => "SKIP",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Param {
    Bool(bool),
    Int(i64),
    List(Vec<i64>),
    Text(String),
}

impl From<usize> for Param {
    fn from(v: usize) -> Self {
        Param::Int(v as i64)
    }
}

impl From<u64> for Param {
    fn from(v: u64) -> Self {
        Param::Int(v as i64)
    }
}

impl From<bool> for Param {
    fn from(v: bool) -> Self {
        Param::Bool(v)
    }
}

impl From<&str> for Param {
    fn from(v: &str) -> Self {
        Param::Text(v.to_string())
    }
}

impl From<String> for Param {
    fn from(v: String) -> Self {
        Param::Text(v)
    }
}

impl From<Vec<usize>> for Param {
    fn from(v: Vec<usize>) -> Self {
        Param::List(v.into_iter().map(|x| x as i64).collect())
    }
}

impl std::fmt::Display for Param {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Param::Bool(b) => write!(f, "{b}"),
            Param::Int(i) => write!(f, "{i}"),
            Param::List(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "[{}]", parts.join(" "))
            }
            Param::Text(s) => f.write_str(s),
        }
    }
}

/// Everything needed to rerun a failed check on its own.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub theorem_id: String,
    pub group_label: String,
    pub rows: Vec<Vec<usize>>,
    /// Named subgroup arguments as sorted member lists.
    pub inputs: BTreeMap<String, Vec<Vec<usize>>>,
    /// Numeric arguments of checks that take no subgroup.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub arguments: BTreeMap<String, i64>,
}

impl Counterexample {
    pub fn new(theorem_id: &str, g: &Group) -> Self {
        Counterexample {
            theorem_id: theorem_id.to_string(),
            group_label: g.label().to_string(),
            rows: g.rows(),
            inputs: BTreeMap::new(),
            arguments: BTreeMap::new(),
        }
    }

    pub fn with_argument(mut self, name: &str, value: i64) -> Self {
        self.arguments.insert(name.to_string(), value);
        self
    }

    pub fn with_input(mut self, name: &str, subs: &[SubgroupSet]) -> Self {
        self.inputs.insert(name.to_string(), subs.iter().map(|s| s.elements()).collect());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub group_label: String,
    pub theorem_id: String,
    pub outcome: Outcome,
    pub reason: String,
    pub parameters: BTreeMap<String, Param>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl VerificationRecord {
    pub fn new(label: &str, theorem_id: &str, outcome: Outcome, reason: impl Into<String>) -> Self {
        VerificationRecord {
            group_label: label.to_string(),
            theorem_id: theorem_id.to_string(),
            outcome,
            reason: reason.into(),
            parameters: BTreeMap::new(),
            counterexample: None,
        }
    }

    pub fn pass(g: &Group, theorem_id: &str, reason: impl Into<String>) -> Self {
        Self::new(g.label(), theorem_id, Outcome::Pass, reason)
    }

    pub fn skip(g: &Group, theorem_id: &str, reason: impl Into<String>) -> Self {
        Self::new(g.label(), theorem_id, Outcome::Skip, reason)
    }

    /// A failure carrying its replay payload.
    pub fn fail(g: &Group, theorem_id: &str, reason: impl Into<String>, cex: Counterexample) -> Self {
        let mut r = Self::new(g.label(), theorem_id, Outcome::Fail, reason);
        r.counterexample = Some(cex);
        r
    }

    pub fn param(mut self, key: &str, value: impl Into<Param>) -> Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn set_param(&mut self, key: &str, value: impl Into<Param>) {
        self.parameters.insert(key.to_string(), value.into());
    }

    pub fn get_int(&self, key: &str) -> Option<i64> {
        match self.parameters.get(key) {
            Some(Param::Int(i)) => Some(*i),
            _ => None,
        }
    }

    pub fn get_text(&self, key: &str) -> Option<&str> {
        match self.parameters.get(key) {
            Some(Param::Text(s)) => Some(s),
            _ => None,
        }
    }
}
