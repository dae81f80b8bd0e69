//! Versioned group files.
//!
//! ```text
//! {"version":1,"kind":"table","order":2,"rows":[[0,1],[1,0]],"label":"C(2)"}
//! {"version":1,"kind":"perm","degree":3,"generators":[[1,2,0],[1,0,2]]}
//! {"version":1,"kind":"recipe","label":"E(4):C(3)"}
//! ```
//!
//! Saved files are always in table form, compact, with a trailing newline;
//! loading a saved file and saving it again reproduces it byte for byte.

use std::path::Path;

use serde::{Deserialize, Serialize};

use gcover_core::construct::{from_permutations, PermutationGenSet};
use gcover_core::recipe::build_recipe;
use gcover_core::Group;

use crate::{read_file, write_file, Error, Result};

pub const FORMAT_VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    pub version: u64,
    #[serde(flatten)]
    pub body: GroupBody,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupBody {
    Table {
        order: usize,
        rows: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
    },
    Perm {
        degree: usize,
        generators: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
    },
    Recipe {
        label: String,
    },
}

impl GroupFile {
    pub fn table(g: &Group) -> GroupFile {
        GroupFile {
            version: FORMAT_VERSION,
            body: GroupBody::Table { order: g.order(), rows: g.rows(), label: Some(g.label().to_string()) },
        }
    }

    pub fn to_group(&self) -> Result<Group> {
        if self.version != FORMAT_VERSION {
            return Err(Error::Version(self.version));
        }
        Ok(match &self.body {
            GroupBody::Table { order, rows, label } => {
                if rows.len() != *order {
                    return Err(gcover_core::Error::InvalidTable(format!(
                        "order is {order} but the table has {} rows",
                        rows.len()
                    ))
                    .into());
                }
                let label = label.clone().unwrap_or_else(|| format!("Table({order})"));
                Group::from_rows(rows, label)?
            }
            GroupBody::Perm { degree, generators, label } => {
                let g = from_permutations(&PermutationGenSet { degree: *degree, generators: generators.clone() })?;
                match label {
                    Some(l) => g.with_label(l.clone()),
                    None => g,
                }
            }
            GroupBody::Recipe { label } => build_recipe(label)?,
        })
    }

    /// Compact JSON with a trailing newline.
    pub fn to_canonical_string(&self) -> String {
        let mut s = serde_json::to_string(self).expect("group files serialize");
        s.push('\n');
        s
    }
}

pub fn parse_group(text: &str) -> Result<Group> {
    let file: GroupFile = serde_json::from_str(text)?;
    file.to_group()
}

pub fn load_group(path: &Path) -> Result<Group> {
    parse_group(&read_file(path)?)
}

pub fn save_group(g: &Group, path: &Path) -> Result<()> {
    write_file(path, GroupFile::table(g).to_canonical_string().as_bytes())
}
