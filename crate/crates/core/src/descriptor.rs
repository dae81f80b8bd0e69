//! Abstract structure templates and structural matching against them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::construct;
use crate::error::{Error, Result};
use crate::ff::matrices_of_order;
use crate::group::{Group, SubgroupSet};
use crate::lattice::{find_complement, normal_subgroups};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NamedGroup {
    S3,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StructureDescriptor {
    Cyclic(usize),
    ElemAbelian { p: u32, k: u32 },
    Direct(Vec<StructureDescriptor>),
    Semidirect { normal: Box<StructureDescriptor>, complement: Box<StructureDescriptor>, faithful: bool },
    Named(NamedGroup),
}

use StructureDescriptor as D;

impl StructureDescriptor {
    /// `E_q` for a prime power `q`.
    pub fn elementary(q: usize) -> Option<D> {
        let (p, k) = crate::arith::prime_power(q as u64)?;
        Some(D::ElemAbelian { p: p as u32, k })
    }

    /// Direct product with trivial factors dropped and a single factor
    /// unwrapped.
    pub fn direct(parts: Vec<D>) -> D {
        let mut parts: Vec<D> = parts.into_iter().filter(|d| d.order() != 1).collect();
        match parts.len() {
            0 => D::Cyclic(1),
            1 => parts.pop().unwrap(),
            _ => D::Direct(parts),
        }
    }

    pub fn semidirect(normal: D, complement: D, faithful: bool) -> D {
        D::Semidirect { normal: Box::new(normal), complement: Box::new(complement), faithful }
    }

    pub fn order(&self) -> usize {
        match self {
            D::Cyclic(n) => *n,
            D::ElemAbelian { p, k } => (*p as usize).pow(*k),
            D::Direct(parts) => parts.iter().map(D::order).product(),
            D::Semidirect { normal, complement, .. } => normal.order() * complement.order(),
            D::Named(NamedGroup::S3) => 6,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            D::Cyclic(0) => Err(Error::Input("cyclic group of order 0".into())),
            D::ElemAbelian { p, .. } if !is_prime(*p as u64) => {
                Err(Error::Input(format!("elementary abelian descriptor with non-prime {p}")))
            }
            D::Direct(parts) => parts.iter().try_for_each(D::validate),
            D::Semidirect { normal, complement, .. } => {
                normal.validate()?;
                complement.validate()
            }
            _ => Ok(()),
        }
    }

    fn is_atomic(&self) -> bool {
        !matches!(self, D::Direct(_) | D::Semidirect { .. })
    }
}

impl fmt::Display for StructureDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |d: &D| if d.is_atomic() { d.to_string() } else { format!("({d})") };
        match self {
            D::Cyclic(n) => write!(f, "C({n})"),
            D::ElemAbelian { p, k } => write!(f, "E({})", (*p as usize).pow(*k)),
            D::Direct(parts) => {
                let s: Vec<String> = parts.iter().map(wrap).collect();
                f.write_str(&s.join(" x "))
            }
            D::Semidirect { normal, complement, .. } => write!(f, "{}:{}", wrap(normal), wrap(complement)),
            D::Named(NamedGroup::S3) => f.write_str("S(3)"),
        }
    }
}

/// Structural check that `G` has the shape `d`: normal parts, complements
/// and action kernels are located inside `G`, no instance is enumerated.
pub fn matches_descriptor(g: &Group, d: &StructureDescriptor) -> Result<bool> {
    d.validate()?;
    if g.order() != d.order() {
        return Err(Error::Input(format!("group order {} but template order {}", g.order(), d.order())));
    }
    matches(g, d)
}

fn matches(g: &Group, d: &D) -> Result<bool> {
    Ok(match d {
        D::Cyclic(_) => g.is_cyclic(),
        D::ElemAbelian { p, .. } => g.is_abelian() && g.element_orders().iter().all(|&o| o == 1 || o == *p),
        D::Named(NamedGroup::S3) => !g.is_abelian(),
        D::Direct(parts) => {
            let normals = normal_subgroups(g)?;
            direct_search(g, &normals, parts, &g.trivial_subgroup())?
        }
        D::Semidirect { normal, complement, faithful } => semidirect_search(g, normal, complement, *faithful)?,
    })
}

fn subgroup_matches(g: &Group, s: &SubgroupSet, d: &D) -> Result<bool> {
    let (h, _) = g.subgroup_group(s);
    matches(&h, d)
}

fn direct_search(g: &Group, normals: &[SubgroupSet], parts: &[D], acc: &SubgroupSet) -> Result<bool> {
    let Some((first, rest)) = parts.split_first() else {
        return Ok(acc.size() == g.order());
    };
    for n in normals.iter().filter(|n| n.size() == first.order()) {
        if !n.meet(acc).is_trivial() || !subgroup_matches(g, n, first)? {
            continue;
        }
        if direct_search(g, normals, rest, &g.join(acc, n))? {
            return Ok(true);
        }
    }
    Ok(false)
}

fn semidirect_search(g: &Group, normal: &D, complement: &D, faithful: bool) -> Result<bool> {
    let normals = normal_subgroups(g)?;
    for n in normals.iter().filter(|n| n.size() == normal.order()) {
        if !subgroup_matches(g, n, normal)? {
            continue;
        }
        // every complement is isomorphic to G/N
        let (q, _) = g.quotient_unchecked(n);
        if !matches(&q, complement)? {
            continue;
        }
        let Some(c) = find_complement(g, n)? else { continue };
        if faithful && !c.meet(&g.centralizer(n)).is_trivial() {
            continue;
        }
        return Ok(true);
    }
    Ok(false)
}

/// A concrete group of shape `d`. Semidirect products need an elementary
/// abelian normal part and a cyclic complement `C(t)`, which acts through
/// the first matrix of order exactly `t`.
pub fn instantiate(d: &StructureDescriptor) -> Result<Group> {
    d.validate()?;
    let g = match d {
        D::Cyclic(n) => construct::cyclic(*n)?,
        D::ElemAbelian { p, k } => construct::elementary_abelian(*p, *k)?,
        D::Named(NamedGroup::S3) => construct::symmetric(3)?,
        D::Direct(parts) => {
            let mut acc = construct::cyclic(1)?;
            for part in parts {
                acc = construct::direct_product(&acc, &instantiate(part)?)?;
            }
            acc
        }
        D::Semidirect { normal, complement, .. } => {
            let (p, k) = match **normal {
                D::ElemAbelian { p, k } => (p, k),
                D::Cyclic(n) if is_prime(n as u64) => (n as u32, 1),
                _ => return Err(Error::Input(format!("cannot instantiate normal part {normal}"))),
            };
            let D::Cyclic(t) = **complement else {
                return Err(Error::Input(format!("cannot instantiate complement {complement}")));
            };
            let mat = matrices_of_order(p, k as usize, t, 1)
                .pop()
                .ok_or_else(|| Error::Input(format!("GL({k}, {p}) has no element of order {t}")))?;
            construct::matrix_semidirect(&mat, t)?
        }
    };
    Ok(g.with_label(d.to_string()))
}
