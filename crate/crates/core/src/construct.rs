//! Named groups, direct and semidirect products, and permutation closures.

use std::collections::HashMap;

use crate::arith::{is_mersenne_prime, is_prime, prime_power};
use crate::error::{Error, Result};
use crate::ff::{index_of, matrices_of_order, vector_of, Matrix};
use crate::group::{Group, MAX_ORDER};

fn check_order(order: usize) -> Result<()> {
    if order > MAX_ORDER {
        Err(Error::OrderBound { order, bound: MAX_ORDER })
    } else {
        Ok(())
    }
}

/// `Z_n` on the residues `0..n`.
pub fn cyclic(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::Input("cyclic group of order 0".into()));
    }
    check_order(n)?;
    Ok(Group::from_fn_trusted(n, format!("C({n})"), |a, b| (a + b) % n))
}

/// `E_{p^k}` on coordinate vectors over `F_p`, lexicographically indexed.
pub fn elementary_abelian(p: u32, k: u32) -> Result<Group> {
    if !is_prime(p as u64) {
        return Err(Error::Input(format!("{p} is not prime")));
    }
    let order = (p as usize)
        .checked_pow(k)
        .filter(|&o| o <= MAX_ORDER)
        .ok_or(Error::OrderBound { order: usize::MAX, bound: MAX_ORDER })?;
    let k = k as usize;
    Ok(Group::from_fn_trusted(order, format!("E({order})"), |a, b| {
        let (va, vb) = (vector_of(a, p, k), vector_of(b, p, k));
        let s: Vec<u32> = va.iter().zip(&vb).map(|(x, y)| (x + y) % p).collect();
        index_of(&s, p)
    }))
}

/// Dihedral group of order `2n`; element `r^i s^j` has index `i + n j`.
pub fn dihedral(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(Error::Input("dihedral(0)".into()));
    }
    check_order(2 * n)?;
    Ok(Group::from_fn_trusted(2 * n, format!("D({})", 2 * n), |x, y| {
        let (a, b) = (x % n, x / n);
        let (c, d) = (y % n, y / n);
        let rot = if b == 0 { (a + c) % n } else { (a + n - c) % n };
        rot + n * ((b + d) % 2)
    }))
}

/// Dicyclic group of order `4n` (`Q(8)` for `n = 2`); element `a^i x^j` has
/// index `i + 2n j`, with `x² = a^n` and `x a x⁻¹ = a⁻¹`.
pub fn dicyclic(n: usize) -> Result<Group> {
    if n < 2 {
        return Err(Error::Input("dicyclic group needs n ≥ 2".into()));
    }
    let m = 2 * n;
    check_order(2 * m)?;
    Ok(Group::from_fn_trusted(2 * m, format!("Q({})", 2 * m), |x, y| {
        let (i, j) = (x % m, x / m);
        let (k, l) = (y % m, y / m);
        match (j, l) {
            (0, _) => (i + k) % m + m * l,
            (_, 0) => (i + m - k) % m + m,
            _ => (i + m - k + n) % m,
        }
    }))
}

/// Permutations compose left to right: `(στ)(x) = τ(σ(x))`.
fn compose(a: &[u8], b: &[u8]) -> Vec<u8> {
    a.iter().map(|&x| b[x as usize]).collect()
}

fn permutation_table(perms: &[Vec<u8>], label: String) -> Group {
    let index: HashMap<&[u8], usize> = perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    Group::from_fn_trusted(perms.len(), label, |a, b| index[compose(&perms[a], &perms[b]).as_slice()])
}

fn all_permutations(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (0..n as u8).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

fn is_even(p: &[u8]) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

/// `S_n` for `1 ≤ n ≤ 5`, elements in lexicographic order of their images.
pub fn symmetric(n: usize) -> Result<Group> {
    if !(1..=5).contains(&n) {
        return Err(Error::Input(format!("symmetric({n}) outside 1..=5")));
    }
    Ok(permutation_table(&all_permutations(n), format!("S({n})")))
}

/// `A_n` for `1 ≤ n ≤ 5`.
pub fn alternating(n: usize) -> Result<Group> {
    if !(1..=5).contains(&n) {
        return Err(Error::Input(format!("alternating({n}) outside 1..=5")));
    }
    let perms: Vec<Vec<u8>> = all_permutations(n).into_iter().filter(|p| is_even(p)).collect();
    Ok(permutation_table(&perms, format!("A({n})")))
}

/// Generators of a permutation group, as image arrays on `0..degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationGenSet {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
}

/// Breadth-first closure of the generators; elements are numbered in
/// discovery order with generators applied in sorted order.
pub fn from_permutations(gens: &PermutationGenSet) -> Result<Group> {
    let n = gens.degree;
    if n == 0 || n > 255 {
        return Err(Error::Input(format!("permutation degree {n} outside 1..=255")));
    }
    let mut gs: Vec<Vec<u8>> = Vec::new();
    for (i, g) in gens.generators.iter().enumerate() {
        let mut seen = vec![false; n];
        if g.len() != n || g.iter().any(|&x| x >= n || std::mem::replace(&mut seen[x], true)) {
            return Err(Error::Input(format!("generator {i} is not a permutation of 0..{n}")));
        }
        gs.push(g.iter().map(|&x| x as u8).collect());
    }
    gs.sort();
    gs.dedup();
    let id: Vec<u8> = (0..n as u8).collect();
    let mut elems = vec![id.clone()];
    let mut index: HashMap<Vec<u8>, usize> = HashMap::from([(id, 0)]);
    let mut i = 0;
    while i < elems.len() {
        for g in &gs {
            let x = compose(&elems[i], g);
            if !index.contains_key(&x) {
                if elems.len() == MAX_ORDER {
                    return Err(Error::OrderBound { order: MAX_ORDER + 1, bound: MAX_ORDER });
                }
                index.insert(x.clone(), elems.len());
                elems.push(x);
            }
        }
        i += 1;
    }
    Ok(permutation_table(&elems, format!("Perm({n};{})", gs.len())))
}

/// `A × B`; `(a, b)` has index `a·|B| + b`.
pub fn direct_product(a: &Group, b: &Group) -> Result<Group> {
    let order = a.order() * b.order();
    check_order(order)?;
    let nb = b.order();
    Ok(Group::from_fn_trusted(order, format!("{} x {}", a.label(), b.label()), |x, y| {
        a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb)
    }))
}

/// An action of `acting` on `normal` by automorphisms: `action[k]` is the
/// permutation of `normal`'s elements induced by `k`.
#[derive(Debug, Clone)]
pub struct ActionSpec {
    pub normal: Group,
    pub acting: Group,
    pub action: Vec<Vec<usize>>,
}

impl ActionSpec {
    pub fn validate(&self) -> Result<()> {
        let (n, k) = (self.normal.order(), self.acting.order());
        if self.action.len() != k {
            return Err(Error::Input(format!("action has {} entries for {k} acting elements", self.action.len())));
        }
        for (ki, perm) in self.action.iter().enumerate() {
            let mut seen = vec![false; n];
            if perm.len() != n || perm.iter().any(|&x| x >= n || std::mem::replace(&mut seen[x], true)) {
                return Err(Error::Input(format!("action entry {ki} is not a bijection")));
            }
            for a in 0..n {
                for b in 0..n {
                    if perm[self.normal.mul(a, b)] != self.normal.mul(perm[a], perm[b]) {
                        return Err(Error::Input(format!("action entry {ki} is not an automorphism")));
                    }
                }
            }
        }
        if self.action[self.acting.identity()].iter().enumerate().any(|(i, &x)| i != x) {
            return Err(Error::Input("identity does not act trivially".into()));
        }
        for k1 in 0..k {
            for k2 in 0..k {
                let lhs = &self.action[self.acting.mul(k1, k2)];
                if (0..n).any(|x| lhs[x] != self.action[k1][self.action[k2][x]]) {
                    return Err(Error::Input(format!("action is not a homomorphism at ({k1}, {k2})")));
                }
            }
        }
        Ok(())
    }

    /// The trivial action.
    pub fn trivial(normal: Group, acting: Group) -> ActionSpec {
        let action = vec![(0..normal.order()).collect(); acting.order()];
        ActionSpec { normal, acting, action }
    }

    /// `Z_m` acting on `E_{p^k}` through powers of the matrix `mat`, whose
    /// order must divide `m`.
    pub fn from_matrix(mat: &Matrix, m: usize) -> Result<ActionSpec> {
        let (p, k) = (mat.p, mat.dim);
        let normal = elementary_abelian(p, k as u32)?;
        let acting = cyclic(m)?;
        let order = normal.order();
        let mut action = Vec::with_capacity(m);
        let mut power = Matrix::identity(p, k);
        for _ in 0..m {
            action.push((0..order).map(|i| index_of(&power.apply(&vector_of(i, p, k)), p)).collect());
            power = power.mul(mat);
        }
        if !power.is_identity() {
            return Err(Error::Input(format!("matrix order does not divide {m}")));
        }
        Ok(ActionSpec { normal, acting, action })
    }
}

/// `N ⋊ K` on pairs, `(n₁,k₁)(n₂,k₂) = (n₁·k₁(n₂), k₁k₂)`; the pair `(n, k)`
/// has index `k·|N| + n`.
pub fn semidirect_product(spec: &ActionSpec) -> Result<Group> {
    let (nn, nk) = (spec.normal.order(), spec.acting.order());
    check_order(nn * nk)?;
    spec.validate()?;
    Ok(semidirect_trusted(spec))
}

pub(crate) fn semidirect_trusted(spec: &ActionSpec) -> Group {
    let nn = spec.normal.order();
    let label = format!("{}:{}", spec.normal.label(), spec.acting.label());
    Group::from_fn_trusted(nn * spec.acting.order(), label, |x, y| {
        let (n1, k1) = (x % nn, x / nn);
        let (n2, k2) = (y % nn, y / nn);
        spec.acting.mul(k1, k2) * nn + spec.normal.mul(n1, spec.action[k1][n2])
    })
}

/// `E_{p^k} ⋊ Z_m` with `Z_m` acting through `mat`.
pub fn matrix_semidirect(mat: &Matrix, m: usize) -> Result<Group> {
    let pk = (mat.p as usize).pow(mat.dim as u32);
    check_order(pk * m)?;
    let spec = ActionSpec::from_matrix(mat, m)?;
    Ok(semidirect_trusted(&spec).with_label(format!("E({pk}):C({m})")))
}

/// `E_{2^n} ⋊ Z_q` for a Mersenne prime `q = 2^n − 1`, using the
/// lexicographically least matrix of order `q` in `GL(n, 2)`.
pub fn mersenne_semidirect(n: u32) -> Result<Group> {
    let q = mersenne_exponent_check(n)?;
    let mat = matrices_of_order(2, n as usize, q, 1)
        .into_iter()
        .next()
        .expect("GL(n,2) contains a Singer cycle");
    matrix_semidirect(&mat, q)
}

pub(crate) fn mersenne_exponent_check(n: u32) -> Result<usize> {
    if !(1..=10).contains(&n) {
        return Err(Error::Input(format!("exponent {n} out of range")));
    }
    let q = (1u64 << n) - 1;
    if !is_mersenne_prime(q) {
        return Err(Error::Input(format!("2^{n} − 1 = {q} is not prime")));
    }
    check_order((1usize << n) * q as usize)?;
    Ok(q as usize)
}

/// `E(order)` for a prime power `order`.
pub fn elementary_abelian_of_order(order: usize) -> Result<Group> {
    let (p, k) = prime_power(order as u64).ok_or_else(|| Error::Input(format!("{order} is not a prime power")))?;
    elementary_abelian(p as u32, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::is_isomorphic;

    #[test]
    fn basic_constructors_are_groups() {
        for g in [
            cyclic(1).unwrap(),
            cyclic(12).unwrap(),
            elementary_abelian(2, 3).unwrap(),
            elementary_abelian(3, 2).unwrap(),
            dihedral(5).unwrap(),
            dicyclic(2).unwrap(),
            dicyclic(3).unwrap(),
            symmetric(4).unwrap(),
            alternating(4).unwrap(),
        ] {
            g.validate().unwrap();
        }
        assert_eq!(cyclic(1).unwrap().order(), 1);
        assert!(elementary_abelian(4, 2).is_err());
        assert!(matches!(cyclic(2001), Err(Error::OrderBound { .. })));
    }

    #[test]
    fn klein_four() {
        let e4 = elementary_abelian(2, 2).unwrap();
        assert_eq!(e4.order(), 4);
        assert!((0..4).filter(|&x| x != e4.identity()).all(|x| e4.element_order(x) == 2));
    }

    #[test]
    fn s3_structure() {
        let s3 = symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(s3.center().is_trivial());
        assert_eq!(s3.derived_subgroup().size(), 3);
    }

    #[test]
    fn products() {
        let z2 = cyclic(2).unwrap();
        let s3 = symmetric(3).unwrap();
        let p = direct_product(&z2, &s3).unwrap();
        p.validate().unwrap();
        assert_eq!(p.order(), 12);
        assert!(is_isomorphic(&p, &dihedral(6).unwrap()).is_some());
        let triv = cyclic(1).unwrap();
        assert!(is_isomorphic(&direct_product(&s3, &triv).unwrap(), &s3).is_some());
        let z6 = direct_product(&z2, &cyclic(3).unwrap()).unwrap();
        assert!(z6.is_cyclic());
        let big = cyclic(50).unwrap();
        assert!(matches!(direct_product(&big, &big), Err(Error::OrderBound { .. })));
    }

    #[test]
    fn semidirect_products() {
        let e4 = elementary_abelian(2, 2).unwrap();
        let z3 = cyclic(3).unwrap();
        let triv = ActionSpec::trivial(e4.clone(), z3.clone());
        let g = semidirect_product(&triv).unwrap();
        assert!(is_isomorphic(&g, &direct_product(&e4, &z3).unwrap()).is_some());

        // Z3 permuting the three involutions of E4 cyclically.
        let rot = Matrix::from_rows(2, &[vec![0, 1], vec![1, 1]]);
        let a4 = matrix_semidirect(&rot, 3).unwrap();
        a4.validate().unwrap();
        assert!(is_isomorphic(&a4, &alternating(4).unwrap()).is_some());

        // inversion on Z3
        let z2 = cyclic(2).unwrap();
        let inv = ActionSpec { normal: z3.clone(), acting: z2.clone(), action: vec![vec![0, 1, 2], vec![0, 2, 1]] };
        let s3 = semidirect_product(&inv).unwrap();
        assert!(is_isomorphic(&s3, &symmetric(3).unwrap()).is_some());

        let bad = ActionSpec { normal: z3.clone(), acting: z2.clone(), action: vec![vec![0, 1, 2], vec![1, 0, 2]] };
        assert!(semidirect_product(&bad).unwrap_err().to_string().contains("entry 1"));
        // an automorphism assignment that is not a homomorphism from Z3
        let z3b = cyclic(3).unwrap();
        let nonhom =
            ActionSpec { normal: z3.clone(), acting: z3b, action: vec![vec![0, 1, 2], vec![0, 2, 1], vec![0, 2, 1]] };
        assert!(semidirect_product(&nonhom).unwrap_err().to_string().contains("homomorphism"));
    }

    #[test]
    fn mersenne_family() {
        let a4 = mersenne_semidirect(2).unwrap();
        assert_eq!(a4.order(), 12);
        assert!(is_isomorphic(&a4, &alternating(4).unwrap()).is_some());
        let g56 = mersenne_semidirect(3).unwrap();
        assert_eq!(g56.order(), 56);
        assert!(g56.center().is_trivial());
        let sylow7 = crate::lattice::all_subgroups(&g56).unwrap();
        assert_eq!(sylow7.subgroups().iter().filter(|s| s.size() == 7).count(), 8);
        assert!(mersenne_semidirect(4).is_err());
    }

    #[test]
    fn permutation_closures() {
        let s3 = from_permutations(&PermutationGenSet {
            degree: 3,
            generators: vec![vec![1, 2, 0], vec![1, 0, 2]],
        })
        .unwrap();
        assert_eq!(s3.order(), 6);
        let triv = from_permutations(&PermutationGenSet { degree: 4, generators: vec![] }).unwrap();
        assert_eq!(triv.order(), 1);
        let a5 = from_permutations(&PermutationGenSet {
            degree: 5,
            generators: vec![vec![1, 2, 3, 4, 0], vec![1, 2, 0, 3, 4]],
        })
        .unwrap();
        assert_eq!(a5.order(), 60);
        assert!(!a5.is_soluble());
        assert_eq!(a5.derived_subgroup().size(), 60);
        assert!(from_permutations(&PermutationGenSet { degree: 3, generators: vec![vec![0, 0, 1]] }).is_err());
    }

    #[test]
    fn generator_order_does_not_matter() {
        let g1 = PermutationGenSet { degree: 4, generators: vec![vec![1, 2, 3, 0], vec![1, 0, 2, 3]] };
        let mut g2 = g1.clone();
        g2.generators.reverse();
        assert_eq!(from_permutations(&g1).unwrap(), from_permutations(&g2).unwrap());
    }
}
