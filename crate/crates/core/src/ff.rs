//! Prime fields, polynomials over them, and small matrices: the automorphism
//! actions on elementary abelian groups are given as matrices over `F_p`.

use crate::arith::is_prime;

/// A square matrix over `F_p`, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    pub p: u32,
    pub dim: usize,
    pub entries: Vec<u32>,
}

impl Matrix {
    pub fn identity(p: u32, dim: usize) -> Matrix {
        let mut entries = vec![0; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1;
        }
        Matrix { p, dim, entries }
    }

    pub fn from_rows(p: u32, rows: &[Vec<u32>]) -> Matrix {
        let dim = rows.len();
        let entries = rows.iter().flat_map(|r| r.iter().map(|&x| x % p)).collect();
        Matrix { p, dim, entries }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.entries[r * self.dim + c]
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let n = self.dim;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0u32;
                for k in 0..n {
                    acc += self.get(i, k) * other.get(k, j);
                }
                entries[i * n + j] = acc % self.p;
            }
        }
        Matrix { p: self.p, dim: n, entries }
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(self.p, self.dim)
    }

    /// `A·v` for a column vector `v`.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|k| self.get(i, k) * v[k]).sum::<u32>() % self.p)
            .collect()
    }

    pub fn rank(&self) -> usize {
        rank_of_rows(self.p, self.entries.chunks(self.dim).map(|r| r.to_vec()).collect())
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.dim
    }

    /// Multiplicative order, or `None` for a singular matrix or one whose
    /// order exceeds `limit`.
    pub fn order(&self, limit: usize) -> Option<usize> {
        if !self.is_invertible() {
            return None;
        }
        let mut acc = self.clone();
        for k in 1..=limit {
            if acc.is_identity() {
                return Some(k);
            }
            acc = acc.mul(self);
        }
        None
    }

    /// Companion matrix of the monic polynomial with coefficients
    /// `c_0 + c_1 x + … + x^d` (given without the leading 1).
    pub fn companion(p: u32, low_coeffs: &[u32]) -> Matrix {
        let d = low_coeffs.len();
        let mut m = Matrix { p, dim: d, entries: vec![0; d * d] };
        for i in 1..d {
            m.entries[i * d + (i - 1)] = 1;
        }
        for (i, &c) in low_coeffs.iter().enumerate() {
            m.entries[i * d + (d - 1)] = (p - c % p) % p;
        }
        m
    }

    pub fn block_diagonal(p: u32, blocks: &[Matrix]) -> Matrix {
        let dim: usize = blocks.iter().map(|b| b.dim).sum();
        let mut m = Matrix { p, dim, entries: vec![0; dim * dim] };
        let mut off = 0;
        for b in blocks {
            for i in 0..b.dim {
                for j in 0..b.dim {
                    m.entries[(off + i) * dim + off + j] = b.get(i, j);
                }
            }
            off += b.dim;
        }
        m
    }
}

fn inv_mod(a: u32, p: u32) -> u32 {
    (1..p).find(|&x| (a * x) % p == 1).expect("non-invertible residue")
}

pub(crate) fn rank_of_rows(p: u32, mut rows: Vec<Vec<u32>>) -> usize {
    let n = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..n {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] % p != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank][col] % p, p);
        for x in rows[rank].iter_mut() {
            *x = (*x * inv) % p;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let f = rows[r][col];
                for c in 0..n {
                    rows[r][c] = (rows[r][c] + p * p - f * rows[rank][c]) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `|GL(k, p)| = ∏_{i<k} (p^k − p^i)`.
pub fn gl_order(p: u64, k: u32) -> u128 {
    let pk = (p as u128).pow(k);
    (0..k).map(|i| pk - (p as u128).pow(i)).product()
}

/// All invertible `k×k` matrices over `F_p` of multiplicative order exactly
/// `m`, in lexicographic row-major order, stopping after `cap` matches.
/// Rows are enumerated so that singular prefixes are pruned early.
pub fn matrices_of_order(p: u32, k: usize, m: usize, cap: usize) -> Vec<Matrix> {
    let vectors: Vec<Vec<u32>> = (0..(p as usize).pow(k as u32)).map(|i| vector_of(i, p, k)).collect();
    let mut out = Vec::new();
    let mut rows: Vec<usize> = Vec::new();
    let limit = gl_order(p as u64, k as u32).min(100_000) as usize;
    fn rec(
        p: u32,
        k: usize,
        m: usize,
        cap: usize,
        limit: usize,
        vectors: &[Vec<u32>],
        rows: &mut Vec<usize>,
        out: &mut Vec<Matrix>,
    ) {
        if out.len() >= cap {
            return;
        }
        if rows.len() == k {
            let mat = Matrix::from_rows(p, &rows.iter().map(|&r| vectors[r].clone()).collect::<Vec<_>>());
            if mat.order(limit.min(m)) == Some(m) {
                out.push(mat);
            }
            return;
        }
        for v in 1..vectors.len() {
            let mut cand: Vec<Vec<u32>> = rows.iter().map(|&r| vectors[r].clone()).collect();
            cand.push(vectors[v].clone());
            if rank_of_rows(p, cand) == rows.len() + 1 {
                rows.push(v);
                rec(p, k, m, cap, limit, vectors, rows, out);
                rows.pop();
                if out.len() >= cap {
                    return;
                }
            }
        }
    }
    rec(p, k, m, cap, limit, &vectors, &mut rows, &mut out);
    out
}

/// Coordinates of the elementary abelian element with index `i`
/// (lexicographic: the first coordinate is the most significant digit).
pub fn vector_of(mut i: usize, p: u32, k: usize) -> Vec<u32> {
    let mut v = vec![0; k];
    for c in (0..k).rev() {
        v[c] = (i % p as usize) as u32;
        i /= p as usize;
    }
    v
}

pub fn index_of(v: &[u32], p: u32) -> usize {
    v.iter().fold(0usize, |acc, &x| acc * p as usize + x as usize)
}

/// Polynomials over `F_p`, coefficients from low to high degree, no
/// trailing zeros.
type Poly = Vec<u32>;

fn poly_trim(mut f: Poly) -> Poly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

/// Whether `f` divides `g` (both monic).
fn poly_divides(f: &Poly, g: &Poly, p: u32) -> bool {
    let mut r = g.clone();
    let df = f.len() - 1;
    while r.len() > df {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - df;
        for (i, &c) in f.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p * p - lead * c % p) % p;
        }
        r = poly_trim(r);
    }
    r.is_empty()
}

fn monic_polys(p: u32, degree: usize) -> Vec<Poly> {
    (0..(p as usize).pow(degree as u32))
        .map(|i| {
            let mut low: Vec<u32> = vector_of(i, p, degree);
            low.reverse();
            low.push(1);
            low
        })
        .collect()
}

/// One representative matrix per conjugacy class of `GL(k, p)`, as rational
/// canonical forms: block-diagonal companion matrices of invariant factors
/// `f_1 | f_2 | … | f_r` with `Σ deg f_i = k` and `f_r(0) ≠ 0`. The order
/// of the list is deterministic (by degree sequence, then coefficients).
pub fn rational_canonical_forms(p: u32, k: usize) -> Vec<Matrix> {
    assert!(is_prime(p as u64));
    let mut out = Vec::new();
    // sequences listed from the largest invariant factor downwards
    fn rec(p: u32, remaining: usize, seq: &mut Vec<Poly>, out: &mut Vec<Vec<Poly>>) {
        if remaining == 0 {
            out.push(seq.clone());
            return;
        }
        let max_deg = seq.last().map_or(remaining, |f| (f.len() - 1).min(remaining));
        for d in (1..=max_deg).rev() {
            for f in monic_polys(p, d) {
                if f[0] == 0 {
                    continue;
                }
                if let Some(prev) = seq.last() {
                    if !poly_divides(&f, prev, p) {
                        continue;
                    }
                }
                seq.push(f);
                rec(p, remaining - d, seq, out);
                seq.pop();
            }
        }
    }
    let mut seqs = Vec::new();
    rec(p, k, &mut Vec::new(), &mut seqs);
    for seq in seqs {
        let blocks: Vec<Matrix> = seq
            .iter()
            .rev()
            .map(|f| Matrix::companion(p, &f[..f.len() - 1]))
            .collect();
        out.push(Matrix::block_diagonal(p, &blocks));
    }
    out
}
