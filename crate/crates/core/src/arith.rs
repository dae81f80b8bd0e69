//! Integer helpers and the prime-power equation `p^n = q^m + 1`.

use std::collections::HashMap;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorisation by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n % d == 0 {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Number of distinct prime divisors; equals the number of maximal
/// subgroups of a cyclic group of order `n`.
pub fn omega(n: u64) -> usize {
    factorize(n).len()
}

/// `Some((p, k))` when `n = p^k` with `k ≥ 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    match factorize(n).as_slice() {
        [(p, k)] => Some((*p, *k)),
        _ => None,
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn is_squarefree(n: u64) -> bool {
    factorize(n).iter().all(|&(_, e)| e == 1)
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| is_prime(k)).collect()
}

/// Prime of the form `2^k − 1`.
pub fn is_mersenne_prime(q: u64) -> bool {
    is_prime(q) && (q + 1).is_power_of_two()
}

/// Prime of the form `2^k + 1`.
pub fn is_fermat_prime(p: u64) -> bool {
    p >= 3 && is_prime(p) && (p - 1).is_power_of_two()
}

/// Which alternative of the classification of `p^n = q^m + 1` a solution
/// falls under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PrimePowerCase {
    /// `m = 1` and `q` is a Mersenne prime.
    MersenneQ,
    /// `n = 1` and `p` is a Fermat prime.
    FermatP,
    /// `(p, n, q, m) = (3, 2, 2, 3)`.
    NineEqualsEightPlusOne,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimePowerSolution {
    pub p: u64,
    pub n: u32,
    pub q: u64,
    pub m: u32,
    /// Every case whose description the solution satisfies.
    pub cases: Vec<PrimePowerCase>,
}

pub fn prime_power_cases(p: u64, n: u32, q: u64, m: u32) -> Vec<PrimePowerCase> {
    let mut cases = Vec::new();
    if m == 1 && is_mersenne_prime(q) {
        cases.push(PrimePowerCase::MersenneQ);
    }
    if n == 1 && is_fermat_prime(p) {
        cases.push(PrimePowerCase::FermatP);
    }
    if (p, n, q, m) == (3, 2, 2, 3) {
        cases.push(PrimePowerCase::NineEqualsEightPlusOne);
    }
    cases
}

/// All `(p, n, q, m)` with `p, q` prime `≤ p_max`, `1 ≤ n, m ≤ exp_max` and
/// `p^n = q^m + 1`, sorted, each tagged with its cases. Exact big-integer
/// arithmetic throughout.
pub fn solve_prime_power_eq(p_max: u64, exp_max: u32) -> Vec<PrimePowerSolution> {
    let primes = primes_up_to(p_max);
    let mut shifted: HashMap<BigUint, Vec<(u64, u32)>> = HashMap::new();
    for &q in &primes {
        let mut v = BigUint::from(1u32);
        for m in 1..=exp_max {
            v *= q;
            shifted.entry(&v + 1u32).or_default().push((q, m));
        }
    }
    let mut out = Vec::new();
    for &p in &primes {
        let mut v = BigUint::from(1u32);
        for n in 1..=exp_max {
            v *= p;
            if let Some(hits) = shifted.get(&v) {
                for &(q, m) in hits {
                    out.push(PrimePowerSolution { p, n, q, m, cases: prime_power_cases(p, n, q, m) });
                }
            }
        }
    }
    out.sort_by_key(|s| (s.p, s.n, s.q, s.m));
    out
}
