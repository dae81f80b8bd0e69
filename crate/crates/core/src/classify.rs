//! Shape of `G/Φ(G)` for soluble non-nilpotent groups with at most `2σ`
//! maximal subgroups, dispatched on `m(G)` and `σ(G)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::{divisors, factorize, gcd, is_fermat_prime, is_mersenne_prime, is_prime, is_squarefree, omega, prime_power};
use crate::cover::sigma_value;
use crate::descriptor::{matches_descriptor, NamedGroup, StructureDescriptor as D};
use crate::error::{Error, Result};
use crate::ff::gl_order;
use crate::group::Group;
use crate::lattice::{frattini, m_count};
use crate::record::{ids, Counterexample, Param, VerificationRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Regime {
    MEq3,
    MEqSigma,
    MLt2SigmaMinus1,
    MEq2SigmaMinus1,
    MEq2Sigma,
}

impl Regime {
    pub fn of(m: usize, sigma: usize) -> Option<Regime> {
        Some(if m == 3 {
            Regime::MEq3
        } else if m == sigma {
            Regime::MEqSigma
        } else if m > sigma && m + 1 < 2 * sigma {
            Regime::MLt2SigmaMinus1
        } else if m + 1 == 2 * sigma {
            Regime::MEq2SigmaMinus1
        } else if m == 2 * sigma {
            Regime::MEq2Sigma
        } else {
            return None;
        })
    }

    pub fn theorem_id(self) -> &'static str {
        match self {
            Regime::MEq3 => ids::TWO_MAXIMALS_REMARK,
            Regime::MEqSigma => ids::EQUAL_COUNT,
            Regime::MLt2SigmaMinus1 => ids::BELOW_TWICE,
            Regime::MEq2SigmaMinus1 => ids::TWICE_MINUS_ONE,
            Regime::MEq2Sigma => ids::TWICE,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TemplateMatch {
    pub regime: Regime,
    /// First matching case, empty when nothing matched.
    pub case_id: String,
    pub parameters: BTreeMap<String, Param>,
    pub matched: bool,
    pub all_matches: Vec<String>,
    pub diagnostics: Vec<String>,
}

/// One concrete parameter choice for a case.
struct Candidate {
    case_id: &'static str,
    descriptor: D,
    params: Vec<(&'static str, Param)>,
    /// Side conditions on `σ` that the case also asserts.
    side: std::result::Result<(), String>,
}

struct Shape {
    order: usize,
    m: usize,
    sigma: usize,
}

impl Shape {
    /// `E_{σ−1}` as `(p, k)` when `σ − 1` is a prime power.
    fn e(&self) -> Option<(u32, u32)> {
        prime_power((self.sigma - 1) as u64).map(|(p, k)| (p as u32, k))
    }

    fn gl(&self) -> u128 {
        self.e().map_or(0, |(p, k)| gl_order(p as u64, k))
    }

    fn sigma_not_three(&self) -> std::result::Result<(), String> {
        if self.sigma == 3 {
            Err("σ = 3".into())
        } else {
            Ok(())
        }
    }

    fn mersenne_q(&self) -> std::result::Result<(), String> {
        if is_mersenne_prime(self.sigma as u64 - 1) {
            Ok(())
        } else {
            Err(format!("σ − 1 = {} is not a Mersenne prime", self.sigma - 1))
        }
    }
}

fn elem(p: u32, k: u32) -> D {
    D::ElemAbelian { p, k }
}

fn prime_list(n: usize) -> Param {
    Param::List(factorize(n as u64).iter().map(|&(p, _)| p as i64).collect())
}

fn divides(a: usize, b: usize) -> bool {
    a != 0 && b % a == 0
}

fn is_prime_power(n: usize) -> bool {
    n > 1 && prime_power(n as u64).is_some()
}

/// `(E_{σ−1} ⋊ Z_t) × Z_P` with `P` a product of `ell` distinct primes
/// coprime to `t`, faithful actions first.
fn split_candidates(
    s: &Shape,
    case_id: &'static str,
    ell: i64,
    need_gl: bool,
    side: std::result::Result<(), String>,
) -> Vec<Candidate> {
    let Some((p, k)) = s.e() else { return vec![] };
    if s.order % (s.sigma - 1) != 0 || ell < 0 {
        return vec![];
    }
    let rest = s.order / (s.sigma - 1);
    let mut out = Vec::new();
    for faithful in [true, false] {
        for t in divisors(rest as u64).into_iter().map(|t| t as usize) {
            let pp = rest / t;
            if need_gl && s.gl() % t as u128 != 0 {
                continue;
            }
            if !is_squarefree(pp as u64) || gcd(pp as u64, t as u64) != 1 || omega(pp as u64) as i64 != ell {
                continue;
            }
            let descriptor = D::direct(vec![D::semidirect(elem(p, k), D::Cyclic(t), faithful), D::Cyclic(pp)]);
            out.push(Candidate {
                case_id,
                descriptor,
                params: vec![
                    ("t", t.into()),
                    ("ell", Param::Int(ell)),
                    ("primes", prime_list(pp)),
                    ("faithful", faithful.into()),
                ],
                side: side.clone(),
            });
        }
    }
    out
}

fn equal_count(s: &Shape) -> Vec<Candidate> {
    let Some((p, k)) = s.e() else { return vec![] };
    if s.order % (s.sigma - 1) != 0 {
        return vec![];
    }
    let pa = s.order / (s.sigma - 1);
    if !is_prime_power(pa) {
        return vec![];
    }
    vec![Candidate {
        case_id: "3.2",
        descriptor: D::semidirect(elem(p, k), D::Cyclic(pa), true),
        params: vec![("p_alpha", pa.into()), ("faithful", true.into())],
        side: s.sigma_not_three(),
    }]
}

fn below_twice(s: &Shape) -> Vec<Candidate> {
    split_with_offset(s, "3.4", s.m as i64 - s.sigma as i64 + 1, true, s.sigma_not_three())
}

fn sort_faithful_first(cands: &mut [Candidate]) {
    cands.sort_by_key(|c| {
        let faithful = c.params.iter().any(|(n, v)| *n == "faithful" && *v == Param::Bool(true));
        !faithful
    });
}

/// The split shapes where `ℓ = base − ω(t)`.
fn split_with_offset(s: &Shape, case_id: &'static str, base: i64, need_gl: bool, side: std::result::Result<(), String>) -> Vec<Candidate> {
    let mut out = Vec::new();
    for w in 0..=base.max(0) {
        for c in split_candidates(s, case_id, base - w, need_gl, side.clone()) {
            if let Some((_, Param::Int(t))) = c.params.iter().find(|(n, _)| *n == "t") {
                if omega(*t as u64) as i64 == w {
                    out.push(c);
                }
            }
        }
    }
    sort_faithful_first(&mut out);
    out
}

fn twice_minus_one(s: &Shape) -> Vec<Candidate> {
    let mut out = split_with_offset(s, "3.6(i)", s.sigma as i64, true, s.sigma_not_three());
    if let Some((p, k)) = s.e() {
        let e2 = (s.sigma - 1) * (s.sigma - 1);
        if s.order % e2 == 0 {
            let pa = s.order / e2;
            if is_prime_power(pa) && s.gl() % pa as u128 == 0 {
                for faithful in [true, false] {
                    out.push(Candidate {
                        case_id: "3.6(ii)",
                        descriptor: D::semidirect(elem(p, 2 * k), D::Cyclic(pa), faithful),
                        params: vec![("p_alpha", pa.into()), ("faithful", faithful.into())],
                        side: s.sigma_not_three(),
                    });
                }
            }
        }
    }
    out
}

fn twice(s: &Shape) -> Vec<Candidate> {
    let mut out = Vec::new();
    out.push(Candidate {
        case_id: "3.10(i)",
        descriptor: D::Direct(vec![D::Cyclic(2), D::Named(NamedGroup::S3)]),
        params: vec![],
        side: Ok(()),
    });
    let q = s.sigma - 1;
    if let Some((p2, n2)) = prime_power(s.sigma as u64) {
        if s.order == s.sigma * q * q && is_prime(q as u64) {
            out.push(Candidate {
                case_id: "3.10(ii)",
                descriptor: D::direct(vec![
                    D::semidirect(elem(p2 as u32, n2), D::Cyclic(q), false),
                    D::Cyclic(q),
                ]),
                params: vec![("q", q.into())],
                side: s.mersenne_q(),
            });
        }
    }
    out.extend(split_with_offset(s, "3.10(iii)", s.sigma as i64 + 1, false, s.sigma_not_three()));
    if q % 2 == 1 && is_prime(q as u64) && s.order % (q * q * q) == 0 {
        let t = s.order / (q * q * q);
        if is_prime_power(t) {
            for faithful in [true, false] {
                out.push(Candidate {
                    case_id: "3.10(iv)",
                    descriptor: D::direct(vec![
                        D::semidirect(elem(q as u32, 1), D::Cyclic(t), faithful),
                        D::Cyclic(q),
                        D::Cyclic(q),
                    ]),
                    params: vec![("t", t.into()), ("faithful", faithful.into())],
                    side: Ok(()),
                });
            }
        }
    }
    if let Some((p, k)) = s.e() {
        let e2 = q * q;
        if s.order % e2 == 0 {
            let r = s.order / e2;
            let not_fermat = if is_fermat_prime(q as u64) {
                Err(format!("σ − 1 = {q} is a Fermat prime"))
            } else {
                Ok(())
            };
            for (f1, f2) in [(true, true), (true, false), (false, true), (false, false)] {
                for t1 in divisors(r as u64).into_iter().map(|d| d as usize) {
                    let t2 = r / t1;
                    if t1 >= t2 || !is_prime_power(t1) || !is_prime_power(t2) || gcd(t1 as u64, t2 as u64) != 1 {
                        continue;
                    }
                    out.push(Candidate {
                        case_id: "3.10(v)",
                        descriptor: D::Direct(vec![
                            D::semidirect(elem(p, k), D::Cyclic(t1), f1),
                            D::semidirect(elem(p, k), D::Cyclic(t2), f2),
                        ]),
                        params: vec![("t1", t1.into()), ("t2", t2.into()), ("faithful", (f1 && f2).into())],
                        side: not_fermat.clone(),
                    });
                }
            }
            if omega(r as u64) == 2 {
                for faithful in [true, false] {
                    out.push(Candidate {
                        case_id: "3.10(vi)",
                        descriptor: D::semidirect(elem(p, 2 * k), D::Cyclic(r), faithful),
                        params: vec![("t", r.into()), ("faithful", faithful.into())],
                        side: s.sigma_not_three(),
                    });
                }
            }
            for faithful in [true, false] {
                for t in divisors(r as u64).into_iter().map(|d| d as usize) {
                    let pr = r / t;
                    if t <= 2 || !is_prime_power(t) || !is_prime(pr as u64) || gcd(pr as u64, t as u64) != 1 {
                        continue;
                    }
                    out.push(Candidate {
                        case_id: "3.10(vii)",
                        descriptor: D::Direct(vec![D::semidirect(elem(p, 2 * k), D::Cyclic(t), faithful), D::Cyclic(pr)]),
                        params: vec![("t", t.into()), ("p", pr.into()), ("faithful", faithful.into())],
                        side: s.sigma_not_three(),
                    });
                }
            }
        }
    }
    if let Some((p2, n2)) = prime_power(s.sigma as u64) {
        if is_prime(q as u64) && s.order % (s.sigma * q) == 0 {
            let t = s.order / (s.sigma * q);
            if is_prime_power(t) && divides(t, s.sigma - 2) {
                out.push(Candidate {
                    case_id: "3.10(viii)",
                    descriptor: D::semidirect(
                        elem(p2 as u32, n2),
                        D::semidirect(D::Cyclic(q), D::Cyclic(t), false),
                        false,
                    ),
                    params: vec![("q", q.into()), ("t", t.into())],
                    side: s.mersenne_q(),
                });
            }
        }
    }
    out
}

fn case_rank(case_id: &str) -> usize {
    const ORDER: &[&str] = &[
        "3.10(i)", "3.10(ii)", "3.10(iii)", "3.10(iv)", "3.10(v)", "3.10(vi)", "3.10(vii)", "3.10(viii)",
    ];
    ORDER.iter().position(|c| *c == case_id).unwrap_or(0)
}

/// Why `G` falls outside the classified family, if it does.
pub fn classification_precondition(g: &Group) -> Result<Option<String>> {
    if g.order() == 1 || g.is_cyclic() {
        return Ok(Some("cyclic".into()));
    }
    if !g.is_soluble() {
        return Ok(Some("insoluble".into()));
    }
    if g.is_nilpotent() {
        return Ok(Some("nilpotent".into()));
    }
    let m = m_count(g)?;
    let s = sigma_value(g)?.unwrap();
    if m > 2 * s {
        return Ok(Some(format!("m = {m} exceeds 2σ = {}", 2 * s)));
    }
    Ok(None)
}

/// Matches `G/Φ(G)` against the templates of its regime. Cases of the
/// `m = 2σ` regime are tried in their listed order; the first match is
/// reported and every match kept.
pub fn classify_frattini_quotient(g: &Group) -> Result<TemplateMatch> {
    if let Some(reason) = classification_precondition(g)? {
        return Err(Error::Precondition(reason));
    }
    let m = m_count(g)?;
    let sigma = sigma_value(g)?.unwrap();
    let phi = frattini(g)?;
    let (q, _) = g.quotient_unchecked(&phi);
    let shape = Shape { order: q.order(), m, sigma };
    let regime = Regime::of(m, sigma).expect("m ≤ 2σ");
    let mut candidates = match regime {
        Regime::MEq3 => vec![Candidate {
            case_id: "Remark",
            descriptor: D::ElemAbelian { p: 2, k: 2 },
            params: vec![],
            side: Ok(()),
        }],
        Regime::MEqSigma => equal_count(&shape),
        Regime::MLt2SigmaMinus1 => below_twice(&shape),
        Regime::MEq2SigmaMinus1 => twice_minus_one(&shape),
        Regime::MEq2Sigma => twice(&shape),
    };
    if regime == Regime::MEq2Sigma {
        candidates.sort_by_key(|c| case_rank(c.case_id));
    }
    let mut parameters = BTreeMap::new();
    parameters.insert("m".to_string(), Param::from(m));
    parameters.insert("sigma".to_string(), Param::from(sigma));
    parameters.insert("frattini_order".to_string(), Param::from(phi.size()));
    parameters.insert("quotient_order".to_string(), Param::from(q.order()));
    let mut all_matches: Vec<String> = Vec::new();
    let mut diagnostics = Vec::new();
    let mut first: Option<Candidate> = None;
    for c in candidates {
        if all_matches.iter().any(|a| a == c.case_id) {
            continue;
        }
        if c.descriptor.order() != q.order() || !matches_descriptor(&q, &c.descriptor)? {
            continue;
        }
        match &c.side {
            Ok(()) => {
                all_matches.push(c.case_id.to_string());
                if first.is_none() {
                    first = Some(c);
                }
            }
            Err(why) => diagnostics.push(format!("{} structure {} holds but {why}", c.case_id, c.descriptor)),
        }
    }
    if regime == Regime::MEq2Sigma && q.order() == shape.sigma * (shape.sigma - 1).pow(2) {
        // the other parse of (ii): E_σ ⋊ (Z_q × Z_q)
        if let Some(e) = D::elementary(shape.sigma) {
            let qq = shape.sigma - 1;
            let alt = D::semidirect(e, D::Direct(vec![D::Cyclic(qq), D::Cyclic(qq)]), false);
            let hit = matches_descriptor(&q, &alt)?;
            diagnostics.push(format!("3.10(ii) read as {alt}: {}", if hit { "matches" } else { "no match" }));
        }
    }
    let matched = first.is_some();
    let case_id = match first {
        Some(c) => {
            parameters.insert("descriptor".to_string(), Param::Text(c.descriptor.to_string()));
            for (k, v) in c.params {
                parameters.insert(k.to_string(), v);
            }
            c.case_id.to_string()
        }
        None => String::new(),
    };
    if !case_id.is_empty() {
        parameters.insert("case_id".to_string(), Param::Text(case_id.clone()));
    }
    Ok(TemplateMatch { regime, case_id, parameters, matched, all_matches, diagnostics })
}

/// The classification as a record under the theorem of its regime.
pub fn verify_classification(g: &Group) -> VerificationRecord {
    match classification_precondition(g) {
        Err(e) => return VerificationRecord::skip(g, ids::CLASSIFY, e.to_string()),
        Ok(Some(reason)) => return VerificationRecord::skip(g, ids::CLASSIFY, reason),
        Ok(None) => {}
    }
    let tm = match classify_frattini_quotient(g) {
        Ok(tm) => tm,
        Err(e) => return VerificationRecord::skip(g, ids::CLASSIFY, e.to_string()),
    };
    let id = tm.regime.theorem_id();
    let mut rec = if tm.matched {
        let mut reason = format!("G/Φ(G) matches case {}", tm.case_id);
        if tm.all_matches.len() > 1 {
            reason.push_str(&format!(" (also {})", tm.all_matches[1..].join(", ")));
        }
        VerificationRecord::pass(g, id, reason)
    } else {
        let mut reason = format!("G/Φ(G) matches no case of regime {:?}", tm.regime);
        if !tm.diagnostics.is_empty() {
            reason.push_str(&format!("; {}", tm.diagnostics.join("; ")));
        }
        VerificationRecord::fail(g, id, reason, Counterexample::new(id, g))
    };
    rec.parameters = tm.parameters;
    if tm.all_matches.len() > 1 {
        rec.set_param("all_matches", tm.all_matches.join(","));
    }
    rec
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::*;
    use crate::record::Outcome;

    fn case(g: &Group) -> TemplateMatch {
        classify_frattini_quotient(g).unwrap()
    }

    #[test]
    fn anchors() {
        let s3 = case(&symmetric(3).unwrap());
        assert_eq!((s3.regime, s3.case_id.as_str()), (Regime::MEqSigma, "3.2"));
        assert_eq!(s3.parameters["p_alpha"], Param::Int(2));
        let a4 = case(&alternating(4).unwrap());
        assert_eq!((a4.regime, a4.case_id.as_str()), (Regime::MEqSigma, "3.2"));
        assert_eq!(a4.parameters["p_alpha"], Param::Int(3));
        let d12 = case(&dihedral(6).unwrap());
        assert_eq!((d12.regime, d12.case_id.as_str()), (Regime::MEq2Sigma, "3.10(i)"));
        let s4 = case(&symmetric(4).unwrap());
        assert_eq!(s4.case_id, "3.10(viii)");
        assert_eq!((s4.parameters["q"].clone(), s4.parameters["t"].clone()), (Param::Int(3), Param::Int(2)));
    }

    #[test]
    fn preconditions_skip() {
        let r = verify_classification(&elementary_abelian(2, 2).unwrap());
        assert_eq!((r.outcome, r.theorem_id.as_str(), r.reason.as_str()), (Outcome::Skip, ids::CLASSIFY, "nilpotent"));
        assert_eq!(verify_classification(&cyclic(6).unwrap()).reason, "cyclic");
        assert_eq!(verify_classification(&alternating(5).unwrap()).reason, "insoluble");
        assert!(matches!(classify_frattini_quotient(&cyclic(6).unwrap()), Err(Error::Precondition(_))));
    }

    #[test]
    fn regimes_partition() {
        for s in 3..40 {
            for m in s..=2 * s {
                let r = Regime::of(m, s).unwrap();
                let expect = if m == 3 {
                    Regime::MEq3
                } else if m == s {
                    Regime::MEqSigma
                } else if m < 2 * s - 1 {
                    Regime::MLt2SigmaMinus1
                } else if m == 2 * s - 1 {
                    Regime::MEq2SigmaMinus1
                } else {
                    Regime::MEq2Sigma
                };
                assert_eq!(r, expect);
            }
            assert_eq!(Regime::of(2 * s + 1, s), None);
        }
    }
}
