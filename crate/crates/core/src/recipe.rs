//! Construction recipes: a small label language for the groups of the
//! corpus.
//!
//! ```text
//! product := term (" x " term)*
//! term    := atom [":" "C(" m ")" ["#" i]]
//! atom    := "C(" n ")" | "E(" p^k ")" | "D(" 2n ")" | "S(" n ")" | "A(" n ")"
//!          | "Q(" 4n ")" | "(" product ")"
//! ```
//!
//! `E(q):C(m)#i` is `E_q ⋊ Z_m` with `Z_m` acting through the `i`-th
//! (1-based, `#1` may be omitted) rational canonical form of order `m` in
//! `GL(k, p)`. A semidirect normal part written `C(p)` for a prime `p` is
//! read as `E(p)`. Direct products associate to the left.

use std::fmt;

use crate::arith::prime_power;
use crate::construct;
use crate::error::{Error, Result};
use crate::ff::{rational_canonical_forms, Matrix};
use crate::group::Group;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Recipe {
    Cyclic(usize),
    Elementary(usize),
    /// Dihedral group of the given order.
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    /// Dicyclic group of the given order.
    Dicyclic(usize),
    Semidirect { normal: usize, m: usize, index: usize },
    Direct(Box<Recipe>, Box<Recipe>),
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recipe::Cyclic(n) => write!(f, "C({n})"),
            Recipe::Elementary(q) => write!(f, "E({q})"),
            Recipe::Dihedral(n) => write!(f, "D({n})"),
            Recipe::Symmetric(n) => write!(f, "S({n})"),
            Recipe::Alternating(n) => write!(f, "A({n})"),
            Recipe::Dicyclic(n) => write!(f, "Q({n})"),
            Recipe::Semidirect { normal, m, index } => {
                write!(f, "E({normal}):C({m})")?;
                if *index != 1 {
                    write!(f, "#{index}")?;
                }
                Ok(())
            }
            Recipe::Direct(a, b) => {
                write!(f, "{a} x ")?;
                if matches!(**b, Recipe::Direct(..)) {
                    write!(f, "({b})")
                } else {
                    write!(f, "{b}")
                }
            }
        }
    }
}

impl std::str::FromStr for Recipe {
    type Err = Error;

    fn from_str(s: &str) -> Result<Recipe> {
        let mut p = Parser { s: s.as_bytes(), pos: 0 };
        let r = p.product()?;
        if p.pos != p.s.len() {
            return Err(p.error("trailing input"));
        }
        Ok(r)
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse { column: self.pos + 1, message: message.to_string() }
    }

    fn eat(&mut self, lit: &str) -> bool {
        if self.s[self.pos..].starts_with(lit.as_bytes()) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &str) -> Result<()> {
        if self.eat(lit) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{lit}`")))
        }
    }

    fn number(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Parse { column: start + 1, message: "number too large".into() })
    }

    fn product(&mut self) -> Result<Recipe> {
        let mut acc = self.term()?;
        while self.eat(" x ") {
            let rhs = self.term()?;
            acc = Recipe::Direct(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Recipe> {
        let start = self.pos;
        let atom = self.atom()?;
        if !self.eat(":") {
            return Ok(atom);
        }
        let normal = match atom {
            Recipe::Elementary(q) => q,
            Recipe::Cyclic(p) if crate::arith::is_prime(p as u64) => p,
            _ => {
                return Err(Error::Parse {
                    column: start + 1,
                    message: "semidirect normal part must be elementary abelian".into(),
                })
            }
        };
        self.expect("C(")?;
        let m = self.number()?;
        self.expect(")")?;
        let index = if self.eat("#") { self.number()? } else { 1 };
        if index == 0 {
            return Err(self.error("action index is 1-based"));
        }
        Ok(Recipe::Semidirect { normal, m, index })
    }

    fn atom(&mut self) -> Result<Recipe> {
        if self.eat("(") {
            let r = self.product()?;
            self.expect(")")?;
            return Ok(r);
        }
        let col = self.pos;
        let Some(&head) = self.s.get(self.pos) else {
            return Err(self.error("unexpected end of input"));
        };
        self.pos += 1;
        self.expect("(")?;
        let n = self.number()?;
        self.expect(")")?;
        let bad = |message: String| Error::Parse { column: col + 1, message };
        Ok(match head {
            b'C' => Recipe::Cyclic(n),
            b'E' => Recipe::Elementary(n),
            b'D' if n >= 2 && n % 2 == 0 => Recipe::Dihedral(n),
            b'D' => return Err(bad(format!("dihedral order {n} must be even"))),
            b'S' => Recipe::Symmetric(n),
            b'A' => Recipe::Alternating(n),
            b'Q' if n >= 8 && n % 4 == 0 => Recipe::Dicyclic(n),
            b'Q' => return Err(bad(format!("dicyclic order {n} must be a multiple of 4, at least 8"))),
            _ => {
                self.pos = col;
                return Err(self.error("unknown group symbol"));
            }
        })
    }
}

/// Rational canonical forms of multiplicative order exactly `m` in
/// `GL(k, p)` where `q = p^k`.
pub fn semidirect_actions(q: usize, m: usize) -> Result<Vec<Matrix>> {
    let (p, k) = prime_power(q as u64).ok_or_else(|| Error::Input(format!("{q} is not a prime power")))?;
    Ok(rational_canonical_forms(p as u32, k as usize)
        .into_iter()
        .filter(|a| a.order(m) == Some(m))
        .collect())
}

impl Recipe {
    pub fn order(&self) -> usize {
        match self {
            Recipe::Cyclic(n)
            | Recipe::Elementary(n)
            | Recipe::Dihedral(n)
            | Recipe::Dicyclic(n) => *n,
            Recipe::Symmetric(n) => (1..=*n).product(),
            Recipe::Alternating(n) => ((1..=*n).product::<usize>() / 2).max(1),
            Recipe::Semidirect { normal, m, .. } => normal * m,
            Recipe::Direct(a, b) => a.order().saturating_mul(b.order()),
        }
    }

    /// Builds the group, labelled with the recipe text.
    pub fn build(&self) -> Result<Group> {
        let g = match self {
            Recipe::Cyclic(n) => construct::cyclic(*n)?,
            Recipe::Elementary(q) => construct::elementary_abelian_of_order(*q)?,
            Recipe::Dihedral(n) => construct::dihedral(n / 2)?,
            Recipe::Symmetric(n) => construct::symmetric(*n)?,
            Recipe::Alternating(n) => construct::alternating(*n)?,
            Recipe::Dicyclic(n) => construct::dicyclic(n / 4)?,
            Recipe::Semidirect { normal, m, index } => {
                if normal * m > crate::group::MAX_ORDER {
                    return Err(Error::OrderBound { order: normal * m, bound: crate::group::MAX_ORDER });
                }
                let actions = semidirect_actions(*normal, *m)?;
                let mat = actions.get(index - 1).ok_or_else(|| {
                    Error::Input(format!("E({normal}):C({m}) has {} actions, #{index} requested", actions.len()))
                })?;
                construct::matrix_semidirect(mat, *m)?
            }
            Recipe::Direct(a, b) => {
                if self.order() > crate::group::MAX_ORDER {
                    return Err(Error::OrderBound { order: self.order(), bound: crate::group::MAX_ORDER });
                }
                construct::direct_product(&a.build()?, &b.build()?)?
            }
        };
        Ok(g.with_label(self.to_string()))
    }
}

/// Parses and builds a recipe.
pub fn build_recipe(text: &str) -> Result<Group> {
    text.parse::<Recipe>()?.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::is_isomorphic;

    #[test]
    fn round_trip() {
        for text in [
            "C(12)",
            "E(8):C(7)",
            "D(12)",
            "S(4)",
            "A(4)",
            "E(4):C(3) x C(5)",
            "E(9):C(2)#3",
            "C(2) x (C(3) x C(5))",
            "C(2) x C(3) x C(5)",
            "Q(8) x E(4)",
        ] {
            let r: Recipe = text.parse().unwrap();
            assert_eq!(r.to_string(), text);
        }
        let r: Recipe = "C(3):C(2)".parse().unwrap();
        assert_eq!(r.to_string(), "E(3):C(2)");
        let r: Recipe = "(C(2) x C(3)) x C(5)".parse().unwrap();
        assert_eq!(r.to_string(), "C(2) x C(3) x C(5)");
    }

    #[test]
    fn parse_errors_name_a_column() {
        let e = "C(12) y".parse::<Recipe>().unwrap_err();
        assert!(matches!(e, Error::Parse { column: 6, .. }), "{e:?}");
        assert!(matches!("D(7)".parse::<Recipe>(), Err(Error::Parse { column: 1, .. })));
        assert!("S(4):C(2)".parse::<Recipe>().is_err());
        assert!("C(".parse::<Recipe>().is_err());
    }

    #[test]
    fn builds() {
        let a4 = build_recipe("E(4):C(3)").unwrap();
        assert_eq!(a4.order(), 12);
        assert_eq!(a4.label(), "E(4):C(3)");
        assert!(is_isomorphic(&a4, &crate::construct::alternating(4).unwrap()).is_some());
        let d12 = build_recipe("D(12)").unwrap();
        assert!(is_isomorphic(&d12, &crate::construct::dihedral(6).unwrap()).is_some());
        let s3 = build_recipe("C(3):C(2)").unwrap();
        assert!(is_isomorphic(&s3, &crate::construct::symmetric(3).unwrap()).is_some());
        assert!(build_recipe("E(4):C(5)").is_err());
        assert!(matches!(build_recipe("C(50) x C(50)"), Err(Error::OrderBound { .. })));
        assert_eq!(semidirect_actions(4, 3).unwrap().len(), 1);
    }
}
