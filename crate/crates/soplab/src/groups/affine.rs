use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, One, Signed, Zero};

use crate::qlinalg::Rational;
use crate::report::CheckReport;

use super::word::{GenSymbol, GroupWord};
use super::GroupsError;

/// The exact affine map `t ↦ 2^k·t + q` with `q` a dyadic rational.
///
/// These maps form a group under composition (a copy of the solvable
/// Baumslag–Solitar group BS(1,2) is generated by `t ↦ t+1` and
/// `t ↦ t/2`), and all arithmetic is exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineDyadicMap {
    /// Scale exponent: the map multiplies by `2^k`.
    pub scale: i64,
    /// Dyadic offset.
    pub offset: Rational,
}

fn two_pow(k: i64) -> Rational {
    let two = BigInt::from(2);
    if k >= 0 {
        Rational::from(two.pow(k as u32))
    } else {
        Rational::new(BigInt::one(), two.pow((-k) as u32))
    }
}

impl AffineDyadicMap {
    pub fn identity() -> Self {
        AffineDyadicMap {
            scale: 0,
            offset: Rational::zero(),
        }
    }

    /// `t ↦ t + q`.
    pub fn translation(q: Rational) -> Self {
        AffineDyadicMap { scale: 0, offset: q }
    }

    /// `t ↦ 2^k·t`.
    pub fn scaling(k: i64) -> Self {
        AffineDyadicMap {
            scale: k,
            offset: Rational::zero(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.scale == 0 && self.offset.is_zero()
    }

    pub fn apply(&self, t: &Rational) -> Rational {
        two_pow(self.scale) * t + &self.offset
    }

    /// `self ∘ rhs` (apply `rhs` first).
    pub fn compose(&self, rhs: &AffineDyadicMap) -> AffineDyadicMap {
        AffineDyadicMap {
            scale: self.scale + rhs.scale,
            offset: two_pow(self.scale) * &rhs.offset + &self.offset,
        }
    }

    pub fn inverse(&self) -> AffineDyadicMap {
        AffineDyadicMap {
            scale: -self.scale,
            offset: two_pow(-self.scale) * -&self.offset,
        }
    }

    pub fn pow(&self, n: i64) -> AffineDyadicMap {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = AffineDyadicMap::identity();
        for _ in 0..n.unsigned_abs() {
            acc = base.compose(&acc);
        }
        acc
    }

    /// Conjugate `self^h = h⁻¹ ∘ self ∘ h`.
    pub fn conjugate_by(&self, h: &AffineDyadicMap) -> AffineDyadicMap {
        h.inverse().compose(&self.compose(h))
    }
}

impl fmt::Display for AffineDyadicMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.offset.is_zero() {
            write!(f, "t ↦ 2^{}·t", self.scale)
        } else if self.offset.is_negative() {
            write!(f, "t ↦ 2^{}·t − {}", self.scale, -&self.offset)
        } else {
            write!(f, "t ↦ 2^{}·t + {}", self.scale, self.offset)
        }
    }
}

/// Evaluates a word in the affine model; letters act right to left, so
/// the word `x y` denotes the map `x ∘ y`.
pub fn evaluate_word(
    w: &GroupWord,
    assignment: &BTreeMap<GenSymbol, AffineDyadicMap>,
) -> Result<AffineDyadicMap, GroupsError> {
    let mut acc = AffineDyadicMap::identity();
    for l in w.letters() {
        let base = assignment
            .get(&l.gen)
            .ok_or_else(|| GroupsError::Unassigned(l.gen.name().to_string()))?;
        let factor = if l.exp < 0 { base.inverse() } else { base.clone() };
        acc = acc.compose(&factor);
    }
    Ok(acc)
}

/// The standard model maps: `x₀ : t ↦ t+1` and `x₁ : t ↦ t/2`.
pub fn chain_model() -> (AffineDyadicMap, AffineDyadicMap) {
    (
        AffineDyadicMap::translation(Rational::one()),
        AffineDyadicMap::scaling(-1),
    )
}

/// Certifies a length-2 squaring-conjugation chain in the affine model:
/// `x₁⁻¹x₀x₁ = x₀²` holds exactly, the elements are nontrivial and
/// distinct, and the reversed relation `x₀⁻¹x₁x₀ = x₁²` fails.
pub fn bs12_chain_check() -> CheckReport {
    let (x0, x1) = chain_model();
    let conj = x0.conjugate_by(&x1);
    let squared = x0.pow(2);
    let reversed_holds = x1.conjugate_by(&x0) == x1.pow(2);

    let ok = conj == squared
        && !x0.is_identity()
        && !x1.is_identity()
        && x0 != x1
        && !reversed_holds;
    let report = if ok {
        CheckReport::pass("groups.bs12_chain")
    } else {
        CheckReport::fail(
            "groups.bs12_chain",
            format!("x₀^x₁ = {conj}, x₀² = {squared}, reversed holds: {reversed_holds}"),
        )
    };
    report
        .with_value("reading", "x^y = x^2 with g^h = h^-1 g h")
        .with_value("x0", &chain_model().0)
        .with_value("x1", &chain_model().1)
        .with_value("conjugate", &conj)
        .with_value("reversed_relation_fails", !reversed_holds)
}
