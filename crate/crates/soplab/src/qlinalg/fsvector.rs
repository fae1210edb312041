use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, Signed, Zero};

/// Arbitrary-precision rational; always in lowest terms with positive
/// denominator (maintained by `num::BigRational` itself).
pub type Rational = num::BigRational;

/// Tag of a basis symbol: the `a`/`b` pair sequence, or a generic
/// coordinate basis `e` for test spaces and amalgam coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisKind {
    A,
    B,
    E,
}

/// An indexed basis symbol, ordered lexicographically by `(index, kind)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasisIndex {
    pub kind: BasisKind,
    pub index: u64,
}

impl BasisIndex {
    pub fn a(index: u64) -> Self {
        BasisIndex { kind: BasisKind::A, index }
    }
    pub fn b(index: u64) -> Self {
        BasisIndex { kind: BasisKind::B, index }
    }
    pub fn e(index: u64) -> Self {
        BasisIndex { kind: BasisKind::E, index }
    }
}

impl Ord for BasisIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.index, self.kind).cmp(&(other.index, other.kind))
    }
}

impl PartialOrd for BasisIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            BasisKind::A => "a",
            BasisKind::B => "b",
            BasisKind::E => "e",
        };
        write!(f, "{}{}", k, self.index)
    }
}

/// Finite-support vector with exact rational coefficients.
///
/// Zero coefficients are never stored; two vectors are equal iff their
/// stored entry maps are equal.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FSVector {
    entries: BTreeMap<BasisIndex, Rational>,
}

impl FSVector {
    pub fn zero() -> Self {
        FSVector::default()
    }

    pub fn unit(idx: BasisIndex) -> Self {
        let mut v = FSVector::zero();
        v.set(idx, Rational::from(BigInt::from(1)));
        v
    }

    /// `a_alpha` basis vector.
    pub fn a(alpha: u64) -> Self {
        Self::unit(BasisIndex::a(alpha))
    }

    /// `b_alpha` basis vector.
    pub fn b(alpha: u64) -> Self {
        Self::unit(BasisIndex::b(alpha))
    }

    /// `e_i` basis vector.
    pub fn e(i: u64) -> Self {
        Self::unit(BasisIndex::e(i))
    }

    pub fn from_entries<I: IntoIterator<Item = (BasisIndex, Rational)>>(iter: I) -> Self {
        let mut v = FSVector::zero();
        for (idx, c) in iter {
            let cur = v.coeff(idx) + c;
            v.set(idx, cur);
        }
        v
    }

    pub fn set(&mut self, idx: BasisIndex, c: Rational) {
        if c.is_zero() {
            self.entries.remove(&idx);
        } else {
            self.entries.insert(idx, c);
        }
    }

    pub fn coeff(&self, idx: BasisIndex) -> Rational {
        self.entries.get(&idx).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = BasisIndex> + '_ {
        self.entries.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (BasisIndex, &Rational)> + '_ {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    /// Largest `index` appearing in the support, over all kinds.
    pub fn max_support_index(&self) -> Option<u64> {
        self.entries.keys().map(|i| i.index).max()
    }

    pub fn scale(&self, lambda: &Rational) -> FSVector {
        if lambda.is_zero() {
            return FSVector::zero();
        }
        let entries = self
            .entries
            .iter()
            .map(|(k, v)| (*k, v * lambda))
            .collect();
        FSVector { entries }
    }

    /// Exact dot product against a coefficient map (a linear functional
    /// presented as a vector).
    pub fn dot(&self, coeffs: &FSVector) -> Rational {
        // iterate over the smaller support
        let (small, big) = if self.support_len() <= coeffs.support_len() {
            (self, coeffs)
        } else {
            (coeffs, self)
        };
        let mut acc = Rational::zero();
        for (idx, c) in small.iter() {
            let other = big.entries.get(&idx);
            if let Some(o) = other {
                acc += c * o;
            }
        }
        acc
    }

    /// Map every basis index through `f`, summing collisions.
    pub fn map_basis<F: Fn(BasisIndex) -> BasisIndex>(&self, f: F) -> FSVector {
        FSVector::from_entries(self.iter().map(|(idx, c)| (f(idx), c.clone())))
    }

    /// Restriction to the indices satisfying `keep`.
    pub fn filter<F: Fn(BasisIndex) -> bool>(&self, keep: F) -> FSVector {
        FSVector {
            entries: self
                .entries
                .iter()
                .filter(|(idx, _)| keep(**idx))
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    /// Serialization form: sorted `(kind, index, numerator, denominator)`.
    pub fn to_sorted_tuples(&self) -> Vec<(char, u64, String, String)> {
        self.entries
            .iter()
            .map(|(idx, c)| {
                let k = match idx.kind {
                    BasisKind::A => 'a',
                    BasisKind::B => 'b',
                    BasisKind::E => 'e',
                };
                (k, idx.index, c.numer().to_string(), c.denom().to_string())
            })
            .collect()
    }
}

impl Add for &FSVector {
    type Output = FSVector;
    fn add(self, rhs: &FSVector) -> FSVector {
        let mut out = self.clone();
        for (idx, c) in rhs.iter() {
            let cur = out.coeff(idx) + c;
            out.set(idx, cur);
        }
        out
    }
}

impl Sub for &FSVector {
    type Output = FSVector;
    fn sub(self, rhs: &FSVector) -> FSVector {
        let mut out = self.clone();
        for (idx, c) in rhs.iter() {
            let cur = out.coeff(idx) - c;
            out.set(idx, cur);
        }
        out
    }
}

impl Neg for &FSVector {
    type Output = FSVector;
    fn neg(self) -> FSVector {
        FSVector {
            entries: self.entries.iter().map(|(k, v)| (*k, -v)).collect(),
        }
    }
}

impl Mul<&Rational> for &FSVector {
    type Output = FSVector;
    fn mul(self, rhs: &Rational) -> FSVector {
        self.scale(rhs)
    }
}

impl fmt::Display for FSVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (idx, c) in self.iter() {
            if first {
                write!(f, "{}·{}", c, idx)?;
                first = false;
            } else if c.is_negative() {
                write!(f, " - {}·{}", -c, idx)?;
            } else {
                write!(f, " + {}·{}", c, idx)?;
            }
        }
        Ok(())
    }
}
