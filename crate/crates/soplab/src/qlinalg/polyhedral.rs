use std::collections::BTreeSet;

use num::{Signed, Zero};

use super::{BasisIndex, FSVector, QlinalgError, Rational};

/// A linear functional given by a finite rational coefficient map;
/// evaluation is the exact dot product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearFunctional {
    pub coeffs: FSVector,
}

impl LinearFunctional {
    pub fn new(coeffs: FSVector) -> Self {
        LinearFunctional { coeffs }
    }

    pub fn eval(&self, v: &FSVector) -> Rational {
        v.dot(&self.coeffs)
    }

    /// Sign-normalized form (first nonzero coefficient positive); `f` and
    /// `-f` induce the same contribution to a polyhedral norm.
    pub fn normalized(&self) -> LinearFunctional {
        match self.coeffs.iter().next() {
            Some((_, c)) if c.is_negative() => LinearFunctional::new(-&self.coeffs),
            _ => self.clone(),
        }
    }
}

/// A (semi)norm presented as `max_i |f_i(v)|` over finitely many linear
/// functionals, restricted to a designated coordinate subspace.
#[derive(Debug, Clone)]
pub struct PolyhedralNorm {
    space: BTreeSet<BasisIndex>,
    functionals: Vec<LinearFunctional>,
}

impl PolyhedralNorm {
    pub fn new(
        space: impl IntoIterator<Item = BasisIndex>,
        functionals: Vec<LinearFunctional>,
    ) -> Self {
        // drop zero functionals and ±duplicates; order is deterministic
        let mut seen: Vec<FSVector> = Vec::new();
        let mut kept = Vec::new();
        for f in functionals {
            let norm = f.normalized();
            if norm.coeffs.is_zero() || seen.contains(&norm.coeffs) {
                continue;
            }
            seen.push(norm.coeffs.clone());
            kept.push(norm);
        }
        PolyhedralNorm {
            space: space.into_iter().collect(),
            functionals: kept,
        }
    }

    /// Max-abs-coordinate norm on the listed coordinates.
    pub fn max_abs(space: impl IntoIterator<Item = BasisIndex>) -> Self {
        let space: BTreeSet<BasisIndex> = space.into_iter().collect();
        let functionals = space
            .iter()
            .map(|idx| LinearFunctional::new(FSVector::unit(*idx)))
            .collect();
        PolyhedralNorm { space, functionals }
    }

    /// Norm whose functional list is the union of the two (blockwise max).
    pub fn max_of(a: &PolyhedralNorm, b: &PolyhedralNorm) -> Self {
        let space: BTreeSet<BasisIndex> = a.space.union(&b.space).copied().collect();
        let fs = a
            .functionals
            .iter()
            .chain(b.functionals.iter())
            .cloned()
            .collect();
        PolyhedralNorm::new(space, fs)
    }

    pub fn space(&self) -> &BTreeSet<BasisIndex> {
        &self.space
    }

    pub fn functionals(&self) -> &[LinearFunctional] {
        &self.functionals
    }

    pub fn contains(&self, v: &FSVector) -> bool {
        v.support().all(|idx| self.space.contains(&idx))
    }

    pub fn eval(&self, v: &FSVector) -> Result<Rational, QlinalgError> {
        if let Some(out) = v.support().find(|idx| !self.space.contains(idx)) {
            return Err(QlinalgError::OutsideSubspace(out));
        }
        let mut best = Rational::zero();
        for f in &self.functionals {
            let val = f.eval(v).abs();
            if val > best {
                best = val;
            }
        }
        Ok(best)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlinalg::rat;

    #[test]
    fn max_abs_on_units() {
        let norm = PolyhedralNorm::max_abs([BasisIndex::e(0), BasisIndex::e(1)]);
        assert_eq!(norm.eval(&FSVector::e(0)).unwrap(), rat(1, 1));
        let v = &FSVector::e(0).scale(&rat(2, 1)) - &FSVector::e(1).scale(&rat(3, 1));
        assert_eq!(norm.eval(&v).unwrap(), rat(3, 1));
        assert_eq!(norm.eval(&FSVector::zero()).unwrap(), rat(0, 1));
    }

    #[test]
    fn outside_subspace_is_an_error() {
        let norm = PolyhedralNorm::max_abs([BasisIndex::e(0)]);
        let err = norm.eval(&FSVector::e(5)).unwrap_err();
        assert_eq!(err, QlinalgError::OutsideSubspace(BasisIndex::e(5)));
    }

    #[test]
    fn sign_duplicates_collapse() {
        let f = LinearFunctional::new(FSVector::e(0));
        let g = LinearFunctional::new(-&FSVector::e(0));
        let norm = PolyhedralNorm::new([BasisIndex::e(0)], vec![f, g]);
        assert_eq!(norm.functionals().len(), 1);
    }
}
