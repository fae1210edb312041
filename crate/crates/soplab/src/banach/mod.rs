//! Witness vectors and graph formulas on the seminormed a/b space.
//!
//! The two-variable terms `(n-2l)x + (n-2l+1)y`, the witness vectors
//! `c_{n,l,alpha}`, and the formula family `phi_n` whose conjuncts are
//! exact norm bounds. The graph defined by `phi_n` is directed: the pair
//! argument order matters and the formula is not symmetric.

mod checks;

pub use checks::{
    chain_verify, check_eq1_eq2, cycle_search_and_certify, entailment_spotcheck,
    term_shift_identity, type_p_eval, type_p_on_chain, CycleParams,
};

use num::Signed;
use thiserror::Error;

use crate::qlinalg::{seminorm_b0, FSVector, PolyhedralNorm, QlinalgError, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BanachError {
    #[error("n must be at least 3, got {0}")]
    NTooSmall(u64),
    #[error("ell = {ell} out of range for n = {n}")]
    EllOutOfRange { n: u64, ell: u64 },
    #[error("cycle parameter m = {m} out of range for n = {n} (need 2 < m <= n)")]
    CycleRange { n: u64, m: u64 },
    #[error("chain length must be at least 2, got {0}")]
    LengthTooSmall(u64),
    #[error(transparent)]
    Norm(#[from] QlinalgError),
}

/// The term `(n-2l)x + (n-2l+1)y`; symbolic equality is coefficient
/// equality. Note the shift identity: term(n, l) = term(n+2, l+1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Term {
    pub n: u64,
    pub ell: u64,
}

impl Term {
    pub fn new(n: u64, ell: u64) -> Result<Self, BanachError> {
        if n < 3 {
            return Err(BanachError::NTooSmall(n));
        }
        if ell > n {
            return Err(BanachError::EllOutOfRange { n, ell });
        }
        Ok(Term { n, ell })
    }

    pub fn x_coeff(&self) -> i64 {
        self.n as i64 - 2 * self.ell as i64
    }

    pub fn y_coeff(&self) -> i64 {
        self.x_coeff() + 1
    }

    pub fn coeffs(&self) -> (i64, i64) {
        (self.x_coeff(), self.y_coeff())
    }

    pub fn apply(&self, x: &FSVector, y: &FSVector) -> FSVector {
        let xc = Rational::from(num::BigInt::from(self.x_coeff()));
        let yc = Rational::from(num::BigInt::from(self.y_coeff()));
        &x.scale(&xc) + &y.scale(&yc)
    }
}

/// `c_{n,l,alpha} = (n-2l) a_alpha + (n-2l+1) b_alpha`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessVector {
    pub n: u64,
    pub ell: u64,
    pub alpha: u64,
    pub vector: FSVector,
}

pub fn witness_c(n: u64, ell: u64, alpha: u64) -> Result<WitnessVector, BanachError> {
    let term = Term::new(n, ell)?;
    let vector = term.apply(&FSVector::a(alpha), &FSVector::b(alpha));
    Ok(WitnessVector { n, ell, alpha, vector })
}

/// Norm context for formula evaluation: the a/b-space seminorm or an
/// explicit polyhedral norm.
#[derive(Debug, Clone)]
pub enum NormContext {
    B0,
    Poly(PolyhedralNorm),
}

impl NormContext {
    pub fn eval(&self, v: &FSVector) -> Result<Rational, QlinalgError> {
        match self {
            NormContext::B0 => seminorm_b0(v),
            NormContext::Poly(p) => p.eval(v),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    /// `lhs <= bound`
    AtMost,
    /// `lhs >= bound`
    AtLeast,
}

/// One evaluated conjunct of `phi_n`.
#[derive(Debug, Clone)]
pub struct ConjunctReport {
    pub family: u8,
    pub index: u64,
    pub lhs: Rational,
    pub kind: BoundKind,
    pub bound: Rational,
    pub holds: bool,
}

/// Full evaluation of one directed edge of the `phi_n` graph.
#[derive(Debug, Clone)]
pub struct GraphEdgeReport {
    pub n: u64,
    pub from_label: String,
    pub to_label: String,
    pub conjuncts: Vec<ConjunctReport>,
    pub verdict: bool,
}

/// The formula `phi_n(x1 x2, y1 y2)` as structured data: conjunct counts
/// are `n`, `n+1`, `n+1` for the three families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhiFormula {
    pub n: u64,
}

impl PhiFormula {
    pub fn new(n: u64) -> Result<Self, BanachError> {
        if n < 3 {
            return Err(BanachError::NTooSmall(n));
        }
        Ok(PhiFormula { n })
    }

    pub fn conjunct_counts(&self) -> (u64, u64, u64) {
        (self.n, self.n + 1, self.n + 1)
    }

    fn rat(x: i64) -> Rational {
        Rational::from(num::BigInt::from(x))
    }

    /// Iterates every conjunct: `(family, index, difference vector, kind, bound)`.
    fn conjuncts(
        &self,
        x: &(FSVector, FSVector),
        y: &(FSVector, FSVector),
    ) -> Result<Vec<(u8, u64, FSVector, BoundKind, Rational)>, BanachError> {
        let n = self.n;
        let mut out = Vec::with_capacity(3 * n as usize + 2);
        for ell in 0..n {
            let lhs = &Term::new(n, ell + 1)?.apply(&y.0, &y.1) - &Term::new(n, ell)?.apply(&x.0, &x.1);
            out.push((1, ell, lhs, BoundKind::AtMost, Self::rat(2)));
        }
        for m in 0..=n {
            let lhs = &Term::new(n, m)?.apply(&x.0, &x.1) - &Term::new(n, 0)?.apply(&y.0, &y.1);
            out.push((2, m, lhs.clone(), BoundKind::AtLeast, Self::rat(2 * m as i64 + 1)));
            out.push((3, m, lhs, BoundKind::AtMost, Self::rat(2 * m as i64 + 2)));
        }
        Ok(out)
    }

    /// Short-circuit satisfaction check.
    pub fn holds(
        &self,
        x: &(FSVector, FSVector),
        y: &(FSVector, FSVector),
        ctx: &NormContext,
    ) -> Result<bool, BanachError> {
        for (_, _, diff, kind, bound) in self.conjuncts(x, y)? {
            let val = ctx.eval(&diff)?;
            let ok = match kind {
                BoundKind::AtMost => val <= bound,
                BoundKind::AtLeast => val >= bound,
            };
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Satisfaction of the first conjunct family only (the `<= 2` bounds),
    /// used by the cycle certifier.
    pub fn first_family_holds(
        &self,
        x: &(FSVector, FSVector),
        y: &(FSVector, FSVector),
        ctx: &NormContext,
    ) -> Result<bool, BanachError> {
        for ell in 0..self.n {
            let diff = &Term::new(self.n, ell + 1)?.apply(&y.0, &y.1)
                - &Term::new(self.n, ell)?.apply(&x.0, &x.1);
            if ctx.eval(&diff)? > Self::rat(2) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Evaluates every conjunct of `phi_n` on a directed edge and retains the
/// exact left-hand-side values.
pub fn phi_eval(
    n: u64,
    x: &(FSVector, FSVector),
    y: &(FSVector, FSVector),
    ctx: &NormContext,
) -> Result<GraphEdgeReport, BanachError> {
    let phi = PhiFormula::new(n)?;
    let mut conjuncts = Vec::new();
    let mut verdict = true;
    for (family, index, diff, kind, bound) in phi.conjuncts(x, y)? {
        let lhs = ctx.eval(&diff)?;
        let holds = match kind {
            BoundKind::AtMost => lhs <= bound,
            BoundKind::AtLeast => lhs >= bound,
        };
        verdict &= holds;
        conjuncts.push(ConjunctReport { family, index, lhs, kind, bound, holds });
    }
    Ok(GraphEdgeReport {
        n,
        from_label: format!("({}, {})", x.0, x.1),
        to_label: format!("({}, {})", y.0, y.1),
        conjuncts,
        verdict,
    })
}

/// The chain tuple `(a_alpha, b_alpha)`.
pub fn chain_tuple(alpha: u64) -> (FSVector, FSVector) {
    (FSVector::a(alpha), FSVector::b(alpha))
}

/// Images of `a_alpha`, `b_alpha` in the quotient are pairwise distinct and
/// nonzero: the seminorm of every pairwise difference (and of each element)
/// is positive. Checked exactly over `0..range`.
pub fn distinctness_check(range: u64) -> Result<bool, BanachError> {
    let mut elems = Vec::new();
    for alpha in 0..range {
        elems.push(FSVector::a(alpha));
        elems.push(FSVector::b(alpha));
    }
    for v in &elems {
        if !seminorm_b0(v)?.is_positive() {
            return Ok(false);
        }
    }
    for (i, v) in elems.iter().enumerate() {
        for w in elems.iter().skip(i + 1) {
            if !seminorm_b0(&(v - w))?.is_positive() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
