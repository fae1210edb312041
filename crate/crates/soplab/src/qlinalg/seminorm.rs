use num::{Signed, Zero};

use super::{BasisIndex, BasisKind, FSVector, QlinalgError, Rational};

/// Value of the threshold functional `f_gamma` on a single basis symbol:
/// `f_gamma(a_alpha) = 1` iff `alpha < gamma`, `f_gamma(b_alpha) = 1` iff
/// `alpha >= gamma`.
fn fgamma_basis(gamma: u64, idx: BasisIndex) -> Result<u8, QlinalgError> {
    match idx.kind {
        BasisKind::A => Ok(u8::from(idx.index < gamma)),
        BasisKind::B => Ok(u8::from(idx.index >= gamma)),
        BasisKind::E => Err(QlinalgError::UnsupportedBasis(idx)),
    }
}

/// Exact evaluation of `f_gamma` on a vector supported on A/B indices.
pub fn fgamma_eval(gamma: u64, v: &FSVector) -> Result<Rational, QlinalgError> {
    let mut acc = Rational::zero();
    for (idx, c) in v.iter() {
        if fgamma_basis(gamma, idx)? == 1 {
            acc += c;
        }
    }
    Ok(acc)
}

/// The seminorm `sup { |f_gamma(v)| : gamma < omega }` on the a/b space.
///
/// The sup is a max over `gamma <= max_support_index + 1`: every `f_gamma`
/// beyond that threshold agrees with `f_{max+1}` on the support of `v`,
/// so the sweep is exhaustive.
pub fn seminorm_b0(v: &FSVector) -> Result<Rational, QlinalgError> {
    let top = match v.max_support_index() {
        None => return Ok(Rational::zero()),
        Some(m) => m + 1,
    };
    let mut best = Rational::zero();
    for gamma in 0..=top {
        let val = fgamma_eval(gamma, v)?.abs();
        if val > best {
            best = val;
        }
    }
    Ok(best)
}
