use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::qlinalg::{seminorm_b0, BasisIndex, FSVector, Rational};

use super::AmalgamError;

/// A concretely indiscernible sequence of tuples in a computable normed
/// ambient space.
///
/// The first `n_star` coordinates are constant across the sequence; the
/// rest are linearly independent over the working range. The ambient norm
/// must be exactly polyhedral on every finite-dimensional span, exposed
/// through `functionals_on_span`.
pub trait SequenceProvider {
    fn name(&self) -> &str;

    /// Tuple length `n`.
    fn tuple_len(&self) -> usize;

    /// Number of constant leading coordinates `n*`.
    fn n_star(&self) -> usize;

    /// The `i`-th tuple; the first `n_star` entries equal `star_coords`.
    fn tuple_at(&self, i: u64) -> Vec<FSVector>;

    fn star_coords(&self) -> Vec<FSVector> {
        self.tuple_at(0)[..self.n_star()].to_vec()
    }

    fn ambient_norm(&self, v: &FSVector) -> Result<Rational, AmalgamError>;

    /// Linear functionals (as coefficient vectors) such that
    /// `ambient_norm(v) = max |f(v)|` for every `v` in the span of `vs`.
    fn functionals_on_span(&self, vs: &[FSVector]) -> Vec<FSVector>;
}

/// The pair sequence `(a_i, b_i)` in the a/b space with its threshold
/// seminorm; `n = 2`, `n* = 0`. Order-indiscernible because every
/// threshold functional sees only the position of its threshold among the
/// chosen indices.
#[derive(Debug, Clone, Default)]
pub struct CanonicalPairProvider;

impl SequenceProvider for CanonicalPairProvider {
    fn name(&self) -> &str {
        "canonical"
    }

    fn tuple_len(&self) -> usize {
        2
    }

    fn n_star(&self) -> usize {
        0
    }

    fn tuple_at(&self, i: u64) -> Vec<FSVector> {
        vec![FSVector::a(i), FSVector::b(i)]
    }

    fn ambient_norm(&self, v: &FSVector) -> Result<Rational, AmalgamError> {
        Ok(seminorm_b0(v)?)
    }

    fn functionals_on_span(&self, vs: &[FSVector]) -> Vec<FSVector> {
        let support: Vec<BasisIndex> = {
            let mut s: Vec<BasisIndex> = vs.iter().flat_map(|v| v.support()).collect();
            s.sort();
            s.dedup();
            s
        };
        let top = support.iter().map(|i| i.index).max().map_or(0, |m| m + 1);
        (0..=top)
            .map(|gamma| {
                FSVector::from_entries(support.iter().filter_map(|idx| {
                    let one = match idx.kind {
                        crate::qlinalg::BasisKind::A => idx.index < gamma,
                        crate::qlinalg::BasisKind::B => idx.index >= gamma,
                        crate::qlinalg::BasisKind::E => false,
                    };
                    one.then(|| (*idx, Rational::from(num::BigInt::from(1))))
                }))
            })
            .collect()
    }
}

/// Fully exchangeable singleton sequence `e_i` under the max-abs norm;
/// `n = 1`, `n* = 0`.
#[derive(Debug, Clone, Default)]
pub struct SimpleProvider;

impl SequenceProvider for SimpleProvider {
    fn name(&self) -> &str {
        "simple"
    }

    fn tuple_len(&self) -> usize {
        1
    }

    fn n_star(&self) -> usize {
        0
    }

    fn tuple_at(&self, i: u64) -> Vec<FSVector> {
        vec![FSVector::e(i)]
    }

    fn ambient_norm(&self, v: &FSVector) -> Result<Rational, AmalgamError> {
        use num::Signed;
        Ok(v.iter()
            .map(|(_, c)| c.abs())
            .max()
            .unwrap_or_else(Rational::zero))
    }

    fn functionals_on_span(&self, vs: &[FSVector]) -> Vec<FSVector> {
        let mut support: Vec<BasisIndex> = vs.iter().flat_map(|v| v.support()).collect();
        support.sort();
        support.dedup();
        support.into_iter().map(FSVector::unit).collect()
    }
}

/// Randomized exact indiscernibility test: norms of rational combinations
/// are invariant under order-preserving index substitutions.
///
/// Fails with a witness if any sampled combination has different ambient
/// norms under two strictly increasing index tuples.
pub fn indiscernibility_check(
    provider: &dyn SequenceProvider,
    samples: u64,
    seed: u64,
) -> Result<(), AmalgamError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = provider.tuple_len();
    for _ in 0..samples {
        let width = rng.gen_range(1usize..=4);
        let idx1 = increasing_indices(&mut rng, width, 12);
        let idx2 = increasing_indices(&mut rng, width, 12);
        let coeffs: Vec<Vec<Rational>> = (0..width)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        Rational::new(
                            rng.gen_range(-6i64..=6).into(),
                            rng.gen_range(1i64..=4).into(),
                        )
                    })
                    .collect()
            })
            .collect();
        let combo = |indices: &[u64]| -> FSVector {
            let mut acc = FSVector::zero();
            for (t, &i) in indices.iter().enumerate() {
                let tuple = provider.tuple_at(i);
                for (ell, vec) in tuple.iter().enumerate() {
                    acc = &acc + &vec.scale(&coeffs[t][ell]);
                }
            }
            acc
        };
        let n1 = provider.ambient_norm(&combo(&idx1))?;
        let n2 = provider.ambient_norm(&combo(&idx2))?;
        if n1 != n2 {
            return Err(AmalgamError::ProviderInvariant(format!(
                "provider {} is not order-indiscernible: indices {idx1:?} give {n1}, {idx2:?} give {n2}",
                provider.name()
            )));
        }
    }
    Ok(())
}

fn increasing_indices(rng: &mut ChaCha8Rng, width: usize, top: u64) -> Vec<u64> {
    let mut set = std::collections::BTreeSet::new();
    while set.len() < width {
        set.insert(rng.gen_range(0..top));
    }
    set.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_provider_is_indiscernible() {
        indiscernibility_check(&CanonicalPairProvider, 60, 5).unwrap();
    }

    #[test]
    fn simple_provider_is_indiscernible() {
        indiscernibility_check(&SimpleProvider, 60, 5).unwrap();
    }

    #[test]
    fn canonical_functionals_majorize_exactly() {
        let p = CanonicalPairProvider;
        let span = vec![FSVector::a(0), FSVector::b(0), FSVector::a(3), FSVector::b(3)];
        let fs = p.functionals_on_span(&span);
        // sample vector: 3 a_0 - b_3
        let v = &FSVector::a(0).scale(&crate::qlinalg::rational(3, 1)) - &FSVector::b(3);
        use num::Signed;
        let max = fs.iter().map(|f| v.dot(f).abs()).max().unwrap();
        assert_eq!(max, p.ambient_norm(&v).unwrap());
    }

    #[test]
    fn a_skewed_sequence_fails_indiscernibility() {
        // tuple_at(i) = (i+1) * e_i is not norm-indiscernible
        struct Skewed;
        impl SequenceProvider for Skewed {
            fn name(&self) -> &str {
                "skewed"
            }
            fn tuple_len(&self) -> usize {
                1
            }
            fn n_star(&self) -> usize {
                0
            }
            fn tuple_at(&self, i: u64) -> Vec<FSVector> {
                vec![FSVector::e(i).scale(&Rational::from(num::BigInt::from(i as i64 + 1)))]
            }
            fn ambient_norm(&self, v: &FSVector) -> Result<Rational, AmalgamError> {
                SimpleProvider.ambient_norm(v)
            }
            fn functionals_on_span(&self, vs: &[FSVector]) -> Vec<FSVector> {
                SimpleProvider.functionals_on_span(vs)
            }
        }
        assert!(indiscernibility_check(&Skewed, 40, 1).is_err());
    }
}
