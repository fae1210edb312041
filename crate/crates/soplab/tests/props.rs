//! Property tests for the algebraic invariants: seminorm axioms, word
//! reduction, affine group laws, and the infimal-convolution bound.

use num::{Signed, Zero};
use proptest::prelude::*;
use soplab::amalgam::{build_amalgam, infconv_norm, NormTag, SimpleProvider};
use soplab::groups::{free_reduce, AffineDyadicMap, GenSymbol, GroupWord, Letter};
use soplab::qlinalg::{seminorm_b0, BasisIndex, FSVector, Rational};

fn rational_strategy() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=4).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

/// Sparse vectors over `a_0..a_5, b_0..b_5`.
fn ab_vector_strategy() -> impl Strategy<Value = FSVector> {
    prop::collection::vec((0u64..6, prop::bool::ANY, rational_strategy()), 0..6).prop_map(
        |entries| {
            let mut v = FSVector::zero();
            for (idx, is_b, c) in entries {
                let key = if is_b {
                    BasisIndex::b(idx)
                } else {
                    BasisIndex::a(idx)
                };
                v.set(key, &v.coeff(key) + &c);
            }
            v
        },
    )
}

fn word_strategy() -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec(("[abc]", -3i8..=3), 0..12).prop_map(|ls| {
        ls.into_iter()
            .filter(|(_, e)| *e != 0)
            .flat_map(|(g, e)| {
                let sign = e.signum();
                (0..e.unsigned_abs()).map(move |_| Letter {
                    gen: GenSymbol::new(g.clone()),
                    exp: sign,
                })
            })
            .collect()
    })
}

fn affine_strategy() -> impl Strategy<Value = AffineDyadicMap> {
    (-4i64..=4, rational_strategy()).prop_map(|(k, q)| {
        AffineDyadicMap::scaling(k).compose(&AffineDyadicMap::translation(q))
    })
}

proptest! {
    #[test]
    fn seminorm_is_nonnegative_and_vanishes_at_zero(v in ab_vector_strategy()) {
        let n = seminorm_b0(&v).unwrap();
        prop_assert!(!n.is_negative());
        prop_assert!(seminorm_b0(&FSVector::zero()).unwrap().is_zero());
    }

    #[test]
    fn seminorm_is_absolutely_homogeneous(v in ab_vector_strategy(), c in rational_strategy()) {
        let scaled = seminorm_b0(&v.scale(&c)).unwrap();
        prop_assert_eq!(scaled, c.abs() * seminorm_b0(&v).unwrap());
    }

    #[test]
    fn seminorm_satisfies_the_triangle_inequality(
        v in ab_vector_strategy(),
        w in ab_vector_strategy(),
    ) {
        let lhs = seminorm_b0(&(&v + &w)).unwrap();
        prop_assert!(lhs <= seminorm_b0(&v).unwrap() + seminorm_b0(&w).unwrap());
    }

    #[test]
    fn free_reduction_is_idempotent(letters in word_strategy()) {
        let w = GroupWord::from_letters(letters);
        prop_assert_eq!(free_reduce(&w), w.clone());
        // and parsing the display round-trips
        prop_assert_eq!(GroupWord::parse(&w.to_string()).unwrap(), w);
    }

    #[test]
    fn a_word_times_its_inverse_reduces_to_the_identity(letters in word_strategy()) {
        let w = GroupWord::from_letters(letters);
        prop_assert!(w.concat(&w.inverse()).is_identity());
        prop_assert!(w.inverse().concat(&w).is_identity());
    }

    #[test]
    fn affine_maps_form_a_group(
        f in affine_strategy(),
        g in affine_strategy(),
        h in affine_strategy(),
    ) {
        prop_assert_eq!(f.compose(&g).compose(&h), f.compose(&g.compose(&h)));
        prop_assert!(f.compose(&f.inverse()).is_identity());
        prop_assert!(f.inverse().compose(&f).is_identity());
        let id = AffineDyadicMap::identity();
        prop_assert_eq!(f.compose(&id), f.clone());
        prop_assert_eq!(id.compose(&f), f);
    }

    #[test]
    fn affine_powers_are_additive(f in affine_strategy(), a in -3i64..=3, b in -3i64..=3) {
        prop_assert_eq!(f.pow(a).compose(&f.pow(b)), f.pow(a + b));
    }

    #[test]
    fn infconv_is_bounded_by_any_explicit_decomposition(
        parts in prop::collection::vec((0u64..4, -6i64..=6), 1..6),
        tag_pick in 0usize..3,
    ) {
        // Build an explicit decomposition over the stage-3 simple space
        // and check the computed norm never exceeds its cost.
        let space = build_amalgam(&SimpleProvider, 3).unwrap();
        let tag = [NormTag::One, NormTag::MinusOne, NormTag::Zero][tag_pick];
        let mut block_parts = vec![FSVector::zero(); 3];
        for (coord, c) in parts {
            // coordinate e_coord lies in block coord−1 and/or block coord;
            // assign it to the lowest block that carries it
            let k = (coord as usize).saturating_sub(1).min(2);
            let mut p = std::mem::take(&mut block_parts[k]);
            p.set(
                BasisIndex::e(coord),
                &p.coeff(BasisIndex::e(coord)) + &Rational::from_integer(c.into()),
            );
            block_parts[k] = p;
        }
        let t = block_parts.iter().fold(FSVector::zero(), |acc, p| &acc + p);
        let cost: Rational = space
            .blocks()
            .iter()
            .zip(&block_parts)
            .map(|(bl, p)| bl.norm(tag).eval(p).unwrap())
            .sum();
        let (value, _) = infconv_norm(&space, &t, tag).unwrap();
        prop_assert!(value <= cost);
    }
}
