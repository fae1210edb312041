use num::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::qlinalg::{rational, FSVector, Rational};
use crate::report::CheckReport;

use super::{
    build_amalgam, indiscernibility_check, infconv_norm, AmalgamError, Coord, NormTag,
    SequenceProvider,
};

/// Two-sided finite-stage estimate of the limit `ρ(r′, r″)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhoEstimate {
    pub lower: Rational,
    pub upper: Rational,
    pub stage: u64,
}

/// `rho_estimate` output: the interval plus the forward and index-swapped
/// stage norms used by the symmetry surrogate, and the assertion record.
#[derive(Debug, Clone)]
pub struct RhoReport {
    pub estimate: RhoEstimate,
    pub forward: Rational,
    pub swapped: Rational,
    pub report: CheckReport,
}

/// Exact values `‖r_k‖_tag` for `1 ≤ k ≤ K` and all three tags, where
/// `r_k = r' + g_k(r'')`, computed in the stage-`K` amalgam.
pub fn sequence_norm_profile(
    provider: &dyn SequenceProvider,
    r_prime: &FSVector,
    r_dprime: &FSVector,
    big_k: u64,
) -> Result<Vec<(u64, NormTag, Rational)>, AmalgamError> {
    if big_k < 2 {
        return Err(AmalgamError::StageTooSmall(big_k));
    }
    let space = build_amalgam(provider, big_k)?;
    let mut out = Vec::with_capacity(3 * big_k as usize);
    for k in 1..=big_k {
        let r_k = r_prime + &space.g_shift(r_dprime, k)?;
        for tag in NormTag::ALL {
            let (value, _) = infconv_norm(&space, &r_k, tag)?;
            out.push((k, tag, value));
        }
    }
    Ok(out)
}

fn profile_value(profile: &[(u64, NormTag, Rational)], k: u64, tag: NormTag) -> &Rational {
    profile
        .iter()
        .find(|(k2, t2, _)| *k2 == k && *t2 == tag)
        .map(|(_, _, v)| v)
        .expect("profile covers 1..=K for every tag")
}

/// Finite-stage verification of the convergence claims at `m = j²`:
///
/// (i) each `‖r_k‖_tag` is nondecreasing in `k` and bounded by
/// `‖h₁(r')‖ + ‖h₁(r'')‖`;
/// (ii) `‖r_m‖_0 ≥ ‖r_m‖_{±1} ≥ (1 + 2/j)⁻¹·‖r_j‖_0`;
/// (iii) for sampled `r = c_m − c_k` living on two tuples,
/// `‖r‖_1 ≥ (1 + 2/(m−k))⁻¹·‖h₁(r)‖_{B_{k,m}}` where the latter is the
/// max of the induced and index-swapped ambient norms.
///
/// All comparisons are exact; a violation yields a `fail` report carrying
/// the offending rational values.
pub fn verify_convergence_claims(
    provider: &dyn SequenceProvider,
    r_prime: &FSVector,
    r_dprime: &FSVector,
    j: u64,
) -> Result<CheckReport, AmalgamError> {
    if j < 2 {
        return Err(AmalgamError::StageTooSmall(j));
    }
    indiscernibility_check(provider, 40, 0xA5)?;
    let m = j * j;
    let space = build_amalgam(provider, m)?;
    let profile = sequence_norm_profile(provider, r_prime, r_dprime, m)?;

    let bound = provider.ambient_norm(&space.h1_image(r_prime)?)?
        + provider.ambient_norm(&space.h1_image(r_dprime)?)?;

    let mut report = CheckReport::pass("amalgam.clm_conv")
        .with_value("provider", provider.name())
        .with_value("j", j)
        .with_rational("bound", &bound);

    // (i) monotone and uniformly bounded
    for tag in NormTag::ALL {
        for k in 1..=m {
            let cur = profile_value(&profile, k, tag);
            if k > 1 {
                let prev = profile_value(&profile, k - 1, tag);
                if cur < prev {
                    return Ok(CheckReport::fail(
                        "amalgam.clm_conv",
                        format!(
                            "‖r_{k}‖_{tag} = {cur} < ‖r_{}‖_{tag} = {prev}",
                            k - 1
                        ),
                    )
                    .with_value("provider", provider.name())
                    .with_value("j", j));
                }
            }
            if cur > &bound {
                return Ok(CheckReport::fail(
                    "amalgam.clm_conv",
                    format!("‖r_{k}‖_{tag} = {cur} exceeds the uniform bound {bound}"),
                )
                .with_value("provider", provider.name())
                .with_value("j", j));
            }
        }
    }

    // (ii) sandwich at m = j²
    let ratio = sandwich_ratio(j); // (1 + 2/j)⁻¹
    let rm0 = profile_value(&profile, m, NormTag::Zero).clone();
    let rj0 = profile_value(&profile, j, NormTag::Zero).clone();
    let floor = &ratio * &rj0;
    for tag in [NormTag::One, NormTag::MinusOne] {
        let v = profile_value(&profile, m, tag);
        if v > &rm0 || v < &floor {
            return Ok(CheckReport::fail(
                "amalgam.clm_conv",
                format!(
                    "sandwich breaks for tag {tag}: ‖r_{m}‖_0 = {rm0}, \
                     ‖r_{m}‖_{tag} = {v}, (1+2/{j})⁻¹·‖r_{j}‖_0 = {floor}"
                ),
            )
            .with_value("provider", provider.name())
            .with_value("j", j));
        }
    }
    report = report
        .with_rational("rm_norm_0", &rm0)
        .with_rational("sandwich_floor", &floor);

    // (iii) sampled instances of the two-tuple lower bound
    let mut rng = ChaCha8Rng::seed_from_u64(0x51);
    for sample in 0..4u64 {
        if let Some(fail) = main_claim_sample(provider, m, &mut rng)? {
            return Ok(fail
                .with_value("provider", provider.name())
                .with_value("j", j)
                .with_value("sample", sample));
        }
    }

    Ok(report)
}

fn sandwich_ratio(j: u64) -> Rational {
    // (1 + 2/j)⁻¹ = j/(j+2)
    rational(j as i64, j as i64 + 2)
}

/// Draws one `r = c_m − c_k`, reduced to `k = 0` by indiscernibility, and
/// checks `‖r‖_1 ≥ (1 + 2/d)⁻¹·‖h₁(r)‖_{B}` with `d = m − k` and `‖·‖_B`
/// the max of the induced and index-swapped ambient norms.
fn main_claim_sample(
    provider: &dyn SequenceProvider,
    m: u64,
    rng: &mut ChaCha8Rng,
) -> Result<Option<CheckReport>, AmalgamError> {
    let d = rng.gen_range(2..=m.max(2));
    let space = build_amalgam(provider, d)?;
    let n = provider.tuple_len();
    let draw = |rng: &mut ChaCha8Rng| -> Vec<Rational> {
        (0..n)
            .map(|_| {
                Rational::new(
                    rng.gen_range(-4i64..=4).into(),
                    rng.gen_range(1i64..=3).into(),
                )
            })
            .collect()
    };
    let cu = draw(rng);
    let cv = draw(rng);
    let on_tuple = |coeffs: &[Rational], i: u64| -> FSVector {
        FSVector::from_entries(coeffs.iter().enumerate().map(|(ell, c)| {
            let coord = if ell < space.n_star() {
                Coord::Star(ell)
            } else {
                Coord::Moving { i, ell }
            };
            (space.encode(coord), c.clone())
        }))
    };
    let r = &on_tuple(&cu, d) - &on_tuple(&cv, 0);
    let (norm1, _) = infconv_norm(&space, &r, NormTag::One)?;

    let induced = provider.ambient_norm(&space.h1_image(&r)?)?;
    let swapped_formal = &on_tuple(&cu, 0) - &on_tuple(&cv, d);
    let swapped = provider.ambient_norm(&space.h1_image(&swapped_formal)?)?;
    let b_norm = induced.clone().max(swapped.clone());

    let ratio = rational(d as i64, d as i64 + 2); // (1 + 2/d)⁻¹
    if norm1 < &ratio * &b_norm {
        return Ok(Some(
            CheckReport::fail(
                "amalgam.main_clm",
                format!(
                    "‖r‖_1 = {norm1} < (1+2/{d})⁻¹·max({induced}, {swapped}) for r = {r}"
                ),
            )
            .with_rational("norm_1", &norm1)
            .with_rational("b_norm", &b_norm),
        ));
    }
    Ok(None)
}

/// Estimates `ρ(r′, r″)` from finite stages and asserts the symmetry
/// surrogate: at `m = jMax²`, both `‖r' + g_m(r'')‖₁` and its swap
/// `‖r'' + g_m(r')‖₁` lie inside `[lower, (1 + 2/jMax)·lower]`.
pub fn rho_estimate(
    provider: &dyn SequenceProvider,
    r_prime: &FSVector,
    r_dprime: &FSVector,
    j_max: u64,
) -> Result<RhoReport, AmalgamError> {
    if j_max < 2 {
        return Err(AmalgamError::StageTooSmall(j_max));
    }
    let m = j_max * j_max;
    let space = build_amalgam(provider, m)?;

    let mut lower = Rational::zero();
    let mut forward = Rational::zero();
    for k in 1..=m {
        let r_k = r_prime + &space.g_shift(r_dprime, k)?;
        let (n1, _) = infconv_norm(&space, &r_k, NormTag::One)?;
        let (nm1, _) = infconv_norm(&space, &r_k, NormTag::MinusOne)?;
        let stage_min = n1.clone().min(nm1);
        if stage_min > lower {
            lower = stage_min;
        }
        if k == m {
            forward = n1;
        }
    }
    let growth = Rational::one() + rational(2, j_max as i64);
    let upper = &growth * &lower;

    let swap_target = r_dprime + &space.g_shift(r_prime, m)?;
    let (swapped, _) = infconv_norm(&space, &swap_target, NormTag::One)?;

    let in_interval = |v: &Rational| v >= &lower && v <= &upper;
    let report = if in_interval(&forward) && in_interval(&swapped) {
        CheckReport::pass("amalgam.clm_sym")
    } else {
        CheckReport::fail(
            "amalgam.clm_sym",
            format!(
                "stage-{m} norms leave the interval: forward {forward}, \
                 swapped {swapped}, interval [{lower}, {upper}]"
            ),
        )
    }
    .with_value("provider", provider.name())
    .with_value("jmax", j_max)
    .with_rational("lower", &lower)
    .with_rational("upper", &upper)
    .with_rational("forward", &forward)
    .with_rational("swapped", &swapped);

    Ok(RhoReport {
        estimate: RhoEstimate {
            lower,
            upper,
            stage: m,
        },
        forward,
        swapped,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amalgam::{CanonicalPairProvider, SimpleProvider};

    #[test]
    fn zero_second_part_gives_constant_profile() {
        let r_prime = FSVector::e(0);
        let profile =
            sequence_norm_profile(&SimpleProvider, &r_prime, &FSVector::zero(), 3).unwrap();
        for (_, _, v) in profile {
            assert_eq!(v, rational(1, 1));
        }
    }

    #[test]
    fn simple_pair_profile_steps_from_one_to_two() {
        // r_1 = e_0 + e_1 fits into the first block (norm 1); from k = 2 on
        // the support spans two blocks and the value settles at 2.
        let e0 = FSVector::e(0);
        let profile = sequence_norm_profile(&SimpleProvider, &e0, &e0, 4).unwrap();
        for (k, tag, v) in profile {
            if tag == NormTag::One {
                let expected = if k == 1 { rational(1, 1) } else { rational(2, 1) };
                assert_eq!(v, expected, "k = {k}");
            }
        }
    }

    #[test]
    fn canonical_tag1_profile_is_nondecreasing() {
        let profile =
            sequence_norm_profile(&CanonicalPairProvider, &FSVector::e(0), &FSVector::e(1), 6)
                .unwrap();
        let ones: Vec<Rational> = profile
            .iter()
            .filter(|(_, t, _)| *t == NormTag::One)
            .map(|(_, _, v)| v.clone())
            .collect();
        for w in ones.windows(2) {
            assert!(w[0] <= w[1], "profile decreased: {} > {}", w[0], w[1]);
        }
    }

    #[test]
    fn convergence_claims_pass_for_canonical_j2() {
        let report = verify_convergence_claims(
            &CanonicalPairProvider,
            &FSVector::e(0),
            &FSVector::e(1),
            2,
        )
        .unwrap();
        assert!(report.is_pass(), "{report:?}");
    }

    #[test]
    fn convergence_claims_pass_for_simple_j3() {
        let report =
            verify_convergence_claims(&SimpleProvider, &FSVector::e(0), &FSVector::e(0), 3)
                .unwrap();
        assert!(report.is_pass(), "{report:?}");
    }

    #[test]
    fn rho_interval_for_trivial_second_part() {
        let out = rho_estimate(&SimpleProvider, &FSVector::e(0), &FSVector::zero(), 2).unwrap();
        assert!(out.report.is_pass(), "{:?}", out.report);
        assert_eq!(out.forward, out.swapped);
        // lower = upper·(1 + 2/jMax)⁻¹ with jMax = 2
        assert_eq!(&out.estimate.lower * &rational(2, 1), out.estimate.upper);
    }

    #[test]
    fn rho_is_swap_symmetric_for_exchangeable_provider() {
        let e0 = FSVector::e(0);
        let out = rho_estimate(&SimpleProvider, &e0, &e0, 2).unwrap();
        assert!(out.report.is_pass(), "{:?}", out.report);
        assert_eq!(out.forward, out.swapped);
    }

    #[test]
    fn small_j_is_rejected() {
        assert!(matches!(
            verify_convergence_claims(&SimpleProvider, &FSVector::e(0), &FSVector::e(0), 1),
            Err(AmalgamError::StageTooSmall(1))
        ));
    }
}
