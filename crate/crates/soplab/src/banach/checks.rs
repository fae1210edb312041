//! Verification suites over the witness sequence: exact norm identities,
//! chain verification, randomized cycle search with triangle-inequality
//! certificates, the term-shift identity, and entailment spot-checks.

use num::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::qlinalg::{fgamma_eval, seminorm_b0, FSVector, Rational};
use crate::report::{CheckReport, Status};

use super::{chain_tuple, phi_eval, witness_c, BanachError, NormContext, PhiFormula, Term};

fn int(x: i64) -> Rational {
    Rational::from(num::BigInt::from(x))
}

/// Exhaustive exact check of the two norm identities over a finite grid:
/// `||c_{n,l+1,beta} - c_{n,l,alpha}|| = 2` and
/// `||c_{n,m,alpha} - c_{n,0,beta}|| = 2m+1` for `alpha < beta < range`.
pub fn check_eq1_eq2(n: u64, range: u64) -> Result<CheckReport, BanachError> {
    if n < 3 {
        return Err(BanachError::NTooSmall(n));
    }
    if range < 2 {
        return Err(BanachError::LengthTooSmall(range));
    }
    let mut checked = 0u64;
    let mut report = CheckReport::pass(format!("banach.eq1_eq2.n{n}"));
    for alpha in 0..range {
        for beta in (alpha + 1)..range {
            for ell in 0..n {
                let diff = &witness_c(n, ell + 1, beta)?.vector - &witness_c(n, ell, alpha)?.vector;
                let norm = seminorm_b0(&diff)?;
                checked += 1;
                if norm != int(2) {
                    return Ok(violation_report(
                        report, "eq1", n, ell, alpha, beta, &diff, &norm, &int(2),
                    ));
                }
            }
            for m in 0..=n {
                let diff = &witness_c(n, m, alpha)?.vector - &witness_c(n, 0, beta)?.vector;
                let norm = seminorm_b0(&diff)?;
                checked += 1;
                if norm != int(2 * m as i64 + 1) {
                    return Ok(violation_report(
                        report, "eq2", n, m, alpha, beta, &diff, &norm, &int(2 * m as i64 + 1),
                    ));
                }
            }
        }
    }
    report = report.with_value("checked", checked).with_value("range", range);
    Ok(report)
}

fn violation_report(
    report: CheckReport,
    which: &str,
    n: u64,
    idx: u64,
    alpha: u64,
    beta: u64,
    diff: &FSVector,
    got: &Rational,
    expected: &Rational,
) -> CheckReport {
    // locate the gamma attaining the (wrong) maximum
    let top = diff.max_support_index().unwrap_or(0) + 1;
    let offending = (0..=top)
        .max_by_key(|g| fgamma_eval(*g, diff).map(|v| v.abs()).unwrap_or_else(|_| int(-1)))
        .unwrap_or(0);
    let mut r = CheckReport::fail(
        report.claim,
        format!("{which} violated at n={n}, index={idx}, alpha={alpha}, beta={beta}, gamma={offending}: {diff}"),
    );
    r = r.with_rational("got", got).with_rational("expected", expected);
    r
}

/// Every ordered pair `alpha < beta < length` of chain tuples must be a
/// directed edge of the `phi_n` graph.
pub fn chain_verify(n: u64, length: u64) -> Result<CheckReport, BanachError> {
    if length < 2 {
        return Err(BanachError::LengthTooSmall(length));
    }
    let phi = PhiFormula::new(n)?;
    let ctx = NormContext::B0;
    let mut pairs = 0u64;
    for alpha in 0..length {
        for beta in (alpha + 1)..length {
            pairs += 1;
            if !phi.holds(&chain_tuple(alpha), &chain_tuple(beta), &ctx)? {
                let edge = phi_eval(n, &chain_tuple(alpha), &chain_tuple(beta), &ctx)?;
                let bad = edge.conjuncts.iter().find(|c| !c.holds).unwrap();
                return Ok(CheckReport::fail(
                    format!("banach.chain.n{n}"),
                    format!(
                        "edge ({alpha} -> {beta}) fails family {} index {}: lhs {}",
                        bad.family, bad.index, bad.lhs
                    ),
                ));
            }
        }
    }
    Ok(CheckReport::pass(format!("banach.chain.n{n}"))
        .with_value("length", length)
        .with_value("pairs", pairs))
}

/// `tau(n, l) = tau(n+2, l+1)` symbolically for all `3 <= n <= n_max`,
/// `l <= n`.
pub fn term_shift_identity(n_max: u64) -> Result<CheckReport, BanachError> {
    if n_max < 3 {
        return Err(BanachError::NTooSmall(n_max));
    }
    let mut checked = 0u64;
    for n in 3..=n_max {
        for ell in 0..=n {
            let lhs = Term::new(n, ell)?;
            let rhs = Term::new(n + 2, ell + 1)?;
            checked += 1;
            if lhs.coeffs() != rhs.coeffs() {
                return Ok(CheckReport::fail(
                    "banach.term_shift",
                    format!(
                        "tau({n},{ell}) = {:?} but tau({},{}) = {:?}",
                        lhs.coeffs(),
                        n + 2,
                        ell + 1,
                        rhs.coeffs()
                    ),
                ));
            }
        }
    }
    Ok(CheckReport::pass("banach.term_shift")
        .with_value("n_max", n_max)
        .with_value("checked", checked))
}

/// Truncated conjunction of `phi_{2k+3}` for `k < big_n` on one pair.
pub fn type_p_eval(
    big_n: u64,
    x: &(FSVector, FSVector),
    y: &(FSVector, FSVector),
) -> Result<CheckReport, BanachError> {
    let ctx = NormContext::B0;
    for k in 0..big_n {
        let n = 2 * k + 3;
        if !PhiFormula::new(n)?.holds(x, y, &ctx)? {
            return Ok(CheckReport::fail(
                "banach.type_p",
                format!("phi_{n} fails on the given pair"),
            )
            .with_value("N", big_n)
            .with_value("failed_at_n", n));
        }
    }
    Ok(CheckReport::pass("banach.type_p").with_value("N", big_n))
}

/// Parameters of one randomized cycle search.
#[derive(Debug, Clone, Copy)]
pub struct CycleParams {
    pub n: u64,
    /// Cycle parameter: attempts use `m + 1` tuples
    /// `(c_i, d_i), i <= m`, i.e. a directed cycle of size `m + 1`.
    pub m: u64,
    pub trials: u64,
    pub seed: u64,
}

struct TupleSampler {
    rng: ChaCha8Rng,
}

impl TupleSampler {
    fn new(seed: u64) -> Self {
        TupleSampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    // bounded-height rational: |p| <= 16, 1 <= q <= 16
    fn coeff(&mut self) -> Rational {
        let p = self.rng.gen_range(-16i64..=16);
        let q = self.rng.gen_range(1i64..=16);
        Rational::new(p.into(), q.into())
    }

    fn vector(&mut self) -> FSVector {
        let mut v = FSVector::zero();
        for _ in 0..self.rng.gen_range(0..=3) {
            let idx = self.rng.gen_range(0u64..=8);
            let basis = if self.rng.gen_bool(0.5) {
                crate::qlinalg::BasisIndex::a(idx)
            } else {
                crate::qlinalg::BasisIndex::b(idx)
            };
            let c = &v.coeff(basis) + &self.coeff();
            v.set(basis, c);
        }
        v
    }

    fn tuple(&mut self) -> (FSVector, FSVector) {
        (self.vector(), self.vector())
    }

    /// Either a fully random tuple list or an adversarial perturbation of
    /// the chain witnesses wrapped into a cycle.
    fn cycle_attempt(&mut self, m: u64) -> Vec<(FSVector, FSVector)> {
        let count = m as usize + 1;
        if self.rng.gen_bool(0.25) {
            let mut tuples: Vec<_> = (0..count as u64).map(chain_tuple).collect();
            if self.rng.gen_bool(0.5) {
                // perturb one coordinate of one tuple
                let at = self.rng.gen_range(0..count);
                let idx = self.rng.gen_range(0u64..=8);
                let basis = if self.rng.gen_bool(0.5) {
                    crate::qlinalg::BasisIndex::a(idx)
                } else {
                    crate::qlinalg::BasisIndex::b(idx)
                };
                let eps = self.coeff();
                let side = if self.rng.gen_bool(0.5) { &mut tuples[at].0 } else { &mut tuples[at].1 };
                let c = &side.coeff(basis) + &eps;
                side.set(basis, c);
            }
            tuples
        } else {
            (0..count).map(|_| self.tuple()).collect()
        }
    }
}

/// Randomized search for directed `phi_n`-cycles with `m+1` tuples, plus
/// the triangle-inequality certificate for every attempt whose path
/// conjuncts hold: the telescoped norm is at most `2m`, strictly below the
/// `2m+1` the closing edge would require.
pub fn cycle_search_and_certify(params: CycleParams) -> Result<CheckReport, BanachError> {
    let CycleParams { n, m, trials, seed } = params;
    let phi = PhiFormula::new(n)?;
    if m <= 2 || m > n {
        return Err(BanachError::CycleRange { n, m });
    }
    let ctx = NormContext::B0;
    let mut sampler = TupleSampler::new(seed);
    let mut closed = 0u64;
    let mut certificates = 0u64;
    let mut first_witness: Option<String> = None;

    for _ in 0..trials {
        let tuples = sampler.cycle_attempt(m);
        // full-edge scan with short circuit: the attempt closes only if
        // every path edge and the closing edge hold
        let mut all_edges = true;
        for i in 0..=m as usize {
            let from = &tuples[i];
            let to = &tuples[(i + 1) % (m as usize + 1)];
            if !phi.holds(from, to, &ctx)? {
                all_edges = false;
                break;
            }
        }
        if all_edges {
            closed += 1;
            if first_witness.is_none() {
                first_witness = Some(format!(
                    "closed phi_{n}-cycle of size {}: {:?}",
                    m + 1,
                    tuples
                        .iter()
                        .map(|(c, d)| format!("({c}; {d})"))
                        .collect::<Vec<_>>()
                ));
            }
            continue;
        }
        // certificate path: all first-family conjuncts hold along the path
        let mut path_ok = true;
        for i in 0..m as usize {
            if !phi.first_family_holds(&tuples[i], &tuples[i + 1], &ctx)? {
                path_ok = false;
                break;
            }
        }
        if path_ok {
            // telescoped bound: sum of the m step norms, each <= 2
            let mut telescoped = Rational::from(num::BigInt::from(0));
            for i in 0..m as usize {
                let step = &Term::new(n, i as u64 + 1)?.apply(&tuples[i + 1].0, &tuples[i + 1].1)
                    - &Term::new(n, i as u64)?.apply(&tuples[i].0, &tuples[i].1);
                telescoped += ctx.eval(&step)?;
            }
            let closing = &Term::new(n, m)?.apply(&tuples[m as usize].0, &tuples[m as usize].1)
                - &Term::new(n, 0)?.apply(&tuples[0].0, &tuples[0].1);
            let closing_norm = ctx.eval(&closing)?;
            let bound = int(2 * m as i64);
            let required = int(2 * m as i64 + 1);
            // exact certificate: closing norm <= telescoped <= 2m < 2m+1
            if !(closing_norm <= telescoped && telescoped <= bound && bound < required) {
                return Ok(CheckReport::fail(
                    format!("banach.cycles.n{n}.m{m}"),
                    format!(
                        "certificate arithmetic broke: closing {closing_norm}, telescoped {telescoped}, bound {bound}"
                    ),
                ));
            }
            certificates += 1;
        }
    }

    let claim = format!("banach.cycles.n{n}.m{m}");
    if closed > 0 {
        // would contradict the cycle-freeness argument; highest severity
        return Ok(CheckReport::fail(claim, first_witness.unwrap())
            .with_value("cycles_closed", closed)
            .with_value("trials", trials));
    }
    Ok(CheckReport::pass(claim)
        .with_value("trials", trials)
        .with_value("cycles_closed", 0u64)
        .with_value("certificates", certificates)
        .with_value("seed", seed))
}

/// Spot-check of the entailment `phi_{n+2} => phi_n` on random tuples,
/// seeded with chain pairs so the antecedent is exercised non-vacuously.
pub fn entailment_spotcheck(n: u64, samples: u64, seed: u64) -> Result<CheckReport, BanachError> {
    let strong = PhiFormula::new(n + 2)?;
    let weak = PhiFormula::new(n)?;
    let ctx = NormContext::B0;
    let mut sampler = TupleSampler::new(seed);
    let mut antecedent_true = 0u64;
    for trial in 0..samples {
        let (x, y) = if trial % 8 == 0 {
            let alpha = sampler.rng.gen_range(0u64..4);
            let beta = alpha + 1 + sampler.rng.gen_range(0u64..4);
            (chain_tuple(alpha), chain_tuple(beta))
        } else {
            (sampler.tuple(), sampler.tuple())
        };
        if strong.holds(&x, &y, &ctx)? {
            antecedent_true += 1;
            if !weak.holds(&x, &y, &ctx)? {
                return Ok(CheckReport::fail(
                    format!("banach.entailment.n{n}"),
                    format!(
                        "phi_{} holds but phi_{n} fails on x=({}; {}), y=({}; {})",
                        n + 2,
                        x.0,
                        x.1,
                        y.0,
                        y.1
                    ),
                ));
            }
        }
    }
    Ok(CheckReport::pass(format!("banach.entailment.n{n}"))
        .with_value("samples", samples)
        .with_value("antecedent_true", antecedent_true)
        .with_value("seed", seed))
}

/// Convenience: chain pairs satisfy the truncated type for every pair.
pub fn type_p_on_chain(big_n: u64, length: u64) -> Result<CheckReport, BanachError> {
    for alpha in 0..length {
        for beta in (alpha + 1)..length {
            let r = type_p_eval(big_n, &chain_tuple(alpha), &chain_tuple(beta))?;
            if r.status != Status::Pass {
                return Ok(r.with_value("alpha", alpha).with_value("beta", beta));
            }
        }
    }
    Ok(CheckReport::pass("banach.type_p.chain")
        .with_value("N", big_n)
        .with_value("length", length))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::banach::chain_tuple;

    #[test]
    fn eq1_eq2_hold_exactly() {
        let r = check_eq1_eq2(3, 4).unwrap();
        assert!(r.is_pass(), "{:?}", r);
        let r = check_eq1_eq2(6, 5).unwrap();
        assert!(r.is_pass(), "{:?}", r);
    }

    #[test]
    fn eq2_value_examples() {
        // ||c_{3,1,0} - c_{3,0,1}|| = 3
        let d = &witness_c(3, 1, 0).unwrap().vector - &witness_c(3, 0, 1).unwrap().vector;
        assert_eq!(seminorm_b0(&d).unwrap(), int(3));
        // ||c_{3,1,1} - c_{3,0,0}|| = 2
        let d = &witness_c(3, 1, 1).unwrap().vector - &witness_c(3, 0, 0).unwrap().vector;
        assert_eq!(seminorm_b0(&d).unwrap(), int(2));
        // m = 0: ||c_{3,0,0} - c_{3,0,1}|| = 1
        let d = &witness_c(3, 0, 0).unwrap().vector - &witness_c(3, 0, 1).unwrap().vector;
        assert_eq!(seminorm_b0(&d).unwrap(), int(1));
    }

    #[test]
    fn chain_passes() {
        assert!(chain_verify(3, 2).unwrap().is_pass());
        assert!(chain_verify(5, 8).unwrap().is_pass());
    }

    #[test]
    fn chain_needs_two_points() {
        assert!(matches!(chain_verify(3, 1), Err(BanachError::LengthTooSmall(1))));
    }

    #[test]
    fn term_shift_examples() {
        assert!(term_shift_identity(8).unwrap().is_pass());
        assert_eq!(Term::new(3, 0).unwrap().coeffs(), (3, 4));
        assert_eq!(Term::new(5, 1).unwrap().coeffs(), (3, 4));
        assert_eq!(Term::new(4, 2).unwrap().coeffs(), (0, 1));
        assert_eq!(Term::new(6, 3).unwrap().coeffs(), (0, 1));
        assert_ne!(Term::new(3, 0).unwrap().coeffs(), Term::new(5, 0).unwrap().coeffs());
    }

    #[test]
    fn type_p_on_chain_and_reverse() {
        let r = type_p_eval(4, &chain_tuple(0), &chain_tuple(1)).unwrap();
        assert!(r.is_pass());
        let r = type_p_eval(4, &chain_tuple(1), &chain_tuple(0)).unwrap();
        assert_eq!(r.status, Status::Fail);
        // N=1 is exactly phi_3
        let r = type_p_eval(1, &chain_tuple(0), &chain_tuple(2)).unwrap();
        assert!(r.is_pass());
    }

    #[test]
    fn chain_wrapped_cycle_fails_on_closing_edge() {
        // chain witnesses wrapped into a cycle: path edges hold, the
        // closing edge (reversed orientation) fails
        let phi = PhiFormula::new(3).unwrap();
        let ctx = NormContext::B0;
        let tuples: Vec<_> = (0..4).map(chain_tuple).collect();
        for i in 0..3 {
            assert!(phi.holds(&tuples[i], &tuples[i + 1], &ctx).unwrap());
        }
        assert!(!phi.holds(&tuples[3], &tuples[0], &ctx).unwrap());
    }

    #[test]
    fn zero_tuples_fail_every_edge() {
        let phi = PhiFormula::new(4).unwrap();
        let ctx = NormContext::B0;
        let z = (FSVector::zero(), FSVector::zero());
        assert!(!phi.holds(&z, &z, &ctx).unwrap());
    }

    #[test]
    fn cycle_search_small() {
        let r = cycle_search_and_certify(CycleParams { n: 3, m: 3, trials: 300, seed: 7 }).unwrap();
        assert!(r.is_pass(), "{:?}", r);
        assert_eq!(r.values["cycles_closed"], "0");
        // adversarial chain-wrap attempts guarantee certificate coverage
        assert!(r.values["certificates"].parse::<u64>().unwrap() > 0);
    }

    #[test]
    fn cycle_range_checked() {
        assert!(matches!(
            cycle_search_and_certify(CycleParams { n: 3, m: 2, trials: 1, seed: 0 }),
            Err(BanachError::CycleRange { .. })
        ));
        assert!(matches!(
            cycle_search_and_certify(CycleParams { n: 3, m: 4, trials: 1, seed: 0 }),
            Err(BanachError::CycleRange { .. })
        ));
    }

    #[test]
    fn entailment_no_counterexample() {
        let r = entailment_spotcheck(3, 200, 11).unwrap();
        assert!(r.is_pass(), "{:?}", r);
        assert!(r.values["antecedent_true"].parse::<u64>().unwrap() > 0);
    }
}
