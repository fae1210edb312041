use num::Zero;

use crate::qlinalg::{
    solve_lp, BasisIndex, Comparison, FSVector, LpConstraint, LpProblem, LpSolution, Rational,
};

use super::{AmalgamError, AmalgamSpace, Coord, NormTag};

/// A witness for an infimal-convolution norm value: block summands
/// `t_k ∈ B'_k` with `Σ t_k = total`, optionally refined into the
/// telescoping normal form `t_p = −r'_p + r'_{p+1} + s_p`.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub tag: NormTag,
    pub total: FSVector,
    /// `blocks[k] = t_k ∈ B'_k`.
    pub blocks: Vec<FSVector>,
    pub refined: Option<Refined>,
}

/// Telescoping refinement: `r'_p ∈ span(b̄_p)` for `p ≤ m` and
/// `s_p ∈ V⁻` for `p < m`, with `t_p = −r'_p + r'_{p+1} + s_p`,
/// `r'_0 = −r'`, `r'_m = g_m(r'')`, and `Σ s_p = 0`.
#[derive(Debug, Clone)]
pub struct Refined {
    pub r_parts: Vec<FSVector>,
    pub s_parts: Vec<FSVector>,
}

/// Affine expression in the LP variables: `constant + Σ coeff·x_var`.
#[derive(Debug, Clone)]
struct Affine {
    constant: Rational,
    terms: Vec<(usize, Rational)>,
}

impl Affine {
    fn constant(c: Rational) -> Self {
        Affine { constant: c, terms: Vec::new() }
    }

    fn var(v: usize) -> Self {
        Affine {
            constant: Rational::zero(),
            terms: vec![(v, Rational::from(num::BigInt::from(1)))],
        }
    }

    fn scaled(&self, lambda: &Rational) -> Affine {
        Affine {
            constant: &self.constant * lambda,
            terms: self.terms.iter().map(|(v, c)| (*v, c * lambda)).collect(),
        }
    }

    fn add_into(&self, acc: &mut Affine) {
        acc.constant += &self.constant;
        acc.terms.extend(self.terms.iter().cloned());
    }

    fn eval(&self, point: &[Rational]) -> Rational {
        let mut out = self.constant.clone();
        for (v, c) in &self.terms {
            out += c * &point[*v];
        }
        out
    }

    fn dense_coeffs(&self, nvars: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); nvars];
        for (v, c) in &self.terms {
            out[*v] += c;
        }
        out
    }
}

/// Index bookkeeping for the decomposition LP.
///
/// Free variables: `λ_{i,ℓ}` = the share of the interior coordinate
/// `b_{i,ℓ}` (0 < i < m) taken by its right block `B'_i`, and `σ_{k,ℓ}` =
/// the shared-coordinate part assigned to block `k < m−1`. Epigraph
/// variables `u_k ≥ ‖t_k‖` are nonnegative; the objective is `Σ u_k`.
struct VarMap {
    m: usize,
    width: usize,
    n_star: usize,
}

impl VarMap {
    fn lambda(&self, i: u64, ell: usize) -> usize {
        (i as usize - 1) * self.width + (ell - self.n_star)
    }

    fn sigma(&self, k: usize, ell: usize) -> usize {
        (self.m - 1) * self.width + k * self.n_star + ell
    }

    fn u(&self, k: usize) -> usize {
        (self.m - 1) * (self.width + self.n_star) + k
    }

    fn total(&self) -> usize {
        self.u(self.m - 1) + 1
    }
}

/// Exact infimal-convolution norm
/// `‖t‖ = min { Σ_k ‖t_k‖_tag : t_k ∈ B'_k, Σ t_k = t }`,
/// together with an attaining decomposition.
///
/// The minimum is attained because the block norms are polyhedral, so the
/// whole problem is a finite LP over the interior shares.
pub fn infconv_norm(
    space: &AmalgamSpace,
    t: &FSVector,
    tag: NormTag,
) -> Result<(Rational, Decomposition), AmalgamError> {
    for idx in t.support() {
        space.decode(idx)?;
    }
    let m = space.stage() as usize;
    let vars = VarMap {
        m,
        width: space.tuple_len() - space.n_star(),
        n_star: space.n_star(),
    };

    // symbolic coordinates of every t_k
    let block_exprs: Vec<Vec<(BasisIndex, Affine)>> = (0..m)
        .map(|k| block_coordinate_exprs(space, t, &vars, k))
        .collect();

    let nvars = vars.total();
    let mut lp = LpProblem::new(nvars);
    for k in 0..m {
        lp.objective[vars.u(k)] = Rational::from(num::BigInt::from(1));
        lp.nonnegative[vars.u(k)] = true;
    }
    for (k, exprs) in block_exprs.iter().enumerate() {
        for f in space.blocks()[k].norm(tag).functionals() {
            // f(t_k) as an affine expression
            let mut val = Affine::constant(Rational::zero());
            for (idx, expr) in exprs {
                let c = f.coeffs.coeff(*idx);
                if !c.is_zero() {
                    expr.scaled(&c).add_into(&mut val);
                }
            }
            // ±f(t_k) ≤ u_k
            for sign in [1i64, -1] {
                let s = Rational::from(num::BigInt::from(sign));
                let scaled = val.scaled(&s);
                let mut coeffs = scaled.dense_coeffs(nvars);
                coeffs[vars.u(k)] = Rational::from(num::BigInt::from(-1));
                lp.constraints.push(LpConstraint {
                    coeffs,
                    cmp: Comparison::Le,
                    rhs: -scaled.constant,
                });
            }
        }
    }

    let point = match solve_lp(&lp).map_err(AmalgamError::Lp)? {
        LpSolution::Optimal { point, .. } => point,
        other => {
            return Err(AmalgamError::Internal(format!(
                "decomposition LP returned {other:?}; it should always have a minimum"
            )))
        }
    };

    let blocks: Vec<FSVector> = block_exprs
        .iter()
        .map(|exprs| {
            FSVector::from_entries(
                exprs
                    .iter()
                    .map(|(idx, expr)| (*idx, expr.eval(&point))),
            )
        })
        .collect();

    let mut sum = FSVector::zero();
    let mut value = Rational::zero();
    for (k, tk) in blocks.iter().enumerate() {
        sum = &sum + tk;
        value += space.blocks()[k].norm(tag).eval(tk)?;
    }
    if &sum != t {
        return Err(AmalgamError::Internal(
            "decomposition summands do not reproduce the input".into(),
        ));
    }

    let dec = Decomposition {
        tag,
        total: t.clone(),
        blocks,
        refined: None,
    };
    Ok((value, dec))
}

/// Coordinates of `t_k` as affine expressions in the LP variables.
fn block_coordinate_exprs(
    space: &AmalgamSpace,
    t: &FSVector,
    vars: &VarMap,
    k: usize,
) -> Vec<(BasisIndex, Affine)> {
    let m = vars.m;
    let mut out = Vec::new();
    for ell in 0..vars.n_star {
        let idx = space.encode(Coord::Star(ell));
        let expr = if m == 1 {
            Affine::constant(t.coeff(idx))
        } else if k < m - 1 {
            Affine::var(vars.sigma(k, ell))
        } else {
            // the last block absorbs whatever the others leave over
            let mut expr = Affine::constant(t.coeff(idx));
            for k2 in 0..m - 1 {
                expr.terms
                    .push((vars.sigma(k2, ell), Rational::from(num::BigInt::from(-1))));
            }
            expr
        };
        out.push((idx, expr));
    }
    for (i, owner_is_right) in [(k as u64, true), (k as u64 + 1, false)] {
        for ell in vars.n_star..vars.n_star + vars.width {
            let idx = space.encode(Coord::Moving { i, ell });
            let boundary = i == 0 || i as usize == m;
            let expr = if boundary {
                // endpoint coordinates belong to a single block
                Affine::constant(t.coeff(idx))
            } else if owner_is_right {
                Affine::var(vars.lambda(i, ell))
            } else {
                let mut expr = Affine::constant(t.coeff(idx));
                expr.terms
                    .push((vars.lambda(i, ell), Rational::from(num::BigInt::from(-1))));
                expr
            };
            out.push((idx, expr));
        }
    }
    out
}

/// Extracts the telescoping normal form from a decomposition of
/// `r_m = r' + g_m(r'')`: interior `r'_p` are read off the summands, the
/// slack lands in `V⁻`, and `Σ s_p = 0` is checked exactly.
pub fn refine_decomposition(
    space: &AmalgamSpace,
    dec: &Decomposition,
    r_prime: &FSVector,
    r_dprime: &FSVector,
) -> Result<Decomposition, AmalgamError> {
    let m = space.stage() as usize;
    if dec.blocks.len() != m {
        return Err(AmalgamError::Shape(format!(
            "decomposition has {} summands, expected one per block ({m})",
            dec.blocks.len()
        )));
    }
    let expected = r_prime + &space.g_shift(r_dprime, space.stage())?;
    if dec.total != expected {
        return Err(AmalgamError::Shape(
            "decomposition target is not of the form r' + g_m(r'')".into(),
        ));
    }

    let is_star = |idx: BasisIndex| matches!(space.decode(idx), Ok(Coord::Star(_)));
    let mut r_parts: Vec<FSVector> = Vec::with_capacity(m + 1);
    r_parts.push(-r_prime);
    for p in 0..m - 1 {
        let carried = &dec.blocks[p] + &r_parts[p];
        // moving part of b̄_{p+1}; anything else must be V⁻ slack
        let next = carried.filter(|idx| {
            matches!(space.decode(idx),
                Ok(Coord::Moving { i, .. }) if i == p as u64 + 1)
        });
        let leftover = &carried - &next;
        if !leftover.support().all(is_star) {
            return Err(AmalgamError::Shape(format!(
                "summand {p} is not in telescoping position: residue {leftover}"
            )));
        }
        r_parts.push(next);
    }
    r_parts.push(space.g_shift(r_dprime, space.stage())?);

    let mut s_parts = Vec::with_capacity(m);
    let mut s_sum = FSVector::zero();
    for p in 0..m {
        let s = &(&dec.blocks[p] + &r_parts[p]) - &r_parts[p + 1];
        if !s.support().all(is_star) {
            return Err(AmalgamError::Shape(format!(
                "slack of summand {p} leaves V⁻: {s}"
            )));
        }
        s_sum = &s_sum + &s;
        s_parts.push(s);
    }
    if !s_sum.is_zero() {
        return Err(AmalgamError::Internal(format!(
            "telescoping slacks do not cancel: Σ s_p = {s_sum}"
        )));
    }

    Ok(Decomposition {
        refined: Some(Refined { r_parts, s_parts }),
        ..dec.clone()
    })
}
