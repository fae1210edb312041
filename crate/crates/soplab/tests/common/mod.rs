//! Shared test helpers: an exact Gaussian solver and a brute-force
//! infimal-convolution oracle that enumerates basic solutions of the
//! stacked (non-eliminated) decomposition LP.

use std::collections::BTreeSet;

use num::{One, Zero};
use soplab::amalgam::{AmalgamSpace, NormTag};
use soplab::qlinalg::{BasisIndex, FSVector, Rational};

/// Solves a square rational system exactly; `None` if singular.
pub fn gauss_solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].clone();
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &inv;
            for c in col..n {
                let delta = &factor * &a[col][c];
                a[r][c] = &a[r][c] - &delta;
            }
            let delta = &factor * &b[col];
            b[r] = &b[r] - &delta;
        }
    }
    Some(
        (0..n)
            .map(|i| &b[i] / &a[i][i])
            .collect(),
    )
}

/// All size-`r` index subsets of `0..n`, lexicographic.
pub fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < r - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    rec(0, n, r, &mut cur, &mut out);
    out
}

struct Row {
    coeffs: Vec<Rational>,
    rhs: Rational,
}

/// Brute-force value of the infimal-convolution norm: set up the LP in
/// stacked form (one variable per block coordinate plus one epigraph
/// variable per block, no share elimination) and take the exact minimum
/// of the objective over all feasible basic solutions. The constraint
/// system is pointed for the providers under test, so the optimum of the
/// (feasible, bounded) LP is attained at one of them.
pub fn brute_force_infconv(space: &AmalgamSpace, t: &FSVector, tag: NormTag) -> Rational {
    let blocks = space.blocks();
    let m = blocks.len();

    // Variable layout: per-block copies of that block's coordinates,
    // then the m epigraph variables.
    let mut offsets = Vec::with_capacity(m);
    let mut block_coords: Vec<Vec<BasisIndex>> = Vec::with_capacity(m);
    let mut nvars = 0usize;
    for bl in blocks {
        offsets.push(nvars);
        let coords: Vec<BasisIndex> = bl.coords().iter().copied().collect();
        nvars += coords.len();
        block_coords.push(coords);
    }
    let u0 = nvars;
    nvars += m;
    let var = |k: usize, idx: BasisIndex| -> usize {
        offsets[k] + block_coords[k].iter().position(|c| *c == idx).unwrap()
    };

    let union: BTreeSet<BasisIndex> = blocks
        .iter()
        .flat_map(|bl| bl.coords().iter().copied())
        .collect();
    assert!(
        t.support().all(|idx| union.contains(&idx)),
        "target outside the block union"
    );

    // Equalities: the block parts sum to the target, coordinate-wise.
    let mut eqs: Vec<Row> = Vec::new();
    for &c in &union {
        let mut coeffs = vec![Rational::zero(); nvars];
        for (k, coords) in block_coords.iter().enumerate() {
            if coords.contains(&c) {
                coeffs[var(k, c)] = Rational::one();
            }
        }
        eqs.push(Row { coeffs, rhs: t.coeff(c) });
    }

    // Inequalities `±f(t_k) − u_k ≤ 0`, one pair per stored functional.
    let mut ineqs: Vec<Row> = Vec::new();
    for (k, bl) in blocks.iter().enumerate() {
        for f in bl.norm(tag).functionals() {
            for sign in [1i64, -1] {
                let mut coeffs = vec![Rational::zero(); nvars];
                for (idx, c) in f.coeffs.iter() {
                    coeffs[var(k, idx)] = c * Rational::from_integer(sign.into());
                }
                coeffs[u0 + k] = -Rational::one();
                ineqs.push(Row { coeffs, rhs: Rational::zero() });
            }
        }
    }

    let free = nvars - eqs.len();
    let mut best: Option<Rational> = None;
    for subset in combinations(ineqs.len(), free) {
        let mut a: Vec<Vec<Rational>> = eqs.iter().map(|r| r.coeffs.clone()).collect();
        let mut b: Vec<Rational> = eqs.iter().map(|r| r.rhs.clone()).collect();
        for &i in &subset {
            a.push(ineqs[i].coeffs.clone());
            b.push(ineqs[i].rhs.clone());
        }
        let Some(point) = gauss_solve(a, b) else {
            continue;
        };
        let feasible = ineqs.iter().all(|row| {
            let lhs: Rational = row
                .coeffs
                .iter()
                .zip(&point)
                .map(|(c, x)| c * x)
                .sum();
            lhs <= row.rhs
        });
        if !feasible {
            continue;
        }
        let value: Rational = point[u0..].iter().cloned().sum();
        if best.as_ref().map_or(true, |b| value < *b) {
            best = Some(value);
        }
    }
    best.expect("the decomposition LP always has a feasible basic solution")
}
