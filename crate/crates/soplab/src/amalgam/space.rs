use std::collections::BTreeSet;
use std::fmt;

use crate::qlinalg::{BasisIndex, BasisKind, FSVector, LinearFunctional, PolyhedralNorm};

use super::{AmalgamError, SequenceProvider};

/// The three block norms: tag 1 is pulled back through the order-preserving
/// embedding `h₁`, tag −1 through the order-reversing `h₋₁`, and tag 0 is
/// their pointwise max.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NormTag {
    One,
    MinusOne,
    Zero,
}

impl NormTag {
    pub const ALL: [NormTag; 3] = [NormTag::One, NormTag::MinusOne, NormTag::Zero];

    pub fn value(self) -> i8 {
        match self {
            NormTag::One => 1,
            NormTag::MinusOne => -1,
            NormTag::Zero => 0,
        }
    }
}

impl fmt::Display for NormTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// Symbolic coordinate of the stage-`m` space: a shared coordinate
/// `b*_ℓ` (ℓ < n*) or a moving coordinate `b_{i,ℓ}` (n* ≤ ℓ < n, i ≤ m).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coord {
    Star(usize),
    Moving { i: u64, ell: usize },
}

/// One amalgamand `B'_k = span(b̄_k, b̄_{k+1})` together with its shared
/// part and the three polyhedral norms.
#[derive(Debug, Clone)]
pub struct Block {
    pub k: u64,
    tag1: PolyhedralNorm,
    tag_minus1: PolyhedralNorm,
    tag0: PolyhedralNorm,
}

impl Block {
    pub fn norm(&self, tag: NormTag) -> &PolyhedralNorm {
        match tag {
            NormTag::One => &self.tag1,
            NormTag::MinusOne => &self.tag_minus1,
            NormTag::Zero => &self.tag0,
        }
    }

    pub fn coords(&self) -> &BTreeSet<BasisIndex> {
        self.tag1.space()
    }
}

/// The stage-`m` free amalgam `V_m` of `B'_0, …, B'_{m−1}` over the
/// common subspace `V⁻ = span(b*_ℓ)`.
///
/// Formal coordinates are `E`-tagged basis indices:
/// `b*_ℓ ↦ e_ℓ` and `b_{i,ℓ} ↦ e_{n* + i·(n−n*) + (ℓ−n*)}`.
/// In particular `b̄_0` occupies `e_0 … e_{n−1}` regardless of the stage.
#[derive(Debug, Clone)]
pub struct AmalgamSpace {
    m: u64,
    n: usize,
    n_star: usize,
    blocks: Vec<Block>,
    star_images: Vec<FSVector>,
    tuple_images: Vec<Vec<FSVector>>,
}

impl AmalgamSpace {
    pub fn stage(&self) -> u64 {
        self.m
    }

    pub fn tuple_len(&self) -> usize {
        self.n
    }

    pub fn n_star(&self) -> usize {
        self.n_star
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn encode(&self, c: Coord) -> BasisIndex {
        match c {
            Coord::Star(ell) => {
                debug_assert!(ell < self.n_star);
                BasisIndex::e(ell as u64)
            }
            Coord::Moving { i, ell } => {
                debug_assert!(self.n_star <= ell && ell < self.n);
                let width = (self.n - self.n_star) as u64;
                BasisIndex::e(self.n_star as u64 + i * width + (ell - self.n_star) as u64)
            }
        }
    }

    pub fn decode(&self, idx: BasisIndex) -> Result<Coord, AmalgamError> {
        if idx.kind != BasisKind::E {
            return Err(AmalgamError::OutsideSpan(idx));
        }
        if idx.index < self.n_star as u64 {
            return Ok(Coord::Star(idx.index as usize));
        }
        let width = (self.n - self.n_star) as u64;
        let off = idx.index - self.n_star as u64;
        let i = off / width;
        let ell = self.n_star + (off % width) as usize;
        if i > self.m {
            return Err(AmalgamError::OutsideSpan(idx));
        }
        Ok(Coord::Moving { i, ell })
    }

    pub fn contains(&self, v: &FSVector) -> bool {
        v.support().all(|idx| self.decode(idx).is_ok())
    }

    /// The embedding `g_k : b̄_0 ↦ b̄_k`, identity on `V⁻`.
    ///
    /// The input must be supported on `span(b̄_0)` (coordinates
    /// `e_0 … e_{n−1}`).
    pub fn g_shift(&self, v: &FSVector, k: u64) -> Result<FSVector, AmalgamError> {
        let mut out = FSVector::zero();
        for (idx, c) in v.iter() {
            let coord = self.decode(idx)?;
            let shifted = match coord {
                Coord::Star(ell) => Coord::Star(ell),
                Coord::Moving { i: 0, ell } => Coord::Moving { i: k, ell },
                Coord::Moving { .. } => return Err(AmalgamError::OutsideSpan(idx)),
            };
            let target = self.encode(shifted);
            let cur = out.coeff(target) + c;
            out.set(target, cur);
        }
        Ok(out)
    }

    /// Ambient image under `h₁`: `b*_ℓ ↦` shared coordinate,
    /// `b_{i,ℓ} ↦` the `ℓ`-th entry of the provider's `i`-th tuple.
    pub fn h1_image(&self, v: &FSVector) -> Result<FSVector, AmalgamError> {
        let mut out = FSVector::zero();
        for (idx, c) in v.iter() {
            let image = match self.decode(idx)? {
                Coord::Star(ell) => &self.star_images[ell],
                Coord::Moving { i, ell } => &self.tuple_images[i as usize][ell - self.n_star],
            };
            out = &out + &image.scale(c);
        }
        Ok(out)
    }

    /// Coordinates of `B'_k` as formal basis indices.
    pub fn block_coords(&self, k: u64) -> Vec<BasisIndex> {
        let mut out: Vec<BasisIndex> = (0..self.n_star)
            .map(|ell| self.encode(Coord::Star(ell)))
            .collect();
        for i in [k, k + 1] {
            for ell in self.n_star..self.n {
                out.push(self.encode(Coord::Moving { i, ell }));
            }
        }
        out
    }
}

/// Builds the stage-`m` amalgam of the provider's sequence.
///
/// Validates the provider invariants that the claims need: the first `n*`
/// coordinates are shared, and the moving coordinates over the working
/// range `0..=m` are linearly independent together with the shared ones.
pub fn build_amalgam(
    provider: &dyn SequenceProvider,
    m: u64,
) -> Result<AmalgamSpace, AmalgamError> {
    if m < 1 {
        return Err(AmalgamError::StageTooSmall(m));
    }
    let n = provider.tuple_len();
    let n_star = provider.n_star();
    if n_star >= n {
        return Err(AmalgamError::Shape(format!(
            "n* = {n_star} leaves no moving coordinates in tuples of length {n}"
        )));
    }
    let star_images = provider.star_coords();
    let mut tuple_images: Vec<Vec<FSVector>> = Vec::with_capacity(m as usize + 1);
    for i in 0..=m {
        let tuple = provider.tuple_at(i);
        if tuple.len() != n {
            return Err(AmalgamError::ProviderInvariant(format!(
                "tuple {i} has length {}, expected {n}",
                tuple.len()
            )));
        }
        if tuple[..n_star] != star_images[..] {
            return Err(AmalgamError::ProviderInvariant(format!(
                "tuple {i} disagrees with the shared coordinates"
            )));
        }
        tuple_images.push(tuple[n_star..].to_vec());
    }

    let mut basis_candidates: Vec<FSVector> = star_images.clone();
    for images in &tuple_images {
        basis_candidates.extend(images.iter().cloned());
    }
    if !linearly_independent(&basis_candidates) {
        return Err(AmalgamError::ProviderInvariant(format!(
            "coordinates of tuples 0..={m} are linearly dependent"
        )));
    }

    let space = AmalgamSpace {
        m,
        n,
        n_star,
        blocks: Vec::new(),
        star_images,
        tuple_images,
    };
    let mut blocks = Vec::with_capacity(m as usize);
    for k in 0..m {
        blocks.push(build_block(provider, &space, k));
    }
    Ok(AmalgamSpace { blocks, ..space })
}

fn build_block(provider: &dyn SequenceProvider, space: &AmalgamSpace, k: u64) -> Block {
    let coords = space.block_coords(k);
    let forward: Vec<&FSVector> = coord_images(space, k, false);
    let reversed: Vec<&FSVector> = coord_images(space, k, true);
    let tag1 = pulled_back_norm(provider, &coords, &forward);
    let tag_minus1 = pulled_back_norm(provider, &coords, &reversed);
    let tag0 = PolyhedralNorm::max_of(&tag1, &tag_minus1);
    Block { k, tag1, tag_minus1, tag0 }
}

/// Ambient images of the block coordinates, in `block_coords` order.
/// `reversed` swaps the two tuples, realizing the order-reversing `h₋₁`
/// on a fresh two-element window.
fn coord_images<'a>(space: &'a AmalgamSpace, k: u64, reversed: bool) -> Vec<&'a FSVector> {
    let (lo, hi) = if reversed { (k + 1, k) } else { (k, k + 1) };
    let mut out: Vec<&FSVector> = space.star_images.iter().collect();
    out.extend(space.tuple_images[lo as usize].iter());
    out.extend(space.tuple_images[hi as usize].iter());
    out
}

fn pulled_back_norm(
    provider: &dyn SequenceProvider,
    coords: &[BasisIndex],
    images: &[&FSVector],
) -> PolyhedralNorm {
    let span: Vec<FSVector> = images.iter().map(|v| (*v).clone()).collect();
    let functionals = provider
        .functionals_on_span(&span)
        .into_iter()
        .map(|f| {
            LinearFunctional::new(FSVector::from_entries(
                coords
                    .iter()
                    .zip(images.iter())
                    .map(|(c, img)| (*c, img.dot(&f))),
            ))
        })
        .collect();
    PolyhedralNorm::new(coords.iter().copied(), functionals)
}

fn linearly_independent(vs: &[FSVector]) -> bool {
    // exact Gaussian elimination; pivots keyed by first support index
    let mut reduced: Vec<FSVector> = Vec::new();
    for v in vs {
        let mut cur = v.clone();
        for r in &reduced {
            let pivot = r.support().next().expect("reduced rows are nonzero");
            let c = cur.coeff(pivot);
            if !num::Zero::is_zero(&c) {
                let factor = &c / r.coeff(pivot);
                cur = &cur - &r.scale(&factor);
            }
        }
        if cur.is_zero() {
            return false;
        }
        reduced.push(cur);
    }
    true
}
