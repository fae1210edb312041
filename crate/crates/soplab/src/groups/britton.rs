//! Britton reduction for HNN words over the affine model of BS(1,2).
//!
//! The base group is `⟨a, b⟩` acting as `a : t ↦ t+1`, `b : t ↦ t/2`.
//! The stable letter `c` satisfies `c⁻¹bc = b²`, with associated
//! subgroups `A = ⟨b⟩` (all pure scalings) and `B = ⟨b²⟩` (scalings by
//! even powers). Membership is decidable by inspecting `(scale, offset)`,
//! so every pinch is detected and rewritten exactly. By Britton's lemma a
//! reduced word with at least one stable letter — or none and a
//! nontrivial base element — denotes a nontrivial element of the path
//! group `⟨a,b,c | Sq(a,b), Sq(b,c)⟩`.

use std::fmt;

use super::affine::AffineDyadicMap;
use super::word::GroupWord;
use super::GroupsError;

/// `head · c^{ε₁} g₁ · c^{ε₂} g₂ · … · c^{ε_r} g_r`, all `gᵢ` in the
/// affine base group, applied rightmost first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HNNWord {
    pub head: AffineDyadicMap,
    pub tail: Vec<(i8, AffineDyadicMap)>,
}

impl HNNWord {
    pub fn base(g: AffineDyadicMap) -> Self {
        HNNWord { head: g, tail: Vec::new() }
    }

    pub fn identity() -> Self {
        Self::base(AffineDyadicMap::identity())
    }

    /// Appends `c^ε · g` on the right.
    pub fn push(mut self, eps: i8, g: AffineDyadicMap) -> Self {
        debug_assert!(eps == 1 || eps == -1);
        self.tail.push((eps, g));
        self
    }

    pub fn stable_letters(&self) -> usize {
        self.tail.len()
    }

    /// Builds an HNN word from a word over `a`, `b`, `c`.
    pub fn from_group_word(w: &GroupWord) -> Result<HNNWord, GroupsError> {
        let a = AffineDyadicMap::translation(num::One::one());
        let b = AffineDyadicMap::scaling(-1);
        let mut out = HNNWord::identity();
        for l in w.letters() {
            match l.gen.name() {
                "c" => out.tail.push((l.exp, AffineDyadicMap::identity())),
                "a" | "b" => {
                    let base = if l.gen.name() == "a" { &a } else { &b };
                    let m = if l.exp < 0 { base.inverse() } else { base.clone() };
                    match out.tail.last_mut() {
                        Some((_, g)) => *g = g.compose(&m),
                        None => out.head = out.head.compose(&m),
                    }
                }
                other => return Err(GroupsError::UnknownGenerator(other.to_string())),
            }
        }
        Ok(out)
    }
}

impl fmt::Display for HNNWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.head)?;
        for (eps, g) in &self.tail {
            let c = if *eps < 0 { "c⁻¹" } else { "c" };
            write!(f, " {c} ({g})")?;
        }
        Ok(())
    }
}

/// A Britton-reduced word plus the number of pinch rewrites applied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrittonForm {
    pub word: HNNWord,
    pub pinches: usize,
}

impl BrittonForm {
    /// Britton's lemma: any reduced form with a stable letter, or a
    /// nontrivial base element, is a nontrivial group element.
    pub fn is_nontrivial(&self) -> bool {
        !self.word.tail.is_empty() || !self.word.head.is_identity()
    }
}

fn in_subgroup_a(g: &AffineDyadicMap) -> bool {
    num::Zero::is_zero(&g.offset)
}

fn in_subgroup_b(g: &AffineDyadicMap) -> bool {
    in_subgroup_a(g) && g.scale % 2 == 0
}

/// `φ : A → B`, `b ↦ b²`; doubles the scaling exponent.
fn phi(g: &AffineDyadicMap) -> Result<AffineDyadicMap, GroupsError> {
    if !in_subgroup_a(g) {
        return Err(GroupsError::OracleDisagreement(format!(
            "φ applied outside A: {g}"
        )));
    }
    let out = AffineDyadicMap::scaling(2 * g.scale);
    // the defining identity in the base: φ(b^j) = b^{2j} = (b^j)²
    if out != g.compose(g) {
        return Err(GroupsError::OracleDisagreement(format!(
            "φ({g}) = {out} is not the square of its argument"
        )));
    }
    Ok(out)
}

/// `φ⁻¹ : B → A`; halves the (even) scaling exponent.
fn phi_inv(g: &AffineDyadicMap) -> Result<AffineDyadicMap, GroupsError> {
    if !in_subgroup_b(g) {
        return Err(GroupsError::OracleDisagreement(format!(
            "φ⁻¹ applied outside B: {g}"
        )));
    }
    let out = AffineDyadicMap::scaling(g.scale / 2);
    if out.compose(&out) != *g {
        return Err(GroupsError::OracleDisagreement(format!(
            "φ⁻¹({g}) = {out} does not square back"
        )));
    }
    Ok(out)
}

/// Repeatedly rewrites pinches `c⁻¹·g·c ↦ φ(g)` (g ∈ A) and
/// `c·g·c⁻¹ ↦ φ⁻¹(g)` (g ∈ B) until the word is Britton-reduced.
pub fn britton_reduce(w: &HNNWord) -> Result<BrittonForm, GroupsError> {
    let mut word = w.clone();
    let mut pinches = 0usize;
    loop {
        let pinch = (0..word.tail.len().saturating_sub(1)).find(|&i| {
            let (e1, g) = &word.tail[i];
            let e2 = word.tail[i + 1].0;
            (*e1 == -1 && e2 == 1 && in_subgroup_a(g))
                || (*e1 == 1 && e2 == -1 && in_subgroup_b(g))
        });
        let Some(i) = pinch else {
            return Ok(BrittonForm { word, pinches });
        };
        let (e1, g) = word.tail[i].clone();
        let (_, after) = word.tail[i + 1].clone();
        let image = if e1 == -1 { phi(&g)? } else { phi_inv(&g)? };
        let merged = image.compose(&after);
        word.tail.drain(i..=i + 1);
        match i.checked_sub(1) {
            Some(prev) => {
                let g_prev = word.tail[prev].1.compose(&merged);
                word.tail[prev].1 = g_prev;
            }
            None => word.head = word.head.compose(&merged),
        }
        pinches += 1;
    }
}
