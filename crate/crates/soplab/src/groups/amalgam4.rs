//! The four-cycle free-amalgamation construction.
//!
//! From one adjacency type — a presentation of a pair of generator tuples
//! with a shared constant part `H⁻` — we build the four edge groups
//! `H_{0,1}, H_{1,2}, H_{2,3}, H_{3,0}` (the last by relabeling), the
//! amalgam data `K₀ = H₀ *_{H⁻} H₂`, `K₁ = H_{0,1} *_{⟨ā₁,H⁻⟩} H_{1,2}`,
//! `K₂ = H_{2,3} *_{⟨ā₃,H⁻⟩} H_{3,0}`, and the flattened presentation of
//! `K = K₁ *_{K₀} K₂`.

use crate::report::{CheckReport, Status};

use super::presentation::{sq_relator, triangle_preset, Presentation};
use super::todd_coxeter::{todd_coxeter, verify_table, word_columns, EnumerationStatus};
use super::word::{free_reduce, GenSymbol, GroupWord};
use super::GroupsError;

/// A presentation of a pair of tuples `(ā₀, ā₁)` with a designated
/// constant part: the template from which every edge group is copied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyType {
    pub pair: Presentation,
    pub left: Vec<GenSymbol>,
    pub right: Vec<GenSymbol>,
    pub shared: Vec<GenSymbol>,
}

impl AdjacencyType {
    pub fn new(
        pair: Presentation,
        left: Vec<GenSymbol>,
        right: Vec<GenSymbol>,
        shared: Vec<GenSymbol>,
    ) -> Result<Self, GroupsError> {
        let mut declared: Vec<&GenSymbol> =
            left.iter().chain(right.iter()).chain(shared.iter()).collect();
        declared.sort();
        let before = declared.len();
        declared.dedup();
        if declared.len() != before {
            return Err(GroupsError::Construction(
                "tuple and shared generators overlap".into(),
            ));
        }
        let mut expected: Vec<&GenSymbol> = pair.generators().iter().collect();
        expected.sort();
        if declared != expected {
            return Err(GroupsError::Construction(
                "tuples and shared part must cover the pair's generators exactly".into(),
            ));
        }
        Ok(AdjacencyType { pair, left, right, shared })
    }

    /// The squaring-conjugation pair `⟨x, y | Sq(x, y)⟩`, trivial `H⁻`.
    pub fn sq_pair() -> Self {
        let x = GenSymbol::new("x");
        let y = GenSymbol::new("y");
        let pair =
            Presentation::new(vec![x.clone(), y.clone()], vec![sq_relator(&x, &y)]).unwrap();
        AdjacencyType {
            pair,
            left: vec![x],
            right: vec![y],
            shared: vec![],
        }
    }

    /// The relator-free pair `⟨x, y⟩`, trivial `H⁻`.
    pub fn free_pair() -> Self {
        let x = GenSymbol::new("x");
        let y = GenSymbol::new("y");
        let pair = Presentation::new(vec![x.clone(), y.clone()], vec![]).unwrap();
        AdjacencyType {
            pair,
            left: vec![x],
            right: vec![y],
            shared: vec![],
        }
    }

    /// Squaring pair with a central shared generator `z`.
    pub fn central_pair() -> Self {
        let x = GenSymbol::new("x");
        let y = GenSymbol::new("y");
        let z = GenSymbol::new("z");
        let commute = |g: &GenSymbol| {
            GroupWord::gen(&z)
                .concat(&GroupWord::gen(g))
                .concat(&GroupWord::power(&z, -1))
                .concat(&GroupWord::power(g, -1))
        };
        let pair = Presentation::new(
            vec![x.clone(), y.clone(), z.clone()],
            vec![sq_relator(&x, &y), commute(&x), commute(&y)],
        )
        .unwrap();
        AdjacencyType {
            pair,
            left: vec![x],
            right: vec![y],
            shared: vec![z],
        }
    }

    /// Name of tuple generator `t` in the vertex-`i` copy.
    fn vertex_gen(&self, i: usize, t: usize) -> GenSymbol {
        if self.left.len() == 1 {
            GenSymbol::new(format!("a{i}"))
        } else {
            GenSymbol::new(format!("a{i}_{t}"))
        }
    }

    fn vertex_tuple(&self, i: usize) -> Vec<GenSymbol> {
        (0..self.left.len()).map(|t| self.vertex_gen(i, t)).collect()
    }

    /// The pair relators with `ā₀ ↦` vertex `i`, `ā₁ ↦` vertex `j`.
    fn edge_relators(&self, i: usize, j: usize) -> Vec<GroupWord> {
        let map = |g: &GenSymbol| {
            if let Some(t) = self.left.iter().position(|l| l == g) {
                self.vertex_gen(i, t)
            } else if let Some(t) = self.right.iter().position(|r| r == g) {
                self.vertex_gen(j, t)
            } else {
                g.clone()
            }
        };
        self.pair.relators().iter().map(|r| r.rename(map)).collect()
    }

    /// Relators mentioning only one side (plus `H⁻`): the vertex-group
    /// presentation template, instantiated at vertex `i`.
    fn vertex_relators(&self, i: usize) -> Vec<GroupWord> {
        let left_only = |r: &GroupWord| {
            r.letters()
                .iter()
                .all(|l| self.left.contains(&l.gen) || self.shared.contains(&l.gen))
        };
        self.pair
            .relators()
            .iter()
            .filter(|r| left_only(r))
            .map(|r| {
                r.rename(|g| match self.left.iter().position(|l| l == g) {
                    Some(t) => self.vertex_gen(i, t),
                    None => g.clone(),
                })
            })
            .collect()
    }
}

/// Factor presentations and identification maps of the amalgam
/// `K = K₁ *_{K₀} K₂`.
#[derive(Debug, Clone)]
pub struct AmalgamPresentation {
    /// `H_{0,1}, H_{1,2}, H_{2,3}, H_{3,0}` in edge order.
    pub edges: [Presentation; 4],
    pub k0: Presentation,
    pub k1: Presentation,
    pub k2: Presentation,
    /// Each `K₀` generator as a word of `K₁` and of `K₂`.
    pub identifications: Vec<(GenSymbol, GroupWord, GroupWord)>,
}

fn dedup_words(words: Vec<GroupWord>) -> Vec<GroupWord> {
    let mut out: Vec<GroupWord> = Vec::new();
    for w in words {
        if !out.contains(&w) {
            out.push(w);
        }
    }
    out
}

fn presentation(gens: Vec<GenSymbol>, relators: Vec<GroupWord>) -> Result<Presentation, GroupsError> {
    Presentation::new(gens, dedup_words(relators))
}

/// Builds the four edge groups, the amalgam data, and the flattened
/// presentation of `K`.
///
/// With `relabel`, the closing edge is the relabeled `H_{3,0}` (vertex 3
/// in the first role), closing the cycle symmetrically; without it the
/// closing edge keeps the input orientation `(0, 3)`.
pub fn build_free_amalgam(
    adj: &AdjacencyType,
    relabel: bool,
) -> Result<(AmalgamPresentation, Presentation), GroupsError> {
    let tuples: Vec<Vec<GenSymbol>> = (0..4).map(|i| adj.vertex_tuple(i)).collect();
    {
        let mut all: Vec<&GenSymbol> = tuples.iter().flatten().chain(adj.shared.iter()).collect();
        all.sort();
        let before = all.len();
        all.dedup();
        if all.len() != before {
            return Err(GroupsError::Construction(
                "vertex copies must receive distinct generator names".into(),
            ));
        }
    }
    let closing = if relabel { (3, 0) } else { (0, 3) };
    let oriented = [(0, 1), (1, 2), (2, 3), closing];
    let edge_gens = |i: usize, j: usize| -> Vec<GenSymbol> {
        let (lo, hi) = if i < j { (i, j) } else { (j, i) };
        tuples[lo]
            .iter()
            .chain(tuples[hi].iter())
            .chain(adj.shared.iter())
            .cloned()
            .collect()
    };
    let mut edges = Vec::with_capacity(4);
    for (i, j) in oriented {
        edges.push(presentation(edge_gens(i, j), adj.edge_relators(i, j))?);
    }
    let edges: [Presentation; 4] = edges.try_into().expect("exactly four edges");

    let factor = |a: &Presentation, b: &Presentation, verts: [usize; 3]| {
        let gens: Vec<GenSymbol> = verts
            .iter()
            .flat_map(|&v| tuples[v].clone())
            .chain(adj.shared.iter().cloned())
            .collect();
        let relators: Vec<GroupWord> = a
            .relators()
            .iter()
            .chain(b.relators().iter())
            .cloned()
            .collect();
        presentation(gens, relators)
    };
    let k1 = factor(&edges[0], &edges[1], [0, 1, 2])?;
    let k2 = factor(&edges[2], &edges[3], [2, 3, 0])?;

    // K₀ = H₀ *_{H⁻} H₂: the free amalgam of the two vertex groups the
    // factors share — the subgroup of K along which K₁ and K₂ intersect.
    let k0_gens: Vec<GenSymbol> = tuples[0]
        .iter()
        .chain(tuples[2].iter())
        .chain(adj.shared.iter())
        .cloned()
        .collect();
    let k0_relators: Vec<GroupWord> = adj
        .vertex_relators(0)
        .into_iter()
        .chain(adj.vertex_relators(2))
        .collect();
    let k0 = presentation(k0_gens, k0_relators)?;

    let identifications: Vec<(GenSymbol, GroupWord, GroupWord)> = k0
        .generators()
        .iter()
        .map(|g| (g.clone(), GroupWord::gen(g), GroupWord::gen(g)))
        .collect();
    for (g, w1, w2) in &identifications {
        let in_k1 = k1.generators().contains(g);
        let in_k2 = k2.generators().contains(g);
        if !in_k1 || !in_k2 || w1.len() != 1 || w2.len() != 1 {
            return Err(GroupsError::Construction(format!(
                "identification of {g} does not land on declared factor generators"
            )));
        }
    }

    let flat_gens: Vec<GenSymbol> = tuples
        .iter()
        .flatten()
        .chain(adj.shared.iter())
        .cloned()
        .collect();
    let flat_relators: Vec<GroupWord> = k1
        .relators()
        .iter()
        .chain(k2.relators().iter())
        .cloned()
        .collect();
    let flattened = presentation(flat_gens, flat_relators)?;

    Ok((
        AmalgamPresentation {
            edges,
            k0,
            k1,
            k2,
            identifications,
        },
        flattened,
    ))
}

/// Is `w` one of the relators, up to free reduction, inversion, and
/// cyclic rotation?
fn is_literal_relator(w: &GroupWord, relators: &[GroupWord]) -> bool {
    let w = free_reduce(w);
    if w.is_identity() {
        return true;
    }
    relators.iter().any(|r| {
        for cand in [r.clone(), r.inverse()] {
            let letters = cand.letters();
            for rot in 0..letters.len() {
                let rotated = GroupWord::from_letters(
                    letters[rot..].iter().chain(letters[..rot].iter()).cloned(),
                );
                if rotated == w {
                    return true;
                }
            }
        }
        false
    })
}

/// Verifies the quantifier-free diagram fragment of the type-equality
/// claim: every listed vertex pair satisfies the adjacency relators in
/// `K`, either literally or by tracing in a closed coset table.
pub fn adjacency_type_check(
    k: &Presentation,
    adj: &AdjacencyType,
    pairs: &[(usize, usize)],
) -> Result<CheckReport, GroupsError> {
    let mut unresolved = Vec::new();
    let mut table = None;
    for &(i, j) in pairs {
        for relator in adj.edge_relators(i, j) {
            if is_literal_relator(&relator, k.relators()) {
                continue;
            }
            // fall back to a bounded enumeration of K
            let t = match &table {
                Some(t) => t,
                None => table.insert(todd_coxeter(k, &[], 2000)?),
            };
            match t.status {
                EnumerationStatus::Closed(n) => {
                    let cols = word_columns(k, &relator)?;
                    for c in 0..n {
                        if t.trace(c, &cols) != Some(c) {
                            return Ok(CheckReport::fail(
                                "groups.clm_grptp",
                                format!("relator {relator} fails at coset {c} for pair ({i},{j})"),
                            ));
                        }
                    }
                }
                EnumerationStatus::Overflow(_) => {
                    unresolved.push(format!("({i},{j}): {relator}"));
                }
            }
        }
    }
    let mut report = if unresolved.is_empty() {
        CheckReport::pass("groups.clm_grptp")
    } else {
        let mut r = CheckReport::new("groups.clm_grptp", Status::Inconclusive);
        r.witness = Some(format!("unresolved relators: {}", unresolved.join("; ")));
        r
    };
    report = report.with_value("pairs", pairs.len());
    Ok(report)
}

/// Certifies that a squaring-conjugation triangle collapses: the triangle
/// preset enumerates to the trivial group, so any φ-triangle forces
/// `x = y = z = e`, contradicting `x ≠ y`.
pub fn triangle_refutation_check(max_cosets: usize) -> Result<CheckReport, GroupsError> {
    let pres = triangle_preset();
    let table = todd_coxeter(&pres, &[], max_cosets)?;
    let report = match table.status {
        EnumerationStatus::Closed(1) => {
            verify_table(&pres, &[], &table)?;
            CheckReport::pass("groups.triangle").with_value("order", 1)
        }
        EnumerationStatus::Closed(n) => CheckReport::fail(
            "groups.triangle",
            format!("triangle preset closed with order {n}, expected 1"),
        ),
        EnumerationStatus::Overflow(limit) => {
            let mut r = CheckReport::new("groups.triangle", Status::Inconclusive);
            r.witness = Some(format!("enumeration overflowed at {limit} cosets"));
            r
        }
    };
    Ok(report.with_value("reading", "x^y = x^2 with g^h = h^-1 g h"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::presentation::higman_preset;

    #[test]
    fn sq_pair_flattens_to_higman() {
        let (amalgam, k) = build_free_amalgam(&AdjacencyType::sq_pair(), true).unwrap();
        assert_eq!(k, higman_preset());
        assert_eq!(amalgam.k0.relators().len(), 0);
        assert_eq!(amalgam.k1.relators().len(), 2);
        assert_eq!(amalgam.k2.relators().len(), 2);
        assert_eq!(amalgam.identifications.len(), 2);
    }

    #[test]
    fn without_relabel_the_closing_edge_flips() {
        let (_, k) = build_free_amalgam(&AdjacencyType::sq_pair(), false).unwrap();
        assert_ne!(k, higman_preset());
        let a0 = GenSymbol::new("a0");
        let a3 = GenSymbol::new("a3");
        assert!(k.relators().contains(&sq_relator(&a0, &a3)));
    }

    #[test]
    fn free_pair_flattens_to_free_rank_four() {
        let (amalgam, k) = build_free_amalgam(&AdjacencyType::free_pair(), true).unwrap();
        assert_eq!(k.generators().len(), 4);
        assert!(k.relators().is_empty());
        assert!(amalgam.k0.relators().is_empty());
    }

    #[test]
    fn central_shared_generator_is_identified_once() {
        let (amalgam, k) = build_free_amalgam(&AdjacencyType::central_pair(), true).unwrap();
        let z = GenSymbol::new("z");
        assert_eq!(
            k.generators().iter().filter(|g| **g == z).count(),
            1,
            "z appears once in the flattened generators"
        );
        assert!(amalgam.identifications.iter().any(|(g, _, _)| *g == z));
        // commutation relators for z appear for every vertex copy
        for i in 0..4 {
            let ai = GenSymbol::new(format!("a{i}"));
            let comm = GroupWord::gen(&z)
                .concat(&GroupWord::gen(&ai))
                .concat(&GroupWord::power(&z, -1))
                .concat(&GroupWord::power(&ai, -1));
            assert!(
                k.relators().iter().any(|r| is_literal_relator(r, &[comm.clone()])),
                "missing z-commutation for a{i}"
            );
        }
    }

    #[test]
    fn flattening_is_exactly_the_union_of_factor_relators() {
        let (amalgam, k) = build_free_amalgam(&AdjacencyType::sq_pair(), true).unwrap();
        for r in amalgam.k1.relators().iter().chain(amalgam.k2.relators()) {
            assert!(k.relators().contains(r));
        }
        assert_eq!(
            k.relators().len(),
            amalgam.k1.relators().len() + amalgam.k2.relators().len()
        );
    }

    #[test]
    fn adjacency_check_passes_on_higman() {
        let adj = AdjacencyType::sq_pair();
        let (_, k) = build_free_amalgam(&adj, true).unwrap();
        let report =
            adjacency_type_check(&k, &adj, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(report.is_pass(), "{report:?}");
    }

    #[test]
    fn adjacency_check_is_vacuous_for_free_pair() {
        let adj = AdjacencyType::free_pair();
        let (_, k) = build_free_amalgam(&adj, true).unwrap();
        let report = adjacency_type_check(&k, &adj, &[(0, 1), (3, 0)]).unwrap();
        assert!(report.is_pass());
    }

    #[test]
    fn triangle_refutation_closes_trivially() {
        let report = triangle_refutation_check(1_000_000).unwrap();
        assert!(report.is_pass(), "{report:?}");
    }
}
