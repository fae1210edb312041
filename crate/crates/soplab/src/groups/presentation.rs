use std::collections::BTreeSet;
use std::fmt;

use super::word::{free_reduce, GenSymbol, GroupWord};
use super::GroupsError;

/// A finite group presentation `⟨ generators | relators ⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<GenSymbol>,
    relators: Vec<GroupWord>,
}

impl Presentation {
    pub fn new(
        generators: Vec<GenSymbol>,
        relators: Vec<GroupWord>,
    ) -> Result<Self, GroupsError> {
        let declared: BTreeSet<&GenSymbol> = generators.iter().collect();
        if declared.len() != generators.len() {
            return Err(GroupsError::Parse("duplicate generator".into()));
        }
        let relators: Vec<GroupWord> = relators.iter().map(free_reduce).collect();
        for r in &relators {
            for l in r.letters() {
                if !declared.contains(&l.gen) {
                    return Err(GroupsError::UnknownGenerator(l.gen.name().to_string()));
                }
            }
        }
        Ok(Presentation { generators, relators })
    }

    pub fn generators(&self) -> &[GenSymbol] {
        &self.generators
    }

    pub fn relators(&self) -> &[GroupWord] {
        &self.relators
    }

    /// Parses the text format: the first non-empty line lists the
    /// generators, each following non-empty line is one relator in
    /// letter-exponent notation.
    pub fn parse(text: &str) -> Result<Presentation, GroupsError> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| GroupsError::Parse("empty presentation".into()))?;
        let generators: Vec<GenSymbol> =
            header.split_whitespace().map(GenSymbol::new).collect();
        let relators = lines.map(GroupWord::parse).collect::<Result<_, _>>()?;
        Presentation::new(generators, relators)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{g}")?;
        }
        for r in &self.relators {
            write!(f, "\n{r}")?;
        }
        Ok(())
    }
}

/// The squaring-conjugation relator `Sq(x, y) = y⁻¹·x·y·x⁻²`, i.e. the
/// relation `x^y = x²` under the convention `g^h = h⁻¹gh`.
pub fn sq_relator(x: &GenSymbol, y: &GenSymbol) -> GroupWord {
    GroupWord::power(y, -1)
        .concat(&GroupWord::gen(x))
        .concat(&GroupWord::gen(y))
        .concat(&GroupWord::power(x, -2))
}

/// Cycle presentation `⟨x₀…x_{k−1} | Sq(x_i, x_{i+1 mod k})⟩` over the
/// given generator names.
fn cycle(names: &[&str]) -> Presentation {
    let gens: Vec<GenSymbol> = names.iter().map(|n| GenSymbol::new(*n)).collect();
    let relators = (0..gens.len())
        .map(|i| sq_relator(&gens[i], &gens[(i + 1) % gens.len()]))
        .collect();
    Presentation::new(gens, relators).expect("cycle presets are well formed")
}

/// Squaring-conjugation 3-cycle `⟨a,b,c | Sq(a,b), Sq(b,c), Sq(c,a)⟩`.
pub fn triangle_preset() -> Presentation {
    cycle(&["a", "b", "c"])
}

/// 2-cycle `⟨a,b | Sq(a,b), Sq(b,a)⟩`.
pub fn two_cycle_preset() -> Presentation {
    cycle(&["a", "b"])
}

/// Higman's 4-cycle `⟨a0,a1,a2,a3 | Sq(a0,a1), Sq(a1,a2), Sq(a2,a3),
/// Sq(a3,a0)⟩`.
pub fn higman_preset() -> Presentation {
    cycle(&["a0", "a1", "a2", "a3"])
}

/// Transitive tournament `⟨x0…x_{k−1} | Sq(x_i, x_j) for i<j⟩`: every
/// earlier generator is squared by every later one.
pub fn chain_preset(k: usize) -> Result<Presentation, GroupsError> {
    if k < 2 {
        return Err(GroupsError::Parse(format!(
            "chain presets need at least 2 generators, got {k}"
        )));
    }
    let gens: Vec<GenSymbol> = (0..k).map(|i| GenSymbol::new(format!("x{i}"))).collect();
    let mut relators = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            relators.push(sq_relator(&gens[i], &gens[j]));
        }
    }
    Presentation::new(gens, relators)
}

/// Looks up a preset by name: `triangle`, `two-cycle`, `higman`, or
/// `chain-k` with `k ≥ 2`.
pub fn preset(name: &str) -> Result<Presentation, GroupsError> {
    match name {
        "triangle" => Ok(triangle_preset()),
        "two-cycle" => Ok(two_cycle_preset()),
        "higman" => Ok(higman_preset()),
        _ => {
            if let Some(k) = name.strip_prefix("chain-") {
                let k: usize = k
                    .parse()
                    .map_err(|_| GroupsError::Parse(format!("bad chain preset '{name}'")))?;
                chain_preset(k)
            } else {
                Err(GroupsError::Parse(format!("unknown preset '{name}'")))
            }
        }
    }
}
