//! Deterministic coset enumeration.
//!
//! The default strategy is HLT (relator scan with fill) with one
//! lookahead pass when the coset limit is hit; a deduction-driven
//! full-rescan strategy is provided as an independent oracle. Cosets are
//! numbered lowest-unused, so runs are reproducible bit for bit.

use super::presentation::Presentation;
use super::word::GroupWord;
use super::GroupsError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumerationStatus {
    /// The table closed; the payload is the coset count (the subgroup
    /// index, so the group order when the subgroup is trivial).
    Closed(usize),
    /// The enumeration gave up at the configured coset limit.
    Overflow(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Scan-and-fill per relator, with a lookahead pass on overflow.
    Hlt,
    /// Deduction-first: propagate all relator scans to a fixpoint, then
    /// define the first undefined entry. Slower; used as a second oracle.
    FullScan,
}

/// A (possibly partial) coset table over `2·|generators|` columns:
/// column `2i` is generator `i`, column `2i+1` its inverse.
#[derive(Debug, Clone)]
pub struct CosetTable {
    pub status: EnumerationStatus,
    generators: usize,
    rows: Vec<Vec<Option<usize>>>,
}

impl CosetTable {
    pub fn num_cosets(&self) -> usize {
        self.rows.len()
    }

    pub fn num_generators(&self) -> usize {
        self.generators
    }

    pub fn entry(&self, coset: usize, column: usize) -> Option<usize> {
        self.rows[coset][column]
    }

    /// Applies a word to a coset; `None` if the trace runs off the table.
    pub fn trace(&self, start: usize, cols: &[usize]) -> Option<usize> {
        let mut c = start;
        for &col in cols {
            c = self.rows[c][col]?;
        }
        Some(c)
    }
}

/// Converts a word to column indices for the presentation's generators.
pub fn word_columns(pres: &Presentation, w: &GroupWord) -> Result<Vec<usize>, GroupsError> {
    w.letters()
        .iter()
        .map(|l| {
            let gi = pres
                .generators()
                .iter()
                .position(|g| *g == l.gen)
                .ok_or_else(|| GroupsError::UnknownGenerator(l.gen.name().to_string()))?;
            Ok(2 * gi + usize::from(l.exp < 0))
        })
        .collect()
}

struct Enumerator {
    ncols: usize,
    rows: Vec<Vec<Option<usize>>>,
    parent: Vec<usize>,
    live: usize,
    limit: usize,
}

impl Enumerator {
    fn new(ncols: usize, limit: usize) -> Self {
        Enumerator {
            ncols,
            rows: vec![vec![None; ncols]],
            parent: vec![0],
            live: 1,
            limit,
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn get(&mut self, c: usize, col: usize) -> Option<usize> {
        let raw = self.rows[c][col]?;
        let rep = self.find(raw);
        self.rows[c][col] = Some(rep);
        Some(rep)
    }

    fn alive(&mut self, c: usize) -> bool {
        self.find(c) == c
    }

    fn define(&mut self, c: usize, col: usize) -> usize {
        let new = self.rows.len();
        self.rows.push(vec![None; self.ncols]);
        self.parent.push(new);
        self.live += 1;
        self.rows[c][col] = Some(new);
        self.rows[new][col ^ 1] = Some(c);
        new
    }

    fn link(&mut self, a: usize, col: usize, b: usize) {
        self.rows[a][col] = Some(b);
        self.rows[b][col ^ 1] = Some(a);
    }

    /// Merges coset classes, propagating induced coincidences.
    fn coincide(&mut self, a: usize, b: usize) {
        let mut queue = vec![(a, b)];
        while let Some((a, b)) = queue.pop() {
            let a = self.find(a);
            let b = self.find(b);
            if a == b {
                continue;
            }
            let (keep, die) = if a < b { (a, b) } else { (b, a) };
            self.parent[die] = keep;
            self.live -= 1;
            for col in 0..self.ncols {
                if let Some(d) = self.rows[die][col].take() {
                    let d = self.find(d);
                    match self.get(keep, col) {
                        Some(e) if e != d => queue.push((d, e)),
                        Some(_) => {}
                        None => {
                            // adopt the link; the reverse entry of d may
                            // still point at `die` or at an older class
                            if let Some(x) = self.get(d, col ^ 1) {
                                if x != keep && x != die {
                                    queue.push((x, keep));
                                }
                            }
                            self.link(keep, col, d);
                        }
                    }
                }
            }
        }
    }

    /// Scans a relator (or subgroup generator) at a coset. With `fill`,
    /// missing cosets are defined; without, only the closing deduction or
    /// coincidence is applied. Returns false when a needed definition
    /// would exceed the limit.
    fn scan(&mut self, c: usize, cols: &[usize], fill: bool) -> bool {
        let mut f = self.find(c);
        let mut i = 0usize;
        let mut b = f;
        let mut j = cols.len();
        loop {
            while i < j {
                match self.get(f, cols[i]) {
                    Some(next) => {
                        f = next;
                        i += 1;
                    }
                    None => break,
                }
            }
            if i == j {
                if f != b {
                    self.coincide(f, b);
                }
                return true;
            }
            while j > i {
                match self.get(b, cols[j - 1] ^ 1) {
                    Some(prev) => {
                        b = prev;
                        j -= 1;
                    }
                    None => break,
                }
            }
            if i == j {
                if f != b {
                    self.coincide(f, b);
                }
                return true;
            }
            if j == i + 1 {
                self.link(f, cols[i], b);
                return true;
            }
            if !fill {
                return true;
            }
            if self.rows.len() >= self.limit {
                return false;
            }
            f = self.define(f, cols[i]);
            i += 1;
        }
    }

    /// One deduction-only pass: every relator at every live coset, plus
    /// the subgroup generators at coset 0. Returns whether anything
    /// changed.
    fn rescan_pass(&mut self, relators: &[Vec<usize>], subgens: &[Vec<usize>]) -> bool {
        let before: Vec<Vec<Option<usize>>> = self.rows.clone();
        let live_before = self.live;
        for w in subgens {
            let zero = self.find(0);
            self.scan(zero, w, false);
        }
        for c in 0..self.rows.len() {
            if !self.alive(c) {
                continue;
            }
            for w in relators {
                let c = self.find(c);
                self.scan(c, w, false);
            }
        }
        self.live != live_before || before != self.rows
    }

    fn compact(&mut self) -> CosetTable {
        // renumber live cosets in increasing order
        let mut remap = vec![usize::MAX; self.rows.len()];
        let mut order = Vec::new();
        for c in 0..self.rows.len() {
            if self.alive(c) {
                remap[c] = order.len();
                order.push(c);
            }
        }
        let mut rows = Vec::with_capacity(order.len());
        for &c in &order {
            let row: Vec<Option<usize>> = (0..self.ncols)
                .map(|col| self.get(c, col).map(|d| remap[d]))
                .collect();
            rows.push(row);
        }
        CosetTable {
            status: EnumerationStatus::Closed(rows.len()),
            generators: self.ncols / 2,
            rows,
        }
    }

    fn is_complete(&mut self) -> bool {
        for c in 0..self.rows.len() {
            if !self.alive(c) {
                continue;
            }
            if self.rows[c].iter().any(Option::is_none) {
                return false;
            }
        }
        true
    }
}

/// Enumerates the cosets of the subgroup generated by `subgroup_gens` in
/// the presented group, up to `max_cosets` simultaneously live cosets.
pub fn todd_coxeter(
    pres: &Presentation,
    subgroup_gens: &[GroupWord],
    max_cosets: usize,
) -> Result<CosetTable, GroupsError> {
    todd_coxeter_with(pres, subgroup_gens, max_cosets, Strategy::Hlt)
}

pub fn todd_coxeter_with(
    pres: &Presentation,
    subgroup_gens: &[GroupWord],
    max_cosets: usize,
    strategy: Strategy,
) -> Result<CosetTable, GroupsError> {
    if max_cosets < 1 {
        return Err(GroupsError::Parse("max_cosets must be at least 1".into()));
    }
    let relators: Vec<Vec<usize>> = pres
        .relators()
        .iter()
        .map(|r| word_columns(pres, r))
        .collect::<Result<_, _>>()?;
    let subgens: Vec<Vec<usize>> = subgroup_gens
        .iter()
        .map(|w| word_columns(pres, w))
        .collect::<Result<_, _>>()?;
    let ncols = 2 * pres.generators().len();
    // hard cap on the total row count, so dead rows can't grow unboundedly
    let row_cap = max_cosets.saturating_mul(8).max(max_cosets + 64);
    let mut e = Enumerator::new(ncols, row_cap);

    match strategy {
        Strategy::Hlt => run_hlt(&mut e, &relators, &subgens, max_cosets),
        Strategy::FullScan => run_full_scan(&mut e, &relators, &subgens, max_cosets),
    }
    .map(|status| match status {
        EnumerationStatus::Closed(_) => e.compact(),
        overflow => CosetTable {
            status: overflow,
            generators: ncols / 2,
            rows: Vec::new(),
        },
    })
}

fn run_hlt(
    e: &mut Enumerator,
    relators: &[Vec<usize>],
    subgens: &[Vec<usize>],
    max_cosets: usize,
) -> Result<EnumerationStatus, GroupsError> {
    for w in subgens {
        if !e.scan(0, w, true) {
            return Ok(EnumerationStatus::Overflow(max_cosets));
        }
    }
    let mut c = 0usize;
    while c < e.rows.len() {
        if !e.alive(c) {
            c += 1;
            continue;
        }
        for r in relators {
            if !e.alive(c) {
                break;
            }
            let rep = e.find(c);
            if e.scan(rep, r, true) {
                continue;
            }
            // lookahead: squeeze out coincidences without defining
            while e.rescan_pass(relators, subgens) {}
            let rep = e.find(c);
            if e.live >= max_cosets || !e.scan(rep, r, true) {
                return Ok(EnumerationStatus::Overflow(max_cosets));
            }
        }
        if e.live > max_cosets {
            while e.rescan_pass(relators, subgens) {}
            if e.live > max_cosets {
                return Ok(EnumerationStatus::Overflow(max_cosets));
            }
        }
        c += 1;
    }
    Ok(EnumerationStatus::Closed(e.live))
}

fn run_full_scan(
    e: &mut Enumerator,
    relators: &[Vec<usize>],
    subgens: &[Vec<usize>],
    max_cosets: usize,
) -> Result<EnumerationStatus, GroupsError> {
    loop {
        while e.rescan_pass(relators, subgens) {}
        if e.is_complete() {
            // a complete fixpoint still needs every word scan closed,
            // which rescan_pass has already confirmed
            return Ok(EnumerationStatus::Closed(e.live));
        }
        if e.live >= max_cosets || e.rows.len() >= e.limit {
            return Ok(EnumerationStatus::Overflow(max_cosets));
        }
        // define the first missing entry (deterministic)
        let target = (0..e.rows.len()).find_map(|c| {
            if e.alive(c) {
                e.rows[c]
                    .iter()
                    .position(Option::is_none)
                    .map(|col| (c, col))
            } else {
                None
            }
        });
        match target {
            Some((c, col)) => {
                e.define(c, col);
            }
            None => unreachable!("incomplete table has a missing entry"),
        }
    }
}

/// Independent soundness check of a closed table: completeness, inverse
/// consistency, relator closure at every coset, subgroup generators
/// fixing coset 0, and transitivity from coset 0.
pub fn verify_table(
    pres: &Presentation,
    subgroup_gens: &[GroupWord],
    table: &CosetTable,
) -> Result<(), GroupsError> {
    let n = match table.status {
        EnumerationStatus::Closed(n) => n,
        EnumerationStatus::Overflow(limit) => {
            return Err(GroupsError::TableUnsound(format!(
                "cannot verify an overflowed table (limit {limit})"
            )))
        }
    };
    if table.num_cosets() != n {
        return Err(GroupsError::TableUnsound(
            "coset count disagrees with Closed payload".into(),
        ));
    }
    let ncols = 2 * pres.generators().len();
    for c in 0..n {
        for col in 0..ncols {
            match table.entry(c, col) {
                None => {
                    return Err(GroupsError::TableUnsound(format!(
                        "entry ({c}, {col}) is undefined in a closed table"
                    )))
                }
                Some(d) if d >= n => {
                    return Err(GroupsError::TableUnsound(format!(
                        "entry ({c}, {col}) points outside the table"
                    )))
                }
                Some(d) => {
                    if table.entry(d, col ^ 1) != Some(c) {
                        return Err(GroupsError::TableUnsound(format!(
                            "inverse link broken at ({c}, {col})"
                        )));
                    }
                }
            }
        }
    }
    for r in pres.relators() {
        let cols = word_columns(pres, r)?;
        for c in 0..n {
            if table.trace(c, &cols) != Some(c) {
                return Err(GroupsError::TableUnsound(format!(
                    "relator {r} does not close at coset {c}"
                )));
            }
        }
    }
    for w in subgroup_gens {
        let cols = word_columns(pres, w)?;
        if table.trace(0, &cols) != Some(0) {
            return Err(GroupsError::TableUnsound(format!(
                "subgroup generator {w} moves coset 0"
            )));
        }
    }
    // transitivity
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(c) = stack.pop() {
        for col in 0..ncols {
            let d = table.entry(c, col).expect("verified complete");
            if !seen[d] {
                seen[d] = true;
                stack.push(d);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(GroupsError::TableUnsound(
            "table is not transitive from coset 0".into(),
        ));
    }
    Ok(())
}
