use std::fmt;

use super::GroupsError;

/// Named group generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenSymbol(String);

impl GenSymbol {
    pub fn new(name: impl Into<String>) -> Self {
        GenSymbol(name.into())
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for GenSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// One letter of a word: a generator or its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: GenSymbol,
    /// `+1` or `−1`.
    pub exp: i8,
}

impl Letter {
    pub fn inverse(&self) -> Letter {
        Letter {
            gen: self.gen.clone(),
            exp: -self.exp,
        }
    }

    fn cancels(&self, other: &Letter) -> bool {
        self.gen == other.gen && self.exp == -other.exp
    }
}

/// A word in the free group over the generator symbols, kept freely
/// reduced by every constructor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GroupWord(Vec<Letter>);

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord::default()
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        free_reduce_letters(letters.into_iter().collect())
    }

    /// `gen^exp` for any integer exponent.
    pub fn power(gen: &GenSymbol, exp: i64) -> Self {
        let sign = if exp < 0 { -1 } else { 1 };
        GroupWord(
            (0..exp.unsigned_abs())
                .map(|_| Letter {
                    gen: gen.clone(),
                    exp: sign,
                })
                .collect(),
        )
    }

    pub fn gen(gen: &GenSymbol) -> Self {
        Self::power(gen, 1)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord(self.0.iter().rev().map(Letter::inverse).collect())
    }

    pub fn concat(&self, rhs: &GroupWord) -> GroupWord {
        free_reduce_letters(self.0.iter().chain(rhs.0.iter()).cloned().collect())
    }

    /// Replace each generator by another symbol, keeping exponents.
    pub fn rename<F: Fn(&GenSymbol) -> GenSymbol>(&self, f: F) -> GroupWord {
        GroupWord(
            self.0
                .iter()
                .map(|l| Letter {
                    gen: f(&l.gen),
                    exp: l.exp,
                })
                .collect(),
        )
    }

    /// Parses letter-exponent notation: whitespace-separated tokens, each
    /// a generator name optionally followed by `-k` for a negative power,
    /// e.g. `B-1 A B A-2`. Digits attached without a `-` belong to the
    /// generator name (`a0`); positive powers are written as repeated
    /// letters.
    pub fn parse(text: &str) -> Result<GroupWord, GroupsError> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            if token == "1" {
                // the identity, as printed for the empty word
                continue;
            }
            let (name, exp) = match token.find('-') {
                None => (token, 1i64),
                Some(i) => {
                    let exp: i64 = token[i..]
                        .parse()
                        .map_err(|_| GroupsError::Parse(format!("bad exponent in '{token}'")))?;
                    (&token[..i], exp)
                }
            };
            if name.is_empty() {
                return Err(GroupsError::Parse(format!(
                    "token '{token}' has no generator name"
                )));
            }
            let gen = GenSymbol::new(name);
            let sign = if exp < 0 { -1 } else { 1 };
            for _ in 0..exp.unsigned_abs() {
                letters.push(Letter {
                    gen: gen.clone(),
                    exp: sign,
                });
            }
        }
        Ok(free_reduce_letters(letters))
    }
}

fn free_reduce_letters(letters: Vec<Letter>) -> GroupWord {
    let mut stack: Vec<Letter> = Vec::with_capacity(letters.len());
    for l in letters {
        if stack.last().is_some_and(|top| top.cancels(&l)) {
            stack.pop();
        } else {
            stack.push(l);
        }
    }
    GroupWord(stack)
}

/// Free reduction of an arbitrary (possibly unreduced) word.
pub fn free_reduce(w: &GroupWord) -> GroupWord {
    free_reduce_letters(w.0.clone())
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            // compress maximal runs of the same letter
            let mut j = i;
            while j < self.0.len() && self.0[j] == self.0[i] {
                j += 1;
            }
            let run = (j - i) as i64 * self.0[i].exp as i64;
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if run > 0 {
                // positive powers as repeated letters, so that digit-bearing
                // names like `a0` round-trip through `parse`
                for r in 0..run {
                    if r > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{}", self.0[i].gen)?;
                }
            } else {
                write!(f, "{}{run}", self.0[i].gen)?;
            }
            i = j;
        }
        Ok(())
    }
}
