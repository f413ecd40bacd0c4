//! Finitely presented groups, realized through coset enumeration over the
//! trivial subgroup (the regular representation).

use serde::{Deserialize, Serialize};

use crate::error::GroupError;
use crate::group::FiniteGroup;
use crate::perm::Perm;

const UNDEF: u32 = u32::MAX;

/// Cosets the enumerator may define before giving up.
pub const MAX_COSETS: usize = 4_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<String>,
    pub order: usize,
}

/// A letter is `2 * generator + (1 if inverted)`.
type Word = Vec<usize>;

impl Presentation {
    pub fn new(generators: &[&str], relators: &[&str], order: usize) -> Self {
        Presentation {
            generators: generators.iter().map(|s| s.to_string()).collect(),
            relators: relators.iter().map(|s| s.to_string()).collect(),
            order,
        }
    }

    /// Parses a word: generator names, each optionally followed by `'`
    /// (inverse) and `^k` with a signed integer exponent. Whitespace is
    /// ignored.
    pub fn parse_word(&self, text: &str) -> Result<Vec<usize>, GroupError> {
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let mut word = Vec::new();
        while pos < chars.len() {
            let rest: String = chars[pos..].iter().collect();
            let (gen, len) = self
                .generators
                .iter()
                .enumerate()
                .filter(|(_, name)| !name.is_empty() && rest.starts_with(name.as_str()))
                .max_by_key(|(_, name)| name.chars().count())
                .map(|(g, name)| (g, name.chars().count()))
                .ok_or_else(|| {
                    GroupError::Presentation(format!("unknown generator at {rest:?} in {text:?}"))
                })?;
            pos += len;
            let mut inverted = false;
            while pos < chars.len() && chars[pos] == '\'' {
                inverted = !inverted;
                pos += 1;
            }
            let mut exponent: i64 = 1;
            if pos < chars.len() && chars[pos] == '^' {
                pos += 1;
                let start = pos;
                if pos < chars.len() && chars[pos] == '-' {
                    pos += 1;
                }
                while pos < chars.len() && chars[pos].is_ascii_digit() {
                    pos += 1;
                }
                let digits: String = chars[start..pos].iter().collect();
                exponent = digits.parse().map_err(|_| {
                    GroupError::Presentation(format!("bad exponent {digits:?} in {text:?}"))
                })?;
            }
            if exponent < 0 {
                inverted = !inverted;
            }
            let letter = 2 * gen + usize::from(inverted);
            word.extend(std::iter::repeat_n(
                letter,
                exponent.unsigned_abs() as usize,
            ));
        }
        Ok(word)
    }

    /// Runs coset enumeration and returns the regular permutation
    /// representation, checked against the declared order and relators.
    pub fn realize(&self, cap: usize) -> Result<FiniteGroup, GroupError> {
        if self.generators.is_empty() {
            return Err(GroupError::Presentation("no generators".into()));
        }
        let relators: Vec<Word> = self
            .relators
            .iter()
            .map(|r| self.parse_word(r))
            .collect::<Result<_, _>>()?;
        let limit = MAX_COSETS.min(cap.saturating_mul(64).max(1024));
        let table = enumerate_cosets(self.generators.len(), &relators, limit)?;
        let degree = table.len();
        if degree != self.order {
            return Err(GroupError::OrderMismatch {
                declared: self.order,
                actual: degree,
            });
        }
        let perms: Vec<Perm> = (0..self.generators.len())
            .map(|g| Perm::from_images(table.iter().map(|row| row[2 * g]).collect()))
            .collect::<Result<_, _>>()?;
        for (text, word) in self.relators.iter().zip(&relators) {
            let value = word.iter().fold(Perm::identity(degree), |acc, &l| {
                let p = if l % 2 == 0 {
                    perms[l / 2].clone()
                } else {
                    perms[l / 2].inverse()
                };
                acc.then(&p)
            });
            if !value.is_identity() {
                return Err(GroupError::Presentation(format!(
                    "relator {text:?} does not hold in the realization"
                )));
            }
        }
        let group = FiniteGroup::enumerate(&perms, cap)?;
        if group.order() != self.order {
            return Err(GroupError::OrderMismatch {
                declared: self.order,
                actual: group.order(),
            });
        }
        Ok(group)
    }
}

struct CosetTable {
    letters: usize,
    table: Vec<u32>,
    forward: Vec<u32>,
    queue: Vec<usize>,
    limit: usize,
}

impl CosetTable {
    fn new(letters: usize, limit: usize) -> Self {
        CosetTable {
            letters,
            table: vec![UNDEF; letters],
            forward: vec![0],
            queue: Vec::new(),
            limit,
        }
    }

    fn count(&self) -> usize {
        self.forward.len()
    }

    fn get(&self, c: usize, x: usize) -> Option<usize> {
        let v = self.table[c * self.letters + x];
        (v != UNDEF).then_some(v as usize)
    }

    fn set(&mut self, c: usize, x: usize, d: usize) {
        self.table[c * self.letters + x] = d as u32;
    }

    fn unset(&mut self, c: usize, x: usize) {
        self.table[c * self.letters + x] = UNDEF;
    }

    fn is_live(&self, c: usize) -> bool {
        self.forward[c] as usize == c
    }

    fn define(&mut self, c: usize, x: usize) -> Result<(), GroupError> {
        let d = self.count();
        if d >= self.limit {
            return Err(GroupError::Presentation(format!(
                "coset enumeration exceeded {} cosets",
                self.limit
            )));
        }
        self.forward.push(d as u32);
        self.table.extend(std::iter::repeat_n(UNDEF, self.letters));
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        Ok(())
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut r = c;
        while self.forward[r] as usize != r {
            r = self.forward[r] as usize;
        }
        let mut c = c;
        while self.forward[c] as usize != r {
            let next = self.forward[c] as usize;
            self.forward[c] = r as u32;
            c = next;
        }
        r
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (keep, drop) = if a < b { (a, b) } else { (b, a) };
        self.forward[drop] = keep as u32;
        self.queue.push(drop);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for x in 0..self.letters {
                let Some(f) = self.get(e, x) else { continue };
                self.unset(f, x ^ 1);
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                if let Some(t) = self.get(e1, x) {
                    let t = self.rep(t);
                    self.merge(f1, t);
                } else if let Some(t) = self.get(f1, x ^ 1) {
                    let t = self.rep(t);
                    self.merge(e1, t);
                } else {
                    self.set(e1, x, f1);
                    self.set(f1, x ^ 1, e1);
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, word: &[usize]) -> Result<(), GroupError> {
        if word.is_empty() {
            return Ok(());
        }
        let mut f = c;
        let mut b = c;
        let mut i = 0usize;
        let mut j = word.len() as isize - 1;
        loop {
            while (i as isize) <= j {
                match self.get(f, word[i]) {
                    Some(next) => {
                        f = next;
                        i += 1;
                    }
                    None => break,
                }
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize {
                match self.get(b, word[j as usize] ^ 1) {
                    Some(next) => {
                        b = next;
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                self.set(f, word[i], b);
                self.set(b, word[i] ^ 1, f);
                return Ok(());
            }
            self.define(f, word[i])?;
        }
    }
}

/// Hasselgrove–Leech–Trotter enumeration of the cosets of the trivial
/// subgroup. Returns the compacted table, one row per coset, coset 0 first.
fn enumerate_cosets(
    gens: usize,
    relators: &[Word],
    limit: usize,
) -> Result<Vec<Vec<usize>>, GroupError> {
    let letters = 2 * gens;
    let mut ct = CosetTable::new(letters, limit);
    let mut c = 0;
    while c < ct.count() {
        for r in relators {
            if !ct.is_live(c) {
                break;
            }
            ct.scan_and_fill(c, r)?;
        }
        for x in 0..letters {
            if !ct.is_live(c) {
                break;
            }
            if ct.get(c, x).is_none() {
                ct.define(c, x)?;
            }
        }
        c += 1;
    }

    let live: Vec<usize> = (0..ct.count()).filter(|&c| ct.is_live(c)).collect();
    let mut renumber = vec![usize::MAX; ct.count()];
    for (k, &c) in live.iter().enumerate() {
        renumber[c] = k;
    }
    live.iter()
        .map(|&c| {
            (0..letters)
                .map(|x| {
                    let d = ct
                        .get(c, x)
                        .ok_or_else(|| GroupError::Presentation("incomplete coset table".into()))?;
                    let d = ct.rep(d);
                    Ok(renumber[d])
                })
                .collect()
        })
        .collect()
}
