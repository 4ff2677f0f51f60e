//! Permutations of `{1..n}`, star-generator moves, cycle structures and
//! canonical 1-invariant cycle structure keys.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::lambda::IndexString;

/// A permutation of `{1..n}` in one-line notation: position `p` (1-based)
/// holds `entries[p-1]`.
///
/// Values are immutable after construction; all operations return fresh
/// permutations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    entries: Vec<u32>,
}

impl Permutation {
    /// The identity word `12…n`. Requires `n >= 2`.
    pub fn identity(n: usize) -> Result<Self, Error> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!("n must be >= 2, got {n}")));
        }
        Ok(Permutation {
            entries: (1..=n as u32).collect(),
        })
    }

    /// Builds a permutation from one-line entries, validating that they form
    /// a bijection of `{1..n}` with `n >= 2`.
    pub fn from_entries(entries: Vec<u32>) -> Result<Self, Error> {
        let n = entries.len();
        if n < 2 {
            return Err(Error::InvalidPermutation(format!(
                "need at least 2 symbols, got {n}"
            )));
        }
        let mut seen = vec![false; n + 1];
        for &v in &entries {
            if v == 0 || v as usize > n {
                return Err(Error::InvalidPermutation(format!(
                    "symbol {v} out of range 1..={n}"
                )));
            }
            if seen[v as usize] {
                return Err(Error::InvalidPermutation(format!("symbol {v} repeated")));
            }
            seen[v as usize] = true;
        }
        Ok(Permutation { entries })
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// Entry at 1-based position `p`.
    pub fn get(&self, p: usize) -> u32 {
        self.entries[p - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(i, &v)| v == i as u32 + 1)
    }

    /// Applies the star generator `(1 i)`: exchanges the entries at
    /// positions 1 and `i`. An involution for every valid `i`.
    pub fn apply_star_generator(&self, i: usize) -> Result<Self, Error> {
        if i < 2 || i > self.n() {
            return Err(Error::GeneratorOutOfRange {
                position: i,
                n: self.n(),
            });
        }
        let mut entries = self.entries.clone();
        entries.swap(0, i - 1);
        Ok(Permutation { entries })
    }

    /// Position (1-based) currently holding the symbol 1.
    pub fn position_of_one(&self) -> usize {
        self.entries.iter().position(|&v| v == 1).unwrap() + 1
    }

    /// Applies the generator that moves 1 back to the front, closing the
    /// cycle containing 1. No-op on words that already fix 1.
    pub fn close_one_cycle(&self) -> Self {
        let k = self.position_of_one();
        if k == 1 {
            return self.clone();
        }
        let mut entries = self.entries.clone();
        entries.swap(0, k - 1);
        Permutation { entries }
    }

    /// The proper cycles (length > 1) of the permutation; fixed points are
    /// excluded.
    pub fn cycle_structure(&self) -> CycleStructure {
        let n = self.n();
        let mut seen = vec![false; n + 1];
        let mut cycles = Vec::new();
        for start in 1..=n as u32 {
            if seen[start as usize] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start as usize] = true;
            let mut x = self.get(start as usize);
            while x != start {
                cycle.push(x);
                seen[x as usize] = true;
                x = self.get(x as usize);
            }
            if cycle.len() > 1 {
                cycles.push(cycle);
            }
        }
        // starts are scanned in increasing order, so each cycle begins at its
        // smallest element and cycles are sorted by that element
        CycleStructure { cycles }
    }

    /// The canonical 1-invariant cycle structure key: length of 1's cycle
    /// (1 when the symbol is fixed) plus the sorted lengths of the other
    /// proper cycles. Two words are class-equivalent iff their keys are equal.
    pub fn ics_key(&self) -> IcsKey {
        let cs = self.cycle_structure();
        let mut one_cycle = 1;
        let mut others = Vec::new();
        for c in &cs.cycles {
            if c[0] == 1 {
                one_cycle = c.len();
            } else {
                others.push(c.len());
            }
        }
        others.sort_unstable();
        IcsKey { one_cycle, others }
    }

    /// Distance to the identity in `ST_n`: with `S` the total length of the
    /// proper cycles and `C` their number, the weight is `S + C` when 1 is
    /// fixed and `S + C - 2` otherwise.
    pub fn weight(&self) -> usize {
        self.ics_key().weight()
    }

    /// Word with trailing fixed points stripped, as used in node boxes and
    /// ledgers; the identity shortens to `1`.
    pub fn ledger_shorthand(&self) -> String {
        let n = self.n();
        let mut end = n;
        while end >= 2 && self.get(end) == end as u32 {
            end -= 1;
        }
        let prefix = &self.entries[..end.max(1)];
        if prefix.iter().all(|&v| v <= 16) {
            prefix.iter().map(|&v| symbol_char(v)).collect()
        } else {
            let parts: Vec<String> = prefix.iter().map(|v| v.to_string()).collect();
            parts.join(",")
        }
    }

    /// Canonical index string of this word's class.
    pub fn index_string(&self) -> IndexString {
        self.ics_key().index_string()
    }
}

fn symbol_char(v: u32) -> char {
    match v {
        1..=9 => (b'0' + v as u8) as char,
        10..=16 => (b'a' + (v - 10) as u8) as char,
        _ => '?',
    }
}

fn symbol_value(c: char) -> Option<u32> {
    match c {
        '1'..='9' => Some(c as u32 - '0' as u32),
        'a'..='g' => Some(c as u32 - 'a' as u32 + 10),
        _ => None,
    }
}

impl fmt::Display for Permutation {
    /// Compact digits for `n <= 9`, comma-separated decimals otherwise.
    /// Round-trips through [`Permutation::from_str`] losslessly.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for &v in &self.entries {
                write!(f, "{}", symbol_char(v))?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.entries.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts comma- or space-separated decimals, or a compact word of
    /// single symbols (`1`-`9` plus `a`=10 … `g`=16).
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty permutation".into()));
        }
        let entries: Vec<u32> = if s.contains(',') || s.contains(char::is_whitespace) {
            s.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|p| !p.is_empty())
                .map(|p| {
                    p.parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad symbol {p:?}")))
                })
                .collect::<Result<_, _>>()?
        } else {
            s.chars()
                .map(|c| symbol_value(c).ok_or_else(|| Error::Parse(format!("bad symbol {c:?}"))))
                .collect::<Result<_, _>>()?
        };
        Permutation::from_entries(entries)
    }
}

/// The set of proper cycles of a permutation, each cycle rotated to start at
/// its smallest element and the set sorted by those elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleStructure {
    cycles: Vec<Vec<u32>>,
}

impl CycleStructure {
    pub fn cycles(&self) -> &[Vec<u32>] {
        &self.cycles
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    /// Cycle lengths in display order.
    pub fn lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(|c| c.len()).collect()
    }
}

impl fmt::Display for CycleStructure {
    /// Cycles as symbol runs separated by dots: `(165.243)`; `()` when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.cycles.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            if c.iter().all(|&v| v <= 16) {
                for &v in c {
                    write!(f, "{}", symbol_char(v))?;
                }
            } else {
                let parts: Vec<String> = c.iter().map(|v| v.to_string()).collect();
                write!(f, "{}", parts.join(" "))?;
            }
        }
        write!(f, ")")
    }
}

/// Canonical 1-invariant cycle structure: `one_cycle` is the length of the
/// cycle containing the symbol 1 (1 when fixed), `others` the nondecreasing
/// lengths of the remaining proper cycles.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IcsKey {
    one_cycle: usize,
    others: Vec<usize>,
}

impl IcsKey {
    pub fn new(one_cycle: usize, mut others: Vec<usize>) -> Result<Self, Error> {
        if one_cycle == 0 {
            return Err(Error::InvalidArgument(
                "1's cycle length must be >= 1".into(),
            ));
        }
        if others.iter().any(|&l| l < 2) {
            return Err(Error::InvalidArgument(
                "proper cycle lengths must be >= 2".into(),
            ));
        }
        others.sort_unstable();
        Ok(IcsKey { one_cycle, others })
    }

    pub fn identity() -> Self {
        IcsKey {
            one_cycle: 1,
            others: Vec::new(),
        }
    }

    pub fn one_cycle(&self) -> usize {
        self.one_cycle
    }

    pub fn others(&self) -> &[usize] {
        &self.others
    }

    /// Whether some permutation of `{1..n}` realizes this key. The symbol 1
    /// occupies a slot even when fixed, so the support is
    /// `one_cycle + sum(others)`.
    pub fn fits_in(&self, n: usize) -> bool {
        self.one_cycle + self.others.iter().sum::<usize>() <= n
    }

    /// Weight shared by every member of the class.
    pub fn weight(&self) -> usize {
        let s_others: usize = self.others.iter().sum();
        if self.one_cycle == 1 {
            s_others + self.others.len()
        } else {
            (s_others + self.one_cycle) + (self.others.len() + 1) - 2
        }
    }

    /// Canonical index string: prefix t-values are the sorted `others`,
    /// the final t-value is `one_cycle - 1`, and indices are prefix sums.
    pub fn index_string(&self) -> IndexString {
        let mut indices = Vec::with_capacity(self.others.len() + 1);
        let mut acc = 0;
        for &t in &self.others {
            acc += t;
            indices.push(acc);
        }
        indices.push(acc + self.one_cycle - 1);
        IndexString::new(indices).expect("nonempty by construction")
    }
}

impl fmt::Display for IcsKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.others.iter().map(|l| l.to_string()).collect();
        write!(f, "({};{{{}}})", self.one_cycle, parts.join(","))
    }
}
