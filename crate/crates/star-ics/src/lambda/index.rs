//! Subindex strings `i_0 i_1 … i_j` naming the vertices of the class tree,
//! together with their derived t-sequences and per-node attributes.
//!
//! The t-sequence `t_k = i_k - i_{k-1}` (with `i_{-1} = 0`) recovers the
//! cycle data of a node's class: the prefix values `t_0..t_{j-1}` are the
//! lengths of the proper cycles not containing the symbol 1, and the final
//! value `t_j` is one less than the length of 1's cycle.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::perm::IcsKey;

/// A nonempty, nondecreasing sequence of nonnegative indices naming a tree
/// vertex. Orders by length first, then elementwise, which is the visiting
/// order of the pruning scan.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndexString(Vec<usize>);

impl IndexString {
    pub fn new(indices: Vec<usize>) -> Result<Self, Error> {
        if indices.is_empty() {
            return Err(Error::InvalidArgument(
                "index string must be nonempty".into(),
            ));
        }
        if indices.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidArgument(
                "index string must be nondecreasing".into(),
            ));
        }
        Ok(IndexString(indices))
    }

    /// The root string `0`.
    pub fn root() -> Self {
        IndexString(vec![0])
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn last(&self) -> usize {
        *self.0.last().unwrap()
    }

    /// Number of indices minus one; equals the number of vertical arcs on
    /// the root path.
    pub fn depth(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_root(&self) -> bool {
        self.0.len() == 1 && self.0[0] == 0
    }

    pub fn t_sequence(&self) -> Vec<usize> {
        t_sequence(&self.0)
    }

    /// Final t-value `t_j = i_j - i_{j-1}`; the `a` attribute.
    pub fn last_t(&self) -> usize {
        last_t(&self.0)
    }

    /// Child along the horizontal arc: last index incremented.
    pub fn horizontal_child(&self) -> Self {
        let mut v = self.0.clone();
        *v.last_mut().unwrap() += 1;
        IndexString(v)
    }

    /// Child along the vertical arc: last index duplicated.
    pub fn vertical_child(&self) -> Self {
        let mut v = self.0.clone();
        v.push(*v.last().unwrap());
        IndexString(v)
    }

    /// Tree parent with the connecting arc kind, `None` for the root.
    pub fn parent(&self) -> Option<(Self, ParentArc)> {
        if self.is_root() {
            return None;
        }
        let v = &self.0;
        if v.len() >= 2 && v[v.len() - 1] == v[v.len() - 2] {
            Some((IndexString(v[..v.len() - 1].to_vec()), ParentArc::Vertical))
        } else {
            let mut w = v.clone();
            *w.last_mut().unwrap() -= 1;
            Some((IndexString(w), ParentArc::Horizontal))
        }
    }

    /// Membership test for the pruned tree of `ST_n`: `0 <= i_0 <= n-1`;
    /// `i_0 >= 2` when there is more than one index; `t_k <= t_{k+1}` for
    /// `k = 0..j-2`; `i_{j-1} <= i_j`; and `i_j <= n-1`.
    pub fn is_admissible(&self, n: usize) -> bool {
        if n < 2 {
            return false;
        }
        let v = &self.0;
        let j = v.len() - 1;
        if v[0] > n - 1 || v[j] > n - 1 {
            return false;
        }
        if j > 0 && v[0] < 2 {
            return false;
        }
        let t = t_sequence(v);
        // the final t is unconstrained here; i_{j-1} <= i_j holds by construction
        (0..j.saturating_sub(1)).all(|k| t[k] <= t[k + 1])
    }

    /// The `b` attribute: 0 unless `2 <= i_0 <= t_1 <= … <= t_j`, in which
    /// case the multiplicity of `t_j` among all t-values. Nonzero exactly
    /// when the vertical child is admissible.
    pub fn vertical_multiplier(&self) -> usize {
        vertical_multiplier(&self.0)
    }

    /// `t_j` times its multiplicity among the t-values: the exact divisor
    /// carried by the closing move out of this node, meaningful whenever
    /// `t_j >= 2` (with or without a surviving vertical arc).
    pub fn class_divisor(&self) -> usize {
        class_divisor(&self.0)
    }

    /// The class named by this string, when the prefix t-values are all
    /// valid cycle lengths (>= 2). Tree vertices always qualify.
    pub fn ics_key(&self) -> Option<IcsKey> {
        let t = self.t_sequence();
        let (last, prefix) = t.split_last().unwrap();
        if prefix.iter().any(|&x| x < 2) {
            return None;
        }
        Some(IcsKey::new(last + 1, prefix.to_vec()).expect("validated"))
    }

    /// Hex-digit rendering (`244`, `2468aa`) when all indices fit a single
    /// digit, dotted decimals otherwise.
    pub fn compact(&self) -> String {
        if self.0.iter().all(|&i| i <= 15) {
            self.0
                .iter()
                .map(|&i| char::from_digit(i as u32, 16).unwrap())
                .collect()
        } else {
            self.to_string()
        }
    }
}

/// Kind of the arc joining a node to its parent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParentArc {
    Horizontal,
    Vertical,
}

pub(crate) fn t_sequence(indices: &[usize]) -> Vec<usize> {
    let mut prev = 0;
    indices
        .iter()
        .map(|&i| {
            let t = i - prev;
            prev = i;
            t
        })
        .collect()
}

pub(crate) fn last_t(indices: &[usize]) -> usize {
    let j = indices.len() - 1;
    if j == 0 {
        indices[0]
    } else {
        indices[j] - indices[j - 1]
    }
}

pub(crate) fn vertical_multiplier(indices: &[usize]) -> usize {
    if indices[0] < 2 {
        return 0;
    }
    let t = t_sequence(indices);
    if t.windows(2).any(|w| w[0] > w[1]) {
        return 0;
    }
    let last = *t.last().unwrap();
    t.iter().filter(|&&x| x == last).count()
}

pub(crate) fn class_divisor(indices: &[usize]) -> usize {
    let t = t_sequence(indices);
    let last = *t.last().unwrap();
    last * t.iter().filter(|&&x| x == last).count()
}

impl Ord for IndexString {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for IndexString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for IndexString {
    /// Dotted decimals: `2.4.4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "{}", parts.join("."))
    }
}

impl FromStr for IndexString {
    type Err = Error;

    /// Accepts dotted decimals (`2.4.4`) or a compact hex-digit word
    /// (`244`, `2468aa`). Dotless input is always read as the compact
    /// notation, one digit per index; a lone index of 10 or more is only
    /// expressible in the dotted form.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty index string".into()));
        }
        let indices: Vec<usize> = if s.contains('.') {
            s.split('.')
                .map(|p| {
                    p.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad index {p:?}")))
                })
                .collect::<Result<_, _>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(16)
                        .map(|d| d as usize)
                        .ok_or_else(|| Error::Parse(format!("bad index digit {c:?}")))
                })
                .collect::<Result<_, _>>()?
        };
        IndexString::new(indices).map_err(|e| Error::Parse(e.to_string()))
    }
}
