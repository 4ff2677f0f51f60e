//! Root paths and the weight table: mhdp rows laid out on weight columns.

use std::collections::BTreeSet;

use crate::error::Error;

use super::index::{IndexString, ParentArc};
use super::{for_each_admissible, node_attrs};

/// Arc annotation on a root path, carrying the indication of the tail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepArc {
    /// Horizontal step; the tail's multiplier `m`.
    Horizontal { mult: usize },
    /// Vertical step; the tail's exact divisor.
    Vertical { divisor: usize },
}

/// One vertex on a root path, with the arc that reached it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathStep {
    pub node: IndexString,
    pub arc: Option<StepArc>,
}

/// Reconstructs the unique root path of an admissible string by walking
/// backwards: retreat through the mhdp to its first vertex, hop to the
/// vertical predecessor, repeat until the root. Returned in forward order.
pub fn path_to_root(s: &IndexString, n: usize) -> Result<Vec<PathStep>, Error> {
    if !s.is_admissible(n) {
        return Err(Error::NotAdmissible {
            string: s.to_string(),
            n,
        });
    }
    let mut steps = Vec::new();
    let mut cur = s.clone();
    loop {
        match cur.parent() {
            None => {
                steps.push(PathStep {
                    node: cur,
                    arc: None,
                });
                break;
            }
            Some((parent, kind)) => {
                let arc = match kind {
                    ParentArc::Horizontal => StepArc::Horizontal {
                        mult: n - 1 - parent.last(),
                    },
                    ParentArc::Vertical => StepArc::Vertical {
                        divisor: parent.class_divisor(),
                    },
                };
                steps.push(PathStep {
                    node: cur,
                    arc: Some(arc),
                });
                cur = parent;
            }
        }
    }
    steps.reverse();
    Ok(steps)
}

/// One table row: an mhdp given left to right, starting on the column of
/// its first vertex's weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub depth: usize,
    pub start_weight: usize,
    pub strings: Vec<IndexString>,
}

/// The weight table of the pruned tree: every admissible string placed on
/// the column of its weight, one mhdp per row, rows grouped by depth and
/// ordered lexicographically inside each group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightTable {
    pub n: usize,
    pub diameter: usize,
    pub rows: Vec<TableRow>,
}

impl WeightTable {
    /// Strings per weight column, 0..=diameter.
    pub fn column_sets(&self) -> Vec<BTreeSet<IndexString>> {
        let mut cols = vec![BTreeSet::new(); self.diameter + 1];
        for row in &self.rows {
            for (k, s) in row.strings.iter().enumerate() {
                cols[row.start_weight + k].insert(s.clone());
            }
        }
        cols
    }
}

/// Lays out the weight table for `ST_n`.
pub fn table_t(n: usize) -> Result<WeightTable, Error> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n must be >= 2, got {n}")));
    }
    let mut firsts: Vec<IndexString> = Vec::new();
    for_each_admissible(n, &mut |idx| {
        if super::index::last_t(idx) == 0 {
            firsts.push(IndexString::new(idx.to_vec()).expect("admissible"));
        }
    });
    firsts.sort_by(|x, y| (x.depth(), x).cmp(&(y.depth(), y)));

    let rows = firsts
        .into_iter()
        .map(|first| {
            let start_weight = node_attrs(&first, n).expect("admissible").weight;
            let mut strings = vec![first.clone()];
            let mut cur = first.clone();
            while cur.last() < n - 1 {
                cur = cur.horizontal_child();
                strings.push(cur.clone());
            }
            TableRow {
                depth: first.depth(),
                start_weight,
                strings,
            }
        })
        .collect();

    Ok(WeightTable {
        n,
        diameter: (n - 1) / 2 + n - 1,
        rows,
    })
}
