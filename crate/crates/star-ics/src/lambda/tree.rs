//! Materialized trees: axiom generation, direct generation of the pruned
//! form, the pruning scan and its ledger.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::perm::{CycleStructure, Permutation};

use super::index::{IndexString, ParentArc};

/// Arc kinds of the class tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ArcKind {
    Horizontal,
    Vertical,
}

/// A directed tree arc with its indication: the tail's `ell` for horizontal
/// arcs (multiply by `n - ell` to grow the class), the exact divisor for
/// vertical arcs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaArc {
    pub from: IndexString,
    pub to: IndexString,
    pub kind: ArcKind,
    pub indication: usize,
}

/// One tree vertex with every scan field attached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaNode {
    pub id: IndexString,
    pub weight: usize,
    pub ell: usize,
    /// Horizontal factor `n - i_j - 1`; 0 on the last column.
    pub mult: usize,
    pub a: usize,
    /// Vertical multiplier; 0 when no vertical arc survives here.
    pub b: usize,
    /// Exact class cardinality.
    pub card: BigUint,
    /// Representative word, replayed along the root path.
    pub sigma: Permutation,
    /// The word with 1's cycle closed; absent on the first and second
    /// vertices of an mhdp.
    pub sigma_closed: Option<Permutation>,
    /// Nondecreasing cycle tuple `C(u)`; absent where `sigma_closed` is.
    pub ctuple: Option<Vec<usize>>,
    pub ics: crate::perm::IcsKey,
}

impl LambdaNode {
    /// Divisor of the outgoing vertical arc, `b * a`; 0 if none.
    pub fn d(&self) -> usize {
        self.b * self.a
    }
}

/// A class tree for `ST_n`, either axiom-generated (`pruned = false`) or
/// reduced to one vertex per class (`pruned = true`). Immutable once built;
/// nodes iterate in scan order (length, then lexicographic).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaTree {
    n: usize,
    pruned: bool,
    nodes: BTreeMap<IndexString, LambdaNode>,
    arcs: Vec<LambdaArc>,
}

impl LambdaTree {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_pruned(&self) -> bool {
        self.pruned
    }

    pub fn node(&self, id: &IndexString) -> Option<&LambdaNode> {
        self.nodes.get(id)
    }

    pub fn contains(&self, id: &IndexString) -> bool {
        self.nodes.contains_key(id)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Nodes in scan order.
    pub fn nodes(&self) -> impl Iterator<Item = &LambdaNode> {
        self.nodes.values()
    }

    pub fn ids(&self) -> impl Iterator<Item = &IndexString> {
        self.nodes.keys()
    }

    pub fn arcs(&self) -> &[LambdaArc] {
        &self.arcs
    }

    pub fn total_cardinality(&self) -> BigUint {
        let mut total = BigUint::zero();
        for node in self.nodes.values() {
            total += &node.card;
        }
        total
    }

    /// Node counts grouped by the final index `i_j`.
    pub fn column_counts(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.n];
        for id in self.nodes.keys() {
            counts[id.last()] += 1;
        }
        counts
    }

    /// First vertices of maximal horizontal paths, in scan order.
    pub fn mhdp_first_vertices(&self) -> Vec<IndexString> {
        self.nodes
            .keys()
            .filter(|id| id.last_t() == 0)
            .cloned()
            .collect()
    }

    pub(crate) fn from_parts(
        n: usize,
        pruned: bool,
        nodes: BTreeMap<IndexString, LambdaNode>,
        mut arcs: Vec<LambdaArc>,
    ) -> Self {
        arcs.sort_by(|x, y| (&x.from, x.kind, &x.to).cmp(&(&y.from, y.kind, &y.to)));
        LambdaTree {
            n,
            pruned,
            nodes,
            arcs,
        }
    }
}

fn make_node(n: usize, id: IndexString, sigma: Permutation, card: BigUint) -> LambdaNode {
    let last = id.last();
    let a = id.last_t();
    let blank = a <= 1;
    LambdaNode {
        weight: last + id.depth(),
        ell: last + 1,
        mult: n - 1 - last,
        a,
        b: id.vertical_multiplier(),
        card,
        sigma_closed: (!blank).then(|| sigma.close_one_cycle()),
        ctuple: (!blank).then(|| {
            let mut t = id.t_sequence();
            t.sort_unstable();
            t
        }),
        ics: id.ics_key().expect("tree strings name classes"),
        sigma,
        id,
    }
}

fn generate(n: usize, unpruned: bool) -> Result<LambdaTree, Error> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n must be >= 2, got {n}")));
    }
    let mut nodes = BTreeMap::new();
    let mut arcs = Vec::new();
    let mut stack = vec![(
        IndexString::root(),
        Permutation::identity(n)?,
        BigUint::one(),
    )];
    while let Some((id, sigma, card)) = stack.pop() {
        let last = id.last();
        let ell = last + 1;
        if last < n - 1 {
            let child = id.horizontal_child();
            let grown = &card * (n - 1 - last);
            arcs.push(LambdaArc {
                from: id.clone(),
                to: child.clone(),
                kind: ArcKind::Horizontal,
                indication: ell,
            });
            stack.push((child, sigma.apply_star_generator(ell + 1)?, grown));
        }
        let spawns = if unpruned {
            id.last_t() >= 2
        } else {
            id.vertical_multiplier() > 0
        };
        if spawns {
            let d = id.class_divisor();
            let (q, r) = card.div_rem(&BigUint::from(d));
            assert!(r.is_zero(), "non-exact division under {id} for n={n}");
            let child = id.vertical_child();
            arcs.push(LambdaArc {
                from: id.clone(),
                to: child.clone(),
                kind: ArcKind::Vertical,
                indication: d,
            });
            stack.push((child, sigma.close_one_cycle(), q));
        }
        nodes.insert(id.clone(), make_node(n, id, sigma, card));
    }
    Ok(LambdaTree::from_parts(n, !unpruned, nodes, arcs))
}

/// Builds the pruned tree directly: its vertices are exactly the admissible
/// strings, one per class of `ST_n`.
pub fn generate_pruned(n: usize) -> Result<LambdaTree, Error> {
    generate(n, false)
}

/// Builds the axiom-generated tree: every vertex whose last t-value is at
/// least 2 spawns a vertical child, so classes repeat.
pub fn generate_unpruned(n: usize) -> Result<LambdaTree, Error> {
    generate(n, true)
}

/// One line of the pruning scan: the node, its representative word with
/// cycle structure, `ell`, the closed word with its cycles, the cycle tuple
/// in t-sequence order, and `d = b * a`. The closed-word fields are blank
/// on the first and second vertices of each mhdp.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LedgerRow {
    pub id: IndexString,
    pub weight: usize,
    pub sigma: Permutation,
    pub pi: CycleStructure,
    pub ell: usize,
    pub sigma_closed: Option<Permutation>,
    pub pi_closed: Option<CycleStructure>,
    pub ctuple: Option<Vec<usize>>,
    pub b: usize,
    pub a: usize,
}

impl LedgerRow {
    pub fn ctuple_multiset(&self) -> Option<Vec<usize>> {
        self.ctuple.as_ref().map(|c| {
            let mut m = c.clone();
            m.sort_unstable();
            m
        })
    }
}

/// Runs the pruning scan over an axiom-generated tree: nodes are visited in
/// scan order, each gets its fields, and wherever `b = 0` with a vertical
/// arc present the arc and its descendants are dropped. Returns the pruned
/// tree plus the ledger of surviving rows.
pub fn prune(tree: &LambdaTree) -> Result<(LambdaTree, Vec<LedgerRow>), Error> {
    if tree.is_pruned() {
        return Err(Error::InvalidArgument(
            "tree is already pruned; pass the axiom-generated form".into(),
        ));
    }
    let mut deleted: HashSet<IndexString> = HashSet::new();
    let mut cut: HashSet<IndexString> = HashSet::new();
    let mut seen: HashMap<Vec<usize>, IndexString> = HashMap::new();
    let mut rows = Vec::new();
    let mut survivors = BTreeMap::new();

    for (id, node) in &tree.nodes {
        if let Some((parent, kind)) = id.parent() {
            if deleted.contains(&parent) || (kind == ParentArc::Vertical && cut.contains(&parent)) {
                deleted.insert(id.clone());
                continue;
            }
        }
        let blank = id.last_t() <= 1;
        let b = if blank {
            0
        } else {
            let key = {
                let mut t = id.t_sequence();
                t.sort_unstable();
                t
            };
            match seen.entry(key) {
                std::collections::hash_map::Entry::Occupied(_) => 0,
                std::collections::hash_map::Entry::Vacant(slot) => {
                    slot.insert(id.clone());
                    id.vertical_multiplier()
                }
            }
        };
        debug_assert_eq!(
            b,
            id.vertical_multiplier(),
            "first-occurrence scan disagrees with the closed form at {id}"
        );
        if b == 0 && id.last_t() >= 2 {
            cut.insert(id.clone());
        }
        rows.push(LedgerRow {
            id: id.clone(),
            weight: node.weight,
            sigma: node.sigma.clone(),
            pi: node.sigma.cycle_structure(),
            ell: node.ell,
            sigma_closed: node.sigma_closed.clone(),
            pi_closed: node.sigma_closed.as_ref().map(|p| p.cycle_structure()),
            ctuple: (!blank).then(|| id.t_sequence()),
            b,
            a: id.last_t(),
        });
        survivors.insert(id.clone(), node.clone());
    }

    let arcs: Vec<LambdaArc> = tree
        .arcs
        .iter()
        .filter(|arc| {
            !deleted.contains(&arc.from)
                && !deleted.contains(&arc.to)
                && !(arc.kind == ArcKind::Vertical && cut.contains(&arc.from))
        })
        .cloned()
        .collect();

    Ok((LambdaTree::from_parts(tree.n, true, survivors, arcs), rows))
}

/// Convenience: axiom generation followed by the pruning scan.
pub fn ledger(n: usize) -> Result<Vec<LedgerRow>, Error> {
    let (_, rows) = prune(&generate_unpruned(n)?)?;
    Ok(rows)
}
