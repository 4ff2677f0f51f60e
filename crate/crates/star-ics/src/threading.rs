//! Threading the pruned tree into an oriented graph `Γ_n`.
//!
//! Wherever the pruning scan dropped a vertical arc at a node `u` with
//! `a_u >= 2`, a thread is added from `u` to `ψ(u)`: the vertical child of
//! the first-occurring node `φ(u)` carrying the same cycle tuple. `φ(u)` is
//! obtained directly by sorting the t-sequence of `u` nondecreasingly and
//! rebuilding indices as prefix sums.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::lambda::{generate_pruned, ArcKind, IndexString, LambdaNode, LambdaTree};

/// Arc kinds of the threaded orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum GammaArcKind {
    Horizontal,
    Vertical,
    Thread,
}

/// One arc of `Γ_n`. `indication` carries the tail's `ell` on horizontal
/// arcs, the divisor `d = b * a` on vertical arcs, and `a_u` on threads
/// (the surviving piece of the pruned arc's indication). `class_divisor`
/// is the exact ratio `c(tail) / c(head)` on vertical arcs and threads.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaArc {
    pub from: IndexString,
    pub to: IndexString,
    pub kind: GammaArcKind,
    pub indication: usize,
    pub class_divisor: Option<usize>,
}

/// The threaded orientation: the pruned tree's nodes, its arcs, plus the
/// threads. Every node with `a >= 2` has exactly one vertical-or-thread
/// out-arc; every node with `i_j <= n-2` has exactly one horizontal out-arc.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaGraph {
    n: usize,
    nodes: BTreeMap<IndexString, LambdaNode>,
    arcs: Vec<GammaArc>,
}

impl GammaGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn node(&self, id: &IndexString) -> Option<&LambdaNode> {
        self.nodes.get(id)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = &LambdaNode> {
        self.nodes.values()
    }

    pub fn arcs(&self) -> &[GammaArc] {
        &self.arcs
    }

    pub fn threads(&self) -> impl Iterator<Item = &GammaArc> {
        self.arcs.iter().filter(|a| a.kind == GammaArcKind::Thread)
    }

    pub fn out_degree(&self, id: &IndexString) -> usize {
        self.arcs.iter().filter(|a| &a.from == id).count()
    }
}

/// Sorts the t-sequence nondecreasingly and rebuilds indices by prefix
/// sums: the first-occurring node with the same cycle tuple.
pub fn phi(s: &IndexString) -> IndexString {
    let mut t = s.t_sequence();
    t.sort_unstable();
    let mut acc = 0;
    let indices = t
        .iter()
        .map(|&x| {
            acc += x;
            acc
        })
        .collect();
    IndexString::new(indices).expect("prefix sums of a sorted sequence are nondecreasing")
}

/// Head of the thread leaving `s`: the vertical child of `φ(s)`. Requires
/// `b = 0` and `a >= 2` (a pruned vertical arc).
pub fn thread_target(s: &IndexString) -> Result<IndexString, Error> {
    if s.vertical_multiplier() != 0 || s.last_t() < 2 {
        return Err(Error::InvalidArgument(format!(
            "{s} has no pruned vertical arc (need b = 0 and a >= 2)"
        )));
    }
    Ok(phi(s).vertical_child())
}

/// Builds `Γ_n`: the pruned tree's arcs plus one thread per node with
/// `b = 0` and `a >= 2`.
pub fn build_gamma(n: usize) -> Result<GammaGraph, Error> {
    build_gamma_from(&generate_pruned(n)?)
}

/// Threads an already-built pruned tree.
pub fn build_gamma_from(tree: &LambdaTree) -> Result<GammaGraph, Error> {
    if !tree.is_pruned() {
        return Err(Error::InvalidArgument(
            "threading applies to the pruned tree".into(),
        ));
    }
    let mut arcs: Vec<GammaArc> = tree
        .arcs()
        .iter()
        .map(|arc| GammaArc {
            from: arc.from.clone(),
            to: arc.to.clone(),
            kind: match arc.kind {
                ArcKind::Horizontal => GammaArcKind::Horizontal,
                ArcKind::Vertical => GammaArcKind::Vertical,
            },
            indication: arc.indication,
            class_divisor: (arc.kind == ArcKind::Vertical).then_some(arc.indication),
        })
        .collect();
    for node in tree.nodes() {
        if node.b == 0 && node.a >= 2 {
            let to = thread_target(&node.id)?;
            debug_assert!(tree.contains(&to), "thread head {to} missing from tree");
            arcs.push(GammaArc {
                from: node.id.clone(),
                to,
                kind: GammaArcKind::Thread,
                indication: node.a,
                class_divisor: Some(node.id.class_divisor()),
            });
        }
    }
    arcs.sort_by(|x, y| (&x.from, x.kind, &x.to).cmp(&(&y.from, y.kind, &y.to)));
    let nodes = tree.nodes().map(|v| (v.id.clone(), v.clone())).collect();
    Ok(GammaGraph {
        n: tree.n(),
        nodes,
        arcs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> IndexString {
        text.parse().unwrap()
    }

    #[test]
    fn thread_target_examples() {
        assert_eq!(thread_target(&s("35")).unwrap(), s("255"));
        assert_eq!(thread_target(&s("257")).unwrap(), s("2477"));
        assert_eq!(thread_target(&s("368")).unwrap(), s("2588"));
        assert_eq!(thread_target(&s("46")).unwrap(), s("266"));
    }

    #[test]
    fn thread_target_rejects_unpruned_tails() {
        assert!(thread_target(&s("24")).is_err()); // b = 2
        assert!(thread_target(&s("23")).is_err()); // a = 1
        assert!(thread_target(&IndexString::root()).is_err());
    }

    #[test]
    fn gamma_9_has_exactly_the_nine_threads() {
        let gamma = build_gamma(9).unwrap();
        let got: Vec<(String, String)> = gamma
            .threads()
            .map(|a| (a.from.compact(), a.to.compact()))
            .collect();
        let expected = vec![
            ("35", "255"),
            ("46", "266"),
            ("47", "377"),
            ("57", "277"),
            ("58", "388"),
            ("68", "288"),
            ("257", "2477"),
            ("268", "2488"),
            ("368", "2588"),
        ];
        let expected: Vec<(String, String)> = expected
            .into_iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn gamma_4_has_no_threads() {
        let gamma = build_gamma(4).unwrap();
        assert_eq!(gamma.threads().count(), 0);
        assert_eq!(gamma.arcs().len(), 6);
    }

    #[test]
    fn gamma_2_is_a_single_arc() {
        let gamma = build_gamma(2).unwrap();
        assert_eq!(gamma.arcs().len(), 1);
        assert_eq!(gamma.arcs()[0].from, s("0"));
        assert_eq!(gamma.arcs()[0].to, s("1"));
    }

    #[test]
    fn out_degrees_bounded() {
        let gamma = build_gamma(9).unwrap();
        for node in gamma.nodes() {
            let deg = gamma.out_degree(&node.id);
            assert!(deg <= 2, "{}", node.id);
            let expect_horizontal = node.id.last() <= 9 - 2;
            let expect_closing = node.a >= 2;
            assert_eq!(
                deg,
                usize::from(expect_horizontal) + usize::from(expect_closing),
                "{}",
                node.id
            );
        }
    }

    #[test]
    fn thread_tuples_match_targets() {
        // C(u) = C(phi(u)) as multisets on every thread
        for n in 2..=10 {
            let gamma = build_gamma(n).unwrap();
            for arc in gamma.threads() {
                let mut a = arc.from.t_sequence();
                a.sort_unstable();
                let mut b = phi(&arc.from).t_sequence();
                b.sort_unstable();
                assert_eq!(a, b);
                assert!(phi(&arc.from) < arc.from, "first occurrence precedes");
            }
        }
    }
}
