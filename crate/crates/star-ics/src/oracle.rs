//! Brute-force ground truth: BFS over the full Cayley graph of `S_n` under
//! the star generators, class extraction, E-set histograms and quotient
//! verification. Everything here is independent of the tree machinery and
//! is used as the arbiter for it.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::lambda::IndexString;
use crate::perm::{IcsKey, Permutation};
use crate::threading::{GammaArcKind, GammaGraph};

/// Hard cap on BFS size; `n = 10` already walks 3,628,800 vertices.
pub const MAX_BFS_N: usize = 10;

/// Exact distances from the identity, stored per permutation rank.
#[derive(Clone, Debug)]
pub struct BfsResult {
    pub n: usize,
    distances: Vec<u8>,
    pub histogram: Vec<u64>,
    pub max_distance: usize,
}

impl BfsResult {
    pub fn distance_of_rank(&self, rank: usize) -> usize {
        self.distances[rank] as usize
    }

    pub fn distance(&self, p: &Permutation) -> usize {
        let entries: Vec<u8> = p.entries().iter().map(|&v| v as u8).collect();
        self.distance_of_rank(perm_rank(&entries))
    }

    pub fn vertex_count(&self) -> usize {
        self.distances.len()
    }
}

/// Rank of a word in the factorial number system: the identity ranks 0 and
/// ranks are a bijection onto `0..n!`.
pub fn perm_rank(entries: &[u8]) -> usize {
    let n = entries.len();
    let mut rank = 0;
    for i in 0..n {
        let mut smaller = 0;
        for j in (i + 1)..n {
            if entries[j] < entries[i] {
                smaller += 1;
            }
        }
        rank = rank * (n - i) + smaller;
    }
    rank
}

/// Inverse of [`perm_rank`]; writes the word into `out`.
pub fn perm_unrank(n: usize, rank: usize, out: &mut Vec<u8>) {
    let mut digits = vec![0usize; n];
    let mut r = rank;
    for i in (0..n).rev() {
        digits[i] = r % (n - i);
        r /= n - i;
    }
    let mut pool: Vec<u8> = (1..=n as u8).collect();
    out.clear();
    for &d in &digits {
        out.push(pool.remove(d));
    }
}

fn factorial_u64(n: usize) -> u64 {
    (2..=n as u64).product()
}

/// Breadth-first search from the identity over all of `S_n` under the star
/// generators. Frontiers are expanded generation by generation; distances
/// live in a flat byte array indexed by rank.
pub fn bfs(n: usize) -> Result<BfsResult, Error> {
    if !(2..=MAX_BFS_N).contains(&n) {
        let estimate = if (2..=20).contains(&n) {
            format!("{} bytes", factorial_u64(n))
        } else {
            "astronomically many bytes".into()
        };
        return Err(Error::ResourceGuard(format!(
            "bfs supports 2 <= n <= {MAX_BFS_N}; n={n} would need {estimate} of distance table"
        )));
    }
    let total = factorial_u64(n) as usize;
    let mut distances = vec![u8::MAX; total];
    distances[0] = 0; // identity has all-zero factorial digits
    let mut frontier: Vec<u32> = vec![0];
    let mut histogram = vec![1u64];
    let mut buf = Vec::with_capacity(n);
    let mut depth = 0u8;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &r in &frontier {
            perm_unrank(n, r as usize, &mut buf);
            for i in 1..n {
                buf.swap(0, i);
                let q = perm_rank(&buf);
                buf.swap(0, i);
                if distances[q] == u8::MAX {
                    distances[q] = depth + 1;
                    next.push(q as u32);
                }
            }
        }
        depth += 1;
        if !next.is_empty() {
            histogram.push(next.len() as u64);
        }
        frontier = next;
    }
    Ok(BfsResult {
        n,
        distances,
        max_distance: histogram.len() - 1,
        histogram,
    })
}

/// Distance and size of one class as seen by the oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassInfo {
    pub distance: usize,
    pub size: u64,
}

/// Groups all of `S_n` by class key, checking along the way that every
/// member of a class sits at one common distance. A mixed class would
/// falsify the whole model, so it errors.
pub fn class_histogram(n: usize) -> Result<BTreeMap<IcsKey, ClassInfo>, Error> {
    if n > 9 {
        return Err(Error::ResourceGuard(format!(
            "class histogram supports n <= 9, got {n}"
        )));
    }
    let result = bfs(n)?;
    let mut classes: BTreeMap<IcsKey, ClassInfo> = BTreeMap::new();
    let mut buf = Vec::with_capacity(n);
    for rank in 0..result.vertex_count() {
        perm_unrank(n, rank, &mut buf);
        let p = Permutation::from_entries(buf.iter().map(|&v| v as u32).collect())
            .expect("unrank yields valid words");
        let key = p.ics_key();
        let d = result.distance_of_rank(rank);
        match classes.get_mut(&key) {
            None => {
                classes.insert(
                    key,
                    ClassInfo {
                        distance: d,
                        size: 1,
                    },
                );
            }
            Some(info) => {
                if info.distance != d {
                    return Err(Error::InvalidArgument(format!(
                        "class {key} mixes distances {} and {d}",
                        info.distance
                    )));
                }
                info.size += 1;
            }
        }
    }
    Ok(classes)
}

/// Distance histogram of the permutations with `sigma_1 = i`.
pub fn eset_histogram(n: usize, i: usize) -> Result<Vec<u64>, Error> {
    if i < 1 || i > n {
        return Err(Error::InvalidArgument(format!(
            "symbol {i} out of range 1..={n}"
        )));
    }
    Ok(eset_histograms(n)?.swap_remove(i - 1))
}

/// Distance histograms of all `n` sets `C_i` from a single BFS, indexed by
/// `i - 1`.
pub fn eset_histograms(n: usize) -> Result<Vec<Vec<u64>>, Error> {
    if n > 9 {
        return Err(Error::ResourceGuard(format!(
            "eset histograms support n <= 9, got {n}"
        )));
    }
    let result = bfs(n)?;
    let mut counts = vec![vec![0u64; result.max_distance + 1]; n];
    let mut buf = Vec::with_capacity(n);
    for rank in 0..result.vertex_count() {
        perm_unrank(n, rank, &mut buf);
        counts[buf[0] as usize - 1][result.distance_of_rank(rank)] += 1;
    }
    Ok(counts)
}

/// One named check with its outcome.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub details: String,
}

/// Machine-readable verification outcome; exit status derives from
/// [`VerificationReport::all_pass`].
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
    /// Informational notes that gate nothing.
    pub diagnostics: Vec<String>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn push(&mut self, name: impl Into<String>, pass: bool, details: impl Into<String>) {
        self.checks.push(CheckResult {
            name: name.into(),
            pass,
            details: details.into(),
        });
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
        self.diagnostics.extend(other.diagnostics);
    }
}

/// Scans every edge of `ST_n` and checks the threaded orientation against
/// it:
///
/// 1. no edge joins two words of the same class, and every edge changes the
///    weight by exactly one, so orienting by weight directs each edge once;
/// 2. at most one arc joins any class pair, always from the lighter class;
/// 3. class sizes equal the tree cardinalities;
/// 4. horizontal-arc fibers have size `c(head)`, grouped as `c(tail)` tail
///    bundles of `m` with every head vertex covered exactly once;
/// 5. vertical and thread fibers have size `c(tail)`, one closing edge per
///    tail vertex, with every head vertex receiving exactly the arc's
///    divisor.
///
/// Class pairs adjacent in the quotient but carrying no arc (partial splits
/// of 1's cycle) are reported as diagnostics; the orientation does not
/// cover them and cannot.
pub fn verify_quotient(n: usize, gamma: &GammaGraph) -> Result<VerificationReport, Error> {
    if !(2..=8).contains(&n) {
        return Err(Error::ResourceGuard(format!(
            "full edge scan supports 2 <= n <= 8, got {n}"
        )));
    }
    if gamma.n() != n {
        return Err(Error::InvalidArgument(format!(
            "graph is for n={}, asked to verify n={n}",
            gamma.n()
        )));
    }
    let mut report = VerificationReport::default();

    let ids: Vec<IndexString> = gamma.nodes().map(|node| node.id.clone()).collect();
    let node_index: HashMap<IndexString, usize> = ids
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, s)| (s, i))
        .collect();
    let weights: Vec<usize> = gamma.nodes().map(|node| node.weight).collect();
    let cards: Vec<u64> = gamma
        .nodes()
        .map(|node| u64::try_from(&node.card).expect("class sizes fit u64 for n <= 8"))
        .collect();

    // arc lookup by (tail, head) node index
    let mut arc_of: HashMap<(usize, usize), usize> = HashMap::new();
    let mut pair_ok = true;
    for (a, arc) in gamma.arcs().iter().enumerate() {
        let from = node_index[&arc.from];
        let to = node_index[&arc.to];
        if weights[to] != weights[from] + 1 {
            pair_ok = false;
        }
        if arc_of.insert((from, to), a).is_some() || arc_of.contains_key(&(to, from)) {
            pair_ok = false;
        }
    }
    report.push(
        "unique_arc_per_pair",
        pair_ok,
        format!(
            "{} arcs, each the unique connection of its class pair, directed by weight",
            gamma.arcs().len()
        ),
    );

    // class index of every permutation
    let total = factorial_u64(n) as usize;
    let mut class_of = vec![0u32; total];
    let mut class_sizes = vec![0u64; ids.len()];
    let mut buf = Vec::with_capacity(n);
    for (rank, slot) in class_of.iter_mut().enumerate() {
        perm_unrank(n, rank, &mut buf);
        let p = Permutation::from_entries(buf.iter().map(|&v| v as u32).collect())
            .expect("unrank yields valid words");
        let s = crate::lambda::string_of_perm(&p);
        let idx = *node_index
            .get(&s)
            .ok_or_else(|| Error::InvalidArgument(format!("class {s} missing from graph")))?;
        *slot = idx as u32;
        class_sizes[idx] += 1;
    }
    let sizes_ok = class_sizes == cards;
    report.push(
        "class_sizes",
        sizes_ok,
        if sizes_ok {
            format!("all {} class sizes equal the tree cardinalities", ids.len())
        } else {
            "class size mismatch against tree cardinalities".into()
        },
    );

    // full edge scan
    let mut loops = 0u64;
    let mut bad_weight_steps = 0u64;
    let mut covered_edges = 0u64;
    let mut uncovered_edges = 0u64;
    let mut uncovered_pairs: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    let mut arc_edges = vec![0u64; gamma.arcs().len()];
    let mut tail_degrees: Vec<HashMap<u32, u32>> = vec![HashMap::new(); gamma.arcs().len()];
    let mut head_degrees: Vec<HashMap<u32, u32>> = vec![HashMap::new(); gamma.arcs().len()];
    for rank in 0..total {
        perm_unrank(n, rank, &mut buf);
        for i in 1..n {
            buf.swap(0, i);
            let other = perm_rank(&buf);
            buf.swap(0, i);
            if other <= rank {
                continue; // each edge once
            }
            let cu = class_of[rank] as usize;
            let cv = class_of[other] as usize;
            if cu == cv {
                loops += 1;
                continue;
            }
            let (lo, hi, lo_rank, hi_rank) = if weights[cu] < weights[cv] {
                (cu, cv, rank, other)
            } else {
                (cv, cu, other, rank)
            };
            if weights[hi] != weights[lo] + 1 {
                bad_weight_steps += 1;
                continue;
            }
            match arc_of.get(&(lo, hi)) {
                Some(&a) => {
                    covered_edges += 1;
                    arc_edges[a] += 1;
                    *tail_degrees[a].entry(lo_rank as u32).or_insert(0) += 1;
                    *head_degrees[a].entry(hi_rank as u32).or_insert(0) += 1;
                }
                None => {
                    uncovered_edges += 1;
                    *uncovered_pairs.entry((lo, hi)).or_insert(0) += 1;
                }
            }
        }
    }
    report.push(
        "no_loops",
        loops == 0,
        format!("{loops} edges join words of one class"),
    );
    report.push(
        "weight_step",
        bad_weight_steps == 0,
        "every edge moves the weight by exactly one".to_string(),
    );

    let mut horizontal_ok = true;
    let mut closing_ok = true;
    let mut notes = Vec::new();
    for (a, arc) in gamma.arcs().iter().enumerate() {
        let from = node_index[&arc.from];
        let to = node_index[&arc.to];
        match arc.kind {
            GammaArcKind::Horizontal => {
                let m = gamma.node(&arc.from).unwrap().mult as u32;
                let ok = arc_edges[a] == cards[to]
                    && tail_degrees[a].len() as u64 == cards[from]
                    && tail_degrees[a].values().all(|&d| d == m)
                    && head_degrees[a].len() as u64 == cards[to]
                    && head_degrees[a].values().all(|&d| d == 1);
                if !ok {
                    horizontal_ok = false;
                    notes.push(format!("horizontal fiber broken at {}", arc.from));
                }
            }
            GammaArcKind::Vertical | GammaArcKind::Thread => {
                let d = arc.class_divisor.expect("closing arcs carry divisors") as u32;
                let ok = arc_edges[a] == cards[from]
                    && tail_degrees[a].len() as u64 == cards[from]
                    && tail_degrees[a].values().all(|&deg| deg == 1)
                    && head_degrees[a].len() as u64 == cards[to]
                    && head_degrees[a].values().all(|&deg| deg == d);
                if !ok {
                    closing_ok = false;
                    notes.push(format!("closing fiber broken at {}", arc.from));
                }
            }
        }
    }
    report.push(
        "horizontal_fibers",
        horizontal_ok,
        if horizontal_ok {
            "every horizontal fiber has size c(head) in c(tail) bundles of m".into()
        } else {
            notes.join("; ")
        },
    );
    report.push(
        "closing_fibers",
        closing_ok,
        if closing_ok {
            "every vertical/thread fiber has size c(tail), heads receiving the divisor".into()
        } else {
            notes.join("; ")
        },
    );

    let total_edges = (factorial_u64(n) * (n as u64 - 1)) / 2;
    report.diagnostics.push(format!(
        "n={n}: {covered_edges}/{total_edges} edges lie over the {} arcs; \
         {uncovered_edges} edges over {} class pairs are partial splits of 1's cycle \
         and carry no arc",
        gamma.arcs().len(),
        uncovered_pairs.len()
    ));
    if n >= 4 {
        if let Some(((lo, hi), count)) = uncovered_pairs.iter().next() {
            report.diagnostics.push(format!(
                "example uncovered pair: {} -- {} ({count} edges)",
                ids[*lo], ids[*hi]
            ));
        }
    }
    Ok(report)
}

/// Cheap adjacency check for a thread, without any BFS: closing 1's cycle
/// in the tail's representative must land in the head's class.
pub fn thread_spot_check(gamma: &GammaGraph) -> VerificationReport {
    let mut report = VerificationReport::default();
    let mut ok = true;
    let mut checked = 0;
    for arc in gamma.threads() {
        let tail = gamma.node(&arc.from).expect("thread tail in graph");
        let closed = tail.sigma.close_one_cycle();
        if crate::lambda::string_of_perm(&closed) != arc.to {
            ok = false;
        }
        checked += 1;
    }
    report.push(
        "thread_adjacency",
        ok,
        format!("{checked} threads join adjacent classes (closing the representative)"),
    );
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lambda::generate_pruned;
    use crate::threading::build_gamma;

    #[test]
    fn rank_unrank_round_trip() {
        let n = 6;
        let mut buf = Vec::new();
        for rank in 0..factorial_u64(n) as usize {
            perm_unrank(n, rank, &mut buf);
            assert_eq!(perm_rank(&buf), rank);
        }
    }

    #[test]
    fn identity_ranks_zero() {
        assert_eq!(perm_rank(&[1, 2, 3, 4, 5]), 0);
    }

    #[test]
    fn bfs_small_histograms() {
        assert_eq!(bfs(2).unwrap().histogram, vec![1, 1]);
        assert_eq!(bfs(4).unwrap().histogram, vec![1, 3, 6, 9, 5]);
        assert_eq!(bfs(5).unwrap().histogram, vec![1, 4, 12, 30, 44, 26, 3]);
    }

    #[test]
    fn bfs_guard() {
        assert!(bfs(1).is_err());
        assert!(bfs(11).is_err());
    }

    #[test]
    fn class_histogram_examples() {
        let classes = class_histogram(4).unwrap();
        let key = IcsKey::new(3, vec![]).unwrap();
        assert_eq!(
            classes[&key],
            ClassInfo {
                distance: 2,
                size: 6
            }
        );
        let key = IcsKey::new(1, vec![2]).unwrap();
        assert_eq!(
            classes[&key],
            ClassInfo {
                distance: 3,
                size: 3
            }
        );
        let classes = class_histogram(2).unwrap();
        let key = IcsKey::new(2, vec![]).unwrap();
        assert_eq!(
            classes[&key],
            ClassInfo {
                distance: 1,
                size: 1
            }
        );
    }

    #[test]
    fn class_count_matches_tree() {
        for n in 2..=7 {
            let classes = class_histogram(n).unwrap();
            let tree = generate_pruned(n).unwrap();
            assert_eq!(classes.len(), tree.node_count(), "n={n}");
        }
    }

    #[test]
    fn eset_histogram_examples() {
        assert_eq!(eset_histogram(4, 2).unwrap(), vec![0, 1, 2, 2, 1]);
        assert_eq!(eset_histogram(4, 1).unwrap(), vec![1, 0, 0, 3, 2]);
        // frozen oracle regression: C_3 of ST_3 = {321@1, 312@2}, D(3) = 3
        assert_eq!(eset_histogram(3, 3).unwrap(), vec![0, 1, 1, 0]);
        assert!(eset_histogram(4, 5).is_err());
    }

    #[test]
    fn quotient_small() {
        for n in 2..=5 {
            let gamma = build_gamma(n).unwrap();
            let report = verify_quotient(n, &gamma).unwrap();
            assert!(report.all_pass(), "n={n}: {report:?}");
        }
    }

    #[test]
    fn quotient_guard() {
        let gamma = build_gamma(9).unwrap();
        assert!(verify_quotient(9, &gamma).is_err());
    }

    #[test]
    fn spot_check_threads_n9() {
        let gamma = build_gamma(9).unwrap();
        let report = thread_spot_check(&gamma);
        assert!(report.all_pass());
    }
}
