//! The class tree `Λ_n`: one vertex per 1-invariant cycle structure of
//! `S_n`, horizontal arcs extending the cycle containing the symbol 1 by a
//! fixed point, vertical arcs closing it.
//!
//! The tree exists in two forms. The axiom-generated form spawns a vertical
//! child wherever the last t-value is at least 2 and contains duplicate
//! classes; the pruning scan ([`prune`]) removes every vertical subtree
//! whose cycle tuple already occurred, leaving exactly the admissible
//! strings that [`generate_pruned`] enumerates directly. Class cardinalities
//! follow the arcs: multiply by `m = n - 1 - i_j` along horizontal arcs,
//! divide exactly by `d = t_j * mult(t_j)` along vertical ones.

pub(crate) mod index;
mod table;
mod tree;

pub use index::{IndexString, ParentArc};
pub use table::{path_to_root, table_t, PathStep, StepArc, TableRow, WeightTable};
pub use tree::{
    generate_pruned, generate_unpruned, ledger, prune, ArcKind, LambdaArc, LambdaNode, LambdaTree,
    LedgerRow,
};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::perm::{IcsKey, Permutation};

/// Closed-form attributes of an admissible string in `Λ_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NodeAttrs {
    /// Distance of the class to the identity: `i_j + j`.
    pub weight: usize,
    /// String length of the representative word: `i_j + 1`.
    pub ell: usize,
    /// Horizontal multiplier: `n - i_j - 1`.
    pub mult: usize,
    /// Final t-value.
    pub a: usize,
    /// Vertical multiplier; 0 when the vertical child is pruned.
    pub b: usize,
    /// `b * a`, the divisor on the outgoing vertical arc (0 if none).
    pub d: usize,
}

/// Computes the per-node attributes of an admissible string.
pub fn node_attrs(s: &IndexString, n: usize) -> Result<NodeAttrs, Error> {
    if !s.is_admissible(n) {
        return Err(Error::NotAdmissible {
            string: s.to_string(),
            n,
        });
    }
    let a = s.last_t();
    let b = s.vertical_multiplier();
    Ok(NodeAttrs {
        weight: s.last() + s.depth(),
        ell: s.last() + 1,
        mult: n - 1 - s.last(),
        a,
        b,
        d: a * b,
    })
}

/// Class cardinality by the root-path product: the product `M` of the
/// horizontal multipliers over horizontal-arc tails divided by the product
/// of the vertical divisors. The division is exact; a remainder would mean
/// the tree bookkeeping is broken, so it aborts.
pub fn class_size(s: &IndexString, n: usize) -> Result<BigUint, Error> {
    if !s.is_admissible(n) {
        return Err(Error::NotAdmissible {
            string: s.to_string(),
            n,
        });
    }
    let mut numerator = BigUint::one();
    let mut denominator = BigUint::one();
    let mut cur = s.clone();
    while let Some((parent, kind)) = cur.parent() {
        match kind {
            ParentArc::Horizontal => numerator *= n - 1 - parent.last(),
            ParentArc::Vertical => denominator *= parent.class_divisor(),
        }
        cur = parent;
    }
    let (q, r) = numerator.div_rem(&denominator);
    assert!(
        r.is_zero(),
        "non-exact class division at {s} for n={n}: {numerator} / {denominator}"
    );
    Ok(q)
}

/// Independent combinatorial count of a class: ordered choices for the
/// cycle containing 1 times the number of permutations of the remaining
/// symbols with the prescribed proper-cycle multiset,
/// `(n-1)! / ((n-1-i_j)! * prod(l^mult_l * mult_l!))`.
pub fn class_size_closed(key: &IcsKey, n: usize) -> Result<BigUint, Error> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n must be >= 2, got {n}")));
    }
    if !key.fits_in(n) {
        return Err(Error::InvalidArgument(format!(
            "class {key} does not fit in S_{n}"
        )));
    }
    let i_j = key.one_cycle() - 1 + key.others().iter().sum::<usize>();
    // falling factorial (n-1)(n-2)…(n-i_j)
    let mut numerator = BigUint::one();
    for f in (n - i_j)..n {
        numerator *= f;
    }
    let mut denominator = BigUint::one();
    let mut run = 0usize;
    let mut prev = 0usize;
    for &l in key.others() {
        if l == prev {
            run += 1;
        } else {
            prev = l;
            run = 1;
        }
        denominator *= l * run; // accumulates l^mult * mult! across each run
    }
    let (q, r) = numerator.div_rem(&denominator);
    assert!(
        r.is_zero(),
        "non-exact closed-form division for {key}, n={n}"
    );
    Ok(q)
}

/// Canonical index string of a word's class: prefix t-values are the sorted
/// other-cycle lengths, the final t-value is one less than 1's cycle length.
/// The identity maps to the root.
pub fn string_of_perm(p: &Permutation) -> IndexString {
    p.ics_key().index_string()
}

/// Depth-first walk over all admissible strings for `ST_n`, in tree order
/// (each node before its children, horizontal before vertical).
pub fn for_each_admissible(n: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(n: usize, idx: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        f(idx);
        let last = *idx.last().unwrap();
        if last < n - 1 {
            *idx.last_mut().unwrap() += 1;
            rec(n, idx, f);
            *idx.last_mut().unwrap() -= 1;
        }
        if index::vertical_multiplier(idx) > 0 {
            idx.push(last);
            rec(n, idx, f);
            idx.pop();
        }
    }
    assert!(n >= 2, "n must be >= 2");
    rec(n, &mut vec![0], f);
}

/// Like [`for_each_admissible`], additionally carrying each node's weight
/// and exact class cardinality, maintained incrementally along the arcs.
pub fn for_each_class(n: usize, f: &mut impl FnMut(&[usize], usize, &BigUint)) {
    fn rec(
        n: usize,
        idx: &mut Vec<usize>,
        card: BigUint,
        f: &mut impl FnMut(&[usize], usize, &BigUint),
    ) {
        let last = *idx.last().unwrap();
        f(idx, last + idx.len() - 1, &card);
        if last < n - 1 {
            let grown = &card * (n - 1 - last);
            *idx.last_mut().unwrap() += 1;
            rec(n, idx, grown, f);
            *idx.last_mut().unwrap() -= 1;
        }
        if index::vertical_multiplier(idx) > 0 {
            let d = index::class_divisor(idx);
            let (q, r) = card.div_rem(&BigUint::from(d));
            assert!(r.is_zero(), "non-exact division under {idx:?} for n={n}");
            idx.push(last);
            rec(n, idx, q, f);
            idx.pop();
        }
    }
    assert!(n >= 2, "n must be >= 2");
    rec(n, &mut vec![0], BigUint::one(), f);
}

/// Column sizes of the axiom-generated (unpruned) tree for `ST_n`, indexed
/// by the final index `i_j = 0..n-1`. Counted by explicit enumeration of
/// the spawn rule, not by any closed form.
pub fn unpruned_column_counts(n: usize) -> Vec<u64> {
    fn rec(prefix_sum: usize, n: usize, counts: &mut [u64]) {
        for slot in counts.iter_mut().take(n).skip(prefix_sum) {
            *slot += 1;
        }
        let mut part = 2;
        while prefix_sum + part < n {
            rec(prefix_sum + part, n, counts);
            part += 1;
        }
    }
    assert!(n >= 2, "n must be >= 2");
    let mut counts = vec![0u64; n];
    rec(0, n, &mut counts);
    counts
}
