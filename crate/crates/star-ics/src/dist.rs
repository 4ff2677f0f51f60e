//! Exact weight distributions of `ST_n` and of its efficient dominating
//! sets, the diameter and antipode counts, and the counting functions
//! `S`, `W`.
//!
//! Ground truth throughout is enumeration of admissible strings with exact
//! big-integer class counting. The binomial-sum and subtraction closed
//! forms for the per-length string counts do not agree with enumeration,
//! so they are kept as experimental functions and compared, never
//! asserted; see [`closed_form_comparison`].

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::Error;
use crate::lambda::{for_each_class, index};

/// Which objects a distribution counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistributionKind {
    /// Permutations of `S_n`; sums to `n!`.
    Vertices,
    /// Classes (tree vertices); sums to the node count.
    Classes,
}

/// Exact counts per weight `0..=D(n)`. Every weight is realized, so every
/// entry is positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDistribution {
    pub n: usize,
    pub kind: DistributionKind,
    counts: Vec<BigUint>,
}

impl WeightDistribution {
    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn sum(&self) -> BigUint {
        self.counts.iter().sum()
    }
}

/// Weight distribution of one efficient dominating set `C_i`. Sums to
/// `(n-1)!`; zeros are allowed (weight 0 is unrealized for `i >= 2`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EsetDistribution {
    pub n: usize,
    pub symbol: usize,
    counts: Vec<BigUint>,
}

impl EsetDistribution {
    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn sum(&self) -> BigUint {
        self.counts.iter().sum()
    }
}

/// Diameter of `ST_n`: `floor((n-1)/2) + n - 1`.
pub fn diameter(n: usize) -> Result<usize, Error> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n must be >= 2, got {n}")));
    }
    Ok((n - 1) / 2 + n - 1)
}

/// Exact number of permutations per weight: the class cardinalities summed
/// over the admissible strings of each weight.
pub fn vertex_weight_distribution(n: usize) -> Result<WeightDistribution, Error> {
    vertex_weight_distribution_with_threads(n, 1)
}

/// Same, with the enumeration split over up to `threads` worker threads
/// (one task per top-level vertical subtree). Results are identical for
/// every thread count.
pub fn vertex_weight_distribution_with_threads(
    n: usize,
    threads: usize,
) -> Result<WeightDistribution, Error> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n must be >= 2, got {n}")));
    }
    let d = diameter(n)?;
    let mut counts = vec![BigUint::zero(); d + 1];

    if threads <= 1 {
        for_each_class(n, &mut |_, weight, card| {
            counts[weight] += card;
        });
    } else {
        // The root mhdp is the chain 0..n-1; every other node lives in the
        // vertical subtree hanging below some chain node k >= 2. Each
        // subtree is independent, so they parallelize cleanly.
        let mut chain_card = BigUint::one();
        let mut tasks: Vec<(usize, BigUint)> = Vec::new();
        for (k, slot) in counts.iter_mut().enumerate().take(n) {
            *slot += &chain_card;
            if index::vertical_multiplier(&[k]) > 0 {
                tasks.push((k, exact_div(&chain_card, index::class_divisor(&[k]))));
            }
            if k + 1 >= n {
                break;
            }
            chain_card *= n - 1 - k;
        }
        let workers = threads.min(tasks.len().max(1));
        let chunks: Vec<Vec<(usize, BigUint)>> = split_round_robin(tasks, workers);
        let partials: Vec<Vec<BigUint>> = std::thread::scope(|scope| {
            let handles: Vec<_> = chunks
                .into_iter()
                .map(|chunk| {
                    scope.spawn(move || {
                        let mut local = vec![BigUint::zero(); d + 1];
                        for (k, card) in chunk {
                            subtree_counts(n, vec![k, k], card, &mut local);
                        }
                        local
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        for partial in partials {
            for (slot, value) in counts.iter_mut().zip(partial) {
                *slot += value;
            }
        }
    }

    assert!(
        counts.iter().all(|c| !c.is_zero()),
        "unrealized weight in distribution for n={n}"
    );
    Ok(WeightDistribution {
        n,
        kind: DistributionKind::Vertices,
        counts,
    })
}

fn split_round_robin<T>(items: Vec<T>, ways: usize) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = (0..ways).map(|_| Vec::new()).collect();
    for (i, item) in items.into_iter().enumerate() {
        out[i % ways].push(item);
    }
    out
}

fn exact_div(card: &BigUint, divisor: usize) -> BigUint {
    use num_integer::Integer;
    let (q, r) = card.div_rem(&BigUint::from(divisor));
    assert!(r.is_zero(), "non-exact division: {card} / {divisor}");
    q
}

fn subtree_counts(n: usize, mut root: Vec<usize>, card: BigUint, counts: &mut [BigUint]) {
    fn rec(n: usize, idx: &mut Vec<usize>, card: BigUint, counts: &mut [BigUint]) {
        let last = *idx.last().unwrap();
        counts[last + idx.len() - 1] += &card;
        if last < n - 1 {
            let grown = &card * (n - 1 - last);
            *idx.last_mut().unwrap() += 1;
            rec(n, idx, grown, counts);
            *idx.last_mut().unwrap() -= 1;
        }
        if index::vertical_multiplier(idx) > 0 {
            let q = exact_div(&card, index::class_divisor(idx));
            idx.push(last);
            rec(n, idx, q, counts);
            idx.pop();
        }
    }
    rec(n, &mut root, card, counts);
}

/// Number of admissible strings (classes) per weight.
pub fn class_weight_distribution(n: usize) -> Result<WeightDistribution, Error> {
    let d = diameter(n)?;
    let mut counts = vec![BigUint::zero(); d + 1];
    crate::lambda::for_each_admissible(n, &mut |idx| {
        let weight = idx.last().unwrap() + idx.len() - 1;
        counts[weight] += 1u32;
    });
    assert!(counts.iter().all(|c| !c.is_zero()));
    Ok(WeightDistribution {
        n,
        kind: DistributionKind::Classes,
        counts,
    })
}

/// Number of antipodes (vertices at diameter distance) for odd `n`:
/// `(n-2)(n-4)…3`, the size of the single class of `floor(n/2)`
/// transpositions with 1 fixed.
pub fn antipode_count(n: usize) -> Result<BigUint, Error> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "antipode count takes odd n >= 3, got {n}"
        )));
    }
    let mut product = BigUint::one();
    let mut f = n - 2;
    while f >= 3 {
        product *= f;
        f -= 2;
    }
    Ok(product)
}

/// Weight distribution of the efficient dominating set `C_i` of `ST_n`.
///
/// For `i >= 2` this is the distribution of `ST_{n-1}` shifted up by one
/// weight. `C_1` is whatever remains after subtracting the `n-1` identical
/// shifted copies from the full distribution.
pub fn eset_distribution(n: usize, i: usize) -> Result<EsetDistribution, Error> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("n must be >= 3, got {n}")));
    }
    if i < 1 || i > n {
        return Err(Error::InvalidArgument(format!(
            "symbol {i} out of range 1..={n}"
        )));
    }
    let d = diameter(n)?;
    if i >= 2 {
        let prev = vertex_weight_distribution(n - 1)?;
        let mut counts = vec![BigUint::zero(); d + 1];
        for (w, c) in prev.counts().iter().enumerate() {
            counts[w + 1] = c.clone();
        }
        return Ok(EsetDistribution {
            n,
            symbol: i,
            counts,
        });
    }
    let full = vertex_weight_distribution(n)?;
    let shifted = eset_distribution(n, 2)?;
    let counts = full
        .counts()
        .iter()
        .zip(shifted.counts())
        .map(|(total, one)| {
            let used = one * (n - 1);
            assert!(used <= *total, "E-set subtraction went negative");
            total - used
        })
        .collect();
    Ok(EsetDistribution {
        n,
        symbol: 1,
        counts,
    })
}

/// `S_j^h`: 1 when `h = 0` (and `j >= 1`), 0 when `j <= 0`, otherwise the
/// binomial `C(j+h-1, h)`.
pub fn s_closed(j: i64, h: usize) -> BigUint {
    if j <= 0 {
        return BigUint::zero();
    }
    if h == 0 {
        return BigUint::one();
    }
    binomial((j as usize) + h - 1, h)
}

/// `S_j^h` by the defining recurrence `S_j^h = sum_{k=1}^{j} S_k^{h-1}`.
pub fn s_recurrence(j: i64, h: usize) -> BigUint {
    if j <= 0 {
        return BigUint::zero();
    }
    let j = j as usize;
    let mut row: Vec<BigUint> = vec![BigUint::one(); j]; // h = 0
    for _ in 1..=h {
        let mut acc = BigUint::zero();
        let mut next = Vec::with_capacity(j);
        for value in &row {
            acc += value;
            next.push(acc.clone());
        }
        row = next;
    }
    row[j - 1].clone()
}

fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut result = BigUint::one();
    for i in 0..k {
        result = result * (n - i) / (i + 1);
    }
    result
}

/// Number of admissible strings of weight `omega` with exactly `lambda`
/// indices, optionally restricted to `ST_n` (`i_j <= n-1`). Exact
/// enumeration: partitions of `m` into `lambda - 1` parts `>= 2` with
/// `m <= omega - lambda + 1`, the final t-value absorbing the rest.
pub fn w_enum(omega: usize, lambda: usize, n: Option<usize>) -> BigUint {
    assert!(lambda >= 1, "strings have at least one index");
    if omega + 1 < lambda {
        return BigUint::zero();
    }
    let i_j = omega - (lambda - 1);
    if let Some(n) = n {
        if i_j > n - 1 {
            return BigUint::zero();
        }
    }
    BigUint::from(count_prefix_partitions(lambda - 1, i_j, 2))
}

// partitions with exactly `parts` nondecreasing parts >= min_part and sum <= budget
fn count_prefix_partitions(parts: usize, budget: usize, min_part: usize) -> u64 {
    if parts == 0 {
        return 1;
    }
    let mut total = 0;
    let mut p = min_part;
    while p * parts <= budget {
        total += count_prefix_partitions(parts - 1, budget - p, p);
        p += 1;
    }
    total
}

/// The binomial-sum closed form
/// `W(omega, k) = sum_i S_{omega - i(k+1)}^k`, `0 <= i <= omega/(k+1)`.
/// Experimental only; disagrees with [`w_enum`] (see
/// [`closed_form_comparison`]).
pub fn w_closed(omega: usize, k: usize) -> BigUint {
    assert!(k >= 1);
    let mut total = BigUint::zero();
    for i in 0..=omega / (k + 1) {
        total += s_closed(omega as i64 - (i * (k + 1)) as i64, k);
    }
    total
}

/// Bounded string count for `ST_n`; enumeration with the `i_j <= n-1` cut.
pub fn w_restricted(omega: usize, lambda: usize, n: usize) -> BigUint {
    w_enum(omega, lambda, Some(n))
}

/// The subtraction closed form
/// `W(omega, k, n) = W(omega, k) - sum_{j=1}^{k-n} W(omega, j)` for
/// `n <= k`. Experimental only; can go negative.
pub fn w_restricted_subtraction(omega: usize, k: usize, n: usize) -> BigInt {
    let mut total = BigInt::from(w_closed(omega, k));
    if k >= n {
        for j in 1..=(k - n) {
            total -= BigInt::from(w_closed(omega, j));
        }
    }
    total
}

/// One row of the divergence report.
#[derive(Clone, Debug)]
pub struct ClosedFormRow {
    pub omega: usize,
    pub k: usize,
    pub closed: BigUint,
    pub enumerated: BigUint,
    pub matches: bool,
}

/// One row comparing the bounded enumeration against the subtraction form.
#[derive(Clone, Debug)]
pub struct RestrictedFormRow {
    pub omega: usize,
    pub k: usize,
    pub n: usize,
    pub enumerated: BigUint,
    pub subtraction: BigInt,
    pub matches: bool,
}

/// Runs the subtraction closed form against bounded enumeration for the
/// lengths it covers (`n <= k <= D(n)`). Logged, never asserted.
pub fn restricted_form_comparison(n: usize) -> Result<Vec<RestrictedFormRow>, Error> {
    let d = diameter(n)?;
    let mut rows = Vec::new();
    for k in n..=d {
        for omega in 0..=d {
            let enumerated = w_restricted(omega, k, n);
            let subtraction = w_restricted_subtraction(omega, k, n);
            rows.push(RestrictedFormRow {
                omega,
                k,
                n,
                matches: BigInt::from(enumerated.clone()) == subtraction,
                enumerated,
                subtraction,
            });
        }
    }
    Ok(rows)
}

/// Runs the binomial-sum closed form against exact enumeration over a
/// grid of weights and lengths. The two disagree (e.g. weight 6, length 2:
/// 27 vs 4); the report documents that divergence.
pub fn closed_form_comparison(max_omega: usize, max_k: usize) -> Vec<ClosedFormRow> {
    let mut rows = Vec::new();
    for omega in 0..=max_omega {
        for k in 1..=max_k {
            let closed = w_closed(omega, k);
            let enumerated = w_enum(omega, k, None);
            rows.push(ClosedFormRow {
                omega,
                k,
                matches: closed == enumerated,
                closed,
                enumerated,
            });
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts_u64(d: &WeightDistribution) -> Vec<u64> {
        d.counts()
            .iter()
            .map(|c| u64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn diameter_examples() {
        assert_eq!(diameter(2).unwrap(), 1);
        assert_eq!(diameter(4).unwrap(), 4);
        assert_eq!(diameter(9).unwrap(), 12);
        assert!(diameter(1).is_err());
    }

    #[test]
    fn vertex_distribution_small() {
        assert_eq!(
            counts_u64(&vertex_weight_distribution(4).unwrap()),
            vec![1, 3, 6, 9, 5]
        );
        assert_eq!(
            counts_u64(&vertex_weight_distribution(5).unwrap()),
            vec![1, 4, 12, 30, 44, 26, 3]
        );
        assert_eq!(
            counts_u64(&vertex_weight_distribution(2).unwrap()),
            vec![1, 1]
        );
    }

    #[test]
    fn threaded_enumeration_agrees() {
        for threads in [2, 3, 8] {
            assert_eq!(
                vertex_weight_distribution_with_threads(11, threads).unwrap(),
                vertex_weight_distribution(11).unwrap()
            );
        }
    }

    #[test]
    fn class_distribution_small() {
        assert_eq!(
            counts_u64(&class_weight_distribution(4).unwrap()),
            vec![1, 1, 1, 2, 2]
        );
        assert_eq!(
            counts_u64(&class_weight_distribution(2).unwrap()),
            vec![1, 1]
        );
        let d9 = class_weight_distribution(9).unwrap();
        assert_eq!(d9.counts()[12], BigUint::one());
    }

    #[test]
    fn antipode_examples() {
        assert_eq!(antipode_count(3).unwrap(), BigUint::one());
        assert_eq!(antipode_count(5).unwrap(), BigUint::from(3u32));
        assert_eq!(antipode_count(7).unwrap(), BigUint::from(15u32));
        assert_eq!(antipode_count(9).unwrap(), BigUint::from(105u32));
        assert!(antipode_count(4).is_err());
    }

    #[test]
    fn eset_examples() {
        let e = eset_distribution(4, 2).unwrap();
        assert_eq!(
            e.counts()
                .iter()
                .map(|c| u64::try_from(c).unwrap())
                .collect::<Vec<_>>(),
            vec![0, 1, 2, 2, 1]
        );
        let e1 = eset_distribution(4, 1).unwrap();
        assert_eq!(
            e1.counts()
                .iter()
                .map(|c| u64::try_from(c).unwrap())
                .collect::<Vec<_>>(),
            vec![1, 0, 0, 3, 2]
        );
        for i in 1..=4 {
            assert_eq!(eset_distribution(4, i).unwrap().sum(), BigUint::from(6u32));
        }
        assert!(eset_distribution(4, 5).is_err());
        assert!(eset_distribution(4, 0).is_err());
    }

    #[test]
    fn s_examples() {
        for j in 1..=8 {
            assert_eq!(s_closed(j, 0), BigUint::one());
        }
        assert_eq!(s_closed(2, 2), BigUint::from(3u32));
        assert_eq!(s_recurrence(2, 2), BigUint::from(3u32));
        for k in 0..=6 {
            assert_eq!(s_closed(1, k), BigUint::one());
        }
        assert_eq!(s_closed(0, 3), BigUint::zero());
        assert_eq!(s_closed(-2, 3), BigUint::zero());
    }

    #[test]
    fn w_enum_examples() {
        assert_eq!(w_enum(6, 2, None), BigUint::from(4u32)); // 25, 35, 45, 55
        assert_eq!(w_enum(9, 3, None), BigUint::from(6u32));
        assert_eq!(w_enum(0, 1, None), BigUint::one());
    }

    #[test]
    fn w_closed_examples() {
        assert_eq!(w_closed(6, 2), BigUint::from(27u32));
        assert_eq!(w_closed(0, 1), BigUint::zero());
    }

    #[test]
    fn w_restricted_examples() {
        assert_eq!(w_restricted(12, 5, 9), BigUint::one()); // 24688 only
        assert_eq!(w_enum(12, 5, None), BigUint::one());
        assert_eq!(w_restricted(3, 2, 3), BigUint::one()); // string 22
        assert_eq!(w_restricted(3, 2, 2), BigUint::zero());
    }

    #[test]
    fn w_enum_sums_to_class_distribution() {
        for n in 2..=10 {
            let classes = class_weight_distribution(n).unwrap();
            for (omega, expected) in classes.counts().iter().enumerate() {
                let total: BigUint = (1..=omega + 1).map(|l| w_enum(omega, l, Some(n))).sum();
                assert_eq!(&total, expected, "n={n} omega={omega}");
            }
        }
    }

    #[test]
    fn eset_partition_reassembles_the_distribution() {
        // the n sets C_i partition the vertex set
        for n in [6usize, 10] {
            let full = vertex_weight_distribution(n).unwrap();
            let mut total = vec![BigUint::zero(); full.counts().len()];
            for i in 1..=n {
                for (slot, c) in total
                    .iter_mut()
                    .zip(eset_distribution(n, i).unwrap().counts())
                {
                    *slot += c;
                }
            }
            assert_eq!(&total[..], full.counts(), "n={n}");
        }
    }

    #[test]
    fn restricted_form_comparison_runs() {
        // experiment output only: produced and well-formed, nothing asserted
        // about agreement
        let rows = restricted_form_comparison(9).unwrap();
        assert!(!rows.is_empty());
        assert!(rows.iter().all(|r| r.n == 9 && r.k >= 9));
    }

    #[test]
    fn divergence_report_contains_the_example() {
        let rows = closed_form_comparison(8, 3);
        let row = rows.iter().find(|r| r.omega == 6 && r.k == 2).unwrap();
        assert_eq!(row.closed, BigUint::from(27u32));
        assert_eq!(row.enumerated, BigUint::from(4u32));
        assert!(!row.matches);
    }
}
