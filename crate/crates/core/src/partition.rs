//! Integer partitions, strict partitions, interlacing, and plane-partition
//! counting.
//!
//! # Key operations
//! - `interlaces`: the horizontal-strip condition `mu_i >= nu_i >= mu_{i+1}`
//! - `enumerate_rectangle`: all (strict) partitions in an `[N, M]` box in
//!   canonical order (weight ascending, then reverse-lexicographic on parts)
//! - `plane_partition_count`: direct enumeration of weakly decreasing arrays

use thiserror::Error;

/// Errors from the partition module.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    /// Direct plane-partition enumeration is capped to stay fast.
    #[error("n = {n} exceeds the enumeration bound {bound}")]
    BoundExceeded { n: u32, bound: u32 },
}

/// A partition: weakly decreasing positive parts. The empty partition is
/// `Partition::empty()`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Builds from parts, asserting they are weakly decreasing and positive.
    pub fn new(parts: Vec<u32>) -> Self {
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]) && parts.iter().all(|&p| p > 0),
            "parts must be weakly decreasing and positive: {parts:?}"
        );
        Partition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    /// Sum of parts.
    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// `i`-th part, 1-based, zero beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        if i >= 1 && i <= self.parts.len() {
            self.parts[i - 1]
        } else {
            0
        }
    }

    /// Whether all parts are distinct.
    pub fn is_strict(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] > w[1])
    }

    /// `n(lambda) = sum (i-1) lambda_i`.
    pub fn n_stat(&self) -> u32 {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &p)| (i as u32) * p)
            .sum()
    }

    /// Fits inside the `[rows, cols]` box.
    pub fn fits_in(&self, rows: usize, cols: u32) -> bool {
        self.parts.len() <= rows && self.parts.first().map_or(true, |&p| p <= cols)
    }

    /// Display form `(3,1)`; the empty partition renders as `()`.
    pub fn label(&self) -> String {
        let inner: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        format!("({})", inner.join(","))
    }
}

/// `mu` interlaces `nu` (written `nu < mu`): `mu` is obtained from `nu` by
/// adding a horizontal strip, i.e. `length(mu) <= length(nu) + 1` and
/// `mu_i >= nu_i >= mu_{i+1}` for all `i <= length(nu)`.
pub fn interlaces(mu: &Partition, nu: &Partition) -> bool {
    if mu.length() > nu.length() + 1 {
        return false;
    }
    for i in 1..=nu.length() {
        if !(mu.part(i) >= nu.part(i) && nu.part(i) >= mu.part(i + 1)) {
            return false;
        }
    }
    // parts of mu beyond nu's length are constrained above; mu_1 >= nu_1 is
    // already covered when nu is nonempty, and any mu passes against empty nu
    // only through the length bound plus mu_2 = 0 <= nu_1 handled above.
    if nu.length() == 0 && mu.length() == 1 {
        return true;
    }
    if nu.length() == 0 {
        return mu.length() == 0;
    }
    true
}

/// Canonical enumeration order: weight ascending, then parts compared
/// reverse-lexicographically (larger first part wins earlier position).
fn canonical_cmp(a: &Partition, b: &Partition) -> std::cmp::Ordering {
    a.weight()
        .cmp(&b.weight())
        .then_with(|| {
            let n = a.length().max(b.length());
            for i in 1..=n {
                match b.part(i).cmp(&a.part(i)) {
                    std::cmp::Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            std::cmp::Ordering::Equal
        })
}

/// All partitions (strict when `strict` is set) with at most `n` rows and
/// parts at most `m`, in canonical order, starting with the empty partition.
pub fn enumerate_rectangle(n: usize, m: u32, strict: bool) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur: Vec<u32> = Vec::new();
    fn go(out: &mut Vec<Partition>, cur: &mut Vec<u32>, rows_left: usize, max_part: u32, strict: bool) {
        out.push(Partition { parts: cur.clone() });
        if rows_left == 0 || max_part == 0 {
            return;
        }
        let lo = 1;
        for p in (lo..=max_part).rev() {
            cur.push(p);
            let next_max = if strict { p.saturating_sub(1) } else { p };
            go(out, cur, rows_left - 1, next_max, strict);
            cur.pop();
        }
    }
    go(&mut out, &mut cur, n, m, strict);
    out.sort_by(canonical_cmp);
    out
}

/// Partitions `mu` in the `[rows, cols]` box that interlace `nu`
/// (optionally strict), with the interlacing weight `|mu| - |nu|` attached.
pub fn interlacing_covers(nu: &Partition, rows: usize, cols: u32, strict: bool) -> Vec<Partition> {
    let l = nu.length();
    if l + 1 > rows && l > rows {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur: Vec<u32> = Vec::new();
    // choose mu_i in [nu_i, min(cols, nu_{i-1})] row by row, plus an optional
    // final row mu_{l+1} in [1, nu_l]
    fn go(
        nu: &Partition,
        out: &mut Vec<Partition>,
        cur: &mut Vec<u32>,
        i: usize,
        cols: u32,
        rows: usize,
        strict: bool,
    ) {
        let l = nu.length();
        if i > l {
            if cur.len() <= rows {
                out.push(Partition { parts: cur.clone() });
            }
            // optional appended row, bounded by nu_l (or absent for empty nu)
            if cur.len() < rows && l >= 1 {
                let hi = nu.part(l);
                let hi = if strict {
                    hi.min(cur.last().map_or(cols, |&p| p.saturating_sub(1)))
                } else {
                    hi.min(cur.last().copied().unwrap_or(cols))
                };
                for p in 1..=hi {
                    cur.push(p);
                    out.push(Partition { parts: cur.clone() });
                    cur.pop();
                }
            }
            if cur.is_empty() && l == 0 && rows >= 1 {
                for p in 1..=cols {
                    out.push(Partition { parts: vec![p] });
                }
            }
            return;
        }
        let lo = nu.part(i);
        let mut hi = if i == 1 { cols } else { nu.part(i - 1).min(cols) };
        if strict {
            if let Some(&prev) = cur.last() {
                hi = hi.min(prev.saturating_sub(1));
            }
        } else if let Some(&prev) = cur.last() {
            hi = hi.min(prev);
        }
        if lo == 0 {
            // nu exhausted early (should not happen: i <= l)
            return;
        }
        for p in lo..=hi {
            cur.push(p);
            go(nu, out, cur, i + 1, cols, rows, strict);
            cur.pop();
        }
    }
    go(nu, &mut out, &mut cur, 1, cols, rows, strict);
    out.sort_by(canonical_cmp);
    out.dedup();
    out
}

const PLANE_PARTITION_BOUND: u32 = 12;

/// Number of plane partitions of `n`, by direct enumeration of row chains:
/// a plane partition is a sequence of ordinary partitions, each containing
/// the next, with total weight `n`.
pub fn plane_partition_count(n: u32) -> Result<u64, PartitionError> {
    plane_partition_count_bounded(n, PLANE_PARTITION_BOUND)
}

/// Same as `plane_partition_count` with an explicit enumeration bound.
pub fn plane_partition_count_bounded(n: u32, bound: u32) -> Result<u64, PartitionError> {
    if n > bound {
        return Err(PartitionError::BoundExceeded { n, bound });
    }
    if n == 0 {
        return Ok(1);
    }
    // enumerate first rows, then recurse on rows dominated entrywise
    fn rows_below(bound_row: &[u32], budget: u32) -> Vec<Vec<u32>> {
        // nonempty partitions entrywise <= bound_row with weight <= budget
        let mut out = Vec::new();
        let mut cur: Vec<u32> = Vec::new();
        fn go(bound_row: &[u32], budget: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if !cur.is_empty() {
                out.push(cur.clone());
            }
            let i = cur.len();
            if i >= bound_row.len() {
                return;
            }
            let mut hi = bound_row[i].min(budget);
            if let Some(&prev) = cur.last() {
                hi = hi.min(prev);
            }
            for p in 1..=hi {
                cur.push(p);
                go(bound_row, budget - p, cur, out);
                cur.pop();
            }
        }
        go(bound_row, budget, &mut cur, &mut out);
        out
    }
    fn count_with_first_row(row: &[u32], rest: u32) -> u64 {
        if rest == 0 {
            return 1;
        }
        let mut total = 0;
        for next in rows_below(row, rest) {
            let w: u32 = next.iter().sum();
            total += count_with_first_row(&next, rest - w);
        }
        total
    }
    let unbounded = vec![n; n as usize];
    let mut total = 0;
    for first in rows_below(&unbounded, n) {
        let w: u32 = first.iter().sum();
        total += count_with_first_row(&first, n - w);
    }
    Ok(total)
}
