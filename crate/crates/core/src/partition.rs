//! Integer partitions: representation, statistics, enumeration, conjugation.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::Error;

/// A partition stored as its parts in weakly decreasing order.
///
/// The empty partition has size, length, smallest part and largest part all
/// equal to zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn empty() -> Self {
        Self { parts: Vec::new() }
    }

    /// Builds a partition from parts in any order. Zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self, Error> {
        if parts.contains(&0) {
            return Err(Error::ZeroPart);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { parts })
    }

    pub(crate) fn from_sorted(parts: Vec<u32>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(parts.iter().all(|&p| p > 0));
        Self { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// |λ|
    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| u64::from(p)).sum()
    }

    /// ℓ(λ)
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    /// sm(λ), zero for the empty partition.
    pub fn smallest(&self) -> u32 {
        self.parts.last().copied().unwrap_or(0)
    }

    /// lg(λ), zero for the empty partition.
    pub fn largest(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// `(part, multiplicity)` pairs, largest part first.
    pub fn multiplicities(&self) -> Vec<(u32, usize)> {
        let mut out: Vec<(u32, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    pub fn has_repeated_part(&self) -> bool {
        self.parts.windows(2).any(|w| w[0] == w[1])
    }

    pub fn distinct_part_count(&self) -> usize {
        self.multiplicities().len()
    }

    pub fn multiplicity_of_largest(&self) -> usize {
        let lg = self.largest();
        self.parts.iter().take_while(|&&p| p == lg).count()
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Self {
        let lg = self.largest() as usize;
        let mut parts = vec![0u32; lg];
        for &p in &self.parts {
            for c in parts.iter_mut().take(p as usize) {
                *c += 1;
            }
        }
        Self { parts }
    }

    /// λ·(n): the partition with one more part equal to `n`.
    pub fn adjoin(&self, n: u32) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::ZeroPart);
        }
        let at = self.parts.partition_point(|&p| p >= n);
        let mut parts = Vec::with_capacity(self.parts.len() + 1);
        parts.extend_from_slice(&self.parts[..at]);
        parts.push(n);
        parts.extend_from_slice(&self.parts[at..]);
        Ok(Self { parts })
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// Partition-theoretic Möbius function: zero if a part repeats, otherwise
/// `(-1)^ℓ(λ)`.
pub fn mu_p(lambda: &Partition) -> i8 {
    if lambda.has_repeated_part() {
        0
    } else if lambda.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Lazily enumerates the partitions of `n` in decreasing lexicographic order,
/// starting from `(n)` and ending at `(1,1,...,1)`. `n = 0` yields only ∅.
pub fn partitions_of(n: u32) -> PartitionsOf {
    PartitionsOf {
        next: Some(if n == 0 { Vec::new() } else { vec![n] }),
    }
}

#[derive(Clone, Debug)]
pub struct PartitionsOf {
    next: Option<Vec<u32>>,
}

impl Iterator for PartitionsOf {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.next.take()?;
        self.next = successor(&current);
        Some(Partition::from_sorted(current))
    }
}

fn successor(parts: &[u32]) -> Option<Vec<u32>> {
    let i = parts.iter().rposition(|&p| p > 1)?;
    let mut out = parts[..=i].to_vec();
    // trailing ones plus the unit taken from parts[i]
    let mut rem = (parts.len() - i - 1) as u32 + 1;
    out[i] -= 1;
    let cap = out[i];
    while rem > 0 {
        let p = rem.min(cap);
        out.push(p);
        rem -= p;
    }
    Some(out)
}

/// All partitions of every size `0..=max_size`, size by size.
pub fn partitions_up_to(max_size: u32) -> impl Iterator<Item = Partition> {
    (0..=max_size).flat_map(partitions_of)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;

    fn brute(n: u32, max: u32) -> Vec<Vec<u32>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for p in (1..=n.min(max)).rev() {
            for mut rest in brute(n - p, p) {
                rest.insert(0, p);
                out.push(rest);
            }
        }
        out
    }

    #[test]
    fn zero_yields_only_empty() {
        let all: Vec<_> = partitions_of(0).collect();
        assert_eq!(all, vec![Partition::empty()]);
    }

    #[test]
    fn counts_match_recursive_oracle() {
        assert_eq!(partitions_of(4).count(), 5);
        assert_eq!(partitions_of(5).count(), 7);
        for n in 0..=18 {
            let ours: Vec<Vec<u32>> = partitions_of(n).map(|p| p.parts().to_vec()).collect();
            assert_eq!(ours, brute(n, n), "n = {n}");
        }
    }

    #[test]
    fn order_is_decreasing_lexicographic() {
        let all: Vec<_> = partitions_of(12).collect();
        assert!(all.windows(2).all(|w| w[0].parts() > w[1].parts()));
        let set: BTreeSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), all.len());
    }

    #[test]
    fn statistics_of_empty() {
        let e = Partition::empty();
        assert_eq!((e.size(), e.len(), e.smallest(), e.largest()), (0, 0, 0, 0));
        assert_eq!(e.multiplicity_of_largest(), 0);
    }

    #[test]
    fn mu_p_examples() {
        assert_eq!(mu_p(&Partition::new(vec![2, 2, 1]).unwrap()), 0);
        assert_eq!(mu_p(&Partition::empty()), 1);
        assert_eq!(mu_p(&Partition::new(vec![3, 2, 1]).unwrap()), -1);
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        let p = Partition::new(vec![3, 1]).unwrap();
        assert_eq!(p.conjugate().parts(), &[2, 1, 1]);
    }

    #[test]
    fn conjugation_is_an_involution_swapping_length_and_largest() {
        for lambda in partitions_up_to(20) {
            let c = lambda.conjugate();
            assert_eq!(c.size(), lambda.size());
            assert_eq!(c.largest() as usize, lambda.len());
            assert_eq!(c.len(), lambda.largest() as usize);
            assert_eq!(c.conjugate(), lambda);
        }
    }

    #[test]
    fn adjoin_examples() {
        let e = Partition::empty();
        assert_eq!(e.adjoin(3).unwrap().parts(), &[3]);
        let p = Partition::new(vec![2, 1]).unwrap();
        assert_eq!(p.adjoin(2).unwrap().parts(), &[2, 2, 1]);
        let p = Partition::new(vec![5]).unwrap();
        assert_eq!(p.adjoin(7).unwrap().parts(), &[7, 5]);
        assert_eq!(p.adjoin(0), Err(Error::ZeroPart));
    }

    #[test]
    fn multiplicity_of_largest_examples() {
        assert_eq!(Partition::new(vec![3, 3, 1]).unwrap().multiplicity_of_largest(), 2);
        assert_eq!(Partition::new(vec![4]).unwrap().multiplicity_of_largest(), 1);
    }

    #[test]
    fn mu_p_nonzero_iff_distinct() {
        for lambda in partitions_up_to(16) {
            let distinct = !lambda.has_repeated_part();
            let m = mu_p(&lambda);
            assert_eq!(m != 0, distinct);
            if distinct {
                assert_eq!(m, if lambda.len() % 2 == 0 { 1 } else { -1 });
            }
        }
    }

    #[test]
    fn rejects_zero_parts() {
        assert_eq!(Partition::new(vec![2, 0]), Err(Error::ZeroPart));
    }
}
