//! Integer partitions and weak compositions.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers. Trailing zeros are
/// never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Accepts a weakly decreasing sequence; trailing zeros are stripped.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::Invalid(format!("{parts:?} is not a partition")));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// The `i`-th part (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// The parts padded with zeros to length `n`.
    pub fn padded(&self, n: usize) -> Result<Vec<u32>> {
        if self.len() > n {
            return Err(Error::LengthExceeded { len: self.len(), max: n });
        }
        let mut v = self.0.clone();
        v.resize(n, 0);
        Ok(v)
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// A weak composition: any sequence of nonnegative integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Self {
        Composition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// All compositions of length `m` with entries drawn from `entries`.
    pub fn all_with_entries(m: usize, entries: &[u32]) -> Vec<Composition> {
        let mut out = vec![Vec::new()];
        for _ in 0..m {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    entries.iter().map(move |&e| {
                        let mut v = prefix.clone();
                        v.push(e);
                        v
                    })
                })
                .collect();
        }
        out.into_iter().map(Composition).collect()
    }
}

impl From<Vec<u32>> for Composition {
    fn from(v: Vec<u32>) -> Self {
        Composition(v)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Iterator over partitions with `|λ| <= max_size` and at most `max_length`
/// parts, graded by size and reverse-lexicographic within a size.
#[derive(Clone, Debug)]
pub struct PartitionIter {
    max_size: u32,
    max_length: usize,
    size: u32,
    // Next partition of the current size, or None when the size is exhausted.
    current: Option<Vec<u32>>,
}

impl PartitionIter {
    fn first_of_size(size: u32, max_length: usize) -> Option<Vec<u32>> {
        match (size, max_length) {
            (0, _) => Some(Vec::new()),
            (_, 0) => None,
            (s, _) => Some(vec![s]),
        }
    }

    /// Reverse-lex successor among partitions of the same size with at most
    /// `max_length` parts: decrement the rightmost part that still leaves room
    /// to refill the tail greedily.
    fn successor(p: &[u32], max_length: usize) -> Option<Vec<u32>> {
        let mut tail: u32 = 0;
        for i in (0..p.len()).rev() {
            tail += if i + 1 < p.len() { p[i + 1] } else { 0 };
            let k = p[i] - 1;
            let rem = tail + 1;
            let slots = (max_length - i - 1) as u32;
            if k == 0 || rem > k * slots {
                continue;
            }
            let mut v = p[..i].to_vec();
            v.push(k);
            let mut left = rem;
            while left > 0 {
                let take = left.min(k);
                v.push(take);
                left -= take;
            }
            return Some(v);
        }
        None
    }
}

impl Iterator for PartitionIter {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        loop {
            if self.size > self.max_size {
                return None;
            }
            if let Some(cur) = self.current.take() {
                self.current = Self::successor(&cur, self.max_length);
                return Some(Partition(cur));
            }
            self.size += 1;
            if self.size > self.max_size {
                return None;
            }
            self.current = Self::first_of_size(self.size, self.max_length);
        }
    }
}

pub fn enum_partitions(max_size: u32, max_length: usize) -> PartitionIter {
    PartitionIter {
        max_size,
        max_length,
        size: 0,
        current: PartitionIter::first_of_size(0, max_length),
    }
}

/// Partitions of exactly `size` with at most `max_length` parts.
pub fn partitions_of(size: u32, max_length: usize) -> impl Iterator<Item = Partition> {
    enum_partitions(size, max_length).filter(move |p| p.size() == size)
}

/// `(λ_1 + n - 1, λ_2 + n - 2, ..., λ_n)`.
pub fn frame_exponents(lambda: &Partition, n: usize) -> Result<Vec<i64>> {
    let padded = lambda.padded(n)?;
    Ok(padded
        .iter()
        .enumerate()
        .map(|(i, &p)| p as i64 + (n - 1 - i) as i64)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn small_listing() {
        let got: Vec<_> = enum_partitions(2, 2).collect();
        assert_eq!(got, vec![p(&[]), p(&[1]), p(&[2]), p(&[1, 1])]);
        let got: Vec<_> = enum_partitions(5, 0).collect();
        assert_eq!(got, vec![p(&[])]);
    }

    #[test]
    fn count_four_two() {
        let got: Vec<_> = enum_partitions(4, 2).collect();
        assert_eq!(got.len(), 9);
        let size4: Vec<_> = got.iter().filter(|x| x.size() == 4).cloned().collect();
        assert_eq!(size4, vec![p(&[4]), p(&[3, 1]), p(&[2, 2])]);
    }

    #[test]
    fn reverse_lex_within_size() {
        let got: Vec<_> = partitions_of(5, 5).collect();
        let want = [
            p(&[5]),
            p(&[4, 1]),
            p(&[3, 2]),
            p(&[3, 1, 1]),
            p(&[2, 2, 1]),
            p(&[2, 1, 1, 1]),
            p(&[1, 1, 1, 1, 1]),
        ];
        assert_eq!(got, want);
    }

    #[test]
    fn length_bound_skips_long_partitions() {
        let got: Vec<_> = partitions_of(6, 2).collect();
        assert_eq!(got, vec![p(&[6]), p(&[5, 1]), p(&[4, 2]), p(&[3, 3])]);
    }

    #[test]
    fn frames() {
        assert_eq!(frame_exponents(&p(&[]), 3).unwrap(), vec![2, 1, 0]);
        assert_eq!(frame_exponents(&p(&[2, 1]), 2).unwrap(), vec![3, 1]);
        assert_eq!(frame_exponents(&p(&[5]), 1).unwrap(), vec![5]);
        assert_eq!(
            frame_exponents(&p(&[1, 1]), 1),
            Err(Error::LengthExceeded { len: 2, max: 1 })
        );
    }

    #[test]
    fn rejects_non_partitions() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(Partition::new(vec![2, 1, 0, 0]).unwrap(), p(&[2, 1]));
        let from_json: Result<Partition> =
            serde_json::from_str::<Partition>("[1,3]").map_err(|e| Error::Invalid(e.to_string()));
        assert!(from_json.is_err());
    }
}
