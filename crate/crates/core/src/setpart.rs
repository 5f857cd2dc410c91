//! Set partitions of `{0, .., n-1}`.
//!
//! A grouping is a list of blocks; blocks are sorted and listed in order of
//! their least element, so each set partition has exactly one representation.

use crate::error::{Error, Result};

pub type Grouping = Vec<Vec<usize>>;

/// Iterator over all set partitions of `{0, .., n-1}` via restricted growth
/// strings. Yields `Bell(n)` groupings; for `n == 0` it yields the single
/// empty grouping.
pub struct SetPartitions {
    n: usize,
    // rgs[i] is the block of element i; rgs[i] <= 1 + max(rgs[..i]).
    rgs: Vec<usize>,
    done: bool,
}

pub fn set_partitions(n: usize) -> SetPartitions {
    SetPartitions {
        n,
        rgs: vec![0; n],
        done: false,
    }
}

impl Iterator for SetPartitions {
    type Item = Grouping;

    fn next(&mut self) -> Option<Grouping> {
        if self.done {
            return None;
        }
        let out = from_labels(&self.rgs);
        // Advance to the next restricted growth string.
        let mut i = self.n;
        loop {
            if i <= 1 {
                self.done = true;
                break;
            }
            i -= 1;
            let max_prefix = self.rgs[..i].iter().copied().max().unwrap_or(0);
            if self.rgs[i] <= max_prefix {
                self.rgs[i] += 1;
                for x in &mut self.rgs[i + 1..] {
                    *x = 0;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Build the canonical grouping from per-element block labels.
pub fn from_labels<L: Eq + Clone>(labels: &[L]) -> Grouping {
    let mut keys: Vec<L> = Vec::new();
    let mut blocks: Grouping = Vec::new();
    for (i, l) in labels.iter().enumerate() {
        match keys.iter().position(|k| k == l) {
            Some(b) => blocks[b].push(i),
            None => {
                keys.push(l.clone());
                blocks.push(vec![i]);
            }
        }
    }
    blocks
}

/// Check that `grouping` partitions `{0, .., n-1}` into nonempty blocks and
/// return its canonical form.
pub fn validate(grouping: &[Vec<usize>], n: usize) -> Result<Grouping> {
    let mut label = vec![usize::MAX; n];
    for (b, block) in grouping.iter().enumerate() {
        if block.is_empty() {
            return Err(Error::input("grouping has an empty block"));
        }
        for &i in block {
            if i >= n {
                return Err(Error::input(format!("grouping index {i} out of range 0..{n}")));
            }
            if label[i] != usize::MAX {
                return Err(Error::input(format!("grouping index {i} appears twice")));
            }
            label[i] = b;
        }
    }
    if let Some(i) = label.iter().position(|&l| l == usize::MAX) {
        return Err(Error::input(format!("grouping misses index {i}")));
    }
    Ok(from_labels(&label))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (0..8).map(|n| set_partitions(n).count()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15, 52, 203, 877]);
    }

    #[test]
    fn partitions_are_distinct_and_valid() {
        let all: Vec<Grouping> = set_partitions(5).collect();
        for g in &all {
            assert_eq!(&validate(g, 5).unwrap(), g);
        }
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), all.len());
    }

    #[test]
    fn validate_rejects_malformed() {
        assert!(validate(&[vec![0], vec![0, 1]], 2).is_err());
        assert!(validate(&[vec![0]], 2).is_err());
        assert!(validate(&[vec![0, 2]], 2).is_err());
        assert!(validate(&[vec![0, 1], vec![]], 2).is_err());
        assert_eq!(validate(&[vec![2, 1], vec![0]], 3).unwrap(), vec![vec![0], vec![1, 2]]);
    }
}
