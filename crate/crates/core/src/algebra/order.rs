use std::fmt;

use super::Alternative;
use crate::error::{Error, Result};

/// A complete, transitive preference over `0..n`, stored as an ordered
/// partition. Earlier classes are strictly preferred; members of one class
/// are indifferent. Classes are kept sorted so equal relations compare equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeakOrder {
    classes: Vec<Vec<usize>>,
    /// `rank[x]` is the index of the class containing `x`.
    rank: Vec<usize>,
}

impl WeakOrder {
    pub fn new(classes: Vec<Vec<usize>>) -> Result<Self> {
        let n: usize = classes.iter().map(Vec::len).sum();
        let mut rank = vec![usize::MAX; n];
        let mut sorted = Vec::with_capacity(classes.len());
        for (k, mut class) in classes.into_iter().enumerate() {
            if class.is_empty() {
                return Err(Error::InvalidWeakOrder(format!("class {k} is empty")));
            }
            for &x in &class {
                if x >= n {
                    return Err(Error::InvalidWeakOrder(format!(
                        "alternative {x} out of range for {n} alternatives"
                    )));
                }
                if rank[x] != usize::MAX {
                    return Err(Error::InvalidWeakOrder(format!(
                        "alternative {x} appears twice"
                    )));
                }
                rank[x] = k;
            }
            class.sort_unstable();
            sorted.push(class);
        }
        if n == 0 {
            return Err(Error::InvalidWeakOrder("no alternatives".into()));
        }
        Ok(WeakOrder {
            classes: sorted,
            rank,
        })
    }

    /// Strict order from a ranking, best first.
    pub fn strict(ranking: &[usize]) -> Result<Self> {
        Self::new(ranking.iter().map(|&x| vec![x]).collect())
    }

    /// Every alternative in one class.
    pub fn indifferent(n: usize) -> Self {
        Self::new(vec![(0..n).collect()]).expect("single class is a valid partition")
    }

    /// Builds the order from per-alternative ranks (lower is better). Ranks
    /// need not be contiguous.
    pub fn from_ranks(ranks: &[usize]) -> Result<Self> {
        let mut levels: Vec<usize> = ranks.to_vec();
        levels.sort_unstable();
        levels.dedup();
        let classes = levels
            .iter()
            .map(|&level| {
                (0..ranks.len())
                    .filter(|&x| ranks[x] == level)
                    .collect::<Vec<_>>()
            })
            .collect();
        Self::new(classes)
    }

    pub fn num_alternatives(&self) -> usize {
        self.rank.len()
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn rank(&self, alt: Alternative) -> usize {
        self.rank[alt.0]
    }

    /// Strict preference of `x` over `y`.
    pub fn prefers(&self, x: Alternative, y: Alternative) -> bool {
        self.rank[x.0] < self.rank[y.0]
    }

    pub fn weakly_prefers(&self, x: Alternative, y: Alternative) -> bool {
        self.rank[x.0] <= self.rank[y.0]
    }

    pub fn top(&self) -> &[usize] {
        &self.classes[0]
    }

    pub fn is_strict(&self) -> bool {
        self.classes.iter().all(|c| c.len() == 1)
    }

    pub fn reversed(&self) -> Self {
        WeakOrder::new(self.classes.iter().rev().cloned().collect())
            .expect("reversal of a partition is a partition")
    }

    /// All `n!` strict orders, lexicographic in the ranking (best first).
    pub fn all_strict(n: usize) -> Vec<WeakOrder> {
        let mut out = Vec::new();
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            out.push(WeakOrder::strict(&perm).expect("permutation"));
            if !next_permutation(&mut perm) {
                break;
            }
        }
        out
    }

    /// All weak orders on `n` alternatives (ordered Bell numbers: 1, 3, 13,
    /// 75, ...), sorted by the derived `Ord`.
    pub fn all_weak(n: usize) -> Vec<WeakOrder> {
        let mut out = Vec::new();
        let mut ranks = vec![0usize; n];
        collect_weak(&mut ranks, 0, &mut out);
        out.sort();
        out.dedup();
        out
    }
}

fn collect_weak(ranks: &mut Vec<usize>, pos: usize, out: &mut Vec<WeakOrder>) {
    let n = ranks.len();
    if pos == n {
        // only surjective rank maps onto 0..k give distinct ordered partitions
        let max = ranks.iter().copied().max().unwrap_or(0);
        if (0..=max).all(|r| ranks.contains(&r)) {
            out.push(WeakOrder::from_ranks(ranks).expect("valid ranks"));
        }
        return;
    }
    for r in 0..n {
        ranks[pos] = r;
        collect_weak(ranks, pos + 1, out);
    }
}

fn next_permutation(perm: &mut [usize]) -> bool {
    if perm.len() < 2 {
        return false;
    }
    let mut i = perm.len() - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = perm.len() - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

impl fmt::Display for WeakOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, class) in self.classes.iter().enumerate() {
            if k > 0 {
                f.write_str(" > ")?;
            }
            for (i, x) in class.iter().enumerate() {
                if i > 0 {
                    f.write_str(" = ")?;
                }
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}
