//! Integer partitions.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Sorts the parts and drops zeros.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let m = self.0.first().copied().unwrap_or(0);
        Partition((1..=m).map(|i| self.0.iter().filter(|&&x| x >= i).count() as u32).collect())
    }

    /// `n(λ) = Σ (i-1) λ_i`.
    pub fn n_stat(&self) -> u32 {
        self.0.iter().enumerate().map(|(i, &x)| i as u32 * x).sum()
    }

    /// Number of parts equal to each value, as (value, count) ascending.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &x in self.0.iter().rev() {
            match out.last_mut() {
                Some((v, c)) if *v == x => *c += 1,
                _ => out.push((x, 1)),
            }
        }
        out
    }

    /// Size of the centralizer in S_n of a permutation of this cycle type.
    pub fn z(&self) -> u128 {
        self.multiplicities()
            .iter()
            .map(|&(v, c)| (v as u128).pow(c) * (1..=c as u128).product::<u128>())
            .product()
    }

    /// Dominance order `self ⊴ other`.
    pub fn dominated_by(&self, other: &Partition) -> bool {
        let (mut a, mut b) = (0, 0);
        for i in 0..self.len().max(other.len()) {
            a += self.0.get(i).copied().unwrap_or(0);
            b += other.0.get(i).copied().unwrap_or(0);
            if a > b {
                return false;
            }
        }
        true
    }
}

/// All partitions of n in reverse lexicographic order, starting at (n).
pub fn partitions(n: u32) -> Vec<Partition> {
    fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for x in (1..=max.min(n)).rev() {
            cur.push(x);
            rec(n - x, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;
    /// Accepts `3,1`, `(3,1)` or `[3,1]`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        let parts = t
            .split(',')
            .filter(|x| !x.trim().is_empty())
            .map(|x| x.trim().parse::<u32>().map_err(|_| Error::Invalid(format!("bad partition {s}"))))
            .collect::<Result<Vec<u32>>>()?;
        if parts.iter().any(|&x| x == 0) {
            return Err(Error::Invalid(format!("zero part in {s}")));
        }
        Ok(Partition::new(parts))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let c: Vec<usize> = (0..8).map(|n| partitions(n).len()).collect();
        assert_eq!(c, vec![1, 1, 2, 3, 5, 7, 11, 15]);
        assert_eq!(partitions(3)[0], Partition::new(vec![3]));
    }

    #[test]
    fn conjugates_and_stats() {
        let l = Partition::new(vec![3, 1]);
        assert_eq!(l.conjugate(), Partition::new(vec![2, 1, 1]));
        assert_eq!(l.n_stat(), 1);
        assert_eq!(Partition::new(vec![1, 1, 1]).n_stat(), 3);
        assert_eq!(Partition::new(vec![2, 1, 1]).z(), 4);
        assert_eq!("(2,1,1)".parse::<Partition>().unwrap(), l.conjugate());
        assert!(Partition::new(vec![1, 1]).dominated_by(&Partition::new(vec![2])));
    }
}
