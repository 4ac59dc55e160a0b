//! Semistandard tableaux and Kostka–Foulkes polynomials via charge.

use super::partition::Partition;
use super::poly::IntPoly;
use crate::error::{Error, Result};

/// A tableau as rows of entries.
pub type Tableau = Vec<Vec<u32>>;

/// Semistandard tableaux of shape `shape` and content `content`.
///
/// Built as chains of horizontal strips: the cells holding `i` form
/// `λ^{(i)} / λ^{(i-1)}`.
pub fn ssyt(shape: &Partition, content: &[u32]) -> Vec<Tableau> {
    let target: Vec<u32> = shape.parts().to_vec();
    let mut out = Vec::new();
    fn rec(target: &[u32], content: &[u32], i: usize, cur: &mut Vec<Vec<u32>>, out: &mut Vec<Tableau>) {
        if i == content.len() {
            let lens: Vec<u32> = (0..target.len()).map(|r| cur.get(r).map_or(0, |x| x.len() as u32)).collect();
            if lens == target {
                out.push(cur.clone());
            }
            return;
        }
        let letter = i as u32 + 1;
        let rows = target.len();
        let shape: Vec<u32> = (0..rows).map(|r| cur.get(r).map_or(0, |x| x.len() as u32)).collect();
        // choose how many cells to add in each row: a horizontal strip
        let mut add = vec![0u32; rows];
        fn strip(
            r: usize,
            left: u32,
            shape: &[u32],
            target: &[u32],
            add: &mut Vec<u32>,
            f: &mut dyn FnMut(&[u32]),
        ) {
            if r == shape.len() {
                if left == 0 {
                    f(add);
                }
                return;
            }
            // row r may grow up to the old length of row r-1 and the target
            let cap_above = if r == 0 { u32::MAX } else { shape[r - 1] };
            let max_len = target[r].min(cap_above);
            let room = max_len.saturating_sub(shape[r]);
            for a in 0..=room.min(left) {
                add[r] = a;
                strip(r + 1, left - a, shape, target, add, f);
            }
            add[r] = 0;
        }
        let mut choices = Vec::new();
        strip(0, content[i], &shape, target, &mut add, &mut |a| choices.push(a.to_vec()));
        for a in choices {
            let mut next = cur.clone();
            while next.len() < rows {
                next.push(vec![]);
            }
            for (r, &k) in a.iter().enumerate() {
                for _ in 0..k {
                    next[r].push(letter);
                }
            }
            while next.last().is_some_and(|r| r.is_empty()) {
                next.pop();
            }
            rec(target, content, i + 1, &mut next, out);
        }
    }
    rec(&target, content, 0, &mut Vec::new(), &mut out);
    out
}

/// Reading word: rows from bottom to top, each left to right.
pub fn reading_word(t: &Tableau) -> Vec<u32> {
    t.iter().rev().flat_map(|r| r.iter().copied()).collect()
}

/// Lascoux–Schützenberger charge of a word with partition content.
///
/// Standard subwords are peeled off by scanning leftward (cyclically)
/// from the rightmost 1 for 2, 3, …; within a standard subword the index
/// goes up by one each time the scan wraps around.
pub fn charge(word: &[u32]) -> u32 {
    let mut alive: Vec<Option<u32>> = word.iter().map(|&x| Some(x)).collect();
    let mut total = 0;
    loop {
        let Some(k) = alive.iter().flatten().max().copied() else {
            break;
        };
        let len = alive.len();
        let Some(mut pos) = (0..len).rev().find(|&i| alive[i] == Some(1)) else {
            break;
        };
        alive[pos] = None;
        let mut index = 0;
        for letter in 2..=k {
            let mut steps = 0;
            let mut wrapped = false;
            loop {
                if pos == 0 {
                    pos = len - 1;
                    wrapped = true;
                } else {
                    pos -= 1;
                }
                steps += 1;
                if alive[pos] == Some(letter) {
                    break;
                }
                assert!(steps <= len, "content is not a partition");
            }
            if wrapped {
                index += 1;
            }
            total += index;
            alive[pos] = None;
        }
    }
    total
}

/// `K_{λμ}(t) = Σ_{T ∈ SSYT(λ, μ)} t^{charge(T)}`.
pub fn kostka_foulkes(lambda: &Partition, mu: &Partition) -> Result<IntPoly> {
    if lambda.size() != mu.size() {
        return Err(Error::Invalid(format!("|{lambda}| ≠ |{mu}|")));
    }
    let mut c = vec![0i128; mu.n_stat() as usize + 1];
    for t in ssyt(lambda, mu.parts()) {
        let ch = charge(&reading_word(&t)) as usize;
        if ch >= c.len() {
            c.resize(ch + 1, 0);
        }
        c[ch] += 1;
    }
    Ok(IntPoly::new(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::green::partition::partitions;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn known_values() {
        assert_eq!(kostka_foulkes(&p(&[2]), &p(&[1, 1])).unwrap(), IntPoly::new(vec![0, 1]));
        assert_eq!(kostka_foulkes(&p(&[2, 1]), &p(&[1, 1, 1])).unwrap(), IntPoly::new(vec![0, 1, 1]));
        assert_eq!(kostka_foulkes(&p(&[3]), &p(&[1, 1, 1])).unwrap(), IntPoly::new(vec![0, 0, 0, 1]));
        assert_eq!(kostka_foulkes(&p(&[3]), &p(&[2, 1])).unwrap(), IntPoly::new(vec![0, 1]));
        assert_eq!(kostka_foulkes(&p(&[2, 2]), &p(&[2, 1, 1])).unwrap(), IntPoly::new(vec![0, 1]));
        assert_eq!(
            kostka_foulkes(&p(&[3, 1]), &p(&[1, 1, 1, 1])).unwrap(),
            IntPoly::new(vec![0, 0, 0, 1, 1, 1])
        );
        for l in partitions(4) {
            assert_eq!(kostka_foulkes(&l, &l).unwrap(), IntPoly::constant(1));
        }
    }

    #[test]
    fn vanishes_outside_dominance() {
        for n in 1..=5 {
            for l in partitions(n) {
                for m in partitions(n) {
                    let k = kostka_foulkes(&l, &m).unwrap();
                    assert_eq!(k.is_zero(), !m.dominated_by(&l), "{l} {m}");
                    if !k.is_zero() {
                        assert_eq!(k.degree().unwrap() as u32, m.n_stat() - l.n_stat());
                    }
                }
            }
        }
    }
}
