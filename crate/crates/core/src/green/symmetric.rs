//! Irreducible characters of symmetric groups (Murnaghan–Nakayama).

use super::partition::Partition;

/// `χ^λ(ρ)` by removing rim hooks of lengths `ρ_1, ρ_2, …` on β-numbers.
pub fn sn_character(lambda: &Partition, rho: &Partition) -> i64 {
    assert_eq!(lambda.size(), rho.size());
    let l = lambda.len();
    let beta: Vec<u32> = lambda.parts().iter().enumerate().map(|(i, &x)| x + (l - 1 - i) as u32).collect();
    mn(&beta, rho.parts())
}

fn mn(beta: &[u32], rho: &[u32]) -> i64 {
    let Some((&r, rest)) = rho.split_first() else {
        return 1;
    };
    let mut total = 0;
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let between = beta.iter().filter(|&&x| x > b - r && x < b).count();
        let mut nb = beta.to_vec();
        nb[i] = b - r;
        let sign = if between % 2 == 0 { 1 } else { -1 };
        total += sign * mn(&nb, rest);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::green::partition::partitions;

    #[test]
    fn s3_table() {
        let p = |v: &[u32]| Partition::new(v.to_vec());
        let classes = [p(&[1, 1, 1]), p(&[2, 1]), p(&[3])];
        assert_eq!(classes.iter().map(|c| sn_character(&p(&[2, 1]), c)).collect::<Vec<_>>(), vec![2, 0, -1]);
        assert_eq!(classes.iter().map(|c| sn_character(&p(&[1, 1, 1]), c)).collect::<Vec<_>>(), vec![1, -1, 1]);
    }

    #[test]
    fn column_orthogonality() {
        for n in 1..=6 {
            let ps = partitions(n);
            for a in &ps {
                for b in &ps {
                    let s: i64 = ps.iter().map(|l| sn_character(l, a) * sn_character(l, b)).sum();
                    let expect = if a == b { a.z() as i64 } else { 0 };
                    assert_eq!(s, expect);
                }
            }
        }
    }
}
