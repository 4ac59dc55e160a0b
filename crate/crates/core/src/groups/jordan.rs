//! Jordan decomposition, eigenvalue orbits and centralizer types.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::group::{Group, GroupElement};
use super::matrix::{self, Mat};
use super::spec::{signed_order, Family};
use crate::error::{Error, Result};
use crate::green::Partition;

/// `g = s·u` with s semisimple, u unipotent, commuting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanPair {
    pub s: GroupElement,
    pub u: GroupElement,
}

fn p_part(mut n: u64, p: u64) -> (u64, u64) {
    let mut pa = 1;
    while n % p == 0 {
        n /= p;
        pa *= p;
    }
    (pa, n)
}

/// Jordan decomposition through a CRT exponent: `s = g^e` with
/// `e ≡ 0 mod p^a`, `e ≡ 1 mod m` where `|g| = p^a·m`.
pub fn jordan(group: &Group, g: &GroupElement) -> JordanPair {
    let ord = group.element_order(g);
    let (pa, m) = p_part(ord, group.spec().p());
    // e = pa * (pa^{-1} mod m)
    let e = if m == 1 { 0 } else { pa * modinv(pa % m, m) % ord };
    let s = group.pow(g, e);
    let u = group.mul(&group.inv(&s), g);
    JordanPair { s, u }
}

fn modinv(a: u64, m: u64) -> u64 {
    let (mut t, mut nt) = (0i128, 1i128);
    let (mut r, mut nr) = (m as i128, a as i128);
    while nr != 0 {
        let qt = r / nr;
        (t, nt) = (nt, t - qt * nt);
        (r, nr) = (nr, r - qt * nr);
    }
    t.rem_euclid(m as i128) as u64
}

/// One Frobenius orbit of eigenvalues of a semisimple block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenOrbit {
    /// Logs (in the universe) of the orbit α, σα, σ²α, … .
    pub logs: Vec<u64>,
    /// Multiplicity of each eigenvalue in the orbit.
    pub mult: usize,
    /// Jordan type of the unipotent part on one eigenspace.
    pub utype: Partition,
}

impl EigenOrbit {
    pub fn size(&self) -> usize {
        self.logs.len()
    }
}

/// Eigen-structure of one factor block of a Jordan pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockEigen {
    pub orbits: Vec<EigenOrbit>,
    /// Signed parameter of the block's factor at the group level.
    pub qs: i64,
}

impl BlockEigen {
    /// Sorted eigenvalue logs with multiplicity.
    pub fn key(&self) -> Vec<u64> {
        let mut k: Vec<u64> =
            self.orbits.iter().flat_map(|o| o.logs.iter().flat_map(move |&l| std::iter::repeat_n(l, o.mult))).collect();
        k.sort_unstable();
        k
    }

    /// Orbit index of every eigenvalue log.
    pub fn orbit_index(&self) -> HashMap<u64, usize> {
        let mut m = HashMap::new();
        for (i, o) in self.orbits.iter().enumerate() {
            for &l in &o.logs {
                m.insert(l, i);
            }
        }
        m
    }
}

/// `l ↦ l·qs` on logs modulo `units`, the action of σ(x) = x^{qs}.
pub fn sigma_log(l: u64, qs: i64, units: u64) -> u64 {
    ((l as i128 * qs as i128).rem_euclid(units as i128)) as u64
}

/// Eigen-structure of factor `i` of a Jordan pair.
pub fn block_eigen(group: &Group, i: usize, s: &Mat, u: &Mat) -> Result<BlockEigen> {
    let f = group.field();
    let n = s.n;
    let units = group.ctx().units();
    let qs = group.spec().signed_q(i);
    let ord = {
        let mut x = s.clone();
        let mut k = 1u64;
        while !x.is_identity() {
            x = matrix::mul(f, &x, s);
            k += 1;
        }
        k
    };
    let step = group.ctx().mu_step(ord)?;
    let u1 = matrix::sub(f, u, &Mat::identity(n));
    let mut found: Vec<(u64, usize, Partition)> = Vec::new();
    let mut total = 0;
    for j in 0..ord {
        let l = j * step;
        let alpha = f.exp(l);
        let sa = matrix::sub(f, s, &Mat::scalar(n, alpha));
        let r = matrix::rank(f, &sa);
        if r == n {
            continue;
        }
        let mult = n - r;
        total += mult;
        // dims of ker(s-α) ∩ ker((u-1)^k)
        let mut dims = vec![0usize];
        let mut uk = Mat::identity(n);
        loop {
            uk = matrix::mul(f, &uk, &u1);
            let mut stacked = sa.a.clone();
            stacked.extend_from_slice(&uk.a);
            let d = n - matrix::rank_rect(f, &stacked, 2 * n, n);
            dims.push(d);
            if d == mult {
                break;
            }
            if dims.len() > n + 1 {
                return Err(Error::Assertion("u is not unipotent on an eigenspace".into()));
            }
        }
        let dual: Vec<u32> = dims.windows(2).map(|w| (w[1] - w[0]) as u32).collect();
        found.push((l, mult, Partition::new(dual).conjugate()));
    }
    if total != n {
        return Err(Error::Assertion(format!("eigenvalues of a block not in the universe ({total} of {n})")));
    }
    let by_log: HashMap<u64, (usize, Partition)> = found.iter().map(|(l, m, p)| (*l, (*m, p.clone()))).collect();
    let mut seen = std::collections::HashSet::new();
    let mut orbits = Vec::new();
    for (l, mult, ut) in &found {
        if seen.contains(l) {
            continue;
        }
        let mut logs = vec![*l];
        let mut x = sigma_log(*l, qs, units);
        while x != *l {
            logs.push(x);
            x = sigma_log(x, qs, units);
        }
        for &y in &logs {
            seen.insert(y);
            match by_log.get(&y) {
                Some((m, p)) if *m == *mult && p == ut => {}
                _ => return Err(Error::Assertion("eigenvalue orbit not Frobenius-stable".into())),
            }
        }
        orbits.push(EigenOrbit { logs, mult: *mult, utype: ut.clone() });
    }
    Ok(BlockEigen { orbits, qs })
}

/// Eigen-structure of every block of `g`'s Jordan pair.
pub fn eigen_data(group: &Group, g: &GroupElement) -> Result<Vec<BlockEigen>> {
    let jp = jordan(group, g);
    (0..jp.s.blocks.len()).map(|i| block_eigen(group, i, &jp.s.blocks[i], &jp.u.blocks[i])).collect()
}

/// One factor `GL_m(F_{q^d})` or `U_m(F_{q^d})` of a centralizer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralizerFactor {
    pub family: Family,
    pub m: usize,
    /// Field power over the base q.
    pub d: u32,
    /// Size of the eigenvalue orbit this factor comes from.
    pub orbit_size: usize,
    /// Signed parameter `qs^e` of the factor.
    pub qs: i64,
}

/// Type of `C_G(s)`, one factor per eigenvalue orbit (over all blocks).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralizerType {
    pub factors: Vec<CentralizerFactor>,
}

impl CentralizerType {
    pub fn order(&self) -> u128 {
        self.factors.iter().map(|f| signed_order(f.m, f.qs)).product()
    }

    /// F_q-rank of the centralizer.
    pub fn sigma(&self) -> usize {
        self.factors.iter().map(|f| if f.qs > 0 { f.m } else { f.m / 2 }).sum()
    }
}

pub fn centralizer_type_from(nu: u32, blocks: &[BlockEigen]) -> CentralizerType {
    let mut factors = Vec::new();
    for b in blocks {
        for o in &b.orbits {
            let e = o.size();
            let qs = b.qs.pow(e as u32);
            factors.push(CentralizerFactor {
                family: if qs > 0 { Family::GL } else { Family::U },
                m: o.mult,
                d: nu * e as u32,
                orbit_size: e,
                qs,
            });
        }
    }
    CentralizerType { factors }
}

/// Centralizer type of a semisimple element.
pub fn centralizer_type(group: &Group, s: &GroupElement) -> Result<CentralizerType> {
    let blocks: Vec<BlockEigen> = s
        .blocks
        .iter()
        .enumerate()
        .map(|(i, b)| block_eigen(group, i, b, &Mat::identity(b.n)))
        .collect::<Result<_>>()?;
    Ok(centralizer_type_from(group.spec().nu, &blocks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GroupSpec;

    #[test]
    fn jordan_example_gl2_f3() {
        let g = Group::standalone(GroupSpec::gl(2, 3).unwrap()).unwrap();
        let f = g.field();
        let m2 = f.neg(1);
        let x = GroupElement::single(Mat::from_rows(&[vec![m2, m2], vec![0, m2]]));
        assert_eq!(g.element_order(&x), 6);
        let jp = jordan(&g, &x);
        assert_eq!(jp.s.blocks[0], Mat::scalar(2, m2));
        assert_eq!(jp.u.blocks[0], Mat::from_rows(&[vec![1, 1], vec![0, 1]]));
    }

    #[test]
    fn jordan_is_unique() {
        for spec in [GroupSpec::gl(2, 2).unwrap(), GroupSpec::u(2, 2).unwrap()] {
            let g = Group::standalone(spec).unwrap();
            let els = g.elements().unwrap();
            let p = g.spec().p();
            let is_ss = |x: &GroupElement| g.element_order(x) % p != 0;
            let is_uni = |x: &GroupElement| {
                let mut o = g.element_order(x);
                while o % p == 0 {
                    o /= p;
                }
                o == 1
            };
            for x in els.iter() {
                let jp = jordan(&g, x);
                assert_eq!(g.mul(&jp.s, &jp.u), *x);
                assert_eq!(g.mul(&jp.s, &jp.u), g.mul(&jp.u, &jp.s));
                let mut count = 0;
                for s in els.iter().filter(|s| is_ss(s)) {
                    let u = g.mul(&g.inv(s), x);
                    if is_uni(&u) && g.mul(s, &u) == g.mul(&u, s) {
                        count += 1;
                        assert_eq!(*s, jp.s);
                    }
                }
                assert_eq!(count, 1);
            }
        }
    }

    #[test]
    fn unipotent_types() {
        let g = Group::standalone(GroupSpec::gl(3, 2).unwrap()).unwrap();
        let u = GroupElement::single(Mat::from_rows(&[vec![1, 1, 0], vec![0, 1, 1], vec![0, 0, 1]]));
        let e = eigen_data(&g, &u).unwrap();
        assert_eq!(e[0].orbits.len(), 1);
        assert_eq!(e[0].orbits[0].utype, Partition::new(vec![3]));
        let t = GroupElement::single(Mat::from_rows(&[vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]]));
        assert_eq!(eigen_data(&g, &t).unwrap()[0].orbits[0].utype, Partition::new(vec![2, 1]));
    }
}
