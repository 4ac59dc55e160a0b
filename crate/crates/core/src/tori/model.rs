//! Eigenvalue-slot model of F-stable maximal tori.
//!
//! A torus of class λ in a factor with signed parameter `qs` has one
//! eigenvalue slot per coordinate. F acts on the slots of a λ_i-block as
//! a cyclic shift followed by `x ↦ x^{qs}`, so an F-fixed point is
//! determined by its first slot `y`, with slots `y, y^{qs}, y^{qs²}, …`
//! and `y ∈ μ_{m_i}`, `m_i = |qs^{λ_i} - 1|`. Coordinates are exponents
//! with respect to the universe's compatible generators of `μ_{m_i}`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::green::{refine_class, Partition};
use crate::groups::{Context, Family, GroupSpec};

/// Cap on `|T^{F^ν}|` per factor for explicit listing.
pub const TORUS_CAP: u128 = 1_000_000;

/// F-conjugacy class of a maximal torus: a partition of the rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TorusClass {
    pub family: Family,
    pub parts: Partition,
}

impl TorusClass {
    pub fn new(family: Family, parts: Partition) -> Self {
        TorusClass { family, parts }
    }

    pub fn rank(&self) -> u32 {
        self.parts.size()
    }

    /// Cyclic factor orders `m_i` of `T^F` at parameter q.
    pub fn orders(&self, q: u64) -> Vec<u64> {
        let s = self.family.signed(q) as i128;
        self.parts.parts().iter().map(|&l| (s.pow(l) - 1).unsigned_abs() as u64).collect()
    }

    /// Smallest ν such that T splits over F_{q^ν}: the order of F on the
    /// character lattice.
    pub fn splitting_degree(&self) -> u32 {
        self.parts.parts().iter().fold(1, |acc, &l| {
            let d = match self.family {
                Family::U if l % 2 == 1 => 2 * l,
                _ => l,
            };
            num_integer::lcm(acc, d)
        })
    }

    /// F_q-rank σ(T).
    pub fn sigma(&self) -> usize {
        match self.family {
            Family::GL => self.parts.len(),
            Family::U => self.parts.parts().iter().filter(|&&l| l % 2 == 0).count(),
        }
    }
}

impl std::fmt::Display for TorusClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}{}", self.family, self.parts)
    }
}

/// One class per partition of n.
pub fn torus_classes(family: Family, n: u32) -> Vec<TorusClass> {
    crate::green::partitions(n).into_iter().map(|p| TorusClass::new(family, p)).collect()
}

pub(crate) fn pow_mod_signed(base: i64, e: u32, m: u64) -> u64 {
    let m = m as i128;
    let mut r: i128 = 1;
    let b = (base as i128).rem_euclid(m);
    for _ in 0..e {
        r = r * b % m;
    }
    r as u64
}

/// A point of `T^{F^ν}` for one factor.
#[derive(Clone, Debug)]
pub struct LevelPoint {
    /// Eigenvalue logs slot by slot.
    pub slots: Vec<u64>,
    /// `(first slot log, length)` of each F^ν-cycle of slots.
    pub cycles: Vec<(u64, u32)>,
    /// Coordinates of the norm `N^ν(t) ∈ T^F`.
    pub norm: Vec<u64>,
}

/// `T^{F^ν}` for one factor, indexed by sorted eigenvalue multiset.
#[derive(Debug)]
pub struct FactorLevel {
    pub points: Vec<LevelPoint>,
    pub by_key: HashMap<Vec<u64>, Vec<usize>>,
}

/// The torus of one factor.
#[derive(Clone, Debug)]
pub struct FactorTorus {
    pub class: TorusClass,
    /// Base (level-1) signed parameter.
    pub qs: i64,
    pub orders: Vec<u64>,
    pub units: u64,
    steps: Vec<u64>,
}

impl FactorTorus {
    pub fn new(class: TorusClass, q: u64, ctx: &Context) -> Result<Self> {
        let qs = class.family.signed(q);
        let orders = class.orders(q);
        let steps = orders.iter().map(|&m| ctx.mu_step(m)).collect::<Result<Vec<_>>>()?;
        Ok(FactorTorus { class, qs, orders, units: ctx.units(), steps })
    }

    pub fn rank(&self) -> usize {
        self.class.rank() as usize
    }

    /// Slot logs of the level-1 point with coordinates `a`.
    pub fn slots(&self, a: &[u64]) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.rank());
        for (i, &l) in self.class.parts.parts().iter().enumerate() {
            let base = (a[i] % self.orders[i]) * self.steps[i] % self.units;
            for j in 0..l {
                let e = pow_mod_signed(self.qs, j, self.units);
                out.push((base as u128 * e as u128 % self.units as u128) as u64);
            }
        }
        out
    }

    /// Coordinates of the point whose first slots are given, if it lies in `T^F`.
    pub fn coords_from_slots(&self, slots: &[u64]) -> Result<Vec<u64>> {
        let mut off = 0;
        let mut out = Vec::new();
        for (i, &l) in self.class.parts.parts().iter().enumerate() {
            let y = slots[off];
            if y % self.steps[i] != 0 {
                return Err(Error::Assertion(format!("slot log {y} outside μ_{}", self.orders[i])));
            }
            out.push(y / self.steps[i]);
            off += l as usize;
        }
        Ok(out)
    }

    /// `∏_{k<ν} F^k(y)` on slot logs.
    pub fn norm_slots(&self, y: &[u64], nu: u32) -> Vec<u64> {
        let mut out = vec![0u64; y.len()];
        let mut off = 0;
        for &l in self.class.parts.parts() {
            let l = l as usize;
            for j in 0..l {
                let mut acc: u128 = 0;
                for k in 0..nu as usize {
                    let e = pow_mod_signed(self.qs, k as u32, self.units) as u128;
                    let src = off + (j + l * nu as usize - k) % l;
                    acc = (acc + e * y[src] as u128) % self.units as u128;
                }
                out[off + j] = acc as u64;
            }
            off += l;
        }
        out
    }

    /// `F^k` on slot logs.
    pub fn frob_slots(&self, y: &[u64], k: u32) -> Vec<u64> {
        let e = pow_mod_signed(self.qs, k, self.units) as u128;
        let mut out = vec![0u64; y.len()];
        let mut off = 0;
        for &l in self.class.parts.parts() {
            let l = l as usize;
            for j in 0..l {
                let src = off + (j + l * k as usize - k as usize) % l;
                out[off + j] = (y[src] as u128 * e % self.units as u128) as u64;
            }
            off += l;
        }
        out
    }

    /// Explicit listing of `T^{F^ν}`.
    pub fn level(&self, nu: u32) -> Result<FactorLevel> {
        let parts = self.class.parts.parts();
        // per block: g sub-cycles, each with generator of μ_{m'}
        struct Cyc {
            block_off: usize,
            block_len: u32,
            r: u32,
            len: u32,
            order: u64,
            step: u64,
        }
        let mut cycs = Vec::new();
        let mut off = 0;
        let qnu = self.qs.pow(nu) as i128;
        let mut size: u128 = 1;
        for &l in parts {
            let g = num_integer::gcd(l, nu);
            let len = l / g;
            let order = (qnu.pow(len) - 1).unsigned_abs() as u64;
            if self.units % order != 0 {
                return Err(Error::Assertion(format!("μ_{order} not in universe")));
            }
            for r in 0..g {
                cycs.push(Cyc { block_off: off, block_len: l, r, len, order, step: self.units / order });
                size *= order as u128;
            }
            off += l as usize;
        }
        if size > TORUS_CAP {
            return Err(Error::cap(format!("|T^(F^{nu})| for {}", self.class), size, TORUS_CAP));
        }
        let n = off;
        let qnu_mod = pow_mod_signed(self.qs, nu, self.units) as u128;
        let mut points = Vec::with_capacity(size as usize);
        let mut idx = vec![0u64; cycs.len()];
        loop {
            let mut slots = vec![0u64; n];
            let mut cycles = Vec::with_capacity(cycs.len());
            for (c, &b) in cycs.iter().zip(&idx) {
                let start = b * c.step % self.units;
                let mut y = start as u128;
                for k in 0..c.len {
                    let pos = (c.r + k * nu) % c.block_len;
                    slots[c.block_off + pos as usize] = y as u64;
                    y = y * qnu_mod % self.units as u128;
                }
                cycles.push((start, c.len));
            }
            let normed = self.norm_slots(&slots, nu);
            let norm = self.coords_from_slots(&normed)?;
            points.push(LevelPoint { slots, cycles, norm });
            // odometer
            let mut i = 0;
            loop {
                if i == idx.len() {
                    break;
                }
                idx[i] += 1;
                if idx[i] < cycs[i].order {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
            if i == idx.len() {
                break;
            }
        }
        let mut by_key: HashMap<Vec<u64>, Vec<usize>> = HashMap::new();
        for (k, p) in points.iter().enumerate() {
            let mut key = p.slots.clone();
            key.sort_unstable();
            by_key.entry(key).or_default().push(k);
        }
        Ok(FactorLevel { points, by_key })
    }
}

/// A maximal torus of a product group, one class per factor.
#[derive(Debug)]
pub struct Torus {
    pub spec: GroupSpec,
    pub ctx: Arc<Context>,
    pub factors: Vec<FactorTorus>,
    levels: Mutex<HashMap<u32, Arc<Vec<FactorLevel>>>>,
}

impl Torus {
    /// `spec` is taken at level 1; `classes` has one partition per factor.
    pub fn new(spec: &GroupSpec, classes: &[Partition], ctx: Arc<Context>) -> Result<Self> {
        if classes.len() != spec.factors.len() {
            return Err(Error::Invalid("one torus class per factor required".into()));
        }
        let base = spec.at_level(1);
        let mut factors = Vec::new();
        for (f, c) in base.factors.iter().zip(classes) {
            if c.size() as usize != f.n {
                return Err(Error::Invalid(format!("class {c} does not match {f}")));
            }
            factors.push(FactorTorus::new(TorusClass::new(f.family, c.clone()), base.q, &ctx)?);
        }
        Ok(Torus { spec: base, ctx, factors, levels: Mutex::new(HashMap::new()) })
    }

    /// Cyclic orders of all factors, concatenated.
    pub fn orders(&self) -> Vec<u64> {
        self.factors.iter().flat_map(|f| f.orders.iter().copied()).collect()
    }

    pub fn order(&self) -> u128 {
        self.orders().iter().map(|&m| m as u128).product()
    }

    pub fn sigma(&self) -> usize {
        self.factors.iter().map(|f| f.class.sigma()).sum()
    }

    pub fn classes(&self) -> Vec<TorusClass> {
        self.factors.iter().map(|f| f.class.clone()).collect()
    }

    /// Split concatenated coordinates into per-factor slices.
    pub fn split<'a>(&self, coords: &'a [u64]) -> Vec<&'a [u64]> {
        let mut out = Vec::new();
        let mut off = 0;
        for f in &self.factors {
            let k = f.orders.len();
            out.push(&coords[off..off + k]);
            off += k;
        }
        out
    }

    /// All coordinate tuples of `T^F`, odometer order (first coordinate fastest).
    pub fn coords(&self) -> Vec<Vec<u64>> {
        all_tuples(&self.orders())
    }

    /// Torus class of the same torus at level ν, factor by factor.
    pub fn refined_classes(&self, nu: u32) -> Vec<Partition> {
        self.factors.iter().map(|f| refine_class(&f.class.parts, nu)).collect()
    }

    /// Cached listing of `T^{F^ν}`.
    pub fn level(&self, nu: u32) -> Result<Arc<Vec<FactorLevel>>> {
        if let Some(l) = self.levels.lock().unwrap().get(&nu) {
            return Ok(l.clone());
        }
        let l = Arc::new(self.factors.iter().map(|f| f.level(nu)).collect::<Result<Vec<_>>>()?);
        self.levels.lock().unwrap().insert(nu, l.clone());
        Ok(l)
    }
}

/// Odometer listing of `∏ ℤ/m_i`.
pub fn all_tuples(orders: &[u64]) -> Vec<Vec<u64>> {
    let total: u64 = orders.iter().product();
    let mut out = Vec::with_capacity(total as usize);
    let mut cur = vec![0u64; orders.len()];
    for _ in 0..total {
        out.push(cur.clone());
        for i in 0..orders.len() {
            cur[i] += 1;
            if cur[i] < orders[i] {
                break;
            }
            cur[i] = 0;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn class_orders() {
        let u2: Vec<Vec<u64>> = torus_classes(Family::U, 2).iter().map(|c| c.orders(2)).collect();
        assert_eq!(u2, vec![vec![3], vec![3, 3]]);
        assert_eq!(TorusClass::new(Family::U, p(&[3, 1])).orders(2), vec![9, 3]);
        assert_eq!(TorusClass::new(Family::GL, p(&[2])).orders(3), vec![8]);
    }

    #[test]
    fn level_sizes_and_norms() {
        let spec = GroupSpec::gl(1, 3).unwrap();
        let ctx = Context::for_specs(&[spec.clone(), spec.at_level(2)]).unwrap();
        let t = Torus::new(&spec, &[p(&[1])], ctx).unwrap();
        let l2 = t.level(2).unwrap();
        assert_eq!(l2[0].points.len(), 8);
        let mut hits = HashMap::new();
        for pt in &l2[0].points {
            *hits.entry(pt.norm.clone()).or_insert(0) += 1;
        }
        assert_eq!(hits.len(), 2);
        assert!(hits.values().all(|&c| c == 4));
    }

    #[test]
    fn level_one_is_identity_norm() {
        let spec = GroupSpec::u(4, 2).unwrap();
        let ctx = Context::for_specs(&[spec.clone()]).unwrap();
        let t = Torus::new(&spec, &[p(&[3, 1])], ctx).unwrap();
        let l1 = t.level(1).unwrap();
        assert_eq!(l1[0].points.len(), 27);
        for pt in &l1[0].points {
            assert_eq!(t.factors[0].slots(&pt.norm), pt.slots);
        }
    }

    #[test]
    fn norm_composition() {
        // N^{6} = N^{2} ∘ (norm from level 6 to level 2)
        let spec = GroupSpec::gl(2, 2).unwrap();
        let ctx = Context::for_specs(&[spec.clone(), spec.at_level(6)]).unwrap();
        let t = Torus::new(&spec, &[p(&[2])], ctx).unwrap();
        let f = &t.factors[0];
        let l6 = t.level(6).unwrap();
        for pt in l6[0].points.iter().step_by(97) {
            // F^2-norm over three steps
            let mut mid = vec![0u64; pt.slots.len()];
            for k in 0..3 {
                let fk = f.frob_slots(&pt.slots, 2 * k);
                for (m, x) in mid.iter_mut().zip(fk) {
                    *m = (*m + x) % f.units;
                }
            }
            assert_eq!(f.norm_slots(&mid, 2), f.norm_slots(&pt.slots, 6));
        }
    }
}
