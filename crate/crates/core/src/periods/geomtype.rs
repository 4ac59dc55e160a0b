//! Functions of geometric type `M(ν) = Σ a_i α_i^ν / Σ b_j β_j^ν` and
//! character sums over tori towers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::Cyclotomic;
use crate::green::Partition;
use crate::groups::{Context, Family, GroupSpec};
use crate::tori::{Torus, TorusCharacter};

/// A function of geometric type with integer bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeomTypeFn {
    pub num: Vec<(BigRational, i64)>,
    pub den: Vec<(BigRational, i64)>,
}

fn power_sum(terms: &[(BigRational, i64)], nu: u32) -> BigRational {
    terms.iter().fold(BigRational::zero(), |acc, (a, b)| acc + a * BigRational::from_integer(BigInt::from(*b).pow(nu)))
}

/// Leading coefficient of `Σ a α^ν` along `ν ∈ {1 + kd}`, with its base size.
fn dominant(terms: &[(BigRational, i64)], gap: u32) -> Result<Option<(u64, BigRational)>> {
    let Some(top) = terms.iter().filter(|(a, _)| !a.is_zero()).map(|(_, b)| b.unsigned_abs()).max() else {
        return Ok(None);
    };
    let mut plus = BigRational::zero();
    let mut minus = BigRational::zero();
    for (a, b) in terms.iter().filter(|(_, b)| b.unsigned_abs() == top) {
        if *b >= 0 {
            plus += a;
        } else {
            minus += a;
        }
    }
    if minus.is_zero() {
        return Ok(Some((top, plus)));
    }
    if gap % 2 == 0 {
        // ν stays odd on the progression
        return Ok(Some((top, plus - minus)));
    }
    if plus.is_zero() && top == 0 {
        return Ok(None);
    }
    Err(Error::Assertion(format!("dominant terms ±{top} alternate on a progression with odd gap")))
}

impl GeomTypeFn {
    pub fn new(num: Vec<(BigRational, i64)>, den: Vec<(BigRational, i64)>) -> Self {
        GeomTypeFn { num, den }
    }

    pub fn from_ints(num: &[(i64, i64)], den: &[(i64, i64)]) -> Self {
        let c = |v: &[(i64, i64)]| v.iter().map(|&(a, b)| (BigRational::from_integer(a.into()), b)).collect();
        GeomTypeFn { num: c(num), den: c(den) }
    }

    pub fn evaluate(&self, nu: u32) -> Result<BigRational> {
        let d = power_sum(&self.den, nu);
        if d.is_zero() {
            return Err(Error::Invalid(format!("denominator vanishes at ν = {nu}")));
        }
        Ok(power_sum(&self.num, nu) / d)
    }

    /// Limit along `{1 + kd}`; an error if it is infinite or ambiguous.
    pub fn limit(&self, gap: u32) -> Result<BigRational> {
        let den = dominant(&self.den, gap)?.ok_or_else(|| Error::Invalid("zero denominator".into()))?;
        let Some(num) = dominant(&self.num, gap)? else {
            return Ok(BigRational::zero());
        };
        if den.1.is_zero() {
            return Err(Error::Assertion("dominant denominator terms cancel".into()));
        }
        if num.0 < den.0 || num.1.is_zero() {
            return Ok(BigRational::zero());
        }
        if num.0 > den.0 {
            return Err(Error::Assertion("function grows without bound".into()));
        }
        Ok(num.1 / den.1)
    }

    /// Integer samples that all equal a finite limit certify constancy.
    pub fn constancy_certificate(&self, gap: u32, samples: &[(u32, BigRational)]) -> Result<BigInt> {
        let l = self.limit(gap)?;
        if !l.is_integer() {
            return Err(Error::Assertion(format!("limit {l} is not an integer")));
        }
        for (nu, v) in samples {
            if (*nu - 1) % gap != 0 {
                return Err(Error::Invalid(format!("ν = {nu} is off the progression")));
            }
            if *v != l {
                return Err(Error::Assertion(format!("sample at ν = {nu} is {v}, limit is {l}")));
            }
        }
        Ok(l.to_integer())
    }

    /// Exact fit of integer samples to `Σ a_i α_i^ν / q^{rν}` with
    /// `α_i ∈ {±1, ±q, …, ±q^r}`, using rational elimination and checking
    /// every sample.
    pub fn fit(q: u64, r: u32, samples: &[(u32, BigRational)]) -> Result<GeomTypeFn> {
        let mut bases: Vec<i64> = Vec::new();
        for j in 0..=r {
            let b = (q as i64).pow(j);
            bases.push(b);
            bases.push(-b);
        }
        let n = bases.len();
        if samples.len() < n {
            return Err(Error::Invalid(format!("{} samples for {n} unknowns", samples.len())));
        }
        // normal equations are unnecessary: solve the first n rows exactly, then verify
        let mut m: Vec<Vec<BigRational>> = samples
            .iter()
            .take(n)
            .map(|(nu, v)| {
                let mut row: Vec<BigRational> =
                    bases.iter().map(|&b| BigRational::from_integer(BigInt::from(b).pow(*nu))).collect();
                row.push(v.clone());
                row
            })
            .collect();
        let sol = solve(&mut m, n).ok_or_else(|| Error::Assertion("sample matrix is singular".into()))?;
        let f = GeomTypeFn {
            num: sol.into_iter().zip(bases).filter(|(a, _)| !a.is_zero()).collect(),
            den: vec![(BigRational::one(), (q as i64).pow(r))],
        };
        for (nu, v) in samples {
            let w = power_sum(&f.num, *nu);
            if w != *v {
                return Err(Error::Assertion(format!("fit fails at ν = {nu}")));
            }
        }
        Ok(f)
    }
}

fn solve(m: &mut [Vec<BigRational>], n: usize) -> Option<Vec<BigRational>> {
    for c in 0..n {
        let pr = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(c, pr);
        let inv = m[c][c].clone();
        for x in m[c].iter_mut() {
            *x = &*x / &inv;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                let row_c = m[c].clone();
                for (x, y) in m[r].iter_mut().zip(row_c) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(m.iter().map(|row| row[n].clone()).collect())
}

/// Towers of torus subgroups for character-sum ratios.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Tower {
    /// `U = GL_1`, dimension 1.
    Gl1,
    /// `U = U_1`, with `U^F = C_{q+1}`, dimension 1.
    U1,
    /// `U = μ_k ⊂ GL_1` with `k | q - 1`, dimension 0.
    Mu(u64),
}

/// `M(ν) = Σ_{p ∈ U^{F^ν}} η(N^ν p)` for each ν, with the ratios
/// `M(ν)/q^{ν·dim U}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CharSumReport {
    pub q: u64,
    pub eta: u64,
    pub dim: u32,
    pub components: u64,
    pub sums: Vec<(u32, i128)>,
    pub ratios: Vec<(u32, String)>,
    /// Exact limit along the progression, when a geometric-type fit exists.
    pub limit: Option<String>,
    /// `[η restricted to U^F is trivial] · 𝒞(U)`.
    pub expected: i128,
    pub matches: bool,
}

pub fn char_sum_ratio(tower: Tower, q: u64, eta: u64, nus: &[u32], gap: u32) -> Result<CharSumReport> {
    let (family, dim, components) = match tower {
        Tower::Gl1 => (Family::GL, 1, 1),
        Tower::U1 => (Family::U, 1, 1),
        Tower::Mu(k) => {
            if k == 0 || (q - 1) % k != 0 {
                return Err(Error::Invalid(format!("μ_{k} is not F_q-rational")));
            }
            (Family::GL, 0, k)
        }
    };
    let spec = GroupSpec::new(vec![crate::groups::Factor { family, n: 1 }], q)?;
    let m = match tower {
        Tower::U1 => q + 1,
        _ => q - 1,
    };
    let chi = TorusCharacter::new(vec![m], vec![eta])?;
    // restriction of η to U^F
    let sub_step = match tower {
        Tower::Mu(k) => m / k,
        _ => 1,
    };
    let trivial_on_u = (eta * sub_step) % m == 0;
    let expected = if trivial_on_u { components as i128 } else { 0 };
    let mut sums = Vec::new();
    let mut ratios = Vec::new();
    for &nu in nus {
        // one universe per level keeps the field small
        let ctx = Context::for_specs(&[spec.clone(), spec.at_level(nu)])?;
        let torus = Torus::new(&spec, &[Partition::new(vec![1])], ctx)?;
        let level = torus.level(nu)?;
        let pts = &level[0].points;
        let mut acc = crate::ffield::CycloAccumulator::new(chi.conductor() as u32)?;
        for pt in pts {
            let in_u = match tower {
                // μ_k: the slot log must be a multiple of |E^×|/k
                Tower::Mu(k) => pt.slots[0] % (torus.ctx.units() / k) == 0,
                _ => true,
            };
            if in_u {
                acc.add(chi.exponent(&pt.norm), 1);
            }
        }
        let s: Cyclotomic = acc.finish();
        let v = s.to_integer().ok_or_else(|| Error::Assertion("character sum is not an integer".into()))?;
        let r = BigRational::new(BigInt::from(v), BigInt::from(q).pow(nu * dim));
        sums.push((nu, v));
        ratios.push((nu, r.to_string()));
    }
    let samples: Vec<(u32, BigRational)> = sums.iter().map(|&(nu, v)| (nu, BigRational::from_integer(v.into()))).collect();
    let on: Vec<(u32, BigRational)> = samples.iter().filter(|(nu, _)| (nu - 1) % gap == 0).cloned().collect();
    let limit = if dim == 0 {
        // values themselves; constant along the progression when the limit is finite
        let all_equal = on.windows(2).all(|w| w[0].1 == w[1].1);
        (all_equal && !on.is_empty()).then(|| on[0].1.clone())
    } else {
        GeomTypeFn::fit(q, dim, &samples).ok().and_then(|f| f.limit(gap).ok())
    };
    let matches = limit.as_ref().map(|l| *l == BigRational::from_integer(expected.into())).unwrap_or(false);
    Ok(CharSumReport {
        q,
        eta,
        dim,
        components,
        sums,
        ratios,
        limit: limit.map(|l| l.to_string()),
        expected,
        matches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn evaluation_and_limits() {
        let f = GeomTypeFn::from_ints(&[(1, 2), (-1, 1)], &[(1, 1)]);
        assert_eq!(f.evaluate(3).unwrap(), r(7));
        let g = GeomTypeFn::from_ints(&[(2, 3), (1, 1)], &[(1, 3)]);
        assert_eq!(g.limit(1).unwrap(), r(2));
        let c = GeomTypeFn::from_ints(&[(2, 1)], &[(1, 1)]);
        assert_eq!(c.constancy_certificate(1, &[(1, r(2)), (2, r(2)), (3, r(2))]).unwrap(), BigInt::from(2));
        let alt = GeomTypeFn::from_ints(&[(1, -2)], &[(1, 2)]);
        assert!(alt.limit(1).is_err());
        assert_eq!(alt.limit(2).unwrap(), r(-1));
    }

    #[test]
    fn fit_recovers_unit_group_count() {
        let samples: Vec<(u32, BigRational)> = (1..=6).map(|nu| (nu, r(3i64.pow(nu) - 1))).collect();
        let f = GeomTypeFn::fit(3, 1, &samples).unwrap();
        assert_eq!(f.limit(1).unwrap(), r(1));
    }

    #[test]
    fn gl1_tower_dichotomy() {
        let nus: Vec<u32> = (1..=6).collect();
        let t = char_sum_ratio(Tower::Gl1, 3, 0, &nus, 1).unwrap();
        assert!(t.matches);
        let n = char_sum_ratio(Tower::Gl1, 3, 1, &nus, 1).unwrap();
        assert!(n.sums.iter().all(|&(_, v)| v == 0));
        assert!(n.matches);
        let u = char_sum_ratio(Tower::U1, 2, 1, &nus, 1).unwrap();
        assert!(u.sums.iter().all(|&(_, v)| v == 0) && u.matches);
    }

    #[test]
    fn finite_subgroup_needs_even_gap() {
        let nus: Vec<u32> = (1..=6).collect();
        let odd = char_sum_ratio(Tower::Mu(2), 3, 1, &nus, 2).unwrap();
        assert!(odd.matches);
        let all = char_sum_ratio(Tower::Mu(2), 3, 1, &nus, 1).unwrap();
        assert!(!all.matches);
    }
}
