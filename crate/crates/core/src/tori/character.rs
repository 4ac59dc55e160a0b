//! Characters of `T^F = ∏ ℤ/m_i` as exponent tuples.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::model::all_tuples;
use crate::error::{Error, Result};
use crate::ffield::{Cyclotomic, CONDUCTOR_CAP};

/// Cap on `|T^F|` for listing all characters.
pub const CHARACTER_CAP: u128 = 1_000_000;

/// `t ↦ ∏ ζ_{m_i}^{e_i a_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TorusCharacter {
    pub orders: Vec<u64>,
    pub exps: Vec<u64>,
}

impl TorusCharacter {
    pub fn new(orders: Vec<u64>, exps: Vec<u64>) -> Result<Self> {
        if orders.len() != exps.len() {
            return Err(Error::Invalid(format!("{} exponents for {} cyclic factors", exps.len(), orders.len())));
        }
        let exps = exps.iter().zip(&orders).map(|(e, m)| e % m).collect();
        Ok(TorusCharacter { orders, exps })
    }

    pub fn trivial(orders: Vec<u64>) -> Self {
        let exps = vec![0; orders.len()];
        TorusCharacter { orders, exps }
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// `lcm(m_i)`.
    pub fn conductor(&self) -> u64 {
        self.orders.iter().fold(1u64, |a, &m| a.lcm(&m))
    }

    /// Exponent k with `χ(t) = ζ_N^k`, N the conductor.
    pub fn exponent(&self, coords: &[u64]) -> u64 {
        let n = self.conductor();
        let mut k: u128 = 0;
        for ((e, a), m) in self.exps.iter().zip(coords).zip(&self.orders) {
            k += (*e as u128) * (*a as u128 % *m as u128) % *m as u128 * (n / m) as u128;
        }
        (k % n as u128) as u64
    }

    pub fn evaluate(&self, coords: &[u64]) -> Result<Cyclotomic> {
        let n = self.conductor();
        if n > CONDUCTOR_CAP {
            return Err(Error::ConductorOverflow(n));
        }
        Cyclotomic::root(n as u32, self.exponent(coords) as i64)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.orders != other.orders {
            return Err(Error::Invalid("characters of different tori".into()));
        }
        let exps = self.exps.iter().zip(&other.exps).zip(&self.orders).map(|((a, b), m)| (a + b) % m).collect();
        Ok(TorusCharacter { orders: self.orders.clone(), exps })
    }

    pub fn inverse(&self) -> Self {
        let exps = self.exps.iter().zip(&self.orders).map(|(e, m)| (m - e) % m).collect();
        TorusCharacter { orders: self.orders.clone(), exps }
    }
}

impl std::fmt::Display for TorusCharacter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.exps.iter().zip(&self.orders).map(|(e, m)| format!("{e}/{m}")).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Every character of `∏ ℤ/m_i`.
pub fn characters(orders: &[u64]) -> Result<Vec<TorusCharacter>> {
    let size: u128 = orders.iter().map(|&m| m as u128).product();
    if size > CHARACTER_CAP {
        return Err(Error::cap("character listing", size, CHARACTER_CAP));
    }
    Ok(all_tuples(orders).into_iter().map(|e| TorusCharacter { orders: orders.to_vec(), exps: e }).collect())
}

/// Restriction of a character to a subgroup given by coordinates.
#[derive(Clone, Debug)]
pub struct Restriction {
    /// `ζ_N` exponents of χ on each listed element.
    pub exponents: Vec<u64>,
    pub conductor: u64,
}

impl Restriction {
    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&k| k == 0)
    }
}

/// Restrict χ to the subgroup with the listed elements; the list must be closed under addition.
pub fn restrict_character(chi: &TorusCharacter, subgroup: &[Vec<u64>]) -> Result<Restriction> {
    let set: std::collections::HashSet<Vec<u64>> = subgroup
        .iter()
        .map(|a| a.iter().zip(&chi.orders).map(|(x, m)| x % m).collect())
        .collect();
    if !set.contains(&vec![0; chi.orders.len()]) {
        return Err(Error::Invalid("subgroup does not contain the identity".into()));
    }
    for a in &set {
        for b in &set {
            let c: Vec<u64> = a.iter().zip(b).zip(&chi.orders).map(|((x, y), m)| (x + y) % m).collect();
            if !set.contains(&c) {
                return Err(Error::Invalid("element list is not a subgroup".into()));
            }
        }
    }
    Ok(Restriction { exponents: subgroup.iter().map(|a| chi.exponent(a)).collect(), conductor: chi.conductor() })
}

/// Elements of the cyclic subgroup of order d in `ℤ/m` (d | m), as 1-tuples.
pub fn cyclic_subgroup(m: u64, d: u64) -> Result<Vec<Vec<u64>>> {
    if d == 0 || m % d != 0 {
        return Err(Error::Invalid(format!("{d} does not divide {m}")));
    }
    Ok((0..d).map(|k| vec![k * (m / d)]).collect())
}
