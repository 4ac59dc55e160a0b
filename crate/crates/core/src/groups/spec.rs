//! Group specifications and the universe field they are realized in.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::Field;

/// Group size above which full enumeration is refused.
pub const ENUM_CAP: u128 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    GL,
    U,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::GL => "GL",
            Family::U => "U",
        })
    }
}

impl std::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "GL" => Ok(Family::GL),
            "U" => Ok(Family::U),
            _ => Err(Error::Invalid(format!("unknown family {s}"))),
        }
    }
}

impl Family {
    /// The base Frobenius parameter: `q` for GL, `-q` for U.
    pub fn signed(self, q: u64) -> i64 {
        match self {
            Family::GL => q as i64,
            Family::U => -(q as i64),
        }
    }
}

/// One simple factor `GL_n` or `U_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Factor {
    pub family: Family,
    pub n: usize,
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.n)
    }
}

/// `G^{F^ν}` for a product of GL/U factors over `F_q`.
///
/// At level ν a factor behaves as "GL_n over the signed parameter"
/// `Q = (±q)^ν`: positive Q gives `GL_n(F_Q)`, negative Q gives the
/// unitary group `U_n(F_|Q|)` for the identity hermitian form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    pub factors: Vec<Factor>,
    pub q: u64,
    pub nu: u32,
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fs: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        write!(f, "{}(q={}", fs.join("x"), self.q)?;
        if self.nu != 1 {
            write!(f, ",nu={}", self.nu)?;
        }
        write!(f, ")")
    }
}

/// Closed-form `|GL_n(F_|Q|)|` or `|U_n(F_|Q|)|` from the signed parameter.
pub fn signed_order(n: usize, qs: i64) -> u128 {
    let a = qs.unsigned_abs() as u128;
    let mut o = a.pow((n * n.saturating_sub(1) / 2) as u32);
    for i in 1..=n as u32 {
        o *= ((qs as i128).pow(i) - 1).unsigned_abs();
    }
    o
}

/// The p'-part of the order.
pub fn signed_order_pprime(n: usize, qs: i64) -> u128 {
    (1..=n as u32).map(|i| ((qs as i128).pow(i) - 1).unsigned_abs()).product()
}

impl GroupSpec {
    pub fn new(factors: Vec<Factor>, q: u64) -> Result<Self> {
        let s = GroupSpec { factors, q, nu: 1 };
        s.validate()?;
        Ok(s)
    }
    pub fn gl(n: usize, q: u64) -> Result<Self> {
        Self::new(vec![Factor { family: Family::GL, n }], q)
    }
    pub fn u(n: usize, q: u64) -> Result<Self> {
        Self::new(vec![Factor { family: Family::U, n }], q)
    }
    pub fn at_level(&self, nu: u32) -> Self {
        GroupSpec { nu, ..self.clone() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.factors.is_empty() {
            return Err(Error::Invalid("empty factor list".into()));
        }
        if self.nu == 0 {
            return Err(Error::Invalid("level must be ≥ 1".into()));
        }
        let pf = crate::ffield::field::prime_factors(self.q);
        if pf.len() != 1 {
            return Err(Error::Invalid(format!("q = {} is not a prime power", self.q)));
        }
        for f in &self.factors {
            if f.n == 0 || f.n > 4 {
                return Err(Error::Unsupported(format!("rank {} (supported 1..=4)", f.n)));
            }
        }
        Ok(())
    }

    pub fn p(&self) -> u64 {
        crate::ffield::field::prime_factors(self.q)[0]
    }

    /// Signed parameter of factor `i` at this level.
    pub fn signed_q(&self, i: usize) -> i64 {
        self.factors[i].family.signed(self.q).pow(self.nu)
    }

    /// Signed parameter of factor `i` for the base Frobenius F.
    pub fn base_signed_q(&self, i: usize) -> i64 {
        self.factors[i].family.signed(self.q)
    }

    pub fn order(&self) -> u128 {
        (0..self.factors.len()).map(|i| signed_order(self.factors[i].n, self.signed_q(i))).product()
    }

    pub fn order_pprime(&self) -> u128 {
        (0..self.factors.len())
            .map(|i| signed_order_pprime(self.factors[i].n, self.signed_q(i)))
            .product()
    }

    /// F_q-rank σ(G) at level ν.
    pub fn rank_sigma(&self) -> usize {
        (0..self.factors.len())
            .map(|i| {
                let n = self.factors[i].n;
                if self.signed_q(i) > 0 {
                    n
                } else {
                    n / 2
                }
            })
            .sum()
    }

    pub fn total_rank(&self) -> usize {
        self.factors.iter().map(|f| f.n).sum()
    }

    /// Smallest extension degree over F_p holding every eigenvalue of
    /// every element at this level.
    pub fn eigen_degree(&self) -> u32 {
        let m = self.p_power();
        let mut d = 1u32;
        for i in 0..self.factors.len() {
            let n = self.factors[i].n as u32;
            let neg = self.signed_q(i) < 0;
            for e in 1..=n {
                let de = if neg && e % 2 == 1 { 2 * e } else { e };
                d = d.lcm(&de);
            }
        }
        m * self.nu * d
    }

    /// `m` with `q = p^m`.
    pub fn p_power(&self) -> u32 {
        let p = self.p();
        let mut m = 0;
        let mut x = 1;
        while x < self.q {
            x *= p;
            m += 1;
        }
        m
    }

    pub fn canonical(&self) -> String {
        self.to_string()
    }
}

/// Order formula for a spec (closed form).
pub fn group_order(spec: &GroupSpec) -> u128 {
    spec.order()
}

/// A universe field `E = GF(p^L)` shared by every object of one computation.
///
/// The generator of `μ_m ⊂ E^×` is `ω^{(|E|-1)/m}` for the table generator
/// ω, so the identifications `μ_m ≅ ℤ/m` are compatible across all m and
/// discrete logarithms come straight from the log table.
#[derive(Debug)]
pub struct Context {
    pub field: Arc<Field>,
    pub q: u64,
}

impl Context {
    /// Universe large enough for `specs` at all their levels (and level 1).
    pub fn for_specs(specs: &[GroupSpec]) -> Result<Arc<Context>> {
        let first = specs.first().ok_or_else(|| Error::Invalid("no specs".into()))?;
        let q = first.q;
        let mut deg = 1u32;
        for s in specs {
            if s.q != q {
                return Err(Error::Invalid("mixed q in one universe".into()));
            }
            deg = deg.lcm(&s.eigen_degree()).lcm(&s.at_level(1).eigen_degree());
        }
        let p = first.p() as u32;
        let size = (p as u128).checked_pow(deg).unwrap_or(u128::MAX);
        if size > crate::ffield::field::FIELD_CAP as u128 {
            return Err(Error::cap(
                format!("universe field GF({p}^{deg})"),
                size,
                crate::ffield::field::FIELD_CAP as u128,
            ));
        }
        Ok(Arc::new(Context { field: Field::get(p, deg)?, q }))
    }

    /// Log of the generator of μ_m, or an error when m ∤ |E^×|.
    pub fn mu_step(&self, m: u64) -> Result<u64> {
        let n = self.field.units() as u64;
        if m == 0 || n % m != 0 {
            return Err(Error::Assertion(format!("μ_{m} not contained in universe of order {}", n + 1)));
        }
        Ok(n / m)
    }

    pub fn units(&self) -> u64 {
        self.field.units() as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(GroupSpec::gl(3, 3).unwrap().order(), 11232);
        assert_eq!(GroupSpec::u(4, 2).unwrap().order(), 77760);
        assert_eq!(GroupSpec::u(2, 2).unwrap().order(), 18);
        assert_eq!(GroupSpec::gl(1, 5).unwrap().order(), 4);
        assert_eq!(GroupSpec::u(1, 3).unwrap().order(), 4);
        // U_n at even level is GL_n over the bigger field
        assert_eq!(GroupSpec::u(2, 2).unwrap().at_level(2).order(), GroupSpec::gl(2, 4).unwrap().order());
    }

    #[test]
    fn universe_degrees() {
        assert_eq!(GroupSpec::u(4, 2).unwrap().eigen_degree(), 12);
        assert_eq!(GroupSpec::gl(3, 3).unwrap().eigen_degree(), 6);
        assert_eq!(GroupSpec::gl(2, 5).unwrap().eigen_degree(), 2);
        assert_eq!(GroupSpec::u(3, 2).unwrap().eigen_degree(), 6);
        let g = GroupSpec::new(
            vec![Factor { family: Family::GL, n: 1 }, Factor { family: Family::GL, n: 2 }],
            2,
        )
        .unwrap();
        let ctx = Context::for_specs(&[g.clone(), g.at_level(2), g.at_level(3)]).unwrap();
        assert_eq!(ctx.field.k(), 12);
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(GroupSpec::gl(5, 2).is_err());
        assert!(GroupSpec::gl(2, 6).is_err());
    }
}
