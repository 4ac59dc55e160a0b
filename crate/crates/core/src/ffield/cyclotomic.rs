//! Exact arithmetic in ℚ(ζ_N) with dense coefficients modulo Φ_N.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const CONDUCTOR_CAP: u64 = 1_000_000;

pub fn euler_phi(n: u64) -> u64 {
    crate::ffield::field::prime_factors(n).iter().fold(n, |acc, &p| acc / p * (p - 1))
}

fn phi_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients of Φ_N, constant term first.
///
/// Uses `Φ_{mp}(x) = Φ_m(x^p) / Φ_m(x)` for primes p ∤ m on the radical of
/// N, then `Φ_N(x) = Φ_{rad N}(x^{N / rad N})`.
pub fn cyclotomic_poly(n: u32) -> Result<Arc<Vec<i64>>> {
    if n == 0 || n as u64 > CONDUCTOR_CAP {
        return Err(Error::ConductorOverflow(n as u64));
    }
    if let Some(c) = phi_cache().lock().unwrap().get(&n) {
        return Ok(c.clone());
    }
    let primes = crate::ffield::field::prime_factors(n as u64);
    let mut f: Vec<i128> = vec![-1, 1];
    for &p in &primes {
        let p = p as usize;
        let mut g = vec![0i128; (f.len() - 1) * p + 1];
        for (i, &c) in f.iter().enumerate() {
            g[i * p] = c;
        }
        f = div_monic(&g, &f).ok_or(Error::ConductorOverflow(n as u64))?;
    }
    let rad: u64 = primes.iter().product();
    let step = (n as u64 / rad) as usize;
    let mut out = vec![0i64; (f.len() - 1) * step + 1];
    for (i, &c) in f.iter().enumerate() {
        out[i * step] = i64::try_from(c).map_err(|_| Error::ConductorOverflow(n as u64))?;
    }
    let out = Arc::new(out);
    phi_cache().lock().unwrap().insert(n, out.clone());
    Ok(out)
}

// exact quotient by a monic divisor
fn div_monic(f: &[i128], g: &[i128]) -> Option<Vec<i128>> {
    let dg = g.len() - 1;
    let df = f.len() - 1;
    let mut r = f.to_vec();
    let mut q = vec![0i128; df - dg + 1];
    for i in (dg..=df).rev() {
        let c = r[i];
        q[i - dg] = c;
        for (t, &gc) in g.iter().enumerate() {
            r[i - dg + t] = r[i - dg + t].checked_sub(c.checked_mul(gc)?)?;
        }
    }
    r.iter().all(|&c| c == 0).then_some(q)
}

/// Reduce an integer vector indexed by exponents mod N into the
/// power basis modulo Φ_N.
fn reduce_integer(n: u32, v: &[i128]) -> Result<Vec<i128>> {
    let phi = cyclotomic_poly(n)?;
    let deg = phi.len() - 1;
    let mut a = vec![0i128; n as usize];
    for (j, &c) in v.iter().enumerate() {
        a[j % n as usize] += c;
    }
    for i in (deg..a.len()).rev() {
        let c = a[i];
        if c == 0 {
            continue;
        }
        for (t, &pc) in phi.iter().enumerate() {
            a[i - deg + t] -= c * pc as i128;
        }
    }
    a.truncate(deg);
    Ok(a)
}

/// An element of ℚ(ζ_N) written in the basis 1, ζ, …, ζ^{φ(N)-1}.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    n: u32,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero(n: u32) -> Result<Self> {
        let deg = cyclotomic_poly(n)?.len() - 1;
        Ok(Cyclotomic { n, coeffs: vec![BigRational::zero(); deg] })
    }

    pub fn from_integer(n: u32, v: i128) -> Result<Self> {
        let mut z = Self::zero(n)?;
        z.coeffs[0] = BigRational::from_integer(BigInt::from(v));
        Ok(z)
    }

    pub fn from_rational(n: u32, v: BigRational) -> Result<Self> {
        let mut z = Self::zero(n)?;
        z.coeffs[0] = v;
        Ok(z)
    }

    /// ζ_N^k.
    pub fn root(n: u32, k: i64) -> Result<Self> {
        let mut v = vec![0i128; n as usize];
        v[k.rem_euclid(n as i64) as usize] = 1;
        Self::from_exponent_counts(n, &v)
    }

    /// Σ v[j] ζ_N^j for an integer vector of any length.
    pub fn from_exponent_counts(n: u32, v: &[i128]) -> Result<Self> {
        let r = reduce_integer(n, v)?;
        Ok(Cyclotomic {
            n,
            coeffs: r.into_iter().map(|c| BigRational::from_integer(BigInt::from(c))).collect(),
        })
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn from_rational_vec(n: u32, v: Vec<BigRational>) -> Result<Self> {
        let phi = cyclotomic_poly(n)?;
        let deg = phi.len() - 1;
        let mut a = vec![BigRational::zero(); n as usize];
        for (j, c) in v.into_iter().enumerate() {
            let idx = j % n as usize;
            a[idx] += c;
        }
        for i in (deg..a.len()).rev() {
            if a[i].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut a[i], BigRational::zero());
            for (t, &pc) in phi.iter().enumerate().take(deg) {
                if pc != 0 {
                    a[i - deg + t] -= &c * BigRational::from_integer(BigInt::from(pc));
                }
            }
        }
        a.truncate(deg);
        Ok(Cyclotomic { n, coeffs: a })
    }

    /// Re-express in ℚ(ζ_M) for a multiple M of the conductor.
    pub fn lift(&self, m: u32) -> Result<Self> {
        if m % self.n != 0 {
            return Err(Error::Invalid(format!("{m} is not a multiple of {}", self.n)));
        }
        if m == self.n {
            return Ok(self.clone());
        }
        let step = (m / self.n) as usize;
        let mut v = vec![BigRational::zero(); m as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            v[j * step] = c.clone();
        }
        Self::from_rational_vec(m, v)
    }

    fn common(a: &Self, b: &Self) -> Result<(Self, Self)> {
        if a.n == b.n {
            return Ok((a.clone(), b.clone()));
        }
        let m = a.n.lcm(&b.n);
        if m as u64 > CONDUCTOR_CAP {
            return Err(Error::ConductorOverflow(m as u64));
        }
        Ok((a.lift(m)?, b.lift(m)?))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let (mut a, b) = Self::common(self, other)?;
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs) {
            *x += y;
        }
        Ok(a)
    }

    pub fn neg(&self) -> Self {
        Cyclotomic { n: self.n, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let (a, b) = Self::common(self, other)?;
        let mut v = vec![BigRational::zero(); a.coeffs.len() + b.coeffs.len()];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    v[i + j] += x * y;
                }
            }
        }
        Self::from_rational_vec(a.n, v)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Cyclotomic { n: self.n, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    /// Complex conjugation ζ ↦ ζ^{-1}.
    pub fn conj(&self) -> Self {
        let n = self.n as usize;
        let mut v = vec![BigRational::zero(); n];
        for (j, c) in self.coeffs.iter().enumerate() {
            v[(n - j) % n] += c;
        }
        Self::from_rational_vec(self.n, v).expect("conductor already validated")
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(|c| c.is_zero())
    }

    pub fn is_rational_integer(&self) -> bool {
        self.is_rational() && self.coeffs[0].is_integer()
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    pub fn to_integer(&self) -> Option<i128> {
        if !self.is_rational_integer() {
            return None;
        }
        self.coeffs[0].to_integer().to_i128()
    }

    /// True when the value is ±ζ_N^k for some k.
    pub fn is_root_of_unity(&self) -> bool {
        let n = self.n as i64;
        (0..n).any(|k| {
            let r = Cyclotomic::root(self.n, k).expect("valid conductor");
            r == *self || r.neg() == *self
        })
    }

    /// Floating-point value, for smoke checks only.
    pub fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            let x = c.to_f64().unwrap_or(f64::NAN);
            let t = 2.0 * std::f64::consts::PI * j as f64 / self.n as f64;
            re += x * t.cos();
            im += x * t.sin();
        }
        (re, im)
    }

    /// Coefficients as reduced fraction strings.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        match Self::common(self, other) {
            Ok((a, b)) => a.coeffs == b.coeffs,
            Err(_) => false,
        }
    }
}
impl Eq for Cyclotomic {}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational() {
            return write!(f, "{r}");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let term = match j {
                0 => String::new(),
                1 => format!("z{}", self.n),
                _ => format!("z{}^{}", self.n, j),
            };
            if j == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{term}")?;
            } else {
                write!(f, "{mag}*{term}")?;
            }
        }
        Ok(())
    }
}

/// Integer combination Σ c_k ζ_N^k kept as raw exponent counts and reduced
/// once at the end.
#[derive(Clone, Debug)]
pub struct CycloAccumulator {
    n: u32,
    counts: Vec<i128>,
}

impl CycloAccumulator {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 || n as u64 > CONDUCTOR_CAP {
            return Err(Error::ConductorOverflow(n as u64));
        }
        Ok(CycloAccumulator { n, counts: vec![0; n as usize] })
    }
    #[inline]
    pub fn add(&mut self, k: u64, c: i128) {
        self.counts[(k % self.n as u64) as usize] += c;
    }
    pub fn conductor(&self) -> u32 {
        self.n
    }
    pub fn finish(&self) -> Cyclotomic {
        Cyclotomic::from_exponent_counts(self.n, &self.counts).expect("conductor validated")
    }
}
