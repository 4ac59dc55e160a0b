//! Table-driven arithmetic in GF(p^k).
//!
//! Elements are encoded as `u32` codes `Σ c_i p^i` where `c_i` are the
//! coefficients of the residue modulo the defining polynomial. A field
//! carries exp/log tables with respect to its least-code primitive
//! element; addition goes through XOR for p = 2 and Zech logarithms for
//! odd p.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use super::poly;
use crate::error::{Error, Result};

/// Upper bound on `p^k` for fields with materialized tables.
pub const FIELD_CAP: u64 = 1 << 24;

const NONE: u32 = u32::MAX;

/// A finite field `GF(p^k)` given by its defining polynomial.
///
/// `modulus` lists the coefficients from the constant term upward and is
/// monic of degree `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub k: u32,
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn size(&self) -> u64 {
        (self.p as u64).pow(self.k)
    }

    /// Canonical text form, e.g. `GF(3^2)[1,0,1]`.
    pub fn canonical(&self) -> String {
        let m: Vec<String> = self.modulus.iter().map(|c| c.to_string()).collect();
        format!("GF({}^{})[{}]", self.p, self.k, m.join(","))
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factors of `n`, ascending, without multiplicity.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Build the spec of `GF(p^k)` with the lexicographically least monic
/// irreducible modulus.
///
/// Candidates `x^k + Σ_{i<k} c_i x^i` are ordered by the integer
/// `Σ c_i p^i`, i.e. coefficients compared from `x^{k-1}` downward.
pub fn make_field(p: u32, k: u32) -> Result<FieldSpec> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if k == 0 {
        return Err(Error::Invalid("extension degree must be at least 1".into()));
    }
    let size = (p as u128).checked_pow(k).unwrap_or(u128::MAX);
    if size > FIELD_CAP as u128 {
        return Err(Error::cap("field size", size, FIELD_CAP as u128));
    }
    let lower = (p as u64).pow(k);
    for code in 0..lower {
        let mut f = poly::digits(code, p, k as usize);
        f.push(1);
        if k > 1 && f[0] == 0 {
            continue;
        }
        if poly::is_irreducible(&f, p) {
            return Ok(FieldSpec { p, k, modulus: f });
        }
    }
    Err(Error::Construction(format!("no irreducible of degree {k} over GF({p})")))
}

/// Arithmetic tables for one field.
pub struct Field {
    spec: FieldSpec,
    size: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
    neg_one_log: u32,
    generator: u32,
}

impl std::fmt::Debug for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Field({})", self.spec.canonical())
    }
}

fn field_cache() -> &'static Mutex<HashMap<(u32, u32), Arc<Field>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Arc<Field>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Field {
    /// Shared tables for `GF(p^k)`, built on first use.
    pub fn get(p: u32, k: u32) -> Result<Arc<Field>> {
        if let Some(f) = field_cache().lock().unwrap().get(&(p, k)) {
            return Ok(f.clone());
        }
        let f = Arc::new(Field::build(make_field(p, k)?)?);
        let mut cache = field_cache().lock().unwrap();
        Ok(cache.entry((p, k)).or_insert(f).clone())
    }

    /// Tables for an explicit spec (the modulus is trusted to be irreducible).
    pub fn build(spec: FieldSpec) -> Result<Field> {
        let p = spec.p;
        let k = spec.k as usize;
        let size64 = spec.size();
        if size64 > FIELD_CAP {
            return Err(Error::cap("field size", size64 as u128, FIELD_CAP as u128));
        }
        let size = size64 as u32;
        let n = size - 1;
        let factors = prime_factors(n as u64);
        let one = poly::digits(1, p, k);
        let mut generator = NONE;
        for code in 1..size {
            let g = poly::digits(code as u64, p, k);
            let primitive = n == 1
                || factors.iter().all(|&r| {
                    poly::powmod(&g, n as u64 / r, &spec.modulus, p) != one
                });
            if primitive {
                generator = code;
                break;
            }
        }
        if generator == NONE {
            return Err(Error::Construction(format!("no primitive element in {}", spec.canonical())));
        }
        let g = poly::digits(generator as u64, p, k);
        let mut exp = vec![0u32; 2 * n as usize];
        let mut log = vec![NONE; size as usize];
        let mut cur = one.clone();
        for i in 0..n {
            let c = poly::code(&cur, p) as u32;
            if log[c as usize] != NONE {
                return Err(Error::Construction("generator is not primitive".into()));
            }
            exp[i as usize] = c;
            exp[(i + n) as usize] = c;
            log[c as usize] = i;
            cur = poly::mulmod(&cur, &g, &spec.modulus, p);
        }
        let mut zech = Vec::new();
        let mut neg_one_log = 0;
        if p != 2 {
            neg_one_log = log[(p - 1) as usize];
            zech = vec![NONE; n as usize];
            for i in 0..n {
                let c = exp[i as usize];
                let c0 = c % p;
                let one_plus = if c0 == p - 1 { c - (p - 1) } else { c + 1 };
                zech[i as usize] = if one_plus == 0 { NONE } else { log[one_plus as usize] };
            }
        }
        Ok(Field { spec, size, exp, log, zech, neg_one_log, generator })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }
    pub fn p(&self) -> u32 {
        self.spec.p
    }
    pub fn k(&self) -> u32 {
        self.spec.k
    }
    pub fn size(&self) -> u32 {
        self.size
    }
    /// Order of the multiplicative group.
    pub fn units(&self) -> u32 {
        self.size - 1
    }
    /// Code of the primitive element used for the tables.
    pub fn generator(&self) -> u32 {
        self.generator
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.spec.p == 2 {
            return a ^ b;
        }
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let n = self.size - 1;
        let la = self.log[a as usize];
        let lb = self.log[b as usize];
        let d = if lb >= la { lb - la } else { lb + n - la };
        let z = self.zech[d as usize];
        if z == NONE {
            0
        } else {
            self.exp[(la + z) as usize]
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 || self.spec.p == 2 {
            return a;
        }
        self.exp[(self.log[a as usize] + self.neg_one_log) as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.inv_nz(a))
    }

    /// Inverse of a known nonzero element.
    #[inline]
    pub fn inv_nz(&self, a: u32) -> u32 {
        let n = self.size - 1;
        let l = self.log[a as usize];
        self.exp[((n - l) % n) as usize]
    }

    /// `a^e` for a signed exponent; `0^e` is 0 for e > 0 and 1 for e = 0.
    pub fn pow(&self, a: u32, e: i64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.size - 1) as i64;
        let l = self.log[a as usize] as i64;
        let r = ((l as i128 * e as i128).rem_euclid(n as i128)) as usize;
        self.exp[r]
    }

    /// Discrete log with respect to `generator()`, `None` for zero.
    #[inline]
    pub fn log(&self, a: u32) -> Option<u32> {
        let l = self.log[a as usize];
        (l != NONE).then_some(l)
    }

    #[inline]
    pub fn exp(&self, l: u64) -> u32 {
        self.exp[(l % (self.size as u64 - 1)) as usize]
    }

    /// True when `a` lies in the subfield of order `sub_size`.
    pub fn in_subfield(&self, a: u32, sub_size: u64) -> bool {
        self.pow_u(a, sub_size) == a
    }

    fn pow_u(&self, a: u32, e: u64) -> u32 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let n = (self.size - 1) as u64;
        let l = self.log[a as usize] as u64;
        self.exp[((l as u128 * e as u128) % n as u128) as usize]
    }

    /// `log_p(q)` when `q` is a positive power of p.
    pub fn power_of_p(&self, q: u64) -> Option<u32> {
        let p = self.spec.p as u64;
        let mut m = 0;
        let mut x = 1u64;
        while x < q {
            x = x.checked_mul(p)?;
            m += 1;
        }
        (x == q && m > 0).then_some(m)
    }

    /// The q-power Frobenius `a ↦ a^q`, q = p^m with m | k.
    pub fn frobenius(&self, a: u32, q: u64) -> Result<u32> {
        match self.power_of_p(q) {
            Some(m) if self.spec.k % m == 0 => Ok(self.pow_u(a, q)),
            _ => Err(Error::InvalidBasePower(q)),
        }
    }

    /// Norm from `GF(sub_q^deg)` to `GF(sub_q)`.
    pub fn norm_down(&self, a: u32, sub_q: u64, deg: u32) -> Result<u32> {
        let m = self.power_of_p(sub_q).ok_or(Error::InvalidBasePower(sub_q))?;
        if deg == 0 || self.spec.k % (m * deg) != 0 {
            return Err(Error::DegreeMismatch(format!(
                "GF({sub_q}^{deg}) is not a subfield of {}",
                self.spec.canonical()
            )));
        }
        let big = sub_q.pow(deg);
        if !self.in_subfield(a, big) {
            return Err(Error::DegreeMismatch(format!("element {a} not in GF({sub_q}^{deg})")));
        }
        let mut acc = 1;
        let mut x = a;
        for _ in 0..deg {
            acc = self.mul(acc, x);
            x = self.pow_u(x, sub_q);
        }
        Ok(acc)
    }

    /// All codes of the subfield of order `sub_size`, ascending.
    pub fn subfield_elements(&self, sub_size: u64) -> Vec<u32> {
        (0..self.size).filter(|&a| self.in_subfield(a, sub_size)).collect()
    }

    /// Evaluate a polynomial with coefficients in the prime field.
    pub fn eval_prime_poly(&self, f: &[u32], x: u32) -> u32 {
        let mut acc = 0;
        for &c in f.iter().rev() {
            acc = self.add(self.mul(acc, x), c);
        }
        acc
    }
}

/// Embedding of a smaller field into a larger one of the same characteristic.
#[derive(Debug)]
pub struct Embedding {
    pub sub: FieldSpec,
    pub sup: FieldSpec,
    /// Image in `sup` of the class of `x` in `sub`.
    pub root: u32,
    image: Vec<u32>,
}

impl Embedding {
    pub fn map(&self, a: u32) -> u32 {
        self.image[a as usize]
    }
}

type EmbKey = (FieldSpec, FieldSpec);

fn embedding_cache() -> &'static Mutex<HashMap<EmbKey, Arc<Embedding>>> {
    static CACHE: OnceLock<Mutex<HashMap<EmbKey, Arc<Embedding>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Embedding `sub → sup` given by the least-code root of the sub-modulus.
pub fn embedding(sub: &Field, sup: &Field) -> Result<Arc<Embedding>> {
    let key = (sub.spec.clone(), sup.spec.clone());
    if let Some(e) = embedding_cache().lock().unwrap().get(&key) {
        return Ok(e.clone());
    }
    if sub.p() != sup.p() || sup.k() % sub.k() != 0 {
        return Err(Error::SpecMismatch(format!(
            "{} does not embed in {}",
            sub.spec.canonical(),
            sup.spec.canonical()
        )));
    }
    let root = (0..sup.size())
        .find(|&x| sup.eval_prime_poly(&sub.spec.modulus, x) == 0)
        .ok_or_else(|| Error::Construction("sub-modulus has no root".into()))?;
    let p = sub.p();
    let k = sub.k() as usize;
    let powers: Vec<u32> = (0..k).map(|i| sup.pow(root, i as i64)).collect();
    let image = (0..sub.size())
        .map(|a| {
            poly::digits(a as u64, p, k)
                .iter()
                .zip(&powers)
                .fold(0, |acc, (&c, &r)| sup.add(acc, sup.mul(c, r)))
        })
        .collect();
    let emb = Arc::new(Embedding { sub: sub.spec.clone(), sup: sup.spec.clone(), root, image });
    let mut cache = embedding_cache().lock().unwrap();
    Ok(cache.entry(key).or_insert(emb).clone())
}

/// A field element carrying its field, for checked arithmetic.
#[derive(Clone, Debug)]
pub struct FieldElem {
    field: Arc<Field>,
    code: u32,
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.code == other.code && self.field.spec == other.field.spec
    }
}
impl Eq for FieldElem {}

/// Binary and unary operations accepted by [`arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Inv,
    Pow(i64),
}

impl FieldElem {
    pub fn new(field: Arc<Field>, code: u32) -> Result<Self> {
        if code >= field.size() {
            return Err(Error::Invalid(format!("code {code} out of range")));
        }
        Ok(FieldElem { field, code })
    }
    pub fn from_coeffs(field: Arc<Field>, coeffs: &[u32]) -> Result<Self> {
        let p = field.p();
        if coeffs.len() != field.k() as usize || coeffs.iter().any(|&c| c >= p) {
            return Err(Error::Invalid("coefficients not reduced".into()));
        }
        let code = poly::code(coeffs, p) as u32;
        Ok(FieldElem { field, code })
    }
    pub fn code(&self) -> u32 {
        self.code
    }
    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }
    pub fn coeffs(&self) -> Vec<u32> {
        poly::digits(self.code as u64, self.field.p(), self.field.k() as usize)
    }
    pub fn is_zero(&self) -> bool {
        self.code == 0
    }
    fn same(&self, other: &Self) -> Result<()> {
        if self.field.spec != other.field.spec {
            return Err(Error::SpecMismatch(format!(
                "{} vs {}",
                self.field.spec.canonical(),
                other.field.spec.canonical()
            )));
        }
        Ok(())
    }
    fn with(&self, code: u32) -> Self {
        FieldElem { field: self.field.clone(), code }
    }
    pub fn frobenius(&self, q: u64) -> Result<Self> {
        Ok(self.with(self.field.frobenius(self.code, q)?))
    }
    pub fn norm_down(&self, sub_q: u64, deg: u32) -> Result<Self> {
        Ok(self.with(self.field.norm_down(self.code, sub_q, deg)?))
    }
}

/// Checked arithmetic; `b` is ignored by the unary operations.
pub fn arith(a: &FieldElem, b: &FieldElem, op: ArithOp) -> Result<FieldElem> {
    a.same(b)?;
    let f = &a.field;
    let code = match op {
        ArithOp::Add => f.add(a.code, b.code),
        ArithOp::Mul => f.mul(a.code, b.code),
        ArithOp::Inv => f.inv(a.code)?,
        ArithOp::Pow(e) => {
            if a.code == 0 && e < 0 {
                return Err(Error::ZeroInverse);
            }
            f.pow(a.code, e)
        }
    };
    Ok(a.with(code))
}
