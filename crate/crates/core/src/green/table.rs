//! Green polynomials, their unitary counterparts and tables of them.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::kostka::kostka_foulkes;
use super::partition::{partitions, Partition};
use super::poly::IntPoly;
use super::symmetric::sn_character;
use crate::error::{Error, Result};
use crate::groups::spec::signed_order_pprime;
use crate::groups::Family;

/// `Q^λ_ρ(q) = Σ_μ χ^μ(ρ) q^{n(λ)} K_{μλ}(q^{-1})` for `GL_n`; ρ indexes the
/// torus, λ the Jordan type of the unipotent element.
pub fn green_poly_gl(rho: &Partition, lambda: &Partition) -> Result<IntPoly> {
    let n = rho.size();
    if lambda.size() != n {
        return Err(Error::Invalid(format!("|{rho}| ≠ |{lambda}|")));
    }
    let nl = lambda.n_stat() as usize;
    let mut acc = IntPoly::default();
    for mu in partitions(n) {
        let chi = sn_character(&mu, rho) as i128;
        if chi == 0 {
            continue;
        }
        let k = kostka_foulkes(&mu, lambda)?;
        // q^{n(λ)} K(1/q)
        let rev: Vec<i128> = (0..=nl).map(|d| k.coeff(nl - d)).collect();
        acc = acc.add(&IntPoly::new(rev).scale(chi));
    }
    Ok(acc)
}

type GlKey = (Partition, Partition);

fn gl_cache() -> &'static Mutex<HashMap<GlKey, Arc<IntPoly>>> {
    static C: OnceLock<Mutex<HashMap<GlKey, Arc<IntPoly>>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

fn gl_cached(rho: &Partition, lambda: &Partition) -> Arc<IntPoly> {
    let key = (rho.clone(), lambda.clone());
    if let Some(p) = gl_cache().lock().unwrap().get(&key) {
        return p.clone();
    }
    let p = Arc::new(green_poly_gl(rho, lambda).expect("sizes checked by caller"));
    gl_cache().lock().unwrap().insert(key, p.clone());
    p
}

/// σ(G) and σ(T) for the signed parameter `qs`.
fn sigmas(n: u32, rho: &Partition, qs_sign: i64) -> (u32, u32) {
    if qs_sign > 0 {
        (n, rho.len() as u32)
    } else {
        (n / 2, rho.parts().iter().filter(|&&x| x % 2 == 0).count() as u32)
    }
}

/// `ε_G ε_T |G^F|_{p'} / |T^F|` as a polynomial in q.
pub fn degree_poly(family: Family, rho: &Partition) -> IntPoly {
    let n = rho.size();
    let s = family.signed(1);
    let (sg, st) = sigmas(n, rho, s);
    // |G|_{p'} = ∏ |(sq)^i - 1| with sq = ±q
    let factor = |i: u32| -> IntPoly {
        // (s q)^i - 1 with sign normalized to a positive leading coefficient
        let lead = s.pow(i) as i128;
        IntPoly::new({
            let mut v = vec![0; i as usize + 1];
            v[0] = -lead;
            v[i as usize] = 1;
            v
        })
    };
    let mut num = IntPoly::constant(1);
    for i in 1..=n {
        num = num.mul(&factor(i));
    }
    let mut den = IntPoly::constant(1);
    for &r in rho.parts() {
        den = den.mul(&factor(r));
    }
    let sign = if (sg + st) % 2 == 0 { 1 } else { -1 };
    num.div_exact(&den).expect("|T^F| divides |G^F|_{p'}").scale(sign)
}

/// Ennola sign for `U_n` and torus class ρ: the unique ±1 with
/// `sign · Q^{(1^n)}_ρ(-q)` equal to the degree polynomial.
pub fn ennola_sign(rho: &Partition) -> Result<i128> {
    let n = rho.size();
    let one = Partition::new(vec![1; n as usize]);
    let at_minus = green_poly_gl(rho, &one)?.negate_var();
    let target = degree_poly(Family::U, rho);
    if target == at_minus {
        Ok(1)
    } else if target == at_minus.scale(-1) {
        Ok(-1)
    } else {
        Err(Error::Assertion(format!("U_{n} torus {rho}: degree is not ± the Ennola transform")))
    }
}

/// Green polynomial in q for the family.
pub fn green_poly(family: Family, rho: &Partition, lambda: &Partition) -> Result<IntPoly> {
    let p = green_poly_gl(rho, lambda)?;
    match family {
        Family::GL => Ok(p),
        Family::U => Ok(p.negate_var().scale(ennola_sign(rho)?)),
    }
}

/// `Q_T(u)` at a concrete q.
pub fn green_value(family: Family, n: u32, rho: &Partition, lambda: &Partition, q: u64) -> Result<i128> {
    if rho.size() != n || lambda.size() != n {
        return Err(Error::Invalid(format!("partitions must have size {n}")));
    }
    if n > 6 {
        return Err(Error::Unsupported(format!("rank {n}")));
    }
    Ok(green_poly(family, rho, lambda)?.eval(q as i128))
}

fn sign_cache() -> &'static Mutex<HashMap<Partition, i128>> {
    static C: OnceLock<Mutex<HashMap<Partition, i128>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Green function of "GL_m over the signed parameter qs": `GL_m(qs)` for
/// qs > 0 and `U_m(|qs|)` for qs < 0.
pub fn green_signed(rho: &Partition, lambda: &Partition, qs: i64) -> i128 {
    let p = gl_cached(rho, lambda);
    let v = p.eval(qs as i128);
    if qs > 0 {
        return v;
    }
    let sign = {
        let cached = sign_cache().lock().unwrap().get(rho).copied();
        match cached {
            Some(s) => s,
            None => {
                let s = ennola_sign(rho).expect("Ennola sign is ±1");
                sign_cache().lock().unwrap().insert(rho.clone(), s);
                s
            }
        }
    };
    sign * v
}

/// Degree `ε_G ε_T |G|_{p'}/|T|` for the signed parameter.
pub fn degree_signed(rho: &Partition, qs: i64) -> i128 {
    let n = rho.size();
    let (sg, st) = sigmas(n, rho, qs.signum());
    let num = signed_order_pprime(n as usize, qs) as i128;
    let den: i128 = rho.parts().iter().map(|&r| ((qs as i128).pow(r) - 1).abs()).product();
    let s = if (sg + st) % 2 == 0 { 1 } else { -1 };
    s * num / den
}

/// Torus class of the same torus viewed over `F_{q^ν}`: each part λ_i
/// splits into `gcd(λ_i, ν)` parts of size `λ_i / gcd(λ_i, ν)`.
pub fn refine_class(rho: &Partition, nu: u32) -> Partition {
    let mut v = Vec::new();
    for &r in rho.parts() {
        let g = num_integer::gcd(r, nu);
        for _ in 0..g {
            v.push(r / g);
        }
    }
    Partition::new(v)
}

/// All Green polynomials of one (family, n).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreenTable {
    pub family: Family,
    pub n: u32,
    pub entries: BTreeMap<(Partition, Partition), IntPoly>,
}

impl GreenTable {
    pub fn generate(family: Family, n: u32) -> Result<Self> {
        if n == 0 || n > 6 {
            return Err(Error::Unsupported(format!("rank {n}")));
        }
        let mut entries = BTreeMap::new();
        for rho in partitions(n) {
            for lambda in partitions(n) {
                entries.insert((rho.clone(), lambda.clone()), green_poly(family, &rho, &lambda)?);
            }
        }
        Ok(GreenTable { family, n, entries })
    }

    pub fn get(&self, rho: &Partition, lambda: &Partition) -> Option<&IntPoly> {
        self.entries.get(&(rho.clone(), lambda.clone()))
    }

    /// One line per entry: `GL 2 (1,1) (2) : c0 c1 …`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for ((rho, lambda), p) in &self.entries {
            let c: Vec<String> = p.0.iter().map(|x| x.to_string()).collect();
            s.push_str(&format!("{} {} {} {} : {}\n", self.family, self.n, rho, lambda, c.join(" ")));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut family = None;
        let mut n = None;
        let mut entries = BTreeMap::new();
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let bad = || Error::Data(format!("bad green table line: {line}"));
            let (head, tail) = line.split_once(':').ok_or_else(bad)?;
            let h: Vec<&str> = head.split_whitespace().collect();
            if h.len() != 4 {
                return Err(bad());
            }
            let fam: Family = h[0].parse()?;
            let nn: u32 = h[1].parse().map_err(|_| bad())?;
            if family.is_some_and(|f| f != fam) || n.is_some_and(|x| x != nn) {
                return Err(Error::Data("mixed tables in one file".into()));
            }
            family = Some(fam);
            n = Some(nn);
            let coeffs = tail
                .split_whitespace()
                .map(|x| x.parse::<i128>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            entries.insert((h[2].parse()?, h[3].parse()?), IntPoly::new(coeffs));
        }
        Ok(GreenTable {
            family: family.ok_or_else(|| Error::Data("empty green table".into()))?,
            n: n.unwrap(),
            entries,
        })
    }
}

/// One sample of the leading-term scan.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LeadingSample {
    pub nu: u32,
    pub class: Partition,
    pub value: i128,
    /// `value / q^{ν d_u}` as an exact fraction string.
    pub ratio: String,
    /// Coefficient of `X^{d_u}` in the Green polynomial in `X = q^ν`.
    pub leading: i128,
}

/// Result of [`green_leading_limit`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LeadingLimit {
    pub d_u: u32,
    pub samples: Vec<LeadingSample>,
    /// The common leading coefficient, if all samples agree.
    pub limit: Option<i128>,
}

/// `lim Q^{G,ν}(u) / q^{ν d_u}` along a sample of levels.
///
/// At level ν the group is GL_n over `(±q)^ν` and the torus class is
/// refined by [`refine_class`]; the Green value is a polynomial in
/// `X = q^ν` of degree at most `d_u = n(λ)` whose top coefficient is the
/// limit whenever it is the same for all sampled ν.
pub fn green_leading_limit(
    family: Family,
    rho: &Partition,
    lambda: &Partition,
    q: u64,
    nus: &[u32],
) -> Result<LeadingLimit> {
    if rho.size() != lambda.size() {
        return Err(Error::Invalid("size mismatch".into()));
    }
    let d_u = lambda.n_stat();
    let mut samples = Vec::new();
    for &nu in nus {
        let qs = family.signed(q).pow(nu);
        let class = refine_class(rho, nu);
        let value = green_signed(&class, lambda, qs);
        let p = gl_cached(&class, lambda);
        let sign = if qs < 0 { ennola_sign(&class)? } else { 1 };
        let sgn_pow = if qs < 0 && d_u % 2 == 1 { -1 } else { 1 };
        let leading = p.coeff(d_u as usize) * sign * sgn_pow;
        let den = BigInt::from(q).pow(nu * d_u);
        let ratio = BigRational::new(BigInt::from(value), den).to_string();
        samples.push(LeadingSample { nu, class, value, ratio, leading });
    }
    let limit = match samples.first() {
        Some(s) if samples.iter().all(|x| x.leading == s.leading) => Some(s.leading),
        _ => None,
    };
    Ok(LeadingLimit { d_u, samples, limit })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn gl2_values() {
        assert_eq!(green_value(Family::GL, 1, &p(&[1]), &p(&[1]), 5).unwrap(), 1);
        for q in [2u64, 3, 4, 5] {
            let qi = q as i128;
            assert_eq!(green_value(Family::GL, 2, &p(&[1, 1]), &p(&[1, 1]), q).unwrap(), qi + 1);
            assert_eq!(green_value(Family::GL, 2, &p(&[2]), &p(&[1, 1]), q).unwrap(), 1 - qi);
            assert_eq!(green_value(Family::GL, 2, &p(&[1, 1]), &p(&[2]), q).unwrap(), 1);
            assert_eq!(green_value(Family::GL, 2, &p(&[2]), &p(&[2]), q).unwrap(), 1);
        }
    }

    #[test]
    fn degrees_match_u_equals_one() {
        for n in 1..=4u32 {
            let one = p(&vec![1; n as usize]);
            for rho in partitions(n) {
                for fam in [Family::GL, Family::U] {
                    let g = green_poly(fam, &rho, &one).unwrap();
                    assert_eq!(g, degree_poly(fam, &rho));
                    for q in [2u64, 3] {
                        assert_eq!(g.eval(q as i128), degree_signed(&rho, fam.signed(q)));
                    }
                }
                assert_eq!(ennola_sign(&rho).unwrap(), 1);
            }
        }
    }

    #[test]
    fn regular_unipotent_is_one() {
        for n in 1..=4u32 {
            for rho in partitions(n) {
                for fam in [Family::GL, Family::U] {
                    assert_eq!(green_poly(fam, &rho, &p(&[n])).unwrap(), IntPoly::constant(1));
                }
            }
        }
    }

    #[test]
    fn table_round_trip() {
        let t = GreenTable::generate(Family::U, 3).unwrap();
        let back = GreenTable::from_text(&t.to_text()).unwrap();
        assert_eq!(t, back);
        assert_eq!(t.entries.len(), 9);
    }

    #[test]
    fn refinement() {
        assert_eq!(refine_class(&p(&[2]), 2), p(&[1, 1]));
        assert_eq!(refine_class(&p(&[3, 1]), 2), p(&[3, 1]));
        assert_eq!(refine_class(&p(&[4]), 6), p(&[2, 2]));
    }

    #[test]
    fn leading_limits() {
        let one = p(&[1, 1]);
        let l = green_leading_limit(Family::GL, &p(&[1, 1]), &one, 2, &[1, 2, 3]).unwrap();
        assert_eq!(l.limit, Some(1));
        let l = green_leading_limit(Family::GL, &p(&[2]), &one, 2, &[1, 3, 5]).unwrap();
        assert_eq!(l.limit, Some(-1));
        let l = green_leading_limit(Family::GL, &p(&[2]), &p(&[2]), 3, &[1, 2]).unwrap();
        assert_eq!((l.d_u, l.limit), (0, Some(1)));
        // the nonsplit torus splits at even levels, so mixed parity does not stabilize
        let l = green_leading_limit(Family::GL, &p(&[2]), &one, 2, &[1, 2]).unwrap();
        assert_eq!(l.limit, None);
    }
}
