//! Stored component catalogs and the signed average formula.

use std::collections::HashMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::{CycloAccumulator, Cyclotomic};
use crate::green::Partition;
use crate::groups::Context;
use crate::periods::SphericalPair;
use crate::tori::{all_tuples, Torus, TorusCharacter};

const CATALOG_TEXT: &str = include_str!("../../data/omega.toml");
/// Catalog schema version understood by this build.
pub const CATALOG_VERSION: u32 = 1;

fn one() -> u32 {
    1
}

/// One index `ω = (c, X)`, grouped with others sharing the same `c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaDatum {
    pub pattern: String,
    pub sigma: u32,
    #[serde(default = "one")]
    pub count: u32,
    #[serde(default)]
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub pair: String,
    pub torus: Vec<String>,
    pub status: String,
    pub sigma_t: u32,
    #[serde(default)]
    pub omega: Vec<OmegaDatum>,
}

impl CatalogEntry {
    pub fn is_verified(&self) -> bool {
        self.status == "verified"
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetricOrbit {
    pub name: String,
    pub epsilon: Vec<u64>,
    pub components: Vec<OmegaDatum>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetricEntry {
    pub pair: String,
    pub torus: Vec<String>,
    pub sigma_t: u32,
    pub orbits: Vec<SymmetricOrbit>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    pub version: u32,
    #[serde(default)]
    pub entry: Vec<CatalogEntry>,
    #[serde(default)]
    pub symmetric: Vec<SymmetricEntry>,
}

fn same_torus(stored: &[String], classes: &[Partition]) -> bool {
    stored.len() == classes.len()
        && stored.iter().zip(classes).all(|(s, c)| s.parse::<Partition>().map(|p| p == *c).unwrap_or(false))
}

impl Catalog {
    pub fn parse(text: &str) -> Result<Self> {
        let c: Catalog = toml::from_str(text).map_err(|e| Error::Data(format!("omega catalog: {e}")))?;
        if c.version != CATALOG_VERSION {
            return Err(Error::Data(format!("omega catalog version {} (expected {CATALOG_VERSION})", c.version)));
        }
        Ok(c)
    }

    /// The catalog shipped with the library.
    pub fn builtin() -> &'static Catalog {
        static C: OnceLock<Catalog> = OnceLock::new();
        C.get_or_init(|| Catalog::parse(CATALOG_TEXT).expect("shipped omega catalog parses"))
    }

    pub fn find(&self, pair: &str, classes: &[Partition]) -> Option<&CatalogEntry> {
        self.entry.iter().find(|e| e.pair == pair && same_torus(&e.torus, classes))
    }

    pub fn find_symmetric(&self, pair: &str, classes: &[Partition]) -> Option<&SymmetricEntry> {
        self.symmetric.iter().find(|e| e.pair == pair && same_torus(&e.torus, classes))
    }
}

/// Slot-equality constraints parsed from a pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    One,
    Free,
    Var(String),
}

fn parse_pattern(pattern: &str, torus: &Torus) -> Result<Vec<Vec<Token>>> {
    let factors: Vec<&str> = pattern.split(';').collect();
    if factors.len() != torus.factors.len() {
        return Err(Error::Data(format!("pattern {pattern} has {} factors", factors.len())));
    }
    factors
        .iter()
        .zip(&torus.factors)
        .map(|(f, ft)| {
            let toks: Vec<Token> = f
                .split(',')
                .map(|t| match t.trim() {
                    "1" => Ok(Token::One),
                    "*" => Ok(Token::Free),
                    v if !v.is_empty() && v.chars().all(|c| c.is_ascii_alphabetic()) => Ok(Token::Var(v.to_string())),
                    v => Err(Error::Data(format!("bad pattern token {v:?}"))),
                })
                .collect::<Result<_>>()?;
            if toks.len() != ft.rank() {
                return Err(Error::Data(format!("pattern {pattern} does not fit {}", ft.class)));
            }
            Ok(toks)
        })
        .collect()
}

/// F_q-rank of the centralizer of a generic element of the component.
///
/// Equal-letter slots form eigenvalue groups; Frobenius moves each slot to
/// the next one in its block, hence permutes the groups. A group orbit of
/// length e and multiplicity m contributes m for GL, and for U it
/// contributes m when e is even and ⌊m/2⌋ when e is odd. Free slots are
/// treated as distinct letters.
pub fn pattern_sigma(torus: &Torus, pattern: &str) -> Result<u32> {
    let toks = parse_pattern(pattern, torus)?;
    // global slot index -> group label
    let mut labels: Vec<String> = Vec::new();
    let mut next: Vec<usize> = Vec::new();
    let mut factor_of: Vec<usize> = Vec::new();
    for (fi, (ft, ftoks)) in torus.factors.iter().zip(&toks).enumerate() {
        let mut off = 0;
        for &l in ft.class.parts.parts() {
            for j in 0..l as usize {
                let g = labels.len();
                labels.push(match &ftoks[off + j] {
                    Token::One => "1".to_string(),
                    Token::Free => format!("*{g}"),
                    Token::Var(v) => v.clone(),
                });
                next.push(g - j + (j + 1) % l as usize);
                factor_of.push(fi);
            }
            off += l as usize;
        }
    }
    // Frobenius on group labels, checked for consistency
    let mut image: HashMap<&str, &str> = HashMap::new();
    for (g, l) in labels.iter().enumerate() {
        let to = labels[next[g]].as_str();
        if *image.entry(l.as_str()).or_insert(to) != to || (l == "1") != (to == "1") {
            return Err(Error::Data(format!("pattern {pattern} is not Frobenius-stable")));
        }
    }
    let orbit_len = |l: &str| {
        let mut e = 1;
        let mut cur = image[l];
        while cur != l {
            cur = image[cur];
            e += 1;
        }
        e
    };
    let mut sigma = 0;
    for (fi, ft) in torus.factors.iter().enumerate() {
        let mut mult: HashMap<&str, u32> = HashMap::new();
        for (g, l) in labels.iter().enumerate() {
            if factor_of[g] == fi {
                *mult.entry(l.as_str()).or_insert(0) += 1;
            }
        }
        // one representative group per orbit
        let mut seen: std::collections::HashSet<&str> = std::collections::HashSet::new();
        for (l, &m) in &mult {
            if seen.contains(l) {
                continue;
            }
            let e = orbit_len(l);
            let mut cur = *l;
            for _ in 0..e {
                seen.insert(cur);
                cur = image[cur];
            }
            sigma += match ft.class.family {
                crate::groups::Family::GL => m,
                crate::groups::Family::U if e % 2 == 0 => m,
                crate::groups::Family::U => m / 2,
            };
        }
    }
    Ok(sigma)
}

/// Points of `T^F` lying in the component described by `pattern`.
pub fn component_points(torus: &Torus, pattern: &str) -> Result<Vec<Vec<u64>>> {
    let toks = parse_pattern(pattern, torus)?;
    let mut out = Vec::new();
    'pts: for a in all_tuples(&torus.orders()) {
        let mut vars: HashMap<&str, u64> = HashMap::new();
        for ((ft, coords), ftoks) in torus.factors.iter().zip(torus.split(&a)).zip(&toks) {
            for (slot, tok) in ft.slots(coords).into_iter().zip(ftoks) {
                match tok {
                    Token::One if slot != 0 => continue 'pts,
                    Token::Var(v) => {
                        if *vars.entry(v.as_str()).or_insert(slot) != slot {
                            continue 'pts;
                        }
                    }
                    _ => {}
                }
            }
        }
        out.push(a);
    }
    Ok(out)
}

/// `(1/|c|) Σ_{s ∈ c} χ(s)`, asserted to be 0 or a root of unity.
pub fn component_average(points: &[Vec<u64>], chi: &TorusCharacter) -> Result<Cyclotomic> {
    let n = chi.conductor() as u32;
    if points.is_empty() {
        return Cyclotomic::zero(n);
    }
    let mut acc = CycloAccumulator::new(n)?;
    for p in points {
        acc.add(chi.exponent(p), 1);
    }
    let t = acc.finish().scale(&BigRational::new(BigInt::from(1), BigInt::from(points.len())));
    if !(t.is_zero() || t.is_root_of_unity()) {
        return Err(Error::Assertion(format!("component average {t} is neither 0 nor a root of unity")));
    }
    Ok(t)
}

/// One signed term of the formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaTerm {
    pub pattern: String,
    pub sigma: u32,
    pub count: u32,
    pub sign: i8,
    pub size: usize,
    pub t: String,
}

/// Value of the formula with its per-component contributions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaResult {
    pub value: i128,
    pub terms: Vec<OmegaTerm>,
}

/// The level-1 torus of a pair.
pub fn pair_torus(pair: &SphericalPair, classes: &[Partition]) -> Result<Torus> {
    let spec = pair.g_spec()?;
    let ctx = Context::for_specs(std::slice::from_ref(&spec))?;
    Torus::new(&spec, classes, ctx)
}

fn signed_sum(
    torus: &Torus,
    sigma_t: u32,
    data: &[OmegaDatum],
    chi: &TorusCharacter,
    terms: &mut Vec<OmegaTerm>,
) -> Result<Cyclotomic> {
    let mut total = Cyclotomic::zero(chi.conductor() as u32)?;
    for w in data {
        let pts = component_points(torus, &w.pattern)?;
        let t = component_average(&pts, chi)?;
        let sign: i8 = if (w.sigma + sigma_t) % 2 == 0 { 1 } else { -1 };
        let c = BigRational::from_integer(BigInt::from(sign as i64 * w.count as i64));
        total = total.add(&t.scale(&c))?;
        terms.push(OmegaTerm {
            pattern: w.pattern.clone(),
            sigma: w.sigma,
            count: w.count,
            sign,
            size: pts.len(),
            t: t.to_string(),
        });
    }
    Ok(total)
}

fn check_sigma_t(torus: &Torus, sigma_t: u32) -> Result<()> {
    if torus.sigma() as u32 != sigma_t {
        return Err(Error::Data(format!("stored σ(T) = {sigma_t}, torus has {}", torus.sigma())));
    }
    Ok(())
}

/// `Σ_ω (-1)^{σ_ω + σ(T)} t_{ω,χ}` for the given component data.
pub fn emmain_rhs(
    pair: &SphericalPair,
    classes: &[Partition],
    chi: &TorusCharacter,
    sigma_t: u32,
    data: &[OmegaDatum],
) -> Result<FormulaResult> {
    let torus = pair_torus(pair, classes)?;
    check_sigma_t(&torus, sigma_t)?;
    if chi.orders != torus.orders() {
        return Err(Error::Invalid("character does not match the torus".into()));
    }
    let mut terms = Vec::new();
    let total = signed_sum(&torus, sigma_t, data, chi, &mut terms)?;
    let value = total.to_integer().ok_or_else(|| Error::Assertion(format!("formula sum {total} is not an integer")))?;
    Ok(FormulaResult { value, terms })
}

/// Orbit-indexed version for symmetric pairs, twisting χ by each orbit's ε.
pub fn symmetric_formula(pair: &SphericalPair, classes: &[Partition], chi: &TorusCharacter) -> Result<FormulaResult> {
    let entry = Catalog::builtin()
        .find_symmetric(&pair.id(), classes)
        .ok_or_else(|| Error::Unsupported(format!("no orbit data for {} on {classes:?}", pair.id())))?;
    let torus = pair_torus(pair, classes)?;
    check_sigma_t(&torus, entry.sigma_t)?;
    let mut terms = Vec::new();
    let mut total = Cyclotomic::zero(chi.conductor() as u32)?;
    for orbit in &entry.orbits {
        let eps = TorusCharacter::new(torus.orders(), orbit.epsilon.clone())?;
        let twisted = chi.mul(&eps.inverse())?;
        let part = signed_sum(&torus, entry.sigma_t, &orbit.components, &twisted, &mut terms)?;
        total = total.add(&part)?;
    }
    let value = total.to_integer().ok_or_else(|| Error::Assertion(format!("formula sum {total} is not an integer")))?;
    Ok(FormulaResult { value, terms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::periods::PairKind;

    #[test]
    fn builtin_catalog_parses_and_fits() {
        let cat = Catalog::builtin();
        assert!(!cat.entry.is_empty());
        for e in &cat.entry {
            let kind: PairKind = e.pair.parse().unwrap();
            let classes: Vec<Partition> = e.torus.iter().map(|s| s.parse().unwrap()).collect();
            let pair = SphericalPair::new(kind, 2).unwrap();
            let torus = pair_torus(&pair, &classes).unwrap();
            assert_eq!(torus.sigma() as u32, e.sigma_t, "{} {:?}", e.pair, e.torus);
            for w in &e.omega {
                assert!(!component_points(&torus, &w.pattern).unwrap().is_empty());
                assert_eq!(pattern_sigma(&torus, &w.pattern).unwrap(), w.sigma, "{} {}", e.pair, w.pattern);
            }
        }
    }

    #[test]
    fn single_full_component_detects_trivial_character() {
        let pair = SphericalPair::new(PairKind::TrivialGl1, 5).unwrap();
        let c = [Partition::new(vec![1])];
        let data = [OmegaDatum { pattern: "*".into(), sigma: 1, count: 1, note: String::new() }];
        for e in 0..4 {
            let chi = TorusCharacter::new(vec![4], vec![e]).unwrap();
            assert_eq!(emmain_rhs(&pair, &c, &chi, 1, &data).unwrap().value, (e == 0) as i128);
        }
    }

    #[test]
    fn nonsplit_slots_collapse_to_base_field() {
        // y = F(y) on GL_2(3)'s nonsplit torus leaves F_3^×
        let pair = SphericalPair::new(PairKind::DiagTorusGl2, 3).unwrap();
        let torus = pair_torus(&pair, &[Partition::new(vec![2])]).unwrap();
        assert_eq!(component_points(&torus, "x,x").unwrap().len(), 2);
        assert_eq!(component_points(&torus, "1,1").unwrap().len(), 1);
    }
}
