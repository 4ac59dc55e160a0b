//! Periods `⟨R_{T,χ∘N^ν}, 1⟩_{H^{F^ν}}` by direct summation over H and by
//! Frobenius reciprocity through transporter counts.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::pairs::{PairLevel, SphericalPair};
use crate::dlchar::{dl_expansion_from_eigen, evaluate_expansion, Expansion};
use crate::error::{Error, Result};
use crate::ffield::Cyclotomic;
use crate::green::Partition;
use crate::groups::{conjugacy_classes, eigen_data, jordan, BlockEigen, Group, GroupElement};
use crate::tori::{Torus, TorusCharacter, TorusClass};

/// Cap on `|H^{F^ν}|` for direct summation.
pub const H_CAP: u128 = 1_000_000;
/// Cap on `|G^{F^ν}|` for the reciprocity route.
pub const G_CAP: u128 = 1_000_000;

/// Contribution of H-elements whose semisimple part lies in one G-class.
#[derive(Clone, Debug)]
pub struct SClassTerm {
    pub label: String,
    pub h_count: u64,
    pub expansion: Expansion,
}

/// χ-independent data of one period computation.
#[derive(Debug)]
pub struct PeriodData {
    pub pair: SphericalPair,
    pub classes: Vec<Partition>,
    pub nu: u32,
    pub torus: Arc<Torus>,
    pub h_order: u64,
    /// `Σ_h expansion(h)`.
    pub total: Expansion,
    pub terms: Vec<SClassTerm>,
}

/// Label of the G-class of a semisimple part: sorted eigenvalue logs per factor.
fn s_label(eig: &[BlockEigen]) -> String {
    let parts: Vec<String> = eig
        .iter()
        .map(|b| {
            let k: Vec<String> = b.key().iter().map(|x| x.to_string()).collect();
            format!("[{}]", k.join(","))
        })
        .collect();
    format!("s={}", parts.join(""))
}

static EVALUATED: AtomicU64 = AtomicU64::new(0);
static NON_INTEGRAL: AtomicU64 = AtomicU64::new(0);

/// Process-wide count of period evaluations and of those that failed to be
/// rational integers.
pub fn integrality_counters() -> (u64, u64) {
    (EVALUATED.load(Ordering::Relaxed), NON_INTEGRAL.load(Ordering::Relaxed))
}

fn checked_integer(v: &Cyclotomic, what: &str) -> Result<i128> {
    EVALUATED.fetch_add(1, Ordering::Relaxed);
    v.to_integer().ok_or_else(|| {
        NON_INTEGRAL.fetch_add(1, Ordering::Relaxed);
        Error::Assertion(format!("{what} is not a rational integer: {v}"))
    })
}

fn add_scaled(acc: &mut Expansion, e: &Expansion, c: i128) {
    for (k, v) in e {
        *acc.entry(k.clone()).or_insert(0) += v * c;
    }
}

fn cache() -> &'static Mutex<HashMap<(SphericalPair, Vec<Partition>, u32), Arc<PeriodData>>> {
    static C: OnceLock<Mutex<HashMap<(SphericalPair, Vec<Partition>, u32), Arc<PeriodData>>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

impl PeriodData {
    /// Summation data, memoized per (pair, torus, ν).
    pub fn get(pair: &SphericalPair, classes: &[Partition], nu: u32) -> Result<Arc<PeriodData>> {
        let key = (pair.clone(), classes.to_vec(), nu);
        if let Some(d) = cache().lock().unwrap().get(&key) {
            return Ok(d.clone());
        }
        let level = pair.level(nu)?;
        let d = Arc::new(Self::compute(pair, classes, nu, &level)?);
        cache().lock().unwrap().insert(key, d.clone());
        Ok(d)
    }

    pub fn compute(pair: &SphericalPair, classes: &[Partition], nu: u32, level: &PairLevel) -> Result<Self> {
        if level.h_order as u128 > H_CAP {
            return Err(Error::cap("|H^(F^nu)|", level.h_order as u128, H_CAP));
        }
        let group = &level.group;
        let torus = Arc::new(Torus::new(&pair.g_spec()?, classes, group.ctx().clone())?);
        let tl = torus.level(nu)?;
        let units = group.ctx().units();
        let per_class: Vec<(String, u64, Expansion)> = level
            .h_classes
            .par_iter()
            .map(|(h, size)| {
                let eig = eigen_data(group, h)?;
                let e = dl_expansion_from_eigen(&tl, &eig, units)?;
                Ok((s_label(&eig), *size, e))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut by_label: BTreeMap<String, (u64, Expansion)> = BTreeMap::new();
        let mut total = Expansion::new();
        for (label, size, e) in per_class {
            add_scaled(&mut total, &e, size as i128);
            let entry = by_label.entry(label).or_insert_with(|| (0, Expansion::new()));
            entry.0 += size;
            add_scaled(&mut entry.1, &e, size as i128);
        }
        total.retain(|_, v| *v != 0);
        let terms = by_label
            .into_iter()
            .map(|(label, (h_count, expansion))| SClassTerm { label, h_count, expansion })
            .collect();
        Ok(PeriodData {
            pair: pair.clone(),
            classes: classes.to_vec(),
            nu,
            torus,
            h_order: level.h_order,
            total,
            terms,
        })
    }

    pub fn character(&self, exps: &[u64]) -> Result<TorusCharacter> {
        TorusCharacter::new(self.torus.orders(), exps.to_vec())
    }

    /// Exact period value for χ, asserted to be a rational integer.
    pub fn value(&self, chi: &TorusCharacter) -> Result<i128> {
        let s = evaluate_expansion(&self.total, chi)?;
        let v = s.scale(&BigRational::new(BigInt::from(1), BigInt::from(self.h_order)));
        checked_integer(&v, "period")
    }

    /// Per-s-class partial sums `(1/|H|) Σ_{h in class} R(h)`.
    pub fn partials(&self, chi: &TorusCharacter) -> Result<Vec<TermReport>> {
        self.terms
            .iter()
            .map(|t| {
                let s = evaluate_expansion(&t.expansion, chi)?
                    .scale(&BigRational::new(BigInt::from(1), BigInt::from(self.h_order)));
                Ok(TermReport { label: t.label.clone(), h_count: t.h_count, partial: s.to_string() })
            })
            .collect()
    }
}

/// Per-s-class diagnostic row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermReport {
    pub label: String,
    pub h_count: u64,
    pub partial: String,
}

/// Result of one period computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodReport {
    pub pair: String,
    pub q: u64,
    pub torus: Vec<String>,
    pub orders: Vec<u64>,
    pub chi: Vec<u64>,
    pub nu: u32,
    pub value: i128,
    pub terms: Vec<TermReport>,
    pub formula: Option<i128>,
    pub matches: Option<bool>,
}

/// Direct summation over `H^{F^ν}`.
pub fn period_bruteforce(pair: &SphericalPair, classes: &[Partition], exps: &[u64], nu: u32) -> Result<PeriodReport> {
    let data = PeriodData::get(pair, classes, nu)?;
    let chi = data.character(exps)?;
    let value = data.value(&chi)?;
    let formula = if nu == 1 { crate::formulas::formula_value(pair, classes, &chi)? } else { None };
    Ok(PeriodReport {
        pair: pair.id(),
        q: pair.q,
        torus: data.torus.classes().iter().map(|c| c.to_string()).collect(),
        orders: chi.orders.clone(),
        chi: chi.exps.clone(),
        nu,
        value,
        terms: data.partials(&chi)?,
        formula,
        matches: formula.map(|f| f == value),
    })
}

/// χ-independent data of the reciprocity route.
#[derive(Debug)]
pub struct FrobRecData {
    /// `Σ_classes |C| · |T(g,H)| · expansion(g)`.
    pub total: Expansion,
    pub g_order: u128,
    pub h_order: u64,
    pub torus: Arc<Torus>,
}

impl FrobRecData {
    pub fn compute(pair: &SphericalPair, classes: &[Partition], nu: u32) -> Result<Self> {
        let level = pair.level(nu)?;
        let group = &level.group;
        if group.order() > G_CAP {
            return Err(Error::cap("|G^(F^nu)| for the reciprocity route", group.order(), G_CAP));
        }
        let torus = Arc::new(Torus::new(&pair.g_spec()?, classes, group.ctx().clone())?);
        let tl = torus.level(nu)?;
        let units = group.ctx().units();
        let h: HashSet<GroupElement> = pair.h_elements(&level, nu)?.into_iter().collect();
        let gclasses = conjugacy_classes(group)?;
        let els = group.elements()?;
        let mut total = Expansion::new();
        for c in &gclasses {
            let eig = eigen_data(group, &c.rep)?;
            let e = dl_expansion_from_eigen(&tl, &eig, units)?;
            if e.is_empty() {
                continue;
            }
            let tcount = els.par_iter().filter(|x| h.contains(&group.conj(x, &c.rep))).count() as i128;
            add_scaled(&mut total, &e, c.size as i128 * tcount);
        }
        total.retain(|_, v| *v != 0);
        Ok(FrobRecData { total, g_order: group.order(), h_order: level.h_order, torus })
    }

    pub fn value(&self, chi: &TorusCharacter) -> Result<i128> {
        let s = evaluate_expansion(&self.total, chi)?;
        let den = BigInt::from(self.g_order) * BigInt::from(self.h_order);
        let v = s.scale(&BigRational::new(BigInt::from(1), den));
        checked_integer(&v, "reciprocity period")
    }
}

/// Period through `|G|^{-1} Σ_g R(g) |T(g,H)^F| / |H^F|`.
pub fn period_frobrec(pair: &SphericalPair, classes: &[Partition], exps: &[u64], nu: u32) -> Result<i128> {
    let d = FrobRecData::compute(pair, classes, nu)?;
    let chi = TorusCharacter::new(d.torus.orders(), exps.to_vec())?;
    d.value(&chi)
}

/// Default gap for a scan: the family gap, made divisible by the splitting
/// degree of T so that T keeps its F^ν-type along the progression.
pub fn default_gap(pair: &SphericalPair, classes: &[Partition]) -> Result<u32> {
    let spec = pair.g_spec()?;
    if spec.factors.len() != classes.len() {
        return Err(Error::Invalid(format!("{} torus classes for {} factors", classes.len(), spec.factors.len())));
    }
    Ok(spec.factors.iter().zip(classes).fold(pair.kind.default_gap(), |acc, (f, c)| {
        num_integer::lcm(acc, TorusClass::new(f.family, c.clone()).splitting_degree())
    }))
}

/// Periods along a list of ν and constancy on the progression `{1 + kd}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ScanReport {
    pub reports: Vec<PeriodReport>,
    pub gap: u32,
    /// ν of the samples lying on the progression.
    pub progression: Vec<u32>,
    pub constant: bool,
}

pub fn period_scan(
    pair: &SphericalPair,
    classes: &[Partition],
    exps: &[u64],
    nus: &[u32],
    gap: Option<u32>,
) -> Result<ScanReport> {
    let gap = match gap {
        Some(g) => g,
        None => default_gap(pair, classes)?,
    };
    if gap == 0 {
        return Err(Error::Invalid("gap must be positive".into()));
    }
    let reports = nus.iter().map(|&nu| period_bruteforce(pair, classes, exps, nu)).collect::<Result<Vec<_>>>()?;
    let on: Vec<&PeriodReport> = reports.iter().filter(|r| (r.nu - 1) % gap == 0).collect();
    let constant = on.windows(2).all(|w| w[0].value == w[1].value);
    Ok(ScanReport { progression: on.iter().map(|r| r.nu).collect(), reports, gap, constant })
}

/// Both sides of the Jordan summation identity for a class function f
/// supported on classes whose semisimple part meets `T^F`:
/// `|G|^{-1} Σ_g f(g) = Σ_{s ∈ T^F} |N̄(s,T)|^{-1} |C(s)|^{-1} Σ_{u ∈ C(s) unipotent} f(su)`.
pub fn jordan_sum_check(
    group: &Group,
    torus_elements: &[GroupElement],
    f: &dyn Fn(&GroupElement) -> Result<Cyclotomic>,
) -> Result<(Cyclotomic, Cyclotomic)> {
    let els = group.elements()?;
    let tset: HashSet<GroupElement> = torus_elements.iter().cloned().collect();
    let p = group.spec().p();
    // lhs, and the support precondition per class
    let classes = conjugacy_classes(group)?;
    let mut lhs = Cyclotomic::zero(1)?;
    for c in &classes {
        let v = f(&c.rep)?;
        if v.is_zero() {
            continue;
        }
        let s = jordan(group, &c.rep).s;
        if crate::groups::conjugate_into(group, &s, &tset)?.is_none() {
            return Err(Error::Invalid("f is nonzero on a class not meeting T^F".into()));
        }
        lhs = lhs.add(&v.scale(&BigRational::from_integer(BigInt::from(c.size))))?;
    }
    lhs = lhs.scale(&BigRational::new(BigInt::from(1), BigInt::from(els.len())));
    let is_unipotent = |x: &GroupElement| {
        let mut o = group.element_order(x);
        while o % p == 0 {
            o /= p;
        }
        o == 1
    };
    let mut rhs = Cyclotomic::zero(1)?;
    for s in torus_elements {
        let cs: Vec<&GroupElement> = els.iter().filter(|x| group.mul(x, s) == group.mul(s, x)).collect();
        let n_count = els.iter().filter(|x| tset.contains(&group.conj(x, s))).count();
        let nbar = n_count / cs.len();
        let mut inner = Cyclotomic::zero(1)?;
        for u in cs.iter().filter(|u| is_unipotent(u)) {
            inner = inner.add(&f(&group.mul(s, u))?)?;
        }
        let w = BigRational::new(BigInt::from(1), BigInt::from(nbar * cs.len()));
        rhs = rhs.add(&inner.scale(&w))?;
    }
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::periods::PairKind;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn parabolic_gl2_examples() {
        for q in [2, 3] {
            let pair = SphericalPair::new(PairKind::ParabolicGl2, q).unwrap();
            let r = period_bruteforce(&pair, &[p(&[1, 1])], &[0, 0], 1).unwrap();
            assert_eq!(r.value, 2);
            let r = period_bruteforce(&pair, &[p(&[2])], &[0], 1).unwrap();
            assert_eq!(r.value, 0);
        }
    }

    #[test]
    fn trivial_pair_detects_trivial_character() {
        let pair = SphericalPair::new(PairKind::TrivialGl1, 5).unwrap();
        for e in 0..4u64 {
            for nu in [1, 2] {
                let r = period_bruteforce(&pair, &[p(&[1])], &[e], nu).unwrap();
                assert_eq!(r.value, (e == 0) as i128);
            }
        }
    }

    #[test]
    fn routes_agree_on_diag_gl1() {
        let pair = SphericalPair::new(PairKind::BesselGl(1), 3).unwrap();
        for cl in [[p(&[1]), p(&[1, 1])], [p(&[1]), p(&[2])]] {
            let data = PeriodData::get(&pair, &cl, 1).unwrap();
            let fr = FrobRecData::compute(&pair, &cl, 1).unwrap();
            for chi in crate::tori::characters(&data.torus.orders()).unwrap() {
                assert_eq!(data.value(&chi).unwrap(), fr.value(&chi).unwrap());
            }
        }
    }
}
