//! Deligne–Lusztig characters through the character formula.
//!
//! For `g = su` the value `R_{T,χ}(g)` is a sum over the elements `t` of
//! `T^{F^ν}` conjugate to s of `χ(N^ν t)` times a Green function of
//! `C(s)` at u. The coefficients do not depend on χ, so they are computed
//! once as an *expansion*: a map from coordinates of `T^F` to integers.

use std::collections::HashMap;
use std::sync::Arc;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::{CycloAccumulator, Cyclotomic, CONDUCTOR_CAP};
use crate::green::{green_signed, Partition};
use crate::groups::{
    conjugacy_classes, eigen_data, jordan, nset, sigma_log, BlockEigen, ConjClass, Context, Group, GroupElement,
    GroupSpec,
};
use crate::tori::{FactorLevel, Torus, TorusCharacter, TorusInstance};

/// Integer combination of coordinates of `T^F`.
pub type Expansion = HashMap<Vec<u64>, i128>;

/// A Deligne–Lusztig character `R_{T, χ∘N^ν}` of `G^{F^ν}`.
#[derive(Debug)]
pub struct DLSpec {
    pub group: Group,
    pub torus: Arc<Torus>,
    pub chi: TorusCharacter,
}

impl DLSpec {
    /// `spec` at level 1; the group is built at level `nu`.
    pub fn new(spec: &GroupSpec, classes: &[Partition], exps: Vec<u64>, nu: u32) -> Result<Self> {
        let base = spec.at_level(1);
        let ctx = Context::for_specs(&[base.clone(), base.at_level(nu)])?;
        let torus = Arc::new(Torus::new(&base, classes, ctx.clone())?);
        let chi = TorusCharacter::new(torus.orders(), exps)?;
        let group = Group::new(base.at_level(nu), ctx)?;
        Ok(DLSpec { group, torus, chi })
    }

    pub fn nu(&self) -> u32 {
        self.group.spec().nu
    }

    pub fn value(&self, g: &GroupElement) -> Result<Cyclotomic> {
        let e = dl_expansion(&self.group, &self.torus, g)?;
        evaluate_expansion(&e, &self.chi)
    }
}

/// Torus class inside `C(t)` of the orbit structure of `be`, for the
/// F^ν-cycles of a torus point. Returns one partition per eigen orbit.
fn classes_in_centralizer(be: &BlockEigen, cycles: &[(u64, u32)], units: u64) -> Result<Vec<Partition>> {
    let idx = be.orbit_index();
    let mut parts: Vec<Vec<u32>> = vec![Vec::new(); be.orbits.len()];
    for &(start, len) in cycles {
        let o = *idx.get(&start).ok_or_else(|| Error::Assertion("torus point outside the eigenvalue set".into()))?;
        let e = be.orbits[o].size() as u32;
        if len % e != 0 {
            return Err(Error::Assertion(format!("cycle of length {len} over orbit of size {e}")));
        }
        // consistency of the orbit with the σ_ν action
        debug_assert_eq!(be.orbits[o].logs[1 % be.orbits[o].size()], sigma_log(be.orbits[o].logs[0], be.qs, units));
        parts[o].push(len / e);
    }
    let out: Vec<Partition> = parts.into_iter().map(Partition::new).collect();
    for (p, o) in out.iter().zip(&be.orbits) {
        if p.size() as usize != o.mult {
            return Err(Error::Assertion("torus class in centralizer has the wrong rank".into()));
        }
    }
    Ok(out)
}

/// Expansion of one factor block against its level listing.
fn factor_expansion(level: &FactorLevel, be: &BlockEigen, units: u64) -> Result<Expansion> {
    let mut out = Expansion::new();
    let Some(hits) = level.by_key.get(&be.key()) else {
        return Ok(out);
    };
    for &k in hits {
        let pt = &level.points[k];
        let classes = classes_in_centralizer(be, &pt.cycles, units)?;
        let mut coeff: i128 = 1;
        for (rho, o) in classes.iter().zip(&be.orbits) {
            coeff *= green_signed(rho, &o.utype, be.qs.pow(o.size() as u32));
        }
        *out.entry(pt.norm.clone()).or_insert(0) += coeff;
    }
    out.retain(|_, v| *v != 0);
    Ok(out)
}

/// Tensor product of factor expansions with concatenated coordinates.
pub fn tensor(parts: &[Expansion]) -> Expansion {
    let mut acc: Expansion = [(Vec::new(), 1i128)].into_iter().collect();
    for p in parts {
        let mut next = Expansion::new();
        for (a, x) in &acc {
            for (b, y) in p {
                let mut k = a.clone();
                k.extend_from_slice(b);
                *next.entry(k).or_insert(0) += x * y;
            }
        }
        acc = next;
    }
    acc.retain(|_, v| *v != 0);
    acc
}

/// `R_{T,χ∘N^ν}(g) = Σ_a E(a) χ(a)` for every χ at once.
pub fn dl_expansion(group: &Group, torus: &Torus, g: &GroupElement) -> Result<Expansion> {
    let nu = group.spec().nu;
    let level = torus.level(nu)?;
    let eig = eigen_data(group, g)?;
    dl_expansion_from_eigen(&level, &eig, group.ctx().units())
}

pub fn dl_expansion_from_eigen(level: &[FactorLevel], eig: &[BlockEigen], units: u64) -> Result<Expansion> {
    let mut parts = Vec::with_capacity(eig.len());
    for (l, be) in level.iter().zip(eig) {
        let e = factor_expansion(l, be, units)?;
        if e.is_empty() {
            return Ok(Expansion::new());
        }
        parts.push(e);
    }
    Ok(tensor(&parts))
}

/// `Σ_a E(a) χ(a)` as an exact cyclotomic number.
pub fn evaluate_expansion(e: &Expansion, chi: &TorusCharacter) -> Result<Cyclotomic> {
    let n = chi.conductor();
    if n > CONDUCTOR_CAP {
        return Err(Error::ConductorOverflow(n));
    }
    let mut acc = CycloAccumulator::new(n as u32)?;
    for (a, c) in e {
        acc.add(chi.exponent(a), *c);
    }
    Ok(acc.finish())
}

/// `R_{T,χ}(g)` for a spec.
pub fn dl_value(spec: &DLSpec, g: &GroupElement) -> Result<Cyclotomic> {
    spec.value(g)
}

/// Same value computed through an explicit `N(s,T)` scan of a level-1
/// group; the conjugates `γ^{-1} s γ ∈ T^F` are located in the torus by
/// their matrix coordinates.
pub fn dl_value_scan(inst: &TorusInstance, chi: &TorusCharacter, g: &GroupElement) -> Result<Cyclotomic> {
    let group = &inst.group;
    if group.spec().nu != 1 {
        return Err(Error::Unsupported("scan evaluation only at level 1".into()));
    }
    let jp = jordan(group, g);
    let eig = eigen_data(group, g)?;
    let tset = inst.element_map()?;
    let keys: std::collections::HashSet<GroupElement> = tset.keys().cloned().collect();
    let ns = nset(group, &jp.s, &keys)?;
    let level = inst.torus.level(1)?;
    let n = chi.conductor();
    let mut acc = CycloAccumulator::new(n as u32)?;
    for t in &ns.conjugates {
        let coords = &tset[t];
        let mut coeff = 1i128;
        for ((fl, be), c) in level.iter().zip(&eig).zip(inst.torus.split(coords)) {
            let pt = fl
                .points
                .iter()
                .find(|p| p.norm == c)
                .ok_or_else(|| Error::Assertion("torus coordinate missing from level listing".into()))?;
            let classes = classes_in_centralizer(be, &pt.cycles, group.ctx().units())?;
            for (rho, o) in classes.iter().zip(&be.orbits) {
                coeff *= green_signed(rho, &o.utype, be.qs.pow(o.size() as u32));
            }
        }
        acc.add(chi.exponent(coords), coeff);
    }
    Ok(acc.finish())
}

/// One row of a character table.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DLValue {
    pub class_id: usize,
    pub rep: Vec<Vec<u32>>,
    pub size: u64,
    pub value: String,
    pub coeffs: Vec<String>,
    pub conductor: u32,
}

/// Values on every conjugacy class of `G^{F^ν}`.
pub fn dl_table(spec: &DLSpec) -> Result<(Vec<ConjClass>, Vec<Cyclotomic>)> {
    let classes = conjugacy_classes(&spec.group)?;
    let vals = classes.iter().map(|c| spec.value(&c.rep)).collect::<Result<Vec<_>>>()?;
    Ok((classes, vals))
}

pub fn table_rows(classes: &[ConjClass], vals: &[Cyclotomic]) -> Vec<DLValue> {
    classes
        .iter()
        .zip(vals)
        .enumerate()
        .map(|(i, (c, v))| DLValue {
            class_id: i,
            rep: c.rep.blocks.iter().map(|b| b.a.clone()).collect(),
            size: c.size,
            value: v.to_string(),
            coeffs: v.coeff_strings(),
            conductor: v.conductor(),
        })
        .collect()
}

/// `⟨f, f'⟩ = |G|^{-1} Σ_classes |C| f(c) conj(f'(c))`.
pub fn inner_product(classes: &[ConjClass], a: &[Cyclotomic], b: &[Cyclotomic]) -> Result<Cyclotomic> {
    let mut acc: Option<Cyclotomic> = None;
    let mut total: u128 = 0;
    for ((c, x), y) in classes.iter().zip(a).zip(b) {
        total += c.size as u128;
        let term = x.mul(&y.conj())?.scale(&BigRational::from_integer((c.size as i64).into()));
        acc = Some(match acc {
            None => term,
            Some(s) => s.add(&term)?,
        });
    }
    let acc = acc.ok_or_else(|| Error::Invalid("empty class list".into()))?;
    Ok(acc.scale(&BigRational::new(1.into(), (total as i64).into())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::green::degree_signed;
    use crate::groups::{Family, Mat};
    use crate::tori::characters;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn gl1_is_the_character() {
        let spec = GroupSpec::gl(1, 5).unwrap();
        let d = DLSpec::new(&spec, &[p(&[1])], vec![1], 1).unwrap();
        for x in d.group.elements().unwrap().iter() {
            let l = d.group.field().log(x.blocks[0].a[0]).unwrap() as u64;
            let step = d.group.ctx().mu_step(4).unwrap();
            assert_eq!(d.value(x).unwrap(), Cyclotomic::root(4, (l / step) as i64).unwrap());
        }
    }

    #[test]
    fn degrees() {
        for (spec, class) in [
            (GroupSpec::gl(2, 3).unwrap(), p(&[1, 1])),
            (GroupSpec::gl(2, 3).unwrap(), p(&[2])),
            (GroupSpec::u(3, 2).unwrap(), p(&[2, 1])),
            (GroupSpec::u(4, 2).unwrap(), p(&[3, 1])),
        ] {
            let d = DLSpec::new(&spec, &[class.clone()], vec![0; class.len()], 1).unwrap();
            let one = d.group.identity();
            let qs = spec.signed_q(0);
            assert_eq!(d.value(&one).unwrap().to_integer(), Some(degree_signed(&class, qs)));
        }
    }

    #[test]
    fn gl2_split_general_position() {
        let spec = GroupSpec::gl(2, 3).unwrap();
        let d = DLSpec::new(&spec, &[p(&[1, 1])], vec![1, 0], 1).unwrap();
        let f = d.group.field();
        // a = -1, b = 1
        let g = GroupElement::single(Mat::from_rows(&[vec![f.neg(1), 0], vec![0, 1]]));
        // α(-1)β(1) + α(1)β(-1) = -1 + 1
        assert_eq!(d.value(&g).unwrap().to_integer(), Some(0));
        let d = DLSpec::new(&spec, &[p(&[1, 1])], vec![1, 3], 1).unwrap();
        // ζ4^2 + ζ4^6 = -2
        assert_eq!(d.value(&g).unwrap().to_integer(), Some(-2));
    }

    #[test]
    fn scan_agrees_with_slot_model() {
        for (spec, class) in [
            (GroupSpec::gl(2, 3).unwrap(), p(&[2])),
            (GroupSpec::u(2, 2).unwrap(), p(&[1, 1])),
            (GroupSpec::u(3, 2).unwrap(), p(&[2, 1])),
        ] {
            let ctx = Context::for_specs(std::slice::from_ref(&spec)).unwrap();
            let inst = TorusInstance::new(&spec, &[class.clone()], ctx).unwrap();
            let chars = characters(&inst.orders).unwrap();
            let classes = conjugacy_classes(&inst.group).unwrap();
            for chi in chars.iter().step_by(5) {
                for c in &classes {
                    let e = dl_expansion(&inst.group, &inst.torus, &c.rep).unwrap();
                    assert_eq!(
                        evaluate_expansion(&e, chi).unwrap(),
                        dl_value_scan(&inst, chi, &c.rep).unwrap(),
                        "{spec} {class}"
                    );
                }
            }
        }
    }

    #[test]
    fn norms_of_nonsplit_gl2() {
        // ⟨R,R⟩ = 1 in general position on the nonsplit torus of GL_2(3)
        let spec = GroupSpec::gl(2, 3).unwrap();
        let d = DLSpec::new(&spec, &[p(&[2])], vec![1], 1).unwrap();
        let (cl, v) = dl_table(&d).unwrap();
        assert_eq!(inner_product(&cl, &v, &v).unwrap().to_integer(), Some(1));
        let d2 = DLSpec::new(&spec, &[p(&[2])], vec![0], 1).unwrap();
        let (_, w) = dl_table(&d2).unwrap();
        assert_eq!(inner_product(&cl, &w, &w).unwrap().to_integer(), Some(2));
        let _ = Family::GL;
    }
}
