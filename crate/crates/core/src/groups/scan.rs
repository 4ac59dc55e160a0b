//! Exhaustive scans over `G^F`: conjugacy classes, transporters, N(s,T).

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use super::group::{Group, GroupElement};
use crate::error::{Error, Result};

/// A conjugacy class by representative and size.
#[derive(Clone, Debug)]
pub struct ConjClass {
    pub rep: GroupElement,
    pub size: u64,
}

/// Conjugacy classes of a single-factor group by orbit partition.
fn factor_classes(group: &Group, i: usize) -> Result<Vec<(super::matrix::Mat, u64)>> {
    let elems = group.factor_elements(i)?;
    let f = group.field();
    let sub = Group::new(
        super::spec::GroupSpec { factors: vec![group.spec().factors[i]], ..group.spec().clone() },
        group.ctx().clone(),
    )?;
    let index: HashMap<&super::matrix::Mat, usize> = elems.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let mut assigned = vec![false; elems.len()];
    let inverses: Vec<GroupElement> =
        elems.par_iter().map(|x| sub.inv(&GroupElement::single(x.clone()))).collect();
    let mut out = Vec::new();
    for k in 0..elems.len() {
        if assigned[k] {
            continue;
        }
        let g = &elems[k];
        let orbit: HashSet<usize> = elems
            .par_iter()
            .zip(inverses.par_iter())
            .map(|(x, xi)| {
                let c = super::matrix::mul(f, &xi.blocks[0], &super::matrix::mul(f, g, x));
                index[&c]
            })
            .collect();
        for &j in &orbit {
            assigned[j] = true;
        }
        out.push((g.clone(), orbit.len() as u64));
    }
    Ok(out)
}

/// Conjugacy classes, as products of factor classes.
pub fn conjugacy_classes(group: &Group) -> Result<Vec<ConjClass>> {
    let mut out = vec![ConjClass { rep: GroupElement { blocks: vec![] }, size: 1 }];
    for i in 0..group.spec().factors.len() {
        let fc = factor_classes(group, i)?;
        let mut next = Vec::new();
        for c in &out {
            for (m, s) in &fc {
                let mut b = c.rep.blocks.clone();
                b.push(m.clone());
                next.push(ConjClass { rep: GroupElement { blocks: b }, size: c.size * s });
            }
        }
        out = next;
    }
    Ok(out)
}

/// `|{x ∈ G^F : xs = sx}|` by scanning.
pub fn centralizer_order_scan(group: &Group, s: &GroupElement) -> Result<u64> {
    let els = group.elements()?;
    Ok(els.par_iter().filter(|x| group.mul(x, s) == group.mul(s, x)).count() as u64)
}

/// Some `x` with `x^{-1} g x ∈ targets`, identity first.
pub fn conjugate_into(group: &Group, g: &GroupElement, targets: &HashSet<GroupElement>) -> Result<Option<GroupElement>> {
    if targets.contains(g) {
        return Ok(Some(group.identity()));
    }
    let els = group.elements()?;
    Ok(els.iter().find(|x| targets.contains(&group.conj(x, g))).cloned())
}

/// `|T(g,H)^F| = #{x ∈ G^F : x^{-1} g x ∈ H^F}`.
pub fn transporter_count(group: &Group, g: &GroupElement, h: &HashSet<GroupElement>) -> Result<u64> {
    let els = group.elements()?;
    Ok(els.par_iter().filter(|x| h.contains(&group.conj(x, g))).count() as u64)
}

/// Result of scanning for `N(s,T) = {g : g^{-1} s g ∈ T^F}`.
#[derive(Clone, Debug)]
pub struct NSet {
    pub n_count: u64,
    /// One representative per left `C_G(s)^F`-coset.
    pub reps: Vec<GroupElement>,
    /// `g^{-1} s g` for each representative.
    pub conjugates: Vec<GroupElement>,
}

/// Scan `G^F` for `N(s,T)` and split it into cosets of the centralizer.
///
/// Two elements lie in the same coset exactly when they conjugate s to the
/// same torus element, so cosets are grouped by that image; the coset
/// sizes are then checked to equal `|C_G(s)^F|`.
pub fn nset(group: &Group, s: &GroupElement, torus: &HashSet<GroupElement>) -> Result<NSet> {
    let els = group.elements()?;
    let hits: Vec<(usize, GroupElement)> = els
        .par_iter()
        .enumerate()
        .filter_map(|(k, x)| {
            let c = group.conj(x, s);
            torus.contains(&c).then_some((k, c))
        })
        .collect();
    let mut groups: Vec<(GroupElement, usize, u64)> = Vec::new();
    let mut pos: HashMap<GroupElement, usize> = HashMap::new();
    for (k, c) in hits.iter() {
        match pos.get(c) {
            Some(&i) => groups[i].2 += 1,
            None => {
                pos.insert(c.clone(), groups.len());
                groups.push((c.clone(), *k, 1));
            }
        }
    }
    let n_count = hits.len() as u64;
    if !groups.is_empty() {
        let cs = centralizer_order_scan(group, s)?;
        if groups.iter().any(|g| g.2 != cs) {
            return Err(Error::Assertion("N(s,T) cosets are not free C(s)-orbits".into()));
        }
    }
    Ok(NSet {
        n_count,
        reps: groups.iter().map(|g| els[g.1].clone()).collect(),
        conjugates: groups.into_iter().map(|g| g.0).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{GroupSpec, Mat};

    #[test]
    fn class_counts() {
        let g = Group::standalone(GroupSpec::gl(2, 2).unwrap()).unwrap();
        let c = conjugacy_classes(&g).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c.iter().map(|x| x.size).sum::<u64>(), 6);
        let g = Group::standalone(GroupSpec::gl(2, 3).unwrap()).unwrap();
        assert_eq!(conjugacy_classes(&g).unwrap().len(), 8);
        let u = Group::standalone(GroupSpec::u(2, 2).unwrap()).unwrap();
        // U_2(2) ≅ C_3 × S_3
        assert_eq!(conjugacy_classes(&u).unwrap().len(), 9);
    }

    #[test]
    fn conjugate_into_examples() {
        let g = Group::standalone(GroupSpec::gl(2, 3).unwrap()).unwrap();
        let diag: HashSet<GroupElement> = g
            .elements()
            .unwrap()
            .iter()
            .filter(|x| x.blocks[0].get(0, 1) == 0 && x.blocks[0].get(1, 0) == 0)
            .cloned()
            .collect();
        let one = g.identity();
        assert_eq!(conjugate_into(&g, &one, &diag).unwrap(), Some(one));
        let f = g.field();
        let x = GroupElement::single(Mat::from_rows(&[vec![1, 1], vec![0, f.neg(1)]]));
        let w = conjugate_into(&g, &x, &diag).unwrap().unwrap();
        assert!(diag.contains(&g.conj(&w, &x)));
        let u = GroupElement::single(Mat::from_rows(&[vec![1, 1], vec![0, 1]]));
        assert_eq!(conjugate_into(&g, &u, &diag).unwrap(), None);
    }
}
