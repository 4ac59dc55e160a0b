//! Independent brute-force values of `R_{T,1}` on unipotent elements and of
//! `R_{T,χ}` for split tori, built from permutation characters rather than
//! from Green polynomials.
//!
//! For `GL_n`, the permutation character on partial flags of type μ is
//! `Σ_λ K_{λμ} ρ_λ`; inverting the Kostka matrix gives the unipotent
//! characters `ρ_λ`, and `R_{T_w,1} = Σ_λ χ^λ(w) ρ_λ`. For `U_2` the Borel
//! permutation character is `1 + St` and `R_{T,1}` is either `1 + St` or
//! `1 - St`. The Kostka matrices and symmetric-group characters used here
//! are written out by hand for n ≤ 3.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::ffield::Cyclotomic;
use crate::green::{green_value, GreenTable, Partition};
use crate::ffield::Field;
use crate::groups::matrix::mat_vec;
use crate::groups::{Context, Family, Group, GroupElement, GroupSpec, Mat};
use crate::tori::{TorusCharacter, TorusInstance};

fn p(v: &[u32]) -> Partition {
    Partition::new(v.to_vec())
}

/// Partitions of n ≤ 3 in dominance order, largest first.
fn parts_of(n: u32) -> Result<Vec<Partition>> {
    Ok(match n {
        1 => vec![p(&[1])],
        2 => vec![p(&[2]), p(&[1, 1])],
        3 => vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])],
        _ => return Err(Error::Unsupported(format!("oracle tables stop at n = 3, got {n}"))),
    })
}

/// `K[λ][μ]` in the order of [`parts_of`].
fn kostka(n: u32) -> Vec<Vec<i128>> {
    match n {
        1 => vec![vec![1]],
        2 => vec![vec![1, 1], vec![0, 1]],
        _ => vec![vec![1, 1, 1], vec![0, 1, 2], vec![0, 0, 1]],
    }
}

/// `χ^λ(w)` for w of cycle type `rho`, both in the order of [`parts_of`].
fn sn_table(n: u32) -> Vec<Vec<i128>> {
    match n {
        1 => vec![vec![1]],
        2 => vec![vec![1, 1], vec![-1, 1]],
        // columns: (3), (2,1), (1,1,1)
        _ => vec![vec![1, 1, 1], vec![-1, 0, 2], vec![1, -1, 1]],
    }
}

/// Unipotent element of GL_n with Jordan type `lambda`.
fn jordan_unipotent(n: usize, lambda: &Partition) -> Mat {
    let mut m = Mat::identity(n);
    let mut off = 0;
    for &b in lambda.parts() {
        for i in 0..b as usize - 1 {
            m.set(off + i, off + i + 1, 1);
        }
        off += b as usize;
    }
    m
}

type Subspace = Vec<Vec<u32>>;

/// All subspaces of `F^n` (F given by its element list), as sorted vector sets.
fn subspaces(f: &Field, elems: &[u32], n: usize) -> Vec<Vec<Subspace>> {
    let mut vecs: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..n {
        vecs = vecs.into_iter().flat_map(|v| elems.iter().map(move |&e| [v.clone(), vec![e]].concat())).collect();
    }
    let zero = vec![0u32; n];
    let mut by_dim: Vec<BTreeSet<Subspace>> = vec![BTreeSet::new(); n + 1];
    by_dim[0].insert(vec![zero.clone()]);
    for d in 0..n {
        let current: Vec<Subspace> = by_dim[d].iter().cloned().collect();
        for s in current {
            let set: HashSet<&Vec<u32>> = s.iter().collect();
            for v in vecs.iter().filter(|v| !set.contains(v)) {
                // span(s, v) = { x + c v }
                let mut span: Vec<Vec<u32>> = Vec::new();
                for x in &s {
                    for &c in elems {
                        span.push(x.iter().zip(v).map(|(&a, &b)| f.add(a, f.mul(c, b))).collect());
                    }
                }
                span.sort();
                span.dedup();
                by_dim[d + 1].insert(span);
            }
        }
    }
    by_dim.into_iter().map(|s| s.into_iter().collect()).collect()
}

fn stable(f: &Field, u: &Mat, s: &Subspace) -> bool {
    let set: HashSet<&Vec<u32>> = s.iter().collect();
    s.iter().all(|v| set.contains(&mat_vec(f, u, v)))
}

fn contained(a: &Subspace, b: &Subspace) -> bool {
    let set: HashSet<&Vec<u32>> = b.iter().collect();
    a.iter().all(|v| set.contains(v))
}

/// Number of u-stable flags with successive dimension jumps `mu`.
fn fixed_flags(f: &Field, u: &Mat, subs: &[Vec<Subspace>], mu: &[u32]) -> i128 {
    fn go(f: &Field, u: &Mat, subs: &[Vec<Subspace>], mu: &[u32], prev: &Subspace, dim: usize) -> i128 {
        let Some((&m, rest)) = mu.split_first() else {
            return 1;
        };
        let d = dim + m as usize;
        subs[d]
            .iter()
            .filter(|s| contained(prev, s) && stable(f, u, s))
            .map(|s| go(f, u, subs, rest, s, d))
            .sum()
    }
    let zero = subs[0][0].clone();
    go(f, u, subs, mu, &zero, 0)
}

/// Oracle values `Q_ρ(λ)` keyed by (torus class ρ, unipotent type λ).
pub type GreenOracle = BTreeMap<(Partition, Partition), i128>;

/// `R_{T_w,1}(u)` on `GL_n(F_q)` for n ≤ 3 from fixed-flag counts.
pub fn green_oracle_gl(n: u32, q: u64) -> Result<GreenOracle> {
    let ps = parts_of(n)?;
    let spec = GroupSpec::gl(n as usize, q)?;
    let ctx = Context::for_specs(std::slice::from_ref(&spec))?;
    let f = ctx.field.clone();
    let elems = f.subfield_elements(q);
    let subs = subspaces(&f, &elems, n as usize);
    let k = kostka(n);
    let chi = sn_table(n);
    let mut out = GreenOracle::new();
    for lambda in &ps {
        let u = jordan_unipotent(n as usize, lambda);
        let ind: Vec<i128> = ps.iter().map(|mu| fixed_flags(&f, &u, &subs, mu.parts())).collect();
        // back-substitute ind_μ = Σ_{ν ⊵ μ} K_{νμ} ρ_ν, from the top of the order
        let mut rho = vec![0i128; ps.len()];
        for mu in 0..ps.len() {
            let known: i128 = (0..mu).map(|nu| k[nu][mu] * rho[nu]).sum();
            rho[mu] = (ind[mu] - known) / k[mu][mu];
        }
        for (wi, w) in ps.iter().enumerate() {
            let v: i128 = (0..ps.len()).map(|li| chi[li][wi] * rho[li]).sum();
            out.insert((w.clone(), lambda.clone()), v);
        }
    }
    Ok(out)
}

/// `R_{T,1}(u)` on `U_2(F_q)` from isotropic lines fixed by u.
pub fn green_oracle_u2(q: u64) -> Result<GreenOracle> {
    let spec = GroupSpec::u(2, q)?;
    let ctx = Context::for_specs(std::slice::from_ref(&spec))?;
    let group = Group::new(spec, ctx.clone())?;
    let f = group.field();
    let e2 = f.subfield_elements(q * q);
    let one = group.identity();
    let u = group
        .elements()?
        .iter()
        .find(|g| **g != one && group.pow(g, group.spec().p()).blocks[0].is_identity())
        .cloned()
        .ok_or_else(|| Error::Construction("no nontrivial unipotent in U_2".into()))?;
    let mut lines: BTreeSet<Vec<u32>> = BTreeSet::new();
    for &a in &e2 {
        for &b in &e2 {
            let v = [a, b];
            if v == [0, 0] || f.add(f.pow(a, q as i64 + 1), f.pow(b, q as i64 + 1)) != 0 {
                continue;
            }
            // normalize: first nonzero coordinate 1
            let lead = if a != 0 { a } else { b };
            let li = f.inv_nz(lead);
            lines.insert(vec![f.mul(a, li), f.mul(b, li)]);
        }
    }
    let fixed = |m: &Mat| -> i128 {
        lines
            .iter()
            .filter(|l| {
                let w = mat_vec(f, m, l);
                // w ∈ span(l)
                f.sub(f.mul(w[0], l[1]), f.mul(w[1], l[0])) == 0
            })
            .count() as i128
    };
    let mut out = GreenOracle::new();
    for (lambda, m) in [(p(&[1, 1]), one.blocks[0].clone()), (p(&[2]), u.blocks[0].clone())] {
        let ind = fixed(&m);
        out.insert((p(&[2]), lambda.clone()), ind);
        out.insert((p(&[1, 1]), lambda), 2 - ind);
    }
    Ok(out)
}

pub fn green_oracle(family: Family, n: u32, q: u64) -> Result<GreenOracle> {
    match (family, n) {
        (Family::GL, 1..=3) => green_oracle_gl(n, q),
        (Family::U, 2) => green_oracle_u2(q),
        _ => Err(Error::Unsupported(format!("no oracle for {family}{n}"))),
    }
}

/// One disagreement between the oracle and a Green table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreenMismatch {
    pub torus: Partition,
    pub unipotent: Partition,
    pub oracle: i128,
    pub table: i128,
}

/// Compares the oracle with `green_value`, or with a supplied table.
pub fn check_green(family: Family, n: u32, q: u64, table: Option<&GreenTable>) -> Result<Vec<GreenMismatch>> {
    let oracle = green_oracle(family, n, q)?;
    let mut bad = Vec::new();
    for ((rho, lambda), &o) in &oracle {
        let t = match table {
            Some(tb) => tb
                .get(rho, lambda)
                .ok_or_else(|| Error::Data(format!("table lacks entry {rho} {lambda}")))?
                .eval(q as i128),
            None => green_value(family, n, rho, lambda, q)?,
        };
        if t != o {
            bad.push(GreenMismatch { torus: rho.clone(), unipotent: lambda.clone(), oracle: o, table: t });
        }
    }
    Ok(bad)
}

/// `Ind_B^G(χ)(g)` on `GL_n(F_q)` for a character χ of the diagonal torus,
/// summing over `x` with `x^{-1} g x ∈ B`.
pub fn induced_from_borel(group: &Group, inst: &TorusInstance, chi: &TorusCharacter, g: &GroupElement) -> Result<Cyclotomic> {
    let n = group.spec().factors[0].n;
    let mut acc = crate::ffield::CycloAccumulator::new(chi.conductor() as u32)?;
    let mut b_order = 0u64;
    for x in group.elements()?.iter() {
        let m = &x.blocks[0];
        if (0..n).all(|i| (0..i).all(|j| m.get(i, j) == 0)) {
            b_order += 1;
        }
        let c = group.conj(x, g);
        let cm = &c.blocks[0];
        if (0..n).all(|i| (0..i).all(|j| cm.get(i, j) == 0)) {
            let mut d = Mat::identity(n);
            for i in 0..n {
                d.set(i, i, cm.get(i, i));
            }
            let coords = inst
                .coords_of(&GroupElement::single(d))
                .ok_or_else(|| Error::Assertion("diagonal part outside the split torus".into()))?;
            acc.add(chi.exponent(&coords), 1);
        }
    }
    Ok(acc
        .finish()
        .scale(&num_rational::BigRational::new(1.into(), (b_order as i64).into())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dlchar::{dl_value, DLSpec};

    #[test]
    fn gl_oracle_matches_green_polynomials() {
        for n in 1..=3 {
            for q in [2, 3] {
                assert!(check_green(Family::GL, n, q, None).unwrap().is_empty(), "GL{n}({q})");
            }
        }
    }

    #[test]
    fn u2_oracle_matches_green_polynomials() {
        for q in [2, 3] {
            let o = green_oracle_u2(q).unwrap();
            assert_eq!(o[&(p(&[2]), p(&[1, 1]))], q as i128 + 1);
            assert!(check_green(Family::U, 2, q, None).unwrap().is_empty(), "U2({q})");
        }
    }

    #[test]
    fn corrupted_table_is_caught() {
        let mut t = GreenTable::generate(Family::GL, 2).unwrap();
        let key = (p(&[1, 1]), p(&[1, 1]));
        let bumped = t.entries[&key].add(&crate::green::IntPoly::constant(1));
        t.entries.insert(key, bumped);
        assert_eq!(check_green(Family::GL, 2, 3, Some(&t)).unwrap().len(), 1);
    }

    #[test]
    fn split_torus_character_is_borel_induction() {
        for (n, q) in [(2usize, 3u64), (3, 2), (2, 5)] {
            let spec = GroupSpec::gl(n, q).unwrap();
            let classes = [Partition::new(vec![1; n])];
            let ctx = Context::for_specs(std::slice::from_ref(&spec)).unwrap();
            let inst = TorusInstance::new(&spec, &classes, ctx).unwrap();
            let group = &inst.group;
            for chi in crate::tori::characters(&inst.orders).unwrap().into_iter().take(6) {
                let dl = DLSpec::new(&spec, &classes, chi.exps.clone(), 1).unwrap();
                for c in crate::groups::conjugacy_classes(group).unwrap() {
                    let a = dl_value(&dl, &c.rep).unwrap();
                    let b = induced_from_borel(group, &inst, &chi, &c.rep).unwrap();
                    assert_eq!(a, b, "GL{n}({q}) {chi} at {:?}", c.rep);
                }
            }
        }
    }
}
