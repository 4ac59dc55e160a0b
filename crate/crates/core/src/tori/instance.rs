//! Matrix realizations of maximal tori.
//!
//! A GL block of size λ is generated by the companion matrix of the
//! minimal polynomial of a generator z of `μ_{q^λ-1}`. A U block uses z of
//! order `q^λ - (-1)^λ`; its companion matrix C preserves some hermitian
//! form J, which is then moved to the identity form by an orthonormal
//! basis Q, giving the generator `Q^{-1} C Q`. When all slots of z
//! coincide the block is central and z itself is used.

use std::collections::HashMap;
use std::sync::Arc;

use super::model::{all_tuples, pow_mod_signed, Torus, TORUS_CAP};
use crate::error::{Error, Result};
use crate::ffield::Field;
use crate::green::Partition;
use crate::groups::{matrix, Context, Group, GroupElement, GroupSpec, Mat};

/// Explicit `T^F` inside `G^F`, with coordinates.
#[derive(Debug)]
pub struct TorusInstance {
    pub torus: Torus,
    pub group: Group,
    /// One generator per cyclic factor, in concatenated order.
    pub generators: Vec<GroupElement>,
    pub orders: Vec<u64>,
    /// Per cyclic factor: (factor index, block offset, block size, eigenvector, pivot index).
    probes: Vec<(usize, usize, usize, Vec<u32>, usize)>,
}

fn poly_from_roots(f: &Field, roots: &[u32]) -> Vec<u32> {
    // constant term first
    let mut c = vec![1u32];
    for &r in roots {
        let mut next = vec![0u32; c.len() + 1];
        for (i, &a) in c.iter().enumerate() {
            next[i + 1] = f.add(next[i + 1], a);
            next[i] = f.sub(next[i], f.mul(a, r));
        }
        c = next;
    }
    c
}

/// `(x, y)` with `v = x + y·β`, both in F_q, for v in F_{q²}.
fn split_coords(f: &Field, v: u32, beta: u32, q: u64) -> (u32, u32) {
    let bb = f.sub(beta, f.pow(beta, q as i64));
    let y = f.mul(f.sub(v, f.pow(v, q as i64)), f.inv_nz(bb));
    (f.sub(v, f.mul(y, beta)), y)
}

/// A nondegenerate hermitian J with `C* J C = J`, over F_{q²}.
fn invariant_form(f: &Field, c: &Mat, q: u64) -> Result<Mat> {
    let n = c.n;
    let fq = f.subfield_elements(q);
    let fq2 = f.subfield_elements(q * q);
    let beta = *fq2
        .iter()
        .find(|x| !f.in_subfield(**x, q))
        .ok_or_else(|| Error::Construction("no element of F_{q²} outside F_q".into()))?;
    let cs = matrix::conj_transpose(f, c, q);
    let cols = 2 * n * n;
    let rows = 4 * n * n;
    let mut lin = vec![0u32; rows * cols];
    for k in 0..cols {
        let (pos, scale) = (k / 2, if k % 2 == 0 { 1 } else { beta });
        let mut b = Mat::zero(n);
        b.a[pos] = scale;
        let inv = matrix::sub(f, &matrix::mul(f, &cs, &matrix::mul(f, &b, c)), &b);
        let herm = matrix::sub(f, &matrix::conj_transpose(f, &b, q), &b);
        for (r, &v) in inv.a.iter().chain(herm.a.iter()).enumerate() {
            let (x, y) = split_coords(f, v, beta, q);
            lin[(2 * r) * cols + k] = x;
            lin[(2 * r + 1) * cols + k] = y;
        }
    }
    let ker = matrix::kernel(f, &lin, rows, cols);
    let to_mat = |v: &[u32]| {
        let mut m = Mat::zero(n);
        for pos in 0..n * n {
            m.a[pos] = f.add(v[2 * pos], f.mul(v[2 * pos + 1], beta));
        }
        m
    };
    let basis: Vec<Mat> = ker.iter().map(|v| to_mat(v)).collect();
    for coeffs in all_tuples(&vec![q; basis.len()]) {
        let mut j = Mat::zero(n);
        for (b, &ci) in basis.iter().zip(&coeffs) {
            let c = fq[ci as usize];
            j = matrix::add(f, &j, &Mat { n, a: b.a.iter().map(|&x| f.mul(x, c)).collect() });
        }
        if matrix::det(f, &j) != 0 {
            return Ok(j);
        }
    }
    Err(Error::Construction("no nondegenerate invariant hermitian form".into()))
}

/// Columns `v_k` with `v_i* J v_j = δ_ij`.
fn orthonormal_basis(f: &Field, j: &Mat, q: u64) -> Result<Mat> {
    let n = j.n;
    let fq2 = f.subfield_elements(q * q);
    let h = |a: &[u32], b: &[u32]| -> u32 {
        let jb = matrix::mat_vec(f, j, b);
        crate::groups::group::herm(f, a, &jb, q)
    };
    let mut space: Vec<Vec<u32>> = (0..n).map(|k| (0..n).map(|i| (i == k) as u32).collect()).collect();
    let mut cols: Vec<Vec<u32>> = Vec::new();
    while !space.is_empty() {
        let mut found = None;
        for coeffs in all_tuples(&vec![q * q; space.len()]).into_iter().skip(1) {
            let v: Vec<u32> = (0..n)
                .map(|i| space.iter().zip(&coeffs).fold(0, |acc, (b, &c)| f.add(acc, f.mul(fq2[c as usize], b[i]))))
                .collect();
            let hv = h(&v, &v);
            if hv != 0 {
                found = Some((v, hv));
                break;
            }
        }
        let (v, hv) = found.ok_or_else(|| Error::Construction("hermitian form is totally isotropic".into()))?;
        let target = f.inv_nz(hv);
        let c = *fq2
            .iter()
            .find(|&&c| c != 0 && f.pow(c, q as i64 + 1) == target)
            .ok_or_else(|| Error::Construction("norm map not surjective".into()))?;
        let v: Vec<u32> = v.iter().map(|&x| f.mul(c, x)).collect();
        // complement of v inside the current space
        let eq: Vec<u32> = space.iter().map(|b| h(&v, b)).collect();
        let ker = matrix::kernel(f, &eq, 1, space.len());
        space = ker
            .iter()
            .map(|x| (0..n).map(|i| space.iter().zip(x).fold(0, |acc, (b, &c)| f.add(acc, f.mul(c, b[i])))).collect())
            .collect();
        cols.push(v);
    }
    let mut qm = Mat::zero(n);
    for (k, v) in cols.iter().enumerate() {
        for i in 0..n {
            qm.set(i, k, v[i]);
        }
    }
    Ok(qm)
}

/// Generator of one torus block: eigenvalues `z^{qs^j}`, j < λ.
pub fn block_generator(ctx: &Context, q: u64, qs: i64, lambda: u32) -> Result<(Mat, u64)> {
    let f = &ctx.field;
    let units = ctx.units();
    let m = (qs as i128).pow(lambda) - 1;
    let m = m.unsigned_abs() as u64;
    let step = ctx.mu_step(m)?;
    let roots: Vec<u32> = (0..lambda).map(|j| f.exp(step * pow_mod_signed(qs, j, units) % units)).collect();
    if qs < 0 && roots.iter().all(|&r| r == roots[0]) {
        // T^F is central here (U_2 over F_2): every slot carries z
        return Ok((Mat::scalar(lambda as usize, roots[0]), m));
    }
    let poly = poly_from_roots(f, &roots);
    let entry = if qs > 0 { q } else { q * q };
    if poly.iter().any(|&c| !f.in_subfield(c, entry)) {
        return Err(Error::Construction(format!("minimal polynomial of a torus block not over F_{entry}")));
    }
    let c = matrix::companion(f, &poly);
    if qs > 0 {
        return Ok((c, m));
    }
    let j = invariant_form(f, &c, q)?;
    let qm = orthonormal_basis(f, &j, q)?;
    let qi = matrix::inverse(f, &qm).ok_or_else(|| Error::Construction("singular orthonormal basis".into()))?;
    let g = matrix::mul(f, &qi, &matrix::mul(f, &c, &qm));
    let gg = matrix::mul(f, &matrix::conj_transpose(f, &g, q), &g);
    if !gg.is_identity() || g.a.iter().any(|&x| !f.in_subfield(x, entry)) {
        return Err(Error::Construction("unitary torus generator check failed".into()));
    }
    Ok((g, m))
}

impl TorusInstance {
    /// Realize the torus with the given classes in `spec` (taken at level 1).
    pub fn new(spec: &GroupSpec, classes: &[Partition], ctx: Arc<Context>) -> Result<Self> {
        let torus = Torus::new(spec, classes, ctx.clone())?;
        let group = Group::new(spec.at_level(1), ctx.clone())?;
        let f = &ctx.field;
        let mut generators = Vec::new();
        let mut orders = Vec::new();
        let mut probes = Vec::new();
        for (fi, ft) in torus.factors.iter().enumerate() {
            let n = ft.rank();
            let mut off = 0;
            for &l in ft.class.parts.parts() {
                let (g, m) = block_generator(&ctx, group.spec().q, ft.qs, l)?;
                // eigenvector for z
                let z = f.exp(ctx.mu_step(m)?);
                let shifted = matrix::sub(f, &g, &Mat::scalar(l as usize, z));
                let ker = matrix::kernel(f, &shifted.a, l as usize, l as usize);
                let w = ker.first().cloned().ok_or_else(|| Error::Construction("missing eigenvector".into()))?;
                let piv = w.iter().position(|&x| x != 0).unwrap_or(0);
                let mut blocks: Vec<Mat> = group.identity().blocks;
                let mut big = Mat::identity(n);
                for i in 0..l as usize {
                    for k in 0..l as usize {
                        big.set(off + i, off + k, g.get(i, k));
                    }
                }
                blocks[fi] = big;
                let gen = GroupElement { blocks };
                if !group.contains(&gen) || group.element_order(&gen) != m {
                    return Err(Error::Construction(format!("torus generator for part {l} is not F-fixed of order {m}")));
                }
                generators.push(gen);
                orders.push(m);
                probes.push((fi, off, l as usize, w, piv));
                off += l as usize;
            }
        }
        Ok(TorusInstance { torus, group, generators, orders, probes })
    }

    pub fn order(&self) -> u128 {
        self.orders.iter().map(|&m| m as u128).product()
    }

    /// `∏ g_i^{a_i}`.
    pub fn element(&self, coords: &[u64]) -> GroupElement {
        let mut x = self.group.identity();
        for (g, &a) in self.generators.iter().zip(coords) {
            x = self.group.mul(&x, &self.group.pow(g, a));
        }
        x
    }

    /// Coordinates of a torus element, or None when g is not in `T^F`.
    pub fn coords_of(&self, g: &GroupElement) -> Option<Vec<u64>> {
        let f = self.group.field();
        let ctx = self.group.ctx();
        let mut out = Vec::with_capacity(self.orders.len());
        for ((fi, off, l, w, piv), &m) in self.probes.iter().zip(&self.orders) {
            let b = &g.blocks[*fi];
            let mut sub = Mat::zero(*l);
            for i in 0..*l {
                for k in 0..*l {
                    sub.set(i, k, b.get(off + i, off + k));
                }
            }
            let bw = matrix::mat_vec(f, &sub, w);
            let lam = f.mul(bw[*piv], f.inv_nz(w[*piv]));
            let log = f.log(lam)? as u64;
            let step = ctx.mu_step(m).ok()?;
            if log % step != 0 {
                return None;
            }
            out.push(log / step);
        }
        (self.element(&out) == *g).then_some(out)
    }

    /// All `(coords, element)` pairs of `T^F`.
    pub fn elements(&self) -> Result<Vec<(Vec<u64>, GroupElement)>> {
        let size = self.order();
        if size > TORUS_CAP {
            return Err(Error::cap("torus listing", size, TORUS_CAP));
        }
        Ok(all_tuples(&self.orders).into_iter().map(|a| {
            let e = self.element(&a);
            (a, e)
        }).collect())
    }

    pub fn element_map(&self) -> Result<HashMap<GroupElement, Vec<u64>>> {
        Ok(self.elements()?.into_iter().map(|(a, e)| (e, a)).collect())
    }

    /// Structured text dump: class, orders and generator matrices.
    pub fn dump(&self) -> String {
        let mut s = format!("torus {} in {}\n", self.torus.classes().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" x "), self.group.spec());
        for (g, m) in self.generators.iter().zip(&self.orders) {
            s.push_str(&format!("generator order {m}:"));
            for b in &g.blocks {
                s.push_str(&format!(" {:?}", b.a));
            }
            s.push('\n');
        }
        s
    }
}
