//! Explicit matrix realizations of `G^{F^ν}`.

use std::collections::HashSet;
use std::sync::{Arc, OnceLock};

use super::matrix::{self, Mat};
use super::spec::{Context, GroupSpec, ENUM_CAP};
use crate::error::{Error, Result};
use crate::ffield::Field;

/// An element of a product group: one matrix per factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub blocks: Vec<Mat>,
}

impl GroupElement {
    pub fn single(m: Mat) -> Self {
        GroupElement { blocks: vec![m] }
    }

    /// Canonical byte encoding (little-endian codes, factor by factor).
    pub fn key(&self) -> Vec<u8> {
        let mut out = Vec::new();
        for b in &self.blocks {
            out.push(b.n as u8);
            for &c in &b.a {
                out.extend_from_slice(&c.to_le_bytes());
            }
        }
        out
    }
}

/// A group `G^{F^ν}` inside a universe field, with lazily enumerated elements.
pub struct Group {
    spec: GroupSpec,
    ctx: Arc<Context>,
    factor_elems: Vec<OnceLock<Arc<Vec<Mat>>>>,
    elems: OnceLock<Arc<Vec<GroupElement>>>,
}

impl std::fmt::Debug for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Group({})", self.spec)
    }
}

impl Group {
    pub fn new(spec: GroupSpec, ctx: Arc<Context>) -> Result<Self> {
        spec.validate()?;
        if spec.q != ctx.q {
            return Err(Error::SpecMismatch(format!("group q={} in universe q={}", spec.q, ctx.q)));
        }
        let need = spec.eigen_degree();
        if ctx.field.k() % need != 0 {
            return Err(Error::SpecMismatch(format!(
                "{} needs GF(p^{need}) inside the universe {:?}",
                spec, ctx.field
            )));
        }
        let factor_elems = spec.factors.iter().map(|_| OnceLock::new()).collect();
        Ok(Group { spec, ctx, factor_elems, elems: OnceLock::new() })
    }

    /// Convenience: group in its own minimal universe.
    pub fn standalone(spec: GroupSpec) -> Result<Self> {
        let ctx = Context::for_specs(std::slice::from_ref(&spec))?;
        Self::new(spec, ctx)
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }
    pub fn ctx(&self) -> &Arc<Context> {
        &self.ctx
    }
    pub fn field(&self) -> &Field {
        &self.ctx.field
    }
    pub fn order(&self) -> u128 {
        self.spec.order()
    }

    /// Size of the field holding the matrix entries of factor `i`.
    pub fn entry_field_size(&self, i: usize) -> u64 {
        let qs = self.spec.signed_q(i);
        let a = qs.unsigned_abs();
        if qs > 0 {
            a
        } else {
            a * a
        }
    }

    fn is_unitary_factor(&self, i: usize) -> bool {
        self.spec.signed_q(i) < 0
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { blocks: self.spec.factors.iter().map(|f| Mat::identity(f.n)).collect() }
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let f = self.field();
        GroupElement { blocks: a.blocks.iter().zip(&b.blocks).map(|(x, y)| matrix::mul(f, x, y)).collect() }
    }

    pub fn inv(&self, a: &GroupElement) -> GroupElement {
        let f = self.field();
        GroupElement {
            blocks: a
                .blocks
                .iter()
                .enumerate()
                .map(|(i, x)| {
                    if self.is_unitary_factor(i) {
                        matrix::conj_transpose(f, x, self.spec.signed_q(i).unsigned_abs())
                    } else {
                        matrix::inverse(f, x).expect("group elements are invertible")
                    }
                })
                .collect(),
        }
    }

    /// `x^{-1} g x`.
    pub fn conj(&self, x: &GroupElement, g: &GroupElement) -> GroupElement {
        self.mul(&self.inv(x), &self.mul(g, x))
    }

    pub fn pow(&self, a: &GroupElement, e: u64) -> GroupElement {
        let f = self.field();
        GroupElement { blocks: a.blocks.iter().map(|x| matrix::pow(f, x, e)).collect() }
    }

    pub fn is_identity(&self, a: &GroupElement) -> bool {
        a.blocks.iter().all(|b| b.is_identity())
    }

    /// Element order by repeated multiplication.
    pub fn element_order(&self, a: &GroupElement) -> u64 {
        let mut x = a.clone();
        let mut k = 1;
        while !self.is_identity(&x) {
            x = self.mul(&x, a);
            k += 1;
            assert!(k < 1 << 24, "element order too large");
        }
        k
    }

    /// The base Frobenius F: entrywise q-power on GL factors and
    /// conjugate-transpose-inverse on U factors.
    pub fn frobenius(&self, g: &GroupElement) -> GroupElement {
        let f = self.field();
        let q = self.spec.q;
        GroupElement {
            blocks: g
                .blocks
                .iter()
                .enumerate()
                .map(|(i, x)| {
                    let y = matrix::entry_pow(f, x, q as i64);
                    if self.spec.base_signed_q(i) > 0 {
                        y
                    } else {
                        matrix::inverse(f, &y.transpose()).expect("invertible")
                    }
                })
                .collect(),
        }
    }

    /// Membership in `G^{F^ν}`: invertible and fixed by F^ν.
    pub fn contains(&self, g: &GroupElement) -> bool {
        if g.blocks.len() != self.spec.factors.len() {
            return false;
        }
        let f = self.field();
        for (b, fac) in g.blocks.iter().zip(&self.spec.factors) {
            if b.n != fac.n || matrix::det(f, b) == 0 {
                return false;
            }
        }
        let mut x = g.clone();
        for _ in 0..self.spec.nu {
            x = self.frobenius(&x);
        }
        x == *g
    }

    /// Elements of the entry field of factor `i`, ascending codes.
    pub fn entry_field(&self, i: usize) -> Vec<u32> {
        self.field().subfield_elements(self.entry_field_size(i))
    }

    /// All elements of factor `i`.
    pub fn factor_elements(&self, i: usize) -> Result<Arc<Vec<Mat>>> {
        if let Some(v) = self.factor_elems[i].get() {
            return Ok(v.clone());
        }
        let n = self.spec.factors[i].n;
        let qs = self.spec.signed_q(i);
        let size = super::spec::signed_order(n, qs);
        if size > ENUM_CAP {
            return Err(Error::cap(format!("|{}|", self.spec), size, ENUM_CAP));
        }
        let sub = self.entry_field(i);
        let v = if qs > 0 {
            enumerate_gl(self.field(), n, &sub)
        } else {
            enumerate_u(self.field(), n, &sub, qs.unsigned_abs())
        };
        if v.len() as u128 != size {
            return Err(Error::Assertion(format!(
                "enumerated {} elements of factor {i} of {}, expected {size}",
                v.len(),
                self.spec
            )));
        }
        let v = Arc::new(v);
        Ok(self.factor_elems[i].get_or_init(|| v).clone())
    }

    /// All elements of the group, factor-major Cartesian product.
    pub fn elements(&self) -> Result<Arc<Vec<GroupElement>>> {
        if let Some(v) = self.elems.get() {
            return Ok(v.clone());
        }
        let size = self.order();
        if size > ENUM_CAP {
            return Err(Error::cap(format!("|{}|", self.spec), size, ENUM_CAP));
        }
        let lists: Vec<Arc<Vec<Mat>>> =
            (0..self.spec.factors.len()).map(|i| self.factor_elements(i)).collect::<Result<_>>()?;
        let mut out: Vec<GroupElement> = vec![GroupElement { blocks: vec![] }];
        for l in &lists {
            let mut next = Vec::with_capacity(out.len() * l.len());
            for e in &out {
                for m in l.iter() {
                    let mut b = e.blocks.clone();
                    b.push(m.clone());
                    next.push(GroupElement { blocks: b });
                }
            }
            out = next;
        }
        let v = Arc::new(out);
        Ok(self.elems.get_or_init(|| v).clone())
    }

    /// Element set for O(1) membership tests.
    pub fn element_set(&self) -> Result<HashSet<GroupElement>> {
        Ok(self.elements()?.iter().cloned().collect())
    }
}

fn all_vectors(sub: &[u32], n: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * sub.len());
        for v in &out {
            for &c in sub {
                let mut w = v.clone();
                w.push(c);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// GL_n over the subfield `sub`, rows chosen outside the span of earlier rows.
fn enumerate_gl(f: &Field, n: usize, sub: &[u32]) -> Vec<Mat> {
    let vecs = all_vectors(sub, n);
    let mut out = Vec::new();
    let mut rows: Vec<usize> = Vec::new();
    let zero = vec![0u32; n];
    let mut spans: Vec<HashSet<Vec<u32>>> = vec![[zero].into_iter().collect()];
    fn rec(
        f: &Field,
        n: usize,
        sub: &[u32],
        vecs: &[Vec<u32>],
        rows: &mut Vec<usize>,
        spans: &mut Vec<HashSet<Vec<u32>>>,
        out: &mut Vec<Mat>,
    ) {
        if rows.len() == n {
            let r: Vec<Vec<u32>> = rows.iter().map(|&i| vecs[i].clone()).collect();
            out.push(Mat::from_rows(&r));
            return;
        }
        for (i, v) in vecs.iter().enumerate() {
            let span = spans.last().unwrap();
            if span.contains(v) {
                continue;
            }
            let mut next = HashSet::with_capacity(span.len() * sub.len());
            for s in span {
                for &c in sub {
                    next.insert(s.iter().zip(v).map(|(&a, &b)| f.add(a, f.mul(c, b))).collect());
                }
            }
            rows.push(i);
            spans.push(next);
            rec(f, n, sub, vecs, rows, spans, out);
            spans.pop();
            rows.pop();
        }
    }
    rec(f, n, sub, &vecs, &mut rows, &mut spans, &mut out);
    out
}

/// `h(a, b) = Σ a_k^{qc} b_k`.
pub fn herm(f: &Field, a: &[u32], b: &[u32], qc: u64) -> u32 {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(f.pow(x, qc as i64), y)))
}

/// U_n for the identity form, columns chosen orthonormal one at a time.
fn enumerate_u(f: &Field, n: usize, sub: &[u32], qc: u64) -> Vec<Mat> {
    let units: Vec<Vec<u32>> =
        all_vectors(sub, n).into_iter().filter(|v| herm(f, v, v, qc) == 1).collect();
    let mut out = Vec::new();
    let mut cols: Vec<usize> = Vec::new();
    fn rec(f: &Field, n: usize, qc: u64, units: &[Vec<u32>], cols: &mut Vec<usize>, out: &mut Vec<Mat>) {
        if cols.len() == n {
            let mut m = Mat::zero(n);
            for (j, &c) in cols.iter().enumerate() {
                for i in 0..n {
                    m.set(i, j, units[c][i]);
                }
            }
            out.push(m);
            return;
        }
        for (i, v) in units.iter().enumerate() {
            if cols.iter().all(|&c| herm(f, &units[c], v, qc) == 0) {
                cols.push(i);
                rec(f, n, qc, units, cols, out);
                cols.pop();
            }
        }
    }
    rec(f, n, qc, &units, &mut cols, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_enumerations() {
        let g = Group::standalone(GroupSpec::gl(2, 2).unwrap()).unwrap();
        assert_eq!(g.elements().unwrap().len(), 6);
        let u = Group::standalone(GroupSpec::u(2, 2).unwrap()).unwrap();
        assert_eq!(u.elements().unwrap().len(), 18);
        for q in [2, 3, 4, 5] {
            let u1 = Group::standalone(GroupSpec::u(1, q).unwrap()).unwrap();
            assert_eq!(u1.elements().unwrap().len() as u64, q + 1);
        }
    }

    #[test]
    fn frobenius_fixes_elements() {
        for spec in [GroupSpec::gl(2, 3).unwrap(), GroupSpec::u(2, 3).unwrap(), GroupSpec::u(2, 2).unwrap().at_level(2)]
        {
            let g = Group::standalone(spec).unwrap();
            for x in g.elements().unwrap().iter() {
                assert!(g.contains(x));
            }
        }
    }

    #[test]
    fn unitary_inverse_is_adjoint() {
        let g = Group::standalone(GroupSpec::u(3, 2).unwrap()).unwrap();
        let f = g.field();
        for x in g.elements().unwrap().iter().take(200) {
            let y = g.inv(x);
            assert!(g.is_identity(&g.mul(x, &y)));
            assert_eq!(y.blocks[0], matrix::inverse(f, &x.blocks[0]).unwrap());
        }
    }
}
