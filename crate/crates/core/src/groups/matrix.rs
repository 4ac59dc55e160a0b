//! Small dense matrices over a table-driven field.

use crate::ffield::Field;

/// Square matrix with entries stored as field codes, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    pub n: usize,
    pub a: Vec<u32>,
}

impl Mat {
    pub fn identity(n: usize) -> Mat {
        let mut a = vec![0; n * n];
        for i in 0..n {
            a[i * n + i] = 1;
        }
        Mat { n, a }
    }

    pub fn zero(n: usize) -> Mat {
        Mat { n, a: vec![0; n * n] }
    }

    pub fn from_rows(rows: &[Vec<u32>]) -> Mat {
        let n = rows.len();
        Mat { n, a: rows.iter().flat_map(|r| r.iter().copied()).collect() }
    }

    pub fn scalar(n: usize, c: u32) -> Mat {
        let mut m = Mat::zero(n);
        for i in 0..n {
            m.a[i * n + i] = c;
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.a[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.a[i * self.n + j] = v;
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == (i == j) as u32))
    }

    /// Block-diagonal sum.
    pub fn block_diag(blocks: &[Mat]) -> Mat {
        let n = blocks.iter().map(|b| b.n).sum();
        let mut m = Mat::zero(n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    m.set(off + i, off + j, b.get(i, j));
                }
            }
            off += b.n;
        }
        m
    }

    pub fn transpose(&self) -> Mat {
        let n = self.n;
        let mut t = Mat::zero(n);
        for i in 0..n {
            for j in 0..n {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }
}

pub fn mul(f: &Field, x: &Mat, y: &Mat) -> Mat {
    let n = x.n;
    let mut out = Mat::zero(n);
    for i in 0..n {
        for k in 0..n {
            let a = x.a[i * n + k];
            if a == 0 {
                continue;
            }
            for j in 0..n {
                let b = y.a[k * n + j];
                if b != 0 {
                    let idx = i * n + j;
                    out.a[idx] = f.add(out.a[idx], f.mul(a, b));
                }
            }
        }
    }
    out
}

pub fn add(f: &Field, x: &Mat, y: &Mat) -> Mat {
    Mat { n: x.n, a: x.a.iter().zip(&y.a).map(|(&a, &b)| f.add(a, b)).collect() }
}

pub fn sub(f: &Field, x: &Mat, y: &Mat) -> Mat {
    Mat { n: x.n, a: x.a.iter().zip(&y.a).map(|(&a, &b)| f.sub(a, b)).collect() }
}

/// Entrywise power `x ↦ x^e` (a Frobenius when e is a power of p).
pub fn entry_pow(f: &Field, x: &Mat, e: i64) -> Mat {
    Mat { n: x.n, a: x.a.iter().map(|&c| f.pow(c, e)).collect() }
}

/// Conjugate transpose with conjugation `x ↦ x^qc`.
pub fn conj_transpose(f: &Field, x: &Mat, qc: u64) -> Mat {
    entry_pow(f, &x.transpose(), qc as i64)
}

pub fn pow(f: &Field, x: &Mat, mut e: u64) -> Mat {
    let mut result = Mat::identity(x.n);
    let mut base = x.clone();
    while e > 0 {
        if e & 1 == 1 {
            result = mul(f, &result, &base);
        }
        base = mul(f, &base, &base);
        e >>= 1;
    }
    result
}

/// Row-reduce a rectangular `rows × cols` array in place; returns the pivot columns.
pub fn rref(f: &Field, m: &mut [u32], rows: usize, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| m[i * cols + c] != 0) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                m.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = f.inv_nz(m[r * cols + c]);
        for j in 0..cols {
            m[r * cols + j] = f.mul(m[r * cols + j], inv);
        }
        for i in 0..rows {
            if i != r {
                let factor = m[i * cols + c];
                if factor != 0 {
                    for j in 0..cols {
                        let v = f.mul(factor, m[r * cols + j]);
                        m[i * cols + j] = f.sub(m[i * cols + j], v);
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank_rect(f: &Field, m: &[u32], rows: usize, cols: usize) -> usize {
    let mut w = m.to_vec();
    rref(f, &mut w, rows, cols).len()
}

pub fn rank(f: &Field, x: &Mat) -> usize {
    rank_rect(f, &x.a, x.n, x.n)
}

/// Basis of the right kernel of a `rows × cols` array.
pub fn kernel(f: &Field, m: &[u32], rows: usize, cols: usize) -> Vec<Vec<u32>> {
    let mut w = m.to_vec();
    let pivots = rref(f, &mut w, rows, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0; cols];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(w[r * cols + fc]);
            }
            v
        })
        .collect()
}

pub fn inverse(f: &Field, x: &Mat) -> Option<Mat> {
    let n = x.n;
    let cols = 2 * n;
    let mut w = vec![0; n * cols];
    for i in 0..n {
        for j in 0..n {
            w[i * cols + j] = x.get(i, j);
        }
        w[i * cols + n + i] = 1;
    }
    let piv = rref(f, &mut w, n, cols);
    if piv.len() < n || piv[n - 1] >= n {
        return None;
    }
    let mut inv = Mat::zero(n);
    for i in 0..n {
        for j in 0..n {
            inv.set(i, j, w[i * cols + n + j]);
        }
    }
    Some(inv)
}

pub fn det(f: &Field, x: &Mat) -> u32 {
    let n = x.n;
    let mut w = x.a.clone();
    let mut d = 1;
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| w[i * n + c] != 0) else {
            return 0;
        };
        if pr != c {
            for j in 0..n {
                w.swap(pr * n + j, c * n + j);
            }
            d = f.neg(d);
        }
        let pv = w[c * n + c];
        d = f.mul(d, pv);
        let inv = f.inv_nz(pv);
        for i in c + 1..n {
            let factor = f.mul(w[i * n + c], inv);
            if factor != 0 {
                for j in c..n {
                    let v = f.mul(factor, w[c * n + j]);
                    w[i * n + j] = f.sub(w[i * n + j], v);
                }
            }
        }
    }
    d
}

pub fn mat_vec(f: &Field, x: &Mat, v: &[u32]) -> Vec<u32> {
    (0..x.n)
        .map(|i| (0..x.n).fold(0, |acc, j| f.add(acc, f.mul(x.get(i, j), v[j]))))
        .collect()
}

/// Companion matrix of a monic polynomial given constant term first.
pub fn companion(f: &Field, poly: &[u32]) -> Mat {
    let n = poly.len() - 1;
    let mut m = Mat::zero(n);
    for i in 1..n {
        m.set(i, i - 1, 1);
    }
    for i in 0..n {
        m.set(i, n - 1, f.neg(poly[i]));
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::Field;

    #[test]
    fn inverse_and_det() {
        let f = Field::get(3, 1).unwrap();
        let m = Mat::from_rows(&[vec![1, 2], vec![0, 1]]);
        let inv = inverse(&f, &m).unwrap();
        assert!(mul(&f, &m, &inv).is_identity());
        assert_eq!(det(&f, &Mat::from_rows(&[vec![0, 1], vec![1, 0]])), 2);
        assert!(inverse(&f, &Mat::from_rows(&[vec![1, 1], vec![1, 1]])).is_none());
    }

    #[test]
    fn kernel_dimension() {
        let f = Field::get(2, 2).unwrap();
        let m = vec![1, 1, 0, 0, 0, 1];
        let k = kernel(&f, &m, 2, 3);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![1, 1, 0]);
    }

    #[test]
    fn companion_char_poly() {
        let f = Field::get(2, 1).unwrap();
        let c = companion(&f, &[1, 1, 1]);
        let c3 = pow(&f, &c, 3);
        assert!(c3.is_identity());
    }
}
