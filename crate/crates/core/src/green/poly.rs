//! Dense integer polynomials in one variable.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Coefficients from the constant term upward; no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntPoly(pub Vec<i128>);

impl IntPoly {
    pub fn new(mut c: Vec<i128>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        IntPoly(c)
    }

    pub fn constant(c: i128) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: i128, d: usize) -> Self {
        let mut v = vec![0; d + 1];
        v[d] = c;
        Self::new(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        (!self.0.is_empty()).then(|| self.0.len() - 1)
    }

    pub fn coeff(&self, d: usize) -> i128 {
        self.0.get(d).copied().unwrap_or(0)
    }

    pub fn eval(&self, x: i128) -> i128 {
        self.0.iter().rev().fold(0, |acc, &c| acc * x + c)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn scale(&self, c: i128) -> Self {
        Self::new(self.0.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return IntPoly(vec![]);
        }
        let mut v = vec![0; self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::new(v)
    }

    /// Exact quotient, `None` if the division leaves a remainder.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let dd = d.degree()?;
        let lead = d.0[dd];
        let mut r = self.0.clone();
        if r.len() <= dd {
            return self.is_zero().then(|| IntPoly(vec![]));
        }
        let mut q = vec![0; r.len() - dd];
        for i in (dd..r.len()).rev() {
            if r[i] % lead != 0 {
                return None;
            }
            let c = r[i] / lead;
            q[i - dd] = c;
            for (t, &dc) in d.0.iter().enumerate() {
                r[i - dd + t] -= c * dc;
            }
        }
        r.iter().all(|&x| x == 0).then(|| Self::new(q))
    }

    /// `P(-x)`.
    pub fn negate_var(&self) -> Self {
        Self::new(self.0.iter().enumerate().map(|(i, &c)| if i % 2 == 1 { -c } else { c }).collect())
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (d, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "q")?,
                (1, _) => write!(f, "{a}q")?,
                (_, 1) => write!(f, "q^{d}")?,
                _ => write!(f, "{a}q^{d}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = IntPoly::new(vec![1, 1]);
        let b = IntPoly::new(vec![-1, 1]);
        let p = a.mul(&b);
        assert_eq!(p, IntPoly::new(vec![-1, 0, 1]));
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!(p.div_exact(&IntPoly::new(vec![2, 1])), None);
        assert_eq!(a.negate_var(), IntPoly::new(vec![1, -1]));
        assert_eq!(p.eval(3), 8);
        assert_eq!(p.to_string(), "q^2 - 1");
    }
}
