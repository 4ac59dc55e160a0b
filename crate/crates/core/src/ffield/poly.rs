//! Dense polynomials over GF(p), used only to build field tables.
//!
//! Coefficient vectors run from the constant term upward.

pub fn digits(mut code: u64, p: u32, k: usize) -> Vec<u32> {
    let mut out = vec![0; k];
    for d in out.iter_mut() {
        *d = (code % p as u64) as u32;
        code /= p as u64;
    }
    out
}

pub fn code(d: &[u32], p: u32) -> u64 {
    d.iter().rev().fold(0u64, |acc, &c| acc * p as u64 + c as u64)
}

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

/// Remainder of `a` modulo a nonzero `m`.
pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let m = trim(m.to_vec());
    let mut a = trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p) as u64;
    while a.len() > dm {
        let da = a.len() - 1;
        let c = a[da] as u64 * lead_inv % p as u64;
        for (i, &mi) in m.iter().enumerate() {
            let t = &mut a[da - dm + i];
            *t = ((*t as u64 + (p as u64 - c) * mi as u64) % p as u64) as u32;
        }
        a = trim(a);
    }
    a
}

/// Product modulo `m`, padded to `deg m` coefficients.
pub fn mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let prod: Vec<u32> = prod.into_iter().map(|x| x as u32).collect();
    let mut r = rem(&prod, m, p);
    r.resize(m.len() - 1, 0);
    r
}

pub fn powmod(a: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
    let k = m.len() - 1;
    let mut result = vec![0; k];
    result[0] = 1;
    if k == 0 {
        return result;
    }
    let mut base = rem(a, m, p);
    base.resize(k, 0);
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod(&result, &base, m, p);
        }
        base = mulmod(&base, &base, m, p);
        e >>= 1;
    }
    result
}

pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| {
            let x = *a.get(i).unwrap_or(&0);
            let y = *b.get(i).unwrap_or(&0);
            (x + p - y) % p
        })
        .collect()
}

/// Rabin's test: `f` of degree k is irreducible iff `x^{p^k} ≡ x` and
/// `gcd(x^{p^{k/r}} - x, f) = 1` for every prime r | k.
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let k = f.len() - 1;
    if k <= 1 {
        return k == 1;
    }
    let x = vec![0, 1];
    let frob_iter = |j: usize| {
        let mut y = x.clone();
        for _ in 0..j {
            y = powmod(&y, p as u64, f, p);
        }
        y
    };
    let xk = frob_iter(k);
    if trim(sub(&xk, &x, p)).iter().any(|&c| c != 0) {
        return false;
    }
    for r in super::field::prime_factors(k as u64) {
        let y = frob_iter(k / r as usize);
        let g = gcd(f, &sub(&y, &x, p), p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    // Trial division by every monic polynomial of degree 1..=k/2.
    fn irreducible_by_division(f: &[u32], p: u32) -> bool {
        let k = f.len() - 1;
        for d in 1..=k / 2 {
            for c in 0..(p as u64).pow(d as u32) {
                let mut g = digits(c, p, d);
                g.push(1);
                if rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn rabin_agrees_with_trial_division() {
        for (p, k) in [(2u32, 2usize), (2, 3), (2, 4), (2, 6), (3, 2), (3, 3), (3, 4), (5, 2), (5, 3)] {
            for c in 0..(p as u64).pow(k as u32) {
                let mut f = digits(c, p, k);
                f.push(1);
                assert_eq!(is_irreducible(&f, p), irreducible_by_division(&f, p), "{f:?} mod {p}");
            }
        }
    }

    #[test]
    fn digit_round_trip() {
        for c in 0..243 {
            assert_eq!(code(&digits(c, 3, 5), 3), c);
        }
    }
}
