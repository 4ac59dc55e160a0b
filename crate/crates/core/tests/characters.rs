//! Structural checks on Deligne–Lusztig characters and the groups they
//! live on.

use std::collections::HashSet;

use dlp_core::dlchar::{dl_table, inner_product, DLSpec};
use dlp_core::ffield::{cyclotomic_poly, euler_phi};
use dlp_core::green::partitions;
use dlp_core::groups::scan::centralizer_order_scan;
use dlp_core::groups::{centralizer_type, conjugacy_classes, conjugate_into, jordan, Factor, Family, Group, GroupSpec};
use dlp_core::tori::{characters, TorusClass, TorusInstance};
use rand::{Rng, SeedableRng};

fn spec(family: Family, n: usize, q: u64) -> GroupSpec {
    GroupSpec::new(vec![Factor { family, n }], q).unwrap()
}

#[test]
fn cyclotomic_polys_divide_x_n_minus_one() {
    for n in 1..=200u32 {
        let phi = cyclotomic_poly(n).unwrap();
        assert_eq!(phi.len() as u64 - 1, euler_phi(n as u64), "deg Φ_{n}");
        // long division of x^n - 1 by the monic Φ_n
        let mut r: Vec<i64> = vec![0; n as usize + 1];
        r[0] = -1;
        r[n as usize] = 1;
        let d = phi.len() - 1;
        for top in (d..=n as usize).rev() {
            let c = r[top];
            if c != 0 {
                for (i, &a) in phi.iter().enumerate() {
                    r[top - d + i] -= c * a;
                }
            }
        }
        assert!(r.iter().all(|&x| x == 0), "Φ_{n} does not divide x^{n} - 1");
    }
}

#[test]
fn closure_under_products_and_inverses() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for (family, n, q) in [(Family::GL, 2, 3), (Family::GL, 3, 2), (Family::U, 3, 2), (Family::U, 2, 3)] {
        let g = Group::standalone(spec(family, n, q)).unwrap();
        let els = g.elements().unwrap();
        let set: HashSet<_> = els.iter().cloned().collect();
        for _ in 0..2000 {
            let a = &els[rng.gen_range(0..els.len())];
            let b = &els[rng.gen_range(0..els.len())];
            assert!(set.contains(&g.mul(a, b)));
            assert!(set.contains(&g.inv(a)));
            assert_eq!(g.frobenius(&g.mul(a, b)), g.mul(&g.frobenius(a), &g.frobenius(b)));
        }
    }
}

#[test]
fn centralizer_orders_match_scans() {
    for (family, n, q) in [(Family::GL, 2, 3), (Family::GL, 3, 2), (Family::U, 2, 3), (Family::U, 3, 2)] {
        let g = Group::standalone(spec(family, n, q)).unwrap();
        for c in conjugacy_classes(&g).unwrap() {
            let s = jordan(&g, &c.rep).s;
            if s != c.rep {
                continue;
            }
            let ct = centralizer_type(&g, &s).unwrap();
            assert_eq!(ct.order(), centralizer_order_scan(&g, &s).unwrap() as u128, "{family}{n}({q})");
        }
    }
}

/// R_{T,χ} is a class function that vanishes when the semisimple part is
/// not conjugate into T, and its inner products are integers.
#[test]
fn dl_characters_are_integral_class_functions() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for (family, n, q) in [(Family::GL, 2, 2), (Family::GL, 2, 3), (Family::U, 2, 2), (Family::U, 2, 3)] {
        let sp = spec(family, n, q);
        let g = Group::standalone(sp.clone()).unwrap();
        let els = g.elements().unwrap();
        let mut tables = Vec::new();
        for rho in partitions(n as u32) {
            let t = std::slice::from_ref(&rho);
            let inst = TorusInstance::new(&sp, t, g.ctx().clone()).unwrap();
            let tset: HashSet<_> = inst.elements().unwrap().into_iter().map(|(_, x)| x).collect();
            for chi in characters(&TorusClass::new(family, rho.clone()).orders(q)).unwrap() {
                let dl = DLSpec::new(&sp, t, chi.exps.clone(), 1).unwrap();
                let (classes, vals) = dl_table(&dl).unwrap();
                for (c, v) in classes.iter().zip(&vals) {
                    let s = jordan(&g, &c.rep).s;
                    if conjugate_into(&g, &s, &tset).unwrap().is_none() {
                        assert!(v.is_zero(), "{family}{n}({q}) T{rho}: nonzero off T");
                    }
                    for _ in 0..5 {
                        let x = &els[rng.gen_range(0..els.len())];
                        assert_eq!(&dl.value(&g.conj(x, &c.rep)).unwrap(), v);
                    }
                }
                tables.push((classes, vals));
            }
        }
        for (ca, a) in &tables {
            let self_ip = inner_product(ca, a, a).unwrap().to_integer().expect("integer self product");
            assert!(self_ip >= 1);
            for (_, b) in &tables {
                assert!(inner_product(ca, a, b).unwrap().is_rational_integer());
            }
        }
    }
}
