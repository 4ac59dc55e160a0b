//! Randomized algebraic laws: field and cyclotomic arithmetic, torus
//! characters, partitions and Kostka-Foulkes polynomials.

use dlp_core::ffield::{Cyclotomic, Field};
use dlp_core::green::{kostka_foulkes, partitions, ssyt, Partition};
use dlp_core::tori::TorusCharacter;
use proptest::prelude::*;

const FIELDS: [(u32, u32); 8] = [(2, 1), (2, 3), (2, 6), (3, 2), (3, 4), (5, 2), (7, 1), (2, 12)];

/// (field index, three element codes)
fn field_and_elems() -> impl Strategy<Value = (usize, u32, u32, u32)> {
    (0..FIELDS.len()).prop_flat_map(|i| {
        let (p, k) = FIELDS[i];
        let n = p.pow(k);
        (Just(i), 0..n, 0..n, 0..n)
    })
}

fn field(i: usize) -> std::sync::Arc<Field> {
    Field::get(FIELDS[i].0, FIELDS[i].1).unwrap()
}

proptest! {
    #[test]
    fn field_axioms((i, a, b, c) in field_and_elems()) {
        let f = field(i);
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
    }

    #[test]
    fn frobenius_is_additive_and_multiplicative((i, a, b, _) in field_and_elems()) {
        let f = field(i);
        let p = f.p() as u64;
        let fr = |x| f.frobenius(x, p).unwrap();
        prop_assert_eq!(fr(f.add(a, b)), f.add(fr(a), fr(b)));
        prop_assert_eq!(fr(f.mul(a, b)), f.mul(fr(a), fr(b)));
        prop_assert_eq!(fr(a), f.pow(a, p as i64));
    }

    #[test]
    fn cyclotomic_ring_laws(
        n in prop::sample::select(vec![1u32, 2, 3, 4, 6, 8, 9, 12, 15]),
        xs in prop::collection::vec(-3i128..4, 15),
        ys in prop::collection::vec(-3i128..4, 15),
        zs in prop::collection::vec(-3i128..4, 15),
    ) {
        let mk = |v: &[i128]| Cyclotomic::from_exponent_counts(n, &v[..n as usize]).unwrap();
        let (x, y, z) = (mk(&xs), mk(&ys), mk(&zs));
        prop_assert_eq!(x.add(&y).unwrap(), y.add(&x).unwrap());
        prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
        prop_assert_eq!(
            x.mul(&y.add(&z).unwrap()).unwrap(),
            x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap()
        );
        prop_assert!(x.sub(&x).unwrap().is_zero());
        prop_assert_eq!(x.conj().conj(), x.clone());
        // x·conj(x) is real, so it equals its conjugate
        let nx = x.mul(&x.conj()).unwrap();
        prop_assert_eq!(nx.conj(), nx);
    }

    #[test]
    fn roots_mix_across_conductors(a in 0i64..12, b in 0i64..18) {
        let x = Cyclotomic::root(12, a).unwrap();
        let y = Cyclotomic::root(18, b).unwrap();
        let prod = x.mul(&y).unwrap();
        prop_assert!(prod.is_root_of_unity());
        prop_assert_eq!(prod, Cyclotomic::root(36, 3 * a + 2 * b).unwrap());
    }

    #[test]
    fn character_orthogonality(orders in prop::collection::vec(1u64..8, 1..4), seed in any::<u64>()) {
        prop_assume!(orders.iter().product::<u64>() <= 200);
        let pick = |s: u64| -> Vec<u64> { orders.iter().enumerate().map(|(i, &m)| (s >> (8 * i)) % m).collect() };
        let chi = TorusCharacter::new(orders.clone(), pick(seed)).unwrap();
        let psi = TorusCharacter::new(orders.clone(), pick(seed.rotate_left(17))).unwrap();
        let prod = chi.mul(&psi.inverse()).unwrap();
        let mut sum: Option<Cyclotomic> = None;
        let mut coords = vec![0u64; orders.len()];
        loop {
            let v = prod.evaluate(&coords).unwrap();
            sum = Some(match sum { None => v, Some(s) => s.add(&v).unwrap() });
            let mut i = 0;
            while i < coords.len() {
                coords[i] += 1;
                if coords[i] < orders[i] { break; }
                coords[i] = 0;
                i += 1;
            }
            if i == coords.len() { break; }
        }
        let order = orders.iter().product::<u64>() as i128;
        let expected = if chi == psi { order } else { 0 };
        prop_assert_eq!(sum.unwrap().to_integer(), Some(expected));
    }

    #[test]
    fn conjugate_partition_is_an_involution(n in 1u32..9, i in any::<prop::sample::Index>()) {
        let ps = partitions(n);
        let l = &ps[i.index(ps.len())];
        prop_assert_eq!(&l.conjugate().conjugate(), l);
        prop_assert_eq!(l.conjugate().size(), n);
        // dominance reverses under conjugation
        for m in &ps {
            prop_assert_eq!(l.dominated_by(m), m.conjugate().dominated_by(&l.conjugate()));
        }
    }
}

#[test]
fn kostka_foulkes_at_one_counts_tableaux() {
    for n in 1..=5 {
        for lambda in partitions(n) {
            for mu in partitions(n) {
                let k = kostka_foulkes(&lambda, &mu).unwrap();
                assert_eq!(k.eval(1), ssyt(&lambda, mu.parts()).len() as i128, "K_{lambda},{mu}");
            }
        }
    }
}

#[test]
fn kostka_foulkes_diagonal_is_one() {
    for n in 1..=6 {
        for lambda in partitions(n) {
            assert_eq!(kostka_foulkes(&lambda, &lambda).unwrap().0, vec![1]);
        }
    }
    let single = Partition::new(vec![4]);
    // K_{(n),μ}(t) = t^{n(μ)}
    for mu in partitions(4) {
        let k = kostka_foulkes(&single, &mu).unwrap();
        assert_eq!(k.eval(2), 1 << mu.n_stat());
    }
}

#[test]
fn fixed_field_sizes() {
    for (p, k) in FIELDS {
        let f = Field::get(p, k).unwrap();
        for d in 1..=k {
            if k % d != 0 {
                continue;
            }
            let q = (p as u64).pow(d);
            let fixed = (0..f.size()).filter(|&a| f.frobenius(a, q).unwrap() == a).count() as u64;
            assert_eq!(fixed, q, "GF({p}^{k}) fixed by x -> x^{q}");
        }
    }
}
