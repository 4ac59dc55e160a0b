//! Closed-form period formulas: parabolic fixed-point counts, the two
//! U4×U2 statements, the symmetric-pair orbit sum, and a data-driven
//! signed component sum.

mod omega;

pub use omega::{
    component_average, component_points, emmain_rhs, pair_torus, symmetric_formula, Catalog, CatalogEntry,
    FormulaResult, OmegaDatum, OmegaTerm, pattern_sigma, SymmetricEntry, SymmetricOrbit, CATALOG_VERSION,
};

use crate::error::{Error, Result};
use crate::green::Partition;
use crate::periods::{PairKind, SphericalPair};
use crate::tori::TorusCharacter;

/// Block sizes of the parabolic in a parabolic pair.
fn parabolic_blocks(kind: PairKind) -> Option<&'static [u32]> {
    match kind {
        PairKind::ParabolicGl2 => Some(&[1, 1]),
        PairKind::ParabolicGl3Borel => Some(&[1, 1, 1]),
        PairKind::ParabolicGl3Block21 => Some(&[2, 1]),
        _ => None,
    }
}

/// Number of cosets `v W_P` fixed by `w`, where `w` has cycle type `lambda`:
/// assignments of the (labelled) cycles of `w` to the blocks of `P` that
/// fill every block exactly.
pub fn twisted_fixed_count(lambda: &Partition, blocks: &[u32]) -> u64 {
    fn go(cycles: &[u32], room: &mut Vec<u32>) -> u64 {
        let Some((&c, rest)) = cycles.split_first() else {
            return room.iter().all(|&r| r == 0) as u64;
        };
        let mut n = 0;
        for b in 0..room.len() {
            if room[b] >= c {
                room[b] -= c;
                n += go(rest, room);
                room[b] += c;
            }
        }
        n
    }
    go(lambda.parts(), &mut blocks.to_vec())
}

/// 0 for nontrivial χ, otherwise the number of rational parabolics of the
/// given type containing T.
pub fn parabolic_formula(kind: PairKind, torus: &Partition, chi: &TorusCharacter) -> Result<i128> {
    let blocks = parabolic_blocks(kind).ok_or_else(|| Error::Unsupported(format!("{kind} is not parabolic")))?;
    if torus.size() != blocks.iter().sum::<u32>() {
        return Err(Error::Invalid(format!("torus {torus} does not fit {kind}")));
    }
    if !chi.is_trivial() {
        return Ok(0);
    }
    Ok(twisted_fixed_count(torus, blocks) as i128)
}

/// Which U4×U2 statement to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum U4U2Case {
    /// Six characters of `U_1(F_q)` on `U_1^4 × U_1^2`.
    Six,
    /// `(θ_1, θ_2, θ_3)` on `C_{q+1}` and `θ_4` on `C_{q^3+1}`.
    Four,
}

/// The U4×U2 closed forms.
///
/// `Four` takes exponents in the order `[θ_4, θ_1, θ_2, θ_3]` (the coordinate
/// order of the torus class `(3,1) × (1,1)`) and returns −1 iff θ_1 is
/// nontrivial and θ_1θ_2θ_3η_4 = 1, where η_4 is θ_4 restricted to `C_{q+1}`.
///
/// `Six` returns `Some(-1)` when the three sufficient conditions hold and
/// `None` otherwise.
pub fn u4u2_formula(case: U4U2Case, q: u64, exps: &[u64]) -> Result<Option<i128>> {
    let m = q + 1;
    match case {
        U4U2Case::Four => {
            let [t4, t1, t2, t3] = exps else {
                return Err(Error::Invalid(format!("expected 4 exponents, got {}", exps.len())));
            };
            let eta4 = t4 % m;
            let prod = (t1 + t2 + t3 + eta4) % m;
            Ok(Some(if t1 % m != 0 && prod == 0 { -1 } else { 0 }))
        }
        U4U2Case::Six => {
            if exps.len() != 6 {
                return Err(Error::Invalid(format!("expected 6 exponents, got {}", exps.len())));
            }
            let c: Vec<u64> = exps.iter().map(|e| e % m).collect();
            let product_one = c.iter().sum::<u64>() % m == 0;
            let nontrivial = c[..4].iter().all(|&x| x != 0);
            let triples = (0..4).all(|i| (i + 1..4).all(|j| (4..6).all(|k| (c[i] + c[j] + c[k]) % m != 0)));
            Ok((product_one && nontrivial && triples).then_some(-1))
        }
    }
}

fn is_cor_torus(classes: &[Partition], first: &[u32]) -> bool {
    classes.len() == 2 && classes[0].parts() == first && classes[1].parts() == [1, 1]
}

/// Formula-side value for a catalog pair at ν = 1, or `None` when no
/// closed form or verified catalog entry covers the instance.
pub fn formula_value(pair: &SphericalPair, classes: &[Partition], chi: &TorusCharacter) -> Result<Option<i128>> {
    let kind = pair.kind;
    if parabolic_blocks(kind).is_some() {
        return parabolic_formula(kind, &classes[0], chi).map(Some);
    }
    match kind {
        PairKind::DiagTorusGl2 => return symmetric_formula(pair, classes, chi).map(|r| Some(r.value)),
        PairKind::U4xU2 if is_cor_torus(classes, &[3, 1]) => {
            return u4u2_formula(U4U2Case::Four, pair.q, &chi.exps);
        }
        PairKind::U4xU2 if is_cor_torus(classes, &[1, 1, 1, 1]) => {
            if let Some(v) = u4u2_formula(U4U2Case::Six, pair.q, &chi.exps)? {
                return Ok(Some(v));
            }
        }
        _ => {}
    }
    match Catalog::builtin().find(&pair.id(), classes) {
        Some(e) if e.is_verified() => Ok(Some(emmain_rhs(pair, classes, chi, e.sigma_t, &e.omega)?.value)),
        _ => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_counts() {
        let p = |v: Vec<u32>| Partition::new(v);
        assert_eq!(twisted_fixed_count(&p(vec![1, 1]), &[1, 1]), 2);
        assert_eq!(twisted_fixed_count(&p(vec![2]), &[1, 1]), 0);
        assert_eq!(twisted_fixed_count(&p(vec![1, 1, 1]), &[1, 1, 1]), 6);
        assert_eq!(twisted_fixed_count(&p(vec![2, 1]), &[1, 1, 1]), 0);
        assert_eq!(twisted_fixed_count(&p(vec![1, 1, 1]), &[2, 1]), 3);
        assert_eq!(twisted_fixed_count(&p(vec![2, 1]), &[2, 1]), 1);
        assert_eq!(twisted_fixed_count(&p(vec![3]), &[2, 1]), 0);
    }

    #[test]
    fn four_character_dichotomy() {
        // q = 2: θ_1 = ω, θ_4 = 1 on C_9, θ_2θ_3 = ω²
        assert_eq!(u4u2_formula(U4U2Case::Four, 2, &[0, 1, 1, 1]).unwrap(), Some(-1));
        assert_eq!(u4u2_formula(U4U2Case::Four, 2, &[0, 0, 0, 0]).unwrap(), Some(0));
        // η_4 picks up θ_4 mod 3
        assert_eq!(u4u2_formula(U4U2Case::Four, 2, &[4, 1, 1, 0]).unwrap(), Some(-1));
    }

    #[test]
    fn six_character_conditions() {
        assert_eq!(u4u2_formula(U4U2Case::Six, 2, &[1, 1, 1, 1, 0, 2]).unwrap(), Some(-1));
        assert_eq!(u4u2_formula(U4U2Case::Six, 2, &[0, 0, 0, 0, 0, 0]).unwrap(), None);
    }

    #[test]
    fn catalog_agrees_with_parabolic_counts() {
        for kind in [PairKind::ParabolicGl2, PairKind::ParabolicGl3Borel, PairKind::ParabolicGl3Block21] {
            let pair = SphericalPair::new(kind, 2).unwrap();
            let n = parabolic_blocks(kind).unwrap().iter().sum::<u32>();
            for t in crate::green::partitions(n) {
                let entry = Catalog::builtin().find(&pair.id(), std::slice::from_ref(&t)).unwrap();
                let torus = pair_torus(&pair, std::slice::from_ref(&t)).unwrap();
                for chi in crate::tori::characters(&torus.orders()).unwrap() {
                    let a = emmain_rhs(&pair, std::slice::from_ref(&t), &chi, entry.sigma_t, &entry.omega).unwrap();
                    assert_eq!(a.value, parabolic_formula(kind, &t, &chi).unwrap(), "{kind} {t} {chi}");
                }
            }
        }
    }
}
