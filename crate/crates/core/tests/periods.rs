//! Periods against their closed forms, across routes and along ν.

use dlp_core::formulas::{formula_value, Catalog};
use dlp_core::green::{partitions, Partition};
use dlp_core::periods::{default_gap, period_scan, FrobRecData, PairKind, PeriodData, SphericalPair};
use dlp_core::tori::characters;

fn tori(pair: &SphericalPair) -> Vec<Vec<Partition>> {
    let mut out: Vec<Vec<Partition>> = vec![vec![]];
    for f in pair.g_spec().unwrap().factors {
        out = out
            .into_iter()
            .flat_map(|t| {
                partitions(f.n as u32).into_iter().map(move |c| {
                    let mut v = t.clone();
                    v.push(c);
                    v
                })
            })
            .collect();
    }
    out
}

#[test]
fn formulas_match_direct_summation() {
    for q in [2, 3] {
        for kind in PairKind::ALL {
            if kind == PairKind::U4xU2 && q > 2 {
                continue;
            }
            let pair = SphericalPair::new(kind, q).unwrap();
            for t in tori(&pair) {
                let data = PeriodData::get(&pair, &t, 1).unwrap();
                for chi in characters(&data.torus.orders()).unwrap() {
                    let v = data.value(&chi).unwrap();
                    if let Some(f) = formula_value(&pair, &t, &chi).unwrap() {
                        assert_eq!(v, f, "{kind} q={q} {t:?} {chi}");
                    }
                }
            }
        }
    }
}

#[test]
fn every_non_u4xu2_instance_has_a_formula() {
    for kind in PairKind::ALL.into_iter().filter(|&k| k != PairKind::U4xU2) {
        let pair = SphericalPair::new(kind, 2).unwrap();
        for t in tori(&pair) {
            let data = PeriodData::get(&pair, &t, 1).unwrap();
            for chi in characters(&data.torus.orders()).unwrap() {
                assert!(formula_value(&pair, &t, &chi).unwrap().is_some(), "{kind} {t:?} {chi}");
            }
        }
    }
}

/// With trivial χ every component average is 1, so the value is the signed
/// count of components.
#[test]
fn trivial_character_gives_signed_component_count() {
    let cat = Catalog::builtin();
    for e in &cat.entry {
        if !e.is_verified() {
            continue;
        }
        let kind: PairKind = e.pair.parse().unwrap();
        let pair = SphericalPair::new(kind, 2).unwrap();
        let t: Vec<Partition> = e.torus.iter().map(|s| s.parse().unwrap()).collect();
        let data = PeriodData::get(&pair, &t, 1).unwrap();
        let chi = data.character(&vec![0; data.torus.orders().len()]).unwrap();
        let signed: i128 = e
            .omega
            .iter()
            .map(|w| {
                let s = if (w.sigma + e.sigma_t) % 2 == 0 { 1 } else { -1 };
                s * w.count as i128
            })
            .sum();
        assert_eq!(data.value(&chi).unwrap(), signed, "{} {:?}", e.pair, e.torus);
    }
}

#[test]
fn reciprocity_route_agrees_at_q3() {
    for kind in [PairKind::BesselU(1), PairKind::ParabolicGl3Block21, PairKind::TrivialGl1] {
        let pair = SphericalPair::new(kind, 3).unwrap();
        for t in tori(&pair) {
            let data = PeriodData::get(&pair, &t, 1).unwrap();
            let fr = FrobRecData::compute(&pair, &t, 1).unwrap();
            for chi in characters(&data.torus.orders()).unwrap() {
                assert_eq!(data.value(&chi).unwrap(), fr.value(&chi).unwrap(), "{kind} {t:?} {chi}");
            }
        }
    }
}

#[test]
fn scans_are_constant_on_default_progressions() {
    for kind in [PairKind::TrivialGl1, PairKind::BesselGl(1), PairKind::BesselU(1), PairKind::ParabolicGl2, PairKind::DiagTorusGl2] {
        let pair = SphericalPair::new(kind, 2).unwrap();
        for t in tori(&pair) {
            let gap = default_gap(&pair, &t).unwrap();
            let nus: Vec<u32> = (0..3).map(|k| 1 + k * gap).filter(|&nu| nu <= 4).collect();
            let data = PeriodData::get(&pair, &t, 1).unwrap();
            for chi in characters(&data.torus.orders()).unwrap() {
                let s = period_scan(&pair, &t, &chi.exps, &nus, None).unwrap();
                assert!(s.constant, "{kind} {t:?} {chi}: {:?}", s.reports.iter().map(|r| r.value).collect::<Vec<_>>());
            }
        }
    }
}

#[test]
fn default_gaps_follow_splitting_degree() {
    let pair = SphericalPair::new(PairKind::BesselU(1), 2).unwrap();
    assert_eq!(default_gap(&pair, &["1".parse().unwrap(), "2".parse().unwrap()]).unwrap(), 2);
    assert_eq!(default_gap(&pair, &["1".parse().unwrap(), "1,1".parse().unwrap()]).unwrap(), 2);
    let pair = SphericalPair::new(PairKind::ParabolicGl2, 2).unwrap();
    assert_eq!(default_gap(&pair, &["1,1".parse().unwrap()]).unwrap(), 1);
    let pair = SphericalPair::new(PairKind::U4xU2, 2).unwrap();
    assert_eq!(default_gap(&pair, &["3,1".parse().unwrap(), "1,1".parse().unwrap()]).unwrap(), 12);
}
