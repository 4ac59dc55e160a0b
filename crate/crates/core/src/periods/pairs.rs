//! Catalog of spherical pairs `H ⊂ G` with explicit embeddings.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{conjugacy_classes, Context, Factor, Family, Group, GroupElement, GroupSpec, Mat};

/// Pair family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PairKind {
    /// `GL_2 ⊃ B`.
    ParabolicGl2,
    /// `GL_3 ⊃ B`.
    ParabolicGl3Borel,
    /// `GL_3 ⊃ P_{(2,1)}`, block upper triangular.
    ParabolicGl3Block21,
    /// `GL_2 ⊃` diagonal torus.
    DiagTorusGl2,
    /// `GL_n ⊂ GL_n × GL_{n+1}`, `g ↦ (g, diag(g, 1))`.
    BesselGl(usize),
    /// `U_n ⊂ U_n × U_{n+1}`, `g ↦ (g, diag(g, 1))`.
    BesselU(usize),
    /// `U_2 × U_2 ⊂ U_4 × U_2`, `(g_1, g_2) ↦ (diag(g_1, g_2), g_1)`.
    U4xU2,
    /// `H = G = GL_1`.
    TrivialGl1,
}

impl PairKind {
    pub const ALL: [PairKind; 10] = [
        PairKind::ParabolicGl2,
        PairKind::ParabolicGl3Borel,
        PairKind::ParabolicGl3Block21,
        PairKind::DiagTorusGl2,
        PairKind::BesselGl(1),
        PairKind::BesselGl(2),
        PairKind::BesselU(1),
        PairKind::BesselU(2),
        PairKind::U4xU2,
        PairKind::TrivialGl1,
    ];

    pub fn id(&self) -> String {
        match self {
            PairKind::ParabolicGl2 => "parabolic-gl2".into(),
            PairKind::ParabolicGl3Borel => "parabolic-gl3-borel".into(),
            PairKind::ParabolicGl3Block21 => "parabolic-gl3-21".into(),
            PairKind::DiagTorusGl2 => "diag-torus-gl2".into(),
            PairKind::BesselGl(1) => "diag-gl1".into(),
            PairKind::BesselGl(n) => format!("bessel-gl{n}"),
            PairKind::BesselU(n) => format!("bessel-u{n}"),
            PairKind::U4xU2 => "u4xu2".into(),
            PairKind::TrivialGl1 => "trivial-gl1".into(),
        }
    }

    /// Ambient group factors.
    pub fn g_factors(&self) -> Vec<Factor> {
        let f = |family, n| Factor { family, n };
        match *self {
            PairKind::ParabolicGl2 | PairKind::DiagTorusGl2 => vec![f(Family::GL, 2)],
            PairKind::ParabolicGl3Borel | PairKind::ParabolicGl3Block21 => vec![f(Family::GL, 3)],
            PairKind::BesselGl(n) => vec![f(Family::GL, n), f(Family::GL, n + 1)],
            PairKind::BesselU(n) => vec![f(Family::U, n), f(Family::U, n + 1)],
            PairKind::U4xU2 => vec![f(Family::U, 4), f(Family::U, 2)],
            PairKind::TrivialGl1 => vec![f(Family::GL, 1)],
        }
    }

    /// Factors of H when H is reductive and given by its own group spec.
    fn h_factors(&self) -> Option<Vec<Factor>> {
        let f = |family, n| Factor { family, n };
        match *self {
            PairKind::BesselGl(n) => Some(vec![f(Family::GL, n)]),
            PairKind::BesselU(n) => Some(vec![f(Family::U, n)]),
            PairKind::U4xU2 => Some(vec![f(Family::U, 2), f(Family::U, 2)]),
            PairKind::TrivialGl1 => Some(vec![f(Family::GL, 1)]),
            _ => None,
        }
    }

    /// Default progression gap for ν-scans.
    pub fn default_gap(&self) -> u32 {
        match self {
            PairKind::U4xU2 => 12,
            _ => 1,
        }
    }

    /// Short description of H.
    pub fn describe(&self) -> &'static str {
        match self {
            PairKind::ParabolicGl2 => "Borel subgroup of GL_2 (upper triangular)",
            PairKind::ParabolicGl3Borel => "Borel subgroup of GL_3 (upper triangular)",
            PairKind::ParabolicGl3Block21 => "parabolic of GL_3 with Levi GL_2 x GL_1",
            PairKind::DiagTorusGl2 => "diagonal torus of GL_2 (fixed points of conjugation by diag(1,-1))",
            PairKind::BesselGl(_) => "GL_n in GL_n x GL_(n+1) via g -> (g, diag(g,1))",
            PairKind::BesselU(_) => "U_n in U_n x U_(n+1) via g -> (g, diag(g,1))",
            PairKind::U4xU2 => "U_2 x U_2 in U_4 x U_2 via (g1,g2) -> (diag(g1,g2), g1)",
            PairKind::TrivialGl1 => "H = G = GL_1",
        }
    }
}

impl fmt::Display for PairKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

impl FromStr for PairKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let k = match s.as_str() {
            "parabolic-gl2" => PairKind::ParabolicGl2,
            "parabolic-gl3-borel" | "parabolic-gl3" => PairKind::ParabolicGl3Borel,
            "parabolic-gl3-21" => PairKind::ParabolicGl3Block21,
            "diag-torus-gl2" | "symmetric-gl2" => PairKind::DiagTorusGl2,
            "diag-gl1" | "bessel-gl1" => PairKind::BesselGl(1),
            "bessel-gl2" => PairKind::BesselGl(2),
            "bessel-u1" => PairKind::BesselU(1),
            "bessel-u2" => PairKind::BesselU(2),
            "u4xu2" => PairKind::U4xU2,
            "trivial-gl1" => PairKind::TrivialGl1,
            _ => return Err(Error::UnknownId(s)),
        };
        Ok(k)
    }
}

/// A pair at a fixed q.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SphericalPair {
    pub kind: PairKind,
    pub q: u64,
}

/// `H^{F^ν}` inside `G^{F^ν}`.
#[derive(Debug)]
pub struct PairLevel {
    pub group: Arc<Group>,
    /// H-conjugacy classes as (image in G, class size).
    pub h_classes: Vec<(GroupElement, u64)>,
    pub h_order: u64,
}

impl SphericalPair {
    pub fn new(kind: PairKind, q: u64) -> Result<Self> {
        let p = SphericalPair { kind, q };
        p.g_spec()?;
        Ok(p)
    }

    pub fn id(&self) -> String {
        self.kind.id()
    }

    pub fn g_spec(&self) -> Result<GroupSpec> {
        GroupSpec::new(self.kind.g_factors(), self.q)
    }

    pub fn h_spec(&self) -> Option<GroupSpec> {
        self.kind.h_factors().map(|f| GroupSpec { factors: f, q: self.q, nu: 1 })
    }

    /// Image of an H element under the embedding (reductive H only).
    pub fn embed(&self, h: &GroupElement) -> Result<GroupElement> {
        let b = &h.blocks;
        let diag1 = |m: &Mat| Mat::block_diag(&[m.clone(), Mat::identity(1)]);
        Ok(match self.kind {
            PairKind::BesselGl(_) | PairKind::BesselU(_) => GroupElement { blocks: vec![b[0].clone(), diag1(&b[0])] },
            PairKind::U4xU2 => GroupElement { blocks: vec![Mat::block_diag(&[b[0].clone(), b[1].clone()]), b[0].clone()] },
            PairKind::TrivialGl1 => h.clone(),
            _ => return Err(Error::Unsupported(format!("{} has no reductive H spec", self.kind))),
        })
    }

    /// Membership test for the non-reductive H.
    fn in_h(&self, g: &GroupElement) -> bool {
        let m = &g.blocks[0];
        match self.kind {
            PairKind::ParabolicGl2 | PairKind::ParabolicGl3Borel => {
                (0..m.n).all(|i| (0..i).all(|j| m.get(i, j) == 0))
            }
            PairKind::ParabolicGl3Block21 => m.get(2, 0) == 0 && m.get(2, 1) == 0,
            PairKind::DiagTorusGl2 => m.get(0, 1) == 0 && m.get(1, 0) == 0,
            _ => false,
        }
    }

    /// Universe context for G and H at level ν (and level 1).
    pub fn context(&self, nu: u32) -> Result<Arc<Context>> {
        let g = self.g_spec()?;
        Context::for_specs(&[g.clone(), g.at_level(nu)])
    }

    /// `G^{F^ν}` and the H-classes of `H^{F^ν}` mapped into it.
    pub fn level(&self, nu: u32) -> Result<PairLevel> {
        let ctx = self.context(nu)?;
        let group = Arc::new(Group::new(self.g_spec()?.at_level(nu), ctx.clone())?);
        let (h_classes, h_order) = match self.h_spec() {
            Some(hs) => {
                let hg = Group::new(hs.at_level(nu), ctx)?;
                let classes = conjugacy_classes(&hg)?;
                let order = hg.order() as u64;
                let mut out = Vec::with_capacity(classes.len());
                for c in classes {
                    let img = self.embed(&c.rep)?;
                    debug_assert!(group.contains(&img));
                    out.push((img, c.size));
                }
                (out, order)
            }
            None => {
                let els: Vec<GroupElement> = group.elements()?.iter().filter(|g| self.in_h(g)).cloned().collect();
                let order = els.len() as u64;
                (classes_of_subgroup(&group, &els), order)
            }
        };
        let total: u64 = h_classes.iter().map(|c| c.1).sum();
        if total != h_order {
            return Err(Error::Assertion(format!("H-classes of {} do not partition H", self.kind)));
        }
        Ok(PairLevel { group, h_classes, h_order })
    }

    /// All elements of `H^{F^ν}` as elements of G.
    pub fn h_elements(&self, level: &PairLevel, nu: u32) -> Result<Vec<GroupElement>> {
        match self.h_spec() {
            Some(hs) => {
                let hg = Group::new(hs.at_level(nu), level.group.ctx().clone())?;
                hg.elements()?.iter().map(|h| self.embed(h)).collect()
            }
            None => Ok(level.group.elements()?.iter().filter(|g| self.in_h(g)).cloned().collect()),
        }
    }
}

/// Conjugacy classes of a subgroup given by its element list.
pub fn classes_of_subgroup(group: &Group, els: &[GroupElement]) -> Vec<(GroupElement, u64)> {
    let inv: Vec<GroupElement> = els.iter().map(|x| group.inv(x)).collect();
    let mut seen: HashSet<&GroupElement> = HashSet::new();
    let index: HashMap<&GroupElement, usize> = els.iter().enumerate().map(|(k, e)| (e, k)).collect();
    let mut out = Vec::new();
    for g in els {
        if seen.contains(g) {
            continue;
        }
        let mut orbit = HashSet::new();
        for (x, xi) in els.iter().zip(&inv) {
            let c = group.mul(xi, &group.mul(g, x));
            orbit.insert(index[&c]);
        }
        for &k in &orbit {
            seen.insert(&els[k]);
        }
        out.push((g.clone(), orbit.len() as u64));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for k in PairKind::ALL {
            assert_eq!(k.id().parse::<PairKind>().unwrap(), k);
        }
        assert_eq!("bessel-gl1".parse::<PairKind>().unwrap(), PairKind::BesselGl(1));
        assert!("nope".parse::<PairKind>().is_err());
    }

    #[test]
    fn h_orders() {
        let cases = [
            (PairKind::ParabolicGl2, 3, 2 * 2 * 3),
            (PairKind::ParabolicGl3Block21, 2, 6 * 4),
            (PairKind::DiagTorusGl2, 5, 16),
            (PairKind::BesselGl(1), 3, 2),
            (PairKind::U4xU2, 2, 18 * 18),
        ];
        for (k, q, order) in cases {
            let p = SphericalPair::new(k, q).unwrap();
            let l = p.level(1).unwrap();
            assert_eq!(l.h_order, order, "{k}");
        }
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let p = SphericalPair::new(PairKind::U4xU2, 2).unwrap();
        let l = p.level(1).unwrap();
        let hg = Group::new(p.h_spec().unwrap(), l.group.ctx().clone()).unwrap();
        let els = hg.elements().unwrap();
        for x in els.iter().step_by(7) {
            for y in els.iter().step_by(11) {
                let lhs = p.embed(&hg.mul(x, y)).unwrap();
                let rhs = l.group.mul(&p.embed(x).unwrap(), &p.embed(y).unwrap());
                assert_eq!(lhs, rhs);
                assert!(l.group.contains(&lhs));
            }
        }
        let imgs: HashSet<GroupElement> = els.iter().map(|h| p.embed(h).unwrap()).collect();
        assert_eq!(imgs.len(), els.len());
    }
}
