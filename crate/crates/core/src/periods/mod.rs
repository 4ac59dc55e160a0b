//! Spherical pairs, brute-force periods and their asymptotics in ν.

mod compute;
mod geomtype;
mod pairs;

pub use compute::{
    integrality_counters, jordan_sum_check, default_gap, period_bruteforce, period_frobrec, period_scan, FrobRecData, PeriodData, PeriodReport,
    SClassTerm, ScanReport, TermReport, G_CAP, H_CAP,
};
pub use geomtype::{char_sum_ratio, CharSumReport, GeomTypeFn, Tower};
pub use pairs::{classes_of_subgroup, PairKind, PairLevel, SphericalPair};
