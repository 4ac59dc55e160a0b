use criterion::{black_box, criterion_group, criterion_main, Criterion};

use dlp_core::dlchar::{dl_table, DLSpec};
use dlp_core::ffield::{Cyclotomic, Field};
use dlp_core::green::{GreenTable, Partition};
use dlp_core::groups::{Factor, Family, GroupSpec};
use dlp_core::periods::{FrobRecData, PairKind, PeriodData, SphericalPair};
use dlp_core::tori::characters;

fn field_arith(c: &mut Criterion) {
    let f = Field::get(2, 12).unwrap();
    c.bench_function("gf4096 mul+add sweep", |b| {
        b.iter(|| {
            let mut acc = 1;
            for a in 1..f.size() {
                acc = f.add(f.mul(acc, a), a);
            }
            black_box(acc)
        })
    });
}

fn cyclotomic(c: &mut Criterion) {
    let x = Cyclotomic::from_exponent_counts(36, &(0..36).map(|i| (i % 5) as i128 - 2).collect::<Vec<_>>()).unwrap();
    let y = Cyclotomic::root(12, 5).unwrap().add(&Cyclotomic::root(9, 2).unwrap()).unwrap();
    c.bench_function("cyclotomic mul conductor 36", |b| b.iter(|| black_box(x.mul(&y).unwrap())));
}

fn green(c: &mut Criterion) {
    c.bench_function("green table GL5", |b| b.iter(|| black_box(GreenTable::generate(Family::GL, 5).unwrap())));
}

fn dl(c: &mut Criterion) {
    let spec = GroupSpec::new(vec![Factor { family: Family::U, n: 3 }], 2).unwrap();
    let t = [Partition::new(vec![2, 1])];
    let dl = DLSpec::new(&spec, &t, vec![1, 2], 1).unwrap();
    c.bench_function("dl table U3(2) T(2,1)", |b| b.iter(|| black_box(dl_table(&dl).unwrap())));
}

fn periods(c: &mut Criterion) {
    let mut g = c.benchmark_group("periods");
    g.sample_size(10);
    let pair = SphericalPair::new(PairKind::U4xU2, 2).unwrap();
    let t = [Partition::new(vec![3, 1]), Partition::new(vec![1, 1])];
    let level = pair.level(1).unwrap();
    g.bench_function("u4xu2 q=2 T(3,1)x(1,1) summation data", |b| {
        b.iter(|| black_box(PeriodData::compute(&pair, &t, 1, &level).unwrap()))
    });
    let data = PeriodData::compute(&pair, &t, 1, &level).unwrap();
    let chis = characters(&data.torus.orders()).unwrap();
    g.bench_function("u4xu2 q=2 T(3,1)x(1,1) all 243 characters", |b| {
        b.iter(|| chis.iter().map(|chi| data.value(chi).unwrap()).sum::<i128>())
    });
    let pair = SphericalPair::new(PairKind::ParabolicGl2, 3).unwrap();
    let t = [Partition::new(vec![2])];
    g.bench_function("parabolic-gl2 q=3 reciprocity route", |b| {
        b.iter(|| black_box(FrobRecData::compute(&pair, &t, 1).unwrap()))
    });
    g.finish();
}

criterion_group!(benches, field_arith, cyclotomic, green, dl, periods);
criterion_main!(benches);
