use std::hint::black_box;

use cqec_core::correlators::{BankInit, CorrelatorBank, FilterParams};
use cqec_core::decoder::{run_protocol, ProtocolConfig, Thresholds};
use cqec_core::trajectory_engine::{
    step_density, step_pure, ErrorModel, GaugeVector, MeasurementParams,
};
use criterion::{criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn steps(c: &mut Criterion) {
    let params = MeasurementParams::new(1.0, 1.0, 0.01).unwrap();
    let mixed = MeasurementParams::new(1.0, 0.5, 0.01).unwrap();
    let dw = [
        0.03, -0.05, 0.01, 0.02, -0.04, 0.06, -0.01, 0.0, 0.05, -0.02, 0.03, -0.06,
    ];

    let mut psi = GaugeVector::basis(0);
    c.bench_function("step_pure", |b| {
        b.iter(|| step_pure(black_box(&mut psi), &params, black_box(&dw)).unwrap())
    });

    let mut rho = GaugeVector::basis(0).to_density();
    c.bench_function("step_density", |b| {
        b.iter(|| step_density(black_box(&mut rho), &mixed, black_box(&dw)).unwrap())
    });

    let filter = FilterParams::new(0.25, 30.0).unwrap();
    let mut bank = CorrelatorBank::new(filter, 1.0, BankInit::FixedPoint, &[1.0; 12]);
    c.bench_function("correlator_update", |b| {
        b.iter(|| bank.update(black_box(&dw), 0.01))
    });
}

fn protocol(c: &mut Criterion) {
    let params = MeasurementParams::new(1.0, 1.0, 0.01).unwrap();
    let cfg = ProtocolConfig::new(
        params,
        ErrorModel::depolarizing(3e-4),
        FilterParams::new(0.25, 30.0).unwrap(),
        Thresholds::new(0.44, 1.56).unwrap(),
        10.0,
    );
    let mut seed = 0u64;
    c.bench_function("protocol_1000_steps", |b| {
        b.iter(|| {
            seed += 1;
            run_protocol(
                &cfg,
                ChaCha8Rng::seed_from_u64(seed),
                ChaCha8Rng::seed_from_u64(!seed),
            )
            .unwrap()
        })
    });
}

criterion_group!(benches, steps, protocol);
criterion_main!(benches);
