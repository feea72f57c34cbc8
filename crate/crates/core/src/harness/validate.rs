//! Self-validation: golden tables, enumeration, dual implementations and
//! the reduced-vs-full-space oracle, one pass/fail row per item.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::config::ValidateSettings;
use crate::analytics::{
    cont_rates_large_tc, cont_rates_large_tc_enumerated, discrete_rates,
    discrete_rates_transcribed, erfc,
};
use crate::code_algebra::{
    build_code_basis, enumerate_harmful_pairs, self_check, Logical, SubspaceIndex,
};
use crate::decoder::{DecoderState, Thresholds};
use crate::pauli::PauliOperator;
use crate::trajectory_engine::{compare_with_reduced, step_count, ErrorModel, MeasurementParams};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRow {
    pub item: String,
    pub passed: bool,
    pub detail: String,
}

fn check(item: &str, passed: bool, detail: impl Into<String>) -> CheckRow {
    let row = CheckRow {
        item: item.to_string(),
        passed,
        detail: detail.into(),
    };
    eprintln!(
        "{} {}: {}",
        if passed { "PASS" } else { "FAIL" },
        row.item,
        row.detail
    );
    row
}

fn rel_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs() / x.abs().max(y.abs()).max(1e-300))
        .fold(0.0, f64::max)
}

fn random_model(rng: &mut ChaCha8Rng) -> ErrorModel {
    ErrorModel {
        rates: std::array::from_fn(|_| std::array::from_fn(|_| rng.random_range(1e-6..1e-4))),
    }
}

/// Run every validation item. Oracle comparisons use `settings`; random
/// error models are drawn from `seed`.
pub fn run_checks(settings: &ValidateSettings, seed: u64) -> Vec<CheckRow> {
    let mut rows = Vec::new();

    let bad = self_check();
    rows.push(check(
        "algebra_tables",
        bad.is_empty(),
        if bad.is_empty() {
            "Q products, syndromes and 27 error actions match".into()
        } else {
            bad.join("; ")
        },
    ));

    let pairs = enumerate_harmful_pairs();
    let count = |l: Logical| pairs.iter().filter(|p| p.logical_type == l).count();
    let (nx, nz, ny) = (count(Logical::X), count(Logical::Z), count(Logical::Y));
    rows.push(check(
        "harmful_pairs",
        (nx, nz, ny) == (90, 90, 18),
        format!("X {nx}, Z {nz}, Y {ny} (expected 90, 90, 18)"),
    ));

    match build_code_basis() {
        Ok(b) => {
            let r = b.report();
            let ok = r.stabilizer_residual < 1e-12
                && r.u_deviation < 1e-12
                && r.u_asymmetry < 1e-12
                && r.u_orthogonality < 1e-12;
            rows.push(check(
                "code_basis",
                ok,
                format!(
                    "stabilizer residual {:.1e}, |U − stored| {:.1e}, |U − Uᵀ| {:.1e}, |UᵀU − I| {:.1e}",
                    r.stabilizer_residual, r.u_deviation, r.u_asymmetry, r.u_orthogonality
                ),
            ));
            let params = MeasurementParams {
                gamma_m: 1.0,
                eta: 1.0,
                dt: settings.oracle_dt_tcoll,
            };
            let steps = step_count(settings.oracle_t_tcoll, settings.oracle_dt_tcoll);
            let x5: PauliOperator = "X5".parse().expect("valid literal");
            for (item, err) in [
                ("oracle_no_error", None),
                ("oracle_scripted_x5", Some((steps / 2, &x5))),
            ] {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                match compare_with_reduced(params, &b, steps, err, &mut rng) {
                    Ok(c) => {
                        let want = if err.is_some() { 5 } else { 0 };
                        let ok = c.max_signal_diff < 1e-3
                            && c.final_full.get() == want
                            && c.final_reduced.get() == want;
                        rows.push(check(
                            item,
                            ok,
                            format!(
                                "{} steps, max signal diff {:.2e}, gauge diff {:.2e}, final subspace {} / {}",
                                c.steps, c.max_signal_diff, c.max_gauge_diff, c.final_reduced, c.final_full
                            ),
                        ));
                    }
                    Err(e) => rows.push(check(item, false, e.to_string())),
                }
            }
        }
        Err(e) => rows.push(check("code_basis", false, e.to_string())),
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst_discrete = 0.0f64;
    let mut worst_cont = 0.0f64;
    let mut worst_mirror = 0.0f64;
    let th = Thresholds {
        theta1: 0.44,
        theta2: 1.56,
    };
    for k in 0..20 {
        let m = if k == 0 {
            ErrorModel::depolarizing(1e-4)
        } else {
            random_model(&mut rng)
        };
        let (a, _) = discrete_rates(&m, 1.0);
        let (b, _) = discrete_rates_transcribed(&m, 1.0);
        worst_discrete = worst_discrete.max(rel_diff(&a, &b));
        let (Ok(c), Ok(d)) = (
            cont_rates_large_tc(&m, &th, 30.0),
            cont_rates_large_tc_enumerated(&m, &th, 30.0),
        ) else {
            worst_cont = f64::INFINITY;
            continue;
        };
        worst_cont = worst_cont.max(rel_diff(&c, &d));
        let (mi, _) = discrete_rates(&m.xz_mirror(), 1.0);
        worst_mirror = worst_mirror.max(rel_diff(&[a[0], a[1], a[2]], &[mi[2], mi[1], mi[0]]));
    }
    rows.push(check(
        "discrete_rates_dual",
        worst_discrete < 1e-12,
        format!("enumeration vs closed form, max rel diff {worst_discrete:.1e} over 20 models"),
    ));
    rows.push(check(
        "large_tc_rates_dual",
        worst_cont < 1e-12,
        format!("enumeration vs closed form, max rel diff {worst_cont:.1e} over 20 models"),
    ));
    rows.push(check(
        "xz_symmetry",
        worst_mirror < 1e-12,
        format!("γ_X(model) vs γ_Z(mirrored model), max rel diff {worst_mirror:.1e}"),
    ));

    let th_ok = Thresholds {
        theta1: 0.44,
        theta2: 1.56,
    };
    let mut dec = DecoderState::new();
    let inside = [1.0, 0.2, 1.0, 1.0];
    dec.decode_step(&th_ok, &inside, 0.0);
    let once = dec.clone();
    dec.decode_step(&th_ok, &inside, 1.0);
    let held = dec.monitored == once.monitored
        && dec.signs == once.signs
        && dec.monitored == SubspaceIndex::CODE;
    rows.push(check(
        "hold_rule",
        held,
        "a value inside the hold band keeps the syndrome on repeated input",
    ));

    let erfc_err = [
        (0.5, 0.479_500_122_186_953_5),
        (2.0, 0.004_677_734_981_047_266),
        (5.0, 1.537_459_794_428_034_8e-12),
    ]
    .iter()
    .map(|&(x, want)| ((erfc(x) - want) / want).abs())
    .fold(0.0, f64::max);
    rows.push(check(
        "erfc",
        erfc_err < 1e-14,
        format!("max rel error {erfc_err:.1e}"),
    ));
    rows
}
