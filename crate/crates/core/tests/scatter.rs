use scarf_core::scatter::{scatter, ss_divergence_probe, transmission_scan, ProbeOptions, ScanOutcome, ScatterOptions};
use scarf_core::{Params, PotentialKind, Sign};

fn general() -> PotentialKind {
    PotentialKind::General(Sign::Plus)
}

#[test]
fn reflectionless_point_conserves_flux() {
    let p = Params::real(2.0, 1.0, 1.0).unwrap();
    let r = scatter(&p, PotentialKind::Pt, 1.0, &ScatterOptions::default()).unwrap();
    assert!((r.r + r.t_sq - 1.0).abs() < 1e-6, "{r:?}");
}

#[test]
fn pt_generalized_unitarity() {
    for (a, b) in [(2.0, 1.0), (1.3, 0.8)] {
        let p = Params::real(a, b, 1.0).unwrap();
        for e in [0.5, 1.0, 2.0] {
            let r = scatter(&p, PotentialKind::Pt, e, &ScatterOptions::default()).unwrap();
            let lhs = (r.t_sq - 1.0).abs();
            let rhs = (r.r * r.r_right_sq).sqrt();
            assert!((lhs - rhs).abs() < 2e-3, "({a},{b}) E={e}: {lhs} vs {rhs}");
        }
    }
}

#[test]
fn reflection_is_direction_dependent_off_the_reflectionless_point() {
    let p = Params::real(1.3, 0.8, 1.0).unwrap();
    let r = scatter(&p, PotentialKind::Pt, 0.5, &ScatterOptions::default()).unwrap();
    assert!((r.r - r.r_right_sq).abs() > 1e-3);
    assert!((r.t - r.t_right).norm() < 1e-8);
}

#[test]
fn spectral_singularity_transmission_diverges() {
    let p = Params::new(2.0, 2.5, 0.7, 1.0).unwrap();
    let opts = ScatterOptions { l: Some(15.0), ..Default::default() };
    let r = scatter(&p, general(), 0.49, &opts).unwrap();
    assert!(r.t_sq > 1e4, "{}", r.t_sq);
}

fn peak(points: &[scarf_core::scatter::ScanPoint<f64>]) -> (f64, f64) {
    points.iter().filter_map(|pt| pt.result().map(|r| (pt.e, r.t_sq))).fold((0.0, f64::NEG_INFINITY), |acc, v| {
        if v.1 > acc.1 {
            v
        } else {
            acc
        }
    })
}

#[test]
fn scan_peaks_at_the_singular_energy() {
    let o = ScatterOptions::default();
    let on = Params::new(2.0, 2.5, 0.7, 1.0).unwrap();
    let scan = transmission_scan(&on, general(), 0.1, 2.0, 191, &o).unwrap();
    assert!(scan.iter().all(|pt| matches!(pt.outcome, ScanOutcome::Ok(_))));
    let (e_peak, t_on) = peak(&scan);
    assert!((e_peak - 0.49).abs() <= 0.01 + 1e-12, "peak at {e_peak}");

    let off = Params::new(2.2, 2.7, 0.7, 1.0).unwrap();
    let (_, t_off) = peak(&transmission_scan(&off, general(), 0.1, 2.0, 191, &o).unwrap());
    assert!(t_off.is_finite() && t_on / t_off >= 1e2, "{t_on} vs {t_off}");
}

#[test]
fn free_scan_is_transparent() {
    let p = Params::real(0.0, 0.0, 1.0).unwrap();
    let scan = transmission_scan(&p, PotentialKind::Free, 0.1, 2.0, 20, &ScatterOptions::default()).unwrap();
    for pt in &scan {
        let r = pt.result().unwrap();
        assert!((r.t_sq - 1.0).abs() < 1e-10 && r.r < 1e-10);
    }
}

#[test]
fn detuning_ladder_is_monotone_and_control_is_bounded() {
    let base = Params::on_pt_line(2.0, 0.7, 1.0).unwrap();
    let deltas = [0.2, 0.1, 0.05, 0.01];
    let opts = ProbeOptions::default();
    let ladder = ss_divergence_probe(&base, 2, &deltas, &opts).unwrap();
    for w in ladder.windows(2) {
        assert!(w[1].peak_t > w[0].peak_t, "{ladder:?}");
    }
    assert!(ladder[3].peak_t / ladder[0].peak_t > 10.0);

    let e_ss = 0.49;
    let control = ProbeOptions { window: Some((0.6 * e_ss, 1.25 * e_ss)), ..opts };
    let zero = base.with_c(0.0).unwrap();
    for pt in ss_divergence_probe(&zero, 2, &deltas, &control).unwrap() {
        assert!(pt.peak_t < 2.0 && !pt.singular, "{pt:?}");
    }
}

#[test]
fn exact_singularity_is_flagged_not_failed() {
    let base = Params::on_pt_line(2.0, 0.7, 1.0).unwrap();
    let opts = ProbeOptions { samples: 3, window: Some((0.48, 0.50)), ..Default::default() };
    let pts = ss_divergence_probe(&base, 2, &[0.0], &opts).unwrap();
    assert!(pts[0].peak_t > 1e8, "{pts:?}");
}
