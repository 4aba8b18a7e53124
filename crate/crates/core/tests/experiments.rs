use polylab::experiments::{
    run_containment_experiment, run_variance_experiment, Experiment, ExperimentConfig, ExperimentKind,
};
use polylab::geometry::reference_intrinsic_volume;
use polylab::ConvexBody;

fn small(kind: ExperimentKind, d: usize, ell: usize) -> ExperimentConfig {
    ExperimentConfig::new("small", kind, ConvexBody::unit_ball(d).unwrap(), ell)
        .with_grid(vec![8, 16, 32, 64])
        .with_replications(120)
        .with_seed(17)
}

fn pool(threads: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap()
}

#[test]
fn records_do_not_depend_on_thread_count() {
    let cfg = small(ExperimentKind::Variance, 3, 2);
    let one = pool(1).install(|| run_variance_experiment(&cfg).unwrap());
    let four = pool(4).install(|| run_variance_experiment(&cfg).unwrap());
    let bits = |r: &polylab::experiments::VarianceReport| {
        r.records.iter().map(|x| x.value.to_bits()).collect::<Vec<_>>()
    };
    assert_eq!(bits(&one), bits(&four));
    assert_eq!(one.fit.slope.to_bits(), four.fit.slope.to_bits());
}

#[test]
fn exact_values_stay_below_reference() {
    for (d, ell) in [(2, 1), (2, 2), (3, 1), (3, 2), (3, 3)] {
        let cfg = small(ExperimentKind::Variance, d, ell);
        let reference = reference_intrinsic_volume(&cfg.body, ell).unwrap();
        let exp = Experiment::new(cfg).unwrap();
        for level in exp.run_all().unwrap() {
            for r in level {
                assert!(r.value.is_finite() && r.value >= 0.0);
                assert!(r.value <= reference * (1.0 + 1e-12), "d={d} ell={ell}: {} > {reference}", r.value);
            }
        }
    }
}

#[test]
fn ellipsoid_values_stay_below_reference() {
    let body = ConvexBody::ellipsoid(&[1.0, 0.5, 1.5]).unwrap();
    let cfg = ExperimentConfig { body, ..small(ExperimentKind::Variance, 3, 3) };
    for ell in [2, 3] {
        let cfg = ExperimentConfig { ell, ..cfg.clone() };
        let reference = reference_intrinsic_volume(&cfg.body, ell).unwrap();
        let exp = Experiment::new(cfg).unwrap();
        for r in exp.run_level(64).unwrap() {
            assert!(r.value <= reference);
        }
    }
}

#[test]
fn variances_are_positive() {
    let report = run_variance_experiment(&small(ExperimentKind::Variance, 2, 1)).unwrap();
    assert!(report.dropped.is_empty());
    assert!(report.per_n.iter().all(|p| p.estimate > 0.0 && p.stderr > 0.0));
}

#[test]
fn containment_failure_is_monotone_in_c_alpha() {
    let mut previous = f64::INFINITY;
    for c in [0.05, 0.2, 0.5, 1.0, 2.0] {
        let cfg = small(ExperimentKind::Containment, 2, 2).with_c_alpha(c);
        let report = run_containment_experiment(&cfg).unwrap();
        let total: f64 = report.per_n.iter().map(|p| p.failure_fraction).sum();
        assert!(total <= previous, "c={c}");
        previous = total;
    }
}

#[test]
fn panel_path_runs_in_four_dimensions() {
    let cfg = ExperimentConfig { n_grid: vec![12, 24], ..small(ExperimentKind::Variance, 4, 2).with_panel(32) };
    let exp = Experiment::new(cfg).unwrap();
    assert_eq!(exp.panel().unwrap().len(), 32);
    let r = exp.run_replication(12, 0).unwrap();
    let reference = reference_intrinsic_volume(&exp.config().body, 2).unwrap();
    assert!(r.value > 0.0 && r.value < reference);
}
