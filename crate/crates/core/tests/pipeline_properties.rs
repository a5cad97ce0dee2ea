use approx::assert_relative_eq;
use toponet::geometry::{Class, DatasetKind};
use toponet::nn::Activation;
use toponet::ph::BettiVector;
use toponet::pipeline::*;

fn toy_config() -> ExperimentConfig {
    ExperimentConfig::new(
        DatasetConfig::synthetic(DatasetKind::AnnulusCluster),
        NetworkConfig::uniform(1, 3, Activation::Tanh),
        vec![1],
    )
}

fn layer(b: &[usize]) -> LayerTopology {
    LayerTopology {
        betti: BettiVector::new(b.to_vec()),
        complexity: b.iter().sum(),
        k: 5,
        eps: 1,
    }
}

/// A report with one analyzed class and the given per-seed layer Betti vectors.
fn toy_report(seeds: &[Vec<[usize; 2]>]) -> ExperimentReport {
    let depth = seeds[0].len() - 1;
    let mut cfg = toy_config();
    cfg.network = NetworkConfig::uniform(depth, 3, Activation::Tanh);
    cfg.topology.classes = ClassSelection::A;
    let records = seeds
        .iter()
        .enumerate()
        .map(|(i, layers)| SeedRecord {
            seed: i as u64 + 1,
            epochs_run: 2,
            train_accuracy: 1.0,
            test_accuracy: 0.95,
            generalization_gap: 0.05,
            separation: 0.7,
            classes: vec![ClassTrace {
                class: Class::A,
                input: layer(&[2, 0]),
                layers: layers.iter().map(|b| layer(b)).collect(),
            }],
            history: vec![
                HistoryRow { loss: 0.7, train_accuracy: 0.5, test_accuracy: 0.5, rate: 0.03 },
                HistoryRow { loss: 1.0 / 3.0, train_accuracy: 0.9, test_accuracy: 0.85, rate: 0.029_991_683_2 },
            ],
        })
        .collect();
    let mut report = ExperimentReport {
        schema_version: SCHEMA_VERSION,
        tool_version: "test".into(),
        status: RunStatus::Complete,
        timestamp: 0,
        dataset: "annulus-cluster".into(),
        activation: Activation::Tanh,
        hidden_widths: vec![3; depth],
        classes: vec![Class::A],
        config: cfg,
        seeds: records,
        failures: vec![],
        aggregates: vec![],
    };
    report.reaggregate();
    report
}

#[test]
fn progression_uses_arrow_notation() {
    let r = toy_report(&[vec![[2, 0], [1, 0]]]);
    let p = betti_progression(&r, Class::A, None).unwrap();
    assert_eq!(p.rows[0].arrows(), "(2, 0) → (1, 0)");
    assert_eq!(p.rows[0].label, "seed 1");
    let b0 = betti_progression(&r, Class::A, Some(0)).unwrap();
    assert_eq!(b0.rows[0].arrows(), "2 → 1");
}

#[test]
fn progression_rejects_bad_requests() {
    let r = toy_report(&[vec![[2, 0], [1, 0]]]);
    assert!(betti_progression(&r, Class::A, Some(2)).is_err());
    assert!(betti_progression(&r, Class::B, None).is_err());
}

#[test]
fn mean_row_is_the_seed_average() {
    let r = toy_report(&[vec![[3, 1], [1, 0], [1, 0]], vec![[2, 0], [2, 2], [1, 0]], vec![[4, 0], [1, 1], [1, 1]]]);
    let p = betti_progression(&r, Class::A, None).unwrap();
    let seeds = &p.rows[..3];
    for (j, m) in p.mean().values.iter().enumerate() {
        for (q, &got) in m.iter().enumerate() {
            let want = seeds.iter().map(|s| s.values[j][q]).sum::<f64>() / 3.0;
            assert!((got - want).abs() < 1e-9);
        }
    }
    let agg = r.aggregate(Class::A).unwrap();
    assert_eq!(agg.layers(), 3);
    for j in 0..3 {
        assert!(agg.complexity_min[j] as f64 <= agg.complexity_mean[j]);
        assert!(agg.complexity_mean[j] <= agg.complexity_max[j] as f64);
    }
    assert!(p.to_string().lines().last().unwrap().starts_with("mean"));
}

#[test]
fn two_layer_plot_has_one_mean_polyline_with_two_points() {
    let r = toy_report(&[vec![[2, 0], [1, 0]]]);
    let svg = render_plot(&r, PlotKind::BettiVsLayer { dim: 0 }).unwrap();
    assert_eq!(svg.matches("class=\"mean\"").count(), 1);
    let line = svg.lines().find(|l| l.contains("class=\"mean\"")).unwrap();
    let pts = line.split("points=\"").nth(1).unwrap().split('"').next().unwrap();
    assert_eq!(pts.split_whitespace().count(), 2);
    assert!(svg.contains("tanh") && svg.contains("annulus-cluster"));
    assert_eq!(svg, render_plot(&r, PlotKind::BettiVsLayer { dim: 0 }).unwrap());
}

#[test]
fn single_seed_band_collapses_onto_the_mean() {
    let r = toy_report(&[vec![[2, 0], [1, 0], [1, 0]]]);
    let svg = render_plot(&r, PlotKind::ComplexityVsLayer).unwrap();
    let attr = |class: &str| {
        let l = svg.lines().find(|l| l.contains(&format!("class=\"{class}\""))).unwrap();
        l.split("points=\"").nth(1).unwrap().split('"').next().unwrap().to_string()
    };
    let band: Vec<&str> = attr("band").split_whitespace().map(str::to_string).collect::<Vec<_>>().leak().iter().map(String::as_str).collect();
    let mean = attr("mean");
    let upper = band[..3].join(" ");
    let mut lower = band[3..].to_vec();
    lower.reverse();
    assert_eq!(upper, mean);
    assert_eq!(lower.join(" "), mean);
}

#[test]
fn accuracy_plot_and_empty_aggregate() {
    let r = toy_report(&[vec![[2, 0], [1, 0]], vec![[2, 0], [2, 0]]]);
    let svg = render_plot(&r, PlotKind::AccuracyVsEpoch).unwrap();
    assert_eq!(svg.matches("class=\"mean\"").count(), 2);
    let mut empty = r.clone();
    empty.aggregates.clear();
    assert!(render_plot(&empty, PlotKind::ComplexityVsLayer).is_err());
    empty.seeds.iter_mut().for_each(|s| s.history.clear());
    assert!(render_plot(&empty, PlotKind::AccuracyVsEpoch).is_err());
    assert!(render_plot(&r, PlotKind::BettiVsLayer { dim: 5 }).is_err());
    assert_eq!("betti1-vs-layer".parse::<PlotKind>().unwrap(), PlotKind::BettiVsLayer { dim: 1 });
    assert!("pie".parse::<PlotKind>().is_err());
}

#[test]
fn report_json_round_trips_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let mut r = toy_report(&[vec![[2, 0], [1, 0]], vec![[3, 0], [1, 0]], vec![[2, 1], [1, 0]]]);
    r.status = RunStatus::Partial;
    r.failures.push(SeedFailure { seed: 9, error: "simplex budget".into(), exit_code: 3 });
    let unrounded = r.clone();
    let p1 = dir.path().join("a.json");
    let p2 = dir.path().join("b.json");
    emit_report(&r, &p1).unwrap();
    let back = load_report(&p1).unwrap();
    emit_report(&back, &p2).unwrap();
    let (t1, t2) = (std::fs::read_to_string(&p1).unwrap(), std::fs::read_to_string(&p2).unwrap());
    assert_eq!(t1, t2);
    assert!(t1.contains("\"status\": \"partial\""));
    assert!(t1.contains("\"schema_version\": 1"));
    assert_eq!(back, r.clone().normalized().unwrap());
    let m0 = unrounded.aggregate(Class::A).unwrap().betti_mean[0][0];
    let m1 = back.aggregate(Class::A).unwrap().betti_mean[0][0];
    assert_relative_eq!(m0, m1, max_relative = 5e-9);
    assert_relative_eq!(
        back.seeds[0].history[1].loss,
        1.0 / 3.0,
        max_relative = 5e-9
    );
    assert!(t1.contains("0.333333333"));
    assert!(!t1.contains("0.3333333333"));
}

#[test]
fn unknown_schema_is_rejected() {
    let r = toy_report(&[vec![[2, 0], [1, 0]]]);
    let text = r.to_json().unwrap().replacen("\"schema_version\": 1", "\"schema_version\": 99", 1);
    assert!(ExperimentReport::from_json(&text).is_err());
}

fn small_config(seeds: Vec<u64>, epochs: usize) -> ExperimentConfig {
    let mut cfg = ExperimentConfig::new(
        DatasetConfig::synthetic(DatasetKind::AnnulusCluster),
        NetworkConfig::uniform(2, 6, Activation::Relu),
        seeds,
    );
    cfg.dataset.points_per_class = Some(200);
    cfg.training.epochs = epochs;
    cfg.training.base_rate = 0.01;
    cfg
}

fn strip_time(r: &ExperimentReport) -> String {
    let mut r = r.clone();
    r.timestamp = 0;
    r.to_json().unwrap()
}

#[test]
fn untrained_run_records_the_input_signature() {
    let r = run_experiment(&small_config(vec![3], 0)).unwrap();
    assert_eq!(r.status, RunStatus::Complete);
    let s = &r.seeds[0];
    assert_eq!(s.epochs_run, 0);
    assert!(s.history.is_empty());
    for c in Class::BOTH {
        let t = s.trace(c).unwrap();
        assert_eq!(t.input.betti, DatasetKind::AnnulusCluster.target(c).unwrap());
        assert_eq!(t.layers.len(), 3);
        assert_eq!(r.aggregate(c).unwrap().layers(), 3);
    }
}

#[test]
fn runs_are_deterministic_and_seed_independent() {
    let both = run_experiment(&small_config(vec![1, 2], 150)).unwrap();
    let again = run_experiment(&small_config(vec![1, 2], 150)).unwrap();
    assert_eq!(strip_time(&both), strip_time(&again));
    let one = run_experiment(&small_config(vec![1], 150)).unwrap();
    let two = run_experiment(&small_config(vec![2], 150)).unwrap();
    assert_eq!(both.seeds[0], one.seeds[0]);
    assert_eq!(both.seeds[1], two.seeds[0]);
    let mut parallel_cfg = small_config(vec![1, 2], 150);
    parallel_cfg.run.jobs = 2;
    let parallel = run_experiment(&parallel_cfg).unwrap();
    assert_eq!(parallel.seeds, both.seeds);
    assert_eq!(parallel.aggregates, both.aggregates);
    assert_eq!(both.seeds[0].history.len(), both.seeds[0].epochs_run);
}

#[test]
fn failing_seeds_are_flagged_or_fatal() {
    let mut cfg = small_config(vec![1], 0);
    cfg.topology.simplex_budget = Some(10);
    cfg.validate().unwrap();
    match run_experiment(&cfg) {
        Err(e @ toponet::Error::AllSeedsFailed { .. }) => assert_eq!(e.exit_code(), 4),
        other => panic!("expected all seeds to fail, got {other:?}"),
    }
    let mut cfg = small_config(vec![5, 6], 0);
    cfg.topology.k_max = Some(8);
    cfg.topology.eps_max = Some(2);
    let r = run_experiment(&cfg).unwrap();
    assert_eq!(r.status, RunStatus::Partial);
    assert_eq!(r.seeds.iter().map(|s| s.seed).collect::<Vec<_>>(), vec![6]);
    assert_eq!(r.failures.len(), 1);
    assert_eq!(r.failures[0].seed, 5);
    assert!(r.failures[0].error.contains("calibration"));
    assert!(r.to_json().unwrap().contains("\"status\": \"partial\""));
}
