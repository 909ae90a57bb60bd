mod common;

use common::{box_walls, ris_at, tiled_room, v};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wavefront::experiment::{
    run_cell, run_sweep, sample_wavefront, trial_rng, CellResult, ExperimentConfig, ExperimentError,
};
use wavefront::geometry::AntennaArray;
use wavefront::scene_graph::{Room, Scene};

fn small_config() -> ExperimentConfig {
    ExperimentConfig {
        d_r_values: vec![0.3, 0.5],
        m_sides: vec![2, 3],
        n_trials: 12,
        ..ExperimentConfig::default()
    }
}

#[test]
fn hemisphere_deciles_follow_cosine_law() {
    let scene = tiled_room(0.5, 1, v(2.0, 2.0, 1.5));
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let n = 1_000_000;
    let mut counts = [0usize; 10];
    for _ in 0..n {
        let d = sample_wavefront(&scene, &mut rng).unwrap().doas[0];
        assert!(d.z > 0.0);
        // P(θ ≤ t) = 1 − cos t, so 1 − z is uniform on [0, 1)
        let k = (((1.0 - d.z) * 10.0) as usize).min(9);
        counts[k] += 1;
    }
    for (k, &c) in counts.iter().enumerate() {
        let frac = c as f64 / n as f64;
        assert!((frac - 0.1).abs() <= 0.001, "decile {k}: {frac}");
    }
}

#[test]
fn sampled_directions_face_the_boresight() {
    let walls = box_walls(0, [0., 0., 0.], [4., 4., 3.]);
    let units = vec![ris_at(0, &walls[3], 0., 0., 0.3)];
    let rx = AntennaArray::planar(v(2., 2., 1.5), v(0., 1., 0.), v(1., 0., 0.), 3, 3, 0.05).unwrap();
    let room = Room {
        wall_ids: (0..6).collect(),
    };
    let scene = Scene::new(walls, vec![], units, v(1., 1., 1.), rx, vec![room], 0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..2000 {
        let spec = sample_wavefront(&scene, &mut rng).unwrap();
        assert!(spec.doas.iter().all(|d| d.y > 0.0 && d.is_unit(1e-12)));
    }
}

#[test]
fn same_stream_same_spec() {
    let scene = tiled_room(0.5, 3, v(2.0, 2.0, 1.5));
    let a = sample_wavefront(&scene, &mut trial_rng(1, 2, 3, 4)).unwrap();
    let b = sample_wavefront(&scene, &mut trial_rng(1, 2, 3, 4)).unwrap();
    let c = sample_wavefront(&scene, &mut trial_rng(1, 2, 3, 5)).unwrap();
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn single_antenna_cell_accounts_every_trial() {
    let config = ExperimentConfig {
        d_r_values: vec![2.9],
        m_sides: vec![1],
        n_trials: 40,
        ..ExperimentConfig::default()
    };
    let cell = run_cell(&config, 0, 0).unwrap();
    assert_eq!(cell.report.n_samples, 40);
    assert_eq!(cell.report.n_failures, 0);
    assert_eq!(cell.dataset.len(), 40);
}

#[test]
fn oversized_units_are_a_scene_fault() {
    let config = ExperimentConfig {
        d_r_values: vec![6.0],
        m_sides: vec![2],
        n_trials: 3,
        ..ExperimentConfig::default()
    };
    let err = run_cell(&config, 0, 0).unwrap_err();
    assert!(err.is_scene_fault(), "{err}");
    assert!(run_sweep(&config).unwrap_err().is_scene_fault());
}

#[test]
fn malformed_config_names_key() {
    let config = ExperimentConfig {
        n_trials: 0,
        ..ExperimentConfig::default()
    };
    match run_sweep(&config) {
        Err(ExperimentError::Config { key, .. }) => assert_eq!(key, "n_trials"),
        other => panic!("unexpected {other:?}"),
    }
}

fn assert_same(a: &CellResult, b: &CellResult) {
    assert_eq!(a.report, b.report);
    assert_eq!(a.trials, b.trials);
    assert_eq!(a.histogram, b.histogram);
}

#[test]
fn sweep_order_and_stream_isolation() {
    let config = small_config();
    let cells = run_sweep(&config).unwrap();
    let order: Vec<(usize, f64)> = cells.iter().map(|c| (c.report.m_side, c.report.d_r)).collect();
    assert_eq!(order, vec![(2, 0.3), (2, 0.5), (3, 0.3), (3, 0.5)]);
    // cells recomputed one by one, in reverse
    for cell in cells.iter().rev() {
        let again = run_cell(&config, cell.d_r_index, cell.m_index).unwrap();
        assert_same(cell, &again);
    }
    for c in &cells {
        let m = c.report.m_side * c.report.m_side;
        assert_eq!(c.report.n_samples + c.report.n_failures, config.n_trials * m);
    }
}

#[test]
fn results_independent_of_thread_count() {
    let config = ExperimentConfig {
        d_r_values: vec![0.4],
        m_sides: vec![4],
        n_trials: 30,
        ..ExperimentConfig::default()
    };
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| run_sweep(&config).unwrap())
    };
    let one = run(1);
    let many = run(5);
    for (a, b) in one.iter().zip(&many) {
        assert_same(a, b);
        let bits = |c: &CellResult| c.dataset.samples().iter().map(|x| x.to_bits()).collect::<Vec<_>>();
        assert_eq!(bits(a), bits(b));
    }
}

#[test]
fn paper_scale_sweep_invariants() {
    let config = ExperimentConfig::default();
    let cells = run_sweep(&config).unwrap();
    assert_eq!(cells.len(), 9 * 4);
    for c in &cells {
        let r = &c.report;
        let m = r.m_side * r.m_side;
        assert_eq!(r.n_samples + r.n_failures, config.n_trials * m);
        assert!(r.gamma.k_hat > 0.0 && r.gamma.theta_hat > 0.0 && r.rayleigh.sigma_hat > 0.0);
        assert!((r.gamma.k_hat * r.gamma.theta_hat - c.dataset.mean()).abs() <= 1e-12 * c.dataset.mean());
        assert!(r.kld_gamma >= 0.0 && r.kld_rayleigh >= 0.0);
        assert!(r.gamma.log_likelihood.is_finite() && r.rayleigh.log_likelihood.is_finite());
        assert!((c.histogram.total_mass() - 1.0).abs() <= 1e-9);
        assert!(c.dataset.samples().iter().all(|&x| (0.0..=180.0).contains(&x)));
    }
}
