//! Monte-Carlo sweeps over RIS size `d_r` and array size `M`.
//!
//! Each `(d_r, M)` cell builds the two-room scene, routes `n_trials` random
//! wavefronts, pools every antenna's deviation angle into one dataset and
//! fits both models to it. Every trial draws from its own ChaCha stream keyed
//! by `(seed, d_r index, M index, trial)`, so results do not depend on the
//! number of worker threads or the order cells are evaluated in.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{ray_wall_point, tile_wall, GeometryError, UNIT_TOL};
use crate::routing::{get_routes, RoutingError};
use crate::scene_graph::{build_graph, Room, SceneError};
use crate::statfit::{fit_gamma_mle, fit_rayleigh_mle, kld_empirical, make_histogram, ConfigTag, StatError};
use crate::{
    AntennaArray, DeviationDataset, GammaFit, Histogram, Opening, RayleighFit, RouteSet, Scene, Vec3, WallPlane,
    WavefrontSpec,
};

/// Consecutive rejected DoA draws tolerated before the scene is deemed broken.
pub const MAX_REJECTIONS: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExperimentError {
    #[error("invalid config key `{key}`: {reason}")]
    Config { key: &'static str, reason: String },
    #[error("scene: {0}")]
    Scene(#[from] SceneError),
    #[error("geometry: {0}")]
    Geometry(#[from] GeometryError),
    #[error("routing: {0}")]
    Routing(#[from] RoutingError),
    #[error("antenna {antenna}: {MAX_REJECTIONS} consecutive DoA draws missed every wall")]
    Sampling { antenna: usize },
    #[error("cell d_r = {d_r}, M = {m_side}x{m_side}: {source}")]
    Fit {
        d_r: f64,
        m_side: usize,
        #[source]
        source: StatError,
    },
}

impl ExperimentError {
    /// True for faults that originate in the scene description.
    pub fn is_scene_fault(&self) -> bool {
        matches!(
            self,
            Self::Scene(_) | Self::Geometry(_) | Self::Sampling { .. } | Self::Routing(_)
        )
    }
}

/// Sweep definition plus the two-room scene layout.
///
/// Room 1 spans `x ∈ [0, L]`, room 2 spans `x ∈ [L + t, 2L + t]` where `L` is
/// `room_length` and `t` is `wall_thickness`; both rooms share `y ∈ [0, W]`,
/// `z ∈ [0, H]`. The doorway is centered in the dividing wall and stands on
/// the floor. Side walls and ceilings are tiled with RIS units; floors are not.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub d_r_values: Vec<f64>,
    pub m_sides: Vec<usize>,
    pub n_trials: usize,
    pub seed: u64,
    pub n_bins: usize,
    pub room_length: f64,
    pub room_width: f64,
    pub room_height: f64,
    pub wall_thickness: f64,
    pub doorway_width: f64,
    pub doorway_height: f64,
    pub tx_position: [f64; 3],
    pub rx_center: [f64; 3],
    pub rx_spacing: f64,
    pub margin: f64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            d_r_values: vec![0.15, 0.20, 0.25, 0.30, 0.35, 0.40, 0.45, 0.50, 0.55],
            m_sides: vec![4, 6, 8, 10],
            n_trials: 100,
            seed: 2024,
            n_bins: 10,
            room_length: 5.0,
            room_width: 5.0,
            room_height: 3.0,
            wall_thickness: 0.1,
            doorway_width: 1.2,
            doorway_height: 2.2,
            tx_position: [0.5, 2.5, 1.5],
            rx_center: [7.6, 0.6, 1.5],
            rx_spacing: 0.05,
            margin: 0.0,
        }
    }
}

fn bad(key: &'static str, reason: impl Into<String>) -> ExperimentError {
    ExperimentError::Config {
        key,
        reason: reason.into(),
    }
}

fn positive(key: &'static str, v: f64) -> Result<(), ExperimentError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(bad(key, format!("must be a positive finite number, got {v}")))
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), ExperimentError> {
        if self.d_r_values.is_empty() {
            return Err(bad("d_r_values", "must not be empty"));
        }
        if let Some(v) = self.d_r_values.iter().find(|v| !(**v > 0.0 && v.is_finite())) {
            return Err(bad("d_r_values", format!("values must be positive, got {v}")));
        }
        if self.m_sides.is_empty() || self.m_sides.contains(&0) {
            return Err(bad("m_sides", "must be a non-empty list of integers >= 1"));
        }
        if self.n_trials == 0 {
            return Err(bad("n_trials", "must be >= 1"));
        }
        if self.n_bins < 2 {
            return Err(bad("n_bins", "must be >= 2"));
        }
        positive("room_length", self.room_length)?;
        positive("room_width", self.room_width)?;
        positive("room_height", self.room_height)?;
        positive("wall_thickness", self.wall_thickness)?;
        positive("doorway_width", self.doorway_width)?;
        positive("doorway_height", self.doorway_height)?;
        positive("rx_spacing", self.rx_spacing)?;
        if self.doorway_width >= self.room_width {
            return Err(bad("doorway_width", "must be smaller than room_width"));
        }
        if self.doorway_height >= self.room_height {
            return Err(bad("doorway_height", "must be smaller than room_height"));
        }
        if !(self.margin >= 0.0 && self.margin.is_finite()) {
            return Err(bad("margin", "must be >= 0"));
        }
        if self.tx_position.iter().any(|v| !v.is_finite()) {
            return Err(bad("tx_position", "must be finite"));
        }
        if self.rx_center.iter().any(|v| !v.is_finite()) {
            return Err(bad("rx_center", "must be finite"));
        }
        Ok(())
    }

    /// Index pairs `(m index, d_r index)` in report order.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        (0..self.m_sides.len())
            .flat_map(|m| (0..self.d_r_values.len()).map(move |d| (m, d)))
            .collect()
    }
}

fn v3(a: [f64; 3]) -> Vec3 {
    Vec3::from_array(a)
}

/// Two-room scene with RIS side `d_r` and an `m_side × m_side` receiver array
/// facing the receiver-room ceiling.
pub fn build_scene(config: &ExperimentConfig, d_r: f64, m_side: usize) -> Result<Scene, ExperimentError> {
    config.validate()?;
    let (l, w, h, t) = (
        config.room_length,
        config.room_width,
        config.room_height,
        config.wall_thickness,
    );
    let (hw, hh) = (w / 2.0, h / 2.0);
    let ex = Vec3::new(1., 0., 0.);
    let ey = Vec3::new(0., 1., 0.);
    let ez = Vec3::new(0., 0., 1.);

    // inward normals; u axes chosen so that v points up on vertical walls
    let room_walls = |first: usize, x0: f64, x1: f64| -> Result<Vec<WallPlane>, GeometryError> {
        let cx = 0.5 * (x0 + x1);
        let hx = 0.5 * (x1 - x0);
        Ok(vec![
            WallPlane::new(first, Vec3::new(x0, hw, hh), ex, ey, hw, hh)?,
            WallPlane::new(first + 1, Vec3::new(cx, 0., hh), ey, -ex, hx, hh)?,
            WallPlane::new(first + 2, Vec3::new(cx, w, hh), -ey, ex, hx, hh)?,
            WallPlane::new(first + 3, Vec3::new(x1, hw, hh), -ex, -ey, hw, hh)?,
            WallPlane::new(first + 4, Vec3::new(cx, hw, h), -ez, ex, hx, hw)?,
            WallPlane::new(first + 5, Vec3::new(cx, hw, 0.), ez, ex, hx, hw)?,
        ])
    };
    // room 1: ids 0..6 with the divider face at id 3; room 2: ids 6..12 with
    // the divider face at id 6
    let mut walls = room_walls(0, 0.0, l)?;
    walls.extend(room_walls(6, l + t, 2.0 * l + t)?);
    let rooms = vec![
        Room {
            wall_ids: (0..6).collect(),
        },
        Room {
            wall_ids: (6..12).collect(),
        },
    ];
    let floors = [5, 11];

    let door = |wall_id| Opening {
        wall_id,
        u_center: 0.0,
        v_center: -hh + config.doorway_height / 2.0,
        u_half: config.doorway_width / 2.0,
        v_half: config.doorway_height / 2.0,
    };
    let openings = vec![door(3), door(6)];

    let mut ris_units = Vec::new();
    for wall in walls.iter().filter(|w| !floors.contains(&w.id)) {
        let tiles = tile_wall(wall, d_r, config.margin, &openings, ris_units.len())?;
        ris_units.extend(tiles);
    }

    let rx = AntennaArray::planar(v3(config.rx_center), ez, ex, m_side, m_side, config.rx_spacing)?;
    Ok(Scene::new(
        walls,
        openings,
        ris_units,
        v3(config.tx_position),
        rx,
        rooms,
        1,
    )?)
}

/// Draws one desired DoA per antenna, uniform over the hemisphere around the
/// array boresight. Directions whose ray misses every receiver-room wall are
/// redrawn.
pub fn sample_wavefront<R: Rng + ?Sized>(scene: &Scene, rng: &mut R) -> Result<WavefrontSpec, ExperimentError> {
    let walls = scene.receiver_walls();
    let b = scene.rx.boresight;
    let e1 = b.any_perpendicular();
    let e2 = b.cross(e1);
    let mut doas = Vec::with_capacity(scene.rx.len());
    for (i, &ant) in scene.rx.antennas.iter().enumerate() {
        let mut accepted = None;
        for _ in 0..MAX_REJECTIONS {
            // cos θ uniform on (0, 1] gives a uniform hemisphere
            let cos_t = 1.0 - rng.gen::<f64>();
            let sin_t = (1.0 - cos_t * cos_t).max(0.0).sqrt();
            let az = std::f64::consts::TAU * rng.gen::<f64>();
            let d = (b * cos_t + (e1 * az.cos() + e2 * az.sin()) * sin_t)
                .normalized()
                .expect("unit combination");
            if ray_wall_point(ant, d, &walls).is_some() {
                accepted = Some(d);
                break;
            }
        }
        doas.push(accepted.ok_or(ExperimentError::Sampling { antenna: i })?);
    }
    debug_assert!(doas.iter().all(|d| d.is_unit(UNIT_TOL)));
    Ok(WavefrontSpec::new(doas))
}

/// Independent stream for one trial of one cell.
pub fn trial_rng(seed: u64, d_r_index: usize, m_index: usize, trial: usize) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    for (chunk, word) in key
        .chunks_exact_mut(8)
        .zip([seed, d_r_index as u64, m_index as u64, trial as u64])
    {
        chunk.copy_from_slice(&word.to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitReport {
    pub d_r: f64,
    pub m_side: usize,
    pub gamma: GammaFit,
    pub rayleigh: RayleighFit,
    pub kld_gamma: f64,
    pub kld_rayleigh: f64,
    pub n_samples: usize,
    pub n_failures: usize,
}

/// Both model fits and their divergences for one dataset.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DatasetFit {
    pub gamma: GammaFit,
    pub rayleigh: RayleighFit,
    pub kld_gamma: f64,
    pub kld_rayleigh: f64,
}

pub fn fit_dataset(data: &DeviationDataset, n_bins: usize) -> Result<DatasetFit, StatError> {
    let gamma = fit_gamma_mle(data)?;
    let rayleigh = fit_rayleigh_mle(data)?;
    Ok(DatasetFit {
        gamma,
        rayleigh,
        kld_gamma: kld_empirical(data, |x| gamma.pdf(x), n_bins)?,
        kld_rayleigh: kld_empirical(data, |x| rayleigh.pdf(x), n_bins)?,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellResult {
    pub d_r_index: usize,
    pub m_index: usize,
    /// One route set per trial, in trial order.
    pub trials: Vec<RouteSet>,
    pub dataset: DeviationDataset,
    pub histogram: Histogram,
    pub report: FitReport,
}

/// Runs all trials of one `(d_r, M)` cell and fits the pooled deviations.
pub fn run_cell(config: &ExperimentConfig, d_r_index: usize, m_index: usize) -> Result<CellResult, ExperimentError> {
    let d_r = *config
        .d_r_values
        .get(d_r_index)
        .ok_or_else(|| bad("d_r_values", format!("no entry at index {d_r_index}")))?;
    let m_side = *config
        .m_sides
        .get(m_index)
        .ok_or_else(|| bad("m_sides", format!("no entry at index {m_index}")))?;
    let scene = build_scene(config, d_r, m_side)?;
    let graph = build_graph(&scene)?;

    let trials = (0..config.n_trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(config.seed, d_r_index, m_index, trial);
            let spec = sample_wavefront(&scene, &mut rng)?;
            Ok(get_routes(&scene, &graph, &spec)?)
        })
        .collect::<Result<Vec<RouteSet>, ExperimentError>>()?;

    let samples: Vec<f64> = trials.iter().flat_map(|t| t.routes.iter().map(|r| r.phi_deg)).collect();
    let n_failures = trials.iter().map(|t| t.failures.len()).sum();
    let fit_err = |source| ExperimentError::Fit { d_r, m_side, source };
    let dataset = DeviationDataset::new(
        samples,
        Some(ConfigTag {
            d_r,
            m: m_side * m_side,
        }),
    )
    .map_err(fit_err)?;
    let fit = fit_dataset(&dataset, config.n_bins).map_err(fit_err)?;
    let histogram = make_histogram(&dataset, config.n_bins).map_err(fit_err)?;

    let report = FitReport {
        d_r,
        m_side,
        gamma: fit.gamma,
        rayleigh: fit.rayleigh,
        kld_gamma: fit.kld_gamma,
        kld_rayleigh: fit.kld_rayleigh,
        n_samples: dataset.len(),
        n_failures,
    };
    Ok(CellResult {
        d_r_index,
        m_index,
        trials,
        dataset,
        histogram,
        report,
    })
}

/// Every `(d_r, M)` combination, ordered by `M` then `d_r`.
pub fn run_sweep(config: &ExperimentConfig) -> Result<Vec<CellResult>, ExperimentError> {
    config.validate()?;
    config
        .cells()
        .into_par_iter()
        .map(|(m, d)| run_cell(config, d, m))
        .collect()
}
