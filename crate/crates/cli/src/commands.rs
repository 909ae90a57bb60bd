use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use wavefront::experiment::{build_scene, fit_dataset, run_sweep};
use wavefront::scene_graph::build_graph;
use wavefront::statfit::DEFAULT_BINS;
use wavefront::{routing::get_routes, DeviationDataset, GammaFit, RayleighFit, RouteSet, Vec3, WavefrontSpec};

use crate::output::{write_deviations, write_fits, write_histograms, FileDigest, RunManifest};
use crate::{load_config, CliError};

/// Allowed deviation of a route-spec vector's norm from 1.
pub const SPEC_UNIT_TOL: f64 = 1e-6;

pub const OUTPUT_FILES: [&str; 3] = ["deviations.csv", "fits.csv", "histograms.csv"];
pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Clone)]
pub struct SweepArgs {
    pub config: PathBuf,
    pub out: PathBuf,
    pub seed: Option<u64>,
    /// Worker threads; 0 uses the ambient rayon pool.
    pub threads: usize,
}

fn now() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Millis, true)
}

fn with_threads<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> R {
    if threads == 0 {
        return f();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

/// Runs the configured sweep and writes the three tables, then the manifest.
pub fn cmd_sweep(args: &SweepArgs) -> Result<RunManifest, CliError> {
    let started_at = now();
    let mut config = load_config(&args.config)?;
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    let (cells, threads) = with_threads(args.threads, || (run_sweep(&config), rayon::current_num_threads()));
    let cells = cells.map_err(|e| CliError::from_experiment(&args.config, e))?;

    fs::create_dir_all(&args.out).map_err(CliError::io(&args.out))?;
    let mut files = Vec::new();
    for name in OUTPUT_FILES {
        let mut buf = Vec::new();
        let written = match name {
            "deviations.csv" => write_deviations(&cells, &mut buf),
            "fits.csv" => write_fits(&cells, &mut buf),
            _ => write_histograms(&cells, &mut buf),
        };
        let path = args.out.join(name);
        written.map_err(|e| CliError::Io {
            path: path.clone(),
            source: e.into(),
        })?;
        fs::write(&path, &buf).map_err(CliError::io(&path))?;
        files.push(FileDigest::of(name, &buf));
    }

    let manifest = RunManifest {
        tool: "wavefront",
        version: env!("CARGO_PKG_VERSION"),
        seed: config.seed,
        threads,
        started_at,
        finished_at: now(),
        config,
        files,
    };
    let path = args.out.join(MANIFEST_FILE);
    let json = serde_json::to_vec_pretty(&manifest).expect("manifest serializes");
    fs::write(&path, json).map_err(CliError::io(&path))?;
    Ok(manifest)
}

/// Route specification file: one desired DoA per antenna.
#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RouteSpecFile {
    pub doas: Vec<[f64; 3]>,
}

#[derive(Debug, thiserror::Error)]
#[error("doa {index} has norm {norm}, outside 1 ± {SPEC_UNIT_TOL}")]
pub struct NotUnit {
    pub index: usize,
    pub norm: f64,
}

/// Checks lengths and unit norms, then renormalizes every vector.
pub fn prepare_spec(file: &RouteSpecFile, antennas: usize) -> Result<WavefrontSpec, CliError> {
    if file.doas.len() != antennas {
        return Err(CliError::Input(format!(
            "spec lists {} doas but the array has {antennas} antennas",
            file.doas.len()
        )));
    }
    let mut doas = Vec::with_capacity(antennas);
    for (index, &d) in file.doas.iter().enumerate() {
        let v = Vec3::from_array(d);
        let norm = v.norm();
        if !((norm - 1.0).abs() <= SPEC_UNIT_TOL) {
            return Err(CliError::Scene(NotUnit { index, norm }.to_string()));
        }
        doas.push(v * (1.0 / norm));
    }
    Ok(WavefrontSpec::new(doas))
}

/// Routes one wavefront on the scene built from the first `d_r_values` and
/// `m_sides` entries of the config; writes the route set as JSON.
pub fn cmd_route(config_path: &Path, spec_path: &Path, out: &Path) -> Result<RouteSet, CliError> {
    let config = load_config(config_path)?;
    let text = fs::read_to_string(spec_path).map_err(CliError::io(spec_path))?;
    let file: RouteSpecFile =
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", spec_path.display())))?;
    let scene = build_scene(&config, config.d_r_values[0], config.m_sides[0])
        .map_err(|e| CliError::from_experiment(config_path, e))?;
    let spec = prepare_spec(&file, scene.rx.len())?;
    let graph = build_graph(&scene).map_err(|e| CliError::Scene(e.to_string()))?;
    let routes = get_routes(&scene, &graph, &spec).map_err(|e| CliError::Input(e.to_string()))?;
    let json = serde_json::to_vec_pretty(&routes).expect("route set serializes");
    fs::write(out, json).map_err(CliError::io(out))?;
    Ok(routes)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitSummary {
    pub n: usize,
    pub gamma: GammaFit,
    pub rayleigh: RayleighFit,
    pub kld_gamma: f64,
    pub kld_rayleigh: f64,
}

/// Reads the `phi_deg` column of a CSV file.
pub fn read_phi_column(path: &Path) -> Result<Vec<f64>, CliError> {
    let bad = |msg: String| CliError::Input(format!("{}: {msg}", path.display()));
    let mut reader = csv::ReaderBuilder::new()
        .flexible(false)
        .from_path(path)
        .map_err(|e| match e.into_kind() {
            csv::ErrorKind::Io(source) => CliError::Io {
                path: path.to_path_buf(),
                source,
            },
            other => bad(format!("{other:?}")),
        })?;
    let headers = reader.headers().map_err(|e| bad(e.to_string()))?.clone();
    let col = headers
        .iter()
        .position(|h| h == "phi_deg")
        .ok_or_else(|| bad("no phi_deg column".into()))?;
    let mut values = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let record = record.map_err(|e| bad(e.to_string()))?;
        let field = &record[col];
        let x: f64 = field
            .trim()
            .parse()
            .map_err(|_| bad(format!("row {}: `{field}` is not a number", row + 1)))?;
        values.push(x);
    }
    Ok(values)
}

/// Fits both models to the `phi_deg` column and writes the result as JSON.
pub fn cmd_fit(data: &Path, out: &Path) -> Result<FitSummary, CliError> {
    let values = read_phi_column(data)?;
    if values.is_empty() {
        return Err(CliError::Input(format!("{}: no samples", data.display())));
    }
    let dataset = DeviationDataset::new(values, None).map_err(|e| CliError::Input(e.to_string()))?;
    let fit = fit_dataset(&dataset, DEFAULT_BINS).map_err(|e| CliError::Input(e.to_string()))?;
    let summary = FitSummary {
        n: dataset.len(),
        gamma: fit.gamma,
        rayleigh: fit.rayleigh,
        kld_gamma: fit.kld_gamma,
        kld_rayleigh: fit.kld_rayleigh,
    };
    let json = serde_json::to_vec_pretty(&summary).expect("fit summary serializes");
    fs::write(out, json).map_err(CliError::io(out))?;
    Ok(summary)
}
