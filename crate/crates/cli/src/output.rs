//! CSV tables and the run manifest.
//!
//! Floats are written with Rust's `Display`, which yields the shortest
//! decimal string that parses back to the same value.

use std::io::Write;

use serde::Serialize;
use sha2::{Digest, Sha256};
use wavefront::experiment::{CellResult, ExperimentConfig};

pub const DEVIATIONS_HEADER: &str = "d_r,m_side,trial,antenna_index,phi_deg,last_ris_id,path_len";
pub const FITS_HEADER: &str =
    "d_r,m_side,n_samples,n_failures,k_hat,theta_hat,sigma_hat,kld_gamma,kld_rayleigh,loglik_gamma,loglik_rayleigh";
pub const HISTOGRAMS_HEADER: &str = "d_r,m_side,bin_left,bin_right,count,density";

fn table<W: Write>(out: W, header: &str) -> csv::Result<csv::Writer<W>> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(header.split(','))?;
    Ok(w)
}

/// One row per routed antenna per trial. `path_len` counts the vertices on
/// the transmitter-to-last-RIS path.
pub fn write_deviations<W: Write>(cells: &[CellResult], out: W) -> csv::Result<()> {
    let mut w = table(out, DEVIATIONS_HEADER)?;
    for c in cells {
        let (d_r, m) = (c.report.d_r.to_string(), c.report.m_side.to_string());
        for (trial, set) in c.trials.iter().enumerate() {
            for r in &set.routes {
                w.write_record([
                    d_r.clone(),
                    m.clone(),
                    trial.to_string(),
                    r.antenna.to_string(),
                    r.phi_deg.to_string(),
                    r.last_ris_id.to_string(),
                    r.path.len().to_string(),
                ])?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_fits<W: Write>(cells: &[CellResult], out: W) -> csv::Result<()> {
    let mut w = table(out, FITS_HEADER)?;
    for c in cells {
        let r = &c.report;
        w.write_record([
            r.d_r.to_string(),
            r.m_side.to_string(),
            r.n_samples.to_string(),
            r.n_failures.to_string(),
            r.gamma.k_hat.to_string(),
            r.gamma.theta_hat.to_string(),
            r.rayleigh.sigma_hat.to_string(),
            r.kld_gamma.to_string(),
            r.kld_rayleigh.to_string(),
            r.gamma.log_likelihood.to_string(),
            r.rayleigh.log_likelihood.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_histograms<W: Write>(cells: &[CellResult], out: W) -> csv::Result<()> {
    let mut w = table(out, HISTOGRAMS_HEADER)?;
    for c in cells {
        let h = &c.histogram;
        for i in 0..h.n_bins() {
            w.write_record([
                c.report.d_r.to_string(),
                c.report.m_side.to_string(),
                h.bin_edges[i].to_string(),
                h.bin_edges[i + 1].to_string(),
                h.counts[i].to_string(),
                h.densities[i].to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FileDigest {
    pub name: String,
    pub bytes: u64,
    pub sha256: String,
}

impl FileDigest {
    pub fn of(name: &str, contents: &[u8]) -> Self {
        let digest = Sha256::digest(contents);
        Self {
            name: name.to_string(),
            bytes: contents.len() as u64,
            sha256: digest.iter().map(|b| format!("{b:02x}")).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub seed: u64,
    pub threads: usize,
    pub started_at: String,
    pub finished_at: String,
    pub config: ExperimentConfig,
    pub files: Vec<FileDigest>,
}
