use serde::Serialize;

use crate::Scalar;

use super::{DeviationDataset, StatError};

/// Bars per histogram in the deviation plots.
pub const DEFAULT_BINS: usize = 10;
/// Additive smoothing applied to both bin-mass vectors before the KLD sum.
pub const KLD_SMOOTHING: f64 = 1e-12;

/// Equal-width density histogram over `[0, max(samples)]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Histogram<T> {
    pub bin_edges: Vec<T>,
    pub densities: Vec<T>,
    pub counts: Vec<usize>,
}

impl<T: Scalar> Histogram<T> {
    pub fn n_bins(&self) -> usize {
        self.counts.len()
    }

    pub fn width(&self, i: usize) -> T {
        self.bin_edges[i + 1] - self.bin_edges[i]
    }

    pub fn midpoint(&self, i: usize) -> T {
        T::lit(0.5) * (self.bin_edges[i] + self.bin_edges[i + 1])
    }

    /// Bin holding `x`: `[left, right)` except the last, which is closed.
    pub fn bin_of(&self, x: T) -> Option<usize> {
        let n = self.n_bins();
        let (lo, hi) = (self.bin_edges[0], self.bin_edges[n]);
        if !(x >= lo && x <= hi) {
            return None;
        }
        let guess = ((x - lo) / (hi - lo) * T::count(n)).floor().to_usize().unwrap_or(0);
        let mut i = guess.min(n - 1);
        while i > 0 && x < self.bin_edges[i] {
            i -= 1;
        }
        while i + 1 < n && x >= self.bin_edges[i + 1] {
            i += 1;
        }
        Some(i)
    }

    /// Density of the bin containing `x`, zero outside the histogram.
    pub fn density_at(&self, x: T) -> T {
        self.bin_of(x).map_or(T::zero(), |i| self.densities[i])
    }

    pub fn total_mass(&self) -> T {
        (0..self.n_bins()).map(|i| self.densities[i] * self.width(i)).sum()
    }
}

/// `n_bins` equal-width bins spanning `[0, max]`, normalized to unit area.
/// The maximum sample lands in the last bin.
pub fn make_histogram<T: Scalar>(data: &DeviationDataset<T>, n_bins: usize) -> Result<Histogram<T>, StatError> {
    if n_bins < 2 {
        return Err(StatError::TooFewBins);
    }
    if data.is_empty() {
        return Err(StatError::TooFewSamples { need: 1, got: 0 });
    }
    let max = data.max();
    // all-zero data still gets a usable grid
    let top = if max > T::zero() { max } else { T::one() };
    let nb = T::count(n_bins);
    let mut bin_edges: Vec<T> = (0..n_bins).map(|i| top * T::count(i) / nb).collect();
    bin_edges.push(top);

    let mut hist = Histogram {
        bin_edges,
        densities: vec![T::zero(); n_bins],
        counts: vec![0; n_bins],
    };
    for &x in data.samples() {
        let i = hist.bin_of(x).expect("samples lie in [0, max]");
        hist.counts[i] += 1;
    }
    let n = T::count(data.len());
    for i in 0..n_bins {
        hist.densities[i] = T::count(hist.counts[i]) / (n * hist.width(i));
    }
    Ok(hist)
}

/// Discrete Kullback–Leibler divergence `Σ P ln(P/Q)` between the empirical
/// bin masses of `data` and a model density integrated over the same bins
/// (midpoint rule). Both mass vectors get [`KLD_SMOOTHING`] added per bin and
/// are renormalized, so the result is finite and non-negative.
pub fn kld_empirical<T, F>(data: &DeviationDataset<T>, model_pdf: F, n_bins: usize) -> Result<T, StatError>
where
    T: Scalar,
    F: Fn(T) -> T,
{
    let hist = make_histogram(data, n_bins)?;
    let eps = T::lit(KLD_SMOOTHING);
    let n = T::count(data.len());
    let p: Vec<T> = hist.counts.iter().map(|&c| T::count(c) / n + eps).collect();
    let q: Vec<T> = (0..n_bins)
        .map(|i| {
            let mass = model_pdf(hist.midpoint(i)) * hist.width(i);
            if mass.is_finite() && mass > T::zero() {
                mass + eps
            } else {
                eps
            }
        })
        .collect();
    let p_sum: T = p.iter().copied().sum();
    let q_sum: T = q.iter().copied().sum();
    let d: T = p
        .iter()
        .zip(&q)
        .map(|(&pi, &qi)| {
            let pi = pi / p_sum;
            pi * (pi / (qi / q_sum)).ln()
        })
        .sum();
    // Gibbs: negative values are rounding only
    Ok(d.max(T::zero()))
}
