//! Gamma and Rayleigh models for deviation angles: densities,
//! maximum-likelihood fits, histograms and Kullback–Leibler scores.

mod divergence;
mod special;

use serde::Serialize;
use thiserror::Error;

use crate::Scalar;

pub use divergence::{kld_empirical, make_histogram, Histogram, DEFAULT_BINS, KLD_SMOOTHING};
pub use special::{digamma, ln_gamma, trigamma};

/// Floor applied to samples before taking logarithms in the Gamma fit.
pub const LOG_FLOOR: f64 = 1e-9;
/// Target residual of the Gamma shape equation at the returned root.
pub const ROOT_TOL: f64 = 1e-10;
/// Search interval for the Gamma shape.
pub const SHAPE_MIN: f64 = 1e-4;
pub const SHAPE_MAX: f64 = 1e4;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StatError {
    #[error("{what} is undefined at {value}")]
    Domain { what: &'static str, value: f64 },
    #[error("need at least {need} samples, got {got}")]
    TooFewSamples { need: usize, got: usize },
    #[error("sample {index} is negative or not finite")]
    BadSample { index: usize },
    #[error("samples are degenerate (all identical); the Gamma shape diverges")]
    DegenerateData,
    #[error("all samples are zero")]
    AllZero,
    #[error("invalid {name} parameter {value}")]
    BadParameter { name: &'static str, value: f64 },
    #[error("Gamma density diverges at x = 0 for shape {0} < 1")]
    DivergentDensity(f64),
    #[error("Gamma shape root lies outside [{SHAPE_MIN}, {SHAPE_MAX}]")]
    NoBracket,
    #[error("histogram needs at least 2 bins")]
    TooFewBins,
}

fn as_f64<T: Scalar>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// The `(d_r, M)` cell a dataset was collected in.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConfigTag<T> {
    pub d_r: T,
    pub m: usize,
}

/// Pooled deviation angles (degrees) for one configuration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeviationDataset<T> {
    samples: Vec<T>,
    tag: Option<ConfigTag<T>>,
}

impl<T: Scalar> DeviationDataset<T> {
    pub fn new(samples: Vec<T>, tag: Option<ConfigTag<T>>) -> Result<Self, StatError> {
        if let Some(index) = samples.iter().position(|x| !(*x >= T::zero()) || !x.is_finite()) {
            return Err(StatError::BadSample { index });
        }
        Ok(Self { samples, tag })
    }

    pub fn samples(&self) -> &[T] {
        &self.samples
    }

    pub fn tag(&self) -> Option<ConfigTag<T>> {
        self.tag
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn mean(&self) -> T {
        self.samples.iter().copied().sum::<T>() / T::count(self.samples.len())
    }

    pub fn max(&self) -> T {
        self.samples.iter().copied().fold(T::zero(), T::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GammaFit<T> {
    pub k_hat: T,
    pub theta_hat: T,
    pub log_likelihood: T,
}

impl<T: Scalar> GammaFit<T> {
    pub fn pdf(&self, x: T) -> T {
        gamma_pdf(x, self.k_hat, self.theta_hat).unwrap_or_else(|_| T::infinity())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RayleighFit<T> {
    pub sigma_hat: T,
    pub log_likelihood: T,
}

impl<T: Scalar> RayleighFit<T> {
    pub fn pdf(&self, x: T) -> T {
        rayleigh_pdf(x, self.sigma_hat)
    }
}

fn check_param<T: Scalar>(name: &'static str, v: T) -> Result<(), StatError> {
    if v > T::zero() && v.is_finite() {
        Ok(())
    } else {
        Err(StatError::BadParameter { name, value: as_f64(v) })
    }
}

/// ln f(x; k, θ) for x > 0.
fn gamma_ln_pdf<T: Scalar>(x: T, k: T, theta: T, ln_gamma_k: T) -> T {
    (k - T::one()) * x.ln() - x / theta - ln_gamma_k - k * theta.ln()
}

/// Gamma density `x^(k-1) e^(-x/θ) / (Γ(k) θ^k)` with shape `k` and scale `θ`.
/// Zero for `x < 0`; at `x = 0` it is `1/θ` for `k = 1`, zero for `k > 1`,
/// and an error for `k < 1` where the density diverges.
pub fn gamma_pdf<T: Scalar>(x: T, k: T, theta: T) -> Result<T, StatError> {
    check_param("shape", k)?;
    check_param("scale", theta)?;
    if x < T::zero() {
        return Ok(T::zero());
    }
    if x == T::zero() {
        return if k == T::one() {
            Ok(theta.recip())
        } else if k > T::one() {
            Ok(T::zero())
        } else {
            Err(StatError::DivergentDensity(as_f64(k)))
        };
    }
    Ok(gamma_ln_pdf(x, k, theta, ln_gamma(k)?).exp())
}

/// Rayleigh density `(x/σ²) e^(-x²/(2σ²))`; zero for `x <= 0`, NaN for
/// non-positive `σ`.
pub fn rayleigh_pdf<T: Scalar>(x: T, sigma: T) -> T {
    if !(sigma > T::zero()) {
        return T::nan();
    }
    if x <= T::zero() {
        return T::zero();
    }
    let s2 = sigma * sigma;
    x / s2 * (-(x * x) / (T::lit(2.0) * s2)).exp()
}

/// Summary statistics entering the Gamma shape equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaMoments<T> {
    pub mean: T,
    /// Mean of `ln(max(x, LOG_FLOOR))`.
    pub mean_ln: T,
}

impl<T: Scalar> GammaMoments<T> {
    pub fn of(samples: &[T]) -> Self {
        let n = T::count(samples.len());
        let floor = T::lit(LOG_FLOOR);
        Self {
            mean: samples.iter().copied().sum::<T>() / n,
            mean_ln: samples.iter().map(|&x| x.max(floor).ln()).sum::<T>() / n,
        }
    }

    /// `ln(k) − ψ(k) − ln(mean) + mean_ln`; zero at the MLE shape.
    pub fn shape_residual(&self, k: T) -> Result<T, StatError> {
        Ok(k.ln() - digamma(k)? - self.mean.ln() + self.mean_ln)
    }
}

/// Maximum-likelihood Gamma fit.
///
/// The shape solves `ln k − ψ(k) = ln(mean) − mean(ln x)` and the scale is
/// `mean / k`. Zeros are floored at [`LOG_FLOOR`] wherever a logarithm is
/// taken, including the reported log-likelihood.
pub fn fit_gamma_mle<T: Scalar>(data: &DeviationDataset<T>) -> Result<GammaFit<T>, StatError> {
    let xs = data.samples();
    if xs.len() < 2 {
        return Err(StatError::TooFewSamples { need: 2, got: xs.len() });
    }
    if xs.iter().all(|&x| x == xs[0]) {
        return Err(StatError::DegenerateData);
    }
    let moments = GammaMoments::of(xs);
    let target = moments.mean.ln() - moments.mean_ln;
    if !(target > T::zero()) {
        return Err(StatError::DegenerateData);
    }

    let n = T::count(xs.len());
    let var = xs.iter().map(|&x| (x - moments.mean).powi(2)).sum::<T>() / n;
    let lo_lim = T::lit(SHAPE_MIN);
    let hi_lim = T::lit(SHAPE_MAX);
    let k0 = (moments.mean * moments.mean / var).max(lo_lim).min(hi_lim);
    let g = |k: T| moments.shape_residual(k);

    // g is strictly decreasing in k; expand geometrically from k0 until the sign changes
    let two = T::lit(2.0);
    let (mut lo, mut hi) = (k0, k0);
    let g0 = g(k0)?;
    if g0 > T::zero() {
        while g(hi)? > T::zero() {
            if hi >= hi_lim {
                return Err(StatError::NoBracket);
            }
            lo = hi;
            hi = (hi * two).min(hi_lim);
        }
    } else {
        while g(lo)? < T::zero() {
            if lo <= lo_lim {
                return Err(StatError::NoBracket);
            }
            hi = lo;
            lo = (lo / two).max(lo_lim);
        }
    }

    let k_hat = solve_shape(&g, lo, hi)?;
    let theta_hat = moments.mean / k_hat;
    let lg = ln_gamma(k_hat)?;
    let floor = T::lit(LOG_FLOOR);
    let log_likelihood = xs
        .iter()
        .map(|&x| gamma_ln_pdf(x.max(floor), k_hat, theta_hat, lg))
        .sum();
    Ok(GammaFit {
        k_hat,
        theta_hat,
        log_likelihood,
    })
}

/// Safeguarded Newton on a decreasing function with `g(lo) >= 0 >= g(hi)`.
fn solve_shape<T: Scalar, G>(g: &G, mut lo: T, mut hi: T) -> Result<T, StatError>
where
    G: Fn(T) -> Result<T, StatError>,
{
    let tol = T::lit(ROOT_TOL);
    let half = T::lit(0.5);
    let mut k = half * (lo + hi);
    let mut best = (T::infinity(), k);
    for _ in 0..500 {
        let gk = g(k)?;
        if gk.abs() < best.0 {
            best = (gk.abs(), k);
        }
        if gk.abs() <= tol {
            return Ok(k);
        }
        if gk > T::zero() {
            lo = k;
        } else {
            hi = k;
        }
        let slope = k.recip() - trigamma(k)?;
        let newton = k - gk / slope;
        let next = if newton > lo && newton < hi && slope < T::zero() {
            newton
        } else {
            half * (lo + hi)
        };
        if next == k || hi - lo <= T::epsilon() * hi {
            break;
        }
        k = next;
    }
    Ok(best.1)
}

/// Maximum-likelihood Rayleigh fit, `σ = sqrt(Σx² / 2N)`.
pub fn fit_rayleigh_mle<T: Scalar>(data: &DeviationDataset<T>) -> Result<RayleighFit<T>, StatError> {
    let xs = data.samples();
    if xs.is_empty() {
        return Err(StatError::TooFewSamples { need: 1, got: 0 });
    }
    let n = T::count(xs.len());
    let sum_sq: T = xs.iter().map(|&x| x * x).sum();
    if sum_sq == T::zero() {
        return Err(StatError::AllZero);
    }
    let sigma_hat = (sum_sq / (T::lit(2.0) * n)).sqrt();
    let ln_s2 = T::lit(2.0) * sigma_hat.ln();
    let two_s2 = T::lit(2.0) * sigma_hat * sigma_hat;
    let log_likelihood = xs.iter().map(|&x| x.ln() - ln_s2 - x * x / two_s2).sum();
    Ok(RayleighFit {
        sigma_hat,
        log_likelihood,
    })
}
