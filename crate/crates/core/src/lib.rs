//! Wavefront copying in a programmable wireless environment.
//!
//! A desired wavefront (one direction of arrival per receiver antenna) is
//! reproduced by steering a transmitter's signal through wall-mounted RIS
//! units. Because RIS units sit on a fixed grid, the realized arrival
//! directions deviate from the desired ones; this crate routes wavefronts,
//! measures those deviations, and fits Gamma and Rayleigh models to them.
//!
//! The geometry, graph, routing and fitting code is generic over
//! [`Scalar`] (`f32` or `f64`). The Monte-Carlo [`experiment`] engine works
//! in `f64`; the aliases below name the `f64` instantiations.

pub mod experiment;
pub mod geometry;
pub mod routing;
mod scalar;
pub mod scene_graph;
pub mod statfit;

pub use scalar::Scalar;

pub type Vec3 = geometry::Vec3<f64>;
pub type WallPlane = geometry::WallPlane<f64>;
pub type Opening = geometry::Opening<f64>;
pub type RisUnit = geometry::RisUnit<f64>;
pub type AntennaArray = geometry::AntennaArray<f64>;
pub type Scene = scene_graph::Scene<f64>;
pub type PweGraph = scene_graph::PweGraph<f64>;
pub type WavefrontSpec = routing::WavefrontSpec<f64>;
pub type RouteSet = routing::RouteSet<f64>;
pub type AntennaRoute = routing::AntennaRoute<f64>;
pub type DeviationDataset = statfit::DeviationDataset<f64>;
pub type GammaFit = statfit::GammaFit<f64>;
pub type RayleighFit = statfit::RayleighFit<f64>;
pub type Histogram = statfit::Histogram<f64>;
