//! Wavefront routing: per-antenna last-RIS selection, breadth-first route
//! assembly back to the transmitter, and the resulting DoA deviations.

use serde::Serialize;
use thiserror::Error;

use crate::geometry::{ray_wall_point, RisMode, RisUnit, Vec3, UNIT_TOL};
use crate::scene_graph::{bfs_shortest_path, PweGraph, Scene, VertexKind};
use crate::Scalar;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RoutingError {
    #[error("wavefront has {got} DoAs but the array has {expected} antennas")]
    LengthMismatch { expected: usize, got: usize },
    #[error("DoA for antenna {antenna} is not a unit vector (norm = {norm})")]
    NotUnit { antenna: usize, norm: f64 },
    #[error("graph does not match scene ({0})")]
    GraphMismatch(&'static str),
}

/// Desired incoming DoA at each antenna, pointing from the antenna toward
/// the wave's source direction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WavefrontSpec<T> {
    pub doas: Vec<Vec3<T>>,
}

impl<T: Scalar> WavefrontSpec<T> {
    pub fn new(doas: Vec<Vec3<T>>) -> Self {
        Self { doas }
    }

    pub fn len(&self) -> usize {
        self.doas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.doas.is_empty()
    }

    /// Checks the DoA count against `antennas` and unit length within `tol`.
    pub fn validate(&self, antennas: usize, tol: T) -> Result<(), RoutingError> {
        if self.doas.len() != antennas {
            return Err(RoutingError::LengthMismatch {
                expected: antennas,
                got: self.doas.len(),
            });
        }
        match self.doas.iter().position(|d| !d.is_unit(tol)) {
            Some(antenna) => Err(RoutingError::NotUnit {
                antenna,
                norm: self.doas[antenna].norm().to_f64().unwrap_or(f64::NAN),
            }),
            None => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AntennaRoute<T> {
    pub antenna: usize,
    pub last_ris_id: usize,
    /// Vertex indices from the transmitter to the last RIS.
    pub path: Vec<usize>,
    pub realized_doa: Vec3<T>,
    pub phi_deg: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FailureReason {
    /// The desired ray leaves the receiver room without touching a wall.
    NoHit,
    /// No remaining RIS has line of sight to the antenna.
    NoCandidate,
    /// The selected RIS cannot be reached from the transmitter.
    Unreachable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RouteFailure {
    pub antenna: usize,
    pub reason: FailureReason,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RouteSet<T> {
    pub routes: Vec<AntennaRoute<T>>,
    pub failures: Vec<RouteFailure>,
}

impl<T: Scalar> RouteSet<T> {
    /// Codebook assignment after routing: every RIS on some route steers,
    /// the rest absorb. Returned as `(ris id, mode)` in ascending id order.
    pub fn ris_modes(&self, graph: &PweGraph<T>) -> Vec<(usize, RisMode)> {
        let mut steering = vec![false; graph.len()];
        for r in &self.routes {
            for &v in &r.path {
                steering[v] = true;
            }
        }
        (0..graph.len())
            .filter_map(|v| match graph.kind(v) {
                VertexKind::Ris(id) => Some((
                    id,
                    if steering[v] {
                        RisMode::BeamSteering
                    } else {
                        RisMode::Absorption
                    },
                )),
                _ => None,
            })
            .collect()
    }
}

/// Angle in degrees between two unit vectors.
///
/// Evaluated as `atan2(|a × b|, a · b)`, which equals `acos(a · b)` for unit
/// vectors but stays accurate near 0° and 180°, where `acos` of a rounded
/// dot product is off by up to about 1e-6°.
pub fn deviation_angle<T: Scalar>(desired: Vec3<T>, realized: Vec3<T>) -> T {
    let s = desired.cross(realized).norm();
    let c = desired.dot(realized);
    s.atan2(c).to_degrees()
}

/// Nearest candidate RIS center to `point` among those with line of sight
/// to antenna `antenna`. Ties go to the smallest RIS id.
pub fn select_last_ris<'a, T, I>(
    point: Vec3<T>,
    candidates: I,
    antenna: usize,
    graph: &PweGraph<T>,
) -> Option<&'a RisUnit<T>>
where
    T: Scalar,
    I: IntoIterator<Item = &'a RisUnit<T>>,
{
    let ant_v = graph.antenna_vertex(antenna);
    candidates
        .into_iter()
        .filter(|r| graph.ris_vertex(r.id).is_some_and(|rv| graph.has_edge(ant_v, rv)))
        .map(|r| (r.center.distance(point), r))
        .min_by(|(da, ra), (db, rb)| {
            da.partial_cmp(db)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(ra.id.cmp(&rb.id))
        })
        .map(|(_, r)| r)
}

/// Routes a desired wavefront onto the receiver array.
///
/// Antennas are handled in index order. Each one takes the nearest free RIS
/// (with line of sight) to where its desired ray meets the receiver room's
/// walls; that RIS is then unavailable to later antennas. Intermediate hops
/// are found by breadth-first search from the chosen RIS to the
/// transmitter, never relaying through antennas. Per-antenna problems are
/// recorded in `failures`.
pub fn get_routes<T: Scalar>(
    scene: &Scene<T>,
    graph: &PweGraph<T>,
    spec: &WavefrontSpec<T>,
) -> Result<RouteSet<T>, RoutingError> {
    let m = scene.rx.len();
    spec.validate(m, T::lit(UNIT_TOL).max(T::epsilon() * T::lit(16.0)))?;
    if graph.antenna_count() != m || graph.ris_count() != scene.ris_units.len() {
        return Err(RoutingError::GraphMismatch("vertex counts differ"));
    }
    let walls = scene.receiver_walls();
    let mut available = vec![true; scene.ris_units.len()];
    let mut routes = Vec::with_capacity(m);
    let mut failures = Vec::new();

    for (i, (&ant, &doa)) in scene.rx.antennas.iter().zip(&spec.doas).enumerate() {
        let fail = |reason| RouteFailure { antenna: i, reason };
        let Some(hit) = ray_wall_point(ant, doa, &walls) else {
            failures.push(fail(FailureReason::NoHit));
            continue;
        };
        let pool = scene
            .ris_units
            .iter()
            .zip(&available)
            .filter(|(_, &free)| free)
            .map(|(r, _)| r);
        let Some(last) = select_last_ris(hit.point, pool, i, graph) else {
            failures.push(fail(FailureReason::NoCandidate));
            continue;
        };
        let k = scene
            .ris_units
            .binary_search_by_key(&last.id, |r| r.id)
            .expect("selected RIS comes from the scene");
        available[k] = false;

        let last_v = 1 + k;
        let Some(mut path) = bfs_shortest_path(graph, last_v, PweGraph::<T>::TX, |v| graph.is_antenna(v)) else {
            failures.push(fail(FailureReason::Unreachable));
            continue;
        };
        path.reverse();

        let realized = (last.center - ant)
            .normalized()
            .expect("RIS center differs from antenna position");
        routes.push(AntennaRoute {
            antenna: i,
            last_ris_id: last.id,
            path,
            realized_doa: realized,
            phi_deg: deviation_angle(doa, realized),
        });
    }
    Ok(RouteSet { routes, failures })
}
