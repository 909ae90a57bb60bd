//! 3-D primitives for the room model: vectors, bounded wall planes, RIS
//! tiling, receiver arrays, and the ray/segment predicates built on them.
//!
//! All lengths are meters. Wall membership uses an inclusive slack of
//! [`LENGTH_SLACK`] so that points produced by floating point arithmetic on
//! an edge still count as on the wall.

use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::Serialize;
use thiserror::Error;

use crate::Scalar;

/// Inclusive slack used by in-extent tests and endpoint exclusion (meters).
pub const LENGTH_SLACK: f64 = 1e-9;
/// Below this `|dir · n|` a ray or segment is treated as parallel to a plane.
pub const PARALLEL_EPS: f64 = 1e-12;
/// Allowed deviation from unit length for direction vectors.
pub const UNIT_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("{what} must be a unit vector (norm = {norm})")]
    NotUnit { what: &'static str, norm: f64 },
    #[error("wall {id}: normal and in-plane axes are not orthonormal")]
    NotOrthonormal { id: usize },
    #[error("wall {id}: extents must be positive")]
    BadExtent { id: usize },
    #[error("RIS side must be positive, got {0}")]
    BadSide(f64),
    #[error("margin must be non-negative, got {0}")]
    BadMargin(f64),
    #[error("antenna array needs rows, cols >= 1 and spacing > 0")]
    BadArray,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Vec3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Scalar> Vec3<T> {
    pub const fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero())
    }

    pub fn dot(self, o: Self) -> T {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Self) -> Self {
        Self::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm(self) -> T {
        self.dot(self).sqrt()
    }

    pub fn distance(self, o: Self) -> T {
        (self - o).norm()
    }

    /// Unit vector in the same direction; `None` for the zero vector.
    pub fn normalized(self) -> Option<Self> {
        let n = self.norm();
        if n > T::zero() && n.is_finite() {
            Some(self / n)
        } else {
            None
        }
    }

    pub fn is_unit(self, tol: T) -> bool {
        (self.norm() - T::one()).abs() <= tol
    }

    pub fn to_array(self) -> [T; 3] {
        [self.x, self.y, self.z]
    }

    pub fn from_array(a: [T; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    /// Any unit vector perpendicular to `self` (which must be nonzero).
    pub fn any_perpendicular(self) -> Self {
        let ax = self.x.abs();
        let ay = self.y.abs();
        let az = self.z.abs();
        let helper = if ax <= ay && ax <= az {
            Self::new(T::one(), T::zero(), T::zero())
        } else if ay <= az {
            Self::new(T::zero(), T::one(), T::zero())
        } else {
            Self::new(T::zero(), T::zero(), T::one())
        };
        self.cross(helper)
            .normalized()
            .expect("nonzero input has a perpendicular")
    }
}

impl<T: Scalar> Add for Vec3<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl<T: Scalar> Sub for Vec3<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl<T: Scalar> Mul<T> for Vec3<T> {
    type Output = Self;
    fn mul(self, s: T) -> Self {
        Self::new(self.x * s, self.y * s, self.z * s)
    }
}

impl<T: Scalar> Div<T> for Vec3<T> {
    type Output = Self;
    fn div(self, s: T) -> Self {
        Self::new(self.x / s, self.y / s, self.z / s)
    }
}

impl<T: Scalar> Neg for Vec3<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }
}

/// A bounded rectangular wall: the plane `(p - p0) · n = 0` restricted to
/// `|u| <= u_extent`, `|v| <= v_extent` in the wall's own frame centered on
/// `p0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WallPlane<T> {
    pub id: usize,
    pub p0: Vec3<T>,
    pub normal: Vec3<T>,
    pub u_axis: Vec3<T>,
    pub v_axis: Vec3<T>,
    pub u_extent: T,
    pub v_extent: T,
}

impl<T: Scalar> WallPlane<T> {
    /// Builds a wall centered on `p0`. `v_axis` is taken as `normal × u_axis`.
    pub fn new(
        id: usize,
        p0: Vec3<T>,
        normal: Vec3<T>,
        u_axis: Vec3<T>,
        u_extent: T,
        v_extent: T,
    ) -> Result<Self, GeometryError> {
        let tol = T::lit(UNIT_TOL);
        for (what, v) in [("wall normal", normal), ("wall u axis", u_axis)] {
            if !v.is_unit(tol) {
                return Err(GeometryError::NotUnit {
                    what,
                    norm: v.norm().to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        if normal.dot(u_axis).abs() > tol {
            return Err(GeometryError::NotOrthonormal { id });
        }
        if !(u_extent > T::zero() && v_extent > T::zero()) {
            return Err(GeometryError::BadExtent { id });
        }
        let v_axis = normal.cross(u_axis);
        Ok(Self {
            id,
            p0,
            normal,
            u_axis,
            v_axis,
            u_extent,
            v_extent,
        })
    }

    /// In-plane coordinates of `p` relative to `p0`.
    pub fn local(&self, p: Vec3<T>) -> (T, T) {
        let d = p - self.p0;
        (d.dot(self.u_axis), d.dot(self.v_axis))
    }

    pub fn point_at(&self, u: T, v: T) -> Vec3<T> {
        self.p0 + self.u_axis * u + self.v_axis * v
    }

    pub fn signed_distance(&self, p: Vec3<T>) -> T {
        (p - self.p0).dot(self.normal)
    }

    pub fn contains_local(&self, u: T, v: T) -> bool {
        let slack = T::lit(LENGTH_SLACK);
        u.abs() <= self.u_extent + slack && v.abs() <= self.v_extent + slack
    }

    /// True when `p` lies within the wall rectangle once projected onto it.
    pub fn contains(&self, p: Vec3<T>) -> bool {
        let (u, v) = self.local(p);
        self.contains_local(u, v)
    }
}

/// Axis-aligned rectangular aperture (e.g. a doorway) in a wall's local
/// `(u, v)` frame.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Opening<T> {
    pub wall_id: usize,
    pub u_center: T,
    pub v_center: T,
    pub u_half: T,
    pub v_half: T,
}

impl<T: Scalar> Opening<T> {
    pub fn contains_local(&self, u: T, v: T) -> bool {
        let slack = T::lit(LENGTH_SLACK);
        (u - self.u_center).abs() <= self.u_half + slack && (v - self.v_center).abs() <= self.v_half + slack
    }

    /// Positive-area overlap with the square of side `side` centered on `(u, v)`.
    fn overlaps_square(&self, u: T, v: T, side: T) -> bool {
        let half = side / T::lit(2.0);
        let slack = T::lit(LENGTH_SLACK);
        (u - self.u_center).abs() < half + self.u_half - slack && (v - self.v_center).abs() < half + self.v_half - slack
    }
}

/// RIS functionality from the codebook.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RisMode {
    Diffusion,
    BeamSteering,
    Absorption,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RisUnit<T> {
    pub id: usize,
    pub wall_id: usize,
    pub center: Vec3<T>,
    pub normal: Vec3<T>,
    /// Side length `d_r` of the square unit.
    pub side: T,
    pub mode: RisMode,
}

/// Receiver antenna array. Antenna `r * cols + c` sits at row `r`, column `c`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AntennaArray<T> {
    pub antennas: Vec<Vec3<T>>,
    pub rows: usize,
    pub cols: usize,
    pub spacing: T,
    pub boresight: Vec3<T>,
}

impl<T: Scalar> AntennaArray<T> {
    /// A `rows × cols` planar grid centered on `center`, lying in the plane
    /// perpendicular to `boresight`. `col_hint` fixes the column direction
    /// (it is projected into the array plane).
    pub fn planar(
        center: Vec3<T>,
        boresight: Vec3<T>,
        col_hint: Vec3<T>,
        rows: usize,
        cols: usize,
        spacing: T,
    ) -> Result<Self, GeometryError> {
        if rows == 0 || cols == 0 || !(spacing > T::zero()) {
            return Err(GeometryError::BadArray);
        }
        let boresight = boresight.normalized().ok_or(GeometryError::BadArray)?;
        let col_axis = (col_hint - boresight * col_hint.dot(boresight))
            .normalized()
            .unwrap_or_else(|| boresight.any_perpendicular());
        let row_axis = boresight.cross(col_axis);
        let two = T::lit(2.0);
        let c_off = T::count(cols - 1) / two;
        let r_off = T::count(rows - 1) / two;
        let antennas = (0..rows)
            .flat_map(|r| (0..cols).map(move |c| (r, c)))
            .map(|(r, c)| {
                center + col_axis * ((T::count(c) - c_off) * spacing) + row_axis * ((T::count(r) - r_off) * spacing)
            })
            .collect();
        Ok(Self {
            antennas,
            rows,
            cols,
            spacing,
            boresight,
        })
    }

    /// `M`, the number of antennas.
    pub fn len(&self) -> usize {
        self.antennas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.antennas.is_empty()
    }
}

/// Scaling factor `d` of the ray `ant + d·doa` at its crossing with the
/// wall plane, or `None` when the ray is parallel to the plane or the
/// crossing lies behind the antenna.
pub fn ray_wall_scale<T: Scalar>(ant: Vec3<T>, doa: Vec3<T>, wall: &WallPlane<T>) -> Option<T> {
    let denom = doa.dot(wall.normal);
    if denom.abs() < T::lit(PARALLEL_EPS) {
        return None;
    }
    let d = (wall.p0 - ant).dot(wall.normal) / denom;
    (d > T::zero()).then_some(d)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WallHit<T> {
    pub point: Vec3<T>,
    pub wall_id: usize,
    pub scale: T,
}

/// First wall (in ascending id order) whose rectangle contains the forward
/// crossing of the ray `ant + d·doa`. `None` means the ray leaves the room
/// model.
pub fn ray_wall_point<T: Scalar>(ant: Vec3<T>, doa: Vec3<T>, walls: &[WallPlane<T>]) -> Option<WallHit<T>> {
    let mut order: Vec<&WallPlane<T>> = walls.iter().collect();
    order.sort_by_key(|w| w.id);
    order.into_iter().find_map(|wall| {
        let scale = ray_wall_scale(ant, doa, wall)?;
        let point = ant + doa * scale;
        wall.contains(point).then_some(WallHit {
            point,
            wall_id: wall.id,
            scale,
        })
    })
}

/// Walls plus their openings, grouped for repeated line-of-sight queries.
#[derive(Debug, Clone)]
pub struct Occluders<'a, T> {
    walls: Vec<(&'a WallPlane<T>, Vec<&'a Opening<T>>)>,
}

impl<'a, T: Scalar> Occluders<'a, T> {
    pub fn new(walls: &'a [WallPlane<T>], openings: &'a [Opening<T>]) -> Self {
        let walls = walls
            .iter()
            .map(|w| {
                let holes = openings.iter().filter(|o| o.wall_id == w.id).collect();
                (w, holes)
            })
            .collect();
        Self { walls }
    }

    /// Line-of-sight test for the open segment `(a, b)`.
    pub fn clear(&self, a: Vec3<T>, b: Vec3<T>) -> bool {
        let dir = b - a;
        let slack = T::lit(LENGTH_SLACK);
        let parallel = T::lit(PARALLEL_EPS);
        for (wall, holes) in &self.walls {
            let denom = dir.dot(wall.normal);
            if denom.abs() < parallel {
                continue;
            }
            let t = (wall.p0 - a).dot(wall.normal) / denom;
            if !(t > T::zero() && t < T::one()) {
                continue;
            }
            let p = a + dir * t;
            if p.distance(a) <= slack || p.distance(b) <= slack {
                continue;
            }
            let (u, v) = wall.local(p);
            if !wall.contains_local(u, v) {
                continue;
            }
            if holes.iter().any(|h| h.contains_local(u, v)) {
                continue;
            }
            return false;
        }
        true
    }
}

/// True iff the open segment `(a, b)` crosses no wall rectangle outside
/// that wall's openings. Crossings within [`LENGTH_SLACK`] of either
/// endpoint are ignored.
pub fn segment_clear<T: Scalar>(a: Vec3<T>, b: Vec3<T>, walls: &[WallPlane<T>], openings: &[Opening<T>]) -> bool {
    Occluders::new(walls, openings).clear(a, b)
}

/// Tiles `wall` with a centered regular grid of `d_r × d_r` units, keeping
/// `margin` clear of the edges and skipping units that overlap an opening on
/// this wall. Ids start at `first_id` and ascend row-major (rows along `v`).
pub fn tile_wall<T: Scalar>(
    wall: &WallPlane<T>,
    d_r: T,
    margin: T,
    openings: &[Opening<T>],
    first_id: usize,
) -> Result<Vec<RisUnit<T>>, GeometryError> {
    if !(d_r > T::zero()) || !d_r.is_finite() {
        return Err(GeometryError::BadSide(d_r.to_f64().unwrap_or(f64::NAN)));
    }
    if !(margin >= T::zero()) {
        return Err(GeometryError::BadMargin(margin.to_f64().unwrap_or(f64::NAN)));
    }
    let two = T::lit(2.0);
    // relative slack so that e.g. 3 m / 0.15 m yields 20 rather than 19
    let fit = |extent: T| -> usize {
        let usable = two * extent - two * margin;
        if usable <= T::zero() {
            return 0;
        }
        (usable / d_r + T::lit(1e-9)).floor().to_usize().unwrap_or(0)
    };
    let n_u = fit(wall.u_extent);
    let n_v = fit(wall.v_extent);
    let holes: Vec<&Opening<T>> = openings.iter().filter(|o| o.wall_id == wall.id).collect();

    let u0 = -T::count(n_u) * d_r / two;
    let v0 = -T::count(n_v) * d_r / two;
    let half = d_r / two;
    let mut units = Vec::with_capacity(n_u * n_v);
    for row in 0..n_v {
        let v = v0 + T::count(row) * d_r + half;
        for col in 0..n_u {
            let u = u0 + T::count(col) * d_r + half;
            if holes.iter().any(|h| h.overlaps_square(u, v, d_r)) {
                continue;
            }
            units.push(RisUnit {
                id: first_id + units.len(),
                wall_id: wall.id,
                center: wall.point_at(u, v),
                normal: wall.normal,
                side: d_r,
                mode: RisMode::Diffusion,
            });
        }
    }
    Ok(units)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    type V = Vec3<f64>;

    fn v(x: f64, y: f64, z: f64) -> V {
        V::new(x, y, z)
    }

    fn horizontal(id: usize, z: f64, up: bool) -> WallPlane<f64> {
        let n = if up { v(0., 0., 1.) } else { v(0., 0., -1.) };
        WallPlane::new(id, v(0., 0., z), n, v(1., 0., 0.), 10.0, 10.0).unwrap()
    }

    #[test]
    fn scale_axis_aligned() {
        let w = horizontal(0, 3.0, true);
        assert_eq!(ray_wall_scale(V::zero(), v(0., 0., 1.), &w), Some(3.0));
    }

    #[test]
    fn scale_parallel_is_none() {
        let w = horizontal(0, 3.0, true);
        assert_eq!(ray_wall_scale(V::zero(), v(1., 0., 0.), &w), None);
    }

    #[test]
    fn scale_oblique() {
        let w = horizontal(0, 4.0, true);
        let d = ray_wall_scale(v(1., 2., 0.), v(0., 0.6, 0.8), &w).unwrap();
        assert_abs_diff_eq!(d, 5.0, epsilon = 1e-12);
    }

    #[test]
    fn scale_behind_is_none() {
        let w = horizontal(0, -2.0, true);
        assert_eq!(ray_wall_scale(V::zero(), v(0., 0., 1.), &w), None);
    }

    #[test]
    fn scale_ignores_normal_sign() {
        let up = horizontal(0, 3.0, true);
        let down = horizontal(0, 3.0, false);
        let a = ray_wall_scale(V::zero(), v(0., 0., 1.), &up).unwrap();
        let b = ray_wall_scale(V::zero(), v(0., 0., 1.), &down).unwrap();
        assert_abs_diff_eq!(a, b, epsilon = 1e-15);
    }

    #[test]
    fn wall_rejects_non_orthonormal() {
        let err = WallPlane::new(3, V::zero(), v(0., 0., 1.), v(0., 0.6, 0.8), 1.0, 1.0);
        assert_eq!(err, Err(GeometryError::NotOrthonormal { id: 3 }));
        assert!(matches!(
            WallPlane::new(0, V::zero(), v(0., 0., 2.), v(1., 0., 0.), 1.0, 1.0),
            Err(GeometryError::NotUnit { .. })
        ));
        assert!(matches!(
            WallPlane::new(4, V::zero(), v(0., 0., 1.), v(1., 0., 0.), 0.0, 1.0),
            Err(GeometryError::BadExtent { id: 4 })
        ));
    }

    #[test]
    fn tile_counts() {
        let w = WallPlane::new(0, V::zero(), v(0., 1., 0.), v(1., 0., 0.), 2.0, 1.5).unwrap();
        assert_eq!(tile_wall(&w, 1.0, 0.0, &[], 0).unwrap().len(), 12);
        assert_eq!(tile_wall(&w, 0.5, 0.0, &[], 0).unwrap().len(), 48);
        assert_eq!(tile_wall(&w, 0.15, 0.0, &[], 0).unwrap().len(), 26 * 20);
        assert!(tile_wall(&w, 5.0, 0.0, &[], 0).unwrap().is_empty());
        assert!(tile_wall(&w, 1.0, 1.6, &[], 0).unwrap().is_empty());
    }

    #[test]
    fn tile_ids_row_major() {
        let w = WallPlane::new(0, V::zero(), v(0., 1., 0.), v(1., 0., 0.), 2.0, 1.5).unwrap();
        let units = tile_wall(&w, 1.0, 0.0, &[], 7).unwrap();
        let ids: Vec<usize> = units.iter().map(|u| u.id).collect();
        assert_eq!(ids, (7..19).collect::<Vec<_>>());
        // first row runs along u at the lowest v
        let (u0, v0) = w.local(units[0].center);
        let (u1, v1) = w.local(units[1].center);
        assert_abs_diff_eq!(v0, v1, epsilon = 1e-12);
        assert!(u1 > u0);
        assert_abs_diff_eq!(u0, -1.5, epsilon = 1e-12);
        assert_abs_diff_eq!(v0, -1.0, epsilon = 1e-12);
    }

    #[test]
    fn tile_rejects_bad_inputs() {
        let w = horizontal(0, 0.0, true);
        assert!(matches!(
            tile_wall(&w, 0.0, 0.0, &[], 0),
            Err(GeometryError::BadSide(_))
        ));
        assert!(matches!(
            tile_wall(&w, 1.0, -0.1, &[], 0),
            Err(GeometryError::BadMargin(_))
        ));
    }

    #[test]
    fn tile_with_doorway_matches_enumeration() {
        // 4 m × 3 m wall, doorway 1 m × 2 m centered horizontally, on the floor
        let w = WallPlane::new(0, V::zero(), v(0., 1., 0.), v(1., 0., 0.), 2.0, 1.5).unwrap();
        let door = Opening {
            wall_id: 0,
            u_center: 0.0,
            v_center: -0.5,
            u_half: 0.5,
            v_half: 1.0,
        };
        let units = tile_wall(&w, 0.5, 0.0, std::slice::from_ref(&door), 0).unwrap();
        // brute force: cell (i, j) spans [−2 + 0.5 i, −1.5 + 0.5 i] × [−1.5 + 0.5 j, −1 + 0.5 j]
        let mut expected = 0;
        for i in 0..8 {
            for j in 0..6 {
                let (ul, ur) = (-2.0 + 0.5 * i as f64, -1.5 + 0.5 * i as f64);
                let (vl, vr) = (-1.5 + 0.5 * j as f64, -1.0 + 0.5 * j as f64);
                let overlap_u = ur.min(0.5) - ul.max(-0.5);
                let overlap_v = vr.min(0.5) - vl.max(-1.5);
                if !(overlap_u > 0.0 && overlap_v > 0.0) {
                    expected += 1;
                }
            }
        }
        assert_eq!(expected, 48 - 8);
        assert_eq!(units.len(), expected);
    }

    #[test]
    fn ceiling_hit() {
        let ceiling = WallPlane::new(0, v(2.5, 2.5, 3.0), v(0., 0., -1.), v(1., 0., 0.), 2.5, 2.5).unwrap();
        let hit = ray_wall_point(v(2., 2., 1.5), v(0., 0., 1.), &[ceiling]).unwrap();
        assert_eq!(hit.wall_id, 0);
        assert_abs_diff_eq!(hit.point.x, 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(hit.point.y, 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(hit.point.z, 3.0, epsilon = 1e-12);
    }

    #[test]
    fn corner_boundary_is_inside() {
        let ceiling = WallPlane::new(0, v(0., 0., 2.0), v(0., 0., -1.), v(1., 0., 0.), 1.0, 1.0).unwrap();
        let doa = v(1., 1., 2.).normalized().unwrap();
        let hit = ray_wall_point(V::zero(), doa, &[ceiling]).unwrap();
        assert_abs_diff_eq!(hit.point.x, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(hit.point.y, 1.0, epsilon = 1e-12);
        let outside = v(1.0 + 1e-6, 1., 2.).normalized().unwrap();
        let ceiling = WallPlane::new(0, v(0., 0., 2.0), v(0., 0., -1.), v(1., 0., 0.), 1.0, 1.0).unwrap();
        assert!(ray_wall_point(V::zero(), outside, &[ceiling]).is_none());
    }

    #[test]
    fn first_hit_follows_ascending_id() {
        let near = horizontal(5, 1.0, true);
        let far = horizontal(2, 2.0, true);
        let hit = ray_wall_point(V::zero(), v(0., 0., 1.), &[near, far]).unwrap();
        assert_eq!(hit.wall_id, 2);
    }

    #[test]
    fn planar_array_layout() {
        let arr = AntennaArray::planar(v(1., 1., 1.), v(0., 0., 1.), v(1., 0., 0.), 2, 3, 0.1).unwrap();
        assert_eq!(arr.len(), 6);
        assert_abs_diff_eq!(arr.antennas[0].x, 0.9, epsilon = 1e-12);
        assert_abs_diff_eq!(arr.antennas[2].x, 1.1, epsilon = 1e-12);
        assert_abs_diff_eq!(arr.antennas[0].distance(arr.antennas[1]), 0.1, epsilon = 1e-12);
        assert_abs_diff_eq!(arr.antennas[0].distance(arr.antennas[3]), 0.1, epsilon = 1e-12);
        for a in &arr.antennas {
            assert_abs_diff_eq!(a.z, 1.0, epsilon = 1e-12);
        }
        assert_eq!(
            AntennaArray::planar(V::zero(), v(0., 0., 1.), v(1., 0., 0.), 0, 3, 0.1),
            Err(GeometryError::BadArray)
        );
    }

    #[test]
    fn generic_over_f32() {
        let w = WallPlane::<f32>::new(
            0,
            Vec3::new(0., 0., 4.),
            Vec3::new(0., 0., 1.),
            Vec3::new(1., 0., 0.),
            10.,
            10.,
        )
        .unwrap();
        let d = ray_wall_scale(Vec3::new(1., 2., 0.), Vec3::new(0., 0.6, 0.8), &w).unwrap();
        assert!((d - 5.0).abs() < 1e-5);
    }
}
