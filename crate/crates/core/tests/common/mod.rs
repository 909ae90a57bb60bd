#![allow(dead_code)]

use wavefront::geometry::{tile_wall, AntennaArray, RisMode, RisUnit, Vec3, WallPlane};
use wavefront::scene_graph::{Room, Scene};

pub type V = Vec3<f64>;

pub fn v(x: f64, y: f64, z: f64) -> V {
    V::new(x, y, z)
}

/// Axis-aligned box with inward normals. Ids: x0, x1, y0, y1, floor, ceiling.
pub fn box_walls(first_id: usize, lo: [f64; 3], hi: [f64; 3]) -> Vec<WallPlane<f64>> {
    let c = [0.5 * (lo[0] + hi[0]), 0.5 * (lo[1] + hi[1]), 0.5 * (lo[2] + hi[2])];
    let h = [0.5 * (hi[0] - lo[0]), 0.5 * (hi[1] - lo[1]), 0.5 * (hi[2] - lo[2])];
    let ex = v(1., 0., 0.);
    let ey = v(0., 1., 0.);
    let ez = v(0., 0., 1.);
    vec![
        WallPlane::new(first_id, v(lo[0], c[1], c[2]), ex, ey, h[1], h[2]).unwrap(),
        WallPlane::new(first_id + 1, v(hi[0], c[1], c[2]), -ex, ey, h[1], h[2]).unwrap(),
        WallPlane::new(first_id + 2, v(c[0], lo[1], c[2]), ey, ex, h[0], h[2]).unwrap(),
        WallPlane::new(first_id + 3, v(c[0], hi[1], c[2]), -ey, ex, h[0], h[2]).unwrap(),
        WallPlane::new(first_id + 4, v(c[0], c[1], lo[2]), ez, ex, h[0], h[1]).unwrap(),
        WallPlane::new(first_id + 5, v(c[0], c[1], hi[2]), -ez, ex, h[0], h[1]).unwrap(),
    ]
}

pub fn ris_at(id: usize, wall: &WallPlane<f64>, u: f64, w: f64, side: f64) -> RisUnit<f64> {
    RisUnit {
        id,
        wall_id: wall.id,
        center: wall.point_at(u, w),
        normal: wall.normal,
        side,
        mode: RisMode::Diffusion,
    }
}

/// A 4 m × 4 m × 3 m room with every wall except the floor tiled at `d_r`,
/// the transmitter near one corner and an `m × m` upward-facing array.
pub fn tiled_room(d_r: f64, m: usize, rx_center: V) -> Scene<f64> {
    let walls = box_walls(0, [0., 0., 0.], [4., 4., 3.]);
    let mut units = Vec::new();
    for w in walls.iter().filter(|w| w.id != 4) {
        let tiles = tile_wall(w, d_r, 0.0, &[], units.len()).unwrap();
        units.extend(tiles);
    }
    let rx = AntennaArray::planar(rx_center, v(0., 0., 1.), v(1., 0., 0.), m, m, 0.05).unwrap();
    let room = Room {
        wall_ids: (0..6).collect(),
    };
    Scene::new(walls, vec![], units, v(0.5, 0.5, 1.5), rx, vec![room], 0).unwrap()
}

/// Rotation matrix from a unit quaternion `(w, x, y, z)`.
pub fn rotation(q: [f64; 4]) -> [[f64; 3]; 3] {
    let n = q.iter().map(|c| c * c).sum::<f64>().sqrt();
    let [w, x, y, z] = q.map(|c| c / n);
    [
        [1. - 2. * (y * y + z * z), 2. * (x * y - w * z), 2. * (x * z + w * y)],
        [2. * (x * y + w * z), 1. - 2. * (x * x + z * z), 2. * (y * z - w * x)],
        [2. * (x * z - w * y), 2. * (y * z + w * x), 1. - 2. * (x * x + y * y)],
    ]
}

pub fn rotate(r: &[[f64; 3]; 3], p: V) -> V {
    v(
        r[0][0] * p.x + r[0][1] * p.y + r[0][2] * p.z,
        r[1][0] * p.x + r[1][1] * p.y + r[1][2] * p.z,
        r[2][0] * p.x + r[2][1] * p.y + r[2][2] * p.z,
    )
}

/// The same scene after a global rotation about the origin.
pub fn rotate_scene(scene: &Scene<f64>, r: &[[f64; 3]; 3]) -> Scene<f64> {
    let walls = scene
        .walls
        .iter()
        .map(|w| {
            WallPlane::new(
                w.id,
                rotate(r, w.p0),
                rotate(r, w.normal).normalized().unwrap(),
                rotate(r, w.u_axis).normalized().unwrap(),
                w.u_extent,
                w.v_extent,
            )
            .unwrap()
        })
        .collect();
    let units = scene
        .ris_units
        .iter()
        .map(|u| RisUnit {
            center: rotate(r, u.center),
            normal: rotate(r, u.normal),
            ..u.clone()
        })
        .collect();
    let rx = AntennaArray {
        antennas: scene.rx.antennas.iter().map(|&a| rotate(r, a)).collect(),
        boresight: rotate(r, scene.rx.boresight),
        ..scene.rx.clone()
    };
    Scene::new(
        walls,
        scene.openings.clone(),
        units,
        rotate(r, scene.tx),
        rx,
        scene.rooms.clone(),
        scene.rx_room,
    )
    .unwrap()
}
