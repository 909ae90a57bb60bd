//! Scene description and the line-of-sight graph over transmitter, RIS
//! units and receiver antennas.

use std::collections::VecDeque;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::geometry::{AntennaArray, Occluders, Opening, RisUnit, Vec3, WallPlane, LENGTH_SLACK};
use crate::Scalar;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SceneError {
    #[error("scene has no RIS units")]
    NoRis,
    #[error("duplicate wall id {0}")]
    DuplicateWall(usize),
    #[error("duplicate RIS id {0}")]
    DuplicateRis(usize),
    #[error("RIS {ris} refers to unknown wall {wall}")]
    UnknownWall { ris: usize, wall: usize },
    #[error("RIS {0} does not lie on its host wall")]
    RisOffWall(usize),
    #[error("RIS {0} footprint exceeds its host wall")]
    RisOutsideWall(usize),
    #[error("room {room} refers to unknown wall {wall}")]
    RoomUnknownWall { room: usize, wall: usize },
    #[error("transmitter is not strictly inside any room")]
    TxOutside,
    #[error("antenna {0} is not strictly inside the receiver room")]
    AntennaOutside(usize),
    #[error("receiver room index {0} out of range")]
    BadReceiverRoom(usize),
    #[error("transmitter has no line of sight to any RIS")]
    TxIsolated,
}

/// A convex room bounded by walls whose normals point inward.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Room {
    pub wall_ids: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Scene<T> {
    pub walls: Vec<WallPlane<T>>,
    pub openings: Vec<Opening<T>>,
    /// Sorted by ascending id.
    pub ris_units: Vec<RisUnit<T>>,
    pub tx: Vec3<T>,
    pub rx: AntennaArray<T>,
    pub rooms: Vec<Room>,
    /// Index into `rooms` of the room holding the receiver array.
    pub rx_room: usize,
}

impl<T: Scalar> Scene<T> {
    pub fn new(
        walls: Vec<WallPlane<T>>,
        openings: Vec<Opening<T>>,
        mut ris_units: Vec<RisUnit<T>>,
        tx: Vec3<T>,
        rx: AntennaArray<T>,
        rooms: Vec<Room>,
        rx_room: usize,
    ) -> Result<Self, SceneError> {
        ris_units.sort_by_key(|r| r.id);
        let scene = Self {
            walls,
            openings,
            ris_units,
            tx,
            rx,
            rooms,
            rx_room,
        };
        scene.validate()?;
        Ok(scene)
    }

    pub fn wall(&self, id: usize) -> Option<&WallPlane<T>> {
        self.walls.iter().find(|w| w.id == id)
    }

    fn validate(&self) -> Result<(), SceneError> {
        let mut ids: Vec<usize> = self.walls.iter().map(|w| w.id).collect();
        ids.sort_unstable();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(SceneError::DuplicateWall(w[0]));
        }
        if self.ris_units.is_empty() {
            return Err(SceneError::NoRis);
        }
        if let Some(w) = self.ris_units.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(SceneError::DuplicateRis(w[0].id));
        }
        let slack = T::lit(LENGTH_SLACK);
        let half = T::lit(0.5);
        for r in &self.ris_units {
            let wall = self.wall(r.wall_id).ok_or(SceneError::UnknownWall {
                ris: r.id,
                wall: r.wall_id,
            })?;
            if wall.signed_distance(r.center).abs() > slack {
                return Err(SceneError::RisOffWall(r.id));
            }
            let (u, v) = wall.local(r.center);
            let h = r.side * half;
            if !(r.side > T::zero()) || u.abs() + h > wall.u_extent + slack || v.abs() + h > wall.v_extent + slack {
                return Err(SceneError::RisOutsideWall(r.id));
            }
        }
        for (i, room) in self.rooms.iter().enumerate() {
            if let Some(&w) = room.wall_ids.iter().find(|&&w| self.wall(w).is_none()) {
                return Err(SceneError::RoomUnknownWall { room: i, wall: w });
            }
        }
        if self.rx_room >= self.rooms.len() {
            return Err(SceneError::BadReceiverRoom(self.rx_room));
        }
        if !(0..self.rooms.len()).any(|i| self.inside_room(i, self.tx)) {
            return Err(SceneError::TxOutside);
        }
        if let Some(i) = (0..self.rx.len()).find(|&i| !self.inside_room(self.rx_room, self.rx.antennas[i])) {
            return Err(SceneError::AntennaOutside(i));
        }
        Ok(())
    }

    /// Strictly on the inner side of every wall of room `room`.
    pub fn inside_room(&self, room: usize, p: Vec3<T>) -> bool {
        let slack = T::lit(LENGTH_SLACK);
        self.rooms[room]
            .wall_ids
            .iter()
            .filter_map(|&id| self.wall(id))
            .all(|w| w.signed_distance(p) > slack)
    }

    /// The walls bounding the receiver room, in ascending id order.
    pub fn receiver_walls(&self) -> Vec<WallPlane<T>> {
        let mut walls: Vec<WallPlane<T>> = self.rooms[self.rx_room]
            .wall_ids
            .iter()
            .filter_map(|&id| self.wall(id).cloned())
            .collect();
        walls.sort_by_key(|w| w.id);
        walls
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum VertexKind {
    Tx,
    /// RIS unit by id.
    Ris(usize),
    /// Receiver antenna by array index.
    RxAntenna(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Vertex<T> {
    pub kind: VertexKind,
    pub position: Vec3<T>,
}

/// Vertex adjacency queried by the breadth-first search.
pub trait Adjacency {
    fn vertex_count(&self) -> usize;
    /// Neighbors of `v` in ascending order.
    fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_;

    /// Marks every neighbor of `v` not yet set in the `visited` bitset and
    /// passes it to `found`, in ascending order. Stops early and returns true
    /// once `found` returns true.
    fn visit_new_neighbors<F>(&self, v: usize, visited: &mut [u64], mut found: F) -> bool
    where
        F: FnMut(usize) -> bool,
    {
        for n in self.neighbors(v) {
            let (w, b) = (n / 64, 1u64 << (n % 64));
            if visited[w] & b == 0 {
                visited[w] |= b;
                if found(n) {
                    return true;
                }
            }
        }
        false
    }
}

/// Dense symmetric bit matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
struct BitMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        Self {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    fn get(&self, i: usize, j: usize) -> bool {
        self.row(i)[j / 64] >> (j % 64) & 1 == 1
    }

    fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] |= 1 << (j % 64);
    }

    fn iter_row(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(i).iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * 64 + b)
            })
        })
    }
}

/// Line-of-sight graph `G(V, E)`.
///
/// Vertex order is fixed: the transmitter at index 0, then RIS units by
/// ascending id, then antennas by array index.
#[derive(Debug, Clone, PartialEq)]
pub struct PweGraph<T> {
    pub vertices: Vec<Vertex<T>>,
    adjacency: BitMatrix,
    /// Antenna–RIS edges as `(antenna vertex, RIS vertex)`.
    pub e_u: Vec<(usize, usize)>,
    /// Transmitter–RIS edges as `(tx vertex, RIS vertex)`.
    pub e_t: Vec<(usize, usize)>,
    n_ris: usize,
    ris_ids: Vec<usize>,
}

impl<T: Scalar> PweGraph<T> {
    pub const TX: usize = 0;

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn ris_count(&self) -> usize {
        self.n_ris
    }

    pub fn antenna_count(&self) -> usize {
        self.vertices.len() - 1 - self.n_ris
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency.get(a, b)
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency
            .bits
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Vertex index of the RIS with the given id.
    pub fn ris_vertex(&self, ris_id: usize) -> Option<usize> {
        self.ris_ids.binary_search(&ris_id).ok().map(|k| 1 + k)
    }

    pub fn antenna_vertex(&self, index: usize) -> usize {
        1 + self.n_ris + index
    }

    pub fn is_antenna(&self, v: usize) -> bool {
        v > self.n_ris
    }

    pub fn kind(&self, v: usize) -> VertexKind {
        self.vertices[v].kind
    }

    /// All undirected edges `(a, b)` with `a < b`, in ascending order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|a| self.adjacency.iter_row(a).filter(move |&b| b > a).map(move |b| (a, b)))
            .collect()
    }
}

impl<T: Scalar> Adjacency for PweGraph<T> {
    fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency.iter_row(v)
    }

    fn visit_new_neighbors<F>(&self, v: usize, visited: &mut [u64], mut found: F) -> bool
    where
        F: FnMut(usize) -> bool,
    {
        for (w, (&row, seen)) in self.adjacency.row(v).iter().zip(visited.iter_mut()).enumerate() {
            let mut fresh = row & !*seen;
            *seen |= fresh;
            while fresh != 0 {
                let b = fresh.trailing_zeros() as usize;
                fresh &= fresh - 1;
                if found(w * 64 + b) {
                    return true;
                }
            }
        }
        false
    }
}

/// Builds the line-of-sight graph: one edge per vertex pair whose connecting
/// segment is clear of walls.
pub fn build_graph<T: Scalar>(scene: &Scene<T>) -> Result<PweGraph<T>, SceneError> {
    let mut vertices = Vec::with_capacity(1 + scene.ris_units.len() + scene.rx.len());
    vertices.push(Vertex {
        kind: VertexKind::Tx,
        position: scene.tx,
    });
    vertices.extend(scene.ris_units.iter().map(|r| Vertex {
        kind: VertexKind::Ris(r.id),
        position: r.center,
    }));
    vertices.extend(scene.rx.antennas.iter().enumerate().map(|(i, &p)| Vertex {
        kind: VertexKind::RxAntenna(i),
        position: p,
    }));
    let n = vertices.len();
    let n_ris = scene.ris_units.len();
    let occluders = Occluders::new(&scene.walls, &scene.openings);

    let upper: Vec<Vec<usize>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let a = vertices[i].position;
            (i + 1..n)
                .filter(|&j| occluders.clear(a, vertices[j].position))
                .collect()
        })
        .collect();

    let mut adjacency = BitMatrix::new(n);
    for (i, row) in upper.iter().enumerate() {
        for &j in row {
            adjacency.set(i, j);
            adjacency.set(j, i);
        }
    }

    let e_t: Vec<(usize, usize)> = adjacency
        .iter_row(0)
        .filter(|&j| (1..=n_ris).contains(&j))
        .map(|j| (0, j))
        .collect();
    if e_t.is_empty() {
        return Err(SceneError::TxIsolated);
    }
    let e_u = (0..scene.rx.len())
        .map(|i| 1 + n_ris + i)
        .flat_map(|a| {
            adjacency
                .iter_row(a)
                .filter(|&j| (1..=n_ris).contains(&j))
                .map(move |j| (a, j))
                .collect::<Vec<_>>()
        })
        .collect();

    Ok(PweGraph {
        vertices,
        adjacency,
        e_u,
        e_t,
        n_ris,
        ris_ids: scene.ris_units.iter().map(|r| r.id).collect(),
    })
}

/// Minimum-hop path from `source` to `target` that avoids every vertex for
/// which `banned` returns true. Neighbors are expanded in ascending order, so
/// ties resolve to the lexicographically smallest predecessor chain. Returns
/// `None` when the target is unreachable or either endpoint is banned.
pub fn bfs_shortest_path<G, F>(graph: &G, source: usize, target: usize, banned: F) -> Option<Vec<usize>>
where
    G: Adjacency,
    F: Fn(usize) -> bool,
{
    if banned(source) || banned(target) {
        return None;
    }
    if source == target {
        return Some(vec![source]);
    }
    let n = graph.vertex_count();
    let mut visited = vec![0u64; n.div_ceil(64)];
    // banned vertices are pre-marked so the scan never yields them
    for v in (0..n).filter(|&v| banned(v)) {
        visited[v / 64] |= 1 << (v % 64);
    }
    visited[source / 64] |= 1 << (source % 64);
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let hit = graph.visit_new_neighbors(u, &mut visited, |v| {
            parent[v] = u;
            queue.push_back(v);
            v == target
        });
        if hit {
            let mut path = vec![target];
            let mut cur = target;
            while cur != source {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
    }
    None
}

/// Plain undirected graph given by an edge list.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a != b {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        for row in &mut adj {
            row.sort_unstable();
            row.dedup();
        }
        Self { adj }
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }
}

impl Adjacency for SimpleGraph {
    fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }
}
