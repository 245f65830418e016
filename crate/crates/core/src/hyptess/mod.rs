//! Finite patches of regular `{p,q}` tessellations and flat torus quotients,
//! stored as combinatorial maps with a rotation system.
//!
//! Every vertex carries `q` slots listing its incident edges in
//! counterclockwise order. Interior vertices fill all slots; a boundary
//! vertex of an open patch fills a contiguous arc starting at slot 0 and
//! leaves the rest empty.

mod flat;
pub mod geometry;
mod patch;
mod queries;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use flat::build_periodic_flat;
pub use patch::{build_patch, build_patch_with_budget, default_vertex_budget};
pub use queries::{Path, Tree, TurnSide, Wedge};

/// Regular tiling by `p`-gons with `q` meeting at every vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SchlafliPair {
    pub p: usize,
    pub q: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Curvature {
    Hyperbolic,
    Flat,
}

impl SchlafliPair {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        if p < 3 {
            return Err(Error::InvalidSchlafli { p, q, reason: "p must be at least 3" });
        }
        if q < 4 || q % 2 == 1 {
            return Err(Error::InvalidSchlafli { p, q, reason: "q must be even and at least 4" });
        }
        let pq = SchlafliPair { p, q };
        // 1/p + 1/q vs 1/2  <=>  2(p + q) vs pq
        if 2 * (p + q) > p * q {
            return Err(Error::Spherical { p, q });
        }
        Ok(pq)
    }

    pub fn curvature(&self) -> Curvature {
        if 2 * (self.p + self.q) == self.p * self.q {
            Curvature::Flat
        } else {
            Curvature::Hyperbolic
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PatchKind {
    /// Face-centered open patch grown for `generations` rings.
    Disk { generations: usize },
    /// Periodic `l × l` quotient of a flat tiling.
    Torus { l: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Vertex {
    pub id: usize,
    pub x: f64,
    pub y: f64,
    pub interior: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: usize,
    pub endpoints: [usize; 2],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub id: usize,
    /// Counterclockwise vertex cycle.
    pub vertices: Vec<usize>,
    /// `edges[i]` joins `vertices[i]` and `vertices[i + 1]`.
    pub edges: Vec<usize>,
}

/// A position in the cyclic edge order around a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexSlot {
    pub vertex: usize,
    pub slot: usize,
}

#[derive(Clone, Debug)]
pub struct Tessellation {
    pub pq: SchlafliPair,
    pub kind: PatchKind,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub faces: Vec<Face>,
    rotation: Vec<Vec<Option<usize>>>,
    edge_slots: Vec<[usize; 2]>,
    edge_faces: Vec<Vec<usize>>,
    vertex_faces: Vec<Vec<usize>>,
}

/// Raw output of a builder before the rotation system is derived.
pub(crate) struct RawTiling {
    pub coords: Vec<(f64, f64)>,
    pub edges: Vec<[usize; 2]>,
    pub faces: Vec<(Vec<usize>, Vec<usize>)>,
    /// Optional edge to place in slot 0 at each closed vertex.
    pub slot0: Option<Vec<usize>>,
}

impl Tessellation {
    /// Assemble a tessellation from counterclockwise faces. The rotation at
    /// each vertex follows from the face corners: if a face reads
    /// `u -a-> v -b-> w`, then `a` comes right after `b` counterclockwise
    /// around `v`.
    pub(crate) fn from_raw(pq: SchlafliPair, kind: PatchKind, raw: RawTiling) -> Result<Self> {
        let nv = raw.coords.len();
        let ne = raw.edges.len();
        let mut next_ccw: Vec<HashMap<usize, usize>> = vec![HashMap::new(); nv];
        let mut vertex_faces = vec![Vec::new(); nv];
        let mut edge_faces = vec![Vec::new(); ne];
        for (fid, (verts, edges)) in raw.faces.iter().enumerate() {
            let n = verts.len();
            debug_assert_eq!(edges.len(), n);
            for i in 0..n {
                let v = verts[i];
                let out = edges[i];
                let inc = edges[(i + n - 1) % n];
                if next_ccw[v].insert(out, inc).is_some() {
                    return Err(Error::InvalidArgument(format!(
                        "non-manifold corner at vertex {v}"
                    )));
                }
                vertex_faces[v].push(fid);
                edge_faces[out].push(fid);
            }
        }

        let q = pq.q;
        let mut rotation = vec![vec![None; q]; nv];
        let mut edge_slots = vec![[usize::MAX; 2]; ne];
        let mut interior = vec![false; nv];
        for v in 0..nv {
            let next = &next_ccw[v];
            if next.is_empty() {
                return Err(Error::InvalidArgument(format!("isolated vertex {v}")));
            }
            let targets: std::collections::HashSet<usize> = next.values().copied().collect();
            let mut starts: Vec<usize> = next.keys().filter(|e| !targets.contains(e)).copied().collect();
            let closed = starts.is_empty();
            let start = if closed {
                match &raw.slot0 {
                    Some(pref) => pref[v],
                    None => *next.keys().min().unwrap(),
                }
            } else {
                if starts.len() != 1 {
                    return Err(Error::InvalidArgument(format!(
                        "vertex {v} has a disconnected fan"
                    )));
                }
                starts.pop().unwrap()
            };
            let mut order = vec![start];
            let mut cur = start;
            while let Some(&n) = next.get(&cur) {
                if n == start {
                    break;
                }
                order.push(n);
                cur = n;
                if order.len() > q {
                    return Err(Error::InvalidArgument(format!("vertex {v} exceeds degree {q}")));
                }
            }
            if order.len() > q || (closed && order.len() != q) {
                return Err(Error::InvalidArgument(format!(
                    "vertex {v} has degree {} but q = {q}",
                    order.len()
                )));
            }
            interior[v] = closed;
            for (slot, &e) in order.iter().enumerate() {
                rotation[v][slot] = Some(e);
                let side = if raw.edges[e][0] == v { 0 } else { 1 };
                edge_slots[e][side] = slot;
            }
        }

        let vertices = raw
            .coords
            .iter()
            .enumerate()
            .map(|(id, &(x, y))| Vertex { id, x, y, interior: interior[id] })
            .collect();
        let edges = raw
            .edges
            .iter()
            .enumerate()
            .map(|(id, &endpoints)| Edge { id, endpoints })
            .collect();
        let faces = raw
            .faces
            .into_iter()
            .enumerate()
            .map(|(id, (vertices, edges))| Face { id, vertices, edges })
            .collect();
        Ok(Tessellation {
            pq,
            kind,
            vertices,
            edges,
            faces,
            rotation,
            edge_slots,
            edge_faces,
            vertex_faces,
        })
    }

    pub fn p(&self) -> usize {
        self.pq.p
    }

    pub fn q(&self) -> usize {
        self.pq.q
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self.kind, PatchKind::Torus { .. })
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn is_interior(&self, v: usize) -> bool {
        self.vertices[v].interior
    }

    /// A face is interior when all of its corners are interior vertices.
    pub fn is_interior_face(&self, f: usize) -> bool {
        self.faces[f].vertices.iter().all(|&v| self.vertices[v].interior)
    }

    /// Edge at `slot` of `v`, or `None` for an empty boundary slot.
    pub fn edge_at(&self, v: usize, slot: usize) -> Option<usize> {
        self.rotation[v][slot % self.pq.q]
    }

    /// Filled slots of `v`, in counterclockwise order.
    pub fn incident_edges(&self, v: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rotation[v]
            .iter()
            .enumerate()
            .filter_map(|(s, e)| e.map(|e| (s, e)))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].iter().filter(|e| e.is_some()).count()
    }

    /// Slot that `edge` occupies at its endpoint `v`.
    pub fn slot_of(&self, edge: usize, v: usize) -> usize {
        let [a, _] = self.edges[edge].endpoints;
        if a == v {
            self.edge_slots[edge][0]
        } else {
            self.edge_slots[edge][1]
        }
    }

    pub fn other_end(&self, edge: usize, v: usize) -> usize {
        let [a, b] = self.edges[edge].endpoints;
        if a == v {
            b
        } else {
            a
        }
    }

    /// Vertex reached by leaving `v` through `slot`.
    pub fn neighbor(&self, v: usize, slot: usize) -> Option<(usize, usize)> {
        self.edge_at(v, slot).map(|e| (e, self.other_end(e, v)))
    }

    pub fn edge_faces(&self, edge: usize) -> &[usize] {
        &self.edge_faces[edge]
    }

    pub fn vertex_faces(&self, v: usize) -> &[usize] {
        &self.vertex_faces[v]
    }

    /// Edges with fewer than two incident faces.
    pub fn boundary_edges(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.edges.len()).filter(|&e| self.edge_faces[e].len() < 2)
    }

    pub fn interior_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.vertices.iter().filter(|v| v.interior).map(|v| v.id)
    }

    /// The edge joining `u` and `w`, if any.
    pub fn edge_between(&self, u: usize, w: usize) -> Option<usize> {
        self.incident_edges(u)
            .map(|(_, e)| e)
            .find(|&e| self.other_end(e, u) == w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classify_pairs() {
        assert_eq!(SchlafliPair::new(5, 4).unwrap().curvature(), Curvature::Hyperbolic);
        assert_eq!(SchlafliPair::new(4, 4).unwrap().curvature(), Curvature::Flat);
        assert_eq!(SchlafliPair::new(3, 6).unwrap().curvature(), Curvature::Flat);
        assert_eq!(SchlafliPair::new(4, 6).unwrap().curvature(), Curvature::Hyperbolic);
        assert!(matches!(SchlafliPair::new(3, 4), Err(Error::Spherical { .. })));
        assert!(matches!(SchlafliPair::new(5, 5), Err(Error::InvalidSchlafli { .. })));
        assert!(SchlafliPair::new(2, 8).is_err());
    }
}
