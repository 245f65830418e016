//! The tessellation stacked over a periodic circle of layers.
//!
//! Edge ids are dense: in-plane edge `e` of layer `ℓ` is `ℓ·E + e`, and the
//! vertical edge from `(v, ℓ)` to `(v, ℓ+1)` is `L·E + ℓ·V + v`. Prism `(f, ℓ)`
//! spans the interval between layers `ℓ` and `ℓ+1` and has id `ℓ·F + f`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hyptess::{build_patch, build_periodic_flat, PatchKind, SchlafliPair, Tessellation};

/// Everything needed to regenerate a lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSpec {
    pub schlafli: SchlafliPair,
    pub patch: PatchKind,
    pub layers: usize,
}

impl LatticeSpec {
    pub fn disk(p: usize, q: usize, generations: usize, layers: usize) -> Result<Self> {
        Ok(LatticeSpec { schlafli: SchlafliPair::new(p, q)?, patch: PatchKind::Disk { generations }, layers })
    }

    pub fn torus(p: usize, q: usize, l: usize, layers: usize) -> Result<Self> {
        Ok(LatticeSpec { schlafli: SchlafliPair::new(p, q)?, patch: PatchKind::Torus { l }, layers })
    }

    pub fn build_base(&self) -> Result<Tessellation> {
        let pq = SchlafliPair::new(self.schlafli.p, self.schlafli.q)?;
        match self.patch {
            PatchKind::Disk { generations } => build_patch(pq, generations),
            PatchKind::Torus { l } => build_periodic_flat(pq, l),
        }
    }

    pub fn build(&self) -> Result<Lattice3D> {
        Lattice3D::stack(self.build_base()?, self.layers)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    InPlane,
    Vertical,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge3 {
    pub id: usize,
    pub kind: EdgeKind,
    /// `(vertex, layer)` endpoints.
    pub a: (usize, usize),
    pub b: (usize, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Prism {
    pub id: usize,
    pub face: usize,
    pub interval: usize,
}

#[derive(Clone, Debug)]
pub struct Lattice3D {
    pub base: Tessellation,
    pub layers: usize,
    prism_edges: Vec<Vec<usize>>,
    edge_prisms: Vec<Vec<usize>>,
}

impl Lattice3D {
    pub fn stack(base: Tessellation, layers: usize) -> Result<Self> {
        if layers < 3 {
            return Err(Error::InvalidArgument(format!("need at least 3 layers, got {layers}")));
        }
        let nf = base.num_faces();
        let mut lat = Lattice3D { base, layers, prism_edges: Vec::new(), edge_prisms: Vec::new() };
        let n = lat.num_edges();
        let mut prism_edges = Vec::with_capacity(nf * layers);
        let mut edge_prisms = vec![Vec::new(); n];
        for l in 0..layers {
            for f in 0..nf {
                let face = &lat.base.faces[f];
                let mut es = Vec::with_capacity(3 * face.vertices.len());
                es.extend(face.edges.iter().map(|&e| lat.in_plane(e, l)));
                es.extend(face.edges.iter().map(|&e| lat.in_plane(e, l + 1)));
                es.extend(face.vertices.iter().map(|&v| lat.vertical(v, l)));
                let pid = l * nf + f;
                for &e in &es {
                    edge_prisms[e].push(pid);
                }
                prism_edges.push(es);
            }
        }
        lat.prism_edges = prism_edges;
        lat.edge_prisms = edge_prisms;
        Ok(lat)
    }

    pub fn spec(&self) -> LatticeSpec {
        LatticeSpec { schlafli: self.base.pq, patch: self.base.kind, layers: self.layers }
    }

    pub fn num_in_plane(&self) -> usize {
        self.layers * self.base.num_edges()
    }

    pub fn num_vertical(&self) -> usize {
        self.layers * self.base.num_vertices()
    }

    pub fn num_edges(&self) -> usize {
        self.num_in_plane() + self.num_vertical()
    }

    pub fn num_prisms(&self) -> usize {
        self.layers * self.base.num_faces()
    }

    /// In-plane copy of base edge `e` in `layer` (taken mod the layer count).
    #[inline]
    pub fn in_plane(&self, e: usize, layer: usize) -> usize {
        (layer % self.layers) * self.base.num_edges() + e
    }

    /// Vertical edge from `(v, layer)` up to `(v, layer + 1)`.
    #[inline]
    pub fn vertical(&self, v: usize, layer: usize) -> usize {
        self.num_in_plane() + (layer % self.layers) * self.base.num_vertices() + v
    }

    #[inline]
    pub fn prism(&self, face: usize, interval: usize) -> usize {
        (interval % self.layers) * self.base.num_faces() + face
    }

    pub fn prism_info(&self, id: usize) -> Prism {
        let nf = self.base.num_faces();
        Prism { id, face: id % nf, interval: id / nf }
    }

    pub fn edge_info(&self, id: usize) -> Edge3 {
        let ne = self.base.num_edges();
        let nv = self.base.num_vertices();
        if id < self.num_in_plane() {
            let (l, e) = (id / ne, id % ne);
            let [a, b] = self.base.edges[e].endpoints;
            Edge3 { id, kind: EdgeKind::InPlane, a: (a, l), b: (b, l) }
        } else {
            let r = id - self.num_in_plane();
            let (l, v) = (r / nv, r % nv);
            Edge3 { id, kind: EdgeKind::Vertical, a: (v, l), b: (v, (l + 1) % self.layers) }
        }
    }

    /// Base edge (in-plane) or base vertex (vertical) under an edge3 id,
    /// together with its layer.
    pub fn base_of(&self, id: usize) -> (EdgeKind, usize, usize) {
        let ne = self.base.num_edges();
        let nv = self.base.num_vertices();
        if id < self.num_in_plane() {
            (EdgeKind::InPlane, id % ne, id / ne)
        } else {
            let r = id - self.num_in_plane();
            (EdgeKind::Vertical, r % nv, r / nv)
        }
    }

    pub fn incident_prisms(&self, edge: usize) -> Result<&[usize]> {
        self.edge_prisms
            .get(edge)
            .map(Vec::as_slice)
            .ok_or(Error::UnknownId { kind: "edge3", id: edge })
    }

    pub fn incident_edges(&self, prism: usize) -> Result<&[usize]> {
        self.prism_edges
            .get(prism)
            .map(Vec::as_slice)
            .ok_or(Error::UnknownId { kind: "prism", id: prism })
    }

    /// Image of an edge under the layer shift `ℓ ↦ ℓ + 1`.
    pub fn shift_edge(&self, id: usize) -> usize {
        match self.base_of(id) {
            (EdgeKind::InPlane, e, l) => self.in_plane(e, l + 1),
            (EdgeKind::Vertical, v, l) => self.vertical(v, l + 1),
        }
    }

    pub fn shift_prism(&self, id: usize) -> usize {
        let p = self.prism_info(id);
        self.prism(p.face, p.interval + 1)
    }

    /// Exhaustive incidence audit; returns the first violated law.
    pub fn audit(&self) -> std::result::Result<(), String> {
        let p = self.base.p();
        let q = self.base.q();
        for pid in 0..self.num_prisms() {
            let es = &self.prism_edges[pid];
            let distinct: BTreeSet<_> = es.iter().collect();
            if es.len() != 3 * self.base.faces[pid % self.base.num_faces()].vertices.len()
                || distinct.len() != es.len()
                || es.len() != 3 * p
            {
                return Err(format!("prism {pid} has {} edges", distinct.len()));
            }
            for &e in es {
                if !self.edge_prisms[e].contains(&pid) {
                    return Err(format!("edge {e} does not list prism {pid}"));
                }
            }
        }
        for e in 0..self.num_edges() {
            for &pid in &self.edge_prisms[e] {
                if !self.prism_edges[pid].contains(&e) {
                    return Err(format!("prism {pid} does not list edge {e}"));
                }
            }
            let expected = match self.base_of(e) {
                (EdgeKind::Vertical, v, _) => self.base.vertex_faces(v).len(),
                (EdgeKind::InPlane, be, _) => 2 * self.base.edge_faces(be).len(),
            };
            if self.edge_prisms[e].len() != expected {
                return Err(format!("edge {e} touches {} prisms, expected {expected}", self.edge_prisms[e].len()));
            }
            if let (EdgeKind::Vertical, v, _) = self.base_of(e) {
                if self.base.is_interior(v) && expected != q {
                    return Err(format!("vertical edge {e} at interior vertex touches {expected} prisms"));
                }
            }
        }
        Ok(())
    }
}
