//! Face-centered patch growth.
//!
//! Generation 0 is one `p`-gon. Each later generation adds every tile that
//! touches a vertex of the current boundary, which is the same as adding
//! every tile sharing a vertex with the previous generation. The new tiles
//! form a ring glued along the old boundary cycle; the ring is laid out
//! purely combinatorially from the number of tiles each boundary vertex is
//! still missing.

use std::collections::HashMap;

use num_complex::Complex64;

use super::geometry::{central_polygon, Motion};
use super::{PatchKind, RawTiling, SchlafliPair, Tessellation};
use crate::error::{Error, Result};

pub const DEFAULT_VERTEX_BUDGET: usize = 20_000;

/// Vertex cap from `YCUBE_VERTEX_BUDGET`, falling back to 20000.
pub fn default_vertex_budget() -> usize {
    std::env::var("YCUBE_VERTEX_BUDGET")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_VERTEX_BUDGET)
}

pub fn build_patch(pq: SchlafliPair, generations: usize) -> Result<Tessellation> {
    build_patch_with_budget(pq, generations, default_vertex_budget())
}

pub fn build_patch_with_budget(pq: SchlafliPair, generations: usize, budget: usize) -> Result<Tessellation> {
    build_patch_rotated(pq, generations, budget, 0)
}

/// Same as [`build_patch_with_budget`] but starts each ring walk `offset`
/// boundary positions later. Used to check that the result does not depend
/// on traversal order.
pub(crate) fn build_patch_rotated(
    pq: SchlafliPair,
    generations: usize,
    budget: usize,
    offset: usize,
) -> Result<Tessellation> {
    let mut g = Grower::new(pq);
    if g.coords.len() > budget {
        return Err(Error::BudgetExceeded { budget });
    }
    for _ in 0..generations {
        g.grow_ring(offset)?;
        if g.coords.len() > budget {
            return Err(Error::BudgetExceeded { budget });
        }
    }
    let raw = g.finish();
    Tessellation::from_raw(pq, PatchKind::Disk { generations }, raw)
}

struct Grower {
    pq: SchlafliPair,
    canon: Vec<Complex64>,
    coords: Vec<Complex64>,
    faces: Vec<Vec<usize>>,
    face_count: Vec<usize>,
    /// Counterclockwise boundary cycle (patch on the left).
    boundary: Vec<usize>,
}

enum Event {
    Spoke,
    Step(usize),
}

struct RingFace {
    old_path: Vec<usize>,
    earlier: usize,
    later: usize,
}

impl Grower {
    fn new(pq: SchlafliPair) -> Self {
        let canon = central_polygon(pq);
        let p = pq.p;
        Grower {
            pq,
            coords: canon.clone(),
            canon,
            faces: vec![(0..p).collect()],
            face_count: vec![1; p],
            boundary: (0..p).collect(),
        }
    }

    fn grow_ring(&mut self, offset: usize) -> Result<()> {
        let p = self.pq.p;
        let q = self.pq.q;
        let m = self.boundary.len();
        let missing: Vec<usize> = self.boundary.iter().map(|&v| q - self.face_count[v]).collect();
        if missing.contains(&0) {
            return Err(Error::InvalidArgument("boundary vertex already saturated".into()));
        }
        // The walk starts at a boundary vertex that emits at least one spoke.
        let first = (0..m)
            .map(|i| (i + offset) % m)
            .find(|&i| missing[i] >= 2)
            .ok_or_else(|| Error::InvalidArgument("ring growth needs a vertex with a spoke".into()))?;

        let mut events = Vec::new();
        for s in 0..m {
            let i = (first + s) % m;
            for _ in 1..missing[i] {
                events.push((i, Event::Spoke));
            }
            events.push((i, Event::Step((i + 1) % m)));
        }
        // Rotate so the walk begins at the last spoke of the first vertex.
        let start = missing[first] - 2;
        events.rotate_left(start);

        let mut spoke_count = 0usize;
        let mut ring: Vec<RingFace> = Vec::new();
        let mut open: Option<RingFace> = None;
        for (i, ev) in &events {
            match ev {
                Event::Spoke => {
                    let id = spoke_count;
                    spoke_count += 1;
                    if let Some(mut f) = open.take() {
                        f.later = id;
                        ring.push(f);
                    }
                    open = Some(RingFace {
                        old_path: vec![self.boundary[*i]],
                        earlier: id,
                        later: usize::MAX,
                    });
                }
                Event::Step(j) => {
                    if let Some(f) = open.as_mut() {
                        f.old_path.push(self.boundary[*j]);
                    }
                }
            }
        }
        let mut last = open.expect("at least one spoke");
        last.later = 0;
        ring.push(last);

        // Tiles that need exactly one new corner pin both spokes to it.
        let mut uf = UnionFind::new(spoke_count);
        for f in &ring {
            let fresh = p as isize - f.old_path.len() as isize;
            if fresh < 1 {
                return Err(Error::InvalidArgument(
                    "tile closes on existing vertices; pair not supported by ring growth".into(),
                ));
            }
            if fresh == 1 {
                uf.union(f.earlier, f.later);
            }
        }
        let mut spoke_vertex: HashMap<usize, usize> = HashMap::new();
        let mut far = vec![0usize; spoke_count];
        for (s, slot) in far.iter_mut().enumerate() {
            let root = uf.find(s);
            *slot = *spoke_vertex.entry(root).or_insert_with(|| {
                self.coords.push(Complex64::new(f64::NAN, f64::NAN));
                self.face_count.push(0);
                self.coords.len() - 1
            });
        }

        let mut new_boundary: Vec<usize> = Vec::new();
        for f in &ring {
            let fresh = p - f.old_path.len();
            let mut cycle: Vec<usize> = f.old_path.iter().rev().copied().collect();
            let mut outer = vec![far[f.earlier]];
            for _ in 0..fresh.saturating_sub(2) {
                self.coords.push(Complex64::new(f64::NAN, f64::NAN));
                self.face_count.push(0);
                outer.push(self.coords.len() - 1);
            }
            if fresh >= 2 {
                outer.push(far[f.later]);
            }
            cycle.extend(&outer);
            self.place(&cycle);
            for &v in &cycle {
                self.face_count[v] += 1;
            }
            self.faces.push(cycle);
            for v in outer {
                if new_boundary.last() != Some(&v) {
                    new_boundary.push(v);
                }
            }
        }
        if new_boundary.len() > 1 && new_boundary.first() == new_boundary.last() {
            new_boundary.pop();
        }
        self.boundary = new_boundary;
        Ok(())
    }

    /// Position the unplaced corners of a tile whose first two corners are
    /// already placed.
    fn place(&mut self, cycle: &[usize]) {
        let a = self.coords[cycle[0]];
        let b = self.coords[cycle[1]];
        debug_assert!(!a.re.is_nan() && !b.re.is_nan());
        let motion = Motion::mapping(self.pq.curvature(), self.canon[0], self.canon[1], a, b);
        for (j, &v) in cycle.iter().enumerate().skip(2) {
            if self.coords[v].re.is_nan() {
                self.coords[v] = motion.apply(self.canon[j]);
            }
        }
    }

    fn finish(self) -> RawTiling {
        let mut edge_ids: HashMap<(usize, usize), usize> = HashMap::new();
        let mut edges = Vec::new();
        let mut faces = Vec::with_capacity(self.faces.len());
        for cycle in self.faces {
            let n = cycle.len();
            let mut fe = Vec::with_capacity(n);
            for i in 0..n {
                let (a, b) = (cycle[i], cycle[(i + 1) % n]);
                let key = (a.min(b), a.max(b));
                let id = *edge_ids.entry(key).or_insert_with(|| {
                    edges.push([key.0, key.1]);
                    edges.len() - 1
                });
                fe.push(id);
            }
            faces.push((cycle, fe));
        }
        let coords = if self.pq.curvature() == super::Curvature::Flat {
            // Flat patches are scaled into the open unit disk.
            let rmax = self.coords.iter().map(|z| z.norm()).fold(0.0, f64::max);
            let s = 0.95 / rmax.max(1e-12);
            self.coords.iter().map(|z| (z.re * s, z.im * s)).collect()
        } else {
            self.coords.iter().map(|z| (z.re, z.im)).collect()
        };
        RawTiling { coords, edges, faces, slot0: None }
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut x = x;
        while self.parent[x] != r {
            let nx = self.parent[x];
            self.parent[x] = r;
            x = nx;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
