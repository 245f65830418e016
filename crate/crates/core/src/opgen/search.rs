//! Finders for the single-fracton constructions. Both stacks work the same
//! way: each elementary operator leaves a fracton dipole on the two faces of
//! one edge, so a chain of dipoles from the target face to a face without a
//! prism term leaves exactly the target. A breadth-first search over faces
//! finds the shortest such chain.

use std::collections::{BTreeSet, HashMap, VecDeque};

use super::{vertical_x, x_pruned_tree, x_truncated_geodesic, LayerInterface};
use crate::error::{Error, Result};
use crate::hyptess::{Path, Tessellation, Tree, VertexSlot, Wedge};
use crate::paulis::PauliString;
use crate::ycode::{Location, StabilizerCode};

/// Fractal tree at `root` with root class `parity`, pruned at `prune`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct PrunedSite {
    pub root: usize,
    pub parity: usize,
    pub prune: usize,
}

impl PrunedSite {
    pub fn tree(&self, t: &Tessellation) -> Result<Tree> {
        t.fractal_tree(self.root, self.parity, t.num_vertices())
    }
}

fn prism_index(code: &StabilizerCode) -> HashMap<(usize, usize), usize> {
    code.terms
        .iter()
        .filter_map(|t| match t.location {
            Location::Prism { face, interval } => Some(((face, interval), t.id)),
            _ => None,
        })
        .collect()
}

/// Shortest chain of dipole operators from `target` to a termless face.
/// `candidates(face, edge)` lists operators meant to excite the prisms of
/// the two faces on `edge` at `interval`; each is checked before use.
fn dipole_chain<T: Clone>(
    code: &StabilizerCode,
    target: usize,
    interval: usize,
    mut candidates: impl FnMut(usize, usize) -> Vec<(T, PauliString)>,
) -> Result<Vec<T>> {
    let t = &code.lattice.base;
    if target >= t.num_faces() {
        return Err(Error::UnknownId { kind: "face", id: target });
    }
    let prisms = prism_index(code);
    if !prisms.contains_key(&(target, interval)) {
        return Err(Error::InvalidArgument(format!("face {target} carries no prism term")));
    }
    // came[g] = (previous face, operator that hopped across)
    let mut came: HashMap<usize, (usize, T)> = HashMap::new();
    let mut queue = VecDeque::from([target]);
    let mut seen = BTreeSet::from([target]);
    while let Some(f) = queue.pop_front() {
        for &e in &t.faces[f].edges {
            let other = t.edge_faces(e).iter().copied().find(|&g| g != f);
            if other.is_some_and(|g| seen.contains(&g)) {
                continue;
            }
            let expected: BTreeSet<usize> =
                [Some(f), other].into_iter().flatten().filter_map(|g| prisms.get(&(g, interval)).copied()).collect();
            for (tag, op) in candidates(f, e) {
                let got: BTreeSet<usize> = code.syndrome(&op)?.excited.into_iter().collect();
                if got != expected {
                    continue;
                }
                let exit = match other {
                    None => true,
                    Some(g) => !prisms.contains_key(&(g, interval)),
                };
                if exit {
                    let mut chain = vec![tag];
                    let mut cur = f;
                    while let Some((prev, tag)) = came.get(&cur) {
                        chain.push(tag.clone());
                        cur = *prev;
                    }
                    chain.reverse();
                    return Ok(chain);
                }
                let g = other.expect("non-exit hop has a far face");
                seen.insert(g);
                came.insert(g, (f, tag));
                queue.push_back(g);
                break;
            }
        }
    }
    Err(Error::InvalidArgument("patch too small: no dipole chain reaches the boundary".into()))
}

/// Geodesic rays whose vertical X strings in `layer` leave one fracton on
/// prism `(target, layer)`.
pub fn find_stacked_geodesics(code: &StabilizerCode, target: usize, layer: usize) -> Result<Vec<Path>> {
    let l = &code.lattice;
    let t = &l.base;
    if t.q() != 4 {
        return Err(Error::WrongQ { required: "4", actual: t.q() });
    }
    let layer = layer % l.layers;
    dipole_chain(code, target, layer, |_, e| {
        let mut out = Vec::new();
        for &a in &t.edges[e].endpoints {
            if !t.is_interior(a) {
                continue;
            }
            // Leaving `a` straight away from `e` puts the pair on e's faces.
            let start = VertexSlot { vertex: a, slot: t.slot_of(e, a) + 2 };
            let Ok(ray) = t.geodesic_ray(start, t.num_vertices()) else { continue };
            if let Ok(op) = x_truncated_geodesic(l, &ray, layer) {
                out.push((ray, op));
            }
        }
        out
    })
}

/// Pruned trees whose product leaves one fracton on `(target, iface gap)`.
pub fn find_pruned_tree_series(
    code: &StabilizerCode,
    target: usize,
    iface: LayerInterface,
) -> Result<Vec<PrunedSite>> {
    let l = &code.lattice;
    let t = &l.base;
    let gap = iface.check(l)?;
    dipole_chain(code, target, gap, |_, e| {
        let mut out = Vec::new();
        let [a, b] = t.edges[e].endpoints;
        for (root, prune) in [(a, b), (b, a)] {
            if !t.is_interior(root) || !t.is_interior(prune) {
                continue;
            }
            let site = PrunedSite { root, parity: t.slot_of(e, root) % 2, prune };
            let Ok(tree) = site.tree(t) else { continue };
            if let Ok(op) = x_pruned_tree(l, &tree, prune, iface) {
                out.push((site, op));
            }
        }
        out
    })
}

/// Every wedge bounded by two branches of the fractal tree at `root` with
/// root class `parity`.
pub fn wedges_at(t: &Tessellation, root: usize, parity: usize) -> Result<Vec<Wedge>> {
    let tree = t.fractal_tree(root, parity, t.num_vertices())?;
    let slots: Vec<usize> = (parity % 2..t.q()).step_by(2).collect();
    let mut out: Vec<Wedge> = Vec::new();
    for &a in &slots {
        for &b in &slots {
            if a == b {
                continue;
            }
            let Ok((ba, bb)) = t.wedge_branches(&tree, a, b) else { continue };
            let Ok(w) = t.wedge_region(&ba, &bb) else { continue };
            if !out.iter().any(|o| o.faces == w.faces) {
                out.push(w);
            }
        }
    }
    Ok(out)
}

/// Half-plane on the counterclockwise side of the geodesic leaving `v`
/// through `slot` (q = 4 only).
pub fn geodesic_wedge(t: &Tessellation, v: usize, slot: usize) -> Result<Wedge> {
    let q = t.q();
    if q != 4 {
        return Err(Error::WrongQ { required: "4", actual: q });
    }
    let a = t.geodesic_ray(VertexSlot { vertex: v, slot }, t.num_vertices())?;
    let b = t.geodesic_ray(VertexSlot { vertex: v, slot: slot + 2 }, t.num_vertices())?;
    t.wedge_region(&a, &b)
}

/// First pair of distinct wedges (roots in id order, at most `max_roots`
/// interior roots) whose common vertices carry a single-fracton membrane.
pub fn find_wedge_intersection(
    code: &StabilizerCode,
    iface: LayerInterface,
    max_roots: usize,
) -> Result<(Wedge, Wedge)> {
    let l = &code.lattice;
    let t = &l.base;
    let gap = iface.check(l)?;
    if t.p() % 2 == 1 {
        return Err(Error::InvalidArgument("membranes need even p".into()));
    }
    let mut wedges = Vec::new();
    for root in t.interior_vertices().take(max_roots) {
        for parity in 0..2 {
            wedges.extend(wedges_at(t, root, parity)?);
        }
    }
    for (i, a) in wedges.iter().enumerate() {
        for b in &wedges[i + 1..] {
            if a.vertices == b.vertices {
                continue;
            }
            let common = a.vertices.intersection(&b.vertices).copied();
            if code.syndrome(&vertical_x(l, common, gap))?.len() == 1 {
                return Ok((a.clone(), b.clone()));
            }
        }
    }
    Err(Error::InvalidArgument("no single-fracton wedge intersection among the candidates".into()))
}
