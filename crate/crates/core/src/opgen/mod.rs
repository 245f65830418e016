//! Operators supported on geodesics and fractal trees, plus the flat
//! (3,6) set.

mod flat36;
mod search;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hyptess::{Path, Tree, Wedge};
use crate::lattice3::Lattice3D;
use crate::paulis::PauliString;
use crate::ycode::StabilizerCode;

pub use flat36::{flat36_op, Flat36Op, FLAT36_NAMES};
pub use search::{
    find_pruned_tree_series, find_stacked_geodesics, find_wedge_intersection, geodesic_wedge, wedges_at,
    PrunedSite,
};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    #[default]
    Top,
    Bottom,
}

/// The gap between layers `interval` and `interval + 1`. Vertical X
/// operators live on the edges crossing this gap; `side` says whether the
/// in-plane geometry they hang from is drawn in the lower layer (`Top`,
/// edges point up) or the upper one (`Bottom`, edges point down).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LayerInterface {
    pub interval: usize,
    #[serde(default)]
    pub side: Side,
}

impl LayerInterface {
    pub fn top(interval: usize) -> Self {
        LayerInterface { interval, side: Side::Top }
    }

    pub fn bottom(interval: usize) -> Self {
        LayerInterface { interval, side: Side::Bottom }
    }

    fn check(&self, l: &Lattice3D) -> Result<usize> {
        if self.interval >= l.layers {
            return Err(Error::InvalidArgument(format!(
                "interval {} out of range for {} layers",
                self.interval, l.layers
            )));
        }
        Ok(self.interval)
    }

    /// Layer holding the in-plane geometry.
    pub fn anchor_layer(&self, layers: usize) -> usize {
        match self.side {
            Side::Top => self.interval % layers,
            Side::Bottom => (self.interval + 1) % layers,
        }
    }
}

fn vertical_x(l: &Lattice3D, vertices: impl IntoIterator<Item = usize>, gap: usize) -> PauliString {
    PauliString::x_on(l.num_edges(), vertices.into_iter().map(|v| l.vertical(v, gap)))
}

fn check_vertex(l: &Lattice3D, v: usize) -> Result<()> {
    if v >= l.base.num_vertices() {
        return Err(Error::UnknownId { kind: "vertex", id: v });
    }
    Ok(())
}

fn check_path(l: &Lattice3D, path: &Path) -> Result<()> {
    let t = &l.base;
    if path.vertices.is_empty() {
        return Err(Error::InvalidArgument("empty path".into()));
    }
    for &v in &path.vertices {
        check_vertex(l, v)?;
    }
    let expected = if path.closed { path.vertices.len() } else { path.vertices.len() - 1 };
    if path.edges.len() != expected {
        return Err(Error::InvalidArgument("path vertex and edge counts disagree".into()));
    }
    for (i, &e) in path.edges.iter().enumerate() {
        if e >= t.num_edges() {
            return Err(Error::UnknownId { kind: "edge", id: e });
        }
        let a = path.vertices[i];
        let b = path.vertices[(i + 1) % path.vertices.len()];
        let mut ends = t.edges[e].endpoints;
        ends.sort_unstable();
        if ends != [a.min(b), a.max(b)] {
            return Err(Error::InvalidArgument(format!("edge {e} does not join {a} and {b}")));
        }
    }
    Ok(())
}

fn excited_prisms(code: &StabilizerCode, op: &PauliString) -> Result<Vec<usize>> {
    Ok(code.syndrome(op)?.excited)
}

fn expect_weight(code: &StabilizerCode, op: PauliString, expected: usize) -> Result<PauliString> {
    let got = excited_prisms(code, &op)?;
    if got.len() != expected {
        return Err(Error::Construction { expected, got });
    }
    Ok(op)
}

/// X on the vertical edge above every vertex of a geodesic ray in `layer`.
pub fn x_truncated_geodesic(l: &Lattice3D, ray: &Path, layer: usize) -> Result<PauliString> {
    if l.base.q() != 4 {
        return Err(Error::WrongQ { required: "4", actual: l.base.q() });
    }
    check_path(l, ray)?;
    if ray.closed || !l.base.is_interior(ray.start()) || l.base.is_interior(ray.end()) {
        return Err(Error::NotBoundaryTerminated);
    }
    Ok(vertical_x(l, ray.vertices.iter().copied(), layer % l.layers))
}

/// Product of truncated geodesics. Two or more rays must leave a single
/// fracton; one ray leaves its pair and none leaves the vacuum.
pub fn x_stacked_truncated_geodesics(code: &StabilizerCode, rays: &[Path], layer: usize) -> Result<PauliString> {
    let l = &code.lattice;
    let mut op = PauliString::identity(l.num_edges());
    for r in rays {
        op.mul_assign(&x_truncated_geodesic(l, r, layer)?);
    }
    expect_weight(code, op, stack_weight(rays.len()))
}

fn stack_weight(n: usize) -> usize {
    match n {
        0 => 0,
        1 => 2,
        _ => 1,
    }
}

/// `T_X`: X on the vertical edge at every tree vertex across one gap.
pub fn x_fractal_tree_logical(l: &Lattice3D, tree: &Tree, iface: LayerInterface) -> Result<PauliString> {
    let gap = iface.check(l)?;
    check_vertex(l, tree.root)?;
    if !tree.is_boundary_terminated() {
        return Err(Error::NotBoundaryTerminated);
    }
    Ok(vertical_x(l, tree.vertices.iter().copied(), gap))
}

/// `T_X` with `prune` and everything beyond it removed.
pub fn x_pruned_tree(l: &Lattice3D, tree: &Tree, prune: usize, iface: LayerInterface) -> Result<PauliString> {
    let gap = iface.check(l)?;
    if !tree.contains(prune) {
        return Err(Error::UnknownId { kind: "tree vertex", id: prune });
    }
    if prune == tree.root {
        return Err(Error::InvalidArgument("pruning at the root leaves nothing".into()));
    }
    if !tree.is_boundary_terminated() {
        return Err(Error::NotBoundaryTerminated);
    }
    let cut = tree.subtree(prune);
    Ok(vertical_x(l, tree.vertices.iter().copied().filter(|v| !cut.contains(v)), gap))
}

/// Product of pruned trees. Two or more must leave a single fracton.
pub fn x_pruned_tree_series(
    code: &StabilizerCode,
    sites: &[(Tree, usize)],
    iface: LayerInterface,
) -> Result<PauliString> {
    let l = &code.lattice;
    let mut op = PauliString::identity(l.num_edges());
    for (tree, prune) in sites {
        op.mul_assign(&x_pruned_tree(l, tree, *prune, iface)?);
    }
    expect_weight(code, op, stack_weight(sites.len()))
}

fn require_even_p(l: &Lattice3D) -> Result<()> {
    if l.base.p() % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "membranes need even p; every p = {} prism meets an odd number of vertical edges",
            l.base.p()
        )));
    }
    Ok(())
}

/// X on the vertical edges of every vertex in the wedge.
pub fn x_wedge_membrane(l: &Lattice3D, wedge: &Wedge, iface: LayerInterface) -> Result<PauliString> {
    require_even_p(l)?;
    let gap = iface.check(l)?;
    Ok(vertical_x(l, wedge.vertices.iter().copied(), gap))
}

/// X on the vertical edges of the vertices two wedges share. Distinct
/// wedges must leave exactly one fracton; identical ones none.
pub fn x_wedge_intersection(
    code: &StabilizerCode,
    a: &Wedge,
    b: &Wedge,
    iface: LayerInterface,
) -> Result<PauliString> {
    let l = &code.lattice;
    require_even_p(l)?;
    let gap = iface.check(l)?;
    let common: BTreeSet<usize> = a.vertices.intersection(&b.vertices).copied().collect();
    let expected = if a.vertices == b.vertices { 0 } else { 1 };
    expect_weight(code, vertical_x(l, common, gap), expected)
}

/// Geometry of a Z string.
#[derive(Clone, Copy, Debug)]
pub enum ZString<'a> {
    /// `length` consecutive vertical edges above `(vertex, layer)`.
    Vertical { vertex: usize, length: usize },
    /// In-plane edges of a geodesic path.
    Geodesic(&'a Path),
    /// In-plane edges of a path lying inside a fractal tree.
    TreePath { tree: &'a Tree, path: &'a Path },
}

pub fn z_string(l: &Lattice3D, s: ZString<'_>, layer: usize) -> Result<PauliString> {
    let n = l.num_edges();
    match s {
        ZString::Vertical { vertex, length } => {
            check_vertex(l, vertex)?;
            if length == 0 || length > l.layers {
                return Err(Error::InvalidArgument(format!("vertical length {length} not in 1..={}", l.layers)));
            }
            Ok(PauliString::z_on(n, (0..length).map(|k| l.vertical(vertex, layer + k))))
        }
        ZString::Geodesic(path) => {
            check_path(l, path)?;
            Ok(PauliString::z_on(n, path.edges.iter().map(|&e| l.in_plane(e, layer))))
        }
        ZString::TreePath { tree, path } => {
            check_path(l, path)?;
            let te = tree.edge_set();
            if let Some(&e) = path.edges.iter().find(|e| !te.contains(e)) {
                return Err(Error::InvalidArgument(format!("edge {e} is not in the tree")));
            }
            Ok(PauliString::z_on(n, path.edges.iter().map(|&e| l.in_plane(e, layer))))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::in_stabilizer_group;
    use crate::hyptess::VertexSlot;
    use crate::lattice3::LatticeSpec;
    use crate::ycode::{build_code, CodeOptions};

    fn code(spec: LatticeSpec) -> StabilizerCode {
        build_code(spec.build().unwrap(), CodeOptions::default()).unwrap()
    }

    fn first_interior(c: &StabilizerCode) -> usize {
        c.lattice.base.interior_vertices().next().unwrap()
    }

    #[test]
    fn truncated_geodesic_leaves_a_pair() {
        let c = code(LatticeSpec::disk(5, 4, 3, 3).unwrap());
        let t = &c.lattice.base;
        let ray = t.geodesic_ray(VertexSlot { vertex: first_interior(&c), slot: 0 }, 100).unwrap();
        let op = x_truncated_geodesic(&c.lattice, &ray, 1).unwrap();
        assert_eq!(c.syndrome(&op).unwrap().len(), 2);
        assert!(x_stacked_truncated_geodesics(&c, std::slice::from_ref(&ray), 1).is_ok());
        assert!(x_stacked_truncated_geodesics(&c, &[], 1).unwrap().is_identity());
        // Doubling a ray cancels it, which is not a single fracton.
        assert!(matches!(
            x_stacked_truncated_geodesics(&c, &[ray.clone(), ray], 1),
            Err(Error::Construction { expected: 1, .. })
        ));
    }

    #[test]
    fn stacked_geodesics_leave_one_fracton() {
        let c = code(LatticeSpec::disk(5, 4, 3, 3).unwrap());
        let rays = find_stacked_geodesics(&c, 0, 0).unwrap();
        assert!(rays.len() >= 2);
        let op = x_stacked_truncated_geodesics(&c, &rays, 0).unwrap();
        let s = c.syndrome(&op).unwrap();
        assert_eq!(s.excited, vec![c.prism_term(0, 0).unwrap()]);
    }

    #[test]
    fn tree_logical_is_nontrivial() {
        let c = code(LatticeSpec::disk(4, 6, 2, 3).unwrap());
        let t = &c.lattice.base;
        let tree = t.fractal_tree(first_interior(&c), 0, usize::MAX).unwrap();
        for iface in [LayerInterface::top(0), LayerInterface::bottom(2)] {
            let op = x_fractal_tree_logical(&c.lattice, &tree, iface).unwrap();
            assert!(c.syndrome(&op).unwrap().is_empty());
            assert!(!in_stabilizer_group(&c, &op));
        }
        let short = t.fractal_tree(first_interior(&c), 0, 1).unwrap();
        assert!(matches!(
            x_fractal_tree_logical(&c.lattice, &short, LayerInterface::top(0)),
            Err(Error::NotBoundaryTerminated)
        ));
        assert!(x_fractal_tree_logical(&c.lattice, &tree, LayerInterface::top(3)).is_err());
    }

    #[test]
    fn pruned_tree_leaves_a_pair() {
        let c = code(LatticeSpec::disk(4, 6, 2, 3).unwrap());
        let t = &c.lattice.base;
        let tree = t.fractal_tree(first_interior(&c), 0, usize::MAX).unwrap();
        let iface = LayerInterface::top(1);
        for &v in tree.vertices[1..].iter().filter(|&&v| t.is_interior(v)) {
            let op = x_pruned_tree(&c.lattice, &tree, v, iface).unwrap();
            assert_eq!(c.syndrome(&op).unwrap().len(), 2, "prune {v}");
        }
        assert!(x_pruned_tree(&c.lattice, &tree, tree.root, iface).is_err());
    }

    #[test]
    fn side_only_moves_the_anchor() {
        let c = code(LatticeSpec::disk(4, 6, 2, 3).unwrap());
        let tree = c.lattice.base.fractal_tree(first_interior(&c), 1, usize::MAX).unwrap();
        let prune = tree.vertices[1];
        let a = x_pruned_tree(&c.lattice, &tree, prune, LayerInterface::top(1)).unwrap();
        let b = x_pruned_tree(&c.lattice, &tree, prune, LayerInterface::bottom(1)).unwrap();
        assert_eq!(a, b);
        assert_eq!(LayerInterface::top(1).anchor_layer(3), 1);
        assert_eq!(LayerInterface::bottom(2).anchor_layer(3), 0);
    }

    #[test]
    fn wedge_membranes_need_even_p() {
        let c = code(LatticeSpec::disk(6, 4, 2, 3).unwrap());
        let v = first_interior(&c);
        for w in wedges_at(&c.lattice.base, v, 0).unwrap() {
            let op = x_wedge_membrane(&c.lattice, &w, LayerInterface::top(0)).unwrap();
            assert!(c.syndrome(&op).unwrap().is_empty());
            assert!(!in_stabilizer_group(&c, &op));
        }
        let half = geodesic_wedge(&c.lattice.base, v, 0).unwrap();
        let op = x_wedge_membrane(&c.lattice, &half, LayerInterface::top(0)).unwrap();
        assert!(c.syndrome(&op).unwrap().is_empty());
        let (a, b) = find_wedge_intersection(&c, LayerInterface::top(0), 4).unwrap();
        let op = x_wedge_intersection(&c, &a, &b, LayerInterface::top(0)).unwrap();
        assert_eq!(c.syndrome(&op).unwrap().len(), 1);
        assert!(x_wedge_intersection(&c, &a, &a, LayerInterface::top(0)).unwrap().weight() > 0);

        let odd = code(LatticeSpec::disk(5, 4, 2, 3).unwrap());
        let w = geodesic_wedge(&odd.lattice.base, first_interior(&odd), 0).unwrap();
        assert!(x_wedge_membrane(&odd.lattice, &w, LayerInterface::top(0)).is_err());
    }

    #[test]
    fn boundary_to_boundary_tree_path_is_silent() {
        let c = code(LatticeSpec::disk(4, 6, 2, 3).unwrap());
        let t = &c.lattice.base;
        let tree = t.fractal_tree(first_interior(&c), 0, usize::MAX).unwrap();
        let (a, b) = t.wedge_branches(&tree, 0, 2).unwrap();
        let path = tree.path_between(a.end(), b.end());
        let op = z_string(&c.lattice, ZString::TreePath { tree: &tree, path: &path }, 1).unwrap();
        assert!(c.syndrome(&op).unwrap().is_empty());
        // Stopping at the root leaves one composite.
        let half = tree.path_between(a.end(), tree.root);
        let op = z_string(&c.lattice, ZString::TreePath { tree: &tree, path: &half }, 1).unwrap();
        assert!(!c.syndrome(&op).unwrap().is_empty());
    }

    #[test]
    fn vertical_z_string_moves_a_composite_up() {
        let c = code(LatticeSpec::disk(5, 4, 2, 4).unwrap());
        let v = first_interior(&c);
        let op = z_string(&c.lattice, ZString::Vertical { vertex: v, length: 2 }, 0).unwrap();
        let s = c.syndrome(&op).unwrap();
        let layers: BTreeSet<_> = s
            .excited
            .iter()
            .map(|&i| match c.terms[i].location {
                crate::ycode::Location::Vertex { layer, .. } => layer,
                _ => panic!("Z string excited a prism"),
            })
            .collect();
        assert_eq!(layers, BTreeSet::from([0, 2]));
        assert!(z_string(&c.lattice, ZString::Vertical { vertex: v, length: 5 }, 0).is_err());
        assert!(z_string(&c.lattice, ZString::Vertical { vertex: v, length: 4 }, 0).unwrap().weight() == 4);
    }
}
