//! Walks and regions on a tessellation: geodesics, fractal trees and the
//! regions they bound.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use super::{Tessellation, VertexSlot};
use crate::error::{Error, Result};

/// Alternating vertex/edge walk: `edges[i]` joins `vertices[i]` and
/// `vertices[i + 1]`. A closed path has as many edges as vertices and its
/// last edge returns to `vertices[0]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    pub closed: bool,
}

impl Path {
    pub fn start(&self) -> usize {
        self.vertices[0]
    }

    pub fn end(&self) -> usize {
        *self.vertices.last().unwrap()
    }
}

/// Subgraph grown by the alternating-slot rule.
#[derive(Clone, Debug)]
pub struct Tree {
    pub root: usize,
    pub parity: usize,
    /// Vertices in breadth-first order, root first.
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    /// Parent vertex and connecting edge, for every non-root vertex.
    pub parent: HashMap<usize, (usize, usize)>,
    pub depth: HashMap<usize, usize>,
    /// Interior vertices that were not expanded because of the depth cap.
    pub truncated: Vec<usize>,
    /// Whether the rule re-entered an already visited vertex (flat tilings).
    pub collapsed: bool,
}

impl Tree {
    pub fn contains(&self, v: usize) -> bool {
        self.depth.contains_key(&v)
    }

    pub fn vertex_set(&self) -> BTreeSet<usize> {
        self.vertices.iter().copied().collect()
    }

    pub fn edge_set(&self) -> HashSet<usize> {
        self.edges.iter().copied().collect()
    }

    /// Every branch ends on the patch boundary.
    pub fn is_boundary_terminated(&self) -> bool {
        self.truncated.is_empty()
    }

    pub fn children(&self, v: usize) -> Vec<usize> {
        let mut c: Vec<usize> = self
            .parent
            .iter()
            .filter(|(_, &(par, _))| par == v)
            .map(|(&child, _)| child)
            .collect();
        c.sort_unstable();
        c
    }

    /// `v` together with everything below it.
    pub fn subtree(&self, v: usize) -> HashSet<usize> {
        let mut kids: HashMap<usize, Vec<usize>> = HashMap::new();
        for (&child, &(par, _)) in &self.parent {
            kids.entry(par).or_default().push(child);
        }
        let mut out = HashSet::new();
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            if out.insert(x) {
                if let Some(ks) = kids.get(&x) {
                    stack.extend(ks);
                }
            }
        }
        out
    }

    /// Tree path from `v` up to the root.
    pub fn path_to_root(&self, v: usize) -> Path {
        let mut vertices = vec![v];
        let mut edges = Vec::new();
        let mut cur = v;
        while let Some(&(par, e)) = self.parent.get(&cur) {
            edges.push(e);
            vertices.push(par);
            cur = par;
        }
        Path { vertices, edges, closed: false }
    }

    /// The unique tree path from `a` to `b`.
    pub fn path_between(&self, a: usize, b: usize) -> Path {
        let up_a = self.path_to_root(a);
        let up_b = self.path_to_root(b);
        let on_b: HashMap<usize, usize> = up_b.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let (ia, ib) = up_a
            .vertices
            .iter()
            .enumerate()
            .find_map(|(i, v)| on_b.get(v).map(|&j| (i, j)))
            .expect("tree vertices share the root");
        let mut vertices: Vec<usize> = up_a.vertices[..=ia].to_vec();
        let mut edges: Vec<usize> = up_a.edges[..ia].to_vec();
        vertices.extend(up_b.vertices[..ib].iter().rev());
        edges.extend(up_b.edges[..ib].iter().rev());
        Path { vertices, edges, closed: false }
    }
}

/// Which way a wedge branch bends at every vertex: `Left` keeps the wedge
/// on the left of the outward walk.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TurnSide {
    Left,
    Right,
}

/// Region cut out by two boundary-terminated tree branches.
#[derive(Clone, Debug)]
pub struct Wedge {
    pub root: usize,
    pub branch_a: Path,
    pub branch_b: Path,
    pub faces: BTreeSet<usize>,
    pub vertices: BTreeSet<usize>,
}

impl Tessellation {
    /// Straight continuation from `start`: every step leaves through the slot
    /// opposite (`+ q/2`) the one it entered by. Stops on a boundary vertex,
    /// after `max_steps` edges, or when a closed loop returns to `start`.
    pub fn geodesic_ray(&self, start: VertexSlot, max_steps: usize) -> Result<Path> {
        let q = self.q();
        if q != 4 {
            return Err(Error::WrongQ { required: "4 (use fractal_tree for q >= 6)", actual: q });
        }
        if start.vertex >= self.num_vertices() {
            return Err(Error::UnknownId { kind: "vertex", id: start.vertex });
        }
        let mut vertices = vec![start.vertex];
        let mut edges = Vec::new();
        let mut v = start.vertex;
        let mut slot = start.slot % q;
        let mut closed = false;
        while edges.len() < max_steps {
            let Some((e, w)) = self.neighbor(v, slot) else { break };
            edges.push(e);
            let next_slot = (self.slot_of(e, w) + q / 2) % q;
            if w == start.vertex && next_slot == start.slot % q {
                closed = true;
                break;
            }
            vertices.push(w);
            if !self.is_interior(w) {
                break;
            }
            v = w;
            slot = next_slot;
        }
        Ok(Path { vertices, edges, closed })
    }

    /// Both rays through `v` along slots `slot` and `slot + 2`, joined into one
    /// line running from the far end of the second ray to the far end of the
    /// first.
    pub fn geodesic_line(&self, start: VertexSlot, max_steps: usize) -> Result<Path> {
        let fwd = self.geodesic_ray(start, max_steps)?;
        if fwd.closed {
            return Ok(fwd);
        }
        let back = self.geodesic_ray(
            VertexSlot { vertex: start.vertex, slot: start.slot + self.q() / 2 },
            max_steps,
        )?;
        let mut vertices: Vec<usize> = back.vertices.iter().rev().copied().collect();
        let mut edges: Vec<usize> = back.edges.iter().rev().copied().collect();
        vertices.extend(&fwd.vertices[1..]);
        edges.extend(&fwd.edges);
        Ok(Path { vertices, edges, closed: false })
    }

    /// Grows the tree whose root takes every slot of the given parity and
    /// whose other vertices take the alternating slot class containing their
    /// incoming edge.
    pub fn fractal_tree(&self, root: usize, parity: usize, max_depth: usize) -> Result<Tree> {
        if root >= self.num_vertices() {
            return Err(Error::UnknownId { kind: "vertex", id: root });
        }
        if !self.is_interior(root) {
            return Err(Error::BoundaryVertex(root));
        }
        let q = self.q();
        let mut tree = Tree {
            root,
            parity: parity % 2,
            vertices: vec![root],
            edges: Vec::new(),
            parent: HashMap::new(),
            depth: HashMap::from([(root, 0)]),
            truncated: Vec::new(),
            collapsed: false,
        };
        let mut seen_edges = HashSet::new();
        let mut queue = VecDeque::from([(root, parity % 2, usize::MAX)]);
        while let Some((v, class, incoming)) = queue.pop_front() {
            let d = tree.depth[&v];
            if v != root && !self.is_interior(v) {
                continue;
            }
            if d >= max_depth {
                tree.truncated.push(v);
                continue;
            }
            for s in (class..q).step_by(2) {
                let Some((e, w)) = self.neighbor(v, s) else { continue };
                if e == incoming || !seen_edges.insert(e) {
                    continue;
                }
                tree.edges.push(e);
                if tree.depth.contains_key(&w) {
                    tree.collapsed = true;
                    continue;
                }
                tree.depth.insert(w, d + 1);
                tree.parent.insert(w, (v, e));
                tree.vertices.push(w);
                queue.push_back((w, self.slot_of(e, w) % 2, e));
            }
        }
        Ok(tree)
    }

    /// Outward branch of `tree` leaving the root through `first_slot` and
    /// always taking the child adjacent (two slots away) to the incoming
    /// edge on the given side.
    pub fn tree_branch(&self, tree: &Tree, first_slot: usize, side: TurnSide) -> Result<Path> {
        let q = self.q();
        let first_slot = first_slot % q;
        if first_slot % 2 != tree.parity {
            return Err(Error::InvalidArgument(format!(
                "slot {first_slot} is not in the root class of parity {}",
                tree.parity
            )));
        }
        let edges_in_tree = tree.edge_set();
        let mut v = tree.root;
        let mut slot = first_slot;
        let mut path = Path { vertices: vec![v], edges: Vec::new(), closed: false };
        loop {
            let (e, w) = self.neighbor(v, slot).ok_or(Error::NotBoundaryTerminated)?;
            if !edges_in_tree.contains(&e) {
                return Err(Error::NotBoundaryTerminated);
            }
            path.edges.push(e);
            path.vertices.push(w);
            if !self.is_interior(w) {
                return Ok(path);
            }
            let s_in = self.slot_of(e, w);
            slot = match side {
                TurnSide::Left => (s_in + 2) % q,
                TurnSide::Right => (s_in + q - 2) % q,
            };
            v = w;
        }
    }

    /// Two branches bounding a wedge that contains the whole tree, leaving
    /// the root through `slot_a` and `slot_b`.
    pub fn wedge_branches(&self, tree: &Tree, slot_a: usize, slot_b: usize) -> Result<(Path, Path)> {
        let q = self.q();
        let (a, b) = (slot_a % q, slot_b % q);
        if a == b {
            return Err(Error::InvalidArgument("wedge branches must leave through distinct slots".into()));
        }
        let in_arc = |lo: usize, hi: usize, s: usize| {
            let span = (hi + q - lo) % q;
            let off = (s + q - lo) % q;
            off > 0 && off < span
        };
        let others: Vec<usize> = (tree.parity..q).step_by(2).filter(|&s| s != a && s != b).collect();
        let (a, b) = if others.iter().all(|&s| in_arc(a, b, s)) {
            (a, b)
        } else if others.iter().all(|&s| in_arc(b, a, s)) {
            (b, a)
        } else {
            return Err(Error::InvalidArgument(
                "no side of the two branches contains the rest of the tree".into(),
            ));
        };
        Ok((
            self.tree_branch(tree, a, TurnSide::Left)?,
            self.tree_branch(tree, b, TurnSide::Right)?,
        ))
    }

    /// Faces and vertices between two root-to-boundary branches, on the
    /// counterclockwise side of `branch_a` at the root.
    pub fn wedge_region(&self, branch_a: &Path, branch_b: &Path) -> Result<Wedge> {
        let root = branch_a.start();
        if branch_b.start() != root {
            return Err(Error::InvalidArgument("branches must share the root".into()));
        }
        for br in [branch_a, branch_b] {
            if br.edges.is_empty() || self.is_interior(br.end()) {
                return Err(Error::NotBoundaryTerminated);
            }
        }
        let cut: HashSet<usize> = branch_a.edges.iter().chain(&branch_b.edges).copied().collect();
        let first = branch_a.edges[0];
        let next = self
            .edge_at(root, self.slot_of(first, root) + 1)
            .ok_or(Error::BoundaryVertex(root))?;
        let seed = self
            .vertex_faces(root)
            .iter()
            .copied()
            .find(|&f| {
                let face = &self.faces[f];
                let n = face.vertices.len();
                (0..n).any(|i| {
                    face.vertices[i] == root && face.edges[i] == first && face.edges[(i + n - 1) % n] == next
                })
            })
            .ok_or_else(|| Error::InvalidArgument("no face between the branch and its neighbor".into()))?;

        let mut faces = BTreeSet::from([seed]);
        let mut stack = vec![seed];
        while let Some(f) = stack.pop() {
            for &e in &self.faces[f].edges {
                if cut.contains(&e) {
                    continue;
                }
                for &g in self.edge_faces(e) {
                    if faces.insert(g) {
                        stack.push(g);
                    }
                }
            }
        }
        let vertices: BTreeSet<usize> = faces.iter().flat_map(|&f| self.faces[f].vertices.iter().copied()).collect();
        if faces.len() == self.num_faces() {
            return Err(Error::InvalidArgument("branches do not separate the patch".into()));
        }
        Ok(Wedge {
            root,
            branch_a: branch_a.clone(),
            branch_b: branch_b.clone(),
            faces,
            vertices,
        })
    }

    /// Proper 3-coloring of a triangulation, seeded with color 0 at vertex 0
    /// and color 1 at its slot-0 neighbor.
    pub fn three_coloring(&self) -> Result<Vec<usize>> {
        if self.p() != 3 {
            return Err(Error::InvalidArgument("3-coloring needs a triangulation".into()));
        }
        let n = self.num_vertices();
        let mut color = vec![usize::MAX; n];
        color[0] = 0;
        let (_, w) = self.neighbor(0, 0).ok_or(Error::BoundaryVertex(0))?;
        color[w] = 1;
        let mut changed = true;
        while changed {
            changed = false;
            for f in &self.faces {
                let known: Vec<usize> = f.vertices.iter().filter(|&&v| color[v] != usize::MAX).copied().collect();
                if known.len() == 2 {
                    let missing = f.vertices.iter().find(|&&v| color[v] == usize::MAX).copied().unwrap();
                    color[missing] = 3 - color[known[0]] - color[known[1]];
                    changed = true;
                }
            }
        }
        for f in &self.faces {
            let mut cs: Vec<usize> = f.vertices.iter().map(|&v| color[v]).collect();
            cs.sort_unstable();
            if cs != [0, 1, 2] {
                return Err(Error::InvalidArgument(
                    "triangulation is not 3-colorable (torus side not a multiple of 3?)".into(),
                ));
            }
        }
        Ok(color)
    }

    /// Honeycomb sublattice of a `(3,6)` tessellation that omits the color
    /// class `flavor` of the 3-coloring.
    pub fn hexagonal_sublattice(&self, flavor: usize) -> Result<BTreeSet<usize>> {
        if (self.p(), self.q()) != (3, 6) {
            return Err(Error::InvalidArgument("hexagonal sublattices exist only on (3,6)".into()));
        }
        if flavor > 2 {
            return Err(Error::InvalidArgument(format!("flavor must be 0, 1 or 2, got {flavor}")));
        }
        if let super::PatchKind::Torus { l } = self.kind {
            if l % 3 != 0 {
                return Err(Error::InvalidArgument(format!("torus side {l} is not a multiple of 3")));
            }
        }
        let color = self.three_coloring()?;
        Ok((0..self.num_vertices()).filter(|&v| color[v] != flavor).collect())
    }

    /// Edges of the faces around `v` that do not touch `v`: the boundary
    /// cycle of its star.
    pub fn link_cycle(&self, v: usize) -> Result<Vec<usize>> {
        if !self.is_interior(v) {
            return Err(Error::BoundaryVertex(v));
        }
        let mut out = BTreeSet::new();
        for &f in self.vertex_faces(v) {
            for &e in &self.faces[f].edges {
                if !self.edges[e].endpoints.contains(&v) {
                    out.insert(e);
                }
            }
        }
        Ok(out.into_iter().collect())
    }
}
