//! Mobility by breadth-first search over syndromes. A move is a single X or
//! Z on one edge; it is admitted when the excitation count stays within the
//! budget. A state whose count falls below the initial count has lost a
//! particle to the boundary: it is recorded but never expanded, since from
//! there boundary-created particles would flood the search. The same holds
//! for any move on an edge next to a term-less face or vertex: such a move
//! can trade part of a particle with the boundary, so its result is recorded
//! as absorbed as well.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::in_stabilizer_group;
use crate::hyptess::{Curvature, VertexSlot};
use crate::lattice3::LatticeSpec;
use crate::opgen::{
    find_pruned_tree_series, find_stacked_geodesics, find_wedge_intersection, wedges_at, x_fractal_tree_logical,
    x_pruned_tree, x_pruned_tree_series, x_stacked_truncated_geodesics, x_truncated_geodesic, x_wedge_intersection,
    x_wedge_membrane, z_string, LayerInterface, ZString,
};
use crate::paulis::PauliString;
use crate::ycode::{build_code, CodeOptions, Particle, StabilizerCode, Syndrome};

pub const DEFAULT_MAX_STATES: usize = 200_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MoveAlphabet {
    X,
    Z,
    #[default]
    Both,
}

impl std::str::FromStr for MoveAlphabet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "x" | "X" => Ok(MoveAlphabet::X),
            "z" | "Z" => Ok(MoveAlphabet::Z),
            "both" => Ok(MoveAlphabet::Both),
            _ => Err(Error::Parse(format!("moves must be x, z or both, got {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct MobilityQuery<'a> {
    pub code: &'a StabilizerCode,
    pub initial: PauliString,
    pub moves: MoveAlphabet,
    /// Excitation cap; `None` means the initial count.
    pub budget: Option<usize>,
    pub max_states: usize,
}

impl<'a> MobilityQuery<'a> {
    pub fn new(code: &'a StabilizerCode, initial: PauliString, moves: MoveAlphabet) -> Self {
        MobilityQuery { code, initial, moves, budget: None, max_states: DEFAULT_MAX_STATES }
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = Some(budget);
        self
    }

    pub fn with_max_states(mut self, max_states: usize) -> Self {
        self.max_states = max_states;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Position {
    Prism { face: usize, interval: usize },
    Vertex { vertex: usize, layer: usize },
    Term { term: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MobilityReport {
    /// Particle positions over every visited state that still holds the
    /// initial number of excitations.
    pub reachable_positions: BTreeSet<Position>,
    /// Base vertices and faces under those positions.
    pub in_plane_vertices: BTreeSet<usize>,
    pub in_plane_faces: BTreeSet<usize>,
    /// Layers (vertex positions) and intervals (prism positions) reached.
    pub layers: BTreeSet<usize>,
    pub initial_layers: BTreeSet<usize>,
    pub vertical_mobility: bool,
    pub initial_weight: usize,
    pub budget: usize,
    pub visited_state_count: usize,
    pub absorbed_state_count: usize,
    pub truncated: bool,
}

fn positions(code: &StabilizerCode, s: &[usize]) -> Vec<Position> {
    let syn = Syndrome { excited: s.to_vec() };
    let mut out = Vec::new();
    for p in code.classify_excitations(&syn) {
        match p {
            Particle::Fracton { face, interval, .. } => out.push(Position::Prism { face, interval }),
            Particle::Composite { vertex, layer, .. } => out.push(Position::Vertex { vertex, layer }),
            Particle::Unclassified { terms } => out.extend(terms.into_iter().map(|term| Position::Term { term })),
        }
    }
    out
}

/// Symmetric difference of a sorted state with a small flip list.
fn toggle(state: &[usize], flips: &[usize]) -> Vec<usize> {
    let mut f = flips.to_vec();
    f.sort_unstable();
    // Terms flipped twice by one move cancel.
    let mut odd = Vec::with_capacity(f.len());
    for t in f {
        if odd.last() == Some(&t) {
            odd.pop();
        } else {
            odd.push(t);
        }
    }
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::with_capacity(state.len() + odd.len());
    while i < state.len() || j < odd.len() {
        match (state.get(i), odd.get(j)) {
            (Some(&a), Some(&b)) if a == b => {
                i += 1;
                j += 1;
            }
            (Some(&a), Some(&b)) if a < b => {
                out.push(a);
                i += 1;
            }
            (Some(_), Some(&b)) | (None, Some(&b)) => {
                out.push(b);
                j += 1;
            }
            (Some(&a), None) => {
                out.push(a);
                i += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

pub fn reachable(q: &MobilityQuery<'_>) -> Result<MobilityReport> {
    let code = q.code;
    let start = code.syndrome(&q.initial)?.excited;
    let w0 = start.len();
    let budget = q.budget.unwrap_or(w0);
    if budget < w0 {
        return Err(Error::InvalidArgument(format!("budget {budget} is below the initial weight {w0}")));
    }
    let n = code.num_qubits();
    let paulis: &[(bool, bool)] = match q.moves {
        MoveAlphabet::X => &[(true, false)],
        MoveAlphabet::Z => &[(false, true)],
        MoveAlphabet::Both => &[(true, false), (false, true)],
    };

    let open_x: Vec<bool> = (0..n)
        .map(|e| {
            let l = &code.lattice;
            l.incident_prisms(e).map_or(true, |ps| {
                ps.iter().any(|&pid| !l.base.is_interior_face(l.prism_info(pid).face))
            })
        })
        .collect();
    let open_z: Vec<bool> = (0..n)
        .map(|e| {
            let edge = code.lattice.edge_info(e);
            !(code.lattice.base.is_interior(edge.a.0) && code.lattice.base.is_interior(edge.b.0))
        })
        .collect();

    let mut seen: HashSet<Vec<usize>> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start.clone()]);
    let mut resting: Vec<Vec<usize>> = Vec::new();
    let mut absorbed = 0usize;
    let mut truncated = false;
    let mut flips = Vec::new();
    'bfs: while let Some(state) = queue.pop_front() {
        resting.push(state.clone());
        // At full budget only edges under an excitation can avoid adding one.
        let edges: Vec<usize> = if state.len() < budget {
            (0..n).collect()
        } else {
            let set: BTreeSet<usize> = state.iter().flat_map(|&t| code.terms[t].pauli.support()).collect();
            set.into_iter().collect()
        };
        for e in edges {
            for &(x, z) in paulis {
                flips.clear();
                flips.extend(code.terms_flipped_by(e, x, z));
                if flips.is_empty() {
                    continue;
                }
                let next = toggle(&state, &flips);
                if next.len() > budget || seen.contains(&next) {
                    continue;
                }
                if seen.len() >= q.max_states {
                    truncated = true;
                    break 'bfs;
                }
                seen.insert(next.clone());
                let touches_boundary = (x && open_x[e]) || (z && open_z[e]);
                if next.len() < w0 || touches_boundary {
                    absorbed += 1;
                } else {
                    queue.push_back(next);
                }
            }
        }
    }
    // States still queued at truncation were visited but not expanded.
    resting.extend(queue);

    let mut report = MobilityReport {
        reachable_positions: BTreeSet::new(),
        in_plane_vertices: BTreeSet::new(),
        in_plane_faces: BTreeSet::new(),
        layers: BTreeSet::new(),
        initial_layers: BTreeSet::new(),
        vertical_mobility: false,
        initial_weight: w0,
        budget,
        visited_state_count: seen.len(),
        absorbed_state_count: absorbed,
        truncated,
    };
    for p in positions(code, &start) {
        match p {
            Position::Prism { interval: l, .. } | Position::Vertex { layer: l, .. } => {
                report.initial_layers.insert(l);
            }
            Position::Term { .. } => {}
        }
    }
    for s in resting.iter().filter(|s| s.len() == w0) {
        for p in positions(code, s) {
            match p {
                Position::Prism { face, interval } => {
                    report.in_plane_faces.insert(face);
                    report.layers.insert(interval);
                }
                Position::Vertex { vertex, layer } => {
                    report.in_plane_vertices.insert(vertex);
                    report.layers.insert(layer);
                }
                Position::Term { .. } => {}
            }
            report.reachable_positions.insert(p);
        }
    }
    report.vertical_mobility = report.layers != report.initial_layers;
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub p: usize,
    pub q: usize,
    pub flat: bool,
    /// Species label of the in-plane vertex composite.
    pub composite: String,
    pub composite_reach: usize,
    /// Reachable vertices equal the geometry the species should follow.
    pub composite_matches_geometry: bool,
    pub composite_vertical: bool,
    /// `1D` or `none`; absent on tori.
    pub dipole_in_plane: Option<String>,
    pub dipole_vertical: Option<bool>,
    /// In-plane X logical geometries checked to be logical.
    pub x_logicals: Vec<String>,
    /// Single-fracton constructions checked to leave one fracton.
    pub single_fracton: Vec<String>,
    /// Relaxed-budget charge reach on flat (3,6) disks: same-color vertices.
    pub charge_sublattice: Option<bool>,
    pub charge_vertical: Option<bool>,
}

fn interior_set(t: &crate::hyptess::Tessellation, vs: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
    vs.into_iter().filter(|&v| t.is_interior(v)).collect()
}

/// One row per lattice, measured rather than looked up.
pub fn mobility_table(specs: &[LatticeSpec]) -> Result<Vec<TableRow>> {
    specs.iter().map(table_row).collect()
}

fn table_row(spec: &LatticeSpec) -> Result<TableRow> {
    let lat = spec.build()?;
    let code = build_code(lat, CodeOptions::default())?;
    let l = &code.lattice;
    let t = &l.base;
    let (p, q) = (t.p(), t.q());
    let n = code.num_qubits();
    let flat = t.pq.curvature() == Curvature::Flat;
    let disk = !t.is_periodic();
    let v0 = t.interior_vertices().next().ok_or_else(|| Error::InvalidArgument("lattice has no interior vertex".into()))?;
    let depth = t.num_vertices();
    let tree = t.fractal_tree(v0, 0, depth)?;

    // In-plane composite: a string from v0 to the boundary, or a single
    // edge on a torus.
    let creator = if !disk {
        PauliString::z_on(n, [l.in_plane(t.edge_at(v0, 0).expect("torus vertex is saturated"), 0)])
    } else if q == 4 {
        let ray = t.geodesic_ray(VertexSlot { vertex: v0, slot: 0 }, depth)?;
        z_string(l, ZString::Geodesic(&ray), 0)?
    } else {
        let leaf = *tree.vertices.iter().find(|&&v| !t.is_interior(v)).ok_or(Error::NotBoundaryTerminated)?;
        let path = tree.path_between(v0, leaf);
        z_string(l, ZString::TreePath { tree: &tree, path: &path }, 0)?
    };
    let composite = code
        .classify_excitations(&code.syndrome(&creator)?)
        .into_iter()
        .find_map(|p| match p {
            Particle::Composite { species, .. } => species,
            _ => None,
        })
        .unwrap_or_else(|| "unknown".into());
    let rep = reachable(&MobilityQuery::new(&code, creator, MoveAlphabet::Z))?;
    let expected: BTreeSet<usize> = if q == 4 {
        let line = t.geodesic_line(VertexSlot { vertex: v0, slot: 0 }, depth)?;
        interior_set(t, line.vertices)
    } else if disk {
        interior_set(t, tree.vertices.iter().copied())
    } else {
        // The edge at slot 0 lies on the honeycomb avoiding the third color.
        let col = t.three_coloring()?;
        let w = t.neighbor(v0, 0).expect("torus vertex is saturated").1;
        t.hexagonal_sublattice(3 - col[v0] - col[w])?
    };
    let mut row = TableRow {
        p,
        q,
        flat,
        composite,
        composite_reach: rep.in_plane_vertices.len(),
        composite_matches_geometry: rep.in_plane_vertices == expected,
        composite_vertical: rep.vertical_mobility,
        dipole_in_plane: None,
        dipole_vertical: None,
        x_logicals: Vec::new(),
        single_fracton: Vec::new(),
        charge_sublattice: None,
        charge_vertical: None,
    };
    if !disk {
        return Ok(row);
    }

    let iface = LayerInterface::top(0);
    let empty_and_nontrivial =
        |op: &PauliString| -> Result<bool> { Ok(code.syndrome(op)?.is_empty() && !in_stabilizer_group(&code, op)) };
    if !flat {
        let dipole = if q == 4 {
            let ray = t.geodesic_ray(VertexSlot { vertex: v0, slot: 0 }, depth)?;
            x_truncated_geodesic(l, &ray, 0)?
        } else {
            x_pruned_tree(l, &tree, tree.vertices[1], iface)?
        };
        let rep = reachable(&MobilityQuery::new(&code, dipole, MoveAlphabet::X))?;
        row.dipole_in_plane = Some(if rep.in_plane_faces.len() > 2 { "1D" } else { "none" }.into());
        row.dipole_vertical = Some(rep.vertical_mobility);

        let (name, wedge_name) = if q == 4 { ("geodesic", "geodesic wedge") } else { ("fractal tree", "fractal-tree wedge") };
        if empty_and_nontrivial(&x_fractal_tree_logical(l, &tree, iface)?)? {
            row.x_logicals.push(name.into());
        }
        if p % 2 == 0 {
            let wedges = wedges_at(t, v0, 0)?;
            let mut ok = !wedges.is_empty();
            for w in &wedges {
                ok &= empty_and_nontrivial(&x_wedge_membrane(l, w, iface)?)?;
            }
            if ok {
                row.x_logicals.push(wedge_name.into());
            }
        }

        let target = (0..t.num_faces()).find(|&f| t.is_interior_face(f));
        if let Some(f) = target {
            if q == 4 {
                if let Ok(rays) = find_stacked_geodesics(&code, f, 0) {
                    if x_stacked_truncated_geodesics(&code, &rays, 0).is_ok() {
                        row.single_fracton.push("truncated-geodesic stack".into());
                    }
                }
            } else if let Ok(sites) = find_pruned_tree_series(&code, f, iface) {
                let trees: Result<Vec<_>> = sites.iter().map(|s| Ok((s.tree(t)?, s.prune))).collect();
                if x_pruned_tree_series(&code, &trees?, iface).is_ok() {
                    row.single_fracton.push("pruned-tree series".into());
                }
            }
        }
        if p % 2 == 0 {
            if let Ok((a, b)) = find_wedge_intersection(&code, iface, 8) {
                if x_wedge_intersection(&code, &a, &b, iface).is_ok() {
                    row.single_fracton.push("wedge intersection".into());
                }
            }
        }
    } else if (p, q) == (3, 6) {
        // Charge: two honeycomb strings from v0 to the boundary.
        let mut op = PauliString::identity(n);
        for parity in 0..2 {
            let tr = t.fractal_tree(v0, parity, depth)?;
            let leaf = *tr.vertices.iter().find(|&&v| !t.is_interior(v)).ok_or(Error::NotBoundaryTerminated)?;
            let path = tr.path_between(v0, leaf);
            op.mul_assign(&z_string(l, ZString::TreePath { tree: &tr, path: &path }, 0)?);
        }
        let w0 = code.syndrome(&op)?.len();
        let rep = reachable(&MobilityQuery::new(&code, op, MoveAlphabet::Z).with_budget(w0 + 2))?;
        let col = t.three_coloring()?;
        let same: BTreeSet<usize> = t.interior_vertices().filter(|&v| col[v] == col[v0]).collect();
        row.charge_sublattice = Some(rep.in_plane_vertices == same);
        row.charge_vertical = Some(rep.vertical_mobility);
    }
    Ok(row)
}
