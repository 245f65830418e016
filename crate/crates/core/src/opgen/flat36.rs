//! Named operators of the flat (3,6) model on a periodic torus.
//!
//! Rows are the lines `j = const` of the `(i, j)` vertex grid. The strip
//! above row `r` is crossed by the edges `(i,r)-(i,r+1)` and
//! `(i,r)-(i-1,r+1)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hyptess::{PatchKind, Tessellation};
use crate::lattice3::Lattice3D;
use crate::paulis::PauliString;

pub const FLAT36_NAMES: [&str; 6] = [
    "z_hexagon",
    "z_triangle",
    "charge_move_inplane",
    "charge_move_vertical",
    "x_flux_membrane",
    "x_planeon_move",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case", deny_unknown_fields)]
pub enum Flat36Op {
    /// Z around the six triangles meeting at `vertex`.
    ZHexagon { vertex: usize, layer: usize },
    /// Z on the three edges of a triangle.
    ZTriangle { face: usize, layer: usize },
    /// Z on the rhombus spanned by slots `direction` and `direction + 1`
    /// at `vertex`; moves a charge to the opposite corner.
    ChargeMoveInplane { vertex: usize, layer: usize, direction: usize },
    /// Z on the vertical edge above `(vertex, layer)`.
    ChargeMoveVertical { vertex: usize, layer: usize },
    /// X on the strip edges above `row` that avoid color `flavor`, in
    /// `count` consecutive layers starting at `layer`.
    XFluxMembrane { row: usize, flavor: usize, layer: usize, count: usize },
    /// X on `length` consecutive strip edges above `row`, starting right of
    /// the up-triangle at `column`: a dual path in one layer.
    XPlaneonMove { row: usize, column: usize, length: usize, layer: usize },
}

impl Flat36Op {
    pub fn from_name(name: &str, params: &serde_json::Value) -> Result<Self> {
        let mut obj = match params {
            serde_json::Value::Object(m) => m.clone(),
            serde_json::Value::Null => serde_json::Map::new(),
            _ => return Err(Error::Parse("flat36 params must be a JSON object".into())),
        };
        obj.insert("name".into(), serde_json::Value::String(name.to_string()));
        serde_json::from_value(serde_json::Value::Object(obj)).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn torus_side(t: &Tessellation) -> Result<usize> {
    match (t.p(), t.q(), t.kind) {
        (3, 6, PatchKind::Torus { l }) => Ok(l),
        (p, q, _) => Err(Error::InvalidArgument(format!("flat36 operators need a (3,6) torus, got ({p},{q})"))),
    }
}

fn vid(l: usize, i: usize, j: usize) -> usize {
    (j % l) * l + (i % l)
}

pub fn flat36_op(lat: &Lattice3D, op: &Flat36Op) -> Result<PauliString> {
    let t = &lat.base;
    let l = torus_side(t)?;
    let n = lat.num_edges();
    let nv = t.num_vertices();
    let check_v = |v: usize| if v < nv { Ok(()) } else { Err(Error::UnknownId { kind: "vertex", id: v }) };
    match *op {
        Flat36Op::ZHexagon { vertex, layer } => {
            check_v(vertex)?;
            Ok(PauliString::z_on(n, t.link_cycle(vertex)?.into_iter().map(|e| lat.in_plane(e, layer))))
        }
        Flat36Op::ZTriangle { face, layer } => {
            let f = t.faces.get(face).ok_or(Error::UnknownId { kind: "face", id: face })?;
            Ok(PauliString::z_on(n, f.edges.iter().map(|&e| lat.in_plane(e, layer))))
        }
        Flat36Op::ChargeMoveInplane { vertex, layer, direction } => {
            check_v(vertex)?;
            let (e1, w1) = t.neighbor(vertex, direction).ok_or(Error::BoundaryVertex(vertex))?;
            let (e2, w2) = t.neighbor(vertex, direction + 1).ok_or(Error::BoundaryVertex(vertex))?;
            // Far corner: the common neighbor of w1 and w2 other than `vertex`.
            let (f1, f2) = t
                .incident_edges(w1)
                .filter_map(|(_, e)| {
                    let x = t.other_end(e, w1);
                    (x != vertex).then(|| t.edge_between(w2, x).map(|f| (e, f))).flatten()
                })
                .next()
                .ok_or_else(|| Error::InvalidArgument("rhombus has no far corner".into()))?;
            Ok(PauliString::z_on(n, [e1, e2, f1, f2].into_iter().map(|e| lat.in_plane(e, layer))))
        }
        Flat36Op::ChargeMoveVertical { vertex, layer } => {
            check_v(vertex)?;
            Ok(PauliString::z_on(n, [lat.vertical(vertex, layer)]))
        }
        Flat36Op::XFluxMembrane { row, flavor, layer, count } => {
            let honeycomb = t.hexagonal_sublattice(flavor)?;
            if count == 0 || count > lat.layers {
                return Err(Error::InvalidArgument(format!("layer count {count} not in 1..={}", lat.layers)));
            }
            let strip: Vec<usize> = (0..l)
                .flat_map(|i| [3 * vid(l, i, row) + 1, 3 * vid(l, i, row) + 2])
                .filter(|&e| t.edges[e].endpoints.iter().all(|v| honeycomb.contains(v)))
                .collect();
            Ok(PauliString::x_on(n, (0..count).flat_map(|k| strip.iter().map(move |&e| (k, e))).map(|(k, e)| lat.in_plane(e, layer + k))))
        }
        Flat36Op::XPlaneonMove { row, column, length, layer } => {
            if length == 0 || length > 2 * l {
                return Err(Error::InvalidArgument(format!("dual path length {length} not in 1..={}", 2 * l)));
            }
            // up(i) | down(i) share (i+1,r)-(i,r+1); down(i) | up(i+1) share (i+1,r)-(i+1,r+1).
            let edges = (0..length).map(|k| {
                let v = vid(l, column + 1 + k / 2, row);
                if k % 2 == 0 { 3 * v + 2 } else { 3 * v + 1 }
            });
            Ok(PauliString::x_on(n, edges.map(|e| lat.in_plane(e, layer))))
        }
    }
}
