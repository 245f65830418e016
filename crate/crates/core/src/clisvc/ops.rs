//! Named operator constructors with JSON parameters.

use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::hyptess::{Path, VertexSlot, Wedge};
use crate::opgen::{
    find_pruned_tree_series, find_stacked_geodesics, find_wedge_intersection, flat36_op, geodesic_wedge,
    x_fractal_tree_logical, x_pruned_tree, x_pruned_tree_series, x_stacked_truncated_geodesics,
    x_truncated_geodesic, x_wedge_intersection, x_wedge_membrane, z_string, Flat36Op, LayerInterface,
    PrunedSite, Side, ZString,
};
use crate::paulis::PauliString;
use crate::ycode::StabilizerCode;

pub const KINDS: [&str; 9] = [
    "truncated_geodesic",
    "stacked_geodesics",
    "tree_logical",
    "pruned_tree",
    "pruned_tree_series",
    "wedge",
    "wedge_intersection",
    "z_string",
    "flat36:NAME",
];

fn params<T: DeserializeOwned>(kind: &str, v: &Value) -> Result<T> {
    let v = if v.is_null() { Value::Object(Default::default()) } else { v.clone() };
    serde_json::from_value(v).map_err(|e| Error::Parse(format!("{kind} params: {e}")))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Ray {
    vertex: usize,
    slot: usize,
    #[serde(default)]
    layer: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Stack {
    rays: Option<Vec<VertexSlot>>,
    target_face: Option<usize>,
    #[serde(default)]
    layer: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TreeAt {
    root: usize,
    #[serde(default)]
    parity: usize,
    prune: Option<usize>,
    #[serde(default)]
    interval: usize,
    #[serde(default)]
    side: Side,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Series {
    sites: Option<Vec<PrunedSite>>,
    target_face: Option<usize>,
    #[serde(default)]
    interval: usize,
    #[serde(default)]
    side: Side,
}

/// A tree wedge (`slots`) or, on q = 4, a geodesic half-plane (`slot`).
#[derive(Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
struct WedgeSel {
    root: usize,
    #[serde(default)]
    parity: usize,
    slots: Option<[usize; 2]>,
    slot: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WedgeOp {
    root: usize,
    #[serde(default)]
    parity: usize,
    slots: Option<[usize; 2]>,
    slot: Option<usize>,
    #[serde(default)]
    interval: usize,
    #[serde(default)]
    side: Side,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Intersection {
    a: Option<WedgeSel>,
    b: Option<WedgeSel>,
    #[serde(default = "default_roots")]
    max_roots: usize,
    #[serde(default)]
    interval: usize,
    #[serde(default)]
    side: Side,
}

fn default_roots() -> usize {
    8
}

#[derive(Deserialize)]
#[serde(tag = "geometry", rename_all = "snake_case", deny_unknown_fields)]
enum ZGeom {
    Vertical {
        vertex: usize,
        length: usize,
        #[serde(default)]
        layer: usize,
    },
    Geodesic {
        vertex: usize,
        slot: usize,
        #[serde(default)]
        line: bool,
        #[serde(default)]
        layer: usize,
    },
    TreePath {
        root: usize,
        #[serde(default)]
        parity: usize,
        from: usize,
        to: usize,
        #[serde(default)]
        layer: usize,
    },
}

fn wedge(code: &StabilizerCode, w: WedgeSel) -> Result<Wedge> {
    let t = &code.lattice.base;
    match (w.slot, w.slots) {
        (Some(s), None) => geodesic_wedge(t, w.root, s),
        (None, Some([a, b])) => {
            let tree = t.fractal_tree(w.root, w.parity, t.num_vertices())?;
            let (ba, bb) = t.wedge_branches(&tree, a, b)?;
            t.wedge_region(&ba, &bb)
        }
        _ => Err(Error::Parse("wedge needs exactly one of `slot` or `slots`".into())),
    }
}

fn ray(code: &StabilizerCode, start: VertexSlot) -> Result<Path> {
    let t = &code.lattice.base;
    t.geodesic_ray(start, t.num_vertices())
}

/// Builds the operator named `kind`; see [`KINDS`].
pub fn build_operator(code: &StabilizerCode, kind: &str, p: &Value) -> Result<PauliString> {
    let l = &code.lattice;
    let t = &l.base;
    if let Some(name) = kind.strip_prefix("flat36:") {
        return flat36_op(l, &Flat36Op::from_name(name, p)?);
    }
    match kind {
        "truncated_geodesic" => {
            let r: Ray = params(kind, p)?;
            x_truncated_geodesic(l, &ray(code, VertexSlot { vertex: r.vertex, slot: r.slot })?, r.layer)
        }
        "stacked_geodesics" => {
            let s: Stack = params(kind, p)?;
            let rays = match (s.rays, s.target_face) {
                (Some(starts), None) => starts.into_iter().map(|v| ray(code, v)).collect::<Result<Vec<_>>>()?,
                (None, Some(f)) => find_stacked_geodesics(code, f, s.layer)?,
                _ => return Err(Error::Parse("stacked_geodesics needs exactly one of `rays` or `target_face`".into())),
            };
            x_stacked_truncated_geodesics(code, &rays, s.layer)
        }
        "tree_logical" | "pruned_tree" => {
            let a: TreeAt = params(kind, p)?;
            let tree = t.fractal_tree(a.root, a.parity, t.num_vertices())?;
            let iface = LayerInterface { interval: a.interval, side: a.side };
            match (kind, a.prune) {
                ("tree_logical", None) => x_fractal_tree_logical(l, &tree, iface),
                ("pruned_tree", Some(v)) => x_pruned_tree(l, &tree, v, iface),
                ("pruned_tree", None) => Err(Error::Parse("pruned_tree needs `prune`".into())),
                _ => Err(Error::Parse("tree_logical takes no `prune`".into())),
            }
        }
        "pruned_tree_series" => {
            let s: Series = params(kind, p)?;
            let iface = LayerInterface { interval: s.interval, side: s.side };
            let sites = match (s.sites, s.target_face) {
                (Some(sites), None) => sites,
                (None, Some(f)) => find_pruned_tree_series(code, f, iface)?,
                _ => return Err(Error::Parse("pruned_tree_series needs exactly one of `sites` or `target_face`".into())),
            };
            let trees = sites.iter().map(|s| Ok((s.tree(t)?, s.prune))).collect::<Result<Vec<_>>>()?;
            x_pruned_tree_series(code, &trees, iface)
        }
        "wedge" => {
            let w: WedgeOp = params(kind, p)?;
            let sel = WedgeSel { root: w.root, parity: w.parity, slots: w.slots, slot: w.slot };
            x_wedge_membrane(l, &wedge(code, sel)?, LayerInterface { interval: w.interval, side: w.side })
        }
        "wedge_intersection" => {
            let w: Intersection = params(kind, p)?;
            let iface = LayerInterface { interval: w.interval, side: w.side };
            let (a, b) = match (w.a, w.b) {
                (Some(a), Some(b)) => (wedge(code, a)?, wedge(code, b)?),
                (None, None) => find_wedge_intersection(code, iface, w.max_roots)?,
                _ => return Err(Error::Parse("wedge_intersection needs both `a` and `b`, or neither".into())),
            };
            x_wedge_intersection(code, &a, &b, iface)
        }
        "z_string" => match params::<ZGeom>(kind, p)? {
            ZGeom::Vertical { vertex, length, layer } => z_string(l, ZString::Vertical { vertex, length }, layer),
            ZGeom::Geodesic { vertex, slot, line, layer } => {
                let start = VertexSlot { vertex, slot };
                let path = if line { t.geodesic_line(start, t.num_vertices())? } else { ray(code, start)? };
                z_string(l, ZString::Geodesic(&path), layer)
            }
            ZGeom::TreePath { root, parity, from, to, layer } => {
                let tree = t.fractal_tree(root, parity, t.num_vertices())?;
                for v in [from, to] {
                    if !tree.contains(v) {
                        return Err(Error::UnknownId { kind: "tree vertex", id: v });
                    }
                }
                let path = tree.path_between(from, to);
                z_string(l, ZString::TreePath { tree: &tree, path: &path }, layer)
            }
        },
        _ => Err(Error::InvalidArgument(format!("unknown operator kind `{kind}`; expected one of {}", KINDS.join(", ")))),
    }
}
