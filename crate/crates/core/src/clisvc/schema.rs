//! Canonical lattice file: geometry plus the term list, sorted keys.
//!
//! Loading trusts only the descriptor (`schlafli`, `patch`, `layers`) and
//! the terms. Geometry is rebuilt from the descriptor and the file's
//! combinatorics must agree with it.

use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lattice3::{EdgeKind, Lattice3D, LatticeSpec};
use crate::paulis::PauliString;
use crate::ycode::{build_code, CodeOptions, Location, StabilizerCode, Term, TermKind};

pub fn generate(spec: &LatticeSpec, hexagon: bool) -> Result<StabilizerCode> {
    build_code(spec.build()?, CodeOptions { include_hexagon: hexagon })
}

fn geometry(l: &Lattice3D) -> Value {
    let t = &l.base;
    let vertices: Vec<Value> =
        t.vertices.iter().map(|v| json!({"id": v.id, "x": v.x, "y": v.y, "interior": v.interior})).collect();
    let edges3: Vec<Value> = (0..l.num_edges())
        .map(|id| {
            let e = l.edge_info(id);
            let kind = match e.kind {
                EdgeKind::InPlane => "in_plane",
                EdgeKind::Vertical => "vertical",
            };
            json!({"id": id, "kind": kind, "a": [e.a.0, e.a.1], "b": [e.b.0, e.b.1]})
        })
        .collect();
    let faces: Vec<Value> = t.faces.iter().map(|f| json!({"id": f.id, "vertices": f.vertices})).collect();
    let prisms: Vec<Value> = (0..l.num_prisms())
        .map(|id| {
            let p = l.prism_info(id);
            json!({"id": id, "face": p.face, "interval": p.interval})
        })
        .collect();
    json!({"vertices": vertices, "edges3": edges3, "faces": faces, "prisms": prisms})
}

pub fn term_json(t: &Term) -> Value {
    json!({"id": t.id, "kind": t.kind, "location": t.location, "edges": t.edges()})
}

pub fn to_json(code: &StabilizerCode) -> Value {
    let spec = code.lattice.spec();
    let mut v = geometry(&code.lattice);
    let obj = v.as_object_mut().expect("geometry is an object");
    obj.insert("schlafli".into(), json!(spec.schlafli));
    obj.insert("patch".into(), json!(spec.patch));
    obj.insert("layers".into(), json!(spec.layers));
    obj.insert("terms".into(), code.terms.iter().map(term_json).collect());
    v
}

/// Compact canonical text with a trailing newline.
pub fn to_string(code: &StabilizerCode) -> String {
    let mut s = serde_json::to_string(&to_json(code)).expect("lattice JSON serializes");
    s.push('\n');
    s
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TermIn {
    id: usize,
    kind: TermKind,
    location: Location,
    edges: Vec<usize>,
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Parse(format!("missing field `{key}`")))
}

fn parse<T: serde::de::DeserializeOwned>(v: &Value, what: &str) -> Result<T> {
    T::deserialize(v).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

/// Strip coordinates, which are float output and not part of the identity.
fn combinatorics(mut g: Value) -> Value {
    if let Some(vs) = g.get_mut("vertices").and_then(Value::as_array_mut) {
        for v in vs {
            if let Some(o) = v.as_object_mut() {
                o.remove("x");
                o.remove("y");
            }
        }
    }
    g
}

pub fn from_json(v: &Value) -> Result<StabilizerCode> {
    let spec = LatticeSpec {
        schlafli: parse(field(v, "schlafli")?, "schlafli")?,
        patch: parse(field(v, "patch")?, "patch")?,
        layers: parse(field(v, "layers")?, "layers")?,
    };
    let lattice = spec.build()?;
    let expected = combinatorics(geometry(&lattice));
    for key in ["vertices", "edges3", "faces", "prisms"] {
        let got = combinatorics(json!({ key: field(v, key)? }));
        if got[key] != expected[key] {
            return Err(Error::Parse(format!("`{key}` does not match the geometry regenerated from the descriptor")));
        }
    }
    let n = lattice.num_edges();
    let raw: Vec<TermIn> = parse(field(v, "terms")?, "terms")?;
    let mut terms = Vec::with_capacity(raw.len());
    for (i, t) in raw.into_iter().enumerate() {
        if t.id != i {
            return Err(Error::Parse(format!("term ids must be 0, 1, 2, ...; found {} at position {i}", t.id)));
        }
        if let Some(&e) = t.edges.iter().find(|&&e| e >= n) {
            return Err(Error::UnknownId { kind: "edge3", id: e });
        }
        let pauli = if t.kind.is_x_type() { PauliString::x_on(n, t.edges) } else { PauliString::z_on(n, t.edges) };
        terms.push(Term { id: i, kind: t.kind, location: t.location, pauli });
    }
    Ok(StabilizerCode::from_terms(lattice, terms))
}

pub fn from_str(s: &str) -> Result<StabilizerCode> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    from_json(&v)
}

pub fn load(path: &std::path::Path) -> Result<StabilizerCode> {
    let s = std::fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
    from_str(&s)
}

/// Adds the hexagon terms of a (3,6) lattice unless some are present.
pub fn with_hexagons(code: StabilizerCode) -> Result<StabilizerCode> {
    if code.terms.iter().any(|t| t.kind == TermKind::HexagonZ) {
        return Ok(code);
    }
    let full = build_code(code.lattice.clone(), CodeOptions { include_hexagon: true })?;
    let mut terms = code.terms;
    terms.extend(full.terms.into_iter().filter(|t| t.kind == TermKind::HexagonZ));
    Ok(StabilizerCode::from_terms(code.lattice, terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_byte_identical() {
        for (spec, hex) in [
            (LatticeSpec::disk(5, 4, 1, 3).unwrap(), false),
            (LatticeSpec::torus(3, 6, 3, 3).unwrap(), true),
        ] {
            let a = to_string(&generate(&spec, hex).unwrap());
            let b = to_string(&from_str(&a).unwrap());
            assert_eq!(a, b);
            let v: Value = serde_json::from_str(&a).unwrap();
            let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
            assert_eq!(keys, ["edges3", "faces", "layers", "patch", "prisms", "schlafli", "terms", "vertices"]);
        }
    }

    #[test]
    fn rejects_tampering() {
        let code = generate(&LatticeSpec::disk(5, 4, 1, 3).unwrap(), false).unwrap();
        let mut v = to_json(&code);
        v["faces"][0]["vertices"][0] = json!(999);
        assert!(matches!(from_json(&v), Err(Error::Parse(_))));
        let mut v = to_json(&code);
        v["terms"][0]["edges"] = json!([1_000_000]);
        assert!(matches!(from_json(&v), Err(Error::UnknownId { .. })));
        let mut v = to_json(&code);
        v["terms"][0]["id"] = json!(5);
        assert!(from_json(&v).is_err());
        let mut v = to_json(&code);
        v.as_object_mut().unwrap().remove("layers");
        assert!(from_json(&v).is_err());
    }

    #[test]
    fn coordinates_are_not_checked() {
        let code = generate(&LatticeSpec::disk(4, 6, 1, 3).unwrap(), false).unwrap();
        let mut v = to_json(&code);
        v["vertices"][0]["x"] = json!(0.5);
        assert_eq!(from_json(&v).unwrap().terms.len(), code.terms.len());
    }

    #[test]
    fn hexagons_are_added_once() {
        let spec = LatticeSpec::torus(3, 6, 3, 3).unwrap();
        let plain = generate(&spec, false).unwrap();
        let full = generate(&spec, true).unwrap();
        let added = with_hexagons(plain).unwrap();
        assert_eq!(added.terms.len(), full.terms.len());
        assert_eq!(with_hexagons(added).unwrap().terms.len(), full.terms.len());
    }
}
