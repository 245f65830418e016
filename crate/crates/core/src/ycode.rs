//! Hamiltonian terms of the X-cube (q = 4) and Y-cube (q ≥ 6) models on a
//! stacked tessellation, with syndromes grouped into particles.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::gf2::{Echelon, GF2Matrix};
use crate::lattice3::Lattice3D;
use crate::paulis::PauliString;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TermKind {
    PrismZ,
    VertexPlanarX,
    VertexMixedX,
    VertexType1X,
    VertexType2X,
    HexagonZ,
}

impl TermKind {
    pub fn is_x_type(self) -> bool {
        !matches!(self, TermKind::PrismZ | TermKind::HexagonZ)
    }

    pub fn is_vertex(self) -> bool {
        matches!(
            self,
            TermKind::VertexPlanarX | TermKind::VertexMixedX | TermKind::VertexType1X | TermKind::VertexType2X
        )
    }
}

/// Anchor of a term. Vertex terms built from one slot-parity class record it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum Location {
    Hexagon { hexagon: usize, layer: usize },
    Vertex {
        vertex: usize,
        layer: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        parity: Option<usize>,
    },
    Prism { face: usize, interval: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub id: usize,
    pub kind: TermKind,
    pub location: Location,
    pub pauli: PauliString,
}

impl Term {
    /// Qubits the term acts on, ascending.
    pub fn edges(&self) -> Vec<usize> {
        self.pauli.support()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CodeOptions {
    pub include_hexagon: bool,
}

#[derive(Clone, Debug)]
pub struct StabilizerCode {
    pub lattice: Lattice3D,
    pub terms: Vec<Term>,
    /// X-type terms containing each edge (flipped by a Z on it).
    x_terms_on_edge: Vec<Vec<usize>>,
    z_terms_on_edge: Vec<Vec<usize>>,
    x_ech: OnceLock<Echelon>,
    z_ech: OnceLock<Echelon>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Syndrome {
    /// Excited term ids, ascending.
    pub excited: Vec<usize>,
}

impl Syndrome {
    pub fn is_empty(&self) -> bool {
        self.excited.is_empty()
    }

    pub fn len(&self) -> usize {
        self.excited.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Particle {
    Fracton {
        face: usize,
        interval: usize,
        term: usize,
    },
    Composite {
        vertex: usize,
        layer: usize,
        kinds: Vec<TermKind>,
        terms: Vec<usize>,
        species: Option<String>,
    },
    Unclassified {
        terms: Vec<usize>,
    },
}

pub fn build_code(lattice: Lattice3D, options: CodeOptions) -> Result<StabilizerCode> {
    let base = &lattice.base;
    let (p, q) = (base.p(), base.q());
    if options.include_hexagon && (p, q) != (3, 6) {
        return Err(Error::InvalidArgument(format!("hexagon terms need a (3,6) lattice, got ({p},{q})")));
    }
    let n = lattice.num_edges();
    let mut terms = Vec::new();
    let mut push = |kind: TermKind, location: Location, edges: Vec<usize>| {
        let pauli =
            if kind.is_x_type() { PauliString::x_on(n, edges) } else { PauliString::z_on(n, edges) };
        terms.push(Term { id: terms.len(), kind, location, pauli });
    };

    for interval in 0..lattice.layers {
        for f in (0..base.num_faces()).filter(|&f| base.is_interior_face(f)) {
            let edges = lattice.incident_edges(lattice.prism(f, interval))?.to_vec();
            push(TermKind::PrismZ, Location::Prism { face: f, interval }, edges);
        }
    }
    let interior: Vec<usize> = base.interior_vertices().collect();
    for layer in 0..lattice.layers {
        for &v in &interior {
            let slots = |par: Option<usize>| -> Vec<usize> {
                (0..q)
                    .filter(|s| par.is_none_or(|c| s % 2 == c))
                    .map(|s| lattice.in_plane(base.edge_at(v, s).expect("interior vertex is saturated"), layer))
                    .collect()
            };
            let verticals = [lattice.vertical(v, layer + lattice.layers - 1), lattice.vertical(v, layer)];
            let at = |parity| Location::Vertex { vertex: v, layer, parity };
            let mixed_kind = if q == 4 { TermKind::VertexMixedX } else { TermKind::VertexType1X };
            if q == 4 {
                push(TermKind::VertexPlanarX, at(None), slots(None));
            }
            for c in 0..2 {
                let mut es = slots(Some(c));
                es.extend(verticals);
                push(mixed_kind, at(Some(c)), es);
            }
            if q != 4 {
                push(TermKind::VertexType2X, at(None), slots(None));
            }
        }
    }
    if options.include_hexagon {
        for layer in 0..lattice.layers {
            for &v in &interior {
                let edges = base.link_cycle(v)?.into_iter().map(|e| lattice.in_plane(e, layer)).collect();
                push(TermKind::HexagonZ, Location::Hexagon { hexagon: v, layer }, edges);
            }
        }
    }
    Ok(StabilizerCode::from_terms(lattice, terms))
}

impl StabilizerCode {
    /// Assemble a code from explicit terms; ids are reassigned densely.
    pub fn from_terms(lattice: Lattice3D, mut terms: Vec<Term>) -> Self {
        let n = lattice.num_edges();
        let mut x_terms_on_edge = vec![Vec::new(); n];
        let mut z_terms_on_edge = vec![Vec::new(); n];
        for (i, t) in terms.iter_mut().enumerate() {
            t.id = i;
            for e in t.pauli.x.ones() {
                x_terms_on_edge[e].push(i);
            }
            for e in t.pauli.z.ones() {
                z_terms_on_edge[e].push(i);
            }
        }
        StabilizerCode { lattice, terms, x_terms_on_edge, z_terms_on_edge, x_ech: OnceLock::new(), z_ech: OnceLock::new() }
    }

    pub fn num_qubits(&self) -> usize {
        self.lattice.num_edges()
    }

    pub fn x_terms(&self) -> impl Iterator<Item = &Term> {
        self.terms.iter().filter(|t| t.kind.is_x_type())
    }

    pub fn z_terms(&self) -> impl Iterator<Item = &Term> {
        self.terms.iter().filter(|t| !t.kind.is_x_type())
    }

    pub fn hx(&self) -> GF2Matrix {
        GF2Matrix::from_rows(self.num_qubits(), self.x_terms().map(|t| t.pauli.x.clone()).collect())
            .expect("term length matches lattice")
    }

    pub fn hz(&self) -> GF2Matrix {
        GF2Matrix::from_rows(self.num_qubits(), self.z_terms().map(|t| t.pauli.z.clone()).collect())
            .expect("term length matches lattice")
    }

    pub(crate) fn x_echelon(&self) -> &Echelon {
        self.x_ech.get_or_init(|| self.hx().echelon())
    }

    pub(crate) fn z_echelon(&self) -> &Echelon {
        self.z_ech.get_or_init(|| self.hz().echelon())
    }

    /// Terms anticommuting with a Pauli on `edge`: X flips Z-type terms and
    /// Z flips X-type terms.
    pub fn terms_flipped_by(&self, edge: usize, x: bool, z: bool) -> impl Iterator<Item = usize> + '_ {
        let a: &[usize] = if x { &self.z_terms_on_edge[edge] } else { &[] };
        let b: &[usize] = if z { &self.x_terms_on_edge[edge] } else { &[] };
        a.iter().chain(b).copied()
    }

    /// Every pair of terms commutes. Sparse: only terms sharing an edge are
    /// compared.
    pub fn audit(&self) -> Result<()> {
        for t in &self.terms {
            let mut parity: HashMap<usize, bool> = HashMap::new();
            for e in t.pauli.support() {
                let flips = self.terms_flipped_by(e, t.pauli.x.get(e), t.pauli.z.get(e));
                for u in flips {
                    *parity.entry(u).or_default() ^= true;
                }
            }
            if let Some((&u, _)) = parity.iter().filter(|(_, &odd)| odd).min() {
                return Err(Error::AuditFailed(t.id, u));
            }
        }
        Ok(())
    }

    pub fn syndrome(&self, op: &PauliString) -> Result<Syndrome> {
        if op.len() != self.num_qubits() {
            return Err(Error::LengthMismatch { left: op.len(), right: self.num_qubits() });
        }
        let mut flips: BTreeMap<usize, bool> = BTreeMap::new();
        for e in op.support() {
            for t in self.terms_flipped_by(e, op.x.get(e), op.z.get(e)) {
                *flips.entry(t).or_default() ^= true;
            }
        }
        Ok(Syndrome { excited: flips.into_iter().filter(|(_, odd)| *odd).map(|(t, _)| t).collect() })
    }

    /// Excited term set as a bit-vector over term ids.
    pub fn syndrome_bits(&self, op: &PauliString) -> Result<BitVec> {
        let s = self.syndrome(op)?;
        Ok(BitVec::from_indices(self.terms.len(), s.excited))
    }

    pub fn classify_excitations(&self, s: &Syndrome) -> Vec<Particle> {
        let mut out = Vec::new();
        let mut groups: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        let mut loose = Vec::new();
        for &t in &s.excited {
            let Some(term) = self.terms.get(t) else {
                loose.push(t);
                continue;
            };
            match term.location {
                Location::Prism { face, interval } => out.push(Particle::Fracton { face, interval, term: t }),
                Location::Vertex { vertex, layer, .. } => groups.entry((vertex, layer)).or_default().push(t),
                Location::Hexagon { .. } => loose.push(t),
            }
        }
        for ((vertex, layer), ts) in groups {
            let mut kinds: Vec<TermKind> = ts.iter().map(|&t| self.terms[t].kind).collect();
            kinds.sort();
            let species = if ts.len() == 2 { self.species(&ts).map(str::to_string) } else { None };
            out.push(Particle::Composite { vertex, layer, kinds, terms: ts, species });
        }
        if !loose.is_empty() {
            out.push(Particle::Unclassified { terms: loose });
        }
        out
    }

    fn species(&self, pair: &[usize]) -> Option<&'static str> {
        let (a, b) = (&self.terms[pair[0]], &self.terms[pair[1]]);
        let flat36 = (self.lattice.base.p(), self.lattice.base.q()) == (3, 6);
        let mut kinds = [a.kind, b.kind];
        kinds.sort();
        match kinds {
            [TermKind::VertexPlanarX, TermKind::VertexMixedX] => Some("lineon"),
            [TermKind::VertexMixedX, TermKind::VertexMixedX] => Some("vertical_lineon"),
            [TermKind::VertexType1X, TermKind::VertexType2X] if flat36 => Some("planeon"),
            [TermKind::VertexType1X, TermKind::VertexType2X] => Some("treeon"),
            [TermKind::VertexType1X, TermKind::VertexType1X] if flat36 => Some("charge"),
            [TermKind::VertexType1X, TermKind::VertexType1X] => Some("vertical_lineon"),
            _ => None,
        }
    }

    /// Term ids anchored at `(vertex, layer)`.
    pub fn vertex_terms(&self, vertex: usize, layer: usize) -> Vec<usize> {
        self.terms
            .iter()
            .filter(|t| matches!(t.location, Location::Vertex { vertex: v, layer: l, .. } if v == vertex && l == layer))
            .map(|t| t.id)
            .collect()
    }

    pub fn prism_term(&self, face: usize, interval: usize) -> Option<usize> {
        self.terms
            .iter()
            .find(|t| t.location == Location::Prism { face, interval })
            .map(|t| t.id)
    }
}
