//! Pauli strings on lattice edges as pairs of GF(2) vectors. Phases are
//! dropped everywhere.

use std::fmt;
use std::str::FromStr;

use crate::bits::BitVec;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    X,
    Y,
    Z,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    pub x: BitVec,
    pub z: BitVec,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        PauliString { x: BitVec::zeros(n), z: BitVec::zeros(n) }
    }

    pub fn single(n: usize, edge: usize, pauli: Pauli) -> Self {
        let mut s = Self::identity(n);
        s.apply(edge, pauli);
        s
    }

    pub fn x_on(n: usize, edges: impl IntoIterator<Item = usize>) -> Self {
        PauliString { x: BitVec::from_indices(n, edges), z: BitVec::zeros(n) }
    }

    pub fn z_on(n: usize, edges: impl IntoIterator<Item = usize>) -> Self {
        PauliString { x: BitVec::zeros(n), z: BitVec::from_indices(n, edges) }
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// Multiply in place by a single-edge Pauli.
    pub fn apply(&mut self, edge: usize, pauli: Pauli) {
        match pauli {
            Pauli::X => self.x.toggle(edge),
            Pauli::Z => self.z.toggle(edge),
            Pauli::Y => {
                self.x.toggle(edge);
                self.z.toggle(edge);
            }
        }
    }

    pub fn weight(&self) -> usize {
        self.x.or(&self.z).count_ones()
    }

    pub fn support(&self) -> Vec<usize> {
        self.x.or(&self.z).ones().collect()
    }

    pub fn multiply(&self, other: &PauliString) -> Result<PauliString> {
        self.check_len(other)?;
        let mut out = self.clone();
        out.mul_assign(other);
        Ok(out)
    }

    pub(crate) fn mul_assign(&mut self, other: &PauliString) {
        self.x.xor_assign(&other.x);
        self.z.xor_assign(&other.z);
    }

    /// Symplectic form `⟨a.x, b.z⟩ + ⟨a.z, b.x⟩` is zero.
    pub fn commutes(&self, other: &PauliString) -> Result<bool> {
        self.check_len(other)?;
        Ok(!self.anticommutes_unchecked(other))
    }

    #[inline]
    pub(crate) fn anticommutes_unchecked(&self, other: &PauliString) -> bool {
        self.x.dot(&other.z) ^ self.z.dot(&other.x)
    }

    fn check_len(&self, other: &PauliString) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch { left: self.len(), right: other.len() });
        }
        Ok(())
    }

    pub fn get(&self, edge: usize) -> Option<Pauli> {
        match (self.x.get(edge), self.z.get(edge)) {
            (false, false) => None,
            (true, false) => Some(Pauli::X),
            (false, true) => Some(Pauli::Z),
            (true, true) => Some(Pauli::Y),
        }
    }

    /// Sparse text form, e.g. `X@12 Z@7 Y@3`, ordered by edge id.
    pub fn to_sparse(&self) -> String {
        self.to_string()
    }

    /// Parse the sparse text form for a lattice with `n` edges. Repeated
    /// entries multiply.
    pub fn parse_sparse(s: &str, n: usize) -> Result<PauliString> {
        let mut out = PauliString::identity(n);
        for tok in s.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            let (p, idx) = tok
                .split_once('@')
                .ok_or_else(|| Error::Parse(format!("expected P@edge, got {tok:?}")))?;
            let pauli = match p {
                "X" | "x" => Pauli::X,
                "Y" | "y" => Pauli::Y,
                "Z" | "z" => Pauli::Z,
                "I" | "i" => continue,
                _ => return Err(Error::Parse(format!("unknown Pauli {p:?}"))),
            };
            let edge: usize = idx.parse().map_err(|_| Error::Parse(format!("bad edge index {idx:?}")))?;
            if edge >= n {
                return Err(Error::UnknownId { kind: "edge3", id: edge });
            }
            out.apply(edge, pauli);
        }
        Ok(out)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for e in self.support() {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let c = match self.get(e).unwrap() {
                Pauli::X => 'X',
                Pauli::Y => 'Y',
                Pauli::Z => 'Z',
            };
            write!(f, "{c}@{e}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliString[{}]({self})", self.len())
    }
}

impl FromStr for Pauli {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "X" | "x" => Ok(Pauli::X),
            "Y" | "y" => Ok(Pauli::Y),
            "Z" | "z" => Ok(Pauli::Z),
            _ => Err(Error::Parse(format!("unknown Pauli {s:?}"))),
        }
    }
}
