//! Bit-packed GF(2) linear algebra, plus the degeneracy exponent and a
//! paired logical basis built on it.

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::paulis::PauliString;
use crate::ycode::StabilizerCode;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GF2Matrix {
    ncols: usize,
    rows: Vec<BitVec>,
}

impl GF2Matrix {
    pub fn new(ncols: usize) -> Self {
        GF2Matrix { ncols, rows: Vec::new() }
    }

    pub fn from_rows(ncols: usize, rows: Vec<BitVec>) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::LengthMismatch { left: r.len(), right: ncols });
        }
        Ok(GF2Matrix { ncols, rows })
    }

    pub fn identity(n: usize) -> Self {
        GF2Matrix { ncols: n, rows: (0..n).map(|i| BitVec::from_indices(n, [i])).collect() }
    }

    pub fn push_row(&mut self, row: BitVec) -> Result<()> {
        if row.len() != self.ncols {
            return Err(Error::LengthMismatch { left: row.len(), right: self.ncols });
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn transpose(&self) -> GF2Matrix {
        let mut t: Vec<BitVec> = (0..self.ncols).map(|_| BitVec::zeros(self.rows.len())).collect();
        for (i, row) in self.rows.iter().enumerate() {
            for j in row.ones() {
                t[j].set(i, true);
            }
        }
        GF2Matrix { ncols: self.rows.len(), rows: t }
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    pub fn echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.ncols);
        for r in &self.rows {
            e.insert(r.clone());
        }
        e
    }

    /// Basis of `{v : M v = 0}`.
    pub fn kernel(&self) -> Vec<BitVec> {
        let mut e = self.echelon();
        e.fully_reduce();
        let pivot_of_col: Vec<Option<usize>> = {
            let mut m = vec![None; self.ncols];
            for (i, &c) in e.pivots.iter().enumerate() {
                m[c] = Some(i);
            }
            m
        };
        let mut out = Vec::new();
        for f in (0..self.ncols).filter(|&c| pivot_of_col[c].is_none()) {
            let mut v = BitVec::zeros(self.ncols);
            v.set(f, true);
            for (row, &c) in e.rows.iter().zip(&e.pivots) {
                if row.get(f) {
                    v.set(c, true);
                }
            }
            out.push(v);
        }
        out
    }

    pub fn in_row_space(&self, v: &BitVec) -> bool {
        self.echelon().contains(v)
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<GF2Matrix> {
        let n = self.rows.len();
        if n != self.ncols {
            return None;
        }
        // Gauss-Jordan on [M | I].
        let mut aug: Vec<(BitVec, BitVec)> =
            self.rows.iter().cloned().zip(GF2Matrix::identity(n).rows).collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| aug[r].0.get(col))?;
            aug.swap(col, piv);
            let (pa, pb) = aug[col].clone();
            for (r, row) in aug.iter_mut().enumerate() {
                if r != col && row.0.get(col) {
                    row.0.xor_assign(&pa);
                    row.1.xor_assign(&pb);
                }
            }
        }
        Some(GF2Matrix { ncols: n, rows: aug.into_iter().map(|(_, b)| b).collect() })
    }
}

/// Incrementally built row echelon basis. Each stored row has a distinct
/// pivot (its first set bit) and is zero at the pivots of all earlier rows,
/// so reducing against the rows in insertion order is a single pass.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn reduce(&self, v: &mut BitVec) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(row);
            }
        }
    }

    /// Adds `v` to the span; returns whether it was independent.
    pub fn insert(&mut self, mut v: BitVec) -> bool {
        self.reduce(&mut v);
        match v.first_one() {
            Some(p) => {
                self.rows.push(v);
                self.pivots.push(p);
                true
            }
            None => false,
        }
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        w.is_zero()
    }

    /// Bring the basis to reduced row echelon form, sorted by pivot.
    fn fully_reduce(&mut self) {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        let mut rows: Vec<BitVec> = order.iter().map(|&i| self.rows[i].clone()).collect();
        let pivots: Vec<usize> = order.iter().map(|&i| self.pivots[i]).collect();
        for i in (0..rows.len()).rev() {
            let (head, tail) = rows.split_at_mut(i);
            let src = &tail[0];
            for r in head.iter_mut() {
                if r.get(pivots[i]) {
                    r.xor_assign(src);
                }
            }
        }
        self.rows = rows;
        self.pivots = pivots;
    }
}

/// `k = n − rank(hx) − rank(hz)` after the commutation audit.
pub fn gsd_exponent(code: &StabilizerCode) -> Result<usize> {
    code.audit()?;
    let n = code.num_qubits();
    Ok(n - code.x_echelon().rank() - code.z_echelon().rank())
}

/// X part in the X-term row space and Z part in the Z-term row space.
pub fn in_stabilizer_group(code: &StabilizerCode, op: &PauliString) -> bool {
    op.len() == code.num_qubits() && code.x_echelon().contains(&op.x) && code.z_echelon().contains(&op.z)
}

/// `k` pairs `(X̄_i, Z̄_i)` with `X̄_i Z̄_j` anticommuting iff `i = j`.
pub fn logical_basis(code: &StabilizerCode) -> Result<Vec<(PauliString, PauliString)>> {
    code.audit()?;
    let n = code.num_qubits();
    let xl = quotient_basis(&code.hz().kernel(), code.x_echelon());
    let zl = quotient_basis(&code.hx().kernel(), code.z_echelon());
    if xl.len() != zl.len() {
        return Err(Error::Construction { expected: xl.len(), got: vec![zl.len()] });
    }
    let k = xl.len();
    if k == 0 {
        return Ok(Vec::new());
    }
    let pairing = GF2Matrix {
        ncols: k,
        rows: xl.iter().map(|x| BitVec::from_indices(k, (0..k).filter(|&j| x.dot(&zl[j])))).collect(),
    };
    let inv = pairing
        .inverse()
        .ok_or_else(|| Error::InvalidArgument("logical pairing matrix is singular".into()))?;
    // Z'_j = Σ_i inv[i][j] Z_i makes X_i · Z'_j = δ_ij.
    let inv_t = inv.transpose();
    let paired: Vec<BitVec> = (0..k)
        .map(|j| {
            let mut acc = BitVec::zeros(n);
            for i in inv_t.rows[j].ones() {
                acc.xor_assign(&zl[i]);
            }
            acc
        })
        .collect();
    Ok(xl
        .into_iter()
        .zip(paired)
        .map(|(x, z)| (PauliString { x, z: BitVec::zeros(n) }, PauliString { x: BitVec::zeros(n), z }))
        .collect())
}

/// Representatives of `span(candidates)` modulo `span(base)`.
fn quotient_basis(candidates: &[BitVec], base: &Echelon) -> Vec<BitVec> {
    let mut acc = base.clone();
    candidates.iter().filter(|v| acc.insert((*v).clone())).cloned().collect()
}
