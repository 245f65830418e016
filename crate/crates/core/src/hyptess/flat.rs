//! Periodic square and triangular tori.

use super::{PatchKind, RawTiling, SchlafliPair, Tessellation};
use crate::error::{Error, Result};

/// `l × l` torus of the square `(4,4)` or triangular `(3,6)` lattice.
///
/// Vertex `(i, j)` has id `j·l + i`. Slot 0 at every vertex points along
/// the first lattice vector; the triangular lattice uses the second lattice
/// vector at 60°.
pub fn build_periodic_flat(pq: SchlafliPair, l: usize) -> Result<Tessellation> {
    if l < 2 {
        return Err(Error::InvalidArgument(format!("torus side must be at least 2, got {l}")));
    }
    let raw = match (pq.p, pq.q) {
        (4, 4) => square(l),
        (3, 6) => triangular(l),
        (p, q) => return Err(Error::UnsupportedFlat { p, q }),
    };
    Tessellation::from_raw(pq, PatchKind::Torus { l }, raw)
}

fn vid(l: usize, i: isize, j: isize) -> usize {
    let n = l as isize;
    (j.rem_euclid(n) * n + i.rem_euclid(n)) as usize
}

fn normalized(points: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    let n = points.len() as f64;
    let (cx, cy) = points.iter().fold((0.0, 0.0), |a, p| (a.0 + p.0 / n, a.1 + p.1 / n));
    let r = points
        .iter()
        .map(|p| ((p.0 - cx).powi(2) + (p.1 - cy).powi(2)).sqrt())
        .fold(0.0, f64::max)
        .max(1e-12);
    points.into_iter().map(|p| (0.9 * (p.0 - cx) / r, 0.9 * (p.1 - cy) / r)).collect()
}

fn square(l: usize) -> RawTiling {
    let n = l * l;
    let mut edges = Vec::with_capacity(2 * n);
    let mut coords = Vec::with_capacity(n);
    for v in 0..n {
        let (i, j) = ((v % l) as isize, (v / l) as isize);
        edges.push([v, vid(l, i + 1, j)]);
        edges.push([v, vid(l, i, j + 1)]);
        coords.push((i as f64, j as f64));
    }
    let right = |i: isize, j: isize| 2 * vid(l, i, j);
    let up = |i: isize, j: isize| 2 * vid(l, i, j) + 1;
    let faces = (0..n)
        .map(|v| {
            let (i, j) = ((v % l) as isize, (v / l) as isize);
            (
                vec![vid(l, i, j), vid(l, i + 1, j), vid(l, i + 1, j + 1), vid(l, i, j + 1)],
                vec![right(i, j), up(i + 1, j), right(i, j + 1), up(i, j)],
            )
        })
        .collect();
    RawTiling {
        coords: normalized(coords),
        edges,
        faces,
        slot0: Some((0..n).map(|v| 2 * v).collect()),
    }
}

fn triangular(l: usize) -> RawTiling {
    let n = l * l;
    let mut edges = Vec::with_capacity(3 * n);
    let mut coords = Vec::with_capacity(n);
    let h = 3f64.sqrt() / 2.0;
    for v in 0..n {
        let (i, j) = ((v % l) as isize, (v / l) as isize);
        edges.push([v, vid(l, i + 1, j)]);
        edges.push([v, vid(l, i, j + 1)]);
        edges.push([v, vid(l, i - 1, j + 1)]);
        coords.push((i as f64 + j as f64 / 2.0, j as f64 * h));
    }
    let e = |k: usize, i: isize, j: isize| 3 * vid(l, i, j) + k;
    let mut faces = Vec::with_capacity(2 * n);
    for v in 0..n {
        let (i, j) = ((v % l) as isize, (v / l) as isize);
        faces.push((
            vec![vid(l, i, j), vid(l, i + 1, j), vid(l, i, j + 1)],
            vec![e(0, i, j), e(2, i + 1, j), e(1, i, j)],
        ));
        faces.push((
            vec![vid(l, i + 1, j), vid(l, i + 1, j + 1), vid(l, i, j + 1)],
            vec![e(1, i + 1, j), e(0, i, j + 1), e(2, i + 1, j)],
        ));
    }
    RawTiling {
        coords: normalized(coords),
        edges,
        faces,
        slot0: Some((0..n).map(|v| 3 * v).collect()),
    }
}
