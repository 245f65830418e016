//! One PASS/FAIL line per acceptance criterion; exits nonzero on any FAIL.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use ycube::gf2::{gsd_exponent, in_stabilizer_group, logical_basis, GF2Matrix};
use ycube::hyptess::VertexSlot;
use ycube::lattice3::LatticeSpec;
use ycube::mobility::{mobility_table, reachable, MobilityQuery, MoveAlphabet};
use ycube::opgen::*;
use ycube::paulis::PauliString;
use ycube::ycode::{build_code, CodeOptions, Location, Particle, StabilizerCode, TermKind};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn code(spec: LatticeSpec, hexagon: bool) -> Result<StabilizerCode, String> {
    build_code(spec.build().map_err(e)?, CodeOptions { include_hexagon: hexagon }).map_err(e)
}

fn disk(p: usize, q: usize, g: usize) -> Result<StabilizerCode, String> {
    code(LatticeSpec::disk(p, q, g, 3).map_err(e)?, false)
}

fn torus(p: usize, q: usize, l: usize, hexagon: bool) -> Result<StabilizerCode, String> {
    code(LatticeSpec::torus(p, q, l, 3).map_err(e)?, hexagon)
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure!(t <= limit, "{what} took {t:?}, limit {limit:?}");
    Ok(())
}

/// Every X term against every Z term, dense.
fn pairwise_commute(c: &StabilizerCode) -> Result<usize, String> {
    let xs: Vec<_> = c.x_terms().collect();
    let zs: Vec<_> = c.z_terms().collect();
    for a in &xs {
        for b in &zs {
            ensure!(a.pauli.commutes(&b.pauli).map_err(e)?, "terms {} and {} anticommute", a.id, b.id);
        }
    }
    Ok(xs.len() * zs.len())
}

fn stabilizer_audit() -> Check {
    let mut cases = vec![];
    for (p, q) in [(5, 4), (4, 6), (6, 4)] {
        cases.push((format!("({p},{q}) gen-2"), LatticeSpec::disk(p, q, 2, 3).map_err(e)?, false));
    }
    cases.push(("(4,4) torus".into(), LatticeSpec::torus(4, 4, 3, 3).map_err(e)?, false));
    for hex in [false, true] {
        cases.push((format!("(3,6) torus hexagon={hex}"), LatticeSpec::torus(3, 6, 3, 3).map_err(e)?, hex));
    }
    let mut out = vec![];
    for (name, spec, hex) in cases {
        let t = Instant::now();
        let c = code(spec, hex)?;
        c.audit().map_err(|err| format!("{name}: {err}"))?;
        let pairs = pairwise_commute(&c).map_err(|err| format!("{name}: {err}"))?;
        within(t, Duration::from_secs(10), &name)?;
        out.push(format!("{name}: {pairs} pairs"));
    }
    Ok(out.join("; "))
}

fn ground_state_degeneracy() -> Check {
    let t = Instant::now();
    let with = gsd_exponent(&torus(3, 6, 3, true)?).map_err(e)?;
    let without = gsd_exponent(&torus(3, 6, 3, false)?).map_err(e)?;
    within(t, Duration::from_secs(10), "gsd")?;
    ensure!(with == 12, "k = {with} with hexagons, expected 12");
    Ok(format!("(3,6) L=3: k={with} with hexagons, k={without} without"))
}

/// Dense elimination on u128 rows, independent of the library's GF(2) code.
fn oracle_rank(rows: &[u128]) -> usize {
    let mut rows = rows.to_vec();
    let mut rank = 0;
    for bit in 0..128 {
        let mask = 1u128 << bit;
        let Some(i) = (rank..rows.len()).find(|&i| rows[i] & mask != 0) else { continue };
        rows.swap(rank, i);
        let pivot = rows[rank];
        for (j, r) in rows.iter_mut().enumerate() {
            if j != rank && *r & mask != 0 {
                *r ^= pivot;
            }
        }
        rank += 1;
    }
    rank
}

fn as_u128(m: &GF2Matrix) -> Vec<u128> {
    m.rows().iter().map(|r| r.ones().fold(0u128, |acc, i| acc | 1 << i)).collect()
}

fn cubic_limit() -> Check {
    let t = Instant::now();
    let c = torus(4, 4, 3, false)?;
    let n = c.num_qubits();
    ensure!(n <= 128, "oracle needs n <= 128, got {n}");
    let k = gsd_exponent(&c).map_err(e)?;
    let (mut hx, mut hz) = (as_u128(&c.hx()), as_u128(&c.hz()));
    let mut ks = vec![];
    for seed in [1, 2] {
        let mut rng = StdRng::seed_from_u64(seed);
        hx.shuffle(&mut rng);
        hz.shuffle(&mut rng);
        ks.push(n - oracle_rank(&hx) - oracle_rank(&hz));
    }
    within(t, Duration::from_secs(10), "cubic limit")?;
    ensure!(ks.iter().all(|&o| o == k), "library k={k}, oracle {ks:?}");
    ensure!(k == 15, "k={k}, expected 15");
    Ok(format!("(4,4) L=3: k={k}, oracle {ks:?}"))
}

fn excitation_counts() -> Check {
    let mut out = vec![];
    for (p, q) in [(5, 4), (4, 6)] {
        let c = disk(p, q, 2)?;
        let l = &c.lattice;
        let t = &l.base;
        let n = c.num_qubits();
        let (mut nv, mut ni, mut nz) = (0, 0, 0);
        for v in 0..t.num_vertices() {
            if !t.is_interior(v) || !t.vertex_faces(v).iter().all(|&f| t.is_interior_face(f)) {
                continue;
            }
            let s = c.syndrome(&PauliString::x_on(n, [l.vertical(v, 1)])).map_err(e)?;
            ensure!(s.len() == q, "({p},{q}) vertical X at {v}: {} prisms", s.len());
            nv += 1;
        }
        for edge in 0..t.num_edges() {
            let faces = t.edge_faces(edge);
            if faces.len() == 2 && faces.iter().all(|&f| t.is_interior_face(f)) {
                let s = c.syndrome(&PauliString::x_on(n, [l.in_plane(edge, 1)])).map_err(e)?;
                ensure!(s.len() == 4, "({p},{q}) in-plane X on {edge}: {} prisms", s.len());
                ni += 1;
            }
            if t.edges[edge].endpoints.iter().all(|&v| t.is_interior(v)) {
                let s = c.syndrome(&PauliString::z_on(n, [l.in_plane(edge, 1)])).map_err(e)?;
                let parts = c.classify_excitations(&s);
                let ok = parts.len() == 2
                    && parts.iter().all(|p| matches!(p, Particle::Composite { terms, .. } if terms.len() == 2));
                ensure!(ok, "({p},{q}) in-plane Z on {edge}: {parts:?}");
                nz += 1;
            }
        }
        ensure!(nv > 0 && ni > 0 && nz > 0, "({p},{q}) has no fully interior sites");
        out.push(format!("({p},{q}): {nv} vertical X -> {q}, {ni} in-plane X -> 4, {nz} in-plane Z -> 2 composites"));
    }
    Ok(out.join("; "))
}

fn fracton_count(c: &StabilizerCode, op: &PauliString) -> Result<usize, String> {
    Ok(c.syndrome(op).map_err(e)?.len())
}

fn logical_ok(c: &StabilizerCode, op: &PauliString) -> Result<bool, String> {
    Ok(c.syndrome(op).map_err(e)?.is_empty() && !in_stabilizer_group(c, op))
}

fn operator_contracts() -> Check {
    let start = Instant::now();
    let iface = LayerInterface::top(0);

    let c54 = disk(5, 4, 3)?;
    let t = &c54.lattice.base;
    let v = t.interior_vertices().next().ok_or("no interior vertex")?;
    let ray = t.geodesic_ray(VertexSlot { vertex: v, slot: 0 }, t.num_vertices()).map_err(e)?;
    let n = fracton_count(&c54, &x_truncated_geodesic(&c54.lattice, &ray, 0).map_err(e)?)?;
    ensure!(n == 2, "truncated geodesic: {n} fractons");
    let rays = find_stacked_geodesics(&c54, 0, 0).map_err(e)?;
    let n = fracton_count(&c54, &x_stacked_truncated_geodesics(&c54, &rays, 0).map_err(e)?)?;
    ensure!(n == 1, "stacked geodesics: {n} fractons");

    let c46 = disk(4, 6, 3)?;
    let t = &c46.lattice.base;
    let root = t.interior_vertices().next().ok_or("no interior vertex")?;
    let tree = t.fractal_tree(root, 0, t.num_vertices()).map_err(e)?;
    ensure!(logical_ok(&c46, &x_fractal_tree_logical(&c46.lattice, &tree, iface).map_err(e)?)?, "T_X not logical");
    let wedges = wedges_at(t, root, 0).map_err(e)?;
    ensure!(!wedges.is_empty(), "no wedges at {root}");
    for w in &wedges {
        ensure!(logical_ok(&c46, &x_wedge_membrane(&c46.lattice, w, iface).map_err(e)?)?, "wedge not logical");
    }
    let c64 = disk(6, 4, 2)?;
    let half = geodesic_wedge(&c64.lattice.base, 0, 0).map_err(e)?;
    ensure!(logical_ok(&c64, &x_wedge_membrane(&c64.lattice, &half, iface).map_err(e)?)?, "geodesic wedge not logical");

    let prune = tree.vertices[1];
    let n = fracton_count(&c46, &x_pruned_tree(&c46.lattice, &tree, prune, iface).map_err(e)?)?;
    ensure!(n == 2, "pruned tree: {n} fractons");
    let sites = find_pruned_tree_series(&c46, 0, iface).map_err(e)?;
    let trees = sites.iter().map(|s| Ok((s.tree(t)?, s.prune))).collect::<ycube::Result<Vec<_>>>().map_err(e)?;
    let n = fracton_count(&c46, &x_pruned_tree_series(&c46, &trees, iface).map_err(e)?)?;
    ensure!(n == 1, "pruned tree series: {n} fractons");
    let (a, b) = find_wedge_intersection(&c46, iface, 8).map_err(e)?;
    let n = fracton_count(&c46, &x_wedge_intersection(&c46, &a, &b, iface).map_err(e)?)?;
    ensure!(n == 1, "wedge intersection: {n} fractons");

    let (ba, bb) = t.wedge_branches(&tree, 0, 2).map_err(e)?;
    let path = tree.path_between(ba.end(), bb.end());
    let z = z_string(&c46.lattice, ZString::TreePath { tree: &tree, path: &path }, 1).map_err(e)?;
    ensure!(c46.syndrome(&z).map_err(e)?.is_empty(), "boundary-to-boundary tree path is not silent");

    within(start, Duration::from_secs(60), "operator contracts")?;
    Ok(format!(
        "{} stacked rays, {} pruned sites, {} (4,6) wedges, {:?}",
        rays.len(),
        sites.len(),
        wedges.len(),
        start.elapsed()
    ))
}

fn faces_of(c: &StabilizerCode, op: &PauliString) -> Result<BTreeSet<usize>, String> {
    Ok(c.syndrome(op)
        .map_err(e)?
        .excited
        .iter()
        .filter_map(|&i| match c.terms[i].location {
            Location::Prism { face, .. } => Some(face),
            _ => None,
        })
        .collect())
}

fn mobility_sets() -> Check {
    let start = Instant::now();
    let rows = mobility_table(&[LatticeSpec::disk(5, 4, 3, 3).map_err(e)?, LatticeSpec::disk(4, 6, 3, 3).map_err(e)?])
        .map_err(e)?;
    let (r54, r46) = (&rows[0], &rows[1]);
    ensure!(r54.composite == "lineon" && r54.composite_matches_geometry, "(5,4) lineon: {r54:?}");
    ensure!(r46.composite == "treeon" && r46.composite_matches_geometry, "(4,6) treeon: {r46:?}");

    let c54 = disk(5, 4, 3)?;
    let rays = find_stacked_geodesics(&c54, 0, 0).map_err(e)?;
    let single = x_stacked_truncated_geodesics(&c54, &rays, 0).map_err(e)?;
    let rep = reachable(&MobilityQuery::new(&c54, single, MoveAlphabet::X)).map_err(e)?;
    ensure!(rep.in_plane_faces == BTreeSet::from([0]) && !rep.vertical_mobility, "single fracton moved: {rep:?}");

    let c46 = disk(4, 6, 3)?;
    let t = &c46.lattice.base;
    let tree = t.fractal_tree(t.interior_vertices().next().ok_or("no interior")?, 0, t.num_vertices()).map_err(e)?;
    let dipole = x_pruned_tree(&c46.lattice, &tree, tree.vertices[1], LayerInterface::top(0)).map_err(e)?;
    let initial = faces_of(&c46, &dipole)?;
    let rep = reachable(&MobilityQuery::new(&c46, dipole, MoveAlphabet::X)).map_err(e)?;
    ensure!(rep.in_plane_faces == initial, "(4,6) dipole moved in-plane: {:?} vs {initial:?}", rep.in_plane_faces);
    ensure!(rep.vertical_mobility, "(4,6) dipole has no vertical mobility");

    within(start, Duration::from_secs(300), "mobility sets")?;
    Ok(format!(
        "lineon reach {}, treeon reach {}, dipole layers {:?}, {:?}",
        r54.composite_reach,
        r46.composite_reach,
        rep.layers,
        start.elapsed()
    ))
}

fn flat_36_suite() -> Check {
    let rows = mobility_table(&[LatticeSpec::torus(3, 6, 6, 3).map_err(e)?, LatticeSpec::disk(3, 6, 4, 3).map_err(e)?])
        .map_err(e)?;
    ensure!(rows[0].composite == "planeon" && rows[0].composite_matches_geometry, "planeon: {:?}", rows[0]);
    ensure!(
        rows[1].charge_sublattice == Some(true) && rows[1].charge_vertical == Some(true),
        "charge: {:?}",
        rows[1]
    );

    let c = code(LatticeSpec::torus(3, 6, 6, 4).map_err(e)?, true)?;
    let l = &c.lattice;
    let t = &l.base;
    let subs: Vec<_> = (0..3).map(|f| t.hexagonal_sublattice(f)).collect::<ycube::Result<_>>().map_err(e)?;
    ensure!(subs[0] != subs[1] && subs[1] != subs[2] && subs[0] != subs[2], "flavors coincide");

    let tri = flat36_op(l, &Flat36Op::ZTriangle { face: 0, layer: 1 }).map_err(e)?;
    let parts = c.classify_excitations(&c.syndrome(&tri).map_err(e)?);
    let color = t.three_coloring().map_err(e)?;
    let colors: BTreeSet<usize> = parts
        .iter()
        .filter_map(|p| match p {
            Particle::Composite { vertex, .. } => Some(color[*vertex]),
            _ => None,
        })
        .collect();
    ensure!(parts.len() == 3 && colors.len() == 3, "triangle gives {parts:?}");

    for count in 1..4 {
        let m = flat36_op(l, &Flat36Op::XFluxMembrane { row: 1, flavor: 0, layer: 1, count }).map_err(e)?;
        for &i in &c.syndrome(&m).map_err(e)?.excited {
            let rim = matches!(c.terms[i].location, Location::Prism { interval, .. } if interval == 0 || interval == count);
            ensure!(rim, "membrane of {count} layers excites term {i} off its rim");
        }
    }

    let m = flat36_op(l, &Flat36Op::XFluxMembrane { row: 1, flavor: 0, layer: 1, count: 2 }).map_err(e)?;
    let rhombus = flat36_op(l, &Flat36Op::ChargeMoveInplane { vertex: 6, layer: 1, direction: 0 }).map_err(e)?;
    ensure!(!m.commutes(&rhombus).map_err(e)?, "membrane commutes with a crossing rhombus");
    let dual = flat36_op(l, &Flat36Op::XPlaneonMove { row: 1, column: 0, length: 3, layer: 1 }).map_err(e)?;
    let tree = t.fractal_tree(7, 0, t.num_vertices()).map_err(e)?;
    let path = tree.path_between(7, 17);
    let zpath = z_string(l, ZString::TreePath { tree: &tree, path: &path }, 1).map_err(e)?;
    ensure!(!dual.commutes(&zpath).map_err(e)?, "dual path commutes with a crossing honeycomb path");

    Ok(format!(
        "planeon reach {}, charge reach {} (budget +2), membranes rim-only, crossings anticommute",
        rows[0].composite_reach, rows[1].composite_reach
    ))
}

fn brute_rank(rows: &[u16]) -> usize {
    let mut span = BTreeSet::new();
    for mask in 0..1u32 << rows.len() {
        span.insert(rows.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).fold(0u16, |a, (_, r)| a ^ r));
    }
    span.len().trailing_zeros() as usize
}

fn gf2_properties() -> Check {
    let mut rng = StdRng::seed_from_u64(2024);
    for trial in 0..200 {
        let (r, cols) = (rng.gen_range(1..=12), rng.gen_range(1..=12));
        let rows: Vec<u16> = (0..r).map(|_| rng.gen::<u16>() & ((1 << cols) - 1)).collect();
        let bits = rows
            .iter()
            .map(|&w| ycube::bits::BitVec::from_indices(cols, (0..cols).filter(|i| w >> i & 1 == 1)))
            .collect();
        let m = GF2Matrix::from_rows(cols, bits).map_err(e)?;
        ensure!(m.rank() == brute_rank(&rows), "trial {trial}: rank {} vs {}", m.rank(), brute_rank(&rows));
    }

    let mut ks = vec![];
    for c in [torus(4, 4, 3, false)?, torus(3, 6, 3, true)?] {
        let pairs = logical_basis(&c).map_err(e)?;
        ensure!(pairs.len() == gsd_exponent(&c).map_err(e)?, "basis size");
        for (i, (xi, zi)) in pairs.iter().enumerate() {
            for (j, (xj, zj)) in pairs.iter().enumerate() {
                ensure!(xi.commutes(zj).map_err(e)? == (i != j), "pair ({i},{j}) pairing broken");
                ensure!(xi.commutes(xj).map_err(e)? && zi.commutes(zj).map_err(e)?, "same-type logicals anticommute");
            }
            for term in &c.terms {
                ensure!(
                    term.pauli.commutes(xi).map_err(e)? && term.pauli.commutes(zi).map_err(e)?,
                    "logical {i} anticommutes with term {}",
                    term.id
                );
            }
        }
        ks.push(pairs.len());
    }

    let full = disk(4, 6, 2)?;
    let k = gsd_exponent(&full).map_err(e)?;
    let reduced = StabilizerCode::from_terms(
        full.lattice.clone(),
        full.terms.iter().filter(|t| t.kind != TermKind::VertexType2X).cloned().collect(),
    );
    let k_reduced = gsd_exponent(&reduced).map_err(e)?;
    ensure!(k == k_reduced, "dropping type-2 terms changes k: {k} vs {k_reduced}");
    let mut extra = full.terms.clone();
    let xs: Vec<_> = full.x_terms().cloned().collect();
    for _ in 0..20 {
        let (a, b) = (&xs[rng.gen_range(0..xs.len())], &xs[rng.gen_range(0..xs.len())]);
        let mut t = a.clone();
        t.pauli = a.pauli.multiply(&b.pauli).map_err(e)?;
        extra.push(t);
    }
    let k_extra = gsd_exponent(&StabilizerCode::from_terms(full.lattice.clone(), extra)).map_err(e)?;
    ensure!(k == k_extra, "adding dependent terms changes k: {k} vs {k_extra}");
    Ok(format!("200 ranks match, logical bases k={ks:?}, (4,6) gen-2 k={k} stable"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("stabilizer audit", stabilizer_audit),
        ("ground-state degeneracy", ground_state_degeneracy),
        ("cubic-limit consistency", cubic_limit),
        ("excitation counts", excitation_counts),
        ("operator contracts", operator_contracts),
        ("mobility sets", mobility_sets),
        ("flat (3,6) suite", flat_36_suite),
        ("gf2 properties", gf2_properties),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let t = Instant::now();
        match f() {
            Ok(detail) => println!("PASS {name} [{:.2?}]: {detail}", t.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL {name} [{:.2?}]: {why}", t.elapsed());
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
