use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde_json::{json, Value};

use super::{ops, schema};
use crate::error::{Error, Result};
use crate::gf2::logical_basis;
use crate::lattice3::LatticeSpec;
use crate::mobility::{reachable, MobilityQuery, MoveAlphabet};
use crate::paulis::PauliString;
use crate::ycode::StabilizerCode;

#[derive(Debug, Parser)]
#[command(name = "ycube", version, about = "Fracton stabilizer models on stacked {p,q} tessellations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a lattice and its terms and write the lattice file.
    Gen(GenArgs),
    /// Ground-state degeneracy exponent k.
    Gsd {
        #[arg(long)]
        lattice: PathBuf,
        /// Add (3,6) hexagon terms if the file has none.
        #[arg(long)]
        hexagon: bool,
    },
    /// Excited terms and particles of a sparse operator.
    Syndrome {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long)]
        op: String,
    },
    /// Build a named operator; prints sparse Pauli text.
    Makeop {
        #[arg(long)]
        lattice: PathBuf,
        /// truncated_geodesic, stacked_geodesics, tree_logical, pruned_tree,
        /// pruned_tree_series, wedge, wedge_intersection, z_string or flat36:NAME
        #[arg(long)]
        kind: String,
        #[arg(long, default_value = "{}")]
        params: String,
    },
    /// Breadth-first mobility search from the excitations of an operator.
    Mobility {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long)]
        op: String,
        #[arg(long)]
        moves: MoveAlphabet,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        max_states: Option<usize>,
    },
    /// Paired logical operators, X then Z for each pair.
    Logicals {
        #[arg(long)]
        lattice: PathBuf,
    },
    /// Run the HTTP session service.
    Serve {
        #[arg(long)]
        port: u16,
        #[arg(long)]
        state_dir: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("patch").required(true).args(["generations", "periodic_l"])))]
pub struct GenArgs {
    #[arg(long)]
    pub p: usize,
    #[arg(long)]
    pub q: usize,
    #[arg(long)]
    pub generations: Option<usize>,
    #[arg(long)]
    pub periodic_l: Option<usize>,
    #[arg(long)]
    pub layers: usize,
    #[arg(long)]
    pub hexagon: bool,
    #[arg(long)]
    pub out: PathBuf,
}

fn op_arg(code: &StabilizerCode, s: &str) -> Result<PauliString> {
    PauliString::parse_sparse(s, code.num_qubits())
}

/// Runs every command except `serve`; returns the text for stdout.
pub fn run(cmd: &Command) -> Result<String> {
    let out: Value = match cmd {
        Command::Gen(a) => {
            let spec = match (a.generations, a.periodic_l) {
                (Some(g), None) => LatticeSpec::disk(a.p, a.q, g, a.layers)?,
                (None, Some(l)) => LatticeSpec::torus(a.p, a.q, l, a.layers)?,
                _ => return Err(Error::InvalidArgument("give exactly one of --generations or --periodic-l".into())),
            };
            let code = schema::generate(&spec, a.hexagon)?;
            std::fs::write(&a.out, schema::to_string(&code))
                .map_err(|e| Error::InvalidArgument(format!("{}: {e}", a.out.display())))?;
            json!({"out": a.out, "n": code.num_qubits(), "terms": code.terms.len()})
        }
        Command::Gsd { lattice, hexagon } => {
            let mut code = schema::load(lattice)?;
            if *hexagon {
                code = schema::with_hexagons(code)?;
            }
            code.audit()?;
            let n = code.num_qubits();
            let (rx, rz) = (code.x_echelon().rank(), code.z_echelon().rank());
            json!({"n": n, "rank_x": rx, "rank_z": rz, "k": n - rx - rz})
        }
        Command::Syndrome { lattice, op } => {
            let code = schema::load(lattice)?;
            let s = code.syndrome(&op_arg(&code, op)?)?;
            json!({
                "excited": s.excited.iter().map(|&i| schema::term_json(&code.terms[i])).collect::<Vec<_>>(),
                "particles": code.classify_excitations(&s),
            })
        }
        Command::Makeop { lattice, kind, params } => {
            let code = schema::load(lattice)?;
            let p: Value = serde_json::from_str(params).map_err(|e| Error::Parse(format!("--params: {e}")))?;
            return Ok(ops::build_operator(&code, kind, &p)?.to_sparse());
        }
        Command::Mobility { lattice, op, moves, budget, max_states } => {
            let code = schema::load(lattice)?;
            let mut q = MobilityQuery::new(&code, op_arg(&code, op)?, *moves);
            if let Some(b) = budget {
                q = q.with_budget(*b);
            }
            if let Some(m) = max_states {
                q = q.with_max_states(*m);
            }
            json!(reachable(&q)?)
        }
        Command::Logicals { lattice } => {
            let code = schema::load(lattice)?;
            let pairs = logical_basis(&code)?;
            json!({
                "k": pairs.len(),
                "pairs": pairs.iter().map(|(x, z)| json!({"x": x.to_sparse(), "z": z.to_sparse()})).collect::<Vec<_>>(),
            })
        }
        Command::Serve { .. } => return Err(Error::InvalidArgument("serve is not a batch command".into())),
    };
    Ok(out.to_string())
}
