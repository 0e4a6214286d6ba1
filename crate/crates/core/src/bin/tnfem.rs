use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use tnfem::dofs::SpaceKind;
use tnfem::experiments::{cmd_dims, cmd_interp, cmd_maxwell, cmd_poisson_mixed, mesh_sizes, StudyOptions};
use tnfem::lattice::SimplicialLattice;
use tnfem::mesh::{read_mesh, structured_cube, Topology};
use tnfem::solver::{SolverChoice, SolverOptions};

#[derive(Parser)]
#[command(name = "tnfem", version, about = "High-order simplicial finite elements")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the lattice T^n_k as CSV.
    LatticeDump {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Global DoF counts of a space on a mesh file.
    Dofs {
        #[arg(long)]
        space: String,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        mesh: PathBuf,
        /// Also dump cell2dof (cell2ipoint for lagrange).
        #[arg(long)]
        cell2dof: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Per-block DoF counts with closed-form checks.
    Dims {
        #[arg(long)]
        space: String,
        #[arg(long)]
        degree: usize,
        /// Mesh file; defaults to the structured mesh given by --n and --dim.
        #[arg(long)]
        mesh: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Interpolation error study.
    Interp {
        #[arg(long, default_value = "lagrange")]
        space: String,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[command(flatten)]
        study: StudyArgs,
    },
    /// Mixed Poisson with BDM_k x P_{k-1}.
    PoissonMixed {
        #[command(flatten)]
        study: StudyArgs,
    },
    /// Time-harmonic Maxwell with second-kind Nedelec elements.
    Maxwell {
        #[command(flatten)]
        study: StudyArgs,
    },
}

#[derive(Args)]
struct StudyArgs {
    #[arg(long)]
    degree: usize,
    /// Number of uniformly refined meshes.
    #[arg(long, default_value_t = 3)]
    levels: usize,
    /// Subdivisions of the coarsest mesh (default 2 for k = 1, else 1).
    #[arg(long)]
    coarsest: Option<usize>,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, default_value = "auto")]
    solver: String,
    #[arg(long)]
    quad_degree: Option<usize>,
    #[arg(long, default_value_t = 8000)]
    dense_limit: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl StudyArgs {
    fn options(&self) -> Result<StudyOptions> {
        let choice: SolverChoice = self.solver.parse()?;
        Ok(StudyOptions {
            solver: SolverOptions { choice, tol: self.tol, dense_limit: self.dense_limit, ..Default::default() },
            quad_degree: self.quad_degree,
        })
    }

    fn sizes(&self) -> Result<Vec<usize>> {
        if self.levels == 0 {
            bail!("--levels must be at least 1");
        }
        let c = self.coarsest.unwrap_or(if self.degree == 1 { 2 } else { 1 });
        Ok(mesh_sizes(c, self.levels))
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::LatticeDump { dim, degree, out } => {
            let l = SimplicialLattice::enumerate(dim, degree);
            let mut s = String::from("rank");
            for i in 0..=dim {
                s += &format!(",alpha{i}");
            }
            for i in 0..=dim {
                s += &format!(",lambda{i}");
            }
            s.push('\n');
            for (r, a) in l.iter().enumerate() {
                s += &r.to_string();
                for x in a.iter() {
                    s += &format!(",{x}");
                }
                for i in 0..=dim {
                    let lam = if degree == 0 { if i == 0 { 1.0 } else { 0.0 } } else { a[i] as f64 / degree as f64 };
                    s += &format!(",{lam}");
                }
                s.push('\n');
            }
            emit(&out, &s)
        }
        Cmd::Dofs { space, degree, mesh, cell2dof, out } => {
            let kind: SpaceKind = space.parse()?;
            let m = read_mesh(&mesh).with_context(|| format!("reading {}", mesh.display()))?;
            let rep = cmd_dims(kind, degree, &m)?;
            let mut s = format!("space,{kind}\ndegree,{degree}\n");
            s += &rep.to_csv();
            if cell2dof {
                let topo = Topology::build(&m)?;
                let (table, ldof) = if kind == SpaceKind::Lagrange {
                    let pm = tnfem::dofs::build_cell2ipoint(&m, &topo, degree)?;
                    (pm.cell2ipoint().to_vec(), pm.ldof())
                } else {
                    let sp = tnfem::experiments::build_space(kind, &m, &topo, degree)?;
                    (sp.cell2dof().to_vec(), sp.ldof())
                };
                s += "cell2dof\n";
                for row in table.chunks(ldof) {
                    let r: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                    s += &r.join(",");
                    s.push('\n');
                }
            }
            emit(&out, &s)
        }
        Cmd::Dims { space, degree, mesh, n, dim, out } => {
            let kind: SpaceKind = space.parse()?;
            let m = match mesh {
                Some(p) => read_mesh(&p)?,
                None => structured_cube(n, dim)?,
            };
            let rep = cmd_dims(kind, degree, &m)?;
            emit(&out, &rep.to_csv())?;
            if !rep.consistent() {
                bail!("DoF count differs from the closed form");
            }
            Ok(())
        }
        Cmd::Interp { space, dim, study } => {
            let t = cmd_interp(space.parse()?, study.degree, dim, &study.sizes()?, &study.options()?)?;
            emit(&study.out, &t.to_csv())
        }
        Cmd::PoissonMixed { study } => {
            let t = cmd_poisson_mixed(study.degree, &study.sizes()?, &study.options()?)?;
            emit(&study.out, &t.to_csv())
        }
        Cmd::Maxwell { study } => {
            let t = cmd_maxwell(study.degree, &study.sizes()?, &study.options()?)?;
            emit(&study.out, &t.to_csv())
        }
    }
}

fn main() {
    if let Err(e) = run(Cli::parse()) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}
