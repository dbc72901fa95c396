use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use wigner_core::branching::{gl_angular_gf, osp_angular_gf, EJDiagram, So3Gf};
use wigner_core::characters::{gl_energy_levels, osp_spectrum, GlRep, OspRep};
use wigner_core::report::{render_diagram, render_spectrum, DiagramMeta, Format};
use wigner_core::series::{write_gf, RationalGF};
use wigner_core::verify::{verify_fixture, with_cap};
use wigner_core::{fixtures, Coef, Energy, Partition};

/// (E, j)-diagrams and generating functions for the angular momentum content
/// of osp(1|2n) and gl(1|n) representations, n = 3 or 6.
#[derive(Parser)]
#[command(name = "wigner", version)]
struct Cli {
    /// Size of the rayon worker pool (default: one per core).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the (E, j)-diagram of a representation.
    Ej(RepArgs),
    /// Print the (J, z) generating function as a truncated series, or a fixture.
    Gf {
        #[command(flatten)]
        rep: RepArgs,
        /// Print this fixture instead of a pipeline result.
        #[arg(long)]
        fixture: Option<String>,
    },
    /// Check the pipeline against fixtures ("all" or ids; default all).
    Verify {
        ids: Vec<String>,
        /// Additional fixture id.
        #[arg(long)]
        fixture: Vec<String>,
        /// Replace the degree bound of each fixture's default window.
        #[arg(long)]
        cap: Option<i64>,
    },
    /// Print the energy levels and their degeneracies.
    Spectrum(RepArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Algebra {
    Osp,
    Gl,
}

#[derive(Args, Clone)]
struct RepArgs {
    #[arg(long, value_enum)]
    algebra: Option<Algebra>,
    #[arg(long, default_value_t = 3)]
    n: u32,
    /// osp: the label p of V(p).
    #[arg(long)]
    p: Option<u32>,
    /// gl: the conjugate partition λ′, e.g. 2,1,1.
    #[arg(long, conflicts_with = "lambda")]
    lambda_conj: Option<String>,
    /// gl: the partition λ itself.
    #[arg(long)]
    lambda: Option<String>,
    /// Highest level index k shown (E = E_0 + k); 0 gives the bottom row.
    #[arg(long, default_value_t = 4)]
    levels: u32,
    #[arg(long, default_value = "text")]
    format: String,
}

enum Rep {
    Osp(OspRep),
    Gl(GlRep),
}

impl RepArgs {
    fn rep(&self) -> Result<Rep> {
        let partition = |s: &str| s.parse::<Partition>().with_context(|| format!("bad partition {s:?}"));
        match self.algebra {
            None => bail!("--algebra osp|gl is required"),
            Some(Algebra::Osp) => {
                if self.lambda.is_some() || self.lambda_conj.is_some() {
                    bail!("--lambda and --lambda-conj apply to --algebra gl");
                }
                let p = self.p.context("--algebra osp needs --p")?;
                Ok(Rep::Osp(OspRep::new(self.n, p)?))
            }
            Some(Algebra::Gl) => {
                if self.p.is_some() {
                    bail!("--p applies to --algebra osp");
                }
                let rep = match (&self.lambda_conj, &self.lambda) {
                    (Some(c), _) => GlRep::from_conjugate(self.n, partition(c)?)?,
                    (None, Some(l)) => GlRep::new(self.n, partition(l)?)?,
                    (None, None) => bail!("--algebra gl needs --lambda-conj or --lambda"),
                };
                Ok(Rep::Gl(rep))
            }
        }
    }

    fn format(&self) -> Result<Format> {
        Ok(self.format.parse()?)
    }
}

fn algebra_name(rep: &Rep) -> (String, String) {
    match rep {
        Rep::Osp(r) => (format!("osp(1|{})", 2 * r.n), format!("V({})", r.p)),
        Rep::Gl(r) => (format!("gl(1|{})", r.n), format!("V_({})", r.lambda)),
    }
}

fn angular(rep: &Rep, levels: u32) -> Result<(So3Gf<Coef>, Energy)> {
    Ok(match rep {
        Rep::Osp(r) => (osp_angular_gf(*r, levels)?, r.ground_energy()),
        Rep::Gl(r) => (gl_angular_gf(r)?, r.ground_energy()),
    })
}

fn diagram(args: &RepArgs) -> Result<(EJDiagram, DiagramMeta)> {
    let rep = args.rep()?;
    let (gf, ground) = angular(&rep, args.levels)?;
    let top = ground + Energy::from(i64::from(args.levels));
    let d = EJDiagram::from_so3(&gf)?.truncate_levels(top);
    let (algebra, label) = algebra_name(&rep);
    let meta = DiagramMeta { algebra, rep: label, window: format!("E <= {top}"), source: "pipeline".into() };
    Ok((d, meta))
}

fn run(cli: Cli) -> Result<bool> {
    if let Some(w) = cli.workers {
        rayon::ThreadPoolBuilder::new().num_threads(w).build_global().context("cannot size the worker pool")?;
    }
    match cli.command {
        Command::Ej(args) => {
            let format = args.format()?;
            let (d, meta) = diagram(&args)?;
            print!("{}", render_diagram(&d, format, &meta));
        }
        Command::Gf { rep, fixture } => {
            if !matches!(rep.format()?, Format::Text) {
                bail!("gf output is only available as text");
            }
            if let Some(id) = fixture {
                print!("{}", fixtures::load(&id)?.text);
                return Ok(true);
            }
            let r = rep.rep()?;
            let (gf, ground) = angular(&r, rep.levels)?;
            let (algebra, label) = algebra_name(&r);
            let poly = RationalGF::polynomial(gf.series.space().clone(), gf.series.terms().map(|(m, c)| (m.clone(), *c)));
            println!("# {algebra} {label}");
            println!("# bottom energy: {ground}");
            match r {
                Rep::Osp(_) => println!("# window: levels 0..={} (z stores twice the energy)", rep.levels),
                Rep::Gl(_) => println!("# window: all levels (z counts levels above the bottom)"),
            }
            print!("{}", write_gf(&poly));
        }
        Command::Verify { mut ids, fixture, cap } => {
            ids.extend(fixture);
            if ids.is_empty() || ids.iter().any(|i| i == "all") {
                ids = fixtures::ids().map(String::from).collect();
            }
            let mut passed = 0;
            for id in &ids {
                let fixture = fixtures::load(id)?;
                let window = cap.map(|c| with_cap(&fixture.window, c));
                let report = verify_fixture(id, window.as_ref())?;
                passed += usize::from(report.passed());
                print!("{report}");
                eprintln!("{id}: {:.2?}", report.elapsed);
            }
            println!("{passed} of {} fixtures passed", ids.len());
            return Ok(passed == ids.len());
        }
        Command::Spectrum(args) => {
            let format = args.format()?;
            let table = match args.rep()? {
                Rep::Osp(r) => osp_spectrum(r, args.levels),
                Rep::Gl(r) => {
                    let mut t = gl_energy_levels(&r);
                    t.levels.truncate(args.levels as usize + 1);
                    t
                }
            };
            print!("{}", render_spectrum(&table, format));
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
