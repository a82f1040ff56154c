use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lampkit::construction::Bounds;
use lampkit::svg::{LitSelector, RenderOptions};
use lampkit::verify::VerifyOptions;
use lampkit_cli::{
    cmd_build, cmd_check_poset, cmd_enumerate, cmd_render, cmd_report, cmd_verify, read_file,
    read_recipe, CliResult, Outcome, VerifyPlan,
};

#[derive(Parser)]
#[command(
    name = "lampkit",
    version,
    about = "Slim rectangular lattices and their lamps"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
    /// Write output here instead of standard output.
    #[arg(short = 'o', long = "output", global = true)]
    output: Option<PathBuf>,
}

#[derive(Args, Clone, Copy)]
struct BoundArgs {
    #[arg(long, default_value_t = 20)]
    max_size: usize,
    #[arg(long, default_value_t = 3)]
    max_steps: usize,
    #[arg(long, default_value_t = 3)]
    max_rank: usize,
    /// Draw `--sample` random recipes from this seed instead of enumerating.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 100)]
    sample: usize,
}

impl BoundArgs {
    fn bounds(&self) -> Bounds {
        Bounds {
            max_size: self.max_size,
            max_rank: self.max_rank,
            max_steps: self.max_steps,
        }
    }

    fn sample(&self) -> Option<(u64, usize)> {
        self.seed.map(|s| (s, self.sample))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build a recipe and print counts and validation verdicts.
    Build { recipe: PathBuf },
    /// Draw a recipe as SVG.
    Render {
        recipe: PathBuf,
        #[arg(long, default_value_t = 20.0)]
        scale: f64,
        /// Lamp whose illuminated set is shaded: an index, `internal`,
        /// `left` or `right`.
        #[arg(long)]
        show_lit: Option<String>,
        #[arg(long)]
        hide_feet: bool,
        #[arg(long)]
        thin_tubes: bool,
    },
    /// Lamps, lamp poset, Jir(Con L) properties and the verdict.
    Report { recipe: PathBuf },
    /// Check every enumerated (or sampled) lattice.
    Verify {
        #[command(flatten)]
        bounds: BoundArgs,
        /// Skip the brute-force count of Con L.
        #[arg(long)]
        skip_con: bool,
        /// Skip the ray-casting oracle.
        #[arg(long)]
        skip_ray: bool,
    },
    /// List recipes, one per line.
    Enumerate {
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Check the six properties of a poset file.
    CheckPoset { poset: PathBuf },
}

fn run(cmd: &Command) -> CliResult<Outcome> {
    let done = |text: String| Outcome { text, passed: true };
    match cmd {
        Command::Build { recipe } => cmd_build(&read_recipe(recipe)?),
        Command::Render {
            recipe,
            scale,
            show_lit,
            hide_feet,
            thin_tubes,
        } => {
            let opts = RenderOptions {
                scale: *scale,
                show_lit: show_lit
                    .as_deref()
                    .map(str::parse::<LitSelector>)
                    .transpose()?,
                show_feet: !hide_feet,
                thick_tubes: !thin_tubes,
            };
            cmd_render(&read_recipe(recipe)?, &opts).map(done)
        }
        Command::Report { recipe } => cmd_report(&read_recipe(recipe)?),
        Command::Verify {
            bounds,
            skip_con,
            skip_ray,
        } => Ok(cmd_verify(&VerifyPlan {
            bounds: bounds.bounds(),
            sample: bounds.sample(),
            opts: VerifyOptions {
                con_lattice: !skip_con,
                ray_oracle: !skip_ray,
            },
        })),
        Command::Enumerate { bounds } => Ok(done(cmd_enumerate(bounds.bounds(), bounds.sample()))),
        Command::CheckPoset { poset } => cmd_check_poset(&read_file(poset)?),
    }
}

fn emit(text: &str, output: Option<&Path>) -> std::io::Result<()> {
    match output {
        Some(p) => std::fs::write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.cmd) {
        Ok(outcome) => {
            if let Err(e) = emit(&outcome.text, cli.output.as_deref()) {
                eprintln!("lampkit: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("lampkit: {e}");
            ExitCode::from(2)
        }
    }
}
