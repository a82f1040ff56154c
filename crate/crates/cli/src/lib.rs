//! Commands behind the `lampkit` binary. Each returns its full output as a
//! string so that the binary only decides where to write it.

use std::fmt::Write as _;
use std::path::Path;

use lampkit::congruence::jir_con;
use lampkit::construction::{enumerate, random_recipe, Bounds};
use lampkit::io::{parse_poset, parse_recipe, recipe_inline};
use lampkit::lamps::{lamp_poset, LampContext, LampKind};
use lampkit::properties::check_all;
use lampkit::svg::{render, RenderOptions};
use lampkit::verify::{verify_recipe, Verdict, VerifyOptions};
use lampkit::{build, Recipe};
use rayon::prelude::*;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] lampkit::Error),
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Command output and whether every check it ran passed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

pub fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn read_recipe(path: &Path) -> CliResult<Recipe> {
    Ok(parse_recipe(&read_file(path)?)?)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Element, edge and lamp counts with the structural verdicts.
pub fn cmd_build(recipe: &Recipe) -> CliResult<Outcome> {
    let d = build(recipe)?;
    let v = d.validate();
    let ctx = LampContext::new(&d)?;
    let internal = ctx.lamps.iter().filter(|l| l.is_internal()).count();
    let mut out = String::new();
    writeln!(out, "recipe: {}", recipe_inline(recipe)).unwrap();
    writeln!(out, "elements: {}", d.len()).unwrap();
    writeln!(out, "edges: {}", d.lattice().edge_count()).unwrap();
    writeln!(
        out,
        "lamps: {} ({} boundary, {internal} internal)",
        ctx.len(),
        ctx.len() - internal
    )
    .unwrap();
    writeln!(out, "semimodular: {}", yes(v.semimodular)).unwrap();
    writeln!(out, "slim: {}", yes(v.slim)).unwrap();
    writeln!(out, "planar: {}", yes(v.planar)).unwrap();
    writeln!(out, "rectangular: {}", yes(v.rectangular)).unwrap();
    writeln!(out, "at most two covers: {}", yes(v.at_most_two_covers)).unwrap();
    Ok(Outcome {
        text: out,
        passed: v.all_pass(),
    })
}

pub fn cmd_render(recipe: &Recipe, opts: &RenderOptions) -> CliResult<String> {
    Ok(render(&build(recipe)?, opts)?)
}

/// Lamps, the lamp poset, `Jir(Con L)` with its properties, and the full
/// verdict for one lattice.
pub fn cmd_report(recipe: &Recipe) -> CliResult<Outcome> {
    let d = build(recipe)?;
    let ctx = LampContext::new(&d)?;
    let lay = d.layout();
    let mut out = String::new();
    writeln!(out, "recipe: {}", recipe_inline(recipe)).unwrap();
    writeln!(out, "lamps:").unwrap();
    for (i, lamp) in ctx.lamps.iter().enumerate() {
        let kind = match lamp.kind {
            LampKind::BoundaryLeft => "left boundary",
            LampKind::BoundaryRight => "right boundary",
            LampKind::Internal => "internal",
        };
        writeln!(
            out,
            "  {i}: {kind}, foot {:?}, peak {:?}, {} tube(s)",
            lay.lr(lamp.foot),
            lay.lr(lamp.peak),
            lamp.tubes.len()
        )
        .unwrap();
    }
    let poset = lamp_poset(&ctx)?;
    let covers: Vec<String> = poset.covers().map(|(a, b)| format!("{a}<{b}")).collect();
    writeln!(out, "lamp poset covers: {}", covers.join(" ")).unwrap();
    let jc = jir_con(d.lattice());
    writeln!(out, "Jir(Con L): {} elements", jc.members.len()).unwrap();
    let props = check_all(&jc.poset);
    for (p, ok) in &props.results {
        writeln!(out, "  {p}: {}", if *ok { "holds" } else { "fails" }).unwrap();
    }
    let v = verify_recipe(recipe, VerifyOptions::default());
    writeln!(out, "verdict: {}", v.line()).unwrap();
    Ok(Outcome {
        text: out,
        passed: v.failures().is_empty(),
    })
}

/// What `verify` runs over: the exhaustive enumeration, or a seeded sample.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyPlan {
    pub bounds: Bounds,
    pub sample: Option<(u64, usize)>,
    pub opts: VerifyOptions,
}

pub fn plan_recipes(bounds: Bounds, sample: Option<(u64, usize)>) -> Vec<Recipe> {
    match sample {
        None => enumerate(bounds.max_size, bounds.max_rank, bounds.max_steps).collect(),
        Some((seed, count)) => (0..count as u64)
            .map(|i| random_recipe(seed.wrapping_add(i), bounds))
            .collect(),
    }
}

/// One line per lattice in recipe order, then a tally line.
pub fn cmd_verify(plan: &VerifyPlan) -> Outcome {
    let recipes = plan_recipes(plan.bounds, plan.sample);
    let verdicts: Vec<Verdict> = recipes
        .par_iter()
        .map(|r| verify_recipe(r, plan.opts))
        .collect();
    let mut out = String::new();
    let mut failed = 0;
    for v in &verdicts {
        failed += !v.failures().is_empty() as usize;
        writeln!(out, "{}", v.line()).unwrap();
    }
    writeln!(out, "{} lattices, {failed} failures", verdicts.len()).unwrap();
    Outcome {
        text: out,
        passed: failed == 0,
    }
}

pub fn cmd_enumerate(bounds: Bounds, sample: Option<(u64, usize)>) -> String {
    let mut out = String::new();
    for r in plan_recipes(bounds, sample) {
        writeln!(out, "{}", recipe_inline(&r)).unwrap();
    }
    out
}

/// The six properties of a poset given in the `elem`/`cover` format.
pub fn cmd_check_poset(text: &str) -> CliResult<Outcome> {
    let p = parse_poset(text)?;
    let report = check_all(&p);
    let mut out = String::new();
    for &(prop, ok) in &report.results {
        writeln!(out, "{prop}: {}", if ok { "holds" } else { "fails" }).unwrap();
    }
    Ok(Outcome {
        text: out,
        passed: report.all_pass(),
    })
}
