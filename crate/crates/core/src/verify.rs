//! Per-lattice verification of the lamp theory against brute force.

use rayon::prelude::*;

use crate::congruence::{con_count, jir_con, main_lemma_with};
use crate::construction::{build, enumerate, Recipe};
use crate::io::recipe_inline;
use crate::lamps::{
    floor_aligned, illuminated, independent, lift, no_gap, separatory, separatory_mirrored,
    sufficiently_disjoint, BoundaryPath, Illumination, LampContext,
};
use crate::properties::{check_all, PropertyReport};
use crate::trajectories::{check_quotient_iso, tau_quotient, trajectories, QuotientReport};

#[derive(Clone, Debug)]
pub struct Verdict {
    pub recipe: Recipe,
    pub size: usize,
    pub lamps: usize,
    pub valid: bool,
    /// Relation pairs disagreeing with the algebraic relation.
    pub relation_mismatches: usize,
    /// Of those, the ones where `foot I` is not on `Roof J`.
    pub mismatches_off_roof: usize,
    pub antisymmetric: bool,
    pub phi_bijective: bool,
    pub phi_order_iso: bool,
    pub covers_in_alg: bool,
    pub quotient: QuotientReport,
    pub properties: PropertyReport,
    pub lift_ok: bool,
    pub separatory_pairs: usize,
    pub separatory_mirrored_pairs: usize,
    pub floor_aligned_pairs: usize,
    /// Floor-aligned pairs with at least one internal lamp.
    pub floor_aligned_internal_pairs: usize,
    pub independent_not_disjoint: usize,
    pub gaps: usize,
    /// Gaps when `E(Z)` runs along the whole opposite boundary chain.
    pub gaps_whole_chain: usize,
    pub dependent_lower_covers: usize,
    pub maxima_are_boundary: bool,
    pub ray_disagreements: usize,
    pub con_count: usize,
    pub downset_count: u64,
    pub theta_blocks: usize,
    pub error: Option<String>,
}

impl Verdict {
    fn empty(recipe: &Recipe) -> Verdict {
        Verdict {
            recipe: recipe.clone(),
            size: 0,
            lamps: 0,
            valid: false,
            relation_mismatches: 0,
            mismatches_off_roof: 0,
            antisymmetric: false,
            phi_bijective: false,
            phi_order_iso: false,
            covers_in_alg: false,
            quotient: QuotientReport::default(),
            properties: PropertyReport {
                results: Vec::new(),
            },
            lift_ok: false,
            separatory_pairs: 0,
            separatory_mirrored_pairs: 0,
            floor_aligned_pairs: 0,
            floor_aligned_internal_pairs: 0,
            independent_not_disjoint: 0,
            gaps: 0,
            gaps_whole_chain: 0,
            dependent_lower_covers: 0,
            maxima_are_boundary: false,
            ray_disagreements: 0,
            con_count: 0,
            downset_count: 0,
            theta_blocks: 0,
            error: None,
        }
    }

    /// Main Lemma: eight-way agreement, antisymmetry, `φ` and covers.
    pub fn main_lemma_ok(&self) -> bool {
        self.relation_mismatches == 0 && self.main_lemma_order_ok()
    }

    pub fn main_lemma_order_ok(&self) -> bool {
        self.antisymmetric && self.phi_bijective && self.phi_order_iso && self.covers_in_alg
    }

    /// Properties of `Jir(Con L)` and the lemmas on lamps, read literally.
    pub fn theorem_ok(&self) -> bool {
        self.properties.all_pass()
            && self.lemmas_ok_except_floors()
            && self.floor_aligned_pairs == 0
    }

    pub fn lemmas_ok_except_floors(&self) -> bool {
        self.lift_ok
            && self.separatory_pairs == 0
            && self.independent_not_disjoint == 0
            && self.gaps == 0
            && self.dependent_lower_covers == 0
            && self.maxima_are_boundary
    }

    pub fn oracles_ok(&self) -> bool {
        self.ray_disagreements == 0
            && self.con_count as u64 == self.downset_count
            && self.theta_blocks == self.lamps
    }

    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.error.is_some() {
            return vec!["error"];
        }
        let checks: [(&'static str, bool); 20] = [
            ("valid", self.valid),
            ("relations-agree", self.relation_mismatches == 0),
            ("antisymmetric", self.antisymmetric),
            ("phi-bijective", self.phi_bijective),
            ("phi-order", self.phi_order_iso),
            ("covers-in-alg", self.covers_in_alg),
            ("quotient", self.quotient.passes()),
            ("properties", self.properties.all_pass()),
            ("lift", self.lift_ok),
            ("separatory", self.separatory_pairs == 0),
            ("floor-aligned", self.floor_aligned_pairs == 0),
            ("independent-disjoint", self.independent_not_disjoint == 0),
            ("no-gap", self.gaps == 0),
            ("lower-covers-independent", self.dependent_lower_covers == 0),
            ("maxima-boundary", self.maxima_are_boundary),
            ("ray-oracle", self.ray_disagreements == 0),
            ("birkhoff", self.con_count as u64 == self.downset_count),
            ("theta-blocks", self.theta_blocks == self.lamps),
            ("quotient-blocks", self.quotient.blocks_match_lamps),
            ("quotient-con", self.quotient.con_matches),
        ];
        for (name, ok) in checks {
            if !ok {
                out.push(name);
            }
        }
        out
    }

    /// One report line: the recipe, counts, then `ok` or the failed checks.
    pub fn line(&self) -> String {
        let fails = self.failures();
        let status = if fails.is_empty() {
            "ok".to_string()
        } else {
            format!("FAIL {}", fails.join(","))
        };
        let mut s = format!(
            "{} | size={} lamps={} con={} | {status}",
            recipe_inline(&self.recipe),
            self.size,
            self.lamps,
            self.con_count
        );
        if let Some(e) = &self.error {
            s.push_str(&format!(" ({e})"));
        }
        s
    }
}

/// What to compute; the brute-force congruence lattice dominates the cost.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub con_lattice: bool,
    pub ray_oracle: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            con_lattice: true,
            ray_oracle: true,
        }
    }
}

pub fn verify_recipe(recipe: &Recipe, opts: VerifyOptions) -> Verdict {
    let mut v = Verdict::empty(recipe);
    let d = match build(recipe) {
        Ok(d) => d,
        Err(e) => {
            v.error = Some(e.to_string());
            return v;
        }
    };
    let ctx = match LampContext::new(&d) {
        Ok(c) => c,
        Err(e) => {
            v.error = Some(e.to_string());
            return v;
        }
    };
    let l = d.lattice();
    let lay = d.layout();
    let n = ctx.len();
    v.size = d.len();
    v.lamps = n;
    v.valid = d.validate().all_pass();

    let jc = jir_con(l);
    let report = main_lemma_with(&ctx, &jc);
    v.relation_mismatches = report.relation_mismatches.len();
    v.mismatches_off_roof = report
        .relation_mismatches
        .iter()
        .filter(|&&(_, i, j)| {
            let f = lay.point(ctx.lamps[i].foot);
            let rg = &ctx.regions[j];
            !(rg.lroof.contains(&f) || rg.rroof.contains(&f))
        })
        .count();
    v.antisymmetric = report.antisymmetric;
    v.phi_bijective = report.phi_bijective;
    v.phi_order_iso = report.phi_order_iso;
    v.covers_in_alg = report.covers_in_alg;

    let poset = match crate::lamps::lamp_poset(&ctx) {
        Ok(p) => p,
        Err(e) => {
            v.error = Some(e.to_string());
            return v;
        }
    };
    v.quotient = check_quotient_iso(&ctx, &poset, &jc);
    v.properties = check_all(&jc.poset);

    v.lift_ok = ctx
        .lamps
        .iter()
        .all(|lamp| lift(&d, lamp.foot) == lamp.peak);
    for i in 0..n {
        for j in (i + 1)..n {
            let (ri, rj) = (&ctx.regions[i], &ctx.regions[j]);
            v.separatory_pairs += separatory(ri, rj) as usize;
            v.separatory_mirrored_pairs += separatory_mirrored(ri, rj) as usize;
            if floor_aligned(ri, rj) {
                v.floor_aligned_pairs += 1;
                if ctx.lamps[i].is_internal() || ctx.lamps[j].is_internal() {
                    v.floor_aligned_internal_pairs += 1;
                }
            }
            if independent(&d, &ctx.lamps[i], &ctx.lamps[j])
                && !sufficiently_disjoint(&ri.lit, &rj.lit)
            {
                v.independent_not_disjoint += 1;
            }
        }
    }
    for z in 0..n {
        if !ctx.lamps[z].is_boundary() {
            continue;
        }
        match (
            no_gap(&ctx, z, BoundaryPath::Lower),
            no_gap(&ctx, z, BoundaryPath::Whole),
        ) {
            (Ok(a), Ok(b)) => {
                v.gaps += !a.no_gap as usize;
                v.gaps_whole_chain += !b.no_gap as usize;
            }
            (Err(e), _) | (_, Err(e)) => {
                v.error = Some(e.to_string());
                return v;
            }
        }
        let lows = poset.lower_covers(z);
        for (a, &x) in lows.iter().enumerate() {
            for &y in &lows[a + 1..] {
                if !independent(&d, &ctx.lamps[x], &ctx.lamps[y]) {
                    v.dependent_lower_covers += 1;
                }
            }
        }
    }
    v.maxima_are_boundary =
        (0..n).all(|i| poset.upper_covers(i).is_empty() == ctx.lamps[i].is_boundary());

    if opts.ray_oracle {
        v.ray_disagreements = ray_disagreements(&ctx);
    }
    if opts.con_lattice {
        v.con_count = con_count(l);
    }
    v.downset_count = jc.poset.count_down_sets();
    if !opts.con_lattice {
        v.con_count = v.downset_count as usize;
    }
    v.theta_blocks = tau_quotient(&d, &trajectories(&ctx)).blocks.len();
    v
}

/// Points where the ray predicate and polygon membership of `Lit`,
/// `LeftLit` or `RightLit` disagree, over every lattice element and every
/// vertex of every lit piece, for every lamp.
pub fn ray_disagreements(ctx: &LampContext) -> usize {
    let d = &ctx.diagram;
    let lay = d.layout();
    let mut pts: Vec<_> = d.lattice().elements().map(|x| lay.point(x)).collect();
    for rg in &ctx.regions {
        for region in [&rg.lit, &rg.leftlit, &rg.rightlit] {
            for piece in region.pieces() {
                pts.extend(piece.vertices());
            }
        }
    }
    pts.sort();
    pts.dedup();
    let mut bad = 0;
    for (lamp, rg) in ctx.lamps.iter().zip(&ctx.regions) {
        for p in &pts {
            let ill = illuminated(d, lamp, p);
            let from_left = matches!(ill, Illumination::Left | Illumination::Both);
            let from_right = matches!(ill, Illumination::Right | Illumination::Both);
            if from_left != rg.rightlit.contains(p)
                || from_right != rg.leftlit.contains(p)
                || (from_left || from_right) != rg.lit.contains(p)
            {
                bad += 1;
            }
        }
    }
    bad
}

/// All recipes of the enumeration, verified in parallel and reported in
/// enumeration order.
pub fn verify_all(
    max_size: usize,
    max_rank: usize,
    max_steps: usize,
    opts: VerifyOptions,
) -> Vec<Verdict> {
    let recipes: Vec<Recipe> = enumerate(max_size, max_rank, max_steps).collect();
    recipes.par_iter().map(|r| verify_recipe(r, opts)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s1_verdict() {
        let v = verify_recipe(&Recipe::grid(2, 2).fork(0, 0, 1), VerifyOptions::default());
        assert!(v.failures().is_empty(), "{}", v.line());
        assert_eq!((v.size, v.lamps, v.con_count), (7, 3, 5));
        assert_eq!(v.line(), "grid 2 2; fork 0 0 1 | size=7 lamps=3 con=5 | ok");
    }

    #[test]
    fn stacked_forks_fail_only_on_roof_feet() {
        let v = verify_recipe(
            &Recipe::grid(2, 2).fork(0, 0, 1).fork(0, 0, 1),
            VerifyOptions::default(),
        );
        assert!(v.relation_mismatches > 0);
        assert_eq!(v.mismatches_off_roof, 0);
        assert!(v.main_lemma_order_ok());
        assert_eq!(v.failures(), vec!["relations-agree"]);
    }

    #[test]
    fn broken_recipe_reports_error() {
        let v = verify_recipe(&Recipe::grid(1, 3), VerifyOptions::default());
        assert_eq!(v.failures(), vec!["error"]);
        assert!(v.line().starts_with("grid 1 3 |"));
    }
}
