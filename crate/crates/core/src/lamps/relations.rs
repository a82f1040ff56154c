//! The eight relations on lamps and the lamp poset.

use crate::construction::Diagram;
use crate::error::Result;
use crate::poset::Poset;

use super::regions::{regions, LampRegions};
use super::{lamps, Lamp};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelationKind {
    /// `Body I ⊆ Lit J`.
    Body,
    /// `CircR I ⊆ Lit J`.
    Circ,
    /// `Peak I ≤ Peak J` and `foot I ≰ foot J`.
    Alg,
    /// `Body I` inside `LeftLit J` or inside `RightLit J`.
    HalfBody,
    HalfCirc,
    /// `foot I ∈ Lit J`.
    Foot,
    /// `foot I` in the topological interior of `Lit J`.
    InteriorFoot,
    /// `foot I ∈ Lit J \ Floor J`.
    LitMinusFloorFoot,
}

pub const ALL_RELATIONS: [RelationKind; 8] = [
    RelationKind::Body,
    RelationKind::Circ,
    RelationKind::Alg,
    RelationKind::HalfBody,
    RelationKind::HalfCirc,
    RelationKind::Foot,
    RelationKind::InteriorFoot,
    RelationKind::LitMinusFloorFoot,
];

impl RelationKind {
    pub fn name(self) -> &'static str {
        match self {
            RelationKind::Body => "body",
            RelationKind::Circ => "circ",
            RelationKind::Alg => "alg",
            RelationKind::HalfBody => "half-body",
            RelationKind::HalfCirc => "half-circ",
            RelationKind::Foot => "foot",
            RelationKind::InteriorFoot => "interior-foot",
            RelationKind::LitMinusFloorFoot => "lit-minus-floor-foot",
        }
    }
}

/// A diagram with its lamps and their precomputed regions.
#[derive(Clone, Debug)]
pub struct LampContext {
    pub diagram: Diagram,
    pub lamps: Vec<Lamp>,
    pub regions: Vec<LampRegions>,
}

impl LampContext {
    pub fn new(diagram: &Diagram) -> Result<LampContext> {
        let lamps = lamps(diagram);
        let regions = lamps
            .iter()
            .map(|l| regions(diagram, l))
            .collect::<Result<_>>()?;
        Ok(LampContext {
            diagram: diagram.clone(),
            lamps,
            regions,
        })
    }

    pub fn len(&self) -> usize {
        self.lamps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lamps.is_empty()
    }
}

/// The relation exactly as stated, with only the side conditions it spells out.
pub fn relation_literal(ctx: &LampContext, kind: RelationKind, i: usize, j: usize) -> bool {
    let (a, b) = (&ctx.lamps[i], &ctx.lamps[j]);
    let (ra, rb) = (&ctx.regions[i], &ctx.regions[j]);
    let lay = ctx.diagram.layout();
    let lat = ctx.diagram.lattice();
    let foot = lay.point(a.foot);
    let guard = a.is_internal() && i != j;
    match kind {
        RelationKind::Body => guard && rb.lit.contains_shape(&ra.body),
        RelationKind::Circ => guard && ra.circ.as_ref().is_some_and(|c| rb.lit.contains_shape(c)),
        RelationKind::Alg => lat.leq(a.peak, b.peak) && !lat.leq(a.foot, b.foot),
        RelationKind::HalfBody => {
            guard && (rb.leftlit.contains_shape(&ra.body) || rb.rightlit.contains_shape(&ra.body))
        }
        RelationKind::HalfCirc => {
            guard
                && ra
                    .circ
                    .as_ref()
                    .is_some_and(|c| rb.leftlit.contains_shape(c) || rb.rightlit.contains_shape(c))
        }
        RelationKind::Foot => guard && rb.lit.contains(&foot),
        RelationKind::InteriorFoot => i != j && rb.lit.interior_contains(&foot),
        RelationKind::LitMinusFloorFoot => rb.lit_minus_floor_contains(&foot),
    }
}

/// The relation with the side conditions "I internal and I ≠ J" imposed on
/// every variant.
pub fn relation(ctx: &LampContext, kind: RelationKind, i: usize, j: usize) -> bool {
    ctx.lamps[i].is_internal() && i != j && relation_literal(ctx, kind, i, j)
}

/// Row-major `n × n` matrix of [`relation`].
pub fn relation_matrix(ctx: &LampContext, kind: RelationKind) -> Vec<Vec<bool>> {
    let n = ctx.len();
    (0..n)
        .map(|i| (0..n).map(|j| relation(ctx, kind, i, j)).collect())
        .collect()
}

/// Reflexive-transitive closure of the algebraic relation, with lamp names
/// `foot-peak`.
pub fn lamp_poset(ctx: &LampContext) -> Result<Poset> {
    let n = ctx.len();
    let names = ctx
        .lamps
        .iter()
        .map(|l| format!("{}-{}", l.foot, l.peak))
        .collect();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if relation(ctx, RelationKind::Alg, i, j) {
                pairs.push((i, j));
            }
        }
    }
    Poset::named_from_relation(names, pairs)
}
