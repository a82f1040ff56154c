//! Auxiliary notions on lamps: `cov`, `lift`, separatory and floor-aligned
//! pairs, independence, sufficient disjointness and gaps on the boundary.

use num_traits::Zero;

use crate::construction::Diagram;
use crate::error::{Error, Result};
use crate::geometry::{convex_intersection, Point, Region, Segment, Shape, Q};
use crate::lattice::ElemId;

use super::regions::{grid_point, LampRegions};
use super::relations::{relation, LampContext, RelationKind};
use super::{Lamp, LampKind};

/// Join of the upper covers of `u`.
pub fn cov(d: &Diagram, u: ElemId) -> Result<ElemId> {
    let l = d.lattice();
    if u == l.top() {
        return Err(Error::CovOfTop);
    }
    Ok(l.join_all(l.upper_covers(u).iter().copied()))
}

pub fn lift(d: &Diagram, x: ElemId) -> ElemId {
    let l = d.lattice();
    let mut x = x;
    loop {
        if x == l.top() {
            return x;
        }
        let c = cov(d, x).expect("x is not the top");
        if l.lower_covers(c).iter().any(|&y| l.is_meet_irreducible(y)) {
            return c;
        }
        x = c;
    }
}

/// `s1` lies strictly to the left of the parallel segment `s2`, compared by
/// x-intercepts. Fails for zero-length, horizontal or non-parallel segments.
pub fn left_of(s1: &Segment, s2: &Segment) -> bool {
    let (d1, d2) = (s1.direction(), s2.direction());
    if d1.is_zero() || d2.is_zero() || d1.y.is_zero() || d2.y.is_zero() {
        return false;
    }
    if d1.x * d2.y != d1.y * d2.x {
        return false;
    }
    let intercept = |s: &Segment| s.a.x - s.a.y * d1.x / d1.y;
    intercept(s1) < intercept(s2)
}

fn chain_left_of(segs: [&Segment; 4]) -> bool {
    segs.windows(2).all(|w| left_of(w[0], w[1]))
}

/// Left or right separatory, with the right variant obtained by replacing
/// left roofs and floors by right ones verbatim.
pub fn separatory(a: &LampRegions, b: &LampRegions) -> bool {
    let left = |x: &LampRegions, y: &LampRegions| {
        chain_left_of([&x.lroof, &y.lroof, &x.lfloor, &y.lfloor])
    };
    let right = |x: &LampRegions, y: &LampRegions| {
        chain_left_of([&x.rroof, &y.rroof, &x.rfloor, &y.rfloor])
    };
    left(a, b) || left(b, a) || right(a, b) || right(b, a)
}

/// Separatory with the right variant mirrored, so that "to the left of" is
/// read as "to the right of" on the right-hand segments.
pub fn separatory_mirrored(a: &LampRegions, b: &LampRegions) -> bool {
    let left = |x: &LampRegions, y: &LampRegions| {
        chain_left_of([&x.lroof, &y.lroof, &x.lfloor, &y.lfloor])
    };
    let right = |x: &LampRegions, y: &LampRegions| {
        chain_left_of([&y.rfloor, &x.rfloor, &y.rroof, &x.rroof])
    };
    left(a, b) || left(b, a) || right(a, b) || right(b, a)
}

fn same_line(s1: &Segment, s2: &Segment) -> bool {
    let (d1, d2) = (s1.direction(), s2.direction());
    if d1.is_zero() || d2.is_zero() {
        return false;
    }
    let w = s2.a.sub(&s1.a);
    d1.x * d2.y == d1.y * d2.x && w.x * d1.y == w.y * d1.x
}

/// Left or right floors of positive length on a common line.
pub fn floor_aligned(a: &LampRegions, b: &LampRegions) -> bool {
    same_line(&a.lfloor, &b.lfloor) || same_line(&a.rfloor, &b.rfloor)
}

pub fn independent(d: &Diagram, a: &Lamp, b: &Lamp) -> bool {
    let l = d.lattice();
    l.leq(a.peak, b.foot) || l.leq(b.peak, a.foot)
}

/// Every positive-length segment in `a ∩ b` has a normal slope. Pieces must be
/// convex.
pub fn sufficiently_disjoint(a: &Region, b: &Region) -> bool {
    a.pieces().iter().all(|pa| {
        b.pieces()
            .iter()
            .all(|pb| match convex_intersection(pa, pb) {
                None | Some(Shape::Point(_)) => true,
                Some(Shape::Segment(s)) => s.is_normal_slope(),
                Some(Shape::Polygon(_)) => false,
            })
    })
}

/// Closed intervals of the height coordinate along a boundary path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapReport {
    pub e: Vec<(Q, Q)>,
    pub f: Vec<(Q, Q)>,
    pub no_gap: bool,
}

fn merge(mut iv: Vec<(Q, Q)>) -> Vec<(Q, Q)> {
    iv.sort();
    let mut out: Vec<(Q, Q)> = Vec::new();
    for (a, b) in iv {
        match out.last_mut() {
            Some(last) if a <= last.1 => last.1 = last.1.max(b),
            _ => out.push((a, b)),
        }
    }
    out
}

fn heights_on(region: &Region, path: &[Segment]) -> Vec<(Q, Q)> {
    let mut iv = Vec::new();
    for piece in region.pieces() {
        for seg in path {
            if let Some(s) = convex_intersection(piece, &Shape::Segment(*seg)) {
                let ys: Vec<Q> = s.vertices().iter().map(|p: &Point| p.y).collect();
                let lo = *ys.iter().min().expect("nonempty shape");
                let hi = *ys.iter().max().expect("nonempty shape");
                iv.push((lo, hi));
            }
        }
    }
    merge(iv)
}

fn intersect_intervals(a: &[(Q, Q)], b: &[(Q, Q)]) -> Vec<(Q, Q)> {
    let mut out = Vec::new();
    for &(a0, a1) in a {
        for &(b0, b1) in b {
            let (lo, hi) = (a0.max(b0), a1.min(b1));
            if lo <= hi {
                out.push((lo, hi));
            }
        }
    }
    merge(out)
}

/// Which part of the opposite boundary `E(Z)` is measured on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryPath {
    /// The lower chain from `0` to the opposite corner; `E(Z)` is a segment.
    Lower,
    /// The whole chain from `0` to `1`.
    Whole,
}

/// `E(Z)` and `F(Z)` for the boundary lamp `z`, as height intervals along the
/// opposite boundary.
pub fn no_gap(ctx: &LampContext, z: usize, which: BoundaryPath) -> Result<GapReport> {
    let lay = ctx.diagram.layout();
    let (a, b) = (lay.width_l(), lay.width_r());
    let o = grid_point(0, 0);
    let mut path = match ctx.lamps[z].kind {
        LampKind::BoundaryLeft => {
            vec![
                Segment::new(o, grid_point(0, b)),
                Segment::new(grid_point(0, b), grid_point(a, b)),
            ]
        }
        LampKind::BoundaryRight => {
            vec![
                Segment::new(o, grid_point(a, 0)),
                Segment::new(grid_point(a, 0), grid_point(a, b)),
            ]
        }
        LampKind::Internal => return Err(Error::NotABoundaryLamp(z)),
    };
    if which == BoundaryPath::Lower {
        path.truncate(1);
    }
    let e = heights_on(&ctx.regions[z].lit, &path);
    let mut f = Vec::new();
    for u in 0..ctx.len() {
        if relation(ctx, RelationKind::Circ, u, z) {
            f.extend(intersect_intervals(
                &heights_on(&ctx.regions[u].lit, &path),
                &e,
            ));
        }
    }
    let f = merge(f);
    let top_e = e.iter().map(|iv| iv.1).max();
    let no_gap = f.is_empty() || (f.len() == 1 && Some(f[0].1) == top_e);
    Ok(GapReport { e, f, no_gap })
}
