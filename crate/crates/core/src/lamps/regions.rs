//! Body, circumscribed rectangle, roofs, floors and illuminated sets.

use num_traits::Zero;

use crate::construction::Diagram;
use crate::error::{Error, Result};
use crate::geometry::{segment_intersect, Intersection, Point, Region, Segment, Shape, Q};
use crate::lattice::ElemId;

use super::{Lamp, LampKind};

#[derive(Clone, Debug)]
pub struct LampRegions {
    pub body: Shape,
    /// `None` for boundary lamps.
    pub circ: Option<Shape>,
    pub lroof: Segment,
    pub rroof: Segment,
    pub lfloor: Segment,
    pub rfloor: Segment,
    pub lit: Region,
    /// Points lit from the right, i.e. lying down-left of a tube.
    pub leftlit: Region,
    /// Points lit from the left.
    pub rightlit: Region,
}

impl LampRegions {
    /// Membership in `Lit \ Floor`.
    pub fn lit_minus_floor_contains(&self, p: &Point) -> bool {
        self.lit.contains(p) && !self.lfloor.contains(p) && !self.rfloor.contains(p)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Illumination {
    None,
    Left,
    Right,
    Both,
}

/// The region bounded by the leftmost and rightmost maximal chains of `[a, b]`.
pub fn interval_shape(d: &Diagram, a: ElemId, b: ElemId) -> Result<Shape> {
    let (l, lay) = (d.lattice(), d.layout());
    if !l.leq(a, b) {
        return Err(Error::InternalError(format!("{a} is not below {b}")));
    }
    let walk = |leftmost: bool| {
        let mut chain = vec![a];
        let mut x = a;
        while x != b {
            x = l
                .upper_covers(x)
                .iter()
                .copied()
                .filter(|&y| l.leq(y, b))
                .min_by_key(|&y| if leftmost { lay.u(y) } else { -lay.u(y) })
                .expect("some upper cover stays below b");
            chain.push(x);
        }
        chain
    };
    let left = walk(true);
    let right = walk(false);
    let mut outline: Vec<Point> = left.iter().map(|&x| lay.point(x)).collect();
    outline.extend(
        right
            .iter()
            .rev()
            .skip(1)
            .take(right.len().saturating_sub(2))
            .map(|&x| lay.point(x)),
    );
    if left == right {
        let pts: Vec<Point> = left.iter().map(|&x| lay.point(x)).collect();
        return Shape::from_outline(pts);
    }
    Shape::from_outline(outline)
}

fn lr_point(l: i64, r: i64) -> Point {
    Point::from_lr(Q::from_integer(l), Q::from_integer(r))
}

/// Project along direction (-1,-1) onto the lower-left side `r = 0`.
fn drop_left(p: &Point) -> Point {
    let (l, _) = p.lr();
    Point::from_lr(l, Q::zero())
}

/// Project along direction (1,-1) onto the lower-right side `l = 0`.
fn drop_right(p: &Point) -> Point {
    let (_, r) = p.lr();
    Point::from_lr(Q::zero(), r)
}

pub fn regions(d: &Diagram, lamp: &Lamp) -> Result<LampRegions> {
    let lay = d.layout();
    let q = lay.point(lamp.peak);
    let p = lay.point(lamp.foot);
    let body = interval_shape(d, lamp.foot, lamp.peak)?;
    let circ = match lamp.kind {
        LampKind::Internal => {
            let l = d.lattice();
            let lower = l.lower_covers(lamp.peak);
            let leftmost = *lower
                .iter()
                .min_by_key(|&&y| lay.u(y))
                .expect("peak has lower covers");
            let rightmost = *lower
                .iter()
                .max_by_key(|&&y| lay.u(y))
                .expect("peak has lower covers");
            Some(interval_shape(d, l.meet(leftmost, rightmost), lamp.peak)?)
        }
        _ => None,
    };
    let mut left_pieces = Vec::new();
    let mut right_pieces = Vec::new();
    for &t in &lamp.tubes {
        let a = lay.point(t);
        left_pieces.push(Shape::hull(&[a, q, drop_left(&a), drop_left(&q)]));
        right_pieces.push(Shape::hull(&[a, q, drop_right(&a), drop_right(&q)]));
    }
    let leftlit = Region::from_shapes(left_pieces);
    let rightlit = Region::from_shapes(right_pieces);
    Ok(LampRegions {
        body,
        circ,
        lroof: Segment::new(q, drop_left(&q)),
        rroof: Segment::new(q, drop_right(&q)),
        lfloor: Segment::new(p, drop_left(&p)),
        rfloor: Segment::new(p, drop_right(&p)),
        lit: leftlit.union(&rightlit),
        leftlit,
        rightlit,
    })
}

/// Ray-based illumination test, independent of the region polygons.
pub fn illuminated(d: &Diagram, lamp: &Lamp, pt: &Point) -> Illumination {
    let lay = d.layout();
    let reach = 2 * (lay.width_l() + lay.width_r()) + 2;
    let q = lay.point(lamp.peak);
    let hits = |dx: i64| {
        let far = pt.add(&Point::new(dx * reach, reach));
        let ray = Segment::new(*pt, far);
        lamp.tubes.iter().any(|&t| {
            segment_intersect(&ray, &Segment::new(lay.point(t), q)) != Intersection::Empty
        })
    };
    match (hits(-1), hits(1)) {
        (false, false) => Illumination::None,
        (true, false) => Illumination::Left,
        (false, true) => Illumination::Right,
        (true, true) => Illumination::Both,
    }
}

/// Grid point helper used by tests and the toolkit.
pub(crate) fn grid_point(l: i64, r: i64) -> Point {
    lr_point(l, r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{build, Recipe};
    use crate::lamps::lamps;

    fn sorted(s: &Shape) -> Vec<Point> {
        let mut v = s.vertices();
        v.sort();
        v
    }

    fn s_n(n: usize) -> Diagram {
        build(&Recipe::grid(2, 2).fork(0, 0, n)).unwrap()
    }

    #[test]
    fn s_n_internal_circ_is_full_rectangle() {
        for n in 1..=4 {
            let d = s_n(n);
            let full = Shape::Polygon(d.layout().full_rectangle());
            for lamp in lamps(&d) {
                let rg = regions(&d, &lamp).unwrap();
                if lamp.is_internal() {
                    assert_eq!(sorted(rg.circ.as_ref().unwrap()), sorted(&full));
                    if n == 1 {
                        assert!(matches!(rg.body, Shape::Segment(_)));
                    } else {
                        assert!(matches!(rg.body, Shape::Polygon(_)));
                    }
                } else {
                    // Boundary lamps of S_n light the whole rectangle.
                    assert!(rg.lit.contains_shape(&full));
                }
            }
        }
    }

    #[test]
    fn s1_foot_lit_by_left_boundary_lamp() {
        let d = s_n(1);
        let ls = lamps(&d);
        let int = ls.iter().find(|l| l.is_internal()).unwrap();
        let left = ls
            .iter()
            .find(|l| l.kind == LampKind::BoundaryLeft)
            .unwrap();
        let foot = d.layout().point(int.foot);
        // The up-left ray from the foot reaches the upper-left boundary tube.
        assert_eq!(illuminated(&d, left, &foot), Illumination::Left);
        let rg = regions(&d, left).unwrap();
        assert!(rg.rightlit.contains(&foot));
        assert!(!rg.leftlit.has_area());
        let body = regions(&d, int).unwrap().body;
        assert!(rg.lit.contains_shape(&body));
    }

    #[test]
    fn peak_is_lit_from_both_sides() {
        let d = build(&Recipe::grid(3, 2).fork(1, 0, 2)).unwrap();
        for lamp in lamps(&d) {
            let q = d.layout().point(lamp.peak);
            assert_eq!(illuminated(&d, &lamp, &q), Illumination::Both);
        }
    }

    #[test]
    fn roof_and_floor_collinear_for_left_boundary() {
        let d = build(&Recipe::grid(3, 3).fork(0, 0, 1)).unwrap();
        for lamp in lamps(&d) {
            let rg = regions(&d, &lamp).unwrap();
            let (lq, _) = rg.lroof.a.lr();
            let (lp, _) = rg.lfloor.a.lr();
            assert_eq!(lq == lp, lamp.kind == LampKind::BoundaryLeft);
            assert_eq!(
                rg.leftlit.has_area() && rg.rightlit.has_area(),
                lamp.is_internal()
            );
        }
        let _ = grid_point(0, 0);
    }
}
