//! Exact plane geometry and the grid-embedding layout of a diagram.
//!
//! Points live in diagram coordinates `(u, v)` where `v` grows upwards.
//! Every element `x` of a slim rectangular lattice also has grid coordinates
//! `(l, r)`, the heights of the largest elements of the two lower boundary
//! chains below `x`; then `u = r - l` and `v = r + l`.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{ElemId, FiniteLattice};

pub type Q = Ratio<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Q,
    pub y: Q,
}

impl Point {
    pub fn new(x: i64, y: i64) -> Point {
        Point {
            x: Q::from_integer(x),
            y: Q::from_integer(y),
        }
    }

    pub fn from_q(x: Q, y: Q) -> Point {
        Point { x, y }
    }

    /// Diagram point of grid coordinates `(l, r)`.
    pub fn from_lr(l: Q, r: Q) -> Point {
        Point { x: r - l, y: r + l }
    }

    /// Grid coordinates `(l, r)` of this point.
    pub fn lr(&self) -> (Q, Q) {
        let two = Q::from_integer(2);
        ((self.y - self.x) / two, (self.y + self.x) / two)
    }

    pub fn add(&self, o: &Point) -> Point {
        Point {
            x: self.x + o.x,
            y: self.y + o.y,
        }
    }

    pub fn sub(&self, o: &Point) -> Point {
        Point {
            x: self.x - o.x,
            y: self.y - o.y,
        }
    }

    pub fn scale(&self, t: Q) -> Point {
        Point {
            x: self.x * t,
            y: self.y * t,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
}

fn cross(a: &Point, b: &Point) -> Q {
    a.x * b.y - a.y * b.x
}

fn dot(a: &Point, b: &Point) -> Q {
    a.x * b.x + a.y * b.y
}

// Orientation of (o, a, b): positive for a left turn.
fn orient(o: &Point, a: &Point, b: &Point) -> Q {
    cross(&a.sub(o), &b.sub(o))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Segment {
        Segment { a, b }
    }

    pub fn is_degenerate(&self) -> bool {
        self.a == self.b
    }

    pub fn direction(&self) -> Point {
        self.b.sub(&self.a)
    }

    pub fn midpoint(&self) -> Point {
        self.a.add(&self.b).scale(Q::new(1, 2))
    }

    /// Closed-segment membership.
    pub fn contains(&self, p: &Point) -> bool {
        if !orient(&self.a, &self.b, p).is_zero() {
            return false;
        }
        let d = self.direction();
        let t = dot(&p.sub(&self.a), &d);
        if d.is_zero() {
            return *p == self.a;
        }
        t >= Q::zero() && t <= dot(&d, &d)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Intersection {
    Empty,
    Point(Point),
    Overlap(Segment),
}

/// Exact intersection of two closed segments (either may be a single point).
pub fn segment_intersect(s1: &Segment, s2: &Segment) -> Intersection {
    if s1.a.x.max(s1.b.x) < s2.a.x.min(s2.b.x)
        || s2.a.x.max(s2.b.x) < s1.a.x.min(s1.b.x)
        || s1.a.y.max(s1.b.y) < s2.a.y.min(s2.b.y)
        || s2.a.y.max(s2.b.y) < s1.a.y.min(s1.b.y)
    {
        return Intersection::Empty;
    }
    let d1 = s1.direction();
    let d2 = s2.direction();
    if s1.is_degenerate() {
        return if s2.contains(&s1.a) {
            Intersection::Point(s1.a)
        } else {
            Intersection::Empty
        };
    }
    if s2.is_degenerate() {
        return if s1.contains(&s2.a) {
            Intersection::Point(s2.a)
        } else {
            Intersection::Empty
        };
    }
    let denom = cross(&d1, &d2);
    let w = s2.a.sub(&s1.a);
    if !denom.is_zero() {
        let t = cross(&w, &d2) / denom;
        let s = cross(&w, &d1) / denom;
        let unit = Q::from_integer(1);
        if t >= Q::zero() && t <= unit && s >= Q::zero() && s <= unit {
            return Intersection::Point(s1.a.add(&d1.scale(t)));
        }
        return Intersection::Empty;
    }
    if !cross(&w, &d1).is_zero() {
        return Intersection::Empty;
    }
    // Collinear: compare parameters along d1.
    let len = dot(&d1, &d1);
    let p0 = dot(&s2.a.sub(&s1.a), &d1) / len;
    let p1 = dot(&s2.b.sub(&s1.a), &d1) / len;
    let lo = p0.min(p1).max(Q::zero());
    let hi = p0.max(p1).min(Q::from_integer(1));
    match lo.cmp(&hi) {
        Ordering::Greater => Intersection::Empty,
        Ordering::Equal => Intersection::Point(s1.a.add(&d1.scale(lo))),
        Ordering::Less => Intersection::Overlap(Segment::new(
            s1.a.add(&d1.scale(lo)),
            s1.a.add(&d1.scale(hi)),
        )),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Interior,
    Boundary,
    Outside,
}

/// A simple polygon of positive area, vertices counter-clockwise, no three
/// consecutive vertices collinear.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polygon {
    verts: Vec<Point>,
}

impl Polygon {
    pub fn new(points: Vec<Point>) -> Result<Polygon> {
        let mut v: Vec<Point> = Vec::with_capacity(points.len());
        for p in points {
            if v.last() != Some(&p) {
                v.push(p);
            }
        }
        while v.len() > 1 && v.first() == v.last() {
            v.pop();
        }
        // Drop collinear middle vertices until none remain.
        let mut changed = true;
        while changed && v.len() >= 3 {
            changed = false;
            let n = v.len();
            for i in 0..n {
                let (a, b, c) = (v[(i + n - 1) % n], v[i], v[(i + 1) % n]);
                if orient(&a, &b, &c).is_zero() {
                    v.remove(i);
                    changed = true;
                    break;
                }
            }
        }
        if v.len() < 3 {
            return Err(Error::DegeneratePolygon(format!(
                "{} distinct vertices",
                v.len()
            )));
        }
        let mut poly = Polygon { verts: v };
        let area2 = poly.signed_area2();
        if area2.is_zero() {
            return Err(Error::DegeneratePolygon("zero area".into()));
        }
        if area2 < Q::zero() {
            poly.verts.reverse();
        }
        let edges = poly.edges();
        let n = edges.len();
        for i in 0..n {
            for j in i + 1..n {
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                let hit = segment_intersect(&edges[i], &edges[j]);
                let bad = match hit {
                    Intersection::Empty => false,
                    Intersection::Overlap(_) => true,
                    Intersection::Point(_) => !adjacent,
                };
                if bad {
                    return Err(Error::DegeneratePolygon("self-intersecting".into()));
                }
            }
        }
        Ok(poly)
    }

    pub fn vertices(&self) -> &[Point] {
        &self.verts
    }

    pub fn edges(&self) -> Vec<Segment> {
        let n = self.verts.len();
        (0..n)
            .map(|i| Segment::new(self.verts[i], self.verts[(i + 1) % n]))
            .collect()
    }

    fn signed_area2(&self) -> Q {
        let n = self.verts.len();
        (0..n)
            .map(|i| cross(&self.verts[i], &self.verts[(i + 1) % n]))
            .sum()
    }

    pub fn area(&self) -> Q {
        self.signed_area2().abs() / Q::from_integer(2)
    }

    pub fn is_convex(&self) -> bool {
        let n = self.verts.len();
        (0..n).all(|i| {
            orient(
                &self.verts[i],
                &self.verts[(i + 1) % n],
                &self.verts[(i + 2) % n],
            ) > Q::zero()
        })
    }

    pub fn locate(&self, p: &Point) -> Location {
        point_in_polygon(p, self)
    }
}

pub fn point_in_polygon(p: &Point, poly: &Polygon) -> Location {
    let edges = poly.edges();
    if edges.iter().any(|e| e.contains(p)) {
        return Location::Boundary;
    }
    let mut inside = false;
    for e in &edges {
        let (a, b) = (e.a, e.b);
        if (a.y > p.y) != (b.y > p.y) {
            let x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if p.x < x {
                inside = !inside;
            }
        }
    }
    if inside {
        Location::Interior
    } else {
        Location::Outside
    }
}

/// True iff every point of `p` lies in the closed polygon `q`.
pub fn polygon_subset(p: &Polygon, q: &Polygon) -> bool {
    let region = Region::from_shapes(vec![Shape::Polygon(q.clone())]);
    p.edges().iter().all(|e| region.contains_segment(e))
}

/// A closed point set: a point, a segment or a simple polygon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    Point(Point),
    Segment(Segment),
    Polygon(Polygon),
}

impl Shape {
    /// Convex hull of `points`, classified by dimension.
    pub fn hull(points: &[Point]) -> Shape {
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();
        if pts.len() == 1 {
            return Shape::Point(pts[0]);
        }
        let mut lower: Vec<Point> = Vec::new();
        for p in &pts {
            while lower.len() >= 2
                && orient(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= Q::zero()
            {
                lower.pop();
            }
            lower.push(*p);
        }
        let mut upper: Vec<Point> = Vec::new();
        for p in pts.iter().rev() {
            while upper.len() >= 2
                && orient(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= Q::zero()
            {
                upper.pop();
            }
            upper.push(*p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        if lower.len() <= 2 {
            let first = pts[0];
            let last = pts[pts.len() - 1];
            return Shape::Segment(Segment::new(first, last));
        }
        Shape::Polygon(Polygon::new(lower).expect("hull of non-collinear points"))
    }

    /// Shape of a closed polyline (`open` chain of vertices), if it is one.
    pub fn from_outline(points: Vec<Point>) -> Result<Shape> {
        let mut pts = points.clone();
        pts.dedup();
        match pts.len() {
            0 => Err(Error::DegeneratePolygon("empty outline".into())),
            1 => Ok(Shape::Point(pts[0])),
            _ => {
                let all_collinear = pts.iter().all(|p| orient(&pts[0], &pts[1], p).is_zero());
                if all_collinear {
                    let lo = *pts.iter().min().unwrap();
                    let hi = *pts.iter().max().unwrap();
                    Ok(Shape::Segment(Segment::new(lo, hi)))
                } else {
                    Polygon::new(pts).map(Shape::Polygon)
                }
            }
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        match self {
            Shape::Point(q) => q == p,
            Shape::Segment(s) => s.contains(p),
            Shape::Polygon(poly) => poly.locate(p) != Location::Outside,
        }
    }

    /// Boundary pieces (for a point, a degenerate segment).
    pub fn edges(&self) -> Vec<Segment> {
        match self {
            Shape::Point(p) => vec![Segment::new(*p, *p)],
            Shape::Segment(s) => vec![*s],
            Shape::Polygon(poly) => poly.edges(),
        }
    }

    pub fn vertices(&self) -> Vec<Point> {
        match self {
            Shape::Point(p) => vec![*p],
            Shape::Segment(s) => vec![s.a, s.b],
            Shape::Polygon(poly) => poly.vertices().to_vec(),
        }
    }

    pub fn area(&self) -> Q {
        match self {
            Shape::Polygon(p) => p.area(),
            _ => Q::zero(),
        }
    }
}

/// Axis-parallel bounding box.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BBox {
    pub lo: Point,
    pub hi: Point,
}

impl BBox {
    pub fn of(points: &[Point]) -> BBox {
        let mut b = BBox {
            lo: points[0],
            hi: points[0],
        };
        for p in &points[1..] {
            b.lo.x = b.lo.x.min(p.x);
            b.lo.y = b.lo.y.min(p.y);
            b.hi.x = b.hi.x.max(p.x);
            b.hi.y = b.hi.y.max(p.y);
        }
        b
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.lo.x <= p.x && p.x <= self.hi.x && self.lo.y <= p.y && p.y <= self.hi.y
    }

    pub fn meets(&self, o: &BBox) -> bool {
        self.lo.x <= o.hi.x && o.lo.x <= self.hi.x && self.lo.y <= o.hi.y && o.lo.y <= self.hi.y
    }
}

impl Shape {
    pub fn bbox(&self) -> BBox {
        match self {
            Shape::Point(p) => BBox { lo: *p, hi: *p },
            Shape::Segment(s) => BBox::of(&[s.a, s.b]),
            Shape::Polygon(poly) => BBox::of(poly.vertices()),
        }
    }
}

/// Finite union of closed shapes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Region {
    pieces: Vec<Shape>,
    boxes: Vec<BBox>,
}

impl Region {
    pub fn from_shapes(pieces: Vec<Shape>) -> Region {
        let boxes = pieces.iter().map(Shape::bbox).collect();
        Region { pieces, boxes }
    }

    pub fn pieces(&self) -> &[Shape] {
        &self.pieces
    }

    pub fn union(&self, other: &Region) -> Region {
        let mut r = self.clone();
        r.pieces.extend(other.pieces.iter().cloned());
        r.boxes.extend(other.boxes.iter().copied());
        r
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn has_area(&self) -> bool {
        self.pieces.iter().any(|s| matches!(s, Shape::Polygon(_)))
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.pieces
            .iter()
            .zip(&self.boxes)
            .any(|(s, b)| b.contains(p) && s.contains(p))
    }

    fn area_contains(&self, p: &Point) -> bool {
        self.pieces
            .iter()
            .zip(&self.boxes)
            .any(|(s, b)| matches!(s, Shape::Polygon(_)) && b.contains(p) && s.contains(p))
    }

    fn all_edges(&self) -> Vec<Segment> {
        self.pieces.iter().flat_map(Shape::edges).collect()
    }

    /// Topological interior membership.
    ///
    /// Splits a small neighbourhood of `p` into open sectors along every
    /// piece boundary through `p` and requires each sector to be covered.
    pub fn interior_contains(&self, p: &Point) -> bool {
        if !self.area_contains(p) {
            return false;
        }
        let edges = self.all_edges();
        let mut dirs: Vec<Point> = vec![
            Point::new(1, 0),
            Point::new(0, 1),
            Point::new(-1, 0),
            Point::new(0, -1),
        ];
        for e in &edges {
            if e.is_degenerate() || !e.contains(p) {
                continue;
            }
            for end in [e.a, e.b] {
                if end != *p {
                    dirs.push(end.sub(p));
                }
            }
        }
        dirs.sort_by(angle_cmp);
        dirs.dedup_by(|a, b| angle_cmp(a, b) == Ordering::Equal);
        let far: Vec<&Segment> = edges.iter().filter(|e| !e.contains(p)).collect();
        for i in 0..dirs.len() {
            let (a, b) = (dirs[i], dirs[(i + 1) % dirs.len()]);
            let s = l1_normalize(&a).add(&l1_normalize(&b));
            let mut eps = Q::from_integer(1);
            loop {
                let probe = Segment::new(*p, p.add(&s.scale(eps)));
                if far
                    .iter()
                    .all(|e| segment_intersect(e, &probe) == Intersection::Empty)
                {
                    break;
                }
                eps /= Q::from_integer(2);
            }
            if !self.area_contains(&p.add(&s.scale(eps))) {
                return false;
            }
        }
        true
    }

    /// Whether the closed segment lies inside the region.
    pub fn contains_segment(&self, seg: &Segment) -> bool {
        if seg.is_degenerate() {
            return self.contains(&seg.a);
        }
        if !self.contains(&seg.a) || !self.contains(&seg.b) {
            return false;
        }
        let sb = BBox::of(&[seg.a, seg.b]);
        let d = seg.direction();
        let len = dot(&d, &d);
        let mut cuts: Vec<Q> = vec![Q::zero(), Q::from_integer(1)];
        let near = self
            .pieces
            .iter()
            .zip(&self.boxes)
            .filter(|(_, b)| b.meets(&sb))
            .flat_map(|(s, _)| s.edges());
        for e in near {
            match segment_intersect(seg, &e) {
                Intersection::Empty => {}
                Intersection::Point(x) => cuts.push(dot(&x.sub(&seg.a), &d) / len),
                Intersection::Overlap(o) => {
                    cuts.push(dot(&o.a.sub(&seg.a), &d) / len);
                    cuts.push(dot(&o.b.sub(&seg.a), &d) / len);
                }
            }
        }
        cuts.sort();
        cuts.dedup();
        let at = |t: Q| seg.a.add(&d.scale(t));
        cuts.iter().all(|&t| self.contains(&at(t)))
            && cuts
                .windows(2)
                .all(|w| self.contains(&at((w[0] + w[1]) / Q::from_integer(2))))
    }

    /// Whether `shape` lies inside the region. Exact for hole-free regions,
    /// where containing the outline of a polygon implies containing it.
    pub fn contains_shape(&self, shape: &Shape) -> bool {
        shape.vertices().iter().all(|p| self.contains(p))
            && shape.edges().iter().all(|e| self.contains_segment(e))
    }

    /// Whether the two regions share a set of positive area. Pieces with area
    /// must be convex.
    pub fn overlaps_with_area(&self, other: &Region) -> bool {
        for a in &self.pieces {
            for b in &other.pieces {
                if let (Shape::Polygon(pa), Shape::Polygon(pb)) = (a, b) {
                    if convex_intersection_area(pa, pb) > Q::zero() {
                        return true;
                    }
                }
            }
        }
        false
    }
}

/// Intersection of two convex shapes, `None` when they are disjoint.
pub fn convex_intersection(a: &Shape, b: &Shape) -> Option<Shape> {
    let mut pts: Vec<Point> = a.vertices().into_iter().filter(|p| b.contains(p)).collect();
    pts.extend(b.vertices().into_iter().filter(|p| a.contains(p)));
    for ea in a.edges() {
        for eb in b.edges() {
            match segment_intersect(&ea, &eb) {
                Intersection::Empty => {}
                Intersection::Point(x) => pts.push(x),
                Intersection::Overlap(o) => pts.extend([o.a, o.b]),
            }
        }
    }
    (!pts.is_empty()).then(|| Shape::hull(&pts))
}

impl Segment {
    /// Positive length with slope 1 or -1.
    pub fn is_normal_slope(&self) -> bool {
        let d = self.direction();
        !d.is_zero() && d.x.abs() == d.y.abs()
    }
}

fn l1_normalize(p: &Point) -> Point {
    p.scale(Q::from_integer(1) / (p.x.abs() + p.y.abs()))
}

// Counter-clockwise angle order starting from the positive x axis.
fn angle_cmp(a: &Point, b: &Point) -> Ordering {
    let half = |p: &Point| {
        if p.y > Q::zero() || (p.y.is_zero() && p.x > Q::zero()) {
            0
        } else {
            1
        }
    };
    half(a)
        .cmp(&half(b))
        .then_with(|| Q::zero().cmp(&cross(a, b)))
}

/// Area of the intersection of two convex polygons (Sutherland-Hodgman).
pub fn convex_intersection_area(p: &Polygon, q: &Polygon) -> Q {
    let mut out: Vec<Point> = p.vertices().to_vec();
    for e in q.edges() {
        if out.is_empty() {
            break;
        }
        let input = std::mem::take(&mut out);
        let n = input.len();
        for i in 0..n {
            let cur = input[i];
            let prev = input[(i + n - 1) % n];
            let cin = orient(&e.a, &e.b, &cur) >= Q::zero();
            let pin = orient(&e.a, &e.b, &prev) >= Q::zero();
            if cin != pin {
                let d = cur.sub(&prev);
                let t = orient(&e.a, &e.b, &prev)
                    / (orient(&e.a, &e.b, &prev) - orient(&e.a, &e.b, &cur));
                out.push(prev.add(&d.scale(t)));
            }
            if cin {
                out.push(cur);
            }
        }
    }
    let n = out.len();
    let a2: Q = (0..n).map(|i| cross(&out[i], &out[(i + 1) % n])).sum();
    a2.abs() / Q::from_integer(2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Slope {
    NormalLeft,
    NormalRight,
    Precipitous,
}

/// Grid-embedding coordinates of every element.
#[derive(Clone, Debug)]
pub struct Layout {
    lr: Vec<(i64, i64)>,
    index: HashMap<(i64, i64), ElemId>,
    c_l: ElemId,
    c_r: ElemId,
}

impl Layout {
    /// Grid embedding of a slim rectangular lattice with the given corners.
    pub fn new(lattice: &FiniteLattice, c_l: ElemId, c_r: ElemId) -> Result<Layout> {
        let down_l = lattice.down_set(c_l);
        let down_r = lattice.down_set(c_r);
        let lr = lattice
            .elements()
            .map(|x| {
                let dx = lattice.down_set(x);
                let l = dx.intersection(down_l).count() as i64 - 1;
                let r = dx.intersection(down_r).count() as i64 - 1;
                (l, r)
            })
            .collect();
        let layout = Layout::from_coords(lr, c_l, c_r)?;
        for (p, q) in lattice.covers() {
            let (a, b) = (layout.lr[p], layout.lr[q]);
            if b.0 < a.0 || b.1 < a.1 {
                return Err(Error::NotRectangular(format!(
                    "cover ({p}, {q}) decreases a grid index"
                )));
            }
        }
        Ok(layout)
    }

    /// Layout from explicit grid coordinates.
    pub fn from_coords(lr: Vec<(i64, i64)>, c_l: ElemId, c_r: ElemId) -> Result<Layout> {
        let mut index = HashMap::new();
        for (x, &p) in lr.iter().enumerate() {
            if let Some(y) = index.insert(p, x) {
                return Err(Error::NotRectangular(format!(
                    "elements {y} and {x} share grid position {p:?}"
                )));
            }
        }
        Ok(Layout {
            lr,
            index,
            c_l,
            c_r,
        })
    }

    pub fn len(&self) -> usize {
        self.lr.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lr.is_empty()
    }

    pub fn c_l(&self) -> ElemId {
        self.c_l
    }

    pub fn c_r(&self) -> ElemId {
        self.c_r
    }

    pub fn l(&self, x: ElemId) -> i64 {
        self.lr[x].0
    }

    pub fn r(&self, x: ElemId) -> i64 {
        self.lr[x].1
    }

    pub fn lr(&self, x: ElemId) -> (i64, i64) {
        self.lr[x]
    }

    /// Height of the left corner, i.e. `l` of every upper-left boundary point.
    pub fn width_l(&self) -> i64 {
        self.lr[self.c_l].0
    }

    pub fn width_r(&self) -> i64 {
        self.lr[self.c_r].1
    }

    pub fn u(&self, x: ElemId) -> i64 {
        self.lr[x].1 - self.lr[x].0
    }

    pub fn v(&self, x: ElemId) -> i64 {
        self.lr[x].1 + self.lr[x].0
    }

    pub fn point(&self, x: ElemId) -> Point {
        Point::new(self.u(x), self.v(x))
    }

    pub fn segment(&self, a: ElemId, b: ElemId) -> Segment {
        Segment::new(self.point(a), self.point(b))
    }

    pub fn element_at(&self, l: i64, r: i64) -> Option<ElemId> {
        self.index.get(&(l, r)).copied()
    }

    /// The full geometric rectangle spanned by the boundary chains.
    pub fn full_rectangle(&self) -> Polygon {
        let (a, b) = (self.width_l(), self.width_r());
        let lr = |l: i64, r: i64| Point::from_lr(Q::from_integer(l), Q::from_integer(r));
        Polygon::new(vec![lr(0, 0), lr(0, b), lr(a, b), lr(a, 0)]).expect("nondegenerate rectangle")
    }

    pub fn classify(&self, p: ElemId, q: ElemId) -> Slope {
        let dl = self.l(q) - self.l(p);
        let dr = self.r(q) - self.r(p);
        match (dl, dr) {
            (_, 0) => Slope::NormalLeft,
            (0, _) => Slope::NormalRight,
            _ => Slope::Precipitous,
        }
    }

    /// Element ids reordered by `(v, u)`: `perm[old] = new`.
    pub fn canonical_order(&self) -> Vec<ElemId> {
        let mut ids: Vec<ElemId> = (0..self.len()).collect();
        ids.sort_by_key(|&x| (self.v(x), self.u(x)));
        let mut perm = vec![0; ids.len()];
        for (new, old) in ids.into_iter().enumerate() {
            perm[old] = new;
        }
        perm
    }

    pub fn relabeled(&self, perm: &[ElemId]) -> Layout {
        let mut lr = vec![(0, 0); self.len()];
        for (old, &p) in self.lr.iter().enumerate() {
            lr[perm[old]] = p;
        }
        Layout::from_coords(lr, perm[self.c_l], perm[self.c_r])
            .expect("relabelling keeps injectivity")
    }
}

impl Layout {
    /// Whether `x` lies on the left or right boundary chain.
    pub fn on_boundary(&self, x: ElemId) -> bool {
        let (l, r) = self.lr(x);
        l == 0 || r == 0 || l == self.width_l() || r == self.width_r()
    }
}

/// The beta property: an edge is precipitous exactly when its lower end is
/// meet-irreducible and off the boundary.
pub fn check_beta(lattice: &FiniteLattice, layout: &Layout) -> Result<()> {
    for (p, q) in lattice.covers() {
        let steep = layout.classify(p, q) == Slope::Precipitous;
        let expected = lattice.is_meet_irreducible(p) && !layout.on_boundary(p);
        if steep != expected {
            return Err(Error::BetaViolation(format!(
                "edge ({p}, {q}) precipitous={steep}, expected {expected}"
            )));
        }
    }
    Ok(())
}

pub fn classify_edge(
    lattice: &FiniteLattice,
    layout: &Layout,
    p: ElemId,
    q: ElemId,
) -> Result<Slope> {
    if p >= lattice.len() || q >= lattice.len() || !lattice.is_cover(p, q) {
        return Err(Error::NotACover { lower: p, upper: q });
    }
    Ok(layout.classify(p, q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sq() -> Polygon {
        Polygon::new(vec![
            Point::new(0, 0),
            Point::new(2, 0),
            Point::new(2, 2),
            Point::new(0, 2),
        ])
        .unwrap()
    }

    #[test]
    fn crossing_diagonals() {
        let d1 = Segment::new(Point::new(0, 0), Point::new(2, 2));
        let d2 = Segment::new(Point::new(0, 2), Point::new(2, 0));
        assert_eq!(
            segment_intersect(&d1, &d2),
            Intersection::Point(Point::new(1, 1))
        );
    }

    #[test]
    fn collinear_overlap_and_touching() {
        let a = Segment::new(Point::new(0, 0), Point::new(4, 0));
        let b = Segment::new(Point::new(2, 0), Point::new(6, 0));
        assert_eq!(
            segment_intersect(&a, &b),
            Intersection::Overlap(Segment::new(Point::new(2, 0), Point::new(4, 0)))
        );
        let c = Segment::new(Point::new(4, 0), Point::new(5, 0));
        assert_eq!(
            segment_intersect(&a, &c),
            Intersection::Point(Point::new(4, 0))
        );
        let d = Segment::new(Point::new(0, 1), Point::new(4, 1));
        assert_eq!(segment_intersect(&a, &d), Intersection::Empty);
    }

    #[test]
    fn locate_points() {
        let p = sq();
        assert_eq!(p.locate(&Point::new(1, 1)), Location::Interior);
        assert_eq!(p.locate(&Point::new(2, 1)), Location::Boundary);
        assert_eq!(p.locate(&Point::new(3, 1)), Location::Outside);
        assert!(polygon_subset(&p, &p));
    }

    #[test]
    fn degenerate_polygons_rejected() {
        let line = vec![Point::new(0, 0), Point::new(1, 1), Point::new(2, 2)];
        assert!(matches!(
            Polygon::new(line),
            Err(Error::DegeneratePolygon(_))
        ));
        let bowtie = vec![
            Point::new(0, 0),
            Point::new(2, 2),
            Point::new(2, 0),
            Point::new(0, 2),
        ];
        assert!(Polygon::new(bowtie).is_err());
    }

    #[test]
    fn interior_of_union_across_shared_edge() {
        let left = Polygon::new(vec![
            Point::new(0, 0),
            Point::new(1, 0),
            Point::new(1, 1),
            Point::new(0, 1),
        ])
        .unwrap();
        let right = Polygon::new(vec![
            Point::new(1, 0),
            Point::new(2, 0),
            Point::new(2, 1),
            Point::new(1, 1),
        ])
        .unwrap();
        let r = Region::from_shapes(vec![Shape::Polygon(left.clone())]);
        assert!(!r.interior_contains(&Point::from_q(Q::from_integer(1), Q::new(1, 2))));
        let u = Region::from_shapes(vec![Shape::Polygon(left), Shape::Polygon(right)]);
        assert!(u.interior_contains(&Point::from_q(Q::from_integer(1), Q::new(1, 2))));
        assert!(!u.interior_contains(&Point::new(1, 1)));
        assert!(u.contains_segment(&Segment::new(Point::new(0, 0), Point::new(2, 1))));
    }

    #[test]
    fn hull_classification() {
        assert!(matches!(Shape::hull(&[Point::new(1, 1)]), Shape::Point(_)));
        let s = Shape::hull(&[Point::new(0, 0), Point::new(2, 2), Point::new(1, 1)]);
        assert_eq!(
            s,
            Shape::Segment(Segment::new(Point::new(0, 0), Point::new(2, 2)))
        );
        assert_eq!(
            Shape::hull(sq().vertices()).area(),
            Q::from_integer(4)
        );
    }

    #[test]
    fn convex_overlap_area() {
        let a = sq();
        let b = Polygon::new(vec![
            Point::new(1, 1),
            Point::new(3, 1),
            Point::new(3, 3),
            Point::new(1, 3),
        ])
        .unwrap();
        assert_eq!(convex_intersection_area(&a, &b), Q::from_integer(1));
        let c = Polygon::new(vec![
            Point::new(2, 0),
            Point::new(4, 0),
            Point::new(4, 2),
            Point::new(2, 2),
        ])
        .unwrap();
        assert_eq!(convex_intersection_area(&a, &c), Q::zero());
    }

    proptest! {
        #[test]
        fn intersection_is_symmetric_and_on_both(
            a in (-5i64..5, -5i64..5), b in (-5i64..5, -5i64..5),
            c in (-5i64..5, -5i64..5), d in (-5i64..5, -5i64..5),
        ) {
            let s1 = Segment::new(Point::new(a.0, a.1), Point::new(b.0, b.1));
            let s2 = Segment::new(Point::new(c.0, c.1), Point::new(d.0, d.1));
            let x = segment_intersect(&s1, &s2);
            let y = segment_intersect(&s2, &s1);
            match (x, y) {
                (Intersection::Empty, Intersection::Empty) => {}
                (Intersection::Point(p), Intersection::Point(q)) => {
                    prop_assert_eq!(p, q);
                    prop_assert!(s1.contains(&p) && s2.contains(&p));
                }
                (Intersection::Overlap(o), Intersection::Overlap(_)) => {
                    prop_assert!(s1.contains(&o.midpoint()) && s2.contains(&o.midpoint()));
                }
                _ => prop_assert!(false, "asymmetric result"),
            }
        }

        #[test]
        fn ray_casting_matches_convex_orientation(x in -3i64..6, y in -3i64..6) {
            let p = sq();
            let pt = Point::new(x, y);
            let inside_by_orient = p.edges().iter().all(|e| orient(&e.a, &e.b, &pt) >= Q::zero());
            prop_assert_eq!(p.locate(&pt) != Location::Outside, inside_by_orient);
        }
    }
}
