//! Deterministic SVG rendering of diagrams.

use std::fmt::Write;

use num_traits::ToPrimitive;

use crate::construction::Diagram;
use crate::error::{Error, Result};
use crate::geometry::{Point, Shape};
use crate::lamps::{is_neon_tube, lamps, regions, Lamp, LampKind};

/// Which lamp's illuminated set to draw.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LitSelector {
    Index(usize),
    /// The first internal lamp.
    Internal,
    /// The first lamp on the upper left boundary.
    Left,
    Right,
}

impl std::str::FromStr for LitSelector {
    type Err = Error;

    fn from_str(s: &str) -> Result<LitSelector> {
        match s {
            "internal" => Ok(LitSelector::Internal),
            "left" => Ok(LitSelector::Left),
            "right" => Ok(LitSelector::Right),
            _ => s
                .parse()
                .map(LitSelector::Index)
                .map_err(|_| Error::UnknownLamp(s.to_string())),
        }
    }
}

impl LitSelector {
    pub fn resolve<'a>(&self, ls: &'a [Lamp]) -> Result<&'a Lamp> {
        let found = match self {
            LitSelector::Index(i) => ls.get(*i),
            LitSelector::Internal => ls.iter().find(|l| l.kind == LampKind::Internal),
            LitSelector::Left => ls.iter().find(|l| l.kind == LampKind::BoundaryLeft),
            LitSelector::Right => ls.iter().find(|l| l.kind == LampKind::BoundaryRight),
        };
        found.ok_or_else(|| Error::UnknownLamp(format!("{self:?}").to_lowercase()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RenderOptions {
    /// Pixels per unit of `u` and `v`.
    pub scale: f64,
    pub show_lit: Option<LitSelector>,
    pub show_feet: bool,
    pub thick_tubes: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            scale: 20.0,
            show_lit: None,
            show_feet: true,
            thick_tubes: true,
        }
    }
}

const MARGIN: f64 = 10.0;

pub fn render(d: &Diagram, opts: &RenderOptions) -> Result<String> {
    if !(opts.scale > 0.0) {
        return Err(Error::InternalError(format!(
            "scale must be positive, got {}",
            opts.scale
        )));
    }
    let (l, lay) = (d.lattice(), d.layout());
    let ls = lamps(d);
    let u_min = l.elements().map(|x| lay.u(x)).min().unwrap_or(0);
    let u_max = l.elements().map(|x| lay.u(x)).max().unwrap_or(0);
    let v_max = l.elements().map(|x| lay.v(x)).max().unwrap_or(0);
    let s = opts.scale;
    let px = |p: &Point| {
        let x = (p.x.to_f64().unwrap_or(0.0) - u_min as f64) * s + MARGIN;
        let y = (v_max as f64 - p.y.to_f64().unwrap_or(0.0)) * s + MARGIN;
        (x, y)
    };
    let width = (u_max - u_min) as f64 * s + 2.0 * MARGIN;
    let height = v_max as f64 * s + 2.0 * MARGIN;
    let mut out = String::new();
    let w = &mut out;
    let _ = writeln!(w, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.2}" height="{height:.2}" viewBox="0 0 {width:.2} {height:.2}">"#
    );
    if let Some(sel) = opts.show_lit {
        let lamp = sel.resolve(&ls)?;
        let rg = regions(d, lamp)?;
        let _ = writeln!(
            w,
            r##"<g id="lit" fill="#c8c8c8" stroke="#c8c8c8" stroke-width="1">"##
        );
        for piece in rg.lit.pieces() {
            match piece {
                Shape::Polygon(poly) => {
                    let pts: Vec<String> = poly
                        .vertices()
                        .iter()
                        .map(|p| {
                            let (x, y) = px(p);
                            format!("{x:.2},{y:.2}")
                        })
                        .collect();
                    let _ = writeln!(w, r#"<polygon points="{}"/>"#, pts.join(" "));
                }
                Shape::Segment(seg) => {
                    let ((x1, y1), (x2, y2)) = (px(&seg.a), px(&seg.b));
                    let _ = writeln!(
                        w,
                        r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}"/>"#
                    );
                }
                Shape::Point(_) => {}
            }
        }
        let _ = writeln!(w, "</g>");
    }
    let _ = writeln!(w, r#"<g id="edges" stroke="black">"#);
    for (a, b) in l.covers() {
        let ((x1, y1), (x2, y2)) = (px(&lay.point(a)), px(&lay.point(b)));
        let sw = if opts.thick_tubes && is_neon_tube(d, a, b) {
            3
        } else {
            1
        };
        let _ = writeln!(
            w,
            r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke-width="{sw}"/>"#
        );
    }
    let _ = writeln!(w, "</g>");
    let feet: Vec<usize> = ls.iter().map(|lamp| lamp.foot).collect();
    let _ = writeln!(w, r#"<g id="elements" stroke="black" stroke-width="1">"#);
    for x in l.elements() {
        let (cx, cy) = px(&lay.point(x));
        let foot = opts.show_feet && feet.contains(&x);
        let (r, fill) = if foot { (4, "black") } else { (3, "white") };
        let _ = writeln!(
            w,
            r#"<circle cx="{cx:.2}" cy="{cy:.2}" r="{r}" fill="{fill}"/>"#
        );
    }
    let _ = writeln!(w, "</g>");
    let _ = writeln!(w, "</svg>");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{build, grid, Recipe};

    #[test]
    fn grid_render_counts() {
        let svg = render(&grid(3, 3).unwrap(), &RenderOptions::default()).unwrap();
        assert_eq!(svg.matches("<circle").count(), 9);
        assert_eq!(svg.matches("<line").count(), 12);
        // Only the four upper-boundary edges are tubes.
        assert_eq!(svg.matches(r#"stroke-width="3""#).count(), 4);
    }

    #[test]
    fn s2_lit_hexagon() {
        let d = build(&Recipe::grid(2, 2).fork(0, 0, 2)).unwrap();
        let opts = RenderOptions {
            show_lit: Some(LitSelector::Internal),
            ..Default::default()
        };
        let a = render(&d, &opts).unwrap();
        assert!(a.contains(r#"<g id="lit""#));
        assert!(a.contains("<polygon"));
        assert_eq!(a, render(&d, &opts).unwrap());
    }

    #[test]
    fn bad_selector() {
        let d = grid(2, 2).unwrap();
        let opts = RenderOptions {
            show_lit: Some(LitSelector::Internal),
            ..Default::default()
        };
        assert!(matches!(render(&d, &opts), Err(Error::UnknownLamp(_))));
        assert!(matches!(
            "nope".parse::<LitSelector>(),
            Err(Error::UnknownLamp(_))
        ));
        assert_eq!("3".parse::<LitSelector>().unwrap(), LitSelector::Index(3));
    }
}
