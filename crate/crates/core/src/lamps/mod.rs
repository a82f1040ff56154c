//! Lamps: neon tubes grouped by their common top, with feet and peaks.

mod regions;
mod relations;
mod toolkit;

pub use regions::{illuminated, interval_shape, regions, Illumination, LampRegions};
pub use relations::{
    lamp_poset, relation, relation_literal, relation_matrix, LampContext, RelationKind,
    ALL_RELATIONS,
};
pub use toolkit::{
    cov, floor_aligned, independent, left_of, lift, no_gap, separatory, separatory_mirrored,
    sufficiently_disjoint, BoundaryPath, GapReport,
};

use std::collections::BTreeMap;

use crate::construction::Diagram;
use crate::lattice::ElemId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LampKind {
    BoundaryLeft,
    BoundaryRight,
    Internal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lamp {
    pub foot: ElemId,
    pub peak: ElemId,
    /// Feet of the neon tubes, left to right.
    pub tubes: Vec<ElemId>,
    pub kind: LampKind,
}

impl Lamp {
    pub fn is_internal(&self) -> bool {
        self.kind == LampKind::Internal
    }

    pub fn is_boundary(&self) -> bool {
        !self.is_internal()
    }
}

/// Whether `[p, q]` is a neon tube: a cover with meet-irreducible bottom.
pub fn is_neon_tube(d: &Diagram, p: ElemId, q: ElemId) -> bool {
    let l = d.lattice();
    l.is_cover(p, q) && l.is_meet_irreducible(p)
}

/// All lamps, sorted by `(foot, peak)`.
pub fn lamps(d: &Diagram) -> Vec<Lamp> {
    let (l, lay) = (d.lattice(), d.layout());
    let (c_l, c_r) = (lay.c_l(), lay.c_r());
    let mut out = Vec::new();
    let mut internal: BTreeMap<ElemId, Vec<ElemId>> = BTreeMap::new();
    for p in l.elements() {
        if !l.is_meet_irreducible(p) {
            continue;
        }
        let q = l.upper_covers(p)[0];
        if l.leq(c_l, p) {
            out.push(Lamp {
                foot: p,
                peak: q,
                tubes: vec![p],
                kind: LampKind::BoundaryLeft,
            });
        } else if l.leq(c_r, p) {
            out.push(Lamp {
                foot: p,
                peak: q,
                tubes: vec![p],
                kind: LampKind::BoundaryRight,
            });
        } else {
            internal.entry(q).or_default().push(p);
        }
    }
    for (q, mut tubes) in internal {
        tubes.sort_by_key(|&p| lay.u(p));
        let foot = l.meet_all(tubes.iter().copied());
        out.push(Lamp {
            foot,
            peak: q,
            tubes,
            kind: LampKind::Internal,
        });
    }
    out.sort_by_key(|lamp| (lamp.foot, lamp.peak));
    out
}

/// Index of the lamp owning the neon tube with foot `p`.
pub fn lamp_of_tube(lamps: &[Lamp], p: ElemId) -> Option<usize> {
    lamps.iter().position(|lamp| lamp.tubes.contains(&p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{build, grid, Recipe};

    #[test]
    fn grid_lamps_are_boundary() {
        let g = grid(2, 4).unwrap();
        let ls = lamps(&g);
        assert_eq!(ls.len(), (2 - 1) + (4 - 1));
        assert!(ls.iter().all(Lamp::is_boundary));
    }

    #[test]
    fn s_n_has_three_lamps() {
        for n in 1..=4 {
            let d = build(&Recipe::grid(2, 2).fork(0, 0, n)).unwrap();
            let ls = lamps(&d);
            assert_eq!(ls.len(), 3);
            let top = d.lattice().top();
            assert!(ls.iter().all(|lamp| lamp.peak == top));
            let int: Vec<_> = ls.iter().filter(|l| l.is_internal()).collect();
            assert_eq!(int.len(), 1);
            assert_eq!(int[0].tubes.len(), n);
            assert_eq!(d.layout().lr(int[0].foot), (1, 1));
        }
    }

    #[test]
    fn every_meet_irreducible_edge_in_one_lamp() {
        let d = build(&Recipe::grid(3, 3).fork(0, 1, 2).fork(0, 0, 1)).unwrap();
        let ls = lamps(&d);
        for p in d
            .lattice()
            .elements()
            .filter(|&p| d.lattice().is_meet_irreducible(p))
        {
            assert_eq!(ls.iter().filter(|l| l.tubes.contains(&p)).count(), 1);
        }
        let mut peaks: Vec<_> = ls
            .iter()
            .filter(|l| l.is_internal())
            .map(|l| l.peak)
            .collect();
        let n = peaks.len();
        peaks.sort();
        peaks.dedup();
        assert_eq!(peaks.len(), n);
    }
}
