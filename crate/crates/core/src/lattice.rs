//! Finite lattices given by their covering relation.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::geometry::{segment_intersect, Intersection, Layout};

pub type ElemId = usize;

/// An immutable finite lattice with dense meet and join tables.
#[derive(Clone, Debug)]
pub struct FiniteLattice {
    n: usize,
    upper: Vec<Vec<ElemId>>,
    lower: Vec<Vec<ElemId>>,
    up: Vec<BitSet>,
    down: Vec<BitSet>,
    meet: Vec<ElemId>,
    join: Vec<ElemId>,
    bottom: ElemId,
    top: ElemId,
    labels: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibleSets {
    pub jir: Vec<ElemId>,
    pub mir: Vec<ElemId>,
    pub doubly: Vec<ElemId>,
}

/// Independent structural verdicts; none of them short-circuits another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub semimodular: bool,
    pub slim: bool,
    pub planar: bool,
    pub rectangular: bool,
    pub at_most_two_covers: bool,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        self.semimodular && self.slim && self.planar && self.rectangular && self.at_most_two_covers
    }
}

/// Validate `covers` on `0..n` and build the lattice.
pub fn build_lattice(n: usize, covers: &[(ElemId, ElemId)]) -> Result<FiniteLattice> {
    FiniteLattice::from_covers(n, covers)
}

impl FiniteLattice {
    pub fn from_covers(n: usize, covers: &[(ElemId, ElemId)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoBounds("minimum"));
        }
        let mut succ = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for &(a, b) in covers {
            for id in [a, b] {
                if id >= n {
                    return Err(Error::BadElement { id, n });
                }
            }
            if a == b {
                return Err(Error::CycleDetected);
            }
            if !succ[a].contains(&b) {
                succ[a].push(b);
                indeg[b] += 1;
            }
        }
        // Kahn's algorithm gives a linear extension or exposes a cycle.
        let mut topo = Vec::with_capacity(n);
        let mut stack: Vec<ElemId> = (0..n).filter(|&i| indeg[i] == 0).collect();
        while let Some(x) = stack.pop() {
            topo.push(x);
            for &y in &succ[x] {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    stack.push(y);
                }
            }
        }
        if topo.len() != n {
            return Err(Error::CycleDetected);
        }
        let mut up: Vec<BitSet> = vec![BitSet::new(n); n];
        for &x in topo.iter().rev() {
            let mut row = BitSet::new(n);
            row.insert(x);
            for &y in &succ[x] {
                row.union_with(&up[y]);
            }
            up[x] = row;
        }
        let mut down: Vec<BitSet> = vec![BitSet::new(n); n];
        for (x, row) in up.iter().enumerate() {
            for y in row.iter() {
                down[y].insert(x);
            }
        }
        let bottom = (0..n)
            .find(|&x| up[x].count() == n)
            .ok_or(Error::NoBounds("minimum"))?;
        let top = (0..n)
            .find(|&x| down[x].count() == n)
            .ok_or(Error::NoBounds("maximum"))?;

        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let common_down = down[a].intersection(&down[b]);
                let m = common_down
                    .iter()
                    .max_by_key(|&x| down[x].count())
                    .expect("bottom is a common lower bound");
                if down[m].count() != common_down.count() {
                    return Err(Error::NotALattice { a, b, what: "meet" });
                }
                let common_up = up[a].intersection(&up[b]);
                let j = common_up
                    .iter()
                    .max_by_key(|&x| up[x].count())
                    .expect("top is a common upper bound");
                if up[j].count() != common_up.count() {
                    return Err(Error::NotALattice { a, b, what: "join" });
                }
                meet[a * n + b] = m;
                meet[b * n + a] = m;
                join[a * n + b] = j;
                join[b * n + a] = j;
            }
        }

        let mut upper = vec![Vec::new(); n];
        let mut lower = vec![Vec::new(); n];
        for a in 0..n {
            for b in up[a].iter() {
                if b != a && up[a].intersection(&down[b]).count() == 2 {
                    upper[a].push(b);
                    lower[b].push(a);
                }
            }
        }
        Ok(FiniteLattice {
            n,
            upper,
            lower,
            up,
            down,
            meet,
            join,
            bottom,
            top,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
        self
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, x: ElemId) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn elements(&self) -> std::ops::Range<ElemId> {
        0..self.n
    }

    pub fn bottom(&self) -> ElemId {
        self.bottom
    }

    pub fn top(&self) -> ElemId {
        self.top
    }

    #[inline]
    pub fn leq(&self, a: ElemId, b: ElemId) -> bool {
        self.up[a].contains(b)
    }

    #[inline]
    pub fn lt(&self, a: ElemId, b: ElemId) -> bool {
        a != b && self.leq(a, b)
    }

    #[inline]
    pub fn meet(&self, a: ElemId, b: ElemId) -> ElemId {
        self.meet[a * self.n + b]
    }

    #[inline]
    pub fn join(&self, a: ElemId, b: ElemId) -> ElemId {
        self.join[a * self.n + b]
    }

    pub fn meet_all(&self, xs: impl IntoIterator<Item = ElemId>) -> ElemId {
        xs.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn join_all(&self, xs: impl IntoIterator<Item = ElemId>) -> ElemId {
        xs.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn upper_covers(&self, x: ElemId) -> &[ElemId] {
        &self.upper[x]
    }

    pub fn lower_covers(&self, x: ElemId) -> &[ElemId] {
        &self.lower[x]
    }

    pub fn is_cover(&self, a: ElemId, b: ElemId) -> bool {
        self.upper[a].contains(&b)
    }

    /// The strict covering relation, as (lower, upper) pairs.
    pub fn covers(&self) -> Vec<(ElemId, ElemId)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for &b in &self.upper[a] {
                out.push((a, b));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.upper.iter().map(Vec::len).sum()
    }

    pub fn down_set(&self, x: ElemId) -> &BitSet {
        &self.down[x]
    }

    pub fn up_set(&self, x: ElemId) -> &BitSet {
        &self.up[x]
    }

    /// Elements of the interval `[a, b]`.
    pub fn interval(&self, a: ElemId, b: ElemId) -> Vec<ElemId> {
        self.up[a].intersection(&self.down[b]).iter().collect()
    }

    pub fn irreducibles(&self) -> IrreducibleSets {
        let jir: Vec<ElemId> = self
            .elements()
            .filter(|&x| self.lower[x].len() == 1)
            .collect();
        let mir: Vec<ElemId> = self
            .elements()
            .filter(|&x| self.upper[x].len() == 1)
            .collect();
        let doubly = jir.iter().copied().filter(|x| mir.contains(x)).collect();
        IrreducibleSets { jir, mir, doubly }
    }

    pub fn is_meet_irreducible(&self, x: ElemId) -> bool {
        self.upper[x].len() == 1
    }

    /// Cover form of upper semimodularity: a∧b ≺ a implies b ≺ a∨b.
    pub fn is_semimodular(&self) -> bool {
        for a in 0..self.n {
            for b in 0..self.n {
                if self.is_cover(self.meet(a, b), a) && !self.is_cover(b, self.join(a, b)) {
                    return false;
                }
            }
        }
        true
    }

    /// True iff the nonzero join-irreducibles are the union of two chains,
    /// i.e. contain no three pairwise incomparable elements.
    pub fn is_slim(&self) -> bool {
        let jir = self.irreducibles().jir;
        let inc = |a: ElemId, b: ElemId| !self.leq(a, b) && !self.leq(b, a);
        for (i, &a) in jir.iter().enumerate() {
            for (j, &b) in jir.iter().enumerate().skip(i + 1) {
                if !inc(a, b) {
                    continue;
                }
                if jir[j + 1..].iter().any(|&c| inc(a, c) && inc(b, c)) {
                    return false;
                }
            }
        }
        true
    }

    /// The two complementary doubly irreducible elements, if the lattice is
    /// rectangular in the order-theoretic sense (unordered).
    pub fn rectangular_corners(&self) -> Option<(ElemId, ElemId)> {
        let doubly = self.irreducibles().doubly;
        if self.n < 4 || doubly.len() != 2 {
            return None;
        }
        let (a, b) = (doubly[0], doubly[1]);
        (self.join(a, b) == self.top && self.meet(a, b) == self.bottom).then_some((a, b))
    }

    pub fn at_most_two_covers(&self) -> bool {
        self.elements()
            .filter(|&x| x != self.top)
            .all(|x| matches!(self.upper[x].len(), 1 | 2))
    }

    /// Checks distributivity of the sublattice on `elems`, which must be
    /// closed under meet and join (e.g. an ideal).
    pub fn is_distributive_on(&self, elems: &[ElemId]) -> bool {
        for &x in elems {
            for &y in elems {
                for &z in elems {
                    if self.meet(x, self.join(y, z)) != self.join(self.meet(x, y), self.meet(x, z))
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_distributive(&self) -> bool {
        let all: Vec<ElemId> = self.elements().collect();
        self.is_distributive_on(&all)
    }

    /// Relabel: new id of old element `x` is `perm[x]`.
    pub fn relabeled(&self, perm: &[ElemId]) -> FiniteLattice {
        let covers: Vec<_> = self
            .covers()
            .into_iter()
            .map(|(a, b)| (perm[a], perm[b]))
            .collect();
        let mut out =
            FiniteLattice::from_covers(self.n, &covers).expect("relabelling keeps lattice");
        if let Some(labels) = &self.labels {
            let mut l = vec![String::new(); self.n];
            for (x, name) in labels.iter().enumerate() {
                l[perm[x]] = name.clone();
            }
            out.labels = Some(l);
        }
        out
    }
}

/// Structural verdicts for a lattice drawn with `layout`.
pub fn validate_slim_rectangular(lattice: &FiniteLattice, layout: &Layout) -> ValidationReport {
    ValidationReport {
        semimodular: lattice.is_semimodular(),
        slim: lattice.is_slim(),
        planar: is_planar_drawing(lattice, layout),
        rectangular: lattice.rectangular_corners().is_some(),
        at_most_two_covers: lattice.at_most_two_covers(),
    }
}

/// The corners `(c_l, c_r)`, with `c_l` the one drawn further left.
pub fn corners(lattice: &FiniteLattice, layout: &Layout) -> Result<(ElemId, ElemId)> {
    let (a, b) = lattice.rectangular_corners().ok_or_else(|| {
        Error::NotRectangular("no complementary pair of doubly irreducibles".into())
    })?;
    Ok(if layout.u(a) < layout.u(b) {
        (a, b)
    } else {
        (b, a)
    })
}

/// The four boundary chains, each listed bottom to top.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryChains {
    pub lower_left: Vec<ElemId>,
    pub lower_right: Vec<ElemId>,
    pub upper_left: Vec<ElemId>,
    pub upper_right: Vec<ElemId>,
}

pub fn boundary_chains(lattice: &FiniteLattice, layout: &Layout) -> Result<BoundaryChains> {
    let (c_l, c_r) = corners(lattice, layout)?;
    let sorted = |set: &BitSet| {
        let mut v: Vec<ElemId> = set.iter().collect();
        v.sort_by_key(|&x| lattice.down_set(x).count());
        v
    };
    let chains = BoundaryChains {
        lower_left: sorted(lattice.down_set(c_l)),
        lower_right: sorted(lattice.down_set(c_r)),
        upper_left: sorted(lattice.up_set(c_l)),
        upper_right: sorted(lattice.up_set(c_r)),
    };
    let mut lower: Vec<ElemId> = chains
        .lower_left
        .iter()
        .chain(&chains.lower_right)
        .copied()
        .collect();
    lower.sort();
    lower.dedup();
    let mut jir0 = lattice.irreducibles().jir;
    jir0.push(lattice.bottom());
    jir0.sort();
    if lower != jir0 {
        return Err(Error::NotRectangular(
            "lower boundary differs from Jir L and 0".into(),
        ));
    }
    Ok(chains)
}

/// No two edges meet except at a common endpoint.
pub fn is_planar_drawing(lattice: &FiniteLattice, layout: &Layout) -> bool {
    let edges = lattice.covers();
    let segs: Vec<_> = edges.iter().map(|&(a, b)| layout.segment(a, b)).collect();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let shared: Vec<ElemId> = [edges[i].0, edges[i].1]
                .into_iter()
                .filter(|x| *x == edges[j].0 || *x == edges[j].1)
                .collect();
            match segment_intersect(&segs[i], &segs[j]) {
                Intersection::Empty => {}
                Intersection::Point(p) => {
                    if !shared.iter().any(|&x| layout.point(x) == p) {
                        return false;
                    }
                }
                Intersection::Overlap(_) => return false,
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b2() -> FiniteLattice {
        build_lattice(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn m3() -> FiniteLattice {
        build_lattice(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).unwrap()
    }

    #[test]
    fn two_element_chain() {
        let l = build_lattice(2, &[(0, 1)]).unwrap();
        assert_eq!(l.meet(0, 1), 0);
        assert_eq!(l.join(0, 1), 1);
        assert_eq!(l.irreducibles().jir, vec![1]);
    }

    #[test]
    fn boolean_square() {
        let l = b2();
        assert_eq!(l.len(), 4);
        let irr = l.irreducibles();
        assert_eq!(irr.jir, vec![1, 2]);
        assert_eq!(irr.mir, vec![1, 2]);
        assert_eq!(l.join(1, 2), 3);
        assert!(l.is_semimodular() && l.is_slim() && l.is_distributive());
        assert_eq!(l.rectangular_corners(), Some((1, 2)));
    }

    #[test]
    fn transitive_pairs_are_reduced() {
        let l = build_lattice(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(l.covers(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn missing_join_is_rejected() {
        // Bowtie-like order: 0 < a,b < c,d < 5 has no join for (a,b).
        let covers = [
            (0, 1),
            (0, 2),
            (1, 3),
            (2, 3),
            (1, 4),
            (2, 4),
            (3, 5),
            (4, 5),
        ];
        let err = build_lattice(6, &covers).unwrap_err();
        assert!(matches!(err, Error::NotALattice { what: "join", .. }));
    }

    #[test]
    fn missing_bounds_and_cycles() {
        assert_eq!(
            build_lattice(3, &[(0, 2), (1, 2)]).unwrap_err(),
            Error::NoBounds("minimum")
        );
        assert_eq!(
            build_lattice(2, &[(0, 1), (1, 0)]).unwrap_err(),
            Error::CycleDetected
        );
        assert_eq!(
            build_lattice(2, &[(0, 7)]).unwrap_err(),
            Error::BadElement { id: 7, n: 2 }
        );
    }

    #[test]
    fn m3_is_not_slim() {
        let l = m3();
        assert!(!l.is_slim());
        assert!(l.is_semimodular());
        assert!(l.rectangular_corners().is_none());
    }

    #[test]
    fn pentagon_is_not_semimodular() {
        // N5: 0 < a < b < 1, 0 < c < 1.
        let l = build_lattice(5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).unwrap();
        assert!(!l.is_semimodular());
        assert!(!l.is_distributive());
    }

    /// Independent pairwise bound search.
    fn brute_meet(l: &FiniteLattice, a: ElemId, b: ElemId) -> ElemId {
        let lbs: Vec<_> = l
            .elements()
            .filter(|&x| l.leq(x, a) && l.leq(x, b))
            .collect();
        *lbs.iter()
            .find(|&&m| lbs.iter().all(|&x| l.leq(x, m)))
            .unwrap()
    }

    #[test]
    fn tables_agree_with_bound_search() {
        for l in [b2(), m3()] {
            for a in l.elements() {
                for b in l.elements() {
                    assert_eq!(l.meet(a, b), brute_meet(&l, a, b));
                }
            }
        }
    }
}
