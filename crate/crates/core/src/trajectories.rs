//! Trajectories: classes of edges linked through opposite sides of 4-cells.

use std::collections::HashMap;

use petgraph::unionfind::UnionFind;

use crate::bitset::BitSet;
use crate::congruence::{principal_congruence, JirCon};
use crate::construction::{four_cells, Diagram};
use crate::lamps::{lamp_of_tube, LampContext};
use crate::lattice::ElemId;
use crate::poset::Poset;

pub type Edge = (ElemId, ElemId);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TrajectoryKind {
    Straight,
    Hat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trajectory {
    /// Sorted covering pairs `(lower, upper)`.
    pub edges: Vec<Edge>,
    /// The unique neon tube among the edges.
    pub top_edge: Edge,
    pub kind: TrajectoryKind,
    /// Index of the lamp containing the top edge.
    pub lamp: usize,
}

/// All trajectories, ordered by their smallest edge.
pub fn trajectories(ctx: &LampContext) -> Vec<Trajectory> {
    let d = &ctx.diagram;
    let l = d.lattice();
    let edges: Vec<Edge> = l.covers();
    let index: HashMap<Edge, usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut uf = UnionFind::new(edges.len());
    for c in four_cells(d) {
        uf.union(index[&(c.bottom, c.left)], index[&(c.right, c.top)]);
        uf.union(index[&(c.bottom, c.right)], index[&(c.left, c.top)]);
    }
    let mut classes: HashMap<usize, Vec<Edge>> = HashMap::new();
    for (i, &e) in edges.iter().enumerate() {
        classes.entry(uf.find(i)).or_default().push(e);
    }
    let mut out: Vec<Trajectory> = classes
        .into_values()
        .map(|mut es| {
            es.sort();
            let tubes: Vec<Edge> = es
                .iter()
                .copied()
                .filter(|&(p, _)| l.is_meet_irreducible(p))
                .collect();
            assert_eq!(tubes.len(), 1, "a trajectory has exactly one neon tube");
            let top_edge = tubes[0];
            let lamp = lamp_of_tube(&ctx.lamps, top_edge.0).expect("every tube is in a lamp");
            let kind = if ctx.lamps[lamp].is_internal() {
                TrajectoryKind::Hat
            } else {
                TrajectoryKind::Straight
            };
            Trajectory {
                edges: es,
                top_edge,
                kind,
                lamp,
            }
        })
        .collect();
    out.sort_by_key(|t| t.edges[0]);
    out
}

/// Whether the trajectory has an edge on the upper boundary `↑c_l ∪ ↑c_r`.
pub fn has_upper_boundary_edge(d: &Diagram, t: &Trajectory) -> bool {
    let (l, lay) = (d.lattice(), d.layout());
    t.edges
        .iter()
        .any(|&(p, _)| l.leq(lay.c_l(), p) || l.leq(lay.c_r(), p))
}

/// `(u, v) ∈ σ`: `1_{Top u} ≤ 1_{Top v}`, `0_{Top u} ≰ 0_{Top v}` and `u` is a hat.
pub fn sigma(d: &Diagram, u: &Trajectory, v: &Trajectory) -> bool {
    let l = d.lattice();
    u.kind == TrajectoryKind::Hat
        && l.leq(u.top_edge.1, v.top_edge.1)
        && !l.leq(u.top_edge.0, v.top_edge.0)
}

/// The quasiorder `τ` (reflexive-transitive closure of `σ`), its `Θ` blocks
/// and the quotient poset.
#[derive(Clone, Debug)]
pub struct TauQuotient {
    pub tau: Vec<BitSet>,
    /// `block[u]` is the Θ-class of trajectory `u`.
    pub block: Vec<usize>,
    pub blocks: Vec<Vec<usize>>,
    pub poset: Poset,
}

pub fn tau_quotient(d: &Diagram, ts: &[Trajectory]) -> TauQuotient {
    let n = ts.len();
    let mut tau: Vec<BitSet> = (0..n)
        .map(|u| {
            let mut row = BitSet::new(n);
            row.insert(u);
            for v in 0..n {
                if sigma(d, &ts[u], &ts[v]) {
                    row.insert(v);
                }
            }
            row
        })
        .collect();
    for k in 0..n {
        let row_k = tau[k].clone();
        for row in tau.iter_mut() {
            if row.contains(k) {
                row.union_with(&row_k);
            }
        }
    }
    let mut block = vec![usize::MAX; n];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for u in 0..n {
        if block[u] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = (u..n)
            .filter(|&v| tau[u].contains(v) && tau[v].contains(u))
            .collect();
        for &v in &members {
            block[v] = blocks.len();
        }
        blocks.push(members);
    }
    let mut pairs = Vec::new();
    for (b, members) in blocks.iter().enumerate() {
        for v in tau[members[0]].iter() {
            if block[v] != b {
                pairs.push((b, block[v]));
            }
        }
    }
    let poset =
        Poset::from_relation(blocks.len(), pairs).expect("quotient of a quasiorder is a poset");
    TauQuotient {
        tau,
        block,
        blocks,
        poset,
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QuotientReport {
    /// `u/Θ = v/Θ ⟺ Lmp u = Lmp v`, and every lamp has a trajectory.
    pub blocks_match_lamps: bool,
    /// `u/Θ ≤ v/Θ ⟺ Lmp u ≤ Lmp v`.
    pub order_matches: bool,
    /// `con(Top u) = con(Lmp u)` for every trajectory.
    pub con_matches: bool,
    /// The quotient is isomorphic to `Jir(Con L)`.
    pub iso_jir_con: bool,
    /// The quotient is isomorphic to the poset of join-irreducible elements
    /// of `L` itself.
    pub iso_jir_l: bool,
}

impl QuotientReport {
    pub fn passes(&self) -> bool {
        self.blocks_match_lamps && self.order_matches && self.con_matches && self.iso_jir_con
    }
}

pub fn check_quotient_iso(ctx: &LampContext, lamps: &Poset, jc: &JirCon) -> QuotientReport {
    let d = &ctx.diagram;
    let l = d.lattice();
    let ts = trajectories(ctx);
    let q = tau_quotient(d, &ts);
    let n = ts.len();
    let mut covered = vec![false; ctx.len()];
    for t in &ts {
        covered[t.lamp] = true;
    }
    let blocks_match_lamps = covered.iter().all(|&c| c)
        && (0..n).all(|u| (0..n).all(|v| (q.block[u] == q.block[v]) == (ts[u].lamp == ts[v].lamp)));
    let order_matches =
        (0..n).all(|u| (0..n).all(|v| q.tau[u].contains(v) == lamps.leq(ts[u].lamp, ts[v].lamp)));
    let con_matches = ts.iter().all(|t| {
        let lamp = &ctx.lamps[t.lamp];
        principal_congruence(l, t.top_edge.0, t.top_edge.1)
            == principal_congruence(l, lamp.foot, lamp.peak)
    });
    let jir: Vec<ElemId> = l
        .elements()
        .filter(|&x| l.lower_covers(x).len() == 1)
        .collect();
    let jir_pairs: Vec<(usize, usize)> = (0..jir.len())
        .flat_map(|i| (0..jir.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && l.leq(jir[i], jir[j]))
        .collect();
    let jir_l = Poset::from_relation(jir.len(), jir_pairs).expect("suborder of a lattice");
    QuotientReport {
        blocks_match_lamps,
        order_matches,
        con_matches,
        iso_jir_con: q.poset.is_isomorphic(&jc.poset),
        iso_jir_l: q.poset.is_isomorphic(&jir_l),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::jir_con;
    use crate::construction::{build, enumerate, grid, Recipe};
    use crate::lamps::lamp_poset;

    fn ctx(r: &Recipe) -> LampContext {
        LampContext::new(&build(r).unwrap()).unwrap()
    }

    #[test]
    fn grid_trajectories_are_straight() {
        let c = LampContext::new(&grid(3, 4).unwrap()).unwrap();
        let ts = trajectories(&c);
        assert_eq!(ts.len(), 5);
        assert!(ts.iter().all(|t| t.kind == TrajectoryKind::Straight));
        let q = tau_quotient(&c.diagram, &ts);
        assert_eq!(q.poset.maxima().len(), 5);
        let g33 = LampContext::new(&grid(3, 3).unwrap()).unwrap();
        let q = tau_quotient(&g33.diagram, &trajectories(&g33));
        assert_eq!((q.blocks.len(), q.poset.maxima().len()), (4, 4));
    }

    #[test]
    fn s1_hat_relates_to_both_straight() {
        let c = ctx(&Recipe::grid(2, 2).fork(0, 0, 1));
        let ts = trajectories(&c);
        assert_eq!(ts.len(), 3);
        let hat: Vec<_> = ts
            .iter()
            .filter(|t| t.kind == TrajectoryKind::Hat)
            .collect();
        assert_eq!(hat.len(), 1);
        for t in ts.iter().filter(|t| t.kind == TrajectoryKind::Straight) {
            assert!(sigma(&c.diagram, hat[0], t));
            assert!(!sigma(&c.diagram, t, hat[0]));
        }
    }

    #[test]
    fn s2_hats_share_a_block() {
        let c = ctx(&Recipe::grid(2, 2).fork(0, 0, 2));
        let ts = trajectories(&c);
        let q = tau_quotient(&c.diagram, &ts);
        assert_eq!(q.blocks.len(), 3);
        let jc = jir_con(c.diagram.lattice());
        let r = check_quotient_iso(&c, &lamp_poset(&c).unwrap(), &jc);
        assert!(r.passes(), "{r:?}");
    }

    #[test]
    fn straight_iff_upper_boundary_edge() {
        for r in enumerate(16, 2, 2) {
            let c = ctx(&r);
            let ts = trajectories(&c);
            let total: usize = ts.iter().map(|t| t.edges.len()).sum();
            assert_eq!(total, c.diagram.lattice().edge_count());
            for t in &ts {
                assert_eq!(
                    has_upper_boundary_edge(&c.diagram, t),
                    t.kind == TrajectoryKind::Straight
                );
            }
        }
    }
}
