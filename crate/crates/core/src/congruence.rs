//! Brute-force congruences of finite lattices.

use std::collections::{HashMap, HashSet, VecDeque};

use petgraph::unionfind::UnionFind;
use rustc_hash::FxHashSet;

use crate::lamps::{
    lamp_poset, relation, relation_matrix, LampContext, RelationKind, ALL_RELATIONS,
};
use crate::lattice::{ElemId, FiniteLattice};
use crate::poset::Poset;

/// A lattice congruence as a partition; `rep[x]` is the least element of the
/// block of `x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    rep: Vec<ElemId>,
}

impl Congruence {
    pub fn identity(n: usize) -> Congruence {
        Congruence {
            rep: (0..n).collect(),
        }
    }

    pub fn total(n: usize) -> Congruence {
        Congruence { rep: vec![0; n] }
    }

    fn from_union_find(uf: &UnionFind<usize>, n: usize) -> Congruence {
        let mut least: HashMap<usize, ElemId> = HashMap::new();
        let mut rep = Vec::with_capacity(n);
        for x in 0..n {
            rep.push(*least.entry(uf.find(x)).or_insert(x));
        }
        Congruence { rep }
    }

    pub fn len(&self) -> usize {
        self.rep.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rep.is_empty()
    }

    pub fn rep(&self, x: ElemId) -> ElemId {
        self.rep[x]
    }

    pub fn related(&self, a: ElemId, b: ElemId) -> bool {
        self.rep[a] == self.rep[b]
    }

    pub fn block_count(&self) -> usize {
        self.rep
            .iter()
            .enumerate()
            .filter(|&(x, &r)| x == r)
            .count()
    }

    pub fn blocks(&self) -> Vec<Vec<ElemId>> {
        let mut map: HashMap<ElemId, Vec<ElemId>> = HashMap::new();
        for (x, &r) in self.rep.iter().enumerate() {
            map.entry(r).or_default().push(x);
        }
        let mut out: Vec<Vec<ElemId>> = map.into_values().collect();
        out.sort();
        out
    }

    /// Refinement order.
    pub fn leq(&self, other: &Congruence) -> bool {
        (0..self.len()).all(|x| other.rep[x] == other.rep[self.rep[x]])
    }

    /// Join in the lattice of equivalences; for congruences of a lattice this
    /// is again a congruence.
    pub fn join(&self, other: &Congruence) -> Congruence {
        let n = self.len();
        let mut uf = UnionFind::new(n);
        for x in 0..n {
            uf.union(x, self.rep[x]);
            uf.union(x, other.rep[x]);
        }
        Congruence::from_union_find(&uf, n)
    }

    /// Whether the partition is compatible with both lattice operations.
    pub fn is_compatible(&self, l: &FiniteLattice) -> bool {
        let n = self.len();
        (0..n).all(|x| {
            let y = self.rep[x];
            x == y
                || (0..n).all(|z| {
                    self.related(l.meet(x, z), l.meet(y, z))
                        && self.related(l.join(x, z), l.join(y, z))
                })
        })
    }
}

/// `con(a, b)`: close the pair under translations by meets and joins.
pub fn principal_congruence(l: &FiniteLattice, a: ElemId, b: ElemId) -> Congruence {
    principal_congruence_ordered(l, a, b, &(0..l.len()).collect::<Vec<_>>())
}

/// As [`principal_congruence`], visiting translating elements in `order`.
pub fn principal_congruence_ordered(
    l: &FiniteLattice,
    a: ElemId,
    b: ElemId,
    order: &[ElemId],
) -> Congruence {
    let n = l.len();
    let mut uf = UnionFind::new(n);
    let mut queue = VecDeque::new();
    if uf.union(a, b) {
        queue.push_back((a, b));
    }
    // Translating the generating pairs suffices: a chain of generators
    // translates to a chain of translated generators.
    while let Some((x, y)) = queue.pop_front() {
        for &z in order {
            for (p, q) in [(l.meet(x, z), l.meet(y, z)), (l.join(x, z), l.join(y, z))] {
                if uf.union(p, q) {
                    queue.push_back((p, q));
                }
            }
        }
    }
    Congruence::from_union_find(&uf, n)
}

/// Distinct congruences generated by single covering pairs, each with one
/// generating cover.
pub fn edge_congruences(l: &FiniteLattice) -> Vec<(Congruence, (ElemId, ElemId))> {
    let mut seen: HashMap<Congruence, (ElemId, ElemId)> = HashMap::new();
    for (a, b) in l.covers() {
        seen.entry(principal_congruence(l, a, b)).or_insert((a, b));
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort();
    out
}

/// All congruences, as joins of edge congruences, sorted.
pub fn con_lattice(l: &FiniteLattice) -> Vec<Congruence> {
    let gens: Vec<Congruence> = edge_congruences(l).into_iter().map(|(c, _)| c).collect();
    let start = Congruence::identity(l.len());
    let mut seen: HashSet<Congruence> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(c) = queue.pop_front() {
        for g in &gens {
            if g.leq(&c) {
                continue;
            }
            let j = c.join(g);
            if seen.insert(j.clone()) {
                queue.push_back(j);
            }
        }
    }
    let mut out: Vec<Congruence> = seen.into_iter().collect();
    out.sort();
    out
}

/// `|Con L|`, by the same join closure as [`con_lattice`] on compact
/// partitions, without materialising the list.
pub fn con_count(l: &FiniteLattice) -> usize {
    let n = l.len();
    if n > u16::MAX as usize {
        return con_lattice(l).len();
    }
    let gens: Vec<Vec<u16>> = edge_congruences(l)
        .into_iter()
        .map(|(c, _)| c.rep.iter().map(|&x| x as u16).collect())
        .collect();
    let start: Vec<u16> = (0..n as u16).collect();
    let mut seen: FxHashSet<Vec<u16>> = FxHashSet::default();
    seen.insert(start.clone());
    let mut stack = vec![start];
    let mut parent = vec![0u16; n];
    while let Some(c) = stack.pop() {
        for g in &gens {
            if (0..n).all(|x| c[x] == c[g[x] as usize]) {
                continue;
            }
            parent.copy_from_slice(&c);
            for x in 0..n {
                let (a, b) = (find(&mut parent, x as u16), find(&mut parent, g[x]));
                if a != b {
                    parent[a.max(b) as usize] = a.min(b);
                }
            }
            let j: Vec<u16> = (0..n).map(|x| find(&mut parent, x as u16)).collect();
            if !seen.contains(&j) {
                seen.insert(j.clone());
                stack.push(j);
            }
        }
    }
    seen.len()
}

// Roots are block minima: unions always hang the larger root below the smaller.
fn find(parent: &mut [u16], mut x: u16) -> u16 {
    while parent[x as usize] != x {
        let up = parent[parent[x as usize] as usize];
        parent[x as usize] = up;
        x = up;
    }
    x
}

/// Join-irreducible congruences ordered by refinement.
#[derive(Clone, Debug)]
pub struct JirCon {
    pub members: Vec<Congruence>,
    /// A covering pair generating each member.
    pub generators: Vec<(ElemId, ElemId)>,
    pub poset: Poset,
}

/// Every join-irreducible congruence of a finite lattice is `con(a, b)` for a
/// cover `a ≺ b`, and every such congruence is join-irreducible.
pub fn jir_con(l: &FiniteLattice) -> JirCon {
    let (members, generators): (Vec<_>, Vec<_>) = edge_congruences(l).into_iter().unzip();
    let n = members.len();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && members[i].leq(&members[j]) {
                pairs.push((i, j));
            }
        }
    }
    let names = generators
        .iter()
        .map(|(a, b)| format!("con({a},{b})"))
        .collect();
    let poset = Poset::named_from_relation(names, pairs).expect("refinement is antisymmetric");
    JirCon {
        members,
        generators,
        poset,
    }
}

/// Join-irreducibles of an explicit list of congruences closed under joins:
/// members that are not the join of the members strictly below them.
pub fn join_irreducibles_of(cons: &[Congruence]) -> Vec<usize> {
    let n = cons.first().map_or(0, Congruence::len);
    let bottom = Congruence::identity(n);
    (0..cons.len())
        .filter(|&i| {
            if cons[i] == bottom {
                return false;
            }
            let below = cons
                .iter()
                .filter(|c| *c != &cons[i] && c.leq(&cons[i]))
                .fold(bottom.clone(), |acc, c| acc.join(c));
            below != cons[i]
        })
        .collect()
}

/// Outcome of comparing the lamp poset with `Jir(Con L)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MainLemmaReport {
    pub lamp_count: usize,
    pub jir_count: usize,
    /// Pairs `(kind, i, j)` where a relation disagrees with the algebraic one.
    pub relation_mismatches: Vec<(RelationKind, usize, usize)>,
    pub antisymmetric: bool,
    /// `φ: I ↦ con(foot I, Peak I)` is a bijection onto `Jir(Con L)`.
    pub phi_bijective: bool,
    pub phi_order_iso: bool,
    pub covers_in_alg: bool,
    pub diff: Vec<String>,
}

impl MainLemmaReport {
    pub fn relations_agree(&self) -> bool {
        self.relation_mismatches.is_empty()
    }

    /// Everything except the eight-way agreement.
    pub fn order_part_passes(&self) -> bool {
        self.antisymmetric && self.phi_bijective && self.phi_order_iso && self.covers_in_alg
    }

    pub fn passes(&self) -> bool {
        self.relations_agree() && self.order_part_passes()
    }
}

/// Compare a poset on lamps with `Jir(Con L)` through `φ`.
pub fn compare_with_jir(
    ctx: &LampContext,
    poset: &Poset,
    jc: &JirCon,
    report: &mut MainLemmaReport,
) {
    let l = ctx.diagram.lattice();
    let index: HashMap<&Congruence, usize> =
        jc.members.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut image = Vec::new();
    for (k, lamp) in ctx.lamps.iter().enumerate() {
        match index.get(&principal_congruence(l, lamp.foot, lamp.peak)) {
            Some(&i) => image.push(i),
            None => {
                report
                    .diff
                    .push(format!("lamp {k}: con(foot, peak) is not join-irreducible"));
                report.phi_bijective = false;
                return;
            }
        }
    }
    let mut sorted = image.clone();
    sorted.sort();
    sorted.dedup();
    report.phi_bijective = sorted.len() == image.len() && image.len() == jc.members.len();
    if !report.phi_bijective {
        report.diff.push(format!(
            "phi image {image:?} over {} join-irreducibles",
            jc.members.len()
        ));
    }
    report.phi_order_iso = true;
    for i in 0..ctx.len() {
        for j in 0..ctx.len() {
            let a = poset.leq(i, j);
            let b = jc.poset.leq(image[i], image[j]);
            if a != b {
                report.phi_order_iso = false;
                report.diff.push(format!(
                    "lamps {i} <= {j}: poset says {a}, congruences say {b}"
                ));
            }
        }
    }
}

/// Main Lemma verdict for one diagram.
pub fn check_main_lemma(ctx: &LampContext) -> MainLemmaReport {
    main_lemma_with(ctx, &jir_con(ctx.diagram.lattice()))
}

/// [`check_main_lemma`] against an already computed `Jir(Con L)`.
pub fn main_lemma_with(ctx: &LampContext, jc: &JirCon) -> MainLemmaReport {
    let n = ctx.len();
    let mut report = MainLemmaReport {
        lamp_count: n,
        ..Default::default()
    };
    let alg = relation_matrix(ctx, RelationKind::Alg);
    for kind in ALL_RELATIONS {
        if kind == RelationKind::Alg {
            continue;
        }
        for i in 0..n {
            for j in 0..n {
                if relation(ctx, kind, i, j) != alg[i][j] {
                    report.relation_mismatches.push((kind, i, j));
                }
            }
        }
    }
    report.jir_count = jc.members.len();
    let poset = match lamp_poset(ctx) {
        Ok(p) => p,
        Err(e) => {
            report.diff.push(e.to_string());
            return report;
        }
    };
    report.antisymmetric = true;
    report.covers_in_alg = poset.covers().all(|(i, j)| alg[i][j]);
    compare_with_jir(ctx, &poset, jc, &mut report);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{build, grid, Recipe};
    use crate::lattice::build_lattice;

    fn chain(k: usize) -> FiniteLattice {
        build_lattice(k, &(1..k).map(|i| (i - 1, i)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn trivial_congruences() {
        let l = chain(4);
        assert_eq!(principal_congruence(&l, 2, 2), Congruence::identity(4));
        assert_eq!(principal_congruence(&l, 0, 3), Congruence::total(4));
        assert_eq!(
            principal_congruence(&l, 1, 2).blocks(),
            vec![vec![0], vec![1, 2], vec![3]]
        );
    }

    #[test]
    fn chains_have_boolean_congruence_lattices() {
        for k in 1..=6 {
            let l = chain(k);
            assert_eq!(con_lattice(&l).len(), 1 << (k - 1));
            assert_eq!(con_count(&l), 1 << (k - 1));
            assert_eq!(jir_con(&l).members.len(), k - 1);
        }
    }

    #[test]
    fn compact_count_matches_list() {
        for r in crate::construction::enumerate(16, 2, 2) {
            let d = build(&r).unwrap();
            assert_eq!(
                con_count(d.lattice()),
                con_lattice(d.lattice()).len(),
                "{r}"
            );
        }
    }

    #[test]
    fn pentagon_congruences() {
        // 0 < a < b < 1, 0 < c < 1.
        let n5 = build_lattice(5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).unwrap();
        let cons = con_lattice(&n5);
        assert_eq!(cons.len(), 5);
        assert!(cons.iter().all(|c| c.is_compatible(&n5)));
        let jc = jir_con(&n5);
        assert_eq!(jc.members.len(), 3);
        assert_eq!(join_irreducibles_of(&cons).len(), 3);
    }

    #[test]
    fn s_n_lamps_match_congruences() {
        for n in 1..=3 {
            let d = build(&Recipe::grid(2, 2).fork(0, 0, n)).unwrap();
            let ctx = LampContext::new(&d).unwrap();
            let r = check_main_lemma(&ctx);
            assert!(r.passes(), "{r:?}");
            assert_eq!(r.jir_count, 3);
            let int = ctx.lamps.iter().find(|l| l.is_internal()).unwrap();
            let l = d.lattice();
            for &p in &int.tubes {
                assert_eq!(
                    principal_congruence(l, p, int.peak),
                    principal_congruence(l, int.foot, int.peak)
                );
            }
        }
    }

    #[test]
    fn corrupted_lamp_poset_is_caught() {
        let d = build(&Recipe::grid(2, 3).fork(0, 0, 1)).unwrap();
        let ctx = LampContext::new(&d).unwrap();
        let jc = jir_con(d.lattice());
        let antichain = Poset::from_relation(ctx.len(), []).unwrap();
        let mut report = MainLemmaReport::default();
        compare_with_jir(&ctx, &antichain, &jc, &mut report);
        assert!(report.phi_bijective);
        assert!(!report.phi_order_iso);
        assert!(!report.diff.is_empty());
    }

    #[test]
    fn grid_congruences_are_boolean() {
        let d = grid(3, 4).unwrap();
        assert_eq!(con_lattice(d.lattice()).len(), 1 << 5);
        assert!(jir_con(d.lattice()).poset.maxima().len() == 5);
    }

    #[test]
    fn m3_is_simple() {
        let m3 = build_lattice(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).unwrap();
        assert_eq!(con_lattice(&m3).len(), 2);
    }
}
