//! Necessary conditions on `Jir(Con L)` and exhaustive searches for the
//! smallest distributive lattices violating them.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::poset::Poset;

/// Largest poset size accepted by [`min_failing`].
pub const MAX_SEARCH_SIZE: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    P2,
    BipartiteMaximal,
    Dioecious,
    TwoCover,
    ForbiddenMarriage,
    TwoPendantFourCrown,
}

pub const ALL_PROPERTIES: [Property; 6] = [
    Property::P2,
    Property::BipartiteMaximal,
    Property::Dioecious,
    Property::TwoCover,
    Property::ForbiddenMarriage,
    Property::TwoPendantFourCrown,
];

impl Property {
    pub fn name(self) -> &'static str {
        match self {
            Property::P2 => "p2",
            Property::BipartiteMaximal => "bipartite-maximal",
            Property::Dioecious => "dioecious",
            Property::TwoCover => "two-cover",
            Property::ForbiddenMarriage => "forbidden-marriage",
            Property::TwoPendantFourCrown => "two-pendant-four-crown",
        }
    }

    pub fn check(self, p: &Poset) -> bool {
        match self {
            Property::P2 => p2(p),
            Property::BipartiteMaximal => bipartite_maximal(p),
            Property::Dioecious => dioecious(p),
            Property::TwoCover => two_cover(p),
            Property::ForbiddenMarriage => forbidden_marriage(p),
            Property::TwoPendantFourCrown => two_pendant_four_crown(p),
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The lattice of down-sets of `p`, labelled by member lists.
pub fn downset_lattice(p: &Poset) -> FiniteLattice {
    let sets = p.down_sets();
    let index: HashMap<&BitSet, usize> = sets.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut covers = Vec::new();
    for (i, s) in sets.iter().enumerate() {
        for x in 0..p.len() {
            if s.contains(x) {
                continue;
            }
            let mut t = s.clone();
            t.insert(x);
            if let Some(&j) = index.get(&t) {
                covers.push((i, j));
            }
        }
    }
    let labels = sets
        .iter()
        .map(|s| {
            format!(
                "{{{}}}",
                s.iter().map(|x| p.name(x)).collect::<Vec<_>>().join(",")
            )
        })
        .collect();
    FiniteLattice::from_covers(sets.len(), &covers)
        .expect("down-sets form a lattice")
        .with_labels(labels)
}

/// The join-irreducibles of a finite lattice as a poset.
pub fn jir_poset(l: &FiniteLattice) -> Poset {
    let jir: Vec<usize> = l
        .elements()
        .filter(|&x| l.lower_covers(x).len() == 1)
        .collect();
    let pairs: Vec<(usize, usize)> = (0..jir.len())
        .flat_map(|i| (0..jir.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j && l.leq(jir[i], jir[j]))
        .collect();
    let names = jir.iter().map(|&x| l.label(x)).collect();
    Poset::named_from_relation(names, pairs).expect("suborder of a lattice")
}

/// At least two maximal elements.
pub fn p2(p: &Poset) -> bool {
    p.maxima().len() >= 2
}

/// The maxima split into two nonempty classes so that two distinct maxima
/// with a common lower cover always lie in different classes.
pub fn bipartite_maximal(p: &Poset) -> bool {
    let max = p.maxima();
    if max.len() < 2 {
        return false;
    }
    let pos: HashMap<usize, usize> = max.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let mut adj = vec![Vec::new(); max.len()];
    for x in 0..p.len() {
        let ups: Vec<usize> = p
            .upper_covers(x)
            .iter()
            .filter_map(|y| pos.get(y).copied())
            .collect();
        for &a in &ups {
            for &b in &ups {
                if a != b {
                    adj[a].push(b);
                }
            }
        }
    }
    // Two-colour each component; with at least two maxima both colours can
    // be made nonempty.
    let mut colour = vec![None; max.len()];
    for s in 0..max.len() {
        if colour[s].is_some() {
            continue;
        }
        colour[s] = Some(false);
        let mut stack = vec![s];
        while let Some(a) = stack.pop() {
            let c = colour[a].expect("coloured");
            for &b in &adj[a] {
                match colour[b] {
                    None => {
                        colour[b] = Some(!c);
                        stack.push(b);
                    }
                    Some(cb) if cb == c => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}

/// Every element covered by a maximal element `y` has another cover.
pub fn dioecious(p: &Poset) -> bool {
    let max = p.maxima();
    (0..p.len()).all(|x| {
        let ups = p.upper_covers(x);
        !ups.iter().any(|y| max.contains(y)) || ups.len() >= 2
    })
}

/// Every element has at most two covers.
pub fn two_cover(p: &Poset) -> bool {
    (0..p.len()).all(|x| p.upper_covers(x).len() <= 2)
}

/// No two distinct lower covers of a maximal element share a lower cover.
pub fn forbidden_marriage(p: &Poset) -> bool {
    forbidden_marriage_witness(p).is_none()
}

/// `(x, y, z, p)` with `x ≠ y`, `x, y ≺ z` maximal and `p ≺ x, y`.
pub fn forbidden_marriage_witness(p: &Poset) -> Option<(usize, usize, usize, usize)> {
    for z in p.maxima() {
        let lows = p.lower_covers(z);
        for (i, &x) in lows.iter().enumerate() {
            for &y in &lows[i + 1..] {
                if let Some(&q) = p
                    .lower_covers(x)
                    .iter()
                    .find(|q| p.lower_covers(y).contains(q))
                {
                    return Some((x, y, z, q));
                }
            }
        }
    }
    None
}

/// The two-pendant four-crown: tops `a, b, c, d`, middles under consecutive
/// tops, and pendants `z` under `m_ab, m_cd` and `w` under `m_bc, m_da`.
pub fn two_pendant_four_crown_poset() -> Poset {
    let names = ["a", "b", "c", "d", "m_ab", "m_bc", "m_cd", "m_da", "z", "w"];
    let covers = [
        (4, 0),
        (4, 1),
        (5, 1),
        (5, 2),
        (6, 2),
        (6, 3),
        (7, 3),
        (7, 0),
        (8, 4),
        (8, 6),
        (9, 5),
        (9, 7),
    ];
    Poset::named_from_relation(names.iter().map(|s| s.to_string()).collect(), covers)
        .expect("the crown is acyclic")
}

/// An injective map of `small` into `big` that preserves and reflects both
/// order and covers and sends maxima to maxima.
pub fn cover_preserving_embedding(small: &Poset, big: &Poset) -> Option<Vec<usize>> {
    let n = small.len();
    let big_max: Vec<bool> = (0..big.len())
        .map(|y| big.upper_covers(y).is_empty())
        .collect();
    let small_max: Vec<bool> = (0..n).map(|x| small.upper_covers(x).is_empty()).collect();
    // Elements with many neighbours first, so failures surface early.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| {
        std::cmp::Reverse(small.upper_covers(x).len() + small.lower_covers(x).len())
    });
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; big.len()];
    #[allow(clippy::too_many_arguments)]
    fn go(
        k: usize,
        order: &[usize],
        small: &Poset,
        big: &Poset,
        small_max: &[bool],
        big_max: &[bool],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let x = order[k];
        for y in 0..big.len() {
            if used[y] || (small_max[x] && !big_max[y]) {
                continue;
            }
            let ok = order[..k].iter().all(|&w| {
                let v = map[w];
                small.leq(x, w) == big.leq(y, v)
                    && small.leq(w, x) == big.leq(v, y)
                    && small.is_cover(x, w) == big.is_cover(y, v)
                    && small.is_cover(w, x) == big.is_cover(v, y)
            });
            if !ok {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if go(k + 1, order, small, big, small_max, big_max, map, used) {
                return true;
            }
            used[y] = false;
        }
        map[x] = usize::MAX;
        false
    }
    go(
        0, &order, small, big, &small_max, &big_max, &mut map, &mut used,
    )
    .then_some(map)
}

/// No cover-preserving copy of the two-pendant four-crown with its four
/// maxima maximal.
pub fn two_pendant_four_crown(p: &Poset) -> bool {
    p.len() < 10 || cover_preserving_embedding(&two_pendant_four_crown_poset(), p).is_none()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub results: Vec<(Property, bool)>,
}

impl PropertyReport {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|&(_, ok)| ok)
    }

    pub fn failures(&self) -> Vec<Property> {
        self.results
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|&(p, _)| p)
            .collect()
    }
}

pub fn check_all(p: &Poset) -> PropertyReport {
    PropertyReport {
        results: ALL_PROPERTIES.iter().map(|&q| (q, q.check(p))).collect(),
    }
}

/// All naturally labelled posets on `n` elements: `i < j` only if `i < j` as
/// integers. Every finite poset is isomorphic to at least one of them.
pub fn natural_posets(n: usize) -> Vec<Poset> {
    let mut out = Vec::new();
    let mut downs: Vec<BitSet> = Vec::new();
    extend_posets(n, &mut downs, &mut out);
    out
}

fn extend_posets(n: usize, downs: &mut Vec<BitSet>, out: &mut Vec<Poset>) {
    let k = downs.len();
    if k == n {
        let pairs: Vec<(usize, usize)> = downs
            .iter()
            .enumerate()
            .flat_map(|(j, d)| d.iter().map(move |i| (i, j)))
            .collect();
        out.push(Poset::from_relation(n, pairs).expect("naturally labelled"));
        return;
    }
    // The strict down-set of the new element k is any down-set of 0..k.
    let current = Poset::from_relation(
        k,
        downs
            .iter()
            .enumerate()
            .flat_map(|(j, d)| d.iter().map(move |i| (i, j)))
            .collect::<Vec<_>>(),
    )
    .expect("naturally labelled");
    for d in current.down_sets() {
        let mut padded = BitSet::new(n);
        for i in d.iter() {
            padded.insert(i);
        }
        downs.push(padded);
        extend_posets(n, downs, out);
        downs.pop();
    }
}

#[derive(Clone, Debug)]
pub struct MinFailure {
    pub property: Property,
    /// Smallest down-set lattice size among failing posets.
    pub lattice_size: u64,
    pub witness: Poset,
}

/// For each property, the smallest `|downset_lattice(P)|` over nonempty
/// posets `P` with at most `bound` elements failing it.
pub fn min_failing(bound: usize) -> Result<Vec<(Property, Option<MinFailure>)>> {
    if bound > MAX_SEARCH_SIZE {
        return Err(Error::BoundTooLarge(bound, MAX_SEARCH_SIZE));
    }
    let posets: Vec<Poset> = (1..=bound).flat_map(natural_posets).collect();
    let sizes: Vec<u64> = posets.par_iter().map(Poset::count_down_sets).collect();
    Ok(ALL_PROPERTIES
        .iter()
        .map(|&prop| {
            let best = posets
                .par_iter()
                .zip(sizes.par_iter())
                .enumerate()
                .filter(|(_, (p, _))| !prop.check(p))
                .min_by_key(|&(i, (_, &s))| (s, i))
                .map(|(_, (p, &s))| MinFailure {
                    property: prop,
                    lattice_size: s,
                    witness: p.clone(),
                });
            (prop, best)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn named(names: &[&str], covers: &[(usize, usize)]) -> Poset {
        Poset::named_from_relation(
            names.iter().map(|s| s.to_string()).collect(),
            covers.iter().copied(),
        )
        .unwrap()
    }

    #[test]
    fn downset_lattice_sizes() {
        let anti = Poset::from_relation(4, []).unwrap();
        assert_eq!(downset_lattice(&anti).len(), 16);
        let chain = Poset::from_relation(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(downset_lattice(&chain).len(), 4);
        assert_eq!(downset_lattice(&two_pendant_four_crown_poset()).len(), 56);
    }

    #[test]
    fn birkhoff_round_trip() {
        for n in 1..=4 {
            for p in natural_posets(n) {
                let d = downset_lattice(&p);
                assert!(d.is_distributive());
                assert!(jir_poset(&d).is_isomorphic(&p));
            }
        }
    }

    #[test]
    fn natural_poset_counts() {
        // Naturally labelled posets: 1, 2, 7, 40, 357.
        let counts: Vec<usize> = (1..=5).map(|n| natural_posets(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 7, 40, 357]);
    }

    #[test]
    fn marriage_diamond_fails() {
        let p = named(&["p", "x", "y", "z"], &[(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert!(!forbidden_marriage(&p));
        assert_eq!(downset_lattice(&p).len(), 6);
    }

    #[test]
    fn crown_embeds_in_itself() {
        let r = two_pendant_four_crown_poset();
        assert!(!two_pendant_four_crown(&r));
        let report = check_all(&r);
        assert_eq!(report.failures(), vec![Property::TwoPendantFourCrown]);
        let shuffled = r.permuted(&[9, 3, 7, 1, 5, 0, 2, 8, 6, 4]);
        assert!(!two_pendant_four_crown(&shuffled));
    }

    #[test]
    fn two_element_antichain_passes_everything() {
        let p = Poset::from_relation(2, []).unwrap();
        assert!(check_all(&p).all_pass());
        assert!(!p2(&Poset::from_relation(1, []).unwrap()));
    }

    #[test]
    fn bound_is_enforced() {
        assert!(matches!(min_failing(7), Err(Error::BoundTooLarge(7, 6))));
    }
}
