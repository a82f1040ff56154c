//! Finite posets: closure of relations, covers, down-set counting and
//! isomorphism search.

use std::collections::HashMap;

use crate::bitset::BitSet;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Poset {
    names: Vec<String>,
    up: Vec<BitSet>,
    down: Vec<BitSet>,
    upper_covers: Vec<Vec<usize>>,
    lower_covers: Vec<Vec<usize>>,
}

impl Poset {
    /// Reflexive-transitive closure of `pairs` on `0..n`.
    ///
    /// Fails with `NotAntisymmetric` when the closure identifies two distinct
    /// elements.
    pub fn from_relation(
        n: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Poset> {
        let names = (0..n).map(|i| i.to_string()).collect();
        Self::named_from_relation(names, pairs)
    }

    pub fn named_from_relation(
        names: Vec<String>,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Poset> {
        let n = names.len();
        let mut up: Vec<BitSet> = (0..n)
            .map(|i| {
                let mut s = BitSet::new(n);
                s.insert(i);
                s
            })
            .collect();
        for (a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::BadElement { id: a.max(b), n });
            }
            up[a].insert(b);
        }
        // Warshall on bit rows.
        for k in 0..n {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        for a in 0..n {
            for b in up[a].iter() {
                if b != a && up[b].contains(a) {
                    return Err(Error::NotAntisymmetric(a.min(b), a.max(b)));
                }
            }
        }
        let mut down: Vec<BitSet> = (0..n).map(|_| BitSet::new(n)).collect();
        for (a, row) in up.iter().enumerate() {
            for b in row.iter() {
                down[b].insert(a);
            }
        }
        let mut upper_covers = vec![Vec::new(); n];
        let mut lower_covers = vec![Vec::new(); n];
        for a in 0..n {
            for b in up[a].iter() {
                if b == a {
                    continue;
                }
                // a < b is a cover iff no c with a < c < b.
                let between = up[a].intersection(&down[b]);
                if between.count() == 2 {
                    upper_covers[a].push(b);
                    lower_covers[b].push(a);
                }
            }
        }
        Ok(Poset {
            names,
            up,
            down,
            upper_covers,
            lower_covers,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn is_cover(&self, a: usize, b: usize) -> bool {
        self.upper_covers[a].contains(&b)
    }

    pub fn upper_covers(&self, a: usize) -> &[usize] {
        &self.upper_covers[a]
    }

    pub fn lower_covers(&self, a: usize) -> &[usize] {
        &self.lower_covers[a]
    }

    pub fn up_set(&self, a: usize) -> &BitSet {
        &self.up[a]
    }

    pub fn down_set(&self, a: usize) -> &BitSet {
        &self.down[a]
    }

    pub fn covers(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.upper_covers
            .iter()
            .enumerate()
            .flat_map(|(a, ups)| ups.iter().map(move |&b| (a, b)))
    }

    pub fn maxima(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| self.upper_covers[a].is_empty())
            .collect()
    }

    pub fn minima(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&a| self.lower_covers[a].is_empty())
            .collect()
    }

    /// Number of down-sets, the empty set included.
    pub fn count_down_sets(&self) -> u64 {
        let mut all = BitSet::new(self.len());
        for i in 0..self.len() {
            all.insert(i);
        }
        let mut memo = HashMap::new();
        self.count_down_sets_in(all, &mut memo)
    }

    // Down-sets of the subposet induced on `avail`.
    fn count_down_sets_in(&self, avail: BitSet, memo: &mut HashMap<BitSet, u64>) -> u64 {
        if avail.is_empty() {
            return 1;
        }
        if let Some(&c) = memo.get(&avail) {
            return c;
        }
        let m = avail
            .iter()
            .find(|&y| self.down[y].intersection(&avail).count() == 1)
            .expect("finite poset has a minimal element");
        // Down-sets avoiding m avoid all of its up-set; the others contain m
        // freely since m is minimal.
        let mut without = avail.clone();
        for y in self.up[m].iter() {
            without.remove(y);
        }
        let mut with = avail.clone();
        with.remove(m);
        let c = self.count_down_sets_in(without, memo) + self.count_down_sets_in(with, memo);
        memo.insert(avail, c);
        c
    }

    /// All down-sets as bit sets, in order of increasing size.
    pub fn down_sets(&self) -> Vec<BitSet> {
        let n = self.len();
        let mut out = vec![BitSet::new(n)];
        let mut seen: std::collections::HashSet<BitSet> = out.iter().cloned().collect();
        let mut frontier = out.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for d in &frontier {
                for x in 0..n {
                    if d.contains(x) {
                        continue;
                    }
                    let lower_in = self.lower_covers[x].iter().all(|&y| d.contains(y));
                    if lower_in {
                        let mut e = d.clone();
                        e.insert(x);
                        if seen.insert(e.clone()) {
                            next.push(e);
                        }
                    }
                }
            }
            next.sort();
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    /// An order isomorphism `self -> other`, if one exists.
    pub fn isomorphism(&self, other: &Poset) -> Option<Vec<usize>> {
        let n = self.len();
        if n != other.len() {
            return None;
        }
        let sig = |p: &Poset, a: usize| {
            (
                p.up[a].count(),
                p.down[a].count(),
                p.upper_covers[a].len(),
                p.lower_covers[a].len(),
            )
        };
        let sa: Vec<_> = (0..n).map(|a| sig(self, a)).collect();
        let sb: Vec<_> = (0..n).map(|a| sig(other, a)).collect();
        let mut ka = sa.clone();
        let mut kb = sb.clone();
        ka.sort();
        kb.sort();
        if ka != kb {
            return None;
        }
        // Assign the most constrained elements (small signature classes) first.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&a| (sa.iter().filter(|s| **s == sa[a]).count(), a));
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        #[allow(clippy::too_many_arguments)]
        fn go(
            i: usize,
            order: &[usize],
            a: &Poset,
            b: &Poset,
            sa: &[(usize, usize, usize, usize)],
            sb: &[(usize, usize, usize, usize)],
            map: &mut [usize],
            used: &mut [bool],
        ) -> bool {
            if i == order.len() {
                return true;
            }
            let x = order[i];
            for y in 0..b.len() {
                if used[y] || sa[x] != sb[y] {
                    continue;
                }
                let ok = order[..i].iter().all(|&z| {
                    let w = map[z];
                    a.leq(x, z) == b.leq(y, w) && a.leq(z, x) == b.leq(w, y)
                });
                if !ok {
                    continue;
                }
                map[x] = y;
                used[y] = true;
                if go(i + 1, order, a, b, sa, sb, map, used) {
                    return true;
                }
                used[y] = false;
                map[x] = usize::MAX;
            }
            false
        }
        let found = go(0, &order, self, other, &sa, &sb, &mut map, &mut used);
        found.then_some(map)
    }

    pub fn is_isomorphic(&self, other: &Poset) -> bool {
        self.isomorphism(other).is_some()
    }

    /// Relabel elements: element `i` of the result is element `perm[i]` of self.
    pub fn permuted(&self, perm: &[usize]) -> Poset {
        let mut inv = vec![0; perm.len()];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let names = perm.iter().map(|&p| self.names[p].clone()).collect();
        let pairs: Vec<(usize, usize)> = self.covers().map(|(a, b)| (inv[a], inv[b])).collect();
        Poset::named_from_relation(names, pairs).expect("relabelling preserves antisymmetry")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(k: usize) -> Poset {
        Poset::from_relation(k, (1..k).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn closure_and_covers() {
        let p = Poset::from_relation(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(p.leq(0, 2));
        assert!(p.is_cover(0, 1));
        assert!(!p.is_cover(0, 2));
        assert_eq!(p.maxima(), vec![2]);
    }

    #[test]
    fn cycle_is_rejected() {
        let err = Poset::from_relation(2, [(0, 1), (1, 0)]).unwrap_err();
        assert_eq!(err, Error::NotAntisymmetric(0, 1));
    }

    #[test]
    fn down_set_counts() {
        assert_eq!(chain(4).count_down_sets(), 5);
        let anti = Poset::from_relation(5, []).unwrap();
        assert_eq!(anti.count_down_sets(), 32);
        assert_eq!(anti.down_sets().len(), 32);
        // N-shaped poset: a<c, b<c, b<d.
        let n = Poset::from_relation(4, [(0, 2), (1, 2), (1, 3)]).unwrap();
        assert_eq!(n.count_down_sets(), n.down_sets().len() as u64);
    }

    #[test]
    fn isomorphism_of_relabelled_poset() {
        let n = Poset::from_relation(4, [(0, 2), (1, 2), (1, 3)]).unwrap();
        let m = n.permuted(&[3, 1, 0, 2]);
        let iso = n.isomorphism(&m).expect("isomorphic");
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(n.leq(a, b), m.leq(iso[a], iso[b]));
            }
        }
        assert!(!chain(4).is_isomorphic(&n));
    }
}
