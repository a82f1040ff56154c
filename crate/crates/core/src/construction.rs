//! Grids, 4-cells, multifork extensions, recipes and recipe enumeration.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{check_beta, Layout, Slope};
use crate::lattice::{validate_slim_rectangular, ElemId, FiniteLattice, ValidationReport};

/// A slim rectangular lattice together with its grid-embedding layout.
#[derive(Clone, Debug)]
pub struct Diagram {
    lattice: FiniteLattice,
    layout: Layout,
}

impl Diagram {
    /// Pair a lattice with the layout determined by the chosen corners and
    /// renumber elements canonically by `(v, u)`. Returns the diagram and the
    /// map from input ids to canonical ids.
    pub fn from_lattice(
        lattice: FiniteLattice,
        c_l: ElemId,
        c_r: ElemId,
    ) -> Result<(Diagram, Vec<ElemId>)> {
        let layout = Layout::new(&lattice, c_l, c_r)?;
        let perm = layout.canonical_order();
        let diagram = Diagram {
            lattice: lattice.relabeled(&perm),
            layout: layout.relabeled(&perm),
        };
        Ok((diagram, perm))
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice.is_empty()
    }

    pub fn validate(&self) -> ValidationReport {
        validate_slim_rectangular(&self.lattice, &self.layout)
    }

    pub fn slope(&self, p: ElemId, q: ElemId) -> Slope {
        self.layout.classify(p, q)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellAddress {
    pub l: usize,
    pub r: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FourCell {
    pub bottom: ElemId,
    pub left: ElemId,
    pub right: ElemId,
    pub top: ElemId,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Step {
    pub cell: CellAddress,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Recipe {
    pub grid_a: usize,
    pub grid_b: usize,
    pub steps: Vec<Step>,
}

impl Recipe {
    pub fn grid(a: usize, b: usize) -> Recipe {
        Recipe {
            grid_a: a,
            grid_b: b,
            steps: Vec::new(),
        }
    }

    pub fn fork(mut self, l: usize, r: usize, rank: usize) -> Recipe {
        self.steps.push(Step {
            cell: CellAddress { l, r },
            rank,
        });
        self
    }

    /// Element count of the final lattice, computed without building it.
    pub fn predicted_size(&self) -> usize {
        let mut size = self.grid_a * self.grid_b;
        for s in &self.steps {
            size += fork_growth(s.cell, s.rank);
        }
        size
    }
}

/// Number of elements a multifork of rank `n` at `cell` adds: the triangle
/// plus `n` subdivision points on each edge of both propagation paths.
pub fn fork_growth(cell: CellAddress, n: usize) -> usize {
    n * (n + 1) / 2 + n * (cell.l + 1) + n * (cell.r + 1)
}

/// The grid `C_a x C_b`; the left lower boundary chain has `a` elements.
pub fn grid(a: usize, b: usize) -> Result<Diagram> {
    if a < 2 || b < 2 {
        return Err(Error::SingletonChain { a, b });
    }
    let id = |l: usize, r: usize| l * b + r;
    let mut covers = Vec::new();
    for l in 0..a {
        for r in 0..b {
            if l + 1 < a {
                covers.push((id(l, r), id(l + 1, r)));
            }
            if r + 1 < b {
                covers.push((id(l, r), id(l, r + 1)));
            }
        }
    }
    let lattice = FiniteLattice::from_covers(a * b, &covers)?;
    let (d, _) = Diagram::from_lattice(lattice, id(a - 1, 0), id(0, b - 1))?;
    Ok(d)
}

/// All 4-cells, ordered by the grid position of their bottoms.
pub fn four_cells(d: &Diagram) -> Vec<FourCell> {
    let (l, lay) = (d.lattice(), d.layout());
    let mut cells: Vec<FourCell> = l
        .elements()
        .filter(|&x| l.upper_covers(x).len() == 2)
        .map(|x| {
            let (y, z) = (l.upper_covers(x)[0], l.upper_covers(x)[1]);
            let (left, right) = if lay.u(y) < lay.u(z) { (y, z) } else { (z, y) };
            FourCell {
                bottom: x,
                left,
                right,
                top: l.join(y, z),
            }
        })
        .collect();
    cells.sort_by_key(|c| (lay.l(c.bottom), lay.r(c.bottom)));
    cells
}

/// Cells whose top's principal ideal has only normal-slope edges.
pub fn distributive_cells(d: &Diagram) -> Vec<FourCell> {
    four_cells(d)
        .into_iter()
        .filter(|c| is_distributive_cell(d, c))
        .collect()
}

pub fn is_distributive_cell(d: &Diagram, cell: &FourCell) -> bool {
    let l = d.lattice();
    let down = l.down_set(cell.top);
    down.iter().all(|x| {
        l.upper_covers(x)
            .iter()
            .filter(|&&y| down.contains(y))
            .all(|&y| d.slope(x, y) != Slope::Precipitous)
    })
}

/// Order-theoretic definition: the ideal of the top is distributive.
pub fn is_distributive_cell_by_order(d: &Diagram, cell: &FourCell) -> bool {
    let ideal: Vec<ElemId> = d.lattice().down_set(cell.top).iter().collect();
    d.lattice().is_distributive_on(&ideal)
}

pub fn cell_at(d: &Diagram, addr: CellAddress) -> Result<FourCell> {
    let bad = Error::BadCellAddress {
        l: addr.l,
        r: addr.r,
    };
    let bottom = d
        .layout()
        .element_at(addr.l as i64, addr.r as i64)
        .ok_or(bad.clone())?;
    four_cells(d)
        .into_iter()
        .find(|c| c.bottom == bottom)
        .ok_or(bad)
}

pub fn cell_address(d: &Diagram, cell: &FourCell) -> CellAddress {
    let (l, r) = d.layout().lr(cell.bottom);
    CellAddress {
        l: l as usize,
        r: r as usize,
    }
}

/// Multifork extension of rank `n` at a distributive cell.
///
/// Returns the extended diagram and the embedding of old ids into new ids.
pub fn multifork(d: &Diagram, cell: &FourCell, n: usize) -> Result<(Diagram, Vec<ElemId>)> {
    if n == 0 {
        return Err(Error::RankNonPositive);
    }
    if !is_distributive_cell(d, cell) {
        return Err(Error::CellNotDistributive {
            bottom: cell.bottom,
        });
    }
    let (lat, lay) = (d.lattice(), d.layout());
    let mut covers: BTreeSet<(ElemId, ElemId)> = lat.covers().into_iter().collect();
    let mut next = lat.len();
    let mut fresh = || {
        next += 1;
        next - 1
    };

    // t[x][y] for 1 <= x <= y <= n stands for m_x meet ... meet m_y.
    let mut t = vec![vec![usize::MAX; n + 1]; n + 1];
    for (x, row) in t.iter_mut().enumerate().skip(1) {
        for cell_id in row.iter_mut().skip(x) {
            *cell_id = fresh();
        }
    }
    for x in 1..=n {
        covers.insert((t[x][x], cell.top));
        for y in x + 1..=n {
            covers.insert((t[x][y], t[x][y - 1]));
            covers.insert((t[x][y], t[x + 1][y]));
        }
    }

    // Subdivide the trajectory of one lower edge of the cell down to the
    // lower boundary. `left` selects the down-left direction.
    let mut propagate = |start: (ElemId, ElemId),
                         left: bool,
                         covers: &mut BTreeSet<(ElemId, ElemId)>|
     -> Result<()> {
        let (mut bot, mut top) = start;
        let mut prev: Vec<ElemId> = Vec::new();
        for s in 0..=lat.len() {
            let chain: Vec<ElemId> = (0..n).map(|_| fresh()).collect();
            // chain[k-1] is u_{s,k}; bot < u_{s,n} < ... < u_{s,1} < top.
            covers.remove(&(bot, top));
            covers.insert((bot, chain[n - 1]));
            for k in (1..n).rev() {
                covers.insert((chain[k], chain[k - 1]));
            }
            covers.insert((chain[0], top));
            for k in 1..=n {
                let upper = if s == 0 {
                    if left {
                        t[1][k]
                    } else {
                        t[n - k + 1][n]
                    }
                } else {
                    prev[k - 1]
                };
                covers.insert((chain[k - 1], upper));
            }
            prev = chain;
            let on_boundary = if left {
                lay.r(bot) == 0
            } else {
                lay.l(bot) == 0
            };
            if on_boundary {
                return Ok(());
            }
            // The next edge is the opposite side of the cell that has the
            // current edge as its upper-right (resp. upper-left) side.
            let side = lat
                .lower_covers(top)
                .iter()
                .copied()
                .filter(|&y| {
                    if left {
                        lay.u(y) < lay.u(bot)
                    } else {
                        lay.u(y) > lay.u(bot)
                    }
                })
                .max_by_key(|&y| if left { lay.u(y) } else { -lay.u(y) })
                .ok_or_else(|| {
                    Error::InternalError(format!("propagation stuck at edge ({bot}, {top})"))
                })?;
            let new_bot = lat.meet(side, bot);
            top = side;
            bot = new_bot;
        }
        Err(Error::InternalError(
            "propagation did not reach the boundary".into(),
        ))
    };
    propagate((cell.bottom, cell.left), true, &mut covers)?;
    propagate((cell.bottom, cell.right), false, &mut covers)?;

    let covers: Vec<_> = covers.into_iter().collect();
    let total = covers
        .iter()
        .map(|&(a, b)| a.max(b) + 1)
        .max()
        .unwrap_or(0)
        .max(lat.len());
    let extended = FiniteLattice::from_covers(total, &covers)?;
    let (nd, perm) = Diagram::from_lattice(extended, lay.c_l(), lay.c_r())?;
    check_beta(nd.lattice(), nd.layout())?;
    Ok((nd, perm[..lat.len()].to_vec()))
}

/// Build the final lattice of a recipe.
pub fn build(recipe: &Recipe) -> Result<Diagram> {
    Ok(replay(recipe)?
        .pop()
        .expect("replay returns the grid at least"))
}

/// All stages `L_0, ..., L_k`; each one is validated.
pub fn replay(recipe: &Recipe) -> Result<Vec<Diagram>> {
    let mut stages = vec![grid(recipe.grid_a, recipe.grid_b)?];
    for step in &recipe.steps {
        let cur = stages.last().unwrap();
        let cell = cell_at(cur, step.cell)?;
        let (next, _) = multifork(cur, &cell, step.rank)?;
        let report = next.validate();
        if !report.all_pass() {
            return Err(Error::NotRectangular(format!("{report:?}")));
        }
        stages.push(next);
    }
    Ok(stages)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_size: usize,
    pub max_rank: usize,
    pub max_steps: usize,
}

/// Depth-first stream of recipes within `bounds`, in canonical order:
/// grids by `(a, b)`, then steps by cell position and rank.
pub fn enumerate(max_size: usize, max_rank: usize, max_steps: usize) -> Enumerator {
    let bounds = Bounds {
        max_size,
        max_rank,
        max_steps,
    };
    let mut grids = Vec::new();
    for a in 2..=max_size / 2 {
        for b in 2..=max_size / a {
            grids.push(Recipe::grid(a, b));
        }
    }
    grids.reverse();
    Enumerator {
        bounds,
        stack: grids.into_iter().map(|r| (r, None)).collect(),
    }
}

pub struct Enumerator {
    bounds: Bounds,
    stack: Vec<(Recipe, Option<Diagram>)>,
}

impl Iterator for Enumerator {
    type Item = Recipe;

    fn next(&mut self) -> Option<Recipe> {
        let (recipe, diagram) = self.stack.pop()?;
        if recipe.steps.len() < self.bounds.max_steps {
            let d = match diagram {
                Some(d) => d,
                None => build(&recipe).expect("enumerated recipes build"),
            };
            let size = d.len();
            let mut children = Vec::new();
            for cell in distributive_cells(&d) {
                let addr = cell_address(&d, &cell);
                for rank in 1..=self.bounds.max_rank {
                    if size + fork_growth(addr, rank) > self.bounds.max_size {
                        break;
                    }
                    let (nd, _) = multifork(&d, &cell, rank).expect("distributive cell forks");
                    children.push((recipe.clone().fork(addr.l, addr.r, rank), Some(nd)));
                }
            }
            children.reverse();
            self.stack.extend(children);
        }
        Some(recipe)
    }
}

/// A seeded random recipe within `bounds`.
pub fn random_recipe(seed: u64, bounds: Bounds) -> Recipe {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_a = (bounds.max_size / 2).max(2);
    let a = rng.gen_range(2..=max_a);
    let b = rng.gen_range(2..=(bounds.max_size / a).max(2));
    let mut recipe = Recipe::grid(a, b);
    let mut d = grid(a, b).expect("grid dimensions are at least 2");
    let steps = rng.gen_range(0..=bounds.max_steps);
    for _ in 0..steps {
        let options: Vec<(FourCell, CellAddress, usize)> = distributive_cells(&d)
            .into_iter()
            .flat_map(|c| {
                let addr = cell_address(&d, &c);
                (1..=bounds.max_rank).map(move |k| (c, addr, k))
            })
            .filter(|&(_, addr, k)| d.len() + fork_growth(addr, k) <= bounds.max_size)
            .collect();
        if options.is_empty() {
            break;
        }
        let (cell, addr, k) = options[rng.gen_range(0..options.len())];
        d = multifork(&d, &cell, k).expect("distributive cell forks").0;
        recipe = recipe.fork(addr.l, addr.r, k);
    }
    recipe
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s_n(n: usize) -> Diagram {
        build(&Recipe::grid(2, 2).fork(0, 0, n)).unwrap()
    }

    #[test]
    fn small_grids() {
        let g = grid(2, 2).unwrap();
        assert_eq!((g.len(), g.lattice().edge_count()), (4, 4));
        let g = grid(3, 3).unwrap();
        assert_eq!(four_cells(&g).len(), 4);
        assert_eq!(distributive_cells(&g).len(), 4);
        assert!(g.validate().all_pass());
        assert_eq!(
            grid(1, 3).unwrap_err(),
            Error::SingletonChain { a: 1, b: 3 }
        );
    }

    #[test]
    fn grid_coordinates_follow_chain_indices() {
        let g = grid(2, 3).unwrap();
        let lay = g.layout();
        assert_eq!(lay.lr(lay.c_l()), (1, 0));
        assert_eq!(lay.lr(lay.c_r()), (0, 2));
        for x in g.lattice().elements() {
            assert_eq!(
                lay.point(x),
                crate::geometry::Point::new(lay.r(x) - lay.l(x), lay.r(x) + lay.l(x))
            );
        }
    }

    #[test]
    fn s1_shape() {
        let d = s_n(1);
        assert_eq!(d.len(), 7);
        assert_eq!(d.lattice().edge_count(), 9);
        assert!(d.validate().all_pass());
        let top = d.lattice().top();
        let m = d.layout().element_at(1, 1).unwrap();
        assert_eq!(d.slope(m, top), Slope::Precipitous);
        let c_l = d.layout().c_l();
        assert_eq!(d.layout().lr(c_l), (2, 0));
        assert_eq!(d.slope(c_l, top), Slope::NormalRight);
    }

    #[test]
    fn s_n_sizes() {
        for n in 1..=5 {
            assert_eq!(s_n(n).len(), n * (n + 1) / 2 + 2 * n + 4);
        }
    }

    #[test]
    fn fork_on_non_distributive_cell_fails() {
        let d = s_n(1);
        let cells = four_cells(&d);
        let bad = cells
            .iter()
            .find(|c| !is_distributive_cell(&d, c))
            .expect("S_1 has a non-distributive cell");
        assert!(matches!(
            multifork(&d, bad, 1),
            Err(Error::CellNotDistributive { .. })
        ));
        let good = distributive_cells(&d)[0];
        assert_eq!(multifork(&d, &good, 0).unwrap_err(), Error::RankNonPositive);
    }

    #[test]
    fn two_forks_validate() {
        let d = s_n(1);
        for cell in distributive_cells(&d) {
            let (e, emb) = multifork(&d, &cell, 1).unwrap();
            assert!(e.validate().all_pass());
            assert!(e.len() == 10 || e.len() == 11);
            for x in d.lattice().elements() {
                for y in d.lattice().elements() {
                    assert_eq!(
                        emb[d.lattice().meet(x, y)],
                        e.lattice().meet(emb[x], emb[y])
                    );
                    assert_eq!(
                        emb[d.lattice().join(x, y)],
                        e.lattice().join(emb[x], emb[y])
                    );
                }
            }
        }
    }

    #[test]
    fn bad_cell_address() {
        let r = Recipe::grid(2, 2).fork(1, 1, 1);
        assert_eq!(build(&r).unwrap_err(), Error::BadCellAddress { l: 1, r: 1 });
    }

    #[test]
    fn enumeration_small() {
        let all: Vec<Recipe> = enumerate(7, 1, 1).collect();
        let forked: Vec<&Recipe> = all.iter().filter(|r| !r.steps.is_empty()).collect();
        assert_eq!(forked.len(), 1);
        assert_eq!(build(forked[0]).unwrap().len(), 7);
        for r in enumerate(12, 2, 1) {
            let d = build(&r).unwrap();
            assert_eq!(d.len(), r.predicted_size());
            assert!(d.validate().all_pass());
        }
    }

    #[test]
    fn random_recipe_is_deterministic() {
        let b = Bounds {
            max_size: 30,
            max_rank: 3,
            max_steps: 3,
        };
        assert_eq!(random_recipe(7, b), random_recipe(7, b));
    }

    /// Point-set model of the same construction: elements are grid
    /// coordinates and a fork shifts coordinates and inserts new points.
    fn point_model(recipe: &Recipe) -> BTreeSet<(i64, i64)> {
        let mut pts: BTreeSet<(i64, i64)> = BTreeSet::new();
        for l in 0..recipe.grid_a as i64 {
            for r in 0..recipe.grid_b as i64 {
                pts.insert((l, r));
            }
        }
        for s in &recipe.steps {
            let (i, j, n) = (s.cell.l as i64, s.cell.r as i64, s.rank as i64);
            let mut next: BTreeSet<(i64, i64)> = pts
                .iter()
                .map(|&(l, r)| (if l > i { l + n } else { l }, if r > j { r + n } else { r }))
                .collect();
            for a in 1..=n {
                for b in a..=n {
                    next.insert((i + n + 1 - b, j + a));
                }
            }
            for k in 1..=n {
                for s in 0..=j {
                    next.insert((i + k, s));
                }
                for s in 0..=i {
                    next.insert((s, j + k));
                }
            }
            pts = next;
        }
        pts
    }

    #[test]
    fn enumerated_lattices_match_point_model() {
        for r in enumerate(20, 2, 2) {
            let d = build(&r).unwrap();
            let got: BTreeSet<(i64, i64)> =
                d.lattice().elements().map(|x| d.layout().lr(x)).collect();
            assert_eq!(got, point_model(&r), "{r:?}");
            // In the point model the order is componentwise.
            for x in d.lattice().elements() {
                for y in d.lattice().elements() {
                    let (a, b) = (d.layout().lr(x), d.layout().lr(y));
                    assert_eq!(d.lattice().leq(x, y), a.0 <= b.0 && a.1 <= b.1);
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn random_recipes_replay_monotone(seed in 0u64..10_000) {
            let b = Bounds { max_size: 36, max_rank: 3, max_steps: 3 };
            let r = random_recipe(seed, b);
            let stages = replay(&r).unwrap();
            for w in stages.windows(2) {
                prop_assert!(w[0].len() < w[1].len());
            }
            let last = stages.last().unwrap();
            prop_assert_eq!(last.len(), r.predicted_size());
            prop_assert!(last.validate().all_pass());
        }
    }
}
