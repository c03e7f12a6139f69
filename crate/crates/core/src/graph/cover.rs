//! Independent sets, vertex covers and the very well-covered property.

use std::ops::ControlFlow;

use serde::Serialize;

use super::{bits, Graph};
use crate::error::{Error, Result};
use crate::Budget;

fn check_budget(g: &Graph, budget: &Budget) -> Result<()> {
    if g.vertex_count() > budget.max_vertices {
        Err(Error::budget(
            "max-vertices",
            budget.max_vertices,
            g.vertex_count(),
        ))
    } else {
        Ok(())
    }
}

/// Bron–Kerbosch with pivoting on the complement graph. `visit` may stop the
/// enumeration early.
fn for_each_maximal_independent_set(g: &Graph, visit: &mut dyn FnMut(u64) -> ControlFlow<()>) {
    let all = g.all_vertices();
    let non_adj: Vec<u64> = (0..g.vertex_count())
        .map(|v| all & !g.neighbors(v) & !(1 << v))
        .collect();

    fn rec(
        non_adj: &[u64],
        r: u64,
        mut p: u64,
        mut x: u64,
        visit: &mut dyn FnMut(u64) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if p == 0 && x == 0 {
            return visit(r);
        }
        let pivot = bits(p | x)
            .max_by_key(|&u| (p & non_adj[u]).count_ones())
            .expect("p | x is non-empty");
        for v in bits(p & !non_adj[pivot]) {
            rec(non_adj, r | 1 << v, p & non_adj[v], x & non_adj[v], visit)?;
            p &= !(1 << v);
            x |= 1 << v;
        }
        ControlFlow::Continue(())
    }

    let _ = rec(&non_adj, 0, all, 0, visit);
}

/// Every maximal independent set, as bitmasks, in enumeration order.
pub fn maximal_independent_sets(g: &Graph) -> Result<Vec<u64>> {
    check_budget(g, &Budget::default())?;
    let mut out = Vec::new();
    for_each_maximal_independent_set(g, &mut |s| {
        out.push(s);
        ControlFlow::Continue(())
    });
    Ok(out)
}

/// Every minimal vertex cover (complements of the maximal independent sets).
pub fn minimal_vertex_covers(g: &Graph) -> Result<Vec<u64>> {
    let all = g.all_vertices();
    Ok(maximal_independent_sets(g)?
        .into_iter()
        .map(|s| all & !s)
        .collect())
}

pub fn min_vertex_cover_size(g: &Graph) -> Result<usize> {
    let alpha = maximal_independent_sets(g)?
        .into_iter()
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0);
    Ok(g.vertex_count() - alpha)
}

/// True iff all maximal independent sets have the same size. The empty
/// graph is well-covered.
pub fn is_well_covered(g: &Graph) -> Result<bool> {
    is_well_covered_with(g, &Budget::default())
}

pub fn is_well_covered_with(g: &Graph, budget: &Budget) -> Result<bool> {
    check_budget(g, budget)?;
    let mut size = None;
    let mut ok = true;
    for_each_maximal_independent_set(g, &mut |s| {
        let k = s.count_ones();
        match size {
            None => size = Some(k),
            Some(prev) if prev != k => {
                ok = false;
                return ControlFlow::Break(());
            }
            _ => {}
        }
        ControlFlow::Continue(())
    });
    Ok(ok)
}

/// Well-covered, no isolated vertex, and vertex-cover number `|V|/2`.
pub fn is_very_well_covered(g: &Graph) -> Result<bool> {
    is_very_well_covered_with(g, &Budget::default())
}

pub fn is_very_well_covered_with(g: &Graph, budget: &Budget) -> Result<bool> {
    check_budget(g, budget)?;
    let n = g.vertex_count();
    if n < 2 || n % 2 == 1 || g.has_isolated_vertex() {
        return Ok(false);
    }
    // Every maximal independent set must have exactly n/2 vertices.
    let half = (n / 2) as u32;
    let mut ok = true;
    for_each_maximal_independent_set(g, &mut |s| {
        if s.count_ones() != half {
            ok = false;
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    Ok(ok)
}

/// A pairing `(x_i, y_i)` of the vertices into a minimal vertex cover `X`
/// and a maximal independent set `Y`, with every `x_i y_i` an edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VwcLabeling {
    pub pairs: Vec<(usize, usize)>,
}

impl VwcLabeling {
    pub fn h(&self) -> usize {
        self.pairs.len()
    }

    pub fn x(&self, i: usize) -> usize {
        self.pairs[i].0
    }

    pub fn y(&self, i: usize) -> usize {
        self.pairs[i].1
    }

    pub fn x_set(&self) -> u64 {
        self.pairs.iter().fold(0, |m, &(x, _)| m | 1 << x)
    }

    pub fn y_set(&self) -> u64 {
        self.pairs.iter().fold(0, |m, &(_, y)| m | 1 << y)
    }

    /// Index of the pair containing vertex `v`.
    pub fn pair_of(&self, v: usize) -> Option<usize> {
        self.pairs.iter().position(|&(x, y)| x == v || y == v)
    }

    /// The other member of `v`'s pair (`[u] ∖ u`).
    pub fn partner(&self, v: usize) -> Option<usize> {
        self.pair_of(v).map(|i| {
            let (x, y) = self.pairs[i];
            if x == v {
                y
            } else {
                x
            }
        })
    }

    pub fn pair_names(&self, g: &Graph) -> Vec<(String, String)> {
        self.pairs
            .iter()
            .map(|&(x, y)| (g.name(x).to_string(), g.name(y).to_string()))
            .collect()
    }

    /// Checks the labeling invariants against `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidLabeling(m.to_string()));
        let n = g.vertex_count();
        if self.pairs.is_empty() || 2 * self.pairs.len() != n {
            return bad("labeling must cover all vertices with |V|/2 pairs");
        }
        let mut seen = 0u64;
        for &(x, y) in &self.pairs {
            if x >= n || y >= n {
                return bad("vertex index out of range");
            }
            if seen & (1 << x | 1 << y) != 0 || x == y {
                return bad("pairs must partition the vertex set");
            }
            seen |= 1 << x | 1 << y;
            if !g.has_edge(x, y) {
                return Err(Error::InvalidLabeling(format!(
                    "{} {} is not an edge",
                    g.name(x),
                    g.name(y)
                )));
            }
        }
        // Y independent makes X a cover; the pair edges make X minimal and Y maximal.
        if !g.is_independent(self.y_set()) {
            return bad("Y is not independent");
        }
        Ok(())
    }
}

/// Kuhn's augmenting-path check that every `x` in `xs` can be matched into
/// `ys` along edges of `g`.
fn has_perfect_matching(g: &Graph, xs: &[usize], ys: u64) -> bool {
    fn augment(g: &Graph, x: usize, ys: u64, seen: &mut u64, owner: &mut [Option<usize>]) -> bool {
        for y in bits(g.neighbors(x) & ys & !*seen) {
            *seen |= 1 << y;
            if owner[y].is_none_or(|other| augment(g, other, ys, seen, owner)) {
                owner[y] = Some(x);
                return true;
            }
        }
        false
    }
    let mut owner = vec![None; g.vertex_count()];
    xs.iter().all(|&x| {
        let mut seen = 0;
        augment(g, x, ys, &mut seen, &mut owner)
    })
}

/// The deterministic labeling of a very well-covered graph: the `X` whose
/// sorted name list is lexicographically smallest, then the lexicographically
/// smallest pairing (partners listed in the order of sorted `X`).
pub fn vwc_labeling(g: &Graph) -> Result<VwcLabeling> {
    if !is_very_well_covered(g)? {
        return Err(Error::NotVeryWellCovered);
    }
    let all = g.all_vertices();
    let sorted_names = |mask: u64| {
        let mut v: Vec<usize> = bits(mask).collect();
        v.sort_by(|&a, &b| g.name(a).cmp(g.name(b)));
        v
    };

    let mut best: Option<Vec<usize>> = None;
    for y in maximal_independent_sets(g)? {
        let xs = sorted_names(all & !y);
        if !has_perfect_matching(g, &xs, y) {
            continue;
        }
        let better = best.as_ref().is_none_or(|b| {
            xs.iter()
                .map(|&v| g.name(v))
                .lt(b.iter().map(|&v| g.name(v)))
        });
        if better {
            best = Some(xs);
        }
    }
    let xs = best.ok_or(Error::NotVeryWellCovered)?;
    let mut free_y = all & !xs.iter().fold(0u64, |m, &x| m | 1 << x);

    let mut pairs = Vec::with_capacity(xs.len());
    for (k, &x) in xs.iter().enumerate() {
        let choice = sorted_names(g.neighbors(x) & free_y)
            .into_iter()
            .find(|&y| has_perfect_matching(g, &xs[k + 1..], free_y & !(1 << y)))
            .expect("a perfect matching exists");
        free_y &= !(1 << choice);
        pairs.push((x, choice));
    }
    Ok(VwcLabeling { pairs })
}

/// Checks the two-condition characterization of very well-covered graphs
/// against a labeling:
///
/// 1. `{z_i, x_j}, {y_j, x_k} ∈ E` implies `{z_i, x_k} ∈ E` for distinct
///    `i, j, k` and `z_i ∈ {x_i, y_i}`;
/// 2. `{x_i, y_j} ∈ E` implies `{x_i, x_j} ∉ E`.
pub fn check_vwc_characterization(g: &Graph, l: &VwcLabeling) -> Result<bool> {
    l.validate(g)?;
    let h = l.h();
    for i in 0..h {
        for j in 0..h {
            if i == j {
                continue;
            }
            if g.has_edge(l.x(i), l.y(j)) && g.has_edge(l.x(i), l.x(j)) {
                return Ok(false);
            }
            for k in 0..h {
                if k == i || k == j || !g.has_edge(l.y(j), l.x(k)) {
                    continue;
                }
                for z in [l.x(i), l.y(i)] {
                    if g.has_edge(z, l.x(j)) && !g.has_edge(z, l.x(k)) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Swaps `x_j ↔ y_j` for every `j` with `y_j ∈ N_G(x_i) ∖ X` (the pair `i`
/// itself included, since `y_i` is always such a neighbour).
///
/// `i` is a 0-based pair index. On a very well-covered graph the result is
/// again a valid labeling satisfying both characterization conditions.
pub fn relabel_swap(g: &Graph, l: &VwcLabeling, i: usize) -> Result<VwcLabeling> {
    l.validate(g)?;
    if i >= l.h() {
        return Err(Error::InvalidLabeling(format!(
            "pair index {i} out of range for h = {}",
            l.h()
        )));
    }
    let targets = g.neighbors(l.x(i)) & !l.x_set();
    let pairs = l
        .pairs
        .iter()
        .map(|&(x, y)| {
            if targets >> y & 1 == 1 {
                (y, x)
            } else {
                (x, y)
            }
        })
        .collect();
    Ok(VwcLabeling { pairs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, path};

    fn g_ex() -> Graph {
        Graph::from_edges(&[
            ("x1", "y1"),
            ("x2", "y2"),
            ("x3", "y3"),
            ("x4", "y4"),
            ("x1", "x2"),
            ("x1", "x4"),
            ("x1", "y3"),
            ("x2", "y3"),
            ("x2", "x4"),
            ("x3", "x4"),
        ])
        .unwrap()
    }

    fn closing_example() -> Graph {
        Graph::from_edges(&[
            ("x1", "x2"),
            ("x2", "x3"),
            ("x3", "x4"),
            ("x4", "x5"),
            ("x5", "x1"),
            ("x1", "x6"),
            ("x6", "x9"),
            ("x6", "x7"),
            ("x7", "x8"),
        ])
        .unwrap()
    }

    #[test]
    fn well_covered_examples() {
        assert!(is_well_covered(&cycle(4)).unwrap());
        assert!(!is_well_covered(&path(3)).unwrap());
        assert!(is_well_covered(&closing_example()).unwrap());
        assert!(is_well_covered(&Graph::new()).unwrap());
    }

    #[test]
    fn very_well_covered_examples() {
        assert!(is_very_well_covered(&cycle(4)).unwrap());
        assert!(is_very_well_covered(&g_ex()).unwrap());
        assert!(!is_very_well_covered(&closing_example()).unwrap());
        assert!(!is_very_well_covered(&cycle(5)).unwrap());
        assert!(!is_very_well_covered(&Graph::new()).unwrap());
        let isolated = Graph::with_vertices(&["a", "b"]).unwrap();
        assert!(!is_very_well_covered(&isolated).unwrap());
    }

    #[test]
    fn min_cover_and_covers() {
        assert_eq!(min_vertex_cover_size(&cycle(5)).unwrap(), 3);
        let covers = minimal_vertex_covers(&cycle(4)).unwrap();
        assert_eq!(covers.len(), 2);
        for c in covers {
            assert!(cycle(4).is_vertex_cover(c));
        }
    }

    #[test]
    fn labeling_of_c4() {
        let g = cycle(4);
        let l = vwc_labeling(&g).unwrap();
        assert_eq!(
            l.pair_names(&g),
            vec![("1".into(), "2".into()), ("3".into(), "4".into())]
        );
        assert!(check_vwc_characterization(&g, &l).unwrap());
    }

    #[test]
    fn labeling_of_g_ex() {
        let g = g_ex();
        let l = vwc_labeling(&g).unwrap();
        let expect: Vec<(String, String)> = (1..=4)
            .map(|i| (format!("x{i}"), format!("y{i}")))
            .collect();
        assert_eq!(l.pair_names(&g), expect);
        assert!(check_vwc_characterization(&g, &l).unwrap());
    }

    #[test]
    fn labeling_of_whiskered_graph() {
        let w = cycle(5).whisker().unwrap();
        let l = vwc_labeling(&w).unwrap();
        for &(x, y) in &l.pairs {
            assert!(!w.name(x).ends_with('\''));
            assert_eq!(w.name(y), format!("{}'", w.name(x)));
        }
    }

    #[test]
    fn labeling_requires_vwc() {
        assert_eq!(vwc_labeling(&cycle(5)), Err(Error::NotVeryWellCovered));
    }

    #[test]
    fn characterization_rejects_invalid_labelings() {
        let g = cycle(4);
        let bad = VwcLabeling {
            pairs: vec![(0, 2), (1, 3)],
        };
        assert!(matches!(
            check_vwc_characterization(&g, &bad),
            Err(Error::InvalidLabeling(_))
        ));
        let y_dependent = VwcLabeling {
            pairs: vec![(0, 1), (3, 2)],
        };
        assert!(matches!(
            check_vwc_characterization(&g, &y_dependent),
            Err(Error::InvalidLabeling(_))
        ));
    }

    #[test]
    fn characterization_condition_two_detects_violation() {
        // x1 y2 and x1 x2 both present.
        let g =
            Graph::from_edges(&[("x1", "y1"), ("x2", "y2"), ("x1", "y2"), ("x1", "x2")]).unwrap();
        let l = VwcLabeling {
            pairs: vec![(0, 1), (2, 3)],
        };
        assert!(!check_vwc_characterization(&g, &l).unwrap());
        assert!(!is_very_well_covered(&g).unwrap());
    }

    #[test]
    fn characterization_vacuous_for_two_pairs() {
        let g = Graph::from_edges(&[("x1", "y1"), ("x2", "y2"), ("x1", "y2")]).unwrap();
        let l = VwcLabeling {
            pairs: vec![(0, 1), (2, 3)],
        };
        assert!(check_vwc_characterization(&g, &l).unwrap());
        assert!(is_very_well_covered(&g).unwrap());
    }

    #[test]
    fn swap_of_a_pair_with_no_extra_neighbours() {
        let g = cycle(4).whisker().unwrap();
        let l = vwc_labeling(&g).unwrap();
        let out = relabel_swap(&g, &l, 0).unwrap();
        assert_eq!(out.pairs[0], (l.y(0), l.x(0)));
        assert_eq!(out.pairs[1..], l.pairs[1..]);
        out.validate(&g).unwrap();
        assert!(check_vwc_characterization(&g, &out).unwrap());
    }

    #[test]
    fn swap_preserves_characterization_on_g_ex() {
        let g = g_ex();
        let l = vwc_labeling(&g).unwrap();
        for i in 0..l.h() {
            let out = relabel_swap(&g, &l, i).unwrap();
            out.validate(&g).unwrap();
            assert!(check_vwc_characterization(&g, &out).unwrap());
        }
        assert!(relabel_swap(&g, &l, 4).is_err());
    }
}
