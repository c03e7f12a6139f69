use serde::Serialize;

use super::{bits, Graph};
use crate::error::{Error, Result};
use crate::Budget;

/// A set of pairwise disjoint edges, flagged when no edge of the graph joins
/// two of its members.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchingCertificate {
    pub edges: Vec<(usize, usize)>,
    pub induced: bool,
}

impl MatchingCertificate {
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_names(&self, g: &Graph) -> Vec<(String, String)> {
        self.edges
            .iter()
            .map(|&(i, j)| (g.name(i).to_string(), g.name(j).to_string()))
            .collect()
    }
}

/// Checks that `edges` is a matching of `g` whose edges are pairwise unjoined.
pub fn is_induced_matching(g: &Graph, edges: &[(usize, usize)]) -> bool {
    let mut used = 0u64;
    for &(a, b) in edges {
        if a >= g.vertex_count() || b >= g.vertex_count() || !g.has_edge(a, b) {
            return false;
        }
        let m = 1 << a | 1 << b;
        if used & m != 0 {
            return false;
        }
        used |= m;
    }
    edges.iter().all(|&(a, b)| {
        let own = 1u64 << a | 1 << b;
        (g.neighbors(a) | g.neighbors(b)) & used & !own == 0
    })
}

/// ν(G), the largest size of an induced matching, with a witness.
pub fn induced_matching_number(g: &Graph) -> Result<(usize, MatchingCertificate)> {
    induced_matching_number_with(g, &Budget::default())
}

pub fn induced_matching_number_with(
    g: &Graph,
    budget: &Budget,
) -> Result<(usize, MatchingCertificate)> {
    if g.vertex_count() > budget.max_vertices {
        return Err(Error::budget(
            "max-vertices",
            budget.max_vertices,
            g.vertex_count(),
        ));
    }
    let mut search = Search {
        g,
        current: Vec::new(),
        best: Vec::new(),
    };
    search.run(g.all_vertices() & !g.isolated_vertices());
    let edges = search.best;
    debug_assert!(is_induced_matching(g, &edges));
    Ok((
        edges.len(),
        MatchingCertificate {
            edges,
            induced: true,
        },
    ))
}

struct Search<'a> {
    g: &'a Graph,
    current: Vec<(usize, usize)>,
    best: Vec<(usize, usize)>,
}

impl Search<'_> {
    // `avail` holds the vertices that may still be matched: none of them is
    // adjacent to an endpoint of `current`.
    fn run(&mut self, avail: u64) {
        let active = bits(avail)
            .filter(|&v| self.g.neighbors(v) & avail != 0)
            .fold(0u64, |m, v| m | 1 << v);
        if active == 0 {
            if self.current.len() > self.best.len() {
                self.best = self.current.clone();
            }
            return;
        }
        if self.current.len() + active.count_ones() as usize / 2 <= self.best.len() {
            return;
        }
        let v = active.trailing_zeros() as usize;
        for w in bits(self.g.neighbors(v) & active) {
            let blocked = self.g.closed_neighborhood(1 << v | 1 << w);
            self.current.push((v.min(w), v.max(w)));
            self.run(active & !blocked);
            self.current.pop();
        }
        self.run(active & !(1 << v));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, path};

    /// Brute force over all edge subsets.
    fn nu_oracle(g: &Graph) -> usize {
        let edges = g.edges();
        assert!(edges.len() <= 20);
        (0u32..1 << edges.len())
            .filter_map(|s| {
                let pick: Vec<_> = bits(s as u64).map(|i| edges[i]).collect();
                is_induced_matching(g, &pick).then_some(pick.len())
            })
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn small_cases() {
        let e = Graph::from_edges(&[("a", "b")]).unwrap();
        assert_eq!(induced_matching_number(&e).unwrap().0, 1);
        assert_eq!(induced_matching_number(&cycle(5)).unwrap().0, 1);
        let two = Graph::from_edges(&[("a", "b"), ("c", "d")]).unwrap();
        assert_eq!(induced_matching_number(&two).unwrap().0, 2);
        let p5 = path(5);
        assert_eq!(nu_oracle(&p5), 2);
        assert_eq!(induced_matching_number(&p5).unwrap().0, 2);
        let empty = Graph::with_vertices(&["a", "b"]).unwrap();
        assert_eq!(induced_matching_number(&empty).unwrap().0, 0);
        assert_eq!(induced_matching_number(&Graph::new()).unwrap().0, 0);
    }

    #[test]
    fn agrees_with_brute_force_on_cycles_and_paths() {
        for n in 3..=12 {
            let c = cycle(n);
            let (nu, cert) = induced_matching_number(&c).unwrap();
            assert_eq!(nu, nu_oracle(&c), "C{n}");
            assert!(is_induced_matching(&c, &cert.edges));
            assert_eq!(nu, (n / 3), "C{n}");
        }
    }

    #[test]
    fn witness_validation_rejects_joined_edges() {
        let p4 = path(4);
        assert!(!is_induced_matching(&p4, &[(0, 1), (2, 3)]));
        assert!(is_induced_matching(&path(5), &[(0, 1), (3, 4)]));
        assert!(!is_induced_matching(&p4, &[(0, 2)]));
    }

    #[test]
    fn budget_is_enforced() {
        let budget = Budget {
            max_vertices: 4,
            ..Budget::default()
        };
        assert!(matches!(
            induced_matching_number_with(&cycle(5), &budget),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
