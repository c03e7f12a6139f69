//! Finite simple graphs on named vertices.
//!
//! Vertices keep their insertion order, and every set of vertices is a `u64`
//! bitmask over that order, so a [`Graph`] holds at most
//! [`MAX_GRAPH_VERTICES`] vertices. Exhaustive searches apply the tighter
//! [`Budget::max_vertices`](crate::Budget) cap on top of that.

mod cover;
mod generate;
mod matching;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub use cover::{
    check_vwc_characterization, is_very_well_covered, is_very_well_covered_with, is_well_covered,
    is_well_covered_with, maximal_independent_sets, min_vertex_cover_size, minimal_vertex_covers,
    relabel_swap, vwc_labeling, VwcLabeling,
};
pub use generate::{
    all_graphs, canonical_form, generate_vwc_family, is_bipartite, random_graph, vwc_pool,
    GenerationMode, VwcFamily,
};
pub use matching::{
    induced_matching_number, induced_matching_number_with, is_induced_matching, MatchingCertificate,
};

pub const MAX_GRAPH_VERTICES: usize = 64;

/// Iterates over the set bits of `mask`, lowest first.
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A finite simple graph: no loops, no multiple edges.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<u64>,
}

fn validate_name(name: &str) -> Result<()> {
    let ok = !name.is_empty()
        && name != "vertex"
        && !name.starts_with('#')
        && !name
            .chars()
            .any(|c| c.is_whitespace() || c == '-' || c == ',');
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidName(name.to_string()))
    }
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph with the given vertices and no edges.
    pub fn with_vertices<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let mut g = Graph::new();
        for n in names {
            g.add_vertex(n.as_ref())?;
        }
        Ok(g)
    }

    /// Builds a graph from an edge list; vertices are ordered by first appearance.
    pub fn from_edges(edges: &[(&str, &str)]) -> Result<Self> {
        let mut g = Graph::new();
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    /// Adds a vertex, returning its index. Existing names are not duplicated.
    pub fn add_vertex(&mut self, name: &str) -> Result<usize> {
        if let Some(&i) = self.index.get(name) {
            return Ok(i);
        }
        validate_name(name)?;
        if self.names.len() == MAX_GRAPH_VERTICES {
            return Err(Error::budget(
                "graph-vertices",
                MAX_GRAPH_VERTICES,
                MAX_GRAPH_VERTICES + 1,
            ));
        }
        let i = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), i);
        self.adj.push(0);
        Ok(i)
    }

    /// Adds the edge `{a, b}`, declaring missing endpoints. Re-adding an edge is a no-op.
    pub fn add_edge(&mut self, a: &str, b: &str) -> Result<()> {
        if a == b {
            return Err(Error::Loop(a.to_string()));
        }
        let i = self.add_vertex(a)?;
        let j = self.add_vertex(b)?;
        self.link(i, j);
        Ok(())
    }

    pub(crate) fn link(&mut self, i: usize, j: usize) {
        debug_assert_ne!(i, j);
        self.adj[i] |= 1 << j;
        self.adj[j] |= 1 << i;
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|a| a.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Like [`Graph::index_of`] but failing with [`Error::UnknownVertex`].
    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn neighbors(&self, i: usize) -> u64 {
        self.adj[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].count_ones() as usize
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i] >> j & 1 == 1
    }

    /// All edges as index pairs `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for i in 0..self.names.len() {
            for j in bits(self.adj[i] & !low_mask(i + 1)) {
                out.push((i, j));
            }
        }
        out
    }

    pub fn all_vertices(&self) -> u64 {
        low_mask(self.names.len())
    }

    pub fn isolated_vertices(&self) -> u64 {
        (0..self.names.len())
            .filter(|&i| self.adj[i] == 0)
            .fold(0, |m, i| m | 1 << i)
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.adj.contains(&0)
    }

    /// `N[S]`: the vertices of `set` together with all their neighbours.
    pub fn closed_neighborhood(&self, set: u64) -> u64 {
        bits(set).fold(set, |m, i| m | self.adj[i])
    }

    pub fn is_independent(&self, set: u64) -> bool {
        bits(set).all(|i| self.adj[i] & set == 0)
    }

    pub fn is_vertex_cover(&self, set: u64) -> bool {
        let rest = self.all_vertices() & !set;
        self.is_independent(rest)
    }

    /// Converts a list of vertex names into a bitmask.
    pub fn mask_of<S: AsRef<str>>(&self, names: &[S]) -> Result<u64> {
        names
            .iter()
            .try_fold(0u64, |m, n| Ok(m | 1 << self.require(n.as_ref())?))
    }

    pub fn names_of(&self, mask: u64) -> Vec<String> {
        bits(mask).map(|i| self.names[i].clone()).collect()
    }

    /// The induced subgraph on `keep`, preserving vertex order.
    pub fn induced_subgraph(&self, keep: u64) -> Graph {
        let keep = keep & self.all_vertices();
        let old: Vec<usize> = bits(keep).collect();
        let mut pos = vec![usize::MAX; self.names.len()];
        for (new, &o) in old.iter().enumerate() {
            pos[o] = new;
        }
        let mut g = Graph::new();
        for &o in &old {
            g.names.push(self.names[o].clone());
            g.index.insert(self.names[o].clone(), g.adj.len());
            g.adj.push(0);
        }
        for (new, &o) in old.iter().enumerate() {
            g.adj[new] = bits(self.adj[o] & keep).fold(0, |m, t| m | 1 << pos[t]);
        }
        g
    }

    /// `G ∖ U`: deletes the given vertices.
    pub fn remove_vertices(&self, set: u64) -> Graph {
        self.induced_subgraph(self.all_vertices() & !set)
    }

    /// `G ∖ N_G[S]`, the induced subgraph on the vertices outside the closed
    /// neighbourhood of `set`.
    pub fn delete_closed_neighborhood<S: AsRef<str>>(&self, set: &[S]) -> Result<Graph> {
        let mask = self.mask_of(set)?;
        Ok(self.remove_vertices(self.closed_neighborhood(mask)))
    }

    /// `W(G)`: attaches a fresh pendant vertex to every vertex.
    ///
    /// The pendant of `v` is named `v'` (with more primes if that name is taken).
    pub fn whisker(&self) -> Result<Graph> {
        let mut g = self.clone();
        for i in 0..self.names.len() {
            let mut pendant = format!("{}'", self.names[i]);
            while g.index.contains_key(&pendant) {
                pendant.push('\'');
            }
            let p = g.add_vertex(&pendant)?;
            g.link(i, p);
        }
        Ok(g)
    }

    /// `G_1 * ⋯ * G_k`: disjoint union plus every edge between distinct parts.
    pub fn join(parts: &[&Graph]) -> Result<Graph> {
        let mut g = Graph::new();
        let mut ranges = Vec::with_capacity(parts.len());
        for part in parts {
            let start = g.vertex_count();
            for name in &part.names {
                if g.index.contains_key(name) {
                    return Err(Error::VertexNameCollision(name.clone()));
                }
                g.add_vertex(name)?;
            }
            for (i, j) in part.edges() {
                g.link(start + i, start + j);
            }
            ranges.push(start..g.vertex_count());
        }
        for (a, ra) in ranges.iter().enumerate() {
            for rb in &ranges[a + 1..] {
                for i in ra.clone() {
                    for j in rb.clone() {
                        g.link(i, j);
                    }
                }
            }
        }
        Ok(g)
    }

    /// Same graph with every vertex name transformed by `f`.
    pub fn renamed(&self, f: impl Fn(&str) -> String) -> Result<Graph> {
        let mut g = Graph::new();
        for n in &self.names {
            let new = f(n);
            if g.index.contains_key(&new) {
                return Err(Error::VertexNameCollision(new));
            }
            g.add_vertex(&new)?;
        }
        g.adj = self.adj.clone();
        Ok(g)
    }

    /// Canonical one-line description: edges `u-v` in index order, then isolated vertices.
    pub fn digest(&self) -> String {
        let mut parts: Vec<String> = self
            .edges()
            .into_iter()
            .map(|(i, j)| format!("{}-{}", self.names[i], self.names[j]))
            .collect();
        parts.extend(bits(self.isolated_vertices()).map(|i| self.names[i].clone()));
        parts.join(" ")
    }

    /// Parses the edge-list text format.
    ///
    /// One edge per line as two whitespace-separated tokens; `vertex <name>`
    /// declares a vertex; lines starting with `#` and blank lines are skipped.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut g = Graph::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let res = match tokens.as_slice() {
                ["vertex", name] => g.add_vertex(name).map(|_| ()),
                [a, b] => g.add_edge(a, b),
                _ => {
                    return Err(Error::parse(
                        no + 1,
                        format!("expected two tokens, found {}", tokens.len()),
                    ))
                }
            };
            res.map_err(|e| Error::parse(no + 1, e.to_string()))?;
        }
        Ok(g)
    }

    /// Serializes to the edge-list text format. `Graph::parse` of the output
    /// yields an equal graph, including vertex order.
    pub fn to_text(&self) -> String {
        // Ordering edges by their later endpoint lets first appearance
        // reproduce the vertex order whenever each vertex has an earlier
        // neighbour, so no `vertex` lines are needed.
        let mut edges = self.edges();
        edges.sort_by_key(|&(i, j)| (j, i));
        let mut seen = 0u64;
        let mut order = Vec::with_capacity(self.names.len());
        for &(i, j) in &edges {
            for v in [i, j] {
                if seen >> v & 1 == 0 {
                    seen |= 1 << v;
                    order.push(v);
                }
            }
        }
        let implicit =
            order.len() == self.names.len() && order.iter().enumerate().all(|(a, &b)| a == b);
        let mut out = String::new();
        if !implicit {
            for n in &self.names {
                out.push_str("vertex ");
                out.push_str(n);
                out.push('\n');
            }
        }
        for (i, j) in edges {
            out.push_str(&self.names[i]);
            out.push(' ');
            out.push_str(&self.names[j]);
            out.push('\n');
        }
        out
    }
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Graph::parse(s)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Path on vertices named `1..=n`.
pub fn path(n: usize) -> Graph {
    let mut g = Graph::new();
    for i in 1..=n {
        g.add_vertex(&i.to_string())
            .expect("numeric names are valid");
    }
    for i in 1..n {
        g.link(i - 1, i);
    }
    g
}

/// Cycle on vertices named `1..=n` (`n >= 3`).
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycles need at least three vertices");
    let mut g = path(n);
    g.link(n - 1, 0);
    g
}

/// Complete graph on vertices named `1..=n`.
pub fn complete(n: usize) -> Graph {
    let mut g = path(n);
    for i in 0..n {
        for j in i + 1..n {
            g.link(i, j);
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_round_trip() {
        let text = "# comment\nvertex z\na b\n\nb c\n";
        let g = Graph::parse(text).unwrap();
        assert_eq!(g.names(), ["z", "a", "b", "c"]);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(Graph::parse(&g.to_text()).unwrap(), g);

        let plain = cycle(4);
        assert!(!plain.to_text().contains("vertex"));
        assert_eq!(Graph::parse(&plain.to_text()).unwrap(), plain);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            Graph::parse("a a"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            Graph::parse("a b\nc"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(Graph::parse("a b c"), Err(Error::Parse { .. })));
        assert!(matches!(Graph::parse("a-1 b"), Err(Error::Parse { .. })));
    }

    #[test]
    fn closed_neighborhood_deletion() {
        let c4 = cycle(4);
        let h = c4.delete_closed_neighborhood(&["1"]).unwrap();
        assert_eq!(h.names(), ["3"]);
        assert_eq!(h.edge_count(), 0);
        let empty: [&str; 0] = [];
        assert_eq!(c4.delete_closed_neighborhood(&empty).unwrap(), c4);
        assert_eq!(
            c4.delete_closed_neighborhood(&["9"]),
            Err(Error::UnknownVertex("9".into()))
        );
    }

    #[test]
    fn whisker_and_join_shapes() {
        let k1 = Graph::with_vertices(&["a"]).unwrap();
        let w = k1.whisker().unwrap();
        assert_eq!((w.vertex_count(), w.edge_count()), (2, 1));

        let w4 = cycle(4).whisker().unwrap();
        assert_eq!((w4.vertex_count(), w4.edge_count()), (8, 8));

        let a = Graph::with_vertices(&["a"]).unwrap();
        let b = Graph::with_vertices(&["b"]).unwrap();
        assert_eq!(Graph::join(&[&a, &b]).unwrap().edge_count(), 1);

        let e1 = Graph::from_edges(&[("a", "b")]).unwrap();
        let e2 = Graph::from_edges(&[("c", "d")]).unwrap();
        let k4 = Graph::join(&[&e1, &e2]).unwrap();
        assert_eq!(k4.edge_count(), 6);

        let c = cycle(4);
        let d = c.renamed(|n| format!("d{n}")).unwrap();
        let j = Graph::join(&[&c, &d]).unwrap();
        assert_eq!((j.vertex_count(), j.edge_count()), (8, 4 + 4 + 16));

        assert_eq!(
            Graph::join(&[&c, &c]),
            Err(Error::VertexNameCollision("1".into()))
        );
    }

    #[test]
    fn induced_subgraph_keeps_order() {
        let g = cycle(5);
        let h = g.induced_subgraph(0b10110);
        assert_eq!(h.names(), ["2", "3", "5"]);
        assert_eq!(h.edges(), vec![(0, 1)]);
    }
}
