//! Even-connections with respect to an s-fold product of edges, and the
//! colon ideals `(I(G)^{s+1} : e_1⋯e_s)` they describe.
//!
//! Vertices `u` and `v` are even-connected with respect to `e_1⋯e_s` when
//! there is a walk `p_0 p_1 ⋯ p_{2k+1}` with `k ≥ 1`, `p_0 = u`,
//! `p_{2k+1} = v`, every step an edge of `G`, and every odd step
//! `p_{2ℓ+1} p_{2ℓ+2}` one of the product edges, no product edge used more
//! often than it occurs in the product.

mod colon;
mod lemmas;

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{bits, Graph};
use crate::monomial::Monomial;

pub use colon::{
    colon_graph, colon_ideal_brute_force, colon_ideal_by_even_connections,
    verify_colon_decomposition, verify_gprime_vwc, ColonGraph,
};
pub use lemmas::{verify_structural_lemmas, LemmaCheck, StructuralReport};

/// A multiset `e_1, …, e_s` of edges of a base graph, `s ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeProduct {
    base: Graph,
    edges: Vec<(usize, usize)>,
    distinct: Vec<(usize, usize)>,
    mult: Vec<usize>,
    class: Vec<usize>,
}

impl EdgeProduct {
    /// Builds a product from vertex-index pairs of `base`.
    pub fn from_indices(base: &Graph, edges: &[(usize, usize)]) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::InvalidArgument(
                "an edge product needs at least one edge".into(),
            ));
        }
        let mut normalized = Vec::with_capacity(edges.len());
        let mut distinct: Vec<(usize, usize)> = Vec::new();
        let mut mult = Vec::new();
        let mut class = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            let n = base.vertex_count();
            if a >= n || b >= n || !base.has_edge(a, b) {
                let show = |i: usize| {
                    if i < n {
                        base.name(i).to_string()
                    } else {
                        format!("#{i}")
                    }
                };
                return Err(Error::NotAnEdge(format!("{}-{}", show(a), show(b))));
            }
            let e = (a.min(b), a.max(b));
            normalized.push(e);
            match distinct.iter().position(|&d| d == e) {
                Some(d) => {
                    mult[d] += 1;
                    class.push(d);
                }
                None => {
                    distinct.push(e);
                    mult.push(1);
                    class.push(distinct.len() - 1);
                }
            }
        }
        Ok(EdgeProduct {
            base: base.clone(),
            edges: normalized,
            distinct,
            mult,
            class,
        })
    }

    /// Builds a product from vertex-name pairs of `base`.
    pub fn new<S: AsRef<str>>(base: &Graph, edges: &[(S, S)]) -> Result<Self> {
        let idx = edges
            .iter()
            .map(|(a, b)| Ok((base.require(a.as_ref())?, base.require(b.as_ref())?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(base, &idx)
    }

    /// Parses `u-v,u-v,…`.
    pub fn parse(base: &Graph, text: &str) -> Result<Self> {
        let pairs = text
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.split_once('-')
                    .filter(|(a, b)| !a.is_empty() && !b.is_empty())
                    .ok_or_else(|| Error::InvalidArgument(format!("bad product edge `{tok}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(base, &pairs)
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    /// `s`, the number of factors counted with multiplicity.
    pub fn s(&self) -> usize {
        self.edges.len()
    }

    /// `e_1, …, e_s` as sorted index pairs.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Distinct factors in order of first appearance.
    pub fn distinct(&self) -> &[(usize, usize)] {
        &self.distinct
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.mult
    }

    /// Removes factor `i` (0-based), or `None` when it is the only one.
    pub fn without(&self, i: usize) -> Option<EdgeProduct> {
        let mut rest = self.edges.clone();
        rest.remove(i);
        (!rest.is_empty()).then(|| Self::from_indices(&self.base, &rest).expect("edges of base"))
    }

    /// The factors that are edges of `h`, moved into `h` by vertex name.
    pub fn restricted_to(&self, h: &Graph) -> Option<EdgeProduct> {
        let kept: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                let a = h.index_of(self.base.name(a))?;
                let b = h.index_of(self.base.name(b))?;
                h.has_edge(a, b).then_some((a, b))
            })
            .collect();
        (!kept.is_empty()).then(|| Self::from_indices(h, &kept).expect("edges of h"))
    }

    /// `e_1⋯e_s` in the ring of [`crate::monomial::edge_ideal`] of the base.
    pub fn monomial(&self) -> Monomial {
        let mut m = Monomial::one(self.base.vertex_count());
        for &(a, b) in &self.edges {
            m = m.mul(&Monomial::from_indices(&[a, b], self.base.vertex_count()));
        }
        m
    }
}

impl fmt::Display for EdgeProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}-{}", self.base.name(a), self.base.name(b))?;
        }
        Ok(())
    }
}

/// A walk `p_0 ⋯ p_{2k+1}` witnessing an even-connection.
///
/// `assignment[ℓ]` is the index into [`EdgeProduct::edges`] of the factor
/// used by the step `p_{2ℓ+1} p_{2ℓ+2}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessPath {
    pub vertices: Vec<usize>,
    pub assignment: Vec<usize>,
}

impl WitnessPath {
    /// `k`, the number of product steps.
    pub fn k(&self) -> usize {
        self.assignment.len()
    }

    pub fn names(&self, g: &Graph) -> Vec<String> {
        self.vertices
            .iter()
            .map(|&v| g.name(v).to_string())
            .collect()
    }

    /// Checks every condition of an even-connection from scratch, reporting
    /// the first one violated.
    pub fn validate(&self, p: &EdgeProduct) -> std::result::Result<(), String> {
        let g = p.base();
        let len = self.vertices.len();
        if len < 4 || !len.is_multiple_of(2) {
            return Err(format!("walk has {len} vertices; need 2k+2 with k ≥ 1"));
        }
        let k = (len - 2) / 2;
        if self.assignment.len() != k {
            return Err(format!(
                "{} assigned factors for {k} product steps",
                self.assignment.len()
            ));
        }
        if let Some(&v) = self.vertices.iter().find(|&&v| v >= g.vertex_count()) {
            return Err(format!("vertex index {v} out of range"));
        }
        for r in 0..len - 1 {
            let (a, b) = (self.vertices[r], self.vertices[r + 1]);
            if !g.has_edge(a, b) {
                return Err(format!(
                    "step {r} ({}, {}) is not an edge",
                    g.name(a),
                    g.name(b)
                ));
            }
        }
        let mut used = vec![false; p.s()];
        let mut count = vec![0usize; p.distinct().len()];
        for (l, &i) in self.assignment.iter().enumerate() {
            let Some(&(a, b)) = p.edges().get(i) else {
                return Err(format!("step {l} assigned to missing factor {i}"));
            };
            let (u, v) = (self.vertices[2 * l + 1], self.vertices[2 * l + 2]);
            if (u.min(v), u.max(v)) != (a, b) {
                return Err(format!("step {l} does not traverse its assigned factor"));
            }
            if std::mem::replace(&mut used[i], true) {
                return Err(format!("factor {i} assigned twice"));
            }
            count[p.class[i]] += 1;
        }
        if let Some(d) = (0..count.len()).find(|&d| count[d] > p.mult[d]) {
            return Err(format!("distinct factor {d} used beyond its multiplicity"));
        }
        Ok(())
    }
}

/// State space of the search: (vertex, phase, remaining multiplicities).
///
/// In phase `FREE` the next step is an arbitrary edge; in phase `PRODUCT`
/// the next step must consume a product factor. A walk ends after a free
/// step, so targets are states in phase `PRODUCT` with some factor used.
struct Space<'a> {
    p: &'a EdgeProduct,
    radix: Vec<usize>,
    rem_states: usize,
    full: usize,
}

const FREE: usize = 0;
const PRODUCT: usize = 1;

impl<'a> Space<'a> {
    fn new(p: &'a EdgeProduct) -> Self {
        let mut radix = Vec::with_capacity(p.mult.len());
        let mut rem_states = 1usize;
        let mut full = 0usize;
        for &m in &p.mult {
            radix.push(rem_states);
            full += m * rem_states;
            rem_states *= m + 1;
        }
        Space {
            p,
            radix,
            rem_states,
            full,
        }
    }

    fn encode(&self, v: usize, phase: usize, rem: usize) -> usize {
        (v * 2 + phase) * self.rem_states + rem
    }

    fn decode(&self, s: usize) -> (usize, usize, usize) {
        let rem = s % self.rem_states;
        let vp = s / self.rem_states;
        (vp / 2, vp % 2, rem)
    }

    fn size(&self) -> usize {
        self.p.base.vertex_count() * 2 * self.rem_states
    }

    fn remaining(&self, rem: usize, d: usize) -> usize {
        rem / self.radix[d] % (self.p.mult[d] + 1)
    }

    fn is_target(&self, s: usize) -> bool {
        let (_, phase, rem) = self.decode(s);
        phase == PRODUCT && rem != self.full
    }

    /// Successors of `s` as `(next vertex, next state, factor class used)`,
    /// in increasing vertex order.
    fn successors(&self, s: usize, out: &mut Vec<(usize, usize, Option<usize>)>) {
        out.clear();
        let (v, phase, rem) = self.decode(s);
        let g = &self.p.base;
        if phase == FREE {
            for w in bits(g.neighbors(v)) {
                out.push((w, self.encode(w, PRODUCT, rem), None));
            }
        } else {
            for (d, &(a, b)) in self.p.distinct.iter().enumerate() {
                let w = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if self.remaining(rem, d) > 0 {
                    out.push((w, self.encode(w, FREE, rem - self.radix[d]), Some(d)));
                }
            }
            out.sort_unstable_by_key(|&(w, _, _)| w);
        }
    }
}

/// Shortest witness from `u` to `v`, ties broken by the lexicographically
/// smallest vertex-index sequence; `None` when they are not even-connected.
pub fn is_even_connected(p: &EdgeProduct, u: usize, v: usize) -> Option<WitnessPath> {
    let n = p.base.vertex_count();
    if u >= n || v >= n {
        return None;
    }
    let space = Space::new(p);
    let mut seen = vec![false; space.size()];
    let start = space.encode(u, FREE, space.full);
    seen[start] = true;
    // Each layer is kept in lexicographic order of its walks: parents are
    // expanded in order and children in increasing vertex order.
    let mut layer: Vec<(usize, Vec<usize>, Vec<usize>)> = vec![(start, vec![u], Vec::new())];
    let mut succ = Vec::new();
    while !layer.is_empty() {
        if let Some((_, walk, classes)) = layer
            .iter()
            .find(|(s, walk, _)| space.is_target(*s) && walk.last() == Some(&v))
        {
            return Some(assign(p, walk.clone(), classes));
        }
        let mut next = Vec::new();
        for (s, walk, classes) in &layer {
            space.successors(*s, &mut succ);
            for &(w, t, d) in &succ {
                if !std::mem::replace(&mut seen[t], true) {
                    let mut walk = walk.clone();
                    walk.push(w);
                    let mut classes = classes.clone();
                    classes.extend(d);
                    next.push((t, walk, classes));
                }
            }
        }
        layer = next;
    }
    None
}

/// Turns the factor classes used along a walk into factor indices, giving
/// the ℓ-th use of a class its ℓ-th occurrence.
fn assign(p: &EdgeProduct, vertices: Vec<usize>, classes: &[usize]) -> WitnessPath {
    let mut next_use = vec![0usize; p.distinct.len()];
    let assignment = classes
        .iter()
        .map(|&d| {
            let i = (0..p.s())
                .filter(|&i| p.class[i] == d)
                .nth(next_use[d])
                .expect("multiplicity respected by the search");
            next_use[d] += 1;
            i
        })
        .collect();
    WitnessPath {
        vertices,
        assignment,
    }
}

/// Mask of all vertices even-connected to `u`.
pub fn even_connected_set(p: &EdgeProduct, u: usize) -> u64 {
    let space = Space::new(p);
    let mut seen = vec![false; space.size()];
    let start = space.encode(u, FREE, space.full);
    seen[start] = true;
    let mut queue = vec![start];
    let mut found = 0u64;
    let mut succ = Vec::new();
    while let Some(s) = queue.pop() {
        if space.is_target(s) {
            found |= 1 << space.decode(s).0;
        }
        space.successors(s, &mut succ);
        for &(_, t, _) in &succ {
            if !std::mem::replace(&mut seen[t], true) {
                queue.push(t);
            }
        }
    }
    found
}

/// Calls `f` on every even-connection walk with at most `k_max` product
/// steps, stopping early when `f` returns `false`. Fails once more than
/// `max_walks` walks have been produced.
pub(crate) fn for_each_walk(
    p: &EdgeProduct,
    k_max: usize,
    max_walks: usize,
    mut f: impl FnMut(&[usize]) -> bool,
) -> Result<()> {
    struct Dfs<'a, F> {
        space: Space<'a>,
        k_max: usize,
        max_walks: usize,
        produced: usize,
        walk: Vec<usize>,
        f: F,
    }
    impl<F: FnMut(&[usize]) -> bool> Dfs<'_, F> {
        // Returns false to stop.
        fn go(&mut self, s: usize, k: usize) -> Result<bool> {
            if self.space.is_target(s) {
                self.produced += 1;
                if self.produced > self.max_walks {
                    return Err(Error::budget("max-walks", self.max_walks, self.produced));
                }
                if !(self.f)(&self.walk) {
                    return Ok(false);
                }
                if k == self.k_max {
                    return Ok(true);
                }
            }
            let mut succ = Vec::new();
            self.space.successors(s, &mut succ);
            for (w, t, d) in succ {
                self.walk.push(w);
                let more = self.go(t, k + d.map_or(0, |_| 1))?;
                self.walk.pop();
                if !more {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
    let mut dfs = Dfs {
        space: Space::new(p),
        k_max,
        max_walks,
        produced: 0,
        walk: Vec::new(),
        f: &mut f,
    };
    for u in 0..p.base.vertex_count() {
        dfs.walk = vec![u];
        let start = dfs.space.encode(u, FREE, dfs.space.full);
        if !dfs.go(start, 0)? {
            break;
        }
    }
    Ok(())
}
