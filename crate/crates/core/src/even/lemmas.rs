//! Exhaustive checks of the structural statements about the colon graph
//! `G′` of a very well-covered graph.
//!
//! Adjacency between original vertices is read off the colon ideal: `a` and
//! `b` are joined in `G′` when `ab` lies in `(I(G)^{s+1} : e_1⋯e_s)`.

use std::collections::HashSet;

use serde::Serialize;

use super::{colon_graph, colon_ideal_by_even_connections, for_each_walk, ColonGraph, EdgeProduct};
use crate::error::{Error, Result};
use crate::graph::{bits, Graph, VwcLabeling};

const MAX_WALKS: usize = 2_000_000;

/// Outcome of one structural statement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaCheck {
    pub lemma: &'static str,
    /// Number of hypothesis instances examined.
    pub instances: usize,
    pub pass: bool,
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructuralReport {
    pub checks: Vec<LemmaCheck>,
}

impl StructuralReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

struct Check {
    lemma: &'static str,
    instances: usize,
    counterexample: Option<String>,
}

impl Check {
    fn new(lemma: &'static str) -> Self {
        Check {
            lemma,
            instances: 0,
            counterexample: None,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(describe());
        }
    }

    fn finish(self) -> LemmaCheck {
        LemmaCheck {
            lemma: self.lemma,
            instances: self.instances,
            pass: self.counterexample.is_none(),
            counterexample: self.counterexample,
        }
    }
}

/// Runs the five structural checks for `G′` of `p` with `G` labeled by `l`.
pub fn verify_structural_lemmas(
    g: &Graph,
    l: &VwcLabeling,
    p: &EdgeProduct,
) -> Result<StructuralReport> {
    if p.base() != g {
        return Err(Error::InvalidArgument(
            "product is over another graph".into(),
        ));
    }
    l.validate(g)?;
    let ctx = Context::new(g, l, p)?;
    Ok(StructuralReport {
        checks: vec![
            ctx.useful(),
            ctx.even_obs()?,
            ctx.even_con_itself(),
            ctx.tech_lemma()?,
            ctx.ind_th_lemma()?,
        ],
    })
}

struct Context<'a> {
    g: &'a Graph,
    l: &'a VwcLabeling,
    p: &'a EdgeProduct,
    cg: ColonGraph,
    /// `conn[a]` holds every `b` with `ab` in the colon ideal, `b = a` included.
    conn: Vec<u64>,
}

impl<'a> Context<'a> {
    fn new(g: &'a Graph, l: &'a VwcLabeling, p: &'a EdgeProduct) -> Result<Self> {
        let n = g.vertex_count();
        let mut conn = vec![0u64; n];
        for m in colon_ideal_by_even_connections(p).gens() {
            let f: Vec<usize> = m.factors().map(|(i, _)| i).collect();
            let (a, b) = (f[0], *f.last().expect("degree two"));
            conn[a] |= 1 << b;
            conn[b] |= 1 << a;
        }
        Ok(Context {
            g,
            l,
            p,
            cg: colon_graph(p)?,
            conn,
        })
    }

    fn joined(&self, a: usize, b: usize) -> bool {
        self.conn[a] >> b & 1 == 1
    }

    fn name(&self, v: usize) -> &str {
        self.g.name(v)
    }

    /// For `t ∈ {x_i, y_i}` and distinct `i, j, k`: `t x_j` and `y_j x_k`
    /// in `G′` force `t x_k` or `t y_j` in `G′`.
    fn useful(&self) -> LemmaCheck {
        let mut c = Check::new("useful");
        let h = self.l.h();
        for i in 0..h {
            for t in [self.l.x(i), self.l.y(i)] {
                for j in (0..h).filter(|&j| j != i) {
                    let (xj, yj) = (self.l.x(j), self.l.y(j));
                    if !self.joined(t, xj) {
                        continue;
                    }
                    for k in (0..h).filter(|&k| k != i && k != j) {
                        let xk = self.l.x(k);
                        if !self.joined(yj, xk) {
                            continue;
                        }
                        c.record(self.joined(t, xk) || self.joined(t, yj), || {
                            format!(
                                "t={} x_j={} y_j={} x_k={}",
                                self.name(t),
                                self.name(xj),
                                self.name(yj),
                                self.name(xk)
                            )
                        });
                    }
                }
            }
        }
        c.finish()
    }

    /// For an even-connection from `u` to `v` and an original vertex `w`
    /// joined in `G′` to a vertex of the walk: `uw` or `vw` lies in `G′`.
    fn even_obs(&self) -> Result<LemmaCheck> {
        let mut c = Check::new("even_obs");
        let mut seen: HashSet<(usize, usize, u64)> = HashSet::new();
        for_each_walk(self.p, self.p.s(), MAX_WALKS, |walk| {
            let mask = walk.iter().fold(0u64, |m, &v| m | 1 << v);
            seen.insert((walk[0], walk[walk.len() - 1], mask));
            true
        })?;
        let mut walks: Vec<_> = seen.into_iter().collect();
        walks.sort_unstable();
        for (u, v, mask) in walks {
            for pi in bits(mask) {
                for w in bits(self.conn[pi] & !(1 << pi)) {
                    c.record(self.joined(u, w) || self.joined(v, w), || {
                        format!(
                            "walk {}..{} through {}, w={}",
                            self.name(u),
                            self.name(v),
                            self.name(pi),
                            self.name(w)
                        )
                    });
                }
            }
        }
        Ok(c.finish())
    }

    /// For `u` even-connected to itself with pair partner `ū`: every
    /// original `a ≠ b` with `a ~ ū` in `G′` and `b ∈ N_G[u, ū]` is joined
    /// to `b` in `G′`.
    fn even_con_itself(&self) -> LemmaCheck {
        let mut c = Check::new("even_con_itself");
        for &u in &self.cg.self_loops {
            let bar = self.l.partner(u).expect("labeling covers every vertex");
            let nb = self.g.closed_neighborhood(1 << u | 1 << bar);
            for a in bits(self.conn[bar] & !(1 << bar)) {
                for b in bits(nb & !(1 << a)) {
                    c.record(self.joined(a, b), || {
                        format!("u={} a={} b={}", self.name(u), self.name(a), self.name(b))
                    });
                }
            }
        }
        c.finish()
    }

    /// `G′ ∖ N_{G′}[y]` sits inside `H′` for `H = G ∖ N_G[y]`.
    fn tech_lemma(&self) -> Result<LemmaCheck> {
        let mut c = Check::new("tech_lemma");
        for y in 0..self.g.vertex_count() {
            let h = self.g.remove_vertices(self.g.closed_neighborhood(1 << y));
            let outcome = induced_in(&self.cg.gprime, y, &colon_graph_of_part(self.p, &h)?);
            c.record(outcome.is_none(), || {
                format!("y={}: {}", self.name(y), outcome.unwrap_or_default())
            });
        }
        Ok(c.finish())
    }

    /// `G′ ∖ N_{G′}[t]` sits inside `H′` for `u` even-connected to itself,
    /// `t ~ ū` in `G′` and `H = G ∖ N_G[u, ū]`.
    fn ind_th_lemma(&self) -> Result<LemmaCheck> {
        let mut c = Check::new("ind_th_lemma");
        for &u in &self.cg.self_loops {
            let bar = self.l.partner(u).expect("labeling covers every vertex");
            let h = self
                .g
                .remove_vertices(self.g.closed_neighborhood(1 << u | 1 << bar));
            let hp = colon_graph_of_part(self.p, &h)?;
            for t in bits(self.conn[bar] & !(1 << bar)) {
                let outcome = induced_in(&self.cg.gprime, t, &hp);
                c.record(outcome.is_none(), || {
                    format!(
                        "u={} t={}: {}",
                        self.name(u),
                        self.name(t),
                        outcome.unwrap_or_default()
                    )
                });
            }
        }
        Ok(c.finish())
    }
}

/// `H′` for the factors of `p` lying in `h`; with no such factor the colon
/// is `I(H)` itself.
fn colon_graph_of_part(p: &EdgeProduct, h: &Graph) -> Result<Graph> {
    match p.restricted_to(h) {
        Some(q) => Ok(colon_graph(&q)?.gprime),
        None => Ok(h.clone()),
    }
}

/// Checks that `gp ∖ N_{gp}[v]`, restricted to its non-isolated vertices,
/// is an induced subgraph of `hp` (vertices matched by name). Returns a
/// description of the first violation.
fn induced_in(gp: &Graph, v: usize, hp: &Graph) -> Option<String> {
    let a = gp.remove_vertices(gp.closed_neighborhood(1 << v));
    let live = a.all_vertices() & !a.isolated_vertices();
    let mut map = Vec::with_capacity(a.vertex_count());
    for i in 0..a.vertex_count() {
        let j = hp.index_of(a.name(i));
        if live >> i & 1 == 1 && j.is_none() {
            return Some(format!("vertex {} missing from H′", a.name(i)));
        }
        map.push(j);
    }
    for i in bits(live) {
        for k in bits(live).filter(|&k| k > i) {
            let (Some(hi), Some(hk)) = (map[i], map[k]) else {
                unreachable!("live vertices are mapped")
            };
            if a.has_edge(i, k) != hp.has_edge(hi, hk) {
                return Some(format!(
                    "edge {}-{} present in {} only",
                    a.name(i),
                    a.name(k),
                    if a.has_edge(i, k) { "G′" } else { "H′" }
                ));
            }
        }
    }
    None
}
