//! Graph family generators and a brute-force canonical form for
//! isomorphism deduplication at desk scale.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{bits, Graph, VwcLabeling};
use crate::error::{Error, Result};
use crate::Budget;

/// Largest graph accepted by [`canonical_form`].
pub const MAX_CANONICAL_VERTICES: usize = 10;

/// Minimum adjacency code over all vertex permutations.
///
/// The code reads the upper triangle column by column (`(0,1), (0,2), (1,2),
/// (0,3), …`) with the first pair as the most significant bit; two graphs are
/// isomorphic iff their codes (and vertex counts) agree. The search places
/// vertices one position at a time and prunes any prefix that already
/// exceeds the best code found.
pub fn canonical_form(g: &Graph) -> Result<(usize, u64)> {
    let n = g.vertex_count();
    if n > MAX_CANONICAL_VERTICES {
        return Err(Error::budget("canonical-form", MAX_CANONICAL_VERTICES, n));
    }
    let total = n * n.saturating_sub(1) / 2;
    let adj: Vec<u64> = (0..n).map(|v| g.neighbors(v)).collect();
    let mut best = u64::MAX;
    let mut order = Vec::with_capacity(n);
    place(&adj, n, total, &mut order, 0, 0, &mut best);
    Ok((n, if n < 2 { 0 } else { best }))
}

fn place(
    adj: &[u64],
    n: usize,
    total: usize,
    order: &mut Vec<usize>,
    used: u64,
    code: u64,
    best: &mut u64,
) {
    let k = order.len();
    if k == n {
        *best = (*best).min(code);
        return;
    }
    // Bits for columns 0..k are fixed; they occupy the top k(k-1)/2 positions.
    for v in 0..n {
        if used >> v & 1 == 1 {
            continue;
        }
        let mut next = code;
        for (row, &u) in order.iter().enumerate() {
            if adj[u] >> v & 1 == 1 {
                let pos = k * (k - 1) / 2 + row;
                next |= 1 << (total - 1 - pos);
            }
        }
        let fixed = (k + 1) * k / 2;
        let shift = total - fixed;
        if *best != u64::MAX && next >> shift > *best >> shift {
            continue;
        }
        order.push(v);
        place(adj, n, total, order, used | 1 << v, next, best);
        order.pop();
    }
}

/// Two-colourability.
pub fn is_bipartite(g: &Graph) -> bool {
    let n = g.vertex_count();
    let mut color = vec![None; n];
    for s in 0..n {
        if color[s].is_some() {
            continue;
        }
        color[s] = Some(false);
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            let cu = color[u].expect("coloured on push");
            for w in bits(g.neighbors(u)) {
                match color[w] {
                    None => {
                        color[w] = Some(!cu);
                        stack.push(w);
                    }
                    Some(cw) if cw == cu => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

/// Every graph on `n` vertices (named `1..=n`) up to isomorphism, in order of
/// first appearance when edge subsets are counted upwards.
pub fn all_graphs(n: usize) -> Result<Vec<Graph>> {
    const MAX_N: usize = 6;
    if n > MAX_N {
        return Err(Error::budget("all-graphs", MAX_N, n));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for subset in 0u64..1 << pairs.len() {
        let mut g = super::path(n);
        g.adj.iter_mut().for_each(|a| *a = 0);
        for k in bits(subset) {
            let (i, j) = pairs[k];
            g.link(i, j);
        }
        if seen.insert(canonical_form(&g)?) {
            out.push(g);
        }
    }
    Ok(out)
}

/// Erdős–Rényi graph on vertices `1..=n`.
pub fn random_graph(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut g = super::path(n);
    g.adj.iter_mut().for_each(|a| *a = 0);
    for j in 0..n {
        for i in 0..j {
            if rng.gen_bool(p) {
                g.link(i, j);
            }
        }
    }
    g
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenerationMode {
    /// Every admissible edge subset, optionally keeping only the first
    /// member of each isomorphism class.
    Exhaustive { dedup: bool },
    /// Endless stream of random admissible graphs.
    Random { seed: u64 },
}

/// Stream of very well-covered graphs on `x1..xh, y1..yh` containing the
/// perfect matching `{x_i, y_i}`.
pub struct VwcFamily {
    h: usize,
    candidates: Vec<(usize, usize)>,
    mode: GenerationMode,
    next_subset: u64,
    end: u64,
    seen: HashSet<(usize, u64)>,
    rng: ChaCha8Rng,
}

/// Generates very well-covered graphs on `2h` vertices.
///
/// Candidate edges are `x_i x_j` and `x_i y_j`; a subset is emitted when the
/// graph satisfies both conditions of the characterization with respect to
/// the labeling `(x_i, y_i)`.
pub fn generate_vwc_family(h: usize, mode: GenerationMode, budget: &Budget) -> Result<VwcFamily> {
    if h == 0 {
        return Err(Error::InvalidArgument("h must be positive".into()));
    }
    if let GenerationMode::Exhaustive { .. } = mode {
        if h > budget.max_exhaustive_h {
            return Err(Error::budget(
                "max-exhaustive-h",
                budget.max_exhaustive_h,
                h,
            ));
        }
    }
    if 2 * h > budget.max_vertices {
        return Err(Error::budget("max-vertices", budget.max_vertices, 2 * h));
    }
    let mut candidates = Vec::new();
    for i in 0..h {
        for j in i + 1..h {
            candidates.push((i, j));
        }
    }
    for i in 0..h {
        for j in 0..h {
            if i != j {
                candidates.push((i, h + j));
            }
        }
    }
    let end = 1u64 << candidates.len().min(63);
    let seed = match mode {
        GenerationMode::Random { seed } => seed,
        _ => 0,
    };
    Ok(VwcFamily {
        h,
        candidates,
        mode,
        next_subset: 0,
        end,
        seen: HashSet::new(),
        rng: ChaCha8Rng::seed_from_u64(seed),
    })
}

impl VwcFamily {
    fn adjacency(&self, subset: impl Iterator<Item = usize>) -> Vec<u64> {
        let h = self.h;
        let mut adj = vec![0u64; 2 * h];
        for i in 0..h {
            adj[i] |= 1 << (h + i);
            adj[h + i] |= 1 << i;
        }
        for k in subset {
            let (a, b) = self.candidates[k];
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        adj
    }

    fn build(&self, adj: Vec<u64>) -> (Graph, VwcLabeling) {
        let h = self.h;
        let names: Vec<String> = (1..=h)
            .map(|i| format!("x{i}"))
            .chain((1..=h).map(|i| format!("y{i}")))
            .collect();
        let mut g = Graph::with_vertices(&names).expect("generated names are valid");
        g.adj = adj;
        let l = VwcLabeling {
            pairs: (0..h).map(|i| (i, h + i)).collect(),
        };
        (g, l)
    }
}

/// Both characterization conditions on raw adjacency, with `x_i = i` and
/// `y_i = h + i`.
fn admissible(adj: &[u64], h: usize) -> bool {
    let e = |a: usize, b: usize| adj[a] >> b & 1 == 1;
    for i in 0..h {
        for j in 0..h {
            if i == j {
                continue;
            }
            if e(i, h + j) && e(i, j) {
                return false;
            }
            for k in 0..h {
                if k == i || k == j || !e(h + j, k) {
                    continue;
                }
                for z in [i, h + i] {
                    if e(z, j) && !e(z, k) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

impl Iterator for VwcFamily {
    type Item = (Graph, VwcLabeling);

    fn next(&mut self) -> Option<Self::Item> {
        match self.mode {
            GenerationMode::Exhaustive { dedup } => {
                while self.next_subset < self.end {
                    let subset = self.next_subset;
                    self.next_subset += 1;
                    let adj = self.adjacency(bits(subset));
                    if !admissible(&adj, self.h) {
                        continue;
                    }
                    let (g, l) = self.build(adj);
                    if dedup && 2 * self.h <= MAX_CANONICAL_VERTICES {
                        let key = canonical_form(&g).expect("within canonical budget");
                        if !self.seen.insert(key) {
                            continue;
                        }
                    }
                    return Some((g, l));
                }
                None
            }
            GenerationMode::Random { .. } => loop {
                let density: f64 = self.rng.gen();
                let picks: Vec<usize> = (0..self.candidates.len())
                    .filter(|_| self.rng.gen_bool(density))
                    .collect();
                let adj = self.adjacency(picks.into_iter());
                if admissible(&adj, self.h) {
                    return Some(self.build(adj));
                }
            },
        }
    }
}

/// All very well-covered graphs with `1 <= h <= h_max` up to isomorphism.
pub fn vwc_pool(h_max: usize, budget: &Budget) -> Result<Vec<(Graph, VwcLabeling)>> {
    let mut out = Vec::new();
    for h in 1..=h_max {
        out.extend(generate_vwc_family(
            h,
            GenerationMode::Exhaustive { dedup: true },
            budget,
        )?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{
        check_vwc_characterization, cycle, is_very_well_covered, path, vwc_labeling,
    };

    /// Canonical form by trying every permutation.
    fn canonical_oracle(g: &Graph) -> u64 {
        fn perms(k: usize, cur: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
            if k == n {
                out.push(cur.clone());
                return;
            }
            for v in 0..n {
                if !cur.contains(&v) {
                    cur.push(v);
                    perms(k + 1, cur, n, out);
                    cur.pop();
                }
            }
        }
        let n = g.vertex_count();
        let total = n * (n - 1) / 2;
        let mut all = Vec::new();
        perms(0, &mut Vec::new(), n, &mut all);
        all.iter()
            .map(|p| {
                let mut code = 0u64;
                let mut pos = 0;
                for j in 1..n {
                    for i in 0..j {
                        if g.has_edge(p[i], p[j]) {
                            code |= 1 << (total - 1 - pos);
                        }
                        pos += 1;
                    }
                }
                code
            })
            .min()
            .unwrap()
    }

    #[test]
    fn canonical_form_matches_permutation_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let n = rng.gen_range(2..=6);
            let g = random_graph(n, 0.5, &mut rng);
            assert_eq!(canonical_form(&g).unwrap().1, canonical_oracle(&g));
        }
    }

    #[test]
    fn canonical_form_identifies_isomorphic_graphs() {
        let p4 = path(4);
        let other = Graph::from_edges(&[("c", "a"), ("a", "d"), ("d", "b")]).unwrap();
        assert_eq!(
            canonical_form(&p4).unwrap(),
            canonical_form(&other).unwrap()
        );
        assert_ne!(
            canonical_form(&p4).unwrap(),
            canonical_form(&cycle(4)).unwrap()
        );
    }

    #[test]
    fn graph_counts_up_to_isomorphism() {
        let counts: Vec<usize> = (1..=5).map(|n| all_graphs(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34]);
    }

    #[test]
    fn h1_is_a_single_edge() {
        let fam: Vec<_> = generate_vwc_family(
            1,
            GenerationMode::Exhaustive { dedup: false },
            &Budget::default(),
        )
        .unwrap()
        .collect();
        assert_eq!(fam.len(), 1);
        assert_eq!(fam[0].0.edge_count(), 1);
    }

    #[test]
    fn h2_contains_c4_and_all_pass_recognizer() {
        let fam: Vec<_> = generate_vwc_family(
            2,
            GenerationMode::Exhaustive { dedup: false },
            &Budget::default(),
        )
        .unwrap()
        .collect();
        let c4 = canonical_form(&cycle(4)).unwrap();
        assert!(fam.iter().any(|(g, _)| canonical_form(g).unwrap() == c4));
        for (g, l) in &fam {
            assert!(is_very_well_covered(g).unwrap(), "{}", g.digest());
            assert!(check_vwc_characterization(g, l).unwrap());
        }
        let pool = vwc_pool(2, &Budget::default()).unwrap();
        // K2, 2K2, P4, C4.
        assert_eq!(pool.len(), 4);
    }

    #[test]
    fn h3_contains_g_b() {
        let g_b = Graph::from_edges(&[
            ("x1", "y1"),
            ("x2", "y2"),
            ("x3", "y3"),
            ("x1", "y2"),
            ("x1", "y3"),
            ("x2", "y3"),
        ])
        .unwrap();
        let key = canonical_form(&g_b).unwrap();
        let fam = generate_vwc_family(
            3,
            GenerationMode::Exhaustive { dedup: false },
            &Budget::default(),
        )
        .unwrap();
        let mut found = false;
        for (g, _) in fam {
            assert!(is_very_well_covered(&g).unwrap());
            found |= canonical_form(&g).unwrap() == key;
        }
        assert!(found);
    }

    #[test]
    fn exhaustive_generation_is_complete_for_small_h() {
        // Every VWC graph on 6 vertices is isomorphic to a pool member.
        let pool: HashSet<_> = vwc_pool(3, &Budget::default())
            .unwrap()
            .iter()
            .map(|(g, _)| canonical_form(g).unwrap())
            .collect();
        for g in all_graphs(6).unwrap() {
            if is_very_well_covered(&g).unwrap() {
                assert!(
                    pool.contains(&canonical_form(&g).unwrap()),
                    "{}",
                    g.digest()
                );
                vwc_labeling(&g).unwrap();
            }
        }
    }

    #[test]
    fn random_mode_is_seeded() {
        let a: Vec<_> =
            generate_vwc_family(5, GenerationMode::Random { seed: 3 }, &Budget::default())
                .unwrap()
                .take(5)
                .map(|(g, _)| g.digest())
                .collect();
        let b: Vec<_> =
            generate_vwc_family(5, GenerationMode::Random { seed: 3 }, &Budget::default())
                .unwrap()
                .take(5)
                .map(|(g, _)| g.digest())
                .collect();
        assert_eq!(a, b);
    }

    #[test]
    fn budgets() {
        assert!(matches!(
            generate_vwc_family(
                5,
                GenerationMode::Exhaustive { dedup: false },
                &Budget::default()
            ),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(
            generate_vwc_family(0, GenerationMode::Random { seed: 0 }, &Budget::default()).is_err()
        );
    }

    #[test]
    fn bipartite_check() {
        assert!(is_bipartite(&cycle(4)));
        assert!(!is_bipartite(&cycle(5)));
        assert!(is_bipartite(&path(5)));
    }
}
