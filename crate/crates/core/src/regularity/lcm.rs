//! Regularity from the lcm lattice of the minimal generators.
//!
//! For a lattice element `b`, `β_{i,b}(I) = dim H̃_{i-1}(Γ_b)` where `Γ_b`
//! is the complex of sets of generators dividing `b` whose lcm is not `b`.
//! A nonzero `H̃_d(Γ_b)` contributes `deg b - d - 1` to `reg(I)`. The Taylor
//! bound `i + 1 ≥ c(b)`, with `c(b)` the least number of generators whose
//! lcm is `b`, caps that contribution at `deg b - c(b) + 1`.

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::homology::ranks_of_faces;
use super::{check_proper, Field, Method, RegularityReport, Witness};
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::Budget;

pub fn regularity_lcm_lattice(ideal: &MonomialIdeal, field: Field) -> Result<RegularityReport> {
    regularity_lcm_lattice_with(ideal, field, &Budget::default())
}

pub fn regularity_lcm_lattice_with(
    ideal: &MonomialIdeal,
    field: Field,
    budget: &Budget,
) -> Result<RegularityReport> {
    check_proper(ideal)?;
    let gens = ideal.gens();
    if gens.len() > budget.max_lcm_generators {
        return Err(Error::budget(
            "max-lcm-generators",
            budget.max_lcm_generators,
            gens.len(),
        ));
    }
    let lattice = lcm_lattice(gens, budget)?;
    let mut candidates: Vec<(u32, Monomial)> = lattice
        .into_iter()
        .map(|(b, c)| (b.degree() + 1 - c, b))
        .collect();
    candidates.sort_unstable_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));

    let mut best = 0u32;
    let mut found: Vec<(Monomial, i32)> = Vec::new();
    let mut start = 0;
    while start < candidates.len() {
        let bound = candidates[start].0;
        if bound < best {
            break;
        }
        let end = start + candidates[start..].partition_point(|c| c.0 == bound);
        let results: Vec<Result<Vec<i32>>> = candidates[start..end]
            .par_iter()
            .map(|(_, b)| {
                let faces = crosscut_faces(gens, b, budget)?;
                Ok(nonzero(&ranks_of_faces(&faces, field, true)))
            })
            .collect();
        for ((_, b), dims) in candidates[start..end].iter().zip(results) {
            for d in dims? {
                let contribution = (b.degree() as i32 - d - 1) as u32;
                debug_assert!(contribution <= bound);
                if contribution > best {
                    best = contribution;
                    found.clear();
                }
                if contribution == best {
                    found.push((b.clone(), d));
                }
            }
        }
        start = end;
    }

    let vars = ideal.vars();
    let mut witnesses: Vec<Witness> = found
        .into_iter()
        .map(|(b, dim)| Witness {
            sigma: b
                .factors()
                .map(|(i, e)| {
                    if e == 1 {
                        vars[i].clone()
                    } else {
                        format!("{}^{e}", vars[i])
                    }
                })
                .collect(),
            dim,
        })
        .collect();
    witnesses.sort();
    Ok(RegularityReport {
        ideal: ideal.digest(),
        reg: best,
        method: Method::LcmLattice,
        field,
        witnesses,
        polarized: false,
    })
}

fn nonzero(ranks: &[usize]) -> Vec<i32> {
    ranks
        .iter()
        .enumerate()
        .filter(|(_, &r)| r > 0)
        .map(|(i, _)| i as i32 - 1)
        .collect()
}

/// Every lcm of a nonempty set of generators, with the least size of such
/// a set.
fn lcm_lattice(gens: &[Monomial], budget: &Budget) -> Result<FxHashMap<Monomial, u32>> {
    let mut seen: FxHashMap<Monomial, u32> = gens.iter().map(|g| (g.clone(), 1)).collect();
    let mut layer: Vec<Monomial> = gens.to_vec();
    let mut c = 1;
    while !layer.is_empty() {
        c += 1;
        let mut next = Vec::new();
        for x in &layer {
            for g in gens {
                let y = x.lcm(g);
                if !seen.contains_key(&y) {
                    seen.insert(y.clone(), c);
                    next.push(y);
                    if seen.len() > budget.max_lattice_size {
                        return Err(Error::budget(
                            "max-lattice-size",
                            budget.max_lattice_size,
                            seen.len(),
                        ));
                    }
                }
            }
        }
        layer = next;
    }
    Ok(seen)
}

/// Faces of `Γ_b` as masks over the generators dividing `b`, `∅` included.
/// A set whose lcm is `b` is not a face, and neither is any superset.
fn crosscut_faces(gens: &[Monomial], b: &Monomial, budget: &Budget) -> Result<Vec<u64>> {
    let below: Vec<&Monomial> = gens.iter().filter(|g| g.divides(b)).collect();
    let mut faces = Vec::new();
    let mut stack = vec![(0u64, Monomial::one(b.nvars()), 0usize)];
    while let Some((mask, l, from)) = stack.pop() {
        faces.push(mask);
        if faces.len() > budget.max_faces {
            return Err(Error::budget("max-faces", budget.max_faces, faces.len()));
        }
        for (j, g) in below.iter().enumerate().skip(from) {
            let next = l.lcm(g);
            if &next != b {
                stack.push((mask | 1 << j, next, j + 1));
            }
        }
    }
    Ok(faces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::bits;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Faces of the order complex of the open interval `(1, b)` of the lcm
    /// lattice: chains of lattice elements strictly dividing `b`.
    fn order_complex_faces(lattice: &[Monomial], b: &Monomial) -> Vec<u64> {
        let inner: Vec<&Monomial> = lattice.iter().filter(|x| x.divides(b) && *x != b).collect();
        assert!(inner.len() <= 20);
        (0u64..1 << inner.len())
            .filter(|&m| {
                let chain: Vec<usize> = bits(m).collect();
                chain.iter().all(|&i| {
                    chain
                        .iter()
                        .all(|&j| inner[i].divides(inner[j]) || inner[j].divides(inner[i]))
                })
            })
            .collect()
    }

    #[test]
    fn crosscut_matches_order_complex() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut compared = 0;
        while compared < 200 {
            let n = rng.gen_range(2..=4);
            let gens: Vec<Monomial> = (0..rng.gen_range(2..=5))
                .map(|_| Monomial::from_exponents((0..n).map(|_| rng.gen_range(0..=2)).collect()))
                .collect();
            let vars: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
            let ideal = MonomialIdeal::new(&vars, gens).unwrap();
            if ideal.is_unit() || ideal.is_zero() {
                continue;
            }
            let lattice: Vec<Monomial> = lcm_lattice(ideal.gens(), &Budget::default())
                .unwrap()
                .into_keys()
                .collect();
            for b in &lattice {
                let oc = order_complex_faces(&lattice, b);
                if oc.len() > 4000 {
                    continue;
                }
                let cc = crosscut_faces(ideal.gens(), b, &Budget::default()).unwrap();
                assert_eq!(
                    ranks_of_faces(&cc, Field::Rationals, true),
                    ranks_of_faces(&oc, Field::Rationals, true),
                    "{ideal} at {}",
                    b.display(ideal.vars())
                );
                compared += 1;
            }
        }
    }

    #[test]
    fn examples() {
        let ab = MonomialIdeal::parse("a*b").unwrap();
        let r = regularity_lcm_lattice(&ab, Field::Rationals).unwrap();
        assert_eq!(r.reg, 2);
        assert_eq!(r.method, Method::LcmLattice);
        assert_eq!(r.witnesses[0].sigma, ["a", "b"]);
        assert_eq!(r.witnesses[0].dim, -1);
        let sq = MonomialIdeal::parse("a^2\na*b").unwrap();
        assert_eq!(
            regularity_lcm_lattice(&sq, Field::Rationals).unwrap().reg,
            2
        );
    }

    #[test]
    fn generator_budget() {
        let i = MonomialIdeal::parse("a\nb\nc").unwrap();
        let tight = Budget {
            max_lcm_generators: 2,
            ..Budget::default()
        };
        assert!(matches!(
            regularity_lcm_lattice_with(&i, Field::Rationals, &tight),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
