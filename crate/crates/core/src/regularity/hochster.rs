//! Hochster's formula: `β_{i,σ}(R/I) = dim H̃_{|σ|-i-1}(Δ_σ)`, so a
//! vertex set `σ` with `H̃_d(Δ_σ) ≠ 0` contributes `d + 2` to `reg(I)`.
//!
//! Only unions of generator supports can carry Betti numbers. If `σ` needs
//! at least `c(σ)` generators to cover it, the Taylor resolution gives
//! `i ≥ c(σ)` and hence a contribution of at most `|σ| - c(σ) + 1`; vertex
//! sets are visited in decreasing order of that bound until it drops below
//! the best value found.

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::homology::ranks_of_faces;
use super::{check_proper, stanley_reisner_complex, Field, Method, RegularityReport, Witness};
use crate::error::{Error, Result};
use crate::graph::bits;
use crate::monomial::MonomialIdeal;
use crate::Budget;

pub fn regularity_squarefree(ideal: &MonomialIdeal, field: Field) -> Result<RegularityReport> {
    regularity_squarefree_with(ideal, field, &Budget::default())
}

pub fn regularity_squarefree_with(
    ideal: &MonomialIdeal,
    field: Field,
    budget: &Budget,
) -> Result<RegularityReport> {
    check_proper(ideal)?;
    if !ideal.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    // Variables outside every generator are cone points of Δ and never lie
    // in a union of supports, so the computation runs on the used ones.
    let mut used: Vec<usize> = ideal
        .gens()
        .iter()
        .flat_map(|g| g.factors().map(|(i, _)| i))
        .collect();
    used.sort_unstable();
    used.dedup();
    let k = used.len();
    if k > budget.max_hochster_vars {
        return Err(Error::budget(
            "max-hochster-vars",
            budget.max_hochster_vars,
            k,
        ));
    }
    let supports: Vec<u64> = ideal
        .gens()
        .iter()
        .map(|g| {
            g.factors()
                .map(|(i, _)| used.binary_search(&i).expect("used variable"))
                .fold(0u64, |m, j| m | 1 << j)
        })
        .collect();

    let mut atoms = supports.clone();
    atoms.sort_unstable();
    atoms.dedup();
    let nonface = nonface_table(k, &atoms);
    let lattice = union_lattice(&supports, budget)?;

    let mut candidates: Vec<(u32, u64)> = lattice
        .into_iter()
        .map(|(sigma, c)| (sigma.count_ones() + 1 - c, sigma))
        .collect();
    candidates.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));

    let mut best = 0u32;
    let mut found: Vec<(u64, i32)> = Vec::new();
    let mut start = 0;
    while start < candidates.len() {
        let bound = candidates[start].0;
        if bound < best {
            break;
        }
        let end = start + candidates[start..].partition_point(|c| c.0 == bound);
        let results: Vec<Result<Vec<i32>>> = candidates[start..end]
            .par_iter()
            .map(|&(_, sigma)| nonzero_dims(sigma, &atoms, &nonface, field, budget))
            .collect();
        for (&(_, sigma), dims) in candidates[start..end].iter().zip(results) {
            for d in dims? {
                let contribution = (d + 2) as u32;
                debug_assert!(contribution <= bound);
                if contribution > best {
                    best = contribution;
                    found.clear();
                }
                if contribution == best {
                    found.push((sigma, d));
                }
            }
        }
        start = end;
    }

    let vars = ideal.vars();
    let mut witnesses: Vec<Witness> = found
        .into_iter()
        .map(|(sigma, dim)| Witness {
            sigma: bits(sigma).map(|j| vars[used[j]].clone()).collect(),
            dim,
        })
        .collect();
    witnesses.sort();
    Ok(RegularityReport {
        ideal: ideal.digest(),
        reg: best,
        method: Method::Hochster,
        field,
        witnesses,
        polarized: false,
    })
}

/// Bitset over all subsets of `k` variables marking those that contain a
/// generator support.
fn nonface_table(k: usize, supports: &[u64]) -> Vec<u64> {
    let size = 1usize << k;
    let mut words = vec![0u64; size.div_ceil(64)];
    for &s in supports {
        words[(s / 64) as usize] |= 1 << (s % 64);
    }
    // Close upwards one variable at a time.
    const LOW: [u64; 6] = [
        0x5555_5555_5555_5555,
        0x3333_3333_3333_3333,
        0x0f0f_0f0f_0f0f_0f0f,
        0x00ff_00ff_00ff_00ff,
        0x0000_ffff_0000_ffff,
        0x0000_0000_ffff_ffff,
    ];
    for v in 0..k {
        if v < 6 {
            for w in words.iter_mut() {
                *w |= (*w & LOW[v]) << (1 << v);
            }
        } else {
            let step = 1usize << (v - 6);
            for idx in 0..words.len() {
                if idx & step != 0 {
                    words[idx] |= words[idx ^ step];
                }
            }
        }
    }
    words
}

fn is_nonface(table: &[u64], f: u64) -> bool {
    table[(f / 64) as usize] >> (f % 64) & 1 == 1
}

/// Unions of generator supports, each with the least number of supports
/// needed to produce it.
fn union_lattice(supports: &[u64], budget: &Budget) -> Result<FxHashMap<u64, u32>> {
    let mut seen: FxHashMap<u64, u32> = FxHashMap::default();
    let mut atoms: Vec<u64> = supports.to_vec();
    atoms.sort_unstable();
    atoms.dedup();
    let mut layer = atoms.clone();
    for &a in &atoms {
        seen.insert(a, 1);
    }
    let mut c = 1;
    while !layer.is_empty() {
        c += 1;
        let mut next = Vec::new();
        for &x in &layer {
            for &a in &atoms {
                let y = x | a;
                if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(y) {
                    e.insert(c);
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

/// Degrees `d` with `H̃_d(Δ_σ) ≠ 0`.
///
/// When few generator supports lie inside `σ` it is cheaper to go through
/// the Alexander dual of `Δ_σ`, whose facets are the complements in `σ` of
/// those supports. Its nerve has a face for each set of supports whose
/// union is not `σ`, and `H̃_d(Δ_σ) ≅ H̃^{|σ|-d-3}` of that nerve.
fn nonzero_dims(
    sigma: u64,
    supports: &[u64],
    nonface: &[u64],
    field: Field,
    budget: &Budget,
) -> Result<Vec<i32>> {
    let inside: Vec<u64> = supports
        .iter()
        .copied()
        .filter(|&s| s & !sigma == 0)
        .collect();
    let n = sigma.count_ones() as i32;
    if inside.len() < n as usize {
        let faces = nerve_faces(sigma, &inside, budget)?;
        return Ok(positive_degrees(&ranks_of_faces(&faces, field, true))
            .map(|j| n - j - 3)
            .collect());
    }
    let verts: Vec<usize> = bits(sigma).collect();
    let mut faces = Vec::new();
    // Depth-first over faces, adding vertices in increasing order.
    let mut stack = vec![(0u64, 0usize)];
    while let Some((face, from)) = stack.pop() {
        faces.push(face);
        if faces.len() > budget.max_faces {
            return Err(Error::budget("max-faces", budget.max_faces, faces.len()));
        }
        for (j, &v) in verts.iter().enumerate().skip(from) {
            let next = face | 1 << v;
            if !is_nonface(nonface, next) {
                stack.push((next, j + 1));
            }
        }
    }
    Ok(positive_degrees(&ranks_of_faces(&faces, field, true)).collect())
}

fn positive_degrees(ranks: &[usize]) -> impl Iterator<Item = i32> + '_ {
    ranks
        .iter()
        .enumerate()
        .filter(|(_, &r)| r > 0)
        .map(|(i, _)| i as i32 - 1)
}

/// Sets of supports, as masks over `inside`, whose union is not `sigma`.
fn nerve_faces(sigma: u64, inside: &[u64], budget: &Budget) -> Result<Vec<u64>> {
    let mut faces = Vec::new();
    let mut stack = vec![(0u64, 0u64, 0usize)];
    while let Some((mask, union, from)) = stack.pop() {
        faces.push(mask);
        if faces.len() > budget.max_faces {
            return Err(Error::budget("max-faces", budget.max_faces, faces.len()));
        }
        for (j, &s) in inside.iter().enumerate().skip(from) {
            if union | s != sigma {
                stack.push((mask | 1 << j, union | s, j + 1));
            }
        }
    }
    Ok(faces)
}

/// Recomputes `H̃_dim` of the restricted Stanley–Reisner complex named by a
/// Hochster witness, from facets and without reductions.
pub fn verify_witness(ideal: &MonomialIdeal, witness: &Witness, field: Field) -> Result<bool> {
    let delta = stanley_reisner_complex(ideal)?;
    let mut sigma = 0u64;
    for name in &witness.sigma {
        let i = ideal
            .var_index(name)
            .ok_or_else(|| Error::UnknownVertex(name.clone()))?;
        sigma |= 1 << i;
    }
    let ranks = ranks_of_faces(&delta.induced(sigma).faces(), field, false);
    let idx = (witness.dim + 1) as usize;
    Ok(witness.dim >= -1 && ranks.get(idx).is_some_and(|&r| r > 0))
}
