//! Reduced simplicial homology over the rationals or a prime field.
//!
//! Faces are bitmasks and the empty face is a cell of dimension `-1`
//! (augmented chain complex). Before any linear algebra the complex is
//! shrunk by elementary reductions: a cell with exactly one remaining
//! coface is removed together with that coface. Such a pair has an
//! invertible incidence and no other boundary touches the smaller cell, so
//! the reduction changes no other boundary entry and preserves homology.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rustc_hash::FxHashMap;

use super::{Field, SimplicialComplex};
use crate::error::{Error, Result};
use crate::graph::bits;
use crate::Budget;

/// Ranks of `H̃_d` for `d = -1, 0, 1, …`; entry `i` is dimension `i - 1`.
/// The void complex yields an empty vector.
pub fn reduced_homology_ranks(c: &SimplicialComplex, field: Field) -> Result<Vec<usize>> {
    reduced_homology_ranks_with(c, field, &Budget::default())
}

pub fn reduced_homology_ranks_with(
    c: &SimplicialComplex,
    field: Field,
    budget: &Budget,
) -> Result<Vec<usize>> {
    let faces = c.faces();
    if faces.len() > budget.max_faces {
        return Err(Error::budget("max-faces", budget.max_faces, faces.len()));
    }
    Ok(ranks_of_faces(&faces, field, true))
}

/// Homology of a face list that is closed under taking subsets. With
/// `collapse` unset the boundary matrices of the whole complex are used.
pub(crate) fn ranks_of_faces(faces: &[u64], field: Field, collapse: bool) -> Vec<usize> {
    if faces.is_empty() {
        return Vec::new();
    }
    let top = faces
        .iter()
        .map(|f| f.count_ones() as usize)
        .max()
        .unwrap_or(0);
    let mut counts = vec![0usize; top + 1];
    for f in faces {
        counts[f.count_ones() as usize] += 1;
    }

    let index: FxHashMap<u64, usize> = faces.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    debug_assert!(faces.len() > 4096 || boundary_squares_to_zero(faces));
    let mut alive = vec![true; faces.len()];
    if collapse {
        reduce(faces, &index, &mut alive);
    }

    let mut cells: Vec<Vec<u64>> = vec![Vec::new(); top + 1];
    for (i, &f) in faces.iter().enumerate() {
        if alive[i] {
            cells[f.count_ones() as usize].push(f);
        }
    }
    let mut ranks = vec![0usize; top + 1];
    let nonempty: Vec<usize> = (0..=top).filter(|&k| !cells[k].is_empty()).collect();
    if nonempty.len() == 1 {
        // Cells in a single dimension: every boundary map vanishes.
        ranks[nonempty[0]] = cells[nonempty[0]].len();
    } else if !nonempty.is_empty() {
        // boundary[k] is the map from cells of size k to cells of size k-1.
        let mut boundary = vec![0usize; top + 2];
        for k in 1..=top {
            boundary[k] = boundary_rank(&cells[k], &cells[k - 1], field);
        }
        for k in 0..=top {
            ranks[k] = cells[k].len() - boundary[k] - boundary[k + 1];
        }
    }

    let chi: i64 = (0..=top).map(|k| sign(k) * counts[k] as i64).sum();
    let chi_h: i64 = (0..=top).map(|k| sign(k) * ranks[k] as i64).sum();
    assert_eq!(chi, chi_h, "Euler characteristic disagrees with homology");
    ranks
}

/// Checks `∂∘∂ = 0` for the incidence signs used by [`boundary_rank`].
fn boundary_squares_to_zero(faces: &[u64]) -> bool {
    faces.iter().all(|&t| {
        let mut acc: FxHashMap<u64, i64> = FxHashMap::default();
        for (i, v) in bits(t).enumerate() {
            let s = t & !(1 << v);
            for (j, w) in bits(s).enumerate() {
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                *acc.entry(s & !(1 << w)).or_default() += sign;
            }
        }
        acc.values().all(|&x| x == 0)
    })
}

/// `(-1)^(k-1)`, the sign of cells with `k` vertices in the reduced Euler
/// characteristic.
fn sign(k: usize) -> i64 {
    if k % 2 == 1 {
        1
    } else {
        -1
    }
}

fn reduce(faces: &[u64], index: &FxHashMap<u64, usize>, alive: &mut [bool]) {
    let universe = faces.iter().fold(0u64, |m, &f| m | f);
    let mut cofaces = vec![0u32; faces.len()];
    for &t in faces {
        for v in bits(t) {
            cofaces[index[&(t & !(1 << v))]] += 1;
        }
    }
    let mut stack: Vec<usize> = (0..faces.len()).filter(|&i| cofaces[i] == 1).collect();
    while let Some(s) = stack.pop() {
        if !alive[s] || cofaces[s] != 1 {
            continue;
        }
        let sigma = faces[s];
        let t = bits(universe & !sigma)
            .filter_map(|v| index.get(&(sigma | 1 << v)).copied())
            .find(|&t| alive[t])
            .expect("coface count is exact");
        alive[s] = false;
        alive[t] = false;
        for cell in [faces[t], sigma] {
            for v in bits(cell) {
                let r = index[&(cell & !(1 << v))];
                cofaces[r] -= 1;
                if alive[r] && cofaces[r] == 1 {
                    stack.push(r);
                }
            }
        }
    }
}

/// Rank of the boundary map from `upper` cells to `lower` cells, one vertex
/// smaller. The incidence of `τ ∖ v` in `∂τ` is `(-1)^i` where `v` is the
/// `i`-th vertex of `τ`.
fn boundary_rank(upper: &[u64], lower: &[u64], field: Field) -> usize {
    if upper.is_empty() || lower.is_empty() {
        return 0;
    }
    let row: FxHashMap<u64, usize> = lower.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let mut m = vec![vec![0i64; upper.len()]; lower.len()];
    for (j, &t) in upper.iter().enumerate() {
        for (i, v) in bits(t).enumerate() {
            if let Some(&r) = row.get(&(t & !(1 << v))) {
                m[r][j] = if i % 2 == 0 { 1 } else { -1 };
            }
        }
    }
    matrix_rank(m, field)
}

/// Exact rank of an integer matrix over `field`.
pub fn matrix_rank(m: Vec<Vec<i64>>, field: Field) -> usize {
    match field {
        Field::Rationals => {
            let small: Vec<Vec<i128>> = m
                .iter()
                .map(|r| r.iter().map(|&x| x as i128).collect())
                .collect();
            bareiss_rank(small).unwrap_or_else(|| {
                let big = m
                    .into_iter()
                    .map(|r| r.into_iter().map(BigInt::from).collect())
                    .collect();
                bareiss_rank(big).expect("big integers do not overflow")
            })
        }
        Field::Gf(p) => modular_rank(m, p as u64),
    }
}

/// Integer arithmetic for fraction-free elimination.
trait Exact: Clone {
    fn is_zero(&self) -> bool;
    /// `(a·b - c·d) / e`, the division being exact; `None` on overflow.
    fn cross(a: &Self, b: &Self, c: &Self, d: &Self, e: &Self) -> Option<Self>;
    fn one() -> Self;
    fn zero() -> Self;
}

impl Exact for i128 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn cross(a: &Self, b: &Self, c: &Self, d: &Self, e: &Self) -> Option<Self> {
        Some(a.checked_mul(*b)?.checked_sub(c.checked_mul(*d)?)? / e)
    }
    fn one() -> Self {
        1
    }
    fn zero() -> Self {
        0
    }
}

impl Exact for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn cross(a: &Self, b: &Self, c: &Self, d: &Self, e: &Self) -> Option<Self> {
        Some((a * b - c * d) / e)
    }
    fn one() -> Self {
        One::one()
    }
    fn zero() -> Self {
        Zero::zero()
    }
}

/// Bareiss elimination; every intermediate entry is a minor of the input.
fn bareiss_rank<T: Exact>(mut m: Vec<Vec<T>>) -> Option<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = T::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (head, tail) = m.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            for j in c + 1..cols {
                row[j] = T::cross(&pivot_row[c], &row[j], &row[c], &pivot_row[j], &prev)?;
            }
            row[c] = T::zero();
        }
        prev = pivot_row[c].clone();
        r += 1;
    }
    Some(r)
}

fn modular_rank(m: Vec<Vec<i64>>, p: u64) -> usize {
    let mut a: Vec<Vec<u64>> = m
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| x.rem_euclid(p as i64) as u64)
                .collect()
        })
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = pow_mod(a[r][c], p - 2, p);
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            if row[c] == 0 {
                continue;
            }
            let f = row[c] * inv % p;
            for j in c..cols {
                row[j] = (row[j] + p - f * pivot_row[j] % p) % p;
            }
        }
        r += 1;
    }
    r
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}
