use rustc_hash::FxHashSet;

use crate::error::{Error, Result};
use crate::graph::bits;
use crate::monomial::MonomialIdeal;
use crate::Budget;

/// A finite simplicial complex on at most 64 named vertices, stored by its
/// facets as bitmasks.
///
/// The void complex has no faces at all; the empty complex has the single
/// face `∅`. They differ in reduced homology: the empty complex has
/// `H̃_{-1} = K`, the void complex has nothing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    facets: Vec<u64>,
}

impl SimplicialComplex {
    /// Builds a complex from arbitrary generating faces; non-maximal ones
    /// are dropped.
    pub fn new<S: AsRef<str>>(vertices: &[S], faces: &[u64]) -> Result<Self> {
        if vertices.len() > 64 {
            return Err(Error::budget("max-vertices", 64, vertices.len()));
        }
        let universe = crate::graph::low_mask(vertices.len());
        if let Some(f) = faces.iter().find(|&&f| f & !universe != 0) {
            return Err(Error::InvalidArgument(format!(
                "face {f:#x} uses a vertex outside the complex"
            )));
        }
        let mut sorted: Vec<u64> = faces.to_vec();
        sorted.sort_unstable_by_key(|f| std::cmp::Reverse(f.count_ones()));
        sorted.dedup();
        let mut facets: Vec<u64> = Vec::new();
        for f in sorted {
            if !facets.iter().any(|&g| f & !g == 0) {
                facets.push(f);
            }
        }
        facets.sort_unstable();
        Ok(SimplicialComplex {
            vertices: vertices.iter().map(|v| v.as_ref().to_string()).collect(),
            facets,
        })
    }

    pub fn void<S: AsRef<str>>(vertices: &[S]) -> Result<Self> {
        Self::new(vertices, &[])
    }

    pub fn empty<S: AsRef<str>>(vertices: &[S]) -> Result<Self> {
        Self::new(vertices, &[0])
    }

    /// The full simplex on the given vertices.
    pub fn simplex<S: AsRef<str>>(vertices: &[S]) -> Result<Self> {
        Self::new(vertices, &[crate::graph::low_mask(vertices.len())])
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn facets(&self) -> &[u64] {
        &self.facets
    }

    pub fn facet_names(&self) -> Vec<Vec<String>> {
        self.facets
            .iter()
            .map(|&f| bits(f).map(|v| self.vertices[v].clone()).collect())
            .collect()
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// Dimension, `-1` for the empty complex and `None` for the void one.
    pub fn dim(&self) -> Option<i32> {
        self.facets.iter().map(|f| f.count_ones() as i32 - 1).max()
    }

    pub fn contains(&self, face: u64) -> bool {
        self.facets.iter().any(|&f| face & !f == 0)
    }

    /// Every face, `∅` included, ordered by size and then by mask.
    pub fn faces(&self) -> Vec<u64> {
        let mut set = FxHashSet::default();
        for &f in &self.facets {
            let mut sub = f;
            loop {
                set.insert(sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & f;
            }
        }
        let mut faces: Vec<u64> = set.into_iter().collect();
        faces.sort_unstable_by_key(|&f| (f.count_ones(), f));
        faces
    }

    /// Number of faces of each dimension, starting at dimension `-1`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = Vec::new();
        for face in self.faces() {
            let d = face.count_ones() as usize;
            if f.len() <= d {
                f.resize(d + 1, 0);
            }
            f[d] += 1;
        }
        f
    }

    /// Restriction to the vertex set `keep`.
    pub fn induced(&self, keep: u64) -> SimplicialComplex {
        let faces: Vec<u64> = self.facets.iter().map(|&f| f & keep).collect();
        Self::new(&self.vertices, &faces).expect("restriction stays in range")
    }
}

/// The complex of squarefree monomials outside `I`: subsets of variables
/// containing no generator support.
pub fn stanley_reisner_complex(ideal: &MonomialIdeal) -> Result<SimplicialComplex> {
    stanley_reisner_complex_with(ideal, &Budget::default())
}

pub fn stanley_reisner_complex_with(
    ideal: &MonomialIdeal,
    budget: &Budget,
) -> Result<SimplicialComplex> {
    if !ideal.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let n = ideal.nvars();
    if n > budget.max_hochster_vars {
        return Err(Error::budget(
            "max-hochster-vars",
            budget.max_hochster_vars,
            n,
        ));
    }
    let supports: Vec<u64> = ideal.gens().iter().map(|g| g.support()).collect();
    let mut facets = Vec::new();
    maximal_faces(n, &supports, 0, 0, &mut facets);
    SimplicialComplex::new(ideal.vars(), &facets)
}

fn is_face(f: u64, supports: &[u64]) -> bool {
    supports.iter().all(|&s| s & !f != 0)
}

fn maximal_faces(n: usize, supports: &[u64], v: usize, current: u64, out: &mut Vec<u64>) {
    if v == n {
        if (0..n).all(|w| current >> w & 1 == 1 || !is_face(current | 1 << w, supports)) {
            out.push(current);
        }
        return;
    }
    let with = current | 1 << v;
    if is_face(with, supports) {
        maximal_faces(n, supports, v + 1, with, out);
    }
    maximal_faces(n, supports, v + 1, current, out);
}
