//! Exact computation of Castelnuovo–Mumford regularity for powers of edge
//! ideals, together with the combinatorics needed to check the formula
//! `reg(I(G)^s) = 2s + ν(G) - 1` on very well-covered graphs.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: simple graphs, induced matchings, vertex covers and the
//!   very well-covered recognizer, plus graph family generators.
//! * [`monomial`]: monomials, monomial ideals, powers, colons and
//!   polarization.
//! * [`even`]: even-connections and the colon ideals
//!   `(I(G)^{s+1} : e_1⋯e_s)` built from them.
//! * [`regularity`]: simplicial homology and two independent regularity
//!   engines (Hochster's formula and the lcm lattice).
//! * [`harness`]: sweeps that tie everything together and emit
//!   verification records.

pub mod error;
pub mod even;
pub mod graph;
pub mod harness;
pub mod monomial;
pub mod regularity;

pub use error::{Error, Result};

pub use even::{ColonGraph, EdgeProduct, WitnessPath};
pub use graph::{Graph, MatchingCertificate, VwcLabeling};
pub use monomial::{Monomial, MonomialIdeal, PolarizationMap};
pub use regularity::{Field, RegularityReport, SimplicialComplex};

/// Size guardrails shared by every exponential search in the crate.
///
/// Each limit is a hard cap: exceeding it yields
/// [`Error::BudgetExceeded`] naming the budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Vertex cap for exhaustive graph searches (ν, covers, independent sets).
    pub max_vertices: usize,
    /// Raw product count allowed before minimalization in ideal powers.
    pub max_raw_generators: usize,
    /// Variable cap for the Hochster path (after polarization).
    pub max_hochster_vars: usize,
    /// Generator cap for the lcm-lattice path.
    pub max_lcm_generators: usize,
    /// Largest `h` accepted by the exhaustive very well-covered generator.
    pub max_exhaustive_h: usize,
    /// Upper bound on the number of lcm-lattice elements visited.
    pub max_lattice_size: usize,
    /// Upper bound on the faces of any single complex whose homology is taken.
    pub max_faces: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_vertices: 32,
            max_raw_generators: 100_000,
            max_hochster_vars: 24,
            max_lcm_generators: 24,
            max_exhaustive_h: 4,
            max_lattice_size: 1 << 20,
            max_faces: 1 << 22,
        }
    }
}
