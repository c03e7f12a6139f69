use super::{even_connected_set, EdgeProduct};
use crate::error::{Error, Result};
use crate::graph::{bits, is_very_well_covered, Graph};
use crate::monomial::{edge_ideal, Monomial, MonomialIdeal, Powers};
use crate::Budget;

/// `(I(G)^{s+1} : e_1⋯e_s)` assembled from the edges of `G` and the
/// even-connected pairs, squares included.
pub fn colon_ideal_by_even_connections(p: &EdgeProduct) -> MonomialIdeal {
    let g = p.base();
    let n = g.vertex_count();
    let mut gens: Vec<Monomial> = g
        .edges()
        .into_iter()
        .map(|(a, b)| Monomial::from_indices(&[a, b], n))
        .collect();
    for u in 0..n {
        for v in bits(even_connected_set(p, u)).filter(|&v| v >= u) {
            gens.push(Monomial::from_indices(&[u, v], n));
        }
    }
    MonomialIdeal::new(g.names(), gens).expect("vertex names are valid variables")
}

/// The same colon ideal by direct ideal arithmetic.
pub fn colon_ideal_brute_force(p: &EdgeProduct, budget: &Budget) -> Result<MonomialIdeal> {
    let mut powers = Powers::new(edge_ideal(p.base()), *budget);
    powers.get(p.s() as u32 + 1)?.colon(&p.monomial())
}

/// The graph of the polarized colon ideal.
///
/// Original vertices keep their names; each vertex `u` even-connected to
/// itself gains a partner `u#2` joined only to `u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColonGraph {
    pub gprime: Graph,
    /// Vertices of the base even-connected to themselves, by base index.
    pub self_loops: Vec<usize>,
    /// `gprime` index of the partner of each entry of `self_loops`.
    pub partners: Vec<usize>,
    pub origin: EdgeProduct,
}

impl ColonGraph {
    pub fn is_squarefree(&self) -> bool {
        self.self_loops.is_empty()
    }

    pub fn self_loop_names(&self) -> Vec<String> {
        let g = self.origin.base();
        self.self_loops
            .iter()
            .map(|&u| g.name(u).to_string())
            .collect()
    }
}

pub fn colon_graph(p: &EdgeProduct) -> Result<ColonGraph> {
    colon_graph_of(p, &colon_ideal_by_even_connections(p))
}

fn colon_graph_of(p: &EdgeProduct, colon: &MonomialIdeal) -> Result<ColonGraph> {
    let base = p.base();
    let mut gprime = Graph::with_vertices(base.names())?;
    let mut self_loops = Vec::new();
    for m in colon.gens() {
        let f: Vec<(usize, u16)> = m.factors().collect();
        match f[..] {
            [(a, 1), (b, 1)] => gprime.link(a, b),
            [(a, 2)] => self_loops.push(a),
            _ => unreachable!("colon generators have degree two"),
        }
    }
    self_loops.sort_unstable();
    let mut partners = Vec::with_capacity(self_loops.len());
    for &u in &self_loops {
        let name = format!("{}#2", base.name(u));
        if gprime.index_of(&name).is_some() {
            return Err(Error::VertexNameCollision(name));
        }
        let z = gprime.add_vertex(&name)?;
        gprime.link(u, z);
        partners.push(z);
    }
    Ok(ColonGraph {
        gprime,
        self_loops,
        partners,
        origin: p.clone(),
    })
}

/// Compares `(I^{s+1} : e_1⋯e_s)` with `((I^2 : e_i)^s : ∏_{j≠i} e_j)` for
/// the 1-based factor index `i`.
pub fn verify_colon_decomposition(p: &EdgeProduct, i: usize, budget: &Budget) -> Result<bool> {
    if i == 0 || i > p.s() {
        return Err(Error::InvalidArgument(format!(
            "factor index {i} outside 1..={}",
            p.s()
        )));
    }
    let lhs = colon_ideal_brute_force(p, budget)?;
    if !lhs.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let g = p.base();
    let n = g.vertex_count();
    let (a, b) = p.edges()[i - 1];
    let single = EdgeProduct::from_indices(g, &[(a, b)])?;
    let inner = colon_ideal_brute_force(&single, budget)?;
    let mut powers = Powers::new(inner, *budget);
    let mut rest = Monomial::one(n);
    for (j, &(c, d)) in p.edges().iter().enumerate() {
        if j != i - 1 {
            rest = rest.mul(&Monomial::from_indices(&[c, d], n));
        }
    }
    let rhs = powers.get(p.s() as u32)?.colon(&rest)?;
    lhs.ideal_equal(&rhs)
}

/// Whether the colon graph of a very well-covered base is again very
/// well-covered; requires a squarefree colon ideal.
pub fn verify_gprime_vwc(g: &Graph, p: &EdgeProduct) -> Result<bool> {
    if p.base() != g {
        return Err(Error::InvalidArgument(
            "product is over another graph".into(),
        ));
    }
    if !is_very_well_covered(g)? {
        return Err(Error::NotVeryWellCovered);
    }
    let cg = colon_graph(p)?;
    if !cg.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    is_very_well_covered(&cg.gprime)
}
