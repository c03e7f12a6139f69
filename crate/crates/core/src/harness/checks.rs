use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{
    fixture, Family, Instance, Settings, Statement, SweepConfig, Verdict, VerificationRecord,
};
use crate::error::{Error, Result};
use crate::even::{
    colon_graph, colon_ideal_brute_force, colon_ideal_by_even_connections,
    verify_colon_decomposition, EdgeProduct,
};
use crate::graph::{
    all_graphs, induced_matching_number_with, is_bipartite, is_very_well_covered_with,
    is_well_covered_with, random_graph, vwc_pool, Graph,
};
use crate::monomial::{edge_ideal, polarize, Monomial, MonomialIdeal, Powers};
use crate::regularity::{regularity_lcm_lattice_with, regularity_squarefree_with, regularity_with};

fn timed<T>(settings: &Settings, f: impl FnOnce() -> T) -> (T, u64) {
    let start = Instant::now();
    let value = f();
    let millis = if settings.timings {
        start.elapsed().as_millis() as u64
    } else {
        0
    };
    (value, millis)
}

struct Draft {
    statement: Statement,
    graph: String,
    s: Option<u32>,
    nu: Option<usize>,
    instance: Option<Instance>,
}

impl Draft {
    fn new(statement: Statement, graph: String) -> Self {
        Draft {
            statement,
            graph,
            s: None,
            nu: None,
            instance: None,
        }
    }

    fn s(mut self, s: u32) -> Self {
        self.s = Some(s);
        self
    }

    fn nu(mut self, nu: usize) -> Self {
        self.nu = Some(nu);
        self
    }

    fn on(mut self, graph: &Graph, product: Option<&EdgeProduct>) -> Self {
        self.instance = Some(Instance {
            graph: graph.clone(),
            product: product.cloned(),
        });
        self
    }

    fn finish(
        self,
        expected: impl ToString,
        computed: impl ToString,
        pass: Verdict,
        millis: u64,
    ) -> VerificationRecord {
        VerificationRecord {
            statement: self.statement,
            graph: self.graph,
            s: self.s,
            nu: self.nu,
            expected: expected.to_string(),
            computed: computed.to_string(),
            pass,
            millis,
            instance: self.instance,
        }
    }

    /// A check cut short by a budget: recorded, but neither pass nor fail.
    fn over_budget(self, expected: impl ToString, e: &Error, millis: u64) -> VerificationRecord {
        let computed = match e {
            Error::BudgetExceeded { budget, .. } => format!("budget:{budget}"),
            other => other.to_string(),
        };
        self.finish(expected, computed, Verdict::NotApplicable, millis)
    }
}

fn is_budget(e: &Error) -> bool {
    matches!(e, Error::BudgetExceeded { .. })
}

fn nu_of(g: &Graph, settings: &Settings) -> Result<usize> {
    Ok(induced_matching_number_with(g, &settings.budget)?.0)
}

/// Checks `reg(I(g)^s) = 2s + nu - 1` for `s = 1..=s_max`, with `nu`
/// supplied by the caller. A budget overrun ends the list early with an
/// `n/a` record.
pub fn verify_formula(
    statement: Statement,
    g: &Graph,
    nu: usize,
    s_max: u32,
    settings: &Settings,
) -> Result<Vec<VerificationRecord>> {
    let mut powers = Powers::new(edge_ideal(g), settings.budget);
    let mut out = Vec::new();
    for s in 1..=s_max {
        let expected = 2 * s + nu as u32 - 1;
        let draft = Draft::new(statement, g.digest()).s(s).nu(nu).on(g, None);
        let (res, ms) = timed(settings, || {
            let ideal = powers.get(s)?.clone();
            regularity_with(&ideal, settings.field, &settings.budget)
        });
        match res {
            Ok(r) => {
                out.push(draft.finish(expected, r.reg, Verdict::from_bool(r.reg == expected), ms))
            }
            Err(e) if is_budget(&e) => {
                out.push(draft.over_budget(expected, &e, ms));
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// `reg(I(G)^s) = 2s + ν(G) - 1` for `s = 1..=s_max` on a very
/// well-covered graph.
pub fn verify_main_theorem(
    g: &Graph,
    s_max: u32,
    settings: &Settings,
) -> Result<Vec<VerificationRecord>> {
    if !is_very_well_covered_with(g, &settings.budget)? {
        return Err(Error::NotVeryWellCovered);
    }
    verify_formula(Statement::Main, g, nu_of(g, settings)?, s_max, settings)
}

/// Every product of between one and `s_max` edges of `g`, as multisets in
/// lexicographic order of edge positions.
pub fn products_up_to(g: &Graph, s_max: usize) -> Vec<EdgeProduct> {
    let edges = g.edges();
    let mut out = Vec::new();
    fn extend(
        g: &Graph,
        edges: &[(usize, usize)],
        current: &mut Vec<(usize, usize)>,
        from: usize,
        left: usize,
        out: &mut Vec<EdgeProduct>,
    ) {
        if left == 0 {
            out.push(EdgeProduct::from_indices(g, current).expect("edges of g"));
            return;
        }
        for k in from..edges.len() {
            current.push(edges[k]);
            extend(g, edges, current, k, left - 1, out);
            current.pop();
        }
    }
    for s in 1..=s_max {
        extend(g, &edges, &mut Vec::new(), 0, s, &mut out);
    }
    out
}

/// For each product: `reg((I^{s+1} : e_1⋯e_s)) ≤ ν(G) + 1`. When the
/// colon ideal is squarefree, two further records check that its graph is
/// very well-covered and that the colon decomposes through every factor.
pub fn verify_colon_bound(
    g: &Graph,
    products: &[EdgeProduct],
    settings: &Settings,
) -> Result<Vec<VerificationRecord>> {
    if !is_very_well_covered_with(g, &settings.budget)? {
        return Err(Error::NotVeryWellCovered);
    }
    let nu = nu_of(g, settings)?;
    let digest = g.digest();
    let mut out = Vec::new();
    for p in products {
        if p.base() != g {
            return Err(Error::InvalidArgument(format!(
                "product {p} is over another graph"
            )));
        }
        let label = format!("{digest} : {p}");
        let s = p.s() as u32;
        let draft = || {
            Draft::new(Statement::ColonBound, label.clone())
                .s(s)
                .nu(nu)
                .on(g, Some(p))
        };
        let bound = format!("<={}", nu + 1);
        let (res, ms) = timed(settings, || {
            let colon = colon_ideal_by_even_connections(p);
            regularity_with(&colon, settings.field, &settings.budget).map(|r| (colon, r.reg))
        });
        let colon = match res {
            Ok((colon, reg)) => {
                out.push(draft().finish(
                    &bound,
                    reg,
                    Verdict::from_bool(reg as usize <= nu + 1),
                    ms,
                ));
                colon
            }
            Err(e) if is_budget(&e) => {
                out.push(draft().over_budget(&bound, &e, ms));
                continue;
            }
            Err(e) => return Err(e),
        };
        if !colon.is_squarefree() {
            continue;
        }

        let mut d = draft();
        d.statement = Statement::ColonGprimeVwc;
        let (vwc, ms) = timed(settings, || {
            is_very_well_covered_with(&colon_graph(p)?.gprime, &settings.budget)
        });
        let vwc = vwc?;
        out.push(d.finish(true, vwc, Verdict::from_bool(vwc), ms));

        let mut d = draft();
        d.statement = Statement::ColonDecomposition;
        let (res, ms) = timed(settings, || -> Result<bool> {
            for i in 1..=p.s() {
                if !verify_colon_decomposition(p, i, &settings.budget)? {
                    return Ok(false);
                }
            }
            Ok(true)
        });
        match res {
            Ok(ok) => out.push(d.finish(true, ok, Verdict::from_bool(ok), ms)),
            Err(e) if is_budget(&e) => out.push(d.over_budget(true, &e, ms)),
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// The well-covered, not very well-covered graph on nine vertices: checks
/// that it is well-covered but not very well-covered, that `ν = 2`, and
/// that `reg(I^s) = 2s + 2` for `s = 1, 2`, one more than the formula for
/// very well-covered graphs would give.
pub fn verify_counterexample_boundary(settings: &Settings) -> Result<Vec<VerificationRecord>> {
    let g = fixture("well-covered-9")?;
    let digest = g.digest();
    let mut out = Vec::new();
    let draft = |st| Draft::new(st, digest.clone()).on(&g, None);

    let (wc, ms) = timed(settings, || is_well_covered_with(&g, &settings.budget));
    let wc = wc?;
    out.push(draft(Statement::BoundaryWellCovered).finish(true, wc, Verdict::from_bool(wc), ms));

    let (vwc, ms) = timed(settings, || is_very_well_covered_with(&g, &settings.budget));
    let vwc = vwc?;
    out.push(draft(Statement::BoundaryNotVwc).finish(false, vwc, Verdict::from_bool(!vwc), ms));

    let (nu, ms) = timed(settings, || nu_of(&g, settings));
    let nu = nu?;
    out.push(
        draft(Statement::BoundaryNu)
            .nu(nu)
            .finish(2, nu, Verdict::from_bool(nu == 2), ms),
    );

    let mut powers = Powers::new(edge_ideal(&g), settings.budget);
    for s in 1..=2u32 {
        let expected = 2 * s + 2;
        let d = draft(Statement::BoundaryReg).s(s).nu(nu);
        let (res, ms) = timed(settings, || {
            let ideal = powers.get(s)?.clone();
            regularity_with(&ideal, settings.field, &settings.budget)
        });
        match res {
            Ok(r) => out.push(d.finish(expected, r.reg, Verdict::from_bool(r.reg == expected), ms)),
            Err(e) if is_budget(&e) => out.push(d.over_budget(expected, &e, ms)),
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// `reg(I(C_5)^s)` for `s = 1..=s_max`, recorded next to `2s + ν - 1`
/// without a verdict.
pub fn record_c5_powers(s_max: u32, settings: &Settings) -> Result<Vec<VerificationRecord>> {
    let g = fixture("c5")?;
    let nu = nu_of(&g, settings)?;
    let mut powers = Powers::new(edge_ideal(&g), settings.budget);
    let mut out = Vec::new();
    for s in 1..=s_max {
        let d = Draft::new(Statement::C5Power, g.digest()).s(s).nu(nu);
        let formula = 2 * s + nu as u32 - 1;
        let (res, ms) = timed(settings, || {
            let ideal = powers.get(s)?.clone();
            regularity_with(&ideal, settings.field, &settings.budget)
        });
        match res {
            Ok(r) => out.push(d.finish(formula, r.reg, Verdict::NotApplicable, ms)),
            Err(e) if is_budget(&e) => out.push(d.over_budget(formula, &e, ms)),
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

fn rename_part(g: &Graph, k: usize) -> Result<Graph> {
    g.renamed(|v| format!("{v}.{k}"))
}

/// Formula checks on whiskered graphs, joins and unmixed bipartite graphs.
pub fn verify_special_families(config: &SweepConfig) -> Result<Vec<VerificationRecord>> {
    config.validate()?;
    let settings = &config.settings;
    let budget = &settings.budget;
    // (statement, graph, ν to use in the formula)
    let mut items: Vec<(Statement, Graph, usize)> = Vec::new();
    match config.family {
        Family::Whiskered => {
            for n in 1..=config.size {
                for h in all_graphs(n)? {
                    let w = h.whisker()?;
                    let nu = nu_of(&w, settings)?;
                    items.push((Statement::Whisker, w, nu));
                }
            }
        }
        Family::Join => {
            let pool = vwc_pool(config.size, budget)?;
            for a in 0..pool.len() {
                for b in a..pool.len() {
                    let ga = rename_part(&pool[a].0, 1)?;
                    let gb = rename_part(&pool[b].0, 2)?;
                    let nu = nu_of(&ga, settings)?.max(nu_of(&gb, settings)?);
                    items.push((Statement::Join, Graph::join(&[&ga, &gb])?, nu));
                }
            }
        }
        Family::UnmixedBipartite => {
            for (g, _) in vwc_pool(config.size, budget)? {
                if is_bipartite(&g) {
                    let nu = nu_of(&g, settings)?;
                    items.push((Statement::UnmixedBipartite, g, nu));
                }
            }
        }
        other => {
            return Err(Error::InvalidArgument(format!(
                "`{other}` is not a special family"
            )))
        }
    }
    let chunks: Vec<Vec<VerificationRecord>> = items
        .par_iter()
        .map(|(st, g, nu)| verify_formula(*st, g, *nu, config.s_max, settings))
        .collect::<Result<_>>()?;
    Ok(chunks.into_iter().flatten().collect())
}

fn item_rng(seed: u64, item: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(item as u64);
    rng
}

/// A random graph with at least one edge on `2..=n_max` vertices.
fn random_nonempty_graph(n_max: usize, rng: &mut ChaCha8Rng) -> Graph {
    loop {
        let n = rng.gen_range(2..=n_max);
        let p = rng.gen_range(0.2..0.8);
        let g = random_graph(n, p, rng);
        if g.edge_count() > 0 {
            return g;
        }
    }
}

/// Even-connection colon against the brute-force colon for one product;
/// also requires every minimal generator to have degree two.
pub fn colon_oracle_record(p: &EdgeProduct, settings: &Settings) -> VerificationRecord {
    let g = p.base();
    let d = Draft::new(Statement::ColonOracle, format!("{} : {p}", g.digest()))
        .s(p.s() as u32)
        .on(g, Some(p));
    let (res, ms) = timed(settings, || {
        let fast = colon_ideal_by_even_connections(p);
        colon_ideal_brute_force(p, &settings.budget).map(|slow| (fast, slow))
    });
    match res {
        Ok((fast, slow)) => {
            let quadratic = fast.gens().iter().all(|m| m.degree() == 2);
            let ok = fast == slow && quadratic;
            d.finish(slow.digest(), fast.digest(), Verdict::from_bool(ok), ms)
        }
        Err(e) => d.over_budget("", &e, ms),
    }
}

/// `config.samples` random graphs on at most `config.size` vertices, each
/// with one random product of at most `min(s_max, 3)` edges.
pub fn differential_colon_sweep(config: &SweepConfig) -> Result<Vec<VerificationRecord>> {
    let seed = random_seed(config)?;
    let s_max = config.s_max.min(3) as usize;
    Ok((0..config.samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = item_rng(seed, 2 * i);
            let g = random_nonempty_graph(config.size, &mut rng);
            let edges = g.edges();
            let s = rng.gen_range(1..=s_max);
            let factors: Vec<(usize, usize)> = (0..s)
                .map(|_| edges[rng.gen_range(0..edges.len())])
                .collect();
            let p = EdgeProduct::from_indices(&g, &factors).expect("edges of g");
            colon_oracle_record(&p, &config.settings)
        })
        .collect())
}

fn random_seed(config: &SweepConfig) -> Result<u64> {
    if config.family != Family::RandomGraph {
        return Err(Error::InvalidArgument(format!(
            "random sweeps need the `random-graph` family, not `{}`",
            config.family
        )));
    }
    config
        .seed
        .ok_or_else(|| Error::InvalidArgument("random sweeps need a seed".into()))
}

/// `2s + ν(G) - 1 ≤ reg(I(G)^s)` on `config.samples` random graphs.
pub fn lower_bound_sweep(config: &SweepConfig) -> Result<Vec<VerificationRecord>> {
    let seed = random_seed(config)?;
    let settings = &config.settings;
    let chunks: Vec<Vec<VerificationRecord>> = (0..config.samples)
        .into_par_iter()
        .map(|i| -> Result<Vec<VerificationRecord>> {
            let mut rng = item_rng(seed, 2 * i + 1);
            let g = random_nonempty_graph(config.size, &mut rng);
            lower_bound_records(&g, config.s_max, settings)
        })
        .collect::<Result<_>>()?;
    Ok(chunks.into_iter().flatten().collect())
}

pub(crate) fn lower_bound_records(
    g: &Graph,
    s_max: u32,
    settings: &Settings,
) -> Result<Vec<VerificationRecord>> {
    let nu = nu_of(g, settings)?;
    let mut powers = Powers::new(edge_ideal(g), settings.budget);
    let mut out = Vec::new();
    for s in 1..=s_max {
        let bound = 2 * s + nu as u32 - 1;
        let d = Draft::new(Statement::LowerBound, g.digest())
            .s(s)
            .nu(nu)
            .on(g, None);
        let (res, ms) = timed(settings, || {
            let ideal = powers.get(s)?.clone();
            regularity_with(&ideal, settings.field, &settings.budget)
        });
        match res {
            Ok(r) => out.push(d.finish(
                format!(">={bound}"),
                r.reg,
                Verdict::from_bool(r.reg >= bound),
                ms,
            )),
            Err(e) if is_budget(&e) => {
                out.push(d.over_budget(format!(">={bound}"), &e, ms));
                break;
            }
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

fn random_ideal(rng: &mut ChaCha8Rng, max_vars: usize, max_gens: usize, top: u16) -> MonomialIdeal {
    loop {
        let n = rng.gen_range(2..=max_vars);
        let vars: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
        let gens: Vec<Monomial> = (0..rng.gen_range(1..=max_gens))
            .map(|_| Monomial::from_exponents((0..n).map(|_| rng.gen_range(0..=top)).collect()))
            .collect();
        let ideal = MonomialIdeal::new(&vars, gens).expect("valid names");
        if !ideal.is_zero() && !ideal.is_unit() && (top == 1 || !ideal.is_squarefree()) {
            return ideal;
        }
    }
}

/// Hochster against lcm lattice on `squarefree` random squarefree ideals
/// (at most 8 variables and 8 generators), then `reg(I)` from the lcm
/// lattice against `reg(polarize(I))` from Hochster on `mixed` random
/// ideals that are not squarefree (at most 5 variables, 6 generators,
/// exponents up to 3).
pub fn verify_engine_agreement(
    squarefree: usize,
    mixed: usize,
    seed: u64,
    settings: &Settings,
) -> Result<Vec<VerificationRecord>> {
    let budget = &settings.budget;
    let field = settings.field;
    (0..squarefree + mixed)
        .into_par_iter()
        .map(|i| {
            let mut rng = item_rng(seed, i);
            let (statement, ideal) = if i < squarefree {
                (Statement::MethodAgreement, random_ideal(&mut rng, 8, 8, 1))
            } else {
                (Statement::Polarization, random_ideal(&mut rng, 5, 6, 3))
            };
            let d = Draft::new(statement, ideal.digest());
            let (res, ms) = timed(settings, || -> Result<(u32, u32)> {
                let lcm = regularity_lcm_lattice_with(&ideal, field, budget)?.reg;
                let hochster = if statement == Statement::MethodAgreement {
                    regularity_squarefree_with(&ideal, field, budget)?.reg
                } else {
                    regularity_squarefree_with(&polarize(&ideal).0, field, budget)?.reg
                };
                Ok((lcm, hochster))
            });
            match res {
                Ok((lcm, hochster)) => {
                    Ok(d.finish(lcm, hochster, Verdict::from_bool(lcm == hochster), ms))
                }
                Err(e) if is_budget(&e) => Ok(d.over_budget("", &e, ms)),
                Err(e) => Err(e),
            }
        })
        .collect()
}

pub(crate) fn exhaustive_sweep(config: &SweepConfig) -> Result<Vec<VerificationRecord>> {
    let settings = &config.settings;
    let pool = vwc_pool(config.size, &settings.budget)?;
    let chunks: Vec<Vec<VerificationRecord>> = pool
        .par_iter()
        .map(|(g, _)| {
            let mut r = verify_main_theorem(g, config.s_max, settings)?;
            let products = products_up_to(g, config.s_max as usize);
            r.extend(verify_colon_bound(g, &products, settings)?);
            Ok(r)
        })
        .collect::<Result<_>>()?;
    Ok(chunks.into_iter().flatten().collect())
}

pub(crate) fn fixture_sweep(config: &SweepConfig) -> Result<Vec<VerificationRecord>> {
    let settings = &config.settings;
    let mut out = Vec::new();
    for name in ["c4", "g-ex", "g-b", "whisker-c4"] {
        let g = fixture(name)?;
        out.extend(verify_main_theorem(&g, config.s_max, settings)?);
        let products = products_up_to(&g, 1);
        out.extend(verify_colon_bound(&g, &products, settings)?);
    }
    out.extend(verify_counterexample_boundary(settings)?);
    out.extend(record_c5_powers(config.s_max, settings)?);
    Ok(out)
}
