//! Verification sweeps that tie the graph, colon and regularity layers
//! together and emit one [`VerificationRecord`] per checked statement.
//!
//! Records are produced in a fixed order regardless of how many worker
//! threads run, and with timings disabled a sweep is byte-for-byte
//! reproducible from its [`SweepConfig`].

mod checks;
mod fixtures;
mod shrink;

use std::fmt;
use std::io;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::even::EdgeProduct;
use crate::graph::Graph;
use crate::regularity::Field;
use crate::Budget;

pub use checks::{
    colon_oracle_record, differential_colon_sweep, lower_bound_sweep, products_up_to,
    record_c5_powers, verify_colon_bound, verify_counterexample_boundary, verify_engine_agreement,
    verify_formula, verify_main_theorem, verify_special_families,
};
pub use fixtures::{fixture, fixture_names, fixture_text};
pub use shrink::{regression_fixture, shrink_failure};

/// The statement a record checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Statement {
    /// `reg(I(G)^s) = 2s + ν(G) - 1` for very well-covered `G`.
    Main,
    /// `reg(I(G)^{s+1} : e_1⋯e_s) ≤ ν(G) + 1`.
    ColonBound,
    /// A squarefree colon ideal is the edge ideal of a very well-covered graph.
    ColonGprimeVwc,
    /// `(I^{s+1} : e_1⋯e_s) = ((I^2 : e_i)^s : ∏_{j≠i} e_j)` for every `i`.
    ColonDecomposition,
    Whisker,
    Join,
    UnmixedBipartite,
    BoundaryWellCovered,
    BoundaryNotVwc,
    BoundaryNu,
    BoundaryReg,
    /// `reg(I(C_5)^s)`, recorded without an asserted value.
    C5Power,
    /// Even-connection colon equals the brute-force colon, in degree 2.
    ColonOracle,
    /// `2s + ν(G) - 1 ≤ reg(I(G)^s)` for any graph.
    LowerBound,
    /// Hochster and lcm-lattice engines agree.
    MethodAgreement,
    /// `reg(I) = reg(polarize(I))`.
    Polarization,
}

impl Statement {
    pub fn as_str(self) -> &'static str {
        match self {
            Statement::Main => "main",
            Statement::ColonBound => "colon-bound",
            Statement::ColonGprimeVwc => "colon-gprime-vwc",
            Statement::ColonDecomposition => "colon-decomposition",
            Statement::Whisker => "whisker",
            Statement::Join => "join",
            Statement::UnmixedBipartite => "unmixed-bipartite",
            Statement::BoundaryWellCovered => "boundary-well-covered",
            Statement::BoundaryNotVwc => "boundary-not-vwc",
            Statement::BoundaryNu => "boundary-nu",
            Statement::BoundaryReg => "boundary-reg",
            Statement::C5Power => "c5-power",
            Statement::ColonOracle => "colon-oracle",
            Statement::LowerBound => "lower-bound",
            Statement::MethodAgreement => "method-agreement",
            Statement::Polarization => "polarization",
        }
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of a record. `NotApplicable` marks values that are recorded
/// without an expectation, or checks cut short by a budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            Verdict::Pass => Some(true),
            Verdict::Fail => Some(false),
            Verdict::NotApplicable => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "true",
            Verdict::Fail => "false",
            Verdict::NotApplicable => "n/a",
        })
    }
}

/// Serialized as `true`, `false` or `null`.
impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.as_bool().serialize(s)
    }
}

/// The graph and product a record was computed from, kept for shrinking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    pub product: Option<EdgeProduct>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationRecord {
    pub statement: Statement,
    /// Graph digest, followed by ` : <product>` for colon statements; an
    /// ideal digest for the engine comparisons.
    pub graph: String,
    pub s: Option<u32>,
    pub nu: Option<usize>,
    pub expected: String,
    pub computed: String,
    pub pass: Verdict,
    pub millis: u64,
    #[serde(skip)]
    pub instance: Option<Instance>,
}

impl VerificationRecord {
    pub fn passed(&self) -> bool {
        self.pass != Verdict::Fail
    }
}

pub const CSV_HEADER: [&str; 8] = [
    "statement",
    "graph",
    "s",
    "nu",
    "expected",
    "computed",
    "pass",
    "millis",
];

/// Writes records as CSV with the columns of [`CSV_HEADER`]; absent `s`
/// and `nu` are empty fields.
pub fn write_csv<W: io::Write>(records: &[VerificationRecord], w: W) -> io::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(CSV_HEADER)?;
    for r in records {
        let opt = |v: Option<String>| v.unwrap_or_default();
        out.write_record([
            r.statement.as_str().to_string(),
            r.graph.clone(),
            opt(r.s.map(|s| s.to_string())),
            opt(r.nu.map(|n| n.to_string())),
            r.expected.clone(),
            r.computed.clone(),
            r.pass.to_string(),
            r.millis.to_string(),
        ])?;
    }
    out.flush()
}

/// Shared computation settings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Settings {
    pub field: Field,
    pub budget: Budget,
    /// When false every record reports `millis = 0`.
    pub timings: bool,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            field: Field::Rationals,
            budget: Budget::default(),
            timings: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Every very well-covered graph with `h ≤ size`, up to isomorphism.
    ExhaustiveVwc,
    /// `W(H)` for every graph `H` on at most `size` vertices.
    Whiskered,
    /// Bipartite members of the very well-covered pool with `h ≤ size`.
    UnmixedBipartite,
    /// Joins of pairs from the very well-covered pool with `h ≤ size`.
    Join,
    /// Random graphs on at most `size` vertices.
    RandomGraph,
    /// The shipped fixtures.
    Fixture,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::ExhaustiveVwc,
        Family::Whiskered,
        Family::UnmixedBipartite,
        Family::Join,
        Family::RandomGraph,
        Family::Fixture,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::ExhaustiveVwc => "exhaustive-vwc",
            Family::Whiskered => "whiskered",
            Family::UnmixedBipartite => "unmixed-bipartite",
            Family::Join => "join",
            Family::RandomGraph => "random-graph",
            Family::Fixture => "fixture",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown family `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub family: Family,
    /// `h` for the pool-based families, a vertex count otherwise.
    pub size: usize,
    pub s_max: u32,
    /// Number of random instances; ignored by the exhaustive families.
    pub samples: usize,
    pub seed: Option<u64>,
    pub settings: Settings,
}

impl SweepConfig {
    pub fn new(family: Family, size: usize, s_max: u32) -> Self {
        SweepConfig {
            family,
            size,
            s_max,
            samples: 0,
            seed: None,
            settings: Settings::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let budget = &self.settings.budget;
        if self.s_max == 0 {
            return Err(Error::InvalidArgument("s_max must be at least 1".into()));
        }
        match self.family {
            Family::ExhaustiveVwc | Family::UnmixedBipartite | Family::Join => {
                if self.size == 0 {
                    return Err(Error::InvalidArgument("h must be positive".into()));
                }
                if self.size > budget.max_exhaustive_h {
                    return Err(Error::budget(
                        "max-exhaustive-h",
                        budget.max_exhaustive_h,
                        self.size,
                    ));
                }
            }
            Family::Whiskered => {
                if 2 * self.size > budget.max_vertices {
                    return Err(Error::budget(
                        "max-vertices",
                        budget.max_vertices,
                        2 * self.size,
                    ));
                }
            }
            Family::RandomGraph => {
                if self.seed.is_none() {
                    return Err(Error::InvalidArgument("random sweeps need a seed".into()));
                }
                if self.size < 2 {
                    return Err(Error::InvalidArgument("random graphs need n >= 2".into()));
                }
                if self.size > budget.max_vertices {
                    return Err(Error::budget(
                        "max-vertices",
                        budget.max_vertices,
                        self.size,
                    ));
                }
            }
            Family::Fixture => {}
        }
        Ok(())
    }
}

/// A shrunk failing instance, ready to be written as a fixture file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Regression {
    pub statement: Statement,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepOutcome {
    pub records: Vec<VerificationRecord>,
    /// One entry per statement with a failing record.
    pub regressions: Vec<Regression>,
}

impl SweepOutcome {
    pub fn all_pass(&self) -> bool {
        self.records.iter().all(VerificationRecord::passed)
    }
}

/// Runs the sweep for `config.family`.
///
/// * `exhaustive-vwc`: main formula for `s ≤ s_max` plus the colon bound for
///   every product of at most `s_max` edges.
/// * `whiskered`, `join`, `unmixed-bipartite`: the family formulas.
/// * `random-graph`: colon oracle differential and the lower bound.
/// * `fixture`: main formula and colon bound on the very well-covered
///   fixtures, the well-covered boundary example and the `C_5` powers.
///
/// The first failure of each statement is shrunk into a [`Regression`].
pub fn run_sweep(config: &SweepConfig) -> Result<SweepOutcome> {
    config.validate()?;
    let records = match config.family {
        Family::ExhaustiveVwc => checks::exhaustive_sweep(config)?,
        Family::Whiskered | Family::Join | Family::UnmixedBipartite => {
            verify_special_families(config)?
        }
        Family::RandomGraph => {
            let mut r = differential_colon_sweep(config)?;
            r.extend(lower_bound_sweep(config)?);
            r
        }
        Family::Fixture => checks::fixture_sweep(config)?,
    };
    let mut regressions: Vec<Regression> = Vec::new();
    for r in &records {
        if r.pass != Verdict::Fail || regressions.iter().any(|g| g.statement == r.statement) {
            continue;
        }
        let text = match &r.instance {
            Some(inst) => {
                let (g, p) = shrink_failure(r, inst, &config.settings);
                regression_fixture(r.statement, r.s, &g, p.as_ref())
            }
            None => format!("# regression: {}\n# instance: {}\n", r.statement, r.graph),
        };
        regressions.push(Regression {
            statement: r.statement,
            text,
        });
    }
    Ok(SweepOutcome {
        records,
        regressions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quiet() -> Settings {
        Settings {
            timings: false,
            ..Settings::default()
        }
    }

    #[test]
    fn csv_layout() {
        let g = fixture("c4").unwrap();
        let records = verify_main_theorem(&g, 2, &quiet()).unwrap();
        let mut buf = Vec::new();
        write_csv(&records, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "statement,graph,s,nu,expected,computed,pass,millis\n\
             main,x1-x2 x1-x4 x2-x3 x3-x4,1,1,2,2,true,0\n\
             main,x1-x2 x1-x4 x2-x3 x3-x4,2,1,4,4,true,0\n"
        );
    }

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.as_str().parse::<Family>().unwrap(), f);
        }
        assert!("cycles".parse::<Family>().is_err());
    }

    #[test]
    fn random_sweeps_need_a_seed() {
        let mut c = SweepConfig::new(Family::RandomGraph, 6, 2);
        assert!(c.validate().is_err());
        c.seed = Some(1);
        c.validate().unwrap();
    }

    #[test]
    fn sweeps_are_reproducible() {
        let mut c = SweepConfig::new(Family::RandomGraph, 6, 2);
        c.seed = Some(9);
        c.samples = 12;
        c.settings = quiet();
        let a = run_sweep(&c).unwrap();
        let b = run_sweep(&c).unwrap();
        assert!(a.all_pass());
        let csv = |o: &SweepOutcome| {
            let mut buf = Vec::new();
            write_csv(&o.records, &mut buf).unwrap();
            buf
        };
        assert_eq!(csv(&a), csv(&b));
        assert_eq!(a.records.len(), 12 + 24);
    }

    #[test]
    fn fixture_sweep_passes() {
        let mut c = SweepConfig::new(Family::Fixture, 0, 2);
        c.settings = quiet();
        let out = run_sweep(&c).unwrap();
        assert!(
            out.all_pass(),
            "{:?}",
            out.records.iter().find(|r| !r.passed())
        );
        assert!(out.regressions.is_empty());
        assert!(out
            .records
            .iter()
            .any(|r| r.statement == Statement::C5Power));
    }

    #[test]
    fn unshrinkable_failures_are_kept_whole() {
        let g = Graph::parse("a b\nb c\nc d\nd e\n").unwrap();
        let r = VerificationRecord {
            statement: Statement::Whisker,
            graph: g.digest(),
            s: Some(1),
            nu: Some(1),
            expected: "9".into(),
            computed: "3".into(),
            pass: Verdict::Fail,
            millis: 0,
            instance: Some(Instance {
                graph: g.clone(),
                product: None,
            }),
        };
        let (h, p) = shrink_failure(&r, r.instance.as_ref().unwrap(), &quiet());
        assert_eq!(h, g);
        assert!(p.is_none());
        let text = regression_fixture(r.statement, r.s, &h, None);
        assert!(text.starts_with("# regression: whisker\n# s: 1\n"));
        assert_eq!(Graph::parse(&text).unwrap(), g);
    }
}
