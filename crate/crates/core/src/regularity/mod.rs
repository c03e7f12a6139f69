//! Castelnuovo–Mumford regularity of monomial ideals.
//!
//! Two independent engines are provided:
//!
//! * [`regularity_squarefree`] applies Hochster's formula to the
//!   Stanley–Reisner complex, visiting only vertex sets that are unions of
//!   generator supports. [`regularity`] polarizes first.
//! * [`regularity_lcm_lattice`] reads multigraded Betti numbers off the lcm
//!   lattice: for each lattice element `b`, `β_{i,b}(I)` is the rank of
//!   `H̃_{i-1}` of the complex of generator sets dividing `b` whose lcm is
//!   strictly below `b`. This complex is the atom crosscut of the interval
//!   `[1, b]`, homotopy equivalent to the order complex of the open interval.
//!
//! Both return `reg(I) = reg(R/I) + 1`.

mod complex;
mod hochster;
mod homology;
mod lcm;

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::monomial::{polarize, MonomialIdeal};
use crate::Budget;

pub use complex::{stanley_reisner_complex, stanley_reisner_complex_with, SimplicialComplex};
pub use hochster::{regularity_squarefree, regularity_squarefree_with, verify_witness};
pub use homology::{matrix_rank, reduced_homology_ranks, reduced_homology_ranks_with};
pub use lcm::{regularity_lcm_lattice, regularity_lcm_lattice_with};

/// Coefficient field for homology.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Field {
    /// Exact rational ranks via fraction-free integer elimination.
    #[default]
    Rationals,
    /// The prime field with `p` elements.
    Gf(u32),
}

impl Field {
    pub fn gf(p: u32) -> Result<Field> {
        let prime = p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
        if prime && p < 1 << 31 {
            Ok(Field::Gf(p))
        } else {
            Err(Error::InvalidArgument(format!(
                "{p} is not a supported prime"
            )))
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => f.write_str("rationals"),
            Field::Gf(p) => write!(f, "gf({p})"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `rationals`, `gf(p)` and `gfp`.
    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim().to_ascii_lowercase();
        if s == "rationals" || s == "q" {
            return Ok(Field::Rationals);
        }
        let p = s
            .strip_prefix("gf(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| s.strip_prefix("gf"))
            .and_then(|p| p.parse().ok())
            .ok_or_else(|| Error::InvalidArgument(format!("unknown field `{s}`")))?;
        Field::gf(p)
    }
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Hochster,
    LcmLattice,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Hochster => "hochster",
            Method::LcmLattice => "lcm-lattice",
        })
    }
}

/// A place where the maximum is attained.
///
/// For the Hochster engine `sigma` lists the variables of the restricted
/// complex and `dim` the degree of its nonvanishing reduced homology. For
/// the lcm-lattice engine `sigma` lists the factors of the lattice element
/// and `dim` the homology degree of its crosscut complex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Witness {
    pub sigma: Vec<String>,
    pub dim: i32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularityReport {
    /// Minimal generators of the input ideal.
    pub ideal: String,
    pub reg: u32,
    pub method: Method,
    pub field: Field,
    pub witnesses: Vec<Witness>,
    /// Whether the ideal was polarized before the computation; witnesses
    /// then name polarized variables.
    #[serde(skip)]
    pub polarized: bool,
}

fn check_proper(ideal: &MonomialIdeal) -> Result<()> {
    if ideal.is_zero() {
        Err(Error::ZeroIdeal)
    } else if ideal.is_unit() {
        Err(Error::UnitIdeal)
    } else {
        Ok(())
    }
}

/// `reg(I)` for any proper nonzero monomial ideal, via polarization and
/// the Hochster engine.
pub fn regularity(ideal: &MonomialIdeal, field: Field) -> Result<RegularityReport> {
    regularity_with(ideal, field, &Budget::default())
}

pub fn regularity_with(
    ideal: &MonomialIdeal,
    field: Field,
    budget: &Budget,
) -> Result<RegularityReport> {
    check_proper(ideal)?;
    if ideal.is_squarefree() {
        return regularity_squarefree_with(ideal, field, budget);
    }
    let (pol, _) = polarize(ideal);
    let mut report = regularity_squarefree_with(&pol, field, budget)?;
    report.ideal = ideal.digest();
    report.polarized = true;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, random_graph};
    use crate::monomial::{edge_ideal, power, Monomial};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn reg(text: &str) -> u32 {
        regularity(&MonomialIdeal::parse(text).unwrap(), Field::Rationals)
            .unwrap()
            .reg
    }

    #[test]
    fn field_parsing() {
        assert_eq!("rationals".parse::<Field>().unwrap(), Field::Rationals);
        assert_eq!("gf(2)".parse::<Field>().unwrap(), Field::Gf(2));
        assert_eq!("GF7".parse::<Field>().unwrap(), Field::Gf(7));
        assert!("gf(4)".parse::<Field>().is_err());
        assert!("reals".parse::<Field>().is_err());
        assert_eq!(Field::Gf(3).to_string(), "gf(3)");
    }

    #[test]
    fn small_ideals() {
        assert_eq!(reg("a*b"), 2);
        assert_eq!(reg("a^2"), 2);
        assert_eq!(reg("a\nb"), 1);
        assert_eq!(reg("a^3*b\nc"), 4);
        let zero = MonomialIdeal::zero(&["a"]).unwrap();
        assert_eq!(regularity(&zero, Field::Rationals), Err(Error::ZeroIdeal));
        let unit = MonomialIdeal::parse("1").unwrap();
        assert_eq!(regularity(&unit, Field::Rationals), Err(Error::UnitIdeal));
    }

    #[test]
    fn cycles_and_powers() {
        let c4 = edge_ideal(&cycle(4));
        let c5 = edge_ideal(&cycle(5));
        assert_eq!(regularity(&c4, Field::Rationals).unwrap().reg, 2);
        assert_eq!(regularity(&c5, Field::Rationals).unwrap().reg, 3);
        let c4sq = power(&c4, 2).unwrap();
        let r = regularity(&c4sq, Field::Rationals).unwrap();
        assert_eq!(r.reg, 4);
        assert!(r.polarized);
        assert_eq!(
            regularity_lcm_lattice(&c4sq, Field::Rationals).unwrap().reg,
            4
        );
    }

    #[test]
    fn report_json_keys() {
        let r = regularity(&MonomialIdeal::parse("a*b").unwrap(), Field::Rationals).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["ideal", "reg", "method", "field", "witnesses"]);
        assert_eq!(v["method"], "hochster");
        assert_eq!(v["field"], "rationals");
        assert_eq!(v["witnesses"][0]["sigma"], serde_json::json!(["a", "b"]));
        assert_eq!(v["witnesses"][0]["dim"], 0);
    }

    fn random_ideal(rng: &mut ChaCha8Rng, squarefree: bool) -> MonomialIdeal {
        let n = rng.gen_range(2..=6);
        let vars: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        loop {
            let gens: Vec<Monomial> = (0..rng.gen_range(1..=6))
                .map(|_| {
                    let top = if squarefree { 1 } else { 3 };
                    Monomial::from_exponents((0..n).map(|_| rng.gen_range(0..=top)).collect())
                })
                .collect();
            let i = MonomialIdeal::new(&vars, gens).unwrap();
            if !i.is_zero() && !i.is_unit() {
                return i;
            }
        }
    }

    #[test]
    fn engines_agree_on_random_ideals() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for round in 0..60 {
            let i = random_ideal(&mut rng, round % 2 == 0);
            let h = regularity(&i, Field::Rationals).unwrap();
            let l = regularity_lcm_lattice(&i, Field::Rationals).unwrap();
            assert_eq!(h.reg, l.reg, "{i}");
            assert!(h.reg >= i.max_degree());
        }
    }

    #[test]
    fn witnesses_recheck() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let g = random_graph(7, 0.4, &mut rng);
            let i = edge_ideal(&g);
            if i.is_zero() {
                continue;
            }
            let r = regularity_squarefree(&i, Field::Rationals).unwrap();
            assert!(!r.witnesses.is_empty());
            for w in &r.witnesses {
                assert_eq!(w.dim + 2, r.reg as i32);
                assert!(verify_witness(&i, w, Field::Rationals).unwrap());
            }
        }
    }
}
