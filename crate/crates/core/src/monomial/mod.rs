//! Monomials and monomial ideals over a fixed, named variable list.

mod polarize;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::Budget;

pub use polarize::{depolarize, polarize, PolarizationMap};

/// Dense exponent vector over an ambient variable list.
///
/// Ordered by degree reverse lexicographic order with respect to the
/// variable order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u16>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
        }
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[i] = 1;
        m
    }

    pub fn from_exponents(exps: Vec<u16>) -> Self {
        Monomial { exps }
    }

    /// Product of the variables with the given indices (repeats allowed).
    pub fn from_indices(indices: &[usize], nvars: usize) -> Self {
        let mut m = Monomial::one(nvars);
        for &i in indices {
            m.exps[i] += 1;
        }
        m
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn exponent(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    /// Bitmask of the variables with positive exponent (first 64 variables).
    pub fn support(&self) -> u64 {
        self.exps
            .iter()
            .take(64)
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0, |m, (i, _)| m | 1 << i)
    }

    /// `(variable, exponent)` for every variable with positive exponent.
    pub fn factors(&self) -> impl Iterator<Item = (usize, u16)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (i, e))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a.min(b))
                .collect(),
        }
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        other.divides(self).then(|| Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// `self / gcd(self, other)`.
    pub fn quotient_by_gcd(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a.saturating_sub(b))
                .collect(),
        }
    }

    /// Renders as `x1^2*y3` (or `1`) using the given variable names.
    pub fn display<'a>(&'a self, vars: &'a [String]) -> impl fmt::Display + 'a {
        DisplayMonomial { m: self, vars }
    }
}

struct DisplayMonomial<'a> {
    m: &'a Monomial,
    vars: &'a [String],
}

impl fmt::Display for DisplayMonomial<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, e) in self.m.factors() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(&self.vars[i])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.exps.iter().zip(&other.exps).rev() {
                if a != b {
                    // Smaller exponent in the last differing variable wins.
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Reduces a list of monomials to its inclusion-minimal set, sorted.
pub fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort();
    gens.dedup();
    if gens.len() < 2 || gens.first().map(Monomial::degree) == gens.last().map(Monomial::degree) {
        return gens;
    }
    let mut kept: Vec<(u64, Monomial)> = Vec::with_capacity(gens.len());
    for g in gens {
        let supp = g.support();
        let dominated = kept
            .iter()
            .any(|(s, k)| s & !supp == 0 && k.degree() < g.degree() && k.divides(&g));
        if !dominated {
            kept.push((supp, g));
        }
    }
    kept.into_iter().map(|(_, g)| g).collect()
}

fn validate_var(name: &str) -> Result<()> {
    let ok = !name.is_empty()
        && !name.starts_with('#')
        && !name
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '*' | '^' | ','));
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidName(name.to_string()))
    }
}

/// A monomial ideal held as its minimal generating set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    vars: Arc<[String]>,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new<S: AsRef<str>>(vars: &[S], gens: Vec<Monomial>) -> Result<Self> {
        let vars: Arc<[String]> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for v in vars.iter() {
            validate_var(v)?;
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = vars.iter().find(|v| !seen.insert(v.as_str())) {
            return Err(Error::InvalidArgument(format!(
                "duplicate variable `{dup}`"
            )));
        }
        Self::from_parts(vars, gens)
    }

    pub(crate) fn from_parts(vars: Arc<[String]>, gens: Vec<Monomial>) -> Result<Self> {
        if let Some(bad) = gens.iter().find(|g| g.nvars() != vars.len()) {
            return Err(Error::InvalidArgument(format!(
                "monomial over {} variables in a ring of {}",
                bad.nvars(),
                vars.len()
            )));
        }
        Ok(MonomialIdeal {
            gens: minimalize(gens),
            vars,
        })
    }

    /// Same ring, new generators.
    pub(crate) fn with_gens(&self, gens: Vec<Monomial>) -> Self {
        debug_assert!(gens.iter().all(|g| g.nvars() == self.vars.len()));
        MonomialIdeal {
            vars: self.vars.clone(),
            gens: minimalize(gens),
        }
    }

    pub fn zero<S: AsRef<str>>(vars: &[S]) -> Result<Self> {
        Self::new(vars, Vec::new())
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub(crate) fn vars_arc(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(Monomial::is_one)
    }

    pub fn max_degree(&self) -> u32 {
        self.gens.iter().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    /// Membership: some generator divides `m`.
    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// Equality of minimal generating sets; the rings must agree.
    pub fn ideal_equal(&self, other: &MonomialIdeal) -> Result<bool> {
        if self.vars != other.vars {
            return Err(Error::RingMismatch);
        }
        Ok(self.gens == other.gens)
    }

    fn same_ring(&self, other: &MonomialIdeal) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn monomial(&self, factors: &[(&str, u16)]) -> Result<Monomial> {
        let mut m = Monomial::one(self.nvars());
        for &(name, e) in factors {
            let i = self
                .var_index(name)
                .ok_or_else(|| Error::UnknownVertex(name.to_string()))?;
            m.exps[i] += e;
        }
        Ok(m)
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.same_ring(other)?;
        Ok(self.with_gens(self.gens.iter().chain(&other.gens).cloned().collect()))
    }

    /// Product ideal, failing if the raw product count exceeds `max_raw`.
    pub fn product_with(&self, other: &MonomialIdeal, max_raw: usize) -> Result<MonomialIdeal> {
        self.same_ring(other)?;
        let raw = self.gens.len().saturating_mul(other.gens.len());
        if raw > max_raw {
            return Err(Error::budget("max-raw-generators", max_raw, raw));
        }
        let mut prods = Vec::with_capacity(raw);
        for a in &self.gens {
            for b in &other.gens {
                prods.push(a.mul(b));
            }
        }
        Ok(self.with_gens(prods))
    }

    /// `(I : m)`, generated by `u / gcd(u, m)` over the generators `u`.
    pub fn colon(&self, m: &Monomial) -> Result<MonomialIdeal> {
        if m.nvars() != self.nvars() {
            return Err(Error::RingMismatch);
        }
        Ok(self.with_gens(self.gens.iter().map(|u| u.quotient_by_gcd(m)).collect()))
    }

    /// Same generators over renamed variables.
    pub fn renamed(&self, f: impl Fn(&str) -> String) -> Result<MonomialIdeal> {
        let vars: Vec<String> = self.vars.iter().map(|v| f(v)).collect();
        MonomialIdeal::new(&vars, self.gens.clone())
    }

    /// Re-expresses the ideal over `vars`, which must contain every variable
    /// used by a generator.
    pub fn in_ring<S: AsRef<str>>(&self, vars: &[S]) -> Result<MonomialIdeal> {
        let target: Vec<&str> = vars.iter().map(|v| v.as_ref()).collect();
        let mut gens = Vec::with_capacity(self.gens.len());
        for g in &self.gens {
            let mut m = Monomial::one(target.len());
            for (i, e) in g.factors() {
                let j = target
                    .iter()
                    .position(|&t| t == self.vars[i])
                    .ok_or(Error::RingMismatch)?;
                m.exps[j] = e;
            }
            gens.push(m);
        }
        MonomialIdeal::new(&target, gens)
    }

    /// Canonical one-line string of the minimal generators.
    pub fn digest(&self) -> String {
        if self.gens.is_empty() {
            return "0".to_string();
        }
        self.gens
            .iter()
            .map(|g| g.display(&self.vars).to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Text format: one monomial per line, preceded by a `ring v1 v2 …`
    /// line when the variables are not recovered by order of first appearance.
    pub fn to_text(&self) -> String {
        let mut seen: Vec<usize> = Vec::new();
        for g in &self.gens {
            for (i, _) in g.factors() {
                if !seen.contains(&i) {
                    seen.push(i);
                }
            }
        }
        let mut text = String::new();
        if seen.len() != self.vars.len() || seen.iter().enumerate().any(|(k, &i)| k != i) {
            text = format!("ring {}\n", self.vars.join(" "));
        }
        for g in &self.gens {
            text.push_str(&format!("{}\n", g.display(&self.vars)));
        }
        text
    }

    /// Parses the text format. The ring is the one declared by a leading
    /// `ring` line, extended by further variables in order of first
    /// appearance.
    pub fn parse(text: &str) -> Result<MonomialIdeal> {
        let mut vars: Vec<String> = Vec::new();
        let mut raw: Vec<Vec<(usize, u16)>> = Vec::new();
        for (no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(decl) = line
                .strip_prefix("ring")
                .filter(|r| r.is_empty() || r.starts_with(char::is_whitespace))
            {
                if !vars.is_empty() || !raw.is_empty() {
                    return Err(Error::parse(
                        no + 1,
                        "`ring` must come before the generators",
                    ));
                }
                for name in decl.split_whitespace() {
                    validate_var(name).map_err(|e| Error::parse(no + 1, e.to_string()))?;
                    if vars.iter().any(|v| v == name) {
                        return Err(Error::parse(
                            no + 1,
                            format!("variable `{name}` declared twice"),
                        ));
                    }
                    vars.push(name.to_string());
                }
                continue;
            }
            let mut factors = Vec::new();
            for (name, e) in parse_monomial(line).map_err(|m| Error::parse(no + 1, m))? {
                let i = match vars.iter().position(|v| v == name) {
                    Some(i) => i,
                    None => {
                        validate_var(name).map_err(|e| Error::parse(no + 1, e.to_string()))?;
                        vars.push(name.to_string());
                        vars.len() - 1
                    }
                };
                factors.push((i, e));
            }
            raw.push(factors);
        }
        let n = vars.len();
        let gens = raw
            .into_iter()
            .map(|fs| {
                let mut m = Monomial::one(n);
                for (i, e) in fs {
                    m.exps[i] += e;
                }
                m
            })
            .collect();
        MonomialIdeal::new(&vars, gens)
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.digest())
    }
}

fn parse_monomial(s: &str) -> std::result::Result<Vec<(&str, u16)>, String> {
    if s == "1" {
        return Ok(Vec::new());
    }
    s.split('*')
        .map(|factor| {
            let (name, e) = match factor.split_once('^') {
                Some((name, e)) => {
                    let e: u16 = e
                        .parse()
                        .map_err(|_| format!("bad exponent in `{factor}`"))?;
                    if e == 0 {
                        return Err(format!("zero exponent in `{factor}`"));
                    }
                    (name, e)
                }
                None => (factor, 1),
            };
            if name.is_empty() {
                return Err(format!("empty factor in `{s}`"));
            }
            Ok((name, e))
        })
        .collect()
}

/// `I(G)`, generated by `x_i x_j` over the edges, in the ring of all vertices.
pub fn edge_ideal(g: &Graph) -> MonomialIdeal {
    let n = g.vertex_count();
    let gens = g
        .edges()
        .into_iter()
        .map(|(i, j)| Monomial::from_indices(&[i, j], n))
        .collect();
    MonomialIdeal::new(g.names(), gens).expect("vertex names are valid variables")
}

/// `I^s` with the default raw-product budget.
pub fn power(ideal: &MonomialIdeal, s: u32) -> Result<MonomialIdeal> {
    power_with(ideal, s, &Budget::default())
}

pub fn power_with(ideal: &MonomialIdeal, s: u32, budget: &Budget) -> Result<MonomialIdeal> {
    let mut powers = Powers::new(ideal.clone(), *budget);
    Ok(powers.get(s)?.clone())
}

/// Memoized powers `I^1, I^2, …` of one ideal, each obtained as
/// `minimalize(I^{s-1} · I)`.
#[derive(Debug, Clone)]
pub struct Powers {
    budget: Budget,
    cache: Vec<MonomialIdeal>,
}

impl Powers {
    pub fn new(base: MonomialIdeal, budget: Budget) -> Self {
        Powers {
            budget,
            cache: vec![base],
        }
    }

    pub fn base(&self) -> &MonomialIdeal {
        &self.cache[0]
    }

    pub fn get(&mut self, s: u32) -> Result<&MonomialIdeal> {
        if s == 0 {
            return Err(Error::InvalidArgument(
                "power exponent must be positive".into(),
            ));
        }
        while self.cache.len() < s as usize {
            let next = self
                .cache
                .last()
                .expect("base present")
                .product_with(&self.cache[0], self.budget.max_raw_generators)?;
            self.cache.push(next);
        }
        Ok(&self.cache[s as usize - 1])
    }
}

/// `(I : m)`.
pub fn colon_by_monomial(ideal: &MonomialIdeal, m: &Monomial) -> Result<MonomialIdeal> {
    ideal.colon(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::cycle;

    fn ideal(text: &str) -> MonomialIdeal {
        MonomialIdeal::parse(text).unwrap()
    }

    #[test]
    fn parse_and_print() {
        let i = ideal("# comment\nx1^2*y3\ny3*x1\n");
        assert_eq!(i.vars(), ["x1", "y3"]);
        assert_eq!(i.gens().len(), 1);
        assert_eq!(i.to_text(), "x1*y3\n");
        assert_eq!(MonomialIdeal::parse(&i.to_text()).unwrap(), i);
        assert!(MonomialIdeal::parse("x^0").is_err());
        assert!(MonomialIdeal::parse("x^a").is_err());
        assert!(MonomialIdeal::parse("x**y").is_err());
        assert!(ideal("1").is_unit());
    }

    #[test]
    fn ring_line_preserves_variable_order() {
        let i = edge_ideal(&cycle(4))
            .in_ring(&["4", "1", "2", "3", "9"])
            .unwrap();
        let text = i.to_text();
        assert!(text.starts_with("ring 4 1 2 3 9\n"));
        let back = MonomialIdeal::parse(&text).unwrap();
        assert_eq!(back, i);
        assert_eq!(back.digest(), i.digest());
        assert!(MonomialIdeal::parse("a*b\nring a b").is_err());
        assert!(MonomialIdeal::parse("ring a a").is_err());
        assert_eq!(ideal("ring c\na*b").vars(), ["c", "a", "b"]);
    }

    #[test]
    fn degrevlex_order() {
        // a > b > c; a^2 > ab > b^2 > ac > bc > c^2 in degrevlex.
        let n = 3;
        let m = |e: [u16; 3]| Monomial::from_exponents(e.to_vec());
        let _ = n;
        let mut v = vec![
            m([0, 0, 2]),
            m([1, 1, 0]),
            m([0, 1, 1]),
            m([2, 0, 0]),
            m([1, 0, 1]),
            m([0, 2, 0]),
        ];
        v.sort();
        assert_eq!(
            v,
            vec![
                m([0, 0, 2]),
                m([0, 1, 1]),
                m([1, 0, 1]),
                m([0, 2, 0]),
                m([1, 1, 0]),
                m([2, 0, 0])
            ]
        );
    }

    #[test]
    fn edge_ideal_of_c4() {
        let i = edge_ideal(&cycle(4));
        assert_eq!(i.gens().len(), 4);
        let expect = ideal("1*2\n2*3\n3*4\n4*1");
        assert!(i
            .ideal_equal(&expect.in_ring(&["1", "2", "3", "4"]).unwrap())
            .unwrap());
        let empty = edge_ideal(&Graph::with_vertices(&["a"]).unwrap());
        assert!(empty.is_zero());
    }

    #[test]
    fn powers() {
        let ab = ideal("a*b");
        assert_eq!(power(&ab, 3).unwrap().digest(), "a^3*b^3");
        let c4 = edge_ideal(&cycle(4));
        // x1x2·x3x4 = x2x3·x1x4, so 10 products collapse to 9.
        assert_eq!(power(&c4, 2).unwrap().gens().len(), 9);
        assert_eq!(power(&c4, 1).unwrap(), c4);
        assert!(power(&c4, 0).is_err());
        let tight = Budget {
            max_raw_generators: 15,
            ..Budget::default()
        };
        assert!(matches!(
            power_with(&c4, 2, &tight),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn colon_examples() {
        let ab = ideal("a*b");
        let a = ab.monomial(&[("a", 1)]).unwrap();
        assert_eq!(ab.colon(&a).unwrap().digest(), "b");
        assert_eq!(ab.colon(&Monomial::one(2)).unwrap(), ab);
    }

    #[test]
    fn minimality_and_equality() {
        let i = ideal("a*b\na*b^2");
        let j = ideal("a*b");
        assert!(i.ideal_equal(&j).unwrap());
        assert!(!ideal("a^2*b").is_squarefree());
        let other = ideal("c*d");
        assert_eq!(i.ideal_equal(&other), Err(Error::RingMismatch));
    }
}
