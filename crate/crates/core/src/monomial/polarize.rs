use std::sync::Arc;

use super::{Monomial, MonomialIdeal};
use crate::error::{Error, Result};

/// Bookkeeping for a polarization: variable `x` with largest exponent `a`
/// becomes `x#1, …, x#a` in the polarized ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarizationMap {
    origin: Arc<[String]>,
    ambient: Arc<[String]>,
    forward: Vec<Vec<usize>>,
    back: Vec<(usize, u16)>,
}

impl PolarizationMap {
    /// Variables of the original ring.
    pub fn origin_vars(&self) -> &[String] {
        &self.origin
    }

    /// Variables of the polarized ring.
    pub fn polarized_vars(&self) -> &[String] {
        &self.ambient
    }

    /// Index of copy `j` (1-based) of original variable `var`.
    pub fn forward(&self, var: usize, j: u16) -> Option<usize> {
        let j = (j as usize).checked_sub(1)?;
        self.forward.get(var)?.get(j).copied()
    }

    /// Original variable and copy number of a polarized variable.
    pub fn back(&self, polarized: usize) -> Option<(usize, u16)> {
        self.back.get(polarized).copied()
    }

    /// `x^a ↦ x#1 ⋯ x#a`, applied factorwise.
    pub fn polarize_monomial(&self, m: &Monomial) -> Result<Monomial> {
        if m.nvars() != self.origin.len() {
            return Err(Error::RingMismatch);
        }
        let mut out = Monomial::one(self.ambient.len());
        for (i, e) in m.factors() {
            for j in 1..=e {
                let k = self.forward(i, j).ok_or_else(|| {
                    Error::InvalidArgument(format!(
                        "exponent {e} of `{}` exceeds the polarization",
                        self.origin[i]
                    ))
                })?;
                out.exps[k] = 1;
            }
        }
        Ok(out)
    }

    /// Drops the copy index: `x#j ↦ x`.
    pub fn depolarize_monomial(&self, m: &Monomial) -> Result<Monomial> {
        if m.nvars() != self.ambient.len() {
            return Err(Error::RingMismatch);
        }
        let mut out = Monomial::one(self.origin.len());
        for (k, e) in m.factors() {
            out.exps[self.back[k].0] += e;
        }
        Ok(out)
    }
}

/// Polarizes a monomial ideal into a squarefree one.
pub fn polarize(ideal: &MonomialIdeal) -> (MonomialIdeal, PolarizationMap) {
    let n = ideal.nvars();
    let mut copies = vec![1u16; n];
    for g in ideal.gens() {
        for (i, e) in g.factors() {
            copies[i] = copies[i].max(e);
        }
    }
    let mut ambient = Vec::new();
    let mut forward = Vec::with_capacity(n);
    let mut back = Vec::new();
    for (i, name) in ideal.vars().iter().enumerate() {
        let mut idx = Vec::with_capacity(copies[i] as usize);
        for j in 1..=copies[i] {
            idx.push(ambient.len());
            back.push((i, j));
            ambient.push(format!("{name}#{j}"));
        }
        forward.push(idx);
    }
    let map = PolarizationMap {
        origin: ideal.vars_arc().clone(),
        ambient: ambient.into(),
        forward,
        back,
    };
    let gens = ideal
        .gens()
        .iter()
        .map(|g| {
            map.polarize_monomial(g)
                .expect("copies cover every exponent")
        })
        .collect();
    let polarized = MonomialIdeal::from_parts(map.ambient.clone(), gens)
        .expect("polarized generators live in the polarized ring");
    (polarized, map)
}

/// Inverse of [`polarize`] on ideals in the polarized ring.
pub fn depolarize(ideal: &MonomialIdeal, map: &PolarizationMap) -> Result<MonomialIdeal> {
    if ideal.vars() != map.polarized_vars() {
        return Err(Error::RingMismatch);
    }
    let gens = ideal
        .gens()
        .iter()
        .map(|g| map.depolarize_monomial(g))
        .collect::<Result<Vec<_>>>()?;
    MonomialIdeal::from_parts(map.origin.clone(), gens)
}
