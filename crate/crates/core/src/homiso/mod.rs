//! Graphs of morphisms between projective schemes, the isomorphism certifier,
//! iso loci over Hilbert scheme charts and the decision drivers.

mod certify;
mod decide;
mod locus;
mod search;

pub use certify::{
    affine_radical, check_graph_iso, invertible_locus, source_projection_is_iso, OpenLocus,
};
pub use decide::{
    candidate_polys_1dim, decide_iso_1dim, verify_certificate, Certificate, DecisionOutcome, Mode,
    Verdict,
};
pub use locus::{iso_locus_over_base, iso_p_nonempty, GraphFamily, IsoStatus};
pub use search::{enumerate_subschemes, iso_search_semidecide, SubschemeEnumerator};

use std::sync::OnceLock;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::poly::{parse_poly, Polynomial, Rational, UniPoly};
use crate::scheme::ProjectiveScheme;

/// A closed subscheme `Γ ⊂ X × Y` in Segre coordinates `w_{ik}` (index `i·n + k`).
#[derive(Clone, Debug)]
pub struct GraphMorphism {
    pub source: ProjectiveScheme,
    pub target: ProjectiveScheme,
    pub graph: Ideal,
    hp: OnceLock<UniPoly>,
}

impl GraphMorphism {
    pub fn new(source: ProjectiveScheme, target: ProjectiveScheme, graph: Ideal) -> Result<Self> {
        let mn = source.ambient_vars() * target.ambient_vars();
        if graph.arity() != mn {
            return Err(Error::ArityMismatch {
                expected: mn,
                found: graph.arity(),
            });
        }
        if !graph.is_homogeneous() {
            return Err(Error::NotHomogeneous("graph ideal".into()));
        }
        Ok(GraphMorphism {
            source,
            target,
            graph,
            hp: OnceLock::new(),
        })
    }

    /// Graph of `x ↦ [f_0(x) : … : f_{n-1}(x)]` for forms of one degree, as the kernel of
    /// `w_{ik} ↦ x_i f_k(x)` modulo `I_X`.
    pub fn from_forms(
        source: &ProjectiveScheme,
        target: &ProjectiveScheme,
        forms: &[Polynomial],
        budget: &Budget,
    ) -> Result<Self> {
        let (m, n) = (source.ambient_vars(), target.ambient_vars());
        if forms.len() != n {
            return Err(Error::Invalid(format!(
                "expected {n} forms, found {}",
                forms.len()
            )));
        }
        let degs: Vec<Option<u32>> = forms
            .iter()
            .filter(|f| !f.is_zero())
            .map(|f| f.degree())
            .collect();
        if degs.is_empty()
            || degs.iter().any(|d| *d != degs[0])
            || forms.iter().any(|f| !f.is_homogeneous())
        {
            return Err(Error::Invalid(
                "forms must be nonzero and of one degree".into(),
            ));
        }
        let mn = m * n;
        let total = mn + m;
        let mut gens: Vec<Polynomial> = source
            .saturated(budget)?
            .gens()
            .iter()
            .map(|g| g.embed(total, 0))
            .collect();
        for i in 0..m {
            for (k, f) in forms.iter().enumerate() {
                let img = &Polynomial::var(total, i) * &f.embed(total, 0);
                gens.push(&Polynomial::var(total, m + i * n + k) - &img);
            }
        }
        let ker = Ideal::new(total, gens).eliminate(m, budget)?;
        GraphMorphism::new(source.clone(), target.clone(), ker.normalized(budget)?)
    }

    /// Graph from a bihomogeneous ideal in `Q[x_0..x_{m-1}, y_0..y_{n-1}]`, as the kernel of
    /// `w_{ik} ↦ x_i y_k` modulo that ideal.
    pub fn from_bihomogeneous(
        source: &ProjectiveScheme,
        target: &ProjectiveScheme,
        j: &Ideal,
        budget: &Budget,
    ) -> Result<Self> {
        let (m, n) = (source.ambient_vars(), target.ambient_vars());
        if j.arity() != m + n {
            return Err(Error::ArityMismatch {
                expected: m + n,
                found: j.arity(),
            });
        }
        let total = m + n + m * n;
        let mut gens: Vec<Polynomial> = j.gens().iter().map(|g| g.embed(total, 0)).collect();
        for i in 0..m {
            for k in 0..n {
                let xy = &Polynomial::var(total, i) * &Polynomial::var(total, m + k);
                gens.push(&Polynomial::var(total, m + n + i * n + k) - &xy);
            }
        }
        let ker = Ideal::new(total, gens).eliminate(m + n, budget)?;
        GraphMorphism::new(source.clone(), target.clone(), ker.normalized(budget)?)
    }

    /// Graph of the identity of `X`.
    pub fn diagonal(x: &ProjectiveScheme, budget: &Budget) -> Result<Self> {
        let m = x.ambient_vars();
        let forms: Vec<Polynomial> = (0..m).map(|i| Polynomial::var(m, i)).collect();
        Self::from_forms(x, x, &forms, budget)
    }

    /// Graph of `x ↦ g·x`.
    pub fn linear(
        x: &ProjectiveScheme,
        y: &ProjectiveScheme,
        g: &[Vec<Rational>],
        budget: &Budget,
    ) -> Result<Self> {
        let m = x.ambient_vars();
        let forms: Vec<Polynomial> = g
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .fold(Polynomial::zero(m), |acc, (j, c)| {
                        &acc + &Polynomial::var(m, j).scale(c)
                    })
            })
            .collect();
        Self::from_forms(x, y, &forms, budget)
    }

    /// `Γ` seen inside `Y × X`.
    pub fn transpose(&self) -> GraphMorphism {
        let (m, n) = (self.source.ambient_vars(), self.target.ambient_vars());
        let map: Vec<usize> = (0..m * n).map(|idx| (idx % n) * m + idx / n).collect();
        let gens = self
            .graph
            .gens()
            .iter()
            .map(|g| g.remap(m * n, &map))
            .collect();
        GraphMorphism {
            source: self.target.clone(),
            target: self.source.clone(),
            graph: Ideal::new(m * n, gens),
            hp: self.hp.clone(),
        }
    }

    pub fn hilbert_polynomial(&self, budget: &Budget) -> Result<UniPoly> {
        if let Some(p) = self.hp.get() {
            return Ok(p.clone());
        }
        let p = self.graph.hilbert_polynomial(budget)?;
        let _ = self.hp.set(p.clone());
        Ok(p)
    }

    /// Whether `I_{X×Y} ⊆ (I_Γ)^sat`.
    pub fn is_subscheme(&self, budget: &Budget) -> Result<bool> {
        let xy = ProjectiveScheme::segre_product(&self.source, &self.target)?;
        let sat = self
            .graph
            .saturate(&Ideal::maximal(self.graph.arity()), budget)?;
        sat.contains_ideal(xy.ideal(), budget)
    }

    /// Bihomogeneous ideal of `Γ` in `Q[x_0..x_{m-1}, y_0..y_{n-1}]`, saturated in both factors.
    pub fn bihomogeneous(&self, budget: &Budget) -> Result<Ideal> {
        let (m, n) = (self.source.ambient_vars(), self.target.ambient_vars());
        bihomogeneous_ideal(&self.graph, &self.source, &self.target, m, n, 0, budget)
    }

    pub fn variable_names(&self) -> Vec<String> {
        segre_names(self.source.ambient_vars(), self.target.ambient_vars())
    }

    pub fn generator_strings(&self) -> Vec<String> {
        let names = self.variable_names();
        self.graph
            .gens()
            .iter()
            .map(|g| g.fmt_with(&names))
            .collect()
    }

    pub fn from_strings(
        source: &ProjectiveScheme,
        target: &ProjectiveScheme,
        gens: &[String],
    ) -> Result<Self> {
        let names = segre_names(source.ambient_vars(), target.ambient_vars());
        let polys = gens
            .iter()
            .map(|g| parse_poly(g, &names))
            .collect::<Result<Vec<_>>>()?;
        GraphMorphism::new(
            source.clone(),
            target.clone(),
            Ideal::new(names.len(), polys),
        )
    }
}

/// `w{i}_{k}` in Segre order.
pub fn segre_names(m: usize, n: usize) -> Vec<String> {
    (0..m)
        .flat_map(|i| (0..n).map(move |k| format!("w{i}_{k}")))
        .collect()
}

/// Pulls back an ideal in `params + mn` variables (Segre coordinates last) along
/// `w_{ik} ↦ x_i y_k`, adds `I_X`, `I_Y` and saturates in `x` and in `y`.
/// Variables of the result: `params`, then `x`, then `y`.
pub(crate) fn bihomogeneous_ideal(
    graph: &Ideal,
    x: &ProjectiveScheme,
    y: &ProjectiveScheme,
    m: usize,
    n: usize,
    params: usize,
    budget: &Budget,
) -> Result<Ideal> {
    let total = params + m + n;
    let mut images: Vec<Polynomial> = (0..params).map(|v| Polynomial::var(total, v)).collect();
    for i in 0..m {
        for k in 0..n {
            images.push(
                &Polynomial::var(total, params + i) * &Polynomial::var(total, params + m + k),
            );
        }
    }
    let mut gens = graph.map(&images)?.gens().to_vec();
    gens.extend(
        x.saturated(budget)?
            .gens()
            .iter()
            .map(|g| g.embed(total, params)),
    );
    gens.extend(
        y.saturated(budget)?
            .gens()
            .iter()
            .map(|g| g.embed(total, params + m)),
    );
    let xs = Ideal::new(
        total,
        (0..m).map(|i| Polynomial::var(total, params + i)).collect(),
    );
    let ys = Ideal::new(
        total,
        (0..n)
            .map(|k| Polynomial::var(total, params + m + k))
            .collect(),
    );
    Ideal::new(total, gens)
        .saturate(&xs, budget)?
        .saturate(&ys, budget)?
        .normalized(budget)
}

#[cfg(test)]
mod tests;
