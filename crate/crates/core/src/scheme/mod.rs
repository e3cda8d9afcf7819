//! Closed subschemes of projective space given by homogeneous ideals.

pub mod catalog;
mod components;
pub mod radical;

use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::poly::{
    monomial_basis, parse_poly, q, x_names, Monomial, Polynomial, Rational, UniPoly,
};

pub use components::{rr_check, ComponentData};

/// `X = V(I) ⊂ P^{m-1}` for a homogeneous ideal `I ⊂ Q[x_1..x_m]`.
pub struct ProjectiveScheme {
    ideal: Ideal,
    hints: Option<Vec<Ideal>>,
    sat: Mutex<Option<Ideal>>,
}

impl Clone for ProjectiveScheme {
    fn clone(&self) -> Self {
        ProjectiveScheme {
            ideal: self.ideal.clone(),
            hints: self.hints.clone(),
            sat: Mutex::new(self.sat.lock().unwrap().clone()),
        }
    }
}

impl std::fmt::Debug for ProjectiveScheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "ProjectiveScheme(P^{}, {:?})",
            self.ambient_dim(),
            self.ideal
        )
    }
}

/// On-disk form: `{"ambient": m, "generators": [...], "components": [[...]]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SchemeFile {
    pub ambient: usize,
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<Vec<String>>>,
}

impl ProjectiveScheme {
    pub fn new(ideal: Ideal) -> Result<Self> {
        if ideal.arity() == 0 {
            return Err(Error::Invalid(
                "ambient ring needs at least one variable".into(),
            ));
        }
        if let Some(g) = ideal.gens().iter().find(|g| !g.is_homogeneous()) {
            return Err(Error::NotHomogeneous(g.to_string()));
        }
        Ok(ProjectiveScheme {
            ideal,
            hints: None,
            sat: Mutex::new(None),
        })
    }

    pub fn parse(m: usize, gens: &[&str]) -> Result<Self> {
        Self::new(Ideal::parse(m, gens)?)
    }

    /// Whole projective space `P^{m-1}`.
    pub fn projective_space(m: usize) -> Self {
        Self::new(Ideal::zero(m)).expect("zero ideal is homogeneous")
    }

    /// Attaches candidate component primes, checked when components are computed.
    pub fn with_component_hints(mut self, hints: Vec<Ideal>) -> Result<Self> {
        for h in &hints {
            if h.arity() != self.ideal.arity() {
                return Err(Error::ArityMismatch {
                    expected: self.ideal.arity(),
                    found: h.arity(),
                });
            }
        }
        self.hints = Some(hints);
        Ok(self)
    }

    pub fn component_hints(&self) -> Option<&[Ideal]> {
        self.hints.as_deref()
    }

    /// Number of homogeneous coordinates.
    pub fn ambient_vars(&self) -> usize {
        self.ideal.arity()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ideal.arity() - 1
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    /// `I : m^∞`.
    pub fn saturated(&self, budget: &Budget) -> Result<Ideal> {
        if let Some(s) = self.sat.lock().unwrap().as_ref() {
            return Ok(s.clone());
        }
        let n = self.ideal.arity();
        let s = self
            .ideal
            .saturate(&Ideal::maximal(n), budget)?
            .normalized(budget)?;
        *self.sat.lock().unwrap() = Some(s.clone());
        Ok(s)
    }

    pub fn hilbert_polynomial(&self, budget: &Budget) -> Result<UniPoly> {
        self.ideal.hilbert_polynomial(budget)
    }

    /// `χ(O_X) = P_X(0)`.
    pub fn chi(&self, budget: &Budget) -> Result<BigInt> {
        Ok(self.hilbert_polynomial(budget)?.eval_int(0).to_integer())
    }

    /// Dimension of `X`; `None` when `X` is empty.
    pub fn dimension(&self, budget: &Budget) -> Result<Option<usize>> {
        let p = self.hilbert_polynomial(budget)?;
        Ok(p.degree())
    }

    pub fn is_empty(&self, budget: &Budget) -> Result<bool> {
        Ok(self.hilbert_polynomial(budget)?.is_zero())
    }

    /// `deg X = d! · lead(P_X)`.
    pub fn degree(&self, budget: &Budget) -> Result<BigInt> {
        let p = self.hilbert_polynomial(budget)?;
        Ok(leading_degree(&p))
    }

    /// Affine charts `x_i = 1`, each in the remaining `m - 1` variables.
    pub fn standard_charts(&self) -> Vec<Ideal> {
        let n = self.ideal.arity();
        (0..n)
            .map(|c| {
                Ideal::new(
                    n - 1,
                    self.ideal
                        .gens()
                        .iter()
                        .map(|g| g.dehomogenize(c))
                        .collect(),
                )
            })
            .collect()
    }

    /// Reduced one-dimensional part and reduced isolated-point part.
    pub fn reduced_parts(&self, budget: &Budget) -> Result<(Ideal, Ideal)> {
        radical::projective_radical(&self.saturated(budget)?, budget)
    }

    /// `X` re-embedded by the `e`-uple Veronese map.
    pub fn veronese_reembed(&self, e: u32, budget: &Budget) -> Result<ProjectiveScheme> {
        if e == 0 {
            return Err(Error::Invalid("Veronese degree must be positive".into()));
        }
        let m = self.ideal.arity();
        let mons = monomial_basis(m, e);
        let k = mons.len();
        let total = m + k;
        let mut gens: Vec<Polynomial> = self
            .ideal
            .gens()
            .iter()
            .map(|g| g.embed(total, 0))
            .collect();
        for (j, mon) in mons.iter().enumerate() {
            let mut ex = mon.exps().to_vec();
            ex.extend(std::iter::repeat_n(0, k));
            let xm = Polynomial::monomial(Monomial::new(ex), q(1));
            gens.push(&Polynomial::var(total, m + j) - &xm);
        }
        let image = Ideal::new(total, gens)
            .eliminate(m, budget)?
            .normalized(budget)?;
        ProjectiveScheme::new(image)
    }

    /// Segre product `X × Y ⊂ P^{mn-1}`, with `w_{ij}` at index `i·n + j`.
    pub fn segre_product(x: &ProjectiveScheme, y: &ProjectiveScheme) -> Result<ProjectiveScheme> {
        let (m, n) = (x.ambient_vars(), y.ambient_vars());
        let total = m * n;
        let w = |i: usize, j: usize| Polynomial::var(total, i * n + j);
        let mut gens = Vec::new();
        for i in 0..m {
            for k in i + 1..m {
                for j in 0..n {
                    for l in j + 1..n {
                        gens.push(&(&w(i, j) * &w(k, l)) - &(&w(i, l) * &w(k, j)));
                    }
                }
            }
        }
        for f in x.ideal.gens() {
            gens.extend(bihomogenize(f, n, total, |a, b| b * n + a));
        }
        for g in y.ideal.gens() {
            gens.extend(bihomogenize(g, m, total, |a, b| a * n + b));
        }
        ProjectiveScheme::new(Ideal::new(total, gens))
    }

    pub fn to_file(&self) -> SchemeFile {
        let names = x_names(self.ambient_vars());
        SchemeFile {
            ambient: self.ambient_vars(),
            generators: self
                .ideal
                .gens()
                .iter()
                .map(|g| g.fmt_with(&names))
                .collect(),
            components: self.hints.as_ref().map(|h| {
                h.iter()
                    .map(|i| i.gens().iter().map(|g| g.fmt_with(&names)).collect())
                    .collect()
            }),
        }
    }

    pub fn from_file(f: &SchemeFile) -> Result<Self> {
        let names = x_names(f.ambient);
        let parse = |gs: &[String]| -> Result<Ideal> {
            Ok(Ideal::new(
                f.ambient,
                gs.iter()
                    .map(|g| parse_poly(g, &names))
                    .collect::<Result<_>>()?,
            ))
        };
        let s = Self::new(parse(&f.generators)?)?;
        match &f.components {
            Some(cs) => s.with_component_hints(cs.iter().map(|c| parse(c)).collect::<Result<_>>()?),
            None => Ok(s),
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_file(&serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("scheme file serializes")
    }
}

/// `d! · lead(p)` for a polynomial of degree `d`; zero for the zero polynomial.
pub(crate) fn leading_degree(p: &UniPoly) -> BigInt {
    match p.degree() {
        None => BigInt::zero(),
        Some(d) => {
            let mut f = Rational::from_integer(BigInt::from(1));
            for k in 2..=d {
                f *= Rational::from_integer(BigInt::from(k));
            }
            (p.leading() * f).to_integer()
        }
    }
}

/// The polynomials in `w` pulling back to `f(x) · y^β` for all `y^β` of degree `deg f`.
/// `idx(a, b)` is the index of the coordinate pairing the `a`-th other factor with the `b`-th
/// variable of `f`.
fn bihomogenize(
    f: &Polynomial,
    other: usize,
    total: usize,
    idx: impl Fn(usize, usize) -> usize,
) -> Vec<Polynomial> {
    let d = f.degree().unwrap_or(0);
    if d == 0 {
        return vec![f.embed(total, 0)];
    }
    let mut out = Vec::new();
    for beta in monomial_basis(other, d) {
        let ys: Vec<usize> = expand(beta.exps());
        let mut acc = Polynomial::zero(total);
        for (m, c) in f.terms() {
            let xs = expand(m.exps());
            let mut e = vec![0u32; total];
            for (a, b) in ys.iter().zip(&xs) {
                e[idx(*a, *b)] += 1;
            }
            acc = &acc + &Polynomial::monomial(Monomial::new(e), c.clone());
        }
        out.push(acc);
    }
    out
}

fn expand(exps: &[u32]) -> Vec<usize> {
    exps.iter()
        .enumerate()
        .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
        .collect()
}

#[cfg(test)]
mod tests;
