//! Finitely presented modules over `Q[x]/I`, graded or not.

mod homology;
mod pushforward;

pub use homology::{
    cotangent_module, global_sections_module, hom_module, kernel, relative_cotangent, subquotient,
    tor1,
};
pub use pushforward::finite_pushforward;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::groebner::{
    hilbert_numerator, reduce_series, series_to_polynomial, series_values, Ideal, ModuleGb,
    ModuleTermOrder,
};
use crate::linalg::{minor_count, minors};
use crate::poly::{
    monomial_basis, parse_poly, x_names, MonomialOrder, Polynomial, Rational, UniPoly,
};

/// Cokernel of `⊕ R(b_j) -> ⊕ R(a_i)` over `R = Q[x]/base`.
///
/// Entry `(i, j)` is homogeneous of degree `a_i - b_j` when graded; generator `i`
/// sits in degree `-a_i`.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub arity: usize,
    pub base: Vec<Polynomial>,
    pub target: Vec<i64>,
    pub source: Vec<i64>,
    /// Rows index generators, columns index relations.
    pub matrix: Vec<Vec<Polynomial>>,
    pub graded: bool,
}

pub type GradedModulePresentation = Presentation;
pub type AffineModule = Presentation;

/// Degree of a homogeneous vector in `⊕ R(a_i)`.
pub fn vector_degree(v: &[Polynomial], twists: &[i64]) -> Option<i64> {
    v.iter()
        .zip(twists)
        .find(|(p, _)| !p.is_zero())
        .map(|(p, a)| p.degree().unwrap() as i64 - a)
}

impl Presentation {
    pub fn new(
        arity: usize,
        base: Vec<Polynomial>,
        target: Vec<i64>,
        source: Vec<i64>,
        matrix: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        let p = Presentation {
            arity,
            base,
            target,
            source,
            matrix,
            graded: true,
        };
        p.validate()?;
        Ok(p)
    }

    /// Ungraded module; entries are reduced modulo the base ideal.
    pub fn affine(
        arity: usize,
        base: Vec<Polynomial>,
        rows: usize,
        matrix: Vec<Vec<Polynomial>>,
        budget: &Budget,
    ) -> Result<Self> {
        let cols = matrix.first().map_or(0, |r| r.len());
        let ideal = Ideal::new(arity, base.clone());
        let g = ideal.grevlex(budget)?;
        let matrix: Vec<Vec<Polynomial>> = matrix
            .iter()
            .map(|r| r.iter().map(|p| g.reduce(p)).collect())
            .collect();
        let base = g.polys().to_vec();
        let p = Presentation {
            arity,
            base,
            target: vec![0; rows],
            source: vec![0; cols],
            matrix: if rows == 0 { vec![] } else { matrix },
            graded: false,
        };
        p.validate()?;
        Ok(p)
    }

    /// Free module `⊕ R(a_i)`.
    pub fn free(arity: usize, base: Vec<Polynomial>, twists: Vec<i64>) -> Self {
        Presentation {
            arity,
            base,
            matrix: vec![Vec::new(); twists.len()],
            target: twists,
            source: vec![],
            graded: true,
        }
    }

    /// `R/J` for an ideal `J ⊇ base` given by generators.
    pub fn cyclic(arity: usize, base: Vec<Polynomial>, gens: &[Polynomial]) -> Self {
        Presentation {
            arity,
            base,
            target: vec![0],
            source: gens
                .iter()
                .map(|g| -(g.degree().unwrap_or(0) as i64))
                .collect(),
            matrix: vec![gens.to_vec()],
            graded: gens.iter().all(|g| g.is_homogeneous()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.matrix.len() != self.target.len() {
            return Err(Error::Invalid(format!(
                "matrix has {} rows but {} target twists",
                self.matrix.len(),
                self.target.len()
            )));
        }
        for row in &self.matrix {
            if row.len() != self.source.len() {
                return Err(Error::Invalid(
                    "matrix row length differs from source twist count".into(),
                ));
            }
            for p in row {
                if p.arity() != self.arity {
                    return Err(Error::ArityMismatch {
                        expected: self.arity,
                        found: p.arity(),
                    });
                }
            }
        }
        if self.graded {
            for (i, row) in self.matrix.iter().enumerate() {
                for (j, p) in row.iter().enumerate() {
                    if p.is_zero() {
                        continue;
                    }
                    let want = self.target[i] - self.source[j];
                    if !p.is_homogeneous() || p.degree().unwrap() as i64 != want {
                        return Err(Error::NotHomogeneous(format!(
                            "entry ({i},{j}) = {p} should have degree {want}"
                        )));
                    }
                }
            }
            if let Some(g) = self.base.iter().find(|g| !g.is_homogeneous()) {
                return Err(Error::NotHomogeneous(g.to_string()));
            }
        }
        Ok(())
    }

    pub fn rows(&self) -> usize {
        self.target.len()
    }

    pub fn cols(&self) -> usize {
        self.source.len()
    }

    pub fn base_ideal(&self) -> Ideal {
        Ideal::new(self.arity, self.base.clone())
    }

    /// Generator degrees `-a_i`.
    pub fn generator_degrees(&self) -> Vec<i64> {
        self.target.iter().map(|a| -a).collect()
    }

    /// Column `j` as a vector.
    pub fn column(&self, j: usize) -> Vec<Polynomial> {
        self.matrix.iter().map(|r| r[j].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Polynomial>> {
        (0..self.cols()).map(|j| self.column(j)).collect()
    }

    /// Relation vectors over the polynomial ring: the columns plus `base * e_i`.
    pub fn relations(&self) -> Vec<Vec<Polynomial>> {
        let mut out = self.columns();
        out.extend(base_multiples(&self.base, self.rows(), self.arity));
        out
    }

    fn term_order(&self) -> ModuleTermOrder {
        if self.graded {
            ModuleTermOrder::top(MonomialOrder::Grevlex, self.generator_degrees())
        } else {
            ModuleTermOrder::pot(MonomialOrder::Grevlex)
        }
    }

    /// Gröbner basis of the relation submodule.
    pub fn relation_gb(&self, budget: &Budget) -> Result<ModuleGb> {
        ModuleGb::compute(
            &self.relations(),
            self.arity,
            self.rows(),
            &self.term_order(),
            budget,
        )
    }

    pub fn is_zero(&self, budget: &Budget) -> Result<bool> {
        if self.rows() == 0 {
            return Ok(true);
        }
        let gb = self.relation_gb(budget)?;
        let lts = gb.leading_terms();
        Ok((0..self.rows()).all(|c| lts.iter().any(|(m, k)| *k == c && m.is_one())))
    }

    fn series(&self, budget: &Budget) -> Result<Vec<(i64, Vec<BigInt>)>> {
        if !self.graded {
            return Err(Error::Invalid(
                "Hilbert function of an ungraded module".into(),
            ));
        }
        let gb = self.relation_gb(budget)?;
        let lts = gb.leading_terms();
        Ok((0..self.rows())
            .map(|c| {
                let ms: Vec<_> = lts
                    .iter()
                    .filter(|(_, k)| *k == c)
                    .map(|(m, _)| m.clone())
                    .collect();
                (-self.target[c], hilbert_numerator(&ms, self.arity))
            })
            .collect())
    }

    /// `dim_Q M_d` for `d` in `from..=to`.
    pub fn hilbert_function(&self, from: i64, to: i64, budget: &Budget) -> Result<Vec<BigInt>> {
        let parts = self.series(budget)?;
        let mut out = vec![BigInt::from(0); (to - from + 1).max(0) as usize];
        for (shift, num) in parts {
            let upto = to - shift;
            if upto < 0 {
                continue;
            }
            let vals = series_values(&num, self.arity, upto as usize);
            for d in from..=to {
                let k = d - shift;
                if k >= 0 {
                    out[(d - from) as usize] += &vals[k as usize];
                }
            }
        }
        Ok(out)
    }

    pub fn hilbert_polynomial(&self, budget: &Budget) -> Result<UniPoly> {
        let mut acc = UniPoly::zero();
        for (shift, num) in self.series(budget)? {
            let (q, d) = reduce_series(&num, self.arity);
            acc = acc.add(&series_to_polynomial(&q, d).shift(-shift));
        }
        Ok(acc)
    }

    /// `Fitt_i`: the `(r-i)`-minors plus the base ideal.
    pub fn fitting_ideal(&self, i: usize, budget: &Budget) -> Result<Ideal> {
        let r = self.rows();
        let base = self.base_ideal();
        if i >= r {
            return Ok(Ideal::unit(self.arity));
        }
        let k = r - i;
        if k > self.cols() {
            return Ok(base);
        }
        let mut used = 0;
        let ms = minors(&self.matrix, k, self.arity, budget, &mut used)?;
        Ok(base.with(ms))
    }

    /// `{f : f e_c ∈ relations}`.
    pub fn component_colon(&self, c: usize, budget: &Budget) -> Result<Ideal> {
        let mut e = vec![Polynomial::zero(self.arity); self.rows()];
        e[c] = Polynomial::one(self.arity);
        let mut cols = vec![e];
        cols.extend(self.relations());
        let syz = crate::groebner::syzygies(&cols, self.arity, self.rows(), budget)?;
        Ok(Ideal::new(
            self.arity,
            syz.into_iter().map(|v| v[0].clone()).collect(),
        ))
    }

    pub fn annihilator(&self, budget: &Budget) -> Result<Ideal> {
        let mut acc = Ideal::unit(self.arity);
        for c in 0..self.rows() {
            acc = acc.intersect(&self.component_colon(c, budget)?, budget)?;
        }
        Ok(acc.with(self.base.iter().cloned()))
    }

    /// Ideal cutting out the support: `Fitt_0` when the minor count is small, the
    /// annihilator otherwise.
    pub fn support_ideal(&self, budget: &Budget) -> Result<Ideal> {
        let r = self.rows();
        if r == 0 {
            return Ok(Ideal::unit(self.arity));
        }
        if minor_count(r, self.cols(), r) <= 2_000 {
            self.fitting_ideal(0, budget)
        } else {
            self.annihilator(budget)
        }
    }

    /// Entries reduced modulo the base ideal.
    pub fn reduced(&self, budget: &Budget) -> Result<Presentation> {
        let g = self.base_ideal().grevlex(budget)?;
        let mut out = self.clone();
        for row in out.matrix.iter_mut() {
            for p in row.iter_mut() {
                *p = g.reduce(p);
            }
        }
        Ok(out)
    }

    /// Removes unit entries and redundant relations, then sorts generators by degree.
    pub fn minimal_presentation(&self, budget: &Budget) -> Result<Presentation> {
        let mut m = self.reduced(budget)?;
        // Eliminate generators killed by relations with a unit entry.
        'outer: loop {
            for j in 0..m.cols() {
                for i in 0..m.rows() {
                    let p = &m.matrix[i][j];
                    if p.is_constant() && !p.is_zero() {
                        m = m.eliminate_pivot(i, j);
                        continue 'outer;
                    }
                }
            }
            break;
        }
        // Drop zero and redundant relations, highest degree first.
        let mut order: Vec<usize> = (0..m.cols()).collect();
        order.sort_by_key(|&j| std::cmp::Reverse((m.source[j], j)));
        let mut keep = vec![true; m.cols()];
        for &j in &order {
            let col = m.column(j);
            if col.iter().all(|p| p.is_zero()) {
                keep[j] = false;
                continue;
            }
            let mut others: Vec<Vec<Polynomial>> = (0..m.cols())
                .filter(|&k| k != j && keep[k])
                .map(|k| m.column(k))
                .collect();
            others.extend(base_multiples(&m.base, m.rows(), m.arity));
            if others.is_empty() {
                continue;
            }
            let gb = ModuleGb::compute(&others, m.arity, m.rows(), &m.term_order(), budget)?;
            if gb.contains(&col) {
                keep[j] = false;
            }
        }
        let cols: Vec<usize> = (0..m.cols()).filter(|&j| keep[j]).collect();
        let mut rows: Vec<usize> = (0..m.rows()).collect();
        rows.sort_by_key(|&i| (-m.target[i], i));
        Ok(Presentation {
            arity: m.arity,
            base: m.base.clone(),
            target: rows.iter().map(|&i| m.target[i]).collect(),
            source: cols.iter().map(|&j| m.source[j]).collect(),
            matrix: rows
                .iter()
                .map(|&i| cols.iter().map(|&j| m.matrix[i][j].clone()).collect())
                .collect(),
            graded: m.graded,
        })
    }

    /// Uses relation `j` with unit entry at row `i` to eliminate generator `i`.
    fn eliminate_pivot(&self, i: usize, j: usize) -> Presentation {
        let piv = self.matrix[i][j].constant_term();
        let colj = self.column(j);
        let mut matrix = Vec::new();
        for (r, row) in self.matrix.iter().enumerate() {
            if r == i {
                continue;
            }
            let mut new_row = Vec::new();
            for (k, p) in row.iter().enumerate() {
                if k == j {
                    continue;
                }
                let f = self.matrix[i][k].scale(&(Rational::from_integer(1.into()) / &piv));
                new_row.push(p - &(&colj[r] * &f));
            }
            matrix.push(new_row);
        }
        let target = self
            .target
            .iter()
            .enumerate()
            .filter(|(r, _)| *r != i)
            .map(|(_, a)| *a)
            .collect();
        let source = self
            .source
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != j)
            .map(|(_, b)| *b)
            .collect();
        Presentation {
            arity: self.arity,
            base: self.base.clone(),
            target,
            source,
            matrix,
            graded: self.graded,
        }
    }

    /// Presentation of `M_{≥r}`.
    pub fn truncate(&self, r: i64, budget: &Budget) -> Result<Presentation> {
        let mut gens = Vec::new();
        for (i, a) in self.target.iter().enumerate() {
            let deg = -a;
            let need = (r - deg).max(0) as u32;
            for m in monomial_basis(self.arity, need) {
                let mut v = vec![Polynomial::zero(self.arity); self.rows()];
                v[i] = Polynomial::monomial(m, crate::poly::q(1));
                gens.push(v);
            }
        }
        subquotient(
            self.arity,
            &self.base,
            &self.target,
            gens,
            self.columns(),
            self.graded,
            budget,
        )
    }

    pub fn to_file(&self) -> ModuleFile {
        let names = x_names(self.arity);
        ModuleFile {
            arity: self.arity,
            base: self.base.iter().map(|p| p.fmt_with(&names)).collect(),
            target_twists: self.target.clone(),
            source_twists: self.source.clone(),
            matrix: self
                .matrix
                .iter()
                .map(|r| r.iter().map(|p| p.fmt_with(&names)).collect())
                .collect(),
            graded: self.graded,
        }
    }

    pub fn from_file(f: &ModuleFile) -> Result<Self> {
        let names = x_names(f.arity);
        let parse = |s: &String| parse_poly(s, &names);
        let p = Presentation {
            arity: f.arity,
            base: f.base.iter().map(parse).collect::<Result<_>>()?,
            target: f.target_twists.clone(),
            source: f.source_twists.clone(),
            matrix: f
                .matrix
                .iter()
                .map(|r| r.iter().map(parse).collect::<Result<Vec<_>>>())
                .collect::<Result<_>>()?,
            graded: f.graded,
        };
        p.validate()?;
        Ok(p)
    }
}

/// `f e_i` for every base generator `f` and row `i`.
pub(crate) fn base_multiples(
    base: &[Polynomial],
    rows: usize,
    arity: usize,
) -> Vec<Vec<Polynomial>> {
    let mut out = Vec::new();
    for f in base {
        for i in 0..rows {
            let mut v = vec![Polynomial::zero(arity); rows];
            v[i] = f.clone();
            out.push(v);
        }
    }
    out
}

/// JSON form of a presentation; polynomials are written in `x1..xn`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleFile {
    pub arity: usize,
    #[serde(default)]
    pub base: Vec<String>,
    pub target_twists: Vec<i64>,
    pub source_twists: Vec<i64>,
    pub matrix: Vec<Vec<String>>,
    #[serde(default = "default_true")]
    pub graded: bool,
}

fn default_true() -> bool {
    true
}

#[cfg(test)]
mod tests;
