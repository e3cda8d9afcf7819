use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::linalg::{eval_matrix, minor_count, minors, rank, rref, QMatrix};
use crate::poly::{
    binomial, monomial_basis, parse_poly, q, Monomial, Polynomial, Rational, UniPoly,
};
use crate::scheme::ProjectiveScheme;

use super::gotzmann::gotzmann_number;

/// Affine chart `U_K` of the Grassmannian restricted to a Hilbert scheme.
#[derive(Clone, Debug)]
pub struct Chart {
    pub r: usize,
    pub d: u32,
    /// `M_d`, lex-descending.
    pub basis: Vec<Monomial>,
    /// Indices of `K` in `basis`, ascending.
    pub k: Vec<usize>,
    pub p: usize,
    pub p_dual: usize,
    pub q_dual: usize,
    /// Coefficient rows of a basis of `(I_X)_d` for a relative chart.
    pub ambient: Vec<Vec<Rational>>,
    pub equations: Vec<Polynomial>,
    pub minors_examined: u64,
    pub complete: bool,
}

/// Exported form of a chart.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChartFile {
    pub d: u32,
    #[serde(rename = "K")]
    pub k: Vec<String>,
    pub variables: Vec<String>,
    pub equations: Vec<String>,
    pub complete: bool,
}

fn rows_count(r: usize, d: u32) -> usize {
    binomial((r as u64) + d as u64 - 1, d as u64) as usize
}

fn poly_value(p: &UniPoly, d: u32) -> Result<usize> {
    let v = p.eval_int(d as i64);
    if !v.is_integer() || v < q(0) {
        return Err(Error::Invalid(format!(
            "P({d}) is not a non-negative integer"
        )));
    }
    v.to_integer()
        .try_into()
        .map_err(|_| Error::Invalid("P(d) too large".into()))
}

/// Number of minors defining a chart of `Hilb_P(P^{r-1})` in degree `d`, computed without
/// building the chart.
pub fn chart_minor_count(p: &UniPoly, r: usize, d: u32) -> Result<u64> {
    let rd = rows_count(r, d);
    let rd1 = rows_count(r, d + 1);
    let p_dual = rd.saturating_sub(poly_value(p, d)?);
    let q_dual = rd1.saturating_sub(poly_value(p, d + 1)?);
    Ok(minor_count(rd1, r.saturating_mul(p_dual), q_dual + 1))
}

impl Chart {
    /// Chart data without equations.
    pub fn skeleton(p: &UniPoly, r: usize, k: &[Monomial], d: Option<u32>) -> Result<Chart> {
        let g = gotzmann_number(p, r)?;
        let d = d.unwrap_or(g.phi.max(1) as u32);
        if (d as i64) < g.phi {
            return Err(Error::Invalid(format!(
                "d = {d} is below the Gotzmann number {}",
                g.phi
            )));
        }
        let basis = monomial_basis(r, d);
        let pd = poly_value(p, d)?;
        let pd1 = poly_value(p, d + 1)?;
        let rd = basis.len();
        let rd1 = rows_count(r, d + 1);
        let mut idx: Vec<usize> =
            k.iter()
                .map(|m| {
                    basis.iter().position(|b| b == m).ok_or_else(|| {
                        Error::Invalid(format!("{m:?} is not a monomial of degree {d}"))
                    })
                })
                .collect::<Result<_>>()?;
        idx.sort_unstable();
        idx.dedup();
        if idx.len() != pd {
            return Err(Error::Invalid(format!(
                "|K| = {} but P({d}) = {pd}",
                idx.len()
            )));
        }
        Ok(Chart {
            r,
            d,
            basis,
            k: idx,
            p: pd,
            p_dual: rd - pd,
            q_dual: rd1.saturating_sub(pd1),
            ambient: vec![],
            equations: vec![],
            minors_examined: 0,
            complete: false,
        })
    }

    /// Default `K`: the last `P(d)` monomials of `M_d`.
    pub fn default_k(p: &UniPoly, r: usize, d: u32) -> Result<Vec<Monomial>> {
        let basis = monomial_basis(r, d);
        let pd = poly_value(p, d)?;
        if pd > basis.len() {
            return Err(Error::Invalid(format!("P({d}) exceeds dim R_{d}")));
        }
        Ok(basis[basis.len() - pd..].to_vec())
    }

    pub fn nvars(&self) -> usize {
        self.p * self.p_dual
    }

    /// Index of `u_{K[ki], j}`.
    pub fn var(&self, ki: usize, j: usize) -> usize {
        ki * self.p_dual + j
    }

    pub fn variable_names(&self) -> Vec<String> {
        (1..=self.nvars()).map(|i| format!("u{i}")).collect()
    }

    /// Rows of `M_d \ K`, ascending.
    pub fn non_k(&self) -> Vec<usize> {
        (0..self.basis.len())
            .filter(|i| !self.k.contains(i))
            .collect()
    }

    /// The universal `r_d × p^∨` matrix `𝒜_K`.
    pub fn universal_matrix(&self) -> Vec<Vec<Polynomial>> {
        let n = self.nvars();
        let mut a = vec![vec![Polynomial::zero(n); self.p_dual]; self.basis.len()];
        for (j, &row) in self.non_k().iter().enumerate() {
            a[row][j] = Polynomial::one(n);
        }
        for (ki, &row) in self.k.iter().enumerate() {
            for j in 0..self.p_dual {
                a[row][j] = Polynomial::var(n, self.var(ki, j));
            }
        }
        a
    }

    /// `B = (B_1 | … | B_r)`, the images of the columns of `a` under multiplication by `x_i`.
    pub fn multiplication_matrix<T: Clone>(&self, a: &[Vec<T>], zero: T) -> Vec<Vec<T>> {
        let next: std::collections::HashMap<Monomial, usize> = monomial_basis(self.r, self.d + 1)
            .into_iter()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let mut b = vec![vec![zero; self.r * self.p_dual]; next.len()];
        for i in 0..self.r {
            let xi = Monomial::var(self.r, i);
            for (row, m) in self.basis.iter().enumerate() {
                let target = next[&m.mul(&xi)];
                for j in 0..self.p_dual {
                    b[target][i * self.p_dual + j] = a[row][j].clone();
                }
            }
        }
        b
    }

    /// `C_A = (𝒜 | f_1 | … | f_l)`.
    pub fn containment_matrix(&self) -> Vec<Vec<Polynomial>> {
        let n = self.nvars();
        let mut a = self.universal_matrix();
        for (row, r) in a.iter_mut().enumerate() {
            for f in &self.ambient {
                r.push(Polynomial::constant(n, f[row].clone()));
            }
        }
        a
    }

    /// Generates all chart equations, counting minors against the budget.
    pub fn compute_equations(&mut self, budget: &Budget) -> Result<()> {
        if minor_count(
            rows_count(self.r, self.d + 1),
            self.r * self.p_dual,
            self.q_dual + 1,
        ) > budget.minor_cap
        {
            return Err(Error::Budget {
                resource: "minor",
                cap: budget.minor_cap,
            });
        }
        let n = self.nvars();
        let b = self.multiplication_matrix(&self.universal_matrix(), Polynomial::zero(n));
        let mut used = 0u64;
        let k = self.q_dual + 1;
        let mut eqs = minors(&b, k, n, budget, &mut used)?;
        if !self.ambient.is_empty() {
            let c = self.containment_matrix();
            eqs.extend(minors(&c, self.p_dual + 1, n, budget, &mut used)?);
        }
        let mut seen = std::collections::HashSet::new();
        self.equations = eqs
            .into_iter()
            .map(|e| e.primitive())
            .filter(|e| seen.insert(e.clone()))
            .collect();
        self.minors_examined = used;
        self.complete = true;
        Ok(())
    }

    pub fn equation_ideal(&self) -> Ideal {
        Ideal::new(self.nvars(), self.equations.clone())
    }

    /// Rank test at a point: `rank B ≤ q^∨` and, for relative charts, `rank C_A ≤ p^∨`.
    pub fn contains_point(&self, point: &[Rational]) -> bool {
        let a: QMatrix = eval_matrix(&self.universal_matrix(), point);
        let b = self.multiplication_matrix(&a, q(0));
        if rank(&b) > self.q_dual {
            return false;
        }
        if self.ambient.is_empty() {
            return true;
        }
        let c: QMatrix = a
            .iter()
            .enumerate()
            .map(|(row, r)| {
                r.iter()
                    .cloned()
                    .chain(self.ambient.iter().map(|f| f[row].clone()))
                    .collect()
            })
            .collect();
        rank(&c) <= self.p_dual
    }

    /// Whether every generated equation vanishes at `point`, evaluated in parallel with early exit.
    pub fn equations_vanish_at(&self, point: &[Rational]) -> bool {
        self.equations.par_iter().all(|e| e.eval(point) == q(0))
    }

    /// Universal family over the chart.
    pub fn universal_family(&self) -> UniversalFamily {
        let n = self.nvars();
        let total = n + self.r;
        let a = self.universal_matrix();
        let polys = (0..self.p_dual)
            .map(|j| {
                let mut h = Polynomial::zero(total);
                for (row, m) in self.basis.iter().enumerate() {
                    let mut e = vec![0u32; n];
                    e.extend_from_slice(m.exps());
                    let mono = Polynomial::monomial(Monomial::new(e), q(1));
                    h = &h + &(&a[row][j].embed(total, 0) * &mono);
                }
                h
            })
            .collect();
        let ambient = self
            .ambient
            .iter()
            .map(|f| row_to_poly(&self.basis, f).embed(total, n))
            .collect();
        UniversalFamily {
            chart_vars: n,
            r: self.r,
            polys,
            ambient,
        }
    }

    /// The point of `U_K` for a subspace given by coefficient rows over `M_d`, if it lies
    /// in this chart.
    pub fn point_of_subspace(&self, rows: &QMatrix) -> Option<Vec<Rational>> {
        let (k, point) = echelon_point(&self.basis, rows);
        (k == self.k).then_some(point)
    }

    pub fn to_file(&self) -> ChartFile {
        let xn = crate::poly::x_names(self.r);
        let un = self.variable_names();
        ChartFile {
            d: self.d,
            k: self
                .k
                .iter()
                .map(|&i| Polynomial::monomial(self.basis[i].clone(), q(1)).fmt_with(&xn))
                .collect(),
            variables: un.clone(),
            equations: self.equations.iter().map(|e| e.fmt_with(&un)).collect(),
            complete: self.complete,
        }
    }

    /// Equations of an exported chart, re-parsed.
    pub fn parse_equations(f: &ChartFile) -> Result<Vec<Polynomial>> {
        f.equations
            .iter()
            .map(|e| parse_poly(e, &f.variables))
            .collect()
    }
}

fn row_to_poly(basis: &[Monomial], row: &[Rational]) -> Polynomial {
    let arity = basis.first().map_or(0, |m| m.arity());
    Polynomial::from_terms(arity, basis.iter().cloned().zip(row.iter().cloned()))
}

/// Reduced echelon form of a subspace: `K` is the complement of the pivot set and the
/// point lists `u_{i,j}` row by row.
pub fn echelon_point(basis: &[Monomial], rows: &QMatrix) -> (Vec<usize>, Vec<Rational>) {
    let (red, pivots) = rref(rows.clone());
    let k: Vec<usize> = (0..basis.len()).filter(|i| !pivots.contains(i)).collect();
    let p_dual = pivots.len();
    let mut point = Vec::with_capacity(k.len() * p_dual);
    for &i in &k {
        for row in red.iter().take(p_dual) {
            point.push(row[i].clone());
        }
    }
    (k, point)
}

/// Coefficient rows of a basis of `(I_Z)_d` for the saturated ideal of `Z`.
pub fn degree_part_rows(z: &ProjectiveScheme, d: u32, budget: &Budget) -> Result<QMatrix> {
    let basis = monomial_basis(z.ambient_vars(), d);
    z.saturated(budget)?.degree_part(d, &basis, budget)
}

/// Chart of `Hilb_P(P^{r-1})` with all equations.
pub fn hilb_chart(
    p: &UniPoly,
    r: usize,
    k: &[Monomial],
    d: Option<u32>,
    budget: &Budget,
) -> Result<Chart> {
    let mut c = Chart::skeleton(p, r, k, d)?;
    c.compute_equations(budget)?;
    Ok(c)
}

/// Degree used for charts of `Hilb_P(X)`: `max(φ(P), φ(P_X))`.
pub fn relative_degree(x: &ProjectiveScheme, p: &UniPoly, budget: &Budget) -> Result<u32> {
    let r = x.ambient_vars();
    let px = x.hilbert_polynomial(budget)?;
    let phi_x = if px.is_zero() {
        1
    } else {
        gotzmann_number(&px, r)?.phi
    };
    Ok(gotzmann_number(p, r)?.phi.max(phi_x).max(1) as u32)
}

/// Chart of `Hilb_P(X)`: the chart of `Hilb_P(P^{r-1})` plus the `(p^∨+1)`-minors of `C_A`.
pub fn hilb_chart_relative(
    x: &ProjectiveScheme,
    p: &UniPoly,
    k: &[Monomial],
    budget: &Budget,
) -> Result<Chart> {
    let d = relative_degree(x, p, budget)?;
    let mut c = Chart::skeleton(p, x.ambient_vars(), k, Some(d))?;
    c.ambient = degree_part_rows(x, d, budget)?;
    c.compute_equations(budget)?;
    Ok(c)
}

/// `Z_K ⊂ U_K × P^{r-1}`: chart variables first, then `x_1..x_r`.
#[derive(Clone, Debug)]
pub struct UniversalFamily {
    pub chart_vars: usize,
    pub r: usize,
    /// `h_{K,1..p^∨}`.
    pub polys: Vec<Polynomial>,
    /// `f_1..f_l` for relative charts.
    pub ambient: Vec<Polynomial>,
}

impl UniversalFamily {
    /// The fiber over a point of the chart, as an ideal of `Q[x_1..x_r]`.
    pub fn specialize(&self, point: &[Rational]) -> Ideal {
        let n = self.chart_vars;
        let values: Vec<Option<Rational>> = point
            .iter()
            .cloned()
            .map(Some)
            .chain(std::iter::repeat_n(None, self.r))
            .collect();
        let keep: Vec<usize> = (n..n + self.r).collect();
        let gens = self
            .polys
            .iter()
            .chain(&self.ambient)
            .map(|h| h.specialize(&values).restrict(&keep))
            .collect();
        Ideal::new(self.r, gens)
    }
}
