use std::fmt;
use std::sync::{Arc, Mutex};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::poly::{parse_poly, x_names, Monomial, MonomialOrder, Polynomial, UniPoly};

use super::engine::{ModuleGb, ModuleTermOrder};
use super::hilbert::{hilbert_numerator, reduce_series, series_to_polynomial, series_values};
use super::syzygy::syzygies;

/// Reduced Gröbner basis of an ideal.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    inner: ModuleGb,
    polys: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn compute(
        gens: &[Polynomial],
        arity: usize,
        order: MonomialOrder,
        budget: &Budget,
    ) -> Result<Self> {
        let vs: Vec<Vec<Polynomial>> = gens.iter().map(|g| vec![g.clone()]).collect();
        let inner = ModuleGb::compute(&vs, arity, 1, &ModuleTermOrder::ideal(order), budget)?;
        let polys = inner.elements().iter().map(|v| v[0].clone()).collect();
        Ok(GroebnerBasis { inner, polys })
    }

    pub fn order(&self) -> MonomialOrder {
        self.inner.order().order
    }

    /// Monic elements, ascending by leading term.
    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.inner
            .leading_terms()
            .into_iter()
            .map(|(m, _)| m)
            .collect()
    }

    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        self.inner.reduce(std::slice::from_ref(f)).pop().unwrap()
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.reduce(f).is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.polys.iter().any(|p| p.is_constant() && !p.is_zero())
    }
}

/// Ideal of `Q[x_1..x_n]` with a per-order Gröbner basis cache.
pub struct Ideal {
    arity: usize,
    gens: Vec<Polynomial>,
    cache: Mutex<Vec<Arc<GroebnerBasis>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            arity: self.arity,
            gens: self.gens.clone(),
            cache: Mutex::new(self.cache.lock().unwrap().clone()),
        }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

impl Ideal {
    pub fn new(arity: usize, gens: Vec<Polynomial>) -> Self {
        let gens = gens
            .into_iter()
            .filter(|g| !g.is_zero())
            .collect::<Vec<_>>();
        for g in &gens {
            assert_eq!(g.arity(), arity, "generator arity");
        }
        Ideal {
            arity,
            gens,
            cache: Mutex::new(Vec::new()),
        }
    }

    /// Parses generators written in `x1..xn`.
    pub fn parse(arity: usize, gens: &[&str]) -> Result<Self> {
        let names = x_names(arity);
        let ps = gens
            .iter()
            .map(|s| parse_poly(s, &names))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(arity, ps))
    }

    pub fn zero(arity: usize) -> Self {
        Ideal::new(arity, vec![])
    }

    pub fn unit(arity: usize) -> Self {
        Ideal::new(arity, vec![Polynomial::one(arity)])
    }

    /// The irrelevant ideal `(x_1, ..., x_n)`.
    pub fn maximal(arity: usize) -> Self {
        Ideal::new(
            arity,
            (0..arity).map(|i| Polynomial::var(arity, i)).collect(),
        )
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    pub fn gb(&self, order: MonomialOrder, budget: &Budget) -> Result<Arc<GroebnerBasis>> {
        if let Some(g) = self
            .cache
            .lock()
            .unwrap()
            .iter()
            .find(|g| g.order() == order)
        {
            return Ok(g.clone());
        }
        let g = Arc::new(GroebnerBasis::compute(
            &self.gens, self.arity, order, budget,
        )?);
        self.cache.lock().unwrap().push(g.clone());
        Ok(g)
    }

    pub fn grevlex(&self, budget: &Budget) -> Result<Arc<GroebnerBasis>> {
        self.gb(MonomialOrder::Grevlex, budget)
    }

    /// Same ideal with generators replaced by its reduced grevlex basis.
    pub fn normalized(&self, budget: &Budget) -> Result<Ideal> {
        let g = self.grevlex(budget)?;
        let out = Ideal::new(self.arity, g.polys().to_vec());
        out.cache.lock().unwrap().push(g);
        Ok(out)
    }

    pub fn contains(&self, f: &Polynomial, budget: &Budget) -> Result<bool> {
        Ok(self.grevlex(budget)?.contains(f))
    }

    pub fn contains_ideal(&self, other: &Ideal, budget: &Budget) -> Result<bool> {
        let g = self.grevlex(budget)?;
        Ok(other.gens.iter().all(|f| g.contains(f)))
    }

    pub fn equals(&self, other: &Ideal, budget: &Budget) -> Result<bool> {
        Ok(self.contains_ideal(other, budget)? && other.contains_ideal(self, budget)?)
    }

    pub fn is_unit(&self, budget: &Budget) -> Result<bool> {
        if self.gens.iter().any(|g| g.is_constant()) {
            return Ok(true);
        }
        Ok(self.grevlex(budget)?.is_unit())
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn reduce(&self, f: &Polynomial, budget: &Budget) -> Result<Polynomial> {
        Ok(self.grevlex(budget)?.reduce(f))
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        Ideal::new(self.arity, g)
    }

    pub fn with(&self, extra: impl IntoIterator<Item = Polynomial>) -> Ideal {
        let mut g = self.gens.clone();
        g.extend(extra);
        Ideal::new(self.arity, g)
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let mut g = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                g.push(a * b);
            }
        }
        Ideal::new(self.arity, g)
    }

    /// `I^k`.
    pub fn power(&self, k: u32) -> Ideal {
        let mut acc = Ideal::unit(self.arity);
        for _ in 0..k {
            acc = acc.product(self);
        }
        acc
    }

    /// Image under `x_i -> images[i]`, in the ring of the images.
    pub fn map(&self, images: &[Polynomial]) -> Result<Ideal> {
        let arity = images.first().map(|p| p.arity()).unwrap_or(0);
        let g = self
            .gens
            .iter()
            .map(|f| f.substitute(images))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(arity, g))
    }

    /// Extension to a ring with `extra` new trailing variables.
    pub fn extend_ring(&self, extra: usize) -> Ideal {
        self.embed(self.arity + extra, 0)
    }

    /// Places variables at positions `offset..offset+arity` of a ring of `arity` variables.
    pub fn embed(&self, arity: usize, offset: usize) -> Ideal {
        Ideal::new(
            arity,
            self.gens.iter().map(|g| g.embed(arity, offset)).collect(),
        )
    }

    /// `I ∩ Q[x_k..x_n]`, returned in the ring of the trailing variables.
    pub fn eliminate(&self, k: usize, budget: &Budget) -> Result<Ideal> {
        if k == 0 {
            return Ok(self.clone());
        }
        let g = self.gb(MonomialOrder::Elimination(k), budget)?;
        let keep: Vec<usize> = (k..self.arity).collect();
        let gens = g
            .polys()
            .iter()
            .filter(|p| p.involves_only(k..self.arity))
            .map(|p| p.restrict(&keep))
            .collect();
        Ok(Ideal::new(self.arity - k, gens))
    }

    /// `I : J`.
    pub fn quotient(&self, j: &Ideal, budget: &Budget) -> Result<Ideal> {
        let n = self.arity;
        if j.is_zero() {
            return Ok(Ideal::unit(n));
        }
        if self.is_zero() {
            return Ok(Ideal::zero(n));
        }
        let s = j.gens.len();
        if s == 1 {
            return self.quotient_elem(&j.gens[0], budget);
        }
        let mut cols: Vec<Vec<Polynomial>> = vec![j.gens.clone()];
        let gi = self.grevlex(budget)?;
        for k in 0..s {
            for f in gi.polys() {
                let mut c = vec![Polynomial::zero(n); s];
                c[k] = f.clone();
                cols.push(c);
            }
        }
        let syz = syzygies(&cols, n, s, budget)?;
        Ok(Ideal::new(
            n,
            syz.into_iter().map(|v| v[0].clone()).collect(),
        ))
    }

    /// `I : f`.
    pub fn quotient_elem(&self, f: &Polynomial, budget: &Budget) -> Result<Ideal> {
        let n = self.arity;
        if f.is_zero() {
            return Ok(Ideal::unit(n));
        }
        let mut cols = vec![vec![f.clone()]];
        for g in self.grevlex(budget)?.polys() {
            cols.push(vec![g.clone()]);
        }
        let syz = syzygies(&cols, n, 1, budget)?;
        Ok(Ideal::new(
            n,
            syz.into_iter().map(|v| v[0].clone()).collect(),
        ))
    }

    /// `I : J^∞`.
    pub fn saturate(&self, j: &Ideal, budget: &Budget) -> Result<Ideal> {
        if j.gens.len() == 1 {
            return self.saturate_elem(&j.gens[0], budget);
        }
        let mut cur = self.normalized(budget)?;
        loop {
            budget.check_time()?;
            let next = cur.quotient(j, budget)?.normalized(budget)?;
            if cur.contains_ideal(&next, budget)? {
                return Ok(cur);
            }
            cur = next;
        }
    }

    /// `I : f^∞`, by repeated quotients.
    pub fn saturate_elem(&self, f: &Polynomial, budget: &Budget) -> Result<Ideal> {
        let mut cur = self.normalized(budget)?;
        loop {
            budget.check_time()?;
            let next = cur.quotient_elem(f, budget)?.normalized(budget)?;
            if cur.contains_ideal(&next, budget)? {
                return Ok(cur);
            }
            cur = next;
        }
    }

    /// `(I + (1 - z f)) ∩ Q[x]`, the kernel of `R/I -> (R/I)_f`.
    pub fn localization_kernel(&self, f: &Polynomial, budget: &Budget) -> Result<Ideal> {
        let n = self.arity;
        let z = Polynomial::var(n + 1, 0);
        let mut g: Vec<Polynomial> = self.gens.iter().map(|p| p.embed(n + 1, 1)).collect();
        g.push(&Polynomial::one(n + 1) - &(&z * &f.embed(n + 1, 1)));
        Ideal::new(n + 1, g).eliminate(1, budget)
    }

    /// Whether `f` lies in the radical of `I`.
    pub fn radical_contains(&self, f: &Polynomial, budget: &Budget) -> Result<bool> {
        if f.is_zero() {
            return Ok(true);
        }
        let n = self.arity;
        let z = Polynomial::var(n + 1, n);
        let mut g: Vec<Polynomial> = self.gens.iter().map(|p| p.embed(n + 1, 0)).collect();
        g.push(&Polynomial::one(n + 1) - &(&z * &f.embed(n + 1, 0)));
        Ideal::new(n + 1, g).is_unit(budget)
    }

    /// `I ∩ J`.
    pub fn intersect(&self, j: &Ideal, budget: &Budget) -> Result<Ideal> {
        let n = self.arity;
        if self.is_zero() || j.is_zero() {
            return Ok(Ideal::zero(n));
        }
        let mut cols = vec![vec![Polynomial::one(n), Polynomial::one(n)]];
        for f in self.grevlex(budget)?.polys() {
            cols.push(vec![f.clone(), Polynomial::zero(n)]);
        }
        for g in j.grevlex(budget)?.polys() {
            cols.push(vec![Polynomial::zero(n), g.clone()]);
        }
        let syz = syzygies(&cols, n, 2, budget)?;
        Ok(Ideal::new(
            n,
            syz.into_iter().map(|v| v[0].clone()).collect(),
        ))
    }

    /// Leading-term data of the grevlex basis: numerator and variable count of the Hilbert series.
    fn series(&self, budget: &Budget) -> Result<Vec<num_bigint::BigInt>> {
        let lts = self.grevlex(budget)?.leading_monomials();
        Ok(hilbert_numerator(&lts, self.arity))
    }

    fn require_homogeneous(&self) -> Result<()> {
        match self.gens.iter().find(|g| !g.is_homogeneous()) {
            Some(g) => Err(Error::NotHomogeneous(g.to_string())),
            None => Ok(()),
        }
    }

    /// Hilbert polynomial of `R/I` for homogeneous `I`.
    pub fn hilbert_polynomial(&self, budget: &Budget) -> Result<UniPoly> {
        self.require_homogeneous()?;
        let (q, d) = reduce_series(&self.series(budget)?, self.arity);
        Ok(series_to_polynomial(&q, d))
    }

    /// Hilbert function of `R/I` in degrees `0..=upto`.
    pub fn hilbert_function(
        &self,
        upto: usize,
        budget: &Budget,
    ) -> Result<Vec<num_bigint::BigInt>> {
        self.require_homogeneous()?;
        Ok(series_values(&self.series(budget)?, self.arity, upto))
    }

    /// Krull dimension of `R/I`; `None` for the unit ideal.
    pub fn krull_dim(&self, budget: &Budget) -> Result<Option<usize>> {
        if self.is_unit(budget)? {
            return Ok(None);
        }
        let lts = self.grevlex(budget)?.leading_monomials();
        Ok(Some(monomial_dim(&lts, self.arity)))
    }

    /// Whether the projective scheme `V(I)` is empty.
    pub fn projective_empty(&self, budget: &Budget) -> Result<bool> {
        Ok(match self.krull_dim(budget)? {
            None => true,
            Some(d) => d == 0,
        })
    }

    /// Homogeneous elements of degree `d` spanning `I_d`, as a basis of coefficient rows
    /// over `basis`.
    pub fn degree_part(
        &self,
        d: u32,
        basis: &[Monomial],
        budget: &Budget,
    ) -> Result<Vec<Vec<crate::poly::Rational>>> {
        self.require_homogeneous()?;
        let g = self.grevlex(budget)?;
        let mut rows = Vec::new();
        for p in g.polys() {
            let pd = p.degree().unwrap_or(0);
            if pd > d {
                continue;
            }
            for m in crate::poly::monomial_basis(self.arity, d - pd) {
                let prod = p.mul_monomial(&m, &crate::poly::q(1));
                rows.push(basis.iter().map(|b| prod.coefficient(b)).collect());
            }
        }
        Ok(crate::linalg::row_basis(rows))
    }
}

/// Krull dimension of `k[x]/(monomials)`: the largest set of variables free of generators.
pub fn monomial_dim(lts: &[Monomial], n: usize) -> usize {
    let supports: Vec<u64> = lts
        .iter()
        .map(|m| m.support().fold(0u64, |acc, v| acc | (1 << v)))
        .collect();
    if supports.contains(&0) {
        return 0;
    }
    let mut best = 0;
    // Search maximal independent sets by branching on variables.
    fn rec(v: usize, n: usize, chosen: u64, supports: &[u64], best: &mut usize) {
        let size = chosen.count_ones() as usize;
        if size + (n - v) <= *best {
            return;
        }
        if v == n {
            *best = size;
            return;
        }
        let with = chosen | (1 << v);
        if supports.iter().all(|&s| s & !with != 0) {
            rec(v + 1, n, with, supports, best);
        }
        rec(v + 1, n, chosen, supports, best);
    }
    rec(0, n, 0, &supports, &mut best);
    best
}
