use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::modules::{finite_pushforward, relative_cotangent, tor1, Presentation};
use num_traits::Zero;

use crate::poly::Polynomial;
use crate::scheme::radical::radical_dim_le1;

use super::GraphMorphism;

/// `V(ambient) ∖ ⋃ V(bad_s)` inside an affine space.
#[derive(Clone, Debug)]
pub struct OpenLocus {
    pub ambient: Ideal,
    pub bad: Vec<Ideal>,
}

impl OpenLocus {
    /// Product of the bad ideals.
    pub fn bad_ideal(&self) -> Ideal {
        let n = self.ambient.arity();
        self.bad
            .iter()
            .fold(Ideal::unit(n), |acc, c| acc.product(c))
    }

    /// Emptiness over Q̄: every generator of the combined bad ideal lies in the radical of
    /// the ambient ideal.
    pub fn is_empty(&self, budget: &Budget) -> Result<bool> {
        let mut live = Vec::new();
        for c in &self.bad {
            if self.ambient.sum(c).is_unit(budget)? {
                continue;
            }
            if all_in_radical(&self.ambient, c.gens(), budget)? {
                return Ok(true);
            }
            live.push(c.clone());
        }
        let combined = live
            .iter()
            .fold(Ideal::unit(self.ambient.arity()), |acc, c| acc.product(c));
        all_in_radical(&self.ambient, combined.gens(), budget)
    }

    /// Whether no point of `V(ambient)` is removed.
    pub fn is_everything(&self, budget: &Budget) -> Result<bool> {
        for c in &self.bad {
            if !self.ambient.sum(c).is_unit(budget)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn contains_point(&self, point: &[crate::poly::Rational]) -> bool {
        self.ambient.gens().iter().all(|g| g.eval(point).is_zero())
            && self
                .bad
                .iter()
                .all(|c| c.gens().iter().any(|g| !g.eval(point).is_zero()))
    }
}

fn all_in_radical(i: &Ideal, gens: &[Polynomial], budget: &Budget) -> Result<bool> {
    for g in gens {
        if !i.radical_contains(g, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Radical of an affine ideal that is zero or of Krull dimension at most one.
pub fn affine_radical(i: &Ideal, budget: &Budget) -> Result<Ideal> {
    if i.is_zero() {
        return Ok(i.clone());
    }
    let (one, rest) = radical_dim_le1(i, budget)?;
    one.intersect(&rest, budget)?.normalized(budget)
}

/// Locus of the affine base where `M` is invertible.
///
/// The bad ideals are the closure of the complement of the support, `Fitt_1(M)` and the
/// support of `Tor_1(O_red, M)`.
pub fn invertible_locus(m: &Presentation, budget: &Budget) -> Result<OpenLocus> {
    let n = m.arity;
    let base = m.base_ideal();
    let gb = base.grevlex(budget)?;
    let support = m.support_ideal(budget)?;
    let mut c1: Option<Ideal> = None;
    for s in support.gens() {
        if gb.reduce(s).is_zero() {
            continue;
        }
        let k = base.saturate_elem(s, budget)?;
        c1 = Some(match c1 {
            None => k,
            Some(acc) => acc.intersect(&k, budget)?,
        });
    }
    let c1 = c1.unwrap_or_else(|| Ideal::unit(n));
    let c2 = m.fitting_ideal(1, budget)?;
    let red = affine_radical(&base, budget)?;
    let mut cyc = Presentation::cyclic(n, base.gens().to_vec(), red.gens());
    cyc.graded = false;
    let t = tor1(&cyc, m, budget)?;
    let c3 = if t.rows() == 0 || t.is_zero(budget)? {
        Ideal::unit(n)
    } else {
        t.support_ideal(budget)?
    };
    Ok(OpenLocus {
        ambient: base,
        bad: vec![c1, c2, c3],
    })
}

/// Whether both projections of `Γ ⊂ X × Y` are isomorphisms.
pub fn check_graph_iso(g: &GraphMorphism, budget: &Budget) -> Result<bool> {
    if !g.is_subscheme(budget)? {
        return Err(Error::Invalid("graph is not a subscheme of X × Y".into()));
    }
    let j = g.bihomogeneous(budget)?;
    Ok(to_source(g, &j, budget)?
        && projection_is_iso(
            &j,
            g.source.ambient_vars(),
            g.target.ambient_vars(),
            &g.target.saturated(budget)?,
            budget,
        )?)
}

/// Whether `Γ -> X` is an isomorphism, so that `Γ` is the graph of a morphism.
pub fn source_projection_is_iso(g: &GraphMorphism, budget: &Budget) -> Result<bool> {
    if !g.is_subscheme(budget)? {
        return Err(Error::Invalid("graph is not a subscheme of X × Y".into()));
    }
    to_source(g, &g.bihomogeneous(budget)?, budget)
}

fn to_source(g: &GraphMorphism, j: &Ideal, budget: &Budget) -> Result<bool> {
    let (m, n) = (g.source.ambient_vars(), g.target.ambient_vars());
    // Fiber variables first: y then x.
    let swap: Vec<usize> = (0..m + n)
        .map(|v| if v < m { n + v } else { v - m })
        .collect();
    let j_yx = Ideal::new(
        m + n,
        j.gens().iter().map(|p| p.remap(m + n, &swap)).collect(),
    );
    projection_is_iso(&j_yx, n, m, &g.source.saturated(budget)?, budget)
}

/// `Γ -> B` for a bihomogeneous ideal with the `nf` fiber variables first and the `nb`
/// base variables after, `B = V(ib)`.
///
/// Over each `D(b_i h)` with `h` vanishing on the image of `Γ ∩ V(f_k)`, the graph lies in
/// `D(f_k)`; there the map must be unramified and finite with invertible pushforward.
fn projection_is_iso(j: &Ideal, nf: usize, nb: usize, ib: &Ideal, budget: &Budget) -> Result<bool> {
    let total = nf + nb;
    let fibers = Ideal::new(total, (0..nf).map(|k| Polynomial::var(total, k)).collect());
    let mut images = Vec::with_capacity(nf);
    for k in 0..nf {
        let e = j
            .with([Polynomial::var(total, k)])
            .saturate(&fibers, budget)?
            .eliminate(nf, budget)?;
        images.push(e.normalized(budget)?);
    }
    let cover = images.iter().fold(ib.clone(), |acc, e| acc.sum(e));
    if !cover.projective_empty(budget)? {
        return Ok(false);
    }
    let arity = total - 1;
    let fiber_vars: Vec<usize> = (0..nf - 1).collect();
    for i in 0..nb {
        let chart: Vec<Polynomial> = ib
            .gens()
            .iter()
            .map(|g| g.dehomogenize(i).embed(nb, 0))
            .collect();
        let jd: Vec<Polynomial> = j.gens().iter().map(|g| g.dehomogenize(nf + i)).collect();
        for (k, e) in images.iter().enumerate() {
            let jk: Vec<Polynomial> = jd
                .iter()
                .map(|g| g.dehomogenize(k).embed(arity, 0))
                .collect();
            for h in e.gens() {
                budget.check_time()?;
                let hz = &(&Polynomial::var(nb, nb - 1) * &h.dehomogenize(i).embed(nb, 0))
                    - &Polynomial::one(nb);
                let a = Ideal::new(nb, chart.iter().cloned().chain([hz]).collect());
                if a.is_unit(budget)? {
                    continue;
                }
                let mut eqs = jk.clone();
                eqs.extend(a.gens().iter().map(|g| g.embed(arity, nf - 1)));
                if !relative_cotangent(arity, &fiber_vars, &eqs, budget)?.is_zero(budget)? {
                    return Ok(false);
                }
                let pushed = match finite_pushforward(arity, nf - 1, &eqs, budget) {
                    Ok(p) => p,
                    Err(Error::NotFinite(_)) => return Ok(false),
                    Err(e) => return Err(e),
                };
                if !is_invertible(&over_base(&pushed, &a, budget)?, budget)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The pushforward as a module over `Q[b, z]/a` instead of its scheme-theoretic image.
fn over_base(m: &Presentation, a: &Ideal, budget: &Budget) -> Result<Presentation> {
    let rows = m.rows();
    let mut matrix = m.matrix.clone();
    for g in &m.base {
        for (i, row) in matrix.iter_mut().enumerate() {
            for k in 0..rows {
                row.push(if k == i {
                    g.clone()
                } else {
                    Polynomial::zero(m.arity)
                });
            }
        }
    }
    if rows == 0 {
        matrix.clear();
    }
    Presentation::affine(m.arity, a.gens().to_vec(), rows, matrix, budget)
}

/// Invertibility of a module with full support: `Fitt_1 = (1)` makes it locally cyclic,
/// after which it is invertible exactly when `Fitt_0` vanishes in the base ring.
fn is_invertible(m: &Presentation, budget: &Budget) -> Result<bool> {
    if m.rows() == 0 {
        return Ok(false);
    }
    let base = m.base_ideal();
    if !m.fitting_ideal(1, budget)?.is_unit(budget)? {
        return Ok(false);
    }
    let f0 = m.fitting_ideal(0, budget)?;
    base.contains_ideal(&f0, budget)
}
