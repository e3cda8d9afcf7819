use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::poly::{factor_form, q, Polynomial, Rational};

use super::radical::gcd_all;
use super::{leading_degree, ProjectiveScheme};

/// A one-dimensional irreducible component `X_i` with its generic length.
#[derive(Clone, Debug)]
pub struct ComponentData {
    pub prime: Ideal,
    pub degree: u64,
    pub length: u64,
}

const PROJECTION_TRIES: usize = 8;
const POINT_SEARCH_HEIGHT: i64 = 6;

impl ProjectiveScheme {
    /// One-dimensional components with reduced structure and generic lengths.
    pub fn one_dim_components(&self, budget: &Budget) -> Result<Vec<ComponentData>> {
        let hp = self.hilbert_polynomial(budget)?;
        match hp.degree() {
            None | Some(0) => return Ok(vec![]),
            Some(1) => {}
            Some(d) => {
                return Err(Error::DecompositionUnavailable(format!(
                    "scheme has dimension {d}"
                )))
            }
        }
        let sat = self.saturated(budget)?;
        let primes = match self.component_hints() {
            Some(h) => verify_hints(&sat, h, budget)?,
            None => {
                let (one, _) = self.reduced_parts(budget)?;
                split_curve(&one, budget)?
            }
        };
        let total = leading_degree(&hp);
        let mut out = Vec::new();
        for (k, p) in primes.iter().enumerate() {
            let mut sep = Polynomial::one(sat.arity());
            for (j, pj) in primes.iter().enumerate() {
                if j != k {
                    sep = &sep * &separator(pj, p, budget)?;
                }
            }
            let qk = if sep.is_constant() {
                sat.clone()
            } else {
                sat.saturate_elem(&sep, budget)?
            };
            let qk = qk.saturate(&Ideal::maximal(sat.arity()), budget)?;
            let dq = leading_degree(&qk.hilbert_polynomial(budget)?);
            let dp = leading_degree(&p.hilbert_polynomial(budget)?);
            if dp.is_zero() || !(&dq % &dp).is_zero() {
                return Err(Error::DecompositionUnavailable(
                    "component degrees are inconsistent".into(),
                ));
            }
            out.push(ComponentData {
                prime: p.clone(),
                degree: dp.to_u64().unwrap_or(0),
                length: (dq / dp).to_u64().unwrap_or(0),
            });
        }
        let sum: u64 = out.iter().map(|c| c.degree * c.length).sum();
        if BigInt::from(sum) != total {
            return Err(Error::DecompositionUnavailable(format!(
                "leading-coefficient identity fails: {sum} != {total}"
            )));
        }
        Ok(out)
    }
}

/// `P_X(n) - P_X(0) = n · Σ ℓ_i deg X_i` for `L = O(n)`.
pub fn rr_check(x: &ProjectiveScheme, n: i64, budget: &Budget) -> Result<bool> {
    let comps = x.one_dim_components(budget)?;
    let p = x.hilbert_polynomial(budget)?;
    let lhs = p.eval_int(n) - p.eval_int(0);
    let s: u64 = comps.iter().map(|c| c.degree * c.length).sum();
    Ok(lhs == q(n) * Rational::from_integer(BigInt::from(s)))
}

fn verify_hints(sat: &Ideal, hints: &[Ideal], budget: &Budget) -> Result<Vec<Ideal>> {
    let mut out = Vec::new();
    for h in hints {
        if !h.is_homogeneous() {
            return Err(Error::Invalid("component hint is not homogeneous".into()));
        }
        if !h.contains_ideal(sat, budget)? {
            return Err(Error::Invalid(
                "component hint does not contain the scheme ideal".into(),
            ));
        }
        if h.hilbert_polynomial(budget)?.degree() != Some(1) {
            return Err(Error::Invalid("component hint is not a curve".into()));
        }
        out.push(h.normalized(budget)?);
    }
    let cover = out.iter().skip(1).fold(
        out.first()
            .cloned()
            .unwrap_or_else(|| Ideal::unit(sat.arity())),
        |acc, p| acc.product(p),
    );
    let rest = sat.saturate(&cover, budget)?;
    if rest.hilbert_polynomial(budget)?.degree().unwrap_or(0) >= 1 {
        return Err(Error::Invalid(
            "component hints miss a one-dimensional component".into(),
        ));
    }
    Ok(out)
}

/// A generator of `a` outside `b`.
fn separator(a: &Ideal, b: &Ideal, budget: &Budget) -> Result<Polynomial> {
    for g in a.gens() {
        if !b.contains(g, budget)? {
            return Ok(g.clone());
        }
    }
    Err(Error::Invalid("components are not distinct".into()))
}

fn projection_forms(m: usize, seed: usize) -> Vec<Polynomial> {
    (0..3)
        .map(|a| {
            let mut acc = Polynomial::zero(m);
            for i in 0..m {
                let c = if seed == 0 && m == 3 {
                    i64::from(i == a)
                } else {
                    ((a * 5 + i * 3 + seed * 7 + a * i * (seed + 2)) % 9) as i64 - 4
                };
                acc = &acc + &Polynomial::var(m, i).scale(&q(c));
            }
            acc
        })
        .collect()
}

/// Primes of a reduced, saturated, purely one-dimensional ideal.
fn split_curve(one: &Ideal, budget: &Budget) -> Result<Vec<Ideal>> {
    let m = one.arity();
    if one.is_zero() || one.is_unit(budget)? {
        return Ok(if one.is_zero() && m == 2 {
            vec![one.clone()]
        } else {
            vec![]
        });
    }
    let deg = leading_degree(&one.hilbert_polynomial(budget)?);
    for seed in 0..PROJECTION_TRIES {
        let forms = projection_forms(m, seed);
        let total = m + 3;
        let mut gens: Vec<Polynomial> = one.gens().iter().map(|g| g.embed(total, 0)).collect();
        for (a, f) in forms.iter().enumerate() {
            gens.push(&Polynomial::var(total, m + a) - &f.embed(total, 0));
        }
        let image = Ideal::new(total, gens).eliminate(m, budget)?;
        let f = gcd_all(image.gens(), 3, budget)?;
        if f.is_zero() || BigInt::from(f.degree().unwrap_or(0)) != deg {
            continue;
        }
        let factors = factor_form(&f)?;
        for fk in &factors {
            if !absolutely_irreducible(fk, budget)? {
                return Err(Error::DecompositionUnavailable(format!(
                    "cannot certify absolute irreducibility of {fk}"
                )));
            }
        }
        let pulled: Vec<Polynomial> = factors
            .iter()
            .map(|fk| fk.substitute(&forms))
            .collect::<Result<_>>()?;
        let mut primes = Vec::new();
        for k in 0..pulled.len() {
            let mut sep = Polynomial::one(m);
            for (j, g) in pulled.iter().enumerate() {
                if j != k {
                    sep = &sep * g;
                }
            }
            let p = if sep.is_constant() {
                one.clone()
            } else {
                one.saturate_elem(&sep, budget)?
            };
            primes.push(p.normalized(budget)?);
        }
        let mut sum = BigInt::zero();
        for p in &primes {
            sum += leading_degree(&p.hilbert_polynomial(budget)?);
        }
        if sum == deg {
            return Ok(primes);
        }
    }
    Err(Error::DecompositionUnavailable(
        "no birational plane projection found".into(),
    ))
}

/// Sufficient test for a Q-irreducible plane curve to stay irreducible over Q̄: it is
/// smooth, or it has a smooth rational point.
fn absolutely_irreducible(f: &Polynomial, budget: &Budget) -> Result<bool> {
    if f.degree().unwrap_or(0) <= 1 {
        return Ok(true);
    }
    let grad: Vec<Polynomial> = (0..3).map(|i| f.derivative(i)).collect();
    let sing = Ideal::new(
        3,
        std::iter::once(f.clone())
            .chain(grad.iter().cloned())
            .collect(),
    );
    if sing.projective_empty(budget)? {
        return Ok(true);
    }
    let h = POINT_SEARCH_HEIGHT;
    for a in -h..=h {
        for b in -h..=h {
            for c in 0..=h {
                if gcd3(a, b, c) != 1 {
                    continue;
                }
                let pt = [q(a), q(b), q(c)];
                if f.eval(&pt).is_zero() && grad.iter().any(|g| !g.eval(&pt).is_zero()) {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

fn gcd3(a: i64, b: i64, c: i64) -> i64 {
    use num_integer::Integer;
    a.gcd(&b).gcd(&c)
}
