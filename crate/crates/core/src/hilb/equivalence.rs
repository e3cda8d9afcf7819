use num_traits::Zero;

use crate::budget::Budget;
use crate::error::Result;
use crate::groebner::Ideal;
use crate::linalg::{det, QMatrix};
use std::collections::HashMap;

use crate::poly::{monomial_basis, q, Monomial, Polynomial, Rational};
use crate::scheme::ProjectiveScheme;

use super::gl::gl_symmetric_matrix;

/// Outcome of the projective-equivalence test.
#[derive(Clone, Debug)]
pub enum Equivalence {
    /// `g(X) = Y` for some `g ∈ GL_r(Q̄)`. The fiber ideal lives in `s_{i,j}` (index `i·r + j`)
    /// and a last variable inverting the determinant; `witness` is a verified rational `g`
    /// when one was found.
    Equivalent {
        fiber: Ideal,
        witness: Option<Vec<Vec<Rational>>>,
    },
    NotEquivalent {
        reason: String,
    },
}

impl Equivalence {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Equivalence::Equivalent { .. })
    }
}

const WITNESS_VALUES: [i64; 7] = [0, 1, -1, 2, -2, 3, -3];

/// Decides whether `g(X) = Y` for some invertible `g`, with `(g·x)_i = Σ_j g_{i,j} x_j`.
pub fn projective_equivalence(
    x: &ProjectiveScheme,
    y: &ProjectiveScheme,
    budget: &Budget,
) -> Result<Equivalence> {
    let r = x.ambient_vars();
    if y.ambient_vars() != r {
        return Ok(Equivalence::NotEquivalent {
            reason: "different ambient spaces".into(),
        });
    }
    let px = x.hilbert_polynomial(budget)?;
    let py = y.hilbert_polynomial(budget)?;
    if px != py {
        return Ok(Equivalence::NotEquivalent {
            reason: format!(
                "Hilbert polynomials differ: {} vs {}",
                px.fmt_var("t"),
                py.fmt_var("t")
            ),
        });
    }
    let ns = r * r;
    let identity: Vec<Vec<Rational>> = (0..r)
        .map(|i| (0..r).map(|j| q(i64::from(i == j))).collect())
        .collect();
    if px.is_zero() {
        let fiber = Ideal::new(ns + 1, vec![det_relation(r)]);
        return Ok(Equivalence::Equivalent {
            fiber,
            witness: Some(identity),
        });
    }
    let fiber = fiber_ideal(x, y, budget)?;
    for g in simple_candidates(r) {
        if verify_witness(x, y, &g, budget)? {
            return Ok(Equivalence::Equivalent {
                fiber,
                witness: Some(g),
            });
        }
    }
    if fiber.is_unit(budget)? {
        return Ok(Equivalence::NotEquivalent {
            reason: "fiber of the GL action is empty".into(),
        });
    }
    let witness = match find_witness(&fiber, r, budget)? {
        Some(g) if verify_witness(x, y, &g, budget)? => Some(g),
        _ => None,
    };
    Ok(Equivalence::Equivalent { fiber, witness })
}

/// `1 - z·det(s)` in `r² + 1` variables.
fn det_relation(r: usize) -> Polynomial {
    let ns = r * r;
    let mat: Vec<Vec<Polynomial>> = (0..r)
        .map(|i| (0..r).map(|j| Polynomial::var(ns + 1, i * r + j)).collect())
        .collect();
    let dp = crate::linalg::det_poly(&mat, ns + 1);
    &Polynomial::one(ns + 1) - &(&Polynomial::var(ns + 1, ns) * &dp)
}

/// Conditions on `s` for `f(s·x) ∈ I_X` for every generator `f` of the saturated `I_Y`,
/// plus `1 - z·det(s)`.
fn fiber_ideal(x: &ProjectiveScheme, y: &ProjectiveScheme, budget: &Budget) -> Result<Ideal> {
    let r = x.ambient_vars();
    let ns = r * r;
    let ix = x.saturated(budget)?;
    let gb = ix.grevlex(budget)?;
    let mut gens = vec![det_relation(r)];
    for f in y.saturated(budget)?.gens() {
        let d = f.degree().unwrap_or(0);
        let eta = gl_symmetric_matrix(r, d);
        let basis = monomial_basis(r, d);
        // f(s·x) = Σ_e c_e x^e (e over M_d) with c_e ∈ Q[s]; reduce each x^e modulo I_X.
        let mut coeffs: HashMap<Monomial, Polynomial> = HashMap::new();
        for (e, m) in basis.iter().enumerate() {
            let c = f.coefficient(m);
            if c.is_zero() {
                continue;
            }
            for (e2, m2) in basis.iter().enumerate() {
                if eta[e][e2].is_zero() {
                    continue;
                }
                let nf = gb.reduce(&Polynomial::monomial(m2.clone(), q(1)));
                for (mono, a) in nf.terms() {
                    let slot = coeffs
                        .entry(mono.clone())
                        .or_insert_with(|| Polynomial::zero(ns));
                    *slot = &*slot + &eta[e][e2].scale(&(&c * a));
                }
            }
        }
        gens.extend(
            coeffs
                .into_values()
                .filter(|p| !p.is_zero())
                .map(|p| p.embed(ns + 1, 0)),
        );
    }
    Ok(Ideal::new(ns + 1, gens))
}

/// The identity and the coordinate permutations.
fn simple_candidates(r: usize) -> Vec<Vec<Vec<Rational>>> {
    let mut perms: Vec<Vec<usize>> = vec![(0..r).collect()];
    if r <= 4 {
        perms = permutations(r);
    }
    perms
        .into_iter()
        .map(|p| {
            (0..r)
                .map(|i| (0..r).map(|j| q(i64::from(p[i] == j))).collect())
                .collect()
        })
        .collect()
}

fn permutations(r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(r - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, r - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Greedy rational specialization of the `s` variables keeping the fiber nonempty.
fn find_witness(fiber: &Ideal, r: usize, budget: &Budget) -> Result<Option<Vec<Vec<Rational>>>> {
    let ns = r * r;
    let n = ns + 1;
    let mut cur = fiber.clone();
    let mut values = vec![q(0); ns];
    for k in 0..ns {
        let mut found = false;
        for v in WITNESS_VALUES {
            let cand = cur.with([&Polynomial::var(n, k) - &Polynomial::from_int(n, v)]);
            if !cand.is_unit(budget)? {
                cur = cand;
                values[k] = q(v);
                found = true;
                break;
            }
        }
        if !found {
            return Ok(None);
        }
    }
    Ok(Some(
        (0..r)
            .map(|i| values[i * r..(i + 1) * r].to_vec())
            .collect(),
    ))
}

/// Checks `det g ≠ 0` and `f(g·x) ∈ I_X` for every generator `f` of `I_Y`.
pub fn verify_witness(
    x: &ProjectiveScheme,
    y: &ProjectiveScheme,
    g: &[Vec<Rational>],
    budget: &Budget,
) -> Result<bool> {
    let r = x.ambient_vars();
    let gm: QMatrix = g.to_vec();
    if g.len() != r || g.iter().any(|row| row.len() != r) || det(&gm).is_zero() {
        return Ok(false);
    }
    if x.hilbert_polynomial(budget)? != y.hilbert_polynomial(budget)? {
        return Ok(false);
    }
    let images: Vec<Polynomial> = (0..r)
        .map(|i| {
            (0..r).fold(Polynomial::zero(r), |acc, j| {
                &acc + &Polynomial::var(r, j).scale(&g[i][j])
            })
        })
        .collect();
    let ix = x.saturated(budget)?;
    for f in y.saturated(budget)?.gens() {
        if !ix.contains(&f.substitute(&images)?, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}
