use crate::error::{Error, Result};
use crate::linalg::det_poly;
use crate::poly::{monomial_basis, q, Monomial, Polynomial, RationalFunction};

use super::chart::Chart;

/// `η_{e,e'}`: coefficient of `x^{e'}` in the image of `x^e` under `x_i ↦ Σ_j s_{i,j} x_j`,
/// as polynomials in `r²` variables with `s_{i,j}` at index `i·r + j`.
pub fn gl_symmetric_matrix(r: usize, d: u32) -> Vec<Vec<Polynomial>> {
    let basis = monomial_basis(r, d);
    let ns = r * r;
    let total = ns + r;
    let index: std::collections::HashMap<Monomial, usize> = basis
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let images: Vec<Polynomial> = (0..r)
        .map(|i| {
            (0..r).fold(Polynomial::zero(total), |acc, j| {
                &acc + &(&Polynomial::var(total, i * r + j) * &Polynomial::var(total, ns + j))
            })
        })
        .collect();
    basis
        .iter()
        .map(|e| {
            let img = e
                .exps()
                .iter()
                .enumerate()
                .fold(Polynomial::one(total), |acc, (i, &k)| {
                    &acc * &images[i].pow(k)
                });
            let mut row = vec![Polynomial::zero(ns); basis.len()];
            let mut parts: Vec<Vec<(Monomial, crate::poly::Rational)>> =
                vec![Vec::new(); basis.len()];
            for (m, c) in img.terms() {
                let (s, x) = m.exps().split_at(ns);
                parts[index[&Monomial::new(x.to_vec())]]
                    .push((Monomial::new(s.to_vec()), c.clone()));
            }
            for (k, ts) in parts.into_iter().enumerate() {
                row[k] = Polynomial::from_terms(ns, ts);
            }
            row
        })
        .collect()
}

/// The rational map `GL_r × U_K ⇢ U_{K'}` in the variables `s` (first `r²`) and the chart
/// variables `u` of `K`.
#[derive(Clone, Debug)]
pub struct TransitionMap {
    pub k: Vec<usize>,
    pub k_prime: Vec<usize>,
    /// `θ_{i,j}` for `i ∈ K'` (in order) and `1 ≤ j ≤ p^∨`.
    pub theta: Vec<Vec<RationalFunction>>,
    /// Denominator to invert: `V_{K,K'}` is where it does not vanish.
    pub denominator: Polynomial,
}

/// Transition from the chart `K` of `chart` to the chart `K'` (indices into `M_d`).
pub fn transition(chart: &Chart, k_prime: &[usize]) -> Result<TransitionMap> {
    let r = chart.r;
    let ns = r * r;
    let nu = chart.nvars();
    let total = ns + nu;
    let mut kp = k_prime.to_vec();
    kp.sort_unstable();
    kp.dedup();
    if kp.len() != chart.p || kp.iter().any(|&i| i >= chart.basis.len()) {
        return Err(Error::Invalid(
            "K' must have P(d) monomials of degree d".into(),
        ));
    }
    let eta = gl_symmetric_matrix(r, chart.d);
    let a = chart.universal_matrix();
    let rd = chart.basis.len();
    let pd = chart.p_dual;
    // Column j of 𝓑 is the coefficient vector of the transformed h_j.
    let mut bm = vec![vec![Polynomial::zero(total); pd]; rd];
    for e in 0..rd {
        for j in 0..pd {
            if a[e][j].is_zero() {
                continue;
            }
            let ae = a[e][j].embed(total, ns);
            for (e2, row) in bm.iter_mut().enumerate() {
                if !eta[e][e2].is_zero() {
                    row[j] = &row[j] + &(&eta[e][e2].embed(total, 0) * &ae);
                }
            }
        }
    }
    let non_kp: Vec<usize> = (0..rd).filter(|i| !kp.contains(i)).collect();
    let s: Vec<Vec<Polynomial>> = non_kp.iter().map(|&i| bm[i].clone()).collect();
    let det = det_poly(&s, total);
    if det.is_zero() {
        return Err(Error::Invalid("transition domain is empty".into()));
    }
    // adj(S)[a][b] = (-1)^{a+b} det(S without row b and column a).
    let adj: Vec<Vec<Polynomial>> = (0..pd)
        .map(|ai| {
            (0..pd)
                .map(|bi| {
                    let minor: Vec<Vec<Polynomial>> = (0..pd)
                        .filter(|&row| row != bi)
                        .map(|row| {
                            (0..pd)
                                .filter(|&c| c != ai)
                                .map(|c| s[row][c].clone())
                                .collect()
                        })
                        .collect();
                    let m = det_poly(&minor, total);
                    if (ai + bi) % 2 == 0 {
                        m
                    } else {
                        m.scale(&q(-1))
                    }
                })
                .collect()
        })
        .collect();
    let theta = kp
        .iter()
        .map(|&i| {
            (0..pd)
                .map(|j| {
                    let num = (0..pd).fold(Polynomial::zero(total), |acc, b| {
                        &acc + &(&bm[i][b] * &adj[b][j])
                    });
                    RationalFunction::new(num, det.clone())
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TransitionMap {
        k: chart.k.clone(),
        k_prime: kp,
        theta,
        denominator: det,
    })
}
