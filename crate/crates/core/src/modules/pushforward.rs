use std::collections::BTreeSet;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::groebner::{Ideal, ModuleGb, ModuleTermOrder};
use crate::poly::{q, Monomial, MonomialOrder, Polynomial};

use super::Presentation;

/// Staircase cap; larger fibers are reported as not finite.
const MAX_STAIRCASE: usize = 4096;

/// `π_* O` for `Spec Q[y, x]/J -> Spec Q[x]`, with the fiber variables `y` first.
///
/// The result is an ungraded module over `Q[x]/(J ∩ Q[x])` generated by the staircase
/// monomials in `y`.
pub fn finite_pushforward(
    arity: usize,
    fiber: usize,
    eqs: &[Polynomial],
    budget: &Budget,
) -> Result<Presentation> {
    let nb = arity - fiber;
    let j = Ideal::new(arity, eqs.to_vec());
    let gb = j.gb(MonomialOrder::Elimination(fiber), budget)?;
    if gb.is_unit() {
        return Presentation::affine(nb, vec![Polynomial::one(nb)], 0, vec![], budget);
    }
    let lts = gb.leading_monomials();
    let pure: Vec<Monomial> = lts
        .iter()
        .filter(|m| m.partial_degree(fiber..arity) == 0)
        .cloned()
        .collect();
    for v in 0..fiber {
        if !pure.iter().any(|m| m.support().all(|k| k == v)) {
            return Err(Error::NotFinite(format!(
                "no monic relation in fiber variable {}",
                v + 1
            )));
        }
    }
    // Staircase in the fiber variables.
    let mut stair: BTreeSet<Monomial> = BTreeSet::new();
    let mut frontier = vec![Monomial::one(arity)];
    while let Some(m) = frontier.pop() {
        if pure.iter().any(|p| p.divides(&m)) || !stair.insert(m.clone()) {
            continue;
        }
        if stair.len() > MAX_STAIRCASE {
            return Err(Error::NotFinite("staircase too large".into()));
        }
        for v in 0..fiber {
            frontier.push(m.mul(&Monomial::var(arity, v)));
        }
    }
    let stair: Vec<Monomial> = {
        let mut s: Vec<Monomial> = stair.into_iter().collect();
        s.sort_by(|a, b| MonomialOrder::Grevlex.cmp(a, b));
        s
    };
    let n = stair.len();
    let index = |m: &Monomial| stair.iter().position(|s| s == m);
    // Coordinates of a polynomial whose fiber parts all lie in the staircase.
    let coords = |p: &Polynomial| -> Vec<Polynomial> {
        let mut parts: Vec<Vec<(Monomial, crate::poly::Rational)>> = vec![Vec::new(); n];
        for (m, c) in p.terms() {
            let mut ye = m.exps().to_vec();
            let mut xe = m.exps().to_vec();
            for k in 0..arity {
                if k < fiber {
                    xe[k] = 0;
                } else {
                    ye[k] = 0;
                }
            }
            let k = index(&Monomial::new(ye)).expect("normal form outside staircase");
            parts[k].push((Monomial::new(xe), c.clone()));
        }
        parts
            .into_iter()
            .map(|ts| Polynomial::from_terms(arity, ts))
            .collect()
    };
    let mut rels: Vec<Vec<Polynomial>> = Vec::new();
    for (i, s) in stair.iter().enumerate() {
        for v in 0..fiber {
            let prod = s.mul(&Monomial::var(arity, v));
            let mut vec = vec![Polynomial::zero(arity); n];
            vec[i] = Polynomial::var(arity, v);
            match index(&prod) {
                Some(k) => vec[k] = &vec[k] - &Polynomial::one(arity),
                None => {
                    let nf = gb.reduce(&Polynomial::monomial(prod, q(1)));
                    for (k, c) in coords(&nf).into_iter().enumerate() {
                        vec[k] = &vec[k] - &c;
                    }
                }
            }
            rels.push(vec);
        }
    }
    for g in gb.polys() {
        let lt = g.leading_term(MonomialOrder::Elimination(fiber)).unwrap().0;
        if lt.partial_degree(fiber..arity) == 0 {
            continue;
        }
        rels.push(coords(g));
    }
    let ord = ModuleTermOrder::top(MonomialOrder::Elimination(fiber), vec![]);
    let ugb = ModuleGb::compute(&rels, arity, n, &ord, budget)?;
    let keep: Vec<usize> = (fiber..arity).collect();
    let mut cols = Vec::new();
    for (v, (lt, _)) in ugb.elements().iter().zip(ugb.leading_terms()) {
        if lt.partial_degree(0..fiber) == 0 {
            cols.push(v.iter().map(|p| p.restrict(&keep)).collect::<Vec<_>>());
        }
    }
    let base: Vec<Polynomial> = gb
        .polys()
        .iter()
        .filter(|p| p.involves_only(fiber..arity))
        .map(|p| p.restrict(&keep))
        .collect();
    let matrix: Vec<Vec<Polynomial>> = (0..n)
        .map(|i| {
            cols.iter()
                .map(|c: &Vec<Polynomial>| c[i].clone())
                .collect()
        })
        .collect();
    Presentation::affine(nb, base, n, matrix, budget)
}
