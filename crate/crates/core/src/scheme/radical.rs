//! Radicals of ideals of dimension at most one, and polynomial gcds.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::poly::{q, MonomialOrder, Polynomial};

/// Greatest common divisor, primitive with positive leading coefficient.
pub fn poly_gcd(a: &Polynomial, b: &Polynomial, budget: &Budget) -> Result<Polynomial> {
    if a.is_zero() {
        return Ok(b.primitive());
    }
    if b.is_zero() {
        return Ok(a.primitive());
    }
    if a.is_constant() || b.is_constant() {
        return Ok(Polynomial::one(a.arity()));
    }
    let n = a.arity();
    let l = Ideal::new(n, vec![a.clone()]).intersect(&Ideal::new(n, vec![b.clone()]), budget)?;
    let g = l.grevlex(budget)?;
    let lcm = g
        .polys()
        .first()
        .cloned()
        .ok_or_else(|| Error::Invalid("empty lcm".into()))?;
    let prod = a * b;
    let gcd = prod
        .div_exact(&lcm)
        .ok_or_else(|| Error::Invalid("lcm does not divide product".into()))?;
    Ok(gcd.primitive())
}

pub fn gcd_all(ps: &[Polynomial], arity: usize, budget: &Budget) -> Result<Polynomial> {
    let mut acc = Polynomial::zero(arity);
    for p in ps {
        acc = poly_gcd(&acc, p, budget)?;
        if acc.is_constant() && !acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

/// Product of the distinct irreducible factors.
pub fn squarefree_part(f: &Polynomial, budget: &Budget) -> Result<Polynomial> {
    if f.is_constant() {
        return Ok(f.clone());
    }
    let n = f.arity();
    let mut g = f.clone();
    for i in 0..n {
        let d = f.derivative(i);
        if !d.is_zero() {
            g = poly_gcd(&g, &d, budget)?;
        }
    }
    Ok(f.div_exact(&g).expect("gcd divides").primitive())
}

/// Radical of a zero-dimensional affine ideal (Seidenberg).
pub fn radical_zero_dim(j: &Ideal, budget: &Budget) -> Result<Ideal> {
    if j.is_unit(budget)? {
        return Ok(Ideal::unit(j.arity()));
    }
    let n = j.arity();
    let mut extra = Vec::new();
    for i in 0..n {
        // Move x_i last and eliminate the others.
        let mut perm: Vec<usize> = (0..n).filter(|&k| k != i).collect();
        perm.push(i);
        let images: Vec<Polynomial> = (0..n)
            .map(|k| Polynomial::var(n, perm.iter().position(|&p| p == k).unwrap()))
            .collect();
        let moved = j.map(&images)?;
        let e = moved.eliminate(n - 1, budget)?;
        let g = gcd_all(e.gens(), 1, budget)?;
        if g.is_zero() {
            return Err(Error::Invalid("ideal is not zero-dimensional".into()));
        }
        let s = squarefree_part(&g, budget)?;
        let back: Vec<Polynomial> = vec![Polynomial::var(n, i)];
        extra.push(s.substitute(&back)?);
    }
    j.with(extra).normalized(budget)
}

fn generic_form(n: usize, seed: usize) -> Polynomial {
    let mut acc = Polynomial::zero(n);
    for i in 0..n {
        let c = ((i * 7 + seed * 13 + 3) % 11) as i64 - 5;
        let c = if c == 0 { 1 } else { c };
        acc = &acc + &Polynomial::var(n, i).scale(&q(c));
    }
    acc
}

/// Radical of an affine ideal of Krull dimension at most one, split into the
/// intersection of its one-dimensional primes and the radical of the rest.
pub fn radical_dim_le1(j: &Ideal, budget: &Budget) -> Result<(Ideal, Ideal)> {
    let n = j.arity();
    match j.krull_dim(budget)? {
        None => return Ok((Ideal::unit(n), Ideal::unit(n))),
        Some(0) => return Ok((Ideal::unit(n), radical_zero_dim(j, budget)?)),
        Some(1) => {}
        Some(d) => {
            return Err(Error::DecompositionUnavailable(format!(
                "dimension {d} exceeds one"
            )))
        }
    }
    for seed in 0..6 {
        if let Some(r) = radical_dim1_with(j, &generic_form(n, seed), budget)? {
            return Ok(r);
        }
    }
    Err(Error::DecompositionUnavailable(
        "no suitable Noether parameter found".into(),
    ))
}

fn radical_dim1_with(
    j: &Ideal,
    form: &Polynomial,
    budget: &Budget,
) -> Result<Option<(Ideal, Ideal)>> {
    let n = j.arity();
    // Ring Q[x_1..x_n, T] with T = form.
    let t = Polynomial::var(n + 1, n);
    let jt = j.embed(n + 1, 0).with([&t - &form.embed(n + 1, 0)]);
    let mut extra = Vec::new();
    for i in 0..n {
        // Keep x_i and T: move them last.
        let mut order: Vec<usize> = (0..n).filter(|&k| k != i).collect();
        order.push(i);
        order.push(n);
        let images: Vec<Polynomial> = (0..=n)
            .map(|k| Polynomial::var(n + 1, order.iter().position(|&p| p == k).unwrap()))
            .collect();
        let e = jt.map(&images)?.eliminate(n - 1, budget)?;
        let g = gcd_all(e.gens(), 2, budget)?;
        if g.is_zero() {
            return Ok(None);
        }
        let s = squarefree_part(&g, budget)?;
        extra.push(s.substitute(&[Polynomial::var(n + 1, i), t.clone()])?);
    }
    let jp = jt.with(extra);
    let gb = jp.gb(MonomialOrder::Elimination(n), budget)?;
    let mut f = Polynomial::one(n + 1);
    for g in gb.polys() {
        let (lm, _) = g.leading_term(MonomialOrder::Elimination(n)).unwrap();
        if lm.partial_degree(0..n) == 0 {
            continue;
        }
        let mut x_part = lm.exps().to_vec();
        x_part[n] = 0;
        let lc: Vec<_> = g
            .terms()
            .iter()
            .filter(|(m, _)| m.exps()[..n] == x_part[..n])
            .cloned()
            .collect();
        let lc = Polynomial::from_terms(
            n + 1,
            lc.into_iter().map(|(m, c)| {
                let mut e = vec![0; n + 1];
                e[n] = m.exps()[n];
                (crate::poly::Monomial::new(e), c)
            }),
        );
        if !lc.is_constant() {
            f = &f * &lc;
        }
    }
    let back: Vec<Polynomial> = (0..n)
        .map(|k| Polynomial::var(n, k))
        .chain([form.clone()])
        .collect();
    let rad1 = if f.is_constant() {
        jp.normalized(budget)?
    } else {
        jp.saturate_elem(&f, budget)?
    };
    let rest = jt.with([f.clone()]);
    let rest_n = rest.map(&back)?;
    let rest_rad = match rest_n.krull_dim(budget)? {
        None => Ideal::unit(n),
        Some(0) => radical_zero_dim(&rest_n, budget)?,
        Some(_) => return Ok(None),
    };
    let rad1_n = rad1.map(&back)?.normalized(budget)?;
    Ok(Some((rad1_n, rest_rad)))
}

/// Homogenization with respect to variable `c` of an affine ideal in the other variables.
pub fn homogenize_ideal(j: &Ideal, c: usize, budget: &Budget) -> Result<Ideal> {
    let g = j.grevlex(budget)?;
    let n = j.arity() + 1;
    let gens: Vec<Polynomial> = g.polys().iter().map(|p| p.homogenize(c)).collect();
    Ideal::new(n, gens).saturate_elem(&Polynomial::var(n, c), budget)
}

/// One-dimensional part and zero-dimensional part of the radical of a homogeneous ideal
/// whose projective scheme has dimension at most one, both saturated.
pub fn projective_radical(i: &Ideal, budget: &Budget) -> Result<(Ideal, Ideal)> {
    let n = i.arity();
    let mut one = Ideal::unit(n);
    let mut zero = Ideal::unit(n);
    for c in 0..n {
        let chart = Ideal::new(n - 1, i.gens().iter().map(|g| g.dehomogenize(c)).collect());
        if chart.is_unit(budget)? {
            continue;
        }
        let (r1, r0) = radical_dim_le1(&chart, budget)?;
        if !r1.is_unit(budget)? {
            one = one.intersect(&homogenize_ideal(&r1, c, budget)?, budget)?;
        }
        if !r0.is_unit(budget)? {
            zero = zero.intersect(&homogenize_ideal(&r0, c, budget)?, budget)?;
        }
    }
    // A point seen in one chart may lie on a curve seen in another.
    let zero = if one.is_unit(budget)? {
        zero
    } else {
        zero.saturate(&one, budget)?
    };
    Ok((one.normalized(budget)?, zero.normalized(budget)?))
}
