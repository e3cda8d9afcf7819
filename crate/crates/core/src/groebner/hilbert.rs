//! Hilbert series of monomial ideals and the resulting Hilbert polynomials.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::poly::{Monomial, Rational, UniPoly};

fn minimize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    c
}

fn poly_add_shifted(a: &mut Vec<BigInt>, b: &[BigInt], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, BigInt::zero());
    }
    for (i, y) in b.iter().enumerate() {
        a[i + shift] += y;
    }
}

/// Numerator `N(t)` with `HS(k[x]/I) = N(t) / (1 - t)^n` for a monomial ideal.
pub fn hilbert_numerator(gens: &[Monomial], n: usize) -> Vec<BigInt> {
    numerator_rec(minimize(gens.to_vec()), n)
}

fn numerator_rec(gens: Vec<Monomial>, n: usize) -> Vec<BigInt> {
    if gens.is_empty() {
        return vec![BigInt::from(1)];
    }
    if gens.iter().any(|g| g.is_one()) {
        return vec![BigInt::zero()];
    }
    let mut counts = vec![0usize; n];
    let mut mixed = false;
    for g in &gens {
        let s: Vec<usize> = g.support().collect();
        if s.len() > 1 {
            mixed = true;
            for v in s {
                counts[v] += 1;
            }
        }
    }
    if !mixed {
        let mut acc = vec![BigInt::from(1)];
        for g in &gens {
            let mut f = vec![BigInt::zero(); g.degree() as usize + 1];
            f[0] = BigInt::from(1);
            f[g.degree() as usize] = BigInt::from(-1);
            acc = poly_mul(&acc, &f);
        }
        return acc;
    }
    let v = (0..n)
        .max_by_key(|&i| (counts[i], std::cmp::Reverse(i)))
        .unwrap();
    // Pivot on a power of the chosen variable: the median exponent among mixed generators.
    let mut exps: Vec<u32> = gens
        .iter()
        .filter(|g| g.exps()[v] > 0 && g.support().count() > 1)
        .map(|g| g.exps()[v])
        .collect();
    exps.sort_unstable();
    let e = exps[exps.len() / 2].max(1);
    let pivot = Monomial::var(n, v).pow(e);
    let mut plus = gens.clone();
    plus.push(pivot.clone());
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| {
            let mut ex = g.exps().to_vec();
            ex[v] = ex[v].saturating_sub(e);
            Monomial::new(ex)
        })
        .collect();
    let mut a = numerator_rec(minimize(plus), n);
    let b = numerator_rec(minimize(colon), n);
    poly_add_shifted(&mut a, &b, e as usize);
    a
}

/// Reduced form `Q(t) / (1 - t)^D` of `N(t) / (1 - t)^n`.
pub fn reduce_series(num: &[BigInt], n: usize) -> (Vec<BigInt>, usize) {
    let mut q: Vec<BigInt> = num.to_vec();
    while q.last().is_some_and(|c| c.is_zero()) {
        q.pop();
    }
    let mut d = n;
    if q.is_empty() {
        return (q, 0);
    }
    while d > 0 {
        let s: BigInt = q.iter().sum();
        if !s.is_zero() {
            break;
        }
        // Divide by (1 - t) via prefix sums.
        let mut out = Vec::with_capacity(q.len() - 1);
        let mut acc = BigInt::zero();
        for c in &q[..q.len() - 1] {
            acc += c;
            out.push(acc.clone());
        }
        q = out;
        d -= 1;
    }
    (q, d)
}

/// Hilbert polynomial of a series `Q(t) / (1 - t)^D`.
pub fn series_to_polynomial(q: &[BigInt], d: usize) -> UniPoly {
    if d == 0 {
        return UniPoly::zero();
    }
    let mut acc = UniPoly::zero();
    for (i, c) in q.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let b = UniPoly::binomial(d as i64 - 1 - i as i64, d as u32 - 1);
        acc = acc.add(&b.scale(&Rational::from_integer(c.clone())));
    }
    acc
}

/// Hilbert function values `0..=upto` from a series numerator.
pub fn series_values(num: &[BigInt], n: usize, upto: usize) -> Vec<BigInt> {
    // Coefficients of 1/(1-t)^n are C(k + n - 1, n - 1).
    let mut coeffs = vec![BigInt::zero(); upto + 1];
    for (k, c) in coeffs.iter_mut().enumerate() {
        *c = if n == 0 {
            if k == 0 {
                BigInt::from(1)
            } else {
                BigInt::zero()
            }
        } else {
            binom_big(k + n - 1, n - 1)
        };
    }
    let mut out = vec![BigInt::zero(); upto + 1];
    for (i, a) in num.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for k in i..=upto {
            out[k] += a * &coeffs[k - i];
        }
    }
    out
}

pub fn binom_big(n: usize, k: usize) -> BigInt {
    let mut r = BigInt::from(1);
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::q;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn numerator_of_twisted_cubic_initial_ideal() {
        // Initial ideal of the twisted cubic in grevlex: (x1^2, x1x2, x2^2) in 4 variables.
        let gens = vec![m(&[2, 0, 0, 0]), m(&[1, 1, 0, 0]), m(&[0, 2, 0, 0])];
        let n = hilbert_numerator(&gens, 4);
        let (qv, d) = reduce_series(&n, 4);
        assert_eq!(d, 2);
        let hp = series_to_polynomial(&qv, d);
        assert_eq!(hp, UniPoly::from_ints(&[1, 3]));
    }

    #[test]
    fn values_match_polynomial() {
        let gens = vec![m(&[0, 0, 3])];
        let n = hilbert_numerator(&gens, 3);
        let vals = series_values(&n, 3, 6);
        let (qv, d) = reduce_series(&n, 3);
        let hp = series_to_polynomial(&qv, d);
        for (k, v) in vals.iter().enumerate().skip(2) {
            assert_eq!(hp.eval_int(k as i64), Rational::from_integer(v.clone()));
        }
        assert_eq!(hp, UniPoly::from_ints(&[0, 3]));
        assert_eq!(hp.eval_int(1), q(3));
    }
}
