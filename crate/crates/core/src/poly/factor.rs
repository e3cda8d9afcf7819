//! Factorization over Q: univariate (Zassenhaus) and ternary forms (Hensel lifting in one variable).

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{q, Monomial, Polynomial, Rational, UniPoly};
use crate::error::{Error, Result};

type Fp = Vec<u64>;

fn trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn fp_from(a: &[BigInt], p: u64) -> Fp {
    let pb = BigInt::from(p);
    trim(
        a.iter()
            .map(|c| c.mod_floor(&pb).to_u64().unwrap())
            .collect(),
    )
}

fn fp_add(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0)) % p)
            .collect(),
    )
}

fn fp_sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| (a.get(i).unwrap_or(&0) + p - b.get(i).unwrap_or(&0)) % p)
            .collect(),
    )
}

fn fp_mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut c = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] = (c[i + j] + x * y) % p;
        }
    }
    trim(c)
}

fn fp_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn fp_inv(a: u64, p: u64) -> u64 {
    fp_pow(a, p - 2, p)
}

fn fp_divrem(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    let db = b.len() - 1;
    let inv = fp_inv(*b.last().unwrap(), p);
    let mut r = a.clone();
    if r.len() <= db {
        return (vec![], trim(r));
    }
    let mut qv = vec![0u64; r.len() - db];
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = r.last().unwrap() * inv % p;
        if c != 0 {
            for (i, y) in b.iter().enumerate() {
                r[k + i] = (r[k + i] + p - c * y % p) % p;
            }
        }
        qv[k] = c;
        r.pop();
    }
    (trim(qv), trim(r))
}

fn fp_monic(a: &Fp, p: u64) -> Fp {
    match a.last() {
        None => vec![],
        Some(&l) => {
            let inv = fp_inv(l, p);
            a.iter().map(|c| c * inv % p).collect()
        }
    }
}

fn fp_gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = fp_divrem(&a, &b, p).1;
        a = b;
        b = r;
    }
    fp_monic(&a, p)
}

/// Returns `(s, t)` with `s a + t b = 1`, assuming coprime inputs.
fn fp_bezout(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], vec![]);
    let (mut t0, mut t1) = (vec![], vec![1u64]);
    while !r1.is_empty() {
        let (qt, r) = fp_divrem(&r0, &r1, p);
        let s = fp_sub(&s0, &fp_mul(&qt, &s1, p), p);
        let t = fp_sub(&t0, &fp_mul(&qt, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    let inv = fp_inv(r0[0], p);
    let sc = |v: &Fp| trim(v.iter().map(|c| c * inv % p).collect());
    (sc(&s0), sc(&t0))
}

fn fp_powmod(base: &Fp, e: &BigUint, m: &Fp, p: u64) -> Fp {
    let mut r = vec![1u64];
    let b = fp_divrem(base, m, p).1;
    for i in (0..e.bits()).rev() {
        r = fp_divrem(&fp_mul(&r, &r, p), m, p).1;
        if e.bit(i) {
            r = fp_divrem(&fp_mul(&r, &b, p), m, p).1;
        }
    }
    r
}

fn fp_derivative(a: &Fp, p: u64) -> Fp {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| (i as u64 % p) * c % p)
            .collect(),
    )
}

struct XorShift(u64);

impl XorShift {
    fn next(&mut self) -> u64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        self.0
    }
}

/// Distinct-degree then equal-degree factorization of a monic square-free polynomial mod an odd prime.
fn fp_factor(f: &Fp, p: u64) -> Vec<Fp> {
    let x: Fp = vec![0, 1];
    let mut f = f.clone();
    let mut h = x.clone();
    let mut blocks = Vec::new();
    let mut i = 1usize;
    while f.len() > 2 * i {
        h = fp_powmod(&h, &BigUint::from(p), &f, p);
        let g = fp_gcd(&f, &fp_sub(&h, &x, p), p);
        if g.len() > 1 {
            f = fp_divrem(&f, &g, p).0;
            h = fp_divrem(&h, &f, p).1;
            blocks.push((g, i));
        }
        i += 1;
    }
    if f.len() > 1 {
        let d = f.len() - 1;
        blocks.push((f, d));
    }
    let mut rng = XorShift(0x9e37_79b9_7f4a_7c15);
    let mut out = Vec::new();
    for (g, d) in blocks {
        let mut stack = vec![g];
        let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
        while let Some(g) = stack.pop() {
            if g.len() - 1 == d {
                out.push(g);
                continue;
            }
            loop {
                let a: Fp = trim((0..g.len() - 1).map(|_| rng.next() % p).collect());
                if a.len() < 2 {
                    continue;
                }
                let b = fp_sub(&fp_powmod(&a, &e, &g, p), &vec![1], p);
                let c = fp_gcd(&g, &b, p);
                if c.len() > 1 && c.len() < g.len() {
                    stack.push(fp_divrem(&g, &c, p).0);
                    stack.push(c);
                    break;
                }
            }
        }
    }
    out
}

type Zp = Vec<BigInt>;

fn z_trim(mut a: Zp) -> Zp {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn z_mul(a: &Zp, b: &Zp) -> Zp {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut c = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    z_trim(c)
}

fn z_symmetric(a: &Zp, m: &BigInt) -> Zp {
    let half = m / 2;
    z_trim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn z_to_uni(a: &Zp) -> UniPoly {
    UniPoly::new(
        a.iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect(),
    )
}

/// Primitive integer coefficients of a nonzero rational polynomial.
fn uni_to_z(f: &UniPoly) -> Zp {
    let mut den = BigInt::one();
    for c in f.coeffs() {
        den = den.lcm(c.denom());
    }
    let ints: Zp = f
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&den / c.denom()))
        .collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    let sign = if ints.last().unwrap().is_negative() {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    ints.iter().map(|c| c / &g * &sign).collect()
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).filter(|n| (2..).take_while(|d| d * d <= *n).all(|d| n % d != 0))
}

/// Hensel lifts `f = g h mod p` with `g` monic to modulus `p^k`, returning the lifted `g`.
fn hensel_lift(f: &Zp, g: &Fp, h: &Fp, p: u64, k: u32) -> Zp {
    let (s, t) = fp_bezout(g, h, p);
    let mut gz: Zp = g.iter().map(|&c| BigInt::from(c)).collect();
    let mut hz: Zp = h.iter().map(|&c| BigInt::from(c)).collect();
    let pb = BigInt::from(p);
    let mut m = pb.clone();
    for _ in 1..k {
        let prod = z_mul(&gz, &hz);
        let n = f.len().max(prod.len());
        let diff: Zp = (0..n)
            .map(|i| {
                f.get(i).cloned().unwrap_or_default() - prod.get(i).cloned().unwrap_or_default()
            })
            .collect();
        let e: Zp = diff.iter().map(|c| c / &m).collect();
        let e = fp_from(&e, p);
        let te = fp_mul(&t, &e, p);
        let (quo, a) = fp_divrem(&te, g, p);
        let b = fp_add(&fp_mul(&s, &e, p), &fp_mul(&quo, h, p), p);
        for (i, c) in a.iter().enumerate() {
            gz[i] += &m * BigInt::from(*c);
        }
        if hz.len() < b.len() {
            hz.resize(b.len(), BigInt::zero());
        }
        for (i, c) in b.iter().enumerate() {
            hz[i] += &m * BigInt::from(*c);
        }
        m *= &pb;
    }
    gz
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Irreducible factors of a primitive square-free integer polynomial.
fn zassenhaus(f: &Zp) -> Vec<Zp> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.clone()];
    }
    let lc = f.last().unwrap().clone();
    let p = small_primes()
        .find(|&p| {
            let fp = fp_from(f, p);
            fp.len() == f.len() && fp_gcd(&fp, &fp_derivative(&fp, p), p).len() == 1
        })
        .unwrap();
    let fbar = fp_monic(&fp_from(f, p), p);
    let mods = fp_factor(&fbar, p);
    if mods.len() == 1 {
        return vec![f.clone()];
    }
    let maxc = f.iter().map(|c| c.abs()).max().unwrap();
    let bound = BigInt::from(2u32).pow(n as u32) * BigInt::from(n + 1) * maxc * lc.abs() * 2;
    let mut k = 1u32;
    let mut pk = BigInt::from(p);
    while pk <= bound {
        pk *= p;
        k += 1;
    }
    let fp_full = fp_from(f, p);
    let mut lifted: Vec<Zp> = mods
        .iter()
        .map(|g| {
            let h = fp_divrem(&fp_full, g, p).0;
            hensel_lift(f, g, &h, p, k)
        })
        .collect();
    let mut rest = f.clone();
    let mut out = Vec::new();
    let mut s = 1;
    while 2 * s <= lifted.len() {
        let mut found = false;
        for comb in combinations(lifted.len(), s) {
            let c = rest.last().unwrap().clone();
            let mut g: Zp = vec![c];
            for &i in &comb {
                g = z_symmetric(&z_mul(&g, &lifted[i]), &pk);
            }
            let gu = z_to_uni(&g);
            let (quo, rem) = z_to_uni(&rest).div_rem(&gu);
            if rem.is_zero() {
                out.push(uni_to_z(&gu));
                rest = uni_to_z(&quo);
                lifted = lifted
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !comb.contains(i))
                    .map(|(_, v)| v)
                    .collect();
                found = true;
                break;
            }
        }
        if !found {
            s += 1;
        }
    }
    out.push(rest);
    out
}

/// Monic irreducible factors over Q with multiplicities.
pub fn factor_univariate(f: &UniPoly) -> Vec<(UniPoly, u32)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    // Yun's square-free decomposition.
    let fm = f.monic();
    let d = fm.derivative();
    let a0 = fm.gcd(&d);
    let mut b = fm.div_rem(&a0).0;
    let mut c = d.div_rem(&a0).0;
    let mut dd = c.sub(&b.derivative());
    let mut i = 1u32;
    while b.degree().unwrap_or(0) > 0 {
        let a = b.gcd(&dd);
        b = b.div_rem(&a).0;
        c = dd.div_rem(&a).0;
        dd = c.sub(&b.derivative());
        if a.degree().unwrap_or(0) > 0 {
            for g in zassenhaus(&uni_to_z(&a)) {
                out.push((z_to_uni(&g).monic(), i));
            }
        }
        i += 1;
    }
    out.sort_by(|x, y| {
        x.0.degree()
            .cmp(&y.0.degree())
            .then_with(|| x.0.coeffs().cmp(y.0.coeffs()))
    });
    out
}

/// Coefficients of a bivariate polynomial in `y` (variable 1) as polynomials in `x` (variable 0).
fn y_slices(f: &Polynomial) -> Vec<UniPoly> {
    let mut out: Vec<Vec<Rational>> = Vec::new();
    for (m, c) in f.terms() {
        let (ex, ey) = (m.exps()[0] as usize, m.exps()[1] as usize);
        if out.len() <= ey {
            out.resize(ey + 1, Vec::new());
        }
        if out[ey].len() <= ex {
            out[ey].resize(ex + 1, Rational::zero());
        }
        out[ey][ex] = c.clone();
    }
    out.into_iter().map(UniPoly::new).collect()
}

fn from_slices(s: &[UniPoly]) -> Polynomial {
    let mut terms = Vec::new();
    for (j, u) in s.iter().enumerate() {
        for (i, c) in u.coeffs().iter().enumerate() {
            if !c.is_zero() {
                terms.push((Monomial::new(vec![i as u32, j as u32]), c.clone()));
            }
        }
    }
    Polynomial::from_terms(2, terms)
}

fn uni_bezout(a: &UniPoly, b: &UniPoly) -> (UniPoly, UniPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (UniPoly::constant(q(1)), UniPoly::zero());
    let (mut t0, mut t1) = (UniPoly::zero(), UniPoly::constant(q(1)));
    while !r1.is_zero() {
        let (qt, r) = r0.div_rem(&r1);
        let s = s0.sub(&qt.mul(&s1));
        let t = t0.sub(&qt.mul(&t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    let inv = r0.leading().recip();
    (s0.scale(&inv), t0.scale(&inv))
}

/// Factors `g` monic in `x` and square-free at `y = 0` by lifting the factors of `g(x, 0)`.
fn factor_monic_bivariate(g: &Polynomial, prec: usize) -> Vec<Polynomial> {
    let slices = y_slices(g);
    let g0 = slices[0].clone();
    let facs: Vec<UniPoly> = factor_univariate(&g0).into_iter().map(|(f, _)| f).collect();
    if facs.len() <= 1 {
        return vec![g.clone()];
    }
    let coeff = |s: &[UniPoly], j: usize| s.get(j).cloned().unwrap_or_else(UniPoly::zero);
    let lifted: Vec<Vec<UniPoly>> = facs
        .iter()
        .map(|f0| {
            let h0 = g0.div_rem(f0).0;
            let (s, t) = uni_bezout(f0, &h0);
            let mut gs = vec![f0.clone()];
            let mut hs = vec![h0.clone()];
            for j in 1..prec {
                let mut e = coeff(&slices, j);
                for a in 0..=j {
                    if a < gs.len() && j - a < hs.len() {
                        e = e.sub(&gs[a].mul(&hs[j - a]));
                    }
                }
                let te = t.mul(&e);
                let (quo, a) = te.div_rem(f0);
                let b = s.mul(&e).add(&quo.mul(&h0));
                gs.push(a);
                hs.push(b);
            }
            gs
        })
        .collect();
    let truncate = |p: Polynomial| {
        let terms: Vec<_> = p
            .terms()
            .iter()
            .filter(|(m, _)| (m.exps()[1] as usize) < prec)
            .cloned()
            .collect();
        Polynomial::from_terms(2, terms)
    };
    let mut remaining: Vec<Polynomial> = lifted.iter().map(|s| from_slices(s)).collect();
    let mut rest = g.clone();
    let mut out = Vec::new();
    let mut s = 1;
    while 2 * s <= remaining.len() {
        let mut found = false;
        for comb in combinations(remaining.len(), s) {
            let mut cand = Polynomial::one(2);
            for &i in &comb {
                cand = truncate(&cand * &remaining[i]);
            }
            if let Some(quo) = rest.div_exact(&cand) {
                out.push(cand);
                rest = quo;
                remaining = remaining
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !comb.contains(i))
                    .map(|(_, v)| v)
                    .collect();
                found = true;
                break;
            }
        }
        if !found {
            s += 1;
        }
    }
    out.push(rest);
    out
}

fn small_ints() -> impl Iterator<Item = i64> {
    (0i64..).flat_map(|n| if n == 0 { vec![0] } else { vec![n, -n] })
}

/// Distinct irreducible factors over Q of a square-free form in two or three variables,
/// each primitive with positive leading coefficient.
pub fn factor_form(f: &Polynomial) -> Result<Vec<Polynomial>> {
    if !f.is_homogeneous() || f.is_zero() {
        return Err(Error::NotHomogeneous(f.to_string()));
    }
    let n = f.degree().unwrap();
    if n == 0 {
        return Ok(vec![]);
    }
    match f.arity() {
        2 => {
            let mut out = Vec::new();
            let u = UniPoly::from_poly(&f.dehomogenize(1), 0).unwrap();
            let du = u.degree().unwrap_or(0) as u32;
            for (g, _) in factor_univariate(&u) {
                out.push(g.to_poly(1, 0).homogenize(1).primitive());
            }
            if du < n {
                out.push(Polynomial::var(2, 1));
            }
            out.sort();
            Ok(out)
        }
        3 => factor_ternary(f, n),
        a => Err(Error::Invalid(format!(
            "cannot factor forms in {a} variables"
        ))),
    }
}

fn factor_ternary(f: &Polynomial, n: u32) -> Result<Vec<Polynomial>> {
    let x = |i| Polynomial::var(3, i);
    let pairs = small_ints()
        .take(9)
        .flat_map(|a| small_ints().take(9).map(move |b| (a, b)));
    let mut shift = None;
    for (a, b) in pairs {
        if !f.eval(&[q(1), q(a), q(b)]).is_zero() {
            shift = Some((a, b));
            break;
        }
    }
    let (a, b) = shift.ok_or_else(|| Error::Invalid("no coordinate change found".into()))?;
    let fwd = [x(0), &x(1) + &x(0).scale(&q(a)), &x(2) + &x(0).scale(&q(b))];
    let back = [x(0), &x(1) - &x(0).scale(&q(a)), &x(2) - &x(0).scale(&q(b))];
    let g = f.substitute(&fwd)?;
    let g = g.scale(&g.coefficient(&Monomial::new(vec![n, 0, 0])).recip());
    let affine = g.dehomogenize(2);
    for c in small_ints().take(41) {
        let shifted = affine.substitute(&[
            Polynomial::var(2, 0),
            &Polynomial::var(2, 1) + &Polynomial::from_int(2, c),
        ])?;
        let g0 = UniPoly::from_poly(&shifted.specialize(&[None, Some(q(0))]), 0).unwrap();
        if g0.gcd(&g0.derivative()).degree() != Some(0) {
            continue;
        }
        let parts = factor_monic_bivariate(&shifted, n as usize + 1);
        let mut out = Vec::new();
        for h in parts {
            let h = h.substitute(&[
                Polynomial::var(2, 0),
                &Polynomial::var(2, 1) - &Polynomial::from_int(2, c),
            ])?;
            let hh = h.homogenize(2).substitute(&back)?;
            out.push(hh.primitive());
        }
        out.sort();
        return Ok(out);
    }
    Err(Error::Invalid("form is not square-free".into()))
}
