use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Polynomial, Rational};
use crate::error::Result;

/// Dense univariate polynomial over Q, coefficients in ascending degree.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| q(v)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn eval_int(&self, t: i64) -> Rational {
        self.eval(&q(t))
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::new(c)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `p(t + shift)`.
    pub fn shift(&self, shift: i64) -> Self {
        let lin = Self::from_ints(&[shift, 1]);
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&Self::constant(c.clone()));
        }
        acc
    }

    /// `p(k t)`.
    pub fn stretch(&self, k: i64) -> Self {
        let kq = q(k);
        let mut f = Rational::one();
        let mut c = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            c.push(a * &f);
            f *= &kq;
        }
        Self::new(c)
    }

    /// `C(t + a, n)` as a polynomial in `t`.
    pub fn binomial(a: i64, n: u32) -> Self {
        let mut acc = Self::constant(Rational::one());
        for i in 0..n as i64 {
            acc = acc.mul(&Self::from_ints(&[a - i, 1]));
        }
        let mut fact = BigInt::one();
        for i in 1..=n {
            fact *= i;
        }
        acc.scale(&Rational::new(BigInt::one(), fact))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * q(i as i64))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.degree().unwrap();
        let lc = d.leading();
        let mut r = self.coeffs.clone();
        let mut qv = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = r.last().unwrap() / &lc;
            for (i, b) in d.coeffs.iter().enumerate() {
                r[k + i] -= &c * b;
            }
            qv[k] = c;
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        (Self::new(qv), Self::new(r))
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Square-free part (product of distinct irreducible factors), monic.
    pub fn squarefree(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return Self::constant(Rational::one());
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Integer-valued at `t0..t0+count`.
    pub fn integer_valued_at(&self, t0: i64, count: i64) -> bool {
        (t0..t0 + count).all(|t| self.eval_int(t).is_integer())
    }

    /// Converts to a multivariate polynomial in variable `var` of a ring of `arity` variables.
    pub fn to_poly(&self, arity: usize, var: usize) -> Polynomial {
        let x = Polynomial::var(arity, var);
        let mut acc = Polynomial::zero(arity);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &x) + &Polynomial::constant(arity, c.clone());
        }
        acc
    }

    /// Reads a polynomial involving only variable `var`.
    pub fn from_poly(p: &Polynomial, var: usize) -> Option<Self> {
        let mut c = Vec::new();
        for (m, a) in p.terms() {
            if m.degree() != m.exps()[var] {
                return None;
            }
            let e = m.exps()[var] as usize;
            if c.len() <= e {
                c.resize(e + 1, Rational::zero());
            }
            c[e] = a.clone();
        }
        Some(Self::new(c))
    }

    pub fn parse(s: &str) -> Result<Self> {
        let p = super::parse_poly(s, &["t"])?;
        Ok(Self::from_poly(&p, 0).expect("single variable"))
    }

    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, i) in (0..self.coeffs.len()).rev().enumerate() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let _ = k;
            let a = c.abs();
            let cs = super::polynomial::fmt_rational(&a);
            match i {
                0 => s.push_str(&cs),
                _ => {
                    if !a.is_one() {
                        s.push_str(&cs);
                        s.push('*');
                    }
                    s.push_str(var);
                    if i > 1 {
                        s.push_str(&format!("^{i}"));
                    }
                }
            }
        }
        s
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("t"))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        // C(t+1, 1) = t + 1, C(t, 2) = (t^2 - t)/2
        assert_eq!(UniPoly::binomial(1, 1), UniPoly::from_ints(&[1, 1]));
        let c = UniPoly::binomial(0, 2);
        assert_eq!(c.eval_int(5), q(10));
        assert_eq!(c.eval_int(1), q(0));
    }

    #[test]
    fn parse_and_print() {
        let p = UniPoly::parse("2t+1").unwrap();
        assert_eq!(p, UniPoly::from_ints(&[1, 2]));
        assert_eq!(p.to_string(), "2*t + 1");
        assert_eq!(UniPoly::parse("3t").unwrap().to_string(), "3*t");
    }

    #[test]
    fn gcd_and_squarefree() {
        let a = UniPoly::from_ints(&[-1, 0, 1]); // t^2 - 1
        let b = UniPoly::from_ints(&[1, 2, 1]); // (t+1)^2
        assert_eq!(a.gcd(&b), UniPoly::from_ints(&[1, 1]));
        assert_eq!(b.squarefree(), UniPoly::from_ints(&[1, 1]));
        assert_eq!(
            UniPoly::from_ints(&[0, 1]).stretch(3),
            UniPoly::from_ints(&[0, 3])
        );
    }
}
