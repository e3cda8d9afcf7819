use std::fmt;

use num_traits::Zero;

use super::{Polynomial, Rational};
use crate::error::{Error, Result};

/// A fraction of polynomials, kept in a cheap normal form: the denominator
/// has leading coefficient 1 and the pair is scaled so that constant
/// denominators are folded away. No gcd cancellation is attempted; equality
/// is decided by cross-multiplication.
#[derive(Clone)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.arity() != den.arity() {
            return Err(Error::ArityMismatch {
                expected: num.arity(),
                found: den.arity(),
            });
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return RationalFunction {
                den: Polynomial::one(num.arity()),
                num,
            };
        }
        if den.is_constant() {
            let c = den.constant_term().recip();
            return RationalFunction {
                num: num.scale(&c),
                den: Polynomial::one(num.arity()),
            };
        }
        if let Some(q) = num.div_exact(&den) {
            return RationalFunction {
                den: Polynomial::one(q.arity()),
                num: q,
            };
        }
        let lc = den.terms()[0].1.recip();
        RationalFunction {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    pub fn from_poly(p: Polynomial) -> Self {
        let a = p.arity();
        RationalFunction {
            num: p,
            den: Polynomial::one(a),
        }
    }

    pub fn zero(arity: usize) -> Self {
        Self::from_poly(Polynomial::zero(arity))
    }

    pub fn one(arity: usize) -> Self {
        Self::from_poly(Polynomial::one(arity))
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn arity(&self) -> usize {
        self.num.arity()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::normalized(&self.num + &o.num, self.den.clone());
        }
        Self::normalized(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::normalized(&self.num * &o.num, &self.den * &o.den)
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(&self.num * &o.den, &self.den * &o.num))
    }

    /// Evaluates at a point; `None` when the denominator vanishes there.
    pub fn eval(&self, point: &[Rational]) -> Option<Rational> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(point) / d)
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den || (self.den.is_one() && self.num.is_one())
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.num.is_constant() && self.den.is_constant() {
            let n = if self.num.is_zero() {
                Rational::zero()
            } else {
                self.num.constant_term()
            };
            Some(n / self.den.constant_term())
        } else {
            None
        }
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, o: &Self) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn rf(n: &str, d: &str) -> RationalFunction {
        let names = ["s", "u"];
        RationalFunction::new(
            parse_poly(n, &names).unwrap(),
            parse_poly(d, &names).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn examples() {
        assert!(rf("1", "s").mul(&rf("s", "1")).is_one());
        assert_eq!(rf("u", "s").add(&rf("u", "s")), rf("2u", "s"));
        assert_eq!(rf("s", "s-1").sub(&rf("1", "s-1")), rf("1", "1"));
        assert!(rf("s", "s-1").sub(&rf("1", "s-1")).is_one());
    }

    #[test]
    fn division_by_zero() {
        assert!(matches!(
            RationalFunction::new(Polynomial::one(2), Polynomial::zero(2)),
            Err(Error::DivisionByZero)
        ));
        assert!(rf("s", "1").div(&rf("0", "1")).is_err());
    }

    #[test]
    fn cross_multiplication_equality() {
        assert_eq!(rf("s^2-1", "s-1"), rf("s+1", "1"));
        assert_eq!(rf("2s", "4u"), rf("s", "2u"));
    }
}
