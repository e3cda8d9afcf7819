use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{q, Rational, UniPoly};

/// Gotzmann decomposition `C(r+t-1, r-1) - P(t) = Σ_i C(t - a_i + r-1-i, r-1-i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GotzmannData {
    pub a: Vec<i64>,
    pub phi: i64,
}

/// `C(t - a + n, n)`.
fn term(a: i64, n: u32) -> UniPoly {
    UniPoly::binomial(n as i64 - a, n)
}

fn factorial(n: u32) -> Rational {
    (1..=n).fold(Rational::one(), |acc, k| acc * q(k as i64))
}

fn not_hilbert(p: &UniPoly, r: usize) -> Error {
    Error::NotHilbertPolynomial {
        poly: p.fmt_var("t"),
        ambient: r.saturating_sub(1),
    }
}

/// The sequence `a_0 ≤ … ≤ a_k` and `φ(P) = a_k` for a polynomial `P` in `P^{r-1}`.
///
/// The whole space has the empty sequence; its Gotzmann number is reported as 1.
pub fn gotzmann_number(p: &UniPoly, r: usize) -> Result<GotzmannData> {
    if r == 0 {
        return Err(Error::Invalid("ambient needs at least one variable".into()));
    }
    let whole = term(0, (r - 1) as u32);
    let mut rest = whole.sub(p);
    let mut a: Vec<i64> = Vec::new();
    let mut i = 0usize;
    while !rest.is_zero() {
        if i + 2 > r {
            return Err(not_hilbert(p, r));
        }
        let n = (r - 1 - i) as u32;
        if rest.degree() != Some(n as usize) || rest.leading() != factorial(n).recip() {
            return Err(not_hilbert(p, r));
        }
        let c = rest.coeff(n as usize - 1);
        // a from the t^{n-1} coefficient, with or without a following term of degree n-1.
        let base = Rational::new((n as i64 + 1).into(), 2.into()) - factorial(n - 1) * c;
        let stop = base.clone();
        let cont = base + Rational::one();
        let pick = |v: &Rational| -> Option<i64> {
            if !v.is_integer() {
                return None;
            }
            let v: i64 = v.to_integer().try_into().ok()?;
            (v >= 1 && a.last().is_none_or(|&l| v >= l)).then_some(v)
        };
        let chosen = match pick(&stop) {
            Some(v) if rest.sub(&term(v, n)).is_zero() => v,
            _ => pick(&cont).ok_or_else(|| not_hilbert(p, r))?,
        };
        rest = rest.sub(&term(chosen, n));
        a.push(chosen);
        i += 1;
    }
    let phi = a.last().copied().unwrap_or(1);
    Ok(GotzmannData { a, phi })
}

/// `Σ_i C(t - a_i + r-1-i, r-1-i)`.
pub fn reconstruct(a: &[i64], r: usize) -> UniPoly {
    a.iter().enumerate().fold(UniPoly::zero(), |acc, (i, &ai)| {
        acc.add(&term(ai, (r - 1 - i) as u32))
    })
}

/// Whether the decomposition reproduces `C(r+t-1, r-1) - P`.
pub fn reconstruction_holds(p: &UniPoly, r: usize, g: &GotzmannData) -> bool {
    term(0, (r - 1) as u32)
        .sub(p)
        .sub(&reconstruct(&g.a, r))
        .is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(s: &str) -> UniPoly {
        UniPoly::parse(s).unwrap()
    }

    #[test]
    fn known_numbers() {
        let cases = [
            ("2", 2, vec![2]),
            ("2*t + 1", 3, vec![2]),
            ("t + 2", 3, vec![2, 2]),
            ("2*t + 1", 4, vec![1, 2]),
            ("1", 2, vec![1]),
            ("t + 1", 3, vec![1]),
            ("3*t", 3, vec![3]),
            ("3*t + 1", 4, vec![1, 4, 4]),
        ];
        for (p, r, a) in cases {
            let g = gotzmann_number(&up(p), r).unwrap();
            assert_eq!(g.a, a, "{p} r={r}");
            assert!(reconstruction_holds(&up(p), r, &g));
        }
        assert_eq!(gotzmann_number(&up("t + 1"), 2).unwrap().phi, 1);
        assert!(gotzmann_number(&up("t/2"), 3).is_err());
        assert!(gotzmann_number(&up("t^2"), 3).is_err());
        assert!(gotzmann_number(&up("-1"), 3).is_err());
    }
}
