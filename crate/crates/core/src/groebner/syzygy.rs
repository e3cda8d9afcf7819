use crate::budget::Budget;
use crate::error::Result;
use crate::poly::{MonomialOrder, Polynomial};

use super::engine::{ModuleGb, ModuleTermOrder};

/// Generators of the kernel of `R^n -> R^rank`, `e_j -> cols[j]`.
pub fn syzygies(
    cols: &[Vec<Polynomial>],
    arity: usize,
    rank: usize,
    budget: &Budget,
) -> Result<Vec<Vec<Polynomial>>> {
    let n = cols.len();
    let gens: Vec<Vec<Polynomial>> = cols
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let mut v = c.clone();
            v.extend((0..n).map(|k| {
                if k == j {
                    Polynomial::one(arity)
                } else {
                    Polynomial::zero(arity)
                }
            }));
            v
        })
        .collect();
    let gb = ModuleGb::compute(
        &gens,
        arity,
        rank + n,
        &ModuleTermOrder::pot(MonomialOrder::Grevlex),
        budget,
    )?;
    Ok(gb
        .elements()
        .iter()
        .zip(gb.leading_terms())
        .filter(|(_, (_, c))| *c >= rank)
        .map(|(v, _)| v[rank..].to_vec())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, x_names};

    #[test]
    fn koszul_syzygy() {
        let names = x_names(2);
        let p = |s: &str| parse_poly(s, &names).unwrap();
        let cols = vec![vec![p("x1")], vec![p("x2")]];
        let syz = syzygies(&cols, 2, 1, &Budget::default()).unwrap();
        assert_eq!(syz.len(), 1);
        let v = &syz[0];
        assert!((&(&v[0] * &p("x1")) + &(&v[1] * &p("x2"))).is_zero());
    }
}
