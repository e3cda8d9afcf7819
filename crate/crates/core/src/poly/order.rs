use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::Monomial;

/// Monomial orders used by the Gröbner engine. Variable 0 is the largest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
#[derive(Default)]
pub enum MonomialOrder {
    Lex,
    #[default]
    Grevlex,
    /// Block order: grevlex on the leading `k` variables, ties broken by
    /// grevlex on the rest. Eliminates the leading block.
    Elimination(usize),
}


pub(crate) fn grevlex(a: &[u32], b: &[u32], da: u32, db: u32) -> Ordering {
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.iter().zip(b).rev() {
        match x.cmp(y) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Lex => a.exps().cmp(b.exps()),
            MonomialOrder::Grevlex => grevlex(a.exps(), b.exps(), a.degree(), b.degree()),
            MonomialOrder::Elimination(k) => {
                let k = k.min(a.arity());
                let (a1, a2) = a.exps().split_at(k);
                let (b1, b2) = b.exps().split_at(k);
                let da1: u32 = a1.iter().sum();
                let db1: u32 = b1.iter().sum();
                grevlex(a1, b1, da1, db1)
                    .then_with(|| grevlex(a2, b2, a.degree() - da1, b.degree() - db1))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn lex_and_grevlex() {
        assert_eq!(
            MonomialOrder::Lex.cmp(&m(&[1, 0]), &m(&[0, 5])),
            Ordering::Greater
        );
        assert_eq!(
            MonomialOrder::Grevlex.cmp(&m(&[1, 0]), &m(&[0, 5])),
            Ordering::Less
        );
        // x*z < y^2 in grevlex with x>y>z
        assert_eq!(
            MonomialOrder::Grevlex.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])),
            Ordering::Less
        );
        assert_eq!(
            MonomialOrder::Lex.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])),
            Ordering::Greater
        );
    }

    #[test]
    fn elimination_dominates_block() {
        let o = MonomialOrder::Elimination(1);
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 7, 3])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 2, 0]), &m(&[0, 1, 1])), Ordering::Greater);
    }
}
