use super::*;
use crate::budget::Budget;
use crate::poly::{parse_poly, x_names, MonomialOrder, Polynomial, UniPoly};

fn b() -> Budget {
    Budget::default()
}

fn ideal(n: usize, gens: &[&str]) -> Ideal {
    Ideal::parse(n, gens).unwrap()
}

fn p(n: usize, s: &str) -> Polynomial {
    parse_poly(s, &x_names(n)).unwrap()
}

#[test]
fn twisted_cubic_basis() {
    let i = ideal(4, &["x1*x3 - x2^2", "x2*x4 - x3^2", "x1*x4 - x2*x3"]);
    let g = i.grevlex(&b()).unwrap();
    assert_eq!(g.polys().len(), 3);
    assert_eq!(
        i.hilbert_polynomial(&b()).unwrap(),
        UniPoly::from_ints(&[1, 3])
    );
    assert!(i.contains(&p(4, "x1*x3^2 - x2^2*x3"), &b()).unwrap());
    assert!(!i.contains(&p(4, "x1"), &b()).unwrap());
}

#[test]
fn lex_basis_and_elimination() {
    // Parametrized twisted cubic: eliminate s, t.
    let i = ideal(
        6,
        &["x3 - x1^3", "x4 - x1^2*x2", "x5 - x1*x2^2", "x6 - x2^3"],
    );
    let e = i.eliminate(2, &b()).unwrap();
    assert_eq!(e.arity(), 4);
    let tc = ideal(4, &["x1*x3 - x2^2", "x2*x4 - x3^2", "x1*x4 - x2*x3"]);
    assert!(e.equals(&tc, &b()).unwrap());
    let lex = ideal(2, &["x1^2 + x2^2 - 1", "x1 - x2"]);
    let g = lex.gb(MonomialOrder::Lex, &b()).unwrap();
    assert_eq!(g.polys().len(), 2);
    assert!(g.polys().iter().any(|f| f.involves_only(1..2)));
}

#[test]
fn quotient_saturation_intersection() {
    let i = ideal(3, &["x1^2", "x1*x2"]);
    let q = i.quotient(&ideal(3, &["x1"]), &b()).unwrap();
    assert!(q.equals(&ideal(3, &["x1", "x2"]), &b()).unwrap());
    // The embedded point at (x1, x2) is not irrelevant in three variables.
    let s = i.saturate(&Ideal::maximal(3), &b()).unwrap();
    assert!(s.equals(&i, &b()).unwrap());
    let i2 = ideal(2, &["x1^2", "x1*x2"]);
    let s = i2.saturate(&Ideal::maximal(2), &b()).unwrap();
    assert!(s.equals(&ideal(2, &["x1"]), &b()).unwrap());
    let s2 = i.saturate_elem(&p(3, "x2"), &b()).unwrap();
    assert!(s2.equals(&ideal(3, &["x1"]), &b()).unwrap());
    let a = ideal(2, &["x1"]);
    let c = ideal(2, &["x2"]);
    assert!(a
        .intersect(&c, &b())
        .unwrap()
        .equals(&ideal(2, &["x1*x2"]), &b())
        .unwrap());
    let q2 = ideal(3, &["x1*x2", "x1*x3"])
        .quotient(&ideal(3, &["x2", "x3"]), &b())
        .unwrap();
    assert!(q2.equals(&ideal(3, &["x1"]), &b()).unwrap());
}

#[test]
fn radical_and_localization() {
    let i = ideal(2, &["x1^3", "x2^2"]);
    assert!(i.radical_contains(&p(2, "x1 + x2"), &b()).unwrap());
    assert!(!ideal(2, &["x1*x2"])
        .radical_contains(&p(2, "x1"), &b())
        .unwrap());
    let k = ideal(2, &["x1*x2"])
        .localization_kernel(&p(2, "x1"), &b())
        .unwrap();
    assert!(k.equals(&ideal(2, &["x2"]), &b()).unwrap());
}

#[test]
fn catalog_hilbert_polynomials() {
    let cases: &[(usize, &[&str], &[i64])] = &[
        (2, &[], &[1, 1]),
        (3, &["x1^2"], &[1, 2]),
        (3, &["x2^2*x3 - x1^3 - x1^2*x3"], &[0, 3]),
        (3, &["x1*x2"], &[1, 2]),
        (3, &["x1*x3 - x2^2"], &[1, 2]),
    ];
    for (n, gens, hp) in cases {
        let i = ideal(*n, gens);
        assert_eq!(
            i.hilbert_polynomial(&b()).unwrap(),
            UniPoly::from_ints(hp),
            "{gens:?}"
        );
    }
    assert!(ideal(3, &["x1", "x2^2", "x3^5"])
        .projective_empty(&b())
        .unwrap());
    assert!(!ideal(3, &["x1", "x2^2"]).projective_empty(&b()).unwrap());
    assert_eq!(
        ideal(3, &["x1*x2", "x1*x3"]).krull_dim(&b()).unwrap(),
        Some(2)
    );
}

#[test]
fn module_basis_reduces_members() {
    let n = 2;
    let gens = vec![vec![p(n, "x1"), p(n, "x2")], vec![p(n, "x2"), p(n, "x1")]];
    for ord in [
        ModuleTermOrder::pot(MonomialOrder::Grevlex),
        ModuleTermOrder::top(MonomialOrder::Grevlex, vec![0, 1]),
    ] {
        let gb = ModuleGb::compute(&gens, n, 2, &ord, &b()).unwrap();
        let combo = vec![
            &(&p(n, "x1^2") * &gens[0][0]) + &(&p(n, "x2 + 3") * &gens[1][0]),
            &(&p(n, "x1^2") * &gens[0][1]) + &(&p(n, "x2 + 3") * &gens[1][1]),
        ];
        assert!(gb.contains(&combo));
        assert!(!gb.contains(&[p(n, "1"), p(n, "0")]));
    }
}

#[test]
fn spair_budget_is_enforced() {
    let i = ideal(4, &["x1*x3 - x2^2", "x2*x4 - x3^2", "x1*x4 - x2*x3"]);
    let err = i.grevlex(&Budget::default().with_spair_cap(0)).unwrap_err();
    assert!(err.is_budget());
}

mod props {
    use super::*;
    use proptest::prelude::*;

    fn small_poly(n: usize) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((prop::collection::vec(0u32..3, n), -3i64..4), 1..4).prop_map(
            move |ts| {
                let terms = ts
                    .into_iter()
                    .map(|(e, c)| (crate::poly::Monomial::new(e), crate::poly::q(c)));
                Polynomial::from_terms(n, terms)
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn normal_form_is_idempotent_and_members_reduce(
            gens in prop::collection::vec(small_poly(3), 1..3),
            f in small_poly(3),
            c in small_poly(3),
        ) {
            let i = Ideal::new(3, gens.clone());
            let g = i.grevlex(&Budget::default()).unwrap();
            let r = g.reduce(&f);
            prop_assert_eq!(g.reduce(&r), r.clone());
            let member = &(&c * &gens[0]) + &f;
            prop_assert_eq!(g.reduce(&member), r);
        }

        #[test]
        fn reduced_basis_independent_of_generators(
            gens in prop::collection::vec(small_poly(3), 1..3),
            m in small_poly(3),
        ) {
            let i = Ideal::new(3, gens.clone());
            let mut alt = gens.clone();
            alt[0] = if gens.len() > 1 {
                &alt[0] + &(&m * &gens[gens.len() - 1])
            } else {
                alt[0].scale(&crate::poly::q(-3))
            };
            if alt[0].is_zero() {
                return Ok(());
            }
            alt.reverse();
            let j = Ideal::new(3, alt);
            let gi = i.grevlex(&Budget::default()).unwrap();
            let gj = j.grevlex(&Budget::default()).unwrap();
            prop_assert_eq!(gi.polys(), gj.polys());
        }
    }
}
