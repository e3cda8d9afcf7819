use num_bigint::BigInt;

use super::*;
use crate::poly::{parse_poly, x_names};

fn b() -> Budget {
    Budget::default()
}

fn p(n: usize, s: &str) -> Polynomial {
    parse_poly(s, &x_names(n)).unwrap()
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn fitting_ideals_basic() {
    let free = Presentation::free(1, vec![], vec![0]);
    assert!(free.fitting_ideal(1, &b()).unwrap().is_unit(&b()).unwrap());
    let cyc = Presentation::cyclic(1, vec![], &[p(1, "x1^2")]);
    let f0 = cyc.fitting_ideal(0, &b()).unwrap();
    assert!(f0
        .equals(&Ideal::parse(1, &["x1^2"]).unwrap(), &b())
        .unwrap());
    let zero2 = Presentation::new(
        1,
        vec![],
        vec![0, 0],
        vec![0],
        vec![vec![p(1, "0")], vec![p(1, "0")]],
    )
    .unwrap();
    assert!(
        zero2.fitting_ideal(1, &b()).unwrap().is_zero()
            || zero2
                .fitting_ideal(1, &b())
                .unwrap()
                .equals(&Ideal::zero(1), &b())
                .unwrap()
    );
    let diag = Presentation::new(
        2,
        vec![],
        vec![0, 0],
        vec![-1, -1],
        vec![vec![p(2, "x1"), p(2, "0")], vec![p(2, "0"), p(2, "x2")]],
    )
    .unwrap();
    assert!(diag
        .support_ideal(&b())
        .unwrap()
        .equals(&Ideal::parse(2, &["x1*x2"]).unwrap(), &b())
        .unwrap());
    assert!(diag
        .annihilator(&b())
        .unwrap()
        .equals(&Ideal::parse(2, &["x1*x2"]).unwrap(), &b())
        .unwrap());
}

#[test]
fn tor_examples() {
    let r = Presentation::free(1, vec![], vec![0]);
    let m = Presentation::cyclic(1, vec![], &[p(1, "x1")]);
    assert!(tor1(&m, &r, &b()).unwrap().is_zero(&b()).unwrap());
    let t = tor1(&m, &m, &b()).unwrap();
    assert!(!t.is_zero(&b()).unwrap());
    assert_eq!(t.hilbert_function(0, 3, &b()).unwrap(), ints(&[0, 1, 0, 0]));
    let mx = Presentation::cyclic(2, vec![], &[p(2, "x1")]);
    let my = Presentation::cyclic(2, vec![], &[p(2, "x2")]);
    assert!(tor1(&mx, &my, &b()).unwrap().is_zero(&b()).unwrap());
}

#[test]
fn hom_examples() {
    let r = Presentation::free(2, vec![], vec![0]);
    let m = Presentation::cyclic(2, vec![], &[p(2, "x1^2"), p(2, "x1*x2")]);
    let h = hom_module(&r, &m, &b()).unwrap();
    assert_eq!(
        h.hilbert_function(0, 5, &b()).unwrap(),
        m.hilbert_function(0, 5, &b()).unwrap()
    );
    let rm1 = Presentation::free(2, vec![], vec![-1]);
    let h = hom_module(&rm1, &r, &b()).unwrap();
    let r1 = Presentation::free(2, vec![], vec![1]);
    assert_eq!(
        h.hilbert_function(-2, 4, &b()).unwrap(),
        r1.hilbert_function(-2, 4, &b()).unwrap()
    );
    let tors = Presentation::cyclic(1, vec![], &[p(1, "x1")]);
    let r = Presentation::free(1, vec![], vec![0]);
    assert!(hom_module(&tors, &r, &b()).unwrap().is_zero(&b()).unwrap());
}

#[test]
fn global_sections_on_line_and_double_line() {
    let r = Presentation::free(2, vec![], vec![0]);
    let l = global_sections_module(&r, 1, &b()).unwrap();
    assert_eq!(l.hilbert_function(0, 2, &b()).unwrap(), ints(&[1, 2, 3]));
    let rm1 = Presentation::free(2, vec![], vec![-1]);
    let l = global_sections_module(&rm1, 1, &b()).unwrap();
    assert_eq!(l.hilbert_function(0, 0, &b()).unwrap(), ints(&[0]));
    let dl = Presentation::free(3, vec![p(3, "x1^2")], vec![0]);
    let l = global_sections_module(&dl, 2, &b()).unwrap();
    assert_eq!(l.hilbert_function(1, 4, &b()).unwrap(), ints(&[3, 5, 7, 9]));
}

#[test]
fn minimal_presentations() {
    let unit = Presentation::new(1, vec![], vec![0], vec![0], vec![vec![p(1, "1")]]).unwrap();
    let m = unit.minimal_presentation(&b()).unwrap();
    assert_eq!(m.rows(), 0);
    // R^2 presented as coker of a unit relation on R^3.
    let art = Presentation::new(
        2,
        vec![],
        vec![0, 0, 0],
        vec![0],
        vec![vec![p(2, "1")], vec![p(2, "2")], vec![p(2, "0")]],
    )
    .unwrap();
    let m = art.minimal_presentation(&b()).unwrap();
    assert_eq!((m.rows(), m.cols()), (2, 0));
    let r1 = Presentation::free(2, vec![], vec![1]);
    let l = global_sections_module(&r1, 1, &b())
        .unwrap()
        .minimal_presentation(&b())
        .unwrap();
    let deg0 = l.target.iter().filter(|&&a| a == 0).count();
    assert_eq!(deg0, 2);
    assert!(l.source.iter().all(|&s| s < 0));
    assert_eq!(
        l.hilbert_function(0, 4, &b()).unwrap(),
        ints(&[2, 3, 4, 5, 6])
    );
}

#[test]
fn cotangent_examples() {
    let om = cotangent_module(2, &[], &b()).unwrap();
    assert_eq!(
        om.hilbert_function(2, 5, &b()).unwrap(),
        ints(&[1, 2, 3, 4])
    );
    let rel = relative_cotangent(1, &[0], &[], &b()).unwrap();
    assert_eq!(rel.rows(), 1);
    assert!(!rel.is_zero(&b()).unwrap());
    // Graph of the identity of A^1: y - x over base x is unramified.
    let g = relative_cotangent(2, &[0], &[p(2, "x1 - x2")], &b()).unwrap();
    assert!(g.is_zero(&b()).unwrap());
}

#[test]
fn pushforward_examples() {
    // Fiber variable x1 (y), base x2 (x).
    let id = finite_pushforward(2, 1, &[p(2, "x1 - x2")], &b()).unwrap();
    assert_eq!(id.rows(), 1);
    assert!(
        id.fitting_ideal(0, &b()).unwrap().is_zero()
            || id
                .fitting_ideal(0, &b())
                .unwrap()
                .equals(&Ideal::zero(1), &b())
                .unwrap()
    );
    let dbl = finite_pushforward(2, 1, &[p(2, "x1^2 - x2")], &b()).unwrap();
    assert_eq!(dbl.rows(), 2);
    assert_eq!(dbl.cols(), 0);
    let two = finite_pushforward(2, 1, &[p(2, "x1*(x1 - 1)")], &b()).unwrap();
    assert_eq!(two.rows(), 2);
    assert!(!two.fitting_ideal(1, &b()).unwrap().is_unit(&b()).unwrap());
    let hyper = finite_pushforward(2, 1, &[p(2, "x1*x2 - 1")], &b());
    assert!(matches!(hyper, Err(Error::NotFinite(_))));
}

#[test]
fn module_json_round_trip() {
    let m = Presentation::new(
        2,
        vec![p(2, "x1^2")],
        vec![0, 1],
        vec![-1],
        vec![vec![p(2, "x2")], vec![p(2, "x1^2")]],
    )
    .unwrap();
    let f = m.to_file();
    let s = serde_json::to_string(&f).unwrap();
    let back = Presentation::from_file(&serde_json::from_str(&s).unwrap()).unwrap();
    assert_eq!(back.matrix, m.matrix);
    assert_eq!(back.target, m.target);
}

mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn fitting_ideals_invariant_under_constant_operations(
            entries in prop::collection::vec(0usize..5, 4),
            r1 in -3i64..4,
            c1 in -3i64..4,
        ) {
            let pool = ["x1", "x2", "x1 + x2", "0", "2*x1 - x2"];
            let a: Vec<Vec<Polynomial>> = vec![
                vec![p(2, pool[entries[0]]), p(2, pool[entries[1]])],
                vec![p(2, pool[entries[2]]), p(2, pool[entries[3]])],
            ];
            let m = Presentation::new(2, vec![], vec![0, 0], vec![-1, -1], a.clone()).unwrap();
            // row_1 += r1 * row_0, then col_0 += c1 * col_1
            let mut bm = a.clone();
            for j in 0..2 {
                bm[1][j] = &bm[1][j] + &bm[0][j].scale(&crate::poly::q(r1));
            }
            for row in bm.iter_mut() {
                row[0] = &row[0] + &row[1].scale(&crate::poly::q(c1));
            }
            let m2 = Presentation::new(2, vec![], vec![0, 0], vec![-1, -1], bm).unwrap();
            for i in 0..3 {
                let f1 = m.fitting_ideal(i, &Budget::default()).unwrap();
                let f2 = m2.fitting_ideal(i, &Budget::default()).unwrap();
                prop_assert!(f1.equals(&f2, &Budget::default()).unwrap());
            }
        }
    }
}
