use super::*;
use crate::budget::Budget;
use crate::groebner::Ideal;
use crate::poly::{monomial_basis, q, Monomial, Polynomial, Rational, UniPoly};
use crate::scheme::{catalog, ProjectiveScheme};

fn b() -> Budget {
    Budget::default()
}

fn up(s: &str) -> UniPoly {
    UniPoly::parse(s).unwrap()
}

fn mono(e: &[u32]) -> Monomial {
    Monomial::new(e.to_vec())
}

#[test]
fn small_charts_have_no_equations() {
    let c = hilb_chart(&up("1"), 2, &[mono(&[1, 0])], None, &b()).unwrap();
    assert_eq!((c.nvars(), c.equations.len(), c.d), (1, 0, 1));
    let k = Chart::default_k(&up("2"), 2, 2).unwrap();
    let c = hilb_chart(&up("2"), 2, &k, None, &b()).unwrap();
    assert_eq!((c.nvars(), c.equations.len()), (2, 0));
    for k in [[0usize, 1], [0, 2], [1, 2]] {
        let basis = monomial_basis(3, 1);
        let ks: Vec<Monomial> = k.iter().map(|&i| basis[i].clone()).collect();
        let c = hilb_chart(&up("t + 1"), 3, &ks, None, &b()).unwrap();
        assert_eq!((c.nvars(), c.equations.len()), (2, 0));
    }
}

#[test]
fn line_plus_point_chart() {
    let z = ProjectiveScheme::parse(3, &["x1*x3", "x2*x3"]).unwrap();
    assert_eq!(z.hilbert_polynomial(&b()).unwrap(), up("t + 2"));
    let rows = degree_part_rows(&z, 2, &b()).unwrap();
    let basis = monomial_basis(3, 2);
    let (k, point) = echelon_point(&basis, &rows);
    let ks: Vec<Monomial> = k.iter().map(|&i| basis[i].clone()).collect();
    let c = hilb_chart(&up("t + 2"), 3, &ks, None, &b()).unwrap();
    assert_eq!(c.nvars(), 8);
    assert_eq!(c.minors_examined, 210);
    assert!(c.contains_point(&point));
    assert!(c.equations_vanish_at(&point));
    let mut moved = point.clone();
    moved[0] += q(1);
    moved[3] += q(2);
    assert!(!c.contains_point(&moved));
    assert!(!c.equations_vanish_at(&moved));
    let fam = c.universal_family().specialize(&point);
    assert!(fam
        .saturate(&Ideal::maximal(3), &b())
        .unwrap()
        .equals(&z.saturated(&b()).unwrap(), &b())
        .unwrap());
}

#[test]
fn minor_cap_is_enforced() {
    let z = ProjectiveScheme::parse(3, &["x1*x3", "x2*x3"]).unwrap();
    let rows = degree_part_rows(&z, 2, &b()).unwrap();
    let basis = monomial_basis(3, 2);
    let (k, _) = echelon_point(&basis, &rows);
    let ks: Vec<Monomial> = k.iter().map(|&i| basis[i].clone()).collect();
    let err = hilb_chart(&up("t + 2"), 3, &ks, None, &b().with_minor_cap(10)).unwrap_err();
    assert!(err.is_budget());
}

#[test]
fn universal_family_of_points() {
    let c = Chart::skeleton(
        &up("2"),
        2,
        &Chart::default_k(&up("2"), 2, 2).unwrap(),
        None,
    )
    .unwrap();
    let fam = c.universal_family();
    assert_eq!(fam.polys.len(), 1);
    let z = fam.specialize(&[q(0), q(0)]);
    assert!(z
        .equals(&Ideal::parse(2, &["x1^2"]).unwrap(), &b())
        .unwrap());
}

#[test]
fn relative_charts() {
    let line = ProjectiveScheme::parse(3, &["x1"]).unwrap();
    let basis = monomial_basis(3, 1);
    let c = hilb_chart_relative(
        &line,
        &up("t + 1"),
        &[basis[1].clone(), basis[2].clone()],
        &b(),
    )
    .unwrap();
    let gb = c.equation_ideal();
    assert!(gb
        .equals(&Ideal::parse(2, &["x1", "x2"]).unwrap(), &b())
        .unwrap());
    let quad = ProjectiveScheme::parse(4, &["x1*x4 - x2*x3"]).unwrap();
    let diag = ProjectiveScheme::parse(4, &["x1*x4 - x2*x3", "x2 - x3"]).unwrap();
    let d = relative_degree(&quad, &up("2*t + 1"), &b()).unwrap();
    let rows = degree_part_rows(&diag, d, &b()).unwrap();
    let basis = monomial_basis(4, d);
    let (k, point) = echelon_point(&basis, &rows);
    let ks: Vec<Monomial> = k.iter().map(|&i| basis[i].clone()).collect();
    let mut c = Chart::skeleton(&up("2*t + 1"), 4, &ks, Some(d)).unwrap();
    c.ambient = degree_part_rows(&quad, d, &b()).unwrap();
    assert!(c.contains_point(&point));
    let plane_conic = ProjectiveScheme::parse(4, &["x1*x4 - x2^2", "x2 - x3 - x4"]).unwrap();
    let rows = degree_part_rows(&plane_conic, d, &b()).unwrap();
    let (k2, point2) = echelon_point(&basis, &rows);
    assert_eq!(k2, k);
    assert!(!c.contains_point(&point2));
}

#[test]
fn symmetric_power_matrix() {
    let eta = gl_symmetric_matrix(2, 1);
    assert_eq!(eta[0][1], Polynomial::var(4, 1));
    let eta = gl_symmetric_matrix(2, 2);
    let p = |s: &str| crate::poly::parse_poly(s, &["s11", "s12", "s21", "s22"]).unwrap();
    assert_eq!(eta[0], vec![p("s11^2"), p("2*s11*s12"), p("s12^2")]);
    let id: Vec<Rational> = [1, 0, 0, 1].iter().map(|&v| q(v)).collect();
    for (i, row) in eta.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            assert_eq!(e.eval(&id), q(i64::from(i == j)));
        }
    }
}

#[test]
fn transitions() {
    let c = Chart::skeleton(&up("1"), 2, &[mono(&[1, 0])], None).unwrap();
    let t = transition(&c, &[1]).unwrap();
    // Swap: s = [[0,1],[1,0]], u = 5 gives θ = 5.
    let pt = [q(0), q(1), q(1), q(0), q(5)];
    assert_eq!(t.theta[0][0].eval(&pt), Some(q(5)));
    let same = transition(&c, &[0]).unwrap();
    let diag = [q(3), q(0), q(0), q(1), q(5)];
    assert_eq!(same.theta[0][0].eval(&diag), Some(q(15)));
    let id = [q(1), q(0), q(0), q(1), q(7)];
    assert_eq!(same.theta[0][0].eval(&id), Some(q(7)));
    // K -> K' -> K under g then g^{-1} returns the starting point.
    let c2 = Chart::skeleton(
        &up("2"),
        2,
        &Chart::default_k(&up("2"), 2, 2).unwrap(),
        None,
    )
    .unwrap();
    let kp = vec![0usize, 2];
    let t1 = transition(&c2, &kp).unwrap();
    let g = [q(2), q(1), q(1), q(1)];
    let ginv = [q(1), q(-1), q(-1), q(2)];
    let u = [q(3), q(-4)];
    let mid: Vec<Rational> = t1
        .theta
        .iter()
        .map(|row| row[0].eval(&[g.to_vec(), u.to_vec()].concat()).unwrap())
        .collect();
    let mut back_chart = c2.clone();
    back_chart.k = kp.clone();
    let t2 = transition(&back_chart, &c2.k).unwrap();
    let end: Vec<Rational> = t2
        .theta
        .iter()
        .map(|row| row[0].eval(&[ginv.to_vec(), mid.clone()].concat()).unwrap())
        .collect();
    assert_eq!(end, u.to_vec());
}

#[test]
fn equivalence_decisions() {
    let x = ProjectiveScheme::parse(2, &["x1*x2"]).unwrap();
    let y = ProjectiveScheme::parse(2, &["x1^2 - x2^2"]).unwrap();
    match projective_equivalence(&x, &y, &b()).unwrap() {
        Equivalence::Equivalent {
            witness: Some(g), ..
        } => assert!(verify_witness(&x, &y, &g, &b()).unwrap()),
        other => panic!("{other:?}"),
    }
    let dbl = ProjectiveScheme::parse(2, &["x1^2"]).unwrap();
    assert!(!projective_equivalence(&dbl, &x, &b())
        .unwrap()
        .is_equivalent());
    for (_, s) in catalog::all() {
        assert!(projective_equivalence(&s, &s, &b())
            .unwrap()
            .is_equivalent());
    }
    let tl = catalog::by_name("two_lines").unwrap();
    let conic = catalog::by_name("conic").unwrap();
    assert!(!projective_equivalence(&tl, &conic, &b())
        .unwrap()
        .is_equivalent());
    let moved = ProjectiveScheme::parse(3, &["(x1 + x2)*(x2 - x3)"]).unwrap();
    assert!(projective_equivalence(&tl, &moved, &b())
        .unwrap()
        .is_equivalent());
}

#[test]
fn gotzmann_r_invariance_on_catalog() {
    for (_, x) in catalog::all() {
        let p = x.hilbert_polynomial(&b()).unwrap();
        let r = x.ambient_vars();
        let g = gotzmann_number(&p, r).unwrap();
        assert!(reconstruction_holds(&p, r, &g));
        assert_eq!(gotzmann_number(&p, r + 1).unwrap().phi, g.phi);
    }
}
