use super::*;
use crate::budget::Budget;
use crate::modules::Presentation;
use crate::poly::q;
use crate::scheme::catalog;

fn b() -> Budget {
    Budget::default()
}

fn p(s: &str, names: &[&str]) -> Polynomial {
    let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
    parse_poly(s, &names).unwrap()
}

#[test]
fn diagonal_is_certified_for_catalog() {
    for (name, x) in catalog::all() {
        let g = GraphMorphism::diagonal(&x, &b()).unwrap();
        assert!(g.is_subscheme(&b()).unwrap(), "{name}");
        assert!(check_graph_iso(&g, &b()).unwrap(), "{name}");
    }
}

#[test]
fn squaring_map_is_rejected() {
    let p1 = catalog::by_name("p1").unwrap();
    let forms = vec![p("x1^2", &["x1", "x2"]), p("x2^2", &["x1", "x2"])];
    let g = GraphMorphism::from_forms(&p1, &p1, &forms, &b()).unwrap();
    assert!(!check_graph_iso(&g, &b()).unwrap());
}

#[test]
fn constant_map_is_rejected() {
    let p1 = catalog::by_name("p1").unwrap();
    let forms = vec![Polynomial::one(2), Polynomial::zero(2)];
    let g = GraphMorphism::from_forms(&p1, &p1, &forms, &b()).unwrap();
    assert_eq!(
        g.hilbert_polynomial(&b()).unwrap(),
        UniPoly::parse("t + 1").unwrap()
    );
    assert!(!check_graph_iso(&g, &b()).unwrap());
}

#[test]
fn conic_parametrization_is_certified() {
    let p1 = catalog::by_name("p1").unwrap();
    let conic = catalog::by_name("conic").unwrap();
    let n = ["x1", "x2"];
    let forms = vec![p("x1^2", &n), p("x1*x2", &n), p("x2^2", &n)];
    let g = GraphMorphism::from_forms(&p1, &conic, &forms, &b()).unwrap();
    assert_eq!(
        g.hilbert_polynomial(&b()).unwrap(),
        UniPoly::parse("3*t + 1").unwrap()
    );
    assert!(check_graph_iso(&g, &b()).unwrap());
    assert!(check_graph_iso(&g.transpose(), &b()).unwrap());
}

#[test]
fn transpose_round_trips() {
    let x = catalog::by_name("two_lines").unwrap();
    let g = GraphMorphism::diagonal(&x, &b()).unwrap();
    let back = g.transpose().transpose();
    assert!(back.graph.equals(&g.graph, &b()).unwrap());
}

#[test]
fn generator_strings_round_trip() {
    let x = catalog::by_name("conic").unwrap();
    let g = GraphMorphism::diagonal(&x, &b()).unwrap();
    let h = GraphMorphism::from_strings(&x, &x, &g.generator_strings()).unwrap();
    assert!(h.graph.equals(&g.graph, &b()).unwrap());
}

#[test]
fn invertible_locus_of_a_cyclic_module() {
    // Q[a]/(a) over Q[a] is supported at the origin only.
    let m = Presentation::cyclic(1, vec![], &[p("a", &["a"])]);
    let locus = invertible_locus(&m, &b()).unwrap();
    assert!(!locus.contains_point(&[q(0)]));
    assert!(!locus.contains_point(&[q(1)]));
    assert!(locus.is_empty(&b()).unwrap());
    let free = Presentation::free(1, vec![], vec![0]);
    let all = invertible_locus(&free, &b()).unwrap();
    assert!(all.is_everything(&b()).unwrap());
}

#[test]
fn rank_two_module_is_nowhere_invertible() {
    let free = Presentation::free(1, vec![], vec![0, 0]);
    assert!(invertible_locus(&free, &b())
        .unwrap()
        .is_empty(&b())
        .unwrap());
}

#[test]
fn family_locus_detects_degenerate_fiber() {
    // Γ_a = V(w0_1 - a w1_0) ∩ (P¹ × P¹): the graph of x ↦ (x0 : a x1) degenerates at a = 0.
    let p1 = catalog::by_name("p1").unwrap();
    let names = ["a", "w0_0", "w0_1", "w1_0", "w1_1"];
    let fam = GraphFamily {
        source: p1.clone(),
        target: p1.clone(),
        params: 1,
        base: Ideal::zero(1),
        ideal: Ideal::new(
            5,
            vec![
                p("w0_1 - a*w1_0", &names),
                p("w0_0*w1_1 - w0_1*w1_0", &names),
            ],
        ),
    };
    let locus = iso_locus_over_base(&fam, &b()).unwrap();
    assert!(!locus.contains_point(&[q(0)]));
    assert!(locus.contains_point(&[q(2)]));
    assert!(check_graph_iso(&fam.specialize(&[q(1)]).unwrap(), &b()).unwrap());
    assert!(!check_graph_iso(&fam.specialize(&[q(0)]).unwrap(), &b()).unwrap());
}

#[test]
fn first_stage_of_enumeration() {
    let items: Vec<_> = SubschemeEnumerator::new(2, None, 1)
        .take_while(|(s, _)| *s == 1)
        .collect();
    let got: Vec<String> = items
        .iter()
        .map(|(_, f)| f[0].fmt_with(&["x".into(), "y".into()]))
        .collect();
    assert_eq!(got, vec!["x", "y", "x - y", "x + y"]);
    let next: Vec<_> = SubschemeEnumerator::new(2, None, 2).take(3).collect();
    assert!(next.iter().all(|(s, _)| *s == 2));
}

#[test]
fn enumeration_is_modulo_the_ambient_ideal() {
    let conic = catalog::by_name("conic").unwrap();
    let gb = conic.saturated(&b()).unwrap().grevlex(&b()).unwrap();
    for (_, forms) in enumerate_subschemes(&conic, 1, &b()).unwrap().take(400) {
        for f in forms {
            assert_eq!(gb.reduce(&f), f);
        }
    }
}

#[test]
fn candidate_polynomials() {
    let p1 = catalog::by_name("p1").unwrap();
    let conic = catalog::by_name("conic").unwrap();
    let c = candidate_polys_1dim(&p1, &p1, &b()).unwrap();
    assert_eq!(c, vec![UniPoly::parse("2*t + 1").unwrap()]);
    let c = candidate_polys_1dim(&p1, &conic, &b()).unwrap();
    assert_eq!(c, vec![UniPoly::parse("3*t + 1").unwrap()]);
}

#[test]
fn decisions_on_small_pairs() {
    let p1 = catalog::by_name("p1").unwrap();
    let nodal = catalog::by_name("nodal_cubic").unwrap();
    let out = decide_iso_1dim(&p1, &p1, &b(), Mode::Hybrid).unwrap();
    assert_eq!(out.verdict, Verdict::Isomorphic);
    assert!(check_graph_iso(out.certificate.as_ref().unwrap(), &b()).unwrap());
    let out = decide_iso_1dim(&p1, &nodal, &b(), Mode::Hybrid).unwrap();
    assert_eq!(out.verdict, Verdict::NotIsomorphic);
    let back = decide_iso_1dim(&nodal, &p1, &b(), Mode::Hybrid).unwrap();
    assert_eq!(back.verdict, Verdict::NotIsomorphic);
}

#[test]
fn certificate_round_trip() {
    let x = catalog::by_name("two_lines").unwrap();
    let out = decide_iso_1dim(&x, &x, &b(), Mode::Hybrid).unwrap();
    let cert = out.to_certificate(&b()).unwrap();
    let json = serde_json::to_string(&cert).unwrap();
    let back: Certificate = serde_json::from_str(&json).unwrap();
    assert!(verify_certificate(&back, &x, &x, &b()).unwrap());
}
