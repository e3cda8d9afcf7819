use super::*;
use crate::poly::UniPoly;

fn b() -> Budget {
    Budget::default()
}

#[test]
fn catalog_hilbert_polynomials_and_chi() {
    let expect = [
        ("p1", "t + 1", 1),
        ("conic", "2*t + 1", 1),
        ("two_lines", "2*t + 1", 1),
        ("double_line", "2*t + 1", 1),
        ("nodal_cubic", "3*t", 0),
        ("twisted_cubic", "3*t + 1", 1),
    ];
    for (name, hp, chi) in expect {
        let x = catalog::by_name(name).unwrap();
        assert_eq!(
            x.hilbert_polynomial(&b()).unwrap(),
            UniPoly::parse(hp).unwrap(),
            "{name}"
        );
        assert_eq!(x.chi(&b()).unwrap(), BigInt::from(chi), "{name}");
    }
}

#[test]
fn charts() {
    let x = ProjectiveScheme::parse(2, &["x1*x2"]).unwrap();
    let c = x.standard_charts();
    assert!(c[0]
        .equals(&Ideal::parse(1, &["x1"]).unwrap(), &b())
        .unwrap());
    assert!(c[1]
        .equals(&Ideal::parse(1, &["x1"]).unwrap(), &b())
        .unwrap());
    let nc = catalog::by_name("nodal_cubic").unwrap();
    let c = nc.standard_charts();
    assert_eq!(c.len(), 3);
    assert!(c[2]
        .equals(&Ideal::parse(2, &["x2^2 - x1^3 - x1^2"]).unwrap(), &b())
        .unwrap());
}

#[test]
fn segre_products() {
    let p1 = ProjectiveScheme::projective_space(2);
    let s = ProjectiveScheme::segre_product(&p1, &p1).unwrap();
    assert!(s
        .ideal()
        .equals(&Ideal::parse(4, &["x1*x4 - x2*x3"]).unwrap(), &b())
        .unwrap());
    assert_eq!(
        s.hilbert_polynomial(&b()).unwrap(),
        UniPoly::parse("t^2 + 2*t + 1").unwrap()
    );
    let pt = ProjectiveScheme::projective_space(1);
    let c = catalog::by_name("conic").unwrap();
    let s = ProjectiveScheme::segre_product(&pt, &c).unwrap();
    assert!(s.ideal().equals(c.ideal(), &b()).unwrap());
    let s = ProjectiveScheme::segre_product(&c, &p1).unwrap();
    assert_eq!(
        s.hilbert_polynomial(&b()).unwrap(),
        UniPoly::parse("2*t^2 + 3*t + 1").unwrap()
    );
}

#[test]
fn veronese() {
    let p1 = ProjectiveScheme::projective_space(2);
    for e in 1..=3u32 {
        let v = p1.veronese_reembed(e, &b()).unwrap();
        assert_eq!(v.ambient_vars(), e as usize + 1);
        let hp = p1.hilbert_polynomial(&b()).unwrap().stretch(e as i64);
        assert_eq!(v.hilbert_polynomial(&b()).unwrap(), hp);
    }
    let c = catalog::by_name("two_lines").unwrap();
    let v = c.veronese_reembed(2, &b()).unwrap();
    assert_eq!(
        v.hilbert_polynomial(&b()).unwrap(),
        UniPoly::parse("4*t + 1").unwrap()
    );
}

#[test]
fn components_of_catalog() {
    let expect: [(&str, &[(u64, u64)]); 6] = [
        ("p1", &[(1, 1)]),
        ("conic", &[(2, 1)]),
        ("two_lines", &[(1, 1), (1, 1)]),
        ("double_line", &[(1, 2)]),
        ("nodal_cubic", &[(3, 1)]),
        ("twisted_cubic", &[(3, 1)]),
    ];
    for (name, comps) in expect {
        let x = catalog::by_name(name).unwrap();
        let cs = x.one_dim_components(&b()).unwrap();
        let got: Vec<(u64, u64)> = cs.iter().map(|c| (c.degree, c.length)).collect();
        assert_eq!(got, comps.to_vec(), "{name}");
        for n in -3..=3 {
            assert!(rr_check(&x, n, &b()).unwrap(), "{name} {n}");
        }
    }
    let dl = catalog::by_name("double_line").unwrap();
    let cs = dl.one_dim_components(&b()).unwrap();
    assert!(cs[0]
        .prime
        .equals(&Ideal::parse(3, &["x1"]).unwrap(), &b())
        .unwrap());
}

#[test]
fn components_with_points_and_hints() {
    let lp = ProjectiveScheme::parse(3, &["x1*x3", "x2*x3"]).unwrap();
    let cs = lp.one_dim_components(&b()).unwrap();
    assert_eq!(cs.len(), 1);
    assert_eq!((cs[0].degree, cs[0].length), (1, 1));
    let tl = ProjectiveScheme::parse(4, &["x1*x2", "x3"]).unwrap();
    let cs = tl.one_dim_components(&b()).unwrap();
    assert_eq!(cs.len(), 2);
    let hinted = catalog::by_name("two_lines")
        .unwrap()
        .with_component_hints(vec![
            Ideal::parse(3, &["x1"]).unwrap(),
            Ideal::parse(3, &["x2"]).unwrap(),
        ])
        .unwrap();
    assert_eq!(hinted.one_dim_components(&b()).unwrap().len(), 2);
    let bad = catalog::by_name("two_lines")
        .unwrap()
        .with_component_hints(vec![Ideal::parse(3, &["x1"]).unwrap()])
        .unwrap();
    assert!(bad.one_dim_components(&b()).is_err());
    // Two conjugate lines over Q(i).
    let conj = ProjectiveScheme::parse(3, &["x1^2 + x2^2"]).unwrap();
    assert!(matches!(
        conj.one_dim_components(&b()),
        Err(Error::DecompositionUnavailable(_))
    ));
}

#[test]
fn scheme_json_round_trip() {
    let x = catalog::by_name("twisted_cubic").unwrap();
    let back = ProjectiveScheme::from_json(&x.to_json()).unwrap();
    assert!(back.ideal().equals(x.ideal(), &b()).unwrap());
    let f: SchemeFile = serde_json::from_str(
        r#"{"ambient":3,"generators":["x1*x2"],"components":[["x1"],["x2"]]}"#,
    )
    .unwrap();
    let s = ProjectiveScheme::from_file(&f).unwrap();
    assert_eq!(s.component_hints().unwrap().len(), 2);
    assert!(ProjectiveScheme::parse(2, &["x1 + 1"]).is_err());
}
