//! Acceptance suite. Each test prints one `criterion N: PASS|FAIL` line.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use projiso::groebner::Ideal;
use projiso::hilb::{
    degree_part_rows, echelon_point, gotzmann_number, hilb_chart, projective_equivalence,
    reconstruction_holds, verify_witness, Chart, Equivalence,
};
use projiso::homiso::{
    candidate_polys_1dim, check_graph_iso, decide_iso_1dim, verify_certificate, Certificate,
    GraphMorphism, Mode, Verdict,
};
use projiso::modules::Presentation;
use projiso::poly::{monomial_basis, parse_poly, q, x_names, Monomial, Polynomial, UniPoly};
use projiso::positivity::{globally_generated, projective_image, section_morphism, very_ample};
use projiso::scheme::{catalog, rr_check, ProjectiveScheme};
use projiso::Budget;

type Outcome = Result<(), String>;

fn b() -> Budget {
    Budget::default()
}

fn up(s: &str) -> UniPoly {
    UniPoly::parse(s).unwrap()
}

fn cat(name: &str) -> ProjectiveScheme {
    catalog::by_name(name).unwrap()
}

fn check(cond: bool, msg: impl Into<String>) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

/// Runs a criterion, prints its line and fails the test on a miss.
fn criterion(n: u32, name: &str, limit: Duration, body: impl FnOnce() -> Outcome) {
    let start = Instant::now();
    let mut result = body();
    let elapsed = start.elapsed();
    if result.is_ok() && elapsed > limit {
        result = Err(format!("took {elapsed:.2?}, limit {limit:?}"));
    }
    match &result {
        Ok(()) => println!("criterion {n} ({name}): PASS in {elapsed:.2?}"),
        Err(e) => println!("criterion {n} ({name}): FAIL: {e}"),
    }
    assert!(
        result.is_ok(),
        "criterion {n} failed: {}",
        result.unwrap_err()
    );
}

#[test]
fn criterion_01_hilbert_polynomials() {
    criterion(1, "Hilbert polynomials", Duration::from_secs(4), || {
        for (name, want) in [
            ("p1", "t + 1"),
            ("double_line", "2*t + 1"),
            ("nodal_cubic", "3*t"),
            ("twisted_cubic", "3*t + 1"),
        ] {
            let got = cat(name)
                .hilbert_polynomial(&b())
                .map_err(|e| e.to_string())?;
            check(
                got == up(want),
                format!("{name}: {} instead of {want}", got.fmt_var("t")),
            )?;
        }
        Ok(())
    });
}

#[test]
fn criterion_02_gotzmann_numbers() {
    criterion(2, "Gotzmann numbers", Duration::from_secs(4), || {
        for (p, r, phi) in [
            ("2", 2, 2),
            ("2*t + 1", 3, 2),
            ("t + 2", 3, 2),
            ("2*t + 1", 4, 2),
        ] {
            let g = gotzmann_number(&up(p), r).map_err(|e| e.to_string())?;
            check(g.phi == phi, format!("phi({p}, r={r}) = {}", g.phi))?;
            check(
                reconstruction_holds(&up(p), r, &g),
                format!("reconstruction of {p}, r={r}"),
            )?;
        }
        for (name, x) in catalog::all() {
            let p = x.hilbert_polynomial(&b()).map_err(|e| e.to_string())?;
            for r in [x.ambient_vars(), x.ambient_vars() + 1] {
                let g = gotzmann_number(&p, r).map_err(|e| e.to_string())?;
                check(
                    reconstruction_holds(&p, r, &g),
                    format!("reconstruction for {name}, r={r}"),
                )?;
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_03_chart_equations() {
    criterion(3, "chart equations", Duration::from_secs(60), || {
        let e = |e: projiso::Error| e.to_string();
        let c = hilb_chart(
            &up("1"),
            2,
            &Chart::default_k(&up("1"), 2, 1).map_err(e)?,
            None,
            &b(),
        )
        .map_err(e)?;
        check(c.equations.is_empty() && c.nvars() == 1, "Hilb_1(P^1)")?;
        let c = hilb_chart(
            &up("2"),
            2,
            &Chart::default_k(&up("2"), 2, 2).map_err(e)?,
            None,
            &b(),
        )
        .map_err(e)?;
        check(c.equations.is_empty() && c.nvars() == 2, "Hilb_2(P^1)")?;
        let lines = monomial_basis(3, 1);
        for k in [[0usize, 1], [0, 2], [1, 2]] {
            let ks: Vec<Monomial> = k.iter().map(|&i| lines[i].clone()).collect();
            let c = hilb_chart(&up("t + 1"), 3, &ks, None, &b()).map_err(e)?;
            check(
                c.equations.is_empty() && c.nvars() == 2,
                format!("Hilb_t+1(P^2) chart {k:?}"),
            )?;
        }
        let z = ProjectiveScheme::parse(3, &["x1*x3", "x2*x3"]).map_err(e)?;
        let basis = monomial_basis(3, 2);
        let (k, point) = echelon_point(&basis, &degree_part_rows(&z, 2, &b()).map_err(e)?);
        let ks: Vec<Monomial> = k.iter().map(|&i| basis[i].clone()).collect();
        let c = hilb_chart(&up("t + 2"), 3, &ks, None, &b()).map_err(e)?;
        check(c.nvars() == 8, format!("{} chart variables", c.nvars()))?;
        check(
            c.minors_examined == 210,
            format!("{} minors", c.minors_examined),
        )?;
        check(!c.equations.is_empty(), "no equations")?;
        check(
            c.equations_vanish_at(&point),
            "equations do not vanish at the echelon point",
        )?;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut moved = point.clone();
        for v in moved.iter_mut() {
            *v += q(rng.gen_range(1..=5));
        }
        check(
            !c.equations_vanish_at(&moved),
            "perturbed point satisfies every minor",
        )
    });
}

#[test]
fn criterion_04_riemann_roch() {
    criterion(4, "Riemann-Roch oracle", Duration::from_secs(10), || {
        for (name, x) in catalog::all() {
            for n in -3..=3 {
                check(
                    rr_check(&x, n, &b()).map_err(|e| e.to_string())?,
                    format!("{name}, n = {n}"),
                )?;
            }
            let comps = x.one_dim_components(&b()).map_err(|e| e.to_string())?;
            let s: u64 = comps.iter().map(|c| c.length * c.degree).sum();
            let lead = x
                .hilbert_polynomial(&b())
                .map_err(|e| e.to_string())?
                .coeff(1);
            check(lead == q(s as i64), format!("{name}: Σℓ·deg = {s}"))?;
        }
        Ok(())
    });
}

fn constant_graph(x: &ProjectiveScheme) -> GraphMorphism {
    let m = x.ambient_vars();
    let forms: Vec<Polynomial> = (0..m)
        .map(|i| {
            if i == 0 {
                Polynomial::one(m)
            } else {
                Polynomial::zero(m)
            }
        })
        .collect();
    GraphMorphism::from_forms(x, x, &forms, &b()).unwrap()
}

fn squaring_graph() -> GraphMorphism {
    let p1 = cat("p1");
    let n = x_names(2);
    let forms = vec![
        parse_poly("x1^2", &n).unwrap(),
        parse_poly("x2^2", &n).unwrap(),
    ];
    GraphMorphism::from_forms(&p1, &p1, &forms, &b()).unwrap()
}

#[test]
fn criterion_05_graph_certifier() {
    criterion(5, "graph certifier", Duration::from_secs(30), || {
        let e = |e: projiso::Error| e.to_string();
        for (name, x) in catalog::all() {
            let g = GraphMorphism::diagonal(&x, &b()).map_err(e)?;
            check(
                check_graph_iso(&g, &b()).map_err(e)?,
                format!("diagonal of {name}"),
            )?;
        }
        check(
            !check_graph_iso(&squaring_graph(), &b()).map_err(e)?,
            "squaring map accepted",
        )?;
        for name in ["p1", "conic", "two_lines"] {
            check(
                !check_graph_iso(&constant_graph(&cat(name)), &b()).map_err(e)?,
                format!("{name} × pt accepted"),
            )?;
        }
        Ok(())
    });
}

#[test]
fn criterion_06_projective_equivalence() {
    criterion(6, "projective equivalence", Duration::from_secs(60), || {
        let e = |e: projiso::Error| e.to_string();
        let a = ProjectiveScheme::parse(3, &["x1*x2"]).map_err(e)?;
        let c = ProjectiveScheme::parse(3, &["x1^2 - x2^2"]).map_err(e)?;
        match projective_equivalence(&a, &c, &b()).map_err(e)? {
            Equivalence::Equivalent {
                witness: Some(g), ..
            } => check(
                verify_witness(&a, &c, &g, &b()).map_err(e)?,
                "witness does not verify",
            )?,
            other => return Err(format!("expected a witness, got {other:?}")),
        }
        let d = ProjectiveScheme::parse(3, &["x1^2"]).map_err(e)?;
        check(
            !projective_equivalence(&d, &a, &b())
                .map_err(e)?
                .is_equivalent(),
            "double line ~ two lines",
        )
    });
}

#[test]
fn criterion_07_one_dimensional_decision() {
    criterion(
        7,
        "one-dimensional decision",
        Duration::from_secs(120),
        || {
            let e = |e: projiso::Error| e.to_string();
            let (p1, nodal, conic) = (cat("p1"), cat("nodal_cubic"), cat("conic"));
            let out = decide_iso_1dim(&p1, &p1, &b(), Mode::Hybrid).map_err(e)?;
            check(out.verdict == Verdict::Isomorphic, "(P1, P1)")?;
            let diag = GraphMorphism::diagonal(&p1, &b()).map_err(e)?;
            check(
                out.certificate
                    .as_ref()
                    .unwrap()
                    .graph
                    .equals(&diag.graph, &b())
                    .map_err(e)?,
                "certificate is not the diagonal",
            )?;
            check(
                verify_certificate(&out.to_certificate(&b()).map_err(e)?, &p1, &p1, &b())
                    .map_err(e)?,
                "re-verification",
            )?;
            let out = decide_iso_1dim(&p1, &nodal, &b(), Mode::Hybrid).map_err(e)?;
            check(out.verdict == Verdict::NotIsomorphic, "(P1, nodal cubic)")?;
            check(
                out.trace.iter().any(|t| t.contains('χ')),
                "nodal cubic not rejected by χ",
            )?;
            let out = decide_iso_1dim(&p1, &conic, &b(), Mode::Hybrid).map_err(e)?;
            check(
                out.verdict == Verdict::Isomorphic,
                format!("(P1, conic): {:?}", out.trace),
            )?;
            let n = x_names(2);
            let forms: Vec<Polynomial> = ["x1^2", "x1*x2", "x2^2"]
                .iter()
                .map(|s| parse_poly(s, &n).unwrap())
                .collect();
            let two_uple = GraphMorphism::from_forms(&p1, &conic, &forms, &b()).map_err(e)?;
            let cert = out.certificate.unwrap();
            check(
                cert.hilbert_polynomial(&b()).map_err(e)? == up("3*t + 1"),
                "certificate degree",
            )?;
            check(
                check_graph_iso(&cert, &b()).map_err(e)?,
                "conic certificate rejected",
            )?;
            check(
                two_uple.hilbert_polynomial(&b()).map_err(e)? == up("3*t + 1"),
                "2-uple graph",
            )?;
            check(
                candidate_polys_1dim(&p1, &p1, &b()).map_err(e)? == vec![up("2*t + 1")],
                "candidates for (P1, P1)",
            )?;
            check(
                candidate_polys_1dim(&p1, &conic, &b()).map_err(e)? == vec![up("3*t + 1")],
                "candidates for (P1, conic)",
            )
        },
    );
}

#[test]
fn criterion_08_positivity() {
    criterion(8, "positivity", Duration::from_secs(60), || {
        let e = |e: projiso::Error| e.to_string();
        let p1 = cat("p1");
        for n in -2..=3 {
            let l = Presentation::free(2, vec![], vec![n]);
            check(
                globally_generated(&p1, &l, &b()).map_err(e)? == (n >= 0),
                format!("globally generated R({n})"),
            )?;
            check(
                very_ample(&p1, &l, &b()).map_err(e)? == (n >= 1),
                format!("very ample R({n})"),
            )?;
        }
        let s = section_morphism(&p1, &Presentation::free(2, vec![], vec![2]), &b()).map_err(e)?;
        let names: Vec<String> = (0..3).map(|k| format!("y{k}")).collect();
        let conic = Ideal::new(3, vec![parse_poly("y0*y2 - y1^2", &names).unwrap()]);
        check(
            projective_image(&s, &b())
                .map_err(e)?
                .equals(&conic, &b())
                .map_err(e)?,
            "image of the 2-uple map",
        )
    });
}

fn random_poly(
    rng: &mut ChaCha8Rng,
    n: usize,
    max_deg: u32,
    homogeneous: Option<u32>,
) -> Polynomial {
    let terms = rng.gen_range(1..=3);
    let mut p = Polynomial::zero(n);
    for _ in 0..terms {
        let deg = homogeneous.unwrap_or_else(|| rng.gen_range(0..=max_deg));
        let basis = monomial_basis(n, deg);
        let m = basis[rng.gen_range(0..basis.len())].clone();
        let c = rng.gen_range(-3i64..=3);
        p = &p + &Polynomial::monomial(m, q(c));
    }
    p
}

fn random_ideal(rng: &mut ChaCha8Rng, homogeneous: bool) -> Vec<Polynomial> {
    let mut gens = Vec::new();
    while gens.len() < rng.gen_range(2..=3) {
        let deg = rng.gen_range(1..=2);
        let p = random_poly(rng, 3, 2, homogeneous.then_some(deg));
        if !p.is_zero() {
            gens.push(p);
        }
    }
    gens
}

fn gb_uniqueness(rng: &mut ChaCha8Rng) -> Outcome {
    for round in 0..20 {
        let gens = random_ideal(rng, false);
        let mut alt = gens.clone();
        for g in alt.iter_mut() {
            *g = g.scale(&q(
                rng.gen_range(1..=4) * if rng.gen_bool(0.5) { 1 } else { -1 }
            ));
        }
        let m = random_poly(rng, 3, 1, None);
        alt[0] = &alt[0] + &(&m * &gens[1]);
        if alt[0].is_zero() {
            alt[0] = gens[0].clone();
        }
        alt.push(&gens[0] + &gens[1]);
        alt.rotate_left(1);
        let g1 = Ideal::new(3, gens)
            .grevlex(&b())
            .map_err(|e| e.to_string())?;
        let g2 = Ideal::new(3, alt)
            .grevlex(&b())
            .map_err(|e| e.to_string())?;
        check(
            g1.polys() == g2.polys(),
            format!("round {round}: reduced bases differ"),
        )?;
    }
    Ok(())
}

fn fitting_invariance(rng: &mut ChaCha8Rng) -> Outcome {
    let e = |e: projiso::Error| e.to_string();
    for round in 0..20 {
        let (rows, cols) = (2, rng.gen_range(2..=3));
        let matrix: Vec<Vec<Polynomial>> = (0..rows)
            .map(|_| (0..cols).map(|_| random_poly(rng, 2, 1, Some(1))).collect())
            .collect();
        let m = Presentation::affine(2, vec![], rows, matrix.clone(), &b()).map_err(e)?;
        let mut alt = matrix.clone();
        let c = q(rng.gen_range(-3..=3));
        for j in 0..cols {
            alt[1][j] = &alt[1][j] + &alt[0][j].scale(&c);
        }
        let f = random_poly(rng, 2, 1, None);
        for row in alt.iter_mut() {
            row[0] = &row[0] + &(&row[1] * &f);
            let extra = &row[0] + &row[cols - 1];
            row.push(extra);
        }
        let m2 = Presentation::affine(2, vec![], rows, alt, &b()).map_err(e)?;
        for i in 0..=rows {
            let f1 = m.fitting_ideal(i, &b()).map_err(e)?;
            let f2 = m2.fitting_ideal(i, &b()).map_err(e)?;
            check(
                f1.equals(&f2, &b()).map_err(e)?,
                format!("round {round}: Fitt_{i} changed"),
            )?;
        }
    }
    Ok(())
}

fn saturation_idempotence(rng: &mut ChaCha8Rng) -> Outcome {
    let e = |e: projiso::Error| e.to_string();
    let mut ideals: Vec<Ideal> = catalog::all()
        .into_iter()
        .map(|(_, x)| x.ideal().clone())
        .collect();
    for _ in 0..10 {
        ideals.push(Ideal::new(3, random_ideal(rng, true)));
    }
    for i in ideals {
        let m = Ideal::maximal(i.arity());
        let s1 = i.saturate(&m, &b()).map_err(e)?;
        let s2 = s1.saturate(&m, &b()).map_err(e)?;
        check(
            s1.equals(&s2, &b()).map_err(e)?,
            "saturation is not idempotent",
        )?;
        let h = random_poly(rng, i.arity(), 1, Some(1));
        if !h.is_zero() {
            let t1 = i.saturate_elem(&h, &b()).map_err(e)?;
            let t2 = t1.saturate_elem(&h, &b()).map_err(e)?;
            check(
                t1.equals(&t2, &b()).map_err(e)?,
                "saturation by a form is not idempotent",
            )?;
        }
    }
    Ok(())
}

fn certifier_symmetry(rng: &mut ChaCha8Rng) -> Outcome {
    let e = |e: projiso::Error| e.to_string();
    let p1 = cat("p1");
    let mut graphs = vec![
        squaring_graph(),
        constant_graph(&p1),
        GraphMorphism::diagonal(&cat("conic"), &b()).map_err(e)?,
    ];
    for _ in 0..8 {
        let deg = rng.gen_range(1..=2);
        let forms = loop {
            let f = [
                random_poly(rng, 2, deg, Some(deg)),
                random_poly(rng, 2, deg, Some(deg)),
            ];
            let g = Ideal::new(2, f.to_vec());
            if !f.iter().all(|p| p.is_zero()) && g.projective_empty(&b()).map_err(e)? {
                break f;
            }
        };
        graphs.push(GraphMorphism::from_forms(&p1, &p1, &forms, &b()).map_err(e)?);
    }
    for g in graphs {
        let a = check_graph_iso(&g, &b()).map_err(e)?;
        let t = check_graph_iso(&g.transpose(), &b()).map_err(e)?;
        check(
            a == t,
            format!("certifier asymmetric on {:?}", g.generator_strings()),
        )?;
    }
    Ok(())
}

fn decisions_and_certificates(exe: &Path, dir: &Path) -> Outcome {
    let e = |e: projiso::Error| e.to_string();
    let budget = Budget::default().with_candidate_cap(2_000);
    let all = catalog::all();
    for (i, (nx, x)) in all.iter().enumerate() {
        for (ny, y) in &all[i..] {
            let a = decide_iso_1dim(x, y, &budget, Mode::Hybrid).map_err(e)?;
            let c = decide_iso_1dim(y, x, &budget, Mode::Hybrid).map_err(e)?;
            check(
                a.verdict == c.verdict,
                format!("({nx}, {ny}): {:?} vs {:?}", a.verdict, c.verdict),
            )?;
            if a.verdict != Verdict::Isomorphic {
                continue;
            }
            let cert = a.to_certificate(&budget).map_err(e)?;
            let json = serde_json::to_string(&cert).unwrap();
            let back: Certificate = serde_json::from_str(&json).unwrap();
            check(
                verify_certificate(&back, x, y, &budget).map_err(e)?,
                format!("({nx}, {ny}) certificate"),
            )?;
            let (fx, fy, fc) = (
                dir.join(format!("{nx}.json")),
                dir.join(format!("{ny}.json")),
                dir.join("cert.json"),
            );
            std::fs::write(&fx, x.to_json()).unwrap();
            std::fs::write(&fy, y.to_json()).unwrap();
            std::fs::write(&fc, &json).unwrap();
            let status = Command::new(exe)
                .arg("verify")
                .args([&fx, &fy, &fc])
                .output()
                .unwrap()
                .status;
            check(
                status.code() == Some(0),
                format!("({nx}, {ny}): verify exited with {status}"),
            )?;
        }
    }
    Ok(())
}

#[test]
fn criterion_09_property_suites() {
    let dir = tempfile::tempdir().unwrap();
    criterion(
        9,
        "seeded property suites",
        Duration::from_secs(300),
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(9);
            gb_uniqueness(&mut rng).map_err(|m| format!("GB uniqueness: {m}"))?;
            fitting_invariance(&mut rng).map_err(|m| format!("Fitting invariance: {m}"))?;
            saturation_idempotence(&mut rng).map_err(|m| format!("saturation: {m}"))?;
            certifier_symmetry(&mut rng).map_err(|m| format!("certifier symmetry: {m}"))?;
            decisions_and_certificates(Path::new(env!("CARGO_BIN_EXE_projiso")), dir.path())
        },
    );
}

#[test]
fn criterion_10_budget_honesty() {
    let dir = tempfile::tempdir().unwrap();
    criterion(10, "budget honesty", Duration::from_secs(10), || {
        let (fx, fy) = (dir.path().join("p1.json"), dir.path().join("conic.json"));
        std::fs::write(&fx, cat("p1").to_json()).unwrap();
        std::fs::write(&fy, cat("conic").to_json()).unwrap();
        let exe = env!("CARGO_BIN_EXE_projiso");
        let runs = [
            Command::new(exe)
                .args(["iso1dim", "--mode", "exact", "--minor-cap", "10"])
                .args([&fx, &fy])
                .output(),
            Command::new(exe)
                .args(["isop", "--poly", "3t+1"])
                .args([&fx, &fy])
                .env("PROJISO_BUDGET_MINOR_CAP", "10")
                .output(),
            Command::new(exe)
                .args([
                    "hilbchart",
                    "--poly",
                    "t+2",
                    "--r",
                    "3",
                    "--minor-cap",
                    "10",
                ])
                .output(),
        ];
        for out in runs {
            let out = out.map_err(|e| e.to_string())?;
            let text = String::from_utf8_lossy(&out.stdout);
            check(
                out.status.code() == Some(2),
                format!("exit {:?}: {text}", out.status.code()),
            )?;
            let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
            check(
                v["verdict"] == "UNDECIDED",
                format!("verdict {}", v["verdict"]),
            )?;
        }
        Ok(())
    });
}
