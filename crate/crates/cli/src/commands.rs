use std::path::Path;

use serde_json::{json, Value};

use projiso::groebner::Ideal;
use projiso::hilb::{
    degree_part_rows, gotzmann_number, hilb_chart, hilb_chart_relative, projective_equivalence,
    relative_degree, verify_witness, Chart, Equivalence,
};
use projiso::homiso::{
    check_graph_iso, decide_iso_1dim, iso_p_nonempty, iso_search_semidecide, segre_names,
    verify_certificate, Certificate, DecisionOutcome, GraphMorphism, IsoStatus, Mode, Verdict,
};
use projiso::modules::{ModuleFile, Presentation};
use projiso::poly::{
    fmt_rational, parse_poly, x_names, Monomial, MonomialOrder, Polynomial, UniPoly,
};
use projiso::positivity::{globally_generated, section_morphism, very_ample};
use projiso::scheme::{rr_check, ProjectiveScheme};
use projiso::{Budget, Error, Result};

use crate::{ChartArgs, Command, Report};

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

fn scheme(path: &Path) -> Result<ProjectiveScheme> {
    ProjectiveScheme::from_json(&read(path)?)
}

fn module(path: &Path) -> Result<Presentation> {
    let f: ModuleFile = serde_json::from_str(&read(path)?).map_err(Error::from)?;
    Presentation::from_file(&f)
}

fn strings(ps: &[Polynomial], names: &[String]) -> Vec<String> {
    ps.iter().map(|p| p.fmt_with(names)).collect()
}

fn uni(p: &UniPoly) -> Value {
    json!({
        "polynomial": p.fmt_var("t"),
        "coefficients": p.coeffs().iter().map(fmt_rational).collect::<Vec<_>>(),
    })
}

/// A JSON number when it fits, a string otherwise.
fn number(v: impl ToString) -> Value {
    let s = v.to_string();
    match s.parse::<i64>() {
        Ok(i) => json!(i),
        Err(_) => json!(s),
    }
}

fn parse_order(s: &str) -> Result<MonomialOrder> {
    match s {
        "grevlex" => Ok(MonomialOrder::Grevlex),
        "lex" => Ok(MonomialOrder::Lex),
        _ => match s.strip_prefix("elim:").map(str::parse) {
            Some(Ok(k)) => Ok(MonomialOrder::Elimination(k)),
            _ => Err(Error::Invalid(format!("unknown monomial order {s:?}"))),
        },
    }
}

fn parse_monomials(ks: &[String], r: usize) -> Result<Vec<Monomial>> {
    let names = x_names(r);
    ks.iter()
        .map(|s| {
            let p = parse_poly(s, &names)?;
            match p.terms() {
                [(m, _)] => Ok(m.clone()),
                _ => Err(Error::Invalid(format!("{s:?} is not a monomial"))),
            }
        })
        .collect()
}

fn outcome(o: &DecisionOutcome, budget: &Budget) -> Result<Report> {
    let cert = o.to_certificate(budget)?;
    let mut body = serde_json::to_value(&cert).map_err(Error::from)?;
    if let Some(r) = &o.budget_report {
        body["budget"] = json!(r);
    }
    Ok(if o.verdict == Verdict::Undecided {
        Report::undecided(body)
    } else {
        Report::decided(body)
    })
}

/// Resolved chart parameters: polynomial, ambient size, degree, `K` and relative scheme.
fn chart_setup(
    a: &ChartArgs,
    budget: &Budget,
) -> Result<(UniPoly, usize, u32, Vec<Monomial>, Option<ProjectiveScheme>)> {
    let p = UniPoly::parse(&a.poly)?;
    let x = a.scheme.as_deref().map(scheme).transpose()?;
    let r = match (&x, a.r) {
        (Some(x), Some(r)) if r != x.ambient_vars() => {
            return Err(Error::ArityMismatch {
                expected: x.ambient_vars(),
                found: r,
            })
        }
        (Some(x), _) => x.ambient_vars(),
        (None, Some(r)) => r,
        (None, None) => return Err(Error::Invalid("either --r or --scheme is required".into())),
    };
    let d = match (&x, a.d) {
        (Some(_), Some(_)) => {
            return Err(Error::Invalid(
                "--d is fixed by the scheme for relative charts".into(),
            ))
        }
        (Some(x), None) => relative_degree(x, &p, budget)?,
        (None, Some(d)) => d,
        (None, None) => gotzmann_number(&p, r)?.phi.max(1) as u32,
    };
    let k = if a.k.is_empty() {
        Chart::default_k(&p, r, d)?
    } else {
        parse_monomials(&a.k, r)?
    };
    Ok((p, r, d, k, x))
}

pub fn run(cmd: &Command, budget: &Budget) -> Result<Report> {
    match cmd {
        Command::Gb { input, order } => {
            let x = scheme(input)?;
            let order = parse_order(order)?;
            let gb = x.ideal().gb(order, budget)?;
            let names = x_names(x.ambient_vars());
            Ok(Report::decided(
                json!({ "generators": strings(gb.polys(), &names) }),
            ))
        }
        Command::Eliminate { input, k } => {
            let x = scheme(input)?;
            if *k > x.ambient_vars() {
                return Err(Error::Invalid(format!(
                    "cannot eliminate {k} of {} variables",
                    x.ambient_vars()
                )));
            }
            let e = x.ideal().eliminate(*k, budget)?.normalized(budget)?;
            let names = x_names(x.ambient_vars())[*k..].to_vec();
            Ok(Report::decided(
                json!({ "variables": names, "generators": strings(e.gens(), &names) }),
            ))
        }
        Command::Saturate { input, by } => {
            let x = scheme(input)?;
            let m = x.ambient_vars();
            let names = x_names(m);
            let sat = if by.is_empty() {
                x.saturated(budget)?
            } else {
                let j = Ideal::new(
                    m,
                    by.iter()
                        .map(|s| parse_poly(s, &names))
                        .collect::<Result<_>>()?,
                );
                x.ideal().saturate(&j, budget)?.normalized(budget)?
            };
            Ok(Report::decided(
                json!({ "generators": strings(sat.gens(), &names) }),
            ))
        }
        Command::Hilbpoly { input } => {
            let x = scheme(input)?;
            let p = x.hilbert_polynomial(budget)?;
            let mut body = uni(&p);
            body["dimension"] = json!(p.degree());
            Ok(Report::decided(body))
        }
        Command::Chi { input } => {
            let x = scheme(input)?;
            Ok(Report::decided(json!({ "chi": number(x.chi(budget)?) })))
        }
        Command::Components { input } => {
            let x = scheme(input)?;
            let names = x_names(x.ambient_vars());
            let comps: Vec<Value> = x
                .one_dim_components(budget)?
                .iter()
                .map(|c| json!({ "prime": strings(c.prime.gens(), &names), "degree": c.degree, "length": c.length }))
                .collect();
            Ok(Report::decided(json!({ "components": comps })))
        }
        Command::Rrcheck { input, from, to } => {
            let x = scheme(input)?;
            if from > to {
                return Err(Error::Invalid("empty range".into()));
            }
            let comps = x.one_dim_components(budget)?;
            let sum: u64 = comps.iter().map(|c| c.degree * c.length).sum();
            let p = x.hilbert_polynomial(budget)?;
            let lead = p.coeff(1);
            let mut results = Vec::new();
            let mut all = true;
            for n in *from..=*to {
                let ok = rr_check(&x, n, budget)?;
                all &= ok;
                results.push(json!({ "n": n, "holds": ok }));
            }
            let lead_ok = lead == projiso::poly::q(sum as i64);
            Ok(Report::decided(json!({
                "results": results,
                "holds": all && lead_ok,
                "sum_length_degree": sum,
                "leading_coefficient": fmt_rational(&lead),
            })))
        }
        Command::Gotzmann { poly, r } => {
            let p = UniPoly::parse(poly)?;
            let g = gotzmann_number(&p, *r)?;
            Ok(Report::decided(json!({ "phi": g.phi, "a": g.a })))
        }
        Command::Hilbchart(a) => {
            let (p, r, d, k, x) = chart_setup(a, budget)?;
            let chart = match &x {
                Some(x) => hilb_chart_relative(x, &p, &k, budget)?,
                None => hilb_chart(&p, r, &k, Some(d), budget)?,
            };
            serde_json::to_value(chart.to_file())
                .map(Report::decided)
                .map_err(Error::from)
        }
        Command::Family(a) => {
            let (p, r, d, k, x) = chart_setup(a, budget)?;
            let mut chart = Chart::skeleton(&p, r, &k, Some(d))?;
            if let Some(x) = &x {
                chart.ambient = degree_part_rows(x, d, budget)?;
            }
            let fam = chart.universal_family();
            let mut names = chart.variable_names();
            names.extend(x_names(r));
            Ok(Report::decided(json!({
                "d": d,
                "chart_variables": chart.variable_names(),
                "ambient_variables": x_names(r),
                "polys": strings(&fam.polys, &names),
                "ambient": strings(&fam.ambient, &names),
            })))
        }
        Command::Projequiv { x, y } => {
            let (x, y) = (scheme(x)?, scheme(y)?);
            Ok(Report::decided(
                match projective_equivalence(&x, &y, budget)? {
                    Equivalence::Equivalent { witness, .. } => {
                        let verified = match &witness {
                            Some(g) => verify_witness(&x, &y, g, budget)?,
                            None => false,
                        };
                        let w: Option<Vec<Vec<String>>> = witness.map(|g| {
                            g.iter()
                                .map(|row| row.iter().map(fmt_rational).collect())
                                .collect()
                        });
                        json!({ "verdict": "equivalent", "witness": w, "witness_verified": verified })
                    }
                    Equivalence::NotEquivalent { reason } => {
                        json!({ "verdict": "not_equivalent", "reason": reason })
                    }
                },
            ))
        }
        Command::Graphiso { x, y, graph } => {
            let (x, y) = (scheme(x)?, scheme(y)?);
            let v: Value = serde_json::from_str(&read(graph)?).map_err(Error::from)?;
            let gens: Vec<String> = v
                .get("graph_generators")
                .or_else(|| v.get("generators"))
                .and_then(|g| serde_json::from_value(g.clone()).ok())
                .ok_or_else(|| Error::Invalid("graph file needs a generator list".into()))?;
            let g = GraphMorphism::from_strings(&x, &y, &gens)?;
            let iso = check_graph_iso(&g, budget)?;
            Ok(Report::decided(json!({
                "verdict": if iso { Verdict::Isomorphic } else { Verdict::NotIsomorphic },
                "hilbert_polynomial": uni(&g.hilbert_polynomial(budget)?),
            })))
        }
        Command::Isop { x, y, poly } => {
            let (x, y) = (scheme(x)?, scheme(y)?);
            let p = UniPoly::parse(poly)?;
            Ok(match iso_p_nonempty(&x, &y, &p, None, budget)? {
                IsoStatus::Nonempty { witness, chart } => Report::decided(json!({
                    "verdict": "NONEMPTY",
                    "graph_generators": witness.generator_strings(),
                    "chart": chart.map(|(k, pt)| json!({ "K": k, "point": pt.iter().map(fmt_rational).collect::<Vec<_>>() })),
                })),
                IsoStatus::Empty { trace } => {
                    Report::decided(json!({ "verdict": "EMPTY", "trace": trace }))
                }
                IsoStatus::Undecided { reason } => {
                    Report::undecided(json!({ "verdict": "UNDECIDED", "budget": reason }))
                }
            })
        }
        Command::Iso1dim { x, y, mode } => {
            let (x, y) = (scheme(x)?, scheme(y)?);
            let mode: Mode = mode.parse()?;
            outcome(&decide_iso_1dim(&x, &y, budget, mode)?, budget)
        }
        Command::Isosearch { x, y } => {
            let (x, y) = (scheme(x)?, scheme(y)?);
            outcome(&iso_search_semidecide(&x, &y, budget), budget)
        }
        Command::Gg { x, module: m } => {
            let (x, l) = (scheme(x)?, module(m)?);
            Ok(Report::decided(
                json!({ "globally_generated": globally_generated(&x, &l, budget)? }),
            ))
        }
        Command::Veryample { x, module: m } => {
            let (x, l) = (scheme(x)?, module(m)?);
            let va = very_ample(&x, &l, budget)?;
            let mut body = json!({ "very_ample": va });
            if globally_generated(&x, &l, budget)? {
                let s = section_morphism(&x, &l, budget)?;
                let names: Vec<String> = (0..s.n).map(|k| format!("y{k}")).collect();
                body["sections"] = json!(s.n);
                body["image"] = json!(strings(s.image.gens(), &names));
            }
            Ok(Report::decided(body))
        }
        Command::Verify { x, y, certificate } => {
            let (x, y) = (scheme(x)?, scheme(y)?);
            let cert: Certificate =
                serde_json::from_str(&read(certificate)?).map_err(Error::from)?;
            let valid = verify_certificate(&cert, &x, &y, budget)?;
            if !valid {
                return Err(Error::Invalid("certificate does not verify".into()));
            }
            Ok(Report::decided(
                json!({ "valid": true, "verdict": cert.verdict, "variables": segre_names(x.ambient_vars(), y.ambient_vars()) }),
            ))
        }
    }
}
