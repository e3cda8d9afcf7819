use std::collections::BTreeSet;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::hilb::{projective_equivalence, Equivalence};
use crate::poly::{fmt_rational, parse_rational, q, Rational, UniPoly};
use crate::scheme::{ComponentData, ProjectiveScheme};

use super::certify::check_graph_iso;
use super::locus::{iso_p_nonempty, IsoStatus};
use super::search::search_with_filter;
use super::GraphMorphism;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Isomorphic,
    NotIsomorphic,
    Undecided,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Isomorphic => "ISOMORPHIC",
            Verdict::NotIsomorphic => "NOT_ISOMORPHIC",
            Verdict::Undecided => "UNDECIDED",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Charts of the Hilbert scheme of `X × Y` only.
    Exact,
    /// Enumeration of subschemes with the certifier.
    Search,
    Hybrid,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Mode::Exact),
            "search" => Ok(Mode::Search),
            "hybrid" => Ok(Mode::Hybrid),
            _ => Err(Error::Invalid(format!("unknown mode {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct DecisionOutcome {
    pub verdict: Verdict,
    /// Graph of an isomorphism for positive verdicts.
    pub certificate: Option<GraphMorphism>,
    pub trace: Vec<String>,
    /// Which budget stopped the computation, for undecided verdicts.
    pub budget_report: Option<String>,
}

impl DecisionOutcome {
    pub(crate) fn isomorphic(g: GraphMorphism, trace: Vec<String>) -> Self {
        DecisionOutcome {
            verdict: Verdict::Isomorphic,
            certificate: Some(g),
            trace,
            budget_report: None,
        }
    }

    pub(crate) fn not_isomorphic(trace: Vec<String>) -> Self {
        DecisionOutcome {
            verdict: Verdict::NotIsomorphic,
            certificate: None,
            trace,
            budget_report: None,
        }
    }

    pub(crate) fn undecided(trace: Vec<String>, report: String) -> Self {
        DecisionOutcome {
            verdict: Verdict::Undecided,
            certificate: None,
            trace,
            budget_report: Some(report),
        }
    }

    /// The same outcome for the swapped pair.
    pub fn transpose(self) -> Self {
        DecisionOutcome {
            certificate: self.certificate.map(|g| g.transpose()),
            ..self
        }
    }

    pub fn to_certificate(&self, budget: &Budget) -> Result<Certificate> {
        let (gens, hp) = match &self.certificate {
            Some(g) => (
                g.generator_strings(),
                g.hilbert_polynomial(budget)?
                    .coeffs()
                    .iter()
                    .map(fmt_rational)
                    .collect(),
            ),
            None => (vec![], vec![]),
        };
        let mut trace = self.trace.clone();
        if let Some(r) = &self.budget_report {
            trace.push(format!("budget: {r}"));
        }
        Ok(Certificate {
            verdict: self.verdict,
            graph_generators: gens,
            hilbert_polynomial: hp,
            trace,
        })
    }
}

/// Serialized decision; `hilbert_polynomial` lists coefficients from the constant term up
/// and graph generators use the variables `w{i}_{k}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Certificate {
    pub verdict: Verdict,
    pub graph_generators: Vec<String>,
    pub hilbert_polynomial: Vec<String>,
    pub trace: Vec<String>,
}

/// Re-checks a certificate against the pair it was issued for.
pub fn verify_certificate(
    cert: &Certificate,
    x: &ProjectiveScheme,
    y: &ProjectiveScheme,
    budget: &Budget,
) -> Result<bool> {
    match cert.verdict {
        Verdict::Isomorphic => {
            let g = GraphMorphism::from_strings(x, y, &cert.graph_generators)?;
            let hp = UniPoly::new(
                cert.hilbert_polynomial
                    .iter()
                    .map(|c| parse_rational(c))
                    .collect::<Result<_>>()?,
            );
            if g.hilbert_polynomial(budget)? != hp || !g.is_subscheme(budget)? {
                return Ok(false);
            }
            check_graph_iso(&g, budget)
        }
        Verdict::NotIsomorphic => {
            Ok(decide_iso_1dim(x, y, budget, Mode::Exact)?.verdict == Verdict::NotIsomorphic)
        }
        Verdict::Undecided => Ok(false),
    }
}

/// Hilbert polynomials `(e_λ − χ) t + χ` of candidate graphs, one per composition `λ` of
/// `d = Σ deg Y_j` into as many parts as `X` has one-dimensional components.
pub fn candidate_polys_1dim(
    x: &ProjectiveScheme,
    y: &ProjectiveScheme,
    budget: &Budget,
) -> Result<Vec<UniPoly>> {
    for s in [x, y] {
        if s.dimension(budget)? != Some(1) {
            return Err(Error::Invalid(
                "both schemes must be one-dimensional".into(),
            ));
        }
    }
    let cx = x.one_dim_components(budget)?;
    let cy = y.one_dim_components(budget)?;
    Ok(candidates_from(&cx, &cy, &x.chi(budget)?))
}

fn candidates_from(cx: &[ComponentData], cy: &[ComponentData], chi: &BigInt) -> Vec<UniPoly> {
    let d: u64 = cy.iter().map(|c| c.degree).sum();
    let chi_q = Rational::from_integer(chi.clone());
    let mut out = BTreeSet::new();
    for parts in compositions(d, cx.len()) {
        let extra: u64 = cx
            .iter()
            .zip(&parts)
            .map(|(c, di)| c.length * (c.degree + di))
            .sum();
        out.insert((chi.clone(), extra));
    }
    out.into_iter()
        .map(|(_, extra)| UniPoly::new(vec![chi_q.clone(), q(extra as i64)]))
        .collect()
}

fn compositions(d: u64, l: usize) -> Vec<Vec<u64>> {
    if l == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 1..=d {
        for mut rest in compositions(d - first, l - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Decides `X ≅ Y` for schemes of dimension at most one.
///
/// The outcome does not depend on the order of the pair: the pair is oriented by ambient
/// dimension and the certificate transposed back when needed.
pub fn decide_iso_1dim(
    x: &ProjectiveScheme,
    y: &ProjectiveScheme,
    budget: &Budget,
    mode: Mode,
) -> Result<DecisionOutcome> {
    for s in [x, y] {
        if s.dimension(budget)?.unwrap_or(0) > 1 {
            return Err(Error::Invalid("schemes of dimension above one".into()));
        }
    }
    let key = |s: &ProjectiveScheme| (s.ambient_vars(), s.to_json());
    if key(y) < key(x) {
        return Ok(decide_oriented(y, x, budget, mode)?.transpose());
    }
    decide_oriented(x, y, budget, mode)
}

fn decide_oriented(
    x: &ProjectiveScheme,
    y: &ProjectiveScheme,
    budget: &Budget,
    mode: Mode,
) -> Result<DecisionOutcome> {
    let mut trace = Vec::new();
    let (px, py) = (x.hilbert_polynomial(budget)?, y.hilbert_polynomial(budget)?);
    if px.degree() != py.degree() {
        trace.push("dimensions differ".into());
        return Ok(DecisionOutcome::not_isomorphic(trace));
    }
    let (chi_x, chi_y) = (x.chi(budget)?, y.chi(budget)?);
    if chi_x != chi_y {
        trace.push(format!("χ(O_X) = {chi_x} but χ(O_Y) = {chi_y}"));
        return Ok(DecisionOutcome::not_isomorphic(trace));
    }
    trace.push(format!("χ(O) = {chi_x} on both sides"));
    let candidates: Option<Vec<UniPoly>> = match px.degree() {
        None | Some(0) => Some(vec![UniPoly::constant(Rational::from_integer(
            chi_x.clone(),
        ))]),
        _ => match (x.one_dim_components(budget), y.one_dim_components(budget)) {
            (Ok(cx), Ok(cy)) => {
                if cx.len() != cy.len() {
                    trace.push(format!(
                        "{} vs {} one-dimensional components",
                        cx.len(),
                        cy.len()
                    ));
                    return Ok(DecisionOutcome::not_isomorphic(trace));
                }
                let mut lx: Vec<u64> = cx.iter().map(|c| c.length).collect();
                let mut ly: Vec<u64> = cy.iter().map(|c| c.length).collect();
                lx.sort_unstable();
                ly.sort_unstable();
                if lx != ly {
                    trace.push(format!("generic lengths {lx:?} vs {ly:?}"));
                    return Ok(DecisionOutcome::not_isomorphic(trace));
                }
                Some(candidates_from(&cx, &cy, &chi_x))
            }
            (Err(e), _) | (_, Err(e)) => {
                trace.push(format!("components unavailable: {e}"));
                None
            }
        },
    };
    if let Some(c) = &candidates {
        trace.push(format!(
            "candidates: {}",
            c.iter()
                .map(|p| p.fmt_var("t"))
                .collect::<Vec<_>>()
                .join(", ")
        ));
    }
    let seed = if mode == Mode::Exact {
        None
    } else {
        linear_seed(x, y, budget)
    };
    if let Some(g) = seed.clone() {
        trace.push("graph of a linear equivalence".into());
        return Ok(DecisionOutcome::isomorphic(g, trace));
    }
    let mut report = None;
    if mode != Mode::Search {
        match &candidates {
            Some(c) => {
                let hint = if mode == Mode::Exact {
                    linear_seed(x, y, budget)
                } else {
                    None
                };
                let (out, reason) = exact(x, y, c, hint.as_ref(), budget, &mut trace);
                match out {
                    Some(o) => return Ok(o.with_trace(trace)),
                    None => report = reason,
                }
            }
            None => report = Some("chart route needs the component data".into()),
        }
    }
    if mode != Mode::Exact {
        let mut found = search_with_filter(x, y, candidates.as_deref(), budget);
        trace.append(&mut found.trace);
        if found.verdict == Verdict::Isomorphic {
            return Ok(DecisionOutcome { trace, ..found });
        }
        report = found.budget_report.or(report);
    }
    Ok(DecisionOutcome::undecided(
        trace,
        report.unwrap_or_else(|| "no verdict".into()),
    ))
}

impl DecisionOutcome {
    fn with_trace(mut self, mut trace: Vec<String>) -> Self {
        trace.append(&mut self.trace);
        self.trace = trace;
        self
    }
}

/// Graph of a rational projective equivalence, when the ambient spaces agree.
fn linear_seed(
    x: &ProjectiveScheme,
    y: &ProjectiveScheme,
    budget: &Budget,
) -> Option<GraphMorphism> {
    if x.ambient_vars() != y.ambient_vars() {
        return None;
    }
    match projective_equivalence(x, y, budget).ok()? {
        Equivalence::Equivalent {
            witness: Some(g), ..
        } => {
            let graph = GraphMorphism::linear(x, y, &g, budget).ok()?;
            check_graph_iso(&graph, budget).ok()?.then_some(graph)
        }
        _ => None,
    }
}

/// Chart route over every candidate polynomial, run concurrently.
fn exact(
    x: &ProjectiveScheme,
    y: &ProjectiveScheme,
    candidates: &[UniPoly],
    hint: Option<&GraphMorphism>,
    budget: &Budget,
    trace: &mut Vec<String>,
) -> (Option<DecisionOutcome>, Option<String>) {
    let results: Vec<(UniPoly, Result<IsoStatus>)> = candidates
        .par_iter()
        .map(|p| (p.clone(), iso_p_nonempty(x, y, p, hint, budget)))
        .collect();
    let mut undecided = None;
    for (p, r) in results {
        let name = p.fmt_var("t");
        match r {
            Ok(IsoStatus::Nonempty { witness, .. }) => {
                trace.push(format!("Iso_{name} is nonempty"));
                return (Some(DecisionOutcome::isomorphic(witness, vec![])), None);
            }
            Ok(IsoStatus::Empty { trace: t }) => {
                trace.push(format!("Iso_{name} is empty: {}", t.join("; ")));
            }
            Ok(IsoStatus::Undecided { reason }) => {
                trace.push(format!("Iso_{name} undecided"));
                undecided.get_or_insert(reason);
            }
            Err(e) => {
                trace.push(format!("Iso_{name} undecided"));
                undecided.get_or_insert(e.to_string());
            }
        }
    }
    match undecided {
        None => {
            trace.push("every candidate iso scheme is empty".into());
            (Some(DecisionOutcome::not_isomorphic(vec![])), None)
        }
        Some(r) => (None, Some(r)),
    }
}
