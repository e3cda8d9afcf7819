use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::hilb::{chart_minor_count, degree_part_rows, echelon_point, relative_degree, Chart};
use crate::modules::{finite_pushforward, relative_cotangent};
use crate::poly::{monomial_basis, q, Polynomial, Rational, UniPoly};
use crate::scheme::ProjectiveScheme;

use super::certify::{check_graph_iso, OpenLocus};
use super::{bihomogeneous_ideal, GraphMorphism};

const POINT_VALUES: [i64; 5] = [0, 1, -1, 2, -2];

/// A family of subschemes of `X × Y` over an affine base `V(base) ⊂ A^params`; the ideal
/// lives in the parameters followed by the Segre coordinates.
#[derive(Clone, Debug)]
pub struct GraphFamily {
    pub source: ProjectiveScheme,
    pub target: ProjectiveScheme,
    pub params: usize,
    pub base: Ideal,
    pub ideal: Ideal,
}

impl GraphFamily {
    /// The universal family over a relative chart of `Hilb(X × Y)`.
    pub fn from_chart(chart: &Chart, x: &ProjectiveScheme, y: &ProjectiveScheme) -> Result<Self> {
        let mn = x.ambient_vars() * y.ambient_vars();
        if chart.r != mn {
            return Err(Error::ArityMismatch {
                expected: mn,
                found: chart.r,
            });
        }
        let fam = chart.universal_family();
        let n = fam.chart_vars;
        let xy = ProjectiveScheme::segre_product(x, y)?;
        let mut gens = fam.polys.clone();
        gens.extend(fam.ambient.iter().cloned());
        gens.extend(xy.ideal().gens().iter().map(|g| g.embed(n + mn, n)));
        Ok(GraphFamily {
            source: x.clone(),
            target: y.clone(),
            params: n,
            base: chart.equation_ideal(),
            ideal: Ideal::new(n + mn, gens),
        })
    }

    /// The member over a rational point of the base.
    pub fn specialize(&self, point: &[Rational]) -> Result<GraphMorphism> {
        let n = self.params;
        let mn = self.ideal.arity() - n;
        let values: Vec<Option<Rational>> = point
            .iter()
            .cloned()
            .map(Some)
            .chain(std::iter::repeat_n(None, mn))
            .collect();
        let keep: Vec<usize> = (n..n + mn).collect();
        let gens = self
            .ideal
            .gens()
            .iter()
            .map(|g| g.specialize(&values).restrict(&keep))
            .collect();
        GraphMorphism::new(
            self.source.clone(),
            self.target.clone(),
            Ideal::new(mn, gens),
        )
    }
}

/// Closed loci of the base over which a member fails to be the graph of an isomorphism.
///
/// For each projection and each affine piece `D(x_i y_k)` this removes the image of the
/// support of the relative cotangent sheaf and, where the piece is finite over the base,
/// the image of `V(Fitt_1)` of the pushforward. Every removed point carries a member that
/// is not an isomorphism graph.
pub fn iso_locus_over_base(fam: &GraphFamily, budget: &Budget) -> Result<OpenLocus> {
    let (m, n) = (fam.source.ambient_vars(), fam.target.ambient_vars());
    let p = fam.params;
    let with_base = fam.ideal.sum(&fam.base.embed(fam.ideal.arity(), 0));
    let j = bihomogeneous_ideal(&with_base, &fam.source, &fam.target, m, n, p, budget)?;
    let mut bad = Vec::new();
    // Base block first, fiber block second, inside `[params, x, y]`.
    bad.extend(direction_obstructions(&j, p, (p + m, n), (p, m), budget)?);
    bad.extend(direction_obstructions(&j, p, (p, m), (p + m, n), budget)?);
    Ok(OpenLocus {
        ambient: fam.base.clone(),
        bad,
    })
}

/// Obstructions for the projection onto the base block; blocks are `(offset, size)`.
fn direction_obstructions(
    j: &Ideal,
    p: usize,
    fiber: (usize, usize),
    base: (usize, usize),
    budget: &Budget,
) -> Result<Vec<Ideal>> {
    let (fo, nf) = fiber;
    let (bo, nb) = base;
    let arity = p + nf + nb - 2;
    let mut out = Vec::new();
    for i in 0..nb {
        for k in 0..nf {
            budget.check_time()?;
            // Piece variables: [fiber', params, base'].
            let mut map = vec![0usize; p + nf + nb];
            for v in 0..p {
                map[v] = nf - 1 + v;
            }
            let mut next = 0;
            for t in 0..nf {
                if t == k {
                    continue;
                }
                map[fo + t] = next;
                next += 1;
            }
            let mut next = nf - 1 + p;
            for t in 0..nb {
                if t == i {
                    continue;
                }
                map[bo + t] = next;
                next += 1;
            }
            let (ci, ck) = (bo + i, fo + k);
            let eqs: Vec<Polynomial> = j
                .gens()
                .iter()
                .map(|g| {
                    let set: Vec<Option<Rational>> = (0..p + nf + nb)
                        .map(|v| (v == ci || v == ck).then(|| q(1)))
                        .collect();
                    let keep: Vec<usize> =
                        (0..p + nf + nb).filter(|&v| v != ci && v != ck).collect();
                    let inner: Vec<usize> = keep.iter().map(|&v| map[v]).collect();
                    g.specialize(&set).restrict(&keep).remap(arity, &inner)
                })
                .collect();
            if Ideal::new(arity, eqs.clone()).is_unit(budget)? {
                continue;
            }
            let fiber_vars: Vec<usize> = (0..nf - 1).collect();
            // Projection to the parameters: order [fiber', base', params] and eliminate.
            let to_params = |ideal: &Ideal, has_fiber: bool| -> Result<Ideal> {
                let off = if has_fiber { nf - 1 } else { 0 };
                let a = ideal.arity();
                let perm: Vec<usize> = (0..a)
                    .map(|v| {
                        if v < off {
                            v
                        } else if v < off + p {
                            a - p + (v - off)
                        } else {
                            v - p
                        }
                    })
                    .collect();
                let moved = Ideal::new(a, ideal.gens().iter().map(|g| g.remap(a, &perm)).collect());
                moved.eliminate(a - p, budget)
            };
            let omega = relative_cotangent(arity, &fiber_vars, &eqs, budget)?;
            if !omega.is_zero(budget)? {
                out.push(to_params(&omega.support_ideal(budget)?, true)?);
            }
            match finite_pushforward(arity, nf - 1, &eqs, budget) {
                Ok(mp) if mp.rows() > 0 => {
                    let f1 = mp.fitting_ideal(1, budget)?;
                    if !f1.is_unit(budget)? {
                        out.push(to_params(&f1, false)?);
                    }
                }
                Ok(_) | Err(Error::NotFinite(_)) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(out)
}

/// Emptiness of `Iso_P(X, Y)`.
#[derive(Clone, Debug)]
pub enum IsoStatus {
    /// A certified isomorphism graph with Hilbert polynomial `P`, and its chart and point
    /// when the chart is small enough to write down.
    Nonempty {
        witness: GraphMorphism,
        chart: Option<(Vec<usize>, Vec<Rational>)>,
    },
    Empty {
        trace: Vec<String>,
    },
    Undecided {
        reason: String,
    },
}

/// Decides whether some isomorphism `X -> Y` has a graph with Hilbert polynomial `P`.
///
/// Cheap necessary conditions run first; then every chart of `Hilb_P(X × Y)` is computed.
/// A chart counts as empty when its open iso locus is empty; a nonempty verdict always
/// comes with a certified graph.
pub fn iso_p_nonempty(
    x: &ProjectiveScheme,
    y: &ProjectiveScheme,
    p: &UniPoly,
    hint: Option<&GraphMorphism>,
    budget: &Budget,
) -> Result<IsoStatus> {
    if let Some(reason) = graph_polynomial_obstruction(x, y, p, budget)? {
        return Ok(IsoStatus::Empty {
            trace: vec![reason],
        });
    }
    let xy = ProjectiveScheme::segre_product(x, y)?;
    let d = relative_degree(&xy, p, budget)?;
    let mn = xy.ambient_vars();
    let too_large = chart_minor_count(p, mn, d)? > budget.minor_cap;
    if too_large {
        if let Some(g) = hint {
            if &g.hilbert_polynomial(budget)? == p && check_graph_iso(g, budget)? {
                return Ok(IsoStatus::Nonempty {
                    witness: g.clone(),
                    chart: None,
                });
            }
        }
        return Ok(IsoStatus::Undecided {
            reason: format!("chart minors exceed the minor cap {}", budget.minor_cap),
        });
    }
    let basis = monomial_basis(mn, d);
    if let Some(g) = hint {
        if &g.hilbert_polynomial(budget)? == p && check_graph_iso(g, budget)? {
            let gs = ProjectiveScheme::new(g.graph.clone())?;
            let rows = degree_part_rows(&gs, d, budget)?;
            let (k, point) = echelon_point(&basis, &rows);
            return Ok(IsoStatus::Nonempty {
                witness: g.clone(),
                chart: Some((k, point)),
            });
        }
    }
    let pd = {
        let v = p.eval_int(d as i64);
        if !v.is_integer() || v < q(0) || v > q(basis.len() as i64) {
            return Ok(IsoStatus::Empty {
                trace: vec![format!("P({d}) is out of range")],
            });
        }
        v.to_integer().try_into().unwrap_or(0usize)
    };
    let ambient_rows = degree_part_rows(&xy, d, budget)?;
    let mut trace = Vec::new();
    let mut k: Vec<usize> = (0..pd).collect();
    loop {
        budget.check_time()?;
        let kmons: Vec<_> = k.iter().map(|&i| basis[i].clone()).collect();
        let mut chart = Chart::skeleton(p, mn, &kmons, Some(d))?;
        chart.ambient = ambient_rows.clone();
        match chart.compute_equations(budget) {
            Ok(()) => {}
            Err(e) if e.is_budget() => {
                return Ok(IsoStatus::Undecided {
                    reason: format!("chart {k:?}: {e}"),
                })
            }
            Err(e) => return Err(e),
        }
        let eq = chart.equation_ideal();
        if eq.is_unit(budget)? {
            trace.push(format!("chart {k:?}: equations generate the unit ideal"));
        } else {
            let fam = GraphFamily::from_chart(&chart, x, y)?;
            let locus = iso_locus_over_base(&fam, budget)?;
            if locus.is_empty(budget)? {
                trace.push(format!("chart {k:?}: iso locus is empty"));
            } else {
                match locus_point(&locus, budget)? {
                    Some(pt) => {
                        let g = fam.specialize(&pt)?;
                        if check_graph_iso(&g, budget)? {
                            return Ok(IsoStatus::Nonempty {
                                witness: g,
                                chart: Some((k, pt)),
                            });
                        }
                        return Ok(IsoStatus::Undecided {
                            reason: format!("chart {k:?}: rational point is not certified"),
                        });
                    }
                    None => {
                        return Ok(IsoStatus::Undecided {
                            reason: format!("chart {k:?}: no rational point found"),
                        })
                    }
                }
            }
        }
        if !next_combination(&mut k, basis.len()) {
            break;
        }
    }
    Ok(IsoStatus::Empty { trace })
}

/// Necessary conditions on the Hilbert polynomial of an isomorphism graph.
pub(crate) fn graph_polynomial_obstruction(
    x: &ProjectiveScheme,
    y: &ProjectiveScheme,
    p: &UniPoly,
    budget: &Budget,
) -> Result<Option<String>> {
    let px = x.hilbert_polynomial(budget)?;
    let py = y.hilbert_polynomial(budget)?;
    if px.degree() != py.degree() || p.degree() != px.degree() {
        return Ok(Some("graph dimension differs from the factors".into()));
    }
    if p.eval_int(0) != px.eval_int(0) || p.eval_int(0) != py.eval_int(0) {
        return Ok(Some("P(0) differs from χ(O)".into()));
    }
    if p.degree() == Some(1) {
        let sum = x.degree(budget)? + y.degree(budget)?;
        if p.coeff(1) != Rational::from_integer(sum.clone()) {
            return Ok(Some(format!("graph degree must be deg X + deg Y = {sum}")));
        }
    }
    Ok(None)
}

/// Next `k`-subset of `0..n` in lexicographic order.
fn next_combination(k: &mut [usize], n: usize) -> bool {
    let len = k.len();
    for pos in (0..len).rev() {
        if k[pos] < n - len + pos {
            k[pos] += 1;
            for t in pos + 1..len {
                k[t] = k[t - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// A rational point of an open locus by greedy specialization, if one is found.
pub(crate) fn locus_point(locus: &OpenLocus, budget: &Budget) -> Result<Option<Vec<Rational>>> {
    let n = locus.ambient.arity();
    let amb = &locus.ambient;
    let bad = locus.bad_ideal();
    for g in bad.gens() {
        if amb.radical_contains(g, budget)? {
            continue;
        }
        // Points of V(ambient) with g ≠ 0.
        let t = Polynomial::var(n + 1, n);
        let mut cur = amb
            .embed(n + 1, 0)
            .with([&Polynomial::one(n + 1) - &(&t * &g.embed(n + 1, 0))]);
        let mut values = Vec::with_capacity(n);
        for v in 0..n {
            let mut found = false;
            for c in POINT_VALUES {
                let cand = cur.with([&Polynomial::var(n + 1, v) - &Polynomial::from_int(n + 1, c)]);
                if !cand.is_unit(budget)? {
                    cur = cand;
                    values.push(q(c));
                    found = true;
                    break;
                }
            }
            if !found {
                break;
            }
        }
        if values.len() == n && locus.contains_point(&values) {
            return Ok(Some(values));
        }
    }
    Ok(None)
}
