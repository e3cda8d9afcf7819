//! Global generation and very ampleness of sheaves given by graded modules.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::homiso::{check_graph_iso, source_projection_is_iso, GraphMorphism};
use crate::modules::{global_sections_module, subquotient, Presentation};
use crate::poly::Polynomial;
use crate::scheme::ProjectiveScheme;

/// Largest truncation degree tried while waiting for `L'` to stabilize.
const MAX_TRUNCATION: u32 = 12;

/// The morphism `X -> P^{n-1}` given by the degree-zero sections of a sheaf.
#[derive(Clone, Debug)]
pub struct SectionMorphism {
    pub source: ProjectiveScheme,
    /// Number of sections, so the target is `P^{n-1}`.
    pub n: usize,
    /// Bihomogeneous ideal of the graph in `Q[x_0..x_{m-1}, y_0..y_{n-1}]`.
    pub graph: Ideal,
    /// Ideal of the image in `Q[y_0..y_{n-1}]`.
    pub image: Ideal,
}

impl SectionMorphism {
    pub fn image_scheme(&self) -> Result<ProjectiveScheme> {
        ProjectiveScheme::new(self.image.clone())
    }

    /// The graph in Segre coordinates of `X × Y`, with `Y` the image.
    pub fn graph_morphism(&self, budget: &Budget) -> Result<GraphMorphism> {
        GraphMorphism::from_bihomogeneous(&self.source, &self.image_scheme()?, &self.graph, budget)
    }

    /// Re-checks that the graph projects isomorphically onto `X`.
    pub fn verify(&self, budget: &Budget) -> Result<bool> {
        source_projection_is_iso(&self.graph_morphism(budget)?, budget)
    }
}

/// `L` over the coordinate ring of `X`.
fn over_x(x: &ProjectiveScheme, l: &Presentation, budget: &Budget) -> Result<Presentation> {
    if l.arity != x.ambient_vars() {
        return Err(Error::ArityMismatch {
            expected: x.ambient_vars(),
            found: l.arity,
        });
    }
    if !l.graded {
        return Err(Error::Invalid("the module must be graded".into()));
    }
    let mut out = l.clone();
    let base = Ideal::new(l.arity, l.base.clone());
    for g in x.saturated(budget)?.gens() {
        if !base.contains(g, budget)? {
            out.base.push(g.clone());
        }
    }
    Ok(out)
}

/// Minimal presentation of `L' = ⊕_{v ≥ 0} H⁰(X, L(v))`, with the truncation degree raised
/// until the Hilbert function in degrees 0 and 1 agrees for two consecutive values.
fn sections(l: &Presentation, budget: &Budget) -> Result<Presentation> {
    let start = l
        .target
        .iter()
        .map(|a| (-a).max(0) as u32)
        .max()
        .unwrap_or(0)
        .max(1);
    let mut prev: Option<(Presentation, Vec<_>)> = None;
    for r in start..=MAX_TRUNCATION {
        budget.check_time()?;
        let lp = global_sections_module(l, r, budget)?.minimal_presentation(budget)?;
        let h = lp.hilbert_function(0, 1, budget)?;
        if let Some((p, ph)) = prev {
            if ph == h {
                return Ok(p);
            }
        }
        prev = Some((lp, h));
    }
    Ok(prev.expect("at least one truncation degree").0)
}

fn unit_vector(arity: usize, rank: usize, i: usize) -> Vec<Polynomial> {
    (0..rank)
        .map(|k| {
            if k == i {
                Polynomial::one(arity)
            } else {
                Polynomial::zero(arity)
            }
        })
        .collect()
}

/// Whether the sheaf of `L` on `X` is generated by its global sections.
pub fn globally_generated(x: &ProjectiveScheme, l: &Presentation, budget: &Budget) -> Result<bool> {
    let l = over_x(x, l, budget)?;
    let lp = sections(&l, budget)?;
    let mut coker = lp.clone();
    for (i, _) in lp.target.iter().enumerate().filter(|(_, a)| **a == 0) {
        for (row, v) in coker
            .matrix
            .iter_mut()
            .zip(unit_vector(lp.arity, lp.rows(), i))
        {
            row.push(v);
        }
        coker.source.push(0);
    }
    if coker.rows() == 0 || coker.is_zero(budget)? {
        return Ok(true);
    }
    coker.support_ideal(budget)?.projective_empty(budget)
}

/// The morphism defined by the sections of a globally generated `L`.
pub fn section_morphism(
    x: &ProjectiveScheme,
    l: &Presentation,
    budget: &Budget,
) -> Result<SectionMorphism> {
    if !globally_generated(x, l, budget)? {
        return Err(Error::Invalid("the sheaf is not globally generated".into()));
    }
    let l = over_x(x, l, budget)?;
    let lp = sections(&l, budget)?;
    let m = lp.arity;
    let degree_zero: Vec<usize> = (0..lp.rows()).filter(|&i| lp.target[i] == 0).collect();
    let n = degree_zero.len();
    let gens = degree_zero
        .iter()
        .map(|&i| unit_vector(m, lp.rows(), i))
        .collect();
    // F1' -> F0' -> M, with M the image of the sections.
    let img = subquotient(m, &lp.base, &lp.target, gens, lp.columns(), true, budget)?;
    let total = m + n;
    let mut eqs: Vec<Polynomial> = x
        .saturated(budget)?
        .gens()
        .iter()
        .map(|f| f.embed(total, 0))
        .collect();
    for j in 0..img.cols() {
        let g = (0..n).fold(Polynomial::zero(total), |acc, k| {
            &acc + &(&img.matrix[k][j].embed(total, 0) * &Polynomial::var(total, m + k))
        });
        if !g.is_zero() {
            eqs.push(g);
        }
    }
    let xs = Ideal::new(total, (0..m).map(|i| Polynomial::var(total, i)).collect());
    let ys = Ideal::new(
        total,
        (0..n).map(|k| Polynomial::var(total, m + k)).collect(),
    );
    let graph = Ideal::new(total, eqs)
        .saturate(&xs, budget)?
        .saturate(&ys, budget)?
        .normalized(budget)?;
    let image = projective_image_of(&graph, m, budget)?;
    Ok(SectionMorphism {
        source: x.clone(),
        n,
        graph,
        image,
    })
}

/// `(I : (x)^∞) ∩ Q[y]` for a bihomogeneous `I` whose first `m` variables are `x`.
pub fn projective_image_of(i: &Ideal, m: usize, budget: &Budget) -> Result<Ideal> {
    let xs = Ideal::new(
        i.arity(),
        (0..m).map(|v| Polynomial::var(i.arity(), v)).collect(),
    );
    i.saturate(&xs, budget)?
        .eliminate(m, budget)?
        .normalized(budget)
}

pub fn projective_image(s: &SectionMorphism, budget: &Budget) -> Result<Ideal> {
    projective_image_of(&s.graph, s.source.ambient_vars(), budget)
}

/// Whether `L` is very ample: globally generated with sections embedding `X`.
pub fn very_ample(x: &ProjectiveScheme, l: &Presentation, budget: &Budget) -> Result<bool> {
    if !globally_generated(x, l, budget)? {
        return Ok(false);
    }
    let s = section_morphism(x, l, budget)?;
    let y = s.image_scheme()?;
    if x.hilbert_polynomial(budget)?.degree() != y.hilbert_polynomial(budget)?.degree() {
        return Ok(false);
    }
    check_graph_iso(&s.graph_morphism(budget)?, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, UniPoly};
    use crate::scheme::catalog;

    fn b() -> Budget {
        Budget::default()
    }

    fn twist(m: usize, n: i64) -> Presentation {
        Presentation::free(m, vec![], vec![n])
    }

    #[test]
    fn twists_on_the_line() {
        let p1 = catalog::by_name("p1").unwrap();
        for n in -2..=3 {
            assert_eq!(
                globally_generated(&p1, &twist(2, n), &b()).unwrap(),
                n >= 0,
                "gg {n}"
            );
            assert_eq!(
                very_ample(&p1, &twist(2, n), &b()).unwrap(),
                n >= 1,
                "va {n}"
            );
        }
    }

    #[test]
    fn structure_sheaf_of_double_line() {
        let dl = catalog::by_name("double_line").unwrap();
        assert!(globally_generated(&dl, &twist(3, 0), &b()).unwrap());
    }

    #[test]
    fn rational_normal_curves() {
        let p1 = catalog::by_name("p1").unwrap();
        for e in 1..=3 {
            let s = section_morphism(&p1, &twist(2, e), &b()).unwrap();
            assert_eq!(s.n, e as usize + 1);
            let hp = ProjectiveScheme::new(projective_image(&s, &b()).unwrap())
                .unwrap()
                .hilbert_polynomial(&b())
                .unwrap();
            assert_eq!(hp, UniPoly::parse(&format!("{e}*t + 1")).unwrap());
            assert!(s.verify(&b()).unwrap());
        }
    }

    #[test]
    fn conic_image() {
        let p1 = catalog::by_name("p1").unwrap();
        let s = section_morphism(&p1, &twist(2, 2), &b()).unwrap();
        let names: Vec<String> = (0..3).map(|i| format!("y{i}")).collect();
        let conic = Ideal::new(3, vec![parse_poly("y0*y2 - y1^2", &names).unwrap()]);
        assert!(s.image.equals(&conic, &b()).unwrap());
    }

    #[test]
    fn trivial_sheaf_maps_to_a_point() {
        let p1 = catalog::by_name("p1").unwrap();
        let s = section_morphism(&p1, &twist(2, 0), &b()).unwrap();
        assert_eq!(s.n, 1);
        assert!(s.image.is_zero());
    }

    #[test]
    fn hyperplane_on_the_plane() {
        let p2 = ProjectiveScheme::projective_space(3);
        assert!(very_ample(&p2, &twist(3, 1), &b()).unwrap());
    }
}
