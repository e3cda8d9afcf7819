use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::groebner::syzygies;
use crate::poly::{monomial_basis, q, Polynomial};

use super::{base_multiples, vector_degree, Presentation};

/// Generators of `{v : Σ v_j cols[j] ∈ span(rels)}`, with `cols` and `rels` vectors of
/// the same length `rank`.
pub fn kernel(
    arity: usize,
    rank: usize,
    cols: &[Vec<Polynomial>],
    rels: &[Vec<Polynomial>],
    budget: &Budget,
) -> Result<Vec<Vec<Polynomial>>> {
    let n = cols.len();
    if rank == 0 {
        return Ok((0..n)
            .map(|j| {
                (0..n)
                    .map(|k| {
                        if j == k {
                            Polynomial::one(arity)
                        } else {
                            Polynomial::zero(arity)
                        }
                    })
                    .collect()
            })
            .collect());
    }
    let mut all = cols.to_vec();
    all.extend(rels.iter().cloned());
    let syz = syzygies(&all, arity, rank, budget)?;
    Ok(syz
        .into_iter()
        .map(|v| v[..n].to_vec())
        .filter(|v| v.iter().any(|p| !p.is_zero()))
        .collect())
}

/// Presentation of the submodule generated by `gens` in `E/rels`, where
/// `E = ⊕ R(twists_i)` over `R = Q[x]/base`.
pub fn subquotient(
    arity: usize,
    base: &[Polynomial],
    twists: &[i64],
    gens: Vec<Vec<Polynomial>>,
    rels: Vec<Vec<Polynomial>>,
    graded: bool,
    budget: &Budget,
) -> Result<Presentation> {
    let rank = twists.len();
    let gens: Vec<Vec<Polynomial>> = gens
        .into_iter()
        .filter(|v| v.iter().any(|p| !p.is_zero()))
        .collect();
    let mut all_rels = rels;
    all_rels.extend(base_multiples(base, rank, arity));
    let gen_deg: Vec<i64> = if graded {
        gens.iter()
            .map(|v| {
                vector_degree(v, twists).ok_or_else(|| Error::Invalid("zero generator".into()))
            })
            .collect::<Result<_>>()?
    } else {
        vec![0; gens.len()]
    };
    let target: Vec<i64> = gen_deg.iter().map(|d| -d).collect();
    let ker = kernel(arity, rank, &gens, &all_rels, budget)?;
    let source: Vec<i64> = if graded {
        ker.iter()
            .map(|v| -vector_degree(v, &target).unwrap())
            .collect()
    } else {
        vec![0; ker.len()]
    };
    let matrix = (0..gens.len())
        .map(|i| ker.iter().map(|v| v[i].clone()).collect())
        .collect();
    Ok(Presentation {
        arity,
        base: base.to_vec(),
        target,
        source,
        matrix,
        graded,
    })
}

fn block_vector(
    arity: usize,
    blocks: usize,
    width: usize,
    block: usize,
    v: &[Polynomial],
) -> Vec<Polynomial> {
    let mut out = vec![Polynomial::zero(arity); blocks * width];
    for (k, p) in v.iter().enumerate() {
        out[block * width + k] = p.clone();
    }
    out
}

/// Relations of `N^blocks` as vectors in `G0^blocks`.
fn block_relations(n: &Presentation, blocks: usize) -> Vec<Vec<Polynomial>> {
    let mut out = Vec::new();
    for b in 0..blocks {
        for c in n.columns() {
            out.push(block_vector(n.arity, blocks, n.rows(), b, &c));
        }
    }
    out
}

fn check_same_ring(m: &Presentation, n: &Presentation) -> Result<()> {
    if m.arity != n.arity {
        return Err(Error::ArityMismatch {
            expected: m.arity,
            found: n.arity,
        });
    }
    Ok(())
}

/// Graded `Hom_R(M, N)`; the base ring is taken from `N`.
pub fn hom_module(m: &Presentation, n: &Presentation, budget: &Budget) -> Result<Presentation> {
    check_same_ring(m, n)?;
    let arity = n.arity;
    let (r, s, w) = (m.rows(), m.cols(), n.rows());
    let graded = m.graded && n.graded;
    // Hom(F0, N) = ⊕_i N(-a_i) inside G0^r; component (i, k) has twist c_k - a_i.
    let twists: Vec<i64> = (0..r)
        .flat_map(|i| n.target.iter().map(move |c| c - m.target[i]))
        .collect();
    let mut images = Vec::new();
    for i in 0..r {
        for k in 0..w {
            let mut v = vec![Polynomial::zero(arity); s * w];
            for j in 0..s {
                v[j * w + k] = m.matrix[i][j].clone();
            }
            images.push(v);
        }
    }
    let mut target_rels = block_relations(n, s);
    target_rels.extend(base_multiples(&n.base, s * w, arity));
    let ker = if s == 0 {
        (0..r * w)
            .map(|j| {
                (0..r * w)
                    .map(|k| {
                        if j == k {
                            Polynomial::one(arity)
                        } else {
                            Polynomial::zero(arity)
                        }
                    })
                    .collect()
            })
            .collect()
    } else {
        kernel(arity, s * w, &images, &target_rels, budget)?
    };
    subquotient(
        arity,
        &n.base,
        &twists,
        ker,
        block_relations(n, r),
        graded,
        budget,
    )
}

/// `Tor_1^R(M, N)`; the base ring is taken from `N` and must contain that of `M`.
pub fn tor1(m: &Presentation, n: &Presentation, budget: &Budget) -> Result<Presentation> {
    check_same_ring(m, n)?;
    let arity = n.arity;
    let (r, s, w) = (m.rows(), m.cols(), n.rows());
    let graded = m.graded && n.graded;
    // Second syzygies of M over R: kernel of A modulo base.
    let base_rels = base_multiples(&n.base, r, arity);
    let syz2 = if s == 0 {
        vec![]
    } else {
        kernel(arity, r, &m.columns(), &base_rels, budget)?
    };
    // F1 ⊗ N = ⊕_j N(b_j) in G0^s.
    let twists: Vec<i64> = (0..s)
        .flat_map(|j| n.target.iter().map(move |c| c + m.source[j]))
        .collect();
    let mut images = Vec::new();
    for j in 0..s {
        for k in 0..w {
            let mut v = vec![Polynomial::zero(arity); r * w];
            for i in 0..r {
                v[i * w + k] = m.matrix[i][j].clone();
            }
            images.push(v);
        }
    }
    if s == 0 || w == 0 {
        return Ok(Presentation {
            arity,
            base: n.base.clone(),
            target: vec![],
            source: vec![],
            matrix: vec![],
            graded,
        });
    }
    let mut f0_rels = block_relations(n, r);
    f0_rels.extend(base_multiples(&n.base, r * w, arity));
    let ker = kernel(arity, r * w, &images, &f0_rels, budget)?;
    let mut rels = block_relations(n, s);
    for z in &syz2 {
        for k in 0..w {
            let mut v = vec![Polynomial::zero(arity); s * w];
            for j in 0..s {
                v[j * w + k] = z[j].clone();
            }
            rels.push(v);
        }
    }
    subquotient(arity, &n.base, &twists, ker, rels, graded, budget)
}

/// `L' = Hom_R(R_{≥r}, L)_{≥0}`.
pub fn global_sections_module(l: &Presentation, r: u32, budget: &Budget) -> Result<Presentation> {
    let arity = l.arity;
    let mons = monomial_basis(arity, r);
    let row: Vec<Polynomial> = mons
        .iter()
        .map(|m| Polynomial::monomial(m.clone(), q(1)))
        .collect();
    // Presentation of the ideal R_{≥r} = m^r over R: generators in degree r.
    let gens: Vec<Vec<Polynomial>> = row.iter().map(|p| vec![p.clone()]).collect();
    let mr = subquotient(arity, &l.base, &[0], gens, vec![], true, budget)?;
    let h = hom_module(&mr, l, budget)?;
    h.truncate(0, budget)
}

/// Graded cotangent module of `R/(f)`: homology of `⊕R(-deg f_i) -> R(-1)^n -> R`.
pub fn cotangent_module(arity: usize, eqs: &[Polynomial], budget: &Budget) -> Result<Presentation> {
    let twists = vec![-1; arity];
    let euler: Vec<Vec<Polynomial>> = (0..arity)
        .map(|j| vec![Polynomial::var(arity, j)])
        .collect();
    let base_rels = base_multiples(eqs, 1, arity);
    let ker = kernel(arity, 1, &euler, &base_rels, budget)?;
    let jac: Vec<Vec<Polynomial>> = eqs
        .iter()
        .map(|f| (0..arity).map(|j| f.derivative(j)).collect())
        .collect();
    subquotient(arity, eqs, &twists, ker, jac, true, budget)
}

/// `Ω_{S/B}` for `S = B[y]/(eqs)` with the fiber variables `y` given by index.
pub fn relative_cotangent(
    arity: usize,
    fiber: &[usize],
    eqs: &[Polynomial],
    budget: &Budget,
) -> Result<Presentation> {
    let matrix: Vec<Vec<Polynomial>> = fiber
        .iter()
        .map(|&v| eqs.iter().map(|f| f.derivative(v)).collect())
        .collect();
    Presentation::affine(arity, eqs.to_vec(), fiber.len(), matrix, budget)
}
