use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::budget::Budget;
use crate::error::Result;
use crate::groebner::{GroebnerBasis, Ideal};
use crate::poly::{monomial_basis, q, Polynomial, UniPoly};
use crate::scheme::ProjectiveScheme;

use super::certify::check_graph_iso;
use super::decide::DecisionOutcome;
use super::locus::graph_polynomial_obstruction;
use super::GraphMorphism;

const BATCH: usize = 32;

#[derive(Clone, Debug)]
struct Form {
    poly: Polynomial,
    degree: u32,
    height: u32,
}

/// Fair stream of generator tuples in the coordinates of an ambient `P^{N-1}`.
///
/// Stage `n` holds the tuples whose maximum degree, length and coefficient height are all
/// at most `n`, with at least one equal to `n`. Inside a stage tuples come by degree,
/// height, length and total number of terms. Forms are taken up to sign and, when a
/// Gröbner basis is given, only in normal form.
pub struct SubschemeEnumerator {
    nvars: usize,
    reducer: Option<Arc<GroebnerBasis>>,
    stage: u32,
    blocks: Vec<(u32, u32, usize)>,
    block: usize,
    terms: usize,
    parts: Vec<Vec<usize>>,
    part: usize,
    lists: Vec<Arc<Vec<Form>>>,
    idx: Vec<usize>,
    fresh: bool,
    cache: HashMap<(u32, u32, usize), Arc<Vec<Form>>>,
}

/// The enumeration of tuples in the coordinates of `ambient`, modulo its ideal, starting
/// at stage `start`.
pub fn enumerate_subschemes(
    ambient: &ProjectiveScheme,
    start: u32,
    budget: &Budget,
) -> Result<SubschemeEnumerator> {
    let gb = ambient.saturated(budget)?.grevlex(budget)?;
    Ok(SubschemeEnumerator::new(
        ambient.ambient_vars(),
        Some(gb),
        start,
    ))
}

impl SubschemeEnumerator {
    pub fn new(nvars: usize, reducer: Option<Arc<GroebnerBasis>>, start: u32) -> Self {
        let mut e = SubschemeEnumerator {
            nvars,
            reducer,
            stage: start.max(1),
            blocks: vec![],
            block: 0,
            terms: 0,
            parts: vec![],
            part: 0,
            lists: vec![],
            idx: vec![],
            fresh: true,
            cache: HashMap::new(),
        };
        e.enter_stage();
        e
    }

    pub fn stage(&self) -> u32 {
        self.stage
    }

    fn enter_stage(&mut self) {
        let n = self.stage;
        self.blocks.clear();
        for d in 1..=n {
            for h in 1..=n {
                for l in 1..=n as usize {
                    if d.max(h).max(l as u32) == n {
                        self.blocks.push((d, h, l));
                    }
                }
            }
        }
        self.block = 0;
        self.enter_block();
    }

    fn max_terms(&self, d: u32) -> usize {
        monomial_basis(self.nvars, d).len()
    }

    fn enter_block(&mut self) {
        let (_, _, l) = self.blocks[self.block];
        self.terms = l;
        self.enter_terms();
    }

    fn enter_terms(&mut self) {
        let (d, _, l) = self.blocks[self.block];
        self.parts = partitions(self.terms, l, self.max_terms(d));
        self.part = 0;
        self.enter_part();
    }

    fn enter_part(&mut self) {
        self.lists.clear();
        self.idx.clear();
        self.fresh = true;
        if self.part >= self.parts.len() {
            return;
        }
        let (d, h, _) = self.blocks[self.block];
        let ks = self.parts[self.part].clone();
        for &k in &ks {
            let list = self.forms(d, h, k);
            self.lists.push(list);
        }
    }

    /// Forms of degree at most `d`, height at most `h` and exactly `k` terms.
    fn forms(&mut self, d: u32, h: u32, k: usize) -> Arc<Vec<Form>> {
        if let Some(l) = self.cache.get(&(d, h, k)) {
            return l.clone();
        }
        let mut out = Vec::new();
        for deg in 1..=d {
            let mons = monomial_basis(self.nvars, deg);
            if k > mons.len() {
                continue;
            }
            let mut choice: Vec<usize> = (0..k).collect();
            loop {
                let mut coeffs = first_coeffs(k, h as i64);
                loop {
                    let poly = Polynomial::from_terms(
                        self.nvars,
                        choice
                            .iter()
                            .zip(&coeffs)
                            .map(|(&c, &v)| (mons[c].clone(), q(v))),
                    );
                    let reduced = match &self.reducer {
                        Some(g) => g.reduce(&poly) == poly,
                        None => true,
                    };
                    if reduced {
                        let height = coeffs
                            .iter()
                            .map(|c| c.unsigned_abs() as u32)
                            .max()
                            .unwrap_or(0);
                        out.push(Form {
                            poly,
                            degree: deg,
                            height,
                        });
                    }
                    if !next_coeffs(&mut coeffs, h as i64) {
                        break;
                    }
                }
                if !next_subset(&mut choice, mons.len()) {
                    break;
                }
            }
        }
        let l = Arc::new(out);
        self.cache.insert((d, h, k), l.clone());
        l
    }

    /// Advances the index odometer; equal term counts use increasing indices.
    fn advance(&mut self) -> bool {
        let ks = &self.parts[self.part];
        let len = ks.len();
        if self.fresh {
            self.fresh = false;
            self.idx = vec![0; len];
            return self.reset_from(0);
        }
        let mut pos = len;
        while pos > 0 {
            pos -= 1;
            self.idx[pos] += 1;
            if self.idx[pos] < self.lists[pos].len() && self.reset_from(pos + 1) {
                return true;
            }
        }
        false
    }

    fn reset_from(&mut self, from: usize) -> bool {
        let ks = &self.parts[self.part];
        for p in from..ks.len() {
            self.idx[p] = if p > 0 && ks[p] == ks[p - 1] {
                self.idx[p - 1] + 1
            } else {
                0
            };
            if self.idx[p] >= self.lists[p].len() {
                return false;
            }
        }
        true
    }
}

impl Iterator for SubschemeEnumerator {
    type Item = (u32, Vec<Polynomial>);

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            if self.part < self.parts.len() {
                if self.advance() {
                    let (d, h, _) = self.blocks[self.block];
                    let forms: Vec<&Form> = self
                        .idx
                        .iter()
                        .zip(&self.lists)
                        .map(|(&i, l)| &l[i])
                        .collect();
                    let md = forms.iter().map(|f| f.degree).max().unwrap_or(0);
                    let mh = forms.iter().map(|f| f.height).max().unwrap_or(0);
                    if md == d && mh == h {
                        return Some((self.stage, forms.iter().map(|f| f.poly.clone()).collect()));
                    }
                    continue;
                }
                self.part += 1;
                self.enter_part();
                continue;
            }
            let (d, _, l) = self.blocks[self.block];
            if self.terms < l * self.max_terms(d) {
                self.terms += 1;
                self.enter_terms();
                continue;
            }
            if self.block + 1 < self.blocks.len() {
                self.block += 1;
                self.enter_block();
                continue;
            }
            self.stage += 1;
            self.enter_stage();
        }
    }
}

/// Non-decreasing sequences of `l` parts in `1..=cap` summing to `t`.
fn partitions(t: usize, l: usize, cap: usize) -> Vec<Vec<usize>> {
    fn go(
        t: usize,
        l: usize,
        min: usize,
        cap: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if l == 0 {
            if t == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for k in min..=cap.min(t) {
            if k * l > t {
                break;
            }
            cur.push(k);
            go(t - k, l - 1, k, cap, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(t, l, 1, cap, &mut Vec::new(), &mut out);
    out
}

fn next_subset(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for pos in (0..k).rev() {
        if c[pos] < n - k + pos {
            c[pos] += 1;
            for t in pos + 1..k {
                c[t] = c[t - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Coefficients in `[-h, h] \ {0}` with the first one positive.
fn next_coeffs(c: &mut [i64], h: i64) -> bool {
    for pos in (0..c.len()).rev() {
        let lo = if pos == 0 { 1 } else { -h };
        let mut v = c[pos] + 1;
        if v == 0 {
            v = 1;
        }
        if v <= h {
            c[pos] = v;
            return true;
        }
        c[pos] = lo;
    }
    false
}

/// First coefficient vector in the order of [`next_coeffs`].
fn first_coeffs(k: usize, h: i64) -> Vec<i64> {
    (0..k).map(|i| if i == 0 { 1 } else { -h }).collect()
}

/// Enumerates subschemes of `X × Y` and returns the first certified isomorphism graph.
/// Never answers NOT_ISOMORPHIC.
pub fn iso_search_semidecide(
    x: &ProjectiveScheme,
    y: &ProjectiveScheme,
    budget: &Budget,
) -> DecisionOutcome {
    search_with_filter(x, y, None, budget)
}

pub(crate) fn search_with_filter(
    x: &ProjectiveScheme,
    y: &ProjectiveScheme,
    filter: Option<&[UniPoly]>,
    budget: &Budget,
) -> DecisionOutcome {
    match search_inner(x, y, filter, budget) {
        Ok(o) => o,
        Err(e) => DecisionOutcome::undecided(vec!["search stopped".into()], e.to_string()),
    }
}

fn search_inner(
    x: &ProjectiveScheme,
    y: &ProjectiveScheme,
    filter: Option<&[UniPoly]>,
    budget: &Budget,
) -> Result<DecisionOutcome> {
    let xy = ProjectiveScheme::segre_product(x, y)?;
    let base: Vec<Polynomial> = xy.saturated(budget)?.gens().to_vec();
    let mut stream = enumerate_subschemes(&xy, 1, budget)?;
    let mut examined: u64 = 0;
    loop {
        budget.check_time()?;
        let mut batch = Vec::with_capacity(BATCH);
        while batch.len() < BATCH && examined + (batch.len() as u64) < budget.candidate_cap {
            match stream.next() {
                Some((stage, forms)) if stage <= budget.enum_stage_cap => batch.push(forms),
                _ => break,
            }
        }
        if batch.is_empty() {
            let reason = if examined >= budget.candidate_cap {
                format!("candidate budget exhausted (cap {})", budget.candidate_cap)
            } else {
                format!("enumeration stage cap {} reached", budget.enum_stage_cap)
            };
            return Ok(DecisionOutcome::undecided(
                vec![format!("{examined} candidates examined")],
                reason,
            ));
        }
        examined += batch.len() as u64;
        let hits: Vec<Option<GraphMorphism>> = batch
            .par_iter()
            .map(|forms| {
                let graph = Ideal::new(
                    xy.ambient_vars(),
                    base.iter().cloned().chain(forms.iter().cloned()).collect(),
                );
                try_candidate(x, y, graph, filter, budget).ok().flatten()
            })
            .collect();
        if let Some(g) = hits.into_iter().flatten().next() {
            let trace = vec![format!(
                "graph found after {examined} candidates at stage {}",
                stream.stage()
            )];
            return Ok(DecisionOutcome::isomorphic(g, trace));
        }
    }
}

/// Filters a candidate by its Hilbert polynomial, then runs the certifier.
pub(crate) fn try_candidate(
    x: &ProjectiveScheme,
    y: &ProjectiveScheme,
    graph: Ideal,
    filter: Option<&[UniPoly]>,
    budget: &Budget,
) -> Result<Option<GraphMorphism>> {
    let hp = graph.hilbert_polynomial(budget)?;
    if let Some(f) = filter {
        if !f.contains(&hp) {
            return Ok(None);
        }
    }
    if graph_polynomial_obstruction(x, y, &hp, budget)?.is_some() {
        return Ok(None);
    }
    let g = GraphMorphism::new(x.clone(), y.clone(), graph)?;
    Ok(check_graph_iso(&g, budget)?.then_some(g))
}
