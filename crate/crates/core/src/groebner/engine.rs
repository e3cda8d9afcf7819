//! Buchberger's algorithm on vectors of polynomials, fraction-free over Z.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::poly::{grevlex, Monomial, MonomialOrder, Polynomial, Rational};

/// Term order on `R^rank`: position-over-term or term-over-position with degree shifts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleTermOrder {
    pub order: MonomialOrder,
    pub pot: bool,
    pub shifts: Vec<i64>,
}

impl ModuleTermOrder {
    pub fn ideal(order: MonomialOrder) -> Self {
        ModuleTermOrder {
            order,
            pot: false,
            shifts: vec![],
        }
    }

    /// Position over term; a smaller component index is larger.
    pub fn pot(order: MonomialOrder) -> Self {
        ModuleTermOrder {
            order,
            pot: true,
            shifts: vec![],
        }
    }

    /// Term over position; component `i` carries weight `shifts[i]`.
    pub fn top(order: MonomialOrder, shifts: Vec<i64>) -> Self {
        ModuleTermOrder {
            order,
            pot: false,
            shifts,
        }
    }

    fn shift(&self, c: usize) -> i64 {
        self.shifts.get(c).copied().unwrap_or(0)
    }

    pub fn cmp(&self, a: (&Monomial, usize), b: (&Monomial, usize)) -> Ordering {
        let comp = || b.1.cmp(&a.1);
        if self.pot {
            return comp().then_with(|| self.order.cmp(a.0, b.0));
        }
        let (sa, sb) = (self.shift(a.1), self.shift(b.1));
        match self.order {
            MonomialOrder::Lex => a.0.exps().cmp(b.0.exps()).then_with(comp),
            MonomialOrder::Grevlex => (a.0.degree() as i64 + sa)
                .cmp(&(b.0.degree() as i64 + sb))
                .then_with(|| grevlex(a.0.exps(), b.0.exps(), 0, 0))
                .then_with(comp),
            MonomialOrder::Elimination(k) => {
                let k = k.min(a.0.arity());
                let (a1, a2) = a.0.exps().split_at(k);
                let (b1, b2) = b.0.exps().split_at(k);
                let da1: u32 = a1.iter().sum();
                let db1: u32 = b1.iter().sum();
                grevlex(a1, b1, da1, db1)
                    .then_with(|| {
                        ((a.0.degree() - da1) as i64 + sa).cmp(&((b.0.degree() - db1) as i64 + sb))
                    })
                    .then_with(|| grevlex(a2, b2, 0, 0))
                    .then_with(comp)
            }
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Term {
    pub m: Monomial,
    pub c: usize,
    pub a: BigInt,
}

/// Integer vector, terms strictly descending.
pub(crate) type IVec = Vec<Term>;

fn content(v: &[Term]) -> BigInt {
    let mut g = BigInt::zero();
    for t in v {
        g = g.gcd(&t.a);
        if g.is_one() {
            break;
        }
    }
    g
}

/// `ca * a - cb * t * b`.
fn sub_mul(
    ord: &ModuleTermOrder,
    a: &[Term],
    ca: &BigInt,
    b: &[Term],
    t: &Monomial,
    cb: &BigInt,
) -> IVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut bj: Option<Monomial> = b.first().map(|x| x.m.mul(t));
    while i < a.len() || j < b.len() {
        let o = match (i < a.len(), &bj) {
            (true, Some(bm)) => ord.cmp((&a[i].m, a[i].c), (bm, b[j].c)),
            (true, None) => Ordering::Greater,
            (false, _) => Ordering::Less,
        };
        match o {
            Ordering::Greater => {
                out.push(Term {
                    m: a[i].m.clone(),
                    c: a[i].c,
                    a: &a[i].a * ca,
                });
                i += 1;
            }
            Ordering::Less => {
                out.push(Term {
                    m: bj.take().unwrap(),
                    c: b[j].c,
                    a: -(&b[j].a * cb),
                });
                j += 1;
                bj = b.get(j).map(|x| x.m.mul(t));
            }
            Ordering::Equal => {
                let v = &a[i].a * ca - &b[j].a * cb;
                if !v.is_zero() {
                    out.push(Term {
                        m: bj.take().unwrap(),
                        c: b[j].c,
                        a: v,
                    });
                }
                i += 1;
                j += 1;
                bj = b.get(j).map(|x| x.m.mul(t));
            }
        }
    }
    out
}

/// Converts a vector of polynomials to a primitive integer vector, returning the scale
/// `s` with `v = s * result`.
pub(crate) fn to_ivec(v: &[Polynomial], ord: &ModuleTermOrder) -> (IVec, Rational) {
    let mut den = BigInt::one();
    for p in v {
        for (_, c) in p.terms() {
            den = den.lcm(c.denom());
        }
    }
    let mut out = Vec::new();
    for (ci, p) in v.iter().enumerate() {
        for (m, c) in p.terms() {
            out.push(Term {
                m: m.clone(),
                c: ci,
                a: c.numer() * (&den / c.denom()),
            });
        }
    }
    out.sort_by(|x, y| ord.cmp((&y.m, y.c), (&x.m, x.c)));
    let g = content(&out);
    if g.is_zero() {
        return (out, Rational::one());
    }
    for t in out.iter_mut() {
        t.a = &t.a / &g;
    }
    (out, Rational::new(g, den))
}

pub(crate) fn from_ivec(
    v: &[Term],
    arity: usize,
    rank: usize,
    scale: &Rational,
) -> Vec<Polynomial> {
    let mut comps: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); rank];
    for t in v {
        comps[t.c].push((t.m.clone(), Rational::from_integer(t.a.clone()) * scale));
    }
    comps
        .into_iter()
        .map(|ts| Polynomial::from_terms(arity, ts))
        .collect()
}

struct Reducer<'a> {
    ord: &'a ModuleTermOrder,
    basis: &'a [IVec],
    active: &'a [usize],
}

impl Reducer<'_> {
    fn find(&self, m: &Monomial, c: usize) -> Option<usize> {
        self.active
            .iter()
            .copied()
            .find(|&i| self.basis[i][0].c == c && self.basis[i][0].m.divides(m))
    }

    /// Full reduction. Returns the reduced vector and the factor `f` with
    /// `result = f * v mod basis` up to content removal, as `(mul, div)` pairs folded into a rational.
    fn reduce(&self, v: IVec, skip_lead: bool) -> (IVec, Rational) {
        let mut done: IVec = Vec::new();
        let mut p = v;
        let mut scale = Rational::one();
        let mut steps = 0usize;
        if skip_lead && !p.is_empty() {
            done.push(p.remove(0));
        }
        let mut start = 0usize;
        while start < p.len() {
            let (m, c) = (&p[start].m, p[start].c);
            match self.find(m, c) {
                None => {
                    start += 1;
                }
                Some(gi) => {
                    let g = &self.basis[gi];
                    let t = g[0].m.quotient_of(m).unwrap();
                    let a = &p[start].a;
                    let gcd = a.gcd(&g[0].a);
                    let mp = &g[0].a / &gcd;
                    let mg = a / &gcd;
                    let mut np = sub_mul(self.ord, &p[start + 1..], &mp, &g[1..], &t, &mg);
                    if !mp.is_one() {
                        for d in done.iter_mut() {
                            d.a *= &mp;
                        }
                        for d in p[..start].iter_mut() {
                            d.a *= &mp;
                        }
                        scale *= Rational::from_integer(mp.clone());
                    }
                    let mut head: IVec = p.drain(..start).collect();
                    head.append(&mut np);
                    p = head;
                    steps += 1;
                    if steps.is_multiple_of(8) {
                        let g = content(&done).gcd(&content(&p));
                        if !g.is_zero() && !g.is_one() {
                            for d in done.iter_mut().chain(p.iter_mut()) {
                                d.a = &d.a / &g;
                            }
                            scale /= Rational::from_integer(g);
                        }
                    }
                }
            }
        }
        done.extend(p);
        let mut g = content(&done);
        if !g.is_zero() {
            if done[0].a.is_negative() {
                g = -g;
            }
            for d in done.iter_mut() {
                d.a = &d.a / &g;
            }
            scale /= Rational::from_integer(g);
        }
        (done, scale)
    }
}

#[derive(Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    comp: usize,
    sugar: i64,
}

struct Builder<'a> {
    ord: &'a ModuleTermOrder,
    rank1: bool,
    basis: Vec<IVec>,
    sugar: Vec<i64>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl Builder<'_> {
    fn lt(&self, i: usize) -> (&Monomial, usize) {
        (&self.basis[i][0].m, self.basis[i][0].c)
    }

    fn add(&mut self, h: IVec, sugar: i64) {
        let hi = self.basis.len();
        self.basis.push(h);
        self.sugar.push(sugar);
        let (hm, hc) = (self.basis[hi][0].m.clone(), self.basis[hi][0].c);
        // Gebauer-Moller update.
        let mut cands: Vec<(usize, Monomial, bool)> = Vec::new();
        for &g in &self.active {
            let (gm, gc) = self.lt(g);
            if gc != hc {
                continue;
            }
            let coprime = self.rank1 && gm.is_coprime(&hm);
            cands.push((g, gm.lcm(&hm), coprime));
        }
        let mut keep: Vec<bool> = vec![true; cands.len()];
        for a in 0..cands.len() {
            if cands[a].2 {
                continue;
            }
            for b in 0..cands.len() {
                if a == b || !keep[b] {
                    continue;
                }
                if cands[b].1.divides(&cands[a].1) && (cands[b].1 != cands[a].1 || b < a) {
                    keep[a] = false;
                    break;
                }
            }
        }
        let old = std::mem::take(&mut self.pairs);
        for p in old {
            let lij = &p.lcm;
            if p.comp == hc && hm.divides(lij) {
                let li = self.lt(p.i).0.lcm(&hm);
                let lj = self.lt(p.j).0.lcm(&hm);
                if &li != lij && &lj != lij {
                    continue;
                }
            }
            self.pairs.push(p);
        }
        for (k, (g, l, coprime)) in cands.into_iter().enumerate() {
            if !keep[k] || coprime {
                continue;
            }
            let s = (self.sugar[g] + (l.degree() - self.basis[g][0].m.degree()) as i64)
                .max(sugar + (l.degree() - hm.degree()) as i64);
            self.pairs.push(Pair {
                i: g,
                j: hi,
                lcm: l,
                comp: hc,
                sugar: s,
            });
        }
        self.active.retain(|&g| {
            let (gm, gc) = (&self.basis[g][0].m, self.basis[g][0].c);
            !(gc == hc && hm.divides(gm))
        });
        self.active.push(hi);
    }

    fn pop_pair(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let ord = self.ord;
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            let o = a
                .sugar
                .cmp(&b.sugar)
                .then_with(|| ord.cmp((&a.lcm, a.comp), (&b.lcm, b.comp)));
            if o == Ordering::Less {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, p: &Pair) -> IVec {
        let (f, g) = (&self.basis[p.i], &self.basis[p.j]);
        let tf = f[0].m.quotient_of(&p.lcm).unwrap();
        let tg = g[0].m.quotient_of(&p.lcm).unwrap();
        let gcd = f[0].a.gcd(&g[0].a);
        let cf = &g[0].a / &gcd;
        let cg = &f[0].a / &gcd;
        let fs: IVec = f[1..]
            .iter()
            .map(|t| Term {
                m: t.m.mul(&tf),
                c: t.c,
                a: t.a.clone(),
            })
            .collect();
        sub_mul(self.ord, &fs, &cf, &g[1..], &tg, &cg)
    }

    fn reducer(&self) -> Reducer<'_> {
        Reducer {
            ord: self.ord,
            basis: &self.basis,
            active: &self.active,
        }
    }
}

fn sugar_of(v: &[Term], ord: &ModuleTermOrder) -> i64 {
    v.iter()
        .map(|t| t.m.degree() as i64 + ord.shift(t.c))
        .max()
        .unwrap_or(0)
}

/// Reduced Gröbner basis of a submodule of `R^rank`.
#[derive(Clone, Debug)]
pub struct ModuleGb {
    ord: ModuleTermOrder,
    arity: usize,
    rank: usize,
    internal: Vec<IVec>,
    elems: Vec<Vec<Polynomial>>,
}

impl ModuleGb {
    pub fn compute(
        gens: &[Vec<Polynomial>],
        arity: usize,
        rank: usize,
        ord: &ModuleTermOrder,
        budget: &Budget,
    ) -> Result<ModuleGb> {
        for g in gens {
            if g.len() != rank {
                return Err(Error::ArityMismatch {
                    expected: rank,
                    found: g.len(),
                });
            }
            for p in g {
                if p.arity() != arity {
                    return Err(Error::ArityMismatch {
                        expected: arity,
                        found: p.arity(),
                    });
                }
            }
        }
        let mut input: Vec<IVec> = gens
            .iter()
            .map(|g| to_ivec(g, ord).0)
            .filter(|v| !v.is_empty())
            .collect();
        input.sort_by(|a, b| {
            sugar_of(a, ord)
                .cmp(&sugar_of(b, ord))
                .then_with(|| ord.cmp((&a[0].m, a[0].c), (&b[0].m, b[0].c)))
        });
        let mut b = Builder {
            ord,
            rank1: rank == 1,
            basis: Vec::new(),
            sugar: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
        };
        for v in input {
            let s = sugar_of(&v, ord);
            let (r, _) = b.reducer().reduce(v, false);
            if !r.is_empty() {
                b.add(r, s);
            }
        }
        let mut used = 0u64;
        while let Some(p) = b.pop_pair() {
            used += 1;
            budget.check_spairs(used)?;
            if used.is_multiple_of(32) {
                budget.check_time()?;
            }
            let s = b.spoly(&p);
            if s.is_empty() {
                continue;
            }
            let (r, _) = b.reducer().reduce(s, false);
            if !r.is_empty() {
                b.add(r, p.sugar);
            }
        }
        // Interreduce the minimal basis.
        let mut act = b.active.clone();
        act.sort_by(|&x, &y| ord.cmp(b.lt(x), b.lt(y)));
        let mut internal = Vec::with_capacity(act.len());
        for &i in &act {
            let others: Vec<usize> = act.iter().copied().filter(|&k| k != i).collect();
            let red = Reducer {
                ord,
                basis: &b.basis,
                active: &others,
            };
            let (r, _) = red.reduce(b.basis[i].clone(), true);
            internal.push(r);
        }
        let elems = internal
            .iter()
            .map(|v| {
                let lc = Rational::from_integer(v[0].a.clone()).recip();
                from_ivec(v, arity, rank, &lc)
            })
            .collect();
        Ok(ModuleGb {
            ord: ord.clone(),
            arity,
            rank,
            internal,
            elems,
        })
    }

    pub fn order(&self) -> &ModuleTermOrder {
        &self.ord
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Elements, monic, ascending by leading term.
    pub fn elements(&self) -> &[Vec<Polynomial>] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Leading monomials with their components.
    pub fn leading_terms(&self) -> Vec<(Monomial, usize)> {
        self.internal
            .iter()
            .map(|v| (v[0].m.clone(), v[0].c))
            .collect()
    }

    /// Normal form of `v` modulo the module.
    pub fn reduce(&self, v: &[Polynomial]) -> Vec<Polynomial> {
        let (iv, s) = to_ivec(v, &self.ord);
        let active: Vec<usize> = (0..self.internal.len()).collect();
        let red = Reducer {
            ord: &self.ord,
            basis: &self.internal,
            active: &active,
        };
        let (r, f) = red.reduce(iv, false);
        from_ivec(&r, self.arity, self.rank, &(s / f))
    }

    pub fn contains(&self, v: &[Polynomial]) -> bool {
        self.reduce(v).iter().all(|p| p.is_zero())
    }

    /// Leading term of a vector under this order.
    pub fn lead_of(&self, v: &[Polynomial]) -> Option<(Monomial, usize)> {
        lead_term(v, &self.ord)
    }
}

pub fn lead_term(v: &[Polynomial], ord: &ModuleTermOrder) -> Option<(Monomial, usize)> {
    let mut best: Option<(Monomial, usize)> = None;
    for (c, p) in v.iter().enumerate() {
        for (m, _) in p.terms() {
            let better = match &best {
                None => true,
                Some((bm, bc)) => ord.cmp((m, c), (bm, *bc)) == Ordering::Greater,
            };
            if better {
                best = Some((m.clone(), c));
            }
        }
    }
    best
}
