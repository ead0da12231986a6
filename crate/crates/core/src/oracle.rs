//! Bounded brute-force searches used to cross-check the constructions.
//!
//! Every search walks candidates in a fixed order (coordinates left to right,
//! entries `0, 1, -1, 2, -2, ...`) and counts visited nodes against a budget.

use std::collections::BTreeSet;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::form::{EQForm, FormIso};
use crate::int::{gcd, Int};
use crate::lmonoid::QuasiFormation;
use crate::matrix::IntMatrix;
use crate::stableclass::{e_ab, orbit_representatives, SIReport};
use crate::subgroup::SubgroupRep;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub entry_bound: u64,
    pub max_stab: usize,
    pub node_limit: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { entry_bound: 2, max_stab: 2, node_limit: 2_000_000 }
    }
}

/// Result of a bounded search.
#[derive(Clone, Debug)]
pub enum SearchOutcome<T> {
    Found(T),
    /// Nothing within the bound; says nothing beyond it.
    NoneWithinBound,
    /// Nothing exists at all: the bound provably covers every candidate.
    ExhaustivelyNone,
}

impl<T> SearchOutcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            SearchOutcome::Found(_) => "found",
            SearchOutcome::NoneWithinBound => "none-within-bound",
            SearchOutcome::ExhaustivelyNone => "exhaustively-none",
        }
    }
}

struct Counter {
    nodes: u64,
    limit: u64,
}

impl Counter {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(Error::NodeLimit { nodes: self.limit });
        }
        Ok(())
    }
}

/// Small-integer copy of a free form.
struct Small {
    lambda: Vec<Vec<i128>>,
    mu: Vec<Vec<i128>>,
    n: usize,
}

fn small_matrix(m: &IntMatrix) -> Result<Vec<Vec<i128>>> {
    m.row_vecs()
        .iter()
        .map(|r| r.iter().map(|x| x.to_i128().ok_or_else(|| Error::hyp("entries too large for the search"))).collect())
        .collect()
}

impl Small {
    fn new(form: &EQForm) -> Result<Self> {
        if !form.is_free() || !form.target().is_free() {
            return Err(Error::hyp("search needs free forms over a free target"));
        }
        Ok(Small { lambda: small_matrix(form.lambda())?, mu: small_matrix(form.mu().matrix())?, n: form.dim() })
    }

    fn pair(&self, x: &[i128], y: &[i128]) -> i128 {
        let mut s = 0;
        for (i, xi) in x.iter().enumerate() {
            if *xi != 0 {
                for (j, yj) in y.iter().enumerate() {
                    s += xi * self.lambda[i][j] * yj;
                }
            }
        }
        s
    }

    fn mu_of(&self, x: &[i128]) -> Vec<i128> {
        self.mu.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
    }
}

/// Entries `0, 1, -1, ..., b, -b`.
fn entry_order(b: u64) -> Vec<i128> {
    let mut v = vec![0i128];
    for k in 1..=b as i128 {
        v.push(k);
        v.push(-k);
    }
    v
}

/// All vectors of length `n` with entries in `[-b, b]`, first coordinate most significant.
fn box_vectors(n: usize, b: u64) -> Vec<Vec<i128>> {
    let order = entry_order(b);
    let mut out: Vec<Vec<i128>> = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * order.len());
        for prefix in &out {
            for e in &order {
                let mut p = prefix.clone();
                p.push(*e);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

fn to_ints(v: &[i128]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

/// Free lagrangians whose canonical generators have entries at most `entry_bound`.
pub fn enumerate_lagrangians(form: &EQForm, budget: &SearchBudget) -> Result<Vec<SubgroupRep>> {
    if !form.is_free() || !form.is_nonsingular() {
        return Err(Error::hyp("form must be free and nonsingular"));
    }
    let s = Small::new(form)?;
    let n = s.n;
    if n % 2 == 1 {
        return Ok(Vec::new());
    }
    let k = n / 2;
    let b = budget.entry_bound;
    let mut counter = Counter { nodes: 0, limit: budget.node_limit };
    // Echelon rows by pivot column: zero before the pivot, pivot in 1..=b.
    let mut by_pivot: Vec<Vec<Vec<i128>>> = vec![Vec::new(); n];
    for v in box_vectors(n, b) {
        if let Some(p) = v.iter().position(|x| *x != 0) {
            if v[p] > 0 && s.pair(&v, &v) == 0 && s.mu_of(&v).iter().all(|x| *x == 0) {
                by_pivot[p].push(v);
            }
        }
    }
    let mut found = BTreeSet::new();
    let mut rows: Vec<Vec<i128>> = Vec::new();
    walk_rows(form, &s, &by_pivot, k, 0, &mut rows, &mut counter, &mut found)?;
    found.into_iter().map(|g: Vec<Vec<Int>>| SubgroupRep::new(form.group(), &g)).collect()
}

#[allow(clippy::too_many_arguments)]
fn walk_rows(
    form: &EQForm,
    s: &Small,
    by_pivot: &[Vec<Vec<i128>>],
    k: usize,
    start: usize,
    rows: &mut Vec<Vec<i128>>,
    counter: &mut Counter,
    found: &mut BTreeSet<Vec<Vec<Int>>>,
) -> Result<()> {
    if rows.len() == k {
        let gens: Vec<Vec<Int>> = rows.iter().map(|r| to_ints(r)).collect();
        let sub = SubgroupRep::new(form.group(), &gens)?;
        if sub.generators() == gens.as_slice() && form.is_free_lagrangian(&sub)? {
            found.insert(gens);
        }
        return Ok(());
    }
    let remaining = k - rows.len();
    for p in start..by_pivot.len() {
        if by_pivot.len() - p < remaining {
            break;
        }
        for cand in &by_pivot[p] {
            counter.tick()?;
            let pivot = cand[p];
            if rows.iter().any(|r| r[p] < 0 || r[p] >= pivot) {
                continue;
            }
            if rows.iter().any(|r| s.pair(r, cand) != 0) {
                continue;
            }
            rows.push(cand.clone());
            walk_rows(form, s, by_pivot, k, p + 1, rows, counter, found)?;
            rows.pop();
        }
    }
    Ok(())
}

fn is_standard_plane(form: &EQForm) -> bool {
    form.lambda() == &IntMatrix::from_i64(2, 2, &[0, 1, 1, 0])
}

/// Walks all isometries `source -> target` with entries within the bound; `visit` returns `true` to stop.
fn walk_isometries(
    source: &EQForm,
    target: &EQForm,
    budget: &SearchBudget,
    visit: &mut dyn FnMut(FormIso) -> Result<bool>,
) -> Result<bool> {
    if source.target() != target.target() {
        return Err(Error::InvalidForm("forms take values in different groups".into()));
    }
    let a = Small::new(source)?;
    let t = Small::new(target)?;
    if a.n != t.n {
        return Ok(false);
    }
    let n = a.n;
    let mut counter = Counter { nodes: 0, limit: budget.node_limit };
    let all = box_vectors(n, budget.entry_bound);
    let mut columns: Vec<Vec<Vec<i128>>> = Vec::with_capacity(n);
    for j in 0..n {
        let want_mu: Vec<i128> = a.mu.iter().map(|row| row[j]).collect();
        columns.push(all.iter().filter(|v| t.pair(v, v) == a.lambda[j][j] && t.mu_of(v) == want_mu).cloned().collect());
    }
    let mut chosen: Vec<Vec<i128>> = Vec::with_capacity(n);
    walk_columns(source, target, &a, &t, &columns, &mut chosen, &mut counter, visit)
}

#[allow(clippy::too_many_arguments)]
fn walk_columns(
    source: &EQForm,
    target: &EQForm,
    a: &Small,
    t: &Small,
    columns: &[Vec<Vec<i128>>],
    chosen: &mut Vec<Vec<i128>>,
    counter: &mut Counter,
    visit: &mut dyn FnMut(FormIso) -> Result<bool>,
) -> Result<bool> {
    let j = chosen.len();
    if j == columns.len() {
        let cols: Vec<Vec<Int>> = chosen.iter().map(|c| to_ints(c)).collect();
        let m = IntMatrix::from_cols(&cols, columns.len())?;
        return match FormIso::new(source, target, m) {
            Ok(iso) => visit(iso),
            Err(_) => Ok(false),
        };
    }
    for cand in &columns[j] {
        counter.tick()?;
        if chosen.iter().enumerate().all(|(i, c)| t.pair(c, cand) == a.lambda[i][j]) {
            chosen.push(cand.clone());
            if walk_columns(source, target, a, t, columns, chosen, counter, visit)? {
                return Ok(true);
            }
            chosen.pop();
        }
    }
    Ok(false)
}

/// Every isomorphism within the bound, and whether the bound is known to cover all of them.
pub fn all_isomorphisms(source: &EQForm, target: &EQForm, budget: &SearchBudget) -> Result<(Vec<FormIso>, bool)> {
    let mut out = Vec::new();
    walk_isometries(source, target, budget, &mut |iso| {
        out.push(iso);
        Ok(false)
    })?;
    Ok((out, complete_bound(source, target, budget)))
}

/// Isometries of the standard plane send `±e1, ±e2` to themselves, so entries in `{0, ±1}` suffice.
fn complete_bound(source: &EQForm, target: &EQForm, budget: &SearchBudget) -> bool {
    source.rank() == 0 || (is_standard_plane(source) && is_standard_plane(target) && budget.entry_bound >= 1)
}

pub fn search_isomorphism(source: &EQForm, target: &EQForm, budget: &SearchBudget) -> Result<SearchOutcome<FormIso>> {
    let mut hit = None;
    walk_isometries(source, target, budget, &mut |iso| {
        hit = Some(iso);
        Ok(true)
    })?;
    Ok(match hit {
        Some(iso) => SearchOutcome::Found(iso),
        None if complete_bound(source, target, budget) => SearchOutcome::ExhaustivelyNone,
        None => SearchOutcome::NoneWithinBound,
    })
}

/// `Aut(E)` within the bound.
pub fn automorphisms(form: &EQForm, budget: &SearchBudget) -> Result<(Vec<FormIso>, bool)> {
    all_isomorphisms(form, form, budget)
}

/// `E ⊕ H_{2k} ≅ E' ⊕ H_{2l}`.
#[derive(Clone, Debug)]
pub struct StableWitness {
    pub k: usize,
    pub l: usize,
    pub iso: FormIso,
}

fn stab_pairs(r1: usize, r2: usize, max: usize) -> Vec<(usize, usize)> {
    (0..=max)
        .filter_map(|k| {
            let lhs = r1 + 2 * k;
            (lhs >= r2 && (lhs - r2) % 2 == 0 && (lhs - r2) / 2 <= max).then(|| (k, (lhs - r2) / 2))
        })
        .collect()
}

/// Stable isomorphism of forms, trying stabilizations in increasing order.
pub fn search_stable_form_isomorphism(source: &EQForm, target: &EQForm, budget: &SearchBudget) -> Result<SearchOutcome<StableWitness>> {
    for (k, l) in stab_pairs(source.rank(), target.rank(), budget.max_stab) {
        let a = source.sum(&EQForm::hyperbolic(k, source.target()))?;
        let b = target.sum(&EQForm::hyperbolic(l, target.target()))?;
        if let SearchOutcome::Found(iso) = search_isomorphism(&a, &b, budget)? {
            return Ok(SearchOutcome::Found(StableWitness { k, l, iso }));
        }
    }
    Ok(SearchOutcome::NoneWithinBound)
}

/// `(M; L, V) ⊕ ℋ_{2k} ≅ (M'; L', V') ⊕ ℋ_{2l}` by an isomorphism carrying both subgroups.
pub fn search_stable_isomorphism(q: &QuasiFormation, q2: &QuasiFormation, budget: &SearchBudget) -> Result<SearchOutcome<StableWitness>> {
    if q.form().target() != q2.form().target() {
        return Err(Error::InvalidForm("quasi-formations take values in different groups".into()));
    }
    let t = q.form().target();
    for (k, l) in stab_pairs(q.form().rank(), q2.form().rank(), budget.max_stab) {
        let a = q.direct_sum(&QuasiFormation::standard_hyperbolic(k, t))?;
        let b = q2.direct_sum(&QuasiFormation::standard_hyperbolic(l, t))?;
        let mut hit = None;
        walk_isometries(a.form(), b.form(), budget, &mut |iso| {
            if &iso.apply_subgroup(a.lagrangian())? == b.lagrangian() && &iso.apply_subgroup(a.summand())? == b.summand() {
                hit = Some(iso);
                return Ok(true);
            }
            Ok(false)
        })?;
        if let Some(iso) = hit {
            return Ok(SearchOutcome::Found(StableWitness { k, l, iso }));
        }
    }
    Ok(SearchOutcome::NoneWithinBound)
}

/// `μ(V)` and the gcd of `λ` on `V × V`, both unchanged by the moves of the ℓ-monoid.
pub fn class_invariants(q: &QuasiFormation) -> Result<(SubgroupRep, Int)> {
    let basis = q.summand().basis()?;
    let f = q.form();
    let image: Vec<Vec<Int>> = basis.iter().map(|x| f.mu().apply(x)).collect::<Result<_>>()?;
    let mut g = Int::zero();
    for x in &basis {
        for y in &basis {
            g = gcd(&g, &f.lambda().bilinear(x, y)?);
        }
    }
    Ok((SubgroupRep::new(f.target(), &image)?, g))
}

fn divisors(n: &Int) -> Vec<Int> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = Int::from(1);
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let e = &n / &d;
            if e != d {
                large.push(e);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// `SI(E_{a,b})` by scanning all `(c, d)` with the same gcd and product, modulo `Aut(H_2)`.
pub fn brute_si(a: &Int, b: &Int) -> SIReport {
    let g = gcd(a, b);
    let n = a * b;
    let mut candidates = Vec::new();
    if n.is_zero() {
        for (c, d) in [(Int::zero(), g.clone()), (Int::zero(), -&g), (g.clone(), Int::zero()), (-&g, Int::zero())] {
            candidates.push((c, d));
        }
    } else {
        for c in divisors(&n) {
            for c in [c.clone(), -c] {
                let d = &n / &c;
                if gcd(&c, &d) == g {
                    candidates.push((c, d));
                }
            }
        }
    }
    let mut orbits: BTreeSet<Vec<(Int, Int)>> = BTreeSet::new();
    for (c, d) in &candidates {
        let mut o = vec![(c.clone(), d.clone()), (d.clone(), c.clone()), (-c, -d), (-d, -c)];
        o.sort();
        o.dedup();
        orbits.insert(o);
    }
    let pairs = orbit_representatives(orbits.into_iter().map(|o| o[0].clone()));
    debug_assert!(pairs.len() <= candidates.len());
    let representatives = pairs.iter().map(|(c, d)| e_ab(c, d)).collect();
    SIReport { size: pairs.len(), pairs, representatives, reduction: None }
}
