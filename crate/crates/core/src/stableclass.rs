//! Rank-two hyperbolic forms over the integers: the κ invariant, `E_{a,b}`,
//! stable isomorphism and the count of stable classes.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::form::{EQForm, FormIso};
use crate::group::{AbGroup, GroupHom};
use crate::int::{ext_gcd, factorize, gcd, int, modulo, signed_lcm, Int};
use crate::matrix::IntMatrix;
use crate::subgroup::SubgroupRep;

/// `a = ā g`, `b = b̄ g`, `a b̄ = ā b = lcm`, with `ā = b̄ = 1` when `a = b = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GcdProfile {
    pub a: Int,
    pub b: Int,
    pub gcd: Int,
    pub a_bar: Int,
    pub b_bar: Int,
    pub lcm: Int,
}

pub fn gcd_profile(a: &Int, b: &Int) -> GcdProfile {
    let g = gcd(a, b);
    let (a_bar, b_bar) = if g.is_zero() { (Int::one(), Int::one()) } else { (a / &g, b / &g) };
    GcdProfile { a: a.clone(), b: b.clone(), lcm: signed_lcm(a, b), gcd: g, a_bar, b_bar }
}

impl GcdProfile {
    /// Bezout pair `α ā + β b̄ = 1` with the least non-negative `α` modulo `b̄`.
    pub fn bezout(&self) -> (Int, Int) {
        if self.b_bar.is_zero() {
            return (self.a_bar.clone(), Int::zero());
        }
        let m = self.b_bar.abs();
        let (_, x, _) = ext_gcd(&self.a_bar, &m);
        let alpha = modulo(&x, &m);
        let beta = (Int::one() - &alpha * &self.a_bar) / &self.b_bar;
        (alpha, beta)
    }

    /// Number of primes dividing `a b / gcd²`.
    pub fn prime_count(&self) -> usize {
        factorize(&(&self.a_bar * &self.b_bar)).len()
    }
}

/// `(Z², [[0,1],[1,0]], [a, b])` over `Z` with `v = 0`.
pub fn e_ab(a: &Int, b: &Int) -> EQForm {
    EQForm::from_parts(
        AbGroup::free(2),
        IntMatrix::from_i64(2, 2, &[0, 1, 1, 0]),
        AbGroup::free(1),
        IntMatrix::from_rows(&[vec![a.clone(), b.clone()]], 2).expect("1x2"),
        Some(vec![0]),
    )
    .expect("E_ab is a valid form")
}

/// `κ(M)`: the form restricted to `(Ker μ)^⊥`, with the inclusion.
pub fn kappa(form: &EQForm) -> Result<(EQForm, GroupHom)> {
    if !form.is_nonsingular() {
        return Err(Error::hyp("form must be nonsingular"));
    }
    let n = form.perp(&form.mu().kernel()?)?;
    form.restrict(&n)
}

/// `(Z, 2āb̄, 2 lcm(a,b))`, or the zero form when `a = b = 0`.
pub fn kappa_ab(a: &Int, b: &Int) -> EQForm {
    let p = gcd_profile(a, b);
    if p.gcd.is_zero() {
        return EQForm::from_parts(AbGroup::trivial(), IntMatrix::zeros(0, 0), AbGroup::free(1), IntMatrix::zeros(1, 0), Some(vec![0]))
            .expect("zero form");
    }
    let two = int(2);
    EQForm::from_parts(
        AbGroup::free(1),
        IntMatrix::from_rows(&[vec![&two * &p.a_bar * &p.b_bar]], 1).expect("1x1"),
        AbGroup::free(1),
        IntMatrix::from_rows(&[vec![&two * &p.lcm]], 1).expect("1x1"),
        Some(vec![0]),
    )
    .expect("rank one form")
}

/// Isomorphism between free forms of rank at most one, if any.
pub fn rank_one_iso(source: &EQForm, target: &EQForm) -> Option<FormIso> {
    if !source.is_free() || !target.is_free() || source.rank() != target.rank() || source.rank() > 1 {
        return None;
    }
    if source.rank() == 0 {
        return FormIso::new(source, target, IntMatrix::zeros(0, 0)).ok();
    }
    [1, -1].iter().find_map(|&s| FormIso::new(source, target, IntMatrix::from_i64(1, 1, &[s])).ok())
}

/// Whether `κ(E_{a,b})` computed directly is isomorphic to the closed formula.
pub fn kappa_ab_agrees(a: &Int, b: &Int) -> Result<bool> {
    let (direct, _) = kappa(&e_ab(a, b))?;
    Ok(rank_one_iso(&direct, &kappa_ab(a, b)).is_some())
}

/// `gcd(a,b) = gcd(c,d)` and `ab = cd`.
pub fn si1_decide(a: &Int, b: &Int, c: &Int, d: &Int) -> bool {
    gcd(a, b) == gcd(c, d) && a * b == c * d
}

/// The 4×4 matrix sending `E_{lcm,gcd} ⊕ H_2` onto `E_{a,b} ⊕ H_2` for a Bezout pair of `ā, b̄`.
pub fn si1_matrix(p: &GcdProfile, alpha: &Int, beta: &Int) -> IntMatrix {
    let (x, y) = (&p.a_bar, &p.b_bar);
    let rows = vec![
        vec![beta * y * y, alpha.clone(), beta * y, -(alpha * y)],
        vec![alpha * x * x, beta.clone(), -(beta * x), alpha * x],
        vec![-(alpha * beta * x * y), alpha * beta, beta * beta * y, alpha * alpha * x],
        vec![x * y, -Int::one(), x.clone(), y.clone()],
    ];
    IntMatrix::from_rows(&rows, 4).expect("4x4")
}

fn with_plane(form: &EQForm) -> EQForm {
    form.sum(&EQForm::hyperbolic(1, form.target())).expect("same target")
}

/// `E_{lcm,gcd} ⊕ H_2 -> E_{a,b} ⊕ H_2` using a given Bezout pair.
pub fn si1_witness_with(a: &Int, b: &Int, alpha: &Int, beta: &Int) -> Result<FormIso> {
    let p = gcd_profile(a, b);
    if alpha * &p.a_bar + beta * &p.b_bar != Int::one() {
        return Err(Error::InvalidWitness("not a Bezout pair".into()));
    }
    let source = with_plane(&e_ab(&p.lcm, &p.gcd));
    let target = with_plane(&e_ab(a, b));
    FormIso::new(&source, &target, si1_matrix(&p, alpha, beta))
}

/// `E_{lcm,gcd} ⊕ H_2 -> E_{a,b} ⊕ H_2` with the canonical Bezout pair.
pub fn si1_witness(a: &Int, b: &Int) -> Result<FormIso> {
    let (alpha, beta) = gcd_profile(a, b).bezout();
    si1_witness_with(a, b, &alpha, &beta)
}

/// `E_{c,d} ⊕ H_2 -> E_{a,b} ⊕ H_2` through the common `E_{lcm,gcd} ⊕ H_2`.
pub fn si1_stable_iso(a: &Int, b: &Int, c: &Int, d: &Int) -> Result<FormIso> {
    if !si1_decide(a, b, c, d) {
        return Err(Error::hyp("pairs differ in gcd or product"));
    }
    let to_ab = si1_witness(a, b)?;
    let to_cd = si1_witness(c, d)?;
    to_ab.compose(&to_cd.inverse()?)
}

/// `Aut(H_2)`: identity, flip, minus identity, minus flip.
pub fn h2_automorphisms() -> [IntMatrix; 4] {
    [
        IntMatrix::from_i64(2, 2, &[1, 0, 0, 1]),
        IntMatrix::from_i64(2, 2, &[0, 1, 1, 0]),
        IntMatrix::from_i64(2, 2, &[-1, 0, 0, -1]),
        IntMatrix::from_i64(2, 2, &[0, -1, -1, 0]),
    ]
}

/// The orbit of `(a, b)`, in the order of [`h2_automorphisms`].
pub fn orbit(a: &Int, b: &Int) -> [(Int, Int); 4] {
    [(a.clone(), b.clone()), (b.clone(), a.clone()), (-a, -b), (-b, -a)]
}

/// Isomorphism `E_{c,d} -> E_{a,b}` when `(c, d)` lies in the orbit of `(a, b)`.
pub fn si2_isomorphic(a: &Int, b: &Int, c: &Int, d: &Int) -> Option<FormIso> {
    let target = e_ab(a, b);
    let source = e_ab(c, d);
    orbit(a, b)
        .into_iter()
        .zip(h2_automorphisms())
        .find(|((x, y), _)| x == c && y == d)
        .map(|(_, m)| FormIso::new(&source, &target, m).expect("orbit element is an isomorphism"))
}

fn orbit_key(p: &(Int, Int)) -> (Int, Int, bool, bool) {
    (p.0.abs(), p.1.abs(), p.0.is_negative(), p.1.is_negative())
}

/// Orbit representative: least by absolute values, then positive before negative.
pub fn normalize_pair(a: &Int, b: &Int) -> (Int, Int) {
    orbit(a, b).into_iter().min_by_key(orbit_key).expect("nonempty orbit")
}

/// Sorted, deduplicated orbit representatives.
pub fn orbit_representatives(pairs: impl IntoIterator<Item = (Int, Int)>) -> Vec<(Int, Int)> {
    let mut reps: Vec<(Int, Int)> = pairs.into_iter().map(|(c, d)| normalize_pair(&c, &d)).collect();
    reps.sort_by_key(orbit_key);
    reps.dedup();
    reps
}

/// How a form was brought to `E_{a,b}` shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub torsion_stripped: Vec<Int>,
    pub target_rank: usize,
    /// `x, y` with `λ(x,y) = 1` and `λ(x,x) = λ(y,y) = 0` modulo torsion.
    pub basis: Option<(Vec<Int>, Vec<Int>)>,
    pub pair: Option<(Int, Int)>,
}

/// Isomorphism classes stably isomorphic to a given form.
#[derive(Clone, Debug)]
pub struct SIReport {
    pub size: usize,
    /// `(c, d)` for each class when the classes are of the form `E_{c,d}`.
    pub pairs: Vec<(Int, Int)>,
    pub representatives: Vec<EQForm>,
    pub reduction: Option<Reduction>,
}

/// `SI(E_{a,b})` from the divisors of `ā b̄`.
pub fn si_enumerate(a: &Int, b: &Int) -> SIReport {
    let p = gcd_profile(a, b);
    let pairs = if (a * b).is_zero() || a.abs() == b.abs() {
        vec![normalize_pair(a, b)]
    } else {
        let primes: Vec<Int> = factorize(&(&p.a_bar * &p.b_bar)).into_iter().map(|(q, k)| num_traits::pow(q, k as usize)).collect();
        let mut candidates = Vec::new();
        for mask in 0u64..(1u64 << primes.len()) {
            let mut c = Int::one();
            for (i, q) in primes.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    c *= q;
                }
            }
            for s in [Int::one(), -Int::one()] {
                let cb = &c * s;
                candidates.push((&cb * &p.gcd, &p.lcm / &cb));
            }
        }
        orbit_representatives(candidates)
    };
    let representatives = pairs.iter().map(|(c, d)| e_ab(c, d)).collect();
    SIReport { size: pairs.len(), pairs, representatives, reduction: None }
}

/// `|SI(E_{a,b})|` from the closed formula.
pub fn si_count(a: &Int, b: &Int) -> usize {
    if (a * b).is_zero() || a.abs() == b.abs() {
        1
    } else {
        1 << (gcd_profile(a, b).prime_count() - 1)
    }
}

fn primitive(v: [Int; 2]) -> [Int; 2] {
    let g = gcd(&v[0], &v[1]);
    let [x, y] = v;
    let (x, y) = (x / &g, y / &g);
    if x.is_negative() || (x.is_zero() && y.is_negative()) {
        [-x, -y]
    } else {
        [x, y]
    }
}

/// Hyperbolic basis of an even binary form of determinant −1.
///
/// The two isotropic lines are ordered lexicographically by their primitive
/// vectors with non-negative leading entry; the second vector is signed so
/// that the pairing is one.
pub fn hyperbolic_basis(lambda: &IntMatrix) -> Result<([Int; 2], [Int; 2])> {
    let not_hyp = || Error::hyp("reduced bilinear form is not hyperbolic");
    if lambda.rows() != 2 || !lambda.is_symmetric() {
        return Err(not_hyp());
    }
    let (p, q, s) = (lambda[(0, 0)].clone(), lambda[(0, 1)].clone(), lambda[(1, 1)].clone());
    if !p.is_even() || !s.is_even() || &p * &s - &q * &q != -Int::one() {
        return Err(not_hyp());
    }
    let (u, w) = if p.is_zero() {
        ([Int::one(), Int::zero()], primitive([-s.clone(), int(2) * &q]))
    } else {
        (primitive([Int::one() - &q, p.clone()]), primitive([-Int::one() - &q, p.clone()]))
    };
    let (x, mut y) = if u <= w { (u, w) } else { (w, u) };
    let pair = lambda.bilinear(&x, &y)?;
    if pair.is_negative() {
        y = [-&y[0], -&y[1]];
    }
    if lambda.bilinear(&x, &y)? != Int::one() {
        return Err(not_hyp());
    }
    Ok((x, y))
}

/// The form with torsion stripped, in the coordinates of a hyperbolic basis.
fn reduce_to_hyperbolic(form: &EQForm) -> Result<(Reduction, EQForm)> {
    if !form.target().is_free() {
        return Err(Error::hyp("target group must be free"));
    }
    if !form.is_full() {
        return Err(Error::hyp("mu must be surjective"));
    }
    let g = form.group();
    if g.free_rank() != 2 {
        return Err(Error::hyp("form must have rank 2"));
    }
    let (x, y) = hyperbolic_basis(&form.free_lambda())?;
    let lift = |v: &[Int; 2]| {
        let mut w = v.to_vec();
        w.resize(g.dim(), Int::zero());
        w
    };
    let (x, y) = (lift(&x), lift(&y));
    let mu = IntMatrix::from_cols(&[form.mu_of(&x)?, form.mu_of(&y)?], form.target().dim())?;
    let reduced = EQForm::from_parts(AbGroup::free(2), IntMatrix::from_i64(2, 2, &[0, 1, 1, 0]), form.target().clone(), mu, form.v().map(<[u8]>::to_vec))?;
    let target_rank = form.target().dim();
    let pair = (target_rank == 1).then(|| (reduced.mu().matrix()[(0, 0)].clone(), reduced.mu().matrix()[(0, 1)].clone()));
    let reduction = Reduction { torsion_stripped: g.torsion().to_vec(), target_rank, basis: Some((x, y)), pair };
    Ok((reduction, reduced))
}

/// Appends `(Tor, 0, 0)` to a free form.
fn with_torsion(form: &EQForm, torsion: &[Int]) -> Result<EQForm> {
    if torsion.is_empty() {
        return Ok(form.clone());
    }
    let r = AbGroup::new(0, torsion.to_vec())?;
    let t = form.target();
    let rform = EQForm::from_parts(r.clone(), IntMatrix::zeros(r.dim(), r.dim()), t.clone(), IntMatrix::zeros(t.dim(), r.dim()), form.v().map(<[u8]>::to_vec))?;
    form.sum(&rform)
}

/// `SI(M)` for a full rank-two form over a free group whose reduced bilinear form is hyperbolic.
pub fn si_hyp(form: &EQForm) -> Result<SIReport> {
    let (reduction, reduced) = reduce_to_hyperbolic(form)?;
    let torsion = reduction.torsion_stripped.clone();
    let (pairs, frees) = match reduction.target_rank {
        0 | 2 => (Vec::new(), vec![reduced]),
        1 => {
            let (a, b) = reduction.pair.clone().expect("rank one target");
            let report = si_enumerate(&a, &b);
            (report.pairs, report.representatives)
        }
        _ => return Err(Error::hyp("target rank must be at most 2")),
    };
    let representatives = frees.iter().map(|f| with_torsion(&f.with_v(form.v().map(<[u8]>::to_vec))?, &torsion)).collect::<Result<Vec<_>>>()?;
    Ok(SIReport { size: representatives.len(), pairs, representatives, reduction: Some(reduction) })
}

/// Isomorphism `(N, λ, h∘μ) -> N` for a representative `N` of `SI(E)`.
pub fn aut_action_check(base: &EQForm, rep: &EQForm, h: &GroupHom) -> Result<FormIso> {
    let (base_red, _) = reduce_to_hyperbolic(base)?;
    let (rep_red, rep_free) = reduce_to_hyperbolic(rep)?;
    if base.target() != rep.target() || h.source() != rep.target() || h.target() != rep.target() || !h.is_isomorphism()? {
        return Err(Error::hyp("h must be an automorphism of the target"));
    }
    if let (Some((a, b)), Some((c, d))) = (&base_red.pair, &rep_red.pair) {
        if !si1_decide(a, b, c, d) {
            return Err(Error::hyp("representative is not stably isomorphic to the base form"));
        }
    }
    let twisted = EQForm::new(rep.group().clone(), rep.lambda().clone(), h.compose(rep.mu())?, rep.v().map(<[u8]>::to_vec))?;
    let n = rep.group().dim();
    let embed = |free: &IntMatrix| {
        let mut m = IntMatrix::identity(n);
        m.set_block(0, 0, free);
        m
    };
    let (x, y) = rep_red.basis.clone().expect("basis");
    let b = IntMatrix::from_cols(&[x[..2].to_vec(), y[..2].to_vec()], 2)?;
    let b_inv = crate::normal_form::unimodular_inverse(&b)?;
    let mut candidates = vec![IntMatrix::identity(2), IntMatrix::from_i64(2, 2, &[-1, 0, 0, -1])];
    if rep_red.target_rank == 2 {
        // μ on the hyperbolic basis is invertible; the isomorphism is forced.
        let m = rep_free.mu().matrix();
        let m_inv = crate::normal_form::unimodular_inverse(m)?;
        candidates.insert(0, b.mul(&m_inv.mul(&h.matrix().mul(m)?)?)?.mul(&b_inv)?);
    } else {
        candidates.extend(h2_automorphisms().into_iter().map(|a| b.mul(&a).and_then(|t| t.mul(&b_inv)).expect("2x2")));
    }
    candidates
        .into_iter()
        .find_map(|c| FormIso::new(&twisted, rep, embed(&c)).ok())
        .ok_or_else(|| Error::hyp("twisted form is not isomorphic to the representative"))
}

/// `|S^st(M, f)|` and `|S^st(M)|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StableClassCounts {
    pub with_smoothing: u64,
    pub total: u64,
}

/// Stable class counts for a target of rank `rk_q` and, when `rk_q = 1`, the pair `(a, b)`.
pub fn stable_class_report(rk_q: usize, a: &Int, b: &Int) -> Result<StableClassCounts> {
    let n = match rk_q {
        0 | 2 => 1,
        1 => {
            if !gcd(a, b).is_one() {
                return Err(Error::hyp("gcd(a, b) must be 1"));
            }
            let ab = (a * b).abs();
            if ab <= Int::one() {
                1
            } else {
                1u64 << (factorize(&ab).len() - 1)
            }
        }
        _ => return Err(Error::hyp("target rank must be 0, 1 or 2")),
    };
    Ok(StableClassCounts { with_smoothing: n, total: n })
}

/// Subgroup `Ker μ` and its perpendicular, for reporting.
pub fn kappa_subgroups(form: &EQForm) -> Result<(SubgroupRep, SubgroupRep)> {
    let k = form.mu().kernel()?;
    let p = form.perp(&k)?;
    Ok((k, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int::ints;

    fn i(x: i64) -> Int {
        int(x)
    }

    #[test]
    fn profiles() {
        let p = gcd_profile(&i(0), &i(0));
        assert_eq!((p.gcd, p.a_bar, p.b_bar, p.lcm), (i(0), i(1), i(1), i(0)));
        let p = gcd_profile(&i(2), &i(3));
        assert_eq!((p.gcd.clone(), p.a_bar.clone(), p.b_bar.clone(), p.lcm.clone()), (i(1), i(2), i(3), i(6)));
        assert_eq!(p.bezout(), (i(2), i(-1)));
        let p = gcd_profile(&i(-4), &i(6));
        assert_eq!((p.gcd, p.a_bar, p.b_bar, p.lcm), (i(2), i(-2), i(3), i(-12)));
    }

    #[test]
    fn e_ab_flags() {
        assert_eq!(e_ab(&i(0), &i(0)), EQForm::hyperbolic(1, &AbGroup::free(1)).with_v(Some(vec![0])).unwrap());
        assert!(e_ab(&i(2), &i(3)).is_full());
        assert!(!e_ab(&i(2), &i(4)).is_full());
    }

    #[test]
    fn kappa_examples() {
        let (k, _) = kappa(&e_ab(&i(0), &i(0))).unwrap();
        assert_eq!(k.rank(), 0);
        let (k, _) = kappa(&e_ab(&i(2), &i(3))).unwrap();
        assert_eq!(k.lambda(), &IntMatrix::from_i64(1, 1, &[12]));
        assert_eq!(k.mu().matrix()[(0, 0)].abs(), i(12));
        let (k, _) = kappa(&e_ab(&i(3), &i(0))).unwrap();
        assert_eq!((k.lambda()[(0, 0)].clone(), k.mu().matrix()[(0, 0)].clone()), (i(0), i(0)));
    }

    #[test]
    fn si1_examples() {
        assert!(si1_decide(&i(1), &i(6), &i(2), &i(3)));
        assert!(!si1_decide(&i(1), &i(6), &i(1), &i(-6)));
        assert!(!si1_decide(&i(2), &i(2), &i(1), &i(4)));
        si1_witness_with(&i(2), &i(3), &i(-1), &i(1)).unwrap();
        si1_witness(&i(1), &i(1)).unwrap();
        si1_witness(&i(0), &i(0)).unwrap();
        si1_witness(&i(5), &i(0)).unwrap();
        let w = si1_stable_iso(&i(1), &i(6), &i(2), &i(3)).unwrap();
        assert_eq!(w.source().mu().matrix().row(0), ints(&[2, 3, 0, 0]));
    }

    #[test]
    fn si2_examples() {
        assert_eq!(si2_isomorphic(&i(2), &i(3), &i(3), &i(2)).unwrap().matrix(), &h2_automorphisms()[1]);
        assert_eq!(si2_isomorphic(&i(2), &i(3), &i(-2), &i(-3)).unwrap().matrix(), &h2_automorphisms()[2]);
        assert!(si2_isomorphic(&i(2), &i(3), &i(2), &i(-3)).is_none());
    }

    #[test]
    fn enumerate_examples() {
        let r = si_enumerate(&i(1), &i(6));
        assert_eq!(r.pairs, vec![(i(1), i(6)), (i(2), i(3))]);
        assert_eq!(si_enumerate(&i(0), &i(5)).size, 1);
        assert_eq!(si_enumerate(&i(1), &i(30)).size, 4);
        assert_eq!(si_enumerate(&i(2), &i(2)).size, 1);
    }

    #[test]
    fn hyperbolic_basis_of_twisted_forms() {
        for m in [[0, 1, 1, 0], [2, 1, 1, 0], [0, 1, 1, 4], [2, 3, 3, 4], [-2, 1, 1, 0]] {
            let l = IntMatrix::from_i64(2, 2, &m);
            let (x, y) = hyperbolic_basis(&l).unwrap();
            assert_eq!(l.bilinear(&x, &x).unwrap(), i(0));
            assert_eq!(l.bilinear(&y, &y).unwrap(), i(0));
            assert_eq!(l.bilinear(&x, &y).unwrap(), i(1));
        }
        assert!(hyperbolic_basis(&IntMatrix::from_i64(2, 2, &[0, 1, 1, 1])).is_err());
    }

    #[test]
    fn si_hyp_cases() {
        let g = AbGroup::new(2, vec![5.into()]).unwrap();
        let f = EQForm::from_parts(g, IntMatrix::from_i64(3, 3, &[0, 1, 0, 1, 0, 0, 0, 0, 0]), AbGroup::free(1), IntMatrix::from_i64(1, 3, &[1, 6, 0]), Some(vec![0])).unwrap();
        let r = si_hyp(&f).unwrap();
        assert_eq!(r.size, 2);
        assert_eq!(r.representatives[1].group(), f.group());
        let f = EQForm::from_parts(AbGroup::free(2), IntMatrix::from_i64(2, 2, &[0, 1, 1, 0]), AbGroup::free(2), IntMatrix::identity(2), None).unwrap();
        assert_eq!(si_hyp(&f).unwrap().size, 1);
        let f = EQForm::hyperbolic(1, &AbGroup::trivial());
        assert_eq!(si_hyp(&f).unwrap().size, 1);
    }

    #[test]
    fn action_examples() {
        let q = AbGroup::free(1);
        let f = e_ab(&i(1), &i(6));
        let n = e_ab(&i(2), &i(3));
        aut_action_check(&f, &n, &GroupHom::identity(&q)).unwrap();
        aut_action_check(&f, &n, &GroupHom::identity(&q).negate()).unwrap();
        let q2 = AbGroup::free(2);
        let m = EQForm::from_parts(AbGroup::free(2), IntMatrix::from_i64(2, 2, &[0, 1, 1, 0]), q2.clone(), IntMatrix::identity(2), None).unwrap();
        let swap = GroupHom::new(q2.clone(), q2, IntMatrix::from_i64(2, 2, &[0, 1, 1, 0])).unwrap();
        aut_action_check(&m, &m, &swap).unwrap();
    }

    #[test]
    fn stable_class_table() {
        assert_eq!(stable_class_report(0, &i(0), &i(0)).unwrap().total, 1);
        assert_eq!(stable_class_report(1, &i(1), &i(1)).unwrap().total, 1);
        assert_eq!(stable_class_report(1, &i(1), &i(6)).unwrap().total, 2);
        assert!(stable_class_report(1, &i(2), &i(4)).is_err());
    }
}
