//! Certified chains realizing the standard equivalences between quasi-formations.

use super::{lift_left, lift_right, swap_iso, Chain, Move, MoveSequence, QuasiFormation};
use crate::construct::fundmet::{stabilize, stable_lagrangian_iso};
use crate::construct::metabolic::{double_to_hyperbolic, is_hyperbolic_with_witness};
use crate::construct::ru::{all_plane_flips, ru_wall_witness, RUGenerator, RUWord};
use crate::error::{Error, Result};
use crate::form::{EQForm, FormIso};
use crate::group::{AbGroup, GroupHom};
use crate::int::Int;
use crate::matrix::IntMatrix;
use crate::normal_form::unimodular_inverse;
use crate::subgroup::SubgroupRep;
use crate::surjection::MatchMode;

fn require_free(q: &QuasiFormation) -> Result<()> {
    if !q.form().is_free() {
        return Err(Error::hyp("form must be free"));
    }
    Ok(())
}

fn require_admissible(q: &QuasiFormation) -> Result<()> {
    require_free(q)?;
    if !q.form().is_full() {
        return Err(Error::hyp("form must be full"));
    }
    if !q.form().is_geometric()? {
        return Err(Error::hyp("form must be geometric"));
    }
    Ok(())
}

/// `q -> (M ⊕ H_{2k}; L ⊕ ({0} × Z^k), V ⊕ (Z^k × {0}))` by `k` stabilizations and a reordering.
pub(crate) fn stabilize_moves(q: &QuasiFormation, k: usize) -> Result<MoveSequence> {
    require_free(q)?;
    let mut chain = Chain::new(q);
    for _ in 0..k {
        chain.push(Move::Stab)?;
    }
    let n = q.form().dim();
    let (big, _) = stabilize(q.form(), q.lagrangian(), k)?;
    let perm: Vec<usize> = (0..n + 2 * k)
        .map(|c| {
            if c < n {
                c
            } else if (c - n) % 2 == 0 {
                n + (c - n) / 2
            } else {
                n + k + (c - n) / 2
            }
        })
        .collect();
    chain.push(Move::ApplyIso(FormIso::permutation(chain.current().form(), &big, &perm)?))?;
    Ok(chain.finish())
}

/// `(M; L, V) ∼ (M; L, Ψ(V))` for `Ψ` the value of an RU word on `(M, L)`.
pub fn ru_equiv_moves(q: &QuasiFormation, word: &RUWord) -> Result<MoveSequence> {
    if &word.form != q.form() || &word.lagrangian != q.lagrangian() {
        return Err(Error::InvalidWitness("word acts on another form or lagrangian".into()));
    }
    word.validate()?;
    let mut chain = Chain::new(q);
    for g in word.generators.iter().rev() {
        match g {
            RUGenerator::Keep(f) => chain.push(Move::ApplyIso(f.clone()))?,
            RUGenerator::Flip { iso, rest, inner } => {
                let psi = g.map()?;
                let to_tail = swap_iso(&EQForm::hyperbolic(1, rest.target()), rest)?;
                chain.push(Move::FlipL { iso: to_tail.compose(&iso.compose(&psi)?)?, rest: rest.clone(), inner: inner.clone() })?;
                chain.push(Move::ApplyIso(psi))?;
            }
        }
    }
    Ok(chain.finish())
}

/// `(M; L, V) ∼ (M ⊕ H_{2k}; L ⊕ ({0} × Z^k), V ⊕ ({0} × Z^k))`.
pub fn hyp_zero(q: &QuasiFormation, k: usize) -> Result<MoveSequence> {
    let mut chain = Chain::new(q);
    chain.extend(stabilize_moves(q, k)?)?;
    let (big, big_l) = stabilize(q.form(), q.lagrangian(), k)?;
    let word = RUWord { form: big, lagrangian: big_l, generators: all_plane_flips(q.form(), q.lagrangian(), k)? };
    let tail = ru_equiv_moves(chain.current(), &word)?;
    chain.extend(tail)?;
    Ok(chain.finish())
}

fn own_zero(q: &QuasiFormation) -> Result<QuasiFormation> {
    QuasiFormation::new(q.form().clone(), q.lagrangian().clone(), q.lagrangian().clone())
}

/// `(M; L, V) ⊕ (M; L, L) ∼ (M; L, V)`.
pub fn absorb_own_zero(q: &QuasiFormation) -> Result<MoveSequence> {
    require_free(q)?;
    let start = q.direct_sum(&own_zero(q)?)?;
    let mut chain = Chain::new(&start);
    chain.push(Move::ApplyIso(double_to_hyperbolic(q.form(), q.lagrangian())?))?;
    chain.extend(hyp_zero(q, q.form().rank() / 2)?.inverse()?)?;
    Ok(chain.finish())
}

/// `(M; L, L) ∼ (M'; L', L')` for two admissible zero representatives.
pub fn zero_equiv(z1: &QuasiFormation, z2: &QuasiFormation) -> Result<MoveSequence> {
    for z in [z1, z2] {
        require_admissible(z)?;
        if z.lagrangian() != z.summand() {
            return Err(Error::hyp("zero representative must have V = L"));
        }
    }
    let s = stable_lagrangian_iso(z1.form(), z1.lagrangian(), z2.form(), z2.lagrangian(), MatchMode::Stable)?;
    let mut chain = Chain::new(z1);
    chain.extend(hyp_zero(z1, s.k)?)?;
    chain.push(Move::ApplyIso(s.iso))?;
    chain.extend(hyp_zero(z2, s.l)?.inverse()?)?;
    Ok(chain.finish())
}

/// `(M; L, V) ⊕ (N; K, K) ∼ (M; L, V)` for `N` free geometric metabolic with lagrangian `K`.
pub fn absorb_zero(q: &QuasiFormation, z: &QuasiFormation) -> Result<MoveSequence> {
    require_admissible(q)?;
    require_free(z)?;
    if z.lagrangian() != z.summand() {
        return Err(Error::hyp("absorbed quasi-formation must have V = L"));
    }
    let own = own_zero(q)?;
    let start = q.direct_sum(z)?;
    let mut chain = Chain::new(&start);
    chain.extend(lift_right(&absorb_own_zero(q)?.inverse()?, z)?)?;
    chain.extend(lift_left(q, &zero_equiv(&own.direct_sum(z)?, &own)?)?)?;
    chain.extend(absorb_own_zero(q)?)?;
    Ok(chain.finish())
}

/// `(M; L, V) ∼ (M; L, Ψ(V))` given a word on `(M ⊕ N, L ⊕ K)` evaluating to `Ψ ⊕ id_N`.
pub fn ru_st_moves(q: &QuasiFormation, word: &RUWord, n: &EQForm, k: &SubgroupRep) -> Result<MoveSequence> {
    let z = QuasiFormation::new(n.clone(), k.clone(), k.clone())?;
    let value = word.evaluate()?;
    let m = q.form().dim();
    let total = m + n.dim();
    let mat = value.matrix();
    let expected_tail = IntMatrix::identity(n.dim());
    if mat.rows() != total
        || !mat.block(0, m, m, n.dim()).is_zero()
        || !mat.block(m, 0, n.dim(), m).is_zero()
        || mat.block(m, m, n.dim(), n.dim()) != expected_tail
    {
        return Err(Error::InvalidWitness("word does not evaluate to Ψ ⊕ id".into()));
    }
    let psi = FormIso::new(q.form(), q.form(), mat.block(0, 0, m, m))?;
    let target = QuasiFormation::new(q.form().clone(), q.lagrangian().clone(), psi.apply_subgroup(q.summand())?)?;

    let mut chain = Chain::new(q);
    chain.extend(absorb_zero(q, &z)?.inverse()?)?;
    let middle = ru_equiv_moves(chain.current(), word)?;
    chain.extend(middle)?;
    chain.extend(absorb_zero(&target, &z)?)?;
    Ok(chain.finish())
}

/// Certificate for `[M; K, L] ⊕ [M; L, V] = [M; K, V]`.
#[derive(Clone, Debug)]
pub struct JacobiWitness {
    /// Number of hyperbolic planes added to `M`.
    pub stabilization: usize,
    /// `Φ` on `M ⊕ H_{2k}` with `Φ(L ⊕ ({0} × Z^k)) = K ⊕ ({0} × Z^k)`.
    pub phi: FormIso,
    /// From `(M; K, L) ⊕ (M; L, V)` to `(M; K, V)`.
    pub sequence: MoveSequence,
}

pub fn jacobi_witness(form: &EQForm, k: &SubgroupRep, l: &SubgroupRep, v: &SubgroupRep) -> Result<JacobiWitness> {
    let qkl = QuasiFormation::new(form.clone(), k.clone(), l.clone())?;
    let qlv = QuasiFormation::new(form.clone(), l.clone(), v.clone())?;
    let qkv = QuasiFormation::new(form.clone(), k.clone(), v.clone())?;
    require_admissible(&qkl)?;
    if !form.is_free_lagrangian(k)? || !form.is_free_lagrangian(l)? {
        return Err(Error::hyp("K and L must be free lagrangians"));
    }
    let s = match stable_lagrangian_iso(form, l, form, k, MatchMode::Strict) {
        Ok(s) => s,
        Err(Error::Hypothesis(_)) => stable_lagrangian_iso(form, l, form, k, MatchMode::Stable)?,
        Err(e) => return Err(e),
    };
    if s.k != s.l {
        return Err(Error::InvalidWitness("stabilizations of a form with itself differ".into()));
    }
    let n = s.k;
    let phi = s.iso.clone();

    let mut chain = Chain::new(&qkl.direct_sum(&qlv)?);
    // enlarge both summands to M ⊕ H_{2k}
    chain.extend(lift_right(&hyp_zero(&qkl, n)?, &qlv)?)?;
    let big_kl = hyp_zero(&qkl, n)?.end;
    chain.extend(lift_left(&big_kl, &stabilize_moves(&qlv, n)?)?)?;
    let big = big_kl.form().clone();
    let big_k = big_kl.lagrangian().clone();

    chain.push(Move::ApplyIso(FormIso::direct_sum(&FormIso::identity(&big), &phi)?))?;
    let word = ru_wall_witness(&big, &big_k, &phi)?;
    let here = chain.current().clone();
    chain.extend(ru_st_moves(&here, &word, &big.negative(), &big_k)?)?;

    chain.push(Move::ApplyIso(swap_iso(&big, &big)?))?;
    let big_kv = stabilize_moves(&qkv, n)?.end;
    chain.extend(absorb_own_zero(&big_kv)?)?;
    chain.extend(stabilize_moves(&qkv, n)?.inverse()?)?;
    Ok(JacobiWitness { stabilization: n, phi, sequence: chain.finish() })
}

/// Splitting `(M; L, K) = (M'; J, J) ⊕ (H; L', K')` with `H` hyperbolic.
#[derive(Clone, Debug)]
pub struct LGroupDecomposition {
    /// `J = K ∩ L`.
    pub common: SubgroupRep,
    /// Direct complement `X` of `J`.
    pub complement: SubgroupRep,
    /// `M' = J + X^⊥`.
    pub core: SubgroupRep,
    /// `H = (M')^⊥`.
    pub hyperbolic: SubgroupRep,
    pub core_part: QuasiFormation,
    pub hyperbolic_part: QuasiFormation,
    /// `H -> H_{2m}` carrying `L'` onto `Z^m × {0}`.
    pub hyperbolic_witness: FormIso,
    /// `q -> core_part ⊕ hyperbolic_part`; the hyperbolic summand then cancels.
    pub sequence: MoveSequence,
}

fn coordinates(inv: &IntMatrix, s: &SubgroupRep, range: std::ops::Range<usize>, ambient: &AbGroup) -> Result<SubgroupRep> {
    let gens = s
        .generators()
        .iter()
        .map(|g| Ok(inv.mul_vec(g)?[range.clone()].to_vec()))
        .collect::<Result<Vec<_>>>()?;
    SubgroupRep::new(ambient, &gens)
}

pub fn l_group_trivialize(q: &QuasiFormation) -> Result<LGroupDecomposition> {
    require_admissible(q)?;
    let form = q.form();
    if !form.target().is_free() {
        return Err(Error::hyp("Q must be free"));
    }
    let (l, k) = (q.lagrangian(), q.summand());
    if !form.is_free_lagrangian(l)? || !form.is_free_lagrangian(k)? {
        return Err(Error::hyp("L and K must be free lagrangians"));
    }
    let j = l.intersect(k)?;
    let x = j.complement()?;
    let core = j.sum(&form.perp(&x)?)?;
    let hyp = form.perp(&core)?;
    let cb = core.basis()?;
    let hb = hyp.basis()?;
    let n = form.dim();
    let mut cols = cb.clone();
    cols.extend(hb.iter().cloned());
    let b = IntMatrix::from_cols(&cols, n)?;
    if cols.len() != n || !b.is_unimodular() {
        return Err(Error::InvalidWitness("M is not the direct sum of M' and H".into()));
    }
    let inv = unimodular_inverse(&b)?;
    let restrict = |basis: &[Vec<Int>]| -> Result<EQForm> {
        let incl = GroupHom::new(AbGroup::free(basis.len()), form.group().clone(), IntMatrix::from_cols(basis, n)?)?;
        form.pullback(&incl)
    };
    let core_form = restrict(&cb)?;
    let hyp_form = restrict(&hb)?;
    let (mc, mh) = (cb.len(), hb.len());
    let j_in_core = coordinates(&inv, &j, 0..mc, core_form.group())?;
    let l_in_h = coordinates(&inv, &l.intersect(&x)?, mc..n, hyp_form.group())?;
    let k_in_h = coordinates(&inv, &k.intersect(&x)?, mc..n, hyp_form.group())?;
    let core_part = QuasiFormation::new(core_form.clone(), j_in_core.clone(), j_in_core)?;
    let hyperbolic_part = QuasiFormation::new(hyp_form.clone(), l_in_h.clone(), k_in_h.clone())?;
    if !hyp_form.mu().matrix().is_zero() {
        return Err(Error::InvalidWitness("μ does not vanish on H".into()));
    }
    if !hyp_form.is_free_lagrangian(&l_in_h)? || !hyp_form.is_free_lagrangian(&k_in_h)? {
        return Err(Error::InvalidWitness("L ∩ X or K ∩ X is not a lagrangian in H".into()));
    }
    let hyperbolic_witness = is_hyperbolic_with_witness(&hyp_form, &l_in_h)?;
    debug_assert_eq!(hyperbolic_witness.target().dim(), mh);

    let split = FormIso::new(&core_form.sum(&hyp_form)?, form, b)?;
    let mut chain = Chain::new(q);
    chain.push(Move::ApplyIso(split.inverse()?))?;
    if chain.current() != &core_part.direct_sum(&hyperbolic_part)? {
        return Err(Error::InvalidWitness("decomposition does not split L and K".into()));
    }
    Ok(LGroupDecomposition {
        common: j,
        complement: x,
        core,
        hyperbolic: hyp,
        core_part,
        hyperbolic_part,
        hyperbolic_witness,
        sequence: chain.finish(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int::ints;
    use crate::lmonoid::zero_formation;

    fn sub(f: &EQForm, g: &[&[i64]]) -> SubgroupRep {
        SubgroupRep::new(f.group(), &g.iter().map(|x| ints(x)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn hyp_zero_replays() {
        let z = zero_formation(&AbGroup::free(1), &[0]).unwrap();
        for k in 0..3 {
            let s = hyp_zero(&z, k).unwrap();
            s.replay().unwrap();
            assert_eq!(s.end.form().rank(), 2 + 2 * k);
        }
    }

    #[test]
    fn absorbing_zeros() {
        let z = zero_formation(&AbGroup::free(1), &[0]).unwrap();
        let f = z.form().clone();
        let q = QuasiFormation::new(f.clone(), sub(&f, &[&[1, 0]]), sub(&f, &[&[1, 1]])).unwrap();
        absorb_own_zero(&q).unwrap().replay().unwrap();
        let h = QuasiFormation::standard_hyperbolic(1, &AbGroup::free(1));
        let hz = QuasiFormation::new(h.form().clone(), h.lagrangian().clone(), h.lagrangian().clone()).unwrap();
        let s = absorb_zero(&q, &hz).unwrap();
        s.replay().unwrap();
        assert_eq!(s.end, q);
    }

    #[test]
    fn trivialization_examples() {
        let f = EQForm::from_parts(
            AbGroup::free(4),
            IntMatrix::from_i64(4, 4, &[0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0]),
            AbGroup::free(1),
            IntMatrix::from_i64(1, 4, &[0, 1, 0, 0]),
            Some(vec![0]),
        )
        .unwrap();
        let q = QuasiFormation::new(f.clone(), sub(&f, &[&[1, 0, 0, 0], &[0, 0, 1, 0]]), sub(&f, &[&[1, 0, 0, 0], &[0, 0, 0, 1]])).unwrap();
        let d = l_group_trivialize(&q).unwrap();
        assert_eq!(d.common, sub(&f, &[&[1, 0, 0, 0]]));
        assert_eq!(d.hyperbolic_part.form().rank(), 2);
        d.sequence.replay().unwrap();

        let same = QuasiFormation::new(f.clone(), q.lagrangian().clone(), q.lagrangian().clone()).unwrap();
        let d = l_group_trivialize(&same).unwrap();
        assert_eq!(d.hyperbolic.rank(), 0);
        assert_eq!(&d.common, q.lagrangian());
    }

    #[test]
    fn jacobi_on_small_form() {
        let z = zero_formation(&AbGroup::free(1), &[0]).unwrap();
        let f = z.form().clone();
        let k = sub(&f, &[&[1, 0]]);
        let w = jacobi_witness(&f, &k, &k, &sub(&f, &[&[0, 1]])).unwrap();
        w.sequence.replay().unwrap();
        let l = sub(&f, &[&[1, 0]]);
        let w = jacobi_witness(&f, &k, &l, &sub(&f, &[&[1, 1]])).unwrap();
        w.sequence.replay().unwrap();
    }

    #[test]
    fn jacobi_over_torsion_target() {
        use crate::samples::{rng, MetabolicSample};
        let mut r = rng(4242);
        let s = MetabolicSample::random(&mut r, &AbGroup::new(0, vec![2.into()]).unwrap(), &[1], 0).unwrap();
        let l = s.random_automorphism(&mut r, 4).unwrap().apply_subgroup(&s.lagrangian).unwrap();
        let v = s.random_summand(&mut r).unwrap();
        let w = jacobi_witness(&s.form, &s.lagrangian, &l, &v).unwrap();
        assert!(w.stabilization > 0);
        w.sequence.replay().unwrap();
    }
}
