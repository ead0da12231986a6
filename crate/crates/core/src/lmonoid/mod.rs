//! Quasi-formations `(M; L, V)` and replayable chains of elementary equivalences.

mod chains;
mod torsion;

pub use chains::{
    absorb_own_zero, absorb_zero, hyp_zero, jacobi_witness, l_group_trivialize, ru_equiv_moves, ru_st_moves,
    zero_equiv, JacobiWitness, LGroupDecomposition,
};
pub use torsion::{bar_reduce, splitting_iso, unbar};

use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::construct::ru::sum_with_lagrangian;
use crate::error::{Error, Result};
use crate::form::{EQForm, FormIso};
use crate::group::AbGroup;
use crate::int::Int;
use crate::matrix::IntMatrix;
use crate::subgroup::SubgroupRep;

/// `(M; L, V)` with `L` a T-lagrangian and `V` a free half-rank summand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiFormation {
    form: EQForm,
    lagrangian: SubgroupRep,
    summand: SubgroupRep,
}

impl QuasiFormation {
    pub fn new(form: EQForm, lagrangian: SubgroupRep, summand: SubgroupRep) -> Result<Self> {
        if lagrangian.ambient() != form.group() || summand.ambient() != form.group() {
            return Err(Error::InvalidSubgroup("subgroups live in another group".into()));
        }
        if !form.is_nonsingular() {
            return Err(Error::InvalidForm("quasi-formation needs a nonsingular form".into()));
        }
        if !form.classify(&lagrangian)?.t_lagrangian {
            return Err(Error::InvalidSubgroup("L is not a T-lagrangian".into()));
        }
        if !summand.is_free()? || !form.classify(&summand)?.half_rank_summand {
            return Err(Error::InvalidSubgroup("V is not a free half-rank direct summand".into()));
        }
        Ok(QuasiFormation { form, lagrangian, summand })
    }

    /// `ℋ_{2k} = (H_{2k}; {0} × Z^k, Z^k × {0})`.
    pub fn standard_hyperbolic(k: usize, target: &AbGroup) -> Self {
        let form = EQForm::hyperbolic(k, target);
        let g = form.group().clone();
        let a: Vec<Vec<Int>> = (0..k).map(|i| g.basis_vector(i)).collect();
        let b: Vec<Vec<Int>> = (0..k).map(|i| g.basis_vector(k + i)).collect();
        let lagrangian = SubgroupRep::new(&g, &b).expect("basis vectors");
        let summand = SubgroupRep::new(&g, &a).expect("basis vectors");
        QuasiFormation { form, lagrangian, summand }
    }

    pub fn form(&self) -> &EQForm {
        &self.form
    }

    pub fn lagrangian(&self) -> &SubgroupRep {
        &self.lagrangian
    }

    pub fn summand(&self) -> &SubgroupRep {
        &self.summand
    }

    /// `M = L ⊕ V` internally.
    pub fn is_elementary(&self) -> Result<bool> {
        let whole = SubgroupRep::whole(self.form.group());
        Ok(self.lagrangian.sum(&self.summand)? == whole && self.lagrangian.intersect(&self.summand)?.is_zero())
    }

    /// `V` is a free lagrangian, so the class is invertible.
    pub fn is_l_element(&self) -> Result<bool> {
        self.form.is_free_lagrangian(&self.summand)
    }

    /// Free, full and geometric with respect to the form's `v`.
    pub fn is_admissible(&self) -> Result<bool> {
        Ok(self.form.is_free() && self.form.is_full() && self.form.is_geometric()?)
    }

    pub fn direct_sum(&self, other: &QuasiFormation) -> Result<QuasiFormation> {
        let s = self.sum_parts(other)?;
        QuasiFormation::new(s.form, s.lagrangian, s.summand)
    }

    /// Direct sum of two valid quasi-formations, which is valid again.
    fn sum_parts(&self, other: &QuasiFormation) -> Result<QuasiFormation> {
        let (form, lagrangian) = sum_with_lagrangian(&self.form, &self.lagrangian, &other.form, &other.lagrangian)?;
        let (_, summand) = sum_with_lagrangian(&self.form, &self.summand, &other.form, &other.summand)?;
        Ok(QuasiFormation { form, lagrangian, summand })
    }

    /// `(N; h(L), h(V))` for `h: M -> N`.
    pub fn apply_iso(&self, h: &FormIso) -> Result<QuasiFormation> {
        if h.source() != &self.form {
            return Err(Error::InvalidWitness("isomorphism starts at another form".into()));
        }
        QuasiFormation::new(h.target().clone(), h.apply_subgroup(&self.lagrangian)?, h.apply_subgroup(&self.summand)?)
    }

    /// `μ(V) ≤ Q`, unchanged along `∼`.
    pub fn summand_mu_image(&self) -> Result<SubgroupRep> {
        let gens = self.summand.generators().iter().map(|g| self.form.mu_of(g)).collect::<Result<Vec<_>>>()?;
        SubgroupRep::new(self.form.target(), &gens)
    }

    /// Non-negative generator of the image of `λ` on `V × V`, unchanged along `∼`.
    pub fn summand_lambda_gcd(&self) -> Result<Int> {
        let g = self.summand.generators();
        let mut acc = Int::zero();
        for x in g {
            for y in g {
                acc = acc.gcd(&self.form.pairing(x, y)?);
            }
        }
        Ok(acc)
    }
}

/// `(Q-form with λ = [[0, I], [I, D]], μ = [0 | id]; L, L)` for the generators of `Q`.
///
/// `D_ii = v` of the `i`-th generator, so the result is free, full and geometric.
pub fn zero_formation(target: &AbGroup, v: &[u8]) -> Result<QuasiFormation> {
    let k = target.dim();
    let mut lambda = IntMatrix::zeros(2 * k, 2 * k);
    let mut mu = IntMatrix::zeros(k, 2 * k);
    for i in 0..k {
        lambda[(i, k + i)] = 1.into();
        lambda[(k + i, i)] = 1.into();
        lambda[(k + i, k + i)] = Int::from(*v.get(i).ok_or_else(|| Error::InvalidForm("v is too short".into()))?);
        mu[(i, k + i)] = 1.into();
    }
    let form = EQForm::from_parts(AbGroup::free(2 * k), lambda, target.clone(), mu, Some(v.to_vec()))?;
    let l = SubgroupRep::new(form.group(), &(0..k).map(|i| form.group().basis_vector(i)).collect::<Vec<_>>())?;
    QuasiFormation::new(form, l.clone(), l)
}

/// `M' ⊕ H_2` and `L' ⊕ ⟨x⟩` with `x` the first (`first = true`) or second basis vector of `H_2`.
fn with_plane(rest: &EQForm, inner: &SubgroupRep, first: bool) -> Result<(EQForm, SubgroupRep)> {
    let h = EQForm::hyperbolic(1, rest.target());
    let x = if first { vec![1.into(), 0.into()] } else { vec![0.into(), 1.into()] };
    let line = SubgroupRep::new(h.group(), &[x])?;
    sum_with_lagrangian(rest, inner, &h, &line)
}

/// Elementary step of the relation `∼`.
#[derive(Clone, Debug)]
pub enum Move {
    /// `q -> q ⊕ ℋ_2`.
    Stab,
    /// `q -> rest` given `iso: q ≅ rest ⊕ ℋ_2`.
    Destab { iso: FormIso, rest: QuasiFormation },
    /// Swap `{0} × Z` and `Z × {0}` in the lagrangian, given `iso: M -> M' ⊕ H_2`
    /// with `iso(L) = L' ⊕ ({0} × Z)` or `L' ⊕ (Z × {0})`.
    FlipL { iso: FormIso, rest: EQForm, inner: SubgroupRep },
    /// `q -> (N; h(L), h(V))`.
    ApplyIso(FormIso),
}

impl Move {
    pub fn name(&self) -> &'static str {
        match self {
            Move::Stab => "stab",
            Move::Destab { .. } => "destab",
            Move::FlipL { .. } => "flip",
            Move::ApplyIso(_) => "iso",
        }
    }

    pub fn apply(&self, q: &QuasiFormation) -> Result<QuasiFormation> {
        match self {
            Move::Stab => q.direct_sum(&QuasiFormation::standard_hyperbolic(1, q.form.target())),
            Move::Destab { iso, rest } => {
                let expected = rest.direct_sum(&QuasiFormation::standard_hyperbolic(1, q.form.target()))?;
                if q.apply_iso(iso)? != expected {
                    return Err(Error::InvalidWitness("split witness does not carry q onto rest ⊕ ℋ_2".into()));
                }
                Ok(rest.clone())
            }
            Move::FlipL { iso, rest, inner } => {
                if iso.source() != &q.form {
                    return Err(Error::InvalidWitness("flip witness starts at another form".into()));
                }
                let (sum, with_b) = with_plane(rest, inner, false)?;
                let (_, with_a) = with_plane(rest, inner, true)?;
                if iso.target() != &sum {
                    return Err(Error::InvalidWitness("flip witness does not end at M' ⊕ H_2".into()));
                }
                let image = iso.apply_subgroup(&q.lagrangian)?;
                let flipped = if image == with_b {
                    with_a
                } else if image == with_a {
                    with_b
                } else {
                    return Err(Error::InvalidWitness("L is not split as L' ⊕ line of H_2".into()));
                };
                QuasiFormation::new(q.form.clone(), iso.inverse()?.apply_subgroup(&flipped)?, q.summand.clone())
            }
            Move::ApplyIso(h) => q.apply_iso(h),
        }
    }

    /// Next state without re-validating it; used while building chains that are replayed afterwards.
    fn apply_trusted(&self, q: &QuasiFormation) -> Result<QuasiFormation> {
        Ok(match self {
            Move::Stab => q.sum_parts(&QuasiFormation::standard_hyperbolic(1, q.form.target()))?,
            Move::Destab { rest, .. } => rest.clone(),
            Move::FlipL { iso, rest, inner } => {
                let (_, with_b) = with_plane(rest, inner, false)?;
                let (_, with_a) = with_plane(rest, inner, true)?;
                let image = iso.apply_subgroup(&q.lagrangian)?;
                let flipped = if image == with_b { with_a } else { with_b };
                QuasiFormation { form: q.form.clone(), lagrangian: iso.inverse()?.apply_subgroup(&flipped)?, summand: q.summand.clone() }
            }
            Move::ApplyIso(h) => QuasiFormation {
                form: h.target().clone(),
                lagrangian: h.apply_subgroup(&q.lagrangian)?,
                summand: h.apply_subgroup(&q.summand)?,
            },
        })
    }

    /// Move undoing `self` from the state `after = self.apply(before)`.
    pub fn inverse(&self, before: &QuasiFormation) -> Result<Vec<Move>> {
        Ok(match self {
            Move::Stab => vec![Move::Destab { iso: FormIso::identity(&self.apply(before)?.form), rest: before.clone() }],
            Move::Destab { iso, .. } => vec![Move::Stab, Move::ApplyIso(iso.inverse()?)],
            Move::FlipL { .. } => vec![self.clone()],
            Move::ApplyIso(h) => vec![Move::ApplyIso(h.inverse()?)],
        })
    }
}

/// Certificate that `start ∼ end`.
#[derive(Clone, Debug)]
pub struct MoveSequence {
    pub start: QuasiFormation,
    pub end: QuasiFormation,
    pub moves: Vec<Move>,
    /// States recorded while the sequence was built move by move.
    trail: Option<Vec<QuasiFormation>>,
}

impl MoveSequence {
    pub fn new(start: QuasiFormation, end: QuasiFormation, moves: Vec<Move>) -> Self {
        MoveSequence { start, end, moves, trail: None }
    }

    pub fn empty(q: &QuasiFormation) -> Self {
        MoveSequence::new(q.clone(), q.clone(), Vec::new())
    }

    /// All intermediate states, starting with `start`.
    pub fn states(&self) -> Result<Vec<QuasiFormation>> {
        match &self.trail {
            Some(t) if t.first() == Some(&self.start) && t.last() == Some(&self.end) && t.len() == self.moves.len() + 1 => Ok(t.clone()),
            _ => self.replay_states(),
        }
    }

    fn replay_states(&self) -> Result<Vec<QuasiFormation>> {
        let mut states = vec![self.start.clone()];
        for (index, m) in self.moves.iter().enumerate() {
            let next = m
                .apply(states.last().expect("nonempty"))
                .map_err(|e| Error::InvalidMove { index, reason: e.to_string() })?;
            states.push(next);
        }
        Ok(states)
    }

    /// Replays every move and compares the result with `end`.
    pub fn replay(&self) -> Result<()> {
        let states = self.replay_states()?;
        if states.last().expect("nonempty") != &self.end {
            return Err(Error::InvalidMove { index: self.moves.len(), reason: "replay does not reach the claimed end".into() });
        }
        Ok(())
    }

    pub fn replays(&self) -> bool {
        self.replay().is_ok()
    }

    pub fn inverse(&self) -> Result<MoveSequence> {
        let states = self.states()?;
        let mut chain = Chain::new(&self.end);
        for (m, before) in self.moves.iter().zip(&states).rev() {
            for inv in m.inverse(before)? {
                chain.push(inv)?;
            }
        }
        Ok(chain.finish())
    }

    /// Counts of each move kind.
    pub fn summary(&self) -> MoveSummary {
        let mut s = MoveSummary::default();
        for m in &self.moves {
            match m {
                Move::Stab => s.stab += 1,
                Move::Destab { .. } => s.destab += 1,
                Move::FlipL { .. } => s.flip += 1,
                Move::ApplyIso(_) => s.iso += 1,
            }
        }
        s
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MoveSummary {
    pub stab: usize,
    pub destab: usize,
    pub flip: usize,
    pub iso: usize,
}

/// Incrementally built, checked sequence.
pub(crate) struct Chain {
    states: Vec<QuasiFormation>,
    moves: Vec<Move>,
}

impl Chain {
    pub(crate) fn new(start: &QuasiFormation) -> Self {
        Chain { states: vec![start.clone()], moves: Vec::new() }
    }

    pub(crate) fn current(&self) -> &QuasiFormation {
        self.states.last().expect("nonempty")
    }

    pub(crate) fn push(&mut self, m: Move) -> Result<()> {
        let next = m.apply_trusted(self.current()).map_err(|e| Error::InvalidMove { index: self.moves.len(), reason: e.to_string() })?;
        self.states.push(next);
        self.moves.push(m);
        Ok(())
    }

    /// Appends `seq`, reusing its recorded states when it was built by a chain.
    pub(crate) fn extend(&mut self, seq: MoveSequence) -> Result<()> {
        if &seq.start != self.current() {
            return Err(Error::InvalidMove { index: self.moves.len(), reason: "sequence starts elsewhere".into() });
        }
        match seq.trail {
            Some(t) if t.len() == seq.moves.len() + 1 => {
                self.states.extend(t.into_iter().skip(1));
                self.moves.extend(seq.moves);
            }
            _ => {
                for m in seq.moves {
                    self.push(m)?;
                }
            }
        }
        Ok(())
    }

    pub(crate) fn finish(self) -> MoveSequence {
        let start = self.states[0].clone();
        let end = self.current().clone();
        MoveSequence { start, end, moves: self.moves, trail: Some(self.states) }
    }
}

/// `A ⊕ B -> B ⊕ A`.
pub fn swap_iso(a: &EQForm, b: &EQForm) -> Result<FormIso> {
    let (ab, d1) = a.direct_sum(b)?;
    let (ba, d2) = b.direct_sum(a)?;
    let m = d2.inj[1].compose(&d1.proj[0])?.matrix().add(d2.inj[0].compose(&d1.proj[1])?.matrix())?;
    FormIso::new(&ab, &ba, m)
}

/// `p ⊕ seq`, moving in the right summand only.
pub fn lift_left(p: &QuasiFormation, seq: &MoveSequence) -> Result<MoveSequence> {
    let id = FormIso::identity(&p.form);
    let moves = seq
        .moves
        .iter()
        .map(|m| {
            Ok(match m {
                Move::Stab => Move::Stab,
                Move::Destab { iso, rest } => Move::Destab { iso: FormIso::direct_sum(&id, iso)?, rest: p.direct_sum(rest)? },
                Move::FlipL { iso, rest, inner } => {
                    let (rest, inner) = sum_with_lagrangian(&p.form, &p.lagrangian, rest, inner)?;
                    Move::FlipL { iso: FormIso::direct_sum(&id, iso)?, rest, inner }
                }
                Move::ApplyIso(h) => Move::ApplyIso(FormIso::direct_sum(&id, h)?),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let trail = match &seq.trail {
        Some(t) if t.len() == seq.moves.len() + 1 => Some(t.iter().map(|q| p.sum_parts(q)).collect::<Result<Vec<_>>>()?),
        _ => None,
    };
    Ok(MoveSequence { start: p.direct_sum(&seq.start)?, end: p.direct_sum(&seq.end)?, moves, trail })
}

/// `seq ⊕ p`, moving in the left summand only.
pub fn lift_right(seq: &MoveSequence, p: &QuasiFormation) -> Result<MoveSequence> {
    let start = seq.start.direct_sum(p)?;
    let mut chain = Chain::new(&start);
    chain.push(Move::ApplyIso(swap_iso(&seq.start.form, &p.form)?))?;
    chain.extend(lift_left(p, seq)?)?;
    chain.push(Move::ApplyIso(swap_iso(&p.form, &seq.end.form)?))?;
    Ok(chain.finish())
}
