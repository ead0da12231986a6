//! Words in the group `RU(M, L)` generated by automorphisms keeping `L` and
//! by flips of a hyperbolic plane split off compatibly with `L`.

use crate::construct::fundmet::stabilize;
use crate::construct::metabolic::{double_to_hyperbolic, metabolic_basis, neg_isomorphism};
use crate::error::{Error, Result};
use crate::form::{EQForm, FormIso};
use crate::subgroup::SubgroupRep;

/// Generator of `RU(M, L)`.
#[derive(Clone, Debug)]
pub enum RUGenerator {
    /// Automorphism `f` with `f(L) = L`.
    Keep(FormIso),
    /// `I^{-1} ∘ (σ ⊕ id) ∘ I` for `I: M -> H_2 ⊕ M'` with `I(L) = ({0} × Z) ⊕ L'`,
    /// `σ` swapping the two basis vectors of `H_2`.
    Flip { iso: FormIso, rest: EQForm, inner: SubgroupRep },
}

/// `H_2 ⊕ M'` and `({0} × Z) ⊕ L'`.
pub(crate) fn split_plane(rest: &EQForm, inner: &SubgroupRep) -> Result<(EQForm, SubgroupRep)> {
    let h = EQForm::hyperbolic(1, rest.target());
    let (sum, ds) = h.direct_sum(rest)?;
    let mut gens = vec![ds.pair(&[0.into(), 1.into()], &rest.group().zero())?];
    for g in inner.generators() {
        gens.push(ds.pair(&h.group().zero(), g)?);
    }
    let s = SubgroupRep::new(sum.group(), &gens)?;
    Ok((sum, s))
}

impl RUGenerator {
    /// The automorphism this generator stands for.
    pub fn map(&self) -> Result<FormIso> {
        match self {
            RUGenerator::Keep(f) => Ok(f.clone()),
            RUGenerator::Flip { iso, .. } => {
                let target = iso.target();
                let n = target.dim();
                let mut perm: Vec<usize> = (0..n).collect();
                perm.swap(0, 1);
                let sigma = FormIso::permutation(target, target, &perm)?;
                iso.inverse()?.compose(&sigma.compose(iso)?)
            }
        }
    }

    /// Checks the generator against the ambient form and lagrangian.
    pub fn check(&self, form: &EQForm, l: &SubgroupRep) -> Result<()> {
        match self {
            RUGenerator::Keep(f) => {
                if f.source() != form || f.target() != form {
                    return Err(Error::InvalidWitness("kept automorphism acts on another form".into()));
                }
                if &f.apply_subgroup(l)? != l {
                    return Err(Error::InvalidWitness("kept automorphism moves the lagrangian".into()));
                }
            }
            RUGenerator::Flip { iso, rest, inner } => {
                if iso.source() != form {
                    return Err(Error::InvalidWitness("flip splits another form".into()));
                }
                if !rest.is_nonsingular() || !rest.classify(inner)?.t_lagrangian {
                    return Err(Error::InvalidWitness("flip complement is not metabolic with the given lagrangian".into()));
                }
                let (sum, split) = split_plane(rest, inner)?;
                if iso.target() != &sum {
                    return Err(Error::InvalidWitness("flip target is not H_2 plus the complement".into()));
                }
                if iso.apply_subgroup(l)? != split {
                    return Err(Error::InvalidWitness("flip does not split the lagrangian".into()));
                }
            }
        }
        Ok(())
    }

    pub fn inverse(&self) -> Result<RUGenerator> {
        Ok(match self {
            RUGenerator::Keep(f) => RUGenerator::Keep(f.inverse()?),
            flip => flip.clone(),
        })
    }

    /// Pulls the generator back along `f: N -> M`.
    fn pull_back(&self, f: &FormIso) -> Result<RUGenerator> {
        Ok(match self {
            RUGenerator::Keep(g) => RUGenerator::Keep(f.inverse()?.compose(&g.compose(f)?)?),
            RUGenerator::Flip { iso, rest, inner } => {
                RUGenerator::Flip { iso: iso.compose(f)?, rest: rest.clone(), inner: inner.clone() }
            }
        })
    }

    /// Extends by the identity on a summand `E` placed in front.
    fn prefix(&self, e: &EQForm, le: &SubgroupRep) -> Result<RUGenerator> {
        Ok(match self {
            RUGenerator::Keep(g) => RUGenerator::Keep(FormIso::direct_sum(&FormIso::identity(e), g)?),
            RUGenerator::Flip { iso, rest, inner } => {
                let (new_rest, new_inner) = sum_with_lagrangian(e, le, rest, inner)?;
                let widened = FormIso::direct_sum(&FormIso::identity(e), iso)?;
                // E ⊕ H_2 ⊕ M'  ->  H_2 ⊕ E ⊕ M'
                let (target, _) = split_plane(&new_rest, &new_inner)?;
                let n = e.dim();
                let total = target.dim();
                let perm: Vec<usize> = (0..total)
                    .map(|j| if j < n { j + 2 } else if j < n + 2 { j - n } else { j })
                    .collect();
                let p = FormIso::permutation(widened.target(), &target, &perm)?;
                RUGenerator::Flip { iso: p.compose(&widened)?, rest: new_rest, inner: new_inner }
            }
        })
    }
}

/// `(E ⊕ M, L_E ⊕ L)` for free forms.
pub(crate) fn sum_with_lagrangian(
    e: &EQForm,
    le: &SubgroupRep,
    m: &EQForm,
    l: &SubgroupRep,
) -> Result<(EQForm, SubgroupRep)> {
    let (sum, ds) = e.direct_sum(m)?;
    let mut gens = Vec::new();
    for g in le.generators() {
        gens.push(ds.pair(g, &m.group().zero())?);
    }
    for g in l.generators() {
        gens.push(ds.pair(&e.group().zero(), g)?);
    }
    let s = SubgroupRep::new(sum.group(), &gens)?;
    Ok((sum, s))
}

/// Ordered product of generators of `RU(form, lagrangian)`.
///
/// The word `[g_1, ..., g_n]` evaluates to `g_1 ∘ g_2 ∘ ... ∘ g_n`.
#[derive(Clone, Debug)]
pub struct RUWord {
    pub form: EQForm,
    pub lagrangian: SubgroupRep,
    pub generators: Vec<RUGenerator>,
}

impl RUWord {
    pub fn validate(&self) -> Result<()> {
        for (i, g) in self.generators.iter().enumerate() {
            g.check(&self.form, &self.lagrangian)
                .map_err(|e| Error::InvalidWitness(format!("generator {i}: {e}")))?;
        }
        Ok(())
    }

    /// Validates every generator and returns the product.
    pub fn evaluate(&self) -> Result<FormIso> {
        self.validate()?;
        let mut acc = FormIso::identity(&self.form);
        for g in &self.generators {
            acc = acc.compose(&g.map()?)?;
        }
        Ok(acc)
    }

    pub fn inverse(&self) -> Result<RUWord> {
        let generators = self.generators.iter().rev().map(RUGenerator::inverse).collect::<Result<Vec<_>>>()?;
        Ok(RUWord { form: self.form.clone(), lagrangian: self.lagrangian.clone(), generators })
    }

    /// The conjugate word `f^{-1} w f` in `RU(N, f^{-1}(L))` for `f: N -> M`.
    pub fn pull_back(&self, f: &FormIso) -> Result<RUWord> {
        if f.target() != &self.form {
            return Err(Error::InvalidWitness("pulling back along a map into another form".into()));
        }
        let lagrangian = f.inverse()?.apply_subgroup(&self.lagrangian)?;
        let generators = self.generators.iter().map(|g| g.pull_back(f)).collect::<Result<Vec<_>>>()?;
        Ok(RUWord { form: f.source().clone(), lagrangian, generators })
    }

    /// `id_E ⊕ w` in `RU(E ⊕ M, L_E ⊕ L)`.
    pub fn prefix(&self, e: &EQForm, le: &SubgroupRep) -> Result<RUWord> {
        let (form, lagrangian) = sum_with_lagrangian(e, le, &self.form, &self.lagrangian)?;
        let generators = self.generators.iter().map(|g| g.prefix(e, le)).collect::<Result<Vec<_>>>()?;
        Ok(RUWord { form, lagrangian, generators })
    }

    pub fn concat(&self, other: &RUWord) -> Result<RUWord> {
        if self.form != other.form || self.lagrangian != other.lagrangian {
            return Err(Error::InvalidWitness("concatenating words of different groups".into()));
        }
        let mut generators = self.generators.clone();
        generators.extend(other.generators.iter().cloned());
        Ok(RUWord { form: self.form.clone(), lagrangian: self.lagrangian.clone(), generators })
    }
}

/// Flip of the `i`-th plane of `A ⊕ H_{2k}` relative to `L_A ⊕ ({0} × Z^k)`.
pub fn plane_flip(base: &EQForm, base_lagrangian: &SubgroupRep, k: usize, i: usize) -> Result<RUGenerator> {
    let (ambient, _) = stabilize(base, base_lagrangian, k)?;
    let (rest, inner) = stabilize(base, base_lagrangian, k - 1)?;
    let (target, _) = split_plane(&rest, &inner)?;
    let n = base.dim();
    let rank_among = |j: usize| if j < i { j } else { j - 1 };
    let perm: Vec<usize> = (0..n + 2 * k)
        .map(|c| {
            if c < n {
                c + 2
            } else if c < n + k {
                let j = c - n;
                if j == i { 0 } else { 2 + n + rank_among(j) }
            } else {
                let j = c - n - k;
                if j == i { 1 } else { 2 + n + (k - 1) + rank_among(j) }
            }
        })
        .collect();
    let iso = FormIso::permutation(&ambient, &target, &perm)?;
    Ok(RUGenerator::Flip { iso, rest, inner })
}

/// The flips of all `k` planes; their product is `id_A ⊕ σ ⊕ ... ⊕ σ`.
pub fn all_plane_flips(base: &EQForm, base_lagrangian: &SubgroupRep, k: usize) -> Result<Vec<RUGenerator>> {
    (0..k).map(|i| plane_flip(base, base_lagrangian, k, i)).collect()
}

/// Word in `RU(M ⊕ (-M), L ⊕ L)` evaluating to `Φ ⊕ Φ`.
fn double_word(form: &EQForm, l: &SubgroupRep, phi: &FormIso) -> Result<RUWord> {
    let k = metabolic_basis(form, l)?.k();
    let neg = form.negative();
    let (w, _) = form.direct_sum(&neg)?;

    // frame F: M ⊕ (-M) -> M ⊕ H_{2k}
    let n = form.dim();
    let swap_perm: Vec<usize> = (0..2 * n).map(|j| if j < n { j + n } else { j - n }).collect();
    let swapped = neg.sum(form)?;
    let swap = FormIso::permutation(&w, &swapped, &swap_perm)?;
    let j_inv = neg_isomorphism(form, l)?.inverse()?;
    let untwist = FormIso::direct_sum(&j_inv, &FormIso::identity(form))?;
    let frame = double_to_hyperbolic(form, l)?.compose(&untwist.compose(&swap)?)?;

    let (big, big_l) = stabilize(form, l, k)?;
    let flips = all_plane_flips(form, l, k)?;
    let mut s = FormIso::identity(&big);
    for g in &flips {
        s = s.compose(&g.map()?)?;
    }
    let phi_neg = FormIso::new(&neg, &neg, phi.matrix().clone())?;
    let phi2 = FormIso::direct_sum(phi, &phi_neg)?;
    let conj = frame.compose(&phi2.compose(&frame.inverse()?)?)?;
    let kept = s.compose(&conj.compose(&s)?)?;
    let mut generators = flips.clone();
    generators.push(RUGenerator::Keep(kept));
    generators.extend(flips);
    let word = RUWord { form: big, lagrangian: big_l, generators };
    word.pull_back(&frame)
}

/// Word in `RU(M ⊕ M ⊕ (-M), L ⊕ L ⊕ L)` evaluating to `Φ ⊕ Φ^{-1} ⊕ id`.
///
/// `Φ` is any automorphism of the free metabolic form `M`; it need not preserve `L`.
pub fn ru_wall_witness(form: &EQForm, l: &SubgroupRep, phi: &FormIso) -> Result<RUWord> {
    if phi.source() != form || phi.target() != form {
        return Err(Error::hyp("automorphism must act on the given form"));
    }
    let dw = double_word(form, l, phi)?;
    let inner = dw.prefix(form, l)?;
    let n = form.dim();
    let triple = inner.form.clone();
    let perm: Vec<usize> = (0..3 * n).map(|j| if j < n { j + n } else if j < 2 * n { j - n } else { j }).collect();
    let p = FormIso::permutation(&triple, &triple, &perm)?;
    let outer = inner.pull_back(&p)?;
    outer.concat(&inner.inverse()?)
}

/// `Φ ⊕ Φ^{-1} ⊕ id` on `M ⊕ M ⊕ (-M)`.
pub fn wall_target(form: &EQForm, phi: &FormIso) -> Result<FormIso> {
    let neg = form.negative();
    let a = FormIso::direct_sum(phi, &phi.inverse()?)?;
    FormIso::direct_sum(&a, &FormIso::identity(&neg))
}
