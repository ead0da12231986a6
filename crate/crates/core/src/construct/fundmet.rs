//! Stable isomorphism of metabolic forms carrying one lagrangian onto another.

use num_traits::Zero;

use crate::construct::metabolic::{basis_matrix, dual_basis, parity_reduce};
use crate::error::{Error, Result};
use crate::form::{EQForm, FormIso};
use crate::group::{AbGroup, GroupHom};
use crate::int::Int;
use crate::matrix::IntMatrix;
use crate::normal_form::unimodular_inverse;
use crate::subgroup::SubgroupRep;
use crate::surjection::{match_surjections, MatchMode};

/// `I: M ⊕ H_{2k} -> M' ⊕ H_{2l}` with `I(L ⊕ ({0} × Z^k)) = L' ⊕ ({0} × Z^l)`.
#[derive(Clone, Debug)]
pub struct StableIso {
    pub k: usize,
    pub l: usize,
    pub iso: FormIso,
    pub source_lagrangian: SubgroupRep,
    pub target_lagrangian: SubgroupRep,
}

/// `M ⊕ H_{2k}` and `L ⊕ ({0} × Z^k)`.
pub fn stabilize(form: &EQForm, l: &SubgroupRep, k: usize) -> Result<(EQForm, SubgroupRep)> {
    let h = EQForm::hyperbolic(k, form.target());
    let big = form.sum(&h)?;
    let n = form.dim();
    let mut gens: Vec<Vec<Int>> = l
        .generators()
        .iter()
        .map(|g| {
            let mut v = g.clone();
            v.resize(n + 2 * k, Int::zero());
            v
        })
        .collect();
    gens.extend((0..k).map(|i| big.group().basis_vector(n + k + i)));
    let lt = SubgroupRep::new(big.group(), &gens)?;
    Ok((big, lt))
}

fn check_hypotheses(form: &EQForm, l: &SubgroupRep) -> Result<()> {
    if !form.is_free() {
        return Err(Error::hyp("form must be free"));
    }
    if !form.is_nonsingular() {
        return Err(Error::hyp("form must be nonsingular"));
    }
    if l.ambient() != form.group() || !form.is_free_lagrangian(l)? {
        return Err(Error::hyp("subgroup must be a free lagrangian"));
    }
    if !form.is_full() {
        return Err(Error::hyp("form must be full"));
    }
    match form.is_geometric() {
        Ok(true) => Ok(()),
        Ok(false) => Err(Error::hyp("form must be geometric")),
        Err(Error::VMissing) => Err(Error::VMissing),
        Err(e) => Err(e),
    }
}

/// Builds the stable isomorphism between two full geometric metabolic forms.
///
/// With [`MatchMode::Strict`] no hyperbolic summands are added; this needs a
/// free `Q` and forms of equal rank.
pub fn stable_lagrangian_iso(
    form: &EQForm,
    l: &SubgroupRep,
    form2: &EQForm,
    l2: &SubgroupRep,
    mode: MatchMode,
) -> Result<StableIso> {
    check_hypotheses(form, l)?;
    check_hypotheses(form2, l2)?;
    if form.target() != form2.target() {
        return Err(Error::hyp("forms take values in different groups"));
    }
    if form.v() != form2.v() {
        return Err(Error::hyp("forms carry different v"));
    }
    if mode == MatchMode::Strict && form.rank() != form2.rank() {
        return Err(Error::hyp("strict mode needs forms of equal rank"));
    }

    let nb = l.complement()?.basis()?;
    let nb2 = l2.complement()?.basis()?;
    let restrict = |f: &EQForm, basis: &[Vec<Int>]| -> Result<GroupHom> {
        let cols = basis.iter().map(|x| f.mu_of(x)).collect::<Result<Vec<_>>>()?;
        GroupHom::new(AbGroup::free(basis.len()), f.target().clone(), IntMatrix::from_cols(&cols, f.target().dim())?)
    };
    let m = match_surjections(&restrict(form, &nb)?, &restrict(form2, &nb2)?, mode)?;
    let (k, kk) = (m.extra_source, m.extra_target);

    let (big, lt) = stabilize(form, l, k)?;
    let (big2, lt2) = stabilize(form2, l2, kk)?;
    let (n, n2) = (form.dim(), form2.dim());

    // complement of the stabilized lagrangian: N ⊕ (Z^k × {0})
    let mut f: Vec<Vec<Int>> = nb
        .iter()
        .map(|x| {
            let mut v = x.clone();
            v.resize(big.dim(), Int::zero());
            v
        })
        .collect();
    f.extend((0..k).map(|i| big.group().basis_vector(n + i)));
    let mut target_basis: Vec<Vec<Int>> = nb2
        .iter()
        .map(|x| {
            let mut v = x.clone();
            v.resize(big2.dim(), Int::zero());
            v
        })
        .collect();
    target_basis.extend((0..kk).map(|i| big2.group().basis_vector(n2 + i)));
    let h = m.iso.matrix();
    let f2: Vec<Vec<Int>> = (0..f.len())
        .map(|i| {
            let mut v = vec![Int::zero(); big2.dim()];
            for (r, t) in target_basis.iter().enumerate() {
                crate::construct::metabolic::axpy(&mut v, &h[(r, i)], t);
            }
            v
        })
        .collect();

    let e = dual_basis(&big, &lt.basis()?, &f)?;
    let e2 = dual_basis(&big2, &lt2.basis()?, &f2)?;
    let (fb, d) = parity_reduce(&big, &e, &f)?;
    let (fb2, d2) = parity_reduce(&big2, &e2, &f2)?;
    if d != d2 {
        return Err(Error::hyp("parities of the adapted bases disagree"));
    }
    let b = basis_matrix(&big, &e, &fb)?;
    let b2 = basis_matrix(&big2, &e2, &fb2)?;
    let iso = FormIso::new(&big, &big2, b2.mul(&unimodular_inverse(&b)?)?)?;
    if iso.apply_subgroup(&lt)? != lt2 {
        return Err(Error::InvalidWitness("isomorphism does not carry the lagrangians onto each other".into()));
    }
    Ok(StableIso { k, l: kk, iso, source_lagrangian: lt, target_lagrangian: lt2 })
}

impl StableIso {
    /// Re-checks the isomorphism and the lagrangian condition.
    pub fn verify(&self) -> Result<()> {
        let again = FormIso::new(self.iso.source(), self.iso.target(), self.iso.matrix().clone())?;
        if again.apply_subgroup(&self.source_lagrangian)? != self.target_lagrangian {
            return Err(Error::InvalidWitness("lagrangians are not matched".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int::ints;

    fn zero_form_over_z() -> (EQForm, SubgroupRep) {
        let f = EQForm::from_parts(
            AbGroup::free(2),
            IntMatrix::from_i64(2, 2, &[0, 1, 1, 0]),
            AbGroup::free(1),
            IntMatrix::from_i64(1, 2, &[0, 1]),
            Some(vec![0]),
        )
        .unwrap();
        let l = SubgroupRep::new(f.group(), &[ints(&[1, 0])]).unwrap();
        (f, l)
    }

    #[test]
    fn self_match_in_both_modes() {
        let (f, l) = zero_form_over_z();
        let s = stable_lagrangian_iso(&f, &l, &f, &l, MatchMode::Stable).unwrap();
        s.verify().unwrap();
        assert_eq!(s.k, s.l);
        let s = stable_lagrangian_iso(&f, &l, &f, &l, MatchMode::Strict).unwrap();
        assert_eq!((s.k, s.l), (0, 0));
        s.verify().unwrap();
    }

    #[test]
    fn missing_v_is_reported() {
        let (f, l) = zero_form_over_z();
        let g = f.with_v(None).unwrap();
        assert_eq!(stable_lagrangian_iso(&g, &l, &g, &l, MatchMode::Stable).unwrap_err(), Error::VMissing);
    }

    #[test]
    fn non_full_rejected() {
        let h = EQForm::hyperbolic(1, &AbGroup::free(1)).with_v(Some(vec![0])).unwrap();
        let l = SubgroupRep::new(h.group(), &[ints(&[1, 0])]).unwrap();
        assert!(matches!(stable_lagrangian_iso(&h, &l, &h, &l, MatchMode::Stable), Err(Error::Hypothesis(_))));
    }
}
