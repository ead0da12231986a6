//! Passing between quasi-formations with torsion and their free quotients.

use super::QuasiFormation;
use crate::error::{Error, Result};
use crate::form::{EQForm, FormIso};
use crate::group::AbGroup;
use crate::matrix::IntMatrix;
use crate::normal_form::unimodular_inverse;
use crate::subgroup::SubgroupRep;

/// `(M / Tor; image of L, image of V ⊕ Tor)`.
pub fn bar_reduce(q: &QuasiFormation) -> Result<QuasiFormation> {
    let f = q.form();
    let g = f.group();
    let r = g.free_rank();
    let mu = f.mu().matrix();
    for t in g.torsion_indices() {
        if !f.target().is_zero_element(&mu.col(t)) {
            return Err(Error::hyp("mu must vanish on torsion"));
        }
    }
    let qd = f.target().dim();
    let form = EQForm::from_parts(AbGroup::free(r), f.lambda().block(0, 0, r, r), f.target().clone(), mu.block(0, 0, qd, r), f.v().map(<[u8]>::to_vec))?;
    let truncate = |s: &SubgroupRep| -> Result<SubgroupRep> {
        let gens: Vec<_> = s.generators().iter().map(|x| x[..r].to_vec()).collect();
        SubgroupRep::new(form.group(), &gens)
    };
    QuasiFormation::new(form.clone(), truncate(q.lagrangian())?, truncate(q.summand())?)
}

/// `(M ⊕ R; L ⊕ R, V ⊕ 0)` with `R = (R, 0, 0)` for a finite group `R`.
pub fn unbar(q: &QuasiFormation, torsion: &AbGroup) -> Result<QuasiFormation> {
    if torsion.free_rank() != 0 {
        return Err(Error::InvalidGroup("R must be finite".into()));
    }
    if !q.form().is_free() {
        return Err(Error::hyp("form must be free"));
    }
    let t = q.form().target();
    let rform = EQForm::from_parts(
        torsion.clone(),
        IntMatrix::zeros(torsion.dim(), torsion.dim()),
        t.clone(),
        IntMatrix::zeros(t.dim(), torsion.dim()),
        q.form().v().map(<[u8]>::to_vec),
    )?;
    let (form, ds) = q.form().direct_sum(&rform)?;
    let zero_r = torsion.zero();
    let zero_m = q.form().group().zero();
    let mut l: Vec<_> = q.lagrangian().generators().iter().map(|x| ds.pair(x, &zero_r)).collect::<Result<_>>()?;
    for g in torsion.generators() {
        l.push(ds.pair(&zero_m, &g)?);
    }
    let v: Vec<_> = q.summand().generators().iter().map(|x| ds.pair(x, &zero_r)).collect::<Result<_>>()?;
    let l = SubgroupRep::new(form.group(), &l)?;
    let v = SubgroupRep::new(form.group(), &v)?;
    QuasiFormation::new(form, l, v)
}

/// Isomorphism `unbar(bar_reduce(q), Tor M) -> q` from a section of `M -> M / Tor` through `V`.
pub fn splitting_iso(q: &QuasiFormation) -> Result<FormIso> {
    let reduced = bar_reduce(q)?;
    let g = q.form().group();
    let rebuilt = unbar(&reduced, &g.torsion_only())?;
    let (r, n) = (g.free_rank(), g.dim());
    let v = q.summand().basis()?;
    let vbar: Vec<_> = v.iter().map(|x| x[..r].to_vec()).collect();
    let c = SubgroupRep::new(&AbGroup::free(r), &vbar)?.complement()?.basis()?;
    let mut lifted = v.clone();
    let mut reduced_cols = vbar;
    for x in &c {
        let mut y = x.clone();
        y.resize(n, 0.into());
        lifted.push(y);
        reduced_cols.push(x.clone());
    }
    let section = IntMatrix::from_cols(&lifted, n)?.mul(&unimodular_inverse(&IntMatrix::from_cols(&reduced_cols, r)?)?)?;
    let mut m = IntMatrix::zeros(n, n);
    m.set_block(0, 0, &section);
    for t in r..n {
        m[(t, t)] = 1.into();
    }
    let iso = FormIso::new(rebuilt.form(), q.form(), m)?;
    if &rebuilt.apply_iso(&iso)? != q {
        return Err(Error::InvalidWitness("splitting does not carry the subgroups onto each other".into()));
    }
    Ok(iso)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int::ints;

    #[test]
    fn reduce_form_with_z3() {
        let g = AbGroup::new(2, vec![3.into()]).unwrap();
        let f = EQForm::from_parts(
            g.clone(),
            IntMatrix::from_i64(3, 3, &[0, 1, 0, 1, 0, 0, 0, 0, 0]),
            AbGroup::trivial(),
            IntMatrix::zeros(0, 3),
            None,
        )
        .unwrap();
        let l = SubgroupRep::new(&g, &[ints(&[1, 0, 0]), ints(&[0, 0, 1])]).unwrap();
        let v = SubgroupRep::new(&g, &[ints(&[0, 1, 0])]).unwrap();
        let q = QuasiFormation::new(f, l, v).unwrap();
        let b = bar_reduce(&q).unwrap();
        assert_eq!(b.lagrangian().generators(), &[ints(&[1, 0])]);
        assert_eq!(b.summand().generators(), &[ints(&[0, 1])]);
        let iso = splitting_iso(&q).unwrap();
        assert_eq!(iso.target(), q.form());
        assert_eq!(bar_reduce(&b).unwrap(), b);
    }

    #[test]
    fn summand_with_torsion_component() {
        let g = AbGroup::new(2, vec![4.into()]).unwrap();
        let f = EQForm::from_parts(
            g.clone(),
            IntMatrix::from_i64(3, 3, &[0, 1, 0, 1, 0, 0, 0, 0, 0]),
            AbGroup::trivial(),
            IntMatrix::zeros(0, 3),
            None,
        )
        .unwrap();
        let l = SubgroupRep::new(&g, &[ints(&[1, 0, 0]), ints(&[0, 0, 1])]).unwrap();
        let v = SubgroupRep::new(&g, &[ints(&[1, 1, 3])]).unwrap();
        let q = QuasiFormation::new(f, l, v).unwrap();
        splitting_iso(&q).unwrap();
    }
}
