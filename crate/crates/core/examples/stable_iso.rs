use qform::construct::stable_lagrangian_iso;
use qform::samples::{rng, MetabolicSample};
use qform::{AbGroup, MatchMode};

fn main() -> qform::Result<()> {
    let mut r = rng(3);
    let q = AbGroup::free(2);
    let a = MetabolicSample::random(&mut r, &q, &[0, 1], 0)?;
    let b = MetabolicSample::random(&mut r, &q, &[0, 1], 1)?;
    println!("ranks {} and {}", a.form.rank(), b.form.rank());

    let s = stable_lagrangian_iso(&a.form, &a.lagrangian, &b.form, &b.lagrangian, MatchMode::Stable)?;
    s.verify()?;
    println!("stable: k = {}, l = {}", s.k, s.l);

    let c = MetabolicSample::random(&mut r, &q, &[0, 1], 0)?;
    let t = stable_lagrangian_iso(&a.form, &a.lagrangian, &c.form, &c.lagrangian, MatchMode::Strict)?;
    t.verify()?;
    println!("strict iso:\n{:?}", t.iso.matrix().row_vecs());
    Ok(())
}
