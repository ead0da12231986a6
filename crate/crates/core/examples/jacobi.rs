use qform::lmonoid::jacobi_witness;
use qform::oracle::class_invariants;
use qform::samples::{rng, MetabolicSample};
use qform::AbGroup;

fn main() -> qform::Result<()> {
    let mut r = rng(4242);
    let s = MetabolicSample::random(&mut r, &AbGroup::free(1), &[0], 1)?;
    let l = s.random_automorphism(&mut r, 4)?.apply_subgroup(&s.lagrangian)?;
    let v = s.random_summand(&mut r)?;

    let w = jacobi_witness(&s.form, &s.lagrangian, &l, &v)?;
    w.sequence.replay()?;
    println!("{} planes added, {} moves", w.stabilization, w.sequence.moves.len());
    println!("{:?}", w.sequence.summary());
    let (image, g) = class_invariants(&w.sequence.end)?;
    println!("mu(V) = {:?}, gcd of lambda on V = {g}", image.generators());
    Ok(())
}
