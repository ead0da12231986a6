use qform::construct::{ru_wall_witness, wall_target, RUGenerator};
use qform::samples::{rng, MetabolicSample};
use qform::AbGroup;

fn main() -> qform::Result<()> {
    let mut r = rng(8);
    let s = MetabolicSample::random(&mut r, &AbGroup::trivial(), &[], 2)?;
    let phi = s.random_automorphism(&mut r, 5)?;
    let moved = phi.apply_subgroup(&s.lagrangian)? != s.lagrangian;
    println!("phi moves the lagrangian: {moved}");

    let word = ru_wall_witness(&s.form, &s.lagrangian, &phi)?;
    word.validate()?;
    let flips = word.generators.iter().filter(|g| matches!(g, RUGenerator::Flip { .. })).count();
    println!("{} generators, {} flips", word.generators.len(), flips);
    assert_eq!(word.evaluate()?, wall_target(&s.form, &phi)?);
    println!("word evaluates to phi + phi^-1 + id on rank {}", word.form.rank());
    Ok(())
}
