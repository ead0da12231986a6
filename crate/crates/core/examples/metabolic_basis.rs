use qform::construct::{is_hyperbolic_with_witness, metabolic_basis};
use qform::samples::{rng, MetabolicSample};
use qform::{AbGroup, EQForm, SubgroupRep};

fn main() -> qform::Result<()> {
    let mut r = rng(1);
    let s = MetabolicSample::random(&mut r, &AbGroup::free(1), &[1], 1)?;
    println!("lambda:\n{:?}", s.form.lambda().row_vecs());
    let b = metabolic_basis(&s.form, &s.lagrangian)?;
    println!("e = {:?}", b.e);
    println!("f = {:?}", b.f);
    println!("d = {:?}", b.d);
    assert_eq!(s.form.lambda().congruence(&b.change)?, b.normal_lambda());

    let h = EQForm::hyperbolic(2, &AbGroup::trivial());
    let l = SubgroupRep::new(h.group(), &[vec![1.into(), 1.into(), 0.into(), 0.into()], vec![0.into(), 0.into(), 1.into(), (-1).into()]])?;
    let w = is_hyperbolic_with_witness(&h, &l)?;
    println!("hyperbolic witness:\n{:?}", w.matrix().row_vecs());
    Ok(())
}
