use qform::int::int;
use qform::normal_form::smith;
use qform::{AbGroup, IntMatrix, SubgroupRep};

fn main() -> qform::Result<()> {
    // Z^3 modulo the rows of a relation matrix
    let rel = IntMatrix::from_i64(2, 3, &[2, 4, 4, -6, 6, 12]);
    let s = smith(&rel);
    println!("invariant factors: {:?}", s.invariants().iter().map(ToString::to_string).collect::<Vec<_>>());
    let q = AbGroup::from_relations(3, &rel.row_vecs())?;
    println!("quotient: free rank {}, torsion {:?}", q.group.free_rank(), q.group.torsion());

    let g = AbGroup::new(1, vec![int(2), int(6)])?;
    println!("Z + Z/2 + Z/6 has {} generators", g.dim());
    let x = g.reduce(&[int(5), int(3), int(-1)])?;
    println!("reduced element: {x:?}");

    let z3 = AbGroup::free(3);
    let sub = SubgroupRep::new(&z3, &[vec![int(2), int(0), int(0)], vec![int(1), int(1), int(0)]])?;
    println!("lattice: {:?}", sub.lattice());
    println!("direct summand: {}", sub.is_direct_summand()?);
    let quot = sub.quotient()?;
    println!("Z^3 / S: free rank {}, torsion {:?}", quot.group.free_rank(), quot.group.torsion());
    Ok(())
}
