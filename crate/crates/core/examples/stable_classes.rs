use qform::int::int;
use qform::stableclass::{kappa, kappa_ab, e_ab, si1_witness, si_enumerate, stable_class_report};

fn main() -> qform::Result<()> {
    for (a, b) in [(1, 6), (2, 3), (1, 30), (0, 5), (4, 4), (-3, 10)] {
        let si = si_enumerate(&int(a), &int(b));
        let reps: Vec<String> = si.pairs.iter().map(|(c, d)| format!("({c},{d})")).collect();
        println!("SI(E_{a},{b}) = {} : {}", si.size, reps.join(" "));
    }

    let w = si1_witness(&int(2), &int(3))?;
    println!("E_6,1 + H_2 -> E_2,3 + H_2:\n{:?}", w.matrix().row_vecs());

    let (k, _) = kappa(&e_ab(&int(4), &int(6)))?;
    println!("kappa(E_4,6) = {:?} / {:?}; formula {:?}", k.lambda().row_vecs(), k.mu().matrix().row_vecs(), kappa_ab(&int(4), &int(6)).lambda().row_vecs());

    for rk in [0, 2] {
        println!("rank {rk}: {:?}", stable_class_report(rk, &int(0), &int(0))?);
    }
    println!("rank 1, (5, 42): {:?}", stable_class_report(1, &int(5), &int(42))?);
    Ok(())
}
