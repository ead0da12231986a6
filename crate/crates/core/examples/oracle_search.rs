use qform::int::int;
use qform::oracle::{automorphisms, brute_si, enumerate_lagrangians, search_stable_form_isomorphism, SearchBudget};
use qform::stableclass::e_ab;
use qform::{AbGroup, EQForm};

fn main() -> qform::Result<()> {
    let h2 = EQForm::hyperbolic(1, &AbGroup::trivial());
    let budget = SearchBudget::default();
    println!("lagrangians of H_2: {}", enumerate_lagrangians(&h2, &budget)?.len());
    let (auts, complete) = automorphisms(&h2, &budget)?;
    println!("Aut(H_2): {} elements, complete {complete}", auts.len());

    let h4 = EQForm::hyperbolic(2, &AbGroup::trivial());
    println!("lagrangians of H_4 with entries in [-1, 1]: {}", enumerate_lagrangians(&h4, &SearchBudget { entry_bound: 1, ..budget })?.len());

    let wide = SearchBudget { entry_bound: 9, max_stab: 1, node_limit: 50_000_000 };
    let found = search_stable_form_isomorphism(&e_ab(&int(1), &int(6)), &e_ab(&int(2), &int(3)), &wide)?;
    println!("E_1,6 vs E_2,3: {}", found.label());
    if let Some(w) = found.found() {
        println!("k = {}, l = {}", w.k, w.l);
    }
    println!("brute SI(E_1,30): {}", brute_si(&int(1), &int(30)).size);
    Ok(())
}
