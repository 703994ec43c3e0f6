// Carrying a Morse matching through stellar and derived subdivisions
// without changing its critical counts.

use morsecraft::fixtures;
use morsecraft::lift::{lift_matching, lift_through_derived};
use morsecraft::morse::{is_endo_collapsible, random_morse, SearchBudget};

pub fn run_example() -> morsecraft::Result<()> {
    let torus = fixtures::torus();
    let v = random_morse(&torus, 3, 10)?;
    let face = torus.facets()[0].clone();
    let lift = lift_matching(&torus, &v, &face)?;
    println!("torus {:?} -> starred {:?}", v.morse_vector()?.c, lift.matching.morse_vector()?.c);
    for (old, new) in &lift.critical_image {
        println!("  critical {old} now {new}");
    }

    // an endo-collapsible ball stays endo-collapsible under derived subdivision
    let ball = fixtures::stacked_ball(3, 3, 0);
    let endo = is_endo_collapsible(&ball, &SearchBudget::default())?.found().expect("stacked balls are endo-collapsible");
    let l = lift_through_derived(&ball, &endo, 1)?;
    println!("ball c_int {:?} -> sd c_int {:?}", endo.morse_vector()?.c_int, l.matching.morse_vector()?.c_int);
    assert_eq!(endo.morse_vector()?.c_int, l.matching.morse_vector()?.c_int);
    Ok(())
}

fn main() -> morsecraft::Result<()> {
    run_example()
}
