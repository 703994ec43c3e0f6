// Cancelling a pair of critical cells joined by a single gradient path.

use morsecraft::morse::{cancel_pair, gradient_paths, MorseMatching};
use morsecraft::{fixtures, sx};

pub fn run_example() -> morsecraft::Result<()> {
    let k = fixtures::simplex(3);
    let pairs = vec![
        (sx![1, 2, 3], sx![0, 1, 2, 3]),
        (sx![0, 3], sx![0, 1, 3]),
        (sx![2, 3], sx![0, 2, 3]),
        (sx![3], sx![1, 3]),
        (sx![1], sx![0, 1]),
        (sx![2], sx![0, 2]),
    ];
    let v = MorseMatching::new(k, pairs, false);
    v.validate()?.into_result()?;
    println!("before: {:?}", v.morse_vector()?.c);
    let paths = gradient_paths(&v, &sx![0, 1, 2], &sx![1, 2])?;
    println!("gradient paths from 0-1-2 to 1-2: {paths:?}");
    let w = cancel_pair(&v, &sx![0, 1, 2], &sx![1, 2])?;
    println!("after: {:?}", w.morse_vector()?.c);
    assert_eq!(w.morse_vector()?.c, vec![1, 0, 0, 0]);
    Ok(())
}

fn main() -> morsecraft::Result<()> {
    run_example()
}
