// Writing and re-checking matching certificates and facet files.

use morsecraft::io::{self, MatchingCertificate};
use morsecraft::morse::random_morse;
use morsecraft::fixtures;

pub fn run_example() -> morsecraft::Result<()> {
    let k = fixtures::octahedron();
    let text = io::format_facets(&k);
    assert_eq!(io::parse_facets(&text)?, k);
    println!("octahedron hash {}", io::complex_hash(&k));

    let v = random_morse(&k, 0, 4)?;
    let json = io::to_json(&MatchingCertificate::from_matching(&v)?)?;
    let back: MatchingCertificate = io::from_json(&json)?;
    assert_eq!(back.to_matching(&k)?, v);
    // the certificate refuses a different complex
    assert!(back.to_matching(&fixtures::simplex_boundary(3)).is_err());
    println!("{json}");
    Ok(())
}

fn main() -> morsecraft::Result<()> {
    run_example()
}
