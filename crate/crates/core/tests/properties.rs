use proptest::prelude::*;

use morsecraft::io::{self, MatchingCertificate};
use morsecraft::lift::{lift_matching, lift_through_derived};
use morsecraft::morse::{random_boundary_critical, random_morse, CollapseSequence};
use morsecraft::subdivision::{bistellar_flip, derived_subdivision, star_face, SubdivisionMap};
use morsecraft::{betti_gf2, fixtures, Simplex, SimplicialComplex};

fn alternating(v: &[usize]) -> i64 {
    v.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) }).sum()
}

fn complex() -> impl Strategy<Value = SimplicialComplex> {
    (4usize..9, 1usize..4, 1usize..8, any::<u64>()).prop_map(|(n, d, f, s)| fixtures::random_complex(n, d, f, s))
}

fn ball() -> impl Strategy<Value = SimplicialComplex> {
    (2usize..4, 1usize..7, any::<u64>()).prop_map(|(d, n, s)| fixtures::stacked_ball(d, n, s))
}

fn pick<'a>(faces: &'a [Simplex], i: usize) -> Option<&'a Simplex> {
    let big: Vec<&Simplex> = faces.iter().filter(|f| f.len() >= 2).collect();
    (!big.is_empty()).then(|| big[i % big.len()])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn euler_poincare(k in complex()) {
        let f = k.f_vector().unwrap();
        prop_assert_eq!(alternating(&f), alternating(&betti_gf2(&k).unwrap()));
    }

    #[test]
    fn morse_inequalities(k in complex(), seed in any::<u64>()) {
        let v = random_morse(&k, seed, 2).unwrap();
        prop_assert!(v.validate().unwrap().is_valid());
        let c = v.morse_vector().unwrap().c;
        let b = betti_gf2(&k).unwrap();
        prop_assert!(c.iter().zip(&b).all(|(c, b)| c >= b));
        prop_assert_eq!(alternating(&c), alternating(&b));
        // strong form: partial alternating sums from the top
        for top in 0..c.len() {
            let tail = |v: &[usize]| -> i64 {
                (0..=top).map(|i| if (top - i) % 2 == 0 { v[i] as i64 } else { -(v[i] as i64) }).sum()
            };
            prop_assert!(tail(&c) >= tail(&b));
        }
    }

    #[test]
    fn morse_function_induces_the_matching(k in complex(), seed in any::<u64>()) {
        let v = random_morse(&k, seed, 1).unwrap();
        let f = v.morse_function().unwrap();
        for (a, b) in v.pairs() {
            prop_assert!(f[a] >= f[b]);
        }
        for s in k.index().unwrap().faces() {
            for t in s.boundary() {
                let matched = v.pairs().iter().any(|(a, b)| a == &t && b == s);
                prop_assert!(matched || f[&t] < f[s]);
            }
        }
    }

    #[test]
    fn lift_preserves_counts(k in complex(), seed in any::<u64>(), i in any::<usize>()) {
        let v = random_morse(&k, seed, 1).unwrap();
        let faces = k.index().unwrap().faces().to_vec();
        if let Some(s) = pick(&faces, i) {
            let l = lift_matching(&k, &v, s).unwrap();
            prop_assert!(l.matching.validate().unwrap().is_valid());
            prop_assert_eq!(l.matching.morse_vector().unwrap().c, v.morse_vector().unwrap().c);
            l.map.verify().unwrap();
        }
    }

    #[test]
    fn boundary_critical_lift_keeps_interior_counts(b in ball(), seed in any::<u64>()) {
        let v = random_boundary_critical(&b, seed, 1).unwrap();
        let l = lift_through_derived(&b, &v, 1).unwrap();
        prop_assert!(l.matching.is_boundary_critical());
        prop_assert!(l.matching.validate().unwrap().is_valid());
        prop_assert_eq!(l.matching.morse_vector().unwrap().c_int, v.morse_vector().unwrap().c_int);
    }

    #[test]
    fn subdivision_preserves_homology(k in complex(), i in any::<usize>()) {
        let b = betti_gf2(&k).unwrap();
        let (sd, map) = derived_subdivision(&k, 1).unwrap();
        map.verify().unwrap();
        prop_assert_eq!(betti_gf2(&sd).unwrap(), b.clone());
        let faces = k.index().unwrap().faces().to_vec();
        if let Some(s) = pick(&faces, i) {
            let (st, _) = star_face(&k, s).unwrap();
            prop_assert_eq!(betti_gf2(&st).unwrap(), b);
        }
    }

    #[test]
    fn flips_are_involutions(b in (1usize..6, any::<u64>()).prop_map(|(n, s)| fixtures::stacked_ball(3, n, s))) {
        let sphere = b.boundary_subcomplex().unwrap().to_complex();
        let edges: Vec<Simplex> = sphere.index().unwrap().faces().iter().filter(|f| f.len() == 2).cloned().collect();
        for e in edges {
            let link = sphere.link(&e).unwrap();
            let Ok(t) = Simplex::new(link.vertices()) else { continue };
            if let Ok(flipped) = bistellar_flip(&sphere, &e, &t) {
                prop_assert_eq!(betti_gf2(&flipped).unwrap(), vec![1, 0, 1]);
                prop_assert_eq!(bistellar_flip(&flipped, &t, &e).unwrap(), sphere.clone());
            }
        }
    }

    #[test]
    fn facet_text_round_trip(k in complex()) {
        prop_assert_eq!(io::parse_facets(&io::format_facets(&k)).unwrap(), k);
    }

    #[test]
    fn json_round_trips(k in complex(), seed in any::<u64>()) {
        let v = random_morse(&k, seed, 1).unwrap();
        let cert = MatchingCertificate::from_matching(&v).unwrap();
        let back: MatchingCertificate = io::from_json(&io::to_json(&cert).unwrap()).unwrap();
        prop_assert_eq!(back.to_matching(&k).unwrap(), v.clone());
        let (_, map) = derived_subdivision(&k, 1).unwrap();
        let m2: SubdivisionMap = io::from_json(&io::to_json(&map).unwrap()).unwrap();
        prop_assert_eq!(m2, map);
        let seq = CollapseSequence::new(v.pairs().to_vec());
        let s2: CollapseSequence = io::from_json(&io::to_json(&seq).unwrap()).unwrap();
        prop_assert_eq!(s2, seq);
    }
}
