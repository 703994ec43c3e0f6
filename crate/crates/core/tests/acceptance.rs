//! End-to-end acceptance gate. Every check is exact; the only tolerances
//! are the wall-clock limits below.

use std::collections::BTreeSet;
use std::path::Path;
use std::time::{Duration, Instant};

use morsecraft::assembly::{
    build_local_construction, compose_boundary_critical, glue, handle_pipeline, random_trace, union_formula,
    unfolding_trace, GluingSpec, Handle, HandleDecomposition,
};
use morsecraft::morse::{
    boundary_critical_search, collapse_depth, collapses_onto, is_endo_collapsible, is_lc, random_boundary_critical,
    random_morse, MorseMatching, Outcome, SearchBudget,
};
use morsecraft::lift::lift_matching;
use morsecraft::subdivision::{derived_subdivision, prism_over};
use morsecraft::{betti_gf2, fixtures, Simplex, SimplicialComplex, Subcomplex, Vertex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SUITE_LIMIT: Duration = Duration::from_secs(300);

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn budget() -> SearchBudget {
    SearchBudget::default()
}

fn vertex_target(k: &SimplicialComplex, v: Vertex) -> Subcomplex {
    Subcomplex::generated_by(k.clone(), [&Simplex::vertex(v)]).unwrap()
}

/// Twenty locally constructed 3-dimensional complexes: half from the
/// manifold-preserving random walk, half by unfolding stacked 3-spheres.
fn lc_constructions() -> Vec<(String, SimplicialComplex, bool)> {
    (0..20u64)
        .map(|seed| {
            let trace = if seed % 2 == 0 {
                random_trace(3, 3 + (seed as usize % 5), 200, seed).unwrap()
            } else {
                let sphere = fixtures::stacked_ball(4, 1 + (seed as usize % 6), seed)
                    .boundary_subcomplex()
                    .unwrap()
                    .to_complex();
                unfolding_trace(&sphere, seed).unwrap()
            };
            let lc = build_local_construction(&trace).unwrap();
            (format!("lc{seed}"), lc.complex, lc.closed)
        })
        .collect()
}

fn glued_balls() -> Vec<(String, SimplicialComplex)> {
    let disk = fixtures::cone_over_simplex_boundary(2);
    let s2 = glue(&GluingSpec { left: disk.clone(), right: disk, map: vec![(0, 0), (1, 1), (2, 2)] }).unwrap();
    let t = fixtures::simplex(3);
    let ball = glue(&GluingSpec { left: t.clone(), right: t, map: vec![(0, 0), (1, 1), (2, 2)] }).unwrap();
    vec![("two_disks".into(), s2.complex), ("two_tetrahedra".into(), ball.complex)]
}

fn c1_morse_inequality() -> Check {
    let start = Instant::now();
    let mut corpus: Vec<(String, SimplicialComplex)> = Vec::new();
    for d in 0..=4 {
        corpus.push((format!("simplex{d}"), fixtures::simplex(d)));
        corpus.push((format!("simplex{}_boundary", d + 1), fixtures::simplex_boundary(d + 1)));
    }
    corpus.push(("octahedron".into(), fixtures::octahedron()));
    corpus.extend(glued_balls());
    corpus.extend(lc_constructions().into_iter().map(|(n, k, _)| (n, k)));
    let mut checked = 0;
    for (name, k) in &corpus {
        let betti = betti_gf2(k).unwrap();
        for seed in 0..100 {
            let v = random_morse(k, seed, 1).unwrap();
            ensure(v.validate().unwrap().is_valid(), || format!("{name} seed {seed}: invalid matching"))?;
            let c = v.morse_vector().unwrap().c;
            ensure(c.iter().zip(&betti).all(|(c, b)| c >= b), || {
                format!("{name} seed {seed}: c = {c:?} below betti {betti:?}")
            })?;
            checked += 1;
        }
    }
    let t = start.elapsed();
    ensure(t < SUITE_LIMIT, || format!("took {t:?}"))?;
    Ok(format!("{} complexes, {checked} matchings, 0 violations in {t:.1?}", corpus.len()))
}

fn c2_lift_exactness() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut pool: Vec<SimplicialComplex> = fixtures::corpus();
    pool.extend((0..6).map(|s| fixtures::random_complex(7, 3, 6, s)));
    pool.extend((2..5).map(|n| fixtures::stacked_ball(3, n, n as u64)));
    pool.push(fixtures::cone_over_simplex_boundary(3));
    let (mut boundary_critical, mut lifted, mut trial) = (0, 0, 0u64);
    while lifted < 200 {
        trial += 1;
        let k = pool.choose(&mut rng).unwrap();
        let faces: Vec<&Simplex> = k.index().unwrap().faces().iter().filter(|f| f.len() >= 2).collect();
        let Some(s) = faces.choose(&mut rng) else { continue };
        let bc = k.is_pseudomanifold() && k.dim() >= 1 && rng.gen_bool(0.5);
        let v = if bc {
            boundary_critical += 1;
            random_boundary_critical(k, trial, 2).unwrap()
        } else {
            random_morse(k, trial, 2).unwrap()
        };
        let lift = lift_matching(k, &v, s).map_err(|e| format!("trial {trial}: {e}"))?;
        ensure(lift.matching.validate().unwrap().is_valid(), || format!("trial {trial}: invalid lift"))?;
        // boundary faces of a boundary-critical matching are critical by definition,
        // so there the interior counts are the invariant
        let (before, after) = (v.morse_vector().unwrap(), lift.matching.morse_vector().unwrap());
        let (before, after) = if bc { (before.c_int, after.c_int) } else { (Some(before.c), Some(after.c)) };
        ensure(before == after, || format!("trial {trial}: {before:?} became {after:?} starring {s}"))?;
        lifted += 1;
    }
    let t = start.elapsed();
    ensure(t < SUITE_LIMIT, || format!("took {t:?}"))?;
    Ok(format!("{lifted}/{lifted} exact ({boundary_critical} boundary-critical) in {t:.1?}"))
}

fn endo(k: &SimplicialComplex) -> MorseMatching {
    is_endo_collapsible(k, &budget()).unwrap().found().expect("endo-collapsible fixture")
}

fn c_int(v: &MorseMatching) -> Vec<usize> {
    v.morse_vector().unwrap().c_int.unwrap()
}

fn c3_depth_union() -> Check {
    let disk = fixtures::cone_over_simplex_boundary(2);
    let spec2 = GluingSpec { left: disk.clone(), right: disk.clone(), map: vec![(0, 0), (1, 1), (2, 2)] };
    let u2 = compose_boundary_critical(&spec2, &endo(&disk), &endo(&disk), &endo(&fixtures::simplex_boundary(2)), &budget())
        .map_err(|e| e.to_string())?;
    ensure(u2.matching.morse_vector().unwrap().c == [1, 0, 1], || format!("S²: {:?}", c_int(&u2.matching)))?;

    let ball = fixtures::cone_over_simplex_boundary(3);
    let spec3 = GluingSpec { left: ball.clone(), right: ball.clone(), map: (0..4).map(|v| (v, v)).collect() };
    let h3 = endo(&fixtures::simplex_boundary(3));
    let u3 = compose_boundary_critical(&spec3, &endo(&ball), &endo(&ball), &h3, &budget()).map_err(|e| e.to_string())?;
    ensure(u3.matching.morse_vector().unwrap().c == [1, 0, 0, 1], || format!("S³: {:?}", c_int(&u3.matching)))?;

    // one extra critical interior edge on the left ball; Euler forces one extra triangle with it
    let aug = match boundary_critical_search(&ball, &[Some(0), Some(1), Some(1), Some(1)], &[], &budget()).unwrap() {
        Outcome::Found(v) => v,
        other => return Err(format!("no augmented matching on the 3-ball: {:?}", other.is_found())),
    };
    let ua = compose_boundary_critical(&spec3, &aug, &endo(&ball), &h3, &budget()).map_err(|e| e.to_string())?;
    let (base, shifted) = (c_int(&u3.matching), c_int(&ua.matching));
    let expected = union_formula(&c_int(&aug), &c_int(&endo(&ball)), &c_int(&h3));
    ensure(shifted == expected, || format!("augmented: {shifted:?}, formula {expected:?}"))?;
    ensure(shifted[1] == base[1] + 1, || format!("c_int_1 moved from {} to {}", base[1], shifted[1]))?;
    Ok(format!("S² {:?}, S³ {:?}, augmented {base:?} -> {shifted:?}", c_int(&u2.matching), base))
}

fn sphere_decomposition(d: usize) -> HandleDecomposition {
    if d == 1 {
        let a = SimplicialComplex::build(&[vec![0, 1], vec![1, 2]]).unwrap();
        let b = SimplicialComplex::build(&[vec![2, 3], vec![3, 0]]).unwrap();
        return HandleDecomposition {
            handles: vec![
                Handle { complex: a, index: 0, attach: vec![] },
                Handle { complex: b, index: 1, attach: vec![(0, 0), (2, 2)] },
            ],
        };
    }
    let cap = fixtures::simplex_boundary(d).cone(100).unwrap();
    HandleDecomposition {
        handles: vec![
            Handle { complex: fixtures::cone_over_simplex_boundary(d), index: 0, attach: vec![] },
            Handle { complex: cap, index: d, attach: (0..=d as Vertex).map(|v| (v, v)).collect() },
        ],
    }
}

fn c4_handle_pipeline() -> Check {
    let mut seen = Vec::new();
    for d in 1..=3 {
        let h = sphere_decomposition(d);
        let r = handle_pipeline(&h, &budget()).map_err(|e| format!("S^{d}: {e}"))?;
        ensure(r.matching.validate().unwrap().is_valid() && r.matching.is_boundary_critical(), || {
            format!("S^{d}: invalid or not boundary-critical")
        })?;
        let got = c_int(&r.matching);
        let expected: Vec<usize> = (0..=d).map(|k| r.handle_counts[d - k]).collect();
        ensure(got == expected, || format!("S^{d}: {got:?} vs handle counts {expected:?}"))?;
        seen.push(format!("S^{d} {got:?}"));
    }
    Ok(seen.join(", "))
}

fn c5_collapse_depth() -> Check {
    for (name, k, want) in [("∂Δ³", fixtures::simplex_boundary(3), 2), ("∂Δ⁴", fixtures::simplex_boundary(4), 3)] {
        let r = collapse_depth(&k, &budget()).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.depth == want && r.exact, || format!("{name}: depth {} exact {}", r.depth, r.exact))?;
    }
    let mut n = 0;
    for (name, k) in fixtures::named_corpus() {
        if k.dim() < 1 || !k.manifold_check().unwrap().passes() || !k.is_strongly_connected() {
            continue;
        }
        let d = k.dim() as usize;
        let r = collapse_depth(&k, &budget()).map_err(|e| format!("{name}: {e}"))?;
        ensure((1..=d).contains(&r.depth), || format!("{name}: depth {} outside 1..={d}", r.depth))?;
        n += 1;
    }
    Ok(format!("∂Δ³ = 2, ∂Δ⁴ = 3 (exact); {n} manifold fixtures within bounds"))
}

fn c6_polygons() -> Check {
    for n in 3..=12u32 {
        let gon = fixtures::polygon(n as usize);
        let mut facets = gon.facets().to_vec();
        facets.retain(|f| f.vertices() != [0, n - 1]);
        let arc = SimplicialComplex::from_facets(facets);
        ensure(arc.facets().len() == n as usize - 1, || format!("{n}-gon: wrong edge removed"))?;
        let target = vertex_target(&arc, 0);
        match collapses_onto(&arc, &target, &budget()).unwrap() {
            Outcome::Found(seq) => seq.verify_onto(&arc, &target).map_err(|e| format!("{n}-gon arc: {e}"))?,
            _ => return Err(format!("{n}-gon minus an edge did not collapse")),
        }
        let v = random_morse(&gon, n as u64, 3).unwrap();
        ensure(v.morse_vector().unwrap().c == [1, 1], || format!("{n}-gon: {:?}", v.morse_vector().unwrap().c))?;
        let t = vertex_target(&gon, 0);
        ensure(collapses_onto(&gon, &t, &budget()).unwrap() == Outcome::Impossible, || {
            format!("{n}-gon: collapsibility not refuted")
        })?;
    }
    Ok("n = 3..12: arcs collapse, (1,1) matchings found, non-collapsibility proven".into())
}

fn c7_local_constructions() -> Check {
    let mut closed = 0;
    for (name, k, is_closed) in lc_constructions() {
        let b = betti_gf2(&k).unwrap();
        ensure(b[1] == 0, || format!("{name}: β = {b:?}"))?;
        if is_closed {
            closed += 1;
            ensure(b == [1, 0, 0, 1], || format!("{name}: closed with β = {b:?}"))?;
        }
        let cert = match is_lc(&k, &budget()).map_err(|e| format!("{name}: {e}"))? {
            Outcome::Found(v) => v,
            other => return Err(format!("{name}: no cdepth ≥ 2 certificate ({})", other.is_found())),
        };
        let ci = c_int(&cert);
        ensure(cert.validate().unwrap().is_valid() && ci[3] == 1 && ci[2] == 0, || format!("{name}: c_int {ci:?}"))?;
    }
    ensure(closed > 0, || "no closed result among the traces".into())?;
    Ok(format!("20 traces ({closed} closed), all β₁ = 0, all certified cdepth ≥ 2"))
}

fn c8_prisms() -> Check {
    let cases = [
        ("Δ¹", fixtures::simplex(1)),
        ("Δ²", fixtures::simplex(2)),
        ("∂Δ²", fixtures::simplex_boundary(2)),
        ("∂Δ³", fixtures::simplex_boundary(3)),
    ];
    for (name, k) in cases {
        let order = k.vertices();
        let p = prism_over(&k, &order).map_err(|e| format!("{name}: {e}"))?;
        p.collapse.verify_onto(&p.complex, &p.bottom).map_err(|e| format!("{name}: {e}"))?;
        let d = k.dim() as usize;
        let top = k.facets().iter().filter(|f| f.len() == d + 1).count();
        ensure(p.complex.facets().len() == (d + 1) * top, || format!("{name}: {} facets", p.complex.facets().len()))?;
    }
    Ok("4/4 collapses verified, facet counts (d+1)·f_d".into())
}

/// Maximal chains of the face poset, enumerated by walking down from each
/// face through its codimension-one faces.
fn maximal_chains(k: &SimplicialComplex) -> usize {
    let faces: BTreeSet<Simplex> = k.facets().iter().flat_map(|f| f.faces().collect::<Vec<_>>()).collect();
    fn down(s: &Simplex, faces: &BTreeSet<Simplex>) -> usize {
        if s.len() == 1 {
            return 1;
        }
        s.boundary().filter(|t| faces.contains(t)).map(|t| down(&t, faces)).sum()
    }
    let is_maximal = |s: &Simplex| !faces.iter().any(|t| t.len() == s.len() + 1 && s.is_subset_of(t));
    faces.iter().filter(|s| is_maximal(s)).map(|s| down(s, &faces)).sum()
}

fn c9_subdivision() -> Check {
    let (sd, _) = derived_subdivision(&fixtures::simplex(2), 1).unwrap();
    let f = sd.f_vector().unwrap();
    ensure(f == [7, 12, 6], || format!("sd(Δ²) f-vector {f:?}"))?;
    for seed in 0..10 {
        let k = fixtures::random_complex(7, 3, 5, seed);
        let (sd, map) = derived_subdivision(&k, 1).unwrap();
        map.verify().map_err(|e| format!("fixture {seed}: {e}"))?;
        let chains = maximal_chains(&k);
        ensure(sd.facets().len() == chains, || format!("fixture {seed}: {} facets, {chains} chains", sd.facets().len()))?;
    }
    Ok("sd(Δ²) = (7,12,6); 10/10 facet counts equal maximal chain counts".into())
}

fn write(path: &Path, text: &str) {
    std::fs::write(path, text).unwrap();
}

fn run_cli(dir: &Path, threads: &str, args: &[&str]) -> (i32, Vec<u8>) {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_morsecraft"))
        .current_dir(dir)
        .env("MORSECRAFT_THREADS", threads)
        .args(args)
        .output()
        .unwrap();
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn c10_determinism() -> Check {
    let tmp = tempfile::tempdir().unwrap();
    let dir = tmp.path();
    let facets = |k: &SimplicialComplex| morsecraft::io::format_facets(k);
    write(&dir.join("tetra.facets"), &facets(&fixtures::simplex_boundary(3)));
    write(&dir.join("disk.facets"), &facets(&fixtures::cone_over_simplex_boundary(2)));
    write(&dir.join("circle.facets"), &facets(&fixtures::simplex_boundary(2)));
    write(&dir.join("cap.facets"), &facets(&fixtures::simplex_boundary(2).cone(100).unwrap()));
    write(&dir.join("bipyramid.facets"), &facets(&fixtures::suspension_of_simplex_boundary(2)));
    write(&dir.join("stacked.facets"), &facets(&fixtures::stacked_ball(3, 4, 1)));
    write(&dir.join("tree.facets"), &facets(&fixtures::stacked_ball(3, 3, 5)));
    write(&dir.join("glue.json"), r#"{"left": "disk.facets", "right": "disk.facets", "map": [[0,0],[1,1],[2,2]]}"#);
    let trace = random_trace(3, 3, 10, 5).unwrap();
    write(&dir.join("tree.facets"), &facets(&trace.tree));
    let identify: Vec<[String; 2]> = trace.identify.iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect();
    write(&dir.join("trace.json"), &serde_json::json!({"tree": "tree.facets", "identify": identify}).to_string());
    write(
        &dir.join("handles.json"),
        r#"[{"complex": "disk.facets", "index": 0}, {"complex": "cap.facets", "index": 2, "attach": {"map": [[0,0],[1,1],[2,2]]}}]"#,
    );
    // certificate inputs for lift and compose
    for (args, file) in [
        (vec!["lc", "disk.facets"], "f.json"),
        (vec!["morse", "circle.facets", "--boundary-critical"], "h.json"),
        (vec!["morse", "stacked.facets", "--seed", "4"], "m.json"),
    ] {
        let (code, out) = run_cli(dir, "1", &args);
        ensure(code == 0, || format!("{args:?} exited {code}"))?;
        std::fs::write(dir.join(file), out).unwrap();
    }
    let commands: Vec<Vec<&str>> = vec![
        vec!["info", "stacked.facets"],
        vec!["morse", "stacked.facets", "--seed", "7", "--restarts", "16"],
        vec!["morse", "tetra.facets", "--exhaustive"],
        vec!["morse", "disk.facets", "--boundary-critical", "--seed", "3"],
        vec!["collapse", "stacked.facets"],
        vec!["cdepth", "tetra.facets"],
        vec!["lc", "bipyramid.facets"],
        vec!["subdivide", "tetra.facets", "--derived", "2"],
        vec!["subdivide", "stacked.facets", "--star", "0-1"],
        vec!["flip", "bipyramid.facets", "0-1", "3-4"],
        vec!["lift", "stacked.facets", "m.json", "1-2-3"],
        vec!["glue", "glue.json"],
        vec!["compose", "glue.json", "f.json", "f.json", "h.json"],
        vec!["build-lc", "trace.json"],
        vec!["pipeline", "handles.json"],
    ];
    for args in &commands {
        let first = run_cli(dir, "1", args);
        ensure(first.0 == 0, || format!("{args:?} exited {}", first.0))?;
        for threads in ["1", "4"] {
            let again = run_cli(dir, threads, args);
            ensure(again == first, || format!("{args:?} differs with {threads} threads"))?;
        }
    }
    Ok(format!("{} commands byte-identical over 3 runs (1 and 4 threads)", commands.len()))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("1 morse inequality over corpus", c1_morse_inequality),
        ("2 stellar lift exactness", c2_lift_exactness),
        ("3 union formula", c3_depth_union),
        ("4 handle pipeline on spheres", c4_handle_pipeline),
        ("5 collapse depth", c5_collapse_depth),
        ("6 polygon base cases", c6_polygons),
        ("7 local constructions", c7_local_constructions),
        ("8 prism collapse", c8_prisms),
        ("9 subdivision counts", c9_subdivision),
        ("10 determinism", c10_determinism),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        match &result {
            Ok(detail) => println!("PASS criterion {name}: {detail} [{:.1?}]", start.elapsed()),
            Err(why) => {
                println!("FAIL criterion {name}: {why} [{:.1?}]", start.elapsed());
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
