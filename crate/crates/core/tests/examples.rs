#[allow(dead_code)]
mod complexes {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/complexes.rs"));
}

#[test]
fn complexes_example_runs() {
    complexes::run_example().expect("complexes example should run");
}

#[allow(dead_code)]
mod morse_matchings {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/morse_matchings.rs"));
}

#[test]
fn morse_matchings_example_runs() {
    morse_matchings::run_example().expect("morse_matchings example should run");
}

#[allow(dead_code)]
mod collapses {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/collapses.rs"));
}

#[test]
fn collapses_example_runs() {
    collapses::run_example().expect("collapses example should run");
}

#[allow(dead_code)]
mod cancellation {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/cancellation.rs"));
}

#[test]
fn cancellation_example_runs() {
    cancellation::run_example().expect("cancellation example should run");
}

#[allow(dead_code)]
mod subdivisions {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/subdivisions.rs"));
}

#[test]
fn subdivisions_example_runs() {
    subdivisions::run_example().expect("subdivisions example should run");
}

#[allow(dead_code)]
mod stellar_lift {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/stellar_lift.rs"));
}

#[test]
fn stellar_lift_example_runs() {
    stellar_lift::run_example().expect("stellar_lift example should run");
}

#[allow(dead_code)]
mod prism {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/prism.rs"));
}

#[test]
fn prism_example_runs() {
    prism::run_example().expect("prism example should run");
}

#[allow(dead_code)]
mod collapse_depth {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/collapse_depth.rs"));
}

#[test]
fn collapse_depth_example_runs() {
    collapse_depth::run_example().expect("collapse_depth example should run");
}

#[allow(dead_code)]
mod nicesub {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/nicesub.rs"));
}

#[test]
fn nicesub_example_runs() {
    nicesub::run_example().expect("nicesub example should run");
}

#[allow(dead_code)]
mod gluing {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/gluing.rs"));
}

#[test]
fn gluing_example_runs() {
    gluing::run_example().expect("gluing example should run");
}

#[allow(dead_code)]
mod handle_pipeline {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/handle_pipeline.rs"));
}

#[test]
fn handle_pipeline_example_runs() {
    handle_pipeline::run_example().expect("handle_pipeline example should run");
}

#[allow(dead_code)]
mod local_construction {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/local_construction.rs"));
}

#[test]
fn local_construction_example_runs() {
    local_construction::run_example().expect("local_construction example should run");
}

#[allow(dead_code)]
mod certificates {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/certificates.rs"));
}

#[test]
fn certificates_example_runs() {
    certificates::run_example().expect("certificates example should run");
}
