#[allow(dead_code)]
#[path = "support/properties.rs"]
mod properties;

#[test]
fn monic_decompose_round_trip() {
    properties::monic_decompose_round_trip().unwrap();
}

#[test]
fn fitting_block_triangular() {
    properties::fitting_block_triangular().unwrap();
}

#[test]
fn nucleus_independence() {
    properties::nucleus_independence().unwrap();
}

#[test]
fn nuclear_multiplicativity() {
    properties::nuclear_multiplicativity().unwrap();
}

#[test]
fn comm_det() {
    properties::comm_det().unwrap();
}

#[test]
fn fitting_nuclear_identity() {
    properties::fitting_nuclear_identity().unwrap();
}

#[test]
fn lattice_index_transitivity() {
    properties::lattice_index_transitivity().unwrap();
}
