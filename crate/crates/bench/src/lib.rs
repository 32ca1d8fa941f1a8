//! Fixtures shared by the benchmarks.

use std::path::PathBuf;

use rigidcover::complex::{build_oriented_complex, Colouring, StateRule};
use rigidcover::cover::{build_window, search_states, CoverWindow, SearchOptions};
use rigidcover::polytope::{builtin_octahedron, Polytope};

/// The octahedron window `[-1, 2s-1]` for the first passing state.
pub fn octahedron_window(s: i32) -> (Polytope, CoverWindow) {
    let p = builtin_octahedron();
    let col = Colouring::two_colouring(&p).expect("octahedron is 2-colourable");
    let s0 = search_states(&p, &col, &StateRule::Independent, &SearchOptions::default()).expect("search").remove(0);
    let cx = build_oriented_complex(&p, &col, &s0, &StateRule::Independent).expect("complex");
    let w = build_window(&cx, -1, 2 * s - 1).expect("window");
    (p, w)
}

/// The 24-cell with its 3-colouring and a fixed state whose links pass.
pub fn cell24_window() -> (Polytope, CoverWindow) {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data");
    let p = Polytope::load(dir.join("24cell.json")).expect("24-cell data");
    let text = std::fs::read_to_string(dir.join("24cell.colouring")).expect("24-cell colouring");
    let col = Colouring::parse(&text, &p).expect("colouring");
    let options = SearchOptions { candidates: Some(vec![0b0100_0011_1001_0111]), ..Default::default() };
    let s0 = search_states(&p, &col, &StateRule::Independent, &options).expect("search").remove(0);
    let cx = build_oriented_complex(&p, &col, &s0, &StateRule::Independent).expect("complex");
    (p, build_window(&cx, -1, 1).expect("window"))
}
