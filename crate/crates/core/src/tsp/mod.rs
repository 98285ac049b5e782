//! Open-path travelling-salesman solvers on finite subsets of Z² under the
//! L1 metric, with free endpoints.

mod boxed;
mod boxes;
mod connected;
mod exact;
mod io;
mod path;
mod polish;
mod spath;
mod strip;

pub use boxed::{box_tsp_diluted, BoxOptions, BoxTour};
pub use boxes::{box_of, dfs_order};
pub use connected::{connected_bound, connected_box_side, connected_set_tour, CONNECTED_K};
pub use exact::{exact_order, exact_tsp, DEFAULT_EXACT_CAP};
pub use io::{read_points, write_points};
pub use path::{order_length, GridPath, TspResult};
pub use polish::{neighbor_lists, polish, PolishOptions};
pub use spath::s_path_tsp_exact;
pub use strip::{isqrt_ceil, strip_bound, strip_heuristic, strip_order};

use crate::lattice::PointSet;

/// Sets up to this size are solved exactly by `tsp_auto`.
pub const AUTO_EXACT: usize = 14;

/// Exact for small sets, otherwise the strip tour over the bounding square
/// followed by local search.
pub fn tsp_auto(points: &PointSet) -> TspResult {
    if points.is_empty() {
        return TspResult::from_order(Vec::new(), true);
    }
    if points.len() <= AUTO_EXACT {
        return exact_tsp(points, AUTO_EXACT).expect("within cap");
    }
    let (lo, hi) = points.bounding_box().expect("non-empty");
    let side = (hi.x - lo.x).max(hi.y - lo.y) + 1;
    let mut order = strip_order(&points.sorted(), lo.y, side);
    polish(&mut order, PolishOptions::default());
    TspResult::from_order(order, false)
}
