//! Fixed instances shared by the benchmarks.

use std::sync::Arc;

use mgame_core::matroid::{GraphicMatroid, UniformMatroid};
use mgame_core::Matroid;

pub fn uniform(n: usize, r: usize) -> Arc<dyn Matroid> {
    Arc::new(UniformMatroid::new(n, r).expect("r ≤ n"))
}

/// The complete graph on `v` vertices.
pub fn complete_graph(v: usize) -> Arc<dyn Matroid> {
    let edges = (0..v).flat_map(|a| (a + 1..v).map(move |b| (a, b))).collect();
    Arc::new(GraphicMatroid::new(v, edges).expect("simple graph"))
}
