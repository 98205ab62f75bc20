//! The two worked example graphs.

use crate::graph::Graph;
use crate::parse::parse_graph;

/// A loop at `v` and infinitely many edges from `v` to the sink `w`.
pub const E1_TEXT: &str = "\
graph {
  vertices: v, w;
  edge v -> v;
  edge v -> w [inf];
}
";

/// Loops at `u` and `w`, one edge `u -> v`, infinitely many `v -> w`.
pub const E2_TEXT: &str = "\
graph {
  vertices: u, v, w;
  edge u -> u;
  edge u -> v;
  edge v -> w [inf];
  edge w -> w;
}
";

pub fn e1() -> Graph {
    parse_graph(E1_TEXT).expect("fixture parses")
}

pub fn e2() -> Graph {
    parse_graph(E2_TEXT).expect("fixture parses")
}
