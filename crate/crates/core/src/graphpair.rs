use std::fmt;

use crate::canon::Digraph;
use crate::perm::Permutation;

/// A pair of digraphs on a common node set. Red and blue play the roles of
/// the two operations of a semicentral bigroupoid; repeated edges across the
/// colours are fine, within one colour the edge sets are sets.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GraphPair {
    red: Digraph,
    blue: Digraph,
}

impl GraphPair {
    pub fn new(red: Digraph, blue: Digraph) -> Self {
        assert_eq!(
            red.node_count(),
            blue.node_count(),
            "graph pair must share its node set"
        );
        GraphPair { red, blue }
    }

    pub fn empty(n: usize) -> Self {
        GraphPair {
            red: Digraph::new(n),
            blue: Digraph::new(n),
        }
    }

    pub fn node_count(&self) -> usize {
        self.red.node_count()
    }

    pub fn red(&self) -> &Digraph {
        &self.red
    }

    pub fn blue(&self) -> &Digraph {
        &self.blue
    }

    pub fn red_mut(&mut self) -> &mut Digraph {
        &mut self.red
    }

    pub fn blue_mut(&mut self) -> &mut Digraph {
        &mut self.blue
    }

    /// Both graphs relabeled by the same node permutation.
    pub fn apply(&self, p: &Permutation) -> GraphPair {
        GraphPair {
            red: self.red.relabeled(p),
            blue: self.blue.relabeled(p),
        }
    }
}

impl fmt::Debug for GraphPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GraphPair(red={:?}, blue={:?})",
            self.red.edges(),
            self.blue.edges()
        )
    }
}
