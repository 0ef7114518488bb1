mod heap;
mod node;
mod subgraph;

pub use heap::{Color, CostHeap, HeapError};
pub use node::Node;
pub use subgraph::Subgraph;
