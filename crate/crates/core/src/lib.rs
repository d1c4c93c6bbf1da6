pub mod bounds;
pub mod extract;
pub mod gen;
pub mod geom;
pub mod graph;
pub mod render;
pub mod structures;
